//! Acceptance suite: one line per criterion with its measured time and bound.
//! Runs without the libtest harness so the lines always reach stdout.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lmhs::filtration::{check_weight_axioms, weight_filtration};
use lmhs::geomodels::{
    fiber_product_dim_check, full_signature, hashimoto_sano_pic_fixture, kahler_index_formula, kodaira_degeneration,
    odp_index_formula, odp_input, odp_semistable_model, random_pencil_pair, random_resolution, sano_negatives,
    FibrationFactor, HodgeNumbers, LefschetzInput, PencilData,
};
use lmhs::geomodels::fiber_product_middle_betti;
use lmhs::mhs::{random_polarized_mhs, MhsData, MhsJson, RandomMhsConfig};
use lmhs::orbit::{orbit_filtration, evaluate_signature, verify_identities, verify_main_theorem, OrbitOptions};
use lmhs::steenbrink::{degree_report, e2_page, nearby_hodge_index};
use lmhs::{Scalar};

use common::{jordan_sample, same_filtration};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> String {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/").to_string() + name;
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn identities() -> Check {
    let checks = verify_identities(8, None).map_err(|e| e.to_string())?;
    let bad: Vec<_> = checks.iter().filter(|c| !c.ok).map(|c| (c.n, c.k)).collect();
    ensure(bad.is_empty(), || format!("failing (n,k): {bad:?}"))?;
    Ok(format!("{} identities exact for n ≤ 8, 0 ≤ k ≤ n+1", checks.len()))
}

fn weight_oracle() -> Check {
    for seed in 0..100 {
        let s = jordan_sample(seed, 10);
        let d = (seed % 5) as i64 - 1;
        let w = weight_filtration(&s.n, d).map_err(|e| e.to_string())?;
        let axioms = check_weight_axioms(&w, &s.n, d);
        ensure(axioms.ok, || format!("seed {seed}: {:?}", axioms.failures))?;
        let minus = weight_filtration(&s.n.neg(), d).map_err(|e| e.to_string())?;
        ensure(minus == w, || format!("seed {seed}: W(N) ≠ W(−N)"))?;
        ensure(same_filtration(&w, &s.expected_weight(d)), || format!("seed {seed}: differs from the Jordan-basis filtration"))?;
    }
    Ok("100 random nilpotent N: axioms, W(N) = W(−N), equal to the Jordan-basis oracle".into())
}

fn orbit_theorem() -> Check {
    let cfg = RandomMhsConfig::default();
    let opts = OrbitOptions::default();
    for seed in 0..100 {
        let (data, table) = random_polarized_mhs(seed, &cfg).map_err(|e| e.to_string())?;
        let rep = verify_main_theorem(&data, &opts).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(rep.ok, || format!("seed {seed}: {:?}", rep.failures))?;
        ensure(rep.table == table, || format!("seed {seed}: signature table differs from the construction"))?;
        // doubling t0 leaves every evaluated signature unchanged
        let orbit = orbit_filtration(&data, &opts.a).map_err(|e| e.to_string())?;
        let mut t0 = opts.t0.clone();
        t0 *= &Scalar::from_int(2);
        for l in &rep.levels {
            let again = evaluate_signature(&orbit, l.level, &t0, &opts.t_cap).map_err(|e| e.to_string())?;
            ensure(again.signature == l.evaluate.signature, || format!("seed {seed}: level {} moved", l.level))?;
        }
    }
    Ok("100 random polarized MHS (dim ≤ 10, d ≤ 4): orbit signatures match the formula".into())
}

fn elliptic() -> Check {
    let j: MhsJson = serde_json::from_str(&fixture("elliptic.json")).map_err(|e| e.to_string())?;
    let data = MhsData::from_json(&j).map_err(|e| e.to_string())?;
    let rep = verify_main_theorem(&data, &OrbitOptions::default()).map_err(|e| e.to_string())?;
    let level = rep.levels.iter().find(|l| l.level == 1).ok_or("no level 1")?;
    let sig = level.evaluate.signature;
    ensure((sig.positives, sig.negatives) == (1, 0), || format!("F^1 signature {sig:?}"))?;
    ensure(rep.polarized && rep.ok, || "not a polarized orbit".into())?;
    Ok("F^1 signature (1,0), polarized nilpotent orbit".into())
}

fn kodaira() -> Check {
    let data = kodaira_degeneration(1).map_err(|e| e.to_string())?;
    let page = e2_page(&data, 1).map_err(|e| e.to_string())?;
    let dims = page.dims_by_weight();
    let triple = (dims.get(&0).copied().unwrap_or(0), dims.get(&1).copied().unwrap_or(0), dims.get(&2).copied().unwrap_or(0));
    ensure(triple == (1, 0, 0), || format!("E2 dims {triple:?}"))?;
    let rep = degree_report(&data, 1).map_err(|e| e.to_string())?;
    ensure(rep.criterion.first_failure() == Some(1), || format!("criterion {:?}", rep.criterion))?;
    let h01 = rep.hodge_numbers.get(&0).copied().unwrap_or(0);
    ensure(h01 == 1 && rep.hodge_numbers.get(&1).is_none(), || format!("Hodge numbers {:?}", rep.hodge_numbers))?;
    Ok("E2 dims (1,0,0) at d=1, criterion fails at r=1, h^{0,1} = 1".into())
}

fn odp() -> Check {
    let mut cases = 0;
    for m in [3, 4] {
        for l in 0..=3 {
            for r in 0..=l {
                if m % 2 == 0 && r > 0 {
                    continue;
                }
                for seed in 0..2 {
                    let res = random_resolution(m, l, r, seed).map_err(|e| e.to_string())?;
                    let input = odp_input(&res).map_err(|e| e.to_string())?;
                    let closed = odp_index_formula(&input).map_err(|e| e.to_string())?;
                    let model = odp_semistable_model(&res, &input).map_err(|e| e.to_string())?;
                    let rep = nearby_hodge_index(&model).map_err(|e| e.to_string())?;
                    ensure(rep.nearby.as_ref() == Some(&closed), || {
                        format!("m={m} l={l} R={r} seed={seed}: model {:?} vs closed {closed:?}", rep.nearby)
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} models, semistable route equals the closed form"))
}

fn sano() -> Check {
    for a in 1..=5u64 {
        ensure(sano_negatives(4, a).unwrap().get(&2) == Some(&(a + 1)), || format!("m=4 a={a}"))?;
        for m in [6, 8, 10] {
            ensure(sano_negatives(m, a).unwrap().get(&(m / 2)) == Some(&(a + 2)), || format!("m={m} a={a}"))?;
        }
        ensure(sano_negatives(7, a).unwrap().is_empty(), || format!("m=7 a={a}"))?;
    }
    let five = sano_negatives(5, 1).unwrap();
    ensure(five.get(&2) == Some(&277) && five.get(&3) == Some(&277), || format!("m=5: {five:?}"))?;
    for a in 1..=3 {
        let c = hashimoto_sano_pic_fixture(a).map_err(|e| e.to_string())?;
        ensure(c.ok && c.composite_rank == 3, || format!("a={a}: {c:?}"))?;
    }
    Ok("negatives a+1, a+2, 277; Hashimoto–Sano det ±1, form preserved, rank 3".into())
}

fn kahler_and_lefschetz() -> Check {
    let k3 = HodgeNumbers::k3();
    let row = kahler_index_formula(&k3, 2, 1).map_err(|e| e.to_string())?;
    ensure(row == (19, 1), || format!("K3 row {row:?}"))?;
    ensure(full_signature(&k3) == -16, || "K3 signature".into())?;
    let cubic = FibrationFactor { m: 2, critical: 12, fiber_betti: vec![1, 2, 1], vanishing: 2 };
    let schoen = fiber_product_middle_betti(&LefschetzInput { factors: [cubic.clone(), cubic] }).map_err(|e| e.to_string())?;
    ensure(schoen.symmetric == 19, || format!("Schoen {schoen:?}"))?;
    let pencil = PencilData { m: 2, ambient_betti: vec![1, 0, 1, 0, 1], fiber_vanishing: 2, base_vanishing: 8 };
    let check = fiber_product_dim_check(&[pencil.clone(), pencil]).map_err(|e| e.to_string())?;
    ensure(check.ok && check.tensor == 19, || format!("Schoen dimCheck {check:?}"))?;
    for seed in 0..50 {
        let c = fiber_product_dim_check(&random_pencil_pair(seed)).map_err(|e| e.to_string())?;
        ensure(c.ok, || format!("seed {seed}: {c:?}"))?;
    }
    Ok("K3 (19,1) and −16; Schoen 19 (printed reading 31); dimCheck on 50 random pencils".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 8] = [
        ("combinatorial identities", identities, Duration::from_secs(5)),
        ("weight-filtration oracle", weight_oracle, Duration::from_secs(10)),
        ("orbit theorem equivalence", orbit_theorem, Duration::from_secs(120)),
        ("elliptic fixture", elliptic, Duration::from_secs(1)),
        ("Kodaira non-example", kodaira, Duration::from_secs(1)),
        ("ODP two-path equality", odp, Duration::from_secs(30)),
        ("Sano and Hashimoto–Sano", sano, Duration::from_secs(1)),
        ("Kähler index and fiber products", kahler_and_lefschetz, Duration::from_secs(5)),
    ];
    let mut all = true;
    for (i, (name, run, bound)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *bound;
        let (status, detail) = match &result {
            Ok(msg) if in_time => ("PASS", msg.clone()),
            Ok(msg) => ("FAIL", format!("{msg}; too slow")),
            Err(msg) => ("FAIL", msg.clone()),
        };
        all &= status == "PASS";
        println!(
            "criterion {}: {status}  {name}  [{:.3}s / bound {}s, exact]  {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            bound.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
