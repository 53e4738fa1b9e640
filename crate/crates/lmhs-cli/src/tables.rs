//! `lmhs tables <family>`: closed-form evaluators, with a second route
//! printed alongside wherever one exists.

use std::path::PathBuf;

use clap::Subcommand;
use serde_json::json;

use lmhs::geomodels::{
    fiber_product_dim_check, full_signature, hashimoto_sano_pic_fixture, kahler_index_formula,
    middle_signature_from_rows, o16_evaluator, odp_index_formula, odp_input, odp_semistable_model, random_resolution,
    sano_index_table, sano_negatives, HodgeNumbers, PencilData,
};
use lmhs::steenbrink::{nearby_hodge_index, NearbyEntry};
use lmhs::Error;

use crate::Outcome;

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Ordinary double points: closed form against the semistable model
    Odp {
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// number of nodes
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// number of independent relations among the vanishing cycles (odd m)
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Central fibers with a class restricting to Kähler classes
    Kahler {
        /// use the Hodge numbers of a K3 surface
        #[arg(long)]
        k3: bool,
        /// Hodge numbers as a JSON array of rows, h[a][b] = h^{a,b}
        #[arg(long)]
        hodge: Option<String>,
    },
    /// Sano's non-Kähler Calabi–Yau manifolds
    Sano {
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        a: u64,
        /// comma-separated h^{k,m−k} for k = 0..m
        #[arg(long)]
        hodge: Option<String>,
        /// also check the Hashimoto–Sano Picard fixture at this a
        #[arg(long)]
        hashimoto_sano: bool,
    },
    /// Quintic threefolds with sixteen nodes
    O16 {
        #[arg(long, default_value_t = 0)]
        defect: usize,
        /// `plus,minus` per k = 0..3, separated by `;`
        #[arg(long, default_value = "1,0;50,0;50,0;1,0")]
        resolution: String,
    },
    /// Fiber products of Lefschetz fibrations over P¹
    Lefschetz {
        /// two rational elliptic surfaces
        #[arg(long)]
        schoen: bool,
        /// JSON array of two pencil descriptions
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn rows_text(rows: &[NearbyEntry]) -> String {
    rows.iter().map(|e| format!("  ({},{}): (+{}, -{})\n", e.p, e.q, e.plus, e.minus)).collect()
}

fn parse_list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',').map(|x| x.trim().parse().map_err(|e| Error::Input(format!("{x:?}: {e}")))).collect()
}

fn odp(m: usize, l: usize, r: usize, seed: u64) -> Result<Outcome, Error> {
    if !(3..=6).contains(&m) || r > l {
        return Err(Error::Input("need 3 ≤ m ≤ 6 and R ≤ l".into()));
    }
    let res = random_resolution(m, l, r, seed)?;
    let input = odp_input(&res)?;
    let closed = odp_index_formula(&input)?;
    let model = nearby_hodge_index(&odp_semistable_model(&res, &input)?)?;
    let agree = model.nearby.as_ref() == Some(&closed);
    let mut text = format!("m = {m}  l = {l}  R = {:?}  V^m signature {:?}\n", input.r, input.vm_signature);
    text += "closed form:\n";
    text += &rows_text(&closed);
    match &model.nearby {
        Some(rows) => text += &format!("semistable model:\n{}", rows_text(rows)),
        None => text += "semistable model: weight criterion fails\n",
    }
    text += &format!("routes agree: {agree}\n");
    Outcome::new(agree, text, &json!({ "input": input, "closed_form": closed, "model": model.nearby, "agree": agree }))
}

fn kahler(k3: bool, hodge: Option<&str>) -> Result<Outcome, Error> {
    let h = match (k3, hodge) {
        (true, _) => HodgeNumbers::k3(),
        (false, Some(s)) => {
            let h: Vec<Vec<usize>> = serde_json::from_str(s).map_err(|e| Error::Input(format!("--hodge: {e}")))?;
            HodgeNumbers { h }
        }
        (false, None) => return Err(Error::Input("pass --k3 or --hodge".into())),
    };
    let n = h.h.len().saturating_sub(1);
    if n == 0 || h.h.iter().any(|row| row.len() != n + 1) {
        return Err(Error::Input("Hodge numbers must form a square table".into()));
    }
    let mut rows = Vec::new();
    let mut text = String::new();
    for p in 0..=n as i64 {
        let (plus, minus) = kahler_index_formula(&h, n, p)?;
        text += &format!("  ({p},{}): (+{plus}, -{minus})\n", n as i64 - p);
        rows.push(NearbyEntry { p, q: n as i64 - p, plus, minus });
    }
    let total = full_signature(&h);
    text += &format!("total signature: {total}\n");
    let mut consistent = true;
    if n % 2 == 0 {
        let from_rows = middle_signature_from_rows(&h, n)?;
        consistent = from_rows == total;
        text += &format!("cup-product signature from rows: {from_rows} ({})\n", if consistent { "consistent" } else { "MISMATCH" });
    }
    Outcome::new(consistent, text, &json!({ "rows": rows, "total": total, "consistent": consistent }))
}

fn sano(m: usize, a: u64, hodge: Option<&str>, hashimoto: bool) -> Result<Outcome, Error> {
    let neg = sano_negatives(m, a)?;
    let mut text = format!("m = {m}  a = {a}\n");
    let mut report = json!({ "m": m, "a": a });
    match hodge {
        Some(s) => {
            let table = sano_index_table(m, a, &parse_list(s)?)?;
            text += &rows_text(&table);
            report["table"] = json!(table);
        }
        None => {
            for k in 0..=m {
                let n = neg.get(&k).copied().unwrap_or(0);
                let plus = if n == 0 { "h".to_string() } else { format!("h-{n}") };
                text += &format!("  ({k},{}): ({plus}, {n})\n", m - k);
            }
            report["negatives"] = json!(neg);
        }
    }
    if neg.is_empty() {
        text += "polarized\n";
    }
    let mut ok = true;
    if hashimoto {
        let check = hashimoto_sano_pic_fixture(a as i64)?;
        ok = check.ok;
        text += &format!(
            "Hashimoto–Sano gluing at a = {a}: det {}  form preserved {}  composite rank {}\n",
            check.det, check.preserves_form, check.composite_rank
        );
        report["hashimoto_sano"] = json!(check);
    }
    Outcome::new(ok, text, &report)
}

fn o16(defect: usize, resolution: &str) -> Result<Outcome, Error> {
    let rows = resolution
        .split(';')
        .map(|pair| {
            let v = parse_list(pair)?;
            match v.as_slice() {
                [p, n] => Ok((*p, *n)),
                _ => Err(Error::Input(format!("{pair:?} is not plus,minus"))),
            }
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let rep = o16_evaluator(defect, &rows)?;
    let mut text = format!(
        "defect {defect}: criterion gap {}  verdict {}  resolution polarized {}\n",
        rep.criterion_gap, rep.verdict, rep.polarized
    );
    if let Some(t) = &rep.table {
        text += &rows_text(t);
    }
    Outcome::new(rep.verdict, text, &rep)
}

fn plane_cubic_pencil() -> PencilData {
    PencilData { m: 2, ambient_betti: vec![1, 0, 1, 0, 1], fiber_vanishing: 2, base_vanishing: 8 }
}

fn lefschetz(schoen: bool, input: Option<&PathBuf>) -> Result<Outcome, Error> {
    let pencils: [PencilData; 2] = match (schoen, input) {
        (true, _) => [plane_cubic_pencil(), plane_cubic_pencil()],
        (false, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Input(e.to_string()))?
        }
        (false, None) => return Err(Error::Input("pass --schoen or --input".into())),
    };
    let check = fiber_product_dim_check(&pencils)?;
    let text = format!(
        "critical values {:?} (Euler count {:?})\n\
         h^(m1+m2-2) of the fiber product: {} (symmetric reading), {} (printed reading)\n\
         tensor-module dimension: {}\n\
         dimCheck: {}\n",
        check.critical,
        check.euler_critical,
        check.formula.symmetric,
        check.formula.printed,
        check.tensor,
        if check.ok { "pass" } else { "FAIL" }
    );
    Outcome::new(check.ok, text, &check)
}

pub fn run(family: &Family) -> Result<Outcome, Error> {
    match family {
        Family::Odp { m, l, r, seed } => odp(*m, *l, *r, *seed),
        Family::Kahler { k3, hodge } => kahler(*k3, hodge.as_deref()),
        Family::Sano { m, a, hodge, hashimoto_sano } => sano(*m, *a, hodge.as_deref(), *hashimoto_sano),
        Family::O16 { defect, resolution } => o16(*defect, resolution),
        Family::Lefschetz { schoen, input } => lefschetz(*schoen, input.as_ref()),
    }
}
