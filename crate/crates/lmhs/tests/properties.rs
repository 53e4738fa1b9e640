mod common;

use proptest::prelude::*;

use lmhs::filtration::{check_weight_axioms, weight_filtration};
use lmhs::geomodels::{
    fiber_product_dim_check, kodaira_degeneration, odp_index_formula, odp_input, odp_semistable_model,
    random_pencil_pair, random_resolution, sano_index_table,
};
use lmhs::mhs::{random_polarized_mhs, MhsData, MhsJson, RandomMhsConfig};
use lmhs::steenbrink::{nearby_hodge_index, validate, DegenerationData};
use lmhs::Scalar;

use common::{jordan_sample, same_filtration};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/").to_string() + name).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weight_filtration_matches_jordan_oracle(seed in any::<u64>(), d in -2i64..5) {
        let s = jordan_sample(seed, 8);
        let w = weight_filtration(&s.n, d).unwrap();
        prop_assert!(check_weight_axioms(&w, &s.n, d).ok);
        prop_assert!(same_filtration(&w, &s.expected_weight(d)));
        prop_assert_eq!(weight_filtration(&s.n.neg(), d).unwrap(), w);
    }

    #[test]
    fn scalars_round_trip_through_text(a in -50i64..50, b in 1i64..20, c in -50i64..50, e in 1i64..20) {
        let mut x = Scalar::from_frac(a, b);
        x += &(Scalar::from_frac(c, e) * Scalar::i());
        let parsed: Scalar = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn random_mhs_round_trips_through_json(seed in 0u64..200) {
        let (data, _) = random_polarized_mhs(seed, &RandomMhsConfig::default()).unwrap();
        let text = serde_json::to_string(&data.to_json()).unwrap();
        let back: MhsJson = serde_json::from_str(&text).unwrap();
        let again = MhsData::from_json(&back).unwrap();
        prop_assert_eq!(serde_json::to_string(&again.to_json()).unwrap(), text);
    }

    #[test]
    fn odp_closed_form_matches_the_model(m in 3usize..5, l in 0usize..4, r in 0usize..4, seed in 0u64..1000) {
        let r = if m % 2 == 1 { r.min(l) } else { 0 };
        let res = random_resolution(m, l, r, seed).unwrap();
        let input = odp_input(&res).unwrap();
        let model = odp_semistable_model(&res, &input).unwrap();
        prop_assert!(validate(&model).ok);
        let rep = nearby_hodge_index(&model).unwrap();
        prop_assert_eq!(rep.nearby, Some(odp_index_formula(&input).unwrap()));
    }

    #[test]
    fn pencil_dimension_check(seed in any::<u64>()) {
        let check = fiber_product_dim_check(&random_pencil_pair(seed)).unwrap();
        prop_assert!(check.ok, "{:?}", check);
    }

    #[test]
    fn sano_rows_add_up(m in 3usize..12, a in 1u64..6, extra in proptest::collection::vec(0usize..40, 12)) {
        // room for the largest negative count, 9(27a²−2a+5)+a+6
        let base = (9 * (27 * a * a + 5) + a + 6) as usize;
        let hodge: Vec<usize> = (0..=m).map(|k| base + extra[k]).collect();
        let table = sano_index_table(m, a, &hodge).unwrap();
        for (k, row) in table.iter().enumerate() {
            prop_assert_eq!(row.plus + row.minus, hodge[k]);
            let middle = if m % 2 == 0 { k == m / 2 } else { m % 4 == 1 && (2 * k == m - 1 || 2 * k == m + 1) };
            prop_assert!(middle || row.minus == 0);
        }
    }
}

#[test]
fn degeneration_fixtures_match_their_builders() {
    let mut stored = DegenerationData::from_json(&fixture("kodaira.json")).unwrap();
    let mut built = kodaira_degeneration(1).unwrap();
    stored.description = None;
    built.description = None;
    assert_eq!(stored, built);
    for name in ["kodaira.json", "odp_m3.json"] {
        let data = DegenerationData::from_json(&fixture(name)).unwrap();
        assert!(validate(&data).ok, "{name}");
        assert_eq!(DegenerationData::from_json(&data.to_json()).unwrap(), data);
    }
}

#[test]
fn mhs_fixtures_parse() {
    for name in ["elliptic.json", "tate3.json", "kodaira_mhs.json"] {
        let j: MhsJson = serde_json::from_str(&fixture(name)).unwrap();
        assert!(j.description.is_some());
        MhsData::from_json(&j).unwrap();
    }
}
