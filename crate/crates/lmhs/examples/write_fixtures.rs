//! Regenerates the JSON fixtures under `fixtures/` from the library builders.
//!
//! Usage: `cargo run -p lmhs --example write_fixtures -- <dir>`

use std::path::PathBuf;

use lmhs::geomodels::{kodaira_degeneration, odp_input, odp_semistable_model, synthetic_resolution};
use lmhs::mhs::samples::{elliptic, tate3};
use lmhs::mhs::MhsJson;
use lmhs::steenbrink::e2_mhs;
use lmhs::Matrix;

fn mhs(data: lmhs::mhs::MhsData, description: &str) -> String {
    let mut j: MhsJson = data.to_json();
    j.description = Some(description.into());
    serde_json::to_string_pretty(&j).expect("fixture serializes") + "\n"
}

fn main() -> lmhs::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).map_err(|e| lmhs::Error::Input(e.to_string()))?;

    let mut kodaira = kodaira_degeneration(1)?;
    kodaira.description = Some(
        "Kodaira's degeneration of Hopf surfaces after base change: two copies of F_1 glued along two \
         rational curves. The monodromy criterion fails in degree 1."
            .into(),
    );
    let res = synthetic_resolution(3, 1, &[], &Matrix::zeros(0, 1))?;
    let mut odp = odp_semistable_model(&res, &odp_input(&res)?)?;
    odp.description = Some(
        "Threefold acquiring one ordinary double point with R = 1: blowup of the node plus the \
         exceptional quadric surface."
            .into(),
    );
    let kodaira_mhs = e2_mhs(&kodaira_degeneration(1)?, 1)?;

    let files = [
        ("kodaira.json", kodaira.to_json() + "\n"),
        ("odp_m3.json", odp.to_json() + "\n"),
        ("elliptic.json", mhs(elliptic(), "Limit of a degenerating elliptic curve: a weight 0/2 Tate string with d = 1.")),
        ("tate3.json", mhs(tate3(1), "Hodge-Tate string of length three with d = 2.")),
        (
            "kodaira_mhs.json",
            mhs(kodaira_mhs, "E2 terms in degree 1 of the Kodaira degeneration; W is not W(N, 1)."),
        ),
    ];
    for (name, text) in files {
        std::fs::write(dir.join(name), text).map_err(|e| lmhs::Error::Input(e.to_string()))?;
    }
    Ok(())
}
