//! Writes the four standard datasets under `./out` (or the directory given as
//! the first argument) and prints the manifest checks.

use std::path::PathBuf;

use qdot_feedback::{reproduce, Figure};

fn main() -> qdot_feedback::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| "out".into());
    for figure in [Figure::Fig2, Figure::Fig3, Figure::Fig4, Figure::Fig5] {
        let ds = reproduce(figure, &out, 1e-3, 60.0)?;
        println!("{} -> {}", figure.id(), ds.dir.display());
        for f in &ds.manifest.files {
            println!("  {}", f.name);
        }
        for c in &ds.manifest.checks {
            println!("  check {}: {:.6e} {:?}", c.name, c.value, c.passed);
        }
    }
    Ok(())
}
