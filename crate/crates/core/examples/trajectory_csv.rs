//! Write the shock trajectory of the lightlike solution as CSV.
//!
//! `cargo run --example trajectory_csv [path]` (stdout without a path)

use std::io::Write;

use nullshock::lightlike::trajectory;
use nullshock::matching::{Anchors, MatchedSolution};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ms = MatchedSolution::lightlike(1.0, Anchors::default())?;
    let rows = trajectory(&ms, (0.0, 2.0), 11)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner()?;
    match std::env::args().nth(1) {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}
