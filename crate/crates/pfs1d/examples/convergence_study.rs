//! Self-convergence of the scheme on a dam break: rerun one configuration
//! at nested resolutions, restrict the finest run onto each coarser grid,
//! and report L1 errors with observed orders. First-order convergence is
//! the expectation for a first-order scheme on a wave with fronts.
//!
//! Run with: cargo run --example convergence_study

use pfs1d::config::preset;
use pfs1d::convergence::{format_table, refinement_study};
use pfs1d::Result;

fn main() -> Result<()> {
    let mut config = preset("dam-break-fs")?;
    config.t_end = 4.0; // compare before the waves reach the walls
    let levels = [25usize, 50, 100, 200, 400];
    println!("dam break at t = 4 s, L1 self-convergence against n = 400:");
    println!();
    let rows = refinement_study(&config, &levels)?;
    print!("{}", format_table(&rows));
    println!();
    println!("the finest level is the reference, so its error row is zero;");
    println!("orders hover around one away from the reference level");
    Ok(())
}
