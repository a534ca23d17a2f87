//! Water hammer in a pressurized pipe: a valve at the downstream end slams
//! shut on a moving column fed by an upstream reservoir. The stopped flow
//! rings at the acoustic period 4L/c with a density-ratio amplitude of
//! u0/c, the classic surge estimate. Prints theory against the simulation
//! and a coarse trace of the pressure swing at the valve.
//!
//! Run with: cargo run --example water_hammer

use pfs1d::config::preset;
use pfs1d::diagnostics::surge_metrics;
use pfs1d::solver::run;
use pfs1d::Result;

fn main() -> Result<()> {
    let config = preset("water-hammer")?;
    println!("1000 m pipe, radius 1 m, u0 = 1 m/s, valve closes at t = 0");
    let result = run(&config)?;
    let c = result.constants.celerity();
    let probe = 199; // the cell at the valve
    let metrics = surge_metrics(&result.trajectory, &result.mesh, probe)?;

    let u0 = 1.0;
    println!();
    println!("{:>28} {:>12} {:>12}", "", "theory", "simulated");
    println!(
        "{:>28} {:>12.4e} {:>12.4e}",
        "peak density excess A/S - 1",
        u0 / c,
        metrics.peak_ratio - 1.0
    );
    println!(
        "{:>28} {:>12.4} {:>12.4}",
        "oscillation period [s]",
        4.0 * 1000.0 / c,
        metrics.period.expect("the surge oscillates")
    );
    println!();

    // Trace of the density ratio at the valve over the first two periods,
    // sampled every few snapshots: + above hydrostatic, - below.
    let section = result.mesh.cells[probe].section_area;
    println!("density ratio at the valve (one row per 0.1 s):");
    let times = &result.trajectory.times;
    let mut next_sample = 0.0;
    for (k, t) in times.iter().enumerate() {
        if *t + 1e-12 < next_sample {
            continue;
        }
        next_sample += 0.1;
        if *t > 5.7 {
            break;
        }
        let ratio = result.trajectory.snapshots[k][probe].area / section;
        let swing = (ratio - 1.0) * c / u0; // normalized to [-1, 1]
        let pos = ((swing + 1.0) * 20.0).round().clamp(0.0, 40.0) as usize;
        let mut line = vec![' '; 41];
        line[20] = '|';
        line[pos] = '*';
        println!("  t={t:5.2}  {}", line.iter().collect::<String>());
    }
    Ok(())
}
