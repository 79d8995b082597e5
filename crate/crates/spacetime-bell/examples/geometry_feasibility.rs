//! Newtonian feasibility of distinguishing the two classical geometries.
//!
//! A source mass rides one of two worldlines a distance d apart; a probe
//! mass free-falls at distance d′ and its displacement over the readout
//! window decides which geometry was realized. The inequalities demand the
//! gravitational displacement scale K = G·m_S·m_P·t² / d′² to dominate both
//! masses' position and velocity uncertainties by a configurable margin
//! while those uncertainties stay consistent with the uncertainty principle.
//!
//! Run: cargo run --example geometry_feasibility

use spacetime_bell::spacetime::{feasibility_check, FeasibilityParams};

fn main() {
    let params = FeasibilityParams::reference();
    let report = feasibility_check(&params, 100.0).expect("parameters are positive");

    println!(
        "source/probe masses: {} kg / {} kg",
        params.m_source, params.m_probe
    );
    println!(
        "worldline split d = {} m, probe distance d′ = {} m",
        params.d, params.d_prime
    );
    println!("readout window: {} s", params.t_geom);
    println!(
        "coupling K = {:.6e} kg·m at margin {}",
        report.coupling, report.margin
    );
    println!("\nchecks:");
    for check in &report.checks {
        println!(
            "  [{}] {}: {}",
            if check.passed { "ok" } else { "XX" },
            check.name,
            check.detail
        );
    }
    assert!(report.passed);
    println!("\nresult: feasible — the two geometries are distinguishable in principle.");

    // A sloppy apparatus: centimeter-scale position uncertainty swamps K.
    let mut sloppy = params;
    sloppy.dx_source = 1e-2;
    sloppy.dx_probe = 1e-2;
    let failed = feasibility_check(&sloppy, 100.0).unwrap();
    let failure = failed
        .checks
        .iter()
        .find(|c| !c.passed)
        .expect("sloppy parameters fail");
    println!("\nwith Δx = 1 cm: FAIL on `{}`", failure.name);
    assert!(!failed.passed);
}
