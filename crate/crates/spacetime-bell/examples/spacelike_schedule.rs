//! Timing budget validation and the spacelike layout of the two wings.
//!
//! The reference budget (0.1 s randomness windows, 0.5 s micro/macro
//! operations, 0.1 s reduction, 2 s geometry readout) forces the wings
//! apart by more than 3.3 light-seconds; at 3.4 the schedule builds and
//! both of Bob's windows are spacelike from Alice's, at exactly 3.3 the
//! strict inequality fails by name.
//!
//! Run: cargo run --example spacelike_schedule

use spacetime_bell::spacetime::{
    build_schedule, regions_spacelike, validate_budget, TimingBudget, SPEED_OF_LIGHT,
};

fn main() {
    let budget = TimingBudget::reference();
    println!(
        "required separation: {:.1} light-seconds (strict)",
        budget.required_separation() / SPEED_OF_LIGHT
    );
    println!(
        "configured d_ent:    {:.1} light-seconds",
        budget.d_ent / SPEED_OF_LIGHT
    );

    let report = validate_budget(&budget);
    println!("\nbudget checks:");
    for check in &report.checks {
        println!(
            "  [{}] {}",
            if check.passed { "ok" } else { "XX" },
            check.name
        );
    }
    assert!(report.passed);

    let schedule = build_schedule(&budget).expect("validated budget builds");
    println!("\nevent times (s):");
    for (i, t) in schedule.times.iter().enumerate() {
        println!("  t{i} = {t:.3}");
    }
    let wings = regions_spacelike(&schedule.region_alice, &schedule.region_bob);
    let geom = regions_spacelike(&schedule.region_alice, &schedule.region_geom);
    println!("\nAlice wing vs Bob wing spacelike:        {wings}");
    println!("Alice wing vs geometry window spacelike: {geom}");
    assert!(wings && geom);

    // The boundary case: exactly the required separation is not enough.
    let mut boundary = budget;
    boundary.d_ent = 3.3 * SPEED_OF_LIGHT;
    let failed = validate_budget(&boundary);
    let failure = failed.first_failure().expect("boundary budget fails");
    println!(
        "\nat exactly 3.3 light-seconds: FAIL on `{}`\n  {}",
        failure.name, failure.detail
    );
    assert!(!failed.passed);

    println!("\nEvery record of the left wing is outside the light cone of the right wing.");
}
