//! Exact and Monte Carlo simulation of a CHSH Bell experiment whose second
//! wing is read out from classical spacetime geometry.
//!
//! A shared singlet connects Alice's qubit to Bob's laboratory, where the
//! qubit is amplified onto two macroscopic position worldlines whose
//! classical geometries are perfectly distinguishable. The crate computes
//! the exact conditional outcome distribution of that protocol under both
//! readout hypotheses (state untouched / Born reduction), runs seeded Monte
//! Carlo trials, checks the causal timing budget that keeps the two wings
//! spacelike separated, audits no-signalling, and certifies the classical
//! CHSH ceiling by exhausting local deterministic strategies.
//!
//! Modules:
//! - [`hilbert`] — dense labeled state vectors, unitaries, Born measurement;
//! - [`protocol`] — the experiment state machine and exact branch enumeration;
//! - [`spacetime`] — interval classification, regions, schedules, budgets;
//! - [`stats`] — marginals, correlators, CHSH reports, no-signalling audits;
//! - [`lhv`] — deterministic-strategy models and the classical bound;
//! - [`cli`] — config ingestion, command execution, report files.

pub mod cli;
pub mod hilbert;
pub mod lhv;
pub mod protocol;
pub mod spacetime;
pub mod stats;
