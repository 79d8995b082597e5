//! Bell statistics over the experiment's joint distributions.
//!
//! Marginal tables, correlators in the P(x = y) − P(x ≠ y) form, the CHSH
//! combination against the classical and quantum ceilings, distribution-free
//! confidence envelopes for sampled estimates, and no-signalling audits that
//! compare each wing's output marginals across the remote wing's settings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::TOL;
use crate::protocol::{outcome_index, Bit, JointDistribution, TrialInputs, TrialRecord};

/// Classical ceiling of the CHSH combination.
pub const CLASSICAL_BOUND: f64 = 2.0;
/// Quantum ceiling of the CHSH combination, 2√2.
pub const TSIRELSON_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;
/// Failure probability budget of the confidence envelope.
pub const CONFIDENCE_DELTA: f64 = 0.01;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("no samples to estimate from")]
    NoSamples,
    #[error("table entry {value} at inputs (α={alpha}, β={beta}) is not a probability")]
    BadEntry { alpha: Bit, beta: Bit, value: f64 },
    #[error("conditional slice (α={alpha}, β={beta}) sums to {total}")]
    NotNormalized { alpha: Bit, beta: Bit, total: f64 },
}

/// Conditional two-party table P(x, y | α, β) for one fixed pair of
/// secondary settings; the slice the CHSH combination is evaluated on and
/// the shape hidden-variable models produce.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PasTable {
    /// Indexed [α][β][x][y].
    pub p: [[[[f64; 2]; 2]; 2]; 2],
}

impl PasTable {
    pub fn zeros() -> Self {
        Self {
            p: [[[[0.0; 2]; 2]; 2]; 2],
        }
    }

    pub fn get(&self, x: Bit, y: Bit, alpha: Bit, beta: Bit) -> f64 {
        self.p[alpha as usize][beta as usize][x as usize][y as usize]
    }

    pub fn set(&mut self, x: Bit, y: Bit, alpha: Bit, beta: Bit, value: f64) {
        self.p[alpha as usize][beta as usize][x as usize][y as usize] = value;
    }

    /// Entries in [0, 1] and each conditional slice normalized within `tol`.
    pub fn validate(&self, tol: f64) -> Result<(), StatsError> {
        for alpha in 0..2u8 {
            for beta in 0..2u8 {
                let mut total = 0.0;
                for x in 0..2u8 {
                    for y in 0..2u8 {
                        let v = self.get(x, y, alpha, beta);
                        if !(v.is_finite() && v >= -tol) {
                            return Err(StatsError::BadEntry {
                                alpha,
                                beta,
                                value: v,
                            });
                        }
                        total += v;
                    }
                }
                if (total - 1.0).abs() > tol {
                    return Err(StatsError::NotNormalized { alpha, beta, total });
                }
            }
        }
        Ok(())
    }

    /// Largest per-setting total variation distance to `other`.
    pub fn total_variation(&self, other: &PasTable) -> f64 {
        let mut worst = 0.0f64;
        for alpha in 0..2usize {
            for beta in 0..2usize {
                let mut tv = 0.0;
                for x in 0..2usize {
                    for y in 0..2usize {
                        tv += (self.p[alpha][beta][x][y] - other.p[alpha][beta][x][y]).abs();
                    }
                }
                worst = worst.max(0.5 * tv);
            }
        }
        worst
    }
}

/// Pairwise marginal P(x, y | α, α′, β, β′) over the full input lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairMarginal {
    /// Indexed [input tuple][x | y<<1].
    pub p: [[f64; 4]; 16],
}

impl PairMarginal {
    pub fn get(&self, x: Bit, y: Bit, inputs: TrialInputs) -> f64 {
        self.p[inputs.index()][x as usize | (y as usize) << 1]
    }

    /// Fix the secondary settings (α′, β′) and view the table over (α, β).
    pub fn slice(&self, alpha_prime: Bit, beta_prime: Bit) -> PasTable {
        let mut table = PasTable::zeros();
        for alpha in 0..2u8 {
            for beta in 0..2u8 {
                let inputs = TrialInputs::new(alpha, alpha_prime, beta, beta_prime);
                for x in 0..2u8 {
                    for y in 0..2u8 {
                        table.set(x, y, alpha, beta, self.get(x, y, inputs));
                    }
                }
            }
        }
        table
    }
}

/// The three pairwise marginals of the joint distribution, each obtained by
/// summing out the remaining output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marginals {
    /// P_AB(a, b |·) = Σ_s P.
    pub p_ab: PairMarginal,
    /// P_AS(a, s |·) = Σ_b P.
    pub p_as: PairMarginal,
    /// P_BS(b, s |·) = Σ_a P.
    pub p_bs: PairMarginal,
}

/// Sum out one output at a time.
pub fn marginals(dist: &JointDistribution) -> Marginals {
    let mut p_ab = PairMarginal { p: [[0.0; 4]; 16] };
    let mut p_as = PairMarginal { p: [[0.0; 4]; 16] };
    let mut p_bs = PairMarginal { p: [[0.0; 4]; 16] };
    for inputs in TrialInputs::all() {
        let slice = dist.conditional_slice(inputs);
        let idx = inputs.index();
        for a in 0..2usize {
            for b in 0..2usize {
                for s in 0..2usize {
                    let v = slice[outcome_index(a as Bit, b as Bit, s as Bit)];
                    p_ab.p[idx][a | b << 1] += v;
                    p_as.p[idx][a | s << 1] += v;
                    p_bs.p[idx][b | s << 1] += v;
                }
            }
        }
    }
    Marginals { p_ab, p_as, p_bs }
}

/// Correlators E(α, β) = P(x = y | α, β) − P(x ≠ y | α, β).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTable {
    pub e: [[f64; 2]; 2],
}

impl CorrelationTable {
    pub fn get(&self, alpha: Bit, beta: Bit) -> f64 {
        self.e[alpha as usize][beta as usize]
    }
}

/// Computed directly from the conditional table, no ±1 recoding.
pub fn correlations(table: &PasTable) -> CorrelationTable {
    let mut e = [[0.0; 2]; 2];
    for alpha in 0..2u8 {
        for beta in 0..2u8 {
            let mut value = 0.0;
            for x in 0..2u8 {
                value += table.get(x, x, alpha, beta)
                    - table.get(x, crate::protocol::flip(x), alpha, beta);
            }
            e[alpha as usize][beta as usize] = value;
        }
    }
    CorrelationTable { e }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChshVerdict {
    /// |I| within the classical ceiling (up to the confidence halfwidth).
    ClassicalCompatible,
    /// Above the classical ceiling, within the quantum ceiling.
    Quantum,
    /// Above 2√2 beyond the confidence halfwidth; flags a broken table.
    SuperquantumFlag,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshReport {
    pub i_chsh: f64,
    pub correlations: CorrelationTable,
    pub classical_bound: f64,
    pub tsirelson_bound: f64,
    pub verdict: ChshVerdict,
    /// Confidence halfwidth of `i_chsh`; 0 for exact tables.
    pub ci_halfwidth: f64,
}

/// The CHSH combination E(0,0) + E(0,1) − E(1,0) + E(1,1) of an exact table.
pub fn chsh(table: &PasTable) -> ChshReport {
    chsh_with_ci(table, 0.0)
}

/// Same, for an estimated table with a known confidence halfwidth.
pub fn chsh_with_ci(table: &PasTable, ci_halfwidth: f64) -> ChshReport {
    let correlations = correlations(table);
    let i_chsh = correlations.get(0, 0) + correlations.get(0, 1) - correlations.get(1, 0)
        + correlations.get(1, 1);
    let magnitude = i_chsh.abs();
    let verdict = if magnitude <= CLASSICAL_BOUND + ci_halfwidth + TOL {
        ChshVerdict::ClassicalCompatible
    } else if magnitude <= TSIRELSON_BOUND + ci_halfwidth + TOL {
        ChshVerdict::Quantum
    } else {
        ChshVerdict::SuperquantumFlag
    };
    ChshReport {
        i_chsh,
        correlations,
        classical_bound: CLASSICAL_BOUND,
        tsirelson_bound: TSIRELSON_BOUND,
        verdict,
        ci_halfwidth,
    }
}

/// Empirical estimate built from sampled trials.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Estimate {
    /// Empirical conditional distribution; slices of unobserved input tuples
    /// stay zero and are listed in `empty_cells`.
    pub distribution: JointDistribution,
    /// Trials seen per input tuple.
    pub counts: [u64; 16],
    /// Input tuples with no samples (no estimate for those slices).
    pub empty_cells: Vec<TrialInputs>,
    /// Smallest per-input count.
    pub n_min: u64,
    /// CHSH report on the (α′ = 1, β′ = 1) slice of P_AS, with the
    /// distribution-free halfwidth 4·√(ln(2/δ)/(2·n_min)), δ = 0.01.
    pub report: ChshReport,
}

/// Estimate conditional probabilities and the CHSH value from trials drawn
/// with uniform input bits.
pub fn estimate(samples: &[TrialRecord]) -> Result<Estimate, StatsError> {
    if samples.is_empty() {
        return Err(StatsError::NoSamples);
    }
    let mut counts = [0u64; 16];
    let mut sums = [[0u64; 8]; 16];
    for record in samples {
        let idx = record.inputs.index();
        counts[idx] += 1;
        sums[idx][outcome_index(record.a, record.b, record.s)] += 1;
    }

    let mut distribution = JointDistribution::zeros();
    let mut empty_cells = Vec::new();
    for inputs in TrialInputs::all() {
        let idx = inputs.index();
        if counts[idx] == 0 {
            empty_cells.push(inputs);
            continue;
        }
        let n = counts[idx] as f64;
        for (outcome, &count) in sums[idx].iter().enumerate() {
            let a = (outcome & 1) as Bit;
            let b = ((outcome >> 1) & 1) as Bit;
            let s = ((outcome >> 2) & 1) as Bit;
            distribution.add(a, b, s, inputs, count as f64 / n);
        }
    }

    let n_min = *counts.iter().min().expect("sixteen cells");
    let ci_halfwidth = if n_min == 0 {
        f64::INFINITY
    } else {
        4.0 * ((2.0 / CONFIDENCE_DELTA).ln() / (2.0 * n_min as f64)).sqrt()
    };
    let slice = marginals(&distribution).p_as.slice(1, 1);
    let report = chsh_with_ci(&slice, ci_halfwidth);
    Ok(Estimate {
        distribution,
        counts,
        empty_cells,
        n_min,
        report,
    })
}

/// No-signalling audit of a full joint distribution.
///
/// Alice's output marginal must not move with (β, β′), and the joint
/// marginal of Bob's outputs must not move with (α, α′); the report carries
/// the largest discrepancy seen on each side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoSignallingReport {
    pub max_alice_discrepancy: f64,
    pub max_bob_discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn no_signalling_audit(dist: &JointDistribution, tolerance: f64) -> NoSignallingReport {
    let m = marginals(dist);

    // Alice's side: P_A(a | α, α′, β, β′) = Σ_b P_AB must be flat across (β, β′).
    let mut max_alice = 0.0f64;
    for alpha in 0..2u8 {
        for alpha_prime in 0..2u8 {
            for a in 0..2u8 {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for beta in 0..2u8 {
                    for beta_prime in 0..2u8 {
                        let inputs = TrialInputs::new(alpha, alpha_prime, beta, beta_prime);
                        let p_a: f64 = (0..2u8).map(|b| m.p_ab.get(a, b, inputs)).sum();
                        lo = lo.min(p_a);
                        hi = hi.max(p_a);
                    }
                }
                max_alice = max_alice.max(hi - lo);
            }
        }
    }

    // Bob's side: P_BS(b, s | ·) must be flat across (α, α′).
    let mut max_bob = 0.0f64;
    for beta in 0..2u8 {
        for beta_prime in 0..2u8 {
            for b in 0..2u8 {
                for s in 0..2u8 {
                    let mut lo = f64::INFINITY;
                    let mut hi = f64::NEG_INFINITY;
                    for alpha in 0..2u8 {
                        for alpha_prime in 0..2u8 {
                            let inputs = TrialInputs::new(alpha, alpha_prime, beta, beta_prime);
                            let p = m.p_bs.get(b, s, inputs);
                            lo = lo.min(p);
                            hi = hi.max(p);
                        }
                    }
                    max_bob = max_bob.max(hi - lo);
                }
            }
        }
    }

    NoSignallingReport {
        max_alice_discrepancy: max_alice,
        max_bob_discrepancy: max_bob,
        tolerance,
        passed: max_alice <= tolerance && max_bob <= tolerance,
    }
}

/// No-signalling audit of a two-setting table: x's marginal flat in β, y's
/// marginal flat in α.
pub fn pas_no_signalling_audit(table: &PasTable, tolerance: f64) -> NoSignallingReport {
    let mut max_alice = 0.0f64;
    for alpha in 0..2u8 {
        for x in 0..2u8 {
            let p: [f64; 2] =
                [0, 1].map(|beta| (0..2u8).map(|y| table.get(x, y, alpha, beta as Bit)).sum());
            max_alice = max_alice.max((p[0] - p[1]).abs());
        }
    }
    let mut max_bob = 0.0f64;
    for beta in 0..2u8 {
        for y in 0..2u8 {
            let p: [f64; 2] =
                [0, 1].map(|alpha| (0..2u8).map(|x| table.get(x, y, alpha as Bit, beta)).sum());
            max_bob = max_bob.max((p[0] - p[1]).abs());
        }
    }
    NoSignallingReport {
        max_alice_discrepancy: max_alice,
        max_bob_discrepancy: max_bob,
        tolerance,
        passed: max_alice <= tolerance && max_bob <= tolerance,
    }
}
