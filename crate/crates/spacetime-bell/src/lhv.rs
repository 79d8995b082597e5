//! The classical null model: local deterministic strategies and their
//! mixtures.
//!
//! For binary inputs and outputs every factorized hidden-variable
//! distribution is a convex mixture of the 16 deterministic response pairs
//! (a(α), s(β)), so the classical CHSH ceiling is certified by exhausting
//! them, and the distance from a target table to the whole classical set is
//! an exact linear program over mixture weights.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::protocol::Bit;
use crate::stats::PasTable;

mod simplex;

#[derive(Debug, Error)]
pub enum LhvError {
    #[error("mixture weight {0} is negative")]
    NegativeWeight(f64),
    #[error("mixture weights sum to {0}, expected 1")]
    WeightsNotNormalized(f64),
    #[error("target table is not a conditional distribution: {0}")]
    BadTarget(#[from] crate::stats::StatsError),
    #[error("fit solver failed: {0}")]
    Solver(String),
}

/// One local deterministic strategy: a response bit per setting on each wing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterministicStrategy {
    /// Alice's response a(α).
    pub a_map: [Bit; 2],
    /// The geometry-wing response s(β).
    pub s_map: [Bit; 2],
}

impl DeterministicStrategy {
    /// All 16 strategies, indexed by the bit pattern
    /// a(0) | a(1)<<1 | s(0)<<2 | s(1)<<3.
    pub fn all() -> [DeterministicStrategy; 16] {
        std::array::from_fn(|k| DeterministicStrategy {
            a_map: [(k & 1) as Bit, ((k >> 1) & 1) as Bit],
            s_map: [((k >> 2) & 1) as Bit, ((k >> 3) & 1) as Bit],
        })
    }

    pub fn respond_a(&self, alpha: Bit) -> Bit {
        self.a_map[alpha as usize]
    }

    pub fn respond_s(&self, beta: Bit) -> Bit {
        self.s_map[beta as usize]
    }

    /// The conditional table this strategy alone produces.
    pub fn table(&self) -> PasTable {
        let mut table = PasTable::zeros();
        for alpha in 0..2u8 {
            for beta in 0..2u8 {
                table.set(
                    self.respond_a(alpha),
                    self.respond_s(beta),
                    alpha,
                    beta,
                    1.0,
                );
            }
        }
        table
    }
}

/// A hidden-variable model: a probability mixture of deterministic
/// strategies. The weight distribution is independent of the inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhvModel {
    entries: Vec<(DeterministicStrategy, f64)>,
}

impl LhvModel {
    pub fn new(entries: Vec<(DeterministicStrategy, f64)>) -> Result<Self, LhvError> {
        let mut total = 0.0;
        for &(_, w) in &entries {
            if w < 0.0 {
                return Err(LhvError::NegativeWeight(w));
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(LhvError::WeightsNotNormalized(total));
        }
        Ok(Self { entries })
    }

    /// Uniform mixture over all 16 strategies.
    pub fn uniform() -> Self {
        Self {
            entries: DeterministicStrategy::all()
                .into_iter()
                .map(|strategy| (strategy, 1.0 / 16.0))
                .collect(),
        }
    }

    /// Model from a weight per strategy index.
    pub fn from_weights(weights: &[f64; 16]) -> Result<Self, LhvError> {
        Self::new(
            DeterministicStrategy::all()
                .into_iter()
                .zip(weights.iter().copied())
                .collect(),
        )
    }

    /// A random mixture: independent uniform draws, normalized.
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut weights = [0.0f64; 16];
        let mut total = 0.0;
        for w in &mut weights {
            *w = rng.random::<f64>();
            total += *w;
        }
        for w in &mut weights {
            *w /= total;
        }
        Self::from_weights(&weights).expect("normalized by construction")
    }

    pub fn entries(&self) -> &[(DeterministicStrategy, f64)] {
        &self.entries
    }
}

/// The mixture's conditional table: affine in the weights.
pub fn model_distribution(model: &LhvModel) -> PasTable {
    let mut table = PasTable::zeros();
    for (strategy, weight) in model.entries() {
        for alpha in 0..2u8 {
            for beta in 0..2u8 {
                let x = strategy.respond_a(alpha);
                let y = strategy.respond_s(beta);
                let v = table.get(x, y, alpha, beta);
                table.set(x, y, alpha, beta, v + weight);
            }
        }
    }
    table
}

/// Result of exhausting all 16 deterministic strategies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanResult {
    pub max_i: f64,
    pub min_i: f64,
    pub argmax: Vec<DeterministicStrategy>,
    pub argmin: Vec<DeterministicStrategy>,
}

/// Exhaustive scan of the deterministic extremals.
pub fn max_deterministic_chsh() -> ScanResult {
    let mut max_i = f64::NEG_INFINITY;
    let mut min_i = f64::INFINITY;
    let mut argmax = Vec::new();
    let mut argmin = Vec::new();
    for strategy in DeterministicStrategy::all() {
        let i = crate::stats::chsh(&strategy.table()).i_chsh;
        if i > max_i + 1e-12 {
            max_i = i;
            argmax.clear();
        }
        if (i - max_i).abs() <= 1e-12 {
            max_i = max_i.max(i);
            argmax.push(strategy);
        }
        if i < min_i - 1e-12 {
            min_i = i;
            argmin.clear();
        }
        if (i - min_i).abs() <= 1e-12 {
            min_i = min_i.min(i);
            argmin.push(strategy);
        }
    }
    ScanResult {
        max_i,
        min_i,
        argmax,
        argmin,
    }
}

/// Best classical approximation of a target table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LhvFit {
    pub model: LhvModel,
    /// Largest per-setting total variation between the fitted mixture and
    /// the target; zero exactly when the target is classical.
    pub tv_distance: f64,
}

/// Minimize the total variation distance from the mixture polytope to
/// `target`, exactly, as a linear program over the 16 weights.
///
/// Formulation: weights w ∈ Δ₁₆, per-cell gaps e ≥ |mix − target|, and a
/// scalar ceiling t with Σ_cell e ≤ 2t per setting pair; minimize t.
pub fn best_lhv_fit(target: &PasTable) -> Result<LhvFit, LhvError> {
    target.validate(1e-9)?;

    let strategies = DeterministicStrategy::all();
    // Variable layout: w₀..w₁₅, e₀..e₁₅ (cell order (α,β,x,y) row-major), t.
    const W: usize = 16;
    const E: usize = 16;
    let n_vars = W + E + 1;
    let t_var = W + E;

    let cell = |alpha: usize, beta: usize, x: usize, y: usize| -> usize {
        ((alpha * 2 + beta) * 2 + x) * 2 + y
    };

    let mut problem = simplex::Problem::new(n_vars);
    let mut objective = vec![0.0; n_vars];
    objective[t_var] = 1.0;
    problem.set_objective(objective);

    // Σ w = 1.
    let mut row = vec![0.0; n_vars];
    row[..W].fill(1.0);
    problem.add_eq(row, 1.0);

    for alpha in 0..2usize {
        for beta in 0..2usize {
            for x in 0..2usize {
                for y in 0..2usize {
                    let c = cell(alpha, beta, x, y);
                    let t_val = target.get(x as Bit, y as Bit, alpha as Bit, beta as Bit);
                    // mix − e ≤ target and −mix − e ≤ −target.
                    let mut up = vec![0.0; n_vars];
                    let mut dn = vec![0.0; n_vars];
                    for (k, strategy) in strategies.iter().enumerate() {
                        let hit = strategy.respond_a(alpha as Bit) == x as Bit
                            && strategy.respond_s(beta as Bit) == y as Bit;
                        if hit {
                            up[k] = 1.0;
                            dn[k] = -1.0;
                        }
                    }
                    up[W + c] = -1.0;
                    dn[W + c] = -1.0;
                    problem.add_le(up, t_val);
                    problem.add_le(dn, -t_val);
                }
            }
            // ½ Σ_cell e ≤ t.
            let mut row = vec![0.0; n_vars];
            for x in 0..2usize {
                for y in 0..2usize {
                    row[W + cell(alpha, beta, x, y)] = 1.0;
                }
            }
            row[t_var] = -2.0;
            problem.add_le(row, 0.0);
        }
    }

    let solution = problem
        .solve()
        .map_err(|e| LhvError::Solver(e.to_string()))?;

    let mut weights = [0.0f64; 16];
    let mut total = 0.0;
    for (k, w) in weights.iter_mut().enumerate() {
        *w = solution.values[k].max(0.0);
        total += *w;
    }
    for w in &mut weights {
        *w /= total;
    }
    let model = LhvModel::from_weights(&weights)?;
    // Report the distance recomputed from the returned model, not the LP
    // objective, so the value stays honest under solver round-off.
    let tv_distance = model_distribution(&model).total_variation(target);
    debug_assert!(
        (solution.objective - tv_distance).abs() < 1e-6,
        "LP objective {} drifted from recomputed distance {}",
        solution.objective,
        tv_distance
    );
    Ok(LhvFit { model, tv_distance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::TOL;
    use crate::protocol::{exact_distribution, SmHypothesis};
    use crate::stats::{chsh, marginals, pas_no_signalling_audit};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn quantum_slice() -> PasTable {
        marginals(&exact_distribution(SmHypothesis::BornReduce))
            .p_as
            .slice(1, 1)
    }

    #[test]
    fn single_strategy_is_deterministic() {
        let strategy = DeterministicStrategy {
            a_map: [0, 0],
            s_map: [0, 0],
        };
        let model = LhvModel::new(vec![(strategy, 1.0)]).unwrap();
        let table = model_distribution(&model);
        for alpha in 0..2u8 {
            for beta in 0..2u8 {
                assert_eq!(table.get(0, 0, alpha, beta), 1.0);
            }
        }
    }

    #[test]
    fn uniform_mixture_gives_uniform_outcomes() {
        // Oracle: direct average of the 16 deterministic tables.
        let mut expected = PasTable::zeros();
        for strategy in DeterministicStrategy::all() {
            let t = strategy.table();
            for alpha in 0..2u8 {
                for beta in 0..2u8 {
                    for x in 0..2u8 {
                        for y in 0..2u8 {
                            let v = expected.get(x, y, alpha, beta);
                            expected.set(x, y, alpha, beta, v + t.get(x, y, alpha, beta) / 16.0);
                        }
                    }
                }
            }
        }
        let table = model_distribution(&LhvModel::uniform());
        assert!(table.total_variation(&expected) < 1e-15);
        for alpha in 0..2u8 {
            for beta in 0..2u8 {
                for x in 0..2u8 {
                    for y in 0..2u8 {
                        assert!((table.get(x, y, alpha, beta) - 0.25).abs() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn models_never_signal() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let table = model_distribution(&LhvModel::random(&mut rng));
            assert!(pas_no_signalling_audit(&table, 1e-12).passed);
        }
    }

    #[test]
    fn model_rejects_bad_weights() {
        let strategy = DeterministicStrategy {
            a_map: [0, 0],
            s_map: [0, 0],
        };
        assert!(matches!(
            LhvModel::new(vec![(strategy, -0.1), (strategy, 1.1)]),
            Err(LhvError::NegativeWeight(_))
        ));
        assert!(matches!(
            LhvModel::new(vec![(strategy, 0.5)]),
            Err(LhvError::WeightsNotNormalized(_))
        ));
    }

    #[test]
    fn deterministic_extrema_are_plus_minus_two() {
        let scan = max_deterministic_chsh();
        assert_eq!(scan.max_i, 2.0);
        assert_eq!(scan.min_i, -2.0);
        // Every strategy is extremal one way or the other.
        assert_eq!(scan.argmax.len() + scan.argmin.len(), 16);
        let all_zero = DeterministicStrategy {
            a_map: [0, 0],
            s_map: [0, 0],
        };
        assert!(scan.argmax.contains(&all_zero));
    }

    #[test]
    fn scan_is_stable_under_strategy_order() {
        // Recompute the extrema over a permuted strategy list.
        let mut strategies = DeterministicStrategy::all().to_vec();
        strategies.reverse();
        strategies.swap(3, 11);
        let (mut max_i, mut min_i) = (f64::NEG_INFINITY, f64::INFINITY);
        for strategy in strategies {
            let i = chsh(&strategy.table()).i_chsh;
            max_i = max_i.max(i);
            min_i = min_i.min(i);
        }
        let scan = max_deterministic_chsh();
        assert_eq!(max_i, scan.max_i);
        assert_eq!(min_i, scan.min_i);
    }

    #[test]
    fn mixtures_stay_within_deterministic_extrema() {
        let scan = max_deterministic_chsh();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..200 {
            let i = chsh(&model_distribution(&LhvModel::random(&mut rng))).i_chsh;
            assert!(i <= scan.max_i + 1e-12);
            assert!(i >= scan.min_i - 1e-12);
        }
    }

    #[test]
    fn distribution_is_affine_in_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let m1 = LhvModel::random(&mut rng);
        let m2 = LhvModel::random(&mut rng);
        let lambda = 0.3;
        let blended_weights: [f64; 16] = std::array::from_fn(|k| {
            lambda * m1.entries()[k].1 + (1.0 - lambda) * m2.entries()[k].1
        });
        let blended = model_distribution(&LhvModel::from_weights(&blended_weights).unwrap());
        let t1 = model_distribution(&m1);
        let t2 = model_distribution(&m2);
        for alpha in 0..2u8 {
            for beta in 0..2u8 {
                for x in 0..2u8 {
                    for y in 0..2u8 {
                        let direct = blended.get(x, y, alpha, beta);
                        let mixed = lambda * t1.get(x, y, alpha, beta)
                            + (1.0 - lambda) * t2.get(x, y, alpha, beta);
                        assert!((direct - mixed).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn fit_recovers_realizable_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..10 {
            let model = LhvModel::random(&mut rng);
            let target = model_distribution(&model);
            let fit = best_lhv_fit(&target).unwrap();
            assert!(
                fit.tv_distance <= 1e-9,
                "realizable target should fit exactly, got {}",
                fit.tv_distance
            );
        }
    }

    #[test]
    fn fit_rejects_unnormalized_targets() {
        let mut bad = PasTable::zeros();
        bad.set(0, 0, 0, 0, 0.7);
        assert!(matches!(best_lhv_fit(&bad), Err(LhvError::BadTarget(_))));
    }

    #[test]
    fn quantum_slice_sits_at_the_known_distance() {
        // Analytic oracle: the nearest classical table to the
        // Tsirelson-saturating slice is the mixture that shrinks it toward
        // uniform by 1/√2, at per-setting distance (√2 − 1)/4; no mixture
        // can do better because |ΔI| ≤ 8·TV and the gap in I is 2√2 − 2.
        let expected = (std::f64::consts::SQRT_2 - 1.0) / 4.0;
        let fit = best_lhv_fit(&quantum_slice()).unwrap();
        assert!(fit.tv_distance > 0.0);
        assert!(
            (fit.tv_distance - expected).abs() < 1e-7,
            "fit distance {} vs analytic {}",
            fit.tv_distance,
            expected
        );
        // The fitted mixture is itself classical, so its CHSH value obeys
        // the classical ceiling.
        let i = chsh(&model_distribution(&fit.model)).i_chsh;
        assert!(i.abs() <= 2.0 + TOL);
    }
}
