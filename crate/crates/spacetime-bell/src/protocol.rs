//! The two-wing experiment state machine.
//!
//! One trial: Alice draws two free bits and measures her half of a shared
//! singlet in the basis they select; Bob draws a free bit, applies the
//! matching qubit unitary, amplifies his qubit onto two macroscopic position
//! worldlines, reads the resulting classical spacetime geometry out during
//! the geometry window, then either measures the path register or uncomputes
//! it back to a microscopic product state. Besides the per-trial Monte Carlo
//! path there is an exact branch-enumeration engine that produces the full
//! conditional joint distribution without sampling.
//!
//! All quantum amplitudes depend only on protocol order; wall-clock event
//! times are carried as metadata and gate feasibility, never amplitudes.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::{apply, inner, tensor, HilbertError, QubitBasis, StateVector, UnitaryOp, TOL};
use crate::spacetime::{build_schedule, validate_budget, Schedule, SpacetimeError, TimingBudget};

/// Classical bit. Valid values are 0 and 1 throughout.
pub type Bit = u8;

/// The other value of a bit.
pub fn flip(b: Bit) -> Bit {
    b ^ 1
}

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("protocol order violated: {operation} requires {expected}, register mode is {found}")]
    OutOfOrder {
        operation: &'static str,
        expected: String,
        found: String,
    },
    #[error("infeasible timing budget: constraint `{constraint}` failed ({detail})")]
    InfeasibleBudget { constraint: String, detail: String },
    #[error("register is not normalized: norm² = {0}")]
    NotNormalized(f64),
    #[error("conditional slice for inputs {inputs:?} sums to {total}")]
    NotConditionallyNormalized { inputs: TrialInputs, total: f64 },
    #[error("negative probability {value} at inputs {inputs:?}")]
    NegativeProbability { inputs: TrialInputs, value: f64 },
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Spacetime(#[from] SpacetimeError),
}

/// What the geometry readout does to a superposed register: leave the
/// quantum state untouched, or reduce it by the Born rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmHypothesis {
    NoChange,
    BornReduce,
}

/// The singlet (|0,1⟩ − |1,0⟩)/√2 over the A⊗B pair basis.
pub fn singlet() -> StateVector {
    let inv = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    StateVector::new(
        vec!["0,0".into(), "0,1".into(), "1,0".into(), "1,1".into()],
        vec![Complex64::ZERO, inv, -inv, Complex64::ZERO],
    )
    .expect("singlet is normalized")
}

/// Alice's measurement basis for input bits (α, α′).
///
/// (0,0) is computational, (1,0) the conjugate basis, and the α′ = 1 bases
/// sit at π/8, the settings that extremize the CHSH expression.
pub fn alice_basis(alpha: Bit, alpha_prime: Bit) -> QubitBasis {
    let (c, s) = (
        (std::f64::consts::FRAC_PI_8).cos(),
        (std::f64::consts::FRAC_PI_8).sin(),
    );
    let state = |a: Bit| -> StateVector {
        let sign = if a == 0 { 1.0 } else { -1.0 };
        let mut amps = [0.0f64; 2];
        match (alpha, alpha_prime) {
            (0, 0) => amps[a as usize] = 1.0,
            (1, 0) => {
                amps[0] = std::f64::consts::FRAC_1_SQRT_2;
                amps[1] = sign * std::f64::consts::FRAC_1_SQRT_2;
            }
            (0, 1) => {
                amps[a as usize] = c;
                amps[flip(a) as usize] = sign * s;
            }
            (1, 1) => {
                amps[a as usize] = s;
                amps[flip(a) as usize] = sign * c;
            }
            _ => unreachable!("bits are 0 or 1"),
        }
        StateVector::qubit(Complex64::new(amps[0], 0.0), Complex64::new(amps[1], 0.0))
            .expect("basis states are normalized")
    };
    QubitBasis::new(state(0), state(1)).expect("measurement bases are orthonormal")
}

/// Bob's qubit-side unitary: identity for β = 0, and for β = 1 the rotation
/// that exchanges the computational and conjugate bases
/// (|φ₁₀ᵃ⟩ ↦ (−1)ᵃ|φ₀₀ᵃ⟩, |φ₀₀ᵃ⟩ ↦ |φ₁₀^ā⟩).
pub fn bob_qubit_unitary(beta: Bit) -> UnitaryOp {
    let labels: Vec<String> = vec!["0".into(), "1".into()];
    if beta == 0 {
        return UnitaryOp::identity(labels);
    }
    let inv = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    UnitaryOp::new(labels, vec![vec![inv, inv], vec![-inv, inv]])
        .expect("basis exchange is unitary")
}

/// Where Bob's hybrid register currently lives: microscopic qubit next to
/// the parked mass, on the two position worldlines at a given time, or back
/// to a microscopic qubit next to the mass in its final parking state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeTag {
    MicInit,
    Path(f64),
    MicFin,
}

impl ModeTag {
    fn describe(&self) -> String {
        match self {
            ModeTag::MicInit => "microscopic ⊗ initial position".to_string(),
            ModeTag::Path(t) => format!("path register at t = {t} s"),
            ModeTag::MicFin => "microscopic ⊗ final position".to_string(),
        }
    }
}

/// Bob's hybrid system: a two-dimensional logical amplitude pair plus the
/// mode tag saying which physical carrier currently holds it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BobRegister {
    logical: [Complex64; 2],
    mode: ModeTag,
}

impl BobRegister {
    /// Wrap a qubit state (labels {"0","1"}) next to the parked mass.
    pub fn new(qubit: &StateVector) -> Result<Self, ProtocolError> {
        if qubit.dim() != 2 {
            return Err(HilbertError::DimensionMismatch {
                left: qubit.dim(),
                right: 2,
            }
            .into());
        }
        Self::from_amps([qubit.amps()[0], qubit.amps()[1]], ModeTag::MicInit)
    }

    fn from_amps(logical: [Complex64; 2], mode: ModeTag) -> Result<Self, ProtocolError> {
        let norm_sq = logical[0].norm_sqr() + logical[1].norm_sqr();
        if (norm_sq - 1.0).abs() > TOL {
            return Err(ProtocolError::NotNormalized(norm_sq));
        }
        Ok(Self { logical, mode })
    }

    pub fn logical(&self) -> [Complex64; 2] {
        self.logical
    }

    pub fn mode(&self) -> ModeTag {
        self.mode
    }

    /// Born weights of the two logical branches.
    pub fn branch_weights(&self) -> [f64; 2] {
        [self.logical[0].norm_sqr(), self.logical[1].norm_sqr()]
    }

    /// The definite path index when the register is classical (one branch
    /// carries all the weight within tolerance), else `None`.
    pub fn classical_path(&self) -> Option<Bit> {
        let w = self.branch_weights();
        if (w[0] - 1.0).abs() <= TOL {
            Some(0)
        } else if (w[1] - 1.0).abs() <= TOL {
            Some(1)
        } else {
            None
        }
    }

    fn expect_mode(
        &self,
        operation: &'static str,
        expected: &str,
        ok: bool,
    ) -> Result<(), ProtocolError> {
        if ok {
            Ok(())
        } else {
            Err(ProtocolError::OutOfOrder {
                operation,
                expected: expected.to_string(),
                found: self.mode.describe(),
            })
        }
    }

    /// Amplify the microscopic register onto the two position worldlines:
    /// |a⟩ ⊗ initial position ↦ path a at t3. Logical amplitudes unchanged.
    pub fn amplify(&self, schedule: &Schedule) -> Result<Self, ProtocolError> {
        self.expect_mode(
            "amplify",
            "microscopic ⊗ initial position",
            self.mode == ModeTag::MicInit,
        )?;
        Ok(Self {
            logical: self.logical,
            mode: ModeTag::Path(schedule.t3()),
        })
    }

    /// Free position evolution along both worldlines up to time `t`.
    pub fn evolve_to(&self, t: f64, schedule: &Schedule) -> Result<Self, ProtocolError> {
        match self.mode {
            ModeTag::Path(from) if from <= t && t <= schedule.t5() => Ok(Self {
                logical: self.logical,
                mode: ModeTag::Path(t),
            }),
            _ => Err(ProtocolError::OutOfOrder {
                operation: "evolve_to",
                expected: format!("path register at a time ≤ {t}, with t ≤ t5"),
                found: self.mode.describe(),
            }),
        }
    }

    /// Undo the amplification at t5: path a ↦ |a⟩ ⊗ final position.
    pub fn uncompute(&self, schedule: &Schedule) -> Result<Self, ProtocolError> {
        let at_t5 = matches!(self.mode, ModeTag::Path(t) if t == schedule.t5());
        self.expect_mode("uncompute", "path register at t5", at_t5)?;
        Ok(Self {
            logical: self.logical,
            mode: ModeTag::MicFin,
        })
    }

    /// Projective measurement in the path basis at t5. Returns the outcome
    /// and the collapsed register.
    pub fn measure_path(
        &self,
        schedule: &Schedule,
        rng: &mut impl Rng,
    ) -> Result<(Bit, Self), ProtocolError> {
        let at_t5 = matches!(self.mode, ModeTag::Path(t) if t == schedule.t5());
        self.expect_mode("measure_path", "path register at t5", at_t5)?;
        let b = sample_branch(self.branch_weights(), rng);
        Ok((b, Self::collapsed(b, ModeTag::Path(schedule.t5()))))
    }

    fn collapsed(branch: Bit, mode: ModeTag) -> Self {
        let mut logical = [Complex64::ZERO; 2];
        logical[branch as usize] = Complex64::ONE;
        Self { logical, mode }
    }
}

/// Classical spacetime geometry labels generated by the two worldlines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geometry {
    G0,
    G1,
}

impl Geometry {
    pub fn from_path(i: Bit) -> Self {
        if i == 0 {
            Geometry::G0
        } else {
            Geometry::G1
        }
    }

    /// The path index that generates this geometry.
    pub fn path(&self) -> Bit {
        match self {
            Geometry::G0 => 0,
            Geometry::G1 => 1,
        }
    }
}

/// The geometry generated by a classical (non-superposed) register, if any.
pub fn classical_geometry(reg: &BobRegister) -> Option<Geometry> {
    reg.classical_path().map(Geometry::from_path)
}

fn sample_branch(weights: [f64; 2], rng: &mut impl Rng) -> Bit {
    // Inversion sampling; a zero-weight branch can never fire.
    let total = weights[0] + weights[1];
    let draw = rng.random::<f64>() * total;
    if weights[0] > 0.0 && draw < weights[0] {
        0
    } else if weights[1] > 0.0 {
        1
    } else {
        0
    }
}

/// The geometry readout: decide the output bit s during the geometry window.
///
/// A classical register yields its geometry label with certainty and the
/// state is untouched under either hypothesis. A superposed register is
/// reduced to the sampled worldline at t4 under `BornReduce`; under
/// `NoChange` the state is returned unmodified and s is Born-sampled, the
/// marginal forced by causality when no later path measurement will occur
/// (the trial driver instead defers s to the path outcome when one will).
pub fn spacetime_measurement(
    reg: &BobRegister,
    hypothesis: SmHypothesis,
    schedule: &Schedule,
    rng: &mut impl Rng,
) -> Result<(Bit, BobRegister), ProtocolError> {
    let in_window =
        matches!(reg.mode(), ModeTag::Path(t) if schedule.t3() <= t && t <= schedule.t4());
    if !in_window {
        return Err(ProtocolError::OutOfOrder {
            operation: "spacetime_measurement",
            expected: "path register inside the geometry window [t3, t4]".to_string(),
            found: reg.mode().describe(),
        });
    }
    if let Some(geometry) = classical_geometry(reg) {
        return Ok((geometry.path(), *reg));
    }
    match hypothesis {
        SmHypothesis::BornReduce => {
            let s = sample_branch(reg.branch_weights(), rng);
            Ok((s, BobRegister::collapsed(s, ModeTag::Path(schedule.t4()))))
        }
        SmHypothesis::NoChange => {
            let s = sample_branch(reg.branch_weights(), rng);
            Ok((s, *reg))
        }
    }
}

/// The four free input bits of one trial, drawn before any outcome exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrialInputs {
    pub alpha: Bit,
    pub alpha_prime: Bit,
    pub beta: Bit,
    pub beta_prime: Bit,
}

impl TrialInputs {
    pub fn new(alpha: Bit, alpha_prime: Bit, beta: Bit, beta_prime: Bit) -> Self {
        debug_assert!(alpha <= 1 && alpha_prime <= 1 && beta <= 1 && beta_prime <= 1);
        Self {
            alpha,
            alpha_prime,
            beta,
            beta_prime,
        }
    }

    /// Flat index, α the least significant bit.
    pub fn index(&self) -> usize {
        self.alpha as usize
            | (self.alpha_prime as usize) << 1
            | (self.beta as usize) << 2
            | (self.beta_prime as usize) << 3
    }

    pub fn from_index(index: usize) -> Self {
        debug_assert!(index < 16);
        Self {
            alpha: (index & 1) as Bit,
            alpha_prime: ((index >> 1) & 1) as Bit,
            beta: ((index >> 2) & 1) as Bit,
            beta_prime: ((index >> 3) & 1) as Bit,
        }
    }

    pub fn all() -> impl Iterator<Item = TrialInputs> {
        (0..16).map(TrialInputs::from_index)
    }

    /// Four uniform free bits from the given stream.
    pub fn sample(rng: &mut impl Rng) -> Self {
        Self::new(
            rng.random_range(0..2) as Bit,
            rng.random_range(0..2) as Bit,
            rng.random_range(0..2) as Bit,
            rng.random_range(0..2) as Bit,
        )
    }
}

/// Flat outcome index, a the least significant bit.
pub fn outcome_index(a: Bit, b: Bit, s: Bit) -> usize {
    a as usize | (b as usize) << 1 | (s as usize) << 2
}

/// Completion times (seconds in the collapse frame) of the three outputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventTimes {
    /// Alice's outcome a is fixed once reduction completes, at t2.
    pub alice_outcome: f64,
    /// The geometry readout s is available at t4.
    pub geometry_outcome: f64,
    /// Bob's path-register outcome b is available at t6.
    pub path_outcome: f64,
}

/// One completed trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub inputs: TrialInputs,
    pub a: Bit,
    pub b: Bit,
    pub s: Bit,
    pub times: EventTimes,
}

/// Conditional joint distribution P(a, b, s | α, α′, β, β′).
///
/// Stored per input tuple; every conditional slice sums to one. Uniform
/// input priors are applied only when estimating from samples, never here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    p: [[f64; 8]; 16],
}

impl JointDistribution {
    pub fn zeros() -> Self {
        Self { p: [[0.0; 8]; 16] }
    }

    pub fn get(&self, a: Bit, b: Bit, s: Bit, inputs: TrialInputs) -> f64 {
        self.p[inputs.index()][outcome_index(a, b, s)]
    }

    pub fn add(&mut self, a: Bit, b: Bit, s: Bit, inputs: TrialInputs, value: f64) {
        self.p[inputs.index()][outcome_index(a, b, s)] += value;
    }

    pub fn conditional_slice(&self, inputs: TrialInputs) -> &[f64; 8] {
        &self.p[inputs.index()]
    }

    /// Entries non-negative and every conditional slice normalized within [`TOL`].
    pub fn validate(&self) -> Result<(), ProtocolError> {
        for inputs in TrialInputs::all() {
            let slice = self.conditional_slice(inputs);
            for &v in slice {
                if v < -TOL {
                    return Err(ProtocolError::NegativeProbability { inputs, value: v });
                }
            }
            let total: f64 = slice.iter().sum();
            if (total - 1.0).abs() > TOL {
                return Err(ProtocolError::NotConditionallyNormalized { inputs, total });
            }
        }
        Ok(())
    }

    /// Largest per-input total variation distance to `other`:
    /// max over input tuples of ½ Σ_outcomes |ΔP|.
    pub fn total_variation(&self, other: &JointDistribution) -> f64 {
        TrialInputs::all()
            .map(|inputs| {
                let a = self.conditional_slice(inputs);
                let b = other.conditional_slice(inputs);
                0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// Alice's measurement branches on the shared singlet for basis (α, α′):
/// for each outcome a, its Born probability and Bob's conditional qubit
/// state in the computational basis.
///
/// Derived mechanically: rotate Alice's side so her measurement basis is
/// computational, project onto her label subsets, read off Bob's factor.
pub fn alice_reduction(
    alpha: Bit,
    alpha_prime: Bit,
) -> Result<[(f64, StateVector); 2], ProtocolError> {
    let rotate_alice = alice_basis(alpha, alpha_prime)
        .to_computational()
        .tensor_with(&UnitaryOp::identity(vec!["0".into(), "1".into()]))?;
    let rotated = apply(&rotate_alice, &singlet())?;
    let amps = rotated.amps();
    let mut branches = Vec::with_capacity(2);
    for a in 0..2usize {
        let pair = [amps[2 * a], amps[2 * a + 1]];
        let prob = pair[0].norm_sqr() + pair[1].norm_sqr();
        let scale = prob.sqrt();
        let bob = StateVector::qubit(pair[0] / scale, pair[1] / scale)?;
        branches.push((prob, bob));
    }
    Ok([branches.remove(0), branches.remove(0)])
}

/// One of Alice's measurement branches: her outcome probability and Bob's
/// conditional qubit amplitudes.
type ReductionBranch = (f64, [Complex64; 2]);

/// A prepared experiment: validated budget, schedule, and the precomputed
/// per-input quantum data needed to run trials quickly.
#[derive(Debug, Clone)]
pub struct Experiment {
    schedule: Schedule,
    hypothesis: SmHypothesis,
    /// Indexed `branches[α][α′][a]`.
    branches: [[[ReductionBranch; 2]; 2]; 2],
    /// Bob's β = 1 unitary as a 2×2 matrix; β = 0 is the identity.
    twist: [[Complex64; 2]; 2],
}

impl Experiment {
    /// Validates the budget; an infeasible budget refuses to run trials.
    pub fn new(budget: &TimingBudget, hypothesis: SmHypothesis) -> Result<Self, ProtocolError> {
        let report = validate_budget(budget);
        if let Some(failure) = report.first_failure() {
            return Err(ProtocolError::InfeasibleBudget {
                constraint: failure.name.clone(),
                detail: failure.detail.clone(),
            });
        }
        let schedule = build_schedule(budget)?;

        let mut branches = [[[(0.0, [Complex64::ZERO; 2]); 2]; 2]; 2];
        for alpha in 0..2u8 {
            for alpha_prime in 0..2u8 {
                let reduction = alice_reduction(alpha, alpha_prime)?;
                for (a, (prob, bob)) in reduction.iter().enumerate() {
                    branches[alpha as usize][alpha_prime as usize][a] =
                        (*prob, [bob.amps()[0], bob.amps()[1]]);
                }
            }
        }
        let u = bob_qubit_unitary(1);
        let twist = [
            [u.entry(0, 0), u.entry(0, 1)],
            [u.entry(1, 0), u.entry(1, 1)],
        ];
        Ok(Self {
            schedule,
            hypothesis,
            branches,
            twist,
        })
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn hypothesis(&self) -> SmHypothesis {
        self.hypothesis
    }

    /// Run one trial for the given inputs, consuming randomness only from
    /// the supplied stream.
    pub fn run_trial(&self, inputs: TrialInputs, rng: &mut impl Rng) -> TrialRecord {
        let sched = &self.schedule;

        // Alice measures at t1; reduction is complete at t2.
        let (p0, _) = self.branches[inputs.alpha as usize][inputs.alpha_prime as usize][0];
        let a: Bit = if rng.random::<f64>() < p0 { 0 } else { 1 };
        let (_, bob_amps) =
            self.branches[inputs.alpha as usize][inputs.alpha_prime as usize][a as usize];

        // Bob's qubit unitary at t2, then amplification onto the worldlines.
        let logical = if inputs.beta == 0 {
            bob_amps
        } else {
            [
                self.twist[0][0] * bob_amps[0] + self.twist[0][1] * bob_amps[1],
                self.twist[1][0] * bob_amps[0] + self.twist[1][1] * bob_amps[1],
            ]
        };
        let reg = BobRegister {
            logical,
            mode: ModeTag::MicInit,
        };
        let reg = reg.amplify(sched).expect("fresh register amplifies");

        // Geometry readout inside [t3, t4]. When the state is left unchanged
        // and a path measurement is still to come, s defers to that outcome;
        // the deferred assignment is the only one that never contradicts it.
        let (s_early, reg) = match (self.hypothesis, inputs.beta_prime) {
            (SmHypothesis::NoChange, 0) => (None, reg),
            _ => {
                let (s, post) = spacetime_measurement(&reg, self.hypothesis, sched, rng)
                    .expect("register is inside the geometry window");
                (Some(s), post)
            }
        };

        let reg = reg
            .evolve_to(sched.t5(), sched)
            .expect("path register evolves to t5");

        let (b, s) = if inputs.beta_prime == 0 {
            let (b, _) = reg
                .measure_path(sched, rng)
                .expect("path register measured at t5");
            (b, s_early.unwrap_or(b))
        } else {
            let _ = reg
                .uncompute(sched)
                .expect("path register uncomputes at t5");
            (0, s_early.expect("s was produced at t4"))
        };

        TrialRecord {
            inputs,
            a,
            b,
            s,
            times: EventTimes {
                alice_outcome: sched.t2(),
                geometry_outcome: sched.t4(),
                path_outcome: sched.t6(),
            },
        }
    }

    /// Draw inputs uniformly and run `n` trials.
    pub fn sample_trials(&self, n: usize, rng: &mut impl Rng) -> Vec<TrialRecord> {
        (0..n)
            .map(|_| {
                let inputs = TrialInputs::sample(rng);
                self.run_trial(inputs, rng)
            })
            .collect()
    }
}

/// The exact conditional joint distribution, by enumerating every
/// measurement branch of the protocol under the given hypothesis. No
/// sampling is involved.
pub fn exact_distribution(hypothesis: SmHypothesis) -> JointDistribution {
    let mut dist = JointDistribution::zeros();
    for inputs in TrialInputs::all() {
        let reduction = alice_reduction(inputs.alpha, inputs.alpha_prime)
            .expect("fixed bases reduce the singlet");
        for (a, (p_a, bob)) in reduction.iter().enumerate() {
            let a = a as Bit;
            let evolved =
                apply(&bob_qubit_unitary(inputs.beta), bob).expect("labels match by construction");
            let weights = [evolved.amps()[0].norm_sqr(), evolved.amps()[1].norm_sqr()];
            match hypothesis {
                SmHypothesis::NoChange => {
                    if inputs.beta_prime == 0 {
                        // Undisturbed unitary evolution; the path measurement
                        // at t5 samples b and the geometry record copies it.
                        for b in 0..2u8 {
                            dist.add(a, b, b, inputs, p_a * weights[b as usize]);
                        }
                    } else {
                        // No path measurement ever happens: s carries the
                        // Born marginal of the undisturbed register, b is
                        // pinned to 0 after uncomputation.
                        for s in 0..2u8 {
                            dist.add(a, 0, s, inputs, p_a * weights[s as usize]);
                        }
                    }
                }
                SmHypothesis::BornReduce => {
                    // The readout collapses the register at t4.
                    for s in 0..2u8 {
                        let p_s = weights[s as usize];
                        let collapsed = [f64::from(s == 0), f64::from(s == 1)];
                        if inputs.beta_prime == 0 {
                            // Path measurement of the collapsed register.
                            for b in 0..2u8 {
                                dist.add(a, b, s, inputs, p_a * p_s * collapsed[b as usize]);
                            }
                        } else {
                            dist.add(a, 0, s, inputs, p_a * p_s);
                        }
                    }
                }
            }
        }
    }
    dist
}

/// Closed-form joint probability of (a, s): ½|⟨φᵃ_{αα′}|φ^s̄_{β0}⟩|².
pub fn pas_closed_form(a: Bit, s: Bit, alpha: Bit, alpha_prime: Bit, beta: Bit) -> f64 {
    let left = alice_basis(alpha, alpha_prime);
    let right = alice_basis(beta, 0);
    let overlap = inner(left.state(a), right.state(flip(s))).expect("qubit labels match");
    0.5 * overlap.norm_sqr()
}

/// The singlet expressed in the product basis (α, α′) on both sides; used to
/// exhibit its basis-independent antisymmetric form.
pub fn singlet_in_basis(
    alpha: Bit,
    alpha_prime: Bit,
) -> Result<[[Complex64; 2]; 2], ProtocolError> {
    let basis = alice_basis(alpha, alpha_prime);
    let psi = singlet();
    let mut coeffs = [[Complex64::ZERO; 2]; 2];
    for i in 0..2u8 {
        for j in 0..2u8 {
            let product = tensor(basis.state(i), basis.state(j))?;
            coeffs[i as usize][j as usize] = inner(&product, &psi)?;
        }
    }
    Ok(coeffs)
}
