//! Dense complex linear algebra over small labeled Hilbert spaces.
//!
//! States are amplitude vectors over an ordered list of opaque basis labels,
//! operators are dense square matrices over the same labels, and measurement
//! is projective onto label subsets with Born-rule sampling from an explicit
//! RNG stream. Dimensions in this crate stay at or below 16, so everything
//! is dense and allocation-light; no sparsity, no density matrices.

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

/// Complex amplitude. Stored amplitudes are always finite.
pub type Amplitude = Complex64;

/// Global numerical tolerance for normalization, unitarity and
/// orthogonality checks. Exactness claims are tested at this tolerance.
pub const TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum HilbertError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("basis label mismatch at position {position}: `{left}` vs `{right}`")]
    LabelMismatch {
        position: usize,
        left: String,
        right: String,
    },
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("non-finite amplitude at label `{0}`")]
    NonFiniteAmplitude(String),
    #[error("state norm² = {0} deviates from 1 beyond tolerance")]
    NotNormalized(f64),
    #[error("matrix deviates from unitarity by {0}")]
    NotUnitary(f64),
    #[error("basis states are not orthogonal: |⟨φ⁰|φ¹⟩| = {0}")]
    NotOrthogonal(f64),
    #[error("projectors do not partition the basis: {0}")]
    BadPartition(String),
    #[error("cannot measure a state with zero total weight")]
    ZeroWeight,
}

fn check_labels_unique(labels: &[String]) -> Result<(), HilbertError> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(HilbertError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn check_same_labels(a: &[String], b: &[String]) -> Result<(), HilbertError> {
    if a.len() != b.len() {
        return Err(HilbertError::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        if x != y {
            return Err(HilbertError::LabelMismatch {
                position: i,
                left: x.clone(),
                right: y.clone(),
            });
        }
    }
    Ok(())
}

/// Normalized state vector over a labeled orthonormal basis.
///
/// Invariants enforced at construction: labels unique, amplitudes finite,
/// Σ|amp|² = 1 within [`TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    labels: Vec<String>,
    amps: Vec<Amplitude>,
}

impl StateVector {
    pub fn new(labels: Vec<String>, amps: Vec<Amplitude>) -> Result<Self, HilbertError> {
        if labels.len() != amps.len() {
            return Err(HilbertError::DimensionMismatch {
                left: labels.len(),
                right: amps.len(),
            });
        }
        check_labels_unique(&labels)?;
        for (l, a) in labels.iter().zip(&amps) {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(HilbertError::NonFiniteAmplitude(l.clone()));
            }
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > TOL {
            return Err(HilbertError::NotNormalized(norm_sq));
        }
        Ok(Self { labels, amps })
    }

    /// Basis ket with amplitude 1 on `labels[index]`.
    pub fn basis_state(labels: Vec<String>, index: usize) -> Result<Self, HilbertError> {
        let mut amps = vec![Complex64::ZERO; labels.len()];
        amps[index] = Complex64::ONE;
        Self::new(labels, amps)
    }

    /// Single-qubit state c0|0⟩ + c1|1⟩ over labels {"0", "1"}.
    pub fn qubit(c0: Amplitude, c1: Amplitude) -> Result<Self, HilbertError> {
        Self::new(vec!["0".into(), "1".into()], vec![c0, c1])
    }

    /// Computational basis ket |0⟩ or |1⟩.
    pub fn ket(bit: u8) -> Self {
        Self::basis_state(vec!["0".into(), "1".into()], bit as usize)
            .expect("basis ket is always valid")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn amps(&self) -> &[Amplitude] {
        &self.amps
    }

    /// Amplitude on a given label, if present.
    pub fn amp(&self, label: &str) -> Option<Amplitude> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.amps[i])
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Tensor product u ⊗ v with pair labels `"<u>,<v>"`.
pub fn tensor(u: &StateVector, v: &StateVector) -> Result<StateVector, HilbertError> {
    let mut labels = Vec::with_capacity(u.dim() * v.dim());
    let mut amps = Vec::with_capacity(u.dim() * v.dim());
    for (lu, au) in u.labels.iter().zip(&u.amps) {
        for (lv, av) in v.labels.iter().zip(&v.amps) {
            labels.push(format!("{lu},{lv}"));
            amps.push(au * av);
        }
    }
    check_labels_unique(&labels)?;
    StateVector::new(labels, amps)
}

/// Inner product ⟨u|v⟩ (conjugation on `u`).
pub fn inner(u: &StateVector, v: &StateVector) -> Result<Amplitude, HilbertError> {
    check_same_labels(&u.labels, &v.labels)?;
    Ok(u.amps.iter().zip(&v.amps).map(|(a, b)| a.conj() * b).sum())
}

/// Unitary operator over a labeled basis, stored row-major.
///
/// U†U = 1 within [`TOL`] is checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOp {
    labels: Vec<String>,
    dim: usize,
    mat: Vec<Amplitude>,
}

impl UnitaryOp {
    pub fn new(labels: Vec<String>, rows: Vec<Vec<Amplitude>>) -> Result<Self, HilbertError> {
        let dim = labels.len();
        check_labels_unique(&labels)?;
        if rows.len() != dim {
            return Err(HilbertError::DimensionMismatch {
                left: rows.len(),
                right: dim,
            });
        }
        let mut mat = Vec::with_capacity(dim * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(HilbertError::DimensionMismatch {
                    left: row.len(),
                    right: dim,
                });
            }
            for a in row {
                if !a.re.is_finite() || !a.im.is_finite() {
                    return Err(HilbertError::NonFiniteAmplitude("<matrix>".into()));
                }
                mat.push(*a);
            }
        }
        // max |(U†U − 1)_{ij}|
        let mut max_dev = 0.0_f64;
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Complex64::ZERO;
                for k in 0..dim {
                    acc += mat[k * dim + i].conj() * mat[k * dim + j];
                }
                let expect = if i == j {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                max_dev = max_dev.max((acc - expect).norm());
            }
        }
        if max_dev > TOL {
            return Err(HilbertError::NotUnitary(max_dev));
        }
        Ok(Self { labels, dim, mat })
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let dim = labels.len();
        let mut mat = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            mat[i * dim + i] = Complex64::ONE;
        }
        Self { labels, dim, mat }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entry(&self, row: usize, col: usize) -> Amplitude {
        self.mat[row * self.dim + col]
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut mat = vec![Complex64::ZERO; self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                mat[j * self.dim + i] = self.mat[i * self.dim + j].conj();
            }
        }
        Self {
            labels: self.labels.clone(),
            dim: self.dim,
            mat,
        }
    }

    /// Kronecker product self ⊗ other over pair labels.
    pub fn tensor_with(&self, other: &UnitaryOp) -> Result<UnitaryOp, HilbertError> {
        let dim = self.dim * other.dim;
        let mut labels = Vec::with_capacity(dim);
        for lu in &self.labels {
            for lv in &other.labels {
                labels.push(format!("{lu},{lv}"));
            }
        }
        check_labels_unique(&labels)?;
        let mut mat = vec![Complex64::ZERO; dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        mat[(i * other.dim + k) * dim + (j * other.dim + l)] =
                            self.entry(i, j) * other.entry(k, l);
                    }
                }
            }
        }
        Ok(UnitaryOp { labels, dim, mat })
    }
}

/// Apply `u` to `psi`; label lists must match exactly.
pub fn apply(u: &UnitaryOp, psi: &StateVector) -> Result<StateVector, HilbertError> {
    check_same_labels(&u.labels, &psi.labels)?;
    let dim = u.dim;
    let mut amps = vec![Complex64::ZERO; dim];
    for (i, out) in amps.iter_mut().enumerate() {
        for j in 0..dim {
            *out += u.mat[i * dim + j] * psi.amps[j];
        }
    }
    Ok(StateVector {
        labels: psi.labels.clone(),
        amps,
    })
}

/// Outcome of a projective measurement.
#[derive(Debug, Clone)]
pub struct Measurement {
    /// Index of the projector that fired.
    pub outcome: usize,
    /// Renormalized restriction of the state to the fired subspace.
    pub post: StateVector,
    /// Born probability of the fired outcome.
    pub probability: f64,
}

/// Projective measurement onto orthogonal subspaces given as label sets.
///
/// The label sets must partition the basis of `psi`. Outcome `k` fires with
/// probability Σ_{label ∈ k} |amp|²; a zero-probability branch can never be
/// selected by the inversion sampler.
pub fn measure(
    psi: &StateVector,
    projectors: &[Vec<String>],
    rng: &mut impl Rng,
) -> Result<Measurement, HilbertError> {
    // Partition check: every basis label covered exactly once.
    let mut seen = vec![false; psi.dim()];
    for set in projectors {
        for label in set {
            let Some(i) = psi.labels.iter().position(|l| l == label) else {
                return Err(HilbertError::BadPartition(format!(
                    "label `{label}` is not in the basis"
                )));
            };
            if seen[i] {
                return Err(HilbertError::BadPartition(format!(
                    "label `{label}` appears in more than one projector"
                )));
            }
            seen[i] = true;
        }
    }
    if let Some(i) = seen.iter().position(|covered| !covered) {
        return Err(HilbertError::BadPartition(format!(
            "label `{}` is not covered by any projector",
            psi.labels[i]
        )));
    }

    let probs: Vec<f64> = projectors
        .iter()
        .map(|set| {
            set.iter()
                .map(|label| psi.amp(label).unwrap().norm_sqr())
                .sum()
        })
        .collect();
    let total: f64 = probs.iter().sum();
    if total <= 0.0 {
        return Err(HilbertError::ZeroWeight);
    }

    let draw = rng.random::<f64>() * total;
    let mut outcome = None;
    let mut cumulative = 0.0;
    for (k, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        cumulative += p;
        outcome = Some(k);
        if draw < cumulative {
            break;
        }
    }
    let outcome = outcome.expect("total weight is positive");
    let probability = probs[outcome];

    let scale = 1.0 / probability.sqrt();
    let mut amps = vec![Complex64::ZERO; psi.dim()];
    for label in &projectors[outcome] {
        let i = psi.labels.iter().position(|l| l == label).unwrap();
        amps[i] = psi.amps[i] * scale;
    }
    Ok(Measurement {
        outcome,
        post: StateVector {
            labels: psi.labels.clone(),
            amps,
        },
        probability,
    })
}

/// A pair of orthonormal single-qubit states {|φ⁰⟩, |φ¹⟩} over labels {"0", "1"}.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitBasis {
    states: [StateVector; 2],
}

impl QubitBasis {
    pub fn new(phi0: StateVector, phi1: StateVector) -> Result<Self, HilbertError> {
        for phi in [&phi0, &phi1] {
            if phi.dim() != 2 {
                return Err(HilbertError::DimensionMismatch {
                    left: phi.dim(),
                    right: 2,
                });
            }
        }
        let overlap = inner(&phi0, &phi1)?.norm();
        if overlap > TOL {
            return Err(HilbertError::NotOrthogonal(overlap));
        }
        Ok(Self {
            states: [phi0, phi1],
        })
    }

    pub fn state(&self, a: u8) -> &StateVector {
        &self.states[a as usize]
    }

    /// Basis-change unitary mapping |φᵃ⟩ ↦ |a⟩ (row `a` is the conjugated
    /// amplitude vector of |φᵃ⟩).
    pub fn to_computational(&self) -> UnitaryOp {
        let rows: Vec<Vec<Amplitude>> = self
            .states
            .iter()
            .map(|phi| phi.amps().iter().map(|a| a.conj()).collect())
            .collect();
        UnitaryOp::new(vec!["0".into(), "1".into()], rows)
            .expect("change of orthonormal basis is unitary")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tensor_of_basis_kets() {
        let t = tensor(&StateVector::ket(0), &StateVector::ket(1)).unwrap();
        assert_eq!(t.labels(), ["0,0", "0,1", "1,0", "1,1"]);
        assert_eq!(t.amp("0,1").unwrap(), Complex64::ONE);
        assert_eq!(t.amp("0,0").unwrap(), Complex64::ZERO);
    }

    #[test]
    fn tensor_distributes_over_superposition() {
        let plus = StateVector::qubit(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).unwrap();
        let t = tensor(&plus, &StateVector::ket(0)).unwrap();
        let expected = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0];
        for (a, e) in t.amps().iter().zip(expected) {
            assert!((a - c(e, 0.0)).norm() < TOL);
        }
    }

    #[test]
    fn tensor_rejects_label_collision() {
        // "0,0"⊗"1" and "0"⊗"0,1" both produce the label "0,0,1".
        let u = StateVector::new(
            vec!["0,0".into(), "x".into()],
            vec![Complex64::ONE, Complex64::ZERO],
        )
        .unwrap();
        let v = StateVector::new(
            vec!["1".into(), "0,1".into()],
            vec![Complex64::ONE, Complex64::ZERO],
        )
        .unwrap();
        let w = StateVector::new(
            vec!["0".into(), "0,0".into()],
            vec![Complex64::ONE, Complex64::ZERO],
        )
        .unwrap();
        assert!(tensor(&u, &v).is_ok());
        let err = tensor(&w, &v).unwrap_err();
        assert!(matches!(err, HilbertError::DuplicateLabel(_)));
    }

    #[test]
    fn identity_fixes_state() {
        let psi = StateVector::qubit(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let id = UnitaryOp::identity(vec!["0".into(), "1".into()]);
        let out = apply(&id, &psi).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn bit_flip_maps_zero_to_one() {
        let x = UnitaryOp::new(
            vec!["0".into(), "1".into()],
            vec![
                vec![Complex64::ZERO, Complex64::ONE],
                vec![Complex64::ONE, Complex64::ZERO],
            ],
        )
        .unwrap();
        let out = apply(&x, &StateVector::ket(0)).unwrap();
        assert!((out.amp("1").unwrap() - Complex64::ONE).norm() < TOL);
    }

    #[test]
    fn apply_rejects_dimension_mismatch() {
        let id = UnitaryOp::identity(vec!["0".into(), "1".into(), "2".into()]);
        let psi = StateVector::ket(0);
        assert!(apply(&id, &psi).is_err());
    }

    #[test]
    fn non_unitary_matrix_rejected() {
        let err = UnitaryOp::new(
            vec!["0".into(), "1".into()],
            vec![
                vec![Complex64::ONE, Complex64::ONE],
                vec![Complex64::ZERO, Complex64::ONE],
            ],
        )
        .unwrap_err();
        assert!(matches!(err, HilbertError::NotUnitary(_)));
    }

    #[test]
    fn inner_of_basis_kets() {
        let zero = StateVector::ket(0);
        assert!((inner(&zero, &zero).unwrap() - Complex64::ONE).norm() < TOL);
        let one = StateVector::ket(1);
        assert!(inner(&zero, &one).unwrap().norm() < TOL);
    }

    #[test]
    fn inner_conjugates_left_argument() {
        let u = StateVector::qubit(c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)).unwrap();
        let v = StateVector::ket(1);
        let ip = inner(&u, &v).unwrap();
        assert!((ip - c(0.0, -FRAC_1_SQRT_2)).norm() < TOL);
    }

    #[test]
    fn measure_deterministic_branch() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = measure(
            &StateVector::ket(0),
            &[vec!["0".into()], vec!["1".into()]],
            &mut rng,
        )
        .unwrap();
        assert_eq!(m.outcome, 0);
        assert!((m.probability - 1.0).abs() < TOL);
        assert_eq!(m.post, StateVector::ket(0));
    }

    #[test]
    fn measure_rejects_bad_partitions() {
        let psi = StateVector::ket(0);
        let missing = measure(&psi, &[vec!["0".into()]], &mut ChaCha8Rng::seed_from_u64(0));
        assert!(matches!(missing, Err(HilbertError::BadPartition(_))));
        let doubled = measure(
            &psi,
            &[vec!["0".into(), "1".into()], vec!["1".into()]],
            &mut ChaCha8Rng::seed_from_u64(0),
        );
        assert!(matches!(doubled, Err(HilbertError::BadPartition(_))));
    }

    #[test]
    fn measure_frequencies_match_born_rule() {
        // |+⟩ in the computational partition: each outcome has p = 1/2.
        let plus = StateVector::qubit(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).unwrap();
        let projs = [vec!["0".to_string()], vec!["1".to_string()]];
        let mut rng = ChaCha8Rng::seed_from_u64(0xB0A);
        let n = 100_000u32;
        let mut zeros = 0u32;
        for _ in 0..n {
            let m = measure(&plus, &projs, &mut rng).unwrap();
            assert!((m.probability - 0.5).abs() < TOL);
            if m.outcome == 0 {
                zeros += 1;
            }
        }
        let freq = f64::from(zeros) / f64::from(n);
        let envelope = 4.0 * (0.5 * 0.5 / f64::from(n)).sqrt();
        assert!(
            (freq - 0.5).abs() <= envelope,
            "freq {freq} outside Born envelope {envelope}"
        );
    }

    #[test]
    fn measurement_post_state_is_renormalized_restriction() {
        let psi = StateVector::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![c(0.6, 0.0), c(0.0, 0.6), c(0.529150262212918, 0.0)],
        )
        .unwrap();
        let projs = [
            vec!["a".to_string(), "b".to_string()],
            vec!["c".to_string()],
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..64 {
            let m = measure(&psi, &projs, &mut rng).unwrap();
            assert!((m.post.norm() - 1.0).abs() < 1e-9);
            if m.outcome == 0 {
                assert!((m.probability - 0.72).abs() < TOL);
                assert!(m.post.amp("c").unwrap().norm() < TOL);
            } else {
                assert!((m.probability - 0.28).abs() < TOL);
            }
        }
    }

    #[test]
    fn qubit_basis_requires_orthogonality() {
        let phi0 = StateVector::ket(0);
        let tilted = StateVector::qubit(c(0.9, 0.0), c(0.435889894354067, 0.0)).unwrap();
        assert!(matches!(
            QubitBasis::new(phi0, tilted),
            Err(HilbertError::NotOrthogonal(_))
        ));
    }

    #[test]
    fn basis_change_sends_basis_states_to_kets() {
        let phi0 = StateVector::qubit(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let phi1 = StateVector::qubit(c(-0.8, 0.0), c(0.6, 0.0)).unwrap();
        let basis = QubitBasis::new(phi0.clone(), phi1).unwrap();
        let u = basis.to_computational();
        let out = apply(&u, &phi0).unwrap();
        assert!((out.amp("0").unwrap() - Complex64::ONE).norm() < TOL);
        assert!(out.amp("1").unwrap().norm() < TOL);
    }

    // ---- property tests ------------------------------------------------

    /// Strategy: a normalized random state of dimension `dim` with labels l0..l{dim-1}.
    fn arb_state(dim: usize, prefix: &'static str) -> impl Strategy<Value = StateVector> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter_map(
            "norm too small",
            move |parts| {
                let norm_sq: f64 = parts.iter().map(|(re, im)| re * re + im * im).sum();
                if norm_sq < 1e-6 {
                    return None;
                }
                let scale = norm_sq.sqrt();
                let labels = (0..dim).map(|i| format!("{prefix}{i}")).collect();
                let amps = parts
                    .iter()
                    .map(|(re, im)| c(re / scale, im / scale))
                    .collect();
                StateVector::new(labels, amps).ok()
            },
        )
    }

    /// Random unitary built by Gram-Schmidt on a random complex matrix.
    fn arb_unitary(dim: usize) -> impl Strategy<Value = UnitaryOp> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_filter_map(
            "degenerate matrix",
            move |parts| {
                let mut cols: Vec<Vec<Complex64>> = (0..dim)
                    .map(|j| {
                        (0..dim)
                            .map(|i| c(parts[i * dim + j].0, parts[i * dim + j].1))
                            .collect()
                    })
                    .collect();
                for j in 0..dim {
                    let (head, tail) = cols.split_at_mut(j);
                    let col_j = &mut tail[0];
                    for col_k in head.iter() {
                        let proj: Complex64 = col_k
                            .iter()
                            .zip(col_j.iter())
                            .map(|(a, b)| a.conj() * b)
                            .sum();
                        for (target, source) in col_j.iter_mut().zip(col_k) {
                            *target -= proj * source;
                        }
                    }
                    let norm: f64 = cols[j].iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                    if norm < 1e-3 {
                        return None;
                    }
                    for a in &mut cols[j] {
                        *a /= norm;
                    }
                }
                let labels = (0..dim).map(|i| format!("l{i}")).collect();
                let rows = (0..dim)
                    .map(|i| (0..dim).map(|j| cols[j][i]).collect())
                    .collect();
                UnitaryOp::new(labels, rows).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn tensor_preserves_norm(u in arb_state(3, "u"), v in arb_state(4, "v")) {
            let t = tensor(&u, &v).unwrap();
            prop_assert!((t.norm() - 1.0).abs() < TOL);
        }

        #[test]
        fn apply_preserves_norm(u in arb_unitary(4), psi in arb_state(4, "l")) {
            let out = apply(&u, &psi).unwrap();
            prop_assert!((out.norm() - 1.0).abs() < TOL);
        }

        #[test]
        fn apply_then_inverse_is_identity(u in arb_unitary(3), psi in arb_state(3, "l")) {
            let roundtrip = apply(&u, &apply(&u.dagger(), &psi).unwrap()).unwrap();
            for (a, b) in roundtrip.amps().iter().zip(psi.amps()) {
                prop_assert!((a - b).norm() < 1e-10);
            }
        }
    }
}
