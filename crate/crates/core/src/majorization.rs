//! The majorization order and the majorizing vectors built from a unitary.
//!
//! For a unitary `W` the number `zeta_k` is the largest spectral norm over
//! all `r x r'` submatrices with `r + r' = k + 1`. From the nondecreasing
//! sequence `zeta_1 <= ... <= zeta_d = 1` come two majorizing vectors:
//!
//! * direct-sum type, `omega = (zeta_1, zeta_2 - zeta_1, ...)`, with
//!   `p (+) q` majorized by `{1} (+) omega`;
//! * tensor-product type, `omega' = (xi_1, xi_2 - xi_1, ...)` with
//!   `xi_k = (1 + zeta_k)^2 / 4`, and `p (x) q` majorized by `omega'`.

use alloc::format;
use alloc::vec::Vec;

use crate::entropy::ProbVector;
use crate::linalg::{enumerate_submatrices, is_unitary, spectral_norm, ComplexMatrix, DEFAULT_UNITARY_TOL};
use crate::{Error, Result};

/// Default additive tolerance per partial sum.
pub const MAJORIZATION_TOL: f64 = 1e-9;

/// Consecutive differences down to this are clamped to zero.
const DIFFERENCE_SLACK: f64 = 1e-12;

/// Whether `b` is majorized by `a`: every partial sum of `a` sorted
/// descending dominates the matching partial sum of `b`, up to `tol`, and
/// the totals agree within `tol`. The shorter vector is zero-padded.
pub fn majorizes(a: &[f64], b: &[f64], tol: f64) -> bool {
    let n = a.len().max(b.len());
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.resize(n, 0.0);
        // Stable sort, descending.
        s.sort_by(|x, y| y.total_cmp(x));
        s
    };
    let (sa, sb) = (sorted(a), sorted(b));
    let (mut pa, mut pb) = (0.0, 0.0);
    for (x, y) in sa.iter().zip(&sb) {
        pa += x;
        pb += y;
        if pa < pb - tol {
            return false;
        }
    }
    (pa - pb).abs() <= tol
}

/// The sequence `zeta_1 <= ... <= zeta_d` of maximal submatrix spectral norms.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaSequence(Vec<f64>);

impl ZetaSequence {
    pub fn new(zetas: Vec<f64>) -> Result<Self> {
        let Some(&last) = zetas.last() else {
            return Err(Error::Invariant("zeta sequence is empty".into()));
        };
        if zetas.windows(2).any(|w| w[0] > w[1] + DIFFERENCE_SLACK) {
            return Err(Error::Invariant(format!("zeta sequence {zetas:?} is decreasing somewhere")));
        }
        if !(zetas[0] > 0.0 && zetas[0] <= 1.0 + DIFFERENCE_SLACK) {
            return Err(Error::Invariant(format!("zeta_1 = {} outside (0, 1]", zetas[0])));
        }
        if (last - 1.0).abs() > 1e-10 {
            return Err(Error::Invariant(format!("zeta_d = {last} differs from 1")));
        }
        Ok(Self(zetas))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaKind {
    DirectSum,
    TensorProduct,
}

/// A majorizing vector tagged with the relation it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaVector {
    omega: ProbVector,
    kind: OmegaKind,
}

impl OmegaVector {
    /// Wraps an arbitrary probability vector. Used to feed hand-made or
    /// deliberately wrong vectors through the bound machinery.
    pub fn from_parts(omega: ProbVector, kind: OmegaKind) -> Self {
        Self { omega, kind }
    }

    pub fn omega(&self) -> &ProbVector {
        &self.omega
    }

    pub fn kind(&self) -> OmegaKind {
        self.kind
    }

    pub fn as_slice(&self) -> &[f64] {
        self.omega.as_slice()
    }

    pub(crate) fn expect_kind(&self, kind: OmegaKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Argument(format!("expected a {kind:?} omega, got {:?}", self.kind)));
        }
        Ok(())
    }
}

/// `zeta_k` for `k = 1..=d` by exhaustive enumeration of submatrix classes.
/// Values are clamped to at most one.
pub fn zeta_sequence(w: &ComplexMatrix) -> Result<ZetaSequence> {
    if !is_unitary(w, DEFAULT_UNITARY_TOL)? {
        return Err(Error::Argument("zeta sequence needs a unitary matrix".into()));
    }
    let d = w.rows();
    let mut zetas = Vec::with_capacity(d);
    for k in 1..=d {
        let mut best = 0.0_f64;
        for index in enumerate_submatrices(d, k)? {
            best = best.max(spectral_norm(&w.submatrix(&index)?)?);
        }
        zetas.push(best.min(1.0));
    }
    // Running max guards against rounding-level dips between classes.
    for k in 1..d {
        if zetas[k] < zetas[k - 1] && zetas[k] > zetas[k - 1] - DIFFERENCE_SLACK {
            zetas[k] = zetas[k - 1];
        }
    }
    ZetaSequence::new(zetas)
}

fn differences(values: &[f64]) -> Result<ProbVector> {
    let mut out = Vec::with_capacity(values.len());
    let mut prev = 0.0;
    for &v in values {
        let diff = v - prev;
        if diff < -DIFFERENCE_SLACK {
            return Err(Error::Invariant(format!("sequence {values:?} decreases by {}", -diff)));
        }
        out.push(diff.max(0.0));
        prev = v;
    }
    ProbVector::new(out).map_err(|e| Error::Invariant(format!("consecutive differences: {e}")))
}

/// `omega = (zeta_1, zeta_2 - zeta_1, ..., zeta_d - zeta_{d-1})`.
pub fn omega_direct_sum(z: &ZetaSequence) -> Result<OmegaVector> {
    Ok(OmegaVector { omega: differences(&z.0)?, kind: OmegaKind::DirectSum })
}

/// `omega'` from `xi_k = (1 + zeta_k)^2 / 4`, with `xi_d = 1`.
pub fn omega_tensor_product(z: &ZetaSequence) -> Result<OmegaVector> {
    let mut xi: Vec<f64> = z.0.iter().map(|&s| 0.25 * (1.0 + s) * (1.0 + s)).collect();
    if let Some(last) = xi.last_mut() {
        *last = 1.0;
    }
    Ok(OmegaVector { omega: differences(&xi)?, kind: OmegaKind::TensorProduct })
}

/// Checks `p (+) q` against `{1} (+) omega`.
pub fn verify_direct_sum_relation(p: &ProbVector, q: &ProbVector, omega: &OmegaVector) -> Result<bool> {
    omega.expect_kind(OmegaKind::DirectSum)?;
    let d = omega.as_slice().len();
    if p.len() != d || q.len() != d {
        return Err(Error::Dimension(format!(
            "distributions of lengths {} and {} against omega of length {d}",
            p.len(),
            q.len()
        )));
    }
    let lhs: Vec<f64> = p.iter().chain(q.iter()).copied().collect();
    let rhs: Vec<f64> = core::iter::once(1.0).chain(omega.as_slice().iter().copied()).collect();
    Ok(majorizes(&rhs, &lhs, MAJORIZATION_TOL))
}

/// Checks `p (x) q` against `omega'` zero-padded to `d^2` entries.
pub fn verify_tensor_product_relation(p: &ProbVector, q: &ProbVector, omega_prime: &OmegaVector) -> Result<bool> {
    omega_prime.expect_kind(OmegaKind::TensorProduct)?;
    let d = omega_prime.as_slice().len();
    if p.len() != d || q.len() != d {
        return Err(Error::Dimension(format!(
            "distributions of lengths {} and {} against omega' of length {d}",
            p.len(),
            q.len()
        )));
    }
    let product: Vec<f64> = p.iter().flat_map(|&x| q.iter().map(move |&y| x * y)).collect();
    Ok(majorizes(omega_prime.as_slice(), &product, MAJORIZATION_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_complex::Complex64;

    fn fourier2() -> ComplexMatrix {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_real(2, 2, &[s, s, s, -s]).unwrap()
    }

    #[test]
    fn majorizes_basic_pairs() {
        assert!(majorizes(&[1.0, 0.0], &[0.5, 0.5], 1e-12));
        assert!(!majorizes(&[0.5, 0.5], &[1.0, 0.0], 1e-12));
        assert!(majorizes(&[0.2, 0.5, 0.3], &[1.0 / 3.0; 3], 1e-12));
        // zero padding
        assert!(majorizes(&[1.0], &[0.5, 0.5], 1e-12));
        // totals must agree
        assert!(!majorizes(&[1.0, 0.0], &[0.4, 0.4], 1e-12));
    }

    #[test]
    fn best_fit_omega_is_majorized_by_omega_prime() {
        let omega = [0.8213, 0.1674, 0.0113];
        let omega_prime = [0.8293, 0.1595, 0.0112];
        assert!(majorizes(&omega_prime, &omega, 1e-9));
        assert!(!majorizes(&omega, &omega_prime, 1e-9));
    }

    #[test]
    fn identity_zetas() {
        let z = zeta_sequence(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(z.as_slice(), &[1.0, 1.0, 1.0]);
        assert_eq!(omega_direct_sum(&z).unwrap().as_slice(), &[1.0, 0.0, 0.0]);
        assert_eq!(omega_tensor_product(&z).unwrap().as_slice(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn fourier_zetas_and_omegas() {
        let z = zeta_sequence(&fourier2()).unwrap();
        let s = core::f64::consts::FRAC_1_SQRT_2;
        assert!((z.as_slice()[0] - s).abs() < 1e-15);
        assert!((z.as_slice()[1] - 1.0).abs() < 1e-15);
        let xi1 = 0.25 * (1.0 + s) * (1.0 + s);
        let wp = omega_tensor_product(&z).unwrap();
        assert!((wp.as_slice()[0] - xi1).abs() < 1e-15);
        assert!((wp.as_slice()[0] - 0.7286).abs() < 1e-4);
        assert!((wp.as_slice()[1] - (1.0 - xi1)).abs() < 1e-15);
    }

    #[test]
    fn non_unitary_input_is_rejected() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(zeta_sequence(&m), Err(Error::Argument(_))));
    }

    #[test]
    fn decreasing_zetas_are_rejected() {
        assert!(matches!(ZetaSequence::new(vec![0.9, 0.8, 1.0]), Err(Error::Invariant(_))));
        assert!(ZetaSequence::new(vec![0.5, 0.9]).is_err());
        assert!(ZetaSequence::new(vec![]).is_err());
    }

    #[test]
    fn relations_on_identity_point_masses() {
        let z = zeta_sequence(&ComplexMatrix::identity(3)).unwrap();
        let omega = omega_direct_sum(&z).unwrap();
        let omega_prime = omega_tensor_product(&z).unwrap();
        let p = ProbVector::point_mass(3, 1);
        assert!(verify_direct_sum_relation(&p, &p, &omega).unwrap());
        assert!(verify_tensor_product_relation(&p, &p, &omega_prime).unwrap());
    }

    #[test]
    fn relation_kind_and_length_checks() {
        let z = zeta_sequence(&ComplexMatrix::identity(3)).unwrap();
        let omega = omega_direct_sum(&z).unwrap();
        let p = ProbVector::uniform(3);
        assert!(matches!(verify_tensor_product_relation(&p, &p, &omega), Err(Error::Argument(_))));
        let short = ProbVector::uniform(2);
        assert!(matches!(verify_direct_sum_relation(&short, &p, &omega), Err(Error::Dimension(_))));
    }

    #[test]
    fn uniform_pair_against_best_fit_omega() {
        // Partial sums of {1} (+) omega: 1, 1.8213, 1.9887, 2; of the uniform
        // pair: 1/3, 2/3, ..., 2. The former dominate.
        let omega =
            OmegaVector::from_parts(ProbVector::new(vec![0.8213, 0.1674, 0.0113]).unwrap(), OmegaKind::DirectSum);
        let u = ProbVector::uniform(3);
        assert!(verify_direct_sum_relation(&u, &u, &omega).unwrap());
    }

    #[test]
    fn zeta_one_is_largest_modulus() {
        let w = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.6, 0.0),
                Complex64::new(0.0, 0.8),
                Complex64::new(0.0, 0.8),
                Complex64::new(0.6, 0.0),
            ],
        )
        .unwrap();
        let z = zeta_sequence(&w).unwrap();
        assert!((z.as_slice()[0] - 0.8).abs() < 1e-15);
    }
}
