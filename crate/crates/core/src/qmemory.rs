//! Uncertainty relations with quantum memory.
//!
//! A bipartite operator on `A (x) B` is stored A-major: the row index is
//! `a * dim_b + b`. The measured system is `A`; `B` is the memory.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::bounds::{check_density_matrix, coles_piani, maassen_uffink};
use crate::entropy::ZERO_CUTOFF;
use crate::linalg::{eig_hermitian, partial_trace, tensor_product, ComplexMatrix, Subsystem, DEFAULT_UNITARY_TOL};
use crate::{Error, Result};

/// Default memory dimension: the charged-lepton side of a neutrino pair.
pub const DEFAULT_DIM_B: usize = 3;

/// Slack for the inequalities checked by [`verify_memory_relation`].
pub const MEMORY_TOL: f64 = 1e-9;

/// A validated density matrix on `A (x) B`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    rho: ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl BipartiteState {
    pub fn new(rho: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || rho.rows() != dim_a * dim_b {
            return Err(Error::Dimension(format!(
                "{}x{} matrix is not an operator on a {dim_a}x{dim_b} system",
                rho.rows(),
                rho.cols()
            )));
        }
        check_density_matrix(&rho)?;
        Ok(Self { rho, dim_a, dim_b })
    }

    /// `rho_a (x) rho_b`.
    pub fn product(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<Self> {
        Self::new(tensor_product(rho_a, rho_b), rho_a.rows(), rho_b.rows())
    }

    /// `|psi><psi|` for a normalized vector in A-major order.
    pub fn pure(psi: &[Complex64], dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi), dim_a, dim_b)
    }

    /// `(1/sqrt d) sum_i |i>|i>`.
    pub fn maximally_entangled(d: usize) -> Self {
        let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        let mut psi = alloc::vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            psi[i * d + i] = amp;
        }
        Self::pure(&psi, d, d).expect("normalized vector")
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        partial_trace(&self.rho, self.dims(), keep).expect("validated state")
    }
}

/// `-Tr(rho ln rho)`, from the eigenvalues with rounding-level negatives
/// set to zero.
pub fn von_neumann(rho: &ComplexMatrix) -> Result<f64> {
    check_density_matrix(rho)?;
    Ok(spectrum_entropy(&eig_hermitian(rho)?))
}

fn spectrum_entropy(eigenvalues: &[f64]) -> f64 {
    -eigenvalues.iter().map(|&l| l.max(0.0)).filter(|&l| l >= ZERO_CUTOFF).map(|l| l * l.ln()).sum::<f64>()
}

/// `(Phi_X (x) id)(rho_AB) = sum_i (|x_i><x_i| (x) I) rho_AB (|x_i><x_i| (x) I)`,
/// with the `x_i` the columns of `basis`.
pub fn dephase(state: &BipartiteState, basis: &ComplexMatrix) -> Result<BipartiteState> {
    let (da, db) = state.dims();
    if basis.rows() != da || basis.cols() != da {
        return Err(Error::Dimension(format!("{}x{} basis for a {da}-dimensional system", basis.rows(), basis.cols())));
    }
    let defect = basis.gram().max_abs_diff(&ComplexMatrix::identity(da))?;
    if defect > DEFAULT_UNITARY_TOL {
        return Err(Error::Argument(format!("basis is not orthonormal (defect {defect:e})")));
    }
    // In the product basis |x_i>|b>, dephasing keeps the diagonal blocks.
    let change = tensor_product(basis, &ComplexMatrix::identity(db));
    let rotated = change.adjoint().matmul(state.rho())?.matmul(&change)?;
    let mut blocks = ComplexMatrix::zeros(da * db, da * db);
    for i in 0..da {
        for r in 0..db {
            for c in 0..db {
                blocks[(i * db + r, i * db + c)] = rotated[(i * db + r, i * db + c)];
            }
        }
    }
    let out = change.matmul(&blocks)?.matmul(&change.adjoint())?;
    BipartiteState::new(hermitize(out), da, db)
}

fn hermitize(m: ComplexMatrix) -> ComplexMatrix {
    let adj = m.adjoint();
    m.add(&adj).expect("same shape").scale(Complex64::new(0.5, 0.0))
}

/// `S(A|B) = S(rho_AB) - S(rho_B)`; negative for some entangled states.
pub fn conditional_entropy(state: &BipartiteState) -> Result<f64> {
    let joint = spectrum_entropy(&eig_hermitian(state.rho())?);
    let memory = spectrum_entropy(&eig_hermitian(&state.reduced(Subsystem::B))?);
    Ok(joint - memory)
}

/// `-2 ln eta1 + (1 - eta1) ln(eta1/eta2) + S(A|B)`.
pub fn memory_bound_cp(eta1: f64, eta2: f64, cond_ab: f64) -> Result<f64> {
    Ok(coles_piani(eta1, eta2)? + cond_ab)
}

/// `-2 ln eta1 + S(A|B)`.
pub fn memory_bound_bccrr(eta1: f64, cond_ab: f64) -> Result<f64> {
    Ok(maassen_uffink(eta1)? + cond_ab)
}

/// The quantities entering the memory-assisted relation for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryRelation {
    /// `S(X|B)` after dephasing `A` in the reference basis.
    pub s_x_given_b: f64,
    /// `S(Z|B)` after dephasing `A` in the basis given by the columns of `W`.
    pub s_z_given_b: f64,
    pub cond_ab: f64,
    pub cp_rhs: f64,
    pub bccrr_rhs: f64,
}

impl MemoryRelation {
    pub fn lhs(&self) -> f64 {
        self.s_x_given_b + self.s_z_given_b
    }
}

/// Evaluates both memory-assisted bounds for `state` and the bases related
/// by `w`, and checks `S(X|B) + S(Z|B) >= CP >= BCCRR` and the
/// non-negativity of both conditional entropies.
pub fn verify_memory_relation(state: &BipartiteState, w: &ComplexMatrix) -> Result<MemoryRelation> {
    let (da, _) = state.dims();
    if w.rows() != da || w.cols() != da {
        return Err(Error::Dimension(format!("{}x{} unitary for a {da}-dimensional system", w.rows(), w.cols())));
    }
    let (eta1, eta2) = crate::bounds::eta_pair(w);
    let cond_ab = conditional_entropy(state)?;
    let s_x_given_b = conditional_entropy(&dephase(state, &ComplexMatrix::identity(da))?)?;
    let s_z_given_b = conditional_entropy(&dephase(state, w)?)?;
    let relation = MemoryRelation {
        s_x_given_b,
        s_z_given_b,
        cond_ab,
        cp_rhs: memory_bound_cp(eta1, eta2, cond_ab)?,
        bccrr_rhs: memory_bound_bccrr(eta1, cond_ab)?,
    };
    let mut failures: Vec<String> = Vec::new();
    if s_x_given_b < -MEMORY_TOL || s_z_given_b < -MEMORY_TOL {
        failures.push(format!("negative classical-quantum entropy: S(X|B) = {s_x_given_b}, S(Z|B) = {s_z_given_b}"));
    }
    if relation.lhs() < relation.cp_rhs - MEMORY_TOL {
        failures.push(format!("S(X|B) + S(Z|B) = {} below the Coles–Piani bound {}", relation.lhs(), relation.cp_rhs));
    }
    if relation.cp_rhs < relation.bccrr_rhs - MEMORY_TOL {
        failures.push(format!("Coles–Piani bound {} below the BCCRR bound {}", relation.cp_rhs, relation.bccrr_rhs));
    }
    if failures.is_empty() {
        Ok(relation)
    } else {
        Err(Error::PropertyViolation(format!("{}; state = {:?}", failures.join("; "), state.rho().entries())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    const LN3: f64 = 1.098_612_288_668_109_8;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn fourier3() -> ComplexMatrix {
        let s = 1.0 / 3.0_f64.sqrt();
        let tau = 2.0 * core::f64::consts::PI / 3.0;
        let entries = (0..9).map(|n| Complex64::from_polar(s, tau * ((n / 3) * (n % 3)) as f64)).collect();
        ComplexMatrix::new(3, 3, entries).unwrap()
    }

    #[test]
    fn von_neumann_examples() {
        let pure = ComplexMatrix::outer(&[c(0.6), Complex64::new(0.0, 0.8)]);
        assert!(von_neumann(&pure).unwrap().abs() < 1e-12);
        let mixed = ComplexMatrix::diagonal_real(&[1.0 / 3.0; 3]);
        assert!((von_neumann(&mixed).unwrap() - LN3).abs() < 1e-12);
        assert!(von_neumann(&ComplexMatrix::diagonal_real(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn entangled_pair_entropies() {
        let s = BipartiteState::maximally_entangled(3);
        assert!(von_neumann(s.rho()).unwrap().abs() < 1e-10);
        assert!((von_neumann(&s.reduced(Subsystem::A)).unwrap() - LN3).abs() < 1e-10);
        assert!((conditional_entropy(&s).unwrap() + LN3).abs() < 1e-10);
    }

    #[test]
    fn classical_correlations_have_zero_conditional_entropy() {
        let mut rho = ComplexMatrix::zeros(9, 9);
        for i in 0..3 {
            rho[(i * 3 + i, i * 3 + i)] = c(1.0 / 3.0);
        }
        let s = BipartiteState::new(rho, 3, 3).unwrap();
        assert!(conditional_entropy(&s).unwrap().abs() < 1e-12);
    }

    #[test]
    fn product_state_conditional_entropy() {
        let rho_a = ComplexMatrix::diagonal_real(&[0.5, 0.3, 0.2]);
        let rho_b = ComplexMatrix::diagonal_real(&[0.9, 0.1, 0.0]);
        let s = BipartiteState::product(&rho_a, &rho_b).unwrap();
        assert!((conditional_entropy(&s).unwrap() - von_neumann(&rho_a).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn dephasing_fixed_points_and_idempotence() {
        let s = BipartiteState::maximally_entangled(3);
        let once = dephase(&s, &fourier3()).unwrap();
        let twice = dephase(&once, &fourier3()).unwrap();
        assert!(once.rho().max_abs_diff(twice.rho()).unwrap() < 1e-12);
        assert!((once.rho().trace().re - 1.0).abs() < 1e-12);

        let diag = BipartiteState::product(
            &ComplexMatrix::diagonal_real(&[0.7, 0.2, 0.1]),
            &ComplexMatrix::identity(3).scale(c(1.0 / 3.0)),
        )
        .unwrap();
        let same = dephase(&diag, &ComplexMatrix::identity(3)).unwrap();
        assert!(same.rho().max_abs_diff(diag.rho()).unwrap() < 1e-15);
    }

    #[test]
    fn dephase_rejects_bad_bases() {
        let s = BipartiteState::maximally_entangled(2);
        let skew = ComplexMatrix::from_real(2, 2, &[1.0, 0.1, 0.0, 1.0]).unwrap();
        assert!(matches!(dephase(&s, &skew), Err(Error::Argument(_))));
        assert!(matches!(dephase(&s, &ComplexMatrix::identity(3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn memory_bounds() {
        assert!((memory_bound_bccrr(0.8213, 0.0).unwrap() - 0.3937).abs() < 5e-5);
        assert_eq!(memory_bound_bccrr(1.0, 0.25).unwrap(), 0.25);
        let s = 1.0 / 3.0_f64.sqrt();
        assert!(memory_bound_cp(s, s, -LN3).unwrap().abs() < 1e-14);
        assert!(memory_bound_cp(0.8213, 0.7543, 0.0).unwrap() >= memory_bound_bccrr(0.8213, 0.0).unwrap());
        assert!(memory_bound_cp(0.7, 0.8, 0.0).is_err());
    }

    #[test]
    fn mutually_unbiased_pair_saturates_with_entanglement() {
        let r = verify_memory_relation(&BipartiteState::maximally_entangled(3), &fourier3()).unwrap();
        assert!(r.cond_ab + LN3 < 1e-10);
        assert!(r.cp_rhs.abs() < 1e-10);
        assert!(r.lhs() >= -1e-10);
    }

    #[test]
    fn product_states_reduce_to_the_memoryless_relation() {
        let rho_a = ComplexMatrix::diagonal_real(&[0.6, 0.3, 0.1]);
        let rho_b = ComplexMatrix::diagonal_real(&[0.5, 0.5, 0.0]);
        let state = BipartiteState::product(&rho_a, &rho_b).unwrap();
        let w = fourier3();
        let r = verify_memory_relation(&state, &w).unwrap();
        let pair = crate::bounds::BasisPair::new(w).unwrap();
        let (p, q) = pair.probabilities(&rho_a).unwrap();
        let classical = crate::entropy::shannon(&p) + crate::entropy::shannon(&q);
        assert!((r.lhs() - classical).abs() < 1e-9);
        assert!((r.cond_ab - von_neumann(&rho_a).unwrap()).abs() < 1e-9);
    }
}
