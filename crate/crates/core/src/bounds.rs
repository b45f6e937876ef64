//! Lower bounds on the sum of two entropies of complementary measurements.
//!
//! Everything is in nats. `eta1` is the largest entry modulus of the
//! unitary `W`, `eta2` the second largest counted with multiplicity, so
//! `eta2 == eta1` whenever the maximum is attained twice and the Coles–Piani
//! correction then vanishes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::entropy::{self, binary_tsallis, renyi, tsallis, Efficiency, ProbVector, ALPHA_ONE_WINDOW, ZERO_CUTOFF};
use crate::linalg::{eig_hermitian, is_unitary, ComplexMatrix, DEFAULT_UNITARY_TOL};
use crate::majorization::{OmegaKind, OmegaVector, ZetaSequence};
use crate::{Error, Result};

pub const MAASSEN_UFFINK: &str = "maassen_uffink";
pub const COLES_PIANI: &str = "coles_piani";
pub const SHANNON_DIRECT_SUM: &str = "shannon_direct_sum";
pub const SHANNON_TENSOR_PRODUCT: &str = "shannon_tensor_product";
pub const RENYI_DIRECT_SUM: &str = "renyi_direct_sum";
pub const RENYI_TENSOR_PRODUCT: &str = "renyi_tensor_product";
pub const TSALLIS_DIRECT_SUM: &str = "tsallis_direct_sum";
pub const INEFFICIENCY: &str = "tsallis_inefficiency";
pub const INEFFICIENCY_PER_DETECTOR: &str = "tsallis_inefficiency_per_detector";

/// Lowest detector efficiency accepted by [`inefficiency_bound`].
pub const MIN_EFFICIENCY: f64 = 0.5;

/// Checks that `rho` is Hermitian, has unit trace and no eigenvalue below
/// `-1e-10`.
pub fn check_density_matrix(rho: &ComplexMatrix) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::Argument(format!("density matrix is {}x{}", rho.rows(), rho.cols())));
    }
    if !rho.is_hermitian(1e-10) {
        return Err(Error::Argument("density matrix is not Hermitian".into()));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-9 || tr.im.abs() > 1e-9 {
        return Err(Error::Argument(format!("density matrix has trace {tr}")));
    }
    let lowest = *eig_hermitian(rho)?.last().unwrap_or(&0.0);
    if lowest < -1e-10 {
        return Err(Error::Argument(format!("density matrix has eigenvalue {lowest:e}")));
    }
    Ok(())
}

/// Born-rule probabilities `<b_i|rho|b_i>` for the basis vectors stored as
/// the columns of `basis`.
pub fn measurement_probs(rho: &ComplexMatrix, basis: &ComplexMatrix) -> Result<ProbVector> {
    check_density_matrix(rho)?;
    if basis.rows() != rho.rows() {
        return Err(Error::Dimension(format!(
            "basis vectors of length {} for a {}-dimensional state",
            basis.rows(),
            rho.rows()
        )));
    }
    let n = rho.rows();
    let probs: Vec<f64> = (0..basis.cols())
        .map(|j| {
            let mut acc = 0.0;
            for a in 0..n {
                for b in 0..n {
                    acc += (basis[(a, j)].conj() * rho[(a, b)] * basis[(b, j)]).re;
                }
            }
            acc
        })
        .collect();
    ProbVector::new(probs)
}

/// Two orthonormal bases `X`, `Z` with `w_ij = <x_i|z_j>`. `X` is taken as
/// the reference (standard) basis, so the `z_j` are the columns of `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisPair {
    w: ComplexMatrix,
}

impl BasisPair {
    pub fn new(w: ComplexMatrix) -> Result<Self> {
        if !is_unitary(&w, DEFAULT_UNITARY_TOL)? {
            return Err(Error::Argument("basis pair needs a unitary overlap matrix".into()));
        }
        Ok(Self { w })
    }

    pub fn w(&self) -> &ComplexMatrix {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.w.rows()
    }

    /// Distributions of `rho` in `X` and in `Z`.
    pub fn probabilities(&self, rho: &ComplexMatrix) -> Result<(ProbVector, ProbVector)> {
        let x = measurement_probs(rho, &ComplexMatrix::identity(self.dim()))?;
        let z = measurement_probs(rho, &self.w)?;
        Ok((x, z))
    }
}

/// The two largest entry moduli of `w`, with multiplicity.
pub fn eta_pair(w: &ComplexMatrix) -> (f64, f64) {
    let mut moduli: Vec<f64> = w.entries().iter().map(|z| z.norm()).collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    let eta1 = moduli[0];
    (eta1, moduli.get(1).copied().unwrap_or(eta1))
}

/// `-2 ln eta1`.
pub fn maassen_uffink(eta1: f64) -> Result<f64> {
    if !(eta1 > 0.0 && eta1 <= 1.0) {
        return Err(Error::Argument(format!("eta1 = {eta1} outside (0, 1]")));
    }
    Ok(-2.0 * eta1.ln())
}

/// `-2 ln eta1 + (1 - eta1) ln(eta1 / eta2)`.
pub fn coles_piani(eta1: f64, eta2: f64) -> Result<f64> {
    let mu = maassen_uffink(eta1)?;
    if !(eta2 > 0.0 && eta2 <= eta1) {
        return Err(Error::Argument(format!("need 0 < eta2 <= eta1, got eta1 = {eta1}, eta2 = {eta2}")));
    }
    Ok(mu + (1.0 - eta1) * (eta1 / eta2).ln())
}

/// Tensor-product-type Rényi bound `R_alpha(omega')`.
pub fn renyi_product_bound(omega_prime: &OmegaVector, alpha: f64) -> Result<f64> {
    omega_prime.expect_kind(OmegaKind::TensorProduct)?;
    renyi(omega_prime.omega(), alpha)
}

/// Direct-sum-type Rényi bound: `R_alpha(omega)` for `alpha <= 1`, and
/// `2/(1-alpha) ln(1/2 + 1/2 sum omega_i^alpha)` for `alpha > 1`.
pub fn renyi_sum_bound(omega: &OmegaVector, alpha: f64) -> Result<f64> {
    omega.expect_kind(OmegaKind::DirectSum)?;
    if alpha <= 1.0 {
        return renyi(omega.omega(), alpha);
    }
    if alpha - 1.0 < ALPHA_ONE_WINDOW {
        return Ok(entropy::shannon(omega.omega()));
    }
    // ln(1/2 + S/2) = ln_1p((S - 1)/2), with S - 1 = H_alpha(omega) (1 - alpha).
    let s_minus_one = tsallis(omega.omega(), alpha)? * (1.0 - alpha);
    Ok(2.0 / (1.0 - alpha) * (0.5 * s_minus_one).ln_1p())
}

/// Direct-sum-type Tsallis bound `H_alpha(omega)`.
pub fn tsallis_sum_bound(omega: &OmegaVector, alpha: f64) -> Result<f64> {
    omega.expect_kind(OmegaKind::DirectSum)?;
    tsallis(omega.omega(), alpha)
}

/// Bound on the sum of Tsallis entropies of two distorted distributions:
/// `kappa^alpha H_alpha(omega) + 2 h_alpha(kappa)` with `kappa` the smaller
/// of the two efficiencies. Efficiencies below one half are rejected.
pub fn inefficiency_bound(omega: &OmegaVector, kappa_f: Efficiency, kappa_m: Efficiency, alpha: f64) -> Result<f64> {
    omega.expect_kind(OmegaKind::DirectSum)?;
    for (name, k) in [("first", kappa_f), ("second", kappa_m)] {
        if k.value() < MIN_EFFICIENCY {
            return Err(Error::Precondition(format!(
                "{name} detector efficiency {} is below 1/2; entropies of such sieved-out data carry no usable information",
                k.value()
            )));
        }
    }
    let kappa = if kappa_f.value() <= kappa_m.value() { kappa_f } else { kappa_m };
    Ok(kappa.value().powf(alpha) * tsallis(omega.omega(), alpha)? + 2.0 * binary_tsallis(kappa, alpha)?)
}

/// Variant of [`inefficiency_bound`] that keeps one binary term per
/// detector: `kappa^alpha H_alpha(omega) + h_alpha(kappa_f) + h_alpha(kappa_m)`.
///
/// Since `h_alpha` decreases on `[1/2, 1]`, `2 h_alpha(min)` overshoots this
/// whenever the efficiencies differ, and the min-only form can then exceed
/// the actual entropies. For equal efficiencies the two coincide.
pub fn inefficiency_bound_per_detector(
    omega: &OmegaVector,
    kappa_f: Efficiency,
    kappa_m: Efficiency,
    alpha: f64,
) -> Result<f64> {
    let shared = inefficiency_bound(omega, kappa_f, kappa_m, alpha)?;
    let kappa = if kappa_f.value() <= kappa_m.value() { kappa_f } else { kappa_m };
    Ok(shared - 2.0 * binary_tsallis(kappa, alpha)? + binary_tsallis(kappa_f, alpha)? + binary_tsallis(kappa_m, alpha)?)
}

/// The order in `[lo, hi]` where the tensor-product Rényi bound overtakes
/// the direct-sum one, by bisection on their difference. `None` if the
/// difference does not change sign over the bracket.
pub fn sum_product_crossover(omega: &OmegaVector, omega_prime: &OmegaVector, lo: f64, hi: f64) -> Result<Option<f64>> {
    let gap = |a: f64| -> Result<f64> { Ok(renyi_product_bound(omega_prime, a)? - renyi_sum_bound(omega, a)?) };
    let (mut a, mut b) = (lo, hi);
    let (ga, gb) = (gap(a)?, gap(b)?);
    if ga.signum() == gb.signum() {
        return Ok(None);
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a < 1e-13 {
            break;
        }
        if gap(m)?.signum() == ga.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

/// Named lower bounds together with the quantities that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub eta1: f64,
    pub eta2: f64,
    pub zetas: ZetaSequence,
    pub omega: OmegaVector,
    pub omega_prime: OmegaVector,
    /// Bound name to value in nats.
    pub bounds: BTreeMap<String, f64>,
    /// Entropic order used for the alpha-dependent entries, when present.
    pub alpha: Option<f64>,
    /// Detector efficiencies used for the inefficiency entry, when present.
    pub kappas: Option<(f64, f64)>,
}

impl BoundReport {
    /// Shannon-level bounds for a unitary: Maassen–Uffink, Coles–Piani and
    /// the two majorization bounds.
    pub fn for_unitary(w: &ComplexMatrix) -> Result<Self> {
        let zetas = crate::majorization::zeta_sequence(w)?;
        let omega = crate::majorization::omega_direct_sum(&zetas)?;
        let omega_prime = crate::majorization::omega_tensor_product(&zetas)?;
        let (eta1, eta2) = eta_pair(w);
        let mut bounds = BTreeMap::new();
        bounds.insert(MAASSEN_UFFINK.into(), maassen_uffink(eta1)?);
        bounds.insert(COLES_PIANI.into(), coles_piani(eta1, eta2)?);
        bounds.insert(SHANNON_DIRECT_SUM.into(), entropy::shannon(omega.omega()));
        bounds.insert(SHANNON_TENSOR_PRODUCT.into(), entropy::shannon(omega_prime.omega()));
        let report = Self { eta1, eta2, zetas, omega, omega_prime, bounds, alpha: None, kappas: None };
        report.check_invariants()?;
        Ok(report)
    }

    /// Adds the Rényi and Tsallis bounds of order `alpha`.
    pub fn with_order(mut self, alpha: f64) -> Result<Self> {
        self.bounds.insert(RENYI_DIRECT_SUM.into(), renyi_sum_bound(&self.omega, alpha)?);
        self.bounds.insert(RENYI_TENSOR_PRODUCT.into(), renyi_product_bound(&self.omega_prime, alpha)?);
        self.bounds.insert(TSALLIS_DIRECT_SUM.into(), tsallis_sum_bound(&self.omega, alpha)?);
        self.alpha = Some(alpha);
        Ok(self)
    }

    /// Adds the detector-inefficiency bound at order `alpha` (default 1).
    pub fn with_inefficiency(mut self, kappa_f: Efficiency, kappa_m: Efficiency) -> Result<Self> {
        let alpha = self.alpha.unwrap_or(1.0);
        self.bounds.insert(INEFFICIENCY.into(), inefficiency_bound(&self.omega, kappa_f, kappa_m, alpha)?);
        self.bounds.insert(
            INEFFICIENCY_PER_DETECTOR.into(),
            inefficiency_bound_per_detector(&self.omega, kappa_f, kappa_m, alpha)?,
        );
        self.kappas = Some((kappa_f.value(), kappa_m.value()));
        Ok(self)
    }

    pub fn bound(&self, name: &str) -> Option<f64> {
        self.bounds.get(name).copied()
    }

    /// Relative excess of bound `name` over Maassen–Uffink, in percent.
    /// `None` when the Maassen–Uffink bound vanishes.
    pub fn improvement_over_mu(&self, name: &str) -> Option<f64> {
        let mu = self.bound(MAASSEN_UFFINK)?;
        let b = self.bound(name)?;
        (mu > ZERO_CUTOFF).then(|| 100.0 * (b - mu) / mu)
    }

    pub fn check_invariants(&self) -> Result<()> {
        if !(self.eta2 <= self.eta1 && self.eta1 <= 1.0 + 1e-12) {
            return Err(Error::Invariant(format!("eta pair ({}, {}) out of order", self.eta1, self.eta2)));
        }
        if let (Some(cp), Some(mu)) = (self.bound(COLES_PIANI), self.bound(MAASSEN_UFFINK)) {
            if cp < mu - 1e-12 {
                return Err(Error::Invariant(format!("Coles–Piani {cp} below Maassen–Uffink {mu}")));
            }
        }
        Ok(())
    }
}
