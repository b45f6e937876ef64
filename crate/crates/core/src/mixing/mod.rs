//! The PMNS lepton mixing matrix.
//!
//! `U = R23 * R13(delta) * R12 * diag(1, e^{i phi1}, e^{i phi2})`, rows
//! indexed by flavor `(e, mu, tau)` and columns by mass eigenstate
//! `(1, 2, 3)`. `U` plays the role of the overlap matrix between the flavor
//! and mass bases.

mod params;
mod scan;

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::BoundReport;
use crate::linalg::ComplexMatrix;
use crate::majorization::zeta_sequence;
use crate::Result;

pub use params::{Interval, MagnitudeMatrix, MixingParams, ParamRange, ParamRanges, SigmaLevel, Unit, SCAN_PARAMETERS};
pub use scan::{
    golden_section_max, scan_eta, scan_eta_region, scan_zeta2, scan_zeta2_region, EtaCertificates, EtaScan, GridPoint,
    GridSpec, Region, Zeta2Scan, DEFAULT_GRID_POINTS, MIN_GRID_POINTS,
};

/// Fixed-size 3x3 complex matrix, row-major.
pub type Mat3 = [[Complex64; 3]; 3];

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Rotation in the (2, 3) plane.
#[cfg(test)]
fn r23(c: f64, s: f64) -> Mat3 {
    let (c, s) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
    let one = Complex64::new(1.0, 0.0);
    [[one, ZERO, ZERO], [ZERO, c, s], [ZERO, -s, c]]
}

/// Rotation in the (1, 3) plane carrying the Dirac phase, `phase = e^{i delta}`.
fn r13(c: f64, s: f64, phase: Complex64) -> Mat3 {
    let cc = Complex64::new(c, 0.0);
    let one = Complex64::new(1.0, 0.0);
    [[cc, ZERO, s * phase.conj()], [ZERO, one, ZERO], [-s * phase, ZERO, cc]]
}

/// Right-multiplies by the (1, 2) rotation `[[c, s, 0], [-s, c, 0], [0, 0, 1]]`.
fn times_r12(m: &Mat3, c: f64, s: f64) -> Mat3 {
    let mut out = *m;
    for row in out.iter_mut() {
        let (a, b) = (row[0], row[1]);
        row[0] = a * c - b * s;
        row[1] = a * s + b * c;
    }
    out
}

/// Left-multiplies by the (2, 3) rotation without forming it.
fn r23_times(c: f64, s: f64, m: &Mat3) -> Mat3 {
    let mut out = *m;
    for j in 0..3 {
        let (mu, tau) = (m[1][j], m[2][j]);
        out[1][j] = mu * c + tau * s;
        out[2][j] = -(mu * s) + tau * c;
    }
    out
}

pub(crate) fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

/// Sines and cosines of the three angles.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Trig {
    pub c12: f64,
    pub s12: f64,
    pub c23: f64,
    pub s23: f64,
    pub c13: f64,
    pub s13: f64,
}

impl Trig {
    pub fn of(p: &MixingParams) -> Self {
        let (s12, c12) = p.theta12().sin_cos();
        let (s23, c23) = p.theta23().sin_cos();
        let (s13, c13) = p.theta13().sin_cos();
        Self { c12, s12, c23, s23, c13, s13 }
    }
}

/// `R23 * R13(delta) * R12`, the Dirac part of the mixing matrix.
pub(crate) fn dirac_pmns(t: &Trig, dirac_phase: Complex64) -> Mat3 {
    times_r12(&r23_times(t.c23, t.s23, &r13(t.c13, t.s13, dirac_phase)), t.c12, t.s12)
}

/// The full mixing matrix as a fixed-size array.
pub fn pmns_array(p: &MixingParams) -> Mat3 {
    let dirac = dirac_pmns(&Trig::of(p), Complex64::from_polar(1.0, p.delta()));
    let one = Complex64::new(1.0, 0.0);
    let majorana = [
        [one, ZERO, ZERO],
        [ZERO, Complex64::from_polar(1.0, p.phi1()), ZERO],
        [ZERO, ZERO, Complex64::from_polar(1.0, p.phi2())],
    ];
    mul3(&dirac, &majorana)
}

/// The mixing matrix `U` as a [`ComplexMatrix`].
pub fn build_pmns(p: &MixingParams) -> ComplexMatrix {
    let u = pmns_array(p);
    ComplexMatrix::new(3, 3, u.iter().flatten().copied().collect()).expect("3x3 with finite entries")
}

/// Entry moduli `|u_beta i|`.
pub fn pmns_moduli(p: &MixingParams) -> [[f64; 3]; 3] {
    moduli(&pmns_array(p))
}

pub(crate) fn moduli(u: &Mat3) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = u[i][j].norm();
        }
    }
    out
}

/// Checks that entry moduli and the whole zeta sequence are unchanged by ten
/// pseudo-random Majorana phase pairs (fixed seed), within `1e-12`.
pub fn magnitudes_independent_of_majorana(p: &MixingParams) -> Result<bool> {
    let base = p.with_majorana(0.0, 0.0)?;
    let ref_moduli = pmns_moduli(&base);
    let ref_zetas = zeta_sequence(&build_pmns(&base))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_6a6f_7261_6e61);
    let tau = 2.0 * core::f64::consts::PI;
    for _ in 0..10 {
        let q = base.with_majorana(tau * rng.random::<f64>(), tau * rng.random::<f64>())?;
        let m = pmns_moduli(&q);
        let same_moduli = (0..3).all(|i| (0..3).all(|j| (m[i][j] - ref_moduli[i][j]).abs() <= 1e-12));
        let zetas = zeta_sequence(&build_pmns(&q))?;
        let same_zetas = zetas.as_slice().iter().zip(ref_zetas.as_slice()).all(|(a, b)| (a - b).abs() <= 1e-12);
        if !(same_moduli && same_zetas) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Shannon-level bound report for the mixing matrix at `p`.
pub fn bound_report_at(p: &MixingParams) -> Result<BoundReport> {
    BoundReport::for_unitary(&build_pmns(p))
}

/// `omega = (c12 c13, c13 - c12 c13, 1 - c13)`: the closed form of the
/// direct-sum vector valid wherever `zeta_2 = c13`.
pub fn symbolic_omega(p: &MixingParams) -> Vec<f64> {
    let t = Trig::of(p);
    alloc::vec![t.c12 * t.c13, t.c13 - t.c12 * t.c13, 1.0 - t.c13]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unitary;

    fn dense_product(p: &MixingParams) -> Mat3 {
        let t = Trig::of(p);
        let one = Complex64::new(1.0, 0.0);
        let c = |x: f64| Complex64::new(x, 0.0);
        let rot12 = [[c(t.c12), c(t.s12), ZERO], [c(-t.s12), c(t.c12), ZERO], [ZERO, ZERO, one]];
        let e = Complex64::from_polar(1.0, p.delta());
        let m = mul3(&mul3(&r23(t.c23, t.s23), &r13(t.c13, t.s13, e)), &rot12);
        let maj = [
            [one, ZERO, ZERO],
            [ZERO, Complex64::from_polar(1.0, p.phi1()), ZERO],
            [ZERO, ZERO, Complex64::from_polar(1.0, p.phi2())],
        ];
        mul3(&m, &maj)
    }

    #[test]
    fn zero_parameters_give_identity() {
        let p = MixingParams::new(0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(build_pmns(&p), ComplexMatrix::identity(3));
    }

    #[test]
    fn sparse_rotations_match_dense_product() {
        let p = MixingParams::new(0.6, 0.85, 0.15, 3.8).unwrap().with_majorana(1.1, 4.0).unwrap();
        let fast = pmns_array(&p);
        let slow = dense_product(&p);
        for i in 0..3 {
            for j in 0..3 {
                assert!((fast[i][j] - slow[i][j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn explicit_entries() {
        // Compare with the closed-form entries of the Dirac matrix.
        let p = MixingParams::new(0.6, 0.85, 0.15, 3.8).unwrap();
        let t = Trig::of(&p);
        let e = Complex64::from_polar(1.0, p.delta());
        let u = pmns_array(&p);
        let want = [
            [Complex64::new(t.c12 * t.c13, 0.0), Complex64::new(t.s12 * t.c13, 0.0), t.s13 * e.conj()],
            [
                -t.s12 * t.c23 - t.c12 * t.s23 * t.s13 * e,
                t.c12 * t.c23 - t.s12 * t.s23 * t.s13 * e,
                Complex64::new(t.s23 * t.c13, 0.0),
            ],
            [
                t.s12 * t.s23 - t.c12 * t.c23 * t.s13 * e,
                -t.c12 * t.s23 - t.s12 * t.c23 * t.s13 * e,
                Complex64::new(t.c23 * t.c13, 0.0),
            ],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!((u[i][j] - want[i][j]).norm() < 1e-15, "entry ({i}, {j})");
            }
        }
    }

    #[test]
    fn best_fit_matrix() {
        let p = MixingParams::nufit_best_fit();
        let u = build_pmns(&p);
        assert!(is_unitary(&u, 1e-12).unwrap());
        let m = pmns_moduli(&p);
        assert!((m[0][0] - 0.8213).abs() < 5e-5);
        assert!((m[0][2] - 0.02240_f64.sqrt()).abs() < 1e-15);
        assert!((m[0][2] - 0.1497).abs() < 5e-5);
    }

    #[test]
    fn majorana_phases_do_not_matter() {
        assert!(magnitudes_independent_of_majorana(&MixingParams::nufit_best_fit()).unwrap());
        assert!(magnitudes_independent_of_majorana(&MixingParams::new(0.0, 0.0, 0.0, 0.0).unwrap()).unwrap());
    }

    #[test]
    fn dirac_phase_does_matter() {
        let r = ParamRanges::nufit_2018_normal();
        let at = |deg| {
            MixingParams::from_sin_squared(r.sin2_theta12.bfp, r.sin2_theta23.bfp, r.sin2_theta13.bfp, deg).unwrap()
        };
        let ratio = pmns_moduli(&at(0.0))[1][1] / pmns_moduli(&at(180.0))[1][1];
        assert!((ratio - 1.0).abs() > 1e-2);
    }

    #[test]
    fn best_fit_report() {
        let report = bound_report_at(&MixingParams::nufit_best_fit()).unwrap();
        assert!((report.eta1 - 0.8213).abs() < 5e-4);
        assert!((report.eta2 - 0.7543).abs() < 5e-4);
        let mu_gain = report.improvement_over_mu(crate::bounds::SHANNON_DIRECT_SUM).unwrap();
        assert!((mu_gain - 30.0).abs() < 1.0, "{mu_gain}");
    }

    #[test]
    fn identity_report_is_all_zero() {
        let report = bound_report_at(&MixingParams::new(0.0, 0.0, 0.0, 0.0).unwrap()).unwrap();
        for (name, value) in &report.bounds {
            assert!(value.abs() < 1e-15, "{name} = {value}");
        }
        assert_eq!(report.improvement_over_mu(crate::bounds::COLES_PIANI), None);
    }
}
