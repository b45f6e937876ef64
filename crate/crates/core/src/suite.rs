//! Seeded Monte-Carlo checks of every relation the crate implements.
//!
//! Each sample draws from its own generator, seeded by hashing the run seed
//! with the suite name and the sample index, so a single sample can be
//! replayed from the numbers printed with a counterexample and results do not
//! depend on evaluation order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    coles_piani, eta_pair, inefficiency_bound, inefficiency_bound_per_detector, maassen_uffink, renyi_product_bound,
    renyi_sum_bound, tsallis_sum_bound, BasisPair,
};
use crate::ensemble::{haar_unitary, random_density_matrix, random_pure_density, random_pure_state};
use crate::entropy::{distort, renyi, shannon, tsallis, Efficiency, ProbVector};
use crate::linalg::ComplexMatrix;
use crate::majorization::{
    majorizes, omega_direct_sum, omega_tensor_product, verify_direct_sum_relation, verify_tensor_product_relation,
    zeta_sequence, OmegaKind, OmegaVector, MAJORIZATION_TOL,
};
use crate::mixing::{build_pmns, MixingParams};
use crate::qmemory::{verify_memory_relation, BipartiteState};
use crate::{Error, Result};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x0005_eed0_2019;

/// Orders at which the Rényi and Tsallis bounds are checked.
pub const ENTROPIC_ORDERS: [f64; 6] = [0.3, 0.7, 1.0, 1.5, 2.0, 3.0];
pub const INEFFICIENCY_KAPPAS: [f64; 3] = [0.6, 0.8, 1.0];
pub const INEFFICIENCY_ORDERS: [f64; 3] = [0.5, 1.0, 2.0];
pub const DIMENSIONS: [usize; 3] = [2, 3, 4];

/// Tolerance on the entropic inequalities.
pub const BOUND_TOL: f64 = 1e-9;
/// Tolerance on the agreement with the independent zeta computation.
pub const ORACLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random (state, unitary) pairs per dimension.
    pub samples: usize,
    /// Qutrit states for the detector-inefficiency checks.
    pub inefficiency_samples: usize,
    /// Two-qutrit states for the quantum-memory checks.
    pub memory_samples: usize,
    /// Replace `omega` by the uniform vector. Only useful to check that
    /// violations are detected and reported.
    pub corrupt_omega: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: 1000,
            inefficiency_samples: 1000,
            memory_samples: 500,
            corrupt_omega: false,
        }
    }
}

/// Pass/fail tally of one relation.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub violations: usize,
    /// The first failing case, in a replayable form.
    pub counterexample: Option<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, violations: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }
}

/// FNV-1a over the inputs followed by a SplitMix64 finalizer.
pub fn derive_seed(seed: u64, suite: &str, index: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(&seed.to_le_bytes());
    eat(suite.as_bytes());
    eat(&index.to_le_bytes());
    let mut z = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn sample_rng(seed: u64, suite: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, suite, index))
}

/// Largest singular value, for matrices whose smaller side is at most two,
/// in closed form; otherwise by power iteration on the Gram matrix.
fn oracle_norm(w: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> f64 {
    let (short, long, transpose) = if rows.len() <= cols.len() { (rows, cols, false) } else { (cols, rows, true) };
    let at = |s: usize, l: usize| if transpose { w[(l, s)].conj() } else { w[(s, l)] };
    // Gram matrix over the short side: g_ab = sum_l at(a, l) conj(at(b, l)).
    let n = short.len();
    let mut g = alloc::vec![num_complex::Complex64::new(0.0, 0.0); n * n];
    for a in 0..n {
        for b in 0..n {
            g[a * n + b] = long.iter().map(|&l| at(short[a], l) * at(short[b], l).conj()).sum();
        }
    }
    let top = match n {
        1 => g[0].re,
        2 => {
            let (p, q) = (g[0].re, g[3].re);
            0.5 * (p + q) + (0.25 * (p - q) * (p - q) + g[1].norm_sqr()).sqrt()
        }
        _ => {
            let mut v = alloc::vec![num_complex::Complex64::new(1.0, 0.0); n];
            let mut lambda = 0.0;
            for _ in 0..5000 {
                let next: Vec<_> = (0..n).map(|a| (0..n).map(|b| g[a * n + b] * v[b]).sum()).collect();
                let nn = next.iter().map(|z: &num_complex::Complex64| z.norm_sqr()).sum::<f64>().sqrt();
                if nn == 0.0 {
                    return 0.0;
                }
                lambda = nn;
                v = next.into_iter().map(|z| z / nn).collect();
            }
            lambda
        }
    };
    top.max(0.0).sqrt()
}

/// `zeta_1..zeta_d` by bitmask enumeration of all row and column selections,
/// independent of the enumeration and eigensolvers used by
/// [`zeta_sequence`](crate::majorization::zeta_sequence).
pub fn zeta_oracle(w: &ComplexMatrix) -> Vec<f64> {
    let d = w.rows();
    let subsets: Vec<Vec<usize>> = (1u32..(1 << d)).map(|m| (0..d).filter(|&i| m & (1 << i) != 0).collect()).collect();
    let mut zeta = alloc::vec![0.0_f64; d];
    for rows in &subsets {
        for cols in &subsets {
            let k = rows.len() + cols.len() - 1;
            if k <= d {
                zeta[k - 1] = zeta[k - 1].max(oracle_norm(w, rows, cols));
            }
        }
    }
    zeta
}

fn uniform_omega(d: usize, kind: OmegaKind) -> OmegaVector {
    OmegaVector::from_parts(ProbVector::uniform(d), kind)
}

fn entropy_sum(p: &ProbVector, q: &ProbVector, f: impl Fn(&ProbVector) -> Result<f64>) -> Result<f64> {
    Ok(f(p)? + f(q)?)
}

/// Majorization relations, the independent zeta computation and the
/// entropic bounds, on Haar unitaries and random states in `d = 2, 3, 4`.
/// Even samples use pure states, odd ones Hilbert–Schmidt mixed states.
pub fn random_pair_suites(config: &SuiteConfig) -> Result<Vec<SuiteOutcome>> {
    let mut direct = SuiteOutcome::new("direct_sum_majorization");
    let mut tensor = SuiteOutcome::new("tensor_product_majorization");
    let mut order = SuiteOutcome::new("omega_below_omega_prime");
    let mut oracle = SuiteOutcome::new("zeta_oracle");
    let mut shannon_bounds = SuiteOutcome::new("shannon_bounds");
    let mut alpha_bounds = SuiteOutcome::new("renyi_tsallis_bounds");
    for &d in &DIMENSIONS {
        for i in 0..config.samples {
            let index = (d as u64) << 32 | i as u64;
            let mut rng = sample_rng(config.seed, "pairs", index);
            let w = haar_unitary(&mut rng, d);
            let rho = if i % 2 == 0 { random_pure_density(&mut rng, d) } else { random_density_matrix(&mut rng, d) };
            let (p, q) = BasisPair::new(w.clone())?.probabilities(&rho)?;
            let zetas = zeta_sequence(&w)?;
            let (omega, omega_prime) = if config.corrupt_omega {
                (uniform_omega(d, OmegaKind::DirectSum), uniform_omega(d, OmegaKind::TensorProduct))
            } else {
                (omega_direct_sum(&zetas)?, omega_tensor_product(&zetas)?)
            };
            let tag = |what: &str| {
                format!(
                    "{what}: seed {} index {index} (d = {d}), p = {:?}, q = {:?}",
                    config.seed,
                    p.as_slice(),
                    q.as_slice()
                )
            };

            direct.record(verify_direct_sum_relation(&p, &q, &omega)?, || {
                tag(&format!("p (+) q not below (1) (+) {:?}", omega.as_slice()))
            });
            tensor.record(verify_tensor_product_relation(&p, &q, &omega_prime)?, || {
                tag(&format!("p (x) q not below {:?}", omega_prime.as_slice()))
            });
            order.record(majorizes(omega_prime.as_slice(), omega.as_slice(), MAJORIZATION_TOL), || {
                tag(&format!("omega {:?} not below omega' {:?}", omega.as_slice(), omega_prime.as_slice()))
            });
            let brute = zeta_oracle(&w);
            let gap = brute.iter().zip(zetas.as_slice()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            oracle.record(gap <= ORACLE_TOL, || tag(&format!("zeta {:?} vs oracle {brute:?}", zetas.as_slice())));

            let (eta1, eta2) = eta_pair(&w);
            let h = shannon(&p) + shannon(&q);
            let (mu, cp) = (maassen_uffink(eta1)?, coles_piani(eta1, eta2)?);
            shannon_bounds
                .record(h >= cp - BOUND_TOL && cp >= mu - 1e-12, || tag(&format!("H = {h}, CP = {cp}, MU = {mu}")));

            for &alpha in &ENTROPIC_ORDERS {
                let r = entropy_sum(&p, &q, |x| renyi(x, alpha))?;
                let r_bound = renyi_sum_bound(&omega, alpha)?.max(renyi_product_bound(&omega_prime, alpha)?);
                alpha_bounds
                    .record(r >= r_bound - BOUND_TOL, || tag(&format!("alpha = {alpha}: Renyi sum {r} < {r_bound}")));
                let t = entropy_sum(&p, &q, |x| tsallis(x, alpha))?;
                let t_bound = tsallis_sum_bound(&omega, alpha)?;
                alpha_bounds
                    .record(t >= t_bound - BOUND_TOL, || tag(&format!("alpha = {alpha}: Tsallis sum {t} < {t_bound}")));
            }
        }
    }
    Ok(alloc::vec![direct, tensor, order, oracle, shannon_bounds, alpha_bounds])
}

fn best_fit_basis() -> Result<(ComplexMatrix, OmegaVector)> {
    let w = build_pmns(&MixingParams::nufit_best_fit());
    let omega = omega_direct_sum(&zeta_sequence(&w)?)?;
    Ok((w, omega))
}

/// Tsallis entropies of distorted distributions on random qutrit states in
/// the best-fit mixing basis. The shared-efficiency bound is checked with
/// equal efficiencies, the per-detector bound on every efficiency pair.
pub fn inefficiency_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("inefficiency");
    let (w, mut omega) = best_fit_basis()?;
    if config.corrupt_omega {
        omega = uniform_omega(3, OmegaKind::DirectSum);
    }
    let pair = BasisPair::new(w)?;
    for i in 0..config.inefficiency_samples {
        let mut rng = sample_rng(config.seed, "inefficiency", i as u64);
        let rho = if i % 2 == 0 { random_pure_density(&mut rng, 3) } else { random_density_matrix(&mut rng, 3) };
        let (p, q) = pair.probabilities(&rho)?;
        for &alpha in &INEFFICIENCY_ORDERS {
            for &kf in &INEFFICIENCY_KAPPAS {
                for &km in &INEFFICIENCY_KAPPAS {
                    let (ef, em) = (Efficiency::new(kf)?, Efficiency::new(km)?);
                    let lhs = tsallis(&distort(&p, ef), alpha)? + tsallis(&distort(&q, em), alpha)?;
                    let describe = |bound: f64| {
                        format!(
                            "seed {} index {i}: alpha = {alpha}, kappa = ({kf}, {km}), distorted sum {lhs} < {bound}, p = {:?}, q = {:?}",
                            config.seed,
                            p.as_slice(),
                            q.as_slice()
                        )
                    };
                    if kf == km {
                        let bound = inefficiency_bound(&omega, ef, em, alpha)?;
                        out.record(lhs >= bound - BOUND_TOL, || describe(bound));
                    }
                    let bound = inefficiency_bound_per_detector(&omega, ef, em, alpha)?;
                    out.record(lhs >= bound - BOUND_TOL, || describe(bound));
                }
            }
        }
    }
    Ok(out)
}

/// The memory-assisted relation on random two-qutrit states with the
/// best-fit mixing matrix; even samples are pure (generally entangled).
pub fn memory_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("quantum_memory");
    let (w, _) = best_fit_basis()?;
    for i in 0..config.memory_samples {
        let mut rng = sample_rng(config.seed, "memory", i as u64);
        let state = if i % 2 == 0 {
            BipartiteState::pure(&random_pure_state(&mut rng, 9), 3, 3)?
        } else {
            BipartiteState::new(random_density_matrix(&mut rng, 9), 3, 3)?
        };
        match verify_memory_relation(&state, &w) {
            Ok(_) => out.record(true, String::new),
            Err(Error::PropertyViolation(msg)) => {
                out.record(false, || format!("seed {} index {i}: {msg}", config.seed))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Every suite, in a fixed order.
pub fn run_all(config: &SuiteConfig) -> Result<Vec<SuiteOutcome>> {
    let mut all = random_pair_suites(config)?;
    all.push(inefficiency_suite(config)?);
    all.push(memory_suite(config)?);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig { samples: 40, inefficiency_samples: 20, memory_samples: 10, ..SuiteConfig::default() }
    }

    #[test]
    fn seeds_depend_on_every_input() {
        let base = derive_seed(1, "pairs", 0);
        assert_ne!(base, derive_seed(2, "pairs", 0));
        assert_ne!(base, derive_seed(1, "memory", 0));
        assert_ne!(base, derive_seed(1, "pairs", 1));
        assert_eq!(base, derive_seed(1, "pairs", 0));
    }

    #[test]
    fn oracle_agrees_on_fourier_matrix() {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let f = ComplexMatrix::from_real(2, 2, &[s, s, s, -s]).unwrap();
        let z = zeta_oracle(&f);
        assert!((z[0] - s).abs() < 1e-15 && (z[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn small_run_passes() {
        for outcome in run_all(&small()).unwrap() {
            assert!(outcome.passed(), "{}: {:?}", outcome.name, outcome.counterexample);
            assert!(outcome.checks > 0);
        }
    }

    #[test]
    fn corrupted_omega_is_caught() {
        let outcomes = run_all(&SuiteConfig { corrupt_omega: true, ..small() }).unwrap();
        let direct = outcomes.iter().find(|o| o.name == "direct_sum_majorization").unwrap();
        assert!(direct.violations > 0);
        assert!(direct.counterexample.as_deref().unwrap().contains("seed"));
    }

    #[test]
    fn runs_repeat() {
        assert_eq!(run_all(&small()).unwrap(), run_all(&small()).unwrap());
    }
}
