//! Seeded random states and unitaries.
//!
//! All three ensembles start from independent standard complex Gaussians:
//! pure states normalize a Gaussian vector, mixed states normalize `G G^dag`
//! (the Hilbert–Schmidt measure) and unitaries orthonormalize the columns of
//! a Gaussian matrix by Gram–Schmidt, which leaves the triangular factor with
//! a positive diagonal and so samples the Haar measure.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// A uniformly distributed unit vector in `C^d`.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        let n = norm(&v);
        if n > 1e-8 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// `|psi><psi|` for a random pure state.
pub fn random_pure_density<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    ComplexMatrix::outer(&random_pure_state(rng, d))
}

/// A mixed state from the Hilbert–Schmidt ensemble, `G G^dag / Tr(G G^dag)`.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let g = ComplexMatrix::new(d, d, (0..d * d).map(|_| gaussian(rng)).collect()).expect("finite Gaussian entries");
    let gg = g.co_gram();
    let tr = gg.trace().re;
    let mut rho = gg.scale(Complex64::new(1.0 / tr, 0.0));
    // Remove the rounding-level anti-Hermitian part.
    for i in 0..d {
        rho[(i, i)].im = 0.0;
        for j in i + 1..d {
            let avg = (rho[(i, j)] + rho[(j, i)].conj()) * 0.5;
            rho[(i, j)] = avg;
            rho[(j, i)] = avg.conj();
        }
    }
    rho
}

/// A Haar-distributed `d x d` unitary.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    loop {
        let mut cols: Vec<Vec<Complex64>> = (0..d).map(|_| (0..d).map(|_| gaussian(rng)).collect()).collect();
        let mut degenerate = false;
        for j in 0..d {
            // Modified Gram–Schmidt against the already finished columns.
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let proj: Complex64 = done[k].iter().zip(&rest[0]).map(|(q, v)| q.conj() * v).sum();
                for (v, q) in rest[0].iter_mut().zip(&done[k]) {
                    *v -= proj * q;
                }
            }
            let n = norm(&cols[j]);
            if n < 1e-8 {
                degenerate = true;
                break;
            }
            for z in cols[j].iter_mut() {
                *z /= n;
            }
        }
        if !degenerate {
            return ComplexMatrix::from_columns(&cols).expect("square, finite");
        }
    }
}
