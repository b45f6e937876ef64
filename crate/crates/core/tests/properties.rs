use numaj_core::entropy::{binary_tsallis, distort, renyi, shannon, tsallis, Efficiency, ProbVector};
use numaj_core::linalg::{spectral_norm, ComplexMatrix};
use numaj_core::majorization::majorizes;
use numaj_core::Complex64;
use proptest::prelude::*;

fn prob_vector(len: std::ops::Range<usize>) -> impl Strategy<Value = ProbVector> {
    prop::collection::vec(1e-6..1.0f64, len).prop_map(|w| {
        let total: f64 = w.iter().sum();
        ProbVector::new(w.into_iter().map(|x| x / total).collect()).unwrap()
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), rows * cols).prop_map(move |v| {
        ComplexMatrix::new(rows, cols, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap()
    })
}

// q = lambda p + (1 - lambda) (p with entries i, j swapped) is majorized by p.
fn t_transform(p: &ProbVector, i: usize, j: usize, lambda: f64) -> ProbVector {
    let mut q = p.to_vec();
    let (a, b) = (p[i], p[j]);
    q[i] = lambda * a + (1.0 - lambda) * b;
    q[j] = lambda * b + (1.0 - lambda) * a;
    ProbVector::new(q).unwrap()
}

const ORDERS: [f64; 4] = [0.5, 1.0, 2.0, 3.0];

proptest! {
    #[test]
    fn entropies_are_schur_concave(p in prob_vector(2..6), i in 0usize..6, j in 0usize..6, lambda in 0.0..1.0f64) {
        let (i, j) = (i % p.len(), j % p.len());
        let q = t_transform(&p, i, j, lambda);
        prop_assert!(majorizes(&p, &q, 1e-12));
        for alpha in ORDERS {
            prop_assert!(renyi(&q, alpha).unwrap() >= renyi(&p, alpha).unwrap() - 1e-12);
            prop_assert!(tsallis(&q, alpha).unwrap() >= tsallis(&p, alpha).unwrap() - 1e-12);
        }
    }

    #[test]
    fn entropies_ignore_order(p in prob_vector(2..6)) {
        let mut rev = p.to_vec();
        rev.reverse();
        let rev = ProbVector::new(rev).unwrap();
        for alpha in ORDERS {
            prop_assert!((renyi(&p, alpha).unwrap() - renyi(&rev, alpha).unwrap()).abs() < 1e-12);
            prop_assert!((tsallis(&p, alpha).unwrap() - tsallis(&rev, alpha).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn renyi_decreases_with_order(p in prob_vector(3..4)) {
        let grid: Vec<f64> = (1..=50).map(|i| 0.1 * i as f64).collect();
        for pair in grid.windows(2) {
            prop_assert!(renyi(&p, pair[1]).unwrap() <= renyi(&p, pair[0]).unwrap() + 1e-12);
        }
    }

    #[test]
    fn both_families_reach_shannon(p in prob_vector(2..6)) {
        let h = shannon(&p);
        for alpha in [1.0 - 1e-7, 1.0 + 1e-7, 1.0 - 2e-6, 1.0 + 2e-6] {
            prop_assert!((renyi(&p, alpha).unwrap() - h).abs() <= 1e-5);
            prop_assert!((tsallis(&p, alpha).unwrap() - h).abs() <= 1e-5);
        }
    }

    #[test]
    fn tsallis_from_renyi(p in prob_vector(2..6), alpha in 0.05..6.0f64) {
        prop_assume!((alpha - 1.0).abs() > 1e-3);
        let via = (((1.0 - alpha) * renyi(&p, alpha).unwrap()).exp() - 1.0) / (1.0 - alpha);
        prop_assert!((tsallis(&p, alpha).unwrap() - via).abs() < 1e-10);
    }

    #[test]
    fn distortion_identity(p in prob_vector(2..6), kappa in 0.0..=1.0f64, alpha in 0.1..4.0f64) {
        let k = Efficiency::new(kappa).unwrap();
        let d = distort(&p, k);
        prop_assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let lhs = tsallis(&d, alpha).unwrap();
        let rhs = kappa.powf(alpha) * tsallis(&p, alpha).unwrap() + binary_tsallis(k, alpha).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12, "{} vs {}", lhs, rhs);
        let shannon_rhs = kappa * shannon(&p) + binary_tsallis(k, 1.0).unwrap();
        prop_assert!((shannon(&d) - shannon_rhs).abs() < 1e-12);
    }

    #[test]
    fn uniform_is_majorized_by_everything(p in prob_vector(2..8)) {
        prop_assert!(majorizes(&p, &ProbVector::uniform(p.len()), 1e-12));
    }

    #[test]
    fn spectral_norm_of_adjoint(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let a = spectral_norm(&m).unwrap();
        let b = spectral_norm(&m.adjoint()).unwrap();
        prop_assert!((a - b).abs() < 1e-12 * a.max(1.0));
    }

    #[test]
    fn spectral_norm_grows_with_the_submatrix(m in matrix(4, 4), rows in 1usize..4, cols in 1usize..4) {
        let pick = |r: usize, c: usize| {
            let entries = (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).map(|(i, j)| m[(i, j)]).collect();
            ComplexMatrix::new(r, c, entries).unwrap()
        };
        let base = spectral_norm(&pick(rows, cols)).unwrap();
        prop_assert!(spectral_norm(&pick(rows + 1, cols)).unwrap() >= base - 1e-12);
        prop_assert!(spectral_norm(&pick(rows, cols + 1)).unwrap() >= base - 1e-12);
    }
}

#[test]
fn distortion_identity_on_the_fixed_grid() {
    // Five vectors, five efficiencies, three orders.
    let vectors = [
        vec![1.0, 0.0, 0.0],
        vec![1.0 / 3.0; 3],
        vec![0.8213, 0.1674, 0.0113],
        vec![0.5, 0.25, 0.25],
        vec![0.6, 0.3, 0.1],
    ];
    for v in vectors {
        let p = ProbVector::new(v).unwrap();
        for kappa in [0.5, 0.6, 0.75, 0.9, 1.0] {
            let k = Efficiency::new(kappa).unwrap();
            for alpha in [0.5, 1.0, 2.0] {
                let lhs = tsallis(&distort(&p, k), alpha).unwrap();
                let rhs = kappa.powf(alpha) * tsallis(&p, alpha).unwrap() + binary_tsallis(k, alpha).unwrap();
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }
}
