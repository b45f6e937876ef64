//! Region scans over the global-fit confidence boxes.
//!
//! The box is a product of intervals in `sin^2 theta12`, `sin^2 theta23`,
//! `sin^2 theta13` and `delta` (degrees, scanned over the raw interval and
//! wrapped only when the phase is evaluated). Every grid point builds the
//! mixing matrix by the same rotation products as [`super::build_pmns`]; the
//! ratio maxima are then polished by one golden-section pass per coordinate
//! around the incumbent. Ties are broken towards the lexicographically
//! smallest `(sin^2 theta12, sin^2 theta23, sin^2 theta13, delta)`.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::params::{MixingParams, ParamRanges, SigmaLevel};
use super::{magnitudes_independent_of_majorana, moduli, pmns_array, r13, r23_times, times_r12, Mat3, Trig};
use crate::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 101;
pub const MIN_GRID_POINTS: usize = 50;
const DEFAULT_TOLERANCE: f64 = 1e-6;
const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Grid resolution and refinement settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    points: usize,
    refine: bool,
    tolerance: f64,
}

impl GridSpec {
    pub fn new(points: usize) -> Result<Self> {
        if points < MIN_GRID_POINTS {
            return Err(Error::Argument(format!(
                "grid needs at least {MIN_GRID_POINTS} points per parameter, got {points}"
            )));
        }
        Ok(Self { points, refine: true, tolerance: DEFAULT_TOLERANCE })
    }

    /// Turns the golden-section pass on or off.
    pub fn with_refinement(mut self, refine: bool) -> Self {
        self.refine = refine;
        self
    }

    pub fn points(&self) -> usize {
        self.points
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { points: DEFAULT_GRID_POINTS, refine: true, tolerance: DEFAULT_TOLERANCE }
    }
}

/// A point of a scan region in table variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub sin2_theta12: f64,
    pub sin2_theta23: f64,
    pub sin2_theta13: f64,
    pub delta_deg: f64,
}

impl GridPoint {
    fn from_array(a: [f64; 4]) -> Self {
        Self { sin2_theta12: a[0], sin2_theta23: a[1], sin2_theta13: a[2], delta_deg: a[3] }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.sin2_theta12, self.sin2_theta23, self.sin2_theta13, self.delta_deg]
    }

    pub fn params(&self) -> Result<MixingParams> {
        MixingParams::from_sin_squared(self.sin2_theta12, self.sin2_theta23, self.sin2_theta13, self.delta_deg)
    }

    fn lex_less(&self, other: &Self) -> bool {
        self.as_array().partial_cmp(&other.as_array()) == Some(core::cmp::Ordering::Less)
    }
}

/// A box in `(sin^2 theta12, sin^2 theta23, sin^2 theta13, delta_deg)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub bounds: [(f64, f64); 4],
}

impl Region {
    pub fn new(bounds: [(f64, f64); 4]) -> Result<Self> {
        for (i, &(lo, hi)) in bounds.iter().enumerate() {
            let name = super::params::SCAN_PARAMETERS[i];
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::InvalidRange {
                    field: name.into(),
                    reason: format!("[{lo}, {hi}] is not an interval"),
                });
            }
            if i < 3 && (lo < 0.0 || hi > 1.0) {
                return Err(Error::InvalidRange { field: name.into(), reason: "sin^2 outside [0, 1]".into() });
            }
        }
        Ok(Self { bounds })
    }

    pub fn from_ranges(ranges: &ParamRanges, level: SigmaLevel) -> Self {
        let rows = ranges.scan_rows();
        Self {
            bounds: [
                rows[0].interval(level),
                rows[1].interval(level),
                rows[2].interval(level),
                rows[3].interval(level),
            ],
        }
    }

    /// A degenerate box holding one point.
    pub fn point(p: GridPoint) -> Result<Self> {
        let a = p.as_array();
        Self::new([(a[0], a[0]), (a[1], a[1]), (a[2], a[2]), (a[3], a[3])])
    }

    fn axes(&self, points: usize) -> [Vec<f64>; 4] {
        self.bounds.map(|(lo, hi)| axis(lo, hi, points))
    }
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if hi <= lo {
        return alloc::vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    // Pin the last node to `hi` exactly.
    (0..n).map(|i| if i + 1 == n { hi } else { lo + step * i as f64 }).collect()
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`. Stops once the
/// bracket is narrower than `tol * (hi - lo)` and the two interior values
/// differ by less than `tol`. Returns the best point seen, endpoints
/// included, as `(x, f(x))`.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut best_x, mut best_f) = (lo, f(lo));
    if hi <= lo {
        return (best_x, best_f);
    }
    let consider = |x: f64, fx: f64, best_x: &mut f64, best_f: &mut f64| {
        if fx > *best_f || (fx == *best_f && x < *best_x) {
            *best_x = x;
            *best_f = fx;
        }
    };
    let f_hi = f(hi);
    consider(hi, f_hi, &mut best_x, &mut best_f);
    let span = hi - lo;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        consider(c, fc, &mut best_x, &mut best_f);
        consider(d, fd, &mut best_x, &mut best_f);
        if b - a < tol * span && (fc - fd).abs() < tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    (best_x, best_f)
}

/// Coordinate-wise golden-section polish of a grid incumbent.
fn refine<F: FnMut(&GridPoint) -> f64>(
    mut objective: F,
    start: GridPoint,
    start_value: f64,
    region: &Region,
    grid: &GridSpec,
) -> (GridPoint, f64) {
    let mut best = start.as_array();
    let mut best_value = start_value;
    for coord in 0..4 {
        let (lo, hi) = region.bounds[coord];
        if hi <= lo {
            continue;
        }
        let step = (hi - lo) / (grid.points - 1) as f64;
        let a = (best[coord] - step).max(lo);
        let b = (best[coord] + step).min(hi);
        let base = best;
        let (x, fx) = golden_section_max(
            |x| {
                let mut probe = base;
                probe[coord] = x;
                objective(&GridPoint::from_array(probe))
            },
            a,
            b,
            grid.tolerance,
        );
        if fx > best_value {
            best[coord] = x;
            best_value = fx;
        }
    }
    (GridPoint::from_array(best), best_value)
}

/// Runs `visit(point, U)` over the whole grid. Loops are ordered so the
/// rotation products can be shared between neighbouring points.
fn for_each_grid_point<F: FnMut(&GridPoint, &Mat3, &Trig)>(region: &Region, points: usize, mut visit: F) -> usize {
    let [ax12, ax23, ax13, axd] = region.axes(points);
    let trig12: Vec<(f64, f64)> = ax12.iter().map(|&s2| ((1.0 - s2).sqrt(), s2.sqrt())).collect();
    let trig23: Vec<(f64, f64)> = ax23.iter().map(|&s2| ((1.0 - s2).sqrt(), s2.sqrt())).collect();
    let mut count = 0;
    for &s13sq in &ax13 {
        let (c13, s13) = ((1.0 - s13sq).sqrt(), s13sq.sqrt());
        for &delta_deg in &axd {
            let m13 = r13(c13, s13, Complex64::from_polar(1.0, delta_deg.to_radians()));
            for (&s23sq, &(c23, s23)) in ax23.iter().zip(&trig23) {
                let left = r23_times(c23, s23, &m13);
                for (&s12sq, &(c12, s12)) in ax12.iter().zip(&trig12) {
                    let u = times_r12(&left, c12, s12);
                    let point = GridPoint { sin2_theta12: s12sq, sin2_theta23: s23sq, sin2_theta13: s13sq, delta_deg };
                    let trig = Trig { c12, s12, c23, s23, c13, s13 };
                    visit(&point, &u, &trig);
                    count += 1;
                }
            }
        }
    }
    count
}

fn norm_sqr(u: &Mat3) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = u[i][j].norm_sqr();
        }
    }
    out
}

/// Tracks an extreme value with the lexicographic tie rule.
#[derive(Debug, Clone, Copy)]
struct Extremum {
    value: f64,
    point: Option<GridPoint>,
}

impl Extremum {
    fn max() -> Self {
        Self { value: f64::NEG_INFINITY, point: None }
    }

    fn min() -> Self {
        Self { value: f64::INFINITY, point: None }
    }

    fn offer_max(&mut self, value: f64, point: &GridPoint) {
        let better = value > self.value || (value == self.value && self.point.is_some_and(|p| point.lex_less(&p)));
        if better || self.point.is_none() {
            self.value = value;
            self.point = Some(*point);
        }
    }

    fn offer_min(&mut self, value: f64, point: &GridPoint) {
        let better = value < self.value || (value == self.value && self.point.is_some_and(|p| point.lex_less(&p)));
        if better || self.point.is_none() {
            self.value = value;
            self.point = Some(*point);
        }
    }
}

/// Outcome of the `zeta_2 = c13` scan.
#[derive(Debug, Clone, PartialEq)]
pub struct Zeta2Scan {
    /// Both ratio maxima are below one, so `zeta_2 = c13` over the region.
    pub holds: bool,
    pub max_mu2_over_tau3: f64,
    pub argmax_mu2_over_tau3: GridPoint,
    pub max_tau2_over_mu3: f64,
    pub argmax_tau2_over_mu3: GridPoint,
    /// Maxima on the grid before the golden-section pass.
    pub grid_max_mu2_over_tau3: f64,
    pub grid_max_tau2_over_mu3: f64,
    /// Direct check on every grid point: the largest norm of a two-entry
    /// row or column equals `c13`.
    pub zeta2_is_c13_on_grid: bool,
    /// Majorana phases leave the moduli and zetas unchanged at both argmax points.
    pub majorana_invariant: bool,
    pub points_evaluated: usize,
}

/// Maximizes `|u_mu2 / u_tau3|` and `|u_tau2 / u_mu3|` over a confidence
/// region of the fit.
pub fn scan_zeta2(ranges: &ParamRanges, level: SigmaLevel, grid: &GridSpec) -> Result<Zeta2Scan> {
    scan_zeta2_region(&Region::from_ranges(ranges, level), grid)
}

pub fn scan_zeta2_region(region: &Region, grid: &GridSpec) -> Result<Zeta2Scan> {
    let mut mu = Extremum::max();
    let mut tau = Extremum::max();
    let mut zeta2_ok = true;
    let count = for_each_grid_point(region, grid.points, |point, u, trig| {
        let m = norm_sqr(u);
        mu.offer_max(m[1][1] / m[2][2], point);
        tau.offer_max(m[2][1] / m[1][2], point);
        let mut widest = 0.0_f64;
        for r in 0..3 {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                widest = widest.max(m[r][a] + m[r][b]);
                widest = widest.max(m[a][r] + m[b][r]);
            }
        }
        if widest > trig.c13 * trig.c13 + 1e-12 {
            zeta2_ok = false;
        }
    });
    let (mu_point, tau_point) = (mu.point.expect("grid is nonempty"), tau.point.expect("grid is nonempty"));
    let (grid_mu, grid_tau) = (mu.value.sqrt(), tau.value.sqrt());

    let ratio = |point: &GridPoint, f: fn(&[[f64; 3]; 3]) -> f64| -> f64 {
        match point.params() {
            Ok(p) => f(&moduli(&pmns_array(&p))),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let mu_ratio: fn(&[[f64; 3]; 3]) -> f64 = |m| m[1][1] / m[2][2];
    let tau_ratio: fn(&[[f64; 3]; 3]) -> f64 = |m| m[2][1] / m[1][2];
    let ((mu_point, mu_max), (tau_point, tau_max)) = if grid.refine {
        (
            refine(|p| ratio(p, mu_ratio), mu_point, ratio(&mu_point, mu_ratio), region, grid),
            refine(|p| ratio(p, tau_ratio), tau_point, ratio(&tau_point, tau_ratio), region, grid),
        )
    } else {
        ((mu_point, grid_mu), (tau_point, grid_tau))
    };
    let majorana_invariant = magnitudes_independent_of_majorana(&mu_point.params()?)?
        && magnitudes_independent_of_majorana(&tau_point.params()?)?;

    Ok(Zeta2Scan {
        holds: mu_max < 1.0 && tau_max < 1.0,
        max_mu2_over_tau3: mu_max.max(grid_mu),
        argmax_mu2_over_tau3: mu_point,
        max_tau2_over_mu3: tau_max.max(grid_tau),
        argmax_tau2_over_mu3: tau_point,
        grid_max_mu2_over_tau3: grid_mu,
        grid_max_tau2_over_mu3: grid_tau,
        zeta2_is_c13_on_grid: zeta2_ok,
        majorana_invariant,
        points_evaluated: count,
    })
}

/// Closed-form bounds from the region corners: `c13 >= sqrt(1 - max
/// sin^2 theta13)` and `c12 + s12 s13 < sqrt(1 - min sin^2 theta12) +
/// sqrt(max sin^2 theta12 * max sin^2 theta13)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaCertificates {
    pub c13_min: f64,
    pub c12_plus_s12s13_max: f64,
    /// `c13_min > c12_plus_s12s13_max`, which rules out the middle column
    /// as the second-largest modulus.
    pub holds: bool,
}

impl EtaCertificates {
    pub fn for_region(region: &Region) -> Self {
        let (s12_lo, s12_hi) = region.bounds[0];
        let s13_hi = region.bounds[2].1;
        let c13_min = (1.0 - s13_hi).sqrt();
        let other = (1.0 - s12_lo).sqrt() + (s12_hi * s13_hi).sqrt();
        Self { c13_min, c12_plus_s12s13_max: other, holds: c13_min > other }
    }
}

/// Outcome of the scan identifying `eta1 = c12 c13` and
/// `eta2 = c13 max{c23, s23}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaScan {
    /// `|u_e1|` is the strict maximum at every grid point.
    pub eta1_identified: bool,
    /// Smallest `|u_e1| - max(other moduli)` and where it occurs; a
    /// nonpositive value is a counterexample.
    pub eta1_min_margin: f64,
    pub eta1_worst_point: GridPoint,
    /// `max(|u_mu3|, |u_tau3|)` is the second-largest modulus everywhere.
    pub eta2_identified: bool,
    pub eta2_min_margin: f64,
    pub eta2_worst_point: GridPoint,
    /// Ranges of `eta1` and `eta2` over the grid.
    pub eta1_range: (f64, f64),
    pub eta2_range: (f64, f64),
    /// `|u_mu2|^2` and `|u_tau2|^2` stay below
    /// `max{c23, s23}^2 (c12^2 + s12^2 s13^2 + 2 c12 s12 s13)` on the grid.
    pub middle_column_bound_holds: bool,
    pub certificates: EtaCertificates,
    pub points_evaluated: usize,
}

pub fn scan_eta(ranges: &ParamRanges, level: SigmaLevel, grid: &GridSpec) -> Result<EtaScan> {
    scan_eta_region(&Region::from_ranges(ranges, level), grid)
}

pub fn scan_eta_region(region: &Region, grid: &GridSpec) -> Result<EtaScan> {
    let mut margin1 = Extremum::min();
    let mut margin2 = Extremum::min();
    let (mut eta1_lo, mut eta1_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut eta2_lo, mut eta2_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut middle_ok = true;
    let count = for_each_grid_point(region, grid.points, |point, u, t| {
        let m = norm_sqr(u);
        let mut others = 0.0_f64;
        let mut rest = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) == (0, 0) {
                    continue;
                }
                others = others.max(m[i][j]);
                if (i, j) != (1, 2) && (i, j) != (2, 2) {
                    rest = rest.max(m[i][j]);
                }
            }
        }
        let eta1 = m[0][0].sqrt();
        let candidate = m[1][2].max(m[2][2]).sqrt();
        margin1.offer_min(eta1 - others.sqrt(), point);
        margin2.offer_min(candidate - rest.sqrt(), point);
        eta1_lo = eta1_lo.min(eta1);
        eta1_hi = eta1_hi.max(eta1);
        eta2_lo = eta2_lo.min(candidate);
        eta2_hi = eta2_hi.max(candidate);
        let big = t.c23.max(t.s23);
        let cap = big * big * (t.c12 * t.c12 + t.s12 * t.s12 * t.s13 * t.s13 + 2.0 * t.c12 * t.s12 * t.s13);
        if m[1][1] > cap + 1e-15 || m[2][1] > cap + 1e-15 {
            middle_ok = false;
        }
    });
    Ok(EtaScan {
        eta1_identified: margin1.value > 0.0,
        eta1_min_margin: margin1.value,
        eta1_worst_point: margin1.point.expect("grid is nonempty"),
        eta2_identified: margin2.value >= 0.0,
        eta2_min_margin: margin2.value,
        eta2_worst_point: margin2.point.expect("grid is nonempty"),
        eta1_range: (eta1_lo, eta1_hi),
        eta2_range: (eta2_lo, eta2_hi),
        middle_column_bound_holds: middle_ok,
        certificates: EtaCertificates::for_region(region),
        points_evaluated: count,
    })
}
