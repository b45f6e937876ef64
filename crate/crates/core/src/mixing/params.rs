use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

const TAU: f64 = 2.0 * core::f64::consts::PI;
const HALF_PI: f64 = core::f64::consts::FRAC_PI_2;

/// Mixing angles and phases, all in radians.
///
/// Angles lie in `[0, pi/2]`; phases are normalized into `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingParams {
    theta12: f64,
    theta23: f64,
    theta13: f64,
    delta: f64,
    phi1: f64,
    phi2: f64,
}

pub(crate) fn normalize_phase(x: f64) -> f64 {
    let r = x % TAU;
    let r = if r < 0.0 { r + TAU } else { r };
    // `x % TAU` can round up to exactly TAU for tiny negative x.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl MixingParams {
    pub fn new(theta12: f64, theta23: f64, theta13: f64, delta: f64) -> Result<Self> {
        for (name, angle) in [("theta12", theta12), ("theta23", theta23), ("theta13", theta13)] {
            if !(0.0..=HALF_PI).contains(&angle) {
                return Err(Error::Argument(format!("{name} = {angle} rad outside [0, pi/2]")));
            }
        }
        if !delta.is_finite() {
            return Err(Error::Argument(format!("delta = {delta} is not finite")));
        }
        Ok(Self { theta12, theta23, theta13, delta: normalize_phase(delta), phi1: 0.0, phi2: 0.0 })
    }

    /// From the `sin^2` of the three angles (the global-fit variables) and
    /// the Dirac phase in degrees. Degrees beyond 360 wrap around.
    pub fn from_sin_squared(s12sq: f64, s23sq: f64, s13sq: f64, delta_deg: f64) -> Result<Self> {
        let angle = |name: &str, s2: f64| {
            if !(0.0..=1.0).contains(&s2) {
                return Err(Error::Argument(format!("sin^2 {name} = {s2} outside [0, 1]")));
            }
            Ok(s2.sqrt().asin())
        };
        Self::new(angle("theta12", s12sq)?, angle("theta23", s23sq)?, angle("theta13", s13sq)?, delta_deg.to_radians())
    }

    /// Best-fit point of the bundled normal-ordering global fit.
    pub fn nufit_best_fit() -> Self {
        let r = ParamRanges::nufit_2018_normal();
        Self::from_sin_squared(r.sin2_theta12.bfp, r.sin2_theta23.bfp, r.sin2_theta13.bfp, r.delta.bfp)
            .expect("bundled best fit is valid")
    }

    /// Adds Majorana phases (radians).
    pub fn with_majorana(mut self, phi1: f64, phi2: f64) -> Result<Self> {
        if !phi1.is_finite() || !phi2.is_finite() {
            return Err(Error::Argument("Majorana phases must be finite".into()));
        }
        self.phi1 = normalize_phase(phi1);
        self.phi2 = normalize_phase(phi2);
        Ok(self)
    }

    pub fn theta12(&self) -> f64 {
        self.theta12
    }

    pub fn theta23(&self) -> f64 {
        self.theta23
    }

    pub fn theta13(&self) -> f64 {
        self.theta13
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn phi1(&self) -> f64 {
        self.phi1
    }

    pub fn phi2(&self) -> f64 {
        self.phi2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Dimensionless,
    Degree,
}

impl Unit {
    pub fn as_str(self) -> &'static str {
        match self {
            Unit::Dimensionless => "dimensionless",
            Unit::Degree => "degree",
        }
    }
}

/// Which confidence region to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaLevel {
    One,
    Three,
}

impl SigmaLevel {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(SigmaLevel::One),
            3 => Ok(SigmaLevel::Three),
            _ => Err(Error::Argument(format!("sigma level {n} is not 1 or 3"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            SigmaLevel::One => 1,
            SigmaLevel::Three => 3,
        }
    }
}

/// One row of a global-fit table: best fit, asymmetric 1-sigma errors and
/// the 3-sigma interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamRange {
    pub name: String,
    pub bfp: f64,
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    pub three_sigma_low: f64,
    pub three_sigma_high: f64,
    pub unit: Unit,
}

impl ParamRange {
    pub fn new(
        name: &str,
        bfp: f64,
        sigma_plus: f64,
        sigma_minus: f64,
        three_sigma_low: f64,
        three_sigma_high: f64,
        unit: Unit,
    ) -> Result<Self> {
        let r = Self { name: name.to_string(), bfp, sigma_plus, sigma_minus, three_sigma_low, three_sigma_high, unit };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidRange { field: self.name.clone(), reason });
        let values = [self.bfp, self.sigma_plus, self.sigma_minus, self.three_sigma_low, self.three_sigma_high];
        if values.iter().any(|v| !v.is_finite()) {
            return bad("non-finite value".into());
        }
        if self.sigma_plus < 0.0 || self.sigma_minus < 0.0 {
            return bad("negative 1-sigma error".into());
        }
        let (lo1, hi1) = self.interval(SigmaLevel::One);
        let chain = [self.three_sigma_low, lo1, self.bfp, hi1, self.three_sigma_high];
        if chain.windows(2).any(|w| w[0] > w[1]) {
            return bad(format!(
                "expected 3sigma_low <= bfp - sigma <= bfp <= bfp + sigma <= 3sigma_high, got {} <= {lo1} <= {} <= {hi1} <= {}",
                self.three_sigma_low, self.bfp, self.three_sigma_high
            ));
        }
        if self.unit == Unit::Dimensionless && (self.three_sigma_low < 0.0 || self.three_sigma_high > 1.0) {
            return bad("a sin^2 value must lie in [0, 1]".into());
        }
        Ok(())
    }

    pub fn interval(&self, level: SigmaLevel) -> (f64, f64) {
        match level {
            SigmaLevel::One => (self.bfp - self.sigma_minus, self.bfp + self.sigma_plus),
            SigmaLevel::Three => (self.three_sigma_low, self.three_sigma_high),
        }
    }
}

/// Names of the four parameters that define a scan region.
pub const SCAN_PARAMETERS: [&str; 4] = ["sin2_theta12", "sin2_theta23", "sin2_theta13", "delta"];

/// Ranges for the scan parameters, plus any further informational rows
/// (for instance the angles in degrees).
#[derive(Debug, Clone, PartialEq)]
pub struct ParamRanges {
    pub sin2_theta12: ParamRange,
    pub sin2_theta23: ParamRange,
    pub sin2_theta13: ParamRange,
    /// Dirac phase, in degrees.
    pub delta: ParamRange,
    pub extra: Vec<ParamRange>,
}

impl ParamRanges {
    pub fn new(
        sin2_theta12: ParamRange,
        sin2_theta23: ParamRange,
        sin2_theta13: ParamRange,
        delta: ParamRange,
        extra: Vec<ParamRange>,
    ) -> Result<Self> {
        let expected = [
            (&sin2_theta12, SCAN_PARAMETERS[0], Unit::Dimensionless),
            (&sin2_theta23, SCAN_PARAMETERS[1], Unit::Dimensionless),
            (&sin2_theta13, SCAN_PARAMETERS[2], Unit::Dimensionless),
            (&delta, SCAN_PARAMETERS[3], Unit::Degree),
        ];
        for (range, name, unit) in expected {
            if range.name != name {
                return Err(Error::InvalidRange {
                    field: range.name.clone(),
                    reason: format!("expected parameter `{name}`"),
                });
            }
            if range.unit != unit {
                return Err(Error::InvalidRange {
                    field: range.name.clone(),
                    reason: format!("unit must be {}", unit.as_str()),
                });
            }
            range.validate()?;
        }
        for range in &extra {
            range.validate()?;
        }
        Ok(Self { sin2_theta12, sin2_theta23, sin2_theta13, delta, extra })
    }

    /// NuFit 4.0 (November 2018), normal ordering, with Super-Kamiokande
    /// atmospheric data.
    pub fn nufit_2018_normal() -> Self {
        let row = |name, bfp, plus, minus, lo, hi, unit| ParamRange {
            name: String::from(name),
            bfp,
            sigma_plus: plus,
            sigma_minus: minus,
            three_sigma_low: lo,
            three_sigma_high: hi,
            unit,
        };
        use Unit::{Degree, Dimensionless};
        Self {
            sin2_theta12: row("sin2_theta12", 0.310, 0.013, 0.012, 0.275, 0.350, Dimensionless),
            sin2_theta23: row("sin2_theta23", 0.582, 0.015, 0.019, 0.428, 0.624, Dimensionless),
            sin2_theta13: row("sin2_theta13", 0.02240, 0.00065, 0.00066, 0.02044, 0.02437, Dimensionless),
            delta: row("delta", 217.0, 40.0, 28.0, 135.0, 366.0, Degree),
            extra: alloc::vec![
                row("theta12", 33.82, 0.78, 0.76, 31.61, 36.27, Degree),
                row("theta23", 49.7, 0.9, 1.1, 40.9, 52.2, Degree),
                row("theta13", 8.61, 0.12, 0.13, 8.22, 8.98, Degree),
            ],
        }
    }

    pub fn scan_rows(&self) -> [&ParamRange; 4] {
        [&self.sin2_theta12, &self.sin2_theta23, &self.sin2_theta13, &self.delta]
    }

    /// The best-fit point as mixing parameters.
    pub fn best_fit(&self) -> Result<MixingParams> {
        MixingParams::from_sin_squared(
            self.sin2_theta12.bfp,
            self.sin2_theta23.bfp,
            self.sin2_theta13.bfp,
            self.delta.bfp,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

impl Interval {
    pub fn new(low: f64, high: f64) -> Result<Self> {
        if !(0.0 <= low && low <= high && high <= 1.0) {
            return Err(Error::InvalidRange {
                field: "magnitude".into(),
                reason: format!("[{low}, {high}] is not inside [0, 1]"),
            });
        }
        Ok(Self { low, high })
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.low - slack <= x && x <= self.high + slack
    }
}

/// Published 3-sigma intervals for `|u_beta i|`, rows `e, mu, tau`,
/// columns `1, 2, 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeMatrix {
    pub cells: [[Interval; 3]; 3],
}

impl MagnitudeMatrix {
    pub fn new(cells: [[Interval; 3]; 3]) -> Result<Self> {
        for row in &cells {
            for cell in row {
                Interval::new(cell.low, cell.high)?;
            }
        }
        Ok(Self { cells })
    }

    pub fn nufit_2018_normal() -> Self {
        let i = |low, high| Interval { low, high };
        Self {
            cells: [
                [i(0.797, 0.842), i(0.518, 0.585), i(0.143, 0.156)],
                [i(0.235, 0.484), i(0.458, 0.671), i(0.647, 0.781)],
                [i(0.304, 0.531), i(0.497, 0.699), i(0.607, 0.747)],
            ],
        }
    }

    /// Whether every modulus lies in its interval, up to `slack`.
    pub fn contains(&self, moduli: &[[f64; 3]; 3], slack: f64) -> bool {
        (0..3).all(|r| (0..3).all(|c| self.cells[r][c].contains(moduli[r][c], slack)))
    }
}
