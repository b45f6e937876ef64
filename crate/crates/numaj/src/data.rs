//! Parameter and magnitude files.
//!
//! Both are TOML. A parameter file is a list of `[[parameter]]` tables:
//!
//! ```toml
//! [[parameter]]
//! name = "sin2_theta12"
//! unit = "dimensionless"
//! bfp = 0.310
//! sigma_plus = 0.013
//! sigma_minus = 0.012
//! three_sigma_low = 0.275
//! three_sigma_high = 0.350
//! ```
//!
//! It must contain `sin2_theta12`, `sin2_theta23`, `sin2_theta13` (unit
//! `dimensionless`) and `delta` (unit `degree`). Other rows are kept as
//! informational extras. A magnitude file has a `[rows]` table with keys
//! `e`, `mu`, `tau`, each a list of three `[low, high]` pairs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use numaj_core::mixing::{Interval, MagnitudeMatrix, ParamRange, ParamRanges, Unit, SCAN_PARAMETERS};
use serde::Deserialize;

use crate::CliError;

/// Environment variable naming the directory searched for the default files.
pub const DATA_DIR_ENV: &str = "NUMAJ_DATA_DIR";
pub const PARAMS_FILE_NAME: &str = "nufit_2018_11_normal.toml";
pub const MAGNITUDES_FILE_NAME: &str = "nufit_2018_11_magnitudes.toml";

pub const EMBEDDED_PARAMS: &str = include_str!("../data/nufit_2018_11_normal.toml");
pub const EMBEDDED_MAGNITUDES: &str = include_str!("../data/nufit_2018_11_magnitudes.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsDoc {
    #[serde(default)]
    dataset: Option<String>,
    parameter: Vec<ParamRow>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamRow {
    name: String,
    unit: UnitName,
    bfp: f64,
    sigma_plus: f64,
    sigma_minus: f64,
    three_sigma_low: f64,
    three_sigma_high: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum UnitName {
    Dimensionless,
    Degree,
}

impl From<UnitName> for Unit {
    fn from(u: UnitName) -> Self {
        match u {
            UnitName::Dimensionless => Unit::Dimensionless,
            UnitName::Degree => Unit::Degree,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MagnitudesDoc {
    #[serde(default)]
    dataset: Option<String>,
    rows: MagnitudeRows,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MagnitudeRows {
    e: [[f64; 2]; 3],
    mu: [[f64; 2]; 3],
    tau: [[f64; 2]; 3],
}

/// A parsed parameter file together with its dataset label.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamsFile {
    pub dataset: Option<String>,
    pub ranges: ParamRanges,
}

fn input(origin: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{origin}: {msg}"))
}

/// Parses a parameter file. `origin` labels error messages.
pub fn parse_params(text: &str, origin: &str) -> Result<ParamsFile, CliError> {
    let doc: ParamsDoc = toml::from_str(text).map_err(|e| input(origin, e))?;
    let mut by_name: BTreeMap<String, ParamRange> = BTreeMap::new();
    let mut order = Vec::new();
    for row in doc.parameter {
        let range = ParamRange::new(
            &row.name,
            row.bfp,
            row.sigma_plus,
            row.sigma_minus,
            row.three_sigma_low,
            row.three_sigma_high,
            row.unit.into(),
        )
        .map_err(|e| input(origin, e))?;
        if by_name.insert(row.name.clone(), range).is_some() {
            return Err(input(origin, format!("parameter `{}` appears twice", row.name)));
        }
        order.push(row.name);
    }
    let mut take =
        |name: &str| by_name.remove(name).ok_or_else(|| input(origin, format!("missing parameter `{name}`")));
    let [s12, s23, s13, delta] = SCAN_PARAMETERS;
    let (s12, s23, s13, delta) = (take(s12)?, take(s23)?, take(s13)?, take(delta)?);
    let extra = order.iter().filter_map(|n| by_name.remove(n)).collect();
    let ranges = ParamRanges::new(s12, s23, s13, delta, extra).map_err(|e| input(origin, e))?;
    Ok(ParamsFile { dataset: doc.dataset, ranges })
}

/// Parses a magnitude-interval file.
pub fn parse_magnitudes(text: &str, origin: &str) -> Result<MagnitudeMatrix, CliError> {
    let doc: MagnitudesDoc = toml::from_str(text).map_err(|e| input(origin, e))?;
    let _ = doc.dataset;
    let mut cells = [[Interval { low: 0.0, high: 0.0 }; 3]; 3];
    for (r, (flavor, row)) in [("e", doc.rows.e), ("mu", doc.rows.mu), ("tau", doc.rows.tau)].into_iter().enumerate() {
        for (c, [low, high]) in row.into_iter().enumerate() {
            cells[r][c] = Interval::new(low, high).map_err(|e| input(origin, format!("rows.{flavor}[{c}]: {e}")))?;
        }
    }
    MagnitudeMatrix::new(cells).map_err(|e| input(origin, e))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// Where a default file comes from: an explicit path, the data directory
/// from the environment, or the copy built into the binary.
fn resolve(explicit: Option<&Path>, file_name: &str) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    std::env::var_os(DATA_DIR_ENV).map(|dir| Path::new(&dir).join(file_name))
}

pub fn load_params(explicit: Option<&Path>) -> Result<ParamsFile, CliError> {
    match resolve(explicit, PARAMS_FILE_NAME) {
        Some(path) => parse_params(&read(&path)?, &path.display().to_string()),
        None => parse_params(EMBEDDED_PARAMS, "embedded parameters"),
    }
}

pub fn load_magnitudes(explicit: Option<&Path>) -> Result<MagnitudeMatrix, CliError> {
    match resolve(explicit, MAGNITUDES_FILE_NAME) {
        Some(path) => parse_magnitudes(&read(&path)?, &path.display().to_string()),
        None => parse_magnitudes(EMBEDDED_MAGNITUDES, "embedded magnitudes"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_files_match_the_built_in_tables() {
        let p = parse_params(EMBEDDED_PARAMS, "embedded").unwrap();
        assert_eq!(p.ranges, ParamRanges::nufit_2018_normal());
        assert_eq!(parse_magnitudes(EMBEDDED_MAGNITUDES, "embedded").unwrap(), MagnitudeMatrix::nufit_2018_normal());
    }

    fn message(r: Result<ParamsFile, CliError>) -> String {
        match r {
            Err(CliError::Input(m)) => m,
            other => panic!("expected an input error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_offending_field() {
        let swapped = EMBEDDED_PARAMS.replace("three_sigma_low = 0.02044", "three_sigma_low = 0.0230");
        let m = message(parse_params(&swapped, "f.toml"));
        assert!(m.starts_with("f.toml:") && m.contains("sin2_theta13"), "{m}");

        let missing = EMBEDDED_PARAMS.replace("name = \"delta\"", "name = \"dcp\"");
        assert!(message(parse_params(&missing, "f.toml")).contains("missing parameter `delta`"));

        let unit = EMBEDDED_PARAMS.replace("unit = \"dimensionless\"\nbfp = 0.310", "unit = \"degree\"\nbfp = 0.310");
        let m = message(parse_params(&unit, "f.toml"));
        assert!(m.contains("sin2_theta12") && m.contains("dimensionless"), "{m}");

        let typo = EMBEDDED_PARAMS.replacen("sigma_plus", "sigma_pluss", 1);
        assert!(message(parse_params(&typo, "f.toml")).contains("sigma_pluss"));
    }

    #[test]
    fn bad_magnitude_cell_is_located() {
        let bad = EMBEDDED_MAGNITUDES.replace("[0.143, 0.156]", "[0.156, 0.143]");
        match parse_magnitudes(&bad, "m.toml") {
            Err(CliError::Input(m)) => assert!(m.contains("rows.e[2]"), "{m}"),
            other => panic!("{other:?}"),
        }
    }
}
