//! The four commands as functions from inputs to documents.

use numaj_core::bounds::{self, BoundReport};
use numaj_core::mixing::{
    bound_report_at, pmns_moduli, scan_eta, scan_zeta2, GridPoint, GridSpec, MagnitudeMatrix, SigmaLevel,
};
use numaj_core::suite::{run_all, SuiteConfig};
use numaj_core::Efficiency;

use crate::data::ParamsFile;
use crate::document::{Cell, Document};
use crate::CliError;

/// Order of the extra endpoint row that shows the `alpha -> 0` limit.
pub const ALPHA_ENDPOINT: f64 = 0.001;
pub const DEFAULT_ALPHA_GRID: &str = "0.01:2:0.01";
const MAX_ALPHA_POINTS: usize = 1_000_000;

fn key_value() -> Document {
    Document::new(vec!["quantity", "value"])
}

fn kv(doc: &mut Document, key: impl Into<String>, value: impl Into<Cell>) {
    doc.push(vec![Cell::Text(key.into()), value.into()]);
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ReportOptions {
    pub alpha_order: Option<f64>,
    pub kappa_f: Option<f64>,
    pub kappa_m: Option<f64>,
}

/// The bound report at the best-fit point of `params`.
pub fn report(params: &ParamsFile, magnitudes: &MagnitudeMatrix, opts: ReportOptions) -> Result<Document, CliError> {
    let p = params.ranges.best_fit()?;
    let mut r: BoundReport = bound_report_at(&p)?;
    if let Some(alpha) = opts.alpha_order {
        r = r.with_order(alpha)?;
    }
    if opts.kappa_f.is_some() || opts.kappa_m.is_some() {
        let kf = Efficiency::new(opts.kappa_f.unwrap_or(1.0))?;
        let km = Efficiency::new(opts.kappa_m.unwrap_or(1.0))?;
        r = r.with_inefficiency(kf, km)?;
    }
    r.check_invariants()?;

    let mut doc = key_value();
    if let Some(name) = &params.dataset {
        kv(&mut doc, "dataset", name.as_str());
    }
    for (label, v) in
        [("zeta", r.zetas.as_slice()), ("omega", r.omega.as_slice()), ("omega_prime", r.omega_prime.as_slice())]
    {
        for (i, x) in v.iter().enumerate() {
            kv(&mut doc, format!("{label}_{}", i + 1), *x);
        }
    }
    kv(&mut doc, "eta1", r.eta1);
    kv(&mut doc, "eta2", r.eta2);
    if let Some(alpha) = r.alpha {
        kv(&mut doc, "alpha_order", alpha);
    }
    if let Some((kf, km)) = r.kappas {
        kv(&mut doc, "kappa_f", kf);
        kv(&mut doc, "kappa_m", km);
    }
    for (name, value) in &r.bounds {
        kv(&mut doc, name.as_str(), *value);
    }
    for name in [bounds::SHANNON_DIRECT_SUM, bounds::COLES_PIANI] {
        if let Some(pct) = r.improvement_over_mu(name) {
            kv(&mut doc, format!("{name}_over_maassen_uffink_percent"), pct);
        }
    }
    kv(&mut doc, "moduli_within_intervals", magnitudes.contains(&pmns_moduli(&p), 0.0));
    Ok(doc)
}

/// Parses `start:stop:step` into the list of orders. Points are computed
/// as `start + i step` and rounded to 12 decimals so that grids such as
/// `0.01:2:0.01` hit `1.0` exactly.
pub fn parse_alpha_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Input(format!("--alpha `{spec}`: {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(bad("expected start:stop:step"));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(&format!("`{s}` is not a number")));
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(bad("values must be finite"));
    }
    if start <= 0.0 {
        return Err(bad("orders must be positive"));
    }
    if stop < start || step <= 0.0 {
        return Err(bad("need start <= stop and step > 0"));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if n > MAX_ALPHA_POINTS {
        return Err(bad("too many points"));
    }
    Ok((0..n).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12).collect())
}

/// Both Rényi bounds along the order grid, with the `alpha = 0.001` row
/// added in front when the grid does not already contain it.
pub fn figure1(params: &ParamsFile, alphas: &[f64]) -> Result<Document, CliError> {
    let r = bound_report_at(&params.ranges.best_fit()?)?;
    let mut grid = Vec::with_capacity(alphas.len() + 1);
    if !alphas.contains(&ALPHA_ENDPOINT) {
        grid.push(ALPHA_ENDPOINT);
    }
    grid.extend_from_slice(alphas);
    grid.sort_by(f64::total_cmp);
    let mut doc = Document::new(vec!["alpha", "sum_type_bound", "product_type_bound"]);
    for alpha in grid {
        let sum = bounds::renyi_sum_bound(&r.omega, alpha)?;
        let product = bounds::renyi_product_bound(&r.omega_prime, alpha)?;
        doc.push(vec![alpha.into(), sum.into(), product.into()]);
    }
    Ok(doc)
}

/// Outcome of `verify`: the summary and, if any relation failed, the first
/// counterexample.
pub struct Verification {
    pub summary: Document,
    pub counterexample: Option<String>,
}

pub fn verify(config: &SuiteConfig) -> Result<Verification, CliError> {
    let outcomes = run_all(config)?;
    let mut summary = Document::new(vec!["suite", "checks", "violations", "status", "counterexample"]);
    let mut first = None;
    for o in &outcomes {
        let status = if o.passed() { "pass" } else { "FAIL" };
        let cx = o.counterexample.clone().unwrap_or_default();
        if first.is_none() && !o.passed() {
            first = Some(format!("{}: {cx}", o.name));
        }
        summary.push(vec![o.name.into(), o.checks.into(), o.violations.into(), status.into(), cx.into()]);
    }
    Ok(Verification { summary, counterexample: first })
}

fn point_rows(doc: &mut Document, prefix: &str, p: &GridPoint) {
    let names = ["sin2_theta12", "sin2_theta23", "sin2_theta13", "delta_deg"];
    for (name, x) in names.iter().zip(p.as_array()) {
        kv(doc, format!("{prefix}.{name}"), x);
    }
}

/// `zeta_2` and `eta` identification scans over the chosen region.
pub fn scan(params: &ParamsFile, level: SigmaLevel, grid: &GridSpec) -> Result<Document, CliError> {
    let z = scan_zeta2(&params.ranges, level, grid)?;
    let e = scan_eta(&params.ranges, level, grid)?;
    let mut doc = key_value();
    kv(&mut doc, "sigma", level.number() as usize);
    kv(&mut doc, "grid_points", grid.points());
    kv(&mut doc, "zeta2.holds", z.holds);
    kv(&mut doc, "zeta2.max_mu2_over_tau3", z.max_mu2_over_tau3);
    point_rows(&mut doc, "zeta2.argmax_mu2_over_tau3", &z.argmax_mu2_over_tau3);
    kv(&mut doc, "zeta2.max_tau2_over_mu3", z.max_tau2_over_mu3);
    point_rows(&mut doc, "zeta2.argmax_tau2_over_mu3", &z.argmax_tau2_over_mu3);
    kv(&mut doc, "zeta2.grid_max_mu2_over_tau3", z.grid_max_mu2_over_tau3);
    kv(&mut doc, "zeta2.grid_max_tau2_over_mu3", z.grid_max_tau2_over_mu3);
    kv(&mut doc, "zeta2.equals_c13_on_grid", z.zeta2_is_c13_on_grid);
    kv(&mut doc, "zeta2.majorana_invariant", z.majorana_invariant);
    kv(&mut doc, "zeta2.points_evaluated", z.points_evaluated);
    kv(&mut doc, "eta1.identified", e.eta1_identified);
    kv(&mut doc, "eta1.min_margin", e.eta1_min_margin);
    point_rows(&mut doc, "eta1.worst_point", &e.eta1_worst_point);
    kv(&mut doc, "eta1.min", e.eta1_range.0);
    kv(&mut doc, "eta1.max", e.eta1_range.1);
    kv(&mut doc, "eta2.identified", e.eta2_identified);
    kv(&mut doc, "eta2.min_margin", e.eta2_min_margin);
    point_rows(&mut doc, "eta2.worst_point", &e.eta2_worst_point);
    kv(&mut doc, "eta2.min", e.eta2_range.0);
    kv(&mut doc, "eta2.max", e.eta2_range.1);
    kv(&mut doc, "eta.middle_column_bound_holds", e.middle_column_bound_holds);
    kv(&mut doc, "certificate.c13_min", e.certificates.c13_min);
    kv(&mut doc, "certificate.c12_plus_s12s13_max", e.certificates.c12_plus_s12s13_max);
    kv(&mut doc, "certificate.holds", e.certificates.holds);
    kv(&mut doc, "eta.points_evaluated", e.points_evaluated);
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{parse_magnitudes, parse_params, EMBEDDED_MAGNITUDES, EMBEDDED_PARAMS};

    fn defaults() -> (ParamsFile, MagnitudeMatrix) {
        (parse_params(EMBEDDED_PARAMS, "embedded").unwrap(), parse_magnitudes(EMBEDDED_MAGNITUDES, "embedded").unwrap())
    }

    fn lookup(doc: &Document, key: &str) -> Cell {
        doc.rows.iter().find(|r| r[0] == Cell::Text(key.into())).unwrap_or_else(|| panic!("no row {key}"))[1].clone()
    }

    fn num(doc: &Document, key: &str) -> f64 {
        match lookup(doc, key) {
            Cell::Num(x) => x,
            other => panic!("{key}: {other:?}"),
        }
    }

    #[test]
    fn alpha_grid_hits_round_values() {
        let g = parse_alpha_grid(DEFAULT_ALPHA_GRID).unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g[99], 1.0);
        assert_eq!(*g.last().unwrap(), 2.0);
        assert_eq!(parse_alpha_grid("0.5:0.5:1").unwrap(), vec![0.5]);
        for bad in ["1:2", "0:1:0.1", "1:0.5:0.1", "1:2:0", "a:2:0.1", "1:2:-1"] {
            assert!(matches!(parse_alpha_grid(bad), Err(CliError::Input(_))), "{bad}");
        }
    }

    #[test]
    fn report_rows() {
        let (p, m) = defaults();
        let doc = report(&p, &m, ReportOptions::default()).unwrap();
        assert!((num(&doc, "zeta_1") - 0.8213).abs() < 5e-4);
        assert!((num(&doc, "zeta_2") - 0.9887).abs() < 5e-4);
        assert!((num(&doc, "shannon_direct_sum") - 0.5114).abs() < 5e-4);
        assert_eq!(lookup(&doc, "moduli_within_intervals"), Cell::Bool(true));
        assert!(doc.rows.iter().all(|r| r[0] != Cell::Text("alpha_order".into())));

        let opts = ReportOptions { alpha_order: Some(2.0), kappa_f: Some(0.8), kappa_m: None };
        let doc = report(&p, &m, opts).unwrap();
        assert_eq!(num(&doc, "kappa_m"), 1.0);
        assert!(num(&doc, "tsallis_inefficiency_per_detector") <= num(&doc, "tsallis_inefficiency") + 1e-15);
        assert!((num(&doc, "tsallis_direct_sum") - 0.2973).abs() < 5e-4);
    }

    #[test]
    fn inefficiency_below_one_half_is_an_input_error() {
        let (p, m) = defaults();
        let opts = ReportOptions { kappa_f: Some(0.4), ..ReportOptions::default() };
        assert!(matches!(report(&p, &m, opts), Err(CliError::Input(_))));
    }

    #[test]
    fn figure1_includes_the_endpoint_once() {
        let (p, _) = defaults();
        let doc = figure1(&p, &[0.001, 0.5, 1.0]).unwrap();
        assert_eq!(doc.rows.len(), 3);
        let doc = figure1(&p, &[1.0, 0.5]).unwrap();
        assert_eq!(doc.rows[0][0], Cell::Num(0.001));
        assert_eq!(doc.rows[1][0], Cell::Num(0.5));
    }
}
