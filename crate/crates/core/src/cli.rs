//! Run configuration and the command implementations behind the binary.
//!
//! Configuration is TOML with the sections `[set]`, `[schedule]`, `[domain]`,
//! `[quadrature]` and `[suite]`; every key can be overridden with
//! `section.key=value`. Commands write comma-separated files with one header
//! row into the output directory. Values that cannot be evaluated are written
//! as the token `masked`; floats use the shortest representation that parses
//! back to the same bits.

use std::f64::consts::{E, TAU};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{validate_schedule, CoefficientSchedule, SingularPotential, DEFAULT_EXCLUSION};
use crate::quadrature::{default_dominating, ExcisionPolicy};
use crate::singular_set::{CompactSetSpec, Point2};
use crate::solution::{Fault, FrehseSolution, ProbeFrame};
use crate::verify::{default_set, run_verification_suite, SuiteConfig, SuiteReport, SuiteSelection};

/// Number of terms used when neither `n_terms` nor `tail_target` is given.
pub const DEFAULT_TERMS: usize = 64;

/// Grid points closer than this to a singular point are masked.
pub const MASK_DISTANCE: f64 = 1e-8;

pub const MASKED: &str = "masked";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub out: PathBuf,
    pub set: CompactSetSpec,
    pub schedule: ScheduleSection,
    pub domain: DomainSection,
    pub quadrature: QuadratureSection,
    pub suite: SuiteSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            out: PathBuf::from("out"),
            set: default_set(),
            schedule: ScheduleSection::default(),
            domain: DomainSection::default(),
            quadrature: QuadratureSection::default(),
            suite: SuiteSection::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScheduleSection {
    /// Geometric ratio q, a_i = q^(i-1).
    pub ratio: f64,
    /// Explicit coefficients; replaces `ratio` when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_target: Option<f64>,
}

impl Default for ScheduleSection {
    fn default() -> Self {
        Self {
            ratio: 0.25,
            values: None,
            n_terms: None,
            tail_target: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DomainSection {
    pub radius: f64,
}

impl Default for DomainSection {
    fn default() -> Self {
        Self { radius: 0.05 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureSection {
    pub eps0: f64,
    pub levels: usize,
    pub target_rel_err: f64,
    pub max_cells: usize,
    pub parallel: bool,
}

impl Default for QuadratureSection {
    fn default() -> Self {
        let p = ExcisionPolicy::default();
        Self {
            eps0: p.eps0,
            levels: p.levels,
            target_rel_err: p.target_rel_err,
            max_cells: p.max_cells,
            parallel: p.parallel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteSection {
    pub identities: bool,
    pub classical: bool,
    pub seminorm: bool,
    pub weak: bool,
    pub zeta: bool,
    pub convergence: bool,
    pub lemma1: bool,
    pub probe: bool,
    pub schedule: bool,
    pub samples: usize,
    pub classical_samples: usize,
    pub zeta_max_k: u32,
    pub split_levels: Vec<u32>,
    pub n_list: Vec<usize>,
    pub b_count: usize,
}

impl Default for SuiteSection {
    fn default() -> Self {
        let s = SuiteSelection::default();
        Self {
            identities: s.identities,
            classical: s.classical,
            seminorm: s.seminorm,
            weak: s.weak,
            zeta: s.zeta,
            convergence: s.convergence,
            lemma1: s.lemma1,
            probe: s.probe,
            schedule: s.schedule,
            samples: 10_000,
            classical_samples: 1_000,
            zeta_max_k: 30,
            split_levels: vec![2, 3],
            n_list: vec![4, 8, 16, 32, 64],
            b_count: 64,
        }
    }
}

fn config_err(field: &str, e: impl std::fmt::Display) -> Error {
    Error::Config(format!("{field}: {e}"))
}

/// Sets `path` (dotted) in `table` to `raw`, parsed as a TOML value when
/// possible and as a string otherwise.
fn apply_override(table: &mut toml::Table, spec: &str) -> Result<()> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override '{spec}' is not of the form section.key=value")))?;
    let value = match format!("v = {raw}").parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").expect("parsed key"),
        Err(_) => toml::Value::String(raw.to_string()),
    };
    let keys: Vec<&str> = path.trim().split('.').collect();
    let (last, parents) = keys.split_last().expect("split yields one item");
    let mut cur = table;
    for k in parents {
        let entry = cur
            .entry(k.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        cur = entry
            .as_table_mut()
            .ok_or_else(|| Error::Config(format!("override '{path}': '{k}' is not a section")))?;
    }
    cur.insert(last.to_string(), value);
    Ok(())
}

/// Prefixes a deserialization error with `section.key` when its span points
/// at a key-value line.
fn located(text: &str, e: &toml::de::Error) -> Error {
    let Some(span) = e.span() else {
        return Error::Config(e.message().to_string());
    };
    let before = &text[..span.start.min(text.len())];
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let line = text[line_start..].lines().next().unwrap_or("");
    let Some((key, _)) = line.split_once('=') else {
        return Error::Config(e.message().to_string());
    };
    let section = before[..line_start]
        .lines()
        .rev()
        .find_map(|l| l.trim().strip_prefix('[').and_then(|l| l.strip_suffix(']')));
    let key = key.trim();
    let path = match section {
        Some(s) => format!("{s}.{key}"),
        None => key.to_string(),
    };
    config_err(&path, e.message())
}

impl RunConfig {
    /// Parses TOML text, applies overrides and validates.
    pub fn from_toml_str(text: &str, overrides: &[String]) -> Result<Self> {
        let mut table: toml::Table = text.parse().map_err(|e| Error::Config(format!("{e}")))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        // re-read from text so errors carry a position that names the key
        let text = toml::to_string(&table).map_err(|e| Error::Config(format!("{e}")))?;
        let cfg: RunConfig = toml::from_str(&text).map_err(|e| located(&text, &e))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads `path` (or starts from the defaults) and applies overrides.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let text = match path {
            Some(p) => fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
            None => String::new(),
        };
        Self::from_toml_str(&text, overrides)
    }

    pub fn validate(&self) -> Result<()> {
        // TOML integers are signed 64-bit
        if self.seed > i64::MAX as u64 {
            return Err(config_err("seed", format!("must be at most {}", i64::MAX)));
        }
        let r = self.domain.radius;
        if !(r > 0.0 && r < 1.0 / E) {
            return Err(config_err("domain.radius", Error::RadiusTooLarge(r)));
        }
        self.schedule()?;
        if self.schedule.n_terms.is_some() && self.schedule.tail_target.is_some() {
            return Err(Error::Config(
                "schedule: give at most one of n_terms and tail_target".into(),
            ));
        }
        if self.schedule.n_terms == Some(0) {
            return Err(config_err("schedule.n_terms", Error::ZeroCount));
        }
        if let Some(t) = self.schedule.tail_target {
            if !(t > 0.0) {
                return Err(config_err("schedule.tail_target", "must be positive"));
            }
        }
        self.policy()
            .validate()
            .map_err(|e| config_err("quadrature", e))?;
        self.set.validate().map_err(|e| config_err("set", e))?;
        if self.suite.n_list.len() < 2 || self.suite.n_list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(config_err("suite.n_list", "must be increasing with at least two entries"));
        }
        Ok(())
    }

    pub fn schedule(&self) -> Result<CoefficientSchedule> {
        match &self.schedule.values {
            Some(v) => {
                let s = CoefficientSchedule::Explicit { values: v.clone() };
                validate_schedule(&s).map_err(|e| config_err("schedule.values", e))?;
                Ok(s)
            }
            None => {
                let q = self.schedule.ratio;
                if !(q > 0.0 && q < 1.0) {
                    return Err(config_err("schedule.ratio", Error::RatioOutOfRange(q)));
                }
                CoefficientSchedule::geometric(q).map_err(|e| config_err("schedule.ratio", e))
            }
        }
    }

    pub fn policy(&self) -> ExcisionPolicy {
        let q = &self.quadrature;
        ExcisionPolicy {
            eps0: q.eps0,
            levels: q.levels,
            target_rel_err: q.target_rel_err,
            max_cells: q.max_cells,
            parallel: q.parallel,
            ..ExcisionPolicy::default()
        }
    }

    /// The potential with the configured truncation.
    pub fn potential(&self) -> Result<SingularPotential> {
        let schedule = self.schedule()?;
        let r = self.domain.radius;
        let n = match (self.schedule.n_terms, self.schedule.tail_target) {
            (Some(n), _) => n,
            (None, Some(target)) => {
                let probe = SingularPotential::from_spec(&self.set, 1, schedule.clone(), r)?;
                probe.truncation_index(target, DEFAULT_EXCLUSION)?
            }
            (None, None) => DEFAULT_TERMS,
        };
        SingularPotential::from_spec(&self.set, n, schedule, r)
    }

    pub fn solution(&self, fault: Option<Fault>) -> Result<FrehseSolution> {
        let p = self.potential()?;
        let n = p.len();
        Ok(FrehseSolution::new(p, n)?.with_fault(fault))
    }

    pub fn suite_config(&self, solution: FrehseSolution) -> Result<SuiteConfig> {
        let mut cfg = SuiteConfig::new(solution)?;
        let s = &self.suite;
        cfg.policy = self.policy();
        cfg.seed = self.seed;
        cfg.samples = s.samples;
        cfg.classical_samples = s.classical_samples;
        cfg.zeta_max_k = s.zeta_max_k;
        cfg.split_levels = s.split_levels.clone();
        cfg.n_list = s.n_list.clone();
        cfg.b_count = s.b_count;
        cfg.selection = SuiteSelection {
            identities: s.identities,
            classical: s.classical,
            seminorm: s.seminorm,
            weak: s.weak,
            zeta: s.zeta,
            convergence: s.convergence,
            lemma1: s.lemma1,
            probe: s.probe,
            schedule: s.schedule,
        };
        Ok(cfg)
    }

    /// The effective configuration as TOML; parses back to an equal config.
    pub fn echo(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// Shortest round-trip text for a float.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

struct Csv {
    writer: csv::Writer<Vec<u8>>,
}

impl Csv {
    fn new(header: &[&str]) -> Self {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Self { writer }
    }

    fn row(&mut self, cells: &[String]) {
        self.writer.write_record(cells).expect("in-memory write");
    }

    fn write(self, dir: &Path, name: &str) -> Result<PathBuf> {
        let path = dir.join(name);
        let bytes = self.writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        fs::write(&path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))
}

/// Writes enumeration.csv, schedule.csv and constants.csv.
pub fn cmd_construct(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(out)?;
    let potential = cfg.potential()?;
    let schedule = cfg.schedule()?;
    let report = validate_schedule(&schedule)?;
    let dom = default_dominating(&potential);
    let shift = potential.translation();
    let radii = &potential.enumeration().density_radii;

    let mut en = Csv::new(&["index", "x", "y", "x_input", "y_input", "coefficient", "density_radius"]);
    for (i, (p, a)) in potential.points().iter().zip(potential.coefficients()).enumerate() {
        en.row(&[
            (i + 1).to_string(),
            fmt_f64(p.x),
            fmt_f64(p.y),
            fmt_f64(p.x - shift.x),
            fmt_f64(p.y - shift.y),
            fmt_f64(*a),
            radii.get(i).map_or_else(|| MASKED.to_string(), |d| fmt_f64(*d)),
        ]);
    }

    let n = potential.len();
    let mut sc = Csv::new(&["series", "exponent", "closed_form", "partial_sum", "terms"]);
    for (name, e, closed) in [
        ("sum_a_half", 0.5, report.c_half),
        ("sum_a_third", 1.0 / 3.0, report.c_third),
        ("sum_a_beta", 0.25, report.c_beta),
    ] {
        let partial = crate::numeric::compensated_sum(potential.coefficients().iter().map(|a| a.powf(e)));
        sc.row(&[name.into(), fmt_f64(e), fmt_f64(closed), fmt_f64(partial), n.to_string()]);
    }

    let mut co = Csv::new(&["name", "value"]);
    let rows: [(&str, String); 12] = [
        ("beta", fmt_f64(dom.beta)),
        ("holder_q", fmt_f64(dom.holder_q)),
        ("C", fmt_f64(dom.c)),
        ("lambda", fmt_f64(dom.lambda)),
        ("C_tilde", fmt_f64(dom.c_tilde)),
        ("coefficient_exponent", fmt_f64(dom.coefficient_exponent())),
        ("log_exponent", fmt_f64(dom.log_exponent())),
        ("radius", fmt_f64(potential.radius())),
        ("n_terms", n.to_string()),
        ("exhaustive", potential.is_complete().to_string()),
        ("translation_x", fmt_f64(shift.x)),
        ("translation_y", fmt_f64(shift.y)),
    ];
    for (k, v) in rows {
        co.row(&[k.into(), v]);
    }
    Ok(vec![
        en.write(out, "enumeration.csv")?,
        sc.write(out, "schedule.csv")?,
        co.write(out, "constants.csv")?,
    ])
}

/// Writes grid.csv: a `grid` x `grid` node lattice on [-r, r]^2 restricted
/// to the open ball.
pub fn cmd_sample(cfg: &RunConfig, grid: usize, out: &Path, fault: Option<Fault>) -> Result<PathBuf> {
    if grid < 2 {
        return Err(Error::InvalidArgument(format!("grid must be at least 2 (got {grid})")));
    }
    ensure_dir(out)?;
    let sol = cfg.solution(fault)?;
    let r = sol.radius();
    let mut csv = Csv::new(&["x1", "x2", "u1", "u2", "grad_sq", "F1", "F2"]);
    let coord = |k: usize| -r + 2.0 * r * k as f64 / (grid - 1) as f64;
    for i in 0..grid {
        for j in 0..grid {
            let x = Point2::new(coord(i), coord(j));
            if x.norm() >= r {
                continue;
            }
            let mut cells = vec![fmt_f64(x.x), fmt_f64(x.y)];
            if sol.points().iter().any(|p| p.dist(x) < MASK_DISTANCE) {
                cells.extend(std::iter::repeat_n(MASKED.to_string(), 5));
            } else {
                let u = sol.eval_u(x)?;
                let g = sol.grad_norm_sq(x)?;
                let f = sol.eval_F(x)?;
                cells.extend([u[0], u[1], g, f.f1, f.f2].map(fmt_f64));
            }
            csv.row(&cells);
        }
    }
    csv.write(out, "grid.csv")
}

/// Summary of a probe run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeSummary {
    pub index: usize,
    pub t_lo: f64,
    pub t_hi: f64,
    pub samples: usize,
    pub min_u1: f64,
    pub max_u1: f64,
    pub min_u2: f64,
    pub max_u2: f64,
    pub warning: Option<String>,
}

/// Writes probe.csv and probe_summary.csv for the log-log radial probe.
pub fn cmd_probe(
    cfg: &RunConfig,
    index: usize,
    t_lo: f64,
    t_hi: f64,
    samples: usize,
    out: &Path,
) -> Result<ProbeSummary> {
    if !(t_lo >= 1.0) {
        return Err(Error::ProbeParameter(t_lo));
    }
    if !(t_hi > t_lo && t_hi.is_finite()) {
        return Err(Error::InvalidArgument(format!("t range {t_lo}:{t_hi} is empty")));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples".into()));
    }
    ensure_dir(out)?;
    let sol = cfg.solution(None)?;
    let mut csv = Csv::new(&["t", "u1", "u2", "rest_error_bound"]);
    let mut s = ProbeSummary {
        index,
        t_lo,
        t_hi,
        samples,
        min_u1: f64::INFINITY,
        max_u1: f64::NEG_INFINITY,
        min_u2: f64::INFINITY,
        max_u2: f64::NEG_INFINITY,
        warning: None,
    };
    for k in 0..samples {
        let t = t_lo + (t_hi - t_lo) * k as f64 / (samples - 1) as f64;
        let v = sol.radial_probe(ProbeFrame { index, t, theta: 0.0 })?;
        s.min_u1 = s.min_u1.min(v.u[0]);
        s.max_u1 = s.max_u1.max(v.u[0]);
        s.min_u2 = s.min_u2.min(v.u[1]);
        s.max_u2 = s.max_u2.max(v.u[1]);
        csv.row(&[fmt_f64(t), fmt_f64(v.u[0]), fmt_f64(v.u[1]), fmt_f64(v.rest_error_bound)]);
    }
    if t_hi - t_lo < TAU {
        s.warning = Some("window shorter than 2*pi; extrema of the oscillation are not guaranteed".into());
    }
    csv.write(out, "probe.csv")?;
    let mut sum = Csv::new(&["name", "value"]);
    for (k, v) in [
        ("index", index.to_string()),
        ("t_lo", fmt_f64(t_lo)),
        ("t_hi", fmt_f64(t_hi)),
        ("samples", samples.to_string()),
        ("min_u1", fmt_f64(s.min_u1)),
        ("max_u1", fmt_f64(s.max_u1)),
        ("min_u2", fmt_f64(s.min_u2)),
        ("max_u2", fmt_f64(s.max_u2)),
        ("warning", s.warning.clone().unwrap_or_default()),
    ] {
        sum.row(&[k.into(), v]);
    }
    sum.write(out, "probe_summary.csv")?;
    Ok(s)
}

/// Runs the verification suite and writes its report and data files.
pub fn cmd_verify(cfg: &RunConfig, fault: Option<Fault>, out: &Path) -> Result<SuiteReport> {
    ensure_dir(out)?;
    let sol = cfg.solution(fault)?;
    let suite = cfg.suite_config(sol)?;
    let report = run_verification_suite(&suite);
    write_suite_files(&report, out)?;
    Ok(report)
}

fn write_suite_files(report: &SuiteReport, out: &Path) -> Result<()> {
    let mut csv = Csv::new(&["id", "pass", "measured", "threshold", "description"]);
    let mut txt = String::new();
    for i in &report.items {
        csv.row(&[
            i.id.clone(),
            i.pass.to_string(),
            fmt_f64(i.measured),
            fmt_f64(i.threshold),
            i.description.clone(),
        ]);
        let _ = writeln!(
            txt,
            "{} {:<28} measured {:<24} threshold {:<24} {}",
            if i.pass { "PASS" } else { "FAIL" },
            i.id,
            fmt_f64(i.measured),
            fmt_f64(i.threshold),
            i.description
        );
    }
    let failed = report.items.iter().filter(|i| !i.pass).count();
    let _ = writeln!(
        txt,
        "\n{} items, {} failed: {}",
        report.items.len(),
        failed,
        if failed == 0 { "PASS" } else { "FAIL" }
    );
    csv.write(out, "verify_report.csv")?;
    fs::write(out.join("verify_report.txt"), txt)?;

    let mut w = Csv::new(&[
        "id", "lhs1", "lhs2", "rhs1", "rhs2", "residual1", "residual2", "normalizer", "relative", "error_estimate",
    ]);
    for r in &report.weak {
        let mut cells = vec![r.id.clone()];
        cells.extend(
            [r.lhs[0], r.lhs[1], r.rhs[0], r.rhs[1], r.residual[0], r.residual[1], r.normalizer, r.relative, r.error_estimate]
                .map(fmt_f64),
        );
        w.row(&cells);
    }
    w.write(out, "weak_residuals.csv")?;

    let mut z = Csv::new(&["k", "grad_l2_sq", "grad_l2_sq_numeric", "log_l2_sq", "log_l2_sq_bound"]);
    for r in &report.zeta {
        let mut cells = vec![r.k.to_string()];
        cells.extend([r.grad_l2_sq, r.grad_l2_sq_numeric, r.log_l2_sq, r.log_l2_sq_bound].map(fmt_f64));
        z.row(&cells);
    }
    z.write(out, "zeta_norms.csv")?;

    let mut c = Csv::new(&["n1", "n2", "value", "error_estimate", "bound"]);
    for r in &report.convergence {
        c.row(&[
            r.n1.to_string(),
            r.n2.to_string(),
            fmt_f64(r.value),
            fmt_f64(r.error_estimate),
            fmt_f64(r.bound),
        ]);
    }
    c.write(out, "convergence.csv")?;

    let mut b = Csv::new(&["index", "b"]);
    for (i, v) in report.b_values.iter().enumerate() {
        b.row(&[(i + 1).to_string(), fmt_f64(*v)]);
    }
    b.write(out, "b_values.csv")?;

    let mut s = Csv::new(&["k", "component", "i_k", "ii_k", "holder_term", "holder_bound", "error_estimate"]);
    for r in &report.splits {
        let mut cells = vec![r.k.to_string(), (r.component + 1).to_string()];
        cells.extend([r.i_k, r.ii_k, r.holder_term, r.holder_bound, r.error_estimate].map(fmt_f64));
        s.row(&cells);
    }
    s.write(out, "splits.csv")?;
    Ok(())
}

/// Parses "LO:HI".
pub fn parse_t_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let lo = a.trim().parse::<f64>().map_err(|e| format!("LO: {e}"))?;
    let hi = b.trim().parse::<f64>().map_err(|e| format!("HI: {e}"))?;
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_round_trip() {
        let cfg = RunConfig::from_toml_str("", &[]).unwrap();
        assert_eq!(cfg, RunConfig::default());
        let again = RunConfig::from_toml_str(&cfg.echo(), &[]).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn overrides_apply() {
        let cfg = RunConfig::from_toml_str(
            "[domain]\nradius = 0.05\n",
            &["domain.radius=0.1".into(), "schedule.n_terms=3".into(), "seed=9".into()],
        )
        .unwrap();
        assert_eq!(cfg.domain.radius, 0.1);
        assert_eq!(cfg.schedule.n_terms, Some(3));
        assert_eq!(cfg.seed, 9);
    }

    #[test]
    fn errors_name_the_field() {
        let e = RunConfig::from_toml_str("[domain]\nradius = 0.5\n", &[]).unwrap_err().to_string();
        assert!(e.contains("domain.radius") && e.contains("radius must be < 1/e"), "{e}");
        let e = RunConfig::from_toml_str("[schedule]\nratio = 1.0\n", &[]).unwrap_err().to_string();
        assert!(e.contains("ratio must be in (0,1)"), "{e}");
        let e = RunConfig::from_toml_str("[domain]\nradiuss = 0.05\n", &[]).unwrap_err().to_string();
        assert!(e.contains("radiuss"), "{e}");
    }

    #[test]
    fn t_range_parsing() {
        assert_eq!(parse_t_range("10:16.5"), Ok((10.0, 16.5)));
        assert!(parse_t_range("10").is_err());
    }

    #[test]
    fn float_text_round_trips() {
        for x in [0.1, 1e-300, 2.0 / 3.0, -7.25e20] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
