//! Measurements of the zero-condition argument at located zeros.
//!
//! Every algebraic step (the zero condition `s(s-1) + Q = 0`, realness of Q,
//! `Q = 1/4 + t²`, the division rest, the factorization, `s̄ = 1 − s`, ξ = 0) is
//! turned into a number with a tolerance. The report states what was measured;
//! it does not grade the argument itself.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZetaError};
use crate::point::{ComplexPoint, Cplx, Real};
use crate::qfunction;
use crate::records::{sig17, ZeroRow};
use crate::zero_scan::{self, Rectangle, ScanConfig, ZeroRecord};
use crate::zeta_core::{self, EvalParams};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 20_170_625;
pub const FACTORIZATION_SAMPLES: usize = 100;
/// Control points for the Q-variation and identity checks.
pub const CONTROL_POINTS: [(Real, Real); 4] = [(2.0, 0.0), (3.0, 0.0), (0.75, 5.0), (0.25, 5.0)];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropositionChecks {
    #[serde(serialize_with = "sig17::serialize")]
    pub zero_residual_abs: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub q_imag_rel: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub q_vs_quarter_plus_t2: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub xi_abs: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub conj_relation_abs: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub division_rest_abs: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub factorization_max_dev: Real,
}

/// Pass thresholds. Q-based ones are `max(abs, rel·|Q|)` since |Q| ≈ 1/4 + t².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    #[serde(serialize_with = "sig17::serialize")]
    pub xi: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub conj_relation: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub q_imag_rel: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub q_abs: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub q_rel: Real,
    /// Factorization deviation vs rest, scaled by `1 + |Q|`.
    #[serde(serialize_with = "sig17::serialize")]
    pub factorization_match: Real,
    /// Identity residual, scaled by `max(1, |Z|)`.
    #[serde(serialize_with = "sig17::serialize")]
    pub consistency: Real,
    /// Half-rectangles stop this far short of the critical line.
    #[serde(serialize_with = "sig17::serialize")]
    pub half_rect_margin: Real,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            xi: 1e-6,
            conj_relation: 2e-6,
            q_imag_rel: 1e-6,
            q_abs: 1e-4,
            q_rel: 4e-8,
            factorization_match: 1e-10,
            consistency: 1e-9,
            half_rect_margin: 0.01,
        }
    }
}

impl Tolerances {
    pub fn q_tolerance(&self, q_modulus: Real) -> Real {
        self.q_abs.max(self.q_rel * q_modulus)
    }
}

/// Pseudo-random points in [−2, 3] × [−50, 50].
pub fn sample_points(seed: u64, count: usize) -> Vec<ComplexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| ComplexPoint { re: rng.random_range(-2.0..3.0), im: rng.random_range(-50.0..50.0) })
        .collect()
}

/// Max over `samples` of `|[s(s-1) + q] − (s − s_H)(s − (1 − s_H))|`.
///
/// The difference is the constant `q − s_H(1 − s_H)`, so the result is the
/// division rest up to rounding.
pub fn factorization_check(s_h: ComplexPoint, q_at_sh: Cplx, samples: &[ComplexPoint]) -> Result<Real> {
    if samples.is_empty() {
        return Err(ZetaError::param("factorization_check needs at least one sample"));
    }
    let a = s_h.to_complex();
    let mut worst: Real = 0.0;
    for p in samples {
        if p == &s_h {
            return Err(ZetaError::param("sample coincides with s_H"));
        }
        let s = p.to_complex();
        let lhs = s * (s - 1.0) + q_at_sh;
        let rhs = (s - a) * (s - (1.0 - a));
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

pub fn audit_zero(rec: &ZeroRecord, params: &EvalParams) -> Result<PropositionChecks> {
    audit_zero_with_seed(rec, params, DEFAULT_SEED)
}

pub fn audit_zero_with_seed(rec: &ZeroRecord, params: &EvalParams, seed: u64) -> Result<PropositionChecks> {
    rec.check_invariants()?;
    params.validate()?;
    let own = zeta_core::remainder_bound(rec.s, &rec.params_used);
    let offered = zeta_core::remainder_bound(rec.s, params);
    if !(offered <= own * (1.0 + 1e-12)) {
        return Err(ZetaError::param(format!(
            "audit params (bound {offered:e}) are less accurate than the record's (bound {own:e})"
        )));
    }
    let s = rec.s;
    let z = s.to_complex();
    let zc = z.conj();
    let q = qfunction::q_gb(s, params)?.value;
    let qc = qfunction::q_gb(s.conj(), params)?.value;

    let residual = (z * (z - 1.0) + q).norm().max((zc * (zc - 1.0) + qc).norm());
    let rest = (q - z * (1.0 - z)).norm().max((qc - zc * (1.0 - zc)).norm());
    let samples: Vec<ComplexPoint> = sample_points(seed, FACTORIZATION_SAMPLES)
        .into_iter()
        .filter(|p| *p != s)
        .collect();
    Ok(PropositionChecks {
        zero_residual_abs: residual,
        q_imag_rel: q.im.abs() / q.norm(),
        q_vs_quarter_plus_t2: (q - Cplx::new(0.25 + rec.t * rec.t, 0.0)).norm(),
        xi_abs: (s.re - 0.5).abs(),
        conj_relation_abs: (zc - (1.0 - z)).norm(),
        division_rest_abs: rest,
        factorization_max_dev: factorization_check(s, q, &samples)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QSample {
    #[serde(serialize_with = "sig17::serialize")]
    pub re: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub im: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub q_re: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub q_im: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QVariation {
    pub samples: Vec<QSample>,
    #[serde(serialize_with = "sig17::serialize")]
    pub max_pairwise_delta: Real,
    pub params_used: EvalParams,
}

/// Q at every sample under one parameter set, and the largest |ΔQ| between any two.
pub fn q_variation(samples: &[ComplexPoint], params: &EvalParams) -> Result<QVariation> {
    if samples.len() < 2 {
        return Err(ZetaError::param("q_variation needs at least two samples"));
    }
    let values = samples
        .iter()
        .map(|p| qfunction::q_gb(*p, params).map(|q| q.value))
        .collect::<Result<Vec<_>>>()?;
    let mut max_delta: Real = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            max_delta = max_delta.max((a - b).norm());
        }
    }
    Ok(QVariation {
        samples: samples
            .iter()
            .zip(&values)
            .map(|(p, q)| QSample { re: p.re, im: p.im, q_re: q.re, q_im: q.im })
            .collect(),
        max_pairwise_delta: max_delta,
        params_used: *params,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCheck {
    pub record: ZeroRow,
    pub checks: PropositionChecks,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlCheck {
    #[serde(serialize_with = "sig17::serialize")]
    pub re: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub im: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub z_modulus: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub consistency: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub zero_residual_abs: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfRectangleCount {
    pub rectangle: Rectangle,
    pub zeros: i64,
    #[serde(serialize_with = "sig17::serialize")]
    pub residual: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    #[serde(serialize_with = "sig17::serialize")]
    pub step: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub tol: Real,
    pub max_iter: usize,
    pub candidates: usize,
    pub failed_refinements: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub item: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!("{:<4} {}  {}", self.item, if self.passed { "PASS" } else { "FAIL" }, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub complete: bool,
    pub error: Option<String>,
    #[serde(serialize_with = "sig17::serialize")]
    pub t_min: Real,
    #[serde(serialize_with = "sig17::serialize")]
    pub t_max: Real,
    pub seed: u64,
    pub params_used: Option<EvalParams>,
    pub scan: Option<ScanSummary>,
    pub zero_checks: Vec<ZeroCheck>,
    pub controls: Vec<ControlCheck>,
    pub q_variation: Option<QVariation>,
    pub half_rectangles: Vec<HalfRectangleCount>,
    pub verdicts: Vec<Verdict>,
    pub verdict_lines: Vec<String>,
    pub tolerances_used: Tolerances,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.complete && self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report floats are finite")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: AuditReport = serde_json::from_str(text).map_err(|e| ZetaError::Format(e.to_string()))?;
        if report.verdicts.len() != 8 || report.verdict_lines.len() != 8 {
            return Err(ZetaError::Format("a report carries exactly 8 verdicts".into()));
        }
        Ok(report)
    }

    /// Plain-text verdict table.
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "audit t in [{}, {}]: {} zero(s), {}\n",
            self.t_min,
            self.t_max,
            self.zero_checks.len(),
            if self.complete { "complete" } else { "INCOMPLETE" }
        );
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        for line in &self.verdict_lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditSettings {
    /// Parameters for the audits; the scan's are used when absent.
    pub params: Option<EvalParams>,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl Default for AuditSettings {
    fn default() -> Self {
        Self { params: None, seed: DEFAULT_SEED, tolerances: Tolerances::default() }
    }
}

const ITEMS: [&str; 8] = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII"];

/// Scan `[t_min, t_max]`, audit every zero, and assemble the eight verdicts.
///
/// Bad arguments are errors; a failure part-way through yields a report with
/// `complete = false` and the unevaluated verdicts marked as failed.
pub fn audit_range(t_min: Real, t_max: Real, scan_cfg: &ScanConfig, settings: &AuditSettings) -> Result<AuditReport> {
    audit_range_detailed(t_min, t_max, scan_cfg, settings).map(|(report, _)| report)
}

/// [`audit_range`] plus the error that stopped an incomplete report.
pub fn audit_range_detailed(
    t_min: Real,
    t_max: Real,
    scan_cfg: &ScanConfig,
    settings: &AuditSettings,
) -> Result<(AuditReport, Option<ZetaError>)> {
    if !t_min.is_finite() || !t_max.is_finite() || t_min < 0.0 || !(t_max > t_min) {
        return Err(ZetaError::param(format!("audit range needs 0 <= t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if t_max > zeta_core::MAX_ABS_IM {
        return Err(ZetaError::param(format!("t_max {t_max} exceeds {}", zeta_core::MAX_ABS_IM)));
    }
    let mut report = AuditReport {
        schema_version: SCHEMA_VERSION,
        complete: false,
        error: None,
        t_min,
        t_max,
        seed: settings.seed,
        params_used: None,
        scan: None,
        zero_checks: Vec::new(),
        controls: Vec::new(),
        q_variation: None,
        half_rectangles: Vec::new(),
        verdicts: Vec::new(),
        verdict_lines: Vec::new(),
        tolerances_used: settings.tolerances,
    };
    let failure = match fill_report(&mut report, scan_cfg, settings) {
        Ok(()) => {
            report.complete = true;
            None
        }
        Err(e) => {
            if matches!(e, ZetaError::Parameter(_)) && report.scan.is_none() {
                return Err(e);
            }
            report.error = Some(e.to_string());
            Some(e)
        }
    };
    while report.verdicts.len() < ITEMS.len() {
        let item = ITEMS[report.verdicts.len()];
        report.verdicts.push(Verdict { item: item.into(), passed: false, detail: "not evaluated".into() });
    }
    report.verdict_lines = report.verdicts.iter().map(Verdict::line).collect();
    Ok((report, failure))
}

fn fill_report(report: &mut AuditReport, scan_cfg: &ScanConfig, settings: &AuditSettings) -> Result<()> {
    let tol = settings.tolerances;
    let (t_min, t_max) = (report.t_min, report.t_max);
    let scan = zero_scan::scan_critical_line_with(t_min, t_max, scan_cfg)?;
    report.scan = Some(ScanSummary {
        step: scan_cfg.step,
        tol: scan_cfg.tol,
        max_iter: scan_cfg.max_iter,
        candidates: scan.candidates,
        failed_refinements: scan.failed_refinements,
    });
    let params = settings.params.unwrap_or(scan.params_used);
    report.params_used = Some(params);

    let checks = scan
        .records
        .par_iter()
        .map(|rec| audit_zero_with_seed(rec, &params, settings.seed))
        .collect::<Result<Vec<_>>>()?;
    report.zero_checks = scan
        .records
        .iter()
        .zip(checks)
        .map(|(rec, checks)| ZeroCheck { record: ZeroRow::from(rec), checks })
        .collect();

    // controls
    let controls: Vec<ComplexPoint> = CONTROL_POINTS.iter().map(|&(re, im)| ComplexPoint { re, im }).collect();
    for p in &controls {
        let z = zeta_core::zeta_gb(*p, &params)?.value;
        report.controls.push(ControlCheck {
            re: p.re,
            im: p.im,
            z_modulus: z.norm(),
            consistency: qfunction::consistency_identity(*p, &params)?,
            zero_residual_abs: qfunction::zero_residual(*p, &params)?.norm(),
        });
    }
    report.q_variation = Some(q_variation(&controls, &params)?);

    let zc = report.zero_checks.clone();
    let max_of = |f: fn(&ZeroCheck) -> Real| zc.iter().map(f).fold(0.0, Real::max);

    // I
    let max_xi = max_of(|c| c.checks.xi_abs);
    push(report, "I", max_xi <= tol.xi, format!("{} zero(s) with |xi| <= {:e}; max |xi| = {max_xi:.3e}", zc.len(), tol.xi));

    // II
    let worst_identity = report
        .controls
        .iter()
        .map(|c| c.consistency / c.z_modulus.max(1.0))
        .fold(0.0, Real::max);
    let control_residual = report.controls[0].zero_residual_abs;
    push(
        report,
        "II",
        worst_identity <= tol.consistency && control_residual > 1.0,
        format!(
            "identity Z = s N^(1-s) (1/(s(s-1)) + 1/Q) at controls: max scaled residual {worst_identity:.3e} (tol {:e}); |s(s-1)+Q| at s=2 is {control_residual:.3e} (> 1)",
            tol.consistency
        ),
    );

    // III
    let t_lo = if t_min < 0.1 { 0.1_f64.min(t_max / 2.0) } else { t_min };
    let halves = [
        Rectangle::new(0.01, 0.5 - tol.half_rect_margin, t_lo, t_max)?,
        Rectangle::new(0.5 + tol.half_rect_margin, 0.99, t_lo, t_max)?,
    ];
    let counts = halves
        .par_iter()
        .map(|r| zero_scan::count_zeros_detailed(r, &params))
        .collect::<Result<Vec<_>>>()?;
    report.half_rectangles = halves
        .iter()
        .zip(&counts)
        .map(|(r, c)| HalfRectangleCount { rectangle: *r, zeros: c.zeros, residual: c.residual })
        .collect();
    let off_line: i64 = counts.iter().map(|c| c.zeros).sum();
    push(
        report,
        "III",
        off_line == 0,
        format!(
            "zeros with |xi| >= {} in the strip for t in [{t_lo}, {t_max}]: {off_line} (left {}, right {})",
            tol.half_rect_margin, counts[0].zeros, counts[1].zeros
        ),
    );

    // IV–VII
    let q_tol_ok = |c: &ZeroCheck, v: Real| v <= tol.q_tolerance(Cplx::new(c.record.q_re, c.record.q_im).norm());
    let iv = zc.iter().all(|c| q_tol_ok(c, c.checks.zero_residual_abs));
    let max_res = max_of(|c| c.checks.zero_residual_abs);
    push(report, "IV", iv, format!("|s(s-1)+Q(s)| at zeros: max {max_res:.3e} (tol max({:e}, {:e}|Q|))", tol.q_abs, tol.q_rel));

    let v = zc.iter().all(|c| c.checks.q_imag_rel <= tol.q_imag_rel && q_tol_ok(c, c.checks.q_vs_quarter_plus_t2));
    let max_im = max_of(|c| c.checks.q_imag_rel);
    let max_quarter = max_of(|c| c.checks.q_vs_quarter_plus_t2);
    push(
        report,
        "V",
        v,
        format!("Q real and equal to 1/4 + t^2: max |Im Q|/|Q| = {max_im:.3e}, max |Q - (1/4+t^2)| = {max_quarter:.3e}"),
    );

    let vi = zc.iter().all(|c| q_tol_ok(c, c.checks.division_rest_abs));
    let max_rest = max_of(|c| c.checks.division_rest_abs);
    push(report, "VI", vi, format!("division rest |Q - s(1-s)|: max {max_rest:.3e}"));

    let vii = zc.iter().all(|c| {
        let q = Cplx::new(c.record.q_re, c.record.q_im).norm();
        (c.checks.factorization_max_dev - c.checks.division_rest_abs).abs() <= tol.factorization_match * (1.0 + q)
    });
    let max_dev = max_of(|c| c.checks.factorization_max_dev);
    push(
        report,
        "VII",
        vii,
        format!(
            "s(s-1)+Q - (s-s_H)(s-(1-s_H)) over {FACTORIZATION_SAMPLES} samples equals the rest: max deviation {max_dev:.3e}"
        ),
    );

    // VIII
    let max_conj = max_of(|c| c.checks.conj_relation_abs);
    push(
        report,
        "VIII",
        max_conj <= tol.conj_relation,
        format!("|conj(s) - (1-s)| at zeros: max {max_conj:.3e} (tol {:e})", tol.conj_relation),
    );
    Ok(())
}

fn push(report: &mut AuditReport, item: &str, passed: bool, detail: String) {
    report.verdicts.push(Verdict { item: item.into(), passed, detail });
}
