//! Zero location on the critical line and zero counting in rectangles.
//!
//! Zeros are found by scanning `|Z(1/2 + it)|` on a grid, refining each local
//! minimum with complex Newton, and keeping the iterate wherever it lands: the
//! offset ξ = Re s − 1/2 is measured, never projected away.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZetaError};
use crate::point::{ComplexPoint, Cplx, Real};
use crate::qfunction;
use crate::zeta_core::{self, EvalParams, EPS_FLOOR, MAX_ABS_IM};

/// Newton tolerance floor.
pub const MIN_TOL: Real = 1e-10;
/// Largest grid step; zero spacing below t = 500 stays above 1.
pub const MAX_STEP: Real = 0.5;
pub const DEFAULT_MAX_ITER: usize = 50;
/// Central-difference step for Z′.
const DIFF_H: Real = 1e-6;
const STALL_STEP: Real = 1e-12;
/// Grid modulus gate is `max(10·sqrt(tol), GATE_SLOPE·step)`.
const GATE_SLOPE: Real = 4.0;

/// A refined zero, stored for the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub t: Real,
    pub s: ComplexPoint,
    pub xi: Real,
    pub z_modulus: Real,
    pub q_value: Cplx,
    pub refine_iterations: usize,
    pub params_used: EvalParams,
}

impl ZeroRecord {
    pub fn check_invariants(&self) -> Result<()> {
        if !(self.t > 0.0) || self.t != self.s.im {
            return Err(ZetaError::param(format!("record ordinate {} must be positive", self.t)));
        }
        if !(self.s.re > 0.0 && self.s.re < 1.0) {
            return Err(ZetaError::param(format!("record Re s = {} outside the strip", self.s.re)));
        }
        if !(self.z_modulus >= 0.0) || !self.z_modulus.is_finite() {
            return Err(ZetaError::param("record |Z| must be finite and non-negative"));
        }
        if !self.xi.is_finite() || !self.q_value.re.is_finite() || !self.q_value.im.is_finite() {
            return Err(ZetaError::param("record has non-finite fields"));
        }
        self.params_used.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub sigma_min: Real,
    pub sigma_max: Real,
    pub t_min: Real,
    pub t_max: Real,
}

impl Rectangle {
    pub fn new(sigma_min: Real, sigma_max: Real, t_min: Real, t_max: Real) -> Result<Self> {
        let r = Self { sigma_min, sigma_max, t_min, t_max };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.sigma_min, self.sigma_max, self.t_min, self.t_max];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(ZetaError::param("rectangle bounds must be finite"));
        }
        if !(self.sigma_min < self.sigma_max) || !(self.t_min < self.t_max) {
            return Err(ZetaError::param("rectangle needs sigma_min < sigma_max and t_min < t_max"));
        }
        if self.t_min.abs().max(self.t_max.abs()) > MAX_ABS_IM {
            return Err(ZetaError::param(format!("rectangle exceeds |Im s| = {MAX_ABS_IM}")));
        }
        for special in [0.0, 1.0] {
            if self.on_boundary(special, 0.0) {
                return Err(ZetaError::param(format!("rectangle boundary passes through s = {special}")));
            }
        }
        Ok(())
    }

    fn on_boundary(&self, re: Real, im: Real) -> bool {
        let tol = 1e-9;
        let within_t = im >= self.t_min - tol && im <= self.t_max + tol;
        let within_s = re >= self.sigma_min - tol && re <= self.sigma_max + tol;
        let on_vertical =
            within_t && ((re - self.sigma_min).abs() <= tol || (re - self.sigma_max).abs() <= tol);
        let on_horizontal =
            within_s && ((im - self.t_min).abs() <= tol || (im - self.t_max).abs() <= tol);
        on_vertical || on_horizontal
    }

    fn contains(&self, re: Real, im: Real) -> bool {
        re > self.sigma_min && re < self.sigma_max && im > self.t_min && im < self.t_max
    }

    /// Corners in counter-clockwise order starting bottom-left.
    fn corners(&self) -> [Cplx; 4] {
        [
            Cplx::new(self.sigma_min, self.t_min),
            Cplx::new(self.sigma_max, self.t_min),
            Cplx::new(self.sigma_max, self.t_max),
            Cplx::new(self.sigma_min, self.t_max),
        ]
    }
}

/// Accuracy used for evaluations backing a Newton tolerance.
pub fn eval_eps_for_tol(tol: Real) -> Real {
    (tol * 1e-2).clamp(EPS_FLOOR, 1e-8)
}

/// Parameters certified over the strip up to height `t_hi`. The bound is worst
/// at the left edge, so it is taken at `Re s = 0`.
pub fn strip_params(t_hi: Real, eps: Real) -> Result<EvalParams> {
    let t = (t_hi.abs() + 1.0).min(MAX_ABS_IM);
    zeta_core::auto_params(ComplexPoint::new(0.0, t)?, eps)
}

/// Complex Newton from `s0` with parameters chosen for the seed's height.
pub fn refine_zero(s0: ComplexPoint, tol: Real, max_iter: usize) -> Result<ZeroRecord> {
    check_tol(tol)?;
    let params = strip_params(s0.im, eval_eps_for_tol(tol))?;
    refine_zero_with(s0, tol, max_iter, &params)
}

fn check_tol(tol: Real) -> Result<()> {
    if !(tol >= MIN_TOL) || !tol.is_finite() {
        return Err(ZetaError::param(format!("tolerance must be >= {MIN_TOL:e}, got {tol:e}")));
    }
    Ok(())
}

fn in_strip(z: Cplx) -> bool {
    z.re > 0.0 && z.re < 1.0 && z.im.is_finite()
}

/// Complex Newton `s ← s − Z(s)/Z′(s)` with a central-difference derivative,
/// under fixed (N, ν).
pub fn refine_zero_with(
    s0: ComplexPoint,
    tol: Real,
    max_iter: usize,
    params: &EvalParams,
) -> Result<ZeroRecord> {
    params.validate()?;
    if max_iter < 1 {
        return Err(ZetaError::param("max_iter must be >= 1"));
    }
    if !tol.is_finite() || !(tol > 0.0) {
        return Err(ZetaError::param("tolerance must be positive"));
    }
    let mut s = s0.to_complex();
    if !in_strip(s) {
        return Err(ZetaError::Domain(format!("seed {} + {}i outside the critical strip", s.re, s.im)));
    }
    let (n, nu) = (params.cutoff_n, params.tail_order_nu);
    let eval = |z: Cplx| zeta_core::zeta_value(z, n, nu);
    let mut value = eval(s);
    let mut iterations = 0;
    loop {
        if value.norm() <= tol {
            break;
        }
        if iterations == max_iter {
            return Err(ZetaError::Refinement(format!(
                "no convergence after {max_iter} iterations (|Z| = {:e})",
                value.norm()
            )));
        }
        let deriv = (eval(s + DIFF_H) - eval(s - DIFF_H)) / (2.0 * DIFF_H);
        let step = value / deriv;
        if !step.re.is_finite() || !step.im.is_finite() {
            return Err(ZetaError::Refinement("vanishing derivative".into()));
        }
        s -= step;
        iterations += 1;
        if !in_strip(s) {
            return Err(ZetaError::Refinement(format!("iterate {} + {}i left the strip", s.re, s.im)));
        }
        value = eval(s);
        if step.norm() < STALL_STEP && value.norm() > tol {
            return Err(ZetaError::Refinement(format!("stalled at |Z| = {:e}", value.norm())));
        }
    }
    if s.im == 0.0 {
        return Err(ZetaError::Refinement("converged onto the real axis".into()));
    }
    if s.im < 0.0 {
        s = s.conj();
    }
    let point = ComplexPoint::from_complex(s)?;
    let q = qfunction::q_gb(point, params)?;
    Ok(ZeroRecord {
        t: point.im,
        s: point,
        xi: point.xi(),
        z_modulus: value.norm(),
        q_value: q.value,
        refine_iterations: iterations,
        params_used: *params,
    })
}

/// Settings for [`scan_critical_line_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub step: Real,
    pub tol: Real,
    pub max_iter: usize,
    /// Explicit (N, ν); chosen from the range when absent.
    pub params: Option<EvalParams>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { step: 0.25, tol: 1e-8, max_iter: DEFAULT_MAX_ITER, params: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutcome {
    pub records: Vec<ZeroRecord>,
    /// Gated candidates whose refinement failed.
    pub failed_refinements: usize,
    pub candidates: usize,
    pub params_used: EvalParams,
}

/// Scan `1/2 + it` for `t ∈ [t_min, t_max]` with the default iteration cap.
pub fn scan_critical_line(t_min: Real, t_max: Real, step: Real, tol: Real) -> Result<ScanOutcome> {
    scan_critical_line_with(t_min, t_max, &ScanConfig { step, tol, ..ScanConfig::default() })
}

pub fn scan_critical_line_with(t_min: Real, t_max: Real, cfg: &ScanConfig) -> Result<ScanOutcome> {
    if !t_min.is_finite() || !t_max.is_finite() || t_min < 0.0 || !(t_max > t_min) {
        return Err(ZetaError::param(format!("scan range needs 0 <= t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if t_max > MAX_ABS_IM {
        return Err(ZetaError::param(format!("t_max {t_max} exceeds {MAX_ABS_IM}")));
    }
    if !(cfg.step > 0.0) || cfg.step > MAX_STEP {
        return Err(ZetaError::param(format!("step must be in (0, {MAX_STEP}], got {}", cfg.step)));
    }
    check_tol(cfg.tol)?;
    let params = match cfg.params {
        Some(p) => {
            p.validate()?;
            p
        }
        None => strip_params(t_max, eval_eps_for_tol(cfg.tol))?,
    };
    let (n, nu) = (params.cutoff_n, params.tail_order_nu);

    let count = ((t_max - t_min) / cfg.step).floor() as usize;
    let mut grid: Vec<Real> = (0..=count).map(|k| t_min + k as Real * cfg.step).collect();
    if t_max - grid[count] > cfg.step * 1e-9 {
        grid.push(t_max);
    }
    let modulus: Vec<Real> = grid
        .par_iter()
        .map(|&t| zeta_core::zeta_value(Cplx::new(0.5, t), n, nu).norm())
        .collect();

    let gate = (10.0 * cfg.tol.sqrt()).max(GATE_SLOPE * cfg.step);
    let last = grid.len() - 1;
    let seeds: Vec<Real> = (0..=last)
        .filter(|&k| {
            let left = k == 0 || modulus[k] <= modulus[k - 1];
            let right = k == last || modulus[k] < modulus[k + 1];
            let interior_or_edge = last > 0 && left && right;
            interior_or_edge && modulus[k] < gate
        })
        .map(|k| grid[k])
        .collect();

    let attempts: Vec<Result<ZeroRecord>> = seeds
        .par_iter()
        .map(|&t| refine_zero_with(ComplexPoint::new(0.5, t)?, cfg.tol, cfg.max_iter, &params))
        .collect();

    let mut failed = 0;
    let mut records = Vec::new();
    for attempt in attempts {
        match attempt {
            Ok(rec) if rec.t >= t_min && rec.t <= t_max => records.push(rec),
            Ok(_) => {}
            Err(ZetaError::Refinement(_)) => failed += 1,
            Err(e) => return Err(e),
        }
    }
    records.sort_by(|a, b| a.t.total_cmp(&b.t));
    let mut deduped: Vec<ZeroRecord> = Vec::with_capacity(records.len());
    for rec in records {
        match deduped.last_mut() {
            Some(prev) if rec.t - prev.t < cfg.step / 2.0 => {
                if rec.z_modulus < prev.z_modulus {
                    *prev = rec;
                }
            }
            _ => deduped.push(rec),
        }
    }
    Ok(ScanOutcome {
        records: deduped,
        failed_refinements: failed,
        candidates: seeds.len(),
        params_used: params,
    })
}

/// Winding-number measurement behind [`count_zeros_rectangle`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingCount {
    /// Zeros enclosed (poles inside the contour already added back).
    pub zeros: i64,
    /// Raw winding number of Z along the contour.
    pub winding: Real,
    /// |winding − round(winding)|.
    pub residual: Real,
    pub samples: usize,
    pub params_used: EvalParams,
}

/// Samples where |Z| falls below this are treated as a zero on the contour.
pub const BOUNDARY_MODULUS: Real = 1e-6;
const MAX_REFINE_LEVELS: u32 = 12;
const EDGE_SPACING: Real = 0.05;
const MAX_RESIDUAL: Real = 0.25;

/// Number of zeros of Z inside `rect`, by the argument principle.
pub fn count_zeros_rectangle(rect: &Rectangle, params: &EvalParams) -> Result<i64> {
    count_zeros_detailed(rect, params).map(|c| c.zeros)
}

/// Parameters certified on the whole rectangle (worst corner: left edge, top).
pub fn rectangle_params(rect: &Rectangle, eps: Real) -> Result<EvalParams> {
    let t = rect.t_min.abs().max(rect.t_max.abs());
    zeta_core::auto_params(ComplexPoint::new(rect.sigma_min, t)?, eps)
}

pub fn count_zeros_detailed(rect: &Rectangle, params: &EvalParams) -> Result<WindingCount> {
    rect.validate()?;
    params.validate()?;
    let worst = ComplexPoint::new(rect.sigma_min, rect.t_min.abs().max(rect.t_max.abs()))?;
    let bound = zeta_core::remainder_bound(worst, params);
    if !bound.is_finite() {
        return Err(ZetaError::Precision { requested: params.target_eps.unwrap_or(0.0), best_bound: bound });
    }
    let corners = rect.corners();
    let edges: Vec<Result<(Real, usize)>> = (0..4)
        .into_par_iter()
        .map(|i| edge_phase(corners[i], corners[(i + 1) % 4], params))
        .collect();
    let mut total = 0.0;
    let mut samples = 0;
    for edge in edges {
        let (phase, n) = edge?;
        total += phase;
        samples += n;
    }
    let winding = total / (2.0 * PI);
    let rounded = winding.round();
    let residual = (winding - rounded).abs();
    if residual >= MAX_RESIDUAL {
        return Err(ZetaError::Inconclusive { winding, residual });
    }
    let poles = i64::from(rect.contains(1.0, 0.0));
    Ok(WindingCount {
        zeros: rounded as i64 + poles,
        winding,
        residual,
        samples,
        params_used: *params,
    })
}

fn sample(z: Cplx, params: &EvalParams) -> Result<Cplx> {
    let v = zeta_core::zeta_value(z, params.cutoff_n, params.tail_order_nu);
    if !(v.norm() >= BOUNDARY_MODULUS) {
        return Err(ZetaError::Boundary {
            re: z.re,
            im: z.im,
            reason: format!("|Z| = {:e} on the contour", v.norm()),
        });
    }
    Ok(v)
}

/// Total phase change of Z along the segment `a → b`.
fn edge_phase(a: Cplx, b: Cplx, params: &EvalParams) -> Result<(Real, usize)> {
    let pieces = ((b - a).norm() / EDGE_SPACING).ceil().max(8.0) as usize;
    let mut total = 0.0;
    let mut samples = 1;
    let mut prev_z = a;
    let mut prev_v = sample(a, params)?;
    for k in 1..=pieces {
        let z = a + (b - a) * (k as Real / pieces as Real);
        let v = sample(z, params)?;
        let (dphi, used) = segment_phase(prev_z, prev_v, z, v, params, 0)?;
        total += dphi;
        samples += used + 1;
        prev_z = z;
        prev_v = v;
    }
    Ok((total, samples))
}

fn segment_phase(a: Cplx, va: Cplx, b: Cplx, vb: Cplx, params: &EvalParams, level: u32) -> Result<(Real, usize)> {
    let dphi = (vb / va).arg();
    if dphi.abs() < PI / 2.0 {
        return Ok((dphi, 0));
    }
    if level == MAX_REFINE_LEVELS {
        let mid = 0.5 * (a + b);
        return Err(ZetaError::Boundary {
            re: mid.re,
            im: mid.im,
            reason: format!("phase step not tamed after {MAX_REFINE_LEVELS} refinements"),
        });
    }
    let m = 0.5 * (a + b);
    let vm = sample(m, params)?;
    let (left, n_left) = segment_phase(a, va, m, vm, params, level + 1)?;
    let (right, n_right) = segment_phase(m, vm, b, vb, params, level + 1)?;
    Ok((left + right, n_left + n_right + 1))
}
