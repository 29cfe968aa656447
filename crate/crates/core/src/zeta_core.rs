//! Euler-Maclaurin evaluation of ζ(s):
//!
//! ```text
//! Z(s) = Σ_{n=1}^{N-1} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{μ=1}^{ν} B_2μ/(2μ)! · s(s+1)…(s+2μ-2) · N^{-s-2μ+1}  + R_2ν
//! ```
//!
//! `R_2ν` is never computed; it is bounded by the first omitted term scaled by
//! `|s+2ν+1| / (Re s + 2ν + 1)`.

use serde::{Deserialize, Serialize};

use crate::bernoulli::{self, BernoulliTable, MAX_INDEX};
use crate::error::{Result, ZetaError};
use crate::point::{ComplexPoint, Cplx, Real};

/// Smallest accuracy request binary64 can honour.
pub const EPS_FLOOR: Real = 1e-13;
/// Largest |Im s| the parameter schedule supports.
pub const MAX_ABS_IM: Real = 500.0;
/// Largest tail order; the bound needs B_{2ν+2} from the capped table.
pub const MAX_NU: usize = MAX_INDEX / 2 - 1;

const AUTO_NU_MIN: usize = 2;
const AUTO_NU_MAX: usize = 25;
const AUTO_DOUBLINGS: u32 = 6;

/// Truncation parameters for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalParams {
    /// Cutoff N; the explicit sum has N − 1 terms.
    pub cutoff_n: usize,
    /// Number ν of Euler-Maclaurin correction terms.
    pub tail_order_nu: usize,
    /// Accuracy the parameters were selected for; `None` when (N, ν) were given
    /// explicitly.
    pub target_eps: Option<Real>,
}

impl EvalParams {
    pub fn new(cutoff_n: usize, tail_order_nu: usize, target_eps: Option<Real>) -> Result<Self> {
        let p = Self { cutoff_n, tail_order_nu, target_eps };
        p.validate()?;
        Ok(p)
    }

    /// Fixed (N, ν) with no accuracy request attached.
    pub fn fixed(cutoff_n: usize, tail_order_nu: usize) -> Result<Self> {
        Self::new(cutoff_n, tail_order_nu, None)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cutoff_n < 2 {
            return Err(ZetaError::param(format!("cutoff N must be >= 2, got {}", self.cutoff_n)));
        }
        if self.tail_order_nu < 1 || self.tail_order_nu > MAX_NU {
            return Err(ZetaError::param(format!(
                "tail order nu must be in 1..={MAX_NU}, got {}",
                self.tail_order_nu
            )));
        }
        if let Some(eps) = self.target_eps {
            if !(eps > 0.0) {
                return Err(ZetaError::param("target eps must be positive"));
            }
        }
        Ok(())
    }
}

/// Value of Z(s) plus a certified bound on the omitted remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Cplx,
    pub remainder_bound: Real,
    pub params_used: EvalParams,
}

/// `n^{-s}` as `exp(-s·ln n)` with the real logarithm.
#[inline]
pub(crate) fn pow_neg(n: Real, s: Cplx) -> Cplx {
    (-s * n.ln()).exp()
}

/// Σ_{n=1}^{N-1} n^{-s}.
pub fn dirichlet_partial_sum(s: ComplexPoint, cutoff_n: usize) -> Result<Cplx> {
    if cutoff_n < 2 {
        return Err(ZetaError::param(format!("cutoff N must be >= 2, got {cutoff_n}")));
    }
    Ok(partial_sum(s.to_complex(), cutoff_n))
}

pub(crate) fn partial_sum(s: Cplx, cutoff_n: usize) -> Cplx {
    let mut acc = Cplx::new(1.0, 0.0);
    for n in 2..cutoff_n {
        acc += pow_neg(n as Real, s);
    }
    acc
}

/// Edwards-style bound on |R_2ν| for Z itself.
///
/// Infinite when `Re s + 2ν + 1 <= 0`, where the bound does not apply.
pub fn remainder_bound(s: ComplexPoint, params: &EvalParams) -> Real {
    let nu = params.tail_order_nu;
    let n = params.cutoff_n as Real;
    let denom = s.re + (2 * nu) as Real + 1.0;
    if denom <= 0.0 {
        return Real::INFINITY;
    }
    let Some(coeff) = bernoulli::tail_coefficient_abs(nu + 1) else {
        return Real::INFINITY;
    };
    let z = s.to_complex();
    // |s(s+1)…(s+2ν)|
    let rising: Real = (0..=2 * nu).map(|k| (z + k as Real).norm()).product();
    let decay = n.powf(-s.re - (2 * nu) as Real - 1.0);
    coeff * rising * decay * (z + (2 * nu + 1) as Real).norm() / denom
}

/// Tail `r(N, s)` of the abbreviated form `Z = S + N^{1-s}/(s-1) + s·r(N, s)`,
/// with the remainder bound divided by `|s|`.
pub fn em_tail(s: ComplexPoint, params: &EvalParams, table: &BernoulliTable) -> Result<(Cplx, Real)> {
    params.validate()?;
    if s.is_zero() {
        return Err(ZetaError::Domain("the abbreviated tail divides by s; s = 0".into()));
    }
    let needed = 2 * (params.tail_order_nu + 1);
    if table.max_index() < needed {
        return Err(ZetaError::param(format!(
            "bernoulli table covers index {} but {needed} is needed",
            table.max_index()
        )));
    }
    let z = s.to_complex();
    let n = params.cutoff_n as Real;
    let n_pow = pow_neg(n, z);
    let mut r = n_pow / (2.0 * z);
    let mut rising = Cplx::new(1.0, 0.0); // (s+1)(s+2)…(s+2μ-2)
    let mut n_shift = n_pow / n; // N^{-s-2μ+1}
    for mu in 1..=params.tail_order_nu {
        if mu > 1 {
            rising *= (z + (2 * mu - 3) as Real) * (z + (2 * mu - 2) as Real);
            n_shift /= n * n;
        }
        let c = table
            .tail_coefficient(mu)
            .ok_or_else(|| ZetaError::param("bernoulli table too small"))?;
        r += rising * n_shift * c;
    }
    let bound = remainder_bound(s, params) / z.norm();
    Ok((r, bound))
}

/// Z(s) for fixed (N, ν). Uses the full form, so s = 0 is fine.
pub fn zeta_gb(s: ComplexPoint, params: &EvalParams) -> Result<EvalResult> {
    params.validate()?;
    if s.is_one() {
        return Err(ZetaError::Pole);
    }
    let remainder = remainder_bound(s, params);
    if !remainder.is_finite() {
        return Err(ZetaError::Precision {
            requested: params.target_eps.unwrap_or(0.0),
            best_bound: remainder,
        });
    }
    let value = zeta_value(s.to_complex(), params.cutoff_n, params.tail_order_nu);
    Ok(EvalResult { value, remainder_bound: remainder, params_used: *params })
}

/// Z(s) with parameters chosen by [`auto_params`].
pub fn zeta_gb_auto(s: ComplexPoint, eps: Real) -> Result<EvalResult> {
    let params = auto_params(s, eps)?;
    zeta_gb(s, &params)
}

/// Raw evaluation with no checks; `s ≠ 1` and `ν ≤ MAX_NU` are the caller's job.
pub(crate) fn zeta_value(s: Cplx, cutoff_n: usize, nu: usize) -> Cplx {
    let coeffs = bernoulli::tail_coefficients();
    let n = cutoff_n as Real;
    let n_pow = pow_neg(n, s);
    let mut acc = partial_sum(s, cutoff_n);
    acc += n_pow * n / (s - 1.0);
    acc += n_pow * 0.5;
    let mut rising = s; // s(s+1)…(s+2μ-2)
    let mut n_shift = n_pow / n;
    for (mu, c) in coeffs.iter().enumerate().take(nu + 1).skip(1) {
        if mu > 1 {
            rising *= (s + (2 * mu - 3) as Real) * (s + (2 * mu - 2) as Real);
            n_shift /= n * n;
        }
        acc += rising * n_shift * *c;
    }
    acc
}

/// Smallest (N, ν) from the schedule whose certified bound at `s` is ≤ `eps`.
///
/// N starts at `max(16, ceil(2(|Im s| + 1)))` and doubles up to 64×; for each N,
/// ν sweeps 2..=25 and the first hit wins.
pub fn auto_params(s: ComplexPoint, eps: Real) -> Result<EvalParams> {
    if !(eps >= EPS_FLOOR) || !eps.is_finite() {
        return Err(ZetaError::Precision { requested: eps, best_bound: EPS_FLOOR });
    }
    if s.im.abs() > MAX_ABS_IM {
        return Err(ZetaError::param(format!("|Im s| = {} exceeds {MAX_ABS_IM}", s.im.abs())));
    }
    let base = 16usize.max((2.0 * (s.im.abs() + 1.0)).ceil() as usize);
    let mut best = Real::INFINITY;
    for doubling in 0..=AUTO_DOUBLINGS {
        let cutoff_n = base << doubling;
        for nu in AUTO_NU_MIN..=AUTO_NU_MAX {
            let params = EvalParams { cutoff_n, tail_order_nu: nu, target_eps: Some(eps) };
            let bound = remainder_bound(s, &params);
            if bound <= eps {
                return Ok(params);
            }
            if bound < best {
                best = bound;
            }
        }
    }
    Err(ZetaError::Precision { requested: eps, best_bound: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pt(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im).unwrap()
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(dirichlet_partial_sum(pt(2.0, 0.0), 2).unwrap(), Cplx::new(1.0, 0.0));
        let s0 = dirichlet_partial_sum(pt(0.0, 0.0), 4).unwrap();
        assert!((s0.re - 3.0).abs() < 1e-15 && s0.im == 0.0);
        let direct: f64 = (1..1000).map(|n| 1.0 / (n as f64 * n as f64)).sum();
        let s2 = dirichlet_partial_sum(pt(2.0, 0.0), 1000).unwrap();
        assert!((s2.re - direct).abs() < 1e-12);
        assert!((s2.re - 1.6439336).abs() < 1e-6);
        assert!(dirichlet_partial_sum(pt(2.0, 0.0), 1).is_err());
    }

    #[test]
    fn tail_two_terms() {
        let p = EvalParams::fixed(10, 1).unwrap();
        let (r, _) = em_tail(pt(2.0, 0.0), &p, bernoulli::shared_table()).unwrap();
        let expected = 1e-2 / 4.0 + 1e-3 / 12.0;
        assert!((r.re - expected).abs() < 1e-12);
        assert!(r.im.abs() < 1e-18);
    }

    #[test]
    fn tail_order_zero_rejected() {
        assert!(matches!(EvalParams::fixed(10, 0), Err(ZetaError::Parameter(_))));
    }

    #[test]
    fn tail_errors() {
        let p = EvalParams::fixed(10, 4).unwrap();
        let small = bernoulli::build_table(8).unwrap();
        assert!(matches!(em_tail(pt(2.0, 0.0), &p, &small), Err(ZetaError::Parameter(_))));
        assert!(matches!(
            em_tail(pt(0.0, 0.0), &p, bernoulli::shared_table()),
            Err(ZetaError::Domain(_))
        ));
    }

    #[test]
    fn tail_bound_covers_higher_order() {
        let s = pt(0.5, 20.0);
        let table = bernoulli::shared_table();
        let lo = EvalParams::fixed(40, 8).unwrap();
        let hi = EvalParams::fixed(40, 16).unwrap();
        let (r_lo, b_lo) = em_tail(s, &lo, table).unwrap();
        let (r_hi, b_hi) = em_tail(s, &hi, table).unwrap();
        assert!(b_lo < 1e-9, "{b_lo}");
        assert!((r_lo - r_hi).norm() <= b_lo + b_hi + 1e-15);
    }

    #[test]
    fn abbreviated_form_matches_full_form() {
        let s = pt(0.3, 7.0);
        let p = EvalParams::fixed(30, 6).unwrap();
        let (r, _) = em_tail(s, &p, bernoulli::shared_table()).unwrap();
        let z = s.to_complex();
        let n = 30.0;
        let abbrev = partial_sum(z, 30) + pow_neg(n, z) * n / (z - 1.0) + z * r;
        let full = zeta_gb(s, &p).unwrap().value;
        assert!((abbrev - full).norm() < 1e-13);
    }

    #[test]
    fn classical_values() {
        let p = EvalParams::fixed(50, 10).unwrap();
        let z2 = zeta_gb(pt(2.0, 0.0), &p).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-10);
        let z0 = zeta_gb(pt(0.0, 0.0), &p).unwrap();
        assert!((z0.value.re + 0.5).abs() < 1e-10);
        let zm1 = zeta_gb(pt(-1.0, 0.0), &p).unwrap();
        assert!((zm1.value.re + 1.0 / 12.0).abs() < 1e-9);
    }

    #[test]
    fn pole_rejected() {
        let p = EvalParams::fixed(50, 10).unwrap();
        assert_eq!(zeta_gb(pt(1.0, 0.0), &p), Err(ZetaError::Pole));
    }

    #[test]
    fn pole_residue() {
        let p = EvalParams::fixed(50, 10).unwrap();
        for h in [1e-3, 1e-4, 1e-5] {
            let v = zeta_gb(pt(1.0 + h, 0.0), &p).unwrap().value;
            let residue = v * h;
            assert!((residue.re - 1.0).abs() <= 2.0 * h, "h={h}: {residue}");
        }
    }

    #[test]
    fn auto_params_examples() {
        let p = auto_params(pt(2.0, 0.0), 1e-10).unwrap();
        assert_eq!(p.cutoff_n, 16);
        assert!(p.tail_order_nu <= 6);
        assert!(remainder_bound(pt(2.0, 0.0), &p) <= 1e-10);

        let s = pt(0.5, 100.0);
        let p = auto_params(s, 1e-8).unwrap();
        assert!(p.cutoff_n >= 202);
        assert!(remainder_bound(s, &p) <= 1e-8);

        assert!(matches!(auto_params(pt(2.0, 0.0), 1e-20), Err(ZetaError::Precision { .. })));
        assert!(matches!(auto_params(pt(0.5, 600.0), 1e-8), Err(ZetaError::Parameter(_))));
    }

    #[test]
    fn bound_decreases_in_nu_at_small_order() {
        let s = pt(2.0, 0.0);
        let bounds: Vec<f64> = (2..=6)
            .map(|nu| remainder_bound(s, &EvalParams::fixed(16, nu).unwrap()))
            .collect();
        assert!(bounds.windows(2).all(|w| w[1] < w[0]), "{bounds:?}");
    }

    #[test]
    fn unreachable_eps_reports_best_bound() {
        // far left of the plane every tail diverges
        match auto_params(pt(-80.0, 0.0), 1e-8) {
            Err(ZetaError::Precision { best_bound, .. }) => assert!(best_bound > 1e-8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn auto_eval_near_first_zero() {
        let r = zeta_gb_auto(pt(0.5, 14.134725141734695), 1e-10).unwrap();
        assert!(r.value.norm() < 1e-6);
        assert!(r.remainder_bound <= 1e-10);
    }
}
