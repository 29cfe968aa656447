//! The auxiliary function Q defined through
//!
//! ```text
//! 1/Q(s) = S(s) / (s·N^{1-s}) + r(N, s) / N^{1-s}
//! ```
//!
//! which turns `Z(s) = 0` into `s(s-1) + Q(s) = 0`. Q depends on (N, ν), so every
//! value carries the parameters it was computed with.

use serde::{Deserialize, Serialize};

use crate::bernoulli;
use crate::error::{Result, ZetaError};
use crate::point::{ComplexPoint, Cplx, Real};
use crate::zeta_core::{self, EvalParams};

/// Below this, 1/Q is treated as zero and Q as infinite.
pub const INVERSE_UNDERFLOW: Real = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QValue {
    pub value: Cplx,
    /// |1/Q|, kept to spot near-singular Q.
    pub inverse_magnitude: Real,
    pub params_used: EvalParams,
}

fn check_domain(s: ComplexPoint) -> Result<()> {
    if s.is_zero() || s.is_one() {
        return Err(ZetaError::Domain(format!("Q is undefined at s = {}", s.re)));
    }
    Ok(())
}

/// Q(s) for fixed (N, ν), from the same partial sum and tail as the evaluator.
pub fn q_gb(s: ComplexPoint, params: &EvalParams) -> Result<QValue> {
    check_domain(s)?;
    params.validate()?;
    let z = s.to_complex();
    let n = params.cutoff_n as Real;
    let sum = zeta_core::partial_sum(z, params.cutoff_n);
    let (r, _) = zeta_core::em_tail(s, params, bernoulli::shared_table())?;
    // N^{1-s}
    let lead = zeta_core::pow_neg(n, z) * n;
    let inverse = sum / (z * lead) + r / lead;
    let inverse_magnitude = inverse.norm();
    if !(inverse_magnitude >= INVERSE_UNDERFLOW) {
        return Err(ZetaError::SingularQ { inverse_magnitude });
    }
    let value = inverse.inv();
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(ZetaError::SingularQ { inverse_magnitude });
    }
    Ok(QValue { value, inverse_magnitude, params_used: *params })
}

/// `s(s-1) + Q(s)`; vanishes exactly where Z does.
pub fn zero_residual(s: ComplexPoint, params: &EvalParams) -> Result<Cplx> {
    let q = q_gb(s, params)?;
    let z = s.to_complex();
    Ok(z * (z - 1.0) + q.value)
}

/// `|Z(s) − s·N^{1-s}·(1/(s(s-1)) + 1/Q(s))|`, an identity at every s.
pub fn consistency_identity(s: ComplexPoint, params: &EvalParams) -> Result<Real> {
    let q = q_gb(s, params)?;
    let zeta = zeta_core::zeta_gb(s, params)?;
    let z = s.to_complex();
    let n = params.cutoff_n as Real;
    let lead = zeta_core::pow_neg(n, z) * n;
    let rebuilt = z * lead * ((z * (z - 1.0)).inv() + q.value.inv());
    Ok((zeta.value - rebuilt).norm())
}
