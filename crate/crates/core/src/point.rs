use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZetaError};

/// Working precision. Every evaluator is written against this alias so a wider
/// float type can be dropped in later.
pub type Real = f64;
pub type Cplx = Complex<Real>;

/// A finite point `s = re + i·im` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: Real,
    pub im: Real,
}

impl ComplexPoint {
    pub fn new(re: Real, im: Real) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(ZetaError::Domain(format!("non-finite point {re} + {im}i")));
        }
        Ok(Self { re, im })
    }

    /// Point on the critical line.
    pub fn on_line(t: Real) -> Result<Self> {
        Self::new(0.5, t)
    }

    pub fn conj(self) -> Self {
        Self { re: self.re, im: -self.im }
    }

    /// Offset from the critical line, `Re s − 1/2`.
    pub fn xi(self) -> Real {
        self.re - 0.5
    }

    pub fn to_complex(self) -> Cplx {
        Cplx::new(self.re, self.im)
    }

    pub fn from_complex(z: Cplx) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    pub fn is_one(self) -> bool {
        self.re == 1.0 && self.im == 0.0
    }
}

impl From<ComplexPoint> for Cplx {
    fn from(p: ComplexPoint) -> Self {
        p.to_complex()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(ComplexPoint::new(f64::NAN, 0.0).is_err());
        assert!(ComplexPoint::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn xi_and_conj() {
        let p = ComplexPoint::new(0.6, 3.0).unwrap();
        assert!((p.xi() - 0.1).abs() < 1e-15);
        assert_eq!(p.conj().im, -3.0);
    }
}
