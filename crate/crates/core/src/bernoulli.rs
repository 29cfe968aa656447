//! Exact Bernoulli numbers for the Euler-Maclaurin tail.
//!
//! Values come from the recurrence `Σ_{k=0}^{n} C(n+1, k)·B_k = 0` carried out in
//! big-rational arithmetic; conversion to floating point happens only where the
//! coefficients are consumed.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Result, ZetaError};

/// Largest index the table will build. Past B_60 the tail terms are
/// meaningless in binary64.
pub const MAX_INDEX: usize = 60;

/// B_0 ..= B_max_index as exact rationals in lowest terms.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    max_index: usize,
    values: Vec<BigRational>,
}

/// One row of the debug dump.
#[derive(Debug, Clone, Serialize)]
pub struct BernoulliEntry {
    pub index: usize,
    pub numerator: String,
    pub denominator: String,
}

impl BernoulliTable {
    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, index: usize) -> Option<&BigRational> {
        self.values.get(index)
    }

    /// `B_index` rounded to the nearest binary64.
    pub fn to_f64(&self, index: usize) -> Option<f64> {
        self.values.get(index).and_then(ToPrimitive::to_f64)
    }

    /// `B_2μ / (2μ)!` rounded once from the exact rational.
    pub fn tail_coefficient(&self, mu: usize) -> Option<f64> {
        let b = self.values.get(2 * mu)?;
        let fact = factorial(2 * mu);
        (b / BigRational::from_integer(fact)).to_f64()
    }

    pub fn entries(&self) -> Vec<BernoulliEntry> {
        self.values
            .iter()
            .enumerate()
            .map(|(index, b)| BernoulliEntry {
                index,
                numerator: b.numer().to_string(),
                denominator: b.denom().to_string(),
            })
            .collect()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Builds B_0 ..= B_max_index. `max_index` must be even and in `2..=60`.
pub fn build_table(max_index: usize) -> Result<BernoulliTable> {
    if max_index < 2 || !max_index.is_multiple_of(2) || max_index > MAX_INDEX {
        return Err(ZetaError::param(format!(
            "bernoulli max_index must be even and in 2..={MAX_INDEX}, got {max_index}"
        )));
    }
    let mut values: Vec<BigRational> = Vec::with_capacity(max_index + 1);
    values.push(BigRational::one());
    for n in 1..=max_index {
        if n >= 3 && n % 2 == 1 {
            values.push(BigRational::zero());
            continue;
        }
        // Row n+1 of Pascal's triangle, built incrementally.
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        // binom now holds C(n+1, n) = n+1
        values.push(-acc / BigRational::from_integer(binom));
    }
    Ok(BernoulliTable { max_index, values })
}

/// Process-wide table up to [`MAX_INDEX`].
pub fn shared_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| build_table(MAX_INDEX).expect("cap is a valid index"))
}

/// `B_2μ/(2μ)!` for μ = 0..=30 as binary64 (index 0 unused, stored as 1).
pub(crate) fn tail_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let table = shared_table();
        (0..=MAX_INDEX / 2)
            .map(|mu| table.tail_coefficient(mu).expect("within table"))
            .collect()
    })
}

/// `|B_2μ/(2μ)!|` as binary64, for remainder bounds.
pub(crate) fn tail_coefficient_abs(mu: usize) -> Option<f64> {
    tail_coefficients().get(mu).map(|c| c.abs())
}

/// Sign check `sign(B_2μ) = (−1)^(μ+1)` on the stored values.
pub fn signs_alternate(table: &BernoulliTable) -> bool {
    (1..=table.max_index / 2).all(|mu| {
        let b = &table.values[2 * mu];
        if mu % 2 == 1 {
            b.is_positive()
        } else {
            b.is_negative()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_table() {
        let t = build_table(4).unwrap();
        assert_eq!(t.get(0), Some(&rat(1, 1)));
        assert_eq!(t.get(1), Some(&rat(-1, 2)));
        assert_eq!(t.get(2), Some(&rat(1, 6)));
        assert_eq!(t.get(3), Some(&rat(0, 1)));
        assert_eq!(t.get(4), Some(&rat(-1, 30)));
    }

    #[test]
    fn base_case() {
        let t = build_table(2).unwrap();
        assert_eq!(t.values().len(), 3);
        assert_eq!(t.get(2), Some(&rat(1, 6)));
    }

    #[test]
    fn rejects_bad_indices() {
        for bad in [0, 1, 3, 7, 62, 100] {
            assert!(matches!(build_table(bad), Err(ZetaError::Parameter(_))), "{bad}");
        }
    }

    #[test]
    fn odd_values_vanish_and_signs_alternate() {
        let t = shared_table();
        for n in (3..=MAX_INDEX).step_by(2) {
            assert!(t.get(n).unwrap().is_zero());
        }
        assert!(signs_alternate(t));
        for b in t.values() {
            assert!(b.denom().is_positive());
        }
    }

    #[test]
    fn tail_coefficients_match_exact() {
        let c = tail_coefficients();
        assert_eq!(c.len(), 31);
        assert!((c[1] - 1.0 / 12.0).abs() < 1e-17);
        assert!((c[2] + 1.0 / 720.0).abs() < 1e-18);
    }

    #[test]
    fn entries_dump() {
        let e = build_table(2).unwrap().entries();
        assert_eq!(e[1].numerator, "-1");
        assert_eq!(e[1].denominator, "2");
    }
}
