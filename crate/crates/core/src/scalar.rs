//! Scalar abstraction for polynomial coefficients.
//!
//! The reduction engine only needs exact ring arithmetic with division by
//! nonzero elements (leading coefficients are normalized to 1). Rationals
//! are the intended instantiation; the trait keeps the polynomial layer
//! independent of the concrete number type.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficient field for noncommutative polynomials.
///
/// `conj` is complex conjugation; for real scalars it is the identity. All
/// relations the engine manipulates have rational coefficients, so the
/// default is enough, but the adjoint map is written against `conj` so the
/// algebra stays correct for any *-field.
pub trait Scalar:
    Clone
    + PartialEq
    + Send
    + Sync
    + std::fmt::Debug
    + std::fmt::Display
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Div<Output = Self>
{
    fn conj(&self) -> Self {
        self.clone()
    }

    /// Render for canonical serialization, `p/q` for rationals.
    fn render(&self) -> String {
        format!("{self}")
    }
}

impl Scalar for BigRational {
    fn render(&self) -> String {
        if self.denom().is_one() {
            format!("{}", self.numer())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {}

/// Integer-valued rational constant.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Parse `p` or `p/q` as produced by [`Scalar::render`].
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let mut parts = s.splitn(2, '/');
    let numer: num_bigint::BigInt = parts.next()?.parse().ok()?;
    match parts.next() {
        None => Some(BigRational::from_integer(numer)),
        Some(d) => {
            let denom: num_bigint::BigInt = d.parse().ok()?;
            if denom.is_zero() {
                None
            } else {
                Some(BigRational::new(numer, denom))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_round_trip() {
        let x = BigRational::new(3.into(), (-6).into());
        assert_eq!(x.render(), "-1/2");
        assert_eq!(parse_rat("-1/2"), Some(x));
        assert_eq!(rat(7).render(), "7");
        assert_eq!(parse_rat("7"), Some(rat(7)));
    }
}
