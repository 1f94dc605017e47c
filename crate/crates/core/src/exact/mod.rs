//! Arbitrary-precision exact algebra: rationals, integer and rational
//! matrices, Smith normal form, symmetric signatures, Laurent polynomials
//! with the `t -> t^{-1}` involution, resultants, and small-degree rational
//! factorization.
//!
//! Rationals are always stored reduced with a positive denominator
//! (guaranteed by `num_rational`). Rationals serialize as strings `"p/q"`
//! with `q` omitted when it is 1; matrices serialize as arrays of arrays of
//! such strings.

mod factor;
mod laurent;
mod matrix;
mod signature;
mod snf;

pub use factor::{
    factor_rational_poly, factor_rational_poly_capped, Factorization, DEFAULT_FACTOR_DEGREE_CAP,
};
pub use laurent::{resultant, LaurentPoly};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use signature::{hermitian_signature, signature, signature_int, SignatureScalar};
pub use snf::{
    cokernel_invariants, factorize, integer_kernel, rat_inverse, smith_normal_form, solve_integer,
    AbelianGroupInvariants, SmithDecomposition,
};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Renders a rational as `"p/q"`, omitting `/q` when the denominator is 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn rational_from_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::invalid(format!("malformed integer `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den == BigInt::from(0) {
                return Err(Error::invalid(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Floor of a rational number as a big integer.
pub fn rational_floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Ceiling of a rational number as a big integer.
pub fn rational_ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        let r = rat(-22, 8);
        assert_eq!(rational_to_string(&r), "-11/4");
        assert_eq!(rational_from_str("-11/4").unwrap(), r);
        assert_eq!(rational_to_string(&rat(6, 3)), "2");
        assert_eq!(rational_from_str("2").unwrap(), rat(2, 1));
    }

    #[test]
    fn rational_strings_reject_garbage() {
        assert!(rational_from_str("1/0").is_err());
        assert!(rational_from_str("a/b").is_err());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(rational_floor(&rat(-7, 2)), int(-4));
        assert_eq!(rational_ceil(&rat(-7, 2)), int(-3));
        assert_eq!(rational_floor(&rat(7, 2)), int(3));
    }
}
