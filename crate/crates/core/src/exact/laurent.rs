use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::matrix::RatMatrix;
use super::{rational_from_str, rational_to_string, Rational};

/// Laurent polynomial over the rationals with finitely many nonzero
/// coefficients. The involution `*` sends the exponent `i` to `-i`.
///
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Rational::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        LaurentPoly::monomial(1, Rational::one())
    }

    pub fn monomial(exp: i64, coeff: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds `c_0 + c_1 t + ... + c_n t^n` from integer coefficients.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        LaurentPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as i64, Rational::from_integer(BigInt::from(c)))),
        )
    }

    fn add_term(&mut self, exp: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Degree of the polynomial part, i.e. `max_exp - min_exp`.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    /// The involution `*`: maps `sum a_i t^i` to `sum a_i t^{-i}`.
    pub fn star(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::invalid("evaluation at 0 with negative exponents"));
        }
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            acc += c * pow_rational(x, *e);
        }
        Ok(acc)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Polynomial part: shifts the minimal exponent to zero. Returns the
    /// shifted polynomial and the extracted power of `t`.
    pub fn polynomial_part(&self) -> (Self, i64) {
        match self.min_exp() {
            None => (LaurentPoly::zero(), 0),
            Some(lo) => (self.shift(-lo), lo),
        }
    }

    /// Dense coefficient vector of the polynomial part, constant term first.
    pub fn dense_coeffs(&self) -> Vec<Rational> {
        let (p, _) = self.polynomial_part();
        let n = p.max_exp().unwrap_or(0);
        (0..=n).map(|e| p.coeff(e)).collect()
    }

    /// Canonical associate: lowest exponent 0, primitive integer
    /// coefficients, positive leading coefficient. Returns the canonical
    /// polynomial together with the unit `u = c * t^k` (as a pair) such that
    /// `self = u * canonical`.
    pub fn canonical_associate(&self) -> (Self, Rational, i64) {
        if self.is_zero() {
            return (LaurentPoly::zero(), Rational::one(), 0);
        }
        let (p, shift) = self.polynomial_part();
        // Clear denominators, divide by content, fix the leading sign.
        let mut denom_lcm = BigInt::one();
        for (_, c) in p.terms() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<(i64, BigInt)> = p
            .terms()
            .map(|(e, c)| (*e, c.numer() * (&denom_lcm / c.denom())))
            .collect();
        let mut content = BigInt::zero();
        for (_, c) in &ints {
            content = content.gcd(c);
        }
        let lead_negative = ints.last().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if lead_negative {
            content = -content;
        }
        let canonical = LaurentPoly {
            coeffs: ints
                .iter()
                .map(|(e, c)| (*e, Rational::from_integer(c / &content)))
                .collect(),
        };
        let unit = Rational::new(content, denom_lcm);
        (canonical, unit, shift)
    }

    /// True iff `self` and `other` agree up to a unit `c t^k`.
    pub fn is_associate_of(&self, other: &Self) -> bool {
        self.canonical_associate().0 == other.canonical_associate().0
    }

    /// True iff `self` is an associate of `other` or of `other*`.
    pub fn is_star_associate_of(&self, other: &Self) -> bool {
        self.is_associate_of(other) || self.star().is_associate_of(other)
    }

    /// True iff `self` is an associate of its own involution.
    pub fn is_self_dual(&self) -> bool {
        !self.is_zero() && self.is_star_associate_of(&self.star()) && self.is_associate_of(&self.star())
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (num, num_shift) = self.polynomial_part();
        let (den, den_shift) = other.polynomial_part();
        let mut rem = num.clone();
        let mut quo = LaurentPoly::zero();
        let den_deg = den.max_exp().unwrap();
        let den_lead = den.coeff(den_deg);
        while !rem.is_zero() {
            let rem_deg = rem.max_exp().unwrap();
            if rem_deg < den_deg {
                return None;
            }
            let factor = LaurentPoly::monomial(rem_deg - den_deg, rem.coeff(rem_deg) / &den_lead);
            quo = quo.add(&factor);
            rem = rem.sub(&factor.mul(&den));
            if !rem.is_zero() && rem.min_exp().unwrap() < 0 {
                return None;
            }
        }
        Some(quo.shift(num_shift - den_shift))
    }

    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(e, c)| (e.to_string(), rational_to_string(c)))
            .collect()
    }

    pub fn from_string_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut p = LaurentPoly::zero();
        for (e, c) in map {
            let exp: i64 = e
                .parse()
                .map_err(|_| Error::invalid(format!("bad exponent `{e}`")))?;
            p.add_term(exp, rational_from_str(c)?);
        }
        Ok(p)
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = rational_to_string(&mag);
            match *e {
                0 => write!(f, "{coeff_str}")?,
                1 if mag == Rational::one() => write!(f, "t")?,
                1 => write!(f, "{coeff_str}*t")?,
                _ if mag == Rational::one() => write!(f, "t^{e}")?,
                _ => write!(f, "{coeff_str}*t^{e}")?,
            }
        }
        Ok(())
    }
}

fn pow_rational(x: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = Rational::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

/// Sylvester-determinant resultant of the polynomial parts of `f` and `g`.
///
/// Both inputs must be nonzero; powers of `t` are cleared first, so the
/// result is the classical resultant of the associated ordinary polynomials.
pub fn resultant(f: &LaurentPoly, g: &LaurentPoly) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::invalid("resultant of the zero polynomial"));
    }
    let a = f.dense_coeffs();
    let b = g.dense_coeffs();
    let n = a.len() - 1;
    let m = b.len() - 1;
    if n == 0 && m == 0 {
        return Ok(Rational::one());
    }
    if n == 0 {
        return Ok(pow_rational(&a[0], m as i64));
    }
    if m == 0 {
        return Ok(pow_rational(&b[0], n as i64));
    }
    let size = n + m;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    RatMatrix::from_rows(rows)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c, 1))))
    }

    #[test]
    fn star_is_involutive() {
        let f = poly(&[(-2, 3), (0, -1), (5, 7)]);
        assert_eq!(f.star().star(), f);
    }

    #[test]
    fn star_of_lambda_at_m3() {
        // (m+1)t - m at m = 3 maps to 4 t^{-1} - 3.
        let f = poly(&[(1, 4), (0, -3)]);
        assert_eq!(f.star(), poly(&[(-1, 4), (0, -3)]));
    }

    #[test]
    fn star_associates() {
        let f = poly(&[(1, 4), (0, -3)]);
        let g = poly(&[(-1, 4), (0, -3)]);
        assert!(f.is_star_associate_of(&g));
        assert!(!f.is_star_associate_of(&poly(&[(1, 3), (0, -2)])));
    }

    #[test]
    fn f_fstar_is_self_dual() {
        let f = poly(&[(2, 5), (1, 1), (0, -3)]);
        let p = f.mul(&f.star());
        assert!(p.is_self_dual());
    }

    #[test]
    fn canonical_associate_normalizes() {
        let f = LaurentPoly::from_terms([(-3, rat(-2, 3)), (-1, rat(4, 3))]);
        let (canon, unit, shift) = f.canonical_associate();
        assert_eq!(canon, poly(&[(0, 1), (2, -2)]).canonical_associate().0);
        // reconstruct
        let rebuilt = canon.scale(&unit).shift(shift);
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn resultant_m3_cross_check() {
        // 12t^2 - 25t + 12 against t^2 - 1 gives -49; |−49| = ((m+1)^2−m^2)^2
        // at m = 3 squared is 49.
        let f = poly(&[(2, 12), (1, -25), (0, 12)]);
        let g = poly(&[(2, 1), (0, -1)]);
        assert_eq!(resultant(&f, &g).unwrap(), rat(-49, 1));
    }

    #[test]
    fn resultant_constant_and_linear() {
        let f = poly(&[(1, 1), (0, -2)]);
        assert_eq!(resultant(&f, &LaurentPoly::one()).unwrap(), rat(1, 1));
        let g = poly(&[(1, 1), (0, -3)]);
        // evaluate g at the root of f: 2 - 3 = -1
        assert_eq!(resultant(&f, &g).unwrap(), rat(-1, 1));
        assert!(resultant(&f, &LaurentPoly::zero()).is_err());
    }

    #[test]
    fn division_exact_and_inexact() {
        let f = poly(&[(1, 4), (0, -3)]);
        let g = poly(&[(1, 3), (0, -4)]);
        let prod = f.mul(&g);
        assert_eq!(prod.div_exact(&f).unwrap(), g);
        assert!(prod.add(&LaurentPoly::one()).div_exact(&f).is_none());
    }
}
