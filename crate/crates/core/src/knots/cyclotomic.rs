//! Exact arithmetic in cyclotomic fields Q(zeta_n), with sign
//! determination of real elements under the distinguished embedding
//! zeta_n -> exp(2 pi i / n) by adaptive interval refinement.

use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rational};

/// The field Q(zeta_n) presented as Q[x]/Phi_n(x).
#[derive(Debug)]
pub struct CycField {
    pub n: u64,
    pub degree: usize,
    /// Monic minimal polynomial coefficients, constant first, length
    /// `degree + 1`.
    modulus: Vec<Rational>,
    /// zeta^k reduced mod Phi_n for k in 0..n (covers conjugation and
    /// primitive-power lookups).
    powers: Vec<Vec<Rational>>,
}

/// Element of a cyclotomic field; coefficient vector of length `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cyc {
    pub field: Rc<CycField>,
    pub coeffs: Vec<Rational>,
}

/// Integer coefficients of the n-th cyclotomic polynomial, constant first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    // x^n - 1 divided by the product of Phi_d over proper divisors d | n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact_int(&num, &phi_d);
        }
    }
    num
}

fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn].clone();
    debug_assert!(lead == BigInt::one());
    let mut quo = vec![BigInt::zero(); rem.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        quo[i] = c.clone() / &lead;
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &quo[i] * dc;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quo
}

impl CycField {
    pub fn new(n: u64) -> Rc<CycField> {
        assert!(n >= 1);
        let phi: Vec<Rational> = cyclotomic_polynomial(n)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let degree = phi.len() - 1;
        // Precompute zeta^k mod Phi for k in 0..n via repeated shifts.
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(n as usize);
        let mut cur = vec![Rational::zero(); degree.max(1)];
        if degree == 0 {
            // n = 1: the field is Q itself and zeta = 1 has empty support;
            // keep a single rational slot.
            powers.push(vec![Rational::one()]);
        } else {
            cur[0] = Rational::one();
            for _ in 0..n {
                powers.push(cur.clone());
                cur = shift_mod(&cur, &phi);
            }
        }
        Rc::new(CycField {
            n,
            degree: degree.max(1),
            modulus: phi,
            powers,
        })
    }

    pub fn zero(self: &Rc<Self>) -> Cyc {
        Cyc {
            field: Rc::clone(self),
            coeffs: vec![Rational::zero(); self.degree],
        }
    }

    pub fn one(self: &Rc<Self>) -> Cyc {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(self: &Rc<Self>, r: Rational) -> Cyc {
        let mut coeffs = vec![Rational::zero(); self.degree];
        coeffs[0] = r;
        Cyc {
            field: Rc::clone(self),
            coeffs,
        }
    }

    /// zeta^k for any integer k.
    pub fn zeta_pow(self: &Rc<Self>, k: i64) -> Cyc {
        let k = k.rem_euclid(self.n as i64) as usize;
        Cyc {
            field: Rc::clone(self),
            coeffs: self.powers[k].clone(),
        }
    }

    /// Evaluates a Laurent polynomial at zeta^k.
    pub fn eval_laurent(self: &Rc<Self>, p: &LaurentPoly, k: i64) -> Cyc {
        let mut acc = self.zero();
        for (e, c) in p.terms() {
            let term = self.zeta_pow((k as i128 * *e as i128).rem_euclid(self.n as i128) as i64);
            acc = acc.add(&term.scale(c));
        }
        acc
    }
}

fn shift_mod(cur: &[Rational], modulus: &[Rational]) -> Vec<Rational> {
    let degree = modulus.len() - 1;
    let mut next = vec![Rational::zero(); degree];
    // next = x * cur mod Phi
    let top = cur[degree - 1].clone();
    for i in (1..degree).rev() {
        next[i] = cur[i - 1].clone();
    }
    next[0] = Rational::zero();
    if !top.is_zero() {
        for i in 0..degree {
            next[i] -= &top * &modulus[i];
        }
    }
    next
}

impl Cyc {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        Cyc {
            field: Rc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        Cyc {
            field: Rc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            field: Rc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Cyc {
        Cyc {
            field: Rc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        let d = self.field.degree;
        let mut conv = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        // Reduce degrees >= d using the monic modulus.
        for i in (d..2 * d - 1).rev() {
            let c = conv[i].clone();
            if c.is_zero() {
                continue;
            }
            conv[i] = Rational::zero();
            for (j, m) in self.field.modulus.iter().take(d).enumerate() {
                conv[i - d + j] -= &c * m;
            }
        }
        Cyc {
            field: Rc::clone(&self.field),
            coeffs: conv.into_iter().take(d).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::invalid("division by zero in cyclotomic field"));
        }
        if self.field.degree == 1 {
            let mut coeffs = vec![Rational::zero(); 1];
            coeffs[0] = self.coeffs[0].recip();
            return Ok(Cyc {
                field: Rc::clone(&self.field),
                coeffs,
            });
        }
        // Extended Euclid with the invariant s_i * self = r_i (mod Phi);
        // the final nonzero constant remainder c gives inverse = s/c.
        let mut r0: Vec<Rational> = self.field.modulus.clone();
        let mut r1: Vec<Rational> = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![Rational::zero()];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while poly_deg(&r1) > 0 {
            let (q, rem) = poly_divmod(&r0, &r1);
            let rem = trim(rem);
            let new_s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = new_s;
            if r1.len() == 1 && r1[0].is_zero() {
                return Err(Error::inconsistency(
                    "element shares a factor with the cyclotomic modulus",
                ));
            }
        }
        let unit = r1[0].clone();
        let mut inv_coeffs: Vec<Rational> = s1.iter().map(|c| c / &unit).collect();
        // reduce mod Phi (monic) and pad to full length
        while trim(inv_coeffs.clone()).len() > self.field.degree {
            inv_coeffs = trim(inv_coeffs);
            let i = inv_coeffs.len() - 1;
            let c = inv_coeffs[i].clone();
            inv_coeffs.pop();
            if c.is_zero() {
                continue;
            }
            let d = self.field.modulus.len() - 1;
            for (j, m) in self.field.modulus.iter().take(d).enumerate() {
                inv_coeffs[i - d + j] -= &c * m;
            }
        }
        inv_coeffs.resize(self.field.degree, Rational::zero());
        let out = Cyc {
            field: Rc::clone(&self.field),
            coeffs: inv_coeffs,
        };
        debug_assert!({
            let p = out.mul(self);
            p.coeffs[0] == Rational::one() && p.coeffs[1..].iter().all(|c| c.is_zero())
        });
        Ok(out)
    }

    /// Complex conjugation: zeta -> zeta^{n-1}.
    pub fn conj(&self) -> Cyc {
        let n = self.field.n;
        let mut acc = self.field.zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = ((n as i64 - j as i64) % n as i64).rem_euclid(n as i64);
            acc = acc.add(&self.field.zeta_pow(k).scale(c));
        }
        acc
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Sign of a real element (fixed by conjugation) at the distinguished
    /// embedding. Errors on non-real input.
    pub fn real_sign(&self) -> Result<i32> {
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(r) = self.to_rational() {
            return Ok(if r.is_positive() { 1 } else { -1 });
        }
        if !self.is_real() {
            return Err(Error::invalid("sign of a non-real cyclotomic element"));
        }
        // Re(value) = sum c_j cos(2 pi j / n); refine until 0 is excluded.
        let mut precision = 64u32;
        while precision <= 1 << 14 {
            let mut lo = Rational::zero();
            let mut hi = Rational::zero();
            for (j, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (clo, chi) = cos_two_pi_ratio(j as u64, self.field.n, precision);
                let (tlo, thi) = scale_interval(&clo, &chi, c);
                lo += tlo;
                hi += thi;
            }
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            precision *= 2;
        }
        Err(Error::inconsistency(
            "interval refinement failed to separate a nonzero element from zero",
        ))
    }
}

fn scale_interval(lo: &Rational, hi: &Rational, c: &Rational) -> (Rational, Rational) {
    if c.is_negative() {
        (hi * c, lo * c)
    } else {
        (lo * c, hi * c)
    }
}

// -- dense polynomial helpers over Q (constant-first coefficient vectors) --

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_deg(v: &[Rational]) -> usize {
    v.len() - 1
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect()
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let dd = poly_deg(&den);
    let mut rem = num.to_vec();
    if poly_deg(&trim(rem.clone())) < dd {
        return (vec![Rational::zero()], rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        let q = c / &den[dd];
        quo[i] = q.clone();
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &q * dc;
        }
    }
    (quo, rem)
}

// -- rigorous interval evaluation of cos(2 pi j / n) --

/// Rational enclosure of pi to roughly `precision` bits (Machin's formula
/// with alternating-series tail bounds).
pub fn pi_interval(precision: u32) -> (Rational, Rational) {
    let eps = Rational::new(BigInt::one(), BigInt::from(2).pow(precision + 4));
    let (a_lo, a_hi) = arctan_inv_interval(5, &eps);
    let (b_lo, b_hi) = arctan_inv_interval(239, &eps);
    let sixteen = Rational::from_integer(BigInt::from(16));
    let four = Rational::from_integer(BigInt::from(4));
    (
        &sixteen * &a_lo - &four * &b_hi,
        &sixteen * &a_hi - &four * &b_lo,
    )
}

/// Enclosure of arctan(1/x) for integer x >= 2 via the alternating series.
fn arctan_inv_interval(x: i64, eps: &Rational) -> (Rational, Rational) {
    let x2 = Rational::from_integer(BigInt::from(x * x));
    let mut term = Rational::new(BigInt::one(), BigInt::from(x));
    let mut sum = Rational::zero();
    let mut k = 0u32;
    loop {
        let contrib = &term / Rational::from_integer(BigInt::from(2 * k as i64 + 1));
        if k % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term /= &x2;
        let next = &term / Rational::from_integer(BigInt::from(2 * k as i64 + 3));
        if &next < eps {
            // Alternating with decreasing terms: the tail is bounded by the
            // next term in magnitude.
            return if k % 2 == 0 {
                (sum.clone() - next.clone(), sum)
            } else {
                (sum.clone(), sum + next)
            };
        }
        k += 1;
    }
}

/// Enclosure of cos(2 pi j / n).
fn cos_two_pi_ratio(j: u64, n: u64, precision: u32) -> (Rational, Rational) {
    let (pi_lo, pi_hi) = pi_interval(precision);
    let ratio = Rational::new(BigInt::from(2 * (j % n)), BigInt::from(n));
    let x_lo = &pi_lo * &ratio;
    let x_hi = &pi_hi * &ratio;
    let mid = (&x_lo + &x_hi) / Rational::from_integer(BigInt::from(2));
    let half_width = (&x_hi - &x_lo) / Rational::from_integer(BigInt::from(2));
    let eps = Rational::new(BigInt::one(), BigInt::from(2).pow(precision));
    let (c_lo, c_hi) = cos_point(&mid, &eps);
    // |cos(a) - cos(b)| <= |a - b|
    (c_lo - &half_width, c_hi + half_width)
}

/// Taylor enclosure of cos at a rational point with |x| <= 2 pi + 1.
fn cos_point(x: &Rational, eps: &Rational) -> (Rational, Rational) {
    let x2 = x * x;
    let mut term = Rational::one(); // x^{2k} / (2k)!
    let mut sum = Rational::zero();
    let mut k = 0u32;
    loop {
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        // next term: * x^2 / ((2k+1)(2k+2))
        let denom = Rational::from_integer(BigInt::from((2 * k as i64 + 1) * (2 * k as i64 + 2)));
        term = &term * &x2 / denom;
        k += 1;
        // Once terms are decreasing (x^2 < (2k+1)(2k+2)) and small, the
        // alternating tail is bounded by the next term.
        let decreasing = x2 < Rational::from_integer(BigInt::from((2 * k as i64 + 1) * (2 * k as i64 + 2)));
        if decreasing && &term < eps {
            return (sum.clone() - term.clone(), sum + term);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn cyclotomic_polys() {
        let to_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.into_iter().map(|c| i64::try_from(&c).unwrap()).collect()
        };
        assert_eq!(to_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn field_arithmetic_in_q_zeta_12() {
        let f = CycField::new(12);
        let z = f.zeta_pow(1);
        // zeta^12 = 1
        let mut acc = f.one();
        for _ in 0..12 {
            acc = acc.mul(&z);
        }
        assert_eq!(acc, f.one());
        // zeta^3 = i, so (zeta^3)^2 = -1
        let i = f.zeta_pow(3);
        assert_eq!(i.mul(&i), f.from_rational(rat(-1, 1)));
        // inverse
        let w = f.zeta_pow(5).add(&f.from_rational(rat(2, 1)));
        let winv = w.inv().unwrap();
        assert_eq!(w.mul(&winv), f.one());
        // conjugation is an involution fixing zeta + zeta^{-1}
        let real = z.add(&z.conj());
        assert!(real.is_real());
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn real_signs() {
        let f = CycField::new(12);
        let z = f.zeta_pow(1);
        // 2 cos(pi/6) = sqrt(3) > 0
        let c = z.add(&z.conj());
        assert_eq!(c.real_sign().unwrap(), 1);
        // sqrt(3) - 2 < 0
        let d = c.sub(&f.from_rational(rat(2, 1)));
        assert_eq!(d.real_sign().unwrap(), -1);
        // sqrt(3) - 7/4 < 0 (needs a finer interval: sqrt(3) = 1.732...)
        let e = c.sub(&f.from_rational(rat(7, 4)));
        assert_eq!(e.real_sign().unwrap(), -1);
        // sqrt(3) - 173/100 > 0
        let g = c.sub(&f.from_rational(rat(173, 100)));
        assert_eq!(g.real_sign().unwrap(), 1);
        assert!(f.zeta_pow(1).real_sign().is_err());
    }

    #[test]
    fn pi_enclosure_is_tight() {
        let (lo, hi) = pi_interval(64);
        assert!(lo < hi);
        // pi is between 3.14159265 and 3.14159266
        assert!(lo > rat(314159265, 100000000));
        assert!(hi < rat(314159266, 100000000));
    }

    #[test]
    fn eval_laurent_hits_roots() {
        // t^2 + t + 1 vanishes at the primitive cube roots of unity
        let f = CycField::new(3);
        let p = LaurentPoly::from_int_coeffs(&[1, 1, 1]);
        assert!(f.eval_laurent(&p, 1).is_zero());
        assert!(!f.eval_laurent(&p, 0).is_zero());
        // negative exponents use zeta^{-1}
        let q = LaurentPoly::from_terms([(-1, rat(1, 1)), (0, rat(1, 1)), (1, rat(1, 1))]);
        assert!(f.eval_laurent(&q, 1).is_zero());
    }
}
