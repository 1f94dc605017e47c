use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::laurent::LaurentPoly;
use super::Rational;

/// Default cap on the degree of the polynomial part accepted by
/// [`factor_rational_poly`].
pub const DEFAULT_FACTOR_DEGREE_CAP: i64 = 16;

/// Factorization of a Laurent polynomial over the rationals: irreducible
/// canonical-associate factors with multiplicities, together with the unit
/// `c * t^k` restoring the input exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(LaurentPoly, u32)>,
    pub unit_coeff: Rational,
    pub unit_exp: i64,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn product(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::monomial(self.unit_exp, self.unit_coeff.clone());
        for (f, mult) in &self.factors {
            acc = acc.mul(&f.pow(*mult));
        }
        acc
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Factors a nonzero Laurent polynomial into irreducibles over the
/// rationals. Rational roots are stripped first; the remaining part is
/// split by Kronecker interpolation. Each returned factor is in canonical
/// associate form (lowest exponent 0, primitive, positive leading
/// coefficient), sorted for determinism.
pub fn factor_rational_poly(f: &LaurentPoly) -> Result<Factorization> {
    factor_rational_poly_capped(f, DEFAULT_FACTOR_DEGREE_CAP)
}

/// Same as [`factor_rational_poly`] with an explicit degree cap.
pub fn factor_rational_poly_capped(f: &LaurentPoly, degree_cap: i64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::invalid("factorization of the zero polynomial"));
    }
    if f.span() > degree_cap {
        return Err(Error::capability(format!(
            "polynomial degree {} exceeds factorization cap {}",
            f.span(),
            degree_cap
        )));
    }
    let (canon, unit_coeff, unit_exp) = f.canonical_associate();
    let mut factors: Vec<LaurentPoly> = Vec::new();
    let mut stack = vec![canon];
    while let Some(p) = stack.pop() {
        if p.span() == 0 {
            continue; // unit after normalization
        }
        match split_once(&p) {
            None => factors.push(p),
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
        }
    }
    // The canonical factors multiply to the canonical input up to a
    // positive rational; fold that residue into the unit.
    let mut grouped: Vec<(LaurentPoly, u32)> = Vec::new();
    factors.sort_by(compare_polys);
    for f in factors {
        let canon_f = f.canonical_associate().0;
        match grouped.iter_mut().find(|(g, _)| *g == canon_f) {
            Some((_, m)) => *m += 1,
            None => grouped.push((canon_f, 1)),
        }
    }
    let mut fac = Factorization {
        factors: grouped,
        unit_coeff,
        unit_exp,
    };
    // Exactness correction: associate normalization of the factors can leave
    // a rational unit behind.
    let prod = fac.product();
    if &prod != f {
        let ratio = divide_associates(f, &prod)?;
        fac.unit_coeff *= ratio;
        debug_assert_eq!(fac.product(), *f);
    }
    Ok(fac)
}

fn compare_polys(a: &LaurentPoly, b: &LaurentPoly) -> std::cmp::Ordering {
    let da = a.span();
    let db = b.span();
    da.cmp(&db).then_with(|| {
        let ca = a.dense_coeffs();
        let cb = b.dense_coeffs();
        ca.cmp(&cb)
    })
}

fn divide_associates(f: &LaurentPoly, g: &LaurentPoly) -> Result<Rational> {
    // f and g are associates up to a rational constant (no t power:
    // canonical_associate already accounted for the shift).
    let q = f
        .div_exact(g)
        .ok_or_else(|| Error::inconsistency("factor product is not an associate of the input"))?;
    if q.span() != 0 {
        return Err(Error::inconsistency(
            "factor product differs from input by a non-constant",
        ));
    }
    Ok(q.coeff(q.min_exp().unwrap_or(0)))
}

/// Attempts to split a primitive integer polynomial (canonical form, degree
/// >= 1) into two nontrivial factors. `None` means irreducible.
fn split_once(p: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly)> {
    let deg = p.span();
    if deg <= 1 {
        return None;
    }
    // Rational root search: candidates num/den with num | constant term and
    // den | leading coefficient.
    let coeffs = p.dense_coeffs();
    let a0 = rational_as_int(&coeffs[0]);
    let an = rational_as_int(&coeffs[coeffs.len() - 1]);
    for num in divisors_signed(&a0) {
        for den in divisors_positive(&an) {
            if num.gcd(&den) != BigInt::one() {
                continue;
            }
            let root = Rational::new(num.clone(), den.clone());
            if p.eval(&root).ok()?.is_zero() {
                // factor (den t - num)
                let lin = LaurentPoly::from_terms([
                    (1, Rational::from_integer(den.clone())),
                    (0, Rational::from_integer(-num.clone())),
                ]);
                let rest = p.div_exact(&lin).expect("verified root must divide");
                return Some((lin, rest));
            }
        }
    }
    if deg <= 3 {
        // No rational root and degree <= 3 means irreducible.
        return None;
    }
    kronecker_split(p)
}

/// Kronecker's method: a degree-d factor is determined by its values at
/// d+1 points, and any factor's value at x divides p(x).
fn kronecker_split(p: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly)> {
    let deg = p.span();
    let half = deg / 2;
    for d in 2..=half {
        let points: Vec<i64> = sample_points(d as usize + 1);
        let values: Vec<BigInt> = points
            .iter()
            .map(|&x| rational_as_int(&p.eval(&Rational::from_integer(BigInt::from(x))).unwrap()))
            .collect();
        if values.iter().any(|v| v.is_zero()) {
            // An integer root slipped through; the rational-root pass should
            // have caught it, but be safe.
            continue;
        }
        let divisor_lists: Vec<Vec<BigInt>> = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == 0 {
                    // Sign symmetry: fixing the first value positive halves
                    // the search without losing factors (negate both parts).
                    divisors_positive(v)
                } else {
                    divisors_signed(v)
                }
            })
            .collect();
        let mut choice = vec![0usize; divisor_lists.len()];
        loop {
            let sample: Vec<Rational> = choice
                .iter()
                .zip(&divisor_lists)
                .map(|(&i, list)| Rational::from_integer(list[i].clone()))
                .collect();
            if let Some(q) = interpolate(&points, &sample) {
                if q.span() == d {
                    if let Some(rest) = p.div_exact(&q) {
                        let (qc, _, _) = q.canonical_associate();
                        let rest = p.div_exact(&qc).unwrap_or(rest);
                        return Some((qc, rest));
                    }
                }
            }
            // advance odometer
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < divisor_lists[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    None
}

fn sample_points(n: usize) -> Vec<i64> {
    // 0, 1, -1, 2, -2, ...
    let mut pts = Vec::with_capacity(n);
    let mut k = 0i64;
    while pts.len() < n {
        if k == 0 {
            pts.push(0);
        } else {
            pts.push(k);
            if pts.len() < n {
                pts.push(-k);
            }
        }
        k += 1;
    }
    pts
}

/// Lagrange interpolation; returns `None` if the result is non-integral or
/// has negative-exponent artifacts (it cannot, but keep the guard cheap).
fn interpolate(points: &[i64], values: &[Rational]) -> Option<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    for (i, (&xi, vi)) in points.iter().zip(values).enumerate() {
        let mut basis = LaurentPoly::one();
        let mut denom = Rational::one();
        for (j, &xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&LaurentPoly::from_terms([
                (1, Rational::one()),
                (0, Rational::from_integer(BigInt::from(-xj))),
            ]));
            denom *= Rational::from_integer(BigInt::from(xi - xj));
        }
        acc = acc.add(&basis.scale(&(vi / denom)));
    }
    // Require integer coefficients: any true factor of a primitive integer
    // polynomial can be taken integral.
    for (_, c) in acc.terms() {
        if !c.is_integer() {
            return None;
        }
    }
    Some(acc)
}

fn rational_as_int(r: &Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.numer().clone()
}

fn divisors_positive(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

fn divisors_signed(n: &BigInt) -> Vec<BigInt> {
    let pos = divisors_positive(n);
    let mut out = Vec::with_capacity(pos.len() * 2);
    for d in pos {
        out.push(d.clone());
        out.push(-d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c, 1))))
    }

    #[test]
    fn factors_m3_alexander() {
        // 25 - 12t - 12t^{-1} = -t^{-1} (4t-3)(3t-4)
        let f = poly(&[(0, 25), (1, -12), (-1, -12)]);
        let fac = factor_rational_poly(&f).unwrap();
        let expect: Vec<(LaurentPoly, u32)> = vec![
            (poly(&[(1, 3), (0, -4)]), 1),
            (poly(&[(1, 4), (0, -3)]), 1),
        ];
        assert_eq!(fac.factors, expect);
        assert_eq!(fac.unit_coeff, rat(-1, 1));
        assert_eq!(fac.unit_exp, -1);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn quadratic_without_roots_is_irreducible() {
        let f = poly(&[(2, 1), (0, 1)]);
        let fac = factor_rational_poly(&f).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0], (f.clone(), 1));
    }

    #[test]
    fn unit_input() {
        let fac = factor_rational_poly(&LaurentPoly::one()).unwrap();
        assert!(fac.is_unit());
        assert_eq!(fac.unit_coeff, rat(1, 1));
        assert_eq!(fac.product(), LaurentPoly::one());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let f = poly(&[(17, 1), (0, 1)]);
        assert!(matches!(
            factor_rational_poly(&f),
            Err(crate::Error::Capability(_))
        ));
    }

    #[test]
    fn kronecker_splits_quartic_without_rational_roots() {
        // (t^2+1)(t^2-2) has no rational roots
        let f = poly(&[(2, 1), (0, 1)]).mul(&poly(&[(2, 1), (0, -2)]));
        let fac = factor_rational_poly(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), f);
        // each factor is itself irreducible: re-factoring returns it alone
        for (p, _) in &fac.factors {
            let refac = factor_rational_poly(p).unwrap();
            assert_eq!(refac.factors, vec![(p.clone(), 1)]);
        }
    }

    #[test]
    fn repeated_factors_get_multiplicity() {
        let f = poly(&[(1, 2), (0, -1)]).pow(3);
        let fac = factor_rational_poly(&f).unwrap();
        assert_eq!(fac.factors, vec![(poly(&[(1, 2), (0, -1)]), 3)]);
        assert_eq!(fac.product(), f);
    }
}
