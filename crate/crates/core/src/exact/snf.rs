use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::matrix::IntMatrix;
use super::Rational;

/// Result of Smith normal form reduction: `d = u * m * v` with `u`, `v`
/// unimodular and `d` diagonal with a positive divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `d`, including zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.at(i, i).clone()).collect()
    }
}

/// Invariant-factor description of a finitely generated abelian group:
/// cyclic orders `d_1 | d_2 | ...` (each > 1) plus a free rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroupInvariants {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroupInvariants {
    pub fn trivial() -> Self {
        AbelianGroupInvariants {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    /// Builds the invariant-factor form of a direct sum of cyclic groups of
    /// the given orders (not necessarily a divisibility chain).
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        // Collect prime powers per prime, then re-chain them.
        let mut factored: Vec<Vec<(BigInt, u32)>> = Vec::new();
        for d in orders {
            if d.abs() <= BigInt::one() {
                continue;
            }
            factored.push(factorize(&d.abs()));
        }
        let mut primes: Vec<BigInt> = factored
            .iter()
            .flatten()
            .map(|(p, _)| p.clone())
            .collect();
        primes.sort();
        primes.dedup();
        // For each prime, sort exponents descending; invariant factor i
        // takes the i-th largest power of every prime.
        let mut cols: Vec<Vec<(BigInt, u32)>> = Vec::new();
        for p in &primes {
            let mut exps: Vec<u32> = factored
                .iter()
                .map(|f| {
                    f.iter()
                        .find(|(q, _)| q == p)
                        .map(|(_, e)| *e)
                        .unwrap_or(0)
                })
                .filter(|&e| e > 0)
                .collect();
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (i, e) in exps.into_iter().enumerate() {
                if cols.len() <= i {
                    cols.push(Vec::new());
                }
                cols[i].push((p.clone(), e));
            }
        }
        let mut factors: Vec<BigInt> = cols
            .into_iter()
            .map(|col| {
                col.into_iter()
                    .fold(BigInt::one(), |acc, (p, e)| acc * p.pow(e))
            })
            .collect();
        factors.sort();
        AbelianGroupInvariants {
            invariant_factors: factors,
            free_rank: 0,
        }
    }
}

impl std::fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Trial-division factorization; adequate for the magnitudes in this crate.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

struct Reduction {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reduction {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols() {
            let tmp = self.a.at(i, c).clone();
            self.a.set(i, c, self.a.at(j, c).clone());
            self.a.set(j, c, tmp);
        }
        for c in 0..self.u.cols() {
            let tmp = self.u.at(i, c).clone();
            self.u.set(i, c, self.u.at(j, c).clone());
            self.u.set(j, c, tmp);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows() {
            let tmp = self.a.at(r, i).clone();
            self.a.set(r, i, self.a.at(r, j).clone());
            self.a.set(r, j, tmp);
        }
        for r in 0..self.v.rows() {
            let tmp = self.v.at(r, i).clone();
            self.v.set(r, i, self.v.at(r, j).clone());
            self.v.set(r, j, tmp);
        }
    }

    /// row[i] -= q * row[j]
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.a.cols() {
            let v = self.a.at(i, c) - q * self.a.at(j, c);
            self.a.set(i, c, v);
        }
        for c in 0..self.u.cols() {
            let v = self.u.at(i, c) - q * self.u.at(j, c);
            self.u.set(i, c, v);
        }
    }

    /// col[i] -= q * col[j]
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.a.rows() {
            let v = self.a.at(r, i) - q * self.a.at(r, j);
            self.a.set(r, i, v);
        }
        for r in 0..self.v.rows() {
            let v = self.v.at(r, i) - q * self.v.at(r, j);
            self.v.set(r, i, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols() {
            let v = -self.a.at(i, c).clone();
            self.a.set(i, c, v);
        }
        for c in 0..self.u.cols() {
            let v = -self.u.at(i, c).clone();
            self.u.set(i, c, v);
        }
    }
}

/// Smith normal form `d = u * m * v` with unimodular `u`, `v`, nonnegative
/// diagonal, and `d_1 | d_2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut red = Reduction {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    let steps = rows.min(cols);
    for k in 0..steps {
        loop {
            // Find a nonzero entry of smallest absolute value in the
            // trailing block and bring it to (k, k).
            let mut best: Option<(usize, usize)> = None;
            for r in k..rows {
                for c in k..cols {
                    if red.a.at(r, c).is_zero() {
                        continue;
                    }
                    match &best {
                        None => best = Some((r, c)),
                        Some((br, bc)) => {
                            if red.a.at(r, c).abs() < red.a.at(*br, *bc).abs() {
                                best = Some((r, c));
                            }
                        }
                    }
                }
            }
            let Some((r, c)) = best else {
                return finish(red, steps);
            };
            red.swap_rows(k, r);
            red.swap_cols(k, c);

            let mut dirty = false;
            for r in k + 1..rows {
                let q = div_round(red.a.at(r, k), red.a.at(k, k));
                red.add_row(r, k, &q);
                if !red.a.at(r, k).is_zero() {
                    dirty = true;
                }
            }
            for c in k + 1..cols {
                let q = div_round(red.a.at(k, c), red.a.at(k, k));
                red.add_col(c, k, &q);
                if !red.a.at(k, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot divides its row and column; enforce divisibility into
            // the remaining block.
            let pivot = red.a.at(k, k).clone();
            let offender = (k + 1..rows)
                .flat_map(|r| (k + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(red.a.at(r, c) % &pivot).is_zero());
            match offender {
                None => break,
                Some((r, _)) => {
                    // Add the offending row to row k and restart the pivot.
                    let minus_one = -BigInt::one();
                    red.add_row(k, r, &minus_one);
                }
            }
        }
    }
    finish(red, steps)
}

fn finish(mut red: Reduction, steps: usize) -> SmithDecomposition {
    for k in 0..steps {
        if red.a.at(k, k).is_negative() {
            red.negate_row(k);
        }
    }
    SmithDecomposition {
        d: red.a,
        u: red.u,
        v: red.v,
    }
}

/// Rounded division minimizing the remainder magnitude.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Invariant factors (> 1) and free rank of the cokernel of `m`.
pub fn cokernel_invariants(m: &IntMatrix) -> AbelianGroupInvariants {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let rank_of_image = diag.iter().filter(|d| !d.is_zero()).count();
    let invariant_factors = diag
        .into_iter()
        .filter(|d| !d.is_zero() && *d != BigInt::one())
        .collect();
    AbelianGroupInvariants {
        invariant_factors,
        free_rank: m.rows() - rank_of_image,
    }
}

/// Integer solution of `m x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len());
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let k = m.rows().min(m.cols());
    let mut y = vec![BigInt::zero(); m.cols()];
    for i in 0..m.rows() {
        let d = if i < k {
            snf.d.at(i, i).clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Basis (as columns) of the integer kernel of `m`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let k = m.rows().min(m.cols());
    let mut basis = Vec::new();
    for j in 0..m.cols() {
        let dj = if j < k {
            snf.d.at(j, j).clone()
        } else {
            BigInt::zero()
        };
        if dj.is_zero() {
            basis.push((0..m.cols()).map(|r| snf.v.at(r, j).clone()).collect());
        }
    }
    basis
}

/// Exact inverse of a square rational matrix.
pub fn rat_inverse(m: &super::RatMatrix) -> Result<super::RatMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::invalid("inverse of non-square matrix"));
    }
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        cols.push(m.solve(&e)?);
    }
    Ok(super::RatMatrix::from_fn(n, n, |r, c| cols[c][r].clone()))
}
