use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::Rational;

/// Dense row-major matrix over an exact scalar type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<Rational>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(data: Vec<Vec<T>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged rows in matrix literal"));
        }
        Ok(Matrix {
            rows,
            cols,
            entries: data.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq + std::ops::Mul<Output = T> + std::ops::AddAssign,
{
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if *a == T::zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = a.clone() * other.at(k, c).clone();
                    *out.at_mut(r, c) += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    acc += self.at(r, c).clone() * v[c].clone();
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.at(r, c) == self.at(c, r)))
    }
}

impl IntMatrix {
    pub fn to_rational(&self) -> RatMatrix {
        self.map(|v| Rational::from_integer(v.clone()))
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::invalid("determinant of non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.at(r, k).is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            let tmp = a.at(k, c).clone();
                            a.set(k, c, a.at(r, c).clone());
                            a.set(r, c, tmp);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        Ok(sign * a.at(n - 1, n - 1).clone())
    }
}

impl RatMatrix {
    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::invalid("determinant of non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !a.at(r, k).is_zero());
            let Some(p) = pivot else { return Ok(Rational::zero()) };
            if p != k {
                for c in 0..n {
                    let tmp = a.at(k, c).clone();
                    a.set(k, c, a.at(p, c).clone());
                    a.set(p, c, tmp);
                }
                det = -det;
            }
            let pv = a.at(k, k).clone();
            det *= pv.clone();
            for r in k + 1..n {
                if a.at(r, k).is_zero() {
                    continue;
                }
                let factor = a.at(r, k) / &pv;
                for c in k..n {
                    let v = a.at(r, c) - &factor * a.at(k, c);
                    a.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Solves `A x = b` exactly; errors when `A` is singular or non-square.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if self.rows != self.cols {
            return Err(Error::invalid("solve requires a square matrix"));
        }
        if b.len() != self.rows {
            return Err(Error::invalid("right-hand side length mismatch"));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let pivot = (k..n)
                .find(|&r| !a.at(r, k).is_zero())
                .ok_or_else(|| Error::invalid("singular matrix in solve"))?;
            if pivot != k {
                for c in 0..n {
                    let tmp = a.at(k, c).clone();
                    a.set(k, c, a.at(pivot, c).clone());
                    a.set(pivot, c, tmp);
                }
                rhs.swap(k, pivot);
            }
            let pv = a.at(k, k).clone();
            for r in k + 1..n {
                if a.at(r, k).is_zero() {
                    continue;
                }
                let factor = a.at(r, k) / &pv;
                for c in k..n {
                    let v = a.at(r, c) - &factor * a.at(k, c);
                    a.set(r, c, v);
                }
                let v = &rhs[r] - &factor * &rhs[k];
                rhs[r] = v;
            }
        }
        let mut x = vec![Rational::zero(); n];
        for k in (0..n).rev() {
            let mut acc = rhs[k].clone();
            for c in k + 1..n {
                acc -= a.at(k, c) * &x[c];
            }
            x[k] = acc / a.at(k, k);
        }
        Ok(x)
    }
}

/// Scaled absolute value bound helper used by tests; `max |entry|`.
pub fn max_abs_entry(m: &IntMatrix) -> BigInt {
    m.to_rows()
        .into_iter()
        .flatten()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn im(data: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(
            data.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = im(&[&[2, 3, 1], &[0, -1, 4], &[5, 2, 2]]);
        // cofactor oracle: 2(-1*2-4*2) - 3(0*2-4*5) + 1(0*2+1*5)
        let oracle = 2 * (-2 - 8) - 3 * (0 - 20) + (0 + 5);
        assert_eq!(m.det().unwrap(), int(oracle));
        assert_eq!(m.to_rational().det().unwrap(), rat(oracle, 1));
    }

    #[test]
    fn det_empty_is_one() {
        let m: IntMatrix = Matrix::from_fn(0, 0, |_, _| int(0));
        assert_eq!(m.det().unwrap(), int(1));
    }

    #[test]
    fn solve_round_trips() {
        let a = im(&[&[3, -7, 0], &[-7, 4, 0], &[0, 0, 9]]).to_rational();
        let b = vec![rat(1, 1), rat(0, 1), rat(-3, 1)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn singular_solve_rejected() {
        let a = im(&[&[1, 2], &[2, 4]]).to_rational();
        assert!(a.solve(&[rat(1, 1), rat(1, 1)]).is_err());
    }
}
