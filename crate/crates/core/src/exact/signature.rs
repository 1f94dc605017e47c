use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::matrix::{Matrix, RatMatrix};
use super::Rational;

/// Scalar interface for exact Hermitian signature computation: a field with
/// an involution whose fixed elements carry a decidable sign.
///
/// Diagonal entries encountered during symmetric reduction of a Hermitian
/// matrix are always fixed by the involution, so `real_sign` is only ever
/// called on such elements.
pub trait SignatureScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn conj(&self) -> Self;
    /// Sign (−1, 0, +1) of an involution-fixed element under the
    /// distinguished real embedding.
    fn real_sign(&self) -> i32;
}

impl SignatureScalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn real_sign(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Signature of a Hermitian matrix over any [`SignatureScalar`]: number of
/// positive minus number of negative eigenvalues, zeros ignored.
///
/// Reduction is symmetric Gaussian elimination pivoting on nonzero diagonal
/// entries; when the whole remaining diagonal vanishes, a nonzero
/// off-diagonal entry spans a hyperbolic 2x2 block contributing 0.
pub fn hermitian_signature<T: SignatureScalar>(mat: &Matrix<T>) -> i64 {
    assert_eq!(mat.rows(), mat.cols());
    let mut active: Vec<usize> = (0..mat.rows()).collect();
    let mut a = mat.clone();
    let mut sig = 0i64;
    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !a.at(i, i).is_zero()) {
            sig += a.at(p, p).real_sign() as i64;
            let d = a.at(p, p).clone();
            let next: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
            for &r in &next {
                for &c in &next {
                    // a_rc -= a_rp * a_pc / d
                    let v = a
                        .at(r, c)
                        .sub(&a.at(r, p).mul(a.at(p, c)).div(&d));
                    a.set(r, c, v);
                }
            }
            active = next;
        } else if let Some((i, j)) = find_off_diagonal(&a, &active) {
            // Hyperbolic block [[0, b], [conj(b), 0]]: signature 0.
            let b = a.at(i, j).clone();
            let bc = b.conj();
            let next: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&r| r != i && r != j)
                .collect();
            for &r in &next {
                for &c in &next {
                    // a_rc -= a_rj * a_ic / b + a_ri * a_jc / conj(b)
                    let t1 = a.at(r, j).mul(a.at(i, c)).div(&b);
                    let t2 = a.at(r, i).mul(a.at(j, c)).div(&bc);
                    let v = a.at(r, c).sub(&t1).sub(&t2);
                    a.set(r, c, v);
                }
            }
            active = next;
        } else {
            break; // remaining block is zero
        }
    }
    sig
}

fn find_off_diagonal<T: SignatureScalar>(a: &Matrix<T>, active: &[usize]) -> Option<(usize, usize)> {
    for (pos, &i) in active.iter().enumerate() {
        for &j in &active[pos + 1..] {
            if !a.at(i, j).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Signature of a symmetric rational matrix; rejects non-symmetric input.
pub fn signature(m: &RatMatrix) -> Result<i64> {
    if !m.is_symmetric() {
        return Err(Error::invalid("signature requires a symmetric matrix"));
    }
    Ok(hermitian_signature(m))
}

/// Convenience: signature of a symmetric integer matrix.
pub fn signature_int(m: &super::IntMatrix) -> Result<i64> {
    signature(&m.to_rational())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::Matrix;
    use crate::exact::{int, rat};
    use num_bigint::BigInt;

    fn sym(data: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(
            data.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kirby_block_signature_one() {
        // linking matrix at m = 3; top 2x2 has negative determinant
        let m = sym(&[&[3, -7, 0], &[-7, 4, 0], &[0, 0, 9]]);
        assert_eq!(signature(&m).unwrap(), 1);
    }

    #[test]
    fn four_by_four_vanishing() {
        let m = sym(&[
            &[3, -7, 0, 0],
            &[-7, 13, 0, 0],
            &[0, 0, 0, -1],
            &[0, 0, -1, 9],
        ]);
        assert_eq!(signature(&m).unwrap(), 0);
    }

    #[test]
    fn one_by_one_negative() {
        assert_eq!(signature(&sym(&[&[-1]])).unwrap(), -1);
    }

    #[test]
    fn hyperbolic_pair_contributes_zero() {
        let m = sym(&[&[0, 5], &[5, 0]]);
        assert_eq!(signature(&m).unwrap(), 0);
        let m = sym(&[&[0, 1, 2], &[1, 0, 0], &[2, 0, 3]]);
        let neg = m.map(|v| -v.clone());
        assert_eq!(
            signature(&m).unwrap() + signature(&neg).unwrap(),
            0,
            "sig(M) + sig(-M) must vanish for nonsingular M"
        );
    }

    #[test]
    fn rejects_non_symmetric() {
        let m: RatMatrix = Matrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(2, 1), rat(0, 1)],
        ])
        .unwrap();
        assert!(signature(&m).is_err());
    }

    #[test]
    fn degenerate_counts_nonzero_eigenvalues() {
        let m = sym(&[&[1, 0], &[0, 0]]);
        assert_eq!(signature(&m).unwrap(), 1);
        let z: RatMatrix = Matrix::from_fn(3, 3, |_, _| rat(0, 1));
        assert_eq!(signature(&z).unwrap(), 0);
    }

    #[test]
    fn integer_entry_helper() {
        let m: super::super::IntMatrix =
            Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(2)]]).unwrap();
        assert_eq!(signature_int(&m).unwrap(), 2);
        let _ = BigInt::from(0);
    }
}
