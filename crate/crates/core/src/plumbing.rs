//! Star-shaped plumbing graphs of Seifert 3-manifolds: intersection forms,
//! Hirzebruch-Jung continued fractions, orbifold Euler numbers, and the
//! negative-definiteness test.
//!
//! Conventions: the root carries decoration `e0`; branch `l` carries
//! decorations `e_{l,1}, ..., e_{l,s_l}` listed root-outward, all at most
//! -2. Matrix bases order the root first, then branches in input order,
//! each chain root-outward.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{signature_int, IntMatrix, Matrix, Rational};

/// Star-shaped weighted tree with at least three branches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingGraph {
    pub e0: i64,
    pub branches: Vec<Vec<i64>>,
}

/// Per-branch continued fraction data: `alpha/omega` and the table
/// `n_{i,j}` for `1 <= i <= j <= s` (with the convention `n_{s+1,s} = 1`
/// available through [`BranchData::n`]).
#[derive(Debug, Clone)]
pub struct BranchData {
    pub alpha: BigInt,
    pub omega: BigInt,
    len: usize,
    /// `table[i][j]` = numerator of `[-e_{i+1}, ..., -e_{j+1}]` (0-based).
    table: Vec<Vec<BigInt>>,
}

impl BranchData {
    /// Continued fraction numerator `n_{i,j}` with 1-based indices and the
    /// conventions `n_{j+1,j} = 1`, `n_{j+2,j} = 0`.
    pub fn n(&self, i: usize, j: usize) -> BigInt {
        if i == j + 1 {
            return BigInt::one();
        }
        if i == j + 2 {
            return BigInt::zero();
        }
        assert!(1 <= i && i <= j && j <= self.len, "n index out of range");
        self.table[i - 1][j - 1].clone()
    }

    /// Denominator `d_{i,j}`; equals `n_{i+1,j}` for reduced HJ expansions.
    pub fn d(&self, i: usize, j: usize) -> BigInt {
        self.n(i + 1, j)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl PlumbingGraph {
    pub fn new(e0: i64, branches: Vec<Vec<i64>>) -> Result<Self> {
        let g = PlumbingGraph { e0, branches };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.branches.len() < 3 {
            return Err(Error::invalid(format!(
                "star-shaped graph needs at least 3 branches, got {}",
                self.branches.len()
            )));
        }
        for (l, branch) in self.branches.iter().enumerate() {
            if branch.is_empty() {
                return Err(Error::invalid(format!("branch {} is empty", l + 1)));
            }
            if let Some(&e) = branch.iter().find(|&&e| e > -2) {
                return Err(Error::invalid(format!(
                    "branch decoration {e} exceeds -2; reduced plumbing form required"
                )));
            }
        }
        Ok(())
    }

    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }

    /// Total vertex count `1 + sum s_l`; equals the second Betti number of
    /// the plumbed 4-manifold.
    pub fn vertex_count(&self) -> usize {
        1 + self.branches.iter().map(|b| b.len()).sum::<usize>()
    }

    /// Flat vertex index of branch vertex `(l, j)`; 0-based `l`, 1-based `j`.
    pub fn vertex_index(&self, l: usize, j: usize) -> usize {
        debug_assert!(l < self.branches.len());
        debug_assert!(1 <= j && j <= self.branches[l].len());
        1 + self.branches[..l].iter().map(|b| b.len()).sum::<usize>() + (j - 1)
    }

    /// Decoration of each vertex in flat order.
    pub fn decorations(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.vertex_count());
        out.push(self.e0);
        for b in &self.branches {
            out.extend_from_slice(b);
        }
        out
    }

    pub fn branch_data(&self, l: usize) -> BranchData {
        branch_data(&self.branches[l])
    }

    pub fn all_branch_data(&self) -> Vec<BranchData> {
        (0..self.branches.len()).map(|l| self.branch_data(l)).collect()
    }
}

/// Evaluates the Hirzebruch-Jung continued fraction
/// `[x_1, ..., x_s] = x_1 - 1/(x_2 - 1/(...))` for entries `x_i >= 2`.
pub fn cf_value(entries: &[i64]) -> Result<Rational> {
    if entries.is_empty() {
        return Err(Error::capability(
            "empty continued fraction; the convention value 1 is the caller's job",
        ));
    }
    if let Some(&x) = entries.iter().find(|&&x| x < 2) {
        return Err(Error::invalid(format!("continued fraction entry {x} < 2")));
    }
    // Evaluate back to front: value = x_i - 1/value_rest.
    let mut num = BigInt::from(*entries.last().unwrap());
    let mut den = BigInt::one();
    for &x in entries[..entries.len() - 1].iter().rev() {
        // x - den/num = (x*num - den)/num
        let new_num = BigInt::from(x) * &num - &den;
        den = num;
        num = new_num;
    }
    Ok(Rational::new(num, den))
}

/// Expands a reduced fraction `p/q > 1` into its Hirzebruch-Jung continued
/// fraction with all entries >= 2.
pub fn hj_expansion(value: &Rational) -> Result<Vec<i64>> {
    if value <= &Rational::one() {
        return Err(Error::invalid("HJ expansion requires a value > 1"));
    }
    let mut num = value.numer().clone();
    let mut den = value.denom().clone();
    let mut out = Vec::new();
    while !den.is_zero() {
        // ceil(num/den)
        let q = (&num + &den - BigInt::one()) / &den;
        out.push(
            i64::try_from(&q).map_err(|_| Error::capability("HJ entry exceeds i64"))?,
        );
        // next value = 1 / (q - num/den) = den / (q*den - num)
        let new_den = &q * &den - &num;
        num = den;
        den = new_den;
    }
    Ok(out)
}

fn branch_data(branch: &[i64]) -> BranchData {
    let s = branch.len();
    // table[i][j] via n_{i,j} = -e_i * n_{i+1,j} - n_{i+2,j}, descending i.
    let mut table = vec![vec![BigInt::zero(); s]; s];
    for j in (0..s).rev() {
        for i in (0..=j).rev() {
            let n1 = if i + 1 <= j {
                table[i + 1][j].clone()
            } else {
                BigInt::one()
            };
            let n2 = if i + 2 <= j {
                table[i + 2][j].clone()
            } else if i + 2 == j + 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            table[i][j] = BigInt::from(-branch[i]) * n1 - n2;
        }
    }
    let alpha = table[0][s - 1].clone();
    let omega = if s >= 2 {
        table[1][s - 1].clone()
    } else {
        BigInt::one()
    };
    BranchData {
        alpha,
        omega,
        len: s,
        table,
    }
}

/// Intersection form of the plumbed 4-manifold: decorations on the
/// diagonal, 1 between the root and each branch's first vertex and between
/// consecutive chain vertices, 0 elsewhere.
pub fn intersection_form(g: &PlumbingGraph) -> Result<IntMatrix> {
    g.validate()?;
    let n = g.vertex_count();
    let deco = g.decorations();
    let mut m = IntMatrix::zero(n, n);
    for (i, &e) in deco.iter().enumerate() {
        m.set(i, i, BigInt::from(e));
    }
    for l in 0..g.num_branches() {
        let first = g.vertex_index(l, 1);
        m.set(0, first, BigInt::one());
        m.set(first, 0, BigInt::one());
        for j in 1..g.branches[l].len() {
            let a = g.vertex_index(l, j);
            let b = g.vertex_index(l, j + 1);
            m.set(a, b, BigInt::one());
            m.set(b, a, BigInt::one());
        }
    }
    Ok(m)
}

/// Orbifold Euler number `e = e0 + sum omega_l / alpha_l`.
pub fn orbifold_euler(g: &PlumbingGraph) -> Result<Rational> {
    g.validate()?;
    let mut e = Rational::from_integer(BigInt::from(g.e0));
    for l in 0..g.num_branches() {
        let bd = g.branch_data(l);
        e += Rational::new(bd.omega, bd.alpha);
    }
    Ok(e)
}

/// Negative definiteness of the plumbed 4-manifold, decided by `e < 0` and
/// cross-validated against the signature of the intersection form.
pub fn is_negative_definite(g: &PlumbingGraph) -> Result<bool> {
    let e = orbifold_euler(g)?;
    let by_euler = e < Rational::zero();
    let form = intersection_form(g)?;
    let by_signature = signature_int(&form)? == -(g.vertex_count() as i64);
    if by_euler != by_signature {
        return Err(Error::inconsistency(format!(
            "euler number test ({by_euler}) disagrees with signature test ({by_signature})"
        )));
    }
    Ok(by_euler)
}

/// The star-shaped graph bounding the Seifert manifold `Y` in the
/// two-parameter family studied here: root -2, one chain of 2m (-2)'s, and
/// single vertices -2, -3, -(m+1).
pub fn y_graph(m: i64) -> Result<PlumbingGraph> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::invalid("y_graph requires odd m >= 3"));
    }
    PlumbingGraph::new(
        -2,
        vec![
            vec![-2; (2 * m) as usize],
            vec![-2],
            vec![-3],
            vec![-(m + 1)],
        ],
    )
}

/// The star-shaped graph for the orientation-reversed manifold `-B`: root
/// -2, chains of m and m-2 (-2)'s, and a single vertex -(2m+1).
pub fn minus_b_graph(m: i64) -> Result<PlumbingGraph> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::invalid("minus_b_graph requires odd m >= 3"));
    }
    PlumbingGraph::new(
        -2,
        vec![
            vec![-2; m as usize],
            vec![-2; (m - 2) as usize],
            vec![-(2 * m + 1)],
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn cf_values_match_known_fractions() {
        assert_eq!(cf_value(&[2, 2, 2, 2, 2, 2]).unwrap(), rat(7, 6));
        assert_eq!(cf_value(&[3]).unwrap(), rat(3, 1));
        assert_eq!(cf_value(&[2, 3]).unwrap(), rat(5, 3));
        assert!(cf_value(&[]).is_err());
        assert!(cf_value(&[1, 2]).is_err());
    }

    #[test]
    fn hj_expansion_inverts_cf_value() {
        for (p, q) in [(7i64, 6i64), (5, 3), (3, 1), (37, 11), (91, 34)] {
            let v = rat(p, q);
            let entries = hj_expansion(&v).unwrap();
            assert!(entries.iter().all(|&x| x >= 2));
            assert_eq!(cf_value(&entries).unwrap(), v);
        }
    }

    #[test]
    fn branch_table_consistency() {
        let bd = branch_data(&[-2, -3, -2]);
        // alpha/omega = [2,3,2] = 2 - 1/(3 - 1/2) = 2 - 2/5 = 8/5
        assert_eq!(bd.alpha, int(8));
        assert_eq!(bd.omega, int(5));
        assert_eq!(bd.n(1, 3), int(8));
        assert_eq!(bd.n(2, 3), int(5));
        assert_eq!(bd.n(3, 3), int(2));
        assert_eq!(bd.n(4, 3), int(1));
        assert_eq!(bd.d(1, 3), bd.n(2, 3));
    }

    #[test]
    fn y_graph_m3_matrix() {
        let g = y_graph(3).unwrap();
        let m = intersection_form(&g).unwrap();
        assert_eq!(m.rows(), 10);
        let expected: Vec<Vec<i64>> = vec![
            vec![-2, 1, 0, 0, 0, 0, 0, 1, 1, 1],
            vec![1, -2, 1, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 1, -2, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, -2, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, -2, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, -2, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1, -2, 0, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, -2, 0, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0, -3, 0],
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0, -4],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert_eq!(*m.at(r, c), int(v), "mismatch at ({r},{c})");
            }
        }
    }

    #[test]
    fn small_star_matrix() {
        let g = PlumbingGraph::new(-2, vec![vec![-2], vec![-2], vec![-2]]).unwrap();
        let m = intersection_form(&g).unwrap();
        for i in 0..4 {
            assert_eq!(*m.at(i, i), int(-2));
        }
    }

    #[test]
    fn minus_b_m3_matrix_has_minus_seven() {
        let g = minus_b_graph(3).unwrap();
        let m = intersection_form(&g).unwrap();
        assert_eq!(m.rows(), 6);
        assert_eq!(*m.at(5, 5), int(-7));
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(orbifold_euler(&y_graph(3).unwrap()).unwrap(), rat(-5, 84));
        assert_eq!(
            orbifold_euler(&minus_b_graph(3).unwrap()).unwrap(),
            rat(-17, 28)
        );
        let g = PlumbingGraph::new(-1, vec![vec![-2], vec![-2], vec![-2]]).unwrap();
        assert_eq!(orbifold_euler(&g).unwrap(), rat(1, 2));
    }

    #[test]
    fn definiteness() {
        assert!(is_negative_definite(&y_graph(3).unwrap()).unwrap());
        assert!(is_negative_definite(&minus_b_graph(3).unwrap()).unwrap());
        let g = PlumbingGraph::new(-1, vec![vec![-2], vec![-2], vec![-2]]).unwrap();
        assert!(!is_negative_definite(&g).unwrap());
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(PlumbingGraph::new(-2, vec![vec![-2], vec![-2]]).is_err());
        assert!(PlumbingGraph::new(-2, vec![vec![-2], vec![-1], vec![-2]]).is_err());
        assert!(PlumbingGraph::new(-2, vec![vec![-2], vec![], vec![-2]]).is_err());
    }

    #[test]
    fn det_equals_euler_times_alpha_product() {
        for m in [3i64, 5, 7, 9] {
            for g in [y_graph(m).unwrap(), minus_b_graph(m).unwrap()] {
                let det = intersection_form(&g).unwrap().det().unwrap();
                let e = orbifold_euler(&g).unwrap();
                let alpha_prod = g
                    .all_branch_data()
                    .iter()
                    .fold(rat(1, 1), |acc, bd| acc * rat_int(bd.alpha.clone()));
                let expect = (e * alpha_prod).abs();
                assert_eq!(rat_int(det.abs()), expect, "m = {m}");
            }
        }
    }

    use crate::exact::rat_int;
}
