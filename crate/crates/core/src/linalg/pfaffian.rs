use num::{One, Zero};

use super::{RatMatrix, Rational};
use crate::error::{Error, Result};

/// Exact pfaffian by skew Gaussian elimination.
///
/// Each step uses the leading 2x2 block as pivot and clears the rest of its
/// two rows and columns with unimodular congruences, so the pfaffian of the
/// remainder is unchanged. O(n^3) field operations.
pub fn pfaffian(a: &RatMatrix) -> Result<Rational> {
    if !a.is_square() {
        return Err(Error::NotAntisymmetric);
    }
    if !a.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let n = a.rows();
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    let mut m = a.clone();
    let mut pf = Rational::one();
    for k in (0..n).step_by(2) {
        let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) else {
            return Ok(Rational::zero());
        };
        if j != k + 1 {
            swap_sym(&mut m, k + 1, j);
            pf = -pf;
        }
        let p = m[(k, k + 1)].clone();
        pf *= &p;
        // clear row/column k beyond k+1 using index k+1
        for i in k + 2..n {
            if m[(k, i)].is_zero() {
                continue;
            }
            let c = &m[(k, i)] / &p;
            add_sym(&mut m, i, k + 1, &c);
        }
        // clear row/column k+1 beyond k+1 using index k
        let q = m[(k + 1, k)].clone();
        for i in k + 2..n {
            if m[(k + 1, i)].is_zero() {
                continue;
            }
            let c = &m[(k + 1, i)] / &q;
            add_sym(&mut m, i, k, &c);
        }
    }
    Ok(pf)
}

/// Swaps index `i` and `j` in both rows and columns.
fn swap_sym(m: &mut RatMatrix, i: usize, j: usize) {
    let n = m.rows();
    for c in 0..n {
        let t = m[(i, c)].clone();
        m[(i, c)] = m[(j, c)].clone();
        m[(j, c)] = t;
    }
    m.swap_cols(i, j);
}

/// `row_i -= c row_src`, `col_i -= c col_src`.
fn add_sym(m: &mut RatMatrix, i: usize, src: usize, c: &Rational) {
    let n = m.rows();
    for col in 0..n {
        let d = c * &m[(src, col)];
        m[(i, col)] -= d;
    }
    for row in 0..n {
        let d = c * &m[(row, src)];
        m[(row, i)] -= d;
    }
}

/// Pfaffian by expansion along the first row. Exponential; test oracle only.
pub fn pfaffian_by_expansion(a: &RatMatrix) -> Rational {
    fn rec(a: &RatMatrix, idx: &[usize]) -> Rational {
        if idx.is_empty() {
            return Rational::one();
        }
        let first = idx[0];
        let mut total = Rational::zero();
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let entry = &a[(first, j)];
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
            let term = entry * rec(a, &rest);
            if pos % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    let idx: Vec<usize> = (0..a.rows()).collect();
    rec(a, &idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn two_by_two() {
        let a = RatMatrix::from_i64(2, 2, &[0, 7, -7, 0]);
        assert_eq!(pfaffian(&a).unwrap(), rat(7));
    }

    #[test]
    fn block_sum_of_standard_blocks() {
        let b = RatMatrix::from_i64(2, 2, &[0, 1, -1, 0]);
        let a = RatMatrix::block_diag(&[b.clone(), b]);
        assert_eq!(pfaffian(&a).unwrap(), rat(1));
    }

    #[test]
    fn errors() {
        assert_eq!(pfaffian(&RatMatrix::zeros(3, 3)), Err(Error::OddSize(3)));
        assert_eq!(
            pfaffian(&RatMatrix::from_i64(2, 2, &[0, 1, 1, 0])),
            Err(Error::NotAntisymmetric)
        );
    }

    #[test]
    fn needs_pivoting() {
        // a_{12} = 0 forces a swap
        let a = RatMatrix::from_i64(4, 4, &[0, 0, 1, 2, 0, 0, 3, 4, -1, -3, 0, 0, -2, -4, 0, 0]);
        assert_eq!(pfaffian(&a).unwrap(), pfaffian_by_expansion(&a));
        assert_eq!(pfaffian(&a).unwrap(), rat(2));
    }
}
