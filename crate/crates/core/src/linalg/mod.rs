//! Exact rational linear algebra.

mod matrix;
mod pfaffian;
mod sample;
pub mod sparse;

pub use matrix::RatMatrix;
pub use pfaffian::{pfaffian, pfaffian_by_expansion};
pub use sample::{
    reflection, sample_gl, sample_orthogonal, sample_orthogonal_full, sample_symplectic,
    DEFAULT_ENTRY_BOUND,
};

use num::{BigInt, BigRational};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// Parses `"3"`, `"-3/7"` and similar.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Adjoint of `f: V_src -> V_dst` with respect to the Gram blocks of its
/// endpoints: `src_form^-1 * f^T * dst_form`, a map `V_dst -> V_src`.
pub fn adjoint(f: &RatMatrix, src_form: &RatMatrix, dst_form: &RatMatrix) -> Result<RatMatrix> {
    if src_form.rows() != f.cols() || dst_form.rows() != f.rows() {
        return Err(Error::ShapeMismatch(format!(
            "map is {}x{} but forms have sizes {} and {}",
            f.rows(),
            f.cols(),
            src_form.rows(),
            dst_form.rows()
        )));
    }
    let inv = src_form
        .inverse()
        .ok_or_else(|| Error::ShapeMismatch("degenerate source form".into()))?;
    inv.checked_mul(&f.transpose())?.checked_mul(dst_form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/7").unwrap(), Rational::new(3.into(), 7.into()));
        assert_eq!(parse_rational(" -4 ").unwrap(), rat(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn orthogonal_adjoint_is_transpose() {
        let f = RatMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let a = adjoint(&f, &RatMatrix::identity(3), &RatMatrix::identity(2)).unwrap();
        assert_eq!(a, f.transpose());
    }

    #[test]
    fn adjoint_of_symplectic_form_on_its_own_loop() {
        // J^-1 J^T J = (-J)(-J)J = -J: J lies in sp(2), whose elements satisfy X* = -X.
        let j = RatMatrix::standard_symplectic(2);
        let direct = &(&j.inverse().unwrap() * &j.transpose()) * &j;
        assert_eq!(direct, -&j);
        assert_eq!(adjoint(&j, &j, &j).unwrap(), direct);
    }

    #[test]
    fn adjoint_order_two_or_four() {
        let id3 = RatMatrix::identity(3);
        let id2 = RatMatrix::identity(2);
        let j2 = RatMatrix::standard_symplectic(2);
        // orthogonal -> orthogonal: involution
        let f = RatMatrix::from_i64(2, 3, &[1, -2, 0, 3, 1, 5]);
        let f1 = adjoint(&f, &id3, &id2).unwrap();
        assert_eq!(adjoint(&f1, &id2, &id3).unwrap(), f);
        // orthogonal (3) -> symplectic (2): twice gives -f, four times gives f
        let f1 = adjoint(&f, &id3, &j2).unwrap();
        let f2 = adjoint(&f1, &j2, &id3).unwrap();
        assert_eq!(f2, -&f);
        let f3 = adjoint(&f2, &id3, &j2).unwrap();
        let f4 = adjoint(&f3, &j2, &id3).unwrap();
        assert_eq!(f4, f);
        // mixed at size 2 both ways
        let g = RatMatrix::from_i64(2, 2, &[2, 1, -1, 4]);
        let g2 = adjoint(&adjoint(&g, &id2, &j2).unwrap(), &j2, &id2).unwrap();
        assert_eq!(g2, -&g);
    }

    #[test]
    fn shape_mismatch() {
        let f = RatMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        assert!(matches!(
            adjoint(&f, &RatMatrix::identity(2), &RatMatrix::identity(2)),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
