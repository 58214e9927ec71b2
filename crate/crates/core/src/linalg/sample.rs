//! Exact random elements of the classical groups.
//!
//! Orthogonal and symplectic samples come from the Cayley transform
//! `(I + X)(I - X)^-1` of a random Lie algebra element `X`, which lands in
//! the group exactly. Cayley images miss the `det = -1` component of O(n);
//! [`sample_orthogonal_full`] multiplies by a reflection half the time.

use num::Zero;
use rand::Rng;

use super::{rat, RatMatrix};
use crate::error::{Error, Result};

/// Bound on `|numerator|` for random entries.
pub const DEFAULT_ENTRY_BOUND: i64 = 5;

const MAX_ATTEMPTS: usize = 64;

fn random_entry<R: Rng + ?Sized>(rng: &mut R) -> i64 {
    rng.gen_range(-DEFAULT_ENTRY_BOUND..=DEFAULT_ENTRY_BOUND)
}

fn cayley(x: &RatMatrix) -> Option<RatMatrix> {
    let id = RatMatrix::identity(x.rows());
    let inv = (&id - x).inverse()?;
    Some(&(&id + x) * &inv)
}

/// Random element of SO(n) (Cayley image of an antisymmetric matrix).
pub fn sample_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<RatMatrix> {
    for _ in 0..MAX_ATTEMPTS {
        let mut x = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = rat(random_entry(rng));
                x[(j, i)] = -v.clone();
                x[(i, j)] = v;
            }
        }
        if let Some(q) = cayley(&x) {
            return Ok(q);
        }
    }
    Err(Error::DegenerateCayley(MAX_ATTEMPTS))
}

/// `diag(-1, 1, ..., 1)`.
pub fn reflection(n: usize) -> RatMatrix {
    let mut r = RatMatrix::identity(n);
    if n > 0 {
        r[(0, 0)] = rat(-1);
    }
    r
}

/// Random element of O(n), covering both components.
pub fn sample_orthogonal_full<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<RatMatrix> {
    let q = sample_orthogonal(n, rng)?;
    if n > 0 && rng.gen_bool(0.5) {
        Ok(&q * &reflection(n))
    } else {
        Ok(q)
    }
}

/// Random element of Sp(n) for the form `[[0, I], [-I, 0]]`: Cayley image of
/// the Hamiltonian matrix `J S` with `S` symmetric.
pub fn sample_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<RatMatrix> {
    if n % 2 == 1 {
        return Err(Error::OddSize(n));
    }
    let j = RatMatrix::standard_symplectic(n);
    for _ in 0..MAX_ATTEMPTS {
        let mut s = RatMatrix::zeros(n, n);
        for i in 0..n {
            for k in i..n {
                let v = rat(random_entry(rng));
                s[(k, i)] = v.clone();
                s[(i, k)] = v;
            }
        }
        if let Some(c) = cayley(&(&j * &s)) {
            return Ok(c);
        }
    }
    Err(Error::DegenerateCayley(MAX_ATTEMPTS))
}

/// Random invertible integer matrix.
pub fn sample_gl<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<RatMatrix> {
    for _ in 0..MAX_ATTEMPTS {
        let entries: Vec<i64> = (0..n * n).map(|_| random_entry(rng)).collect();
        let m = RatMatrix::from_i64(n, n, &entries);
        if !m.det().is_zero() {
            return Ok(m);
        }
    }
    Err(Error::DegenerateCayley(MAX_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn so1_is_trivial() {
        let mut r = rng::stream(1, 0);
        assert_eq!(sample_orthogonal(1, &mut r).unwrap(), RatMatrix::identity(1));
    }

    #[test]
    fn defining_identities_hold_exactly() {
        let mut r = rng::stream(11, 0);
        for n in 1..=4 {
            let q = sample_orthogonal_full(n, &mut r).unwrap();
            assert_eq!(&q.transpose() * &q, RatMatrix::identity(n));
            let g = sample_gl(n, &mut r).unwrap();
            assert!(!g.det().is_zero());
        }
        for n in [2, 4, 6] {
            let j = RatMatrix::standard_symplectic(n);
            let s = sample_symplectic(n, &mut r).unwrap();
            assert_eq!(&(&s.transpose() * &j) * &s, j);
        }
    }

    #[test]
    fn both_orthogonal_components_appear() {
        let mut r = rng::stream(5, 0);
        let dets: Vec<_> = (0..40)
            .map(|_| sample_orthogonal_full(3, &mut r).unwrap().det())
            .collect();
        assert!(dets.contains(&rat(1)));
        assert!(dets.contains(&rat(-1)));
        // Cayley samples alone stay in SO(n)
        for _ in 0..10 {
            assert_eq!(sample_orthogonal(3, &mut r).unwrap().det(), rat(1));
        }
    }

    #[test]
    fn seeded_samples_replay() {
        let a = sample_symplectic(4, &mut rng::stream(3, 9)).unwrap();
        let b = sample_symplectic(4, &mut rng::stream(3, 9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn odd_symplectic_rejected() {
        assert_eq!(sample_symplectic(3, &mut rng::stream(0, 0)), Err(Error::OddSize(3)));
    }
}
