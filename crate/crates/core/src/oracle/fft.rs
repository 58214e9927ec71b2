//! Multilinear invariants of `O(N) x Sp(N')` on `2i` vectors, against the
//! span of products of bilinear pairings over oriented perfect matchings.

use serde::{Deserialize, Serialize};

use super::action::{small_int, so_basis, sp_basis, LinearAction};
use super::poly_span_dim;
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::poly::{Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FftReport {
    pub n: usize,
    pub n_prime: usize,
    pub i: usize,
    pub pairing_span_dim: usize,
    /// Span when each pair is read in one orientation only.
    pub unoriented_span_dim: usize,
    pub oracle_dim: usize,
    pub pass: bool,
}

/// All perfect matchings of `{0, .., n-1}` as sorted pair lists.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = free.remove(0);
        for k in 0..free.len() {
            let partner = free.remove(k);
            cur.push((first, partner));
            rec(free, cur, out);
            cur.pop();
            free.insert(k, partner);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    }
    out
}

/// Compares, inside multilinear functionals on `V^{2i}` with
/// `V = k^N (+) k^N'`, the span of the products
/// `<v_s(1), v_s(2)> ... <v_s(2i-1), v_s(2i)>` over all permutations `s`
/// with the oracle's invariant dimension.
pub fn fft_check(n: usize, n_prime: usize, i: usize, limit: usize) -> Result<FftReport> {
    if n_prime % 2 == 1 {
        return Err(Error::OddSize(n_prime));
    }
    let dim = n + n_prime;
    let slots = 2 * i;
    let size = (dim as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    if size > limit as u128 {
        return Err(Error::TooLarge {
            size: usize::try_from(size).unwrap_or(usize::MAX),
            limit,
        });
    }
    let nvars = slots * dim;
    let var = |p: usize, j: usize| p * dim + j;

    let mut act = LinearAction::new(nvars);
    let lie = so_basis(n)
        .into_iter()
        .map(|x| (0, x))
        .chain(sp_basis(n_prime).into_iter().map(|x| (n, x)));
    for (off, x) in lie {
        let mut triples = Vec::new();
        for a in 0..x.rows() {
            for b in 0..x.cols() {
                let c = small_int(&x[(a, b)]);
                if c != 0 {
                    for p in 0..slots {
                        triples.push((var(p, off + a), var(p, off + b), c));
                    }
                }
            }
        }
        act.add_generator(triples);
    }
    if n > 0 {
        act.add_reflection((0..nvars).map(|v| v % dim == 0).collect());
    }

    let domain: Vec<Monomial> = multilinear_monomials(slots, dim)
        .into_iter()
        .filter(|m| act.is_even(m))
        .collect();
    let oracle_dim = act.invariant_dim(&domain);

    let form = RatMatrix::block_diag(&[RatMatrix::identity(n), RatMatrix::standard_symplectic(n_prime)]);
    let pairing = |p: usize, q: usize| {
        let mut acc = Poly::zero(nvars);
        for a in 0..dim {
            for b in 0..dim {
                let c = small_int(&form[(a, b)]);
                if c != 0 {
                    let term = &Poly::var(nvars, var(p, a)) * &Poly::var(nvars, var(q, b));
                    acc = &acc + &term.scale(&c.into());
                }
            }
        }
        acc
    };
    // The form is neither symmetric nor antisymmetric once both parts are
    // present, so each pair is taken in both orientations.
    let mut products = Vec::new();
    let mut unoriented = Vec::new();
    for m in perfect_matchings(slots) {
        for mask in 0..1usize << m.len() {
            let phi = m.iter().enumerate().fold(Poly::one(nvars), |acc, (k, &(p, q))| {
                let (x, y) = if mask >> k & 1 == 1 { (q, p) } else { (p, q) };
                &acc * &pairing(x, y)
            });
            if mask == 0 {
                unoriented.push(phi.clone());
            }
            products.push(phi);
        }
    }
    let pairing_span_dim = poly_span_dim(&products);
    let unoriented_span_dim = poly_span_dim(&unoriented);

    Ok(FftReport {
        n,
        n_prime,
        i,
        pairing_span_dim,
        unoriented_span_dim,
        oracle_dim,
        pass: pairing_span_dim == oracle_dim,
    })
}

/// Monomials using exactly one coordinate from each of `slots` blocks of
/// size `dim`.
fn multilinear_monomials(slots: usize, dim: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if dim == 0 {
        if slots == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let total = dim.pow(slots as u32);
    for mut code in 0..total {
        let mut m = vec![0u8; slots * dim];
        for p in 0..slots {
            m[p * dim + code % dim] = 1;
            code /= dim;
        }
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_GUARD_RAIL;

    #[test]
    fn matchings_count_is_double_factorial() {
        assert_eq!(perfect_matchings(0).len(), 1);
        assert_eq!(perfect_matchings(2).len(), 1);
        assert_eq!(perfect_matchings(4).len(), 3);
        assert_eq!(perfect_matchings(6).len(), 15);
        assert!(perfect_matchings(3).is_empty());
        for m in perfect_matchings(6) {
            let mut seen: Vec<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
            seen.sort();
            assert_eq!(seen, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn small_examples() {
        let r = fft_check(1, 0, 1, DEFAULT_GUARD_RAIL).unwrap();
        assert_eq!((r.pairing_span_dim, r.oracle_dim), (1, 1));
        let r = fft_check(0, 2, 1, DEFAULT_GUARD_RAIL).unwrap();
        assert_eq!((r.pairing_span_dim, r.oracle_dim), (1, 1));
    }

    #[test]
    fn stable_range_matchings_independent() {
        // N >= 2i: (2i - 1)!! independent pairings.
        let r = fft_check(4, 0, 2, DEFAULT_GUARD_RAIL).unwrap();
        assert_eq!(r.pairing_span_dim, 3);
        assert!(r.pass);
        let r = fft_check(2, 0, 1, DEFAULT_GUARD_RAIL).unwrap();
        assert_eq!(r.pairing_span_dim, 1);
        assert!(r.pass);
    }

    #[test]
    fn symplectic_four_vectors_have_a_relation() {
        let r = fft_check(0, 2, 2, DEFAULT_GUARD_RAIL).unwrap();
        assert!(r.pass);
        assert_eq!(r.oracle_dim, 2);
    }

    #[test]
    fn mixed_form_needs_both_orientations() {
        // <v, w> and <w, v> differ by the sign of the symplectic part.
        let r = fft_check(1, 2, 1, DEFAULT_GUARD_RAIL).unwrap();
        assert_eq!((r.pairing_span_dim, r.unoriented_span_dim, r.oracle_dim), (2, 1, 2));
        assert!(r.pass);
    }

    #[test]
    fn errors() {
        assert_eq!(fft_check(0, 3, 1, DEFAULT_GUARD_RAIL), Err(Error::OddSize(3)));
        assert!(matches!(fft_check(3, 2, 3, 100), Err(Error::TooLarge { .. })));
    }
}
