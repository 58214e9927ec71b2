//! Hilbert series, multiplicity and tangent dimension for the cases where the
//! isotropy group is finite or a one-dimensional torus.

use std::fmt;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{split_dims, DecompositionSpec, Flavor, SummandKind};
use crate::error::{Error, Result};
use crate::quiver::VertexKind;

/// Largest number of stable summands handled by the Molien sum.
const MAX_STABLE_SUMMANDS: usize = 20;
/// Largest number of stable summands handled by the generator count.
const MAX_TANGENT_SUMMANDS: usize = 5;

/// Arbitrary-precision integer written to JSON as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigNum(pub BigInt);

impl fmt::Display for BigNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for BigNum {
    fn from(v: u64) -> Self {
        BigNum(v.into())
    }
}

impl Serialize for BigNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigInt>().map(BigNum).map_err(serde::de::Error::custom)
    }
}

/// `numerator(t) / ((1 - t)^one_minus_t * (1 - t^2)^one_minus_t2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: Vec<BigNum>,
    pub one_minus_t: u64,
    pub one_minus_t2: u64,
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Coefficients of `1 / (1 - t^step)^e` up to degree `len - 1`.
fn inverse_power(e: u64, step: usize, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (j, deg) in (0..).map(|j| (j, j * step)).take_while(|&(_, d)| d < len) {
        out[deg] = if e == 0 {
            BigInt::from(u64::from(j == 0))
        } else {
            binom(j as u64 + e - 1, j as u64)
        };
    }
    out
}

fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

impl HilbertSeries {
    /// Dimensions of the graded pieces in degrees `0..len`.
    pub fn coefficients(&self, len: usize) -> Vec<BigInt> {
        let num: Vec<BigInt> = self.numerator.iter().map(|c| c.0.clone()).collect();
        let a = inverse_power(self.one_minus_t, 1, len);
        let b = inverse_power(self.one_minus_t2, 2, len);
        convolve(&convolve(&num, &a, len), &b, len)
    }

    /// `lim_{t -> 1} (1 - t)^one_minus_t (1 - t^2)^one_minus_t2 H(t)`.
    pub fn numerator_at_one(&self) -> BigInt {
        self.numerator.iter().map(|c| &c.0).sum()
    }

    /// Degree-one coefficient after moving the `(1 - t^2)` factor to degree
    /// one. Defined only when the numerator is even, so that this factor is
    /// generated in even degrees.
    pub fn regraded_degree_one(&self) -> Option<u64> {
        if self.numerator.iter().skip(1).step_by(2).any(|c| !c.0.is_zero()) {
            return None;
        }
        let n0 = self.numerator.first().map(|c| c.0.clone()).unwrap_or_default();
        let n2 = self.numerator.get(2).map(|c| c.0.clone()).unwrap_or_default();
        let v = n2 + &n0 * BigInt::from(self.one_minus_t + self.one_minus_t2);
        v.to_u64()
    }
}

/// Finite or torus isotropy cases.
enum Model {
    /// Self-dual summands with one-dimensional orthogonal multiplicity space:
    /// isotropy `(Z/2)^n` acting by `e_i e_j` on the block `(i, j)`.
    Stable { diag: u64, blocks: Vec<(usize, usize, u64)>, n: usize },
    /// One non-self-dual pair with one-dimensional `V`: the torus acts with
    /// weight `-2` on an `a`-dimensional piece, `+2` on a `b`-dimensional
    /// one and trivially on `e` further coordinates.
    Segre { e: u64, a: u64, b: u64 },
}

fn classify(spec: &DecompositionSpec) -> Result<Model> {
    spec.validate()?;
    let g1 = spec.genus as u64 - 1;
    let stable = spec.summands.iter().all(|s| {
        s.kind != SummandKind::NonSelfDualPair && s.mult == 1 && s.vertex_kind(spec.flavor) == VertexKind::Orthogonal
    });
    // With a one-dimensional V only the square S^2 V* survives; it pairs with
    // L^2 F* for the orthogonal flavor and with S^2 F* for the symplectic one.
    let free = |r: u64, duality: i64| {
        let (sym, alt) = split_dims(r, g1, duality);
        match spec.flavor {
            Flavor::Orthogonal => alt,
            Flavor::Symplectic => sym,
        }
    };
    if stable {
        let n = spec.summands.len();
        let diag = spec.summands.iter().map(|s| free(s.rank as u64, s.duality())).sum();
        let mut blocks = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let d = (spec.summands[i].rank * spec.summands[j].rank) as u64 * g1;
                blocks.push((i, j, d));
            }
        }
        return Ok(Model::Stable { diag, blocks, n });
    }
    if let [s] = spec.summands.as_slice() {
        if s.kind == SummandKind::NonSelfDualPair && s.mult == 1 {
            let r = s.rank as u64;
            let a = free(r, 0);
            return Ok(Model::Segre {
                e: r * r * g1 + 1,
                a,
                b: a,
            });
        }
    }
    Err(Error::UnsupportedConfiguration(
        "only stable points with one-dimensional multiplicity spaces and a single non-self-dual pair are computed"
            .into(),
    ))
}

/// `(1 - t)^q (1 + t)^p` as a coefficient vector.
fn signed_binomial_product(q: u64, p: u64) -> Vec<BigInt> {
    let one_minus: Vec<BigInt> = (0..=q)
        .map(|k| {
            let c = binom(q, k);
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    let one_plus: Vec<BigInt> = (0..=p).map(|k| binom(p, k)).collect();
    convolve(&one_minus, &one_plus, (p + q + 1) as usize)
}

/// Molien series of `(Z/2)^n` on the off-diagonal blocks, multiplied by
/// `(1 - t^2)^D` with `D` the total block dimension: the group average of
/// `(1 - t)^q (1 + t)^p`, where `p` and `q` add the block dimensions on
/// which an element acts by `+1` and `-1`.
fn stable_numerator(n: usize, blocks: &[(usize, usize, u64)]) -> Result<Vec<BigInt>> {
    if n > MAX_STABLE_SUMMANDS {
        return Err(Error::TooLarge {
            size: 1 << n.min(63),
            limit: 1 << MAX_STABLE_SUMMANDS,
        });
    }
    let total: u64 = blocks.iter().map(|b| b.2).sum();
    let mut classes = std::collections::BTreeMap::<u64, u64>::new();
    for eps in 0u64..1 << n {
        let q: u64 = blocks
            .iter()
            .filter(|&&(i, j, _)| (eps >> i ^ eps >> j) & 1 == 1)
            .map(|b| b.2)
            .sum();
        *classes.entry(q).or_default() += 1;
    }
    let mut acc = vec![BigInt::zero(); total as usize + 1];
    for (q, count) in classes {
        for (k, c) in signed_binomial_product(q, total - q).into_iter().enumerate() {
            acc[k] += c * count;
        }
    }
    let order = BigInt::one() << n;
    for c in acc.iter_mut() {
        debug_assert!((&*c % &order).is_zero());
        *c = &*c / &order;
    }
    while acc.len() > 1 && acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
    Ok(acc)
}

/// `sum_k C(a-1, k) C(b-1, k) t^{2k}`: the Segre cone's numerator in the
/// degree where its generators `x_i y_j` sit.
fn segre_numerator(a: u64, b: u64) -> Vec<BigInt> {
    if a == 0 || b == 0 {
        return vec![BigInt::one()];
    }
    let top = (a - 1).min(b - 1);
    let mut out = vec![BigInt::zero(); 2 * top as usize + 1];
    for k in 0..=top {
        out[2 * k as usize] = binom(a - 1, k) * binom(b - 1, k);
    }
    out
}

fn to_series(numerator: Vec<BigInt>, one_minus_t: u64, one_minus_t2: u64) -> HilbertSeries {
    HilbertSeries {
        numerator: numerator.into_iter().map(BigNum).collect(),
        one_minus_t,
        one_minus_t2,
    }
}

/// Hilbert series of the invariant ring of `H^1(C, Ad P)` under the
/// isotropy group.
pub fn hilbert_series(spec: &DecompositionSpec) -> Result<HilbertSeries> {
    match classify(spec)? {
        Model::Stable { diag, blocks, n } => {
            let total = blocks.iter().map(|b| b.2).sum();
            Ok(to_series(stable_numerator(n, &blocks)?, diag, total))
        }
        Model::Segre { e, a, b } => {
            let dim = if a == 0 || b == 0 { 0 } else { a + b - 1 };
            Ok(to_series(segre_numerator(a, b), e, dim))
        }
    }
}

/// Multiplicity of the moduli space at the point: the numerator of the
/// Hilbert series at `t = 1`, which is the limit of `(1 - t^2)^D H_B(t)` on
/// the off-diagonal factor. Only the orthogonal flavor is certified.
pub fn multiplicity(spec: &DecompositionSpec) -> Result<BigNum> {
    if spec.flavor != Flavor::Orthogonal {
        spec.validate()?;
        return Err(Error::UnsupportedConfiguration(
            "multiplicity is only certified for orthogonal moduli".into(),
        ));
    }
    let h = hilbert_series(spec)?;
    let m = h.numerator_at_one();
    debug_assert!(m.is_positive());
    Ok(BigNum(m))
}

/// Minimal generators of the monoid of block-degree vectors `s` with
/// `sum_j s_ij` even at every summand `i`, restricted to entries at most 2.
/// An even multigraph that is not a single cycle or a doubled edge splits
/// into two even ones, so every irreducible element lies in this box.
fn parity_irreducibles(n: usize, blocks: &[(usize, usize, u64)]) -> Vec<Vec<u8>> {
    let nb = blocks.len();
    let in_monoid = |s: &[u8]| {
        let mut deg = vec![0u32; n];
        for (k, &(i, j, _)) in blocks.iter().enumerate() {
            deg[i] += u32::from(s[k]);
            deg[j] += u32::from(s[k]);
        }
        deg.iter().all(|d| d % 2 == 0)
    };
    let mut all: Vec<Vec<u8>> = (0..3usize.pow(nb as u32))
        .map(|mut code| {
            (0..nb)
                .map(|_| {
                    let v = (code % 3) as u8;
                    code /= 3;
                    v
                })
                .collect()
        })
        .collect();
    all.sort_by_key(|s| (s.iter().map(|&x| u32::from(x)).sum::<u32>(), s.clone()));
    let mut irreducible: Vec<Vec<u8>> = Vec::new();
    for s in all {
        if s.iter().all(|&x| x == 0) || !in_monoid(&s) {
            continue;
        }
        let splits = irreducible.iter().any(|t| {
            t.iter().zip(&s).all(|(a, b)| a <= b) && {
                let rest: Vec<u8> = s.iter().zip(t).map(|(a, b)| a - b).collect();
                rest.iter().any(|&x| x > 0) && in_monoid(&rest)
            }
        });
        if !splits {
            irreducible.push(s);
        }
    }
    irreducible
}

/// Dimension of the Zariski tangent space at the origin of the quotient:
/// the number of minimal homogeneous generators of the invariant ring.
pub fn tangent_dim(spec: &DecompositionSpec) -> Result<u64> {
    match classify(spec)? {
        Model::Stable { diag, blocks, n } => {
            if n > MAX_TANGENT_SUMMANDS {
                return Err(Error::TooLarge {
                    size: n,
                    limit: MAX_TANGENT_SUMMANDS,
                });
            }
            // A generator is a monomial whose block-degree vector is
            // irreducible; each vector is realized by prod_b C(d_b + s_b - 1, s_b)
            // monomials.
            let mut count = BigInt::from(diag);
            for s in parity_irreducibles(n, &blocks) {
                let mut term = BigInt::one();
                for (k, &(_, _, d)) in blocks.iter().enumerate() {
                    let sk = u64::from(s[k]);
                    if sk > 0 {
                        term *= binom(d + sk - 1, sk);
                    }
                }
                count += term;
            }
            count.to_u64().ok_or(Error::TooLarge {
                size: usize::MAX,
                limit: u64::MAX as usize,
            })
        }
        Model::Segre { e, a, b } => Ok(e + a * b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_model::SummandSpec;

    fn stable(g: usize, ranks: &[usize]) -> DecompositionSpec {
        DecompositionSpec::orthogonal(
            g,
            ranks
                .iter()
                .map(|&r| SummandSpec::new(SummandKind::OrthogonalStable, r, 1))
                .collect(),
        )
    }

    fn pair(g: usize, r: usize) -> DecompositionSpec {
        DecompositionSpec::orthogonal(g, vec![SummandSpec::new(SummandKind::NonSelfDualPair, r, 1)])
    }

    fn int(v: u64) -> BigInt {
        BigInt::from(v)
    }

    /// Invariant monomials of `(Z/2)^n` on the block variables, counted by
    /// degree, times the free diagonal factor.
    #[allow(clippy::needless_range_loop)]
    fn brute_stable_coefficients(n: usize, diag: u64, dims: &[(usize, usize, u64)], len: usize) -> Vec<BigInt> {
        // Count monomials by degree and by the parity vector at each summand.
        let mut by_parity = vec![vec![BigInt::zero(); 1 << n]; len];
        by_parity[0][0] = BigInt::one();
        for &(i, j, d) in dims {
            for _ in 0..d {
                let mut next = by_parity.clone();
                for deg in 0..len {
                    for par in 0..1usize << n {
                        let c = by_parity[deg][par].clone();
                        if c.is_zero() {
                            continue;
                        }
                        for extra in 1..len - deg {
                            let p = if extra % 2 == 1 { par ^ (1 << i) ^ (1 << j) } else { par };
                            next[deg + extra][p] += &c;
                        }
                    }
                }
                by_parity = next;
            }
        }
        let off: Vec<BigInt> = by_parity.iter().map(|row| row[0].clone()).collect();
        convolve(&off, &inverse_power(diag, 1, len), len)
    }

    #[test]
    fn stable_series_matches_monomial_count() {
        for (g, ranks) in [(2, vec![1, 2]), (2, vec![1, 1, 1]), (3, vec![1, 1]), (2, vec![1, 1, 1, 1]), (2, vec![2, 1, 2])] {
            let spec = stable(g, &ranks);
            let h = hilbert_series(&spec).unwrap();
            let Model::Stable { diag, blocks, n } = classify(&spec).unwrap() else {
                unreachable!()
            };
            assert_eq!(h.coefficients(8), brute_stable_coefficients(n, diag, &blocks, 8), "{ranks:?}");
        }
    }

    #[test]
    fn two_summand_series_closed_form() {
        // 1/(1-t)^k * (1/2)[(1-t)^{-d} + (1+t)^{-d}] with k = 1, d = 2.
        let h = hilbert_series(&stable(2, &[1, 2])).unwrap();
        let len = 10;
        let minus: Vec<BigInt> = inverse_power(2, 1, len);
        let plus: Vec<BigInt> = minus
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        let half: Vec<BigInt> = minus.iter().zip(&plus).map(|(a, b)| (a + b) / 2).collect();
        assert_eq!(h.coefficients(len), convolve(&half, &inverse_power(1, 1, len), len));
    }

    #[test]
    fn veronese_and_segre_trivial_cases() {
        // d = 1: invariants k[x^2].
        let h = hilbert_series(&stable(2, &[1, 1])).unwrap();
        assert_eq!(h.coefficients(6), [1, 0, 1, 0, 1, 0].map(int));
        // a = b = 1: a single product xy on the Segre factor, times a
        // polynomial ring in e = 4 + 1 variables.
        let h = hilbert_series(&pair(2, 2)).unwrap();
        assert_eq!((h.one_minus_t, h.one_minus_t2), (5, 1));
        assert_eq!(h.numerator, vec![BigNum::from(1)]);
    }

    #[test]
    fn segre_series_matches_count() {
        // g = 3, r = 3: a = b = 6.
        let spec = pair(3, 3);
        let h = hilbert_series(&spec).unwrap();
        let (e, a) = (19u64, 6u64);
        let len = 9;
        let mut segre = vec![BigInt::zero(); len];
        for k in 0..len / 2 + 1 {
            if 2 * k < len {
                segre[2 * k] = binom(k as u64 + a - 1, a - 1).pow(2);
            }
        }
        assert_eq!(h.coefficients(len), convolve(&segre, &inverse_power(e, 1, len), len));
        assert_eq!(multiplicity(&spec).unwrap().0, binom(10, 5));
        assert_eq!(tangent_dim(&spec).unwrap(), e + 36);
        assert_eq!(h.regraded_degree_one(), Some(e + 36));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&stable(2, &[1, 2])).unwrap(), BigNum::from(2));
        assert_eq!(multiplicity(&stable(2, &[1, 1])).unwrap(), BigNum::from(1));
        assert_eq!(multiplicity(&stable(2, &[1, 1, 1])).unwrap(), BigNum::from(2));
        assert_eq!(multiplicity(&stable(2, &[1, 1, 1, 1])).unwrap(), BigNum::from(8));
        assert_eq!(multiplicity(&stable(3, &[1])).unwrap(), BigNum::from(1));
        assert_eq!(multiplicity(&pair(2, 1)).unwrap(), BigNum::from(1));
    }

    #[test]
    fn multiplicity_closed_forms_on_grid() {
        for g in [2usize, 3] {
            for n in 2..=4usize {
                for mask in 0..1u32 << n {
                    let ranks: Vec<usize> = (0..n).map(|i| 1 + (mask >> i & 1) as usize).collect();
                    let mut exp: i64 = 0;
                    for i in 0..n {
                        for j in i + 1..n {
                            exp += (ranks[i] * ranks[j] * (g - 1)) as i64 - 1;
                        }
                    }
                    let lead = match n {
                        2 => 1,
                        3 => 2,
                        _ => 8,
                    };
                    let want = BigInt::from(lead) << exp as usize;
                    assert_eq!(multiplicity(&stable(g, &ranks)).unwrap().0, want, "g={g} r={ranks:?}");
                }
            }
        }
    }

    #[test]
    fn tangent_examples() {
        assert_eq!(tangent_dim(&stable(2, &[1, 2])).unwrap(), 4);
        assert_eq!(tangent_dim(&stable(2, &[1, 1])).unwrap(), 1);
        assert_eq!(tangent_dim(&stable(3, &[1, 1])).unwrap(), 3);
    }

    #[test]
    fn irreducibles_are_doubled_edges_and_cycles() {
        // K_3: three doubled edges and one triangle; K_4: six doubled edges,
        // four triangles and three 4-cycles.
        let blocks = |n: usize| -> Vec<(usize, usize, u64)> {
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, 1))).collect()
        };
        assert_eq!(parity_irreducibles(3, &blocks(3)).len(), 4);
        assert_eq!(parity_irreducibles(4, &blocks(4)).len(), 13);
        // With d on every block: 3 C(d+1, 2) + d^3 generators for n = 3.
        let d = 2u64;
        let t = tangent_dim(&stable(3, &[1, 1, 1])).unwrap();
        assert_eq!(t, 3 * (d * (d + 1) / 2) + d.pow(3));
    }

    #[test]
    fn regrading_defined_only_for_even_numerators() {
        assert!(hilbert_series(&stable(2, &[1, 1, 1])).unwrap().regraded_degree_one().is_none());
        let h = hilbert_series(&stable(2, &[2, 2])).unwrap();
        assert_eq!(h.regraded_degree_one(), Some(tangent_dim(&stable(2, &[2, 2])).unwrap()));
    }

    #[test]
    fn unsupported_cases() {
        let big_mult = DecompositionSpec::orthogonal(2, vec![SummandSpec::new(SummandKind::OrthogonalStable, 1, 2)]);
        assert!(matches!(hilbert_series(&big_mult), Err(Error::UnsupportedConfiguration(_))));
        let sp = DecompositionSpec::new(
            2,
            Flavor::Symplectic,
            vec![
                SummandSpec::new(SummandKind::SymplecticStable, 2, 1),
                SummandSpec::new(SummandKind::SymplecticStable, 2, 1),
            ],
        );
        assert!(hilbert_series(&sp).is_ok());
        assert!(matches!(multiplicity(&sp), Err(Error::UnsupportedConfiguration(_))));
        let bad = DecompositionSpec::orthogonal(1, vec![SummandSpec::new(SummandKind::OrthogonalStable, 1, 1)]);
        assert!(matches!(multiplicity(&bad), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn bignum_json() {
        let b = BigNum(BigInt::from(2).pow(100));
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, "\"1267650600228229401496703205376\"");
        assert_eq!(serde_json::from_str::<BigNum>(&s).unwrap(), b);
    }
}
