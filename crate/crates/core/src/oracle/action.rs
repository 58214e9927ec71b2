//! Linear Lie algebra actions on coordinate spaces and the exact kernel of
//! the induced derivations on a space of monomials.

use std::collections::HashMap;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::sparse::{rank_of, Echelon, SparseRow};
use crate::linalg::RatMatrix;
use crate::poly::{binomial, monomials_of_degree, Monomial, Poly};

/// Default ceiling on the number of monomials an oracle computation may touch.
pub const DEFAULT_GUARD_RAIL: usize = 20_000;

/// A Lie algebra acting linearly on `ncoords` coordinates, plus diagonal
/// sign changes that cut the connected group down to the full one.
///
/// Generator `X` acts by the vector field `dc_i/dt = sum_j L_ij c_j`.
#[derive(Clone, Debug, Default)]
pub struct LinearAction {
    ncoords: usize,
    /// Per generator, per coordinate `i`, the nonzero `(j, L_ij)`.
    generators: Vec<Vec<Vec<(usize, i64)>>>,
    /// Per reflection, which coordinates change sign.
    reflections: Vec<Vec<bool>>,
}

impl LinearAction {
    pub fn new(ncoords: usize) -> Self {
        Self {
            ncoords,
            ..Self::default()
        }
    }

    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Adds a generator given as `(i, j, L_ij)` triples; repeated pairs add up.
    pub fn add_generator(&mut self, triples: impl IntoIterator<Item = (usize, usize, i64)>) {
        let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
        for (i, j, v) in triples {
            assert!(i < self.ncoords && j < self.ncoords);
            *acc.entry((i, j)).or_default() += v;
        }
        let mut rows = vec![Vec::new(); self.ncoords];
        for ((i, j), v) in acc {
            if v != 0 {
                rows[i].push((j, v));
            }
        }
        for r in &mut rows {
            r.sort_unstable();
        }
        if rows.iter().any(|r| !r.is_empty()) {
            self.generators.push(rows);
        }
    }

    pub fn add_reflection(&mut self, flips: Vec<bool>) {
        assert_eq!(flips.len(), self.ncoords);
        if flips.iter().any(|&f| f) {
            self.reflections.push(flips);
        }
    }

    /// Drops the sign constraints (connected group only).
    pub fn without_reflections(&self) -> Self {
        Self {
            ncoords: self.ncoords,
            generators: self.generators.clone(),
            reflections: Vec::new(),
        }
    }

    /// Whether every reflection fixes monomial `m`.
    pub fn is_even(&self, m: &Monomial) -> bool {
        self.reflections.iter().all(|flips| {
            m.iter()
                .zip(flips)
                .filter(|(_, &f)| f)
                .map(|(&e, _)| e as usize)
                .sum::<usize>()
                % 2
                == 0
        })
    }

    /// Degree-`d` monomials fixed by every reflection, refusing spaces larger
    /// than `limit`.
    pub fn even_monomials(&self, d: usize, limit: usize) -> Result<Vec<Monomial>> {
        let size = binomial(self.ncoords + d.max(1) - 1, d);
        if size > limit {
            return Err(Error::TooLarge { size, limit });
        }
        Ok(monomials_of_degree(self.ncoords, d)
            .into_iter()
            .filter(|m| self.is_even(m))
            .collect())
    }

    /// Rows of the matrix of all derivations restricted to `domain`, one
    /// column per domain monomial.
    fn derivation_rows(&self, domain: &[Monomial]) -> Vec<SparseRow> {
        let mut rows: HashMap<(usize, Monomial), Vec<(usize, BigInt)>> = HashMap::new();
        for (col, m) in domain.iter().enumerate() {
            for (g, gen) in self.generators.iter().enumerate() {
                for (i, entries) in gen.iter().enumerate() {
                    if m[i] == 0 {
                        continue;
                    }
                    let mi = m[i] as i64;
                    for &(j, v) in entries {
                        let mut t = m.clone();
                        t[i] -= 1;
                        t[j] += 1;
                        rows.entry((g, t)).or_default().push((col, BigInt::from(mi * v)));
                    }
                }
            }
        }
        let mut keyed: Vec<_> = rows.into_iter().collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed
            .into_iter()
            .map(|(_, e)| SparseRow::from_entries(e))
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Dimension of the invariants inside the span of `domain`. Domain
    /// monomials are assumed fixed by the reflections.
    pub fn invariant_dim(&self, domain: &[Monomial]) -> usize {
        domain.len() - rank_of(self.derivation_rows(domain), domain.len())
    }

    /// A basis of the invariants inside the span of `domain`, with integer
    /// coefficients.
    pub fn invariant_basis(&self, domain: &[Monomial]) -> Vec<Poly> {
        let mut ech = Echelon::new(domain.len());
        for r in self.derivation_rows(domain) {
            ech.insert(r);
        }
        ech.kernel_basis()
            .into_iter()
            .map(|v| {
                let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                Poly::from_terms(
                    self.ncoords,
                    domain
                        .iter()
                        .zip(&v)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(m, x)| (m.clone(), (x * &den).to_integer())),
                )
            })
            .collect()
    }

    /// Whether `p` is annihilated by every generator and fixed by every
    /// reflection.
    pub fn is_invariant(&self, p: &Poly) -> bool {
        if !p.terms().keys().all(|m| self.is_even(m)) {
            return false;
        }
        let domain: Vec<Monomial> = p.terms().keys().cloned().collect();
        let coeffs: Vec<&BigInt> = p.terms().values().collect();
        self.generators.iter().all(|gen| {
            let mut image: HashMap<Monomial, BigInt> = HashMap::new();
            for (m, c) in domain.iter().zip(&coeffs) {
                for (i, entries) in gen.iter().enumerate() {
                    if m[i] == 0 {
                        continue;
                    }
                    for &(j, v) in entries {
                        let mut t = m.clone();
                        t[i] -= 1;
                        t[j] += 1;
                        *image.entry(t).or_insert_with(BigInt::zero) += *c * BigInt::from(m[i] as i64 * v);
                    }
                }
            }
            image.values().all(|v| v.is_zero())
        })
    }
}

/// Basis of `so(n)`: `E_ij - E_ji` for `i < j`.
pub fn so_basis(n: usize) -> Vec<RatMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut x = RatMatrix::zeros(n, n);
            x[(i, j)] = crate::linalg::rat(1);
            x[(j, i)] = crate::linalg::rat(-1);
            out.push(x);
        }
    }
    out
}

/// Basis of `sp(n)` for `J = [[0, I], [-I, 0]]`: `[[A, B], [C, -A^T]]` with
/// `B`, `C` symmetric.
pub fn sp_basis(n: usize) -> Vec<RatMatrix> {
    assert!(n.is_multiple_of(2));
    let h = n / 2;
    let one = || crate::linalg::rat(1);
    let mut out = Vec::new();
    for i in 0..h {
        for j in 0..h {
            let mut x = RatMatrix::zeros(n, n);
            x[(i, j)] = one();
            x[(h + j, h + i)] = -one();
            out.push(x);
        }
    }
    for i in 0..h {
        for j in i..h {
            let mut b = RatMatrix::zeros(n, n);
            b[(i, h + j)] = one();
            b[(j, h + i)] = one();
            out.push(b);
            let mut c = RatMatrix::zeros(n, n);
            c[(h + i, j)] = one();
            c[(h + j, i)] = one();
            out.push(c);
        }
    }
    out
}

/// Basis of `gl(n)`: the matrix units.
pub fn gl_basis(n: usize) -> Vec<RatMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut x = RatMatrix::zeros(n, n);
            x[(i, j)] = crate::linalg::rat(1);
            out.push(x);
        }
    }
    out
}

/// Converts an integral rational matrix entry to `i64`.
pub(crate) fn small_int(x: &crate::linalg::Rational) -> i64 {
    assert!(x.is_integer(), "Lie basis entries are integers");
    let v = x.to_integer();
    assert!(v.abs() < BigInt::from(i64::MAX));
    i64::try_from(v).expect("small entry")
}
