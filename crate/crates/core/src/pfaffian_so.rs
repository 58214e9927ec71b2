//! Invariants of `SO(W)` acting by conjugation on `so(W)^m`, seen as a
//! degree-two extension of the `O(W)`-invariants by polarized pfaffians.

use num::{BigInt, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::sparse::Echelon;
use crate::linalg::{pfaffian, rat, reflection, sample_gl, sample_orthogonal, RatMatrix, Rational};
use crate::oracle::symbolic::SymbolicEvaluator;
use crate::oracle::{graded_products, independent_subset, so_basis, LinearAction};
use crate::poly::{MonomialIndex, Poly};
use crate::quiver::{build_doubled, gram_matrix, DimVector, SymQuiver};
use crate::rng;
use crate::words::enumerate_cycles;

/// A quadratic space `W` of even dimension with `m` slots of `so(W)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfaffianContext {
    dim_w: usize,
    m: usize,
}

impl PfaffianContext {
    pub fn new(dim_w: usize, m: usize) -> Result<Self> {
        if dim_w < 2 || dim_w % 2 == 1 {
            return Err(Error::OddSize(dim_w));
        }
        if m == 0 {
            return Err(Error::BadWeights("at least one slot is needed".into()));
        }
        Ok(Self { dim_w, m })
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn slots(&self) -> usize {
        self.m
    }

    /// Half the dimension of `W`, the degree of the pfaffian.
    pub fn half(&self) -> usize {
        self.dim_w / 2
    }

    fn pairs(&self) -> usize {
        self.dim_w * (self.dim_w - 1) / 2
    }

    /// Number of coordinates: the strictly upper entries of every slot.
    pub fn ncoords(&self) -> usize {
        self.m * self.pairs()
    }

    /// Coordinate of entry `(i, j)`, `i < j`, of slot `s`.
    pub fn coord(&self, s: usize, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim_w);
        let n = self.dim_w;
        // Pairs (0,1), (0,2), .., (0,n-1), (1,2), ..
        let before = i * n - i * (i + 1) / 2;
        s * self.pairs() + before + (j - i - 1)
    }

    /// Generic antisymmetric matrix of slot `s` in `nvars` variables (the
    /// coordinates come first).
    #[allow(clippy::needless_range_loop)]
    fn slot_matrix(&self, s: usize, nvars: usize) -> Vec<Vec<Poly>> {
        let n = self.dim_w;
        let mut a = vec![vec![Poly::zero(nvars); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let x = Poly::var(nvars, self.coord(s, i, j));
                a[j][i] = -&x;
                a[i][j] = x;
            }
        }
        a
    }

    /// Coordinates of a tuple of antisymmetric matrices.
    pub fn point(&self, mats: &[RatMatrix]) -> Result<Vec<Rational>> {
        if mats.len() != self.m || mats.iter().any(|a| a.shape() != (self.dim_w, self.dim_w)) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} matrices of size {}",
                self.m, self.dim_w
            )));
        }
        let mut out = vec![Rational::zero(); self.ncoords()];
        for (s, a) in mats.iter().enumerate() {
            if !a.is_antisymmetric() {
                return Err(Error::NotAntisymmetric);
            }
            for i in 0..self.dim_w {
                for j in i + 1..self.dim_w {
                    out[self.coord(s, i, j)] = a[(i, j)].clone();
                }
            }
        }
        Ok(out)
    }

    /// `so(W)` acting on all slots by commutators, with the reflection
    /// `diag(-1, 1, .., 1)`.
    pub fn action(&self) -> LinearAction {
        let n = self.dim_w;
        let mut act = LinearAction::new(self.ncoords());
        for x in so_basis(n) {
            let mut triples = Vec::new();
            for s in 0..self.m {
                // Image of each coordinate direction under A -> XA - AX.
                for k in 0..n {
                    for l in k + 1..n {
                        let mut a = RatMatrix::zeros(n, n);
                        a[(k, l)] = rat(1);
                        a[(l, k)] = rat(-1);
                        let img = &(&x * &a) - &(&a * &x);
                        for i in 0..n {
                            for j in i + 1..n {
                                let v = &img[(i, j)];
                                if !v.is_zero() {
                                    let v = i64::try_from(v.to_integer()).expect("small");
                                    triples.push((self.coord(s, i, j), self.coord(s, k, l), v));
                                }
                            }
                        }
                    }
                }
            }
            act.add_generator(triples);
        }
        let mut flips = vec![false; self.ncoords()];
        for s in 0..self.m {
            for j in 1..n {
                flips[self.coord(s, 0, j)] = true;
            }
        }
        act.add_reflection(flips);
        act
    }

    /// All weight vectors of length `m` with nonnegative entries summing to
    /// the pfaffian degree, in lexicographically decreasing order.
    pub fn weight_profiles(&self) -> Vec<Vec<usize>> {
        crate::poly::monomials_of_degree(self.m, self.half())
            .into_iter()
            .map(|m| m.into_iter().map(usize::from).collect())
            .collect()
    }
}

/// Pfaffian of a matrix with polynomial entries, by expansion along the
/// first row.
fn poly_pfaffian(a: &[Vec<Poly>], idx: &[usize], nvars: usize) -> Poly {
    if idx.is_empty() {
        return Poly::one(nvars);
    }
    let first = idx[0];
    let mut acc = Poly::zero(nvars);
    for (k, &j) in idx.iter().enumerate().skip(1) {
        let entry = &a[first][j];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
        let term = entry * &poly_pfaffian(a, &rest, nvars);
        // Sign (-1)^(k+1) for the k-th remaining index, counting from 1.
        acc = if k % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// The polarized pfaffian with the given slot weights: the coefficient of
/// `prod lambda_j^{w_j}` in `pf(sum_j lambda_j A_j)`.
pub fn pfaffian_functional(ctx: &PfaffianContext, weights: &[usize]) -> Result<Poly> {
    if weights.len() != ctx.m {
        return Err(Error::BadWeights(format!(
            "{} weights for {} slots",
            weights.len(),
            ctx.m
        )));
    }
    if weights.iter().sum::<usize>() != ctx.half() {
        return Err(Error::BadWeights(format!(
            "weights must sum to {}, got {:?}",
            ctx.half(),
            weights
        )));
    }
    let nc = ctx.ncoords();
    let nvars = nc + ctx.m;
    let n = ctx.dim_w;
    let mut pencil = vec![vec![Poly::zero(nvars); n]; n];
    for s in 0..ctx.m {
        let lambda = Poly::var(nvars, nc + s);
        let a = ctx.slot_matrix(s, nvars);
        for i in 0..n {
            for j in 0..n {
                if !a[i][j].is_zero() {
                    pencil[i][j] = &pencil[i][j] + &(&lambda * &a[i][j]);
                }
            }
        }
    }
    let pf = poly_pfaffian(&pencil, &(0..n).collect::<Vec<_>>(), nvars);
    let lambdas: Vec<usize> = (nc..nvars).collect();
    let exps: Vec<u8> = weights.iter().map(|&w| w as u8).collect();
    Ok(pf.coefficient_of(&lambdas, &exps))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfaffianIdentityReport {
    pub cases: usize,
    pub sizes: Vec<usize>,
    pub failures: usize,
}

/// Checks `pf(g A g^T) = det(g) pf(A)` on random integer `A` and random
/// invertible `g` (general linear half the time, orthogonal otherwise).
pub fn pfaffian_identity_check(sizes: &[usize], cases: usize, seed: u64) -> Result<PfaffianIdentityReport> {
    let base = rng::derive_seed(seed, "pfaffian-identity");
    let failures = (0..cases as u64)
        .into_par_iter()
        .map(|k| {
            let mut r = rng::stream(base, k);
            let n = sizes[k as usize % sizes.len()];
            let a = random_antisymmetric(n, &mut r);
            let g = if k % 2 == 0 {
                sample_gl(n, &mut r)?
            } else {
                &sample_orthogonal(n, &mut r)? * &reflection(n)
            };
            let lhs = pfaffian(&(&(&g * &a) * &g.transpose()))?;
            let rhs = g.det() * pfaffian(&a)?;
            Ok(usize::from(lhs != rhs))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(PfaffianIdentityReport {
        cases,
        sizes: sizes.to_vec(),
        failures,
    })
}

fn random_antisymmetric<R: rand::Rng + ?Sized>(n: usize, r: &mut R) -> RatMatrix {
    let mut a = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rat(r.gen_range(-9..=9));
            a[(j, i)] = -v.clone();
            a[(i, j)] = v;
        }
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoExtensionReport {
    pub dim_w: usize,
    pub slots: usize,
    pub samples: usize,
    pub profiles: usize,
    /// Polarized pfaffians that changed under an `SO(W)` conjugation.
    pub so_failures: usize,
    /// Polarized pfaffians not negated by a determinant `-1` conjugation.
    pub sign_failures: usize,
    /// Whether `pf_k * pf_l` is `O(W)`-invariant for every pair of profiles.
    pub products_o_invariant: bool,
    /// Whether every `pf_k * pf_l` lies in the span of products of trace
    /// words; `None` above the sizes where this is computed.
    pub products_in_trace_span: Option<bool>,
    pub pass: bool,
}

/// Largest `(dim W, m)` for which trace-span membership is computed.
const TRACE_SPAN_LIMIT: (usize, usize) = (4, 2);

/// Random-sample and exact checks of the pfaffian extension.
pub fn so_extension_check(ctx: &PfaffianContext, samples: usize, seed: u64) -> Result<SoExtensionReport> {
    let profiles = ctx.weight_profiles();
    let pfs = profiles
        .iter()
        .map(|w| pfaffian_functional(ctx, w))
        .collect::<Result<Vec<_>>>()?;
    let n = ctx.dim_w;
    let base = rng::derive_seed(seed, "so-extension");
    let counts = (0..samples as u64)
        .into_par_iter()
        .map(|k| {
            let mut r = rng::stream(base, k);
            let mats: Vec<RatMatrix> = (0..ctx.m).map(|_| random_antisymmetric(n, &mut r)).collect();
            let g = sample_orthogonal(n, &mut r)?;
            let h = &g * &reflection(n);
            let conj = |x: &RatMatrix| -> Vec<RatMatrix> {
                mats.iter().map(|a| &(x * a) * &x.transpose()).collect()
            };
            let p0 = ctx.point(&mats)?;
            let pg = ctx.point(&conj(&g))?;
            let ph = ctx.point(&conj(&h))?;
            let mut so = 0;
            let mut sign = 0;
            for pf in &pfs {
                let v = pf.eval(&p0);
                so += usize::from(pf.eval(&pg) != v);
                sign += usize::from(pf.eval(&ph) != -v);
            }
            Ok((so, sign))
        })
        .collect::<Result<Vec<_>>>()?;
    let so_failures = counts.iter().map(|c| c.0).sum();
    let sign_failures = counts.iter().map(|c| c.1).sum();

    let act = ctx.action();
    let mut products = Vec::new();
    for (k, a) in pfs.iter().enumerate() {
        for b in &pfs[k..] {
            products.push(a * b);
        }
    }
    let products_o_invariant = products.iter().all(|p| act.is_invariant(p));
    let products_in_trace_span = if ctx.dim_w <= TRACE_SPAN_LIMIT.0 && ctx.m <= TRACE_SPAN_LIMIT.1 {
        Some(in_trace_span(ctx, &products, 2 * ctx.half())?)
    } else {
        None
    };
    let pass = so_failures == 0 && sign_failures == 0 && products_o_invariant && products_in_trace_span != Some(false);
    Ok(SoExtensionReport {
        dim_w: ctx.dim_w,
        slots: ctx.m,
        samples,
        profiles: pfs.len(),
        so_failures,
        sign_failures,
        products_o_invariant,
        products_in_trace_span,
        pass,
    })
}

/// Degree-`d` products of trace words of `m` loops at an orthogonal vertex
/// of dimension `dim W`, restricted to antisymmetric loops.
pub fn trace_products_on_so(ctx: &PfaffianContext, d: usize) -> Result<Vec<Poly>> {
    let mut builder = SymQuiver::builder().orthogonal("w");
    let ids: Vec<String> = (0..ctx.m).map(|s| format!("a{s}")).collect();
    for id in &ids {
        builder = builder.arrow(id, "w", "w");
    }
    let q = builder.build()?;
    let alpha = DimVector::from_raw(vec![ctx.dim_w]);
    let dq = build_doubled(&q);
    let forms = gram_matrix(&q, &alpha)?;
    let sym = SymbolicEvaluator::new(&dq, &forms, &alpha);
    let layout = sym.layout().clone();
    let n = ctx.dim_w;
    let mut images = vec![Vec::new(); layout.nvars()];
    for s in 0..ctx.m {
        for i in 0..n {
            for j in 0..n {
                let v = layout.var(s, i, j);
                images[v] = match i.cmp(&j) {
                    std::cmp::Ordering::Less => vec![(ctx.coord(s, i, j), 1)],
                    std::cmp::Ordering::Greater => vec![(ctx.coord(s, j, i), -1)],
                    std::cmp::Ordering::Equal => vec![],
                };
            }
        }
    }
    let mut by_len = std::collections::BTreeMap::new();
    for w in enumerate_cycles(&dq, d) {
        let p = sym.word_poly(&w)?.substitute_linear(&images, ctx.ncoords());
        by_len.entry(w.len()).or_insert_with(Vec::new).push(p);
    }
    for fam in by_len.values_mut() {
        *fam = independent_subset(fam);
    }
    Ok(graded_products(&by_len, ctx.ncoords(), d))
}

fn in_trace_span(ctx: &PfaffianContext, targets: &[Poly], d: usize) -> Result<bool> {
    let span = trace_products_on_so(ctx, d)?;
    let mut index = MonomialIndex::from_list(crate::poly::monomials_of_degree(ctx.ncoords(), d));
    let mut ech = Echelon::new(index.len());
    for p in &span {
        ech.insert(p.to_row(&mut index));
    }
    Ok(targets.iter().all(|t| ech.contains(t.to_row(&mut index))))
}

/// Whether `pf^2` (single slot) lies in the span of trace-word products of
/// the same degree.
pub fn pf_square_in_trace_span(dim_w: usize) -> Result<bool> {
    let ctx = PfaffianContext::new(dim_w, 1)?;
    let pf = pfaffian_functional(&ctx, &[ctx.half()])?;
    in_trace_span(&ctx, &[&pf * &pf], dim_w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub so_dim: usize,
    pub o_dim: usize,
    pub difference: usize,
    /// Span of `pf_k * (O-invariants of degree d - w)` over all profiles.
    pub odd_span_all_profiles: usize,
    /// Same with multilinear profiles (weights 0 or 1) only.
    pub odd_span_multilinear: usize,
    pub accounted_all: bool,
    pub accounted_multilinear: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub dim_w: usize,
    pub slots: usize,
    pub rows: Vec<DegreeRow>,
}

impl DegreeReport {
    pub fn accounted(&self) -> bool {
        self.rows.iter().all(|r| r.accounted_all)
    }
}

/// Per-degree `SO(W)` and `O(W)` invariant dimensions on `so(W)^m` for
/// degrees `0..=max_degree`, with the odd part compared against products of
/// polarized pfaffians and `O(W)`-invariants.
pub fn generic_degree_report(ctx: &PfaffianContext, max_degree: usize, limit: usize) -> Result<DegreeReport> {
    let full = ctx.action();
    let connected = full.without_reflections();
    let profiles = ctx.weight_profiles();
    let pfs: Vec<(bool, Poly)> = profiles
        .iter()
        .map(|w| Ok((w.iter().all(|&x| x <= 1), pfaffian_functional(ctx, w)?)))
        .collect::<Result<Vec<_>>>()?;
    let w = ctx.half();
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let so_dim = connected.invariant_dim(&connected.even_monomials(d, limit)?);
        let o_dim = full.invariant_dim(&full.even_monomials(d, limit)?);
        let (all, multi) = if d >= w {
            let o_basis = full.invariant_basis(&full.even_monomials(d - w, limit)?);
            let mut all = Vec::new();
            let mut multi = Vec::new();
            for (is_multi, pf) in &pfs {
                for b in &o_basis {
                    let p = pf * b;
                    if *is_multi {
                        multi.push(p.clone());
                    }
                    all.push(p);
                }
            }
            (
                crate::oracle::poly_span_dim(&all),
                crate::oracle::poly_span_dim(&multi),
            )
        } else {
            (0, 0)
        };
        let difference = so_dim - o_dim;
        rows.push(DegreeRow {
            degree: d,
            so_dim,
            o_dim,
            difference,
            odd_span_all_profiles: all,
            odd_span_multilinear: multi,
            accounted_all: all == difference,
            accounted_multilinear: multi == difference,
        });
    }
    Ok(DegreeReport {
        dim_w: ctx.dim_w,
        slots: ctx.m,
        rows,
    })
}

/// Integer value of a polynomial at an integer point, for tests and reports.
pub fn eval_integer(p: &Poly, point: &[i64]) -> BigInt {
    p.eval(&point.iter().map(|&x| rat(x)).collect::<Vec<_>>()).to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_GUARD_RAIL;

    #[test]
    fn context_validation() {
        assert!(PfaffianContext::new(3, 1).is_err());
        assert!(PfaffianContext::new(0, 1).is_err());
        assert!(PfaffianContext::new(2, 0).is_err());
        let c = PfaffianContext::new(4, 2).unwrap();
        assert_eq!(c.ncoords(), 12);
        assert_eq!(c.coord(0, 0, 1), 0);
        assert_eq!(c.coord(0, 2, 3), 5);
        assert_eq!(c.coord(1, 0, 1), 6);
    }

    #[test]
    fn functional_examples() {
        let c = PfaffianContext::new(2, 1).unwrap();
        assert_eq!(pfaffian_functional(&c, &[1]).unwrap(), Poly::var(1, 0));

        let c = PfaffianContext::new(4, 2).unwrap();
        let f = pfaffian_functional(&c, &[1, 1]).unwrap();
        let mut a = RatMatrix::zeros(4, 4);
        a[(0, 1)] = rat(1);
        a[(1, 0)] = rat(-1);
        let mut b = RatMatrix::zeros(4, 4);
        b[(2, 3)] = rat(1);
        b[(3, 2)] = rat(-1);
        assert_eq!(f.eval(&c.point(&[a, b]).unwrap()), rat(1));

        let c = PfaffianContext::new(4, 1).unwrap();
        let f = pfaffian_functional(&c, &[2]).unwrap();
        let j = RatMatrix::standard_symplectic(4);
        assert_eq!(f.eval(&c.point(std::slice::from_ref(&j)).unwrap()), pfaffian(&j).unwrap());
        let mut block = RatMatrix::zeros(4, 4);
        for (i, k) in [(0, 1), (2, 3)] {
            block[(i, k)] = rat(1);
            block[(k, i)] = rat(-1);
        }
        assert_eq!(f.eval(&c.point(&[block]).unwrap()), rat(1));

        assert!(matches!(pfaffian_functional(&c, &[1]), Err(Error::BadWeights(_))));
        assert!(matches!(pfaffian_functional(&c, &[1, 1]), Err(Error::BadWeights(_))));
    }

    #[test]
    fn unpolarized_matches_numeric_pfaffian() {
        let c = PfaffianContext::new(6, 1).unwrap();
        let f = pfaffian_functional(&c, &[3]).unwrap();
        let mut r = rng::stream(3, 3);
        for _ in 0..5 {
            let a = random_antisymmetric(6, &mut r);
            assert_eq!(f.eval(&c.point(std::slice::from_ref(&a)).unwrap()), pfaffian(&a).unwrap());
        }
    }

    #[test]
    fn reflection_negates_in_dim_two() {
        let c = PfaffianContext::new(2, 1).unwrap();
        let f = pfaffian_functional(&c, &[1]).unwrap();
        let a = RatMatrix::from_i64(2, 2, &[0, 5, -5, 0]);
        let r = RatMatrix::from_i64(2, 2, &[1, 0, 0, -1]);
        let ra = &(&r * &a) * &r;
        assert_eq!(f.eval(&c.point(&[ra]).unwrap()), rat(-5));
    }

    #[test]
    fn extension_checks_small() {
        for (n, m) in [(2, 1), (2, 3), (4, 1), (4, 2)] {
            let c = PfaffianContext::new(n, m).unwrap();
            let r = so_extension_check(&c, 10, 1).unwrap();
            assert!(r.pass, "{r:?}");
            let expected = if m <= 2 { Some(true) } else { None };
            assert_eq!(r.products_in_trace_span, expected);
        }
    }

    #[test]
    fn pf_square_membership() {
        assert!(pf_square_in_trace_span(2).unwrap());
        assert!(pf_square_in_trace_span(4).unwrap());
    }

    #[test]
    fn degree_examples() {
        let c = PfaffianContext::new(2, 2).unwrap();
        let r = generic_degree_report(&c, 1, DEFAULT_GUARD_RAIL).unwrap();
        assert_eq!((r.rows[1].so_dim, r.rows[1].o_dim), (2, 0));
        let c = PfaffianContext::new(2, 1).unwrap();
        let r = generic_degree_report(&c, 2, DEFAULT_GUARD_RAIL).unwrap();
        assert_eq!((r.rows[2].so_dim, r.rows[2].o_dim), (1, 1));
        let c = PfaffianContext::new(4, 1).unwrap();
        let r = generic_degree_report(&c, 1, DEFAULT_GUARD_RAIL).unwrap();
        assert_eq!((r.rows[1].so_dim, r.rows[1].o_dim), (0, 0));
    }

    #[test]
    fn dim_two_odd_part_is_accounted() {
        for m in 1..=3 {
            let c = PfaffianContext::new(2, m).unwrap();
            let r = generic_degree_report(&c, 4, DEFAULT_GUARD_RAIL).unwrap();
            assert!(r.accounted(), "{r:?}");
            for row in &r.rows {
                assert!(row.so_dim >= row.o_dim);
            }
        }
    }

    #[test]
    fn identity_suite() {
        let r = pfaffian_identity_check(&[2, 4, 6, 8], 24, 5).unwrap();
        assert_eq!(r.failures, 0);
    }
}
