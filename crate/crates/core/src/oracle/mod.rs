//! Brute-force invariant spaces for small instances.
//!
//! The oracle never looks at trace words: it computes invariants of the
//! structure group directly, as the common kernel of the Lie algebra's
//! derivations on a space of monomials, cut down by one reflection per
//! orthogonal vertex. Spans of trace words are then compared against it.

mod action;
mod fft;
pub mod symbolic;

pub use action::{gl_basis, so_basis, sp_basis, LinearAction, DEFAULT_GUARD_RAIL};
pub use fft::{fft_check, perfect_matchings, FftReport};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::StarMode;
use crate::linalg::sparse::{rank_of, Echelon, SparseRow};
use crate::linalg::RatMatrix;
use crate::poly::{binomial, MonomialIndex, Poly};
use crate::quiver::{build_doubled, gram_matrix, DimVector, SymQuiver, VertexClass};
use crate::words::{enumerate_cycles, TraceWord};
use action::small_int;
use symbolic::{CoordinateLayout, SymbolicEvaluator};

/// The structure group's Lie algebra acting on the coordinates of
/// representations, with one reflection per nonzero orthogonal vertex.
pub fn quiver_action(q: &SymQuiver, alpha: &DimVector) -> Result<LinearAction> {
    crate::quiver::check_admissible(q, alpha)?;
    let dq = build_doubled(q);
    let layout = CoordinateLayout::new(&dq, alpha);
    let mut act = LinearAction::new(layout.nvars());

    let mut lie: Vec<Vec<(usize, RatMatrix)>> = Vec::new();
    for (v, vert) in q.vertices().iter().enumerate() {
        let n = alpha.get(v);
        match vert.class {
            VertexClass::Orthogonal => lie.extend(so_basis(n).into_iter().map(|x| vec![(v, x)])),
            VertexClass::Symplectic => lie.extend(sp_basis(n).into_iter().map(|x| vec![(v, x)])),
            VertexClass::GlPair { partner, starred: false } => lie.extend(
                gl_basis(n)
                    .into_iter()
                    .map(|x| vec![(partner, -&x.transpose()), (v, x)]),
            ),
            VertexClass::GlPair { starred: true, .. } => {}
        }
    }

    for gen in &lie {
        let mut triples = Vec::new();
        for (a, arrow) in q.arrows().iter().enumerate() {
            let (rows, cols) = (alpha.get(arrow.dst), alpha.get(arrow.src));
            for (v, x) in gen {
                if *v == arrow.dst {
                    // (X f)_ij = sum_k X_ik f_kj
                    for i in 0..rows {
                        for k in 0..rows {
                            let c = small_int(&x[(i, k)]);
                            if c != 0 {
                                for j in 0..cols {
                                    triples.push((layout.var(a, i, j), layout.var(a, k, j), c));
                                }
                            }
                        }
                    }
                }
                if *v == arrow.src {
                    // -(f X)_ij = -sum_k f_ik X_kj
                    for k in 0..cols {
                        for j in 0..cols {
                            let c = small_int(&x[(k, j)]);
                            if c != 0 {
                                for i in 0..rows {
                                    triples.push((layout.var(a, i, j), layout.var(a, i, k), -c));
                                }
                            }
                        }
                    }
                }
            }
        }
        act.add_generator(triples);
    }

    for (v, vert) in q.vertices().iter().enumerate() {
        if vert.class != VertexClass::Orthogonal || alpha.get(v) == 0 {
            continue;
        }
        let mut flips = vec![false; layout.nvars()];
        for (a, arrow) in q.arrows().iter().enumerate() {
            let (rows, cols) = (alpha.get(arrow.dst), alpha.get(arrow.src));
            for i in 0..rows {
                for j in 0..cols {
                    let flip = (arrow.dst == v && i == 0) != (arrow.src == v && j == 0);
                    flips[layout.var(a, i, j)] = flip;
                }
            }
        }
        act.add_reflection(flips);
    }
    Ok(act)
}

/// Dimension of degree-`d` invariants of the full structure group.
pub fn lie_invariant_dim(q: &SymQuiver, alpha: &DimVector, d: usize, limit: usize) -> Result<usize> {
    let act = quiver_action(q, alpha)?;
    Ok(act.invariant_dim(&act.even_monomials(d, limit)?))
}

/// Same as [`lie_invariant_dim`] with special orthogonal groups in place of
/// orthogonal ones.
pub fn connected_invariant_dim(q: &SymQuiver, alpha: &DimVector, d: usize, limit: usize) -> Result<usize> {
    let act = quiver_action(q, alpha)?.without_reflections();
    Ok(act.invariant_dim(&act.even_monomials(d, limit)?))
}

/// A basis of degree-`d` invariants of the full structure group.
pub fn invariant_basis(q: &SymQuiver, alpha: &DimVector, d: usize, limit: usize) -> Result<Vec<Poly>> {
    let act = quiver_action(q, alpha)?;
    Ok(act.invariant_basis(&act.even_monomials(d, limit)?))
}

/// Maximal linearly independent subfamily of `polys`.
pub fn independent_subset(polys: &[Poly]) -> Vec<Poly> {
    let mut index = MonomialIndex::new();
    let rows: Vec<SparseRow> = polys.iter().map(|p| p.to_row(&mut index)).collect();
    let mut ech = Echelon::new(index.len());
    polys
        .iter()
        .zip(rows)
        .filter_map(|(p, r)| ech.insert(r).then(|| p.clone()))
        .collect()
}

/// Dimension of the linear span of `polys`.
pub fn poly_span_dim(polys: &[Poly]) -> usize {
    let mut index = MonomialIndex::new();
    let rows: Vec<SparseRow> = polys.iter().map(|p| p.to_row(&mut index)).collect();
    rank_of(rows, index.len())
}

/// All products of `total` degree drawn from graded families: `by_degree[l]`
/// holds polynomials of degree `l`.
pub fn graded_products(by_degree: &BTreeMap<usize, Vec<Poly>>, nvars: usize, total: usize) -> Vec<Poly> {
    fn rec(
        parts: &[(usize, &Vec<Poly>)],
        k: usize,
        left: usize,
        start: usize,
        acc: Poly,
        out: &mut Vec<Poly>,
    ) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for p in k..parts.len() {
            let (deg, family) = parts[p];
            if deg > left {
                continue;
            }
            let from = if p == k { start } else { 0 };
            for (idx, f) in family.iter().enumerate().skip(from) {
                rec(parts, p, left - deg, idx, &acc * f, out);
            }
        }
    }
    let parts: Vec<(usize, &Vec<Poly>)> = by_degree
        .iter()
        .filter(|(&d, fam)| d > 0 && !fam.is_empty())
        .map(|(&d, fam)| (d, fam))
        .collect();
    let mut out = Vec::new();
    rec(&parts, 0, total, 0, Poly::one(nvars), &mut out);
    out
}

/// Dimension of the span of all degree-`d` products of trace words.
pub fn span_dim(
    words: &[TraceWord],
    q: &SymQuiver,
    alpha: &DimVector,
    d: usize,
    limit: usize,
    mode: StarMode,
) -> Result<usize> {
    let dq = build_doubled(q);
    let forms = gram_matrix(q, alpha)?;
    let sym = SymbolicEvaluator::new(&dq, &forms, alpha).with_mode(mode);
    let nvars = sym.layout().nvars();
    let size = binomial(nvars + d.max(1) - 1, d);
    if size > limit {
        return Err(Error::TooLarge { size, limit });
    }
    let mut by_len: BTreeMap<usize, Vec<Poly>> = BTreeMap::new();
    for w in words.iter().filter(|w| w.len() <= d) {
        by_len.entry(w.len()).or_default().push(sym.word_poly(w)?);
    }
    for fam in by_len.values_mut() {
        *fam = independent_subset(fam);
    }
    Ok(poly_span_dim(&graded_products(&by_len, nvars, d)))
}

/// Options for [`check_spanning`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanOptions {
    pub max_word_len: usize,
    pub guard_rail: usize,
    pub mode: StarMode,
}

impl Default for SpanOptions {
    fn default() -> Self {
        Self {
            max_word_len: 4,
            guard_rail: DEFAULT_GUARD_RAIL,
            mode: StarMode::Faithful,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningReport {
    pub instance: String,
    pub degree: usize,
    pub oracle_dim: usize,
    pub span_dim: usize,
    pub pass: bool,
}

/// Short deterministic description of an instance, e.g.
/// `s:orthogonal(2) t:symplectic(2) | a:s->t`.
pub fn describe_instance(q: &SymQuiver, alpha: &DimVector) -> String {
    let verts: Vec<String> = q
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, vert)| {
            let kind = match vert.class {
                VertexClass::Orthogonal => "orthogonal",
                VertexClass::Symplectic => "symplectic",
                VertexClass::GlPair { .. } => "gl",
            };
            format!("{}:{}({})", vert.id, kind, alpha.get(v))
        })
        .collect();
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| format!("{}:{}->{}", a.id, q.vertices()[a.src].id, q.vertices()[a.dst].id))
        .collect();
    format!("{} | {}", verts.join(" "), arrows.join(" "))
}

/// Compares the span of trace-word products against the oracle at degree `d`.
pub fn check_spanning(q: &SymQuiver, alpha: &DimVector, d: usize, opts: &SpanOptions) -> Result<SpanningReport> {
    let oracle_dim = lie_invariant_dim(q, alpha, d, opts.guard_rail)?;
    let words = enumerate_cycles(&build_doubled(q), opts.max_word_len.min(d));
    let span = span_dim(&words, q, alpha, d, opts.guard_rail, opts.mode)?;
    Ok(SpanningReport {
        instance: describe_instance(q, alpha),
        degree: d,
        oracle_dim,
        span_dim: span,
        pass: span == oracle_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIMIT: usize = DEFAULT_GUARD_RAIL;

    fn o_loop(n: usize) -> (SymQuiver, DimVector) {
        let q = SymQuiver::builder().orthogonal("s").arrow("a", "s", "s").build().unwrap();
        (q, DimVector::from_raw(vec![n]))
    }

    #[test]
    fn oracle_examples() {
        let (q, a1) = o_loop(1);
        assert_eq!(lie_invariant_dim(&q, &a1, 1, LIMIT).unwrap(), 1);
        let (q, a2) = o_loop(2);
        assert_eq!(lie_invariant_dim(&q, &a2, 1, LIMIT).unwrap(), 1);
        let sp = SymQuiver::builder().symplectic("t").arrow("a", "t", "t").build().unwrap();
        assert_eq!(lie_invariant_dim(&sp, &DimVector::from_raw(vec![2]), 2, LIMIT).unwrap(), 2);
    }

    #[test]
    fn removing_reflections_never_lowers_dimension() {
        let q = SymQuiver::builder()
            .orthogonal("s1")
            .orthogonal("s2")
            .arrow("a", "s1", "s2")
            .arrow("b", "s2", "s1")
            .build()
            .unwrap();
        let alpha = DimVector::from_raw(vec![2, 2]);
        for d in 0..=3 {
            let full = lie_invariant_dim(&q, &alpha, d, LIMIT).unwrap();
            let conn = connected_invariant_dim(&q, &alpha, d, LIMIT).unwrap();
            assert!(conn >= full, "d={d}: {conn} < {full}");
        }
    }

    #[test]
    fn span_examples() {
        let (q, alpha) = o_loop(2);
        let dq = build_doubled(&q);
        let words = enumerate_cycles(&dq, 2);
        assert_eq!(words.len(), 3); // a, a a, a a*
        let m = StarMode::Faithful;
        let tr_f = &words[..1];
        let tr_f2: Vec<TraceWord> = words.iter().filter(|w| w.steps().iter().all(|s| !s.star)).cloned().collect();
        assert_eq!(span_dim(&tr_f2, &q, &alpha, 2, LIMIT, m).unwrap(), 2);
        assert_eq!(span_dim(&[], &q, &alpha, 3, LIMIT, m).unwrap(), 0);
        let doubled: Vec<TraceWord> = tr_f2.iter().chain(tr_f2.iter()).cloned().collect();
        assert_eq!(span_dim(&doubled, &q, &alpha, 2, LIMIT, m).unwrap(), 2);
        assert_eq!(span_dim(tr_f, &q, &alpha, 2, LIMIT, m).unwrap(), 1);
    }

    #[test]
    fn spanning_small_cases() {
        let (q, alpha) = o_loop(2);
        for d in 0..=4 {
            let r = check_spanning(&q, &alpha, d, &SpanOptions::default()).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let q = SymQuiver::builder()
            .orthogonal("s1")
            .orthogonal("s2")
            .arrow("a", "s1", "s2")
            .arrow("b", "s2", "s1")
            .build()
            .unwrap();
        let alpha = DimVector::from_raw(vec![1, 2]);
        for d in 1..=3 {
            let r = check_spanning(&q, &alpha, d, &SpanOptions::default()).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn invariant_basis_is_invariant() {
        let (q, alpha) = o_loop(2);
        let act = quiver_action(&q, &alpha).unwrap();
        let basis = invariant_basis(&q, &alpha, 2, LIMIT).unwrap();
        assert_eq!(basis.len(), lie_invariant_dim(&q, &alpha, 2, LIMIT).unwrap());
        assert!(basis.iter().all(|p| act.is_invariant(p)));
    }

    #[test]
    fn guard_rail_trips() {
        let (q, alpha) = o_loop(3);
        assert!(matches!(lie_invariant_dim(&q, &alpha, 4, 10), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn graded_products_count_multisets() {
        let n = 3;
        let mut fam = BTreeMap::new();
        fam.insert(1, (0..n).map(|i| Poly::var(n, i)).collect::<Vec<_>>());
        // Degree-3 monomials in 3 variables: C(5, 3) = 10 multisets.
        assert_eq!(graded_products(&fam, n, 3).len(), 10);
        assert_eq!(graded_products(&fam, n, 0).len(), 1);
    }
}
