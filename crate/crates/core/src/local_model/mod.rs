//! Local structure of the moduli space at a polystable point: the Ext-quiver,
//! the tangent-complex inventory, Hilbert series, multiplicity, tangent
//! dimension and fiber cardinality.
//!
//! Bundles have degree 0 on a curve of genus `g >= 2`, summands are stable and
//! mutually non-isomorphic, so `dim Hom(F_i, F_j) = delta_ij` and Riemann-Roch
//! gives every extension dimension.

mod series;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, SymQuiver, VertexKind};

pub use series::{hilbert_series, multiplicity, tangent_dim, BigNum, HilbertSeries};

/// Upper bound on the number of arrows of a local quiver.
pub const LOCAL_ARROW_LIMIT: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SummandKind {
    #[serde(rename = "orthogonal", alias = "orthogonal_stable")]
    OrthogonalStable,
    #[serde(rename = "symplectic", alias = "symplectic_stable")]
    SymplecticStable,
    #[serde(rename = "pair", alias = "non_self_dual_pair")]
    NonSelfDualPair,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    #[default]
    Orthogonal,
    Symplectic,
}

/// One summand `F (x) V`, or `(F (+) F*) (x) V` for a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandSpec {
    pub kind: SummandKind,
    /// Rank of `F`.
    pub rank: usize,
    /// Dimension of the multiplicity space `V`.
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSpec {
    pub genus: usize,
    #[serde(default)]
    pub flavor: Flavor,
    pub summands: Vec<SummandSpec>,
}

impl SummandSpec {
    pub fn new(kind: SummandKind, rank: usize, mult: usize) -> Self {
        Self { kind, rank, mult }
    }

    /// Rank of the bundle part: `r`, or `2r` for a pair.
    pub fn bundle_rank(&self) -> usize {
        match self.kind {
            SummandKind::NonSelfDualPair => 2 * self.rank,
            _ => self.rank,
        }
    }

    /// Sign of the duality on `F`: `+1` orthogonal, `-1` symplectic, `0` for
    /// a non-self-dual `F`.
    pub(super) fn duality(&self) -> i64 {
        match self.kind {
            SummandKind::OrthogonalStable => 1,
            SummandKind::SymplecticStable => -1,
            SummandKind::NonSelfDualPair => 0,
        }
    }

    /// Class of the vertex carrying `V`, given by the form induced on `V`.
    pub fn vertex_kind(&self, flavor: Flavor) -> VertexKind {
        match (self.kind, flavor) {
            (SummandKind::NonSelfDualPair, _) => VertexKind::GlPair,
            (SummandKind::OrthogonalStable, Flavor::Orthogonal) | (SummandKind::SymplecticStable, Flavor::Symplectic) => {
                VertexKind::Orthogonal
            }
            _ => VertexKind::Symplectic,
        }
    }
}

impl DecompositionSpec {
    pub fn new(genus: usize, flavor: Flavor, summands: Vec<SummandSpec>) -> Self {
        Self { genus, flavor, summands }
    }

    pub fn orthogonal(genus: usize, summands: Vec<SummandSpec>) -> Self {
        Self::new(genus, Flavor::Orthogonal, summands)
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus < 2 {
            return Err(Error::InvalidSpec(format!("genus {} is below 2", self.genus)));
        }
        if self.summands.is_empty() {
            return Err(Error::InvalidSpec("no summands".into()));
        }
        for (i, s) in self.summands.iter().enumerate() {
            let n = i + 1;
            if s.rank == 0 || s.mult == 0 {
                return Err(Error::InvalidSpec(format!("summand {n} has zero rank or multiplicity")));
            }
            if s.kind == SummandKind::SymplecticStable && s.rank % 2 == 1 {
                return Err(Error::InvalidSpec(format!("symplectic summand {n} has odd rank {}", s.rank)));
            }
            if s.vertex_kind(self.flavor) == VertexKind::Symplectic && s.mult % 2 == 1 {
                return Err(Error::InvalidSpec(format!(
                    "summand {n} needs a symplectic multiplicity space but has odd dimension {}",
                    s.mult
                )));
            }
        }
        Ok(())
    }

    pub fn total_rank(&self) -> usize {
        self.summands.iter().map(|s| s.bundle_rank() * s.mult).sum()
    }

    fn g1(&self) -> u64 {
        self.genus as u64 - 1
    }
}

/// A bundle appearing as a vertex of the Ext-quiver: summand index and
/// whether it is the dual half of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Node {
    summand: usize,
    dual: bool,
}

fn nodes(spec: &DecompositionSpec) -> Vec<Node> {
    let mut out = Vec::new();
    for (i, s) in spec.summands.iter().enumerate() {
        out.push(Node { summand: i, dual: false });
        if s.kind == SummandKind::NonSelfDualPair {
            out.push(Node { summand: i, dual: true });
        }
    }
    out
}

fn node_label(n: Node) -> String {
    format!("F{}{}", n.summand + 1, if n.dual { "*" } else { "" })
}

/// `dim Ext^1(F_i, F_j)` over all ordered pairs of bundles, the dual halves of
/// pairs included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtMatrix {
    pub labels: Vec<String>,
    pub dims: Vec<Vec<u64>>,
}

/// `dim H^1(S^2 F*)` and `dim H^1(L^2 F*)` for one bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSplit {
    pub label: String,
    pub sym: u64,
    pub alt: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDimensions {
    pub ext: ExtMatrix,
    pub form_split: Vec<FormSplit>,
}

/// `(dim H^1(S^2 F*), dim H^1(L^2 F*))` for a stable `F` of rank `r` with the
/// given duality sign. The duality, when present, lands in `H^0` of the
/// matching square and adds one to that `H^1`.
pub(super) fn split_dims(r: u64, g1: u64, duality: i64) -> (u64, u64) {
    let sym = r * (r + 1) / 2 * g1 + u64::from(duality == 1);
    let alt = r * (r - 1) / 2 * g1 + u64::from(duality == -1);
    (sym, alt)
}

pub fn ext_dimensions(spec: &DecompositionSpec) -> Result<ExtDimensions> {
    spec.validate()?;
    let g1 = spec.g1();
    let ns = nodes(spec);
    let dims = ns
        .iter()
        .map(|a| {
            ns.iter()
                .map(|b| {
                    let ra = spec.summands[a.summand].rank as u64;
                    let rb = spec.summands[b.summand].rank as u64;
                    ra * rb * g1 + u64::from(a == b)
                })
                .collect()
        })
        .collect();
    let form_split = ns
        .iter()
        .map(|&n| {
            let s = &spec.summands[n.summand];
            let (sym, alt) = split_dims(s.rank as u64, g1, s.duality());
            FormSplit {
                label: node_label(n),
                sym,
                alt,
            }
        })
        .collect();
    Ok(ExtDimensions {
        ext: ExtMatrix {
            labels: ns.iter().map(|&n| node_label(n)).collect(),
            dims,
        },
        form_split,
    })
}

/// The Ext-quiver: one vertex per bundle, `dim Ext^1(F_i, F_j)` arrows from
/// `F_i` to `F_j`, and the multiplicity dimensions as dimension vector.
pub fn build_local_quiver(spec: &DecompositionSpec) -> Result<(SymQuiver, DimVector)> {
    let ed = ext_dimensions(spec)?;
    let total: u64 = ed.ext.dims.iter().flatten().sum();
    if total > LOCAL_ARROW_LIMIT as u64 {
        return Err(Error::TooLarge {
            size: usize::try_from(total).unwrap_or(usize::MAX),
            limit: LOCAL_ARROW_LIMIT,
        });
    }
    let ns = nodes(spec);
    let ids: Vec<String> = ns
        .iter()
        .map(|n| format!("v{}{}", n.summand + 1, if n.dual { "*" } else { "" }))
        .collect();
    let mut b = SymQuiver::builder();
    let mut alpha = Vec::new();
    for (k, n) in ns.iter().enumerate() {
        let s = &spec.summands[n.summand];
        match s.vertex_kind(spec.flavor) {
            VertexKind::Orthogonal => b = b.orthogonal(&ids[k]),
            VertexKind::Symplectic => b = b.symplectic(&ids[k]),
            VertexKind::GlPair if !n.dual => b = b.gl_pair(&ids[k], &ids[k + 1]),
            VertexKind::GlPair => {}
        }
        alpha.push(s.mult);
    }
    for (i, row) in ed.ext.dims.iter().enumerate() {
        for (j, &count) in row.iter().enumerate() {
            for c in 0..count {
                b = b.arrow(&format!("x{}_{}_{}", ids[i], ids[j], c + 1), &ids[i], &ids[j]);
            }
        }
    }
    // Vertices keep insertion order, so `alpha` is already aligned.
    let q = b.build()?;
    Ok((q, DimVector::from_raw(alpha)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryEntry {
    pub label: String,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inventory {
    pub entries: Vec<InventoryEntry>,
    pub total: u64,
}

fn sym2(m: u64) -> u64 {
    m * (m + 1) / 2
}

fn alt2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// Summands of `H^1(C, Ad P)`: the diagonal pieces of each summand tensored
/// with the matching square of its multiplicity space, then the cross blocks
/// `Ext^1(E_i, E_j)` for `i < j`.
pub fn h1ad_inventory(spec: &DecompositionSpec) -> Result<Inventory> {
    spec.validate()?;
    let g1 = spec.g1();
    let mut entries = Vec::new();
    // Ad is L^2 E* for the orthogonal flavor and S^2 E* for the symplectic
    // one; the flavor decides which square of V pairs with which square of F.
    let (with_sym_f, with_alt_f) = match spec.flavor {
        Flavor::Orthogonal => ("L2", "S2"),
        Flavor::Symplectic => ("S2", "L2"),
    };
    let square = |name: &str, m: u64| if name == "S2" { sym2(m) } else { alt2(m) };
    for (i, s) in spec.summands.iter().enumerate() {
        let n = i + 1;
        let (r, m) = (s.rank as u64, s.mult as u64);
        let mut push = |label: String, dim: u64| entries.push(InventoryEntry { label, dim });
        match s.kind {
            SummandKind::NonSelfDualPair => {
                push(format!("Ext1(F{n},F{n}) x gl(V{n})"), (r * r * g1 + 1) * m * m);
                let (sym, alt) = split_dims(r, g1, 0);
                for dual in ["F{n}*", "F{n}"] {
                    let f = dual.replace("{n}", &n.to_string());
                    push(
                        format!("H1(S2 {f}) x {with_sym_f}(V{n}*)"),
                        sym * square(with_sym_f, m),
                    );
                    push(
                        format!("H1(L2 {f}) x {with_alt_f}(V{n}*)"),
                        alt * square(with_alt_f, m),
                    );
                }
            }
            _ => {
                let (sym, alt) = split_dims(r, g1, s.duality());
                push(
                    format!("H1(S2 F{n}*) x {with_sym_f}(V{n}*)"),
                    sym * square(with_sym_f, m),
                );
                push(
                    format!("H1(L2 F{n}*) x {with_alt_f}(V{n}*)"),
                    alt * square(with_alt_f, m),
                );
            }
        }
    }
    for (i, a) in spec.summands.iter().enumerate() {
        for (j, b) in spec.summands.iter().enumerate().skip(i + 1) {
            let dim = (a.bundle_rank() * a.mult * b.bundle_rank() * b.mult) as u64 * g1;
            entries.push(InventoryEntry {
                label: format!("Ext1(E{},E{})", i + 1, j + 1),
                dim,
            });
        }
    }
    let total = entries.iter().map(|e| e.dim).sum();
    Ok(Inventory { entries, total })
}

/// `dim H^1(C, Ad P)` read off the Ext-quiver: half of the representation
/// space plus the trace of the involution cutting out `H^1(Ad P)`.
///
/// The involution swaps the blocks `(v, w)` and `(sigma w, sigma v)`, so only
/// the blocks `(v, sigma v)` contribute. On such a block it acts on
/// `H^1(F_v* (x) F_v*) (x) V* (x) V*` by the product of the flips of both
/// factors, giving trace `-kappa * m * (h^1 S^2 - h^1 L^2)`, and
/// `h^1 S^2 - h^1 L^2 = r (g - 1) + duality`.
pub fn h1ad_total_from_quiver(spec: &DecompositionSpec) -> Result<u64> {
    let (q, alpha) = build_local_quiver(spec)?;
    let rep: i128 = q
        .arrows()
        .iter()
        .map(|a| (alpha.get(a.src) * alpha.get(a.dst)) as i128)
        .sum();
    let kappa: i128 = match spec.flavor {
        Flavor::Orthogonal => 1,
        Flavor::Symplectic => -1,
    };
    let g1 = spec.g1() as i128;
    let mut trace = 0i128;
    for n in nodes(spec) {
        let s = &spec.summands[n.summand];
        let diff = s.rank as i128 * g1 + s.duality() as i128;
        trace -= kappa * s.mult as i128 * diff;
    }
    let twice = rep + trace;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Ok((twice / 2) as u64)
}

/// Number of points over an orthogonal point in the moduli of special
/// orthogonal bundles: 2 when every orthogonal summand has even rank, else 1.
pub fn fiber_cardinality(spec: &DecompositionSpec) -> Result<u8> {
    spec.validate()?;
    if spec.flavor != Flavor::Orthogonal {
        return Err(Error::InvalidSpec("fiber cardinality needs the orthogonal flavor".into()));
    }
    if spec.total_rank() % 2 == 1 {
        return Ok(1);
    }
    let all_even = spec
        .summands
        .iter()
        .filter(|s| s.kind == SummandKind::OrthogonalStable)
        .all(|s| s.rank % 2 == 0);
    Ok(if all_even { 2 } else { 1 })
}

/// Whether a value is fixed by a closed form quoted from the literature or
/// computed by this crate's own pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Anchored,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeled<T> {
    pub value: T,
    pub provenance: Provenance,
}

impl<T> Labeled<T> {
    fn new(value: T, provenance: Provenance) -> Self {
        Self { value, provenance }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalModelReport {
    pub spec: DecompositionSpec,
    pub total_rank: usize,
    pub ext: ExtDimensions,
    pub h1ad: Inventory,
    /// The same total computed from the Ext-quiver.
    pub h1ad_total_quiver: u64,
    pub hilbert_series: Option<Labeled<HilbertSeries>>,
    pub multiplicity: Option<Labeled<BigNum>>,
    pub tangent_dim: Option<Labeled<u64>>,
    /// Degree-one coefficient of the regraded series, when it is defined.
    pub tangent_dim_series: Option<u64>,
    pub fiber_cardinality: Option<Labeled<u8>>,
    /// Quantities declined for this configuration, with reasons.
    pub unsupported: Vec<String>,
}

impl LocalModelReport {
    /// True when the two inventory totals agree and, where both exist, the
    /// tangent dimension matches the series.
    pub fn consistent(&self) -> bool {
        self.h1ad.total == self.h1ad_total_quiver
            && match (&self.tangent_dim, self.tangent_dim_series) {
                (Some(t), Some(s)) => t.value == s,
                _ => true,
            }
    }
}

fn stable_orthogonal_count(spec: &DecompositionSpec) -> Option<usize> {
    let ok = spec.flavor == Flavor::Orthogonal
        && spec
            .summands
            .iter()
            .all(|s| s.kind == SummandKind::OrthogonalStable && s.mult == 1);
    ok.then_some(spec.summands.len())
}

/// Full report. Quantities outside the supported cases are left empty and
/// listed in `unsupported`; other errors propagate.
pub fn local_model_report(spec: &DecompositionSpec) -> Result<LocalModelReport> {
    let ext = ext_dimensions(spec)?;
    let h1ad = h1ad_inventory(spec)?;
    let h1ad_total_quiver = h1ad_total_from_quiver(spec)?;
    let mut unsupported = Vec::new();
    let stable_n = stable_orthogonal_count(spec);

    let mut keep = |name: &str, e: Error| -> Result<()> {
        match e {
            Error::UnsupportedConfiguration(msg) => {
                unsupported.push(format!("{name}: {msg}"));
                Ok(())
            }
            e => Err(e),
        }
    };

    let hilbert = match hilbert_series(spec) {
        Ok(h) => Some(Labeled::new(h, Provenance::Derived)),
        Err(e) => {
            keep("hilbert_series", e)?;
            None
        }
    };
    let multiplicity = match multiplicity(spec) {
        Ok(m) => {
            let p = match stable_n {
                Some(2..=4) => Provenance::Anchored,
                _ => Provenance::Derived,
            };
            Some(Labeled::new(m, p))
        }
        Err(e) => {
            keep("multiplicity", e)?;
            None
        }
    };
    let tangent = match tangent_dim(spec) {
        Ok(t) => {
            let p = if stable_n == Some(2) {
                Provenance::Anchored
            } else {
                Provenance::Derived
            };
            Some(Labeled::new(t, p))
        }
        Err(e) => {
            keep("tangent_dim", e)?;
            None
        }
    };
    let tangent_dim_series = hilbert.as_ref().and_then(|h| h.value.regraded_degree_one());
    let fiber = match spec.flavor {
        Flavor::Orthogonal => Some(Labeled::new(fiber_cardinality(spec)?, Provenance::Anchored)),
        Flavor::Symplectic => None,
    };
    Ok(LocalModelReport {
        spec: spec.clone(),
        total_rank: spec.total_rank(),
        ext,
        h1ad,
        h1ad_total_quiver,
        hilbert_series: hilbert,
        multiplicity,
        tangent_dim: tangent,
        tangent_dim_series,
        fiber_cardinality: fiber,
        unsupported,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orth(ranks: &[usize]) -> Vec<SummandSpec> {
        ranks
            .iter()
            .map(|&r| SummandSpec::new(SummandKind::OrthogonalStable, r, 1))
            .collect()
    }

    #[test]
    fn ext_examples() {
        let e = ext_dimensions(&DecompositionSpec::orthogonal(2, orth(&[1, 2]))).unwrap();
        assert_eq!(e.ext.dims[0][1], 2);
        assert_eq!(e.ext.dims[1][1], 5);
        assert_eq!((e.form_split[1].sym, e.form_split[1].alt), (4, 1));
        let e = ext_dimensions(&DecompositionSpec::orthogonal(3, orth(&[1]))).unwrap();
        assert_eq!(e.form_split[0].alt, 0);
        let sp = DecompositionSpec::orthogonal(2, vec![SummandSpec::new(SummandKind::SymplecticStable, 2, 2)]);
        let e = ext_dimensions(&sp).unwrap();
        assert_eq!((e.form_split[0].sym, e.form_split[0].alt), (3, 2));
    }

    #[test]
    fn validation() {
        let bad = |s: DecompositionSpec| assert!(matches!(s.validate(), Err(Error::InvalidSpec(_))));
        bad(DecompositionSpec::orthogonal(1, orth(&[1])));
        bad(DecompositionSpec::orthogonal(2, vec![]));
        bad(DecompositionSpec::orthogonal(2, orth(&[0])));
        bad(DecompositionSpec::orthogonal(
            2,
            vec![SummandSpec::new(SummandKind::SymplecticStable, 3, 2)],
        ));
        bad(DecompositionSpec::orthogonal(
            2,
            vec![SummandSpec::new(SummandKind::SymplecticStable, 2, 1)],
        ));
        bad(DecompositionSpec::new(
            2,
            Flavor::Symplectic,
            vec![SummandSpec::new(SummandKind::OrthogonalStable, 1, 1)],
        ));
        DecompositionSpec::new(
            2,
            Flavor::Symplectic,
            vec![SummandSpec::new(SummandKind::SymplecticStable, 2, 1)],
        )
        .validate()
        .unwrap();
    }

    #[test]
    fn local_quiver_shapes() {
        let (q, a) = build_local_quiver(&DecompositionSpec::orthogonal(
            2,
            vec![SummandSpec::new(SummandKind::OrthogonalStable, 1, 2)],
        ))
        .unwrap();
        assert_eq!(q.vertices().len(), 1);
        assert_eq!(q.kind(0), VertexKind::Orthogonal);
        assert_eq!(a.as_slice(), &[2]);
        assert_eq!(q.arrows().len(), 2);

        let (q, a) = build_local_quiver(&DecompositionSpec::orthogonal(
            2,
            vec![SummandSpec::new(SummandKind::NonSelfDualPair, 1, 1)],
        ))
        .unwrap();
        assert_eq!(q.vertices().len(), 2);
        assert_eq!(a.as_slice(), &[1, 1]);
        let u = q.vertex("v1").unwrap();
        let us = q.vertex("v1*").unwrap();
        assert_eq!(q.sigma(u), us);
        let count = |s, d| q.arrows().iter().filter(|x| x.src == s && x.dst == d).count();
        assert_eq!((count(u, u), count(us, us), count(u, us), count(us, u)), (2, 2, 1, 1));

        let (q, _) = build_local_quiver(&DecompositionSpec::orthogonal(3, orth(&[1, 2]))).unwrap();
        assert_eq!(q.arrows().iter().filter(|x| x.src != x.dst).count(), 8);
    }

    #[test]
    fn inventory_examples() {
        let spec = DecompositionSpec::orthogonal(2, orth(&[1, 2]));
        let inv = h1ad_inventory(&spec).unwrap();
        assert_eq!(inv.total, 3);
        assert_eq!(h1ad_total_from_quiver(&spec).unwrap(), 3);

        let spec = DecompositionSpec::orthogonal(2, vec![SummandSpec::new(SummandKind::OrthogonalStable, 1, 2)]);
        assert_eq!(h1ad_inventory(&spec).unwrap().total, 2);

        let spec = DecompositionSpec::orthogonal(2, vec![SummandSpec::new(SummandKind::NonSelfDualPair, 1, 1)]);
        let inv = h1ad_inventory(&spec).unwrap();
        assert_eq!(inv.entries.len(), 5);
        assert_eq!(inv.entries[0].dim, 2);
        assert_eq!(inv.total, 2);
    }

    #[test]
    fn inventory_routes_agree_on_mixed_specs() {
        use SummandKind::*;
        for flavor in [Flavor::Orthogonal, Flavor::Symplectic] {
            for g in 2..=4 {
                for r in 1..=3 {
                    for m in 1..=3 {
                        let mut summands = vec![SummandSpec::new(NonSelfDualPair, r, m)];
                        let sym_m = if flavor == Flavor::Orthogonal { m } else { 2 * m };
                        let orth_m = if flavor == Flavor::Orthogonal { 2 * m } else { m };
                        summands.push(SummandSpec::new(OrthogonalStable, r, sym_m));
                        summands.push(SummandSpec::new(SymplecticStable, 2 * r, orth_m));
                        let spec = DecompositionSpec::new(g, flavor, summands);
                        assert_eq!(
                            h1ad_inventory(&spec).unwrap().total,
                            h1ad_total_from_quiver(&spec).unwrap(),
                            "{spec:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn self_dual_diagonal_matches_riemann_roch() {
        // A single summand: h^1 of Ad = dim(Ad) (g - 1) + dim of the isotropy
        // Lie algebra.
        for g in 2..=4 {
            for r in 1..=3 {
                for m in 1..=4 {
                    let spec = DecompositionSpec::orthogonal(g, vec![SummandSpec::new(SummandKind::OrthogonalStable, r, m)]);
                    let n = (r * m) as u64;
                    let expect = n * (n - 1) / 2 * (g as u64 - 1) + alt2(m as u64);
                    assert_eq!(h1ad_inventory(&spec).unwrap().total, expect);
                }
            }
        }
    }

    #[test]
    fn symplectic_flavor_swaps_squares() {
        let spec = DecompositionSpec::new(
            2,
            Flavor::Symplectic,
            vec![SummandSpec::new(SummandKind::SymplecticStable, 2, 1)],
        );
        let inv = h1ad_inventory(&spec).unwrap();
        assert_eq!(inv.entries[0].label, "H1(S2 F1*) x S2(V1*)");
        assert_eq!(inv.total, 3);
        assert_eq!(h1ad_total_from_quiver(&spec).unwrap(), 3);
    }

    #[test]
    fn fiber_examples() {
        assert_eq!(fiber_cardinality(&DecompositionSpec::orthogonal(2, orth(&[2, 2]))).unwrap(), 2);
        assert_eq!(fiber_cardinality(&DecompositionSpec::orthogonal(5, orth(&[2, 2]))).unwrap(), 2);
        assert_eq!(fiber_cardinality(&DecompositionSpec::orthogonal(2, orth(&[1, 2]))).unwrap(), 1);
        assert_eq!(fiber_cardinality(&DecompositionSpec::orthogonal(2, orth(&[3]))).unwrap(), 1);
        let sp = DecompositionSpec::new(
            2,
            Flavor::Symplectic,
            vec![SummandSpec::new(SummandKind::SymplecticStable, 2, 1)],
        );
        assert!(matches!(fiber_cardinality(&sp), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn report_labels_and_declines() {
        let r = local_model_report(&DecompositionSpec::orthogonal(2, orth(&[1, 2]))).unwrap();
        assert!(r.consistent());
        assert_eq!(r.multiplicity.as_ref().unwrap().value.to_string(), "2");
        assert_eq!(r.multiplicity.as_ref().unwrap().provenance, Provenance::Anchored);
        assert_eq!(r.tangent_dim.as_ref().unwrap().value, 4);
        assert_eq!(r.tangent_dim_series, Some(4));
        assert!(r.unsupported.is_empty());

        let mixed = DecompositionSpec::orthogonal(2, vec![SummandSpec::new(SummandKind::OrthogonalStable, 1, 2)]);
        let r = local_model_report(&mixed).unwrap();
        assert!(r.multiplicity.is_none() && r.hilbert_series.is_none());
        assert_eq!(r.unsupported.len(), 3);

        let json = serde_json::to_string(&r).unwrap();
        let back: LocalModelReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn spec_json() {
        let s: DecompositionSpec = serde_json::from_str(
            r#"{"genus": 2, "flavor": "orthogonal", "summands": [{"kind": "orthogonal", "rank": 1, "mult": 1}, {"kind": "pair", "rank": 2, "mult": 1}]}"#,
        )
        .unwrap();
        assert_eq!(s.summands[1].kind, SummandKind::NonSelfDualPair);
        let s: DecompositionSpec =
            serde_json::from_str(r#"{"genus": 3, "summands": [{"kind": "orthogonal", "rank": 2, "mult": 1}]}"#).unwrap();
        assert_eq!(s.flavor, Flavor::Orthogonal);
    }
}
