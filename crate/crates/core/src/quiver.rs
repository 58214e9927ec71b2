//! Symmetric quivers: vertices carrying orthogonal, symplectic or paired
//! general-linear structure, admissible dimension vectors, per-vertex Gram
//! blocks, and the doubled quiver with its star arrows and sign map.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

/// Class tag of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Orthogonal,
    Symplectic,
    #[serde(rename = "gl")]
    GlPair,
}

impl VertexKind {
    pub const ALL: [VertexKind; 3] = [VertexKind::Orthogonal, VertexKind::Symplectic, VertexKind::GlPair];
}

/// Class of a vertex. Paired vertices know their partner and whether they
/// are the starred member of the couple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Orthogonal,
    Symplectic,
    GlPair { partner: usize, starred: bool },
}

impl VertexClass {
    pub fn kind(&self) -> VertexKind {
        match self {
            VertexClass::Orthogonal => VertexKind::Orthogonal,
            VertexClass::Symplectic => VertexKind::Symplectic,
            VertexClass::GlPair { .. } => VertexKind::GlPair,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub class: VertexClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A quiver whose vertices carry classical-group structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymQuiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

/// Builder for [`SymQuiver`]; identifiers are checked in [`build`](Self::build).
#[derive(Clone, Debug, Default)]
pub struct SymQuiverBuilder {
    vertices: Vec<(String, VertexKind)>,
    pairs: Vec<(String, String)>,
    arrows: Vec<(String, String, String)>,
}

impl SymQuiverBuilder {
    pub fn orthogonal(mut self, id: &str) -> Self {
        self.vertices.push((id.to_string(), VertexKind::Orthogonal));
        self
    }

    pub fn symplectic(mut self, id: &str) -> Self {
        self.vertices.push((id.to_string(), VertexKind::Symplectic));
        self
    }

    /// Adds the couple `(u, u*)`; `u` comes first in the canonical order.
    pub fn gl_pair(mut self, u: &str, u_star: &str) -> Self {
        self.vertices.push((u.to_string(), VertexKind::GlPair));
        self.vertices.push((u_star.to_string(), VertexKind::GlPair));
        self.pairs.push((u.to_string(), u_star.to_string()));
        self
    }

    pub fn vertex(mut self, id: &str, kind: VertexKind) -> Self {
        self.vertices.push((id.to_string(), kind));
        self
    }

    pub fn pair(mut self, u: &str, u_star: &str) -> Self {
        self.pairs.push((u.to_string(), u_star.to_string()));
        self
    }

    pub fn arrow(mut self, id: &str, src: &str, dst: &str) -> Self {
        self.arrows.push((id.to_string(), src.to_string(), dst.to_string()));
        self
    }

    pub fn build(self) -> Result<SymQuiver> {
        let mut vertex_index = HashMap::new();
        for (i, (id, _)) in self.vertices.iter().enumerate() {
            if vertex_index.insert(id.clone(), i).is_some() {
                return Err(Error::MalformedQuiver(format!("duplicate vertex `{id}`")));
            }
        }
        let lookup = |id: &str| {
            vertex_index
                .get(id)
                .copied()
                .ok_or_else(|| Error::MalformedQuiver(format!("unknown vertex `{id}`")))
        };

        let mut classes: Vec<Option<VertexClass>> = self
            .vertices
            .iter()
            .map(|(_, k)| match k {
                VertexKind::Orthogonal => Some(VertexClass::Orthogonal),
                VertexKind::Symplectic => Some(VertexClass::Symplectic),
                VertexKind::GlPair => None,
            })
            .collect();
        for (u, us) in &self.pairs {
            let (a, b) = (lookup(u)?, lookup(us)?);
            if a == b {
                return Err(Error::MalformedQuiver(format!("vertex `{u}` paired with itself")));
            }
            for (v, partner, starred) in [(a, b, false), (b, a, true)] {
                if self.vertices[v].1 != VertexKind::GlPair {
                    return Err(Error::MalformedQuiver(format!(
                        "vertex `{}` is paired but not of gl class",
                        self.vertices[v].0
                    )));
                }
                if classes[v].is_some() {
                    return Err(Error::MalformedQuiver(format!(
                        "vertex `{}` occurs in more than one pair",
                        self.vertices[v].0
                    )));
                }
                classes[v] = Some(VertexClass::GlPair { partner, starred });
            }
        }
        let vertices = self
            .vertices
            .iter()
            .zip(classes)
            .map(|((id, _), class)| {
                class
                    .map(|class| Vertex { id: id.clone(), class })
                    .ok_or_else(|| Error::MalformedQuiver(format!("gl vertex `{id}` has no partner")))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut arrow_index = HashMap::new();
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (i, (id, s, d)) in self.arrows.iter().enumerate() {
            if arrow_index.insert(id.clone(), i).is_some() {
                return Err(Error::MalformedQuiver(format!("duplicate arrow `{id}`")));
            }
            arrows.push(Arrow {
                id: id.clone(),
                src: lookup(s)?,
                dst: lookup(d)?,
            });
        }
        Ok(SymQuiver {
            vertices,
            arrows,
            vertex_index,
            arrow_index,
        })
    }
}

impl SymQuiver {
    pub fn builder() -> SymQuiverBuilder {
        SymQuiverBuilder::default()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn arrow(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.vertices[v].class.kind()
    }

    /// The vertex involution: fixes orthogonal and symplectic vertices,
    /// swaps the members of each pair.
    pub fn sigma(&self, v: usize) -> usize {
        match self.vertices[v].class {
            VertexClass::GlPair { partner, .. } => partner,
            _ => v,
        }
    }

    /// Orthogonal vertices, then symplectic, then couples `u, u*`, each in
    /// input order.
    pub fn canonical_order(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut order: Vec<usize> = (0..n)
            .filter(|&v| self.kind(v) == VertexKind::Orthogonal)
            .collect();
        order.extend((0..n).filter(|&v| self.kind(v) == VertexKind::Symplectic));
        for v in 0..n {
            if let VertexClass::GlPair { partner, starred: false } = self.vertices[v].class {
                order.push(v);
                order.push(partner);
            }
        }
        order
    }
}

/// Dimension vector indexed like the quiver's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimVector(Vec<usize>);

impl DimVector {
    /// Wraps raw per-vertex dimensions without checking admissibility.
    pub fn from_raw(dims: Vec<usize>) -> Self {
        Self(dims)
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_map(&self, q: &SymQuiver) -> BTreeMap<String, usize> {
        q.vertices()
            .iter()
            .zip(&self.0)
            .map(|(v, &d)| (v.id.clone(), d))
            .collect()
    }
}

/// Checks that `dims` names every vertex and is admissible: even at
/// symplectic vertices, equal across each pair.
pub fn validate_dimension(q: &SymQuiver, dims: &BTreeMap<String, usize>) -> Result<DimVector> {
    let raw = q
        .vertices()
        .iter()
        .map(|v| dims.get(&v.id).copied().ok_or_else(|| Error::MissingVertex(v.id.clone())))
        .collect::<Result<Vec<_>>>()?;
    let alpha = DimVector(raw);
    check_admissible(q, &alpha)?;
    Ok(alpha)
}

pub fn check_admissible(q: &SymQuiver, alpha: &DimVector) -> Result<()> {
    if alpha.0.len() != q.vertices().len() {
        return Err(Error::ShapeMismatch(format!(
            "{} dimensions for {} vertices",
            alpha.0.len(),
            q.vertices().len()
        )));
    }
    for (v, vert) in q.vertices().iter().enumerate() {
        let d = alpha.get(v);
        match vert.class {
            VertexClass::Symplectic if d % 2 == 1 => {
                return Err(Error::OddSymplecticDim(vert.id.clone(), d));
            }
            VertexClass::GlPair { partner, starred: false } if alpha.get(partner) != d => {
                return Err(Error::UnbalancedPair(
                    vert.id.clone(),
                    q.vertices()[partner].id.clone(),
                    d,
                    alpha.get(partner),
                ));
            }
            _ => {}
        }
    }
    Ok(())
}

/// Gram structure of the total space.
///
/// `block(v)` is the square block `G_v` through which the form pairs `V_v`
/// with `V_sigma(v)`: identity at orthogonal vertices, the standard `J` at
/// symplectic ones, identity on each side of a couple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormAssignment {
    blocks: Vec<RatMatrix>,
    order: Vec<usize>,
    offsets: Vec<usize>,
    size: usize,
}

impl FormAssignment {
    pub fn block(&self, v: usize) -> &RatMatrix {
        &self.blocks[v]
    }

    /// Offset of vertex `v` in the canonical ordering of the total space.
    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The assembled matrix of the form on the total space.
    pub fn assembled(&self, q: &SymQuiver) -> RatMatrix {
        let mut phi = RatMatrix::zeros(self.size, self.size);
        for &v in &self.order {
            let row = self.offsets[v];
            let col = self.offsets[q.sigma(v)];
            phi.set_block(row, col, &self.blocks[v]);
        }
        phi
    }
}

/// Per-vertex Gram blocks for an admissible dimension vector.
pub fn gram_matrix(q: &SymQuiver, alpha: &DimVector) -> Result<FormAssignment> {
    check_admissible(q, alpha)?;
    let blocks = (0..q.vertices().len())
        .map(|v| {
            let d = alpha.get(v);
            match q.kind(v) {
                VertexKind::Symplectic => RatMatrix::standard_symplectic(d),
                _ => RatMatrix::identity(d),
            }
        })
        .collect();
    let order = q.canonical_order();
    let mut offsets = vec![0; q.vertices().len()];
    let mut acc = 0;
    for &v in &order {
        offsets[v] = acc;
        acc += alpha.get(v);
    }
    Ok(FormAssignment {
        blocks,
        order,
        offsets,
        size: acc,
    })
}

/// Sign attached to an arrow by the classes of its endpoints: `-1` exactly
/// for arrows from an orthogonal or paired vertex into a symplectic one.
pub fn sign_rule(src: VertexKind, dst: VertexKind) -> i8 {
    match (src, dst) {
        (VertexKind::Orthogonal | VertexKind::GlPair, VertexKind::Symplectic) => -1,
        _ => 1,
    }
}

/// The quiver together with one star arrow `a*: sigma(v') -> sigma(v)` per
/// arrow `a: v -> v'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledQuiver {
    base: SymQuiver,
    star_ends: Vec<(usize, usize)>,
    signs: Vec<i8>,
}

pub fn build_doubled(q: &SymQuiver) -> DoubledQuiver {
    let star_ends = q
        .arrows()
        .iter()
        .map(|a| (q.sigma(a.dst), q.sigma(a.src)))
        .collect();
    let signs = q
        .arrows()
        .iter()
        .map(|a| sign_rule(q.kind(a.src), q.kind(a.dst)))
        .collect();
    DoubledQuiver {
        base: q.clone(),
        star_ends,
        signs,
    }
}

impl DoubledQuiver {
    pub fn base(&self) -> &SymQuiver {
        &self.base
    }

    pub fn arrow_count(&self) -> usize {
        self.base.arrows().len()
    }

    /// Endpoints of arrow `a` (or of `a*` when `star`).
    pub fn ends(&self, arrow: usize, star: bool) -> (usize, usize) {
        if star {
            self.star_ends[arrow]
        } else {
            let a = &self.base.arrows()[arrow];
            (a.src, a.dst)
        }
    }

    pub fn sign(&self, arrow: usize) -> i8 {
        self.signs[arrow]
    }

    /// Endpoints obtained by starring the star arrow of `arrow` once more.
    pub fn star_of_star_ends(&self, arrow: usize) -> (usize, usize) {
        let (s, d) = self.star_ends[arrow];
        (self.base.sigma(d), self.base.sigma(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn dims(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn admissibility() {
        let q = SymQuiver::builder().symplectic("t").build().unwrap();
        assert!(validate_dimension(&q, &dims(&[("t", 2)])).is_ok());
        assert_eq!(
            validate_dimension(&q, &dims(&[("t", 3)])),
            Err(Error::OddSymplecticDim("t".into(), 3))
        );
        assert_eq!(validate_dimension(&q, &dims(&[])), Err(Error::MissingVertex("t".into())));
        let q = SymQuiver::builder().gl_pair("u", "u*").build().unwrap();
        assert!(matches!(
            validate_dimension(&q, &dims(&[("u", 2), ("u*", 3)])),
            Err(Error::UnbalancedPair(..))
        ));
    }

    #[test]
    fn malformed_inputs() {
        assert!(SymQuiver::builder().orthogonal("s").orthogonal("s").build().is_err());
        assert!(SymQuiver::builder().orthogonal("s").arrow("a", "s", "x").build().is_err());
        assert!(SymQuiver::builder().vertex("u", VertexKind::GlPair).build().is_err());
        assert!(SymQuiver::builder().orthogonal("s").orthogonal("r").pair("s", "r").build().is_err());
    }

    #[test]
    fn doubled_loop_and_signs() {
        let q = SymQuiver::builder().orthogonal("s").arrow("a", "s", "s").build().unwrap();
        let dq = build_doubled(&q);
        assert_eq!(dq.ends(0, true), (0, 0));
        assert_eq!(dq.sign(0), 1);

        let q = SymQuiver::builder()
            .orthogonal("s")
            .symplectic("t")
            .arrow("a", "s", "t")
            .build()
            .unwrap();
        let dq = build_doubled(&q);
        assert_eq!(dq.ends(0, true), (1, 0));
        assert_eq!(dq.sign(0), -1);

        let q = SymQuiver::builder()
            .orthogonal("s")
            .gl_pair("u", "u*")
            .arrow("a", "u", "s")
            .build()
            .unwrap();
        let dq = build_doubled(&q);
        let (u, s, us) = (q.vertex("u").unwrap(), q.vertex("s").unwrap(), q.vertex("u*").unwrap());
        assert_eq!(dq.ends(0, true), (s, us));
        assert_eq!(dq.sign(0), 1);
        assert_eq!(dq.star_of_star_ends(0), (u, s));
    }

    #[test]
    fn sign_rule_exhaustive() {
        let mut negative = vec![];
        for s in VertexKind::ALL {
            for d in VertexKind::ALL {
                if sign_rule(s, d) == -1 {
                    negative.push((s, d));
                }
            }
        }
        assert_eq!(
            negative,
            vec![
                (VertexKind::Orthogonal, VertexKind::Symplectic),
                (VertexKind::GlPair, VertexKind::Symplectic)
            ]
        );
    }

    #[test]
    fn gram_examples() {
        let q = SymQuiver::builder().orthogonal("s").build().unwrap();
        let f = gram_matrix(&q, &DimVector::from_raw(vec![3])).unwrap();
        assert_eq!(f.assembled(&q), RatMatrix::identity(3));

        let q = SymQuiver::builder().symplectic("t").build().unwrap();
        let f = gram_matrix(&q, &DimVector::from_raw(vec![2])).unwrap();
        assert_eq!(f.assembled(&q), RatMatrix::from_i64(2, 2, &[0, 1, -1, 0]));

        let q = SymQuiver::builder().gl_pair("u", "u*").build().unwrap();
        let f = gram_matrix(&q, &DimVector::from_raw(vec![1, 1])).unwrap();
        assert_eq!(f.assembled(&q), RatMatrix::from_i64(2, 2, &[0, 1, 1, 0]));
    }

    #[test]
    fn gram_block_symmetries_and_size() {
        // inputs deliberately out of canonical order
        let q = SymQuiver::builder()
            .gl_pair("u", "u*")
            .symplectic("t")
            .orthogonal("s")
            .build()
            .unwrap();
        let alpha = validate_dimension(&q, &dims(&[("u", 2), ("u*", 2), ("t", 4), ("s", 3)])).unwrap();
        let f = gram_matrix(&q, &alpha).unwrap();
        assert_eq!(f.size(), 3 + 4 + 2 * 2);
        assert_eq!(f.order(), &[3, 2, 0, 1]);
        let phi = f.assembled(&q);
        let t = phi.transpose();
        let sq = &phi * &phi;
        let (s0, t0, u0) = (f.offset(3), f.offset(2), f.offset(0));
        // orthogonal block
        assert_eq!(phi.block(s0, s0, 3, 3), t.block(s0, s0, 3, 3));
        assert_eq!(sq.block(s0, s0, 3, 3), RatMatrix::identity(3));
        // symplectic block
        assert_eq!(phi.block(t0, t0, 4, 4), -&t.block(t0, t0, 4, 4));
        assert_eq!(sq.block(t0, t0, 4, 4), -&RatMatrix::identity(4));
        // hyperbolic block
        assert_eq!(phi.block(u0, u0, 4, 4), t.block(u0, u0, 4, 4));
        assert_eq!(sq.block(u0, u0, 4, 4), RatMatrix::identity(4));
        assert_eq!(phi.det().clone() * phi.det(), rat(1));
    }

    #[test]
    fn star_is_an_involution_on_arrows() {
        let q = SymQuiver::builder()
            .orthogonal("s")
            .symplectic("t")
            .gl_pair("u", "v")
            .arrow("a", "s", "t")
            .arrow("b", "u", "v")
            .arrow("c", "v", "t")
            .arrow("d", "u", "u")
            .build()
            .unwrap();
        let dq = build_doubled(&q);
        for a in 0..dq.arrow_count() {
            assert_eq!(dq.star_of_star_ends(a), dq.ends(a, false));
        }
    }
}
