//! Exact evaluation of trace words on representations, the group action,
//! and randomized invariance checks.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{
    adjoint, parse_rational, rat, sample_gl, sample_orthogonal_full, sample_symplectic, RatMatrix, Rational,
};
use crate::quiver::{build_doubled, gram_matrix, DimVector, DoubledQuiver, FormAssignment, SymQuiver, VertexClass};
use crate::rng;
use crate::words::{SignedArrow, TraceWord};

/// One linear map per arrow; `maps[a]` is `dim(dst) x dim(src)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    maps: Vec<RatMatrix>,
}

impl Representation {
    pub fn new(q: &SymQuiver, alpha: &DimVector, maps: Vec<RatMatrix>) -> Result<Self> {
        if maps.len() != q.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} maps for {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            let want = (alpha.get(a.dst), alpha.get(a.src));
            if m.shape() != want {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.id,
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self { maps })
    }

    pub fn zero(q: &SymQuiver, alpha: &DimVector) -> Self {
        Self {
            maps: q
                .arrows()
                .iter()
                .map(|a| RatMatrix::zeros(alpha.get(a.dst), alpha.get(a.src)))
                .collect(),
        }
    }

    /// Integer entries drawn uniformly from `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(q: &SymQuiver, alpha: &DimVector, rng: &mut R, bound: i64) -> Self {
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (alpha.get(a.dst), alpha.get(a.src));
                let data = (0..r * c).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
                RatMatrix::from_vec(r, c, data).expect("sized above")
            })
            .collect();
        Self { maps }
    }

    pub fn map(&self, arrow: usize) -> &RatMatrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    /// Reads `{"arrow id": [["1", "-2/3"], ...], ...}` (row-major rows).
    pub fn from_json(q: &SymQuiver, alpha: &DimVector, value: &serde_json::Value) -> Result<Self> {
        let parsed: BTreeMap<String, Vec<Vec<String>>> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        for id in parsed.keys() {
            if q.arrow(id).is_none() {
                return Err(Error::Parse(format!("unknown arrow `{id}`")));
            }
        }
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let rows = parsed
                    .get(&a.id)
                    .ok_or_else(|| Error::Parse(format!("no matrix for arrow `{}`", a.id)))?;
                let (r, c) = (alpha.get(a.dst), alpha.get(a.src));
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(Error::ShapeMismatch(format!("arrow `{}` needs a {r}x{c} matrix", a.id)));
                }
                let data = rows
                    .iter()
                    .flatten()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                RatMatrix::from_vec(r, c, data)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, alpha, maps)
    }

    pub fn to_json(&self, q: &SymQuiver) -> serde_json::Value {
        let obj: BTreeMap<String, Vec<Vec<String>>> = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| {
                let rows = (0..m.rows())
                    .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
                    .collect();
                (a.id.clone(), rows)
            })
            .collect();
        serde_json::to_value(obj).expect("string map")
    }
}

/// An element of the structure group: one block per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    blocks: Vec<RatMatrix>,
}

impl GroupElement {
    pub fn identity(q: &SymQuiver, alpha: &DimVector) -> Self {
        Self {
            blocks: (0..q.vertices().len()).map(|v| RatMatrix::identity(alpha.get(v))).collect(),
        }
    }

    /// Random element: O(n) covering both components at orthogonal vertices,
    /// Sp at symplectic ones, `(P, P^-T)` on each couple.
    pub fn random<R: Rng + ?Sized>(q: &SymQuiver, alpha: &DimVector, rng: &mut R) -> Result<Self> {
        let mut blocks: Vec<Option<RatMatrix>> = vec![None; q.vertices().len()];
        for v in q.canonical_order() {
            let d = alpha.get(v);
            let g = match q.vertices()[v].class {
                VertexClass::Orthogonal => sample_orthogonal_full(d, rng)?,
                VertexClass::Symplectic => sample_symplectic(d, rng)?,
                VertexClass::GlPair { starred: false, .. } => sample_gl(d, rng)?,
                VertexClass::GlPair { partner, starred: true } => {
                    let p = blocks[partner].as_ref().expect("partner comes first");
                    p.inverse().expect("invertible").transpose()
                }
            };
            blocks[v] = Some(g);
        }
        Ok(Self {
            blocks: blocks.into_iter().map(|b| b.expect("every vertex visited")).collect(),
        })
    }

    pub fn from_blocks(q: &SymQuiver, alpha: &DimVector, blocks: Vec<RatMatrix>) -> Result<Self> {
        let g = Self { blocks };
        g.check(q, &gram_matrix(q, alpha)?)?;
        Ok(g)
    }

    pub fn block(&self, v: usize) -> &RatMatrix {
        &self.blocks[v]
    }

    /// Verifies `g_v^T G_v g_sigma(v) = G_v` at every vertex.
    pub fn check(&self, q: &SymQuiver, forms: &FormAssignment) -> Result<()> {
        if self.blocks.len() != q.vertices().len() {
            return Err(Error::ShapeMismatch("one block per vertex expected".into()));
        }
        for (v, vert) in q.vertices().iter().enumerate() {
            let g = &self.blocks[v];
            let form = forms.block(v);
            if g.shape() != form.shape() {
                return Err(Error::ShapeMismatch(format!("block at `{}` has the wrong size", vert.id)));
            }
            let lhs = &(&g.transpose() * form) * &self.blocks[q.sigma(v)];
            if &lhs != form {
                return Err(Error::NotInGroup(vert.id.clone()));
            }
        }
        Ok(())
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            blocks: self.blocks.iter().map(|b| b.inverse().expect("group elements are invertible")).collect(),
        }
    }
}

/// `(g . rho)_a = g_dst rho_a g_src^-1`.
pub fn act(q: &SymQuiver, g: &GroupElement, rho: &Representation) -> Representation {
    let inv = g.inverse();
    Representation {
        maps: q
            .arrows()
            .iter()
            .zip(&rho.maps)
            .map(|(a, f)| &(&g.blocks[a.dst] * f) * &inv.blocks[a.src])
            .collect(),
    }
}

/// How starred steps are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarMode {
    /// `eps(a) * G_src^-1 f^T G_dst`.
    #[default]
    Faithful,
    /// Plain transpose, ignoring the forms. Only meant as a negative control.
    TransposeOnly,
}

/// Evaluates words against the forms of one dimension vector.
#[derive(Clone, Debug)]
pub struct Evaluator<'a> {
    dq: &'a DoubledQuiver,
    forms: &'a FormAssignment,
    mode: StarMode,
}

impl<'a> Evaluator<'a> {
    pub fn new(dq: &'a DoubledQuiver, forms: &'a FormAssignment) -> Self {
        Self {
            dq,
            forms,
            mode: StarMode::Faithful,
        }
    }

    pub fn with_mode(mut self, mode: StarMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn step_matrix(&self, step: SignedArrow, rho: &Representation) -> Result<RatMatrix> {
        let f = rho.map(step.arrow);
        if !step.star {
            return Ok(f.clone());
        }
        match self.mode {
            StarMode::TransposeOnly => Ok(f.transpose()),
            StarMode::Faithful => {
                let a = &self.dq.base().arrows()[step.arrow];
                let adj = adjoint(f, self.forms.block(a.src), self.forms.block(a.dst))?;
                Ok(if self.dq.sign(step.arrow) < 0 { -&adj } else { adj })
            }
        }
    }

    /// `tr(F_p ... F_1)` for the word's steps `1..p`.
    pub fn evaluate(&self, w: &TraceWord, rho: &Representation) -> Result<Rational> {
        let mut steps = w.steps().iter();
        let first = steps.next().ok_or_else(|| Error::NotComposable("empty word".into()))?;
        let mut acc = self.step_matrix(*first, rho)?;
        for &s in steps {
            acc = self.step_matrix(s, rho)?.checked_mul(&acc)?;
        }
        if !acc.is_square() {
            return Err(Error::NotComposable("product is not square".into()));
        }
        Ok(acc.trace())
    }
}

/// Convenience wrapper building forms and the doubled quiver on the fly.
pub fn evaluate_word(q: &SymQuiver, alpha: &DimVector, w: &TraceWord, rho: &Representation) -> Result<Rational> {
    let forms = gram_matrix(q, alpha)?;
    let dq = build_doubled(q);
    Evaluator::new(&dq, &forms).evaluate(w, rho)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordInvariance {
    pub word: String,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub samples: usize,
    pub seed: u64,
    pub mode: StarMode,
    pub words: Vec<WordInvariance>,
    pub total_failures: usize,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.total_failures == 0
    }
}

/// Compares every word on `rho` and `g . rho` for `samples` independent
/// random pairs. Sample `k` uses its own stream, so the result does not
/// depend on thread count.
pub fn invariance_report(
    q: &SymQuiver,
    alpha: &DimVector,
    words: &[TraceWord],
    samples: usize,
    seed: u64,
    mode: StarMode,
) -> Result<InvarianceReport> {
    let forms = gram_matrix(q, alpha)?;
    let dq = build_doubled(q);
    let eval = Evaluator::new(&dq, &forms).with_mode(mode);
    let base = rng::derive_seed(seed, "invariance");
    let per_sample = (0..samples as u64)
        .into_par_iter()
        .map(|k| {
            let mut r = rng::stream(base, k);
            let rho = Representation::random(q, alpha, &mut r, crate::linalg::DEFAULT_ENTRY_BOUND);
            let g = GroupElement::random(q, alpha, &mut r)?;
            let moved = act(q, &g, &rho);
            words
                .iter()
                .map(|w| Ok(usize::from(eval.evaluate(w, &rho)? != eval.evaluate(w, &moved)?)))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut counts = vec![0usize; words.len()];
    for s in &per_sample {
        for (c, f) in counts.iter_mut().zip(s) {
            *c += f;
        }
    }
    Ok(InvarianceReport {
        samples,
        seed,
        mode,
        total_failures: counts.iter().sum(),
        words: words
            .iter()
            .zip(counts)
            .map(|(w, failures)| WordInvariance {
                word: w.display(q),
                failures,
            })
            .collect(),
    })
}

#[cfg(test)]
fn trace_power(m: &RatMatrix, k: usize) -> Rational {
    let mut acc = RatMatrix::identity(m.rows());
    for _ in 0..k {
        acc = &acc * m;
    }
    acc.trace()
}
