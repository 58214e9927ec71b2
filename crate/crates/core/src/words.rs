//! Trace words: closed walks in the doubled quiver, one per candidate
//! invariant `tr(f_p ... f_1)`.

use std::collections::BTreeSet;

use num::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluate::{Evaluator, Representation};
use crate::quiver::{build_doubled, gram_matrix, DimVector, DoubledQuiver, SymQuiver};
use crate::rng;

/// One step of a word: arrow `a`, or its star `a*` (the adjoint map).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedArrow {
    pub arrow: usize,
    pub star: bool,
}

impl SignedArrow {
    pub fn plain(arrow: usize) -> Self {
        Self { arrow, star: false }
    }

    pub fn starred(arrow: usize) -> Self {
        Self { arrow, star: true }
    }

    pub fn toggled(self) -> Self {
        Self {
            arrow: self.arrow,
            star: !self.star,
        }
    }
}

/// A nonempty composable cyclic sequence of steps. Step `i` is applied
/// before step `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceWord {
    steps: Vec<SignedArrow>,
}

impl TraceWord {
    pub fn new(dq: &DoubledQuiver, steps: Vec<SignedArrow>) -> Result<Self> {
        let w = Self { steps };
        w.check(dq)?;
        Ok(w)
    }

    pub fn steps(&self) -> &[SignedArrow] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn check(&self, dq: &DoubledQuiver) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::NotComposable("empty word".into()));
        }
        let n = self.steps.len();
        for (i, s) in self.steps.iter().enumerate() {
            if s.arrow >= dq.arrow_count() {
                return Err(Error::NotComposable(format!("unknown arrow index {}", s.arrow)));
            }
            let next = self.steps[(i + 1) % n];
            if next.arrow >= dq.arrow_count() {
                return Err(Error::NotComposable(format!("unknown arrow index {}", next.arrow)));
            }
            let (_, end) = dq.ends(s.arrow, s.star);
            let (start, _) = dq.ends(next.arrow, next.star);
            if end != start {
                return Err(Error::NotComposable(format!("step {i} ends where step {} does not start", (i + 1) % n)));
            }
        }
        Ok(())
    }

    /// Reverse the word and star every step: the word whose product is the
    /// adjoint of this one's, up to sign.
    pub fn adjoint_reversal(&self) -> TraceWord {
        TraceWord {
            steps: self.steps.iter().rev().map(|s| s.toggled()).collect(),
        }
    }

    pub fn rotated(&self, k: usize) -> TraceWord {
        let mut steps = self.steps.clone();
        steps.rotate_left(k % self.steps.len().max(1));
        TraceWord { steps }
    }

    /// Lexicographically least word among rotations of this word and of its
    /// adjoint reversal. Assumes composability.
    pub fn canonical(&self) -> TraceWord {
        let rev = self.adjoint_reversal();
        let n = self.steps.len();
        (0..n)
            .flat_map(|k| [self.rotated(k), rev.rotated(k)])
            .min()
            .expect("nonempty word")
    }
}

/// Canonical representative of `w`'s class.
pub fn canonicalize(dq: &DoubledQuiver, w: &TraceWord) -> Result<TraceWord> {
    w.check(dq)?;
    Ok(w.canonical())
}

/// All composable cyclic words of length `1..=max_len` in the doubled
/// quiver, one canonical representative per class, ordered by length and
/// then lexicographically.
pub fn enumerate_cycles(dq: &DoubledQuiver, max_len: usize) -> Vec<TraceWord> {
    if max_len == 0 {
        return Vec::new();
    }
    let nv = dq.base().vertices().len();
    let mut steps: Vec<SignedArrow> = (0..dq.arrow_count())
        .flat_map(|a| [SignedArrow::plain(a), SignedArrow::starred(a)])
        .collect();
    steps.sort();
    let mut out_steps: Vec<Vec<SignedArrow>> = vec![Vec::new(); nv];
    for &s in &steps {
        out_steps[dq.ends(s.arrow, s.star).0].push(s);
    }

    // A class always has a rotation starting at its least step, so only walks
    // whose first step is minimal need to be visited.
    let per_start: Vec<BTreeSet<TraceWord>> = steps
        .par_iter()
        .map(|&first| {
            let mut found = BTreeSet::new();
            let origin = dq.ends(first.arrow, first.star).0;
            let mut path = vec![first];
            walk(dq, &out_steps, origin, max_len, &mut path, &mut found);
            found
        })
        .collect();
    let mut all: BTreeSet<TraceWord> = BTreeSet::new();
    for set in per_start {
        all.extend(set);
    }
    let mut words: Vec<TraceWord> = all.into_iter().collect();
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    words
}

fn walk(
    dq: &DoubledQuiver,
    out_steps: &[Vec<SignedArrow>],
    origin: usize,
    max_len: usize,
    path: &mut Vec<SignedArrow>,
    found: &mut BTreeSet<TraceWord>,
) {
    let last = *path.last().unwrap();
    let here = dq.ends(last.arrow, last.star).1;
    if here == origin {
        found.insert(TraceWord { steps: path.clone() }.canonical());
    }
    if path.len() >= max_len {
        return;
    }
    let first = path[0];
    for &s in &out_steps[here] {
        if s < first {
            continue;
        }
        path.push(s);
        walk(dq, out_steps, origin, max_len, path, found);
        path.pop();
    }
}

/// Bound on entries of the representations used to detect words that vanish
/// identically.
const ZERO_TEST_BOUND: i64 = 1_000_000;

/// Candidate generators up to `max_degree`: canonical cycles of the doubled
/// quiver whose trace does not vanish identically at dimension `alpha`.
///
/// Vanishing is detected by evaluation at a random representation with large
/// entries; a zero is confirmed on a second independent sample before the
/// word is dropped.
pub fn generators(q: &SymQuiver, alpha: &DimVector, max_degree: usize, seed: u64) -> Result<Vec<TraceWord>> {
    let forms = gram_matrix(q, alpha)?;
    let dq = build_doubled(q);
    let eval = Evaluator::new(&dq, &forms);
    let seed = rng::derive_seed(seed, "generators");
    let probes = [
        Representation::random(q, alpha, &mut rng::stream(seed, 0), ZERO_TEST_BOUND),
        Representation::random(q, alpha, &mut rng::stream(seed, 1), ZERO_TEST_BOUND),
    ];
    let words = enumerate_cycles(&dq, max_degree);
    let keep = words
        .par_iter()
        .map(|w| {
            for rho in &probes {
                if !eval.evaluate(w, rho)?.is_zero() {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(words.into_iter().zip(keep).filter_map(|(w, k)| k.then_some(w)).collect())
}

/// JSON form of a single step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordStep {
    pub arrow: String,
    pub star: bool,
}

impl TraceWord {
    pub fn to_steps(&self, q: &SymQuiver) -> Vec<WordStep> {
        self.steps
            .iter()
            .map(|s| WordStep {
                arrow: q.arrows()[s.arrow].id.clone(),
                star: s.star,
            })
            .collect()
    }

    pub fn from_steps(dq: &DoubledQuiver, steps: &[WordStep]) -> Result<Self> {
        let q = dq.base();
        let steps = steps
            .iter()
            .map(|s| {
                q.arrow(&s.arrow)
                    .map(|arrow| SignedArrow { arrow, star: s.star })
                    .ok_or_else(|| Error::NotComposable(format!("unknown arrow `{}`", s.arrow)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dq, steps)
    }

    /// Human-readable form such as `a b* c`.
    pub fn display(&self, q: &SymQuiver) -> String {
        self.steps
            .iter()
            .map(|s| {
                let id = &q.arrows()[s.arrow].id;
                if s.star {
                    format!("{id}*")
                } else {
                    id.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}
