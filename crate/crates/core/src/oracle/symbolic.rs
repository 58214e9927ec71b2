//! Symbolic expansion of trace words in the coordinates of a representation.

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::evaluate::StarMode;
use crate::linalg::RatMatrix;
use crate::poly::Poly;
use crate::quiver::{DimVector, DoubledQuiver, FormAssignment};
use crate::words::{SignedArrow, TraceWord};

/// Matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        Self {
            rows,
            cols,
            nvars,
            data: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.nvars());
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows);
        assert_eq!(self.nvars, rhs.nvars);
        let nvars = self.nvars;
        let mut out = Self::zeros(self.rows, rhs.cols, nvars);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Poly::zero(nvars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `m * self` for an integer matrix `m`.
    pub fn left_int(&self, m: &RatMatrix) -> PolyMatrix {
        assert_eq!(m.cols(), self.rows);
        let mut out = Self::zeros(m.rows(), self.cols, self.nvars());
        for i in 0..m.rows() {
            for j in 0..self.cols {
                let mut acc = Poly::zero(self.nvars());
                for k in 0..self.rows {
                    let c = integer(&m[(i, k)]);
                    if !c.is_zero() {
                        acc = &acc + &self.get(k, j).scale(&c);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `self * m` for an integer matrix `m`.
    pub fn right_int(&self, m: &RatMatrix) -> PolyMatrix {
        self.transpose().left_int(&m.transpose()).transpose()
    }

    pub fn scale(&self, c: &BigInt) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn trace(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let mut acc = Poly::zero(self.nvars());
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        acc
    }
}

fn integer(x: &crate::linalg::Rational) -> BigInt {
    assert!(x.is_integer(), "Gram blocks are integral");
    x.to_integer()
}

/// Coordinates of a representation: entry `(i, j)` of arrow `a` is variable
/// `offset(a) + i * dim(src) + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateLayout {
    offsets: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    nvars: usize,
}

impl CoordinateLayout {
    pub fn new(dq: &DoubledQuiver, alpha: &DimVector) -> Self {
        let mut offsets = Vec::new();
        let mut shapes = Vec::new();
        let mut acc = 0;
        for a in dq.base().arrows() {
            let shape = (alpha.get(a.dst), alpha.get(a.src));
            offsets.push(acc);
            shapes.push(shape);
            acc += shape.0 * shape.1;
        }
        Self {
            offsets,
            shapes,
            nvars: acc,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var(&self, arrow: usize, i: usize, j: usize) -> usize {
        self.offsets[arrow] + i * self.shapes[arrow].1 + j
    }

    pub fn generic_map(&self, arrow: usize) -> PolyMatrix {
        let (r, c) = self.shapes[arrow];
        let mut m = PolyMatrix::zeros(r, c, self.nvars);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, Poly::var(self.nvars, self.var(arrow, i, j)));
            }
        }
        m
    }
}

/// Expands trace words as polynomials in the coordinates of a generic
/// representation.
pub struct SymbolicEvaluator<'a> {
    dq: &'a DoubledQuiver,
    forms: &'a FormAssignment,
    layout: CoordinateLayout,
    mode: StarMode,
}

impl<'a> SymbolicEvaluator<'a> {
    pub fn new(dq: &'a DoubledQuiver, forms: &'a FormAssignment, alpha: &DimVector) -> Self {
        Self {
            dq,
            forms,
            layout: CoordinateLayout::new(dq, alpha),
            mode: StarMode::Faithful,
        }
    }

    pub fn with_mode(mut self, mode: StarMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn layout(&self) -> &CoordinateLayout {
        &self.layout
    }

    fn step(&self, s: SignedArrow) -> Result<PolyMatrix> {
        let f = self.layout.generic_map(s.arrow);
        if !s.star {
            return Ok(f);
        }
        let ft = f.transpose();
        if self.mode == StarMode::TransposeOnly {
            return Ok(ft);
        }
        let a = &self.dq.base().arrows()[s.arrow];
        let src_inv = self
            .forms
            .block(a.src)
            .inverse()
            .ok_or_else(|| Error::ShapeMismatch("degenerate form".into()))?;
        let adj = ft.left_int(&src_inv).right_int(self.forms.block(a.dst));
        Ok(adj.scale(&BigInt::from(self.dq.sign(s.arrow))))
    }

    pub fn word_poly(&self, w: &TraceWord) -> Result<Poly> {
        let mut steps = w.steps().iter();
        let first = steps.next().ok_or_else(|| Error::NotComposable("empty word".into()))?;
        let mut acc = self.step(*first)?;
        for &s in steps {
            acc = self.step(s)?.mul(&acc);
        }
        Ok(acc.trace())
    }
}
