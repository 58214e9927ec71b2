//! Multivariate polynomials with integer coefficients over a fixed set of
//! variables, used to expand invariants symbolically.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Zero};

use crate::linalg::sparse::SparseRow;
use crate::linalg::Rational;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, BigInt::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().map(|&e| e as usize).sum::<usize>() == d)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Coefficient polynomial of `prod x_i^{e_i}` for the variables listed in
    /// `vars`; those variables are dropped from the result.
    pub fn coefficient_of(&self, vars: &[usize], exps: &[u8]) -> Poly {
        assert_eq!(vars.len(), exps.len());
        let keep: Vec<usize> = (0..self.nvars).filter(|i| !vars.contains(i)).collect();
        let mut out = Poly::zero(keep.len());
        for (m, c) in &self.terms {
            if vars.iter().zip(exps).all(|(&v, &e)| m[v] == e) {
                out.add_term(keep.iter().map(|&i| m[i]).collect(), c.clone());
            }
        }
        out
    }

    /// Substitutes `x_i -> sum_j coef * y_j` for every variable; `images[i]`
    /// lists the `(j, coef)` pairs in a space of `target_vars` variables.
    pub fn substitute_linear(&self, images: &[Vec<(usize, i64)>], target_vars: usize) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let lin: Vec<Poly> = images
            .iter()
            .map(|img| {
                let mut p = Poly::zero(target_vars);
                for &(j, c) in img {
                    p = &p + &Poly::var(target_vars, j).scale(&BigInt::from(c));
                }
                p
            })
            .collect();
        let mut out = Poly::zero(target_vars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_vars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = &t * &lin[i];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficient vector as a sparse row, columns given by `index`
    /// (extended with fresh columns for unseen monomials).
    pub fn to_row(&self, index: &mut MonomialIndex) -> SparseRow {
        SparseRow::from_entries(
            self.terms
                .iter()
                .map(|(m, c)| (index.intern(m), c.clone()))
                .collect(),
        )
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

/// Assigns dense column numbers to monomials on first sight.
#[derive(Clone, Debug, Default)]
pub struct MonomialIndex {
    map: std::collections::HashMap<Monomial, usize>,
    list: Vec<Monomial>,
}

impl MonomialIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_list(list: Vec<Monomial>) -> Self {
        let map = list.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { map, list }
    }

    pub fn intern(&mut self, m: &Monomial) -> usize {
        if let Some(&i) = self.map.get(m) {
            return i;
        }
        let i = self.list.len();
        self.map.insert(m.clone(), i);
        self.list.push(m.clone());
        i
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.map.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.list
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// lexicographically decreasing order.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    fn rec(nvars: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        let i = cur.len();
        if i + 1 == nvars {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u8);
            rec(nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// `C(n, k)` with saturation on overflow.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}
