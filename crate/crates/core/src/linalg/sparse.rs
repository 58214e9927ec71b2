//! Fraction-free sparse row echelon forms over the integers.
//!
//! Rows are kept primitive (content 1, positive leading entry) after every
//! elimination step, which keeps coefficient growth in check on the
//! structured matrices the oracle produces.

use std::collections::BTreeMap;

use num::{BigInt, Integer, One, Signed, Zero};

use super::Rational;

/// Sparse integer row; entries sorted by column, all nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseRow {
    entries: Vec<(usize, BigInt)>,
}

impl SparseRow {
    /// Builds a row from `(column, value)` pairs in any order; duplicates add up.
    pub fn from_entries(mut entries: Vec<(usize, BigInt)>) -> Self {
        entries.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        Self { entries: merged }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    fn lead(&self) -> Option<&(usize, BigInt)> {
        self.entries.first()
    }

    fn get(&self, col: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// `a * self - b * other`.
    fn combine(&self, a: &BigInt, other: &SparseRow, b: &BigInt) -> SparseRow {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let ci = self.entries.get(i).map(|e| e.0);
            let cj = other.entries.get(j).map(|e| e.0);
            let (col, val) = match (ci, cj) {
                (Some(x), Some(y)) if x == y => {
                    let v = a * &self.entries[i].1 - b * &other.entries[j].1;
                    i += 1;
                    j += 1;
                    (x, v)
                }
                (Some(x), Some(y)) if x < y => {
                    i += 1;
                    (x, a * &self.entries[i - 1].1)
                }
                (Some(x), None) => {
                    i += 1;
                    (x, a * &self.entries[i - 1].1)
                }
                (_, Some(y)) => {
                    j += 1;
                    (y, -(b * &other.entries[j - 1].1))
                }
                (None, None) => unreachable!(),
            };
            if !val.is_zero() {
                out.push((col, val));
            }
        }
        SparseRow { entries: out }
    }

    fn make_primitive(&mut self) {
        let Some(first) = self.entries.first() else {
            return;
        };
        let mut g = first.1.abs();
        for (_, v) in &self.entries[1..] {
            if g.is_one() {
                break;
            }
            g = g.gcd(v);
        }
        let flip = first.1.is_negative();
        if !g.is_one() || flip {
            let g = if flip { -g } else { g };
            for (_, v) in &mut self.entries {
                *v = &*v / &g;
            }
        }
    }

    /// Eliminates `col` from `self` using `pivot`, whose leading column is `col`.
    fn eliminate(&mut self, col: usize, pivot: &SparseRow) {
        let Some(c) = self.get(col).cloned() else {
            return;
        };
        let p = &pivot.lead().expect("empty pivot row").1;
        let g = c.gcd(p);
        let a = p / &g;
        let b = &c / &g;
        *self = self.combine(&a, pivot, &b);
        self.make_primitive();
    }
}

/// Incrementally built row echelon form: one pivot row per leading column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.make_primitive();
        let mut start = 0;
        loop {
            // Next column of `row` at or after `start` that carries a pivot.
            let next = row
                .entries
                .iter()
                .map(|(c, _)| *c)
                .filter(|&c| c >= start)
                .find(|c| self.pivots.contains_key(c));
            match next {
                Some(c) => {
                    row.eliminate(c, &self.pivots[&c]);
                    start = c + 1;
                }
                None => return row,
            }
        }
    }

    /// Adds a row; returns whether it raised the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.entries.iter().all(|(c, _)| *c < self.ncols));
        let reduced = self.reduce(row);
        match reduced.lead().map(|(c, _)| *c) {
            Some(c) => {
                self.pivots.insert(c, reduced);
                true
            }
            None => false,
        }
    }

    /// Whether `row` lies in the span of the rows inserted so far.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Basis of `{x : row . x = 0 for every inserted row}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        // Back-substitute into reduced row echelon form.
        let mut rows: BTreeMap<usize, SparseRow> = self.pivots.clone();
        let cols: Vec<usize> = rows.keys().rev().copied().collect();
        for &pc in &cols {
            let pivot = rows[&pc].clone();
            for (_, r) in rows.range_mut(..pc) {
                r.eliminate(pc, &pivot);
            }
        }
        let free: Vec<usize> = (0..self.ncols).filter(|c| !rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (&pc, r) in &rows {
                    if let Some(x) = r.get(f) {
                        let lead = &r.lead().unwrap().1;
                        v[pc] = -Rational::new(x.clone(), lead.clone());
                    }
                }
                v
            })
            .collect()
    }
}

/// Rank of a list of sparse rows over `ncols` columns.
pub fn rank_of(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> usize {
    let mut rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(SparseRow::len);
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
        if ech.rank() == ncols {
            break;
        }
    }
    ech.rank()
}
