//! Sparse linear maps and vectors on the Fock space.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring};

/// Column-major sparse matrix. Each column lists (row, value) with rows
/// strictly ascending and no stored zeros, so derived equality is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator<S> {
    dim: usize,
    cols: Vec<Vec<(u32, S)>>,
}

fn normalize<S: Ring>(mut col: Vec<(u32, S)>) -> Vec<(u32, S)> {
    if col.windows(2).all(|w| w[0].0 < w[1].0) {
        col.retain(|(_, v)| !v.is_zero());
        return col;
    }
    col.sort_by_key(|(r, _)| *r);
    let mut out: Vec<(u32, S)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv = lv.clone() + v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}

impl<S: Ring> SparseOperator<S> {
    /// Builds from raw columns; duplicates are summed and zeros dropped.
    pub fn from_columns(dim: usize, cols: Vec<Vec<(u32, S)>>) -> Self {
        assert_eq!(cols.len(), dim, "column count must equal dim");
        let cols = cols.into_iter().map(normalize).collect();
        SparseOperator { dim, cols }
    }

    pub fn zero(dim: usize) -> Self {
        SparseOperator {
            dim,
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(dim, |_| S::one())
    }

    pub fn diagonal(dim: usize, f: impl Fn(usize) -> S) -> Self {
        let cols = (0..dim).map(|i| vec![(i as u32, f(i))]).collect();
        Self::from_columns(dim, cols)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(u32, S)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        match self.cols[c].binary_search_by_key(&(r as u32), |(row, _)| *row) {
            Ok(i) => self.cols[c][i].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Some(c) if the operator equals c·I.
    pub fn scalar_value(&self) -> Option<S> {
        let c = self.get(0, 0);
        let ok = self
            .cols
            .iter()
            .enumerate()
            .all(|(j, col)| match col.as_slice() {
                [] => c.is_zero(),
                [(r, v)] => *r as usize == j && *v == c,
                _ => false,
            });
        ok.then_some(c)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r as usize, c, v)))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T + Sync) -> SparseOperator<T> {
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, f(v))).collect())
            .collect();
        SparseOperator::from_columns(self.dim, cols)
    }

    pub fn apply(&self, v: &FockVector<S>) -> FockVector<S> {
        let mut out = FockVector::zero();
        for (c, x) in v.iter() {
            for (r, a) in &self.cols[c as usize] {
                out.add_at(*r, a.clone() * x.clone());
            }
        }
        out
    }

    pub fn apply_basis(&self, state: u32) -> FockVector<S> {
        let mut out = FockVector::zero();
        for (r, a) in &self.cols[state as usize] {
            out.add_at(*r, a.clone());
        }
        out
    }

    /// self ∘ rhs.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        check_dims(self.dim, rhs.dim)?;
        let cols: Vec<Vec<(u32, S)>> = rhs
            .cols
            .par_iter()
            .map(|bcol| {
                match bcol.as_slice() {
                    [] => Vec::new(),
                    [(k, b)] => self.cols[*k as usize]
                        .iter()
                        .map(|(r, a)| (*r, a.clone() * b.clone()))
                        .filter(|(_, v)| !v.is_zero())
                        .collect(),
                    _ => {
                        let mut acc: BTreeMap<u32, S> = BTreeMap::new();
                        for (k, b) in bcol {
                            for (r, a) in &self.cols[*k as usize] {
                                let t = a.clone() * b.clone();
                                match acc.get_mut(r) {
                                    Some(e) => *e = e.clone() + t,
                                    None => {
                                        acc.insert(*r, t);
                                    }
                                }
                            }
                        }
                        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
                    }
                }
            })
            .collect();
        Ok(SparseOperator { dim: self.dim, cols })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Result<Self> {
        check_dims(self.dim, rhs.dim)?;
        let cols = self
            .cols
            .par_iter()
            .zip(rhs.cols.par_iter())
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
                    let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
                    if take_a {
                        out.push(a[i].clone());
                        i += 1;
                    } else {
                        let bv = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                        if take_b {
                            out.push((b[j].0, bv));
                        } else {
                            let v = a[i].1.clone() + bv;
                            if !v.is_zero() {
                                out.push((a[i].0, v));
                            }
                            i += 1;
                        }
                        j += 1;
                    }
                }
                out
            })
            .collect();
        Ok(SparseOperator { dim: self.dim, cols })
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        self.map(|v| c.clone() * v.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    /// AB − BA.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.compose(rhs)?.sub(&rhs.compose(self)?)
    }

    /// AB + BA.
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        self.compose(rhs)?.add(&rhs.compose(self)?)
    }

    /// Returns Some(c) when self = c·other, both non-zero.
    pub fn proportionality(&self, other: &Self) -> Option<S>
    where
        S: Field,
    {
        if self.dim != other.dim {
            return None;
        }
        let (r, c, v) = other.triplets().next()?;
        let ratio = self.get(r, c).div(v)?;
        if ratio.is_zero() {
            return None;
        }
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraOp {
    Add,
    Compose,
    Commutator,
    Anticommutator,
}

pub fn operator_algebra<S: Ring>(a: &SparseOperator<S>, b: &SparseOperator<S>, op: AlgebraOp) -> Result<SparseOperator<S>> {
    match op {
        AlgebraOp::Add => a.add(b),
        AlgebraOp::Compose => a.compose(b),
        AlgebraOp::Commutator => a.commutator(b),
        AlgebraOp::Anticommutator => a.anticommutator(b),
    }
}

/// Product of operators, leftmost first.
pub fn product<S: Ring>(dim: usize, ops: &[&SparseOperator<S>]) -> Result<SparseOperator<S>> {
    let mut acc = SparseOperator::identity(dim);
    for op in ops {
        acc = acc.compose(op)?;
    }
    Ok(acc)
}

/// Sparse vector over the Fock basis.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FockVector<S> {
    entries: BTreeMap<u32, S>,
}

impl<S: Ring> FockVector<S> {
    pub fn zero() -> Self {
        FockVector {
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(state: u32) -> Self {
        let mut v = Self::zero();
        v.entries.insert(state, S::one());
        v
    }

    pub fn from_entries(it: impl IntoIterator<Item = (u32, S)>) -> Self {
        let mut v = Self::zero();
        for (i, x) in it {
            v.add_at(i, x);
        }
        v
    }

    pub fn add_at(&mut self, idx: u32, x: S) {
        if x.is_zero() {
            return;
        }
        let remove = match self.entries.get_mut(&idx) {
            Some(e) => {
                *e = e.clone() + x;
                e.is_zero()
            }
            None => {
                self.entries.insert(idx, x);
                false
            }
        };
        if remove {
            self.entries.remove(&idx);
        }
    }

    pub fn get(&self, idx: u32) -> S {
        self.entries.get(&idx).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &S)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_entries(self.iter().map(|(i, x)| (i, c.clone() * x.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, x) in other.iter() {
            out.add_at(i, x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> FockVector<T> {
        FockVector::from_entries(self.iter().map(|(i, x)| (i, f(x))))
    }

    /// Some(c) with self = c·other, both non-zero.
    pub fn proportionality(&self, other: &Self) -> Option<S>
    where
        S: Field,
    {
        let (i, x) = other.iter().next()?;
        let c = self.get(i).div(x)?;
        if c.is_zero() {
            return None;
        }
        (other.scale(&c) == *self).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Q};
    use proptest::prelude::*;

    fn arb_op(dim: usize) -> impl Strategy<Value = SparseOperator<Q>> {
        prop::collection::vec((0..dim as u32, 0..dim, -3i128..4), 0..12).prop_map(move |ts| {
            let mut cols = vec![Vec::new(); dim];
            for (r, c, v) in ts {
                cols[c].push((r, Q::from_integer(v)));
            }
            SparseOperator::from_columns(dim, cols)
        })
    }

    #[test]
    fn normalization_sums_duplicates() {
        let op = SparseOperator::from_columns(2, vec![vec![(1, 2i64), (0, 1), (1, -2)], vec![]]);
        assert_eq!(op.column(0), &[(0, 1)]);
        assert_eq!(op.nnz(), 1);
    }

    #[test]
    fn algebra_examples() {
        let x = SparseOperator::from_columns(2, vec![vec![(1, q(1, 2))], vec![(0, q(3, 1))]]);
        assert!(x.commutator(&x).unwrap().is_zero());
        let id = SparseOperator::identity(2);
        assert_eq!(operator_algebra(&id, &x, AlgebraOp::Compose).unwrap(), x);
        assert_eq!(x.compose(&x).unwrap().scalar_value(), Some(q(3, 2)));
        let y = SparseOperator::<Q>::identity(3);
        assert!(matches!(x.add(&y), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn proportionality_detects_scalar() {
        let x = SparseOperator::from_columns(2, vec![vec![(1, q(1, 2))], vec![(0, q(3, 1))]]);
        assert_eq!(x.scale(&q(-2, 3)).proportionality(&x), Some(q(-2, 3)));
        assert_eq!(SparseOperator::identity(2).proportionality(&x), None);
    }

    proptest! {
        #[test]
        fn compose_is_associative(a in arb_op(6), b in arb_op(6), c in arb_op(6)) {
            let l = a.compose(&b).unwrap().compose(&c).unwrap();
            let r = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn apply_matches_compose(a in arb_op(5), b in arb_op(5), s in 0u32..5) {
            let v = FockVector::basis(s);
            prop_assert_eq!(a.compose(&b).unwrap().apply(&v), a.apply(&b.apply(&v)));
        }

        #[test]
        fn add_sub_roundtrip(a in arb_op(5), b in arb_op(5)) {
            prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
        }
    }
}
