//! Fock basis over d·k fermionic modes and the field operators acting on it.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::operator::SparseOperator;
use crate::scalar::Ring;

pub const DEFAULT_MODE_LIMIT: usize = 20;
/// Hard ceiling; states are stored as `u32` bitsets.
pub const MAX_MODE_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Orthogonal,
    Symplectic,
}

/// Orbital labels −Ω..Ω, with 0 skipped for even d.
pub fn labels(d: usize) -> Vec<i32> {
    let omega = (d / 2) as i32;
    (-omega..=omega).filter(|&p| d % 2 == 1 || p != 0).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModelParams {
    d: usize,
    k: usize,
    family: Family,
}

impl ModelParams {
    pub fn new(d: usize, k: usize, family: Family) -> Result<Self> {
        Self::with_limit(d, k, family, DEFAULT_MODE_LIMIT)
    }

    pub fn with_limit(d: usize, k: usize, family: Family, limit: usize) -> Result<Self> {
        if d == 0 || k == 0 {
            return domain("d and k must be positive");
        }
        if family == Family::Symplectic && d % 2 == 1 {
            return Err(Error::FamilyMismatch(format!("sp({d}) needs even d")));
        }
        let limit = limit.min(MAX_MODE_LIMIT);
        if d * k > limit {
            return Err(Error::ModeLimit { modes: d * k, limit });
        }
        Ok(ModelParams { d, k, family })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn omega(&self) -> usize {
        self.d / 2
    }

    pub fn modes(&self) -> usize {
        self.d * self.k
    }

    pub fn dim(&self) -> usize {
        1 << self.modes()
    }

    pub fn labels(&self) -> Vec<i32> {
        labels(self.d)
    }

    /// Position of p in the ascending label list.
    pub fn rank(&self, p: i32) -> Option<usize> {
        let omega = self.omega() as i32;
        if p.abs() > omega || (self.d % 2 == 0 && p == 0) {
            return None;
        }
        let r = (p + omega) as usize;
        Some(if self.d % 2 == 0 && p > 0 { r - 1 } else { r })
    }

    /// Form sign s_p: 1 for orthogonal, sgn p for symplectic.
    pub fn s(&self, p: i32) -> i64 {
        match self.family {
            Family::Orthogonal => 1,
            Family::Symplectic => p.signum() as i64,
        }
    }

    pub fn mode(&self, p: i32, tau: usize) -> Result<ModeIndex> {
        mode_index(p, tau, self)
    }

    pub fn mode_of_bit(&self, bit: usize) -> ModeIndex {
        let tau = bit / self.d + 1;
        let p = self.labels()[bit % self.d];
        ModeIndex { p, tau, bit }
    }

    pub fn all_modes(&self) -> Vec<ModeIndex> {
        (0..self.modes()).map(|b| self.mode_of_bit(b)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub p: i32,
    pub tau: usize,
    pub bit: usize,
}

/// bit = (τ−1)·d + rank(p).
pub fn mode_index(p: i32, tau: usize, params: &ModelParams) -> Result<ModeIndex> {
    if tau == 0 || tau > params.k {
        return domain(format!("kind {tau} out of range 1..{}", params.k));
    }
    let r = params
        .rank(p)
        .ok_or_else(|| Error::Domain(format!("label {p} out of range for d={}", params.d)))?;
    Ok(ModeIndex {
        p,
        tau,
        bit: (tau - 1) * params.d + r,
    })
}

/// Occupation bitset. Bit b set means mode b is occupied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FockState(pub u32);

impl FockState {
    pub const VACUUM: FockState = FockState(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn occupied(self, bit: usize) -> bool {
        self.0 >> bit & 1 == 1
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    /// Number of occupied modes strictly below `bit`.
    pub fn count_below(self, bit: usize) -> u32 {
        (self.0 & ((1u32 << bit) - 1)).count_ones()
    }

    pub fn bits(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |b| self.occupied(*b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldOp {
    Create,
    Annihilate,
}

/// Applies a†_b or a_b with the Jordan–Wigner sign (−1)^(occupied modes below b).
pub fn apply_field(op: FieldOp, mode: ModeIndex, state: FockState) -> Option<(i8, FockState)> {
    apply_bit(op, mode.bit, state)
}

pub(crate) fn apply_bit(op: FieldOp, bit: usize, state: FockState) -> Option<(i8, FockState)> {
    let occ = state.occupied(bit);
    match (op, occ) {
        (FieldOp::Create, true) | (FieldOp::Annihilate, false) => None,
        _ => {
            let sign = if state.count_below(bit) % 2 == 0 { 1 } else { -1 };
            Some((sign, FockState(state.0 ^ (1 << bit))))
        }
    }
}

/// A coefficient times a product of field operators, leftmost factor first.
#[derive(Clone, Debug)]
pub struct Monomial<S> {
    pub coeff: S,
    pub factors: Vec<(FieldOp, ModeIndex)>,
}

/// Formal sum of monomials.
#[derive(Clone, Debug)]
pub struct Expr<S> {
    pub terms: Vec<Monomial<S>>,
}

impl<S: Ring> Expr<S> {
    pub fn scalar(c: S) -> Self {
        Expr {
            terms: vec![Monomial {
                coeff: c,
                factors: vec![],
            }],
        }
    }

    pub fn field(op: FieldOp, mode: ModeIndex) -> Self {
        Expr {
            terms: vec![Monomial {
                coeff: S::one(),
                factors: vec![(op, mode)],
            }],
        }
    }

    pub fn create(mode: ModeIndex) -> Self {
        Self::field(FieldOp::Create, mode)
    }

    pub fn annihilate(mode: ModeIndex) -> Self {
        Self::field(FieldOp::Annihilate, mode)
    }

    pub fn plus(mut self, other: Expr<S>) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn times(&self, other: &Expr<S>) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().copied());
                terms.push(Monomial {
                    coeff: a.coeff.clone() * b.coeff.clone(),
                    factors,
                });
            }
        }
        Expr { terms }
    }

    pub fn scaled(mut self, c: &S) -> Self {
        for t in &mut self.terms {
            t.coeff = c.clone() * t.coeff.clone();
        }
        self
    }
}

/// Matrix of a formal expression on the full Fock basis.
pub fn build_operator<S: Ring>(expr: &Expr<S>, params: &ModelParams) -> Result<SparseOperator<S>> {
    for t in &expr.terms {
        for (_, m) in &t.factors {
            if m.bit >= params.modes() {
                return domain(format!("mode bit {} out of range", m.bit));
            }
        }
    }
    let dim = params.dim();
    let cols = (0..dim)
        .map(|c| {
            let mut col: Vec<(u32, S)> = Vec::new();
            for t in &expr.terms {
                let mut state = FockState(c as u32);
                let mut sign = 1i8;
                let mut alive = true;
                for (op, m) in t.factors.iter().rev() {
                    match apply_field(*op, *m, state) {
                        Some((s, next)) => {
                            sign *= s;
                            state = next;
                        }
                        None => {
                            alive = false;
                            break;
                        }
                    }
                }
                if alive {
                    let v = if sign > 0 { t.coeff.clone() } else { -t.coeff.clone() };
                    col.push((state.0, v));
                }
            }
            col
        })
        .collect();
    Ok(SparseOperator::from_columns(dim, cols))
}

/// Matrix of a single field operator.
pub fn field_operator<S: Ring>(op: FieldOp, mode: ModeIndex, params: &ModelParams) -> SparseOperator<S> {
    let dim = params.dim();
    let cols = (0..dim)
        .map(|c| match apply_field(op, mode, FockState(c as u32)) {
            Some((s, next)) => vec![(next.0, S::from_i64(s as i64))],
            None => vec![],
        })
        .collect();
    SparseOperator::from_columns(dim, cols)
}

/// (−1)^N.
pub fn parity_operator<S: Ring>(params: &ModelParams) -> SparseOperator<S> {
    SparseOperator::diagonal(params.dim(), |s| {
        S::from_i64(if FockState(s as u32).count() % 2 == 0 { 1 } else { -1 })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;
    use proptest::prelude::*;

    fn p(d: usize, k: usize) -> ModelParams {
        ModelParams::new(d, k, Family::Orthogonal).unwrap()
    }

    #[test]
    fn layout_examples() {
        let m = p(3, 2);
        assert_eq!(m.mode(-1, 1).unwrap().bit, 0);
        assert_eq!(m.mode(1, 2).unwrap().bit, 5);
        assert_eq!(m.mode(0, 2).unwrap().bit, 4);
        let e = ModelParams::new(4, 1, Family::Symplectic).unwrap();
        assert_eq!(e.labels(), vec![-2, -1, 1, 2]);
        assert_eq!(e.mode(1, 1).unwrap().bit, 2);
        assert!(e.mode(0, 1).is_err());
        assert!(m.mode(2, 1).is_err());
        assert!(m.mode(0, 3).is_err());
    }

    #[test]
    fn layout_is_bijective() {
        for (d, k) in [(1, 3), (2, 2), (3, 2), (4, 3), (5, 1)] {
            let m = p(d, k);
            for b in 0..m.modes() {
                let mi = m.mode_of_bit(b);
                assert_eq!(m.mode(mi.p, mi.tau).unwrap(), mi);
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(matches!(
            ModelParams::new(3, 2, Family::Symplectic),
            Err(Error::FamilyMismatch(_))
        ));
        assert!(matches!(ModelParams::new(7, 3, Family::Orthogonal), Err(Error::ModeLimit { .. })));
        assert!(ModelParams::with_limit(4, 4, Family::Orthogonal, 16).is_ok());
        assert!(ModelParams::with_limit(4, 4, Family::Orthogonal, 12).is_err());
    }

    #[test]
    fn field_examples() {
        let m = p(2, 1);
        let b0 = m.mode_of_bit(0);
        let b1 = m.mode_of_bit(1);
        assert_eq!(apply_field(FieldOp::Create, b0, FockState::VACUUM), Some((1, FockState(1))));
        assert_eq!(apply_field(FieldOp::Create, b1, FockState(1)), Some((-1, FockState(3))));
        assert_eq!(apply_field(FieldOp::Annihilate, b0, FockState::VACUUM), None);
        assert_eq!(apply_field(FieldOp::Create, b0, FockState(1)), None);
    }

    #[test]
    fn build_examples() {
        let m = p(2, 2);
        let id: SparseOperator<i64> = build_operator(&Expr::scalar(1), &m).unwrap();
        assert_eq!(id, SparseOperator::identity(m.dim()));
        let md = m.mode_of_bit(2);
        let n: SparseOperator<i64> =
            build_operator(&Expr::create(md).times(&Expr::annihilate(md)), &m).unwrap();
        assert_eq!(n, SparseOperator::diagonal(16, |s| (s >> 2 & 1) as i64));
        let anti = Expr::annihilate(md)
            .times(&Expr::create(md))
            .plus(Expr::create(md).times(&Expr::annihilate(md)));
        assert_eq!(build_operator(&anti, &m).unwrap(), id);
        let bad = ModeIndex { p: 0, tau: 9, bit: 40 };
        assert!(build_operator(&Expr::<i64>::create(bad), &m).is_err());
    }

    #[test]
    fn canonical_anticommutators() {
        let m = p(3, 1);
        for i in m.all_modes() {
            for j in m.all_modes() {
                let ai: SparseOperator<i64> = field_operator(FieldOp::Annihilate, i, &m);
                let aj: SparseOperator<i64> = field_operator(FieldOp::Annihilate, j, &m);
                let ci: SparseOperator<i64> = field_operator(FieldOp::Create, i, &m);
                let cj: SparseOperator<i64> = field_operator(FieldOp::Create, j, &m);
                assert!(ai.anticommutator(&aj).unwrap().is_zero());
                assert!(ci.anticommutator(&cj).unwrap().is_zero());
                let expect = if i == j {
                    SparseOperator::identity(m.dim())
                } else {
                    SparseOperator::zero(m.dim())
                };
                assert_eq!(ai.anticommutator(&cj).unwrap(), expect);
            }
        }
    }

    proptest! {
        #[test]
        fn create_then_annihilate_restores(state in 0u32..64, bit in 0usize..6) {
            let m = p(3, 2);
            let md = m.mode_of_bit(bit);
            let s = FockState(state);
            if let Some((s1, up)) = apply_field(FieldOp::Create, md, s) {
                let (s2, back) = apply_field(FieldOp::Annihilate, md, up).unwrap();
                prop_assert_eq!(back, s);
                prop_assert_eq!(s1 * s2, 1);
            }
        }

        #[test]
        fn build_is_multiplicative(
            f1 in prop::collection::vec((any::<bool>(), 0usize..6), 0..4),
            f2 in prop::collection::vec((any::<bool>(), 0usize..6), 0..4),
        ) {
            let m = p(3, 2);
            let mk = |f: &Vec<(bool, usize)>| Expr::<Q> {
                terms: vec![Monomial {
                    coeff: Q::from_integer(1),
                    factors: f
                        .iter()
                        .map(|(c, b)| {
                            let op = if *c { FieldOp::Create } else { FieldOp::Annihilate };
                            (op, m.mode_of_bit(*b))
                        })
                        .collect(),
                }],
            };
            let (e1, e2) = (mk(&f1), mk(&f2));
            let lhs = build_operator(&e1.times(&e2), &m).unwrap();
            let rhs = build_operator(&e1, &m).unwrap().compose(&build_operator(&e2, &m).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
