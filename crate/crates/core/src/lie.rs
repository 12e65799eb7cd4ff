//! Defining-space generators ē_pq and the two Fock-space representations.

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::fock::{apply_bit, labels, FieldOp, FockState, ModelParams, Family};
use crate::linalg;
use crate::operator::SparseOperator;
use crate::scalar::{Field, Ring, Q};

/// ⟨b|pq⟩ = s_p δ_{p,−q} on a label set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    family: Family,
    labels: Vec<i32>,
}

impl BilinearForm {
    pub fn new(d: usize, family: Family) -> Result<Self> {
        if family == Family::Symplectic && d % 2 == 1 {
            return Err(Error::FamilyMismatch(format!("skew form needs even dimension, got {d}")));
        }
        Ok(BilinearForm {
            family,
            labels: labels(d),
        })
    }

    pub fn for_params(params: &ModelParams) -> Self {
        BilinearForm {
            family: params.family(),
            labels: params.labels(),
        }
    }

    /// The form on the 2k labels ±1..±k of the number non-conserving side.
    pub fn label_form(params: &ModelParams) -> Self {
        BilinearForm {
            family: params.family(),
            labels: labels(2 * params.k()),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn s(&self, p: i32) -> i64 {
        match self.family {
            Family::Orthogonal => 1,
            Family::Symplectic => p.signum() as i64,
        }
    }

    pub fn entry(&self, p: i32, q: i32) -> i64 {
        if p == -q {
            self.s(p)
        } else {
            0
        }
    }

    pub fn matrix<S: Ring>(&self) -> DefiningMatrix<S> {
        let mut m = DefiningMatrix::zero(&self.labels);
        for &p in &self.labels {
            m.set(p, -p, S::from_i64(self.s(p)));
        }
        m
    }

    fn contains(&self, p: i32) -> bool {
        self.labels.contains(&p)
    }
}

/// Square matrix on V indexed by orbital labels.
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningMatrix<S> {
    labels: Vec<i32>,
    data: Vec<S>,
}

impl<S: Ring> DefiningMatrix<S> {
    pub fn zero(labels: &[i32]) -> Self {
        let n = labels.len();
        DefiningMatrix {
            labels: labels.to_vec(),
            data: vec![S::zero(); n * n],
        }
    }

    pub fn identity(labels: &[i32]) -> Self {
        let mut m = Self::zero(labels);
        for &p in labels {
            m.set(p, p, S::one());
        }
        m
    }

    /// e_pq.
    pub fn unit(labels: &[i32], p: i32, q: i32) -> Result<Self> {
        let mut m = Self::zero(labels);
        if !labels.contains(&p) || !labels.contains(&q) {
            return domain(format!("labels ({p},{q}) out of range"));
        }
        m.set(p, q, S::one());
        Ok(m)
    }

    pub fn from_fn(labels: &[i32], f: impl Fn(i32, i32) -> S) -> Self {
        let mut m = Self::zero(labels);
        for &p in labels {
            for &q in labels {
                m.set(p, q, f(p, q));
            }
        }
        m
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    fn idx(&self, p: i32) -> usize {
        self.labels
            .iter()
            .position(|&x| x == p)
            .unwrap_or_else(|| panic!("label {p} not in {:?}", self.labels))
    }

    pub fn get(&self, p: i32, q: i32) -> S {
        let n = self.size();
        self.data[self.idx(p) * n + self.idx(q)].clone()
    }

    pub fn set(&mut self, p: i32, q: i32, v: S) {
        let n = self.size();
        let i = self.idx(p) * n + self.idx(q);
        self.data[i] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.size();
        let mut out = Self::zero(&self.labels);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] = out.data[i * n + j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        DefiningMatrix {
            labels: self.labels.clone(),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.labels, |p, q| self.get(q, p))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> DefiningMatrix<T> {
        DefiningMatrix {
            labels: self.labels.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.size()).map(<[S]>::to_vec).collect()
    }

    fn from_rows(labels: &[i32], rows: Vec<Vec<S>>) -> Self {
        DefiningMatrix {
            labels: labels.to_vec(),
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Σ_r (⟨b|rq⟩⟨r|x|p⟩ + ⟨b|pr⟩⟨r|x|q⟩) = 0 for all p, q.
    pub fn satisfies_form(&self, form: &BilinearForm) -> bool {
        let b = form.matrix::<S>();
        let lhs = self.transpose().mul(&b).transpose();
        // (xᵀ b)ᵀ has entries Σ_r b_rq x_rp at (q,p); add b·x
        let bx = b.mul(self);
        self.labels.iter().all(|&p| {
            self.labels
                .iter()
                .all(|&q| (lhs.get(q, p) + bx.get(p, q)).is_zero())
        })
    }

    /// gᵀ b g = b.
    pub fn preserves_form(&self, form: &BilinearForm) -> bool {
        let b = form.matrix::<S>();
        self.transpose().mul(&b).mul(self) == b
    }
}

impl<F: Field> DefiningMatrix<F> {
    pub fn inverse(&self) -> Result<Self> {
        linalg::invert(&self.rows())
            .map(|rows| Self::from_rows(&self.labels, rows))
            .ok_or(Error::Singular)
    }

    pub fn determinant(&self) -> F {
        linalg::determinant(&self.rows())
    }
}

/// ē_pq = e_pq − s_p s_q e_{−q,−p}.
pub fn ebar_on_v<S: Ring>(p: i32, q: i32, form: &BilinearForm) -> Result<DefiningMatrix<S>> {
    if !form.contains(p) || !form.contains(q) {
        return domain(format!("labels ({p},{q}) out of range"));
    }
    let mut m = DefiningMatrix::unit(form.labels(), p, q)?;
    let c = S::from_i64(form.s(p) * form.s(q));
    let cur = m.get(-q, -p);
    m.set(-q, -p, cur - c);
    Ok(m)
}

/// Basis elements ē_pq: p + q > 0 (orthogonal) or p + q ≥ 0 (symplectic).
pub fn ebar_basis(form: &BilinearForm) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    for &p in form.labels() {
        for &q in form.labels() {
            let ok = match form.family() {
                Family::Orthogonal => p + q > 0,
                Family::Symplectic => p + q >= 0,
            };
            if ok {
                out.push((p, q));
            }
        }
    }
    out
}

/// Borel raising elements: basis pairs with p > q.
pub fn raising_pairs(form: &BilinearForm) -> Vec<(i32, i32)> {
    ebar_basis(form).into_iter().filter(|(p, q)| p > q).collect()
}

/// Coordinates of x in the ē basis, or None if x is not in the algebra.
pub fn decompose(x: &DefiningMatrix<Q>, form: &BilinearForm) -> Option<Vec<((i32, i32), Q)>> {
    let mut coords = Vec::new();
    let mut rebuilt = DefiningMatrix::zero(form.labels());
    for (p, q) in ebar_basis(form) {
        let mut c = x.get(p, q);
        if p == -q && form.family() == Family::Symplectic {
            c /= Q::from_integer(2);
        }
        if !c.is_zero() {
            let e = ebar_on_v::<Q>(p, q, form).ok()?;
            rebuilt = rebuilt.add(&e.scale(&c));
            coords.push(((p, q), c));
        }
    }
    (rebuilt == *x).then_some(coords)
}

/// Σ_{pqτ} a†_{pτ} ⟨p|x|q⟩ a_{qτ}.
pub fn con_generator<S: Ring>(x: &DefiningMatrix<S>, params: &ModelParams) -> Result<SparseOperator<S>> {
    if x.labels() != params.labels().as_slice() {
        return domain("matrix labels do not match the model");
    }
    let entries: Vec<(usize, usize, S)> = {
        let ls = params.labels();
        let mut v = Vec::new();
        for (i, &p) in ls.iter().enumerate() {
            for (j, &q) in ls.iter().enumerate() {
                let e = x.get(p, q);
                if !e.is_zero() {
                    v.push((i, j, e));
                }
            }
        }
        v
    };
    let d = params.d();
    let cols = (0..params.dim())
        .map(|c| {
            let s = FockState(c as u32);
            let mut col = Vec::new();
            for tau in 0..params.k() {
                for (i, j, e) in &entries {
                    let (bp, bq) = (tau * d + i, tau * d + j);
                    if let Some((s1, mid)) = apply_bit(FieldOp::Annihilate, bq, s) {
                        if let Some((s2, out)) = apply_bit(FieldOp::Create, bp, mid) {
                            let v = if s1 * s2 > 0 { e.clone() } else { -e.clone() };
                            col.push((out.0, v));
                        }
                    }
                }
            }
            col
        })
        .collect();
    Ok(SparseOperator::from_columns(params.dim(), cols))
}

/// The three generator shapes of the number non-conserving representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NconKind {
    /// ē_τυ
    Cartan(usize, usize),
    /// ē_{τ,−υ}
    PairAnnihilate(usize, usize),
    /// ē_{−τ,υ}
    PairCreate(usize, usize),
}

/// Σ c·X₁X₂ over (X₁, bit₁, X₂, bit₂, c) terms.
pub fn bilinear_operator<S: Ring>(params: &ModelParams, terms: &[(FieldOp, usize, FieldOp, usize, S)]) -> SparseOperator<S> {
    let cols = (0..params.dim())
        .map(|c| {
            let s = FockState(c as u32);
            let mut col = Vec::new();
            for (op1, b1, op2, b2, coeff) in terms {
                if let Some((s2, mid)) = apply_bit(*op2, *b2, s) {
                    if let Some((s1, out)) = apply_bit(*op1, *b1, mid) {
                        let v = if s1 * s2 > 0 { coeff.clone() } else { -coeff.clone() };
                        col.push((out.0, v));
                    }
                }
            }
            col
        })
        .collect();
    SparseOperator::from_columns(params.dim(), cols)
}

/// Image of an ē element under the number non-conserving map.
///
/// The Cartan-type images are ē_τυ ↦ δ_τυ d/2 − Σ_p a†_{pυ} a_{pτ}; this index
/// placement is the one that makes the map a Lie homomorphism.
pub fn ncon_generator(kind: NconKind, params: &ModelParams) -> Result<SparseOperator<Q>> {
    let k = params.k();
    let check = |t: usize| {
        if t == 0 || t > k {
            domain(format!("kind {t} out of range 1..{k}"))
        } else {
            Ok(())
        }
    };
    let bit = |p: i32, t: usize| params.mode(p, t).map(|m| m.bit);
    let mut terms = Vec::new();
    match kind {
        NconKind::Cartan(t, u) => {
            check(t)?;
            check(u)?;
            for p in params.labels() {
                terms.push((FieldOp::Create, bit(p, u)?, FieldOp::Annihilate, bit(p, t)?, -Q::one()));
            }
            let mut op = bilinear_operator(params, &terms);
            if t == u {
                let shift = Q::new(params.d() as i128, 2);
                op = op.add(&SparseOperator::identity(params.dim()).scale(&shift))?;
            }
            Ok(op)
        }
        NconKind::PairAnnihilate(t, u) => {
            check(t)?;
            check(u)?;
            for p in params.labels() {
                let s = Q::from_integer(params.s(p) as i128);
                terms.push((FieldOp::Annihilate, bit(-p, t)?, FieldOp::Annihilate, bit(p, u)?, s));
            }
            Ok(bilinear_operator(params, &terms))
        }
        NconKind::PairCreate(t, u) => {
            check(t)?;
            check(u)?;
            for p in params.labels() {
                let s = Q::from_integer(params.s(p) as i128);
                terms.push((FieldOp::Create, bit(p, t)?, FieldOp::Create, bit(-p, u)?, s));
            }
            Ok(bilinear_operator(params, &terms))
        }
    }
}

/// Image of ē_PQ for labels P, Q ∈ ±1..±k.
pub fn ncon_ebar(p: i32, q: i32, params: &ModelParams) -> Result<SparseOperator<Q>> {
    let form = BilinearForm::label_form(params);
    if !form.contains(p) || !form.contains(q) {
        return domain(format!("labels ({p},{q}) out of range ±1..±{}", params.k()));
    }
    let (t, u) = (p.unsigned_abs() as usize, q.unsigned_abs() as usize);
    match (p > 0, q > 0) {
        (true, true) => ncon_generator(NconKind::Cartan(t, u), params),
        (true, false) => ncon_generator(NconKind::PairAnnihilate(t, u), params),
        (false, true) => ncon_generator(NconKind::PairCreate(t, u), params),
        (false, false) => {
            // ē_{−τ,−υ} = −s s ē_{υτ}
            let c = -Q::from_integer((form.s(p) * form.s(q)) as i128);
            Ok(ncon_generator(NconKind::Cartan(u, t), params)?.scale(&c))
        }
    }
}

/// ncon of an arbitrary element of the 2k-label algebra.
pub fn ncon_of(x: &DefiningMatrix<Q>, params: &ModelParams) -> Result<SparseOperator<Q>> {
    let form = BilinearForm::label_form(params);
    let coords = decompose(x, &form).ok_or_else(|| Error::Domain("matrix is not in the label algebra".into()))?;
    let mut acc = SparseOperator::zero(params.dim());
    for ((p, q), c) in coords {
        acc = acc.add(&ncon_ebar(p, q, params)?.scale(&c))?;
    }
    Ok(acc)
}

/// Cartan eigenvalues of a basis state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    /// Eigenvalues of con(ē_pp), p = 1..Ω.
    pub d_side: Vec<Q>,
    /// Eigenvalues of ncon(ē_ττ), τ = 1..k.
    pub k_side: Vec<Q>,
}

pub fn cartan_weights(state: FockState, params: &ModelParams) -> WeightVector {
    let k = params.k();
    let mut d_side = Vec::with_capacity(params.omega());
    for p in 1..=params.omega() as i32 {
        let mut n = 0i128;
        for t in 1..=k {
            if state.occupied(params.mode(p, t).unwrap().bit) {
                n += 1;
            }
            if state.occupied(params.mode(-p, t).unwrap().bit) {
                n -= 1;
            }
        }
        d_side.push(Q::from_integer(n));
    }
    let half = Q::new(params.d() as i128, 2);
    let k_side = (1..=k)
        .map(|t| {
            let lo = (t - 1) * params.d();
            let n = (lo..lo + params.d()).filter(|b| state.occupied(*b)).count();
            half - Q::from_integer(n as i128)
        })
        .collect();
    WeightVector { d_side, k_side }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    D,
    K,
}

/// Labels of the raising generators of one side.
pub fn raising_labels(side: Side, params: &ModelParams) -> Vec<(i32, i32)> {
    match side {
        Side::D => raising_pairs(&BilinearForm::for_params(params)),
        Side::K => raising_pairs(&BilinearForm::label_form(params)),
    }
}

/// Raising operators of one side on Φ.
pub fn raising_set(side: Side, params: &ModelParams) -> Result<Vec<SparseOperator<Q>>> {
    let form = BilinearForm::for_params(params);
    raising_labels(side, params)
        .into_iter()
        .map(|(p, q)| match side {
            Side::D => con_generator(&ebar_on_v::<Q>(p, q, &form)?, params),
            Side::K => ncon_ebar(p, q, params),
        })
        .collect()
}

/// All basis generators of one side on Φ, labelled.
pub fn generator_set(side: Side, params: &ModelParams) -> Result<Vec<((i32, i32), SparseOperator<Q>)>> {
    let form = BilinearForm::for_params(params);
    match side {
        Side::D => ebar_basis(&form)
            .into_iter()
            .map(|(p, q)| Ok(((p, q), con_generator(&ebar_on_v::<Q>(p, q, &form)?, params)?)))
            .collect(),
        Side::K => ebar_basis(&BilinearForm::label_form(params))
            .into_iter()
            .map(|(p, q)| Ok(((p, q), ncon_ebar(p, q, params)?)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockState;
    use crate::operator::FockVector;
    use crate::scalar::{q, qi};

    fn om(d: usize, k: usize) -> ModelParams {
        ModelParams::new(d, k, Family::Orthogonal).unwrap()
    }

    fn sp(d: usize, k: usize) -> ModelParams {
        ModelParams::new(d, k, Family::Symplectic).unwrap()
    }

    #[test]
    fn ebar_examples() {
        let f3 = BilinearForm::new(3, Family::Orthogonal).unwrap();
        let e11: DefiningMatrix<i64> = ebar_on_v(1, 1, &f3).unwrap();
        assert_eq!(e11.get(1, 1), 1);
        assert_eq!(e11.get(-1, -1), -1);
        assert!(ebar_on_v::<i64>(0, 0, &f3).unwrap().is_zero());
        let f2 = BilinearForm::new(2, Family::Symplectic).unwrap();
        let e = ebar_on_v::<i64>(1, -1, &f2).unwrap();
        assert_eq!(e.get(1, -1), 2);
        assert!(ebar_on_v::<i64>(3, 1, &f3).is_err());
        assert!(BilinearForm::new(3, Family::Symplectic).is_err());
    }

    #[test]
    fn ebar_elements_preserve_the_form() {
        for (d, fam) in [(3, Family::Orthogonal), (4, Family::Orthogonal), (4, Family::Symplectic), (6, Family::Symplectic)] {
            let form = BilinearForm::new(d, fam).unwrap();
            for &p in form.labels() {
                for &q in form.labels() {
                    let e: DefiningMatrix<Q> = ebar_on_v(p, q, &form).unwrap();
                    assert!(e.satisfies_form(&form), "{d} {fam:?} ({p},{q})");
                }
            }
            let dim_alg = ebar_basis(&form).len();
            let expect = match fam {
                Family::Orthogonal => d * (d - 1) / 2,
                Family::Symplectic => d * (d + 1) / 2,
            };
            assert_eq!(dim_alg, expect);
        }
    }

    #[test]
    fn con_examples() {
        let m = om(3, 2);
        let form = BilinearForm::for_params(&m);
        let zero = con_generator(&DefiningMatrix::<Q>::zero(&m.labels()), &m).unwrap();
        assert!(zero.is_zero());
        let h = con_generator(&ebar_on_v::<Q>(1, 1, &form).unwrap(), &m).unwrap();
        assert!(h.apply(&FockVector::basis(0)).is_empty());
    }

    #[test]
    fn con_is_a_homomorphism() {
        for m in [om(3, 2), om(4, 1), sp(4, 2)] {
            let form = BilinearForm::for_params(&m);
            let basis = ebar_basis(&form);
            for &(p, q) in &basis {
                for &(r, s) in &basis {
                    let x: DefiningMatrix<Q> = ebar_on_v(p, q, &form).unwrap();
                    let y: DefiningMatrix<Q> = ebar_on_v(r, s, &form).unwrap();
                    let lhs = con_generator(&x.commutator(&y), &m).unwrap();
                    let cx = con_generator(&x, &m).unwrap();
                    let cy = con_generator(&y, &m).unwrap();
                    assert_eq!(lhs, cx.commutator(&cy).unwrap());
                }
            }
        }
    }

    #[test]
    fn ncon_examples() {
        let m = om(3, 2);
        let vac = FockVector::basis(0);
        let c11 = ncon_generator(NconKind::Cartan(1, 1), &m).unwrap();
        assert_eq!(c11.apply(&vac), vac.scale(&q(3, 2)));
        let pa = ncon_generator(NconKind::PairAnnihilate(1, 2), &m).unwrap();
        assert!(pa.apply(&vac).is_empty());
        assert!(ncon_generator(NconKind::Cartan(0, 1), &m).is_err());
    }

    #[test]
    fn ncon_matches_label_algebra_structure_constants() {
        for m in [om(1, 2), om(2, 2), om(3, 2), om(1, 3), sp(2, 2), sp(2, 3), sp(4, 1)] {
            let form = BilinearForm::label_form(&m);
            let basis = ebar_basis(&form);
            for &(p, q) in &basis {
                for &(r, s) in &basis {
                    let x: DefiningMatrix<Q> = ebar_on_v(p, q, &form).unwrap();
                    let y: DefiningMatrix<Q> = ebar_on_v(r, s, &form).unwrap();
                    let lhs = ncon_of(&x.commutator(&y), &m).unwrap();
                    let rhs = ncon_ebar(p, q, &m)
                        .unwrap()
                        .commutator(&ncon_ebar(r, s, &m).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "{m:?} [{p},{q}] [{r},{s}]");
                }
            }
        }
    }

    #[test]
    fn weights_examples() {
        let m = om(3, 2);
        let vac = cartan_weights(FockState::VACUUM, &m);
        assert_eq!(vac.d_side, vec![qi(0)]);
        assert_eq!(vac.k_side, vec![q(3, 2), q(3, 2)]);
        let full = cartan_weights(FockState((1 << 6) - 1), &m);
        assert_eq!(full.k_side, vec![q(-3, 2), q(-3, 2)]);
        let one = cartan_weights(FockState(1 << m.mode(1, 1).unwrap().bit), &m);
        assert_eq!(one.d_side, vec![qi(1)]);
        assert_eq!(one.k_side, vec![q(1, 2), q(3, 2)]);
    }

    #[test]
    fn weights_are_cartan_eigenvalues() {
        let m = om(4, 2);
        let form = BilinearForm::for_params(&m);
        let hs: Vec<_> = (1..=2)
            .map(|p| con_generator(&ebar_on_v::<Q>(p, p, &form).unwrap(), &m).unwrap())
            .collect();
        let ks: Vec<_> = (1..=2).map(|t| ncon_ebar(t, t, &m).unwrap()).collect();
        for s in 0..m.dim() as u32 {
            let w = cartan_weights(FockState(s), &m);
            let v = FockVector::basis(s);
            for (h, x) in hs.iter().zip(&w.d_side) {
                assert_eq!(h.apply(&v), v.scale(x));
            }
            for (h, x) in ks.iter().zip(&w.k_side) {
                assert_eq!(h.apply(&v), v.scale(x));
            }
        }
    }

    #[test]
    fn raising_examples() {
        assert!(raising_set(Side::D, &om(2, 2)).unwrap().is_empty());
        assert_eq!(raising_labels(Side::K, &sp(2, 1)), vec![(1, -1)]);
        let m = om(3, 2);
        let vac = FockVector::basis(0);
        for ((p, q), op) in raising_labels(Side::K, &m).into_iter().zip(raising_set(Side::K, &m).unwrap()) {
            if p > 0 && q < 0 {
                assert!(op.apply(&vac).is_empty());
            }
        }
    }

    #[test]
    fn commutant_small() {
        for m in [om(3, 2), sp(4, 1), om(2, 3)] {
            let ds = generator_set(Side::D, &m).unwrap();
            let ks = generator_set(Side::K, &m).unwrap();
            for (_, x) in &ds {
                for (_, y) in &ks {
                    assert!(x.commutator(y).unwrap().is_zero());
                }
            }
        }
    }
}
