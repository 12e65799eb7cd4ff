//! Reflection r, basis change t, Fock lifts, the Pin(2k) image σ and the states φ_λ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::fock::{apply_bit, FieldOp, Family, FockState, ModelParams};
use crate::lie::DefiningMatrix;
use crate::linalg;
use crate::operator::{FockVector, SparseOperator};
use crate::scalar::{Amplitude, Field, Ring, Q};
use crate::young::PhiShape;

fn require_orthogonal(params: &ModelParams) -> Result<()> {
    match params.family() {
        Family::Orthogonal => Ok(()),
        Family::Symplectic => Err(Error::FamilyMismatch("needs the orthogonal family".into())),
    }
}

/// r = −e₀₀ + Σ_{p≠0} e_pp for odd d; e_{1,−1} + e_{−1,1} + Σ_{p≠±1} e_pp for even d.
pub fn reflection_r(params: &ModelParams) -> Result<DefiningMatrix<Q>> {
    require_orthogonal(params)?;
    let labels = params.labels();
    let odd = params.d() % 2 == 1;
    Ok(DefiningMatrix::from_fn(&labels, |p, q| {
        let v = if odd {
            match (p, q) {
                (0, 0) => -1,
                _ if p == q => 1,
                _ => 0,
            }
        } else if p.abs() == 1 && q == -p {
            1
        } else if p == q && p.abs() != 1 {
            1
        } else {
            0
        };
        Q::from_integer(v)
    }))
}

/// ⟨q|t|p⟩ taking the δ-form basis to the b-form basis.
pub fn basis_change_t(params: &ModelParams) -> DefiningMatrix<Amplitude> {
    let labels = params.labels();
    let h = Amplitude::sqrt_half();
    let ih = Amplitude::i() * h.clone();
    DefiningMatrix::from_fn(&labels, |q, p| {
        if p > 0 {
            if q == p {
                h.clone()
            } else if q == -p {
                ih.clone()
            } else {
                Amplitude::zero()
            }
        } else if p == 0 {
            if q == 0 {
                Amplitude::one()
            } else {
                Amplitude::zero()
            }
        } else if q == -p {
            h.clone()
        } else if q == p {
            -ih.clone()
        } else {
            Amplitude::zero()
        }
    })
}

/// Linear map on the span of all d·k creation operators:
/// a†_i ↦ Σ_j a†_j M_ji.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeMatrix<S> {
    cols: Vec<Vec<(usize, S)>>,
}

impl<S: Ring> ModeMatrix<S> {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let cols = (0..n)
            .map(|i| (0..n).map(|j| (j, f(j, i))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        ModeMatrix { cols }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |j, i| if i == j { S::one() } else { S::zero() })
    }

    pub fn diagonal(n: usize, f: impl Fn(usize) -> S) -> Self {
        Self::from_fn(n, |j, i| if i == j { f(i) } else { S::zero() })
    }

    /// The same matrix g on V for every kind.
    pub fn per_kind(g: &DefiningMatrix<S>, params: &ModelParams) -> Result<Self> {
        if g.labels() != params.labels().as_slice() {
            return domain("matrix labels do not match the model");
        }
        let labels = params.labels();
        let d = params.d();
        Ok(Self::from_fn(params.modes(), |j, i| {
            if j / d != i / d {
                S::zero()
            } else {
                g.get(labels[j % d], labels[i % d])
            }
        }))
    }

    pub fn size(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, j: usize, i: usize) -> S {
        self.cols[i]
            .iter()
            .find(|(r, _)| *r == j)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(S::zero)
    }

    fn dense(&self) -> Vec<Vec<S>> {
        let n = self.size();
        (0..n).map(|j| (0..n).map(|i| self.get(j, i)).collect()).collect()
    }

    /// self · rhs.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.size();
        let cols = rhs
            .cols
            .iter()
            .map(|col| {
                let mut acc = vec![S::zero(); n];
                for (k, b) in col {
                    for (j, a) in &self.cols[*k] {
                        acc[*j] = acc[*j].clone() + a.clone() * b.clone();
                    }
                }
                acc.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        ModeMatrix { cols }
    }

    /// Image of a basis state a†_{b1}…a†_{bn}|⟩ (ascending bits).
    pub fn apply_state(&self, state: FockState) -> FockVector<S> {
        let mut terms: BTreeMap<u32, S> = BTreeMap::new();
        terms.insert(0, S::one());
        let occ: Vec<usize> = state.bits().collect();
        for &b in occ.iter().rev() {
            let mut next: BTreeMap<u32, S> = BTreeMap::new();
            for (s, amp) in &terms {
                for (j, v) in &self.cols[b] {
                    if let Some((sign, out)) = apply_bit(FieldOp::Create, *j, FockState(*s)) {
                        let t = amp.clone() * v.clone();
                        let t = if sign > 0 { t } else { -t };
                        let e = next.entry(out.0).or_insert_with(S::zero);
                        *e = e.clone() + t;
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            terms = next;
        }
        FockVector::from_entries(terms)
    }

    pub fn apply(&self, v: &FockVector<S>) -> FockVector<S> {
        let mut out = FockVector::zero();
        for (i, x) in v.iter() {
            for (j, y) in self.apply_state(FockState(i)).iter() {
                out.add_at(j, y.clone() * x.clone());
            }
        }
        out
    }

    /// The module action on Φ; columns are computed in parallel.
    pub fn lift(&self) -> SparseOperator<S> {
        let dim = 1usize << self.size();
        let cols = (0..dim as u32)
            .into_par_iter()
            .map(|s| self.apply_state(FockState(s)).iter().map(|(i, v)| (i, v.clone())).collect())
            .collect();
        SparseOperator::from_columns(dim, cols)
    }
}

impl<F: Field> ModeMatrix<F> {
    pub fn inverse(&self) -> Result<Self> {
        let inv = linalg::invert(&self.dense()).ok_or(Error::Singular)?;
        Ok(Self::from_fn(self.size(), |j, i| inv[j][i].clone()))
    }
}

/// Fock lift of g acting on every kind; fails for singular g.
pub fn lift_to_fock<F: Field>(g: &DefiningMatrix<F>, params: &ModelParams) -> Result<SparseOperator<F>> {
    if g.determinant().is_zero() {
        return Err(Error::Singular);
    }
    Ok(ModeMatrix::per_kind(g, params)?.lift())
}

fn kind_check(tau0: usize, params: &ModelParams) -> Result<()> {
    if tau0 == 0 || tau0 > params.k() {
        return domain(format!("kind {tau0} out of range 1..{}", params.k()));
    }
    Ok(())
}

fn field_i64(op: FieldOp, bit: usize, params: &ModelParams) -> SparseOperator<i64> {
    let cols = (0..params.dim() as u32)
        .map(|s| match apply_bit(op, bit, FockState(s)) {
            Some((sign, out)) => vec![(out.0, sign as i64)],
            None => Vec::new(),
        })
        .collect();
    SparseOperator::from_columns(params.dim(), cols)
}

/// Σ_τ (α_τ a†_τ + β_τ a_τ) in the one-mode algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct OneModeReflection<S> {
    pub terms: Vec<(usize, S, S)>,
}

impl<S: Ring> OneModeReflection<S> {
    /// s = a†_τ − a_τ.
    pub fn standard(tau: usize) -> Self {
        OneModeReflection {
            terms: vec![(tau, S::one(), -S::one())],
        }
    }

    /// s² as a scalar: Σ_τ α_τ β_τ.
    pub fn square(&self) -> S {
        self.terms
            .iter()
            .fold(S::zero(), |acc, (_, a, b)| acc + a.clone() * b.clone())
    }

    /// The image s_p under a_τ ↦ a_{pτ}.
    pub fn at(&self, p: i32, params: &ModelParams) -> Result<SparseOperator<S>> {
        let mut acc = SparseOperator::zero(params.dim());
        for (tau, a, b) in &self.terms {
            let bit = params.mode(p, *tau)?.bit;
            let cr = field_i64(FieldOp::Create, bit, params).map(|x| S::from_i64(*x));
            let an = field_i64(FieldOp::Annihilate, bit, params).map(|x| S::from_i64(*x));
            acc = acc.add(&cr.scale(a))?.add(&an.scale(b))?;
        }
        Ok(acc)
    }
}

/// ρ(s) = i^Ω ∏_{p=Ω}^{−Ω} s_p in the δ-form basis.
pub fn rho_reflection(s: &OneModeReflection<Amplitude>, params: &ModelParams) -> Result<SparseOperator<Amplitude>> {
    if s.square() != -Amplitude::one() {
        return domain("s² must equal −1");
    }
    let mut acc = SparseOperator::identity(params.dim()).scale(&Amplitude::i_pow(params.omega() as i64));
    let mut labels = params.labels();
    labels.reverse();
    for p in labels {
        acc = acc.compose(&s.at(p, params)?)?;
    }
    Ok(acc)
}

/// ρ on an even word s₁s₂⋯ of one-mode reflections: ∏_p (s₁)_p(s₂)_p⋯.
pub fn rho_spin<S: Ring>(word: &[OneModeReflection<S>], params: &ModelParams) -> Result<SparseOperator<S>> {
    if word.len() % 2 == 1 {
        return Err(Error::OddWord);
    }
    if word.iter().any(|s| s.square() != -S::one()) {
        return domain("every letter must square to −1");
    }
    let mut acc = SparseOperator::identity(params.dim());
    for p in params.labels() {
        for s in word {
            acc = acc.compose(&s.at(p, params)?)?;
        }
    }
    Ok(acc)
}

/// σ for s = a†_{τ0} − a_{τ0}, built literally in the δ-form basis.
pub fn sigma_delta(tau0: usize, params: &ModelParams) -> Result<SparseOperator<Amplitude>> {
    require_orthogonal(params)?;
    kind_check(tau0, params)?;
    rho_reflection(&OneModeReflection::standard(tau0), params)
}

/// σ in the b-form basis from its exchange relations; a signed permutation.
pub fn sigma_exchange(tau0: usize, params: &ModelParams) -> Result<SparseOperator<i64>> {
    require_orthogonal(params)?;
    kind_check(tau0, params)?;
    let d = params.d();
    let sd: i64 = if d % 2 == 0 { 1 } else { -1 };
    let mut labels = params.labels();
    labels.reverse();
    // (−)^Ω ∏_{p=Ω}^{−Ω} a†_{p,τ0}|⟩
    let mut filled = FockState::VACUUM;
    let mut sign: i64 = if params.omega() % 2 == 0 { 1 } else { -1 };
    for &p in labels.iter().rev() {
        let (s, out) = apply_bit(FieldOp::Create, params.mode(p, tau0)?.bit, filled).expect("empty mode");
        sign *= s as i64;
        filled = out;
    }
    let images: Vec<(FieldOp, usize)> = (0..params.modes())
        .map(|b| {
            let m = params.mode_of_bit(b);
            if m.tau == tau0 {
                (FieldOp::Annihilate, params.mode(-m.p, tau0).unwrap().bit)
            } else {
                (FieldOp::Create, b)
            }
        })
        .collect();
    let cols = (0..params.dim() as u32)
        .into_par_iter()
        .map(|c| {
            let st = FockState(c);
            let occ: Vec<usize> = st.bits().collect();
            let mut s = if occ.len() % 2 == 1 { sign * sd } else { sign };
            let mut cur = filled;
            for &b in occ.iter().rev() {
                let (op, bit) = images[b];
                match apply_bit(op, bit, cur) {
                    Some((x, out)) => {
                        s *= x as i64;
                        cur = out;
                    }
                    None => return Vec::new(),
                }
            }
            vec![(cur.0, s)]
        })
        .collect();
    Ok(SparseOperator::from_columns(params.dim(), cols))
}

/// σ in the b-form basis as lift(t⁻¹)·σ_δ·lift(t).
pub fn sigma_conjugated(tau0: usize, params: &ModelParams) -> Result<SparseOperator<Amplitude>> {
    let t = ModeMatrix::per_kind(&basis_change_t(params), params)?;
    let ti = t.inverse()?;
    ti.lift().compose(&sigma_delta(tau0, params)?)?.compose(&t.lift())
}

/// lift(t⁻¹)·σ_δ·lift(t) applied to one vector without forming the matrices.
pub fn sigma_conjugated_apply(
    tau0: usize,
    params: &ModelParams,
    sigma_delta_op: &SparseOperator<Amplitude>,
    v: &FockVector<Amplitude>,
) -> Result<FockVector<Amplitude>> {
    let t = ModeMatrix::per_kind(&basis_change_t(params), params)?;
    kind_check(tau0, params)?;
    let ti = t.inverse()?;
    Ok(ti.apply(&sigma_delta_op.apply(&t.apply(v))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaBasis {
    Delta,
    B,
}

pub fn sigma_op(tau0: usize, params: &ModelParams, basis: SigmaBasis) -> Result<SparseOperator<Amplitude>> {
    match basis {
        SigmaBasis::Delta => sigma_delta(tau0, params),
        SigmaBasis::B => Ok(sigma_exchange(tau0, params)?.map(|x| Amplitude::integer(*x))),
    }
}

/// The cells (p, τ) of φ in reading order: rows from p = Ω downward, cells left to right.
pub fn phi_cells(shape: &PhiShape, params: &ModelParams) -> Result<Vec<(i32, usize)>> {
    let mut labels = params.labels();
    labels.reverse();
    let d = params.d();
    if shape.depths.len() > params.k() {
        return domain("diagram has more columns than kinds");
    }
    let rows = shape.first();
    if rows > d || (shape.lowered && (rows == 0 || rows >= d)) {
        return domain("diagram does not fit the frame");
    }
    let mut out = Vec::new();
    for r in 0..rows {
        let bottom = r + 1 == rows;
        let p = if shape.lowered && bottom { labels[r + 1] } else { labels[r] };
        for (tau, &depth) in shape.depths.iter().enumerate() {
            if depth > r {
                out.push((p, tau + 1));
            }
        }
    }
    Ok(out)
}

/// φ as (sign, basis state): ∏ a†_{pτ}|⟩ in reading order.
pub fn phi_state(shape: &PhiShape, params: &ModelParams) -> Result<(i64, FockState)> {
    let cells = phi_cells(shape, params)?;
    let mut st = FockState::VACUUM;
    let mut sign = 1i64;
    for (p, tau) in cells.into_iter().rev() {
        let (s, out) = apply_bit(FieldOp::Create, params.mode(p, tau)?.bit, st)
            .ok_or_else(|| Error::Domain("cell occupied twice".into()))?;
        sign *= s as i64;
        st = out;
    }
    Ok((sign, st))
}

pub fn phi_lambda<S: Ring>(shape: &PhiShape, params: &ModelParams) -> Result<FockVector<S>> {
    let (sign, st) = phi_state(shape, params)?;
    Ok(FockVector::from_entries([(st.0, S::from_i64(sign))]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::field_operator;
    use crate::lie::{con_generator, ebar_basis, ebar_on_v, BilinearForm};
    use crate::scalar::qi;

    fn om(d: usize, k: usize) -> ModelParams {
        ModelParams::new(d, k, Family::Orthogonal).unwrap()
    }

    fn amp(op: &SparseOperator<i64>) -> SparseOperator<Amplitude> {
        op.map(|x| Amplitude::integer(*x))
    }

    #[test]
    fn reflection_examples() {
        let r1 = reflection_r(&om(1, 1)).unwrap();
        assert_eq!(r1.get(0, 0), qi(-1));
        let r3 = reflection_r(&om(3, 1)).unwrap();
        assert_eq!(r3.get(0, 0), qi(-1));
        assert_eq!(r3.get(1, 1), qi(1));
        for d in 1..7 {
            let r = reflection_r(&om(d, 1)).unwrap();
            let id = DefiningMatrix::identity(r.labels());
            assert_eq!(r.mul(&r), id);
            assert_eq!(r.determinant(), qi(-1));
            let form = BilinearForm::new(d, Family::Orthogonal).unwrap();
            assert!(r.preserves_form(&form));
        }
        assert!(reflection_r(&ModelParams::new(2, 1, Family::Symplectic).unwrap()).is_err());
    }

    #[test]
    fn t_examples() {
        let t1 = basis_change_t(&om(1, 1));
        assert_eq!(t1, DefiningMatrix::identity(&[0]));
        assert_eq!(basis_change_t(&om(3, 1)).determinant(), -Amplitude::i());
        // t turns the identity form into the b-form
        for d in 2..6 {
            let t = basis_change_t(&om(d, 1));
            let g = t.transpose().mul(&t);
            for p in t.labels().to_vec() {
                for q in t.labels().to_vec() {
                    let v = g.get(p, q);
                    if p == -q && p != 0 {
                        assert_eq!(v, Amplitude::one(), "{d} {p} {q}");
                    } else if p == q && p == 0 {
                        assert_eq!(v, Amplitude::one());
                    } else {
                        assert!(v.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn lift_is_multiplicative() {
        let m = om(3, 2);
        let t = basis_change_t(&m);
        let r = reflection_r(&m).unwrap().map(|x| Amplitude::rational(*x));
        let lt = lift_to_fock(&t, &m).unwrap();
        let lr = lift_to_fock(&r, &m).unwrap();
        let ltr = lift_to_fock(&t.mul(&r), &m).unwrap();
        assert_eq!(lt.compose(&lr).unwrap(), ltr);
        assert_eq!(lr.compose(&lr).unwrap(), SparseOperator::identity(m.dim()));
        let id = DefiningMatrix::<Q>::identity(&m.labels());
        assert_eq!(lift_to_fock(&id, &m).unwrap(), SparseOperator::identity(m.dim()));
        let sing = DefiningMatrix::<Q>::zero(&m.labels());
        assert_eq!(lift_to_fock(&sing, &m), Err(Error::Singular));
        let v = FockVector::basis(0b101101);
        let tt = ModeMatrix::per_kind(&t, &m).unwrap();
        assert_eq!(tt.apply(&tt.apply(&v)), tt.mul(&tt).apply(&v));
    }

    #[test]
    fn lift_transports_field_operators() {
        // lift(g) a†_i lift(g)⁻¹ = Σ_j a†_j g_ji
        let m = om(2, 2);
        let g = ModeMatrix::per_kind(&basis_change_t(&m), &m).unwrap();
        let lg = g.lift();
        let lgi = g.inverse().unwrap().lift();
        for i in 0..m.modes() {
            let lhs = lg
                .compose(&amp(&field_operator(FieldOp::Create, m.mode_of_bit(i), &m)))
                .unwrap()
                .compose(&lgi)
                .unwrap();
            let mut rhs = SparseOperator::zero(m.dim());
            for j in 0..m.modes() {
                let c = amp(&field_operator(FieldOp::Create, m.mode_of_bit(j), &m));
                rhs = rhs.add(&c.scale(&g.get(j, i))).unwrap();
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sigma_small_examples() {
        let m = om(1, 1);
        let s = sigma_delta(1, &m).unwrap();
        // a† − a on the 2-dim space
        assert_eq!(s.get(1, 0), Amplitude::one());
        assert_eq!(s.get(0, 1), -Amplitude::one());
        let sb = sigma_exchange(1, &m).unwrap();
        assert_eq!(sb.apply_basis(0), FockVector::from_entries([(1, 1)]));
    }

    #[test]
    fn sigma_square_and_vacuum() {
        for d in 1..=5 {
            for k in 1..=2 {
                let m = om(d, k);
                let sd: i64 = if d % 2 == 0 { 1 } else { -1 };
                let s = sigma_exchange(1, &m).unwrap();
                assert_eq!(s.compose(&s).unwrap(), SparseOperator::identity(m.dim()).scale(&sd));
                let sdel = sigma_delta(1, &m).unwrap();
                let sdel2 = sdel.compose(&sdel).unwrap();
                assert_eq!(sdel2, SparseOperator::identity(m.dim()).scale(&Amplitude::integer(sd)));
            }
        }
    }

    #[test]
    fn exchange_and_conjugated_sigma_agree() {
        for d in 1..=5 {
            for k in 1..=2 {
                let m = om(d, k);
                for tau in 1..=k {
                    let conj = sigma_conjugated(tau, &m).unwrap();
                    assert_eq!(conj, amp(&sigma_exchange(tau, &m).unwrap()), "d={d} k={k} tau={tau}");
                }
            }
        }
    }

    #[test]
    fn lemma_commutation() {
        for d in 1..=5 {
            let m = om(d, 2);
            let s = sigma_exchange(1, &m).unwrap().map(|x| qi(*x as i128));
            let form = BilinearForm::for_params(&m);
            for (p, q) in ebar_basis(&form) {
                let x = con_generator(&ebar_on_v::<Q>(p, q, &form).unwrap(), &m).unwrap();
                assert!(s.commutator(&x).unwrap().is_zero());
            }
            let r = lift_to_fock(&reflection_r(&m).unwrap(), &m).unwrap();
            assert!(s.anticommutator(&r).unwrap().is_zero());
        }
    }

    #[test]
    fn rho_word_examples() {
        let m = om(3, 2);
        let empty: Vec<OneModeReflection<Amplitude>> = vec![];
        assert_eq!(rho_spin(&empty, &m).unwrap(), SparseOperator::identity(m.dim()));
        let s = OneModeReflection::<Amplitude>::standard(1);
        let minus_one = rho_spin(&[s.clone(), s.clone()], &m).unwrap();
        assert_eq!(minus_one, SparseOperator::identity(m.dim()).scale(&Amplitude::integer(-1)));
        assert_eq!(rho_spin(&[s.clone()], &m), Err(Error::OddWord));
        let s2 = OneModeReflection::<Amplitude>::standard(2);
        let prod = sigma_delta(2, &m).unwrap().compose(&sigma_delta(1, &m).unwrap()).unwrap();
        assert_eq!(prod, rho_spin(&[s2, s], &m).unwrap());
    }

    #[test]
    fn phi_examples() {
        let m = om(3, 2);
        let v: FockVector<i64> = phi_lambda(&PhiShape::new(vec![0, 0]), &m).unwrap();
        assert_eq!(v, FockVector::basis(0));
        let v: FockVector<i64> = phi_lambda(&PhiShape::new(vec![1]), &m).unwrap();
        assert_eq!(v, FockVector::basis(1 << m.mode(1, 1).unwrap().bit));
        assert!(phi_lambda::<i64>(&PhiShape::new(vec![1, 1, 1]), &m).is_err());
        assert!(phi_lambda::<i64>(&PhiShape::new(vec![4]), &m).is_err());
        let cells = phi_cells(&PhiShape { depths: vec![2, 1], lowered: true }, &m).unwrap();
        assert_eq!(cells, vec![(1, 1), (1, 2), (-1, 1)]);
    }
}
