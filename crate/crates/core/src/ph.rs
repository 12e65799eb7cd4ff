//! Angular momenta, quasispin and particle-hole conjugations on an atomic or nucleonic l-shell.

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::fock::{apply_bit, FieldOp, Family, FockState, ModelParams};
use crate::lie::{bilinear_operator, con_generator, DefiningMatrix};
use crate::operator::{FockVector, SparseOperator};
use crate::pin::{rho_spin, sigma_delta, sigma_exchange, ModeMatrix, OneModeReflection};
use crate::report::Check;
use crate::scalar::{Amplitude, Field, Q};

type Op = SparseOperator<Amplitude>;

/// Kind structure of the shell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShellKinds {
    /// τ = 1, 2 ↔ m_s = +½, −½.
    Spin,
    /// τ = 1..4 ↔ (n↑, n↓, p↑, p↓).
    SpinIsospin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShellParams {
    l: usize,
    kinds: ShellKinds,
}

impl ShellParams {
    pub fn new(l: usize, kinds: ShellKinds) -> Self {
        ShellParams { l, kinds }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn d(&self) -> usize {
        2 * self.l + 1
    }

    pub fn k(&self) -> usize {
        match self.kinds {
            ShellKinds::Spin => 2,
            ShellKinds::SpinIsospin => 4,
        }
    }

    pub fn model(&self) -> Result<ModelParams> {
        ModelParams::new(self.d(), self.k(), Family::Orthogonal)
    }

    /// Kind index of (spin up?, nucleon type 0/1).
    fn kind(&self, up: bool, nucleon: usize) -> usize {
        2 * nucleon + if up { 1 } else { 2 }
    }
}

fn amp(x: i64) -> Amplitude {
    Amplitude::integer(x)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Matrices of l_z, l_+, l_− on V in the |m⟩ basis (labels m = −l..l).
pub fn orbital_matrices(l: usize) -> [DefiningMatrix<Amplitude>; 3] {
    let li = l as i64;
    let labels: Vec<i32> = (-(l as i32)..=l as i32).collect();
    let lz = DefiningMatrix::from_fn(&labels, |p, q| if p == q { amp(p as i64) } else { Amplitude::zero() });
    let ladder = |m: i64| Amplitude::sqrt_of(Q::from_integer(((li - m) * (li + m + 1)) as i128));
    let lp = DefiningMatrix::from_fn(&labels, |p, q| if p == q + 1 { ladder(q as i64) } else { Amplitude::zero() });
    let lm = lp.transpose();
    [lz, lp, lm]
}

fn half() -> Amplitude {
    Amplitude::rational(Q::new(1, 2))
}

/// x = (+ + −)/2, y = (+ − −)/2i.
fn cartesian(plus: &Op, minus: &Op) -> Result<(Op, Op)> {
    let x = plus.add(minus)?.scale(&half());
    let y = plus.sub(minus)?.scale(&(half() * -Amplitude::i()));
    Ok((x, y))
}

/// Σ_{ij} a†_i M_ij a_j over mode bits.
pub fn one_body(params: &ModelParams, entries: &[(usize, usize, Amplitude)]) -> Op {
    let terms: Vec<_> = entries
        .iter()
        .map(|(i, j, v)| (FieldOp::Create, *i, FieldOp::Annihilate, *j, v.clone()))
        .collect();
    bilinear_operator(params, &terms)
}

/// Cartesian components (x, y, z) plus raising and lowering parts.
#[derive(Clone, Debug)]
pub struct VectorOp {
    pub x: Op,
    pub y: Op,
    pub z: Op,
    pub plus: Op,
    pub minus: Op,
}

impl VectorOp {
    fn from_ladder(z: Op, plus: Op, minus: Op) -> Result<Self> {
        let (x, y) = cartesian(&plus, &minus)?;
        Ok(VectorOp { x, y, z, plus, minus })
    }

    pub fn components(&self) -> [&Op; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(VectorOp {
            x: self.x.add(&o.x)?,
            y: self.y.add(&o.y)?,
            z: self.z.add(&o.z)?,
            plus: self.plus.add(&o.plus)?,
            minus: self.minus.add(&o.minus)?,
        })
    }
}

/// Spin-like operator coupling kinds `up` and `down` with equal m_l.
fn two_level(params: &ModelParams, pairs: &[(usize, usize)]) -> Result<VectorOp> {
    let mut z = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for &(up, down) in pairs {
        for p in params.labels() {
            let u = params.mode(p, up)?.bit;
            let d = params.mode(p, down)?.bit;
            z.push((u, u, half()));
            z.push((d, d, -half()));
            plus.push((u, d, Amplitude::one()));
            minus.push((d, u, Amplitude::one()));
        }
    }
    VectorOp::from_ladder(one_body(params, &z), one_body(params, &plus), one_body(params, &minus))
}

/// Total orbital angular momentum L, total spin S and fermion number n.
pub struct AngularMomenta {
    pub l: VectorOp,
    pub s: VectorOp,
    pub n: Op,
}

pub fn angular_momenta(shell: &ShellParams) -> Result<AngularMomenta> {
    let params = shell.model()?;
    let [lz, lp, lm] = orbital_matrices(shell.l());
    let l = VectorOp::from_ladder(
        con_generator(&lz, &params)?,
        con_generator(&lp, &params)?,
        con_generator(&lm, &params)?,
    )?;
    let spin_pairs: Vec<(usize, usize)> = (0..shell.k() / 2).map(|t| (shell.kind(true, t), shell.kind(false, t))).collect();
    let s = two_level(&params, &spin_pairs)?;
    let all: Vec<_> = (0..params.modes()).map(|b| (b, b, Amplitude::one())).collect();
    Ok(AngularMomenta {
        l,
        s,
        n: one_body(&params, &all),
    })
}

/// Total isospin of the nucleonic shell.
pub fn isospin(shell: &ShellParams) -> Result<VectorOp> {
    if shell.kinds != ShellKinds::SpinIsospin {
        return domain("isospin needs four kinds");
    }
    let params = shell.model()?;
    two_level(&params, &[(shell.kind(true, 0), shell.kind(true, 1)), (shell.kind(false, 0), shell.kind(false, 1))])
}

fn require_spin(shell: &ShellParams) -> Result<ModelParams> {
    if shell.kinds != ShellKinds::Spin {
        return domain("needs the spin-½ shell with two kinds");
    }
    shell.model()
}

/// Q_z = ½(n − d), Q_+ = Σ (−)^{l+m_l} a†_{m_l↑} a†_{−m_l↓}, Q_− its adjoint.
pub fn quasispin_q(shell: &ShellParams) -> Result<VectorOp> {
    let params = require_spin(shell)?;
    let l = shell.l() as i64;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for m in params.labels() {
        let eta = amp(sign(l + m as i64));
        let a = params.mode(m, 1)?.bit;
        let b = params.mode(-m, 2)?.bit;
        plus.push((FieldOp::Create, a, FieldOp::Create, b, eta.clone()));
        minus.push((FieldOp::Annihilate, b, FieldOp::Annihilate, a, eta));
    }
    let all: Vec<_> = (0..params.modes()).map(|b| (b, b, Amplitude::one())).collect();
    let n = one_body(&params, &all);
    let z = n
        .sub(&Op::identity(params.dim()).scale(&amp(shell.d() as i64)))?
        .scale(&half());
    VectorOp::from_ladder(z, bilinear_operator(&params, &plus), bilinear_operator(&params, &minus))
}

/// σ_{τ0} in the |m⟩ basis, |m⟩ = i^{l+|m|+1}|p⟩.
pub fn sigma_m(tau0: usize, l: usize, params: &ModelParams) -> Result<Op> {
    let sb = sigma_exchange(tau0, params)?;
    let phase = |st: u32| -> Amplitude {
        let e: i64 = FockState(st)
            .bits()
            .map(|b| -((l + params.mode_of_bit(b).p.unsigned_abs() as usize + 1) as i64))
            .sum();
        Amplitude::i_pow(e)
    };
    let cols = (0..params.dim() as u32)
        .map(|c| {
            let pc = phase(c).inv().expect("unit phase");
            sb.column(c as usize)
                .iter()
                .map(|(r, v)| (*r, phase(*r) * amp(*v) * pc.clone()))
                .collect()
        })
        .collect();
    Ok(SparseOperator::from_columns(params.dim(), cols))
}

/// Lift of a†_{up} ↦ −a†_{down}, a†_{down} ↦ a†_{up} for every m_l and each pair.
fn rotation_lift(params: &ModelParams, pairs: &[(usize, usize)], inverse: bool) -> Result<Op> {
    let n = params.modes();
    let mut img: Vec<(usize, i64)> = (0..n).map(|b| (b, 1)).collect();
    for &(up, down) in pairs {
        for p in params.labels() {
            let u = params.mode(p, up)?.bit;
            let d = params.mode(p, down)?.bit;
            if inverse {
                img[u] = (d, 1);
                img[d] = (u, -1);
            } else {
                img[u] = (d, -1);
                img[d] = (u, 1);
            }
        }
    }
    let mm = ModeMatrix::from_fn(n, |j, i| if img[i].0 == j { amp(img[i].1) } else { Amplitude::zero() });
    Ok(mm.lift())
}

/// exp iπS_y from its action on creation operators.
pub fn spin_rotation_f(shell: &ShellParams) -> Result<Op> {
    let params = shell.model()?;
    let pairs: Vec<(usize, usize)> = (0..shell.k() / 2).map(|t| (shell.kind(true, t), shell.kind(false, t))).collect();
    rotation_lift(&params, &pairs, false)
}

/// The isospin analogue of F, or its inverse.
pub fn isospin_rotation(shell: &ShellParams, inverse: bool) -> Result<Op> {
    if shell.kinds != ShellKinds::SpinIsospin {
        return domain("isospin needs four kinds");
    }
    let params = shell.model()?;
    let pairs = [(shell.kind(true, 0), shell.kind(true, 1)), (shell.kind(false, 0), shell.kind(false, 1))];
    rotation_lift(&params, &pairs, inverse)
}

/// Projector onto "both empty or both occupied" for two modes.
fn pair_parity_projector(params: &ModelParams, a: usize, b: usize) -> Op {
    Op::diagonal(params.dim(), |s| {
        let st = FockState(s as u32);
        if st.occupied(a) == st.occupied(b) {
            Amplitude::one()
        } else {
            Amplitude::zero()
        }
    })
}

/// exp(π/2 K) = 1 + K − P on a pair block with K² = −P.
fn block_rotation(k: &Op, p: &Op) -> Result<Op> {
    Op::identity(k.dim()).add(k)?.sub(p)
}

/// The four conjugations of the spin-½ shell.
pub struct Conjugations {
    pub sigma_up: Op,
    pub sigma_down: Op,
    pub c1: Op,
    pub f: Op,
    pub c2: Op,
    pub c3: Op,
}

pub fn conjugation_ops(shell: &ShellParams) -> Result<Conjugations> {
    let params = require_spin(shell)?;
    conjugations_for(shell, &params, 0)
}

fn conjugations_for(shell: &ShellParams, params: &ModelParams, nucleon: usize) -> Result<Conjugations> {
    let (up, down) = (shell.kind(true, nucleon), shell.kind(false, nucleon));
    let sigma_up = sigma_m(up, shell.l(), params)?;
    let sigma_down = sigma_m(down, shell.l(), params)?;
    let c1 = sigma_down.compose(&sigma_up)?;
    let f = rotation_lift(params, &[(up, down)], false)?;
    let c2 = f.compose(&c1)?;
    let l = shell.l() as i64;
    let mut c3 = Op::identity(params.dim());
    for m in params.labels() {
        let a = params.mode(m, up)?.bit;
        let b = params.mode(-m, down)?.bit;
        let eta = amp(sign(l + m as i64));
        let k = bilinear_operator(
            params,
            &[
                (FieldOp::Create, a, FieldOp::Create, b, eta.clone()),
                (FieldOp::Annihilate, b, FieldOp::Annihilate, a, -eta),
            ],
        );
        c3 = c3.compose(&block_rotation(&k, &pair_parity_projector(params, a, b))?)?;
    }
    Ok(Conjugations {
        sigma_up,
        sigma_down,
        c1,
        f,
        c2,
        c3,
    })
}

/// ⟨l m_l; ½ m_s | j, m_l + m_s⟩ with 2j = `j2`, 2m_s = `ms2`.
pub fn cg_half_coupling(l: usize, j2: usize, ml: i64, ms2: i64) -> Result<Amplitude> {
    let li = l as i64;
    if ml.abs() > li || ms2.abs() != 1 || (j2 as i64 != 2 * li + 1 && j2 as i64 != 2 * li - 1) {
        return domain(format!("invalid coupling l={l} 2j={j2} m_l={ml} 2m_s={ms2}"));
    }
    let m2 = 2 * ml + ms2;
    // (l ± m + ½)/(2l + 1) with doubled m
    let plus = Q::new((2 * li + m2 + 1) as i128, (2 * (2 * li + 1)) as i128);
    let minus = Q::new((2 * li - m2 + 1) as i128, (2 * (2 * li + 1)) as i128);
    let stretched = j2 as i64 == 2 * li + 1;
    Ok(match (stretched, ms2 > 0) {
        (true, true) => Amplitude::sqrt_of(plus),
        (true, false) => Amplitude::sqrt_of(minus),
        (false, true) => -Amplitude::sqrt_of(minus),
        (false, false) => Amplitude::sqrt_of(plus),
    })
}

/// b†_{jm} = Σ CG · a†_{m_l m_s} as field operators; 2m = `m2`.
fn coupled_field(shell: &ShellParams, params: &ModelParams, j2: usize, m2: i64, op: FieldOp) -> Result<Op> {
    let mut terms = Vec::new();
    for ms2 in [1i64, -1] {
        let ml2 = m2 - ms2;
        let ml = ml2 / 2;
        if ml.unsigned_abs() as usize > shell.l() {
            continue;
        }
        let c = cg_half_coupling(shell.l(), j2, ml, ms2)?;
        if c.is_zero() {
            continue;
        }
        let tau = if ms2 > 0 { 1 } else { 2 };
        terms.push((params.mode(ml as i32, tau)?.bit, c));
    }
    let cols = (0..params.dim() as u32)
        .map(|s| {
            terms
                .iter()
                .filter_map(|(bit, c)| {
                    apply_bit(op, *bit, FockState(s)).map(|(sg, out)| (out.0, if sg > 0 { c.clone() } else { -c.clone() }))
                })
                .collect()
        })
        .collect();
    Ok(SparseOperator::from_columns(params.dim(), cols))
}

/// Creation and annihilation operators of the j-coupled modes, indexed by 2m ascending.
pub struct CoupledModes {
    pub j2: usize,
    pub m2: Vec<i64>,
    pub create: Vec<Op>,
    pub annihilate: Vec<Op>,
}

pub fn coupled_modes(shell: &ShellParams, j2: usize) -> Result<CoupledModes> {
    let params = require_spin(shell)?;
    let m2: Vec<i64> = (0..=j2 as i64).map(|i| -(j2 as i64) + 2 * i).collect();
    let mut create = Vec::new();
    let mut annihilate = Vec::new();
    for &m in &m2 {
        create.push(coupled_field(shell, &params, j2, m, FieldOp::Create)?);
        annihilate.push(coupled_field(shell, &params, j2, m, FieldOp::Annihilate)?);
    }
    Ok(CoupledModes {
        j2,
        m2,
        create,
        annihilate,
    })
}

impl CoupledModes {
    fn index(&self, m2: i64) -> usize {
        self.m2.iter().position(|&x| x == m2).expect("m in range")
    }

    /// G_m = (−)^{j−m}(b†_m b†_{−m} − b_{−m} b_m).
    fn pair_generator(&self, m2: i64) -> Result<Op> {
        let (i, j) = (self.index(m2), self.index(-m2));
        let eta = amp(sign((self.j2 as i64 - m2) / 2));
        let cc = self.create[i].compose(&self.create[j])?;
        let aa = self.annihilate[j].compose(&self.annihilate[i])?;
        Ok(cc.sub(&aa)?.scale(&eta))
    }

    fn number(&self, m2: i64) -> Result<Op> {
        let i = self.index(m2);
        self.create[i].compose(&self.annihilate[i])
    }

    /// Q_y^{(j)} = −(i/2) Σ_{m>0} G_m.
    pub fn quasispin_y(&self) -> Result<Op> {
        let dim = self.create[0].dim();
        let mut acc = Op::zero(dim);
        for &m in self.m2.iter().filter(|&&m| m > 0) {
            acc = acc.add(&self.pair_generator(m)?)?;
        }
        Ok(acc.scale(&(half() * -Amplitude::i())))
    }

    /// Q_y^{(j)} with the sum running over every m, as first written down.
    pub fn quasispin_y_all_m(&self) -> Result<Op> {
        let dim = self.create[0].dim();
        let mut acc = Op::zero(dim);
        for &m in &self.m2 {
            acc = acc.add(&self.pair_generator(m)?)?;
        }
        Ok(acc.scale(&(half() * -Amplitude::i())))
    }

    /// ∏_{m=j}^{−j} b†_m |⟩.
    pub fn closed_shell(&self) -> Result<FockVector<Amplitude>> {
        let mut v = FockVector::basis(0);
        for op in self.create.iter() {
            v = op.apply(&v);
        }
        Ok(v)
    }
}

/// C₃^{(j)} = exp iπQ_y^{(j)} = ∏_{m>0}(1 + G_m − P_m).
pub fn perj_conjugation(shell: &ShellParams, j2: usize) -> Result<Op> {
    let modes = coupled_modes(shell, j2)?;
    perj_from_modes(&modes)
}

fn perj_from_modes(modes: &CoupledModes) -> Result<Op> {
    let dim = modes.create[0].dim();
    let id = Op::identity(dim);
    let mut acc = id.clone();
    for &m in modes.m2.iter().filter(|&&m| m > 0) {
        let g = modes.pair_generator(m)?;
        let (na, nb) = (modes.number(m)?, modes.number(-m)?);
        let p = id.sub(&na)?.compose(&id.sub(&nb)?)?.add(&na.compose(&nb)?)?;
        acc = acc.compose(&block_rotation(&g, &p)?)?;
    }
    Ok(acc)
}

/// Product of per-kind conjugations with an optional rotation factor on the left.
pub fn product_conjugation(ops: &[Op], rotation: Option<&Op>) -> Result<Op> {
    let Some(first) = ops.first() else {
        return domain("no factors");
    };
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            if !a.commutator(b)?.is_zero() {
                return Err(Error::NonCommuting("per-kind conjugations".into()));
            }
        }
    }
    let mut acc = first.clone();
    for op in &ops[1..] {
        acc = acc.compose(op)?;
    }
    match rotation {
        Some(r) => r.compose(&acc),
        None => Ok(acc),
    }
}

/// Bell's C on a single j-shell with one kind, 2j = `j2`:
/// C|⟩ = ∏_{m=j}^{−j} a†_m|⟩ and C a†_m = (−)^{j+m} a_{−m} C.
pub fn bell_c(j2: usize) -> Result<(ModelParams, SparseOperator<i64>)> {
    let params = ModelParams::new(j2 + 1, 1, Family::Orthogonal)?;
    let n = params.modes();
    // bit i ↔ m = −j + i
    let mut closed = FockState::VACUUM;
    let mut csign = 1i64;
    for b in 0..n {
        // leftmost factor is m = j, so create from m = −j upward
        let (s, out) = apply_bit(FieldOp::Create, b, closed).expect("empty");
        csign *= s as i64;
        closed = out;
    }
    let cols = (0..params.dim() as u32)
        .map(|c| {
            let occ: Vec<usize> = FockState(c).bits().collect();
            let mut s = csign;
            let mut cur = closed;
            for &b in occ.iter().rev() {
                // j + m = b, −m ↔ bit n−1−b
                s *= sign(b as i64);
                match apply_bit(FieldOp::Annihilate, n - 1 - b, cur) {
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
    Ok((params, SparseOperator::from_columns(params.dim(), cols)))
}

fn field(params: &ModelParams, op: FieldOp, p: i32, tau: usize) -> Result<Op> {
    let bit = params.mode(p, tau)?.bit;
    let cols = (0..params.dim() as u32)
        .map(|s| match apply_bit(op, bit, FockState(s)) {
            Some((sg, out)) => vec![(out.0, amp(sg as i64))],
            None => Vec::new(),
        })
        .collect();
    Ok(SparseOperator::from_columns(params.dim(), cols))
}

/// X·A = c·B·X for every listed (A, B, c).
fn intertwines(x: &Op, rel: &[(Op, Op, Amplitude)]) -> Result<bool> {
    for (a, b, c) in rel {
        if x.compose(a)? != b.compose(x)?.scale(c) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn commutes_all(x: &Op, ops: &[&Op]) -> Result<bool> {
    for o in ops {
        if !x.commutator(o)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn describe_ratio(a: &Op, b: &Op) -> String {
    match a.proportionality(b) {
        Some(c) => format!("ratio {c}"),
        None => "not proportional".into(),
    }
}

/// Vector with C_x|⟩ compared to a reference vector.
fn vacuum_detail(v: &FockVector<Amplitude>, reference: &FockVector<Amplitude>) -> String {
    match v.proportionality(reference) {
        Some(c) => format!("ratio {c}"),
        None => "not proportional".into(),
    }
}

/// Closed shell ∏_{m_s=½}^{−½} ∏_{m_l=−l}^{l} a†_{m_l m_s}|⟩.
fn closed_shell(params: &ModelParams) -> Result<FockVector<Amplitude>> {
    let mut cells = Vec::new();
    for tau in [1usize, 2] {
        for m in params.labels() {
            cells.push((m, tau));
        }
    }
    let mut st = FockState::VACUUM;
    let mut s = 1i64;
    for (p, tau) in cells.into_iter().rev() {
        let (x, out) = apply_bit(FieldOp::Create, params.mode(p, tau)?.bit, st).expect("empty");
        s *= x as i64;
        st = out;
    }
    Ok(FockVector::from_entries([(st.0, amp(s))]))
}

/// All particle-hole identities of the spin-½ l-shell.
pub fn ph_check(l: usize) -> Result<Vec<Check>> {
    let shell = ShellParams::new(l, ShellKinds::Spin);
    let params = shell.model()?;
    let li = l as i64;
    let mut out = Vec::new();
    let mut push = |name: &str, pass: bool, detail: Option<String>| out.push(Check::new(name, pass, detail));

    let am = angular_momenta(&shell)?;
    let q = quasispin_q(&shell)?;
    let c = conjugation_ops(&shell)?;
    let vac = FockVector::<Amplitude>::basis(0);
    let dim = params.dim();
    let id = Op::identity(dim);
    let cr = |p: i32, t: usize| field(&params, FieldOp::Create, p, t);
    let an = |p: i32, t: usize| field(&params, FieldOp::Annihilate, p, t);

    // angular momentum algebra
    let mut l_ok = true;
    for v in [&am.l, &am.s] {
        l_ok &= v.x.commutator(&v.y)? == v.z.scale(&Amplitude::i());
        l_ok &= v.y.commutator(&v.z)? == v.x.scale(&Amplitude::i());
        l_ok &= v.z.commutator(&v.x)? == v.y.scale(&Amplitude::i());
    }
    let mut ls = true;
    for a in am.l.components() {
        ls &= commutes_all(a, &am.s.components())?;
    }
    push("angular_momentum_algebra", l_ok && ls, None);

    // quasispin
    let qz_vac = q.z.apply(&vac) == vac.scale(&Amplitude::rational(Q::new(-(shell.d() as i128), 2)));
    push("Qz_vacuum", qz_vac, None);
    let sl2 = q.plus.commutator(&q.minus)? == q.z.scale(&amp(2))
        && q.z.commutator(&q.plus)? == q.plus
        && q.z.commutator(&q.minus)? == q.minus.neg();
    push("Q_sl2_relations", sl2, None);
    let mut qs = true;
    for a in q.components() {
        qs &= commutes_all(a, &am.s.components())?;
    }
    push("Q_commutes_S", qs, None);

    // σ_{±½}
    push("sigma_pm_anticommute", c.sigma_up.anticommutator(&c.sigma_down)?.is_zero(), None);
    let sq = c.sigma_up.compose(&c.sigma_up)? == id.neg() && c.sigma_down.compose(&c.sigma_down)? == id.neg();
    push("sigma_pm_square", sq, None);
    if l <= 1 {
        let rho = rho_spin(
            &[OneModeReflection::standard(2), OneModeReflection::standard(1)],
            &params,
        )?;
        let prod = sigma_delta(2, &params)?.compose(&sigma_delta(1, &params)?)?;
        push("C1_is_rho_of_word", rho == prod, None);
    }

    // C₁
    let mut rel_lit = Vec::new();
    let mut rel_neg = Vec::new();
    for m in params.labels() {
        for t in [1usize, 2] {
            let e = amp(sign(li + m as i64));
            rel_lit.push((cr(m, t)?, an(-m, t)?, e.clone()));
            rel_neg.push((cr(m, t)?, an(-m, t)?, -e));
        }
    }
    let c1_lit = intertwines(&c.c1, &rel_lit)?;
    push(
        "C1_conjugation_relation",
        c1_lit,
        (!c1_lit && intertwines(&c.c1, &rel_neg)?).then(|| "holds with the opposite sign −(−)^{l+m_l}".into()),
    );
    let mut c1l = true;
    for a in am.l.components() {
        c1l &= c.c1.commutator(a)?.is_zero();
    }
    push("C1_commutes_L", c1l, None);

    // F
    let mut f_ok = c.f.apply(&vac) == vac;
    for m in params.labels() {
        f_ok &= c.f.compose(&cr(m, 1)?)? == cr(m, 2)?.compose(&c.f)?.neg();
        f_ok &= c.f.compose(&cr(m, 2)?)? == cr(m, 1)?.compose(&c.f)?;
    }
    push("F_relations", f_ok, None);

    // C₂
    let mut c2_comm = true;
    for a in am.l.components().into_iter().chain(am.s.components()) {
        c2_comm &= c.c2.commutator(a)?.is_zero();
    }
    push("C2_commutes_L_and_S", c2_comm, None);
    let mut racah = Vec::new();
    let mut racah_neg = Vec::new();
    for m in params.labels() {
        for (t, ms2) in [(1usize, 1i64), (2, -1)] {
            // (−)^{l+½+m_l+m_s}
            let e = amp(sign(li + m as i64 + (1 + ms2) / 2));
            racah.push((cr(m, t)?, an(-m, 3 - t)?, e.clone()));
            racah_neg.push((cr(m, t)?, an(-m, 3 - t)?, -e));
        }
    }
    let c2_rel = intertwines(&c.c2, &racah)?;
    push(
        "C2_conjugation_relation",
        c2_rel,
        (!c2_rel && intertwines(&c.c2, &racah_neg)?).then(|| "holds with the opposite sign".into()),
    );
    let c3_rel = intertwines(&c.c3, &racah)?;
    push("C3_conjugation_relation", c3_rel, None);

    // C₃ versus C₂
    let c3c2 = c.c3 == c.c2;
    let parity = Op::diagonal(dim, |s| amp(sign(FockState(s as u32).count() as i64)));
    let detail = if c3c2 {
        None
    } else if c.c3 == c.c2.compose(&parity)? {
        Some("C3 = C2·(−1)^N".into())
    } else {
        Some(describe_ratio(&c.c3, &c.c2))
    };
    push("C3_equals_C2", c3c2, detail);

    // vacuum images
    let f_c1 = c.f.compose(&c.c1)?.apply(&vac);
    let c1_f = c.c1.compose(&c.f)?.apply(&vac);
    let lit = f_c1 == vac && c1_f == vac;
    push(
        "F_C1_vacuum_is_vacuum",
        lit,
        (!lit).then(|| format!("F C1|> vs |>: {}", vacuum_detail(&f_c1, &vac))),
    );
    push("F_C1_vacuum_equals_C1_F_vacuum", f_c1 == c1_f, None);
    let cl = closed_shell(&params)?;
    let expect = cl.scale(&amp(sign(li)));
    let c2v = c.c2.apply(&vac);
    push("C2_vacuum_image", c2v == expect, (c2v != expect).then(|| vacuum_detail(&c2v, &cl)));
    let c3v = c.c3.apply(&vac);
    push("C3_vacuum_image", c3v == expect, (c3v != expect).then(|| vacuum_detail(&c3v, &cl)));

    // C₃ is exp iπQ_y: each pair block obeys K² = −P, KP = K
    let mut blocks = true;
    for m in params.labels() {
        let a = params.mode(m, 1)?.bit;
        let b = params.mode(-m, 2)?.bit;
        let eta = amp(sign(li + m as i64));
        let k = bilinear_operator(
            &params,
            &[
                (FieldOp::Create, a, FieldOp::Create, b, eta.clone()),
                (FieldOp::Annihilate, b, FieldOp::Annihilate, a, -eta),
            ],
        );
        let p = pair_parity_projector(&params, a, b);
        blocks &= k.compose(&k)? == p.neg() && k.compose(&p)? == k && p.compose(&k)? == k;
    }
    let qy_sum = {
        let mut acc = Op::zero(dim);
        for m in params.labels() {
            let a = params.mode(m, 1)?.bit;
            let b = params.mode(-m, 2)?.bit;
            let eta = amp(sign(li + m as i64));
            acc = acc.add(&bilinear_operator(
                &params,
                &[
                    (FieldOp::Create, a, FieldOp::Create, b, eta.clone()),
                    (FieldOp::Annihilate, b, FieldOp::Annihilate, a, -eta),
                ],
            ))?;
        }
        acc.scale(&(half() * -Amplitude::i()))
    };
    push("C3_block_exponential", blocks && qy_sum == q.y, None);

    // per-j operators
    if l > 0 {
        let jtot = am.l.add(&am.s)?;
        let mut product = id.clone();
        let mut qsum = Op::zero(dim);
        let mut literal_sum = Op::zero(dim);
        for j2 in [2 * l + 1, 2 * l - 1] {
            let modes = coupled_modes(&shell, j2)?;
            let cj = perj_from_modes(&modes)?;
            let tag = format!("j={j2}/2");
            let mut rel = Vec::new();
            for (i, &m2) in modes.m2.iter().enumerate() {
                let k = modes.index(-m2);
                rel.push((modes.create[i].clone(), modes.annihilate[k].clone(), amp(sign((j2 as i64 + m2) / 2))));
            }
            push(&format!("perj_{tag}_conjugation_relation"), intertwines(&cj, &rel)?, None);
            let cl = modes.closed_shell()?;
            let extra = amp(sign((j2 as i64 + 1) / 2));
            let img = cj.apply(&vac);
            let ok = img == cl.scale(&extra);
            push(
                &format!("perj_{tag}_vacuum_sign"),
                ok,
                (!ok).then(|| format!("expected sign {extra}, {}", vacuum_detail(&img, &cl))),
            );
            push(&format!("perj_{tag}_commutes_J"), commutes_all(&cj, &jtot.components())?, None);
            product = product.compose(&cj)?;
            qsum = qsum.add(&modes.quasispin_y()?)?;
            literal_sum = literal_sum.add(&modes.quasispin_y_all_m()?)?;
        }
        push("perj_sum_equals_Qy", qsum == q.y, None);
        push(
            "perj_all_m_sum_is_twice_Qy",
            literal_sum == q.y.scale(&amp(2)),
            None,
        );
        push("perj_product_proportional_C3", product.proportionality(&c.c3).is_some(), Some(describe_ratio(&product, &c.c3)));
    }
    Ok(out)
}

/// C² a†_m = (−)^{2j} a†_m C² for Bell's C on a single j-shell.
pub fn bell_square_check(j2: usize) -> Result<Check> {
    let (params, c) = bell_c(j2)?;
    let c2 = c.compose(&c)?;
    let s = sign(j2 as i64);
    let mut ok = true;
    for b in 0..params.modes() {
        let m = params.mode_of_bit(b);
        let a = crate::fock::field_operator::<i64>(FieldOp::Create, m, &params);
        ok &= c2.compose(&a)? == a.compose(&c2)?.scale(&s);
    }
    // the defining relations themselves
    let n = params.modes();
    for b in 0..n {
        let a = crate::fock::field_operator::<i64>(FieldOp::Create, params.mode_of_bit(b), &params);
        let am = crate::fock::field_operator::<i64>(FieldOp::Annihilate, params.mode_of_bit(n - 1 - b), &params);
        ok &= c.compose(&a)? == am.compose(&c)?.scale(&sign(b as i64));
    }
    Ok(Check::new(&format!("bell_C_square_j={j2}/2"), ok, None))
}

/// The nucleonic l-shell: composed conjugation against total spin and isospin.
pub fn nucleon_check(l: usize) -> Result<Vec<Check>> {
    let shell = ShellParams::new(l, ShellKinds::SpinIsospin);
    let params = shell.model()?;
    let am = angular_momenta(&shell)?;
    let t = isospin(&shell)?;
    let neutron = conjugations_for(&shell, &params, 0)?;
    let proton = conjugations_for(&shell, &params, 1)?;
    let mut out = Vec::new();
    let sphere = |c: &Op| -> Result<(bool, bool)> {
        let mut s_ok = true;
        let mut t_ok = true;
        for a in am.s.components() {
            s_ok &= c.commutator(a)?.is_zero();
        }
        for a in t.components() {
            t_ok &= c.commutator(a)?.is_zero();
        }
        Ok((s_ok, t_ok))
    };
    let ft = isospin_rotation(&shell, false)?;
    let composed = product_conjugation(&[neutron.c2.clone(), proton.c2.clone()], Some(&ft))?;
    let (s_ok, t_ok) = sphere(&composed)?;
    let mut l_ok = true;
    for a in am.l.components() {
        l_ok &= composed.commutator(a)?.is_zero();
    }
    let detail = if t_ok {
        None
    } else {
        let inv = product_conjugation(&[neutron.c2.clone(), proton.c2.clone()], Some(&isospin_rotation(&shell, true)?))?;
        let (_, ti) = sphere(&inv)?;
        Some(format!("with the inverse isospin rotation: {}", if ti { "commutes" } else { "does not commute" }))
    };
    out.push(Check::new("composed_commutes_S", s_ok, None));
    out.push(Check::new("composed_commutes_T", t_ok, detail));
    out.push(Check::new("composed_commutes_L", l_ok, None));
    let bare = product_conjugation(&[neutron.c2, proton.c2], None)?;
    let (bs, bt) = sphere(&bare)?;
    out.push(Check::new(
        "uncorrected_product_commutes_T",
        !bt || bs,
        Some(format!("spin {bs}, isospin {bt}")),
    ));
    let vac = FockVector::<Amplitude>::basis(0);
    let img = composed.apply(&vac);
    let full = FockVector::basis((params.dim() - 1) as u32);
    out.push(Check::new(
        "composed_maps_vacuum_to_closed_shell",
        img.proportionality(&full).is_some(),
        None,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn cg_examples() {
        assert_eq!(cg_half_coupling(2, 5, 2, 1).unwrap(), Amplitude::one());
        assert_eq!(cg_half_coupling(1, 3, 0, 1).unwrap(), Amplitude::sqrt_of(q(2, 3)));
        assert!(cg_half_coupling(1, 5, 0, 1).is_err());
        assert!(cg_half_coupling(1, 3, 2, 1).is_err());
        for l in 0..4usize {
            for ml in -(l as i64)..=l as i64 {
                for ms2 in [1, -1] {
                    let mut s = Amplitude::zero();
                    let js = if l == 0 { vec![1] } else { vec![2 * l + 1, 2 * l - 1] };
                    for j2 in js {
                        let c = cg_half_coupling(l, j2, ml, ms2).unwrap();
                        s = s + c.clone() * c;
                    }
                    assert_eq!(s, Amplitude::one(), "l={l} ml={ml} ms2={ms2}");
                }
            }
        }
    }

    #[test]
    fn orbital_examples() {
        let sh = ShellParams::new(0, ShellKinds::Spin);
        let am = angular_momenta(&sh).unwrap();
        assert!(am.l.components().iter().all(|x| x.is_zero()));
        let one = FockVector::<Amplitude>::basis(1);
        let sz = am.s.z.apply(&one);
        assert_eq!(sz, one.scale(&half()));
    }

    #[test]
    fn l_commutation_exact_l1() {
        let am = angular_momenta(&ShellParams::new(1, ShellKinds::Spin)).unwrap();
        assert_eq!(am.l.x.commutator(&am.l.y).unwrap(), am.l.z.scale(&Amplitude::i()));
    }

    #[test]
    fn quasispin_examples() {
        let sh = ShellParams::new(1, ShellKinds::Spin);
        let q = quasispin_q(&sh).unwrap();
        let vac = FockVector::<Amplitude>::basis(0);
        assert_eq!(q.z.apply(&vac), vac.scale(&Amplitude::rational(q_(-3, 2))));
        assert_eq!(q.plus.commutator(&q.minus).unwrap(), q.z.scale(&amp(2)));
        assert!(quasispin_q(&ShellParams::new(1, ShellKinds::SpinIsospin)).is_err());
    }

    fn q_(a: i128, b: i128) -> Q {
        Q::new(a, b)
    }

    #[test]
    fn product_conjugation_examples() {
        let sh = ShellParams::new(0, ShellKinds::Spin);
        let c = conjugation_ops(&sh).unwrap();
        assert_eq!(product_conjugation(&[c.c2.clone()], None).unwrap(), c.c2);
        assert!(product_conjugation(&[], None).is_err());
    }

    #[test]
    fn bell_square() {
        for j2 in 0..6 {
            assert!(bell_square_check(j2).unwrap().pass, "2j={j2}");
        }
    }

    #[test]
    fn ph_suite_l1_known_outcomes() {
        let checks = ph_check(1).unwrap();
        let get = |n: &str| checks.iter().find(|c| c.name == n).unwrap_or_else(|| panic!("{n}")).pass;
        assert!(get("C2_commutes_L_and_S"));
        assert!(get("Q_sl2_relations"));
        assert!(get("Q_commutes_S"));
        assert!(get("C3_conjugation_relation"));
        assert!(get("perj_sum_equals_Qy"));
    }
}
