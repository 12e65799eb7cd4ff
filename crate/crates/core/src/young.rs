//! Highest weights, group diagrams, Weyl dimensions and frame-pair enumeration.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::fock::{Family, ModelParams};
use crate::lie::WeightVector;
use crate::scalar::{fmt_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightFamily {
    /// o(2Ω+1)
    OOdd,
    /// o(2Ω)
    OEven,
    /// sp(2Ω)
    Sp,
}

impl WeightFamily {
    pub fn d_side(params: &ModelParams) -> Self {
        match (params.family(), params.d() % 2) {
            (Family::Symplectic, _) => WeightFamily::Sp,
            (Family::Orthogonal, 1) => WeightFamily::OOdd,
            _ => WeightFamily::OEven,
        }
    }

    pub fn k_side(params: &ModelParams) -> Self {
        match params.family() {
            Family::Orthogonal => WeightFamily::OEven,
            Family::Symplectic => WeightFamily::Sp,
        }
    }

    pub fn algebra_name(self, rank: usize) -> String {
        match self {
            WeightFamily::OOdd => format!("o({})", 2 * rank + 1),
            WeightFamily::OEven => format!("o({})", 2 * rank),
            WeightFamily::Sp => format!("sp({})", 2 * rank),
        }
    }
}

/// λ_1..λ_Ω, bottom row first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HighestWeight {
    family: WeightFamily,
    entries: Vec<Q>,
}

impl HighestWeight {
    pub fn new(family: WeightFamily, entries: Vec<Q>) -> Self {
        HighestWeight { family, entries }
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn entries(&self) -> &[Q] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn name(&self) -> String {
        self.family.algebra_name(self.rank())
    }

    pub fn with_first_negated(&self) -> Self {
        let mut e = self.entries.clone();
        if let Some(x) = e.first_mut() {
            *x = -*x;
        }
        HighestWeight::new(self.family, e)
    }

    pub fn is_valid(&self) -> bool {
        validate_highest_weight(self)
    }
}

fn is_half_odd(x: &Q) -> bool {
    *x.denom() == 2
}

pub fn validate_highest_weight(hw: &HighestWeight) -> bool {
    let e = &hw.entries;
    if e.iter().any(|x| *x.denom() > 2) {
        return false;
    }
    let halves = e.iter().filter(|x| is_half_odd(x)).count();
    if halves != 0 && (halves != e.len() || hw.family == WeightFamily::Sp) {
        return false;
    }
    let Some(first) = e.first() else {
        return true;
    };
    let first_ok = match hw.family {
        WeightFamily::OEven => true,
        _ => !first.is_negative(),
    };
    first_ok && e.windows(2).all(|w| w[0].abs() <= w[1])
}

/// Dimension of the irreducible module with this highest weight.
pub fn weyl_dimension(hw: &HighestWeight) -> Result<BigUint> {
    if !hw.is_valid() {
        return domain(format!("invalid highest weight {:?}", hw.entries));
    }
    let n = hw.rank();
    // doubled shifted coordinates; the ratios are scale-free
    let shift = match hw.family {
        WeightFamily::OOdd => 1,
        WeightFamily::Sp => 2,
        WeightFamily::OEven => 0,
    };
    let two = Q::from_integer(2);
    let mu: Vec<i128> = hw.entries.iter().rev().map(|x| (x * two).to_integer()).collect();
    let l: Vec<BigInt> = (0..n)
        .map(|i| BigInt::from(mu[i] + 2 * (n - 1 - i) as i128 + shift))
        .collect();
    let m: Vec<BigInt> = (0..n).map(|i| BigInt::from(2 * (n - 1 - i) as i128 + shift)).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= &l[i] * &l[i] - &l[j] * &l[j];
            den *= &m[i] * &m[i] - &m[j] * &m[j];
        }
        if hw.family != WeightFamily::OEven {
            num *= &l[i];
            den *= &m[i];
        }
    }
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() || quot.is_negative() {
        return domain("non-integral Weyl dimension");
    }
    Ok(quot.magnitude().clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    O { d: usize },
    Pin { k: usize },
}

impl GroupKind {
    /// N in "first-column depths summing to N".
    pub fn bound(self) -> usize {
        match self {
            GroupKind::O { d } => d,
            GroupKind::Pin { k } => 2 * k,
        }
    }

    pub fn name(self) -> String {
        match self {
            GroupKind::O { d } => format!("O({d})"),
            GroupKind::Pin { k } => format!("Pin({})", 2 * k),
        }
    }
}

/// Row lengths bottom to top; empty rows are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupDiagram {
    group: GroupKind,
    rows: Vec<Q>,
}

/// Column depths of a diagram given by integral rows.
pub fn depths_from_rows(rows: &[usize]) -> Vec<usize> {
    let longest = rows.iter().copied().max().unwrap_or(0);
    (1..=longest).map(|c| rows.iter().filter(|&&r| r >= c).count()).collect()
}

/// Bottom-to-top rows of a diagram given by column depths.
pub fn rows_from_depths(depths: &[usize]) -> Vec<usize> {
    let tall = depths.iter().copied().max().unwrap_or(0);
    (1..=tall).rev().map(|r| depths.iter().filter(|&&c| c >= r).count()).collect()
}

/// λ_p for p = 1..rank, from column depths no deeper than `rank`.
pub fn weight_from_depths(depths: &[usize], rank: usize) -> Vec<Q> {
    (1..=rank)
        .map(|p| Q::from_integer(depths.iter().filter(|&&c| c > rank - p).count() as i128))
        .collect()
}

impl GroupDiagram {
    pub fn new(group: GroupKind, rows: Vec<Q>) -> Result<Self> {
        let g = GroupDiagram { group, rows };
        if g.is_valid() {
            Ok(g)
        } else {
            Err(Error::InvalidLabel(format!("{} rows {:?}", group.name(), g.rows_text())))
        }
    }

    pub fn from_depths(group: GroupKind, depths: &[usize]) -> Result<Self> {
        let rows = rows_from_depths(depths)
            .into_iter()
            .map(|r| Q::from_integer(r as i128))
            .collect();
        Self::new(group, rows)
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn rows(&self) -> &[Q] {
        &self.rows
    }

    fn rows_text(&self) -> Vec<String> {
        self.rows.iter().map(fmt_q).collect()
    }

    pub fn is_half_integral(&self) -> bool {
        self.rows.iter().any(is_half_odd)
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn cell_count(&self) -> Q {
        self.rows.iter().sum()
    }

    /// Empty for half-integral diagrams.
    pub fn column_depths(&self) -> Vec<usize> {
        if self.is_half_integral() {
            return Vec::new();
        }
        let rows: Vec<usize> = self.rows.iter().map(|r| r.to_integer() as usize).collect();
        depths_from_rows(&rows)
    }

    pub fn is_valid(&self) -> bool {
        if self.rows.iter().any(|r| !r.is_positive() || *r.denom() > 2) {
            return false;
        }
        if self.rows.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        let halves = self.rows.iter().filter(|r| is_half_odd(r)).count();
        if halves > 0 {
            return matches!(self.group, GroupKind::Pin { k } if halves == self.rows.len() && halves == k);
        }
        let n = self.group.bound();
        let depths = self.column_depths();
        let first = depths.first().copied().unwrap_or(0);
        let second = depths.get(1).copied().unwrap_or(0);
        first <= n && first + second <= n
    }

    /// Replaces the first column depth λ̃₁ by N − λ̃₁.
    pub fn associated(&self) -> Result<Self> {
        if self.is_half_integral() {
            return domain("association needs integral rows");
        }
        let mut depths = self.column_depths();
        let n = self.group.bound();
        match depths.first_mut() {
            Some(x) => *x = n - *x,
            None => depths.push(n),
        }
        while depths.last() == Some(&0) {
            depths.pop();
        }
        if depths.windows(2).any(|w| w[0] < w[1]) {
            return domain("associated diagram breaks the column rule");
        }
        Self::from_depths(self.group, &depths)
    }

    pub fn is_self_associated(&self) -> bool {
        !self.is_half_integral() && 2 * self.column_depths().first().copied().unwrap_or(0) == self.group.bound()
    }

    /// Highest weight of the shallower member of the associated pair.
    pub fn algebra_weight(&self) -> Result<HighestWeight> {
        match self.group {
            GroupKind::O { d } => {
                let omega = d / 2;
                let mut depths = self.column_depths();
                if depths.first().is_some_and(|&x| 2 * x > d) {
                    depths = self.associated()?.column_depths();
                }
                let fam = if d % 2 == 1 { WeightFamily::OOdd } else { WeightFamily::OEven };
                Ok(HighestWeight::new(fam, weight_from_depths(&depths, omega)))
            }
            GroupKind::Pin { k } => {
                if self.is_half_integral() {
                    return Ok(HighestWeight::new(WeightFamily::OEven, self.rows.clone()));
                }
                let mut depths = self.column_depths();
                if depths.first().is_some_and(|&x| x > k) {
                    depths = self.associated()?.column_depths();
                }
                Ok(HighestWeight::new(WeightFamily::OEven, weight_from_depths(&depths, k)))
            }
        }
    }

    /// Whether the restriction to the connected algebra splits into ± first entry.
    pub fn splits(&self) -> bool {
        match self.group {
            GroupKind::O { .. } => self.is_self_associated(),
            GroupKind::Pin { k } => self.is_half_integral() || self.row_count() == k,
        }
    }

    pub fn name(&self) -> String {
        self.group.name()
    }
}

/// Label attached to one side of a frame pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Weight(HighestWeight),
    Diagram(GroupDiagram),
}

impl Label {
    pub fn name(&self) -> String {
        match self {
            Label::Weight(w) => w.name(),
            Label::Diagram(g) => g.name(),
        }
    }

    pub fn rows(&self) -> &[Q] {
        match self {
            Label::Weight(w) => w.entries(),
            Label::Diagram(g) => g.rows(),
        }
    }
}

/// Dimension of the module labelled by `label`; `reducible` doubles a plain weight.
pub fn module_dimension(label: &Label, reducible: bool) -> Result<BigUint> {
    match label {
        Label::Weight(w) => {
            let dim = weyl_dimension(w)?;
            Ok(if reducible { dim * 2u32 } else { dim })
        }
        Label::Diagram(g) => {
            if !g.is_valid() {
                return Err(Error::InvalidLabel(g.name()));
            }
            let dim = weyl_dimension(&g.algebra_weight()?)?;
            Ok(if g.splits() { dim * 2u32 } else { dim })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Duality {
    SpSp,
    OO,
    BigOO,
    OPin,
}

impl Duality {
    pub const ALL: [Duality; 4] = [Duality::SpSp, Duality::OO, Duality::BigOO, Duality::OPin];

    pub fn name(self) -> &'static str {
        match self {
            Duality::SpSp => "sp-sp",
            Duality::OO => "o-o",
            Duality::BigOO => "O-o",
            Duality::OPin => "o-Pin",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|d| d.name() == s)
    }

    pub fn family(self) -> Family {
        match self {
            Duality::SpSp => Family::Symplectic,
            _ => Family::Orthogonal,
        }
    }
}

/// Which frame-filling state φ a highest weight vector is.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiShape {
    /// Column depths, one per kind τ = 1..k.
    pub depths: Vec<usize>,
    /// Bottom row moved to the next label below.
    pub lowered: bool,
}

impl PhiShape {
    pub fn new(depths: Vec<usize>) -> Self {
        PhiShape { depths, lowered: false }
    }

    pub fn first(&self) -> usize {
        self.depths.first().copied().unwrap_or(0)
    }

    pub fn cells(&self) -> usize {
        self.depths.iter().sum()
    }

    /// First column depth replaced by d − depth.
    pub fn associated(&self, d: usize) -> Self {
        let mut depths = self.depths.clone();
        if let Some(x) = depths.first_mut() {
            *x = d - *x;
        }
        PhiShape { depths, lowered: false }
    }

    pub fn toggled(&self) -> Self {
        PhiShape {
            depths: self.depths.clone(),
            lowered: !self.lowered,
        }
    }

    /// (−)^{nd + λ̃₁(d−λ̃₁) + Ω}
    pub fn sigma_sign(&self, d: usize) -> i8 {
        let e = self.cells() * d + self.first() * (d - self.first()) + d / 2;
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Expected action of the reflection r.
    pub fn r_action(&self, d: usize) -> Action {
        let twice = 2 * self.first();
        if twice == d {
            Action::MapsTo { target: self.toggled(), sign: 1 }
        } else if twice < d {
            Action::Eigen(1)
        } else {
            Action::Eigen(-1)
        }
    }

    /// Expected action of σ from the associated-diagram sign rule.
    pub fn sigma_action(&self, d: usize) -> Action {
        if self.lowered {
            Action::Eigen(-1)
        } else if 2 * self.first() == d {
            Action::Eigen(1)
        } else {
            Action::MapsTo {
                target: self.associated(d),
                sign: self.sigma_sign(d),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    Eigen(i8),
    MapsTo { target: PhiShape, sign: i8 },
}

/// How Definition-1 style Pin labels are classified by their row count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PinClass {
    BelowK,
    ExactlyK,
    AboveK,
    HalfIntegral,
}

/// One predicted joint highest weight vector of a frame pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedVector {
    pub weight: WeightVector,
    pub shape: PhiShape,
    /// Reflection r on V, orthogonal families only.
    pub r: Option<Action>,
    /// σ = ρ(s), orthogonal families only.
    pub sigma: Option<Action>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramePair {
    pub duality: Duality,
    pub d_label: Label,
    pub k_label: Label,
    pub dim_d: BigUint,
    pub dim_k: BigUint,
    pub d_reducible: bool,
    pub k_reducible: bool,
    pub pin_class: Option<PinClass>,
    pub vectors: Vec<ExpectedVector>,
}

/// Non-increasing sequences of length `len` with entries ≤ `max` and
/// first + second ≤ `pair_bound`.
pub fn depth_sequences(len: usize, max: usize, pair_bound: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, cap: usize, pair_bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let cap = if cur.len() == 1 { cap.min(pair_bound - cur[0]) } else { cap };
        for x in 0..=cap {
            cur.push(x);
            go(len, x, pair_bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, pair_bound, &mut Vec::new(), &mut out);
    out
}

fn half(d: usize) -> Q {
    Q::new(d as i128, 2)
}

fn k_weight_of(d: usize, depths: &[usize]) -> Vec<Q> {
    depths.iter().map(|&x| half(d) - Q::from_integer(x as i128)).collect()
}

fn negate_first(v: &[Q]) -> Vec<Q> {
    let mut v = v.to_vec();
    if let Some(x) = v.first_mut() {
        *x = -*x;
    }
    v
}

fn vector(d_side: Vec<Q>, k_side: Vec<Q>, shape: PhiShape, d: usize, orth: bool) -> ExpectedVector {
    ExpectedVector {
        weight: WeightVector { d_side, k_side },
        r: orth.then(|| shape.r_action(d)),
        sigma: orth.then(|| shape.sigma_action(d)),
        shape,
    }
}

/// The complete label-pair list of one duality.
pub fn enumerate_frame_pairs(params: &ModelParams, duality: Duality) -> Result<Vec<FramePair>> {
    if params.family() != duality.family() {
        return Err(Error::FamilyMismatch(format!(
            "{} needs the {:?} family",
            duality.name(),
            duality.family()
        )));
    }
    let (d, k, omega) = (params.d(), params.k(), params.omega());
    let dfam = WeightFamily::d_side(params);
    let kfam = WeightFamily::k_side(params);
    let mut pairs = Vec::new();
    match duality {
        Duality::SpSp | Duality::OO => {
            let orth = duality == Duality::OO;
            for depths in depth_sequences(k, omega, 2 * omega) {
                let lam = weight_from_depths(&depths, omega);
                let w = k_weight_of(d, &depths);
                let shape = PhiShape::new(depths.clone());
                let d_red = orth && d % 2 == 0 && depths[0] == omega;
                let k_red = orth && !d_red;
                let mut vectors = vec![vector(lam.clone(), w.clone(), shape.clone(), d, orth)];
                if d_red {
                    vectors.push(vector(negate_first(&lam), w.clone(), shape.toggled(), d, orth));
                } else if k_red {
                    vectors.push(vector(lam.clone(), negate_first(&w), shape.associated(d), d, orth));
                }
                let d_label = Label::Weight(HighestWeight::new(dfam, lam));
                let k_label = Label::Weight(HighestWeight::new(kfam, w));
                pairs.push(FramePair {
                    duality,
                    dim_d: module_dimension(&d_label, d_red)?,
                    dim_k: module_dimension(&k_label, k_red)?,
                    d_label,
                    k_label,
                    d_reducible: d_red,
                    k_reducible: k_red,
                    pin_class: None,
                    vectors,
                });
            }
        }
        Duality::BigOO => {
            for depths in depth_sequences(k, d, d) {
                let diag = GroupDiagram::from_depths(GroupKind::O { d }, &depths)?;
                let lam = diag.algebra_weight()?.entries().to_vec();
                let w = k_weight_of(d, &depths);
                let shape = PhiShape::new(depths.clone());
                let mut vectors = vec![vector(lam.clone(), w.clone(), shape.clone(), d, true)];
                if 2 * depths[0] == d {
                    vectors.push(vector(negate_first(&lam), w.clone(), shape.toggled(), d, true));
                }
                let d_label = Label::Diagram(diag);
                let k_label = Label::Weight(HighestWeight::new(kfam, w));
                pairs.push(FramePair {
                    duality,
                    dim_d: module_dimension(&d_label, false)?,
                    dim_k: module_dimension(&k_label, false)?,
                    d_label,
                    k_label,
                    d_reducible: false,
                    k_reducible: false,
                    pin_class: None,
                    vectors,
                });
            }
        }
        Duality::OPin if d % 2 == 0 => {
            for cols in depth_sequences(omega, 2 * k, 2 * k) {
                let pin = GroupDiagram::from_depths(GroupKind::Pin { k }, &cols)?;
                let lam: Vec<Q> = cols.iter().map(|&c| Q::from_integer(k as i128 - c as i128)).collect();
                let w = pin.algebra_weight()?.entries().to_vec();
                let shape_depths: Vec<usize> = w.iter().map(|x| omega - x.to_integer() as usize).collect();
                let shape = PhiShape::new(shape_depths);
                let rows = pin.row_count();
                let (class, vectors) = if rows < k {
                    let mut v = vector(lam.clone(), w.clone(), shape, d, true);
                    v.sigma = Some(Action::Eigen(1));
                    (PinClass::BelowK, vec![v])
                } else if rows > k {
                    let mut v = vector(lam.clone(), w.clone(), shape.toggled(), d, true);
                    v.sigma = Some(Action::Eigen(-1));
                    (PinClass::AboveK, vec![v])
                } else {
                    let assoc = shape.associated(d);
                    let mut a = vector(lam.clone(), w.clone(), shape.clone(), d, true);
                    let mut b = vector(lam.clone(), negate_first(&w), assoc.clone(), d, true);
                    a.sigma = Some(Action::MapsTo { target: assoc.clone(), sign: shape.sigma_sign(d) });
                    b.sigma = Some(Action::MapsTo { target: shape.clone(), sign: assoc.sigma_sign(d) });
                    (PinClass::ExactlyK, vec![a, b])
                };
                let d_label = Label::Weight(HighestWeight::new(dfam, lam));
                let k_label = Label::Diagram(pin);
                pairs.push(FramePair {
                    duality,
                    dim_d: module_dimension(&d_label, false)?,
                    dim_k: module_dimension(&k_label, false)?,
                    d_label,
                    k_label,
                    d_reducible: false,
                    k_reducible: false,
                    pin_class: Some(class),
                    vectors,
                });
            }
        }
        Duality::OPin => {
            // k half-integral rows ½..d/2, non-decreasing upward
            for hs in depth_sequences(k, omega, 2 * omega) {
                let hs: Vec<usize> = hs.into_iter().rev().collect();
                let w: Vec<Q> = hs.iter().map(|&h| Q::from_integer(h as i128) + Q::new(1, 2)).collect();
                let lam: Vec<Q> = (1..=omega)
                    .map(|p| Q::from_integer(hs.iter().filter(|&&h| h < p).count() as i128))
                    .collect();
                let shape = PhiShape::new(hs.iter().map(|&h| omega - h).collect());
                let assoc = shape.associated(d);
                let mut a = vector(lam.clone(), w.clone(), shape.clone(), d, true);
                let mut b = vector(lam.clone(), negate_first(&w), assoc.clone(), d, true);
                a.sigma = Some(Action::MapsTo { target: assoc.clone(), sign: shape.sigma_sign(d) });
                b.sigma = Some(Action::MapsTo { target: shape.clone(), sign: assoc.sigma_sign(d) });
                let pin = GroupDiagram::new(GroupKind::Pin { k }, w)?;
                let d_label = Label::Weight(HighestWeight::new(dfam, lam));
                let k_label = Label::Diagram(pin);
                pairs.push(FramePair {
                    duality,
                    dim_d: module_dimension(&d_label, false)?,
                    dim_k: module_dimension(&k_label, false)?,
                    d_label,
                    k_label,
                    d_reducible: false,
                    k_reducible: false,
                    pin_class: Some(PinClass::HalfIntegral),
                    vectors: vec![a, b],
                });
            }
        }
    }
    Ok(pairs)
}

/// Σ dim_d · dim_k over the pair list.
pub fn dimension_sum(pairs: &[FramePair]) -> BigUint {
    pairs.iter().map(|p| &p.dim_d * &p.dim_k).sum()
}
