//! Brute-force joint highest weight oracle and the duality checker built on it.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::fock::{field_operator, Family, FieldOp, FockState, ModelParams};
use crate::lie::{cartan_weights, con_generator, ebar_basis, ebar_on_v, generator_set, raising_set, BilinearForm, Side, WeightVector};
use crate::linalg;
use crate::operator::{FockVector, SparseOperator};
use crate::pin::{lift_to_fock, phi_lambda, reflection_r, rho_spin, sigma_exchange, OneModeReflection};
use crate::report::{Check, DualityReport, PairReport};
use crate::scalar::Q;
use crate::young::{
    dimension_sum, enumerate_frame_pairs, validate_highest_weight, Action, Duality, ExpectedVector, FramePair, HighestWeight,
    PhiShape, WeightFamily,
};

/// A vector annihilated by every raising operator of both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct JointHWVector {
    pub weight: WeightVector,
    pub vector: FockVector<Q>,
    /// Dimension of the joint highest weight space of this weight.
    pub multiplicity: usize,
}

/// Basis states grouped by joint Cartan weight, in weight order.
pub fn weight_blocks(params: &ModelParams) -> BTreeMap<WeightVector, Vec<u32>> {
    let mut blocks: BTreeMap<WeightVector, Vec<u32>> = BTreeMap::new();
    for s in 0..params.dim() as u32 {
        blocks.entry(cartan_weights(FockState(s), params)).or_default().push(s);
    }
    blocks
}

fn block_nullspace(block: &[u32], ops: &[SparseOperator<Q>]) -> Vec<Vec<Q>> {
    let n = block.len();
    let mut rows: BTreeMap<(usize, u32), Vec<Q>> = BTreeMap::new();
    for (oi, op) in ops.iter().enumerate() {
        for (ci, &s) in block.iter().enumerate() {
            for (r, v) in op.column(s as usize) {
                rows.entry((oi, *r)).or_insert_with(|| vec![Q::zero(); n])[ci] += *v;
            }
        }
    }
    linalg::nullspace(rows.into_values().collect(), n)
}

/// All joint highest weight vectors, one per nullspace basis vector, in weight order.
pub fn joint_hw_oracle(params: &ModelParams) -> Result<Vec<JointHWVector>> {
    let mut ops = raising_set(Side::D, params)?;
    ops.extend(raising_set(Side::K, params)?);
    let blocks: Vec<(WeightVector, Vec<u32>)> = weight_blocks(params).into_iter().collect();
    let found: Vec<Vec<JointHWVector>> = blocks
        .par_iter()
        .map(|(w, block)| {
            let ns = block_nullspace(block, &ops);
            let m = ns.len();
            ns.into_iter()
                .map(|v| JointHWVector {
                    weight: w.clone(),
                    vector: FockVector::from_entries(block.iter().copied().zip(v)),
                    multiplicity: m,
                })
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Oracle multiplicity per weight.
pub fn oracle_multiplicities(oracle: &[JointHWVector]) -> BTreeMap<WeightVector, usize> {
    let mut out = BTreeMap::new();
    for v in oracle {
        *out.entry(v.weight.clone()).or_insert(0) += 1;
    }
    out
}

/// [con(x), ncon(Y)] = 0 for every pair of basis generators.
pub fn commutant_check(params: &ModelParams) -> Result<Check> {
    let d_side = generator_set(Side::D, params)?;
    let k_side = generator_set(Side::K, params)?;
    let mut bad = Vec::new();
    for (a, x) in &d_side {
        for (b, y) in &k_side {
            if !x.commutator(y)?.is_zero() {
                bad.push(format!("{a:?}/{b:?}"));
            }
        }
    }
    let n = d_side.len() * k_side.len();
    let detail = if bad.is_empty() {
        format!("{n} pairs")
    } else {
        format!("{} of {n} pairs fail, first {}", bad.len(), bad[0])
    };
    Ok(Check::new("commutant", bad.is_empty(), Some(detail)))
}

fn weight_of(v: &FockVector<Q>, params: &ModelParams) -> Option<WeightVector> {
    let mut it = v.iter().map(|(s, _)| cartan_weights(FockState(s), params));
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}

/// φ is annihilated by all raising operators and carries `weight`.
fn phi_is_hw(shape: &PhiShape, weight: &WeightVector, params: &ModelParams, raising: &[SparseOperator<Q>]) -> Result<bool> {
    let phi = phi_lambda::<Q>(shape, params)?;
    Ok(weight_of(&phi, params).as_ref() == Some(weight) && raising.iter().all(|op| op.apply(&phi).is_empty()))
}

/// Compares X φ_shape with the predicted action, returning the computed scalar.
fn action_matches(
    x: &SparseOperator<Q>,
    shape: &PhiShape,
    expected: &Action,
    params: &ModelParams,
) -> Result<(bool, String)> {
    let phi = phi_lambda::<Q>(shape, params)?;
    let img = x.apply(&phi);
    let (target, sign) = match expected {
        Action::Eigen(s) => (shape.clone(), *s),
        Action::MapsTo { target, sign } => (target.clone(), *sign),
    };
    let tvec = phi_lambda::<Q>(&target, params)?;
    Ok(match img.proportionality(&tvec) {
        Some(c) => (c == Q::from_integer(sign as i128), format!("{c}")),
        None => (false, "not proportional".into()),
    })
}

fn expected_weights(pairs: &[FramePair]) -> Vec<WeightVector> {
    pairs.iter().flat_map(|p| p.vectors.iter().map(|v| v.weight.clone())).collect()
}

fn oracle_weight_valid(w: &WeightVector, params: &ModelParams) -> bool {
    validate_highest_weight(&HighestWeight::new(WeightFamily::d_side(params), w.d_side.clone()))
        && validate_highest_weight(&HighestWeight::new(WeightFamily::k_side(params), w.k_side.clone()))
}

fn to_u64(x: &BigUint) -> u64 {
    x.to_u64().unwrap_or(u64::MAX)
}

/// Runs every check of one duality at one grid point.
pub fn verify_duality(params: &ModelParams, duality: Duality) -> Result<DualityReport> {
    let pairs = enumerate_frame_pairs(params, duality)?;
    let oracle = joint_hw_oracle(params)?;
    let mult = oracle_multiplicities(&oracle);
    let mut raising = raising_set(Side::D, params)?;
    raising.extend(raising_set(Side::K, params)?);
    let orth = duality != Duality::SpSp;
    let (r_op, sigma) = if orth {
        (
            Some(lift_to_fock(&reflection_r(params)?, params)?),
            Some(sigma_q(params)?),
        )
    } else {
        (None, None)
    };

    let mut checks = Vec::new();
    checks.push(commutant_check(params)?);

    let predicted = expected_weights(&pairs);
    let predicted_set: BTreeSet<WeightVector> = predicted.iter().cloned().collect();
    let oracle_set: BTreeSet<WeightVector> = mult.keys().cloned().collect();
    let missing = predicted_set.difference(&oracle_set).count();
    let extra = oracle_set.difference(&predicted_set).count();
    checks.push(Check::new(
        "label_sets_match",
        missing == 0 && extra == 0 && predicted_set.len() == predicted.len(),
        Some(format!(
            "{} predicted, {} oracle weights, {missing} missing, {extra} unexplained",
            predicted.len(),
            oracle_set.len()
        )),
    ));
    checks.push(Check::new("multiplicity_free", mult.values().all(|&m| m == 1), None));
    checks.push(Check::new(
        "hw_count_matches",
        oracle.len() == predicted.len(),
        Some(format!("oracle {} vs predicted {}", oracle.len(), predicted.len())),
    ));
    checks.push(Check::new(
        "oracle_weights_dominant",
        mult.keys().all(|w| oracle_weight_valid(w, params)),
        None,
    ));
    let vac = cartan_weights(FockState::VACUUM, params);
    checks.push(Check::new("vacuum_highest_weight", mult.contains_key(&vac), None));
    let total = dimension_sum(&pairs);
    let full = BigUint::one() << (params.d() * params.k());
    checks.push(Check::new(
        "dimension_closure",
        total == full,
        Some(format!("{total} vs {full}")),
    ));
    if duality == Duality::OO {
        checks.push(Check::new(
            "one_reducible_side",
            pairs.iter().all(|p| p.d_reducible != p.k_reducible),
            None,
        ));
        if params.d() % 2 == 1 {
            checks.push(Check::new(
                "k_weights_half_integral",
                pairs
                    .iter()
                    .all(|p| p.k_label.rows().iter().all(|x| *x.denom() == 2)),
                None,
            ));
        }
    }

    let mut pair_reports = Vec::with_capacity(pairs.len());
    for p in &pairs {
        let mut pc = BTreeMap::new();
        let found = p.vectors.iter().all(|v| mult.get(&v.weight) == Some(&1));
        pc.insert("oracle_found".to_string(), found);
        let mut hw = true;
        for v in &p.vectors {
            hw &= phi_is_hw(&v.shape, &v.weight, params, &raising)?;
        }
        pc.insert("phi_highest_weight".to_string(), hw);
        if let (Some(r_op), Some(sigma)) = (&r_op, &sigma) {
            let mut r_ok = true;
            let mut s_ok = true;
            for v in &p.vectors {
                r_ok &= vector_action(r_op, v, v.r.as_ref(), params)?;
                s_ok &= vector_action(sigma, v, v.sigma.as_ref(), params)?;
            }
            pc.insert("r_action".to_string(), r_ok);
            pc.insert("sigma_action".to_string(), s_ok);
        }
        let oracle_multiplicity = p.vectors.first().and_then(|v| mult.get(&v.weight)).copied().unwrap_or(0);
        pair_reports.push(PairReport::new(p, oracle_multiplicity, pc));
    }

    Ok(DualityReport::new(params, duality, pair_reports, to_u64(&total), checks))
}

fn vector_action(
    op: &SparseOperator<Q>,
    v: &ExpectedVector,
    expected: Option<&Action>,
    params: &ModelParams,
) -> Result<bool> {
    match expected {
        Some(a) => Ok(action_matches(op, &v.shape, a, params)?.0),
        None => Ok(true),
    }
}

/// σφ_λ against (−)^{nd + λ̃₁(d−λ̃₁) + Ω} φ_λ̄; the detail carries the computed scalar.
pub fn sigma_sign_check(shape: &PhiShape, params: &ModelParams) -> Result<Check> {
    let sigma = sigma_q(params)?;
    let d = params.d();
    let expected = Action::MapsTo {
        target: shape.associated(d),
        sign: shape.sigma_sign(d),
    };
    let (ok, c) = action_matches(&sigma, shape, &expected, params)?;
    Ok(Check::new(
        &format!("sigma_sign_{:?}", shape.depths),
        ok,
        Some(format!("computed {c}, formula {}", shape.sigma_sign(d))),
    ))
}

fn sigma_q(params: &ModelParams) -> Result<SparseOperator<Q>> {
    Ok(sigma_exchange(1, params)?.map(|x| Q::from_integer(*x as i128)))
}

/// Every O(d) diagram with at most k columns, as column depths; the first two
/// depths sum to at most d so that the associated diagram exists.
pub fn frame_shapes(params: &ModelParams) -> Vec<PhiShape> {
    crate::young::depth_sequences(params.k(), params.d(), params.d())
        .into_iter()
        .map(PhiShape::new)
        .collect()
}

/// σ² = (−1)^d, ρ(−1) = (−1)^d, Lemma 1, the vacuum image and the σφ sign formula.
pub fn pin_check(params: &ModelParams) -> Result<Vec<Check>> {
    let d = params.d();
    let sd: i64 = if d % 2 == 0 { 1 } else { -1 };
    let dim = params.dim();
    let sigma = sigma_exchange(1, params)?;
    let mut out = Vec::new();
    let id = SparseOperator::<i64>::identity(dim);
    out.push(Check::new("sigma_square", sigma.compose(&sigma)? == id.scale(&sd), None));
    let s = OneModeReflection::<i64>::standard(1);
    let minus_one = rho_spin(&[s.clone(), s], params)?;
    out.push(Check::new("rho_minus_one", minus_one == id.scale(&sd), None));

    let form = BilinearForm::for_params(params);
    let sig_q = sigma.map(|x| Q::from_integer(*x as i128));
    let mut comm = true;
    for (p, q) in ebar_basis(&form) {
        let x = con_generator(&ebar_on_v::<Q>(p, q, &form)?, params)?;
        comm &= sig_q.commutator(&x)?.is_zero();
    }
    out.push(Check::new("lemma_commutes_so", comm, None));
    let r = lift_to_fock(&reflection_r(params)?, params)?;
    out.push(Check::new("lemma_anticommutes_r", sig_q.anticommutator(&r)?.is_zero(), None));

    let mut filled = vec![0; params.k()];
    filled[0] = d;
    let vac_img = sigma.apply(&FockVector::basis(0));
    let expect = phi_lambda::<i64>(&PhiShape::new(filled), params)?.scale(&(if params.omega() % 2 == 0 { 1 } else { -1 }));
    out.push(Check::new("sigma_vacuum_image", vac_img == expect, None));

    let mut bad = Vec::new();
    let shapes = frame_shapes(params);
    for shape in &shapes {
        let c = sigma_sign_check(shape, params)?;
        if !c.pass {
            bad.push(format!("{:?}: {}", shape.depths, c.detail.unwrap_or_default()));
        }
    }
    out.push(Check::new(
        "sigma_sign_formula",
        bad.is_empty(),
        Some(if bad.is_empty() {
            format!("{} diagrams", shapes.len())
        } else {
            format!("{} of {} diagrams fail: {}", bad.len(), shapes.len(), bad.join("; "))
        }),
    ));
    let self_assoc: Vec<_> = shapes.iter().filter(|s| 2 * s.first() == d).collect();
    let mut sa_ok = true;
    for shape in &self_assoc {
        sa_ok &= action_matches(&sig_q, shape, &Action::Eigen(1), params)?.0;
    }
    out.push(Check::new("sigma_self_associated_fixed", sa_ok, Some(format!("{} diagrams", self_assoc.len()))));
    let mut lowered_ok = true;
    for shape in &self_assoc {
        lowered_ok &= action_matches(&sig_q, &shape.toggled(), &Action::Eigen(-1), params)?.0;
    }
    out.push(Check::new("sigma_lowered_negated", lowered_ok, Some(format!("{} diagrams", self_assoc.len()))));
    Ok(out)
}

/// {a_i, a†_j} = δ_ij and {a_i, a_j} = {a†_i, a†_j} = 0 for every pair of modes.
pub fn anticommutator_check(params: &ModelParams) -> Result<Check> {
    let modes = params.all_modes();
    let create: Vec<SparseOperator<i64>> = modes.iter().map(|m| field_operator(FieldOp::Create, *m, params)).collect();
    let annihilate: Vec<SparseOperator<i64>> = modes.iter().map(|m| field_operator(FieldOp::Annihilate, *m, params)).collect();
    let id = SparseOperator::<i64>::identity(params.dim());
    let mut bad = 0usize;
    for i in 0..modes.len() {
        for j in 0..modes.len() {
            let mixed = annihilate[i].anticommutator(&create[j])?;
            let ok = if i == j { mixed == id } else { mixed.is_zero() }
                && annihilate[i].anticommutator(&annihilate[j])?.is_zero()
                && create[i].anticommutator(&create[j])?.is_zero();
            if !ok {
                bad += 1;
            }
        }
    }
    Ok(Check::new(
        "anticommutators",
        bad == 0,
        Some(format!("{bad} of {} mode pairs fail", modes.len() * modes.len())),
    ))
}

/// Every (d, k, duality) with dk ≤ `max_modes`; the symplectic family needs even d.
pub fn grid(max_modes: usize) -> Vec<(usize, usize, Duality)> {
    let mut out = Vec::new();
    for d in 1..=max_modes {
        for k in 1..=max_modes / d {
            for du in Duality::ALL {
                if du.family() == Family::Symplectic && d % 2 == 1 {
                    continue;
                }
                out.push((d, k, du));
            }
        }
    }
    out
}
