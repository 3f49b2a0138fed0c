//! Value groups of composite extensions: predictions and element oracles.
//!
//! Conventions:
//!
//! * For valued extensions L|K and F|K inside a common field, the
//!   prediction machinery works purely on value groups: the expected value
//!   group of L.F is vL + vF, the ramification index over a rank-1 tame L
//!   is lcm(eL, eF), and v(L.F)/((vL)_{p′} + vF) is always a p-group.
//! * The oracle side recomputes value groups from concrete elements: it
//!   multiplies out all monomials in the given generators up to a degree
//!   bound and collects their values into a lattice.  Generators are
//!   truncated series, formal monomials with exact values, or rational
//!   functions under a Gauss valuation; kinds cannot be mixed.
//! * The rank-2 counterexample produces two index-q groups over ℤ² whose
//!   cosets are 𝔽_q-independent, so their sum has index q², not
//!   lcm(q, q) = q: the rank-1 index formula does not survive in higher
//!   rank.

use thiserror::Error;

use crate::arith::{lcm_u64, rat};
use crate::funcfield::{FuncError, GaussMode, RatFuncElem};
use crate::ordgroup::{fq_independent, GroupElem, GroupError, GroupIndex, ValueGroup};
use crate::resfield::{FieldError, Fq, FqElem};
use crate::series::{ExponentPolicy, Series, SeriesError, SeriesRing};
use crate::Rat;

pub const DEFAULT_DEGREE_BOUND: i64 = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(&'static str),
    #[error("oracle generators must all be of the same kind")]
    MixedElementKinds,
    #[error("element has no value")]
    NoValue,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A field element the oracle can multiply and take values of.
#[derive(Clone, Debug)]
pub enum ValuedElement {
    /// Truncated series; its value is the leading exponent.
    Series(Series<FqElem>),
    /// Formal monomial carrying its exact value; products add values.
    Monomial(GroupElem),
    /// Rational function in y valued through the given Gauss mode.
    RatFunc(RatFuncElem, GaussMode),
}

impl ValuedElement {
    pub fn value_rank(&self) -> usize {
        match self {
            ValuedElement::Series(_) => 1,
            ValuedElement::Monomial(g) => g.rank(),
            ValuedElement::RatFunc(_, mode) => mode.value_rank(),
        }
    }

    pub fn mul(&self, other: &ValuedElement) -> Result<ValuedElement, CompError> {
        match (self, other) {
            (ValuedElement::Series(a), ValuedElement::Series(b)) => {
                Ok(ValuedElement::Series(a.mul(b)?))
            }
            (ValuedElement::Monomial(a), ValuedElement::Monomial(b)) => {
                Ok(ValuedElement::Monomial(a.add(b)?))
            }
            (ValuedElement::RatFunc(a, m), ValuedElement::RatFunc(b, m2)) => {
                if m != m2 {
                    return Err(CompError::MixedElementKinds);
                }
                Ok(ValuedElement::RatFunc(a.mul(b)?, m.clone()))
            }
            _ => Err(CompError::MixedElementKinds),
        }
    }

    pub fn pow(&self, e: i64) -> Result<ValuedElement, CompError> {
        match self {
            ValuedElement::Series(a) => Ok(ValuedElement::Series(a.pow_int(e)?)),
            ValuedElement::Monomial(g) => {
                Ok(ValuedElement::Monomial(g.scaled(&rat(e, 1))))
            }
            ValuedElement::RatFunc(a, m) => {
                Ok(ValuedElement::RatFunc(a.pow_int(e)?, m.clone()))
            }
        }
    }

    pub fn value(&self) -> Result<GroupElem, CompError> {
        match self {
            ValuedElement::Series(a) => {
                if a.is_exact_zero() {
                    return Err(CompError::NoValue);
                }
                match a.valuation() {
                    Some(v) => Ok(GroupElem::scalar(v.clone())),
                    None => Err(CompError::Func(FuncError::UndeterminedValuation)),
                }
            }
            ValuedElement::Monomial(g) => Ok(g.clone()),
            ValuedElement::RatFunc(a, m) => Ok(a.gauss_value(m)?),
        }
    }
}

/// Value group generated by all monomials in the generators with total
/// absolute degree at most `degree_bound`, computed by multiplying the
/// elements out and taking actual values.
pub fn oracle_value_group(
    gens: &[ValuedElement],
    degree_bound: i64,
    ambient_rank: usize,
) -> Result<ValueGroup, CompError> {
    assert!(degree_bound >= 1, "degree bound must be positive");
    for g in gens {
        if g.value_rank() != ambient_rank {
            return Err(CompError::Group(GroupError::RankMismatch(
                g.value_rank(),
                ambient_rank,
            )));
        }
    }
    // Power cache per generator: powers[i][k] = gᵢ^(k − degree_bound).
    let mut powers: Vec<Vec<ValuedElement>> = Vec::with_capacity(gens.len());
    for g in gens {
        let mut row = Vec::with_capacity(2 * degree_bound as usize + 1);
        for e in -degree_bound..=degree_bound {
            row.push(g.pow(e)?);
        }
        powers.push(row);
    }

    let mut values: Vec<GroupElem> = Vec::new();
    let mut exps = vec![0i64; gens.len()];
    collect_values(&powers, degree_bound, 0, None, &mut exps, &mut values)?;
    Ok(ValueGroup::lattice(&values, ambient_rank)?)
}

fn collect_values(
    powers: &[Vec<ValuedElement>],
    budget: i64,
    idx: usize,
    acc: Option<ValuedElement>,
    exps: &mut Vec<i64>,
    values: &mut Vec<GroupElem>,
) -> Result<(), CompError> {
    if idx == powers.len() {
        if let Some(el) = acc {
            if exps.iter().any(|e| *e != 0) {
                values.push(el.value()?);
            }
        }
        return Ok(());
    }
    for e in -budget..=budget {
        exps[idx] = e;
        let entry = &powers[idx][(e + (powers[idx].len() as i64 - 1) / 2) as usize];
        let next = match &acc {
            None => Some(entry.clone()),
            Some(a) => Some(a.mul(entry)?),
        };
        collect_values(powers, budget - e.abs(), idx + 1, next, exps, values)?;
    }
    exps[idx] = 0;
    Ok(())
}

/// Group-level prediction for the compositum L.F over F.
#[derive(Clone, Debug)]
pub struct CompositumPrediction {
    /// vL + vF, the expected value group of L.F.
    pub predicted_value_group: ValueGroup,
    /// lcm(eL, eF), defined only over a rank-1 base with L|K tame.
    pub predicted_ram_index: Option<u64>,
    /// Whether L.F|F should be value-group-preserving: vL ⊆ vF.
    pub unramified_iff: bool,
    /// (vL)_{p′} + vF; the true group exceeds it by a p-group at most.
    pub p_bound_group: ValueGroup,
    /// Carried residue degree, defined only when vL = vK.
    pub predicted_residue_degree: Option<u64>,
}

pub fn predict(
    v_k: &ValueGroup,
    v_l: &ValueGroup,
    v_f: &ValueGroup,
    p: u64,
    l_tame: bool,
    l_res_degree: u64,
) -> Result<CompositumPrediction, CompError> {
    if !v_k.is_subgroup_of(v_l)? || !v_k.is_subgroup_of(v_f)? {
        return Err(CompError::HypothesisViolated("vK must lie in both vL and vF"));
    }
    let predicted_value_group = v_l.compositum(v_f)?;
    let p_bound_group = v_l.p_prime_part(v_k, p)?.compositum(v_f)?;
    let predicted_ram_index = if v_k.rational_rank() == 1 && l_tame {
        let e_l = v_l.index_over(v_k)?.as_u64();
        let e_f = v_f.index_over(v_k)?.as_u64();
        match (e_l, e_f) {
            (Some(a), Some(b)) => Some(lcm_u64(a, b)),
            _ => None,
        }
    } else {
        None
    };
    let inertial = v_l.index_over(v_k)?.as_u64() == Some(1);
    Ok(CompositumPrediction {
        predicted_value_group,
        predicted_ram_index,
        unramified_iff: v_l.is_subgroup_of(v_f)?,
        p_bound_group,
        predicted_residue_degree: inertial.then_some(l_res_degree),
    })
}

/// Element-level check of the rank-1 lcm index formula.
#[derive(Clone, Debug)]
pub struct IndexFormulaCheck {
    pub e_l: u64,
    pub e_f: u64,
    pub predicted_index: u64,
    pub oracle_index: GroupIndex,
    pub index_matches: bool,
    pub group_matches: bool,
    pub unramified_predicted: bool,
    pub unramified_oracle: bool,
}

/// Realize L = K(t^(1/eL)) and F = K(u·t^(1/eF)) for a 1-unit u over
/// K = 𝔽_p((t)), multiply generator monomials out, and compare the value
/// group of the compositum with the lcm prediction.  Requires p ∤ eL, the
/// tameness of L.
pub fn verify_index_formula(
    p: u64,
    e_l: u64,
    e_f: u64,
    degree_bound: i64,
) -> Result<IndexFormulaCheck, CompError> {
    if e_l == 0 || e_f == 0 {
        return Err(CompError::HypothesisViolated("indices must be positive"));
    }
    if e_l % p == 0 {
        return Err(CompError::HypothesisViolated("p divides eL, L is not tame"));
    }
    let field = Fq::new(p, 1)?;
    let ram = lcm_u64(e_l, e_f);
    // The oracle consumes only leading exponents, so a shallow window
    // keeps the inverse powers of the 1-unit cheap without losing values.
    let ring = SeriesRing::with_window(
        field.one(),
        ExponentPolicy::Puiseux { ram_bound: ram },
        rat(2, 1),
    );

    let t = ring.monomial(field.one(), rat(1, 1))?;
    let gen_l = ring.monomial(field.one(), Rat::new(1.into(), (e_l as i64).into()))?;
    // A 1-unit factor keeps the oracle honest about actual multiplication.
    let unit = ring.one().add(&t)?;
    let gen_f = unit.mul(&ring.monomial(field.one(), Rat::new(1.into(), (e_f as i64).into()))?)?;

    let v_k = ValueGroup::standard(1);
    let v_l = ValueGroup::scaled_integers(Rat::new(1.into(), (e_l as i64).into()));
    let v_f = ValueGroup::scaled_integers(Rat::new(1.into(), (e_f as i64).into()));

    let oracle = oracle_value_group(
        &[
            ValuedElement::Series(t),
            ValuedElement::Series(gen_l),
            ValuedElement::Series(gen_f),
        ],
        degree_bound,
        1,
    )?;
    let oracle_index = oracle.index_over(&v_k)?;
    let predicted = predict(&v_k, &v_l, &v_f, p, true, 1)?;
    let predicted_index = lcm_u64(e_l, e_f);

    Ok(IndexFormulaCheck {
        e_l,
        e_f,
        predicted_index,
        oracle_index: oracle_index.clone(),
        index_matches: oracle_index.as_u64() == Some(predicted_index)
            && oracle == predicted.predicted_value_group,
        group_matches: oracle == predicted.predicted_value_group,
        unramified_predicted: e_f % e_l == 0,
        unramified_oracle: oracle == v_f,
    })
}

/// For every a coprime to e, the rank-1 group ℤ + (a/e)ℤ is exactly
/// (1/e)ℤ: one fractional generator of full order already fills the whole
/// index-e group.
pub fn verify_fractional_generation(e: u64) -> Result<bool, CompError> {
    if e == 0 {
        return Err(CompError::HypothesisViolated("e must be positive"));
    }
    let base = ValueGroup::standard(1);
    let full = ValueGroup::scaled_integers(Rat::new(1.into(), (e as i64).into()));
    for a in 1..=e {
        if crate::arith::gcd_u64(a, e) != 1 {
            continue;
        }
        let gamma = GroupElem::scalar(Rat::new((a as i64).into(), (e as i64).into()));
        if base.order_mod(&gamma)?.as_u64() != Some(e) {
            return Ok(false);
        }
        let group = ValueGroup::lattice(
            &[GroupElem::scalar(rat(1, 1)), gamma],
            1,
        )?;
        if group != full || group.index_over(&base)?.as_u64() != Some(e) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank-2 counterexample to the lcm index formula.
#[derive(Clone, Debug)]
pub struct RankTwoWitness {
    pub q: u64,
    pub cosets_independent: bool,
    pub index_one: GroupIndex,
    pub index_two: GroupIndex,
    pub lcm_of_indices: u64,
    pub total_index: GroupIndex,
    pub refutes_lcm_formula: bool,
}

/// Over Δ = ℤ² (lex), the groups Δ + (1/q, 0)ℤ and Δ + (0, 1/q)ℤ both
/// have index q, but their sum has index q².
pub fn rank_two_witness(q: u64) -> Result<RankTwoWitness, CompError> {
    if q < 2 {
        return Err(CompError::HypothesisViolated("q must be at least 2"));
    }
    let base = ValueGroup::standard(2);
    let alpha = GroupElem::new(vec![Rat::new(1.into(), (q as i64).into()), rat(0, 1)]);
    let beta = GroupElem::new(vec![rat(0, 1), Rat::new(1.into(), (q as i64).into())]);
    let gens_base = [GroupElem::from_ints(&[1, 0]), GroupElem::from_ints(&[0, 1])];

    let one = ValueGroup::lattice(
        &[gens_base[0].clone(), gens_base[1].clone(), alpha.clone()],
        2,
    )?;
    let two = ValueGroup::lattice(
        &[gens_base[0].clone(), gens_base[1].clone(), beta.clone()],
        2,
    )?;
    let total = one.compositum(&two)?;

    let index_one = one.index_over(&base)?;
    let index_two = two.index_over(&base)?;
    let total_index = total.index_over(&base)?;
    let lcm_of_indices = match (index_one.as_u64(), index_two.as_u64()) {
        (Some(a), Some(b)) => lcm_u64(a, b),
        _ => return Err(CompError::HypothesisViolated("indices must be finite")),
    };
    Ok(RankTwoWitness {
        q,
        cosets_independent: fq_independent(&alpha, &beta, q, &base)?,
        index_one,
        index_two,
        lcm_of_indices,
        total_index: total_index.clone(),
        refutes_lcm_formula: total_index.as_u64() != Some(lcm_of_indices),
    })
}

/// Check that the compositum group exceeds (vL)_{p′} + vF by a p-group
/// only, and that it equals it when vL has no p-divisible part over vK.
#[derive(Clone, Debug)]
pub struct PBoundCheck {
    pub p_bound_group: ValueGroup,
    pub compositum_group: ValueGroup,
    pub quotient_is_p_group: bool,
    pub quotient_index: GroupIndex,
    pub equality_when_p_free: bool,
}

pub fn verify_p_bound(
    v_k: &ValueGroup,
    v_l: &ValueGroup,
    v_f: &ValueGroup,
    p: u64,
) -> Result<PBoundCheck, CompError> {
    let prediction = predict(v_k, v_l, v_f, p, false, 1)?;
    let comp = prediction.predicted_value_group.clone();
    let bound = prediction.p_bound_group.clone();
    let quotient_is_p_group = comp.is_p_group_quotient(&bound, p)?;
    let quotient_index = comp.index_over(&bound)?;
    let p_free = v_l.p_prime_part(v_k, p)? == *v_l;
    let equality_when_p_free = !p_free || comp == bound;
    Ok(PBoundCheck {
        p_bound_group: bound,
        compositum_group: comp,
        quotient_is_p_group,
        quotient_index,
        equality_when_p_free,
    })
}
