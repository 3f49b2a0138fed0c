//! Gauss valuations of x = t^(1/n) + d·y across all four modes.
//!
//! With a = t^(1/n) and v(d) > v(a), the element x = a + d·y is a
//! perturbed radical: its plain Gauss value is v(a), the unit part
//! u = xⁿ/t is a 1-unit, and the nth root of u recovers x/a exactly, both
//! in the plain embedding y ↦ Y and in the shifted one y ↦ t^δ·Y with
//! δ = v(d) − v(a).  In the composed rank-2 mode with v(y) = (1, −1/n),
//! Newton iteration for Zⁿ = u starting at 1 at least doubles the lex
//! value of the defect per step.
//!
//! The composed Newton runs on exact rational functions truncated at a
//! fixed y-degree cap; truncation mod y^D is a ring homomorphism on
//! fractions whose denominators are y-adic units, so defect values below
//! the cap are exact.

use crate::arith::{fmt_rat, rat};
use crate::compositum::{oracle_value_group, ValuedElement};
use crate::funcfield::{GaussMode, RatFuncElem, ResidueFraction};
use crate::hensel::nth_root_split;
use crate::ordgroup::{GroupElem, ValueGroup};
use crate::report::{Claim, RunConfig};
use crate::resfield::Fq;
use crate::series::{Coeff, ExponentPolicy, SeriesPoly, SeriesRing};
use crate::Rat;

use super::{parse_precision, RunError};

const NEWTON_STEPS: u32 = 3;

fn trunc_y(f: &RatFuncElem, cap: usize) -> Result<RatFuncElem, RunError> {
    let cut = |p: &SeriesPoly<crate::resfield::FqElem>| {
        let coeffs: Vec<_> = p.coeffs().iter().take(cap + 1).cloned().collect();
        SeriesPoly::new(coeffs)
    };
    Ok(RatFuncElem::new(f.ring(), cut(f.num()), cut(f.den()))?)
}

pub fn run(cfg: &RunConfig) -> Result<Vec<Claim>, RunError> {
    let p = cfg.prime;
    let n = cfg.n;
    if !crate::arith::is_prime_u64(p) {
        return Err(RunError::BadConfig(format!("prime: {p} is not prime")));
    }
    if n < 2 || n % p == 0 {
        return Err(RunError::BadConfig(format!(
            "n must be at least 2 and prime to p, got n = {n}, p = {p}"
        )));
    }
    let target = parse_precision(cfg)?;
    let field = Fq::new(p, 1)?;
    let ring = SeriesRing::with_window(
        field.one(),
        ExponentPolicy::Puiseux { ram_bound: n },
        target.clone(),
    );

    let d_text = cfg.d.clone().unwrap_or_else(|| "t".to_string());
    let d = ring
        .parse(&d_text)
        .map_err(|e| RunError::BadConfig(format!("d: {e}")))?;
    let va = Rat::new(1.into(), (n as i64).into());
    let vd = match d.valuation() {
        Some(v) => v.clone(),
        None => return Err(RunError::BadConfig("d must have a known leading term".into())),
    };
    if vd <= va {
        return Err(RunError::BadConfig(format!(
            "need v(d) > v(a): v(d) = {}, v(a) = {}",
            fmt_rat(&vd),
            fmt_rat(&va)
        )));
    }
    let delta = &vd - &va;

    let a = ring.monomial(field.one(), va.clone())?;
    let x = RatFuncElem::from_poly(&ring, SeriesPoly::new(vec![a.clone(), d.clone()]));
    let a_rf = RatFuncElem::from_series(&ring, a.clone());
    let t_rf = RatFuncElem::from_series(&ring, ring.monomial(field.one(), rat(1, 1))?);
    let y_rf = RatFuncElem::var(&ring);
    let u = x.pow_int(n as i64)?.div(&t_rf)?;
    let mut claims = Vec::new();

    // Plain value of the perturbed radical is v(a).
    claims.push(Claim::check(
        "element-value-plain",
        "gauss-value-of-sum",
        fmt_rat(&va),
        fmt_rat(&x.gauss_value(&GaussMode::Plain)?.coords()[0]),
    ));

    // u = xⁿ/t is a 1-unit.
    let u_val = u.gauss_value(&GaussMode::Plain)?;
    let u_res = u.residue_of_unit(&GaussMode::Plain)?;
    claims.push(Claim::check(
        "unit-part-is-one-unit",
        "normalized-unit-residue",
        "value 0, residue 1".to_string(),
        format!("value {}, residue {}", fmt_rat(&u_val.coords()[0]), u_res.render()),
    ));

    // Root recovery in the rank-1 embeddings.
    let rf_one = ResidueFraction::constant(&field, field.one());
    let emb_ring = SeriesRing::with_window(
        rf_one,
        ExponentPolicy::Puiseux { ram_bound: n },
        target.clone(),
    );
    for (claim_id, anchor, mode) in [
        (
            "plain-root-recovery",
            "root-splitting-prime-to-p",
            GaussMode::Plain,
        ),
        (
            "shifted-root-recovery",
            "root-splitting-shifted-window",
            GaussMode::Shifted { delta: delta.clone() },
        ),
    ] {
        let embedded_unit = u.embed(&mode, &emb_ring)?;
        let root = nth_root_split(&embedded_unit, n, &rat(0, 1), None)?;
        let z = x.div(&a_rf)?;
        let expected = z.embed(&mode, &emb_ring)?.truncate(target.clone());
        claims.push(Claim::check(
            claim_id,
            anchor,
            expected.to_string(),
            root.truncate(target.clone()).to_string(),
        ));
    }

    // Shifted values: x keeps v(a); the increment x − a sits at v(d) + δ.
    let shifted = GaussMode::Shifted { delta: delta.clone() };
    let increment = RatFuncElem::from_poly(&ring, SeriesPoly::new(vec![ring.zero(), d.clone()]));
    claims.push(Claim::check(
        "shifted-values",
        "shifted-gauss-value",
        format!("v(x) = {}, v(x - a) = {}", fmt_rat(&va), fmt_rat(&(&vd + &delta))),
        format!(
            "v(x) = {}, v(x - a) = {}",
            fmt_rat(&x.gauss_value(&shifted)?.coords()[0]),
            fmt_rat(&increment.gauss_value(&shifted)?.coords()[0]),
        ),
    ));

    // Shifted value group of {t, x, y} is the full (1/n)-lattice.
    let shifted_group = oracle_value_group(
        &[
            ValuedElement::RatFunc(t_rf.clone(), shifted.clone()),
            ValuedElement::RatFunc(x.clone(), shifted.clone()),
            ValuedElement::RatFunc(y_rf.clone(), shifted.clone()),
        ],
        cfg.degree_bound.min(4),
        1,
    )?;
    claims.push(Claim::check(
        "shifted-value-group",
        "shifted-ramification-index",
        format!("{} with index {n}", ValueGroup::scaled_integers(va.clone())),
        format!(
            "{} with index {}",
            shifted_group,
            shifted_group.index_over(&ValueGroup::standard(1))?
        ),
    ));

    // Composed rank-2 value group of {t, x, y}.
    let composed = GaussMode::ValueTranscendental {
        alpha0: rat(1, 1),
        alpha1: -va.clone(),
    };
    let composed_group = oracle_value_group(
        &[
            ValuedElement::RatFunc(t_rf.clone(), composed.clone()),
            ValuedElement::RatFunc(x.clone(), composed.clone()),
            ValuedElement::RatFunc(y_rf.clone(), composed.clone()),
        ],
        cfg.degree_bound.min(4),
        2,
    )?;
    let expected_group = ValueGroup::lattice(
        &[
            GroupElem::new(vec![rat(0, 1), rat(1, 1)]),
            GroupElem::new(vec![rat(0, 1), va.clone()]),
            GroupElem::new(vec![rat(1, 1), -va.clone()]),
        ],
        2,
    )?;
    claims.push(Claim::check(
        "composed-value-group",
        "composed-rank-two-group",
        format!(
            "{} with index {n}",
            expected_group
        ),
        format!(
            "{} with index {}",
            composed_group,
            composed_group.index_over(&ValueGroup::standard(2))?
        ),
    ));

    // Composed Newton for Zⁿ = u from 1: lex defect value at least doubles.
    let cap = (1usize << NEWTON_STEPS) + n as usize;
    let n_rf = RatFuncElem::from_poly(
        &ring,
        SeriesPoly::constant(ring.constant(field.from_u64(n % p))),
    );
    let mut z = RatFuncElem::from_poly(&ring, SeriesPoly::constant(ring.one()));
    let mut defect_values: Vec<GroupElem> = Vec::new();
    for _ in 0..NEWTON_STEPS {
        let g = z.pow_int(n as i64)?.sub(&u)?;
        defect_values.push(g.gauss_value(&composed)?);
        let gp = z.pow_int(n as i64 - 1)?.mul(&n_rf)?;
        z = trunc_y(&z.sub(&g.div(&gp)?)?, cap)?;
    }
    let final_defect = trunc_y(&z.pow_int(n as i64)?.sub(&u)?, cap)?;
    defect_values.push(final_defect.gauss_value(&composed)?);

    let doubling = defect_values.windows(2).all(|w| {
        let twice = w[0].scaled(&rat(2, 1));
        w[1].lex_cmp(&twice).map(|o| o != std::cmp::Ordering::Less).unwrap_or(false)
    });
    let first = &defect_values[0];
    claims.push(Claim::check(
        "composed-newton-defect",
        "composed-quadratic-convergence",
        format!(
            "start (1, {}), doubling true",
            fmt_rat(&(&vd - &(&va + &va)))
        ),
        format!(
            "start ({}, {}), doubling {doubling}",
            fmt_rat(&first.coords()[0]),
            fmt_rat(&first.coords()[1]),
        ),
    ));

    Ok(claims)
}
