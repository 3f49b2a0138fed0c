//! Newton lift of X^p − X = t from the residue root 0.
//!
//! With f = X^p − X − t the Newton correction is f(z) itself, so the
//! defect value multiplies by exactly p per step and the lifted root is
//! Σ (p−1)·t^(p^k), taken over p^k below the target precision.

use crate::arith::{fmt_rat, rat};
use crate::hensel::{hensel_lift, LiftProblem};
use crate::report::{Claim, RunConfig};
use crate::resfield::Fq;
use crate::series::{Cutoff, ExponentPolicy, SeriesPoly, SeriesRing};
use crate::Rat;

use super::{parse_precision, RunError};

pub fn run(cfg: &RunConfig) -> Result<Vec<Claim>, RunError> {
    let p = cfg.prime;
    if !crate::arith::is_prime_u64(p) {
        return Err(RunError::BadConfig(format!("prime: {p} is not prime")));
    }
    let target = parse_precision(cfg)?;
    if target < rat(2, 1) {
        return Err(RunError::BadConfig("precision must be at least 2".into()));
    }
    let field = Fq::new(p, 1)?;
    let ring = SeriesRing::with_window(
        field.one(),
        ExponentPolicy::Puiseux { ram_bound: 1 },
        target.clone(),
    );

    // f = X^p − X − t.
    let mut coeffs = vec![
        ring.monomial(field.from_u64(p - 1), rat(1, 1))?,
        ring.constant(field.from_u64(p - 1)),
    ];
    for _ in 2..p {
        coeffs.push(ring.zero());
    }
    coeffs.push(ring.one());
    let poly = SeriesPoly::new(coeffs);

    let out = hensel_lift(&LiftProblem {
        poly: poly.clone(),
        start: field.zero(),
        target_precision: target.clone(),
    })?;

    let mut claims = Vec::new();

    // Defect values are exactly the p-powers below the target.
    let mut expected_exps: Vec<Rat> = Vec::new();
    let mut v = rat(1, 1);
    let p_rat = rat(p as i64, 1);
    while v < target {
        expected_exps.push(v.clone());
        v = &v * &p_rat;
    }
    claims.push(Claim::check(
        "defect-values",
        "newton-defect-doubling",
        expected_exps.iter().map(fmt_rat).collect::<Vec<_>>().join(", "),
        out.trace.iter().map(fmt_rat).collect::<Vec<_>>().join(", "),
    ));

    // Per-step growth factor is the characteristic itself.
    let growth: Vec<String> = out
        .trace
        .windows(2)
        .map(|w| fmt_rat(&(&w[1] / &w[0])))
        .collect();
    claims.push(Claim::check(
        "growth-factor",
        "newton-quadratic-convergence",
        vec![p.to_string(); growth.len()].join(", "),
        growth.join(", "),
    ));

    // The root is the truncated p-power series.
    let predicted_root = ring
        .from_terms(
            expected_exps.iter().map(|e| (e.clone(), field.from_u64(p - 1))),
            Cutoff::Exact,
        )?
        .truncate(target.clone());
    claims.push(Claim::check(
        "lifted-root",
        "frobenius-orbit-root",
        predicted_root.to_string(),
        out.root.to_string(),
    ));

    // The defect really is invisible below the target.
    let defect = poly.eval(&out.root)?;
    let observed = if defect.has_terms() {
        format!("first term at {}", fmt_rat(defect.valuation().expect("has terms")))
    } else {
        match defect.cutoff().at() {
            Some(c) if *c >= target => format!("no terms below {}", fmt_rat(&target)),
            Some(c) => format!("only checked below {}", fmt_rat(c)),
            None => "exactly zero".to_string(),
        }
    };
    claims.push(Claim::check(
        "equation-satisfied",
        "lift-defect-below-target",
        format!("no terms below {}", fmt_rat(&target)),
        observed,
    ));

    Ok(claims)
}
