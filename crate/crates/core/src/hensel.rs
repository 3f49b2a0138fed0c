//! Newton lifting of simple residue roots to series roots.
//!
//! Conventions:
//!
//! * A lift problem is a polynomial f over truncated series with integral
//!   coefficients (no terms below t⁰), a starting residue element a with
//!   f̄(a) = 0 and f̄′(a) ≠ 0, and a target precision P.
//! * The iteration is plain Newton, z ← z − f(z)/f′(z), truncated at P
//!   every step; it stops once the defect f(z) has no visible terms or its
//!   value reaches P.
//! * Each step must at least double the defect value v(f(z)); a violation
//!   aborts the lift instead of looping.  The recorded trace of defect
//!   values is part of the result.
//! * `nth_root_split` factors c with v(c) = n·β as (unit root)·t^β and
//!   lifts the unit's root from a residue start; it needs n prime to the
//!   coefficient characteristic and, when the leading residue is not 1, an
//!   explicit verified residue start.

use thiserror::Error;

use crate::arith::fmt_rat;
use crate::series::{coeff_mul_nat, Coeff, Series, SeriesError, SeriesPoly};
use crate::Rat;

// Defect values at least double per step, so 64 steps overshoot any
// practical target precision.
const MAX_NEWTON_STEPS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HenselError {
    #[error("polynomial coefficients must have no terms below t^0")]
    NotIntegral,
    #[error("residue coefficient at t^0 is hidden by the cutoff")]
    ResidueUndetermined,
    #[error("the start is not a root of the residue polynomial")]
    StartNotARoot,
    #[error("the residue root is not simple")]
    ResidueRootNotSimple,
    #[error("root degree is divisible by the coefficient characteristic")]
    RootDegreeDivisibleByChar,
    #[error("leading residue is not 1, an explicit residue start is required")]
    ExplicitStartRequired,
    #[error("the given start is not an nth root of the leading residue")]
    StartNotAnNthRoot,
    #[error("element has valuation {found}, expected {expected}")]
    WrongValuation { expected: String, found: String },
    #[error("defect value failed to double, from {0} to {1}")]
    QuadraticConvergenceFailed(String, String),
    #[error("iteration limit reached before the target precision")]
    IterationLimit,
    #[error("defect is invisible below {reached} but the target is {target}")]
    PrecisionStall { reached: String, target: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A simple residue root to lift to a series root of `poly`.
#[derive(Clone, Debug)]
pub struct LiftProblem<C: Coeff> {
    pub poly: SeriesPoly<C>,
    pub start: C,
    pub target_precision: Rat,
}

/// The lifted root together with the defect values seen along the way.
#[derive(Clone, Debug)]
pub struct LiftResult<C: Coeff> {
    pub root: Series<C>,
    pub trace: Vec<Rat>,
}

fn coeff_pow<C: Coeff>(c: &C, mut n: u64) -> C {
    let mut acc = c.one_like();
    let mut base = c.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        n >>= 1;
    }
    acc
}

/// Lift a simple residue root to a root of `poly` modulo the target
/// precision, recording the defect value at every Newton step.
pub fn hensel_lift<C: Coeff>(problem: &LiftProblem<C>) -> Result<LiftResult<C>, HenselError> {
    let poly = &problem.poly;
    if poly.coeffs().is_empty() {
        // The zero polynomial has derivative zero everywhere.
        return Err(HenselError::ResidueRootNotSimple);
    }
    let ring = poly.coeffs()[0].ring().clone();
    let zero = Rat::from_integer(0.into());

    // Integrality and the residue polynomial.
    let mut residue = Vec::with_capacity(poly.coeffs().len());
    for a in poly.coeffs() {
        if let Some(low) = a.low_bound() {
            if low < zero {
                return Err(HenselError::NotIntegral);
            }
        }
        residue.push(a.known_coeff(&zero).ok_or(HenselError::ResidueUndetermined)?);
    }

    // f̄(a) = 0, f̄′(a) invertible.
    let eval_at_start = |coeffs: &[C]| -> C {
        let mut acc = problem.start.zero_like();
        for c in coeffs.iter().rev() {
            acc = acc.mul(&problem.start).add(c);
        }
        acc
    };
    if !eval_at_start(&residue).is_zero() {
        return Err(HenselError::StartNotARoot);
    }
    let residue_deriv: Vec<C> = residue
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| coeff_mul_nat(c, i as u64))
        .collect();
    let dbar = eval_at_start(&residue_deriv);
    if dbar.inv().is_none() {
        return Err(HenselError::ResidueRootNotSimple);
    }

    let deriv = poly.derivative();
    let target = problem.target_precision.clone();
    let mut z = ring.constant(problem.start.clone()).truncate(target.clone());
    let mut trace: Vec<Rat> = Vec::new();
    loop {
        let fz = poly.eval(&z)?;
        if !fz.has_terms() {
            // Exact zero is a finished lift; a truncation zero counts only
            // from the target on.
            if let Some(p) = fz.cutoff().at() {
                if *p < target {
                    return Err(HenselError::PrecisionStall {
                        reached: fmt_rat(p),
                        target: fmt_rat(&target),
                    });
                }
            }
            break;
        }
        let v = fz.valuation().expect("has terms").clone();
        if v >= target {
            break;
        }
        if let Some(prev) = trace.last() {
            if v < prev + prev {
                return Err(HenselError::QuadraticConvergenceFailed(
                    fmt_rat(prev),
                    fmt_rat(&v),
                ));
            }
        }
        if trace.len() >= MAX_NEWTON_STEPS {
            return Err(HenselError::IterationLimit);
        }
        trace.push(v);
        let correction = fz.div(&deriv.eval(&z)?)?;
        z = z.sub(&correction)?.truncate(target.clone());
    }
    Ok(LiftResult { root: z, trace })
}

/// Split c with v(c) = n·β as bⁿ with v(b) = β, for n prime to the
/// coefficient characteristic.  The leading residue must be 1 or come with
/// a verified explicit nth root `start`.
pub fn nth_root_split<C: Coeff>(
    c: &Series<C>,
    n: u64,
    beta: &Rat,
    start: Option<C>,
) -> Result<Series<C>, HenselError> {
    assert!(n >= 1, "root degree must be positive");
    let v = match c.valuation() {
        Some(v) => v.clone(),
        None => {
            return Err(HenselError::WrongValuation {
                expected: fmt_rat(&(beta * Rat::from_integer(n.into()))),
                found: "none".to_string(),
            })
        }
    };
    let expected = beta * Rat::from_integer(n.into());
    if v != expected {
        return Err(HenselError::WrongValuation {
            expected: fmt_rat(&expected),
            found: fmt_rat(&v),
        });
    }

    let lead = c.leading().expect("has terms").1.clone();
    let one = lead.one_like();
    if coeff_mul_nat(&one, n).inv().is_none() {
        return Err(HenselError::RootDegreeDivisibleByChar);
    }
    let root_start = if lead.is_one() {
        one.clone()
    } else {
        match start {
            None => return Err(HenselError::ExplicitStartRequired),
            Some(s) => {
                if !coeff_pow(&s, n).sub(&lead).is_zero() {
                    return Err(HenselError::StartNotAnNthRoot);
                }
                s
            }
        }
    };
    if n == 1 {
        return Ok(c.clone());
    }

    // u = c·t^(−nβ) is a unit; solve zⁿ = u from the residue start.
    let u = c.mul_monomial(&one, &(-&expected))?;
    let ring = u.ring().clone();
    let target = match u.cutoff().at() {
        Some(p) => p.clone(),
        None => ring.window().clone(),
    };
    let mut coeffs = vec![u.neg()];
    for _ in 1..n {
        coeffs.push(ring.zero());
    }
    coeffs.push(ring.one());
    let problem = LiftProblem {
        poly: SeriesPoly::new(coeffs),
        start: root_start,
        target_precision: target,
    };
    let lifted = hensel_lift(&problem)?;
    Ok(lifted.root.mul_monomial(&one, beta)?)
}
