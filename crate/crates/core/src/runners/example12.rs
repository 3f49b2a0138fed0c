//! Degree-p defect over the perfect hull of 𝔽_p((t)).
//!
//! The hull F carries every t^(1/pⁱ); the partial sums
//! ϑ_N = Σ_{i=1..N} t^(−1/pⁱ) satisfy ϑ_N^p − ϑ_N − t⁻¹ = −t^(−1/p^N)
//! exactly, so the equation X^p − X = t⁻¹ is approximated ever better
//! without a limit in F.  The resulting degree-p extension changes neither
//! the value group nor the residue field: all of its degree sits in the
//! defect.  The separable residue equation X^p − X = 1 instead grows the
//! residue field by degree p.

use num::BigInt;

use crate::arith::{fmt_rat, rat};
use crate::extension::ExtensionDescriptor;
use crate::ordgroup::{GroupElem, ValueGroup};
use crate::report::{Claim, RunConfig};
use crate::resfield::{Fq, FqElem};
use crate::series::{Cutoff, ExponentPolicy, Series, SeriesRing};
use crate::Rat;

use super::RunError;

// Approximation depth: residual values go down to −1/p⁶.
const DEPTH: u32 = 6;

fn inv_prime_power(p: u64, n: u32) -> Rat {
    -Rat::new(1.into(), BigInt::from(p).pow(n))
}

pub fn run(cfg: &RunConfig) -> Result<Vec<Claim>, RunError> {
    let p = cfg.prime;
    if !crate::arith::is_prime_u64(p) {
        return Err(RunError::BadConfig(format!("prime: {p} is not prime")));
    }
    let field = Fq::new(p, 1)?;
    let ring = SeriesRing::new(
        field.one(),
        ExponentPolicy::PerfectHull { p, max_exp: DEPTH + 1 },
    );
    let mut claims = Vec::new();

    // ϑ_N = Σ_{i=1..N} t^(−1/pⁱ) and its Artin-Schreier residual.
    let theta = |n: u32| -> Result<Series<FqElem>, RunError> {
        let terms = (1..=n).map(|i| (inv_prime_power(p, i), field.one()));
        Ok(ring.from_terms(terms, Cutoff::Exact)?)
    };

    let t_inv = ring.monomial(field.one(), rat(-1, 1))?;
    let mut predicted_vals = Vec::new();
    let mut observed_vals = Vec::new();
    let mut thetas = Vec::new();
    for n in 1..=DEPTH {
        let th = theta(n)?;
        let residual = th.pow_int(p as i64)?.sub(&th)?.sub(&t_inv)?;
        let expect_exp = inv_prime_power(p, n);
        let expect = ring.monomial(field.from_u64(p - 1), expect_exp.clone())?;
        predicted_vals.push(fmt_rat(&expect_exp));
        if residual == expect {
            observed_vals.push(fmt_rat(residual.valuation().expect("one term")));
        } else {
            observed_vals.push(format!("unexpected: {residual}"));
        }
        thetas.push(th);
    }
    claims.push(Claim::check(
        "approximation-residual-values",
        "perfect-hull-approximants",
        predicted_vals.join(", "),
        observed_vals.join(", "),
    ));

    // Values of the approximants and their powers stay inside the hull.
    let hull = ValueGroup::p_divisible(p, &ValueGroup::standard(1))?;
    let mut escaped = Vec::new();
    for th in &thetas {
        for k in 1..=p.min(4) {
            let pow = th.pow_int(k as i64)?;
            let v = pow.valuation().expect("nonzero").clone();
            if !hull.contains(&GroupElem::scalar(v.clone()))? {
                escaped.push(fmt_rat(&v));
            }
        }
    }
    claims.push(Claim::check(
        "value-group-unchanged",
        "immediate-no-ramification",
        "all values inside the hull",
        if escaped.is_empty() {
            "all values inside the hull".to_string()
        } else {
            format!("escaped: {}", escaped.join(", "))
        },
    ));

    // Normalized approximants all have residue 1 in the prime field.
    let mut residues = Vec::new();
    for th in &thetas {
        let unit = th.mul_monomial(&field.one(), &Rat::new(1.into(), (p as i64).into()))?;
        let res = unit
            .known_coeff(&rat(0, 1))
            .and_then(|c| c.as_prime_constant());
        residues.push(match res {
            Some(c) => c.to_string(),
            None => "?".to_string(),
        });
    }
    claims.push(Claim::check(
        "residues-stay-constant",
        "immediate-no-residue-growth",
        vec!["1"; DEPTH as usize].join(", "),
        residues.join(", "),
    ));

    // Degree-p bookkeeping: e = f = 1 forces defect p.
    let desc = ExtensionDescriptor::new(p, 1, 1, p, true, hull.clone(), hull, true)?;
    claims.push(Claim::check(
        "defect-equals-degree",
        "degree-p-defect-budget",
        format!("defect {p}, immediate true"),
        format!("defect {}, immediate {}", desc.defect().expect("e·f divides p"), desc.is_immediate()),
    ));

    // The parallel separable residue equation X^p − X = 1 grows the
    // residue field by exactly p.
    let deg = field.artin_schreier_residue_degree(&field.one())?;
    let ext_field = Fq::new(p, p as u32)?;
    let in_ext = ext_field
        .artin_schreier_root(&ext_field.one())?
        .is_some();
    let in_base = field.artin_schreier_root(&field.one())?.is_some();
    claims.push(Claim::check(
        "separable-residue-degree",
        "unramified-part-residue-degree",
        format!("degree {p}, extension root true, base root false"),
        format!("degree {deg}, extension root {in_ext}, base root {in_base}"),
    ));

    Ok(claims)
}
