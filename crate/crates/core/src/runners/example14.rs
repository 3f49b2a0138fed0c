//! Tame degree-n radicals over a rational function field with the t-adic
//! valuation.
//!
//! Over K = k(x, t) (realized with x = yⁿ so that y can stand for x^(1/n)),
//! the radical t^(1/n) is totally ramified of index n, while the twisted
//! radical s = (t·x)^(1/n) generates a field F with the same value group.
//! The compositum E = F(x^(1/n)) then gains no ramification at all: its
//! whole degree n sits in the residue extension k(Y) | k(Yⁿ), detected
//! through the order of the substitution Y ↦ ζ·Y for a primitive nth root
//! of unity ζ.

use crate::arith::{fmt_rat, rat};
use crate::compositum::{oracle_value_group, ValuedElement};
use crate::funcfield::GaussMode;
use crate::funcfield::RatFuncElem;
use crate::ordgroup::ValueGroup;
use crate::report::{Claim, RunConfig};
use crate::resfield::Fq;
use crate::series::{ExponentPolicy, SeriesPoly, SeriesRing};
use crate::Rat;

use super::RunError;

fn pow_mod(mut base: u64, mut exp: u32, m: u64) -> u64 {
    base %= m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
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

    // Multiplicative order of p mod n: the residue degree needed to see a
    // primitive nth root of unity.
    let k0_arith = (1..=64u32)
        .find(|k| pow_mod(p, *k, n) == 1)
        .ok_or_else(|| RunError::BadConfig("order of p mod n out of range".into()))?;
    // Independent search: the smallest k with an nth root in 𝔽_{p^k}.
    let mut k0_search = None;
    for k in 1..=k0_arith.max(1) + 2 {
        if Fq::new(p, k)?.primitive_nth_root(n).is_ok() {
            k0_search = Some(k);
            break;
        }
    }

    let field = Fq::new(p, k0_arith)?;
    let zeta = field.primitive_nth_root(n)?;
    let ring = SeriesRing::new(field.one(), ExponentPolicy::Puiseux { ram_bound: n });
    let mut claims = Vec::new();

    claims.push(Claim::check(
        "roots-of-unity-field-degree",
        "residue-constants-for-tame-radical",
        format!("{k0_arith}"),
        match k0_search {
            Some(k) => format!("{k}"),
            None => "none found".to_string(),
        },
    ));

    // Plain radical: K(t^(1/n)) | K is totally ramified of index n.
    let one_over_n = Rat::new(1.into(), (n as i64).into());
    let t_series = ring.monomial(field.one(), rat(1, 1))?;
    let radical = ring.monomial(field.one(), one_over_n.clone())?;
    let v_k = ValueGroup::standard(1);
    let v_l = oracle_value_group(
        &[
            ValuedElement::Series(t_series.clone()),
            ValuedElement::Series(radical),
        ],
        cfg.degree_bound,
        1,
    )?;
    claims.push(Claim::check(
        "radical-ramification-index",
        "kummer-generator-index",
        format!("{n}"),
        v_l.index_over(&v_k)?.to_string(),
    ));

    // Rational function side: x = yⁿ, s = t^(1/n)·y, so sⁿ = t·x.
    let y = RatFuncElem::var(&ring);
    let x = y.pow_int(n as i64)?;
    let t_rf = RatFuncElem::from_series(&ring, t_series);
    let s = RatFuncElem::from_poly(
        &ring,
        SeriesPoly::new(vec![ring.zero(), ring.monomial(field.one(), one_over_n.clone())?]),
    );

    let f_gens = [
        ValuedElement::RatFunc(t_rf.clone(), GaussMode::Plain),
        ValuedElement::RatFunc(x.clone(), GaussMode::Plain),
        ValuedElement::RatFunc(s.clone(), GaussMode::Plain),
    ];
    let e_gens = [
        ValuedElement::RatFunc(t_rf.clone(), GaussMode::Plain),
        ValuedElement::RatFunc(x.clone(), GaussMode::Plain),
        ValuedElement::RatFunc(s.clone(), GaussMode::Plain),
        ValuedElement::RatFunc(y.clone(), GaussMode::Plain),
    ];
    let v_f = oracle_value_group(&f_gens, cfg.degree_bound, 1)?;
    let v_e = oracle_value_group(&e_gens, cfg.degree_bound, 1)?;
    claims.push(Claim::check(
        "twisted-radical-value-group",
        "twisted-base-same-ramification",
        format!("index {n}, fractional 1/{n} lattice: true"),
        format!(
            "index {}, fractional 1/{n} lattice: {}",
            v_f.index_over(&v_k)?,
            v_f == ValueGroup::scaled_integers(one_over_n.clone())
        ),
    ));
    claims.push(Claim::check(
        "composite-adds-no-ramification",
        "composite-over-twisted-base",
        "1".to_string(),
        v_e.index_over(&v_f)?.to_string(),
    ));

    // Residue side: res(y) = Y has orbit length n under Y ↦ ζY.
    let res_y = y.residue_of_unit(&GaussMode::Plain)?;
    let mut orbit = 1u64;
    let mut cur = res_y.substitute_scaled(&zeta);
    while cur != res_y && orbit <= n + 1 {
        orbit += 1;
        cur = cur.substitute_scaled(&zeta);
    }
    claims.push(Claim::check(
        "composite-residue-degree",
        "composite-residue-growth",
        format!("{n}"),
        format!("{orbit}"),
    ));

    // Residues of units from the twisted base stay fixed under Y ↦ ζY.
    let one_rf = RatFuncElem::from_poly(&ring, SeriesPoly::constant(ring.one()));
    let two_rf = RatFuncElem::from_poly(&ring, SeriesPoly::constant(ring.constant(field.from_u64(2 % p))));
    let samples: Vec<(&str, RatFuncElem)> = vec![
        ("x", x.clone()),
        ("x+1", x.add(&one_rf)?),
        ("x/(x+2)", x.div(&x.add(&two_rf)?)?),
        ("s^n/t", s.pow_int(n as i64)?.div(&t_rf)?),
    ];
    let mut moved = Vec::new();
    for (name, u) in &samples {
        let r = u.residue_of_unit(&GaussMode::Plain)?;
        if r.substitute_scaled(&zeta) != r {
            moved.push(*name);
        }
    }
    claims.push(Claim::check(
        "base-residues-invariant",
        "twisted-base-residue-field",
        "all invariant",
        if moved.is_empty() {
            "all invariant".to_string()
        } else {
            format!("moved: {}", moved.join(", "))
        },
    ));

    // Cross-check the value of s against the formula v(s) = 1/n.
    claims.push(Claim::check(
        "twisted-radical-value",
        "twisted-generator-value",
        fmt_rat(&one_over_n),
        fmt_rat(&s.gauss_value(&GaussMode::Plain)?.coords()[0]),
    ));

    Ok(claims)
}
