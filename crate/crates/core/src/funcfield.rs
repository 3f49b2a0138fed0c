//! Rational functions in a transcendental y over a series-valued base
//! field, with Gauss-type valuations.
//!
//! Conventions:
//!
//! * An element is `num/den` for dense polynomials in y whose coefficients
//!   are truncated series in t; no gcd reduction is attempted at this level.
//! * Four valuation modes:
//!   - `Plain`: v(Σ aᵢyⁱ) = minᵢ v(aᵢ), rank 1 (y is a unit with
//!     transcendental residue Y);
//!   - `Shifted{δ}`: v(Σ aᵢyⁱ) = minᵢ (v(aᵢ) + i·δ), rank 1 (y/t^δ has
//!     residue Y);
//!   - `ValueTranscendental{α}` with α ∈ ℚ² lex, α₀ > 0: v(Σ aᵢyⁱ) =
//!     minᵢ (i·α₀, v(aᵢ) + i·α₁), attained at the least i with aᵢ ≠ 0;
//!   - `ComposedYAdic`: the α = (1, 0) case (y-adic order first, then the
//!     t-value of the lowest coefficient).
//! * Valuations and residues are computed honestly under truncation: if a
//!   coefficient's cutoff leaves the minimum (or a residue coefficient)
//!   ambiguous, the operation reports an undetermined error instead of
//!   guessing.
//! * Residues live in 𝔽_q(Y), kept gcd-reduced with monic denominator; for
//!   the rank-2 modes the residue of a unit is a constant.
//! * `embed` realizes the rank-1 modes inside series over 𝔽_q(Y): Plain
//!   sends y ↦ Y, Shifted sends y ↦ t^δ·Y; division then happens in the
//!   series ring, where truncation keeps intermediate objects small.

use std::cmp::Ordering;
use std::fmt;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::ordgroup::GroupElem;
use crate::resfield::{Fq, FqElem};
use crate::series::{Coeff, Series, SeriesError, SeriesPoly, SeriesRing};
use crate::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FuncError {
    #[error("denominator is exactly zero")]
    DivisionByZero,
    #[error("value of the zero element is undefined")]
    ValueOfZero,
    #[error("valuation cannot be determined at the current precision")]
    UndeterminedValuation,
    #[error("residue cannot be determined at the current precision")]
    UndeterminedResidue,
    #[error("element is not a unit for this valuation")]
    NotAUnit,
    #[error("the y-value's first coordinate must be positive")]
    AlphaNotPositive,
    #[error("embedding is defined for the rank-1 Gauss modes only")]
    EmbedUnsupported,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

// ---- dense polynomials over 𝔽_q (no series): residue arithmetic ----

fn fpoly_trim(mut v: Vec<FqElem>) -> Vec<FqElem> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn fpoly_add(a: &[FqElem], b: &[FqElem], field: &Fq) -> Vec<FqElem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| field.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| field.zero());
        out.push(x.add(&y));
    }
    fpoly_trim(out)
}

fn fpoly_neg(a: &[FqElem]) -> Vec<FqElem> {
    a.iter().map(|c| c.neg()).collect()
}

fn fpoly_mul(a: &[FqElem], b: &[FqElem], field: &Fq) -> Vec<FqElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    fpoly_trim(out)
}

fn fpoly_divmod(a: &[FqElem], b: &[FqElem], field: &Fq) -> (Vec<FqElem>, Vec<FqElem>) {
    let b = fpoly_trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = fpoly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b.last().expect("nonempty").inv().expect("nonzero lead");
    let mut q = vec![field.zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let shift = r.len() - b.len();
        let coef = r.last().expect("nonempty").mul(&lead_inv);
        q[shift] = coef.clone();
        for (j, c) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&c.mul(&coef));
        }
        r = fpoly_trim(r);
    }
    (fpoly_trim(q), r)
}

fn fpoly_gcd(a: &[FqElem], b: &[FqElem], field: &Fq) -> Vec<FqElem> {
    let mut r0 = fpoly_trim(a.to_vec());
    let mut r1 = fpoly_trim(b.to_vec());
    while !r1.is_empty() {
        let (_, r) = fpoly_divmod(&r0, &r1, field);
        r0 = r1;
        r1 = r;
    }
    // Monic normalization makes the gcd canonical.
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.inv().expect("nonzero lead");
        r0 = r0.iter().map(|c| c.mul(&inv)).collect();
    }
    r0
}

fn fpoly_render(a: &[FqElem], var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let c_str = c.to_string();
        let wrapped = if c_str.contains(' ') { format!("({c_str})") } else { c_str };
        parts.push(match i {
            0 => wrapped,
            1 if c.is_one() => var.to_string(),
            1 => format!("{wrapped}*{var}"),
            _ if c.is_one() => format!("{var}^{i}"),
            _ => format!("{wrapped}*{var}^{i}"),
        });
    }
    parts.join(" + ")
}

/// Reduced rational function in the residue symbol Y over 𝔽_q: gcd-free,
/// monic denominator, so equal fractions are structurally equal.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueFraction {
    field: Fq,
    num: Vec<FqElem>,
    den: Vec<FqElem>,
}

impl Eq for ResidueFraction {}

impl ResidueFraction {
    pub fn from_polys(field: &Fq, num: Vec<FqElem>, den: Vec<FqElem>) -> Result<Self, FuncError> {
        let num = fpoly_trim(num);
        let den = fpoly_trim(den);
        if den.is_empty() {
            return Err(FuncError::DivisionByZero);
        }
        Ok(Self::reduced(field.clone(), num, den))
    }

    fn reduced(field: Fq, num: Vec<FqElem>, den: Vec<FqElem>) -> Self {
        if num.is_empty() {
            return ResidueFraction { num, den: vec![field.one()], field };
        }
        let g = fpoly_gcd(&num, &den, &field);
        let (num, den) = if g.len() > 1 {
            (fpoly_divmod(&num, &g, &field).0, fpoly_divmod(&den, &g, &field).0)
        } else {
            (num, den)
        };
        let lead_inv = den.last().expect("nonzero denominator").inv().expect("nonzero lead");
        let num = num.iter().map(|c| c.mul(&lead_inv)).collect();
        let den = den.iter().map(|c| c.mul(&lead_inv)).collect();
        ResidueFraction { field, num, den }
    }

    pub fn constant(field: &Fq, c: FqElem) -> Self {
        let num = if c.is_zero() { Vec::new() } else { vec![c] };
        ResidueFraction { field: field.clone(), num, den: vec![field.one()] }
    }

    /// The symbol Y.
    pub fn symbol(field: &Fq) -> Self {
        ResidueFraction {
            field: field.clone(),
            num: vec![field.zero(), field.one()],
            den: vec![field.one()],
        }
    }

    pub fn symbol_pow(field: &Fq, i: usize) -> Self {
        let mut num = vec![field.zero(); i];
        num.push(field.one());
        ResidueFraction { field: field.clone(), num, den: vec![field.one()] }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn num_coeffs(&self) -> &[FqElem] {
        &self.num
    }

    pub fn den_coeffs(&self) -> &[FqElem] {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.len() <= 1 && self.den.len() == 1
    }

    pub fn as_constant(&self) -> Option<FqElem> {
        if !self.is_constant() {
            return None;
        }
        let c = self.num.first().cloned().unwrap_or_else(|| self.field.zero());
        // den is monic of degree 0, hence exactly 1.
        Some(c)
    }

    /// max(deg num, deg den); 0 for constants.
    pub fn degree(&self) -> usize {
        let dn = self.num.len().saturating_sub(1);
        let dd = self.den.len().saturating_sub(1);
        dn.max(dd)
    }

    /// Substitute Y ↦ ζ·Y.
    pub fn substitute_scaled(&self, zeta: &FqElem) -> ResidueFraction {
        let scale = |p: &[FqElem]| -> Vec<FqElem> {
            let mut pow = self.field.one();
            p.iter()
                .map(|c| {
                    let out = c.mul(&pow);
                    pow = pow.mul(zeta);
                    out
                })
                .collect()
        };
        Self::reduced(self.field.clone(), scale(&self.num), scale(&self.den))
    }
}

impl Coeff for ResidueFraction {
    fn zero_like(&self) -> Self {
        ResidueFraction::constant(&self.field, self.field.zero())
    }
    fn one_like(&self) -> Self {
        ResidueFraction::constant(&self.field, self.field.one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.len() == 1
    }
    fn add(&self, other: &Self) -> Self {
        let num = fpoly_add(
            &fpoly_mul(&self.num, &other.den, &self.field),
            &fpoly_mul(&other.num, &self.den, &self.field),
            &self.field,
        );
        let den = fpoly_mul(&self.den, &other.den, &self.field);
        Self::reduced(self.field.clone(), num, den)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let num = fpoly_mul(&self.num, &other.num, &self.field);
        let den = fpoly_mul(&self.den, &other.den, &self.field);
        Self::reduced(self.field.clone(), num, den)
    }
    fn neg(&self) -> Self {
        ResidueFraction {
            field: self.field.clone(),
            num: fpoly_neg(&self.num),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_empty() {
            return None;
        }
        Some(Self::reduced(self.field.clone(), self.den.clone(), self.num.clone()))
    }
    fn render(&self) -> String {
        let num = fpoly_render(&self.num, "Y");
        if self.den.len() == 1 {
            return num;
        }
        let den = fpoly_render(&self.den, "Y");
        format!("({num})/({den})")
    }
}

impl fmt::Display for ResidueFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Gauss-type valuation mode on the rational function field.
#[derive(Clone, Debug, PartialEq)]
pub enum GaussMode {
    Plain,
    Shifted { delta: Rat },
    ValueTranscendental { alpha0: Rat, alpha1: Rat },
    ComposedYAdic,
}

impl GaussMode {
    pub fn value_rank(&self) -> usize {
        match self {
            GaussMode::Plain | GaussMode::Shifted { .. } => 1,
            _ => 2,
        }
    }

    fn alpha(&self) -> Result<(Rat, Rat), FuncError> {
        match self {
            GaussMode::ValueTranscendental { alpha0, alpha1 } => {
                if !alpha0.is_positive() {
                    return Err(FuncError::AlphaNotPositive);
                }
                Ok((alpha0.clone(), alpha1.clone()))
            }
            GaussMode::ComposedYAdic => Ok((Rat::one(), Rat::zero())),
            _ => unreachable!("alpha is defined for rank-2 modes only"),
        }
    }

    fn shift(&self, i: usize) -> Rat {
        match self {
            GaussMode::Plain => Rat::zero(),
            GaussMode::Shifted { delta } => delta * Rat::from_integer(i.into()),
            _ => unreachable!("shift is defined for rank-1 modes only"),
        }
    }
}

/// Gauss value of a polynomial: None for the exact zero polynomial, an
/// error when truncation leaves the minimum ambiguous.
pub fn poly_gauss_value(
    p: &SeriesPoly<FqElem>,
    mode: &GaussMode,
) -> Result<Option<GroupElem>, FuncError> {
    match mode.value_rank() {
        1 => {
            let mut best: Option<Rat> = None;
            let mut unknown_from: Option<Rat> = None;
            for (i, a) in p.coeffs().iter().enumerate() {
                let shift = mode.shift(i);
                if let Some(v) = a.valuation() {
                    let val = v + &shift;
                    if best.as_ref().map(|b| &val < b).unwrap_or(true) {
                        best = Some(val);
                    }
                } else if let Some(c) = a.cutoff().at() {
                    let bound = c + &shift;
                    if unknown_from.as_ref().map(|u| &bound < u).unwrap_or(true) {
                        unknown_from = Some(bound);
                    }
                }
            }
            match (best, unknown_from) {
                (None, None) => Ok(None),
                (None, Some(_)) => Err(FuncError::UndeterminedValuation),
                (Some(b), Some(u)) if u < b => Err(FuncError::UndeterminedValuation),
                (Some(b), _) => Ok(Some(GroupElem::scalar(b))),
            }
        }
        _ => {
            let (a0, a1) = mode.alpha()?;
            for (i, a) in p.coeffs().iter().enumerate() {
                if a.is_exact_zero() {
                    continue;
                }
                if a.is_truncation_zero() {
                    // A possibly nonzero lower-degree coefficient dominates
                    // every later one in the lex order.
                    return Err(FuncError::UndeterminedValuation);
                }
                let v = a.valuation().expect("has terms").clone();
                let i_rat = Rat::from_integer(i.into());
                return Ok(Some(GroupElem::new(vec![&i_rat * &a0, v + &i_rat * &a1])));
            }
            Ok(None)
        }
    }
}

/// Rational function in y over truncated series in t.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFuncElem {
    ring: SeriesRing<FqElem>,
    num: SeriesPoly<FqElem>,
    den: SeriesPoly<FqElem>,
}

impl RatFuncElem {
    pub fn new(
        ring: &SeriesRing<FqElem>,
        num: SeriesPoly<FqElem>,
        den: SeriesPoly<FqElem>,
    ) -> Result<RatFuncElem, FuncError> {
        if den.is_zero() {
            return Err(FuncError::DivisionByZero);
        }
        Ok(RatFuncElem { ring: ring.clone(), num, den })
    }

    pub fn from_poly(ring: &SeriesRing<FqElem>, num: SeriesPoly<FqElem>) -> RatFuncElem {
        RatFuncElem {
            ring: ring.clone(),
            num,
            den: SeriesPoly::constant(ring.one()),
        }
    }

    pub fn from_series(ring: &SeriesRing<FqElem>, s: Series<FqElem>) -> RatFuncElem {
        RatFuncElem::from_poly(ring, SeriesPoly::constant(s))
    }

    /// The transcendental y.
    pub fn var(ring: &SeriesRing<FqElem>) -> RatFuncElem {
        RatFuncElem::from_poly(ring, SeriesPoly::new(vec![ring.zero(), ring.one()]))
    }

    pub fn ring(&self) -> &SeriesRing<FqElem> {
        &self.ring
    }

    pub fn num(&self) -> &SeriesPoly<FqElem> {
        &self.num
    }

    pub fn den(&self) -> &SeriesPoly<FqElem> {
        &self.den
    }

    pub fn is_exact_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn add(&self, other: &RatFuncElem) -> Result<RatFuncElem, FuncError> {
        let num = self
            .num
            .mul_poly(&other.den)?
            .add_poly(&other.num.mul_poly(&self.den)?)?;
        let den = self.den.mul_poly(&other.den)?;
        RatFuncElem::new(&self.ring, num, den)
    }

    pub fn sub(&self, other: &RatFuncElem) -> Result<RatFuncElem, FuncError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFuncElem {
        RatFuncElem {
            ring: self.ring.clone(),
            num: self.num.neg_poly(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFuncElem) -> Result<RatFuncElem, FuncError> {
        RatFuncElem::new(
            &self.ring,
            self.num.mul_poly(&other.num)?,
            self.den.mul_poly(&other.den)?,
        )
    }

    pub fn div(&self, other: &RatFuncElem) -> Result<RatFuncElem, FuncError> {
        if other.num.is_zero() {
            return Err(FuncError::DivisionByZero);
        }
        RatFuncElem::new(
            &self.ring,
            self.num.mul_poly(&other.den)?,
            self.den.mul_poly(&other.num)?,
        )
    }

    pub fn pow_int(&self, e: i64) -> Result<RatFuncElem, FuncError> {
        if e < 0 {
            let one = RatFuncElem::from_poly(&self.ring, SeriesPoly::constant(self.ring.one()));
            return one.div(self)?.pow_int(-e);
        }
        let mut acc = RatFuncElem::from_poly(&self.ring, SeriesPoly::constant(self.ring.one()));
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Substitute y ↦ ζ·y.
    pub fn substitute_y(&self, zeta: &FqElem) -> RatFuncElem {
        let map = |p: &SeriesPoly<FqElem>| -> SeriesPoly<FqElem> {
            let mut pow = zeta.one_like();
            let coeffs = p
                .coeffs()
                .iter()
                .map(|c| {
                    let out = c.mul_coeff(&pow);
                    pow = pow.mul(zeta);
                    out
                })
                .collect();
            SeriesPoly::new(coeffs)
        };
        RatFuncElem { ring: self.ring.clone(), num: map(&self.num), den: map(&self.den) }
    }

    /// Gauss value num − den; rank 1 or 2 according to the mode.
    pub fn gauss_value(&self, mode: &GaussMode) -> Result<GroupElem, FuncError> {
        let vn = poly_gauss_value(&self.num, mode)?.ok_or(FuncError::ValueOfZero)?;
        let vd = poly_gauss_value(&self.den, mode)?.ok_or(FuncError::DivisionByZero)?;
        Ok(vn.sub(&vd).expect("equal ranks"))
    }

    /// Residue of a unit (value zero).  Rank-1 modes produce a rational
    /// function of Y; rank-2 modes produce a constant.
    pub fn residue_of_unit(&self, mode: &GaussMode) -> Result<ResidueFraction, FuncError> {
        let vn = poly_gauss_value(&self.num, mode)?.ok_or(FuncError::ValueOfZero)?;
        let vd = poly_gauss_value(&self.den, mode)?.ok_or(FuncError::DivisionByZero)?;
        if vn != vd {
            return Err(FuncError::NotAUnit);
        }
        let field = self.ring.coeff_one().field().clone();
        match mode.value_rank() {
            1 => {
                let m = vn.coords()[0].clone();
                let extract = |p: &SeriesPoly<FqElem>| -> Result<Vec<FqElem>, FuncError> {
                    let mut out = Vec::with_capacity(p.coeffs().len());
                    for (i, a) in p.coeffs().iter().enumerate() {
                        let e = &m - mode.shift(i);
                        out.push(a.known_coeff(&e).ok_or(FuncError::UndeterminedResidue)?);
                    }
                    Ok(out)
                };
                let num = extract(&self.num)?;
                let den = extract(&self.den)?;
                ResidueFraction::from_polys(&field, num, den)
            }
            _ => {
                let lead = |p: &SeriesPoly<FqElem>| -> FqElem {
                    for a in p.coeffs() {
                        if a.has_terms() {
                            return a.leading().expect("has terms").1.clone();
                        }
                    }
                    unreachable!("gauss value exists, so a coefficient has terms")
                };
                let n = lead(&self.num);
                let d = lead(&self.den);
                Ok(ResidueFraction::constant(&field, n.mul(&d.inv().expect("nonzero lead"))))
            }
        }
    }

    /// Embed into series over 𝔽_q(Y): Plain sends y ↦ Y, Shifted sends
    /// y ↦ t^δ·Y; the quotient is computed in the target series ring.
    pub fn embed(
        &self,
        mode: &GaussMode,
        target: &SeriesRing<ResidueFraction>,
    ) -> Result<Series<ResidueFraction>, FuncError> {
        if mode.value_rank() != 1 {
            return Err(FuncError::EmbedUnsupported);
        }
        let field = self.ring.coeff_one().field().clone();
        let embed_poly =
            |p: &SeriesPoly<FqElem>| -> Result<Series<ResidueFraction>, FuncError> {
                let mut acc = target.zero();
                for (i, a) in p.coeffs().iter().enumerate() {
                    let y_pow = ResidueFraction::symbol_pow(&field, i);
                    let mapped = a
                        .map_coeffs(target, |c| ResidueFraction::constant(&field, c.clone()))?
                        .mul_monomial(&y_pow, &mode.shift(i))?;
                    acc = acc.add(&mapped)?;
                }
                Ok(acc)
            };
        let num = embed_poly(&self.num)?;
        let den = embed_poly(&self.den)?;
        Ok(num.div(&den)?)
    }
}

impl fmt::Display for RatFuncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_is_one = self.den.coeffs().len() == 1 && {
            let c = &self.den.coeffs()[0];
            c == &self.ring.one()
        };
        if den_is_one {
            return write!(f, "{}", self.num.fmt_with_var("y"));
        }
        write!(f, "({})/({})", self.num.fmt_with_var("y"), self.den.fmt_with_var("y"))
    }
}

/// Compare two Gauss values of equal rank lexicographically.
pub fn value_cmp(a: &GroupElem, b: &GroupElem) -> Ordering {
    a.lex_cmp(b).expect("values of equal rank")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::series::{Cutoff, ExponentPolicy};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(p: u64, ram: u64) -> SeriesRing<FqElem> {
        let f = Fq::new(p, 1).unwrap();
        SeriesRing::new(f.one(), ExponentPolicy::Puiseux { ram_bound: ram })
    }

    fn poly(r: &SeriesRing<FqElem>, coeffs: &[&str]) -> SeriesPoly<FqElem> {
        SeriesPoly::new(coeffs.iter().map(|c| r.parse(c).unwrap()).collect())
    }

    fn rk1(q: Rat) -> GroupElem {
        GroupElem::scalar(q)
    }

    fn rk2(a: Rat, b: Rat) -> GroupElem {
        GroupElem::new(vec![a, b])
    }

    #[test]
    fn gauss_values_per_mode() {
        let r = ring(7, 2);
        // f = (y² + t)/(t·y).
        let f = RatFuncElem::new(
            &r,
            poly(&r, &["t", "0", "1"]),
            poly(&r, &["0", "t"]),
        )
        .unwrap();

        assert_eq!(f.gauss_value(&GaussMode::Plain).unwrap(), rk1(rat(-1, 1)));
        assert_eq!(
            f.gauss_value(&GaussMode::Shifted { delta: rat(1, 2) }).unwrap(),
            rk1(rat(-1, 2))
        );
        assert_eq!(
            f.gauss_value(&GaussMode::ComposedYAdic).unwrap(),
            rk2(rat(-1, 1), rat(0, 1))
        );
        assert_eq!(
            f.gauss_value(&GaussMode::ValueTranscendental {
                alpha0: rat(1, 1),
                alpha1: rat(-1, 3)
            })
            .unwrap(),
            rk2(rat(-1, 1), rat(1, 3))
        );

        // Zero numerator has no value.
        let z = RatFuncElem::new(&r, SeriesPoly::new(vec![]), poly(&r, &["1"])).unwrap();
        assert!(matches!(z.gauss_value(&GaussMode::Plain), Err(FuncError::ValueOfZero)));
    }

    #[test]
    fn undetermined_valuation_is_an_error() {
        let r = ring(7, 1);
        // a₀ is zero only below its cutoff 1; a hidden term in [1, 2) could
        // undercut the known minimum 2 coming from a₁ = t².
        let ambiguous = SeriesPoly::new(vec![r.zero_to(rat(1, 1)), r.parse("t^2").unwrap()]);
        assert!(matches!(
            poly_gauss_value(&ambiguous, &GaussMode::Plain),
            Err(FuncError::UndeterminedValuation)
        ));
        // With the cutoff above the known minimum it is determined.
        let fine = SeriesPoly::new(vec![r.zero_to(rat(5, 1)), r.parse("t^2").unwrap()]);
        assert_eq!(
            poly_gauss_value(&fine, &GaussMode::Plain).unwrap(),
            Some(rk1(rat(2, 1)))
        );
        // Rank-2: an unknown lower-degree coefficient always blocks.
        assert!(matches!(
            poly_gauss_value(&ambiguous, &GaussMode::ComposedYAdic),
            Err(FuncError::UndeterminedValuation)
        ));
        // Exact zero polynomial: no value, not an error.
        assert_eq!(poly_gauss_value(&SeriesPoly::new(vec![]), &GaussMode::Plain).unwrap(), None);
    }

    #[test]
    fn residue_plain_reduces() {
        let r = ring(7, 1);
        // u = (y² + t)/(y² + y): residues Y² and Y² + Y share the factor Y.
        let u = RatFuncElem::new(
            &r,
            poly(&r, &["t", "0", "1"]),
            poly(&r, &["0", "1", "1"]),
        )
        .unwrap();
        let res = u.residue_of_unit(&GaussMode::Plain).unwrap();
        assert_eq!(res.render(), "(Y)/(Y + 1)");
        assert_eq!(res.degree(), 1);

        // t/1 has value 1 ≠ 0, so it has no residue.
        let f = RatFuncElem::new(&r, poly(&r, &["t"]), poly(&r, &["1"])).unwrap();
        assert!(matches!(
            f.residue_of_unit(&GaussMode::Plain),
            Err(FuncError::NotAUnit)
        ));
    }

    #[test]
    fn residue_shifted_symbol() {
        let f2 = Fq::new(2, 1).unwrap();
        let r = SeriesRing::new(f2.one(), ExponentPolicy::Puiseux { ram_bound: 2 });
        // u = y / t^(1/2) is a unit for δ = 1/2 with residue Y.
        let u = RatFuncElem::new(
            &r,
            SeriesPoly::new(vec![r.zero(), r.one()]),
            SeriesPoly::constant(r.parse("t^(1/2)").unwrap()),
        )
        .unwrap();
        let mode = GaussMode::Shifted { delta: rat(1, 2) };
        assert_eq!(u.gauss_value(&mode).unwrap(), rk1(rat(0, 1)));
        let res = u.residue_of_unit(&mode).unwrap();
        assert_eq!(res.render(), "Y");
    }

    #[test]
    fn residue_composed_is_constant() {
        let r = ring(7, 1);
        // u = (3t²y + t³y²)/(t²y): value (0,0), residue 3.
        let u = RatFuncElem::new(
            &r,
            poly(&r, &["0", "3*t^2", "t^3"]),
            poly(&r, &["0", "t^2"]),
        )
        .unwrap();
        let res = u.residue_of_unit(&GaussMode::ComposedYAdic).unwrap();
        assert_eq!(res.as_constant().unwrap().as_prime_constant(), Some(3));
    }

    #[test]
    fn residue_undetermined_when_truncated() {
        let r = ring(7, 1);
        // Unit with an unknown Y-coefficient at the residue level: a₁ is
        // only known above t⁰ ... its residue coefficient sits exactly at
        // the cutoff.
        let u = RatFuncElem::new(
            &r,
            SeriesPoly::new(vec![r.one(), r.zero_to(rat(0, 1))]),
            poly(&r, &["1"]),
        )
        .unwrap();
        assert!(matches!(
            u.residue_of_unit(&GaussMode::Plain),
            Err(FuncError::UndeterminedResidue)
        ));
    }

    #[test]
    fn embed_plain_geometric() {
        let r = ring(7, 1);
        let f7 = Fq::new(7, 1).unwrap();
        let rf_one = ResidueFraction::constant(&f7, f7.one());
        let target = SeriesRing::with_window(
            rf_one,
            ExponentPolicy::Puiseux { ram_bound: 1 },
            rat(6, 1),
        );
        // 1/(y + t) embeds to 1/(Y + t) = Y⁻¹ − t·Y⁻² + t²·Y⁻³ − ...
        let f = RatFuncElem::new(
            &r,
            SeriesPoly::constant(r.one()),
            SeriesPoly::new(vec![r.parse("t").unwrap(), r.one()]),
        )
        .unwrap();
        let s = f.embed(&GaussMode::Plain, &target).unwrap();
        for k in 0..3u32 {
            // Coefficient of t^k is (−1)^k / Y^(k+1).
            let mut want = ResidueFraction::symbol_pow(&f7, (k + 1) as usize).inv().unwrap();
            if k % 2 == 1 {
                want = want.neg();
            }
            let got = s.known_coeff(&rat(k as i64, 1)).unwrap();
            assert_eq!(got, want, "coefficient of t^{k}");
        }
    }

    #[test]
    fn embed_shifted_scales_y() {
        let f7 = Fq::new(7, 1).unwrap();
        let r = SeriesRing::new(f7.one(), ExponentPolicy::Puiseux { ram_bound: 2 });
        let rf_one = ResidueFraction::constant(&f7, f7.one());
        let target = SeriesRing::new(rf_one, ExponentPolicy::Puiseux { ram_bound: 2 });
        // y² + t with y ↦ t^(1/2)Y gives (Y² + 1)·t.
        let f = RatFuncElem::from_poly(&r, poly(&r, &["t", "0", "1"]));
        let s = f
            .embed(&GaussMode::Shifted { delta: rat(1, 2) }, &target)
            .unwrap();
        assert_eq!(s.term_count(), 1);
        let c = s.known_coeff(&rat(1, 1)).unwrap();
        assert_eq!(c.num_coeffs().len(), 3);
        assert!(c.num_coeffs()[0].is_one());
        assert!(c.num_coeffs()[2].is_one());
    }

    #[test]
    fn arithmetic_and_substitution() {
        let r = ring(5, 1);
        let y = RatFuncElem::var(&r);
        let one = RatFuncElem::from_poly(&r, SeriesPoly::constant(r.one()));
        // 1/y + y = (1 + y²)/y.
        let sum = one.div(&y).unwrap().add(&y).unwrap();
        assert_eq!(sum.num().coeffs().len(), 3);
        assert_eq!(sum.den().coeffs().len(), 2);
        assert_eq!(sum.to_string(), "(1 + 1*y^2)/(1*y)");

        // Substitute y ↦ 2y in y² + y: 4y² + 2y.
        let f = RatFuncElem::from_poly(&r, poly(&r, &["0", "1", "1"]));
        let two = Fq::new(5, 1).unwrap().from_u64(2);
        let g = f.substitute_y(&two);
        let expect = RatFuncElem::from_poly(&r, poly(&r, &["0", "2", "4"]));
        assert_eq!(g, expect);

        assert_eq!(sum.degree(), 2);
        assert_eq!(y.pow_int(3).unwrap().num().degree(), 3);
        assert_eq!(y.pow_int(-2).unwrap().den().degree(), 2);
    }

    // v(fg) = v(f) + v(g) for every mode; v(f+g) ≥ min(v(f), v(g)).
    #[test]
    fn valuation_axioms_randomized() {
        let r = ring(5, 2);
        let f5 = Fq::new(5, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xaf1e1d);
        let modes = [
            GaussMode::Plain,
            GaussMode::Shifted { delta: rat(3, 2) },
            GaussMode::ComposedYAdic,
            GaussMode::ValueTranscendental { alpha0: rat(2, 1), alpha1: rat(-1, 2) },
        ];
        let random_poly = |rng: &mut ChaCha8Rng| -> SeriesPoly<FqElem> {
            let deg = rng.gen_range(0..3usize);
            let coeffs: Vec<Series<FqElem>> = (0..=deg)
                .map(|_| {
                    let n = rng.gen_range(0..3);
                    let terms: Vec<(Rat, FqElem)> = (0..n)
                        .map(|_| {
                            (rat(rng.gen_range(-4..=6), 2), f5.from_u64(rng.gen_range(0..5)))
                        })
                        .collect();
                    r.from_terms(terms, Cutoff::Exact).unwrap()
                })
                .collect();
            SeriesPoly::new(coeffs)
        };
        for _ in 0..200 {
            let p = random_poly(&mut rng);
            let q = random_poly(&mut rng);
            for mode in &modes {
                let vp = poly_gauss_value(&p, mode).unwrap();
                let vq = poly_gauss_value(&q, mode).unwrap();
                let prod = p.mul_poly(&q).unwrap();
                let vprod = poly_gauss_value(&prod, mode).unwrap();
                match (&vp, &vq) {
                    (Some(a), Some(b)) => {
                        assert_eq!(
                            vprod.clone().unwrap(),
                            a.add(b).unwrap(),
                            "multiplicativity in mode {mode:?}"
                        );
                    }
                    _ => assert!(vprod.is_none()),
                }
                let sum = p.add_poly(&q).unwrap();
                if let (Some(a), Some(b), Some(vs)) =
                    (&vp, &vq, poly_gauss_value(&sum, mode).unwrap())
                {
                    let min = if value_cmp(a, b) == Ordering::Less { a } else { b };
                    assert!(
                        value_cmp(&vs, min) != Ordering::Less,
                        "ultrametric in mode {mode:?}"
                    );
                }
            }
        }
    }
}
