//! Truncated Laurent–Puiseux series with exact rational exponents.
//!
//! Conventions:
//!
//! * A series is a finite map `exponent → coefficient` over an arbitrary
//!   coefficient field (anything implementing `Coeff`), together with a
//!   `Cutoff`: either `Exact` (all omitted exponents are genuinely zero) or
//!   `At(P)` (the series is known on exponents `< P` and unknown from `P`
//!   on).  Stored exponents always lie below the cutoff and carry nonzero
//!   coefficients.
//! * Exponents must satisfy the ring's `ExponentPolicy`: denominators
//!   dividing a fixed ramification bound, or p-power denominators up to a
//!   bound.  Both admitted sets are groups under addition, so sums,
//!   products and inverses never leave the policy; it is checked at
//!   construction only.
//! * Precision propagates exactly: addition keeps the smaller cutoff;
//!   multiplication of `x` (cutoff P₁) and `y` (cutoff P₂) is known below
//!   `min(P₁ + v(y), P₂ + v(x))` with `v` the least known exponent;
//!   inversion of a series with cutoff P and valuation v is known below
//!   `P − 2v`.  Inverting an exact multi-term series produces the ring's
//!   configured precision window above `−v`.
//! * The text form is `c*t^(e)` terms joined by `+`, with an optional
//!   `O(t^(P))` tail; multi-term coefficients are parenthesized.  The
//!   parser also accepts `-` signs and unparenthesized exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{fmt_rat, split_p_part};
use crate::resfield::{Fq, FqElem};
use crate::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("exponent {0} is not admitted by the ring's exponent policy")]
    ExponentPolicy(String),
    #[error("division by an exact zero series")]
    DivisionByZero,
    #[error("cannot invert a series with no known terms (truncation zero)")]
    InverseOfTruncationZero,
    #[error("leading coefficient is not invertible")]
    NonInvertibleCoeff,
    #[error("series from different rings")]
    MixedRings,
    #[error("parse error at byte {at}: {what}")]
    Parse { at: usize, what: String },
}

/// Coefficient field interface for series arithmetic.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// None exactly when the element is zero (coefficients form a field).
    fn inv(&self) -> Option<Self>;
    /// Rendering without outer parentheses.
    fn render(&self) -> String;
}

impl Coeff for FqElem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        FqElem::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FqElem::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        FqElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FqElem::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FqElem::mul(self, other)
    }
    fn neg(&self) -> Self {
        FqElem::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        FqElem::inv(self).ok()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// n·c in the coefficient field, by double-and-add.
pub(crate) fn coeff_mul_nat<C: Coeff>(c: &C, mut n: u64) -> C {
    let mut acc = c.zero_like();
    let mut base = c.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.add(&base);
        }
        base = base.add(&base);
        n >>= 1;
    }
    acc
}

/// Admissible exponent shapes for a series ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentPolicy {
    /// Denominators divide `ram_bound`: exponents in (1/ram_bound)·ℤ.
    Puiseux { ram_bound: u64 },
    /// Denominators are powers of p with exponent at most `max_exp`.
    PerfectHull { p: u64, max_exp: u32 },
}

impl ExponentPolicy {
    pub fn admits(&self, e: &Rat) -> bool {
        match self {
            ExponentPolicy::Puiseux { ram_bound } => {
                (e * Rat::from_integer((*ram_bound).into())).is_integer()
            }
            ExponentPolicy::PerfectHull { p, max_exp } => {
                let den = e.denom().to_biguint().expect("positive denominator");
                let (exp, free) = split_p_part(&den, *p);
                free.is_one() && exp <= *max_exp
            }
        }
    }
}

/// Precision marker: exact, or known strictly below a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cutoff {
    Exact,
    At(Rat),
}

impl Cutoff {
    pub fn at(&self) -> Option<&Rat> {
        match self {
            Cutoff::Exact => None,
            Cutoff::At(p) => Some(p),
        }
    }

    pub fn min_with(&self, other: &Cutoff) -> Cutoff {
        match (self, other) {
            (Cutoff::Exact, x) | (x, Cutoff::Exact) => x.clone(),
            (Cutoff::At(a), Cutoff::At(b)) => Cutoff::At(a.min(b).clone()),
        }
    }

    /// Shift a truncation bound; exactness is preserved.
    pub fn shifted(&self, delta: &Rat) -> Cutoff {
        match self {
            Cutoff::Exact => Cutoff::Exact,
            Cutoff::At(p) => Cutoff::At(p + delta),
        }
    }
}

#[derive(Debug)]
struct RingData<C: Coeff> {
    one: C,
    policy: ExponentPolicy,
    window: Rat,
}

/// Shared descriptor of a series ring: coefficient field (through a sample
/// `one`), exponent policy and default precision window.
#[derive(Debug)]
pub struct SeriesRing<C: Coeff>(Arc<RingData<C>>);

impl<C: Coeff> Clone for SeriesRing<C> {
    fn clone(&self) -> Self {
        SeriesRing(Arc::clone(&self.0))
    }
}

impl<C: Coeff> PartialEq for SeriesRing<C> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.one == other.0.one
                && self.0.policy == other.0.policy
                && self.0.window == other.0.window)
    }
}

impl<C: Coeff> SeriesRing<C> {
    pub fn new(one: C, policy: ExponentPolicy) -> Self {
        SeriesRing::with_window(one, policy, Rat::from_integer(64.into()))
    }

    pub fn with_window(one: C, policy: ExponentPolicy, window: Rat) -> Self {
        assert!(window.is_positive(), "precision window must be positive");
        assert!(one.is_one(), "ring descriptor needs the coefficient one");
        SeriesRing(Arc::new(RingData { one, policy, window }))
    }

    pub fn policy(&self) -> ExponentPolicy {
        self.0.policy
    }

    pub fn coeff_one(&self) -> &C {
        &self.0.one
    }

    pub fn window(&self) -> &Rat {
        &self.0.window
    }

    pub fn zero(&self) -> Series<C> {
        Series { ring: self.clone(), terms: BTreeMap::new(), cutoff: Cutoff::Exact }
    }

    /// Truncation zero: nothing known below `p`.
    pub fn zero_to(&self, p: Rat) -> Series<C> {
        Series { ring: self.clone(), terms: BTreeMap::new(), cutoff: Cutoff::At(p) }
    }

    pub fn one(&self) -> Series<C> {
        self.constant(self.0.one.clone())
    }

    pub fn constant(&self, c: C) -> Series<C> {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Rat::zero(), c);
        }
        Series { ring: self.clone(), terms, cutoff: Cutoff::Exact }
    }

    pub fn monomial(&self, c: C, exp: Rat) -> Result<Series<C>, SeriesError> {
        self.from_terms([(exp, c)], Cutoff::Exact)
    }

    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (Rat, C)>,
        cutoff: Cutoff,
    ) -> Result<Series<C>, SeriesError> {
        let mut map: BTreeMap<Rat, C> = BTreeMap::new();
        for (e, c) in terms {
            if !self.0.policy.admits(&e) {
                return Err(SeriesError::ExponentPolicy(fmt_rat(&e)));
            }
            match map.remove(&e) {
                None => {
                    map.insert(e, c);
                }
                Some(prev) => {
                    map.insert(e, prev.add(&c));
                }
            }
        }
        let mut s = Series { ring: self.clone(), terms: map, cutoff };
        s.normalize();
        Ok(s)
    }
}

/// Truncated Puiseux series over the coefficient field `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Coeff> {
    ring: SeriesRing<C>,
    terms: BTreeMap<Rat, C>,
    cutoff: Cutoff,
}

impl<C: Coeff> Series<C> {
    pub fn ring(&self) -> &SeriesRing<C> {
        &self.ring
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &C)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Genuinely zero, not merely unknown.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.cutoff == Cutoff::Exact
    }

    /// No known terms below a finite cutoff.
    pub fn is_truncation_zero(&self) -> bool {
        self.terms.is_empty() && matches!(self.cutoff, Cutoff::At(_))
    }

    pub fn has_terms(&self) -> bool {
        !self.terms.is_empty()
    }

    /// Least exponent of a known term.
    pub fn valuation(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    /// Least exponent at which the series can be nonzero: the first term,
    /// or the cutoff for a truncation zero; None for an exact zero.
    pub fn low_bound(&self) -> Option<Rat> {
        if let Some(v) = self.valuation() {
            return Some(v.clone());
        }
        self.cutoff.at().cloned()
    }

    pub fn leading(&self) -> Option<(&Rat, &C)> {
        self.terms.iter().next()
    }

    /// Coefficient at `e` when it is determined: zero counts as known below
    /// the cutoff; None from the cutoff on.
    pub fn known_coeff(&self, e: &Rat) -> Option<C> {
        if let Cutoff::At(p) = &self.cutoff {
            if e >= p {
                return None;
            }
        }
        Some(self.terms.get(e).cloned().unwrap_or_else(|| self.ring.0.one.zero_like()))
    }

    fn normalize(&mut self) {
        let cut = self.cutoff.clone();
        self.terms.retain(|e, c| {
            if c.is_zero() {
                return false;
            }
            match &cut {
                Cutoff::Exact => true,
                Cutoff::At(p) => e < p,
            }
        });
    }

    fn check_ring(&self, other: &Series<C>) -> Result<(), SeriesError> {
        if self.ring != other.ring {
            return Err(SeriesError::MixedRings);
        }
        Ok(())
    }

    pub fn add(&self, other: &Series<C>) -> Result<Series<C>, SeriesError> {
        self.check_ring(other)?;
        let cutoff = self.cutoff.min_with(&other.cutoff);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            match terms.remove(e) {
                None => {
                    terms.insert(e.clone(), c.clone());
                }
                Some(prev) => {
                    terms.insert(e.clone(), prev.add(c));
                }
            }
        }
        let mut s = Series { ring: self.ring.clone(), terms, cutoff };
        s.normalize();
        Ok(s)
    }

    pub fn sub(&self, other: &Series<C>) -> Result<Series<C>, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series<C> {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect();
        Series { ring: self.ring.clone(), terms, cutoff: self.cutoff.clone() }
    }

    pub fn mul(&self, other: &Series<C>) -> Result<Series<C>, SeriesError> {
        self.check_ring(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(self.ring.zero());
        }
        // Known below min(P₁ + v(y), P₂ + v(x)); an exact factor imposes no
        // bound of its own.
        let mut cutoff = Cutoff::Exact;
        if let Cutoff::At(p1) = &self.cutoff {
            let lb2 = other.low_bound().expect("not exact zero");
            cutoff = cutoff.min_with(&Cutoff::At(p1 + lb2));
        }
        if let Cutoff::At(p2) = &other.cutoff {
            let lb1 = self.low_bound().expect("not exact zero");
            cutoff = cutoff.min_with(&Cutoff::At(p2 + lb1));
        }
        let mut terms: BTreeMap<Rat, C> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if let Cutoff::At(p) = &cutoff {
                    if &e >= p {
                        continue;
                    }
                }
                let prod = c1.mul(c2);
                match terms.remove(&e) {
                    None => {
                        terms.insert(e, prod);
                    }
                    Some(prev) => {
                        terms.insert(e, prev.add(&prod));
                    }
                }
            }
        }
        let mut s = Series { ring: self.ring.clone(), terms, cutoff };
        s.normalize();
        Ok(s)
    }

    pub fn mul_coeff(&self, c: &C) -> Series<C> {
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect();
        let mut s = Series { ring: self.ring.clone(), terms, cutoff: self.cutoff.clone() };
        s.normalize();
        s
    }

    /// n·x (coefficientwise, so characteristic applies).
    pub fn mul_nat(&self, n: u64) -> Series<C> {
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), coeff_mul_nat(x, n)))
            .collect();
        let mut s = Series { ring: self.ring.clone(), terms, cutoff: self.cutoff.clone() };
        s.normalize();
        s
    }

    /// x · c·t^e; the cutoff shifts along.
    pub fn mul_monomial(&self, c: &C, exp: &Rat) -> Result<Series<C>, SeriesError> {
        if !self.ring.0.policy.admits(exp) {
            return Err(SeriesError::ExponentPolicy(fmt_rat(exp)));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e + exp, x.mul(c)))
            .collect();
        let mut s =
            Series { ring: self.ring.clone(), terms, cutoff: self.cutoff.shifted(exp) };
        s.normalize();
        Ok(s)
    }

    /// Forget everything from `at` on.
    pub fn truncate(&self, at: Rat) -> Series<C> {
        let cutoff = self.cutoff.min_with(&Cutoff::At(at));
        let mut s = Series { ring: self.ring.clone(), terms: self.terms.clone(), cutoff };
        s.normalize();
        s
    }

    /// Newton inversion.  Result cutoff: `P − 2v` for input cutoff P and
    /// valuation v; exact monomials invert exactly; exact multi-term input
    /// gets the ring window above `−v`.
    pub fn invert(&self) -> Result<Series<C>, SeriesError> {
        if self.terms.is_empty() {
            return Err(match self.cutoff {
                Cutoff::Exact => SeriesError::DivisionByZero,
                Cutoff::At(_) => SeriesError::InverseOfTruncationZero,
            });
        }
        let (v, lead) = self.leading().expect("has terms");
        let v = v.clone();
        let lead_inv = lead.inv().ok_or(SeriesError::NonInvertibleCoeff)?;
        if self.terms.len() == 1 && self.cutoff == Cutoff::Exact {
            return self.ring.monomial(lead_inv, -&v);
        }
        // Working cutoff for the input; the result is known below P − 2v.
        let work = match &self.cutoff {
            Cutoff::At(_) => self.clone(),
            Cutoff::Exact => {
                let p = &v + self.ring.window();
                self.truncate(p)
            }
        };
        let p = work.cutoff.at().expect("working copy is truncated").clone();
        let target = &p - &v - &v;
        let mut z = self
            .ring
            .monomial(lead_inv, -&v)?
            .truncate(target.clone());
        let one = self.ring.one();
        // e = 1 − x·z squares each round; stop when nothing is left below
        // the cutoff.
        for _ in 0..200 {
            let e = one.sub(&work.mul(&z)?)?;
            if !e.has_terms() {
                return Ok(z);
            }
            z = z.add(&z.mul(&e)?)?;
        }
        unreachable!("inversion residual must vanish in logarithmically many steps")
    }

    pub fn div(&self, other: &Series<C>) -> Result<Series<C>, SeriesError> {
        self.mul(&other.invert()?)
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow_int(&self, e: i64) -> Result<Series<C>, SeriesError> {
        if e < 0 {
            return self.invert()?.pow_int(-e);
        }
        let mut acc = self.ring.one();
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

    /// Map coefficients into another ring (used to embed coefficient
    /// fields); exponents are rechecked against the target policy.
    pub fn map_coeffs<D: Coeff>(
        &self,
        target: &SeriesRing<D>,
        f: impl Fn(&C) -> D,
    ) -> Result<Series<D>, SeriesError> {
        target.from_terms(
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
            self.cutoff.clone(),
        )
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in &self.terms {
            let t_part = if e.is_zero() {
                None
            } else if e.is_one() {
                Some("t".to_string())
            } else {
                Some(format!("t^({})", fmt_rat(e)))
            };
            let rendered = c.render();
            let c_part = if rendered.contains(' ') { format!("({rendered})") } else { rendered };
            parts.push(match t_part {
                None => c_part,
                Some(t) if c.is_one() => t,
                Some(t) => format!("{c_part}*{t}"),
            });
        }
        if let Cutoff::At(p) = &self.cutoff {
            parts.push(format!("O(t^({}))", fmt_rat(p)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Dense polynomial over a series ring; index = power of the indeterminate.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPoly<C: Coeff> {
    coeffs: Vec<Series<C>>,
}

impl<C: Coeff> SeriesPoly<C> {
    /// Trailing exact zeros are trimmed; truncation zeros are kept, since
    /// they carry precision information.
    pub fn new(mut coeffs: Vec<Series<C>>) -> SeriesPoly<C> {
        while coeffs.last().map(|c| c.is_exact_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        SeriesPoly { coeffs }
    }

    pub fn constant(s: Series<C>) -> SeriesPoly<C> {
        SeriesPoly::new(vec![s])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is 0 by convention.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Series<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&Series<C>> {
        self.coeffs.get(i)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &Series<C>) -> Result<Series<C>, SeriesError> {
        let mut acc = z.ring().zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> SeriesPoly<C> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_nat(i as u64))
            .collect();
        SeriesPoly::new(coeffs)
    }

    pub fn add_poly(&self, other: &SeriesPoly<C>) -> Result<SeriesPoly<C>, SeriesError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len().max(other.coeffs.len()));
        for i in 0..self.coeffs.len().max(other.coeffs.len()) {
            coeffs.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Ok(SeriesPoly::new(coeffs))
    }

    pub fn sub_poly(&self, other: &SeriesPoly<C>) -> Result<SeriesPoly<C>, SeriesError> {
        self.add_poly(&other.neg_poly())
    }

    pub fn neg_poly(&self) -> SeriesPoly<C> {
        SeriesPoly::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul_poly(&self, other: &SeriesPoly<C>) -> Result<SeriesPoly<C>, SeriesError> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(SeriesPoly::new(Vec::new()));
        }
        let ring = self.coeffs[0].ring().clone();
        let mut coeffs = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(SeriesPoly::new(coeffs))
    }

    pub fn mul_series(&self, s: &Series<C>) -> Result<SeriesPoly<C>, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SeriesPoly::new(coeffs))
    }

    pub fn fmt_with_var(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            let c_str = c.to_string();
            let wrapped = if c_str.contains(" + ") { format!("({c_str})") } else { c_str };
            parts.push(match i {
                0 => wrapped,
                1 => format!("{wrapped}*{var}"),
                _ => format!("{wrapped}*{var}^{i}"),
            });
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        parts.join(" + ")
    }
}

// ---- text parsing (residue-field coefficients) ----

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    field: Fq,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, what: impl Into<String>) -> Result<T, SeriesError> {
        Err(SeriesError::Parse { at: self.i, what: what.into() })
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        self.skip_ws();
        let c = self.s.get(self.i).copied();
        if c.is_some() {
            self.i += 1;
        }
        c
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SeriesError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn parse_u64(&mut self) -> Result<u64, SeriesError> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if self.i == start {
            return self.err("expected digits");
        }
        std::str::from_utf8(&self.s[start..self.i])
            .expect("digits are ascii")
            .parse::<u64>()
            .map_err(|_| SeriesError::Parse { at: start, what: "integer overflow".into() })
    }

    fn parse_signed_rational(&mut self) -> Result<Rat, SeriesError> {
        let negative = self.eat(b'-');
        let num = self.parse_u64()?;
        let den = if self.eat(b'/') { self.parse_u64()? } else { 1 };
        if den == 0 {
            return self.err("zero denominator");
        }
        let mut q = Rat::new(num.into(), den.into());
        if negative {
            q = -q;
        }
        Ok(q)
    }

    /// `t ['^' exponent]` where exponent is optionally parenthesized.
    fn parse_t_power(&mut self) -> Result<Rat, SeriesError> {
        self.expect(b't')?;
        if !self.eat(b'^') {
            return Ok(Rat::one());
        }
        if self.eat(b'(') {
            let q = self.parse_signed_rational()?;
            self.expect(b')')?;
            Ok(q)
        } else {
            self.parse_signed_rational()
        }
    }

    /// Integer constant or g-power.
    fn parse_coeff_atom(&mut self) -> Result<FqElem, SeriesError> {
        match self.peek() {
            Some(b'g') => {
                self.i += 1;
                let e = if self.eat(b'^') { self.parse_u64()? } else { 1 };
                Ok(self.field.generator().pow(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_u64()?;
                Ok(self.field.from_u64(n))
            }
            _ => self.err("expected coefficient"),
        }
    }

    /// Sum of coefficient products inside parentheses: `(g^2 + 2*g + 1)`.
    fn parse_coeff_sum(&mut self) -> Result<FqElem, SeriesError> {
        let mut acc = self.field.zero();
        let mut negative = self.eat(b'-');
        loop {
            let mut prod = self.parse_coeff_atom()?;
            while self.peek() == Some(b'*') {
                self.i += 1;
                prod = prod.mul(&self.parse_coeff_atom()?);
            }
            if negative {
                prod = prod.neg();
            }
            acc = acc.add(&prod);
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.i += 1;
                    negative = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// One additive term: product of coefficient atoms, parenthesized
    /// coefficient sums and t-powers.
    fn parse_term(&mut self) -> Result<(Rat, FqElem), SeriesError> {
        let mut coeff = self.field.one();
        let mut exp = Rat::zero();
        let mut any = false;
        loop {
            match self.peek() {
                Some(b't') => {
                    exp += self.parse_t_power()?;
                    any = true;
                }
                Some(b'(') => {
                    self.i += 1;
                    coeff = coeff.mul(&self.parse_coeff_sum()?);
                    self.expect(b')')?;
                    any = true;
                }
                Some(b'g') => {
                    coeff = coeff.mul(&self.parse_coeff_atom()?);
                    any = true;
                }
                Some(c) if c.is_ascii_digit() => {
                    coeff = coeff.mul(&self.parse_coeff_atom()?);
                    any = true;
                }
                _ => break,
            }
            if !self.eat(b'*') {
                break;
            }
        }
        if !any {
            return self.err("expected term");
        }
        Ok((exp, coeff))
    }

    /// `O(t^(p))`.
    fn parse_tail(&mut self) -> Result<Rat, SeriesError> {
        self.expect(b'O')?;
        self.expect(b'(')?;
        let p = self.parse_t_power()?;
        self.expect(b')')?;
        Ok(p)
    }
}

impl SeriesRing<FqElem> {
    /// Parse the display format back into a series.  The residue field is
    /// taken from the ring; `g` means its generator.
    pub fn parse(&self, input: &str) -> Result<Series<FqElem>, SeriesError> {
        let field = self.coeff_one().field().clone();
        let mut p = Parser { s: input.as_bytes(), i: 0, field };
        let mut terms: Vec<(Rat, FqElem)> = Vec::new();
        let mut cutoff = Cutoff::Exact;
        let mut negative = false;
        if p.peek() == Some(b'-') {
            p.i += 1;
            negative = true;
        }
        if p.peek().is_none() {
            return p.err("empty input");
        }
        loop {
            if p.peek() == Some(b'O') {
                if negative {
                    return p.err("a truncation tail cannot be negated");
                }
                cutoff = Cutoff::At(p.parse_tail()?);
                if p.peek().is_some() {
                    return p.err("the truncation tail must come last");
                }
                break;
            }
            if p.peek() == Some(b'0') && !p.s[p.i + 1..].iter().any(|c| !c.is_ascii_whitespace())
            {
                // Bare zero.
                p.i += 1;
                break;
            }
            let (e, mut c) = p.parse_term()?;
            if negative {
                c = c.neg();
            }
            terms.push((e, c));
            match p.bump() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(other) => {
                    p.i -= 1;
                    return p.err(format!("unexpected '{}'", other as char));
                }
            }
        }
        self.from_terms(terms, cutoff)
    }
}
