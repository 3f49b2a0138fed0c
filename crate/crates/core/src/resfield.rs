//! Finite residue fields 𝔽_{p^k} with explicit polynomial representation.
//!
//! Conventions:
//!
//! * A field is `𝔽_p[X]/(f)` for a monic irreducible `f` of degree k; the
//!   generator g is the class of X.  Elements are coefficient vectors of
//!   length k over 𝔽_p, least degree first.
//! * Irreducibility of the modulus is always verified at construction
//!   (`X^{p^k} ≡ X mod f` and `gcd(X^{p^{k/ℓ}} − X, f) = 1` for every prime
//!   `ℓ | k`), including for the built-in table, so a bad modulus fails
//!   loudly instead of corrupting arithmetic.
//! * Moduli come from a small table of pinned choices; any other `(p, k)`
//!   takes the first irreducible monic polynomial in lexicographic
//!   coefficient order, which is deterministic across runs.  For k = 1 the
//!   modulus is X − 1, so the generator is the constant 1.
//! * Operations that enumerate the field (root searches, element iteration)
//!   are capped at p^k ≤ 531441 = 3¹² and error beyond the cap.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::is_prime_u64;

/// Cap for exhaustive element enumeration.
pub const MAX_ENUMERATION: u64 = 531_441;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order p^k does not fit the representation")]
    TooLarge,
    #[error("field order {0} exceeds the enumeration cap {MAX_ENUMERATION}")]
    EnumerationTooLarge(u64),
    #[error("modulus is not irreducible over the prime field")]
    NotIrreducible,
    #[error("modulus must be monic of degree k with coefficients below p")]
    MalformedModulus,
    #[error("division by zero in the residue field")]
    DivisionByZero,
    #[error("no subfield of degree {0} inside an extension of degree {1}")]
    NoSubfield(u32, u32),
    #[error("the multiplicative group has no element of order {0}")]
    NoSuchRoot(u64),
}

#[derive(Debug)]
struct FqData {
    p: u64,
    k: u32,
    // Monic, length k+1, coefficients reduced mod p, least degree first.
    modulus: Vec<u64>,
    order: u64,
}

/// Handle to a residue field; cheap to clone, compared by (p, k, modulus).
#[derive(Clone, Debug)]
pub struct Fq(Arc<FqData>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.k == other.0.k
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Fq {}

// Pinned moduli; every entry is re-verified at construction time.
const MODULUS_TABLE: &[(u64, u32, &[u64])] = &[
    (2, 2, &[1, 1, 1]),    // X² + X + 1
    (3, 3, &[1, 2, 0, 1]), // X³ + 2X + 1
    (7, 2, &[3, 6, 1]),    // X² + 6X + 3
];

impl Fq {
    /// 𝔽_{p^k} with the pinned or lexicographically first irreducible
    /// modulus.
    pub fn new(p: u64, k: u32) -> Result<Fq, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::DegreeZero);
        }
        if k == 1 {
            // X - 1: the generator is the constant 1.
            return Fq::with_modulus(p, 1, &[p - 1, 1]);
        }
        if let Some((_, _, m)) = MODULUS_TABLE.iter().find(|&&(tp, tk, _)| tp == p && tk == k) {
            return Fq::with_modulus(p, k, m);
        }
        let order = checked_order(p, k)?;
        // Lexicographic scan over the k low coefficients; the candidate
        // count is bounded by the field order, which is already bounded.
        if order > MAX_ENUMERATION {
            return Err(FieldError::EnumerationTooLarge(order));
        }
        let mut coeffs = vec![0u64; (k + 1) as usize];
        coeffs[k as usize] = 1;
        loop {
            if poly_is_irreducible(&coeffs, p) {
                return Fq::with_modulus(p, k, &coeffs);
            }
            let mut i = 0usize;
            loop {
                assert!(i < k as usize, "an irreducible of every degree exists");
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    /// 𝔽_{p^k} with an explicit monic modulus; irreducibility is verified.
    pub fn with_modulus(p: u64, k: u32, modulus: &[u64]) -> Result<Fq, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::DegreeZero);
        }
        let order = checked_order(p, k)?;
        if modulus.len() != (k + 1) as usize
            || modulus[k as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(FieldError::MalformedModulus);
        }
        if !poly_is_irreducible(modulus, p) {
            return Err(FieldError::NotIrreducible);
        }
        Ok(Fq(Arc::new(FqData { p, k, modulus: modulus.to_vec(), order })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// p^k.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem { field: self.clone(), coeffs: vec![0; self.0.k as usize] }
    }

    pub fn one(&self) -> FqElem {
        self.from_u64(1)
    }

    /// Constant of the prime field.
    pub fn from_u64(&self, c: u64) -> FqElem {
        let mut coeffs = vec![0; self.0.k as usize];
        coeffs[0] = c % self.0.p;
        FqElem { field: self.clone(), coeffs }
    }

    /// Class of X modulo the modulus (the constant 1 when k = 1).
    pub fn generator(&self) -> FqElem {
        if self.0.k == 1 {
            return self.one();
        }
        let mut coeffs = vec![0; self.0.k as usize];
        coeffs[1] = 1;
        FqElem { field: self.clone(), coeffs }
    }

    /// Element from coefficients in the generator basis, least degree first.
    pub fn elem(&self, coeffs: &[u64]) -> FqElem {
        assert!(coeffs.len() <= self.0.k as usize, "coefficient vector too long");
        let mut c = vec![0; self.0.k as usize];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i] = x % self.0.p;
        }
        FqElem { field: self.clone(), coeffs: c }
    }

    /// All field elements in odometer order over the coefficient vectors.
    pub fn enumerate(&self) -> Result<Vec<FqElem>, FieldError> {
        if self.0.order > MAX_ENUMERATION {
            return Err(FieldError::EnumerationTooLarge(self.0.order));
        }
        let k = self.0.k as usize;
        let mut out = Vec::with_capacity(self.0.order as usize);
        let mut coeffs = vec![0u64; k];
        loop {
            out.push(FqElem { field: self.clone(), coeffs: coeffs.clone() });
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(out);
                }
                coeffs[i] += 1;
                if coeffs[i] < self.0.p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    /// First element (in enumeration order) of multiplicative order exactly
    /// n; requires n | p^k − 1.
    pub fn primitive_nth_root(&self, n: u64) -> Result<FqElem, FieldError> {
        if n == 0 || (self.0.order - 1) % n != 0 {
            return Err(FieldError::NoSuchRoot(n));
        }
        let prime_divisors = small_prime_divisors(n);
        for x in self.enumerate()? {
            if x.is_zero() || !x.pow(n).is_one() {
                continue;
            }
            if prime_divisors.iter().all(|&ell| !x.pow(n / ell).is_one()) {
                return Ok(x);
            }
        }
        // n divides the cyclic group order, so an element of order n exists.
        unreachable!("cyclic group of order p^k - 1 contains all divisor orders")
    }

    /// First x (in enumeration order) with xⁿ = c, if any.
    pub fn nth_root(&self, c: &FqElem, n: u64) -> Result<Option<FqElem>, FieldError> {
        assert_eq!(self, &c.field, "element of a different field");
        Ok(self.enumerate()?.into_iter().find(|x| x.pow(n) == *c))
    }

    /// First x (in enumeration order) with x^p − x = c, if any.
    pub fn artin_schreier_root(&self, c: &FqElem) -> Result<Option<FqElem>, FieldError> {
        assert_eq!(self, &c.field, "element of a different field");
        let p = self.0.p;
        Ok(self.enumerate()?.into_iter().find(|x| x.pow(p).sub(x) == *c))
    }

    /// Residue degree of X^p − X − c over this field: 1 when a root exists
    /// (the polynomial then splits completely), p otherwise (it is then
    /// irreducible).
    pub fn artin_schreier_residue_degree(&self, c: &FqElem) -> Result<u64, FieldError> {
        Ok(if self.artin_schreier_root(c)?.is_some() { 1 } else { self.0.p })
    }
}

/// Element of 𝔽_{p^k}; coefficients in the generator basis, least degree
/// first.
#[derive(Clone, Debug)]
pub struct FqElem {
    field: Fq,
    coeffs: Vec<u64>,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FqElem {}

impl FqElem {
    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Constant value when the element lies in the prime field.
    pub fn as_prime_constant(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn same_field(&self, other: &FqElem) -> &Fq {
        assert!(self.field == other.field, "elements of different residue fields");
        &self.field
    }

    pub fn add(&self, other: &FqElem) -> FqElem {
        let f = self.same_field(other);
        let p = f.0.p;
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + b) % p).collect();
        FqElem { field: f.clone(), coeffs }
    }

    pub fn sub(&self, other: &FqElem) -> FqElem {
        let f = self.same_field(other);
        let p = f.0.p;
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + p - b) % p).collect();
        FqElem { field: f.clone(), coeffs }
    }

    pub fn neg(&self) -> FqElem {
        let p = self.field.0.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FqElem { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &FqElem) -> FqElem {
        let f = self.same_field(other);
        let prod = poly_mul(&self.coeffs, &other.coeffs, f.0.p);
        let red = poly_rem(&prod, &f.0.modulus, f.0.p);
        let mut coeffs = vec![0; f.0.k as usize];
        coeffs[..red.len()].copy_from_slice(&red);
        FqElem { field: f.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u64) -> FqElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<FqElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let f = &self.field;
        let inv_poly = poly_mod_inverse(&self.coeffs, &f.0.modulus, f.0.p);
        let mut coeffs = vec![0; f.0.k as usize];
        coeffs[..inv_poly.len()].copy_from_slice(&inv_poly);
        Ok(FqElem { field: f.clone(), coeffs })
    }

    pub fn div(&self, other: &FqElem) -> Result<FqElem, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    /// x ↦ x^p.
    pub fn frobenius(&self) -> FqElem {
        self.pow(self.field.0.p)
    }

    /// Absolute trace Σ x^{p^i} into the prime field, returned as a
    /// constant below p.
    pub fn trace(&self) -> u64 {
        let mut acc = self.field.zero();
        let mut x = self.clone();
        for _ in 0..self.field.0.k {
            acc = acc.add(&x);
            x = x.frobenius();
        }
        acc.as_prime_constant().expect("trace lies in the prime field")
    }

    /// Degree of the minimal polynomial over the subfield 𝔽_{p^m}: the
    /// least d ≥ 1 with x^{(p^m)^d} = x.  Requires m | k.
    pub fn min_poly_degree(&self, m: u32) -> Result<u32, FieldError> {
        let k = self.field.0.k;
        if m == 0 || k % m != 0 {
            return Err(FieldError::NoSubfield(m, k));
        }
        let mut x = self.clone();
        for d in 1..=(k / m) {
            for _ in 0..m {
                x = x.frobenius();
            }
            if x == *self {
                return Ok(d);
            }
        }
        unreachable!("x^(p^k) = x for every element")
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "g".to_string(),
                (1, _) => format!("{c}*g"),
                (_, 1) => format!("g^{i}"),
                (_, _) => format!("{c}*g^{i}"),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn checked_order(p: u64, k: u32) -> Result<u64, FieldError> {
    let mut order: u64 = 1;
    for _ in 0..k {
        order = order.checked_mul(p).ok_or(FieldError::TooLarge)?;
    }
    Ok(order)
}

fn small_prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over 𝔽_p: Vec<u64>, least degree first, no forced
// trailing-zero trimming except where noted.

fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let t = (x as u128 * y as u128 + out[i + j] as u128) % p as u128;
            out[i + j] = t as u64;
        }
    }
    poly_trim(out)
}

/// Remainder of a by the monic modulus m.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (j, &c) in m.iter().enumerate() {
                let t = (c as u128 * lead as u128) % p as u128;
                let idx = shift + j;
                r[idx] = ((r[idx] as u128 + p as u128 - t) % p as u128) as u64;
            }
        }
        r.pop();
        r = poly_trim(r);
    }
    r
}

fn poly_add_scaled(a: &[u64], b: &[u64], s: u64, p: u64) -> Vec<u64> {
    // a + s·b
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0) as u128;
        let y = b.get(i).copied().unwrap_or(0) as u128;
        out[i] = ((x + s as u128 * y) % p as u128) as u64;
    }
    poly_trim(out)
}

/// Inverse of the prime-field constant c.
fn const_inverse(c: u64, p: u64) -> u64 {
    // Fermat: c^(p-2); p is prime and c ≢ 0.
    let mut e = p - 2;
    let mut base = c % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Inverse of a modulo the monic irreducible m, via extended Euclid.
fn poly_mod_inverse(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    // Invariant: r0 = s0·a mod m, r1 = s1·a mod m.
    let mut r0 = m.to_vec();
    let mut r1 = poly_rem(a, m, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1, p);
        let qs1 = poly_mul(&q, &s1, p);
        let s2 = poly_sub(&s0, &qs1, p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r0 is a nonzero constant gcd (m irreducible, a ≢ 0).
    assert_eq!(r0.len(), 1, "gcd with an irreducible modulus is constant");
    let scale = const_inverse(r0[0], p);
    poly_rem(&poly_add_scaled(&[], &s0, scale, p), m, p)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    poly_trim(out)
}

fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = poly_trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = const_inverse(*b.last().expect("nonempty"), p);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let shift = r.len() - b.len();
        let coef = ((*r.last().expect("nonempty") as u128 * lead_inv as u128) % p as u128) as u64;
        q[shift] = coef;
        for (j, &c) in b.iter().enumerate() {
            let t = (c as u128 * coef as u128) % p as u128;
            let idx = shift + j;
            r[idx] = ((r[idx] as u128 + p as u128 - t) % p as u128) as u64;
        }
        r = poly_trim(r);
    }
    (poly_trim(q), r)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    while !r1.is_empty() {
        let (_, r) = poly_divmod(&r0, &r1, p);
        r0 = r1;
        r1 = r;
    }
    r0
}

/// X^{p^j} mod m by iterating the p-th power map on the class of X.
fn frobenius_power_of_x(m: &[u64], p: u64, j: u32) -> Vec<u64> {
    let mut x = vec![0, 1];
    x = poly_rem(&x, m, p);
    for _ in 0..j {
        x = poly_powmod(&x, p, m, p);
    }
    x
}

fn poly_powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut base = poly_rem(a, m, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &base, p), m, p);
        }
        base = poly_rem(&poly_mul(&base, &base, p), m, p);
        e >>= 1;
    }
    acc
}

/// Rabin irreducibility: X^{p^k} ≡ X mod f and gcd(X^{p^{k/ℓ}} − X, f) = 1
/// for every prime ℓ | k.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = poly_rem(&[0, 1], f, p);
    let xk = frobenius_power_of_x(f, p, k);
    if xk != x {
        return false;
    }
    for ell in small_prime_divisors(k as u64) {
        let sub = frobenius_power_of_x(f, p, k / ell as u32);
        let diff = poly_sub(&sub, &x, p);
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pinned_moduli_construct() {
        let f4 = Fq::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f27 = Fq::new(3, 3).unwrap();
        assert_eq!(f27.modulus(), &[1, 2, 0, 1]);
        let f49 = Fq::new(7, 2).unwrap();
        assert_eq!(f49.modulus(), &[3, 6, 1]);
        let f5 = Fq::new(5, 1).unwrap();
        assert_eq!(f5.modulus(), &[4, 1]);
        assert!(f5.generator().is_one());
    }

    #[test]
    fn bad_moduli_rejected() {
        // X² + 1 = (X + 1)² over 𝔽₂.
        assert!(matches!(Fq::with_modulus(2, 2, &[1, 0, 1]), Err(FieldError::NotIrreducible)));
        // X² + 2 = (X − 1)(X + 1) over 𝔽₃.
        assert!(matches!(Fq::with_modulus(3, 2, &[2, 0, 1]), Err(FieldError::NotIrreducible)));
        assert!(matches!(Fq::with_modulus(2, 2, &[1, 1]), Err(FieldError::MalformedModulus)));
        assert!(matches!(Fq::with_modulus(2, 2, &[1, 1, 2]), Err(FieldError::MalformedModulus)));
        assert!(matches!(Fq::new(4, 2), Err(FieldError::NotPrime(4))));
        assert!(matches!(Fq::new(5, 0), Err(FieldError::DegreeZero)));
    }

    #[test]
    fn searched_modulus_is_lex_first() {
        // Over 𝔽₃ the quadratics X² and X² + ... with constant 0 have root
        // 0; the lexicographically first irreducible is X² + 1.
        let f9 = Fq::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // g² = −1 = 2, so (g+1)² = g² + 2g + 1 = 2g.
        let g = f9.generator();
        let gp1 = g.add(&f9.one());
        assert_eq!(gp1.mul(&gp1), g.mul(&f9.from_u64(2)));

        // 𝔽_{7^4} constructs and has the right order.
        let f2401 = Fq::new(7, 4).unwrap();
        assert_eq!(f2401.order(), 2401);
        assert_eq!(f2401.modulus().len(), 5);
    }

    #[test]
    fn f4_arithmetic_table() {
        let f4 = Fq::new(2, 2).unwrap();
        let g = f4.generator();
        let g2 = g.mul(&g);
        assert_eq!(g2, g.add(&f4.one())); // g² = g + 1
        assert!(g.pow(3).is_one()); // g³ = 1
        assert_eq!(g.inv().unwrap(), g2); // g⁻¹ = g²
        assert_eq!(g.pow(2).add(&g), f4.one()); // g² + g = 1
    }

    #[test]
    fn field_axioms_randomized() {
        let f49 = Fq::new(7, 2).unwrap();
        let elements = f49.enumerate().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0xf1e1d);
        for _ in 0..300 {
            let a = &elements[rng.gen_range(0..elements.len())];
            let b = &elements[rng.gen_range(0..elements.len())];
            let c = &elements[rng.gen_range(0..elements.len())];
            assert_eq!(a.add(b), b.add(a));
            assert_eq!(a.mul(b), b.mul(a));
            assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
            assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
            assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
            assert_eq!(a.sub(b).add(b), *a);
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
                // Fermat inverse agrees with the Euclid inverse.
                assert_eq!(a.inv().unwrap(), a.pow(f49.order() - 2));
            }
            // Frobenius is additive.
            assert_eq!(a.add(b).frobenius(), a.frobenius().add(&b.frobenius()));
        }
        assert!(matches!(f49.zero().inv(), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        let f27 = Fq::new(3, 3).unwrap();
        let all = f27.enumerate().unwrap();
        assert_eq!(all.len(), 27);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn trace_values_in_f4() {
        let f4 = Fq::new(2, 2).unwrap();
        let g = f4.generator();
        assert_eq!(f4.zero().trace(), 0);
        assert_eq!(f4.one().trace(), 0); // 1 + 1 = 0
        assert_eq!(g.trace(), 1); // g + g² = g + g + 1 = 1
        assert_eq!(g.add(&f4.one()).trace(), 1);
    }

    #[test]
    fn artin_schreier_examples() {
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(f2.artin_schreier_residue_degree(&f2.one()).unwrap(), 2);
        assert_eq!(f2.artin_schreier_residue_degree(&f2.zero()).unwrap(), 1);

        // Over 𝔽₄, x² − x = 1 has the root g.
        let f4 = Fq::new(2, 2).unwrap();
        assert_eq!(f4.artin_schreier_residue_degree(&f4.one()).unwrap(), 1);
        assert_eq!(f4.artin_schreier_root(&f4.one()).unwrap().unwrap(), f4.generator());
        assert_eq!(f4.artin_schreier_residue_degree(&f4.generator()).unwrap(), 2);

        // Over 𝔽₂₇, a root of x³ − x = 1 exists (trace of 1 is 3 = 0).
        let f27 = Fq::new(3, 3).unwrap();
        let a = f27.artin_schreier_root(&f27.one()).unwrap().unwrap();
        assert_eq!(a.pow(3).sub(&a), f27.one());
    }

    // The root-search implementation must agree with the trace criterion:
    // X^p − X − c has a root iff the absolute trace of c vanishes.
    #[test]
    fn artin_schreier_matches_trace_criterion() {
        for (p, k) in [(3u64, 3u32), (7, 2), (2, 2), (5, 2)] {
            let f = Fq::new(p, k).unwrap();
            for c in f.enumerate().unwrap() {
                let has_root = f.artin_schreier_root(&c).unwrap().is_some();
                assert_eq!(has_root, c.trace() == 0, "p={p} k={k} c={c}");
            }
        }
    }

    #[test]
    fn min_poly_degrees() {
        let f4 = Fq::new(2, 2).unwrap();
        assert_eq!(f4.generator().min_poly_degree(1).unwrap(), 2);
        assert_eq!(f4.one().min_poly_degree(1).unwrap(), 1);
        assert_eq!(f4.generator().min_poly_degree(2).unwrap(), 1);

        let f2401 = Fq::new(7, 4).unwrap();
        let g = f2401.generator();
        assert_eq!(g.min_poly_degree(1).unwrap(), 4);
        assert_eq!(g.min_poly_degree(2).unwrap(), 2);
        assert!(matches!(g.min_poly_degree(3), Err(FieldError::NoSubfield(3, 4))));

        // Relative trace into 𝔽_{7²} has degree ≤ 1 over it.
        let tr = g.add(&g.pow(49));
        assert_eq!(tr.min_poly_degree(2).unwrap(), 1);
    }

    // Independent check of the orbit method: the product of the d distinct
    // conjugates is a polynomial with coefficients fixed by x ↦ x^{p^m}
    // vanishing at the element.
    #[test]
    fn min_poly_conjugate_product_oracle() {
        let f81 = Fq::new(3, 4).unwrap();
        let elements = f81.enumerate().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for m in [1u32, 2] {
            let qm = 3u64.pow(m);
            for _ in 0..12 {
                let a = elements[rng.gen_range(0..elements.len())].clone();
                let d = a.min_poly_degree(m).unwrap();
                // Conjugates are pairwise distinct up to d.
                let mut conj = vec![a.clone()];
                for _ in 1..d {
                    conj.push(conj.last().unwrap().pow(qm));
                }
                for (i, x) in conj.iter().enumerate() {
                    for y in &conj[i + 1..] {
                        assert_ne!(x, y);
                    }
                }
                // ∏ (X − conj_i): build coefficient list over the big field.
                let mut poly = vec![f81.one()];
                for c in &conj {
                    let mut next = vec![f81.zero(); poly.len() + 1];
                    for (i, co) in poly.iter().enumerate() {
                        next[i + 1] = next[i + 1].add(co);
                        next[i] = next[i].sub(&co.mul(c));
                    }
                    poly = next;
                }
                // Coefficients lie in 𝔽_{3^m}.
                for co in &poly {
                    assert_eq!(co.pow(qm), *co);
                }
                // The element is a root.
                let mut val = f81.zero();
                for co in poly.iter().rev() {
                    val = val.mul(&a).add(co);
                }
                assert!(val.is_zero());
            }
        }
    }

    #[test]
    fn primitive_roots_and_nth_roots() {
        let f7 = Fq::new(7, 1).unwrap();
        assert_eq!(f7.primitive_nth_root(2).unwrap(), f7.from_u64(6));
        assert_eq!(f7.primitive_nth_root(3).unwrap(), f7.from_u64(2));
        assert!(matches!(f7.primitive_nth_root(5), Err(FieldError::NoSuchRoot(5))));

        let f49 = Fq::new(7, 2).unwrap();
        let z16 = f49.primitive_nth_root(16).unwrap();
        assert!(z16.pow(16).is_one());
        assert!(!z16.pow(8).is_one());

        // Cube roots in 𝔽₇: 3³ = 27 = 6.
        assert_eq!(f7.nth_root(&f7.from_u64(6), 3).unwrap(), Some(f7.from_u64(3)));
        // 3 is not a square mod 7.
        assert_eq!(f7.nth_root(&f7.from_u64(3), 2).unwrap(), None);
    }

    #[test]
    fn display_forms() {
        let f27 = Fq::new(3, 3).unwrap();
        let g = f27.generator();
        let e = g.mul(&g).add(&g.mul(&f27.from_u64(2))).add(&f27.one());
        assert_eq!(e.to_string(), "g^2 + 2*g + 1");
        assert_eq!(f27.zero().to_string(), "0");
        assert_eq!(f27.one().to_string(), "1");
        assert_eq!(Fq::new(7, 1).unwrap().from_u64(5).to_string(), "5");
        assert_eq!(g.to_string(), "g");
    }
}
