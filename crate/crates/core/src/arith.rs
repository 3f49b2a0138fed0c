//! Small integer and rational helpers shared across modules.

use crate::Rat;
use num::bigint::{BigInt, Sign};
use num::{BigUint, Integer, One, Signed, Zero};

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Trial-division primality check; the primes in play are tiny.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest e with p^e | n, together with n / p^e.
pub fn split_p_part(n: &BigUint, p: u64) -> (u32, BigUint) {
    assert!(p >= 2, "split_p_part needs p >= 2");
    let p = BigUint::from(p);
    let mut e = 0u32;
    let mut m = n.clone();
    if m.is_zero() {
        return (0, m);
    }
    while (&m % &p).is_zero() {
        m /= &p;
        e += 1;
    }
    (e, m)
}

/// p-adic valuation of a nonzero rational (exponent of p in num/den).
pub fn p_valuation(q: &Rat, p: u64) -> i64 {
    assert!(!q.is_zero(), "p_valuation of zero is undefined");
    let (en, _) = split_p_part(&q.numer().abs().to_biguint().unwrap(), p);
    let (ed, _) = split_p_part(&q.denom().abs().to_biguint().unwrap(), p);
    en as i64 - ed as i64
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders a rational as `n` or `n/d`; `BigRational`'s own `Display` is not
/// relied on so report formatting stays pinned.
pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `n`, `-n`, `n/d` into a rational.  Used for CLI arguments.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, String> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("not an integer: {t:?}"))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

/// Exact lcm of the denominators of a set of rationals (1 for an empty set).
pub fn denom_lcm<'a>(qs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for q in qs {
        acc = acc.lcm(q.denom());
    }
    if acc.sign() == Sign::Minus {
        acc = -acc;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn p_parts() {
        let (e, m) = split_p_part(&BigUint::from(48u32), 2);
        assert_eq!((e, m), (4, BigUint::from(3u32)));
        assert_eq!(p_valuation(&rat(9, 4), 3), 2);
        assert_eq!(p_valuation(&rat(1, 27), 3), -3);
    }

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-4", "5/6", "-7/12"] {
            let q = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&q), s);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn denominator_lcm() {
        let qs = [rat(1, 4), rat(1, 6), rat(2, 1)];
        assert_eq!(denom_lcm(qs.iter()), BigInt::from(12));
    }
}
