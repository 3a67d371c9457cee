//! Integer and rational helpers on top of `num-bigint` / `num-rational`.
//!
//! `BigRational` is always kept in lowest terms with a positive denominator by
//! the underlying crate, which is the canonical form every other module
//! relies on for equality.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: BigInt) -> BigRat {
    BigRat::from_integer(v)
}

/// Parses `"a"` or `"a/b"` into a canonical rational. Rejects decimal points
/// and exponents so floats can never slip into an exact computation.
pub fn parse_rational(s: &str) -> Result<BigRat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty rational"));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::invalid(format!("`{s}` is not an exact rational")));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::invalid(format!("bad integer `{num}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::invalid(format!("bad integer `{den}`")))?;
    if den.is_zero() {
        return Err(Error::invalid("zero denominator"));
    }
    Ok(BigRat::new(num, den))
}

pub fn rat_to_string(r: &BigRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigUint) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from_biguint(Sign::Plus, p.clone());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Removes every factor of `p` from `n`.
pub fn strip_factor(n: &BigUint, p: &BigUint) -> BigUint {
    let mut n = n.clone();
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
    }
    n
}

pub fn is_power_of(n: u128, p: u128) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    is_probable_prime(&BigUint::from(n))
}

/// Iterator over the odd primes starting at 3.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime_u64(n))
}

const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller-Rabin with the first 13 prime bases. Deterministic below 3.3e24,
/// probabilistic (error < 4^-13) above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Pollard-Brent rho; returns a nontrivial factor of composite `n` or `None`
/// if the iteration budget runs out.
fn pollard_brent(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut spent = 0u64;
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 128u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > budget {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization of `|n|` (n ≠ 0), sorted by prime.
///
/// Trial division to 2^16, then Pollard-Brent. A cofactor that resists the
/// rho budget is reported as a resource-cap error rather than guessed at.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor zero"));
    }
    let mut m = n.abs().to_biguint().expect("abs is nonnegative");
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let add = |p: BigUint, out: &mut Vec<(BigUint, u32)>| {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    let mut p = 2u64;
    while p < 65536 && !m.is_one() {
        let bp = BigUint::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            add(bp.clone(), &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) {
            add(c, &mut out);
            continue;
        }
        match pollard_brent(&c, 20_000_000) {
            Some(d) => {
                let e = &c / &d;
                stack.push(d);
                stack.push(e);
            }
            None => {
                return Err(Error::cap(
                    format!("integer factorization of {c}"),
                    20_000_000,
                ))
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn biguint_to_u64(p: &BigUint) -> Option<u64> {
    p.to_u64()
}

/// `a mod m` in `0..m`.
pub fn mod_floor_u64(a: &BigInt, m: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(m));
    r.to_u64().expect("reduced residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_rejects_floats() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rationals_are_canonical() {
        let r = rat(10, -4);
        assert_eq!(r.numer(), &int(-5));
        assert_eq!(r.denom(), &int(2));
    }

    #[test]
    fn factors_integers() {
        let f = factor_integer(&int(-46656)).unwrap();
        assert_eq!(
            f,
            vec![(BigUint::from(2u32), 6), (BigUint::from(3u32), 6)]
        );
        // two ~10-digit primes: forces the rho path
        let n = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, BigUint::from(998_244_353u64));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&int(180), &BigUint::from(3u32)), 2);
        assert_eq!(valuation(&int(-256), &BigUint::from(2u32)), 8);
        assert!(is_power_of(128, 2));
        assert!(!is_power_of(272, 2));
        assert!(is_power_of(1, 2));
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(17));
        assert!(!is_prime_u64(561));
        assert_eq!(odd_primes().take(4).collect::<Vec<_>>(), vec![3, 5, 7, 11]);
    }
}
