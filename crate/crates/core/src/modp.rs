//! Polynomials over a prime field 𝔽_p (odd p < 2^63), with squarefree,
//! distinct-degree and Cantor-Zassenhaus equal-degree factorization.
//!
//! Internal to the crate: used for modular factorization ahead of Hensel
//! lifting and for Dedekind tests at odd primes.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::mod_floor_u64;

/// Dense polynomial over 𝔽_p, ascending, no trailing zeros.
pub type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 63));
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, a: &BigInt) -> u64 {
        mod_floor_u64(a, self.p)
    }

    pub fn reduce_poly(self, coeffs: &[BigInt]) -> FpPoly {
        let mut v: FpPoly = coeffs.iter().map(|c| self.reduce(c)).collect();
        trim(&mut v);
        v
    }

    pub fn poly_add(self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut v: FpPoly = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn poly_sub(self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let mut v: FpPoly = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn poly_scale(self, a: &[u64], c: u64) -> FpPoly {
        let mut v: FpPoly = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut v);
        v
    }

    pub fn poly_mul(self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % p;
            }
        }
        let mut v: FpPoly = acc.into_iter().map(|c| c as u64).collect();
        trim(&mut v);
        v
    }

    pub fn poly_divrem(self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let db = b.len() - 1;
        if a.len() <= db {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + db], inv);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = self.sub(r[i + j], self.mul(c, bj));
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn poly_rem(self, a: &[u64], b: &[u64]) -> FpPoly {
        self.poly_divrem(a, b).1
    }

    pub fn monic(self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.poly_scale(a, self.inv(lc)),
        }
    }

    pub fn gcd(self, a: &[u64], b: &[u64]) -> FpPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc = *r0.last().expect("ext_gcd of two zero polynomials");
        let inv = self.inv(lc);
        (
            self.poly_scale(&r0, inv),
            self.poly_scale(&s0, inv),
            self.poly_scale(&t0, inv),
        )
    }

    pub fn derivative(self, a: &[u64]) -> FpPoly {
        let mut v: FpPoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        trim(&mut v);
        v
    }

    /// `base^e mod m` for a big exponent.
    pub fn powmod(self, base: &[u64], e: &BigUint, m: &[u64]) -> FpPoly {
        let mut result: FpPoly = vec![1];
        let base = self.poly_rem(base, m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.poly_rem(&self.poly_mul(&result, &result), m);
            if e.bit(i) {
                result = self.poly_rem(&self.poly_mul(&result, &base), m);
            }
        }
        self.poly_rem(&result, m)
    }

    pub fn is_squarefree(self, a: &[u64]) -> bool {
        a.len() >= 2 && self.gcd(a, &self.derivative(a)).len() == 1
    }

    /// Squarefree factorization of a monic polynomial: `a = ∏ f_i^{e_i}`.
    pub fn squarefree_factorization(self, a: &[u64]) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        self.sff_rec(&self.monic(a), 1, &mut out);
        out.sort();
        // merge equal bases produced by the p-th root recursion
        let mut merged: Vec<(FpPoly, u32)> = Vec::new();
        for (f, e) in out {
            match merged.iter_mut().find(|(g, _)| *g == f) {
                Some(entry) => entry.1 += e,
                None => merged.push((f, e)),
            }
        }
        merged
    }

    fn sff_rec(self, f: &[u64], mult: u32, out: &mut Vec<(FpPoly, u32)>) {
        if f.len() <= 1 {
            return;
        }
        let d = self.derivative(f);
        if d.is_empty() {
            // f = g(x^p) = g(x)^p over 𝔽_p
            let g: FpPoly = f.iter().step_by(self.p as usize).copied().collect();
            self.sff_rec(&g, mult * self.p as u32, out);
            return;
        }
        let mut c = self.gcd(f, &d);
        let mut w = self.poly_divrem(f, &c).0;
        let mut i = 1;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let z = self.poly_divrem(&w, &y).0;
            if z.len() > 1 {
                out.push((self.monic(&z), i * mult));
            }
            i += 1;
            w = y;
            c = self.poly_divrem(&c, &w).0;
        }
        if c.len() > 1 {
            let g: FpPoly = c.iter().step_by(self.p as usize).copied().collect();
            self.sff_rec(&g, mult * self.p as u32, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g_d, d)` with `g_d` the product of all degree-`d` factors.
    pub fn distinct_degree(self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x: FpPoly = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        let p = BigUint::from(self.p);
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&f, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                f = self.poly_divrem(&f, &g).0;
                h = self.poly_rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic product of distinct degree-`d` irreducibles.
    pub fn equal_degree(self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: FpPoly = {
                let mut v: FpPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                trim(&mut v);
                v
            };
            if a.len() < 2 {
                continue;
            }
            let b = self.powmod(&a, &e, f);
            let g = self.gcd(f, &self.poly_sub(&b, &[1]));
            if g.len() > 1 && g.len() < f.len() {
                let h = self.poly_divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial, sorted.
    pub fn factor_squarefree(self, f: &[u64]) -> Vec<FpPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, &mut rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Full factorization of a monic polynomial with multiplicities.
    pub fn factor(self, f: &[u64]) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        for (g, e) in self.squarefree_factorization(f) {
            for h in self.factor_squarefree(&g) {
                out.push((h, e));
            }
        }
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)));
        out
    }
}

pub fn trim(v: &mut FpPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Lifts 𝔽_p coefficients to integers in `0..p`.
pub fn lift(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn biguint_is_small(p: &BigUint) -> Option<u64> {
    p.to_u64().filter(|&q| q > 2 && q < (1 << 63))
}

pub fn is_one(v: &[u64]) -> bool {
    v.len() == 1 && v[0].is_one()
}

pub fn is_zero(v: &[u64]) -> bool {
    v.iter().all(Zero::is_zero)
}
