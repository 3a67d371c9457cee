//! Factorization over ℚ: modular factorization at a small odd prime,
//! multifactor Hensel lifting past the Landau-Mignotte bound, and subset
//! recombination in ascending subset size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{odd_primes, BigRat};
use crate::error::{Error, Result};
use crate::modp::{lift, Fp, FpPoly};
use crate::poly::{squarefree_decomposition, UniPoly};

/// Limits for one factorization call.
#[derive(Clone, Copy, Debug)]
pub struct FactorLimits {
    /// Number of candidate subsets tried during recombination.
    pub max_subsets: u64,
    /// Number of admissible primes examined when picking the modulus.
    pub prime_trials: usize,
}

impl Default for FactorLimits {
    fn default() -> Self {
        FactorLimits {
            max_subsets: 5_000_000,
            prime_trials: 8,
        }
    }
}

/// A factorization over ℚ: `constant * ∏ factor^mult`, factors monic and
/// irreducible, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub constant: BigRat,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.constant.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// `(degree, multiplicity)` of each factor.
    pub fn degree_vector(&self) -> Vec<(usize, u32)> {
        self.factors.iter().map(|(f, e)| (f.deg(), *e)).collect()
    }
}

pub fn factor_over_q(f: &UniPoly) -> Result<Factorization> {
    factor_over_q_with(f, FactorLimits::default())
}

pub fn factor_over_q_with(f: &UniPoly, limits: FactorLimits) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let constant = f.lc().unwrap().clone();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for g in factor_squarefree_monic(&part, limits)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { constant, factors })
}

/// Irreducible monic factors of a monic squarefree rational polynomial.
pub fn factor_squarefree_monic(f: &UniPoly, limits: FactorLimits) -> Result<Vec<UniPoly>> {
    let n = f.deg();
    if n <= 1 {
        return Ok(vec![f.monic()]);
    }
    // F(x) = a^{n-1} P(x/a), P the primitive integral part with lc a
    let (_, prim) = f.primitive_part();
    let a = prim[n].clone();
    let big: Vec<BigInt> = prim
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == n {
                BigInt::one()
            } else {
                c * num_traits::pow(a.clone(), n - 1 - i)
            }
        })
        .collect();
    let mut out = Vec::new();
    for g in zassenhaus(&big, limits)? {
        // undo x -> x/a: g(a x), then make monic over ℚ
        let back: Vec<BigRat> = g
            .iter()
            .enumerate()
            .map(|(i, c)| BigRat::from_integer(c * num_traits::pow(a.clone(), i)))
            .collect();
        out.push(UniPoly::new(back).monic());
    }
    out.sort_by(|x, y| x.canonical_cmp(y));
    Ok(out)
}

type ZPoly = Vec<BigInt>;

fn ztrim(v: &mut ZPoly) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    ztrim(&mut v);
    v
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut v);
    v
}

fn zmulmod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    zmod(&zmul(a, b), m)
}

/// Symmetric residues in `(-m/2, m/2]`.
fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    let mut v: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    ztrim(&mut v);
    v
}

/// Exact division over ℤ of `a` by monic `b`; `None` if not exact.
fn zdiv_exact_monic(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if r.iter().all(Zero::is_zero) {
        ztrim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Landau-Mignotte style bound on the coefficients of any factor:
/// `2^n * (‖F‖₂ + 1)`.
fn factor_coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let root: BigInt = norm2.sqrt() + 1u32;
    root << n
}

struct ModularCandidate {
    p: u64,
    factors: Vec<FpPoly>,
    degree_sums: Vec<bool>,
}

fn subset_degree_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if ok[s - d] {
                ok[s] = true;
            }
        }
    }
    ok
}

fn choose_modulus(f: &[BigInt], limits: FactorLimits) -> (ModularCandidate, Vec<bool>) {
    let n = f.len() - 1;
    let mut allowed = vec![true; n + 1];
    let mut best: Option<ModularCandidate> = None;
    let mut tried = 0;
    for p in odd_primes() {
        let fp = Fp::new(p);
        let fbar = fp.reduce_poly(f);
        if fbar.len() != f.len() || !fp.is_squarefree(&fbar) {
            continue;
        }
        let factors = fp.factor_squarefree(&fbar);
        let degs: Vec<usize> = factors.iter().map(|g| g.len() - 1).collect();
        let sums = subset_degree_sums(&degs, n);
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        let cand = ModularCandidate {
            p,
            factors,
            degree_sums: sums,
        };
        if best
            .as_ref()
            .map_or(true, |b| cand.factors.len() < b.factors.len())
        {
            best = Some(cand);
        }
        tried += 1;
        if tried >= limits.prime_trials || best.as_ref().unwrap().factors.len() == 1 {
            break;
        }
    }
    (best.expect("some prime is admissible"), allowed)
}

/// Two-factor Hensel lifting of `f ≡ a0*b0 (mod p)` to `mod p^k`, with `f`,
/// `a0`, `b0` monic.
fn hensel_two(f: &[BigInt], a0: &FpPoly, b0: &FpPoly, fp: Fp, k: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fp.p);
    let (g, s, t) = fp.ext_gcd(a0, b0);
    debug_assert!(g == vec![1]);
    let mut a = lift(a0);
    let mut b = lift(b0);
    let mut pj = p.clone();
    for _ in 1..k {
        // e = (f - a b) / p^j mod p
        let ab = zmul(&a, &b);
        let n = f.len().max(ab.len());
        let diff: ZPoly = (0..n)
            .map(|i| {
                f.get(i).cloned().unwrap_or_default() - ab.get(i).cloned().unwrap_or_default()
            })
            .collect();
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let ebar = fp.reduce_poly(&e);
        if !ebar.is_empty() {
            let te = fp.poly_mul(&t, &ebar);
            let (q, r) = fp.poly_divrem(&te, a0);
            let beta = fp.poly_add(&fp.poly_mul(&s, &ebar), &fp.poly_mul(&q, b0));
            for (i, c) in r.iter().enumerate() {
                a[i] += &pj * BigInt::from(*c);
            }
            for (i, c) in beta.iter().enumerate() {
                b[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &p;
    }
    (a, b)
}

fn hensel_multi(f: &[BigInt], factors: &[FpPoly], fp: Fp, k: u32, pk: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zmod(f, pk)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[FpPoly]| fs.iter().fold(vec![1u64], |acc, g| fp.poly_mul(&acc, g));
    let a0 = prod(&factors[..mid]);
    let b0 = prod(&factors[mid..]);
    let (a, b) = hensel_two(f, &a0, &b0, fp, k);
    let a = zmod(&a, pk);
    let b = zmod(&b, pk);
    let mut out = hensel_multi(&a, &factors[..mid], fp, k, pk);
    out.extend(hensel_multi(&b, &factors[mid..], fp, k, pk));
    out
}

/// Irreducible factors over ℤ of a monic squarefree integer polynomial.
fn zassenhaus(f: &[BigInt], limits: FactorLimits) -> Result<Vec<ZPoly>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    // peel off the factor x so that constant-term pruning stays valid
    if f[0].is_zero() {
        let rest: ZPoly = f[1..].to_vec();
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(zassenhaus(&rest, limits)?);
        return Ok(out);
    }
    let (cand, allowed) = choose_modulus(f, limits);
    debug_assert!(cand.degree_sums[n]);
    if cand.factors.len() == 1 || (1..n).all(|d| !allowed[d]) {
        return Ok(vec![f.to_vec()]);
    }
    let fp = Fp::new(cand.p);
    let bound = factor_coefficient_bound(f);
    let p = BigInt::from(cand.p);
    let target = &bound * 2u32 + 1u32;
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= target {
        pk *= &p;
        k += 1;
    }
    let lifted = hensel_multi(f, &cand.factors, fp, k, &pk);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.to_vec();
    let mut found = Vec::new();
    let mut subsets_tried = 0u64;
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        let m = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        'search: loop {
            let deg: usize = idx.iter().map(|&i| lifted[remaining[i]].len() - 1).sum();
            if allowed[deg] {
                subsets_tried += 1;
                if subsets_tried > limits.max_subsets {
                    return Err(Error::cap("Zassenhaus recombination subsets", limits.max_subsets));
                }
                // constant term screen
                let mut ct = BigInt::one();
                for &i in &idx {
                    ct = (ct * &lifted[remaining[i]][0]).mod_floor(&pk);
                }
                let ct = symmetric(&[ct], &pk).pop().unwrap_or_default();
                if !ct.is_zero() && (&current[0] % &ct).is_zero() {
                    let mut g = vec![BigInt::one()];
                    for &i in &idx {
                        g = zmulmod(&g, &lifted[remaining[i]], &pk);
                    }
                    let g = symmetric(&g, &pk);
                    if let Some(q) = zdiv_exact_monic(&current, &g) {
                        hit = Some((idx.clone(), g, q));
                        break 'search;
                    }
                }
            }
            if !next_combination(&mut idx, m) {
                break 'search;
            }
        }
        match hit {
            Some((idx, g, q)) => {
                found.push(g);
                current = q;
                let drop: Vec<usize> = idx.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|r| !drop.contains(r));
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        found.push(current);
    }
    Ok(found)
}

/// Test-only oracle: true if `f` has a monic factor of degree `d` with
/// integer coefficients bounded by `bound` (exhaustive search).
#[cfg(test)]
pub(crate) fn brute_force_has_factor(f: &[i64], d: usize, bound: i64) -> bool {
    let big: ZPoly = f.iter().map(|&c| BigInt::from(c)).collect();
    let mut coeffs = vec![-bound; d];
    loop {
        let mut g: ZPoly = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        g.push(BigInt::one());
        if zdiv_exact_monic(&big, &g).is_some() {
            return true;
        }
        let mut i = 0;
        loop {
            if i == d {
                return false;
            }
            coeffs[i] += 1;
            if coeffs[i] > bound {
                coeffs[i] = -bound;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Rational roots of an integral polynomial via the divisor test, for use
/// as an independent check on small factors.
pub fn rational_roots(f: &UniPoly) -> Vec<BigRat> {
    let (_, prim) = f.primitive_part();
    if prim.is_empty() {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut prim = prim;
    if prim[0].is_zero() {
        roots.push(BigRat::zero());
        while prim.first().is_some_and(Zero::is_zero) {
            prim.remove(0);
        }
    }
    if prim.len() <= 1 {
        return roots;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                out.push(d.clone());
                out.push(&n / &d);
            }
            d += 1;
        }
        out
    };
    let g = UniPoly::from_bigints(&prim);
    for num in divisors(&prim[0]) {
        for den in divisors(prim.last().unwrap()) {
            for s in [1, -1] {
                let r = BigRat::new(&num * BigInt::from(s), den.clone());
                if g.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
