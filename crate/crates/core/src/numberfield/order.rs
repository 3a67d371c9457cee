//! Odd-prime ramification: Dedekind's criterion for `ℤ[α]` and Round 2
//! enlargement to a p-maximal order when the criterion fails.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{factor_integer, rat_int, valuation, BigRat};
use crate::error::{Error, Result};
use crate::modp::{biguint_is_small, lift, Fp};
use crate::poly::{discriminant, make_monic_integral, UniPoly};

use super::tower::{witness_support, FieldTower};

pub const MAX_RAMIFICATION_DEGREE: usize = 64;
pub const ROUND2_ITERATION_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RamificationMethod {
    /// `p` does not divide the polynomial discriminant.
    CoprimeToDiscriminant,
    /// Odd valuation of the polynomial discriminant.
    OddValuation,
    /// Dedekind's criterion shows `ℤ[α]` is p-maximal.
    Dedekind,
    /// Round 2 enlargement reached a p-maximal order.
    RoundTwo { iterations: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEvidence {
    pub prime: BigUint,
    /// `v_p` of the discriminant of the defining polynomial.
    pub poly_disc_valuation: u32,
    /// `v_p` of `[O : ℤ[α]]` for the p-maximal order `O`, when computed.
    pub index_valuation: Option<u32>,
    pub method: RamificationMethod,
    pub ramified: bool,
}

impl PrimeEvidence {
    /// `v_p` of the field discriminant, when it was determined.
    pub fn field_disc_valuation(&self) -> Option<u32> {
        self.index_valuation
            .map(|i| self.poly_disc_valuation - 2 * i)
    }
}

#[derive(Clone, Debug)]
pub struct RamificationReport {
    /// Monic integral defining polynomial of the field.
    pub polynomial: UniPoly,
    pub poly_discriminant: BigInt,
    /// The integer whose odd prime divisors were examined.
    pub support: BigInt,
    pub evidence: Vec<PrimeEvidence>,
}

impl RamificationReport {
    pub fn ramified_primes(&self) -> Vec<BigUint> {
        self.evidence
            .iter()
            .filter(|e| e.ramified)
            .map(|e| e.prime.clone())
            .collect()
    }
}

/// Odd primes dividing the discriminant of the field, with per-prime
/// evidence.
///
/// Candidates are the odd prime divisors of the discriminant of the field's
/// witness polynomial when one is known (no other prime can ramify in a
/// splitting field), otherwise of the defining polynomial itself.
pub fn ramification_report(k: &FieldTower) -> Result<RamificationReport> {
    let n = k.absolute_degree();
    if n > MAX_RAMIFICATION_DEGREE {
        return Err(Error::cap("ramification analysis degree", MAX_RAMIFICATION_DEGREE as u64));
    }
    if k.height() == 0 {
        return Ok(RamificationReport {
            polynomial: UniPoly::x(),
            poly_discriminant: BigInt::one(),
            support: BigInt::one(),
            evidence: vec![],
        });
    }
    let g = make_monic_integral(k.top().minpoly())?;
    analyze_polynomial(&g, k.normal_witness())
}

/// Odd ramification of `ℚ[x]/(g)` for irreducible `g`, without reference
/// to any tower.
pub fn stem_field_ramification(g: &UniPoly) -> Result<RamificationReport> {
    if g.deg() > MAX_RAMIFICATION_DEGREE {
        return Err(Error::cap("ramification analysis degree", MAX_RAMIFICATION_DEGREE as u64));
    }
    if g.deg() <= 1 {
        return ramification_report(&FieldTower::rational());
    }
    analyze_polynomial(&make_monic_integral(g)?, None)
}

pub fn odd_ramified_primes(k: &FieldTower) -> Result<Vec<BigUint>> {
    Ok(ramification_report(k)?.ramified_primes())
}

pub fn unramified_away_2(k: &FieldTower) -> Result<bool> {
    Ok(odd_ramified_primes(k)?.is_empty())
}

fn analyze_polynomial(g: &UniPoly, witness: Option<&UniPoly>) -> Result<RamificationReport> {
    let disc = discriminant(g)?.to_integer();
    let support = match witness {
        Some(w) if w.deg() >= 2 => {
            let s = witness_support(w)?;
            if s.deg() >= 2 {
                discriminant(&s)?.to_integer()
            } else {
                BigInt::one()
            }
        }
        Some(_) => BigInt::one(),
        None => disc.clone(),
    };
    let coeffs = g.int_coeffs().expect("monic integral");
    let mut evidence = Vec::new();
    for (p, _) in factor_integer(&support)? {
        if p == BigUint::from(2u32) {
            continue;
        }
        let v = valuation(&disc, &p);
        let ev = if v == 0 {
            PrimeEvidence {
                prime: p,
                poly_disc_valuation: 0,
                index_valuation: Some(0),
                method: RamificationMethod::CoprimeToDiscriminant,
                ramified: false,
            }
        } else if v % 2 == 1 {
            PrimeEvidence {
                prime: p,
                poly_disc_valuation: v,
                index_valuation: None,
                method: RamificationMethod::OddValuation,
                ramified: true,
            }
        } else {
            let q = biguint_is_small(&p).ok_or_else(|| {
                Error::cap(format!("Dedekind test at the prime {p}"), 1 << 63)
            })?;
            if dedekind_maximal(&coeffs, q) {
                PrimeEvidence {
                    prime: p,
                    poly_disc_valuation: v,
                    index_valuation: Some(0),
                    method: RamificationMethod::Dedekind,
                    ramified: true,
                }
            } else {
                let (idx, iterations) = p_maximal_index(g, q)?;
                if 2 * idx > v {
                    return Err(Error::Internal(format!(
                        "index valuation {idx} exceeds half of disc valuation {v} at {q}"
                    )));
                }
                PrimeEvidence {
                    prime: p,
                    poly_disc_valuation: v,
                    index_valuation: Some(idx),
                    method: RamificationMethod::RoundTwo { iterations },
                    ramified: v > 2 * idx,
                }
            }
        };
        evidence.push(ev);
    }
    Ok(RamificationReport {
        polynomial: g.clone(),
        poly_discriminant: disc,
        support,
        evidence,
    })
}

/// Dedekind's criterion: with `ḡ = ∏ tᵢ^{eᵢ}`, `g₁ = ∏ tᵢ`, `h = ḡ/g₁`
/// and `F = (g₁h − g)/p`, `ℤ[α]` is p-maximal iff `gcd(F̄, ḡ₁, h̄) = 1`.
pub fn dedekind_maximal(g: &[BigInt], p: u64) -> bool {
    let fp = Fp::new(p);
    let gbar = fp.reduce_poly(g);
    let mut g1 = vec![1u64];
    let mut h = vec![1u64];
    for (t, e) in fp.factor(&gbar) {
        g1 = fp.poly_mul(&g1, &t);
        for _ in 1..e {
            h = fp.poly_mul(&h, &t);
        }
    }
    let prod = int_poly_mul(&lift(&g1), &lift(&h));
    let pb = BigInt::from(p);
    let n = prod.len().max(g.len());
    let f: Vec<BigInt> = (0..n)
        .map(|i| {
            let a = prod.get(i).cloned().unwrap_or_default();
            let b = g.get(i).cloned().unwrap_or_default();
            let d = a - b;
            debug_assert!((&d % &pb).is_zero());
            d / &pb
        })
        .collect();
    let fbar = fp.reduce_poly(&f);
    let z = fp.gcd(&fp.gcd(&fbar, &g1), &h);
    z.len() <= 1
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// An order in `ℚ[x]/(g)` given by a ℤ-basis in power-basis coordinates.
struct Order {
    g: UniPoly,
    n: usize,
    basis: Vec<Vec<BigRat>>,
    inverse: Vec<Vec<BigRat>>,
}

impl Order {
    fn equation_order(g: &UniPoly) -> Self {
        let n = g.deg();
        let id: Vec<Vec<BigRat>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigRat::one() } else { BigRat::zero() }).collect())
            .collect();
        Order {
            g: g.clone(),
            n,
            basis: id.clone(),
            inverse: id,
        }
    }

    fn from_basis(g: &UniPoly, basis: Vec<Vec<BigRat>>) -> Result<Self> {
        let inverse = rat_inverse(&basis)?;
        Ok(Order {
            g: g.clone(),
            n: g.deg(),
            basis,
            inverse,
        })
    }

    fn power_mul(&self, a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
        let pa = UniPoly::new(a.to_vec());
        let pb = UniPoly::new(b.to_vec());
        let r = (&pa * &pb).rem(&self.g);
        (0..self.n).map(|i| r.coeff(i)).collect()
    }

    fn to_order_coords(&self, v: &[BigRat]) -> Vec<BigRat> {
        (0..self.n)
            .map(|j| {
                v.iter()
                    .zip(&self.inverse)
                    .fold(BigRat::zero(), |acc, (x, row)| acc + x * &row[j])
            })
            .collect()
    }

    /// `T[i][j]` = coordinates of `ωᵢωⱼ` in this basis.
    fn mult_table(&self) -> Result<Vec<Vec<Vec<BigInt>>>> {
        let mut t = vec![vec![Vec::new(); self.n]; self.n];
        for i in 0..self.n {
            for j in i..self.n {
                let c = self.to_order_coords(&self.power_mul(&self.basis[i], &self.basis[j]));
                let ints = c
                    .iter()
                    .map(|x| {
                        x.is_integer()
                            .then(|| x.to_integer())
                            .ok_or_else(|| Error::Internal("order not closed under multiplication".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                t[i][j] = ints.clone();
                t[j][i] = ints;
            }
        }
        Ok(t)
    }
}

fn rat_inverse(m: &[Vec<BigRat>]) -> Result<Vec<Vec<BigRat>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRat::one() } else { BigRat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular order basis".into()))?;
        a.swap(col, piv);
        let inv = BigRat::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Hermite normal form (upper triangular, positive diagonal, reduced above
/// the diagonal) of a full-rank integer lattice in ℤⁿ.
fn hnf(rows: Vec<Vec<BigInt>>, n: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut rest = rows;
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for col in 0..n {
        let nz: Vec<usize> = (0..rest.len()).filter(|&r| !rest[r][col].is_zero()).collect();
        let Some(&first) = nz.first() else {
            return Err(Error::Internal("rank-deficient lattice".into()));
        };
        let mut pivot = rest[first].clone();
        for &r in &nz[1..] {
            let a = pivot[col].clone();
            let b = rest[r][col].clone();
            let e = a.extended_gcd(&b);
            let (s, t, gg) = (e.x, e.y, e.gcd);
            let (ag, bg) = (&a / &gg, &b / &gg);
            let new_p: Vec<BigInt> = (0..n).map(|c| &s * &pivot[c] + &t * &rest[r][c]).collect();
            let new_r: Vec<BigInt> = (0..n).map(|c| &ag * &rest[r][c] - &bg * &pivot[c]).collect();
            pivot = new_p;
            rest[r] = new_r;
        }
        if pivot[col].is_negative() {
            pivot.iter_mut().for_each(|x| *x = -x.clone());
        }
        rest.remove(first);
        out.push(pivot);
    }
    for i in 0..n {
        for j in 0..i {
            let q = out[j][i].div_floor(&out[i][i]);
            if !q.is_zero() {
                let row_i = out[i].clone();
                for (x, y) in out[j].iter_mut().zip(&row_i) {
                    *x -= &q * y;
                }
            }
        }
    }
    Ok(out)
}

/// Left kernel over 𝔽_p of an `r × c` matrix: all `v` with `v·A = 0`.
fn left_kernel(a: &[Vec<u64>], fp: Fp) -> Vec<Vec<u64>> {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let mut prow = 0;
    for col in 0..c {
        let Some(piv) = (prow..r).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(prow, piv);
        let inv = fp.inv(m[prow][col]);
        for x in m[prow].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for i in 0..r {
            if i != prow && m[i][col] != 0 {
                let f = m[i][col];
                for k in 0..c + r {
                    let d = fp.mul(f, m[prow][k]);
                    m[i][k] = fp.sub(m[i][k], d);
                }
            }
        }
        prow += 1;
        if prow == r {
            break;
        }
    }
    m[prow..].iter().map(|row| row[c..].to_vec()).collect()
}

fn mul_mod(t: &[Vec<Vec<u64>>], a: &[u64], b: &[u64], fp: Fp) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u64; n];
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n {
            if b[j] == 0 {
                continue;
            }
            let ab = fp.mul(a[i], b[j]);
            for (k, o) in out.iter_mut().enumerate() {
                *o = fp.add(*o, fp.mul(ab, t[i][j][k]));
            }
        }
    }
    out
}

fn pow_mod(t: &[Vec<Vec<u64>>], a: &[u64], mut e: u64, one: &[u64], fp: Fp) -> Vec<u64> {
    let mut base = a.to_vec();
    let mut acc = one.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(t, &acc, &base, fp);
        }
        base = mul_mod(t, &base, &base, fp);
        e >>= 1;
    }
    acc
}

fn p_rows(n: usize, p: u64) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::from(p) } else { BigInt::zero() }).collect())
        .collect()
}

/// Solves `c·H = w` for upper-triangular integer `H`; `None` if `c` is not
/// integral.
fn solve_upper(h: &[Vec<BigInt>], w: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len();
    let mut w = w.to_vec();
    let mut c = vec![BigInt::zero(); n];
    for i in 0..n {
        let (q, r) = w[i].div_rem(&h[i][i]);
        if !r.is_zero() {
            return None;
        }
        for j in i..n {
            w[j] -= &q * &h[i][j];
        }
        c[i] = q;
    }
    Some(c)
}

/// One Round 2 step at `p`. Returns the enlarged order and `v_p` of the
/// index gained, or `None` when the order is already p-maximal.
fn enlarge(order: &Order, p: u64) -> Result<Option<(Order, u32)>> {
    let n = order.n;
    let fp = Fp::new(p);
    let table = order.mult_table()?;
    let tp: Vec<Vec<Vec<u64>>> = table
        .iter()
        .map(|row| row.iter().map(|v| v.iter().map(|x| fp.reduce(x)).collect()).collect())
        .collect();
    let one_coords: Vec<u64> = order
        .to_order_coords(&(0..n).map(|i| if i == 0 { BigRat::one() } else { BigRat::zero() }).collect::<Vec<_>>())
        .iter()
        .map(|x| fp.reduce(&x.to_integer()))
        .collect();
    // radical of pO: kernel of x ↦ x^{p^k} with p^k ≥ n
    let mut frob: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let e: Vec<u64> = (0..n).map(|j| u64::from(i == j)).collect();
            pow_mod(&tp, &e, p, &one_coords, fp)
        })
        .collect();
    let frob1 = frob.clone();
    let mut q = p as u128;
    while q < n as u128 {
        frob = frob
            .iter()
            .map(|row| {
                (0..n)
                    .map(|j| (0..n).fold(0, |acc, k| fp.add(acc, fp.mul(row[k], frob1[k][j]))))
                    .collect()
            })
            .collect();
        q *= p as u128;
    }
    let mut rad_rows = p_rows(n, p);
    rad_rows.extend(left_kernel(&frob, fp).iter().map(|v| lift(v)));
    let ip = hnf(rad_rows, n)?;
    // U/pO = kernel of O/pO → End(I_p/pI_p)
    let mut amat: Vec<Vec<u64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut flat = Vec::with_capacity(n * n);
        for gamma in &ip {
            let mut w = vec![BigInt::zero(); n];
            for (l, gl) in gamma.iter().enumerate() {
                if gl.is_zero() {
                    continue;
                }
                for (k, wk) in w.iter_mut().enumerate() {
                    *wk += gl * &table[i][l][k];
                }
            }
            let c = solve_upper(&ip, &w)
                .ok_or_else(|| Error::Internal("p-radical is not an ideal".into()))?;
            flat.extend(c.iter().map(|x| fp.reduce(x)));
        }
        amat.push(flat);
    }
    let kernel = left_kernel(&amat, fp);
    if kernel.is_empty() {
        return Ok(None);
    }
    let mut u_rows = p_rows(n, p);
    u_rows.extend(kernel.iter().map(|v| lift(v)));
    let u = hnf(u_rows, n)?;
    let diag_val: u32 = u
        .iter()
        .enumerate()
        .map(|(i, row)| valuation(&row[i], &BigUint::from(p)))
        .sum();
    let gained = n as u32 - diag_val;
    if gained == 0 {
        return Ok(None);
    }
    let inv_p = BigRat::new(BigInt::one(), BigInt::from(p));
    let basis: Vec<Vec<BigRat>> = u
        .iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(&order.basis)
                        .fold(BigRat::zero(), |acc, (c, b)| acc + rat_int(c.clone()) * &b[j])
                        * &inv_p
                })
                .collect()
        })
        .collect();
    Ok(Some((Order::from_basis(&order.g, basis)?, gained)))
}

/// `v_p([O_p : ℤ[α]])` for the p-maximal order `O_p`, and the number of
/// enlargement steps taken.
pub fn p_maximal_index(g: &UniPoly, p: u64) -> Result<(u32, usize)> {
    if !g.is_monic() || !g.is_integral() {
        return Err(Error::invalid("p-maximal order needs a monic integral polynomial"));
    }
    let mut order = Order::equation_order(g);
    let mut index = 0u32;
    for it in 0..ROUND2_ITERATION_CAP {
        match enlarge(&order, p)? {
            None => return Ok((index, it)),
            Some((next, gained)) => {
                index += gained;
                order = next;
            }
        }
    }
    Err(Error::cap(
        format!("Round 2 iterations at {p} without stabilizing"),
        ROUND2_ITERATION_CAP as u64,
    ))
}
