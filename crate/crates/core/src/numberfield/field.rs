//! Absolute number fields `ℚ[θ]/(m)` and polynomials over them.
//!
//! Elements are rational polynomials in `θ` reduced modulo the monic
//! minimal polynomial `m`. The rational field itself is `m = x`, so its
//! elements are constants.

use num_traits::{One, Zero};

use crate::arith::{odd_primes, rat_int, BigRat};
use crate::error::{Error, Result};
use crate::factor::factor_over_q;
use crate::modp::Fp;
use crate::poly::{interpolate, poly_gcd, resultant, UniPoly};

pub type Elem = UniPoly;

/// Largest norm degree the Trager factorizer will interpolate.
pub const NORM_DEGREE_CAP: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsField {
    minpoly: UniPoly,
}

impl AbsField {
    pub fn rational() -> Self {
        AbsField {
            minpoly: UniPoly::x(),
        }
    }

    /// Caller guarantees `minpoly` is monic and irreducible over ℚ.
    pub(crate) fn from_minpoly(minpoly: UniPoly) -> Self {
        debug_assert!(minpoly.is_monic());
        AbsField { minpoly }
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn reduce(&self, a: &UniPoly) -> Elem {
        if a.degree().map_or(true, |d| d < self.degree()) {
            return a.clone();
        }
        a.rem(&self.minpoly)
    }

    pub fn generator(&self) -> Elem {
        self.reduce(&UniPoly::x())
    }

    pub fn from_rat(&self, c: BigRat) -> Elem {
        UniPoly::constant(c)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a + b
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a - b
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::Internal("inverse of zero in a number field".into()));
        }
        if a.is_constant() {
            return Ok(UniPoly::constant(BigRat::one() / a.coeff(0)));
        }
        let (mut r0, mut r1) = (self.minpoly.clone(), a.clone());
        let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.deg() != 0 {
            return Err(Error::Internal(format!(
                "{} is not irreducible: {a} is a zero divisor",
                self.minpoly
            )));
        }
        let c = BigRat::one() / r0.coeff(0);
        Ok(self.reduce(&s0.scale(&c)))
    }

    /// Evaluates `a` (a polynomial in this field's generator) at an element
    /// `image` of `target`; used to push elements along an embedding.
    pub fn map_elem(a: &Elem, image: &Elem, target: &AbsField) -> Elem {
        let mut acc = UniPoly::zero();
        for c in a.coeffs().iter().rev() {
            acc = target.mul(&acc, image);
            acc = &acc + &UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn is_zero_elem(&self, a: &Elem) -> bool {
        self.reduce(a).is_zero()
    }
}

/// A polynomial with coefficients in an [`AbsField`], ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KPoly {
    coeffs: Vec<Elem>,
}

impl KPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { coeffs }
    }

    pub fn from_rational(f: &UniPoly) -> Self {
        KPoly::new(f.coeffs().iter().cloned().map(UniPoly::constant).collect())
    }

    pub fn zero() -> Self {
        KPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        KPoly::new(vec![UniPoly::one()])
    }

    /// `x - r`.
    pub fn linear(r: &Elem) -> Self {
        KPoly::new(vec![-r, UniPoly::one()])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn degree(&self) -> Option<usize> {
        (!self.coeffs.is_empty()).then(|| self.coeffs.len() - 1)
    }

    pub fn lc(&self) -> &Elem {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == UniPoly::one())
    }

    /// The rational polynomial, if every coefficient is a constant.
    pub fn as_rational(&self) -> Option<UniPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_constant().then(|| c.coeff(0)))
            .collect::<Option<Vec<_>>>()
            .map(UniPoly::new)
    }

    /// Renders with `var` standing for the field generator.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string().replace('x', var);
            let cs = if c.is_constant() { cs } else { format!("({cs})") };
            let mon = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            terms.push(match (cs.as_str(), mon.is_empty()) {
                (_, true) => cs.clone(),
                ("1", false) => mon,
                ("-1", false) => format!("-{mon}"),
                _ => format!("{cs}*{mon}"),
            });
        }
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl AbsField {
    pub fn kp_reduce(&self, f: &KPoly) -> KPoly {
        KPoly::new(f.coeffs.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn kp_add(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        KPoly::new((0..n).map(|i| &a.coeff(i) + &b.coeff(i)).collect())
    }

    pub fn kp_sub(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        KPoly::new((0..n).map(|i| &a.coeff(i) - &b.coeff(i)).collect())
    }

    pub fn kp_scale(&self, a: &KPoly, c: &Elem) -> KPoly {
        KPoly::new(a.coeffs.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn kp_mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        if a.is_zero() || b.is_zero() {
            return KPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        KPoly::new(out.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn kp_monic(&self, a: &KPoly) -> Result<KPoly> {
        if a.is_zero() || a.is_monic() {
            return Ok(a.clone());
        }
        let inv = self.inv(a.lc())?;
        Ok(self.kp_scale(a, &inv))
    }

    pub fn kp_divrem(&self, a: &KPoly, b: &KPoly) -> Result<(KPoly, KPoly)> {
        if b.is_zero() {
            return Err(Error::Internal("division by the zero polynomial".into()));
        }
        let inv = self.inv(b.lc())?;
        let db = b.deg();
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Ok((KPoly::zero(), a.clone()));
        }
        let mut q = vec![UniPoly::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(&r[i + db], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[i + j] = self.reduce(&(&r[i + j] - &(&c * bc)));
            }
            q[i] = c;
        }
        r.truncate(db);
        Ok((KPoly::new(q), KPoly::new(r)))
    }

    pub fn kp_rem(&self, a: &KPoly, b: &KPoly) -> Result<KPoly> {
        Ok(self.kp_divrem(a, b)?.1)
    }

    pub fn kp_exact_div(&self, a: &KPoly, b: &KPoly) -> Result<KPoly> {
        let (q, r) = self.kp_divrem(a, b)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact division over a number field".into()));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn kp_gcd(&self, a: &KPoly, b: &KPoly) -> Result<KPoly> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.kp_rem(&a, &b)?;
            a = b;
            b = self.kp_monic(&r)?;
        }
        self.kp_monic(&a)
    }

    pub fn kp_derivative(&self, a: &KPoly) -> KPoly {
        KPoly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&rat_int((i as i64).into())))
                .collect(),
        )
    }

    /// `a(x + t)`.
    pub fn kp_shift(&self, a: &KPoly, t: &Elem) -> KPoly {
        let lin = KPoly::new(vec![t.clone(), UniPoly::one()]);
        let mut acc = KPoly::zero();
        for c in a.coeffs.iter().rev() {
            acc = self.kp_mul(&acc, &lin);
            acc = self.kp_add(&acc, &KPoly::new(vec![c.clone()]));
        }
        acc
    }

    pub fn kp_eval(&self, a: &KPoly, t: &Elem) -> Elem {
        let mut acc = UniPoly::zero();
        for c in a.coeffs.iter().rev() {
            acc = &self.mul(&acc, t) + c;
        }
        acc
    }

    /// Yun's squarefree decomposition over the field; input need not be
    /// monic, output factors are monic with nonconstant degree.
    pub fn kp_squarefree_decomposition(&self, f: &KPoly) -> Result<Vec<(KPoly, u32)>> {
        let f = self.kp_monic(f)?;
        if f.deg() == 0 {
            return Ok(vec![]);
        }
        let df = self.kp_derivative(&f);
        let a0 = self.kp_gcd(&f, &df)?;
        let mut b = self.kp_exact_div(&f, &a0)?;
        let c = self.kp_exact_div(&df, &a0)?;
        let mut d = self.kp_sub(&c, &self.kp_derivative(&b));
        let mut out = Vec::new();
        let mut i = 1;
        while b.deg() > 0 {
            let a = self.kp_gcd(&b, &d)?;
            b = self.kp_exact_div(&b, &a)?;
            let c = self.kp_exact_div(&d, &a)?;
            d = self.kp_sub(&c, &self.kp_derivative(&b));
            if a.deg() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// `Norm_{K/ℚ} f`, i.e. `Res_θ(m(θ), f(x, θ))`, by evaluation at
    /// integer points and interpolation.
    pub fn kp_norm(&self, f: &KPoly) -> Result<UniPoly> {
        if f.is_zero() {
            return Ok(UniPoly::zero());
        }
        if let Some(r) = f.as_rational() {
            return Ok(r.pow(self.degree() as u32));
        }
        let n = f.deg() * self.degree();
        if n > NORM_DEGREE_CAP {
            return Err(Error::cap("norm degree in number-field factorization", NORM_DEGREE_CAP as u64));
        }
        let mut pts = Vec::with_capacity(n + 1);
        for x0 in 0..=n as i64 {
            let x0 = rat_int(x0.into());
            let mut h = UniPoly::zero();
            for c in f.coeffs.iter().rev() {
                h = &h.scale(&x0) + c;
            }
            let v = if h.is_zero() {
                BigRat::zero()
            } else {
                resultant(&self.minpoly, &h)?
            };
            pts.push((x0, v));
        }
        Ok(interpolate(&pts))
    }

    /// Factors a squarefree polynomial into monic irreducibles over the
    /// field (Trager: shift until the norm is squarefree, factor the norm
    /// over ℚ, pull each factor back by a gcd).
    pub fn kp_factor_squarefree(&self, f: &KPoly) -> Result<Vec<KPoly>> {
        let f = self.kp_monic(f)?;
        if f.deg() <= 1 {
            return Ok(if f.deg() == 1 { vec![f] } else { vec![] });
        }
        if self.is_rational() {
            let r = f.as_rational().expect("rational field");
            return Ok(factor_over_q(&r)?
                .factors
                .into_iter()
                .map(|(g, _)| KPoly::from_rational(&g))
                .collect());
        }
        let theta = self.generator();
        for k in shift_sequence() {
            let t = theta.scale(&rat_int((-k).into()));
            let fk = self.kp_shift(&f, &t);
            let norm = self.kp_norm(&fk)?;
            if !is_squarefree_q(&norm) {
                continue;
            }
            let nf = factor_over_q(&norm)?;
            if nf.factors.len() == 1 {
                return Ok(vec![f]);
            }
            let back = theta.scale(&rat_int(k.into()));
            let mut out = Vec::with_capacity(nf.factors.len());
            let mut total = 0;
            for (ni, _) in &nf.factors {
                let g = self.kp_gcd(&fk, &KPoly::from_rational(ni))?;
                if g.deg() == 0 {
                    continue;
                }
                total += g.deg();
                out.push(self.kp_shift(&g, &back));
            }
            if total != f.deg() {
                return Err(Error::Internal(format!(
                    "norm factors recovered degree {total} of {}",
                    f.deg()
                )));
            }
            return Ok(out);
        }
        unreachable!("shift sequence is infinite")
    }

    /// Full factorization with multiplicities; factors are monic.
    pub fn kp_factor(&self, f: &KPoly) -> Result<Vec<(KPoly, u32)>> {
        if f.is_zero() {
            return Err(Error::invalid("cannot factor the zero polynomial"));
        }
        let mut out = Vec::new();
        for (part, mult) in self.kp_squarefree_decomposition(f)? {
            for g in self.kp_factor_squarefree(&part)? {
                out.push((g, mult));
            }
        }
        out.sort_by(|a, b| kp_cmp(&a.0, &b.0));
        Ok(out)
    }

    pub fn kp_is_squarefree(&self, f: &KPoly) -> Result<bool> {
        Ok(self.kp_gcd(f, &self.kp_derivative(f))?.deg() == 0)
    }
}

/// Deterministic order: degree, then coefficient polynomials.
pub fn kp_cmp(a: &KPoly, b: &KPoly) -> std::cmp::Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            let o = x.canonical_cmp(y);
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// 0, 1, −1, 2, −2, …
fn shift_sequence() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|k| [k, -k]))
}

/// Squarefreeness over ℚ, trying a few primes before an exact gcd.
pub(crate) fn is_squarefree_q(f: &UniPoly) -> bool {
    if f.deg() <= 1 {
        return true;
    }
    let (_, prim) = f.primitive_part();
    for p in odd_primes().skip(10).take(6) {
        let fp = Fp::new(p);
        let red = fp.reduce_poly(&prim);
        if red.len() != prim.len() {
            continue;
        }
        if fp.is_squarefree(&red) {
            return true;
        }
    }
    poly_gcd(f, &f.derivative()).deg() == 0
}
