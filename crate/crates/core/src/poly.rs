//! Dense univariate polynomials over ℚ.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat_int, rat_to_string, BigRat};
use crate::error::{Error, Result};

/// Polynomial with exact rational coefficients, stored in ascending degree.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRat::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(rat_int).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^d`
    pub fn monomial(c: BigRat, d: usize) -> Self {
        let mut v = vec![BigRat::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRat> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!("{d} does not divide {self}")))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * g) + &Self::constant(c.clone()))
    }

    /// `self(a*x + b)`
    pub fn substitute_linear(&self, a: &BigRat, b: &BigRat) -> Self {
        self.compose(&Self::new(vec![b.clone(), a.clone()]))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    /// Splits `self = content * primitive` with `primitive` integral, with
    /// coprime coefficients and positive leading coefficient.
    pub fn primitive_part(&self) -> (BigRat, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRat::zero(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRat::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (BigRat::new(g, den), prim)
    }

    /// Canonical sort key: degree first, then ascending coefficients.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Coefficients as decimal strings, ascending.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![BigRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = rat_to_string(&a);
            match (i, a.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// Text syntax: `3*x^4 - 1/2*x + 7`, caret powers, explicit `*`, spaces
/// optional, variable `x`. Decimal points are rejected.
impl FromStr for UniPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::invalid("empty polynomial"));
        }
        if chars.iter().any(|&c| c == '.') {
            return Err(Error::invalid("floating-point coefficients are not allowed"));
        }
        let mut pos = 0;
        let mut acc = UniPoly::zero();
        let mut first = true;
        while pos < chars.len() {
            let mut sign = BigRat::one();
            match chars[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ if first => {}
                c => return Err(Error::invalid(format!("expected + or -, found `{c}`"))),
            }
            first = false;
            let (term, next) = parse_term(&chars, pos)?;
            pos = next;
            acc = &acc + &term.scale(&sign);
        }
        Ok(acc)
    }
}

fn parse_uint(chars: &[char], mut pos: usize) -> Option<(BigInt, usize)> {
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return None;
    }
    let s: String = chars[start..pos].iter().collect();
    Some((s.parse().ok()?, pos))
}

fn parse_term(chars: &[char], mut pos: usize) -> Result<(UniPoly, usize)> {
    let mut coeff = BigRat::one();
    let mut have_coeff = false;
    if let Some((n, p)) = parse_uint(chars, pos) {
        pos = p;
        let mut c = BigRat::from_integer(n);
        if pos < chars.len() && chars[pos] == '/' {
            let (d, p) = parse_uint(chars, pos + 1)
                .ok_or_else(|| Error::invalid("expected denominator after `/`"))?;
            if d.is_zero() {
                return Err(Error::invalid("zero denominator"));
            }
            c /= BigRat::from_integer(d);
            pos = p;
        }
        coeff = c;
        have_coeff = true;
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
        } else {
            if pos < chars.len() && chars[pos] == 'x' {
                return Err(Error::invalid("missing `*` between coefficient and x"));
            }
            return Ok((UniPoly::constant(coeff), pos));
        }
    }
    if pos >= chars.len() || chars[pos] != 'x' {
        return Err(Error::invalid(if have_coeff {
            "expected x after `*`".to_string()
        } else {
            format!("unexpected input at position {pos}")
        }));
    }
    pos += 1;
    let mut exp = 1usize;
    if pos < chars.len() && chars[pos] == '^' {
        let (e, p) =
            parse_uint(chars, pos + 1).ok_or_else(|| Error::invalid("expected exponent"))?;
        exp = e
            .try_into()
            .ok()
            .filter(|&e: &usize| e <= 4096)
            .ok_or_else(|| Error::invalid("exponent too large"))?;
        pos = p;
    }
    Ok((UniPoly::monomial(coeff, exp), pos))
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &UniPoly, g: &UniPoly) -> UniPoly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// `f / gcd(f, f')`, made monic.
pub fn squarefree_part(f: &UniPoly) -> Result<UniPoly> {
    if f.is_zero() {
        return Err(Error::invalid("squarefree part of the zero polynomial"));
    }
    let g = poly_gcd(f, &f.derivative());
    Ok(f.exact_div(&g)?.monic())
}

/// Yun's squarefree decomposition of a nonconstant polynomial: monic,
/// pairwise coprime, squarefree `a_i` with `f = lc * ∏ a_i^i`.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = poly_gcd(&f, &fp);
    let mut b = f.exact_div(&a0).unwrap();
    let mut c = fp.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = poly_gcd(&b, &d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).unwrap();
        if b.deg() == 0 {
            break;
        }
        c = d.exact_div(&a).unwrap();
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// `lc(f)^deg g * ∏ g(α)` over the roots of `f`, by the Euclidean recurrence.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<BigRat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::invalid("resultant with the zero polynomial"));
    }
    Ok(resultant_nonzero(f, g))
}

fn resultant_nonzero(f: &UniPoly, g: &UniPoly) -> BigRat {
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut acc = BigRat::one();
    loop {
        let (m, n) = (a.deg(), b.deg());
        if n == 0 {
            return acc * pow_rat(b.lc().unwrap(), m);
        }
        if m == 0 {
            return acc * pow_rat(a.lc().unwrap(), n);
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return BigRat::zero();
        }
        // Res(a,b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(b.lc().unwrap(), m - r.deg());
        a = b;
        b = r;
    }
}

pub fn pow_rat(c: &BigRat, e: usize) -> BigRat {
    num_traits::pow(c.clone(), e)
}

/// `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant(f: &UniPoly) -> Result<BigRat> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::invalid("discriminant of a constant polynomial")),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(BigRat::one());
    }
    let r = resultant_nonzero(f, &f.derivative());
    let s = if (n * (n - 1) / 2) % 2 == 1 { -r } else { r };
    Ok(s / f.lc().unwrap())
}

/// Monic integral polynomial with the same splitting field: take the
/// primitive integral part `F` with leading coefficient `a`, return
/// `a^{n-1} F(x/a)`.
pub fn make_monic_integral(f: &UniPoly) -> Result<UniPoly> {
    if f.is_zero() {
        return Err(Error::invalid("make_monic_integral of zero"));
    }
    let (_, prim) = f.primitive_part();
    let n = prim.len() - 1;
    let a = prim[n].clone();
    // coefficient of x^i becomes c_i * a^{n-1-i}; leading becomes 1
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in prim.iter().enumerate() {
        if i == n {
            out.push(BigInt::one());
        } else {
            out.push(c * num_traits::pow(a.clone(), n - 1 - i));
        }
    }
    Ok(UniPoly::from_bigints(&out))
}

/// Newton interpolation through distinct abscissae.
pub fn interpolate(points: &[(BigRat, BigRat)]) -> UniPoly {
    let n = points.len();
    let mut dd: Vec<BigRat> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i].0 - &points[i - j].0;
            dd[i] = num / den;
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        let lin = UniPoly::new(vec![-points[i].0.clone(), BigRat::one()]);
        acc = &(&acc * &lin) + &UniPoly::constant(dd[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(s: &str) -> UniPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("x^4-1"), UniPoly::from_ints(&[-1, 0, 0, 0, 1]));
        assert_eq!(p(" 1/3*x^3 - x "), UniPoly::new(vec![rat(0, 1), rat(-1, 1), rat(0, 1), rat(1, 3)]));
        assert_eq!(p("-x^2 + 2*x - 1/2").to_string(), "-x^2 + 2*x - 1/2");
        assert_eq!(p("x^4-1").to_string(), "x^4 - 1");
        assert_eq!(p("7"), UniPoly::from_ints(&[7]));
        assert!("1.5*x".parse::<UniPoly>().is_err());
        assert!("2x".parse::<UniPoly>().is_err());
        assert!("x^".parse::<UniPoly>().is_err());
        assert!("x + + 1".parse::<UniPoly>().is_err());
        assert!("y^2".parse::<UniPoly>().is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p("x^2-1"), &p("x-1")), p("x-1"));
        assert_eq!(poly_gcd(&p("x^3-x"), &p("x^2+1")), UniPoly::one());
        assert_eq!(poly_gcd(&p("2*x^2-2"), &UniPoly::zero()), p("x^2-1"));
        assert!(poly_gcd(&UniPoly::zero(), &UniPoly::zero()).is_zero());
    }

    #[test]
    fn gcd_oracle_by_evaluation() {
        // x^3 - x has roots {0, 1, -1}; none is a root of x^2 + 1
        let g = p("x^2+1");
        for r in [-1, 0, 1] {
            assert_ne!(g.eval(&rat(r, 1)), rat(0, 1));
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p("x^2")).unwrap(), p("x"));
        assert_eq!(squarefree_part(&p("x^3-x")).unwrap(), p("x^3-x"));
        assert_eq!(squarefree_part(&p("x^3-3*x+2")).unwrap(), p("x^2+x-2"));
        assert!(squarefree_part(&UniPoly::zero()).is_err());
        let dec = squarefree_decomposition(&p("x^5-x^4-2*x^3+2*x^2+x-1"));
        // (x-1)^3 (x+1)^2
        assert_eq!(dec, vec![(p("x+1"), 2), (p("x-1"), 3)]);
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p("x^2+1"), &p("x^2-1")).unwrap(), rat(4, 1));
        assert_eq!(resultant(&p("x"), &p("x^4+1")).unwrap(), rat(1, 1));
        assert!(resultant(&UniPoly::zero(), &p("x")).is_err());
        assert_eq!(resultant(&p("x^2-1"), &p("x-1")).unwrap(), rat(0, 1));
        // non-monic: Res(2x-1, x^2) = 2^2 * (1/2)^2 = 1
        assert_eq!(resultant(&p("2*x-1"), &p("x^2")).unwrap(), rat(1, 1));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p("x^3-x")).unwrap(), rat(4, 1));
        assert_eq!(discriminant(&p("x^5-x")).unwrap(), rat(-256, 1));
        assert_eq!(discriminant(&p("x^2+1")).unwrap(), rat(-4, 1));
        assert_eq!(discriminant(&p("x^6-1")).unwrap(), rat(46656, 1));
        assert!(discriminant(&p("3")).is_err());
    }

    #[test]
    fn discriminant_brute_oracle() {
        // ∏ f'(α) over α ∈ {0, ±1, ±i} for x^5 - x: f' = 5x^4 - 1 takes -1 at 0
        // and 4 at the four units, product -256; sign (-1)^{10} = +1.
        let fp = p("5*x^4-1");
        let real: BigRat = [0, 1, -1].iter().map(|&r| fp.eval(&rat(r, 1))).product();
        // at ±i, x^4 = 1 so f' = 4
        let total = real * rat(16, 1);
        assert_eq!(total, discriminant(&p("x^5-x")).unwrap());
    }

    #[test]
    fn monic_integral_examples() {
        assert_eq!(make_monic_integral(&p("2*x^2-1")).unwrap(), p("x^2-2"));
        assert_eq!(make_monic_integral(&p("x^3-2")).unwrap(), p("x^3-2"));
        assert_eq!(make_monic_integral(&p("1/3*x^3-x")).unwrap(), p("x^3-3*x"));
        assert!(make_monic_integral(&UniPoly::zero()).is_err());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p("3*x^3 - 1/2*x + 5");
        let pts: Vec<_> = (0..4).map(|i| (rat(i, 1), f.eval(&rat(i, 1)))).collect();
        assert_eq!(interpolate(&pts), f);
    }

    #[test]
    fn division_identity() {
        let a = p("x^5 + 3*x^2 - 7");
        let b = p("2*x^2 + 1");
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }
}
