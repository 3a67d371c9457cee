use num_traits::{One, Zero};

use crate::arith::{parse_rational, rat_to_string, BigRat};
use crate::error::{Error, Result};
use crate::numberfield::BaseField;
use crate::poly::{discriminant, make_monic_integral, UniPoly};

/// An elliptic curve `y² = f(x)` over one of the base fields, `f` a cubic
/// with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticInput {
    pub base: BaseField,
    /// Monic integral cubic with the same splitting field as `original`.
    pub cubic: UniPoly,
    /// The cubic as supplied, or the 2-division polynomial of a long model.
    pub original: UniPoly,
}

impl EllipticInput {
    pub fn from_cubic(base: BaseField, f: UniPoly) -> Result<Self> {
        if f.degree() != Some(3) {
            return Err(Error::invalid(format!("elliptic input needs a cubic, got `{f}`")));
        }
        if discriminant(&f)?.is_zero() {
            return Err(Error::invalid(format!("`{f}` has a repeated root")));
        }
        Ok(EllipticInput {
            base,
            cubic: make_monic_integral(&f)?,
            original: f,
        })
    }

    /// From `[a1, a2, a3, a4, a6]`: the x-coordinates of the nonzero
    /// 2-torsion points are the roots of `4x³ + b2·x² + 2b4·x + b6`.
    pub fn from_long_weierstrass(base: BaseField, a: &[BigRat; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let four = BigRat::from_integer(4.into());
        let two = BigRat::from_integer(2.into());
        let b2 = a1 * a1 + &four * a2;
        let b4 = &two * a4 + a1 * a3;
        let b6 = a3 * a3 + &four * a6;
        let f = UniPoly::new(vec![b6, &two * &b4, b2, four]);
        Self::from_cubic(base, f)
    }
}

/// Jacobian of `y² = f(x)`, `f` rational of degree 5 or 6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianInput {
    pub base: BaseField,
    pub f: UniPoly,
    pub original: UniPoly,
}

impl JacobianInput {
    pub fn new(base: BaseField, f: UniPoly) -> Result<Self> {
        if !matches!(f.degree(), Some(5) | Some(6)) {
            return Err(Error::invalid(format!(
                "a genus-2 model needs degree 5 or 6, got `{f}`"
            )));
        }
        if discriminant(&f)?.is_zero() {
            return Err(Error::invalid(format!("`{f}` is not squarefree")));
        }
        Ok(JacobianInput {
            base,
            f: make_monic_integral(&f)?,
            original: f,
        })
    }
}

/// `a + b·s` with `s² = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    pub a: BigRat,
    pub b: BigRat,
}

impl QuadElem {
    pub fn rational(a: BigRat) -> Self {
        QuadElem { a, b: BigRat::zero() }
    }

    pub fn conjugate(&self) -> Self {
        QuadElem {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Accepts `a`, `b*s`, `s`, `-s`, `a+b*s`, `a-s`, …, with rational `a`, `b`.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::invalid("empty coefficient"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = t.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' && bytes[i - 1] != b'*' {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);
        let (mut a, mut b) = (BigRat::zero(), BigRat::zero());
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(r) => (-BigRat::one(), r),
                None => (BigRat::one(), term.strip_prefix('+').unwrap_or(term)),
            };
            if body == "s" {
                b += sign;
            } else if let Some(c) = body.strip_suffix("*s") {
                b += sign * parse_rational(c)?;
            } else if body.contains('s') {
                return Err(Error::invalid(format!("cannot parse `{text}` as a+b*s")));
            } else {
                a += sign * parse_rational(body)?;
            }
        }
        Ok(QuadElem { a, b })
    }
}

impl std::fmt::Display for QuadElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&rat_to_string(&self.a));
        }
        let b = rat_to_string(&self.b);
        if self.a.is_zero() {
            write!(f, "{b}*s")
        } else if b.starts_with('-') {
            write!(f, "{}{b}*s", rat_to_string(&self.a))
        } else {
            write!(f, "{}+{b}*s", rat_to_string(&self.a))
        }
    }
}

/// Weil restriction from `K′ = K₀(√D)` of `E₁: y² = f(x)`, with the cubic's
/// coefficients in `K′` (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilInput {
    pub base: BaseField,
    pub d: BigRat,
    pub cubic: Vec<QuadElem>,
}

impl WeilInput {
    pub fn new(base: BaseField, d: BigRat, mut cubic: Vec<QuadElem>) -> Result<Self> {
        while cubic.last().is_some_and(QuadElem::is_zero) {
            cubic.pop();
        }
        if cubic.len() != 4 {
            return Err(Error::invalid("Weil restriction input needs a cubic over K'"));
        }
        if d.is_zero() {
            return Err(Error::invalid("D must be nonzero"));
        }
        Ok(WeilInput { base, d, cubic })
    }

    pub fn conjugate_cubic(&self) -> Vec<QuadElem> {
        self.cubic.iter().map(QuadElem::conjugate).collect()
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.cubic.iter().all(|c| c.b.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceInput {
    Jacobian(JacobianInput),
    Product(EllipticInput, EllipticInput),
    WeilRestriction(WeilInput),
}

impl SurfaceInput {
    pub fn product(e1: EllipticInput, e2: EllipticInput) -> Result<Self> {
        if e1.base != e2.base {
            return Err(Error::invalid("both factors of a product must share the base field"));
        }
        Ok(SurfaceInput::Product(e1, e2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifierInput {
    Elliptic(EllipticInput),
    Surface(SurfaceInput),
}

impl ClassifierInput {
    pub fn base(&self) -> BaseField {
        match self {
            ClassifierInput::Elliptic(e) => e.base,
            ClassifierInput::Surface(SurfaceInput::Jacobian(j)) => j.base,
            ClassifierInput::Surface(SurfaceInput::Product(e, _)) => e.base,
            ClassifierInput::Surface(SurfaceInput::WeilRestriction(w)) => w.base,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ClassifierInput::Elliptic(_) => "elliptic",
            ClassifierInput::Surface(SurfaceInput::Jacobian(_)) => "jacobian",
            ClassifierInput::Surface(SurfaceInput::Product(..)) => "product",
            ClassifierInput::Surface(SurfaceInput::WeilRestriction(_)) => "weil_restriction",
        }
    }
}

impl From<EllipticInput> for ClassifierInput {
    fn from(e: EllipticInput) -> Self {
        ClassifierInput::Elliptic(e)
    }
}

impl From<SurfaceInput> for ClassifierInput {
    fn from(s: SurfaceInput) -> Self {
        ClassifierInput::Surface(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn quad_parse() {
        let q = |a, b| QuadElem { a: rat(a, 1), b: rat(b, 1) };
        assert_eq!(QuadElem::parse("3").unwrap(), q(3, 0));
        assert_eq!(QuadElem::parse("-s").unwrap(), q(0, -1));
        assert_eq!(QuadElem::parse("1 - 2*s").unwrap(), q(1, -2));
        assert_eq!(QuadElem::parse("-1/2+s").unwrap().a, rat(-1, 2));
        assert_eq!(QuadElem::parse("2*s+1").unwrap(), q(1, 2));
        assert_eq!(QuadElem::parse("-3/4*s").unwrap().b, rat(-3, 4));
        assert!(QuadElem::parse("2*t").is_err());
        assert!(QuadElem::parse("1.5").is_err());
        for s in ["0", "3", "-s", "1-2*s", "1/2+3/4*s"] {
            let e = QuadElem::parse(s).unwrap();
            assert_eq!(QuadElem::parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn long_weierstrass() {
        // y² + xy = x³ − x: b2 = 1, b4 = −2, b6 = 0 → 4x³ + x² − 4x
        let z = BigRat::zero;
        let e = EllipticInput::from_long_weierstrass(BaseField::Q, &[rat(1, 1), z(), z(), rat(-1, 1), z()])
            .unwrap();
        assert_eq!(e.original, UniPoly::from_ints(&[0, -4, 1, 4]));
        assert!(e.cubic.is_monic() && e.cubic.is_integral());
        assert!(EllipticInput::from_cubic(BaseField::Q, UniPoly::from_ints(&[0, 0, 0, 1])).is_err());
        assert!(JacobianInput::new(BaseField::Q, UniPoly::from_ints(&[0, -1, 0, 1])).is_err());
    }
}
