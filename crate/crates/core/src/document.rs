//! JSON input and output documents. Numbers are exact: JSON integers or
//! decimal strings `"a"` / `"a/b"`, never floats.

use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, BigRat};
use crate::classifier::{
    replay, ClassifierInput, ClassifyOptions, EllipticInput, JacobianInput, QuadElem, ReplayReport,
    SurfaceInput, Verdict, WeilInput,
};
use crate::error::{Error, Result};
use crate::numberfield::BaseField;
use crate::poly::UniPoly;

pub const OUTPUT_SCHEMA: &str = "heavenly-output/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn rational(&self) -> Result<BigRat> {
        match self {
            Num::Int(v) => Ok(BigRat::from_integer((*v).into())),
            Num::Text(s) => parse_rational(s),
        }
    }

    fn quad(&self) -> Result<QuadElem> {
        match self {
            Num::Int(v) => Ok(QuadElem::rational(BigRat::from_integer((*v).into()))),
            Num::Text(s) => QuadElem::parse(s),
        }
    }
}

/// An elliptic curve as an ascending cubic `f` or as `[a1, a2, a3, a4, a6]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weierstrass: Option<Vec<Num>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDocument {
    Elliptic {
        base_field: String,
        #[serde(flatten)]
        curve: CurveSpec,
    },
    Jacobian {
        base_field: String,
        f: Vec<Num>,
    },
    Product {
        base_field: String,
        curves: Vec<CurveSpec>,
    },
    WeilRestriction {
        base_field: String,
        #[serde(rename = "D")]
        d: Num,
        /// Ascending coefficients `a+b*s` of the cubic over `K′ = K₀(s)`, `s² = D`.
        f: Vec<Num>,
    },
}

fn poly(cs: &[Num]) -> Result<UniPoly> {
    Ok(UniPoly::new(cs.iter().map(Num::rational).collect::<Result<_>>()?))
}

fn curve(base: BaseField, c: &CurveSpec) -> Result<EllipticInput> {
    match (&c.f, &c.weierstrass) {
        (Some(f), None) => EllipticInput::from_cubic(base, poly(f)?),
        (None, Some(a)) => {
            let a: Vec<BigRat> = a.iter().map(Num::rational).collect::<Result<_>>()?;
            let a: [BigRat; 5] = a
                .try_into()
                .map_err(|_| Error::invalid("weierstrass needs [a1, a2, a3, a4, a6]"))?;
            EllipticInput::from_long_weierstrass(base, &a)
        }
        _ => Err(Error::invalid("a curve needs exactly one of `f` or `weierstrass`")),
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed input document: {e}")))
    }

    pub fn base_field(&self) -> &str {
        match self {
            InputDocument::Elliptic { base_field, .. }
            | InputDocument::Jacobian { base_field, .. }
            | InputDocument::Product { base_field, .. }
            | InputDocument::WeilRestriction { base_field, .. } => base_field,
        }
    }

    pub fn to_input(&self) -> Result<ClassifierInput> {
        let base = BaseField::parse(self.base_field())?;
        Ok(match self {
            InputDocument::Elliptic { curve: c, .. } => curve(base, c)?.into(),
            InputDocument::Jacobian { f, .. } => SurfaceInput::Jacobian(JacobianInput::new(base, poly(f)?)?).into(),
            InputDocument::Product { curves, .. } => {
                let [a, b] = curves.as_slice() else {
                    return Err(Error::invalid("a product needs exactly two curves"));
                };
                SurfaceInput::product(curve(base, a)?, curve(base, b)?)?.into()
            }
            InputDocument::WeilRestriction { d, f, .. } => {
                let cubic = f.iter().map(Num::quad).collect::<Result<_>>()?;
                SurfaceInput::WeilRestriction(WeilInput::new(base, d.rational()?, cubic)?).into()
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema: String,
    pub input: InputDocument,
    pub verdict: Verdict,
    pub degree_cap: usize,
    pub elapsed_ms: u64,
}

impl OutputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: OutputDocument =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed output document: {e}")))?;
        if doc.schema != OUTPUT_SCHEMA {
            return Err(Error::invalid(format!("unsupported schema `{}`", doc.schema)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn replay(&self) -> Result<ReplayReport> {
        replay(
            &self.input.to_input()?,
            &self.verdict,
            &ClassifyOptions {
                degree_cap: self.degree_cap,
            },
        )
    }
}

/// Parses, classifies and wraps the result.
pub fn classify_document(text: &str, opts: &ClassifyOptions) -> Result<OutputDocument> {
    let doc = InputDocument::parse(text)?;
    let input = doc.to_input()?;
    let start = std::time::Instant::now();
    let verdict = crate::classifier::classify_with(&input, opts)?;
    Ok(OutputDocument {
        schema: OUTPUT_SCHEMA.to_string(),
        input: doc,
        verdict,
        degree_cap: opts.degree_cap,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Status;

    #[test]
    fn documents() {
        let o = ClassifyOptions::default();
        let d = classify_document(r#"{"kind":"jacobian","base_field":"Q","f":[0,-1,0,0,0,1]}"#, &o).unwrap();
        assert_eq!(d.verdict.status, Status::Heavenly);
        let back = OutputDocument::parse(&d.to_json()).unwrap();
        assert!(back.replay().unwrap().consistent);

        let d = classify_document(r#"{"kind":"elliptic","base_field":"Q","weierstrass":["0","0","0","-1","0"]}"#, &o).unwrap();
        assert_eq!(d.verdict.torsion_field_degree, Some(1));

        let d = classify_document(
            r#"{"kind":"product","base_field":"Q(i)","curves":[{"f":[0,-1,0,1]},{"f":["0","-4","0","1"]}]}"#,
            &o,
        )
        .unwrap();
        assert_eq!(d.verdict.status, Status::Heavenly);

        let d = classify_document(r#"{"kind":"weil_restriction","base_field":"Q","D":"2","f":["0","-s",0,1]}"#, &o).unwrap();
        assert_eq!(d.verdict.closure_degree, Some(8));

        for bad in [
            r#"{"kind":"jacobian","base_field":"Q","f":[0,-1.5,0,0,0,1]}"#,
            r#"{"kind":"jacobian","base_field":"Q(sqrt3)","f":[0,-1,0,0,0,1]}"#,
            r#"{"kind":"elliptic","base_field":"Q","f":[0,0,0,1]}"#,
            r#"{"kind":"product","base_field":"Q","curves":[{"f":[0,-1,0,1]}]}"#,
            r#"{"kind":"surface","base_field":"Q"}"#,
            "not json",
        ] {
            assert!(classify_document(bad, &o).is_err(), "{bad}");
        }
    }
}
