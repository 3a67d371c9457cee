//! Externally proven theorems, stored as data so certificates can cite
//! them by id and readers can see exactly what is taken on trust.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomRecord {
    pub id: &'static str,
    pub statement: &'static str,
    pub source: &'static str,
    /// When the axiom may be invoked.
    pub applies_when: &'static str,
    /// Shape of the conclusion a certificate step may record.
    pub conclusion: &'static str,
}

pub const JONES_DEGREES: &str = "JONES_DEGREES";
pub const JONES_QUARTIC: &str = "JONES_QUARTIC";
pub const JONES_OCTIC: &str = "JONES_OCTIC";
pub const JONES_TWO_GEN: &str = "JONES_TWO_GEN";
pub const OCTIC_LEMMA: &str = "OCTIC_LEMMA";
pub const HARBATER_272: &str = "HARBATER_272";
pub const SERRE_TATE: &str = "SERRE_TATE";
pub const GGR_TRICHOTOMY: &str = "GGR_TRICHOTOMY";
pub const PRO2_TOWER: &str = "PRO2_TOWER";
pub const WEIERSTRASS_PAIRS: &str = "WEIERSTRASS_PAIRS";

static AXIOMS: [AxiomRecord; 10] = [
    AxiomRecord {
        id: JONES_DEGREES,
        statement: "A number field K unramified outside {2, inf} with [K:Q] < 16 has [K:Q] in {1, 2, 4, 8}.",
        source: "J. Jones, Number fields unramified away from 2 (J. Number Theory, 2010); Jones-Roberts number field database",
        applies_when: "K/Q unramified outside {2, inf} and [K:Q] < 16",
        conclusion: "degree in {1,2,4,8}",
    },
    AxiomRecord {
        id: JONES_QUARTIC,
        statement: "For such K of degree 4, the Galois group of its normal closure is V4, C4 or D4.",
        source: "J. Jones (2010); Jones-Roberts number field database",
        applies_when: "K/Q unramified outside {2, inf}, [K:Q] = 4",
        conclusion: "closure group in {V4, C4, D4}",
    },
    AxiomRecord {
        id: JONES_OCTIC,
        statement: "For such K of degree 8, the Galois group of its normal closure is a 2-group of order at most 128.",
        source: "J. Jones (2010); Jones-Roberts number field database",
        applies_when: "K/Q unramified outside {2, inf}, [K:Q] = 8",
        conclusion: "closure degree 2^v with v <= 7",
    },
    AxiomRecord {
        id: JONES_TWO_GEN,
        statement: "For such K of degree < 16, the closure group G is generated by two elements s, t with t^2 = 1.",
        source: "J. Jones (2010); Jones-Roberts number field database",
        applies_when: "K/Q unramified outside {2, inf} and [K:Q] < 16",
        conclusion: "G = <s, t>, t^2 = 1",
    },
    AxiomRecord {
        id: OCTIC_LEMMA,
        statement: "An octic field unramified outside {2, inf} has normal closure of degree 2^v with v <= 6.",
        source: "JONES_OCTIC and JONES_TWO_GEN plus the Sylow 2-subgroup of S8 failing 2-generation (verifier lemma `octic`)",
        applies_when: "K/Q unramified outside {2, inf}, [K:Q] = 8",
        conclusion: "closure degree divides 64",
    },
    AxiomRecord {
        id: HARBATER_272,
        statement: "A Galois extension L/Q unramified outside {2, inf} with [L:Q] < 272 has 2-power degree.",
        source: "D. Harbater, Galois groups with prescribed ramification (Contemp. Math. 174, 1994), Thm 2.25",
        applies_when: "L/Q Galois, unramified outside {2, inf}, [L:Q] < 272",
        conclusion: "[L:Q] is a power of 2",
    },
    AxiomRecord {
        id: SERRE_TATE,
        statement: "If k(A[2^inf]) is contained in a pro-2 extension of k(mu_{2^inf}) unramified outside 2, then A has good reduction away from 2.",
        source: "J.-P. Serre and J. Tate, Good reduction of abelian varieties (Ann. of Math. 88, 1968), Section 1, Theorem 1",
        applies_when: "any abelian variety over a number field",
        conclusion: "heavenly at 2 implies good reduction away from 2",
    },
    AxiomRecord {
        id: GGR_TRICHOTOMY,
        statement: "A principally polarized abelian surface over a number field k is, as a polarized variety, a genus-2 Jacobian, a product of two elliptic curves, or the Weil restriction of an elliptic curve over a quadratic extension of k.",
        source: "J. Gonzalez, J. Guardia and V. Rotger, Abelian surfaces of GL2-type as Jacobians of curves (Acta Arith. 116, 2005), Thm 3.1",
        applies_when: "principally polarized abelian surface over a number field",
        conclusion: "input kind in {jacobian, product, weil_restriction}",
    },
    AxiomRecord {
        id: PRO2_TOWER,
        statement: "Let A/K0 have good reduction away from 2. If the normal closure of K0(A[2])/Q is a 2-extension unramified outside {2, inf}, then K0(A[2^inf]) lies in the maximal pro-2 extension of Q(mu_{2^inf}) unramified outside 2, since K0(A[2^inf])/K0(A[2]) is pro-2 and unramified outside 2.",
        source: "Neron-Ogg-Shafarevich criterion; elementary closure of pro-2 extensions under composition",
        applies_when: "closure degree of the 2-torsion field is a power of 2 and its odd ramification is empty",
        conclusion: "A is heavenly at 2",
    },
    AxiomRecord {
        id: WEIERSTRASS_PAIRS,
        statement: "For C: y^2 = f(x) of genus 2, unordered pairs of Weierstrass points correspond Galois-equivariantly to the nonzero points of J[2]; hence K0(J[2]) is the splitting field of f over K0 (with the point at infinity rational when deg f = 5).",
        source: "J. W. S. Cassels and E. V. Flynn, Prolegomena to a Middlebrow Arithmetic of Curves of Genus 2 (1996), Ch. 1",
        applies_when: "Jacobian of a genus-2 curve given by a squarefree quintic or sextic",
        conclusion: "2-torsion field = splitting field of f",
    },
];

pub fn all_axioms() -> &'static [AxiomRecord] {
    &AXIOMS
}

pub fn axiom(id: &str) -> Result<&'static AxiomRecord> {
    AXIOMS
        .iter()
        .find(|a| a.id == id)
        .ok_or_else(|| Error::UnknownAxiom(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallDegree {
    Allowed,
    Forbidden,
    /// The degree is outside the hypothesis `[K:ℚ] < 16`.
    Inapplicable,
}

/// `JONES_DEGREES` applied to a field degree.
pub fn apply_small_degree(deg: u64) -> SmallDegree {
    match deg {
        0 | 16.. => SmallDegree::Inapplicable,
        1 | 2 | 4 | 8 => SmallDegree::Allowed,
        _ => SmallDegree::Forbidden,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HarbaterOutcome {
    MustBe2Power,
    Inapplicable,
}

/// `HARBATER_272` applied to the degree of a Galois extension the caller
/// knows to be unramified outside `{2, ∞}`.
pub fn apply_harbater(galois_degree: u64) -> HarbaterOutcome {
    if (1..272).contains(&galois_degree) {
        HarbaterOutcome::MustBe2Power
    } else {
        HarbaterOutcome::Inapplicable
    }
}

/// Human-readable axiom table.
pub fn render_report() -> String {
    let mut out = String::new();
    for a in all_axioms() {
        out.push_str(&format!(
            "{}\n  statement:    {}\n  source:       {}\n  applies when: {}\n  conclusion:   {}\n\n",
            a.id, a.statement, a.source, a.applies_when, a.conclusion
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(axiom(JONES_DEGREES).unwrap().id, "JONES_DEGREES");
        assert!(axiom(HARBATER_272).unwrap().statement.contains("272"));
        assert!(matches!(axiom("NOPE"), Err(Error::UnknownAxiom(_))));
        let mut ids: Vec<_> = all_axioms().iter().map(|a| a.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), all_axioms().len());
    }

    #[test]
    fn small_degree_exhaustive() {
        for d in 1..=1000u64 {
            let expect = if d >= 16 {
                SmallDegree::Inapplicable
            } else if [1, 2, 4, 8].contains(&d) {
                SmallDegree::Allowed
            } else {
                SmallDegree::Forbidden
            };
            assert_eq!(apply_small_degree(d), expect, "{d}");
        }
        assert_eq!(apply_small_degree(3), SmallDegree::Forbidden);
        assert_eq!(apply_small_degree(16), SmallDegree::Inapplicable);
    }

    #[test]
    fn harbater_exhaustive() {
        for d in 1..=1000u64 {
            let expect = if d < 272 {
                HarbaterOutcome::MustBe2Power
            } else {
                HarbaterOutcome::Inapplicable
            };
            assert_eq!(apply_harbater(d), expect);
        }
        assert_eq!(apply_harbater(162), HarbaterOutcome::MustBe2Power);
        assert_eq!(apply_harbater(272), HarbaterOutcome::Inapplicable);
    }
}
