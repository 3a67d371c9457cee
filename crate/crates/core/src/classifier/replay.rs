//! Re-verification of a recorded verdict.

use serde::Serialize;

use crate::arith::parse_rational;
use crate::error::Result;
use crate::factor::factor_over_q;
use crate::knowledgebase::{self, PRO2_TOWER};
use crate::numberfield::{splitting_tower, stem_field_ramification, FieldTower, KPoly, MAX_RAMIFICATION_DEGREE};
use crate::poly::UniPoly;

use super::certificate::{Status, StepKind, Verdict};
use super::{classify_with, ClassifierInput, ClassifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayCheck {
    pub name: String,
    pub outcome: CheckOutcome,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayReport {
    pub consistent: bool,
    pub checks: Vec<ReplayCheck>,
}

fn check(name: &str, ok: bool, detail: impl Into<String>) -> ReplayCheck {
    ReplayCheck {
        name: name.to_string(),
        outcome: if ok { CheckOutcome::Pass } else { CheckOutcome::Fail },
        detail: detail.into(),
    }
}

fn skipped(name: &str, detail: impl Into<String>) -> ReplayCheck {
    ReplayCheck {
        name: name.to_string(),
        outcome: CheckOutcome::Skipped,
        detail: detail.into(),
    }
}

/// Replays `recorded` against `input`: rerun the pipeline, check that the
/// status follows from the certificate, and recheck the torsion field's
/// ramification and closure degree from its primitive polynomial alone,
/// without the tower.
pub fn replay(input: &ClassifierInput, recorded: &Verdict, opts: &ClassifyOptions) -> Result<ReplayReport> {
    let mut checks = Vec::new();

    let fresh = classify_with(input, opts)?;
    checks.push(check(
        "recompute",
        &fresh == recorded,
        "the pipeline reproduces the recorded verdict and certificate",
    ));

    let bad_ids: Vec<&str> = recorded
        .certificate
        .iter()
        .filter(|s| s.kind == StepKind::Axiom)
        .filter_map(|s| match &s.axiom {
            Some(id) if knowledgebase::axiom(id).is_ok() => None,
            Some(id) => Some(id.as_str()),
            None => Some("<missing>"),
        })
        .collect();
    checks.push(check("axiom_ids", bad_ids.is_empty(), format!("unresolved: {bad_ids:?}")));

    let primes = recorded.odd_ramified_primes.clone();
    let follows = match recorded.status {
        Status::Heavenly => {
            primes.as_ref().is_some_and(|p| p.is_empty())
                && recorded.closure_degree.is_some_and(u64::is_power_of_two)
                && recorded.step("galois_closure").is_some()
                && recorded.step("odd_ramification").is_some()
                && recorded.cites(PRO2_TOWER)
        }
        Status::NotHeavenly => {
            primes.as_ref().is_some_and(|p| !p.is_empty())
                || recorded.closure_degree.is_some_and(|d| !d.is_power_of_two())
        }
        Status::Unknown => recorded.resource_cap.is_some(),
    };
    checks.push(check("status_follows", follows, "the status is implied by the recorded facts"));

    let poly = match &recorded.torsion_field_polynomial {
        Some(cs) => Some(UniPoly::new(cs.iter().map(|c| parse_rational(c)).collect::<Result<_>>()?)),
        None => None,
    };
    match (&poly, recorded.torsion_field_absolute_degree) {
        (Some(m), Some(n)) => {
            let irreducible = m.deg() <= 1 || factor_over_q(m)?.is_irreducible();
            checks.push(check(
                "primitive_polynomial",
                irreducible && m.deg() as u64 == n.max(1),
                format!("irreducible of degree {n}"),
            ));
        }
        _ => checks.push(skipped("primitive_polynomial", "no torsion field recorded")),
    }

    match (&poly, &primes) {
        (Some(m), Some(rec)) if m.deg() <= MAX_RAMIFICATION_DEGREE => {
            let got: Vec<String> = stem_field_ramification(m)?
                .ramified_primes()
                .iter()
                .map(ToString::to_string)
                .collect();
            checks.push(check(
                "stem_ramification",
                &got == rec,
                format!("recomputed {{{}}}", got.join(", ")),
            ));
        }
        _ => checks.push(skipped("stem_ramification", "not recorded or above the degree limit")),
    }

    match (&poly, recorded.closure_degree) {
        (Some(m), Some(d)) => {
            if m.deg() <= 1 {
                checks.push(check("closure_by_rational_splitting", d == 1, "T = Q"));
            } else {
                match splitting_tower(&KPoly::from_rational(m), &FieldTower::rational(), opts.degree_cap) {
                    Ok(s) => checks.push(check(
                        "closure_by_rational_splitting",
                        s.absolute_degree() as u64 == d,
                        format!("splitting field of the primitive polynomial over Q has degree {}", s.absolute_degree()),
                    )),
                    Err(e) if e.is_resource_cap() => {
                        checks.push(skipped("closure_by_rational_splitting", e.to_string()))
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        _ => checks.push(skipped("closure_by_rational_splitting", "no closure degree recorded")),
    }

    Ok(ReplayReport {
        consistent: checks.iter().all(|c| c.outcome != CheckOutcome::Fail),
        checks,
    })
}
