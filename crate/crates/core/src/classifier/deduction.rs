//! Input-free deductions: the mod-2 image bound over ℚ and the quadratic
//! base Jacobian bounds.

use serde_json::json;

use crate::error::{Error, Result};
use crate::knowledgebase::{
    apply_small_degree, SmallDegree, HARBATER_272, JONES_DEGREES, JONES_OCTIC, OCTIC_LEMMA,
};
use crate::permgroup::{Perm, PermGroup};

use super::certificate::{Certificate, Step};

/// `GL₄(𝔽₂)` acting on the 15 nonzero vectors of `𝔽₂⁴`; the vector with
/// bits `v` is point `v`.
pub fn gl4_f2() -> PermGroup {
    let mut gens = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            // transvection e_j ↦ e_j + e_i
            let images: Vec<usize> = (1..16usize).map(|v| v ^ (((v >> j) & 1) << i)).collect();
            gens.push(Perm::from_images(&images).expect("transvections are bijective"));
        }
    }
    PermGroup::generate(&gens, 15).expect("GL4(F2) fits the closure cap")
}

/// `|GL_n(𝔽_q)| = ∏_{i<n} (qⁿ − qⁱ)`.
pub fn gl_order(n: u32, q: u64) -> u64 {
    let qn = q.pow(n);
    (0..n).map(|i| qn - q.pow(i)).product()
}

/// Machine-checked trace that a Galois representation of the group of
/// the maximal extension of ℚ unramified outside `{2, ∞}` into `GL₄(𝔽₂)`
/// has 2-group image.
pub fn gl4_deduction() -> Certificate {
    let mut steps = Vec::new();
    let formula = gl_order(4, 2);
    let factors: Vec<u64> = (0..4).map(|i| 16 - 2u64.pow(i)).collect();
    steps.push(
        Step::computed("gl4_order", "order of GL4(F2) from the product formula (2^4 - 2^i), i = 0..3")
            .with("factors", json!(factors))
            .with("order", formula),
    );

    let g = gl4_f2();
    let nonzero = 2u64.pow(4) - 1;
    steps.push(
        Step::computed(
            "gl4_permutation_group",
            "closure of the 12 elementary transvections acting on the nonzero vectors; distinct matrices give distinct permutations, so the action is faithful",
        )
        .with("points", nonzero)
        .with("generators", 12)
        .with("order", g.order() as u64)
        .with("matches_formula", g.order() as u64 == formula),
    );

    let orbit = g.orbit_of(1).len() as u64;
    let stab = g.stabilizer_of(1).order() as u64;
    steps.push(
        Step::computed(
            "orbit_stabilizer",
            "orbit and stabilizer of e1; for any subgroup G and nonzero v, [G : G_v] = #orbit(v) <= 15 < 16",
        )
        .with("orbit", orbit)
        .with("stabilizer", stab)
        .with("product", orbit * stab)
        .with("orbit_bound", nonzero)
        .with("bound_below_16", nonzero < 16),
    );

    let admissible: Vec<u64> = (1..=nonzero)
        .filter(|&k| apply_small_degree(k) == SmallDegree::Allowed)
        .collect();
    steps.push(
        Step::axiom(
            JONES_DEGREES,
            "each field M_v fixed by a vector stabilizer is unramified outside {2, inf} of degree #orbit(v) < 16, so that degree lies in {1, 2, 4, 8}",
        )
        .with("admissible_orbit_sizes", json!(admissible)),
    );
    steps.push(
        Step::axiom(
            HARBATER_272,
            "for #orbit(v) in {1, 2, 4} the closure L_v of M_v has degree dividing 4! = 24 < 272, hence 2-power",
        )
        .with("closure_degree_bound", 24),
    );
    steps.push(
        Step::axiom(
            JONES_OCTIC,
            "for #orbit(v) = 8 the closure L_v of M_v is a 2-extension",
        ),
    );
    steps.push(
        Step::computed(
            "conclusion",
            "faithfulness gives trivial intersection of the G_v, so the field cut out by the image is the compositum of the 2-extensions L_v and the image is a 2-group",
        )
        .with("axiom_dependent", true)
        .with("depends_on", json!([JONES_DEGREES, HARBATER_272, JONES_OCTIC])),
    );
    steps
}

/// Per-factor closure bound over a quadratic `K₀` for a factor of degree
/// `d` of the Weierstrass polynomial.
fn per_factor_bound(d: u64) -> Option<u64> {
    match d {
        1 => Some(1),
        2 => Some(4),
        4 => Some(32),
        _ => None,
    }
}

/// `2·∏ b(dᵢ)`: the bound on a Jacobian's closure degree over ℚ when
/// `[K₀:ℚ] = 2` and the Weierstrass polynomial factors over `K₀` with
/// degrees `d`.
pub fn orbit_bound_product(d: &[u64]) -> Result<u64> {
    if d.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invalid("degree vector must be sorted descending"));
    }
    if d.iter().sum::<u64>() != 6 {
        return Err(Error::invalid("degree vector must sum to 6"));
    }
    let mut out = 2u64;
    for &di in d {
        let b = per_factor_bound(di)
            .ok_or_else(|| Error::invalid(format!("factor degree {di} is not in {{1, 2, 4}}")))?;
        out *= b;
    }
    Ok(out)
}

/// The citation used for the `b(4) = 32` entry.
pub(crate) const ORBIT_BOUND_SOURCE: &str = OCTIC_LEMMA;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl4() {
        let g = gl4_f2();
        assert_eq!(g.order(), 20160);
        assert_eq!(gl_order(4, 2), 20160);
        assert_eq!(gl_order(2, 2), 6);
        assert!(g.is_transitive());
        assert_eq!(g.stabilizer_of(5).order(), 1344);
        let c = gl4_deduction();
        assert!(c.iter().any(|s| s.cites(JONES_DEGREES)));
        assert!(c.iter().any(|s| s.values.get("orbit_bound") == Some(&json!(15))));
    }

    #[test]
    fn orbit_bounds() {
        let rows: [(&[u64], u64); 6] = [
            (&[4, 2], 1 << 8),
            (&[4, 1, 1], 1 << 6),
            (&[2, 2, 2], 1 << 7),
            (&[2, 2, 1, 1], 1 << 5),
            (&[2, 1, 1, 1, 1], 1 << 3),
            (&[1, 1, 1, 1, 1, 1], 2),
        ];
        for (d, b) in rows {
            assert_eq!(orbit_bound_product(d).unwrap(), b, "{d:?}");
        }
        assert!(orbit_bound_product(&[3, 3]).is_err());
        assert!(orbit_bound_product(&[2, 4]).is_err());
        assert!(orbit_bound_product(&[4, 1]).is_err());
    }
}
