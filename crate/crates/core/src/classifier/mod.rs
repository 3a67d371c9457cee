//! Per-instance "heavenly at 2" classification with certificates.
//!
//! The decision rule: the 2-torsion field `T` must be unramified at every
//! odd prime and have a Galois closure over ℚ of 2-power degree.

mod certificate;
mod deduction;
mod input;
mod replay;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{rat_to_string, BigRat};
use crate::error::{Error, Result};
use crate::factor::factor_over_q;
use crate::knowledgebase::{
    GGR_TRICHOTOMY, HARBATER_272, PRO2_TOWER, SERRE_TATE, WEIERSTRASS_PAIRS,
};
use crate::numberfield::{
    compositum, extend, factor_over_tower, galois_closure_is_2power, odd_ramified_primes,
    ramification_report, splitting_tower, stem_field_ramification, AbsField, Elem,
    FieldTower, KPoly, PrimeEvidence, RamificationMethod, DEFAULT_DEGREE_CAP,
    MAX_RAMIFICATION_DEGREE,
};
use crate::poly::{discriminant, squarefree_part, UniPoly};

pub use certificate::{status_str, Certificate, ScreenOutcome, Status, Step, StepKind, Verdict};
pub use deduction::{gl4_deduction, gl4_f2, gl_order, orbit_bound_product};
pub use input::{ClassifierInput, EllipticInput, JacobianInput, QuadElem, SurfaceInput, WeilInput};
pub use replay::{replay, CheckOutcome, ReplayCheck, ReplayReport};

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Cap on the absolute degree of any field built.
    pub degree_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

fn odd_part_is_one(n: &BigInt) -> bool {
    let mut m = n.abs();
    if m.is_zero() {
        return false;
    }
    while (&m % 2u32).is_zero() {
        m /= 2u32;
    }
    m == BigInt::from(1)
}

/// Necessary-condition screen: a model whose discriminant has odd part 1
/// has good reduction away from 2. Never rejects.
pub fn screen_good_reduction(f: &UniPoly) -> Result<ScreenOutcome> {
    if !f.is_integral() {
        return Err(Error::invalid("the reduction screen needs an integral polynomial"));
    }
    let d = discriminant(f)?;
    if d.is_zero() {
        return Err(Error::invalid(format!("`{f}` is not squarefree")));
    }
    Ok(if odd_part_is_one(&d.to_integer()) {
        ScreenOutcome::Plausible
    } else {
        ScreenOutcome::Unknown
    })
}

fn poly_json(f: &UniPoly) -> Value {
    json!(f.coeff_strings())
}

fn primes_json(ps: &[BigUint]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

pub fn two_torsion_field_elliptic(e: &EllipticInput, degree_cap: usize) -> Result<FieldTower> {
    let base = FieldTower::base(e.base);
    Ok(splitting_tower(&KPoly::from_rational(&e.cubic), &base, degree_cap)?.tower)
}

pub fn two_torsion_field_jacobian(j: &JacobianInput, degree_cap: usize) -> Result<FieldTower> {
    let base = FieldTower::base(j.base);
    Ok(splitting_tower(&KPoly::from_rational(&j.f), &base, degree_cap)?.tower)
}

pub fn two_torsion_field_product(e1: &EllipticInput, e2: &EllipticInput, degree_cap: usize) -> Result<FieldTower> {
    if e1.base != e2.base {
        return Err(Error::invalid("both factors of a product must share the base field"));
    }
    let base = FieldTower::base(e1.base);
    let t1 = two_torsion_field_elliptic(e1, degree_cap)?;
    let t2 = two_torsion_field_elliptic(e2, degree_cap)?;
    let c = compositum(&t1, &t2, &base)?;
    if c.absolute_degree() > degree_cap {
        return Err(Error::ResourceCap {
            what: "product 2-torsion field".into(),
            limit: degree_cap as u64,
            partial_degree: Some(c.absolute_degree() as u64),
        });
    }
    Ok(c)
}

/// The fields attached to a Weil restriction `Res_{K′/K₀} E₁`.
#[derive(Clone, Debug)]
pub struct WeilTorsion {
    /// `K′ = K₀(√D)`.
    pub quadratic: FieldTower,
    /// `M = K′(E₁[2])·K′(E₂[2])`, equal to `K₀(A[2])`.
    pub field: FieldTower,
    /// `[K′(E₁[2]) : K′]` and `[K′(E₂[2]) : K′]`.
    pub c: (usize, usize),
    pub m_over_kprime: usize,
    pub kprime_odd_ramified: Vec<BigUint>,
}

fn quad_elem(k: &FieldTower, s: &Elem, q: &QuadElem) -> Elem {
    let top = k.top();
    top.add(&top.from_rat(q.a.clone()), &top.mul(s, &top.from_rat(q.b.clone())))
}

pub fn two_torsion_field_weil(w: &WeilInput, degree_cap: usize) -> Result<WeilTorsion> {
    let base = FieldTower::base(w.base);
    let xd = UniPoly::new(vec![-&w.d, BigRat::zero(), BigRat::from_integer(1.into())]);
    let mut kp = match extend(&base, &KPoly::from_rational(&xd)) {
        Ok(t) => t,
        Err(Error::Reducible { .. }) => {
            return Err(Error::invalid(format!(
                "D = {} is a square in {}",
                rat_to_string(&w.d),
                w.base
            )))
        }
        Err(e) => return Err(e),
    };
    let base_w = base.normal_witness().expect("base fields are normal").clone();
    kp.set_witness(Some(&base_w * &xd));
    let s = kp.level_root(kp.height() - 1);
    let to_k = |c: &[QuadElem]| KPoly::new(c.iter().map(|q| quad_elem(&kp, &s, q)).collect());
    let f1 = to_k(&w.cubic);
    let f2 = to_k(&w.conjugate_cubic());
    let s1 = splitting_tower(&f1, &kp, degree_cap)?;
    let s2 = splitting_tower(&f2, &kp, degree_cap)?;
    let c = (s1.relative_degree(), s2.relative_degree());
    for ci in [c.0, c.1] {
        if ![1, 2, 3, 6].contains(&ci) {
            return Err(Error::Internal(format!("cubic splitting degree {ci} over K'")));
        }
    }
    let mut m = compositum(&s1.tower, &s2.tower, &kp)?;
    if m.absolute_degree() > degree_cap {
        return Err(Error::ResourceCap {
            what: "Weil restriction 2-torsion field".into(),
            limit: degree_cap as u64,
            partial_degree: Some(m.absolute_degree() as u64),
        });
    }
    let prod = kp
        .top()
        .kp_mul(&f1, &f2)
        .as_rational()
        .ok_or_else(|| Error::Internal("f1 * conj(f1) is not rational".into()))?;
    m.set_witness(Some(&(&base_w * &xd) * &prod));
    Ok(WeilTorsion {
        m_over_kprime: m.absolute_degree() / kp.absolute_degree(),
        kprime_odd_ramified: odd_ramified_primes(&kp)?,
        quadratic: kp,
        field: m,
        c,
    })
}

/// Discriminant of `c0 + c1·x + c2·x² + c3·x³` over a field.
fn cubic_disc(k: &AbsField, c: &[Elem]) -> Elem {
    let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
    let m = |x: &Elem, y: &Elem| k.mul(x, y);
    let n = |v: i64| k.from_rat(BigRat::from_integer(v.into()));
    let b2c2 = m(&m(b, b), &m(cc, cc));
    let ac3 = m(&n(4), &m(a, &m(cc, &m(cc, cc))));
    let b3d = m(&n(4), &m(&m(b, &m(b, b)), d));
    let a2d2 = m(&n(27), &m(&m(a, a), &m(d, d)));
    let abcd = m(&n(18), &m(&m(a, b), &m(cc, d)));
    k.add(&k.sub(&k.sub(&k.sub(&b2c2, &ac3), &b3d), &a2d2), &abcd)
}

struct Run<'a> {
    opts: &'a ClassifyOptions,
    v: Verdict,
}

pub fn classify(input: &ClassifierInput) -> Result<Verdict> {
    classify_with(input, &ClassifyOptions::default())
}

/// Classifies one input. Resource caps produce an `unknown` verdict with
/// the certificate computed so far; other errors propagate.
pub fn classify_with(input: &ClassifierInput, opts: &ClassifyOptions) -> Result<Verdict> {
    let mut run = Run {
        opts,
        v: Verdict {
            status: Status::Unknown,
            kind: input.kind().to_string(),
            base_field: input.base().tag().to_string(),
            torsion_field_degree: None,
            torsion_field_absolute_degree: None,
            torsion_field_polynomial: None,
            closure_degree: None,
            odd_ramified_primes: None,
            screen: ScreenOutcome::Unknown,
            certificate: Vec::new(),
            resource_cap: None,
        },
    };
    match run.go(input) {
        Ok(()) => Ok(run.v),
        Err(Error::ResourceCap {
            what,
            limit,
            partial_degree,
        }) => {
            let msg = format!("{what} (limit {limit})");
            run.v.status = Status::Unknown;
            let mut step = Step::computed("resource_cap", format!("computation stopped: {msg}"))
                .with("limit", limit);
            if let Some(p) = partial_degree {
                step = step.with("partial_degree", p);
            }
            run.v.certificate.push(step);
            run.v.resource_cap = Some(msg);
            Ok(run.v)
        }
        Err(e) => Err(e),
    }
}

impl Run<'_> {
    fn push(&mut self, s: Step) {
        self.v.certificate.push(s);
    }

    fn go(&mut self, input: &ClassifierInput) -> Result<()> {
        let cap = self.opts.degree_cap;
        let base_degree = FieldTower::base(input.base()).absolute_degree();
        let t = match input {
            ClassifierInput::Elliptic(e) => {
                self.normalized("cubic", e);
                self.v.screen = self.screen_step(&[&e.cubic])?;
                self.cite_serre_tate();
                two_torsion_field_elliptic(e, cap)?
            }
            ClassifierInput::Surface(s) => {
                self.push(
                    Step::axiom(GGR_TRICHOTOMY, "a principally polarized abelian surface is of one of three shapes; this input is given in the shape below")
                        .with("shape", input.kind()),
                );
                match s {
                    SurfaceInput::Jacobian(j) => {
                        let mut step = Step::computed("normalize", "Weierstrass polynomial made monic and integral; the splitting field is unchanged")
                            .with("original", poly_json(&j.original))
                            .with("f", poly_json(&j.f))
                            .with("degree", j.f.deg());
                        if j.f.deg() == 5 {
                            step = step.with("rational_point_at_infinity", true);
                        }
                        self.push(step);
                        self.push(Step::axiom(
                            WEIERSTRASS_PAIRS,
                            "the 2-torsion field of the Jacobian is the splitting field of f over the base",
                        ));
                        self.v.screen = self.screen_step(&[&j.f])?;
                        self.cite_serre_tate();
                        two_torsion_field_jacobian(j, cap)?
                    }
                    SurfaceInput::Product(e1, e2) => {
                        self.normalized("cubic_1", e1);
                        self.normalized("cubic_2", e2);
                        self.v.screen = self.screen_step(&[&e1.cubic, &e2.cubic])?;
                        self.cite_serre_tate();
                        two_torsion_field_product(e1, e2, cap)?
                    }
                    SurfaceInput::WeilRestriction(w) => self.weil(w)?,
                }
            }
        };
        self.finish(input, t, base_degree)
    }

    fn normalized(&mut self, name: &str, e: &EllipticInput) {
        self.push(
            Step::computed("normalize", "2-division cubic made monic and integral; the splitting field is unchanged")
                .with("factor", name)
                .with("original", poly_json(&e.original))
                .with("f", poly_json(&e.cubic)),
        );
    }

    fn cite_serre_tate(&mut self) {
        self.push(
            Step::axiom(
                SERRE_TATE,
                "a variety heavenly at 2 has good reduction away from 2; the screen above checks this on the given model only",
            )
            .with("screen", json!(self.v.screen)),
        );
    }

    fn screen_step(&mut self, fs: &[&UniPoly]) -> Result<ScreenOutcome> {
        let mut all = ScreenOutcome::Plausible;
        let mut discs = Vec::new();
        for f in fs {
            let o = screen_good_reduction(f)?;
            discs.push(discriminant(f)?.to_integer().to_string());
            if o == ScreenOutcome::Unknown {
                all = ScreenOutcome::Unknown;
            }
        }
        self.push(
            Step::computed("good_reduction_screen", "odd part of the model discriminant; 1 means good reduction away from 2")
                .with("discriminants", json!(discs))
                .with("outcome", json!(all)),
        );
        Ok(all)
    }

    fn weil(&mut self, w: &WeilInput) -> Result<FieldTower> {
        let cubic: Vec<String> = w.cubic.iter().map(ToString::to_string).collect();
        let conj: Vec<String> = w.conjugate_cubic().iter().map(ToString::to_string).collect();
        self.push(
            Step::computed("weil_input", "E1 over K' = K0(s), s^2 = D, and its conjugate twist E2 (s -> -s)")
                .with("D", rat_to_string(&w.d))
                .with("f1", json!(cubic))
                .with("f2", json!(conj))
                .with("self_conjugate", w.is_self_conjugate()),
        );
        // screen: disc(f1)·disc(f2) is the norm of disc(f1) and lies in ℚ
        let wt_probe = {
            let base = FieldTower::base(w.base);
            let xd = UniPoly::new(vec![-&w.d, BigRat::zero(), BigRat::from_integer(1.into())]);
            extend(&base, &KPoly::from_rational(&xd)).ok()
        };
        let screen = match wt_probe {
            Some(kp) => {
                let s = kp.level_root(kp.height() - 1);
                let c1: Vec<Elem> = w.cubic.iter().map(|q| quad_elem(&kp, &s, q)).collect();
                let c2: Vec<Elem> = w.conjugate_cubic().iter().map(|q| quad_elem(&kp, &s, q)).collect();
                let top = kp.top();
                let nd = top.mul(&cubic_disc(top, &c1), &cubic_disc(top, &c2));
                let r = (nd.deg() == 0).then(|| nd.coeff(0));
                let outcome = match &r {
                    Some(r) if r.is_integer() && !r.is_zero() && odd_part_is_one(r.numer()) => ScreenOutcome::Plausible,
                    _ => ScreenOutcome::Unknown,
                };
                self.push(
                    Step::computed("good_reduction_screen", "odd part of disc(f1)·disc(f2); 1 means both models have good reduction away from 2")
                        .with("norm_discriminant", r.as_ref().map(rat_to_string).unwrap_or_default())
                        .with("outcome", json!(outcome)),
                );
                outcome
            }
            None => ScreenOutcome::Unknown,
        };
        self.v.screen = screen;
        self.cite_serre_tate();
        let wt = two_torsion_field_weil(w, self.opts.degree_cap)?;
        self.push(
            Step::computed("weil_fields", "M = K'(E1[2])·K'(E2[2]) built directly; M is the 2-torsion field of the restriction over K0")
                .with("kprime_polynomial", poly_json(wt.quadratic.top().minpoly()))
                .with("c1", wt.c.0)
                .with("c2", wt.c.1)
                .with("m_over_kprime", wt.m_over_kprime)
                .with("kprime_odd_ramified", json!(primes_json(&wt.kprime_odd_ramified))),
        );
        if !wt.kprime_odd_ramified.is_empty() {
            self.push(
                Step::computed(
                    "weil_ramified_subcase",
                    "K'/K0 is ramified at an odd prime and K' lies in M, so M is ramified there as well; no choice of c avoids this",
                )
                .with("primes", json!(primes_json(&wt.kprime_odd_ramified))),
            );
        }
        Ok(wt.field)
    }

    fn finish(&mut self, input: &ClassifierInput, t: FieldTower, base_degree: usize) -> Result<()> {
        let abs = t.absolute_degree();
        let rel = abs / base_degree;
        self.v.torsion_field_degree = Some(rel as u64);
        self.v.torsion_field_absolute_degree = Some(abs as u64);
        let prim = if t.height() == 0 { UniPoly::x() } else { t.top().minpoly().clone() };
        self.v.torsion_field_polynomial = Some(prim.coeff_strings());
        if matches!(input, ClassifierInput::Elliptic(_)) && ![1, 2, 3, 6].contains(&rel) {
            return Err(Error::Internal(format!("elliptic 2-torsion degree {rel}")));
        }
        self.push(
            Step::computed("two_torsion_field", "2-torsion field T as a tower over Q")
                .with("levels", json!(t.level_poly_strings()))
                .with("degree_over_base", rel)
                .with("absolute_degree", abs)
                .with("primitive_polynomial", poly_json(&prim))
                .with(
                    "normal_witness",
                    t.normal_witness().map(|w| poly_json(w)).unwrap_or(Value::Null),
                ),
        );

        let ramified = self.ramification(&t)?;
        self.v.odd_ramified_primes = Some(primes_json(&ramified));
        if !ramified.is_empty() {
            self.v.status = Status::NotHeavenly;
            return Ok(());
        }

        let cl = galois_closure_is_2power(&t, self.opts.degree_cap)?;
        self.v.closure_degree = Some(cl.degree as u64);
        self.push(
            Step::computed("galois_closure", "degree over Q of the Galois closure of T")
                .with("degree", cl.degree)
                .with("is_2power", cl.is_2power)
                .with("method", format!("{:?}", cl.method).to_lowercase()),
        );
        if cl.degree < 272 {
            if !cl.is_2power {
                return Err(Error::Internal(format!(
                    "closure of degree {} unramified away from 2 is not a 2-extension",
                    cl.degree
                )));
            }
            self.push(
                Step::axiom(HARBATER_272, "the closure is Galois, unramified outside {2, inf} and of degree below 272, so its degree is a power of 2; agrees with the computation")
                    .with("degree", cl.degree),
            );
        }
        if let ClassifierInput::Surface(SurfaceInput::Jacobian(j)) = input {
            if base_degree == 2 {
                self.jacobian_bound_step(j, cl.degree)?;
            }
        }
        if cl.is_2power {
            self.push(
                Step::axiom(
                    PRO2_TOWER,
                    "T is unramified away from 2 with 2-power closure, so the full 2-power torsion field lies in the maximal pro-2 extension unramified outside 2",
                )
                .with("good_reduction_screen", json!(self.v.screen)),
            );
            self.v.status = Status::Heavenly;
        } else {
            self.v.status = Status::NotHeavenly;
        }
        Ok(())
    }

    fn ramification(&mut self, t: &FieldTower) -> Result<Vec<BigUint>> {
        let (route, evidence): (&str, Vec<PrimeEvidence>) = if t.absolute_degree() <= MAX_RAMIFICATION_DEGREE {
            ("primitive_element", ramification_report(t)?.evidence)
        } else if let Some(w) = t.normal_witness() {
            // a prime ramifies in a splitting field iff it ramifies in the
            // stem field of some irreducible factor
            let mut ev: Vec<PrimeEvidence> = Vec::new();
            for (g, _) in factor_over_q(&squarefree_part(w)?)?.factors {
                for e in stem_field_ramification(&g)?.evidence {
                    match ev.iter_mut().find(|x| x.prime == e.prime) {
                        Some(x) => x.ramified |= e.ramified,
                        None => ev.push(e),
                    }
                }
            }
            ev.sort_by(|a, b| a.prime.cmp(&b.prime));
            ("witness_factors", ev)
        } else {
            return Err(Error::cap("ramification analysis degree", MAX_RAMIFICATION_DEGREE as u64));
        };
        let ev_json: Vec<Value> = evidence
            .iter()
            .map(|e| {
                json!({
                    "prime": e.prime.to_string(),
                    "poly_disc_valuation": e.poly_disc_valuation,
                    "index_valuation": e.index_valuation,
                    "method": method_str(&e.method),
                    "ramified": e.ramified,
                })
            })
            .collect();
        let ramified: Vec<BigUint> = evidence.iter().filter(|e| e.ramified).map(|e| e.prime.clone()).collect();
        self.push(
            Step::computed("odd_ramification", "odd primes ramified in T, by discriminant valuation, Dedekind's criterion or Round 2")
                .with("route", route)
                .with("evidence", Value::Array(ev_json))
                .with("ramified", json!(primes_json(&ramified)))
                .with("unramified_away_2", ramified.is_empty()),
        );
        Ok(ramified)
    }

    fn jacobian_bound_step(&mut self, j: &JacobianInput, closure: usize) -> Result<()> {
        let base = FieldTower::base(j.base);
        let mut degs: Vec<u64> = factor_over_tower(&base, &KPoly::from_rational(&j.f))?
            .iter()
            .map(|(g, _)| g.deg() as u64)
            .collect();
        if j.f.deg() == 5 {
            degs.push(1);
        }
        degs.sort_unstable_by(|a, b| b.cmp(a));
        if let Ok(bound) = orbit_bound_product(&degs) {
            if closure as u64 > bound {
                return Err(Error::Internal(format!(
                    "closure degree {closure} exceeds the factor-degree bound {bound}"
                )));
            }
            self.push(
                Step::computed("jacobian_bound", "factor degrees of f over K0 (a degree-5 model counts the point at infinity) and the resulting closure bound")
                    .with("factor_degrees", json!(degs))
                    .with("bound", bound)
                    .with("octic_source", deduction::ORBIT_BOUND_SOURCE)
                    .with("within_bound", true),
            );
        }
        Ok(())
    }
}

fn method_str(m: &RamificationMethod) -> String {
    match m {
        RamificationMethod::CoprimeToDiscriminant => "coprime".into(),
        RamificationMethod::OddValuation => "odd_valuation".into(),
        RamificationMethod::Dedekind => "dedekind".into(),
        RamificationMethod::RoundTwo { iterations } => format!("round_two({iterations})"),
    }
}

/// Swaps the factors of a product input; other inputs are returned as is.
pub fn swapped(input: &ClassifierInput) -> ClassifierInput {
    match input {
        ClassifierInput::Surface(SurfaceInput::Product(a, b)) => {
            ClassifierInput::Surface(SurfaceInput::Product(b.clone(), a.clone()))
        }
        other => other.clone(),
    }
}
