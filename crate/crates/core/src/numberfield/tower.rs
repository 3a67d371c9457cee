use std::fmt;

use num_traits::One;

use crate::arith::{rat_int, BigRat};
use crate::error::{Error, Result};
use crate::poly::{make_monic_integral, squarefree_part, UniPoly};

use super::field::{is_squarefree_q, kp_cmp, AbsField, Elem, KPoly};

pub const DEFAULT_DEGREE_CAP: usize = 512;

/// The four admissible base fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Q,
    QI,
    QSqrt2,
    QSqrtMinus2,
}

impl BaseField {
    pub const ALL: [BaseField; 4] = [BaseField::Q, BaseField::QI, BaseField::QSqrt2, BaseField::QSqrtMinus2];

    pub fn parse(tag: &str) -> Result<Self> {
        let t: String = tag.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('√', "sqrt").replace('−', "-");
        match t.as_str() {
            "Q" => Ok(BaseField::Q),
            "Q(i)" | "Q(sqrt-1)" => Ok(BaseField::QI),
            "Q(sqrt2)" | "Q(sqrt(2))" => Ok(BaseField::QSqrt2),
            "Q(sqrt-2)" | "Q(sqrt(-2))" => Ok(BaseField::QSqrtMinus2),
            _ => Err(Error::UnknownField(tag.to_string())),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            BaseField::Q => "Q",
            BaseField::QI => "Q(i)",
            BaseField::QSqrt2 => "Q(sqrt2)",
            BaseField::QSqrtMinus2 => "Q(sqrt-2)",
        }
    }

    /// `d` with the field equal to `ℚ(√d)`; `None` for ℚ.
    pub fn d(self) -> Option<i64> {
        match self {
            BaseField::Q => None,
            BaseField::QI => Some(-1),
            BaseField::QSqrt2 => Some(2),
            BaseField::QSqrtMinus2 => Some(-2),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    /// Defining polynomial over the stage below.
    poly: KPoly,
    /// The previous stage's generator, in this stage.
    theta: Elem,
    /// The adjoined root, in this stage.
    root: Elem,
    /// This stage's generator is `scale·(root + shift·theta)`.
    scale: BigRat,
    shift: i64,
}

/// A number field built as a tower `ℚ = K₀ ⊂ K₁ ⊂ … ⊂ K_h`.
///
/// Each stage is also kept as an absolute field `ℚ(β_i)` with `β_i` a
/// primitive element whose minimal polynomial is monic integral; elements
/// are polynomials in the top `β`.
#[derive(Clone, Debug)]
pub struct FieldTower {
    stages: Vec<AbsField>,
    levels: Vec<Level>,
    /// A rational polynomial whose splitting field over ℚ is this field,
    /// when one is known from the construction.
    witness: Option<UniPoly>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

pub fn base_field(tag: &str) -> Result<FieldTower> {
    Ok(FieldTower::base(BaseField::parse(tag)?))
}

pub(crate) struct Adjoined {
    field: AbsField,
    theta: Elem,
    root: Elem,
    scale: BigRat,
    shift: i64,
}

/// Rewrites `m` with root `d·β` (monic integral); `rescale` converts
/// polynomials in `β` to polynomials in `d·β`.
fn integralize(m: UniPoly) -> (AbsField, BigRat) {
    if m.is_integral() {
        return (AbsField::from_minpoly(m), BigRat::one());
    }
    let (_, prim) = m.primitive_part();
    let d = rat_int(prim.last().unwrap().clone());
    let mm = make_monic_integral(&m).expect("nonzero");
    (AbsField::from_minpoly(mm), d)
}

fn rescale(e: &Elem, d: &BigRat) -> Elem {
    if d.is_one() {
        return e.clone();
    }
    let inv = BigRat::one() / d;
    let mut pw = BigRat::one();
    let mut out = Vec::with_capacity(e.coeffs().len());
    for c in e.coeffs() {
        out.push(c * &pw);
        pw *= &inv;
    }
    UniPoly::new(out)
}

/// Adjoins a root of `g`, irreducible and monic over `k`.
pub(crate) fn adjoin_root(k: &AbsField, g: &KPoly) -> Result<Adjoined> {
    let g = k.kp_monic(g)?;
    if g.deg() == 1 {
        return Ok(Adjoined {
            field: k.clone(),
            theta: k.generator(),
            root: -&g.coeff(0),
            scale: BigRat::one(),
            shift: 0,
        });
    }
    if k.is_rational() {
        let r = g.as_rational().expect("rational coefficients");
        let (field, d) = integralize(r);
        return Ok(Adjoined {
            root: UniPoly::x().scale(&(BigRat::one() / &d)),
            theta: UniPoly::zero(),
            field,
            scale: d,
            shift: 0,
        });
    }
    let theta = k.generator();
    for c in 1i64.. {
        let gk = k.kp_shift(&g, &theta.scale(&rat_int((-c).into())));
        let norm = k.kp_norm(&gk)?;
        if !is_squarefree_q(&norm) {
            continue;
        }
        let big = AbsField::from_minpoly(norm);
        let beta = big.generator();
        // θ is the unique common root of m(y) and g(β − c·y) over ℚ(β).
        let lin = KPoly::new(vec![beta.clone(), UniPoly::constant(rat_int((-c).into()))]);
        let mut gy = KPoly::zero();
        for a in g.coeffs().iter().rev() {
            gy = big.kp_mul(&gy, &lin);
            gy = big.kp_add(&gy, &KPoly::from_rational(a));
        }
        let h = big.kp_gcd(&KPoly::from_rational(k.minpoly()), &gy)?;
        if h.deg() != 1 {
            return Err(Error::Internal(format!(
                "primitive element gcd has degree {}",
                h.deg()
            )));
        }
        let theta_new = -&h.coeff(0);
        let root = big.reduce(&(&beta - &theta_new.scale(&rat_int(c.into()))));
        let (field, d) = integralize(big.minpoly().clone());
        let theta_new = rescale(&theta_new, &d);
        let root = rescale(&root, &d);
        return Ok(Adjoined {
            field,
            theta: theta_new,
            root,
            scale: d,
            shift: c,
        });
    }
    unreachable!()
}

impl FieldTower {
    pub fn rational() -> Self {
        FieldTower {
            stages: vec![AbsField::rational()],
            levels: vec![],
            witness: Some(UniPoly::x()),
        }
    }

    pub fn base(b: BaseField) -> Self {
        let q = FieldTower::rational();
        match b.d() {
            None => q,
            Some(d) => {
                let m = UniPoly::from_ints(&[-d, 0, 1]);
                let mut t = q.extend_unchecked(&KPoly::from_rational(&m)).expect("x^2 - d");
                t.witness = Some(m);
                t
            }
        }
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn absolute_degree(&self) -> usize {
        self.top().degree()
    }

    pub fn level_degrees(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.poly.deg()).collect()
    }

    pub fn top(&self) -> &AbsField {
        self.stages.last().unwrap()
    }

    pub fn stage(&self, i: usize) -> &AbsField {
        &self.stages[i]
    }

    pub fn level_poly(&self, i: usize) -> &KPoly {
        &self.levels[i].poly
    }

    /// Level polynomials as text; `a<i>` is the generator of stage `i`.
    pub fn level_poly_strings(&self) -> Vec<String> {
        self.levels
            .iter()
            .enumerate()
            .map(|(i, l)| l.poly.display_with(&format!("a{i}")))
            .collect()
    }

    pub fn normal_witness(&self) -> Option<&UniPoly> {
        self.witness.as_ref()
    }

    pub(crate) fn set_witness(&mut self, w: Option<UniPoly>) {
        self.witness = w;
    }

    /// Pushes an element of stage `stage` up to the top.
    pub fn lift_elem(&self, stage: usize, e: &Elem) -> Elem {
        let mut e = e.clone();
        for s in stage..self.levels.len() {
            e = AbsField::map_elem(&e, &self.levels[s].theta, &self.stages[s + 1]);
        }
        e
    }

    pub fn lift_poly(&self, stage: usize, f: &KPoly) -> KPoly {
        KPoly::new(f.coeffs().iter().map(|c| self.lift_elem(stage, c)).collect())
    }

    pub fn rational_poly(&self, f: &UniPoly) -> KPoly {
        KPoly::from_rational(f)
    }

    /// The root adjoined at level `i`, as an element of the top stage.
    pub fn level_root(&self, i: usize) -> Elem {
        self.lift_elem(i + 1, &self.levels[i].root)
    }

    /// True when `other` is an initial segment of this tower.
    pub fn extends(&self, other: &FieldTower) -> bool {
        other.levels.len() <= self.levels.len()
            && self.levels[..other.levels.len()] == other.levels[..]
    }

    pub(crate) fn extend_unchecked(&self, g: &KPoly) -> Result<FieldTower> {
        let g = self.top().kp_monic(g)?;
        let adj = adjoin_root(self.top(), &g)?;
        let mut t = self.clone();
        t.stages.push(adj.field);
        t.levels.push(Level {
            poly: g,
            theta: adj.theta,
            root: adj.root,
            scale: adj.scale,
            shift: adj.shift,
        });
        t.witness = None;
        Ok(t)
    }

    /// Sanity check of every stored embedding: each level's root and the
    /// previous generator satisfy their minimal polynomials.
    pub fn check_consistency(&self) -> bool {
        for (i, l) in self.levels.iter().enumerate() {
            let (lo, hi) = (&self.stages[i], &self.stages[i + 1]);
            if !hi.is_zero_elem(&AbsField::map_elem(lo.minpoly(), &l.theta, hi)) {
                return false;
            }
            let g = KPoly::new(
                l.poly
                    .coeffs()
                    .iter()
                    .map(|c| AbsField::map_elem(c, &l.theta, hi))
                    .collect(),
            );
            if !hi.is_zero_elem(&hi.kp_eval(&g, &l.root)) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.levels.is_empty() {
            return write!(f, "Q");
        }
        write!(f, "Q")?;
        for s in self.level_poly_strings() {
            write!(f, " < [{s}]")?;
        }
        write!(f, " (degree {})", self.absolute_degree())
    }
}

fn describe_factors(fs: &[(KPoly, u32)], var: &str) -> String {
    fs.iter()
        .map(|(g, e)| {
            let s = format!("({})", g.display_with(var));
            if *e > 1 {
                format!("{s}^{e}")
            } else {
                s
            }
        })
        .collect::<Vec<_>>()
        .join("")
}

/// Adjoins a root of `g`, which must be irreducible over `k`; its
/// coefficients are elements of the top stage.
pub fn extend(k: &FieldTower, g: &KPoly) -> Result<FieldTower> {
    if g.degree().map_or(true, |d| d == 0) {
        return Err(Error::invalid("extension polynomial must be nonconstant"));
    }
    let fs = factor_over_tower(k, g)?;
    if fs.len() != 1 || fs[0].1 != 1 {
        return Err(Error::Reducible {
            factors: describe_factors(&fs, &format!("a{}", k.height())),
        });
    }
    k.extend_unchecked(g)
}

/// Monic irreducible factors over the tower, with multiplicities.
pub fn factor_over_tower(k: &FieldTower, f: &KPoly) -> Result<Vec<(KPoly, u32)>> {
    k.top().kp_factor(&k.top().kp_reduce(f))
}

#[derive(Clone, Debug)]
pub struct Splitting {
    pub tower: FieldTower,
    pub base_degree: usize,
    /// Roots of the polynomial in the top stage.
    pub roots: Vec<Elem>,
}

impl Splitting {
    pub fn relative_degree(&self) -> usize {
        self.tower.absolute_degree() / self.base_degree
    }

    pub fn absolute_degree(&self) -> usize {
        self.tower.absolute_degree()
    }
}

/// Splitting field of squarefree `f` over `k`, by repeatedly adjoining a
/// root of a smallest nonlinear factor. `degree_cap` bounds the absolute
/// degree.
pub fn splitting_tower(f: &KPoly, k: &FieldTower, degree_cap: usize) -> Result<Splitting> {
    if f.degree().map_or(true, |d| d == 0) {
        return Err(Error::invalid("cannot split a constant polynomial"));
    }
    let f = k.top().kp_monic(&k.top().kp_reduce(f))?;
    if !k.top().kp_is_squarefree(&f)? {
        return Err(Error::invalid("splitting_tower needs a squarefree polynomial"));
    }
    let witness = match (k.normal_witness(), f.as_rational()) {
        (Some(w), Some(r)) => Some(w * &r),
        _ => None,
    };
    let mut tower = k.clone();
    let mut roots: Vec<Elem> = Vec::new();
    let mut pending: Vec<KPoly> = tower.top().kp_factor_squarefree(&f)?;
    loop {
        let (lin, mut rest): (Vec<KPoly>, Vec<KPoly>) = pending.into_iter().partition(|g| g.deg() == 1);
        roots.extend(lin.iter().map(|g| -&g.coeff(0)));
        if rest.is_empty() {
            break;
        }
        rest.sort_by(kp_cmp);
        let g = rest.remove(0);
        let next = tower.absolute_degree().saturating_mul(g.deg());
        if next > degree_cap {
            return Err(Error::ResourceCap {
                what: format!("splitting field degree (next step would reach {next})"),
                limit: degree_cap as u64,
                partial_degree: Some(tower.absolute_degree() as u64),
            });
        }
        let h = tower.height();
        let new = tower.extend_unchecked(&g)?;
        let top = new.top();
        let gamma = new.levels[h].root.clone();
        roots = roots.iter().map(|r| new.lift_elem(h, r)).collect();
        let g_up = new.lift_poly(h, &g);
        let q = top.kp_exact_div(&g_up, &KPoly::linear(&gamma))?;
        roots.push(gamma);
        let mut next_pending = Vec::new();
        for r in rest.iter().map(|r| new.lift_poly(h, r)).chain([q]) {
            if r.deg() >= 1 {
                next_pending.extend(top.kp_factor_squarefree(&r)?);
            }
        }
        pending = next_pending;
        tower = new;
    }
    tower.witness = witness;
    Ok(Splitting {
        base_degree: k.absolute_degree(),
        tower,
        roots,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureMethod {
    /// The field was built as a splitting field of a rational polynomial,
    /// so it is its own closure.
    NormalWitness,
    /// The primitive element's minimal polynomial was split over the field.
    Splitting,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub is_2power: bool,
    pub degree: usize,
    pub method: ClosureMethod,
}

pub fn galois_closure_is_2power(k: &FieldTower, degree_cap: usize) -> Result<ClosureReport> {
    galois_closure_with(k, degree_cap, true)
}

/// As [`galois_closure_is_2power`]; `use_witness = false` forces the
/// splitting computation even for fields known to be normal.
pub fn galois_closure_with(k: &FieldTower, degree_cap: usize, use_witness: bool) -> Result<ClosureReport> {
    let (degree, method) = match (use_witness, k.normal_witness()) {
        (true, Some(_)) => (k.absolute_degree(), ClosureMethod::NormalWitness),
        _ if k.height() == 0 => (1, ClosureMethod::NormalWitness),
        _ => {
            let p = KPoly::from_rational(k.top().minpoly());
            (splitting_tower(&p, k, degree_cap)?.absolute_degree(), ClosureMethod::Splitting)
        }
    };
    Ok(ClosureReport {
        is_2power: degree.is_power_of_two(),
        degree,
        method,
    })
}

/// Minimal polynomial over ℚ of the tower's primitive element.
pub fn primitive_element(k: &FieldTower) -> Result<UniPoly> {
    if k.height() == 0 {
        return Err(Error::invalid("the rational field has no primitive element to report"));
    }
    Ok(k.top().minpoly().clone())
}

/// The compositum of `k1` and `k2` over a common initial segment `over`:
/// `k1` extended by each level of `k2` above `over`. For non-normal
/// levels a smallest-degree factor is taken.
pub fn compositum(k1: &FieldTower, k2: &FieldTower, over: &FieldTower) -> Result<FieldTower> {
    if !k1.extends(over) || !k2.extends(over) {
        return Err(Error::invalid("both fields must extend the common subfield"));
    }
    let h = over.height();
    let mut c = k1.clone();
    // image in c of the generator of k2's stage j
    let mut phi = c.lift_elem(h, &k2.stages[h].generator());
    for j in h..k2.height() {
        let lvl = &k2.levels[j];
        let stage = &k2.stages[j];
        let top = c.top().clone();
        let g = KPoly::new(
            lvl.poly
                .coeffs()
                .iter()
                .map(|a| AbsField::map_elem(&stage.reduce(a), &phi, &top))
                .collect(),
        );
        let mut fs = top.kp_factor_squarefree(&g)?;
        fs.sort_by(kp_cmp);
        let pick = fs.remove(0);
        let (next, gamma) = if pick.deg() == 1 {
            (c.clone(), -&pick.coeff(0))
        } else {
            let n = c.extend_unchecked(&pick)?;
            let r = n.levels[n.height() - 1].root.clone();
            (n, r)
        };
        let hc = c.height();
        let phi_up = next.lift_elem(hc, &phi);
        // generator of k2's stage j+1 is scale·(root + shift·θ_j)
        let beta = &gamma + &phi_up.scale(&rat_int(lvl.shift.into()));
        phi = next.top().reduce(&beta.scale(&lvl.scale));
        c = next;
    }
    c.witness = match (k1.normal_witness(), k2.normal_witness()) {
        (Some(a), Some(b)) => Some(a * b),
        _ => None,
    };
    Ok(c)
}

pub fn compositum_degree(k1: &FieldTower, k2: &FieldTower, over: &FieldTower) -> Result<usize> {
    Ok(compositum(k1, k2, over)?.absolute_degree() / over.absolute_degree())
}

/// Squarefree, monic integral form of a field's witness polynomial.
pub(crate) fn witness_support(w: &UniPoly) -> Result<UniPoly> {
    make_monic_integral(&squarefree_part(w)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(s: &str) -> KPoly {
        KPoly::from_rational(&s.parse().unwrap())
    }

    #[test]
    fn base_fields() {
        assert_eq!(base_field("Q").unwrap().absolute_degree(), 1);
        let qi = base_field("Q(i)").unwrap();
        assert_eq!(qi.absolute_degree(), 2);
        assert_eq!(qi.level_poly_strings(), vec!["x^2 + 1"]);
        assert!(matches!(base_field("Q(sqrt3)"), Err(Error::UnknownField(_))));
    }

    #[test]
    fn extend_checks_irreducibility() {
        let q = FieldTower::rational();
        assert_eq!(extend(&q, &rp("x^2+1")).unwrap().absolute_degree(), 2);
        match extend(&q, &rp("x^2-1")) {
            Err(Error::Reducible { factors }) => assert_eq!(factors, "(x - 1)(x + 1)"),
            other => panic!("{other:?}"),
        }
        let qi = base_field("Q(i)").unwrap();
        let z8 = extend(&qi, &rp("x^2-2")).unwrap();
        assert_eq!(z8.absolute_degree(), 4);
        assert!(z8.check_consistency());
    }

    #[test]
    fn primitive_elements() {
        let qi = base_field("Q(i)").unwrap();
        assert_eq!(primitive_element(&qi).unwrap().to_string(), "x^2 + 1");
        let k = extend(&base_field("Q(sqrt2)").unwrap(), &rp("x^2+1")).unwrap();
        assert_eq!(primitive_element(&k).unwrap().to_string(), "x^4 - 2*x^2 + 9");
        assert!(primitive_element(&FieldTower::rational()).is_err());
    }

    #[test]
    fn splitting_degrees() {
        let q = FieldTower::rational();
        for (f, d) in [("x^3-x", 1), ("x^5-x", 2), ("x^4-2", 8), ("x^3-2", 6), ("x^5+x", 4)] {
            let s = splitting_tower(&rp(f), &q, DEFAULT_DEGREE_CAP).unwrap();
            assert_eq!(s.relative_degree(), d, "{f}");
            assert!(s.tower.check_consistency());
            let lin = factor_over_tower(&s.tower, &rp(f)).unwrap();
            assert!(lin.iter().all(|(g, e)| g.deg() == 1 && *e == 1));
            assert_eq!(lin.len(), rp(f).deg());
        }
        let err = splitting_tower(&rp("x^4-2"), &q, 4).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { partial_degree: Some(4), .. }));
    }

    #[test]
    fn closures() {
        let q = FieldTower::rational();
        let cbrt2 = extend(&q, &rp("x^3-2")).unwrap();
        let r = galois_closure_is_2power(&cbrt2, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!((r.is_2power, r.degree), (false, 6));
        let qrt2 = extend(&q, &rp("x^4-2")).unwrap();
        let r = galois_closure_is_2power(&qrt2, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!((r.is_2power, r.degree), (true, 8));
        let qi = base_field("Q(i)").unwrap();
        let r = galois_closure_with(&qi, DEFAULT_DEGREE_CAP, false).unwrap();
        assert_eq!((r.is_2power, r.degree), (true, 2));
    }

    #[test]
    fn composita() {
        let q = FieldTower::rational();
        let qi = base_field("Q(i)").unwrap();
        let q2 = base_field("Q(sqrt2)").unwrap();
        assert_eq!(compositum_degree(&qi, &qi, &q).unwrap(), 2);
        assert_eq!(compositum_degree(&qi, &q2, &q).unwrap(), 4);
        assert_eq!(compositum_degree(&qi, &q, &q).unwrap(), 2);
        let cbrt = extend(&q, &rp("x^3-2")).unwrap();
        let c = compositum(&cbrt, &qi, &q).unwrap();
        assert_eq!(c.absolute_degree(), 6);
        assert!(c.check_consistency());
    }
}
