use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

use super::perm::Perm;

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A permutation group with its full element list.
///
/// `elements` is sorted, so the identity is always first and two groups
/// with the same elements compare equal regardless of generators.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "PermGroup(degree {}, order {}, <{}>)", self.degree, self.order(), gens.join(", "))
    }
}

impl PermGroup {
    /// Breadth-first closure of `gens` acting on `degree` points.
    pub fn close_generators(gens: &[Perm], degree: usize, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::invalid("closure cap must be at least 1"));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y) {
                    if seen.len() > cap {
                        return Err(Error::cap("permutation group closure", cap as u64));
                    }
                    queue.push_back(y);
                }
            }
        }
        let gens = gens.iter().copied().filter(|g| !g.is_identity()).collect();
        Ok(Self::from_closed(degree, gens, seen.into_iter().collect()))
    }

    pub fn generate(gens: &[Perm], degree: usize) -> Result<Self> {
        Self::close_generators(gens, degree, DEFAULT_CLOSURE_CAP)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_closed(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    fn from_closed(degree: usize, gens: Vec<Perm>, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        let index = elements.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        PermGroup {
            degree,
            gens,
            elements,
            index,
        }
    }

    /// Builds a group from an element set already known to be closed,
    /// choosing a small generating set greedily.
    pub(crate) fn from_element_set(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        let mut gens: Vec<Perm> = Vec::new();
        let mut span: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
        for e in &elements {
            if !span.contains(e) {
                gens.push(*e);
                span = Self::close_generators(&gens, degree, usize::MAX)
                    .expect("subset of a finite group")
                    .elements
                    .into_iter()
                    .collect();
            }
            if span.len() == elements.len() {
                break;
            }
        }
        debug_assert_eq!(span.len(), elements.len());
        Self::from_closed(degree, gens, elements)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub(crate) fn position(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.elements.iter().all(|e| g.contains(e))
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g.gens.iter().all(|x| {
                self.gens
                    .iter()
                    .all(|h| self.contains(&h.conjugate_by(x)))
            })
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|a| self.gens.iter().all(|b| a.then(b) == b.then(a)))
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit_of(1).len() == self.degree
    }

    pub fn orbit_of(&self, point: usize) -> BTreeSet<usize> {
        assert!((1..=self.degree).contains(&point), "point {point} out of range");
        let mut orbit = BTreeSet::from([point]);
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = g.apply(x);
                if orbit.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        orbit
    }

    pub fn stabilizer_of(&self, point: usize) -> PermGroup {
        assert!((1..=self.degree).contains(&point), "point {point} out of range");
        let elems = self
            .elements
            .iter()
            .copied()
            .filter(|e| e.apply(point) == point)
            .collect();
        Self::from_element_set(self.degree, elems)
    }

    /// The element set `x⁻¹ H x`.
    pub fn conjugate_set(&self, x: &Perm) -> BTreeSet<Perm> {
        self.elements.iter().map(|h| h.conjugate_by(x)).collect()
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let elems = self
            .elements
            .iter()
            .copied()
            .filter(|e| other.contains(e))
            .collect();
        Self::from_element_set(self.degree, elems)
    }

    /// Index `[g : self]`, assuming `self ≤ g`.
    pub fn index_in(&self, g: &PermGroup) -> usize {
        g.order() / self.order()
    }
}

/// Largest normal subgroup of `g` contained in `h`, i.e. `∩ x⁻¹Hx` over
/// `x ∈ g`. Computed by intersecting with generator conjugates until stable.
pub fn normal_core(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup(format!("{h:?} is not contained in {g:?}")));
    }
    let mut core: BTreeSet<Perm> = h.elements.iter().copied().collect();
    loop {
        let mut next = core.clone();
        for x in &g.gens {
            let conj: BTreeSet<Perm> = core.iter().map(|c| c.conjugate_by(x)).collect();
            next = next.intersection(&conj).copied().collect();
        }
        if next.len() == core.len() {
            break;
        }
        core = next;
    }
    Ok(PermGroup::from_element_set(g.degree, core.into_iter().collect()))
}

pub fn is_p_group(g: &PermGroup, p: u64) -> bool {
    crate::arith::is_power_of(g.order() as u128, p as u128)
}

/// Multiplication table on element indices; the backbone for the
/// brute-force searches below.
pub(crate) struct Cayley {
    pub n: usize,
    table: Vec<u32>,
    pub inverse: Vec<u32>,
    pub squares_to_one: Vec<bool>,
}

pub(crate) const CAYLEY_LIMIT: usize = 4096;

impl Cayley {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let n = g.order();
        if n > CAYLEY_LIMIT {
            return Err(Error::cap("Cayley table order", CAYLEY_LIMIT as u64));
        }
        let mut table = vec![0u32; n * n];
        for (i, a) in g.elements.iter().enumerate() {
            for (j, b) in g.elements.iter().enumerate() {
                table[i * n + j] = g.position(&a.then(b)).expect("closed") as u32;
            }
        }
        let inverse = g
            .elements
            .iter()
            .map(|a| g.position(&a.inverse()).unwrap() as u32)
            .collect();
        let squares_to_one = (0..n).map(|i| table[i * n + i] == 0).collect();
        Ok(Cayley {
            n,
            table,
            inverse,
            squares_to_one,
        })
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    /// Subgroup generated by element indices, as a membership bitmap.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        member
    }

    pub fn closure_size(&self, gens: &[usize], stop_at: usize) -> usize {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut count = 1;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    count += 1;
                    if count >= stop_at {
                        return count;
                    }
                    stack.push(y);
                }
            }
        }
        count
    }
}

/// Outcome of an exhaustive ordered-pair generation search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGenSearch {
    pub witness: Option<(Perm, Perm)>,
    pub pairs_examined: u64,
}

/// Searches all ordered pairs `(σ, τ)` for `⟨σ, τ⟩ = G`; with
/// `require_involution`, pairs with `τ² ≠ 1` are skipped uncounted.
pub fn search_two_generation(g: &PermGroup, require_involution: bool) -> Result<TwoGenSearch> {
    let cay = Cayley::new(g)?;
    let n = cay.n;
    let mut examined = 0u64;
    for s in 0..n {
        for t in 0..n {
            if require_involution && !cay.squares_to_one[t] {
                continue;
            }
            examined += 1;
            if cay.closure_size(&[s, t], n) == n {
                return Ok(TwoGenSearch {
                    witness: Some((g.elements[s], g.elements[t])),
                    pairs_examined: examined,
                });
            }
        }
    }
    Ok(TwoGenSearch {
        witness: None,
        pairs_examined: examined,
    })
}

pub fn two_generated(g: &PermGroup, require_involution: bool) -> Result<bool> {
    Ok(search_two_generation(g, require_involution)?.witness.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::witnesses::{cyclic_group, symmetric_group};

    fn perm(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn closure_basics() {
        let g = PermGroup::generate(&[perm("(1 2)", 2)], 2).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.elements()[0].is_identity());
        let err = PermGroup::close_generators(&[perm("(1 2 3 4 5)", 5), perm("(1 2)", 5)], 5, 50);
        assert!(matches!(err, Err(Error::ResourceCap { .. })));
        assert!(PermGroup::generate(&[perm("(1 2)", 3), perm("(1 2)", 2)], 3).is_err());
    }

    #[test]
    fn orbit_and_stabilizer() {
        let g = cyclic_group(3);
        assert_eq!(g.orbit_of(1), BTreeSet::from([1, 2, 3]));
        assert_eq!(g.stabilizer_of(1).order(), 1);
        let t = PermGroup::trivial(4);
        assert_eq!(t.orbit_of(2), BTreeSet::from([2]));
    }

    #[test]
    fn cores() {
        let s3 = symmetric_group(3);
        let c2 = PermGroup::generate(&[perm("(1 2)", 3)], 3).unwrap();
        assert_eq!(normal_core(&s3, &c2).unwrap().order(), 1);
        let a3 = PermGroup::generate(&[perm("(1 2 3)", 3)], 3).unwrap();
        assert_eq!(normal_core(&s3, &a3).unwrap(), a3);
        let s4 = symmetric_group(4);
        let d4 = PermGroup::generate(&[perm("(1 2 3 4)", 4), perm("(1 3)", 4)], 4).unwrap();
        let core = normal_core(&s4, &d4).unwrap();
        assert_eq!(core.order(), 4);
        // oracle: intersect all conjugates directly
        let mut direct: BTreeSet<Perm> = d4.elements().iter().copied().collect();
        for x in s4.elements() {
            let c = d4.conjugate_set(x);
            direct = direct.intersection(&c).copied().collect();
        }
        assert_eq!(core.elements().to_vec(), direct.into_iter().collect::<Vec<_>>());
        assert!(matches!(normal_core(&c2, &s3), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn two_generation() {
        let s3 = symmetric_group(3);
        let r = search_two_generation(&s3, true).unwrap();
        let (s, t) = r.witness.unwrap();
        assert!(t.then(&t).is_identity());
        assert_eq!(PermGroup::generate(&[s, t], 3).unwrap().order(), 6);
        assert!(two_generated(&cyclic_group(8), false).unwrap());
    }
}
