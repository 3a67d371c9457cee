//! Brute-force subgroup lattices for small groups.
//!
//! Subgroups are membership bitsets over the sorted element list of the
//! ambient group, so containment and equality are word operations.

use std::collections::HashSet;

use crate::error::{Error, Result};

use super::group::{Cayley, PermGroup};
use super::witnesses::s3_times_s3;

pub const DEFAULT_SUBGROUP_CAP: usize = 400;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn from_bools(v: &[bool]) -> Self {
        let mut b = Bits::empty(v.len());
        for (i, &x) in v.iter().enumerate() {
            if x {
                b.set(i);
            }
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

#[derive(Clone)]
struct Sub {
    bits: Bits,
    gens: Vec<usize>,
    order: usize,
}

/// Every subgroup of a group, computed once and queried many times.
pub struct SubgroupLattice {
    group: PermGroup,
    cay: Cayley,
    subs: Vec<Sub>,
}

impl SubgroupLattice {
    /// Grows the lattice from cyclic subgroups by adjoining one element
    /// at a time; every subgroup arises this way along some chain.
    pub fn new(group: &PermGroup, cap: usize) -> Result<Self> {
        if group.order() > cap {
            return Err(Error::cap("subgroup enumeration group order", cap as u64));
        }
        let cay = Cayley::new(group)?;
        let n = cay.n;
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut subs: Vec<Sub> = Vec::new();
        let mut frontier: Vec<Sub> = Vec::new();
        for g in 0..n {
            let bits = Bits::from_bools(&cay.closure(&[g]));
            if seen.insert(bits.clone()) {
                let gens = if g == 0 { vec![] } else { vec![g] };
                let s = Sub {
                    order: bits.count(),
                    bits,
                    gens,
                };
                frontier.push(s.clone());
                subs.push(s);
            }
        }
        while let Some(s) = frontier.pop() {
            for g in 0..n {
                if s.bits.get(g) {
                    continue;
                }
                let mut gens = s.gens.clone();
                gens.push(g);
                let bits = Bits::from_bools(&cay.closure(&gens));
                if seen.insert(bits.clone()) {
                    let t = Sub {
                        order: bits.count(),
                        bits,
                        gens,
                    };
                    frontier.push(t.clone());
                    subs.push(t);
                }
            }
        }
        subs.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| b.bits.cmp(&a.bits)));
        Ok(SubgroupLattice {
            group: group.clone(),
            cay,
            subs,
        })
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.subs.iter().map(|s| s.order).collect()
    }

    pub fn subgroup(&self, i: usize) -> PermGroup {
        let elems = self.subs[i]
            .bits
            .ones()
            .map(|k| self.group.elements()[k])
            .collect();
        PermGroup::from_element_set(self.group.degree(), elems)
    }

    pub fn subgroups(&self) -> Vec<PermGroup> {
        (0..self.subs.len()).map(|i| self.subgroup(i)).collect()
    }

    fn contained(&self, i: usize, j: usize) -> bool {
        self.subs[i].bits.subset_of(&self.subs[j].bits)
    }

    /// Indices of subgroups contained in subgroup `j`.
    fn below(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.subs.len()).filter(move |&i| self.contained(i, j))
    }

    fn conj(&self, h: usize, x: usize) -> usize {
        self.cay.mul(self.cay.mul(self.cay.inverse[x] as usize, h), x)
    }

    fn is_normal(&self, i: usize, j: usize) -> bool {
        let h = &self.subs[i];
        self.subs[j]
            .gens
            .iter()
            .all(|&x| h.gens.iter().all(|&g| h.bits.get(self.conj(g, x))))
    }

    /// Order of the core of subgroup `h` in subgroup `g`.
    fn core_order(&self, h: usize, g: usize) -> usize {
        let mut core = self.subs[h].bits.clone();
        loop {
            let mut next = core.clone();
            for &x in &self.subs[g].gens {
                let mut conj = Bits::empty(self.cay.n);
                for e in core.ones() {
                    conj.set(self.conj(e, x));
                }
                for (a, b) in next.0.iter_mut().zip(&conj.0) {
                    *a &= b;
                }
            }
            if next == core {
                return core.count();
            }
            core = next;
        }
    }

    pub fn has_subgroup_of_index(&self, j: usize, m: usize) -> bool {
        let order = self.subs[j].order;
        if m == 0 || order % m != 0 {
            return false;
        }
        self.below(j).any(|i| self.subs[i].order * m == order)
    }
}

/// All subgroups, ordered by ascending order then by a fixed element-set
/// tiebreak.
pub fn enumerate_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    Ok(SubgroupLattice::new(g, DEFAULT_SUBGROUP_CAP)?.subgroups())
}

pub fn enumerate_subgroups_capped(g: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    Ok(SubgroupLattice::new(g, cap)?.subgroups())
}

pub fn has_subgroup_of_index(g: &PermGroup, m: usize) -> Result<bool> {
    if m == 0 || g.order() % m != 0 {
        return Ok(false);
    }
    let lat = SubgroupLattice::new(g, DEFAULT_SUBGROUP_CAP)?;
    let top = lat.len() - 1;
    Ok(lat.has_subgroup_of_index(top, m))
}

#[derive(Clone, Debug)]
pub struct SubdirectProduct {
    pub group: PermGroup,
    pub order: usize,
    pub has_index_3_subgroup: bool,
}

/// Subgroups of `S₃ × S₃` (on points 1..3 and 4..6) projecting onto both
/// factors.
pub fn subdirect_products_s3() -> Vec<SubdirectProduct> {
    let ambient = s3_times_s3();
    let lat = SubgroupLattice::new(&ambient, DEFAULT_SUBGROUP_CAP).expect("order 36");
    let mut out = Vec::new();
    for j in 0..lat.len() {
        let g = lat.subgroup(j);
        let left: HashSet<_> = g.elements().iter().map(|p| p.restrict(1, 3)).collect();
        let right: HashSet<_> = g.elements().iter().map(|p| p.restrict(4, 6)).collect();
        if left.len() == 6 && right.len() == 6 {
            out.push(SubdirectProduct {
                order: g.order(),
                has_index_3_subgroup: lat.has_subgroup_of_index(j, 3),
                group: g,
            });
        }
    }
    out
}

/// A chain `H ⊴ N ⊴ G` with `[G : core_G(H)] > d·m^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreBoundViolation {
    pub g_order: usize,
    pub n_order: usize,
    pub h_order: usize,
    pub core_index: u128,
    pub bound: u128,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoreBoundScan {
    pub groups: usize,
    pub chains: usize,
    pub violations: Vec<CoreBoundViolation>,
}

fn core_bound(d: u128, m: u128) -> u128 {
    let mut p: u128 = 1;
    for _ in 0..d {
        p = p.saturating_mul(m);
    }
    d.saturating_mul(p)
}

impl SubgroupLattice {
    fn scan_chains(&self, g: usize, scan: &mut CoreBoundScan) {
        let og = self.subs[g].order;
        let normals: Vec<usize> = self.below(g).filter(|&n| self.is_normal(n, g)).collect();
        for &n in &normals {
            let on = self.subs[n].order;
            for h in self.below(n).filter(|&h| self.is_normal(h, n)) {
                let oh = self.subs[h].order;
                scan.chains += 1;
                let d = (og / on) as u128;
                let m = (on / oh) as u128;
                let core_index = (og / self.core_order(h, g)) as u128;
                let bound = core_bound(d, m);
                if core_index > bound {
                    scan.violations.push(CoreBoundViolation {
                        g_order: og,
                        n_order: on,
                        h_order: oh,
                        core_index,
                        bound,
                    });
                }
            }
        }
    }
}

/// Checks `[G : core_G(H)] ≤ d·m^d` for every chain `H ⊴ N ⊴ G`, where
/// `d = [G:N]` and `m = [N:H]`.
pub fn core_bound_check(g: &PermGroup) -> Result<Vec<CoreBoundViolation>> {
    let lat = SubgroupLattice::new(g, DEFAULT_SUBGROUP_CAP)?;
    let mut scan = CoreBoundScan::default();
    lat.scan_chains(lat.len() - 1, &mut scan);
    Ok(scan.violations)
}

/// Runs the chain check inside every subgroup of `ambient`.
pub fn core_bound_scan(ambient: &PermGroup) -> Result<CoreBoundScan> {
    let lat = SubgroupLattice::new(ambient, DEFAULT_SUBGROUP_CAP)?;
    let mut scan = CoreBoundScan::default();
    for g in 0..lat.len() {
        scan.groups += 1;
        lat.scan_chains(g, &mut scan);
    }
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::perm::Perm;
    use crate::permgroup::witnesses::{cyclic_group, symmetric_group};

    #[test]
    fn subgroup_counts() {
        // classical counts: S3 has 6, C4 has 3, S4 has 30
        assert_eq!(enumerate_subgroups(&symmetric_group(3)).unwrap().len(), 6);
        assert_eq!(enumerate_subgroups(&cyclic_group(4)).unwrap().len(), 3);
        let s4 = enumerate_subgroups(&symmetric_group(4)).unwrap();
        assert_eq!(s4.len(), 30);
        assert_eq!(s4[0].order(), 1);
        assert_eq!(s4.last().unwrap().order(), 24);
        for h in &s4 {
            assert_eq!(24 % h.order(), 0);
        }
    }

    #[test]
    fn s3xs3_lattice() {
        let subs = enumerate_subgroups(&s3_times_s3()).unwrap();
        assert!(subs.iter().any(|h| h.order() == 18));
        assert!(has_subgroup_of_index(&s3_times_s3(), 3).unwrap());
        assert!(has_subgroup_of_index(&symmetric_group(3), 3).unwrap());
        assert!(!has_subgroup_of_index(&cyclic_group(4), 3).unwrap());
    }

    #[test]
    fn subdirect_products() {
        let sd = subdirect_products_s3();
        let orders: std::collections::BTreeSet<usize> = sd.iter().map(|s| s.order).collect();
        assert_eq!(orders, [6, 18, 36].into_iter().collect());
        assert!(sd.iter().all(|s| s.has_index_3_subgroup));
        assert_eq!(sd.iter().filter(|s| s.order == 36).count(), 1);
        let diag = PermGroup::generate(
            &[
                Perm::parse("(1 2 3)(4 5 6)", 6).unwrap(),
                Perm::parse("(1 2)(4 5)", 6).unwrap(),
            ],
            6,
        )
        .unwrap();
        assert!(sd.iter().any(|s| s.group == diag));
    }

    #[test]
    fn core_bounds_hold() {
        assert!(core_bound_check(&symmetric_group(3)).unwrap().is_empty());
        assert!(core_bound_check(&cyclic_group(2)).unwrap().is_empty());
        let scan = core_bound_scan(&symmetric_group(4)).unwrap();
        assert_eq!(scan.groups, 30);
        assert!(scan.violations.is_empty());
        assert_eq!(core_bound(2, 3), 18);
    }
}
