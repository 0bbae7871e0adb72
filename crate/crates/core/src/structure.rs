//! Characteristic subgroups and group-class predicates.
//!
//! Everything here that depends on normal structure takes a
//! [`NormalLattice`], so a lattice built once per ambient group serves all
//! queries about it.

use std::collections::HashSet;

use serde::Serialize;

use crate::arith::{is_power_of, is_prime, p_part, prime_divisors, PPower};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{NormalLattice, Quotient};
use crate::perm::Perm;

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Sylow `p`-subgroup of `g` by normalizer growth from the trivial group.
pub fn sylow_subgroup(g: &Group, p: u64) -> Result<Group> {
    sylow_containing(g, p, &Group::trivial(g.degree()))
}

/// Grows the `p`-subgroup `seed` to a Sylow `p`-subgroup: repeatedly adjoin
/// the least `x` in `N_G(Q) \ Q` with `x^p` in `Q`.
pub fn sylow_containing(g: &Group, p: u64, seed: &Group) -> Result<Group> {
    require_prime(p)?;
    if !is_power_of(seed.order(), p) {
        return Err(Error::NotPGroup(p));
    }
    if !seed.is_subgroup_of(g) {
        return Err(Error::NotInAmbient(format!("{seed:?}")));
    }
    let target = p_part(g.order(), p).value;
    let els = g.elements()?;
    let mut q = g.subgroup_unchecked(seed.gens().iter().cloned());
    while q.order() < target {
        let x = els
            .iter()
            .find(|x| !q.has(x) && q.is_normalized_by(x) && q.has(&x.pow(p)))
            .expect("a p-subgroup below Sylow order has a proper normalizer extension");
        let gens: Vec<Perm> = q.gens().iter().cloned().chain([x.clone()]).collect();
        q = g.subgroup_unchecked(gens);
    }
    Ok(q)
}

fn largest_node(lat: &NormalLattice, pred: impl Fn(u64) -> bool) -> usize {
    let idx = (0..lat.len())
        .filter(|&i| pred(lat.node(i).order()))
        .max_by_key(|&i| lat.node(i).order())
        .expect("the trivial node always qualifies");
    debug_assert!((0..lat.len())
        .filter(|&i| pred(lat.node(i).order()))
        .all(|i| lat.le(i, idx)));
    idx
}

pub fn o_p_index(lat: &NormalLattice, p: u64) -> usize {
    largest_node(lat, |n| is_power_of(n, p))
}

pub fn o_p_prime_index(lat: &NormalLattice, p: u64) -> usize {
    largest_node(lat, |n| n % p != 0)
}

/// Largest normal `p`-subgroup.
pub fn o_p(lat: &NormalLattice, p: u64) -> Result<Group> {
    require_prime(p)?;
    Ok(lat.node(o_p_index(lat, p)).clone())
}

/// Largest normal subgroup of order prime to `p`.
pub fn o_p_prime(lat: &NormalLattice, p: u64) -> Result<Group> {
    require_prime(p)?;
    Ok(lat.node(o_p_prime_index(lat, p)).clone())
}

/// Preimage of `O_p(G / O_p'(G))`, computed through the coset-action
/// quotient.
pub fn o_p_prime_p(lat: &NormalLattice, p: u64) -> Result<Group> {
    require_prime(p)?;
    let g = lat.ambient();
    let k = lat.node(o_p_prime_index(lat, p));
    let q = Quotient::new(g, k)?;
    let qlat = NormalLattice::new(q.group())?;
    let top = qlat.node(o_p_index(&qlat, p));
    Ok(q.preimage(top))
}

/// The same subgroup via the correspondence theorem inside the lattice of
/// `G`: the largest node above `O_p'(G)` with `p`-power index over it.
pub fn o_p_prime_p_index(lat: &NormalLattice, p: u64) -> usize {
    let base = o_p_prime_index(lat, p);
    let base_order = lat.node(base).order();
    (0..lat.len())
        .filter(|&i| lat.le(base, i) && is_power_of(lat.node(i).order() / base_order, p))
        .max_by_key(|&i| lat.node(i).order())
        .expect("base itself qualifies")
}

pub fn is_p_soluble(lat: &NormalLattice, p: u64) -> bool {
    lat.chief_factor_orders()
        .into_iter()
        .all(|f| f % p != 0 || is_power_of(f, p))
}

/// First chief factor order violating p-supersolubility, if any.
pub fn p_supersoluble_obstruction(lat: &NormalLattice, p: u64) -> Option<u64> {
    lat.chief_factor_orders()
        .into_iter()
        .find(|&f| !u_p_central(f, p))
}

pub fn is_p_supersoluble(lat: &NormalLattice, p: u64) -> bool {
    p_supersoluble_obstruction(lat, p).is_none()
}

/// `G / nodes[n]` is p-supersoluble, read off the chief factors above `n`.
pub fn is_p_supersoluble_above(lat: &NormalLattice, n: usize, p: u64) -> bool {
    lat.factor_orders_between(n, lat.top())
        .expect("n <= top")
        .into_iter()
        .all(|f| u_p_central(f, p))
}

/// A chief factor of order `f` may sit below the supersoluble hypercenter.
pub fn u_central(f: u64) -> bool {
    is_prime(f)
}

/// A chief factor of order `f` may sit below the p-supersoluble hypercenter.
pub fn u_p_central(f: u64, p: u64) -> bool {
    f % p != 0 || f == p
}

fn hypercenter_index(lat: &NormalLattice, central: impl Fn(u64) -> bool) -> usize {
    let mut w = lat.trivial();
    loop {
        let order = lat.node(w).order();
        let ups: Vec<usize> = lat
            .upper_covers(w)
            .iter()
            .copied()
            .filter(|&l| central(lat.node(l).order() / order))
            .collect();
        if ups.is_empty() {
            return w;
        }
        w = ups.into_iter().fold(w, |acc, l| lat.join(acc, l));
    }
}

pub fn z_u_index(lat: &NormalLattice) -> usize {
    hypercenter_index(lat, u_central)
}

pub fn z_u_p_index(lat: &NormalLattice, p: u64) -> usize {
    hypercenter_index(lat, |f| u_p_central(f, p))
}

/// Supersoluble hypercenter.
pub fn z_u(lat: &NormalLattice) -> Group {
    lat.node(z_u_index(lat)).clone()
}

/// p-supersoluble hypercenter.
pub fn z_u_p(lat: &NormalLattice, p: u64) -> Result<Group> {
    require_prime(p)?;
    Ok(lat.node(z_u_p_index(lat, p)).clone())
}

/// Prime `p` such that `g` is a nontrivial `p`-group.
fn p_group_prime(g: &Group) -> Option<u64> {
    match prime_divisors(g.order()).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

fn require_p_group(g: &Group, p: u64) -> Result<()> {
    if is_power_of(g.order(), p) {
        Ok(())
    } else {
        Err(Error::NotPGroup(p))
    }
}

/// Subgroups of `p_group` of order `p^k`, level by level from the trivial
/// group: every subgroup of order `p^(k+1)` contains a normal subgroup `S`
/// of order `p^k` and equals `<S, x>` for some `x ∈ N(S) \ S` with `x^p ∈ S`.
fn subgroup_levels(p_group: &Group, p: u64, top_exponent: u32) -> Result<Vec<Vec<Group>>> {
    let els = p_group.elements()?;
    let mut levels = vec![vec![p_group.subgroup_unchecked([])]];
    for _ in 0..top_exponent {
        let prev = levels.last().unwrap();
        let mut next: Vec<(BitSet, Group)> = Vec::new();
        let mut seen: HashSet<BitSet> = HashSet::new();
        for s in prev {
            let mut made: Vec<Group> = Vec::new();
            for x in els {
                if s.has(x) || !s.is_normalized_by(x) || !s.has(&x.pow(p)) {
                    continue;
                }
                if made.iter().any(|t| t.has(x)) {
                    continue;
                }
                let gens: Vec<Perm> = s.gens().iter().cloned().chain([x.clone()]).collect();
                let t = p_group.subgroup_unchecked(gens);
                let key = p_group.subset_key(&t)?;
                made.push(t.clone());
                if seen.insert(key.clone()) {
                    next.push((key, t));
                }
            }
        }
        next.sort_by(|a, b| a.1.elements().unwrap().cmp(b.1.elements().unwrap()));
        levels.push(next.into_iter().map(|(_, t)| t).collect());
    }
    Ok(levels)
}

/// All subgroups of `p_group` of order `d`, requiring `d < |p_group|`.
///
/// Output is in canonical order (by sorted element list).
pub fn subgroups_of_order(p_group: &Group, d: PPower) -> Result<Vec<Group>> {
    require_p_group(p_group, d.p)?;
    if d.value >= p_group.order() {
        return Err(Error::InvalidParameter(format!(
            "subgroup order {} must be below |P| = {}",
            d.value,
            p_group.order()
        )));
    }
    Ok(subgroup_levels(p_group, d.p, d.exponent)?.pop().unwrap())
}

/// Every subgroup of a `p`-group, grouped by order exponent.
pub fn all_subgroups_of_p_group(p_group: &Group) -> Result<Vec<Vec<Group>>> {
    let Some(p) = p_group_prime(p_group) else {
        return Ok(vec![vec![p_group.clone()]]);
    };
    let e = p_part(p_group.order(), p).exponent;
    subgroup_levels(p_group, p, e)
}

/// Cyclic subgroups of order 4 of a 2-group.
pub fn cyclic_subgroups_of_order4(p_group: &Group) -> Result<Vec<Group>> {
    require_p_group(p_group, 2)?;
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut out = Vec::new();
    for x in p_group.elements()? {
        if x.order() != 4 {
            continue;
        }
        let mut key = vec![Perm::identity(x.degree()), x.clone(), x.pow(2), x.pow(3)];
        key.sort_unstable();
        if seen.insert(key) {
            out.push(p_group.subgroup_unchecked([x.clone()]));
        }
    }
    Ok(out)
}

/// `h / k` is quaternion of order 8, for `k` normal of index 8 in `h`.
fn quotient_is_q8(h: &Group, k: &Group) -> Result<bool> {
    if h.order() != 8 * k.order() {
        return Ok(false);
    }
    let mut involution_elements = 0u64;
    for x in h.elements()? {
        if !k.has(&x.pow(4)) {
            return Ok(false); // an element of order 8 modulo k
        }
        if !k.has(x) && k.has(&x.pow(2)) {
            involution_elements += 1;
        }
    }
    Ok(involution_elements == k.order())
}

fn check_qf_input(p_group: &Group) -> Result<()> {
    require_p_group(p_group, 2)?;
    let cap = p_group.limits().quaternion_free_cap;
    if p_group.order() > cap as u64 {
        return Err(Error::QuaternionCapExceeded {
            order: p_group.order(),
            cap,
        });
    }
    Ok(())
}

/// The 2-group has no section isomorphic to `Q8`.
pub fn is_quaternion_free(p_group: &Group) -> Result<bool> {
    check_qf_input(p_group)?;
    // sections of abelian groups are abelian, and sections of groups of
    // exponent 2 have exponent 2
    if p_group.is_abelian() || p_group.elements()?.iter().all(|x| x.order() <= 2) {
        return Ok(true);
    }
    section_scan(p_group)
}

/// [`is_quaternion_free`] without the abelian and exponent shortcuts.
pub fn is_quaternion_free_exhaustive(p_group: &Group) -> Result<bool> {
    check_qf_input(p_group)?;
    section_scan(p_group)
}

fn section_scan(p_group: &Group) -> Result<bool> {
    for level in all_subgroups_of_p_group(p_group)?.iter().skip(3) {
        for h in level {
            if h.is_abelian() {
                continue;
            }
            let lat = NormalLattice::new(h)?;
            for k in lat.nodes() {
                if k.order() * 8 == h.order() && quotient_is_q8(h, k)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRecord {
    pub p: u64,
    pub sylow_order: u64,
    pub o_p_order: u64,
    pub o_p_prime_order: u64,
    pub o_p_prime_p_order: u64,
    pub z_u_order: u64,
    pub z_u_p_order: u64,
    pub p_soluble: bool,
    pub p_supersoluble: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub group: String,
    pub order: u64,
    pub chief_factor_orders: Vec<u64>,
    pub primes: Vec<PrimeRecord>,
}

pub fn structure_report(name: &str, lat: &NormalLattice) -> Result<StructureReport> {
    let g = lat.ambient();
    let z_u_order = lat.node(z_u_index(lat)).order();
    let mut primes = Vec::new();
    for p in prime_divisors(g.order()) {
        primes.push(PrimeRecord {
            p,
            sylow_order: sylow_subgroup(g, p)?.order(),
            o_p_order: lat.node(o_p_index(lat, p)).order(),
            o_p_prime_order: lat.node(o_p_prime_index(lat, p)).order(),
            o_p_prime_p_order: o_p_prime_p(lat, p)?.order(),
            z_u_order,
            z_u_p_order: lat.node(z_u_p_index(lat, p)).order(),
            p_soluble: is_p_soluble(lat, p),
            p_supersoluble: is_p_supersoluble(lat, p),
        });
    }
    Ok(StructureReport {
        group: name.to_string(),
        order: g.order(),
        chief_factor_orders: lat.chief_factor_orders(),
        primes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{constructors::*, fixture};

    fn lat(g: &Group) -> NormalLattice {
        NormalLattice::new(g).unwrap()
    }

    fn pp(p: u64, value: u64) -> PPower {
        PPower::of_value(p, value).unwrap()
    }

    #[test]
    fn sylow_orders() {
        let s4 = symmetric(4).unwrap();
        assert_eq!(sylow_subgroup(&s4, 2).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&s4, 3).unwrap().order(), 3);
        assert!(sylow_subgroup(&s4, 5).unwrap().is_trivial());
        assert!(sylow_subgroup(&s4, 4).is_err());
    }

    #[test]
    fn o_subgroups_of_s4() {
        let s4 = symmetric(4).unwrap();
        let l = lat(&s4);
        assert_eq!(o_p(&l, 2).unwrap().order(), 4);
        assert!(o_p_prime(&l, 2).unwrap().is_trivial());
        assert_eq!(o_p_prime_p(&l, 2).unwrap().order(), 4);
        let a4 = alternating(4).unwrap();
        assert!(o_p(&lat(&a4), 3).unwrap().is_trivial());
    }

    #[test]
    fn o_p_prime_p_of_s3() {
        let s3 = symmetric(3).unwrap();
        let l = lat(&s3);
        assert_eq!(o_p_prime(&l, 2).unwrap().order(), 3);
        assert_eq!(o_p_prime_p(&l, 2).unwrap().order(), 6);
        let d8 = dihedral(8).unwrap();
        assert_eq!(o_p_prime_p(&lat(&d8), 2).unwrap(), d8);
    }

    #[test]
    fn solubility_predicates() {
        let s4 = lat(&symmetric(4).unwrap());
        assert!(is_p_soluble(&s4, 2));
        assert!(!is_p_supersoluble(&s4, 2));
        assert_eq!(p_supersoluble_obstruction(&s4, 2), Some(4));
        let a5 = lat(&alternating(5).unwrap());
        assert!(!is_p_soluble(&a5, 2));
        assert!(is_p_soluble(&a5, 7));
        let a4 = lat(&alternating(4).unwrap());
        assert!(is_p_supersoluble(&a4, 3));
        assert!(is_p_supersoluble(&lat(&symmetric(3).unwrap()), 2));
    }

    #[test]
    fn hypercenters() {
        let s4 = lat(&symmetric(4).unwrap());
        assert!(z_u(&s4).is_trivial());
        let sl23 = lat(&fixture("SL2_3").unwrap());
        assert_eq!(z_u_p(&sl23, 2).unwrap().order(), 2);
        let c6 = cyclic(6).unwrap();
        assert_eq!(z_u(&lat(&c6)), c6);
    }

    #[test]
    fn p_group_subgroups() {
        let s4 = symmetric(4).unwrap();
        let d8 = sylow_subgroup(&s4, 2).unwrap();
        let fours = subgroups_of_order(&d8, pp(2, 4)).unwrap();
        assert_eq!(fours.len(), 3);
        assert_eq!(fours.iter().filter(|h| h.elements().unwrap().iter().any(|x| x.order() == 4)).count(), 1);
        let v4 = elementary_abelian(2, 2).unwrap();
        assert_eq!(subgroups_of_order(&v4, pp(2, 2)).unwrap().len(), 3);
        assert!(subgroups_of_order(&v4, pp(2, 4)).is_err());
        assert!(subgroups_of_order(&s4, pp(2, 2)).is_err());
    }

    #[test]
    fn cyclic_fours() {
        assert_eq!(cyclic_subgroups_of_order4(&generalized_quaternion(8).unwrap()).unwrap().len(), 3);
        assert!(cyclic_subgroups_of_order4(&elementary_abelian(2, 2).unwrap()).unwrap().is_empty());
        assert_eq!(cyclic_subgroups_of_order4(&cyclic(8).unwrap()).unwrap().len(), 1);
        assert!(cyclic_subgroups_of_order4(&cyclic(3).unwrap()).is_err());
    }

    #[test]
    fn quaternion_freeness() {
        assert!(!is_quaternion_free(&generalized_quaternion(8).unwrap()).unwrap());
        assert!(is_quaternion_free(&dihedral(8).unwrap()).unwrap());
        assert!(is_quaternion_free(&elementary_abelian(2, 3).unwrap()).unwrap());
        assert!(!is_quaternion_free(&generalized_quaternion(16).unwrap()).unwrap());
        assert!(is_quaternion_free(&dihedral(16).unwrap()).unwrap());
        assert!(is_quaternion_free_exhaustive(&elementary_abelian(2, 3).unwrap()).unwrap());
        assert!(is_quaternion_free(&cyclic(3).unwrap()).is_err());
        let capped = generalized_quaternion(16).unwrap().with_limits(crate::group::Limits {
            quaternion_free_cap: 8,
            ..Default::default()
        });
        assert!(matches!(is_quaternion_free(&capped), Err(Error::QuaternionCapExceeded { .. })));
    }

    #[test]
    fn report_for_s4() {
        let r = structure_report("S4", &lat(&symmetric(4).unwrap())).unwrap();
        assert_eq!(r.chief_factor_orders, vec![4, 3, 2]);
        let two = &r.primes[0];
        assert_eq!((two.p, two.sylow_order, two.o_p_prime_p_order, two.z_u_order), (2, 8, 4, 1));
        assert!(!two.p_supersoluble);
    }
}
