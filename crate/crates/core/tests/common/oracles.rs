//! Brute-force reference implementations. They share nothing with the
//! library beyond `Perm` multiplication and the group's element list.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use lpi_groups::{Group, NormalLattice, Perm};

/// Elements generated by `gens`, by breadth-first multiplication.
pub fn closure(degree: usize, gens: &[Perm]) -> Vec<Perm> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn normalizer_scan(g: &Group, h: &[Perm]) -> Vec<Perm> {
    let set: HashSet<&Perm> = h.iter().collect();
    g.elements()
        .unwrap()
        .iter()
        .filter(|x| {
            let xi = x.inverse();
            h.iter().all(|y| set.contains(&xi.mul(y).mul(x)))
        })
        .cloned()
        .collect()
}

pub fn centralizer_scan(g: &Group, h: &[Perm]) -> Vec<Perm> {
    g.elements()
        .unwrap()
        .iter()
        .filter(|x| h.iter().all(|y| x.mul(y) == y.mul(x)))
        .cloned()
        .collect()
}

/// Conjugacy classes by orbit scan.
pub fn classes_scan(g: &Group) -> Vec<Vec<Perm>> {
    let els = g.elements().unwrap();
    let mut done: HashSet<Perm> = HashSet::new();
    let mut out = Vec::new();
    for x in els {
        if done.contains(x) {
            continue;
        }
        let class: BTreeSet<Perm> = els.iter().map(|g| g.inverse().mul(x).mul(g)).collect();
        done.extend(class.iter().cloned());
        out.push(class.into_iter().collect());
    }
    out
}

/// Normal subgroups as sorted element lists: every union of classes that
/// contains the identity and is closed under multiplication.
pub fn normal_subgroups_by_unions(g: &Group) -> BTreeSet<Vec<Perm>> {
    let classes = classes_scan(g);
    let id = Perm::identity(g.degree());
    let id_class = classes.iter().position(|c| c.contains(&id)).unwrap();
    let others: Vec<usize> = (0..classes.len()).filter(|&i| i != id_class).collect();
    assert!(others.len() <= 16, "too many classes for the subset oracle");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << others.len()) {
        let mut set: HashSet<Perm> = classes[id_class].iter().cloned().collect();
        for (bit, &c) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                set.extend(classes[c].iter().cloned());
            }
        }
        if g.order() % set.len() as u64 != 0 {
            continue;
        }
        let closed = set.iter().all(|a| set.iter().all(|b| set.contains(&a.mul(b))));
        if closed {
            let mut v: Vec<Perm> = set.into_iter().collect();
            v.sort();
            out.insert(v);
        }
    }
    out
}

/// Largest normal subgroup `N` such that every chief factor below `N` has
/// an order accepted by `central`.
pub fn hypercenter_by_definition(lat: &NormalLattice, central: impl Fn(u64) -> bool) -> usize {
    (0..lat.len())
        .filter(|&n| {
            lat.factor_orders_between(lat.trivial(), n)
                .unwrap()
                .into_iter()
                .all(&central)
        })
        .max_by_key(|&n| lat.node(n).order())
        .unwrap()
}

/// All subgroups of a small group as sorted element lists: cyclic
/// subgroups, closed under pairwise joins.
pub fn all_subgroups_by_joins(g: &Group) -> BTreeSet<Vec<Perm>> {
    let degree = g.degree();
    let mut subs: BTreeSet<Vec<Perm>> = g
        .elements()
        .unwrap()
        .iter()
        .map(|x| closure(degree, std::slice::from_ref(x)))
        .collect();
    loop {
        let list: Vec<Vec<Perm>> = subs.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if a.iter().all(|x| b.binary_search(x).is_ok())
                    || b.iter().all(|x| a.binary_search(x).is_ok())
                {
                    continue;
                }
                let gens: Vec<Perm> = a.iter().chain(b.iter()).cloned().collect();
                let j = closure(degree, &gens);
                grew |= subs.insert(j);
            }
        }
        if !grew {
            return subs;
        }
    }
}

/// An element conjugating `a` onto `b`, by scan.
pub fn conjugating_element(g: &Group, a: &Group, b: &Group) -> Option<Perm> {
    let target = b.elements().unwrap();
    g.elements().unwrap().iter().find(|x| {
        let mut img: Vec<Perm> = a
            .elements()
            .unwrap()
            .iter()
            .map(|y| x.inverse().mul(y).mul(x))
            .collect();
        img.sort();
        img == target
    }).cloned()
}
