//! Normal-subgroup machinery of a fixed ambient group.
//!
//! Every normal subgroup is a union of conjugacy classes and is generated
//! by the classes it contains, so the lattice is the join-closure of the
//! normal closures of single classes. Nodes are keyed by their class set.

use std::collections::HashMap;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

/// A conjugacy class; `representative` is its least member.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: Perm,
    pub members: Vec<Perm>,
}

impl ConjClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A chief factor `upper / lower`.
#[derive(Clone, Debug)]
pub struct ChiefFactorPair {
    pub lower: Group,
    pub upper: Group,
    pub factor_order: u64,
}

/// Conjugacy classes ordered by representative, identity class first.
pub fn conjugacy_classes(g: &Group) -> Result<Vec<ConjClass>> {
    let (classes, _) = classes_with_index(g)?;
    Ok(classes)
}

fn classes_with_index(g: &Group) -> Result<(Vec<ConjClass>, Vec<usize>)> {
    let els = g.elements()?;
    let mut class_of = vec![usize::MAX; els.len()];
    let mut classes = Vec::new();
    for start in 0..els.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![els[start].clone()];
        let mut i = 0;
        while i < members.len() {
            for s in g.gens() {
                let c = members[i].conjugate_by(s);
                let pos = els.binary_search(&c).expect("conjugate stays in the group");
                if class_of[pos] == usize::MAX {
                    class_of[pos] = id;
                    members.push(c);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(ConjClass {
            representative: els[start].clone(),
            members,
        });
    }
    Ok((classes, class_of))
}

/// Smallest normal subgroup of `g` containing `h`, by conjugating
/// generators until closed.
pub fn normal_closure(g: &Group, h: &Group) -> Result<Group> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotInAmbient(format!("{h:?}")));
    }
    let mut gens: Vec<Perm> = h.gens().to_vec();
    let mut closure = g.subgroup_unchecked(gens.iter().cloned());
    let mut i = 0;
    while i < gens.len() {
        for x in g.gens() {
            let c = gens[i].conjugate_by(x);
            if !closure.has(&c) {
                gens.push(c);
                closure = g.subgroup_unchecked(gens.iter().cloned());
            }
        }
        i += 1;
    }
    Ok(closure)
}

/// The complete lattice of normal subgroups of an ambient group.
pub struct NormalLattice {
    ambient: Group,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    nodes: Vec<Group>,
    node_classes: Vec<BitSet>,
    lookup: HashMap<BitSet, usize>,
    covers: Vec<(usize, usize)>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl NormalLattice {
    pub fn new(g: &Group) -> Result<NormalLattice> {
        let (classes, class_of) = classes_with_index(g)?;
        let mut lat = NormalLattice {
            ambient: g.clone(),
            classes,
            class_of,
            nodes: Vec::new(),
            node_classes: Vec::new(),
            lookup: HashMap::new(),
            covers: Vec::new(),
            upper_covers: Vec::new(),
            lower_covers: Vec::new(),
        };
        lat.enumerate_nodes()?;
        lat.compute_covers();
        Ok(lat)
    }

    fn enumerate_nodes(&mut self) -> Result<()> {
        let g = self.ambient.clone();
        let mut found: Vec<(Group, BitSet)> = Vec::new();
        let mut seen: HashMap<BitSet, usize> = HashMap::new();
        let mut push = |n: Group, found: &mut Vec<(Group, BitSet)>, this: &Self| -> Result<bool> {
            let key = this.class_set_of(&n)?;
            if seen.contains_key(&key) {
                return Ok(false);
            }
            seen.insert(key.clone(), found.len());
            found.push((n, key));
            Ok(true)
        };
        push(g.subgroup_unchecked([]), &mut found, self)?;
        for class in &self.classes[1..] {
            let n = g.subgroup_from_elements(&class.members);
            push(n, &mut found, self)?;
        }
        let mut i = 1;
        while i < found.len() {
            let mut j = 1;
            while j < i {
                let (a, ka) = &found[i];
                let (b, kb) = &found[j];
                if !ka.is_subset(kb) && !kb.is_subset(ka) {
                    let n = a.join(b);
                    push(n, &mut found, self)?;
                }
                j += 1;
            }
            i += 1;
        }

        // element sets are already cached by class_set_of
        found.sort_by(|a, b| {
            a.0.order()
                .cmp(&b.0.order())
                .then_with(|| a.0.elements().unwrap().cmp(b.0.elements().unwrap()))
        });
        for (idx, (n, k)) in found.into_iter().enumerate() {
            self.lookup.insert(k.clone(), idx);
            self.nodes.push(n);
            self.node_classes.push(k);
        }
        Ok(())
    }

    fn compute_covers(&mut self) {
        let n = self.nodes.len();
        let below = |i: usize, j: usize| -> bool {
            i != j && self.node_classes[i].is_subset(&self.node_classes[j])
        };
        let mut covers = Vec::new();
        for j in 0..n {
            for i in 0..n {
                if below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)) {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(i, j) in &covers {
            upper[i].push(j);
            lower[j].push(i);
        }
        self.covers = covers;
        self.upper_covers = upper;
        self.lower_covers = lower;
    }

    /// Classes meeting a subgroup, as a bitset over class indices.
    fn class_set_of(&self, n: &Group) -> Result<BitSet> {
        let els = self.ambient.elements()?;
        let mut set = BitSet::new(self.classes.len());
        for x in n.elements()? {
            let pos = els
                .binary_search(x)
                .map_err(|_| Error::NotInAmbient(x.to_string()))?;
            set.insert(self.class_of[pos]);
        }
        Ok(set)
    }

    fn class_index(&self, x: &Perm) -> Option<usize> {
        let els = self.ambient.elements().ok()?;
        els.binary_search(x).ok().map(|p| self.class_of[p])
    }

    pub fn ambient(&self) -> &Group {
        &self.ambient
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    /// Normal subgroups ordered by order, then by canonical element list.
    pub fn nodes(&self) -> &[Group] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Group {
        &self.nodes[i]
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Covering pairs `(lower, upper)` of node indices.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// `nodes[i] <= nodes[j]`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.node_classes[i].is_subset(&self.node_classes[j])
    }

    /// Node index of a normal subgroup, `None` if `n` is not normal.
    pub fn index_of(&self, n: &Group) -> Option<usize> {
        if !n.is_subgroup_of(&self.ambient) {
            return None;
        }
        let key = self.class_set_of(n).ok()?;
        let idx = *self.lookup.get(&key)?;
        (self.nodes[idx].order() == n.order()).then_some(idx)
    }

    fn require(&self, n: &Group) -> Result<usize> {
        if !n.is_subgroup_of(&self.ambient) {
            return Err(Error::NotInAmbient(format!("{n:?}")));
        }
        self.index_of(n).ok_or(Error::NotNormal)
    }

    /// Node index of the normal closure of `h`: the meet of all nodes
    /// containing the classes of `h`'s generators.
    pub fn closure_index(&self, h: &Group) -> Result<usize> {
        if !h.is_subgroup_of(&self.ambient) {
            return Err(Error::NotInAmbient(format!("{h:?}")));
        }
        let mut need = BitSet::new(self.classes.len());
        for x in h.gens() {
            need.insert(self.class_index(x).expect("generator in ambient"));
        }
        let mut acc = self.node_classes[self.top()].clone();
        for k in &self.node_classes {
            if need.is_subset(k) {
                acc = acc.intersect(k);
            }
        }
        Ok(self.lookup[&acc])
    }

    pub fn normal_closure(&self, h: &Group) -> Result<&Group> {
        Ok(&self.nodes[self.closure_index(h)?])
    }

    /// Index of `nodes[i] ∩ nodes[j]`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.lookup[&self.node_classes[i].intersect(&self.node_classes[j])]
    }

    /// Index of `nodes[i] nodes[j]`.
    pub fn join(&self, i: usize, j: usize) -> usize {
        let want = self.node_classes[i].union(&self.node_classes[j]);
        (0..self.nodes.len())
            .filter(|&k| want.is_subset(&self.node_classes[k]))
            .min_by_key(|&k| self.nodes[k].order())
            .expect("top contains everything")
    }

    pub fn minimal_normal_subgroups(&self) -> Result<Vec<Group>> {
        if self.ambient.is_trivial() {
            return Err(Error::TrivialGroup);
        }
        Ok(self.upper_covers(0).iter().map(|&i| self.nodes[i].clone()).collect())
    }

    /// Maximal G-invariant subgroups of the normal subgroup `n`.
    pub fn maximal_g_invariant_in(&self, n: &Group) -> Result<Vec<Group>> {
        let idx = self.require(n)?;
        Ok(self.lower_covers(idx).iter().map(|&i| self.nodes[i].clone()).collect())
    }

    pub fn is_chief_factor(&self, k: &Group, l: &Group) -> Result<bool> {
        let ki = self.require(k)?;
        let li = self.require(l)?;
        Ok(self.lower_covers(li).contains(&ki))
    }

    /// Deterministic chain of covering node indices from `lower` to
    /// `upper`, choosing the least admissible cover at every step.
    pub fn series_between(&self, lower: usize, upper: usize) -> Option<Vec<usize>> {
        if !self.le(lower, upper) {
            return None;
        }
        let mut chain = vec![lower];
        let mut cur = lower;
        while cur != upper {
            cur = *self
                .upper_covers(cur)
                .iter()
                .filter(|&&c| self.le(c, upper))
                .min()
                .expect("a cover below upper exists");
            chain.push(cur);
        }
        Some(chain)
    }

    fn pairs(&self, chain: &[usize]) -> Vec<ChiefFactorPair> {
        chain
            .windows(2)
            .map(|w| ChiefFactorPair {
                lower: self.nodes[w[0]].clone(),
                upper: self.nodes[w[1]].clone(),
                factor_order: self.nodes[w[1]].order() / self.nodes[w[0]].order(),
            })
            .collect()
    }

    /// Chief series from the trivial subgroup to the ambient group.
    pub fn chief_series(&self) -> Vec<ChiefFactorPair> {
        let chain = self.series_between(0, self.top()).expect("0 <= top");
        self.pairs(&chain)
    }

    /// Orders of the chief factors along [`series_between`](Self::series_between).
    pub fn factor_orders_between(&self, lower: usize, upper: usize) -> Option<Vec<u64>> {
        let chain = self.series_between(lower, upper)?;
        Some(
            chain
                .windows(2)
                .map(|w| self.nodes[w[1]].order() / self.nodes[w[0]].order())
                .collect(),
        )
    }

    pub fn chief_factor_orders(&self) -> Vec<u64> {
        self.factor_orders_between(0, self.top()).expect("0 <= top")
    }
}

pub fn normal_subgroups(g: &Group) -> Result<NormalLattice> {
    NormalLattice::new(g)
}

pub fn minimal_normal_subgroups(g: &Group) -> Result<Vec<Group>> {
    NormalLattice::new(g)?.minimal_normal_subgroups()
}

pub fn maximal_g_invariant_in(g: &Group, n: &Group) -> Result<Vec<Group>> {
    NormalLattice::new(g)?.maximal_g_invariant_in(n)
}

pub fn chief_series(g: &Group) -> Result<Vec<ChiefFactorPair>> {
    Ok(NormalLattice::new(g)?.chief_series())
}

pub fn is_chief_factor(g: &Group, k: &Group, l: &Group) -> Result<bool> {
    NormalLattice::new(g)?.is_chief_factor(k, l)
}

/// `G/K` acting on the right cosets of `K`.
///
/// Cosets are labelled by their least element and sorted by label, so
/// coset 0 is `K` itself.
pub struct Quotient {
    source: Group,
    kernel: Group,
    kernel_elements: Vec<Perm>,
    reps: Vec<Perm>,
    rep_index: HashMap<Perm, usize>,
    group: Group,
}

impl Quotient {
    pub fn new(g: &Group, k: &Group) -> Result<Quotient> {
        if !k.is_subgroup_of(g) {
            return Err(Error::NotInAmbient(format!("{k:?}")));
        }
        if !k.is_normal_in(g) {
            return Err(Error::NotNormal);
        }
        let index = g.order() / k.order();
        let cap = g.limits().quotient_degree_cap;
        if index > cap as u64 {
            return Err(Error::IndexCapExceeded { index, cap });
        }
        let kernel_elements = k.elements()?.to_vec();
        let canon = |x: &Perm| -> Perm {
            kernel_elements
                .iter()
                .map(|k| k.mul(x))
                .min()
                .expect("kernel is nonempty")
        };
        let mut reps = vec![Perm::identity(g.degree())];
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(reps[0].clone(), ());
        let mut i = 0;
        while i < reps.len() {
            for s in g.gens() {
                let c = canon(&reps[i].mul(s));
                if seen.insert(c.clone(), ()).is_none() {
                    reps.push(c);
                }
            }
            i += 1;
        }
        reps.sort_unstable();
        debug_assert_eq!(reps.len() as u64, index);
        let rep_index: HashMap<Perm, usize> =
            reps.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let mut q = Quotient {
            source: g.clone(),
            kernel: k.clone(),
            kernel_elements,
            reps,
            rep_index,
            group: Group::trivial(index as usize),
        };
        let gens: Vec<Perm> = g.gens().iter().map(|s| q.image(s)).collect();
        q.group = Group::new(index as usize, gens)?.with_limits(g.limits());
        Ok(q)
    }

    fn canonical(&self, x: &Perm) -> Perm {
        self.kernel_elements
            .iter()
            .map(|k| k.mul(x))
            .min()
            .expect("kernel is nonempty")
    }

    pub fn coset_index(&self, x: &Perm) -> usize {
        self.rep_index[&self.canonical(x)]
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn kernel(&self) -> &Group {
        &self.kernel
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Image of an element of the source group.
    pub fn image(&self, x: &Perm) -> Perm {
        let images = self.reps.iter().map(|r| self.coset_index(&r.mul(x))).collect();
        Perm::from_images(images).expect("coset action is a bijection")
    }

    /// `HK/K` for a subgroup `h` of the source.
    pub fn image_subgroup(&self, h: &Group) -> Group {
        self.group
            .subgroup_unchecked(h.gens().iter().map(|x| self.image(x)))
    }

    /// An element of the source mapping to `q`.
    pub fn lift(&self, q: &Perm) -> Perm {
        self.reps[q.apply(0)].clone()
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, q: &Group) -> Group {
        let gens = self
            .kernel
            .gens()
            .iter()
            .cloned()
            .chain(q.gens().iter().map(|x| self.lift(x)));
        self.source.subgroup_unchecked(gens)
    }
}

pub fn quotient_group(g: &Group, k: &Group) -> Result<Quotient> {
    Quotient::new(g, k)
}
