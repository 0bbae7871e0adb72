//! Permutation groups backed by a stabilizer chain.
//!
//! Construction runs deterministic Schreier–Sims over the sorted,
//! deduplicated generator list, so the chain (and therefore every derived
//! enumeration) is independent of the order generators were supplied in.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::perm::{Perm, MAX_DEGREE};

/// Size limits; every one of them fails loudly when exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group whose element set may be materialized.
    pub element_cap: usize,
    /// Largest index allowed for a coset-action quotient.
    pub quotient_degree_cap: usize,
    /// Largest 2-group accepted by the quaternion-free test.
    pub quaternion_free_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 20_000,
            quotient_degree_cap: 1024,
            quaternion_free_cap: 256,
        }
    }
}

#[derive(Clone)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `transversal[beta]` maps the base point to `beta`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            transversal: vec![None; degree],
            orbit: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal.iter_mut().for_each(|t| *t = None);
        self.transversal[self.base] = Some(Perm::identity(degree));
        self.orbit.clear();
        self.orbit.push(self.base);
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            let u = self.transversal[beta].clone().expect("orbit point has transversal");
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.transversal[gamma].is_none() {
                    self.transversal[gamma] = Some(u.mul(s));
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set with orbit transversals.
#[derive(Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(degree: usize, gens: &[Perm]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            chain.ensure_moved(g);
            for level in chain.levels.iter_mut() {
                level.gens.push(g.clone());
                if g.apply(level.base) != level.base {
                    break;
                }
            }
        }
        for level in chain.levels.iter_mut() {
            level.rebuild_orbit(degree);
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match chain.failing_schreier_generator(lvl) {
                None => i -= 1,
                Some((residue, drop)) => {
                    if drop == chain.levels.len() {
                        let b = first_moved(&residue).expect("nontrivial residue");
                        chain.levels.push(Level::new(b, degree));
                    }
                    for l in lvl + 1..=drop {
                        chain.levels[l].gens.push(residue.clone());
                        chain.levels[l].rebuild_orbit(degree);
                    }
                    i = drop as isize;
                }
            }
        }
        chain
    }

    fn ensure_moved(&mut self, g: &Perm) {
        if self.levels.iter().all(|l| g.apply(l.base) == l.base) {
            if let Some(b) = first_moved(g) {
                self.levels.push(Level::new(b, self.degree));
            }
        }
    }

    fn failing_schreier_generator(&self, lvl: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[lvl];
        for &beta in &level.orbit {
            let u = level.transversal[beta].as_ref().unwrap();
            for s in &level.gens {
                let gamma = s.apply(beta);
                let w = level.transversal[gamma].as_ref().unwrap();
                let schreier = u.mul(s).mul(&w.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, drop) = self.strip(schreier, lvl + 1);
                if drop < self.levels.len() || !residue.is_identity() {
                    return Some((residue, drop));
                }
            }
        }
        None
    }

    /// Sifts `g` from level `from`; returns the residue and the level it
    /// dropped out at (`levels.len()` when it passed every level).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(level.base);
            match &level.transversal[beta] {
                None => return (g, l),
                Some(u) => g = g.mul(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    fn contains(&self, g: &Perm) -> bool {
        let (residue, drop) = self.strip(g.clone(), 0);
        drop == self.levels.len() && residue.is_identity()
    }

    fn order(&self) -> Result<u64> {
        self.levels.iter().try_fold(1u64, |acc, l| {
            acc.checked_mul(l.orbit.len() as u64).ok_or(Error::OrderOverflow)
        })
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    fn enumerate(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for x in &out {
                for &beta in &level.orbit {
                    next.push(x.mul(level.transversal[beta].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }
}

fn first_moved(g: &Perm) -> Option<usize> {
    (0..g.degree()).find(|&i| g.apply(i) != i)
}

struct Inner {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    order: u64,
    limits: Limits,
    ambient: Option<Group>,
    elements: OnceLock<Arc<[Perm]>>,
}

/// An immutable permutation group. Cloning is cheap.
#[derive(Clone)]
pub struct Group(Arc<Inner>);

impl Group {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn new(degree: usize, gens: impl IntoIterator<Item = Perm>) -> Result<Group> {
        Group::build(degree, gens, Limits::default(), None)
    }

    pub fn trivial(degree: usize) -> Group {
        Group::new(degree, []).expect("trivial group")
    }

    fn build(
        degree: usize,
        gens: impl IntoIterator<Item = Perm>,
        limits: Limits,
        ambient: Option<Group>,
    ) -> Result<Group> {
        if degree > MAX_DEGREE {
            return Err(Error::MalformedPerm(format!(
                "degree {degree} exceeds maximum {MAX_DEGREE}"
            )));
        }
        let mut set = BTreeSet::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
            if !g.is_identity() {
                set.insert(g);
            }
        }
        let gens: Vec<Perm> = set.into_iter().collect();
        let chain = StabChain::build(degree, &gens);
        let order = chain.order()?;
        Ok(Group(Arc::new(Inner {
            degree,
            gens,
            chain,
            order,
            limits,
            ambient,
            elements: OnceLock::new(),
        })))
    }

    /// Same group with different size limits.
    pub fn with_limits(&self, limits: Limits) -> Group {
        let mut g = Group::build(self.degree(), self.gens().iter().cloned(), limits, self.ambient().cloned())
            .expect("rebuilding a valid group");
        if let Some(els) = self.0.elements.get() {
            if els.len() <= limits.element_cap {
                let inner = Arc::get_mut(&mut g.0).expect("fresh group");
                let _ = inner.elements.set(els.clone());
            }
        }
        g
    }

    /// Subgroup of `self` generated by `gens`; each generator must lie in `self`.
    pub fn subgroup(&self, gens: impl IntoIterator<Item = Perm>) -> Result<Group> {
        let gens: Vec<Perm> = gens.into_iter().collect();
        for g in &gens {
            if !self.contains(g)? {
                return Err(Error::NotInAmbient(g.to_string()));
            }
        }
        Group::build(self.degree(), gens, self.limits(), Some(self.clone()))
    }

    /// Subgroup from generators already known to lie in `self`.
    pub(crate) fn subgroup_unchecked(&self, gens: impl IntoIterator<Item = Perm>) -> Group {
        Group::build(self.degree(), gens, self.limits(), Some(self.clone()))
            .expect("generators of a subgroup")
    }

    /// Subgroup spanned by an element list, adding only elements not yet
    /// covered so the generating set stays logarithmic in size.
    pub(crate) fn subgroup_from_elements<'a>(
        &self,
        elements: impl IntoIterator<Item = &'a Perm>,
    ) -> Group {
        let mut current = self.subgroup_unchecked([]);
        let mut gens = Vec::new();
        for x in elements {
            if !current.has(x) {
                gens.push(x.clone());
                current = self.subgroup_unchecked(gens.iter().cloned());
            }
        }
        current
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Sorted, deduplicated, identity-free generators.
    pub fn gens(&self) -> &[Perm] {
        &self.0.gens
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    pub fn ambient(&self) -> Option<&Group> {
        self.0.ambient.as_ref()
    }

    pub fn chain(&self) -> &StabChain {
        &self.0.chain
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, x: &Perm) -> Result<bool> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: x.degree(),
            });
        }
        Ok(self.has(x))
    }

    /// Membership for an element of matching degree.
    #[inline]
    pub fn has(&self, x: &Perm) -> bool {
        match self.0.elements.get() {
            Some(els) => els.binary_search(x).is_ok(),
            None => self.0.chain.contains(x),
        }
    }

    /// Full element set in canonical (lexicographic) order.
    pub fn elements(&self) -> Result<&[Perm]> {
        if let Some(els) = self.0.elements.get() {
            return Ok(els);
        }
        let cap = self.limits().element_cap;
        if self.order() > cap as u64 {
            return Err(Error::TooLarge {
                order: self.order(),
                cap,
            });
        }
        let els: Arc<[Perm]> = self.0.chain.enumerate().into();
        debug_assert_eq!(els.len() as u64, self.order());
        Ok(self.0.elements.get_or_init(|| els))
    }

    /// Position of `x` in [`elements`](Self::elements).
    pub fn index_of(&self, x: &Perm) -> Result<Option<usize>> {
        Ok(self.elements()?.binary_search(x).ok())
    }

    /// Positions of `h`'s elements in [`elements`](Self::elements).
    pub(crate) fn subset_key(&self, h: &Group) -> Result<BitSet> {
        let els = self.elements()?;
        let mut key = BitSet::new(els.len());
        for x in h.elements()? {
            let pos = els
                .binary_search(x)
                .map_err(|_| Error::NotInAmbient(x.to_string()))?;
            key.insert(pos);
        }
        Ok(key)
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree() == other.degree()
            && other.order() % self.order() == 0
            && self.gens().iter().all(|g| other.has(g))
    }

    /// `x` normalizes `self`.
    pub fn is_normalized_by(&self, x: &Perm) -> bool {
        self.gens().iter().all(|g| self.has(&g.conjugate_by(x)))
    }

    /// `self` is normal in `g` (and contained in it).
    pub fn is_normal_in(&self, g: &Group) -> bool {
        self.is_subgroup_of(g) && g.gens().iter().all(|x| self.is_normalized_by(x))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.gens();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Group generated by `self` and `other`, with `self`'s ambient.
    pub fn join(&self, other: &Group) -> Group {
        let gens = self.gens().iter().chain(other.gens()).cloned();
        Group::build(self.degree(), gens, self.limits(), self.ambient().cloned())
            .expect("join of groups of equal degree")
    }

    pub fn intersection(&self, other: &Group) -> Result<Group> {
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let common: Vec<&Perm> = small.elements()?.iter().filter(|x| large.has(x)).collect();
        Ok(small.subgroup_from_elements(common))
    }

    /// `x^-1 H x`, generated by the conjugated generators.
    pub fn conjugate(&self, x: &Perm) -> Result<Group> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: x.degree(),
            });
        }
        Group::build(
            self.degree(),
            self.gens().iter().map(|g| g.conjugate_by(x)),
            self.limits(),
            self.ambient().cloned(),
        )
    }

    fn check_subgroup(&self, h: &Group) -> Result<()> {
        if h.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: h.degree(),
            });
        }
        if let Some(g) = h.gens().iter().find(|g| !self.has(g)) {
            return Err(Error::NotInAmbient(g.to_string()));
        }
        Ok(())
    }

    /// `N_self(h)` by a scan over the elements of `self`.
    pub fn normalizer(&self, h: &Group) -> Result<Group> {
        self.check_subgroup(h)?;
        let els: Vec<&Perm> = self
            .elements()?
            .iter()
            .filter(|x| h.is_normalized_by(x))
            .collect();
        Ok(self.subgroup_from_elements(els))
    }

    /// `|N_self(h)|` without building the normalizer.
    pub fn normalizer_order(&self, h: &Group) -> Result<u64> {
        self.check_subgroup(h)?;
        Ok(self.elements()?.iter().filter(|x| h.is_normalized_by(x)).count() as u64)
    }

    /// `C_self(h)` by a scan over the elements of `self`.
    pub fn centralizer(&self, h: &Group) -> Result<Group> {
        self.check_subgroup(h)?;
        let els: Vec<&Perm> = self
            .elements()?
            .iter()
            .filter(|x| h.gens().iter().all(|g| g.mul(x) == x.mul(g)))
            .collect();
        Ok(self.subgroup_from_elements(els))
    }
}

/// Equality as sets of permutations.
impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.degree() == other.degree()
            && self.order() == other.order()
            && self.gens().iter().all(|g| other.has(g))
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, degree {}, gens [", self.order(), self.degree())?;
        for (i, g) in self.gens().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

/// `build_group`.
pub fn build_group(degree: usize, gens: impl IntoIterator<Item = Perm>) -> Result<Group> {
    Group::new(degree, gens)
}

pub fn conjugate_subgroup(h: &Group, x: &Perm) -> Result<Group> {
    h.conjugate(x)
}
