//! Decision procedures for the ℒ-Π-property and the Π-property.
//!
//! Both work inside `G`: for `K ⊴ G` and `K ≤ X`, `N_{G/K}(X/K)` is the
//! image of `N_G(X)`, so `|G/K : N_{G/K}(X/K)| = |G : N_G(X)|`.

use std::fmt::Write as _;

use crate::arith::{factorize, prime_divisors, PrimeSet};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::NormalLattice;

/// One violated index condition.
#[derive(Clone, Debug)]
pub struct Witness {
    /// The maximal G-invariant subgroup, or the lower end of the chief factor.
    pub lower: Group,
    /// `HK` for ℒ-Π; `HK ∩ L` for Π.
    pub subject: Group,
    /// Upper end of the chief factor (Π only).
    pub upper: Option<Group>,
    pub index: u64,
    pub pi: PrimeSet,
    pub offending_prime: u64,
}

#[derive(Clone, Debug)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub conditions_checked: usize,
    pub witnesses: Vec<Witness>,
}

fn check_member(lat: &NormalLattice, h: &Group) -> Result<()> {
    if !h.is_subgroup_of(lat.ambient()) {
        return Err(Error::NotInAmbient(format!("{h:?}")));
    }
    Ok(())
}

/// `|G : N_G(x)|`, skipping the scan when `x` is normal.
fn normalizer_index(g: &Group, x: &Group) -> Result<u64> {
    if g.gens().iter().all(|s| x.is_normalized_by(s)) {
        return Ok(1);
    }
    Ok(g.order() / g.normalizer_order(x)?)
}

/// Evaluates one index condition; `None` when it holds.
fn condition(
    g: &Group,
    lower: &Group,
    subject: &Group,
    upper: Option<&Group>,
) -> Result<Option<Witness>> {
    let pi = PrimeSet::of(subject.order() / lower.order());
    if subject.order() == lower.order() {
        // empty π: the subject is K itself, normal, index 1
        return Ok(None);
    }
    let index = normalizer_index(g, subject)?;
    let offending = prime_divisors(index).into_iter().find(|&q| !pi.contains(q));
    Ok(offending.map(|q| Witness {
        lower: lower.clone(),
        subject: subject.clone(),
        upper: upper.cloned(),
        index,
        pi,
        offending_prime: q,
    }))
}

fn l_pi(lat: &NormalLattice, h: &Group, stop_early: bool) -> Result<PropertyVerdict> {
    check_member(lat, h)?;
    let g = lat.ambient();
    let closure = lat.closure_index(h)?;
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for &k in lat.lower_covers(closure) {
        let k = lat.node(k);
        let hk = g.subgroup_unchecked(h.gens().iter().chain(k.gens()).cloned());
        checked += 1;
        if let Some(w) = condition(g, k, &hk, None)? {
            witnesses.push(w);
            if stop_early {
                break;
            }
        }
    }
    Ok(PropertyVerdict {
        holds: witnesses.is_empty(),
        conditions_checked: checked,
        witnesses,
    })
}

/// ℒ-Π-property of `h` in the lattice's ambient group, with all witnesses.
pub fn satisfies_l_pi(lat: &NormalLattice, h: &Group) -> Result<PropertyVerdict> {
    l_pi(lat, h, false)
}

/// Boolean ℒ-Π check that stops at the first violation.
pub fn l_pi_holds(lat: &NormalLattice, h: &Group) -> Result<bool> {
    Ok(l_pi(lat, h, true)?.holds)
}

/// Π-property over every covering pair of the normal lattice.
pub fn satisfies_pi(lat: &NormalLattice, h: &Group) -> Result<PropertyVerdict> {
    check_member(lat, h)?;
    let g = lat.ambient();
    let mut witnesses = Vec::new();
    let mut checked = 0;
    let mut hk_cache: Vec<Option<Group>> = vec![None; lat.len()];
    for &(k, l) in lat.covers() {
        let hk = hk_cache[k]
            .get_or_insert_with(|| {
                g.subgroup_unchecked(h.gens().iter().chain(lat.node(k).gens()).cloned())
            })
            .clone();
        let (k, l) = (lat.node(k), lat.node(l));
        let x = hk.intersection(l)?;
        checked += 1;
        if let Some(w) = condition(g, k, &x, Some(l))? {
            witnesses.push(w);
        }
    }
    Ok(PropertyVerdict {
        holds: witnesses.is_empty(),
        conditions_checked: checked,
        witnesses,
    })
}

fn describe(g: &Group) -> String {
    if g.is_trivial() {
        return "1".to_string();
    }
    let gens: Vec<String> = g.gens().iter().map(|x| x.to_string()).collect();
    format!("<{}> (order {})", gens.join(", "), g.order())
}

fn factorization(n: u64) -> String {
    if n == 1 {
        return "1".to_string();
    }
    factorize(n)
        .into_iter()
        .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn plural(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

/// Human-readable rendering of a verdict.
pub fn explain(verdict: &PropertyVerdict) -> String {
    if verdict.holds {
        return if verdict.conditions_checked == 0 {
            "PASS (vacuous)".to_string()
        } else {
            format!("PASS ({} checked)", plural(verdict.conditions_checked, "condition"))
        };
    }
    let mut s = format!(
        "FAIL ({} of {} violated)",
        verdict.witnesses.len(),
        plural(verdict.conditions_checked, "condition")
    );
    for w in &verdict.witnesses {
        s.push('\n');
        match &w.upper {
            Some(l) => write!(
                s,
                "  chief factor L/K with K = {}, L = {}; X = HK ∩ L = {}",
                describe(&w.lower),
                describe(l),
                describe(&w.subject)
            ),
            None => write!(
                s,
                "  maximal G-invariant K = {}; HK = {}",
                describe(&w.lower),
                describe(&w.subject)
            ),
        }
        .unwrap();
        write!(
            s,
            "\n    index |G : N_G(X)| = {} = {}, pi = {}, offending prime {}",
            w.index,
            factorization(w.index),
            w.pi,
            w.offending_prime
        )
        .unwrap();
    }
    s
}
