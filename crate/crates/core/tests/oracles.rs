mod common;

use common::oracles::*;
use lpi_groups::arith::prime_divisors;
use lpi_groups::corpus::{bundled_corpus, CorpusEntry};
use lpi_groups::structure::*;
use lpi_groups::{p_part, Group, NormalLattice, PPower};

fn corpus() -> Vec<CorpusEntry> {
    bundled_corpus(200).unwrap()
}

/// Corpus without the long cyclic and dihedral tails.
fn varied(max_order: u64) -> Vec<CorpusEntry> {
    corpus()
        .into_iter()
        .filter(|e| e.group.order() <= max_order)
        .filter(|e| {
            let family = e.name.starts_with('C') || e.name.starts_with('D');
            !family || e.name.contains('x') || e.name.contains('e') || e.group.order() <= 24
        })
        .collect()
}

#[test]
fn stabilizer_chain_order_matches_closure() {
    for e in corpus() {
        let els = closure(e.group.degree(), e.group.gens());
        assert_eq!(els.len() as u64, e.group.order(), "{}", e.name);
        assert_eq!(els, e.group.elements().unwrap(), "{}", e.name);
    }
}

#[test]
fn normalizers_and_centralizers_match_scan() {
    for e in varied(120) {
        let g = &e.group;
        let els = g.elements().unwrap();
        let mut subs: Vec<Group> = els
            .iter()
            .step_by(7)
            .map(|x| g.subgroup([x.clone()]).unwrap())
            .collect();
        for p in prime_divisors(g.order()) {
            subs.push(sylow_subgroup(g, p).unwrap());
        }
        for h in subs {
            let hel = h.elements().unwrap().to_vec();
            let n = g.normalizer(&h).unwrap();
            assert_eq!(n.elements().unwrap(), normalizer_scan(g, &hel), "{}", e.name);
            assert_eq!(g.normalizer_order(&h).unwrap(), n.order());
            let c = g.centralizer(&h).unwrap();
            assert_eq!(c.elements().unwrap(), centralizer_scan(g, &hel), "{}", e.name);
        }
    }
}

#[test]
fn normal_lattice_matches_union_of_classes() {
    let mut checked = 0;
    for e in corpus() {
        let lat = NormalLattice::new(&e.group).unwrap();
        if lat.classes().len() > 12 {
            continue;
        }
        let oracle = normal_subgroups_by_unions(&e.group);
        let ours: std::collections::BTreeSet<Vec<_>> = lat
            .nodes()
            .iter()
            .map(|n| n.elements().unwrap().to_vec())
            .collect();
        assert_eq!(ours.len(), lat.len(), "{}: duplicate nodes", e.name);
        assert_eq!(ours, oracle, "{}", e.name);
        checked += 1;
    }
    assert!(checked >= 40, "only {checked} groups had at most 12 classes");
}

#[test]
fn hypercenters_match_definition() {
    for e in corpus() {
        let lat = NormalLattice::new(&e.group).unwrap();
        assert_eq!(z_u_index(&lat), hypercenter_by_definition(&lat, u_central), "{}", e.name);
        for p in prime_divisors(e.group.order()) {
            let ours = z_u_p_index(&lat, p);
            assert_eq!(ours, hypercenter_by_definition(&lat, |f| u_p_central(f, p)), "{} p={p}", e.name);
            assert!(lat.le(z_u_index(&lat), ours));
        }
    }
}

#[test]
fn p_group_subgroups_match_join_oracle() {
    let mut checked = 0;
    for e in corpus() {
        let g = &e.group;
        let primes = prime_divisors(g.order());
        if primes.len() != 1 || g.order() > 32 {
            continue;
        }
        let levels = all_subgroups_of_p_group(g).unwrap();
        let mut ours = std::collections::BTreeSet::new();
        for (k, level) in levels.iter().enumerate() {
            for h in level {
                assert_eq!(h.order(), primes[0].pow(k as u32));
                assert!(ours.insert(h.elements().unwrap().to_vec()), "{}: duplicate", e.name);
            }
        }
        assert_eq!(ours, all_subgroups_by_joins(g), "{}", e.name);
        for k in 1..levels.len() - 1 {
            let d = PPower::new(primes[0], k as u32).unwrap();
            let subs = subgroups_of_order(g, d).unwrap();
            assert_eq!(subs.len(), levels[k].len());
        }
        checked += 1;
    }
    assert!(checked >= 15);
}

#[test]
fn sylow_subgroups_are_conjugate() {
    for e in varied(72) {
        let g = &e.group;
        for p in prime_divisors(g.order()) {
            let base = sylow_subgroup(g, p).unwrap();
            assert_eq!(base.order(), p_part(g.order(), p).value);
            let seeds: Vec<Group> = g
                .elements()
                .unwrap()
                .iter()
                .filter(|x| x.order() == p)
                .rev()
                .take(3)
                .map(|x| g.subgroup([x.clone()]).unwrap())
                .collect();
            for seed in seeds {
                let q = sylow_containing(g, p, &seed).unwrap();
                assert!(seed.is_subgroup_of(&q));
                assert!(conjugating_element(g, &base, &q).is_some(), "{} p={p}", e.name);
            }
        }
    }
}

#[test]
fn o_p_prime_p_routes_agree() {
    for e in corpus() {
        let lat = NormalLattice::new(&e.group).unwrap();
        for p in prime_divisors(e.group.order()) {
            let via_quotient = o_p_prime_p(&lat, p).unwrap();
            let idx = o_p_prime_p_index(&lat, p);
            assert_eq!(&via_quotient, lat.node(idx), "{} p={p}", e.name);
            let lower = o_p_prime(&lat, p).unwrap();
            assert!(lower.is_subgroup_of(&via_quotient));
            assert!(lpi_groups::arith::is_power_of(via_quotient.order() / lower.order(), p));
        }
    }
}

#[test]
fn quaternion_free_shortcuts_agree_with_full_scan() {
    let mut two_groups: Vec<(String, Group)> = Vec::new();
    for e in varied(128) {
        if e.group.order() % 2 == 0 {
            let s = sylow_subgroup(&e.group, 2).unwrap();
            if s.order() <= 64 {
                two_groups.push((e.name.clone(), s));
            }
        }
    }
    for (name, p) in two_groups {
        assert_eq!(
            is_quaternion_free(&p).unwrap(),
            is_quaternion_free_exhaustive(&p).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn supersolubility_implies_solubility() {
    for e in corpus() {
        let lat = NormalLattice::new(&e.group).unwrap();
        for p in prime_divisors(e.group.order()) {
            if is_p_supersoluble(&lat, p) {
                assert!(is_p_soluble(&lat, p), "{} p={p}", e.name);
            }
        }
    }
}
