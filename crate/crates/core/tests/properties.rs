use std::sync::LazyLock;

use proptest::prelude::*;

use lpi_groups::corpus::{self, constructors::*, parse_group_file, GroupFile};
use lpi_groups::lattice::normal_closure;
use lpi_groups::props::{l_pi_holds, satisfies_pi};
use lpi_groups::structure::sylow_subgroup;
use lpi_groups::{Group, NormalLattice, Perm, Quotient};

struct Sample {
    name: &'static str,
    group: Group,
    lattice: NormalLattice,
}

static SAMPLES: LazyLock<Vec<Sample>> = LazyLock::new(|| {
    let mut v: Vec<(&'static str, Group)> = vec![
        ("S4", symmetric(4).unwrap()),
        ("A5", alternating(5).unwrap()),
        ("D12", dihedral(12).unwrap()),
        ("Q16", generalized_quaternion(16).unwrap()),
        ("C2xS4", direct_product(&cyclic(2).unwrap(), &symmetric(4).unwrap()).unwrap()),
    ];
    for name in ["SL2_3", "C3sq_C4", "F21", "AGL1_8", "SD16", "C2e4_C3", "GL2_3"] {
        v.push((name, corpus::fixture(name).unwrap()));
    }
    v.into_iter()
        .map(|(name, group)| Sample {
            name,
            lattice: NormalLattice::new(&group).unwrap(),
            group,
        })
        .collect()
});

fn element(s: &Sample, i: usize) -> Perm {
    let els = s.group.elements().unwrap();
    els[i % els.len()].clone()
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn relabel(g: &Group, sigma: &Perm) -> Group {
    Group::new(g.degree(), g.gens().iter().map(|x| x.conjugate_by(sigma))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_in_generators_are_members(
        idx in 0..SAMPLES.len(),
        word in prop::collection::vec((0usize..8, any::<bool>()), 0..20),
    ) {
        let s = &SAMPLES[idx];
        let gens = s.group.gens();
        let mut x = Perm::identity(s.group.degree());
        for (i, inv) in word {
            let g = &gens[i % gens.len()];
            x = x.mul(&if inv { g.inverse() } else { g.clone() });
        }
        prop_assert!(s.group.contains(&x).unwrap());
    }

    #[test]
    fn generator_order_does_not_matter(idx in 0..SAMPLES.len(), seed in any::<u64>()) {
        let s = &SAMPLES[idx];
        let mut gens = s.group.gens().to_vec();
        let k = gens.len();
        gens.rotate_left((seed as usize) % k);
        gens.push(gens[0].mul(&gens[k - 1]));
        let g = Group::new(s.group.degree(), gens).unwrap();
        prop_assert_eq!(g.order(), s.group.order());
        prop_assert_eq!(g.elements().unwrap(), s.group.elements().unwrap());
        let lat = NormalLattice::new(&g).unwrap();
        prop_assert_eq!(lat.chief_factor_orders(), s.lattice.chief_factor_orders());
    }

    #[test]
    fn embedding_properties_are_conjugation_invariant(
        idx in 0..SAMPLES.len(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>(),
    ) {
        let s = &SAMPLES[idx];
        let h = s.group.subgroup([element(s, a), element(s, b)]).unwrap();
        let x = element(s, c);
        let hx = h.conjugate(&x).unwrap();
        prop_assert_eq!(l_pi_holds(&s.lattice, &h).unwrap(), l_pi_holds(&s.lattice, &hx).unwrap());
        prop_assert_eq!(
            satisfies_pi(&s.lattice, &h).unwrap().holds,
            satisfies_pi(&s.lattice, &hx).unwrap().holds
        );
    }

    #[test]
    fn pi_property_implies_l_pi_property(idx in 0..SAMPLES.len(), a in any::<usize>(), b in any::<usize>()) {
        let s = &SAMPLES[idx];
        let h = s.group.subgroup([element(s, a), element(s, b)]).unwrap();
        if satisfies_pi(&s.lattice, &h).unwrap().holds {
            prop_assert!(l_pi_holds(&s.lattice, &h).unwrap(), "{}", s.name);
        }
    }

    #[test]
    fn chief_factors_survive_relabelling(idx in 0..SAMPLES.len(), sigma in perm_strategy(48)) {
        let s = &SAMPLES[idx];
        let n = s.group.degree();
        let images: Vec<usize> = (0..48).map(|i| sigma.apply(i)).filter(|&i| i < n).collect();
        let sigma = Perm::from_images(images).unwrap();
        let g = relabel(&s.group, &sigma);
        let lat = NormalLattice::new(&g).unwrap();
        let mut ours = lat.chief_factor_orders();
        let mut theirs = s.lattice.chief_factor_orders();
        ours.sort_unstable();
        theirs.sort_unstable();
        prop_assert_eq!(ours, theirs);
        prop_assert_eq!(lat.len(), s.lattice.len());
    }

    #[test]
    fn chief_series_factors_multiply_to_order(idx in 0..SAMPLES.len()) {
        let s = &SAMPLES[idx];
        let series = s.lattice.chief_series();
        for pair in &series {
            prop_assert!(s.lattice.is_chief_factor(&pair.lower, &pair.upper).unwrap());
        }
        let product: u64 = series.iter().map(|c| c.factor_order).product();
        prop_assert_eq!(product, s.group.order());
    }

    #[test]
    fn lattice_normal_closure_matches_conjugation(idx in 0..SAMPLES.len(), a in any::<usize>()) {
        let s = &SAMPLES[idx];
        let h = s.group.subgroup([element(s, a)]).unwrap();
        let direct = normal_closure(&s.group, &h).unwrap();
        prop_assert_eq!(s.lattice.normal_closure(&h).unwrap(), &direct);
    }

    #[test]
    fn quotient_map_is_a_homomorphism(
        idx in 0..SAMPLES.len(), n in any::<usize>(), a in any::<usize>(), b in any::<usize>(),
    ) {
        let s = &SAMPLES[idx];
        let k = s.lattice.node(n % s.lattice.len());
        let q = Quotient::new(&s.group, k).unwrap();
        let (x, y) = (element(s, a), element(s, b));
        prop_assert_eq!(q.image(&x.mul(&y)), q.image(&x).mul(&q.image(&y)));
        prop_assert_eq!(q.group().order() * k.order(), s.group.order());
        prop_assert!(q.image(&x).is_identity() == k.has(&x));
        let lifted = q.lift(&q.image(&x));
        prop_assert!(k.has(&lifted.mul(&x.inverse())));
    }

    #[test]
    fn group_files_round_trip(idx in 0..SAMPLES.len()) {
        let s = &SAMPLES[idx];
        let file = GroupFile::from_group(s.name, &s.group);
        let parsed = parse_group_file(&file.emit()).unwrap();
        prop_assert_eq!(&parsed, &file);
        prop_assert_eq!(parsed.to_group().unwrap(), s.group.clone());
    }

    #[test]
    fn sylow_orders_are_full_p_parts(idx in 0..SAMPLES.len()) {
        let s = &SAMPLES[idx];
        for p in lpi_groups::arith::prime_divisors(s.group.order()) {
            let q = sylow_subgroup(&s.group, p).unwrap();
            prop_assert_eq!(q.order(), lpi_groups::p_part(s.group.order(), p).value);
        }
    }
}
