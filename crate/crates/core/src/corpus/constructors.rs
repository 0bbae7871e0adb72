//! Standard families of permutation groups.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Perm {
    let pts: Vec<usize> = points.into_iter().collect();
    Perm::from_cycles(degree, &[&pts]).expect("valid cycle")
}

/// `S_n` on `n` points.
pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("symmetric(0)".into()));
    }
    if n == 1 {
        return Ok(Group::trivial(1));
    }
    Group::new(n, [cycle(n, [1, 2]), cycle(n, 1..=n)])
}

/// `A_n` on `n` points, generated by the 3-cycles `(1,2,i)`.
pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("alternating(0)".into()));
    }
    Group::new(n, (3..=n).map(|i| cycle(n, [1, 2, i])))
}

/// `C_n` as an `n`-cycle.
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic(0)".into()));
    }
    if n == 1 {
        return Ok(Group::trivial(1));
    }
    Group::new(n, [cycle(n, 1..=n)])
}

/// Dihedral group of the given order `2n`, acting on an `n`-gon for `n >= 3`.
pub fn dihedral(order: usize) -> Result<Group> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::InvalidParameter(format!("dihedral({order}): order must be even and >= 2")));
    }
    let n = order / 2;
    match n {
        1 => cyclic(2),
        2 => Group::new(4, [cycle(4, [1, 2]), cycle(4, [3, 4])]),
        _ => {
            let reflection = Perm::from_images((0..n).map(|j| (n - j) % n).collect())?;
            Group::new(n, [cycle(n, 1..=n), reflection])
        }
    }
}

/// Generalized quaternion group of order `2^k >= 8`, in its regular
/// representation.
pub fn generalized_quaternion(order: usize) -> Result<Group> {
    if order < 8 || !order.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "generalized_quaternion({order}): order must be a power of two >= 8"
        )));
    }
    // a^i b^j <-> 2i + j, with a of order m, b^2 = a^(m/2), b a = a^-1 b
    let m = order / 2;
    let idx = |i: usize, j: usize| 2 * (i % m) + j;
    let mut right_a = vec![0; order];
    let mut right_b = vec![0; order];
    for i in 0..m {
        right_a[idx(i, 0)] = idx(i + 1, 0);
        right_a[idx(i, 1)] = idx(i + m - 1, 1);
        right_b[idx(i, 0)] = idx(i, 1);
        right_b[idx(i, 1)] = idx(i + m / 2, 0);
    }
    Group::new(
        order,
        [Perm::from_images(right_a)?, Perm::from_images(right_b)?],
    )
}

/// `a × b` acting on disjoint point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let total = a.degree() + b.degree();
    let gens = a
        .gens()
        .iter()
        .map(|g| g.shifted(0, total))
        .chain(b.gens().iter().map(|g| g.shifted(a.degree(), total)))
        .collect::<Vec<_>>();
    Group::new(total, gens)
}

/// `C_p^k`.
pub fn elementary_abelian(p: usize, k: usize) -> Result<Group> {
    let mut g = Group::trivial(0);
    for _ in 0..k {
        g = direct_product(&g, &cyclic(p)?)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn family_orders() {
        for n in 1..=6 {
            assert_eq!(symmetric(n).unwrap().order(), factorial(n as u64));
            let expect = if n < 2 { 1 } else { factorial(n as u64) / 2 };
            assert_eq!(alternating(n).unwrap().order(), expect);
        }
        for n in 1..=30 {
            assert_eq!(cyclic(n).unwrap().order(), n as u64);
            assert_eq!(dihedral(2 * n).unwrap().order(), 2 * n as u64);
        }
        for k in 3..=6 {
            assert_eq!(generalized_quaternion(1 << k).unwrap().order(), 1 << k);
        }
        assert_eq!(elementary_abelian(2, 3).unwrap().order(), 8);
    }

    #[test]
    fn quaternion_census() {
        let q8 = generalized_quaternion(8).unwrap();
        let els = q8.elements().unwrap();
        let involutions = els.iter().filter(|x| x.order() == 2).count();
        let fours = els.iter().filter(|x| x.order() == 4).count();
        assert_eq!(involutions, 1);
        assert_eq!(fours, 6);
        assert!(!q8.is_abelian());
        let q16 = generalized_quaternion(16).unwrap();
        assert_eq!(q16.elements().unwrap().iter().filter(|x| x.order() == 2).count(), 1);
    }

    #[test]
    fn products() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        assert_eq!(g.degree(), 5);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(symmetric(0).is_err());
        assert!(dihedral(7).is_err());
        assert!(generalized_quaternion(4).is_err());
        assert!(generalized_quaternion(12).is_err());
    }
}
