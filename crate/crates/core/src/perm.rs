//! Permutations of `{1..degree}`.
//!
//! Points are stored 0-based; every textual form (cycle notation, group
//! files, CLI arguments) is 1-based. Composition is left-to-right:
//! `a.compose(&b)` maps `x` to `b(a(x))`, i.e. `x^(ab) = (x^a)^b`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 2048;

/// A bijection of `{0..degree}` stored as its image sequence.
///
/// `Ord` is lexicographic on the image sequence, which is the canonical
/// element order used throughout the crate. The identity is the least
/// permutation of any given degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u16]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        if degree > MAX_DEGREE {
            return Err(Error::MalformedPerm(format!(
                "degree {degree} exceeds maximum {MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; degree];
        for &x in &images {
            if x >= degree || seen[x] {
                return Err(Error::MalformedPerm(format!(
                    "image sequence {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles given in 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle.iter() {
                if pt == 0 || pt > degree {
                    return Err(Error::MalformedPerm(format!(
                        "point {pt} outside 1..{degree}"
                    )));
                }
                if touched[pt - 1] {
                    return Err(Error::MalformedPerm(format!("point {pt} repeated")));
                }
                touched[pt - 1] = true;
            }
            for (i, &pt) in cycle.iter().enumerate() {
                images[pt - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// Unchecked [`compose`](Self::compose); panics on degree mismatch.
    #[inline]
    pub fn mul(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    /// `x^-1 * self * x`.
    pub fn conjugate_by(&self, x: &Perm) -> Perm {
        // (x^-1 self x)(x(i)) = x(self(i))
        let mut out = vec![0u16; self.degree()];
        for i in 0..self.degree() {
            out[x.images[i] as usize] = x.images[self.images[i] as usize];
        }
        Perm {
            images: out.into_boxed_slice(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, as 0-based points, each
    /// starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `k >= 1` with `self^k = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Sign of the permutation: true for even.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Relabels points `0..degree` as `offset..offset+degree` inside a
    /// permutation of the larger degree `total`.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<u16> = (0..total as u16).collect();
        for i in 0..self.degree() {
            images[offset + i] = (offset + self.apply(i)) as u16;
        }
        Perm {
            images: images.into_boxed_slice(),
        }
    }
}

/// `a ∘ b` in the crate-wide left-to-right convention.
pub fn compose(a: &Perm, b: &Perm) -> Result<Perm> {
    a.compose(b)
}

pub fn element_order(x: &Perm) -> u64 {
    x.order()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Cycle notation with 1-based points; `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}
