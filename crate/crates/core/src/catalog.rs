//! Named dividing sets on the standard presentations: the disk with four and
//! six marked points and the annulus with two points on each boundary circle.
//!
//! Annulus slots read `m0 m1 A0 .. m2 m3 B0 ..`: the outer circle's points,
//! the crossings on the right side top to bottom, the inner circle's points,
//! then the crossings on the left side bottom to top.

use crate::dividing::DividingSet;
use crate::surface::MarkedSurface;

fn single(surface: &MarkedSurface, crossings: Vec<usize>, pairs: &[(usize, usize)]) -> DividingSet {
    DividingSet::from_pairs(surface, crossings, pairs, 0).expect("catalog entries are valid")
}

fn disk(points: usize) -> MarkedSurface {
    MarkedSurface::disk(points).expect("even point count")
}

/// Both chords ∂-parallel, cutting off positive half-disks (`e = 1`).
pub fn disk4_plus() -> DividingSet {
    single(&disk(4), vec![], &[(0, 1), (2, 3)])
}

/// Both chords ∂-parallel, cutting off negative half-disks (`e = −1`).
pub fn disk4_minus() -> DividingSet {
    single(&disk(4), vec![], &[(0, 3), (1, 2)])
}

/// The three grading-0 matchings of the six-point disk. `K3` turns into
/// `K1` and `K2` by the bypass along its middle chord.
pub fn k1() -> DividingSet {
    single(&disk(6), vec![], &[(0, 3), (1, 2), (4, 5)])
}

pub fn k2() -> DividingSet {
    single(&disk(6), vec![], &[(0, 5), (1, 4), (2, 3)])
}

pub fn k3() -> DividingSet {
    single(&disk(6), vec![], &[(0, 1), (2, 5), (3, 4)])
}

fn annulus() -> MarkedSurface {
    MarkedSurface::annulus(2, 2).expect("valid annulus")
}

pub fn annulus_plus() -> DividingSet {
    single(&annulus(), vec![0], &[(0, 1), (2, 3)])
}

pub fn annulus_minus() -> DividingSet {
    single(&annulus(), vec![2], &[(0, 7), (1, 2), (3, 4), (5, 6)])
}

/// Outer arc cutting off a positive half-disk, inner arc cutting off a
/// negative one, and a core circle.
pub fn k0_prime() -> DividingSet {
    single(&annulus(), vec![2], &[(0, 1), (2, 7), (3, 4), (5, 6)])
}

/// Outer arc cutting off a negative half-disk, inner arc a positive one, and
/// a core circle.
pub fn k1_prime() -> DividingSet {
    single(&annulus(), vec![2], &[(0, 7), (1, 2), (3, 6), (4, 5)])
}

/// Two arcs joining the boundary circles, each crossing the identified
/// sides `j` times.
pub fn l(j: usize) -> DividingSet {
    if j == 0 {
        return single(&annulus(), vec![0], &[(0, 3), (1, 2)]);
    }
    let x = 2 * j;
    // Slots: m0 = 0, m1 = 1, A_k = 2 + k, m2 = x + 2, m3 = x + 3, B_k = x + 4 + k.
    let a = |k: usize| 2 + k;
    let b = |k: usize| x + 4 + k;
    let mut pairs = vec![(1, a(0)), (0, a(1))];
    for k in 0..x - 2 {
        pairs.push((a(k + 2), b(x - 1 - k)));
    }
    pairs.push((b(1), x + 2));
    pairs.push((b(0), x + 3));
    single(&annulus(), vec![x], &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dividing::{euler_grading, is_isolating};

    #[test]
    fn gradings() {
        let d4 = disk(4);
        assert_eq!(euler_grading(&d4, &disk4_plus()).unwrap(), 1);
        assert_eq!(euler_grading(&d4, &disk4_minus()).unwrap(), -1);
        let d6 = disk(6);
        for k in [k1(), k2(), k3()] {
            assert_eq!(euler_grading(&d6, &k).unwrap(), 0);
        }
        let a = annulus();
        assert_eq!(euler_grading(&a, &annulus_plus()).unwrap(), 2);
        assert_eq!(euler_grading(&a, &annulus_minus()).unwrap(), -2);
        for k in [k0_prime(), k1_prime(), l(0), l(1), l(2), l(3)] {
            assert_eq!(euler_grading(&a, &k).unwrap(), 0);
            assert!(!is_isolating(&a, &k).unwrap());
            assert!(k.is_efficient(&a));
        }
    }
}
