//! Enumeration of canonical dividing sets up to a crossing bound.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;

use crate::dividing::{label_regions, piece_layout, DividingSet, SlotRef};
use crate::surface::MarkedSurface;

type Chords = Vec<(usize, usize)>;

/// Non-crossing perfect matchings of slots on a circle in which no chord
/// joins two slots of the same group, as partner arrays in lexicographic
/// order. `None` marks a slot that belongs to no group.
pub fn non_crossing_matchings(groups: &[Option<usize>]) -> Vec<Vec<usize>> {
    let n = groups.len();
    let mut memo = HashMap::new();
    interval(groups, 0, n, &mut memo)
        .iter()
        .map(|chords| {
            let mut partner = vec![0; n];
            for &(a, b) in chords {
                partner[a] = b;
                partner[b] = a;
            }
            partner
        })
        .collect()
}

fn interval(groups: &[Option<usize>], lo: usize, hi: usize, memo: &mut HashMap<(usize, usize), Vec<Chords>>) -> Vec<Chords> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    if (hi - lo) % 2 == 1 {
        return Vec::new();
    }
    if let Some(v) = memo.get(&(lo, hi)) {
        return v.clone();
    }
    let mut out = Vec::new();
    for j in (lo + 1..hi).step_by(2) {
        if groups[lo].is_some() && groups[lo] == groups[j] {
            continue;
        }
        let inner = interval(groups, lo + 1, j, memo);
        if inner.is_empty() {
            continue;
        }
        let outer = interval(groups, j + 1, hi, memo);
        for a in &inner {
            for b in &outer {
                let mut c = Vec::with_capacity(1 + a.len() + b.len());
                c.push((lo, j));
                c.extend_from_slice(a);
                c.extend_from_slice(b);
                out.push(c);
            }
        }
    }
    memo.insert((lo, hi), out.clone());
    out
}

/// Canonical dividing sets on the disk with `2n` marked points.
pub fn enumerate_matchings(n: usize) -> Vec<DividingSet> {
    let s = MarkedSurface::disk(2 * n).expect("disk with an even number of points");
    enumerate_dividing_sets(&s, 0)
}

/// All canonical dividing sets with at most `bound` crossings on every
/// identification pair and no contractible closed components, in canonical
/// order.
pub fn enumerate_dividing_sets(surface: &MarkedSurface, bound: usize) -> Vec<DividingSet> {
    let pairs = surface.pair_count();
    let vectors: Vec<Vec<usize>> = (0..pairs).map(|_| 0..=bound).multi_cartesian_product().collect();
    let vectors = if pairs == 0 { vec![Vec::new()] } else { vectors };
    let mut out: Vec<DividingSet> = vectors
        .par_iter()
        .flat_map_iter(|crossings| with_crossings(surface, crossings))
        .collect();
    out.sort();
    out
}

fn with_crossings(surface: &MarkedSurface, crossings: &[usize]) -> Vec<DividingSet> {
    let per_piece: Vec<Vec<Vec<usize>>> = (0..surface.pieces().len())
        .map(|p| {
            let layout = piece_layout(surface, p, crossings);
            let groups: Vec<Option<usize>> = layout
                .slots
                .iter()
                .map(|s| match *s {
                    SlotRef::Marked(_) => None,
                    SlotRef::Cross { pair, side, .. } => Some(2 * pair + side.bit() as usize),
                })
                .collect();
            non_crossing_matchings(&groups)
        })
        .collect();
    per_piece
        .into_iter()
        .multi_cartesian_product()
        .map(|chords| DividingSet::from_parts_unchecked(crossings.to_vec(), chords, 0))
        .filter(|k| label_regions(surface, k).is_ok())
        .collect()
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dividing::euler_grading;

    fn catalan_recurrence(n: usize) -> u64 {
        let mut c = vec![1u64];
        for m in 1..=n {
            c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
        }
        c[n]
    }

    #[test]
    fn catalan_counts() {
        for n in 1..=7 {
            assert_eq!(enumerate_matchings(n).len() as u64, catalan_recurrence(n), "n={n}");
            assert_eq!(catalan(n as u64), catalan_recurrence(n));
        }
    }

    #[test]
    fn matchings_are_lexicographic() {
        let m = enumerate_matchings(3);
        let strings: Vec<String> = m.iter().map(|k| k.pairing_string()).collect();
        assert_eq!(
            strings,
            vec!["(0 1)(2 3)(4 5)", "(0 1)(2 5)(3 4)", "(0 3)(1 2)(4 5)", "(0 5)(1 2)(3 4)", "(0 5)(1 4)(2 3)"]
        );
    }

    #[test]
    fn n3_grading_partition() {
        let s = MarkedSurface::disk(6).unwrap();
        let mut e: Vec<i64> = enumerate_matchings(3).iter().map(|k| euler_grading(&s, k).unwrap()).collect();
        e.sort_unstable();
        assert_eq!(e, vec![-2, 0, 0, 0, 2]);
    }

    #[test]
    fn annulus_without_crossings() {
        let s = MarkedSurface::annulus(2, 2).unwrap();
        let sets = enumerate_dividing_sets(&s, 0);
        let strings: Vec<String> = sets.iter().map(|k| k.pairing_string()).collect();
        assert_eq!(strings, vec!["(0 1)(2 3)", "(0 3)(1 2)"]);
    }

    #[test]
    fn enumerated_sets_are_canonical() {
        let s = MarkedSurface::annulus(2, 2).unwrap();
        for k in enumerate_dividing_sets(&s, 3) {
            assert!(k.is_efficient(&s));
            assert_eq!(k.canonicalize(&s), k);
        }
    }
}
