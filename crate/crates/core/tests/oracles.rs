use std::collections::BTreeSet;

use proptest::prelude::*;
use suture_core::{catalan, enumerate_matchings, euler_grading, label_regions, MarkedSurface};

/// Every perfect matching of `0..points`, crossing or not.
fn all_matchings(points: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        for k in 1..free.len() {
            let rest: Vec<usize> = free.iter().enumerate().filter(|&(i, _)| i != 0 && i != k).map(|(_, &p)| p).collect();
            acc.push((free[0], free[k]));
            go(rest, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go((0..points).collect(), &mut Vec::new(), &mut out);
    out
}

fn crossing(m: &[(usize, usize)]) -> bool {
    m.iter().any(|&(a, b)| m.iter().any(|&(c, d)| a < c && c < b && b < d))
}

fn planar(n: usize) -> BTreeSet<Vec<(usize, usize)>> {
    all_matchings(2 * n).into_iter().filter(|m| !crossing(m)).map(|mut m| {
        m.sort();
        m
    }).collect()
}

/// Regions of a disk matching by separation: two boundary gaps share a
/// region iff no chord has exactly one of them on its inside. Gap `i` follows
/// point `i`; even gaps are positive. Returns `(positive, negative)` counts.
fn regions_by_separation(points: usize, m: &[(usize, usize)]) -> (i64, i64) {
    let inside = |c: (usize, usize), g: usize| c.0 <= g && g < c.1;
    let mut rep: Vec<usize> = Vec::new();
    let mut counts = (0, 0);
    for g in 0..points {
        let fresh = rep.iter().all(|&r| m.iter().any(|&c| inside(c, r) != inside(c, g)));
        if fresh {
            rep.push(g);
            if g % 2 == 0 {
                counts.0 += 1;
            } else {
                counts.1 += 1;
            }
        }
    }
    counts
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn enumeration_matches_filtered_brute_force() {
    for n in 1..=5 {
        let got: BTreeSet<Vec<(usize, usize)>> = enumerate_matchings(n).iter().map(|k| k.chord_pairs(0)).collect();
        assert_eq!(got, planar(n), "n={n}");
    }
}

#[test]
fn catalan_recurrence() {
    let mut c = vec![1u64];
    for n in 1..=10 {
        let next = (0..n).map(|i| c[i] * c[n - 1 - i]).sum();
        c.push(next);
        assert_eq!(catalan(n as u64), c[n]);
    }
}

#[test]
fn regions_match_separation_oracle() {
    for n in 1..=6 {
        let s = MarkedSurface::disk(2 * n).unwrap();
        for k in enumerate_matchings(n) {
            let (plus, minus) = regions_by_separation(2 * n, &k.chord_pairs(0));
            let regions = label_regions(&s, &k).unwrap();
            assert_eq!(regions.len() as i64, plus + minus);
            assert_eq!(regions.iter().filter(|r| r.sign > 0).count() as i64, plus);
            assert_eq!(euler_grading(&s, &k).unwrap(), plus - minus, "{k}");
        }
    }
}

#[test]
fn gradings_follow_narayana() {
    for n in 1..=6u64 {
        let s = MarkedSurface::disk(2 * n as usize).unwrap();
        let ks = enumerate_matchings(n as usize);
        for k_plus in 1..=n {
            let e = 2 * k_plus as i64 - n as i64 - 1;
            let count = ks.iter().filter(|k| euler_grading(&s, k).unwrap() == e).count() as u64;
            let narayana = binomial(n, k_plus) * binomial(n, k_plus - 1) / n;
            assert_eq!(count, narayana, "n={n} e={e}");
        }
    }
}

proptest! {
    #[test]
    fn every_region_touches_the_disk_boundary(n in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let ks = enumerate_matchings(n);
        let k = &ks[pick.index(ks.len())];
        let s = MarkedSurface::disk(2 * n).unwrap();
        let regions = label_regions(&s, k).unwrap();
        prop_assert!(regions.iter().all(|r| r.touches_boundary && r.euler_characteristic == 1));
        prop_assert!(!suture_core::is_isolating(&s, k).unwrap());
    }
}
