//! Named check suites over the built-in surfaces.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bypass::{bypass_arcs, bypass_triple, BypassArc};
use crate::catalog::{self, k1, k2, k3};
use crate::dividing::{euler_grading, is_isolating, label_regions, DividingSet};
use crate::enumerate::{catalan, enumerate_dividing_sets, enumerate_matchings};
use crate::gf2::{BitVec, Echelon};
use crate::glue::{arc_attachment, cut_along, cut_check, glue, glue_map, BoundaryArc, GluingDatum};
use crate::lift::{mod2_consistency, mod2_shadow, replay, search_lift, LiftOutcome, LiftProblem};
use crate::module::{build_module, ModuleOptions, TqftModule};
use crate::surface::MarkedSurface;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Disk,
    Annulus,
    Torus,
    Lift,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "disk" => Ok(Suite::Disk),
            "annulus" => Ok(Suite::Annulus),
            "torus" => Ok(Suite::Torus),
            "lift" => Ok(Suite::Lift),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite `{s}`")),
        }
    }
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Disk => disk_suite(),
        Suite::Annulus => annulus_suite(),
        Suite::Torus => torus_suite(),
        Suite::Lift => lift_suite(),
        Suite::All => [disk_suite(), annulus_suite(), torus_suite(), lift_suite()].concat(),
    }
}

fn disk(points: usize) -> MarkedSurface {
    MarkedSurface::disk(points).expect("valid disk")
}

fn graded(m: &TqftModule) -> String {
    m.graded_ranks().iter().rev().map(|(e, r)| format!("{e}:{r}")).collect::<Vec<_>>().join(" ")
}

fn catch<T, E: fmt::Display>(name: &str, r: Result<T, E>, f: impl FnOnce(T) -> Check) -> Check {
    match r {
        Ok(v) => f(v),
        Err(e) => Check::new(name, false, format!("error: {e}")),
    }
}

pub fn catalan_counts() -> Check {
    let counts: Vec<usize> = (1..=6).map(|n| enumerate_matchings(n).len()).collect();
    let want: Vec<usize> = (1..=6).map(|n| catalan(n as u64) as usize).collect();
    Check::new("catalan", counts == want && want == [1, 2, 5, 14, 42, 132], format!("{counts:?}"))
}

pub fn disk_ranks(max_n: usize) -> Check {
    let mut ranks = Vec::new();
    let mut ok = true;
    for n in 1..=max_n {
        match build_module(&disk(2 * n), 0) {
            Ok(m) => {
                ok &= m.rank() == 1 << (n - 1);
                ranks.push(m.rank());
            }
            Err(_) => return Check::new("disk ranks", false, format!("n={n} failed to build")),
        }
    }
    let m3 = build_module(&disk(6), 0).expect("n=3 builds");
    let g = (m3.graded_rank(2), m3.graded_rank(0), m3.graded_rank(-2));
    ok &= g == (1, 2, 1) && m3.graded_ranks().len() == 3;
    Check::new("disk ranks", ok, format!("ranks {ranks:?}, n=3 graded {g:?}"))
}

pub fn distinctness(max_n: usize) -> Check {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 1..=max_n {
        let m = build_module(&disk(2 * n), 0).expect("disk builds");
        let ks = enumerate_matchings(n);
        let r = m.distinct_classes(&ks).expect("matchings have classes");
        ok &= r.all_nonzero_and_distinct();
        detail.push(format!("n={n}:{}", ks.len()));
    }
    Check::new("distinctness", ok, detail.join(" "))
}

pub fn superposition() -> Check {
    let m = build_module(&disk(6), 0).expect("n=3 builds");
    let c: Vec<_> = [k1(), k2(), k3()].iter().map(|k| m.class_of(k).expect("class")).collect();
    let mut sum = m.zero_vector();
    for v in &c {
        sum.xor_assign(&v.coords);
    }
    let r = m.distinct_classes(&[k1(), k2(), k3()]).expect("classes");
    let ok = sum.is_zero() && r.all_nonzero_and_distinct();
    Check::new("superposition", ok, format!("K1={} K2={} K3={}", c[0].coords, c[1].coords, c[2].coords))
}

pub fn annulus_relations() -> Check {
    let a = MarkedSurface::annulus(2, 2).expect("annulus");
    let m = match build_module(&a, 3) {
        Ok(m) => m,
        Err(e) => return Check::new("annulus", false, e.to_string()),
    };
    let c = |k: &DividingSet| m.class_of(k).expect("within bound");
    let (kp0, kp1, l0, l1) = (c(&catalog::k0_prime()), c(&catalog::k1_prime()), c(&catalog::l(0)), c(&catalog::l(1)));
    let g = (m.graded_rank(2), m.graded_rank(0), m.graded_rank(-2));
    let stable: Vec<usize> = (2..=4).map(|b| build_module(&a, b).expect("builds").rank()).collect();
    let ok = m.rank() == 4
        && g == (1, 2, 1)
        && !kp0.zero
        && kp0.coords == kp1.coords
        && kp0.coords == l0.add(&l1)
        && stable == [4, 4, 4];
    Check::new(
        "annulus",
        ok,
        format!("rank {} graded {g:?}; K0'={} K1'={} L0={} L1={}; ranks B=2..4 {stable:?}", m.rank(), kp0.coords, kp1.coords, l0.coords, l1.coords),
    )
}

/// Zero class iff isolating, over every generator and every generator with
/// one extra contractible circle.
pub fn vanishing(name: &str, s: &MarkedSurface, bound: usize) -> Check {
    let m = match build_module(s, bound) {
        Ok(m) => m,
        Err(e) => return Check::new(name, false, e.to_string()),
    };
    let bad = m.vanishing_violations();
    let mut isolating = 0;
    let mut circle_bad = 0;
    for k in m.generators() {
        if is_isolating(s, k).unwrap_or(false) {
            isolating += 1;
        }
        let closed = k.with_closed(1);
        let ok = m.class_of(&closed).map(|c| c.zero).unwrap_or(false) && is_isolating(s, &closed).unwrap_or(false);
        if !ok {
            circle_bad += 1;
        }
    }
    Check::new(
        name,
        bad.is_empty() && circle_bad == 0,
        format!("{} generators, {isolating} isolating, {} violations", m.generators().len(), bad.len() + circle_bad),
    )
}

/// Images of `K1, K2, K3` under the three attachment maps, as `0`, `K+`, `K-`.
pub fn gluing_table() -> Result<[[String; 3]; 3], String> {
    let m4 = build_module(&disk(4), 0).map_err(|e| e.to_string())?;
    let kp = m4.class_of(&catalog::disk4_plus()).map_err(|e| e.to_string())?.coords;
    let km = m4.class_of(&catalog::disk4_minus()).map_err(|e| e.to_string())?.coords;
    let chord = DividingSet::from_pairs(&disk(2), vec![], &[(0, 1)], 0).map_err(|e| e.to_string())?;
    let mut table: [[String; 3]; 3] = Default::default();
    for (j, row) in table.iter_mut().enumerate() {
        let d = arc_attachment(6, j + 1).map_err(|e| e.to_string())?;
        let src = build_module(&d.source, 0).map_err(|e| e.to_string())?;
        let map = glue_map(&d, &src, &m4).map_err(|e| e.to_string())?;
        for (i, k) in [k1(), k2(), k3()].iter().enumerate() {
            let c = src.class_of(&k.disjoint_union(&chord)).map_err(|e| e.to_string())?;
            let img = map.apply(&c.coords);
            row[i] = if img.is_zero() {
                "0".into()
            } else if img == kp {
                "K+".into()
            } else if img == km {
                "K-".into()
            } else {
                img.to_string()
            };
        }
    }
    Ok(table)
}

pub fn gluing_tables() -> Check {
    catch("gluing tables", gluing_table(), |t| {
        let want = [["K+", "K+", "0"], ["0", "K-", "K-"], ["K+", "0", "K+"]];
        let ok = (0..3).all(|j| (0..3).all(|i| t[j][i] == want[j][i]));
        let rows: Vec<String> = t.iter().enumerate().map(|(j, r)| format!("Phi{}: {}", j + 1, r.join(","))).collect();
        Check::new("gluing tables", ok, rows.join("; "))
    })
}

pub fn lift_infeasible() -> Check {
    let mut ok = true;
    let mut detail = Vec::new();
    for b in [4, 8] {
        let p = LiftProblem::attachments(b);
        let r = search_lift(&p);
        let replayed = replay(&r.certificate);
        let witness = r.certificate.contains("(1,1): phi3(b)=2 need 0");
        ok &= r.is_infeasible() && witness && matches!(replayed, Ok((ref q, LiftOutcome::Infeasible)) if *q == p);
        detail.push(format!("box {b}: {}", if r.is_infeasible() { "infeasible" } else { "FEASIBLE" }));
    }
    Check::new("lift infeasible", ok, format!("{}; phi3 should send (1,1) to 2", detail.join(", ")))
}

pub fn multiplicativity() -> Check {
    let pairs = [
        (disk(4), disk(4)),
        (disk(2), MarkedSurface::annulus(2, 2).expect("annulus")),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (a, b) in pairs {
        let u = a.disjoint_union(&b);
        let r = |s: &MarkedSurface| build_module(s, 3).map(|m| m.rank()).unwrap_or(0);
        let (ra, rb, ru) = (r(&a), r(&b), r(&u));
        ok &= ru == ra * rb && ru > 0;
        detail.push(format!("{ru} = {ra}x{rb}"));
    }
    Check::new("multiplicativity", ok, detail.join(", "))
}

/// Matchings of `0..points` as partner arrays.
fn matchings(points: usize) -> Vec<Vec<usize>> {
    fn pairings(pts: &[usize]) -> Vec<Vec<(usize, usize)>> {
        let Some((&first, _)) = pts.split_first() else {
            return vec![Vec::new()];
        };
        let mut out = Vec::new();
        for k in (1..pts.len()).step_by(2) {
            for a in pairings(&pts[1..k]) {
                for b in pairings(&pts[k + 1..]) {
                    let mut m = vec![(first, pts[k])];
                    m.extend(a.iter().copied());
                    m.extend(b);
                    out.push(m);
                }
            }
        }
        out
    }
    let pts: Vec<usize> = (0..points).collect();
    pairings(&pts)
        .into_iter()
        .map(|m| {
            let mut partner = vec![0; points];
            for (x, y) in m {
                partner[x] = y;
                partner[y] = x;
            }
            partner
        })
        .collect()
}

/// Relations of the disk with `2n` points from every embedded six-endpoint
/// sub-disk: a tangle in the complement, completed by each of the three
/// grading-0 fillings. Returns `(generators, rows)`.
pub fn subdisk_relations(n: usize) -> (Vec<Vec<usize>>, Vec<BitVec>) {
    let gens = matchings(2 * n);
    let index: HashMap<Vec<usize>, usize> = gens.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let fills: [[(usize, usize); 3]; 3] = [[(0, 3), (1, 2), (4, 5)], [(1, 4), (2, 3), (5, 0)], [(2, 5), (3, 4), (0, 1)]];
    let total = 2 * n + 6;
    let mut rows = Vec::new();
    for tangle in matchings(total) {
        for q in 0..=2 * n {
            // Inner block occupies positions q..q+6; outer point i sits at i or i+6.
            let outer_of = |pos: usize| if pos < q { Some(pos) } else if pos >= q + 6 { Some(pos - 6) } else { None };
            let mut row = BitVec::zeros(gens.len());
            for fill in fills {
                let mut inner = [0usize; 6];
                for (x, y) in fill {
                    inner[x] = y;
                    inner[y] = x;
                }
                let mut result = vec![usize::MAX; 2 * n];
                let mut seen = vec![false; total];
                for start in (0..total).filter(|&p| outer_of(p).is_some()) {
                    if seen[start] {
                        continue;
                    }
                    let mut p = start;
                    loop {
                        seen[p] = true;
                        let t = tangle[p];
                        seen[t] = true;
                        if let Some(o) = outer_of(t) {
                            result[outer_of(start).unwrap()] = o;
                            result[o] = outer_of(start).unwrap();
                            break;
                        }
                        p = q + inner[t - q];
                    }
                }
                let loops = (0..total).any(|p| !seen[p]);
                if !loops {
                    row.flip(index[&result]);
                }
            }
            if !row.is_zero() {
                rows.push(row);
            }
        }
    }
    (gens, rows)
}

pub fn oracle_equivalence(max_n: usize) -> Check {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 1..=max_n {
        let (gens, rows) = subdisk_relations(n);
        let mut span = Echelon::new(gens.len());
        for r in &rows {
            span.insert(r.clone());
        }
        let oracle_rank = gens.len() - span.rank();
        let m = build_module(&disk(2 * n), 0).expect("disk builds");
        let s = disk(2 * n);
        let classes: Vec<BitVec> = gens
            .iter()
            .map(|p| {
                let pairs: Vec<(usize, usize)> = (0..p.len()).filter(|&i| i < p[i]).map(|i| (i, p[i])).collect();
                m.class_of(&DividingSet::from_pairs(&s, vec![], &pairs, 0).expect("valid")).expect("class").coords
            })
            .collect();
        let mut agree = oracle_rank == m.rank();
        for i in 0..gens.len() {
            agree &= span.contains(&BitVec::unit(gens.len(), i)) == classes[i].is_zero();
            for j in i + 1..gens.len() {
                let mut d = BitVec::unit(gens.len(), i);
                d.flip(j);
                agree &= span.contains(&d) == (classes[i] == classes[j]);
            }
        }
        ok &= agree;
        detail.push(format!("n={n}: rank {oracle_rank}/{}", m.rank()));
    }
    Check::new("oracle equivalence", ok, detail.join(", "))
}

fn disk_suite() -> Vec<Check> {
    let mut out = vec![catalan_counts()];
    let d4 = disk(4);
    let kp = catalog::disk4_plus();
    out.push(catch("disk regions", label_regions(&d4, &kp), |regions| {
        let plus: i64 = regions.iter().filter(|r| r.sign > 0).map(|r| r.euler_characteristic).sum();
        let minus: i64 = regions.iter().filter(|r| r.sign < 0).map(|r| r.euler_characteristic).sum();
        Check::new("disk regions", (plus, minus) == (2, 1), format!("K+ has chi(R+)={plus}, chi(R-)={minus}"))
    }));
    let e = |s: &MarkedSurface, k: &DividingSet| euler_grading(s, k).unwrap_or(i64::MIN);
    let d6 = disk(6);
    let all_plus = DividingSet::from_pairs(&d6, vec![], &[(0, 1), (2, 3), (4, 5)], 0).expect("valid");
    let gr = [e(&d4, &kp), e(&d4, &catalog::disk4_minus()), e(&d6, &all_plus), e(&d6, &k1()), e(&d6, &k2()), e(&d6, &k3())];
    out.push(Check::new("disk gradings", gr == [1, -1, 2, 0, 0, 0], format!("{gr:?}")));
    let arc = BypassArc { piece: 0, chords: [(3, 4), (2, 5), (0, 1)] };
    out.push(catch("bypass K3", bypass_triple(&d6, &k3(), &arc), |(f, b)| {
        Check::new("bypass K3", f == k1() && b == k2(), format!("front {f}, back {b}"))
    }));
    out.push(catch("disk n=2", build_module(&d4, 0), |m| {
        Check::new("disk n=2", m.rank() == 2 && m.graded_rank(1) == 1 && m.graded_rank(-1) == 1, graded(&m))
    }));
    out.push(disk_ranks(6));
    out.push(catch("disk n=3 classes", build_module(&d6, 0), |m| {
        let c = |k: &DividingSet| m.class_of(k).expect("class");
        let sum = c(&k1()).add(&c(&k2()));
        let circle = c(&all_plus.with_closed(1));
        let five = m.distinct_classes(&enumerate_matchings(3)).expect("classes");
        let ok = sum == c(&k3()).coords && circle.zero && m.graded_rank(0) == 2 && five.all_nonzero_and_distinct();
        Check::new("disk n=3 classes", ok, format!("K3=K1+K2, circle kills, e=0 rank {}", m.graded_rank(0)))
    }));
    out.push(catch("disk n=4", build_module(&disk(8), 0), |m| {
        let ok = m.graded_rank(3) == 1 && m.graded_rank(-3) == 1 && m.graded_rank(1) == 3;
        Check::new("disk n=4", ok, graded(&m))
    }));
    out.push(distinctness(6));
    out.push(superposition());
    for n in 1..=4 {
        out.push(vanishing(&format!("vanishing disk n={n}"), &disk(2 * n), 0));
    }
    out.push(oracle_equivalence(4));
    let (dd, d_rank) = (disk(4).disjoint_union(&disk(4)), 4);
    out.push(catch("disk union", build_module(&dd, 0), |m| Check::new("disk union", m.rank() == d_rank, format!("rank {}", m.rank()))));
    out
}

fn annulus_suite() -> Vec<Check> {
    let a = MarkedSurface::annulus(2, 2).expect("annulus");
    let mut out = vec![Check::new("annulus surface", a.euler_characteristic() == 0, format!("chi={}", a.euler_characteristic()))];
    let listed = enumerate_dividing_sets(&a, 4);
    let named = [
        ("K+", catalog::annulus_plus()),
        ("K-", catalog::annulus_minus()),
        ("K0'", catalog::k0_prime()),
        ("K1'", catalog::k1_prime()),
        ("L0", catalog::l(0)),
        ("L1", catalog::l(1)),
        ("L2", catalog::l(2)),
    ];
    let missing: Vec<&str> = named.iter().filter(|(_, k)| listed.binary_search(k).is_err()).map(|(n, _)| *n).collect();
    out.push(Check::new("annulus enumeration", missing.is_empty(), format!("{} sets at B=4, missing {missing:?}", listed.len())));
    let kp = catalog::k0_prime();
    let triples: Vec<(DividingSet, DividingSet)> = bypass_arcs(&kp).iter().filter_map(|arc| bypass_triple(&a, &kp, arc).ok()).collect();
    let hit = triples.iter().any(|(f, b)| (f == &catalog::l(1) && b == &catalog::l(0)) || (f == &catalog::l(0) && b == &catalog::l(1)));
    out.push(Check::new("bypass K0'", hit, format!("{} arcs", triples.len())));
    out.push(annulus_relations());
    out.push(catch("annulus classes", build_module(&a, 3), |m| {
        let r = m.distinct_classes(&[catalog::k0_prime(), catalog::k1_prime()]).expect("classes");
        Check::new("annulus classes", r.zero.is_empty() && r.equal_pairs == [(0, 1)], "K0' = K1' and nonzero")
    }));
    let circles = DividingSet::from_pairs(&a, vec![2], &[(0, 1), (2, 7), (3, 6), (4, 5)], 0).expect("valid");
    out.push(Check::new("annulus core circles", is_isolating(&a, &circles).unwrap_or(false), "two core circles isolate"));
    out.push(vanishing("vanishing annulus", &a, ModuleOptions::default().bound));
    // The 2+2 annulus as the hexagon with two opposite marked points glued;
    // its segment is crossed once by the cut arc.
    let hex = GluingDatum { source: disk(6), gamma: BoundaryArc { piece: 0, first: 0, count: 1 }, gamma_prime: BoundaryArc { piece: 0, first: 3, count: 1 } };
    out.push(catch("annulus cut", glue(&hex), |g| {
        let s = g.surface().clone();
        let shape = s.marked_count() == 4 && s.euler_characteristic() == 0;
        catch("annulus cut", cut_check(&s, 0, ModuleOptions::with_bound(3)), |r| {
            Check::new("annulus cut", shape && r.is_isomorphism() && r.cut_rank == 4, format!("disk n=3 rank {} = annulus rank {}", r.cut_rank, r.original_rank))
        })
    }));
    out.push(multiplicativity());
    out
}

fn torus_suite() -> Vec<Check> {
    let t = MarkedSurface::punctured_torus(2).expect("torus");
    let mut out = Vec::new();
    let ranks: Vec<usize> = (2..=4).map(|b| build_module(&t, b).map(|m| m.rank()).unwrap_or(0)).collect();
    out.push(Check::new("torus rank", ranks == [4, 4, 4], format!("B=2..4 {ranks:?}")));
    out.push(vanishing("vanishing torus", &t, 3));
    let once = cut_along(&t, 0).map(|d| d.source);
    let twice = once.as_ref().ok().and_then(|s| cut_along(s, 0).ok()).map(|d| d.source);
    let ok = twice.as_ref().map(|s| s.pair_count() == 0 && s.marked_count() == 6).unwrap_or(false);
    let r1 = cut_check(&t, 0, ModuleOptions::with_bound(3));
    let r2 = once.as_ref().ok().map(|s| cut_check(s, 0, ModuleOptions::with_bound(3)));
    let iso = matches!(r1, Ok(ref r) if r.is_isomorphism()) && matches!(r2, Some(Ok(ref r)) if r.is_isomorphism());
    out.push(Check::new("torus cut twice", ok && iso, "ranks 4 = 4 = 4"));
    out
}

fn lift_suite() -> Vec<Check> {
    let mut out = vec![gluing_tables()];
    let m6 = build_module(&disk(6), 0).expect("n=3 builds");
    out.push(catch("mod2 consistency", mod2_consistency(&LiftProblem::attachments(4), &m6), |r| {
        Check::new("mod2 consistency", r.matches(), "each map kills exactly one of K1, K2, K3")
    }));
    out.push(lift_infeasible());
    let relaxed = search_lift(&LiftProblem::attachments(4).relaxed());
    let detail = match &relaxed.outcome {
        LiftOutcome::Feasible(a) => format!("b={:?} d={:?}", a.vectors[1], a.vectors[2]),
        LiftOutcome::Infeasible => "infeasible".into(),
    };
    let ok = match &relaxed.outcome {
        LiftOutcome::Feasible(a) => a.vectors[1] == [1, 1] && a.vectors[2] == [0, 1] && mod2_shadow(a, &m6).unwrap_or(false),
        LiftOutcome::Infeasible => false,
    };
    out.push(Check::new("lift relaxed", ok, detail));
    let control = search_lift(&LiftProblem::degenerate(4));
    out.push(Check::new("lift control", replay(&control.certificate).is_ok(), format!("degenerate pattern {}", if control.is_infeasible() { "infeasible" } else { "feasible" })));
    out
}
