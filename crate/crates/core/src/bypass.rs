//! Bypass arcs and the surgery replacing a three-strand local picture by the
//! other two members of its triple.
//!
//! A bypass arc inside a piece crosses three chords `c1, c2, c3` in order:
//! `c1` and `c3` border the two faces on either side of the middle chord
//! `c2`. A neighborhood of the arc is a disk meeting `K` in three strands,
//! and the triple is the three grading-0 matchings of that disk.

use thiserror::Error;

use crate::dividing::{is_non_crossing, DividingSet, GapItem, Strands};
use crate::surface::{MarkedSurface, Side};

/// The three chords met by a bypass arc, as slot pairs in one piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BypassArc {
    pub piece: usize,
    pub chords: [(usize, usize); 3],
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BypassError {
    #[error("piece {0} does not exist")]
    NoPiece(usize),
    #[error("({0} {1}) is not a chord of the dividing set")]
    NotAChord(usize, usize),
    #[error("the arc must cross three distinct chords, the outer two on opposite faces of the middle one")]
    BadFrame,
}

/// Faces of a piece: `face[g]` for each gap after slot `g`.
pub(crate) fn piece_faces(partner: &[usize]) -> Vec<usize> {
    let n = partner.len();
    let mut face = vec![usize::MAX; n];
    let mut count = 0;
    for g in 0..n {
        if face[g] != usize::MAX {
            continue;
        }
        let mut cur = g;
        while face[cur] == usize::MAX {
            face[cur] = count;
            cur = partner[(cur + 1) % n];
        }
        count += 1;
    }
    face
}

/// Chords of a piece (`(i, j)`, `i < j`) bordering each face.
fn chords_by_face(partner: &[usize], face: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let n = partner.len();
    let faces = face.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); faces];
    for i in 0..n {
        let j = partner[i];
        if i < j {
            out[face[i]].push((i, j));
            out[face[(i + n - 1) % n]].push((i, j));
        }
    }
    out
}

/// All bypass arcs of a piece whose outer chords lie inside and outside the
/// middle chord respectively (each arc is listed once).
pub(crate) fn arcs_in_piece(piece: usize, partner: &[usize]) -> Vec<BypassArc> {
    let face = piece_faces(partner);
    let by_face = chords_by_face(partner, &face);
    let mut out = Vec::new();
    for i in 0..partner.len() {
        let j = partner[i];
        if i > j {
            continue;
        }
        let inside = face[i];
        let outside = face[(i + partner.len() - 1) % partner.len()];
        for &c1 in &by_face[inside] {
            if c1 == (i, j) {
                continue;
            }
            for &c3 in &by_face[outside] {
                if c3 == (i, j) {
                    continue;
                }
                out.push(BypassArc { piece, chords: [c1, (i, j), c3] });
            }
        }
    }
    out
}

/// Rewires the three chords of `arc` (given in local slot indices of the
/// piece whose endpoints are `ends`) into the front and back configurations.
fn surgery<'s>(s: &Strands<'s>, ends: &[usize], arc: &BypassArc) -> (Strands<'s>, Strands<'s>) {
    let [c1, (i, j), c3] = arc.chords;
    // Orient so that c1 lies inside the interval (i, j).
    let inside = |c: (usize, usize)| i < c.0 && c.1 < j;
    let (c1, c3) = if inside(c1) { (c1, c3) } else { (c3, c1) };
    debug_assert!(inside(c1) && !inside(c3));
    let (a1, b1) = (c1.1, c1.0);
    let (a2, b2) = (j, i);
    // a3 is the endpoint of c3 met first going clockwise from j.
    let n = ends.len();
    let dist = |x: usize| (x + n - j) % n;
    let (a3, b3) = if dist(c3.0) < dist(c3.1) { (c3.0, c3.1) } else { (c3.1, c3.0) };
    let e = |x: usize| ends[x];
    let mut front = s.clone();
    front.link(e(a1), e(a2));
    front.link(e(a3), e(b1));
    front.link(e(b3), e(b2));
    let mut back = s.clone();
    back.link(e(a1), e(b3));
    back.link(e(a2), e(a3));
    back.link(e(b2), e(b1));
    (front, back)
}

/// Front and back bypass results, in canonical form.
pub fn bypass_triple(surface: &MarkedSurface, k: &DividingSet, arc: &BypassArc) -> Result<(DividingSet, DividingSet), BypassError> {
    if arc.piece >= surface.pieces().len() {
        return Err(BypassError::NoPiece(arc.piece));
    }
    let partner = k.partners(arc.piece);
    for &(a, b) in &arc.chords {
        if a >= partner.len() || partner[a] != b {
            return Err(BypassError::NotAChord(a, b));
        }
    }
    let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let chords = arc.chords.map(norm);
    if chords[0] == chords[1] || chords[1] == chords[2] || chords[0] == chords[2] {
        return Err(BypassError::BadFrame);
    }
    let (i, _) = chords[1];
    let n = partner.len();
    let face = piece_faces(partner);
    let by_face = chords_by_face(partner, &face);
    let (f_in, f_out) = (face[i], face[(i + n - 1) % n]);
    let on = |f: usize, c: (usize, usize)| by_face[f].contains(&c);
    let ok = (on(f_in, chords[0]) && on(f_out, chords[2])) || (on(f_out, chords[0]) && on(f_in, chords[2]));
    if !ok {
        return Err(BypassError::BadFrame);
    }
    let s = Strands::from_dividing(surface, k);
    let ends = s.piece_slots(arc.piece);
    let arc = BypassArc { piece: arc.piece, chords };
    let (f, b) = surgery(&s, &ends, &arc);
    Ok((f.canonical(), b.canonical()))
}

/// Every bypass arc of `k` (one per unordered frame).
pub fn bypass_arcs(k: &DividingSet) -> Vec<BypassArc> {
    (0..k.piece_count()).flat_map(|p| arcs_in_piece(p, k.partners(p))).collect()
}

/// Front/back pairs (canonical) of every bypass arc of a working configuration.
pub(crate) fn all_triples(s: &Strands<'_>) -> Vec<(DividingSet, DividingSet)> {
    let mut out = Vec::new();
    for piece in 0..s.surface.pieces().len() {
        let ends = s.piece_slots(piece);
        let local = local_partner(s, &ends);
        for arc in arcs_in_piece(piece, &local) {
            let (f, b) = surgery(s, &ends, &arc);
            out.push((f.canonical(), b.canonical()));
        }
    }
    out
}

pub(crate) fn local_partner(s: &Strands<'_>, ends: &[usize]) -> Vec<usize> {
    let index: std::collections::HashMap<usize, usize> = ends.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    ends.iter().map(|e| index[&s.partner[*e]]).collect()
}

/// Configurations obtained by pushing a finger of one chord across an
/// identification segment on the boundary of one of its faces. The result
/// is isotopic to `s` and carries two extra crossings.
pub(crate) fn finger_moves<'s>(s: &Strands<'s>) -> Vec<Strands<'s>> {
    let mut out = Vec::new();
    for piece in 0..s.surface.pieces().len() {
        let (ends, layout) = s.layout(piece);
        if ends.is_empty() {
            continue;
        }
        let local = local_partner(s, &ends);
        let face = piece_faces(&local);
        let by_face = chords_by_face(&local, &face);
        for (g, gap) in layout.gaps.iter().enumerate() {
            for item in gap {
                let GapItem::Ident { pair, side, k } = *item else { continue };
                for &(u, v) in &by_face[face[g]] {
                    out.push(push_finger(s, piece, (ends[u], ends[v]), pair, side, k));
                }
            }
        }
    }
    out
}

fn push_finger<'s>(s: &Strands<'s>, piece: usize, chord: (usize, usize), pair: usize, side: Side, k: usize) -> Strands<'s> {
    let mut t = s.clone();
    let x = t.points[pair].len();
    let at = match side {
        Side::A => k,
        Side::B => x - k,
    };
    let q1 = t.new_point();
    let q2 = t.new_point();
    t.points[pair].splice(at..at, [q1, q2]);
    let other = side.other();
    let (o1, o2) = (t.cross_end(q1, other), t.cross_end(q2, other));
    t.link(o1, o2);
    let (n1, n2) = (t.cross_end(q1, side), t.cross_end(q2, side));
    let (u, v) = chord;
    t.link(u, n1);
    t.link(v, n2);
    let ends = t.piece_slots(piece);
    if !is_non_crossing(&local_partner(&t, &ends)) {
        t.link(u, n2);
        t.link(v, n1);
    }
    debug_assert!(is_non_crossing(&local_partner(&t, &t.piece_slots(piece))));
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &MarkedSurface, pairs: &[(usize, usize)]) -> DividingSet {
        DividingSet::from_pairs(s, vec![], pairs, 0).unwrap()
    }

    #[test]
    fn k3_vertical_arc_gives_k1_and_k2() {
        let s = MarkedSurface::disk(6).unwrap();
        let k3 = k(&s, &[(0, 1), (2, 5), (3, 4)]);
        let arc = BypassArc { piece: 0, chords: [(3, 4), (2, 5), (0, 1)] };
        let (f, b) = bypass_triple(&s, &k3, &arc).unwrap();
        assert_eq!(f, k(&s, &[(0, 3), (1, 2), (4, 5)]));
        assert_eq!(b, k(&s, &[(0, 5), (1, 4), (2, 3)]));
    }

    #[test]
    fn arc_must_cross_three_chords_in_order() {
        let s = MarkedSurface::disk(6).unwrap();
        let k3 = k(&s, &[(0, 1), (2, 5), (3, 4)]);
        let arc = BypassArc { piece: 0, chords: [(3, 4), (0, 1), (2, 5)] };
        assert_eq!(bypass_triple(&s, &k3, &arc).unwrap_err(), BypassError::BadFrame);
        let arc = BypassArc { piece: 0, chords: [(3, 4), (2, 4), (0, 1)] };
        assert_eq!(bypass_triple(&s, &k3, &arc).unwrap_err(), BypassError::NotAChord(2, 4));
    }

    #[test]
    fn finger_adds_two_crossings_and_cancels() {
        let s = MarkedSurface::annulus(2, 2).unwrap();
        let l0 = DividingSet::from_pairs(&s, vec![0], &[(0, 3), (1, 2)], 0).unwrap();
        let st = Strands::from_dividing(&s, &l0);
        let moves = finger_moves(&st);
        assert!(!moves.is_empty());
        for m in &moves {
            assert_eq!(m.counts(), vec![2]);
            assert_eq!(m.canonical(), l0);
        }
    }
}
