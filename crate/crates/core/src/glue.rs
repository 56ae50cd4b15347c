//! Gluing marked surfaces along boundary arcs, the induced maps on the
//! presented modules, and presentation isomorphisms.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dividing::{DividingSet, Strands};
use crate::gf2::{BitVec, Echelon};
use crate::module::{ClassVector, ModuleError, ModuleOptions, TqftModule};
use crate::surface::{MarkedSurface, Side, Sign, SurfaceError, Token};

/// Consecutive marked points `first .. first + count` of a piece, by their
/// clockwise ordinal among the piece's marked points. Their tokens must be
/// adjacent in the boundary word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryArc {
    pub piece: usize,
    pub first: usize,
    pub count: usize,
}

/// Identifies `gamma` with `gamma_prime` reversing orientation: the `i`-th
/// point of `gamma` meets the `(count − 1 − i)`-th point of `gamma_prime`.
#[derive(Clone, Debug)]
pub struct GluingDatum {
    pub source: MarkedSurface,
    pub gamma: BoundaryArc,
    pub gamma_prime: BoundaryArc,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlueError {
    #[error("bad boundary arc: {0}")]
    BadArc(String),
    #[error("labels of the two arcs do not match under the gluing")]
    Labels,
    #[error("glued surface is invalid: {0}")]
    Surface(#[from] SurfaceError),
    #[error("target module is not built on the glued surface")]
    NoIsomorphism,
    #[error("source module is not built on the datum's source surface")]
    SourceMismatch,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("relation {0:?} does not map to zero")]
    RelationNotZero(Vec<usize>),
    #[error("identification segment ends carry equal labels, so no dividing set crosses it exactly once")]
    EvenCut,
}

struct MergePlan {
    surface: MarkedSurface,
    /// Old `(piece, pos)` of each marked token, keyed by new marked id.
    marked_from: Vec<usize>,
    pair: usize,
}

/// The result of gluing, able to carry dividing sets across.
pub struct Gluing {
    source: MarkedSurface,
    inserted: MarkedSurface,
    gamma: Vec<usize>,
    gamma_prime: Vec<usize>,
    marked_map: Vec<Option<usize>>,
    merge: Option<MergePlan>,
}

fn arc_positions(s: &MarkedSurface, arc: &BoundaryArc) -> Result<Vec<usize>, GlueError> {
    if arc.piece >= s.pieces().len() {
        return Err(GlueError::BadArc(format!("piece {} does not exist", arc.piece)));
    }
    if arc.count == 0 {
        return Err(GlueError::BadArc("empty arc".into()));
    }
    let pos = s.marked_positions_in_piece(arc.piece);
    if arc.first + arc.count > pos.len() {
        return Err(GlueError::BadArc(format!("piece {} has only {} marked points", arc.piece, pos.len())));
    }
    let out = pos[arc.first..arc.first + arc.count].to_vec();
    if out.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(GlueError::BadArc("marked points are not adjacent".into()));
    }
    Ok(out)
}

pub fn glue(d: &GluingDatum) -> Result<Gluing, GlueError> {
    let s = &d.source;
    let g = arc_positions(s, &d.gamma)?;
    let gp = arc_positions(s, &d.gamma_prime)?;
    if g.len() != gp.len() {
        return Err(GlueError::BadArc("arcs carry different numbers of marked points".into()));
    }
    if d.gamma.piece == d.gamma_prime.piece && g.iter().any(|p| gp.contains(p)) {
        return Err(GlueError::BadArc("arcs overlap".into()));
    }
    let label = |piece: usize, pos: usize| match s.piece(piece)[pos] {
        Token::Marked(l) => l,
        _ => unreachable!(),
    };
    if label(d.gamma_prime.piece, *gp.last().unwrap()) != -label(d.gamma.piece, g[0]) {
        return Err(GlueError::Labels);
    }

    let new_pair = s.pair_count();
    let mut pieces = Vec::new();
    let mut marked_map = vec![None; s.marked_count()];
    let mut new_pos: Vec<(usize, usize, usize)> = Vec::new();
    for (p, word) in s.pieces().iter().enumerate() {
        let mut out = Vec::new();
        for (pos, tok) in word.iter().enumerate() {
            let in_g = p == d.gamma.piece && g.contains(&pos);
            let in_gp = p == d.gamma_prime.piece && gp.contains(&pos);
            if in_g || in_gp {
                let first = if in_g { g[0] } else { gp[0] };
                if pos == first {
                    let side = if in_g { Side::A } else { Side::B };
                    out.push(Token::Segment { pair: new_pair, side });
                }
                continue;
            }
            if let Some(id) = s.marked_id(p, pos) {
                new_pos.push((id, pieces.len(), out.len()));
            }
            out.push(*tok);
        }
        pieces.push(out);
    }
    let mut names = s.pair_names().to_vec();
    names.push(fresh_pair_name(&names));
    let inserted = MarkedSurface::new(pieces, names)?;
    for (id, p, pos) in new_pos {
        marked_map[id] = inserted.marked_id(p, pos);
    }
    let to_ids = |piece: usize, positions: &[usize]| -> Vec<usize> { positions.iter().map(|&pos| s.marked_id(piece, pos).unwrap()).collect() };
    let gamma = to_ids(d.gamma.piece, &g);
    let gamma_prime = to_ids(d.gamma_prime.piece, &gp);

    let (pa, _) = inserted.segment_position(new_pair, Side::A);
    let (pb, _) = inserted.segment_position(new_pair, Side::B);
    let merge = if pa != pb { Some(merge_pieces(&inserted, new_pair)?) } else { None };
    Ok(Gluing { source: s.clone(), inserted, gamma, gamma_prime, marked_map, merge })
}

fn fresh_pair_name(names: &[[String; 2]]) -> [String; 2] {
    let used: Vec<&String> = names.iter().flatten().collect();
    let mut k = 0;
    loop {
        let a = if k == 0 { "g".to_string() } else { format!("g{k}") };
        let b = format!("{a}'");
        if !used.contains(&&a) && !used.contains(&&b) {
            return [a, b];
        }
        k += 1;
    }
}

/// Merges the two pieces joined by `pair`, dropping the pair. `pair` must be
/// the last pair.
fn merge_pieces(s: &MarkedSurface, pair: usize) -> Result<MergePlan, GlueError> {
    let (pa, ia) = s.segment_position(pair, Side::A);
    let (pb, ib) = s.segment_position(pair, Side::B);
    let wa = s.piece(pa);
    let wb = s.piece(pb);
    let mut merged: Vec<(usize, usize)> = Vec::new();
    for off in 1..wa.len() {
        merged.push((pa, (ia + off) % wa.len()));
    }
    for off in 1..wb.len() {
        merged.push((pb, (ib + off) % wb.len()));
    }
    let low = pa.min(pb);
    let mut layout: Vec<Vec<(usize, usize)>> = Vec::new();
    for p in 0..s.pieces().len() {
        if p == low {
            layout.push(merged.clone());
        } else if p != pa && p != pb {
            layout.push((0..s.piece(p).len()).map(|i| (p, i)).collect());
        }
    }
    let pieces: Vec<Vec<Token>> = layout.iter().map(|w| w.iter().map(|&(p, i)| s.piece(p)[i]).collect()).collect();
    let names = s.pair_names()[..pair].to_vec();
    let surface = MarkedSurface::new(pieces, names)?;
    let mut marked_from = vec![usize::MAX; surface.marked_count()];
    for (np, w) in layout.iter().enumerate() {
        for (ni, &(p, i)) in w.iter().enumerate() {
            if let Some(id) = s.marked_id(p, i) {
                marked_from[surface.marked_id(np, ni).unwrap()] = id;
            }
        }
    }
    Ok(MergePlan { surface, marked_from, pair })
}

impl Gluing {
    pub fn surface(&self) -> &MarkedSurface {
        match &self.merge {
            Some(m) => &m.surface,
            None => &self.inserted,
        }
    }

    pub fn source(&self) -> &MarkedSurface {
        &self.source
    }

    /// Marked id on the glued surface of a marked point of the source that
    /// lies off both arcs.
    pub fn marked_image(&self, id: usize) -> Option<usize> {
        let inserted = self.marked_map.get(id).copied().flatten()?;
        match &self.merge {
            Some(m) => m.marked_from.iter().position(|&old| old == inserted),
            None => Some(inserted),
        }
    }

    /// Glues a dividing set on the source and returns the canonical result.
    pub fn transport(&self, k: &DividingSet) -> DividingSet {
        let src = Strands::from_dividing(&self.source, k);
        let old_points: usize = src.points.iter().map(Vec::len).sum();
        let count = self.gamma.len();
        let m_src = self.source.marked_count();
        let m_ins = self.inserted.marked_count();
        let new_ids: Vec<usize> = (old_points..old_points + count).collect();
        let cross = |q: usize, side: Side| m_ins + 2 * q + side.bit() as usize;
        let gamma_pos: HashMap<usize, usize> = self.gamma.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let gamma_prime_pos: HashMap<usize, usize> = self.gamma_prime.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let map = |e: usize| -> usize {
            if e < m_src {
                if let Some(&i) = gamma_pos.get(&e) {
                    cross(new_ids[i], Side::A)
                } else if let Some(&j) = gamma_prime_pos.get(&e) {
                    cross(new_ids[count - 1 - j], Side::B)
                } else {
                    self.marked_map[e].unwrap()
                }
            } else {
                e - m_src + m_ins
            }
        };
        let mut points = src.points.clone();
        points.push(new_ids.clone());
        let mut partner = vec![usize::MAX; m_ins + 2 * (old_points + count)];
        for (e, &f) in src.partner.iter().enumerate() {
            if f != usize::MAX {
                partner[map(e)] = map(f);
            }
        }
        let ins = Strands { surface: &self.inserted, points, partner, closed: src.closed };
        match &self.merge {
            None => ins.canonical(),
            Some(plan) => merge_strands(&ins, plan).canonical(),
        }
    }
}

fn merge_strands<'a>(s: &Strands<'_>, plan: &'a MergePlan) -> Strands<'a> {
    let m_old = s.marked();
    let m_new = plan.surface.marked_count();
    let mut old_to_new = vec![usize::MAX; m_old];
    for (new, &old) in plan.marked_from.iter().enumerate() {
        old_to_new[old] = new;
    }
    let on_pair: std::collections::HashSet<usize> = s.points[plan.pair].iter().copied().collect();
    let is_pair_end = |e: usize| e >= m_old && on_pair.contains(&((e - m_old) / 2));
    let other_side = |e: usize| {
        let r = e - m_old;
        m_old + (r ^ 1)
    };
    let map = |e: usize| if e < m_old { old_to_new[e] } else { e - m_old + m_new };
    let total_points = (s.partner.len() - m_old) / 2;
    let mut partner = vec![usize::MAX; m_new + 2 * total_points];
    let mut visited: std::collections::HashSet<usize> = std::collections::HashSet::new();
    for e in 0..s.partner.len() {
        if s.partner[e] == usize::MAX || is_pair_end(e) {
            continue;
        }
        let mut f = s.partner[e];
        while is_pair_end(f) {
            visited.insert((f - m_old) / 2);
            f = s.partner[other_side(f)];
        }
        partner[map(e)] = map(f);
    }
    let mut closed = s.closed;
    for &q in &s.points[plan.pair] {
        if visited.contains(&q) {
            continue;
        }
        closed += 1;
        let start = s.cross_end(q, Side::A);
        let mut f = start;
        loop {
            visited.insert((f - m_old) / 2);
            f = s.partner[other_side(f)];
            if f == start || other_side(f) == start {
                break;
            }
        }
    }
    let mut points = s.points.clone();
    points.truncate(plan.pair);
    Strands { surface: &plan.surface, points, partner, closed }
}

/// A relabeling of pieces (with rotation of their words) and of pairs (with
/// a possible swap of sides) carrying one presentation onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceIso {
    /// Source piece `p` goes to `pieces[p].0`, token `i` to `(i + pieces[p].1) % len`.
    pub pieces: Vec<(usize, usize)>,
    /// Source pair `q` goes to `pairs[q].0`, sides swapped if `pairs[q].1`.
    pub pairs: Vec<(usize, bool)>,
}

pub fn find_isomorphism(from: &MarkedSurface, to: &MarkedSurface) -> Option<SurfaceIso> {
    if from.pieces().len() != to.pieces().len() || from.pair_count() != to.pair_count() {
        return None;
    }
    let mut pieces = vec![(usize::MAX, 0); from.pieces().len()];
    let mut pairs = vec![None; from.pair_count()];
    let mut used = vec![false; to.pieces().len()];
    if search_iso(from, to, 0, &mut pieces, &mut pairs, &mut used) {
        Some(SurfaceIso { pieces, pairs: pairs.into_iter().map(Option::unwrap).collect() })
    } else {
        None
    }
}

fn search_iso(
    from: &MarkedSurface,
    to: &MarkedSurface,
    p: usize,
    pieces: &mut Vec<(usize, usize)>,
    pairs: &mut Vec<Option<(usize, bool)>>,
    used: &mut Vec<bool>,
) -> bool {
    if p == from.pieces().len() {
        return true;
    }
    let word = from.piece(p);
    for t in 0..to.pieces().len() {
        if used[t] || to.piece(t).len() != word.len() {
            continue;
        }
        for rot in 0..word.len() {
            let saved = pairs.clone();
            let mut ok = true;
            for (i, tok) in word.iter().enumerate() {
                let other = to.piece(t)[(i + rot) % word.len()];
                ok = match (*tok, other) {
                    (Token::Marked(a), Token::Marked(b)) => a == b,
                    (Token::Segment { pair, side }, Token::Segment { pair: q, side: sq }) => {
                        let want = (q, side != sq);
                        match pairs[pair] {
                            Some(have) => have == want,
                            None => {
                                if pairs.iter().flatten().any(|&(x, _)| x == q) {
                                    false
                                } else {
                                    pairs[pair] = Some(want);
                                    true
                                }
                            }
                        }
                    }
                    _ => false,
                };
                if !ok {
                    break;
                }
            }
            if ok {
                used[t] = true;
                pieces[p] = (t, rot);
                if search_iso(from, to, p + 1, pieces, pairs, used) {
                    return true;
                }
                used[t] = false;
            }
            *pairs = saved;
        }
    }
    false
}

/// Carries a dividing set across a presentation isomorphism.
pub fn transport_iso(iso: &SurfaceIso, from: &MarkedSurface, to: &MarkedSurface, k: &DividingSet) -> DividingSet {
    let src = Strands::from_dividing(from, k);
    let m_from = from.marked_count();
    let m_to = to.marked_count();
    let mut marked = vec![0; m_from];
    for (id, slot) in marked.iter_mut().enumerate() {
        let (p, i) = from.marked_position(id);
        let (tp, rot) = iso.pieces[p];
        *slot = to.marked_id(tp, (i + rot) % from.piece(p).len()).unwrap();
    }
    let mut points = vec![Vec::new(); to.pair_count()];
    let mut flip_of_point = HashMap::new();
    for (q, list) in src.points.iter().enumerate() {
        let (tq, flip) = iso.pairs[q];
        points[tq] = if flip { list.iter().rev().copied().collect() } else { list.clone() };
        for &pt in list {
            flip_of_point.insert(pt, flip);
        }
    }
    let map = |e: usize| -> usize {
        if e < m_from {
            marked[e]
        } else {
            let r = e - m_from;
            let flip = flip_of_point[&(r / 2)];
            m_to + if flip { r ^ 1 } else { r }
        }
    };
    let mut partner = vec![usize::MAX; m_to + (src.partner.len() - m_from)];
    for (e, &f) in src.partner.iter().enumerate() {
        if f != usize::MAX {
            partner[map(e)] = map(f);
        }
    }
    Strands { surface: to, points, partner, closed: src.closed }.canonical()
}

/// Matrix of a gluing map: `columns[i]` is the image of the `i`-th source
/// basis element in target coordinates.
#[derive(Clone, Debug)]
pub struct GlueMap {
    pub columns: Vec<BitVec>,
    pub target_rank: usize,
    /// Image class of every source generator.
    pub images: Vec<ClassVector>,
}

impl GlueMap {
    pub fn apply(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.target_rank);
        for i in v.ones() {
            out.xor_assign(&self.columns[i]);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.target_rank);
        for c in &self.columns {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Rows of the matrix (one per target basis element) as bit strings.
    pub fn rows(&self) -> Vec<BitVec> {
        (0..self.target_rank)
            .map(|r| BitVec::from_indices(self.columns.len(), (0..self.columns.len()).filter(|&c| self.columns[c].get(r))))
            .collect()
    }
}

/// The map `V(source) → V(target)` induced by a gluing, checked to be well
/// defined on the quotient.
pub fn glue_map(d: &GluingDatum, m_src: &TqftModule, m_tgt: &TqftModule) -> Result<GlueMap, GlueError> {
    if m_src.surface() != &d.source {
        return Err(GlueError::SourceMismatch);
    }
    let gluing = glue(d)?;
    let iso = find_isomorphism(gluing.surface(), m_tgt.surface()).ok_or(GlueError::NoIsomorphism)?;
    let images: Vec<ClassVector> = m_src
        .generators()
        .iter()
        .map(|k| {
            let glued = gluing.transport(k);
            let moved = transport_iso(&iso, gluing.surface(), m_tgt.surface(), &glued);
            m_tgt.class_of(&moved)
        })
        .collect::<Result<_, _>>()?;
    for row in m_src.relations() {
        let mut sum = BitVec::zeros(m_tgt.rank());
        for &g in row {
            sum.xor_assign(&images[g].coords);
        }
        if !sum.is_zero() {
            return Err(GlueError::RelationNotZero(row.clone()));
        }
    }
    let columns: Vec<BitVec> = m_src.basis().iter().map(|&b| images[b].coords.clone()).collect();
    let map = GlueMap { columns, target_rank: m_tgt.rank(), images };
    for g in 0..m_src.generators().len() {
        if map.apply(m_src.generator_coords(g)) != map.images[g].coords {
            return Err(GlueError::RelationNotZero(vec![g]));
        }
    }
    Ok(map)
}

/// Attaching the disk with two marked points to the disk with `points`
/// marked points along its points `j − 1, j` (0-based ordinals).
pub fn arc_attachment(points: usize, j: usize) -> Result<GluingDatum, GlueError> {
    let big = MarkedSurface::disk(points)?;
    let first = if (j - 1).is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
    let small = MarkedSurface::disk_with_labels(2, first)?;
    Ok(GluingDatum {
        source: big.disjoint_union(&small),
        gamma: BoundaryArc { piece: 0, first: j - 1, count: 2 },
        gamma_prime: BoundaryArc { piece: 1, first: 0, count: 2 },
    })
}

/// Cuts `s` open along identification pair `pair`. Each side of the pair
/// becomes one new marked point, so the cut meets every relevant dividing set
/// once. Returns the cut surface and the datum gluing it back.
pub fn cut_along(s: &MarkedSurface, pair: usize) -> Result<GluingDatum, GlueError> {
    if pair >= s.pair_count() {
        return Err(GlueError::BadArc(format!("pair {pair} does not exist")));
    }
    let (pa, ia) = s.segment_position(pair, Side::A);
    let (pb, ib) = s.segment_position(pair, Side::B);
    let before = |p: usize, i: usize| s.stretch_label(p, (i + s.piece(p).len() - 1) % s.piece(p).len());
    let la = s.stretch_label(pa, ia);
    let lb = s.stretch_label(pb, ib);
    if before(pa, ia) == la || before(pb, ib) == lb {
        return Err(GlueError::EvenCut);
    }
    let renumber = |q: usize| if q > pair { q - 1 } else { q };
    let pieces: Vec<Vec<Token>> = s
        .pieces()
        .iter()
        .enumerate()
        .map(|(p, w)| {
            w.iter()
                .enumerate()
                .map(|(i, t)| match *t {
                    Token::Segment { pair: q, .. } if q == pair => Token::Marked(if (p, i) == (pa, ia) { la } else { lb }),
                    Token::Segment { pair: q, side } => Token::Segment { pair: renumber(q), side },
                    m => m,
                })
                .collect()
        })
        .collect();
    let mut names = s.pair_names().to_vec();
    names.remove(pair);
    let cut = MarkedSurface::new(pieces, names)?;
    let ordinal = |p: usize, i: usize| cut.marked_positions_in_piece(p).iter().position(|&x| x == i).unwrap();
    Ok(GluingDatum {
        gamma: BoundaryArc { piece: pa, first: ordinal(pa, ia), count: 1 },
        gamma_prime: BoundaryArc { piece: pb, first: ordinal(pb, ib), count: 1 },
        source: cut,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CutReport {
    pub cut_rank: usize,
    pub glued_rank: usize,
    pub original_rank: usize,
    pub map_rank: usize,
}

impl CutReport {
    pub fn is_isomorphism(&self) -> bool {
        self.cut_rank == self.glued_rank && self.glued_rank == self.original_rank && self.map_rank == self.cut_rank
    }
}

/// Cuts `s` along `pair`, glues it back, and compares ranks and the rank of
/// the gluing map.
pub fn cut_check(s: &MarkedSurface, pair: usize, options: ModuleOptions) -> Result<CutReport, GlueError> {
    let datum = cut_along(s, pair)?;
    let glued = glue(&datum)?;
    let m_cut = TqftModule::build(&datum.source, options)?;
    let m_glued = TqftModule::build(glued.surface(), options)?;
    let m_orig = TqftModule::build(s, options)?;
    let map = glue_map(&datum, &m_cut, &m_glued)?;
    Ok(CutReport { cut_rank: m_cut.rank(), glued_rank: m_glued.rank(), original_rank: m_orig.rank(), map_rank: map.rank() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dividing::euler_grading;

    #[test]
    fn attaching_arc_gives_disk_with_four_points() {
        let d = arc_attachment(6, 1).unwrap();
        let g = glue(&d).unwrap();
        assert_eq!(g.surface().summary().n, 2);
        assert!(find_isomorphism(g.surface(), &MarkedSurface::disk(4).unwrap()).is_some());
        let d = arc_attachment(6, 2).unwrap();
        let g = glue(&d).unwrap();
        assert!(find_isomorphism(g.surface(), &MarkedSurface::disk(4).unwrap()).is_some());
    }

    #[test]
    fn mismatched_labels_rejected() {
        let big = MarkedSurface::disk(6).unwrap();
        let small = MarkedSurface::disk(2).unwrap();
        let d = GluingDatum {
            source: big.disjoint_union(&small),
            gamma: BoundaryArc { piece: 0, first: 1, count: 2 },
            gamma_prime: BoundaryArc { piece: 1, first: 0, count: 2 },
        };
        assert!(matches!(glue(&d), Err(GlueError::Labels)));
    }

    #[test]
    fn self_gluing_hexagon_gives_annulus() {
        let s = MarkedSurface::disk(6).unwrap();
        let d = GluingDatum { source: s, gamma: BoundaryArc { piece: 0, first: 0, count: 1 }, gamma_prime: BoundaryArc { piece: 0, first: 3, count: 1 } };
        let g = glue(&d).unwrap();
        let sum = g.surface().summary();
        assert_eq!(sum.euler_characteristic, 0);
        assert_eq!(sum.circles, vec![2, 2]);
    }

    #[test]
    fn gluing_preserves_grading_of_nonisolating_pieces() {
        // K+ on the hexagon glued with the small disk's arc stays ∂-parallel.
        let d = arc_attachment(6, 1).unwrap();
        let g = glue(&d).unwrap();
        let kp = DividingSet::from_parts_unchecked(vec![], vec![vec![1, 0, 3, 2, 5, 4], vec![1, 0]], 0);
        let out = g.transport(&kp);
        assert_eq!(out.closed(), 1);
        let k1 = DividingSet::from_parts_unchecked(vec![], vec![vec![3, 2, 1, 0, 5, 4], vec![1, 0]], 0);
        let out = g.transport(&k1);
        assert_eq!(out.closed(), 0);
        assert_eq!(euler_grading(g.surface(), &out).unwrap(), 1);
    }

    #[test]
    fn torus_cuts_to_annulus_then_hexagon() {
        let t = MarkedSurface::punctured_torus(2).unwrap();
        let once = cut_along(&t, 0).unwrap();
        assert_eq!(once.source.summary().euler_characteristic, 0);
        let twice = cut_along(&once.source, 0).unwrap();
        assert!(find_isomorphism(&twice.source, &MarkedSurface::disk(6).unwrap()).is_some());
    }
}
