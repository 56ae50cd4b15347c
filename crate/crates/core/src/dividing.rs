//! Dividing sets in slot form, their working "strand" form used for surgery,
//! canonicalization by bigon removal, and region labeling.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{MarkedSurface, Side, Sign, SurfaceError, SurfaceFile, Token};

/// An endpoint slot on the boundary of a piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotRef {
    Marked(usize),
    /// `index`-th crossing point on one side of an identification pair,
    /// counted clockwise along that side's piece.
    Cross { pair: usize, side: Side, index: usize },
}

/// Boundary material between two consecutive slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapItem {
    Stretch(Sign),
    /// Sub-interval `k` of a segment side holding `x` crossings, `0 ≤ k ≤ x`.
    /// Sub-interval `k` on side A is glued to sub-interval `x − k` on side B.
    Ident { pair: usize, side: Side, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceLayout {
    pub slots: Vec<SlotRef>,
    /// `gaps[i]` follows `slots[i]`; a piece without slots has one gap.
    pub gaps: Vec<Vec<GapItem>>,
}

pub fn piece_layout(surface: &MarkedSurface, piece: usize, crossings: &[usize]) -> PieceLayout {
    let word = surface.piece(piece);
    let mut items: Vec<Option<GapItem>> = Vec::new();
    let mut slots = Vec::new();
    for (pos, tok) in word.iter().enumerate() {
        match *tok {
            Token::Marked(_) => {
                items.push(None);
                slots.push(SlotRef::Marked(surface.marked_id(piece, pos).unwrap()));
            }
            Token::Segment { pair, side } => {
                let x = crossings[pair];
                for k in 0..x {
                    items.push(Some(GapItem::Ident { pair, side, k }));
                    items.push(None);
                    slots.push(SlotRef::Cross { pair, side, index: k });
                }
                items.push(Some(GapItem::Ident { pair, side, k: x }));
            }
        }
        items.push(Some(GapItem::Stretch(surface.stretch_label(piece, pos))));
    }
    if slots.is_empty() {
        return PieceLayout { slots, gaps: vec![items.into_iter().flatten().collect()] };
    }
    let first = items.iter().position(Option::is_none).unwrap();
    let mut gaps = Vec::with_capacity(slots.len());
    let mut cur = Vec::new();
    for off in 1..=items.len() {
        match items[(first + off) % items.len()] {
            None => gaps.push(std::mem::take(&mut cur)),
            Some(g) => cur.push(g),
        }
    }
    // The first slot in `items` is slot 0 by construction.
    PieceLayout { slots, gaps }
}

/// A dividing set in canonical slot form: crossing counts per identification
/// pair, then for each piece the partner of every slot, then the number of
/// contractible closed components. The derived order is the canonical one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DividingSet {
    crossings: Vec<usize>,
    chords: Vec<Vec<usize>>,
    closed: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DividingError {
    #[error("expected {expected} crossing counts, got {got}")]
    CrossingCount { expected: usize, got: usize },
    #[error("piece {piece} has {expected} slots but {got} were given")]
    SlotCount { piece: usize, expected: usize, got: usize },
    #[error("slot {slot} of piece {piece} is used {uses} times")]
    SlotUse { piece: usize, slot: usize, uses: usize },
    #[error("chords cross in piece {piece}")]
    Crossing { piece: usize },
    #[error("regions cannot be 2-colored compatibly with the boundary labels")]
    Coloring,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl DividingSet {
    pub fn new(surface: &MarkedSurface, crossings: Vec<usize>, chords: Vec<Vec<usize>>, closed: usize) -> Result<Self, DividingError> {
        let k = DividingSet { crossings, chords, closed };
        k.validate(surface)?;
        Ok(k)
    }

    pub(crate) fn from_parts_unchecked(crossings: Vec<usize>, chords: Vec<Vec<usize>>, closed: usize) -> Self {
        DividingSet { crossings, chords, closed }
    }

    /// Builds a set on a single piece from chord pairs.
    pub fn from_pairs(surface: &MarkedSurface, crossings: Vec<usize>, pairs: &[(usize, usize)], closed: usize) -> Result<Self, DividingError> {
        if crossings.len() != surface.pair_count() {
            return Err(DividingError::CrossingCount { expected: surface.pair_count(), got: crossings.len() });
        }
        let slots = piece_layout(surface, 0, &crossings).slots.len();
        let mut partner = vec![usize::MAX; slots];
        let mut uses = vec![0usize; slots];
        for &(a, b) in pairs {
            for s in [a, b] {
                if s >= slots {
                    return Err(DividingError::SlotCount { piece: 0, expected: slots, got: s + 1 });
                }
                uses[s] += 1;
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(slot) = (0..slots).find(|&s| uses[s] != 1) {
            return Err(DividingError::SlotUse { piece: 0, slot, uses: uses[slot] });
        }
        DividingSet::new(surface, crossings, vec![partner], closed)
    }

    /// The set on `MarkedSurface::disjoint_union` of the two surfaces.
    pub fn disjoint_union(&self, other: &DividingSet) -> DividingSet {
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&other.crossings);
        let mut chords = self.chords.clone();
        chords.extend(other.chords.iter().cloned());
        DividingSet { crossings, chords, closed: self.closed + other.closed }
    }

    pub fn crossings(&self) -> &[usize] {
        &self.crossings
    }

    pub fn max_crossings(&self) -> usize {
        self.crossings.iter().copied().max().unwrap_or(0)
    }

    pub fn piece_count(&self) -> usize {
        self.chords.len()
    }

    pub fn partners(&self, piece: usize) -> &[usize] {
        &self.chords[piece]
    }

    pub fn closed(&self) -> usize {
        self.closed
    }

    /// The same chords with `closed` contractible circles.
    pub fn with_closed(&self, closed: usize) -> DividingSet {
        DividingSet { closed, ..self.clone() }
    }

    /// Chords of a piece as `(i, j)` with `i < j`, sorted.
    pub fn chord_pairs(&self, piece: usize) -> Vec<(usize, usize)> {
        self.chords[piece].iter().enumerate().filter(|&(i, &j)| i < j).map(|(i, &j)| (i, j)).collect()
    }

    pub fn validate(&self, surface: &MarkedSurface) -> Result<(), DividingError> {
        if self.crossings.len() != surface.pair_count() {
            return Err(DividingError::CrossingCount { expected: surface.pair_count(), got: self.crossings.len() });
        }
        if self.chords.len() != surface.pieces().len() {
            return Err(DividingError::SlotCount { piece: self.chords.len(), expected: surface.pieces().len(), got: self.chords.len() });
        }
        for (piece, partner) in self.chords.iter().enumerate() {
            let slots = piece_layout(surface, piece, &self.crossings).slots.len();
            if partner.len() != slots {
                return Err(DividingError::SlotCount { piece, expected: slots, got: partner.len() });
            }
            for (i, &j) in partner.iter().enumerate() {
                if j >= slots || j == i || partner[j] != i {
                    return Err(DividingError::SlotUse { piece, slot: i, uses: 0 });
                }
            }
            if !is_non_crossing(partner) {
                return Err(DividingError::Crossing { piece });
            }
        }
        label_regions(surface, self).map(|_| ()).map_err(DividingError::from)
    }

    /// Rewrites this set in canonical (bigon-free) form.
    pub fn canonicalize(&self, surface: &MarkedSurface) -> DividingSet {
        let mut s = Strands::from_dividing(surface, self);
        s.remove_bigons();
        s.to_dividing()
    }

    pub fn is_efficient(&self, surface: &MarkedSurface) -> bool {
        Strands::from_dividing(surface, self).find_bigon().is_none()
    }

    pub fn to_file(&self, surface: &MarkedSurface) -> DividingFile {
        let mut chords = Vec::new();
        let mut offset = 0;
        for (p, partner) in self.chords.iter().enumerate() {
            chords.extend(self.chord_pairs(p).into_iter().map(|(i, j)| [i + offset, j + offset]));
            offset += partner.len();
        }
        DividingFile { surface: surface.to_file(), crossings: self.crossings.clone(), chords, closed: self.closed }
    }

    pub fn from_file(file: &DividingFile) -> Result<(MarkedSurface, DividingSet), DividingError> {
        let surface = MarkedSurface::from_file(&file.surface)?;
        let crossings = if file.crossings.is_empty() && surface.pair_count() > 0 {
            vec![0; surface.pair_count()]
        } else {
            file.crossings.clone()
        };
        if crossings.len() != surface.pair_count() {
            return Err(DividingError::CrossingCount { expected: surface.pair_count(), got: crossings.len() });
        }
        let sizes: Vec<usize> = (0..surface.pieces().len()).map(|p| piece_layout(&surface, p, &crossings).slots.len()).collect();
        let total: usize = sizes.iter().sum();
        let mut global = vec![usize::MAX; total];
        let mut uses = vec![0usize; total];
        for &[a, b] in &file.chords {
            for s in [a, b] {
                if s >= total {
                    return Err(DividingError::SlotCount { piece: 0, expected: total, got: s + 1 });
                }
                uses[s] += 1;
            }
            global[a] = b;
            global[b] = a;
        }
        if let Some(slot) = (0..total).find(|&s| uses[s] != 1) {
            return Err(DividingError::SlotUse { piece: 0, slot, uses: uses[slot] });
        }
        let mut chords = Vec::new();
        let mut offset = 0;
        for (piece, &n) in sizes.iter().enumerate() {
            let mut local = Vec::with_capacity(n);
            for (slot, &t) in global[offset..offset + n].iter().enumerate() {
                if t < offset || t >= offset + n {
                    return Err(DividingError::SlotUse { piece, slot, uses: 1 });
                }
                local.push(t - offset);
            }
            chords.push(local);
            offset += n;
        }
        let k = DividingSet::new(&surface, crossings, chords, file.closed)?;
        Ok((surface, k))
    }

    /// Chord list written from the basepoint, e.g. `(0 3)(1 2)(4 5)`.
    pub fn pairing_string(&self) -> String {
        let mut out = String::new();
        for (p, _) in self.chords.iter().enumerate() {
            if p > 0 {
                out.push_str(" | ");
            }
            for (i, j) in self.chord_pairs(p) {
                out.push_str(&format!("({i} {j})"));
            }
        }
        out
    }
}

impl fmt::Display for DividingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.crossings.is_empty() {
            write!(f, "x{:?} ", self.crossings)?;
        }
        f.write_str(&self.pairing_string())?;
        if self.closed > 0 {
            write!(f, " +{}o", self.closed)?;
        }
        Ok(())
    }
}

/// Interchange form: chord slots are numbered clockwise from the basepoint of
/// piece 0, continuing through the later pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DividingFile {
    pub surface: SurfaceFile,
    #[serde(default)]
    pub crossings: Vec<usize>,
    pub chords: Vec<[usize; 2]>,
    #[serde(default)]
    pub closed: usize,
}

pub(crate) fn is_non_crossing(partner: &[usize]) -> bool {
    let mut stack = Vec::new();
    for (i, &j) in partner.iter().enumerate() {
        if i < j {
            stack.push(i);
        } else if stack.pop() != Some(j) {
            return false;
        }
    }
    stack.is_empty()
}

/// Working form of a dividing set with stable ids on crossing points.
///
/// Endpoints are encoded as integers: marked point `m` is `m`, and side `s`
/// of crossing point `q` is `M + 2q + s` where `M` is the marked count.
#[derive(Clone, Debug)]
pub(crate) struct Strands<'s> {
    pub surface: &'s MarkedSurface,
    /// Per pair, point ids in clockwise order along side A.
    pub points: Vec<Vec<usize>>,
    pub partner: Vec<usize>,
    pub closed: usize,
}

impl<'s> Strands<'s> {
    pub fn from_dividing(surface: &'s MarkedSurface, k: &DividingSet) -> Self {
        let m = surface.marked_count();
        let mut points = Vec::with_capacity(k.crossings.len());
        let mut next = 0;
        for &x in &k.crossings {
            points.push((next..next + x).collect());
            next += x;
        }
        let mut s = Strands { surface, points, partner: vec![usize::MAX; m + 2 * next], closed: k.closed };
        for (piece, partner) in k.chords.iter().enumerate() {
            let ends = s.piece_slots(piece);
            for (i, &j) in partner.iter().enumerate() {
                s.partner[ends[i]] = ends[j];
            }
        }
        s
    }

    pub fn marked(&self) -> usize {
        self.surface.marked_count()
    }

    pub fn cross_end(&self, point: usize, side: Side) -> usize {
        self.marked() + 2 * point + side.bit() as usize
    }

    pub fn new_point(&mut self) -> usize {
        let q = (self.partner.len() - self.marked()) / 2;
        self.partner.push(usize::MAX);
        self.partner.push(usize::MAX);
        q
    }

    pub fn link(&mut self, a: usize, b: usize) {
        self.partner[a] = b;
        self.partner[b] = a;
    }

    pub fn counts(&self) -> Vec<usize> {
        self.points.iter().map(Vec::len).collect()
    }

    pub fn slot_end(&self, slot: SlotRef) -> usize {
        match slot {
            SlotRef::Marked(id) => id,
            SlotRef::Cross { pair, side, index } => {
                let list = &self.points[pair];
                let q = match side {
                    Side::A => list[index],
                    Side::B => list[list.len() - 1 - index],
                };
                self.cross_end(q, side)
            }
        }
    }

    pub fn piece_slots(&self, piece: usize) -> Vec<usize> {
        let layout = piece_layout(self.surface, piece, &self.counts());
        layout.slots.into_iter().map(|s| self.slot_end(s)).collect()
    }

    pub fn layout(&self, piece: usize) -> (Vec<usize>, PieceLayout) {
        let layout = piece_layout(self.surface, piece, &self.counts());
        let ends = layout.slots.iter().map(|&s| self.slot_end(s)).collect();
        (ends, layout)
    }

    /// A chord joining two consecutive crossing points on the same side:
    /// `(pair, list index of the first point, side)`.
    pub fn find_bigon(&self) -> Option<(usize, usize, Side)> {
        for (pair, list) in self.points.iter().enumerate() {
            for k in 0..list.len().saturating_sub(1) {
                for side in [Side::A, Side::B] {
                    if self.partner[self.cross_end(list[k], side)] == self.cross_end(list[k + 1], side) {
                        return Some((pair, k, side));
                    }
                }
            }
        }
        None
    }

    pub fn remove_bigon(&mut self, pair: usize, k: usize, side: Side) {
        let (p, q) = (self.points[pair][k], self.points[pair][k + 1]);
        let other = side.other();
        let (u, v) = (self.cross_end(p, other), self.cross_end(q, other));
        let (pu, pv) = (self.partner[u], self.partner[v]);
        if pu == v {
            self.closed += 1;
        } else {
            self.link(pu, pv);
        }
        for e in [self.cross_end(p, side), self.cross_end(q, side), u, v] {
            self.partner[e] = usize::MAX;
        }
        self.points[pair].drain(k..k + 2);
    }

    pub fn remove_bigons(&mut self) {
        while let Some((pair, k, side)) = self.find_bigon() {
            self.remove_bigon(pair, k, side);
        }
    }

    /// Slot form with crossing points renumbered; does not remove bigons.
    pub fn to_dividing(&self) -> DividingSet {
        let crossings = self.counts();
        let mut chords = Vec::with_capacity(self.surface.pieces().len());
        for piece in 0..self.surface.pieces().len() {
            let ends = self.piece_slots(piece);
            let index: HashMap<usize, usize> = ends.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            chords.push(ends.iter().map(|e| index[&self.partner[*e]]).collect());
        }
        DividingSet { crossings, chords, closed: self.closed }
    }

    pub fn canonical(&self) -> DividingSet {
        let mut s = self.clone();
        s.remove_bigons();
        s.to_dividing()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("regions cannot be 2-colored compatibly with the boundary labels")]
pub struct ColoringError;

impl From<ColoringError> for DividingError {
    fn from(_: ColoringError) -> Self {
        DividingError::Coloring
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub sign: i64,
    pub euler_characteristic: i64,
    pub touches_boundary: bool,
    /// Number of disk faces the region is built from.
    pub faces: usize,
}

/// Connected components of `Σ − K` with their signs and Euler
/// characteristics. Contractible closed components contribute a disk region
/// each, side by side inside the region containing the first gap of piece 0.
pub fn label_regions(surface: &MarkedSurface, k: &DividingSet) -> Result<Vec<Region>, ColoringError> {
    let pieces = surface.pieces().len();
    let layouts: Vec<PieceLayout> = (0..pieces).map(|p| piece_layout(surface, p, &k.crossings)).collect();

    // Faces: walking gap g -> slot g+1 -> partner q -> gap q.
    let mut face_of: Vec<Vec<usize>> = Vec::with_capacity(pieces);
    let mut faces = 0;
    for (p, layout) in layouts.iter().enumerate() {
        let n = layout.slots.len();
        if n == 0 {
            face_of.push(vec![faces]);
            faces += 1;
            continue;
        }
        let partner = &k.chords[p];
        let mut row = vec![usize::MAX; n];
        for g in 0..n {
            if row[g] != usize::MAX {
                continue;
            }
            let mut cur = g;
            while row[cur] == usize::MAX {
                row[cur] = faces;
                cur = partner[(cur + 1) % n];
            }
            faces += 1;
        }
        face_of.push(row);
    }

    let mut uf = UnionFind::new(faces);
    let mut ident_face: HashMap<(usize, Side, usize), usize> = HashMap::new();
    let mut glues = vec![0i64; faces];
    let mut stretch_sign: Vec<Option<Sign>> = vec![None; faces];
    let mut conflict = false;
    for (p, layout) in layouts.iter().enumerate() {
        for (g, gap) in layout.gaps.iter().enumerate() {
            let f = face_of[p][g];
            for item in gap {
                match *item {
                    GapItem::Stretch(s) => match stretch_sign[f] {
                        Some(t) if t != s => conflict = true,
                        _ => stretch_sign[f] = Some(s),
                    },
                    GapItem::Ident { pair, side, k: idx } => {
                        ident_face.insert((pair, side, idx), f);
                        if side == Side::A {
                            glues[f] += 1;
                        }
                    }
                }
            }
        }
    }
    if conflict {
        return Err(ColoringError);
    }
    for (&(pair, side, idx), &f) in &ident_face {
        if side == Side::A {
            let x = k.crossings[pair];
            let g = ident_face[&(pair, Side::B, x - idx)];
            uf.union(f, g);
        }
    }

    let mut region_index = vec![usize::MAX; faces];
    let mut regions: Vec<Region> = Vec::new();
    let mut face_region = vec![0; faces];
    for f in 0..faces {
        let r = uf.find(f);
        if region_index[r] == usize::MAX {
            region_index[r] = regions.len();
            regions.push(Region { sign: 0, euler_characteristic: 0, touches_boundary: false, faces: 0 });
        }
        let idx = region_index[r];
        face_region[f] = idx;
        let reg = &mut regions[idx];
        reg.faces += 1;
        reg.euler_characteristic += 1 - glues[f];
        if let Some(s) = stretch_sign[f] {
            if reg.touches_boundary && reg.sign != s.value() {
                return Err(ColoringError);
            }
            reg.touches_boundary = true;
            reg.sign = s.value();
        }
    }

    // Each slot separates the faces of the gaps on either side of it.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); regions.len()];
    for (p, layout) in layouts.iter().enumerate() {
        let n = layout.slots.len();
        for i in 0..n {
            let a = face_region[face_of[p][(i + n - 1) % n]];
            let b = face_region[face_of[p][i]];
            if a == b {
                return Err(ColoringError);
            }
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut queue: Vec<usize> = (0..regions.len()).filter(|&r| regions[r].sign != 0).collect();
    while let Some(r) = queue.pop() {
        let s = regions[r].sign;
        for &o in &adj[r] {
            if regions[o].sign == 0 {
                regions[o].sign = -s;
                queue.push(o);
            } else if regions[o].sign == s {
                return Err(ColoringError);
            }
        }
    }
    if regions.iter().any(|r| r.sign == 0) {
        return Err(ColoringError);
    }

    if k.closed > 0 {
        let host = face_region[face_of[0][0]];
        let sign = regions[host].sign;
        regions[host].euler_characteristic -= k.closed as i64;
        for _ in 0..k.closed {
            regions.push(Region { sign: -sign, euler_characteristic: 1, touches_boundary: false, faces: 1 });
        }
    }
    Ok(regions)
}

/// `χ(R+) − χ(R−)`.
pub fn euler_grading(surface: &MarkedSurface, k: &DividingSet) -> Result<i64, ColoringError> {
    Ok(label_regions(surface, k)?.iter().map(|r| r.sign * r.euler_characteristic).sum())
}

/// True iff some region of `Σ − K` misses `∂Σ`.
pub fn is_isolating(surface: &MarkedSurface, k: &DividingSet) -> Result<bool, ColoringError> {
    Ok(k.closed > 0 || label_regions(surface, k)?.iter().any(|r| !r.touches_boundary))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let n = self.parent[x];
            self.parent[x] = r;
            x = n;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
