//! Marked surfaces presented as disk pieces whose boundary words mix marked
//! points of `F` with identification segments glued in pairs.
//!
//! Between any two consecutive tokens of a boundary word there is a stretch
//! of the real boundary `∂Σ`, so every identification segment is a properly
//! embedded arc of the glued surface. Each marked point carries the sign of
//! the boundary stretch that follows it clockwise.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" => Some(Sign::Plus),
            "-" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which member of an identification pair a segment is. Side `A` is the
/// first name listed in the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    pub(crate) fn bit(self) -> u32 {
        match self {
            Side::A => 0,
            Side::B => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Marked(Sign),
    Segment { pair: usize, side: Side },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("surface has no pieces")]
    Empty,
    #[error("piece {0} has an empty boundary word")]
    EmptyPiece(usize),
    #[error("identification segment `{0}` is not paired")]
    UnpairedSegment(String),
    #[error("identification segment `{0}` occurs more than once")]
    DuplicateSegment(String),
    #[error("identification pair names unknown segment `{0}`")]
    UnknownSegment(String),
    #[error("segment `{0}` cannot be identified with itself")]
    SelfPaired(String),
    #[error("piece {piece} lists {got} labels for {expected} marked points")]
    LabelCount { piece: usize, expected: usize, got: usize },
    #[error("bad label `{0}` (expected `+` or `-`)")]
    BadLabel(String),
    #[error("boundary circle {circle} carries no marked points")]
    NoMarkedPoints { circle: usize },
    #[error("odd marked-point count {count} on boundary circle {circle}")]
    OddMarkedPoints { circle: usize, count: usize },
    #[error("labels do not alternate on boundary circle {circle}")]
    NonAlternatingLabels { circle: usize },
}

/// Facts computed while validating a surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub euler_characteristic: i64,
    pub pieces: usize,
    pub identification_pairs: usize,
    /// Marked-point count of each boundary circle.
    pub circles: Vec<usize>,
    /// Half the number of marked points.
    pub n: usize,
    pub components: usize,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub pieces: Vec<usize>,
    pub euler_characteristic: i64,
    pub marked: usize,
}

impl Component {
    /// `n − χ` for this component.
    pub fn tensor_factors(&self) -> i64 {
        self.marked as i64 / 2 - self.euler_characteristic
    }
}

#[derive(Clone, Debug)]
pub struct MarkedSurface {
    pieces: Vec<Vec<Token>>,
    pair_names: Vec<[String; 2]>,
    marked_at: Vec<Vec<Option<usize>>>,
    marked_pos: Vec<(usize, usize)>,
    segment_at: Vec<[(usize, usize); 2]>,
    stretch_label: Vec<Vec<Sign>>,
    circles: Vec<Vec<usize>>,
    components: Vec<Component>,
}

impl PartialEq for MarkedSurface {
    fn eq(&self, other: &Self) -> bool {
        self.pieces == other.pieces
    }
}

impl Eq for MarkedSurface {}

impl MarkedSurface {
    /// Builds and validates a surface. Pair `p` consists of the tokens
    /// `Segment { pair: p, side }` for both sides; names are only cosmetic.
    pub fn new(pieces: Vec<Vec<Token>>, pair_names: Vec<[String; 2]>) -> Result<Self, SurfaceError> {
        if pieces.is_empty() {
            return Err(SurfaceError::Empty);
        }
        let name = |pair: usize, side: Side| -> String {
            pair_names
                .get(pair)
                .map(|n| n[side.bit() as usize].clone())
                .unwrap_or_else(|| format!("#{pair}{}", if side == Side::A { "" } else { "'" }))
        };
        let mut segment_at: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; pair_names.len()];
        let mut marked_at = Vec::with_capacity(pieces.len());
        let mut marked_pos = Vec::new();
        for (p, word) in pieces.iter().enumerate() {
            if word.is_empty() {
                return Err(SurfaceError::EmptyPiece(p));
            }
            let mut row = Vec::with_capacity(word.len());
            for (i, tok) in word.iter().enumerate() {
                match *tok {
                    Token::Marked(_) => {
                        row.push(Some(marked_pos.len()));
                        marked_pos.push((p, i));
                    }
                    Token::Segment { pair, side } => {
                        row.push(None);
                        if pair >= segment_at.len() {
                            return Err(SurfaceError::UnpairedSegment(name(pair, side)));
                        }
                        let slot = &mut segment_at[pair][side.bit() as usize];
                        if slot.is_some() {
                            return Err(SurfaceError::DuplicateSegment(name(pair, side)));
                        }
                        *slot = Some((p, i));
                    }
                }
            }
            marked_at.push(row);
        }
        let mut seg = Vec::with_capacity(segment_at.len());
        for (pair, s) in segment_at.iter().enumerate() {
            match s {
                [Some(a), Some(b)] => seg.push([*a, *b]),
                [None, _] => return Err(SurfaceError::UnpairedSegment(name(pair, Side::A))),
                [_, None] => return Err(SurfaceError::UnpairedSegment(name(pair, Side::B))),
            }
        }

        let mut surface = MarkedSurface {
            pieces,
            pair_names,
            marked_at,
            marked_pos,
            segment_at: seg,
            stretch_label: Vec::new(),
            circles: Vec::new(),
            components: Vec::new(),
        };
        surface.trace_boundary()?;
        surface.components = surface.find_components();
        Ok(surface)
    }

    /// Walks the boundary circles of the glued surface, checks the marked
    /// points on each, and assigns a label to every boundary stretch.
    fn trace_boundary(&mut self) -> Result<(), SurfaceError> {
        // A run is the boundary between two consecutive segment tokens of a
        // piece, or the whole word of a piece without segments. Runs are keyed
        // by the position of the token they start after.
        struct Run {
            piece: usize,
            start: usize,
            end_token: Option<usize>,
        }
        let mut runs = Vec::new();
        let mut run_after: Vec<Vec<Option<usize>>> = self.pieces.iter().map(|w| vec![None; w.len()]).collect();
        for (p, word) in self.pieces.iter().enumerate() {
            let segs: Vec<usize> = (0..word.len()).filter(|&i| matches!(word[i], Token::Segment { .. })).collect();
            if segs.is_empty() {
                runs.push(Run { piece: p, start: word.len() - 1, end_token: None });
                continue;
            }
            for (k, &s) in segs.iter().enumerate() {
                let end = segs[(k + 1) % segs.len()];
                run_after[p][s] = Some(runs.len());
                runs.push(Run { piece: p, start: s, end_token: Some(end) });
            }
        }
        let tokens_of = |run: &Run| -> Vec<usize> {
            let len = self.pieces[run.piece].len();
            match run.end_token {
                None => (0..len).collect(),
                Some(end) => {
                    let mut out = Vec::new();
                    let mut i = (run.start + 1) % len;
                    while i != end {
                        out.push(i);
                        i = (i + 1) % len;
                    }
                    out
                }
            }
        };
        let next_run = |run: &Run| -> Option<usize> {
            let end = run.end_token?;
            let Token::Segment { pair, side } = self.pieces[run.piece][end] else { unreachable!() };
            let (q, pos) = self.segment_at[pair][side.other().bit() as usize];
            run_after[q][pos]
        };

        let mut seen = vec![false; runs.len()];
        let mut stretch: Vec<Vec<Option<Sign>>> = self.pieces.iter().map(|w| vec![None; w.len()]).collect();
        let mut circles = Vec::new();
        for r0 in 0..runs.len() {
            if seen[r0] {
                continue;
            }
            let circle = circles.len();
            let mut order = Vec::new();
            let mut r = r0;
            loop {
                seen[r] = true;
                order.push(r);
                match next_run(&runs[r]) {
                    Some(n) if n != r0 => r = n,
                    _ => break,
                }
            }
            let mut marked = Vec::new();
            for &r in &order {
                let run = &runs[r];
                marked.extend(tokens_of(run).into_iter().filter_map(|i| self.marked_at[run.piece][i]));
            }
            if marked.is_empty() {
                return Err(SurfaceError::NoMarkedPoints { circle });
            }
            if marked.len() % 2 == 1 {
                return Err(SurfaceError::OddMarkedPoints { circle, count: marked.len() });
            }
            let label = |m: usize| {
                let (p, i) = self.marked_pos[m];
                match self.pieces[p][i] {
                    Token::Marked(s) => s,
                    _ => unreachable!(),
                }
            };
            for k in 0..marked.len() {
                if label(marked[k]) == label(marked[(k + 1) % marked.len()]) {
                    return Err(SurfaceError::NonAlternatingLabels { circle });
                }
            }
            let mut cur = label(*marked.last().unwrap());
            for &r in &order {
                let run = &runs[r];
                if run.end_token.is_some() {
                    stretch[run.piece][run.start] = Some(cur);
                }
                for i in tokens_of(run) {
                    if let Token::Marked(s) = self.pieces[run.piece][i] {
                        cur = s;
                    }
                    stretch[run.piece][i] = Some(cur);
                }
            }
            circles.push(marked);
        }
        self.stretch_label =
            stretch.into_iter().map(|row| row.into_iter().map(|s| s.expect("every stretch lies on a circle")).collect()).collect();
        self.circles = circles;
        Ok(())
    }

    fn find_components(&self) -> Vec<Component> {
        let mut parent: Vec<usize> = (0..self.pieces.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let n = parent[x];
                parent[x] = r;
                x = n;
            }
            r
        }
        for [(pa, _), (pb, _)] in &self.segment_at {
            let (ra, rb) = (find(&mut parent, *pa), find(&mut parent, *pb));
            parent[ra] = rb;
        }
        let mut comps: Vec<Component> = Vec::new();
        let mut index = vec![usize::MAX; self.pieces.len()];
        for p in 0..self.pieces.len() {
            let r = find(&mut parent, p);
            if index[r] == usize::MAX {
                index[r] = comps.len();
                comps.push(Component { pieces: Vec::new(), euler_characteristic: 0, marked: 0 });
            }
            let c = &mut comps[index[r]];
            c.pieces.push(p);
            c.euler_characteristic += 1;
            c.marked += self.pieces[p].iter().filter(|t| matches!(t, Token::Marked(_))).count();
        }
        for [(pa, _), _] in &self.segment_at {
            let r = find(&mut parent, *pa);
            comps[index[r]].euler_characteristic -= 1;
        }
        comps
    }

    pub fn summary(&self) -> SurfaceSummary {
        SurfaceSummary {
            euler_characteristic: self.euler_characteristic(),
            pieces: self.pieces.len(),
            identification_pairs: self.pair_count(),
            circles: self.circles.iter().map(Vec::len).collect(),
            n: self.marked_count() / 2,
            components: self.components.len(),
        }
    }

    pub fn pieces(&self) -> &[Vec<Token>] {
        &self.pieces
    }

    pub fn piece(&self, p: usize) -> &[Token] {
        &self.pieces[p]
    }

    pub fn pair_count(&self) -> usize {
        self.segment_at.len()
    }

    pub fn pair_names(&self) -> &[[String; 2]] {
        &self.pair_names
    }

    pub fn marked_count(&self) -> usize {
        self.marked_pos.len()
    }

    /// Global id of the marked point at token `pos` of piece `piece`.
    pub fn marked_id(&self, piece: usize, pos: usize) -> Option<usize> {
        self.marked_at[piece][pos]
    }

    pub fn marked_position(&self, id: usize) -> (usize, usize) {
        self.marked_pos[id]
    }

    pub fn marked_label(&self, id: usize) -> Sign {
        let (p, i) = self.marked_pos[id];
        match self.pieces[p][i] {
            Token::Marked(s) => s,
            _ => unreachable!(),
        }
    }

    /// `(piece, token position)` of one side of an identification pair.
    pub fn segment_position(&self, pair: usize, side: Side) -> (usize, usize) {
        self.segment_at[pair][side.bit() as usize]
    }

    /// Label of the boundary stretch right after token `pos` of `piece`.
    pub fn stretch_label(&self, piece: usize, pos: usize) -> Sign {
        self.stretch_label[piece][pos]
    }

    pub fn boundary_circles(&self) -> &[Vec<usize>] {
        &self.circles
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.pieces.len() as i64 - self.pair_count() as i64
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// `2^(n−χ)` summed multiplicatively over connected components.
    pub fn expected_rank(&self) -> u64 {
        self.components.iter().map(|c| 1u64 << c.tensor_factors()).product()
    }

    /// Marked ordinals of a piece (clockwise from its basepoint) as token positions.
    pub fn marked_positions_in_piece(&self, piece: usize) -> Vec<usize> {
        (0..self.pieces[piece].len()).filter(|&i| self.marked_at[piece][i].is_some()).collect()
    }

    /// Disjoint union; pairs of `other` are renumbered after those of `self`.
    pub fn disjoint_union(&self, other: &MarkedSurface) -> MarkedSurface {
        let shift = self.pair_count();
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().map(|w| {
            w.iter()
                .map(|t| match *t {
                    Token::Segment { pair, side } => Token::Segment { pair: pair + shift, side },
                    m => m,
                })
                .collect()
        }));
        let mut used: std::collections::HashSet<String> = self.pair_names.iter().flatten().cloned().collect();
        let mut names = self.pair_names.clone();
        for [a, b] in &other.pair_names {
            let mut fresh = |n: &str| {
                let mut cand = n.to_string();
                let mut k = 2;
                while used.contains(&cand) {
                    cand = format!("{n}_{k}");
                    k += 1;
                }
                used.insert(cand.clone());
                cand
            };
            names.push([fresh(a), fresh(b)]);
        }
        MarkedSurface::new(pieces, names).expect("disjoint union of valid surfaces is valid")
    }

    /// The disk with `points` marked points; the stretch after point 0 has sign `first`.
    pub fn disk_with_labels(points: usize, first: Sign) -> Result<MarkedSurface, SurfaceError> {
        let word = (0..points).map(|i| Token::Marked(if i % 2 == 0 { first } else { -first })).collect();
        MarkedSurface::new(vec![word], Vec::new())
    }

    pub fn disk(points: usize) -> Result<MarkedSurface, SurfaceError> {
        Self::disk_with_labels(points, Sign::Plus)
    }

    /// Annulus as a square with its two sides identified: `outer` marked points
    /// on the top edge, `inner` on the bottom edge.
    pub fn annulus(outer: usize, inner: usize) -> Result<MarkedSurface, SurfaceError> {
        let mut word: Vec<Token> = alternating(outer, Sign::Plus);
        word.push(Token::Segment { pair: 0, side: Side::A });
        word.extend(alternating(inner, Sign::Plus));
        word.push(Token::Segment { pair: 0, side: Side::B });
        MarkedSurface::new(vec![word], vec![["a".into(), "a'".into()]])
    }

    /// Once-punctured torus as the square `a b a⁻¹ b⁻¹` with truncated
    /// corners. All but one marked point sit in the corner before `a`, the
    /// last one in the corner after `b`, so cutting along `a` and then `b`
    /// leaves valid surfaces.
    pub fn punctured_torus(points: usize) -> Result<MarkedSurface, SurfaceError> {
        let first = points.saturating_sub(1);
        // Circle order visits the first corner and then the third one.
        let labels: Vec<Sign> = (0..points).map(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus }).collect();
        let mut word: Vec<Token> = labels[..first].iter().map(|&s| Token::Marked(s)).collect();
        word.push(Token::Segment { pair: 0, side: Side::A });
        word.push(Token::Segment { pair: 1, side: Side::A });
        word.extend(labels[first..].iter().map(|&s| Token::Marked(s)));
        word.push(Token::Segment { pair: 0, side: Side::B });
        word.push(Token::Segment { pair: 1, side: Side::B });
        MarkedSurface::new(vec![word], vec![["a".into(), "a'".into()], ["b".into(), "b'".into()]])
    }

    pub fn to_file(&self) -> SurfaceFile {
        let mut pieces = Vec::new();
        let mut labels = Vec::new();
        for word in &self.pieces {
            let mut w = Vec::new();
            let mut l = Vec::new();
            for t in word {
                match *t {
                    Token::Marked(s) => {
                        w.push("m".to_string());
                        l.push(s.to_string());
                    }
                    Token::Segment { pair, side } => w.push(self.pair_names[pair][side.bit() as usize].clone()),
                }
            }
            pieces.push(w);
            labels.push(l);
        }
        SurfaceFile { pieces, identifications: self.pair_names.clone(), labels }
    }

    pub fn from_file(file: &SurfaceFile) -> Result<MarkedSurface, SurfaceError> {
        let mut lookup = std::collections::HashMap::new();
        for (pair, [a, b]) in file.identifications.iter().enumerate() {
            if a == b {
                return Err(SurfaceError::SelfPaired(a.clone()));
            }
            for (name, side) in [(a, Side::A), (b, Side::B)] {
                if lookup.insert(name.clone(), (pair, side)).is_some() {
                    return Err(SurfaceError::DuplicateSegment(name.clone()));
                }
            }
        }
        let mut mentioned = std::collections::HashSet::new();
        let mut pieces = Vec::new();
        for (p, word) in file.pieces.iter().enumerate() {
            let labels = file.labels.get(p).map(Vec::as_slice).unwrap_or(&[]);
            let marked = word.iter().filter(|t| is_marked_token(t)).count();
            if labels.len() != marked {
                return Err(SurfaceError::LabelCount { piece: p, expected: marked, got: labels.len() });
            }
            let mut labels = labels.iter();
            let mut out = Vec::new();
            for t in word {
                if is_marked_token(t) {
                    let l = labels.next().unwrap();
                    out.push(Token::Marked(Sign::parse(l).ok_or_else(|| SurfaceError::BadLabel(l.clone()))?));
                } else if is_plain_token(t) {
                    continue;
                } else {
                    let &(pair, side) = lookup.get(t).ok_or_else(|| SurfaceError::UnpairedSegment(t.clone()))?;
                    if !mentioned.insert(t.clone()) {
                        return Err(SurfaceError::DuplicateSegment(t.clone()));
                    }
                    out.push(Token::Segment { pair, side });
                }
            }
            pieces.push(out);
        }
        for name in lookup.keys() {
            if !mentioned.contains(name) {
                return Err(SurfaceError::UnknownSegment(name.clone()));
            }
        }
        MarkedSurface::new(pieces, file.identifications.clone())
    }
}

fn is_marked_token(t: &str) -> bool {
    t == "m"
}

fn is_plain_token(t: &str) -> bool {
    t == "p"
}

fn alternating(count: usize, first: Sign) -> Vec<Token> {
    (0..count).map(|i| Token::Marked(if i % 2 == 0 { first } else { -first })).collect()
}

/// Structured-text form of a surface. Tokens are `"m"` for a marked point,
/// `"p"` for an explicit plain boundary stretch (ignored), and any other
/// string names an identification segment. `labels[p]` lists one sign per
/// marked point of piece `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub pieces: Vec<Vec<String>>,
    #[serde(default)]
    pub identifications: Vec<[String; 2]>,
    #[serde(default)]
    pub labels: Vec<Vec<String>>,
}

/// Checks a surface file and reports its Euler characteristic, boundary
/// circles and `n`.
pub fn validate_surface(file: &SurfaceFile) -> Result<SurfaceSummary, SurfaceError> {
    MarkedSurface::from_file(file).map(|s| s.summary())
}
