//! Dense vectors over Z/2 packed into `u64` words, and an incremental
//! row-echelon reducer.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + t)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Bits as a `0`/`1` string, index 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    pub fn parse_bit_string(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Row space of a growing set of vectors, kept in echelon form keyed by the
/// lowest set bit of each stored row.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<BitVec>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Self { width, pivot_row: vec![None; width], rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies
    /// in the row space.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        self.reduce_in_place(&mut v);
        v
    }

    fn reduce_in_place(&self, v: &mut BitVec) {
        // Stored rows have distinct pivots and each row's pivot is its lowest
        // bit, so sweeping pivots upward clears every pivot position of `v`.
        let mut start = 0;
        loop {
            let next = v.ones().skip_while(|&i| i < start).find(|&i| self.pivot_row[i].is_some());
            match next {
                Some(p) => {
                    let r = self.pivot_row[p].unwrap();
                    v.xor_assign(&self.rows[r]);
                    start = p + 1;
                }
                None => break,
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns true if the rank grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut v = v;
        self.reduce_in_place(&mut v);
        match v.first_one() {
            None => false,
            Some(p) => {
                self.pivot_row[p] = Some(self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(|&c| self.pivot_row[c].is_some())
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Fully reduced rows, indexed by pivot column: in each row the only
    /// pivot column that is set is its own.
    pub fn reduced_rows(&self) -> Vec<(usize, BitVec)> {
        let mut out: Vec<(usize, BitVec)> = Vec::with_capacity(self.rows.len());
        let mut pivots: Vec<usize> = self.pivots().collect();
        pivots.sort_unstable_by(|a, b| b.cmp(a));
        // Highest pivot first.
        let mut done: Vec<Option<BitVec>> = vec![None; self.width];
        for p in pivots {
            let mut row = self.rows[self.pivot_row[p].unwrap()].clone();
            let hits: Vec<usize> = row.ones().filter(|&c| c != p && done[c].is_some()).collect();
            for c in hits {
                if row.get(c) {
                    row.xor_assign(done[c].as_ref().unwrap());
                }
            }
            done[p] = Some(row.clone());
            out.push((p, row));
        }
        out.sort_by_key(|(p, _)| *p);
        out
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of(width: usize, vectors: impl IntoIterator<Item = BitVec>) -> usize {
    let mut e = Echelon::new(width);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn bit_ops() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        v.flip(64);
        assert_eq!(v.first_one(), Some(0));
        assert!(!v.get(64));
        let s = v.to_bit_string();
        assert_eq!(BitVec::parse_bit_string(&s).unwrap(), v);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let w = 4;
        let rows = [
            BitVec::from_indices(w, [0, 1]),
            BitVec::from_indices(w, [1, 2]),
            BitVec::from_indices(w, [0, 2]),
        ];
        assert_eq!(rank_of(w, rows), 2);
    }

    #[test]
    fn reduced_rows_clear_other_pivots() {
        let w = 5;
        let mut e = Echelon::new(w);
        e.insert(BitVec::from_indices(w, [0, 1, 4]));
        e.insert(BitVec::from_indices(w, [1, 2]));
        e.insert(BitVec::from_indices(w, [2, 3]));
        let rows = e.reduced_rows();
        let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
        assert_eq!(pivots, vec![0, 1, 2]);
        for (p, r) in &rows {
            for q in &pivots {
                assert_eq!(r.get(*q), p == q);
            }
        }
        assert_eq!(e.free_columns(), vec![3, 4]);
    }

    fn naive_rank(width: usize, mut rows: Vec<Vec<bool>>) -> usize {
        let mut rank = 0;
        for col in 0..width {
            if let Some(r) = (rank..rows.len()).find(|&r| rows[r][col]) {
                rows.swap(rank, r);
                for i in 0..rows.len() {
                    if i != rank && rows[i][col] {
                        let pivot = rows[rank].clone();
                        for (x, y) in rows[i].iter_mut().zip(pivot) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_matches_textbook_elimination(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 70), 0..12)) {
            let width = 70;
            let vs = rows.iter().map(|r| BitVec::from_indices(width, r.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)));
            prop_assert_eq!(rank_of(width, vs), naive_rank(width, rows.clone()));
        }

        #[test]
        fn inserted_rows_are_contained(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 20), 1..8)) {
            let width = 20;
            let mut e = Echelon::new(width);
            let vs: Vec<BitVec> = rows.iter().map(|r| BitVec::from_indices(width, r.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))).collect();
            for v in &vs {
                e.insert(v.clone());
            }
            for v in &vs {
                prop_assert!(e.contains(v));
            }
            let sum = vs.iter().fold(BitVec::zeros(width), |acc, v| acc.xor(v));
            prop_assert!(e.contains(&sum));
        }
    }
}
