//! The presented module `V(Σ, F)` over Z/2: canonical dividing sets modulo
//! bypass triples, reduced to a basis graded by `e = χ(R+) − χ(R−)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bypass::{all_triples, finger_moves};
use crate::dividing::{euler_grading, is_isolating, DividingFile, DividingSet, Strands};
use crate::enumerate::enumerate_dividing_sets;
use crate::gf2::{BitVec, Echelon};
use crate::surface::{MarkedSurface, SurfaceFile};

pub const DEFAULT_BOUND: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleOptions {
    /// Maximum crossings per identification pair.
    pub bound: usize,
    /// Rounds of finger moves applied to each generator before looking for
    /// bypass arcs; lets arcs reach across identification segments.
    pub finger_depth: usize,
}

impl Default for ModuleOptions {
    fn default() -> Self {
        ModuleOptions { bound: DEFAULT_BOUND, finger_depth: 1 }
    }
}

impl ModuleOptions {
    pub fn with_bound(bound: usize) -> Self {
        ModuleOptions { bound, ..Self::default() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("dividing set needs {needed} crossings, above the bound {bound}")]
    ExceedsBound { needed: usize, bound: usize },
    #[error("relation mixes gradings {0:?}")]
    GradingMismatch(Vec<i64>),
    #[error("dividing set is not valid on this surface: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassVector {
    #[serde(serialize_with = "bits_as_string")]
    pub coords: BitVec,
    pub grading: i64,
    pub zero: bool,
}

fn bits_as_string<S: serde::Serializer>(v: &BitVec, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_bit_string())
}

impl ClassVector {
    pub fn add(&self, other: &ClassVector) -> BitVec {
        self.coords.xor(&other.coords)
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] e={}", self.coords, self.grading)?;
        if self.zero {
            f.write_str(" zero")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct TqftModule {
    surface: MarkedSurface,
    options: ModuleOptions,
    generators: Vec<DividingSet>,
    gradings: Vec<i64>,
    index: HashMap<DividingSet, usize>,
    relations: Vec<Vec<usize>>,
    basis: Vec<usize>,
    coords: Vec<BitVec>,
    graded: BTreeMap<i64, usize>,
    unresolved: usize,
}

pub fn build_module(surface: &MarkedSurface, bound: usize) -> Result<TqftModule, ModuleError> {
    TqftModule::build(surface, ModuleOptions::with_bound(bound))
}

impl TqftModule {
    pub fn build(surface: &MarkedSurface, options: ModuleOptions) -> Result<TqftModule, ModuleError> {
        let mut gens: Vec<(i64, DividingSet)> = enumerate_dividing_sets(surface, options.bound)
            .into_iter()
            .map(|k| (euler_grading(surface, &k).expect("enumerated sets are colorable"), k))
            .collect();
        gens.sort();
        let gradings: Vec<i64> = gens.iter().map(|g| g.0).collect();
        let generators: Vec<DividingSet> = gens.into_iter().map(|g| g.1).collect();
        let index: HashMap<DividingSet, usize> = generators.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

        let found: Vec<(Vec<Vec<usize>>, usize)> = generators
            .par_iter()
            .enumerate()
            .map(|(g, k)| relations_from(surface, k, g, &index, options))
            .collect();
        let mut relations: Vec<Vec<usize>> = Vec::new();
        let mut unresolved = 0;
        for (rows, skipped) in found {
            relations.extend(rows);
            unresolved += skipped;
        }
        relations.sort();
        relations.dedup();
        for row in &relations {
            let e: Vec<i64> = row.iter().map(|&i| gradings[i]).collect();
            if e.windows(2).any(|w| w[0] != w[1]) {
                return Err(ModuleError::GradingMismatch(e));
            }
        }

        // Reversed columns: earlier generators become basis elements.
        let n = generators.len();
        let col = |g: usize| n - 1 - g;
        let mut ech = Echelon::new(n);
        for row in &relations {
            ech.insert(BitVec::from_indices(n, row.iter().map(|&g| col(g))));
        }
        let free: Vec<usize> = ech.free_columns();
        let mut basis: Vec<usize> = free.iter().map(|&c| n - 1 - c).collect();
        basis.sort_unstable();
        let basis_pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let r = basis.len();
        let mut coords = vec![BitVec::zeros(r); n];
        for &g in &basis {
            coords[g] = BitVec::unit(r, basis_pos[&g]);
        }
        for (p, row) in ech.reduced_rows() {
            let g = n - 1 - p;
            let mut v = BitVec::zeros(r);
            for c in row.ones().filter(|&c| c != p) {
                v.flip(basis_pos[&(n - 1 - c)]);
            }
            coords[g] = v;
        }
        let mut graded = BTreeMap::new();
        for &g in &basis {
            *graded.entry(gradings[g]).or_insert(0) += 1;
        }

        let module = TqftModule { surface: surface.clone(), options, generators, gradings, index, relations, basis, coords, graded, unresolved };
        if module.rank() as u64 != surface.expected_rank() {
            log::warn!(
                "rank {} differs from the expected {} at bound {}; raise the bound",
                module.rank(),
                surface.expected_rank(),
                options.bound
            );
        }
        Ok(module)
    }

    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn bound(&self) -> usize {
        self.options.bound
    }

    pub fn options(&self) -> ModuleOptions {
        self.options
    }

    pub fn generators(&self) -> &[DividingSet] {
        &self.generators
    }

    pub fn grading(&self, g: usize) -> i64 {
        self.gradings[g]
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    /// Generator indices of the basis elements.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn expected_rank(&self) -> u64 {
        self.surface.expected_rank()
    }

    pub fn graded_ranks(&self) -> &BTreeMap<i64, usize> {
        &self.graded
    }

    pub fn graded_rank(&self, e: i64) -> usize {
        self.graded.get(&e).copied().unwrap_or(0)
    }

    /// Bypass triples skipped because a member left the bound.
    pub fn unresolved_triples(&self) -> usize {
        self.unresolved
    }

    pub fn generator_index(&self, k: &DividingSet) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn generator_coords(&self, g: usize) -> &BitVec {
        &self.coords[g]
    }

    pub fn zero_vector(&self) -> BitVec {
        BitVec::zeros(self.rank())
    }

    pub fn class_of(&self, k: &DividingSet) -> Result<ClassVector, ModuleError> {
        k.validate(&self.surface).map_err(|e| ModuleError::Invalid(e.to_string()))?;
        let c = k.canonicalize(&self.surface);
        let grading = euler_grading(&self.surface, &c).map_err(|e| ModuleError::Invalid(e.to_string()))?;
        if c.closed() > 0 {
            return Ok(ClassVector { coords: self.zero_vector(), grading, zero: true });
        }
        if c.max_crossings() > self.options.bound {
            return Err(ModuleError::ExceedsBound { needed: c.max_crossings(), bound: self.options.bound });
        }
        let g = self.index.get(&c).ok_or_else(|| ModuleError::Invalid(format!("{c} is not a generator")))?;
        let coords = self.coords[*g].clone();
        let zero = coords.is_zero();
        Ok(ClassVector { coords, grading, zero })
    }

    pub fn distinct_classes(&self, ks: &[DividingSet]) -> Result<DistinctReport, ModuleError> {
        let classes: Vec<ClassVector> = ks.iter().map(|k| self.class_of(k)).collect::<Result<_, _>>()?;
        let zero: Vec<usize> = (0..ks.len()).filter(|&i| classes[i].zero).collect();
        let mut equal = Vec::new();
        for i in 0..ks.len() {
            for j in i + 1..ks.len() {
                if classes[i].coords == classes[j].coords {
                    equal.push((i, j));
                }
            }
        }
        Ok(DistinctReport { zero, equal_pairs: equal, classes })
    }

    pub fn export(&self) -> ModuleExport {
        ModuleExport {
            surface: self.surface.to_file(),
            bound: self.options.bound,
            rank: self.rank(),
            expected_rank: self.expected_rank(),
            graded_ranks: self.graded.iter().map(|(e, r)| (e.to_string(), *r)).collect(),
            generators: self.generators.iter().map(|k| k.to_file(&self.surface)).collect(),
            gradings: self.gradings.clone(),
            relations: self.relations.clone(),
            basis: self.basis.clone(),
            coordinates: self.coords.iter().map(BitVec::to_bit_string).collect(),
        }
    }

    /// Checks the vanishing criterion on every generator: zero class iff
    /// isolating. Returns the offending generators.
    pub fn vanishing_violations(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&g| {
                let iso = is_isolating(&self.surface, &self.generators[g]).expect("generators are colorable");
                iso != self.coords[g].is_zero()
            })
            .collect()
    }
}

fn relations_from(
    surface: &MarkedSurface,
    k: &DividingSet,
    g: usize,
    index: &HashMap<DividingSet, usize>,
    options: ModuleOptions,
) -> (Vec<Vec<usize>>, usize) {
    let mut configs = vec![Strands::from_dividing(surface, k)];
    let mut frontier = configs.clone();
    for _ in 0..options.finger_depth {
        let next: Vec<Strands<'_>> = frontier.iter().flat_map(finger_moves).collect();
        configs.extend(next.iter().cloned());
        frontier = next;
    }
    let mut rows = Vec::new();
    let mut skipped = 0;
    for c in &configs {
        for (front, back) in all_triples(c) {
            let mut row = vec![g];
            let mut ok = true;
            for m in [&front, &back] {
                if m.closed() > 0 {
                    continue;
                }
                match index.get(m) {
                    Some(&i) => row.push(i),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                skipped += 1;
                continue;
            }
            row.sort_unstable();
            let mut reduced: Vec<usize> = Vec::with_capacity(3);
            for i in row {
                if reduced.last() == Some(&i) {
                    reduced.pop();
                } else {
                    reduced.push(i);
                }
            }
            if !reduced.is_empty() {
                rows.push(reduced);
            }
        }
    }
    rows.sort();
    rows.dedup();
    (rows, skipped)
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinctReport {
    pub zero: Vec<usize>,
    pub equal_pairs: Vec<(usize, usize)>,
    pub classes: Vec<ClassVector>,
}

impl DistinctReport {
    pub fn all_nonzero_and_distinct(&self) -> bool {
        self.zero.is_empty() && self.equal_pairs.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleExport {
    pub surface: SurfaceFile,
    pub bound: usize,
    pub rank: usize,
    pub expected_rank: u64,
    pub graded_ranks: BTreeMap<String, usize>,
    pub generators: Vec<DividingFile>,
    pub gradings: Vec<i64>,
    pub relations: Vec<Vec<usize>>,
    pub basis: Vec<usize>,
    pub coordinates: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_ranks() {
        for n in 1..=4usize {
            let s = MarkedSurface::disk(2 * n).unwrap();
            let m = build_module(&s, 0).unwrap();
            assert_eq!(m.rank(), 1 << (n - 1), "n={n}");
        }
    }

    #[test]
    fn disk_n3_graded() {
        let s = MarkedSurface::disk(6).unwrap();
        let m = build_module(&s, 0).unwrap();
        let g: Vec<(i64, usize)> = m.graded_ranks().iter().map(|(e, r)| (*e, *r)).collect();
        assert_eq!(g, vec![(-2, 1), (0, 2), (2, 1)]);
    }

    #[test]
    fn disk_n2_graded() {
        let s = MarkedSurface::disk(4).unwrap();
        let m = build_module(&s, 0).unwrap();
        assert_eq!(m.graded_rank(1), 1);
        assert_eq!(m.graded_rank(-1), 1);
    }

    #[test]
    fn closed_circle_has_zero_class() {
        let s = MarkedSurface::disk(4).unwrap();
        let m = build_module(&s, 0).unwrap();
        let k = DividingSet::from_pairs(&s, vec![], &[(0, 1), (2, 3)], 1).unwrap();
        assert!(m.class_of(&k).unwrap().zero);
    }
}
