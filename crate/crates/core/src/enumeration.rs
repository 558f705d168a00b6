//! Exhaustive generation of non-isomorphic free trees and molecular trees.
//!
//! Every free tree has either one centroid, or two adjacent centroids whose
//! sides both hold exactly `n/2` vertices. A unicentroidal tree is a rooted
//! tree whose root branches all have at most `(n-1)/2` vertices; a
//! bicentroidal tree is an unordered pair of rooted trees on `n/2` vertices.
//! Rooted trees are built bottom-up as multisets of smaller rooted trees and
//! numbered so that each isomorphism class gets exactly one id. Emitting child
//! multisets in non-increasing id order then yields each free tree exactly
//! once, with no isomorphism checks.
//!
//! The molecular degree cap is applied while building: subtree roots take at
//! most three children (the fourth slot is the parent edge) and the centroid
//! root at most four.

use std::ops::Range;
use std::sync::Arc;

use rayon::prelude::*;

use crate::graph::{edge_type_profile, Graph};
use crate::indices::so2_from_profile;
use crate::rational::Rational;

/// Largest `n` accepted unless the caller raises it.
pub const DEFAULT_MAX_N: usize = 18;

/// Environment variable that overrides [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "SOMBOR_MAX_N";

/// Enumeration cap from `SOMBOR_MAX_N`, falling back to [`DEFAULT_MAX_N`].
pub fn cap_from_env() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("tree enumeration needs at least one vertex")]
    ZeroVertices,
    #[error("n = {n} exceeds the enumeration cap {cap} (raise it with {MAX_N_ENV})")]
    OverCap { n: usize, cap: usize },
}

/// Which trees a [`TreeStream`] emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeClass {
    All,
    /// Maximum degree at most four.
    Molecular,
}

impl TreeClass {
    fn root_cap(self) -> usize {
        match self {
            TreeClass::All => usize::MAX,
            TreeClass::Molecular => 4,
        }
    }

    fn subtree_cap(self) -> usize {
        match self {
            TreeClass::All => usize::MAX,
            TreeClass::Molecular => 3,
        }
    }
}

/// Canonical rooted trees up to a size bound, numbered by size and then by
/// construction order.
#[derive(Debug)]
struct RootedTable {
    sizes: Vec<usize>,
    children: Vec<Vec<usize>>,
    /// `by_size[s]` is the id range of trees with `s` vertices.
    by_size: Vec<Range<usize>>,
}

impl RootedTable {
    fn build(max_size: usize, child_cap: usize) -> Self {
        let mut table = RootedTable {
            sizes: Vec::new(),
            children: Vec::new(),
            by_size: vec![0..0],
        };
        for size in 1..=max_size {
            let start = table.sizes.len();
            let mut found = Vec::new();
            let top = table.sizes.len();
            table.child_multisets(size - 1, top, child_cap, &mut Vec::new(), &mut |kids| {
                found.push(kids.to_vec())
            });
            for kids in found {
                table.sizes.push(size);
                table.children.push(kids);
            }
            table.by_size.push(start..table.sizes.len());
        }
        table
    }

    /// Ids of trees with at most `size` vertices form the prefix `0..end`.
    fn prefix_end(&self, size: usize) -> usize {
        let s = size.min(self.by_size.len() - 1);
        self.by_size[s].end
    }

    /// Calls `f` with every non-increasing id sequence whose sizes sum to
    /// `remaining`, ids drawn from `0..id_bound`, at most `max_len` long.
    fn child_multisets(
        &self,
        remaining: usize,
        id_bound: usize,
        max_len: usize,
        prefix: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if remaining == 0 {
            f(prefix);
            return;
        }
        if max_len == 0 {
            return;
        }
        let bound = id_bound.min(self.prefix_end(remaining));
        for id in (0..bound).rev() {
            let size = self.sizes[id];
            // sizes only shrink from here on
            if size.saturating_mul(max_len) < remaining {
                break;
            }
            prefix.push(id);
            self.child_multisets(remaining - size, id + 1, max_len - 1, prefix, f);
            prefix.pop();
        }
    }

    /// Appends the subtree `id` below `parent`, preorder.
    fn append(&self, id: usize, parent: usize, parents: &mut Vec<usize>) {
        let me = parents.len();
        parents.push(parent);
        for &kid in &self.children[id] {
            self.append(kid, me, parents);
        }
    }
}

/// One independently exhaustive slice of a [`TreeStream`], fixed by the
/// first branching decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    /// The single-vertex tree.
    Single,
    /// Unique centroid whose heaviest root branch is rooted tree `first`.
    Unicentroid { first: usize },
    /// Two centroids; the larger half is rooted tree `first`.
    Bicentroid { first: usize },
}

/// Duplicate-free, exhaustive stream of the trees on `n` vertices in a class.
///
/// Emission order is deterministic but carries no meaning.
#[derive(Debug, Clone)]
pub struct TreeStream {
    n: usize,
    class: TreeClass,
    table: Arc<RootedTable>,
    partitions: Vec<Partition>,
}

impl TreeStream {
    pub fn new(n: usize, class: TreeClass, cap: usize) -> Result<Self, EnumerationError> {
        if n == 0 {
            return Err(EnumerationError::ZeroVertices);
        }
        if n > cap {
            return Err(EnumerationError::OverCap { n, cap });
        }
        let table = RootedTable::build(n / 2, class.subtree_cap());
        let mut partitions = Vec::new();
        if n == 1 {
            partitions.push(Partition::Single);
        } else {
            let branch_max = (n - 1) / 2;
            for first in 0..table.prefix_end(branch_max) {
                partitions.push(Partition::Unicentroid { first });
            }
            if n % 2 == 0 {
                for first in table.by_size[n / 2].clone() {
                    partitions.push(Partition::Bicentroid { first });
                }
            }
        }
        Ok(TreeStream { n, class, table: Arc::new(table), partitions })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> TreeClass {
        self.class
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Calls `f` with the parent array of each tree in `part`. Vertex 0 is a
    /// centroid; every other vertex `v` has parent `parents[v] < v`.
    pub fn for_each_parents(&self, part: Partition, f: &mut dyn FnMut(&[usize])) {
        let table = &*self.table;
        match part {
            Partition::Single => f(&[0]),
            Partition::Unicentroid { first } => {
                let rest = self.n - 1 - table.sizes[first];
                let root_cap = self.class.root_cap();
                table.child_multisets(rest, first + 1, root_cap - 1, &mut vec![first], &mut |kids| {
                    let mut parents = Vec::with_capacity(self.n);
                    parents.push(0);
                    for &kid in kids {
                        table.append(kid, 0, &mut parents);
                    }
                    f(&parents);
                });
            }
            Partition::Bicentroid { first } => {
                let half = self.n / 2;
                for second in table.by_size[half].start..=first {
                    let mut parents = Vec::with_capacity(self.n);
                    parents.push(0);
                    for &kid in &table.children[first] {
                        table.append(kid, 0, &mut parents);
                    }
                    table.append(second, 0, &mut parents);
                    f(&parents);
                }
            }
        }
    }

    pub fn partition_trees(&self, part: Partition) -> Vec<Graph> {
        let mut out = Vec::new();
        self.for_each_parents(part, &mut |parents| out.push(Graph::from_parents(parents)));
        out
    }

    /// Lazily walks the partitions in order.
    pub fn iter(&self) -> impl Iterator<Item = Graph> + '_ {
        self.partitions.iter().flat_map(move |&p| self.partition_trees(p))
    }

    /// Number of trees, counted without building graphs.
    pub fn count(&self) -> u64 {
        self.partitions
            .par_iter()
            .map(|&p| {
                let mut c = 0u64;
                self.for_each_parents(p, &mut |_| c += 1);
                c
            })
            .sum()
    }
}

pub fn enumerate_trees(n: usize) -> Result<TreeStream, EnumerationError> {
    TreeStream::new(n, TreeClass::All, DEFAULT_MAX_N)
}

pub fn enumerate_molecular_trees(n: usize) -> Result<TreeStream, EnumerationError> {
    TreeStream::new(n, TreeClass::Molecular, DEFAULT_MAX_N)
}

/// Extreme SO2 value over a stream and every tree attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremum {
    pub value: Rational,
    pub attainers: Vec<Graph>,
}

impl Extremum {
    fn merge(self, other: Extremum, prefer_larger: bool) -> Extremum {
        use std::cmp::Ordering::*;
        match (self.value.cmp(&other.value), prefer_larger) {
            (Equal, _) => {
                let mut attainers = self.attainers;
                attainers.extend(other.attainers);
                Extremum { value: self.value, attainers }
            }
            (Greater, true) | (Less, false) => self,
            _ => other,
        }
    }
}

fn extremum(stream: &TreeStream, prefer_larger: bool) -> Extremum {
    let partials: Vec<Option<Extremum>> = stream
        .partitions()
        .par_iter()
        .map(|&p| {
            stream
                .partition_trees(p)
                .into_iter()
                .map(|g| {
                    let value = so2_from_profile(&edge_type_profile(&g));
                    Extremum { value, attainers: vec![g] }
                })
                .reduce(|a, b| a.merge(b, prefer_larger))
        })
        .collect();
    // sequential fold keeps attainer order independent of thread scheduling
    partials
        .into_iter()
        .flatten()
        .reduce(|a, b| a.merge(b, prefer_larger))
        .expect("every stream emits at least one tree")
}

pub fn argmax_so2_in(stream: &TreeStream) -> Extremum {
    extremum(stream, true)
}

pub fn argmin_so2_in(stream: &TreeStream) -> Extremum {
    extremum(stream, false)
}

/// Maximum SO2 on `n`-vertex trees of `class`, with all maximizers.
pub fn argmax_so2(n: usize, class: TreeClass) -> Result<Extremum, EnumerationError> {
    Ok(argmax_so2_in(&TreeStream::new(n, class, DEFAULT_MAX_N)?))
}

/// Minimum SO2 on `n`-vertex trees of `class`, with all minimizers.
pub fn argmin_so2(n: usize, class: TreeClass) -> Result<Extremum, EnumerationError> {
    Ok(argmin_so2_in(&TreeStream::new(n, class, DEFAULT_MAX_N)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_molecular_tree, is_tree, tree_canonical_code};
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_trees(1).unwrap().count(), 1);
        assert_eq!(enumerate_trees(2).unwrap().count(), 1);
        assert_eq!(enumerate_trees(4).unwrap().count(), 2);
        assert_eq!(enumerate_trees(8).unwrap().count(), 23);
        assert_eq!(enumerate_molecular_trees(5).unwrap().count(), 3);
        assert_eq!(enumerate_molecular_trees(8).unwrap().count(), 18);
    }

    #[test]
    fn emitted_graphs_are_distinct_trees() {
        for n in 1..=10 {
            for class in [TreeClass::All, TreeClass::Molecular] {
                let stream = TreeStream::new(n, class, DEFAULT_MAX_N).unwrap();
                let mut codes = HashSet::new();
                for g in stream.iter() {
                    assert_eq!(g.n(), n);
                    assert!(is_tree(&g));
                    if class == TreeClass::Molecular {
                        assert!(is_molecular_tree(&g));
                    }
                    assert!(codes.insert(tree_canonical_code(&g).unwrap()), "duplicate at n={n}");
                }
                assert_eq!(codes.len() as u64, stream.count());
            }
        }
    }

    #[test]
    fn cap_and_zero_are_rejected() {
        assert_eq!(enumerate_trees(0).unwrap_err(), EnumerationError::ZeroVertices);
        assert_eq!(
            enumerate_trees(19).unwrap_err(),
            EnumerationError::OverCap { n: 19, cap: DEFAULT_MAX_N }
        );
        assert!(TreeStream::new(19, TreeClass::Molecular, 19).is_ok());
        assert!(argmax_so2(40, TreeClass::Molecular).is_err());
    }

    #[test]
    fn extremes_small_n() {
        let max8 = argmax_so2(8, TreeClass::Molecular).unwrap();
        assert_eq!(max8.value, Rational::new(90, 17));
        assert_eq!(max8.attainers.len(), 1);
        assert_eq!(argmax_so2(5, TreeClass::Molecular).unwrap().value, Rational::new(60, 17));
        assert_eq!(argmax_so2(7, TreeClass::Molecular).unwrap().value, Rational::new(1924, 425));

        let min9 = argmin_so2(9, TreeClass::All).unwrap();
        assert_eq!(min9.value, Rational::new(6, 5));
        assert_eq!(min9.attainers.len(), 1);
        assert_eq!(min9.attainers[0].max_degree(), 2);
        assert_eq!(argmin_so2(3, TreeClass::All).unwrap().value, Rational::new(6, 5));
        assert_eq!(argmin_so2(2, TreeClass::All).unwrap().value, Rational::zero());
    }
}
