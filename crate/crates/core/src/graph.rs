//! Simple undirected graphs, tree predicates and edge-type profiles.

use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Errors raised while constructing or parsing a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge list line {line}: {message}")]
    Format { line: usize, message: String },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are sorted; the graph is immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adjacency, edge_count: edges.len() })
    }

    /// Builds a tree from a parent array (`parent[0]` is ignored, every other
    /// vertex `v` is joined to `parent[v] < v`).
    pub(crate) fn from_parents(parents: &[usize]) -> Self {
        let n = parents.len().max(1);
        let mut adjacency = vec![Vec::new(); n];
        for (v, &p) in parents.iter().enumerate().skip(1) {
            adjacency[v].push(p);
            adjacency[p].push(v);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { adjacency, edge_count: n - 1 }
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn star(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, &edges)
    }

    /// Parses the plain-text edge-list format: a header line `n m`, then `m`
    /// lines `u v` with 0-based vertex ids. Blank lines and `#` comments are
    /// skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(GraphError::Format {
            line: 1,
            message: "missing \"n m\" header".into(),
        })?;
        let [n, m] = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, body) in lines {
            if edges.len() == m {
                return Err(GraphError::Format {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            let [u, v] = parse_pair(line, body)?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Format {
                line: hline,
                message: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }

    /// Serializes to the edge-list format read by [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Single-line form `n m u1 v1 u2 v2 ...`.
    pub fn to_edge_line(&self) -> String {
        let mut out = format!("{} {}", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = write!(out, " {u} {v}");
        }
        out
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Connected components, each as a sorted vertex list.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Applies the relabeling `v -> perm[v]`.
    ///
    /// # Panics
    ///
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n(), &edges).expect("relabel requires a permutation")
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({})", self.to_edge_line())
    }
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2], GraphError> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::Format {
            line,
            message: format!("expected two integers, got {:?}", body),
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| GraphError::Format {
            line,
            message: format!("not a nonnegative integer: {s:?}"),
        })
    };
    Ok([parse(fields[0])?, parse(fields[1])?])
}

pub fn degrees(g: &Graph) -> Vec<usize> {
    (0..g.n()).map(|v| g.degree(v)).collect()
}

/// Connected with exactly `n - 1` edges. The single vertex counts as a tree.
pub fn is_tree(g: &Graph) -> bool {
    g.edge_count() + 1 == g.n() && g.is_connected()
}

/// A tree whose maximum degree is at most four.
pub fn is_molecular_tree(g: &Graph) -> bool {
    is_tree(g) && g.max_degree() <= 4
}

/// Edge counts `m_ij` keyed by the degree pair `(i, j)` with `i <= j`, and the
/// number of vertices `n_i` of each degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeTypeProfile {
    n: usize,
    edge_counts: BTreeMap<(usize, usize), usize>,
    degree_counts: BTreeMap<usize, usize>,
}

impl EdgeTypeProfile {
    /// Assembles a profile from raw counts without checking its identities.
    /// Zero entries are dropped and keys are normalized to `i <= j`.
    pub fn from_counts(
        n: usize,
        edge_counts: impl IntoIterator<Item = ((usize, usize), usize)>,
        degree_counts: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut p = EdgeTypeProfile { n, ..Default::default() };
        for ((i, j), c) in edge_counts {
            if c > 0 {
                *p.edge_counts.entry((i.min(j), i.max(j))).or_insert(0) += c;
            }
        }
        for (i, c) in degree_counts {
            if c > 0 {
                *p.degree_counts.entry(i).or_insert(0) += c;
            }
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m_ij`; argument order does not matter.
    pub fn m(&self, i: usize, j: usize) -> usize {
        self.edge_counts.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    /// `n_i`.
    pub fn vertices_of_degree(&self, i: usize) -> usize {
        self.degree_counts.get(&i).copied().unwrap_or(0)
    }

    pub fn edge_counts(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.edge_counts
    }

    pub fn degree_counts(&self) -> &BTreeMap<usize, usize> {
        &self.degree_counts
    }

    pub fn edge_total(&self) -> usize {
        self.edge_counts.values().sum()
    }

    /// Checks the counting identities every realizable profile satisfies.
    /// Returns the first identity that fails.
    pub fn check_identities(&self) -> Result<(), String> {
        let m = self.edge_total();
        let vertex_total: usize = self.degree_counts.values().sum();
        if vertex_total != self.n {
            return Err(format!("sum of n_i is {vertex_total}, expected n = {}", self.n));
        }
        let degree_sum: usize = self.degree_counts.iter().map(|(i, c)| i * c).sum();
        if degree_sum != 2 * m {
            return Err(format!("sum of i*n_i is {degree_sum}, expected 2m = {}", 2 * m));
        }
        let mut incidences: BTreeMap<usize, usize> = BTreeMap::new();
        for (&(i, j), &c) in &self.edge_counts {
            *incidences.entry(i).or_insert(0) += c;
            *incidences.entry(j).or_insert(0) += c;
        }
        for (&i, &c) in &self.degree_counts {
            let got = incidences.remove(&i).unwrap_or(0);
            if got != i * c {
                return Err(format!("degree {i}: edge incidences {got}, expected i*n_i = {}", i * c));
            }
        }
        if let Some((i, c)) = incidences.into_iter().next() {
            return Err(format!("degree {i} appears on {c} edges but has no vertices"));
        }
        Ok(())
    }
}

pub fn edge_type_profile(g: &Graph) -> EdgeTypeProfile {
    let deg = degrees(g);
    let edges = g.edges().map(|(u, v)| ((deg[u], deg[v]), 1));
    let mut tally: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in &deg {
        *tally.entry(d).or_insert(0) += 1;
    }
    EdgeTypeProfile::from_counts(g.n(), edges, tally)
}

/// Canonical string of a tree up to isomorphism, or `None` for non-trees.
///
/// Roots the tree at each centroid, encodes the rooted tree with sorted
/// parenthesis strings and keeps the smaller encoding. Two trees are
/// isomorphic iff their codes are equal.
pub fn tree_canonical_code(g: &Graph) -> Option<String> {
    if !is_tree(g) {
        return None;
    }
    centroids(g).into_iter().map(|c| rooted_code(g, c)).min()
}

pub fn trees_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && tree_canonical_code(a).is_some() && tree_canonical_code(a) == tree_canonical_code(b)
}

fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let (order, parent) = bfs_order(g, 0);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if v != 0 {
            size[parent[v]] += size[v];
        }
    }
    let mut best = usize::MAX;
    let mut out = Vec::new();
    for v in 0..n {
        let heaviest = g
            .neighbors(v)
            .iter()
            .filter(|&&w| w != 0 && parent[w] == v)
            .map(|&w| size[w])
            .fold(n - size[v], usize::max);
        match heaviest.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = heaviest;
                out = vec![v];
            }
            std::cmp::Ordering::Equal => out.push(v),
            std::cmp::Ordering::Greater => {}
        }
    }
    out
}

fn bfs_order(g: &Graph, root: usize) -> (Vec<usize>, Vec<usize>) {
    let mut parent = vec![usize::MAX; g.n()];
    parent[root] = root;
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    (order, parent)
}

fn rooted_code(g: &Graph, root: usize) -> String {
    let (order, parent) = bfs_order(g, root);
    let mut codes: Vec<String> = vec![String::new(); g.n()];
    for &v in order.iter().rev() {
        let mut kids: Vec<String> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| w != root && parent[w] == v)
            .map(|&w| std::mem::take(&mut codes[w]))
            .collect();
        kids.sort_unstable();
        codes[v] = format!("({})", kids.concat());
    }
    std::mem::take(&mut codes[root])
}
