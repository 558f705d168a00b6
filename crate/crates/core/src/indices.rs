//! Vertex-degree-based indices `TI(G) = Σ_{uv ∈ E} F(d(u), d(v))`.
//!
//! SO2, M1, M2, F and SDD have rational edge terms and are summed exactly.
//! SO, R and SCI involve square roots and are summed in `f64`.

use std::fmt;
use std::str::FromStr;

use crate::graph::{degrees, EdgeTypeProfile, Graph};
use crate::rational::Rational;

/// Edge kernel `F(x, y)` of a degree-based index. Every rule is symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VdbKernel {
    /// Second Sombor index: `|x² − y²| / (x² + y²)`.
    So2,
    /// Sombor index: `sqrt(x² + y²)`.
    So,
    /// First Zagreb index, edge form: `x + y`.
    M1,
    /// Second Zagreb index: `x · y`.
    M2,
    /// Forgotten index: `x² + y²`.
    F,
    /// Randić connectivity index: `1 / sqrt(x · y)`.
    R,
    /// Sum-connectivity index: `1 / sqrt(x + y)`.
    Sci,
    /// Symmetric division deg index: `x/y + y/x`.
    Sdd,
}

impl VdbKernel {
    pub const ALL: [VdbKernel; 8] = [
        VdbKernel::So2,
        VdbKernel::So,
        VdbKernel::M1,
        VdbKernel::M2,
        VdbKernel::F,
        VdbKernel::R,
        VdbKernel::Sci,
        VdbKernel::Sdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VdbKernel::So2 => "SO2",
            VdbKernel::So => "SO",
            VdbKernel::M1 => "M1",
            VdbKernel::M2 => "M2",
            VdbKernel::F => "F",
            VdbKernel::R => "R",
            VdbKernel::Sci => "SCI",
            VdbKernel::Sdd => "SDD",
        }
    }

    pub fn is_rational(self) -> bool {
        !matches!(self, VdbKernel::So | VdbKernel::R | VdbKernel::Sci)
    }

    /// Exact edge term, `None` for the irrational kernels.
    ///
    /// Degrees must be positive; every endpoint of an edge has degree ≥ 1.
    pub fn exact(self, x: usize, y: usize) -> Option<Rational> {
        let (x, y) = (x as i64, y as i64);
        match self {
            VdbKernel::So2 => Some(Rational::new((x * x - y * y).abs(), x * x + y * y)),
            VdbKernel::M1 => Some(Rational::from_integer(x + y)),
            VdbKernel::M2 => Some(Rational::from_integer(x * y)),
            VdbKernel::F => Some(Rational::from_integer(x * x + y * y)),
            VdbKernel::Sdd => Some(Rational::new(x * x + y * y, x * y)),
            VdbKernel::So | VdbKernel::R | VdbKernel::Sci => None,
        }
    }

    pub fn approx(self, x: usize, y: usize) -> f64 {
        let (xf, yf) = (x as f64, y as f64);
        match self {
            VdbKernel::So => (xf * xf + yf * yf).sqrt(),
            VdbKernel::R => 1.0 / (xf * yf).sqrt(),
            VdbKernel::Sci => 1.0 / (xf + yf).sqrt(),
            _ => self.exact(x, y).expect("rational kernel").to_f64(),
        }
    }
}

impl fmt::Display for VdbKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Value of an index: the exact rational when the kernel is rational, and
/// its nearest `f64` in every case.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexValue {
    pub exact: Option<Rational>,
    pub approx: f64,
}

impl IndexValue {
    pub fn from_exact(exact: Rational) -> Self {
        let approx = exact.to_f64();
        IndexValue { exact: Some(exact), approx }
    }

    pub fn from_approx(approx: f64) -> Self {
        IndexValue { exact: None, approx }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{} ({})", r, self.approx),
            None => write!(f, "{}", self.approx),
        }
    }
}

/// `|i² − j²| / (i² + j²)`, the SO2 contribution of one edge.
pub fn so2_edge_term(i: usize, j: usize) -> Rational {
    VdbKernel::So2.exact(i, j).expect("SO2 is rational")
}

pub fn so2(g: &Graph) -> IndexValue {
    vdb_index(g, VdbKernel::So2)
}

/// SO2 from the edge-type counts alone: `Σ_{i≤j} m_ij |i² − j²| / (i² + j²)`.
pub fn so2_from_profile(p: &EdgeTypeProfile) -> Rational {
    p.edge_counts()
        .iter()
        .map(|(&(i, j), &c)| so2_edge_term(i, j) * c as i64)
        .sum()
}

pub fn vdb_index(g: &Graph, kernel: VdbKernel) -> IndexValue {
    let deg = degrees(g);
    if kernel.is_rational() {
        // group edges by degree pair so each distinct term is built once
        let mut pairs: std::collections::BTreeMap<(usize, usize), i64> = Default::default();
        for (u, v) in g.edges() {
            let (a, b) = (deg[u].min(deg[v]), deg[u].max(deg[v]));
            *pairs.entry((a, b)).or_insert(0) += 1;
        }
        let total: Rational = pairs
            .into_iter()
            .map(|((a, b), c)| kernel.exact(a, b).expect("rational kernel") * c)
            .sum();
        IndexValue::from_exact(total)
    } else {
        IndexValue::from_approx(g.edges().map(|(u, v)| kernel.approx(deg[u], deg[v])).sum())
    }
}

/// Neighborhood Zagreb index `M_N = Σ_v S(v)²` where `S(v)` is the sum of the
/// degrees of the neighbors of `v`.
pub fn neighborhood_zagreb(g: &Graph) -> IndexValue {
    let deg = degrees(g);
    let total: i64 = (0..g.n())
        .map(|v| {
            let s: usize = g.neighbors(v).iter().map(|&w| deg[w]).sum();
            (s * s) as i64
        })
        .sum();
    IndexValue::from_exact(Rational::from_integer(total))
}

/// Any index the toolkit can evaluate on a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexKind {
    Vdb(VdbKernel),
    NeighborhoodZagreb,
}

impl IndexKind {
    pub const ALL: [IndexKind; 9] = [
        IndexKind::Vdb(VdbKernel::So2),
        IndexKind::Vdb(VdbKernel::So),
        IndexKind::Vdb(VdbKernel::M1),
        IndexKind::Vdb(VdbKernel::M2),
        IndexKind::Vdb(VdbKernel::F),
        IndexKind::Vdb(VdbKernel::R),
        IndexKind::Vdb(VdbKernel::Sci),
        IndexKind::Vdb(VdbKernel::Sdd),
        IndexKind::NeighborhoodZagreb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IndexKind::Vdb(k) => k.name(),
            IndexKind::NeighborhoodZagreb => "MN",
        }
    }

    pub fn evaluate(self, g: &Graph) -> IndexValue {
        match self {
            IndexKind::Vdb(k) => vdb_index(g, k),
            IndexKind::NeighborhoodZagreb => neighborhood_zagreb(g),
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown index {0:?} (expected one of so2, so, m1, m2, f, r, sci, sdd, mn)")]
pub struct UnknownIndex(pub String);

impl FromStr for IndexKind {
    type Err = UnknownIndex;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kind = match s.to_ascii_lowercase().as_str() {
            "so2" => IndexKind::Vdb(VdbKernel::So2),
            "so" => IndexKind::Vdb(VdbKernel::So),
            "m1" => IndexKind::Vdb(VdbKernel::M1),
            "m2" => IndexKind::Vdb(VdbKernel::M2),
            "f" => IndexKind::Vdb(VdbKernel::F),
            "r" => IndexKind::Vdb(VdbKernel::R),
            "sci" => IndexKind::Vdb(VdbKernel::Sci),
            "sdd" => IndexKind::Vdb(VdbKernel::Sdd),
            "mn" => IndexKind::NeighborhoodZagreb,
            _ => return Err(UnknownIndex(s.to_string())),
        };
        Ok(kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("minimum degree must be positive and at most the maximum degree (got δ={min_degree}, Δ={max_degree})")]
pub struct BoundError {
    pub min_degree: usize,
    pub max_degree: usize,
}

/// Upper bound `m (Δ² − δ²) / (Δ² + δ²)` on SO2 of a graph with `m` edges,
/// minimum degree `δ` and maximum degree `Δ`.
pub fn so2_degree_bound(m: usize, min_degree: usize, max_degree: usize) -> Result<Rational, BoundError> {
    if min_degree == 0 || min_degree > max_degree {
        return Err(BoundError { min_degree, max_degree });
    }
    Ok(so2_edge_term(min_degree, max_degree) * m as i64)
}
