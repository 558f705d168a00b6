//! Extremal trees for SO2: paths, stars and the four maximal molecular-tree
//! families `T0..T3`, closed-form bounds, the `m_ij` linear system, and a
//! brute-force verifier driven by the enumerator.

use std::fmt;

use crate::enumeration::{argmax_so2_in, argmin_so2_in, EnumerationError, TreeClass, TreeStream};
use crate::graph::{degrees, edge_type_profile, is_molecular_tree, trees_isomorphic, EdgeTypeProfile, Graph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtremalError {
    #[error("{what} needs n >= {min}, got {n}")]
    TooSmall { what: &'static str, n: usize, min: usize },
    #[error("family residue must be 0..=3, got {0}")]
    BadResidue(usize),
    #[error("family T{residue} needs n = {residue} (mod 4), got n = {n}")]
    ResidueMismatch { residue: usize, n: usize },
    #[error("profile is not realizable by a molecular tree: {quantity} = {value}")]
    Inconsistent { quantity: &'static str, value: Rational },
    #[error("tuple ({0}, {1}, {2}, {3}) does not satisfy m13 + m23 + 2 m33 + m34 = 3")]
    Degree3Constraint(usize, usize, usize, usize),
}

pub fn build_path(n: usize) -> Result<Graph, ExtremalError> {
    if n == 0 {
        return Err(ExtremalError::TooSmall { what: "path", n, min: 1 });
    }
    Ok(Graph::path(n).expect("path on n >= 1 vertices"))
}

pub fn build_star(n: usize) -> Result<Graph, ExtremalError> {
    if n < 2 {
        return Err(ExtremalError::TooSmall { what: "star", n, min: 2 });
    }
    Ok(Graph::star(n).expect("star on n >= 2 vertices"))
}

/// Edge-type signature of the maximal family for `n = residue (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySignature {
    residue: usize,
}

impl FamilySignature {
    pub fn new(residue: usize) -> Result<Self, ExtremalError> {
        if residue > 3 {
            return Err(ExtremalError::BadResidue(residue));
        }
        Ok(FamilySignature { residue })
    }

    pub fn for_n(n: usize) -> Self {
        FamilySignature { residue: n % 4 }
    }

    pub fn residue(self) -> usize {
        self.residue
    }

    /// Smallest `n` with nonnegative signature counts.
    pub fn min_n(self) -> usize {
        [8, 5, 6, 7][self.residue]
    }

    /// Nonzero `m_ij` counts required of a member on `n` vertices.
    pub fn edge_counts(self, n: usize) -> Result<Vec<((usize, usize), usize)>, ExtremalError> {
        if n % 4 != self.residue {
            return Err(ExtremalError::ResidueMismatch { residue: self.residue, n });
        }
        if n < self.min_n() {
            return Err(ExtremalError::TooSmall { what: "family member", n, min: self.min_n() });
        }
        let counts = match self.residue {
            0 => vec![((1, 4), (n + 4) / 2), ((2, 4), (n - 8) / 2), ((4, 4), 1)],
            1 => vec![((1, 4), (n + 3) / 2), ((2, 4), (n - 5) / 2)],
            2 => vec![((1, 2), 1), ((1, 4), n / 2), ((2, 4), (n - 4) / 2)],
            _ => vec![((1, 3), 2), ((1, 4), (n - 1) / 2), ((2, 4), (n - 7) / 2), ((3, 4), 1)],
        };
        Ok(counts.into_iter().filter(|&(_, c)| c > 0).collect())
    }

    /// Full profile (edge and vertex counts) a member on `n` vertices has.
    pub fn profile(self, n: usize) -> Result<EdgeTypeProfile, ExtremalError> {
        let edges = self.edge_counts(n)?;
        let mut incidences = [0usize; 5];
        for &((i, j), c) in &edges {
            incidences[i] += c;
            incidences[j] += c;
        }
        let vertices = (1..=4).map(|d| (d, incidences[d] / d));
        Ok(EdgeTypeProfile::from_counts(n, edges, vertices))
    }
}

/// Canonical member of `T_residue` on `n` vertices: a caterpillar whose spine
/// alternates degree-4 hubs and degree-2 connectors, with the family's special
/// piece (a hub-hub edge, a pendant 2-path, or a degree-3 fork) at the first
/// hub.
pub fn build_family_member(residue: usize, n: usize) -> Result<Graph, ExtremalError> {
    let sig = FamilySignature::new(residue)?;
    sig.edge_counts(n)?;

    let hubs = match residue {
        0 => n / 4,
        _ => (n - residue) / 4,
    };
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = hubs;
    let mut hub_degree = vec![0usize; hubs];
    for h in 1..hubs {
        if residue == 0 && h == 1 {
            edges.push((0, 1));
        } else {
            let connector = next;
            next += 1;
            edges.push((h - 1, connector));
            edges.push((connector, h));
        }
        hub_degree[h - 1] += 1;
        hub_degree[h] += 1;
    }
    match residue {
        2 => {
            edges.push((0, next));
            edges.push((next, next + 1));
            next += 2;
            hub_degree[0] += 1;
        }
        3 => {
            edges.push((0, next));
            edges.push((next, next + 1));
            edges.push((next, next + 2));
            next += 3;
            hub_degree[0] += 1;
        }
        _ => {}
    }
    for (h, &d) in hub_degree.iter().enumerate() {
        for _ in d..4 {
            edges.push((h, next));
            next += 1;
        }
    }
    debug_assert_eq!(next, n);
    Ok(Graph::from_edges(n, &edges).expect("family member is a valid tree"))
}

/// Membership in `T_residue`: a molecular tree on `n = residue (mod 4)`
/// vertices whose degree classes are joined exactly as the family requires.
pub fn is_in_family(g: &Graph, residue: usize) -> bool {
    let n = g.n();
    if residue > 3 || n % 4 != residue || !is_molecular_tree(g) {
        return false;
    }
    let sig = FamilySignature { residue };
    let Ok(profile) = sig.profile(n) else {
        return false;
    };
    let deg = degrees(g);
    let nbr_degrees = |v: usize| {
        let mut ds: Vec<usize> = g.neighbors(v).iter().map(|&w| deg[w]).collect();
        ds.sort_unstable();
        ds
    };

    let mut special_twos = 0;
    let mut threes = 0;
    let mut hub_edges = 0;
    for v in 0..n {
        match deg[v] {
            2 => match nbr_degrees(v).as_slice() {
                [4, 4] => {}
                [1, 4] if residue == 2 => special_twos += 1,
                _ => return false,
            },
            3 => {
                if residue != 3 || nbr_degrees(v) != [1, 1, 4] {
                    return false;
                }
                threes += 1;
            }
            4 => hub_edges += g.neighbors(v).iter().filter(|&&w| w > v && deg[w] == 4).count(),
            _ => {}
        }
    }
    let structure_ok = match residue {
        0 => hub_edges == 1,
        1 => hub_edges == 0,
        2 => hub_edges == 0 && special_twos == 1,
        _ => hub_edges == 0 && threes == 1,
    };
    structure_ok && edge_type_profile(g) == profile
}

/// `(6/5, (n² − 2n)(n − 1)/(n² − 2n + 2))`: SO2 range over trees on `n ≥ 3`
/// vertices, attained by the path and the star.
pub fn tree_so2_bounds(n: usize) -> Result<(Rational, Rational), ExtremalError> {
    if n < 3 {
        return Err(ExtremalError::TooSmall { what: "tree bounds", n, min: 3 });
    }
    let n = n as i64;
    Ok((Rational::new(6, 5), Rational::new((n * n - 2 * n) * (n - 1), n * n - 2 * n + 2)))
}

/// Maximum SO2 over molecular trees on `n ≥ 5` vertices.
pub fn molecular_tree_so2_max(n: usize) -> Result<Rational, ExtremalError> {
    if n < 5 {
        return Err(ExtremalError::TooSmall { what: "molecular tree bound", n, min: 5 });
    }
    let k = n as i64;
    Ok(match n % 4 {
        0 => Rational::new(126 * k - 108, 170),
        1 => Rational::new(126 * k - 30, 170),
        2 => Rational::new(126 * k - 102, 170),
        _ => Rational::new(315 * k - 281, 425),
    })
}

/// `m_14, m_24` and the vertex counts `n_1..n_4` of a molecular tree, solved
/// from `n` and the remaining edge counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MijSolution {
    pub m14: usize,
    pub m24: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
}

fn lin(terms: &[(i64, i64, usize)]) -> Rational {
    terms.iter().map(|&(p, q, c)| Rational::new(p, q) * c as i64).sum()
}

/// Evaluates the closed-form solution of the six incidence equations for the
/// unknowns `m_14, m_24, n_1..n_4`, reading `n` and the other `m_ij` from
/// `p`. Fails if any result is negative or fractional.
///
/// Valid for molecular trees with `n >= 3`, where every vertex has degree
/// 1 to 4 and no edge joins two leaves.
pub fn solve_mij_system(p: &EdgeTypeProfile) -> Result<MijSolution, ExtremalError> {
    let n = p.n();
    let (m12, m13, m22, m23, m33, m34, m44) =
        (p.m(1, 2), p.m(1, 3), p.m(2, 2), p.m(2, 3), p.m(3, 3), p.m(3, 4), p.m(4, 4));
    let base = |a: i64, d: i64| Rational::new(n as i64 + a, d);
    let m14 = base(3, 2)
        + lin(&[(-3, 2, m12), (-7, 6, m13), (-1, 2, m22), (-1, 6, m23), (1, 6, m33), (1, 3, m34), (1, 2, m44)]);
    let m24 = base(-5, 2)
        + lin(&[(1, 2, m12), (1, 6, m13), (-1, 2, m22), (-5, 6, m23), (-7, 6, m33), (-4, 3, m34), (-3, 2, m44)]);
    let n1 = base(3, 2)
        + lin(&[(-1, 2, m12), (-1, 6, m13), (-1, 2, m22), (-1, 6, m23), (1, 6, m33), (1, 3, m34), (1, 2, m44)]);
    let n2 = base(-5, 4)
        + lin(&[(3, 4, m12), (1, 12, m13), (3, 4, m22), (1, 12, m23), (-7, 12, m33), (-2, 3, m34), (-3, 4, m44)]);
    let n3 = lin(&[(1, 3, m13), (1, 3, m23), (2, 3, m33), (1, 3, m34)]);
    let n4 = base(-1, 4)
        + lin(&[(-1, 4, m12), (-1, 4, m13), (-1, 4, m22), (-1, 4, m23), (-1, 4, m33), (1, 4, m44)]);

    let check = |quantity: &'static str, value: Rational| -> Result<usize, ExtremalError> {
        match value.to_i64() {
            Some(v) if v >= 0 => Ok(v as usize),
            _ => Err(ExtremalError::Inconsistent { quantity, value }),
        }
    };
    Ok(MijSolution {
        m14: check("m14", m14)?,
        m24: check("m24", m24)?,
        n1: check("n1", n1)?,
        n2: check("n2", n2)?,
        n3: check("n3", n3)?,
        n4: check("n4", n4)?,
    })
}

/// SO2 of a molecular tree on `n` vertices with `m_14` and `m_24` eliminated:
/// `(126n − 30)/170` minus a positive penalty for every other edge type.
/// Same validity range as [`solve_mij_system`].
pub fn so2_reduced_form(p: &EdgeTypeProfile, n: usize) -> Rational {
    Rational::new(126 * n as i64 - 30, 170)
        - lin(&[
            (36, 85, p.m(1, 2)),
            (11, 85, p.m(1, 3)),
            (63, 85, p.m(2, 2)),
            (58, 221, p.m(2, 3)),
            (47, 85, p.m(3, 3)),
            (96, 425, p.m(3, 4)),
            (39, 85, p.m(4, 4)),
        ])
}

/// SO2 penalty `t` carried by the edges at a lone degree-3 vertex.
pub fn degree3_penalty(m13: usize, m23: usize, m33: usize, m34: usize) -> Result<Rational, ExtremalError> {
    if m13 + m23 + 2 * m33 + m34 != 3 {
        return Err(ExtremalError::Degree3Constraint(m13, m23, m33, m34));
    }
    Ok(lin(&[(11, 85, m13), (58, 221, m23), (47, 85, m33), (96, 425, m34)]))
}

/// The tuples `(m13, m23, m33, m34)` with `m13 + m23 + 2 m33 + m34 = 3` and
/// at least two nonzero entries. Single-entry tuples are left out: `(3,0,0,0)`
/// is only realized by the 4-vertex star, and `(0,3,0,0)`, `(0,0,0,3)` never
/// beat the minimum.
pub fn degree3_tuples() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for m33 in 0..=1 {
        for m13 in 0..=3 {
            for m23 in 0..=3 {
                let used = m13 + m23 + 2 * m33;
                if used > 3 {
                    continue;
                }
                let t = [m13, m23, m33, 3 - used];
                if t.iter().filter(|&&c| c > 0).count() >= 2 {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Outcome of brute-force checking the SO2 extremal results for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRow {
    pub n: usize,
    pub trees: usize,
    pub min_all: Rational,
    pub max_all: Rational,
    pub molecular_trees: usize,
    pub max_molecular: Rational,
    pub molecular_maximizers: Vec<Graph>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub rows: Vec<VerificationRow>,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "n={:<3} trees={:<6} min={} max={} molecular={:<6} max_molecular={} ({:.6}) maximizers={}",
                r.n,
                r.trees,
                r.min_all,
                r.max_all,
                r.molecular_trees,
                r.max_molecular,
                r.max_molecular.to_f64(),
                r.molecular_maximizers.len()
            )?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        write!(f, "{} violations", self.violations.len())
    }
}

/// Checks, for every `3 <= n <= n_max`, that the path is the unique SO2
/// minimizer among all trees, the star the unique maximizer, and (from
/// `n = 5`) that the molecular maximum equals [`molecular_tree_so2_max`] with every
/// maximizer in the matching family. Mismatches are recorded in the report.
pub fn verify_extremal_bounds(n_max: usize, cap: usize) -> Result<VerificationReport, EnumerationError> {
    let mut report = VerificationReport::default();
    if n_max >= 2 {
        report
            .notes
            .push("n=2: the single edge has SO2 = 0, below 6/5; the tree bounds start at n=3".into());
    }
    for n in 3..=n_max {
        let all = TreeStream::new(n, TreeClass::All, cap)?;
        let molecular = TreeStream::new(n, TreeClass::Molecular, cap)?;
        let (lower, upper) = tree_so2_bounds(n).expect("n >= 3");
        let path = build_path(n).expect("n >= 3");
        let star = build_star(n).expect("n >= 3");

        let min = argmin_so2_in(&all);
        if min.value != lower {
            report.violations.push(format!("n={n}: minimum {} differs from 6/5", min.value));
        }
        if min.attainers.len() != 1 || !trees_isomorphic(&min.attainers[0], &path) {
            report.violations.push(format!("n={n}: minimizers are not exactly the path"));
        }
        let max = argmax_so2_in(&all);
        if max.value != upper {
            report.violations.push(format!("n={n}: maximum {} differs from bound {upper}", max.value));
        }
        if max.attainers.len() != 1 || !trees_isomorphic(&max.attainers[0], &star) {
            report.violations.push(format!("n={n}: maximizers are not exactly the star"));
        }

        let mol = argmax_so2_in(&molecular);
        if n >= 5 {
            let bound = molecular_tree_so2_max(n).expect("n >= 5");
            if mol.value != bound {
                report
                    .violations
                    .push(format!("n={n}: molecular maximum {} differs from bound {bound}", mol.value));
            }
            for g in &mol.attainers {
                if !is_in_family(g, n % 4) {
                    report
                        .violations
                        .push(format!("n={n}: maximizer {} is not in T{}", g.to_edge_line(), n % 4));
                }
            }
            if n % 4 == 0 && n < 12 {
                report.notes.push(format!(
                    "n={n}: T0 signature has m24 = 0; maximizer set reported as found ({} tree(s), {} in T0)",
                    mol.attainers.len(),
                    mol.attainers.iter().filter(|g| is_in_family(g, 0)).count()
                ));
            }
        }

        report.rows.push(VerificationRow {
            n,
            trees: all.count() as usize,
            min_all: min.value,
            max_all: max.value,
            molecular_trees: molecular.count() as usize,
            max_molecular: mol.value,
            molecular_maximizers: mol.attainers,
        });
    }
    Ok(report)
}
