//! Alkane SMILES (carbon skeletons only) and molecule property datasets.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use crate::graph::Graph;
use crate::indices::so2;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmilesError {
    #[error("empty SMILES string")]
    Empty,
    #[error("unsupported character {ch:?} at position {pos}")]
    Unsupported { ch: char, pos: usize },
    #[error("branch opened before the first atom at position {pos}")]
    BranchBeforeAtom { pos: usize },
    #[error("unmatched ')' at position {pos}")]
    UnmatchedClose { pos: usize },
    #[error("unclosed '(' opened at position {pos}")]
    Unclosed { pos: usize },
    #[error("empty branch '()' at position {pos}")]
    EmptyBranch { pos: usize },
    #[error("carbon at position {pos} would exceed valence 4")]
    Valence { pos: usize },
}

/// Parses a hydrogen-suppressed acyclic alkane written with `C`, `(` and `)`.
///
/// Vertices are numbered in token order. Any atom reaching degree five is
/// rejected, so the result is always a molecular tree.
pub fn parse_alkane_smiles(s: &str) -> Result<Graph, SmilesError> {
    if s.is_empty() {
        return Err(SmilesError::Empty);
    }
    let mut edges = Vec::new();
    let mut degree: Vec<usize> = Vec::new();
    let mut atom_pos: Vec<usize> = Vec::new();
    // (atom the branch hangs from, position of '(', atoms seen when opened)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    let mut prev: Option<usize> = None;

    for (pos, ch) in s.chars().enumerate() {
        match ch {
            'C' => {
                let v = degree.len();
                degree.push(0);
                atom_pos.push(pos);
                if let Some(u) = prev {
                    for w in [u, v] {
                        degree[w] += 1;
                        if degree[w] > 4 {
                            return Err(SmilesError::Valence { pos: atom_pos[w] });
                        }
                    }
                    edges.push((u, v));
                }
                prev = Some(v);
            }
            '(' => {
                let u = prev.ok_or(SmilesError::BranchBeforeAtom { pos })?;
                stack.push((u, pos, degree.len()));
            }
            ')' => {
                let (u, _, atoms_before) = stack.pop().ok_or(SmilesError::UnmatchedClose { pos })?;
                if degree.len() == atoms_before {
                    return Err(SmilesError::EmptyBranch { pos });
                }
                prev = Some(u);
            }
            _ => return Err(SmilesError::Unsupported { ch, pos }),
        }
    }
    if let Some(&(_, pos, _)) = stack.last() {
        return Err(SmilesError::Unclosed { pos });
    }
    if degree.is_empty() {
        return Err(SmilesError::Empty);
    }
    Ok(Graph::from_edges(degree.len(), &edges).expect("parser emits a simple tree"))
}

/// Writes a tree back as alkane SMILES by depth-first traversal from vertex 0.
/// The last neighbor of each atom continues the main chain, the others become
/// branches. Returns `None` if `g` is not a tree.
pub fn to_alkane_smiles(g: &Graph) -> Option<String> {
    if !crate::graph::is_tree(g) {
        return None;
    }
    fn walk(g: &Graph, v: usize, parent: Option<usize>, out: &mut String) {
        out.push('C');
        let kids: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| Some(w) != parent).collect();
        if let Some((&last, rest)) = kids.split_last() {
            for &w in rest {
                out.push('(');
                walk(g, w, Some(v), out);
                out.push(')');
            }
            walk(g, last, Some(v), out);
        }
    }
    let mut out = String::with_capacity(3 * g.n());
    walk(g, 0, None, &mut out);
    Some(out)
}

/// A named molecule with its skeleton and experimental property values.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeRecord {
    pub name: String,
    pub smiles: String,
    pub properties: BTreeMap<String, f64>,
}

impl MoleculeRecord {
    pub fn graph(&self) -> Result<Graph, SmilesError> {
        parse_alkane_smiles(&self.smiles)
    }

    pub fn property(&self, key: &str) -> Option<f64> {
        self.properties.get(key).copied()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("cannot read dataset: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("header must start with \"name,smiles\", found {0:?}")]
    Header(String),
    #[error("row {row}: column {column:?} is not a number: {value:?}")]
    Numeric { row: usize, column: String, value: String },
    #[error("row {row}: empty molecule name")]
    EmptyName { row: usize },
    #[error("row {row}: duplicate molecule name {name:?}")]
    DuplicateName { row: usize, name: String },
    #[error("row {row} ({name}): {source}")]
    Smiles {
        row: usize,
        name: String,
        #[source]
        source: SmilesError,
    },
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<Vec<MoleculeRecord>, DatasetError> {
    let text = std::fs::read_to_string(path)?;
    parse_dataset(&text)
}

/// Parses dataset text: header `name,smiles,<property>...`, one molecule per
/// row. Empty cells leave the property absent. Rows are numbered from 1 for
/// the first data row.
pub fn parse_dataset(text: &str) -> Result<Vec<MoleculeRecord>, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.len() < 2 || header[0] != "name" || header[1] != "smiles" {
        return Err(DatasetError::Header(header.join(",")));
    }
    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row_no = i + 1;
        let row = row?;
        let name = row[0].to_string();
        if name.is_empty() {
            return Err(DatasetError::EmptyName { row: row_no });
        }
        if !seen.insert(name.clone()) {
            return Err(DatasetError::DuplicateName { row: row_no, name });
        }
        let smiles = row[1].to_string();
        parse_alkane_smiles(&smiles).map_err(|source| DatasetError::Smiles {
            row: row_no,
            name: name.clone(),
            source,
        })?;
        let mut properties = BTreeMap::new();
        for (column, cell) in header.iter().zip(row.iter()).skip(2) {
            if cell.is_empty() {
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| DatasetError::Numeric {
                row: row_no,
                column: column.clone(),
                value: cell.to_string(),
            })?;
            properties.insert(column.clone(), value);
        }
        records.push(MoleculeRecord { name, smiles, properties });
    }
    Ok(records)
}

/// Writes records in the dataset format, columns in `property_order`.
pub fn write_dataset(records: &[MoleculeRecord], property_order: &[&str]) -> Result<String, DatasetError> {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut header = vec!["name", "smiles"];
    header.extend_from_slice(property_order);
    writer.write_record(&header)?;
    for r in records {
        let mut row = vec![r.name.clone(), r.smiles.clone()];
        row.extend(property_order.iter().map(|p| r.property(p).map(|v| v.to_string()).unwrap_or_default()));
        writer.write_record(&row)?;
    }
    let bytes = writer.into_inner().map_err(|e| DatasetError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV writer emits UTF-8"))
}

/// Exact SO2 of every record, in input order.
pub fn so2_table(records: &[MoleculeRecord]) -> Result<Vec<(String, Rational)>, SmilesError> {
    records
        .iter()
        .map(|r| {
            let g = r.graph()?;
            Ok((r.name.clone(), so2(&g).exact.expect("SO2 is exact")))
        })
        .collect()
}
