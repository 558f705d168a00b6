//! Command-line front end. [`run`] never touches the process streams; the
//! binary prints the returned [`OutputEnvelope`].

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::chem_io::{load_dataset, parse_alkane_smiles};
use crate::enumeration::{argmax_so2_in, cap_from_env, TreeClass, TreeStream};
use crate::extremal::{
    build_family_member, molecular_tree_so2_max, tree_so2_bounds, verify_extremal_bounds, FamilySignature,
};
use crate::graph::{degrees, edge_type_profile, Graph};
use crate::indices::{IndexKind, IndexValue};
use crate::qspr::{index_column, linear_fit, target_column, Target};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Count,
    Edgelist,
}

#[derive(Debug, Parser)]
#[command(name = "sombor", version, about = "Second Sombor index toolkit for (molecular) trees")]
struct Cli {
    /// Output layout.
    #[arg(long, value_enum, global = true, default_value = "plain")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an index on one graph.
    Compute {
        /// so2, so, m1, m2, f, r, sci, sdd or mn.
        #[arg(long, default_value = "so2")]
        index: IndexKind,
        /// File holding an edge list ("n m" header) or an alkane SMILES string.
        #[arg(long, conflicts_with = "smiles", required_unless_present = "smiles")]
        input: Option<PathBuf>,
        #[arg(long)]
        smiles: Option<String>,
    },
    /// Enumerate non-isomorphic trees on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Only trees with maximum degree at most four.
        #[arg(long)]
        molecular: bool,
        #[arg(long, value_enum, default_value = "count")]
        emit: Emit,
    },
    /// Extremal SO2 bounds, family members and brute-force verification.
    Extremal {
        #[arg(long)]
        n: Option<usize>,
        /// Check every n from 3 up to this value against the enumerator.
        #[arg(long)]
        verify_up_to: Option<usize>,
        /// Print the canonical member of family T0..T3 on n vertices.
        #[arg(long, requires = "n")]
        family: Option<usize>,
        /// Print every molecular tree on n vertices attaining the maximum.
        #[arg(long, requires = "n")]
        emit_maximizers: bool,
    },
    /// Least-squares fit of a dataset property against an index.
    Fit {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value = "so2")]
        index: IndexKind,
        #[arg(long)]
        property: String,
        /// Also print per-molecule (x, y, fitted y) rows.
        #[arg(long)]
        emit_points: bool,
    },
    /// Parse an alkane SMILES string into an edge list.
    Parse {
        #[arg(long)]
        smiles: String,
    },
}

/// Everything a command produced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OutputEnvelope {
    pub command: String,
    pub stdout: String,
    pub stderr: String,
    pub warnings: Vec<String>,
    /// 0 on success, 1 for domain errors, 2 for usage errors.
    pub exit_code: i32,
}

type CmdResult = Result<(), Box<dyn std::error::Error>>;

pub fn run<I, T>(argv: I) -> OutputEnvelope
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let mut env = OutputEnvelope {
        command: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" "),
        ..Default::default()
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                env.stderr = text;
                env.exit_code = 2;
            } else {
                env.stdout = text;
            }
            return env;
        }
    };
    let mut out = String::new();
    let result = dispatch(cli, &mut out, &mut env.warnings);
    env.stdout = out;
    for w in &env.warnings {
        let _ = writeln!(env.stderr, "warning: {w}");
    }
    if let Err(e) = result {
        let _ = writeln!(env.stderr, "error: {e}");
        env.exit_code = 1;
    }
    env
}

fn dispatch(cli: Cli, out: &mut String, warnings: &mut Vec<String>) -> CmdResult {
    let format = cli.format;
    match cli.command {
        Command::Compute { index, input, smiles } => {
            let g = match (input, smiles) {
                (_, Some(s)) => parse_alkane_smiles(&s)?,
                (Some(path), None) => read_graph(&path)?,
                (None, None) => unreachable!("clap requires one input"),
            };
            compute(out, format, index, &g);
        }
        Command::Enumerate { n, molecular, emit } => {
            let class = if molecular { TreeClass::Molecular } else { TreeClass::All };
            let stream = TreeStream::new(n, class, cap_from_env())?;
            match emit {
                Emit::Count => {
                    let _ = writeln!(out, "{}", stream.count());
                }
                Emit::Edgelist => {
                    for g in stream.iter() {
                        let line = g.to_edge_line();
                        let _ = match format {
                            Format::Plain => writeln!(out, "{line}"),
                            Format::Tsv => writeln!(out, "{}", line.replace(' ', "\t")),
                        };
                    }
                }
            }
        }
        Command::Extremal { n, verify_up_to, family, emit_maximizers } => {
            if n.is_none() && verify_up_to.is_none() {
                return Err("extremal needs --n and/or --verify-up-to".into());
            }
            if let Some(n) = n {
                extremal_for_n(out, format, n, family, emit_maximizers, warnings)?;
            }
            if let Some(k) = verify_up_to {
                let report = verify_extremal_bounds(k, cap_from_env())?;
                let _ = writeln!(out, "{report}");
            }
        }
        Command::Fit { dataset, index, property, emit_points } => {
            let records = load_dataset(&dataset)?;
            let xs = index_column(&records, index)?;
            let ys = target_column(&records, &Target::Property(property.clone()))?;
            let fit = linear_fit(&xs, &ys)?;
            let rows = [
                ("index", index.name().to_string()),
                ("property", property),
                ("sample_size", fit.sample_size.to_string()),
                ("slope", fit.slope.to_string()),
                ("intercept", fit.intercept.to_string()),
                ("r_squared", fit.r_squared.to_string()),
                ("correlation", fit.correlation.to_string()),
            ];
            for (k, v) in rows {
                kv(out, format, k, &v);
            }
            if emit_points {
                let _ = writeln!(out, "name\tx\ty\ty_fit");
                for ((r, x), y) in records.iter().zip(&xs).zip(&ys) {
                    let _ = writeln!(out, "{}\t{}\t{}\t{}", r.name, x, y, fit.predict(*x));
                }
            }
        }
        Command::Parse { smiles } => {
            let g = parse_alkane_smiles(&smiles)?;
            out.push_str(&g.to_edge_list());
            let degs: Vec<String> = degrees(&g).iter().map(ToString::to_string).collect();
            match format {
                Format::Plain => {
                    let _ = writeln!(out, "degrees: {}", degs.join(" "));
                }
                Format::Tsv => {
                    let _ = writeln!(out, "degrees\t{}", degs.join("\t"));
                }
            }
        }
    }
    Ok(())
}

fn read_graph(path: &PathBuf) -> Result<Graph, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)?;
    let trimmed = text.trim();
    if !trimmed.is_empty() && trimmed.chars().all(|c| matches!(c, 'C' | '(' | ')')) {
        Ok(parse_alkane_smiles(trimmed)?)
    } else {
        Ok(Graph::parse_edge_list(&text)?)
    }
}

fn kv(out: &mut String, format: Format, key: &str, value: &str) {
    let _ = match format {
        Format::Plain => writeln!(out, "{key:<20} {value}"),
        Format::Tsv => writeln!(out, "{key}\t{value}"),
    };
}

fn exact_with_decimal(r: &Rational) -> String {
    format!("{} ({})", r, r.to_f64())
}

fn compute(out: &mut String, format: Format, index: IndexKind, g: &Graph) {
    let value: IndexValue = index.evaluate(g);
    match format {
        Format::Plain => {
            let _ = writeln!(out, "{value}");
        }
        Format::Tsv => {
            let exact = value.exact.as_ref().map(ToString::to_string).unwrap_or_default();
            let _ = writeln!(out, "index\texact\tdecimal");
            let _ = writeln!(out, "{}\t{}\t{}", index.name(), exact, value.approx);
        }
    }
}

fn extremal_for_n(
    out: &mut String,
    format: Format,
    n: usize,
    family: Option<usize>,
    emit_maximizers: bool,
    warnings: &mut Vec<String>,
) -> CmdResult {
    kv(out, format, "n", &n.to_string());
    match tree_so2_bounds(n) {
        Ok((lower, upper)) => {
            kv(out, format, "tree_min", &exact_with_decimal(&lower));
            kv(out, format, "tree_max", &exact_with_decimal(&upper));
        }
        Err(e) => warnings.push(e.to_string()),
    }
    match molecular_tree_so2_max(n) {
        Ok(max) => {
            kv(out, format, "molecular_max", &exact_with_decimal(&max));
            kv(out, format, "extremal_family", &format!("T{}", FamilySignature::for_n(n).residue()));
        }
        Err(e) => warnings.push(e.to_string()),
    }
    if let Some(residue) = family {
        let g = build_family_member(residue, n)?;
        let profile = edge_type_profile(&g);
        let counts: Vec<String> = profile
            .edge_counts()
            .iter()
            .map(|(&(i, j), &c)| format!("m{i}{j}={c}"))
            .collect();
        kv(out, format, "family_profile", &counts.join(" "));
        let so2 = crate::indices::so2(&g).exact.expect("SO2 is exact");
        kv(out, format, "family_so2", &exact_with_decimal(&so2));
        kv(out, format, "family_member", &g.to_edge_line());
    }
    if emit_maximizers {
        let stream = TreeStream::new(n, TreeClass::Molecular, cap_from_env())?;
        let best = argmax_so2_in(&stream);
        kv(out, format, "maximizers", &best.attainers.len().to_string());
        for g in &best.attainers {
            kv(out, format, "maximizer", &g.to_edge_line());
        }
    }
    Ok(())
}
