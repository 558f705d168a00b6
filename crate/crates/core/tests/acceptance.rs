//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sombor::chem_io::{load_dataset, so2_table, MoleculeRecord};
use sombor::enumeration::{argmax_so2_in, argmin_so2_in, TreeClass, TreeStream, DEFAULT_MAX_N};
use sombor::extremal::{
    build_path, build_star, degree3_penalty, degree3_tuples, is_in_family, molecular_tree_so2_max,
    so2_reduced_form, solve_mij_system, tree_so2_bounds,
};
use sombor::graph::{edge_type_profile, trees_isomorphic};
use sombor::indices::{so2, so2_degree_bound, IndexKind, VdbKernel};
use sombor::qspr::{index_column, linear_fit, target_column, Target};
use sombor::Rational;

const OCTANES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/octane_isomers.csv");

/// Printed SO2 values of the 18 octane isomers.
const PRINTED_SO2: [(&str, f64); 18] = [
    ("octane", 1.2),
    ("2-methyl-heptane", 2.5846),
    ("3-methyl-heptane", 2.7692),
    ("4-methyl-heptane", 2.7692),
    ("3-ethyl-hexane", 2.9538),
    ("2,2-dimethyl-hexane", 3.8471),
    ("2,3-dimethyl-hexane", 3.3846),
    ("2,4-dimethyl-hexane", 4.1538),
    ("2,5-dimethyl-hexane", 3.9692),
    ("3,3-dimethyl-hexane", 4.1647),
    ("3,4-dimethyl-hexane", 3.5692),
    ("2-methyl-3-ethyl-pentane", 3.5692),
    ("3-methyl-3-ethyl-pentane", 4.4824),
    ("2,2,3-trimethyl-pentane", 4.7117),
    ("2,2,4-trimethyl-pentane", 5.2317),
    ("2,3,3-trimethyl-pentane", 4.8447),
    ("2,3,4-trimethyl-pentane", 4.0),
    ("2,2,3,3-tetramethylbutane", 5.2941),
];

/// Printed t-values of the degree-3 penalty, keyed by (m13, m23, m33, m34).
const PRINTED_T: [([usize; 4], f64); 10] = [
    ([1, 1, 0, 1], 0.617715),
    ([1, 0, 1, 0], 0.682341),
    ([0, 1, 1, 0], 0.815374),
    ([0, 0, 1, 1], 0.778823),
    ([2, 1, 0, 0], 0.521233),
    ([1, 2, 0, 0], 0.654266),
    ([1, 0, 0, 2], 0.581164),
    ([2, 0, 0, 1], 0.484682),
    ([0, 2, 0, 1], 0.750748),
    ([0, 1, 0, 2], 0.714197),
];

/// (property, intercept, slope, printed correlation figure)
const PRINTED_FITS: [(&str, f64, f64, f64); 4] = [
    ("AcenFac", 0.4536, -0.0314, 0.9202),
    ("S", 119.1755, -3.6697, 0.8433),
    ("SNar", 4.6576, -0.3003, 0.9356),
    ("HNar", 1.7137, -0.0815, 0.9512),
];

const SO2_TOL: f64 = 1e-4;
const TABLE_T_TOL: f64 = 1e-4;
const FIT_TOL: f64 = 5e-3;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn octanes() -> Result<Vec<MoleculeRecord>, String> {
    load_dataset(OCTANES).map_err(|e| e.to_string())
}

fn c1_octane_table() -> Outcome {
    let start = Instant::now();
    let records = octanes()?;
    let table = so2_table(&records).map_err(|e| e.to_string())?;
    ensure(table.len() == 18, || format!("{} molecules", table.len()))?;
    let values: BTreeMap<&str, &Rational> = table.iter().map(|(n, v)| (n.as_str(), v)).collect();
    let mut worst = 0.0f64;
    for (name, printed) in PRINTED_SO2 {
        let v = values.get(name).ok_or_else(|| format!("missing {name}"))?;
        let err = (v.to_f64() - printed).abs();
        worst = worst.max(err);
        ensure(err <= SO2_TOL, || format!("{name}: {} vs printed {printed}", v.to_f64()))?;
    }
    // exactly two pairs of exact ties
    let mut ties = Vec::new();
    for (i, (a, va)) in table.iter().enumerate() {
        for (b, vb) in &table[i + 1..] {
            if va == vb {
                ties.push((a.as_str(), b.as_str()));
            }
        }
    }
    let expected = vec![
        ("3-methyl-heptane", "4-methyl-heptane"),
        ("3,4-dimethyl-hexane", "2-methyl-3-ethyl-pentane"),
    ];
    ensure(ties == expected, || format!("ties {ties:?}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("18/18 within {SO2_TOL:e} (worst {worst:.2e}); exact ties {ties:?}; {:?}", start.elapsed()))
}

fn c2_tree_bounds() -> Outcome {
    let start = Instant::now();
    for n in 3..=12 {
        let stream = TreeStream::new(n, TreeClass::All, DEFAULT_MAX_N).map_err(|e| e.to_string())?;
        let (lower, upper) = tree_so2_bounds(n).map_err(|e| e.to_string())?;
        let min = argmin_so2_in(&stream);
        let max = argmax_so2_in(&stream);
        let path = build_path(n).unwrap();
        let star = build_star(n).unwrap();
        ensure(min.value == lower, || format!("n={n}: min {}", min.value))?;
        ensure(min.attainers.len() == 1 && trees_isomorphic(&min.attainers[0], &path), || {
            format!("n={n}: minimizers {:?}", min.attainers)
        })?;
        ensure(max.value == upper, || format!("n={n}: max {} vs {upper}", max.value))?;
        ensure(max.attainers.len() == 1 && trees_isomorphic(&max.attainers[0], &star), || {
            format!("n={n}: maximizers {:?}", max.attainers)
        })?;
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("3<=n<=12: min 6/5 only at P_n, max only at S_n; {:?}", start.elapsed()))
}

fn c3_molecular_maximum() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for n in 5..=14 {
        let stream = TreeStream::new(n, TreeClass::Molecular, DEFAULT_MAX_N).map_err(|e| e.to_string())?;
        let best = argmax_so2_in(&stream);
        let bound = molecular_tree_so2_max(n).map_err(|e| e.to_string())?;
        ensure(best.value == bound, || format!("n={n}: max {} vs bound {bound}", best.value))?;
        for g in &best.attainers {
            ensure(is_in_family(g, n % 4), || format!("n={n}: {g:?} not in T{}", n % 4))?;
        }
        if n == 8 {
            let p = edge_type_profile(&best.attainers[0]);
            notes.push(format!(
                "n=8 degenerate T0 (m24=0): {} maximizer(s), m14={} m44={}",
                best.attainers.len(),
                p.m(1, 4),
                p.m(4, 4)
            ));
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("5<=n<=14 maxima exact, all maximizers in T_(n mod 4); {}; {:?}", notes.join("; "), start.elapsed()))
}

fn c4_linear_system() -> Outcome {
    let mut checked = 0;
    for n in 3..=12 {
        let stream = TreeStream::new(n, TreeClass::Molecular, DEFAULT_MAX_N).map_err(|e| e.to_string())?;
        for g in stream.iter() {
            let p = edge_type_profile(&g);
            let s = solve_mij_system(&p).map_err(|e| format!("{g:?}: {e}"))?;
            let direct = [
                p.m(1, 4),
                p.m(2, 4),
                p.vertices_of_degree(1),
                p.vertices_of_degree(2),
                p.vertices_of_degree(3),
                p.vertices_of_degree(4),
            ];
            ensure([s.m14, s.m24, s.n1, s.n2, s.n3, s.n4] == direct, || format!("{g:?}: {s:?}"))?;
            let exact = so2(&g).exact.unwrap();
            ensure(so2_reduced_form(&p, n) == exact, || format!("{g:?}: reduced form"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} molecular trees (3<=n<=12), zero exceptions"))
}

fn c5_degree3_table() -> Outcome {
    let tuples = degree3_tuples();
    ensure(tuples.len() == 10, || format!("{} tuples", tuples.len()))?;
    let mut worst = 0.0f64;
    for (t, printed) in PRINTED_T {
        ensure(tuples.contains(&t), || format!("{t:?} not enumerated"))?;
        let exact = degree3_penalty(t[0], t[1], t[2], t[3]).map_err(|e| e.to_string())?;
        let err = (exact.to_f64() - printed).abs();
        worst = worst.max(err);
        ensure(err <= TABLE_T_TOL, || format!("{t:?}: {} vs {printed}", exact.to_f64()))?;
    }
    let best = tuples
        .iter()
        .min_by_key(|t| degree3_penalty(t[0], t[1], t[2], t[3]).unwrap())
        .unwrap();
    ensure(*best == [2, 0, 0, 1], || format!("minimum at {best:?}"))?;
    Ok(format!("10 tuples, worst |exact - printed| = {worst:.2e}, minimum at (2,0,0,1) = 206/425"))
}

fn c6_degree_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2021);
    let mut zeros = 0;
    for i in 0..10_000 {
        let n = 1 + i % 12;
        let g = common::random_graph(n, [0.15, 0.3, 0.5, 0.7, 0.9][i % 5], &mut rng);
        let value = so2(&g).exact.unwrap();
        ensure(!value.is_negative(), || format!("{g:?}: negative"))?;
        // isolated vertices add nothing to SO2 or m; take degrees over the rest
        let live: Vec<usize> = (0..n).map(|v| g.degree(v)).filter(|&d| d > 0).collect();
        if let (Some(&lo), Some(&hi)) = (live.iter().min(), live.iter().max()) {
            let bound = so2_degree_bound(g.edge_count(), lo, hi).unwrap();
            ensure(value <= bound, || format!("{g:?}: {value} > {bound}"))?;
        }
        let regular = g.components().iter().all(|c| c.iter().all(|&v| g.degree(v) == g.degree(c[0])));
        ensure(value.is_zero() == regular, || format!("{g:?}: zero/regular mismatch"))?;
        zeros += usize::from(regular);
    }
    Ok(format!("10000 random graphs (n<=12); {zeros} with SO2 = 0, all component-regular"))
}

fn c7_counts() -> Outcome {
    const FREE: [u64; 14] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159];
    const QUARTIC: [u64; 16] = [1, 1, 1, 2, 3, 5, 9, 18, 35, 75, 159, 355, 802, 1858, 4347, 10359];
    for (i, &want) in FREE.iter().enumerate() {
        let got = TreeStream::new(i + 1, TreeClass::All, DEFAULT_MAX_N).unwrap().count();
        ensure(got == want, || format!("free n={}: {got} vs {want}", i + 1))?;
    }
    for (i, &want) in QUARTIC.iter().enumerate() {
        let got = TreeStream::new(i + 1, TreeClass::Molecular, DEFAULT_MAX_N).unwrap().count();
        ensure(got == want, || format!("molecular n={}: {got} vs {want}", i + 1))?;
    }
    Ok("free trees n<=14 and molecular trees n<=16 match (18 at n=8)".into())
}

fn c8_qspr() -> Outcome {
    let records = octanes()?;
    let xs = index_column(&records, IndexKind::Vdb(VdbKernel::So2)).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (prop, intercept, slope, printed) in PRINTED_FITS {
        let ys = target_column(&records, &Target::Property(prop.into())).map_err(|e| e.to_string())?;
        let fit = linear_fit(&xs, &ys).map_err(|e| e.to_string())?;
        ensure((fit.intercept - intercept).abs() <= FIT_TOL, || format!("{prop}: intercept {}", fit.intercept))?;
        ensure((fit.slope - slope).abs() <= FIT_TOL, || format!("{prop}: slope {}", fit.slope))?;
        // the printed goodness-of-fit figures are |r|, not r²
        let abs_r = fit.correlation.abs();
        ensure((abs_r - printed).abs() <= FIT_TOL, || format!("{prop}: |r| {abs_r} vs {printed}"))?;
        parts.push(format!(
            "{prop}: {:.4}{:+.4}x |r|={abs_r:.4} (r²={:.4})",
            fit.intercept, fit.slope, fit.r_squared
        ));
    }
    Ok(parts.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 octane SO2 table", c1_octane_table),
        ("2 tree bounds brute force", c2_tree_bounds),
        ("3 molecular maximum brute force", c3_molecular_maximum),
        ("4 solved system and reduced form", c4_linear_system),
        ("5 degree-3 penalty table", c5_degree3_table),
        ("6 degree-ratio bound on random graphs", c6_degree_bound),
        ("7 enumeration counts", c7_counts),
        ("8 octane QSPR fits", c8_qspr),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

