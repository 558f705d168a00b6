//! Simple least-squares fits of properties (or other indices) against an index.

use crate::chem_io::{MoleculeRecord, SmilesError};
use crate::indices::IndexKind;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FitError {
    #[error("x has {0} values but y has {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("predictor is constant; slope is undefined")]
    ConstantPredictor,
    #[error("molecule {molecule:?} has no value for {property:?}")]
    MissingProperty { molecule: String, property: String },
    #[error("molecule {molecule:?}: {source}")]
    Smiles {
        molecule: String,
        #[source]
        source: SmilesError,
    },
}

/// Ordinary least-squares line `y ≈ intercept + slope · x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    /// Squared sample correlation, clamped to `[0, 1]`.
    pub r_squared: f64,
    /// Sample (Pearson) correlation `r`.
    pub correlation: f64,
    pub sample_size: usize,
}

impl RegressionFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    pub fn residuals(&self, xs: &[f64], ys: &[f64]) -> Vec<f64> {
        xs.iter().zip(ys).map(|(&x, &y)| y - self.predict(x)).collect()
    }
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<RegressionFit, FitError> {
    if xs.len() != ys.len() {
        return Err(FitError::LengthMismatch(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 2 {
        return Err(FitError::TooFewPoints(n));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 || xs.iter().all(|&x| x == xs[0]) {
        return Err(FitError::ConstantPredictor);
    }
    let slope = sxy / sxx;
    // a constant response is fit exactly by the flat line
    let correlation = if syy == 0.0 { 1.0 } else { sxy / (sxx * syy).sqrt() };
    Ok(RegressionFit {
        slope,
        intercept: my - slope * mx,
        r_squared: (correlation * correlation).clamp(0.0, 1.0),
        correlation: correlation.clamp(-1.0, 1.0),
        sample_size: n,
    })
}

/// What a fit explains: a dataset property or another index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Property(String),
    Index(IndexKind),
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::Property(p) => p.clone(),
            Target::Index(k) => k.name().to_string(),
        }
    }
}

/// Index values over a set of molecules, in record order.
pub fn index_column(records: &[MoleculeRecord], index: IndexKind) -> Result<Vec<f64>, FitError> {
    records
        .iter()
        .map(|r| {
            let g = r.graph().map_err(|source| FitError::Smiles { molecule: r.name.clone(), source })?;
            Ok(index.evaluate(&g).approx)
        })
        .collect()
}

pub fn target_column(records: &[MoleculeRecord], target: &Target) -> Result<Vec<f64>, FitError> {
    match target {
        Target::Index(k) => index_column(records, *k),
        Target::Property(p) => records
            .iter()
            .map(|r| {
                r.property(p).ok_or_else(|| FitError::MissingProperty {
                    molecule: r.name.clone(),
                    property: p.clone(),
                })
            })
            .collect(),
    }
}

/// Fits of every target against every predictor index.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationGrid {
    pub indices: Vec<IndexKind>,
    pub targets: Vec<Target>,
    /// `fits[i][t]`: target `t` regressed on index `i`.
    pub fits: Vec<Vec<RegressionFit>>,
}

impl CorrelationGrid {
    pub fn r_squared(&self, index: usize, target: usize) -> f64 {
        self.fits[index][target].r_squared
    }
}

pub fn correlation_grid(
    records: &[MoleculeRecord],
    indices: &[IndexKind],
    targets: &[Target],
) -> Result<CorrelationGrid, FitError> {
    let target_cols = targets
        .iter()
        .map(|t| target_column(records, t))
        .collect::<Result<Vec<_>, _>>()?;
    let fits = indices
        .iter()
        .map(|&k| {
            let xs = index_column(records, k)?;
            target_cols.iter().map(|ys| linear_fit(&xs, ys)).collect()
        })
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(CorrelationGrid { indices: indices.to_vec(), targets: targets.to_vec(), fits })
}
