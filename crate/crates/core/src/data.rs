//! Tabular dataset ingestion and preprocessing for the benchmark:
//! CSV loading with per-column type inference, one-hot encoding with
//! dummy drop, train-only standardization, PCA, class balancing,
//! stratified subsampling and splitting, a deterministic hashed-bag
//! text embedder, and synthetic dataset generators.
//!
//! The intended composition order is fixed: one-hot encode categorical
//! columns, then balance / subsample / split (whole-row bookkeeping),
//! then fit the standardizer, PCA, and any encoding scaler on the
//! *training* rows only and apply them to both splits. No fitted
//! statistic ever derives from test rows.
//!
//! Every seeded operation is bit-deterministic across runs and thread
//! counts. Row numbers in ingestion errors count data rows from 1,
//! excluding the header.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::path::Path;

use nalgebra::DMatrix;
use ndarray::{Array2, ArrayView2};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::rng::mix;

/// A feature's standard deviation below `1e-12·(1+|mean|)` is treated
/// as zero (the column is constant up to rounding noise).
const CONSTANT_STD_THRESHOLD: f64 = 1e-12;

/// Errors raised by loading, encoding, and preprocessing.
#[derive(Debug, Error)]
pub enum DataError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    /// The header has no column with the configured label name.
    #[error("label column {name:?} not found in header")]
    MissingLabelColumn { name: String },
    /// A label cell was not 0 or 1.
    #[error("row {row}: label {value:?} is not 0 or 1")]
    BadLabel { row: usize, value: String },
    /// A numeric cell parsed to NaN or infinity.
    #[error("row {row}, column {column:?}: non-finite value")]
    NonFiniteCell { row: usize, column: String },
    /// The file has a header but no data rows.
    #[error("no data rows after the header")]
    EmptyFile,
    /// Column lengths or label length disagree with the row count.
    #[error("column {column:?} has {actual} entries, expected {expected}")]
    ColumnLengthMismatch {
        column: String,
        expected: usize,
        actual: usize,
    },
    /// A label outside {0, 1} was supplied at construction.
    #[error("label {value} at index {index} is not 0 or 1")]
    NonBinaryLabel { index: usize, value: u8 },
    /// A named column does not exist.
    #[error("column {name:?} not found")]
    MissingColumn { name: String },
    /// One-hot encoding applies only to categorical columns.
    #[error("column {name:?} is numeric, not categorical")]
    NotCategorical { name: String },
    /// One-hot encoding needs at least two distinct categories.
    #[error("column {name:?} has a single category")]
    SingleCategory { name: String },
    /// A feature matrix was requested while categorical columns remain.
    #[error("column {name:?} is still categorical; one-hot encode it first")]
    CategoricalColumn { name: String },
    /// An estimator was fit on fewer rows than it needs.
    #[error("need at least {needed} rows, got {actual}")]
    TooFewRows { needed: usize, actual: usize },
    /// A transform received rows of the wrong width.
    #[error("rows have {actual} features, transform expects {expected}")]
    WidthMismatch { expected: usize, actual: usize },
    /// The requested component count exceeds what the data supports.
    #[error("cannot keep {requested} components, maximum is {max}")]
    BadComponentCount { requested: usize, max: usize },
    /// An operation needs both classes present.
    #[error("dataset contains a single class")]
    SingleClass,
    /// Subsample and split fractions live in (0, 1].
    #[error("fraction {0} outside (0, 1]")]
    FractionOutOfRange(f64),
    /// Splitting needs at least two rows in each class.
    #[error("class {label} has {count} rows, need at least 2")]
    TooFewPerClass { label: u8, count: usize },
    /// The embedder needs a positive dimension.
    #[error("embedding dimension must be at least 1")]
    BadDimension,
    /// Synthetic generators need at least 4 samples.
    #[error("need at least 4 samples, got {0}")]
    TooFewSamples(usize),
    /// Noise scale must be finite and non-negative.
    #[error("noise {0} must be finite and non-negative")]
    BadNoise(f64),
}

/// Where a dataset came from; carried through preprocessing and
/// reported alongside results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetSource {
    Clamp,
    Reveal,
    Synthetic,
}

impl std::fmt::Display for DatasetSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            DatasetSource::Clamp => "clamp",
            DatasetSource::Reveal => "reveal",
            DatasetSource::Synthetic => "synthetic",
        };
        f.write_str(name)
    }
}

/// One column of a dataset. Numeric columns are parsed double
/// precision; categorical columns hold their raw strings until
/// [`one_hot_encode`] replaces them with indicators.
#[derive(Debug, Clone, PartialEq)]
pub enum ColumnData {
    Numeric(Vec<f64>),
    Categorical(Vec<String>),
}

impl ColumnData {
    fn len(&self) -> usize {
        match self {
            ColumnData::Numeric(v) => v.len(),
            ColumnData::Categorical(v) => v.len(),
        }
    }
}

/// A labelled tabular dataset: named columns, binary labels, and a
/// provenance tag. Row count always equals label count and numeric
/// cells are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    names: Vec<String>,
    columns: Vec<ColumnData>,
    labels: Vec<u8>,
    source: DatasetSource,
}

impl Dataset {
    /// Builds a dataset, validating column lengths, label values, and
    /// numeric finiteness.
    pub fn new(
        names: Vec<String>,
        columns: Vec<ColumnData>,
        labels: Vec<u8>,
        source: DatasetSource,
    ) -> Result<Self, DataError> {
        assert_eq!(names.len(), columns.len(), "one name per column");
        for (name, column) in names.iter().zip(&columns) {
            if column.len() != labels.len() {
                return Err(DataError::ColumnLengthMismatch {
                    column: name.clone(),
                    expected: labels.len(),
                    actual: column.len(),
                });
            }
            if let ColumnData::Numeric(values) = column {
                for (row, value) in values.iter().enumerate() {
                    if !value.is_finite() {
                        return Err(DataError::NonFiniteCell {
                            row: row + 1,
                            column: name.clone(),
                        });
                    }
                }
            }
        }
        for (index, &value) in labels.iter().enumerate() {
            if value > 1 {
                return Err(DataError::NonBinaryLabel { index, value });
            }
        }
        Ok(Self {
            names,
            columns,
            labels,
            source,
        })
    }

    /// Builds a purely numeric dataset from a feature matrix, naming
    /// columns `f0, f1, …`.
    pub fn from_matrix(
        features: Array2<f64>,
        labels: Vec<u8>,
        source: DatasetSource,
    ) -> Result<Self, DataError> {
        let names = (0..features.ncols()).map(|j| format!("f{j}")).collect();
        let columns = features
            .columns()
            .into_iter()
            .map(|c| ColumnData::Numeric(c.to_vec()))
            .collect();
        Self::new(names, columns, labels, source)
    }

    pub fn num_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column_names(&self) -> &[String] {
        &self.names
    }

    /// Labels as stored: 0 or 1 per row.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Labels in the ±1 convention the classifiers train on
    /// (0 → −1, 1 → +1).
    pub fn signed_labels(&self) -> Vec<f64> {
        self.labels
            .iter()
            .map(|&l| if l == 0 { -1.0 } else { 1.0 })
            .collect()
    }

    pub fn source(&self) -> DatasetSource {
        self.source
    }

    /// Looks up a column by name.
    pub fn column(&self, name: &str) -> Option<&ColumnData> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.columns[i])
    }

    /// Rows per class, as `(count of 0s, count of 1s)`.
    pub fn class_counts(&self) -> (usize, usize) {
        let ones = self.labels.iter().filter(|&&l| l == 1).count();
        (self.labels.len() - ones, ones)
    }

    /// The dense feature matrix. Fails while any column is still
    /// categorical — encode those first.
    pub fn features(&self) -> Result<Array2<f64>, DataError> {
        let mut matrix = Array2::zeros((self.num_rows(), self.num_columns()));
        for (j, (name, column)) in self.names.iter().zip(&self.columns).enumerate() {
            match column {
                ColumnData::Numeric(values) => {
                    for (i, &value) in values.iter().enumerate() {
                        matrix[(i, j)] = value;
                    }
                }
                ColumnData::Categorical(_) => {
                    return Err(DataError::CategoricalColumn { name: name.clone() });
                }
            }
        }
        Ok(matrix)
    }

    /// Copies the given rows (in the given order) into a new dataset.
    fn select_rows(&self, indices: &[usize]) -> Dataset {
        let columns = self
            .columns
            .iter()
            .map(|column| match column {
                ColumnData::Numeric(values) => {
                    ColumnData::Numeric(indices.iter().map(|&i| values[i]).collect())
                }
                ColumnData::Categorical(values) => {
                    ColumnData::Categorical(indices.iter().map(|&i| values[i].clone()).collect())
                }
            })
            .collect();
        Dataset {
            names: self.names.clone(),
            columns,
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            source: self.source,
        }
    }

    /// Writes the dataset as a headed CSV, the label in a column named
    /// `label_column`. Floats print in shortest round-trip form, so a
    /// save/load cycle reproduces values exactly.
    pub fn save_csv(&self, path: &Path, label_column: &str) -> Result<(), DataError> {
        let mut writer = csv::Writer::from_path(path)?;
        let mut header: Vec<&str> = self.names.iter().map(String::as_str).collect();
        header.push(label_column);
        writer.write_record(&header)?;
        for i in 0..self.num_rows() {
            let mut record: Vec<String> = Vec::with_capacity(self.num_columns() + 1);
            for column in &self.columns {
                record.push(match column {
                    ColumnData::Numeric(values) => values[i].to_string(),
                    ColumnData::Categorical(values) => values[i].clone(),
                });
            }
            record.push(self.labels[i].to_string());
            writer.write_record(&record)?;
        }
        writer.flush()?;
        Ok(())
    }
}

/// Loads a headed CSV. Columns whose cells all parse as floats become
/// numeric (a parseable NaN or infinity is rejected with its row
/// number); any other column is kept categorical for
/// [`one_hot_encode`]. Label cells must be 0 or 1.
pub fn load_csv(
    path: &Path,
    label_column: &str,
    source: DatasetSource,
) -> Result<Dataset, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)?;
    let headers: Vec<String> = reader
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let label_index = headers
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| DataError::MissingLabelColumn {
            name: label_column.to_string(),
        })?;
    let mut records = Vec::new();
    for record in reader.records() {
        records.push(record?);
    }
    if records.is_empty() {
        return Err(DataError::EmptyFile);
    }

    let mut labels = Vec::with_capacity(records.len());
    for (i, record) in records.iter().enumerate() {
        let cell = record.get(label_index).unwrap_or("").trim();
        let label = match cell.parse::<f64>() {
            Ok(0.0) => 0u8,
            Ok(1.0) => 1u8,
            _ => {
                return Err(DataError::BadLabel {
                    row: i + 1,
                    value: cell.to_string(),
                })
            }
        };
        labels.push(label);
    }

    let mut names = Vec::new();
    let mut columns = Vec::new();
    for (j, name) in headers.iter().enumerate() {
        if j == label_index {
            continue;
        }
        let cells: Vec<&str> = records
            .iter()
            .map(|record| record.get(j).unwrap_or("").trim())
            .collect();
        let parsed: Option<Vec<f64>> = cells.iter().map(|c| c.parse::<f64>().ok()).collect();
        let column = match parsed {
            Some(values) => {
                if let Some(row) = values.iter().position(|v| !v.is_finite()) {
                    return Err(DataError::NonFiniteCell {
                        row: row + 1,
                        column: name.clone(),
                    });
                }
                ColumnData::Numeric(values)
            }
            None => ColumnData::Categorical(cells.iter().map(|c| c.to_string()).collect()),
        };
        names.push(name.clone());
        columns.push(column);
    }
    Dataset::new(names, columns, labels, source)
}

/// Replaces a categorical column with `k − 1` indicator columns, one
/// per category in lexicographic order with the first category dropped
/// (its rows read all-zero). Indicator columns are named
/// `"{column}={category}"` and spliced in at the original position.
pub fn one_hot_encode(dataset: &Dataset, column: &str) -> Result<Dataset, DataError> {
    let position = dataset
        .names
        .iter()
        .position(|n| n == column)
        .ok_or_else(|| DataError::MissingColumn {
            name: column.to_string(),
        })?;
    let ColumnData::Categorical(values) = &dataset.columns[position] else {
        return Err(DataError::NotCategorical {
            name: column.to_string(),
        });
    };
    let categories: Vec<&String> = values.iter().collect::<BTreeSet<_>>().into_iter().collect();
    if categories.len() < 2 {
        return Err(DataError::SingleCategory {
            name: column.to_string(),
        });
    }

    let mut names = dataset.names.clone();
    let mut columns = dataset.columns.clone();
    names.remove(position);
    columns.remove(position);
    for (offset, category) in categories.iter().skip(1).enumerate() {
        let indicators = values
            .iter()
            .map(|v| if v == *category { 1.0 } else { 0.0 })
            .collect();
        names.insert(position + offset, format!("{column}={category}"));
        columns.insert(position + offset, ColumnData::Numeric(indicators));
    }
    Dataset::new(names, columns, dataset.labels.clone(), dataset.source)
}

fn column_means(rows: ArrayView2<'_, f64>) -> Vec<f64> {
    let n = rows.nrows() as f64;
    (0..rows.ncols())
        .map(|j| rows.column(j).iter().sum::<f64>() / n)
        .collect()
}

/// Per-feature affine scaling to mean 0 / standard deviation 1,
/// estimated from training rows only.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    means: Vec<f64>,
    stds: Vec<f64>,
}

/// Estimates per-feature means and (population) standard deviations.
/// Constant features store a zero deviation and later transform to 0.
pub fn fit_standardizer(train: ArrayView2<'_, f64>) -> Result<Standardizer, DataError> {
    if train.nrows() < 2 {
        return Err(DataError::TooFewRows {
            needed: 2,
            actual: train.nrows(),
        });
    }
    let n = train.nrows() as f64;
    let means = column_means(train);
    let stds = means
        .iter()
        .enumerate()
        .map(|(j, &mean)| {
            let variance = train
                .column(j)
                .iter()
                .map(|&v| (v - mean) * (v - mean))
                .sum::<f64>()
                / n;
            let std = variance.sqrt();
            if std <= CONSTANT_STD_THRESHOLD * (1.0 + mean.abs()) {
                0.0
            } else {
                std
            }
        })
        .collect();
    Ok(Standardizer { means, stds })
}

impl Standardizer {
    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Stored deviations; exactly 0.0 marks a constant feature.
    pub fn stds(&self) -> &[f64] {
        &self.stds
    }

    /// Applies the stored statistics; never re-estimates, so test rows
    /// cannot influence the scaling. Values are not clipped.
    pub fn transform(&self, rows: ArrayView2<'_, f64>) -> Result<Array2<f64>, DataError> {
        if rows.ncols() != self.means.len() {
            return Err(DataError::WidthMismatch {
                expected: self.means.len(),
                actual: rows.ncols(),
            });
        }
        Ok(Array2::from_shape_fn(rows.dim(), |(i, j)| {
            if self.stds[j] == 0.0 {
                0.0
            } else {
                (rows[(i, j)] - self.means[j]) / self.stds[j]
            }
        }))
    }
}

/// A fitted PCA projection: training mean, `k` orthonormal components
/// (rows), and per-component explained-variance ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaTransform {
    mean: Vec<f64>,
    components: Array2<f64>,
    ratios: Vec<f64>,
}

/// Fits PCA on training rows via eigendecomposition of the sample
/// covariance. Components are sorted by decreasing eigenvalue; each is
/// oriented so its largest-magnitude loading is positive, which makes
/// the decomposition deterministic. Zero-variance directions are valid
/// components with ratio 0.
pub fn pca_fit(train: ArrayView2<'_, f64>, k: usize) -> Result<PcaTransform, DataError> {
    let n = train.nrows();
    let d = train.ncols();
    if n < 2 {
        return Err(DataError::TooFewRows {
            needed: 2,
            actual: n,
        });
    }
    let max_k = (n - 1).min(d);
    if k == 0 || k > max_k {
        return Err(DataError::BadComponentCount {
            requested: k,
            max: max_k,
        });
    }
    let mean = column_means(train);
    let centered = DMatrix::from_fn(n, d, |i, j| train[(i, j)] - mean[j]);
    let covariance = centered.transpose() * &centered / (n as f64 - 1.0);
    let eigen = covariance.symmetric_eigen();

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[b]
            .partial_cmp(&eigen.eigenvalues[a])
            .unwrap()
    });
    let total: f64 = eigen.eigenvalues.iter().map(|&l| l.max(0.0)).sum();

    let mut components = Array2::zeros((k, d));
    let mut ratios = Vec::with_capacity(k);
    for (row, &which) in order.iter().take(k).enumerate() {
        let eigenvalue = eigen.eigenvalues[which].max(0.0);
        ratios.push(if total > 0.0 { eigenvalue / total } else { 0.0 });
        let column = eigen.eigenvectors.column(which);
        let mut largest = 0;
        for j in 1..d {
            if column[j].abs() > column[largest].abs() {
                largest = j;
            }
        }
        let flip = if column[largest] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..d {
            components[(row, j)] = flip * column[j];
        }
    }
    Ok(PcaTransform {
        mean,
        components,
        ratios,
    })
}

impl PcaTransform {
    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    /// The k×d component matrix (rows are components).
    pub fn components(&self) -> ArrayView2<'_, f64> {
        self.components.view()
    }

    /// Fraction of total training variance captured by each component,
    /// non-increasing and summing to at most 1.
    pub fn explained_variance_ratios(&self) -> &[f64] {
        &self.ratios
    }

    pub fn num_components(&self) -> usize {
        self.components.nrows()
    }

    /// Projects rows onto the components: `(x − mean)·Wᵀ`.
    pub fn transform(&self, rows: ArrayView2<'_, f64>) -> Result<Array2<f64>, DataError> {
        if rows.ncols() != self.mean.len() {
            return Err(DataError::WidthMismatch {
                expected: self.mean.len(),
                actual: rows.ncols(),
            });
        }
        let centered = Array2::from_shape_fn(rows.dim(), |(i, j)| rows[(i, j)] - self.mean[j]);
        Ok(centered.dot(&self.components.t()))
    }
}

/// Allocates `⌊total·fraction⌋` selections across groups: per-group
/// floors first, then leftover seats by largest fractional remainder
/// (ties resolved toward earlier groups). A small epsilon absorbs
/// float noise so exact products like 100·0.7 floor as expected.
fn proportional_counts(sizes: &[usize], fraction: f64) -> Vec<usize> {
    let total: usize = sizes.iter().sum();
    let target = (total as f64 * fraction + 1e-9).floor() as usize;
    let mut counts: Vec<usize> = sizes
        .iter()
        .map(|&s| (s as f64 * fraction + 1e-9).floor() as usize)
        .collect();
    let mut leftover = target.saturating_sub(counts.iter().sum());
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = sizes[a] as f64 * fraction - counts[a] as f64;
        let rb = sizes[b] as f64 * fraction - counts[b] as f64;
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    for &group in &order {
        if leftover == 0 {
            break;
        }
        if counts[group] < sizes[group] {
            counts[group] += 1;
            leftover -= 1;
        }
    }
    debug_assert_eq!(leftover, 0);
    counts
}

fn class_indices(dataset: &Dataset) -> (Vec<usize>, Vec<usize>) {
    let mut zeros = Vec::new();
    let mut ones = Vec::new();
    for (i, &label) in dataset.labels.iter().enumerate() {
        if label == 0 {
            zeros.push(i);
        } else {
            ones.push(i);
        }
    }
    (zeros, ones)
}

/// Undersamples the majority class, without replacement, down to the
/// minority count, then shuffles the combined row order. Already
/// balanced inputs keep their full multiset of rows (reordered).
pub fn balance_classes(dataset: &Dataset, seed: u64) -> Result<Dataset, DataError> {
    let (zeros, ones) = class_indices(dataset);
    if zeros.is_empty() || ones.is_empty() {
        return Err(DataError::SingleClass);
    }
    let keep = zeros.len().min(ones.len());
    let mut selected = Vec::with_capacity(2 * keep);
    for (label, class) in [(0u64, zeros), (1u64, ones)] {
        let mut indices = class;
        if indices.len() > keep {
            indices.shuffle(&mut ChaCha8Rng::seed_from_u64(mix(seed, &[label])));
            indices.truncate(keep);
        }
        selected.extend(indices);
    }
    selected.shuffle(&mut ChaCha8Rng::seed_from_u64(mix(seed, &[2])));
    Ok(dataset.select_rows(&selected))
}

/// Draws a per-class random subset totalling `⌊rows·fraction⌋`, the
/// class counts chosen by largest-remainder rounding so proportions
/// hold within one sample. Selected rows keep their original order.
pub fn stratified_subsample(
    dataset: &Dataset,
    fraction: f64,
    seed: u64,
) -> Result<Dataset, DataError> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(DataError::FractionOutOfRange(fraction));
    }
    let (zeros, ones) = class_indices(dataset);
    let counts = proportional_counts(&[zeros.len(), ones.len()], fraction);
    let mut selected = Vec::with_capacity(counts.iter().sum());
    for (label, class, count) in [(0u64, zeros, counts[0]), (1u64, ones, counts[1])] {
        let mut indices = class;
        indices.shuffle(&mut ChaCha8Rng::seed_from_u64(mix(seed, &[label])));
        indices.truncate(count);
        selected.extend(indices);
    }
    selected.sort_unstable();
    Ok(dataset.select_rows(&selected))
}

/// The split recipe: a train fraction, a subsample fraction, and the
/// seed driving both random choices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    train_fraction: f64,
    subsample_fraction: f64,
    seed: u64,
}

impl SplitSpec {
    /// The benchmark's standard train share.
    pub const DEFAULT_TRAIN_FRACTION: f64 = 0.70;

    /// Validates both fractions into `(0, 1]`.
    pub fn new(train_fraction: f64, subsample_fraction: f64, seed: u64) -> Result<Self, DataError> {
        for fraction in [train_fraction, subsample_fraction] {
            if !(fraction > 0.0 && fraction <= 1.0) {
                return Err(DataError::FractionOutOfRange(fraction));
            }
        }
        Ok(Self {
            train_fraction,
            subsample_fraction,
            seed,
        })
    }

    /// A 70/30 spec with the given subsample fraction.
    pub fn standard(subsample_fraction: f64, seed: u64) -> Result<Self, DataError> {
        Self::new(Self::DEFAULT_TRAIN_FRACTION, subsample_fraction, seed)
    }

    pub fn train_fraction(&self) -> f64 {
        self.train_fraction
    }

    pub fn subsample_fraction(&self) -> f64 {
        self.subsample_fraction
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Stratified train/test split: per-class train counts come from
/// largest-remainder rounding of the train fraction, so class
/// proportions are preserved within one sample. Train and test are
/// disjoint and together cover the input exactly.
pub fn train_test_split(
    dataset: &Dataset,
    spec: &SplitSpec,
) -> Result<(Dataset, Dataset), DataError> {
    let (zeros, ones) = class_indices(dataset);
    for (label, class) in [(0u8, &zeros), (1u8, &ones)] {
        if class.len() < 2 {
            return Err(DataError::TooFewPerClass {
                label,
                count: class.len(),
            });
        }
    }
    let counts = proportional_counts(&[zeros.len(), ones.len()], spec.train_fraction);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (label, class, count) in [(0u64, zeros, counts[0]), (1u64, ones, counts[1])] {
        let mut indices = class;
        indices.shuffle(&mut ChaCha8Rng::seed_from_u64(mix(spec.seed, &[label])));
        train.extend(indices[..count].iter().copied());
        test.extend(indices[count..].iter().copied());
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((dataset.select_rows(&train), dataset.select_rows(&test)))
}

/// 64-bit FNV-1a over a token's bytes; stable across platforms, unlike
/// the standard library's default hasher.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &byte in bytes {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Hashed bag-of-tokens embedding with rows of unit L2 norm.
/// Documents that hashed to the zero vector (typically because they
/// had no tokens) are left as zero rows and listed in
/// [`empty_documents`](FallbackEmbedding::empty_documents) so callers
/// can warn about them.
#[derive(Debug, Clone, PartialEq)]
pub struct FallbackEmbedding {
    features: Array2<f64>,
    empty_documents: Vec<usize>,
}

impl FallbackEmbedding {
    pub fn features(&self) -> ArrayView2<'_, f64> {
        self.features.view()
    }

    pub fn into_features(self) -> Array2<f64> {
        self.features
    }

    /// Row indices that embedded to the zero vector.
    pub fn empty_documents(&self) -> &[usize] {
        &self.empty_documents
    }
}

/// Embeds token sequences as `dim`-dimensional hashed bags: each token
/// maps to a bucket and a ±1 sign from a seeded stable hash, signs
/// accumulate per bucket, and each row is L2-normalized. Token order
/// never matters (bag semantics) and equal documents embed equally.
pub fn fallback_embed<S: AsRef<str>>(
    documents: &[Vec<S>],
    dim: usize,
    seed: u64,
) -> Result<FallbackEmbedding, DataError> {
    if dim == 0 {
        return Err(DataError::BadDimension);
    }
    let mut features = Array2::zeros((documents.len(), dim));
    let mut empty_documents = Vec::new();
    for (i, document) in documents.iter().enumerate() {
        for token in document {
            let hashed = mix(seed, &[fnv1a(token.as_ref().as_bytes())]);
            let bucket = (hashed % dim as u64) as usize;
            let sign = if hashed >> 63 == 1 { -1.0 } else { 1.0 };
            features[(i, bucket)] += sign;
        }
        let norm = features.row(i).iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            empty_documents.push(i);
        } else {
            features.row_mut(i).mapv_inplace(|v| v / norm);
        }
    }
    Ok(FallbackEmbedding {
        features,
        empty_documents,
    })
}

/// The two synthetic dataset shapes: linearly separable Gaussian blobs
/// and an inner-disk-versus-ring annulus that no linear boundary can
/// split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyntheticKind {
    Blobs,
    Annulus,
}

/// One standard-normal pair via the Box–Muller transform.
fn standard_normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.gen();
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = TAU * u2;
    (radius * angle.cos(), radius * angle.sin())
}

/// Generates a two-feature synthetic dataset with balanced labels
/// (within one row when `n` is odd).
///
/// * Blobs: class 0 around (−1.5, −1.5), class 1 around (1.5, 1.5),
///   Gaussian spread `noise`; at zero noise the classes sit exactly on
///   their centers and any separator between them scores 100%.
/// * Annulus: class 0 uniform over the unit disk, class 1 uniform over
///   the radius-[2, 3] ring, plus Gaussian coordinate noise.
pub fn generate_synthetic(
    kind: SyntheticKind,
    n: usize,
    noise: f64,
    seed: u64,
) -> Result<Dataset, DataError> {
    if n < 4 {
        return Err(DataError::TooFewSamples(n));
    }
    if !noise.is_finite() || noise < 0.0 {
        return Err(DataError::BadNoise(noise));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zeros = n.div_ceil(2);
    let mut features = Array2::zeros((n, 2));
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let label = u8::from(i >= zeros);
        labels.push(label);
        let (x, y) = match kind {
            SyntheticKind::Blobs => {
                let center = if label == 0 { -1.5 } else { 1.5 };
                (center, center)
            }
            SyntheticKind::Annulus => {
                let radius = if label == 0 {
                    rng.gen::<f64>().sqrt()
                } else {
                    2.0 + rng.gen::<f64>()
                };
                let angle = TAU * rng.gen::<f64>();
                (radius * angle.cos(), radius * angle.sin())
            }
        };
        let (g0, g1) = standard_normal_pair(&mut rng);
        features[(i, 0)] = x + noise * g0;
        features[(i, 1)] = y + noise * g1;
    }
    let mut dataset = Dataset::from_matrix(features, labels, DatasetSource::Synthetic)?;
    dataset.names = vec!["x0".to_string(), "x1".to_string()];
    Ok(dataset)
}
