//! Data container, CSV ingestion, row standardization, and the
//! per-feature between-cluster sum of squares that every algorithm
//! consumes.
//!
//! Missing entries are supported throughout: distances between a case
//! and a center use only the features observed for that case, rescaled
//! by `p / m` where `m` is the number of observed features, and centers
//! are per-feature means over the cases observing each feature.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use crate::cluster::Partition;
use crate::error::{Error, Result};
use crate::util;

/// Set of case indices (0-based).
pub type CaseSet = BTreeSet<usize>;

/// An n x p numeric matrix with an observed-entry mask and identifiers.
///
/// Rows are cases, columns are features. Unobserved entries are stored
/// as NaN and are never read by any distance or center computation.
/// The matrix is immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    values: Vec<f64>, // row-major, NaN where unobserved
    observed: Vec<bool>,
    n: usize,
    p: usize,
    case_ids: Vec<String>,
    feature_ids: Vec<String>,
    has_missing: bool,
}

impl DataMatrix {
    /// Builds a fully specified matrix. NaN values are treated as
    /// unobserved entries.
    pub fn with_ids(
        rows: &[Vec<f64>],
        case_ids: Option<Vec<String>>,
        feature_ids: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Validation(format!(
                "need at least 2 cases, got {n}"
            )));
        }
        let p = rows[0].len();
        if p == 0 {
            return Err(Error::Validation("need at least 1 feature".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != p {
                return Err(Error::Validation(format!(
                    "row {} has {} fields, expected {}",
                    i + 1,
                    row.len(),
                    p
                )));
            }
        }
        let case_ids = match case_ids {
            Some(ids) if ids.len() != n => {
                return Err(Error::Validation(format!(
                    "{} case ids for {} cases",
                    ids.len(),
                    n
                )))
            }
            Some(ids) => ids,
            None => (1..=n).map(|i| i.to_string()).collect(),
        };
        let feature_ids = match feature_ids {
            Some(ids) if ids.len() != p => {
                return Err(Error::Validation(format!(
                    "{} feature ids for {} features",
                    ids.len(),
                    p
                )))
            }
            Some(ids) => ids,
            None => (1..=p).map(|j| format!("V{j}")).collect(),
        };

        let mut values = Vec::with_capacity(n * p);
        let mut observed = Vec::with_capacity(n * p);
        for row in rows {
            for &v in row {
                let obs = v.is_finite();
                values.push(if obs { v } else { f64::NAN });
                observed.push(obs);
            }
        }
        let has_missing = observed.iter().any(|&o| !o);

        let matrix = Self {
            values,
            observed,
            n,
            p,
            case_ids,
            feature_ids,
            has_missing,
        };
        matrix.check_coverage()?;
        Ok(matrix)
    }

    /// Builds a matrix with generated identifiers.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::with_ids(rows, None, None)
    }

    fn check_coverage(&self) -> Result<()> {
        for i in 0..self.n {
            if !self.row_mask(i).iter().any(|&o| o) {
                return Err(Error::Validation(format!(
                    "case '{}' has no observed entries",
                    self.case_ids[i]
                )));
            }
        }
        for j in 0..self.p {
            if !(0..self.n).any(|i| self.observed[i * self.p + j]) {
                return Err(Error::Validation(format!(
                    "feature '{}' has no observed entries",
                    self.feature_ids[j]
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn has_missing(&self) -> bool {
        self.has_missing
    }

    /// Value at (case, feature); NaN if unobserved.
    pub fn value(&self, case: usize, feature: usize) -> f64 {
        self.values[case * self.p + feature]
    }

    pub fn is_observed(&self, case: usize, feature: usize) -> bool {
        self.observed[case * self.p + feature]
    }

    pub fn row(&self, case: usize) -> &[f64] {
        &self.values[case * self.p..(case + 1) * self.p]
    }

    pub fn row_mask(&self, case: usize) -> &[bool] {
        &self.observed[case * self.p..(case + 1) * self.p]
    }

    pub fn case_ids(&self) -> &[String] {
        &self.case_ids
    }

    pub fn feature_ids(&self) -> &[String] {
        &self.feature_ids
    }

    /// Per-feature mean over observing cases.
    pub fn feature_means(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.p];
        let mut counts = vec![0usize; self.p];
        for i in 0..self.n {
            let row = self.row(i);
            let mask = self.row_mask(i);
            for j in 0..self.p {
                if mask[j] {
                    sums[j] += row[j];
                    counts[j] += 1;
                }
            }
        }
        sums.iter()
            .zip(&counts)
            .map(|(&s, &c)| s / c as f64)
            .collect()
    }

    /// Per-feature (min, max) over observing cases.
    pub fn feature_ranges(&self) -> Vec<(f64, f64)> {
        let mut ranges = vec![(f64::INFINITY, f64::NEG_INFINITY); self.p];
        for i in 0..self.n {
            let row = self.row(i);
            let mask = self.row_mask(i);
            for j in 0..self.p {
                if mask[j] {
                    ranges[j].0 = ranges[j].0.min(row[j]);
                    ranges[j].1 = ranges[j].1.max(row[j]);
                }
            }
        }
        ranges
    }

    /// New matrix containing the given cases, in the given order.
    /// Fails if the subset violates the coverage invariants.
    pub fn subset_cases(&self, cases: &[usize]) -> Result<Self> {
        let rows: Vec<Vec<f64>> = cases.iter().map(|&i| self.row(i).to_vec()).collect();
        let ids: Vec<String> = cases.iter().map(|&i| self.case_ids[i].clone()).collect();
        Self::with_ids(&rows, Some(ids), Some(self.feature_ids.clone()))
    }

    /// Writes the matrix as CSV with a header row; unobserved entries
    /// become `na_token`.
    pub fn write_csv<W: Write>(&self, mut out: W, na_token: &str) -> std::io::Result<()> {
        writeln!(out, "{}", self.feature_ids.join(","))?;
        for i in 0..self.n {
            let row = self.row(i);
            let mask = self.row_mask(i);
            let fields: Vec<String> = (0..self.p)
                .map(|j| {
                    if mask[j] {
                        row[j].to_string()
                    } else {
                        na_token.to_string()
                    }
                })
                .collect();
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }
}

/// Squared (optionally feature-weighted) distance from a case to a
/// center vector. With missing entries the sum runs over observed
/// features only and is rescaled by `p / m`.
pub(crate) fn sq_dist(
    x: &DataMatrix,
    case: usize,
    center: &[f64],
    weights: Option<&[f64]>,
) -> f64 {
    let row = x.row(case);
    let p = x.p();
    if !x.has_missing() {
        let mut acc = 0.0;
        match weights {
            Some(w) => {
                for j in 0..p {
                    let d = row[j] - center[j];
                    acc += w[j] * d * d;
                }
            }
            None => {
                for j in 0..p {
                    let d = row[j] - center[j];
                    acc += d * d;
                }
            }
        }
        return acc;
    }
    let mask = x.row_mask(case);
    let mut acc = 0.0;
    let mut observed = 0usize;
    for j in 0..p {
        if mask[j] {
            let d = row[j] - center[j];
            acc += weights.map_or(1.0, |w| w[j]) * d * d;
            observed += 1;
        }
    }
    // coverage invariant guarantees observed >= 1
    acc * p as f64 / observed as f64
}

/// Loads a comma-separated numeric matrix. Rows are cases, columns are
/// features. `na_token` fields become unobserved entries; with
/// `has_header` the first row supplies feature identifiers.
pub fn load_csv<P: AsRef<Path>>(path: P, has_header: bool, na_token: &str) -> Result<DataMatrix> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let mut records = reader.records();
    let mut feature_ids: Option<Vec<String>> = None;
    if has_header {
        match records.next() {
            Some(record) => {
                let record = record.map_err(|e| Error::Parse {
                    row: 0,
                    message: e.to_string(),
                })?;
                feature_ids = Some(record.iter().map(str::to_string).collect());
            }
            None => return Err(Error::Validation("empty file".into())),
        }
    }

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut expected_len = feature_ids.as_ref().map(Vec::len);
    for (idx, record) in records.enumerate() {
        let row_no = idx + 1; // 1-based data row
        let record = record.map_err(|e| Error::Parse {
            row: row_no,
            message: e.to_string(),
        })?;
        if record.len() == 1 && record.get(0) == Some("") {
            continue; // blank line
        }
        let expected = *expected_len.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::Parse {
                row: row_no,
                message: format!("row {} has {} fields, expected {}", row_no, record.len(), expected),
            });
        }
        let mut row = Vec::with_capacity(expected);
        for (col, field) in record.iter().enumerate() {
            if field == na_token {
                row.push(f64::NAN);
            } else {
                let v: f64 = field.parse().map_err(|_| Error::Parse {
                    row: row_no,
                    message: format!("column {}: invalid number '{}'", col + 1, field),
                })?;
                row.push(v);
            }
        }
        rows.push(row);
    }
    DataMatrix::with_ids(&rows, None, feature_ids)
}

/// Standardizes each case (row) to location 0 and scale 1 over its
/// observed entries: mean/SD when `robust` is false, median/MAD (MAD
/// scaled by 1.4826) when true. The observed mask is unchanged.
pub fn standardize_rows(x: &DataMatrix, robust: bool) -> Result<DataMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(x.n());
    for i in 0..x.n() {
        let row = x.row(i);
        let mask = x.row_mask(i);
        let observed: Vec<f64> = (0..x.p()).filter(|&j| mask[j]).map(|j| row[j]).collect();
        let (loc, scale) = if robust {
            (util::median(&observed), util::mad(&observed))
        } else {
            (util::mean(&observed), util::sample_sd(&observed))
        };
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::Validation(format!(
                "case '{}' has zero scale; cannot standardize",
                x.case_ids()[i]
            )));
        }
        rows.push(
            (0..x.p())
                .map(|j| if mask[j] { (row[j] - loc) / scale } else { f64::NAN })
                .collect(),
        );
    }
    DataMatrix::with_ids(
        &rows,
        Some(x.case_ids().to_vec()),
        Some(x.feature_ids().to_vec()),
    )
}

/// Per-feature between-cluster sum of squares `B_j`, computed over the
/// cases not in `excluded`.
///
/// Uses the O(n*p) identity `B_j = 2 * (TSS_j - WSS_j)`, where total
/// and within-cluster sums of squares are taken around means over the
/// included cases observing feature j. Values are not clamped at zero;
/// small negative values from floating point are left to downstream
/// soft-thresholding.
pub fn per_feature_bcss(
    x: &DataMatrix,
    partition: &Partition,
    excluded: &CaseSet,
) -> Result<Vec<f64>> {
    if partition.n() != x.n() {
        return Err(Error::Validation(format!(
            "partition covers {} cases, data has {}",
            partition.n(),
            x.n()
        )));
    }
    let mut labels = vec![0usize; x.n()];
    let mut excluded_flags = vec![false; x.n()];
    for &i in excluded {
        if i >= x.n() {
            return Err(Error::Parameter(format!("excluded case {i} out of range")));
        }
        excluded_flags[i] = true;
    }
    for i in 0..x.n() {
        if excluded_flags[i] {
            continue;
        }
        match partition.label(i) {
            Some(c) => labels[i] = c,
            None => {
                return Err(Error::Validation(format!(
                    "case {} is trimmed in the partition but not excluded",
                    i + 1
                )))
            }
        }
    }
    bcss_from_labels(x, &labels, partition.k(), &excluded_flags)
}

/// `per_feature_bcss` on raw label/exclusion buffers; labels of
/// excluded cases are ignored.
pub(crate) fn bcss_from_labels(
    x: &DataMatrix,
    labels: &[usize],
    k: usize,
    excluded: &[bool],
) -> Result<Vec<f64>> {
    let (n, p) = (x.n(), x.p());
    let mut cluster_case_counts = vec![0usize; k];
    for i in 0..n {
        if !excluded[i] {
            cluster_case_counts[labels[i]] += 1;
        }
    }
    if let Some(c) = cluster_case_counts.iter().position(|&c| c == 0) {
        return Err(Error::EmptyCluster { cluster: c });
    }

    // pass 1: per-(cluster, feature) means over included observing cases
    let mut sums = vec![0.0; k * p];
    let mut counts = vec![0usize; k * p];
    for i in 0..n {
        if excluded[i] {
            continue;
        }
        let row = x.row(i);
        let mask = x.row_mask(i);
        let base = labels[i] * p;
        for j in 0..p {
            if mask[j] {
                sums[base + j] += row[j];
                counts[base + j] += 1;
            }
        }
    }
    let mut total_mean = vec![0.0; p];
    let mut cluster_mean = vec![0.0; k * p];
    for j in 0..p {
        let mut s = 0.0;
        let mut c = 0usize;
        for g in 0..k {
            let idx = g * p + j;
            if counts[idx] > 0 {
                cluster_mean[idx] = sums[idx] / counts[idx] as f64;
                s += sums[idx];
                c += counts[idx];
            }
        }
        if c > 0 {
            total_mean[j] = s / c as f64;
        }
    }

    // pass 2: sums of squares around those means
    let mut tss = vec![0.0; p];
    let mut wss = vec![0.0; p];
    for i in 0..n {
        if excluded[i] {
            continue;
        }
        let row = x.row(i);
        let mask = x.row_mask(i);
        let base = labels[i] * p;
        for j in 0..p {
            if mask[j] {
                let dt = row[j] - total_mean[j];
                tss[j] += dt * dt;
                let dw = row[j] - cluster_mean[base + j];
                wss[j] += dw * dw;
            }
        }
    }
    Ok((0..p).map(|j| 2.0 * (tss[j] - wss[j])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::Partition;
    use proptest::prelude::*;
    use std::io::Write;

    fn mat(rows: &[&[f64]]) -> DataMatrix {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        DataMatrix::from_rows(&rows).unwrap()
    }

    /// Brute-force double-sum definition of B_j over included cases.
    fn bcss_double_sum(
        x: &DataMatrix,
        labels: &[usize],
        k: usize,
        excluded: &[bool],
    ) -> Vec<f64> {
        let included: Vec<usize> = (0..x.n()).filter(|&i| !excluded[i]).collect();
        let n_inc = included.len() as f64;
        (0..x.p())
            .map(|j| {
                let mut total = 0.0;
                for &a in &included {
                    for &b in &included {
                        let d = x.value(a, j) - x.value(b, j);
                        total += d * d;
                    }
                }
                let mut within = 0.0;
                for g in 0..k {
                    let members: Vec<usize> =
                        included.iter().copied().filter(|&i| labels[i] == g).collect();
                    let mut acc = 0.0;
                    for &a in &members {
                        for &b in &members {
                            let d = x.value(a, j) - x.value(b, j);
                            acc += d * d;
                        }
                    }
                    within += acc / members.len() as f64;
                }
                total / n_inc - within
            })
            .collect()
    }

    #[test]
    fn load_csv_plain() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "1,2\n3,4\n5,6\n").unwrap();
        let x = load_csv(f.path(), false, "NA").unwrap();
        assert_eq!((x.n(), x.p()), (3, 2));
        assert_eq!(x.value(2, 1), 6.0);
        assert!(!x.has_missing());
        assert_eq!(x.feature_ids(), ["V1", "V2"]);
    }

    #[test]
    fn load_csv_na_token_sets_mask() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "1,NA\n3,4\n").unwrap();
        let x = load_csv(f.path(), false, "NA").unwrap();
        assert!(x.is_observed(0, 0));
        assert!(!x.is_observed(0, 1));
        assert!(x.value(0, 1).is_nan());
        assert!(x.is_observed(1, 1));
    }

    #[test]
    fn load_csv_ragged_row_names_row() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "1,2\n3,4,5\n").unwrap();
        let err = load_csv(f.path(), false, "NA").unwrap_err();
        match err {
            Error::Parse { row, .. } => assert_eq!(row, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn load_csv_header_supplies_feature_ids() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "g1,g2\n1,2\n3,4\n").unwrap();
        let x = load_csv(f.path(), true, "NA").unwrap();
        assert_eq!(x.feature_ids(), ["g1", "g2"]);
        assert_eq!(x.n(), 2);
    }

    #[test]
    fn missing_file_error_names_path() {
        let err = load_csv("/no/such/file.csv", false, "NA").unwrap_err();
        assert!(err.to_string().contains("/no/such/file.csv"));
    }

    #[test]
    fn all_missing_row_rejected() {
        let rows = vec![vec![f64::NAN, f64::NAN], vec![1.0, 2.0]];
        let err = DataMatrix::from_rows(&rows).unwrap_err();
        assert!(err.to_string().contains("no observed entries"));
    }

    #[test]
    fn all_missing_column_rejected() {
        let rows = vec![vec![1.0, f64::NAN], vec![2.0, f64::NAN]];
        let err = DataMatrix::from_rows(&rows).unwrap_err();
        assert!(err.to_string().contains("feature"));
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![vec![1.5, f64::NAN], vec![-2.0, 4.25], vec![0.0, 1e-7]];
        let x = DataMatrix::from_rows(&rows).unwrap();
        let mut buf = Vec::new();
        x.write_csv(&mut buf, "NA").unwrap();
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(&buf).unwrap();
        let y = load_csv(f.path(), true, "NA").unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn standardize_mean_sd() {
        let x = mat(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]]);
        let z = standardize_rows(&x, false).unwrap();
        for v in [-1.0, 0.0, 1.0].iter().zip(z.row(0)) {
            assert!((v.0 - v.1).abs() < 1e-12);
        }
    }

    #[test]
    fn standardize_zero_scale_names_case() {
        let x = mat(&[&[0.0, 0.0, 0.0], &[1.0, 2.0, 3.0]]);
        let err = standardize_rows(&x, false).unwrap_err();
        assert!(err.to_string().contains("case '1'"));
    }

    #[test]
    fn standardize_robust_median_mad() {
        let x = mat(&[&[1.0, 2.0, 100.0], &[1.0, 2.0, 3.0]]);
        let z = standardize_rows(&x, true).unwrap();
        let row = z.row(0);
        assert!((row[0] - -0.6745).abs() < 1e-3);
        assert!(row[1].abs() < 1e-12);
        assert!((row[2] - 66.10).abs() < 1e-2);
    }

    #[test]
    fn standardize_is_idempotent_for_mean_sd() {
        let x = mat(&[&[3.0, -1.0, 4.5, 2.0], &[0.1, 7.0, -3.0, 2.2]]);
        let once = standardize_rows(&x, false).unwrap();
        let twice = standardize_rows(&once, false).unwrap();
        for i in 0..x.n() {
            for j in 0..x.p() {
                assert!((once.value(i, j) - twice.value(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn standardize_preserves_mask() {
        let x = DataMatrix::from_rows(&[
            vec![1.0, f64::NAN, 3.0],
            vec![4.0, 5.0, 9.0],
        ])
        .unwrap();
        let z = standardize_rows(&x, false).unwrap();
        assert!(!z.is_observed(0, 1));
        assert!(z.value(0, 0).is_finite());
    }

    #[test]
    fn bcss_two_blocks() {
        let x = mat(&[&[0.0], &[0.0], &[10.0], &[10.0]]);
        let part = Partition::from_labels(&[0, 0, 1, 1], 2).unwrap();
        let b = per_feature_bcss(&x, &part, &CaseSet::new()).unwrap();
        assert!((b[0] - 200.0).abs() < 1e-9);
    }

    #[test]
    fn bcss_single_cluster_is_zero() {
        let x = mat(&[&[1.0, 5.0], &[2.0, -1.0], &[3.0, 0.5]]);
        let part = Partition::from_labels(&[0, 0, 0], 1).unwrap();
        let b = per_feature_bcss(&x, &part, &CaseSet::new()).unwrap();
        for v in b {
            assert!(v.abs() < 1e-9);
        }
    }

    #[test]
    fn bcss_with_exclusion_matches_double_sum() {
        let x = mat(&[&[0.0], &[0.0], &[10.0], &[10.0]]);
        let labels = [0, 0, 1, 1];
        let excluded = [false, false, false, true];
        let got = bcss_from_labels(&x, &labels, 2, &excluded).unwrap();
        let want = bcss_double_sum(&x, &labels, 2, &excluded);
        assert!((got[0] - want[0]).abs() < 1e-9 * want[0].abs().max(1.0));
    }

    #[test]
    fn bcss_empty_cluster_after_exclusion_names_cluster() {
        let x = mat(&[&[0.0], &[1.0], &[10.0], &[11.0]]);
        let part = Partition::from_labels(&[0, 0, 1, 1], 2).unwrap();
        let excluded: CaseSet = [2, 3].into_iter().collect();
        match per_feature_bcss(&x, &part, &excluded).unwrap_err() {
            Error::EmptyCluster { cluster } => assert_eq!(cluster, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn correlation_distance_identity() {
        // rows standardized with population SD satisfy
        // ||a - b||^2 = 2 p (1 - corr(a, b))
        let mut rng = crate::util::rng_for(42, 0);
        use rand::Rng;
        let p = 37;
        for _ in 0..20 {
            let a: Vec<f64> = (0..p).map(|_| rng.random_range(-3.0..3.0)).collect();
            let b: Vec<f64> = (0..p).map(|_| rng.random_range(-3.0..3.0)).collect();
            let standardize = |v: &[f64]| {
                let m = util::mean(v);
                let ss: f64 = v.iter().map(|x| (x - m) * (x - m)).sum();
                let sd = (ss / v.len() as f64).sqrt();
                v.iter().map(|x| (x - m) / sd).collect::<Vec<f64>>()
            };
            let (sa, sb) = (standardize(&a), standardize(&b));
            let dist: f64 = sa.iter().zip(&sb).map(|(x, y)| (x - y) * (x - y)).sum();
            let (ma, mb) = (util::mean(&a), util::mean(&b));
            let cov: f64 = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum();
            let va: f64 = a.iter().map(|x| (x - ma) * (x - ma)).sum();
            let vb: f64 = b.iter().map(|y| (y - mb) * (y - mb)).sum();
            let corr = cov / (va * vb).sqrt();
            let rhs = 2.0 * p as f64 * (1.0 - corr);
            assert!((dist - rhs).abs() <= 1e-9 * rhs.abs().max(1.0));
        }
    }

    proptest! {
        #[test]
        fn bcss_matches_double_sum_oracle(
            n in 4usize..20,
            p in 1usize..4,
            k in 1usize..4,
            seed in 0u64..500,
        ) {
            let mut rng = crate::util::rng_for(seed, 99);
            use rand::Rng;
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..p).map(|_| rng.random_range(-5.0..5.0)).collect())
                .collect();
            let x = DataMatrix::from_rows(&rows).unwrap();
            // labels covering all k clusters
            let labels: Vec<usize> = (0..n).map(|i| i % k).collect();
            let excluded: Vec<bool> = (0..n).map(|i| i >= n - (n % 3)).collect();
            // keep every cluster non-empty among included
            prop_assume!((0..k).all(|g| {
                (0..n).any(|i| !excluded[i] && labels[i] == g)
            }));
            let got = bcss_from_labels(&x, &labels, k, &excluded).unwrap();
            let want = bcss_double_sum(&x, &labels, k, &excluded);
            for j in 0..p {
                prop_assert!((got[j] - want[j]).abs() <= 1e-9 * want[j].abs().max(1.0));
            }
        }
    }
}
