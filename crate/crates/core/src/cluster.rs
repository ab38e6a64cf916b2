//! The four clustering algorithms: K-means (Lloyd), trimmed K-means,
//! sparse K-means, and robust sparse K-means.
//!
//! All four share one Lloyd-style engine: assign cases to the nearest
//! center under a (possibly feature-weighted) squared Euclidean
//! distance, trim the `floor(alpha * n)` cases farthest from their own
//! centers, and update centers as per-feature means over the remaining
//! cases. The sparse variants wrap this engine in an outer loop that
//! alternates clustering with the closed-form weight update of
//! [`crate::weights::solve_weights`].
//!
//! The robust sparse fit trims two sets per outer iteration: the cases
//! trimmed by the weighted engine, and the cases with the largest
//! *unweighted* distances to the cluster centers. Their union is
//! excluded from the between-cluster sums that drive the weight update,
//! so an outlier hidden in a downweighted feature still gets trimmed.

use rayon::prelude::*;

use crate::data::{sq_dist, CaseSet, DataMatrix};
use crate::error::{Error, Result};
use crate::util::rng_for;
use crate::weights::{solve_weights, WeightVector};

/// Outer iterations of the sparse algorithms (weight updates).
const SPARSE_OUTER_LIMIT: usize = 20;

/// Cluster membership of a single case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assignment {
    Cluster(usize),
    Trimmed,
}

/// Assignment of each case to one of K clusters or to "trimmed".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assign: Vec<Assignment>,
    k: usize,
}

impl Partition {
    pub fn new(assign: Vec<Assignment>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("K must be at least 1".into()));
        }
        for (i, a) in assign.iter().enumerate() {
            if let Assignment::Cluster(c) = a {
                if *c >= k {
                    return Err(Error::Parameter(format!(
                        "case {} assigned to cluster {} but K = {}",
                        i + 1,
                        c,
                        k
                    )));
                }
            }
        }
        Ok(Self { assign, k })
    }

    pub fn from_labels(labels: &[usize], k: usize) -> Result<Self> {
        Self::new(labels.iter().map(|&c| Assignment::Cluster(c)).collect(), k)
    }

    pub(crate) fn from_labels_and_trimmed(labels: &[usize], trimmed: &[bool], k: usize) -> Self {
        let assign = labels
            .iter()
            .zip(trimmed)
            .map(|(&c, &t)| if t { Assignment::Trimmed } else { Assignment::Cluster(c) })
            .collect();
        Self { assign, k }
    }

    pub fn n(&self) -> usize {
        self.assign.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn assignment(&self, case: usize) -> Assignment {
        self.assign[case]
    }

    /// Cluster index of a case, or None if trimmed.
    pub fn label(&self, case: usize) -> Option<usize> {
        match self.assign[case] {
            Assignment::Cluster(c) => Some(c),
            Assignment::Trimmed => None,
        }
    }

    pub fn is_trimmed(&self, case: usize) -> bool {
        matches!(self.assign[case], Assignment::Trimmed)
    }

    pub fn trimmed_cases(&self) -> CaseSet {
        (0..self.n()).filter(|&i| self.is_trimmed(i)).collect()
    }

    pub fn n_trimmed(&self) -> usize {
        self.assign
            .iter()
            .filter(|a| matches!(a, Assignment::Trimmed))
            .count()
    }

    /// Non-trimmed member count per cluster.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for a in &self.assign {
            if let Assignment::Cluster(c) = a {
                sizes[*c] += 1;
            }
        }
        sizes
    }
}

/// K x p matrix of cluster centers.
#[derive(Debug, Clone, PartialEq)]
pub struct Centers {
    values: Vec<f64>,
    k: usize,
    p: usize,
}

impl Centers {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::Parameter("need at least one center".into()));
        }
        let p = rows[0].len();
        let mut values = Vec::with_capacity(k * p);
        for row in rows {
            if row.len() != p || row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Validation("centers must be rectangular and finite".into()));
            }
            values.extend_from_slice(row);
        }
        Ok(Self { values, k, p })
    }

    fn from_flat(values: Vec<f64>, k: usize, p: usize) -> Self {
        debug_assert_eq!(values.len(), k * p);
        Self { values, k, p }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn row(&self, cluster: usize) -> &[f64] {
        &self.values[cluster * self.p..(cluster + 1) * self.p]
    }

    pub fn get(&self, cluster: usize, feature: usize) -> f64 {
        self.values[cluster * self.p + feature]
    }
}

/// Options shared by all fits.
#[derive(Debug, Clone)]
pub struct FitOptions {
    /// Independent random starts; the best final solution is returned.
    pub n_starts: usize,
    /// Cap on Lloyd iterations per clustering pass.
    pub max_iter: usize,
    /// Relative L1 change of the weight vector that stops the outer
    /// loop of the sparse algorithms.
    pub tol: f64,
    pub seed: u64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            n_starts: 10,
            max_iter: 100,
            tol: 1e-4,
            seed: 0,
        }
    }
}

impl FitOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// The algorithms exposed by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    KMeans,
    TrimmedKMeans,
    SparseKMeans,
    RobustSparseKMeans,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::KMeans,
        Algorithm::TrimmedKMeans,
        Algorithm::SparseKMeans,
        Algorithm::RobustSparseKMeans,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Algorithm::KMeans => "km",
            Algorithm::TrimmedKMeans => "tkm",
            Algorithm::SparseKMeans => "skm",
            Algorithm::RobustSparseKMeans => "rskc",
        }
    }

    pub fn is_sparse(self) -> bool {
        matches!(self, Algorithm::SparseKMeans | Algorithm::RobustSparseKMeans)
    }

    pub fn is_robust(self) -> bool {
        matches!(self, Algorithm::TrimmedKMeans | Algorithm::RobustSparseKMeans)
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.short_name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "km" | "kmeans" => Ok(Algorithm::KMeans),
            "tkm" | "tkmeans" => Ok(Algorithm::TrimmedKMeans),
            "skm" | "skmeans" => Ok(Algorithm::SparseKMeans),
            "rskc" | "rsk" => Ok(Algorithm::RobustSparseKMeans),
            other => Err(Error::Parameter(format!(
                "unknown algorithm '{other}'; expected kmeans, tkmeans, skmeans, or rskc"
            ))),
        }
    }
}

/// Full result of one algorithm run.
///
/// `objective` is the (trimmed) within-cluster sum of squares for the
/// plain algorithms and the weighted between-cluster sum `sum_j w_j B_j`
/// (computed without the trimmed cases) for the sparse ones; `trace`
/// records that objective per Lloyd iteration or per outer iteration,
/// respectively, for the winning start.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterFit {
    pub partition: Partition,
    pub centers: Centers,
    pub weights: Option<WeightVector>,
    /// Cases trimmed by the weighted clustering pass.
    pub trim_weighted: CaseSet,
    /// Cases with the largest unweighted distances to the centers.
    pub trim_unweighted: CaseSet,
    /// Union of the two trim sets; these cases are marked trimmed in
    /// the partition.
    pub trimmed: CaseSet,
    pub objective: f64,
    pub n_iter: usize,
    pub seed: u64,
    /// True when a weight update found no feature with positive
    /// between-cluster sum; the previous weights were kept.
    pub degenerate_weights: bool,
    pub trace: Vec<f64>,
}

impl ClusterFit {
    pub fn weight_values(&self) -> Option<&[f64]> {
        self.weights.as_ref().map(|w| w.values())
    }

    /// Cluster index of a case for display purposes: the fitted label,
    /// or the nearest center under the fit's metric for trimmed cases.
    pub fn display_labels(&self, x: &DataMatrix) -> Vec<usize> {
        let w = self.weight_values();
        (0..x.n())
            .map(|i| match self.partition.assignment(i) {
                Assignment::Cluster(c) => c,
                Assignment::Trimmed => nearest_center(x, i, &self.centers, w).0,
            })
            .collect()
    }
}

fn nearest_center(
    x: &DataMatrix,
    case: usize,
    centers: &Centers,
    weights: Option<&[f64]>,
) -> (usize, f64) {
    let mut best = (0usize, sq_dist(x, case, centers.row(0), weights));
    for g in 1..centers.k() {
        let d = sq_dist(x, case, centers.row(g), weights);
        if d < best.1 {
            best = (g, d);
        }
    }
    best
}

/// Assigns every case to the cluster with the closest center under the
/// weighted squared Euclidean distance (uniform when `weights` is
/// None). Ties go to the lowest cluster index.
pub fn assign_cases(x: &DataMatrix, centers: &Centers, weights: Option<&[f64]>) -> Partition {
    let labels: Vec<usize> = (0..x.n())
        .map(|i| nearest_center(x, i, centers, weights).0)
        .collect();
    Partition::from_labels(&labels, centers.k()).expect("labels bounded by construction")
}

/// Per-feature means over the non-trimmed, observing members of each
/// cluster. Cases trimmed in the partition or listed in `trimmed` are
/// excluded; a feature nobody in a cluster observes falls back to the
/// overall feature mean. Errors if a cluster has no usable members.
pub fn update_centers(x: &DataMatrix, partition: &Partition, trimmed: &CaseSet) -> Result<Centers> {
    if partition.n() != x.n() {
        return Err(Error::Validation(format!(
            "partition covers {} cases, data has {}",
            partition.n(),
            x.n()
        )));
    }
    let k = partition.k();
    let mut labels = vec![0usize; x.n()];
    let mut excluded = vec![false; x.n()];
    for i in 0..x.n() {
        match partition.label(i) {
            Some(c) => labels[i] = c,
            None => excluded[i] = true,
        }
        if trimmed.contains(&i) {
            excluded[i] = true;
        }
    }
    let mut counts = vec![0usize; k];
    for i in 0..x.n() {
        if !excluded[i] {
            counts[labels[i]] += 1;
        }
    }
    if let Some(c) = counts.iter().position(|&c| c == 0) {
        return Err(Error::EmptyCluster { cluster: c });
    }
    let feature_means = x.feature_means();
    let values = compute_centers_raw(x, &labels, &excluded, k, &feature_means)?;
    Ok(Centers::from_flat(values, k, x.p()))
}

// ---------------------------------------------------------------------
// shared Lloyd engine
// ---------------------------------------------------------------------

struct LloydOutcome {
    labels: Vec<usize>,
    trimmed: Vec<bool>,
    centers: Vec<f64>,
    objective: f64,
    iters: usize,
    trace: Vec<f64>,
}

fn assign_all(
    x: &DataMatrix,
    centers: &[f64],
    k: usize,
    weights: Option<&[f64]>,
) -> (Vec<usize>, Vec<f64>) {
    let p = x.p();
    let n = x.n();
    let mut labels = vec![0usize; n];
    let mut dists = vec![0.0f64; n];
    for i in 0..n {
        let mut best_g = 0usize;
        let mut best_d = sq_dist(x, i, &centers[0..p], weights);
        for g in 1..k {
            let d = sq_dist(x, i, &centers[g * p..(g + 1) * p], weights);
            if d < best_d {
                best_d = d;
                best_g = g;
            }
        }
        labels[i] = best_g;
        dists[i] = best_d;
    }
    (labels, dists)
}

/// Flags the `count` cases with the largest distances; equal distances
/// at the boundary trim the lower case index.
fn select_trim(dists: &[f64], count: usize) -> Vec<bool> {
    let mut flags = vec![false; dists.len()];
    if count == 0 {
        return flags;
    }
    let mut order: Vec<usize> = (0..dists.len()).collect();
    order.sort_by(|&a, &b| {
        dists[b]
            .partial_cmp(&dists[a])
            .expect("distances are finite")
            .then(a.cmp(&b))
    });
    for &i in order.iter().take(count) {
        flags[i] = true;
    }
    flags
}

/// Re-seeds each empty cluster with the non-trimmed case farthest from
/// that cluster's current center, drawn from clusters that keep at
/// least one other member.
fn repair_empty_clusters(
    x: &DataMatrix,
    centers: &[f64],
    weights: Option<&[f64]>,
    labels: &mut [usize],
    trimmed: &[bool],
    k: usize,
) -> Result<()> {
    let p = x.p();
    let mut counts = vec![0usize; k];
    for i in 0..labels.len() {
        if !trimmed[i] {
            counts[labels[i]] += 1;
        }
    }
    for g in 0..k {
        if counts[g] > 0 {
            continue;
        }
        let mut best: Option<(f64, usize)> = None;
        for i in 0..labels.len() {
            if trimmed[i] || counts[labels[i]] < 2 {
                continue;
            }
            let d = sq_dist(x, i, &centers[g * p..(g + 1) * p], weights);
            if best.map_or(true, |(bd, _)| d > bd) {
                best = Some((d, i));
            }
        }
        let (_, donor) = best.ok_or(Error::EmptyCluster { cluster: g })?;
        counts[labels[donor]] -= 1;
        labels[donor] = g;
        counts[g] = 1;
    }
    Ok(())
}

fn compute_centers_raw(
    x: &DataMatrix,
    labels: &[usize],
    excluded: &[bool],
    k: usize,
    feature_means: &[f64],
) -> Result<Vec<f64>> {
    let p = x.p();
    let mut sums = vec![0.0f64; k * p];
    let mut counts = vec![0usize; k * p];
    let mut member_count = vec![0usize; k];
    for i in 0..x.n() {
        if excluded[i] {
            continue;
        }
        member_count[labels[i]] += 1;
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
    if let Some(c) = member_count.iter().position(|&c| c == 0) {
        return Err(Error::EmptyCluster { cluster: c });
    }
    let mut centers = vec![0.0f64; k * p];
    for g in 0..k {
        for j in 0..p {
            let idx = g * p + j;
            centers[idx] = if counts[idx] > 0 {
                sums[idx] / counts[idx] as f64
            } else {
                feature_means[j]
            };
        }
    }
    Ok(centers)
}

fn within_ss(
    x: &DataMatrix,
    centers: &[f64],
    labels: &[usize],
    trimmed: &[bool],
    weights: Option<&[f64]>,
) -> f64 {
    let p = x.p();
    (0..x.n())
        .filter(|&i| !trimmed[i])
        .map(|i| sq_dist(x, i, &centers[labels[i] * p..(labels[i] + 1) * p], weights))
        .sum()
}

/// One clustering pass: iterate assignment, trimming, and center
/// updates until the (assignment, trim set) pair repeats or `max_iter`
/// is reached.
fn lloyd_fit(
    x: &DataMatrix,
    k: usize,
    weights: Option<&[f64]>,
    trim: usize,
    init_centers: Vec<f64>,
    max_iter: usize,
    feature_means: &[f64],
) -> Result<LloydOutcome> {
    let mut centers = init_centers;
    let mut prev: Option<(Vec<usize>, Vec<bool>)> = None;
    let mut trace = Vec::new();
    let mut iters = 0usize;
    while iters < max_iter {
        iters += 1;
        let (mut labels, dists) = assign_all(x, &centers, k, weights);
        let trimmed = select_trim(&dists, trim);
        repair_empty_clusters(x, &centers, weights, &mut labels, &trimmed, k)?;
        let state = (labels, trimmed);
        let converged = prev.as_ref() == Some(&state);
        centers = compute_centers_raw(x, &state.0, &state.1, k, feature_means)?;
        trace.push(within_ss(x, &centers, &state.0, &state.1, weights));
        prev = Some(state);
        if converged {
            break;
        }
    }
    let (labels, trimmed) = prev.expect("max_iter >= 1");
    let objective = *trace.last().expect("at least one iteration");
    Ok(LloydOutcome {
        labels,
        trimmed,
        centers,
        objective,
        iters,
        trace,
    })
}

fn init_centers(
    x: &DataMatrix,
    k: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
    feature_means: &[f64],
) -> Vec<f64> {
    let p = x.p();
    let picks = rand::seq::index::sample(rng, x.n(), k);
    let mut centers = Vec::with_capacity(k * p);
    for case in picks.iter() {
        let row = x.row(case);
        let mask = x.row_mask(case);
        for j in 0..p {
            centers.push(if mask[j] { row[j] } else { feature_means[j] });
        }
    }
    centers
}

fn validate_fit_params(x: &DataMatrix, k: usize, opts: &FitOptions) -> Result<()> {
    if k == 0 || k > x.n() {
        return Err(Error::Parameter(format!(
            "K = {k} must be between 1 and n = {}",
            x.n()
        )));
    }
    if opts.n_starts == 0 {
        return Err(Error::Parameter("n_starts must be at least 1".into()));
    }
    if opts.max_iter == 0 {
        return Err(Error::Parameter("max_iter must be at least 1".into()));
    }
    Ok(())
}

/// Number of cases trimmed per pass: floor(alpha * n), with a small
/// guard against floating-point values landing just below an integer.
pub fn trim_count(alpha: f64, n: usize) -> Result<usize> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Parameter(format!(
            "trimming proportion alpha = {alpha} must be in [0, 1)"
        )));
    }
    Ok((alpha * n as f64 + 1e-9).floor() as usize)
}

fn pick_best<T: Send>(
    outcomes: Vec<Result<T>>,
    better: impl Fn(&T, &T) -> bool,
) -> Result<T> {
    let mut best: Option<T> = None;
    let mut first_err: Option<Error> = None;
    for outcome in outcomes {
        match outcome {
            Ok(t) => {
                if best.as_ref().map_or(true, |b| better(&t, b)) {
                    best = Some(t);
                }
            }
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    best.ok_or_else(|| first_err.expect("at least one start"))
}

fn plain_engine(x: &DataMatrix, k: usize, trim: usize, opts: &FitOptions) -> Result<ClusterFit> {
    validate_fit_params(x, k, opts)?;
    if trim > x.n() - k {
        return Err(Error::Parameter(format!(
            "trim count {trim} exceeds n - K = {}",
            x.n() - k
        )));
    }
    let feature_means = x.feature_means();
    let outcomes: Vec<Result<LloydOutcome>> = (0..opts.n_starts as u64)
        .into_par_iter()
        .map(|start| {
            let mut rng = rng_for(opts.seed, start);
            let init = init_centers(x, k, &mut rng, &feature_means);
            lloyd_fit(x, k, None, trim, init, opts.max_iter, &feature_means)
        })
        .collect();
    // minimum (trimmed) within-cluster sum of squares wins; ties keep
    // the earlier start
    let best = pick_best(outcomes, |a, b| a.objective < b.objective)?;
    let partition = Partition::from_labels_and_trimmed(&best.labels, &best.trimmed, k);
    let trim_weighted: CaseSet = flags_to_set(&best.trimmed);
    Ok(ClusterFit {
        partition,
        centers: Centers::from_flat(best.centers, k, x.p()),
        weights: None,
        trimmed: trim_weighted.clone(),
        trim_weighted,
        trim_unweighted: CaseSet::new(),
        objective: best.objective,
        n_iter: best.iters,
        seed: opts.seed,
        degenerate_weights: false,
        trace: best.trace,
    })
}

fn flags_to_set(flags: &[bool]) -> CaseSet {
    flags
        .iter()
        .enumerate()
        .filter_map(|(i, &f)| f.then_some(i))
        .collect()
}

struct SparseOutcome {
    labels: Vec<usize>,
    trim_weighted: Vec<bool>,
    trim_unweighted: Vec<bool>,
    excluded: Vec<bool>,
    weights: Vec<f64>,
    objective: f64,
    outer_iters: usize,
    degenerate: bool,
    trace: Vec<f64>,
}

fn sparse_start(
    x: &DataMatrix,
    k: usize,
    l1_bound: f64,
    trim: usize,
    opts: &FitOptions,
    start: u64,
    feature_means: &[f64],
) -> Result<SparseOutcome> {
    let (n, p) = (x.n(), x.p());
    let mut rng = rng_for(opts.seed, start);
    let mut centers = init_centers(x, k, &mut rng, feature_means);
    let mut w = WeightVector::uniform(p).values().to_vec();

    let mut trace = Vec::new();
    let mut outer = 0usize;
    let mut degenerate = false;
    let mut state: Option<SparseOutcome> = None;
    loop {
        outer += 1;
        let inner = lloyd_fit(x, k, Some(&w), trim, centers, opts.max_iter, feature_means)?;
        centers = inner.centers;
        let labels = inner.labels;
        let trim_weighted = inner.trimmed;

        // unweighted trim set: largest plain distances to the centers
        // of the weighted partition
        let trim_unweighted = if trim > 0 {
            let dists: Vec<f64> = (0..n)
                .map(|i| sq_dist(x, i, &centers[labels[i] * p..(labels[i] + 1) * p], None))
                .collect();
            select_trim(&dists, trim)
        } else {
            vec![false; n]
        };
        let excluded: Vec<bool> = trim_weighted
            .iter()
            .zip(&trim_unweighted)
            .map(|(&a, &b)| a || b)
            .collect();

        let bcss = crate::data::bcss_from_labels(x, &labels, k, &excluded)?;
        let (new_w, is_degenerate) = match solve_weights(&bcss, l1_bound) {
            Ok(wv) => (wv.values().to_vec(), false),
            Err(Error::DegenerateWeights) => (w.clone(), true),
            Err(e) => return Err(e),
        };
        let objective: f64 = new_w.iter().zip(&bcss).map(|(w, b)| w * b).sum();
        trace.push(objective);
        let l1_change: f64 = new_w.iter().zip(&w).map(|(a, b)| (a - b).abs()).sum();
        let denom: f64 = w.iter().sum();
        w = new_w;
        state = Some(SparseOutcome {
            labels,
            trim_weighted,
            trim_unweighted,
            excluded,
            weights: w.clone(),
            objective,
            outer_iters: outer,
            degenerate: is_degenerate,
            trace: Vec::new(),
        });
        if is_degenerate {
            degenerate = true;
            break;
        }
        if l1_change / denom < opts.tol || outer >= SPARSE_OUTER_LIMIT {
            break;
        }
    }
    let mut outcome = state.expect("at least one outer iteration");
    outcome.degenerate = degenerate;
    outcome.trace = trace;
    Ok(outcome)
}

fn sparse_engine(
    x: &DataMatrix,
    k: usize,
    l1_bound: f64,
    trim: usize,
    opts: &FitOptions,
) -> Result<ClusterFit> {
    validate_fit_params(x, k, opts)?;
    let sqrt_p = (x.p() as f64).sqrt();
    if !(1.0..=sqrt_p + 1e-12).contains(&l1_bound) {
        return Err(Error::Parameter(format!(
            "l1 bound {l1_bound} outside [1, sqrt(p)] = [1, {sqrt_p}]"
        )));
    }
    let feature_means = x.feature_means();
    let outcomes: Vec<Result<SparseOutcome>> = (0..opts.n_starts as u64)
        .into_par_iter()
        .map(|start| sparse_start(x, k, l1_bound, trim, opts, start, &feature_means))
        .collect();
    // maximum weighted between-cluster sum wins; ties keep the earlier
    // start
    let best = pick_best(outcomes, |a, b| a.objective > b.objective)?;

    let centers = compute_centers_raw(x, &best.labels, &best.excluded, k, &feature_means)?;
    let partition = Partition::from_labels_and_trimmed(&best.labels, &best.excluded, k);
    Ok(ClusterFit {
        partition,
        centers: Centers::from_flat(centers, k, x.p()),
        weights: Some(WeightVector::new(best.weights, l1_bound)),
        trim_weighted: flags_to_set(&best.trim_weighted),
        trim_unweighted: flags_to_set(&best.trim_unweighted),
        trimmed: flags_to_set(&best.excluded),
        objective: best.objective,
        n_iter: best.outer_iters,
        seed: opts.seed,
        degenerate_weights: best.degenerate,
        trace: best.trace,
    })
}

// ---------------------------------------------------------------------
// public fits
// ---------------------------------------------------------------------

/// Lloyd K-means, best of `opts.n_starts` random starts.
pub fn kmeans(x: &DataMatrix, k: usize, opts: &FitOptions) -> Result<ClusterFit> {
    plain_engine(x, k, 0, opts)
}

/// Trimmed K-means: each iteration trims the `floor(alpha * n)` cases
/// farthest from their own centers before updating centers.
pub fn trimmed_kmeans(
    x: &DataMatrix,
    k: usize,
    alpha: f64,
    opts: &FitOptions,
) -> Result<ClusterFit> {
    let trim = trim_count(alpha, x.n())?;
    plain_engine(x, k, trim, opts)
}

/// Sparse K-means: alternates weighted clustering with the closed-form
/// weight update, starting from uniform weights.
pub fn sparse_kmeans(
    x: &DataMatrix,
    k: usize,
    l1_bound: f64,
    opts: &FitOptions,
) -> Result<ClusterFit> {
    sparse_engine(x, k, l1_bound, 0, opts)
}

/// Robust sparse K-means: weighted *trimmed* clustering plus a second,
/// unweighted trim set; the union is excluded from the weight update
/// and reported as trimmed.
pub fn rsk_means(
    x: &DataMatrix,
    k: usize,
    l1_bound: f64,
    alpha: f64,
    opts: &FitOptions,
) -> Result<ClusterFit> {
    let trim = trim_count(alpha, x.n())?;
    if x.n() < k || 2 * trim > x.n() - k {
        return Err(Error::Parameter(format!(
            "trim count {trim} must satisfy 2 * floor(alpha n) <= n - K = {}",
            x.n().saturating_sub(k)
        )));
    }
    sparse_engine(x, k, l1_bound, trim, opts)
}
