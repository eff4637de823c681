//! k-nearest-neighbour and nearest-centroid classification of feature vectors,
//! with accuracy and confusion-matrix reporting.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_LEN};

pub const DEFAULT_K: usize = 3;

/// Labeled feature vectors.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    records: Vec<FeatureVector>,
}

impl Dataset {
    /// Every record must carry a non-empty label and 111 values.
    pub fn new(records: Vec<FeatureVector>) -> Result<Self> {
        for (i, r) in records.iter().enumerate() {
            if r.values.len() != FEATURE_LEN {
                return Err(Error::InvalidArgument(format!(
                    "record {i} has {} features, expected {FEATURE_LEN}",
                    r.values.len()
                )));
            }
            if r.label.as_deref().is_none_or(str::is_empty) {
                return Err(Error::InvalidArgument(format!("record {i} has no label")));
            }
        }
        Ok(Dataset { records })
    }

    pub fn records(&self) -> &[FeatureVector] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn label(&self, i: usize) -> &str {
        self.records[i]
            .label
            .as_deref()
            .expect("validated on construction")
    }
}

pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Majority label among the `k` nearest training records (Euclidean).
///
/// Equal distances keep dataset order. A tied vote goes to the tied label
/// whose nearest member ranks first.
pub fn knn_predict(train: &Dataset, query: &FeatureVector, k: usize) -> Result<String> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if k == 0 || k > train.len() {
        return Err(Error::InvalidArgument(format!(
            "k must be in 1..={}, got {k}",
            train.len()
        )));
    }
    let mut ranked: Vec<(f64, usize)> = train
        .records()
        .iter()
        .enumerate()
        .map(|(i, r)| (squared_distance(&r.values, &query.values), i))
        .collect();
    // Stable sort: ties stay in dataset order.
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));

    // label -> (votes, rank of nearest member)
    let mut votes: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (rank, &(_, i)) in ranked[..k].iter().enumerate() {
        let entry = votes.entry(train.label(i)).or_insert((0, rank));
        entry.0 += 1;
    }
    let (label, _) = votes
        .into_iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
        .expect("k ≥ 1");
    Ok(label.to_string())
}

/// Per-label mean vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Centroids {
    centroids: Vec<(String, Vec<f64>)>,
}

impl Centroids {
    pub fn fit(train: &Dataset) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        let mut sums: BTreeMap<&str, (Vec<f64>, usize)> = BTreeMap::new();
        for (i, r) in train.records().iter().enumerate() {
            let (sum, n) = sums
                .entry(train.label(i))
                .or_insert_with(|| (vec![0.0; FEATURE_LEN], 0));
            for (s, v) in sum.iter_mut().zip(&r.values) {
                *s += v;
            }
            *n += 1;
        }
        Ok(Centroids {
            centroids: sums
                .into_iter()
                .map(|(l, (sum, n))| {
                    (
                        l.to_string(),
                        sum.into_iter().map(|s| s / n as f64).collect(),
                    )
                })
                .collect(),
        })
    }

    /// Label of the closest centroid; ties go to the lexicographically smaller label.
    pub fn predict(&self, query: &FeatureVector) -> &str {
        self.centroids
            .iter()
            .map(|(l, c)| (squared_distance(c, &query.values), l))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map(|(_, l)| l.as_str())
            .expect("fit rejects empty training sets")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub total: usize,
    pub errors: usize,
    pub accuracy: f64,
    /// Sorted union of true and predicted labels; indexes the matrix.
    pub labels: Vec<String>,
    /// `confusion[true][predicted]`.
    pub confusion: Vec<Vec<usize>>,
}

impl EvalReport {
    pub fn from_predictions(truth: &[String], predicted: &[String]) -> Self {
        assert_eq!(truth.len(), predicted.len());
        let labels: Vec<String> = truth
            .iter()
            .chain(predicted)
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = |l: &String| labels.binary_search(l).expect("label collected above");
        let mut confusion = vec![vec![0; labels.len()]; labels.len()];
        let mut errors = 0;
        for (t, p) in truth.iter().zip(predicted) {
            confusion[index(t)][index(p)] += 1;
            errors += usize::from(t != p);
        }
        let total = truth.len();
        EvalReport {
            total,
            errors,
            accuracy: if total == 0 {
                0.0
            } else {
                (total - errors) as f64 / total as f64
            },
            labels,
            confusion,
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "accuracy={:?} errors={}/{}",
            self.accuracy, self.errors, self.total
        )
    }
}

impl fmt::Display for EvalReport {
    /// Summary line, then the confusion table (rows: true label, columns:
    /// predicted label).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        let corner = "true\\pred";
        let head = self
            .labels
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max(corner.len());
        let width = self
            .labels
            .iter()
            .map(String::len)
            .chain(self.confusion.iter().flatten().map(|n| n.to_string().len()))
            .max()
            .unwrap_or(1);
        write!(f, "{corner:>head$}")?;
        for l in &self.labels {
            write!(f, " {l:>width$}")?;
        }
        writeln!(f)?;
        for (l, row) in self.labels.iter().zip(&self.confusion) {
            write!(f, "{l:>head$}")?;
            for n in row {
                write!(f, " {n:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Classifies every test record with k-NN against `train`.
pub fn evaluate(train: &Dataset, test: &Dataset, k: usize) -> Result<EvalReport> {
    if test.is_empty() {
        return Err(Error::InvalidArgument("empty test set".into()));
    }
    let predicted = test
        .records()
        .par_iter()
        .map(|r| knn_predict(train, r, k))
        .collect::<Result<Vec<_>>>()?;
    let truth: Vec<String> = (0..test.len()).map(|i| test.label(i).to_string()).collect();
    Ok(EvalReport::from_predictions(&truth, &predicted))
}

/// Same as [`evaluate`] with nearest-centroid classification.
pub fn evaluate_centroids(train: &Dataset, test: &Dataset) -> Result<EvalReport> {
    if test.is_empty() {
        return Err(Error::InvalidArgument("empty test set".into()));
    }
    let centroids = Centroids::fit(train)?;
    let predicted: Vec<String> = test
        .records()
        .iter()
        .map(|r| centroids.predict(r).to_string())
        .collect();
    let truth: Vec<String> = (0..test.len()).map(|i| test.label(i).to_string()).collect();
    Ok(EvalReport::from_predictions(&truth, &predicted))
}
