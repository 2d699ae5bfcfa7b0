//! Probability spectra, majorization and relative (σ-) majorization.

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Slack used by every partial-sum and L1 comparison.
pub const MAJORIZATION_TOL: f64 = 1e-12;
const NEG_TOL: f64 = 1e-14;
const RESCALE_TOL: f64 = 1e-9;

/// A validated probability vector. Storage order is the caller's.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum {
    probs: Vec<f64>,
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        normalize(&v)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.probs
    }
}

impl Spectrum {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn uniform(d: usize) -> Self {
        assert!(d >= 1);
        Self { probs: vec![1.0 / d as f64; d] }
    }

    /// Pure state of dimension `d` (first entry 1).
    pub fn pure(d: usize) -> Self {
        assert!(d >= 1);
        let mut probs = vec![0.0; d];
        probs[0] = 1.0;
        Self { probs }
    }

    /// Entries sorted in descending order.
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.probs.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn min_entry(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &Spectrum) -> Spectrum {
        let mut probs = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.probs {
            for b in &other.probs {
                probs.push(a * b);
            }
        }
        Spectrum { probs }
    }

    /// Same entries, reordered by `perm` (entry i of the result is `self[perm[i]]`).
    pub fn permuted(&self, perm: &[usize]) -> Spectrum {
        Spectrum { probs: perm.iter().map(|&i| self.probs[i]).collect() }
    }
}

/// Validates `raw` and rescales it to unit sum.
pub fn normalize(raw: &[f64]) -> Result<Spectrum> {
    normalize_with(raw, false)
}

/// As [`normalize`]; with `force` any positive sum is rescaled.
pub fn normalize_with(raw: &[f64], force: bool) -> Result<Spectrum> {
    if raw.is_empty() {
        return Err(Error::NotNormalizable { sum: 0.0 });
    }
    for (index, &value) in raw.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!("entry {index} is not finite")));
        }
        if value < -NEG_TOL {
            return Err(Error::NegativeEntry { index, value });
        }
    }
    let clamped: Vec<f64> = raw.iter().map(|&x| x.max(0.0)).collect();
    let sum: f64 = clamped.iter().sum();
    if sum <= 0.0 || (!force && (sum - 1.0).abs() > RESCALE_TOL) {
        return Err(Error::NotNormalizable { sum });
    }
    Ok(Spectrum { probs: clamped.into_iter().map(|x| x / sum).collect() })
}

fn padded_cumsums(a: &Spectrum, b: &Spectrum) -> (Vec<f64>, Vec<f64>) {
    let d = a.dim().max(b.dim());
    let cum = |s: &Spectrum| {
        let mut v = s.sorted_desc();
        v.resize(d, 0.0);
        let mut acc = 0.0;
        v.iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect::<Vec<f64>>()
    };
    (cum(a), cum(b))
}

/// `a ≻ b`: every descending partial sum of `a` dominates that of `b`.
/// Unequal dimensions are zero-padded.
pub fn majorizes(a: &Spectrum, b: &Spectrum) -> bool {
    let (ca, cb) = padded_cumsums(a, b);
    ca.iter().zip(&cb).all(|(x, y)| *x >= *y - MAJORIZATION_TOL)
}

/// Two spectra paired entrywise in a shared eigenbasis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutingPair {
    r: Spectrum,
    s: Spectrum,
}

impl CommutingPair {
    pub fn new(r: Spectrum, s: Spectrum) -> Result<Self> {
        if r.dim() != s.dim() {
            return Err(Error::DimMismatch { left: r.dim(), right: s.dim() });
        }
        Ok(Self { r, s })
    }

    pub fn r(&self) -> &Spectrum {
        &self.r
    }

    pub fn s(&self) -> &Spectrum {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    pub fn s_min(&self) -> f64 {
        self.s.min_entry()
    }

    /// Errors unless every reference entry is strictly positive.
    pub fn require_full_rank(&self) -> Result<()> {
        match self.s.probs().iter().position(|&x| x <= 0.0) {
            Some(index) => Err(Error::RankDeficientReference { index }),
            None => Ok(()),
        }
    }

    pub fn permuted(&self, perm: &[usize]) -> CommutingPair {
        CommutingPair { r: self.r.permuted(perm), s: self.s.permuted(perm) }
    }
}

fn l1_gap(p: &CommutingPair, t: f64) -> f64 {
    p.r.probs().iter().zip(p.s.probs()).map(|(r, s)| (r - t * s).abs()).sum()
}

/// Relative majorization `(r1, s1) ≻ (r2, s2)` by the L1 breakpoint test.
/// Exact for a shared reference; distinct references are accepted but only
/// the shared case is guaranteed.
pub fn sigma_majorizes(pair1: &CommutingPair, pair2: &CommutingPair) -> Result<bool> {
    if pair1.dim() != pair2.dim() {
        return Err(Error::DimMismatch { left: pair1.dim(), right: pair2.dim() });
    }
    pair1.require_full_rank()?;
    pair2.require_full_rank()?;
    let mut ts = vec![0.0];
    for p in [pair1, pair2] {
        ts.extend(p.r.probs().iter().zip(p.s.probs()).map(|(r, s)| r / s));
    }
    // both gaps are O(1 + t), so the slack scales with t
    Ok(ts.iter().all(|&t| l1_gap(pair1, t) >= l1_gap(pair2, t) - MAJORIZATION_TOL * (1.0 + t)))
}

/// Row-stochastic check with tolerance 1e−12 on row sums.
pub fn check_stochastic(t: &[Vec<f64>], dim: usize) -> Result<()> {
    if t.len() != dim || t.iter().any(|row| row.len() != dim) {
        return Err(Error::NotStochastic(format!("expected {dim}x{dim} matrix")));
    }
    for (i, row) in t.iter().enumerate() {
        if let Some(v) = row.iter().find(|&&v| v < -NEG_TOL || !v.is_finite()) {
            return Err(Error::NotStochastic(format!("row {i} has entry {v}")));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotStochastic(format!("row {i} sums to {sum}")));
        }
    }
    Ok(())
}

fn vec_times(v: &[f64], t: &[Vec<f64>]) -> Vec<f64> {
    let d = v.len();
    (0..d).map(|j| (0..d).map(|i| v[i] * t[i][j]).sum()).collect()
}

/// Returns `(r·T, s·T)`.
pub fn apply_stochastic(pair: &CommutingPair, t: &[Vec<f64>]) -> Result<CommutingPair> {
    check_stochastic(t, pair.dim())?;
    let r = normalize(&vec_times(pair.r.probs(), t))?;
    let s = normalize(&vec_times(pair.s.probs(), t))?;
    CommutingPair::new(r, s)
}

/// Applies `T` to a single spectrum (`x·T`).
pub fn apply_to_spectrum(x: &Spectrum, t: &[Vec<f64>]) -> Result<Spectrum> {
    check_stochastic(t, x.dim())?;
    normalize(&vec_times(x.probs(), t))
}

/// Uniform sample from the simplex (symmetric Dirichlet(1)).
pub fn random_spectrum<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Spectrum {
    let w: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    normalize_with(&w, true).expect("exponential draws are positive")
}

/// Random row-stochastic matrix with Dirichlet(1) rows.
pub fn random_stochastic<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Vec<f64>> {
    (0..d).map(|_| random_spectrum(d, rng).probs().to_vec()).collect()
}

/// Random bistochastic matrix as a convex mixture of permutation matrices.
pub fn random_bistochastic<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let k = d.max(2);
    let weights = random_spectrum(k, rng);
    let mut t = vec![vec![0.0; d]; d];
    let mut perm: Vec<usize> = (0..d).collect();
    for w in weights.probs() {
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            t[i][j] += w;
        }
    }
    for row in &mut t {
        let s: f64 = row.iter().sum();
        row.iter_mut().for_each(|v| *v /= s);
    }
    t
}

/// Reads a spectrum from text (one number per line, `#` comments) or a JSON array.
pub fn parse_spectrum(text: &str) -> Result<Spectrum> {
    let trimmed = text.trim_start();
    let raw: Vec<f64> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        let mut v = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let x: f64 = body
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: cannot parse {body:?}", lineno + 1)))?;
            v.push(x);
        }
        v
    };
    normalize(&raw)
}

pub fn read_spectrum(path: &Path) -> Result<Spectrum> {
    parse_spectrum(&std::fs::read_to_string(path)?)
}
