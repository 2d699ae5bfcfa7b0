//! Partial orders generated by finite sets of monotones, compared with
//! majorization on sampled spectra.

use crate::error::{Error, Result};
use crate::monotones::{delta_m, inequality3_slack, inequality4_slack, optimized_extremal_slack, SearchConfig};
use crate::spectra::{majorizes, random_spectrum, Spectrum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub const ORDER_TOL: f64 = 1e-12;
pub const MAX_CENSUS_SAMPLES: usize = 1_000_000;

/// Direction of an order relation: `Forward` means ρ ≻ σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Forward,
    Backward,
    Incomparable,
    Equal,
}

impl Verdict {
    fn from_flags(forward: bool, backward: bool) -> Self {
        match (forward, backward) {
            (true, true) => Verdict::Equal,
            (true, false) => Verdict::Forward,
            (false, true) => Verdict::Backward,
            (false, false) => Verdict::Incomparable,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Forward => "forward",
            Verdict::Backward => "backward",
            Verdict::Incomparable => "incomparable",
            Verdict::Equal => "equal",
        }
    }

    pub fn is_ordered(self) -> bool {
        self != Verdict::Incomparable
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "m-sequence")]
    MSequence,
    #[serde(rename = "extremal")]
    Extremal,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::MSequence => "m-sequence",
            Family::Extremal => "extremal",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m-sequence" | "m" | "msequence" => Ok(Family::MSequence),
            "extremal" | "e" => Ok(Family::Extremal),
            _ => Err(Error::InvalidInput(format!("unknown family {s:?}"))),
        }
    }
}

pub fn majorization_verdict(rho: &Spectrum, sigma: &Spectrum) -> Verdict {
    Verdict::from_flags(majorizes(rho, sigma), majorizes(sigma, rho))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub majorization: Verdict,
    /// Cumulative verdict using all monotones of degree ≤ n, n = 1..=nmax.
    pub cone_order: Vec<Verdict>,
    /// Per-degree gap; nonnegative when that monotone orders ρ ≻ σ.
    pub gaps: Vec<f64>,
    pub family: Family,
}

/// (forward gap, backward gap) for one degree; `None` marks a failed evaluation.
fn degree_gaps(rho: &Spectrum, sigma: &Spectrum, k: usize, family: Family, dm: &[f64]) -> (Option<f64>, Option<f64>) {
    if family == Family::MSequence || k <= 2 {
        let g = dm[k - 1];
        return (Some(g), Some(-g));
    }
    let pick = |a: &Spectrum, b: &Spectrum| -> Option<f64> {
        match k {
            3 => inequality3_slack(a, b).ok().map(|s| s.value),
            4 => inequality4_slack(a, b).ok().map(|s| s.value),
            _ => optimized_extremal_slack(a, b, k, SearchConfig::default()).ok().map(|s| s.slack),
        }
    };
    (pick(rho, sigma), pick(sigma, rho))
}

pub fn cone_verdict(rho: &Spectrum, sigma: &Spectrum, nmax: usize, family: Family) -> Result<OrderVerdict> {
    if nmax == 0 || nmax > 6 {
        return Err(Error::InvalidInput(format!("nmax must be in 1..=6, got {nmax}")));
    }
    let dm = delta_m(rho, sigma, nmax);
    let mut fwd = true;
    let mut bwd = true;
    let mut cone_order = Vec::with_capacity(nmax);
    let mut gaps = Vec::with_capacity(nmax);
    for k in 1..=nmax {
        let (f, b) = degree_gaps(rho, sigma, k, family, &dm);
        fwd &= f.is_some_and(|g| g >= -ORDER_TOL);
        bwd &= b.is_some_and(|g| g >= -ORDER_TOL);
        gaps.push(f.unwrap_or(f64::NAN));
        cone_order.push(Verdict::from_flags(fwd, bwd));
    }
    Ok(OrderVerdict { majorization: majorization_verdict(rho, sigma), cone_order, gaps, family })
}

/// Confusion table for one degree n.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OrderConfusion {
    pub n: usize,
    /// "majorization->cone" ↦ count.
    pub counts: BTreeMap<String, u64>,
    /// Cone-ordered pairs that majorization leaves incomparable.
    pub ordered_but_incomparable: u64,
    /// Majorization forward/backward with a cone verdict disagreeing in direction.
    pub soundness_violations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub nmax: usize,
    pub family: Family,
    pub per_order: Vec<OrderConfusion>,
}

impl CensusReport {
    pub fn incomparable_fraction(&self, n: usize) -> f64 {
        self.per_order[n - 1].ordered_but_incomparable as f64 / self.samples.max(1) as f64
    }
}

fn sound(maj: Verdict, cone: Verdict) -> bool {
    match maj {
        Verdict::Forward => matches!(cone, Verdict::Forward | Verdict::Equal),
        Verdict::Backward => matches!(cone, Verdict::Backward | Verdict::Equal),
        Verdict::Equal => cone == Verdict::Equal,
        Verdict::Incomparable => true,
    }
}

/// Census over `samples` Dirichlet(1) pairs. Extremal degrees ≥ 5 need
/// `allow_expensive`.
pub fn order_census(
    dim: usize,
    samples: usize,
    seed: u64,
    nmax: usize,
    family: Family,
    allow_expensive: bool,
) -> Result<CensusReport> {
    if !(2..=8).contains(&dim) {
        return Err(Error::InvalidInput(format!("dim must be in 2..=8, got {dim}")));
    }
    if samples > MAX_CENSUS_SAMPLES {
        return Err(Error::BudgetExceeded(format!("{samples} samples exceeds {MAX_CENSUS_SAMPLES}")));
    }
    if family == Family::Extremal && nmax >= 5 && !allow_expensive {
        return Err(Error::BudgetExceeded("extremal degrees >= 5 need the expensive flag".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Spectrum, Spectrum)> =
        (0..samples).map(|_| (random_spectrum(dim, &mut rng), random_spectrum(dim, &mut rng))).collect();
    let verdicts: Vec<OrderVerdict> =
        pairs.par_iter().map(|(r, s)| cone_verdict(r, s, nmax, family)).collect::<Result<_>>()?;
    let mut per_order: Vec<OrderConfusion> = (1..=nmax).map(|n| OrderConfusion { n, ..Default::default() }).collect();
    for v in &verdicts {
        for (table, &cone) in per_order.iter_mut().zip(&v.cone_order) {
            *table.counts.entry(format!("{}->{}", v.majorization, cone)).or_default() += 1;
            if v.majorization == Verdict::Incomparable && cone.is_ordered() {
                table.ordered_but_incomparable += 1;
            }
            if !sound(v.majorization, cone) {
                table.soundness_violations += 1;
            }
        }
    }
    Ok(CensusReport { dim, samples, seed, nmax, family, per_order })
}
