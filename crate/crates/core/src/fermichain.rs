//! Free-fermion chains: block correlation matrices for the periodic XX chain
//! and the critical transverse-field Ising chain, single-particle block
//! occupations and entanglement data through per-mode cumulant additivity.

use crate::error::{Error, Result};
use crate::monotones::{cumulants_from_moments, ModularStats};
use crate::numerics::jacobi::HermitianMatrix;
use crate::spectra::{normalize_with, Spectrum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_SWEEPS: usize = 40;
const NU_CLAMP: f64 = 1e-9;
const PURE_MODE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainModel {
    Xx,
    Ising,
}

impl fmt::Display for ChainModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainModel::Xx => "xx",
            ChainModel::Ising => "ising",
        })
    }
}

impl FromStr for ChainModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xx" => Ok(ChainModel::Xx),
            "ising" | "isingcritical" => Ok(ChainModel::Ising),
            _ => Err(Error::InvalidInput(format!("unknown model {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetState {
    Gs,
    Current,
    Psi,
}

impl fmt::Display for PresetState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresetState::Gs => "gs",
            PresetState::Current => "current",
            PresetState::Psi => "psi",
        })
    }
}

impl FromStr for PresetState {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gs" => Ok(PresetState::Gs),
            "current" => Ok(PresetState::Current),
            "psi" => Ok(PresetState::Psi),
            _ => Err(Error::InvalidInput(format!("unknown state {s:?}"))),
        }
    }
}

/// A chain, its occupied modes and the block length.
///
/// For XX the occupation lists filled momentum indices q (k = 2π(q+φ)/N);
/// for Ising it lists Bogoliubov quasiparticles on top of the vacuum.
/// `antiperiodic` selects φ = 1/2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub model: ChainModel,
    pub sites: usize,
    pub occupation: Vec<usize>,
    pub ell: usize,
    pub antiperiodic: bool,
}

/// Occupation set and boundary condition for a named state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preset {
    pub occupation: Vec<usize>,
    pub antiperiodic: bool,
}

pub fn preset_state(model: ChainModel, n: usize, which: PresetState) -> Result<Preset> {
    match (model, which) {
        (ChainModel::Xx, PresetState::Gs | PresetState::Current) => {
            if n < 4 || n % 2 == 1 {
                return Err(Error::InvalidInput(format!("XX presets need even N >= 4, got {n}")));
            }
            let lo = -((n / 4) as i64);
            let hi = lo + (n / 2) as i64 - 1;
            let mut qs: Vec<i64> = (lo..=hi).collect();
            if which == PresetState::Current {
                *qs.last_mut().unwrap() = hi + 1;
            }
            let occupation = qs.into_iter().map(|q| q.rem_euclid(n as i64) as usize).collect();
            Ok(Preset { occupation, antiperiodic: false })
        }
        (ChainModel::Ising, PresetState::Gs) => Ok(Preset { occupation: vec![], antiperiodic: true }),
        (ChainModel::Ising, PresetState::Psi) => {
            if n < 2 {
                return Err(Error::InvalidInput("Ising presets need N >= 2".into()));
            }
            Ok(Preset { occupation: vec![0], antiperiodic: true })
        }
        _ => Err(Error::UnsupportedCombination(format!("state {which} is not defined for model {model}"))),
    }
}

impl ChainSpec {
    pub fn preset(model: ChainModel, sites: usize, ell: usize, which: PresetState) -> Result<Self> {
        let p = preset_state(model, sites, which)?;
        let spec = Self { model, sites, occupation: p.occupation, ell, antiperiodic: p.antiperiodic };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ell == 0 || self.ell >= self.sites {
            return Err(Error::BlockTooLarge { ell: self.ell, n: self.sites });
        }
        let mut seen = BTreeSet::new();
        for &q in &self.occupation {
            if q >= self.sites || !seen.insert(q) {
                return Err(Error::InvalidInput(format!("occupation index {q} repeated or out of range")));
            }
        }
        Ok(())
    }

    fn momentum(&self, q: usize) -> f64 {
        let phi = if self.antiperiodic { 0.5 } else { 0.0 };
        2.0 * PI * (q as f64 + phi) / self.sites as f64
    }

    /// Index of the mode at momentum −k_q.
    fn partner(&self, q: usize) -> usize {
        let n = self.sites;
        if self.antiperiodic {
            n - 1 - q
        } else {
            (n - q) % n
        }
    }
}

/// Block correlation data: ℓ×ℓ ⟨c†_j c_k⟩ for XX, 2ℓ×2ℓ Nambu ⟨ΨΨ†⟩ for Ising.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub model: ChainModel,
    pub ell: usize,
    pub matrix: HermitianMatrix,
}

/// Σ_q w_q e^{i k_q d} / N for d = −(ℓ−1)..=(ℓ−1), indexed by d + ℓ − 1.
fn fourier_table(spec: &ChainSpec, weights: &[(usize, Complex64)]) -> Vec<Complex64> {
    let ell = spec.ell as i64;
    let nf = spec.sites as f64;
    (-(ell - 1)..ell)
        .map(|d| {
            weights
                .iter()
                .map(|(q, w)| w * Complex64::from_polar(1.0, spec.momentum(*q) * d as f64))
                .sum::<Complex64>()
                / nf
        })
        .collect()
}

pub fn correlation_matrix(spec: &ChainSpec) -> Result<CorrelationMatrix> {
    spec.validate()?;
    let ell = spec.ell;
    let at = |table: &[Complex64], d: i64| table[(d + ell as i64 - 1) as usize];
    match spec.model {
        ChainModel::Xx => {
            let w: Vec<(usize, Complex64)> = spec.occupation.iter().map(|&q| (q, Complex64::new(1.0, 0.0))).collect();
            let t = fourier_table(spec, &w);
            let matrix = HermitianMatrix::from_fn(ell, |j, k| at(&t, k as i64 - j as i64));
            Ok(CorrelationMatrix { model: ChainModel::Xx, ell, matrix })
        }
        ChainModel::Ising => {
            let occ: BTreeSet<usize> = spec.occupation.iter().copied().collect();
            let mut nk = Vec::with_capacity(spec.sites);
            let mut fk = Vec::with_capacity(spec.sites);
            for q in 0..spec.sites {
                let k = spec.momentum(q);
                let a = 2.0 * (1.0 - k.cos());
                let b = Complex64::new(0.0, -2.0 * k.sin());
                let eps = 4.0 * (0.5 * k).sin().abs();
                let (n_vac, f_vac) = if eps < 1e-300 {
                    (0.0, Complex64::new(0.0, 0.0))
                } else {
                    (0.5 * (1.0 - a / eps), -b / (2.0 * eps))
                };
                let p = spec.partner(q);
                let (n, f) = match (occ.contains(&q), occ.contains(&p)) {
                    _ if p == q => (if occ.contains(&q) { 1.0 } else { n_vac }, f_vac),
                    (true, true) => (1.0 - n_vac, -f_vac),
                    (true, false) => (1.0, Complex64::new(0.0, 0.0)),
                    (false, true) => (0.0, Complex64::new(0.0, 0.0)),
                    (false, false) => (n_vac, f_vac),
                };
                nk.push((q, Complex64::new(n, 0.0)));
                fk.push((q, f));
            }
            let tn = fourier_table(spec, &nk);
            let tf = fourier_table(spec, &fk);
            // cdc(i,j) = ⟨c†_i c_j⟩, cc(i,j) = ⟨c_i c_j⟩, both depend on j − i
            let cdc = |i: usize, j: usize| at(&tn, j as i64 - i as i64);
            let cc = |i: usize, j: usize| at(&tf, j as i64 - i as i64);
            let matrix = HermitianMatrix::from_fn(2 * ell, |r, c| match (r < ell, c < ell) {
                (true, true) => {
                    let delta = if r == c { 1.0 } else { 0.0 };
                    Complex64::new(delta, 0.0) - cdc(c, r)
                }
                (true, false) => cc(r, c - ell),
                (false, true) => cc(c, r - ell).conj(),
                (false, false) => cdc(r - ell, c - ell),
            });
            Ok(CorrelationMatrix { model: ChainModel::Ising, ell, matrix })
        }
    }
}

/// Single-particle block occupations ν ∈ [0, 1], sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockOccupations {
    pub nus: Vec<f64>,
}

pub fn block_occupations(corr: &CorrelationMatrix) -> Result<BlockOccupations> {
    let ev = corr.matrix.eigenvalues(JACOBI_TOL, JACOBI_SWEEPS)?;
    let mut nus: Vec<f64> = ev
        .into_iter()
        .map(|v| {
            if !(-NU_CLAMP..=1.0 + NU_CLAMP).contains(&v) {
                Err(Error::DomainError(format!("correlation eigenvalue {v} outside [0,1]")))
            } else {
                Ok(v.clamp(0.0, 1.0))
            }
        })
        .collect::<Result<_>>()?;
    nus.sort_by(|a, b| b.total_cmp(a));
    if corr.model == ChainModel::Ising {
        // Nambu eigenvalues come in (ν, 1 − ν) pairs; keep one of each
        nus.truncate(corr.ell);
    }
    Ok(BlockOccupations { nus })
}

fn mode_is_pure(nu: f64) -> bool {
    !(PURE_MODE..=1.0 - PURE_MODE).contains(&nu)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FfStats {
    pub stats: ModularStats,
    /// M⁽ⁿ⁾(·; n−1), n = 1..=nmax.
    pub shifted: Vec<f64>,
}

/// Block entanglement data from per-mode cumulants summed over modes.
pub fn ff_stats(occ: &BlockOccupations, nmax: usize) -> Result<FfStats> {
    if nmax == 0 || nmax > 8 {
        return Err(Error::InvalidInput(format!("nmax must be in 1..=8, got {nmax}")));
    }
    let order = nmax.max(2);
    let mut cum = vec![0.0; order];
    for &nu in &occ.nus {
        if mode_is_pure(nu) {
            continue;
        }
        let mut mu = vec![0.0; order];
        for p in [nu, 1.0 - nu] {
            let k = -p.ln();
            let mut pw = p;
            for m in mu.iter_mut() {
                pw *= k;
                *m += pw;
            }
        }
        for (c, ck) in cum.iter_mut().zip(cumulants_from_moments(&mu)) {
            *c += ck;
        }
    }
    let stats = ModularStats::from_cumulants(cum);
    let shifted = (1..=nmax).map(|n| stats.shifted(n, n as f64 - 1.0)).collect();
    Ok(FfStats { stats, shifted })
}

/// Σ_k [−ν ln ν − (1−ν) ln(1−ν)].
pub fn ff_entropy(occ: &BlockOccupations) -> f64 {
    occ.nus
        .iter()
        .filter(|&&nu| !mode_is_pure(nu))
        .map(|&nu| -nu * nu.ln() - (1.0 - nu) * (1.0 - nu).ln())
        .sum()
}

/// Rényi entropy (1/(1−α)) Σ_k ln(ν^α + (1−ν)^α).
pub fn ff_renyi(occ: &BlockOccupations, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let s: f64 = occ
        .nus
        .iter()
        .filter(|&&nu| !mode_is_pure(nu))
        .map(|&nu| (nu.powf(alpha) + (1.0 - nu).powf(alpha)).ln())
        .sum();
    Ok(s / (1.0 - alpha))
}

/// The full 2^ℓ many-body spectrum Π(ν or 1−ν). Only for small ℓ.
pub fn many_body_spectrum(occ: &BlockOccupations) -> Result<Spectrum> {
    let l = occ.nus.len();
    if l > 20 {
        return Err(Error::BudgetExceeded(format!("2^{l} eigenvalues")));
    }
    let mut v = vec![1.0];
    for &nu in &occ.nus {
        v = v.iter().flat_map(|p| [p * nu, p * (1.0 - nu)]).collect();
    }
    normalize_with(&v, true)
}

/// One row of the chain-sweep CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub model: ChainModel,
    #[serde(rename = "N")]
    pub n: usize,
    pub ell: usize,
    pub state: PresetState,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "C3")]
    pub c3: f64,
    #[serde(rename = "C4")]
    pub c4: f64,
    #[serde(rename = "M2")]
    pub m2: f64,
    #[serde(rename = "M3")]
    pub m3: f64,
    pub renyi2: f64,
    pub renyi3: f64,
}

pub const CHAIN_CSV_HEADER: [&str; 12] = ["model", "N", "ell", "state", "S", "C", "C3", "C4", "M2", "M3", "renyi2", "renyi3"];

pub fn chain_record(model: ChainModel, n: usize, ell: usize, state: PresetState) -> Result<ChainRecord> {
    let spec = ChainSpec::preset(model, n, ell, state)?;
    let occ = block_occupations(&correlation_matrix(&spec)?)?;
    let st = ff_stats(&occ, 4)?;
    let c = &st.stats.cumulants;
    Ok(ChainRecord {
        model,
        n,
        ell,
        state,
        s: c[0],
        c: c[1],
        c3: c[2],
        c4: c[3],
        m2: st.shifted[1],
        m3: st.shifted[2],
        renyi2: ff_renyi(&occ, 2.0)?,
        renyi3: ff_renyi(&occ, 3.0)?,
    })
}

/// Independent jobs over block lengths, merged in input order.
pub fn chain_sweep(model: ChainModel, n: usize, ells: &[usize], state: PresetState) -> Result<Vec<ChainRecord>> {
    ells.par_iter().map(|&ell| chain_record(model, n, ell, state)).collect()
}
