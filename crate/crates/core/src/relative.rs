//! Relative quantifiers for commuting pairs `(ρ, σ)`: relative entropy and
//! cumulants, the relative monotone sequences, entropy-production bounds and
//! the finite-size Clausius inequality.

use crate::error::{Error, Result};
use crate::monotones::{check_step, cumulants_from_moments, generating_fd, inequality3_from_delta, ExtremalPoly, Slack};
use crate::spectra::{normalize_with, sigma_majorizes, CommutingPair, Spectrum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelativeStats {
    pub rel_entropy: f64,
    /// Tr[ρ (ln ρ − ln σ)^k], k = 1..=kmax.
    pub rel_moments: Vec<f64>,
    pub rel_cumulants: Vec<f64>,
    pub rel_variance: f64,
}

/// (r_i, ln r_i − ln s_i) over the support of r.
fn log_ratios(pair: &CommutingPair) -> Result<Vec<(f64, f64)>> {
    pair.require_full_rank()?;
    Ok(pair
        .r()
        .probs()
        .iter()
        .zip(pair.s().probs())
        .filter(|(r, _)| **r > 0.0)
        .map(|(r, s)| (*r, r.ln() - s.ln()))
        .collect())
}

pub fn relative_stats(pair: &CommutingPair, kmax: usize) -> Result<RelativeStats> {
    let terms = log_ratios(pair)?;
    let kmax = kmax.max(2);
    let mut m = vec![0.0; kmax];
    for (r, l) in &terms {
        let mut pw = *r;
        for mk in m.iter_mut() {
            pw *= l;
            *mk += pw;
        }
    }
    let c = cumulants_from_moments(&m);
    Ok(RelativeStats { rel_entropy: c[0], rel_variance: c[1], rel_moments: m, rel_cumulants: c })
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::NonpositiveX(x));
    }
    Ok(())
}

/// M⁽ⁿ⁾_{b,x}(ρ‖σ) = (−1)^n Σ r (ln r − ln s + ln x − b)^n.
pub fn relative_shifted_moment(pair: &CommutingPair, n: usize, b: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let shift = x.ln() - b;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * log_ratios(pair)?.iter().map(|(r, l)| r * (l + shift).powi(n as i32)).sum::<f64>())
}

/// The same quantity from finite differences of e^{−αa} Σ r^α s^{1−α}, a = b − ln x.
pub fn relative_shifted_moment_fd(pair: &CommutingPair, n: usize, b: f64, x: f64, h: f64) -> Result<f64> {
    check_x(x)?;
    check_step(h)?;
    let a = b - x.ln();
    let (w, l): (Vec<f64>, Vec<f64>) = log_ratios(pair)?.into_iter().map(|(r, lr)| (r * (-a).exp(), lr - a)).unzip();
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(a.exp() * sign * generating_fd(&w, &l, n, h))
}

/// P⁽ⁿ⁾_{E,x}(ρ‖σ) = −n Σ r F(ln r − ln s + ln x), with the same factor n as
/// [`crate::monotones::extremal_value`].
pub fn relative_extremal(pair: &CommutingPair, poly: &ExtremalPoly, x: f64) -> Result<f64> {
    check_x(x)?;
    let lx = x.ln();
    let s: f64 = log_ratios(pair)?.iter().map(|(r, l)| r * poly.f(l + lx)).sum();
    Ok(-(poly.n as f64) * s)
}

/// Petz–Rényi divergence (1/(α−1)) ln Σ r^α s^{1−α}.
pub fn petz_renyi(pair: &CommutingPair, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let terms = log_ratios(pair)?;
    let q: f64 = terms.iter().map(|(r, l)| r * ((alpha - 1.0) * l).exp()).sum();
    Ok(q.ln() / (alpha - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyProductionBounds {
    pub delta_s_rel: f64,
    pub tight: f64,
    pub relaxed: f64,
}

pub fn rel_entropy_production_bounds(before: &CommutingPair, after: &CommutingPair) -> Result<EntropyProductionBounds> {
    let st0 = relative_stats(before, 2)?;
    let st1 = relative_stats(after, 2)?;
    let s_min = before.s_min();
    let a = 1.0 - s_min.ln();
    let delta_s_rel = st0.rel_entropy - st1.rel_entropy;
    let delta_c = st0.rel_variance - st1.rel_variance;
    let m2 = relative_shifted_moment(before, 2, 1.0, s_min)?;
    let ratio = |num: f64, den: f64| if num == 0.0 { 0.0 } else { num / den };
    Ok(EntropyProductionBounds {
        delta_s_rel,
        tight: ratio(delta_c, 2.0 * a - st0.rel_entropy - st1.rel_entropy),
        relaxed: ratio(delta_c, 2.0 * m2.sqrt()),
    })
}

/// ΔM^rel_n = M⁽ⁿ⁾_{n−1,s_min}(after) − M⁽ⁿ⁾_{n−1,s_min}(before), n = 1..=nmax,
/// with s_min from the initial reference.
pub fn relative_delta_m(before: &CommutingPair, after: &CommutingPair, nmax: usize) -> Result<Vec<f64>> {
    let x = before.s_min();
    (1..=nmax)
        .map(|n| {
            let b = n as f64 - 1.0;
            Ok(relative_shifted_moment(after, n, b, x)? - relative_shifted_moment(before, n, b, x)?)
        })
        .collect()
}

pub fn relative_inequality3_slack(before: &CommutingPair, after: &CommutingPair) -> Result<Slack> {
    inequality3_from_delta(&relative_delta_m(before, after, 3)?)
}

/// Hamiltonian spectrum and inverse temperature (k_B = 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalSpec {
    pub energies: Vec<f64>,
    pub beta: f64,
}

impl ThermalSpec {
    pub fn new(energies: Vec<f64>, beta: f64) -> Result<Self> {
        let th = Self { energies, beta };
        th.validate()?;
        Ok(th)
    }

    pub fn validate(&self) -> Result<()> {
        if self.energies.is_empty() || self.energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidInput("energies must be a nonempty list of finite numbers".into()));
        }
        if !self.beta.is_finite() || self.beta < 0.0 {
            return Err(Error::InvalidInput(format!("beta must be finite and >= 0, got {}", self.beta)));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let th: ThermalSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        th.validate()?;
        Ok(th)
    }

    fn e_min(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn e_max(&self) -> f64 {
        self.energies.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn ln_z(&self) -> f64 {
        let e0 = self.e_min();
        let s: f64 = self.energies.iter().map(|e| (-self.beta * (e - e0)).exp()).sum();
        -self.beta * e0 + s.ln()
    }

    /// F(β) = −ln Z / β.
    pub fn free_energy(&self) -> f64 {
        -self.ln_z() / self.beta
    }

    pub fn gibbs(&self) -> Spectrum {
        let e0 = self.e_min();
        let w: Vec<f64> = self.energies.iter().map(|e| (-self.beta * (e - e0)).exp()).collect();
        normalize_with(&w, true).expect("Boltzmann weights are positive")
    }

    /// Smallest Gibbs weight, e^{−β E_max}/Z.
    pub fn s_min(&self) -> f64 {
        (-self.beta * self.e_max() - self.ln_z()).exp()
    }

    pub fn mean_energy(&self, rho: &Spectrum) -> f64 {
        rho.probs().iter().zip(&self.energies).map(|(p, e)| p * e).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClausiusReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// Right side with denominator 2√M⁽²⁾_{1,s_min}(ρ‖γ_β).
    pub middle_rhs: f64,
    pub middle_slack: f64,
    /// Whether (ρ, γ_β) σ-majorizes (γ_β, γ_β).
    pub thermomajorizes: bool,
}

/// S(γ) − S(ρ) ≥ β(⟨H⟩_γ − ⟨H⟩_ρ) + C(ρ‖γ)/(2 + 2β(E_max − F)).
pub fn clausius_slack(th: &ThermalSpec, rho: &Spectrum) -> Result<ClausiusReport> {
    if rho.dim() != th.energies.len() {
        return Err(Error::DimMismatch { left: rho.dim(), right: th.energies.len() });
    }
    let gamma = th.gibbs();
    let pair = CommutingPair::new(rho.clone(), gamma.clone())?;
    let st = relative_stats(&pair, 2)?;
    let ent = |s: &Spectrum| -> f64 { s.probs().iter().filter(|&&p| p > 0.0).map(|p| -p * p.ln()).sum() };
    let lhs = ent(&gamma) - ent(rho);
    let work = th.beta * (th.mean_energy(&gamma) - th.mean_energy(rho));
    // a = 1 − ln s_min = 1 + β(E_max − F), written without dividing by β
    let a = 1.0 + th.beta * th.e_max() + th.ln_z();
    let c = st.rel_variance;
    let rhs = work + if c == 0.0 { 0.0 } else { c / (2.0 * a) };
    let m2 = relative_shifted_moment(&pair, 2, 1.0, th.s_min())?;
    let middle_rhs = work + if c == 0.0 { 0.0 } else { c / (2.0 * m2.sqrt()) };
    let eq = CommutingPair::new(gamma.clone(), gamma)?;
    Ok(ClausiusReport {
        lhs,
        rhs,
        slack: lhs - rhs,
        middle_rhs,
        middle_slack: lhs - middle_rhs,
        thermomajorizes: sigma_majorizes(&pair, &eq)?,
    })
}
