//! Moments and cumulants of the modular Hamiltonian `K = −ln ρ`, the shifted
//! moment sequence `M⁽ⁿ⁾(ρ; b)`, extremal polynomial monotones and the
//! optimized majorization inequalities built from them.

use crate::error::{Error, Result};
use crate::numerics::binom;
use crate::spectra::Spectrum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Moments μ_k and cumulants C_k of `−ln ρ` for k = 1..=order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularStats {
    pub order: usize,
    pub moments: Vec<f64>,
    pub cumulants: Vec<f64>,
    pub entropy: f64,
    pub capacity: f64,
}

impl ModularStats {
    pub fn from_moments(moments: Vec<f64>) -> Self {
        let cumulants = cumulants_from_moments(&moments);
        Self::assemble(moments, cumulants)
    }

    pub fn from_cumulants(cumulants: Vec<f64>) -> Self {
        let moments = moments_from_cumulants(&cumulants);
        Self::assemble(moments, cumulants)
    }

    fn assemble(moments: Vec<f64>, cumulants: Vec<f64>) -> Self {
        let entropy = cumulants.first().copied().unwrap_or(0.0);
        let capacity = cumulants.get(1).copied().unwrap_or(0.0);
        Self { order: moments.len(), moments, cumulants, entropy, capacity }
    }

    /// M⁽ⁿ⁾(·; b) from the stored moments (binomial form).
    pub fn shifted(&self, n: usize, b: f64) -> f64 {
        shifted_moment_from_moments(&self.moments, n, b)
    }
}

/// μ_k = Σ λ (−ln λ)^k for k = 1..=kmax, with 0·(ln 0)^k = 0.
pub fn moments(spec: &Spectrum, kmax: usize) -> Vec<f64> {
    let mut mu = vec![0.0; kmax];
    for &l in spec.probs() {
        if l <= 0.0 {
            continue;
        }
        let k = -l.ln();
        let mut pw = l;
        for m in mu.iter_mut() {
            pw *= k;
            *m += pw;
        }
    }
    mu
}

/// Moments directly; cumulants from central moments, which avoids the
/// cancellation of the raw recursion when −ln λ is large.
pub fn modular_stats(spec: &Spectrum, nmax: usize) -> ModularStats {
    let kmax = nmax.max(2);
    let mu = moments(spec, kmax);
    let s = mu[0];
    let mut central = vec![0.0; kmax];
    for &l in spec.probs() {
        if l <= 0.0 {
            continue;
        }
        let k = -l.ln() - s;
        let mut pw = l;
        for m in central.iter_mut() {
            pw *= k;
            *m += pw;
        }
    }
    central[0] = 0.0;
    let mut cumulants = cumulants_from_moments(&central);
    cumulants[0] = s;
    ModularStats::assemble(mu, cumulants)
}

/// C_n = μ_n − Σ_{k<n} binom(n−1, k−1) C_k μ_{n−k}.
pub fn cumulants_from_moments(mu: &[f64]) -> Vec<f64> {
    let mut c: Vec<f64> = Vec::with_capacity(mu.len());
    for n in 1..=mu.len() {
        let mut v = mu[n - 1];
        for k in 1..n {
            v -= binom(n - 1, k - 1) * c[k - 1] * mu[n - k - 1];
        }
        c.push(v);
    }
    c
}

/// Inverse of [`cumulants_from_moments`].
pub fn moments_from_cumulants(c: &[f64]) -> Vec<f64> {
    let mut mu: Vec<f64> = Vec::with_capacity(c.len());
    for n in 1..=c.len() {
        let mut v = c[n - 1];
        for k in 1..n {
            v += binom(n - 1, k - 1) * c[k - 1] * mu[n - k - 1];
        }
        mu.push(v);
    }
    mu
}

pub fn entropy(spec: &Spectrum) -> f64 {
    moments(spec, 1)[0]
}

/// Variance of the modular Hamiltonian.
pub fn capacity(spec: &Spectrum) -> f64 {
    modular_stats(spec, 2).capacity
}

/// Rényi entropy (1/(1−α)) ln Σ λ^α.
pub fn renyi(spec: &Spectrum, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let s: f64 = spec.probs().iter().filter(|&&l| l > 0.0).map(|l| l.powf(alpha)).sum();
    Ok(s.ln() / (1.0 - alpha))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftParams {
    pub n: usize,
    pub b: f64,
}

impl ShiftParams {
    pub fn new(n: usize, b: f64) -> Self {
        Self { n, b }
    }

    /// The smallest shift guaranteeing concavity, b = n − 1.
    pub fn minimal(n: usize) -> Self {
        Self { n, b: n as f64 - 1.0 }
    }

    pub fn concave(&self) -> bool {
        self.b >= self.n as f64 - 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftedMoment {
    pub value: f64,
    /// Set when b < n − 1: monotonicity under majorization is not guaranteed.
    pub nonconcave_shift: bool,
}

/// M⁽ⁿ⁾(ρ; b) = Σ λ (−ln λ + b)^n − b^n.
pub fn shifted_moment(spec: &Spectrum, p: ShiftParams) -> ShiftedMoment {
    let n = p.n as i32;
    let mut acc = 0.0;
    for &l in spec.probs() {
        if l > 0.0 {
            acc += l * (-l.ln() + p.b).powi(n);
        }
    }
    ShiftedMoment { value: acc - p.b.powi(n), nonconcave_shift: !p.concave() }
}

/// M⁽ⁿ⁾(ρ; n − 1).
pub fn m_n(spec: &Spectrum, n: usize) -> f64 {
    shifted_moment(spec, ShiftParams::minimal(n)).value
}

/// Σ_{k=1..n} binom(n,k) b^{n−k} μ_k.
pub fn shifted_moment_from_moments(mu: &[f64], n: usize, b: f64) -> f64 {
    assert!(mu.len() >= n, "need {n} moments, have {}", mu.len());
    (1..=n).map(|k| binom(n, k) * b.powi((n - k) as i32) * mu[k - 1]).sum()
}

/// e^x − Σ_{m<n} x^m/m!, free of cancellation for small |x|.
fn exp_remainder(x: f64, n: usize) -> f64 {
    if x.abs() < 1.0 {
        let mut term = 1.0;
        for m in 1..=n {
            term *= x / m as f64;
        }
        let mut sum = term;
        let mut m = n;
        loop {
            m += 1;
            term *= x / m as f64;
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() || m > n + 60 {
                break;
            }
        }
        sum
    } else {
        let mut poly = 0.0;
        let mut term = 1.0;
        for m in 0..n {
            if m > 0 {
                term *= x / m as f64;
            }
            poly += term;
        }
        x.exp() - poly
    }
}

/// n-th derivative at δ = 0 of g(δ) = Σ w_i e^{δ L_i}, by a central
/// difference of step h with one Richardson step. The degree-(n−1) Taylor
/// part of each exponential is removed first; the n-th difference of a
/// polynomial of that degree vanishes identically, so this only removes
/// cancellation.
pub(crate) fn generating_fd(w: &[f64], l: &[f64], n: usize, h: f64) -> f64 {
    let g = |d: f64| -> f64 { w.iter().zip(l).map(|(wi, li)| wi * exp_remainder(d * li, n)).sum() };
    let diff = |h: f64| -> f64 {
        let mut s = 0.0;
        for j in 0..=n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * binom(n, j) * g((n as f64 / 2.0 - j as f64) * h);
        }
        s / h.powi(n as i32)
    };
    (4.0 * diff(h / 2.0) - diff(h)) / 3.0
}

pub const FD_STEP_RANGE: (f64, f64) = (1e-4, 1e-1);
pub const FD_DEFAULT_STEP: f64 = 1e-3;

pub(crate) fn check_step(h: f64) -> Result<()> {
    if !(FD_STEP_RANGE.0..=FD_STEP_RANGE.1).contains(&h) {
        return Err(Error::StepOutOfRange(h));
    }
    Ok(())
}

/// M⁽ⁿ⁾ from finite differences of k_α = e^{−αb} Σ λ^α at α = 1:
/// e^b (−1)^n ∂ⁿ_α k_α − b^n.
pub fn shifted_moment_fd(spec: &Spectrum, p: ShiftParams, h: f64) -> Result<f64> {
    check_step(h)?;
    let (w, l): (Vec<f64>, Vec<f64>) = spec
        .probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| (x * (-p.b).exp(), x.ln() - p.b))
        .unzip();
    let d = generating_fd(&w, &l, p.n, h);
    let sign = if p.n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(p.b.exp() * sign * d - p.b.powi(p.n as i32))
}

/// μ_n + Σ_{j=1}^{n−1} γ_j μ_j + γ_0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaMonotone {
    pub n: usize,
    /// γ_0..γ_{n−1}.
    pub gammas: Vec<f64>,
}

impl GammaMonotone {
    pub fn new(n: usize, gammas: Vec<f64>) -> Result<Self> {
        if n == 0 || gammas.len() != n {
            return Err(Error::InvalidInput(format!("need n >= 1 and n coefficients, got n={n}, {}", gammas.len())));
        }
        Ok(Self { n, gammas })
    }

    /// The binomial coefficients reproducing M⁽ⁿ⁾(·; b).
    pub fn from_shift(p: ShiftParams) -> Self {
        let mut gammas = vec![0.0; p.n];
        for (j, g) in gammas.iter_mut().enumerate().skip(1) {
            *g = binom(p.n, j) * p.b.powi((p.n - j) as i32);
        }
        Self { n: p.n, gammas }
    }

    fn poly(&self, u: f64) -> (f64, f64, f64) {
        // p(u) = u^n + Σ γ_j u^j + γ_0, with first and second derivatives
        let mut c = self.gammas.clone();
        c.push(1.0);
        let (mut p, mut dp, mut d2p) = (0.0, 0.0, 0.0);
        for (j, cj) in c.iter().enumerate().rev() {
            let jf = j as f64;
            p = p * u + cj;
            if j >= 1 {
                dp = dp * u + jf * cj;
            }
            if j >= 2 {
                d2p = d2p * u + jf * (jf - 1.0) * cj;
            }
        }
        (p, dp, d2p)
    }

    /// d²/dx² [x·p(−ln x)] = (p″(u) − p′(u))/x at u = −ln x.
    pub fn second_derivative(&self, x: f64) -> f64 {
        let (_, dp, d2p) = self.poly(-x.ln());
        (d2p - dp) / x
    }
}

pub fn gamma_monotone(spec: &Spectrum, gm: &GammaMonotone) -> f64 {
    let mu = moments(spec, gm.n);
    mu[gm.n - 1] + (1..gm.n).map(|j| gm.gammas[j] * mu[j - 1]).sum::<f64>() + gm.gammas[0]
}

/// True iff x·F_n(x) has nonpositive curvature at 10³ log-spaced points of (0, 1].
pub fn concavity_check(gm: &GammaMonotone) -> bool {
    log_grid(1000).into_iter().all(|x| gm.second_derivative(x) <= 1e-9)
}

/// `count` log-spaced points from 1e−12 to 1.
pub fn log_grid(count: usize) -> Vec<f64> {
    (0..count).map(|i| 10f64.powf(-12.0 + 12.0 * i as f64 / (count - 1) as f64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// F with F′ + F″ = G for an extremal G ≥ 0 on the negative half-line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalPoly {
    pub n: usize,
    pub roots: Vec<f64>,
    /// f_0..f_n (f_0 = 0).
    pub fcoeffs: Vec<f64>,
    /// g_0..g_{n−1}.
    pub gcoeffs: Vec<f64>,
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(c: &[f64], y: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * y + v)
}

pub fn root_count(n: usize) -> usize {
    (n - 1) / 2
}

/// Builds G = Π(y + a_i)² (even n−1) or −y·Π(y + a_i)² (odd n−1) and solves
/// for F top-down.
pub fn extremal_poly(n: usize, roots: &[f64]) -> Result<ExtremalPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("degree must be >= 1".into()));
    }
    if roots.len() != root_count(n) {
        return Err(Error::RootCount { n, expected: root_count(n), got: roots.len() });
    }
    if let Some(&a) = roots.iter().find(|&&a| !(a >= 0.0)) {
        return Err(Error::NegativeRoot(a));
    }
    let mut g = vec![1.0];
    for &a in roots {
        g = poly_mul(&g, &[a * a, 2.0 * a, 1.0]);
    }
    if (n - 1) % 2 == 1 {
        g = poly_mul(&g, &[0.0, -1.0]);
    }
    debug_assert_eq!(g.len(), n);
    let mut f = vec![0.0; n + 2];
    f[n] = g[n - 1] / n as f64;
    for j in (0..n - 1).rev() {
        let jf = j as f64;
        f[j + 1] = (g[j] - (jf + 2.0) * (jf + 1.0) * f[j + 2]) / (jf + 1.0);
    }
    f.truncate(n + 1);
    Ok(ExtremalPoly { n, roots: roots.to_vec(), fcoeffs: f, gcoeffs: g })
}

impl ExtremalPoly {
    pub fn parity(&self) -> Parity {
        if (self.n - 1).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn f(&self, y: f64) -> f64 {
        poly_eval(&self.fcoeffs, y)
    }

    pub fn g(&self, y: f64) -> f64 {
        poly_eval(&self.gcoeffs, y)
    }

    /// Largest |(j+1) f_{j+1} + (j+2)(j+1) f_{j+2} − g_j| over j.
    pub fn identity_residual(&self) -> f64 {
        let f = |k: usize| self.fcoeffs.get(k).copied().unwrap_or(0.0);
        (0..self.n)
            .map(|j| {
                let jf = j as f64;
                ((jf + 1.0) * f(j + 1) + (jf + 2.0) * (jf + 1.0) * f(j + 2) - self.gcoeffs[j]).abs()
            })
            .fold(0.0, f64::max)
    }

    /// x ↦ −x·F(ln x), the scalar function whose trace gives −P.
    pub fn induced(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -x * self.f(x.ln())
        }
    }
}

/// P⁽ⁿ⁾_E(ρ) = n Σ λ F(ln λ). The factor n makes the leading term −μ_n, so
/// n = 1 gives −S and n = 2 gives −M⁽²⁾(ρ; 1).
pub fn extremal_value(spec: &Spectrum, poly: &ExtremalPoly) -> f64 {
    let s: f64 = spec.probs().iter().filter(|&&l| l > 0.0).map(|&l| l * poly.f(l.ln())).sum();
    poly.n as f64 * s
}

/// ΔM_n = M⁽ⁿ⁾(σ; n−1) − M⁽ⁿ⁾(ρ; n−1), n = 1..=nmax.
pub fn delta_m(rho: &Spectrum, sigma: &Spectrum, nmax: usize) -> Vec<f64> {
    (1..=nmax).map(|n| m_n(sigma, n) - m_n(rho, n)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slack {
    pub value: f64,
    /// The quadratic's vertex lies at a < 0; the value is taken at a = 0.
    pub boundary: bool,
}

const DEGENERATE: f64 = 1e-12;

/// min over a ≥ 0 of scale·(w2 a² + w1 a + w0). The vertex is used when
/// it lies in a ≥ 0, else the boundary a = 0.
pub(crate) fn quadratic_slack(scale: f64, w2: f64, w1: f64, w0: f64) -> Result<Slack> {
    if w2.abs() <= DEGENERATE {
        if w1.abs() > DEGENERATE {
            return Err(Error::DegenerateDenominator);
        }
        return Ok(Slack { value: scale * w0, boundary: true });
    }
    if w2 < 0.0 {
        // unbounded below as a grows
        return Ok(Slack { value: f64::NEG_INFINITY, boundary: false });
    }
    let a0 = -w1 / (2.0 * w2);
    if a0 < 0.0 {
        Ok(Slack { value: scale * w0, boundary: true })
    } else {
        Ok(Slack { value: scale * (w0 - w1 * w1 / (4.0 * w2)), boundary: false })
    }
}

/// Slack from ΔM_1..ΔM_3: ΔM_3 − 3ΔM_2 − (3/4)ΔM_2²/ΔM_1.
pub fn inequality3_from_delta(dm: &[f64]) -> Result<Slack> {
    let (d1, d2, d3) = (dm[0], dm[1], dm[2]);
    if d1 == 0.0 && d2 == 0.0 && d3 == 0.0 {
        return Ok(Slack { value: 0.0, boundary: false });
    }
    quadratic_slack(3.0, d1, -d2, d3 / 3.0 - d2)
}

/// Slack from ΔM_2..ΔM_4: ΔM_4 − 8ΔM_3 + 6ΔM_2 − (8/9)(ΔM_3 − 3ΔM_2)²/ΔM_2.
pub fn inequality4_from_delta(dm: &[f64]) -> Result<Slack> {
    let (d2, d3, d4) = (dm[1], dm[2], dm[3]);
    if d2 == 0.0 && d3 == 0.0 && d4 == 0.0 {
        return Ok(Slack { value: 0.0, boundary: false });
    }
    quadratic_slack(4.0, d2 / 2.0, -(2.0 / 3.0) * (d3 - 3.0 * d2), (d4 - 8.0 * d3 + 6.0 * d2) / 4.0)
}

pub fn inequality3_slack(rho: &Spectrum, sigma: &Spectrum) -> Result<Slack> {
    inequality3_from_delta(&delta_m(rho, sigma, 3))
}

pub fn inequality4_slack(rho: &Spectrum, sigma: &Spectrum) -> Result<Slack> {
    inequality4_from_delta(&delta_m(rho, sigma, 4))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub grid: usize,
    /// Upper bound on every root; `None` means 2·(S(ρ) + S(σ) + n).
    pub a_max: Option<f64>,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { grid: 32, a_max: None, max_iter: 100, tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizedSlack {
    pub slack: f64,
    pub roots: Vec<f64>,
    pub iterations: usize,
}

/// P⁽ⁿ⁾_E(ρ) − P⁽ⁿ⁾_E(σ) at the given roots.
pub fn extremal_slack_at(rho: &Spectrum, sigma: &Spectrum, n: usize, roots: &[f64]) -> Result<f64> {
    let poly = extremal_poly(n, roots)?;
    Ok(extremal_value(rho, &poly) - extremal_value(sigma, &poly))
}

/// Minimum over root vectors in [0, a_max]^k of P⁽ⁿ⁾_E(ρ) − P⁽ⁿ⁾_E(σ), by a
/// coarse grid followed by coordinate descent.
pub fn optimized_extremal_slack(rho: &Spectrum, sigma: &Spectrum, n: usize, cfg: SearchConfig) -> Result<OptimizedSlack> {
    if n < 3 {
        return Err(Error::InvalidInput("optimization needs n >= 3".into()));
    }
    if cfg.grid < 2 {
        return Err(Error::InvalidInput("grid needs at least 2 points".into()));
    }
    let k = root_count(n);
    let a_max = cfg.a_max.unwrap_or(2.0 * (entropy(rho) + entropy(sigma) + n as f64));
    let eval = |a: &[f64]| extremal_slack_at(rho, sigma, n, a).expect("roots are in range");
    let spacing = a_max / (cfg.grid - 1) as f64;
    let total = cfg.grid.pow(k as u32);
    let decode = |mut idx: usize| -> Vec<f64> {
        let mut a = vec![0.0; k];
        for v in a.iter_mut() {
            *v = (idx % cfg.grid) as f64 * spacing;
            idx /= cfg.grid;
        }
        a
    };
    let (best_idx, mut best) = (0..total)
        .into_par_iter()
        .map(|i| (i, eval(&decode(i))))
        .reduce(|| (usize::MAX, f64::INFINITY), |x, y| if y.1 < x.1 || (y.1 == x.1 && y.0 < x.0) { y } else { x });
    let mut a = decode(best_idx);
    let mut step = spacing;
    let mut iterations = 0;
    while step >= cfg.tol {
        if iterations >= cfg.max_iter {
            return Err(Error::SearchBudgetExceeded { iterations, best_slack: best, best_roots: a });
        }
        iterations += 1;
        let mut improved = false;
        for i in 0..k {
            for dir in [1.0, -1.0] {
                loop {
                    let mut trial = a.clone();
                    trial[i] = (a[i] + dir * step).clamp(0.0, a_max);
                    if trial[i] == a[i] {
                        break;
                    }
                    let v = eval(&trial);
                    if v < best {
                        best = v;
                        a = trial;
                        improved = true;
                    } else {
                        break;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(OptimizedSlack { slack: best, roots: a, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::normalize;

    fn sp(v: &[f64]) -> Spectrum {
        normalize(v).unwrap()
    }

    const LN2: f64 = std::f64::consts::LN_2;

    #[test]
    fn moment_examples() {
        assert!((moments(&Spectrum::uniform(2), 2)[1] - LN2 * LN2).abs() < 1e-15);
        assert!(moments(&Spectrum::pure(3), 5).iter().all(|&m| m == 0.0));
        assert!((moments(&sp(&[0.5, 0.3, 0.2]), 1)[0] - 1.029_653_014_064_573_7).abs() < 1e-14);
    }

    #[test]
    fn cumulant_examples() {
        let st = modular_stats(&Spectrum::uniform(5), 6);
        assert!((st.cumulants[0] - 5f64.ln()).abs() < 1e-14);
        assert!(st.cumulants[1..].iter().all(|c| c.abs() < 1e-12));
        let mu = [1.3, 2.1, 4.2, 9.9, 25.0];
        let back = moments_from_cumulants(&cumulants_from_moments(&mu));
        for (a, b) in mu.iter().zip(&back) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_cumulants_to_fourth_order() {
        let s = sp(&[0.55, 0.25, 0.15, 0.05]);
        let mu = moments(&s, 4);
        let c = cumulants_from_moments(&mu);
        let c3 = mu[2] - 3.0 * mu[1] * mu[0] + 2.0 * mu[0].powi(3);
        let c4 = mu[3] - 4.0 * mu[2] * mu[0] - 3.0 * mu[1] * mu[1] + 12.0 * mu[1] * mu[0] * mu[0] - 6.0 * mu[0].powi(4);
        assert!((c[2] - c3).abs() < 1e-12);
        assert!((c[3] - c4).abs() < 1e-12);
        assert!((mu[1] - (c[0] * c[0] + c[1])).abs() < 1e-12);
    }

    #[test]
    fn renyi_examples() {
        assert!((renyi(&Spectrum::uniform(4), 2.7).unwrap() - 4f64.ln()).abs() < 1e-14);
        assert!(renyi(&Spectrum::pure(3), 0.5).unwrap().abs() < 1e-15);
        assert!((renyi(&sp(&[0.75, 0.25]), 2.0).unwrap() - 0.470_003_629_245_735_5).abs() < 1e-14);
        assert!(matches!(renyi(&Spectrum::pure(2), 1.0), Err(Error::AlphaOutOfRange(_))));
        assert!(renyi(&Spectrum::pure(2), -1.0).is_err());
    }

    #[test]
    fn shifted_examples() {
        for d in [2usize, 3, 7] {
            for (n, b) in [(1, 0.0), (2, 1.0), (3, 2.5)] {
                let v = shifted_moment(&Spectrum::uniform(d), ShiftParams::new(n, b)).value;
                let expect = ((d as f64).ln() + b).powi(n as i32) - b.powi(n as i32);
                assert!((v - expect).abs() < 1e-12);
            }
        }
        assert_eq!(m_n(&Spectrum::pure(4), 3), 0.0);
        assert!((m_n(&Spectrum::uniform(2), 2) - 1.866_747_375_038_092_3).abs() < 1e-12);
        assert!(shifted_moment(&Spectrum::uniform(2), ShiftParams::new(3, 1.0)).nonconcave_shift);
        assert!(!shifted_moment(&Spectrum::uniform(2), ShiftParams::new(3, 2.0)).nonconcave_shift);
    }

    #[test]
    fn fd_examples() {
        let v = shifted_moment_fd(&Spectrum::uniform(2), ShiftParams::new(1, 0.0), 1e-3).unwrap();
        assert!((v - LN2).abs() < 1e-8);
        let s = sp(&[0.75, 0.25]);
        let p = ShiftParams::new(2, 1.0);
        assert!((shifted_moment_fd(&s, p, 1e-3).unwrap() - shifted_moment(&s, p).value).abs() < 1e-6);
        assert!(shifted_moment_fd(&Spectrum::pure(2), ShiftParams::new(3, 2.0), 1e-3).unwrap().abs() < 1e-6);
        assert!(matches!(shifted_moment_fd(&s, p, 0.5), Err(Error::StepOutOfRange(_))));
    }

    #[test]
    fn gamma_examples() {
        let s = sp(&[0.6, 0.3, 0.1]);
        let p = ShiftParams::new(3, 2.0);
        let gm = GammaMonotone::from_shift(p);
        assert!((gamma_monotone(&s, &gm) - shifted_moment(&s, p).value).abs() < 1e-12);
        assert!(concavity_check(&gm));
        let g1 = GammaMonotone::new(1, vec![0.0]).unwrap();
        assert!((gamma_monotone(&s, &g1) - entropy(&s)).abs() < 1e-15);
        let s2 = sp(&[0.6, 0.4]);
        let g2 = GammaMonotone::new(2, vec![1.0, 2.0]).unwrap();
        let direct: f64 = s2.probs().iter().map(|l| l * (1.0 - l.ln()).powi(2)).sum();
        assert!((gamma_monotone(&s2, &g2) - direct).abs() < 1e-14);
        assert!(!concavity_check(&GammaMonotone::from_shift(ShiftParams::new(3, 0.5))));
    }

    #[test]
    fn extremal_poly_examples() {
        let p2 = extremal_poly(2, &[]).unwrap();
        assert_eq!(p2.fcoeffs, vec![0.0, 1.0, -0.5]);
        let a = 1.7;
        let p3 = extremal_poly(3, &[a]).unwrap();
        let expect3 = [0.0, a * a - 2.0 * a + 2.0, a - 1.0, 1.0 / 3.0];
        for (x, y) in p3.fcoeffs.iter().zip(expect3) {
            assert!((x - y).abs() < 1e-14);
        }
        let p4 = extremal_poly(4, &[a]).unwrap();
        let expect4 = [0.0, a * a - 4.0 * a + 6.0, -a * a / 2.0 + 2.0 * a - 3.0, -2.0 * a / 3.0 + 1.0, -0.25];
        for (x, y) in p4.fcoeffs.iter().zip(expect4) {
            assert!((x - y).abs() < 1e-14);
        }
        assert!(matches!(extremal_poly(3, &[-0.1]), Err(Error::NegativeRoot(_))));
        assert!(matches!(extremal_poly(5, &[0.1]), Err(Error::RootCount { .. })));
        assert_eq!(p4.parity(), Parity::Odd);
    }

    #[test]
    fn extremal_value_examples() {
        let p2 = extremal_poly(2, &[]).unwrap();
        assert_eq!(extremal_value(&Spectrum::pure(3), &p2), 0.0);
        assert!((extremal_value(&Spectrum::uniform(2), &p2) + 1.866_747_375_038_092_3).abs() < 1e-12);
        let p1 = extremal_poly(1, &[]).unwrap();
        assert!((extremal_value(&sp(&[0.5, 0.3, 0.2]), &p1) + 1.029_653_014_064_573_7).abs() < 1e-14);
    }

    #[test]
    fn delta_m_closed_forms() {
        let dm = delta_m(&sp(&[1.0, 0.0]), &Spectrum::uniform(2), 3);
        assert!((dm[0] - LN2).abs() < 1e-14);
        assert!((dm[1] - ((LN2 + 1.0).powi(2) - 1.0)).abs() < 1e-13);
        assert!((dm[2] - ((LN2 + 2.0).powi(3) - 8.0)).abs() < 1e-12);
        let s = sp(&[0.7, 0.2, 0.1]);
        assert!(delta_m(&s, &s, 6).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn inequality_examples() {
        let (r, s) = (sp(&[1.0, 0.0]), Spectrum::uniform(2));
        let v = inequality3_slack(&r, &s).unwrap();
        let dm = delta_m(&r, &s, 3);
        let expect = dm[2] - 3.0 * dm[1] - 0.75 * dm[1] * dm[1] / dm[0];
        assert!((v.value - expect).abs() < 1e-12 && !v.boundary);
        assert!((v.value - 2.16).abs() < 0.01);
        assert!(inequality4_slack(&r, &s).unwrap().value > 0.0);
        let t = sp(&[0.6, 0.3, 0.1]);
        assert_eq!(inequality3_slack(&t, &t).unwrap().value, 0.0);
        assert_eq!(inequality4_slack(&t, &t).unwrap().value, 0.0);
    }

    #[test]
    fn degenerate_denominator() {
        assert!(matches!(inequality3_from_delta(&[0.0, 0.5, 1.0]), Err(Error::DegenerateDenominator)));
        let b = inequality3_from_delta(&[1.0, -0.5, 1.0]).unwrap();
        assert!(b.boundary && (b.value - (1.0 + 1.5)).abs() < 1e-15);
    }

    #[test]
    fn extremal_slack_matches_quadratic() {
        let (r, s) = (sp(&[0.6, 0.3, 0.1]), sp(&[0.4, 0.35, 0.25]));
        let dm = delta_m(&r, &s, 4);
        for a in [0.0, 0.7, 3.1] {
            let s3 = extremal_slack_at(&r, &s, 3, &[a]).unwrap();
            let q3 = 3.0 * (dm[0] * a * a - dm[1] * a + dm[2] / 3.0 - dm[1]);
            assert!((s3 - q3).abs() < 1e-11);
            let s4 = extremal_slack_at(&r, &s, 4, &[a]).unwrap();
            let q4 = 4.0
                * (dm[1] / 2.0 * a * a - (2.0 / 3.0) * (dm[2] - 3.0 * dm[1]) * a
                    + (dm[3] - 8.0 * dm[2] + 6.0 * dm[1]) / 4.0);
            assert!((s4 - q4).abs() < 1e-10);
        }
    }

    #[test]
    fn optimized_examples() {
        let (r, s) = (sp(&[1.0, 0.0]), Spectrum::uniform(2));
        let o = optimized_extremal_slack(&r, &s, 5, SearchConfig::default()).unwrap();
        assert!(o.slack >= 0.0);
        let t = sp(&[0.5, 0.3, 0.2]);
        assert_eq!(optimized_extremal_slack(&t, &t, 5, SearchConfig::default()).unwrap().slack, 0.0);
        let (r, s) = (sp(&[0.6, 0.3, 0.1]), sp(&[0.4, 0.35, 0.25]));
        let o3 = optimized_extremal_slack(&r, &s, 3, SearchConfig::default()).unwrap();
        assert!((o3.slack - inequality3_slack(&r, &s).unwrap().value).abs() < 1e-6);
        let o4 = optimized_extremal_slack(&r, &s, 4, SearchConfig::default()).unwrap();
        assert!((o4.slack - inequality4_slack(&r, &s).unwrap().value).abs() < 1e-6);
    }

    #[test]
    fn budget_exceeded_reports_best() {
        let (r, s) = (sp(&[0.6, 0.3, 0.1]), sp(&[0.4, 0.35, 0.25]));
        let cfg = SearchConfig { max_iter: 2, ..SearchConfig::default() };
        match optimized_extremal_slack(&r, &s, 5, cfg) {
            Err(Error::SearchBudgetExceeded { best_roots, .. }) => assert_eq!(best_roots.len(), 2),
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
