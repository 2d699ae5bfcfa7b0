//! Closed-form CFT curves for primary excited states of 1+1d free theories,
//! together with the Fisher–Hartwig constants of the XX chain.

use crate::error::{Error, Result};
use crate::numerics::quad::adaptive_simpson;
use crate::numerics::roots::scan_and_bisect;
use crate::numerics::special::{digamma, ln_gamma, ln_gamma_complex, trigamma};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

pub const DERIV_STEP: f64 = 1e-3;
pub const UPSILON_CUTOFF: f64 = 20.0;
pub const UPSILON_TOL: f64 = 1e-9;
pub const CROSSING_WINDOW: (f64, f64) = (0.01, 0.5);
pub const CROSSING_TOL: f64 = 1e-6;
pub const ISING_C1PRIME: f64 = 0.479;
pub const ISING_D2LNCN: f64 = 0.385;

/// Model constants. `c1prime` stores −c′₁; `big_l = None` is the infinite line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CftParams {
    pub gamma: f64,
    pub c: f64,
    pub c1prime: f64,
    pub d2lncn: f64,
    pub ell: f64,
    #[serde(rename = "L")]
    pub big_l: Option<f64>,
}

impl CftParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::DomainError(format!("gamma must be >= 0, got {}", self.gamma)));
        }
        if !(self.ell > 0.0) {
            return Err(Error::DomainError(format!("ell must be > 0, got {}", self.ell)));
        }
        if let Some(l) = self.big_l {
            if !(l > self.ell) {
                return Err(Error::DomainError(format!("need 0 < ell < L, got ell={} L={l}", self.ell)));
            }
        }
        Ok(())
    }

    /// Current state of the XX chain: γ = 1, c = 1, Fisher–Hartwig constants.
    pub fn xx_current(ell: f64, big_l: Option<f64>) -> Result<Self> {
        let k = xx_constants()?;
        Ok(Self { gamma: 1.0, c: 1.0, c1prime: k.c1prime, d2lncn: k.d2lncn, ell, big_l })
    }

    /// ψ state of the critical Ising chain: γ = 1/2, c = 1/2, fitted constants.
    pub fn ising_psi(ell: f64, big_l: Option<f64>) -> Self {
        Self { gamma: 0.5, c: 0.5, c1prime: ISING_C1PRIME, d2lncn: ISING_D2LNCN, ell, big_l }
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::DomainError(format!("x must lie in (0,1), got {x}")))
    }
}

/// sin πx evaluated on the reflected argument so that x and 1 − x agree bitwise.
fn sin_pi(x: f64) -> f64 {
    (PI * x.min(1.0 - x)).sin()
}

pub fn ln_f_n(x: f64, n: f64) -> Result<f64> {
    check_x(x)?;
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::DomainError(format!("n must be > 0, got {n}")));
    }
    if n == 1.0 {
        return Ok(0.0);
    }
    let s = sin_pi(x);
    let cs = 1.0 / s;
    let a = 0.5 * (1.0 + n + n * cs);
    let b = 0.5 * (1.0 - n + n * cs);
    Ok(2.0 * n * (2.0 * s / n).ln() + 2.0 * (ln_gamma(a) - ln_gamma(b)))
}

pub fn f_n(x: f64, n: f64) -> Result<f64> {
    ln_f_n(x, n).map(f64::exp)
}

/// S⁽ⁿ⁾_O − S⁽ⁿ⁾_gs = γ ln f_n / (1 − n).
pub fn delta_renyi(x: f64, n: usize, gamma: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::DomainError(format!("Renyi index must be >= 2, got {n}")));
    }
    Ok(gamma * ln_f_n(x, n as f64)? / (1.0 - n as f64))
}

fn richardson_derivs(x: f64) -> Result<(f64, f64)> {
    let g0 = ln_f_n(x, 1.0)?;
    let d = |h: f64| -> Result<(f64, f64)> {
        let gp = ln_f_n(x, 1.0 + h)?;
        let gm = ln_f_n(x, 1.0 - h)?;
        Ok(((gp - gm) / (2.0 * h), (gp - 2.0 * g0 + gm) / (h * h)))
    };
    let (a1, a2) = d(DERIV_STEP)?;
    let (b1, b2) = d(0.5 * DERIV_STEP)?;
    Ok(((4.0 * b1 - a1) / 3.0, (4.0 * b2 - a2) / 3.0))
}

/// (∂_n ln f_n, ∂²_n ln f_n) at n = 1 in closed form.
pub fn ln_f_derivs(x: f64) -> Result<(f64, f64)> {
    check_x(x)?;
    let s = sin_pi(x);
    let z = 0.5 / s;
    let d1 = 2.0 * ((2.0 * s).ln() + digamma(z) + s);
    let d2 = -2.0 + 2.0 * trigamma(z) / s - 2.0 * (1.0 + s).powi(2);
    Ok((d1, d2))
}

/// (ΔS, ΔC) from numerical n-derivatives: step 1e−3 plus one Richardson step.
pub fn delta_s_and_c(x: f64, gamma: f64) -> Result<(f64, f64)> {
    let (d1, d2) = richardson_derivs(x)?;
    Ok((-gamma * d1, gamma * d2))
}

pub fn delta_s_and_c_analytic(x: f64, gamma: f64) -> Result<(f64, f64)> {
    let (d1, d2) = ln_f_derivs(x)?;
    Ok((-gamma * d1, gamma * d2))
}

/// S_O − C_O as a function of x = ℓ/L.
pub fn s_minus_c(x: f64, p: &CftParams) -> Result<f64> {
    check_x(x)?;
    let s = sin_pi(x);
    let z = 0.5 / s;
    let first = (2.0 * s).ln() + digamma(z) + s;
    let second = -1.0 + trigamma(z) / s - (1.0 + s).powi(2);
    Ok(-2.0 * p.gamma * (first + second) + p.c1prime - p.d2lncn)
}

/// Ground-state (S, C) with ε = 1.
pub fn gs_entropy_capacity(p: &CftParams) -> Result<(f64, f64)> {
    p.validate()?;
    let w = match p.big_l {
        Some(l) => (l / PI * (PI * p.ell / l).sin()).ln(),
        None => p.ell.ln(),
    };
    let lead = p.c / 3.0 * w;
    Ok((lead + p.c1prime, lead + p.d2lncn))
}

/// ΔM₂ = M⁽²⁾_O(·;1) − M⁽²⁾_gs(·;1) at fixed ℓ and L = ℓ/x.
pub fn delta_m2(x: f64, p: &CftParams) -> Result<f64> {
    check_x(x)?;
    let q = CftParams { big_l: Some(p.ell / x), ..*p };
    let (s_gs, c_gs) = gs_entropy_capacity(&q)?;
    delta_m2_with_gs(x, p.gamma, s_gs, c_gs)
}

pub fn delta_m2_with_gs(x: f64, gamma: f64, s_gs: f64, c_gs: f64) -> Result<f64> {
    let (ds, dc) = delta_s_and_c_analytic(x, gamma)?;
    let s = s_gs + ds;
    let c = c_gs + dc;
    Ok((s + 1.0).powi(2) + c - (s_gs + 1.0).powi(2) - c_gs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpsilonDerivatives {
    pub d1: f64,
    pub d2: f64,
}

fn im_ln_gamma_half(w: f64) -> f64 {
    ln_gamma_complex(Complex64::new(0.5, w)).im
}

/// Υ′(1), Υ″(1) on [−w_max, w_max] using evenness of the integrands.
pub fn upsilon_derivatives_with(w_max: f64, tol: f64) -> Result<UpsilonDerivatives> {
    let g1 = |w: f64| {
        let ch = (PI * w).cosh();
        -PI * w / (ch * ch)
    };
    let g2 = |w: f64| {
        let ch = (PI * w).cosh();
        (-2.0 * PI * w + 2.0 * PI * PI * w * w * (PI * w).tanh()) / (ch * ch)
    };
    let d1 = 2.0 * adaptive_simpson(|w| g1(w) * (-2.0 * im_ln_gamma_half(w)), 0.0, w_max, 0.5 * tol)?;
    let d2 = 2.0 * adaptive_simpson(|w| g2(w) * (-2.0 * im_ln_gamma_half(w)), 0.0, w_max, 0.5 * tol)?;
    Ok(UpsilonDerivatives { d1, d2 })
}

pub fn upsilon_derivatives() -> Result<UpsilonDerivatives> {
    upsilon_derivatives_with(UPSILON_CUTOFF, UPSILON_TOL)
}

/// XX constants at k_F = π/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XxConstants {
    pub upsilon_d1: f64,
    pub upsilon_d2: f64,
    /// −c′₁ = ln2/3 − Υ′(1)
    pub c1prime: f64,
    /// ∂²_n ln c_n at n=1 = ln2/3 + Υ″(1)
    pub d2lncn: f64,
}

pub fn xx_constants() -> Result<XxConstants> {
    static CACHE: OnceLock<XxConstants> = OnceLock::new();
    if let Some(k) = CACHE.get() {
        return Ok(*k);
    }
    let u = upsilon_derivatives()?;
    let k = XxConstants {
        upsilon_d1: u.d1,
        upsilon_d2: u.d2,
        c1prime: LN_2 / 3.0 - u.d1,
        d2lncn: LN_2 / 3.0 + u.d2,
    };
    Ok(*CACHE.get_or_init(|| k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingQuantity {
    #[serde(rename = "deltaS")]
    DeltaS,
    #[serde(rename = "deltaC")]
    DeltaC,
    #[serde(rename = "deltaS2")]
    DeltaS2,
    #[serde(rename = "deltaS3")]
    DeltaS3,
    #[serde(rename = "deltaM2")]
    DeltaM2,
    #[serde(rename = "SminusC")]
    SMinusC,
}

impl CrossingQuantity {
    pub const ALL: [CrossingQuantity; 6] = [
        CrossingQuantity::DeltaS,
        CrossingQuantity::DeltaC,
        CrossingQuantity::DeltaS2,
        CrossingQuantity::DeltaS3,
        CrossingQuantity::DeltaM2,
        CrossingQuantity::SMinusC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CrossingQuantity::DeltaS => "deltaS",
            CrossingQuantity::DeltaC => "deltaC",
            CrossingQuantity::DeltaS2 => "deltaS2",
            CrossingQuantity::DeltaS3 => "deltaS3",
            CrossingQuantity::DeltaM2 => "deltaM2",
            CrossingQuantity::SMinusC => "SminusC",
        }
    }

    pub fn eval(self, x: f64, p: &CftParams) -> Result<f64> {
        match self {
            CrossingQuantity::DeltaS => Ok(delta_s_and_c_analytic(x, p.gamma)?.0),
            CrossingQuantity::DeltaC => Ok(delta_s_and_c_analytic(x, p.gamma)?.1),
            CrossingQuantity::DeltaS2 => delta_renyi(x, 2, p.gamma),
            CrossingQuantity::DeltaS3 => delta_renyi(x, 3, p.gamma),
            CrossingQuantity::DeltaM2 => delta_m2(x, p),
            CrossingQuantity::SMinusC => s_minus_c(x, p),
        }
    }
}

impl fmt::Display for CrossingQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CrossingQuantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|q| q.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown quantity {s:?}")))
    }
}

/// Sign change of the quantity on (0.01, 0.5), bisected to 1e−6.
pub fn find_crossing(q: CrossingQuantity, p: &CftParams) -> Result<f64> {
    p.validate()?;
    let f = |x: f64| q.eval(x, p).unwrap_or(f64::NAN);
    scan_and_bisect(f, CROSSING_WINDOW.0, CROSSING_WINDOW.1, 400, CROSSING_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: f64,
    pub quantity: CrossingQuantity,
    pub value: f64,
    pub gamma: f64,
    pub model: String,
    pub ell: f64,
}

pub const CURVE_CSV_HEADER: [&str; 6] = ["x", "quantity", "value", "gamma", "model", "ell"];

pub fn curve(q: CrossingQuantity, p: &CftParams, model: &str, xs: &[f64]) -> Result<Vec<CurvePoint>> {
    p.validate()?;
    xs.par_iter()
        .map(|&x| {
            Ok(CurvePoint { x, quantity: q, value: q.eval(x, p)?, gamma: p.gamma, model: model.to_string(), ell: p.ell })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_n_examples() {
        for x in [0.01, 0.2, 0.5, 0.77, 0.99] {
            assert_eq!(f_n(x, 1.0).unwrap(), 1.0);
        }
        assert!((f_n(0.5, 2.0).unwrap() - 0.5625).abs() < 1e-13);
        assert!((f_n(1e-4, 2.0).unwrap() - 1.0).abs() < 1e-3);
        assert!(f_n(0.0, 2.0).is_err());
        assert!(f_n(0.3, -1.0).is_err());
    }

    #[test]
    fn delta_renyi_examples() {
        assert!((delta_renyi(0.5, 2, 1.0).unwrap() - (16.0f64 / 9.0).ln()).abs() < 1e-12);
        assert!(delta_renyi(1e-5, 3, 1.0).unwrap().abs() < 1e-6);
        let a = delta_renyi(0.3, 2, 1.0).unwrap();
        let b = delta_renyi(0.3, 2, 0.5).unwrap();
        assert!((a - 2.0 * b).abs() < 1e-15);
    }

    #[test]
    fn numeric_vs_analytic_derivatives() {
        for i in 1..50 {
            let x = i as f64 / 50.0;
            let (s, c) = delta_s_and_c(x, 1.0).unwrap();
            let (sa, ca) = delta_s_and_c_analytic(x, 1.0).unwrap();
            assert!((s - sa).abs() < 1e-8 && (c - ca).abs() < 1e-7, "{x}: {s} {sa} {c} {ca}");
        }
    }

    #[test]
    fn s_minus_c_limits() {
        let xx = CftParams::xx_current(100.0, Some(200.0)).unwrap();
        assert!((s_minus_c(1e-6, &xx).unwrap() - 0.191).abs() < 2e-3);
        let is = CftParams::ising_psi(100.0, Some(200.0));
        assert!((s_minus_c(1e-6, &is).unwrap() - 0.094).abs() < 1e-5);
        let (ds, dc) = delta_s_and_c_analytic(1e-5, 1.0).unwrap();
        assert!(ds.abs() < 1e-8 && dc.abs() < 1e-8);
        let (ds, dc) = delta_s_and_c(1e-3, 1.0).unwrap();
        assert!(ds.abs() < 1e-4 && dc.abs() < 1e-4);
    }

    #[test]
    fn upsilon_constants() {
        let u = upsilon_derivatives().unwrap();
        assert!((-u.d1 - 0.495018).abs() < 1e-4, "{u:?}");
        assert!((u.d2 - 0.303516).abs() < 1e-4, "{u:?}");
        let k = xx_constants().unwrap();
        assert!((k.c1prime - 0.726).abs() < 1e-3 && (k.d2lncn - 0.535).abs() < 1e-3);
    }

    #[test]
    fn gs_difference_is_constant() {
        let mut p = CftParams::ising_psi(10.0, Some(200.0));
        let (s1, c1) = gs_entropy_capacity(&p).unwrap();
        p.ell = 100.0;
        let (s2, c2) = gs_entropy_capacity(&p).unwrap();
        assert!(((s1 - c1) - (s2 - c2)).abs() < 1e-14);
        p.big_l = None;
        let (s3, _) = gs_entropy_capacity(&p).unwrap();
        assert!((s3 - (0.5 / 3.0 * 100f64.ln() + ISING_C1PRIME)).abs() < 1e-14);
        p.big_l = Some(50.0);
        assert!(gs_entropy_capacity(&p).is_err());
    }

    #[test]
    fn delta_m2_small_x_and_ell_dependence() {
        let p100 = CftParams::ising_psi(100.0, None);
        let p200 = CftParams::ising_psi(200.0, None);
        assert!(delta_m2(1e-5, &p100).unwrap().abs() < 1e-6);
        assert!((delta_m2(0.3, &p100).unwrap() - delta_m2(0.3, &p200).unwrap()).abs() > 1e-3);
    }

    #[test]
    fn quantity_names_roundtrip() {
        for q in CrossingQuantity::ALL {
            assert_eq!(q.name().parse::<CrossingQuantity>().unwrap(), q);
        }
    }
}
