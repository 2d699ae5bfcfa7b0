//! Landauer erasure ladder and marginal-entropy-production bound.
//!
//! Work is dimensionless: W/(k_B T) = n ln 2 for an n-qubit battery.

use crate::error::{Error, Result};
use crate::monotones::{m_n, modular_stats};
use crate::spectra::Spectrum;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::LN_2;

const LADDER_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErasureReport {
    /// order m ↦ minimal qubit count from M⁽ᵐ⁾.
    pub per_order_min_qubits: BTreeMap<usize, u64>,
    /// Present when the ladder reaches order 3.
    pub tight_third_min_qubits: Option<u64>,
    pub weak_third_min_qubits: Option<u64>,
    /// n ln 2 for the largest qubit count among the bounds.
    pub work_cost: f64,
}

fn ladder_holds(n: u64, m: usize, target: f64) -> bool {
    let lhs = (n as f64 * LN_2 + (m - 1) as f64).powi(m as i32);
    lhs >= target - LADDER_TOL * target.abs().max(1.0)
}

/// Smallest n ≥ 0 with (n ln2 + m − 1)^m ≥ M⁽ᵐ⁾(ρ; m−1) + (m−1)^m.
pub fn min_qubits_for_order(spec: &Spectrum, m: usize) -> u64 {
    let target = m_n(spec, m) + ((m - 1) as f64).powi(m as i32);
    let guess = ((target.max(0.0).powf(1.0 / m as f64) - (m - 1) as f64) / LN_2).floor();
    let mut n = if guess.is_finite() && guess > 1.0 { guess as u64 - 1 } else { 0 };
    while n > 0 && ladder_holds(n - 1, m, target) {
        n -= 1;
    }
    while !ladder_holds(n, m, target) {
        n += 1;
    }
    n
}

pub fn landauer_ladder(spec: &Spectrum, max_order: usize) -> Result<ErasureReport> {
    if !(1..=4).contains(&max_order) {
        return Err(Error::InvalidInput(format!("max order must be in 1..=4, got {max_order}")));
    }
    let per_order: BTreeMap<usize, u64> = (1..=max_order).map(|m| (m, min_qubits_for_order(spec, m))).collect();
    let third = if max_order >= 3 { Some(landauer_third_tight(spec)) } else { None };
    let best = per_order
        .values()
        .copied()
        .chain(third.map(|t| t.tight))
        .max()
        .unwrap_or(0);
    Ok(ErasureReport {
        per_order_min_qubits: per_order,
        tight_third_min_qubits: third.map(|t| t.tight),
        weak_third_min_qubits: third.map(|t| t.weak),
        work_cost: best as f64 * LN_2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThirdOrder {
    pub tight: u64,
    pub weak: u64,
    /// Whether the fallback exhaustive scan was needed.
    pub fallback: bool,
}

struct Cumulants {
    s: f64,
    c: f64,
    c3: f64,
}

fn cumulants(spec: &Spectrum) -> Cumulants {
    let st = modular_stats(spec, 3);
    Cumulants { s: st.cumulants[0], c: st.cumulants[1], c3: st.cumulants[2] }
}

/// LHS − RHS of the tight third-order inequality with X = n ln 2:
/// (X+1)³ − (S+1)³ + 3(X−S) − [C₃ + 3C(S+1)] − ¾[(X+1)² − (S+1)² − C]²/(X−S).
fn tight_slack(n: u64, k: &Cumulants) -> f64 {
    let x = n as f64 * LN_2;
    let d1 = x - k.s;
    let d2 = (x + 1.0).powi(2) - (k.s + 1.0).powi(2) - k.c;
    let lin = (x + 1.0).powi(3) - (k.s + 1.0).powi(3) + 3.0 * d1 - (k.c3 + 3.0 * k.c * (k.s + 1.0));
    let scale = 1.0 + k.s.abs().powi(3) + x.powi(3);
    if d1.abs() <= 1e-12 * scale {
        // ΔM_1 = 0: only the identity transition is admissible
        if d2.abs() <= LADDER_TOL * scale {
            lin
        } else {
            f64::NEG_INFINITY
        }
    } else if d1 < 0.0 {
        f64::NEG_INFINITY
    } else {
        lin - 0.75 * d2 * d2 / d1
    }
}

fn weak_holds(n: u64, k: &Cumulants) -> bool {
    let x = n as f64 * LN_2;
    let lhs = (x + 1.0).powi(3) + 3.0 * x;
    let rhs = (k.s + 1.0).powi(3) + 3.0 * k.s + 3.0 * k.c * (k.s + 1.0) + k.c3;
    lhs >= rhs - LADDER_TOL * rhs.abs().max(1.0)
}

/// Smallest n satisfying the tight third-order inequality, plus the weak form.
pub fn landauer_third_tight(spec: &Spectrum) -> ThirdOrder {
    let k = cumulants(spec);
    let l3 = min_qubits_for_order(spec, 3);
    let holds = |n: u64| {
        let v = tight_slack(n, &k);
        v.is_finite() && v >= -LADDER_TOL * (1.0 + v.abs())
    };
    let start = l3.saturating_sub(2);
    let mut n = start;
    let mut prev = tight_slack(n, &k);
    let mut monotone = true;
    while !holds(n) {
        n += 1;
        let cur = tight_slack(n, &k);
        if cur < prev {
            monotone = false;
            break;
        }
        prev = cur;
        if n > l3 + 64 {
            monotone = false;
            break;
        }
    }
    if monotone && n > start {
        // confirm one step past the hit
        monotone = tight_slack(n + 1, &k) >= tight_slack(n, &k);
    }
    let (tight, fallback) = if monotone {
        (n, false)
    } else {
        ((0..=l3 + 64).find(|&m| holds(m)).unwrap_or(l3 + 64), true)
    };
    let mut weak = 0;
    while !weak_holds(weak, &k) {
        weak += 1;
    }
    ThirdOrder { tight, weak, fallback }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginalBound {
    pub delta_s_sum: f64,
    /// `None` when the radicand is negative (bound not applicable).
    pub bound: Option<f64>,
    pub kappa: f64,
}

/// κ = √(2 ln 2)·(12 ln² 2 + 9 ln² d).
pub fn kappa(d: usize) -> f64 {
    let ld = (d as f64).ln();
    (2.0 * LN_2).sqrt() * (12.0 * LN_2 * LN_2 + 9.0 * ld * ld)
}

/// f(x) = max{x^{1/4}, x^{1/2}}.
pub fn f_mutual(x: f64) -> f64 {
    x.powf(0.25).max(x.sqrt())
}

/// Lower bound on ΔS_S + ΔS_E for a channel acting on a system S and an
/// environment E that end up with mutual information `i_se`.
pub fn marginal_entropy_bound(
    rho_s: &Spectrum,
    rho_e: &Spectrum,
    rho_s_after: &Spectrum,
    rho_e_after: &Spectrum,
    i_se: f64,
    d: usize,
) -> Result<MarginalBound> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("d must be >= 2, got {d}")));
    }
    if !(i_se >= 0.0) {
        return Err(Error::InvalidInput(format!("mutual information must be >= 0, got {i_se}")));
    }
    let (s, sa, e, ea) = (modular_stats(rho_s, 2), modular_stats(rho_s_after, 2), modular_stats(rho_e, 2), modular_stats(rho_e_after, 2));
    let delta_s_sum = (sa.entropy - s.entropy) + (ea.entropy - e.entropy);
    let dcs = sa.capacity - s.capacity;
    let dce = ea.capacity - e.capacity;
    let k = kappa(d);
    let base = s.entropy + e.entropy + 1.0;
    let radicand = 1.0 + (-dcs - dce - k * f_mutual(i_se / LN_2)) / (base * base);
    let bound = if radicand >= 0.0 { Some(base * (radicand.sqrt() - 1.0)) } else { None };
    Ok(MarginalBound { delta_s_sum, bound, kappa: k })
}
