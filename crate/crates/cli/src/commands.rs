use crate::output::{emit, emit_json, fmt_sig, CsvRow, Format};
use modmono::cftanalytic::{self, curve, find_crossing, CftParams, CrossingQuantity, CurvePoint, CURVE_CSV_HEADER};
use modmono::erasure::{landauer_ladder, landauer_third_tight, ErasureReport, ThirdOrder};
use modmono::fermichain::{chain_sweep, ChainModel, ChainRecord, PresetState, CHAIN_CSV_HEADER};
use modmono::monotones::{
    delta_m, extremal_poly, extremal_value, inequality3_slack, inequality4_slack, modular_stats, root_count, shifted_moment,
    ShiftParams, Slack,
};
use modmono::orderlab::{cone_verdict, majorization_verdict, order_census, Family, OrderVerdict, Verdict};
use modmono::relative::{
    clausius_slack, petz_renyi, rel_entropy_production_bounds, relative_delta_m, relative_inequality3_slack,
    relative_shifted_moment, relative_stats, ClausiusReport, EntropyProductionBounds, RelativeStats, ThermalSpec,
};
use modmono::spectra::{read_spectrum, sigma_majorizes, CommutingPair};
use modmono::{Error, Result};
use serde::Serialize;
use std::path::Path;

impl CsvRow for ChainRecord {
    fn header() -> &'static [&'static str] {
        &CHAIN_CSV_HEADER
    }
    fn cells(&self) -> Vec<String> {
        let mut v = vec![self.model.to_string(), self.n.to_string(), self.ell.to_string(), self.state.to_string()];
        v.extend([self.s, self.c, self.c3, self.c4, self.m2, self.m3, self.renyi2, self.renyi3].map(fmt_sig));
        v
    }
}

impl CsvRow for CurvePoint {
    fn header() -> &'static [&'static str] {
        &CURVE_CSV_HEADER
    }
    fn cells(&self) -> Vec<String> {
        vec![fmt_sig(self.x), self.quantity.to_string(), fmt_sig(self.value), fmt_sig(self.gamma), self.model.clone(), fmt_sig(self.ell)]
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e)
}

#[derive(Serialize)]
struct ShiftedEntry {
    n: usize,
    b: f64,
    value: f64,
}

#[derive(Serialize)]
struct ExtremalEntry {
    n: usize,
    roots: Vec<f64>,
    value: f64,
}

#[derive(Serialize)]
struct MonotonesReport {
    dim: usize,
    entropy: f64,
    capacity: f64,
    moments: Vec<f64>,
    cumulants: Vec<f64>,
    shifted: Vec<ShiftedEntry>,
    extremal: Vec<ExtremalEntry>,
}

fn roots_for(n: usize, roots: &[f64]) -> Vec<f64> {
    (0..root_count(n)).map(|i| roots.get(i).copied().unwrap_or(0.0)).collect()
}

pub fn monotones(spectrum: &Path, nmax: usize, roots: &[f64], out: Option<&Path>) -> Result<()> {
    if nmax == 0 || nmax > 8 {
        return Err(Error::InvalidInput(format!("nmax must be in 1..=8, got {nmax}")));
    }
    let s = read_spectrum(spectrum)?;
    let st = modular_stats(&s, nmax);
    let shifted = (1..=nmax)
        .map(|n| {
            let p = ShiftParams::minimal(n);
            ShiftedEntry { n, b: p.b, value: shifted_moment(&s, p).value }
        })
        .collect();
    let extremal = (1..=nmax)
        .map(|n| {
            let r = roots_for(n, roots);
            let poly = extremal_poly(n, &r)?;
            Ok(ExtremalEntry { n, value: extremal_value(&s, &poly), roots: r })
        })
        .collect::<Result<_>>()?;
    let rep = MonotonesReport {
        dim: s.dim(),
        entropy: st.entropy,
        capacity: st.capacity,
        moments: st.moments[..nmax].to_vec(),
        cumulants: st.cumulants[..nmax].to_vec(),
        shifted,
        extremal,
    };
    emit_json(&rep, out).map_err(io)
}

#[derive(Serialize)]
#[serde(untagged)]
enum SlackOrError {
    Slack(Slack),
    Error { error: String },
}

impl From<Result<Slack>> for SlackOrError {
    fn from(r: Result<Slack>) -> Self {
        match r {
            Ok(s) => SlackOrError::Slack(s),
            Err(e) => SlackOrError::Error { error: e.to_string() },
        }
    }
}

#[derive(Serialize)]
struct MajorizeReport {
    majorization: Verdict,
    delta_s: f64,
    delta_m: Vec<f64>,
    inequality3: SlackOrError,
    inequality4: SlackOrError,
    cone_m_sequence: OrderVerdict,
    cone_extremal: OrderVerdict,
}

pub fn majorize(a: &Path, b: &Path, nmax: usize, extremal_nmax: usize, out: Option<&Path>) -> Result<()> {
    let rho = read_spectrum(a)?;
    let sigma = read_spectrum(b)?;
    let rep = MajorizeReport {
        majorization: majorization_verdict(&rho, &sigma),
        delta_s: modular_stats(&sigma, 1).entropy - modular_stats(&rho, 1).entropy,
        delta_m: delta_m(&rho, &sigma, nmax),
        inequality3: inequality3_slack(&rho, &sigma).into(),
        inequality4: inequality4_slack(&rho, &sigma).into(),
        cone_m_sequence: cone_verdict(&rho, &sigma, nmax, Family::MSequence)?,
        cone_extremal: cone_verdict(&rho, &sigma, extremal_nmax, Family::Extremal)?,
    };
    emit_json(&rep, out).map_err(io)
}

#[derive(Serialize)]
struct TransitionReport {
    sigma_majorizes: bool,
    delta_m: Vec<f64>,
    bounds: EntropyProductionBounds,
    inequality3: SlackOrError,
}

#[derive(Serialize)]
struct RelativeReport {
    stats: RelativeStats,
    x: f64,
    shifted: Vec<ShiftedEntry>,
    petz_renyi_2: f64,
    transition: Option<TransitionReport>,
}

pub struct RelativeArgs<'a> {
    pub rho: &'a Path,
    pub sigma: &'a Path,
    pub rho_after: Option<&'a Path>,
    pub sigma_after: Option<&'a Path>,
    pub nmax: usize,
    pub x: Option<f64>,
}

pub fn relative(args: RelativeArgs<'_>, out: Option<&Path>) -> Result<()> {
    let pair = CommutingPair::new(read_spectrum(args.rho)?, read_spectrum(args.sigma)?)?;
    pair.require_full_rank()?;
    let x = args.x.unwrap_or_else(|| pair.s_min());
    let shifted = (1..=args.nmax)
        .map(|n| {
            let b = n as f64 - 1.0;
            Ok(ShiftedEntry { n, b, value: relative_shifted_moment(&pair, n, b, x)? })
        })
        .collect::<Result<_>>()?;
    let transition = match (args.rho_after, args.sigma_after) {
        (Some(r), Some(s)) => {
            let after = CommutingPair::new(read_spectrum(r)?, read_spectrum(s)?)?;
            Some(TransitionReport {
                sigma_majorizes: sigma_majorizes(&pair, &after)?,
                delta_m: relative_delta_m(&pair, &after, args.nmax)?,
                bounds: rel_entropy_production_bounds(&pair, &after)?,
                inequality3: relative_inequality3_slack(&pair, &after).into(),
            })
        }
        (None, None) => None,
        _ => return Err(Error::InvalidInput("--rho-after and --sigma-after must be given together".into())),
    };
    let rep = RelativeReport {
        stats: relative_stats(&pair, args.nmax)?,
        x,
        shifted,
        petz_renyi_2: petz_renyi(&pair, 2.0)?,
        transition,
    };
    emit_json(&rep, out).map_err(io)
}

#[derive(Serialize)]
struct ClausiusOut {
    beta: f64,
    free_energy: f64,
    e_max: f64,
    s_min: f64,
    #[serde(flatten)]
    report: ClausiusReport,
}

pub fn clausius(thermal: &Path, spectrum: &Path, out: Option<&Path>) -> Result<()> {
    let th = ThermalSpec::from_json(&std::fs::read_to_string(thermal)?)?;
    let rho = read_spectrum(spectrum)?;
    let report = clausius_slack(&th, &rho)?;
    let rep = ClausiusOut { beta: th.beta, free_energy: th.free_energy(), e_max: th.e_max(), s_min: th.s_min(), report };
    emit_json(&rep, out).map_err(io)
}

#[derive(Serialize)]
struct ErasureOut {
    #[serde(flatten)]
    report: ErasureReport,
    third_order: Option<ThirdOrder>,
}

pub fn erasure(spectrum: &Path, max_order: usize, out: Option<&Path>) -> Result<()> {
    let s = read_spectrum(spectrum)?;
    let report = landauer_ladder(&s, max_order)?;
    let third_order = (max_order >= 3).then(|| landauer_third_tight(&s));
    emit_json(&ErasureOut { report, third_order }, out).map_err(io)
}

pub fn chain(model: ChainModel, sites: usize, ells: &[usize], state: PresetState, format: Format, out: Option<&Path>) -> Result<()> {
    let recs = chain_sweep(model, sites, ells, state)?;
    emit(&recs, format, out).map_err(io)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CftPreset {
    XxCurrent,
    IsingPsi,
}

impl CftPreset {
    fn label(self) -> &'static str {
        match self {
            CftPreset::XxCurrent => "xx",
            CftPreset::IsingPsi => "ising",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CftOverrides {
    pub gamma: Option<f64>,
    pub c: Option<f64>,
    pub c1prime: Option<f64>,
    pub d2lncn: Option<f64>,
    pub ell: f64,
    pub big_l: Option<f64>,
}

pub fn resolve_params(preset: Option<CftPreset>, o: &CftOverrides) -> Result<CftParams> {
    let base = match preset {
        Some(CftPreset::XxCurrent) => CftParams::xx_current(o.ell, o.big_l)?,
        Some(CftPreset::IsingPsi) => CftParams::ising_psi(o.ell, o.big_l),
        None => CftParams { gamma: 1.0, c: 1.0, c1prime: 0.0, d2lncn: 0.0, ell: o.ell, big_l: o.big_l },
    };
    let p = CftParams {
        gamma: o.gamma.unwrap_or(base.gamma),
        c: o.c.unwrap_or(base.c),
        c1prime: o.c1prime.unwrap_or(base.c1prime),
        d2lncn: o.d2lncn.unwrap_or(base.d2lncn),
        ..base
    };
    p.validate()?;
    Ok(p)
}

#[derive(Serialize)]
struct CrossingOut {
    quantity: CrossingQuantity,
    crossing: f64,
    params: CftParams,
}

pub struct CftArgs {
    pub quantity: CrossingQuantity,
    pub preset: Option<CftPreset>,
    pub model: Option<String>,
    pub overrides: CftOverrides,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub scan: bool,
}

pub fn cft(a: CftArgs, format: Format, out: Option<&Path>) -> Result<()> {
    let p = resolve_params(a.preset, &a.overrides)?;
    if a.scan {
        let crossing = find_crossing(a.quantity, &p)?;
        return emit_json(&CrossingOut { quantity: a.quantity, crossing, params: p }, out).map_err(io);
    }
    if a.points < 2 || !(a.x_min > 0.0 && a.x_max < 1.0 && a.x_min < a.x_max) {
        return Err(Error::InvalidInput("need 0 < x-min < x-max < 1 and at least 2 points".into()));
    }
    let xs: Vec<f64> =
        (0..a.points).map(|i| a.x_min + (a.x_max - a.x_min) * i as f64 / (a.points - 1) as f64).collect();
    let label = a.model.unwrap_or_else(|| a.preset.map_or("custom", CftPreset::label).to_string());
    let pts = curve(a.quantity, &p, &label, &xs)?;
    emit(&pts, format, out).map_err(io)
}

#[derive(Serialize)]
struct ScanEntry {
    quantity: CrossingQuantity,
    ell: Option<f64>,
    crossing: Option<f64>,
    error: Option<String>,
}

#[derive(Serialize)]
struct ScanReport {
    params: CftParams,
    window: (f64, f64),
    results: Vec<ScanEntry>,
}

pub fn scan(preset: Option<CftPreset>, o: &CftOverrides, ells: &[f64], out: Option<&Path>) -> Result<()> {
    let p = resolve_params(preset, o)?;
    let entry = |q: CrossingQuantity, params: &CftParams, ell: Option<f64>| match find_crossing(q, params) {
        Ok(x) => ScanEntry { quantity: q, ell, crossing: Some(x), error: None },
        Err(e) => ScanEntry { quantity: q, ell, crossing: None, error: Some(e.to_string()) },
    };
    let mut results: Vec<ScanEntry> = [CrossingQuantity::DeltaS, CrossingQuantity::DeltaC, CrossingQuantity::DeltaS2, CrossingQuantity::DeltaS3]
        .into_iter()
        .map(|q| entry(q, &p, None))
        .collect();
    for &ell in ells {
        let q = CftParams { ell, big_l: None, ..p };
        q.validate()?;
        results.push(entry(CrossingQuantity::DeltaM2, &q, Some(ell)));
    }
    emit_json(&ScanReport { params: p, window: cftanalytic::CROSSING_WINDOW, results }, out).map_err(io)
}

pub fn census(dim: usize, samples: usize, seed: u64, nmax: usize, family: Family, allow_expensive: bool, out: Option<&Path>) -> Result<()> {
    let rep = order_census(dim, samples, seed, nmax, family, allow_expensive)?;
    emit_json(&rep, out).map_err(io)
}

#[derive(Serialize)]
struct ConstantsReport {
    upsilon_d1: f64,
    minus_upsilon_d1: f64,
    upsilon_d2: f64,
    ln2_over_3: f64,
    xx_c1prime: f64,
    xx_d2lncn: f64,
    ising_c1prime: f64,
    ising_d2lncn: f64,
    w_max: f64,
    tol: f64,
}

pub fn constants(w_max: f64, tol: f64, out: Option<&Path>) -> Result<()> {
    if !(w_max > 0.0 && tol > 0.0) {
        return Err(Error::InvalidInput("w-max and tol must be positive".into()));
    }
    let u = cftanalytic::upsilon_derivatives_with(w_max, tol)?;
    let third = std::f64::consts::LN_2 / 3.0;
    let rep = ConstantsReport {
        upsilon_d1: u.d1,
        minus_upsilon_d1: -u.d1,
        upsilon_d2: u.d2,
        ln2_over_3: third,
        xx_c1prime: third - u.d1,
        xx_d2lncn: third + u.d2,
        ising_c1prime: cftanalytic::ISING_C1PRIME,
        ising_d2lncn: cftanalytic::ISING_D2LNCN,
        w_max,
        tol,
    };
    emit_json(&rep, out).map_err(io)
}

pub fn ell_list(explicit: &[usize], min: usize, max: usize, step: usize) -> Result<Vec<usize>> {
    if !explicit.is_empty() {
        return Ok(explicit.to_vec());
    }
    if step == 0 || min == 0 || min > max {
        return Err(Error::InvalidInput("need 1 <= ell-min <= ell-max and ell-step >= 1".into()));
    }
    Ok((min..=max).step_by(step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let dir = std::env::temp_dir().join(format!("modmono-empty-{}", std::process::id()));
        emit::<ChainRecord>(&[], Format::Csv, Some(&dir)).unwrap();
        let text = std::fs::read_to_string(&dir).unwrap();
        std::fs::remove_file(&dir).unwrap();
        assert_eq!(text, format!("{}\n", CHAIN_CSV_HEADER.join(",")));
    }
}
