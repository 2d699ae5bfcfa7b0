mod common;

use common::*;
use modmono::cftanalytic::*;
use modmono::erasure::landauer_ladder;
use modmono::fermichain::*;
use modmono::monotones::*;
use modmono::orderlab::{order_census, Family};
use modmono::spectra::{normalize, normalize_with, random_spectrum, Spectrum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{LN_2, PI};

fn occupations(spec: &ChainSpec) -> BlockOccupations {
    block_occupations(&correlation_matrix(spec).unwrap()).unwrap()
}

#[test]
fn slater_reduction_matches_correlation_method() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [4usize, 5, 6, 7, 8] {
        for _ in 0..4 {
            let np = rng.random_range(1..n);
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(&mut rng);
            let occ: Vec<usize> = all[..np].to_vec();
            let psi = slater_state(n, &occ);
            for ell in 1..=(n - 1).min(4) {
                let spec = ChainSpec { model: ChainModel::Xx, sites: n, occupation: occ.clone(), ell, antiperiodic: false };
                let nus = occupations(&spec);
                let brute_nu = brute_block_occupations(&psi, 0, ell);
                for (a, b) in nus.nus.iter().zip(&brute_nu) {
                    assert!((a - b).abs() < 1e-8, "N={n} occ={occ:?} ell={ell}: {a} vs {b}");
                }
                let mut mb = many_body_spectrum(&nus).unwrap().sorted_desc();
                mb.truncate(1 << ell);
                let rdm = block_rdm_spectrum(&psi, n, ell);
                for (a, b) in mb.iter().zip(&rdm) {
                    assert!((a - b).abs() < 1e-8, "N={n} occ={occ:?} ell={ell}: {a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn translation_invariance_of_block_spectrum() {
    let n = 8;
    let gs = preset_state(ChainModel::Xx, n, PresetState::Gs).unwrap();
    let psi = slater_state(n, &gs.occupation);
    for ell in 1..=4 {
        let reference = occupations(&ChainSpec::preset(ChainModel::Xx, n, ell, PresetState::Gs).unwrap()).nus;
        for start in 0..=(n - ell) {
            let nu = brute_block_occupations(&psi, start, ell);
            for (a, b) in nu.iter().zip(&reference) {
                assert!((a - b).abs() < 1e-10, "start={start} ell={ell}");
            }
        }
    }
}

#[test]
fn particle_hole_symmetry_at_half_filling() {
    for (n, ell) in [(40, 15), (64, 31), (200, 77)] {
        let nus = occupations(&ChainSpec::preset(ChainModel::Xx, n, ell, PresetState::Gs).unwrap()).nus;
        let k = nus.len();
        for i in 0..k {
            assert!((nus[i] - (1.0 - nus[k - 1 - i])).abs() < 1e-10);
        }
    }
}

#[test]
fn ff_stats_matches_full_block_spectrum() {
    for (model, which, n) in [
        (ChainModel::Xx, PresetState::Gs, 30),
        (ChainModel::Xx, PresetState::Current, 30),
        (ChainModel::Ising, PresetState::Gs, 30),
        (ChainModel::Ising, PresetState::Psi, 30),
    ] {
        for ell in 1..=4 {
            let occ = occupations(&ChainSpec::preset(model, n, ell, which).unwrap());
            let st = ff_stats(&occ, 6).unwrap();
            let brute = modular_stats(&many_body_spectrum(&occ).unwrap(), 6);
            for k in 0..6 {
                assert!((st.stats.cumulants[k] - brute.cumulants[k]).abs() < 1e-10);
                assert!((st.stats.moments[k] - brute.moments[k]).abs() < 1e-10 * brute.moments[k].abs().max(1.0));
            }
            let m = many_body_spectrum(&occ).unwrap();
            for k in 1..=6 {
                assert!((st.shifted[k - 1] - m_n(&m, k)).abs() < 1e-9 * m_n(&m, k).abs().max(1.0));
            }
        }
    }
}

#[test]
fn xx_ground_state_entropy_scaling() {
    let l = 200usize;
    let ells: Vec<usize> = (10..=100).collect();
    let recs = chain_sweep(ChainModel::Xx, l, &ells, PresetState::Gs).unwrap();
    let lead: Vec<f64> = ells.iter().map(|&e| ((l as f64 / PI) * (PI * e as f64 / l as f64).sin()).ln() / 3.0).collect();
    let offset = recs.iter().zip(&lead).map(|(r, w)| r.s - w).sum::<f64>() / recs.len() as f64;
    let worst = recs.iter().zip(&lead).map(|(r, w)| (r.s - w - offset).abs()).fold(0.0, f64::max);
    assert!(worst < 5e-3, "residual {worst}");
    let k = xx_constants().unwrap();
    assert!((offset - k.c1prime).abs() < 5e-3, "offset {offset} vs {}", k.c1prime);
}

#[test]
fn generating_function_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let d = rng.random_range(2..=12);
        let raw: Vec<f64> = (0..d).map(|_| rng.random_range(1e-6..1.0)).collect();
        let s = normalize_with(&raw, true).unwrap();
        for n in 1..=4 {
            for b in [0.0, n as f64 - 1.0, 2.5] {
                let p = ShiftParams::new(n, b);
                let exact = shifted_moment(&s, p).value;
                let fd = shifted_moment_fd(&s, p, FD_DEFAULT_STEP).unwrap();
                assert!((exact - fd).abs() < 1e-6, "n={n} b={b}: {exact} vs {fd}");
            }
        }
    }
}

#[test]
fn cumulants_add_on_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let a = random_spectrum(rng.random_range(2..=8), &mut rng);
        let b = random_spectrum(rng.random_range(2..=8), &mut rng);
        let ab = modular_stats(&a.kron(&b), 6);
        let (sa, sb) = (modular_stats(&a, 6), modular_stats(&b, 6));
        for k in 0..6 {
            assert!((ab.cumulants[k] - sa.cumulants[k] - sb.cumulants[k]).abs() < 1e-10);
        }
    }
}

#[test]
fn composite_with_maximally_mixed_register() {
    // pure ⊗ (1/2)^{⊗n} has μ_k = (n ln 2)^k
    let rho = normalize(&[0.6, 0.3, 0.1]).unwrap();
    for n in 1..=4u32 {
        let reg = Spectrum::uniform(1 << n);
        let omega = rho.kron(&Spectrum::pure(1));
        let up = Spectrum::pure(3).kron(&reg);
        for j in 0..6 {
            assert!((modular_stats(&omega, 6).cumulants[j] - modular_stats(&rho, 6).cumulants[j]).abs() < 1e-12);
        }
        for m in 1..=4 {
            let b = m as f64 - 1.0;
            let expect = (n as f64 * LN_2 + b).powi(m as i32) - b.powi(m as i32);
            assert!((m_n(&up, m) - expect).abs() < 1e-10);
        }
    }
    let r = landauer_ladder(&Spectrum::uniform(8), 4).unwrap();
    assert!(r.per_order_min_qubits.values().all(|&q| q == 3));
}

#[test]
fn extremal_identity_and_concavity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid = log_grid(1000);
    for n in 1..=8 {
        for _ in 0..20 {
            let roots: Vec<f64> = (0..root_count(n)).map(|_| rng.random_range(0.0..6.0)).collect();
            let p = extremal_poly(n, &roots).unwrap();
            let scale = p.gcoeffs.iter().map(|g| g.abs()).fold(1.0, f64::max);
            assert!(p.identity_residual() <= 1e-12 * scale, "n={n} residual {}", p.identity_residual());
            for &x in &grid {
                let (v, s) = induced_second_derivative(&p.fcoeffs, x);
                assert!(v <= 1e-9 * s.max(1.0), "n={n} roots={roots:?} x={x}: {v}");
            }
        }
    }
}

#[test]
fn cft_invariants() {
    // dyadic grid keeps 1 − x exact
    for i in 1..128 {
        let x = i as f64 / 128.0;
        assert!((f_n(x, 1.0).unwrap() - 1.0).abs() < 1e-12);
        for n in [0.5, 2.0, 3.0, 4.5] {
            let a = f_n(x, n).unwrap();
            let b = f_n(1.0 - x, n).unwrap();
            assert!((a - b).abs() < 1e-10);
            // F_ψ = √F_E: γ = 1/2 against γ = 1
            assert!((a.powf(0.5) - a.sqrt()).abs() < 1e-10);
        }
        let (s1, c1) = delta_s_and_c(x, 1.0).unwrap();
        let (s2, c2) = delta_s_and_c(1.0 - x, 1.0).unwrap();
        assert!((s1 - s2).abs() < 1e-10 && (c1 - c2).abs() < 1e-10);
        let (h1, hc) = delta_s_and_c(x, 0.5).unwrap();
        assert!((2.0 * h1 - s1).abs() < 1e-12 && (2.0 * hc - c1).abs() < 1e-12);
    }
    // ΔM₂ symmetry at fixed L
    let l = 400.0;
    for i in 1..50 {
        let x = i as f64 / 100.0;
        let p = CftParams::ising_psi(x * l, Some(l));
        let q = CftParams::ising_psi((1.0 - x) * l, Some(l));
        let (sa, ca) = gs_entropy_capacity(&p).unwrap();
        let (sb, cb) = gs_entropy_capacity(&q).unwrap();
        let a = delta_m2_with_gs(x, 0.5, sa, ca).unwrap();
        let b = delta_m2_with_gs(1.0 - x, 0.5, sb, cb).unwrap();
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn s_minus_c_consistency_with_numerical_derivatives() {
    let p = CftParams { gamma: 1.0, c: 1.0, c1prime: 0.0, d2lncn: 0.0, ell: 10.0, big_l: None };
    for i in 0..50 {
        let x = 0.01 + 0.98 * i as f64 / 49.0;
        let (ds, dc) = delta_s_and_c(x, 1.0).unwrap();
        let closed = s_minus_c(x, &p).unwrap();
        assert!((ds - dc - closed).abs() < 1e-6, "x={x}: {} vs {closed}", ds - dc);
    }
}

#[test]
fn upsilon_is_stable() {
    let a = upsilon_derivatives_with(20.0, 1e-9).unwrap();
    let b = upsilon_derivatives_with(30.0, 1e-10).unwrap();
    assert!((a.d1 - b.d1).abs() < 1e-6 && (a.d2 - b.d2).abs() < 1e-6);
}

#[test]
fn census_is_sound_for_extremal_family() {
    let r = order_census(4, 2000, 3, 4, Family::Extremal, false).unwrap();
    assert!(r.per_order.iter().all(|t| t.soundness_violations == 0), "{r:?}");
    for w in r.per_order.windows(2) {
        assert!(r.incomparable_fraction(w[1].n) <= r.incomparable_fraction(w[0].n));
    }
}

#[test]
fn delta_c_has_a_crossing_for_ising() {
    let p = CftParams::ising_psi(100.0, None);
    let x = find_crossing(CrossingQuantity::DeltaC, &p).unwrap();
    assert!(x > 0.3 && x < 0.35, "{x}");
    assert!(matches!(find_crossing(CrossingQuantity::DeltaS, &p), Err(modmono::Error::NoSignChange { .. })));
}
