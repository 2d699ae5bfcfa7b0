#![allow(dead_code, clippy::needless_range_loop)]

use modmono::numerics::jacobi::HermitianMatrix;
use modmono::spectra::{apply_stochastic, apply_to_spectrum, random_bistochastic, random_spectrum, random_stochastic, CommutingPair, Spectrum};
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

/// Spectrum ρ with a bistochastic image σ = ρT, so ρ ≻ σ.
pub fn majorizing_pair<R: Rng>(d: usize, rng: &mut R) -> (Spectrum, Spectrum) {
    let rho = random_spectrum(d, rng);
    let t = random_bistochastic(d, rng);
    let sigma = apply_to_spectrum(&rho, &t).unwrap();
    (rho, sigma)
}

/// Full-rank pair and its image under a shared right-stochastic map.
pub fn shared_reference_transition<R: Rng>(d: usize, rng: &mut R) -> (CommutingPair, CommutingPair) {
    let before = CommutingPair::new(random_spectrum(d, rng), random_spectrum(d, rng)).unwrap();
    let t = random_stochastic(d, rng);
    let after = apply_stochastic(&before, &t).unwrap();
    (before, after)
}

fn det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut d = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm())).unwrap();
        if a[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let v = a[c][k];
                a[r][k] -= f * v;
            }
        }
    }
    d
}

/// Slater determinant of plane waves e^{i2πqx/N}/√N over all 2^N site
/// configurations (bit x set = site x occupied, creation order ascending).
pub fn slater_state(n: usize, occ: &[usize]) -> Vec<Complex64> {
    let np = occ.len();
    let norm = (n as f64).sqrt();
    (0..1usize << n)
        .map(|cfg| {
            if cfg.count_ones() as usize != np {
                return Complex64::new(0.0, 0.0);
            }
            let sites: Vec<usize> = (0..n).filter(|x| cfg >> x & 1 == 1).collect();
            let m = occ
                .iter()
                .map(|&q| sites.iter().map(|&x| Complex64::from_polar(1.0, 2.0 * PI * (q * x) as f64 / n as f64) / norm).collect())
                .collect();
            det(m)
        })
        .collect()
}

/// Eigenvalues of the reduced density matrix on sites 0..ell.
pub fn block_rdm_spectrum(psi: &[Complex64], n: usize, ell: usize) -> Vec<f64> {
    let da = 1usize << ell;
    let de = 1usize << (n - ell);
    let rdm = HermitianMatrix::from_fn(da, |s, t| (0..de).map(|e| psi[s | e << ell] * psi[t | e << ell].conj()).sum());
    let mut ev = rdm.eigenvalues(1e-14, 60).unwrap();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

fn jw_sign(cfg: usize, site: usize) -> f64 {
    if (cfg & ((1usize << site) - 1)).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// ⟨c†_i c_j⟩ from the many-body amplitudes, Jordan–Wigner signs included.
pub fn one_body_correlation(psi: &[Complex64], i: usize, j: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (cfg, amp) in psi.iter().enumerate() {
        if amp.norm() == 0.0 || cfg >> j & 1 == 0 {
            continue;
        }
        let s1 = jw_sign(cfg, j);
        let mid = cfg & !(1 << j);
        if mid >> i & 1 == 1 {
            continue;
        }
        let s2 = jw_sign(mid, i);
        let out = mid | 1 << i;
        acc += psi[out].conj() * amp * s1 * s2;
    }
    acc
}

/// Sorted-descending occupations of the block [start, start + ell) from ψ.
pub fn brute_block_occupations(psi: &[Complex64], start: usize, ell: usize) -> Vec<f64> {
    let c = HermitianMatrix::from_fn(ell, |a, b| one_body_correlation(psi, start + a, start + b));
    let mut ev = c.eigenvalues(1e-14, 60).unwrap();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Second derivative of x ↦ −x F(ln x), which equals −(F′ + F″)(ln x)/x,
/// evaluated from the F coefficients alone, plus a magnitude scale.
pub fn induced_second_derivative(fcoeffs: &[f64], x: f64) -> (f64, f64) {
    let y = x.ln();
    let mut val = 0.0;
    let mut scale = 0.0;
    for (k, &f) in fcoeffs.iter().enumerate().skip(1) {
        let kf = k as f64;
        let t1 = kf * f * y.powi(k as i32 - 1);
        let t2 = if k >= 2 { kf * (kf - 1.0) * f * y.powi(k as i32 - 2) } else { 0.0 };
        val += t1 + t2;
        scale += t1.abs() + t2.abs();
    }
    (-val / x, scale / x)
}
