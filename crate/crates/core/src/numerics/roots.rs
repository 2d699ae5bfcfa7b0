//! Bracketed root finding.

use crate::error::{Error, Result};

/// Bisection on `[lo, hi]`; requires a sign change. Stops when the bracket
/// is narrower than `tol` or after `max_iter` halvings.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    for _ in 0..max_iter {
        if hi - lo < tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scans `n` equal subintervals of `[lo, hi]` and bisects the first bracket
/// found.
pub fn scan_and_bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, tol: f64) -> Result<f64> {
    let h = (hi - lo) / n as f64;
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..=n {
        let b = lo + i as f64 * h;
        let fb = f(b);
        if fa == 0.0 {
            return Ok(a);
        }
        if fa.signum() != fb.signum() {
            return bisect(&f, a, b, tol, 200);
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoSignChange { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-12, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn no_sign_change() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-9, 100),
            Err(Error::NoSignChange { .. })
        ));
        assert!(scan_and_bisect(|x| x + 5.0, 0.0, 1.0, 10, 1e-9).is_err());
    }

    #[test]
    fn scan_finds_first_root() {
        let r = scan_and_bisect(|x| (x * 10.0).sin(), 0.1, 1.0, 100, 1e-10).unwrap();
        assert!((r - std::f64::consts::PI / 10.0).abs() < 1e-9);
    }
}
