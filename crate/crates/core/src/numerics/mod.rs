//! Self-contained numerical kernels.

pub mod jacobi;
pub mod quad;
pub mod roots;
pub mod special;

/// Binomial coefficient as f64 (exact for the small arguments used here).
pub fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}
