//! Dense Hermitian matrices and a cyclic complex Jacobi eigenvalue solver.

use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(n: usize, mut f: F) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, Complex64::new(*v, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    /// max |A_ij − conj(A_ji)|.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn off_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// Eigenvalues (ascending) by cyclic Jacobi rotations.
    pub fn eigenvalues(&self, tol: f64, max_sweeps: usize) -> Result<Vec<f64>> {
        let n = self.n;
        let mut a = self.clone();
        // Symmetrize so rounding in the input cannot stall convergence.
        for i in 0..n {
            let d = a.get(i, i).re;
            a.set(i, i, Complex64::new(d, 0.0));
            for j in (i + 1)..n {
                let v = 0.5 * (a.get(i, j) + a.get(j, i).conj());
                a.set(i, j, v);
                a.set(j, i, v.conj());
            }
        }
        let scale = a.frobenius();
        let target = tol * scale.max(f64::MIN_POSITIVE);
        let mut converged = a.off_norm() <= target;
        let mut sweeps = 0;
        while !converged {
            if sweeps == max_sweeps {
                return Err(Error::NoConvergence { sweeps });
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    a.rotate(p, q);
                }
            }
            sweeps += 1;
            converged = a.off_norm() <= target;
        }
        let mut ev: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        ev.sort_by(|x, y| x.total_cmp(y));
        Ok(ev)
    }

    /// Zeroes entry (p, q) with the unitary U = diag-phase · real rotation.
    fn rotate(&mut self, p: usize, q: usize) {
        let apq = self.get(p, q);
        let mag = apq.norm();
        if mag == 0.0 {
            return;
        }
        let app = self.get(p, p).re;
        let aqq = self.get(q, q).re;
        let phase = (apq / mag).conj();
        let theta = 0.5 * (2.0 * mag).atan2(aqq - app);
        let (s, c) = theta.sin_cos();
        // U columns: u_p = (c, -s·phase), u_q = (s, c·phase) on rows (p, q).
        let upp = Complex64::new(c, 0.0);
        let upq = Complex64::new(s, 0.0);
        let uqp = -s * phase;
        let uqq = c * phase;
        let n = self.n;
        // A ← A U
        for k in 0..n {
            let akp = self.get(k, p);
            let akq = self.get(k, q);
            self.set(k, p, akp * upp + akq * uqp);
            self.set(k, q, akp * upq + akq * uqq);
        }
        // A ← U† A
        for k in 0..n {
            let apk = self.get(p, k);
            let aqk = self.get(q, k);
            self.set(p, k, upp.conj() * apk + uqp.conj() * aqk);
            self.set(q, k, upq.conj() * apk + uqq.conj() * aqk);
        }
        self.set(p, q, Complex64::new(0.0, 0.0));
        self.set(q, p, Complex64::new(0.0, 0.0));
        let dp = self.get(p, p).re;
        let dq = self.get(q, q).re;
        self.set(p, p, Complex64::new(dp, 0.0));
        self.set(q, q, Complex64::new(dq, 0.0));
    }
}
