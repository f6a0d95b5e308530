//! Band-edge tail models.
//!
//! Finite sampling truncates spectra that decay only algebraically; the
//! truncation dominates the error budget of inverse transforms and
//! principal-value integrals. The remedy used throughout this module is to
//! fit the outer band against a small family of causal reference kernels
//! `K_p(omega) = 1/(a - i omega)^p`, whose time responses
//! `t^{p-1} e^{-a t} theta(t) / (p-1)!` are known exactly, transform only
//! the residual numerically, and add the kernel part back in closed form.

use num_complex::Complex64;

/// Decay rate of the reference kernels for the inverse-transform path,
/// in units of the inverse window length. Large enough that even the
/// `t^2 e^{-a t}` kernel is negligible at half a window.
pub(crate) const INVERSE_A_FACTOR: f64 = 64.0;

/// Decay rate for the Hilbert / dispersion-integral prefits, where no
/// window periodization is involved.
pub(crate) const HILBERT_A_FACTOR: f64 = 40.0;

pub(crate) fn kernel(omega: f64, a: f64, order: u32) -> Complex64 {
    Complex64::new(a, -omega).powi(-(order as i32))
}

/// Least squares for a handful of columns via normal equations with
/// partial pivoting. Columns are normalized before solving.
pub(crate) fn lstsq(columns: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let n = columns.len();
    let mut norms = vec![0.0; n];
    for (i, c) in columns.iter().enumerate() {
        let s: f64 = c.iter().map(|x| x * x).sum();
        norms[i] = s.sqrt().max(f64::MIN_POSITIVE);
    }
    let mut m = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        for j in 0..n {
            let dot: f64 = columns[i].iter().zip(&columns[j]).map(|(a, b)| a * b).sum();
            m[i][j] = dot / (norms[i] * norms[j]);
        }
        let dot: f64 = columns[i].iter().zip(rhs).map(|(a, b)| a * b).sum();
        m[i][n] = dot / norms[i];
    }
    // Gaussian elimination with partial pivoting
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        let p = m[col][col];
        if p.abs() < 1e-300 {
            continue;
        }
        let pivot_row = m[col].clone();
        for (row, r) in m.iter_mut().enumerate() {
            if row == col {
                continue;
            }
            let factor = r[col] / p;
            for (x, pv) in r[col..=n].iter_mut().zip(&pivot_row[col..=n]) {
                *x -= factor * pv;
            }
        }
    }
    (0..n)
        .map(|i| {
            let p = m[i][i];
            if p.abs() < 1e-300 {
                0.0
            } else {
                m[i][n] / p / norms[i]
            }
        })
        .collect()
}

/// Fitted tail of a two-sided spectrum: `cinf + sum_p c[p] K_{p+1}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailModel {
    pub a: f64,
    pub cinf: f64,
    pub c: [f64; 3],
}

impl TailModel {
    /// Fit over the outer half of the band with weights `(|omega|/edge)^8`,
    /// which pushes the least-squares solution toward the true asymptotic
    /// coefficients rather than a local Pade fit; the latter extrapolates
    /// poorly beyond the band and leaks aliased energy into negative times.
    pub(crate) fn fit(omegas: &[f64], values: &[Complex64], window_span: f64) -> Self {
        let a = INVERSE_A_FACTOR / window_span;
        let edge = omegas.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
        if edge == 0.0 {
            return Self {
                a,
                cinf: 0.0,
                c: [0.0; 3],
            };
        }
        let mut cols: Vec<Vec<f64>> = vec![Vec::new(); 4];
        let mut rhs: Vec<f64> = Vec::new();
        for pass in 0..2 {
            // pass 0 collects real parts, pass 1 imaginary parts
            for (&w, &g) in omegas.iter().zip(values) {
                let frac = w.abs() / edge;
                if frac < 0.5 {
                    continue;
                }
                let wt = frac.powi(8);
                let basis = [
                    Complex64::new(1.0, 0.0),
                    kernel(w, a, 1),
                    kernel(w, a, 2),
                    kernel(w, a, 3),
                ];
                for (i, b) in basis.iter().enumerate() {
                    cols[i].push(wt * if pass == 0 { b.re } else { b.im });
                }
                rhs.push(wt * if pass == 0 { g.re } else { g.im });
            }
        }
        let sol = lstsq(&cols, &rhs);
        Self {
            a,
            cinf: sol[0],
            c: [sol[1], sol[2], sol[3]],
        }
    }

    pub(crate) fn evaluate(&self, omega: f64) -> Complex64 {
        self.evaluate_continued(omega, 0.0)
    }

    /// Model value at `omega + i y` (exact analytic continuation).
    pub(crate) fn evaluate_continued(&self, omega: f64, y: f64) -> Complex64 {
        let mut out = Complex64::new(self.cinf, 0.0);
        for (p, &cp) in self.c.iter().enumerate() {
            out += cp * kernel(omega, self.a + y, p as u32 + 1);
        }
        out
    }

    /// Exact time response of the kernel part at `t >= 0`
    /// (the constant part is a Dirac impulse handled separately).
    pub(crate) fn time_response(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        (self.c[0] + self.c[1] * t + self.c[2] * t * t / 2.0) * (-self.a * t).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lstsq_solves_small_system() {
        // fit y = 2 + 3 x over a few points
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ones = vec![1.0; 10];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 + 3.0 * x).collect();
        let sol = lstsq(&[ones, xs], &ys);
        assert!((sol[0] - 2.0).abs() < 1e-12);
        assert!((sol[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn fit_recovers_exact_kernel_mixture() {
        let n = 4096;
        let span = 40.0;
        let domega = 2.0 * std::f64::consts::PI / span;
        let half = n / 2;
        let omegas: Vec<f64> = (0..n).map(|m| (m as f64 - half as f64) * domega).collect();
        let a = INVERSE_A_FACTOR / span;
        let truth = TailModel {
            a,
            cinf: 0.7,
            c: [1.5, -0.3, 2.0],
        };
        let values: Vec<Complex64> = omegas.iter().map(|&w| truth.evaluate(w)).collect();
        let fit = TailModel::fit(&omegas, &values, span);
        assert!((fit.cinf - truth.cinf).abs() < 1e-9);
        for (a, b) in fit.c.iter().zip(&truth.c) {
            assert!((a - b).abs() < 1e-7, "{a} vs {b}");
        }
    }
}
