//! The moment linear systems behind spline fitting.
//!
//! Both systems have `mu_i + lambda_i = 1` interior rows; the not-a-knot
//! system adds the corner rows `(lambda_1, -1, mu_1)` and
//! `(lambda_{N-1}, -1, mu_{N-1})`, which are eliminated against their
//! neighbors before a pivoting-free tridiagonal sweep. The periodic system
//! is cyclic tridiagonal and is folded to a plain tridiagonal plus a
//! rank-one correction.

/// One coordinate's moment system, kept in band form so tests can inspect
/// rows, norms and right-hand sides.
#[derive(Debug, Clone)]
pub struct MomentSystem {
    cyclic: bool,
    /// `mu[i]`, `lambda[i]` per row; for the not-a-knot system rows 0 and N
    /// carry the corner coefficients instead (see [`Self::dense`]).
    mu: Vec<f64>,
    lambda: Vec<f64>,
    rhs: Vec<f64>,
}

impl MomentSystem {
    /// Not-a-knot system over knots `l_0..l_N`: N+1 unknowns.
    pub fn not_a_knot(l: &[f64], f: &[f64]) -> Self {
        assert!(l.len() >= 4, "not-a-knot needs at least 4 knots");
        let n = l.len() - 1;
        let mut mu = vec![0.0; n + 1];
        let mut lambda = vec![0.0; n + 1];
        let mut rhs = vec![0.0; n + 1];
        for i in 1..n {
            let hl = l[i] - l[i - 1];
            let hr = l[i + 1] - l[i];
            mu[i] = hl / (hl + hr);
            lambda[i] = hr / (hl + hr);
            rhs[i] = 6.0 * ((f[i + 1] - f[i]) / hr - (f[i] - f[i - 1]) / hl) / (hl + hr);
        }
        // Corner rows reuse the mu/lambda of their neighbor row.
        mu[0] = mu[1];
        lambda[0] = lambda[1];
        mu[n] = mu[n - 1];
        lambda[n] = lambda[n - 1];
        Self {
            cyclic: false,
            mu,
            lambda,
            rhs,
        }
    }

    /// Periodic system over knots `l_0..l_N` (`f_0 = f_N`): N unknowns,
    /// indices wrapping with `l_{-1} = l_{N-1}`.
    pub fn periodic(l: &[f64], f: &[f64]) -> Self {
        assert!(l.len() >= 4, "periodic needs at least 4 knots");
        let n = l.len() - 1;
        let h = |i: usize| l[i + 1] - l[i];
        let mut mu = vec![0.0; n];
        let mut lambda = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 0..n {
            let hl = if i == 0 { h(n - 1) } else { h(i - 1) };
            let hr = h(i);
            let fl = if i == 0 { f[n - 1] } else { f[i - 1] };
            let fr = f[i + 1];
            mu[i] = hl / (hl + hr);
            lambda[i] = hr / (hl + hr);
            rhs[i] = 6.0 * ((fr - f[i]) / hr - (f[i] - fl) / hl) / (hl + hr);
        }
        Self {
            cyclic: true,
            mu,
            lambda,
            rhs,
        }
    }

    /// Number of unknowns.
    pub fn dim(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    /// Full matrix, for norm and conditioning probes.
    pub fn dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut a = vec![vec![0.0; n]; n];
        if self.cyclic {
            for i in 0..n {
                a[i][i] = 2.0;
                a[i][(i + 1) % n] += self.lambda[i];
                a[i][(i + n - 1) % n] += self.mu[i];
            }
        } else {
            let last = n - 1;
            a[0][0] = self.lambda[0];
            a[0][1] = -1.0;
            a[0][2] = self.mu[0];
            for i in 1..last {
                a[i][i - 1] = self.mu[i];
                a[i][i] = 2.0;
                a[i][i + 1] = self.lambda[i];
            }
            a[last][last - 2] = self.lambda[last];
            a[last][last - 1] = -1.0;
            a[last][last] = self.mu[last];
        }
        a
    }

    /// Row sums of the matrix.
    pub fn row_sums(&self) -> Vec<f64> {
        self.dense().iter().map(|r| r.iter().sum()).collect()
    }

    /// Max-norm of the matrix.
    pub fn inf_norm(&self) -> f64 {
        self.dense()
            .iter()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `|A m - b|_inf / max(|b|_inf, 1e-300)`.
    pub fn relative_residual(&self, m: &[f64]) -> f64 {
        assert_eq!(m.len(), self.dim());
        let a = self.dense();
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            let mut r = -self.rhs[i];
            for j in 0..self.dim() {
                r += a[i][j] * m[j];
            }
            worst = worst.max(r.abs());
        }
        let scale = self
            .rhs
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max)
            .max(1e-300);
        worst / scale
    }

    /// Solve for the moments with the banded elimination.
    pub fn solve(&self) -> Vec<f64> {
        if self.cyclic {
            self.solve_cyclic()
        } else {
            self.solve_not_a_knot()
        }
    }

    /// Corner-row elimination: rows 1..N-1 decouple from M_0 and M_N into a
    /// strictly diagonally dominant tridiagonal subsystem; the corners are
    /// recovered from `M_0 + M_1 + M_2 = b_1` (and its mirror).
    fn solve_not_a_knot(&self) -> Vec<f64> {
        let n = self.dim() - 1; // knots are 0..=n
        let m_inner = n - 1; // unknowns M_1..M_{N-1}
        let mut sub = vec![0.0; m_inner];
        let mut diag = vec![0.0; m_inner];
        let mut sup = vec![0.0; m_inner];
        let mut rhs = vec![0.0; m_inner];
        for (k, i) in (1..n).enumerate() {
            if i == 1 {
                let mu1 = self.mu[1];
                diag[k] = (2.0 - mu1) / (1.0 - mu1);
                sup[k] = (1.0 - 2.0 * mu1) / (1.0 - mu1);
            } else if i == n - 1 {
                let lam = self.lambda[n - 1];
                sub[k] = (1.0 - 2.0 * lam) / (1.0 - lam);
                diag[k] = (2.0 - lam) / (1.0 - lam);
            } else {
                sub[k] = self.mu[i];
                diag[k] = 2.0;
                sup[k] = self.lambda[i];
            }
            rhs[k] = self.rhs[i];
        }
        let inner = thomas(&sub, &diag, &sup, &rhs);
        let mut m = vec![0.0; n + 1];
        m[1..n].copy_from_slice(&inner);
        m[0] = self.rhs[1] - m[1] - m[2];
        m[n] = self.rhs[n - 1] - m[n - 2] - m[n - 1];
        m
    }

    /// Cyclic tridiagonal solve via a rank-one fold (Sherman-Morrison).
    fn solve_cyclic(&self) -> Vec<f64> {
        let n = self.dim();
        let alpha = self.lambda[n - 1]; // A[n-1][0]
        let beta = self.mu[0]; // A[0][n-1]
        let gamma = -2.0;
        let mut sub = vec![0.0; n];
        let mut diag = vec![2.0; n];
        let mut sup = vec![0.0; n];
        for i in 0..n {
            if i > 0 {
                sub[i] = self.mu[i];
            }
            if i + 1 < n {
                sup[i] = self.lambda[i];
            }
        }
        diag[0] -= gamma;
        diag[n - 1] -= alpha * beta / gamma;
        let y = thomas(&sub, &diag, &sup, &self.rhs);
        let mut u = vec![0.0; n];
        u[0] = gamma;
        u[n - 1] = alpha;
        let z = thomas(&sub, &diag, &sup, &u);
        // v = (1, 0, ..., 0, beta/gamma)
        let vy = y[0] + beta / gamma * y[n - 1];
        let vz = z[0] + beta / gamma * z[n - 1];
        let factor = vy / (1.0 + vz);
        (0..n).map(|i| y[i] - factor * z[i]).collect()
    }
}

/// Tridiagonal solve without pivoting (rows are diagonally dominant here).
fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i] * c[i - 1];
        c[i] = if i + 1 < n { sup[i] / denom } else { 0.0 };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}
