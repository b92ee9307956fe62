//! Exact enumeration of integer points on ellipsoid shells
//! `yᵀAy + 2βᵀy + γ = 0` with `A` positive definite (Fincke–Pohst).
//!
//! Floating point only bounds the search ranges (with generous padding);
//! the innermost coordinate is solved exactly, so every reported point is exact
//! and no point is missed.

use crate::arith::isqrt_i128;

pub(crate) struct Shell {
    a: Vec<Vec<i128>>,
    /// Fincke–Pohst decomposition of `a`.
    q: Vec<Vec<f64>>,
    inv: Vec<Vec<f64>>,
}

impl Shell {
    pub(crate) fn new(a: Vec<Vec<i128>>) -> Self {
        let n = a.len();
        let mut q: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        let inv = float_inverse(&a);
        Self { a, q, inv }
    }

    /// Calls `visit` on every integer solution of `yᵀAy + 2βᵀy + γ = 0`.
    pub(crate) fn solutions(&self, beta: &[i128], gamma: i128, visit: &mut dyn FnMut(&[i128])) {
        let n = self.a.len();
        if n == 0 {
            if gamma == 0 {
                visit(&[]);
            }
            return;
        }
        // (y−c)ᵀA(y−c) = R with center c = −A⁻¹β and R = cᵀAc − γ = −βᵀc − γ
        let c: Vec<f64> = (0..n)
            .map(|i| -(0..n).map(|j| self.inv[i][j] * beta[j] as f64).sum::<f64>())
            .collect();
        let r = -(0..n).map(|i| beta[i] as f64 * c[i]).sum::<f64>() - gamma as f64;
        let tol = 1e-7 * (1.0 + r.abs());
        if r < -tol {
            return;
        }
        let mut y = vec![0i128; n];
        self.descend(n - 1, r.max(0.0), tol, &c, beta, gamma, &mut y, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        i: usize,
        budget: f64,
        tol: f64,
        c: &[f64],
        beta: &[i128],
        gamma: i128,
        y: &mut [i128],
        visit: &mut dyn FnMut(&[i128]),
    ) {
        let n = self.a.len();
        if i == 0 {
            self.solve_first(beta, gamma, y, visit);
            return;
        }
        let u: f64 = (i + 1..n).map(|j| self.q[i][j] * (y[j] as f64 - c[j])).sum();
        let center = c[i] - u;
        let half = (budget.max(0.0) / self.q[i][i]).sqrt();
        let pad = 1e-6 * (1.0 + half + center.abs());
        let lo = (center - half - pad).floor() as i128;
        let hi = (center + half + pad).ceil() as i128;
        for v in lo..=hi {
            y[i] = v;
            let t = v as f64 - center;
            let rest = budget - self.q[i][i] * t * t;
            if rest < -tol {
                continue;
            }
            self.descend(i - 1, rest, tol, c, beta, gamma, y, visit);
        }
    }

    /// With `y[1..]` fixed, solve the quadratic in `y[0]` exactly.
    fn solve_first(&self, beta: &[i128], gamma: i128, y: &mut [i128], visit: &mut dyn FnMut(&[i128])) {
        let n = self.a.len();
        let a = &self.a;
        let lin: i128 = (1..n).map(|j| a[0][j] * y[j]).sum::<i128>() + beta[0];
        let mut cst = gamma;
        for i in 1..n {
            let mut row = 2 * beta[i];
            for j in 1..n {
                row += a[i][j] * y[j];
            }
            cst += row * y[i];
        }
        // a00 x² + 2 lin x + cst = 0
        let a00 = a[0][0];
        let disc = lin * lin - a00 * cst;
        if disc < 0 {
            return;
        }
        let s = isqrt_i128(disc);
        if s * s != disc {
            return;
        }
        for num in [-lin - s, -lin + s] {
            if num % a00 == 0 {
                y[0] = num / a00;
                visit(y);
            }
            if s == 0 {
                break;
            }
        }
    }
}

fn float_inverse(a: &[Vec<i128>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| m[x][k].abs().partial_cmp(&m[y][k].abs()).unwrap())
            .unwrap();
        m.swap(k, p);
        inv.swap(k, p);
        let piv = m[k][k];
        for j in 0..n {
            m[k][j] /= piv;
            inv[k][j] /= piv;
        }
        for i in 0..n {
            if i != k {
                let f = m[i][k];
                for j in 0..n {
                    m[i][j] -= f * m[k][j];
                    inv[i][j] -= f * inv[k][j];
                }
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: &[Vec<i128>], beta: &[i128], gamma: i128, box_: i128) -> Vec<Vec<i128>> {
        let n = a.len();
        let mut out = Vec::new();
        let mut y = vec![-box_; n];
        loop {
            let mut v = gamma;
            for i in 0..n {
                v += 2 * beta[i] * y[i];
                for j in 0..n {
                    v += a[i][j] * y[i] * y[j];
                }
            }
            if v == 0 {
                out.push(y.clone());
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return out;
                }
                y[k] += 1;
                if y[k] <= box_ {
                    break;
                }
                y[k] = -box_;
                k += 1;
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        let a = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 3]];
        let shell = Shell::new(a.clone());
        for (beta, gamma) in [(vec![0, 0, 0], -6), (vec![3, -1, 2], -40), (vec![-7, 0, 5], 20), (vec![1, 1, 1], -1)] {
            let mut got = Vec::new();
            shell.solutions(&beta, gamma, &mut |y| got.push(y.to_vec()));
            got.sort();
            assert_eq!(got, brute(&a, &beta, gamma, 25), "beta {beta:?} gamma {gamma}");
        }
    }
}
