//! Periodic (cyclic) tridiagonal solves for boundary-grid systems.

/// Solves a plain tridiagonal system by the Thomas algorithm.
///
/// `sub[i]` multiplies `x[i-1]` (ignored for i = 0), `diag[i]` multiplies
/// `x[i]`, `sup[i]` multiplies `x[i+1]` (ignored for i = n-1). No pivoting;
/// intended for diagonally dominant or positive definite systems.
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert!(n >= 1);
    let mut cp = vec![0.0; n];
    let mut dp = vec![0.0; n];
    cp[0] = sup[0] / diag[0];
    dp[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - sub[i] * cp[i - 1];
        cp[i] = if i + 1 < n { sup[i] / m } else { 0.0 };
        dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / m;
    }
    let mut x = dp;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= cp[i] * next;
    }
    x
}

/// Solves a cyclic tridiagonal system via the Sherman-Morrison correction.
///
/// In addition to the three bands, `sub[0]` is the corner entry `A[0][n-1]`
/// and `sup[n-1]` is the corner entry `A[n-1][0]`.
pub fn solve_cyclic_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert!(n >= 3, "cyclic system needs at least 3 unknowns");
    let alpha = sub[0]; // A[0][n-1]
    let beta = sup[n - 1]; // A[n-1][0]
    let gamma = -diag[0];

    let mut d2 = diag.to_vec();
    d2[0] = diag[0] - gamma;
    d2[n - 1] = diag[n - 1] - alpha * beta / gamma;

    let y = solve_tridiagonal(sub, &d2, sup, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = beta;
    let z = solve_tridiagonal(sub, &d2, sup, &u);

    let factor = (y[0] + alpha * y[n - 1] / gamma) / (1.0 + z[0] + alpha * z[n - 1] / gamma);
    y.iter().zip(z.iter()).map(|(yi, zi)| yi - factor * zi).collect()
}
