//! Quadrature rules: Gauss-Legendre on [-1,1] and a degree-5 triangle rule.

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial (machine accurate for the small n used here).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Degree-5 exact quadrature on the reference triangle with vertices
/// (0,0), (1,0), (0,1): seven points, weights summing to 1/2.
pub fn triangle_rule_deg5() -> [(f64, f64, f64); 7] {
    let a = (6.0 + f64::sqrt(15.0)) / 21.0;
    let b = (6.0 - f64::sqrt(15.0)) / 21.0;
    let wa = (155.0 + f64::sqrt(15.0)) / 2400.0;
    let wb = (155.0 - f64::sqrt(15.0)) / 2400.0;
    [
        (1.0 / 3.0, 1.0 / 3.0, 9.0 / 80.0),
        (a, a, wa),
        (1.0 - 2.0 * a, a, wa),
        (a, 1.0 - 2.0 * a, wa),
        (b, b, wb),
        (1.0 - 2.0 * b, b, wb),
        (b, 1.0 - 2.0 * b, wb),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        // exact for degree <= 15
        for deg in 0..16 {
            let num: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg)).sum();
            let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            assert!((num - exact).abs() < 1e-13, "deg {}: {} vs {}", deg, num, exact);
        }
    }

    #[test]
    fn triangle_rule_degree5_monomials() {
        // integral of x^p y^q over reference triangle = p! q! / (p+q+2)!
        let rule = triangle_rule_deg5();
        let fact = |m: u32| -> f64 { (1..=m).map(|v| v as f64).product::<f64>().max(1.0) };
        for p in 0..=5u32 {
            for q in 0..=(5 - p) {
                let num: f64 = rule.iter().map(|&(x, y, w)| w * x.powi(p as i32) * y.powi(q as i32)).sum();
                let exact = fact(p) * fact(q) / fact(p + q + 2);
                assert!((num - exact).abs() < 1e-15, "x^{} y^{}: {} vs {}", p, q, num, exact);
            }
        }
    }
}
