//! Dormand–Prince 5(4) embedded Runge–Kutta integration of a scalar ODE
//! `y' = f(x, y)`, with accepted steps retained so the solution can be
//! re-evaluated anywhere inside the integrated interval.

use crate::error::{GeomError, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

const MAX_STEPS: usize = 100_000;

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

/// One Dormand–Prince step; returns the 5th-order value and the embedded error.
fn step<F: Fn(f64, f64) -> f64>(f: &F, x: f64, y: f64, h: f64) -> (f64, f64) {
    let mut k = [0.0; 7];
    for i in 0..7 {
        let yi = y + h * (0..i).map(|j| A[i][j] * k[j]).sum::<f64>();
        k[i] = f(x + C[i] * h, yi);
    }
    let y5 = y + h * (0..7).map(|i| B5[i] * k[i]).sum::<f64>();
    let y4 = y + h * (0..7).map(|i| B4[i] * k[i]).sum::<f64>();
    (y5, (y5 - y4).abs())
}

/// Accepted integration nodes `(x_i, y_i)` ordered along the direction of
/// integration.
#[derive(Debug, Clone)]
pub struct Solution {
    nodes: Vec<(f64, f64)>,
}

impl Solution {
    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn start(&self) -> f64 {
        self.nodes[0].0
    }

    pub fn end(&self) -> f64 {
        self.nodes[self.nodes.len() - 1].0
    }

    /// Solution value at `x`, obtained by one Dormand–Prince step from the
    /// accepted node nearest to `x` on the side of the integration origin.
    pub fn eval<F: Fn(f64, f64) -> f64>(&self, f: &F, x: f64) -> Result<f64> {
        let (lo, hi) = if self.start() <= self.end() { (self.start(), self.end()) } else { (self.end(), self.start()) };
        if !(lo..=hi).contains(&x) {
            return Err(GeomError::Domain(format!("{x} lies outside the integrated range [{lo}, {hi}]")));
        }
        let forward = self.end() >= self.start();
        // Index of the last node not past x in the integration direction.
        let idx = self.nodes.partition_point(|&(xi, _)| if forward { xi <= x } else { xi >= x }).saturating_sub(1);
        let (xi, yi) = self.nodes[idx];
        if xi == x {
            return Ok(yi);
        }
        Ok(step(f, xi, yi, x - xi).0)
    }
}

/// Integrates `y' = f(x, y)` from `(x0, y0)` to `x1` with adaptive step size.
pub fn integrate<F: Fn(f64, f64) -> f64>(f: &F, x0: f64, y0: f64, x1: f64, tol: Tolerance) -> Result<Solution> {
    let span = x1 - x0;
    let direction = span.signum();
    let mut nodes = vec![(x0, y0)];
    if span == 0.0 {
        return Ok(Solution { nodes });
    }
    let (mut x, mut y) = (x0, y0);
    let mut h = direction * span.abs().min(1e-3 * span.abs().max(1e-3));
    for _ in 0..MAX_STEPS {
        if (x1 - x) * direction <= 0.0 {
            return Ok(Solution { nodes });
        }
        if (x + h - x1) * direction > 0.0 {
            h = x1 - x;
        }
        let (y_new, err) = step(f, x, y, h);
        if !y_new.is_finite() {
            return Err(GeomError::NumericalBreakdown(format!("non-finite ODE state at x = {}", x + h)));
        }
        let scale = tol.abs + tol.rel * y.abs().max(y_new.abs());
        let ratio = err / scale;
        if ratio <= 1.0 {
            x = if (x + h - x1) * direction >= 0.0 { x1 } else { x + h };
            y = y_new;
            nodes.push((x, y));
            if x == x1 {
                return Ok(Solution { nodes });
            }
        }
        let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < 1e-14 * x.abs().max(1.0) {
            return Err(GeomError::NumericalBreakdown(format!("ODE step size underflow at x = {x}")));
        }
    }
    Err(GeomError::NumericalBreakdown("ODE integration exceeded the step budget".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerance = Tolerance { rel: 1e-10, abs: 1e-14 };

    #[test]
    fn exponential_growth() {
        let f = |_x: f64, y: f64| y;
        let sol = integrate(&f, 0.0, 1.0, 2.0, TOL).unwrap();
        assert_eq!(sol.end(), 2.0);
        let y = sol.nodes().last().unwrap().1;
        assert!(((y - 2f64.exp()) / 2f64.exp()).abs() < 1e-9);
        let mid = sol.eval(&f, 1.234).unwrap();
        assert!(((mid - 1.234f64.exp()) / 1.234f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn backward_integration() {
        // y' = cos x, integrated from pi/2 down to 0.1.
        let f = |x: f64, _y: f64| x.cos();
        let sol = integrate(&f, std::f64::consts::FRAC_PI_2, 1.0, 0.1, TOL).unwrap();
        let y = sol.eval(&f, 0.5).unwrap();
        assert!((y - 0.5f64.sin()).abs() < 1e-10);
        assert!(sol.eval(&f, 0.05).is_err());
    }

    #[test]
    fn eval_matches_exact_solution_near_nodes() {
        let f = |x: f64, _y: f64| 1.0 / (x * x);
        let sol = integrate(&f, 1.0, 0.0, 0.01, TOL).unwrap();
        for &(xi, _) in sol.nodes().iter().skip(1).take(20) {
            for x in [xi - 1e-9, xi + 1e-9] {
                let exact = 1.0 - 1.0 / x;
                let got = sol.eval(&f, x).unwrap();
                assert!((got - exact).abs() < 1e-8 * exact.abs().max(1.0), "{x}: {got} vs {exact}");
            }
        }
    }
}
