//! Central finite differences with Richardson extrapolation.
//!
//! Every difference quotient here has an error expansion in even powers of the
//! step, so each extrapolation level eliminates one power of `h²`.

use std::ops::{Add, Mul, Sub};

use crate::error::Result;
use crate::vec3::Vec3;

/// Values that can be differenced: a real vector space with a norm.
pub trait Differentiable: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(&self) -> f64;
}

impl Differentiable for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Differentiable for Vec3 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Extrapolated derivative together with the magnitude of the last correction.
#[derive(Debug, Clone, Copy)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
}

/// `(f(x+h) - f(x-h)) / 2h`
pub fn central_diff<T, F>(mut f: F, x: f64, h: f64) -> Result<T>
where
    T: Differentiable,
    F: FnMut(f64) -> Result<T>,
{
    Ok((f(x + h)? - f(x - h)?) * (0.5 / h))
}

/// `(f(x+h) - 2f(x) + f(x-h)) / h²`
pub fn second_diff<T, F>(mut f: F, x: f64, h: f64) -> Result<T>
where
    T: Differentiable,
    F: FnMut(f64) -> Result<T>,
{
    let mid = f(x)?;
    Ok((f(x + h)? + f(x - h)? - mid * 2.0) * (1.0 / (h * h)))
}

/// Richardson table over the step sequence `h, h/2, ..., h/2^levels` for a
/// difference quotient with an `h²` error expansion.
fn extrapolate<T: Differentiable>(column: Vec<T>) -> Estimate<T> {
    let mut column = column;
    let mut error = f64::INFINITY;
    let mut factor = 4.0;
    while column.len() > 1 {
        let next: Vec<T> = column.windows(2).map(|w| (w[1] * factor - w[0]) * (1.0 / (factor - 1.0))).collect();
        error = (next[next.len() - 1] - column[column.len() - 1]).magnitude();
        column = next;
        factor *= 4.0;
    }
    Estimate { value: column[0], error }
}

/// First derivative by central differences, extrapolated `levels` times.
pub fn richardson_derivative<T, F>(mut f: F, x: f64, h: f64, levels: usize) -> Result<Estimate<T>>
where
    T: Differentiable,
    F: FnMut(f64) -> Result<T>,
{
    let mut column = Vec::with_capacity(levels + 1);
    let mut step = h;
    for _ in 0..=levels {
        column.push(central_diff(&mut f, x, step)?);
        step *= 0.5;
    }
    Ok(extrapolate(column))
}

/// Second derivative by central differences, extrapolated `levels` times.
pub fn richardson_second_derivative<T, F>(mut f: F, x: f64, h: f64, levels: usize) -> Result<Estimate<T>>
where
    T: Differentiable,
    F: FnMut(f64) -> Result<T>,
{
    let mut column = Vec::with_capacity(levels + 1);
    let mut step = h;
    for _ in 0..=levels {
        column.push(second_diff(&mut f, x, step)?);
        step *= 0.5;
    }
    Ok(extrapolate(column))
}

/// Richardson extrapolation of an arbitrary sequence of central-difference
/// estimates taken at steps `h_0 > h_1 > ...` (not necessarily halving).
pub fn extrapolate_sequence(steps: &[f64], values: &[f64]) -> Estimate<f64> {
    assert_eq!(steps.len(), values.len());
    assert!(!steps.is_empty());
    // Neville's scheme on the variable h², evaluated at h² = 0.
    let n = steps.len();
    let h2: Vec<f64> = steps.iter().map(|h| h * h).collect();
    let mut p = values.to_vec();
    let mut error = f64::INFINITY;
    for level in 1..n {
        let prev_last = p[n - level];
        for i in 0..n - level {
            let j = i + level;
            p[i] = (h2[i] * p[i + 1] - h2[j] * p[i]) / (h2[i] - h2[j]);
        }
        error = (p[n - level - 1] - prev_last).abs();
    }
    Estimate { value: p[0], error }
}
