//! Closed-form geodesic curvature of a logarithmic spiral on a surface of
//! constant Gaussian curvature `K`, at geodesic distance `r` from its center:
//!
//! ```text
//! k_θ(K, r) = cos θ · f(K, r)
//! f(K, r)   = √K cot(r√K)        K > 0
//!           = 1/r                K = 0
//!           = √-K coth(r√-K)     K < 0
//! ```
//!
//! `f(K, r)` is also the geodesic curvature of the positively oriented
//! geodesic circle of radius `r`. Near `K = 0` both transcendental branches
//! cancel catastrophically, so whenever `|K| r² < SEAM_THRESHOLD` the functions
//! switch to the Taylor expansion of `x cot x` in `z = K r²`, which is valid for
//! either sign of `K`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// `|K| r²` below which the series branch is used.
pub const SEAM_THRESHOLD: f64 = 1e-4;

/// Number of series terms used on the seam; the first omitted term is below
/// `z⁴/4725 < 3e-20` there.
pub const SEAM_TERMS: usize = 4;

/// Largest `|K| r²` accepted by [`series_k_small_k`].
pub const SERIES_WINDOW: f64 = 0.1;

/// Taylor coefficients of `x cot x = Σ c_n x^{2n}`, i.e.
/// `c_n = (-1)^n 2^{2n} B_{2n} / (2n)!`.
pub const SERIES_COEFFICIENTS: [f64; 7] =
    [1.0, -1.0 / 3.0, -1.0 / 45.0, -2.0 / 945.0, -1.0 / 4725.0, -2.0 / 93555.0, -1382.0 / 638512875.0];

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Series,
    Numeric,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Series => "series",
            Method::Numeric => "numeric",
        }
    }
}

/// `cos θ`, evaluated as `sin(π/2 - θ)` so that `θ = π/2` (to the last bit)
/// gives exactly zero. Elsewhere this agrees with `θ.cos()` to about one ulp of
/// `π/2`.
pub fn cos_angle(theta: f64) -> f64 {
    (FRAC_PI_2 - theta).sin()
}

/// An admissible point `(K, r, θ)` of the spiral curvature function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpiralCurvatureQuery {
    pub gaussian_curvature: f64,
    pub r: f64,
    pub theta: f64,
}

impl SpiralCurvatureQuery {
    pub fn new(gaussian_curvature: f64, r: f64, theta: f64) -> Result<Self> {
        check_theta(theta)?;
        check_radius(gaussian_curvature, r)?;
        Ok(SpiralCurvatureQuery { gaussian_curvature, r, theta })
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(GeomError::Domain(format!("characteristic angle θ = {theta} must lie in (0, π)")))
    }
}

/// `r > 0`, and `r √K < π` when `K > 0`.
fn check_radius(k: f64, r: f64) -> Result<()> {
    if !k.is_finite() {
        return Err(GeomError::Domain(format!("Gaussian curvature K = {k} must be finite")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(GeomError::Domain(format!("distance r = {r} must be positive and finite")));
    }
    if k > 0.0 && r * k.sqrt() >= PI {
        return Err(GeomError::Domain(format!("r = {r} is not below π/√K = {} for K = {k}", PI / k.sqrt())));
    }
    Ok(())
}

/// Largest distance at which geodesic circles exist for curvature `k`
/// (`π/√K` for `K > 0`, unbounded otherwise).
pub fn max_radius(k: f64) -> f64 {
    if k > 0.0 {
        PI / k.sqrt()
    } else {
        f64::INFINITY
    }
}

fn uses_series(t: f64, r: f64) -> bool {
    t.abs() * r * r < SEAM_THRESHOLD
}

/// `(1/r) Σ_{n<terms} c_n z^n` with `z = t r²`, arranged so that `t = 0`
/// yields exactly `1/r`.
fn series_f(t: f64, r: f64, terms: usize) -> f64 {
    let z = t * r * r;
    let tail = SERIES_COEFFICIENTS[1..terms].iter().rev().fold(0.0, |acc, &c| acc * z + c);
    (1.0 + z * tail) / r
}

/// Derivative of [`series_f`] in `t`: `Σ n c_n r^{2n-1} t^{n-1}`, with the
/// leading term written as `-r/3` so that `t = 0` yields it exactly.
fn series_f_prime(t: f64, r: f64, terms: usize) -> f64 {
    let z = t * r * r;
    let tail = (2..terms).rev().fold(0.0, |acc, n| acc * z + n as f64 * SERIES_COEFFICIENTS[n]);
    -r / 3.0 + r * z * tail
}

fn f_direct(t: f64, r: f64) -> f64 {
    if t > 0.0 {
        let s = t.sqrt();
        s / (r * s).tan()
    } else if t < 0.0 {
        let s = (-t).sqrt();
        s / (r * s).tanh()
    } else {
        1.0 / r
    }
}

fn f_prime_direct(t: f64, r: f64) -> f64 {
    if t > 0.0 {
        let s = t.sqrt();
        let a = r * s;
        let sin = a.sin();
        (1.0 / a.tan() - a / (sin * sin)) / (2.0 * s)
    } else {
        let s = (-t).sqrt();
        let b = r * s;
        let sinh = b.sinh();
        (-1.0 / b.tanh() + b / (sinh * sinh)) / (2.0 * s)
    }
}

/// The auxiliary function `f(t)` at fixed `r`, with the branch that produced it.
pub fn f_with_method(t: f64, r: f64) -> Result<(f64, Method)> {
    check_radius(t, r)?;
    if uses_series(t, r) {
        Ok((series_f(t, r, SEAM_TERMS), Method::Series))
    } else {
        Ok((f_direct(t, r), Method::ClosedForm))
    }
}

/// `f(t) = √t cot(r√t)`, `1/r`, or `√-t coth(r√-t)` by the sign of `t`.
pub fn f(t: f64, r: f64) -> Result<f64> {
    f_with_method(t, r).map(|(v, _)| v)
}

/// `f'(t)`; equals `-r/3` at `t = 0`.
pub fn f_prime(t: f64, r: f64) -> Result<f64> {
    check_radius(t, r)?;
    if uses_series(t, r) {
        Ok(series_f_prime(t, r, SEAM_TERMS + 1))
    } else {
        Ok(f_prime_direct(t, r))
    }
}

/// Truncated expansion `cos θ (1/r - K r/3 - K² r³/45 - 2 K³ r⁵/945 - ...)`
/// using the first `terms` coefficients.
pub fn series_k_small_k(k: f64, r: f64, theta: f64, terms: usize) -> Result<f64> {
    if !(2..=SERIES_COEFFICIENTS.len() - 1).contains(&terms) {
        return Err(GeomError::Domain(format!("series term count {terms} must lie in [2, 6]")));
    }
    if !(r > 0.0) || !k.is_finite() {
        return Err(GeomError::Domain(format!("series needs finite K and r > 0, got K = {k}, r = {r}")));
    }
    if k.abs() * r * r > SERIES_WINDOW {
        return Err(GeomError::Domain(format!(
            "|K| r² = {} exceeds the series window {SERIES_WINDOW}",
            k.abs() * r * r
        )));
    }
    Ok(cos_angle(theta) * series_f(k, r, terms))
}

/// Direct transcendental evaluation of `k_θ`, bypassing the seam switch.
/// Exposed for seam-consistency checks.
pub fn k_theta_direct(q: &SpiralCurvatureQuery) -> f64 {
    cos_angle(q.theta) * f_direct(q.gaussian_curvature, q.r)
}

pub fn k_theta_with_method(q: &SpiralCurvatureQuery) -> Result<(f64, Method)> {
    let (fv, method) = f_with_method(q.gaussian_curvature, q.r)?;
    Ok((cos_angle(q.theta) * fv, method))
}

/// Geodesic curvature of the logarithmic spiral `γ_θ(K, r)`.
pub fn k_theta(q: &SpiralCurvatureQuery) -> Result<f64> {
    k_theta_with_method(q).map(|(v, _)| v)
}

/// Convenience wrapper validating and evaluating `k_θ(K, r)`.
pub fn k_theta_at(k: f64, r: f64, theta: f64) -> Result<f64> {
    k_theta(&SpiralCurvatureQuery::new(k, r, theta)?)
}

/// `∂k_θ/∂K (K, r) = cos θ · f'(K)`; exactly `-(r/3) cos θ` at `K = 0`.
pub fn dk_dcurvature(k: f64, r: f64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(cos_angle(theta) * f_prime(k, r)?)
}

/// `∂|k_θ|/∂K = sign(k_θ) · ∂k_θ/∂K`, with `sign(0) = 0`.
pub fn abs_k_sensitivity(k: f64, r: f64, theta: f64) -> Result<f64> {
    let value = k_theta_at(k, r, theta)?;
    let sign = if value > 0.0 {
        1.0
    } else if value < 0.0 {
        -1.0
    } else {
        0.0
    };
    Ok(sign * dk_dcurvature(k, r, theta)?)
}

/// Independent variable of a [`CurvatureProfile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileAxis {
    /// Sweep the distance `r` at fixed `K`.
    #[serde(rename = "r")]
    Distance,
    /// Sweep the Gaussian curvature `K` at fixed `r`.
    #[serde(rename = "K")]
    Curvature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub x: f64,
    pub k: f64,
    pub method: Method,
}

/// `k_θ` sampled along one axis with the other held fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureProfile {
    pub axis: ProfileAxis,
    pub theta: f64,
    pub fixed_value: f64,
    pub samples: Vec<ProfileSample>,
}

/// Evenly spaced samples of `k_θ` over `[min, max]`. Every point is validated
/// before any is returned.
pub fn curvature_profile(
    axis: ProfileAxis,
    fixed_value: f64,
    min: f64,
    max: f64,
    steps: usize,
    theta: f64,
) -> Result<CurvatureProfile> {
    if steps < 2 {
        return Err(GeomError::Domain(format!("a profile needs at least 2 steps, got {steps}")));
    }
    if !(min < max) {
        return Err(GeomError::Domain(format!("profile range [{min}, {max}] must be increasing")));
    }
    let xs: Vec<f64> = (0..steps)
        .map(|i| if i == steps - 1 { max } else { min + (max - min) * (i as f64) / ((steps - 1) as f64) })
        .collect();
    let samples = xs
        .into_iter()
        .map(|x| {
            let q = match axis {
                ProfileAxis::Distance => SpiralCurvatureQuery::new(fixed_value, x, theta)?,
                ProfileAxis::Curvature => SpiralCurvatureQuery::new(x, fixed_value, theta)?,
            };
            let (k, method) = k_theta_with_method(&q)?;
            Ok(ProfileSample { x, k, method })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurvatureProfile { axis, theta, fixed_value, samples })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn flat_value_is_cos_over_r() {
        let k = k_theta_at(0.0, 2.0, 1.0471975511965976).unwrap();
        assert!((k - 0.25).abs() <= 0.25 * f64::EPSILON);
    }

    #[test]
    fn sphere_equator_distance_gives_zero() {
        for theta in [0.3, FRAC_PI_3, 2.0] {
            assert!(k_theta_at(1.0, FRAC_PI_2, theta).unwrap().abs() < 1e-16);
        }
    }

    #[test]
    fn hyperbolic_value_matches_oracle() {
        // 0.5 coth(0.5) from the 256-bit oracle.
        let k = k_theta_at(-1.0, 0.5, FRAC_PI_3).unwrap();
        assert!(rel(k, 1.081976706869326424385002) < 1e-15, "{k}");
    }

    #[test]
    fn quarter_turn_gives_exact_zero() {
        for (kk, r) in [(-3.0, 0.2), (0.0, 1.0), (2.0, 1.5)] {
            assert_eq!(k_theta_at(kk, r, FRAC_PI_2).unwrap(), 0.0);
            assert_eq!(dk_dcurvature(kk, r, FRAC_PI_2).unwrap(), 0.0);
            assert_eq!(abs_k_sensitivity(kk, r, FRAC_PI_2).unwrap(), 0.0);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(k_theta_at(1.0, PI, 1.0), Err(GeomError::Domain(_))));
        assert!(matches!(k_theta_at(1.0, 3.2, 1.0), Err(GeomError::Domain(_))));
        assert!(k_theta_at(0.0, 0.0, 1.0).is_err());
        assert!(k_theta_at(0.0, -1.0, 1.0).is_err());
        assert!(k_theta_at(0.0, 1.0, 0.0).is_err());
        assert!(k_theta_at(0.0, 1.0, PI).is_err());
        assert!(f(4.0, PI / 2.0).is_err());
        assert!(f_prime(1.0, PI).is_err());
    }

    #[test]
    fn auxiliary_values() {
        assert_eq!(f(0.0, 4.0).unwrap(), 0.25);
        assert_eq!(f_prime(0.0, 3.0).unwrap(), -1.0);
        assert!(rel(f(-1.0, 1.0).unwrap(), 1.313035285499331303636161) < 4e-16);
        assert!(rel(f_prime(-1.0, 1.0).unwrap(), -0.2944868122665104186140862) < 1e-14);
    }

    #[test]
    fn f_prime_at_zero_is_exactly_minus_r_over_three() {
        for r in [0.25, 1.0, 3.0, 4.0, 0.1, 7.3] {
            assert_eq!(f_prime(0.0, r).unwrap(), -r / 3.0);
        }
    }

    #[test]
    fn series_at_zero_is_exact() {
        for terms in 2..=6 {
            assert_eq!(series_k_small_k(0.0, 2.0, 0.0, terms).unwrap(), 0.5);
        }
    }

    #[test]
    fn series_matches_high_precision_oracle() {
        // √K cot(√K) at K = 1e-6, r = 1, θ = 0, from the 256-bit oracle.
        let v = series_k_small_k(1e-6, 1.0, 0.0, 4).unwrap();
        assert!(rel(v, 0.999999666666644444442328) < 2e-16, "{v}");
    }

    #[test]
    fn series_straddles_flat_value() {
        let (k, r, theta) = (1e-3, 0.8, 0.6);
        let plus = series_k_small_k(k, r, theta, 4).unwrap();
        let minus = series_k_small_k(-k, r, theta, 4).unwrap();
        let flat = cos_angle(theta) / r;
        assert!(plus < flat && flat < minus);
        let leading = 2.0 * k * r * cos_angle(theta) / 3.0;
        assert!(((minus - plus) - leading).abs() < 1e-3 * leading);
    }

    #[test]
    fn series_rejects_out_of_window() {
        assert!(series_k_small_k(1.0, 1.0, 0.5, 4).is_err());
        assert!(series_k_small_k(1e-3, 1.0, 0.5, 1).is_err());
        assert!(series_k_small_k(1e-3, 1.0, 0.5, 7).is_err());
    }

    #[test]
    fn derivative_at_zero() {
        let d = dk_dcurvature(0.0, 3.0, FRAC_PI_3).unwrap();
        assert!((d + 0.5).abs() < 1e-15);
        let d = dk_dcurvature(0.0, 1.0, FRAC_PI_4).unwrap();
        assert!(rel(d, -0.2357022603955158414669481) < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_differences_away_from_seam() {
        use crate::numdiff::richardson_derivative;
        for &(kk, r, theta) in &[(-1.0, 1.0, 0.0001), (2.0, 0.7, FRAC_PI_6), (-4.0, 0.3, 2.5), (0.5, 2.0, 1.0)] {
            let fd = richardson_derivative(|x| k_theta_at(x, r, theta.max(1e-4)), kk, 1e-2, 3).unwrap().value;
            let d = dk_dcurvature(kk, r, theta.max(1e-4)).unwrap();
            assert!(rel(d, fd) < 1e-9, "K={kk} r={r}: {d} vs {fd}");
        }
    }

    #[test]
    fn factorization_holds_bitwise() {
        for &(kk, r, theta) in &[(-2.0, 0.4, 0.3), (0.0, 1.1, 2.0), (1e-6, 1.0, 1.0), (3.0, 1.0, 1.4)] {
            let k = k_theta_at(kk, r, theta).unwrap();
            assert_eq!(k, cos_angle(theta) * f(kk, r).unwrap());
        }
    }

    #[test]
    fn profile_has_requested_shape() {
        let p = curvature_profile(ProfileAxis::Curvature, 1.0, -1e-3, 1e-3, 5, FRAC_PI_4).unwrap();
        assert_eq!(p.samples.len(), 5);
        assert_eq!(p.samples[0].x, -1e-3);
        assert_eq!(p.samples[4].x, 1e-3);
        assert!(p.samples.windows(2).all(|w| w[0].x < w[1].x));
        assert_eq!(p.samples[2].method, Method::Series);
        assert_eq!(p.samples[0].method, Method::ClosedForm);
        let two = curvature_profile(ProfileAxis::Distance, 0.0, 1.0, 2.0, 2, 1.0).unwrap();
        assert_eq!(two.samples.len(), 2);
        assert!(curvature_profile(ProfileAxis::Distance, 1.0, 1.0, 3.5, 10, 1.0).is_err());
        assert!(curvature_profile(ProfileAxis::Distance, 1.0, 1.0, 2.0, 1, 1.0).is_err());
    }
}
