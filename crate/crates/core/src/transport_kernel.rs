//! Frequency symbols of the inverse source problem.
//!
//! The measurement trace `y(t) = u(x0, t)` of the transport equation
//! `u_t = alpha2 u_xx - beta u_x - nu u + f(t)` determines the source
//! through pointwise multiplication in the frequency domain. This module
//! evaluates the multiplier `Lambda(xi)`, its stabilized variant
//! `Lambda(xi) / (1 + mu^2 xi^2)`, and the closed-form constants that
//! bound the stabilized operator.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Physical coefficients of the transport equation plus the sensor position.
///
/// Invariants enforced at construction: `alpha2 > 0`, `nu > 0`, `beta >= 0`,
/// `x0 > 0`. Under these the decay exponent `m` is strictly positive, which
/// keeps the denominator of `Lambda` bounded away from zero for every real
/// frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportParams {
    alpha2: f64,
    beta: f64,
    nu: f64,
    x0: f64,
}

impl TransportParams {
    pub fn new(alpha2: f64, beta: f64, nu: f64, x0: f64) -> Result<Self> {
        if !alpha2.is_finite() || alpha2 <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "diffusivity alpha2 = {alpha2} must be strictly positive"
            )));
        }
        if !nu.is_finite() || nu <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "reaction rate nu = {nu} must be strictly positive"
            )));
        }
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::InvalidParams(format!(
                "advection velocity beta = {beta} must be nonnegative"
            )));
        }
        if !x0.is_finite() || x0 <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "sensor position x0 = {x0} must be strictly positive"
            )));
        }
        Ok(Self { alpha2, beta, nu, x0 })
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// Spatial decay rate `m = (-beta + sqrt(beta^2 + 4 alpha2 nu)) / (2 alpha2)`
    /// of the bounded solution branch. Strictly positive whenever the
    /// construction invariants hold.
    pub fn decay_exponent(&self) -> f64 {
        (-self.beta + (self.beta * self.beta + 4.0 * self.alpha2 * self.nu).sqrt())
            / (2.0 * self.alpha2)
    }
}

/// Regularization parameter restricted to the open interval (0, 1).
///
/// The closed-form bounds on the stabilized multiplier are only valid for
/// `0 < mu < 1`; a caller asking for `mu >= 1` indicates a configuration
/// error rather than a meaningful regularization choice.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Mu(f64);

impl Mu {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 || value >= 1.0 {
            return Err(Error::MuOutOfRange(value));
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// `z(xi) = nu + i xi`.
pub fn z_symbol(xi: f64, params: &TransportParams) -> Complex64 {
    Complex64::new(params.nu(), xi)
}

/// The inverse-problem multiplier
/// `Lambda(xi) = z(xi) / (1 - exp((beta - sqrt(beta^2 + 4 alpha2 z(xi))) x0 / (2 alpha2)))`.
///
/// The complex square root is the principal branch (nonnegative real part),
/// which selects the spatially decaying solution branch; with `nu > 0` the
/// exponent has strictly negative real part, so the denominator never
/// vanishes.
pub fn lambda_symbol(xi: f64, params: &TransportParams) -> Complex64 {
    let z = z_symbol(xi, params);
    let beta = params.beta();
    let alpha2 = params.alpha2();
    let root = (Complex64::new(beta * beta, 0.0) + 4.0 * alpha2 * z).sqrt();
    let exponent = (Complex64::new(beta, 0.0) - root) * (params.x0() / (2.0 * alpha2));
    z / (Complex64::new(1.0, 0.0) - exponent.exp())
}

/// Stabilized multiplier `Lambda(xi) / (1 + mu^2 xi^2)`.
pub fn stabilized_multiplier(xi: f64, mu: Mu, params: &TransportParams) -> Complex64 {
    lambda_symbol(xi, params) / (1.0 + mu.value() * mu.value() * xi * xi)
}

/// The mu-free factor `(2 nu + 1) * max{1, 1/(m x0)}` with `m` the decay
/// exponent.
///
/// Derivation: `|Lambda| <= (nu + |xi|) / (1 - e^{-m x0})`, and
/// `1/(1 - e^{-x}) <= 2 max{1, 1/x}` for `x > 0`; combining with
/// `|xi|/(1 + xi^2 mu^2) <= 1/(2 mu)` and `2 nu + 1/mu <= (2 nu + 1)/mu^2`
/// for `0 < mu < 1` gives the uniform bound below. The `max` is essential:
/// dropping it (keeping only the `1/(m x0)` branch) understates the sup
/// whenever `m x0 > 1` — already at `xi = 0` the multiplier exceeds the
/// truncated expression.
pub fn lemma4_constant(params: &TransportParams) -> f64 {
    let mx0 = params.decay_exponent() * params.x0();
    (2.0 * params.nu() + 1.0) * (1.0f64).max(1.0 / mx0)
}

/// Uniform bound on `|Lambda(xi) / (1 + mu^2 xi^2)|` over all real `xi`:
/// `lemma4_constant / mu^2`. Strictly positive and strictly decreasing in mu.
pub fn lemma4_bound(mu: Mu, params: &TransportParams) -> f64 {
    lemma4_constant(params) / (mu.value() * mu.value())
}

/// `max{mu^p, mu^2}`, the sup over xi of the filter factor
/// `(1 + xi^2)^(-p/2) (1 - 1/(1 + xi^2 mu^2))` weighted for sources of
/// smoothness order p.
pub fn filter_sup_bound(mu: Mu, p: f64) -> Result<f64> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::NonPositiveSmoothness(p));
    }
    let m = mu.value();
    Ok(m.powf(p).max(m * m))
}
