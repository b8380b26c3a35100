//! The unregularized inverse operator, its stabilized family, and the
//! a-priori parameter choice rules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral_grid::{from_spectrum, to_spectrum, Signal};
use crate::transport_kernel::{lambda_symbol, stabilized_multiplier, Mu, TransportParams};

/// How the regularization parameter is derived from the noise level.
///
/// Two closed-form variants are carried because the published rule appears in
/// two inequivalent forms; reports always state which one was used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuRule {
    /// `mu = delta^(1/(p+2))`
    Theorem2,
    /// `mu = delta^(2/(p+2))`
    Section5,
    /// Explicit mu, validated against (0, 1).
    Manual(f64),
}

impl MuRule {
    pub fn name(&self) -> &'static str {
        match self {
            MuRule::Theorem2 => "theorem2",
            MuRule::Section5 => "section5",
            MuRule::Manual(_) => "manual",
        }
    }
}

/// Resolve mu from the noise level and smoothness order.
///
/// Rejects `delta >= 1` (both power rules would give `mu >= 1`, outside the
/// domain on which the stabilized operator bounds hold) and nonpositive p.
pub fn choose_mu(delta: f64, p: f64, rule: MuRule) -> Result<Mu> {
    if !delta.is_finite() || delta <= 0.0 || delta >= 1.0 {
        return Err(Error::DeltaOutOfRange(delta));
    }
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::NonPositiveSmoothness(p));
    }
    match rule {
        MuRule::Theorem2 => Mu::new(delta.powf(1.0 / (p + 2.0))),
        MuRule::Section5 => Mu::new(delta.powf(2.0 / (p + 2.0))),
        MuRule::Manual(value) => Mu::new(value),
    }
}

/// Unregularized inverse: `f = from_spectrum(Lambda * to_spectrum(y))`.
///
/// Well-defined on a finite grid (frequencies are capped at Nyquist) but
/// amplifies high-frequency noise without bound as the grid refines.
pub fn apply_t(y: &Signal, params: &TransportParams) -> Result<Signal> {
    let spectrum = to_spectrum(y).map_symbol(|xi| lambda_symbol(xi, params));
    from_spectrum(&spectrum)
}

/// Regularized inverse: multiplication by `Lambda(xi) / (1 + mu^2 xi^2)`.
/// A bounded operator with discrete L2 norm at most `lemma4_bound(mu)`.
pub fn apply_r_mu(y: &Signal, mu: Mu, params: &TransportParams) -> Result<Signal> {
    let spectrum = to_spectrum(y).map_symbol(|xi| stabilized_multiplier(xi, mu, params));
    from_spectrum(&spectrum)
}
