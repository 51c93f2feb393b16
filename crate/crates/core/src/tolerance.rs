use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by the renormalization, geometry and solver code.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// A coefficient `E_d` counts as zero when `E_d <= zero_tol * |E|`.
    pub zero_tol: f64,
    /// Negative trace coefficients above `-markov_tol * |E| * max r` are clamped to zero.
    pub markov_tol: f64,
    /// `|Λ_r(E)| <= image_zero_tol * |E|` is treated as a vanishing image (stratum D4).
    pub image_zero_tol: f64,
    /// Relative singular value cutoff for pseudoinverses; `None` means
    /// `max_dim * f64::EPSILON`.
    pub rank_tol: Option<f64>,
    /// Collinearity and `t > 1` slack for outward-ray membership.
    pub ext_tol: f64,
    /// Minimum sup-distance between a point and the reference point.
    pub ray_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero_tol: 1e-14,
            markov_tol: 1e-9,
            image_zero_tol: 1e-12,
            rank_tol: None,
            ext_tol: 1e-9,
            ray_tol: 1e-14,
        }
    }
}
