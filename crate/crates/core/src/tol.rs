//! Numerical tolerances.

/// Default tolerance for structural checks (symmetry, unitarity, membership).
pub const STRUCTURAL: f64 = 1e-10;
/// Tolerance for algebraic identities evaluated in double precision.
pub const ALGEBRAIC: f64 = 1e-12;
/// Minimum eigenvalue margin required for positive definiteness.
pub const MARGIN: f64 = 1e-6;

/// Structural tolerance, overridable with the `MONOPOLE_TOL` environment variable.
pub fn structural() -> f64 {
    std::env::var("MONOPOLE_TOL")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(STRUCTURAL)
}
