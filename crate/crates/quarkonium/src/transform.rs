//! The approximation chain: inverse-coordinate transform of the truncated
//! model, quadratic inverse-power expansions about q = delta, assembly of
//! the Kratzer-form coefficients, and the finite-difference oracles that
//! validate each step.

use serde::{Deserialize, Serialize};

use crate::closed_form::KratzerCoefficients;
use crate::error::{Error, Result};
use crate::model::{spin_coupling, QuarkoniumParams};

/// Default expansion point in q-space.
pub const DEFAULT_DELTA: f64 = 0.7;

/// Affine map between energies E and the scaled eigenvalue
/// epsilon = (2 mu / hbar^2)(E - C_s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsilonMap {
    pub kinetic_factor: f64,
    pub c_s: f64,
}

impl EpsilonMap {
    pub fn epsilon_of_energy(&self, e: f64) -> f64 {
        self.kinetic_factor * (e - self.c_s)
    }

    pub fn energy_of_epsilon(&self, eps: f64) -> f64 {
        self.c_s + eps / self.kinetic_factor
    }
}

/// Coefficients of the transformed eigenvalue equation in q = 1/r:
/// phi'' + (2/q) phi' + (1/q^4)(epsilon + a q - c/q + d/q^2 - L q^2) phi = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QTransformCoeffs {
    /// Coulomb piece: (2mu/hbar^2)(4 alpha_s / 3).
    pub a: f64,
    /// Linear piece: (2mu/hbar^2) b.
    pub c: f64,
    /// Truncated-Gaussian piece: (2mu/hbar^2) C_s sigma^2; carries the sign of C_s.
    pub d: f64,
    /// Centrifugal factor l(l+1).
    pub big_l: f64,
    pub epsilon: EpsilonMap,
}

/// Builds the q = 1/r transform coefficients for the truncated model.
pub fn q_transform(params: &QuarkoniumParams, l: u32) -> Result<QTransformCoeffs> {
    params.validate()?;
    let ctx = params.context();
    let factor = ctx.kinetic_factor();
    let c_s = spin_coupling(params);
    Ok(QTransformCoeffs {
        a: factor * 4.0 * params.alpha_s / 3.0,
        c: factor * params.b,
        d: factor * c_s * params.sigma * params.sigma,
        big_l: (l * (l + 1)) as f64,
        epsilon: EpsilonMap {
            kinetic_factor: factor,
            c_s,
        },
    })
}

/// Which inverse power is being replaced by its quadratic expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    /// c/q -> c (3/delta - 3q/delta^2 + q^2/delta^3)
    Inverse,
    /// d/q^2 -> d (6/delta^2 - 8q/delta^3 + 3q^2/delta^4)
    InverseSquare,
}

/// Second-order expansion of coeff/q or coeff/q^2 about q = delta.
pub fn taylor_quadratic(kind: ExpansionKind, coeff: f64, delta: f64, q: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::Domain(format!(
            "expansion point must be > 0, got {delta}"
        )));
    }
    Ok(match kind {
        ExpansionKind::Inverse => {
            coeff * (3.0 / delta - 3.0 * q / (delta * delta) + q * q / delta.powi(3))
        }
        ExpansionKind::InverseSquare => {
            coeff * (6.0 / (delta * delta) - 8.0 * q / delta.powi(3) + 3.0 * q * q / delta.powi(4))
        }
    })
}

/// One grid point of the expansion-vs-exact comparison.
/// Relative errors are signed: (approx - exact) / exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionErrorRow {
    pub q: f64,
    pub exact_inv: f64,
    pub approx_inv: f64,
    pub rel_err_inv: f64,
    pub exact_invsq: f64,
    pub approx_invsq: f64,
    pub rel_err_invsq: f64,
}

/// Tabulates exact 1/q and 1/q^2 against their quadratic expansions.
pub fn expansion_error_table(delta: f64, q_grid: &[f64]) -> Result<Vec<ExpansionErrorRow>> {
    if !(delta > 0.0) {
        return Err(Error::Domain(format!(
            "expansion point must be > 0, got {delta}"
        )));
    }
    q_grid
        .iter()
        .map(|&q| {
            if !(q > 0.0) {
                return Err(Error::Domain(format!("q grid must be positive, got {q}")));
            }
            let exact_inv = 1.0 / q;
            let approx_inv = taylor_quadratic(ExpansionKind::Inverse, 1.0, delta, q)?;
            let exact_invsq = 1.0 / (q * q);
            let approx_invsq = taylor_quadratic(ExpansionKind::InverseSquare, 1.0, delta, q)?;
            Ok(ExpansionErrorRow {
                q,
                exact_inv,
                approx_inv,
                rel_err_inv: (approx_inv - exact_inv) / exact_inv,
                exact_invsq,
                approx_invsq,
                rel_err_invsq: (approx_invsq - exact_invsq) / exact_invsq,
            })
        })
        .collect()
}

/// CSV header of the expansion-error export (divergence plot data).
pub const EXPANSION_CSV_HEADER: &str =
    "q,exact_inv,approx_inv,rel_err_inv,exact_invsq,approx_invsq,rel_err_invsq";

pub fn expansion_table_csv(rows: &[ExpansionErrorRow]) -> String {
    use crate::format::sig12;
    let mut out = String::from(EXPANSION_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            sig12(r.q),
            sig12(r.exact_inv),
            sig12(r.approx_inv),
            sig12(r.rel_err_inv),
            sig12(r.exact_invsq),
            sig12(r.approx_invsq),
            sig12(r.rel_err_invsq),
        ));
    }
    out
}

/// Collects the quadratic expansions into the Kratzer-form coefficients:
/// A = L + c/delta^3 - 3d/delta^4, B = a + 3c/delta^2 - 8d/delta^3,
/// W = 3c/delta - 6d/delta^2 (the eigen-constant is C = W - epsilon).
pub fn assemble_kratzer(coeffs: &QTransformCoeffs, delta: f64) -> Result<KratzerCoefficients> {
    if !(delta > 0.0) {
        return Err(Error::Domain(format!(
            "expansion point must be > 0, got {delta}"
        )));
    }
    let d2 = delta * delta;
    let d3 = d2 * delta;
    let d4 = d3 * delta;
    Ok(KratzerCoefficients {
        a: coeffs.big_l + coeffs.c / d3 - 3.0 * coeffs.d / d4,
        b: coeffs.a + 3.0 * coeffs.c / d2 - 8.0 * coeffs.d / d3,
        w: 3.0 * coeffs.c / delta - 6.0 * coeffs.d / d2,
        delta,
    })
}

fn central_second(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

fn central_first(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Residual of the radial equation for the truncated model at radius r,
/// evaluated on an arbitrary smooth test function by finite differences:
/// psi'' + (eps + a/r - c r + d r^2 - L/r^2) psi.
fn radial_residual<F: Fn(f64) -> f64>(
    coeffs: &QTransformCoeffs,
    eps: f64,
    f: &F,
    r: f64,
    h: f64,
) -> f64 {
    central_second(f, r, h)
        + (eps + coeffs.a / r - coeffs.c * r + coeffs.d * r * r - coeffs.big_l / (r * r)) * f(r)
}

/// Residual of the transformed equation at q for phi(q) = psi(1/q):
/// phi'' + (2/q) phi' + (1/q^4)(eps + a q - c/q + d/q^2 - L q^2) phi.
fn q_residual<F: Fn(f64) -> f64>(
    coeffs: &QTransformCoeffs,
    eps: f64,
    phi: &F,
    q: f64,
    h: f64,
) -> f64 {
    central_second(phi, q, h)
        + 2.0 / q * central_first(phi, q, h)
        + (eps + coeffs.a * q - coeffs.c / q + coeffs.d / (q * q) - coeffs.big_l * q * q)
            / q.powi(4)
            * phi(q)
}

/// Checks that the radial equation and its q = 1/r transform agree on an
/// arbitrary test function: the radial residual at r = 1/q must equal q^4
/// times the transformed residual at q. Returns the worst mismatch over the
/// supplied q points; it vanishes at the order of the finite-difference step.
pub fn residual_oracle<F: Fn(f64) -> f64>(
    params: &QuarkoniumParams,
    l: u32,
    energy: f64,
    test_function: F,
    q_points: &[f64],
    h: f64,
) -> Result<f64> {
    let coeffs = q_transform(params, l)?;
    let eps = coeffs.epsilon.epsilon_of_energy(energy);
    let phi = |q: f64| test_function(1.0 / q);
    let mut worst: f64 = 0.0;
    for &q in q_points {
        if !(q > 0.0) {
            return Err(Error::Domain(format!("q points must be positive, got {q}")));
        }
        let in_r = radial_residual(&coeffs, eps, &test_function, 1.0 / q, h);
        let in_q = q.powi(4) * q_residual(&coeffs, eps, &phi, q, h);
        worst = worst.max((in_r - in_q).abs());
    }
    Ok(worst)
}

/// Same consistency check for the Kratzer form: the residual of
/// psi'' + (B/r - A/r^2 - C) psi = 0 at r must equal q^4 times the residual
/// of phi'' + (2/q) phi' + (1/q^4)(-A q^2 + B q - C) phi = 0 at q = 1/r.
pub fn back_transform_check<F: Fn(f64) -> f64>(
    kratzer: &KratzerCoefficients,
    eigen_c: f64,
    test_function: F,
    r_points: &[f64],
    h: f64,
) -> Result<f64> {
    let phi = |q: f64| test_function(1.0 / q);
    let mut worst: f64 = 0.0;
    for &r in r_points {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("r points must be positive, got {r}")));
        }
        let q = 1.0 / r;
        let in_r = central_second(&test_function, r, h)
            + (kratzer.b / r - kratzer.a / (r * r) - eigen_c) * test_function(r);
        let in_q = q.powi(4)
            * (central_second(&phi, q, h)
                + 2.0 / q * central_first(&phi, q, h)
                + (-kratzer.a * q * q + kratzer.b * q - eigen_c) / q.powi(4) * phi(q));
        worst = worst.max((in_r - in_q).abs());
    }
    Ok(worst)
}
