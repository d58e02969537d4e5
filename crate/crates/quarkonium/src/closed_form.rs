//! Analytic bound-state spectra used as validation oracles: Coulomb,
//! isotropic oscillator and the Kratzer-Fues form, plus the closed-form
//! spectrum the approximation chain produces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of the Kratzer-form eigenvalue equation
/// psi'' + (B/r - A/r^2 - C) psi = 0, together with the constant term `w`
/// produced by the quadratic expansions (C = w - epsilon).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KratzerCoefficients {
    /// Coefficient of 1/r^2 (includes the centrifugal contribution).
    pub a: f64,
    /// Coefficient of 1/r, an inverse length.
    pub b: f64,
    /// The expansion-point constant 3c/delta - 6d/delta^2, inverse length^2.
    pub w: f64,
    /// Expansion point in q-space.
    pub delta: f64,
}

impl KratzerCoefficients {
    pub fn validate(&self) -> Result<()> {
        if 1.0 + 4.0 * self.a < 0.0 {
            return Err(Error::Domain(format!(
                "fall to center: 1 + 4A = {} < 0",
                1.0 + 4.0 * self.a
            )));
        }
        if !(self.b > 0.0) {
            return Err(Error::NoBoundState(format!(
                "Kratzer form needs B > 0 for bound states, got {}",
                self.b
            )));
        }
        Ok(())
    }

    /// Effective angular momentum: the positive root of L(L+1) = A.
    pub fn lambda(&self) -> f64 {
        0.5 * (-1.0 + (1.0 + 4.0 * self.a).sqrt())
    }
}

/// Coefficients of the closed-form spectrum
/// E_n = Gamma0 - (mu/2 hbar^2) (Gamma1/(n + Gamma2))^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OeaGammas {
    pub gamma0: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl OeaGammas {
    /// Assembles the spectrum coefficients from the Kratzer form:
    /// Gamma0 = C_s + (hbar^2/2mu) W, Gamma1 = hbar^2 B / (2mu),
    /// Gamma2 = (1 + sqrt(1 + 4A)) / 2.
    pub fn from_kratzer(k: &KratzerCoefficients, c_s: f64, mu: f64, hbar: f64) -> Result<Self> {
        if 1.0 + 4.0 * k.a < 0.0 {
            return Err(Error::Domain("fall to center: 1 + 4A < 0".into()));
        }
        let h2_2mu = hbar * hbar / (2.0 * mu);
        Ok(Self {
            gamma0: c_s + h2_2mu * k.w,
            gamma1: h2_2mu * k.b,
            gamma2: 0.5 * (1.0 + (1.0 + 4.0 * k.a).sqrt()),
        })
    }
}

/// Hydrogen-like levels -mu k^2 / (2 hbar^2 N^2), N = n_r + l + 1.
pub fn coulomb_levels(k: f64, mu: f64, hbar: f64, n_r: u32, l: u32) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!(
            "Coulomb strength must be > 0, got {k}"
        )));
    }
    let n = (n_r + l + 1) as f64;
    Ok(-mu * k * k / (2.0 * hbar * hbar * n * n))
}

/// Isotropic 3D oscillator levels hbar omega (2 n_r + l + 3/2).
pub fn oscillator_levels(omega: f64, hbar: f64, n_r: u32, l: u32) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain(format!("omega must be > 0, got {omega}")));
    }
    Ok(hbar * omega * (2.0 * n_r as f64 + l as f64 + 1.5))
}

/// Quantized eigen-constant of psi'' + (B/r - A/r^2 - C) psi = 0:
/// C = B^2 / (4 N^2) with N = n_r + Lambda + 1, Lambda(Lambda+1) = A.
pub fn kratzer_levels(coeffs: &KratzerCoefficients, n_r: u32) -> Result<f64> {
    coeffs.validate()?;
    let n_eff = n_r as f64 + coeffs.lambda() + 1.0;
    Ok(coeffs.b * coeffs.b / (4.0 * n_eff * n_eff))
}

/// E_n = Gamma0 - (mu/2 hbar^2) (Gamma1/(n + Gamma2))^2.
pub fn oea_spectrum(gammas: &OeaGammas, mu: f64, hbar: f64, n: u32) -> Result<f64> {
    let denom = n as f64 + gammas.gamma2;
    if denom == 0.0 {
        return Err(Error::Domain("singular level: n + Gamma2 = 0".into()));
    }
    Ok(gammas.gamma0 - mu / (2.0 * hbar * hbar) * (gammas.gamma1 / denom).powi(2))
}
