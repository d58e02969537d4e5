//! Physical parameters and radial potential-energy models.
//!
//! Everything here works in natural units: energies in GeV, lengths in
//! GeV^-1, with `hbar` kept as an explicit field so dimensional tests can
//! vary it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn default_hbar() -> f64 {
    1.0
}

/// Inputs of the quark-antiquark model: coupling, string tension, smearing
/// width, quark masses and the spin channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuarkoniumParams {
    /// Strong coupling (dimensionless).
    pub alpha_s: f64,
    /// String tension, GeV^2.
    pub b: f64,
    /// Smearing parameter of the spin-spin contact term, GeV.
    pub sigma: f64,
    /// Quark mass, GeV.
    pub m_q: f64,
    /// Antiquark mass, GeV.
    pub m_qbar: f64,
    /// Total spin, 0 (singlet) or 1 (triplet).
    pub s: u32,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
}

impl QuarkoniumParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_s > 0.0) {
            return Err(Error::Domain(format!(
                "alpha_s must be > 0, got {}",
                self.alpha_s
            )));
        }
        if !(self.sigma >= 0.0) {
            return Err(Error::Domain(format!(
                "sigma must be >= 0, got {}",
                self.sigma
            )));
        }
        if !(self.m_q > 0.0) || !(self.m_qbar > 0.0) {
            return Err(Error::Domain(format!(
                "quark masses must be > 0, got m_q={}, m_qbar={}",
                self.m_q, self.m_qbar
            )));
        }
        if !(self.hbar > 0.0) {
            return Err(Error::Domain(format!(
                "hbar must be > 0, got {}",
                self.hbar
            )));
        }
        if self.s > 1 {
            return Err(Error::Domain(format!(
                "spin must be 0 or 1, got {}",
                self.s
            )));
        }
        if !self.b.is_finite() {
            return Err(Error::Domain("string tension must be finite".into()));
        }
        Ok(())
    }

    /// Reduced mass of the quark-antiquark pair.
    pub fn reduced_mass(&self) -> f64 {
        self.m_q * self.m_qbar / (self.m_q + self.m_qbar)
    }

    /// Strength of the smeared spin-spin contact term.
    pub fn spin_coupling(&self) -> f64 {
        spin_coupling(self)
    }

    pub fn context(&self) -> EvalContext {
        EvalContext {
            mu: self.reduced_mass(),
            hbar: self.hbar,
        }
    }
}

/// mu = m_q * m_qbar / (m_q + m_qbar).
pub fn reduced_mass(m_q: f64, m_qbar: f64) -> Result<f64> {
    if !(m_q > 0.0) || !(m_qbar > 0.0) {
        return Err(Error::Domain(format!(
            "masses must be > 0, got {m_q}, {m_qbar}"
        )));
    }
    Ok(m_q * m_qbar / (m_q + m_qbar))
}

/// C_s = 16 alpha_s pi (sigma/sqrt(pi))^3 (s(s+1) - 3/2) / (9 m_q m_qbar).
///
/// Negative for the singlet channel, positive for the triplet (when
/// sigma > 0); vanishes with the smearing width.
pub fn spin_coupling(params: &QuarkoniumParams) -> f64 {
    let spin_factor = (params.s * (params.s + 1)) as f64 - 1.5;
    let smeared = params.sigma / std::f64::consts::PI.sqrt();
    16.0 * params.alpha_s * std::f64::consts::PI * smeared.powi(3) * spin_factor
        / (9.0 * params.m_q * params.m_qbar)
}

/// Mass scale used when a potential variant needs the reduced mass or hbar
/// from outside (oscillator, scaled Kratzer form).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalContext {
    pub mu: f64,
    pub hbar: f64,
}

impl EvalContext {
    pub fn new(mu: f64, hbar: f64) -> Self {
        Self { mu, hbar }
    }

    /// 2 mu / hbar^2, the factor that turns an energy into the
    /// Schrodinger-equation coefficient.
    pub fn kinetic_factor(&self) -> f64 {
        2.0 * self.mu / (self.hbar * self.hbar)
    }
}

/// A radial potential model, evaluable for all r > 0.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    /// Coulomb + linear confinement + Gaussian-smeared spin-spin term.
    CornellSpin(QuarkoniumParams),
    /// The Gaussian replaced by its second-order Taylor truncation:
    /// C_s - 4 alpha_s/(3r) + b r - C_s sigma^2 r^2.
    TruncatedOea(QuarkoniumParams),
    /// (hbar^2/2mu)(a/r^2 - b/r); `a` dimensionless, `b` an inverse length.
    KratzerEffective { a: f64, b: f64 },
    /// -k/r.
    Coulomb { k: f64 },
    /// mu omega^2 r^2 / 2, with mu supplied by the evaluation context.
    Oscillator { omega: f64 },
    /// Monotone-cubic interpolation of sampled values.
    Tabulated(TabulatedPotential),
}

impl PotentialSpec {
    /// Spin channel carried by the model, when it has one.
    pub fn spin(&self) -> Option<u32> {
        match self {
            PotentialSpec::CornellSpin(p) | PotentialSpec::TruncatedOea(p) => Some(p.s),
            _ => None,
        }
    }
}

/// Pointwise evaluation of the selected potential variant at r.
pub fn evaluate_potential(spec: &PotentialSpec, ctx: &EvalContext, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("potential requires r > 0, got {r}")));
    }
    match spec {
        PotentialSpec::CornellSpin(p) => {
            let cs = spin_coupling(p);
            Ok(-4.0 * p.alpha_s / (3.0 * r) + p.b * r + cs * (-p.sigma * p.sigma * r * r).exp())
        }
        PotentialSpec::TruncatedOea(p) => {
            let cs = spin_coupling(p);
            Ok(cs - 4.0 * p.alpha_s / (3.0 * r) + p.b * r - cs * p.sigma * p.sigma * r * r)
        }
        PotentialSpec::KratzerEffective { a, b } => {
            let scale = ctx.hbar * ctx.hbar / (2.0 * ctx.mu);
            Ok(scale * (a / (r * r) - b / r))
        }
        PotentialSpec::Coulomb { k } => Ok(-k / r),
        PotentialSpec::Oscillator { omega } => Ok(0.5 * ctx.mu * omega * omega * r * r),
        PotentialSpec::Tabulated(tab) => tab.evaluate(r),
    }
}

/// Large-r behaviour of a potential variant, used by the solver to pick a
/// matching outer boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailBehaviour {
    /// V -> +inf as r -> inf; infinitely many bound states.
    Confining,
    /// V -> const as r -> inf; evanescent tail for E below the limit.
    CoulombLike,
    /// Defined only on a finite sample range.
    Finite(f64),
}

pub fn tail_behaviour(spec: &PotentialSpec) -> Result<TailBehaviour> {
    match spec {
        PotentialSpec::CornellSpin(p) => {
            if p.b > 0.0 {
                Ok(TailBehaviour::Confining)
            } else if p.b == 0.0 {
                Ok(TailBehaviour::CoulombLike)
            } else {
                Err(Error::NoBoundState("negative string tension".into()))
            }
        }
        PotentialSpec::TruncatedOea(p) => {
            let cs = spin_coupling(p);
            let quad = -cs * p.sigma * p.sigma;
            if quad > 0.0 {
                Ok(TailBehaviour::Confining)
            } else if quad < 0.0 {
                Err(Error::NoBoundState(
                    "truncated potential is unbounded from below (C_s sigma^2 > 0)".into(),
                ))
            } else if p.b > 0.0 {
                Ok(TailBehaviour::Confining)
            } else {
                Ok(TailBehaviour::CoulombLike)
            }
        }
        PotentialSpec::KratzerEffective { .. } | PotentialSpec::Coulomb { .. } => {
            Ok(TailBehaviour::CoulombLike)
        }
        PotentialSpec::Oscillator { .. } => Ok(TailBehaviour::Confining),
        PotentialSpec::Tabulated(tab) => Ok(TailBehaviour::Finite(tab.r_max())),
    }
}

/// Outcome of the boundedness / confinement analysis of a model potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub bounded_below: bool,
    pub confining: bool,
    pub reason: String,
}

/// Decides whether a Cornell-type model supports bound states.
///
/// The truncated model is unbounded from below exactly when C_s sigma^2 > 0,
/// i.e. for the triplet channel with nonzero smearing.
pub fn boundedness_check(spec: &PotentialSpec) -> Result<FeasibilityReport> {
    match spec {
        PotentialSpec::CornellSpin(p) => {
            let confining = p.b > 0.0;
            Ok(FeasibilityReport {
                bounded_below: p.b >= 0.0,
                confining,
                reason: if confining {
                    "linear term br dominates at large r; Gaussian term is bounded".into()
                } else {
                    "no linear confinement (b <= 0)".into()
                },
            })
        }
        PotentialSpec::TruncatedOea(p) => {
            let cs = spin_coupling(p);
            let unbounded = cs * p.sigma * p.sigma > 0.0;
            Ok(FeasibilityReport {
                bounded_below: !unbounded,
                confining: !unbounded && (p.b > 0.0 || cs * p.sigma * p.sigma < 0.0),
                reason: if unbounded {
                    format!(
                        "-C_s sigma^2 r^2 with C_s = {cs:.6} > 0 drives the truncated \
                         potential to -infinity: no bound states (triplet pathology)"
                    )
                } else {
                    "quadratic truncation term confines (C_s <= 0)".into()
                },
            })
        }
        other => Err(Error::UnsupportedSpec(format!(
            "boundedness_check expects CornellSpin or TruncatedOea, got {other:?}"
        ))),
    }
}

/// Sampled potential with Fritsch-Carlson monotone-cubic interpolation.
/// Evaluation outside the sample range is a domain error.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPotential {
    r: Vec<f64>,
    v: Vec<f64>,
    slopes: Vec<f64>,
}

impl TabulatedPotential {
    pub fn new(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.len() != v.len() || r.len() < 2 {
            return Err(Error::InvalidInput(
                "tabulated potential needs >= 2 matching samples".into(),
            ));
        }
        if r.windows(2).any(|w| !(w[1] > w[0])) || !(r[0] > 0.0) {
            return Err(Error::InvalidInput(
                "tabulated radii must be positive and strictly increasing".into(),
            ));
        }
        let slopes = fritsch_carlson_slopes(&r, &v);
        Ok(Self { r, v, slopes })
    }

    pub fn r_max(&self) -> f64 {
        *self.r.last().unwrap()
    }

    pub fn r_min(&self) -> f64 {
        self.r[0]
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if r < self.r[0] || r > self.r_max() {
            return Err(Error::Domain(format!(
                "r = {r} outside tabulated range [{}, {}]",
                self.r[0],
                self.r_max()
            )));
        }
        let i = match self.r.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
            Ok(i) => return Ok(self.v[i]),
            Err(i) => i - 1,
        };
        let h = self.r[i + 1] - self.r[i];
        let t = (r - self.r[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(t);
        Ok(h00 * self.v[i]
            + h10 * h * self.slopes[i]
            + h01 * self.v[i + 1]
            + h11 * h * self.slopes[i + 1])
    }
}

fn hermite_basis(t: f64) -> (f64, f64, f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    (
        2.0 * t3 - 3.0 * t2 + 1.0,
        t3 - 2.0 * t2 + t,
        -2.0 * t3 + 3.0 * t2,
        t3 - t2,
    )
}

fn fritsch_carlson_slopes(r: &[f64], v: &[f64]) -> Vec<f64> {
    let n = r.len();
    let d: Vec<f64> = (0..n - 1)
        .map(|i| (v[i + 1] - v[i]) / (r[i + 1] - r[i]))
        .collect();
    let mut m = vec![0.0; n];
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for i in 1..n - 1 {
        m[i] = if d[i - 1] * d[i] <= 0.0 {
            0.0
        } else {
            0.5 * (d[i - 1] + d[i])
        };
    }
    // Clamp tangents so the interpolant stays monotone on each interval.
    for i in 0..n - 1 {
        if d[i] == 0.0 {
            m[i] = 0.0;
            m[i + 1] = 0.0;
        } else {
            let a = m[i] / d[i];
            let b = m[i + 1] / d[i];
            let s = a * a + b * b;
            if s > 9.0 {
                let tau = 3.0 / s.sqrt();
                m[i] = tau * a * d[i];
                m[i + 1] = tau * b * d[i];
            }
        }
    }
    m
}

#[cfg(test)]
pub(crate) use tests::charmonium_singlet;
