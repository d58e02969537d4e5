//! Derivative-free least-squares fitting of model parameters to meson
//! masses, with any of the three spectrum backends. Deterministic
//! Nelder-Mead simplex: no gradients exist through the shooting solver.

use serde::{Deserialize, Serialize};

use crate::closed_form::{oea_spectrum, OeaGammas};
use crate::error::{Error, Result};
use crate::model::{spin_coupling, PotentialSpec, QuarkoniumParams};
use crate::solver::{find_eigenvalue, SolverConfig};
use crate::transform::{assemble_kratzer, q_transform};

/// Which spectrum engine supplies E(n_r, l, s).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    CornellNumerov,
    TruncatedNumerov,
    OeaClosedForm,
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cornell-numerov" => Ok(Backend::CornellNumerov),
            "truncated-numerov" => Ok(Backend::TruncatedNumerov),
            "oea-closed-form" => Ok(Backend::OeaClosedForm),
            other => Err(Error::InvalidInput(format!("unknown backend '{other}'"))),
        }
    }
}

/// One experimental data point supplied by the user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MesonObservation {
    pub label: String,
    pub n_r: u32,
    pub l: u32,
    pub s: u32,
    pub mass: f64,
    #[serde(default = "default_weight")]
    pub weight: f64,
}

fn default_weight() -> f64 {
    1.0
}

impl MesonObservation {
    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) {
            return Err(Error::InvalidInput(format!(
                "observation '{}' must have positive mass",
                self.label
            )));
        }
        if !(self.weight > 0.0) {
            return Err(Error::InvalidInput(format!(
                "observation '{}' must have positive weight",
                self.label
            )));
        }
        Ok(())
    }
}

/// Which model parameters the simplex may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FreeMask {
    pub alpha_s: bool,
    pub b: bool,
    pub sigma: bool,
    pub m_q: bool,
    pub m_qbar: bool,
}

impl FreeMask {
    pub fn count(&self) -> usize {
        [self.alpha_s, self.b, self.sigma, self.m_q, self.m_qbar]
            .iter()
            .filter(|&&f| f)
            .count()
    }

    /// Parses a comma-separated field list, e.g. "alpha_s,b".
    pub fn parse(list: &str) -> Result<Self> {
        let mut mask = FreeMask::default();
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match name {
                "alpha_s" => mask.alpha_s = true,
                "b" => mask.b = true,
                "sigma" => mask.sigma = true,
                "m_q" => mask.m_q = true,
                "m_qbar" => mask.m_qbar = true,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown free parameter '{other}'"
                    )))
                }
            }
        }
        if mask.count() == 0 {
            return Err(Error::InvalidInput("no free parameters selected".into()));
        }
        Ok(mask)
    }

    fn pack(&self, p: &QuarkoniumParams) -> Vec<f64> {
        let mut v = Vec::new();
        if self.alpha_s {
            v.push(p.alpha_s);
        }
        if self.b {
            v.push(p.b);
        }
        if self.sigma {
            v.push(p.sigma);
        }
        if self.m_q {
            v.push(p.m_q);
        }
        if self.m_qbar {
            v.push(p.m_qbar);
        }
        v
    }

    fn unpack(&self, base: &QuarkoniumParams, x: &[f64]) -> QuarkoniumParams {
        let mut p = base.clone();
        let mut it = x.iter();
        if self.alpha_s {
            p.alpha_s = *it.next().unwrap();
        }
        if self.b {
            p.b = *it.next().unwrap();
        }
        if self.sigma {
            p.sigma = *it.next().unwrap();
        }
        if self.m_q {
            p.m_q = *it.next().unwrap();
        }
        if self.m_qbar {
            p.m_qbar = *it.next().unwrap();
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    /// Expansion point for the closed-form backend.
    pub delta: f64,
    /// Relative simplex diameter that terminates the search.
    pub tolerance: f64,
    pub max_iterations: u32,
    pub solver: SolverConfig,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            delta: crate::transform::DEFAULT_DELTA,
            tolerance: 1e-6,
            max_iterations: 500,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: QuarkoniumParams,
    /// Weighted sum of squared mass residuals, GeV^2.
    pub objective: f64,
    pub iterations: u32,
    pub converged: bool,
    /// model - observed, per observation, in input order.
    pub residuals: Vec<f64>,
    /// More free parameters than observations.
    pub underdetermined: bool,
}

/// Predicted meson mass M = m_q + m_qbar + E(n_r, l, s) from the chosen
/// backend; `s` overrides the spin channel of `params`.
pub fn mass_model(
    params: &QuarkoniumParams,
    backend: Backend,
    n_r: u32,
    l: u32,
    s: u32,
    config: &FitConfig,
) -> Result<f64> {
    let mut p = params.clone();
    p.s = s;
    p.validate()?;
    let ctx = p.context();
    let energy = match backend {
        Backend::CornellNumerov => {
            find_eigenvalue(
                &PotentialSpec::CornellSpin(p.clone()),
                &ctx,
                l,
                n_r,
                &config.solver,
            )?
            .energy
        }
        Backend::TruncatedNumerov => {
            find_eigenvalue(
                &PotentialSpec::TruncatedOea(p.clone()),
                &ctx,
                l,
                n_r,
                &config.solver,
            )?
            .energy
        }
        Backend::OeaClosedForm => {
            let coeffs = q_transform(&p, l)?;
            let kratzer = assemble_kratzer(&coeffs, config.delta)?;
            let gammas = OeaGammas::from_kratzer(&kratzer, spin_coupling(&p), ctx.mu, ctx.hbar)?;
            oea_spectrum(&gammas, ctx.mu, ctx.hbar, n_r)?
        }
    };
    Ok(p.m_q + p.m_qbar + energy)
}

fn objective(
    observations: &[MesonObservation],
    base: &QuarkoniumParams,
    mask: &FreeMask,
    backend: Backend,
    config: &FitConfig,
    x: &[f64],
) -> f64 {
    let p = mask.unpack(base, x);
    if p.validate().is_err() {
        return f64::INFINITY;
    }
    let mut total = 0.0;
    for obs in observations {
        match mass_model(&p, backend, obs.n_r, obs.l, obs.s, config) {
            Ok(m) => {
                let d = m - obs.mass;
                total += obs.weight * d * d;
            }
            Err(_) => return f64::INFINITY,
        }
    }
    total
}

/// Nelder-Mead least-squares fit over the masked parameters.
///
/// Standard coefficients (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5); the initial simplex perturbs each free parameter by
/// max(5% of its value, 1e-3). Fully deterministic.
pub fn fit(
    observations: &[MesonObservation],
    initial: &QuarkoniumParams,
    mask: &FreeMask,
    backend: Backend,
    config: &FitConfig,
) -> Result<FitResult> {
    if observations.is_empty() {
        return Err(Error::InvalidInput("empty observation list".into()));
    }
    for obs in observations {
        obs.validate()?;
    }
    initial.validate()?;
    let dim = mask.count();
    if dim == 0 {
        return Err(Error::InvalidInput("no free parameters selected".into()));
    }
    let underdetermined = dim > observations.len();

    let f = |x: &[f64]| objective(observations, initial, mask, backend, config, x);

    let x0 = mask.pack(initial);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.clone(), f(&x0)));
    for i in 0..dim {
        let mut xi = x0.clone();
        xi[i] += (0.05 * xi[i].abs()).max(1e-3);
        let fi = f(&xi);
        simplex.push((xi, fi));
    }
    if simplex.iter().all(|(_, v)| !v.is_finite()) {
        return Err(Error::InfeasibleStart(
            "every initial simplex vertex evaluated to an invalid objective".into(),
        ));
    }

    let diameter = |s: &[(Vec<f64>, f64)]| -> f64 {
        let best = &s[0].0;
        let scale = best.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        s.iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(best)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max)
            / scale
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iterations {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        if diameter(&simplex) < config.tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let worst = simplex[dim].clone();
        let second_worst = simplex[dim - 1].1;
        let best = simplex[0].1;
        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|(x, _)| x[j]).sum::<f64>() / dim as f64)
            .collect();

        let lerp = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = lerp(1.0);
        let fr = f(&xr);
        if fr < best {
            let xe = lerp(2.0);
            let fe = f(&xe);
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < second_worst {
            simplex[dim] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let x = lerp(0.5); // outside contraction
                let v = f(&x);
                (x, v)
            } else {
                let x = lerp(-0.5); // inside contraction
                let v = f(&x);
                (x, v)
            };
            if fc < worst.1.min(fr) {
                simplex[dim] = (xc, fc);
            } else {
                // shrink toward the best vertex
                let best_x = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    for (xj, bj) in vertex.0.iter_mut().zip(&best_x) {
                        *xj = bj + 0.5 * (*xj - bj);
                    }
                    vertex.1 = f(&vertex.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());

    let fitted = mask.unpack(initial, &simplex[0].0);
    let mut residuals = Vec::with_capacity(observations.len());
    for obs in observations {
        let m = mass_model(&fitted, backend, obs.n_r, obs.l, obs.s, config)?;
        residuals.push(m - obs.mass);
    }
    Ok(FitResult {
        params: fitted,
        objective: simplex[0].1,
        iterations,
        converged,
        residuals,
        underdetermined,
    })
}
