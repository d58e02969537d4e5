//! Bound-state eigensolver for the reduced radial equation: fourth-order
//! Numerov propagation on a uniform mesh, node-counting bisection on the
//! energy, and an adaptive outer boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    boundedness_check, evaluate_potential, tail_behaviour, EvalContext, PotentialSpec,
    TailBehaviour,
};

/// Amplitude threshold that triggers renormalization of the propagated pair.
const RESCALE_LIMIT: f64 = 1e150;

/// How the outer integration boundary is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RMaxPolicy {
    Fixed(f64),
    /// Outer classical turning point times `buffer` for confining tails;
    /// max(50/kappa, 20) for Coulomb-like tails.
    Adaptive {
        buffer: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub r_min: f64,
    pub r_max_policy: RMaxPolicy,
    pub grid_points: usize,
    /// Relative width of the final energy bracket.
    pub energy_tolerance: f64,
    pub max_bisections: usize,
    /// Explicit (E_lo, E_hi) search bracket; automatic when absent.
    pub energy_bracket: Option<(f64, f64)>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            r_min: 1e-6,
            r_max_policy: RMaxPolicy::Adaptive { buffer: 2.5 },
            grid_points: 20_000,
            energy_tolerance: 1e-10,
            max_bisections: 200,
            energy_bracket: None,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) {
            return Err(Error::InvalidInput(format!(
                "r_min must be > 0, got {}",
                self.r_min
            )));
        }
        if self.grid_points < 100 {
            return Err(Error::InvalidInput(format!(
                "need >= 100 grid points, got {}",
                self.grid_points
            )));
        }
        if !(self.energy_tolerance > 0.0) {
            return Err(Error::InvalidInput("energy tolerance must be > 0".into()));
        }
        if let RMaxPolicy::Fixed(r_max) = self.r_max_policy {
            if !(r_max > self.r_min) {
                return Err(Error::InvalidInput(format!(
                    "fixed r_max = {r_max} must exceed r_min = {}",
                    self.r_min
                )));
            }
        }
        if let Some((lo, hi)) = self.energy_bracket {
            if !(hi > lo) {
                return Err(Error::InvalidInput(format!(
                    "degenerate energy bracket [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

/// One converged bound state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigensolution {
    pub n_r: u32,
    pub l: u32,
    pub s: u32,
    pub energy: f64,
    pub nodes_observed: u32,
    pub converged: bool,
    /// Sample radii of the reduced radial function.
    pub r: Vec<f64>,
    /// Normalized reduced radial function on the grid.
    pub psi: Vec<f64>,
    /// |1 - integral of psi^2 dr| after normalization.
    pub norm_residual: f64,
}

/// One spectrum channel; `energy` is absent when the channel failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub n_r: u32,
    pub l: u32,
    pub s: u32,
    pub energy: f64,
    pub nodes: u32,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelFailure {
    pub n_r: u32,
    pub l: u32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub entries: Vec<SpectrumEntry>,
    pub failures: Vec<ChannelFailure>,
}

/// Outcome of a single outward Numerov shot at a trial energy.
#[derive(Debug, Clone)]
pub struct NumerovTrial {
    pub r: Vec<f64>,
    pub psi: Vec<f64>,
    pub nodes: u32,
    pub terminal: f64,
}

struct Grid {
    r_min: f64,
    dr: f64,
    n: usize,
    /// 2mu/hbar^2 * V_eff at every grid point.
    w: Vec<f64>,
    kinetic_factor: f64,
}

impl Grid {
    fn build(
        spec: &PotentialSpec,
        ctx: &EvalContext,
        l: u32,
        r_min: f64,
        r_max: f64,
        n: usize,
    ) -> Result<Self> {
        let dr = (r_max - r_min) / (n - 1) as f64;
        let kf = ctx.kinetic_factor();
        let big_l = (l * (l + 1)) as f64;
        let centrifugal_scale = ctx.hbar * ctx.hbar / (2.0 * ctx.mu);
        let mut w = Vec::with_capacity(n);
        for i in 0..n {
            let r = r_min + dr * i as f64;
            let v = evaluate_potential(spec, ctx, r)? + centrifugal_scale * big_l / (r * r);
            w.push(kf * v);
        }
        Ok(Self {
            r_min,
            dr,
            n,
            w,
            kinetic_factor: kf,
        })
    }

    fn r_at(&self, i: usize) -> f64 {
        self.r_min + self.dr * i as f64
    }

    fn v_eff_min(&self) -> f64 {
        self.w.iter().cloned().fold(f64::INFINITY, f64::min) / self.kinetic_factor
    }
}

struct Shot {
    nodes: u32,
    terminal: f64,
    psi: Option<Vec<f64>>,
}

/// Numerov propagation of psi'' = f psi outward from the r^(l+1) start.
fn shoot(grid: &Grid, l: u32, energy: f64, keep: bool) -> Shot {
    let n = grid.n;
    let h2_12 = grid.dr * grid.dr / 12.0;
    let ke = grid.kinetic_factor * energy;
    let t = |i: usize| h2_12 * (grid.w[i] - ke);

    // Skip the first points where the mesh cannot resolve the centrifugal
    // singularity; the solution there follows the r^(l+1) asymptote anyway.
    let mut i0 = 0;
    while i0 + 2 < n && (t(i0) > 0.5 || t(i0 + 1) > 0.5) && grid.r_at(i0) < 0.1 {
        i0 += 1;
    }

    let power = (l + 1) as i32;
    let r0 = grid.r_at(i0);
    let r1 = grid.r_at(i0 + 1);
    let mut ym = (r0 / r1).powi(power);
    let mut y = 1.0f64;

    let mut stored = if keep {
        let mut v = vec![0.0; n];
        // analytic start below the propagation window
        for (i, slot) in v.iter_mut().enumerate().take(i0 + 1) {
            *slot = (grid.r_at(i) / r1).powi(power);
        }
        v[i0 + 1] = y;
        Some(v)
    } else {
        None
    };

    let mut nodes = 0u32;
    let mut tm = t(i0);
    let mut ti = t(i0 + 1);
    for i in (i0 + 1)..(n - 1) {
        let tp = t(i + 1);
        let yp = ((2.0 + 10.0 * ti) * y - (1.0 - tm) * ym) / (1.0 - tp);
        if y * yp < 0.0 {
            nodes += 1;
        }
        ym = y;
        y = yp;
        tm = ti;
        ti = tp;
        if y.abs() > RESCALE_LIMIT {
            let scale = y.abs();
            ym /= scale;
            y /= scale;
            if let Some(v) = stored.as_mut() {
                for slot in v.iter_mut().take(i + 1) {
                    *slot /= scale;
                }
            }
        }
        if let Some(v) = stored.as_mut() {
            v[i + 1] = y;
        }
    }

    Shot {
        nodes,
        terminal: y,
        psi: stored,
    }
}

/// Whether a trial at `shot` lies above the eigenvalue with `n_r` nodes.
fn is_above(shot: &Shot, n_r: u32) -> bool {
    if shot.nodes != n_r {
        return shot.nodes > n_r;
    }
    // Same node count: the below-side solution ends with sign (-1)^n_r.
    let below_sign = if n_r.is_multiple_of(2) { 1.0 } else { -1.0 };
    shot.terminal * below_sign < 0.0
}

fn resolve_r_max(
    spec: &PotentialSpec,
    ctx: &EvalContext,
    l: u32,
    config: &SolverConfig,
    energy: Option<f64>,
) -> Result<f64> {
    let tail = tail_behaviour(spec)?;
    if let RMaxPolicy::Fixed(r_max) = config.r_max_policy {
        return Ok(match tail {
            TailBehaviour::Finite(edge) => r_max.min(edge),
            _ => r_max,
        });
    }
    let buffer = match config.r_max_policy {
        RMaxPolicy::Adaptive { buffer } => buffer,
        RMaxPolicy::Fixed(_) => unreachable!(),
    };
    match tail {
        TailBehaviour::Finite(edge) => Ok(edge),
        TailBehaviour::CoulombLike => match energy {
            Some(e) if e < 0.0 => {
                let kappa = (2.0 * ctx.mu * e.abs()).sqrt() / ctx.hbar;
                Ok((50.0 / kappa).max(20.0))
            }
            _ => Ok(20.0),
        },
        TailBehaviour::Confining => {
            let e = match energy {
                Some(e) => e,
                None => return Ok(30.0),
            };
            let big_l = (l * (l + 1)) as f64;
            let cs = ctx.hbar * ctx.hbar / (2.0 * ctx.mu);
            let v_eff = |r: f64| -> Result<f64> {
                Ok(evaluate_potential(spec, ctx, r)? + cs * big_l / (r * r))
            };
            // outer turning point by expansion then bisection
            let mut hi = 1.0;
            let mut guard = 0;
            while v_eff(hi)? < e {
                hi *= 1.3;
                guard += 1;
                if guard > 200 {
                    return Err(Error::Convergence(
                        "could not bracket the outer turning point".into(),
                    ));
                }
            }
            let mut lo = hi / 1.3;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if v_eff(mid)? < e {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok((buffer * hi).max(10.0))
        }
    }
}

/// Propagates a single trial energy and returns the sampled solution.
/// The outer boundary follows the config policy evaluated at this energy.
pub fn integrate_numerov(
    spec: &PotentialSpec,
    ctx: &EvalContext,
    l: u32,
    energy: f64,
    config: &SolverConfig,
) -> Result<NumerovTrial> {
    config.validate()?;
    let r_max = resolve_r_max(spec, ctx, l, config, Some(energy))?;
    let grid = Grid::build(spec, ctx, l, config.r_min, r_max, config.grid_points)?;
    let shot = shoot(&grid, l, energy, true);
    let r: Vec<f64> = (0..grid.n).map(|i| grid.r_at(i)).collect();
    Ok(NumerovTrial {
        r,
        psi: shot.psi.unwrap(),
        nodes: shot.nodes,
        terminal: shot.terminal,
    })
}

struct BisectionOutcome {
    energy: f64,
    e_lo: f64,
    converged: bool,
}

fn bisect_on_grid(
    grid: &Grid,
    l: u32,
    n_r: u32,
    config: &SolverConfig,
) -> Result<BisectionOutcome> {
    let (mut lo, mut hi) = match config.energy_bracket {
        Some(b) => b,
        None => {
            // Below the stability floor the step factor h^2 f / 12 crosses 1
            // and the recurrence alternates sign spuriously, so the automatic
            // lower edge never goes deeper than that.
            let stability_floor = grid.w[grid.n - 1] / grid.kinetic_factor
                - 4.8 / (grid.dr * grid.dr * grid.kinetic_factor);
            let lo = grid.v_eff_min().max(stability_floor);
            let mut hi = 1.0f64.max(lo + 1.0);
            let mut guard = 0;
            while !is_above(&shoot(grid, l, hi, false), n_r) {
                hi = hi * 2.0 + 1.0;
                guard += 1;
                if guard > 80 {
                    return Err(Error::NoBoundState(format!(
                        "no state with {n_r} nodes found below E = {hi:.3e}"
                    )));
                }
            }
            (lo, hi)
        }
    };

    if is_above(&shoot(grid, l, lo, false), n_r) {
        return Err(Error::NoBoundState(format!(
            "bracket lower edge E = {lo:.6e} already lies above the requested state"
        )));
    }

    let mut converged = false;
    for _ in 0..config.max_bisections {
        let scale = lo.abs().max(hi.abs()).max(1e-300);
        if hi - lo <= config.energy_tolerance * scale {
            converged = true;
            break;
        }
        let mid = 0.5 * (lo + hi);
        if is_above(&shoot(grid, l, mid, false), n_r) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!(
            "energy bracket still [{lo:.6e}, {hi:.6e}] after {} bisections",
            config.max_bisections
        )));
    }
    Ok(BisectionOutcome {
        energy: 0.5 * (lo + hi),
        e_lo: lo,
        converged,
    })
}

/// Finds the bound state with exactly `n_r` radial nodes in channel `l`.
pub fn find_eigenvalue(
    spec: &PotentialSpec,
    ctx: &EvalContext,
    l: u32,
    n_r: u32,
    config: &SolverConfig,
) -> Result<Eigensolution> {
    config.validate()?;
    if matches!(
        spec,
        PotentialSpec::CornellSpin(_) | PotentialSpec::TruncatedOea(_)
    ) {
        let report = boundedness_check(spec)?;
        if !report.bounded_below {
            return Err(Error::NoBoundState(report.reason));
        }
    }
    let tail = tail_behaviour(spec)?;

    let mut r_max = resolve_r_max(spec, ctx, l, config, None)?;
    let mut outcome = None;
    let mut grid = None;
    for _ in 0..5 {
        let g = Grid::build(spec, ctx, l, config.r_min, r_max, config.grid_points)?;
        let out = bisect_on_grid(&g, l, n_r, config)?;
        let e = out.energy;
        outcome = Some(out);
        grid = Some(g);
        if matches!(config.r_max_policy, RMaxPolicy::Fixed(_))
            || matches!(tail, TailBehaviour::Finite(_))
        {
            break;
        }
        if matches!(tail, TailBehaviour::CoulombLike) && e >= 0.0 {
            // box artifact: enlarge and retry, reject below if it persists
            r_max *= 2.0;
            continue;
        }
        let desired = resolve_r_max(spec, ctx, l, config, Some(e))?;
        if (desired - r_max).abs() / r_max > 0.2 {
            r_max = desired;
        } else {
            break;
        }
    }
    let outcome = outcome.unwrap();
    let grid = grid.unwrap();

    if matches!(tail, TailBehaviour::CoulombLike) && outcome.energy >= 0.0 {
        return Err(Error::NoBoundState(format!(
            "channel (n_r={n_r}, l={l}) is not bound: E = {:.6e} >= 0",
            outcome.energy
        )));
    }

    // Sample the wavefunction just below the eigenvalue, where the node
    // count is guaranteed.
    let final_shot = shoot(&grid, l, outcome.e_lo, true);
    let mut psi = final_shot.psi.unwrap();
    let nodes_observed = final_shot.nodes;

    // trapezoid normalization
    let dr = grid.dr;
    let trapezoid = |psi: &[f64]| {
        let sum: f64 = psi.iter().map(|v| v * v).sum();
        dr * (sum - 0.5 * (psi[0] * psi[0] + psi[psi.len() - 1] * psi[psi.len() - 1]))
    };
    let norm = trapezoid(&psi).sqrt();
    if norm > 0.0 {
        for v in &mut psi {
            *v /= norm;
        }
    }
    let check = trapezoid(&psi);

    let r: Vec<f64> = (0..grid.n).map(|i| grid.r_at(i)).collect();
    Ok(Eigensolution {
        n_r,
        l,
        s: spec.spin().unwrap_or(0),
        energy: outcome.energy,
        nodes_observed,
        converged: outcome.converged && nodes_observed == n_r,
        r,
        psi,
        norm_residual: (1.0 - check).abs(),
    })
}

/// Solves every channel with n_r <= n_r_max and l <= l_max; failures are
/// recorded per channel, never fatal. Entries come back sorted by (l, n_r).
pub fn solve_spectrum(
    spec: &PotentialSpec,
    ctx: &EvalContext,
    l_max: u32,
    n_r_max: u32,
    config: &SolverConfig,
) -> SpectrumResult {
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    for l in 0..=l_max {
        for n_r in 0..=n_r_max {
            match find_eigenvalue(spec, ctx, l, n_r, config) {
                Ok(sol) => entries.push(SpectrumEntry {
                    n_r,
                    l,
                    s: sol.s,
                    energy: sol.energy,
                    nodes: sol.nodes_observed,
                    converged: sol.converged,
                }),
                Err(e) => failures.push(ChannelFailure {
                    n_r,
                    l,
                    message: e.to_string(),
                }),
            }
        }
    }
    entries.sort_by_key(|e| (e.l, e.n_r));
    SpectrumResult { entries, failures }
}

/// CSV header of the spectrum export.
pub const SPECTRUM_CSV_HEADER: &str = "n_r,l,s,E,nodes,converged";

pub fn spectrum_csv(entries: &[SpectrumEntry]) -> String {
    use crate::format::sig12;
    let mut out = String::from(SPECTRUM_CSV_HEADER);
    out.push('\n');
    for e in entries {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            e.n_r,
            e.l,
            e.s,
            sig12(e.energy),
            e.nodes,
            e.converged
        ));
    }
    out
}

pub fn wavefunction_csv(sol: &Eigensolution) -> String {
    use crate::format::sig12;
    let mut out = String::from("r,psi\n");
    for (r, psi) in sol.r.iter().zip(&sol.psi) {
        out.push_str(&format!("{},{}\n", sig12(*r), sig12(*psi)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::coulomb_levels;
    use crate::model::charmonium_singlet;

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn hydrogen_ground_state() {
        let spec = PotentialSpec::Coulomb { k: 1.0 };
        let ctx = EvalContext::new(1.0, 1.0);
        let sol = find_eigenvalue(&spec, &ctx, 0, 0, &SolverConfig::default()).unwrap();
        assert!(sol.converged);
        assert!(rel_err(sol.energy, -0.5) < 1e-6, "E = {}", sol.energy);
        assert_eq!(sol.nodes_observed, 0);
        assert!(sol.norm_residual < 1e-6);
    }

    #[test]
    fn hydrogen_terminal_value_shrinks_with_refinement() {
        let spec = PotentialSpec::Coulomb { k: 1.0 };
        let ctx = EvalContext::new(1.0, 1.0);
        let mut config = SolverConfig {
            r_max_policy: RMaxPolicy::Fixed(15.0),
            grid_points: 4000,
            ..Default::default()
        };
        let coarse = integrate_numerov(&spec, &ctx, 0, -0.5, &config).unwrap();
        config.grid_points = 8000;
        let fine = integrate_numerov(&spec, &ctx, 0, -0.5, &config).unwrap();
        let amp = |t: &NumerovTrial| t.psi.iter().cloned().fold(0.0f64, |m, v| m.max(v.abs()));
        let coarse_ratio = coarse.terminal.abs() / amp(&coarse);
        let fine_ratio = fine.terminal.abs() / amp(&fine);
        assert!(coarse_ratio < 1e-2, "coarse ratio {coarse_ratio}");
        assert!(
            fine_ratio < coarse_ratio / 3.0,
            "{fine_ratio} vs {coarse_ratio}"
        );
    }

    #[test]
    fn oscillator_terminal_sign_brackets_eigenvalue() {
        let spec = PotentialSpec::Oscillator { omega: 1.0 };
        let ctx = EvalContext::new(1.0, 1.0);
        let config = SolverConfig {
            r_max_policy: RMaxPolicy::Fixed(8.0),
            grid_points: 4000,
            ..Default::default()
        };
        let below = integrate_numerov(&spec, &ctx, 0, 1.4, &config).unwrap();
        let above = integrate_numerov(&spec, &ctx, 0, 1.6, &config).unwrap();
        assert_eq!(below.nodes, 0);
        assert!(below.terminal > 0.0);
        assert!(above.terminal < 0.0, "sign must flip across E = 1.5");
    }

    #[test]
    fn cornell_terminal_sign_stable_under_grid_doubling() {
        let p = charmonium_singlet();
        let ctx = p.context();
        let spec = PotentialSpec::CornellSpin(p);
        let mut config = SolverConfig {
            r_max_policy: RMaxPolicy::Fixed(25.0),
            grid_points: 10_000,
            ..Default::default()
        };
        let coarse = integrate_numerov(&spec, &ctx, 0, 0.3, &config).unwrap();
        config.grid_points = 20_000;
        let fine = integrate_numerov(&spec, &ctx, 0, 0.3, &config).unwrap();
        assert!(coarse.terminal.is_finite() && fine.terminal.is_finite());
        assert_eq!(coarse.terminal.signum(), fine.terminal.signum());
        assert_eq!(coarse.nodes, fine.nodes);
    }

    #[test]
    fn oscillator_excited_level() {
        let spec = PotentialSpec::Oscillator { omega: 1.0 };
        let ctx = EvalContext::new(1.0, 1.0);
        let sol = find_eigenvalue(&spec, &ctx, 2, 1, &SolverConfig::default()).unwrap();
        assert!(rel_err(sol.energy, 5.5) < 1e-6, "E = {}", sol.energy);
        assert_eq!(sol.nodes_observed, 1);
    }

    #[test]
    fn coulomb_degeneracy_pattern() {
        let spec = PotentialSpec::Coulomb { k: 1.0 };
        let ctx = EvalContext::new(1.0, 1.0);
        let result = solve_spectrum(&spec, &ctx, 1, 1, &SolverConfig::default());
        assert!(result.failures.is_empty(), "{:?}", result.failures);
        let expect = |n_r: u32, l: u32| coulomb_levels(1.0, 1.0, 1.0, n_r, l).unwrap();
        for e in &result.entries {
            assert!(
                rel_err(e.energy, expect(e.n_r, e.l)) < 1e-6,
                "({}, {}) -> {}",
                e.n_r,
                e.l,
                e.energy
            );
        }
        // sorted by (l, n_r)
        let keys: Vec<(u32, u32)> = result.entries.iter().map(|e| (e.l, e.n_r)).collect();
        assert_eq!(keys, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn coulomb_energy_scales_linearly_with_mass() {
        let spec = PotentialSpec::Coulomb { k: 1.0 };
        let e1 = find_eigenvalue(
            &spec,
            &EvalContext::new(1.0, 1.0),
            0,
            0,
            &SolverConfig::default(),
        )
        .unwrap()
        .energy;
        let e2 = find_eigenvalue(
            &spec,
            &EvalContext::new(2.0, 1.0),
            0,
            0,
            &SolverConfig::default(),
        )
        .unwrap()
        .energy;
        assert!(rel_err(e2, 2.0 * e1) < 1e-6, "E(2mu) = {e2}, E(mu) = {e1}");
    }

    #[test]
    fn triplet_truncation_has_no_bound_states() {
        let mut p = charmonium_singlet();
        p.s = 1;
        let ctx = p.context();
        let spec = PotentialSpec::TruncatedOea(p);
        match find_eigenvalue(&spec, &ctx, 0, 0, &SolverConfig::default()) {
            Err(Error::NoBoundState(msg)) => {
                assert!(
                    msg.contains("unbound") || msg.contains("-infinity"),
                    "{msg}"
                );
            }
            other => panic!("expected no-bound-state error, got {other:?}"),
        }
    }

    #[test]
    fn cornell_spectrum_monotone_and_node_theorem() {
        let p = charmonium_singlet();
        let ctx = p.context();
        let spec = PotentialSpec::CornellSpin(p);
        let result = solve_spectrum(&spec, &ctx, 1, 3, &SolverConfig::default());
        assert!(result.failures.is_empty(), "{:?}", result.failures);
        for l in 0..=1 {
            let energies: Vec<f64> = result
                .entries
                .iter()
                .filter(|e| e.l == l)
                .map(|e| e.energy)
                .collect();
            assert!(
                energies.windows(2).all(|w| w[1] > w[0]),
                "l = {l}: {energies:?}"
            );
        }
        for e in &result.entries {
            assert_eq!(
                e.nodes, e.n_r,
                "node theorem violated at ({}, {})",
                e.n_r, e.l
            );
            assert!(e.converged);
        }
    }

    #[test]
    fn eigenvalue_exceeds_potential_infimum() {
        let p = charmonium_singlet();
        let ctx = p.context();
        let spec = PotentialSpec::TruncatedOea(p.clone());
        let sol = find_eigenvalue(&spec, &ctx, 0, 0, &SolverConfig::default()).unwrap();
        // infimum over a wide range
        let mut v_min = f64::INFINITY;
        for i in 1..20_000 {
            let r = 1e-3 * i as f64;
            v_min = v_min.min(evaluate_potential(&spec, &ctx, r).unwrap());
        }
        assert!(sol.energy > v_min);
    }

    #[test]
    fn fourth_order_grid_convergence() {
        let spec = PotentialSpec::Oscillator { omega: 1.0 };
        let ctx = EvalContext::new(1.0, 1.0);
        let energy_at = |n: usize| {
            let config = SolverConfig {
                r_max_policy: RMaxPolicy::Fixed(10.0),
                grid_points: n,
                energy_tolerance: 1e-13,
                max_bisections: 300,
                ..Default::default()
            };
            find_eigenvalue(&spec, &ctx, 0, 1, &config).unwrap().energy
        };
        let (e1, e2, e3) = (energy_at(250), energy_at(500), energy_at(1000));
        let first = (e1 - e2).abs();
        let second = (e2 - e3).abs();
        assert!(
            first >= 8.0 * second,
            "expected >= 8x reduction per halving: {first:.3e} vs {second:.3e}"
        );
    }

    #[test]
    fn boundary_values_are_small() {
        let p = charmonium_singlet();
        let ctx = p.context();
        let spec = PotentialSpec::CornellSpin(p);
        let sol = find_eigenvalue(&spec, &ctx, 0, 2, &SolverConfig::default()).unwrap();
        let amp = sol.psi.iter().cloned().fold(0.0f64, |m, v| m.max(v.abs()));
        // psi(r_min) scales with r_min; the terminal value carries the
        // residual growing-solution admixture at the bracket edge.
        assert!(sol.psi[0].abs() / amp < 1e-4);
        assert!(sol.psi.last().unwrap().abs() / amp < 1e-3);
    }

    #[test]
    fn degenerate_bracket_rejected() {
        let config = SolverConfig {
            energy_bracket: Some((1.0, 1.0)),
            ..Default::default()
        };
        assert!(matches!(config.validate(), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn spectrum_csv_layout() {
        let entries = vec![SpectrumEntry {
            n_r: 0,
            l: 1,
            s: 0,
            energy: -0.125,
            nodes: 0,
            converged: true,
        }];
        let csv = spectrum_csv(&entries);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "n_r,l,s,E,nodes,converged");
        assert_eq!(lines.next().unwrap(), "0,1,0,-1.25000000000e-1,0,true");
        assert_eq!(spectrum_csv(&[]), "n_r,l,s,E,nodes,converged\n");
    }
}
