//! Shooting eigensolver for the radial equation
//! `U'' = [2m(V − E) + l(l+1)/r²] U` (ħ = 1) on a uniform grid.
//!
//! Energies are first bracketed by Sturm node counting of the outward
//! solution, then refined by matching outward and inward log-derivatives at
//! the outer classical turning point. Every solve is repeated on a grid with
//! twice the steps; the two must agree to within `10·tol`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::potentials::{evaluate_closed_form, ScreenedPotentialSpec};
use crate::rational::{self, int, Rational};
use crate::state::QuantumState;

/// Default number of intervals for [`RadialGrid::for_state`].
pub const DEFAULT_STEPS: usize = 60_000;

const MAX_ITERATIONS: usize = 400;
const RESCALE: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    steps: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, steps: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if steps < 1000 {
            return Err(Error::InvalidGrid(format!("need at least 1000 steps, got {steps}")));
        }
        Ok(Self { r_min, r_max, steps })
    }

    /// `[1e-6, 50]·N²/(m g)` with [`DEFAULT_STEPS`] intervals.
    pub fn for_state(g: f64, m: f64, state: QuantumState) -> Result<Self> {
        let n = f64::from(state.multiplicity());
        let scale = n * n / (m * g);
        Self::new(1e-6 * scale, 50.0 * scale, DEFAULT_STEPS)
    }

    pub fn with_steps(&self, steps: usize) -> Result<Self> {
        Self::new(self.r_min, self.r_max, steps)
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / self.steps as f64
    }

    fn point(&self, j: usize) -> f64 {
        self.r_min + j as f64 * self.spacing()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResult {
    pub energy: f64,
    pub nodes_found: u32,
    pub iterations: usize,
    /// Log-derivative mismatch at the matching point.
    pub residual: f64,
    /// Energy on the half-step grid minus the reported energy.
    pub richardson_shift: f64,
}

/// Eigenvalue of the requested state for a potential with a closed form.
pub fn solve(
    spec: &ScreenedPotentialSpec,
    mass: f64,
    state: QuantumState,
    grid: RadialGrid,
    tol: f64,
) -> Result<EigenResult> {
    if !spec.has_closed_form() {
        return Err(Error::NoClosedForm(spec.kind().name().to_string()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidGrid(format!("tolerance must be positive, got {tol}")));
    }
    if !(mass > 0.0) {
        return Err(Error::NonPositiveMass(mass.to_string()));
    }
    let coarse = Shooter::new(spec, mass, state, grid)?.eigenvalue(tol)?;
    let fine = Shooter::new(spec, mass, state, grid.with_steps(2 * grid.steps)?)?.eigenvalue(tol)?;
    let shift = (coarse.energy - fine.energy).abs();
    let limit = 10.0 * tol;
    if shift > limit {
        return Err(Error::GridTooCoarse { shift, limit });
    }
    Ok(EigenResult {
        richardson_shift: coarse.energy - fine.energy,
        iterations: coarse.iterations + fine.iterations,
        ..fine
    })
}

struct Shooter {
    mass: f64,
    state: QuantumState,
    h: f64,
    r: Vec<f64>,
    /// 2mV(r) + l(l+1)/r²
    base: Vec<f64>,
    v0: f64,
}

impl Shooter {
    fn new(
        spec: &ScreenedPotentialSpec,
        mass: f64,
        state: QuantumState,
        grid: RadialGrid,
    ) -> Result<Self> {
        let cent = (state.l() * (state.l() + 1)) as f64;
        let r: Vec<f64> = (0..=grid.steps).map(|j| grid.point(j)).collect();
        let base = r
            .iter()
            .map(|&x| Ok(2.0 * mass * evaluate_closed_form(spec, x)? + cent / (x * x)))
            .collect::<Result<Vec<f64>>>()?;
        let v0 = r[0] * evaluate_closed_form(spec, r[0])?;
        Ok(Self {
            mass,
            state,
            h: grid.spacing(),
            r,
            base,
            v0,
        })
    }

    fn f(&self, j: usize, energy: f64) -> f64 {
        self.base[j] - 2.0 * self.mass * energy
    }

    fn start(&self, j: usize) -> f64 {
        let l = f64::from(self.state.l());
        let r = self.r[j];
        r.powf(l + 1.0) * (1.0 + self.mass * self.v0 * r / (l + 1.0))
    }

    /// Outward Numerov values on `0..=upto` and the number of sign changes.
    fn outward(&self, energy: f64, upto: usize) -> (Vec<f64>, u32) {
        let h2 = self.h * self.h / 12.0;
        let mut u = Vec::with_capacity(upto + 1);
        u.push(self.start(0));
        u.push(self.start(1));
        let mut nodes = 0;
        let mut w_prev = (1.0 - h2 * self.f(0, energy)) * u[0];
        let mut w_cur = (1.0 - h2 * self.f(1, energy)) * u[1];
        for j in 1..upto {
            let w_next = 2.0 * w_cur - w_prev + 12.0 * h2 * self.f(j, energy) * u[j];
            let next = w_next / (1.0 - h2 * self.f(j + 1, energy));
            if next.signum() != u[j].signum() && u[j] != 0.0 {
                nodes += 1;
            }
            u.push(next);
            w_prev = w_cur;
            w_cur = w_next;
            if next.abs() > RESCALE {
                for x in u.iter_mut() {
                    *x /= RESCALE;
                }
                w_prev /= RESCALE;
                w_cur /= RESCALE;
            }
        }
        (u, nodes)
    }

    fn node_count(&self, energy: f64) -> u32 {
        let h2 = self.h * self.h / 12.0;
        let last = self.r.len() - 1;
        let mut u_cur = self.start(1);
        let mut w_prev = (1.0 - h2 * self.f(0, energy)) * self.start(0);
        let mut w_cur = (1.0 - h2 * self.f(1, energy)) * u_cur;
        let mut nodes = 0;
        for j in 1..last {
            let w_next = 2.0 * w_cur - w_prev + 12.0 * h2 * self.f(j, energy) * u_cur;
            let next = w_next / (1.0 - h2 * self.f(j + 1, energy));
            if next.signum() != u_cur.signum() && u_cur != 0.0 {
                nodes += 1;
            }
            u_cur = next;
            w_prev = w_cur;
            w_cur = w_next;
            if u_cur.abs() > RESCALE {
                u_cur /= RESCALE;
                w_prev /= RESCALE;
                w_cur /= RESCALE;
            }
        }
        nodes
    }

    /// Inward values on `from..=last`, indexed from `from`, with their sign changes.
    fn inward(&self, energy: f64, from: usize) -> (Vec<f64>, u32) {
        let h2 = self.h * self.h / 12.0;
        let last = self.r.len() - 1;
        let kappa = self.f(last, energy).max(0.0).sqrt();
        let mut rev = Vec::with_capacity(last - from + 1);
        rev.push(1e-20);
        rev.push(1e-20 * (kappa * self.h).exp());
        let mut nodes = 0;
        let mut w_prev = (1.0 - h2 * self.f(last, energy)) * rev[0];
        let mut w_cur = (1.0 - h2 * self.f(last - 1, energy)) * rev[1];
        for step in 1..(last - from) {
            let j = last - step;
            let cur = rev[step];
            let w_next = 2.0 * w_cur - w_prev + 12.0 * h2 * self.f(j, energy) * cur;
            let next = w_next / (1.0 - h2 * self.f(j - 1, energy));
            if next.signum() != cur.signum() && cur != 0.0 {
                nodes += 1;
            }
            rev.push(next);
            w_prev = w_cur;
            w_cur = w_next;
            if next.abs() > RESCALE {
                for x in rev.iter_mut() {
                    *x /= RESCALE;
                }
                w_prev /= RESCALE;
                w_cur /= RESCALE;
            }
        }
        rev.reverse();
        (rev, nodes)
    }

    fn matching_index(&self, energy: f64) -> usize {
        let last = self.r.len() - 1;
        let turning = (0..=last).rev().find(|&j| self.f(j, energy) < 0.0).unwrap_or(last / 2);
        turning.clamp(2, last - 2)
    }

    /// Outward minus inward log-derivative at the turning point.
    fn mismatch(&self, energy: f64) -> (f64, u32) {
        let mi = self.matching_index(energy);
        let (out, n_out) = self.outward(energy, mi + 1);
        let (inn, n_in) = self.inward(energy, mi - 1);
        let d_out = (out[mi + 1] - out[mi - 1]) / (2.0 * self.h * out[mi]);
        let d_in = (inn[2] - inn[0]) / (2.0 * self.h * inn[1]);
        (d_out - d_in, n_out + n_in)
    }

    fn eigenvalue(&self, tol: f64) -> Result<EigenResult> {
        let n = self.state.n();
        let l = f64::from(self.state.l());
        let missing = || Error::NoBoundStateInBracket {
            n,
            l: self.state.l(),
        };

        let mut hi = 0.0;
        if self.node_count(hi) <= n {
            return Err(missing());
        }
        let g = (-self.v0).max(f64::MIN_POSITIVE);
        let mut lo = -self.mass * g * g / ((l + 1.0) * (l + 1.0));
        let floor = self.base.iter().fold(f64::INFINITY, |a, &b| a.min(b)) / (2.0 * self.mass);
        while self.node_count(lo) > n {
            if lo < floor {
                return Err(missing());
            }
            lo *= 2.0;
        }

        let mut iterations = 0;
        // node bisection down to a narrow bracket
        let coarse = |lo: f64, hi: f64| hi - lo <= (1e-7 * lo.abs()).max(1e3 * tol);
        while !coarse(lo, hi) && iterations < MAX_ITERATIONS {
            let mid = 0.5 * (lo + hi);
            if self.node_count(mid) > n {
                hi = mid;
            } else {
                lo = mid;
            }
            iterations += 1;
        }

        // Illinois refinement on the log-derivative mismatch
        let (mut f_lo, _) = self.mismatch(lo);
        let (mut f_hi, _) = self.mismatch(hi);
        let refine = f_lo.is_finite() && f_hi.is_finite() && f_lo.signum() != f_hi.signum();
        let mut energy = 0.5 * (lo + hi);
        if refine {
            let mut side = 0;
            while hi - lo > tol && iterations < MAX_ITERATIONS {
                energy = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
                if !(energy > lo && energy < hi) {
                    energy = 0.5 * (lo + hi);
                }
                let (f_mid, _) = self.mismatch(energy);
                iterations += 1;
                if f_mid == 0.0 {
                    break;
                }
                if f_mid.signum() == f_lo.signum() {
                    lo = energy;
                    f_lo = f_mid;
                    if side == -1 {
                        f_hi *= 0.5;
                    }
                    side = -1;
                } else {
                    hi = energy;
                    f_hi = f_mid;
                    if side == 1 {
                        f_lo *= 0.5;
                    }
                    side = 1;
                }
                if (hi - lo).abs() <= tol {
                    break;
                }
            }
        } else {
            while hi - lo > tol && iterations < MAX_ITERATIONS {
                let mid = 0.5 * (lo + hi);
                if self.node_count(mid) > n {
                    hi = mid;
                } else {
                    lo = mid;
                }
                iterations += 1;
            }
            energy = 0.5 * (lo + hi);
        }

        let (residual, nodes_found) = self.mismatch(energy);
        Ok(EigenResult {
            energy,
            nodes_found,
            iterations,
            residual,
            richardson_shift: 0.0,
        })
    }
}

/// Closed-form Hulthén s-wave level
/// `E = −(m g²/2N²)·(1 − N²λ/(2mg))²`, `N = n + 1`.
///
/// At `N²λ = 2mg` the level reaches zero; beyond it the state is unbound.
pub fn hulthen_exact_s_wave(g: &Rational, lambda: &Rational, mass: &Rational, n: u32) -> Result<Rational> {
    let big_n = int(i64::from(n) + 1);
    let n2 = &big_n * &big_n;
    let x = &n2 * lambda / (int(2) * mass * g);
    if x > Rational::one() {
        return Err(Error::StateDissolved(format!(
            "N²λ/(2mg) = {} > 1",
            rational::to_string(&x)
        )));
    }
    let one_minus = Rational::one() - x;
    Ok(-(mass * g * g) / (int(2) * n2) * &one_minus * &one_minus)
}

/// Coefficients `[c₀, c₁, c₂]` of the Hulthén s-wave level as a polynomial in λ.
pub fn hulthen_exact_lambda_coeffs(g: &Rational, mass: &Rational, n: u32) -> [Rational; 3] {
    let big_n = int(i64::from(n) + 1);
    let n2 = &big_n * &big_n;
    [
        -(mass * g * g) / (int(2) * &n2),
        g / int(2),
        -&n2 / (int(8) * mass),
    ]
}
