//! Order-by-order ħ-expansion of the log-derivative `C = ħU'/U`.
//!
//! With `E = ħ⁻² Σ E_k ħ^{2k}` and `C = ħ⁻¹ Σ C_k(r) ħ^{2k}` the Riccati
//! equation `ħC' + C² = ħ²l(l+1)/r² + 2mV − 2mE` splits into
//!
//! ```text
//! k = 0:  C₀² = −2mE₀
//! k ≥ 1:  C'_{k−1} + Σ_{j=0}^{k} C_j C_{k−j} = S_k
//! ```
//!
//! with sources `S₁ = 2mV − 2mE₁`, `S₂ = l(l+1)/r² − 2mE₂`, `S_k = −2mE_k`.
//! Each `C_k` (k ≥ 1) has a pole of order `k` at the origin and is stored as
//! `C_k(r) = r⁻ᵏ Σᵢ C[k][i] rⁱ`. Collecting `r^{i−k}` gives
//!
//! ```text
//! 2C₀ C[k][i] = [S_k]ᵢ − (i−k+1) C[k−1][i] − Σ_{j=1}^{k−1} Σ_{p=0}^{i} C[j][p] C[k−j][i−p]
//! ```
//!
//! `E_k` only enters the `i = k` slot, and `C[k][k]` is fixed by requiring the
//! residue of the next order to vanish, `C[k+1][k] = 0`. The residue of the
//! first order is the zero count at the origin, `C[1][0] = N = n + l + 1`,
//! which fixes `C₀ = mV₀/N`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::potentials::PotentialSeries;
use crate::rational::{self, int, Rational};
use crate::state::QuantumState;

/// Laurent coefficients `C[k][i]` for `0 ≤ k, i ≤ order`.
///
/// Row 0 holds the constant `C₀` in slot 0 and zeros elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentTable {
    order: usize,
    grid: Vec<Vec<Rational>>,
}

impl LaurentTable {
    /// Builds a table from raw rows. All rows must have `order + 1` entries.
    pub fn from_rows(grid: Vec<Vec<Rational>>) -> Result<Self> {
        let Some(order) = grid.len().checked_sub(1) else {
            return Err(Error::DimensionMismatch("empty Laurent table".into()));
        };
        if let Some(k) = grid.iter().position(|row| row.len() != order + 1) {
            return Err(Error::DimensionMismatch(format!(
                "row {k} has {} entries, expected {}",
                grid[k].len(),
                order + 1
            )));
        }
        Ok(Self { order, grid })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, k: usize, i: usize) -> &Rational {
        &self.grid[k][i]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.grid
    }

    /// `C₀⁰`, the constant leading-order log-derivative.
    pub fn c0(&self) -> &Rational {
        &self.grid[0][0]
    }

    pub(crate) fn set(&mut self, k: usize, i: usize, value: Rational) {
        self.grid[k][i] = value;
    }

    /// `C(r) = Σ_{k ≤ order} C_k(r)` at ħ = 1, exactly.
    pub fn eval_exact(&self, r: &Rational, order: usize) -> Result<Rational> {
        self.check_eval(order)?;
        if !r.is_positive() {
            return Err(Error::NonPositiveRadius(rational::to_string(r)));
        }
        let inv = r.recip();
        let mut total = self.grid[0][0].clone();
        let mut pole = Rational::from_integer(1.into());
        for row in &self.grid[1..=order] {
            pole *= &inv;
            let poly = row.iter().rev().fold(Rational::zero(), |acc, c| acc * r + c);
            total += poly * &pole;
        }
        Ok(total)
    }

    /// Floating-point counterpart of [`LaurentTable::eval_exact`].
    pub fn eval(&self, r: f64, order: usize) -> Result<f64> {
        self.check_eval(order)?;
        if !(r > 0.0) {
            return Err(Error::NonPositiveRadius(r.to_string()));
        }
        let mut total = rational::to_f64(&self.grid[0][0]);
        for (k, row) in self.grid.iter().enumerate().take(order + 1).skip(1) {
            let poly = row.iter().rev().fold(0.0, |acc, c| acc * r + rational::to_f64(c));
            total += poly * r.powi(-(k as i32));
        }
        Ok(total)
    }

    fn check_eval(&self, order: usize) -> Result<()> {
        if order > self.order {
            return Err(Error::DimensionMismatch(format!(
                "evaluation order {order} exceeds table order {}",
                self.order
            )));
        }
        Ok(())
    }
}

/// Exact energy corrections `E₀…E_K`; the physical energy at ħ = 1 is `Σ E_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySeries {
    values: Vec<Rational>,
    state: QuantumState,
    label: String,
}

impl EnergySeries {
    pub fn new(values: Vec<Rational>, state: QuantumState, label: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionMismatch("energy series needs E_0".into()));
        }
        Ok(Self {
            values,
            state,
            label: label.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, k: usize) -> &Rational {
        &self.values[k]
    }

    pub fn state(&self) -> QuantumState {
        self.state
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, e| acc + e)
    }
}

/// `E₀ = −mV₀²/(2N²)` and `C₀ = −√(−2mE₀) = mV₀/N`.
pub fn leading_order(pot: &PotentialSeries, state: QuantumState) -> Result<(Rational, Rational)> {
    let m = pot.mass();
    if !m.is_positive() {
        return Err(Error::NonPositiveMass(rational::to_string(m)));
    }
    let v0 = pot.coeffs().first().ok_or(Error::EmptyCoefficients)?;
    if !v0.is_negative() {
        return Err(Error::NoCoulombBound(rational::to_string(v0)));
    }
    let n = int(i64::from(state.multiplicity()));
    let e0 = -(m * v0 * v0) / (int(2) * &n * &n);
    let c0 = m * v0 / &n;
    Ok((e0, c0))
}

/// Energies `E₀…E_order` and the Laurent table for `state` in `pot`.
///
/// Reads only `V₀…V_order`; fewer coefficients is an error.
pub fn expand(
    pot: &PotentialSeries,
    state: QuantumState,
    order: usize,
) -> Result<(EnergySeries, LaurentTable)> {
    let (e0, c0) = leading_order(pot, state)?;
    let available = pot.coeffs().len();
    if available < order + 1 {
        return Err(Error::InsufficientCoefficients {
            order,
            required: order + 1,
            available,
        });
    }
    let v = &pot.coeffs()[..=order];
    let m = pot.mass();
    let two_m = int(2) * m;
    let two_c0 = int(2) * &c0;
    let big_n = int(i64::from(state.multiplicity()));
    let centrifugal = Rational::from_integer(state.centrifugal().into());

    let mut table = LaurentTable {
        order,
        grid: vec![vec![Rational::zero(); order + 1]; order + 1],
    };
    table.set(0, 0, c0.clone());
    let mut energies = Vec::with_capacity(order + 1);
    energies.push(e0);

    for k in 1..=order {
        for i in (0..=order).filter(|&i| i != k) {
            let mut rhs = match k {
                1 => &two_m * &v[i],
                2 if i == 0 => centrifugal.clone(),
                _ => Rational::zero(),
            };
            rhs -= derivative_term(&table, k, i);
            rhs -= convolution(&table, k, i);
            table.set(k, i, rhs / &two_c0);
        }
        debug_assert!(
            table.get(k, k - 1) == &if k == 1 { big_n.clone() } else { Rational::zero() },
            "residue condition violated at order {k}"
        );

        // Residue of order k+1 vanishes: Σ_{j=1}^{k} Σ_{p=0}^{k} C[j][p] C[k+1−j][k−p] = 0.
        // C[k][k] enters twice, each time multiplied by C[1][0] = N.
        let rest = convolution(&table, k + 1, k);
        let ckk = -rest / (int(2) * &big_n);
        table.set(k, k, ckk);

        // Order k at i = k: C[k−1][k] + 2C₀C[k][k] + Σ… = [S_k]_k − 2mE_k.
        let mut acc = if k == 1 { &two_m * &v[1] } else { Rational::zero() };
        acc -= derivative_term(&table, k, k);
        acc -= &two_c0 * table.get(k, k);
        acc -= convolution(&table, k, k);
        energies.push(acc / &two_m);
    }

    let series = EnergySeries::new(energies, state, pot.label())?;
    Ok((series, table))
}

/// `(i − k + 1) C[k−1][i]`, the r-derivative of the previous order.
fn derivative_term(table: &LaurentTable, k: usize, i: usize) -> Rational {
    let factor = i as i64 - k as i64 + 1;
    let prev = &table.grid[k - 1][i];
    if factor == 0 || prev.is_zero() {
        Rational::zero()
    } else {
        prev * int(factor)
    }
}

/// `Σ_{j=1}^{k−1} Σ_{p=0}^{i} C[j][p] C[k−j][i−p]`, restricted to stored rows.
fn convolution(table: &LaurentTable, k: usize, i: usize) -> Rational {
    let mut sum = Rational::zero();
    for j in 1..k {
        let (a, b) = (&table.grid[j], &table.grid[k - j]);
        for p in 0..=i {
            let (x, y) = (&a[p], &b[i - p]);
            if !x.is_zero() && !y.is_zero() {
                sum += x * y;
            }
        }
    }
    sum
}

/// Checks that `E₀…E_order` do not move when `V_{order+1}` is perturbed by one.
///
/// Both expansions are carried to `order + 1`, so `V_{order+1}` genuinely
/// enters the recursion; only `E_{order+1}` may react to it.
pub fn dependence_cone_check(pot: &PotentialSeries, state: QuantumState, order: usize) -> Result<bool> {
    let idx = order + 1;
    let perturbed = perturb_coefficient(pot, idx)?;
    let (base, _) = expand(pot, state, idx)?;
    let (moved, _) = expand(&perturbed, state, idx)?;
    Ok(base.values()[..=order] == moved.values()[..=order])
}

/// `pot` with `V_index` shifted by `+1`.
pub fn perturb_coefficient(pot: &PotentialSeries, index: usize) -> Result<PotentialSeries> {
    let shifted = pot
        .coeffs()
        .get(index)
        .ok_or(Error::InsufficientCoefficients {
            order: index,
            required: index + 1,
            available: pot.coeffs().len(),
        })?
        + int(1);
    pot.with_coeff(index, shifted)
}
