//! Direct substitution of a truncated expansion into the Riccati equation.
//!
//! The truncated `C` and `E` are assembled as sparse bivariate Laurent
//! polynomials in `(ħ, r)` and `ħC' + C² − ħ²l(l+1)/r² − 2mV + 2mE` is
//! formed by plain polynomial arithmetic, without reusing the recursion.
//! A monomial `ħ^{2k−2} r^{i−k}` is checked when every contribution to it
//! comes from orders `≤ K`: that is `k ≤ K, 0 ≤ i ≤ K`, plus the residue
//! slot `(K+1, K)` (for `K ≥ 1`) whose only missing term is
//! `2C₀C[K+1][K] = 0`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::potentials::PotentialSeries;
use crate::rational::{int, Rational};
use crate::series::{EnergySeries, LaurentTable};
use crate::state::QuantumState;

/// `(ħ power, r power)`.
type Monomial = (i64, i64);

#[derive(Debug, Default, Clone, PartialEq)]
struct Bivariate(BTreeMap<Monomial, Rational>);

impl Bivariate {
    fn add(&mut self, key: Monomial, value: Rational) {
        if value.is_zero() {
            return;
        }
        let slot = self.0.entry(key).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.0.remove(&key);
        }
    }

    fn mul(&self, other: &Bivariate) -> Bivariate {
        let mut out = Bivariate::default();
        for (&(ha, ra), a) in &self.0 {
            for (&(hb, rb), b) in &other.0 {
                out.add((ha + hb, ra + rb), a * b);
            }
        }
        out
    }

    fn hbar_r_derivative(&self) -> Bivariate {
        let mut out = Bivariate::default();
        for (&(h, r), c) in &self.0 {
            out.add((h + 1, r - 1), c * int(r));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// Largest absolute coefficient among checked monomials.
    pub max_abs: Rational,
    /// Number of monomial slots inside the checked cone.
    pub checked: usize,
    /// Nonzero monomials left unchecked because truncated data feeds them.
    pub excluded: usize,
}

impl ResidualReport {
    pub fn is_exact(&self) -> bool {
        self.max_abs.is_zero()
    }
}

pub fn riccati_residual(
    pot: &PotentialSeries,
    state: QuantumState,
    table: &LaurentTable,
    energies: &EnergySeries,
) -> Result<ResidualReport> {
    let order = table.order();
    if energies.order() != order {
        return Err(Error::DimensionMismatch(format!(
            "table order {order} vs energy order {}",
            energies.order()
        )));
    }
    if pot.coeffs().len() < order + 1 {
        return Err(Error::DimensionMismatch(format!(
            "potential has {} coefficients, table order {order} needs {}",
            pot.coeffs().len(),
            order + 1
        )));
    }
    let m = pot.mass();
    let two_m = int(2) * m;

    // C = Σ_k ħ^{2k−1} Σ_i C[k][i] r^{i−k}
    let mut c = Bivariate::default();
    c.add((-1, 0), table.c0().clone());
    for k in 1..=order {
        for i in 0..=order {
            c.add((2 * k as i64 - 1, i as i64 - k as i64), table.get(k, i).clone());
        }
    }

    let mut lhs = c.hbar_r_derivative();
    for (key, v) in c.mul(&c).0 {
        lhs.add(key, v);
    }
    // − ħ² l(l+1) r⁻²
    let l = i64::from(state.l());
    lhs.add((2, -2), -int(l * (l + 1)));
    // − 2m Σ V_i r^{i−1}
    for (i, vi) in pot.coeffs()[..=order].iter().enumerate() {
        lhs.add((0, i as i64 - 1), -(&two_m * vi));
    }
    // + 2m Σ E_k ħ^{2k−2}
    for (k, ek) in energies.values().iter().enumerate() {
        lhs.add((2 * k as i64 - 2, 0), &two_m * ek);
    }

    let in_cone = |(h, r): Monomial| -> bool {
        if h % 2 != 0 {
            return false;
        }
        let k = (h + 2) / 2;
        if k < 0 {
            return false;
        }
        if k == 0 {
            return r >= 0 && r <= order as i64;
        }
        let i = r + k;
        if k <= order as i64 {
            (0..=order as i64).contains(&i)
        } else {
            order >= 1 && k == order as i64 + 1 && i == order as i64
        }
    };

    let mut max_abs = Rational::zero();
    let mut excluded = 0;
    for (&key, v) in &lhs.0 {
        if in_cone(key) {
            let a = v.abs();
            if a > max_abs {
                max_abs = a;
            }
        } else {
            excluded += 1;
        }
    }
    let checked = (order + 1) * (order + 1) + usize::from(order >= 1);
    Ok(ResidualReport {
        max_abs,
        checked,
        excluded,
    })
}
