//! Test-only oracles that share no code path with the library recursion.

#![allow(dead_code)]

use hbar_lpt::rational::{int, Rational};
use num_traits::Zero;

/// Ground-state (n = 0) energies by ordinary logarithmic perturbation theory
/// in powers of the potential index, at ħ = 1.
///
/// Writes `C(r) = −κ + (l+1)/r + Σ_k P_k(r)` with polynomial `P_k` of
/// degree `k−1` vanishing at the origin, and solves
/// `P_k' + 2(−κ + (l+1)/r) P_k + Σ_{j=1}^{k−1} P_j P_{k−j} = 2m V_k r^{k−1} − 2m ε_k`
/// from the top power down. Returns `ε₀…ε_order`.
pub fn ground_state_energies(mass: &Rational, v: &[Rational], l: u32, order: usize) -> Vec<Rational> {
    let lp1 = int(i64::from(l) + 1);
    let kappa = -(mass * &v[0]) / &lp1;
    let two_m = int(2) * mass;
    let mut eps = vec![-(&kappa * &kappa) / &two_m];
    // polys[k][d] = coefficient of r^d in P_k, d = 0..k
    let mut polys: Vec<Vec<Rational>> = vec![vec![]];
    for k in 1..=order {
        // Q = Σ P_j P_{k−j}
        let mut q = vec![Rational::zero(); k + 1];
        for j in 1..k {
            for (a, pa) in polys[j].iter().enumerate() {
                for (b, pb) in polys[k - j].iter().enumerate() {
                    if a + b <= k {
                        q[a + b] += pa * pb;
                    }
                }
            }
        }
        let mut rhs = vec![Rational::zero(); k + 1];
        rhs[k - 1] += &two_m * &v[k];
        let mut a = vec![Rational::zero(); k + 1];
        // r^d: (d+1)a_{d+1} − 2κ a_d + 2(l+1) a_{d+1} + Q_d = R_d  (a_0 = 0)
        for d in (1..k).rev() {
            let next = &a[d + 1] * (int(d as i64 + 1) + int(2) * &lp1);
            a[d] = (next + &q[d] - &rhs[d]) / (int(2) * &kappa);
        }
        // r^0: (1 + 2(l+1)) a_1 + Q_0 = R_0 − 2m ε_k
        let lhs0 = &a[1] * (int(1) + int(2) * &lp1) + &q[0];
        eps.push((&rhs[0] - lhs0) / &two_m);
        polys.push(a);
    }
    eps
}
