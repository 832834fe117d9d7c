//! Partial sums, exact Padé approximants and ratio diagnostics for a
//! truncated energy series.
//!
//! The corrections `E_k` are treated as Taylor coefficients of a formal
//! variable `x = ħ²`; every estimate is evaluated at `x = 1`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::EnergySeries;

/// `S_K = Σ_{k ≤ K} E_k` for every `K` up to the series order.
pub fn partial_sums(series: &EnergySeries) -> Vec<Rational> {
    series
        .values()
        .iter()
        .scan(Rational::zero(), |acc, e| {
            *acc += e;
            Some(acc.clone())
        })
        .collect()
}

/// `[L/M]` rational approximant `P(x)/Q(x)` with `Q(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PadeApproximant {
    l: usize,
    m: usize,
    num: Vec<Rational>,
    den: Vec<Rational>,
    source_order: usize,
}

impl PadeApproximant {
    pub fn degrees(&self) -> (usize, usize) {
        (self.l, self.m)
    }

    pub fn numerator(&self) -> &[Rational] {
        &self.num
    }

    pub fn denominator(&self) -> &[Rational] {
        &self.den
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    /// `P(x)/Q(x)`, or `None` at a pole.
    pub fn eval_at(&self, x: &Rational) -> Option<Rational> {
        let horner = |c: &[Rational]| c.iter().rev().fold(Rational::zero(), |acc, a| acc * x + a);
        let q = horner(&self.den);
        if q.is_zero() {
            None
        } else {
            Some(horner(&self.num) / q)
        }
    }

    /// The resummed energy, `P(1)/Q(1)`.
    pub fn estimate(&self) -> Option<Rational> {
        self.eval_at(&Rational::one())
    }

    /// First `count` Taylor coefficients of `P/Q`.
    pub fn taylor(&self, count: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for i in 0..count {
            // Q·T = P  ⇒  t_i = p_i − Σ_{j≥1} q_j t_{i−j}
            let mut t = self.num.get(i).cloned().unwrap_or_else(Rational::zero);
            for (j, q) in self.den.iter().enumerate().skip(1).take_while(|(j, _)| *j <= i) {
                if !q.is_zero() {
                    t -= q * &out[i - j];
                }
            }
            out.push(t);
        }
        out
    }
}

/// Exact `[L/M]` Padé approximant of the energy series.
///
/// The denominator comes from the Toeplitz system
/// `Σ_{j=1}^{M} q_j c_{L+i−j} = −c_{L+i}`, `i = 1…M`. A rank-deficient but
/// consistent system is resolved with free unknowns set to zero, and the
/// result is accepted only if it reproduces `c_0…c_{L+M}`.
pub fn pade(series: &EnergySeries, l: usize, m: usize) -> Result<PadeApproximant> {
    pade_coeffs(series.values(), l, m)
}

pub fn pade_coeffs(coeffs: &[Rational], l: usize, m: usize) -> Result<PadeApproximant> {
    let order = coeffs.len().saturating_sub(1);
    if coeffs.is_empty() || l + m > order {
        return Err(Error::InvalidPadeOrder { l, m, order });
    }
    let c = |idx: i64| -> Rational {
        if idx < 0 {
            Rational::zero()
        } else {
            coeffs[idx as usize].clone()
        }
    };

    // augmented M × (M+1) matrix
    let mut rows: Vec<Vec<Rational>> = (1..=m)
        .map(|i| {
            let mut row: Vec<Rational> = (1..=m).map(|j| c((l + i) as i64 - j as i64)).collect();
            row.push(-c((l + i) as i64));
            row
        })
        .collect();
    let solution = solve_consistent(&mut rows, m).ok_or(Error::SingularPade { l, m })?;

    let mut den = Vec::with_capacity(m + 1);
    den.push(Rational::one());
    den.extend(solution);
    let num: Vec<Rational> = (0..=l)
        .map(|i| {
            den.iter()
                .enumerate()
                .take(i.min(m) + 1)
                .fold(Rational::zero(), |acc, (j, q)| acc + q * c(i as i64 - j as i64))
        })
        .collect();

    let approximant = PadeApproximant {
        l,
        m,
        num,
        den,
        source_order: order,
    };
    if approximant.taylor(l + m + 1) != coeffs[..=l + m] {
        return Err(Error::SingularPade { l, m });
    }
    Ok(approximant)
}

/// Gauss–Jordan on an augmented system; free unknowns are set to zero.
/// Returns `None` if the system is inconsistent.
fn solve_consistent(rows: &mut [Vec<Rational>], unknowns: usize) -> Option<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &factor * s;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (row, &col) in rows.iter().zip(&pivots) {
        x[col] = row[unknowns].clone();
    }
    Some(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    /// `|E_{k+1}/E_k|` for `k = 0…K−1`; `None` where either term is zero.
    pub ratios: Vec<Option<Rational>>,
    /// Orders `k ≥ 1` with `E_k = 0`.
    pub zero_terms: Vec<usize>,
    /// Order `k ≥ 1` of the smallest nonzero `|E_k|`.
    pub smallest_term: Option<usize>,
    /// Defined ratios increased three times in a row.
    pub divergent: bool,
}

pub fn diagnostics(series: &EnergySeries) -> Diagnostics {
    let values = series.values();
    let ratios: Vec<Option<Rational>> = values
        .windows(2)
        .map(|w| {
            if w[0].is_zero() || w[1].is_zero() {
                None
            } else {
                Some((&w[1] / &w[0]).abs())
            }
        })
        .collect();
    let zero_terms = (1..values.len()).filter(|&k| values[k].is_zero()).collect();
    let smallest_term = (1..values.len())
        .filter(|&k| !values[k].is_zero())
        .min_by(|&a, &b| values[a].abs().cmp(&values[b].abs()));

    let defined: Vec<&Rational> = ratios.iter().flatten().collect();
    let mut run = 0;
    let mut divergent = false;
    for w in defined.windows(2) {
        if w[1] > w[0] {
            run += 1;
            if run >= 3 {
                divergent = true;
                break;
            }
        } else {
            run = 0;
        }
    }

    Diagnostics {
        ratios,
        zero_terms,
        smallest_term,
        divergent,
    }
}
