//! Screened Coulomb potentials `V(r) = r⁻¹ Σ Vᵢ rⁱ`.
//!
//! The screening parameter is folded into the coefficients: each `Vᵢ`
//! carries a factor `λⁱ`, so a Taylor coefficient list at fixed rational
//! `λ` is all the perturbation recursion needs. Closed forms are kept
//! alongside for the numerical eigensolver.
//!
//! Supported families (Debye–Hückel is the `yukawa` form):
//!
//! | kind         | V(r)                              |
//! |--------------|-----------------------------------|
//! | `coulomb`    | `-g / r`                          |
//! | `yukawa`     | `-g e^{-λr} / r`                  |
//! | `hulthen`    | `-g λ e^{-λr} / (1 - e^{-λr})`    |
//! | `exp-cosine` | `-g e^{-λr} cos(λr) / r`          |
//! | `custom`     | explicit coefficient list         |

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

/// Upper bound on the number of generated coefficients unless overridden.
pub const DEFAULT_COEFF_CAP: usize = 64;

/// Below this value of `λr` the Hulthén closed form switches to its series.
pub const HULTHEN_SERIES_THRESHOLD: f64 = 1.0 / 1_048_576.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    Coulomb,
    Yukawa,
    Hulthen,
    ExpCosine,
    Custom,
}

impl PotentialKind {
    pub fn name(&self) -> &'static str {
        match self {
            PotentialKind::Coulomb => "coulomb",
            PotentialKind::Yukawa => "yukawa",
            PotentialKind::Hulthen => "hulthen",
            PotentialKind::ExpCosine => "exp-cosine",
            PotentialKind::Custom => "custom",
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PotentialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "coulomb" => Ok(PotentialKind::Coulomb),
            "yukawa" | "debye-huckel" | "debye-hückel" => Ok(PotentialKind::Yukawa),
            "hulthen" | "hulthén" => Ok(PotentialKind::Hulthen),
            "exp-cosine" | "expcosine" | "exp_cosine" => Ok(PotentialKind::ExpCosine),
            "custom" => Ok(PotentialKind::Custom),
            other => Err(Error::InvalidSpec(format!("unknown potential kind `{other}`"))),
        }
    }
}

/// User-supplied closed form for a custom coefficient list.
#[derive(Clone)]
pub struct ClosedForm(Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl ClosedForm {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.0)(r)
    }
}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ClosedForm(..)")
    }
}

/// A named screened potential with exact rational parameters.
#[derive(Debug, Clone)]
pub struct ScreenedPotentialSpec {
    kind: PotentialKind,
    g: Rational,
    lambda: Rational,
    custom_coeffs: Option<Vec<Rational>>,
    evaluator: Option<ClosedForm>,
}

impl ScreenedPotentialSpec {
    pub fn new(kind: PotentialKind, g: Rational, lambda: Rational) -> Result<Self> {
        if kind == PotentialKind::Custom {
            return Err(Error::InvalidSpec(
                "custom potentials are built with ScreenedPotentialSpec::custom".into(),
            ));
        }
        if !g.is_positive() {
            return Err(Error::InvalidSpec(format!(
                "coupling g must be positive, got {}",
                rational::to_string(&g)
            )));
        }
        if lambda.is_negative() {
            return Err(Error::InvalidSpec(format!(
                "screening lambda must be non-negative, got {}",
                rational::to_string(&lambda)
            )));
        }
        Ok(Self {
            kind,
            g,
            lambda,
            custom_coeffs: None,
            evaluator: None,
        })
    }

    pub fn coulomb(g: Rational) -> Result<Self> {
        Self::new(PotentialKind::Coulomb, g, Rational::zero())
    }

    pub fn yukawa(g: Rational, lambda: Rational) -> Result<Self> {
        Self::new(PotentialKind::Yukawa, g, lambda)
    }

    pub fn hulthen(g: Rational, lambda: Rational) -> Result<Self> {
        Self::new(PotentialKind::Hulthen, g, lambda)
    }

    pub fn exp_cosine(g: Rational, lambda: Rational) -> Result<Self> {
        Self::new(PotentialKind::ExpCosine, g, lambda)
    }

    /// Explicit coefficients `V₀, V₁, …`. `g` is reported as `-V₀` and
    /// `λ` as zero; neither enters any computation.
    pub fn custom(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        Ok(Self {
            kind: PotentialKind::Custom,
            g: -coeffs[0].clone(),
            lambda: Rational::zero(),
            custom_coeffs: Some(coeffs),
            evaluator: None,
        })
    }

    /// Attaches a closed form to a custom potential so the eigensolver can use it.
    pub fn with_evaluator(mut self, evaluator: ClosedForm) -> Self {
        self.evaluator = Some(evaluator);
        self
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }

    pub fn g(&self) -> &Rational {
        &self.g
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn custom_coeffs(&self) -> Option<&[Rational]> {
        self.custom_coeffs.as_deref()
    }

    pub fn has_closed_form(&self) -> bool {
        self.kind != PotentialKind::Custom || self.evaluator.is_some()
    }

    pub fn label(&self) -> String {
        match self.kind {
            PotentialKind::Custom => {
                let n = self.custom_coeffs.as_ref().map_or(0, Vec::len);
                format!("custom[{n}]")
            }
            PotentialKind::Coulomb => format!("coulomb g={}", rational::to_string(&self.g)),
            kind => format!(
                "{kind} g={} lambda={}",
                rational::to_string(&self.g),
                rational::to_string(&self.lambda)
            ),
        }
    }
}

/// Mass and exact coefficients of `V(r) = r⁻¹ Σ Vᵢ rⁱ`.
#[derive(Debug, Clone)]
pub struct PotentialSeries {
    mass: Rational,
    coeffs: Vec<Rational>,
    label: String,
    source: Option<ScreenedPotentialSpec>,
}

impl PotentialSeries {
    pub fn new(mass: Rational, coeffs: Vec<Rational>, label: impl Into<String>) -> Result<Self> {
        if !mass.is_positive() {
            return Err(Error::NonPositiveMass(rational::to_string(&mass)));
        }
        let Some(v0) = coeffs.first() else {
            return Err(Error::EmptyCoefficients);
        };
        if !v0.is_negative() {
            return Err(Error::NoCoulombBound(rational::to_string(v0)));
        }
        Ok(Self {
            mass,
            coeffs,
            label: label.into(),
            source: None,
        })
    }

    /// Coefficients `V₀…V_count` of a named potential.
    pub fn from_spec(spec: &ScreenedPotentialSpec, mass: Rational, count: usize) -> Result<Self> {
        let coeffs = taylor_coefficients(spec, count)?;
        let mut series = Self::new(mass, coeffs, spec.label())?;
        series.source = Some(spec.clone());
        Ok(series)
    }

    pub fn mass(&self) -> &Rational {
        &self.mass
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The named potential these coefficients were generated from, if any.
    pub fn source(&self) -> Option<&ScreenedPotentialSpec> {
        self.source.as_ref()
    }

    /// Same mass and label with one coefficient replaced.
    pub fn with_coeff(&self, index: usize, value: Rational) -> Result<Self> {
        let mut coeffs = self.coeffs.clone();
        if index >= coeffs.len() {
            return Err(Error::InsufficientCoefficients {
                order: index,
                required: index + 1,
                available: coeffs.len(),
            });
        }
        coeffs[index] = value;
        Self::new(self.mass.clone(), coeffs, self.label.clone())
    }
}

/// Bernoulli numbers `B₀…B_count` with `B₁ = -1/2`.
pub fn bernoulli_numbers(count: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(count + 1);
    b.push(Rational::one());
    for k in 1..=count {
        // Σ_{j=0}^{k} C(k+1, j) B_j = 0
        let mut binom = int(1);
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            if j > 0 {
                binom = binom * int((k + 2 - j) as i64) / int(j as i64);
            }
            if !bj.is_zero() {
                acc += &binom * bj;
            }
        }
        b.push(-acc / int(k as i64 + 1));
    }
    b
}

/// Exact `V₀…V_count` for `spec`, subject to [`DEFAULT_COEFF_CAP`].
pub fn taylor_coefficients(spec: &ScreenedPotentialSpec, count: usize) -> Result<Vec<Rational>> {
    taylor_coefficients_capped(spec, count, DEFAULT_COEFF_CAP)
}

pub fn taylor_coefficients_capped(
    spec: &ScreenedPotentialSpec,
    count: usize,
    cap: usize,
) -> Result<Vec<Rational>> {
    if count > cap {
        return Err(Error::CoefficientCap {
            requested: count,
            cap,
        });
    }
    let g = &spec.g;
    let lambda = &spec.lambda;
    let coeffs = match spec.kind {
        PotentialKind::Coulomb => {
            let mut v = vec![Rational::zero(); count + 1];
            v[0] = -g.clone();
            v
        }
        PotentialKind::Yukawa => {
            // -g (-λ)^i / i!
            let step = -lambda.clone();
            let mut term = -g.clone();
            let mut v = Vec::with_capacity(count + 1);
            for i in 0..=count {
                if i > 0 {
                    term = term * &step / int(i as i64);
                }
                v.push(term.clone());
            }
            v
        }
        PotentialKind::Hulthen => {
            // -gλ/(e^{λr}-1) = -(g/r) Σ B_i (λr)^i / i!
            let b = bernoulli_numbers(count);
            let mut scale = -g.clone();
            let mut v = Vec::with_capacity(count + 1);
            for (i, bi) in b.iter().enumerate() {
                if i > 0 {
                    scale = scale * lambda / int(i as i64);
                }
                v.push(&scale * bi);
            }
            v
        }
        PotentialKind::ExpCosine => {
            // -g Re[(-λ(1+i))^k] / k!
            let (mut re, mut im) = (-g.clone(), Rational::zero());
            let mut v = Vec::with_capacity(count + 1);
            for k in 0..=count {
                if k > 0 {
                    // (re + i im)(-λ - iλ) / k
                    let kk = int(k as i64);
                    let new_re = (-(&re * lambda) + &im * lambda) / &kk;
                    let new_im = (-(&re * lambda) - &im * lambda) / &kk;
                    re = new_re;
                    im = new_im;
                }
                v.push(re.clone());
            }
            v
        }
        PotentialKind::Custom => {
            let all = spec.custom_coeffs.as_ref().ok_or(Error::EmptyCoefficients)?;
            all.iter().take(count + 1).cloned().collect()
        }
    };
    Ok(coeffs)
}

/// Double-precision `V(r)`.
pub fn evaluate_closed_form(spec: &ScreenedPotentialSpec, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r.to_string()));
    }
    let g = rational::to_f64(&spec.g);
    let lambda = rational::to_f64(&spec.lambda);
    let value = match spec.kind {
        PotentialKind::Coulomb => -g / r,
        PotentialKind::Yukawa => -g * (-lambda * r).exp() / r,
        PotentialKind::ExpCosine => -g * (-lambda * r).exp() * (lambda * r).cos() / r,
        PotentialKind::Hulthen => {
            let x = lambda * r;
            if x < HULTHEN_SERIES_THRESHOLD {
                -g / r * (1.0 - x / 2.0 + x * x / 12.0)
            } else {
                -g * lambda / x.exp_m1()
            }
        }
        PotentialKind::Custom => match &spec.evaluator {
            Some(f) => f.eval(r),
            None => return Err(Error::NoClosedForm(spec.kind.name().to_string())),
        },
    };
    Ok(value)
}
