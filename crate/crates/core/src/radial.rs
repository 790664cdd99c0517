//! Radial equation for `χ(r) = r R(r)` with the Manning-Rosen potential and the
//! exponential approximation of the centrifugal term.
//!
//! With `s = e^{-r/b}` and `-ε² = (2μ/ħ²) E b²` the approximated equation is
//! solved in closed form:
//!
//! * `Λ = sqrt(1/4 + α(α-1) + λ)`, `K = 1/2 + Λ`
//! * `√c = -(λ + 1/2 + Λ(1+2n_r) + n_r(n_r+1) - A) / (2Λ + 1 + 2n_r)`
//! * `ε² = c - λ C₀`
//! * `χ(r) = C s^{√c} (1-s)^K Γ(n_r+2√c+1)/(n_r! Γ(2√c+1)) ₂F₁(-n_r, 2√c+2K+n_r; 1+2√c; s)`

use crate::error::{Error, Result};
use crate::scalar::{half, lit, Scalar};
use crate::specfun::{hyp2f1_unchecked, ln_factorial, log_gamma};

/// Potential and model constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams<T> {
    /// Well depth `A` (dimensionless).
    pub a_strength: T,
    /// Repulsive-core parameter `α` (dimensionless).
    pub alpha: T,
    /// Screening length.
    pub b: T,
    pub mu: T,
    pub hbar: T,
    /// Centrifugal approximation constant; `1/12` for the improved scheme, `0` for Greene-Aldrich.
    pub c0: T,
}

impl<T: Scalar> PotentialParams<T> {
    /// Improved scheme (`C₀ = 1/12`) with `μ = ħ = 1`.
    pub fn new(a_strength: T, alpha: T, b: T) -> Result<Self> {
        Self::with_units(a_strength, alpha, b, T::one(), T::one(), lit(1.0 / 12.0))
    }

    pub fn with_units(a_strength: T, alpha: T, b: T, mu: T, hbar: T, c0: T) -> Result<Self> {
        let pp = Self { a_strength, alpha, b, mu, hbar, c0 };
        pp.validate()?;
        Ok(pp)
    }

    pub fn validate(&self) -> Result<()> {
        let zero = T::zero();
        if !(self.b > zero && self.mu > zero && self.hbar > zero) {
            return Err(Error::InvalidParameter(format!(
                "b, mu and hbar must be positive (b = {}, mu = {}, hbar = {})",
                self.b, self.mu, self.hbar
            )));
        }
        if !(self.c0 >= zero) || !self.a_strength.is_finite() || !self.alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "need finite A, alpha and C0 >= 0 (A = {}, alpha = {}, C0 = {})",
                self.a_strength, self.alpha, self.c0
            )));
        }
        Ok(())
    }

    /// True for the two schemes in common use, `C₀ ∈ {0, 1/12}`.
    pub fn is_standard_c0(&self) -> bool {
        self.c0 == T::zero() || (self.c0 - lit(1.0 / 12.0)).abs() <= T::epsilon()
    }

    /// `ħ² / (2 μ b²)`, the factor converting `ε²` into an energy.
    pub fn energy_scale(&self) -> T {
        self.hbar * self.hbar / (lit::<T>(2.0) * self.mu * self.b * self.b)
    }

    /// Copy with `C₀` replaced.
    pub fn with_c0(self, c0: T) -> Self {
        Self { c0, ..self }
    }

    pub fn with_alpha(self, alpha: T) -> Self {
        Self { alpha, ..self }
    }

    /// `Λ² = 1/4 + α(α-1) + λ`
    pub fn big_lambda_sq(&self, lambda: T) -> T {
        lit::<T>(0.25) + self.alpha * (self.alpha - T::one()) + lambda
    }
}

/// Closed-form bound state for one `(λ, n_r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSolution<T> {
    pub n_r: u32,
    pub l_eff: T,
    pub lambda: T,
    pub big_lambda: T,
    pub sqrt_c: T,
    pub big_k: T,
    pub eps_sq: T,
    pub energy: T,
    pub norm: T,
}

/// Effective `l` solving `l(l+1) = λ` with `l ≥ -1/2`.
pub fn l_from_lambda<T: Scalar>(lambda: T) -> T {
    half::<T>() * ((T::one() + lit::<T>(4.0) * lambda).max(T::zero()).sqrt() - T::one())
}

/// The signed quantity whose negative is `√c`; shared with the feasibility checks.
pub(crate) fn quantization_ratio<T: Scalar>(pp: &PotentialParams<T>, lambda: T, big_lambda: T, n_r: u32) -> T {
    let one = T::one();
    let two = lit::<T>(2.0);
    let n = T::from_u32(n_r).unwrap();
    (lambda + half() + big_lambda * (one + two * n) + n * (n + one) - pp.a_strength)
        / (two * big_lambda + one + two * n)
}

/// Bound-state energy for separation constant `λ` and radial node count `n_r`.
pub fn energy_level<T: Scalar>(pp: &PotentialParams<T>, lambda: T, n_r: u32) -> Result<RadialSolution<T>> {
    pp.validate()?;
    let lam_sq = pp.big_lambda_sq(lambda);
    if !(lam_sq >= T::zero()) {
        return Err(Error::ImaginaryLambda(lam_sq.as_f64()));
    }
    let big_lambda = lam_sq.sqrt();
    let sqrt_c = -quantization_ratio(pp, lambda, big_lambda, n_r);
    if !(sqrt_c > T::zero()) {
        return Err(Error::NoBoundState { sqrt_c: sqrt_c.as_f64() });
    }
    let eps_sq = sqrt_c * sqrt_c - lambda * pp.c0;
    if !(eps_sq > T::zero()) {
        return Err(Error::NonNegativeEnergy { eps_sq: eps_sq.as_f64() });
    }
    let mut sol = RadialSolution {
        n_r,
        l_eff: l_from_lambda(lambda),
        lambda,
        big_lambda,
        sqrt_c,
        big_k: half::<T>() + big_lambda,
        eps_sq,
        energy: -pp.energy_scale() * eps_sq,
        norm: T::zero(),
    };
    sol.norm = normalization_constant(&sol, pp)?;
    Ok(sol)
}

/// [`energy_level`] with `λ = l(l+1)`.
pub fn energy_level_for_l<T: Scalar>(pp: &PotentialParams<T>, l: T, n_r: u32) -> Result<RadialSolution<T>> {
    energy_level(pp, l * (l + T::one()), n_r)
}

fn ln_normalization<T: Scalar>(sol: &RadialSolution<T>, pp: &PotentialParams<T>) -> Result<T> {
    let (k, sc) = (sol.big_k, sol.sqrt_c);
    if !(k - T::one() > lit(-1.5)) || !(sc > T::zero()) {
        return Err(Error::Domain(format!(
            "normalization integral needs K - 1 > -3/2 and sqrt(c) > 0 (K = {k}, sqrt(c) = {sc})"
        )));
    }
    let one = T::one();
    let two = lit::<T>(2.0);
    let n = T::from_u32(sol.n_r).unwrap();
    let ln_sq = ln_factorial::<T>(sol.n_r) + (two * sc).ln() + (n + k + sc).ln() + log_gamma(two * (k + sc) + n)?
        - pp.b.ln()
        - (n + k).ln()
        - log_gamma(n + two * sc + one)?
        - log_gamma(n + two * k)?;
    Ok(half::<T>() * ln_sq)
}

/// `C_{n_r}`, evaluated through log-gamma.
pub fn normalization_constant<T: Scalar>(sol: &RadialSolution<T>, pp: &PotentialParams<T>) -> Result<T> {
    Ok(ln_normalization(sol, pp)?.exp())
}

/// `χ_{n_r}(r)`, normalized so that `∫₀^∞ χ² dr = 1`; positive as `r → ∞`.
pub fn radial_wavefunction<T: Scalar>(sol: &RadialSolution<T>, pp: &PotentialParams<T>, r: T) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::Domain(format!("radial coordinate must be positive, got {r}")));
    }
    let one = T::one();
    let two = lit::<T>(2.0);
    let (k, sc) = (sol.big_k, sol.sqrt_c);
    let n = T::from_u32(sol.n_r).unwrap();
    let t = r / pp.b;
    let s = (-t).exp();
    let ln_one_minus_s = (-(-t).exp_m1()).ln();
    // Γ(n_r + 2√c + 1) / (n_r! Γ(2√c + 1))
    let ln_prefactor = log_gamma(n + two * sc + one)? - ln_factorial::<T>(sol.n_r) - log_gamma(two * sc + one)?;
    let ln_env = ln_normalization(sol, pp)? + ln_prefactor - sc * t + k * ln_one_minus_s;
    let poly = hyp2f1_unchecked(sol.n_r, two * sc + two * k + n, one + two * sc, s);
    Ok(ln_env.exp() * poly)
}

/// `(1/b²)[C₀ + e^{-r/b} / (1 - e^{-r/b})²]`
pub fn centrifugal_approx<T: Scalar>(pp: &PotentialParams<T>, r: T) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::Domain(format!("radial coordinate must be positive, got {r}")));
    }
    Ok(centrifugal_approx_unchecked(pp.b, pp.c0, r))
}

pub(crate) fn centrifugal_approx_unchecked<T: Scalar>(b: T, c0: T, r: T) -> T {
    let t = r / b;
    let em1 = (-t).exp_m1();
    (c0 + (-t).exp() / (em1 * em1)) / (b * b)
}

/// `1/r²`
pub fn exact_centrifugal<T: Scalar>(r: T) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::Domain(format!("radial coordinate must be positive, got {r}")));
    }
    Ok((r * r).recip())
}

/// `U(r)` in `χ'' = (U(r) + ε²/b²) χ` for the approximated equation, without the energy term.
pub(crate) fn radial_potential_term<T: Scalar>(pp: &PotentialParams<T>, lambda: T, centrifugal: T, r: T) -> T {
    let b2 = pp.b * pp.b;
    let t = r / pp.b;
    let s = (-t).exp();
    let one_minus_s = -(-t).exp_m1();
    let attract = pp.a_strength * s / (b2 * one_minus_s);
    let core = pp.alpha * (pp.alpha - T::one()) * s * s / (b2 * one_minus_s * one_minus_s);
    core - attract + lambda * centrifugal
}
