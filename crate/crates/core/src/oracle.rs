//! Numerov shooting solver for the radial equation, independent of the
//! closed-form route.
//!
//! The equation `χ'' = (U(r) + ε²/b²) χ` is integrated outward on a
//! logarithmic grid `r = e^x` with `χ = e^{x/2} φ`, which turns it into
//! `φ'' = (r² (U + ε²/b²) + 1/4) φ` and keeps the `r^K` behaviour at the origin
//! smooth. Eigenvalues are located by bisection on the node count of `φ`.

use crate::error::{Error, Result};
use crate::radial::{centrifugal_approx_unchecked, energy_level, radial_potential_term, PotentialParams};
use crate::scalar::{half, lit, Scalar};

/// How the `λ/r²` term enters the shooting equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CentrifugalMode {
    /// The exponential approximation with the configured `C₀`; the closed form is exact here.
    Approximated,
    /// The true `λ/r²`.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumerovConfig<T> {
    pub r_min: T,
    pub r_max: T,
    /// Number of grid intervals.
    pub steps: usize,
    /// Bisection stops once the `ε²` bracket is narrower than this.
    pub energy_tol: T,
    pub centrifugal_mode: CentrifugalMode,
}

impl<T: Scalar> NumerovConfig<T> {
    pub const MIN_STEPS: usize = 1000;
    pub const MAX_BISECTIONS: usize = 200;

    /// Defaults scaled to the screening length: `[1e-6 b, 60 b]`, 40000 steps, tolerance 1e-10.
    pub fn for_screening_length(b: T) -> Self {
        Self {
            r_min: lit::<T>(1e-6) * b,
            r_max: lit::<T>(60.0) * b,
            steps: 40_000,
            energy_tol: lit(1e-10),
            centrifugal_mode: CentrifugalMode::Approximated,
        }
    }

    pub fn with_mode(self, centrifugal_mode: CentrifugalMode) -> Self {
        Self { centrifugal_mode, ..self }
    }

    pub fn with_steps(self, steps: usize) -> Self {
        Self { steps, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > T::zero() && self.r_min < self.r_max) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < r_min < r_max, got r_min = {}, r_max = {}",
                self.r_min, self.r_max
            )));
        }
        if self.steps < Self::MIN_STEPS {
            return Err(Error::InvalidParameter(format!(
                "need at least {} steps, got {}",
                Self::MIN_STEPS,
                self.steps
            )));
        }
        if !(self.energy_tol > T::zero()) {
            return Err(Error::InvalidParameter("energy tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Numerically converged eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult<T> {
    pub energy: T,
    pub eps_sq: T,
    pub n_r_found: u32,
    pub iterations: usize,
    pub converged: bool,
    /// Final width of the `ε²` bracket.
    pub residual: T,
}

/// Grid-dependent pieces of `f(x) = w(x) + ε² e(x)` in `φ'' = f φ`.
struct ShootingGrid<T> {
    h: T,
    w: Vec<T>,
    e: Vec<T>,
    seed: [T; 2],
}

impl<T: Scalar> ShootingGrid<T> {
    fn build(pp: &PotentialParams<T>, lambda: T, cfg: &NumerovConfig<T>) -> Result<Self> {
        let lam_sq = pp.big_lambda_sq(lambda);
        if !(lam_sq >= T::zero()) {
            return Err(Error::ImaginaryLambda(lam_sq.as_f64()));
        }
        let x0 = cfg.r_min.ln();
        let h = (cfg.r_max.ln() - x0) / T::from_usize_lossy(cfg.steps);
        let quarter = lit::<T>(0.25);
        let b2 = pp.b * pp.b;
        let n = cfg.steps + 1;
        let mut w = Vec::with_capacity(n);
        let mut e = Vec::with_capacity(n);
        for i in 0..n {
            let r = (x0 + h * T::from_usize_lossy(i)).exp();
            let cent = match cfg.centrifugal_mode {
                CentrifugalMode::Approximated => centrifugal_approx_unchecked(pp.b, pp.c0, r),
                CentrifugalMode::Exact => (r * r).recip(),
            };
            let r2 = r * r;
            w.push(r2 * radial_potential_term(pp, lambda, cent, r) + quarter);
            e.push(r2 / b2);
        }
        // χ ≈ r^K (1 + a₁ r) near the origin, K = 1/2 + Λ, a₁ = -(A + α(α-1)) / (2 K b)
        let big_lambda = lam_sq.sqrt();
        let k = half::<T>() + big_lambda;
        let a1 = -(pp.a_strength + pp.alpha * (pp.alpha - T::one())) / (lit::<T>(2.0) * k * pp.b);
        let r0 = cfg.r_min;
        let r1 = (x0 + h).exp();
        let seed = [T::one() + a1 * r0, (big_lambda * h).exp() * (T::one() + a1 * r1)];
        Ok(Self { h, w, e, seed })
    }

    /// Number of sign changes of the outward solution at `ε²`.
    fn count_nodes(&self, eps_sq: T) -> u32 {
        let h2 = self.h * self.h / lit(12.0);
        let ten = lit::<T>(10.0);
        let two = lit::<T>(2.0);
        let limit = T::max_value().sqrt();
        let f = |i: usize| self.w[i] + eps_sq * self.e[i];
        let (mut prev, mut cur) = (self.seed[0], self.seed[1]);
        let (mut f_prev, mut f_cur) = (f(0), f(1));
        let mut nodes = 0;
        let mut last_sign = cur.signum();
        for i in 2..self.w.len() {
            let f_next = f(i);
            let next = ((two + ten * h2 * f_cur) * cur - (T::one() - h2 * f_prev) * prev) / (T::one() - h2 * f_next);
            if next != T::zero() {
                let sign = next.signum();
                if sign != last_sign {
                    nodes += 1;
                    last_sign = sign;
                }
            }
            prev = cur;
            cur = next;
            f_prev = f_cur;
            f_cur = f_next;
            if cur.abs() > limit {
                prev = prev / limit;
                cur = cur / limit;
            }
        }
        nodes
    }

    /// Largest `h² f / 12` on the grid; Numerov loses stability near 1.
    fn max_stencil_load(&self, eps_sq: T) -> T {
        let h2 = self.h * self.h / lit(12.0);
        self.w.iter().zip(&self.e).fold(T::zero(), |acc, (&w, &e)| acc.max(h2 * (w + eps_sq * e)))
    }
}

/// Finds the eigenvalue with exactly `n_r` nodes, seeding the bracket from the
/// closed-form energy (±20%, widened to ±40% and ±80%).
pub fn numerov_solve<T: Scalar>(
    pp: &PotentialParams<T>,
    lambda: T,
    n_r: u32,
    cfg: &NumerovConfig<T>,
) -> Result<OracleResult<T>> {
    cfg.validate()?;
    let guess = energy_level(pp, lambda, n_r)?.eps_sq;
    let grid = ShootingGrid::build(pp, lambda, cfg)?;

    let mut bracket = None;
    for width in [0.2, 0.4, 0.8] {
        let w = lit::<T>(width);
        let shallow = guess * (T::one() - w);
        let deep = guess * (T::one() + w);
        if grid.max_stencil_load(deep) >= half() {
            return Err(Error::InvalidParameter(format!("grid too coarse for eps^2 = {deep}: increase steps")));
        }
        if grid.count_nodes(shallow) > n_r && grid.count_nodes(deep) <= n_r {
            bracket = Some((shallow, deep));
            break;
        }
    }
    let (mut shallow, mut deep) = bracket.ok_or_else(|| {
        Error::Bracketing(format!("no node-count change around eps^2 = {guess} for n_r = {n_r} within +-80%"))
    })?;

    let mut iterations = 0;
    while deep - shallow > cfg.energy_tol {
        if iterations >= NumerovConfig::<T>::MAX_BISECTIONS {
            return Err(Error::Convergence { iterations, width: (deep - shallow).as_f64() });
        }
        let mid = half::<T>() * (shallow + deep);
        if !(mid > shallow && mid < deep) {
            break;
        }
        if grid.count_nodes(mid) > n_r {
            shallow = mid;
        } else {
            deep = mid;
        }
        iterations += 1;
    }
    let residual = deep - shallow;
    let eps_sq = half::<T>() * (shallow + deep);
    Ok(OracleResult {
        energy: -pp.energy_scale() * eps_sq,
        eps_sq,
        n_r_found: grid.count_nodes(deep),
        iterations,
        converged: residual <= cfg.energy_tol,
        residual,
    })
}

/// One row of centrifugal-term figure data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxRow<T> {
    pub r: T,
    pub exact: T,
    /// `C₀ = 1/12`
    pub improved: T,
    /// `C₀ = 0`
    pub conventional: T,
}

/// `1/r²` against the improved and conventional approximations at screening length `pp.b`.
pub fn approximation_error_table<T: Scalar>(pp: &PotentialParams<T>, r_samples: &[T]) -> Result<Vec<ApproxRow<T>>> {
    r_samples
        .iter()
        .map(|&r| {
            if !(r > T::zero()) {
                return Err(Error::Domain(format!("radial coordinate must be positive, got {r}")));
            }
            Ok(ApproxRow {
                r,
                exact: (r * r).recip(),
                improved: centrifugal_approx_unchecked(pp.b, lit(1.0 / 12.0), r),
                conventional: centrifugal_approx_unchecked(pp.b, T::zero(), r),
            })
        })
        .collect()
}
