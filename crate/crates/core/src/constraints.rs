//! Bound-state existence conditions and the feasible `(n_r, l)` region.

use crate::angular::RingParams;
use crate::radial::{quantization_ratio, PotentialParams};
use crate::scalar::Scalar;

/// Which existence conditions hold for one state.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeasibilityReport {
    /// Ring-term reality (`u` real) or, for a bare `λ`, `Λ` real.
    pub reality_ok: bool,
    /// `√c > 0`, i.e. `A - 1/2 - λ - Λ > n_r (n_r + 2Λ + 1)`.
    pub depth_ok: bool,
    /// `ε² = c - λ C₀ > 0`.
    pub negativity_ok: bool,
    /// Largest feasible `n_r` at this `λ`, if any.
    pub n_r_max: Option<u32>,
    pub messages: Vec<String>,
}

impl FeasibilityReport {
    pub fn is_bound(&self) -> bool {
        self.reality_ok && self.depth_ok && self.negativity_ok
    }
}

/// `(m² + β')² ≥ β²`
pub fn check_reality<T: Scalar>(rp: &RingParams<T>) -> bool {
    let msq = rp.effective_m_sq();
    msq * msq >= rp.beta * rp.beta
}

struct Conditions {
    lambda_real: bool,
    depth: bool,
    negativity: bool,
    sqrt_c: f64,
    eps_sq: f64,
}

fn evaluate<T: Scalar>(pp: &PotentialParams<T>, lambda: T, n_r: u32) -> Conditions {
    let lam_sq = pp.big_lambda_sq(lambda);
    if !(lam_sq >= T::zero()) {
        return Conditions { lambda_real: false, depth: false, negativity: false, sqrt_c: f64::NAN, eps_sq: f64::NAN };
    }
    let sqrt_c = -quantization_ratio(pp, lambda, lam_sq.sqrt(), n_r);
    let eps_sq = sqrt_c * sqrt_c - lambda * pp.c0;
    Conditions {
        lambda_real: true,
        depth: sqrt_c > T::zero(),
        negativity: eps_sq > T::zero(),
        sqrt_c: sqrt_c.as_f64(),
        eps_sq: eps_sq.as_f64(),
    }
}

fn largest_feasible_n_r<T: Scalar>(pp: &PotentialParams<T>, lambda: T) -> Option<u32> {
    // n_r (n_r + 2Λ + 1) < A bounds the scan.
    let limit = pp.a_strength.as_f64().max(0.0).sqrt().ceil() as u32 + 2;
    let mut best = None;
    for n_r in 0..=limit {
        let c = evaluate(pp, lambda, n_r);
        if c.depth && c.negativity {
            best = Some(n_r);
        } else {
            break;
        }
    }
    best
}

/// Existence checks for `(λ, n_r)`. Never fails; violations are reported.
pub fn check_bound_state<T: Scalar>(pp: &PotentialParams<T>, lambda: T, n_r: u32) -> FeasibilityReport {
    let c = evaluate(pp, lambda, n_r);
    let mut messages = Vec::new();
    if !c.lambda_real {
        messages.push(format!("Lambda imaginary: 1/4 + alpha(alpha-1) + lambda < 0 at lambda = {lambda}"));
        return FeasibilityReport { messages, ..Default::default() };
    }
    if !c.depth {
        let at_ground = evaluate(pp, lambda, 0);
        if at_ground.depth {
            messages.push(format!(
                "radial node bound: A - 1/2 - lambda - Lambda > n_r(n_r + 2 Lambda + 1) fails at n_r = {n_r} (sqrt(c) = {:.6})",
                c.sqrt_c
            ));
        } else {
            messages.push(format!(
                "depth condition A > 1/2 + lambda + Lambda fails (A = {}, lambda = {lambda})",
                pp.a_strength
            ));
        }
    }
    if !c.negativity {
        messages.push(format!("energy non-negative: lambda*C0 >= (sqrt c)^2 (eps^2 = {:.6e})", c.eps_sq));
    }
    FeasibilityReport {
        reality_ok: true,
        depth_ok: c.depth,
        negativity_ok: c.negativity,
        n_r_max: largest_feasible_n_r(pp, lambda),
        messages,
    }
}

/// Full check for a state labelled by ring parameters: reality of `u`, then
/// the radial conditions at `λ = (N + ζ)(N + ζ + 1)`.
pub fn check_state<T: Scalar>(pp: &PotentialParams<T>, rp: &RingParams<T>, n_r: u32) -> FeasibilityReport {
    if !check_reality(rp) {
        return FeasibilityReport {
            messages: vec![format!(
                "reality condition (m^2 + beta')^2 >= beta^2 fails for beta = {}, beta' = {}, m = {}",
                rp.beta, rp.beta_prime, rp.m
            )],
            ..Default::default()
        };
    }
    match crate::angular::solve_angular(*rp) {
        Ok(ang) => check_bound_state(pp, ang.lambda, n_r),
        Err(e) => FeasibilityReport { messages: vec![e.to_string()], ..Default::default() },
    }
}

/// All integer pairs `(n_r, l)` with `l ≤ l_max`, `n_r ≤ n_r_max_scan` that admit a bound state.
pub fn feasible_region<T: Scalar>(pp: &PotentialParams<T>, l_max: T, n_r_max_scan: u32) -> Vec<(u32, u32)> {
    let l_top = l_max.floor().to_i64().unwrap_or(-1);
    if l_top < 0 {
        return Vec::new();
    }
    let mut region = Vec::new();
    for l in 0..=l_top as u32 {
        let lf = T::from_u32(l).unwrap();
        let lambda = lf * (lf + T::one());
        for n_r in 0..=n_r_max_scan {
            if check_bound_state(pp, lambda, n_r).is_bound() {
                region.push((n_r, l));
            }
        }
    }
    region
}

/// Upper bounds on `l` and `n_r` past which no integer state can be bound.
pub fn region_scan_limits<T: Scalar>(pp: &PotentialParams<T>) -> (u32, u32) {
    let bound = pp.a_strength.as_f64().max(0.0).sqrt().ceil() as u32 + 1;
    (bound, bound)
}

/// `feasible_region` over the full bounding box from [`region_scan_limits`].
pub fn full_region<T: Scalar>(pp: &PotentialParams<T>) -> Vec<(u32, u32)> {
    let (l_max, n_max) = region_scan_limits(pp);
    feasible_region(pp, T::from_u32(l_max).unwrap(), n_max)
}
