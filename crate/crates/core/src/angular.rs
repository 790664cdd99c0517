//! Polar-angle equation in `x = cos θ`:
//!
//! `Θ'' - 2x/(1-x²) Θ' + [λ(1-x²) - m² - (β' + βx)] / (1-x²)² Θ = 0`.
//!
//! Bounded solutions exist for `λ = (N + ζ)(N + ζ + 1)` and are Jacobi
//! polynomials times `(1-x)^{(B+C)/2} (1+x)^{(B-C)/2}`.

use crate::error::{Error, Result};
use crate::scalar::{half, lit, Scalar};
use crate::specfun::{jacobi_unchecked, ln_factorial, log_gamma};

/// Ring-shaped term strengths and the angular quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingParams<T> {
    /// Coefficient of `cos θ / (r² sin² θ)`.
    pub beta: T,
    /// Coefficient of `1 / (r² sin² θ)`.
    pub beta_prime: T,
    pub m: i32,
    /// Number of angular nodes.
    pub n: u32,
}

impl<T: Scalar> RingParams<T> {
    pub fn new(beta: T, beta_prime: T, m: i32, n: u32) -> Result<Self> {
        let rp = Self { beta, beta_prime, m, n };
        rp.validate()?;
        Ok(rp)
    }

    fn validate(&self) -> Result<()> {
        if !(self.beta >= T::zero() && self.beta_prime >= T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "beta and beta' must be real and non-negative, got {} and {}",
                self.beta, self.beta_prime
            )));
        }
        Ok(())
    }

    /// `m² + β'`
    pub fn effective_m_sq(&self) -> T {
        let m = T::from_i32(self.m).unwrap();
        m * m + self.beta_prime
    }
}

/// Derived quantities of the angular problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularSolution<T> {
    pub n: u32,
    pub u: T,
    /// `ζ = B = sqrt((m² + β' + u)/2)`
    pub zeta: T,
    pub big_c: T,
    pub lambda: T,
    /// `l = N + ζ`
    pub l_eff: T,
    pub norm: T,
}

impl<T: Scalar> AngularSolution<T> {
    #[inline]
    pub fn big_b(&self) -> T {
        self.zeta
    }

    /// Jacobi exponents `(B + C, B - C)`.
    pub fn jacobi_exponents(&self) -> (T, T) {
        (self.zeta + self.big_c, self.zeta - self.big_c)
    }
}

/// Solves for `u`, `ζ`, `B`, `C`, `λ`, the effective `l` and the normalization `C_N`.
pub fn solve_angular<T: Scalar>(rp: RingParams<T>) -> Result<AngularSolution<T>> {
    rp.validate()?;
    let msq = rp.effective_m_sq();
    let disc = msq * msq - rp.beta * rp.beta;
    if disc < T::zero() {
        return Err(Error::Reality { lhs: (msq * msq).as_f64(), rhs: (rp.beta * rp.beta).as_f64() });
    }
    let u = disc.sqrt();
    let zeta = (half::<T>() * (msq + u)).sqrt();
    // B·C = β/2 avoids the cancellation in sqrt((m² + β' - u)/2).
    let big_c = if zeta > T::zero() { rp.beta / (zeta + zeta) } else { T::zero() };
    let nf = T::from_u32(rp.n).unwrap();
    let l_eff = nf + zeta;
    let lambda = l_eff * (l_eff + T::one());
    let norm = angular_norm(rp.n, zeta, big_c)?;
    Ok(AngularSolution { n: rp.n, u, zeta, big_c, lambda, l_eff, norm })
}

fn angular_norm<T: Scalar>(n: u32, b: T, c: T) -> Result<T> {
    let one = T::one();
    let two = lit::<T>(2.0);
    let nf = T::from_u32(n).unwrap();
    let ln_sq = (two * nf + two * b + one).ln() + ln_factorial::<T>(n) + log_gamma(nf + two * b + one)?
        - (two * b + one) * two.ln()
        - log_gamma(nf + b + c + one)?
        - log_gamma(nf + b - c + one)?;
    Ok((half::<T>() * ln_sq).exp())
}

/// `Θ_N(x)` including the normalization, for `x` in the open interval `(-1, 1)`.
pub fn angular_wavefunction<T: Scalar>(sol: &AngularSolution<T>, x: T) -> Result<T> {
    if !(x.abs() < T::one()) {
        return Err(Error::Domain(format!("angular argument must lie in (-1, 1), got {x}")));
    }
    let (a, b) = sol.jacobi_exponents();
    let one = T::one();
    let envelope = (one - x).powf(half::<T>() * a) * (one + x).powf(half::<T>() * b);
    Ok(sol.norm * envelope * jacobi_unchecked(a, b, sol.n, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn solve(beta: f64, beta_prime: f64, m: i32, n: u32) -> AngularSolution<f64> {
        solve_angular(RingParams::new(beta, beta_prime, m, n).unwrap()).unwrap()
    }

    #[test]
    fn central_limit_m2() {
        let s = solve(0.0, 0.0, 2, 0);
        assert_eq!(s.u, 4.0);
        assert_eq!(s.zeta, 2.0);
        assert_eq!(s.l_eff, 2.0);
        assert_eq!(s.lambda, 6.0);
    }

    #[test]
    fn central_limit_m0() {
        let s = solve(0.0, 0.0, 0, 3);
        assert_eq!(s.u, 0.0);
        assert_eq!(s.zeta, 0.0);
        assert_eq!(s.big_c, 0.0);
        assert_eq!(s.l_eff, 3.0);
        assert_eq!(s.lambda, 12.0);
    }

    #[test]
    fn non_central_row() {
        let s = solve(1.0, 1.0, 1, 0);
        assert_relative_eq!(s.u, 3.0_f64.sqrt(), epsilon = 1e-15);
        let zeta = ((2.0 + 3.0_f64.sqrt()) / 2.0).sqrt();
        assert_relative_eq!(s.zeta, zeta, epsilon = 1e-15);
        assert_relative_eq!(s.zeta, 1.366_025_403_784_438_6, epsilon = 1e-12);
        assert_relative_eq!(s.lambda, zeta * (zeta + 1.0), epsilon = 1e-14);
        assert_relative_eq!(s.lambda, 3.232_050_807_568_877, epsilon = 1e-12);
    }

    #[test]
    fn algebraic_identities_of_b_and_c() {
        for &(beta, bp, m) in &[(1.0, 1.0, 0), (1.0, 0.0, 2), (0.5, 2.0, 3), (2.0, 2.0, 1)] {
            let s = solve(beta, bp, m, 1);
            let msq = (m * m) as f64 + bp;
            let (b, c) = (s.big_b(), s.big_c);
            assert!(b >= c && c >= 0.0);
            assert_relative_eq!(b * b + c * c, msq, epsilon = 1e-13);
            assert_relative_eq!(b * b - c * c, s.u, epsilon = 1e-13);
        }
    }

    #[test]
    fn reality_violation() {
        let err = solve_angular(RingParams::new(3.0, 1.0, 1, 0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Reality { .. }));
        assert!(err.to_string().contains("reality"));
    }

    #[test]
    fn negative_ring_strength_rejected() {
        assert!(RingParams::new(-1.0, 0.0, 0, 0).is_err());
    }

    #[test]
    fn legendre_reductions() {
        let s0 = solve(0.0, 0.0, 0, 0);
        assert_relative_eq!(s0.norm, 0.5_f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(angular_wavefunction(&s0, 0.3).unwrap(), 0.5_f64.sqrt(), epsilon = 1e-14);
        let s1 = solve(0.0, 0.0, 0, 1);
        for &x in &[-0.7, 0.2, 0.9] {
            assert_relative_eq!(angular_wavefunction(&s1, x).unwrap(), 1.5_f64.sqrt() * x, epsilon = 1e-14);
        }
    }

    #[test]
    fn endpoints_rejected() {
        let s = solve(0.0, 0.0, 0, 0);
        assert!(angular_wavefunction(&s, 1.0).is_err());
        assert!(angular_wavefunction(&s, -1.0).is_err());
    }

    #[test]
    fn lambda_grows_with_n() {
        let mut prev = -1.0;
        for n in 0..6 {
            let s = solve(1.0, 0.5, 1, n);
            assert!(s.lambda > prev);
            prev = s.lambda;
        }
    }
}
