//! Special functions: log-gamma, Jacobi polynomials and the terminating
//! Gauss hypergeometric series.

use crate::error::{Error, Result};
use crate::scalar::{half, lit, Scalar};

/// Bernoulli-number coefficients `B_{2k} / (2k (2k-1))` of the Stirling series.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Below this the argument is shifted upward with the recurrence before the
/// asymptotic series is applied.
const STIRLING_MIN: f64 = 15.0;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma<T: Scalar>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {x}")));
    }
    if x == T::one() || x == lit(2.0) {
        return Ok(T::zero());
    }

    let mut z = x;
    let mut prod = T::one();
    let min = lit::<T>(STIRLING_MIN);
    while z < min {
        prod = prod * z;
        z = z + T::one();
    }

    let inv = z.recip();
    let inv2 = inv * inv;
    let mut series = T::zero();
    let mut pow = inv;
    for &c in STIRLING.iter() {
        series = series + lit::<T>(c) * pow;
        pow = pow * inv2;
    }
    let ln_sqrt_2pi = half::<T>() * (T::PI() + T::PI()).ln();
    let stirling = (z - half()) * z.ln() - z + ln_sqrt_2pi + series;
    Ok(stirling - prod.ln())
}

/// Parameters of `P_n^{(a,b)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams<T> {
    pub a: T,
    pub b: T,
    pub n: u32,
}

impl<T: Scalar> JacobiParams<T> {
    pub fn new(a: T, b: T, n: u32) -> Result<Self> {
        let p = Self { a, b, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let minus_one = -T::one();
        if !(self.a > minus_one && self.b > minus_one) {
            return Err(Error::InvalidParameter(format!(
                "Jacobi exponents must exceed -1, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

/// Evaluates `P_n^{(a,b)}(x)` on `[-1, 1]` with the three-term recurrence in `n`.
pub fn jacobi_eval<T: Scalar>(p: JacobiParams<T>, x: T) -> Result<T> {
    p.validate()?;
    if !(x.abs() <= T::one()) {
        return Err(Error::Domain(format!("Jacobi argument must lie in [-1, 1], got {x}")));
    }
    Ok(jacobi_unchecked(p.a, p.b, p.n, x))
}

pub(crate) fn jacobi_unchecked<T: Scalar>(a: T, b: T, n: u32, x: T) -> T {
    let one = T::one();
    let two = lit::<T>(2.0);
    if n == 0 {
        return one;
    }
    let mut prev = one;
    let mut cur = (a + one) + (a + b + two) * (x - one) * half();
    for k in 2..=n {
        let k = T::from_u32(k).unwrap();
        let s = two * k + a + b;
        let lead = two * k * (k + a + b) * (s - two);
        let mid = (s - one) * (s * (s - two) * x + a * a - b * b);
        let tail = two * (k + a - one) * (k + b - one) * s;
        let next = (mid * cur - tail * prev) / lead;
        prev = cur;
        cur = next;
    }
    cur
}

/// `₂F₁(-n, b; c; s)`, a polynomial of degree `n` in `s`.
///
/// Pochhammer ratios are accumulated term by term. Fails when `c + k = 0` for
/// some `k < n`.
pub fn hyp2f1_terminating<T: Scalar>(n: u32, b: T, c: T, s: T) -> Result<T> {
    for k in 0..n {
        if c + T::from_u32(k).unwrap() == T::zero() {
            return Err(Error::Pole { c: c.as_f64(), n });
        }
    }
    Ok(hyp2f1_unchecked(n, b, c, s))
}

pub(crate) fn hyp2f1_unchecked<T: Scalar>(n: u32, b: T, c: T, s: T) -> T {
    let minus_n = -T::from_u32(n).unwrap();
    let mut term = T::one();
    let mut sum = T::one();
    for k in 0..n {
        let k = T::from_u32(k).unwrap();
        term = term * (minus_n + k) * (b + k) / ((c + k) * (k + T::one())) * s;
        sum = sum + term;
    }
    sum
}

/// `ln(n!)`.
pub(crate) fn ln_factorial<T: Scalar>(n: u32) -> T {
    (2..=n).fold(T::zero(), |acc, k| acc + T::from_u32(k).unwrap().ln())
}
