//! Numerical evaluation of D_α(s,t) and its continuation.

mod direct;
mod gamma;
mod hasse;
mod hurwitz;
mod incgamma;
mod registry;

use std::fmt;

use rug::{Complex, Float};

pub use direct::{direct_sum, unit_circle_split, UnitCircleSplit};
pub use gamma::{gamma_complex, rgamma};
pub use hasse::{continue_dirichlet, hasse_eval, hasse_eval_desc, HasseEvaluator, ShiftAccumulator};
pub use hurwitz::{hurwitz_oracle, hurwitz_zeta, oracle_eval, quasi_polynomial_tail};
pub use incgamma::{gamma_star, incgamma_eval};
pub use registry::{EvalMethod, MethodRegistry, MethodValue};

use crate::error::{Error, Result};
use crate::scalar::{abs_f64, Scalar};

/// Conditions attached to an evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EvalFlag {
    /// The argument is within the near-pole radius of a pole.
    NearPole,
    /// The estimate stagnated before the requested tolerance.
    SlowConvergence,
    /// Evaluated by a circle mean around a removable singularity.
    Removable,
    /// The value is an exact finite sum.
    Exact,
}

impl fmt::Display for EvalFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalFlag::NearPole => "near-pole",
            EvalFlag::SlowConvergence => "slow-convergence",
            EvalFlag::Removable => "removable",
            EvalFlag::Exact => "exact",
        })
    }
}

#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Complex,
    pub method: String,
    /// Truncation used: terms summed or operator order.
    pub terms: usize,
    pub tail_bound: f64,
    pub flags: Vec<EvalFlag>,
    /// Exact value when the result is an exact finite sum.
    pub exact: Option<Scalar>,
    /// Per-method values in compare mode.
    pub comparisons: Vec<MethodValue>,
}

impl EvalResult {
    pub fn new(value: Complex, method: &str, terms: usize, tail_bound: f64) -> Self {
        EvalResult {
            value,
            method: method.to_string(),
            terms,
            tail_bound,
            flags: Vec::new(),
            exact: None,
            comparisons: Vec::new(),
        }
    }

    pub fn with_flag(mut self, flag: EvalFlag) -> Self {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
            self.flags.sort();
        }
        self
    }

    /// Largest pairwise deviation among compared methods.
    pub fn max_deviation(&self) -> Option<f64> {
        if self.comparisons.len() < 2 {
            return None;
        }
        let mut worst: f64 = 0.0;
        for (i, a) in self.comparisons.iter().enumerate() {
            for b in &self.comparisons[i + 1..] {
                let d = Complex::with_val(a.value.prec().0, &a.value - &b.value);
                worst = worst.max(abs_f64(&d));
            }
        }
        Some(worst)
    }
}

/// t as a positive real float.
pub(crate) fn positive_real(t: &Scalar, prec: u32) -> Result<Float> {
    let z = t.to_complex(prec);
    if !z.imag().is_zero() || *z.real() <= 0 {
        return Err(Error::invalid(format!("t = {t} must be real and positive")));
    }
    Ok(z.real().clone())
}

/// (x)^(−s) on the principal branch for real x > 0.
pub(crate) fn pow_neg(x: &Float, s: &Complex, prec: u32) -> Complex {
    let ln = Complex::with_val(prec, (Float::with_val(prec, x.ln_ref()), 0));
    Complex::with_val(prec, -(s * ln)).exp()
}

/// s(s+1)…(s+n−1).
pub(crate) fn rising(s: &Complex, n: usize, prec: u32) -> Complex {
    let mut acc = Complex::with_val(prec, 1);
    for j in 0..n {
        acc *= Complex::with_val(prec, s + j as u32);
    }
    acc
}

/// Neumaier-compensated complex sum.
pub(crate) struct CompensatedSum {
    sum: Complex,
    comp: Complex,
}

impl CompensatedSum {
    pub fn new(prec: u32) -> Self {
        CompensatedSum {
            sum: Complex::new(prec),
            comp: Complex::new(prec),
        }
    }

    fn add_part(sum: &mut Float, comp: &mut Float, x: &Float) {
        let prec = sum.prec();
        let t = Float::with_val(prec, &*sum + x);
        let (big, small) = if sum.clone().abs() >= x.clone().abs() { (&*sum, x) } else { (x, &*sum) };
        let err = Float::with_val(prec, big - &t) + small;
        *comp += err;
        *sum = t;
    }

    pub fn add(&mut self, x: &Complex) {
        let (sr, si) = self.sum.as_mut_real_imag();
        let (cr, ci) = self.comp.as_mut_real_imag();
        Self::add_part(sr, cr, x.real());
        Self::add_part(si, ci, x.imag());
    }

    pub fn value(&self) -> Complex {
        Complex::with_val(self.sum.prec().0, &self.sum + &self.comp)
    }
}

/// Mean of f over the circle |z − center| = radius with k equally spaced
/// nodes; equals f(center) for f holomorphic on the closed disk.
pub(crate) fn circle_mean(
    center: &Complex,
    radius: f64,
    k: usize,
    prec: u32,
    mut f: impl FnMut(&Complex) -> Result<Complex>,
) -> Result<Complex> {
    let pi2 = Float::with_val(prec, crate::scalar::pi(prec) * 2u32);
    let mut acc = Complex::new(prec);
    for j in 0..k {
        let theta = Float::with_val(prec, &pi2 * j as u32) / k as u32;
        let dir = Complex::with_val(prec, (Float::with_val(prec, theta.cos_ref()), Float::with_val(prec, theta.sin_ref())));
        let z = Complex::with_val(prec, center + dir * radius);
        acc += f(&z)?;
    }
    Ok(acc / k as u32)
}

/// Node count for a circle mean of radius 1/4 when the nearest other
/// singularity is at distance at least 3/4.
pub(crate) fn circle_nodes(prec: u32) -> usize {
    (prec as f64 * std::f64::consts::LN_2 / 3f64.ln()).ceil() as usize + 8
}

pub(crate) fn is_nonpositive_integer(s: &Scalar) -> Option<u64> {
    let q = s.as_rational()?;
    if *q.denom() == 1 && *q.numer() <= 0 {
        q.numer().to_u64().map(|_| 0).or_else(|| (-q.numer().clone()).to_u64())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonpositive_integer_detection() {
        assert_eq!(is_nonpositive_integer(&Scalar::int(-3)), Some(3));
        assert_eq!(is_nonpositive_integer(&Scalar::int(0)), Some(0));
        assert_eq!(is_nonpositive_integer(&Scalar::int(2)), None);
        assert_eq!(is_nonpositive_integer(&Scalar::ratio(-1, 2)), None);
    }

    #[test]
    fn compensated_sum_keeps_small_terms() {
        let prec = 64;
        let mut s = CompensatedSum::new(prec);
        s.add(&Complex::with_val(prec, (1e20, 0)));
        for _ in 0..1000 {
            s.add(&Complex::with_val(prec, (1.0, 0)));
        }
        s.add(&Complex::with_val(prec, (-1e20, 0)));
        assert_eq!(s.value().real().to_f64(), 1000.0);
    }

    #[test]
    fn circle_mean_recovers_center_value() {
        let prec = 128;
        let c = Complex::with_val(prec, (0.3, 0.1));
        let m = circle_mean(&c, 0.25, circle_nodes(prec), prec, |z| Ok(Complex::with_val(prec, z.exp_ref()))).unwrap();
        assert!(crate::scalar::relative_error(&m, &Complex::with_val(prec, c.exp_ref())) < 1e-35);
    }
}
