//! Closed forms of the transcendental catalog generators.

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::scalar::{binomial, pi, Integer, Rational, Scalar};
use crate::series::{Center, TruncSeries};

/// Built-in generators whose coefficients are not those of a rational function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    /// a_n = 1/C(2n,n).
    CentralBinomial,
    /// a_n = ζ(n) for even n and 0 for odd n, α = −(π cot πz − 1/z)/2.
    ZetaEven,
}

impl BuiltinKind {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinKind::CentralBinomial => "central-binomial",
            BuiltinKind::ZetaEven => "zeta-even",
        }
    }
}

/// ζ(2j) = (−1)^(j+1) B_2j (2π)^(2j) / (2 (2j)!).
pub fn zeta_even_value(j: u32, prec: u32) -> Float {
    let b = bernoulli_number(2 * j as usize);
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let pw = Float::with_val(prec, two_pi.pow(2 * j));
    let fact = Integer::from(Integer::factorial(2 * j));
    let mut v = Float::with_val(prec, &pw * &b);
    v /= Float::with_val(prec, Integer::from(&fact * 2u32));
    if j.is_multiple_of(2) {
        v = -v;
    }
    v
}

/// Taylor coefficients a_1..a_n at 0.
pub fn coefficients(kind: BuiltinKind, n: usize, prec: u32) -> Vec<Scalar> {
    (1..=n as u64)
        .map(|k| match kind {
            BuiltinKind::CentralBinomial => Scalar::rational(Rational::from(1) / binomial(2 * k, k)),
            BuiltinKind::ZetaEven => {
                if k % 2 == 1 {
                    Scalar::zero()
                } else {
                    Scalar::real(zeta_even_value((k / 2) as u32, prec))
                }
            }
        })
        .collect()
}

/// asin of a series whose constant term lies in the principal domain.
fn series_asin(y: &TruncSeries, prec: u32) -> Result<TruncSeries> {
    let m = y.order();
    let c0 = Scalar::approx(y.coeff(0).to_complex(prec).asin());
    let one_minus = TruncSeries::one(m).sub(&y.mul(y));
    let root = one_minus.pow_scalar(&Scalar::ratio(-1, 2))?;
    Ok(y.derivative().mul(&root.truncate(m.saturating_sub(1))).integral(c0).truncate(m))
}

/// α(z(x)) for the central binomial generator, where z(x) has constant term in (0, 4).
pub fn central_binomial_compose(z: &TruncSeries, prec: u32) -> Result<TruncSeries> {
    let m = z.order();
    let z = z.to_approx(prec);
    let w = TruncSeries::constant(Scalar::int(4), m).sub(&z);
    let sz = z.pow_scalar(&Scalar::ratio(1, 2))?;
    let asin = series_asin(&sz.scale(&Scalar::ratio(1, 2)), prec)?;
    let w32 = w.pow_scalar(&Scalar::ratio(3, 2))?;
    let second = asin.scale(&Scalar::int(4)).div(&sz.mul(&w32))?;
    Ok(w.inv()?.add(&second))
}

/// α at a complex point.
pub fn eval_complex(kind: BuiltinKind, z: &Complex) -> Complex {
    let prec = z.prec().0;
    let mag = Float::with_val(prec, z.abs_ref());
    if mag.is_zero() || mag.get_exp().is_some_and(|e| e < -(prec as i32) / 3) {
        // Near 0 the closed forms are 0/0; two Taylor terms suffice.
        let c = coefficients(kind, 3, prec);
        let z2 = Complex::with_val(prec, z * z);
        return c[0].to_complex(prec) + Complex::with_val(prec, z * c[1].to_complex(prec))
            + z2 * c[2].to_complex(prec);
    }
    match kind {
        BuiltinKind::CentralBinomial => {
            let w = Complex::with_val(prec, 4 - z);
            let sz = Complex::with_val(prec, z.sqrt_ref());
            let asin = Complex::with_val(prec, &sz / 2u32).asin();
            let w32 = Complex::with_val(prec, w.clone() * w.clone().sqrt());
            let second = Complex::with_val(prec, asin * 4u32) / Complex::with_val(prec, &sz * &w32);
            Complex::with_val(prec, w.recip() + second)
        }
        BuiltinKind::ZetaEven => {
            let piz = Complex::with_val(prec, z * pi(prec));
            let cot = Complex::with_val(prec, piz.clone().cos() / piz.sin());
            let t = Complex::with_val(prec, cot * pi(prec)) - Complex::with_val(prec, z.recip_ref());
            Complex::with_val(prec, t / -2i32)
        }
    }
}

/// cos(πx) and sin(πx)/(πx) as Taylor series at x = 0.
fn cos_sinc_series(m: usize, prec: u32) -> (TruncSeries, TruncSeries) {
    let p = Float::with_val(prec, pi(prec));
    let mut cos = Vec::with_capacity(m + 1);
    let mut sinc = Vec::with_capacity(m + 1);
    let mut pk = Float::with_val(prec, 1);
    let mut fact = Float::with_val(prec, 1);
    for k in 0..=m {
        if k > 0 {
            pk *= &p;
            fact *= k as u32;
        }
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        if k % 2 == 0 {
            let c = Float::with_val(prec, &pk / &fact) * sign;
            let s = Float::with_val(prec, &pk / &fact) / (k as u32 + 1) * sign;
            cos.push(Scalar::real(c));
            sinc.push(Scalar::real(s));
        } else {
            cos.push(Scalar::zero());
            sinc.push(Scalar::zero());
        }
    }
    (TruncSeries::new(cos, m), TruncSeries::new(sinc, m))
}

/// Principal part and Taylor coefficients of α at z = 1 to order m.
/// Returns (k_1..k_ν, Taylor coefficients of the regular part).
pub fn laurent_at_one(kind: BuiltinKind, m: usize, prec: u32) -> Result<(Vec<Scalar>, TruncSeries)> {
    match kind {
        BuiltinKind::CentralBinomial => {
            let z = TruncSeries::one(m).add(&TruncSeries::variable(m));
            let taylor = central_binomial_compose(&z, prec)?.with_center(Center::One);
            Ok((Vec::new(), taylor))
        }
        BuiltinKind::ZetaEven => {
            // α(1+x) = −C/(2xS) + 1/(2(1+x)) with π cot πx = C/(xS).
            let (c, s) = cos_sinc_series(m + 1, prec);
            let r = c.div(&s)?;
            let half = Scalar::ratio(1, 2);
            let k1 = -(&r.coeff(0) * &half);
            let taylor = TruncSeries::from_fn(m, |n| {
                let alt = if n % 2 == 0 { half.clone() } else { -half.clone() };
                &alt - &(&r.coeff(n + 1) * &half)
            })
            .with_center(Center::One);
            Ok((vec![k1], taylor))
        }
    }
}

/// Singularities other than poles that bound the expansion at 1.
pub fn branch_points(kind: BuiltinKind) -> Vec<Scalar> {
    match kind {
        BuiltinKind::CentralBinomial => vec![Scalar::int(4)],
        BuiltinKind::ZetaEven => Vec::new(),
    }
}

pub fn check_order(kind: BuiltinKind, m: usize) -> Result<()> {
    if m > 4000 {
        return Err(Error::invalid(format!("{}: truncation order {m} too large", kind.name())));
    }
    Ok(())
}
