//! Complex Γ and 1/Γ by reflection, upward shift and the Stirling series.

use rug::{Complex, Float};

use crate::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::scalar::pi;

fn nonpositive_integer(s: &Complex) -> bool {
    s.imag().is_zero() && *s.real() <= 0 && s.real().is_integer()
}

/// ln Γ(z) by the Stirling series; requires Re z large.
fn ln_gamma_stirling(z: &Complex, prec: u32) -> Complex {
    let half_ln_2pi = Float::with_val(prec, pi(prec) * 2u32).ln() / 2u32;
    let ln_z = Complex::with_val(prec, z.ln_ref());
    let mut acc = Complex::with_val(prec, z - Float::with_val(prec, 0.5)) * &ln_z;
    acc -= z;
    acc += half_ln_2pi;
    let z2 = Complex::with_val(prec, z.square_ref());
    let mut zpow = Complex::with_val(prec, z.recip_ref());
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 8));
    for k in 1..=(4 * prec as usize) {
        let b = bernoulli_number(2 * k);
        let denom = (2 * k * (2 * k - 1)) as u64;
        let term = Complex::with_val(prec, &zpow * Float::with_val(prec, &b)) / denom;
        let mag = Float::with_val(prec, term.abs_ref());
        acc += &term;
        if mag < tiny {
            break;
        }
        zpow /= &z2;
    }
    acc
}

/// Γ(s); fails at the poles s = 0, −1, −2, ….
pub fn gamma_complex(s: &Complex, prec: u32) -> Result<Complex> {
    if nonpositive_integer(s) {
        return Err(Error::numeric(format!("Γ has a pole at {}", s.real())));
    }
    let wp = prec + 32;
    let s = Complex::with_val(wp, s);
    if *s.real() < 0.5 {
        // Γ(s) = π / (sin(πs) Γ(1−s)).
        let pis = Complex::with_val(wp, &s * pi(wp));
        let sin = Complex::with_val(wp, pis.sin_ref());
        let refl = gamma_complex(&Complex::with_val(wp, 1 - &s), wp)?;
        return Ok(Complex::with_val(prec, pi(wp) / (sin * refl)));
    }
    let target = 0.25 * wp as f64 + 10.0;
    let re = s.real().to_f64();
    let shift = if re < target { (target - re).ceil() as u32 } else { 0 };
    let z = Complex::with_val(wp, &s + shift);
    let mut g = ln_gamma_stirling(&z, wp).exp();
    let mut prod = Complex::with_val(wp, 1);
    for j in 0..shift {
        prod *= Complex::with_val(wp, &s + j);
    }
    g /= prod;
    Ok(Complex::with_val(prec, g))
}

/// 1/Γ(s), entire, zero at the nonpositive integers.
pub fn rgamma(s: &Complex, prec: u32) -> Complex {
    if nonpositive_integer(s) {
        return Complex::new(prec);
    }
    let g = gamma_complex(s, prec).expect("not a pole");
    Complex::with_val(prec, g.recip_ref())
}
