//! Mellin splitting for generators without a pole at z = 1:
//! Γ(s) D_α(s,t) = ∫_0^∞ e^(−ut) α(e^(−u)) u^(s−1) du, split at ε.
//! The head uses the Taylor series of α(e^(−u)) and incomplete gamma
//! functions; the tail is an entire function computed by exp-sinh quadrature.

use rug::{Complex, Float};

use super::{positive_real, rgamma, rising, CompensatedSum, EvalResult};
use crate::bernoulli::todd_series;
use crate::error::{Error, Result};
use crate::scalar::{abs_f64, pi, ApproxContext, Integer, Scalar};
use crate::tame::{laurent_at_one, pole_form, TameDescriptor};

/// γ*(a,x) = x^(−a) γ(a,x) / Γ(a) = e^(−x) Σ_k x^k / Γ(a+k+1), entire in a.
pub fn gamma_star(a: &Complex, x: &Float, prec: u32) -> Complex {
    let r = reciprocal_gammas(a, terms_for(x.to_f64(), prec) + 1, prec);
    gamma_star_from(&r, 0, x, prec)
}

fn terms_for(x: f64, prec: u32) -> usize {
    let target = -(prec as f64) * std::f64::consts::LN_2 - 10.0;
    let mut log_term = 0.0;
    let mut k = 0usize;
    while k < 2 * x.ceil() as usize + 4 || log_term > target {
        k += 1;
        log_term += x.max(1e-300).ln() - (k as f64).ln();
    }
    k
}

/// 1/Γ(a+j) for j = 0..=count by downward recursion from the top.
fn reciprocal_gammas(a: &Complex, count: usize, prec: u32) -> Vec<Complex> {
    let top = Complex::with_val(prec, a + count as u32);
    let mut r = vec![Complex::new(prec); count + 1];
    r[count] = rgamma(&top, prec);
    for j in (0..count).rev() {
        let aj = Complex::with_val(prec, a + j as u32);
        r[j] = Complex::with_val(prec, &r[j + 1] * &aj);
    }
    r
}

/// γ*(a + offset, x) from r[j] = 1/Γ(a + j).
fn gamma_star_from(r: &[Complex], offset: usize, x: &Float, prec: u32) -> Complex {
    let mut sum = CompensatedSum::new(prec);
    let mut xp = Float::with_val(prec, 1);
    for rk in &r[offset + 1..] {
        sum.add(&Complex::with_val(prec, rk * &xp));
        xp *= x;
    }
    let ex = Float::with_val(prec, -x.clone()).exp();
    sum.value() * ex
}

/// Distance from u = 0 to the nearest singularity of α(e^(−u)).
fn log_radius(desc: &TameDescriptor) -> Result<f64> {
    let form = pole_form(desc, 0)?;
    let mut r = f64::INFINITY;
    let sing = form.poles.iter().map(|p| p.q.clone()).chain(form.branch_points.iter().cloned());
    for q in sing {
        let z = q.to_complex(64);
        let l = Complex::with_val(64, z.ln_ref());
        r = r.min(abs_f64(&l));
    }
    Ok(r)
}

/// D_α(s,t) for ν = 0 by the split Mellin integral.
pub fn incgamma_eval(desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
    let nu = laurent_at_one(desc, 0)?.nu;
    if nu != 0 {
        return Err(Error::unsupported(format!(
            "incomplete-gamma evaluation needs a generator regular at z = 1 (ν = {nu})"
        )));
    }
    let prec = ctx.precision_bits + 40;
    let sc = s.to_complex(prec);
    let tf = positive_real(t, prec)?;
    let radius = log_radius(desc)?;
    let eps_split = if radius.is_finite() { (radius / 3.0).min(2.0) } else { 1.0 };
    let ratio = if radius.is_finite() { eps_split / radius } else { 0.5 };
    let eps = ctx.target_eps;
    let n_head = ((1e4 / eps).ln() / -ratio.ln()).ceil() as usize + 10;

    let laurent = laurent_at_one(desc, n_head)?;
    let todd = todd_series(&laurent, n_head)?;
    let e = Float::with_val(prec, eps_split);
    let x = Float::with_val(prec, &e * &tf);
    let k_terms = terms_for(x.to_f64(), prec);
    let r = reciprocal_gammas(&sc, n_head + k_terms + 1, prec);
    let ln_e = Float::with_val(prec, e.ln_ref());
    let mut head = CompensatedSum::new(prec);
    let mut fact = Integer::from(1);
    for n in 0..=n_head {
        if n > 0 {
            fact *= n as u32;
        }
        let tau = todd.tau[n].to_complex(prec);
        if tau.real().is_zero() && tau.imag().is_zero() {
            continue;
        }
        // ψ̃_n = (−1)^n τ_n / n!.
        let mut psi = tau / Float::with_val(prec, &fact);
        if n % 2 == 1 {
            psi = -psi;
        }
        let sn = Complex::with_val(prec, &sc + n as u32);
        let epow = Complex::with_val(prec, &sn * &ln_e).exp();
        let g = gamma_star_from(&r[n..], 0, &x, prec);
        head.add(&(psi * epow * rising(&sc, n, prec) * g));
    }

    let (integral, points, change) = exp_sinh(desc, &sc, &tf, &e, prec, eps)?;
    let tail = integral * rgamma(&sc, prec);
    let value = Complex::with_val(ctx.precision_bits, head.value() + tail);
    let bound = change * abs_f64(&rgamma(&sc, 64));
    Ok(EvalResult::new(value, "incgamma", n_head + points, bound))
}

/// ∫_ε^∞ e^(−ut) α(e^(−u)) u^(s−1) du with u = ε + exp((π/2) sinh x).
fn exp_sinh(
    desc: &TameDescriptor,
    s: &Complex,
    t: &Float,
    eps_split: &Float,
    prec: u32,
    tol: f64,
) -> Result<(Complex, usize, f64)> {
    let half_pi = Float::with_val(prec, pi(prec) / 2u32);
    let s1 = Complex::with_val(prec, s - 1u32);
    let integrand = |xv: &Float| -> Result<Complex> {
        let sh = Float::with_val(prec, xv.sinh_ref());
        let ch = Float::with_val(prec, xv.cosh_ref());
        let ex = Float::with_val(prec, &half_pi * &sh).exp();
        let u = Float::with_val(prec, eps_split + &ex);
        let du = Float::with_val(prec, &half_pi * &ch) * &ex;
        let z = Complex::with_val(prec, Float::with_val(prec, -u.clone()).exp());
        let a = desc.eval_complex(&z)?;
        let lu = Float::with_val(prec, u.ln_ref());
        let pw = Complex::with_val(prec, &s1 * lu).exp();
        let damp = Float::with_val(prec, -(Float::with_val(prec, &u * t))).exp();
        Ok(a * pw * damp * du)
    };
    let x_lo = -6.0f64;
    let x_hi = 4.0f64;
    let mut h = 0.5f64;
    let mut sum = CompensatedSum::new(prec);
    let mut points = 0usize;
    let mut k = (x_lo / h).floor() as i64;
    while (k as f64) * h <= x_hi {
        let v = integrand(&Float::with_val(prec, k as f64 * h))?;
        sum.add(&v);
        points += 1;
        k += 1;
    }
    let mut prev = Complex::with_val(prec, sum.value() * h);
    for _ in 0..10 {
        h /= 2.0;
        let mut k = (x_lo / h).floor() as i64;
        if k % 2 == 0 {
            k += 1;
        }
        while (k as f64) * h <= x_hi {
            let v = integrand(&Float::with_val(prec, k as f64 * h))?;
            sum.add(&v);
            points += 1;
            k += 2;
        }
        let cur = Complex::with_val(prec, sum.value() * h);
        let change = abs_f64(&Complex::with_val(prec, &cur - &prev));
        if change <= tol * abs_f64(&cur).max(1.0) / 16.0 {
            return Ok((cur, points, change));
        }
        prev = cur;
    }
    Err(Error::SlowConvergence {
        terms: points,
        last_change: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeval::{continue_dirichlet, gamma_complex, oracle_eval};
    use crate::scalar::relative_error;
    use crate::tame::catalog;

    fn ctx() -> ApproxContext {
        ApproxContext::with_precision(128)
    }

    #[test]
    fn gamma_star_limits() {
        let prec = 128;
        // γ*(1, x) = (1 − e^(−x))/x.
        let x = Float::with_val(prec, 0.7);
        let g = gamma_star(&Complex::with_val(prec, 1), &x, prec);
        let want = (1 - Float::with_val(prec, -x.clone()).exp()) / &x;
        assert!(relative_error(&g, &Complex::with_val(prec, want)) < 1e-36);
        // γ*(−n, x) = x^n at nonpositive integers.
        let g = gamma_star(&Complex::with_val(prec, -2), &x, prec);
        assert!(relative_error(&g, &Complex::with_val(prec, x.clone().square())) < 1e-36);
        let a = Complex::with_val(prec, (0.5, 1.0));
        let _ = gamma_complex(&a, prec).unwrap();
    }

    #[test]
    fn eta_matches_oracle() {
        let c = ctx();
        for s in [Scalar::ratio(-1, 2), Scalar::ratio(1, 4), Scalar::int(2), Scalar::approx(Complex::with_val(160, (0.5, 2.0)))] {
            let a = incgamma_eval(&catalog::eta(), &s, &Scalar::one(), &c).unwrap();
            let b = oracle_eval(&catalog::eta(), &s, &Scalar::one(), &c).unwrap();
            assert!(relative_error(&a.value, &b.value) < 1e-25, "s = {s}");
        }
    }

    #[test]
    fn central_binomial_matches_continuation() {
        let c = ctx();
        let desc = catalog::central_binomial(192);
        for s in [Scalar::ratio(-3, 2), Scalar::ratio(1, 3)] {
            let a = incgamma_eval(&desc, &s, &Scalar::ratio(1, 2), &c).unwrap();
            let b = continue_dirichlet(&desc, &s, &Scalar::ratio(1, 2), &c).unwrap();
            assert!(relative_error(&a.value, &b.value) < 1e-24, "s = {s}");
        }
    }

    #[test]
    fn pole_at_one_is_rejected() {
        assert!(incgamma_eval(&catalog::hurwitz(), &Scalar::int(2), &Scalar::one(), &ctx()).is_err());
    }
}
