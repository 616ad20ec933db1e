//! Hurwitz zeta by Euler–Maclaurin summation, and the exact reduction of
//! quasi-polynomial coefficient sequences to Hurwitz values.

use rug::{Complex, Float};

use super::{circle_mean, circle_nodes, positive_real, pow_neg, CompensatedSum, EvalFlag, EvalResult};
use crate::bernoulli::bernoulli_number;
use crate::error::{Error, Result};
use crate::scalar::{abs_f64, lcm_u32, ApproxContext, Integer, Scalar};
use crate::series::Poly;
use crate::tame::{coeffs, denominator_roots, TameDescriptor};

/// ζ(s, a) = Σ_(k≥0) (a+k)^(−s) for real a > 0 and s ≠ 1.
pub fn hurwitz_zeta(s: &Complex, a: &Float, prec: u32) -> Result<Complex> {
    if *a <= 0 {
        return Err(Error::invalid("Hurwitz parameter must be positive"));
    }
    if s.imag().is_zero() && *s.real() == 1 {
        return Err(Error::numeric("ζ(s, a) has a pole at s = 1"));
    }
    let s_abs = abs_f64(s);
    let re = s.real().to_f64();
    let n = (0.3 * prec as f64 + s_abs + 10.0).ceil() as u32;
    let af = a.to_f64();
    let guard = if re < 0.0 { (-re * (af + n as f64).log2()).ceil() as u32 } else { 0 };
    let wp = prec + 32 + guard;
    let s = Complex::with_val(wp, s);
    let a = Float::with_val(wp, a);
    let mut sum = CompensatedSum::new(wp);
    for k in 0..n {
        let x = Float::with_val(wp, &a + k);
        sum.add(&pow_neg(&x, &s, wp));
    }
    let x = Float::with_val(wp, &a + n);
    let xs = pow_neg(&x, &s, wp);
    let s_minus_1 = Complex::with_val(wp, &s - 1u32);
    sum.add(&(Complex::with_val(wp, &xs * &x) / &s_minus_1));
    sum.add(&Complex::with_val(wp, &xs / 2u32));

    let x2 = Float::with_val(wp, x.square_ref());
    let mut xp = Complex::with_val(wp, &xs / &x);
    let mut rise = s.clone();
    let mut fact = Integer::from(2);
    let scale = abs_f64(&xs).max(1e-300);
    let tiny = 2f64.powi(-(wp as i32) - 4);
    let mut last = f64::INFINITY;
    for j in 1..=(2 * wp as usize) {
        let b = Float::with_val(wp, &bernoulli_number(2 * j)) / Float::with_val(wp, &fact);
        let term = Complex::with_val(wp, &rise * &xp) * b;
        let mag = abs_f64(&term);
        if j > 2 && mag > last {
            return Err(Error::numeric("Euler–Maclaurin terms stopped decreasing"));
        }
        sum.add(&term);
        if mag <= tiny * scale.max(abs_f64(&sum.value())) {
            return Ok(Complex::with_val(prec, sum.value()));
        }
        last = mag;
        let k = 2 * j as u32;
        rise *= Complex::with_val(wp, &s + (k - 1));
        rise *= Complex::with_val(wp, &s + k);
        xp /= &x2;
        fact *= (k + 1) * (k + 2);
    }
    Err(Error::numeric("Euler–Maclaurin series did not converge"))
}

/// ζ(s, t) with a near-pole check at s = 1.
pub fn hurwitz_oracle(s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
    let prec = ctx.precision_bits;
    let sc = s.to_complex(prec + 32);
    let dist = abs_f64(&Complex::with_val(prec + 32, &sc - 1u32));
    if dist < ctx.near_pole_radius() {
        return Err(Error::NearPole {
            s: s.to_string(),
            pole: 1,
            residue: "1".into(),
            radius: ctx.near_pole_radius(),
        });
    }
    let a = positive_real(t, prec + 32)?;
    let v = hurwitz_zeta(&sc, &a, prec + (-dist.log2()).max(0.0).ceil() as u32)?;
    Ok(EvalResult::new(Complex::with_val(prec, v), "hurwitz", 0, 2f64.powi(-(prec as i32))))
}

/// Smallest k with q^k = 1, for an exact root of unity.
pub(crate) fn root_order(q: &Scalar) -> Option<u32> {
    if !q.is_exact() || (q.abs_f64() - 1.0).abs() > 1e-9 {
        return None;
    }
    let one = Scalar::one();
    let mut p = q.clone();
    for k in 1..=1u32 << 16 {
        if p == one {
            return Some(k);
        }
        p = &p * q;
    }
    None
}

/// Newton interpolation through (j, y_j), j = 0..values.len()−1, as a polynomial in j.
fn interpolate(values: &[Scalar]) -> Poly {
    let mut diffs = values.to_vec();
    let mut result = Poly::zero();
    let mut basis = Poly::constant(Scalar::one());
    for k in 0..values.len() {
        result = &result + &basis.scale(&diffs[0]);
        for i in 0..diffs.len() - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
        let lin = Poly::new(vec![Scalar::int(-(k as i64)), Scalar::one()]).scale(&Scalar::ratio(1, k as i64 + 1));
        basis = &basis * &lin;
    }
    result
}

fn consistent(a: &Scalar, b: &Scalar, prec: u32) -> bool {
    if a.is_exact() && b.is_exact() {
        return a == b;
    }
    let d = (a - b).abs_f64();
    d <= 2f64.powi(-(prec as i32) / 2) * a.abs_f64().max(1.0)
}

/// Σ_(n≥n0) f(n) (t+n)^(−s) for a quasi-polynomial f of the given period and
/// degree, reduced to Hurwitz values. Removable singularities of the
/// individual terms are handled by a circle mean.
pub fn quasi_polynomial_tail(
    f: &dyn Fn(u64) -> Scalar,
    n0: u64,
    period: u32,
    degree: usize,
    s: &Complex,
    t: &Scalar,
    ctx: &ApproxContext,
) -> Result<(Complex, Vec<EvalFlag>)> {
    let prec = ctx.precision_bits + 32;
    positive_real(t, prec)?;
    let big_l = Scalar::int(period as i64);
    // Q_r(u) = Σ_l γ_(l,r) u^l with f(n0 + r + L j) = Q_r(j + c_r).
    let mut parts: Vec<(Scalar, Poly)> = Vec::new();
    for r in 0..period as u64 {
        let samples: Vec<Scalar> = (0..=degree as u64 + 1).map(|j| f(n0 + r + period as u64 * j)).collect();
        let p = interpolate(&samples[..=degree]);
        let check = p.eval(&Scalar::int(degree as i64 + 1));
        if !consistent(&check, &samples[degree + 1], ctx.precision_bits) {
            return Err(Error::numeric("coefficients are not quasi-polynomial with the expected period"));
        }
        let c = &(t + &Scalar::int((n0 + r) as i64)) / &big_l;
        let q = p.shift(&-&c);
        parts.push((c, q));
    }
    let max_l = parts.iter().filter_map(|(_, q)| q.degree()).max().unwrap_or(0);
    let mut pole_info = Vec::new();
    for l in 0..=max_l {
        let active = parts.iter().any(|(_, q)| !q.coeff(l).is_zero());
        if !active {
            continue;
        }
        let total = parts.iter().fold(Scalar::zero(), |acc, (_, q)| &acc + &q.coeff(l));
        let residue = &total / &big_l.pow(l as u32 + 1);
        pole_info.push((l + 1, residue));
    }
    let radius = ctx.near_pole_radius();
    let mut nearest: Option<(f64, usize, Scalar)> = None;
    for (p, res) in &pole_info {
        let d = abs_f64(&Complex::with_val(prec, s - *p as u32));
        if nearest.as_ref().is_none_or(|(bd, _, _)| d < *bd) {
            nearest = Some((d, *p, res.clone()));
        }
    }
    let eval = |z: &Complex, wp: u32| -> Result<Complex> {
        let lf = Float::with_val(wp, period);
        let scale = pow_neg(&lf, z, wp);
        let mut acc = CompensatedSum::new(wp);
        for (c, q) in &parts {
            let a = positive_real(c, wp)?;
            for (l, g) in q.coeffs().iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let zl = Complex::with_val(wp, z - l as u32);
                acc.add(&(hurwitz_zeta(&zl, &a, wp)? * g.to_complex(wp)));
            }
        }
        Ok(acc.value() * scale)
    };
    match nearest {
        Some((d, p, res)) if d < radius => {
            if !res.is_negligible(ctx.precision_bits / 2) {
                return Err(Error::NearPole {
                    s: crate::scalar::format_complex(s, 20),
                    pole: p,
                    residue: res.to_string(),
                    radius,
                });
            }
            let v = circle_mean(s, 0.25, circle_nodes(prec), prec, |z| eval(z, prec))?;
            Ok((v, vec![EvalFlag::Removable]))
        }
        Some((d, _, _)) => {
            let extra = (-d.log2()).max(0.0).ceil() as u32;
            Ok((eval(s, prec + extra)?, Vec::new()))
        }
        None => Ok((eval(s, prec)?, Vec::new())),
    }
}

/// Period and degree of the coefficient quasi-polynomial of a rational
/// generator whose poles all lie at roots of unity.
pub(crate) fn cyclotomic_shape(desc: &TameDescriptor) -> Result<(u32, usize, u64)> {
    let r = desc
        .rational_fn()?
        .ok_or_else(|| Error::unsupported(format!("{} is not rational", desc.kind_name())))?;
    let roots = denominator_roots(r.den(), desc.precision())?;
    let mut period = 1u32;
    let mut mult = 0usize;
    for root in &roots {
        let k = root_order(&root.q)
            .ok_or_else(|| Error::unsupported(format!("pole {} is not a root of unity", root.q)))?;
        period = lcm_u32(period, k);
        mult = mult.max(root.multiplicity);
    }
    let dn = r.num().degree().unwrap_or(0);
    let dd = r.den().degree().unwrap_or(0);
    let n0 = if !r.num().is_zero() && dn >= dd { (dn - dd + 1) as u64 } else { 0 };
    Ok((period, mult.saturating_sub(1), n0))
}

/// D_α(s,t) for a rational α with cyclotomic denominator, from the exact
/// quasi-polynomial form of its coefficients and Hurwitz values.
pub fn oracle_eval(desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
    let (period, degree, n0) = cyclotomic_shape(desc)?;
    let count = n0 as usize + period as usize * (degree + 2);
    let a = coeffs(desc, count)?;
    let prec = ctx.precision_bits + 32;
    let sc = s.to_complex(prec);
    let tf = positive_real(t, prec)?;
    let mut prefix = CompensatedSum::new(prec);
    for (n, an) in a.iter().take(n0 as usize).enumerate() {
        let x = Float::with_val(prec, &tf + n as u32);
        prefix.add(&(pow_neg(&x, &sc, prec) * an.to_complex(prec)));
    }
    let f = |n: u64| a[n as usize].clone();
    let (tail, flags) = quasi_polynomial_tail(&f, n0, period, degree, &sc, t, ctx)?;
    let value = Complex::with_val(ctx.precision_bits, prefix.value() + tail);
    let mut res = EvalResult::new(value, "oracle", count, 2f64.powi(-(ctx.precision_bits as i32)));
    for fl in flags {
        res = res.with_flag(fl);
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{pi, relative_error};
    use crate::tame::catalog;

    fn ctx() -> ApproxContext {
        ApproxContext::with_precision(128)
    }

    #[test]
    fn zeta_two_and_negative_values() {
        let prec = 128;
        let one = Float::with_val(prec, 1);
        let z2 = hurwitz_zeta(&Complex::with_val(prec, 2), &one, prec).unwrap();
        let want = Complex::with_val(prec, pi(prec).square() / 6u32);
        assert!(relative_error(&z2, &want) < 1e-36);
        let zm1 = hurwitz_zeta(&Complex::with_val(prec, -1), &one, prec).unwrap();
        assert!(relative_error(&zm1, &Complex::with_val(prec, (-1.0 / 12.0, 0))) < 1e-15);
        let exact = Complex::with_val(prec, -1) / 12u32;
        assert!(relative_error(&zm1, &exact) < 1e-36);
    }

    #[test]
    fn half_parameter_at_zero_vanishes() {
        let prec = 128;
        let half = Float::with_val(prec, 0.5);
        let v = hurwitz_zeta(&Complex::with_val(prec, 0), &half, prec).unwrap();
        assert!(abs_f64(&v) < 1e-36);
    }

    #[test]
    fn shift_recurrence_off_axis() {
        let prec = 128;
        let s = Complex::with_val(prec, (0.5, 3.0));
        let a = Float::with_val(prec, 0.3);
        let lhs = hurwitz_zeta(&s, &a, prec).unwrap();
        let a1 = Float::with_val(prec, &a + 1u32);
        let rhs = hurwitz_zeta(&s, &a1, prec).unwrap() + pow_neg(&a, &s, prec);
        assert!(relative_error(&lhs, &rhs) < 1e-35);
    }

    #[test]
    fn oracle_near_pole_is_flagged() {
        let err = hurwitz_oracle(&Scalar::one(), &Scalar::one(), &ctx()).unwrap_err();
        assert!(matches!(err, Error::NearPole { pole: 1, .. }));
    }

    #[test]
    fn interpolation_is_exact() {
        let vals: Vec<Scalar> = (0..4).map(|j| Scalar::int(j * j * j - 2 * j + 5)).collect();
        let p = interpolate(&vals);
        assert_eq!(p, Poly::from_ints(&[5, -2, 0, 1]));
    }

    #[test]
    fn eta_oracle_at_two() {
        // η(2) = π²/12.
        let v = oracle_eval(&catalog::eta(), &Scalar::int(2), &Scalar::one(), &ctx()).unwrap();
        let prec = 128;
        let want = Complex::with_val(prec, pi(prec).square() / 12u32);
        assert!(relative_error(&v.value, &want) < 1e-36);
    }

    #[test]
    fn eta_oracle_at_one_is_removable() {
        let v = oracle_eval(&catalog::eta(), &Scalar::one(), &Scalar::one(), &ctx()).unwrap();
        let want = Complex::with_val(128, Float::with_val(128, 2).ln());
        assert!(relative_error(&v.value, &want) < 1e-30);
        assert!(v.flags.contains(&EvalFlag::Removable));
    }

    #[test]
    fn barnes_oracle_matches_hurwitz_combination() {
        // Σ (n+1)(n+1)^(−s) at t = 1 is ζ(s−1).
        let s = Scalar::ratio(7, 2);
        let v = oracle_eval(&catalog::barnes(&[1, 1]), &s, &Scalar::one(), &ctx()).unwrap();
        let prec = 128;
        let want = hurwitz_zeta(&Complex::with_val(prec, 2.5), &Float::with_val(prec, 1), prec).unwrap();
        assert!(relative_error(&v.value, &want) < 1e-35);
    }

    #[test]
    fn non_cyclotomic_denominator_is_rejected() {
        let err = oracle_eval(&catalog::lerch(Scalar::ratio(1, 2)), &Scalar::int(2), &Scalar::one(), &ctx());
        assert!(matches!(err, Err(Error::Unsupported(_))));
    }
}
