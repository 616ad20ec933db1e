//! Direct summation of D_α(s,t) in its half-plane of convergence.
//!
//! The coefficients split as a_(n+1) = U(n) + G(n), where U comes from the
//! poles on the unit circle and is quasi-polynomial, and G decays
//! geometrically. The partial sum runs to N; the U-tail is summed exactly
//! through Hurwitz values and the G-tail is bounded.

use rug::{Complex, Float};

use super::hurwitz::{quasi_polynomial_tail, root_order};
use super::{positive_real, pow_neg, CompensatedSum, EvalResult};
use crate::error::{Error, Result};
use crate::scalar::{abs_f64, lcm_u32, ApproxContext, Scalar};
use crate::tame::{coeffs, laurent_at_one, partial_fractions, BuiltinKind, PoleTerm, TameDescriptor};

/// Unit-circle poles (z = 1 included) and the decay data of the rest.
#[derive(Clone, Debug)]
pub struct UnitCircleSplit {
    pub poles: Vec<PoleTerm>,
    /// Common period of the roots of unity.
    pub period: u32,
    /// Degree of the quasi-polynomial U.
    pub degree: usize,
    /// Smallest modulus among the remaining singularities.
    pub rho: f64,
    /// Polynomial growth order of G, as a pole order.
    pub outer_order: usize,
    /// G is geometric from this index on.
    pub start: u64,
}

impl UnitCircleSplit {
    /// U(n) = Σ_q Σ_m c_(q,m) (−q)^(−m) C(n+m−1, m−1) q^(−n).
    pub fn coefficient(&self, n: u64) -> Scalar {
        let mut acc = Scalar::zero();
        for p in &self.poles {
            let qinv = p.q.inv();
            let order = root_order(&p.q).unwrap_or(1) as u64;
            let qn = qinv.pow((n % order) as u32);
            let neg_qinv = -&qinv;
            let mut pw = Scalar::one();
            for (idx, c) in p.coeffs.iter().enumerate() {
                let m = idx as u64 + 1;
                pw = &pw * &neg_qinv;
                if c.is_zero() {
                    continue;
                }
                let b = Scalar::rational(crate::scalar::binomial(n + m - 1, m - 1));
                acc = &acc + &(&(&(c * &pw) * &b) * &qn);
            }
        }
        acc
    }
}

fn half() -> Scalar {
    Scalar::ratio(-1, 2)
}

/// Splits α into its unit-circle poles and a geometrically decaying remainder.
pub fn unit_circle_split(desc: &TameDescriptor) -> Result<UnitCircleSplit> {
    match desc {
        TameDescriptor::Builtin {
            kind: BuiltinKind::CentralBinomial,
            ..
        } => Ok(UnitCircleSplit {
            poles: Vec::new(),
            period: 1,
            degree: 0,
            rho: 4.0,
            outer_order: 2,
            start: 0,
        }),
        TameDescriptor::Builtin {
            kind: BuiltinKind::ZetaEven,
            ..
        } => Ok(UnitCircleSplit {
            poles: vec![
                PoleTerm { q: Scalar::one(), coeffs: vec![half()] },
                PoleTerm { q: Scalar::int(-1), coeffs: vec![half()] },
            ],
            period: 2,
            degree: 0,
            rho: 2.0,
            outer_order: 1,
            start: 0,
        }),
        _ => {
            let r = desc.rational_fn()?.expect("rational");
            let form = partial_fractions(r.num(), r.den(), desc.precision())?;
            let mut poles = Vec::new();
            let mut period = 1;
            let mut degree = 0;
            if !form.principal.is_empty() {
                degree = form.principal.len() - 1;
                poles.push(PoleTerm {
                    q: Scalar::one(),
                    coeffs: form.principal.clone(),
                });
            }
            let mut rho = f64::INFINITY;
            let mut outer_order = 1;
            for p in &form.poles {
                let m = p.q.abs_f64();
                if (m - 1.0).abs() < 1e-12 {
                    let k = root_order(&p.q).ok_or_else(|| {
                        Error::unsupported(format!("unit-circle pole {} is not an exact root of unity", p.q))
                    })?;
                    period = lcm_u32(period, k);
                    degree = degree.max(p.coeffs.len() - 1);
                    poles.push(p.clone());
                } else {
                    rho = rho.min(m);
                    outer_order = outer_order.max(p.coeffs.len());
                }
            }
            let start = form.poly.degree().map_or(0, |d| d as u64 + 1);
            Ok(UnitCircleSplit {
                poles,
                period,
                degree,
                rho,
                outer_order,
                start,
            })
        }
    }
}

/// ln of a bound on Σ_(n≥N) |G(n)| (t+n)^(−σ), fitted on |G| just below N.
fn log_tail_bound(g: &[(u64, f64)], split: &UnitCircleSplit, big_n: u64, t: f64, sigma: f64) -> f64 {
    let lr = split.rho.ln();
    let k = (split.outer_order - 1) as f64;
    let log_c = g
        .iter()
        .map(|&(n, v)| v.ln() + n as f64 * lr - k * ((n + 1) as f64).ln())
        .fold(f64::NEG_INFINITY, f64::max);
    log_c + k * ((big_n + 1) as f64).ln() - big_n as f64 * lr - sigma * (t + big_n as f64).ln()
        + (split.rho / (split.rho - 1.0)).ln()
        + 4f64.ln()
}

/// Σ a_(n+1) (t+n)^(−s) for Re s > ν + 1/4.
pub fn direct_sum(desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
    let nu = laurent_at_one(desc, 0)?.nu;
    let prec = ctx.precision_bits + 32;
    let sc = s.to_complex(prec);
    let sigma = sc.real().to_f64();
    if sigma <= nu as f64 + 0.25 {
        return Err(Error::invalid(format!(
            "direct summation needs Re s > {} (ν = {nu}), got {sigma}",
            nu as f64 + 0.25
        )));
    }
    let tf = positive_real(t, prec)?;
    let t64 = tf.to_f64();
    let split = unit_circle_split(desc)?;
    let eps = ctx.target_eps;
    let sample = 8u64;
    let (big_n, bound, a) = if split.rho.is_infinite() {
        let n = split.start.max(1);
        (n, 0.0, coeffs(desc, n as usize)?)
    } else {
        let mut n = ((1e3 / eps).ln() / split.rho.ln()).ceil() as u64 + split.start + sample;
        loop {
            if n as usize > ctx.max_terms {
                return Err(Error::SlowConvergence {
                    terms: ctx.max_terms,
                    last_change: f64::NAN,
                });
            }
            let a = coeffs(desc, n as usize)?;
            let g: Vec<(u64, f64)> = (n - sample..n)
                .map(|k| (k, (&a[k as usize] - &split.coefficient(k)).abs_f64()))
                .collect();
            let lb = log_tail_bound(&g, &split, n, t64, sigma);
            if lb <= (eps / 4.0).ln() {
                break (n, lb.exp(), a);
            }
            n = (2 * n).min(ctx.max_terms as u64 + 1);
        }
    };
    let mut partial = CompensatedSum::new(prec);
    for (n, an) in a.iter().enumerate().take(big_n as usize) {
        if an.is_zero() {
            continue;
        }
        let x = Float::with_val(prec, &tf + n as u32);
        partial.add(&(pow_neg(&x, &sc, prec) * an.to_complex(prec)));
    }
    let mut flags = Vec::new();
    let mut value = partial.value();
    if !split.poles.is_empty() {
        let f = |n: u64| split.coefficient(n);
        let (tail, fl) = quasi_polynomial_tail(&f, big_n, split.period, split.degree, &sc, t, ctx)?;
        value += tail;
        flags = fl;
    }
    let mut res = EvalResult::new(Complex::with_val(ctx.precision_bits, value), "direct", big_n as usize, bound);
    for fl in flags {
        res = res.with_flag(fl);
    }
    if abs_f64(&res.value).is_nan() {
        return Err(Error::numeric("direct summation produced NaN"));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{pi, relative_error};
    use crate::tame::catalog;
    use proptest::prelude::*;

    fn ctx() -> ApproxContext {
        ApproxContext::with_precision(128)
    }

    #[test]
    fn split_reproduces_coefficients() {
        for name in catalog::NAMES {
            let desc = catalog::default_member(name, 128).unwrap();
            let split = unit_circle_split(&desc).unwrap();
            let a = coeffs(&desc, 60).unwrap();
            if split.rho.is_infinite() {
                for n in split.start..60 {
                    assert!(consistent(&a[n as usize], &split.coefficient(n)), "{name} at {n}");
                }
            } else {
                // The remainder decays at least like ρ^(−n) up to a polynomial factor.
                let g = (&a[59] - &split.coefficient(59)).abs_f64();
                assert!(g < 60f64.powi(2) * split.rho.powi(-59) * 10.0, "{name}: {g}");
            }
        }
    }

    fn consistent(a: &Scalar, b: &Scalar) -> bool {
        (a - b).abs_f64() < 1e-30
    }

    #[test]
    fn hurwitz_at_two() {
        let v = direct_sum(&catalog::hurwitz(), &Scalar::int(2), &Scalar::one(), &ctx()).unwrap();
        let want = Complex::with_val(128, pi(128).square() / 6u32);
        assert!(relative_error(&v.value, &want) < 1e-35);
    }

    #[test]
    fn central_binomial_at_two() {
        let v = direct_sum(&catalog::central_binomial(160), &Scalar::int(2), &Scalar::one(), &ctx()).unwrap();
        let want = Complex::with_val(128, pi(128).square() / 18u32);
        assert!(relative_error(&v.value, &want) < 1e-25);
        assert!(v.tail_bound <= ctx().target_eps);
    }

    #[test]
    fn zeta_even_at_two_has_bounded_tail() {
        // Σ_(k≥1) ζ(2k)(2k)^(−2) = Σ_j Σ_k j^(−2k)/(4k²) = Σ_j Li_2(1/j²)/4.
        let v = direct_sum(&catalog::zeta_even(160), &Scalar::int(2), &Scalar::one(), &ctx()).unwrap();
        assert!(v.tail_bound <= ctx().target_eps);
        let mut want = std::f64::consts::PI.powi(2) / 24.0;
        for j in 2..200000u64 {
            let x = 1.0 / (j as f64 * j as f64);
            let mut li = 0.0;
            let mut p = x;
            for k in 1..60 {
                li += p / (k * k) as f64;
                p *= x;
                if p < 1e-30 {
                    break;
                }
            }
            want += li / 4.0;
        }
        assert!((v.value.real().to_f64() - want).abs() < 1e-5);
    }

    #[test]
    fn region_is_enforced() {
        let err = direct_sum(&catalog::hurwitz(), &Scalar::one(), &Scalar::one(), &ctx());
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn direct_agrees_with_oracle(re in 1.5f64..4.0, im in -4.0f64..4.0, tn in 1i64..8) {
            let s = Scalar::approx(Complex::with_val(160, (re, im)));
            let t = Scalar::ratio(tn, 4);
            for desc in [catalog::hurwitz(), catalog::eta(), catalog::dirichlet_l(4, vec![Scalar::int(1), Scalar::zero(), Scalar::int(-1), Scalar::zero()])] {
                let a = direct_sum(&desc, &s, &t, &ctx()).unwrap();
                let b = super::super::oracle_eval(&desc, &s, &t, &ctx()).unwrap();
                prop_assert!(relative_error(&a.value, &b.value) < 1e-24);
            }
        }
    }
}
