//! Hasse-type evaluation of the continuation through the multi-power expansion.
//!
//! With (−ln z)^ν α(z) = Σ c_i Π_j x_(e_j)^(i_j), the entire function
//! H(s,t) = Σ c_i Π_j Δ_(e_j)^(i_j) t^(−s) satisfies
//! D_α(s,t) = H(s−ν, t) / ((s−ν)(s−ν+1)…(s−1)).
//! Convergence is accelerated by summing N leading terms explicitly and
//! applying the operator to the tail generator at t + N.

use rug::{Complex, Float};

use super::{
    circle_mean, circle_nodes, is_nonpositive_integer, positive_real, pow_neg, rising, CompensatedSum, EvalFlag,
    EvalResult,
};
use crate::continuation::analyze;
use crate::error::{Error, Result};
use crate::scalar::{abs_f64, format_complex, ApproxContext, Integer, Scalar};
use crate::series::Poly;
use crate::tame::{
    build_multipower, coeffs, laurent_at_one, plan_exponents, MultiPowerExpansion, SingularityPlan, TameDescriptor,
    DEFAULT_MARGIN,
};

/// The operator Σ c_i Π_j Δ_(e_j)^(i_j) written as Σ_σ P_σ S^σ with S the unit shift.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftAccumulator {
    weights: Vec<Scalar>,
}

impl ShiftAccumulator {
    /// Weights for the expansion truncated at `order` in every variable.
    /// Arithmetic is exact when `prec` is None and in floats otherwise.
    pub fn new(mp: &MultiPowerExpansion, order: usize, prec: Option<u32>) -> Result<Self> {
        if prec.is_none() && !mp.is_exact() {
            return Err(Error::invalid("exact shift weights need an exact expansion"));
        }
        let conv = |x: &Scalar| match prec {
            Some(p) => x.to_approx(p),
            None => x.clone(),
        };
        let minus_one = Scalar::int(-1);
        let mut total = Poly::zero();
        for term in &mp.terms {
            let mut acc = Poly::constant(conv(&term.coeff));
            for (var, f) in &term.factors {
                let e = mp.exponents[*var] as usize;
                let k = order.min(f.order());
                let fp = Poly::new(f.coeffs()[..=k].iter().map(conv).collect());
                // Σ f_i (S^e − 1)^i = f(S^e − 1).
                let w = fp.shift(&minus_one);
                let len = w.coeffs().len();
                if len == 0 {
                    acc = Poly::zero();
                    break;
                }
                let mut spread = vec![Scalar::zero(); (len - 1) * e + 1];
                for (i, c) in w.coeffs().iter().enumerate() {
                    spread[i * e] = c.clone();
                }
                acc = &Poly::new(spread) * &acc;
            }
            total = &total + &acc;
        }
        Ok(ShiftAccumulator {
            weights: total.coeffs().to_vec(),
        })
    }

    /// P_σ indexed by the shift σ.
    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn max_shift(&self) -> usize {
        self.weights.len().saturating_sub(1)
    }

    /// Σ_σ P_σ (t+σ)^(−s), summed in ascending σ with compensation.
    pub fn evaluate(&self, s: &Complex, t: &Float, prec: u32) -> Complex {
        let mut sum = CompensatedSum::new(prec);
        for (sig, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let x = Float::with_val(prec, t + sig as u32);
            sum.add(&(pow_neg(&x, s, prec) * w.to_complex(prec)));
        }
        sum.value()
    }

    /// Σ_σ P_σ (t+σ)^m, the operator applied to t^m.
    pub fn evaluate_power(&self, m: u32, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (sig, w) in self.weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let x = t + &Scalar::int(sig as i64);
            acc = &acc + &(w * &x.pow(m));
        }
        acc
    }
}

fn log2_abs(x: &Scalar) -> f64 {
    let v = x.abs_f64();
    if v == 0.0 {
        f64::NEG_INFINITY
    } else {
        v.log2()
    }
}

/// log2 of a bound on Σ_σ |P_σ|.
fn weight_bits(mp: &MultiPowerExpansion, order: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for term in &mp.terms {
        let mut b = log2_abs(&term.coeff);
        for (_, f) in &term.factors {
            let k = order.min(f.order());
            let m = (0..=k)
                .map(|i| log2_abs(&f.coeff(i)) + i as f64)
                .fold(f64::NEG_INFINITY, f64::max);
            b += m + ((k + 1) as f64).log2();
        }
        if b.is_finite() {
            worst = worst.max(b);
        }
    }
    worst
}

/// Plain Hasse evaluation of H(s,t) with the given expansion, without shift.
/// At s = 0, −1, −2, … the sum is finite and exact for exact input.
pub fn hasse_eval(mp: &MultiPowerExpansion, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
    let order = mp.max_order();
    if let Some(m) = is_nonpositive_integer(s) {
        if (m as usize) <= order {
            return finite_sum(mp, m as u32, t, ctx);
        }
    }
    let bits = weight_bits(mp, order).ceil() as u32;
    let prec = ctx.precision_bits + 64 + bits;
    let sc = s.to_complex(prec);
    let tf = positive_real(t, prec)?;
    let full = ShiftAccumulator::new(mp, order, Some(prec))?.evaluate(&sc, &tf, prec);
    let half = ShiftAccumulator::new(mp, order / 2, Some(prec))?.evaluate(&sc, &tf, prec);
    let diff = abs_f64(&Complex::with_val(prec, &full - &half));
    Ok(EvalResult::new(Complex::with_val(ctx.precision_bits, full), "hasse", order, diff))
}

fn finite_sum(mp: &MultiPowerExpansion, m: u32, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
    let exact = mp.is_exact() && t.is_exact();
    let prec = ctx.precision_bits + 64 + weight_bits(mp, m as usize).ceil() as u32;
    let acc = ShiftAccumulator::new(mp, m as usize, if exact { None } else { Some(prec) })?;
    let t = if exact { t.clone() } else { t.to_approx(prec) };
    let v = acc.evaluate_power(m, &t);
    let mut res = EvalResult::new(v.to_complex(ctx.precision_bits), "hasse", m as usize, 0.0);
    if exact {
        res.exact = Some(v);
        res = res.with_flag(EvalFlag::Exact);
    }
    Ok(res)
}

/// Shift-accelerated evaluator for one descriptor, reusable across arguments.
pub struct HasseEvaluator {
    desc: TameDescriptor,
    tail: TameDescriptor,
    plan: SingularityPlan,
    nu: usize,
    shift: usize,
    prefix: Vec<Scalar>,
    ctx: ApproxContext,
    levels: Vec<(usize, ShiftAccumulator, u32)>,
}

impl HasseEvaluator {
    /// Evaluator tuned for arguments with |s| ≤ s_bound.
    pub fn new(desc: &TameDescriptor, s_bound: f64, ctx: &ApproxContext) -> Result<Self> {
        let nu = laurent_at_one(desc, 0)?.nu;
        let shift = (0.25 * ctx.precision_bits as f64).ceil() as usize + s_bound.ceil() as usize + 8;
        let big_t = shift as f64 + 1.0;
        let eps_tail = ctx.target_eps * 1e-3 / big_t.powf(s_bound + nu as f64);
        // Generators without a closed tail form and no pole at 1 converge
        // geometrically without the shift.
        let (shift, tail) = match desc.shifted(shift, eps_tail) {
            Ok(tail) => (shift, tail),
            Err(Error::Unsupported(_)) if nu == 0 => (0, desc.clone()),
            Err(e) => return Err(e),
        };
        let plan = plan_exponents(&tail, DEFAULT_MARGIN)?;
        let prefix = coeffs(desc, shift)?;
        Ok(HasseEvaluator {
            desc: desc.clone(),
            tail,
            plan,
            nu,
            shift,
            prefix,
            ctx: ctx.clone(),
            levels: Vec::new(),
        })
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    fn level(&mut self, m: usize) -> Result<usize> {
        if let Some(i) = self.levels.iter().position(|(k, _, _)| *k == m) {
            return Ok(i);
        }
        let mp = build_multipower(&self.tail, &self.plan, m)?;
        let wp = self.ctx.precision_bits + 96 + weight_bits(&mp, m).ceil() as u32;
        let acc = ShiftAccumulator::new(&mp, m, Some(wp))?;
        self.levels.push((m, acc, wp));
        Ok(self.levels.len() - 1)
    }

    /// H_N(s, T) for the tail generator, with adaptive truncation.
    fn tail_h(&mut self, s: &Complex, big_t: &Float) -> Result<(Complex, usize, f64)> {
        let eps = self.ctx.target_eps;
        let neg = (-s.real().to_f64()).max(0.0);
        let mut prev: Option<Complex> = None;
        let mut m = 16;
        loop {
            let i = self.level(m)?;
            let (_, acc, wp) = &self.levels[i];
            let ratio = (big_t.to_f64() + acc.max_shift() as f64) / big_t.to_f64();
            let ep = wp + (neg * ratio.log2()).ceil() as u32;
            let h = acc.evaluate(s, big_t, ep);
            if let Some(p) = &prev {
                let diff = abs_f64(&Complex::with_val(ep, &h - p));
                if diff <= eps * abs_f64(&h).max(1.0) / 16.0 {
                    return Ok((h, m, diff));
                }
                if 2 * m > self.ctx.max_terms {
                    return Err(Error::SlowConvergence {
                        terms: m,
                        last_change: diff,
                    });
                }
            }
            prev = Some(h);
            m *= 2;
        }
    }

    fn working_precision(&self, s: &Complex) -> u32 {
        let neg = (-s.real().to_f64()).max(0.0);
        self.ctx.precision_bits + 32 + (neg * (self.shift as f64 + 2.0).log2()).ceil() as u32
    }

    fn prefix_sum(&self, sigma: &Complex, t: &Float, prec: u32) -> Complex {
        let mut sum = CompensatedSum::new(prec);
        for (n, a) in self.prefix.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let x = Float::with_val(prec, t + n as u32);
            sum.add(&(pow_neg(&x, sigma, prec) * a.to_complex(prec)));
        }
        sum.value()
    }

    /// H(s,t) = s(s+1)…(s+ν−1)·Σ_(n<N) a_(n+1)(t+n)^(−s−ν) + H_N(s, t+N).
    pub fn hasse_value(&mut self, s: &Scalar, t: &Scalar) -> Result<EvalResult> {
        if let Some(m) = is_nonpositive_integer(s) {
            if let Ok(r) = self.exact_h(m as u32, t) {
                return Ok(r);
            }
        }
        let sc = s.to_complex(self.ctx.precision_bits + 32);
        let prec = self.working_precision(&sc);
        let sc = s.to_complex(prec);
        let tf = positive_real(t, prec)?;
        let big_t = Float::with_val(prec, &tf + self.shift as u32);
        let sigma = Complex::with_val(prec, &sc + self.nu as u32);
        let head = self.prefix_sum(&sigma, &tf, prec) * rising(&sc, self.nu, prec);
        let (h, m, diff) = self.tail_h(&sc, &big_t)?;
        let v = Complex::with_val(self.ctx.precision_bits, head + h);
        Ok(EvalResult::new(v, "hasse", m, diff))
    }

    /// H(−m, t) as a finite sum over the unshifted expansion.
    fn exact_h(&self, m: u32, t: &Scalar) -> Result<EvalResult> {
        let plan = plan_exponents(&self.desc, DEFAULT_MARGIN)?;
        let mp = build_multipower(&self.desc, &plan, m as usize)?;
        finite_sum(&mp, m, t, &self.ctx)
    }

    /// D_α(s,t) without pole handling.
    fn d_value(&mut self, s: &Complex, t: &Float) -> Result<(Complex, usize, f64)> {
        let prec = self.working_precision(s);
        let s = Complex::with_val(prec, s);
        let t = Float::with_val(prec, t);
        let big_t = Float::with_val(prec, &t + self.shift as u32);
        let head = self.prefix_sum(&s, &t, prec);
        let sp = Complex::with_val(prec, &s - self.nu as u32);
        let (h, m, diff) = self.tail_h(&sp, &big_t)?;
        let r = rising(&sp, self.nu, prec);
        let scale = abs_f64(&r);
        Ok((head + h / r, m, diff / scale))
    }

    /// D_α(s,t) with pole detection, removable points and exact integer values.
    pub fn continue_at(&mut self, s: &Scalar, t: &Scalar) -> Result<EvalResult> {
        let bits = self.ctx.precision_bits;
        let prec = bits + 32;
        let sc = s.to_complex(prec);
        let tf = positive_real(t, prec)?;
        let radius = self.ctx.near_pole_radius();
        for n in 1..=self.nu {
            let d = abs_f64(&Complex::with_val(prec, &sc - n as u32));
            if d >= radius {
                continue;
            }
            let report = analyze(&self.desc, t, 0)?;
            if let Some(res) = report.residue(n) {
                return Err(Error::NearPole {
                    s: format_complex(&sc, 20),
                    pole: n,
                    residue: res.to_string(),
                    radius,
                });
            }
            let mut worst = 0.0f64;
            let mut terms = 0;
            let v = circle_mean(&sc, 0.25, circle_nodes(prec), prec, |z| {
                let (v, m, b) = self.d_value(z, &tf)?;
                worst = worst.max(b);
                terms = terms.max(m);
                Ok(v)
            })?;
            return Ok(EvalResult::new(Complex::with_val(bits, v), "hasse", terms, worst).with_flag(EvalFlag::Removable));
        }
        if let Some(m) = is_nonpositive_integer(s) {
            if let Ok(r) = self.exact_d(m as u32, t) {
                return Ok(r);
            }
        }
        let (v, m, b) = self.d_value(&sc, &tf)?;
        Ok(EvalResult::new(Complex::with_val(bits, v), "hasse", m, b))
    }

    /// D_α(−m, t) = H(−m−ν, t) / ((−m−ν)(−m−ν+1)…(−m−1)).
    fn exact_d(&self, m: u32, t: &Scalar) -> Result<EvalResult> {
        let k = m + self.nu as u32;
        let mut r = self.exact_h(k, t)?;
        let mut denom = Integer::from(1);
        for j in 0..self.nu as u32 {
            denom *= -(k as i64) + j as i64;
        }
        let d = Scalar::integer(denom);
        r.value = Complex::with_val(self.ctx.precision_bits, &r.value / d.to_complex(self.ctx.precision_bits));
        r.exact = r.exact.map(|v| &v / &d);
        Ok(r)
    }
}

/// H(s,t) through the shift-accelerated evaluator.
pub fn hasse_eval_desc(desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
    HasseEvaluator::new(desc, s.abs_f64(), ctx)?.hasse_value(s, t)
}

/// The continuation D_α(s,t) for any s off the poles.
pub fn continue_dirichlet(desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
    HasseEvaluator::new(desc, s.abs_f64(), ctx)?.continue_at(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::{bernoulli_poly, todd_series};
    use crate::numeval::hurwitz_zeta;
    use crate::scalar::{binomial, pi, relative_error};
    use crate::tame::catalog;
    use proptest::prelude::*;

    fn ctx() -> ApproxContext {
        ApproxContext::with_precision(128)
    }

    fn mp_of(desc: &TameDescriptor, m: usize) -> MultiPowerExpansion {
        let plan = plan_exponents(desc, DEFAULT_MARGIN).unwrap();
        build_multipower(desc, &plan, m).unwrap()
    }

    /// Σ_i c_i Σ_k Π_j (−1)^(i_j−k_j) C(i_j,k_j) (t + Σ_j e_j k_j)^m by direct expansion.
    fn brute_force(mp: &MultiPowerExpansion, order: usize, m: u32, t: &Scalar) -> Scalar {
        fn go(
            mp: &MultiPowerExpansion,
            factors: &[(usize, crate::series::TruncSeries)],
            order: usize,
            shift: i64,
            weight: Scalar,
            m: u32,
            t: &Scalar,
        ) -> Scalar {
            let Some(((var, f), rest)) = factors.split_first() else {
                return &weight * &(t + &Scalar::int(shift)).pow(m);
            };
            let e = mp.exponents[*var] as i64;
            let mut acc = Scalar::zero();
            for i in 0..=order.min(f.order()) {
                let c = f.coeff(i);
                if c.is_zero() {
                    continue;
                }
                for k in 0..=i {
                    let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
                    let b = &Scalar::rational(binomial(i as u64, k as u64)) * &Scalar::int(sign);
                    let w = &(&weight * &c) * &b;
                    acc = &acc + &go(mp, rest, order, shift + e * k as i64, w, m, t);
                }
            }
            acc
        }
        let mut total = Scalar::zero();
        for term in &mp.terms {
            total = &total + &go(mp, &term.factors, order, 0, term.coeff.clone(), m, t);
        }
        total
    }

    #[test]
    fn accumulator_matches_brute_force_exactly() {
        let t = Scalar::ratio(2, 3);
        let descs = [
            catalog::hurwitz(),
            catalog::barnes(&[1, 1]),
            catalog::dirichlet_l(7, catalog::quadratic_character(7)),
            catalog::lerch(Scalar::ratio(1, 2)),
        ];
        for desc in descs {
            let mp = mp_of(&desc, 6);
            let acc = ShiftAccumulator::new(&mp, 6, None).unwrap();
            for m in 0..5 {
                assert_eq!(acc.evaluate_power(m, &t), brute_force(&mp, 6, m, &t), "{}", desc.kind_name());
            }
        }
    }

    #[test]
    fn geometric_hasse_value() {
        // H(1/2, 1) = (1/2) ζ(3/2).
        let v = hasse_eval_desc(&catalog::hurwitz(), &Scalar::ratio(1, 2), &Scalar::one(), &ctx()).unwrap();
        let prec = 128;
        let z = hurwitz_zeta(&Complex::with_val(prec, 1.5), &Float::with_val(prec, 1), prec).unwrap();
        assert!(relative_error(&v.value, &(z / 2u32)) < 1e-25);
    }

    #[test]
    fn integer_anchor_matches_bernoulli() {
        let t = Scalar::ratio(3, 5);
        for desc in [catalog::hurwitz(), catalog::eta(), catalog::barnes(&[1, 2])] {
            let lo = laurent_at_one(&desc, 8).unwrap();
            let todd = todd_series(&lo, 8).unwrap();
            for m in 0..=6u32 {
                let mp = mp_of(&desc, m as usize);
                let h = hasse_eval(&mp, &Scalar::int(-(m as i64)), &t, &ctx()).unwrap();
                let b = bernoulli_poly(&todd, m as usize).unwrap().eval(&t);
                assert_eq!(h.exact, Some(b), "{} m={m}", desc.kind_name());
            }
        }
    }

    #[test]
    fn zeta_values_from_continuation() {
        let c = ctx();
        let prec = 128;
        let v = continue_dirichlet(&catalog::hurwitz(), &Scalar::int(2), &Scalar::one(), &c).unwrap();
        assert!(relative_error(&v.value, &Complex::with_val(prec, pi(prec).square() / 6u32)) < 1e-25);
        let v = continue_dirichlet(&catalog::hurwitz(), &Scalar::int(-1), &Scalar::one(), &c).unwrap();
        assert_eq!(v.exact, Some(Scalar::ratio(-1, 12)));
        let s = Scalar::approx(Complex::with_val(prec, (-1.5, 0.0)));
        let v = continue_dirichlet(&catalog::hurwitz(), &s, &Scalar::ratio(1, 2), &c).unwrap();
        let want = hurwitz_zeta(&Complex::with_val(prec, -1.5), &Float::with_val(prec, 0.5), prec).unwrap();
        assert!(relative_error(&v.value, &want) < 1e-25);
    }

    #[test]
    fn pole_and_removable_points() {
        let c = ctx();
        let err = continue_dirichlet(&catalog::hurwitz(), &Scalar::one(), &Scalar::one(), &c).unwrap_err();
        assert!(matches!(err, Error::NearPole { pole: 1, .. }));
        // Barnes(1,1) at t = 1 is ζ(s−1): s = 1 is removable with value ζ(0) = −1/2.
        let v = continue_dirichlet(&catalog::barnes(&[1, 1]), &Scalar::one(), &Scalar::one(), &c).unwrap();
        assert!(v.flags.contains(&EvalFlag::Removable));
        assert!(relative_error(&v.value, &Complex::with_val(128, -0.5)) < 1e-25);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(6))]
        #[test]
        fn continuation_agrees_with_hurwitz(re in -3.0f64..3.0, im in -5.0f64..5.0, tn in 1i64..8) {
            prop_assume!((re - 1.0).abs() > 0.1 || im.abs() > 0.1);
            let prec = 128;
            let s = Scalar::approx(Complex::with_val(prec + 64, (re, im)));
            let t = Scalar::ratio(tn, 3);
            let v = continue_dirichlet(&catalog::hurwitz(), &s, &t, &ctx()).unwrap();
            let a = Float::with_val(prec, tn) / 3u32;
            let want = hurwitz_zeta(&s.to_complex(prec), &a, prec).unwrap();
            prop_assert!(relative_error(&v.value, &want) < 1e-24);
        }
    }
}
