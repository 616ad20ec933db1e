//! Product-form expansion of (−ln z)^ν α(z) in the variables x_e = z^e − 1.

use rug::ops::Pow;
use rug::Complex;

use super::plan::SingularityPlan;
use super::{pole_form, TameDescriptor};
use crate::error::{Error, Result};
use crate::scalar::{abs_f64, Scalar};
use crate::series::{inverse_power_of_linear, series_pow_log_factor, Center, Poly, TruncSeries};

/// coeff · Π_j f_j(x_(var_j)).
#[derive(Clone, Debug)]
pub struct ProductTerm {
    pub coeff: Scalar,
    pub factors: Vec<(usize, TruncSeries)>,
}

#[derive(Clone, Debug)]
pub struct MultiPowerExpansion {
    pub nu: usize,
    /// Distinct exponents; variable j is x_j = z^(exponents[j]) − 1 and exponents[0] = 1.
    pub exponents: Vec<u32>,
    pub orders: Vec<usize>,
    pub terms: Vec<ProductTerm>,
    /// Observed geometric ratio bound per variable (1 when only polynomial decay is known).
    pub ratios: Vec<f64>,
}

impl MultiPowerExpansion {
    /// Value at λ_e(z), that is with x_j = z^(e_j) − 1.
    pub fn eval_at(&self, z: &Complex) -> Complex {
        let prec = z.prec().0;
        let xs: Vec<Complex> = self
            .exponents
            .iter()
            .map(|&e| Complex::with_val(prec, z.clone().pow(e) - 1u32))
            .collect();
        let mut total = Complex::new(prec);
        for t in &self.terms {
            let mut v = t.coeff.to_complex(prec);
            for (var, f) in &t.factors {
                v *= f.eval_complex(&xs[*var]);
            }
            total += v;
        }
        total
    }

    pub fn is_exact(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.coeff.is_exact() && t.factors.iter().all(|(_, f)| f.is_exact()))
    }

    /// Largest truncation order over all variables.
    pub fn max_order(&self) -> usize {
        self.orders.iter().copied().max().unwrap_or(0)
    }
}

/// Multi-power expansion of (−ln z)^ν α(z) to order m in every variable.
pub fn build_multipower(desc: &TameDescriptor, plan: &SingularityPlan, m: usize) -> Result<MultiPowerExpansion> {
    plan.verify()?;
    let form = pole_form(desc, m)?;
    let nu = form.nu();
    let exponents = plan.variables();
    let var_of = |e: u32| exponents.iter().position(|&x| x == e).expect("planned exponent");
    let sign = if nu % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
    let log_factor = series_pow_log_factor(nu, m);
    let lift = |s: &TruncSeries| s.mul_x_pow(nu).scale(&sign).mul(&log_factor);

    let mut ratios: Vec<f64> = vec![if nu > 0 { 1.0 } else { 0.0 }; exponents.len()];
    let mut main = form
        .poly
        .shift(&Scalar::one())
        .to_series(m + nu)
        .truncate(m);
    let mut principal = vec![Scalar::zero(); nu + 1];
    for n in 1..=nu {
        principal[nu - n] = form.principal[n - 1].clone();
    }
    // principal part times x^ν is polynomial; add it after the shift by x^ν below.
    if let Some(rem) = &form.remainder {
        main = main.add(&rem.truncate(m).with_center(Center::Zero));
    }
    for b in &form.branch_points {
        let d = abs_f64(&Complex::with_val(128, 1 - b.to_complex(128)));
        ratios[0] = ratios[0].max(1.0 / d);
    }

    let mut terms = Vec::new();
    for p in &form.poles {
        let e = plan
            .singularities
            .iter()
            .find(|s| s.q == p.q)
            .map(|s| s.exponent)
            .ok_or_else(|| Error::invalid(format!("pole {} missing from the plan", p.q)))?;
        let qe = p.q.pow(e);
        let base = &Scalar::one() - &qe;
        let v = var_of(e);
        let d = base.abs_f64();
        ratios[v] = ratios[v].max(1.0 / d);
        for (idx, c) in p.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mult = idx as u32 + 1;
            if e == 1 {
                main = main.add(&inverse_power_of_linear(&base, mult, m).scale(c));
                continue;
            }
            // 1/(z−q)^m = k_q(z)^m / (z^e − q^e)^m with k_q(z) = Σ_j q^(e−1−j) z^j.
            let kq = Poly::new((0..e).map(|j| p.q.pow(e - 1 - j)).collect());
            let kq1 = kq.shift(&Scalar::one()).pow(mult).to_series(m);
            terms.push(ProductTerm {
                coeff: c.clone(),
                factors: vec![(0, lift(&kq1)), (v, inverse_power_of_linear(&base, mult, m))],
            });
        }
    }
    let mut main_lifted = lift(&main);
    let principal_poly = TruncSeries::new(principal, m).scale(&sign).mul(&log_factor);
    main_lifted = main_lifted.add(&principal_poly);
    terms.insert(
        0,
        ProductTerm {
            coeff: Scalar::one(),
            factors: vec![(0, main_lifted)],
        },
    );
    Ok(MultiPowerExpansion {
        nu,
        orders: vec![m; exponents.len()],
        exponents,
        terms,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame::{catalog, coeffs, plan_exponents, DEFAULT_MARGIN};
    use proptest::prelude::*;

    fn mp(desc: &TameDescriptor, m: usize) -> MultiPowerExpansion {
        let plan = plan_exponents(desc, DEFAULT_MARGIN).unwrap();
        build_multipower(desc, &plan, m).unwrap()
    }

    #[test]
    fn geometric_gives_hasse_coefficients() {
        let e = mp(&catalog::hurwitz(), 6);
        assert_eq!(e.terms.len(), 1);
        let f = &e.terms[0].factors[0].1;
        for n in 0..=6 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(f.coeff(n), Scalar::ratio(sign, n as i64 + 1));
        }
    }

    #[test]
    fn eta_gives_geometric_coefficients() {
        let e = mp(&catalog::eta(), 6);
        let f = &e.terms[0].factors[0].1;
        for n in 0..=6u32 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(f.coeff(n as usize), Scalar::ratio(sign, 2i64.pow(n + 1)));
        }
    }

    #[test]
    fn constant_alpha_is_identity() {
        let one = TameDescriptor::Rational(
            crate::series::RationalFn::new(Poly::from_ints(&[1]), Poly::from_ints(&[1])).unwrap(),
        );
        let e = mp(&one, 4);
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].factors[0].1.coeffs(), &[Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()]);
    }

    fn reference(desc: &TameDescriptor, nu: usize, z: f64, prec: u32) -> Complex {
        let zc = Complex::with_val(prec, (z, 0));
        let a = coeffs(desc, 2500).unwrap();
        let mut sum = Complex::new(prec);
        let mut pw = Complex::with_val(prec, 1);
        for c in &a {
            sum += Complex::with_val(prec, &pw * c.to_complex(prec));
            pw *= &zc;
        }
        let l = Complex::with_val(prec, -zc.ln());
        sum * l.pow(nu as u32)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn evaluation_invariant(z in 0.2f64..0.85) {
            let prec = 128;
            for name in catalog::NAMES {
                if *name == "zeta-even" {
                    continue;
                }
                let desc = catalog::default_member(name, prec).unwrap();
                let e = mp(&desc, 200);
                let got = e.eval_at(&Complex::with_val(prec, (z, 0)));
                let want = reference(&desc, e.nu, z, prec);
                prop_assert!(crate::scalar::agree_within(&got, &want, 1e-12), "{} at {}: {} vs {}", name, z, got, want);
            }
        }
    }

    #[test]
    fn multi_variable_expansion_for_mod7() {
        let desc = catalog::dirichlet_l(7, catalog::quadratic_character(7));
        let e = mp(&desc, 120);
        assert!(e.exponents.len() >= 2);
        assert!(e.is_exact());
        let prec = 128;
        for z in [0.3, 0.6, 0.8] {
            let got = e.eval_at(&Complex::with_val(prec, (z, 0)));
            let want = reference(&desc, e.nu, z, prec);
            assert!(crate::scalar::agree_within(&got, &want, 1e-12));
        }
    }
}
