//! Tame generating series α(z) = Σ a_(n+1) z^n: descriptors, Laurent data at
//! z = 1, singularity planning and multi-power expansions.

mod builtin;
pub mod catalog;
mod multipower;
mod plan;
mod roots;

use std::fmt;

use rug::Complex;

pub use builtin::{zeta_even_value, BuiltinKind};
pub use multipower::{build_multipower, MultiPowerExpansion, ProductTerm};
pub use plan::{minimal_exponent, plan_exponents, plan_from_form, PlannedSingularity, SingularityPlan, DEFAULT_MARGIN};
pub use roots::{denominator_roots, partial_fractions, PoleForm, PoleTerm, Root};

use crate::error::{Error, Result};
use crate::scalar::{Integer, Rational, Scalar};
use crate::series::{Center, Poly, RationalFn, TruncSeries};

/// Default working precision for descriptors that carry no precision of their own.
pub const DEFAULT_PRECISION: u32 = 128;

/// Symbolic recipe for a tame series α(z).
#[derive(Clone, Debug, PartialEq)]
pub enum TameDescriptor {
    /// P(z)/Q(z).
    Rational(RationalFn),
    /// (Σ χ(i) z^(i−1)) / (1 − z^k)^q for i = 1..k.
    Character { modulus: u32, chi: Vec<Scalar>, power: u32 },
    /// 1/(1 − w z) with |w| ≤ 1.
    Lerch { w: Scalar },
    /// Π 1/(1 − z^(a_i)).
    Barnes { a: Vec<u32> },
    /// α = (Ehr − 1)/z with Ehr = g(z)/(1 − z^p)^(d+1) and g(0) = 1.
    Ehrhart { g: Poly, period: u32, dim: u32 },
    /// Transcendental generator evaluated at the given precision.
    Builtin { kind: BuiltinKind, precision_bits: u32 },
}

impl TameDescriptor {
    pub fn builtin(kind: BuiltinKind, precision_bits: u32) -> Self {
        TameDescriptor::Builtin { kind, precision_bits }
    }

    /// Precision used for numerical sub-steps of this descriptor.
    pub fn precision(&self) -> u32 {
        match self {
            TameDescriptor::Builtin { precision_bits, .. } => *precision_bits,
            TameDescriptor::Lerch { w } => w.prec().unwrap_or(DEFAULT_PRECISION),
            _ => DEFAULT_PRECISION,
        }
    }

    /// Same descriptor with numerical sub-steps at the given precision.
    pub fn with_precision(&self, bits: u32) -> Self {
        match self {
            TameDescriptor::Builtin { kind, .. } => TameDescriptor::Builtin {
                kind: *kind,
                precision_bits: bits,
            },
            other => other.clone(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            TameDescriptor::Rational(_) => "rational",
            TameDescriptor::Character { .. } => "character",
            TameDescriptor::Lerch { .. } => "lerch",
            TameDescriptor::Barnes { .. } => "barnes",
            TameDescriptor::Ehrhart { .. } => "ehrhart",
            TameDescriptor::Builtin { kind, .. } => kind.name(),
        }
    }

    /// α as a rational function, or None for builtins.
    pub fn rational_fn(&self) -> Result<Option<RationalFn>> {
        let one = || Poly::constant(Scalar::one());
        let one_minus_pow = |k: u32| {
            let mut c = vec![Scalar::zero(); k as usize + 1];
            c[0] = Scalar::one();
            c[k as usize] = Scalar::int(-1);
            Poly::new(c)
        };
        let r = match self {
            TameDescriptor::Rational(r) => r.clone(),
            TameDescriptor::Character { modulus, chi, power } => {
                if *modulus == 0 || chi.len() != *modulus as usize {
                    return Err(Error::invalid(format!(
                        "character needs {modulus} values, got {}",
                        chi.len()
                    )));
                }
                if *power == 0 {
                    return Err(Error::invalid("character power must be positive"));
                }
                RationalFn::new(Poly::new(chi.clone()), one_minus_pow(*modulus).pow(*power))?
            }
            TameDescriptor::Lerch { w } => {
                let tol = 2f64.powi(-(w.prec().unwrap_or(DEFAULT_PRECISION) as i32) / 2);
                if w.abs_f64() > 1.0 + tol {
                    return Err(Error::not_tame(format!("Lerch parameter {w} has modulus above 1")));
                }
                RationalFn::new(one(), Poly::new(vec![Scalar::one(), -w.clone()]))?
            }
            TameDescriptor::Barnes { a } => {
                if a.is_empty() || a.contains(&0) {
                    return Err(Error::invalid("Barnes parameters must be positive integers"));
                }
                let den = a.iter().fold(one(), |acc, &k| &acc * &one_minus_pow(k));
                RationalFn::new(one(), den)?
            }
            TameDescriptor::Ehrhart { g, period, dim } => {
                if *period == 0 {
                    return Err(Error::invalid("Ehrhart period must be positive"));
                }
                if g.coeff(0) != Scalar::one() {
                    return Err(Error::invalid("Ehrhart numerator must satisfy g(0) = 1"));
                }
                let den = one_minus_pow(*period).pow(dim + 1);
                let num = (g - &den).div_t_pow(1);
                RationalFn::new(num, den)?
            }
            TameDescriptor::Builtin { .. } => return Ok(None),
        };
        if r.den().coeff(0).is_zero() {
            return Err(Error::not_tame("α has a pole at z = 0"));
        }
        Ok(Some(r))
    }

    /// α at a complex point inside its domain.
    pub fn eval_complex(&self, z: &Complex) -> Result<Complex> {
        match self {
            TameDescriptor::Builtin { kind, .. } => Ok(builtin::eval_complex(*kind, z)),
            _ => Ok(self.rational_fn()?.expect("rational").eval_complex(z)),
        }
    }

    /// The tail series α_N(z) = Σ a_(n+N+1) z^n as a rational descriptor.
    /// For zeta-even the tail is replaced by a rational approximant whose
    /// coefficients differ by less than `eps`.
    pub fn shifted(&self, n: usize, eps: f64) -> Result<TameDescriptor> {
        if n == 0 {
            return Ok(self.clone());
        }
        if let Some(r) = self.rational_fn()? {
            let head = r.taylor_at_zero(n - 1)?.to_poly();
            let num = (r.num() - &(r.den() * &head)).div_t_pow(n);
            return Ok(TameDescriptor::Rational(RationalFn::new(num, r.den().clone())?));
        }
        match self {
            TameDescriptor::Builtin {
                kind: BuiltinKind::ZetaEven,
                ..
            } => zeta_even_tail(n, eps).map(TameDescriptor::Rational),
            _ => Err(Error::unsupported(format!("no tail form for {}", self.kind_name()))),
        }
    }
}

/// Σ_(j≤J) j^(−N−1) g_j(z) with g_j the even or odd part of 1/(1 − z/j).
fn zeta_even_tail(n: usize, eps: f64) -> Result<RationalFn> {
    if n < 2 {
        return Err(Error::unsupported("zeta-even tail needs a shift of at least 2"));
    }
    let mut j_max = 2u64;
    while ((j_max + 1) as f64).powi(-(n as i32 - 1)) > eps / 100.0 {
        j_max += 1;
    }
    let odd = n.is_multiple_of(2);
    let mut num = Poly::zero();
    let mut den = Poly::constant(Scalar::one());
    for j in 1..=j_max {
        let jj = Integer::from(j);
        let w = Rational::from((Integer::from(1), Integer::from(Integer::u_pow_u(j as u32, n as u32 + 1))));
        let j2 = Scalar::integer(Integer::from(&jj * &jj));
        let dj = Poly::new(vec![j2.clone(), Scalar::zero(), Scalar::int(-1)]);
        let nj = if odd {
            Poly::new(vec![Scalar::zero(), Scalar::integer(jj.clone())])
        } else {
            Poly::constant(j2)
        }
        .scale(&Scalar::rational(w));
        num = &(&num * &dj) + &(&nj * &den);
        den = &den * &dj;
    }
    RationalFn::new(num, den)
}

/// First n Taylor coefficients a_1..a_n of α at 0.
pub fn coeffs(desc: &TameDescriptor, n: usize) -> Result<Vec<Scalar>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    match desc {
        TameDescriptor::Builtin { kind, precision_bits } => {
            Ok(builtin::coefficients(*kind, n, *precision_bits))
        }
        _ => {
            let r = desc.rational_fn()?.expect("rational");
            Ok(r.taylor_at_zero(n - 1)?.coeffs().to_vec())
        }
    }
}

/// Principal part k_1..k_ν of α at z = 1 and regular coefficients
/// φ_n = n!·[(z−1)^n] α_h(z).
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentAtOne {
    pub nu: usize,
    pub principal: Vec<Scalar>,
    pub phi: Vec<Scalar>,
}

impl LaurentAtOne {
    pub fn new(principal: Vec<Scalar>, phi: Vec<Scalar>) -> Result<Self> {
        if principal.last().is_some_and(Scalar::is_zero) {
            return Err(Error::invalid("leading principal coefficient must be nonzero"));
        }
        Ok(LaurentAtOne {
            nu: principal.len(),
            principal,
            phi,
        })
    }

    /// Build from Taylor coefficients of the regular part.
    pub fn from_taylor(principal: Vec<Scalar>, taylor: &TruncSeries) -> Result<Self> {
        let mut fact = Integer::from(1);
        let phi = taylor
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= n as u32;
                }
                c * &Scalar::integer(fact.clone())
            })
            .collect();
        Self::new(principal, phi)
    }

    /// Highest regular index available.
    pub fn order(&self) -> usize {
        self.phi.len().saturating_sub(1)
    }

    pub fn is_exact(&self) -> bool {
        self.principal.iter().chain(self.phi.iter()).all(Scalar::is_exact)
    }

    /// k_n for 1 ≤ n ≤ ν, zero otherwise.
    pub fn k(&self, n: usize) -> Scalar {
        if n >= 1 && n <= self.nu {
            self.principal[n - 1].clone()
        } else {
            Scalar::zero()
        }
    }

    /// Taylor coefficients of α_h at 1 up to order m.
    pub fn regular_series(&self, m: usize) -> TruncSeries {
        let mut fact = Integer::from(1);
        let mut c = Vec::with_capacity(m + 1);
        for n in 0..=m {
            if n > 0 {
                fact *= n as u32;
            }
            c.push(match self.phi.get(n) {
                Some(p) => p / &Scalar::integer(fact.clone()),
                None => Scalar::zero(),
            });
        }
        TruncSeries::new(c, m).with_center(Center::One)
    }

    /// The principal part alone, regular part zero.
    pub fn principal_only(&self) -> LaurentAtOne {
        LaurentAtOne {
            nu: self.nu,
            principal: self.principal.clone(),
            phi: vec![Scalar::zero(); self.phi.len()],
        }
    }

    /// Same data cut, or padded with zeros, to regular order m.
    pub fn truncate(&self, m: usize) -> LaurentAtOne {
        let mut phi = self.phi.clone();
        phi.resize(m + 1, Scalar::zero());
        LaurentAtOne {
            nu: self.nu,
            principal: self.principal.clone(),
            phi,
        }
    }
}

impl fmt::Display for LaurentAtOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu={} k=[", self.nu)?;
        for (i, k) in self.principal.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "] phi=[")?;
        for (i, p) in self.phi.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Laurent data of a rational function at z = 1.
fn rational_laurent(r: &RationalFn, m: usize, prec: u32) -> Result<(Vec<Scalar>, TruncSeries)> {
    let p1 = r.num().shift(&Scalar::one());
    let q1 = r.den().shift(&Scalar::one());
    if p1.is_zero() {
        return Ok((Vec::new(), TruncSeries::zero(m).with_center(Center::One)));
    }
    let mu = roots::low_order_tol(&q1, prec);
    let pi = roots::low_order_tol(&p1, prec);
    let nu = mu.saturating_sub(pi);
    let lift = pi.saturating_sub(mu);
    let order = m + nu;
    let s = p1
        .div_t_pow(pi)
        .to_series(order)
        .div(&q1.div_t_pow(mu).to_series(order))?;
    let principal = (1..=nu).map(|n| s.coeff(nu - n)).collect();
    let taylor = TruncSeries::from_fn(m, |n| {
        if n < lift {
            Scalar::zero()
        } else {
            s.coeff(n - lift + nu)
        }
    })
    .with_center(Center::One);
    Ok((principal, taylor))
}

/// Laurent data of α at z = 1 with regular part to order m.
pub fn laurent_at_one(desc: &TameDescriptor, m: usize) -> Result<LaurentAtOne> {
    let (principal, taylor) = match desc {
        TameDescriptor::Builtin { kind, precision_bits } => {
            builtin::check_order(*kind, m)?;
            builtin::laurent_at_one(*kind, m, *precision_bits)?
        }
        _ => {
            let r = desc.rational_fn()?.expect("rational");
            let mut rts = denominator_roots(r.den(), desc.precision())?;
            roots::check_roots_tame(&mut rts, desc.precision())?;
            rational_laurent(&r, m, desc.precision())?
        }
    };
    LaurentAtOne::from_taylor(principal, &taylor)
}

/// Partial-fraction form of α with any holomorphic remainder expanded at 1 to order m.
pub fn pole_form(desc: &TameDescriptor, m: usize) -> Result<PoleForm> {
    match desc {
        TameDescriptor::Builtin {
            kind: BuiltinKind::CentralBinomial,
            precision_bits,
        } => {
            let (_, taylor) = builtin::laurent_at_one(BuiltinKind::CentralBinomial, m, *precision_bits)?;
            Ok(PoleForm {
                poly: Poly::zero(),
                principal: Vec::new(),
                poles: Vec::new(),
                remainder: Some(taylor),
                branch_points: builtin::branch_points(BuiltinKind::CentralBinomial),
            })
        }
        TameDescriptor::Builtin { kind, .. } => Err(Error::unsupported(format!(
            "{} has infinitely many poles; use a shifted tail form",
            kind.name()
        ))),
        _ => {
            let r = desc.rational_fn()?.expect("rational");
            partial_fractions(r.num(), r.den(), desc.precision())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame::catalog;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coeffs(&catalog::hurwitz(), 4).unwrap(), ints(&[1, 1, 1, 1]));
        assert_eq!(coeffs(&catalog::eta(), 4).unwrap(), ints(&[1, -1, 1, -1]));
        let cb = catalog::central_binomial(64);
        assert_eq!(
            coeffs(&cb, 3).unwrap(),
            vec![Scalar::ratio(1, 2), Scalar::ratio(1, 6), Scalar::ratio(1, 20)]
        );
    }

    #[test]
    fn laurent_examples() {
        let h = laurent_at_one(&catalog::hurwitz(), 5).unwrap();
        assert_eq!(h.nu, 1);
        assert_eq!(h.principal, ints(&[-1]));
        assert!(h.phi.iter().all(Scalar::is_zero));

        // 1/(2 + x) = Σ (−1)^n x^n / 2^(n+1), so φ_n = n!(−1)^n/2^(n+1).
        let e = laurent_at_one(&catalog::eta(), 3).unwrap();
        assert_eq!(e.nu, 0);
        assert_eq!(
            e.phi,
            vec![Scalar::ratio(1, 2), Scalar::ratio(-1, 4), Scalar::ratio(2, 8), Scalar::ratio(-6, 16)]
        );

        let sq = TameDescriptor::Rational(
            RationalFn::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, -2, 1])).unwrap(),
        );
        let l = laurent_at_one(&sq, 4).unwrap();
        assert_eq!(l.nu, 2);
        assert_eq!(l.principal, ints(&[0, 1]));
        assert!(l.phi.iter().all(Scalar::is_zero));
    }

    #[test]
    fn not_tame_is_rejected() {
        let bad = TameDescriptor::Rational(
            RationalFn::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, -3])).unwrap(),
        );
        assert!(matches!(laurent_at_one(&bad, 3), Err(Error::NotTame(_))));
        let w = TameDescriptor::Lerch { w: Scalar::int(2) };
        assert!(matches!(laurent_at_one(&w, 3), Err(Error::NotTame(_))));
    }

    #[test]
    fn shifted_tail_has_shifted_coefficients() {
        for desc in [catalog::barnes(&[1, 2]), catalog::dirichlet_l(7, catalog::quadratic_character(7))] {
            let full = coeffs(&desc, 30).unwrap();
            let tail = coeffs(&desc.shifted(9, 1e-30).unwrap(), 21).unwrap();
            assert_eq!(&full[9..], &tail[..]);
        }
    }

    #[test]
    fn zeta_even_tail_approximates_coefficients() {
        let prec = 128;
        let desc = catalog::zeta_even(prec);
        for n in [20usize, 21] {
            let full = coeffs(&desc, n + 12).unwrap();
            let tail = coeffs(&desc.shifted(n, 1e-25).unwrap(), 12).unwrap();
            for i in 0..12 {
                let a = full[n + i].to_complex(prec);
                let b = tail[i].to_complex(prec);
                assert!(crate::scalar::abs_f64(&Complex::with_val(prec, a - b)) < 1e-26);
            }
        }
    }

    fn reassembly_defect(desc: &TameDescriptor, m: usize) -> bool {
        // Q(z)·((z−1)^ν α_p + (z−1)^ν α_h) − (z−1)^ν P(z) vanishes to order m at z = 1.
        let r = desc.rational_fn().unwrap().unwrap();
        let l = laurent_at_one(desc, m).unwrap();
        let nu = l.nu;
        let order = m + nu;
        let mut inner = l.regular_series(order).mul_x_pow(nu);
        for n in 1..=nu {
            let mut c = vec![Scalar::zero(); order + 1];
            c[nu - n] = l.k(n);
            inner = inner.add(&TruncSeries::new(c, order));
        }
        let q1 = r.den().shift(&Scalar::one()).to_series(order);
        let p1 = r.num().shift(&Scalar::one()).to_series(order).mul_x_pow(nu);
        let d = q1.mul(&inner).sub(&p1);
        d.coeffs().iter().take(m + 1).all(Scalar::is_zero)
    }

    #[test]
    fn reassembly_on_catalog() {
        for name in catalog::NAMES {
            let desc = catalog::default_member(name, 128).unwrap();
            if desc.rational_fn().unwrap().is_some() {
                assert!(reassembly_defect(&desc, 30), "{name}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn reassembly_on_random_rational(
            num in proptest::collection::vec(-9i64..10, 1..5),
            nu in 0usize..4,
            extra in proptest::collection::vec(-3i64..4, 0..3),
        ) {
            // (1−z)^ν times a factor with roots outside the closed disk.
            let mut den = Poly::from_ints(&[1, -1]).pow(nu as u32);
            for c in extra {
                if c != 0 {
                    den = &den * &Poly::new(vec![Scalar::int(3 * c.abs() + 1), Scalar::int(c)]);
                }
            }
            let r = RationalFn::new(Poly::from_ints(&num), den).unwrap();
            prop_assume!(!r.num().is_zero());
            let desc = TameDescriptor::Rational(r);
            prop_assert!(reassembly_defect(&desc, 30));
        }
    }
}
