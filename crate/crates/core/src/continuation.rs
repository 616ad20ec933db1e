//! Poles, residues and special values of the continued Dirichlet series
//! D_α(s,t) = Σ a_(n+1) (t+n)^(−s).

use crate::bernoulli::{bernoulli_polys, todd_series, BernoulliPoly};
use crate::error::{Error, Result};
use crate::scalar::{Integer, Scalar};
use crate::series::recenter;
use crate::tame::{laurent_at_one, LaurentAtOne, TameDescriptor};

/// Whether every candidate pole 1..ν is an actual pole at t0.
#[derive(Clone, Debug, PartialEq)]
pub enum Genericity {
    Generic,
    /// Orders i of the derivatives ∂^i B_α[ν−1;t] vanishing at t0.
    Special { vanishing: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleEntry {
    pub n: usize,
    pub residue: Scalar,
}

/// A candidate pole n that is removable because ∂^(n−1) B_α[ν−1;t] vanishes at t0.
#[derive(Clone, Debug, PartialEq)]
pub struct RemovablePoint {
    pub n: usize,
    pub derivative_order: usize,
}

#[derive(Clone, Debug)]
pub struct ContinuationReport {
    pub nu: usize,
    pub t0: Scalar,
    /// p_1..p_ν with B_α[ν−1;t] = Σ p_n (t−t0)^(n−1).
    pub p: Vec<Scalar>,
    pub poles: Vec<PoleEntry>,
    pub removable: Vec<RemovablePoint>,
    /// v_n = D_α(−n, t0); None when the values are not licensed.
    pub values: Option<Vec<Scalar>>,
    pub genericity: Genericity,
    /// B_α[0..ν+K].
    pub bernoulli: Vec<BernoulliPoly>,
    pub laurent: LaurentAtOne,
    pub warnings: Vec<String>,
    /// Set when the report comes from the principal part alone.
    pub values_licensed: bool,
}

impl ContinuationReport {
    pub fn pole_set(&self) -> Vec<usize> {
        self.poles.iter().map(|p| p.n).collect()
    }

    pub fn residue(&self, n: usize) -> Option<&Scalar> {
        self.poles.iter().find(|p| p.n == n).map(|p| &p.residue)
    }
}

fn factorial(n: usize) -> Scalar {
    Scalar::integer(Integer::from(Integer::factorial(n as u32)))
}

fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::int(-1)
    }
}

/// Zero test: exact for exact values, below 2^(−prec/2) for approximate ones.
fn vanishes(x: &Scalar, warnings: &mut Vec<String>, what: &str) -> bool {
    match x.prec() {
        None => x.is_zero(),
        Some(prec) => {
            let zero = x.is_negligible(prec / 2);
            if zero {
                warnings.push(format!("{what} treated as zero below 2^-{}", prec / 2));
            }
            zero
        }
    }
}

fn check_t0(t0: &Scalar) -> Result<()> {
    let prec = t0.prec().unwrap_or(64);
    let z = t0.to_complex(prec);
    if !z.imag().is_zero() || *z.real() <= 0 {
        return Err(Error::invalid(format!("t0 = {t0} must be real and positive")));
    }
    Ok(())
}

/// Report built from Laurent data with K special values.
pub fn analyze_laurent(laurent: &LaurentAtOne, t0: &Scalar, k: usize) -> Result<ContinuationReport> {
    check_t0(t0)?;
    let nu = laurent.nu;
    let todd = todd_series(laurent, nu + k)?;
    let polys = bernoulli_polys(&todd, nu + k)?;
    let mut warnings = Vec::new();
    let (p, poles, removable, genericity) = pole_data(nu, &polys, t0, &mut warnings);
    let values = (0..=k)
        .map(|n| {
            let b = polys[nu + n].eval(t0);
            &(&(&sign(nu) * &factorial(n)) / &factorial(nu + n)) * &b
        })
        .collect();
    Ok(ContinuationReport {
        nu,
        t0: t0.clone(),
        p,
        poles,
        removable,
        values: Some(values),
        genericity,
        bernoulli: polys,
        laurent: laurent.clone(),
        warnings,
        values_licensed: true,
    })
}

type PoleData = (Vec<Scalar>, Vec<PoleEntry>, Vec<RemovablePoint>, Genericity);

fn pole_data(nu: usize, polys: &[BernoulliPoly], t0: &Scalar, warnings: &mut Vec<String>) -> PoleData {
    if nu == 0 {
        return (Vec::new(), Vec::new(), Vec::new(), Genericity::Generic);
    }
    let centered = recenter(&polys[nu - 1].poly, t0);
    let p: Vec<Scalar> = (1..=nu).map(|n| centered.coeff(n - 1)).collect();
    let denom = factorial(nu - 1);
    let mut poles = Vec::new();
    let mut removable = Vec::new();
    for (i, pn) in p.iter().enumerate() {
        let n = i + 1;
        if vanishes(pn, warnings, &format!("p_{n}")) {
            removable.push(RemovablePoint { n, derivative_order: n - 1 });
        } else {
            poles.push(PoleEntry {
                n,
                residue: &(&sign(nu + n) * pn) / &denom,
            });
        }
    }
    let vanishing: Vec<usize> = removable.iter().map(|r| r.derivative_order).collect();
    let genericity = if vanishing.is_empty() {
        Genericity::Generic
    } else {
        Genericity::Special { vanishing }
    };
    (p, poles, removable, genericity)
}

/// Poles, residues, special values v_0..v_K and genericity at t0.
pub fn analyze(desc: &TameDescriptor, t0: &Scalar, k: usize) -> Result<ContinuationReport> {
    let laurent = laurent_at_one(desc, k)?;
    analyze_laurent(&laurent, t0, k)
}

/// Generic or special argument, with the vanishing derivative orders.
pub fn classify_argument(desc: &TameDescriptor, t0: &Scalar) -> Result<Genericity> {
    Ok(analyze(desc, t0, 0)?.genericity)
}

/// Poles and residues from the principal part alone; values are not licensed.
pub fn analyze_split(laurent: &LaurentAtOne, t0: &Scalar, k: usize) -> Result<ContinuationReport> {
    check_t0(t0)?;
    let principal = laurent.principal_only().truncate(0);
    let nu = principal.nu;
    let todd = todd_series(&principal, nu.saturating_sub(1))?;
    let polys = if nu == 0 { Vec::new() } else { bernoulli_polys(&todd, nu - 1)? };
    let mut warnings = Vec::new();
    let (p, poles, removable, genericity) = pole_data(nu, &polys, t0, &mut warnings);
    if nu == 0 {
        warnings.push("no pole at z = 1: the continuation is holomorphic".into());
    }
    warnings.push(format!("special values v_0..v_{k} are not licensed without tameness"));
    Ok(ContinuationReport {
        nu,
        t0: t0.clone(),
        p,
        poles,
        removable,
        values: None,
        genericity,
        bernoulli: polys,
        laurent: principal,
        warnings,
        values_licensed: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::bernoulli_number;
    use crate::tame::catalog;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    #[test]
    fn hurwitz_report() {
        let r = analyze(&catalog::hurwitz(), &Scalar::one(), 4).unwrap();
        assert_eq!(r.pole_set(), vec![1]);
        assert_eq!(r.residue(1), Some(&Scalar::one()));
        let v = r.values.unwrap();
        assert_eq!(v[0], q(-1, 2));
        assert_eq!(v[1], q(-1, 12));
        for (n, vn) in v.iter().enumerate().take(5) {
            // ζ(−n) = −B_(n+1)/(n+1) with B_1 = +1/2 at t = 1.
            let b = if n == 0 { Scalar::ratio(1, 2) } else { Scalar::rational(bernoulli_number(n + 1)) };
            assert_eq!(*vn, -(&b / &Scalar::int(n as i64 + 1)));
        }
    }

    #[test]
    fn barnes_report() {
        let b = catalog::barnes(&[1, 1]);
        let half = analyze(&b, &q(1, 2), 2).unwrap();
        assert_eq!(half.pole_set(), vec![1, 2]);
        assert_eq!(half.residue(1), Some(&q(1, 2)));
        assert_eq!(half.residue(2), Some(&Scalar::one()));
        assert_eq!(half.genericity, Genericity::Generic);
        let one = analyze(&b, &Scalar::one(), 2).unwrap();
        assert_eq!(one.pole_set(), vec![2]);
        assert_eq!(one.genericity, Genericity::Special { vanishing: vec![0] });
        assert_eq!(one.removable, vec![RemovablePoint { n: 1, derivative_order: 0 }]);
    }

    #[test]
    fn eta_report() {
        let r = analyze(&catalog::eta(), &Scalar::one(), 2).unwrap();
        assert!(r.poles.is_empty());
        let v = r.values.unwrap();
        assert_eq!(v[0], q(1, 2));
        assert_eq!(v[1], q(1, 4));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_argument(&catalog::hurwitz(), &q(3, 7)).unwrap(), Genericity::Generic);
        let b = catalog::barnes(&[1, 1]);
        assert!(matches!(classify_argument(&b, &Scalar::one()).unwrap(), Genericity::Special { .. }));
        assert_eq!(classify_argument(&b, &q(1, 2)).unwrap(), Genericity::Generic);
    }

    #[test]
    fn split_examples() {
        let geo = LaurentAtOne::new(vec![Scalar::int(-1)], vec![]).unwrap();
        let r = analyze_split(&geo, &Scalar::one(), 3).unwrap();
        assert_eq!(r.pole_set(), vec![1]);
        assert_eq!(r.residue(1), Some(&Scalar::one()));
        assert!(r.values.is_none());

        let hol = LaurentAtOne::new(vec![], vec![Scalar::one()]).unwrap();
        let r = analyze_split(&hol, &Scalar::one(), 3).unwrap();
        assert!(r.poles.is_empty());

        let sq = LaurentAtOne::new(vec![Scalar::zero(), Scalar::one()], vec![]).unwrap();
        let t0 = q(1, 3);
        let split = analyze_split(&sq, &t0, 0).unwrap();
        let full = analyze_laurent(&sq.truncate(0), &t0, 0).unwrap();
        assert_eq!(split.poles, full.poles);
    }

    #[test]
    fn leading_residue_identity_on_catalog() {
        for name in catalog::NAMES {
            let desc = catalog::default_member(name, 128).unwrap();
            let r = analyze(&desc, &q(2, 3), 3).unwrap();
            if r.nu >= 1 {
                let want = &(&sign(r.nu) * &r.laurent.k(r.nu)) / &factorial(r.nu - 1);
                assert_eq!(r.residue(r.nu), Some(&want), "{name}");
            }
        }
    }

    #[test]
    fn zeta_even_has_residue_one_half() {
        let r = analyze(&catalog::zeta_even(128), &Scalar::one(), 3).unwrap();
        assert_eq!(r.pole_set(), vec![1]);
        let res = r.residue(1).unwrap().to_complex(128);
        let d = crate::scalar::abs_f64(&rug::Complex::with_val(128, res - rug::Float::with_val(128, 0.5)));
        assert!(d < 1e-30);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn generic_arguments_give_full_pole_set(num in 1i64..10_000, den in 1i64..997) {
            let t0 = q(num, den);
            for desc in [catalog::barnes(&[1, 1]), catalog::barnes(&[1, 2, 3]), catalog::ehrhart(crate::series::Poly::from_ints(&[1, 1]), 1, 2)] {
                let r = analyze(&desc, &t0, 0).unwrap();
                if r.genericity == Genericity::Generic {
                    prop_assert_eq!(r.pole_set(), (1..=r.nu).collect::<Vec<_>>());
                } else {
                    prop_assert!(r.pole_set().len() < r.nu);
                }
            }
        }
    }
}
