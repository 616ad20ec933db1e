//! From continuation data back to Bernoulli polynomials and Laurent data.

use crate::bernoulli::{bernoulli_polys, phi_from_psi, todd_series, BernoulliPoly};
use crate::error::{Error, Result};
use crate::scalar::{Integer, Scalar};
use crate::series::{bernoulli_generating, Poly, TruncSeries};
use crate::tame::LaurentAtOne;

/// Poles with residues, argument t0 and values v_n = D_α(−n, t0).
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationData {
    pub t0: Scalar,
    pub poles: Vec<(usize, Scalar)>,
    pub values: Vec<Scalar>,
}

impl ContinuationData {
    pub fn new(t0: Scalar, poles: Vec<(usize, Scalar)>, values: Vec<Scalar>) -> Result<Self> {
        for (n, r) in &poles {
            if *n == 0 {
                return Err(Error::invalid("pole locations are positive integers"));
            }
            if r.is_zero() {
                return Err(Error::invalid(format!("residue at {n} must be nonzero")));
            }
        }
        let mut seen: Vec<usize> = poles.iter().map(|p| p.0).collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != poles.len() {
            return Err(Error::invalid("duplicate pole location"));
        }
        Ok(ContinuationData { t0, poles, values })
    }

    pub fn nu(&self) -> usize {
        self.poles.iter().map(|p| p.0).max().unwrap_or(0)
    }
}

/// Laurent data rebuilt from continuation data; existence of a tame α is not certified.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub laurent: LaurentAtOne,
    pub polys: Vec<BernoulliPoly>,
    pub formal_only: bool,
    /// Largest deviation of the rebuilt B_α[n;t0] from the input, for approximate input.
    pub residual: Option<f64>,
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

/// Σ_m c_m p^(m) for the Taylor coefficients c_m of a series in ∂.
fn series_in_d_apply(s: &TruncSeries, p: &Poly) -> Poly {
    let mut acc = Poly::zero();
    let mut d = p.clone();
    let mut m = 0;
    while !d.is_zero() {
        let c = s.coeff(m);
        if !c.is_zero() {
            acc = &acc + &d.scale(&c);
        }
        d = d.derivative();
        m += 1;
    }
    acc
}

/// 𝐓^n ∂^j t^deg for the Todd operator 𝐓 of u/(e^u − 1), n = 1..=nu.
fn principal_basis(nu: usize, deg: usize) -> Vec<Poly> {
    let beta = bernoulli_generating(deg + 1);
    let mut pw = TruncSeries::one(deg + 1);
    let mut out = Vec::with_capacity(nu);
    for n in 1..=nu {
        pw = pw.mul(&beta);
        let base = Poly::monomial(deg).nth_derivative(nu - n);
        out.push(series_in_d_apply(&pw, &base));
    }
    out
}

/// Solve Σ_n k_n 𝐓^n ∂^(ν−n) t^(ν−1) = target for k_1..k_ν.
fn solve_principal(nu: usize, target: &Poly) -> Result<Vec<Scalar>> {
    let basis = principal_basis(nu, nu - 1);
    let mut rest = target.clone();
    let mut k = vec![Scalar::zero(); nu];
    for n in (1..=nu).rev() {
        let b = &basis[n - 1];
        assert_eq!(b.degree(), Some(n - 1), "principal basis must be triangular");
        let c = &rest.coeff(n - 1) / &b.leading();
        rest = &rest - &b.scale(&c);
        k[n - 1] = c;
    }
    if !rest.is_zero() && rest.coeffs().iter().any(|c| c.is_exact() && !c.is_zero()) {
        return Err(Error::Inconsistent("principal part does not reproduce the target".into()));
    }
    Ok(k)
}

/// Principal part with the prescribed poles and residues at t0.
pub fn principal_from_poles(t0: &Scalar, poles: &[(usize, Scalar)]) -> Result<LaurentAtOne> {
    let nu = poles.iter().map(|p| p.0).max().unwrap_or(0);
    if nu == 0 {
        return LaurentAtOne::new(Vec::new(), Vec::new());
    }
    let fact = factorial(nu - 1);
    // P[t] = Σ p_n (t − t0)^(n−1).
    let mut target = Poly::zero();
    let lin = Poly::new(vec![-t0.clone(), Scalar::one()]);
    for (n, r) in poles {
        let pn = &(&fact * &sign(nu + n)) * r;
        target = &target + &lin.pow(*n as u32 - 1).scale(&pn);
    }
    let k = solve_principal(nu, &target.scale(&sign(nu)))?;
    LaurentAtOne::new(k, Vec::new())
}

/// B[0] = v_0 and B[n] = ∫ n B[n−1] with B[n](t0) = v_n.
pub fn polys_from_values(t0: &Scalar, values: &[Scalar]) -> Vec<BernoulliPoly> {
    let mut out: Vec<BernoulliPoly> = Vec::with_capacity(values.len());
    for (n, v) in values.iter().enumerate() {
        let poly = if n == 0 {
            Poly::constant(v.clone())
        } else {
            let prim = out[n - 1].poly.scale(&Scalar::int(n as i64)).antiderivative();
            let c = v - &prim.eval(t0);
            &prim + &Poly::constant(c)
        };
        out.push(BernoulliPoly { n, poly });
    }
    out
}

/// Laurent data from B[0..K] for a known ν.
pub fn laurent_from_polys(nu: usize, polys: &[BernoulliPoly]) -> Result<LaurentAtOne> {
    if polys.is_empty() {
        return Err(Error::Inconsistent("no Bernoulli polynomials given".into()));
    }
    let big_k = polys.len() - 1;
    if nu > 0 && big_k + 1 < nu {
        return Err(Error::Inconsistent(format!("ν = {nu} needs B[0..{}]", nu - 1)));
    }
    for (n, b) in polys.iter().enumerate() {
        let d = b.poly.degree();
        let ok = if nu > 0 { d == Some(n) } else { d.is_none_or(|d| d <= n) };
        if !ok {
            return Err(Error::Inconsistent(format!("B[{n}] has degree {d:?}")));
        }
    }
    let k = if nu > 0 {
        solve_principal(nu, &polys[nu - 1].poly.scale(&sign(nu)))?
    } else {
        Vec::new()
    };
    if big_k < nu {
        return LaurentAtOne::new(k, Vec::new());
    }
    // (−1)^ν B[K] − Σ k_n 𝐓^n ∂^(ν−n) t^K = Σ_m ψ_m/m! ∂^(ν+m) t^K.
    let mut rest = polys[big_k].poly.scale(&sign(nu));
    for (i, b) in principal_basis(nu, big_k).iter().enumerate() {
        rest = &rest - &b.scale(&k[i]);
    }
    let top = big_k - nu;
    if rest.degree().is_some_and(|d| d > top) && rest.is_exact() {
        return Err(Error::Inconsistent(format!("B[{big_k}] is not reproduced by the principal part")));
    }
    let kf = factorial(big_k);
    let psi: Vec<Scalar> = (0..=top)
        .map(|m| &(&(&rest.coeff(top - m) * &factorial(m)) * &factorial(top - m)) / &kf)
        .collect();
    let phi = phi_from_psi(&psi, top);
    LaurentAtOne::new(k, phi)
}

/// Full inverse pipeline: residues and values to Laurent data.
pub fn dirichlet_from_data(data: &ContinuationData) -> Result<Reconstruction> {
    let nu = data.nu();
    let t0 = &data.t0;
    let mut bvals = Vec::with_capacity(nu + data.values.len());
    if nu > 0 {
        let fact = factorial(nu - 1);
        let mut p = vec![Scalar::zero(); nu + 1];
        for (n, r) in &data.poles {
            p[*n] = &(&fact * &sign(nu + n)) * r;
        }
        // B[ν−n;t0] = (n−1)!/(ν−1)(ν−2)…(ν−n+1) · p_n for n = ν..1.
        for n in (1..=nu).rev() {
            let mut falling = Scalar::one();
            for j in 0..n - 1 {
                falling = &falling * &Scalar::int((nu - 1 - j) as i64);
            }
            bvals.push(&(&factorial(n - 1) / &falling) * &p[n]);
        }
    }
    for (n, v) in data.values.iter().enumerate() {
        bvals.push(&(&(&sign(nu) * &factorial(nu + n)) / &factorial(n)) * v);
    }
    let polys = polys_from_values(t0, &bvals);
    let laurent = laurent_from_polys(nu, &polys)?;
    let from_poles = principal_from_poles(t0, &data.poles)?;
    if from_poles.principal != laurent.principal && laurent.is_exact() {
        return Err(Error::Inconsistent(format!(
            "residues give principal part {:?} but values give {:?}",
            from_poles.principal, laurent.principal
        )));
    }
    let residual = if laurent.is_exact() && data.t0.is_exact() {
        None
    } else {
        let todd = todd_series(&laurent, polys.len() - 1)?;
        let again = bernoulli_polys(&todd, polys.len() - 1)?;
        Some(
            again
                .iter()
                .zip(&bvals)
                .map(|(b, v)| (&b.eval(t0) - v).abs_f64())
                .fold(0.0, f64::max),
        )
    };
    Ok(Reconstruction {
        laurent,
        polys,
        formal_only: true,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::bernoulli_number;
    use crate::continuation::analyze;
    use crate::series::RationalFn;
    use crate::tame::{catalog, laurent_at_one, TameDescriptor};
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Scalar {
        Scalar::ratio(p, d)
    }

    #[test]
    fn principal_examples() {
        let l = principal_from_poles(&Scalar::one(), &[(1, Scalar::one())]).unwrap();
        assert_eq!(l.principal, vec![Scalar::int(-1)]);
        for t0 in [q(1, 2), Scalar::one(), q(7, 3)] {
            let l = principal_from_poles(&t0, &[(2, Scalar::one())]).unwrap();
            assert_eq!(l.nu, 2);
            assert_eq!(l.k(2), Scalar::one());
            let r = crate::continuation::analyze_laurent(&l.truncate(0), &t0, 0).unwrap();
            assert_eq!(r.pole_set(), vec![2]);
        }
        assert_eq!(principal_from_poles(&Scalar::one(), &[]).unwrap().nu, 0);
    }

    #[test]
    fn polys_from_values_examples() {
        let p = polys_from_values(&Scalar::one(), &[Scalar::one(), q(1, 2), q(1, 6)]);
        assert_eq!(p[2].poly, Poly::new(vec![q(1, 6), Scalar::int(-1), Scalar::one()]));
        let c = polys_from_values(&Scalar::one(), &[Scalar::int(5)]);
        assert_eq!(c[0].poly, Poly::constant(Scalar::int(5)));
        let e = polys_from_values(&Scalar::one(), &[q(1, 2), q(1, 4)]);
        assert_eq!(e[1].poly, Poly::new(vec![q(-1, 4), q(1, 2)]));
    }

    fn polys_of(desc: &TameDescriptor, k: usize) -> (LaurentAtOne, Vec<BernoulliPoly>) {
        let l = laurent_at_one(desc, k).unwrap();
        let t = todd_series(&l, k).unwrap();
        (l.clone(), bernoulli_polys(&t, k).unwrap())
    }

    #[test]
    fn laurent_from_polys_examples() {
        for desc in [catalog::hurwitz(), catalog::eta(), catalog::barnes(&[1, 1])] {
            let (l, polys) = polys_of(&desc, 6);
            let back = laurent_from_polys(l.nu, &polys).unwrap();
            assert_eq!(back.principal, l.principal);
            assert_eq!(back.phi, l.phi[..=6 - l.nu].to_vec());
        }
    }

    #[test]
    fn hurwitz_data_gives_geometric() {
        let values: Vec<Scalar> = (0..8)
            .map(|n| {
                let b = if n == 0 { q(1, 2) } else { Scalar::rational(bernoulli_number(n + 1)) };
                -(&b / &Scalar::int(n as i64 + 1))
            })
            .collect();
        let data = ContinuationData::new(Scalar::one(), vec![(1, Scalar::one())], values).unwrap();
        let r = dirichlet_from_data(&data).unwrap();
        assert!(r.formal_only);
        assert_eq!(r.laurent.principal, vec![Scalar::int(-1)]);
        assert!(r.laurent.phi.iter().all(Scalar::is_zero));
    }

    #[test]
    fn zero_data_gives_zero() {
        let data = ContinuationData::new(Scalar::one(), vec![], vec![Scalar::zero(); 5]).unwrap();
        let r = dirichlet_from_data(&data).unwrap();
        assert_eq!(r.laurent.nu, 0);
        assert!(r.laurent.phi.iter().all(Scalar::is_zero));
    }

    fn roundtrip(desc: &TameDescriptor, t0: &Scalar, k: usize) {
        let rep = analyze(desc, t0, k).unwrap();
        let poles = rep.poles.iter().map(|p| (p.n, p.residue.clone())).collect();
        let data = ContinuationData::new(t0.clone(), poles, rep.values.clone().unwrap()).unwrap();
        let r = dirichlet_from_data(&data).unwrap();
        assert_eq!(r.laurent, laurent_at_one(desc, k).unwrap(), "{desc:?} at {t0}");
    }

    #[test]
    fn roundtrip_on_rational_catalog() {
        let rand = TameDescriptor::Rational(
            RationalFn::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[1, -2, 1])).unwrap(),
        );
        for desc in [
            catalog::hurwitz(),
            catalog::eta(),
            catalog::barnes(&[1, 1]),
            catalog::lerch(q(1, 2)),
            catalog::ehrhart(Poly::from_ints(&[1, 1]), 1, 2),
            catalog::dirichlet_l(4, vec![Scalar::int(1), Scalar::int(0), Scalar::int(-1), Scalar::int(0)]),
            rand,
        ] {
            for t0 in [Scalar::one(), q(1, 2), q(7, 3)] {
                roundtrip(&desc, &t0, 12);
            }
        }
    }

    #[test]
    fn eq13_identity() {
        for desc in [catalog::barnes(&[1, 1]), catalog::barnes(&[1, 2, 3]), catalog::ehrhart(Poly::from_ints(&[1, 1]), 1, 2)] {
            let t0 = q(5, 7);
            let rep = analyze(&desc, &t0, 0).unwrap();
            let nu = rep.nu;
            for n in 1..=nu {
                let mut falling = Scalar::one();
                for j in 0..n - 1 {
                    falling = &falling * &Scalar::int((nu - 1 - j) as i64);
                }
                let want = &(&factorial(n - 1) / &falling) * &rep.p[n - 1];
                assert_eq!(rep.bernoulli[nu - n].eval(&t0), want);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn random_rational_roundtrip(
            num in proptest::collection::vec(-5i64..6, 1..4),
            nu in 0u32..4,
            t_num in 1i64..20,
            t_den in 1i64..7,
        ) {
            let den = Poly::from_ints(&[1, -1]).pow(nu);
            let r = RationalFn::new(Poly::from_ints(&num), den).unwrap();
            prop_assume!(!r.num().is_zero());
            roundtrip(&TameDescriptor::Rational(r), &q(t_num, t_den), 8);
        }
    }
}
