//! Stirling numbers, the Todd series τ(u) = (−u)^ν α(e^u), the Bernoulli
//! polynomials B_α[n;t] and the two operator actions on polynomials.

use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::scalar::{binomial, Integer, Rational, Scalar};
use crate::series::{bernoulli_generating, compose, exp_minus_one, Poly, TruncSeries};
use crate::tame::{LaurentAtOne, MultiPowerExpansion};

/// Classical Bernoulli number B_n with B_1 = −1/2.
pub fn bernoulli_number(n: usize) -> Rational {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut b = table.lock().expect("bernoulli table");
    while b.len() <= n {
        let m = b.len() as u64;
        if m > 1 && m % 2 == 1 {
            b.push(Rational::new());
            continue;
        }
        // Σ_(k<m) C(m+1,k) B_k + (m+1) B_m = 0.
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += binomial(m + 1, k as u64) * bk;
            }
        }
        b.push(-acc / Rational::from(m + 1));
    }
    b[n].clone()
}

/// Stirling numbers of the second kind S(n,k) for 0 ≤ k ≤ n ≤ max.
pub fn stirling2_table(max: usize) -> Vec<Vec<Integer>> {
    let mut t = vec![vec![Integer::new(); max + 1]; max + 1];
    t[0][0] = Integer::from(1);
    for n in 1..=max {
        for k in 1..=n {
            t[n][k] = Integer::from(&t[n - 1][k] * k as u32) + &t[n - 1][k - 1];
        }
    }
    t
}

/// Signed Stirling numbers of the first kind s(n,k) for 0 ≤ k ≤ n ≤ max.
pub fn stirling1_signed_table(max: usize) -> Vec<Vec<Integer>> {
    let mut t = vec![vec![Integer::new(); max + 1]; max + 1];
    t[0][0] = Integer::from(1);
    for n in 1..=max {
        for k in 1..=n {
            t[n][k] = &t[n - 1][k - 1] - Integer::from(&t[n - 1][k] * (n as u32 - 1));
        }
    }
    t
}

/// S(n,k); zero when k > n.
pub fn stirling2(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::new();
    }
    stirling2_table(n)[n][k].clone()
}

/// s(n,k) with Σ_k s(n,k) S(k,m) = δ_(n,m); zero when k > n.
pub fn stirling1_signed(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::new();
    }
    stirling1_signed_table(n)[n][k].clone()
}

/// ψ_m = Σ_k S(m,k) φ_k for m = 0..=max.
pub fn psi_from_phi(phi: &[Scalar], max: usize) -> Vec<Scalar> {
    let s2 = stirling2_table(max);
    (0..=max)
        .map(|m| {
            let mut acc = Scalar::zero();
            for (k, p) in phi.iter().enumerate().take(m + 1) {
                if !p.is_zero() && s2[m][k] != 0 {
                    acc = &acc + &(p * &Scalar::integer(s2[m][k].clone()));
                }
            }
            acc
        })
        .collect()
}

/// φ_n = Σ_k s(n,k) ψ_k for n = 0..=max.
pub fn phi_from_psi(psi: &[Scalar], max: usize) -> Vec<Scalar> {
    let s1 = stirling1_signed_table(max);
    (0..=max)
        .map(|n| {
            let mut acc = Scalar::zero();
            for (k, p) in psi.iter().enumerate().take(n + 1) {
                if !p.is_zero() && s1[n][k] != 0 {
                    acc = &acc + &(p * &Scalar::integer(s1[n][k].clone()));
                }
            }
            acc
        })
        .collect()
}

/// ψ_m obtained by composing the regular Taylor series at 1 with e^u − 1.
pub fn psi_by_composition(laurent: &LaurentAtOne, max: usize) -> Result<Vec<Scalar>> {
    let outer = laurent.regular_series(max);
    let inner = exp_minus_one(max);
    let c = compose(&outer.with_center(crate::series::Center::Zero), &inner)?;
    let mut fact = Integer::from(1);
    Ok(c
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, x)| {
            if m > 0 {
                fact *= m as u32;
            }
            x * &Scalar::integer(fact.clone())
        })
        .collect())
}

fn factorial(n: usize) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// τ_0..τ_M with τ_m = m!·[u^m] (−u)^ν α(e^u).
#[derive(Clone, Debug, PartialEq)]
pub struct ToddSeries {
    pub nu: usize,
    pub tau: Vec<Scalar>,
}

impl ToddSeries {
    pub fn order(&self) -> usize {
        self.tau.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.tau.iter().all(Scalar::is_exact)
    }

    /// Plain Taylor coefficients τ_m/m!.
    pub fn taylor(&self) -> TruncSeries {
        let m = self.order();
        TruncSeries::from_fn(m, |i| &self.tau[i] / &Scalar::integer(factorial(i)))
    }
}

/// Todd series of the Laurent data to order m.
pub fn todd_series(laurent: &LaurentAtOne, m: usize) -> Result<ToddSeries> {
    let nu = laurent.nu;
    let sign = if nu.is_multiple_of(2) { Scalar::one() } else { Scalar::int(-1) };
    let mut c = TruncSeries::zero(m);
    if nu > 0 {
        let beta = bernoulli_generating(m);
        let mut pw = TruncSeries::one(m);
        for n in 1..=nu {
            pw = pw.mul(&beta);
            let k = laurent.k(n);
            if !k.is_zero() {
                c = c.add(&pw.mul_x_pow(nu - n).scale(&k));
            }
        }
    }
    if m >= nu {
        let need = m - nu;
        if laurent.phi.len() < need + 1 {
            return Err(Error::invalid(format!(
                "Laurent data has regular order {} but {} is needed",
                laurent.order(),
                need
            )));
        }
        let psi = psi_from_phi(&laurent.phi[..=need], need);
        let h = TruncSeries::from_fn(m, |i| {
            if i >= nu {
                &psi[i - nu] / &Scalar::integer(factorial(i - nu))
            } else {
                Scalar::zero()
            }
        });
        c = c.add(&h);
    }
    let c = c.scale(&sign);
    Ok(ToddSeries {
        nu,
        tau: (0..=m).map(|i| &c.coeff(i) * &Scalar::integer(factorial(i))).collect(),
    })
}

/// B_α[n;t] as a polynomial in t.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliPoly {
    pub n: usize,
    pub poly: Poly,
}

impl BernoulliPoly {
    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.poly.eval(t)
    }
}

/// B_α[n;t] = Σ_m C(n,m) τ_m t^(n−m).
pub fn bernoulli_poly(todd: &ToddSeries, n: usize) -> Result<BernoulliPoly> {
    if n > todd.order() {
        return Err(Error::invalid(format!(
            "Bernoulli polynomial {n} needs Todd order {n}, have {}",
            todd.order()
        )));
    }
    let coeffs = (0..=n)
        .map(|j| &todd.tau[n - j] * &Scalar::rational(binomial(n as u64, j as u64)))
        .collect();
    Ok(BernoulliPoly { n, poly: Poly::new(coeffs) })
}

/// B_α[0..=k].
pub fn bernoulli_polys(todd: &ToddSeries, k: usize) -> Result<Vec<BernoulliPoly>> {
    (0..=k).map(|n| bernoulli_poly(todd, n)).collect()
}

/// Σ_m (τ_m/m!) p^(m).
pub fn todd_apply(todd: &ToddSeries, p: &Poly) -> Result<Poly> {
    let d = p.degree().unwrap_or(0);
    if d > todd.order() {
        return Err(Error::invalid(format!(
            "polynomial degree {d} exceeds Todd order {}",
            todd.order()
        )));
    }
    let mut acc = Poly::zero();
    let mut deriv = p.clone();
    for m in 0..=d {
        if m > 0 {
            deriv = deriv.derivative();
        }
        let w = &todd.tau[m] / &Scalar::integer(factorial(m));
        if !w.is_zero() {
            acc = &acc + &deriv.scale(&w);
        }
    }
    Ok(acc)
}

/// Δ_e p(t) = p(t+e) − p(t).
fn forward_difference(p: &Poly, e: u32) -> Poly {
    &p.shift(&Scalar::int(e as i64)) - p
}

/// Σ_i f_i Δ_e^i p, finite because Δ_e lowers the degree.
fn apply_factor(f: &TruncSeries, e: u32, p: &Poly) -> Poly {
    let mut acc = Poly::zero();
    let mut d = p.clone();
    for i in 0..=f.order() {
        if d.is_zero() {
            break;
        }
        let c = f.coeff(i);
        if !c.is_zero() {
            acc = &acc + &d.scale(&c);
        }
        d = forward_difference(&d, e);
    }
    acc
}

/// The difference operator Σ c_i Δ_e^i of the expansion applied to p.
pub fn diff_apply_poly(mp: &MultiPowerExpansion, p: &Poly) -> Poly {
    let mut total = Poly::zero();
    if p.is_zero() {
        return total;
    }
    for term in &mp.terms {
        let mut q = p.clone();
        for (var, f) in &term.factors {
            q = apply_factor(f, mp.exponents[*var], &q);
        }
        total = &total + &q.scale(&term.coeff);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame::{build_multipower, catalog, laurent_at_one, plan_exponents, TameDescriptor, DEFAULT_MARGIN};
    use proptest::prelude::*;

    /// Set partitions of {1..n} into k blocks, counted by brute force.
    fn partitions_brute(n: usize, k: usize) -> u64 {
        fn go(i: usize, n: usize, blocks: usize, k: usize) -> u64 {
            if i == n {
                return (blocks == k) as u64;
            }
            let mut c = blocks as u64 * go(i + 1, n, blocks, k);
            if blocks < k {
                c += go(i + 1, n, blocks + 1, k);
            }
            c
        }
        go(0, n, 0, k)
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(0, 0), 1);
        assert_eq!(stirling2(3, 2), partitions_brute(3, 2));
        assert_eq!(stirling2(4, 2), partitions_brute(4, 2));
        assert_eq!(stirling2(4, 2), 7);
        assert_eq!(stirling1_signed(1, 1), 1);
        assert_eq!(stirling1_signed(3, 1), 2);
        let s1 = stirling1_signed_table(8);
        let s2 = stirling2_table(8);
        for (n, row) in s1.iter().enumerate() {
            for m in 0..=8 {
                let mut acc = Integer::new();
                for (k, x) in row.iter().enumerate() {
                    acc += Integer::from(x * &s2[k][m]);
                }
                assert_eq!(acc, (n == m) as i32);
            }
        }
    }

    /// B_n from the explicit double sum Σ_k Σ_j (−1)^j C(k,j) j^n/(k+1).
    fn bernoulli_explicit(n: usize) -> Rational {
        let mut acc = Rational::new();
        for k in 0..=n {
            for j in 0..=k {
                let term = Rational::from(Integer::from(Integer::u_pow_u(j as u32, n as u32))) * binomial(k as u64, j as u64)
                    / Rational::from(k as u64 + 1);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
        acc
    }

    #[test]
    fn bernoulli_numbers_match_explicit_formula() {
        for n in 0..=20 {
            assert_eq!(bernoulli_number(n), bernoulli_explicit(n), "B_{n}");
        }
    }

    fn todd(desc: &TameDescriptor, m: usize) -> ToddSeries {
        todd_series(&laurent_at_one(desc, m).unwrap(), m).unwrap()
    }

    #[test]
    fn todd_examples() {
        let g = todd(&catalog::hurwitz(), 8);
        for m in 0..=8 {
            assert_eq!(g.tau[m], Scalar::rational(bernoulli_number(m)));
        }
        assert_eq!(todd(&catalog::eta(), 4).tau[0], Scalar::ratio(1, 2));
        let one = TameDescriptor::Rational(
            crate::series::RationalFn::new(Poly::from_ints(&[1]), Poly::from_ints(&[1])).unwrap(),
        );
        let t = todd(&one, 4);
        assert_eq!(t.tau[0], Scalar::one());
        assert!(t.tau[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn bernoulli_poly_examples() {
        let b = bernoulli_poly(&todd(&catalog::hurwitz(), 4), 1).unwrap();
        assert_eq!(b.poly, Poly::new(vec![Scalar::ratio(-1, 2), Scalar::one()]));
        let e = bernoulli_poly(&todd(&catalog::eta(), 4), 1).unwrap();
        assert_eq!(e.poly, Poly::new(vec![Scalar::ratio(-1, 4), Scalar::ratio(1, 2)]));
        let br = bernoulli_poly(&todd(&catalog::barnes(&[1, 1]), 4), 1).unwrap();
        assert_eq!(br.poly, Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn todd_apply_examples() {
        let g = todd(&catalog::hurwitz(), 6);
        assert_eq!(todd_apply(&g, &Poly::from_ints(&[1])).unwrap(), Poly::from_ints(&[1]));
        assert_eq!(
            todd_apply(&g, &Poly::monomial(2)).unwrap(),
            Poly::new(vec![Scalar::ratio(1, 6), Scalar::int(-1), Scalar::one()])
        );
        let e = todd(&catalog::eta(), 6);
        assert_eq!(todd_apply(&e, &Poly::from_ints(&[3])).unwrap(), Poly::constant(Scalar::ratio(3, 2)));
    }

    fn mp(desc: &TameDescriptor, m: usize) -> MultiPowerExpansion {
        build_multipower(desc, &plan_exponents(desc, DEFAULT_MARGIN).unwrap(), m).unwrap()
    }

    #[test]
    fn diff_apply_examples() {
        let g = mp(&catalog::hurwitz(), 6);
        assert_eq!(diff_apply_poly(&g, &Poly::monomial(1)), Poly::new(vec![Scalar::ratio(-1, 2), Scalar::one()]));
        assert!(diff_apply_poly(&g, &Poly::zero()).is_zero());
        let e = mp(&catalog::eta(), 6);
        assert_eq!(diff_apply_poly(&e, &Poly::from_ints(&[1])), Poly::constant(Scalar::ratio(1, 2)));
    }

    fn rational_catalog() -> Vec<TameDescriptor> {
        vec![
            catalog::hurwitz(),
            catalog::eta(),
            catalog::barnes(&[1, 1]),
            catalog::barnes(&[1, 2, 3]),
            catalog::dirichlet_l(4, vec![Scalar::int(1), Scalar::int(0), Scalar::int(-1), Scalar::int(0)]),
            catalog::dirichlet_l(3, vec![Scalar::int(1), Scalar::int(-1), Scalar::int(0)]),
            catalog::dirichlet_l(7, catalog::quadratic_character(7)),
            catalog::lerch(Scalar::ratio(1, 2)),
            catalog::ehrhart(Poly::from_ints(&[1, 1]), 1, 2),
        ]
    }

    #[test]
    fn operator_equals_todd_on_polynomials() {
        for desc in rational_catalog() {
            let t = todd(&desc, 12);
            let e = mp(&desc, 12);
            for n in 0..=12 {
                let p = Poly::monomial(n);
                assert_eq!(diff_apply_poly(&e, &p), todd_apply(&t, &p).unwrap(), "{desc:?} n={n}");
            }
        }
    }

    #[test]
    fn derivative_recurrence_and_leading_term() {
        for desc in rational_catalog() {
            let l = laurent_at_one(&desc, 30).unwrap();
            let t = todd_series(&l, 30).unwrap();
            let lead = if l.nu == 0 {
                l.phi[0].clone()
            } else {
                let s = if l.nu.is_multiple_of(2) { Scalar::one() } else { Scalar::int(-1) };
                &s * &l.k(l.nu)
            };
            let polys = bernoulli_polys(&t, 30).unwrap();
            for n in 0..=30 {
                assert_eq!(polys[n].poly.degree(), Some(n));
                assert_eq!(polys[n].poly.leading(), lead);
                assert_eq!(todd_apply(&t, &Poly::monomial(n)).unwrap(), polys[n].poly);
                if n > 0 {
                    assert_eq!(polys[n].poly.derivative(), polys[n - 1].poly.scale(&Scalar::int(n as i64)));
                }
            }
        }
    }

    #[test]
    fn low_polynomials_depend_only_on_principal_part() {
        for desc in rational_catalog() {
            let l = laurent_at_one(&desc, 10).unwrap();
            let full = todd_series(&l, 10).unwrap();
            let bare = todd_series(&l.principal_only(), 10).unwrap();
            for n in 0..l.nu {
                assert_eq!(bernoulli_poly(&full, n).unwrap(), bernoulli_poly(&bare, n).unwrap());
            }
        }
    }

    #[test]
    fn faa_di_bruno_consistency() {
        for desc in rational_catalog() {
            let l = laurent_at_one(&desc, 20).unwrap();
            assert_eq!(psi_from_phi(&l.phi, 20), psi_by_composition(&l, 20).unwrap());
        }
    }

    #[test]
    fn zeta_even_todd_matches_closed_egf() {
        use rug::Complex;
        let prec = 192;
        let l = laurent_at_one(&catalog::zeta_even(prec), 40).unwrap();
        let t = todd_series(&l, 40).unwrap().taylor();
        let u = Complex::with_val(prec, (0.1, 0));
        let got = t.eval_complex(&u);
        // u(π e^u cot(π e^u) − 1)/(2 e^u)
        let pi = crate::scalar::pi(prec);
        let eu = Complex::with_val(prec, u.exp_ref());
        let x = Complex::with_val(prec, &eu * &pi);
        let cot = Complex::with_val(prec, x.clone().cos() / x.sin());
        let inner = Complex::with_val(prec, cot * &eu * &pi) - 1u32;
        let want = Complex::with_val(prec, inner * &u) / Complex::with_val(prec, eu * 2u32);
        assert!(crate::scalar::relative_error(&got, &want) < 1e-30);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn stirling_inversion_roundtrip(v in proptest::collection::vec(-50i64..50, 1..15)) {
            let phi: Vec<Scalar> = v.iter().map(|&x| Scalar::int(x)).collect();
            let n = phi.len() - 1;
            prop_assert_eq!(phi_from_psi(&psi_from_phi(&phi, n), n), phi);
        }
    }
}
