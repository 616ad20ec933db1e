//! Roots of denominators and partial-fraction data.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::scalar::{cyclotomic_poly, euler_phi, gcd_u32, Scalar};
use crate::series::{Poly, TruncSeries};

/// A root of a denominator together with its multiplicity.
#[derive(Clone, Debug)]
pub struct Root {
    pub q: Scalar,
    pub multiplicity: usize,
}

fn cyclotomic_as_poly(d: u32) -> Poly {
    Poly::new(cyclotomic_poly(d).iter().map(|c| Scalar::integer(c.clone())).collect())
}

/// Roots of `den` with multiplicities. Cyclotomic factors and linear factors
/// with exact coefficients give exact roots; the rest is found numerically at
/// twice the requested precision.
pub fn denominator_roots(den: &Poly, prec: u32) -> Result<Vec<Root>> {
    let mut roots = Vec::new();
    let mut rem = den.clone();
    if rem.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    if rem.is_exact() {
        let mut d = 1u32;
        while rem.degree().unwrap_or(0) > 0 && (d as usize) <= 2 * rem.degree().unwrap().pow(2) + 2 {
            if euler_phi(d) as usize <= rem.degree().unwrap() {
                let phi_d = cyclotomic_as_poly(d);
                let mut mult = 0;
                loop {
                    let (q, r) = rem.div_rem(&phi_d);
                    if !r.is_zero() {
                        break;
                    }
                    rem = q;
                    mult += 1;
                }
                if mult > 0 {
                    for j in 1..=d {
                        if gcd_u32(j, d) == 1 {
                            roots.push(Root {
                                q: Scalar::root_of_unity(d, j as u64),
                                multiplicity: mult,
                            });
                        }
                    }
                }
            }
            d += 1;
        }
        for (mult, factor) in squarefree_factors(&rem) {
            for q in simple_roots(&factor, prec)? {
                roots.push(Root { q, multiplicity: mult });
            }
        }
    } else {
        for q in simple_roots(&rem, prec)? {
            roots.push(Root { q, multiplicity: 1 });
        }
    }
    Ok(roots)
}

/// Yun's square-free decomposition over exact coefficients.
fn squarefree_factors(p: &Poly) -> Vec<(usize, Poly)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let mut a = Poly::gcd(p, &dp);
    let mut b = p.div_rem(&a).0;
    let mut c = dp.div_rem(&a).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        a = Poly::gcd(&b, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((i, a.clone()));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Roots of a polynomial assumed square-free.
fn simple_roots(p: &Poly, prec: u32) -> Result<Vec<Scalar>> {
    match p.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => Ok(vec![-(&p.coeff(0) / &p.coeff(1))]),
        Some(_) => Ok(aberth(p, 2 * prec)?.into_iter().map(Scalar::approx).collect()),
    }
}

/// a/b as a·conj(b)/|b|², avoiding the correctly rounded division, whose
/// precision escalation stalls when a component of the quotient cancels.
fn quick_div(a: &Complex, b: &Complex, prec: u32) -> Complex {
    let norm = Float::with_val(prec, b.norm_ref());
    let conj = Complex::with_val(prec, b.conj_ref());
    Complex::with_val(prec, a * &conj) / norm
}

/// Aberth–Ehrlich simultaneous root iteration.
fn aberth(p: &Poly, prec: u32) -> Result<Vec<Complex>> {
    let n = p.degree().unwrap();
    let coeffs: Vec<Complex> = p.coeffs().iter().map(|c| c.to_complex(prec)).collect();
    let lead = coeffs[n].clone();
    let monic: Vec<Complex> = coeffs.iter().map(|c| Complex::with_val(prec, c / &lead)).collect();
    let bound = 1.0
        + monic[..n]
            .iter()
            .map(crate::scalar::abs_f64)
            .fold(0.0, f64::max);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex::with_val(prec, (0.5 * bound * ang.cos(), 0.5 * bound * ang.sin()))
        })
        .collect();
    let dmonic: Vec<Complex> = (1..=n)
        .map(|i| Complex::with_val(prec, &monic[i] * i as u32))
        .collect();
    let eval = |c: &[Complex], x: &Complex| {
        let mut acc = Complex::new(prec);
        for a in c.iter().rev() {
            acc *= x;
            acc += a;
        }
        acc
    };
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 8));
    let one = Complex::with_val(prec, 1);
    let floor = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2));
    let mut best = Float::with_val(prec, rug::float::Special::Infinity);
    let mut stalled = 0;
    for _ in 0..(20 * prec as usize + 200) {
        let mut max_step = Float::new(prec);
        for i in 0..n {
            let pv = eval(&monic, &z[i]);
            if pv.real().is_zero() && pv.imag().is_zero() {
                continue;
            }
            let dv = eval(&dmonic, &z[i]);
            let ratio = quick_div(&pv, &dv, prec);
            let mut sum = Complex::new(prec);
            for j in 0..n {
                if j != i {
                    sum += quick_div(&one, &Complex::with_val(prec, &z[i] - &z[j]), prec);
                }
            }
            let denom = Complex::with_val(prec, 1 - Complex::with_val(prec, &ratio * &sum));
            let step = quick_div(&ratio, &denom, prec);
            let size = Float::with_val(prec, step.abs_ref());
            let scale = Float::with_val(prec, z[i].abs_ref()).max(&Float::with_val(prec, 1));
            let rel = size / scale;
            if rel > max_step {
                max_step = rel;
            }
            z[i] -= step;
        }
        if max_step < tol {
            return Ok(z);
        }
        // Ill-conditioned roots stall at the evaluation noise floor.
        if max_step < best {
            best = max_step;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= 8 && best < floor {
                return Ok(z);
            }
        }
    }
    Err(Error::numeric("root finding did not converge"))
}

/// Reject roots inside the open unit disk; snap numerical roots at 1 to exact 1.
pub fn check_roots_tame(roots: &mut [Root], prec: u32) -> Result<()> {
    let tol = 2f64.powi(-(prec as i32) / 2);
    for r in roots.iter_mut() {
        if let Scalar::Approx(z) = &r.q {
            let d = Complex::with_val(prec, z - 1u32);
            if crate::scalar::abs_f64(&d) < tol {
                r.q = Scalar::one();
                continue;
            }
        }
        let m = r.q.abs_f64();
        if m < 1.0 - tol {
            return Err(Error::not_tame(format!(
                "singularity {} lies inside the unit disk",
                r.q
            )));
        }
    }
    Ok(())
}

/// Multiplicity of x = 0 as a root, treating approximate coefficients below
/// 2^(−prec/2) relative to the largest coefficient as zero.
pub fn low_order_tol(p: &Poly, prec: u32) -> usize {
    if p.is_exact() {
        return p.low_order();
    }
    let scale = p.coeffs().iter().map(Scalar::abs_f64).fold(0.0, f64::max);
    let tol = scale * 2f64.powi(-(prec as i32) / 2);
    p.coeffs().iter().take_while(|c| c.abs_f64() <= tol).count()
}

/// Coefficients c_1..c_μ of the principal part Σ c_m (z−q)^(−m) of num/den at
/// the root q of multiplicity μ.
pub fn principal_part_at(num: &Poly, den: &Poly, q: &Scalar, mu: usize) -> Result<Vec<Scalar>> {
    let dq = den.shift(q).div_t_pow(mu);
    let nq = num.shift(q);
    if dq.coeff(0).is_zero() {
        return Err(Error::numeric(format!("root multiplicity at {q} is inconsistent")));
    }
    let s = nq
        .to_series(mu.saturating_sub(1))
        .div(&dq.to_series(mu.saturating_sub(1)))?;
    Ok((1..=mu).map(|m| s.coeff(mu - m)).collect())
}

/// A pole q ≠ 1 with principal part Σ_m coeffs[m−1]·(z−q)^(−m).
#[derive(Clone, Debug)]
pub struct PoleTerm {
    pub q: Scalar,
    pub coeffs: Vec<Scalar>,
}

/// α written as polynomial part, principal part at 1, principal parts at the
/// other poles and an optional holomorphic remainder known by its Taylor
/// series at 1.
#[derive(Clone, Debug)]
pub struct PoleForm {
    pub poly: Poly,
    pub principal: Vec<Scalar>,
    pub poles: Vec<PoleTerm>,
    pub remainder: Option<TruncSeries>,
    pub branch_points: Vec<Scalar>,
}

impl PoleForm {
    pub fn nu(&self) -> usize {
        self.principal.len()
    }
}

/// Partial-fraction decomposition of num/den.
pub fn partial_fractions(num: &Poly, den: &Poly, prec: u32) -> Result<PoleForm> {
    let mut roots = denominator_roots(den, prec)?;
    check_roots_tame(&mut roots, prec)?;
    let poly = if num.degree().unwrap_or(0) >= den.degree().unwrap_or(0) && !num.is_zero() {
        num.div_rem(den).0
    } else {
        Poly::zero()
    };
    let mut principal = Vec::new();
    let mut poles = Vec::new();
    for r in &roots {
        let mut c = principal_part_at(num, den, &r.q, r.multiplicity)?;
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        if c.is_empty() {
            continue;
        }
        if r.q == Scalar::one() {
            principal = c;
        } else {
            poles.push(PoleTerm { q: r.q.clone(), coeffs: c });
        }
    }
    Ok(PoleForm {
        poly,
        principal,
        poles,
        remainder: None,
        branch_points: Vec::new(),
    })
}
