//! Choice of the exponents e_i that push each singularity out of the unit
//! polydisk around 1.

use rug::ops::Pow;
use rug::Complex;

use super::roots::PoleForm;
use super::{pole_form, TameDescriptor};
use crate::error::{Error, Result};
use crate::scalar::{abs_f64, Scalar};

/// Default margin δ.
pub const DEFAULT_MARGIN: f64 = 0.05;

const MAX_EXPONENT: u32 = 1 << 16;

/// A singularity q ≠ 1 with its pole order (0 for a branch point) and exponent.
#[derive(Clone, Debug)]
pub struct PlannedSingularity {
    pub q: Scalar,
    pub multiplicity: usize,
    pub exponent: u32,
}

#[derive(Clone, Debug)]
pub struct SingularityPlan {
    pub singularities: Vec<PlannedSingularity>,
    pub delta: f64,
}

impl SingularityPlan {
    /// e_1 = 1 followed by the exponent of every singularity.
    pub fn exponents(&self) -> Vec<u32> {
        std::iter::once(1)
            .chain(self.singularities.iter().map(|s| s.exponent))
            .collect()
    }

    /// Distinct exponents in increasing order, starting with 1.
    pub fn variables(&self) -> Vec<u32> {
        let mut v = self.exponents();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Numeric check |1 − q^e| ≥ 1 + δ for every singularity.
    pub fn verify(&self) -> Result<()> {
        for s in &self.singularities {
            let d = distance(&s.q, s.exponent);
            if d < 1.0 + self.delta {
                return Err(Error::numeric(format!(
                    "|1 - q^e| = {d} below 1 + δ for q = {}, e = {}",
                    s.q, s.exponent
                )));
            }
        }
        Ok(())
    }
}

fn distance(q: &Scalar, e: u32) -> f64 {
    let prec = q.prec().unwrap_or(128).max(64);
    let z = Complex::with_val(prec, q.to_complex(prec).pow(e));
    abs_f64(&Complex::with_val(prec, 1 - z))
}

/// Smallest e with |1 − q^e| ≥ 1 + δ.
pub fn minimal_exponent(q: &Scalar, delta: f64) -> Result<u32> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::invalid("margin δ must be positive"));
    }
    let m = q.abs_f64();
    let tol = 2f64.powi(-(q.prec().unwrap_or(128) as i32) / 2);
    if m < 1.0 - tol {
        return Err(Error::not_tame(format!("singularity {q} lies inside the unit disk")));
    }
    let c = q.to_complex(q.prec().unwrap_or(128));
    if c.imag().is_zero() && *c.real() > 0 && *c.real() <= 1 {
        return Err(Error::not_tame(format!("singularity {q} lies on (0, 1]")));
    }
    (1..=MAX_EXPONENT)
        .find(|&e| distance(q, e) >= 1.0 + delta)
        .ok_or_else(|| Error::unsupported(format!("singularity {q} needs an exponent above {MAX_EXPONENT}")))
}

/// Plan for an already computed pole form. Branch points must satisfy the
/// margin with e = 1.
pub fn plan_from_form(form: &PoleForm, delta: f64) -> Result<SingularityPlan> {
    let mut singularities = Vec::new();
    for p in &form.poles {
        singularities.push(PlannedSingularity {
            q: p.q.clone(),
            multiplicity: p.coeffs.len(),
            exponent: minimal_exponent(&p.q, delta)?,
        });
    }
    for b in &form.branch_points {
        let e = minimal_exponent(b, delta)?;
        if e != 1 {
            return Err(Error::unsupported(format!(
                "branch point {b} is within 1 + δ of z = 1"
            )));
        }
        singularities.push(PlannedSingularity {
            q: b.clone(),
            multiplicity: 0,
            exponent: 1,
        });
    }
    Ok(SingularityPlan { singularities, delta })
}

/// Minimal exponents for every singularity of α other than z = 1.
pub fn plan_exponents(desc: &TameDescriptor, delta: f64) -> Result<SingularityPlan> {
    plan_from_form(&pole_form(desc, 0)?, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame::catalog;

    #[test]
    fn exponent_examples() {
        assert_eq!(minimal_exponent(&Scalar::int(-1), DEFAULT_MARGIN).unwrap(), 1);
        assert_eq!(minimal_exponent(&Scalar::root_of_unity(7, 1), DEFAULT_MARGIN).unwrap(), 2);
        assert_eq!(minimal_exponent(&Scalar::int(4), DEFAULT_MARGIN).unwrap(), 1);
        assert_eq!(minimal_exponent(&Scalar::int(2), DEFAULT_MARGIN).unwrap(), 2);
        assert!(minimal_exponent(&Scalar::ratio(1, 2), DEFAULT_MARGIN).is_err());
    }

    #[test]
    fn catalog_plans_satisfy_invariant() {
        for name in catalog::NAMES {
            let desc = catalog::default_member(name, 128).unwrap();
            match plan_exponents(&desc, DEFAULT_MARGIN) {
                Ok(plan) => {
                    plan.verify().unwrap();
                    assert_eq!(plan.exponents()[0], 1);
                }
                Err(Error::Unsupported(_)) => assert_eq!(*name, "zeta-even"),
                Err(e) => panic!("{name}: {e}"),
            }
        }
        let mod7 = catalog::dirichlet_l(7, catalog::quadratic_character(7));
        let plan = plan_exponents(&mod7, DEFAULT_MARGIN).unwrap();
        assert!(plan.exponents().iter().any(|&e| e >= 2));
    }
}
