//! Descriptor construction from flags or config.

use tamezeta::scalar::Scalar;
use tamezeta::series::{Poly, RationalFn};
use tamezeta::tame::{catalog, TameDescriptor};

use crate::args::DescriptorSpec;
use crate::error::{CliError, CliResult};

fn scalars(list: &str) -> CliResult<Vec<Scalar>> {
    list.split(',').map(|x| Scalar::parse(x).map_err(CliError::from)).collect()
}

fn naturals(list: &str, what: &str) -> CliResult<Vec<u32>> {
    list.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| CliError::input(format!("{what}: '{x}' is not a positive integer")))
        })
        .collect()
}

/// Names of the parameters that are set.
fn given(spec: &DescriptorSpec) -> Vec<&'static str> {
    let mut v = Vec::new();
    let mut push = |set: bool, name| {
        if set {
            v.push(name);
        }
    };
    push(spec.a.is_some(), "a");
    push(spec.modulus.is_some(), "modulus");
    push(spec.chi.is_some(), "chi");
    push(spec.power.is_some(), "power");
    push(spec.w.is_some(), "w");
    push(spec.g.is_some(), "g");
    push(spec.p.is_some(), "p");
    push(spec.d.is_some(), "d");
    push(spec.num.is_some(), "num");
    push(spec.den.is_some(), "den");
    v
}

fn only(spec: &DescriptorSpec, family: &str, allowed: &[&str]) -> CliResult<()> {
    let extra: Vec<_> = given(spec).into_iter().filter(|p| !allowed.contains(p)).collect();
    if extra.is_empty() {
        Ok(())
    } else {
        Err(CliError::input(format!("{family} does not take {}", extra.join(", "))))
    }
}

fn odd_prime(p: u32) -> bool {
    p > 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The descriptor named by the flags; builtins are evaluated at `builtin_bits`.
pub fn build_descriptor(spec: &DescriptorSpec, builtin_bits: u32) -> CliResult<TameDescriptor> {
    let Some(name) = spec.catalog.as_deref() else {
        let (Some(num), Some(den)) = (&spec.num, &spec.den) else {
            return Err(CliError::input(format!(
                "give --catalog ({}) or --num and --den",
                catalog::NAMES.join(", ")
            )));
        };
        only(spec, "a rational descriptor", &["num", "den"])?;
        let r = RationalFn::new(Poly::new(scalars(num)?), Poly::new(scalars(den)?))?;
        return Ok(TameDescriptor::Rational(r));
    };
    match name {
        "hurwitz" | "eta" | "central-binomial" | "zeta-even" => {
            only(spec, name, &[])?;
            Ok(catalog::default_member(name, builtin_bits)?)
        }
        "dirichletL" => {
            only(spec, name, &["modulus", "chi", "power"])?;
            let power = spec.power.unwrap_or(1);
            if power == 0 {
                return Err(CliError::input("power must be positive"));
            }
            let (modulus, chi) = match (spec.modulus, &spec.chi) {
                (None, None) => return Ok(catalog::default_member(name, builtin_bits)?),
                (Some(k), Some(c)) => (k, scalars(c)?),
                (Some(k), None) if odd_prime(k) => (k, catalog::quadratic_character(k)),
                (Some(k), None) => {
                    return Err(CliError::input(format!("give --chi for modulus {k} (no default character)")))
                }
                (None, Some(c)) => {
                    let c = scalars(c)?;
                    (c.len() as u32, c)
                }
            };
            if chi.len() != modulus as usize || modulus == 0 {
                return Err(CliError::input(format!("chi needs {modulus} values, got {}", chi.len())));
            }
            Ok(catalog::dirichlet_l_power(modulus, chi, power))
        }
        "lerch" => {
            only(spec, name, &["w"])?;
            let w = spec.w.as_deref().map(Scalar::parse).transpose()?.unwrap_or(Scalar::ratio(1, 2));
            Ok(catalog::lerch(w))
        }
        "barnes" => {
            only(spec, name, &["a"])?;
            let a = match &spec.a {
                Some(list) => naturals(list, "a")?,
                None => vec![1, 1],
            };
            Ok(catalog::barnes(&a))
        }
        "ehrhart" => {
            only(spec, name, &["g", "p", "d"])?;
            let g = match &spec.g {
                Some(list) => Poly::new(scalars(list)?),
                None => Poly::from_ints(&[1, 1]),
            };
            if g.coeff(0) != Scalar::one() {
                return Err(CliError::input("ehrhart numerator needs g(0) = 1"));
            }
            let p = spec.p.unwrap_or(1);
            if p == 0 {
                return Err(CliError::input("period must be positive"));
            }
            Ok(catalog::ehrhart(g, p, spec.d.unwrap_or(2)))
        }
        other => Err(CliError::input(format!(
            "unknown catalog entry '{other}'; known: {}",
            catalog::NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(catalog: &str) -> DescriptorSpec {
        DescriptorSpec {
            catalog: Some(catalog.into()),
            ..Default::default()
        }
    }

    #[test]
    fn catalog_defaults() {
        for name in catalog::NAMES {
            let d = build_descriptor(&spec(name), 128).unwrap();
            assert_eq!(d, catalog::default_member(name, 128).unwrap());
        }
    }

    #[test]
    fn parameters() {
        let mut s = spec("barnes");
        s.a = Some("1,2,3".into());
        assert_eq!(build_descriptor(&s, 128).unwrap(), catalog::barnes(&[1, 2, 3]));
        let mut s = spec("dirichletL");
        s.modulus = Some(7);
        assert_eq!(
            build_descriptor(&s, 128).unwrap(),
            catalog::dirichlet_l(7, catalog::quadratic_character(7))
        );
        let s = DescriptorSpec {
            num: Some("1,2".into()),
            den: Some("1,-2,1".into()),
            ..Default::default()
        };
        assert!(matches!(build_descriptor(&s, 128).unwrap(), TameDescriptor::Rational(_)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(build_descriptor(&spec("nope"), 128).is_err());
        let mut s = spec("hurwitz");
        s.w = Some("1/2".into());
        assert!(build_descriptor(&s, 128).is_err());
        let mut s = spec("dirichletL");
        s.modulus = Some(4);
        s.chi = Some("1,0,-1".into());
        assert!(build_descriptor(&s, 128).is_err());
        let mut s = spec("barnes");
        s.a = Some("1,0".into());
        assert!(build_descriptor(&s, 128).is_err());
        assert!(build_descriptor(&DescriptorSpec::default(), 128).is_err());
    }
}
