//! The named example families.

use super::{BuiltinKind, TameDescriptor};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{Poly, RationalFn};

pub const NAMES: &[&str] = &[
    "hurwitz",
    "eta",
    "dirichletL",
    "lerch",
    "barnes",
    "ehrhart",
    "central-binomial",
    "zeta-even",
];

/// 1/(1 − z): the Hurwitz zeta function.
pub fn hurwitz() -> TameDescriptor {
    TameDescriptor::Rational(RationalFn::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, -1])).expect("valid"))
}

/// 1/(1 + z): the alternating zeta function.
pub fn eta() -> TameDescriptor {
    TameDescriptor::Rational(RationalFn::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, 1])).expect("valid"))
}

/// Character values χ(1..k) over (1 − z^k).
pub fn dirichlet_l(modulus: u32, chi: Vec<Scalar>) -> TameDescriptor {
    dirichlet_l_power(modulus, chi, 1)
}

pub fn dirichlet_l_power(modulus: u32, chi: Vec<Scalar>, power: u32) -> TameDescriptor {
    TameDescriptor::Character { modulus, chi, power }
}

/// Legendre symbol (·/p) as χ(1..p) for an odd prime p.
pub fn quadratic_character(p: u32) -> Vec<Scalar> {
    let squares: Vec<u64> = (1..p as u64).map(|x| x * x % p as u64).collect();
    (1..=p as u64)
        .map(|i| {
            if i % p as u64 == 0 {
                Scalar::zero()
            } else if squares.contains(&(i % p as u64)) {
                Scalar::one()
            } else {
                Scalar::int(-1)
            }
        })
        .collect()
}

pub fn lerch(w: Scalar) -> TameDescriptor {
    TameDescriptor::Lerch { w }
}

pub fn barnes(a: &[u32]) -> TameDescriptor {
    TameDescriptor::Barnes { a: a.to_vec() }
}

pub fn ehrhart(g: Poly, period: u32, dim: u32) -> TameDescriptor {
    TameDescriptor::Ehrhart { g, period, dim }
}

pub fn central_binomial(precision_bits: u32) -> TameDescriptor {
    TameDescriptor::builtin(BuiltinKind::CentralBinomial, precision_bits)
}

pub fn zeta_even(precision_bits: u32) -> TameDescriptor {
    TameDescriptor::builtin(BuiltinKind::ZetaEven, precision_bits)
}

/// Default member of a catalog family.
pub fn default_member(name: &str, precision_bits: u32) -> Result<TameDescriptor> {
    Ok(match name {
        "hurwitz" => hurwitz(),
        "eta" => eta(),
        "dirichletL" => dirichlet_l(4, vec![Scalar::int(1), Scalar::int(0), Scalar::int(-1), Scalar::int(0)]),
        "lerch" => lerch(Scalar::ratio(1, 2)),
        "barnes" => barnes(&[1, 1]),
        "ehrhart" => ehrhart(Poly::from_ints(&[1, 1]), 1, 2),
        "central-binomial" => central_binomial(precision_bits),
        "zeta-even" => zeta_even(precision_bits),
        other => return Err(Error::invalid(format!("unknown catalog entry '{other}'"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_mod_7() {
        let chi: Vec<i64> = vec![1, 1, -1, 1, -1, -1, 0];
        assert_eq!(quadratic_character(7), chi.into_iter().map(Scalar::int).collect::<Vec<_>>());
    }

    #[test]
    fn every_name_resolves() {
        for name in NAMES {
            assert!(default_member(name, 64).is_ok());
        }
        assert!(default_member("nope", 64).is_err());
    }
}
