//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(n)−1}. Elements of
//! different fields are compared and combined inside Q(ζ_lcm).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

/// Integer coefficients (low to high) of the n-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<Integer>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Integer>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache").get(&n) {
        return p.clone();
    }
    let mut p = vec![Integer::new(); n as usize + 1];
    p[0] = Integer::from(-1);
    p[n as usize] = Integer::from(1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = exact_div_monic(&p, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(p);
    cache.lock().expect("cyclotomic cache").insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[Integer], den: &[Integer]) -> Vec<Integer> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![Integer::new(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= Integer::from(&c * dj);
            }
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|r| *r == 0));
    q
}

fn reduce(mut v: Vec<Rational>, order: u32) -> Vec<Rational> {
    let phi = cyclotomic_poly(order);
    let d = phi.len() - 1;
    for i in (d..v.len()).rev() {
        if v[i] != 0 {
            let c = v[i].clone();
            for (j, pj) in phi.iter().enumerate() {
                v[i - d + j] -= Rational::from(&c * pj);
            }
        }
    }
    v.truncate(d);
    v.resize(d, Rational::new());
    v
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| *c == 0) {
        v.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if *ai == 0 {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += Rational::from(ai * bj);
        }
    }
    out
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::new(); r.len() - db];
    let lead = b[db].clone();
    for i in (0..q.len()).rev() {
        let c = Rational::from(&r[i + db] / &lead);
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= Rational::from(&c * bj);
            }
        }
        q[i] = c;
    }
    trim(&mut r);
    (q, r)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::new(); n];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible polynomial `m`.
fn inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1 = vec![Rational::from(1)];
    loop {
        assert!(!r1.is_empty(), "inverse of zero in cyclotomic field");
        if r1.len() == 1 {
            let inv = Rational::from(r1[0].recip_ref());
            return s1.iter().map(|c| Rational::from(c * &inv)).collect();
        }
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
}

/// An element of the cyclotomic field Q(ζ_order), ζ = exp(2πi/order).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn rational(q: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![q],
        }
    }

    /// ζ_order^power.
    pub fn root_of_unity(order: u32, power: u64) -> Self {
        assert!(order > 0);
        let e = (power % order as u64) as usize;
        let mut v = vec![Rational::new(); e + 1];
        v[e] = Rational::from(1);
        Cyclotomic {
            order,
            coeffs: reduce(v, order),
        }
        .normalized()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn normalized(mut self) -> Self {
        if self.coeffs.len() <= 1 || self.coeffs[1..].iter().all(|c| *c == 0) {
            self.coeffs.truncate(1);
            if self.coeffs.is_empty() {
                self.coeffs.push(Rational::new());
            }
            self.order = 1;
        }
        self
    }

    fn lift(&self, order: u32) -> Vec<Rational> {
        if order == self.order {
            return self.coeffs.clone();
        }
        let step = (order / self.order) as usize;
        let mut v = vec![Rational::new(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * step] = c.clone();
        }
        reduce(v, order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.order == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Self::rational(Rational::from(&self.coeffs[0] + &other.coeffs[0]));
        }
        let l = lcm_u32(self.order, other.order);
        let mut a = self.lift(l);
        for (x, y) in a.iter_mut().zip(other.lift(l)) {
            *x += y;
        }
        Cyclotomic { order: l, coeffs: a }.normalized()
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Self::rational(Rational::from(&self.coeffs[0] * &other.coeffs[0]));
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        let l = lcm_u32(self.order, other.order);
        let prod = poly_mul(&self.lift(l), &other.lift(l));
        Cyclotomic {
            order: l,
            coeffs: reduce(prod, l),
        }
        .normalized()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * q)).collect(),
        }
        .normalized()
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        if self.order == 1 {
            assert!(self.coeffs[0] != 0, "division by exact zero");
            return Self::rational(Rational::from(self.coeffs[0].recip_ref()));
        }
        let m: Vec<Rational> = cyclotomic_poly(self.order)
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        let inv = inverse_mod(&self.coeffs, &m);
        Cyclotomic {
            order: self.order,
            coeffs: reduce(inv, self.order),
        }
        .normalized()
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Numerical value at the given precision.
    pub fn to_complex(&self, prec: u32) -> Complex {
        if self.order == 1 {
            return Complex::with_val(prec, (Float::with_val(prec, &self.coeffs[0]), 0));
        }
        let wp = prec + 16;
        let angle = Float::with_val(wp, Constant::Pi) * 2u32 / self.order;
        let zeta = Complex::with_val(wp, (angle.clone().cos(), angle.sin()));
        let mut acc = Complex::new(wp);
        let mut pw = Complex::with_val(wp, 1);
        for c in &self.coeffs {
            if *c != 0 {
                acc += Complex::with_val(wp, &pw * &Float::with_val(wp, c));
            }
            pw *= &zeta;
        }
        Complex::with_val(prec, acc)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let l = lcm_u32(self.order, other.order);
        self.lift(l) == other.lift(l)
    }
}
