//! Polynomials, truncated power series and rational functions over [`Scalar`].

use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::Complex;

use crate::error::{Error, Result};
use crate::scalar::{binomial, Scalar};

/// Dense univariate polynomial c_0 + c_1 t + … + c_d t^d.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// t^n.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Scalar::zero(); n + 1];
        c[n] = Scalar::one();
        Poly { coeffs: c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: &Complex) -> Complex {
        let prec = x.prec().0;
        let mut acc = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c.to_complex(prec);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::int(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Poly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut c = vec![Scalar::zero()];
        for (i, a) in self.coeffs.iter().enumerate() {
            c.push(a / &Scalar::int(i as i64 + 1));
        }
        Poly::new(c)
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// p(t + h).
    pub fn shift(&self, h: &Scalar) -> Poly {
        let mut b = self.coeffs.clone();
        let d = b.len();
        if d < 2 || h.is_zero() {
            return self.clone();
        }
        for i in 0..d - 1 {
            for j in (i..d - 1).rev() {
                b[j] = &b[j] + &(h * &b[j + 1]);
            }
        }
        Poly::new(b)
    }

    /// p(c·t).
    pub fn scale_arg(&self, c: &Scalar) -> Poly {
        let mut pw = Scalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw = &pw * c;
        }
        Poly::new(out)
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::constant(Scalar::one()), |acc, _| &acc * self)
    }

    /// Quotient and remainder; the divisor's leading coefficient must be invertible.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = d.leading().inv();
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&c * dj);
                }
            }
            r[i + dd] = Scalar::zero();
            q[i] = c;
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    /// Monic gcd over exact coefficients.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn to_approx(&self, prec: u32) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.to_approx(prec)).collect())
    }

    /// Truncated series in the same variable.
    pub fn to_series(&self, order: usize) -> TruncSeries {
        TruncSeries::new(self.coeffs.clone(), order)
    }

    /// Multiplicity of t = 0 as a root.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by t^k, dropping the low coefficients.
    pub fn div_t_pow(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn mul_t_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Scalar::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly::new(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Coefficients of p in powers of (t − t0): entry n−1 holds p_n of Σ p_n (t−t0)^(n−1).
pub fn recenter(p: &Poly, t0: &Scalar) -> Poly {
    p.shift(t0)
}

/// Expansion point of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Center {
    Zero,
    One,
}

/// a_0 + a_1 x + … + a_M x^M + O(x^(M+1)).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    coeffs: Vec<Scalar>,
    center: Center,
}

impl TruncSeries {
    pub fn new(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order + 1, Scalar::zero());
        TruncSeries {
            coeffs,
            center: Center::Zero,
        }
    }

    pub fn with_center(mut self, center: Center) -> Self {
        self.center = center;
        self
    }

    pub fn center(&self) -> Center {
        self.center
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    /// The formal variable x.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![Scalar::zero(), Scalar::one()], order)
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Scalar) -> Self {
        Self::new((0..=order).map(f).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries {
            coeffs: {
                let mut c = self.coeffs.clone();
                c.resize(order + 1, Scalar::zero());
                c
            },
            center: self.center,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    pub fn to_approx(&self, prec: u32) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.to_approx(prec)).collect(),
            center: self.center,
        }
    }

    fn common(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.common(other);
        TruncSeries::from_fn(m, |i| &self.coeffs[i] + &other.coeffs[i]).with_center(self.center)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.common(other);
        TruncSeries::from_fn(m, |i| &self.coeffs[i] - &other.coeffs[i]).with_center(self.center)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            center: self.center,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.common(other);
        let mut out = vec![Scalar::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        TruncSeries::new(out, m).with_center(self.center)
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = TruncSeries::one(self.order()).with_center(self.center);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::invalid("series division by a series with zero constant term"));
        }
        let m = self.common(other);
        let inv0 = b0.inv();
        let mut c: Vec<Scalar> = Vec::with_capacity(m + 1);
        for n in 0..=m {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                if !other.coeffs[k].is_zero() {
                    acc = &acc - &(&other.coeffs[k] * &c[n - k]);
                }
            }
            c.push(&acc * &inv0);
        }
        Ok(TruncSeries::new(c, m).with_center(self.center))
    }

    pub fn inv(&self) -> Result<Self> {
        TruncSeries::one(self.order()).div(self)
    }

    pub fn derivative(&self) -> Self {
        let m = self.order();
        TruncSeries::from_fn(m.saturating_sub(1), |i| &self.coeff(i + 1) * &Scalar::int(i as i64 + 1))
            .with_center(self.center)
    }

    /// Antiderivative with the given constant term; the order grows by one.
    pub fn integral(&self, c0: Scalar) -> Self {
        let m = self.order() + 1;
        let mut c = vec![c0];
        for (i, a) in self.coeffs.iter().enumerate() {
            c.push(a / &Scalar::int(i as i64 + 1));
        }
        TruncSeries::new(c, m).with_center(self.center)
    }

    /// Multiply by x^k keeping the order.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        let m = self.order();
        TruncSeries::from_fn(m, |i| if i >= k { self.coeff(i - k) } else { Scalar::zero() })
            .with_center(self.center)
    }

    /// Divide by x^k; the low coefficients must vanish and the order drops by k.
    pub fn div_x_pow(&self, k: usize) -> Self {
        let m = self.order().saturating_sub(k);
        TruncSeries::from_fn(m, |i| self.coeff(i + k)).with_center(self.center)
    }

    /// exp of the series. A nonzero constant term needs an approximate value.
    pub fn exp(&self) -> Self {
        let m = self.order();
        let f0 = &self.coeffs[0];
        let g0 = if f0.is_zero() {
            Scalar::one()
        } else {
            let p = f0.prec().unwrap_or(128);
            Scalar::approx(f0.to_complex(p).exp())
        };
        let mut g = vec![g0];
        for n in 1..=m {
            let mut acc = Scalar::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = &acc + &(&(&self.coeffs[k] * &Scalar::int(k as i64)) * &g[n - k]);
                }
            }
            g.push(&acc / &Scalar::int(n as i64));
        }
        TruncSeries::new(g, m).with_center(self.center)
    }

    /// Principal-branch log. A constant term other than 1 needs an approximate value.
    pub fn log(&self) -> Result<Self> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::invalid("log of a series with zero constant term"));
        }
        let c0 = if *f0 == Scalar::one() {
            Scalar::zero()
        } else {
            let p = f0.prec().unwrap_or(128);
            Scalar::approx(f0.to_complex(p).ln())
        };
        let q = self.derivative().div(&self.truncate(self.order().saturating_sub(1)))?;
        Ok(q.integral(c0).truncate(self.order()))
    }

    /// Principal power f^a. A constant term other than 1 needs an approximate value.
    pub fn pow_scalar(&self, a: &Scalar) -> Result<Self> {
        let m = self.order();
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::invalid("power of a series with zero constant term"));
        }
        let g0 = if *f0 == Scalar::one() {
            Scalar::one()
        } else {
            let p = f0.prec().or(a.prec()).unwrap_or(128);
            Scalar::approx(
                f0.to_complex(p)
                    .pow(&a.to_complex(p)),
            )
        };
        let inv0 = f0.inv();
        let a1 = a + &Scalar::one();
        let mut g = vec![g0];
        for n in 1..=m {
            let mut acc = Scalar::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let w = &(&a1 * &Scalar::int(k as i64)) - &Scalar::int(n as i64);
                acc = &acc + &(&(&w * &self.coeffs[k]) * &g[n - k]);
            }
            g.push(&(&acc * &inv0) / &Scalar::int(n as i64));
        }
        Ok(TruncSeries::new(g, m).with_center(self.center))
    }

    /// Partial sum Σ a_i x^i.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: &Complex) -> Complex {
        let prec = x.prec().0;
        let mut acc = Complex::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c.to_complex(prec);
        }
        acc
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

/// Multiplication or division for [`mul_div`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulDivMode {
    Multiply,
    Divide,
}

/// Cauchy product or quotient to the common truncation order.
pub fn mul_div(a: &TruncSeries, b: &TruncSeries, mode: MulDivMode) -> Result<TruncSeries> {
    match mode {
        MulDivMode::Multiply => Ok(a.mul(b)),
        MulDivMode::Divide => a.div(b),
    }
}

/// outer ∘ inner to the common truncation order; inner must have zero constant term.
pub fn compose(outer: &TruncSeries, inner: &TruncSeries) -> Result<TruncSeries> {
    if !inner.coeffs[0].is_zero() {
        return Err(Error::invalid("composition requires an inner series with zero constant term"));
    }
    let m = outer.common(inner);
    let inner = inner.truncate(m);
    let mut acc = TruncSeries::constant(outer.coeff(m), m);
    for k in (0..m).rev() {
        acc = acc.mul(&inner);
        acc.coeffs[0] = &acc.coeffs[0] + &outer.coeffs[k];
    }
    Ok(acc.with_center(inner.center))
}

/// Taylor coefficients in (z−1) of ((−ln z)/(1−z))^ν.
pub fn series_pow_log_factor(nu: usize, order: usize) -> TruncSeries {
    let base = TruncSeries::from_fn(order, |n| {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        Scalar::ratio(sign, n as i64 + 1)
    })
    .with_center(Center::One);
    base.powi(nu as u32)
}

/// e^u − 1 as an exact series.
pub fn exp_minus_one(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| {
        if n == 0 {
            Scalar::zero()
        } else {
            Scalar::rational(rug::Rational::from((1, rug::Integer::from(rug::Integer::factorial(n as u32)))))
        }
    })
}

/// u/(e^u − 1) as an exact series.
pub fn bernoulli_generating(order: usize) -> TruncSeries {
    let denom = exp_minus_one(order + 1).div_x_pow(1);
    TruncSeries::one(order).div(&denom).expect("constant term is 1")
}

/// Coefficients of (x + c)^(−m) around x = 0.
pub fn inverse_power_of_linear(c: &Scalar, m: u32, order: usize) -> TruncSeries {
    let cinv = c.inv();
    let base = cinv.pow(m);
    let mut out = Vec::with_capacity(order + 1);
    let mut pw = base;
    for j in 0..=order {
        let b = binomial(m as u64 + j as u64 - 1, j as u64);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.push(&(&pw * &Scalar::rational(b)) * &Scalar::int(sign));
        pw = &pw * &cinv;
    }
    TruncSeries::new(out, order)
}

/// A quotient of polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    /// Build and normalize: common factors are cancelled when coefficients are exact
    /// and the denominator is scaled to constant term 1 when that is nonzero.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        let (mut num, mut den) = (num, den);
        if num.is_exact() && den.is_exact() && !num.is_zero() {
            let g = Poly::gcd(&num, &den);
            if g.degree().unwrap_or(0) > 0 {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        if num.is_zero() {
            den = Poly::constant(Scalar::one());
        }
        let d0 = den.coeff(0);
        let scale = if !d0.is_zero() { d0 } else { den.leading() };
        let inv = scale.inv();
        Ok(RationalFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_exact(&self) -> bool {
        self.num.is_exact() && self.den.is_exact()
    }

    pub fn eval(&self, z: &Scalar) -> Scalar {
        &self.num.eval(z) / &self.den.eval(z)
    }

    pub fn eval_complex(&self, z: &Complex) -> Complex {
        let n = self.num.eval_complex(z);
        let d = self.den.eval_complex(z);
        Complex::with_val(z.prec().0, n / d)
    }

    /// Taylor series at z = 0.
    pub fn taylor_at_zero(&self, order: usize) -> Result<TruncSeries> {
        self.num.to_series(order).div(&self.den.to_series(order))
    }

    pub fn to_approx(&self, prec: u32) -> RationalFn {
        RationalFn {
            num: self.num.to_approx(prec),
            den: self.den.to_approx(prec),
        }
    }
}
