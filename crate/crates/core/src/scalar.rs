//! Numeric tower: exact rationals (and cyclotomic numbers) for algebraic
//! identities, big complex floats for analytic evaluation.

mod cyclotomic;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use cyclotomic::{cyclotomic_poly, euler_phi, gcd_u32, lcm_u32, Cyclotomic};
pub use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

pub type BigComplex = Complex;

/// Working precision, tolerance and term cap shared by one computation run.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxContext {
    pub precision_bits: u32,
    pub target_eps: f64,
    pub max_terms: usize,
}

impl ApproxContext {
    pub fn new(precision_bits: u32, target_eps: f64, max_terms: usize) -> Result<Self> {
        if precision_bits < 16 {
            return Err(Error::invalid("precision must be at least 16 bits"));
        }
        if max_terms == 0 {
            return Err(Error::invalid("max_terms must be positive"));
        }
        let floor = 2f64.powi(8 - precision_bits as i32);
        if target_eps.is_nan() || target_eps <= floor {
            return Err(Error::invalid(format!(
                "eps {target_eps:e} is not achievable at {precision_bits} bits (needs > {floor:e})"
            )));
        }
        Ok(ApproxContext {
            precision_bits,
            target_eps,
            max_terms,
        })
    }

    /// Context with the default tolerance for the given precision.
    pub fn with_precision(precision_bits: u32) -> Self {
        ApproxContext {
            precision_bits,
            target_eps: default_eps(precision_bits),
            max_terms: 4096,
        }
    }

    /// Distance below which an argument counts as sitting on a pole.
    pub fn near_pole_radius(&self) -> f64 {
        self.target_eps.sqrt()
    }
}

impl Default for ApproxContext {
    fn default() -> Self {
        Self::with_precision(128)
    }
}

/// Default tolerance: 1e-25 at 128 bits, 1e-12 at 64 bits.
pub fn default_eps(precision_bits: u32) -> f64 {
    let digits = (precision_bits as f64 * std::f64::consts::LOG10_2 * 0.65).floor();
    10f64.powf(-digits)
}

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::new();
    }
    Rational::from(Integer::from(n).binomial(k as u32))
}

/// Mixed relative/absolute agreement: |a−b| ≤ tol·max(1, |a|, |b|).
pub fn agree_within(a: &Complex, b: &Complex, tol: f64) -> bool {
    let prec = a.prec().0.min(b.prec().0);
    let diff = Float::with_val(prec, Complex::with_val(prec, a - b).abs_ref());
    let scale = Float::with_val(prec, a.abs_ref())
        .max(&Float::with_val(prec, b.abs_ref()))
        .max(&Float::with_val(prec, 1));
    diff <= scale * tol
}

/// |a − b| / max(1, |a|, |b|) as an f64.
pub fn relative_error(a: &Complex, b: &Complex) -> f64 {
    let prec = a.prec().0.min(b.prec().0);
    let diff = Float::with_val(prec, Complex::with_val(prec, a - b).abs_ref());
    let scale = Float::with_val(prec, a.abs_ref())
        .max(&Float::with_val(prec, b.abs_ref()))
        .max(&Float::with_val(prec, 1));
    (diff / scale).to_f64()
}

pub fn abs_f64(z: &Complex) -> f64 {
    Float::with_val(z.prec().0, z.abs_ref()).to_f64()
}

pub fn complex_from_f64(prec: u32, re: f64, im: f64) -> Complex {
    Complex::with_val(prec, (re, im))
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Pi)
}

/// A number that is either exact (rational or cyclotomic) or a big complex float.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Cyclotomic),
    Approx(Complex),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Cyclotomic::rational(Rational::new()))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(Cyclotomic::rational(Rational::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Exact(Cyclotomic::rational(Rational::from((p, q))))
    }

    pub fn rational(q: Rational) -> Self {
        Scalar::Exact(Cyclotomic::rational(q))
    }

    pub fn integer(n: Integer) -> Self {
        Self::rational(Rational::from(n))
    }

    pub fn root_of_unity(order: u32, power: u64) -> Self {
        Scalar::Exact(Cyclotomic::root_of_unity(order, power))
    }

    pub fn approx(z: Complex) -> Self {
        Scalar::Approx(z)
    }

    pub fn real(x: Float) -> Self {
        let p = x.prec();
        Scalar::Approx(Complex::with_val(p, (x, 0)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Exact zero test; an approximate value is zero only if both parts are zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Approx(z) => z.real().is_zero() && z.imag().is_zero(),
        }
    }

    /// Zero test with threshold 2^(−bits) for approximate values.
    pub fn is_negligible(&self, bits: u32) -> bool {
        match self {
            Scalar::Exact(c) => c.is_zero(),
            Scalar::Approx(z) => {
                let m = Float::with_val(z.prec().0, z.abs_ref());
                m.is_zero() || m.get_exp().is_some_and(|e| e <= -(bits as i32))
            }
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(c) => c.as_rational(),
            Scalar::Approx(_) => None,
        }
    }

    /// Precision of an approximate value.
    pub fn prec(&self) -> Option<u32> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Approx(z) => Some(z.prec().0),
        }
    }

    pub fn to_complex(&self, prec: u32) -> Complex {
        match self {
            Scalar::Exact(c) => c.to_complex(prec),
            Scalar::Approx(z) => Complex::with_val(prec, z),
        }
    }

    pub fn to_approx(&self, prec: u32) -> Scalar {
        Scalar::Approx(self.to_complex(prec))
    }

    pub fn abs_f64(&self) -> f64 {
        abs_f64(&self.to_complex(self.prec().unwrap_or(64)))
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.inv()),
            Scalar::Approx(z) => Scalar::Approx(Complex::with_val(z.prec().0, z.recip_ref())),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut result = Scalar::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Parse an exact number: integers, fractions `p/q`, decimals with optional
    /// exponent, and Gaussian forms such as `1/2-3i`.
    pub fn parse(text: &str) -> Result<Scalar> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::invalid("empty number"));
        }
        if let Some(body) = s.strip_suffix('i') {
            let split = body
                .char_indices()
                .rev()
                .find(|&(i, c)| {
                    (c == '+' || c == '-') && i > 0 && !matches!(body.as_bytes()[i - 1], b'e' | b'E')
                })
                .map(|(i, _)| i);
            let (re, im) = match split {
                Some(i) => (parse_real(&body[..i])?, parse_imag(&body[i..])?),
                None => (Rational::new(), parse_imag(body)?),
            };
            let i = Scalar::root_of_unity(4, 1);
            return Ok(&Scalar::rational(re) + &(&i * &Scalar::rational(im)));
        }
        Ok(Scalar::rational(parse_real(&s)?))
    }
}

fn parse_imag(s: &str) -> Result<Rational> {
    match s {
        "" | "+" => Ok(Rational::from(1)),
        "-" => Ok(Rational::from(-1)),
        _ => parse_real(s),
    }
}

/// Parse an exact real: `p`, `p/q`, or a decimal such as `-1.25e-3`.
pub fn parse_real(s: &str) -> Result<Rational> {
    let bad = || Error::invalid(format!("cannot parse number '{s}'"));
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_real(p)?;
        let q = parse_real(q)?;
        if q == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        return Ok(p / q);
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let n = Integer::from_str_radix(&digits, 10).map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let mut q = Rational::from(n);
    let pow10 = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs()));
    if scale >= 0 {
        q *= pow10;
    } else {
        q /= pow10;
    }
    Ok(if neg { -q } else { q })
}

/// Decimal rendering of a float with the given number of significant digits.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let raw = x.to_string_radix(10, Some(digits));
    let (mant, exp) = match raw.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (raw.as_str(), 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    let all: String = format!("{ip}{fp}");
    let point = ip.len() as i64 + exp;
    let digits_str = all.trim_end_matches('0');
    let digits_str = if digits_str.is_empty() { "0" } else { digits_str };
    let body = if (-6..=24).contains(&point) {
        if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits_str)
        } else if point as usize >= digits_str.len() {
            format!("{}{}", digits_str, "0".repeat(point as usize - digits_str.len()))
        } else {
            format!("{}.{}", &digits_str[..point as usize], &digits_str[point as usize..])
        }
    } else {
        let tail = &digits_str[1..];
        let m = if tail.is_empty() {
            digits_str[..1].to_string()
        } else {
            format!("{}.{}", &digits_str[..1], tail)
        };
        format!("{m}e{}", point - 1)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

pub fn format_complex(z: &Complex, digits: usize) -> String {
    let re = format_float(z.real(), digits);
    if z.imag().is_zero() {
        return re;
    }
    let im = format_float(&Float::with_val(z.prec().1, z.imag().abs_ref()), digits);
    let sign = if z.imag().is_sign_negative() { '-' } else { '+' };
    if z.real().is_zero() {
        let lead = if sign == '-' { "-" } else { "" };
        return format!("{lead}{im}i");
    }
    format!("{re}{sign}{im}i")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(c) => match c.as_rational() {
                Some(q) => write!(f, "{q}"),
                None => write!(f, "{}", format_complex(&c.to_complex(160), 30)),
            },
            Scalar::Approx(z) => {
                let digits = ((z.prec().0 as f64) * std::f64::consts::LOG10_2).floor() as usize;
                write!(f, "{}", format_complex(z, digits.clamp(6, 60)))
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Approx(a), Scalar::Approx(b)) => a == b,
            _ => false,
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::rational(q)
    }
}

impl From<Complex> for Scalar {
    fn from(z: Complex) -> Self {
        Scalar::Approx(z)
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

fn binop(a: &Scalar, b: &Scalar, op: Op) -> Scalar {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(match op {
            Op::Add => x.add(y),
            Op::Sub => x.sub(y),
            Op::Mul => x.mul(y),
            Op::Div => x.div(y),
        }),
        _ => {
            let prec = match (a.prec(), b.prec()) {
                (Some(p), Some(q)) => p.min(q),
                (Some(p), None) | (None, Some(p)) => p,
                (None, None) => unreachable!(),
            };
            let x = approx_view(a, prec);
            let y = approx_view(b, prec);
            Scalar::Approx(match op {
                Op::Add => Complex::with_val(prec, &*x + &*y),
                Op::Sub => Complex::with_val(prec, &*x - &*y),
                Op::Mul => Complex::with_val(prec, &*x * &*y),
                Op::Div => Complex::with_val(prec, &*x / &*y),
            })
        }
    }
}

fn approx_view(a: &Scalar, prec: u32) -> std::borrow::Cow<'_, Complex> {
    match a {
        Scalar::Approx(z) if z.prec().0 == prec => std::borrow::Cow::Borrowed(z),
        _ => std::borrow::Cow::Owned(a.to_complex(prec)),
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                binop(self, rhs, $op)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                binop(&self, &rhs, $op)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                binop(&self, rhs, $op)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                binop(self, &rhs, $op)
            }
        }
    };
}

impl_binop!(Add, add, Op::Add);
impl_binop!(Sub, sub, Op::Sub);
impl_binop!(Mul, mul, Op::Mul);
impl_binop!(Div, div, Op::Div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(c) => Scalar::Exact(c.neg()),
            Scalar::Approx(z) => Scalar::Approx(Complex::with_val(z.prec().0, -z)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
