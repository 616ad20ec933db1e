//! The acceptance suite: twelve checks, each reporting its measured error.

use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::ops::Pow;
use rug::{Complex, Float};

use crate::bernoulli::{bernoulli_polys, diff_apply_poly, psi_by_composition, psi_from_phi, todd_apply, todd_series};
use crate::continuation::analyze;
use crate::error::{Error, Result};
use crate::numeval::{continue_dirichlet, direct_sum, incgamma_eval, oracle_eval, HasseEvaluator};
use crate::reconstruct::{dirichlet_from_data, ContinuationData};
use crate::scalar::{binomial, pi, relative_error, ApproxContext, Integer, Rational, Scalar};
use crate::series::{Poly, RationalFn};
use crate::tame::{build_multipower, catalog, laurent_at_one, plan_exponents, TameDescriptor, DEFAULT_MARGIN};

/// Which catalog families the suite may touch.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum CatalogFilter {
    #[default]
    All,
    None,
    Only(Vec<String>),
}

impl CatalogFilter {
    /// "all", "none" or a comma-separated list of catalog names.
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "all" => Ok(CatalogFilter::All),
            "none" => Ok(CatalogFilter::None),
            list => {
                let names: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
                for n in &names {
                    if !catalog::NAMES.contains(&n.as_str()) {
                        return Err(Error::invalid(format!(
                            "unknown catalog entry '{n}'; known: {}",
                            catalog::NAMES.join(", ")
                        )));
                    }
                }
                Ok(CatalogFilter::Only(names))
            }
        }
    }

    pub fn includes(&self, name: &str) -> bool {
        match self {
            CatalogFilter::All => true,
            CatalogFilter::None => false,
            CatalogFilter::Only(v) => v.iter().any(|n| n == name),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub precision_bits: u32,
    pub catalog: CatalogFilter,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            precision_bits: 128,
            catalog: CatalogFilter::All,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub status: CheckStatus,
    /// Largest observed error; 0 for exact checks that matched.
    pub measured: f64,
    /// Allowed error; 0 for exact checks.
    pub tolerance: f64,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {:>2} {}", self.status.label(), self.id, self.name)?;
        if self.status == CheckStatus::Skipped {
            return write!(f, ": {}", self.detail);
        }
        write!(f, ": error {:.3e} (tol {:.1e}), {:.2}s", self.measured, self.tolerance, self.elapsed.as_secs_f64())?;
        if let Some(l) = self.limit {
            write!(f, " (limit {}s)", l.as_secs())?;
        }
        if !self.detail.is_empty() {
            write!(f, "; {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).collect()
    }
}

/// What one check measured.
struct Measure {
    error: f64,
    detail: String,
}

impl Measure {
    fn exact(mismatches: usize, of: usize) -> Self {
        Measure {
            error: mismatches as f64,
            detail: format!("{mismatches} mismatches in {of} comparisons"),
        }
    }
}

struct Check {
    id: u8,
    name: &'static str,
    families: &'static [&'static str],
    /// Pinned tolerance at 128 bits; 0 means exact.
    tolerance: f64,
    limit: Option<u64>,
    run: fn(&Env) -> Result<Measure>,
}

struct Env {
    ctx: ApproxContext,
    families: Vec<&'static str>,
}

impl Env {
    fn builtin_precision(&self) -> u32 {
        self.ctx.precision_bits + 64
    }

    fn member(&self, name: &str) -> Result<TameDescriptor> {
        catalog::default_member(name, self.builtin_precision())
    }
}

const CHECKS: &[Check] = &[
    Check {
        id: 1,
        name: "geometric special values are -B_(n+1)/(n+1)",
        families: &["hurwitz"],
        tolerance: 0.0,
        limit: Some(1),
        run: geometric_special_values,
    },
    Check {
        id: 2,
        name: "difference operator equals Todd operator on t^n",
        families: &["hurwitz", "eta", "barnes", "dirichletL"],
        tolerance: 0.0,
        limit: Some(10),
        run: operator_matches_todd,
    },
    Check {
        id: 3,
        name: "continuation agrees with Hurwitz oracle",
        families: &["hurwitz", "barnes"],
        tolerance: 1e-20,
        limit: Some(60),
        run: continuation_vs_oracle,
    },
    Check {
        id: 4,
        name: "direct summation agrees with continuation",
        families: catalog::NAMES,
        tolerance: 1e-18,
        limit: Some(60),
        run: overlap_agreement,
    },
    Check {
        id: 5,
        name: "barnes(1,1) poles, residues and removable point",
        families: &["barnes"],
        tolerance: 1e-10,
        limit: None,
        run: barnes_pole_table,
    },
    Check {
        id: 6,
        name: "mod 7 character needs a higher exponent",
        families: &["dirichletL"],
        tolerance: 1e-15,
        limit: None,
        run: multipower_path,
    },
    Check {
        id: 7,
        name: "reconstruction roundtrip at order 20",
        families: &["hurwitz", "eta", "barnes"],
        tolerance: 0.0,
        limit: Some(10),
        run: reconstruction_roundtrip,
    },
    Check {
        id: 8,
        name: "derivative recurrence, leading coefficient and degree",
        families: catalog::NAMES,
        tolerance: 0.0,
        limit: None,
        run: derivative_recurrence,
    },
    Check {
        id: 9,
        name: "Stirling sums equal series composition",
        families: catalog::NAMES,
        tolerance: 0.0,
        limit: None,
        run: stirling_vs_composition,
    },
    Check {
        id: 10,
        name: "incomplete-gamma method agrees for eta",
        families: &["eta"],
        tolerance: 1e-15,
        limit: None,
        run: incgamma_vs_continuation,
    },
    Check {
        id: 11,
        name: "central binomial value and integer anchors",
        families: &["central-binomial"],
        tolerance: 1e-12,
        limit: None,
        run: central_binomial,
    },
    Check {
        id: 12,
        name: "zeta-even has one simple pole with residue 1/2",
        families: &["zeta-even"],
        tolerance: 1e-20,
        limit: None,
        run: zeta_even_pole,
    },
];

/// Tolerance scaled to the working precision: pinned at 128 bits and above.
fn scaled(pinned: f64, ctx: &ApproxContext) -> f64 {
    if pinned == 0.0 {
        0.0
    } else {
        pinned.max(ctx.target_eps)
    }
}

pub fn run_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let ctx = ApproxContext::with_precision(opts.precision_bits);
    let mut report = SuiteReport::default();
    for check in CHECKS {
        let families: Vec<&'static str> =
            check.families.iter().copied().filter(|f| opts.catalog.includes(f)).collect();
        let tolerance = scaled(check.tolerance, &ctx);
        let limit = check.limit.map(Duration::from_secs);
        let mut outcome = CheckOutcome {
            id: check.id,
            name: check.name,
            status: CheckStatus::Skipped,
            measured: 0.0,
            tolerance,
            elapsed: Duration::ZERO,
            limit,
            detail: String::new(),
        };
        if families.is_empty() {
            outcome.detail = "catalog filter excludes every family".into();
            report.checks.push(outcome);
            continue;
        }
        let env = Env {
            ctx: ctx.clone(),
            families,
        };
        let start = Instant::now();
        let result = (check.run)(&env);
        outcome.elapsed = start.elapsed();
        match result {
            Ok(m) => {
                outcome.measured = m.error;
                outcome.detail = m.detail;
                let within = if tolerance == 0.0 { m.error == 0.0 } else { m.error <= tolerance };
                let in_time = limit.is_none_or(|l| outcome.elapsed < l);
                if !in_time {
                    outcome.detail = format!("over time limit; {}", outcome.detail);
                }
                outcome.status = if within && in_time { CheckStatus::Pass } else { CheckStatus::Fail };
            }
            Err(e) => {
                outcome.measured = f64::INFINITY;
                outcome.detail = e.to_string();
                outcome.status = CheckStatus::Fail;
            }
        }
        report.checks.push(outcome);
    }
    Ok(report)
}

fn cplx(re: f64, im: f64) -> Scalar {
    Scalar::approx(Complex::with_val(192, (re, im)))
}

/// Exact equality for exact scalars, a few ulps otherwise.
fn same(a: &Scalar, b: &Scalar) -> bool {
    match a.prec().or(b.prec()) {
        None => a == b,
        Some(p) => {
            let x = a.to_complex(p);
            let y = b.to_complex(p);
            relative_error(&x, &y) <= 2f64.powi(24 - p as i32)
        }
    }
}

fn same_poly(a: &Poly, b: &Poly) -> bool {
    let n = a.coeffs().len().max(b.coeffs().len());
    (0..n).all(|i| same(&a.coeff(i), &b.coeff(i)))
}

/// Bernoulli numbers with B_1 = +1/2 from Σ_(k<n+1) C(n+1,k) B_k = 0.
fn bernoulli_plus(max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::from(1)];
    for n in 1..=max {
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            acc += binomial(n as u64 + 1, k as u64) * bk;
        }
        b.push(-acc / Rational::from(n as u64 + 1));
    }
    if max >= 1 {
        b[1] = Rational::from((1, 2));
    }
    b
}

fn geometric_special_values(_env: &Env) -> Result<Measure> {
    let rep = analyze(&catalog::hurwitz(), &Scalar::one(), 30)?;
    let values = rep.values.ok_or_else(|| Error::numeric("special values not licensed"))?;
    let b = bernoulli_plus(31);
    let mismatches = (0..=30)
        .filter(|&n| {
            let want = Scalar::rational(-(b[n + 1].clone()) / Rational::from(n as u64 + 1));
            values[n] != want
        })
        .count();
    Ok(Measure::exact(mismatches, 31))
}

fn operator_matches_todd(env: &Env) -> Result<Measure> {
    let mut descs = Vec::new();
    for f in &env.families {
        match *f {
            "hurwitz" => descs.push(catalog::hurwitz()),
            "eta" => descs.push(catalog::eta()),
            "barnes" => descs.push(catalog::barnes(&[1, 1])),
            "dirichletL" => {
                descs.push(catalog::dirichlet_l(3, catalog::quadratic_character(3)));
                descs.push(catalog::dirichlet_l(7, catalog::quadratic_character(7)));
            }
            _ => {}
        }
    }
    let mut mismatches = 0;
    let mut total = 0;
    for desc in &descs {
        let todd = todd_series(&laurent_at_one(desc, 12)?, 12)?;
        let mp = build_multipower(desc, &plan_exponents(desc, DEFAULT_MARGIN)?, 12)?;
        for n in 0..=12 {
            let p = Poly::monomial(n);
            total += 1;
            if diff_apply_poly(&mp, &p) != todd_apply(&todd, &p)? {
                mismatches += 1;
            }
        }
    }
    Ok(Measure::exact(mismatches, total))
}

fn continuation_vs_oracle(env: &Env) -> Result<Measure> {
    let points = [cplx(-1.5, 0.0), cplx(-0.25, 0.0), cplx(0.5, 2.0), cplx(2.75, 0.0)];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for f in &env.families {
        let desc = match *f {
            "hurwitz" => catalog::hurwitz(),
            "barnes" => catalog::barnes(&[1, 1]),
            _ => continue,
        };
        for t in [Scalar::ratio(1, 2), Scalar::one()] {
            for s in &points {
                let a = continue_dirichlet(&desc, s, &t, &env.ctx)?;
                let b = oracle_eval(&desc, s, &t, &env.ctx)?;
                worst = worst.max(relative_error(&a.value, &b.value));
                count += 1;
            }
        }
    }
    Ok(Measure {
        error: worst,
        detail: format!("{count} points"),
    })
}

fn overlap_agreement(env: &Env) -> Result<Measure> {
    let mut rng = StdRng::seed_from_u64(20);
    let ts = [Scalar::ratio(1, 2), Scalar::one(), Scalar::ratio(5, 2)];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for f in &env.families {
        let desc = env.member(f)?;
        let nu = laurent_at_one(&desc, 0)?.nu as f64;
        let mut eval = HasseEvaluator::new(&desc, nu + 3.0 + 3.0, &env.ctx)?;
        for k in 0..20 {
            let s = cplx(rng.gen_range(nu + 0.5..nu + 3.0), rng.gen_range(-3.0..3.0));
            let t = &ts[k % ts.len()];
            let a = direct_sum(&desc, &s, t, &env.ctx)?;
            let b = eval.continue_at(&s, t)?;
            worst = worst.max(relative_error(&a.value, &b.value));
            count += 1;
        }
    }
    Ok(Measure {
        error: worst,
        detail: format!("{count} points"),
    })
}

/// Value at δ = 0 of the polynomial through (δ_i, r_i).
fn extrapolate_to_zero(points: &[(f64, Complex)], prec: u32) -> Complex {
    let mut p: Vec<Complex> = points.iter().map(|(_, r)| r.clone()).collect();
    let x: Vec<Float> = points.iter().map(|(d, _)| Float::with_val(prec, *d)).collect();
    for level in 1..p.len() {
        for i in 0..p.len() - level {
            let num = Complex::with_val(prec, &p[i + 1] * &x[i]) - Complex::with_val(prec, &p[i] * &x[i + level]);
            p[i] = num / Float::with_val(prec, &x[i] - &x[i + level]);
        }
    }
    p[0].clone()
}

fn numeric_residue(desc: &TameDescriptor, n: usize, t0: &Scalar, ctx: &ApproxContext) -> Result<Complex> {
    let prec = ctx.precision_bits + 64;
    let mut samples = Vec::new();
    for j in 2..=5 {
        let delta = 10f64.powi(-j);
        let sigma = Float::with_val(prec, n) + Float::with_val(prec, delta);
        let s = Scalar::approx(Complex::with_val(prec, sigma));
        let v = continue_dirichlet(desc, &s, t0, ctx)?;
        samples.push((delta, v.value * Float::with_val(ctx.precision_bits, delta)));
    }
    Ok(extrapolate_to_zero(&samples, ctx.precision_bits))
}

fn barnes_pole_table(env: &Env) -> Result<Measure> {
    let desc = catalog::barnes(&[1, 1]);
    let half = Scalar::ratio(1, 2);
    let mut problems = Vec::new();
    let generic = analyze(&desc, &half, 4)?;
    let expected = [(1, Scalar::ratio(1, 2)), (2, Scalar::one())];
    if generic.pole_set() != vec![1, 2] {
        problems.push(format!("poles at 1/2 are {:?}", generic.pole_set()));
    }
    for (n, r) in &expected {
        if generic.residue(*n) != Some(r) {
            problems.push(format!("residue at {n} is {:?}", generic.residue(*n)));
        }
    }
    let special = analyze(&desc, &Scalar::one(), 4)?;
    if special.pole_set() != vec![2] || !special.removable.iter().any(|r| r.n == 1) {
        problems.push(format!("at t0 = 1 poles {:?}, removable {:?}", special.pole_set(), special.removable));
    }
    let mut worst: f64 = 0.0;
    let cases = [(1, half.clone(), Scalar::ratio(1, 2)), (2, half, Scalar::one()), (1, Scalar::one(), Scalar::zero())];
    for (n, t0, want) in &cases {
        let r = numeric_residue(&desc, *n, t0, &env.ctx)?;
        worst = worst.max(relative_error(&r, &want.to_complex(env.ctx.precision_bits)));
    }
    if !problems.is_empty() {
        return Err(Error::numeric(problems.join("; ")));
    }
    Ok(Measure {
        error: worst,
        detail: "exact table matches; error is the extrapolated residue".into(),
    })
}

fn multipower_path(env: &Env) -> Result<Measure> {
    let desc = catalog::dirichlet_l(7, catalog::quadratic_character(7));
    let exps = plan_exponents(&desc, DEFAULT_MARGIN)?.exponents();
    if exps.iter().all(|&e| e < 2) {
        return Err(Error::numeric(format!("exponents {exps:?} are all 1")));
    }
    let s = Scalar::ratio(5, 2);
    let a = continue_dirichlet(&desc, &s, &Scalar::one(), &env.ctx)?;
    let b = direct_sum(&desc, &s, &Scalar::one(), &env.ctx)?;
    Ok(Measure {
        error: relative_error(&a.value, &b.value),
        detail: format!("exponents {exps:?}"),
    })
}

fn reconstruction_roundtrip(env: &Env) -> Result<Measure> {
    let mut descs = Vec::new();
    for f in &env.families {
        match *f {
            "hurwitz" => {
                descs.push(catalog::hurwitz());
                descs.push(TameDescriptor::Rational(RationalFn::new(
                    Poly::from_ints(&[1, 2]),
                    Poly::from_ints(&[1, -2, 1]),
                )?));
            }
            "eta" => descs.push(catalog::eta()),
            "barnes" => descs.push(catalog::barnes(&[1, 1])),
            _ => {}
        }
    }
    let order = 20;
    let t0 = Scalar::ratio(1, 2);
    let mut mismatches = 0;
    for desc in &descs {
        let rep = analyze(desc, &t0, order)?;
        let poles = rep.poles.iter().map(|p| (p.n, p.residue.clone())).collect();
        let values = rep.values.ok_or_else(|| Error::numeric("special values not licensed"))?;
        let data = ContinuationData::new(t0.clone(), poles, values)?;
        if dirichlet_from_data(&data)?.laurent != laurent_at_one(desc, order)? {
            mismatches += 1;
        }
    }
    Ok(Measure::exact(mismatches, descs.len()))
}

fn derivative_recurrence(env: &Env) -> Result<Measure> {
    let mut mismatches = 0;
    let mut total = 0;
    for f in &env.families {
        let desc = env.member(f)?;
        let l = laurent_at_one(&desc, 30)?;
        let todd = todd_series(&l, 30)?;
        let lead = if l.nu == 0 {
            l.phi[0].clone()
        } else {
            let sign = if l.nu % 2 == 0 { Scalar::one() } else { Scalar::int(-1) };
            &sign * &l.k(l.nu)
        };
        let polys = bernoulli_polys(&todd, 30)?;
        for n in 0..=30 {
            let p = &polys[n].poly;
            total += 1;
            let mut ok = p.degree() == Some(n) && same(&p.leading(), &lead);
            if n > 0 {
                ok &= same_poly(&p.derivative(), &polys[n - 1].poly.scale(&Scalar::int(n as i64)));
            }
            if !ok {
                mismatches += 1;
            }
        }
    }
    Ok(Measure::exact(mismatches, total))
}

fn stirling_vs_composition(env: &Env) -> Result<Measure> {
    let mut mismatches = 0;
    let mut total = 0;
    for f in &env.families {
        let l = laurent_at_one(&env.member(f)?, 20)?;
        let a = psi_from_phi(&l.phi, 20);
        let b = psi_by_composition(&l, 20)?;
        for (x, y) in a.iter().zip(&b) {
            total += 1;
            if !same(x, y) {
                mismatches += 1;
            }
        }
    }
    Ok(Measure::exact(mismatches, total))
}

fn incgamma_vs_continuation(env: &Env) -> Result<Measure> {
    let desc = catalog::eta();
    let mut worst: f64 = 0.0;
    for s in [Scalar::ratio(-1, 2), Scalar::ratio(1, 4), Scalar::int(2)] {
        let a = incgamma_eval(&desc, &s, &Scalar::one(), &env.ctx)?;
        let b = continue_dirichlet(&desc, &s, &Scalar::one(), &env.ctx)?;
        worst = worst.max(relative_error(&a.value, &b.value));
    }
    Ok(Measure {
        error: worst,
        detail: "3 points".into(),
    })
}

/// Σ_n (t+n)^m / C(2n+2, n+1), which converges since the terms decay like 4^(−n).
fn central_binomial_anchor(m: u32, t: &Rational, prec: u32) -> Float {
    let mut sum = Float::with_val(prec, 0);
    let mut n = 0u64;
    loop {
        let base = Rational::from(t + Integer::from(n));
        let pw = base.pow(m);
        let term = Float::with_val(prec, pw / binomial(2 * n + 2, n + 1));
        sum += &term;
        if n > 8 && term.to_f64().abs() < 2f64.powi(-(prec as i32) - 8) {
            return sum;
        }
        n += 1;
    }
}

fn central_binomial(env: &Env) -> Result<Measure> {
    let desc = env.member("central-binomial")?;
    let prec = env.ctx.precision_bits;
    let v = direct_sum(&desc, &Scalar::int(2), &Scalar::one(), &env.ctx)?;
    let want = Complex::with_val(prec, pi(prec).square() / 18u32);
    let direct_err = relative_error(&v.value, &want);
    let mut anchor_err: f64 = 0.0;
    for t in [Rational::from((1, 2)), Rational::from(1)] {
        for m in 0..=6u32 {
            let s = Scalar::int(-(m as i64));
            let h = continue_dirichlet(&desc, &s, &Scalar::rational(t.clone()), &env.ctx)?;
            let b = Complex::with_val(prec, central_binomial_anchor(m, &t, prec + 32));
            anchor_err = anchor_err.max(relative_error(&h.value, &b));
        }
    }
    let anchor_tol = scaled(1e-20, &env.ctx);
    if anchor_err > anchor_tol {
        return Err(Error::numeric(format!(
            "integer anchors off by {anchor_err:.3e} (tol {anchor_tol:.1e})"
        )));
    }
    Ok(Measure {
        error: direct_err,
        detail: format!("direct error; anchors error {anchor_err:.3e} (tol {anchor_tol:.1e})"),
    })
}

fn zeta_even_pole(env: &Env) -> Result<Measure> {
    let rep = analyze(&env.member("zeta-even")?, &Scalar::one(), 2)?;
    if rep.pole_set() != vec![1] {
        return Err(Error::numeric(format!("poles {:?}", rep.pole_set())));
    }
    let prec = env.ctx.precision_bits;
    let r = rep.residue(1).expect("pole at 1").to_complex(prec);
    Ok(Measure {
        error: relative_error(&r, &Complex::with_val(prec, 0.5)),
        detail: "pole set {1}".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_plus_values() {
        let b = bernoulli_plus(4);
        assert_eq!(b[1], Rational::from((1, 2)));
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[3], Rational::new());
        assert_eq!(b[4], Rational::from((-1, 30)));
    }

    #[test]
    fn extrapolation_recovers_polynomial_value() {
        let pts: Vec<(f64, Complex)> = [0.1, 0.01, 0.001]
            .iter()
            .map(|&d| (d, Complex::with_val(128, 2.0 + 3.0 * d - d * d)))
            .collect();
        let v = extrapolate_to_zero(&pts, 128);
        assert!((v.real().to_f64() - 2.0).abs() < 1e-25);
    }

    #[test]
    fn anchor_at_zero_is_sum_of_coefficients() {
        // Σ 1/C(2n,n) over n ≥ 1 is 1/3 + 2π√3/27.
        let got = central_binomial_anchor(0, &Rational::from(1), 128).to_f64();
        let want = 1.0 / 3.0 + 2.0 * std::f64::consts::PI * 3f64.sqrt() / 27.0;
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn filter_parsing() {
        assert_eq!(CatalogFilter::parse("none").unwrap(), CatalogFilter::None);
        assert!(CatalogFilter::parse("eta,hurwitz").unwrap().includes("eta"));
        assert!(CatalogFilter::parse("bogus").is_err());
    }

    #[test]
    fn empty_filter_skips_everything() {
        let r = run_suite(&SuiteOptions {
            precision_bits: 128,
            catalog: CatalogFilter::None,
        })
        .unwrap();
        assert_eq!(r.checks.len(), 12);
        assert!(r.passed());
        assert!(r.checks.iter().all(|c| c.status == CheckStatus::Skipped));
    }
}
