//! Evaluation strategies selectable by name.

use rug::Complex;

use super::{continue_dirichlet, direct_sum, incgamma_eval, oracle_eval, EvalResult};
use crate::error::{Error, Result};
use crate::scalar::{ApproxContext, Scalar};
use crate::tame::{laurent_at_one, TameDescriptor};

use super::hurwitz::cyclotomic_shape;

/// One method's value in a comparison.
#[derive(Clone, Debug)]
pub struct MethodValue {
    pub method: String,
    pub value: Complex,
    pub tail_bound: f64,
}

pub trait EvalMethod: Send + Sync {
    fn name(&self) -> &'static str;
    /// Ok when the method can evaluate this descriptor at s, else the reason.
    fn applicable(&self, desc: &TameDescriptor, s: &Scalar) -> std::result::Result<(), String>;
    fn evaluate(&self, desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult>;
}

struct Hasse;
struct Oracle;
struct Direct;
struct IncGamma;
struct Compare {
    methods: Vec<Box<dyn EvalMethod>>,
}

fn pole_order(desc: &TameDescriptor) -> std::result::Result<usize, String> {
    laurent_at_one(desc, 0).map(|l| l.nu).map_err(|e| e.to_string())
}

impl EvalMethod for Hasse {
    fn name(&self) -> &'static str {
        "hasse"
    }
    fn applicable(&self, desc: &TameDescriptor, _s: &Scalar) -> std::result::Result<(), String> {
        pole_order(desc).map(|_| ())
    }
    fn evaluate(&self, desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
        continue_dirichlet(desc, s, t, ctx)
    }
}

impl EvalMethod for Oracle {
    fn name(&self) -> &'static str {
        "oracle"
    }
    fn applicable(&self, desc: &TameDescriptor, _s: &Scalar) -> std::result::Result<(), String> {
        cyclotomic_shape(desc).map(|_| ()).map_err(|e| e.to_string())
    }
    fn evaluate(&self, desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
        oracle_eval(desc, s, t, ctx)
    }
}

impl EvalMethod for Direct {
    fn name(&self) -> &'static str {
        "direct"
    }
    fn applicable(&self, desc: &TameDescriptor, s: &Scalar) -> std::result::Result<(), String> {
        let nu = pole_order(desc)?;
        let re = s.to_complex(64).real().to_f64();
        if re > nu as f64 + 0.25 {
            Ok(())
        } else {
            Err(format!("needs Re s > {}", nu as f64 + 0.25))
        }
    }
    fn evaluate(&self, desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
        direct_sum(desc, s, t, ctx)
    }
}

impl EvalMethod for IncGamma {
    fn name(&self) -> &'static str {
        "incgamma"
    }
    fn applicable(&self, desc: &TameDescriptor, _s: &Scalar) -> std::result::Result<(), String> {
        match pole_order(desc)? {
            0 => Ok(()),
            nu => Err(format!("needs ν = 0, have ν = {nu}")),
        }
    }
    fn evaluate(&self, desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
        incgamma_eval(desc, s, t, ctx)
    }
}

impl EvalMethod for Compare {
    fn name(&self) -> &'static str {
        "compare"
    }
    fn applicable(&self, desc: &TameDescriptor, s: &Scalar) -> std::result::Result<(), String> {
        let n = self.methods.iter().filter(|m| m.applicable(desc, s).is_ok()).count();
        if n >= 2 {
            Ok(())
        } else {
            Err(format!("only {n} method applies; comparison needs two"))
        }
    }
    fn evaluate(&self, desc: &TameDescriptor, s: &Scalar, t: &Scalar, ctx: &ApproxContext) -> Result<EvalResult> {
        self.applicable(desc, s).map_err(Error::unsupported)?;
        let mut results = Vec::new();
        for m in self.methods.iter().filter(|m| m.applicable(desc, s).is_ok()) {
            results.push(m.evaluate(desc, s, t, ctx)?);
        }
        let mut first = results[0].clone();
        first.comparisons = results
            .iter()
            .map(|r| MethodValue {
                method: r.method.clone(),
                value: r.value.clone(),
                tail_bound: r.tail_bound,
            })
            .collect();
        first.tail_bound = results.iter().map(|r| r.tail_bound).fold(0.0, f64::max);
        first.method = "compare".into();
        for r in &results[1..] {
            for f in &r.flags {
                first = first.with_flag(*f);
            }
        }
        Ok(first)
    }
}

fn base_methods() -> Vec<Box<dyn EvalMethod>> {
    vec![Box::new(Hasse), Box::new(Oracle), Box::new(Direct), Box::new(IncGamma)]
}

/// Name-indexed collection of evaluation methods.
pub struct MethodRegistry {
    methods: Vec<Box<dyn EvalMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        MethodRegistry { methods: Vec::new() }
    }

    /// hasse, oracle, direct, incgamma and compare.
    pub fn standard() -> Self {
        let mut r = MethodRegistry { methods: base_methods() };
        r.register(Box::new(Compare { methods: base_methods() }));
        r
    }

    /// Adds a method, replacing any with the same name.
    pub fn register(&mut self, method: Box<dyn EvalMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(method);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn EvalMethod> {
        self.methods.iter().find(|m| m.name() == name).map(|m| m.as_ref())
    }

    pub fn evaluate(
        &self,
        name: &str,
        desc: &TameDescriptor,
        s: &Scalar,
        t: &Scalar,
        ctx: &ApproxContext,
    ) -> Result<EvalResult> {
        let m = self
            .get(name)
            .ok_or_else(|| Error::invalid(format!("unknown method {name}; known: {}", self.names().join(", "))))?;
        m.applicable(desc, s).map_err(|why| Error::unsupported(format!("{name}: {why}")))?;
        m.evaluate(desc, s, t, ctx)
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::relative_error;
    use crate::tame::catalog;

    #[test]
    fn standard_names() {
        let r = MethodRegistry::standard();
        assert_eq!(r.names(), vec!["hasse", "oracle", "direct", "incgamma", "compare"]);
        assert!(r.get("nope").is_none());
    }

    #[test]
    fn compare_reports_agreement() {
        let r = MethodRegistry::standard();
        let ctx = ApproxContext::with_precision(128);
        let v = r.evaluate("compare", &catalog::eta(), &Scalar::int(2), &Scalar::one(), &ctx).unwrap();
        assert_eq!(v.comparisons.len(), 4);
        assert!(v.max_deviation().unwrap() < 1e-25);
    }

    #[test]
    fn inapplicable_method_is_refused() {
        let r = MethodRegistry::standard();
        let ctx = ApproxContext::with_precision(64);
        let err = r.evaluate("incgamma", &catalog::hurwitz(), &Scalar::int(2), &Scalar::one(), &ctx);
        assert!(matches!(err, Err(Error::Unsupported(_))));
        let err = r.evaluate("compare", &catalog::central_binomial(64), &Scalar::ratio(-1, 2), &Scalar::one(), &ctx);
        assert!(err.is_ok());
        let v = err.unwrap();
        assert!(relative_error(&v.comparisons[0].value, &v.comparisons[1].value) < 1e-10);
    }
}
