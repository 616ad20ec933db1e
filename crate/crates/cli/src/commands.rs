//! The analyze, eval and selftest commands and their report documents.

use std::collections::BTreeSet;

use rug::Complex;
use serde_json::{json, Value};
use tamezeta::continuation::{analyze, ContinuationReport, Genericity};
use tamezeta::numeval::{EvalResult, MethodRegistry};
use tamezeta::scalar::{format_float, ApproxContext, Scalar};
use tamezeta::selftest::{run_suite, CatalogFilter, CheckStatus, SuiteOptions, SuiteReport};
use tamezeta::Error;

use crate::args::{Format, SelftestArgs};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// Significant digits worth printing at the context tolerance.
fn digits(ctx: &ApproxContext) -> usize {
    let by_eps = (-ctx.target_eps.log10()).ceil() as usize + 2;
    let by_prec = (ctx.precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
    by_eps.min(by_prec).max(6)
}

fn text(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn texts(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(text).collect())
}

fn float_text(x: f64) -> Value {
    Value::String(format!("{x:e}"))
}

pub fn analyze_document(cfg: &RunConfig, rep: &ContinuationReport) -> Value {
    let principal: Vec<Scalar> = (1..=rep.nu).map(|n| rep.laurent.k(n)).collect();
    let (genericity, vanishing) = match &rep.genericity {
        Genericity::Generic => ("generic", Vec::new()),
        Genericity::Special { vanishing } => ("special", vanishing.clone()),
    };
    json!({
        "descriptor": cfg.name,
        "t0": text(&rep.t0),
        "nu": rep.nu,
        "laurent": {
            "principal": texts(&principal),
            "regular": texts(&rep.laurent.phi),
        },
        "poles": rep.poles.iter().map(|p| json!([p.n, text(&p.residue)])).collect::<Vec<_>>(),
        "removable": rep.removable.iter().map(|r| json!({"n": r.n, "derivative_order": r.derivative_order})).collect::<Vec<_>>(),
        "genericity": genericity,
        "vanishing_derivatives": vanishing,
        "values": rep.values.as_deref().map(texts),
        "values_licensed": rep.values_licensed,
        "bernoulli": rep.bernoulli.iter().map(|b| json!({"n": b.n, "coefficients": texts(b.poly.coeffs())})).collect::<Vec<_>>(),
        "warnings": rep.warnings,
    })
}

pub fn run_analyze(cfg: &RunConfig) -> CliResult<String> {
    let rep = analyze(&cfg.descriptor, &cfg.t0, cfg.k)?;
    Ok(pretty(&analyze_document(cfg, &rep)))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// One evaluated point, or the pole it sits on.
pub struct EvalRow {
    pub s: Scalar,
    pub outcome: Result<EvalResult, (usize, String)>,
}

pub fn run_eval_rows(cfg: &RunConfig) -> CliResult<Vec<EvalRow>> {
    if cfg.points.is_empty() {
        return Err(CliError::input("give evaluation points with --s"));
    }
    let registry = MethodRegistry::standard();
    let mut rows = Vec::new();
    for s in &cfg.points {
        let outcome = match registry.evaluate(cfg.method.as_str(), &cfg.descriptor, s, &cfg.t0, &cfg.ctx) {
            Ok(r) => Ok(r),
            Err(Error::NearPole { pole, residue, .. }) => Err((pole, residue)),
            Err(e) => return Err(e.into()),
        };
        rows.push(EvalRow { s: s.clone(), outcome });
    }
    Ok(rows)
}

fn parts(z: &Complex, digits: usize) -> (String, String) {
    (format_float(z.real(), digits), format_float(z.imag(), digits))
}

fn compared_methods(rows: &[EvalRow]) -> Vec<String> {
    let mut names = BTreeSet::new();
    for row in rows {
        if let Ok(r) = &row.outcome {
            names.extend(r.comparisons.iter().map(|c| c.method.clone()));
        }
    }
    names.into_iter().collect()
}

pub fn eval_json(cfg: &RunConfig, rows: &[EvalRow]) -> String {
    let d = digits(&cfg.ctx);
    let prec = cfg.ctx.precision_bits;
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            let (s_re, s_im) = parts(&row.s.to_complex(prec), d);
            let mut obj = json!({"s": text(&row.s), "s_re": s_re, "s_im": s_im});
            let map = obj.as_object_mut().expect("object");
            match &row.outcome {
                Ok(r) => {
                    let (re, im) = parts(&r.value, d);
                    map.insert("value_re".into(), re.into());
                    map.insert("value_im".into(), im.into());
                    map.insert("method".into(), r.method.clone().into());
                    map.insert("terms".into(), r.terms.into());
                    map.insert("tail_bound".into(), float_text(r.tail_bound));
                    map.insert("flags".into(), r.flags.iter().map(|f| f.to_string()).collect::<Vec<_>>().into());
                    if let Some(x) = &r.exact {
                        map.insert("exact".into(), text(x));
                    }
                    if !r.comparisons.is_empty() {
                        let cmp: Vec<Value> = r
                            .comparisons
                            .iter()
                            .map(|c| {
                                let (re, im) = parts(&c.value, d);
                                json!({"method": c.method, "value_re": re, "value_im": im, "tail_bound": float_text(c.tail_bound)})
                            })
                            .collect();
                        map.insert("comparisons".into(), cmp.into());
                        if let Some(dev) = r.max_deviation() {
                            map.insert("max_deviation".into(), float_text(dev));
                        }
                    }
                }
                Err((pole, residue)) => {
                    map.insert("flags".into(), vec!["near-pole"].into());
                    map.insert("pole".into(), (*pole).into());
                    map.insert("residue".into(), residue.clone().into());
                }
            }
            obj
        })
        .collect();
    pretty(&json!({
        "descriptor": cfg.name,
        "t": text(&cfg.t0),
        "method": cfg.method.as_str(),
        "precision_bits": prec,
        "eps": float_text(cfg.ctx.target_eps),
        "rows": rows,
    }))
}

pub fn eval_csv(cfg: &RunConfig, rows: &[EvalRow]) -> CliResult<String> {
    let d = digits(&cfg.ctx);
    let prec = cfg.ctx.precision_bits;
    let methods = compared_methods(rows);
    let mut header: Vec<String> = ["s_re", "s_im", "value_re", "value_im", "method", "tail_bound", "flags"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for m in &methods {
        header.push(format!("{m}_re"));
        header.push(format!("{m}_im"));
    }
    if !methods.is_empty() {
        header.push("max_deviation".into());
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::input(format!("csv: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        let (s_re, s_im) = parts(&row.s.to_complex(prec), d);
        let mut rec = vec![s_re, s_im];
        match &row.outcome {
            Ok(r) => {
                let (re, im) = parts(&r.value, d);
                let flags: Vec<String> = r.flags.iter().map(|f| f.to_string()).collect();
                rec.extend([re, im, r.method.clone(), format!("{:e}", r.tail_bound), flags.join(";")]);
                for m in &methods {
                    match r.comparisons.iter().find(|c| &c.method == m) {
                        Some(c) => {
                            let (re, im) = parts(&c.value, d);
                            rec.extend([re, im]);
                        }
                        None => rec.extend([String::new(), String::new()]),
                    }
                }
                if !methods.is_empty() {
                    rec.push(r.max_deviation().map(|x| format!("{x:e}")).unwrap_or_default());
                }
            }
            Err(_) => {
                rec.extend([String::new(), String::new(), cfg.method.as_str().into(), String::new(), "near-pole".into()]);
                rec.extend(std::iter::repeat_n(String::new(), 2 * methods.len() + usize::from(!methods.is_empty())));
            }
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::input(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn run_eval(cfg: &RunConfig) -> CliResult<String> {
    let rows = run_eval_rows(cfg)?;
    match cfg.format {
        Format::Json => Ok(eval_json(cfg, &rows)),
        Format::Csv => eval_csv(cfg, &rows),
    }
}

pub fn selftest_options(args: &SelftestArgs) -> CliResult<SuiteOptions> {
    let precision_bits = args.precision.unwrap_or(128);
    if precision_bits < 32 {
        return Err(CliError::input("selftest needs at least 32 bits"));
    }
    let catalog = match &args.catalog {
        Some(c) => CatalogFilter::parse(c)?,
        None => CatalogFilter::All,
    };
    Ok(SuiteOptions { precision_bits, catalog })
}

pub fn selftest_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    let failed = report.failures().len();
    let skipped = report.checks.iter().filter(|c| c.status == CheckStatus::Skipped).count();
    out.push_str(&format!(
        "{} checks: {} passed, {failed} failed, {skipped} skipped\n",
        report.checks.len(),
        report.checks.len() - failed - skipped
    ));
    out
}

pub fn selftest_json(opts: &SuiteOptions, report: &SuiteReport) -> String {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "name": c.name,
                "status": c.status.label(),
                "measured": float_text(c.measured),
                "tolerance": float_text(c.tolerance),
                "elapsed_s": format!("{:.3}", c.elapsed.as_secs_f64()),
                "limit_s": c.limit.map(|l| l.as_secs().to_string()),
                "detail": c.detail,
            })
        })
        .collect();
    pretty(&json!({
        "precision_bits": opts.precision_bits,
        "passed": report.passed(),
        "checks": checks,
    }))
}

pub fn run_selftest(args: &SelftestArgs) -> CliResult<(String, SuiteReport)> {
    let opts = selftest_options(args)?;
    let report = run_suite(&opts)?;
    let out = if args.json { selftest_json(&opts, &report) } else { selftest_text(&report) };
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::{AnalyzeArgs, MethodName};

    fn cfg(catalog: &str, s: &str, t0: &str) -> RunConfig {
        let mut a = AnalyzeArgs::default();
        a.descriptor.catalog = Some(catalog.into());
        a.run.s = Some(s.into());
        a.run.t0 = Some(t0.into());
        RunConfig::resolve(a).unwrap()
    }

    #[test]
    fn digits_follow_tolerance() {
        assert_eq!(digits(&ApproxContext::with_precision(128)), 27);
        assert_eq!(digits(&ApproxContext::with_precision(64)), 14);
    }

    #[test]
    fn analyze_document_is_canonical() {
        let c = cfg("hurwitz", "0", "1");
        let out = run_analyze(&c).unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["poles"], json!([[1, "1"]]));
        assert_eq!(v["values"][1], "-1/12");
        assert_eq!(pretty(&v), out);
    }

    #[test]
    fn near_pole_becomes_a_flagged_row() {
        let c = cfg("hurwitz", "1,2", "1");
        let rows = run_eval_rows(&c).unwrap();
        assert_eq!(rows[0].outcome.as_ref().err().map(|e| e.0), Some(1));
        assert!(rows[1].outcome.is_ok());
        let csv = eval_csv(&c, &rows).unwrap();
        assert!(csv.lines().nth(1).unwrap().ends_with("near-pole"));
    }

    #[test]
    fn compare_adds_method_columns() {
        let mut c = cfg("eta", "2", "1");
        c.method = MethodName::Compare;
        let rows = run_eval_rows(&c).unwrap();
        let csv = eval_csv(&c, &rows).unwrap();
        let header = csv.lines().next().unwrap();
        assert!(header.contains("oracle_re") && header.ends_with("max_deviation"));
    }
}
