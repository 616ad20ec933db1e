//! TOML config files and the merged run configuration.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use tamezeta::scalar::{ApproxContext, Scalar};
use tamezeta::tame::TameDescriptor;

use crate::args::{AnalyzeArgs, ContextSpec, DescriptorSpec, Format, MethodName, RunSpec};
use crate::descriptor::build_descriptor;
use crate::error::{CliError, CliResult};

/// Layout of a config file; every key is optional.
#[derive(Deserialize, Debug, Default, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub descriptor: DescriptorSpec,
    pub context: ContextSpec,
    pub run: RunSpec,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.display().to_string(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Config {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}

macro_rules! overlay {
    ($flags:expr, $file:expr, $($field:ident),+) => {
        $( if $flags.$field.is_none() { $flags.$field = $file.$field; } )+
    };
}

/// Everything one analyze or eval invocation needs.
#[derive(Debug)]
pub struct RunConfig {
    /// Catalog family, or "rational" for an inline numerator and denominator.
    pub name: String,
    pub descriptor: TameDescriptor,
    pub ctx: ApproxContext,
    pub t0: Scalar,
    pub points: Vec<Scalar>,
    pub k: usize,
    pub method: MethodName,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: AnalyzeArgs) -> CliResult<Self> {
        let AnalyzeArgs {
            mut descriptor,
            mut context,
            mut run,
            config,
        } = args;
        if let Some(path) = config {
            let file = ConfigFile::load(&path)?;
            overlay!(descriptor, file.descriptor, catalog, a, modulus, chi, power, w, g, p, d, num, den);
            overlay!(context, file.context, precision, eps, max_terms);
            overlay!(run, file.run, t0, s, k, method, format, output);
        }
        let precision = context.precision.unwrap_or(128);
        let defaults = ApproxContext::with_precision(precision);
        let ctx = ApproxContext::new(
            precision,
            context.eps.unwrap_or(defaults.target_eps),
            context.max_terms.unwrap_or(defaults.max_terms),
        )?;
        let name = descriptor.catalog.clone().unwrap_or_else(|| "rational".into());
        let descriptor = build_descriptor(&descriptor, precision + 64)?;
        let t0 = match &run.t0 {
            Some(t) => Scalar::parse(t)?,
            None => Scalar::one(),
        };
        let points = match &run.s {
            Some(list) => list
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(Scalar::parse)
                .collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        Ok(RunConfig {
            name,
            descriptor,
            ctx,
            t0,
            points,
            k: run.k.unwrap_or(10),
            method: run.method.unwrap_or_default(),
            format: run.format.unwrap_or_default(),
            output: run.output,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_lists() {
        let file: ConfigFile = toml::from_str(
            r#"
            [descriptor]
            catalog = "barnes"
            a = [1, 2]
            [context]
            precision = 96
            [run]
            t0 = "1/2"
            s = ["-1.5", 2]
            method = "compare"
            format = "csv"
            "#,
        )
        .unwrap();
        assert_eq!(file.descriptor.a.as_deref(), Some("1,2"));
        assert_eq!(file.run.s.as_deref(), Some("-1.5,2"));
        assert_eq!(file.run.method, Some(MethodName::Compare));
        assert_eq!(file.context.precision, Some(96));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<ConfigFile>("[run]\nbogus = 1").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "[descriptor]\ncatalog = \"eta\"\n[run]\nt0 = \"2\"\nk = 3\n").unwrap();
        let mut args = AnalyzeArgs {
            config: Some(path),
            ..Default::default()
        };
        args.run.t0 = Some("1/2".into());
        let cfg = RunConfig::resolve(args).unwrap();
        assert_eq!(cfg.t0, Scalar::ratio(1, 2));
        assert_eq!(cfg.k, 3);
        assert_eq!(cfg.name, "eta");
        assert_eq!(cfg.descriptor, tamezeta::tame::catalog::eta());
    }
}
