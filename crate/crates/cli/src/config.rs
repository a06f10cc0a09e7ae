//! Run configuration: defaults, then values from a flat JSON config file,
//! then command-line flags, in increasing precedence.

use std::path::PathBuf;

use serde::Deserialize;

use harmap::catalog::{self, CatalogParams};
use harmap::harmonic::{self, HarmonicMap};
use harmap::order::GridSpec;

use crate::{from_core, usage_err, Cli, Failure, Format};

/// Flat JSON config document; every field optional. Catalog parameters sit at
/// the top level (n, alpha, omega0, beta, rho, epsilon).
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    map: Option<String>,
    n: Option<u32>,
    alpha: Option<f64>,
    omega0: Option<[f64; 2]>,
    beta: Option<f64>,
    rho: Option<[f64; 2]>,
    epsilon: Option<[f64; 2]>,
    grid_m: Option<usize>,
    grid_n: Option<u32>,
    grid_k: Option<u32>,
    grid_r: Option<usize>,
    ode_tol: Option<f64>,
    report_tol: Option<f64>,
    seed: Option<u64>,
    threads: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

pub struct RunConfig {
    pub map: Option<String>,
    pub catalog_params: CatalogParams,
    pub grid_m: usize,
    pub grid_n: usize,
    pub grid_k: u32,
    pub grid_r: usize,
    pub ode_tol: f64,
    pub report_tol: f64,
    pub seed: u64,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn assemble(cli: &Cli) -> Result<Self, Failure> {
        let file: FileConfig = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| usage_err(format!("cannot read config {path:?}: {e}")))?;
                serde_json::from_str(&text)
                    .map_err(|e| usage_err(format!("bad config {path:?}: {e}")))?
            }
            None => FileConfig::default(),
        };

        // catalog params: file values first, then the inline --params JSON
        let mut params = CatalogParams {
            n: file.n,
            alpha: file.alpha,
            omega0: file.omega0.map(|[re, im]| num_complex::Complex64::new(re, im)),
            beta: file.beta,
            rho: file.rho.map(|[re, im]| num_complex::Complex64::new(re, im)),
            epsilon: file.epsilon.map(|[re, im]| num_complex::Complex64::new(re, im)),
        };
        if let Some(text) = &cli.params {
            let value: serde_json::Value = serde_json::from_str(text)
                .map_err(|e| usage_err(format!("--params is not valid JSON: {e}")))?;
            let overlay = CatalogParams::from_json(&value).map_err(from_core)?;
            params = CatalogParams {
                n: overlay.n.or(params.n),
                alpha: overlay.alpha.or(params.alpha),
                omega0: overlay.omega0.or(params.omega0),
                beta: overlay.beta.or(params.beta),
                rho: overlay.rho.or(params.rho),
                epsilon: overlay.epsilon.or(params.epsilon),
            };
        }

        let cfg = Self {
            map: cli.map.clone().or(file.map),
            catalog_params: params,
            grid_m: cli.grid_m.or(file.grid_m).unwrap_or(64),
            grid_n: cli.grid_n.or(file.grid_n).unwrap_or(256) as usize,
            grid_k: cli.grid_k.or(file.grid_k).unwrap_or(20),
            grid_r: cli.grid_r.or(file.grid_r).unwrap_or(40),
            ode_tol: cli.tol.or(file.ode_tol).unwrap_or(1e-8),
            report_tol: cli.report_tol.or(file.report_tol).unwrap_or(1e-9),
            seed: cli.seed.or(file.seed).unwrap_or(0),
            threads: cli.threads.or(file.threads),
            out: cli.out.clone().or(file.out),
            format: cli.format.or(file.format).unwrap_or(Format::Csv),
        };

        if cfg.ode_tol.is_nan() || cfg.ode_tol <= 0.0 || cfg.report_tol.is_nan() || cfg.report_tol <= 0.0 {
            return Err(usage_err("tolerances must be positive"));
        }
        if cfg.grid_m == 0 || cfg.grid_n == 0 || cfg.grid_k == 0 || cfg.grid_r == 0 {
            return Err(usage_err("grid counts must be >= 1"));
        }
        Ok(cfg)
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec::new(self.grid_m, self.grid_n, self.grid_k, self.grid_r)
    }

    /// Worker parallelism: the config bound capped by HARMAP_THREADS.
    pub fn apply_thread_cap(&self) {
        let env_cap = std::env::var("HARMAP_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&n| n > 0);
        let cap = match (self.threads.filter(|&n| n > 0), env_cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(n) = cap {
            // Ignore the error when a global pool already exists.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }

    pub fn build_map(&self) -> Result<HarmonicMap, Failure> {
        let name = self
            .map
            .as_deref()
            .ok_or_else(|| usage_err("no map given (use --map or a config file)"))?;
        if catalog::entry(name).is_some() {
            return catalog::build(name, &self.catalog_params).map_err(from_core);
        }
        // otherwise treat it as a descriptor file path
        let path = std::path::Path::new(name);
        if path.exists() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage_err(format!("cannot read map descriptor {path:?}: {e}")))?;
            return harmonic::map_from_json(&text).map_err(from_core);
        }
        Err(usage_err(format!(
            "'{name}' is neither a catalog map nor an existing descriptor file"
        )))
    }

    /// Unboundedness metadata for the mu-sqrt criterion; descriptor-file maps
    /// default to bounded.
    pub fn map_unbounded_flag(&self) -> bool {
        self.map
            .as_deref()
            .and_then(catalog::entry)
            .map(|e| e.unbounded)
            .unwrap_or(false)
    }
}
