//! Random search over exponent sets of a fixed size, one JSONL record per
//! sampled `U`.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use gtc_core::distance::{self, Budget, DistanceError};
use gtc_core::{CodeSpec, ExponentSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::json_line;
use crate::error::CliError;

pub struct SearchConfig {
    pub q: u32,
    pub r: usize,
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub timestamp: bool,
    pub budget: Budget,
}

#[derive(Debug, Serialize)]
pub struct SearchRecord {
    pub q: u32,
    pub r: usize,
    #[serde(rename = "U")]
    pub u: String,
    pub n: usize,
    pub k: usize,
    /// `None` when both engines ran out of budget.
    pub d: Option<usize>,
    pub method: &'static str,
    pub certified_lower_bound: usize,
    pub seed: u64,
    pub sample: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

fn evaluate(spec: &CodeSpec, budget: &Budget) -> Result<(Option<usize>, &'static str, usize), CliError> {
    match distance::min_distance_exhaustive(spec, budget) {
        Ok(res) => return Ok((Some(res.d), "exhaustive", res.certified_lower_bound)),
        Err(DistanceError::BudgetExceeded { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    match distance::min_distance_column_rank(spec, budget) {
        Ok(res) => Ok((Some(res.d), "column-rank", res.certified_lower_bound)),
        Err(DistanceError::BudgetExceeded {
            certified_lower_bound,
            ..
        }) => Ok((None, "budget-exceeded", certified_lower_bound)),
        Err(e) => Err(e.into()),
    }
}

/// Samples `U` uniformly among the `k`-subsets of `H`.
pub fn sample_sets(cfg: &SearchConfig, torus_grid: gtc_core::Grid) -> Vec<ExponentSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = torus_grid.len();
    (0..cfg.samples)
        .map(|_| {
            let picks = rand::seq::index::sample(&mut rng, n, cfg.k);
            ExponentSet::from_vectors(torus_grid, picks.into_iter().map(|i| torus_grid.lex_unrank(i)))
        })
        .collect()
}

pub fn run(cfg: &SearchConfig) -> Result<String, CliError> {
    let field = gtc_core::FiniteField::new(cfg.q as u64)?;
    let torus = gtc_core::Torus::new(std::sync::Arc::new(field), cfg.r)?;
    let n = torus.n();
    if cfg.k == 0 || cfg.k > n {
        return Err(CliError::usage(
            "InvalidDimension",
            format!("k must lie in 1..={n}"),
        ));
    }
    let stamp = cfg.timestamp.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let mut lines = String::new();
    let mut partial = None;
    for (sample, u) in sample_sets(cfg, torus.grid()).into_iter().enumerate() {
        let spec = CodeSpec::new(torus.clone(), u)?;
        let (d, method, certified_lower_bound) = evaluate(&spec, &cfg.budget)?;
        if d.is_none() {
            partial.get_or_insert(certified_lower_bound);
        }
        lines.push_str(&json_line(&SearchRecord {
            q: cfg.q,
            r: cfg.r,
            u: spec.u().to_string(),
            n,
            k: spec.k(),
            d,
            method,
            certified_lower_bound,
            seed: cfg.seed,
            sample,
            timestamp: stamp,
        })?);
    }
    let output = match &cfg.out {
        Some(path) => {
            let mut file = OpenOptions::new().create(true).append(true).open(path)?;
            file.write_all(lines.as_bytes())?;
            String::new()
        }
        None => lines,
    };
    if let Some(bound) = partial {
        // records are already written; report the truncation
        print!("{output}");
        return Err(CliError::Budget {
            detail: "at least one sample exceeded the budget of both engines".into(),
            certified_lower_bound: bound,
        });
    }
    Ok(output)
}
