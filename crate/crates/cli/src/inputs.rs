use std::fs;

use eigenform_core::solver::{SolverConfig, Start};
use eigenform_core::triples::{builtin, TripleFile};
use eigenform_core::{DirichletForm, FractalTriple, Weights};

use crate::output::CliError;

pub fn read_text(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
}

pub fn load_triple_file(arg: &str) -> Result<TripleFile, CliError> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return Ok(builtin(name)?.to_file());
    }
    let text = read_text(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("cannot parse {arg}: {e}")))
}

pub fn load_triple(arg: &str) -> Result<FractalTriple, CliError> {
    Ok(FractalTriple::from_file(load_triple_file(arg)?)?)
}

pub fn weights(triple: &FractalTriple, values: &[f64]) -> Result<Weights, CliError> {
    if values.len() != triple.n_cells() {
        return Err(CliError::Input(format!(
            "triple has {} cells but {} weights were given",
            triple.n_cells(),
            values.len()
        )));
    }
    Ok(Weights::new(values.to_vec())?)
}

/// A form file, or `coeffs:c1,c2,...` for the given boundary size.
pub fn load_form(arg: &str, n_boundary: usize) -> Result<DirichletForm, CliError> {
    let form = if let Some(list) = arg.strip_prefix("coeffs:") {
        let coeffs = list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::Input(format!("bad coefficient `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        DirichletForm::new(n_boundary, coeffs)?
    } else {
        DirichletForm::from_json(&read_text(arg)?)?
    };
    if form.n_boundary() != n_boundary {
        return Err(CliError::Input(format!(
            "form has {} boundary vertices, triple has {n_boundary}",
            form.n_boundary()
        )));
    }
    Ok(form)
}

/// Values for `--set` that are not solver fields.
#[derive(Debug, Clone, Copy)]
pub struct Extra {
    pub check_tol: f64,
}

pub fn apply_overrides(sets: &[String], config: &mut SolverConfig) -> Result<Extra, CliError> {
    let mut extra = Extra {
        check_tol: eigenform_core::solver::CHECK_TOL,
    };
    for item in sets {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected KEY=VALUE, got `{item}`")))?;
        let float = || {
            value
                .parse::<f64>()
                .map_err(|e| CliError::Input(format!("bad value for {key}: {e}")))
        };
        let t = &mut config.tolerances;
        match key {
            "tol" => config.tol = float()?,
            "residual_tol" => config.residual_tol = float()?,
            "ratio_tol" => config.ratio_tol = float()?,
            "degeneracy_floor" => config.degeneracy_floor = float()?,
            "damping" => config.damping = float()?,
            "max_iter" => {
                config.max_iter = value
                    .parse()
                    .map_err(|e| CliError::Input(format!("bad value for max_iter: {e}")))?
            }
            "zero_tol" => t.zero_tol = float()?,
            "markov_tol" => t.markov_tol = float()?,
            "image_zero_tol" => t.image_zero_tol = float()?,
            "rank_tol" => {
                t.rank_tol = if value == "none" {
                    None
                } else {
                    Some(float()?)
                }
            }
            "ext_tol" => t.ext_tol = float()?,
            "ray_tol" => t.ray_tol = float()?,
            "check_tol" => extra.check_tol = float()?,
            other => {
                return Err(CliError::Input(format!(
                    "unknown configuration key `{other}`"
                )))
            }
        }
    }
    config.validate()?;
    Ok(extra)
}

pub fn start(arg: &str, n_boundary: usize) -> Result<Start, CliError> {
    if arg == "uniform" {
        Ok(Start::Uniform)
    } else {
        Ok(Start::Form(load_form(arg, n_boundary)?))
    }
}

/// Parses per-cell `lo:hi:steps` ranges into geometric value lists.
pub fn parse_grid(arg: &str) -> Result<Vec<Vec<f64>>, CliError> {
    arg.split(',')
        .map(|axis| {
            let parts: Vec<&str> = axis.trim().split(':').collect();
            let [lo, hi, steps] = parts.as_slice() else {
                return Err(CliError::Input(format!(
                    "grid axis `{axis}` is not lo:hi:steps"
                )));
            };
            let bad = |what: &str| CliError::Input(format!("bad {what} in grid axis `{axis}`"));
            let lo: f64 = lo.parse().map_err(|_| bad("lower bound"))?;
            let hi: f64 = hi.parse().map_err(|_| bad("upper bound"))?;
            let steps: usize = steps.parse().map_err(|_| bad("step count"))?;
            if !(lo > 0.0 && hi > 0.0 && lo.is_finite() && hi.is_finite()) {
                return Err(bad("bounds (must be positive)"));
            }
            if steps == 1 && lo != hi {
                return Err(bad("step count (1 requires lo = hi)"));
            }
            Ok((0..steps)
                .map(|i| match i {
                    0 => lo,
                    i if i + 1 == steps => hi,
                    i => lo * (hi / lo).powf(i as f64 / (steps - 1) as f64),
                })
                .collect())
        })
        .collect()
}

/// Grid points in lexicographic order (last axis fastest).
pub fn grid_points(axes: &[Vec<f64>]) -> Vec<(Vec<usize>, Vec<f64>)> {
    if axes.iter().any(|a| a.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut index = vec![0; axes.len()];
    loop {
        out.push((
            index.clone(),
            index.iter().zip(axes).map(|(&i, a)| a[i]).collect(),
        ));
        let mut k = axes.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            index[k] += 1;
            if index[k] < axes[k].len() {
                break;
            }
            index[k] = 0;
        }
    }
}
