use std::path::Path;

use eigenform_core::geometry::{anti_attracting_probe, SimplexPoint};
use eigenform_core::renorm::{
    classify, vanishing_image_crosscheck, BoundaryClass, ImageCrossCheck,
};
use eigenform_core::solver::{
    existence_report, repulsing_check, solve_eigenform, Conclusion, EigenformResult, SolveStatus,
    SolverConfig,
};
use eigenform_core::triples::{builtin, validate_triple, BUILTIN_NAMES};
use eigenform_core::{DirichletForm, Error, FractalTriple, Weights};
use rayon::prelude::*;
use serde::Serialize;

use crate::inputs::{self, Extra};
use crate::output::{
    emit_error, pretty, write_text, CliError, Document, Manifest, EXIT_DOMAIN, EXIT_INPUT,
    EXIT_NONCONVERGENCE, EXIT_OK,
};
use crate::{Command, Common};

pub fn run(command: Command) -> u8 {
    match command {
        Command::Validate { triple, out } => {
            let mut m = Manifest::new("validate", false).input("triple", &triple);
            guard(&mut m, out.as_deref(), |m| {
                validate(&triple, m, out.as_deref())
            })
        }
        Command::Solve { common, start } => {
            let mut m = manifest("solve", &common).input("start", &start);
            guard(&mut m, common.out.clone().as_deref(), |m| {
                solve(&common, &start, m)
            })
        }
        Command::Classify {
            common,
            form,
            crosscheck,
        } => {
            let mut m = manifest("classify", &common).input("form", &form);
            m.seed = crosscheck;
            guard(&mut m, common.out.clone().as_deref(), |m| {
                classify_cmd(&common, &form, crosscheck, m)
            })
        }
        Command::Repulsing {
            common,
            form,
            reference,
        } => {
            let mut m = manifest("repulsing", &common).input("form", &form);
            if let Some(r) = &reference {
                m = m.input("ref", r);
            }
            guard(&mut m, common.out.clone().as_deref(), |m| {
                repulsing(&common, &form, reference.as_deref(), m)
            })
        }
        Command::Probe {
            common,
            form,
            reference,
            radius,
            samples,
            seed,
        } => {
            let mut m = manifest("probe", &common).input("form", &form);
            if let Some(r) = &reference {
                m = m.input("ref", r);
            }
            m.seed = Some(seed);
            let args = ProbeArgs {
                form,
                reference,
                radius,
                samples,
                seed,
            };
            guard(&mut m, common.out.clone().as_deref(), |m| {
                probe(&common, &args, m)
            })
        }
        Command::Sweep {
            triple,
            grid,
            jobs,
            trajectory,
            set,
            out,
            timing,
        } => {
            let mut m = Manifest::new("sweep", timing)
                .input("triple", &triple)
                .input("weights_grid", &grid);
            m.overrides = set.clone();
            let args = SweepArgs {
                triple,
                grid,
                jobs,
                trajectory,
                set,
            };
            guard(&mut m, out.clone().as_deref(), |m| {
                sweep(&args, out.as_deref(), m)
            })
        }
        Command::Existence { common } => {
            let mut m = manifest("existence", &common);
            guard(&mut m, common.out.clone().as_deref(), |m| {
                existence(&common, m)
            })
        }
        Command::Builtin { name } => builtin_cmd(name.as_deref()),
    }
}

fn manifest(command: &'static str, common: &Common) -> Manifest {
    let mut m = Manifest::new(command, common.timing).input("triple", &common.triple);
    m.weights = Some(common.weights.clone());
    m.overrides = common.set.clone();
    m
}

fn guard(
    m: &mut Manifest,
    out: Option<&Path>,
    body: impl FnOnce(&mut Manifest) -> Result<u8, CliError>,
) -> u8 {
    match body(m) {
        Ok(code) => code,
        Err(e) => emit_error(m, out, &e),
    }
}

fn emit_result<T: Serialize>(
    m: &mut Manifest,
    out: Option<&Path>,
    value: &T,
) -> Result<(), CliError> {
    m.finish();
    write_text(
        out,
        &pretty(&Document {
            manifest: m,
            result: Some(value),
            report: None,
        }),
    )
}

fn emit_report<T: Serialize>(
    m: &mut Manifest,
    out: Option<&Path>,
    value: &T,
) -> Result<(), CliError> {
    m.finish();
    write_text(
        out,
        &pretty(&Document {
            manifest: m,
            result: None,
            report: Some(value),
        }),
    )
}

struct Setup {
    triple: FractalTriple,
    weights: Weights,
    config: SolverConfig,
    extra: Extra,
}

fn setup(common: &Common) -> Result<Setup, CliError> {
    let triple = inputs::load_triple(&common.triple)?;
    let weights = inputs::weights(&triple, &common.weights)?;
    let mut config = SolverConfig::default();
    let extra = inputs::apply_overrides(&common.set, &mut config)?;
    Ok(Setup {
        triple,
        weights,
        config,
        extra,
    })
}

fn validate(arg: &str, m: &mut Manifest, out: Option<&Path>) -> Result<u8, CliError> {
    let file = inputs::load_triple_file(arg)?;
    let report = validate_triple(&file)?;
    emit_report(m, out, &report)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_DOMAIN })
}

fn solve(common: &Common, start: &str, m: &mut Manifest) -> Result<u8, CliError> {
    let Setup {
        triple,
        weights,
        mut config,
        ..
    } = setup(common)?;
    config.start = inputs::start(start, triple.n_boundary())?;
    let result = solve_eigenform(&triple, &weights, &config)?;
    log::info!(
        "solve finished: {:?} after {} iterations",
        result.status,
        result.iterations
    );
    emit_result(m, common.out.as_deref(), &result)?;
    Ok(if result.converged() {
        EXIT_OK
    } else {
        EXIT_NONCONVERGENCE
    })
}

#[derive(Serialize)]
struct ClassifyResult {
    form: DirichletForm,
    #[serde(flatten)]
    class: BoundaryClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    crosscheck: Option<ImageCrossCheck>,
}

fn classify_cmd(
    common: &Common,
    form: &str,
    crosscheck: Option<u64>,
    m: &mut Manifest,
) -> Result<u8, CliError> {
    let s = setup(common)?;
    let (_, form) = inputs::load_form(form, s.triple.n_boundary())?.normalized(0.0)?;
    let class = classify(&s.triple, &s.weights, &form, &s.config.tolerances)?;
    let crosscheck = crosscheck
        .map(|seed| vanishing_image_crosscheck(&s.triple, &form, seed, &s.config.tolerances))
        .transpose()?;
    emit_result(
        m,
        common.out.as_deref(),
        &ClassifyResult {
            form,
            class,
            crosscheck,
        },
    )?;
    Ok(EXIT_OK)
}

fn reference_form(arg: Option<&str>, n_boundary: usize) -> Result<DirichletForm, CliError> {
    match arg {
        Some(s) => inputs::load_form(s, n_boundary),
        None => Ok(DirichletForm::uniform(n_boundary)),
    }
}

fn repulsing(
    common: &Common,
    form: &str,
    reference: Option<&str>,
    m: &mut Manifest,
) -> Result<u8, CliError> {
    let s = setup(common)?;
    let n = s.triple.n_boundary();
    let e_deg = inputs::load_form(form, n)?;
    let e_ref = reference_form(reference, n)?;
    let report = repulsing_check(
        &s.triple,
        &s.weights,
        &e_deg,
        &e_ref,
        s.extra.check_tol,
        s.config.residual_tol,
        &s.config.tolerances,
    )?;
    emit_report(m, common.out.as_deref(), &report)?;
    Ok(EXIT_OK)
}

struct ProbeArgs {
    form: String,
    reference: Option<String>,
    radius: f64,
    samples: usize,
    seed: u64,
}

fn probe(common: &Common, args: &ProbeArgs, m: &mut Manifest) -> Result<u8, CliError> {
    let s = setup(common)?;
    let n = s.triple.n_boundary();
    let (_, boundary) = inputs::load_form(&args.form, n)?.normalized(0.0)?;
    let (_, reference) = reference_form(args.reference.as_deref(), n)?.normalized(0.0)?;
    let report = anti_attracting_probe(
        &s.triple,
        &s.weights,
        &SimplexPoint::from_form(&boundary)?,
        &SimplexPoint::from_form(&reference)?,
        args.radius,
        args.samples,
        args.seed,
        &s.config.tolerances,
    )?;
    emit_report(m, common.out.as_deref(), &report)?;
    Ok(EXIT_OK)
}

struct SweepArgs {
    triple: String,
    grid: String,
    jobs: usize,
    trajectory: bool,
    set: Vec<String>,
}

#[derive(Serialize)]
struct SweepError {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct SweepLine<'a> {
    index: &'a [usize],
    weights: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a EigenformResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<SweepError>,
}

#[derive(Serialize, Default)]
struct SweepSummary {
    points: usize,
    converged: usize,
    max_iter: usize,
    degenerating: usize,
    degenerate_image: usize,
    errors: usize,
}

#[derive(Serialize)]
struct SweepTail<'a> {
    manifest: &'a Manifest,
    summary: SweepSummary,
}

fn sweep(args: &SweepArgs, out: Option<&Path>, m: &mut Manifest) -> Result<u8, CliError> {
    let triple = inputs::load_triple(&args.triple)?;
    let axes = inputs::parse_grid(&args.grid)?;
    if axes.len() != triple.n_cells() {
        return Err(CliError::Input(format!(
            "grid has {} axes but the triple has {} cells",
            axes.len(),
            triple.n_cells()
        )));
    }
    let mut config = SolverConfig::default();
    inputs::apply_overrides(&args.set, &mut config)?;
    if args.jobs == 0 {
        return Err(CliError::Input("--jobs must be at least 1".into()));
    }
    let points = inputs::grid_points(&axes);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| CliError::Input(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<EigenformResult, Error>> = pool.install(|| {
        points
            .par_iter()
            .map(|(_, w)| {
                let mut res = solve_eigenform(&triple, &Weights::new(w.clone())?, &config)?;
                if !args.trajectory {
                    res.trajectory.clear();
                }
                Ok(res)
            })
            .collect()
    });

    let mut text = String::new();
    let mut summary = SweepSummary {
        points: points.len(),
        ..Default::default()
    };
    for ((index, weights), res) in points.iter().zip(&results) {
        let line = match res {
            Ok(r) => {
                match r.status {
                    SolveStatus::Converged => summary.converged += 1,
                    SolveStatus::MaxIter => summary.max_iter += 1,
                    SolveStatus::Degenerating => summary.degenerating += 1,
                    SolveStatus::DegenerateImage => summary.degenerate_image += 1,
                }
                SweepLine {
                    index,
                    weights,
                    result: Some(r),
                    error: None,
                }
            }
            Err(e) => {
                summary.errors += 1;
                SweepLine {
                    index,
                    weights,
                    result: None,
                    error: Some(SweepError {
                        kind: e.kind(),
                        message: e.to_string(),
                    }),
                }
            }
        };
        text.push_str(&serde_json::to_string(&line).expect("sweep line serialization cannot fail"));
        text.push('\n');
    }
    m.finish();
    let code = if summary.errors > 0 {
        EXIT_DOMAIN
    } else if summary.converged < summary.points {
        EXIT_NONCONVERGENCE
    } else {
        EXIT_OK
    };
    text.push_str(
        &serde_json::to_string(&SweepTail {
            manifest: m,
            summary,
        })
        .expect("summary serialization cannot fail"),
    );
    text.push('\n');
    write_text(out, &text)?;
    Ok(code)
}

fn existence(common: &Common, m: &mut Manifest) -> Result<u8, CliError> {
    let s = setup(common)?;
    let report = existence_report(&s.triple, &s.weights, &s.config)?;
    emit_report(m, common.out.as_deref(), &report)?;
    Ok(if report.conclusion == Conclusion::EigenformFound {
        EXIT_OK
    } else {
        EXIT_NONCONVERGENCE
    })
}

fn builtin_cmd(name: Option<&str>) -> u8 {
    match name {
        None => {
            println!("{}", BUILTIN_NAMES.join("\n"));
            EXIT_OK
        }
        Some(n) => match builtin(n) {
            Ok(t) => {
                print!("{}", pretty(&t.to_file()));
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INPUT
            }
        },
    }
}
