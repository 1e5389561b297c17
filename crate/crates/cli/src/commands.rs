use std::fs;
use std::sync::Arc;

use gtc_core::distance::{self, Budget, DistanceResult, DEFAULT_BUDGET};
use gtc_core::exponents::{lattice_points, reduce_set};
use gtc_core::structure::{self, StructureError};
use gtc_core::{example, CodeSpec, FiniteField, Matrix, Polytope, Torus};
use serde::Serialize;

use crate::error::CliError;
use crate::{search, Cli, CodeArgs, Command, Format, MethodArg};

pub fn run(cli: Cli) -> Result<String, CliError> {
    let format = cli.format;
    match cli.command {
        Command::FieldInfo { q } => field_info(q),
        Command::Matrix { q, r } => matrix(q, r, format),
        Command::Build { code } => build(&code, format),
        Command::Dual { code } => dual(&code),
        Command::Recover { q, r, codewords } => {
            let text = fs::read_to_string(&codewords)?;
            recover(q, r, &text)
        }
        Command::Distance {
            code,
            method,
            certify,
            budget,
        } => distance(&code, method, certify, budget_from(budget.budget)),
        Command::Certify {
            code,
            d,
            minors,
            budget,
        } => certify(&code, d, minors, budget_from(budget.budget)),
        Command::Polytope { q, file } => {
            let text = fs::read_to_string(&file)?;
            polytope(q, &text)
        }
        Command::Search {
            q,
            r,
            k,
            samples,
            seed,
            out,
            no_timestamp,
            budget,
        } => search::run(&search::SearchConfig {
            q,
            r,
            k,
            samples,
            seed,
            out,
            timestamp: !no_timestamp,
            budget: budget_from(budget.budget),
        }),
        Command::Example => example_report(),
    }
}

fn budget_from(limit: Option<u64>) -> Budget {
    Budget::uniform(limit.unwrap_or(DEFAULT_BUDGET))
}

pub fn json_line<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string(value).map_err(|e| CliError::failure("Serialize", e))?;
    s.push('\n');
    Ok(s)
}

fn torus(q: u32, r: usize) -> Result<Arc<Torus>, CliError> {
    let field = FiniteField::new(q as u64)?;
    Ok(Torus::new(Arc::new(field), r)?)
}

pub fn code_spec(args: &CodeArgs) -> Result<CodeSpec, CliError> {
    Ok(CodeSpec::parse(torus(args.q, args.r)?, &args.u)?)
}

fn render_matrices(blocks: &[&Matrix], format: Format) -> String {
    let sep = if format == Format::Csv { "," } else { " " };
    let mut out = String::new();
    for (b, m) in blocks.iter().enumerate() {
        if b > 0 {
            out.push('\n');
        }
        for row in m.iter_rows() {
            let cells: Vec<String> = row.iter().map(|x| x.index().to_string()).collect();
            out.push_str(&cells.join(sep));
            out.push('\n');
        }
    }
    out
}

#[derive(Serialize)]
struct FieldInfo<'a> {
    q: u32,
    p: u32,
    m: u32,
    #[serde(skip_serializing_if = "<[u32]>::is_empty")]
    modulus: &'a [u32],
    alpha: u32,
    exp: &'a [u32],
}

fn field_info(q: u32) -> Result<String, CliError> {
    let f = FiniteField::new(q as u64)?;
    json_line(&FieldInfo {
        q: f.q(),
        p: f.p(),
        m: f.m(),
        modulus: f.modulus(),
        alpha: f.alpha().index(),
        exp: f.exp_table(),
    })
}

#[derive(Serialize)]
struct MatrixDoc {
    q: u32,
    r: usize,
    n: usize,
    alpha: u32,
    order: Vec<String>,
    #[serde(rename = "M")]
    m: Vec<Vec<u32>>,
    #[serde(rename = "I_sigma")]
    i_sigma: Vec<Vec<u32>>,
}

fn matrix(q: u32, r: usize, format: Format) -> Result<String, CliError> {
    let t = torus(q, r)?;
    let em = t.evaluation_matrix()?;
    let sigma = em.sigma_matrix();
    if format != Format::Json {
        return Ok(render_matrices(&[em.entries(), &sigma], format));
    }
    json_line(&MatrixDoc {
        q,
        r,
        n: t.n(),
        alpha: t.field().alpha().index(),
        order: t.order().points().iter().map(ToString::to_string).collect(),
        m: em.entries().to_indices(),
        i_sigma: sigma.to_indices(),
    })
}

#[derive(Serialize)]
struct BuildDoc {
    q: u32,
    r: usize,
    n: usize,
    k: usize,
    #[serde(rename = "U")]
    u: String,
    #[serde(rename = "dualU")]
    dual_u: String,
    generator: Vec<Vec<u32>>,
    control: Vec<Vec<u32>>,
}

fn build(args: &CodeArgs, format: Format) -> Result<String, CliError> {
    let spec = code_spec(args)?;
    let generator = spec
        .generator_matrix()
        .unwrap_or_else(|_| Matrix::zeros(0, spec.n()));
    let control = spec.control_matrix();
    if format != Format::Json {
        return Ok(render_matrices(&[&generator, &control], format));
    }
    json_line(&BuildDoc {
        q: args.q,
        r: args.r,
        n: spec.n(),
        k: spec.k(),
        u: spec.u().to_string(),
        dual_u: spec.u().dual_set().to_string(),
        generator: generator.to_indices(),
        control: control.to_indices(),
    })
}

fn dual(args: &CodeArgs) -> Result<String, CliError> {
    let spec = code_spec(args)?;
    json_line(&structure::duality_report(&spec))
}

#[derive(Serialize)]
struct RecoverDoc {
    #[serde(rename = "U")]
    u: String,
    k: usize,
    zero_ideal: bool,
}

pub fn recover(q: u32, r: usize, text: &str) -> Result<String, CliError> {
    let t = torus(q, r)?;
    let vectors: Vec<Vec<u32>> = serde_json::from_str(text)?;
    let generators = vectors
        .iter()
        .map(|v| t.codeword_from_indices(v))
        .collect::<Result<Vec<_>, _>>()?;
    let doc = match structure::ideal_to_u(&t, &generators) {
        Ok(u) => RecoverDoc {
            k: u.len(),
            u: u.to_string(),
            zero_ideal: false,
        },
        Err(StructureError::ZeroIdeal) => RecoverDoc {
            u: String::new(),
            k: 0,
            zero_ideal: true,
        },
        Err(e) => return Err(e.into()),
    };
    json_line(&doc)
}

#[derive(Serialize)]
struct CertifyDoc {
    d: usize,
    holds: bool,
    method: distance::Method,
}

#[derive(Serialize)]
struct DistanceDoc {
    n: usize,
    k: usize,
    #[serde(rename = "U")]
    u: String,
    #[serde(flatten)]
    result: DistanceResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    certify: Option<CertifyDoc>,
}

#[derive(Serialize)]
struct BothDoc {
    n: usize,
    k: usize,
    #[serde(rename = "U")]
    u: String,
    d: usize,
    agree: bool,
    exhaustive: DistanceResult,
    column_rank: DistanceResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    certify: Option<CertifyDoc>,
}

fn distance(
    args: &CodeArgs,
    method: MethodArg,
    certify: Option<usize>,
    budget: Budget,
) -> Result<String, CliError> {
    let spec = code_spec(args)?;
    let cert = certify
        .map(|d| {
            distance::certify_lower_bound(&spec, d, &budget).map(|holds| CertifyDoc {
                d,
                holds,
                method: distance::Method::Certificate,
            })
        })
        .transpose()?;
    let (n, k, u) = (spec.n(), spec.k(), spec.u().to_string());
    match method {
        MethodArg::Exhaustive | MethodArg::Rank => {
            let result = if method == MethodArg::Exhaustive {
                distance::min_distance_exhaustive(&spec, &budget)?
            } else {
                distance::min_distance_column_rank(&spec, &budget)?
            };
            json_line(&DistanceDoc {
                n,
                k,
                u,
                result,
                certify: cert,
            })
        }
        MethodArg::Both => {
            let exhaustive = distance::min_distance_exhaustive(&spec, &budget)?;
            let column_rank = distance::min_distance_column_rank(&spec, &budget)?;
            if exhaustive.d != column_rank.d {
                return Err(CliError::failure(
                    "EngineDisagreement",
                    format!(
                        "exhaustive d = {} but column-rank d = {}",
                        exhaustive.d, column_rank.d
                    ),
                ));
            }
            json_line(&BothDoc {
                n,
                k,
                u,
                d: exhaustive.d,
                agree: true,
                exhaustive,
                column_rank,
                certify: cert,
            })
        }
    }
}

fn certify(args: &CodeArgs, d: usize, minors: bool, budget: Budget) -> Result<String, CliError> {
    let spec = code_spec(args)?;
    let holds = if minors {
        distance::certify_lower_bound_minors(&spec, d, &budget)?
    } else {
        distance::certify_lower_bound(&spec, d, &budget)?
    };
    json_line(&CertifyDoc {
        d,
        holds,
        method: distance::Method::Certificate,
    })
}

#[derive(Serialize)]
struct PolytopeDoc {
    q: u32,
    r: usize,
    n: usize,
    lattice_points: usize,
    k: usize,
    #[serde(rename = "U")]
    u: String,
    empty: bool,
}

pub fn polytope(q: u32, text: &str) -> Result<String, CliError> {
    let p: Polytope = serde_json::from_str(text)?;
    let t = torus(q, p.r)?;
    let points = lattice_points(&p)?;
    let u = reduce_set(t.grid(), &points);
    let spec = CodeSpec::new(Arc::clone(&t), u)?;
    json_line(&PolytopeDoc {
        q,
        r: p.r,
        n: spec.n(),
        lattice_points: points.len(),
        k: spec.k(),
        u: spec.u().to_string(),
        empty: spec.k() == 0,
    })
}

#[derive(Serialize)]
struct ExampleDoc {
    q: u32,
    r: usize,
    alpha: u32,
    n: usize,
    k: usize,
    d: usize,
    #[serde(rename = "U")]
    u: &'static str,
    order: Vec<String>,
    #[serde(rename = "M")]
    m: Vec<Vec<u32>>,
    generator_rows: &'static [usize],
    control_rows: &'static [usize],
    checks: Vec<example::ExampleCheck>,
    ok: bool,
}

fn example_report() -> Result<String, CliError> {
    let t = example::torus();
    let spec = example::code();
    let checks = example::self_check();
    let ok = checks.iter().all(|c| c.passed);
    let doc = ExampleDoc {
        q: example::Q,
        r: example::R,
        alpha: t.field().alpha().index(),
        n: spec.n(),
        k: spec.k(),
        d: example::MIN_DISTANCE,
        u: example::CODE_U,
        order: t.order().points().iter().map(ToString::to_string).collect(),
        m: t.evaluation_matrix()?.entries().to_indices(),
        generator_rows: &example::GENERATOR_ROWS,
        control_rows: &example::CONTROL_ROWS,
        checks,
        ok,
    };
    if !ok {
        let failed: Vec<_> = doc.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        return Err(CliError::failure(
            "SelfCheckFailed",
            format!("failed checks: {}", failed.join(", ")),
        ));
    }
    json_line(&doc)
}
