//! `nwte`: fitting, goodness of fit, hydrological summaries, table
//! regeneration, plot data and sampling for the NWTE distribution.
//!
//! Failures exit with status 1 and a single JSON line on stderr:
//! `{"error":"<kind>","message":"<text>"}`.

mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use nwte::baselines::{model_loglik, Family, ModelSpec};
use nwte::data::{self, Column, Dataset, InputFormat};
use nwte::fit::{fit_mle, FitResult};
use nwte::gof::{gof_statistics, rank_models};
use nwte::hydro;
use nwte::plot::{emit_plot_data, PlotGrid, PlotKind};
use nwte::tables::{self, DataSource, SELECTORS};
use nwte::{Method, NwteError, NwteParams};

use config::{FileConfig, Settings, DATA_DIR_VAR};
use output::{emit, named, num, opt, Format, Records};

#[derive(Parser, Debug)]
#[command(name = "nwte", version, about = "NWTE(lambda, gamma, theta) distribution tools")]
struct Cli {
    /// TOML file with defaults for format, seed, data_dir and [optimizer].
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output encoding.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for commands that draw random numbers.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory holding `gwd.txt` / `fd.txt`; overrides NWTE_DATA_DIR.
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Output file (a directory for `tables`); stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct DataArgs {
    /// A file path, or `gwd` / `fd` for the bundled samples.
    #[arg(long)]
    data: String,
    /// Column name or zero-based index for CSV input.
    #[arg(long)]
    column: Option<String>,
    /// Input layout; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    input_format: Option<InputKind>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum InputKind {
    Csv,
    Whitespace,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximum-likelihood fit of one family, or all nine ranked by A*.
    Fit {
        #[command(flatten)]
        data: DataArgs,
        /// Family name or `all`.
        #[arg(long, default_value = "all")]
        model: String,
    },
    /// Goodness-of-fit statistics at given parameters, or at the MLE.
    Gof {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value = "NWTE")]
        model: String,
        /// Comma-separated parameters in the family's order.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_list)]
        params: Option<List>,
    },
    /// Return levels, return periods, xi and conditional event means.
    Hydro {
        /// NWTE parameters `lambda,gamma,theta`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_list, required_unless_present = "data")]
        params: Option<List>,
        /// Fit NWTE to this dataset instead of passing `--params`.
        #[arg(long, conflicts_with = "params")]
        data: Option<String>,
        /// Return periods; defaults to 2,5,10,20,50,100,200 when no level is given.
        #[arg(long, value_delimiter = ',')]
        period: Vec<f64>,
        /// Event magnitudes whose return periods are wanted.
        #[arg(long, value_delimiter = ',')]
        level: Vec<f64>,
    },
    /// Descriptive statistics of a dataset.
    Describe {
        #[command(flatten)]
        data: DataArgs,
    },
    /// Regenerates the reference tables as CSV and text files.
    Tables {
        /// Table numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        select: Vec<u8>,
    },
    /// Columnar data for the pdf, hazard or shape-measure plots.
    PlotData {
        /// pdf_shapes, hrf_shapes or skew_kurt_surface.
        #[arg(long)]
        kind: PlotKind,
        /// `lambda,gamma,theta` for one curve; repeat for more curves.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_list)]
        params: Vec<List>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        x_max: Option<f64>,
        /// Rate for the shape surface.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Random draws by inversion.
    Sample {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_list)]
        params: List,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
}

/// One comma-separated list of numbers. The alias keeps clap from treating
/// the vector as repeated occurrences.
type List = Vec<f64>;

fn parse_list(s: &str) -> Result<List, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number")))
        .collect()
}

fn nwte_params(v: &[f64]) -> anyhow::Result<NwteParams> {
    match v {
        [l, g, t] => Ok(NwteParams::new(*l, *g, *t)?),
        _ => bail!("expected three parameters lambda,gamma,theta, got {}", v.len()),
    }
}

fn load_data(args: &DataArgs, settings: &Settings) -> anyhow::Result<Dataset> {
    let path = Path::new(&args.data);
    let column = args.column.as_deref().map(Column::parse);
    let format = |p: &Path| match args.input_format {
        Some(InputKind::Csv) => InputFormat::Csv,
        Some(InputKind::Whitespace) => InputFormat::Whitespace,
        None if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => InputFormat::Csv,
        None => InputFormat::Whitespace,
    };
    if path.is_file() {
        return Ok(data::ingest(path, format(path), column.as_ref())?);
    }
    let name = args.data.to_ascii_lowercase();
    if data::checksum_for(&name).is_some() {
        let source = match &settings.data_dir {
            Some(dir) => DataSource::Directory(dir.clone()),
            None => DataSource::Bundled,
        };
        return Ok(source.load(&name)?);
    }
    if let Some(dir) = &settings.data_dir {
        let p = dir.join(&args.data);
        if p.is_file() {
            return Ok(data::ingest(&p, format(&p), column.as_ref())?);
        }
    }
    Err(NwteError::MissingDataset(args.data.clone()).into())
}

fn families(model: &str) -> anyhow::Result<Vec<Family>> {
    if model.eq_ignore_ascii_case("all") {
        Ok(Family::ALL.to_vec())
    } else {
        Ok(vec![model.parse()?])
    }
}

fn fit_records(d: &Dataset, fams: &[Family], settings: &Settings) -> anyhow::Result<Records> {
    let mut fits: Vec<FitResult> = Vec::new();
    if fams.len() > 1 {
        fits = tables::fit_all(&d.values, &settings.optimizer)?;
    } else {
        fits.push(fit_mle(fams[0], &d.values, &settings.optimizer)?);
    }
    let scored = fits
        .into_iter()
        .map(|f| Ok((f.model.clone(), gof_statistics(&f.model, &d.values)?, f)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut r = Records::new(&[
        "rank",
        "model",
        "loglik",
        "a_star",
        "w_star",
        "ks",
        "ks_p_value",
        "converged",
        "estimates",
        "std_errors",
    ]);
    for (i, (_, g, f)) in rank_models(scored).into_iter().enumerate() {
        let se = f.std_errors.as_ref().map(|s| named(&f.names, s)).unwrap_or(Value::Null);
        r.push(vec![
            Value::from(i + 1),
            Value::from(f.model.family.name()),
            num(f.loglik),
            num(g.a_star),
            num(g.w_star),
            num(g.ks),
            num(g.ks_p_value),
            Value::from(f.converged),
            named(&f.names, &f.estimates),
            se,
        ]);
    }
    Ok(r)
}

fn gof_records(d: &Dataset, model: &str, params: Option<&[f64]>, settings: &Settings) -> anyhow::Result<Records> {
    let family: Family = model.parse()?;
    let spec = match params {
        Some(p) => ModelSpec::new(family, p.to_vec())?,
        None => fit_mle(family, &d.values, &settings.optimizer)?.model,
    };
    let g = gof_statistics(&spec, &d.values)?;
    let names: Vec<String> = family.param_names().iter().map(|s| s.to_string()).collect();
    let mut r = Records::new(&["model", "n", "a_star", "w_star", "ks", "ks_p_value", "loglik", "params"]);
    r.push(vec![
        Value::from(family.name()),
        Value::from(g.n),
        num(g.a_star),
        num(g.w_star),
        num(g.ks),
        num(g.ks_p_value),
        num(model_loglik(&spec, &d.values)?),
        named(&names, &spec.params),
    ]);
    Ok(r)
}

fn hydro_records(p: &NwteParams, periods: &[f64], levels: &[f64]) -> anyhow::Result<Records> {
    const DEFAULT_PERIODS: [f64; 7] = [2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0];
    let periods = if periods.is_empty() && levels.is_empty() {
        &DEFAULT_PERIODS[..]
    } else {
        periods
    };
    let m = Method::Quadrature;
    let mut r = Records::new(&[
        "query",
        "input",
        "return_level",
        "return_period",
        "exceedance_probability",
        "xi",
        "conditional_mean",
    ]);
    for &t in periods {
        let x = hydro::return_level(p, t)?;
        // The mean above the level is undefined once the level reaches zero.
        let above = if x > 0.0 { Some(hydro::conditional_event_mean(p, x, m)?) } else { None };
        r.push(vec![
            Value::from("period"),
            num(t),
            num(x),
            num(t),
            num(hydro::exceedance_probability(p, x)?),
            num(hydro::mean_deviation_about_return_level(p, t, m)?),
            opt(above),
        ]);
    }
    for &x in levels {
        r.push(vec![
            Value::from("level"),
            num(x),
            num(x),
            num(hydro::return_period(p, x)?),
            num(hydro::exceedance_probability(p, x)?),
            Value::Null,
            num(hydro::conditional_event_mean(p, x, m)?),
        ]);
    }
    Ok(r)
}

fn describe_records(d: &Dataset) -> anyhow::Result<Records> {
    let stats = serde_json::to_value(data::describe(d)?)?;
    let Value::Object(fields) = stats else {
        return Err(anyhow!("descriptive statistics did not serialize to an object"));
    };
    let mut columns = vec!["dataset".to_string()];
    let mut row = vec![Value::from(d.name.clone())];
    for (k, v) in fields {
        columns.push(k);
        row.push(v);
    }
    Ok(Records {
        columns,
        rows: vec![row],
    })
}

fn tables_records(select: &[u8], settings: &Settings, dir: &Path) -> anyhow::Result<Records> {
    let select = if select.is_empty() { &SELECTORS[..] } else { select };
    let source = match &settings.data_dir {
        Some(d) => DataSource::Directory(d.clone()),
        None => DataSource::Bundled,
    };
    let mut r = Records::new(&["table", "title", "cells", "max_abs_delta", "max_rel_delta", "files"]);
    for &s in select {
        let t = tables::reproduce_table(s, &source)?;
        let files = tables::write_table(&t, dir)?;
        r.push(vec![
            Value::from(t.id),
            Value::from(t.title.clone()),
            Value::from(t.cells().count()),
            num(t.max_abs_delta()),
            num(t.max_rel_delta()),
            Value::Array(files.iter().map(|f| Value::from(f.display().to_string())).collect()),
        ]);
    }
    Ok(r)
}

fn plot_records(
    kind: PlotKind,
    params: &[Vec<f64>],
    points: Option<usize>,
    x_max: Option<f64>,
    lambda: Option<f64>,
) -> anyhow::Result<Records> {
    let mut grid = PlotGrid::default_for(kind);
    if !params.is_empty() {
        grid.params = params.iter().map(|p| nwte_params(p)).collect::<anyhow::Result<_>>()?;
    }
    if let Some(n) = points {
        grid.points = n;
    }
    grid.x_max = x_max;
    if let Some(l) = lambda {
        grid.lambda = l;
    }
    let d = emit_plot_data(kind, &grid)?;
    Ok(Records {
        columns: d.columns,
        rows: d.rows.into_iter().map(|r| r.into_iter().map(num).collect()).collect(),
    })
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let env_dir = std::env::var_os(DATA_DIR_VAR).filter(|v| !v.is_empty()).map(PathBuf::from);
    let settings = Settings::merge(file, cli.format, cli.seed, cli.data_dir.clone(), env_dir);
    let out = cli.out.as_deref();

    let records = match &cli.command {
        Command::Fit { data, model } => {
            let d = load_data(data, &settings)?;
            fit_records(&d, &families(model)?, &settings)?
        }
        Command::Gof { data, model, params } => {
            let d = load_data(data, &settings)?;
            gof_records(&d, model, params.as_deref(), &settings)?
        }
        Command::Hydro {
            params,
            data,
            period,
            level,
        } => {
            let p = match (params, data) {
                (Some(v), _) => nwte_params(v)?,
                (None, Some(name)) => {
                    let args = DataArgs {
                        data: name.clone(),
                        column: None,
                        input_format: None,
                    };
                    let d = load_data(&args, &settings)?;
                    let fit = fit_mle(Family::Nwte, &d.values, &settings.optimizer)?;
                    fit.model.as_nwte().context("NWTE fit returned another family")?
                }
                (None, None) => bail!("either --params or --data is required"),
            };
            hydro_records(&p, period, level)?
        }
        Command::Describe { data } => describe_records(&load_data(data, &settings)?)?,
        Command::Tables { select } => {
            let dir = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("tables"));
            let r = tables_records(select, &settings, &dir)?;
            // The files go to the directory; the summary goes to stdout.
            emit(&r.render(settings.format)?, None)?;
            return Ok(());
        }
        Command::PlotData {
            kind,
            params,
            points,
            x_max,
            lambda,
        } => plot_records(*kind, params, *points, *x_max, *lambda)?,
        Command::Sample { params, n } => {
            let p = nwte_params(params)?;
            let mut r = Records::new(&["x"]);
            for x in nwte::nwte::sample(&p, *n, settings.seed) {
                r.push(vec![num(x)]);
            }
            r
        }
    };
    emit(&records.render(settings.format)?, out)
}

/// Short machine-readable name for an error.
fn error_kind(e: &anyhow::Error) -> String {
    if let Some(n) = e.downcast_ref::<NwteError>() {
        let debug = format!("{n:?}");
        let end = debug.find(|c: char| !c.is_alphanumeric()).unwrap_or(debug.len());
        return debug[..end].to_string();
    }
    if e.downcast_ref::<std::io::Error>().is_some() {
        return "Io".into();
    }
    "Usage".into()
}

fn fail(kind: &str, message: &str) -> ExitCode {
    eprintln!("{}", serde_json::json!({ "error": kind, "message": message }));
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
            return fail("Usage", first);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&error_kind(&e), &format!("{e:#}")),
    }
}
