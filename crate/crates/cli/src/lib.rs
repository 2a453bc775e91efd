//! Command implementations for the `pants` binary. Every command returns its
//! stdout text and exit code so that tests can drive it without a process.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pants_core::geometry::link::trefoil_polyline;
use pants_core::geometry::polyline::{polyline_crossings, region_count_2d};
use pants_core::geometry::{link_regions_3d, verify_geometry, GeomConfig, GeometryError};
use pants_core::modelcat::io::{self, FormatError, ModelFile};
use pants_core::modelcat::random::{random_autpair, rng_for};
use pants_core::modelcat::{
    classify, ext1_autpair, from_autpair, hom_autpair, hom_star, random_pants, random_trefoil, roundtrip_witness,
    to_autpair, AutPair, Classification, ModelError, StarSumRep,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Expected counts for the trefoil diagram: crossings, regions, bounded regions.
pub const TREFOIL_EXPECTED: (usize, usize, usize) = (3, 5, 4);
/// Expected counts for the torus link: regions, bounded, unbounded.
pub const LINK_EXPECTED: (usize, usize, usize) = (6, 5, 1);

#[derive(Debug, Parser)]
#[command(name = "pants", version, about = "Verify the pair-of-pants skeleton and its category models")]
pub struct Cli {
    #[command(flatten)]
    pub geom: GeomArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Overrides for [`GeomConfig`]; unset flags keep its defaults.
#[derive(Debug, Default, Args)]
pub struct GeomArgs {
    /// Radius of the link sphere.
    #[arg(long, global = true)]
    pub rho1: Option<f64>,
    /// Tolerance for pointwise identities.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Singular values at or below this count as zero.
    #[arg(long, global = true)]
    pub jacobian_tol: Option<f64>,
    /// Monte-Carlo sample count.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Rays used to trace the trefoil curve.
    #[arg(long, global = true)]
    pub ray_samples: Option<usize>,
    /// Raster and voxel resolution per axis.
    #[arg(long, global = true)]
    pub grid_res: Option<usize>,
    #[arg(long, global = true, env = "PANTS_SEED")]
    pub seed: Option<u64>,
}

impl GeomArgs {
    pub fn config(&self) -> GeomConfig {
        let d = GeomConfig::default();
        GeomConfig {
            rho1: self.rho1.unwrap_or(d.rho1),
            tol: self.tol.unwrap_or(d.tol),
            jacobian_tol: self.jacobian_tol.unwrap_or(d.jacobian_tol),
            samples: self.samples.unwrap_or(d.samples),
            ray_samples: self.ray_samples.unwrap_or(d.ray_samples),
            grid_res: self.grid_res.unwrap_or(d.grid_res),
            seed: self.seed.unwrap_or(d.seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RandomKind {
    Pants,
    Trefoil,
    Autpair,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the sampled identity, rank and double-point checks.
    VerifyGeometry,
    /// Trace the trefoil diagram and count its crossings and regions.
    Trefoil {
        /// Write the polyline as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the polyline as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// What to print on stdout.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Count the complementary regions of the projected torus link.
    LinkRegions,
    /// Operations on star representations and automorphism pairs.
    #[command(subcommand)]
    Rep(RepCommand),
}

#[derive(Debug, Subcommand)]
pub enum RepCommand {
    Validate { file: PathBuf },
    Classify { file: PathBuf },
    /// Hom dimensions computed on both sides of the equivalence.
    Hom { first: PathBuf, second: PathBuf },
    Roundtrip { file: PathBuf },
    /// Print a seeded random rep or AutPair file.
    Random {
        #[arg(long, value_enum, default_value_t = RandomKind::Pants)]
        kind: RandomKind,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Format { .. } => EXIT_USAGE,
            CliError::Geometry(GeometryError::InvalidConfig(_)) => EXIT_USAGE,
            CliError::Geometry(_) | CliError::Model(_) => EXIT_FAILURE,
        }
    }
}

/// Text for stdout plus the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn json<T: Serialize>(value: &T, ok: bool) -> Self {
        let mut stdout = serde_json::to_string(value).expect("serializable");
        stdout.push('\n');
        Output {
            stdout,
            code: if ok { EXIT_OK } else { EXIT_FAILURE },
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let config = cli.geom.config();
    config.validate()?;
    match &cli.command {
        Command::VerifyGeometry => cmd_verify_geometry(&config),
        Command::Trefoil { out, svg, format } => cmd_trefoil(&config, out.as_deref(), svg.as_deref(), *format),
        Command::LinkRegions => cmd_link_regions(&config),
        Command::Rep(rep) => cmd_rep(rep, &config),
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a GeomConfig,
    #[serde(flatten)]
    report: pants_core::geometry::GeometryReport,
}

pub fn cmd_verify_geometry(config: &GeomConfig) -> Result<Output, CliError> {
    let report = verify_geometry(config)?;
    let ok = report.passed;
    Ok(Output::json(&VerifyReport { config, report }, ok))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrefoilSummary {
    pub crossings: usize,
    pub regions_total: usize,
    pub regions_bounded: usize,
    pub stable: bool,
}

/// Counts at `ray_samples` and `2 ray_samples`; each region count is itself
/// checked at `grid_res` and `2 grid_res`.
pub fn trefoil_summary(config: &GeomConfig) -> Result<TrefoilSummary, CliError> {
    let mut results = Vec::new();
    for rays in [config.ray_samples, 2 * config.ray_samples] {
        let c = GeomConfig {
            ray_samples: rays,
            ..config.clone()
        };
        let curve = trefoil_polyline(&c)?;
        let crossings = match polyline_crossings(&curve, c.tol) {
            Ok(r) => Some(r.count),
            Err(GeometryError::DegenerateCrossing) => None,
            Err(e) => return Err(e.into()),
        };
        let regions = match region_count_2d(&curve, &c) {
            Ok(r) => Some((r.total, r.bounded)),
            Err(GeometryError::ResolutionTooLow { coarse, .. }) => {
                results.push((crossings, Some(coarse), false));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        results.push((crossings, regions, crossings.is_some()));
    }
    let (crossings, regions, _) = results[0];
    let (total, bounded) = regions.unwrap_or((0, 0));
    let stable = results.iter().all(|r| r.2) && results[0].0 == results[1].0 && results[0].1 == results[1].1;
    Ok(TrefoilSummary {
        crossings: crossings.unwrap_or(0),
        regions_total: total,
        regions_bounded: bounded,
        stable,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn cmd_trefoil(config: &GeomConfig, out: Option<&Path>, svg: Option<&Path>, format: Format) -> Result<Output, CliError> {
    let curve = trefoil_polyline(config)?;
    if let Some(path) = out {
        write_file(path, &curve.to_csv())?;
    }
    if let Some(path) = svg {
        write_file(path, &curve.to_svg())?;
    }
    let s = trefoil_summary(config)?;
    let ok = s.stable && (s.crossings, s.regions_total, s.regions_bounded) == TREFOIL_EXPECTED;
    Ok(match format {
        Format::Json => Output::json(&s, ok),
        Format::Csv | Format::Svg => Output {
            stdout: if format == Format::Csv { curve.to_csv() } else { curve.to_svg() },
            code: if ok { EXIT_OK } else { EXIT_FAILURE },
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinkSummary {
    pub regions_total: usize,
    pub regions_bounded: usize,
    pub unbounded: usize,
    pub stable: bool,
}

pub fn link_summary(config: &GeomConfig) -> Result<LinkSummary, CliError> {
    Ok(match link_regions_3d(config) {
        Ok(r) => LinkSummary {
            regions_total: r.total,
            regions_bounded: r.bounded,
            unbounded: r.unbounded,
            stable: true,
        },
        Err(GeometryError::ResolutionTooLow { coarse, .. }) => LinkSummary {
            regions_total: coarse.0,
            regions_bounded: coarse.1,
            unbounded: coarse.0 - coarse.1,
            stable: false,
        },
        Err(e) => return Err(e.into()),
    })
}

pub fn cmd_link_regions(config: &GeomConfig) -> Result<Output, CliError> {
    let s = link_summary(config)?;
    let ok = s.stable && (s.regions_total, s.regions_bounded, s.unbounded) == LINK_EXPECTED;
    Ok(Output::json(&s, ok))
}

fn load(path: &Path) -> Result<(Value, ModelFile), CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let format_err = |source| CliError::Format {
        path: path.to_path_buf(),
        source,
    };
    let value = io::parse_json(&text).map_err(format_err)?;
    let model = io::parse_model_value(&value).map_err(format_err)?;
    Ok((value, model))
}

fn as_star(model: ModelFile) -> Result<StarSumRep, CliError> {
    Ok(match model {
        ModelFile::Rep(rep) => rep,
        ModelFile::AutPair(m) => from_autpair(&AutPair::new(m)?),
    })
}

fn echo(input: Value, result: Value, ok: bool) -> Output {
    Output::json(&json!({"input": input, "result": result}), ok)
}

fn classification_value(c: &Classification) -> (Value, bool) {
    match c {
        Classification::Vect { dim } => (json!({"class": "vect", "dim": dim}), true),
        Classification::VectPair { dims } => (json!({"class": "vect_pair", "dims": [dims.0, dims.1]}), true),
        Classification::GraphVect { dim, m3, verified } => (
            json!({"class": "vect", "dim": dim, "graph": {"m3": io::matrix_to_value(m3), "verified": verified}}),
            *verified,
        ),
        Classification::AutPair(pair) => {
            let mut v = io::autpair_to_value(pair);
            v["class"] = json!("autpair");
            (v, true)
        }
        Classification::Unclassified { n } => (json!({"class": "unclassified", "n": n}), true),
    }
}

/// Hom dimension predicted by the classification of `n`-stars with `n <= 3`.
fn vect_hom_dim(p: &StarSumRep, q: &StarSumRep) -> Option<usize> {
    match p.n() {
        1 | 3 => Some(p.outer_dim(1) * q.outer_dim(1)),
        2 => Some(p.outer_dim(1) * q.outer_dim(1) + p.outer_dim(2) * q.outer_dim(2)),
        _ => None,
    }
}

pub fn cmd_rep(cmd: &RepCommand, config: &GeomConfig) -> Result<Output, CliError> {
    match cmd {
        RepCommand::Validate { file } => {
            let (input, model) = load(file)?;
            let (result, ok) = match model {
                ModelFile::Rep(rep) => {
                    let report = rep.validate();
                    let ok = report.valid;
                    (serde_json::to_value(report).expect("serializable"), ok)
                }
                ModelFile::AutPair(m) => match AutPair::new(m) {
                    Ok(_) => (json!({"valid": true}), true),
                    Err(e) => (json!({"valid": false, "reason": e.to_string()}), false),
                },
            };
            Ok(echo(input, result, ok))
        }
        RepCommand::Classify { file } => {
            let (input, model) = load(file)?;
            let class = match model {
                ModelFile::Rep(rep) => classify(&rep)?,
                ModelFile::AutPair(m) => Classification::AutPair(AutPair::new(m)?),
            };
            let (result, ok) = classification_value(&class);
            Ok(echo(input, result, ok))
        }
        RepCommand::Hom { first, second } => {
            let (in1, m1) = load(first)?;
            let (in2, m2) = load(second)?;
            let (p, q) = (as_star(m1)?, as_star(m2)?);
            let dim_star = hom_star(&p, &q)?.dimension;
            let mut result = json!({"dim_star": dim_star});
            let agree = if p.n() == 4 {
                let (a, b) = (to_autpair(&p)?, to_autpair(&q)?);
                let dim_autpair = hom_autpair(&a, &b).dimension;
                result["dim_autpair"] = json!(dim_autpair);
                result["ext1_autpair"] = json!(ext1_autpair(&a, &b));
                dim_autpair == dim_star
            } else if let Some(d) = vect_hom_dim(&p, &q) {
                result["dim_vect"] = json!(d);
                d == dim_star
            } else {
                true
            };
            result["agree"] = json!(agree);
            Ok(Output::json(&json!({"input": [in1, in2], "result": result}), agree))
        }
        RepCommand::Roundtrip { file } => {
            let (input, model) = load(file)?;
            let (result, ok) = match model {
                ModelFile::Rep(rep) => {
                    let pair = to_autpair(&rep)?;
                    let w = roundtrip_witness(&rep)?;
                    let ok = w.passed();
                    (
                        json!({
                            "autpair": io::autpair_to_value(&pair),
                            "witness": {
                                "phi": io::matrix_to_value(&w.phi),
                                "invertible": w.invertible,
                                "checks": w.checks,
                            },
                            "passed": ok,
                        }),
                        ok,
                    )
                }
                ModelFile::AutPair(m) => {
                    let pair = AutPair::new(m)?;
                    let rep = from_autpair(&pair);
                    let back = to_autpair(&rep)?;
                    let ok = back == pair;
                    (
                        json!({
                            "rep": io::rep_to_value(&rep),
                            "autpair": io::autpair_to_value(&back),
                            "passed": ok,
                        }),
                        ok,
                    )
                }
            };
            Ok(echo(input, result, ok))
        }
        RepCommand::Random { kind, max_dim } => {
            if *max_dim == 0 {
                return Err(CliError::Usage("--max-dim must be positive".into()));
            }
            let value = match kind {
                RandomKind::Pants => io::rep_to_value(&random_pants(config.seed, *max_dim)),
                RandomKind::Trefoil => io::rep_to_value(&random_trefoil(config.seed, *max_dim)),
                RandomKind::Autpair => io::autpair_to_value(&random_autpair(&mut rng_for(config.seed), *max_dim)),
            };
            Ok(Output::json(&value, true))
        }
    }
}
