//! `kscalc`: command-line front end for `ks-core`.
//!
//! Exit codes: 0 success, 1 malformed input, 2 violated domain precondition,
//! 3 internal assertion failure (for instance a Clifford oracle mismatch).

pub mod formspec;
pub mod report;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use ks_core::clifford::{
    clifford_product, dimension_check, even_center_bounded, CliffordElement, DEFAULT_CENTER_BOUND,
};
use ks_core::hodgetype::{
    dual, is_abelian_type, is_k3_type, purity, tate_twist, tensor_all, weight1_tensor_factor,
    HodgeType,
};
use ks_core::ksclassify::{
    classify, classify_from_gram, hyperkahler_presets, ClassifyOptions, KSReport, Splitness,
};
use ks_core::lifting::{elementary_divisors, lift_level_bound, lift_rational, ToralIsogeny};
use ks_core::quadspace::{diagonalize, square_class, QuadraticSpace};
use ks_core::rational::{fmt_q, parse_q, Q};
use ks_core::rootspin::{
    pairings, special_vertex, spin_weights, standard_weights, two_weight_offset, weight_spectrum,
    Cocharacter, HalfSpin, RootDatum, Series, WeightSet,
};
use ks_core::{Error, Result};
use rayon::prelude::*;

use crate::formspec::parse_form;
use crate::report::{
    BatchItem, BatchReport, CenterOutput, DimsOutput, ErrorInfo, FactorOutput, HodgeOutput,
    LiftOutput, MultOutput, PresetOutput, Render, RepSpectrum, RootsOutput, SpectrumEntry,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable bounding the dimension of the Clifford oracle.
pub const ORACLE_ENV: &str = "KS_ORACLE_MAX_N";

#[derive(Debug, Parser)]
#[command(
    name = "kscalc",
    version,
    about = "Kuga-Satake decomposition calculator"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose the Kuga-Satake structure attached to a quadratic form.
    Classify(ClassifyArgs),
    #[command(subcommand)]
    Clifford(CliffordCommand),
    #[command(subcommand)]
    Hodge(HodgeCommand),
    /// Special vertex and spin weight spectra for B_m or D_m.
    Roots(RootsArgs),
    /// Fractional lift of a cocharacter through a toral isogeny.
    Lift(LiftArgs),
    #[command(subcommand)]
    Preset(PresetCommand),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Quadratic form: inline JSON, a JSON file, `U`, `U^k`, `diag:...` or `sum:...`.
    #[arg(long, conflicts_with_all = ["n", "delta", "batch"])]
    pub form: Option<String>,
    #[arg(long, requires = "delta", conflicts_with = "batch")]
    pub n: Option<usize>,
    /// Any nonzero rational representing the discriminant.
    #[arg(long, requires = "n", allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// File with one form per line; blank lines and `#` comments are skipped.
    #[arg(long)]
    pub batch: Option<String>,
    /// Cross-check the case against the center of the even Clifford algebra.
    #[arg(long)]
    pub oracle: bool,
    /// Splitness of the endomorphism quaternion algebra, if known.
    #[arg(long, value_parser = ["split", "nonsplit"])]
    pub hint: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CliffordCommand {
    /// Center of C+(V), recomputed by linear algebra.
    Center {
        #[arg(long)]
        form: String,
    },
    /// Product of two elements of C(V) in the diagonalizing basis.
    Mult {
        #[arg(long)]
        form: String,
        /// Element such as `2 + 1/2*e{1,2} - e{3}`.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Dimensions of C(V) and C+(V).
    Dims {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum HodgeCommand {
    /// Tensor product of one or more types.
    Tensor {
        #[arg(required = true)]
        types: Vec<String>,
    },
    Dual {
        hodge_type: String,
    },
    /// Tensor with Q(c), shifting every (p,q) by (-c,-c).
    Twist {
        hodge_type: String,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Locate the weight-one factor of a tensor product of abelian type.
    Factor {
        #[arg(required = true)]
        types: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub series: String,
    #[arg(long)]
    pub rank: usize,
    /// Half-spin representation of D_m (both are shown when omitted).
    #[arg(long, value_parser = ["even", "odd"])]
    pub half: Option<String>,
    /// Cocharacter coordinates; defaults to (1, 0, ..., 0).
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// Integer matrix as JSON, e.g. `[[2,0],[0,3]]`.
    #[arg(long)]
    pub matrix: String,
    /// Target cocharacter coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub target: String,
}

#[derive(Debug, Subcommand)]
pub enum PresetCommand {
    /// H^2 of a compact hyperkähler manifold with given second Betti number.
    Hyperkahler {
        #[arg(long)]
        b2: usize,
        /// Use the orthogonal complement of a polarization.
        #[arg(long)]
        polarized: bool,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_parse() {
        EXIT_PARSE
    } else if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_PRECONDITION
    }
}

fn error_kind(code: i32) -> &'static str {
    match code {
        EXIT_PARSE => "parse",
        EXIT_INTERNAL => "internal",
        _ => "precondition",
    }
}

/// Runtime settings read from the environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub oracle_max_n: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            oracle_max_n: DEFAULT_CENTER_BOUND,
        }
    }
}

impl Settings {
    pub fn from_env() -> Result<Settings> {
        match std::env::var(ORACLE_ENV) {
            Ok(v) => {
                let n = v.trim().parse().map_err(|_| {
                    Error::Parse(format!("{ORACLE_ENV}={v:?} is not a nonnegative integer"))
                })?;
                Ok(Settings { oracle_max_n: n })
            }
            Err(_) => Ok(Settings::default()),
        }
    }
}

/// A rendered result plus the exit code it should produce.
struct Outcome {
    text: String,
    json: String,
    code: i32,
}

impl Outcome {
    fn of<R: Render>(value: &R, code: i32) -> Outcome {
        Outcome {
            text: value.text(),
            json: serde_json::to_string_pretty(value).expect("report values serialize"),
            code,
        }
    }
}

/// Parses `args` (including the program name) and executes the command,
/// reading settings from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Settings::from_env() {
        Ok(settings) => run_with(args, &settings, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run_with<I, T>(args: I, settings: &Settings, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_PARSE
                }
            };
        }
    };
    match execute(&cli.command, settings) {
        Ok(o) => {
            let body = if cli.json {
                format!("{}\n", o.json)
            } else {
                o.text
            };
            let _ = out.write_all(body.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cmd: &Command, settings: &Settings) -> Result<Outcome> {
    match cmd {
        Command::Classify(a) => cmd_classify(a, settings),
        Command::Clifford(c) => cmd_clifford(c, settings),
        Command::Hodge(h) => cmd_hodge(h),
        Command::Roots(r) => cmd_roots(r),
        Command::Lift(l) => cmd_lift(l),
        Command::Preset(PresetCommand::Hyperkahler { b2, polarized }) => {
            let preset = hyperkahler_presets(*b2, *polarized)?;
            let factor_dims = preset.factor_dims();
            Ok(Outcome::of(
                &PresetOutput {
                    preset,
                    factor_dims,
                },
                EXIT_OK,
            ))
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<Q>> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    t.split(',').map(parse_q).collect()
}

fn q_strings(xs: &[Q]) -> Vec<String> {
    xs.iter().map(fmt_q).collect()
}

fn classify_options(a: &ClassifyArgs, settings: &Settings) -> Result<ClassifyOptions> {
    let splitness_hint = a.hint.as_deref().map(str::parse::<Splitness>).transpose()?;
    Ok(ClassifyOptions {
        oracle: a.oracle,
        oracle_max_n: settings.oracle_max_n,
        splitness_hint,
    })
}

fn classify_form(spec: &str, opts: &ClassifyOptions) -> Result<KSReport> {
    classify_from_gram(&parse_form(spec)?, opts)
}

fn cmd_classify(a: &ClassifyArgs, settings: &Settings) -> Result<Outcome> {
    let opts = classify_options(a, settings)?;
    if let Some(form) = &a.form {
        return Ok(Outcome::of(&classify_form(form, &opts)?, EXIT_OK));
    }
    if let (Some(n), Some(d)) = (a.n, &a.delta) {
        let delta = square_class(&parse_q(d)?)?;
        let report = if opts.oracle {
            // Check against the representative form <1, ..., 1, delta>.
            if n == 0 {
                return Err(Error::InvalidDimension("n = 0".into()));
            }
            let mut coeffs = vec![Q::from_integer(1.into()); n - 1];
            coeffs.push(delta.to_q());
            let space = QuadraticSpace::diagonal(&coeffs)?;
            let mut r = classify_from_gram(&space, &opts)?;
            r.signature = None;
            r.warnings.retain(|w| !w.starts_with("signature"));
            r
        } else {
            let mut r = classify(n, &delta)?;
            r.splitness_hint = opts.splitness_hint;
            r
        };
        return Ok(Outcome::of(&report, EXIT_OK));
    }
    if let Some(path) = &a.batch {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read batch file {path:?}: {e}")))?;
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let items: Vec<BatchItem> = lines
            .par_iter()
            .map(|&(line, input)| match classify_form(input, &opts) {
                Ok(report) => BatchItem {
                    line,
                    input: input.to_string(),
                    report: Some(report),
                    error: None,
                },
                Err(e) => {
                    let code = exit_code(&e);
                    BatchItem {
                        line,
                        input: input.to_string(),
                        report: None,
                        error: Some(ErrorInfo {
                            kind: error_kind(code).into(),
                            exit_code: code,
                            message: e.to_string(),
                        }),
                    }
                }
            })
            .collect();
        let code = items
            .iter()
            .filter_map(|i| i.error.as_ref().map(|e| e.exit_code))
            .max()
            .unwrap_or(EXIT_OK);
        return Ok(Outcome::of(&BatchReport { items }, code));
    }
    Err(Error::Parse(
        "classify needs --form, --n with --delta, or --batch".into(),
    ))
}

fn cmd_clifford(c: &CliffordCommand, settings: &Settings) -> Result<Outcome> {
    match c {
        CliffordCommand::Center { form } => {
            let d = diagonalize(&parse_form(form)?)?;
            let center = even_center_bounded(&d, settings.oracle_max_n)?;
            let out = CenterOutput {
                n: d.dim(),
                diagonal: q_strings(d.coeffs()),
                dim: center.dim,
                basis: center.basis.iter().map(|b| b.to_string()).collect(),
                split: center.split,
                central_square: center.central_square.as_ref().map(fmt_q),
            };
            Ok(Outcome::of(&out, EXIT_OK))
        }
        CliffordCommand::Mult { form, a, b } => {
            let d = diagonalize(&parse_form(form)?)?;
            let x = CliffordElement::parse(d.dim(), a)?;
            let y = CliffordElement::parse(d.dim(), b)?;
            let p = clifford_product(&x, &y, &d)?;
            let out = MultOutput {
                n: d.dim(),
                diagonal: q_strings(d.coeffs()),
                a: x.to_string(),
                b: y.to_string(),
                product: p.to_string(),
            };
            Ok(Outcome::of(&out, EXIT_OK))
        }
        CliffordCommand::Dims { n } => {
            let (c, e) = dimension_check(*n)?;
            let out = DimsOutput {
                n: *n,
                clifford_dim: c.to_string(),
                even_dim: e.to_string(),
            };
            Ok(Outcome::of(&out, EXIT_OK))
        }
    }
}

fn parse_types(raw: &[String]) -> Result<Vec<HodgeType>> {
    raw.iter().map(|s| s.parse()).collect()
}

fn hodge_output(operation: &str, t: HodgeType) -> HodgeOutput {
    HodgeOutput {
        operation: operation.into(),
        dim: t.dim(),
        purity: purity(&t).as_ref().map(fmt_q),
        k3_type: is_k3_type(&t),
        abelian_type: is_abelian_type(&t),
        hodge_type: t,
    }
}

fn cmd_hodge(h: &HodgeCommand) -> Result<Outcome> {
    let out = match h {
        HodgeCommand::Tensor { types } => hodge_output("tensor", tensor_all(&parse_types(types)?)),
        HodgeCommand::Dual { hodge_type } => hodge_output("dual", dual(&hodge_type.parse()?)),
        HodgeCommand::Twist { hodge_type, by } => {
            hodge_output("twist", tate_twist(&hodge_type.parse()?, &parse_q(by)?))
        }
        HodgeCommand::Factor { types } => {
            let f = weight1_tensor_factor(&parse_types(types)?)?;
            let out = FactorOutput {
                index: f.index,
                constants: q_strings(&f.constants),
                offset: fmt_q(&f.offset),
            };
            return Ok(Outcome::of(&out, EXIT_OK));
        }
    };
    Ok(Outcome::of(&out, EXIT_OK))
}

fn rep_spectrum(name: &str, weights: &WeightSet, nu: &Cocharacter) -> Result<RepSpectrum> {
    let spec = weight_spectrum(weights, nu)?;
    let offset = two_weight_offset(&spec);
    Ok(RepSpectrum {
        name: name.into(),
        dim: weights.dim(),
        spectrum: spec
            .iter()
            .map(|(v, m)| SpectrumEntry {
                value: fmt_q(v),
                mult: *m,
            })
            .collect(),
        two_weight: offset.is_some(),
        offset: offset.as_ref().map(fmt_q),
    })
}

fn cmd_roots(r: &RootsArgs) -> Result<Outcome> {
    let series: Series = r.series.parse()?;
    let half = r.half.as_deref().map(str::parse::<HalfSpin>).transpose()?;
    if half.is_some() && series == Series::B {
        return Err(Error::Parse("--half applies only to series D".into()));
    }
    let datum = RootDatum::new(series, r.rank)?;
    let nu = match &r.nu {
        Some(s) => Cocharacter(parse_list(s)?),
        None => Cocharacter::distinguished(r.rank),
    };
    let pair = pairings(&datum, &nu)?;
    let (vertex, vertex_error) = match special_vertex(&datum, &nu) {
        Ok(v) => (Some(v), None),
        Err(e) if e.is_internal() || e.is_parse() => return Err(e),
        Err(e) => (None, Some(e.to_string())),
    };

    let mut reps = Vec::new();
    match (series, half) {
        (Series::B, _) => reps.push(rep_spectrum(
            "spin",
            &spin_weights(series, r.rank, None)?,
            &nu,
        )?),
        (Series::D, Some(h)) => {
            let name = match h {
                HalfSpin::Even => "half-spin even",
                HalfSpin::Odd => "half-spin odd",
            };
            reps.push(rep_spectrum(
                name,
                &spin_weights(series, r.rank, Some(h))?,
                &nu,
            )?);
        }
        (Series::D, None) => {
            for (name, h) in [
                ("half-spin even", HalfSpin::Even),
                ("half-spin odd", HalfSpin::Odd),
            ] {
                reps.push(rep_spectrum(
                    name,
                    &spin_weights(series, r.rank, Some(h))?,
                    &nu,
                )?);
            }
        }
    }
    reps.push(rep_spectrum(
        "standard",
        &standard_weights(series, r.rank)?,
        &nu,
    )?);

    let code = if vertex.is_some() {
        EXIT_OK
    } else {
        EXIT_PRECONDITION
    };
    let out = RootsOutput {
        series,
        rank: r.rank,
        nu: q_strings(&nu.0),
        pairings: q_strings(&pair),
        special_vertex: vertex,
        special_vertex_error: vertex_error,
        representations: reps,
    };
    Ok(Outcome::of(&out, code))
}

fn cmd_lift(l: &LiftArgs) -> Result<Outcome> {
    let matrix: Vec<Vec<i64>> = serde_json::from_str(&l.matrix).map_err(|e| {
        Error::Parse(format!(
            "--matrix must be a JSON array of integer rows: {e}"
        ))
    })?;
    let target = parse_list(&l.target)?;
    let iso = ToralIsogeny::new(matrix)?;
    let lift = lift_rational(&iso, &target)?;
    let out = LiftOutput {
        matrix: iso.matrix().to_vec(),
        target: q_strings(&target),
        x: q_strings(&lift.x),
        level: lift.level,
        level_bound: lift_level_bound(&iso)?,
        elementary_divisors: elementary_divisors(iso.matrix())
            .iter()
            .map(|d| d.to_string())
            .collect(),
    };
    Ok(Outcome::of(&out, EXIT_OK))
}
