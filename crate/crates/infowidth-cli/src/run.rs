//! Subcommand dispatch: builds each command's output and writes it to
//! the requested file or stdout.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use infowidth::classes::{property_report, ReportMethod};
use infowidth::mc::{mc_info_report, RngHandle};
use infowidth::measures::{conditional_entropy, description_complexity, information_about};
use infowidth::width::{info_width, WidthQuery};
use infowidth::{
    FuncDomain, FunctionClass, InfoReport, LabeledSample, PropertyCollection, PropertySpec,
    TargetSpace, TargetSubset,
};
use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::json;

use crate::args::{
    Cli, Command, FigureArgs, McValidateArgs, MeasureArgs, MethodArg, PropArg, PropertyArgs,
    WidthArgs,
};
use crate::output::{format_cell, render_csv, render_svg};
use crate::reports::{asym_report, premise_notes, AsymFamily};
use crate::{figures, validate, CliError, CliResult};

/// Executes a parsed command line.
pub fn run(cli: Cli) -> CliResult<()> {
    let threads = cli
        .threads
        .map(|t| t as usize)
        .unwrap_or_else(infowidth::parallel::default_threads);
    match &cli.command {
        Command::Width(args) => emit(&args.out, &cmd_width(args)?),
        Command::Property(args) => emit(&args.out, &cmd_property(args, threads)?),
        Command::Measure(args) => emit(&args.out, &cmd_measure(args)?),
        Command::Figure(args) => cmd_figure(args, threads),
        Command::McValidate(args) => cmd_mc_validate(args, threads),
    }
}

/// Writes `payload` to the file when given, to stdout otherwise.
fn emit(out: &Option<PathBuf>, payload: &str) -> CliResult<()> {
    match out {
        Some(path) => write_file(path, payload),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, payload: &str) -> CliResult<()> {
    fs::write(path, payload)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

/// `width`: one CSV row `l,r,istar,kappastar`.
fn cmd_width(args: &WidthArgs) -> CliResult<String> {
    let space = TargetSpace::new(args.ny)?;
    let backend = args.backend.map(Into::into);
    let query = match (args.l, &args.members) {
        (Some(l), None) => WidthQuery::from_complexity(space, l, backend)?,
        (None, Some(text)) => {
            let members: BigUint = text.parse().map_err(|_| {
                CliError::Usage(format!("--members must be a decimal integer, got {text:?}"))
            })?;
            WidthQuery::from_members(space, members, backend)?
        }
        _ => unreachable!("clap enforces exactly one of --l/--members"),
    };
    let result = info_width(&query)?;
    if result.width <= 0.0 {
        return Err(CliError::Usage(
            "the width is zero at this query; the cost kappa* is undefined".into(),
        ));
    }
    let mut out = String::from("l,r,istar,kappastar\n");
    let _ = writeln!(
        out,
        "{l},{r},{istar},{kappa}",
        l = format_cell(result.complexity),
        r = result.r,
        istar = format_cell(result.width),
        kappa = format_cell(result.complexity / result.width),
    );
    Ok(out)
}

/// `property`: a JSON information report.
fn cmd_property(args: &PropertyArgs, threads: usize) -> CliResult<String> {
    match args.method {
        MethodArg::Exact => {
            let (domain, spec) = build_spec(args)?;
            let report = property_report(domain, &spec, &ReportMethod::Exact)?;
            Ok(report_json(&report))
        }
        MethodArg::Asym => {
            let family = build_family(args)?;
            let nf = f64::from(args.n);
            for note in premise_notes(nf, family) {
                eprintln!("{note}");
            }
            let report = asym_report(nf, family)?;
            Ok(report_json(&report))
        }
        MethodArg::Mc => {
            let (domain, spec) = build_spec(args)?;
            let handle = RngHandle::new(args.seed);
            let mc = mc_info_report(domain, &spec, args.trials, &handle, threads)?;
            let info = mc.information.estimate;
            let mut value = json!({
                "I": info,
                "H": mc.conditional_entropy.estimate,
                "l": mc.description.estimate,
                "stderr": {
                    "I": mc.information.stderr,
                    "H": mc.conditional_entropy.stderr,
                    "l": mc.description.stderr,
                },
                "trials": mc.trials_per_cardinality,
                "seed": mc.seed,
            });
            if info > 0.0 {
                value["kappa"] = json!(mc.description.estimate / info);
            }
            Ok(format!("{value:#}\n"))
        }
    }
}

/// Class-based spec for the exact and Monte-Carlo routes.
fn build_spec(args: &PropertyArgs) -> CliResult<(FuncDomain, PropertySpec)> {
    let domain = FuncDomain::new(args.n)?;
    let spec = match args.prop {
        PropArg::Ld => PropertySpec::AgreementAtLeast(require_d(args)?),
        PropArg::Vd => PropertySpec::VcBelow(require_d(args)?),
        PropArg::Vdc => PropertySpec::VcAtLeast(require_d(args)?),
        PropArg::Vdsm => PropertySpec::VcBelowConsistent {
            d: require_d(args)?,
            sample: load_sample(args)?,
        },
        PropArg::Identity => {
            let gsize = args.gsize.ok_or_else(|| {
                CliError::Usage("--gsize is required for the identity property".into())
            })?;
            PropertySpec::Identity(FunctionClass::prefix(domain, gsize)?)
        }
        PropArg::Expdecay => PropertySpec::ExpDecayWeights {
            alpha: require_alpha(args)?,
            coefficient: 1.0,
        },
    };
    Ok((domain, spec))
}

/// Real-valued family for the closed-form route.
fn build_family(args: &PropertyArgs) -> CliResult<AsymFamily> {
    Ok(match args.prop {
        PropArg::Ld => AsymFamily::Ld {
            d: f64::from(require_d(args)?),
        },
        PropArg::Vd => AsymFamily::Vd {
            d: f64::from(require_d(args)?),
        },
        PropArg::Vdc => AsymFamily::Vdc {
            d: f64::from(require_d(args)?),
        },
        PropArg::Vdsm => AsymFamily::Vdsm {
            d: f64::from(require_d(args)?),
            m: load_sample(args)?.len() as f64,
        },
        PropArg::Identity => AsymFamily::Identity {
            gsize: args.gsize.ok_or_else(|| {
                CliError::Usage("--gsize is required for the identity property".into())
            })? as f64,
        },
        PropArg::Expdecay => AsymFamily::ExpDecay {
            alpha: require_alpha(args)?,
        },
    })
}

fn require_d(args: &PropertyArgs) -> CliResult<u32> {
    args.d
        .ok_or_else(|| CliError::Usage("--d is required for this property".into()))
}

fn require_alpha(args: &PropertyArgs) -> CliResult<f64> {
    args.alpha.ok_or_else(|| {
        CliError::Usage("--alpha is required for the weighted-decay property".into())
    })
}

/// The sample for the consistency property: an explicit file, or `m`
/// zero-labeled points.
fn load_sample(args: &PropertyArgs) -> CliResult<LabeledSample> {
    match (&args.sample, args.m) {
        (Some(path), _) => Ok(LabeledSample::from_json(&read_file(path)?)?),
        (None, Some(m)) => Ok(LabeledSample::zeros(m)),
        (None, None) => Err(CliError::Usage(
            "the consistency property needs --m or --sample".into(),
        )),
    }
}

fn report_json(report: &InfoReport) -> String {
    let value = serde_json::to_value(report).expect("report serialization is infallible");
    format!("{value:#}\n")
}

/// Target-subset JSON: either a bare element array or `{"subset": [...]}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum TargetJson {
    Bare(Vec<u64>),
    Tagged { subset: Vec<u64> },
}

/// `measure`: a JSON report for an explicit property, whole-space or
/// against a given target subset.
fn cmd_measure(args: &MeasureArgs) -> CliResult<String> {
    let x = PropertyCollection::from_json(&read_file(&args.input)?)?;
    let report = match &args.target {
        None => x.report()?,
        Some(path) => {
            let parsed: TargetJson =
                serde_json::from_str(&read_file(path)?).map_err(infowidth::Error::from)?;
            let elements = match parsed {
                TargetJson::Bare(e) | TargetJson::Tagged { subset: e } => e,
            };
            let target = TargetSubset::new(elements)?;
            target.check_in_space(x.space())?;
            let info = information_about(&x, &target)?;
            let l = description_complexity(&x);
            InfoReport {
                information: info,
                conditional_entropy: conditional_entropy(&x),
                description: Some(l),
                cost: (info > 0.0).then(|| l / info),
                // The width ratio is defined against the whole space, not
                // a single target.
                efficiency: None,
            }
        }
    };
    Ok(report_json(&report))
}

/// `figure`: CSV to `--out-csv` or stdout, SVG to `--out-svg` when given.
fn cmd_figure(args: &FigureArgs, threads: usize) -> CliResult<()> {
    let table = figures::figure_table(args.id, threads)?;
    emit(&args.out_csv, &render_csv(&table))?;
    if let Some(path) = &args.out_svg {
        write_file(path, &render_svg(&table))?;
    }
    Ok(())
}

/// `mc-validate`: prints the check report; nonzero failures exit 1.
fn cmd_mc_validate(args: &McValidateArgs, threads: usize) -> CliResult<()> {
    let (report, failed) = validate::run_suite(args.trials, args.seed, threads)?;
    print!("{report}");
    if failed > 0 {
        return Err(CliError::Check(format!(
            "{failed} statistical check(s) failed"
        )));
    }
    Ok(())
}
