//! Command-line front end: analyze single functions against a class,
//! enumerate classes, run verification sweeps, build strip-family fixtures,
//! and count minimal teaching sets.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad input files, functions
//! outside the class, infeasible sizes, sweep violations), 2 on usage
//! errors.

mod analysis;
mod svg;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{builder::PossibleValuesParser, Parser, Subcommand};
use serde::Serialize;

use teachset::classes::{enumerate_class, minimal_teaching_sets};
use teachset::grid::{parse_function, serialize_function};
use teachset::suites::{run_suite, SuiteOptions, SUITE_NAMES};
use teachset::twothreshold::{
    distinguishing_count, family_instance, nine_point_teaching_set, DefiningPair,
};
use teachset::{ClassKind, ClassSpec, Error, GridFunction, GridSpec, Result};

use analysis::{analyze_function, coord_lists, essential_points, FunctionEcho};
use svg::{render_svg, Layer, ALL_LAYERS};

/// A function class named on the command line: `threshold`, `2threshold`,
/// `kthreshold:<k>`, or `polytopal`.
#[derive(Clone, Debug)]
pub struct ClassArg {
    raw: String,
    pub kind: ClassKind,
}

impl FromStr for ClassArg {
    type Err = String;

    fn from_str(raw: &str) -> std::result::Result<Self, String> {
        let kind = match raw {
            "threshold" => ClassKind::Threshold,
            "2threshold" => ClassKind::KThreshold(2),
            "polytopal" => ClassKind::Polytopal,
            other => match other.strip_prefix("kthreshold:") {
                Some(k) => {
                    let k: u32 = k
                        .parse()
                        .map_err(|_| format!("bad conjunction count in {other:?}"))?;
                    if k == 0 {
                        return Err("conjunction count must be positive".into());
                    }
                    ClassKind::KThreshold(k)
                }
                None => {
                    return Err(format!(
                        "unknown class {raw:?}; expected threshold, 2threshold, kthreshold:<k> or polytopal"
                    ))
                }
            },
        };
        Ok(ClassArg {
            raw: raw.to_string(),
            kind,
        })
    }
}

impl fmt::Display for ClassArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

#[derive(Parser)]
#[command(
    name = "teachset",
    version,
    about = "Essential points, teaching sets and verification sweeps for threshold and polytopal functions on integer grids"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one function (a JSON file) against a class and print the
    /// analysis document
    Analyze {
        /// JSON file holding {"d":..,"n":..,"ones":[[..],..]}
        file: PathBuf,
        /// Class to analyze against
        #[arg(long)]
        class: ClassArg,
        /// Also render a figure to this file
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Figure layers to draw (default: all)
        #[arg(long, value_delimiter = ',', value_enum)]
        layers: Option<Vec<Layer>>,
    },
    /// List every member of a class on the side-n grid, one JSON document
    /// per line
    Enumerate {
        /// Grid side
        #[arg(long)]
        n: usize,
        /// Class to enumerate
        #[arg(long)]
        class: ClassArg,
        /// Print only the member count
        #[arg(long)]
        count_only: bool,
    },
    /// Run a verification sweep and print its report
    Verify {
        /// Which sweep to run
        #[arg(long, value_parser = PossibleValuesParser::new(SUITE_NAMES))]
        suite: String,
        /// Largest grid side to sweep (suite-specific default)
        #[arg(long)]
        n_max: Option<usize>,
        /// Random seed (required by the seeded sweeps)
        #[arg(long)]
        seed: Option<u64>,
        /// Sample count for the seeded sweeps
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Build the strip-family fixture on the side-n grid
    Family {
        /// Grid side (at least 21)
        #[arg(long)]
        n: usize,
        /// Write the fixture document here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the strip to this file
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Count the minimal teaching sets of a function within a class
    CountMts {
        /// JSON file holding {"d":..,"n":..,"ones":[[..],..]}
        file: PathBuf,
        /// Class to count within
        #[arg(long)]
        class: ClassArg,
        /// Keep at most this many witness sets (counting stays exact)
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
}

fn read_function(path: &Path) -> Result<GridFunction> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_function(&text)
}

fn write_output(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

/// Strip-family fixture as emitted by the `family` subcommand.
#[derive(Serialize)]
struct FamilyDocument {
    n: usize,
    m: i64,
    lower_factor: FunctionEcho,
    upper_factor: FunctionEcho,
    conjunction: FunctionEcho,
    lower_zero: Vec<Vec<i64>>,
    lower_one: Vec<Vec<i64>>,
    upper_zero: Vec<Vec<i64>>,
    upper_one: Vec<Vec<i64>>,
    teaching_set: Vec<Vec<i64>>,
    distinguishing_count: u64,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Analyze {
            file,
            class,
            svg,
            layers,
        } => {
            let f = read_function(&file)?;
            let doc = analyze_function(&f, &class)?;
            if let Some(svg_path) = svg {
                let layers = layers.unwrap_or_else(|| ALL_LAYERS.to_vec());
                let figure = render_svg(&f, &layers, &essential_points(&doc))?;
                write_output(&svg_path, &figure)?;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("analysis document serializes")
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Enumerate { n, class, count_only } => {
            let grid = GridSpec::new(2, n)?;
            let cls = enumerate_class(&ClassSpec::new(class.kind, grid))?;
            if count_only {
                println!("{}", cls.len());
            } else {
                for f in cls.members() {
                    println!("{}", serialize_function(f));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            suite,
            n_max,
            seed,
            samples,
        } => {
            if suite == "perimeter" && seed.is_none() {
                eprintln!("error: the perimeter sweep samples randomly and needs --seed");
                return Ok(ExitCode::from(2));
            }
            let report = run_suite(
                &suite,
                &SuiteOptions {
                    n_max,
                    seed,
                    samples,
                },
            )?;
            println!("suite: {}", report.name);
            println!("checked: {}", report.checked);
            println!("violations: {}", report.violations);
            for (key, value) in &report.metrics {
                println!("{key}: {value}");
            }
            for detail in &report.details {
                println!("violation: {detail}");
            }
            Ok(if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Family { n, out, svg } => {
            let inst = family_instance(n)?;
            let pair = DefiningPair {
                first: inst.lower_factor.clone(),
                second: inst.upper_factor.clone(),
                system_holds: true,
            };
            let teaching = nine_point_teaching_set(&inst.conj, &pair)?;
            let doc = FamilyDocument {
                n: inst.n,
                m: inst.m,
                lower_factor: FunctionEcho::of(&inst.lower_factor),
                upper_factor: FunctionEcho::of(&inst.upper_factor),
                conjunction: FunctionEcho::of(&inst.conj),
                lower_zero: coord_lists(&inst.lower_zero),
                lower_one: coord_lists(&inst.lower_one),
                upper_zero: coord_lists(&inst.upper_zero),
                upper_one: coord_lists(&inst.upper_one),
                teaching_set: coord_lists(&teaching),
                distinguishing_count: distinguishing_count(&inst)?,
            };
            let json =
                serde_json::to_string_pretty(&doc).expect("family document serializes");
            if let Some(svg_path) = svg {
                let figure = render_svg(&inst.conj, &ALL_LAYERS, &teaching)?;
                write_output(&svg_path, &figure)?;
            }
            match out {
                Some(path) => write_output(&path, &json)?,
                None => println!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CountMts { file, class, cap } => {
            let f = read_function(&file)?;
            let cls = enumerate_class(&ClassSpec::new(class.kind, f.grid()))?;
            let report = minimal_teaching_sets(&f, &cls, cap)?;
            #[derive(Serialize)]
            struct MtsDocument {
                class: String,
                sigma: usize,
                j_count: u64,
                witnesses: Vec<Vec<Vec<i64>>>,
            }
            let doc = MtsDocument {
                class: class.to_string(),
                sigma: report.sigma,
                j_count: report.j_count,
                witnesses: report.witnesses.iter().map(|w| coord_lists(w)).collect(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("count document serializes")
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
