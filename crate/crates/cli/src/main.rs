use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quadpoint::invariant::{DiffeoDescriptor, EmbeddingDescriptor};
use quadpoint::quadform::FormDescriptor;
use quadpoint::tsd::TsdDescriptor;
use quadpoint::{
    complete_to_tsd, oracle, psi, psi_hat, psi_hat_recipe, pullback_by_diffeo, q_diffeo, q_system,
    quadruple_invariant, BitMatrix, DiffeoData, EmbeddingData, Error, ErrorClass, QuadraticForm,
    Subspace, SystemEmbeddingData, Tsd,
};

/// Mod-2 quadruple point invariants of surface embeddings in 3-space.
#[derive(Parser, Debug)]
#[command(name = "quadpoint", version)]
struct Cli {
    /// Output format for invariant values.
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Q(e, e') for two embeddings of one surface.
    Q {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Q for two embeddings of a system of surfaces.
    QSystem {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// psi(T) = rank(T - I) mod 2 for an orthogonal map.
    Psi {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// psi-hat between two totally singular decompositions.
    PsiHat {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Also evaluate the difference-span recipe as a cross-check.
        #[arg(long)]
        recipe: bool,
    },
    /// Q(i, i∘h) from the induced map of a diffeomorphism.
    QDiffeo {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Embedding data of e∘h.
    Pullback {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Complete a totally singular half-dimensional subspace to a decomposition.
    Complete {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
    },
    /// Embedding data of the standard embedding of genus n.
    Standard {
        #[arg(long)]
        genus: usize,
    },
    /// Validate an embedding data file.
    Check {
        #[arg(long)]
        embedding: PathBuf,
    },
    /// Exhaustive verification report for the standard form of dimension 2 or 4.
    Oracle {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["2", "4"]))]
        dim: String,
    },
}

/// A failure together with the exit status it maps to.
struct Failure {
    code: u8,
    reason: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err.class() {
            ErrorClass::Malformed => 2,
            ErrorClass::Domain => 3,
        };
        Failure {
            code,
            reason: err.reason().to_string(),
            message: err.to_string(),
        }
    }
}

/// Input problems are always exit 2, whatever validation rejected them.
fn malformed(err: Error) -> Failure {
    Failure {
        code: 2,
        ..Failure::from(err)
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure {
        code: 2,
        reason: "io-error".into(),
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(text)
}

/// Reads a JSON descriptor and validates it into the domain type.
fn load<D, T>(path: &Path) -> Result<T, Failure>
where
    D: serde::de::DeserializeOwned,
    T: TryFrom<D, Error = Error>,
{
    let text = read_input(path)?;
    let descriptor: D = serde_json::from_str(&text)
        .map_err(|e| malformed(Error::Parse(format!("{}: {e}", path.display()))))?;
    T::try_from(descriptor).map_err(malformed)
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| malformed(Error::Parse(format!("{}: {e}", path.display()))))
}

fn load_embedding(path: &Path) -> Result<EmbeddingData, Failure> {
    load::<EmbeddingDescriptor, EmbeddingData>(path)
}

fn load_diffeo(path: &Path) -> Result<DiffeoData, Failure> {
    load::<DiffeoDescriptor, DiffeoData>(path)
}

#[derive(serde::Deserialize)]
struct SystemDescriptor {
    components: Vec<EmbeddingDescriptor>,
}

fn load_system(path: &Path) -> Result<SystemEmbeddingData, Failure> {
    let d: SystemDescriptor = load_json(path)?;
    let components = d
        .components
        .into_iter()
        .map(EmbeddingData::try_from)
        .collect::<Result<Vec<_>, _>>()
        .map_err(malformed)?;
    Ok(SystemEmbeddingData { components })
}

fn load_matrix(path: &Path) -> Result<BitMatrix, Failure> {
    let rows: Vec<String> = load_json(path)?;
    BitMatrix::from_row_strings(&rows).map_err(malformed)
}

fn bit_output(value: bool, format: OutputFormat) -> String {
    let digit = u8::from(value);
    match format {
        OutputFormat::Plain => format!("{digit}\n"),
        OutputFormat::Json => format!("{}\n", json!({ "value": digit })),
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<String, Failure> {
    let out = cli.output;
    match cli.command {
        Command::Q { left, right } => {
            let e = load_embedding(&left)?;
            let f = load_embedding(&right)?;
            Ok(bit_output(quadruple_invariant(&e, &f)?, out))
        }
        Command::QSystem { left, right } => {
            let s = load_system(&left)?;
            let t = load_system(&right)?;
            Ok(bit_output(q_system(&s, &t)?, out))
        }
        Command::Psi { form, map } => {
            let f: QuadraticForm = load::<FormDescriptor, _>(&form)?;
            let m = load_matrix(&map)?;
            Ok(bit_output(psi(&f, &m)?, out))
        }
        Command::PsiHat { left, right, recipe } => {
            let t1: Tsd = load::<TsdDescriptor, _>(&left)?;
            let t2: Tsd = load::<TsdDescriptor, _>(&right)?;
            let value = psi_hat(&t1, &t2)?;
            if !recipe {
                return Ok(bit_output(value, out));
            }
            let check = psi_hat_recipe(&t1, &t2)?;
            if check != value {
                return Err(Failure {
                    code: 1,
                    reason: "recipe-mismatch".into(),
                    message: format!("transport gives {}, recipe gives {}", u8::from(value), u8::from(check)),
                });
            }
            Ok(match out {
                OutputFormat::Plain => format!("{}\nrecipe {}\n", u8::from(value), u8::from(check)),
                OutputFormat::Json => {
                    format!("{}\n", json!({ "value": u8::from(value), "recipe": u8::from(check) }))
                }
            })
        }
        Command::QDiffeo { embedding, map } => {
            let e = load_embedding(&embedding)?;
            let h = load_diffeo(&map)?;
            Ok(bit_output(q_diffeo(&h, &e)?, out))
        }
        Command::Pullback { embedding, map } => {
            let e = load_embedding(&embedding)?;
            let h = load_diffeo(&map)?;
            Ok(pretty(&pullback_by_diffeo(&e, &h)?))
        }
        Command::Complete { form, subspace } => {
            let f: QuadraticForm = load::<FormDescriptor, _>(&form)?;
            let rows: Vec<String> = load_json(&subspace)?;
            let a = Subspace::from_strings(f.dim(), &rows).map_err(malformed)?;
            Ok(pretty(&complete_to_tsd(&f, &a)?))
        }
        Command::Standard { genus } => {
            if 2 * genus > quadpoint::gf2::MAX_DIM {
                return Err(malformed(Error::DimensionTooLarge {
                    dim: 2 * genus,
                    max: quadpoint::gf2::MAX_DIM,
                }));
            }
            Ok(pretty(&EmbeddingData::standard(genus)))
        }
        Command::Check { embedding } => {
            let e = load_embedding(&embedding)?;
            Ok(match out {
                OutputFormat::Plain => "ok\n".to_string(),
                OutputFormat::Json => format!("{}\n", json!({ "valid": true, "genus": e.genus() })),
            })
        }
        Command::Oracle { dim } => {
            let genus = if dim == "2" { 1 } else { 2 };
            let report = oracle::verify_exhaustive(&QuadraticForm::standard(genus))?;
            let text = pretty(&report);
            if report.violations.is_empty() {
                Ok(text)
            } else {
                print!("{text}");
                Err(Failure {
                    code: 1,
                    reason: "lemma-violations".into(),
                    message: format!("{} violation(s)", report.violations.len()),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let detail: Value = json!({ "reason": f.reason, "message": f.message });
            eprintln!("{detail}");
            ExitCode::from(f.code)
        }
    }
}
