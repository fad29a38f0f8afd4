use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use growthlab::acceptance;
use growthlab::algebra::{cycle_cap, Presentation};
use growthlab::rauzy::{combined_dot, evolution, rauzy_graph, Source, DEFAULT_CYCLE_CAP};
use growthlab::report::{self, envelope, AnalyzeOptions};
use growthlab::rotation::{default_start, min_growth_system, sturmian_spec, Angle, CodingSpec};
use growthlab::structure::{decompose, witness_case2};
use growthlab::words::{Alphabet, BiInfiniteSpec, Word};
use growthlab::Error;

#[derive(Parser)]
#[command(name = "growthlab", version, about = "Low-complexity words, Rauzy graphs and monomial algebra growth")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a finite window of an infinite word.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Complexity profile, affine tail, balance and Rauzy evolution of a word.
    Analyze {
        #[command(flatten)]
        input: WordInput,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Rauzy graphs of a word prefix or of a symbolic spec.
    Rauzy {
        /// Word file; omit when `--spec` is given.
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        spec: Option<PathBuf>,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Growth class, profiles and normal-basis decomposition of a presentation.
    Algebra {
        /// Presentation file: alphabet on the first line, one forbidden word per line.
        file: PathBuf,
        #[arg(long, default_value_t = 24)]
        window: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Antidictionary of a word prefix and the language round trip.
    Duality {
        #[command(flatten)]
        input: WordInput,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Finite-horizon evidence that a rotation coding has complexity n + K.
    Witness {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 2000)]
        horizon: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        waive_resonance: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Args)]
struct WordInput {
    /// Word file, or `-` for stdin.
    file: PathBuf,
    /// Symbols in order: one character each, or whitespace-separated names.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value_t = 100)]
    len: usize,
    /// Write the word here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    waive_resonance: bool,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Coding of `x0 + nα` by `[0, α)` and `[α, 1)`.
    Sturmian {
        #[arg(long)]
        alpha: Angle,
        #[arg(long)]
        x0: Angle,
        #[command(flatten)]
        out: Output,
    },
    /// Rotation coding read from a JSON spec.
    Mechanical {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Coding of a partition cut at the points `n·α`.
    MinGrowth {
        #[arg(long)]
        alpha: Angle,
        /// Comma-separated integers `n_j`.
        #[arg(long, value_delimiter = ',')]
        breakpoints: Vec<i64>,
        /// Comma-separated symbol per arc, arcs ordered by left endpoint.
        #[arg(long, value_delimiter = ',')]
        assign: Vec<String>,
        #[arg(long)]
        x0: Option<Angle>,
        #[command(flatten)]
        out: Output,
    },
    /// `u^∞`
    Periodic {
        #[arg(long)]
        u: String,
        #[command(flatten)]
        out: Output,
    },
    /// `u^{∞/2} c v^{∞/2}`, read from position `origin`.
    TwoRay {
        #[arg(long)]
        u: String,
        #[arg(long, default_value = "")]
        c: String,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        origin: i64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
    Text,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Generate { kind } => generate(kind),
        Command::Analyze { input, n_max, k_max, format } => {
            let (alphabet, w) = read_word(&input)?;
            let r = report::analyze(&alphabet, &w, AnalyzeOptions { n_max, k_max, ..Default::default() })?;
            match format {
                Format::Json => print_json(&r),
                Format::Tsv => {
                    emit(&report::profile_tsv(&growthlab::complexity::complexity_profile(&w, n_max)));
                    Ok(())
                }
                other => unsupported(other, "analyze"),
            }
        }
        Command::Rauzy { file, spec, alphabet, k_max, format } => rauzy(file, spec, alphabet, k_max, format),
        Command::Algebra { file, window, format } => {
            let p = Presentation::parse(&read_text(&file)?)?;
            match format {
                Format::Json => print_json(&report::algebra(&p, window, cycle_cap())?),
                Format::Text => algebra_text(&p, window),
                other => unsupported(other, "algebra"),
            }
        }
        Command::Duality { input, m, format } => {
            let (alphabet, w) = read_word(&input)?;
            let r = report::duality(&alphabet, &w, m)?;
            match format {
                Format::Json => print_json(&r),
                Format::Text => {
                    emit(r["presentation"].as_str().unwrap_or_default());
                    Ok(())
                }
                other => unsupported(other, "duality"),
            }
        }
        Command::Witness { spec, horizon, samples, seed, waive_resonance } => {
            let spec = CodingSpec::from_json(&read_json(&spec)?)?;
            let w = witness_case2(&spec, horizon, samples, seed, waive_resonance)?;
            print_json(&envelope("witness", json!({ "spec": spec.to_json(), "witness": w.to_json(spec.alphabet()) })))
        }
        Command::Selftest { seed, criterion } => {
            let results = match criterion {
                Some(id) if acceptance::CRITERIA.iter().any(|(i, _)| *i == id) => vec![acceptance::run(id, seed)],
                Some(id) => return Err(Failure::Input(format!("no criterion {id}; valid ids are 1 to 9"))),
                None => acceptance::run_all(seed),
            };
            for r in &results {
                emit(&format!("{}\n", r.line()));
            }
            let failed = results.iter().filter(|r| !r.pass).count();
            if failed > 0 {
                return Err(Failure::Internal(format!("{failed} criteria failed")));
            }
            Ok(())
        }
    }
}

fn unsupported(format: Format, command: &str) -> Outcome {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Err(Failure::Input(format!("{command} does not support --format {name}")))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_alphabet(spec: &str) -> Result<Alphabet, Failure> {
    let tokens: Vec<&str> = spec.split_whitespace().collect();
    Ok(if tokens.len() > 1 { Alphabet::new(tokens)? } else { Alphabet::from_chars(spec.trim())? })
}

/// Multi-character tokens make a named alphabet; otherwise every
/// non-whitespace character is a symbol.
fn read_word(input: &WordInput) -> Result<(Alphabet, Word), Failure> {
    let text = read_text(&input.file)?;
    let named = text.split_whitespace().any(|t| t.chars().count() > 1) && text.split_whitespace().count() > 1;
    let alphabet = match &input.alphabet {
        Some(a) => parse_alphabet(a)?,
        None if named => {
            let names: std::collections::BTreeSet<&str> = text.split_whitespace().collect();
            Alphabet::new(names)?
        }
        None => Alphabet::infer(&text)?,
    };
    let body = if alphabet.separator().is_some() {
        text.split_whitespace().collect::<Vec<_>>().join(alphabet.separator().unwrap_or(" "))
    } else {
        text.split_whitespace().collect::<String>()
    };
    let w = alphabet.parse(&body)?;
    Ok((alphabet, w))
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) -> Outcome {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Internal(e.to_string()))?;
    emit(&format!("{text}\n"));
    Ok(())
}

fn emit_word(out: &Output, alphabet: &Alphabet, w: &Word, spec: Value) -> Outcome {
    let text = alphabet.render(w);
    match &out.out {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        None => emit(&format!("{text}\n")),
    }
    let spec = envelope("generate", json!({ "spec": spec, "len": w.len() }));
    let mut err = io::stderr().lock();
    let _ = writeln!(err, "{}", serde_json::to_string(&spec).unwrap_or_default());
    Ok(())
}

fn emit_coding(spec: &CodingSpec, out: &Output) -> Outcome {
    let w = spec.mechanical_word(out.len, out.waive_resonance)?;
    let mut echo = spec.to_json();
    echo["kind"] = json!("rotation");
    emit_word(out, spec.alphabet(), &w, echo)
}

fn generate(kind: GenerateKind) -> Outcome {
    match kind {
        GenerateKind::Sturmian { alpha, x0, out } => emit_coding(&sturmian_spec(&alpha, &x0)?, &out),
        GenerateKind::Mechanical { spec, out } => {
            let value = read_json(&spec)?;
            emit_coding(&CodingSpec::from_json(&value)?, &out)
        }
        GenerateKind::MinGrowth { alpha, breakpoints, assign, x0, out } => {
            let x0 = x0.unwrap_or_else(|| default_start(&alpha));
            let names: Vec<&str> = assign.iter().map(String::as_str).collect();
            emit_coding(&min_growth_system(&alpha, &breakpoints, &names, &x0)?, &out)
        }
        GenerateKind::Periodic { u, out } => {
            let alphabet = Alphabet::infer(&u)?;
            let spec = BiInfiniteSpec::periodic(alphabet.parse(&u)?)?;
            let w = spec.window(0, out.len)?;
            emit_word(&out, &alphabet, &w, spec.to_json(&alphabet))
        }
        GenerateKind::TwoRay { u, c, v, origin, out } => {
            let alphabet = Alphabet::infer(&format!("{u}{c}{v}"))?;
            let spec = BiInfiniteSpec::two_ray(alphabet.parse(&u)?, alphabet.parse(&c)?, alphabet.parse(&v)?)?;
            let w = spec.window(origin, out.len)?;
            emit_word(&out, &alphabet, &w, spec.to_json(&alphabet))
        }
    }
}

fn rauzy(
    file: Option<PathBuf>,
    spec: Option<PathBuf>,
    alphabet: Option<String>,
    k_max: usize,
    format: Format,
) -> Outcome {
    let (alphabet, word, spec) = match (file, spec) {
        (_, Some(path)) => {
            let given = alphabet.as_deref().map(parse_alphabet).transpose()?;
            let (spec, alphabet) = BiInfiniteSpec::from_json(&read_json(&path)?, given.as_ref())?;
            (alphabet, None, Some(spec))
        }
        (Some(file), None) => {
            let (alphabet, w) = read_word(&WordInput { file, alphabet })?;
            (alphabet, Some(w), None)
        }
        (None, None) => return Err(Failure::Input("give a word file or --spec".into())),
    };
    let source = match (&word, &spec) {
        (Some(w), _) => Source::Prefix(w),
        (None, Some(s)) => Source::Spec(s),
        (None, None) => unreachable!("one input is always set"),
    };
    let ev = evolution(source, k_max, DEFAULT_CYCLE_CAP)?;
    match format {
        Format::Json => print_json(&envelope("rauzy", ev.to_json(&alphabet))),
        Format::Dot => {
            let mut graphs = Vec::new();
            for s in &ev.stats {
                let factors = |n| match (&word, &spec) {
                    (Some(w), _) => Ok(growthlab::words::factors(w, n)),
                    (None, Some(sp)) => sp.factors(n),
                    (None, None) => unreachable!("one input is always set"),
                };
                graphs.push(rauzy_graph(&factors(s.k)?, &factors(s.k + 1)?)?);
            }
            emit(&format!("// {}\n", ev.verdict.describe()));
            emit(&combined_dot(&graphs, &alphabet));
            Ok(())
        }
        other => unsupported(other, "rauzy"),
    }
}

fn algebra_text(p: &Presentation, window: usize) -> Outcome {
    let r = report::algebra(p, window, cycle_cap())?;
    let class = &r["class"];
    let mut line = format!("class: {}", class["tag"].as_str().unwrap_or_default());
    if let Some(k) = class.get("K") {
        line.push_str(&format!(" K={k}"));
    }
    if let Some(d) = class.get("degree") {
        line.push_str(&format!(" degree={d}"));
    }
    if class["empirical"] == json!(true) {
        line.push_str(" (empirical)");
    }
    emit(&format!("{line}\n"));
    if !r["decomposition"].is_null() {
        emit(&decompose(p)?.to_text(p.alphabet()));
    }
    Ok(())
}
