//! `rvt`: validate, analyze, trace, count and enumerate RVT codes.
//!
//! Exit status: 0 on success, 1 for a negative answer (invalid word, absent
//! plane, count mismatch), 2 for usage or parse errors.

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rvt::enumeration::{count_words, count_words_upto, enumerate_with_prefix, verify_counts};
use rvt::report::{tables_markdown, trace_json, trace_text, AnalysisReport};
use rvt::rules::{successors_of_letter, validate};
use rvt::tower::{derived_successors, AnalysisError, PlaneSlot};
use rvt::tracer::{trace, TraceError};
use rvt::word::{parse_word, Letter, ParseError, RvtWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SlotArg {
    #[value(name = "T1", alias = "t1")]
    T1,
    #[value(name = "T2", alias = "t2")]
    T2,
}

impl From<SlotArg> for PlaneSlot {
    fn from(s: SlotArg) -> Self {
        match s {
            SlotArg::T1 => PlaneSlot::T1,
            SlotArg::T2 => PlaneSlot::T2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rvt",
    version,
    about = "RVT codes of the Monster/Semple tower over R^3"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a word against the spelling rules.
    Validate { word: String },
    /// Letters that may follow a word (derived from its critical planes), or
    /// the rule row of a single letter with --letter.
    Successors {
        word: Option<String>,
        #[arg(long, conflicts_with = "word")]
        letter: Option<String>,
    },
    /// Canonical chart and critical-plane ledger, level by level.
    Analyze { word: String },
    /// Backward search for the Baby Monster containing T1 or T2.
    Trace {
        word: String,
        #[arg(value_enum)]
        slot: SlotArg,
    },
    /// Number of admissible words of length k.
    Count {
        #[arg(required_unless_present_any = ["upto", "verify"])]
        k: Option<usize>,
        /// Print counts for every length 1..=K, one per line.
        #[arg(long, value_name = "K", conflicts_with = "k")]
        upto: Option<usize>,
        /// Cross-check the counts against enumeration for lengths 1..=K.
        #[arg(long, value_name = "K", conflicts_with_all = ["k", "upto"])]
        verify: Option<usize>,
    },
    /// List the admissible words of length k in lexicographic order.
    Enumerate {
        k: usize,
        /// Only words starting with this prefix.
        #[arg(long)]
        prefix: Option<String>,
    },
    /// Regenerate the spelling-rule, configuration and base-case tables.
    Tables,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    match &cli.command {
        Command::Validate { word } => cmd_validate(cli.format, &parse_word(word)?, out),
        Command::Successors { word, letter } => {
            cmd_successors(cli.format, word.as_deref(), letter.as_deref(), out)
        }
        Command::Analyze { word } => cmd_analyze(cli.format, &parse_word(word)?, out),
        Command::Trace { word, slot } => {
            cmd_trace(cli.format, &parse_word(word)?, (*slot).into(), out)
        }
        Command::Count { k, upto, verify } => cmd_count(cli.format, *k, *upto, *verify, out),
        Command::Enumerate { k, prefix } => {
            let prefix = match prefix {
                Some(p) => parse_word(p)?,
                None => RvtWord::empty(),
            };
            cmd_enumerate(cli.format, *k, &prefix, out)
        }
        Command::Tables => {
            out.write_all(tables_markdown().as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_json(out: &mut impl Write, value: &serde_json::Value) -> io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("json value")
    )
}

fn cmd_validate(format: Format, word: &RvtWord, out: &mut impl Write) -> Outcome {
    let result = validate(word);
    match format {
        Format::Json => {
            let value = match &result {
                Ok(()) => json!({ "word": word.to_string(), "valid": true }),
                Err(v) => json!({ "word": word.to_string(), "valid": false, "violation": v }),
            };
            print_json(out, &value)?;
        }
        Format::Text => match &result {
            Ok(()) => writeln!(out, "{word}: valid")?,
            Err(v) => writeln!(out, "{word}: invalid: {v}")?,
        },
    }
    Ok(if result.is_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn rejected(format: Format, word: &RvtWord, err: &AnalysisError, out: &mut impl Write) -> Outcome {
    match format {
        Format::Json => {
            let value = match err {
                AnalysisError::Rule(v) => {
                    json!({ "word": word.to_string(), "valid": false, "violation": v })
                }
                other => json!({ "word": word.to_string(), "error": other.to_string() }),
            };
            print_json(out, &value)?;
        }
        Format::Text => writeln!(out, "{word}: {err}")?,
    }
    Ok(ExitCode::from(1))
}

fn cmd_successors(
    format: Format,
    word: Option<&str>,
    letter: Option<&str>,
    out: &mut impl Write,
) -> Outcome {
    let (subject, set) = match (word, letter) {
        (_, Some(letter)) => {
            let letter: Letter = letter.parse()?;
            (letter.to_string(), successors_of_letter(letter))
        }
        (Some(word), None) => {
            let word = parse_word(word)?;
            match derived_successors(&word) {
                Ok(set) => (word.to_string(), set),
                Err(e) => return rejected(format, &word, &e, out),
            }
        }
        (None, None) => return Err(Failure::Usage("give a word or --letter".into())),
    };
    match format {
        Format::Json => {
            let letters: Vec<&str> = set.iter().map(Letter::as_str).collect();
            print_json(out, &json!({ "of": subject, "successors": letters }))?;
        }
        Format::Text => writeln!(out, "{set}")?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(format: Format, word: &RvtWord, out: &mut impl Write) -> Outcome {
    let report = match AnalysisReport::build(word) {
        Ok(r) => r,
        Err(e) => return rejected(format, word, &e, out),
    };
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Text => out.write_all(report.to_text().as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_trace(format: Format, word: &RvtWord, slot: PlaneSlot, out: &mut impl Write) -> Outcome {
    let t = match trace(word, slot) {
        Ok(t) => t,
        Err(TraceError::Rule(v)) => return rejected(format, word, &AnalysisError::Rule(v), out),
        Err(e) => return Err(Failure::Usage(e.to_string())),
    };
    match format {
        Format::Json => writeln!(out, "{}", trace_json(&t))?,
        Format::Text => out.write_all(trace_text(&t).as_bytes())?,
    }
    Ok(if t.outcome.exists() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_count(
    format: Format,
    k: Option<usize>,
    upto: Option<usize>,
    verify: Option<usize>,
    out: &mut impl Write,
) -> Outcome {
    if let Some(k_max) = verify {
        return match verify_counts(k_max) {
            Ok(report) => {
                match format {
                    Format::Json => print_json(out, &json!(report))?,
                    Format::Text => write!(out, "{report}")?,
                }
                Ok(ExitCode::SUCCESS)
            }
            Err(e @ rvt::enumeration::VerifyError::OverBound { .. }) => {
                Err(Failure::Usage(e.to_string()))
            }
            Err(e) => {
                writeln!(out, "{e}")?;
                Ok(ExitCode::from(1))
            }
        };
    }
    if let Some(k_max) = upto {
        let counts = count_words_upto(k_max);
        match format {
            Format::Json => {
                let rows: Vec<_> = counts
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| json!({ "k": k, "count": c.to_string() }))
                    .collect();
                print_json(out, &json!({ "counts": rows }))?;
            }
            Format::Text => {
                for c in counts.iter().skip(1) {
                    writeln!(out, "{c}")?;
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let k = k.expect("clap requires k without --upto/--verify");
    let count = count_words(k);
    match format {
        Format::Json => print_json(out, &json!({ "k": k, "count": count.to_string() }))?,
        Format::Text => writeln!(out, "{count}")?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(format: Format, k: usize, prefix: &RvtWord, out: &mut impl Write) -> Outcome {
    if k == 0 {
        return Err(Failure::Usage("enumerate needs k >= 1".into()));
    }
    let words = enumerate_with_prefix(prefix, k);
    match format {
        Format::Text => {
            for w in words {
                writeln!(out, "{w}")?;
            }
        }
        Format::Json => {
            out.write_all(b"[")?;
            for (i, w) in words.enumerate() {
                if i > 0 {
                    out.write_all(b",")?;
                }
                write!(out, "\n  \"{w}\"")?;
            }
            out.write_all(b"\n]\n")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
