use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qsing_core::classify::SingularityClass;
use qsing_core::format::{emit, emit_raw, parse_setting, parse_settings};
use qsing_core::reduction::format_trace;
use qsing_core::{
    enumerate_reduced_singularities, equivalent, fingerprint, is_smooth, local_quiver,
    quotient_dimension, reduce, reduce_with_order, representation_types, ClassificationTable,
    Error, MarkedQuiverSetting, RepresentationType,
};

#[derive(Parser)]
#[command(name = "qsing", version, about = "Reduce, classify and fingerprint marked quiver settings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quotient dimension of every setting in the file
    Dim { file: PathBuf },
    /// Normal form and number of split-off indeterminates
    Reduce {
        file: PathBuf,
        #[arg(long)]
        trace: bool,
        /// Pick moves at random with this seed instead of the fixed strategy
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Whether the quotient is smooth
    Smooth { file: PathBuf },
    /// Table of reduced singularities of the given dimension
    Classify {
        #[arg(long)]
        dim: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Stratum fingerprint of a reduced singularity
    Fingerprint {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
        /// List the representation types behind every node
        #[arg(long)]
        types: bool,
    },
    /// Compare two reduced singularities
    Equiv { file1: PathBuf, file2: PathBuf },
    /// Representation types of the dimension vector
    Types { file: PathBuf },
    /// Local quiver of a representation type
    Local {
        file: PathBuf,
        #[arg(long = "type")]
        tau: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Input(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<MarkedQuiverSetting, Failure> {
    parse_setting(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Table covering every dimension below `d`.
fn table_below(d: u64) -> ClassificationTable {
    if d > 7 {
        eprintln!("warning: building classification tables up to dimension {}", d - 1);
    }
    ClassificationTable::build(d.saturating_sub(1))
}

#[derive(Serialize)]
struct JsonClass<'a> {
    id: &'a str,
    aliases: &'a [String],
    setting: &'a MarkedQuiverSetting,
    isolated: &'a Option<Vec<u32>>,
    members: &'a [MarkedQuiverSetting],
}

#[derive(Serialize)]
struct JsonTable<'a> {
    dim: u64,
    classes: Vec<JsonClass<'a>>,
}

fn classify_text(d: u64, classes: &[SingularityClass]) -> String {
    let mut out = String::new();
    writeln!(out, "# dimension {d}: {} classes", classes.len()).unwrap();
    for c in classes {
        out.push('\n');
        let aliases = if c.aliases.is_empty() {
            String::new()
        } else {
            format!(" ({})", c.aliases.join(", "))
        };
        writeln!(out, "# class {}{aliases}", c.id).unwrap();
        if let Some(t) = &c.isolated {
            let t: Vec<String> = t.iter().map(u32::to_string).collect();
            writeln!(out, "# isolated {}", t.join(" ")).unwrap();
        }
        let n = c.members.len();
        for (i, m) in c.members.iter().enumerate() {
            writeln!(out, "# {} member {} of {n}", c.id, i + 1).unwrap();
            out.push_str(&emit(m));
        }
    }
    out
}

fn run(cli: Cli) -> Outcome {
    let mut out = String::new();
    match cli.command {
        Command::Dim { file } => {
            let text = read(&file)?;
            for s in parse_settings(&text)? {
                writeln!(out, "{}", quotient_dimension(&s)).unwrap();
            }
        }
        Command::Reduce { file, trace, seed } => {
            let s = load(&file)?;
            let r = match seed {
                Some(seed) => reduce_with_order(&s, seed),
                None => reduce(&s),
            };
            out.push_str(&emit_raw(&r.reduced));
            writeln!(out, "z={}", r.z).unwrap();
            if trace {
                out.push_str(&format_trace(&r.trace));
            }
        }
        Command::Smooth { file } => {
            let s = load(&file)?;
            out.push_str(if is_smooth(&s) { "smooth\n" } else { "singular\n" });
        }
        Command::Classify { dim, format } => {
            if dim > 6 {
                eprintln!("warning: dimension {dim} is beyond the verified range and may take long");
            }
            let classes = enumerate_reduced_singularities(dim);
            match format {
                Format::Text => out.push_str(&classify_text(dim, &classes)),
                Format::Json => {
                    let table = JsonTable {
                        dim,
                        classes: classes
                            .iter()
                            .map(|c| JsonClass {
                                id: &c.id,
                                aliases: &c.aliases,
                                setting: &c.setting,
                                isolated: &c.isolated,
                                members: &c.members,
                            })
                            .collect(),
                    };
                    out.push_str(&serde_json::to_string_pretty(&table).expect("serialisable"));
                    out.push('\n');
                }
            }
        }
        Command::Fingerprint { file, dot, types } => {
            let s = load(&file)?;
            let table = table_below(quotient_dimension(&s));
            let f = fingerprint(&s, &table)?;
            out.push_str(&if dot { f.to_dot() } else { f.to_text() });
            if types {
                for (i, n) in f.nodes.iter().enumerate() {
                    for t in &n.types {
                        writeln!(out, "#{} {t}", i + 1).unwrap();
                    }
                }
            }
        }
        Command::Equiv { file1, file2 } => {
            let (a, b) = (load(&file1)?, load(&file2)?);
            let d = quotient_dimension(&a).max(quotient_dimension(&b));
            let verdict = equivalent(&a, &b, &table_below(d))?;
            writeln!(out, "{verdict}").unwrap();
        }
        Command::Types { file } => {
            let s = load(&file)?;
            for t in representation_types(&s) {
                writeln!(out, "{t}").unwrap();
            }
        }
        Command::Local { file, tau } => {
            let s = load(&file)?;
            let tau = RepresentationType::parse(&tau, s.vertex_count())?;
            let r = local_quiver(&s, &tau)?;
            out.push_str(&emit_raw(&r.setting));
            writeln!(out, "stratum_dim={}", r.stratum_dim).unwrap();
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("QSING_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
