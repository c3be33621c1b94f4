use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use subshift_core::codes::{
    code_from_json, enumerate_automorphisms, order_mod_shift, CertificateFile, OrderModShift, SearchLimits,
    SlidingBlockCode,
};
use subshift_core::harness::{complexity_csv, emit_report, render_json, render_text, ExperimentConfig, Format};
use subshift_core::language::{growth_report, morse_hedlund_classify, Subshift};
use subshift_core::two_dim::{qz_threshold_check, seed_len};
use subshift_core::Error;

#[derive(Parser)]
#[command(name = "subshift", version, about = "Subshift languages, automorphisms and rectangle counts")]
struct Cli {
    /// Experiment config (TOML); the bundled config when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    /// Output directory for files (reports, code files).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
    Text,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
            OutFormat::Text => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the admissible words of length N.
    Words {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: usize,
    },
    /// Block complexity P(1..=n_max).
    Complexity {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Growth report and Morse-Hedlund classification.
    ClassifyGrowth {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Enumerate automorphisms of a given range.
    Automorphisms {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        range: Option<usize>,
        #[arg(long)]
        max_inv_range: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Order of a code modulo the shift.
    OrderModShift {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        max_b: Option<usize>,
        #[arg(long)]
        max_a: Option<i64>,
    },
    /// Rectangle count, its bound, and the n k / 16 threshold verdict.
    RectComplexity {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Full pipeline over every spec of the config.
    Run,
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct CodeArg {
    /// Code or certificate JSON file.
    #[arg(long)]
    code: Option<PathBuf>,
    /// Use sigma^K as the code.
    #[arg(long, allow_hyphen_values = true)]
    shift_power: Option<i64>,
}

/// Exit statuses.
const EXIT_FAILURE: u8 = 2;
const EXIT_CONFIG: u8 = 3;

enum Failure {
    Config(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_)
            | Error::InvalidSpec(_)
            | Error::InvalidAlphabet(_)
            | Error::UnknownSymbol(_)
            | Error::NonPrimitiveSubstitution
            | Error::MalformedCode(_) => Failure::Config(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type CliResult = std::result::Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn load_config(path: Option<&Path>) -> std::result::Result<ExperimentConfig, Failure> {
    match path {
        Some(p) => ExperimentConfig::from_path(p).map_err(|e| Failure::Config(e.to_string())),
        None => Ok(ExperimentConfig::bundled()),
    }
}

fn shift_for(cfg: &ExperimentConfig, name: &str) -> std::result::Result<(Subshift, usize), Failure> {
    let specs = cfg.resolved_specs()?;
    let Some(s) = specs.into_iter().find(|s| s.name == name) else {
        let names: Vec<&String> = cfg.specs.keys().collect();
        return Err(Failure::Config(format!("no spec named {name:?}; known: {names:?}")));
    };
    Ok((Subshift::new(s.spec)?.with_word_cap(cfg.horizons.word_cap), s.aut_range))
}

fn load_code(shift: &Subshift, arg: &CodeArg) -> std::result::Result<SlidingBlockCode, Failure> {
    if let Some(k) = arg.shift_power {
        return Ok(SlidingBlockCode::shift_power(shift, k)?);
    }
    let path = arg.code.as_ref().expect("clap group requires one");
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    Ok(code_from_json(shift, &text)?)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: &Cli) -> CliResult {
    let cfg = load_config(cli.config.as_deref())?;
    let h = &cfg.horizons;
    let format = cli.format.unwrap_or(OutFormat::Text);
    match &cli.command {
        Command::Words { spec, n } => {
            let (shift, _) = shift_for(&cfg, spec)?;
            let words = shift.words(*n)?;
            let a = shift.alphabet();
            let rendered: Vec<String> = words.iter().map(|w| a.render(w)).collect();
            match format {
                OutFormat::Json => println!("{}", json(&rendered)),
                OutFormat::Csv => {
                    println!("word");
                    rendered.iter().for_each(|w| println!("{w}"));
                }
                OutFormat::Text => rendered.iter().for_each(|w| println!("{w}")),
            }
        }
        Command::Complexity { spec, n_max } => {
            let (shift, _) = shift_for(&cfg, spec)?;
            let table = shift.complexity_table(n_max.unwrap_or(h.n_max))?;
            match format {
                OutFormat::Json => println!("{}", json(&table)),
                OutFormat::Csv => print!("{}", complexity_csv(&table)),
                OutFormat::Text => {
                    for (i, p) in table.iter().enumerate() {
                        println!("P({}) = {p}", i + 1);
                    }
                }
            }
        }
        Command::ClassifyGrowth { spec, n_max } => {
            let (shift, _) = shift_for(&cfg, spec)?;
            let table = shift.complexity_table(n_max.unwrap_or(h.n_max))?;
            let mh = morse_hedlund_classify(&table)?;
            let g = growth_report(&table)?;
            match format {
                OutFormat::Json => println!("{}", json(&serde_json::json!({ "morse_hedlund": mh, "growth": g }))),
                OutFormat::Csv => {
                    println!("horizon,class,entropy_estimate,lower_poly,upper_poly,subquadratic_proxy,subquadratic_proxy_at,morse_hedlund");
                    println!(
                        "{},{:?},{},{},{},{},{},{:?}",
                        g.horizon,
                        g.pansiot_class,
                        g.entropy_estimate,
                        g.lower_poly_estimate,
                        g.upper_poly_estimate,
                        g.subquadratic_proxy,
                        g.subquadratic_proxy_at,
                        mh
                    );
                }
                OutFormat::Text => {
                    println!("class: {:?}", g.pansiot_class);
                    println!("entropy estimate: {:.6}", g.entropy_estimate);
                    println!("polynomial exponent: [{:.4}, {:.4}] over n >= {}", g.lower_poly_estimate, g.upper_poly_estimate, g.tail_start);
                    println!("min P(n)/n^2: {:.6} at n = {}", g.subquadratic_proxy, g.subquadratic_proxy_at);
                    println!("Morse-Hedlund: {mh:?}");
                }
            }
        }
        Command::Automorphisms { spec, range, max_inv_range, depth } => {
            let (shift, default_range) = shift_for(&cfg, spec)?;
            let range = range.unwrap_or(default_range);
            let depth = depth.or(h.depth).unwrap_or_else(|| shift.spec().default_depth(range));
            let inv = max_inv_range.unwrap_or(h.max_inv_range);
            let search = enumerate_automorphisms(&shift, range, inv, depth, SearchLimits { max_nodes: h.max_nodes })?;
            let files: Vec<CertificateFile> = search.certificates.iter().map(CertificateFile::from_certificate).collect();
            if let Some(dir) = &cli.out {
                std::fs::create_dir_all(dir).map_err(|e| Failure::Compute(format!("{}: {e}", dir.display())))?;
                for (i, f) in files.iter().enumerate() {
                    let path = dir.join(format!("automorphism_{i}.json"));
                    std::fs::write(&path, json(f) + "\n")
                        .map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?;
                }
            }
            match format {
                OutFormat::Json => println!("{}", json(&serde_json::json!({ "stats": search.stats, "certificates": files }))),
                OutFormat::Csv => {
                    println!("index,range,inverse_range,verification_depth,exact");
                    for (i, f) in files.iter().enumerate() {
                        println!("{i},{},{},{},{}", f.code.range, f.inverse.range, f.verification_depth, f.exact);
                    }
                }
                OutFormat::Text => {
                    println!("{} automorphisms of range {range} (inverse range <= {inv}, depth {depth})", files.len());
                    for (i, f) in files.iter().enumerate() {
                        println!("#{i} inverse range {}: {}", f.inverse.range, serde_json::to_string(&f.code.rule).expect("map"));
                    }
                    let s = &search.stats;
                    println!(
                        "{} windows, {} constraints, {} nodes, {} endomorphisms ({} non-injective, {} non-surjective, {} inverse bound exhausted)",
                        s.windows, s.constraints, s.nodes, s.endomorphisms, s.proved_non_injective, s.proved_non_surjective, s.inverse_bound_exhausted
                    );
                }
            }
        }
        Command::OrderModShift { spec, code, max_b, max_a } => {
            let (shift, _) = shift_for(&cfg, spec)?;
            let code = load_code(&shift, code)?;
            let r = order_mod_shift(&shift, &code, max_b.unwrap_or(h.max_b), max_a.unwrap_or(h.max_a))?;
            match (format, r) {
                (OutFormat::Json, _) => println!("{}", json(&r)),
                (OutFormat::Csv, OrderModShift::Found { b, a }) => println!("found,{b},{a}"),
                (OutFormat::Csv, OrderModShift::BoundExhausted { max_b, max_a }) => println!("bound_exhausted,{max_b},{max_a}"),
                (OutFormat::Text, OrderModShift::Found { b, a }) => {
                    println!("sigma^{a} phi^{b} = id; period vector ({a}, {b})")
                }
                (OutFormat::Text, OrderModShift::BoundExhausted { max_b, max_a }) => {
                    println!("no relation with b <= {max_b}, |a| <= {max_a}")
                }
            }
        }
        Command::RectComplexity { spec, code, n, k } => {
            let (shift, _) = shift_for(&cfg, spec)?;
            let code = load_code(&shift, code)?;
            let q = qz_threshold_check(&shift, &code, *n, *k)?;
            let bound = shift.complexity(seed_len(code.range(), *n, *k))?;
            println!("{},{bound},{:?}", q.count, q.verdict);
        }
        Command::Run => {
            let report = subshift_core::harness::run_experiment(&cfg)?;
            match &cli.out {
                Some(dir) => {
                    let formats: Vec<Format> = match cli.format {
                        Some(f) => vec![f.into()],
                        None => cfg.output.formats.clone(),
                    };
                    for p in emit_report(&report, dir, &formats)? {
                        println!("{}", p.display());
                    }
                }
                None => match format {
                    OutFormat::Json => print!("{}", render_json(&report)?),
                    OutFormat::Text | OutFormat::Csv => print!("{}", render_text(&report)),
                },
            }
            if report.has_failures() {
                return Ok(ExitCode::from(EXIT_FAILURE));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
