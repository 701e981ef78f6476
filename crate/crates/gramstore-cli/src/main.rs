//! Benchmark CLI for the gramstore storage structures.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gramstore::{
    bag_of_words, emit_report, estimate_dimensional_map_bytes, estimate_hash_list_bytes,
    extract_ngrams, format_report, generate_synthetic_corpus_with_lengths, gram_space,
    ingest_corpus, normalize_segments, normalize_strict, parse_report, render_grids,
    run_benchmark_grid, run_crossval, write_corpus, Algorithm, Backend, CorpusFormat, Error,
    GridOptions, LabeledDocument, TrainOptions,
};

#[derive(Parser)]
#[command(
    name = "gramstore",
    version,
    about = "Compare n-gram storage structures and run sentiment benchmarks over them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Gram length
    #[arg(long, global = true, default_value_t = 5)]
    n: usize,

    /// Store backend (linear | bucket | dimensional)
    #[arg(long, global = true, default_value = "dimensional")]
    backend: Backend,

    /// Bucket count for the bucket backend; defaults to 26^n
    #[arg(long, global = true)]
    buckets: Option<usize>,

    /// Cross-validation fold count
    #[arg(long, global = true, default_value_t = 10)]
    folds: usize,

    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Decision threshold for the threshold classifier
    #[arg(long, global = true, default_value_t = 0.0)]
    threshold: f64,

    /// Additive smoothing constant
    #[arg(long, global = true, default_value_t = 1.0)]
    alpha: f64,

    /// Corpus file format (jsonl | csv); default: inferred from the extension
    #[arg(long, global = true)]
    format: Option<CorpusFormat>,

    /// Allow dimensional maps with n >= 7 (tens of gigabytes of cells)
    #[arg(long, global = true)]
    allow_large_n: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Slide a window over text and print the grams, one per line
    Extract {
        /// Text to process; read from stdin when absent
        text: Option<String>,
        /// Read the text from a file instead
        #[arg(long, conflicts_with = "text")]
        input: Option<PathBuf>,
        /// Cleanse to the 26-letter alphabet before extraction
        #[arg(long)]
        normalize: bool,
        /// Cleanse and split at deleted characters, so grams never span a
        /// word boundary
        #[arg(long, conflicts_with = "normalize")]
        segmented: bool,
        /// Print the bag of words of the raw text instead of grams
        #[arg(long, conflicts_with_all = ["normalize", "segmented"])]
        bag: bool,
    },

    /// Evaluate the closed-form size estimators
    EstimateSize {
        /// Which layout to estimate
        #[arg(long)]
        model: SizeModelArg,
        /// Unique gram count (hash-list model)
        #[arg(long)]
        unique: Option<u64>,
        /// Empty bucket count (hash-list model)
        #[arg(long)]
        empty: Option<u64>,
    },

    /// Generate a balanced synthetic corpus
    GenCorpus {
        /// Number of documents
        #[arg(long)]
        size: usize,
        /// Class signal strength in [0, 1]: 1 = disjoint alphabets
        #[arg(long, default_value_t = 0.9)]
        separability: f64,
        /// Output file; the extension or --format picks the encoding
        #[arg(long)]
        out: PathBuf,
        /// Minimum document length in characters
        #[arg(long, default_value_t = 20)]
        min_len: usize,
        /// Maximum document length in characters
        #[arg(long, default_value_t = 40)]
        max_len: usize,
    },

    /// Cross-validate one classifier on one backend
    Crossval {
        /// Corpus file to evaluate
        #[arg(long)]
        corpus: PathBuf,
        /// Classifier (threshold | naive_bayes)
        #[arg(long, default_value = "threshold")]
        algorithm: Algorithm,
    },

    /// Run the full backend x algorithm grid and emit a report table
    Bench {
        /// Corpus file to benchmark on
        #[arg(long, conflicts_with = "synthetic_size")]
        corpus: Option<PathBuf>,
        /// Generate a synthetic corpus of this many documents instead
        #[arg(long)]
        synthetic_size: Option<usize>,
        /// Separability of the synthetic corpus
        #[arg(long, default_value_t = 0.9)]
        separability: f64,
        /// Minimum synthetic document length
        #[arg(long, default_value_t = 20)]
        min_len: usize,
        /// Maximum synthetic document length
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        /// Backends to include
        #[arg(long, value_delimiter = ',', default_value = "linear,bucket,dimensional")]
        backends: Vec<Backend>,
        /// Algorithms to include
        #[arg(long, value_delimiter = ',', default_value = "threshold,naive_bayes")]
        algorithms: Vec<Algorithm>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Re-render a report file as aligned grids, algorithms x backends
    Report {
        /// Report file produced by `bench`
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SizeModelArg {
    HashList,
    Dimensional,
}

enum CliError {
    /// Bad invocation: flags that cannot be combined, missing parameters.
    Usage(String),
    /// Anything the library rejected.
    Lib(Error),
    /// The grid finished but some cells failed; the report was still emitted.
    FailedCells(usize),
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        CliError::Lib(error)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Lib(error) => write!(f, "{error}"),
            CliError::FailedCells(count) => write!(f, "{count} benchmark cells failed"),
        }
    }
}

impl CliError {
    /// 1 for bad invocations, 2 for bad data, 3 for everything unexpected.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::FailedCells(_) => 2,
            CliError::Lib(error) => match error {
                Error::ZeroGramLength
                | Error::ZeroWindow
                | Error::BadFoldCount(_)
                | Error::ZeroBuckets
                | Error::EmptyBucketsExceedBuckets { .. }
                | Error::GramSpaceGuard(_)
                | Error::InvalidAlpha(_) => 1,
                Error::Io { .. }
                | Error::UnknownCorpusFormat(_)
                | Error::MalformedCorpus { .. }
                | Error::MalformedReport { .. }
                | Error::DegenerateCorpus { .. }
                | Error::DegenerateFold { .. }
                | Error::CorpusTooSmall { .. } => 2,
                _ => 3,
            },
        }
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes, like any other filter
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            // --help and --version are not failures
            let code = if error.use_stderr() { 1 } else { 0 };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = &cli.common;
    match cli.command {
        Command::Extract {
            text,
            input,
            normalize,
            segmented,
            bag,
        } => {
            let text = read_text(text, input.as_deref())?;
            if bag {
                for (word, count) in bag_of_words(&text).counts() {
                    println!("{word}\t{count}");
                }
            } else if segmented {
                for segment in normalize_segments(&text) {
                    for gram in extract_ngrams(&segment, common.n)? {
                        println!("{gram}");
                    }
                }
            } else {
                let text = if normalize {
                    normalize_strict(&text)
                } else {
                    text
                };
                for gram in extract_ngrams(&text, common.n)? {
                    println!("{gram}");
                }
            }
        }

        Command::EstimateSize {
            model,
            unique,
            empty,
        } => {
            let estimate = match model {
                SizeModelArg::HashList => {
                    let (unique, empty) = match (unique, empty) {
                        (Some(u), Some(e)) => (u, e),
                        _ => {
                            return Err(CliError::Usage(
                                "the hash-list model needs --unique and --empty (plus --buckets, \
                                 which defaults to 26^n)"
                                    .into(),
                            ))
                        }
                    };
                    let buckets = match common.buckets {
                        Some(b) => b as u64,
                        None => gram_space(common.n)?,
                    };
                    println!(
                        "model=hash_list n={} unique={unique} buckets={buckets} empty={empty}",
                        common.n
                    );
                    estimate_hash_list_bytes(common.n, unique, buckets, empty)?
                }
                SizeModelArg::Dimensional => {
                    println!("model=dimensional_map n={}", common.n);
                    estimate_dimensional_map_bytes(common.n)?
                }
            };
            println!("bytes={}", estimate.bytes);
            println!("megabytes={:.6}", estimate.megabytes());
        }

        Command::GenCorpus {
            size,
            separability,
            out,
            min_len,
            max_len,
        } => {
            validate_gen(size, separability, min_len, max_len)?;
            let corpus = generate_synthetic_corpus_with_lengths(
                size,
                separability,
                common.seed,
                min_len,
                max_len,
            );
            let format = match common.format {
                Some(f) => f,
                None => CorpusFormat::from_path(&out)?,
            };
            write_corpus(&corpus, &out, format)?;
            eprintln!("wrote {} documents to {}", corpus.len(), out.display());
        }

        Command::Crossval { corpus, algorithm } => {
            let documents = load_corpus(&corpus, common)?;
            let train_options = TrainOptions {
                n: common.n,
                backend: common.backend,
                buckets: common.buckets,
                alpha: common.alpha,
                allow_large_n: common.allow_large_n,
            };
            let result = run_crossval(
                &documents,
                common.folds,
                common.seed,
                &train_options,
                algorithm,
                common.threshold,
            )?;
            println!(
                "backend={} algorithm={algorithm} n={} folds={} seed={}",
                common.backend, common.n, common.folds, common.seed
            );
            println!("accuracy={:.6}", result.accuracy);
            println!("kappa={:.6}", result.kappa);
            println!("train_seconds={:.6}", result.train_seconds);
            println!("eval_seconds={:.6}", result.eval_seconds);
            println!("total_seconds={:.6}", result.total_seconds());
        }

        Command::Bench {
            corpus,
            synthetic_size,
            separability,
            min_len,
            max_len,
            backends,
            algorithms,
            out,
        } => {
            let documents = match (corpus, synthetic_size) {
                (Some(path), None) => load_corpus(&path, common)?,
                (None, Some(size)) => {
                    validate_gen(size, separability, min_len, max_len)?;
                    generate_synthetic_corpus_with_lengths(
                        size,
                        separability,
                        common.seed,
                        min_len,
                        max_len,
                    )
                }
                _ => {
                    return Err(CliError::Usage(
                        "pass exactly one of --corpus or --synthetic-size".into(),
                    ))
                }
            };
            if backends.is_empty() || algorithms.is_empty() {
                return Err(CliError::Usage(
                    "--backends and --algorithms must not be empty".into(),
                ));
            }
            let options = GridOptions {
                n: common.n,
                folds: common.folds,
                seed: common.seed,
                threshold: common.threshold,
                alpha: common.alpha,
                buckets: common.buckets,
                allow_large_n: common.allow_large_n,
            };
            let report = run_benchmark_grid(&documents, &backends, &algorithms, &options);
            for failure in &report.failures {
                eprintln!(
                    "cell failed: backend={} algorithm={}: {}",
                    failure.backend, failure.algorithm, failure.message
                );
            }
            match out {
                Some(path) => {
                    emit_report(&report, &path)?;
                    eprintln!("wrote {} rows to {}", report.rows.len(), path.display());
                }
                None => print!("{}", format_report(&report)),
            }
            if !report.failures.is_empty() {
                return Err(CliError::FailedCells(report.failures.len()));
            }
        }

        Command::Report { input } => {
            let rows = parse_report(&input)?;
            print!("{}", render_grids(&rows));
        }
    }
    Ok(())
}

fn read_text(text: Option<String>, input: Option<&Path>) -> Result<String, CliError> {
    match (text, input) {
        (Some(text), _) => Ok(text),
        (None, Some(path)) => fs::read_to_string(path).map_err(|source| {
            CliError::Lib(Error::Io {
                path: path.to_path_buf(),
                source,
            })
        }),
        (None, None) => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|source| {
                    CliError::Lib(Error::Io {
                        path: PathBuf::from("<stdin>"),
                        source,
                    })
                })?;
            Ok(buffer)
        }
    }
}

fn validate_gen(
    size: usize,
    separability: f64,
    min_len: usize,
    max_len: usize,
) -> Result<(), CliError> {
    // surface generator precondition violations as usage errors, not panics
    if size < 2 || !(0.0..=1.0).contains(&separability) || min_len < 1 || min_len > max_len {
        return Err(CliError::Usage(format!(
            "bad generator parameters: size={size} (need >= 2), separability={separability} \
             (need [0, 1]), lengths {min_len}..={max_len}"
        )));
    }
    Ok(())
}

fn load_corpus(path: &Path, common: &CommonArgs) -> Result<Vec<LabeledDocument>, CliError> {
    let (documents, summary) = ingest_corpus(path, common.format)?;
    eprintln!(
        "corpus {}: {} documents accepted, {} rejected",
        path.display(),
        summary.accepted,
        summary.rejected
    );
    Ok(documents)
}
