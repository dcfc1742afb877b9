use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;
use vachan::grammar::check::round_trip;
use vachan::grammar::GrammarPack;
use vachan::itn::Normalizer;
use vachan::punct::{
    compute_stats, evaluate_labels, prepare_lines, read_jsonl, read_label_sequences, split_dataset,
    write_jsonl, LabeledSentence, PunctConfig, PunctError, SplitSizes,
};

/// Inverse text normalization and punctuation-restoration data tools.
#[derive(Parser)]
#[command(name = "vachan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert spoken-form lines on stdin to written form on stdout.
    Itn(ItnArgs),
    #[command(subcommand)]
    Punct(PunctCommand),
    #[command(subcommand)]
    Grammar(GrammarCommand),
}

#[derive(Subcommand)]
enum PunctCommand {
    /// Build labeled train/valid/test splits from a raw corpus.
    Prepare(PrepareArgs),
    /// Score predicted labels against gold labels.
    Score(ScoreArgs),
}

#[derive(Subcommand)]
enum GrammarCommand {
    /// Round-trip numbers through the spoken-form generator and the grammar.
    Check(CheckArgs),
}

#[derive(Args)]
struct PackArgs {
    /// Language pack to use.
    #[arg(long, default_value = "hi")]
    lang: String,
    /// Directory containing one sub-directory per language; defaults to the built-in packs.
    #[arg(long)]
    pack_dir: Option<PathBuf>,
}

impl PackArgs {
    fn load(&self) -> Result<GrammarPack, Failure> {
        let pack = match &self.pack_dir {
            Some(dir) => GrammarPack::from_dir(&self.lang, &dir.join(&self.lang)),
            None => GrammarPack::builtin(&self.lang),
        };
        pack.map_err(|e| Failure::Input(format!("cannot load pack {:?}: {e}", self.lang)))
    }
}

#[derive(Args)]
struct ItnArgs {
    #[command(flatten)]
    pack: PackArgs,
    /// Print the tagged intermediate form instead of the written form.
    #[arg(long)]
    emit_tags: bool,
    /// Worker threads; output order always follows input order.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct PrepareArgs {
    /// Raw corpus, one sentence per line.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out_dir: PathBuf,
    /// Language whose script and punctuation preset apply.
    #[arg(long, default_value = "hi")]
    lang: String,
    /// Training sentences; defaults to everything not used by valid and test.
    #[arg(long)]
    train: Option<usize>,
    /// Validation sentences; defaults to a tenth of the corpus.
    #[arg(long)]
    valid: Option<usize>,
    /// Test sentences; defaults to a tenth of the corpus.
    #[arg(long)]
    test: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct ScoreArgs {
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    pred: PathBuf,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    pack: PackArgs,
    /// Inclusive range, e.g. `0..9999`.
    #[arg(long, default_value = "0..9999", value_parser = parse_range)]
    range: RangeInclusive<u64>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

enum Failure {
    Check(String),
    Input(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Input(m) | Failure::Mismatch(m) => m,
        }
    }
}

fn io_failure(what: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{}: {e}", what.display()))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Input(e.to_string()))
}

const BATCH: usize = 1024;

fn itn(args: &ItnArgs) -> Result<(), Failure> {
    let normalizer = Normalizer::new(args.pack.load()?)
        .map_err(|e| Failure::Input(format!("cannot compile grammars: {e}")))?;
    let pool = pool(args.jobs)?;
    let convert = |line: &String| {
        if args.emit_tags {
            normalizer.classify(line).unwrap_or_else(|e| {
                log::warn!("classification failed ({e}); passing line through");
                line.clone()
            })
        } else {
            normalizer.inverse_normalize(line)
        }
    };
    let stdin = io::stdin().lock();
    let mut out = BufWriter::new(io::stdout().lock());
    let mut lines = stdin.lines();
    loop {
        let batch: Vec<String> = lines
            .by_ref()
            .take(BATCH)
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        if batch.is_empty() {
            break;
        }
        let converted: Vec<String> = if args.jobs > 1 {
            pool.install(|| batch.par_iter().map(convert).collect())
        } else {
            batch.iter().map(convert).collect()
        };
        for line in converted {
            writeln!(out, "{line}").map_err(|e| Failure::Input(format!("stdout: {e}")))?;
        }
    }
    out.flush()
        .map_err(|e| Failure::Input(format!("stdout: {e}")))
}

fn write_split(path: &Path, sentences: &[LabeledSentence]) -> Result<(), Failure> {
    let file = File::create(path).map_err(|e| io_failure(path, e))?;
    let mut w = BufWriter::new(file);
    write_jsonl(&mut w, sentences).map_err(|e| io_failure(path, e))?;
    w.flush().map_err(|e| io_failure(path, e))
}

fn prepare(args: &PrepareArgs) -> Result<(), Failure> {
    let cfg = PunctConfig::for_language(&args.lang).map_err(|e| Failure::Input(e.to_string()))?;
    let text = fs::read_to_string(&args.input).map_err(|e| io_failure(&args.input, e))?;
    let lines: Vec<&str> = text.lines().collect();
    let chunks: Vec<_> = pool(args.jobs)?.install(|| {
        lines
            .par_chunks(BATCH)
            .map(|chunk| prepare_lines(chunk, &cfg))
            .collect()
    });
    let mut prepared = vachan::punct::Prepared::default();
    for c in chunks {
        prepared.sentences.extend(c.sentences);
        prepared.lines_read += c.lines_read;
        prepared.lines_selected += c.lines_selected;
        prepared.rejected += c.rejected;
    }
    let n = prepared.sentences.len();
    let valid = args.valid.unwrap_or(n / 10);
    let test = args.test.unwrap_or(n / 10);
    let train = args.train.unwrap_or_else(|| n.saturating_sub(valid + test));
    let split = split_dataset(
        &prepared.sentences,
        SplitSizes { train, valid, test },
        args.seed,
    )
    .map_err(|e| Failure::Input(e.to_string()))?;

    fs::create_dir_all(&args.out_dir).map_err(|e| io_failure(&args.out_dir, e))?;
    for (name, part) in [
        ("train", &split.train),
        ("valid", &split.valid),
        ("test", &split.test),
    ] {
        write_split(&args.out_dir.join(format!("{name}.jsonl")), part)?;
    }
    let stats = |part: &[LabeledSentence]| compute_stats(part).ok();
    let report = json!({
        "lines_read": prepared.lines_read,
        "lines_selected": prepared.lines_selected,
        "rejected": prepared.rejected,
        "sentences": n,
        "seed": args.seed,
        "all": stats(&prepared.sentences),
        "train": stats(&split.train),
        "valid": stats(&split.valid),
        "test": stats(&split.test),
    });
    let path = args.out_dir.join("stats.json");
    let body = serde_json::to_string_pretty(&report).map_err(|e| io_failure(&path, e))?;
    fs::write(&path, body + "\n").map_err(|e| io_failure(&path, e))?;
    log::info!(
        "{} lines read, {} selected, {} rejected; wrote {}/{}/{} sentences",
        prepared.lines_read,
        prepared.lines_selected,
        prepared.rejected,
        split.train.len(),
        split.valid.len(),
        split.test.len()
    );
    Ok(())
}

fn score(args: &ScoreArgs) -> Result<(), Failure> {
    let open = |p: &Path| {
        File::open(p)
            .map(BufReader::new)
            .map_err(|e| io_failure(p, e))
    };
    let gold = read_jsonl(open(&args.gold)?).map_err(|e| io_failure(&args.gold, e))?;
    let pred = read_label_sequences(open(&args.pred)?).map_err(|e| io_failure(&args.pred, e))?;
    let gold: Vec<_> = gold.into_iter().map(|s| s.labels).collect();
    let report = evaluate_labels(&gold, &pred).map_err(|e| match e {
        PunctError::LengthMismatch(i) => Failure::Mismatch(format!(
            "gold and predictions disagree at sentence {i} ({} gold, {} predicted sentences)",
            gold.len(),
            pred.len()
        )),
        other => Failure::Input(other.to_string()),
    })?;
    if args.json {
        let body =
            serde_json::to_string_pretty(&report).map_err(|e| Failure::Input(e.to_string()))?;
        println!("{body}");
    } else {
        print!("{}", report.to_table());
    }
    Ok(())
}

fn check(args: &CheckArgs) -> Result<(), Failure> {
    let normalizer = Normalizer::new(args.pack.load()?)
        .map_err(|e| Failure::Input(format!("cannot compile grammars: {e}")))?;
    let report = round_trip(&normalizer, args.range.clone());
    match report.failure {
        None => {
            println!("{} numbers round-tripped", report.checked);
            Ok(())
        }
        Some(f) => Err(Failure::Check(format!(
            "round trip failed at {}: spoken {:?}, expected {:?}, got {:?}",
            f.n,
            f.spoken.as_deref().unwrap_or("<not expressible>"),
            f.expected,
            f.got
        ))),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Itn(a) => itn(a),
        Command::Punct(PunctCommand::Prepare(a)) => prepare(a),
        Command::Punct(PunctCommand::Score(a)) => score(a),
        Command::Grammar(GrammarCommand::Check(a)) => check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("vachan: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
