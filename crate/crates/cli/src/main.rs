//! `ar2mt`: batch transliteration of Arabic text and corpora into Maltese
//! orthography.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use ar2mt::chartx::{CharTx, RuleTable};
use ar2mt::corpus::{self, NerSentence, SourceSchema, SplitSpec};
use ar2mt::fertility::{self, SubwordVocab, UnknownCounting};
use ar2mt::morphtx::{self, AnalysisSet, MorphRuleSet, MorphTx, OrthographyConfig};
use ar2mt::pipeline::{LineOutput, Scheme, Transliterator};
use ar2mt::{parallel, script};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "ar2mt",
    about = "Arabic to Maltese transliteration",
    disable_version_flag = true
)]
struct Cli {
    /// Print the version and the rule-table checksums.
    #[arg(short = 'V', long, global = true)]
    version: bool,

    /// Character mapping table (TSV).
    #[arg(long, global = true, env = "AR2MT_RULES")]
    rules: Option<PathBuf>,

    /// Morpheme rule table (TSV).
    #[arg(long, global = true, env = "AR2MT_MORPH_RULES")]
    morph_rules: Option<PathBuf>,

    /// Write diagnostics (JSON lines) here instead of stderr.
    #[arg(long, global = true)]
    diagnostics: Option<PathBuf>,

    /// Keep `bi il-` apart instead of contracting it to `bil-`.
    #[arg(long, global = true)]
    no_bi_contraction: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unicode-normalize Arabic text line by line.
    Normalize(Io),
    /// Transliterate sentence-per-line text.
    Translit(TranslitArgs),
    /// Prepare a labeled corpus.
    Corpus(CorpusArgs),
    /// Report subword fertility.
    Fertility(FertilityArgs),
}

#[derive(Args, Debug)]
struct Io {
    /// Input file (default stdin).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TranslitArgs {
    #[arg(long, default_value = "chartx", value_parser = parse_scheme)]
    scheme: Scheme,
    /// Morphological analyses (JSON lines), one record per input line.
    #[arg(long)]
    analyses: Option<PathBuf>,
    #[command(flatten)]
    io: Io,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Task {
    Ner,
    Sa,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    #[arg(long, value_enum)]
    task: Task,
    /// Transliteration scheme; without it the text is left in Arabic.
    #[arg(long, value_parser = parse_scheme)]
    scheme: Option<Scheme>,
    /// Tagset of an NER input.
    #[arg(long, default_value = "anercorp", value_parser = |s: &str| s.parse::<SourceSchema>())]
    schema: SourceSchema,
    #[arg(long)]
    analyses: Option<PathBuf>,
    /// Draw TRAIN,VALID records; `--out` is then a directory.
    #[arg(long, value_parser = parse_split)]
    downsample: Option<(usize, usize)>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    io: Io,
}

#[derive(Args, Debug)]
struct FertilityArgs {
    /// Vocabulary, one entry per line.
    #[arg(long)]
    vocab: PathBuf,
    #[arg(long, default_value = fertility::DEFAULT_MARKER)]
    marker: String,
    #[arg(long, default_value = fertility::DEFAULT_UNKNOWN)]
    unk: String,
    /// Treat the input as Arabic and report every scheme.
    #[arg(long)]
    per_scheme: bool,
    /// Analyses used for the morphtx row.
    #[arg(long)]
    analyses: Option<PathBuf>,
    /// Count an unknown token as one piece per character.
    #[arg(long)]
    count_chars_for_unknown: bool,
    #[command(flatten)]
    io: Io,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse()
}

fn parse_split(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected TRAIN,VALID")?;
    let n = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((n(a)?, n(b)?))
}

/// Where per-record diagnostics go.
struct Diagnostics {
    sink: Box<dyn Write>,
}

impl Diagnostics {
    fn open(path: Option<&Path>) -> anyhow::Result<Self> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(io::BufWriter::new(
                fs::File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
            )),
            None => Box::new(io::stderr()),
        };
        Ok(Diagnostics { sink })
    }

    fn emit(&mut self, value: serde_json::Value) {
        let _ = writeln!(self.sink, "{value}");
    }

    fn line(&mut self, line: usize, out: &LineOutput) {
        let d = &out.diagnostics;
        if !d.unmapped.is_empty() {
            let chars: Vec<String> = d
                .unmapped
                .iter()
                .map(|c| format!("U+{:04X}", *c as u32))
                .collect();
            self.emit(json!({"kind": "unmapped", "line": line, "chars": chars}));
        }
        if d.missing_analyses > 0 {
            self.emit(
                json!({"kind": "missing_analyses", "line": line, "tokens": d.missing_analyses}),
            );
        }
        if let Some(reason) = &d.fallback {
            self.emit(json!({"kind": "fallback", "line": line, "reason": reason}));
        }
    }
}

fn read_input(path: Option<&Path>) -> anyhow::Result<String> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .context("cannot read stdin")?;
        }
    }
    if let Some(rest) = text.strip_prefix('\u{FEFF}') {
        text = rest.to_string();
    }
    Ok(text)
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn input_lines(text: &str) -> Vec<&str> {
    text.lines().collect()
}

fn join_lines<I: IntoIterator<Item = String>>(lines: I) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

fn load_rules(cli: &Cli) -> anyhow::Result<(RuleTable, MorphRuleSet)> {
    let table = match &cli.rules {
        Some(p) => {
            let text =
                fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            RuleTable::parse(&text).with_context(|| format!("in {}", p.display()))?
        }
        None => RuleTable::builtin(),
    };
    let morph = match &cli.morph_rules {
        Some(p) => {
            let text =
                fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            MorphRuleSet::parse(&text).with_context(|| format!("in {}", p.display()))?
        }
        None => MorphRuleSet::builtin(),
    };
    Ok((table, morph))
}

fn load_analyses(
    path: Option<&Path>,
    diag: &mut Diagnostics,
) -> anyhow::Result<Option<AnalysisSet>> {
    let Some(p) = path else { return Ok(None) };
    let file = fs::File::open(p).with_context(|| format!("cannot read {}", p.display()))?;
    let set = morphtx::load_analyses(io::BufReader::new(file))
        .with_context(|| format!("in {}", p.display()))?;
    for e in &set.errors {
        diag.emit(json!({
            "kind": "analysis_record",
            "file_line": e.line,
            "sentence_id": e.sentence_id,
            "message": e.message,
        }));
    }
    Ok(Some(set))
}

fn run_translit(
    args: &TranslitArgs,
    tx: &Transliterator,
    diag: &mut Diagnostics,
) -> anyhow::Result<()> {
    let analyses = load_analyses(args.analyses.as_deref(), diag)?;
    let text = read_input(args.io.input.as_deref())?;
    let lines = input_lines(&text);
    let outputs = tx.lines(&lines, args.scheme, analyses.as_ref());
    for (i, out) in outputs.iter().enumerate() {
        diag.line(i + 1, out);
    }
    write_output(
        args.io.out.as_deref(),
        &join_lines(outputs.into_iter().map(|o| o.text)),
    )
}

fn run_normalize(args: &Io) -> anyhow::Result<()> {
    let text = read_input(args.input.as_deref())?;
    let lines = input_lines(&text);
    let out = parallel::map_ordered(&lines, |l| script::normalize(l));
    write_output(args.out.as_deref(), &join_lines(out))
}

fn split_out(out: Option<&Path>) -> anyhow::Result<&Path> {
    let dir = out.context("--downsample needs --out DIR")?;
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    Ok(dir)
}

fn run_corpus(
    args: &CorpusArgs,
    tx: &Transliterator,
    diag: &mut Diagnostics,
) -> anyhow::Result<()> {
    let analyses = load_analyses(args.analyses.as_deref(), diag)?;
    let path = args
        .io
        .input
        .as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "<stdin>".into());
    let text = read_input(args.io.input.as_deref())?;
    let spec = args.downsample.map(|(train_size, valid_size)| SplitSpec {
        train_size,
        valid_size,
        seed: args.seed,
    });

    match args.task {
        Task::Ner => {
            let source = corpus::read_conll(text.as_bytes(), &path)?;
            let mut kept: Vec<(usize, NerSentence)> = Vec::with_capacity(source.len());
            for (i, s) in source.iter().enumerate() {
                match corpus::normalize_ner_tags(s, args.schema) {
                    Ok(n) => kept.push((i, n)),
                    Err(message) => {
                        diag.emit(json!({"kind": "sentence", "sentence": i, "message": message}))
                    }
                }
            }
            let sentences: Vec<NerSentence> = match args.scheme {
                None => kept.into_iter().map(|(_, s)| s).collect(),
                Some(scheme) => parallel::map_ordered(&kept, |(i, s)| {
                    let record = analyses.as_ref().and_then(|a| a.get(*i as u64));
                    corpus::transliterate_ner(s, tx, scheme, record)
                }),
            };
            match spec {
                None => write_output(args.io.out.as_deref(), &corpus::write_conll(&sentences)),
                Some(spec) => {
                    let (train, valid) = corpus::downsample(&sentences, spec)?;
                    let dir = split_out(args.io.out.as_deref())?;
                    fs::write(dir.join("train.conll"), corpus::write_conll(&train))?;
                    fs::write(dir.join("valid.conll"), corpus::write_conll(&valid))?;
                    Ok(())
                }
            }
        }
        Task::Sa => {
            let raw = corpus::read_sentiment(text.as_bytes(), &path)?;
            let (records, errors) = corpus::filter_sentiment(&raw);
            for e in &errors {
                diag.emit(json!({"kind": "record", "line": e.record, "message": e.message}));
            }
            diag.emit(json!({
                "kind": "sentiment_filter",
                "read": raw.len(),
                "kept": records.len(),
                "dropped_neutral": raw.len() - records.len() - errors.len(),
                "invalid": errors.len(),
            }));
            let records = match args.scheme {
                None => records,
                Some(scheme) => {
                    corpus::transliterate_sentiment(&records, tx, scheme, analyses.as_ref())
                }
            };
            match spec {
                None => write_output(args.io.out.as_deref(), &corpus::write_sentiment(&records)),
                Some(spec) => {
                    let (train, valid) = corpus::downsample(&records, spec)?;
                    let dir = split_out(args.io.out.as_deref())?;
                    fs::write(dir.join("train.tsv"), corpus::write_sentiment(&train))?;
                    fs::write(dir.join("valid.tsv"), corpus::write_sentiment(&valid))?;
                    Ok(())
                }
            }
        }
    }
}

fn run_fertility(
    args: &FertilityArgs,
    tx: &Transliterator,
    diag: &mut Diagnostics,
) -> anyhow::Result<()> {
    let file = fs::File::open(&args.vocab)
        .with_context(|| format!("cannot read {}", args.vocab.display()))?;
    let vocab = SubwordVocab::from_reader(io::BufReader::new(file), &args.marker, &args.unk)?;
    let counting = if args.count_chars_for_unknown {
        UnknownCounting::Characters
    } else {
        UnknownCounting::OnePiece
    };
    let text = read_input(args.io.input.as_deref())?;
    let lines = input_lines(&text);

    let mut variants: Vec<(String, String)> = Vec::new();
    if args.per_scheme {
        let analyses = load_analyses(args.analyses.as_deref(), diag)?;
        let original: Vec<String> = lines.iter().map(|l| script::normalize(l)).collect();
        variants.push(("original".into(), original.join("\n")));
        for scheme in Scheme::ALL {
            let out = tx.lines(&lines, scheme, analyses.as_ref());
            variants.push((
                scheme.name().into(),
                join_lines(out.into_iter().map(|o| o.text)),
            ));
        }
    } else {
        if args.analyses.is_some() {
            bail!("--analyses only applies with --per-scheme");
        }
        variants.push(("input".into(), text.clone()));
    }

    let mut report = String::from(fertility::REPORT_HEADER);
    report.push('\n');
    for (label, body) in &variants {
        let tokens = fertility::whitespace_tokens(body);
        let r = fertility::fertility(&tokens, &vocab, counting)?;
        report.push_str(&fertility::report_row(label, &r));
        report.push('\n');
    }
    write_output(args.io.out.as_deref(), &report)
}

fn print_version(table: &RuleTable, morph: &MorphRuleSet) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "ar2mt {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(
        out,
        "chartx rules v{} sha256:{}",
        table.version(),
        table.checksum()
    )?;
    writeln!(out, "morpheme rules sha256:{}", morph.checksum())?;
    writeln!(
        out,
        "fingerprint {}",
        ar2mt::rules_fingerprint(table, morph)
    )?;
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let (table, morph) = load_rules(cli)?;
    if cli.version {
        return print_version(&table, &morph);
    }
    let Some(command) = &cli.command else {
        bail!("no subcommand given; see --help");
    };
    let orthography = OrthographyConfig {
        bi_contraction: !cli.no_bi_contraction,
        ..OrthographyConfig::default()
    };
    let tx = Transliterator::new(MorphTx::new(CharTx::new(table), morph, orthography));
    let mut diag = Diagnostics::open(cli.diagnostics.as_deref())?;
    match command {
        Command::Normalize(io) => run_normalize(io),
        Command::Translit(args) => run_translit(args, &tx, &mut diag),
        Command::Corpus(args) => run_corpus(args, &tx, &mut diag),
        Command::Fertility(args) => run_fertility(args, &tx, &mut diag),
    }
}

fn error_kind(err: &anyhow::Error) -> &'static str {
    if let Some(e) = err.downcast_ref::<ar2mt::Error>() {
        return match e {
            ar2mt::Error::RuleTable { .. } | ar2mt::Error::MorphRule { .. } => "rules",
            ar2mt::Error::SidecarHeader(_) => "analyses_header",
            ar2mt::Error::Vocab(_) => "vocab",
            ar2mt::Error::EmptyCorpus => "empty_corpus",
            ar2mt::Error::InfeasibleSplit { .. } => "infeasible_split",
            ar2mt::Error::Format { .. } => "format",
            ar2mt::Error::Io(_) => "io",
        };
    }
    if err.chain().any(|c| c.is::<io::Error>()) {
        "io"
    } else {
        "usage"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let summary = json!({
                "error": error_kind(&err),
                "message": format!("{err:#}"),
            });
            eprintln!("{summary}");
            ExitCode::FAILURE
        }
    }
}
