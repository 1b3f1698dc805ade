use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigid_paradox::paradox::ParadoxInstance;
use rigid_paradox::render::{cayley_dot, function_svg, line_strip_svg};
use rigid_paradox::{
    CyclePermutation, Error, IntegerPermutation, PiecewiseRigidMap, Rank, TreePermutation,
    VertexLabeling, Word,
};
use serde_json::{json, Value};

use crate::{Command, Format, GlobalOpts, EXIT_BUDGET, EXIT_FAIL, EXIT_IO, EXIT_USAGE};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> CliError {
        let code = match err {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        CliError { code, message: err.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> CliError {
        CliError { code: EXIT_IO, message: err.to_string() }
    }
}

type CmdResult = Result<u8, CliError>;

pub fn run(opts: &GlobalOpts, command: Command) -> CmdResult {
    match command {
        Command::Classify => classify(opts),
        Command::Verify { free_check, budget, rigidity_samples } => {
            verify(opts, free_check, budget, rigidity_samples)
        }
        Command::PlotFn { perm, word } => plot_fn(opts, perm, word),
        Command::PlotCayley { radius } => plot_cayley(opts, radius),
        Command::Connect { m, n, check } => connect(opts, m, n, check),
        Command::Enumerate { count } => enumerate(opts, count),
        Command::LineStrip => line_strip(opts),
    }
}

/// Writes to `--out` through a temporary file in the same directory and a
/// rename, or to stdout.
fn emit(opts: &GlobalOpts, contents: &str) -> Result<(), CliError> {
    match &opts.out {
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(contents.as_bytes())?;
            tmp.persist(path).map_err(|e| CliError::from(e.error))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn format_or(opts: &GlobalOpts, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let format = opts.format.unwrap_or(default);
    if !allowed.contains(&format) {
        return Err(CliError::usage(format!("format {format:?} is not available here")));
    }
    Ok(format)
}

fn classify(opts: &GlobalOpts) -> CmdResult {
    let format = format_or(opts, Format::Csv, &[Format::Csv, Format::Json])?;
    let inst = ParadoxInstance::new(opts.rank);
    let rows: Vec<(i64, String, String)> = (opts.window.lo..=opts.window.hi)
        .map(|n| {
            let word = inst.labeling().word_of_label(n);
            let class = inst.label(inst.classify_interval(n));
            (n, word.to_string(), class)
        })
        .collect();
    let text = match format {
        Format::Json => {
            let rows: Vec<Value> =
                rows.iter().map(|(n, w, c)| json!({ "n": n, "word": w, "class": c })).collect();
            to_json(&Value::Array(rows))
        }
        _ => {
            let mut out = String::from("n,word,class\n");
            for (n, word, class) in &rows {
                writeln!(out, "{n},{word},{class}").unwrap();
            }
            out
        }
    };
    emit(opts, &text)?;
    Ok(0)
}

fn to_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    text
}

fn verify(
    opts: &GlobalOpts,
    free_check: Option<usize>,
    budget: u128,
    rigidity_samples: Option<usize>,
) -> CmdResult {
    let format = format_or(opts, Format::Json, &[Format::Json, Format::Csv])?;
    if opts.rank == Rank::Omega && opts.pair_limit.is_none_or(|j| j == 0) {
        return Err(CliError::usage("--k omega requires --J <pairs> with J >= 1"));
    }
    let (lo, hi) = (opts.window.lo, opts.window.hi);
    let inst = ParadoxInstance::new(opts.rank);
    let pairs = inst.checked_pairs(opts.pair_limit)?;
    let partition = inst.verify_partition(lo, hi, opts.pair_limit)?;
    let reassembly = inst.verify_reassembly(lo, hi, &pairs)?;
    let mut pass = partition.pass() && reassembly.pass();

    let window_size = (hi - lo + 1) as u64;
    let class_total =
        partition.counts.iter().map(|c| c.count).sum::<u64>() + partition.overflow.unwrap_or(0);
    let measure_pass =
        class_total == window_size && reassembly.coverage.iter().all(|c| c.covered == window_size);
    pass &= measure_pass;

    let mut report = json!({
        "window": { "lo": lo, "hi": hi },
        "rank": partition.rank,
        "special_pair": partition.special_pair,
        "counts": partition.counts,
        "coverage": reassembly.coverage,
        "measure": {
            "window_size": window_size,
            "class_total": class_total,
            "pass": measure_pass,
        },
        "violations": partition.violations.iter().chain(&reassembly.violations).collect::<Vec<_>>(),
    });
    if let Some(overflow) = partition.overflow {
        report["overflow"] = json!(overflow);
    }
    if let Some(max_length) = free_check {
        let cert = inst.certify_free_action(max_length, lo, hi, opts.pair_limit, budget)?;
        pass &= cert.pass();
        report["free_check"] = json!({
            "pass": cert.pass(),
            "report": cert,
        });
    }
    if let Some(samples) = rigidity_samples {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut audits = Vec::new();
        for &j in &pairs {
            let f = inst.generator_map(j)?;
            for (name, map) in [(format!("f{j}"), f.clone()), (format!("f{j}^-1"), f.inverse())] {
                let audit = map.rigidity_audit(lo, hi.max(lo + 1), samples.max(2), &mut rng)?;
                pass &= audit.pass();
                audits.push(json!({ "map": name, "pass": audit.pass(), "report": audit }));
            }
        }
        report["rigidity"] = Value::Array(audits);
    }
    report["pass"] = json!(pass);

    let text = match format {
        Format::Csv => {
            let mut out = String::from("class,count\n");
            for c in &partition.counts {
                writeln!(out, "{},{}", c.class, c.count).unwrap();
            }
            if let Some(overflow) = partition.overflow {
                writeln!(out, "overflow,{overflow}").unwrap();
            }
            out
        }
        _ => to_json(&report),
    };
    emit(opts, &text)?;
    Ok(if pass { 0 } else { EXIT_FAIL })
}

fn plot_fn(opts: &GlobalOpts, perm: Option<String>, word: Option<String>) -> CmdResult {
    format_or(opts, Format::Svg, &[Format::Svg])?;
    let permutation: IntegerPermutation = match (perm, word) {
        (Some(cycles), None) => cycles.parse::<CyclePermutation>()?.into(),
        (None, Some(word)) => {
            let word: Word = word.parse()?;
            let labeling = Arc::new(VertexLabeling::new(opts.rank));
            TreePermutation::new(word, labeling)?.into()
        }
        _ => return Err(CliError::usage("plot-fn needs exactly one of --perm or --word")),
    };
    let (lo, hi) = (opts.window.lo, opts.window.hi);
    if lo == hi {
        return Err(CliError::usage("plot-fn needs a window with lo < hi"));
    }
    let map = PiecewiseRigidMap::from_permutation(permutation);
    emit(opts, &function_svg(&map.pieces_in_window(lo, hi), lo, hi))?;
    Ok(0)
}

fn plot_cayley(opts: &GlobalOpts, radius: usize) -> CmdResult {
    format_or(opts, Format::Dot, &[Format::Dot])?;
    let labeling = VertexLabeling::new(opts.rank);
    let ball = labeling.ball(radius)?;
    emit(opts, &cayley_dot(&ball))?;
    Ok(0)
}

fn connect(opts: &GlobalOpts, m: i64, n: i64, check: bool) -> CmdResult {
    let labeling = Arc::new(VertexLabeling::new(opts.rank));
    let word = labeling.connecting_word(m, n);
    let mut out = format!("{word}\n");
    let mut code = 0;
    if check {
        let image = TreePermutation::new(word, labeling)?.apply(m);
        let ok = image == n;
        writeln!(out, "check: {m} -> {image} ({})", if ok { "ok" } else { "MISMATCH" }).unwrap();
        if !ok {
            code = EXIT_FAIL;
        }
    }
    emit(opts, &out)?;
    Ok(code)
}

fn enumerate(opts: &GlobalOpts, count: Option<usize>) -> CmdResult {
    format_or(opts, Format::Csv, &[Format::Csv])?;
    let labeling = VertexLabeling::new(opts.rank);
    let words: Vec<(i64, Word)> = match count {
        Some(count) => labeling
            .enumerator()
            .first_words(count)
            .into_iter()
            .map(|w| Ok((labeling.label_of_word(&w)?, w)))
            .collect::<Result<_, Error>>()?,
        None => (opts.window.lo..=opts.window.hi).map(|n| (n, labeling.word_of_label(n))).collect(),
    };
    let mut out = String::from("label,position,word,length\n");
    for (label, word) in words {
        let position = labeling.enumerator().position_of(&word)?;
        writeln!(out, "{label},{position},{word},{}", word.len()).unwrap();
    }
    emit(opts, &out)?;
    Ok(0)
}

fn line_strip(opts: &GlobalOpts) -> CmdResult {
    format_or(opts, Format::Svg, &[Format::Svg])?;
    let inst = ParadoxInstance::new(opts.rank);
    let limit = match opts.rank {
        Rank::Finite(k) => k,
        Rank::Omega => opts.pair_limit.unwrap_or(u32::MAX),
    };
    let cells: Vec<_> = (opts.window.lo..=opts.window.hi)
        .map(|n| {
            let class = inst.classify_interval(n);
            (n, (class.pair <= limit).then_some(class))
        })
        .collect();
    emit(opts, &line_strip_svg(&cells, opts.rank))?;
    Ok(0)
}
