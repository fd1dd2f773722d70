//! Command definitions and dispatch.
//!
//! Every command reads triple files, runs one engine operation, and emits a
//! canonical JSON report. Exit codes: 0 success, 1 for IO, parse, flag and
//! validation problems, 2 when the input is valid but a mathematical
//! precondition fails (reducible domain, diamond present, word outside the
//! image, and so on).

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use shiftlab_core::classdeg::{class_degree, class_degree_bounded, min_depth_at};
use shiftlab_core::degree::{d_of_word, find_diamond, magic_search};
use shiftlab_core::fibers::{class_restriction, periodic_classes, periodic_words};
use shiftlab_core::monoid::DEFAULT_CAP;
use shiftlab_core::structure::{
    composition_check, magic_partition, subshift_diamond, symbol_class_table, tau_permutation,
    PartitionVerdict,
};
use shiftlab_core::{Error, FactorTriple, YSym};

use crate::examples;
use crate::formats::{parse_triple, write_atomic, CliError, TripleFile};
use crate::report::{digest, symbol_names, walk_names, word_letters, Report, Status};

#[derive(Parser)]
#[command(
    name = "shiftlab",
    version,
    about = "Exact fiber, degree and class computations for one-block factor codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate a triple file and summarize the code
    Check(CheckArgs),
    /// Minimal fiber width of a finite-to-one code, with its witness word
    Degree(SearchArgs),
    /// Minimal transition-block depth, with its certificate
    ClassDegree(SearchArgs),
    /// Minimal certificate at one given image word
    TransitionBlocks(TransitionArgs),
    /// Transition classes over a periodic image word
    Fiber(FiberArgs),
    /// Letter or block partitions accumulated from periodic contexts
    Partition(PartitionArgs),
    /// Permutation of the certificate fiber induced by a bridge word
    Tau(TauArgs),
    /// Shortest pair of equally labeled equal-endpoint walks, if any
    Diamond(CheckArgs),
    /// Diamond crossing the boundary of a proper subshift
    SubDiamond(SubDiamondArgs),
    /// Class degrees of two codes and of their composition
    ComposeCheck(ComposeArgs),
    /// Run every bundled corpus assertion
    VerifyExamples(VerifyArgs),
}

#[derive(Args)]
pub struct CheckArgs {
    /// Triple file (JSON)
    pub file: PathBuf,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SearchArgs {
    /// Triple file (JSON)
    pub file: PathBuf,
    /// Search the full word monoid for the true minimum (default)
    #[arg(long, conflicts_with = "bounded")]
    pub exact: bool,
    /// Scan image words up to --max-len and report an upper bound
    #[arg(long)]
    pub bounded: bool,
    /// Longest word scanned in bounded mode
    #[arg(long, default_value_t = 8)]
    pub max_len: usize,
    /// Monoid element cap; the SHIFTLAB_CAP variable overrides the default
    #[arg(long)]
    pub cap: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct TransitionArgs {
    /// Triple file (JSON)
    pub file: PathBuf,
    /// Image word to certify
    #[arg(long)]
    pub word: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct FiberArgs {
    /// Triple file (JSON)
    pub file: PathBuf,
    /// Periodic image word; omit to list all words up to --period
    #[arg(long)]
    pub word: Option<String>,
    /// Period bound for the word listing
    #[arg(long, default_value_t = 4)]
    pub period: usize,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["word", "letter"])))]
pub struct PartitionArgs {
    /// Triple file (JSON)
    pub file: PathBuf,
    /// Minimal-width word whose fiber partition to assemble
    #[arg(long)]
    pub word: Option<String>,
    /// Letter whose preimage partition to test
    #[arg(long)]
    pub letter: Option<String>,
    /// Longest context period consulted
    #[arg(long, default_value_t = 4)]
    pub period: usize,
    /// Monoid element cap; the SHIFTLAB_CAP variable overrides the default
    #[arg(long)]
    pub cap: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct TauArgs {
    /// Triple file (JSON)
    pub file: PathBuf,
    /// Bridge word between the two certificate copies (may be empty)
    #[arg(long, default_value = "")]
    pub bridge: String,
    /// Certify this word instead of the class-degree certificate
    #[arg(long)]
    pub word: Option<String>,
    /// Monoid element cap; the SHIFTLAB_CAP variable overrides the default
    #[arg(long)]
    pub cap: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SubDiamondArgs {
    /// Triple file (JSON)
    pub file: PathBuf,
    /// Symbols spanning the subshift, comma separated
    #[arg(long, required = true, value_delimiter = ',')]
    pub keep: Vec<String>,
    /// Domain walk that must appear outside the subshift, comma separated
    #[arg(long, required = true, value_delimiter = ',')]
    pub avoid: Vec<String>,
    /// Walk length bound; omitted, the engine derives one
    #[arg(long)]
    pub bound: Option<usize>,
    /// Monoid element cap; the SHIFTLAB_CAP variable overrides the default
    #[arg(long)]
    pub cap: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ComposeArgs {
    /// Triple file applied first (JSON)
    pub first: PathBuf,
    /// Triple file applied second (JSON)
    pub second: PathBuf,
    /// Refuse composition when the first image is a proper sublanguage
    #[arg(long)]
    pub strict: bool,
    /// Monoid element cap; the SHIFTLAB_CAP variable overrides the default
    #[arg(long)]
    pub cap: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub struct Outcome {
    /// Rendered report when it was not redirected by --out.
    pub stdout: Option<String>,
    pub exit: i32,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let (report, exit, out) = match cli.command {
        Command::Check(a) => (check_cmd(&a)?, 0, a.out),
        Command::Degree(a) => (degree_cmd(&a)?, 0, a.out.clone()),
        Command::ClassDegree(a) => (class_degree_cmd(&a)?, 0, a.out.clone()),
        Command::TransitionBlocks(a) => (transition_cmd(&a)?, 0, a.out.clone()),
        Command::Fiber(a) => (fiber_cmd(&a)?, 0, a.out.clone()),
        Command::Partition(a) => (partition_cmd(&a)?, 0, a.out.clone()),
        Command::Tau(a) => (tau_cmd(&a)?, 0, a.out.clone()),
        Command::Diamond(a) => (diamond_cmd(&a)?, 0, a.out),
        Command::SubDiamond(a) => (sub_diamond_cmd(&a)?, 0, a.out.clone()),
        Command::ComposeCheck(a) => (compose_cmd(&a)?, 0, a.out.clone()),
        Command::VerifyExamples(a) => {
            let (report, failed) = verify_cmd()?;
            (report, if failed == 0 { 0 } else { 1 }, a.out)
        }
    };
    let rendered = report.render();
    match out {
        Some(path) => {
            write_atomic(&path, rendered.as_bytes())
                .map_err(|source| CliError::Io { path, source })?;
            Ok(Outcome { stdout: None, exit })
        }
        None => Ok(Outcome {
            stdout: Some(rendered),
            exit,
        }),
    }
}

fn load(path: &Path) -> Result<(TripleFile, FactorTriple, String), CliError> {
    let (file, triple, bytes) = parse_triple(path)?;
    let removed = file.removed_symbols(&triple);
    if !removed.is_empty() {
        eprintln!(
            "note: essentialization removed {} symbol(s): {}",
            removed.len(),
            removed.join(", ")
        );
    }
    Ok((file, triple, digest(&[&bytes])))
}

fn resolve_cap(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("SHIFTLAB_CAP") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Flag(format!("SHIFTLAB_CAP is not a number: {s:?}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn parse_word_arg(t: &FactorTriple, s: &str) -> Result<Vec<YSym>, CliError> {
    t.parse_word(s).map_err(CliError::from)
}

fn search_flags(a: &SearchArgs, cap: usize) -> Value {
    json!({
        "mode": if a.bounded { "bounded" } else { "exact" },
        "max_len": a.max_len,
        "cap": cap,
    })
}

fn check_cmd(a: &CheckArgs) -> Result<Report, CliError> {
    let (file, t, sha) = load(&a.file)?;
    let removed = file.removed_symbols(&t);
    Ok(Report {
        command: "check",
        input_sha256: sha,
        flags: json!({}),
        result: json!({
            "name": t.name(),
            "symbols": t.graph().len(),
            "edges": t.graph().edge_count(),
            "letters": t.alphabet().len(),
            "alphabet": t.alphabet(),
            "irreducible": t.graph().is_irreducible(),
            "removed_symbols": removed,
        }),
        certificates: json!([]),
        status: Status::Exact,
    })
}

fn degree_cmd(a: &SearchArgs) -> Result<Report, CliError> {
    let (_, t, sha) = load(&a.file)?;
    let cap = resolve_cap(a.cap)?;
    if !t.graph().is_irreducible() {
        return Err(Error::NotIrreducible.into());
    }
    if find_diamond(&t).is_some() {
        return Err(Error::InfiniteToOne.into());
    }
    let (value, word, coordinate, status) = if a.bounded {
        let mut best: Option<(usize, Vec<YSym>, usize)> = None;
        for w in t.image_words_up_to(a.max_len) {
            let (width, k) = d_of_word(&t, &w)?;
            if best.as_ref().map_or(true, |b| width < b.0) {
                best = Some((width, w, k));
            }
        }
        let (v, w, k) = best.expect("single letters are image words");
        (v, w, k, Status::Bounded)
    } else {
        let m = magic_search(&t, cap).map_err(CliError::from)?;
        (
            m.d_min,
            m.witness_word,
            m.witness_coordinate,
            Status::from_exactness(m.status),
        )
    };
    Ok(Report {
        command: "degree",
        input_sha256: sha,
        flags: search_flags(a, cap),
        result: json!({
            "degree": value,
            "witness_word": word_letters(&t, &word),
            "witness_coordinate": coordinate,
        }),
        certificates: json!([{
            "kind": "magic-word",
            "word": word_letters(&t, &word),
            "coordinate": coordinate,
            "width": value,
        }]),
        status,
    })
}

fn class_degree_cmd(a: &SearchArgs) -> Result<Report, CliError> {
    let (_, t, sha) = load(&a.file)?;
    let cap = resolve_cap(a.cap)?;
    let (rep, status) = if a.bounded {
        let r = class_degree_bounded(&t, a.max_len).map_err(CliError::from)?;
        (r, Status::Bounded)
    } else {
        let r = class_degree(&t, cap).map_err(CliError::from)?;
        let s = Status::from_exactness(r.status);
        (r, s)
    };
    let c = &rep.certificate;
    Ok(Report {
        command: "class-degree",
        input_sha256: sha,
        flags: search_flags(a, cap),
        result: json!({ "value": rep.value }),
        certificates: json!([transition_block_value(&t, c)]),
        status,
    })
}

fn transition_block_value(
    t: &FactorTriple,
    c: &shiftlab_core::classdeg::TransitionBlockCert,
) -> Value {
    json!({
        "kind": "transition-block",
        "word": word_letters(t, &c.word),
        "coordinate": c.coordinate,
        "symbols": symbol_names(t, &c.symbols),
        "depth": c.depth(),
    })
}

fn transition_cmd(a: &TransitionArgs) -> Result<Report, CliError> {
    let (_, t, sha) = load(&a.file)?;
    let w = parse_word_arg(&t, &a.word)?;
    let c = min_depth_at(&t, &w).map_err(CliError::from)?;
    Ok(Report {
        command: "transition-blocks",
        input_sha256: sha,
        flags: json!({ "word": a.word }),
        result: json!({
            "word": word_letters(&t, &c.word),
            "coordinate": c.coordinate,
            "symbols": symbol_names(&t, &c.symbols),
            "depth": c.depth(),
        }),
        certificates: json!([transition_block_value(&t, &c)]),
        status: Status::Exact,
    })
}

fn fiber_cmd(a: &FiberArgs) -> Result<Report, CliError> {
    let (_, t, sha) = load(&a.file)?;
    match &a.word {
        Some(word) => {
            let q = parse_word_arg(&t, word)?;
            let cs = periodic_classes(&t, &q).map_err(CliError::from)?;
            let classes: Vec<Value> = cs
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "grade": c.grade,
                        "period": c.period,
                        "representative": walk_names(&t, &c.representative),
                    })
                })
                .collect();
            let restrictions: Vec<Value> = (0..q.len())
                .map(|i| {
                    Value::Array(
                        class_restriction(&t, &cs, i)
                            .iter()
                            .map(|s| symbol_names(&t, s))
                            .collect(),
                    )
                })
                .collect();
            let certificates: Vec<Value> = cs
                .classes
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    json!({
                        "kind": "class-representative",
                        "class": i,
                        "walk": walk_names(&t, &c.representative),
                    })
                })
                .collect();
            Ok(Report {
                command: "fiber",
                input_sha256: sha,
                flags: json!({ "word": word, "period": a.period }),
                result: json!({
                    "word": word_letters(&t, &q),
                    "period": cs.period(),
                    "class_count": cs.classes.len(),
                    "classes": classes,
                    "arrows": cs.arrows,
                    "restrictions": restrictions,
                }),
                certificates: Value::Array(certificates),
                status: Status::Exact,
            })
        }
        None => {
            let mut words = Vec::new();
            for q in periodic_words(&t, a.period) {
                let cs = periodic_classes(&t, &q.letters).map_err(CliError::from)?;
                words.push(json!({
                    "word": word_letters(&t, &q.letters),
                    "class_count": cs.classes.len(),
                    "arrows": cs.arrows,
                }));
            }
            Ok(Report {
                command: "fiber",
                input_sha256: sha,
                flags: json!({ "period": a.period }),
                result: json!({ "period_max": a.period, "words": words }),
                certificates: json!([]),
                status: Status::Exact,
            })
        }
    }
}

fn partition_cmd(a: &PartitionArgs) -> Result<Report, CliError> {
    let (_, t, sha) = load(&a.file)?;
    let cap = resolve_cap(a.cap)?;
    // surfaces whether the class degree behind the verdict closed exactly
    let status = Status::from_exactness(class_degree(&t, cap).map_err(CliError::from)?.status);
    if let Some(letter) = &a.letter {
        let y = t.label_index(letter).map_err(CliError::from)?;
        let table = symbol_class_table(&t, y, a.period, cap).map_err(CliError::from)?;
        let rows: Vec<Value> = table
            .rows
            .iter()
            .map(|r| {
                json!({
                    "context": word_letters(&t, &r.context),
                    "offset": r.offset,
                    "class_count": r.class_count,
                    "sets": r.sets.iter().map(|s| symbol_names(&t, s)).collect::<Vec<_>>(),
                })
            })
            .collect();
        let (verdict, certificates) = match &table.verdict {
            PartitionVerdict::PartitionExists(parts) => {
                let parts: Vec<Value> = parts.iter().map(|p| symbol_names(&t, p)).collect();
                (
                    json!({ "kind": "partition-exists", "parts": parts }),
                    json!([{ "kind": "letter-partition", "letter": letter, "parts": parts }]),
                )
            }
            PartitionVerdict::NoPartition { conflict } => {
                let conflict_value = conflict.as_ref().map(|c| {
                    json!({
                        "first": t.graph().name(c.first),
                        "second": t.graph().name(c.second),
                        "merged_in": c.merged_in,
                        "separated_in": c.separated_in,
                    })
                });
                (
                    json!({ "kind": "no-partition", "conflict": conflict_value }),
                    match conflict_value {
                        Some(ref c) => json!([{ "kind": "split-conflict", "letter": letter, "conflict": c }]),
                        None => json!([]),
                    },
                )
            }
        };
        Ok(Report {
            command: "partition",
            input_sha256: sha,
            flags: json!({ "letter": letter, "period": a.period, "cap": cap }),
            result: json!({
                "letter": letter,
                "class_degree": table.class_degree,
                "rows": rows,
                "components": table.components.iter().map(|s| symbol_names(&t, s)).collect::<Vec<_>>(),
                "unrealized": symbol_names(&t, &table.unrealized),
                "full_fiber_row": table.full_fiber_row,
                "verdict": verdict,
            }),
            certificates,
            status,
        })
    } else {
        let word = a.word.as_ref().expect("clap enforces the target group");
        let w = parse_word_arg(&t, word)?;
        let bp = magic_partition(&t, &w, a.period, cap).map_err(CliError::from)?;
        let parts: Vec<Value> = bp.symbol_parts.iter().map(|p| symbol_names(&t, p)).collect();
        let walk_parts: Vec<Value> = bp
            .parts
            .iter()
            .map(|grp| Value::Array(grp.iter().map(|w| walk_names(&t, w)).collect()))
            .collect();
        let contexts: Vec<Value> = bp
            .contexts
            .iter()
            .map(|(q, off)| json!({ "word": word_letters(&t, q), "offset": off }))
            .collect();
        Ok(Report {
            command: "partition",
            input_sha256: sha,
            flags: json!({ "word": word, "period": a.period, "cap": cap }),
            result: json!({
                "word": word_letters(&t, &bp.word),
                "coordinate": bp.coordinate,
                "parts": parts,
                "preimage_parts": walk_parts,
                "contexts": contexts,
            }),
            certificates: json!([{
                "kind": "block-partition",
                "word": word_letters(&t, &bp.word),
                "coordinate": bp.coordinate,
                "parts": parts,
            }]),
            status,
        })
    }
}

fn tau_cmd(a: &TauArgs) -> Result<Report, CliError> {
    let (_, t, sha) = load(&a.file)?;
    let cap = resolve_cap(a.cap)?;
    let cert = match &a.word {
        Some(word) => min_depth_at(&t, &parse_word_arg(&t, word)?).map_err(CliError::from)?,
        None => class_degree(&t, cap).map_err(CliError::from)?.certificate,
    };
    let bridge = parse_word_arg(&t, &a.bridge)?;
    let tau = tau_permutation(&t, &cert, &bridge, cap).map_err(CliError::from)?;
    let map: Vec<Value> = tau
        .map
        .iter()
        .map(|&(x, y)| json!([t.graph().name(x), t.graph().name(y)]))
        .collect();
    Ok(Report {
        command: "tau",
        input_sha256: sha,
        flags: json!({ "bridge": a.bridge, "word": a.word, "cap": cap }),
        result: json!({
            "word": word_letters(&t, &tau.word),
            "coordinate": tau.coordinate,
            "symbols": symbol_names(&t, &tau.symbols),
            "bridge": word_letters(&t, &tau.bridge),
            "map": map,
            "identity": tau.is_identity(),
        }),
        certificates: json!([{
            "kind": "bridge-permutation",
            "word": word_letters(&t, &tau.word),
            "coordinate": tau.coordinate,
            "bridge": word_letters(&t, &tau.bridge),
            "map": map,
        }]),
        status: Status::Exact,
    })
}

fn diamond_cmd(a: &CheckArgs) -> Result<Report, CliError> {
    let (_, t, sha) = load(&a.file)?;
    let (result, certificates) = match find_diamond(&t) {
        Some(d) => {
            let labels = d.labels(&t);
            (
                json!({
                    "found": true,
                    "upper": walk_names(&t, &d.upper),
                    "lower": walk_names(&t, &d.lower),
                    "labels": word_letters(&t, &labels),
                    "length": d.upper.len(),
                }),
                json!([{
                    "kind": "diamond",
                    "upper": walk_names(&t, &d.upper),
                    "lower": walk_names(&t, &d.lower),
                }]),
            )
        }
        None => (json!({ "found": false }), json!([])),
    };
    Ok(Report {
        command: "diamond",
        input_sha256: sha,
        flags: json!({}),
        result,
        certificates,
        status: Status::Exact,
    })
}

fn sub_diamond_cmd(a: &SubDiamondArgs) -> Result<Report, CliError> {
    let (_, t, sha) = load(&a.file)?;
    let cap = resolve_cap(a.cap)?;
    let keep: Vec<usize> = a
        .keep
        .iter()
        .map(|n| t.graph().index_of(n).map_err(CliError::from))
        .collect::<Result<_, _>>()?;
    let avoided: Vec<usize> = a
        .avoid
        .iter()
        .map(|n| t.graph().index_of(n).map_err(CliError::from))
        .collect::<Result<_, _>>()?;
    let rep = subshift_diamond(&t, &keep, &avoided, a.bound, cap).map_err(CliError::from)?;
    let (result, certificates, status) = match &rep.pair {
        Some(p) => (
            json!({
                "bound": rep.bound,
                "found": true,
                "inside": walk_names(&t, &p.inside),
                "outside": walk_names(&t, &p.outside),
                "labels": word_letters(&t, &t.image_of(&p.inside)),
            }),
            json!([{
                "kind": "subshift-diamond",
                "inside": walk_names(&t, &p.inside),
                "outside": walk_names(&t, &p.outside),
            }]),
            Status::Exact,
        ),
        None => (
            json!({ "bound": rep.bound, "found": false }),
            json!([]),
            Status::Bounded,
        ),
    };
    Ok(Report {
        command: "sub-diamond",
        input_sha256: sha,
        flags: json!({
            "keep": a.keep,
            "avoid": a.avoid,
            "bound": a.bound,
            "cap": cap,
        }),
        result,
        certificates,
        status,
    })
}

fn compose_cmd(a: &ComposeArgs) -> Result<Report, CliError> {
    let (_, first, bytes1) = parse_triple(&a.first)?;
    let (_, second, bytes2) = parse_triple(&a.second)?;
    let sha = digest(&[&bytes1, &bytes2]);
    let cap = resolve_cap(a.cap)?;
    if a.strict {
        shiftlab_core::codes::compose(&first, &second, true).map_err(CliError::from)?;
    }
    let chk = composition_check(&first, &second, cap).map_err(CliError::from)?;
    let r1 = class_degree(&first, cap).map_err(CliError::from)?;
    let r2 = class_degree(&second, cap).map_err(CliError::from)?;
    let composed = shiftlab_core::codes::compose(&first, &second, false)
        .map_err(CliError::from)?
        .triple;
    let rc = class_degree(&composed, cap).map_err(CliError::from)?;
    let status = if [&r1, &r2, &rc]
        .iter()
        .all(|r| r.status == shiftlab_core::monoid::Exactness::Exact)
    {
        Status::Exact
    } else {
        Status::Capped
    };
    let cert = |t: &FactorTriple, r: &shiftlab_core::classdeg::ClassDegreeReport, role: &str| {
        let mut v = transition_block_value(t, &r.certificate);
        v["role"] = json!(role);
        v
    };
    Ok(Report {
        command: "compose-check",
        input_sha256: sha,
        flags: json!({ "strict": a.strict, "cap": cap }),
        result: json!({
            "first": chk.first,
            "second": chk.second,
            "composed": chk.composed,
            "product": chk.first * chk.second,
            "inequality_holds": chk.inequality_holds,
            "image_proper": chk.image_proper,
        }),
        certificates: json!([
            cert(&first, &r1, "first"),
            cert(&second, &r2, "second"),
            cert(&composed, &rc, "composed"),
        ]),
        status,
    })
}

fn verify_cmd() -> Result<(Report, usize), CliError> {
    let assertions = examples::corpus_assertions();
    let mut rows = Vec::new();
    let mut failed = 0;
    for a in &assertions {
        if a.ok {
            eprintln!("ok   {}", a.name);
        } else {
            eprintln!("FAIL {}: {}", a.name, a.detail);
            failed += 1;
        }
        rows.push(json!({ "name": a.name, "ok": a.ok, "detail": a.detail }));
    }
    let corpus_bytes: Vec<&[u8]> = examples::CORPUS.iter().map(|&(_, s)| s.as_bytes()).collect();
    let report = Report {
        command: "verify-examples",
        input_sha256: digest(&corpus_bytes),
        flags: json!({}),
        result: json!({
            "assertions": rows,
            "passed": assertions.len() - failed,
            "failed": failed,
        }),
        certificates: json!([]),
        status: Status::Exact,
    };
    Ok((report, failed))
}
