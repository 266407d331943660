//! Command-line surface: triangles, inverse entries, forest-class counts,
//! involution inspection and verification, Whitney numbers, reversions, the
//! alternation scanner, and the bundled `verify-all` suite.
//!
//! Exit codes: 0 = success / verified, 1 = a verification found a
//! counterexample, 2 = usage error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::json;

use crate::error::Result;
use crate::forest::{
    count_class, enumerate_decorated_forests, ClassFilter, EnumCaps, Forest, OrderingKind,
};
use crate::involution::{apply_involution, verify_lemma4};
use crate::numbers::{
    build_matrix, invert_triangular, inverse_matrix_via_series, RestrictedNumberSpec,
    TriangularMatrix,
};
use crate::poset::build_poset;
use crate::restriction::{parse_restriction, RestrictionSet};
use crate::series::{series_from_restriction, SequenceKind};
use crate::verify::{run_all, VerifyOptions};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Set,
    Cycle,
    List,
}

impl From<KindArg> for SequenceKind {
    fn from(k: KindArg) -> SequenceKind {
        match k {
            KindArg::Set => SequenceKind::Set,
            KindArg::Cycle => SequenceKind::Cycle,
            KindArg::List => SequenceKind::List,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Increasing,
    Minfirst,
    Linear,
}

impl From<OrderArg> for OrderingKind {
    fn from(o: OrderArg) -> OrderingKind {
        match o {
            OrderArg::Increasing => OrderingKind::Increasing,
            OrderArg::Minfirst => OrderingKind::MinFirst,
            OrderArg::Linear => OrderingKind::Linear,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FilterArg {
    Even,
    Odd,
    Good,
    All,
}

impl From<FilterArg> for ClassFilter {
    fn from(f: FilterArg) -> ClassFilter {
        match f {
            FilterArg::Even => ClassFilter::Even,
            FilterArg::Odd => ClassFilter::Odd,
            FilterArg::Good => ClassFilter::Good,
            FilterArg::All => ClassFilter::All,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "stirlah",
    version,
    about = "Restricted Stirling and Lah number matrices, their inverses, and the forests behind them",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the triangle of restricted numbers for a spec.
    Table {
        /// Restriction set, e.g. "1,2", "1-4", "1-", "1,2,4-6".
        #[arg(long = "R")]
        restriction: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Stretch factor: the effective restriction is R(d).
        #[arg(long, default_value_t = 1)]
        d: u64,
        /// Triangle size.
        #[arg(long = "N")]
        size: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Print the inverse triangle, or a single inverse entry with --n/--k.
    Inverse {
        #[arg(long = "R")]
        restriction: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long = "N")]
        size: u64,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Count (or dump) a decorated forest class.
    Forests {
        #[arg(long = "R")]
        restriction: String,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, value_enum)]
        order: OrderArg,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// Override the enumeration caps (uniformly).
        #[arg(long)]
        cap: Option<u64>,
        /// Dump every forest of the class as JSON lines instead of counting.
        #[arg(long, default_value_t = false)]
        emit: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Apply the involution to one decorated tree and show before/after.
    InvolutionShow {
        #[arg(long = "R")]
        restriction: String,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, value_enum)]
        order: OrderArg,
        /// Leaves of the tree class to enumerate (with --index).
        #[arg(long)]
        n: Option<u64>,
        /// Index into the deterministic enumeration of the class.
        #[arg(long, default_value_t = 0)]
        index: u64,
        /// Read the input tree from a forest JSON file instead.
        #[arg(long = "in")]
        input: Option<String>,
        #[arg(long)]
        cap: Option<u64>,
        /// dot prints paired before/after graphs; json bundles everything.
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Exhaustively verify the involution's properties on a class.
    InvolutionVerify {
        #[arg(long = "R")]
        restriction: String,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, value_enum)]
        order: OrderArg,
        /// Check every decorated tree with up to this many leaves.
        #[arg(long)]
        n: u64,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Whitney numbers of the poset of partitions with part sizes ≡ 1 mod d.
    Whitney {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Compositional reversion of the series attached to a restriction set.
    Revert {
        #[arg(long = "R")]
        restriction: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        d: u64,
        /// Truncation order.
        #[arg(long = "N")]
        size: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check whether the reversion of the attached series alternates.
    ScanAlternating {
        #[arg(long = "R")]
        restriction: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        d: u64,
        /// Scan through this truncation order.
        #[arg(long = "N")]
        size: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the full verification suite; one pass/fail line per criterion.
    VerifyAll {
        /// Seed for the randomized suites.
        #[arg(long)]
        seed: Option<u64>,
        /// Raise the alternation-scan order (e.g. 1200 for the full prefix).
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        out: Option<String>,
    },
}

/// Parses and runs an argv; returns the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version as "errors" with successful exit.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(out: &Option<String>, text: &str) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| {
            crate::error::Error::Domain(format!("cannot write {path}: {e}"))
        }),
    }
}

fn caps_from(cap: Option<u64>) -> EnumCaps {
    match cap {
        None => EnumCaps::default(),
        Some(c) => EnumCaps::uniform(c),
    }
}

fn triangle_table(m: &TriangularMatrix) -> String {
    let mut text = String::new();
    for (i, row) in m.rows().iter().enumerate() {
        text.push_str(&format!("{:>3}:", i + 1));
        for v in row {
            text.push_str(&format!(" {v}"));
        }
        text.push('\n');
    }
    text
}

fn render_matrix(
    m: &TriangularMatrix,
    spec: &RestrictedNumberSpec,
    format: FormatArg,
) -> String {
    match format {
        FormatArg::Table => triangle_table(m),
        FormatArg::Csv => m.to_csv(),
        FormatArg::Json => format!("{:#}\n", m.to_json(Some(spec))),
    }
}

fn checked_inverse(spec: &RestrictedNumberSpec, size: u64) -> Result<TriangularMatrix> {
    let direct = invert_triangular(&build_matrix(spec, size)?)?;
    let by_series = inverse_matrix_via_series(spec, size)?;
    if direct != by_series {
        return Err(crate::error::Error::Domain(
            "internal inconsistency: inverse routes disagree".into(),
        ));
    }
    Ok(direct)
}

fn parse_set(text: &str) -> Result<RestrictionSet> {
    parse_restriction(text)
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Table {
            restriction,
            kind,
            d,
            size,
            format,
            out,
        } => {
            let spec = RestrictedNumberSpec::new(parse_set(&restriction)?, kind.into(), d);
            let m = build_matrix(&spec, size)?;
            emit(&out, &render_matrix(&m, &spec, format))?;
            Ok(0)
        }
        Command::Inverse {
            restriction,
            kind,
            d,
            size,
            n,
            k,
            format,
            out,
        } => {
            let spec = RestrictedNumberSpec::new(parse_set(&restriction)?, kind.into(), d);
            let inv = checked_inverse(&spec, size)?;
            let text = match (n, k) {
                (Some(n), Some(k)) => {
                    if n < 1 || k < 1 || n > size || k > size {
                        return Err(crate::error::Error::Domain(format!(
                            "entry ({n},{k}) is outside the {size}×{size} truncation"
                        )));
                    }
                    let value = inv.entry(n as usize, k as usize);
                    match format {
                        FormatArg::Table => format!("{value}\n"),
                        FormatArg::Csv => format!("n,k,value\n{n},{k},{value}\n"),
                        FormatArg::Json => format!(
                            "{:#}\n",
                            json!({
                                "spec": spec.to_json(),
                                "n": n,
                                "k": k,
                                "value": value.to_string(),
                            })
                        ),
                    }
                }
                (None, None) => render_matrix(&inv, &spec, format),
                _ => {
                    return Err(crate::error::Error::Domain(
                        "--n and --k must be given together".into(),
                    ))
                }
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Command::Forests {
            restriction,
            d,
            order,
            n,
            k,
            filter,
            cap,
            emit: emit_stream,
            format,
            out,
        } => {
            let set = parse_set(&restriction)?;
            let caps = caps_from(cap);
            let ordering: OrderingKind = order.into();
            if emit_stream {
                let mut lines = String::new();
                enumerate_decorated_forests(n, k, ordering, &set, d, caps, &mut |forest, parity| {
                    let mut record = forest.to_json();
                    record["parity"] = json!(match parity {
                        crate::forest::Parity::Even => "even",
                        crate::forest::Parity::Odd => "odd",
                    });
                    lines.push_str(&format!("{record}\n"));
                })?;
                emit(&out, &lines)?;
                return Ok(0);
            }
            let count = count_class(n, k, ordering, &set, d, filter.into(), caps)?;
            let text = match format {
                FormatArg::Table => format!("{count}\n"),
                FormatArg::Csv => format!("n,k,value\n{n},{k},{count}\n"),
                FormatArg::Json => format!(
                    "{:#}\n",
                    json!({
                        "R": set.to_string(),
                        "d": d,
                        "order": ordering.name(),
                        "filter": ClassFilter::from(filter).name(),
                        "n": n,
                        "k": k,
                        "count": count.to_string(),
                    })
                ),
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Command::InvolutionShow {
            restriction,
            d,
            order,
            n,
            index,
            input,
            cap,
            format,
            out,
        } => {
            let set = parse_set(&restriction)?;
            let ordering: OrderingKind = order.into();
            let tree = match (&input, n) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        crate::error::Error::Domain(format!("cannot read {path}: {e}"))
                    })?;
                    let value: serde_json::Value = serde_json::from_str(&text)
                        .map_err(|e| crate::error::Error::Parse(e.to_string()))?;
                    let forest = Forest::from_json(&value)?;
                    if forest.component_count() != 1 {
                        return Err(crate::error::Error::Domain(
                            "involution-show expects a single tree".into(),
                        ));
                    }
                    forest.trees()[0].clone()
                }
                (None, Some(n)) => {
                    let mut found = None;
                    let mut seen = 0u64;
                    enumerate_decorated_forests(
                        n,
                        1,
                        ordering,
                        &set,
                        d,
                        caps_from(cap),
                        &mut |forest, _| {
                            if seen == index && found.is_none() {
                                found = Some(forest.trees()[0].clone());
                            }
                            seen += 1;
                        },
                    )?;
                    found.ok_or_else(|| {
                        crate::error::Error::Domain(format!(
                            "index {index} is out of range; the class has {seen} trees"
                        ))
                    })?
                }
                (None, None) => {
                    return Err(crate::error::Error::Domain(
                        "provide either --in <file> or --n <leaves>".into(),
                    ))
                }
            };
            let (image, trace) = apply_involution(&tree, &set, d, ordering)?;
            let before = Forest::new(vec![tree.clone()]);
            let after = Forest::new(vec![image.clone()]);
            let text = match format {
                FormatArg::Json => format!(
                    "{:#}\n",
                    json!({
                        "R": set.to_string(),
                        "d": d,
                        "order": ordering.name(),
                        "fixed": image == tree,
                        "before": before.to_json(),
                        "after": after.to_json(),
                        "trace": trace,
                    })
                ),
                _ => {
                    let mut text = String::new();
                    text.push_str(&before.to_dot("before"));
                    text.push_str(&after.to_dot("after"));
                    text.push_str(&format!(
                        "// trace: {}\n",
                        serde_json::to_string(&trace).unwrap_or_default()
                    ));
                    text
                }
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Command::InvolutionVerify {
            restriction,
            d,
            order,
            n,
            cap,
            out,
        } => {
            let set = parse_set(&restriction)?;
            let report = verify_lemma4(n, &set, d, order.into(), caps_from(cap))?;
            let ok = report.all_hold();
            let text = format!("{:#}\n", serde_json::to_value(&report).unwrap());
            emit(&out, &text)?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Whitney { n, d, format, out } => {
            let poset = build_poset(n, d)?;
            let rows: Vec<(u64, String, String)> = (0..=poset.max_rank())
                .map(|k| {
                    (
                        k,
                        poset.whitney_second(k).to_string(),
                        poset.whitney_first(k).to_string(),
                    )
                })
                .collect();
            let text = match format {
                FormatArg::Table => {
                    let mut t = format!("Whitney numbers of the poset, n = {n}, d = {d}\n");
                    t.push_str("  k  W_k (second kind)  w_k (first kind)\n");
                    for (k, w2, w1) in &rows {
                        t.push_str(&format!("{k:>3}  {w2:>17}  {w1:>16}\n"));
                    }
                    t
                }
                FormatArg::Csv => {
                    let mut t = String::from("k,whitney_second,whitney_first\n");
                    for (k, w2, w1) in &rows {
                        t.push_str(&format!("{k},{w2},{w1}\n"));
                    }
                    t
                }
                FormatArg::Json => format!(
                    "{:#}\n",
                    json!({
                        "n": n,
                        "d": d,
                        "whitney": rows
                            .iter()
                            .map(|(k, w2, w1)| json!({ "k": k, "second": w2, "first": w1 }))
                            .collect::<Vec<_>>(),
                        "poset": poset.to_json(),
                    })
                ),
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Command::Revert {
            restriction,
            kind,
            d,
            size,
            format,
            out,
        } => {
            let set = parse_set(&restriction)?;
            let f = series_from_restriction(&set, kind.into(), d, size as usize)?;
            let g = f.revert()?;
            let text = match format {
                FormatArg::Json => format!("{:#}\n", g.to_json(true)),
                _ => {
                    let mut t = String::from("n,coefficient,egf\n");
                    for m in 0..=g.order() {
                        t.push_str(&format!("{m},{},{}\n", g.coeff(m), g.egf_coeff(m)));
                    }
                    t
                }
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Command::ScanAlternating {
            restriction,
            kind,
            d,
            size,
            out,
        } => {
            let set = parse_set(&restriction)?;
            let f = series_from_restriction(&set, kind.into(), d, size as usize)?;
            let g = f.revert()?;
            let alternating = g.is_alternating(d)?;
            let first_violation = if alternating {
                None
            } else {
                (1..=g.order()).find(|&m| {
                    let c = g.coeff(m);
                    if d == 1 {
                        if (m - 1) % 2 == 0 {
                            c.is_negative()
                        } else {
                            c.is_positive()
                        }
                    } else if (m - 1) % d as usize != 0 {
                        !c.is_zero()
                    } else {
                        let k = (m - 1) / d as usize;
                        if k % 2 == 0 {
                            c.is_negative()
                        } else {
                            c.is_positive()
                        }
                    }
                })
            };
            let text = format!(
                "{:#}\n",
                json!({
                    "R": set.to_string(),
                    "kind": SequenceKind::from(kind).name(),
                    "d": d,
                    "order": size,
                    "alternating": alternating,
                    "first_violation": first_violation,
                })
            );
            emit(&out, &text)?;
            Ok(if alternating { 0 } else { 1 })
        }
        Command::VerifyAll { seed, cap, out } => {
            let mut opts = VerifyOptions::default();
            if let Some(seed) = seed {
                opts.seed = seed;
            }
            if let Some(cap) = cap {
                opts.scan_order = cap as usize;
            }
            let reports = run_all(&opts);
            let mut text = String::new();
            for report in &reports {
                text.push_str(&report.line());
                text.push('\n');
            }
            let all = reports.iter().all(|r| r.passed);
            text.push_str(&format!(
                "{}: {} of {} criteria passed\n",
                if all { "VERIFIED" } else { "FAILED" },
                reports.iter().filter(|r| r.passed).count(),
                reports.len()
            ));
            emit(&out, &text)?;
            Ok(if all { 0 } else { 1 })
        }
    }
}
