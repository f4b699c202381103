//! `frieze`: command-line access to the frieze-core engines.
//!
//! Exit status is 0 on success, 1 when the answer is a domain "no" (for
//! example a sequence that is not a quiddity sequence) and 2 on usage errors.

use std::fmt::Display;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use frieze_core::frieze::{first_defect, generate_frieze};
use frieze_core::polygon::{to_dual_tree, Triangulation};
use frieze_core::similarity::{
    canonicalize, classify, count_tsa, count_types, enumerate_types, perfect_tripartitions,
    case_count, Method, DEFAULT_BRUTE_CAP,
};
use frieze_core::sl2::{element_order, ts_normal_form, Mat2, Word};
use frieze_core::supplement::{
    extend_superbasic, is_embeddable, supplement, BasicSeq, Embedding, SuperBasicSeq,
};
use frieze_core::tiling::{
    extract_factors, factor_map_json, formula_window, fractures, generate_tiling,
    parse_factor_map, FactorVectors, Span, TilingWindow,
};
use frieze_core::{format_sequence, is_eta, parse_sequence, EtaSeq, Error};

#[derive(Parser)]
#[command(name = "frieze", version, about = "Quiddity sequences, frieze patterns and their types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Formula,
    Brute,
}

#[derive(Args)]
struct Output {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check a sequence and report its period, symmetry and canonical form
    Verify {
        /// Comma-separated positive integers, e.g. 2,1,3,1,2
        seq: String,
        #[command(flatten)]
        out: Output,
    },
    /// Print rows 1..n-1 of the frieze generated by a quiddity sequence
    Frieze {
        seq: String,
        #[command(flatten)]
        out: Output,
    },
    /// Count similarity types Kn
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "formula")]
        method: MethodArg,
        /// Largest n accepted by the brute-force method
        #[arg(long)]
        cap: Option<usize>,
        /// Also print Tn, Sn, An and the per-partition counts
        #[arg(long)]
        detail: bool,
        #[command(flatten)]
        out: Output,
    },
    /// List one canonical representative per similarity type
    Types {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Supplement a basic sequence (1,A1,...,An)
    Supplement {
        seq: String,
        #[command(flatten)]
        out: Output,
    },
    /// Extend super-basic blocks to a quiddity sequence: extend 1,3,3 + 1,3,4
    Extend {
        #[arg(required = true, num_args = 1..)]
        blocks: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Search for a quiddity sequence containing a block
    Embed {
        seq: String,
        /// Longest host sequence tried by the search
        #[arg(long, default_value_t = 12)]
        bound: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate a word in S, T, U (or a matrix [[a,b],[c,d]]) and reduce it
    Reduce {
        word: String,
        #[command(flatten)]
        out: Output,
    },
    /// Print a window of a positive SL2-tiling, or extract its factors
    Tiling(TilingArgs),
    /// Triangulation and dual tree of a quiddity sequence
    Tree {
        seq: String,
        /// Root side r, the side from vertex r to r+1 (default n-1)
        #[arg(long)]
        root: Option<usize>,
        /// With --format dot, draw the triangulation instead of the tree
        #[arg(long)]
        polygon: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct TilingArgs {
    /// Use the closed-form example tiling fractured at row and column 0
    #[arg(long, conflicts_with_all = ["seed", "extract"])]
    formula: bool,
    /// Initial matrix [[a(0,0),a(0,1)],[a(1,0),a(1,1)]]
    #[arg(long, requires_all = ["kfile", "lfile"])]
    seed: Option<String>,
    /// JSON object of column factors, {"j": k_j, ...}
    #[arg(long)]
    kfile: Option<String>,
    /// JSON object of row factors, {"i": l_i, ...}
    #[arg(long)]
    lfile: Option<String>,
    /// Rows and columns as i0:i1,j0:j1
    #[arg(long, default_value = "-2:2,-2:2", allow_hyphen_values = true)]
    window: String,
    /// Read a window (JSON with i_range, j_range, values) and print its factors
    #[arg(long)]
    extract: Option<String>,
    #[command(flatten)]
    out: Output,
}

/// A failed command: the message and the exit status.
struct Failure(String, u8);

fn usage(e: impl Display) -> Failure {
    Failure(e.to_string(), 2)
}

/// Maps engine errors: malformed input is a usage error, everything else a
/// domain answer.
fn engine(e: Error) -> Failure {
    let code = match e {
        Error::TooShort(_)
        | Error::NonPositiveEntry { .. }
        | Error::Parse(_)
        | Error::InvalidInput(_)
        | Error::OutOfRange { .. }
        | Error::NotUnimodular { .. }
        | Error::MissingFactor { .. }
        | Error::NotBasic(_)
        | Error::NotSuperBasic(_) => 2,
        _ => 1,
    };
    Failure(e.to_string(), code)
}

type Outcome = Result<(String, u8), Failure>;

fn big(x: impl Display) -> Value {
    Value::Number(x.to_string().parse().expect("integers are JSON numbers"))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn seq_json(s: &[u64]) -> Value {
    json!(s)
}

fn brute_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("FRIEZE_BRUTE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("FRIEZE_BRUTE_CAP={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_BRUTE_CAP),
    }
}

fn parse_seq(text: &str) -> Result<Vec<u64>, Failure> {
    parse_sequence(text).map_err(engine)
}

fn verify(seq: &str, format: Format) -> Outcome {
    let s = parse_seq(seq)?;
    let valid = is_eta(&s).map_err(engine)?;
    if !valid {
        let body = match format {
            Format::Json => pretty(&json!({"is_quiddity": false, "n": s.len()})),
            _ => format!("is_quiddity: false\nn: {}\n", s.len()),
        };
        return Ok((body, 1));
    }
    let q = EtaSeq::new(s).map_err(engine)?;
    let c = classify(&q);
    let canon = canonicalize(&q);
    let body = match format {
        Format::Json => pretty(&json!({
            "is_quiddity": true,
            "n": q.len(),
            "period": c.period,
            "category": c.category.to_string(),
            "canon": seq_json(canon.canon.entries()),
            "orbit_size": canon.orbit_size,
        })),
        _ => format!(
            "is_quiddity: true\nn: {}\nperiod: {}\ncategory: {}\ncanon: {}\norbit_size: {}\n",
            q.len(),
            c.period,
            c.category,
            canon.canon,
            canon.orbit_size
        ),
    };
    Ok((body, 0))
}

fn frieze(seq: &str, format: Format) -> Outcome {
    let s = parse_seq(seq)?;
    let valid = is_eta(&s).map_err(engine)?;
    let w = generate_frieze(&s).map_err(engine)?;
    if !valid {
        let why = match first_defect(&w) {
            Some((r, c, v)) => format!("row {r}, column {c} is {v}, expected 1"),
            None => "no closing row of ones".into(),
        };
        return Err(Failure(
            format!("{} is not a quiddity sequence: {why}", format_sequence(&s)),
            1,
        ));
    }
    let body = match format {
        Format::Json => pretty(&w.to_json()),
        _ => w.render_text(),
    };
    Ok((body, 0))
}

fn count(
    n: usize,
    method: MethodArg,
    cap: Option<usize>,
    detail: bool,
    format: Format,
) -> Outcome {
    let m = match method {
        MethodArg::Formula => Method::Formula,
        MethodArg::Brute => {
            let cap = brute_cap(cap)?;
            if n > cap {
                return Err(usage(format!(
                    "brute force is capped at n = {cap}; use --cap or FRIEZE_BRUTE_CAP"
                )));
            }
            if n >= 12 {
                eprintln!("enumerating triangulations of the {n}-gon");
            }
            Method::Brute { cap }
        }
    };
    let k = count_types(n, m).map_err(engine)?;
    let method_name = match method {
        MethodArg::Formula => "formula",
        MethodArg::Brute => "brute",
    };
    let tsa = count_tsa(n).map_err(engine)?;
    let parts = perfect_tripartitions(n);
    let body = match format {
        Format::Json => {
            let mut v = json!({"n": n, "K": big(&k), "method": method_name});
            if detail {
                v["T"] = big(&tsa.t);
                v["S"] = big(&tsa.s);
                v["A"] = big(&tsa.a);
                v["partitions"] = Value::Array(
                    parts
                        .iter()
                        .map(|p| {
                            json!({"parts": p.parts(), "case": p.case.to_string(), "count": big(case_count(p))})
                        })
                        .collect(),
                );
            }
            pretty(&v)
        }
        _ => {
            let mut s = format!("K={k}\n");
            if detail {
                s += &format!("T={} S={} A={}\n", tsa.t, tsa.s, tsa.a);
                for p in &parts {
                    s += &format!("{p} {} {}\n", p.case, case_count(p));
                }
            }
            s
        }
    };
    Ok((body, 0))
}

fn types(n: usize, cap: Option<usize>, format: Format) -> Outcome {
    let cap = brute_cap(cap)?;
    if n >= 12 {
        eprintln!("composing similarity types of the {n}-gon");
    }
    let list = enumerate_types(n, cap).map_err(engine)?;
    let body = match format {
        Format::Json => pretty(&json!({
            "n": n,
            "K": list.len(),
            "types": list.iter().map(|t| seq_json(t.canon.entries())).collect::<Vec<_>>(),
        })),
        Format::Dot => list
            .iter()
            .map(|t| Triangulation::from_quiddity(&t.canon).to_dot())
            .collect(),
        Format::Text => {
            let mut s = format!("K={}\n", list.len());
            for t in &list {
                let c = classify(&t.canon);
                s += &format!(
                    "{} period={} {} orbit={}\n",
                    t.canon, c.period, c.category, t.orbit_size
                );
            }
            s
        }
    };
    Ok((body, 0))
}

fn supplement_cmd(seq: &str, format: Format) -> Outcome {
    let a = BasicSeq::new(parse_seq(seq)?).map_err(engine)?;
    let s = supplement(&a);
    let mut cat = a.entries().to_vec();
    cat.extend_from_slice(s.entries());
    let valid = is_eta(&cat).map_err(engine)?;
    let body = match format {
        Format::Json => pretty(&json!({
            "basic": seq_json(a.entries()),
            "supplement": seq_json(s.entries()),
            "concatenation": seq_json(&cat),
            "is_quiddity": valid,
        })),
        _ => format!(
            "{s}\nconcatenation {} is_quiddity: {valid}\n",
            format_sequence(&cat)
        ),
    };
    Ok((body, if valid { 0 } else { 1 }))
}

fn extend(blocks: &[String], format: Format) -> Outcome {
    let joined = blocks.join(" ");
    let parsed = joined
        .split('+')
        .map(|b| {
            let s = parse_sequence(b.trim()).map_err(engine)?;
            SuperBasicSeq::new(s).map_err(engine)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let q = extend_superbasic(&parsed).map_err(engine)?;
    let valid = is_eta(q.entries()).map_err(engine)?;
    let body = match format {
        Format::Json => pretty(&json!({
            "blocks": parsed.iter().map(|b| seq_json(b.entries())).collect::<Vec<_>>(),
            "sequence": seq_json(q.entries()),
            "is_quiddity": valid,
        })),
        _ => format!("{q}\nis_quiddity: {valid}\n"),
    };
    Ok((body, if valid { 0 } else { 1 }))
}

fn embed(seq: &str, bound: usize, format: Format) -> Outcome {
    let s = parse_seq(seq)?;
    let e = is_embeddable(&s, bound);
    let (status, detail, code) = match &e {
        Embedding::Witness(q) => ("embeddable", q.to_string(), 0),
        Embedding::Obstructed(o) => ("obstructed", o.to_string(), 1),
        Embedding::Unknown { bound } => ("unknown", format!("no host of length <= {bound}"), 1),
    };
    let body = match format {
        Format::Json => {
            let mut v = json!({"sequence": seq_json(&s), "status": status});
            match &e {
                Embedding::Witness(q) => v["witness"] = seq_json(q.entries()),
                _ => v["reason"] = json!(detail),
            }
            pretty(&v)
        }
        _ => format!("{status}: {detail}\n"),
    };
    Ok((body, code))
}

fn reduce(text: &str, format: Format) -> Outcome {
    let text = text.trim();
    let (m, word) = if text.starts_with('[') {
        (text.parse::<Mat2>().map_err(engine)?, None)
    } else {
        let w: Word = text.parse().map_err(engine)?;
        (w.eval(), Some(w))
    };
    let nf = ts_normal_form(&m);
    let order = element_order(&m);
    let body = match format {
        Format::Json => {
            let mut v = json!({
                "matrix": m.to_json(),
                "normal_form": nf.to_string(),
                "order": order.to_string(),
            });
            if let Some(w) = &word {
                v["input"] = json!(w.to_string());
            }
            pretty(&v)
        }
        _ => {
            let mut s = String::new();
            if let Some(w) = &word {
                s += &format!("input: {w}\n");
            }
            s += &format!("matrix: {m}\nnormal form: {nf}\norder: {order}\n");
            s
        }
    };
    Ok((body, 0))
}

fn parse_span(text: &str) -> Result<Span, Failure> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("range {text:?} must look like a:b")))?;
    let a: i64 = a.trim().parse().map_err(|_| usage(format!("bad range start in {text:?}")))?;
    let b: i64 = b.trim().parse().map_err(|_| usage(format!("bad range end in {text:?}")))?;
    Span::new(a, b).map_err(engine)
}

fn parse_window(text: &str) -> Result<(Span, Span), Failure> {
    let (r, c) = text
        .split_once(',')
        .ok_or_else(|| usage(format!("window {text:?} must look like i0:i1,j0:j1")))?;
    Ok((parse_span(r)?, parse_span(c)?))
}

fn read_json(path: &str) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))
}

fn window_from_json(v: &Value) -> Result<TilingWindow, Failure> {
    let span = |key: &str| -> Result<Span, Failure> {
        match v[key].as_array().map(Vec::as_slice) {
            Some([a, b]) => match (a.as_i64(), b.as_i64()) {
                (Some(a), Some(b)) => Span::new(a, b).map_err(engine),
                _ => Err(usage(format!("{key} must hold two integers"))),
            },
            _ => Err(usage(format!("{key} must be [start, end]"))),
        }
    };
    let rows = v["values"]
        .as_array()
        .ok_or_else(|| usage("values must be an array of rows"))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| usage("each row must be an array"))?
                .iter()
                .map(|x| {
                    x.to_string()
                        .parse()
                        .map_err(|_| usage(format!("{x} is not an integer")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    TilingWindow::new(span("i_range")?, span("j_range")?, rows).map_err(engine)
}

fn tiling(args: &TilingArgs) -> Outcome {
    let format = args.out.format;
    if let Some(path) = &args.extract {
        let w = window_from_json(&read_json(path)?)?;
        if let Some((i, j)) = w.unimodularity_defect() {
            return Err(Failure(format!("2x2 minor at ({i},{j}) is not 1"), 1));
        }
        let f = extract_factors(&w).map_err(engine)?;
        let fr = fractures(&f);
        let body = match format {
            Format::Json => pretty(&json!({
                "k": factor_map_json(&f.k),
                "l": factor_map_json(&f.l),
                "fractured_columns": fr.columns.iter().collect::<Vec<_>>(),
                "fractured_rows": fr.rows.iter().collect::<Vec<_>>(),
            })),
            _ => {
                let show = |m: &std::collections::BTreeMap<i64, _>| {
                    m.iter()
                        .map(|(i, v)| format!("{i}:{v}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let list = |s: &std::collections::BTreeSet<i64>| {
                    s.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                };
                format!(
                    "k: {}\nl: {}\nfractured columns: {}\nfractured rows: {}\n",
                    show(&f.k),
                    show(&f.l),
                    list(&fr.columns),
                    list(&fr.rows)
                )
            }
        };
        return Ok((body, 0));
    }
    let (rows, cols) = parse_window(&args.window)?;
    let w = if args.formula {
        formula_window(rows, cols)
    } else {
        let (Some(seed), Some(kf), Some(lf)) = (&args.seed, &args.kfile, &args.lfile) else {
            return Err(usage("give --formula, or --seed with --kfile and --lfile"));
        };
        let seed: Mat2 = seed.parse().map_err(engine)?;
        let factors = FactorVectors {
            k: parse_factor_map(&read_json(kf)?).map_err(engine)?,
            l: parse_factor_map(&read_json(lf)?).map_err(engine)?,
        };
        generate_tiling(&seed, &factors, rows, cols).map_err(engine)?
    };
    let body = match format {
        Format::Json => pretty(&w.to_json()),
        _ => w.render_text(),
    };
    Ok((body, if w.is_positive() { 0 } else { 1 }))
}

fn tree(seq: &str, root: Option<usize>, polygon: bool, format: Format) -> Outcome {
    let q = EtaSeq::new(parse_seq(seq)?).map_err(engine)?;
    let t = Triangulation::from_quiddity(&q);
    let root = root.unwrap_or(q.len() - 1);
    let d = to_dual_tree(&t, root).map_err(engine)?;
    let body = match format {
        Format::Json => {
            let mut v = t.to_json();
            v["root_side"] = json!(root);
            v["bracket"] = json!(d.to_bracket());
            v["readout"] = seq_json(&d.readout());
            pretty(&v)
        }
        Format::Dot if polygon => t.to_dot(),
        Format::Dot => d.to_dot(),
        Format::Text => format!(
            "triangulation: {t}\nroot side: {root}\ntree: {}\nreadout: {}\n",
            d.to_bracket(),
            format_sequence(&d.readout())
        ),
    };
    Ok((body, 0))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { seq, out } => verify(&seq, out.format),
        Command::Frieze { seq, out } => frieze(&seq, out.format),
        Command::Count { n, method, cap, detail, out } => count(n, method, cap, detail, out.format),
        Command::Types { n, cap, out } => types(n, cap, out.format),
        Command::Supplement { seq, out } => supplement_cmd(&seq, out.format),
        Command::Extend { blocks, out } => extend(&blocks, out.format),
        Command::Embed { seq, bound, out } => embed(&seq, bound, out.format),
        Command::Reduce { word, out } => reduce(&word, out.format),
        Command::Tiling(args) => tiling(&args),
        Command::Tree { seq, root, polygon, out } => tree(&seq, root, polygon, out.format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((body, code)) => {
            print!("{body}");
            ExitCode::from(code)
        }
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
