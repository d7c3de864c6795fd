//! The `ualg` command line. [`run`] parses arguments, runs one subcommand
//! and returns the exit code: 0 when something was computed, 1 for usage or
//! input errors and rejected certificates, 2 when a cap or budget ran out.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::json::{load, AlgebraFile};
use crate::algebra::{quotient, sg, FiniteAlgebra, Subset, DEFAULT_CAP};
use crate::catalog;
use crate::classctx::{
    self, decompose, fullify, rel_con, weak_es_search, Bounds, Certificate, ClassContext, Limits, Mode,
    SearchBounds, Verdict, Witness, DEFAULT_NODE_BUDGET,
};
use crate::congruence::{con_all_with_cap, lattice_props, CongruenceSet, Partition, DEFAULT_LATTICE_CAP};
use crate::error::{Error, Result};
use crate::maltsev::{self, Schema};

/// Largest arity tried by `terms nu` when no `--arity` is given.
pub const NU_SWEEP_MAX: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "ualg", version, about = "Finite universal algebra: congruences, epic subalgebras, weak ES witnesses, Maltsev terms")]
struct Cli {
    #[command(flatten)]
    opts: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Generators of the class: comma separated JSON files or `catalog:key`.
    #[arg(long, global = true)]
    class: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "q")]
    mode: ModeArg,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest universe any construction may build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Backtracking nodes per homomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Worker threads for the weak ES search.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Q,
    V,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// The ambient algebra B.
    b: String,
    /// Elements of the subalgebra A, comma separated.
    #[arg(long)]
    sub: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All congruences.
    Con { alg: String },
    /// Congruences relative to the class.
    Relcon { alg: String },
    /// Generated subuniverse with witness terms.
    Sg {
        alg: String,
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Homomorphisms between two algebras.
    Homs { from: String, to: String },
    /// Quotient by a congruence given as blocks, e.g. "0 1|2".
    Quotient { alg: String, theta: String },
    /// Subdirect decomposition into relatively irreducible factors.
    Decompose { alg: String },
    /// Whether homomorphisms into the class are determined on A
    Epic(PairArgs),
    /// Fullness of A in B relative to the class
    Full(PairArgs),
    /// Quotient making A full, with its almost-total witness
    Fullify(PairArgs),
    /// Full and epic together
    FullyEpic(PairArgs),
    /// Epicness through the congruence conditions
    DecideEpic(PairArgs),
    /// Bounded search for a failure of weak ES.
    Weakes {
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        max_gens: usize,
        #[arg(long)]
        max_width: usize,
    },
    /// Free algebra of the class.
    Free {
        #[arg(long, default_value_t = 2)]
        vars: usize,
    },
    /// Maltsev condition terms.
    Terms {
        schema: SchemaArg,
        /// Arity for `nu`; without it arities 3..=5 are tried.
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Pixley term or a constructive failure of weak ES.
    ArithWitness,
    /// Re-checks a certificate file.
    VerifyCert { file: String },
    #[command(subcommand)]
    /// Built-in algebras
    Catalog(CatalogCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemaArg {
    Nu,
    Majority,
    Pixley,
    Maltsev,
    Discriminator,
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Dump { key: String },
}

/// Runs the command line on `argv` (program name first), printing to
/// stdout and stderr, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(Outcome { text, code }) => {
            print!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_budget() {
                2
            } else {
                1
            }
        }
    }
}

struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

/// Splits on commas outside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out
}

/// A JSON file or `catalog:key`.
pub fn load_algebra(source: &str) -> Result<FiniteAlgebra> {
    match source.strip_prefix("catalog:") {
        Some(key) => Ok(catalog::build(key)?.algebra),
        None => load(Path::new(source)),
    }
}

fn element_names(source: &str, a: &FiniteAlgebra) -> Vec<String> {
    source
        .strip_prefix("catalog:")
        .and_then(|k| catalog::build(k).ok())
        .map(|e| e.element_names)
        .unwrap_or_else(|| (0..a.size()).map(|i| i.to_string()).collect())
}

fn context(opts: &Global) -> Result<ClassContext> {
    let text = opts
        .class
        .as_deref()
        .ok_or_else(|| Error::Parse("this subcommand needs --class".into()))?;
    let gens = split_top_level(text)
        .into_iter()
        .map(load_algebra)
        .collect::<Result<Vec<_>>>()?;
    let mode = match opts.mode {
        ModeArg::Q => Mode::Quasivariety,
        ModeArg::V => Mode::Variety,
    };
    let limits = Limits {
        cap: opts.cap,
        node_budget: opts.node_budget,
        lattice_cap: DEFAULT_LATTICE_CAP,
    };
    ClassContext::with_limits(gens, mode, limits)
}

fn parse_elements(text: &str, n: usize) -> Result<Subset> {
    let elems = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("`{s}` is not an element index")))
        })
        .collect::<Result<Vec<_>>>()?;
    Subset::new(n, elems)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn lattice_json(c: &CongruenceSet) -> Value {
    let props = lattice_props(c);
    json!({
        "size": c.ground_size(),
        "relative_to": c.relative_to(),
        "count": c.len(),
        "partitions": c.partitions(),
        "distributive": props.distributive,
        "permuting": props.permuting,
    })
}

fn lattice_text(c: &CongruenceSet) -> String {
    let props = lattice_props(c);
    let mut s = String::new();
    match c.relative_to() {
        Some(k) => writeln!(s, "{} congruences relative to {k}", c.len()),
        None => writeln!(s, "{} congruences", c.len()),
    }
    .unwrap();
    for p in c.iter() {
        writeln!(s, "  {p}").unwrap();
    }
    writeln!(s, "distributive: {}", props.distributive).unwrap();
    writeln!(s, "permuting: {}", props.permuting).unwrap();
    s
}

fn tables_text(a: &FiniteAlgebra) -> String {
    let mut s = String::new();
    for (op, (symbol, arity)) in a.signature().symbols().iter().enumerate() {
        let table: Vec<String> = a.table(op).iter().map(|v| v.to_string()).collect();
        writeln!(s, "  {symbol}/{arity}: {}", table.join(" ")).unwrap();
    }
    s
}

fn certificate_text(cert: &Certificate) -> String {
    let mut s = String::new();
    writeln!(s, "verdict: {}", verdict_name(cert.verdict)).unwrap();
    writeln!(s, "class: {}", class_label(cert)).unwrap();
    match &cert.witness {
        Witness::Pair { a, .. } => writeln!(s, "A = {a:?}"),
        Witness::HomPair { a, route, target, g, h, .. } => writeln!(
            s,
            "A = {a:?}\nroute: {route:?} into generator {}\ng = {g:?}\nh = {h:?}",
            target.generator
        ),
        Witness::Retraction { a, phi, retraction, .. } => {
            writeln!(s, "A = {a:?}\nphi = {phi}\nretraction = {retraction:?}")
        }
        Witness::CongruencePair { a, theta, phi, .. } => writeln!(s, "A = {a:?}\ntheta = {theta}\nphi = {phi}"),
        Witness::NotFull { a, reason, .. } => writeln!(s, "A = {a:?}\nreason: {reason:?}"),
        Witness::Failure {
            ambient,
            a,
            b_witness,
            theta,
            quotient_a,
            quotient,
        } => writeln!(
            s,
            "B: {} elements in a product over generators {:?}\nA = {a:?}\nwitness b = {b_witness}\ntheta = {theta}\nB/theta has {} elements, A/theta = {quotient_a:?}",
            ambient.elements.len(),
            ambient.factors,
            quotient.size
        ),
        Witness::Term { schema, arity, term } => writeln!(s, "{schema} term of arity {arity}: {term}"),
        Witness::NoTerm { schema, arity } => writeln!(s, "no {schema} term of arity {arity}"),
        Witness::Search {} => Ok(()),
        Witness::Diagnostic { message } => writeln!(s, "{message}"),
    }
    .unwrap();
    let b = &cert.bounds;
    if *b != Bounds::default() {
        let mut parts = Vec::new();
        if let Some(v) = b.max_b_size {
            parts.push(format!("max_b_size={v}"));
        }
        if let Some(v) = b.max_generators {
            parts.push(format!("max_generators={v}"));
        }
        if let Some(v) = b.max_product_width {
            parts.push(format!("max_product_width={v}"));
        }
        if let Some(v) = b.cap {
            parts.push(format!("cap={v}"));
        }
        writeln!(s, "bounds: {}", parts.join(" ")).unwrap();
    }
    s
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_else(|| format!("{v:?}"))
}

fn class_label(cert: &Certificate) -> String {
    let letter = match cert.context.mode {
        Mode::Quasivariety => 'Q',
        Mode::Variety => 'V',
    };
    format!("{letter}({})", cert.context.generators.join(", "))
}

fn emit(cert: &Certificate, json_out: bool) -> String {
    if json_out {
        let mut s = cert.to_json();
        s.push('\n');
        s
    } else {
        certificate_text(cert)
    }
}

fn pair(k: &ClassContext, p: &PairArgs) -> Result<(FiniteAlgebra, Subset)> {
    let b = load_algebra(&p.b)?;
    if b.signature() != k.signature() {
        return Err(Error::SignatureMismatch(format!("`{}` does not match the class", b.name())));
    }
    let a = parse_elements(&p.sub, b.size())?;
    b.check_closed(&a)?;
    Ok((b, a))
}

fn term_certificate(k: &ClassContext, schema: Schema, cap: usize) -> Result<Certificate> {
    let bounds = Bounds {
        cap: Some(cap),
        ..Bounds::default()
    };
    let name = schema.name().to_string();
    let arity = schema.arity();
    let cert = match maltsev::find_term(k, schema, cap)? {
        Some(term) => Certificate::new(Verdict::TermFound, k, Witness::Term { schema: name, arity, term }),
        None => Certificate::new(Verdict::NoTerm, k, Witness::NoTerm { schema: name, arity }),
    };
    Ok(cert.with_bounds(bounds))
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.opts;
    if let Some(n) = opts.threads {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let json_out = opts.json;
    let text = match &cli.cmd {
        Command::Con { alg } => {
            let a = load_algebra(alg)?;
            let c = con_all_with_cap(&a, DEFAULT_LATTICE_CAP)?;
            if json_out {
                pretty(&lattice_json(&c))
            } else {
                lattice_text(&c)
            }
        }
        Command::Relcon { alg } => {
            let k = context(opts)?;
            let a = load_algebra(alg)?;
            let c = rel_con(&a, &k)?;
            if json_out {
                pretty(&lattice_json(&c))
            } else {
                lattice_text(&c)
            }
        }
        Command::Sg { alg, gens } => {
            let a = load_algebra(alg)?;
            let names = element_names(alg, &a);
            let g = parse_elements(gens, a.size())?;
            let s = sg(&a, &g)?;
            let rows: Vec<(usize, String)> = s
                .elements
                .iter()
                .map(|e| (e, s.witness(e).expect("generated element").to_string()))
                .collect();
            if json_out {
                let w: Vec<Value> = rows.iter().map(|(e, t)| json!({"element": e, "term": t})).collect();
                pretty(&json!({"generators": s.generators, "elements": s.elements.elems(), "witnesses": w}))
            } else {
                let mut out = format!("Sg{:?} has {} elements\n", s.generators, s.elements.len());
                for (e, t) in rows {
                    writeln!(out, "  {e} ({}): {t}", names[e]).unwrap();
                }
                out
            }
        }
        Command::Homs { from, to } => {
            let b = load_algebra(from)?;
            let c = load_algebra(to)?;
            let h = classctx::homs_with_budget(&b, &c, opts.node_budget)?;
            if json_out {
                pretty(&json!({"count": h.len(), "homs": h}))
            } else {
                let mut out = format!("{} homomorphisms {} -> {}\n", h.len(), b.name(), c.name());
                for f in &h {
                    writeln!(out, "  {f:?}").unwrap();
                }
                out
            }
        }
        Command::Quotient { alg, theta } => {
            let a = load_algebra(alg)?;
            let p = Partition::parse(theta)?;
            let (q, proj) = quotient(&a, &p)?;
            if json_out {
                pretty(&json!({"theta": p, "projection": proj, "quotient": AlgebraFile::from_algebra(&q)}))
            } else {
                let mut out = format!("{} / {p} has {} elements\nprojection: {proj:?}\n", a.name(), q.size());
                out.push_str(&tables_text(&q));
                out
            }
        }
        Command::Decompose { alg } => {
            let k = context(opts)?;
            let a = load_algebra(alg)?;
            let d = decompose(&a, &k)?;
            if json_out {
                let f: Vec<Value> = d
                    .factors
                    .iter()
                    .map(|f| {
                        json!({"theta": f.theta, "projection": f.projection, "quotient": AlgebraFile::from_algebra(&f.quotient)})
                    })
                    .collect();
                pretty(&json!({"factors": f, "embedding": d.embedding(a.size())}))
            } else {
                let mut out = format!("{} factors\n", d.factors.len());
                for f in &d.factors {
                    writeln!(out, "  theta = {} ({} elements)", f.theta, f.quotient.size()).unwrap();
                }
                out
            }
        }
        Command::Epic(p) => {
            let k = context(opts)?;
            let (b, a) = pair(&k, p)?;
            emit(&classctx::is_epic(&a, &b, &k)?, json_out)
        }
        Command::Full(p) => {
            let k = context(opts)?;
            let (b, a) = pair(&k, p)?;
            emit(&classctx::is_full(&a, &b, &k)?, json_out)
        }
        Command::FullyEpic(p) => {
            let k = context(opts)?;
            let (b, a) = pair(&k, p)?;
            emit(&classctx::is_fully_epic(&a, &b, &k)?, json_out)
        }
        Command::DecideEpic(p) => {
            let k = context(opts)?;
            let (b, a) = pair(&k, p)?;
            emit(&classctx::decide_epic_thm(&a, &b, &k)?, json_out)
        }
        Command::Fullify(p) => {
            let k = context(opts)?;
            let (b, a) = pair(&k, p)?;
            let f = fullify(&a, &b, &k)?;
            if json_out {
                pretty(&json!({
                    "witness": f.witness,
                    "theta": f.theta,
                    "projection": f.projection,
                    "quotient": AlgebraFile::from_algebra(&f.quotient),
                    "sub": f.sub.elems(),
                }))
            } else {
                format!(
                    "witness b = {}\ntheta = {}\nB/theta has {} elements, A/theta = {:?}\n",
                    f.witness,
                    f.theta,
                    f.quotient.size(),
                    f.sub.elems()
                )
            }
        }
        Command::Weakes {
            max_size,
            max_gens,
            max_width,
        } => {
            let k = context(opts)?;
            let cert = weak_es_search(&k, SearchBounds::new(*max_size, *max_gens, *max_width))?;
            emit(&cert, json_out)
        }
        Command::Free { vars } => {
            let k = context(opts)?;
            let f = maltsev::free(&k, *vars, opts.cap)?;
            if json_out {
                let elems: Vec<Value> = (0..f.size())
                    .map(|e| json!({"term": f.witnesses[e].to_string(), "tuple": f.tuples[e]}))
                    .collect();
                pretty(&json!({
                    "variables": f.variables,
                    "generators": f.generators,
                    "elements": elems,
                    "algebra": AlgebraFile::from_algebra(&f.base),
                }))
            } else {
                let mut out = format!("free algebra of {} on {} has {} elements\n", k.describe(), f.variables.join(", "), f.size());
                for (e, w) in f.witnesses.iter().enumerate() {
                    writeln!(out, "  {e}: {w}").unwrap();
                }
                out
            }
        }
        Command::Terms { schema, arity } => {
            let k = context(opts)?;
            let schemas: Vec<Schema> = match (schema, arity) {
                (SchemaArg::Nu, Some(n)) => vec![Schema::from_name("nu", *n)?],
                (SchemaArg::Nu, None) => (3..=NU_SWEEP_MAX).map(Schema::NearUnanimity).collect(),
                (_, Some(_)) => return Err(Error::Parse("--arity applies to nu only".into())),
                (SchemaArg::Majority, None) => vec![Schema::Majority],
                (SchemaArg::Pixley, None) => vec![Schema::Pixley],
                (SchemaArg::Maltsev, None) => vec![Schema::Maltsev],
                (SchemaArg::Discriminator, None) => vec![Schema::Discriminator],
            };
            let sweep = schemas.len() > 1;
            let mut certs = Vec::new();
            for s in schemas {
                let c = term_certificate(&k, s, opts.cap)?;
                let found = c.is(Verdict::TermFound);
                certs.push(c);
                if found {
                    break;
                }
            }
            if json_out {
                if sweep {
                    let v: Vec<Value> = certs
                        .iter()
                        .map(|c| serde_json::to_value(c).expect("certificates serialize"))
                        .collect();
                    pretty(&json!({"sweep": {"from": 3, "to": NU_SWEEP_MAX}, "certificates": v}))
                } else {
                    emit(&certs[0], true)
                }
            } else {
                let mut out = String::new();
                if sweep {
                    writeln!(out, "note: nu arities swept over 3..={NU_SWEEP_MAX} only (use --arity for others)").unwrap();
                }
                for c in &certs {
                    out.push_str(&certificate_text(c));
                }
                out
            }
        }
        Command::ArithWitness => {
            let k = context(opts)?;
            emit(&maltsev::arithmeticity_witness(&k, opts.cap)?, json_out)
        }
        Command::VerifyCert { file } => {
            let text = std::fs::read_to_string(file)?;
            let cert = Certificate::from_json(&text)?;
            match classctx::verify(&cert) {
                Ok(()) => {
                    if json_out {
                        pretty(&json!({"verified": true, "verdict": cert.verdict}))
                    } else {
                        format!("verified ({})\n", verdict_name(cert.verdict))
                    }
                }
                Err(Error::CertificateRejected(why)) => {
                    let text = if json_out {
                        pretty(&json!({"verified": false, "reason": why}))
                    } else {
                        format!("rejected: {why}\n")
                    };
                    return Ok(Outcome { text, code: 1 });
                }
                Err(e) => return Err(e),
            }
        }
        Command::Catalog(CatalogCmd::List) => {
            let l = catalog::list();
            if json_out {
                let v: Vec<Value> = l.iter().map(|(k, d)| json!({"key": k, "description": d})).collect();
                pretty(&Value::Array(v))
            } else {
                l.iter().map(|(k, d)| format!("{k:<28} {d}\n")).collect()
            }
        }
        Command::Catalog(CatalogCmd::Dump { key }) => {
            let e = catalog::build(key)?;
            let mut s = serde_json::to_string_pretty(&AlgebraFile::from_algebra(&e.algebra)).expect("algebras serialize");
            s.push('\n');
            s
        }
    };
    Ok(Outcome::ok(text))
}
