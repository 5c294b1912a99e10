use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hookpairs_core::{
    check_critical_pair, closure, construct_beta, enumerate_partners, hook_factors_all,
    knop_sahi_report_with_cap, leg_length, negative_existence_scan, nodes_with_factor,
    uniqueness_scan, Affine, Composition, Error, Node, SearchBounds, SearchMode, Verdict,
    DEFAULT_MONOMIAL_CAP,
};
use serde::Serialize;
use serde_json::json;

const CAP_ENV: &str = "HOOKPAIRS_FEASIBILITY_CAP";

#[derive(Parser)]
#[command(name = "hookpairs", version, about = "Hook-length factors, critical pairs of compositions and nonsymmetric Jack polynomials")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw the diagram of a composition and list its hook factors at t = κ+1.
    Hooks { alpha: Composition },
    /// Build the critical partner for a node, or for every node carrying a factor.
    Construct {
        alpha: Composition,
        #[command(flatten)]
        target: Target,
    },
    /// Check whether (α, β) is a critical pair for κ = −n/m.
    Verify {
        alpha: Composition,
        beta: Composition,
        #[arg(long, value_name = "m,n")]
        factor: Pair,
        /// Accept m = 0 (equal rank vectors).
        #[arg(long)]
        extended: bool,
    },
    /// Brute-force every critical partner for a factor.
    Enumerate {
        alpha: Composition,
        #[arg(long, value_name = "m,n")]
        factor: Pair,
        /// Ambient length searched (default ℓ(α)+|α|).
        #[arg(long, value_name = "K")]
        nmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::RankPermutation)]
        mode: Mode,
        /// Largest ambient length the rank-permutation search accepts.
        #[arg(long, default_value_t = 9)]
        perm_cap: usize,
    },
    /// Iterate the construction over every node proportional to a factor.
    Closure {
        alpha: Composition,
        #[arg(long, value_name = "m,n")]
        factor: Pair,
        #[arg(long, value_name = "D", default_value_t = 2)]
        depth: usize,
    },
    /// Compute ζ_α exactly and check the Knop–Sahi properties.
    Jack {
        alpha: Composition,
        /// Number of variables (default: the written length of α).
        #[arg(long, value_name = "N")]
        vars: Option<usize>,
    },
    /// Run a scan over a corpus of compositions.
    Scan {
        #[arg(value_enum)]
        kind: ScanKind,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Largest ambient length searched by the uniqueness scan.
        #[arg(long, value_name = "K", default_value_t = 9)]
        nmax: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(long, value_name = "r,c")]
    node: Option<Pair>,
    #[arg(long, value_name = "m,n")]
    factor: Option<Pair>,
}

#[derive(Args)]
struct CorpusArgs {
    /// Include every composition up to this weight.
    #[arg(long, value_name = "W", default_value_t = 5)]
    max_weight: u32,
    #[arg(long, value_name = "L", default_value_t = 3)]
    max_length: usize,
    /// Restrict the generated corpus to partitions.
    #[arg(long)]
    partitions: bool,
    /// Explicit corpus members; replaces the generated corpus.
    #[arg(long = "alpha", value_name = "COMPOSITION")]
    explicit: Vec<Composition>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    RankPermutation,
    Naive,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanKind {
    Uniqueness,
    Negative,
}

#[derive(Clone, Copy)]
struct Pair(u64, u64);

impl FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| format!("expected two comma-separated integers, got {s:?}"))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("{x:?} is not a nonnegative integer"))
        };
        Ok(Pair(parse(a)?, parse(b)?))
    }
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    json: serde_json::Value,
    success: bool,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Output { text, json, success: true }
    }
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn diagram(alpha: &Composition) -> String {
    let mut out = String::new();
    let width = alpha.ambient().to_string().len();
    for i in 1..=alpha.ambient() {
        let _ = write!(out, "{i:>width$} |o");
        for _ in 0..alpha.part(i) {
            out.push_str(" #");
        }
        out.push('\n');
    }
    out
}

fn hooks(alpha: &Composition) -> Result<Output, Failure> {
    let factors = hook_factors_all(alpha, Affine::kappa_plus_one());
    let mut text = diagram(alpha);
    let mut rows = Vec::new();
    if !factors.is_empty() {
        text.push_str("\nnode     leg  factor\n");
    }
    for h in &factors {
        let leg = leg_length(alpha, h.node)?;
        let _ = writeln!(text, "{:<8} {leg:>3}  {h}", h.node.to_string());
        rows.push(json!({ "node": [h.node.row, h.node.col], "leg": leg, "factor": h.to_string() }));
    }
    let json = json!({
        "composition": alpha,
        "ranks": alpha.rank_vector(),
        "hooks": rows,
    });
    Ok(Output::ok(text, json))
}

fn construct(alpha: &Composition, target: &Target) -> Result<Output, Failure> {
    let targets: Vec<Node> = match (target.node, target.factor) {
        (Some(Pair(r, c)), _) => {
            let col = u32::try_from(c).map_err(|_| Failure::Domain(format!("column {c} out of range")))?;
            vec![Node::new(r as usize, col)]
        }
        (None, Some(Pair(m, n))) => {
            if m == 0 || n == 0 {
                return Err(Failure::Domain(format!("factor {m}κ+{n} needs positive coefficients")));
            }
            let found: Vec<Node> = nodes_with_factor(alpha, m, n).into_iter().map(|h| h.node).collect();
            if found.is_empty() {
                return Err(Failure::Domain(format!("no node of {alpha} has a factor proportional to {m}κ+{n}")));
            }
            found
        }
        (None, None) => unreachable!("clap requires a target"),
    };
    let mut text = String::new();
    let mut runs = Vec::new();
    for node in targets {
        let built = construct_beta(alpha, node)?;
        let tr = &built.trace;
        let beta = built.beta.trimmed();
        if !text.is_empty() {
            text.push('\n');
        }
        let _ = writeln!(text, "node {node}: factor {}κ+{}", tr.m, tr.n);
        let _ = writeln!(text, "beta = {beta}");
        let _ = writeln!(text, "ranks = {}", join(&beta.rank_vector()));
        let _ = writeln!(
            text,
            "l={} m={} n={} N={} T={} t={} k={} T0={}",
            tr.shift, tr.m, tr.n, tr.ambient, tr.steps, tr.t, tr.k, tr.step_bound
        );
        let _ = writeln!(text, "w = {}", join(&tr.w));
        let _ = writeln!(text, "xi = {}", join(&tr.xi));
        runs.push(json!({ "beta": beta, "trace": to_json(tr) }));
    }
    Ok(Output::ok(text, json!({ "composition": alpha, "constructions": runs })))
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn verify(alpha: &Composition, beta: &Composition, Pair(m, n): Pair, extended: bool) -> Result<Output, Failure> {
    let verdict = check_critical_pair(alpha, beta, m, n, extended)?;
    Ok(match verdict {
        Verdict::Certified(cert) => {
            let text = format!(
                "certified: critical pair for κ = -{n}/{m}\nalpha = {}\nbeta  = {}\nquotients = {}\n",
                cert.alpha,
                cert.beta,
                join(&cert.quotients)
            );
            Output::ok(text, json!({ "certified": true, "certificate": to_json(&cert) }))
        }
        Verdict::NotTriangle => Output {
            text: format!("refused: {alpha} ⊳ {beta} does not hold\n"),
            json: json!({ "certified": false, "reason": "not-triangle" }),
            success: false,
        },
        Verdict::NotDivisible { index } => Output {
            text: format!("refused: index {index} is not divisible by {m}κ+{n}\n"),
            json: json!({ "certified": false, "reason": "not-divisible", "index": index }),
            success: false,
        },
    })
}

fn enumerate(alpha: &Composition, Pair(m, n): Pair, nmax: Option<usize>, mode: Mode, perm_cap: usize) -> Result<Output, Failure> {
    let mode = match mode {
        Mode::RankPermutation => SearchMode::RankPermutation,
        Mode::Naive => SearchMode::NaiveComposition,
    };
    let mut bounds = SearchBounds::with_mode(mode).permutation_cap(perm_cap);
    if let Some(k) = nmax {
        bounds = bounds.n_max(k);
    }
    let ambient = bounds.resolve(alpha)?;
    let partners = enumerate_partners(alpha, m, n, &bounds)?;
    let mut text = format!("{} partner(s) within {ambient} parts\n", partners.len());
    for beta in &partners {
        let _ = writeln!(text, "{beta}");
    }
    let json = json!({
        "composition": alpha,
        "m": m,
        "n": n,
        "n_max": ambient,
        "mode": mode,
        "partners": partners,
    });
    Ok(Output::ok(text, json))
}

fn closure_cmd(alpha: &Composition, Pair(m, n): Pair, depth: usize) -> Result<Output, Failure> {
    let cl = closure(alpha, m, n, depth)?;
    let mut text = format!("{} member(s) up to depth {depth}\n", cl.members.len());
    for member in &cl.members {
        let _ = writeln!(
            text,
            "{}  depth {}  from {} at {} ({}κ+{})",
            member.beta, member.depth, member.parent, member.node, member.factor.0, member.factor.1
        );
    }
    Ok(Output::ok(text, to_json(&cl)))
}

fn feasibility_cap() -> Result<u64, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{CAP_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_MONOMIAL_CAP),
    }
}

fn jack(alpha: &Composition, vars: Option<usize>) -> Result<Output, Failure> {
    let nvars = vars.unwrap_or(alpha.ambient());
    let report = knop_sahi_report_with_cap(alpha, nvars, feasibility_cap()?)?;
    let mut text = format!("zeta_({}) in {nvars} variables:\n", report.alpha);
    for (e, c) in report.zeta.terms() {
        let _ = writeln!(text, "  x^({})  {c}", join(e));
    }
    let _ = writeln!(text, "hook product = {}", report.hook_product);
    let _ = writeln!(text, "denominator lcm = {}", report.denominator_lcm);
    let poles: Vec<String> = report
        .pole_factors
        .iter()
        .map(|p| format!("({})^{}", Affine::integer(p.m as i64, p.n), p.multiplicity))
        .collect();
    let _ = writeln!(text, "pole factors = {}", if poles.is_empty() { "none".into() } else { poles.join(" ") });
    let _ = writeln!(text, "knop_sahi_ok = {}", report.knop_sahi_ok);
    let trailing = report.trailing_coeff_ok.map_or("n/a".to_string(), |b| b.to_string());
    let _ = writeln!(text, "trailing_coeff_ok = {trailing}");
    let _ = writeln!(text, "poles_within_hooks = {}", report.poles_within_hooks);
    Ok(Output::ok(text, to_json(&report)))
}

fn corpus(args: &CorpusArgs) -> Vec<Composition> {
    if !args.explicit.is_empty() {
        return args.explicit.clone();
    }
    fn go(left: u32, slots: usize, acc: &mut Vec<u32>, out: &mut std::collections::BTreeSet<Composition>) {
        if slots == 0 {
            out.insert(Composition::new(acc.clone()).trimmed());
            return;
        }
        for x in 0..=left {
            acc.push(x);
            go(left - x, slots - 1, acc, out);
            acc.pop();
        }
    }
    let mut all = std::collections::BTreeSet::new();
    go(args.max_weight, args.max_length, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|a| !a.is_zero() && (!args.partitions || a.is_partition()))
        .collect()
}

fn scan(kind: ScanKind, args: &CorpusArgs, nmax: usize) -> Result<Output, Failure> {
    let corpus = corpus(args);
    match kind {
        ScanKind::Uniqueness => {
            let report = uniqueness_scan(&corpus, nmax)?;
            let mut text = format!(
                "{} composition(s), {} coprime and {} non-coprime multiplicity-one factor(s)\n",
                corpus.len(),
                report.coprime.len(),
                report.non_coprime.len()
            );
            for r in report.records() {
                let mark = if r.flagged { " FLAGGED" } else { "" };
                let partial = if r.complete { "" } else { " (partial search)" };
                let _ = writeln!(
                    text,
                    "{}  {}  {} partner(s){partial}{mark}",
                    r.alpha,
                    Affine::integer(r.m as i64, r.n as i64),
                    r.partner_count
                );
            }
            let _ = writeln!(text, "flagged: {}", report.flagged().count());
            Ok(Output::ok(text, to_json(&report)))
        }
        ScanKind::Negative => {
            let report = negative_existence_scan(&corpus);
            let mut text = format!(
                "{} composition(s), {} pair(s) checked, {} parallel, {} violation(s)\n",
                corpus.len(),
                report.pairs_checked,
                report.parallel_pairs,
                report.violations.len()
            );
            for v in &report.violations {
                let _ = writeln!(text, "{} / {}  ratio {}:{}", v.alpha, v.beta, v.m, v.n);
            }
            Ok(Output::ok(text, to_json(&report)))
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Hooks { alpha } => hooks(alpha),
        Command::Construct { alpha, target } => construct(alpha, target),
        Command::Verify { alpha, beta, factor, extended } => verify(alpha, beta, *factor, *extended),
        Command::Enumerate { alpha, factor, nmax, mode, perm_cap } => {
            enumerate(alpha, *factor, *nmax, *mode, *perm_cap)
        }
        Command::Closure { alpha, factor, depth } => closure_cmd(alpha, *factor, *depth),
        Command::Jack { alpha, vars } => jack(alpha, *vars),
        Command::Scan { kind, corpus, nmax } => scan(*kind, corpus, *nmax),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json values serialize"));
            } else {
                print!("{}", out.text);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            emit_error(cli.json, &msg);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            emit_error(cli.json, &msg);
            ExitCode::from(2)
        }
    }
}

fn emit_error(json: bool, msg: &str) {
    if json {
        println!("{}", json!({ "error": msg }));
    }
    eprintln!("error: {msg}");
}
