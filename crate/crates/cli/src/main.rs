use std::fmt::Display;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use ballgap_core::binom::BinomTable;
use ballgap_core::gap::{
    comparison_intervals, dim_prop_bounds, nab_minus, plane_case, plane_chain, plane_chain_closed_form,
    plane_step, verify_gap_argument,
};
use ballgap_core::hermitian::mapfile::{format_map, parse_map};
use ballgap_core::hermitian::{
    null_prolongation, orthogonality_certificate_with_pivot, sharpness_map, span_obstruction_check, SignedMap,
};
use ballgap_core::poly::text::{format_poly, parse_poly_line};
use ballgap_core::poly::image_span_dim;
use ballgap_core::verify::{self, GreenConfig, RestrictionConfig, Summary};
use ballgap_core::{classify_gap, gap_intervals, Error, NabForm, Poly};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

mod render;

use render::{human_poly, Line};

#[derive(Parser)]
#[command(name = "ballgap", version, about = "Macaulay bounds, gap intervals and orthogonal maps between generalized balls")]
struct Cli {
    /// Emit line-delimited JSON records.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Macaulay representation of A at level n and its index operations.
    Macaulay { a: BigUint, n: u32 },
    /// Binomial coefficient C(a,b) with C(a,0) = 0 and C(a,b) = 0 for a < b.
    Binom { a: u64, b: u64 },
    /// Gap intervals for maps from P^n, or the classification of N.
    Gap { n: u64, target: Option<u64> },
    /// Canonical form N(n;a,b), its descent and the plane bounds.
    Nab { n: u64, a: u64, b: u64 },
    /// Arithmetic of the two-subspace argument for one (n,a,b).
    GapArgument { n: u64, a: u64, b: u64 },
    /// Propagation of plane images: l-planes to l'-planes.
    Plane {
        ell: u64,
        ell_prime: u64,
        #[arg(long, default_value_t = 1)]
        steps: u64,
    },
    /// Batch verification suites.
    Verify(VerifyArgs),
    /// Operations on map files.
    #[command(subcommand)]
    Map(MapCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Lemma3,
    Green,
    Restriction,
    GapArgument,
    Sharpness,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Hyperplanes sampled per subspace or map.
    #[arg(long, default_value_t = 20)]
    trials: u32,
    #[arg(long)]
    max_m: Option<u32>,
    #[arg(long)]
    max_k: Option<u32>,
    #[arg(long)]
    max_n: Option<u32>,
    #[arg(long)]
    max_degree: Option<u32>,
    /// Random subspaces per (n, d) for the green suite.
    #[arg(long, default_value_t = 200)]
    subspaces: u32,
    /// Capacity of the binomial table.
    #[arg(long)]
    table_bound: Option<u32>,
}

#[derive(Subcommand)]
enum MapCommand {
    /// Decide orthogonality exactly; prints the quotient or a witness pair.
    CheckOrth {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        pivot: usize,
    },
    /// Projective dimension of the linear span of the image.
    Span { file: PathBuf },
    /// Span dimensions of f(E) and f(E^perp) for a coordinate subspace E.
    Obstruct {
        file: PathBuf,
        /// Source coordinates spanning E, e.g. `0,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        e: Vec<usize>,
    },
    /// Null prolongation by psi and phi, given as polynomial text lines.
    Prolong {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write the cubic map P^{k,n+1-k} -> P^{k^2,k(n-k+1)}.
    GenSharpness {
        k: usize,
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Io(String),
    /// Downstream reader went away; not an error for a filter-style tool.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

struct Out {
    json: bool,
    stdout: io::StdoutLock<'static>,
}

impl Out {
    fn record<T: Serialize>(&mut self, kind: &'static str, body: &T) -> io::Result<()> {
        let line = serde_json::to_string(&Line { kind, body }).map_err(io::Error::other)?;
        writeln!(self.stdout, "{line}")
    }

    fn text(&mut self, s: impl Display) -> io::Result<()> {
        writeln!(self.stdout, "{s}")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        json: cli.json,
        stdout: io::stdout().lock(),
    };
    match run(cli.command, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Closed) => ExitCode::SUCCESS,
    }
}

fn run(cmd: Command, out: &mut Out) -> Outcome {
    match cmd {
        Command::Macaulay { a, n } => macaulay(out, &a, n),
        Command::Binom { a, b } => {
            let v = BinomTable::global().binom(a, b)?;
            if out.json {
                out.record("binom", &serde_json::json!({ "a": a, "b": b, "value": v.to_string() }))?;
            } else {
                out.text(v)?;
            }
            Ok(true)
        }
        Command::Gap { n, target } => gap(out, n, target),
        Command::Nab { n, a, b } => nab(out, n, a, b),
        Command::GapArgument { n, a, b } => {
            let r = verify_gap_argument(n, a, b)?;
            if out.json {
                out.record("gap-argument", &r)?;
            } else {
                out.text(format_args!("n1={} n2={} case {:?}", r.n1, r.n2, r.case))?;
                out.text(format_args!("D_n1={} D_n2={} sum={} closed form={}", r.d_n1, r.d_n2, r.sum, r.closed_form))?;
                out.text(format_args!("N(n;a,b)={} verdict={}", r.n_prime, r.verdict))?;
            }
            Ok(r.verdict && r.closed_form_matches())
        }
        Command::Plane { ell, ell_prime, steps } => plane(out, ell, ell_prime, steps),
        Command::Verify(args) => run_verify(out, &args),
        Command::Map(cmd) => map(out, cmd),
    }
}

fn macaulay(out: &mut Out, a: &BigUint, n: u32) -> Outcome {
    let table = BinomTable::global();
    let rep = table.macaulay_rep(a, n)?;
    let lower = table.lower(a, n)?;
    let minus = table.minus(a, n)?;
    let upper = table.upper(a, n)?;
    if out.json {
        #[derive(Serialize)]
        struct Rec<'a> {
            value: String,
            level: u32,
            rep: String,
            terms: &'a [ballgap_core::binom::MacaulayTerm],
            lower: String,
            minus: String,
            upper: String,
        }
        out.record(
            "macaulay",
            &Rec {
                value: a.to_string(),
                level: n,
                rep: rep.to_string(),
                terms: rep.terms(),
                lower: lower.to_string(),
                minus: minus.to_string(),
                upper: upper.to_string(),
            },
        )?;
    } else {
        out.text(format_args!("rep   {rep}"))?;
        out.text(format_args!("lower {lower}"))?;
        out.text(format_args!("minus {minus}"))?;
        out.text(format_args!("upper {upper}"))?;
    }
    Ok(true)
}

fn gap(out: &mut Out, n: u64, target: Option<u64>) -> Outcome {
    if let Some(t) = target {
        let v = classify_gap(n, t);
        if out.json {
            out.record("classification", &serde_json::json!({ "n": n, "target": t, "result": v }))?;
        } else {
            out.text(v)?;
        }
        return Ok(true);
    }
    let js = gap_intervals(n);
    let is = comparison_intervals(n);
    if out.json {
        for j in &js {
            out.record("gap-interval", j)?;
        }
        for i in &is {
            out.record("comparison-interval", i)?;
        }
    } else {
        if js.is_empty() {
            out.text(format_args!("no gap intervals for n={n}"))?;
        }
        for j in &js {
            out.text(j)?;
        }
        for i in &is {
            out.text(i)?;
        }
    }
    Ok(true)
}

fn nab(out: &mut Out, n: u64, a: u64, b: u64) -> Outcome {
    let form = NabForm::new(n, a, b)?;
    let minus = nab_minus(&form).ok();
    let bounds = dim_prop_bounds(&form);
    if out.json {
        #[derive(Serialize)]
        struct Rec {
            n: u64,
            a: u64,
            b: u64,
            value: u64,
            minus: Option<u64>,
            bounds: std::collections::BTreeMap<u64, u64>,
        }
        out.record(
            "nab",
            &Rec {
                n,
                a,
                b,
                value: form.value(),
                minus: minus.map(|m| m.value()),
                bounds,
            },
        )?;
    } else {
        out.text(format_args!("N({n};{a},{b}) = {}", form.value()))?;
        match minus {
            Some(m) => out.text(format_args!("descent N({};{},{}) = {}", m.n(), m.a(), m.b(), m.value()))?,
            None => out.text("descent: no level n-1 form")?,
        }
        for (m, d) in bounds {
            out.text(format_args!("D_{m} >= {d}"))?;
        }
    }
    Ok(true)
}

fn plane(out: &mut Out, ell: u64, ell_prime: u64, steps: u64) -> Outcome {
    let step = plane_step(ell, ell_prime)?;
    let chain = plane_chain(ell, ell_prime, steps)?;
    let closed = plane_chain_closed_form(ell, ell_prime, steps)?;
    let case = plane_case(ell, ell_prime);
    if out.json {
        out.record(
            "plane",
            &serde_json::json!({
                "ell": ell, "ell_prime": ell_prime, "steps": steps,
                "case": case, "step": step, "chain": chain, "closed_form": closed,
            }),
        )?;
    } else {
        out.text(format_args!("one step: {step}"))?;
        if let Some(c) = case {
            out.text(format_args!("case: {c:?}"))?;
        }
        out.text(format_args!("after {steps} steps: {chain} (closed form {closed})"))?;
    }
    Ok(chain == closed)
}

fn emit_suite<R: Serialize>(
    out: &mut Out,
    summary: &Summary,
    records: &[R],
    started: Instant,
    show: impl Fn(&R) -> Option<String>,
) -> Outcome {
    if out.json {
        for r in records {
            out.record("case", r)?;
        }
        out.record("summary", summary)?;
    } else {
        for r in records {
            if let Some(line) = show(r) {
                out.text(line)?;
            }
        }
        let seed = summary.seed.map(|s| format!(", seed {s}")).unwrap_or_default();
        out.text(format_args!(
            "{}: {} checks, {} violations{seed} ({:.2?})",
            summary.suite,
            summary.checks,
            summary.violations,
            started.elapsed()
        ))?;
    }
    Ok(summary.passed())
}

fn run_verify(out: &mut Out, args: &VerifyArgs) -> Outcome {
    if let Some(bound) = args.table_bound {
        if bound < 16 {
            return Err(Failure::Usage("table bound must be at least 16".into()));
        }
        BinomTable::set_global_bound(bound)?;
    }
    let started = Instant::now();
    match args.suite {
        Suite::Lemma3 => {
            let r = verify::lemma3(args.max_m.unwrap_or(6), args.max_k.unwrap_or(6))?;
            emit_suite(out, &r.summary, &r.records, started, |c| {
                Some(format!("violation m={} k={} A={} B={}: {} != {}", c.m, c.k, c.a, c.b, c.lhs, c.rhs))
            })
        }
        Suite::Green => {
            let cfg = GreenConfig {
                dims: (2..=args.max_n.unwrap_or(3)).collect(),
                degrees: (2..=args.max_degree.unwrap_or(3)).collect(),
                subspaces: args.subspaces,
                hyperplanes: args.trials,
                seed: args.seed,
            };
            let r = verify::green(&cfg)?;
            emit_suite(out, &r.summary, &r.records, started, |c| {
                (!c.holds).then(|| {
                    format!(
                        "violation n={} d={} #{} ({:?}): min c_H={} > bound {}",
                        c.n, c.d, c.index, c.kind, c.min_c_h, c.bound
                    )
                })
            })
        }
        Suite::Restriction => {
            let cfg = RestrictionConfig {
                max_n: args.max_n.unwrap_or(4),
                max_degree: args.max_degree.unwrap_or(4),
                trials: args.trials,
                seed: args.seed,
                ..RestrictionConfig::default()
            };
            let r = verify::restriction(&cfg)?;
            emit_suite(out, &r.summary, &r.records, started, |c| {
                let expected = c.expected.map(|e| format!(" expected {e}")).unwrap_or_default();
                let tag = if c.holds { "ok" } else { "VIOLATION" };
                Some(format!(
                    "{tag} n={} d={} {:?}#{}: N={} bound={} max={}{expected}",
                    c.n, c.d, c.kind, c.index, c.span_dim, c.bound, c.max
                ))
            })
        }
        Suite::GapArgument => {
            let r = verify::gap_argument(u64::from(args.max_n.unwrap_or(60)))?;
            if !out.json {
                out.text(format_args!("case I: {}, case II: {}", r.case_i, r.case_ii))?;
            }
            emit_suite(out, &r.summary, &r.records, started, |c| {
                Some(format!(
                    "violation n={} a={} b={}: sum {} closed form {} N {}",
                    c.n, c.a, c.b, c.sum, c.closed_form, c.n_prime
                ))
            })
        }
        Suite::Sharpness => {
            let r = verify::sharpness(u64::from(args.max_k.unwrap_or(4)), u64::from(args.max_n.unwrap_or(12)))?;
            emit_suite(out, &r.summary, &r.records, started, |c| {
                let tag = if c.holds { "ok" } else { "VIOLATION" };
                Some(format!(
                    "{tag} k={} n={}: components={} rank={} orthogonal={} quotient={} span={} [{}]={} [{}]={}",
                    c.k,
                    c.n,
                    c.components,
                    c.rank,
                    c.orthogonal,
                    c.quotient_matches,
                    c.span_dim,
                    c.k * c.n + c.k,
                    c.at_lower_end,
                    c.k * c.n + c.k - 1,
                    c.below
                ))
            })
        }
    }
}

fn read_map(path: &Path) -> Result<SignedMap, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_map(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_map(out: &mut Out, f: &SignedMap, path: Option<&Path>) -> Outcome {
    let text = format_map(f);
    match path {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            if out.json {
                out.record("written", &serde_json::json!({ "path": p.display().to_string() }))?;
            }
        }
        None => write!(out.stdout, "{text}")?,
    }
    Ok(true)
}

fn parse_poly_arg(s: &str, n_vars: usize, name: &str) -> Result<Poly, Failure> {
    parse_poly_line(s, Some(n_vars)).map_err(|e| Failure::Usage(format!("{name}: {e}")))
}

fn map(out: &mut Out, cmd: MapCommand) -> Outcome {
    match cmd {
        MapCommand::CheckOrth { file, pivot } => {
            let f = read_map(&file)?;
            let c = orthogonality_certificate_with_pivot(&f, pivot)?;
            if out.json {
                out.record("certificate", &c.summary())?;
            } else if let Some(q) = &c.quotient {
                out.text("orthogonal")?;
                out.text(format_args!("quotient {}", human_poly(q, f.source().n_coords())))?;
                out.text(format_args!("quotient (text) {}", format_poly(q)))?;
            } else {
                out.text("not orthogonal")?;
                if let Some(w) = &c.witness {
                    let join = |v: &[ballgap_core::GRat]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                    out.text(format_args!("witness z = [{}]", join(&w.z)))?;
                    out.text(format_args!("witness w = [{}]", join(&w.w)))?;
                    out.text(format_args!("<f(z),f(w)> = {}", w.image_pairing))?;
                }
            }
            Ok(true)
        }
        MapCommand::Span { file } => {
            let f = read_map(&file)?;
            let dim = image_span_dim(f.components())?;
            if out.json {
                out.record("span", &serde_json::json!({ "span_dim": dim, "target_dim": f.target().proj_dim() }))?;
            } else {
                out.text(dim)?;
            }
            Ok(true)
        }
        MapCommand::Obstruct { file, e } => {
            let f = read_map(&file)?;
            let r = span_obstruction_check(&f, &e)?;
            let orthogonal = orthogonality_certificate_with_pivot(&f, 0).map(|c| c.orthogonal).ok();
            let violation = orthogonal == Some(true) && r.holds == Some(false);
            if out.json {
                #[derive(Serialize)]
                struct Rec<'a> {
                    #[serde(flatten)]
                    record: &'a ballgap_core::hermitian::ObstructionRecord,
                    orthogonal: Option<bool>,
                    violation: bool,
                }
                out.record(
                    "obstruction",
                    &Rec {
                        record: &r,
                        orthogonal,
                        violation,
                    },
                )?;
            } else {
                let show = |d: Option<u64>| d.map_or("degenerate".to_string(), |d| d.to_string());
                out.text(format_args!("dim span f(E)    = {}", show(r.dim_e)))?;
                out.text(format_args!("dim span f(E^⊥)  = {}", show(r.dim_e_perp)))?;
                out.text(format_args!("bound            = {}", r.bound))?;
                match (r.holds, orthogonal) {
                    (None, _) => out.text("restriction degenerate")?,
                    (Some(h), Some(true)) => out.text(format_args!("holds = {h}"))?,
                    (Some(h), _) => out.text(format_args!("holds = {h} (map not certified orthogonal)"))?,
                }
            }
            Ok(!violation)
        }
        MapCommand::Prolong { file, psi, phi, out: path } => {
            let f = read_map(&file)?;
            let n = f.source().n_coords();
            let psi = parse_poly_arg(&psi, n, "psi")?;
            let phi = parse_poly_arg(&phi, n, "phi")?;
            let g = null_prolongation(&f, &psi, &phi)?;
            write_map(out, &g, path.as_deref())
        }
        MapCommand::GenSharpness { k, n, out: path } => {
            let f = sharpness_map(k, n)?;
            write_map(out, &f, path.as_deref())
        }
    }
}
