//! Command-line front end for `hopoly-core`.
//!
//! [`run`] parses the arguments, writes results to `out` and diagnostics to
//! `err`, and returns the exit code: `0` on success, `1` for usage and parse
//! errors, `2` for domain errors and `3` when a limit does not exist because
//! two branches of a `max` are incomparable.

pub mod fnspec;
pub mod render;

use clap::{Parser, Subcommand, ValueEnum};
use hopoly_core::arctic::{ArcticTerm, ArcticTerm2, Lim2, LimResult, Regime, D};
use hopoly_core::dagnf::{nf_distinguish, nf_eq, nf_merge, var_name, Node};
use hopoly_core::poly3::{distinguish_random, DoubleDegree, Witness3};
use hopoly_core::syntax::{parse, parse_poly2, Expr, Order};
use hopoly_core::{bounds, Error, MonotoneFn, Natural, Operator2, Poly2, Poly3};
use std::ffi::OsString;
use std::io::Write;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INCOMPARABLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hopoly", version, about = "Second- and third-order polynomials: degrees, normal forms, compositions")]
struct Cli {
    /// Order to parse expressions at.
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Auto)]
    order: OrderArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Auto,
    P2,
    P3,
    Arctic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComposeKind {
    Star,
    Circ,
    Opcirc,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundKind {
    A,
    B,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate at N = n (or D = n for arctic terms).
    Eval {
        expr: String,
        #[arg(long, value_parser = parse_natural)]
        n: Natural,
        /// Function for L (or Delta): poly:<expr in m> or table:x:y,...;tail:...
        #[arg(long)]
        ell: Option<String>,
        /// Second-order template for F: F(f)(n) is the template at n with L read as f.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Arctic degree.
    Deg { expr: String },
    /// Asymptotic polynomial of the degree with its thresholds.
    Limdeg { expr: String },
    /// Nesting depth of L (and of F).
    Depth { expr: String },
    /// DAG normal form.
    Normalize {
        expr: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide equivalence.
    Eq { left: String, right: String },
    /// Find an assignment under which all inputs evaluate differently.
    Distinguish {
        #[arg(required = true)]
        exprs: Vec<String>,
        /// Samples tried for third-order inputs.
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Substitute the second expression for N (star), L (circ) or F (opcirc).
    Compose {
        #[arg(long, value_enum)]
        kind: ComposeKind,
        left: String,
        right: String,
    },
    /// Running-time bound of two chained machines with bounds P and Q.
    Bounds {
        #[arg(long, value_enum)]
        kind: BoundKind,
        p: String,
        q: String,
    },
    /// Double degree of a third-order polynomial.
    Doubledeg { expr: String },
}

fn parse_natural(s: &str) -> Result<Natural, String> {
    s.parse().map_err(|_| format!("'{s}' is not a natural number"))
}

enum Failure {
    Usage(String),
    Domain(String),
    Incomparable(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::OrderMismatch { .. } => Failure::Usage(e.to_string()),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<fnspec::FnSpecError> for Failure {
    fn from(e: fnspec::FnSpecError) -> Self {
        match e {
            fnspec::FnSpecError::Syntax(s) => Failure::Usage(format!("bad function spec: {s}")),
            fnspec::FnSpecError::Domain(e) => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let order = match cli.order {
        OrderArg::Auto => Order::Auto,
        OrderArg::P2 => Order::P2,
        OrderArg::P3 => Order::P3,
        OrderArg::Arctic => Order::Arctic,
    };
    match dispatch(cli.command, order) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_DOMAIN
        }
        Err(Failure::Incomparable(m)) => {
            let _ = writeln!(out, "{m}");
            EXIT_INCOMPARABLE
        }
    }
}

fn expr(text: &str, order: Order) -> Result<Expr, Failure> {
    Ok(parse(text, order)?.expr)
}

fn lift(e: Expr) -> Result<Poly3, Failure> {
    match e {
        Expr::P2(p) => Ok(Poly3::from(&p)),
        Expr::P3(p) => Ok(p),
        _ => Err(Failure::Usage("expected a second- or third-order polynomial, found an arctic term".into())),
    }
}

fn only_p2(e: Expr, what: &str) -> Result<Poly2, Failure> {
    match e {
        Expr::P2(p) => Ok(p),
        Expr::P3(p) => p.to_poly2().ok_or_else(|| Failure::Usage(format!("{what} needs a second-order polynomial"))),
        _ => Err(Failure::Usage(format!("{what} needs a second-order polynomial"))),
    }
}

fn ell(spec: &Option<String>) -> Result<MonotoneFn, Failure> {
    match spec {
        Some(s) => Ok(fnspec::parse_fnspec(s)?),
        None => Ok(MonotoneFn::identity()),
    }
}

fn regime_text(r: &Regime) -> String {
    format!("d >= {}, delta >= {}", r.d0, r.floor)
}

fn first_order_lim(t: &ArcticTerm) -> Outcome {
    let lim: LimResult = t.lim(D)?;
    let minimal = match t.min_threshold(D, &lim) {
        Ok(m) => m.to_string(),
        Err(Error::ThresholdTooLarge(_)) => format!("not scanned (beyond {})", hopoly_core::arctic::SCAN_LIMIT),
        Err(e) => return Err(e.into()),
    };
    Ok(format!(
        "asymptotic: {}\nminimal threshold: {minimal}\ncertified threshold: {}\n",
        lim.poly.display_in("D"),
        lim.threshold
    ))
}

fn second_order_lim(t: &ArcticTerm2) -> Outcome {
    match t.lim() {
        Lim2::Limit { limit, regime } => Ok(format!("asymptotic: {limit}\nregime: {}\n", regime_text(&regime))),
        Lim2::Incomparable(inc) => Err(Failure::Incomparable(format!("incomparable: {inc}"))),
    }
}

fn lam_depth(p: &Poly3) -> u32 {
    match p {
        Poly3::One | Poly3::N => 0,
        Poly3::Add(a, b) | Poly3::Mul(a, b) => lam_depth(a).max(lam_depth(b)),
        Poly3::Lam(a) => 1 + lam_depth(a),
        Poly3::AppF(a) => lam_depth(a),
    }
}

fn witness3_text(w: &Witness3, inputs: &[String]) -> String {
    let mut s = format!("n = {}\nell = {}\nphi = {}\n", w.n, w.ell, w.phi);
    for (text, v) in inputs.iter().zip(&w.values) {
        s.push_str(&format!("{text} = {v}\n"));
    }
    s
}

fn dispatch(command: Command, order: Order) -> Outcome {
    match command {
        Command::Eval { expr: text, n, ell: ell_spec, phi } => {
            let f = ell(&ell_spec)?;
            let value = match expr(&text, order)? {
                Expr::P2(p) => p.eval(&n, &f),
                Expr::P3(p) => {
                    let phi = match phi {
                        Some(t) => Operator2::Template(parse_poly2(&t)?),
                        None if p.depth_f() == 0 => Operator2::Template(Poly2::lam(Poly2::n())),
                        None => return Err(Failure::Usage("F occurs, so --phi is required".into())),
                    };
                    p.eval(&n, &f, &phi)
                }
                Expr::Arctic(t) => t.eval_at(&n)?,
                Expr::Arctic2(t) => t.eval(&n, &f),
            };
            Ok(format!("{value}\n"))
        }
        Command::Deg { expr: text } => match expr(&text, order)? {
            Expr::P2(p) => Ok(format!("{}\n", p.deg().simplify())),
            Expr::P3(p) => Ok(format!("{}\n", p.DEG())),
            _ => Err(Failure::Usage("deg needs a second- or third-order polynomial".into())),
        },
        Command::Limdeg { expr: text } => match expr(&text, order)? {
            Expr::P2(p) => first_order_lim(&p.deg()),
            Expr::Arctic(t) => first_order_lim(&t),
            Expr::P3(p) => second_order_lim(&p.DEG()),
            Expr::Arctic2(t) => second_order_lim(&t),
        },
        Command::Depth { expr: text } => match expr(&text, order)? {
            Expr::P2(p) => Ok(format!("{}\n", p.depth())),
            Expr::P3(p) => Ok(format!("L: {}\nF: {}\n", lam_depth(&p), p.depth_f())),
            _ => Err(Failure::Usage("depth needs a second- or third-order polynomial".into())),
        },
        Command::Normalize { expr: text, dot, json } => {
            let p = only_p2(expr(&text, order)?, "normalize")?;
            let (dag, roots) = nf_merge([&p]);
            Ok(if dot {
                render::dot(&dag, &roots)
            } else if json {
                render::json(&dag, &roots) + "\n"
            } else {
                render::text(&dag, &roots)
            })
        }
        Command::Eq { left, right } => {
            let (a, b) = (expr(&left, order)?, expr(&right, order)?);
            let (a, b) = (lift(a)?, lift(b)?);
            if let (Some(p), Some(q)) = (a.to_poly2(), b.to_poly2()) {
                return Ok(if nf_eq(&p, &q) { "equivalent\n".into() } else { "not equivalent\n".into() });
            }
            if a == b {
                return Ok("equivalent\n".into());
            }
            match distinguish_random(&[a, b], 2000, 0)? {
                Some(w) => Ok(format!("not equivalent\n{}", witness3_text(&w, &[left, right]))),
                None => Ok("undecided: no distinguishing assignment found\n".into()),
            }
        }
        Command::Distinguish { exprs, budget, seed } => {
            let parsed: Vec<Poly3> = exprs.iter().map(|t| expr(t, order).and_then(lift)).collect::<Result<_, _>>()?;
            let second: Option<Vec<Poly2>> = parsed.iter().map(Poly3::to_poly2).collect();
            let Some(ps) = second else {
                return match distinguish_random(&parsed, budget, seed)? {
                    Some(w) => Ok(witness3_text(&w, &exprs)),
                    None => Err(Failure::Domain(format!("no distinguishing assignment found in {budget} samples"))),
                };
            };
            let (dag, roots) = nf_merge(ps.iter());
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    if roots[i] == roots[j] {
                        return Err(Failure::Domain(format!("inputs {i} and {j} are equivalent")));
                    }
                }
            }
            let a = nf_distinguish(&dag, &roots)?;
            let values = dag.evaluate(&a.n, &a.ell);
            let mut s = format!("n = {}\nell = {}\n", a.n, a.ell);
            for (u, node) in dag.nodes().iter().enumerate() {
                let name = match node {
                    Node::Leaf1 => "1".to_string(),
                    Node::LeafN => "N".to_string(),
                    Node::Lam { label, .. } => format!("Y{u} = L({})", label.display_with(var_name)),
                };
                s.push_str(&format!("node {u}: {name} -> {}\n", values[u]));
            }
            for (text, p) in exprs.iter().zip(&ps) {
                s.push_str(&format!("{text} -> {}\n", p.eval(&a.n, &a.ell)));
            }
            Ok(s)
        }
        Command::Compose { kind, left, right } => {
            let (a, b) = (expr(&left, order)?, expr(&right, order)?);
            if let (ComposeKind::Star | ComposeKind::Circ, Expr::P2(p), Expr::P2(q)) = (kind, &a, &b) {
                let r = if matches!(kind, ComposeKind::Star) { p.star(q) } else { p.circ(q) };
                return Ok(format!("{r}\n"));
            }
            let (p, q) = (lift(a)?, lift(b)?);
            let r = match kind {
                ComposeKind::Star => p.star(&q),
                ComposeKind::Circ => p.circ(&q),
                ComposeKind::Opcirc => p.opcirc(&q),
            };
            Ok(format!("{r}\n"))
        }
        Command::Bounds { kind, p, q } => {
            let p = only_p2(expr(&p, order)?, "bounds")?;
            let q = only_p2(expr(&q, order)?, "bounds")?;
            let r = match kind {
                BoundKind::A => bounds::concat_a(&p, &q)?,
                BoundKind::B => bounds::concat_b(&p, &q)?,
            };
            Ok(format!(
                "bound: {}\ndegree: {}\nasymptotic: {} (from D >= {})\nnote: bounds hold up to constant factors\n",
                r.bound,
                r.degree.simplify(),
                r.asymptotic.poly.display_in("D"),
                r.asymptotic.threshold
            ))
        }
        Command::Doubledeg { expr: text } => {
            let p = lift(expr(&text, order)?)?;
            match p.double_degree()? {
                DoubleDegree::Degree { limit, regime, degree, asymptotic } => Ok(format!(
                    "double degree: {}\nasymptotic: {}\nlimit: {limit}\nregime: {}\n",
                    degree.simplify(),
                    asymptotic.poly.display_in("D"),
                    regime_text(&regime)
                )),
                DoubleDegree::Incomparable(inc) => Err(Failure::Incomparable(format!("incomparable: {inc}"))),
            }
        }
    }
}
