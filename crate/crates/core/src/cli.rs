//! Command-line front end.

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::abgrp::{AbSubgroup, FinAbGroup};
use crate::error::{Error, Result};
use crate::lattice::rational_to_string;
use crate::pc::{fixed_dim, is_pc, PermutationGroup};
use crate::poly::InvertiblePolynomial;
use crate::theorems::{self, Caps, Verdict, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FINDING: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bhht", version, about = "Invertible polynomials, Burnside rings and orbifold Euler characteristics")]
pub struct Cli {
    /// Emit JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true)]
    pub timings: bool,
    /// Largest group that is tabulated.
    #[arg(long, global = true, env = "BHHT_MAX_GROUP_ORDER", default_value_t = crate::burnside::DEFAULT_MAX_GROUP_ORDER)]
    pub max_group_order: usize,
    /// Largest number of subgroups enumerated, and largest abelian group order.
    #[arg(long, global = true, env = "BHHT_MAX_SUBGROUPS", default_value_t = crate::abgrp::DEFAULT_MAX_ORDER)]
    pub max_subgroups: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polynomial analysis.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Diagonal symmetry groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// The dual pair (f̃, G̃) of a polynomial and a subgroup.
    Dual(DualArgs),
    /// Parity condition.
    #[command(subcommand)]
    Pc(PcCmd),
    /// Theorem verification.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Open questions.
    #[command(subcommand)]
    Explore(ExploreCmd),
}

#[derive(Debug, Subcommand)]
pub enum PolyCmd {
    /// Exponent matrix, weights, atoms and |G_f|.
    Analyze { poly: String },
    /// The transposed polynomial.
    Transpose { poly: String },
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Invariants and generators of G_f.
    Symmetries { poly: String },
    /// All subgroups of G_f.
    Subgroups {
        poly: String,
        /// Keep only subgroups invariant under these permutations.
        #[arg(long)]
        invariant_under: Option<String>,
    },
    /// The dual subgroup G̃ ⊂ G_f̃ of G ⊂ G_f.
    Dual {
        poly: String,
        /// Generators of G as rational coordinates, e.g. "1/3,1/3;2/3,0".
        #[arg(long, default_value = "")]
        gens: String,
    },
}

#[derive(Debug, Args)]
pub struct DualArgs {
    pub poly: String,
    /// Generators of G ⊂ G_f.
    #[arg(long, default_value = "")]
    pub gens: String,
    /// Generators of a permutation group S preserving f and G.
    #[arg(long)]
    pub s: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum PcCmd {
    /// Decides the parity condition for ⟨gens⟩ ⊂ S_n.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        gens: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Reduction identity for finite abelian groups.
    Abelian {
        /// Cyclic factors, e.g. "2,6".
        #[arg(long, conflicts_with = "poly")]
        invariants: Option<String>,
        /// Use G_f of this polynomial.
        #[arg(long)]
        poly: Option<String>,
        /// Generators of G; all subgroups when omitted.
        #[arg(long)]
        gens: Option<String>,
    },
    /// Orbifold Euler characteristics of the extremal orbit spaces.
    Main {
        #[arg(long)]
        poly: String,
        /// Generators of S.
        #[arg(long, default_value = "")]
        s: String,
        /// Generators of G; all S-invariant subgroups when omitted.
        #[arg(long)]
        g: Option<String>,
        /// Generators of T ≤ S; all subgroups when omitted.
        #[arg(long)]
        t: Option<String>,
    },
    /// Periodic-loop identity with the shift group.
    Loop(LoopArgs),
    /// Saito duality of the loop Euler characteristics, S trivial.
    SaitoLoop {
        #[command(flatten)]
        lp: LoopArgs,
        /// Use the wrong sign (negative control).
        #[arg(long)]
        flip_sign: bool,
    },
}

#[derive(Debug, Args)]
pub struct LoopArgs {
    /// Exponent period, e.g. "2,2".
    #[arg(long)]
    pub p: String,
    /// Number of periods.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum ExploreCmd {
    /// Compares χ^orb(Ĝ/H⋊T, G⋊S) with χ^orb(Ĝ*/H̃⋊T, G̃⋊S).
    Conjecture {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "")]
        s: String,
        /// With --h and --t: a single case. Otherwise all cases.
        #[arg(long, requires_all = ["h", "t"])]
        g: Option<String>,
        #[arg(long, requires_all = ["g", "t"])]
        h: Option<String>,
        #[arg(long, requires_all = ["g", "h"])]
        t: Option<String>,
    },
}

/// Parses `argv` and runs the command; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

fn caps(cli: &Cli) -> Caps {
    Caps { max_group_order: cli.max_group_order, max_subgroups: cli.max_subgroups }
}

fn parse_poly(text: &str) -> Result<InvertiblePolynomial> {
    InvertiblePolynomial::parse(text)
}

fn parse_subgroup(g: &Arc<FinAbGroup>, gens: &str) -> Result<AbSubgroup> {
    let elems = gens
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| g.parse_element(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.subgroup_generated(&elems))
}

fn parse_usize_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| Error::InvalidParameters(format!("'{s}' is not an integer"))))
        .collect()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn matrix_rows(m: &[Vec<i64>]) -> String {
    m.iter()
        .map(|r| format!("  [{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn group_json(g: &FinAbGroup) -> Value {
    json!({ "order": g.order(), "invariants": g.invariants() })
}

fn subgroup_json(h: &AbSubgroup) -> Value {
    json!({ "order": h.order(), "generators": h.generators_display() })
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Poly(PolyCmd::Analyze { poly }) => poly_analyze(cli, poly),
        Command::Poly(PolyCmd::Transpose { poly }) => {
            let f = parse_poly(poly)?;
            let ft = f.transpose();
            Ok(Output::ok(if cli.json {
                pretty(&json!({ "polynomial": f.to_string(), "transpose": ft.to_string(), "matrix": ft.matrix() }))
            } else {
                format!("{ft}\n")
            }))
        }
        Command::Group(cmd) => group(cli, cmd),
        Command::Dual(args) => dual(cli, args),
        Command::Pc(PcCmd::Check { n, gens }) => {
            let s = PermutationGroup::parse(*n, gens)?;
            let v = is_pc(&s)?;
            Ok(Output::ok(if cli.json {
                pretty(&json!({
                    "n": n,
                    "group": s.to_string(),
                    "order": s.order(),
                    "fixed_dim": fixed_dim(&s),
                    "alternating": s.is_in_alternating_group(),
                    "pc": v,
                }))
            } else {
                let mut t = format!("S = {s}, |S| = {}\nPC: {}\n", s.order(), v.holds);
                if let (Some(w), Some(d)) = (&v.witness, v.witness_fixed_dim) {
                    t += &format!("violating subgroup: <{}> with {d} orbits on {n} symbols\n", w.join(", "));
                }
                t
            }))
        }
        Command::Verify(cmd) => verify(cli, cmd),
        Command::Explore(ExploreCmd::Conjecture { poly, s, g, h, t }) => {
            let f = parse_poly(poly)?;
            let s = PermutationGroup::parse(f.n(), s)?;
            let report = match (g, h, t) {
                (Some(g), Some(h), Some(t)) => {
                    let gf = FinAbGroup::symmetry_group(&f);
                    let t = PermutationGroup::parse(f.n(), t)?;
                    theorems::explore_reduction_conjecture(&f, &s, &parse_subgroup(&gf, g)?, &parse_subgroup(&gf, h)?, &t, caps(cli))?
                }
                _ => theorems::explore_reduction_conjecture_all(&f, &s, caps(cli))?,
            };
            Ok(report_output(cli, report))
        }
    }
}

fn poly_analyze(cli: &Cli, text: &str) -> Result<Output> {
    let f = parse_poly(text)?;
    let atoms = f.classify_atoms()?;
    let weights: Vec<String> = f.weights().iter().map(rational_to_string).collect();
    let g = FinAbGroup::symmetry_group(&f);
    if cli.json {
        return Ok(Output::ok(pretty(&json!({
            "polynomial": f.to_string(),
            "matrix": f.matrix(),
            "det": f.det(),
            "weights": weights,
            "atoms": atoms,
            "group": group_json(&g),
            "transpose": f.transpose().to_string(),
        }))));
    }
    Ok(Output::ok(format!(
        "f = {f}\nE =\n{}\ndet E = {}\nweights = ({})\natoms = {atoms}\n|G_f| = {}\ninvariants = {:?}\ntranspose = {}\n",
        matrix_rows(f.matrix()),
        f.det(),
        weights.join(", "),
        g.order(),
        g.invariants(),
        f.transpose()
    )))
}

fn group(cli: &Cli, cmd: &GroupCmd) -> Result<Output> {
    match cmd {
        GroupCmd::Symmetries { poly } => {
            let f = parse_poly(poly)?;
            let g = FinAbGroup::symmetry_group(&f);
            let full = g.full_subgroup();
            Ok(Output::ok(if cli.json {
                pretty(&json!({ "polynomial": f.to_string(), "group": group_json(&g), "generators": full.generators_display() }))
            } else {
                format!("G_f of {f}\norder = {}\ninvariants = {:?}\ngenerators = {full}\n", g.order(), g.invariants())
            }))
        }
        GroupCmd::Subgroups { poly, invariant_under } => {
            let f = parse_poly(poly)?;
            let g = FinAbGroup::symmetry_group(&f);
            let subs = match invariant_under {
                Some(gens) => {
                    let s = PermutationGroup::parse(f.n(), gens)?;
                    let actions = s.elements().iter().map(|p| g.perm_action(p)).collect::<Result<Vec<_>>>()?;
                    g.enumerate_invariant_subgroups(cli.max_subgroups, &actions)?
                }
                None => g.enumerate_subgroups(cli.max_subgroups)?,
            };
            Ok(Output::ok(if cli.json {
                pretty(&json!({ "group": group_json(&g), "subgroups": subs.iter().map(subgroup_json).collect::<Vec<_>>() }))
            } else {
                let mut t = format!("{} subgroups of G_f (order {})\n", subs.len(), g.order());
                for h in &subs {
                    t += &format!("  |H| = {:<5} {h}\n", h.order());
                }
                t
            }))
        }
        GroupCmd::Dual { poly, gens } => {
            let f = parse_poly(poly)?;
            let g = FinAbGroup::symmetry_group(&f);
            let h = parse_subgroup(&g, gens)?;
            let d = h.dual();
            Ok(Output::ok(if cli.json {
                pretty(&json!({ "G": subgroup_json(&h), "dual": subgroup_json(&d), "dual_group": group_json(d.parent()) }))
            } else {
                format!("G = {h} (order {})\ndual = {d} (order {}) in G_f~ of order {}\n", h.order(), d.order(), d.parent().order())
            }))
        }
    }
}

fn dual(cli: &Cli, args: &DualArgs) -> Result<Output> {
    let f = parse_poly(&args.poly)?;
    let g = FinAbGroup::symmetry_group(&f);
    let h = parse_subgroup(&g, &args.gens)?;
    let ft = f.transpose();
    let gft = FinAbGroup::symmetry_group(&ft);
    let d = h.dual();
    let s = match &args.s {
        Some(text) => {
            let s = PermutationGroup::parse(f.n(), text)?;
            for p in s.generators() {
                if !f.is_invariant_under(p)? {
                    return Err(Error::NotInvariant(format!("{p} (polynomial)")));
                }
                if !h.is_invariant_under(&g.perm_action(p)?) {
                    return Err(Error::NotInvariant(p.to_string()));
                }
            }
            Some(s)
        }
        None => None,
    };
    let dual_subgroup = gft.subgroup_from_members(d.members())?;
    Ok(Output::ok(if cli.json {
        pretty(&json!({
            "f": f.to_string(),
            "G": subgroup_json(&h),
            "f_dual": ft.to_string(),
            "G_dual": subgroup_json(&dual_subgroup),
            "S": s.as_ref().map(|s| s.to_string()),
        }))
    } else {
        let tail = s.map(|s| format!(" ⋊ {s}")).unwrap_or_default();
        format!("({f}, {h}{tail})\n  dual to\n({ft}, {dual_subgroup}{tail})\n")
    }))
}

fn verify(cli: &Cli, cmd: &VerifyCmd) -> Result<Output> {
    let caps = caps(cli);
    let report = match cmd {
        VerifyCmd::Abelian { invariants, poly, gens } => {
            let big = match (invariants, poly) {
                (Some(inv), _) => FinAbGroup::cyclic_product(&parse_usize_list(inv)?)?,
                (None, Some(p)) => FinAbGroup::symmetry_group(&parse_poly(p)?),
                (None, None) => return Err(Error::InvalidParameters("give --invariants or --poly".into())),
            };
            if big.order() > caps.max_subgroups {
                return Err(Error::CapExceeded { what: "group order", size: big.order(), cap: caps.max_subgroups });
            }
            match gens {
                Some(gens) => theorems::verify_abelian_theorem(&big, &parse_subgroup(&big, gens)?, caps)?,
                None => theorems::verify_abelian_theorem_all(&big, caps)?,
            }
        }
        VerifyCmd::Main { poly, s, g, t } => {
            let f = parse_poly(poly)?;
            let s = PermutationGroup::parse(f.n(), s)?;
            match (g, t) {
                (None, None) => theorems::verify_main_theorem_all(&f, &s, caps)?,
                _ => {
                    let gf = FinAbGroup::symmetry_group(&f);
                    let g = parse_subgroup(&gf, g.as_deref().unwrap_or(""))?;
                    let t = match t {
                        Some(t) => PermutationGroup::parse(f.n(), t)?,
                        None => s.clone(),
                    };
                    theorems::verify_main_theorem(&f, &s, &g, &t, caps)?
                }
            }
        }
        VerifyCmd::Loop(lp) => theorems::verify_loop_theorem(&loop_period(lp)?, lp.k, caps)?,
        VerifyCmd::SaitoLoop { lp, flip_sign } => theorems::verify_saito_duality_loop(&loop_period(lp)?, lp.k, *flip_sign, caps)?,
    };
    Ok(report_output(cli, report))
}

fn loop_period(lp: &LoopArgs) -> Result<Vec<u32>> {
    parse_usize_list(&lp.p)?
        .into_iter()
        .map(|p| u32::try_from(p).map_err(|_| Error::InvalidParameters(format!("exponent {p} out of range"))))
        .collect()
}

fn report_output(cli: &Cli, mut report: VerificationReport) -> Output {
    if !cli.timings {
        report.ms = None;
    }
    let code = match report.verdict {
        Verdict::Verified => EXIT_OK,
        Verdict::Counterexample => EXIT_FINDING,
        Verdict::Inconclusive if report.all_equal() => EXIT_OK,
        Verdict::Inconclusive => EXIT_FINDING,
    };
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        render_report(&report)
    };
    Output { text, code }
}

fn render_report(r: &VerificationReport) -> String {
    let mut t = format!("{}\n", r.instance);
    for n in &r.notes {
        t += &format!("  note: {n}\n");
    }
    for c in &r.cases {
        t += &format!(
            "  {} lhs = {} rhs = {}  {}\n",
            if c.equal { "ok  " } else { "DIFF" },
            c.lhs,
            c.rhs,
            c.params
        );
    }
    let verdict = match r.verdict {
        Verdict::Verified => "verified",
        Verdict::Counterexample => "counterexample",
        Verdict::Inconclusive => "inconclusive",
    };
    t += &format!("verdict: {verdict} ({} cases)\n", r.cases.len());
    if let Some(ms) = r.ms {
        t += &format!("time: {ms} ms\n");
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("bhht").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn analyze_table() {
        let (code, out, _) = run_str(&["poly", "analyze", "x1^2*x2+x2^2*x1"]);
        assert_eq!(code, 0);
        assert!(out.contains("det E = 3"));
        assert!(out.contains("weights = (1/3, 1/3)"));
        assert!(out.contains("|G_f| = 3"));
    }

    #[test]
    fn pc_check() {
        let (code, out, _) = run_str(&["pc", "check", "--n", "5", "--gens", "(1 2 3 4 5);(1 4)(2 3)"]);
        assert_eq!(code, 0);
        assert!(out.contains("PC: true"));
    }

    #[test]
    fn verify_loop_json() {
        let (code, out, _) = run_str(&["verify", "loop", "--p", "2", "--k", "3", "--json"]);
        assert_eq!(code, 0);
        let r: VerificationReport = serde_json::from_str(&out).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(r.cases.iter().all(|c| c.params["sign"] == json!(-1)));
    }

    #[test]
    fn errors_exit_one() {
        let (code, _, err) = run_str(&["poly", "analyze", "x1^2+"]);
        assert_eq!(code, 1);
        assert!(err.contains("syntax"));
        assert_eq!(run_str(&["frobnicate"]).0, 1);
    }

    #[test]
    fn negative_control_exits_two() {
        assert_eq!(run_str(&["verify", "saito-loop", "--p", "2,2", "--flip-sign"]).0, 2);
        assert_eq!(run_str(&["verify", "saito-loop", "--p", "2,2"]).0, 0);
    }
}
