//! The `lp` command line: generator listings, first-order deformation maps,
//! verification suites, Hilbert functions and poset summaries.
//!
//! [`run`] does all the work and returns the exit code with the text to
//! print, so it can be tested without spawning processes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lpdeform::cotangent::{t1_generators, T1Generator};
use lpdeform::deformation::DeformationContext;
use lpdeform::fixture::{compare_sets, parse_polynomial_list, SetDiff};
use lpdeform::grading::default_order;
use lpdeform::letterplace::{codimension, letterplace_generators, u_variables, x_variables};
use lpdeform::poly::{polynomial_to_json, ElementNames, GroebnerBudget, render_monomial, render_polynomial, render_variable, JsonTerm, Monomial, MonomialOrder, Polynomial};
use lpdeform::verifier::{summarize, CheckReport, Suite, Verifier};
use lpdeform::{Error, Poset, RootedTree};
use serde::Serialize;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lp", version, about = "Letterplace ideals of rooted-tree posets and their deformations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the generators of L(2,P) or of the deformed ideal J(2,P).
    Gens {
        #[arg(long, value_enum, default_value = "J")]
        ideal: Ideal,
        poset: PathBuf,
        #[arg(long)]
        json: bool,
        /// Compare against a fixture list instead of printing.
        #[arg(long, value_name = "FIXTURE")]
        compare: Option<PathBuf>,
    },
    /// List the first-order deformation maps `p1*p2 -> monomial`.
    T1 {
        poset: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Check {
        poset: PathBuf,
        #[arg(long, value_enum, default_value = "basic")]
        suite: SuiteArg,
        /// Degree bound for the Hilbert comparison in the full suite.
        #[arg(long, default_value_t = 4)]
        max_degree: u64,
        #[arg(long)]
        json: bool,
        /// Add per-family wall-clock times (output is then not byte-stable).
        #[arg(long)]
        timings: bool,
        /// Abort with exit code 3 after this many S-pair reductions.
        #[arg(long, default_value_t = GroebnerBudget::default().max_spairs)]
        max_spairs: usize,
    },
    /// Truncated Hilbert functions of L and J; exits 1 if they differ.
    Hilbert {
        poset: PathBuf,
        #[arg(long)]
        max_degree: u64,
        /// Abort with exit code 3 after this many S-pair reductions.
        #[arg(long, default_value_t = GroebnerBudget::default().max_spairs)]
        max_spairs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Size, codimension, multiplicity and parameter counts.
    Info {
        poset: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Ideal {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "J", alias = "j")]
    J,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Basic,
    Full,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::ResourceLimit(_) | Error::SizeLimit { .. } => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<(i32, String), Failure>;

/// Parses `argv` (including the program name) and executes the command.
/// Returns the exit code and everything that should be printed.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match execute(cli.command) {
        Ok(done) => done,
        Err(f) => (f.code, format!("error: {}\n", f.message.lines().next().unwrap_or(""))),
    }
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Gens { ideal, poset, json, compare } => gens(ideal, &poset, json, compare.as_deref()),
        Command::T1 { poset, json } => t1(&poset, json),
        Command::Check { poset, suite, max_degree, json, timings, max_spairs } => check(&poset, suite, max_degree, json, timings, budget(max_spairs)),
        Command::Hilbert { poset, max_degree, json, max_spairs } => hilbert(&poset, max_degree, json, budget(max_spairs)),
        Command::Info { poset, json } => info(&poset, json),
    }
}

fn budget(max_spairs: usize) -> GroebnerBudget {
    GroebnerBudget { max_spairs, ..GroebnerBudget::default() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    let text = read(path)?;
    Poset::parse_any(&text).map_err(|e| Failure::from(e).with_context(path))
}

fn load_tree(path: &Path) -> Result<RootedTree, Failure> {
    load_poset(path)?.as_rooted_tree().map_err(|e| Failure::from(e).with_context(path))
}

impl Failure {
    fn with_context(self, path: &Path) -> Failure {
        Failure { code: self.code, message: format!("{}: {}", path.display(), self.message) }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct GeneratorJson {
    lower: String,
    upper: String,
    terms: Vec<JsonTerm>,
}

/// `(lower, upper, generator)`.
type Entry = (String, String, Polynomial);

fn gens(ideal: Ideal, path: &Path, json: bool, compare: Option<&Path>) -> Outcome {
    let poset = load_poset(path)?;
    let exported = poset.to_json();
    let (names, order, list): (Box<dyn ElementNames>, Option<MonomialOrder>, Vec<Entry>) =
        match ideal {
            Ideal::L => {
                let list = letterplace_generators(&poset)
                    .iter()
                    .map(|g| (poset.name(g.lower).to_string(), poset.name(g.upper).to_string(), g.polynomial()))
                    .collect();
                let order = letterplace_order(&poset);
                (Box::new(poset), Some(order), list)
            }
            Ideal::J => {
                let tree = poset.as_rooted_tree().map_err(|e| Failure::from(e).with_context(path))?;
                let list = DeformationContext::new(tree.clone())
                    .j_ideal_generators()
                    .into_iter()
                    .map(|g| (tree.name(g.lower).to_string(), tree.name(g.upper).to_string(), g.polynomial))
                    .collect();
                (Box::new(tree.clone()), Some(default_order(&tree)), list)
            }
        };
    let names = names.as_ref();
    let order = order.as_ref();
    if let Some(fixture) = compare {
        let expected = parse_polynomial_list(&read(fixture)?, names).map_err(|e| Failure::from(e).with_context(fixture))?;
        let computed: Vec<Polynomial> = list.into_iter().map(|(_, _, f)| f).collect();
        let diff = compare_sets(&computed, &expected);
        let code = if diff.is_empty() { EXIT_OK } else { EXIT_FAIL };
        let out = if json { diff_json(&diff, expected.len(), names, order) } else { diff_text(&diff, fixture, expected.len(), names, order) };
        return Ok((code, out));
    }
    let out = if json {
        let gens: Vec<GeneratorJson> = list
            .into_iter()
            .map(|(lower, upper, f)| GeneratorJson { lower, upper, terms: polynomial_to_json(&f, names, order) })
            .collect();
        let ideal = match ideal {
            Ideal::L => "L",
            Ideal::J => "J",
        };
        to_json(&json!({ "ideal": ideal, "poset": exported, "generators": gens }))
    } else {
        list.iter().map(|(_, _, f)| render_polynomial(f, names, order) + "\n").collect()
    };
    Ok((EXIT_OK, out))
}

fn diff_text(diff: &SetDiff, fixture: &Path, expected: usize, names: &dyn ElementNames, order: Option<&MonomialOrder>) -> String {
    let r = |f: &Polynomial| render_polynomial(f, names, order);
    let mut out = String::new();
    if diff.is_empty() {
        let _ = writeln!(out, "PASS {}: {expected} entries match", fixture.display());
        return out;
    }
    let _ = writeln!(out, "FAIL {}: {} differences", fixture.display(), diff.len());
    for f in &diff.missing {
        let _ = writeln!(out, "missing: {}", r(f));
    }
    for f in &diff.extra {
        let _ = writeln!(out, "extra: {}", r(f));
    }
    for (e, c) in &diff.mismatched {
        let _ = writeln!(out, "mismatched: expected {} computed {}", r(e), r(c));
    }
    out
}

fn diff_json(diff: &SetDiff, expected: usize, names: &dyn ElementNames, order: Option<&MonomialOrder>) -> String {
    let t = |f: &Polynomial| polynomial_to_json(f, names, order);
    to_json(&json!({
        "verdict": if diff.is_empty() { "PASS" } else { "FAIL" },
        "expected": expected,
        "missing": diff.missing.iter().map(t).collect::<Vec<_>>(),
        "extra": diff.extra.iter().map(t).collect::<Vec<_>>(),
        "mismatched": diff.mismatched.iter().map(|(e, c)| json!({ "expected": t(e), "computed": t(c) })).collect::<Vec<_>>(),
    }))
}

/// Place 1 before place 2, elements along the linear extension.
fn letterplace_order(poset: &Poset) -> MonomialOrder {
    MonomialOrder::grevlex(x_variables(poset))
}

fn t1(path: &Path, json: bool) -> Outcome {
    let poset = load_poset(path)?;
    let gens = t1_generators(&poset);
    let tree = poset.as_rooted_tree().ok();
    let order = letterplace_order(&poset);
    let mono = |m: &Monomial| render_monomial(m, &poset, Some(&order));
    let line = |g: &T1Generator| format!("{} -> {}", mono(&g.source_monomial()), mono(&g.image));
    let out = if json {
        let entries: Vec<_> = gens
            .iter()
            .map(|g| {
                let names = |s: &[lpdeform::ElemId]| s.iter().map(|&e| poset.name(e).to_string()).collect::<Vec<_>>();
                let parameter = tree.as_ref().and_then(|_| g.parameter()).map(|u| render_variable(u, &poset));
                json!({
                    "source": poset.name(g.source),
                    "lower_set": names(&g.lower_set),
                    "upper_set": names(&g.upper_set),
                    "image": g.image.factors().iter().map(|&(v, e)| (render_variable(v, &poset), e)).collect::<std::collections::BTreeMap<_, _>>(),
                    "parameter": parameter,
                })
            })
            .collect();
        to_json(&entries)
    } else {
        gens.iter().map(|g| line(g) + "\n").collect()
    };
    Ok((EXIT_OK, out))
}

fn report_json(r: &CheckReport, names: &dyn ElementNames, order: &MonomialOrder) -> serde_json::Value {
    json!({
        "name": r.name,
        "params": r.params,
        "verdict": r.verdict.as_str(),
        "witness": r.witness.as_ref().map(|w| polynomial_to_json(w, names, Some(order))),
        "detail": r.detail,
    })
}

fn check(path: &Path, suite: SuiteArg, max_degree: u64, json: bool, timings: bool, budget: GroebnerBudget) -> Outcome {
    let tree = load_tree(path)?;
    let suite = match suite {
        SuiteArg::Basic => Suite::Basic,
        SuiteArg::Full => Suite::Full,
    };
    let suite_name = if suite == Suite::Full { "full" } else { "basic" };
    let verifier = Verifier::new(tree.clone()).with_budget(budget);
    let reports = verifier.run_suite(suite, max_degree)?;
    let order = verifier.order();
    let failures = reports.iter().filter(|r| !r.passed()).count();
    let verdict = if failures == 0 { "PASS" } else { "FAIL" };
    let code = if failures == 0 { EXIT_OK } else { EXIT_FAIL };
    let summary = summarize(&reports);
    if json {
        let families: Vec<_> = summary
            .iter()
            .map(|s| {
                let mut v = json!({ "name": s.name, "instances": s.instances, "failures": s.failures });
                if timings {
                    v["seconds"] = json!(s.elapsed.as_secs_f64());
                }
                v
            })
            .collect();
        let out = json!({
            "poset": tree.poset().to_json(),
            "suite": suite_name,
            "max_degree": max_degree,
            "verdict": verdict,
            "checks": reports.iter().map(|r| report_json(r, &tree, order)).collect::<Vec<_>>(),
            "families": families,
        });
        return Ok((code, to_json(&out)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "# suite {suite_name} on {} elements, {} generators", tree.len(), verifier.generators().len());
    let _ = writeln!(out, "# membership checks reduce modulo one reduced Groebner basis of J");
    let _ = writeln!(out, "# the depth-induction bridge is covered by the lemma-dt and flat-basic families");
    for r in &reports {
        let mut line = format!("{} {}", r.verdict.as_str(), r.name);
        for p in &r.params {
            line.push(' ');
            line.push_str(p);
        }
        if let Some(d) = &r.detail {
            let _ = write!(line, " ({d})");
        }
        let _ = writeln!(out, "{line}");
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "  witness: {}", render_polynomial(w, &tree, Some(order)));
        }
    }
    for s in &summary {
        let _ = write!(out, "# {} {} checks, {} failed", s.name, s.instances, s.failures);
        if timings {
            let _ = write!(out, ", {:.3}s", s.elapsed.as_secs_f64());
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{verdict} {} checks, {failures} failed", reports.len());
    Ok((code, out))
}

fn hilbert(path: &Path, max_degree: u64, json: bool, budget: GroebnerBudget) -> Outcome {
    let tree = load_tree(path)?;
    let (l, j) = Verifier::new(tree).with_budget(budget).hilbert_vectors(max_degree)?;
    let (code, verdict) = if l == j { (EXIT_OK, "PASS") } else { (EXIT_FAIL, "FAIL") };
    let out = if json {
        to_json(&json!({ "max_degree": max_degree, "L": l, "J": j, "verdict": verdict }))
    } else {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        format!("L: {}\nJ: {}\n{verdict}\n", join(&l), join(&j))
    };
    Ok((code, out))
}

fn info(path: &Path, json: bool) -> Outcome {
    let poset = load_poset(path)?;
    let multiplicity = poset.count_order_ideals()?;
    let t1_count = t1_generators(&poset).len();
    let tree = poset.as_rooted_tree().ok();
    let u_count = tree.as_ref().map(|t| u_variables(t).len());
    let consistent = u_count.is_none_or(|u| u == t1_count);
    let code = if consistent { EXIT_OK } else { EXIT_FAIL };
    let out = if json {
        to_json(&json!({
            "elements": poset.len(),
            "codimension": codimension(&poset),
            "multiplicity": multiplicity,
            "root": tree.as_ref().map(|t| t.name(t.root()).to_string()),
            "u_variables": u_count,
            "t1_generators": t1_count,
            "verdict": if consistent { "PASS" } else { "FAIL" },
        }))
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "elements: {}", poset.len());
        let _ = writeln!(out, "codimension: {}", codimension(&poset));
        let _ = writeln!(out, "multiplicity: {multiplicity}");
        match &tree {
            Some(t) => {
                let _ = writeln!(out, "root: {}", t.name(t.root()));
            }
            None => out.push_str("root: none (not a rooted tree)\n"),
        }
        if let Some(u) = u_count {
            let _ = writeln!(out, "u-variables: {u}");
        }
        let _ = writeln!(out, "t1-generators: {t1_count}");
        if u_count.is_some() {
            let _ = writeln!(out, "{} parameters pair with first-order maps", if consistent { "PASS" } else { "FAIL" });
        }
        out
    };
    Ok((code, out))
}
