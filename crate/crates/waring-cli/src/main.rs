use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use waring::certify::{chain_for_k, identity_ids, split_list, verify_chain_semantically, verify_closure_identity, ChainReport};
use waring::order::{order_power_criterion, IntPolynomial, OrderFamily};
use waring::sets::{build_condition_set, ConditionSet, SetKind};
use waring::subgroup::{compute_trace_subgroup, decide_with, BruteForce, KthPowerTable, Verdict};
use waring::theorem::{verify_theorem_seeded, Evidence, TheoremReport};
use waring::trace_power::{coefficient, ReducedForm, TracePolynomial};
use waring::{make_ring, run_universe, Budget, Elem, MatrixR, Ring, TestUniverse, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "waring", version, about = "Sums of k-th powers of matrices over finite commutative rings")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration step budget.
    #[arg(long, global = true, env = "WARING_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate tr(A^k) for the companion matrix of x^2 - t x + delta.
    TracePower {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        delta: String,
        /// Evaluate the mod-kR normal form instead.
        #[arg(long)]
        reduced: bool,
        /// Also print the coefficient vector.
        #[arg(long)]
        explain: bool,
    },
    /// Membership in a trace-condition set.
    Set {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        element: Option<String>,
    },
    /// The additive subgroup generated by traces of k-th powers.
    Subgroup {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Work in R/k!R.
        #[arg(long)]
        quotient: bool,
    },
    /// Decide whether a matrix is a sum of k-th powers.
    Decide {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        ring: String,
        /// File holding the matrix as `n; a11,a12; a21,a22`.
        #[arg(long)]
        matrix: PathBuf,
        /// Search for an explicit decomposition (2x2, |R| <= 5).
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 3)]
        max_terms: usize,
    },
    /// Check every statement of a theorem family on a ring.
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Discriminant criterion for Z[x]/(f).
    Order {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        family: Option<String>,
    },
    /// Check a proof chain on rings (default: the default universe).
    Certify {
        #[arg(long)]
        k: u32,
        #[arg(long = "ring")]
        rings: Vec<String>,
        #[arg(long)]
        entry: Option<String>,
    },
    /// Check closure identities symbolically.
    Identity {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        id: Option<String>,
    },
    /// Run every check across a ring universe.
    Universe {
        /// One ring spec per line with optional `budget=N`.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

struct Output {
    text: String,
    json: Value,
    failed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let budget = cli.budget.map_or_else(Budget::default, Budget::new);
    match run(&cli.command, budget) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("reports serialize"));
            } else {
                print!("{}", out.text);
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn ring(spec: &str) -> Result<Ring> {
    make_ring(spec).with_context(|| format!("ring {spec:?}"))
}

fn run(cmd: &Command, budget: Budget) -> Result<Output> {
    match cmd {
        Command::TracePower { k, ring: spec, t, delta, reduced, explain } => trace_power(*k, spec, t, delta, *reduced, *explain),
        Command::Set { kind, ring: spec, element } => set(kind, spec, element.as_deref(), budget),
        Command::Subgroup { k, ring: spec, n, quotient } => subgroup(*k, spec, *n, *quotient, budget),
        Command::Decide { k, ring: spec, matrix, witness, max_terms } => decide(*k, spec, matrix, *witness, *max_terms, budget),
        Command::Verify { family, ring: spec, seed } => {
            let report = verify_theorem_seeded(family, &ring(spec)?, budget, *seed)?;
            Ok(Output { text: theorem_text(&report), json: serde_json::to_value(&report)?, failed: !report.agreement })
        }
        Command::Order { poly, p, family } => order(poly, *p, family.as_deref(), budget),
        Command::Certify { k, rings, entry } => certify(*k, rings, entry.as_deref(), budget),
        Command::Identity { k, id } => identity(*k, id.as_deref()),
        Command::Universe { config } => universe(config.as_ref(), budget),
    }
}

fn trace_power(k: u32, spec: &str, t: &str, delta: &str, reduced: bool, explain: bool) -> Result<Output> {
    let r = ring(spec)?;
    let tv = r.parse_elem(t)?;
    let dv = r.parse_elem(delta)?;
    let (value, ambient) = if reduced {
        let rf = ReducedForm::new(k, &r)?;
        let v = rf.eval(tv, dv);
        (rf.quotient.target.format_elem(v), rf.quotient.target.spec().to_string())
    } else {
        let v = TracePolynomial::new(k)?.bind(&r).eval(tv, dv);
        (r.format_elem(v), r.spec().to_string())
    };
    let coeffs: Vec<String> = (0..=k / 2).map(|i| coefficient(k, i).to_string()).collect();
    let mut text = format!("{value}\n");
    if explain {
        text.push_str(&format!("coefficients of t^(k-2r) d^r, r = 0..{}: [{}]\n", k / 2, coeffs.join(", ")));
    }
    let json = json!({ "k": k, "ring": ambient, "t": t, "delta": delta, "reduced": reduced, "value": value, "coefficients": coeffs });
    Ok(Output::ok(text, json))
}

fn witness_text(set: &ConditionSet, v: Elem) -> Value {
    match set.witness(v) {
        None => Value::Null,
        Some(w) => json!({
            "values": w.values.iter().map(|x| set.ambient().format_elem(*x)).collect::<Vec<_>>(),
            "m": w.m,
            "component": w.component,
        }),
    }
}

fn set(kind: &str, spec: &str, element: Option<&str>, budget: Budget) -> Result<Output> {
    let r = ring(spec)?;
    let kind: SetKind = kind.parse()?;
    let s = build_condition_set(kind, &r, budget)?;
    let amb = s.ambient();
    let head = format!("{} over {} ({} of {} elements)\n", kind.formula(), amb.spec(), s.len(), amb.card());
    if let Some(src) = element {
        let v = r.parse_elem(src)?;
        let pv = s.quotient.project(v);
        let member = s.contains(pv);
        let w = witness_text(&s, pv);
        let mut text = head;
        text.push_str(&format!("{src}: {}\n", if member { "member" } else { "not a member" }));
        if member {
            text.push_str(&format!("witness: {w}\n"));
        }
        let json = json!({ "kind": kind.to_string(), "ring": r.spec(), "element": src, "member": member, "witness": w });
        return Ok(Output::ok(text, json));
    }
    let mut text = head;
    let mut rows = Vec::new();
    for v in amb.elements() {
        let member = s.contains(v);
        text.push_str(&format!("{:>12}  {}\n", amb.format_elem(v), if member { "yes" } else { "no" }));
        rows.push(json!({ "element": amb.format_elem(v), "member": member, "witness": witness_text(&s, v) }));
    }
    let json = json!({ "kind": kind.to_string(), "ring": r.spec(), "ambient": amb.spec(), "members": rows });
    Ok(Output::ok(text, json))
}

fn subgroup(k: u32, spec: &str, n: usize, quotient: bool, budget: Budget) -> Result<Output> {
    let r = ring(spec)?;
    let s = compute_trace_subgroup(&r, k, n, quotient, budget)?;
    let amb = s.ambient();
    let elems: Vec<String> = s.elements().iter().map(|v| amb.format_elem(*v)).collect();
    let gens: Vec<Value> = s
        .generators
        .iter()
        .map(|g| {
            json!({
                "value": amb.format_elem(g.value),
                "from": g.provenance.iter().map(|x| amb.format_elem(*x)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut text = format!("S^{k} for {n}x{n} matrices over {}: {} of {} elements\n", amb.spec(), s.len(), amb.card());
    text.push_str(&format!("elements: {{{}}}\n", elems.join(", ")));
    text.push_str(&format!("generators: {}\n", s.generators.len()));
    for g in &gens {
        text.push_str(&format!("  {} from {}\n", g["value"].as_str().unwrap_or(""), g["from"]));
    }
    if let Some(c) = &s.caveat {
        text.push_str(&format!("caveat: {c}\n"));
    }
    let json = json!({
        "k": k, "n": n, "ring": amb.spec(), "size": s.len(), "whole_ring": s.is_whole_ring(),
        "elements": elems, "generators": gens, "exact": s.exact, "caveat": s.caveat,
    });
    Ok(Output::ok(text, json))
}

fn decide(k: u32, spec: &str, path: &PathBuf, witness: bool, max_terms: usize, budget: Budget) -> Result<Output> {
    let r = ring(spec)?;
    let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m = MatrixR::parse(&r, &src)?;
    let s = compute_trace_subgroup(&r, k, m.dim(), false, budget)?;
    let d = decide_with(&s, &m);
    let verdict = if d.verdict == Verdict::Yes { "YES" } else { "NO" };
    let mut text = format!("{verdict}: trace {} {} S^{k}\n", d.trace, if d.verdict == Verdict::Yes { "lies in" } else { "lies outside" });
    if let Some(c) = &d.caveat {
        text.push_str(&format!("caveat: {c}\n"));
    }
    let mut json = json!({ "decision": d, "matrix": m.to_text() });
    if witness {
        let table = KthPowerTable::new(&r, k)?;
        match table.witness(&m, max_terms)? {
            BruteForce::Found(terms) => {
                let roots: Vec<String> = terms.iter().map(MatrixR::to_text).collect();
                text.push_str(&format!("witness: sum of ({})^{k}\n", roots.join(")^k + (")));
                json["witness"] = json!(roots);
            }
            BruteForce::Inconclusive => {
                text.push_str(&format!("witness: INCONCLUSIVE with at most {max_terms} terms\n"));
                json["witness"] = Value::Null;
            }
        }
    }
    Ok(Output::ok(text, json))
}

fn theorem_text(report: &TheoremReport) -> String {
    let mut out = format!("{} over {}\n", report.family, report.ring);
    for st in &report.statements {
        out.push_str(&format!("  ({}) {:5}  {}\n", st.id, st.verdict, st.claim));
        match &st.evidence {
            Evidence::Exhaustive { .. } => {}
            Evidence::NotASum { matrix, element, .. } => {
                out.push_str(&format!("        counterexample: {matrix} (trace {element})\n"));
            }
            Evidence::NotAPower { element, .. } => out.push_str(&format!("        counterexample: {element}\n")),
            Evidence::NotAGroup { violation, .. } => out.push_str(&format!("        violation: {violation:?}\n")),
            Evidence::Mismatch { matrix, element, in_set, in_subgroup, .. } => out.push_str(&format!(
                "        counterexample: {matrix} (trace {element}; in set: {in_set}, in S^k: {in_subgroup})\n"
            )),
        }
    }
    out.push_str(&format!("agreement: {}\n", report.agreement));
    for d in &report.disagreements {
        out.push_str(&format!("  {d}\n"));
    }
    out
}

fn order(poly: &str, p: u64, family: Option<&str>, budget: Budget) -> Result<Output> {
    let f = IntPolynomial::parse(poly)?;
    let family = match family {
        Some(s) => Some(OrderFamily::parse(s)?),
        None => OrderFamily::for_prime(p),
    };
    let rep = order_power_criterion(&f, p, family, budget)?;
    let mut text = format!("R = Z[x]/({}), p = {}\n", rep.poly, rep.p);
    text.push_str(&format!("disc = {}, gcd(p, disc) = {}\n", rep.discriminant, rep.gcd));
    text.push_str(&format!("(p, disc R) = 1: {}\n", rep.coprime));
    text.push_str(&format!("every element is a p-th power mod pR: {}", rep.every_element_pth_power));
    if let Some(c) = &rep.non_power {
        text.push_str(&format!(" (not a p-th power: {c})"));
    }
    text.push_str(&format!("\nno x outside pR with x^p in pR: {}", rep.no_p_nilpotents));
    if let Some(c) = &rep.nilpotent {
        text.push_str(&format!(" (x = {c})"));
    }
    text.push_str(&format!("\ncriterion {}\n", if rep.coprime { "HOLDS" } else { "FAILS" }));
    if let Some(c) = &rep.conclusion {
        text.push_str(&format!("{c}\n"));
    }
    text.push_str(&format!("agreement: {}\n", rep.agreement));
    Ok(Output { text, json: serde_json::to_value(&rep)?, failed: !rep.agreement })
}

fn chain_text(rep: &ChainReport) -> String {
    let mut out = format!("chain {} (k = {}) over {} rings\n", rep.family, rep.k, rep.rings.len());
    for reading in &rep.readings {
        out.push_str(&format!(
            "reading {}: {} ({} entries clear symbolically)\n",
            reading.reading,
            if reading.semantic_pass { "PASS" } else { "FAIL" },
            reading.symbolically_cleared
        ));
        for e in &reading.entries {
            out.push_str(&format!(
                "  {:8} {}  {}\n",
                e.id,
                if e.passed { "PASS" } else { "FAIL" },
                if e.cleared_by.is_some() { "cleared" } else { "" }
            ));
            for r in e.rings.iter().filter(|r| !r.member || r.residual_recipe.is_none()) {
                out.push_str(&format!(
                    "           {}: {}\n",
                    r.ring,
                    r.counterexample.as_deref().unwrap_or("no derivation stays inside S^k")
                ));
            }
        }
    }
    out.push_str(&format!(
        "validating readings: {}\n",
        if rep.validating_readings.is_empty() { "none".into() } else { rep.validating_readings.join(", ") }
    ));
    out
}

fn certify(k: u32, specs: &[String], entry: Option<&str>, budget: Budget) -> Result<Output> {
    let chain = chain_for_k(k)?;
    let universe = if specs.is_empty() {
        TestUniverse::default()
    } else {
        let lines: Vec<&str> = specs.iter().flat_map(|s| split_list(s)).collect();
        TestUniverse::parse(&lines.join("\n"))?
    };
    let rings = universe.ring_handles()?;
    let rep = verify_chain_semantically(&chain, &rings, entry, budget)?;
    Ok(Output { text: chain_text(&rep), json: serde_json::to_value(&rep)?, failed: !rep.passed })
}

fn identity(k: Option<u32>, id: Option<&str>) -> Result<Output> {
    let targets: Vec<(u32, String)> = match (k, id) {
        (Some(k), Some(id)) => vec![(k, id.to_string())],
        (None, Some(_)) => bail!("--id needs --k"),
        (k, None) => identity_ids(k),
    };
    if targets.is_empty() {
        bail!("no identities for k = {}", k.unwrap_or(0));
    }
    let reports = targets.iter().map(|(k, id)| verify_closure_identity(*k, id)).collect::<waring::Result<Vec<_>>>()?;
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("k={} {}: {}", r.k, r.id, if r.holds() { "holds" } else { "FAILS" }));
        if let Some(h) = &r.holding_reading {
            text.push_str(&format!(" ({h} reading)"));
        }
        text.push('\n');
        for reading in r.readings.iter().filter(|x| !x.holds) {
            text.push_str(&format!("  {} reading leaves {} mod {}\n", reading.reading, reading.residual, r.k));
        }
    }
    let failed = reports.iter().any(|r| !r.holds());
    Ok(Output { text, json: serde_json::to_value(&reports)?, failed })
}

fn universe(config: Option<&PathBuf>, budget: Budget) -> Result<Output> {
    let u = match config {
        None => TestUniverse::default(),
        Some(path) => {
            let src = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            TestUniverse::parse(&src)?
        }
    };
    let rep = run_universe(&u, budget)?;
    Ok(Output { text: rep.summary(), json: serde_json::to_value(&rep)?, failed: !rep.passed() })
}
