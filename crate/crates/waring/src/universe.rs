//! Test universes: ring lists with per-ring budgets, and the aggregate run of
//! every theorem family, closure identity and proof chain across them.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::certify::{chains, verify_all_identities, verify_chain_semantically, ChainReport, IdentityReport};
use crate::error::{Budget, Error, Result};
use crate::ring::{make_ring, Ring};
use crate::theorem::{verify_theorem, TheoremReport, FAMILIES};

pub const DEFAULT_UNIVERSE: [&str; 18] = [
    "Z/2",
    "Z/3",
    "Z/4",
    "Z/5",
    "Z/8",
    "Z/9",
    "Z/10",
    "Z/12",
    "Z/14",
    "Z/15",
    "Z/16",
    "Z/2[x]/(x^2+x+1)",
    "Z/2[x]/(x^3+x+1)",
    "Z/3[x]/(x^2+1)",
    "Z/3[e]/(e^2)",
    "Z/2[e]/(e^2)",
    "Z/4[e]/(e^2)",
    "(Z/2)x(Z/3)",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseRing {
    pub spec: String,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestUniverse {
    pub rings: Vec<UniverseRing>,
}

impl Default for TestUniverse {
    fn default() -> Self {
        TestUniverse { rings: DEFAULT_UNIVERSE.iter().map(|s| UniverseRing { spec: s.to_string(), budget: None }).collect() }
    }
}

impl TestUniverse {
    /// One ring spec per line, optionally followed by `budget=N`; `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<TestUniverse> {
        let mut rings = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (spec, budget) = match line.rsplit_once(char::is_whitespace) {
                Some((spec, tail)) if tail.starts_with("budget=") => {
                    let n = tail["budget=".len()..]
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("line {}: bad budget {tail:?}", no + 1)))?;
                    (spec.trim(), Some(n))
                }
                _ => (line, None),
            };
            make_ring(spec).map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
            rings.push(UniverseRing { spec: spec.to_string(), budget });
        }
        if rings.is_empty() {
            return Err(Error::Parse("universe lists no rings".into()));
        }
        Ok(TestUniverse { rings })
    }

    /// Per-ring budgets may only tighten the global one.
    pub fn check_budgets(&self, global: Budget) -> Result<()> {
        for r in &self.rings {
            if let Some(b) = r.budget {
                global.check(b as u128)?;
            }
        }
        Ok(())
    }

    pub fn ring_handles(&self) -> Result<Vec<Ring>> {
        self.rings.iter().map(|r| make_ring(&r.spec)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseReport {
    pub rings: Vec<String>,
    pub theorems: Vec<TheoremReport>,
    pub identities: Vec<IdentityReport>,
    pub chains: Vec<ChainReport>,
    pub failures: Vec<String>,
}

impl UniverseReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let width = self.rings.iter().map(|r| r.len()).max().unwrap_or(4).max(4);
        let _ = write!(out, "{:width$}", "ring");
        for f in FAMILIES {
            let _ = write!(out, " {f:>5}");
        }
        out.push('\n');
        for ring in &self.rings {
            let _ = write!(out, "{ring:width$}");
            for f in FAMILIES {
                let cell = self
                    .theorems
                    .iter()
                    .find(|t| &t.ring == ring && t.family == f)
                    .map_or("-", |t| if t.agreement { "ok" } else { "FAIL" });
                let _ = write!(out, " {cell:>5}");
            }
            out.push('\n');
        }
        let held = self.identities.iter().filter(|i| i.holds()).count();
        let _ = writeln!(out, "identities: {held}/{} hold", self.identities.len());
        for c in &self.chains {
            let _ = writeln!(
                out,
                "chain {}: {} (validating readings: {})",
                c.family,
                if c.passed { "ok" } else { "FAIL" },
                if c.validating_readings.is_empty() { "none".to_string() } else { c.validating_readings.join(", ") }
            );
        }
        for f in &self.failures {
            let _ = writeln!(out, "failure: {f}");
        }
        out
    }
}

/// Runs every theorem family on every ring, every closure identity, and every
/// proof chain over the whole universe.
pub fn run_universe(universe: &TestUniverse, budget: Budget) -> Result<UniverseReport> {
    universe.check_budgets(budget)?;
    let rings = universe.ring_handles()?;
    let tasks: Vec<(usize, &str)> = (0..rings.len()).flat_map(|i| FAMILIES.iter().map(move |f| (i, *f))).collect();
    let theorems = crate::par::map(&tasks, |&(i, family)| {
        let b = universe.rings[i].budget.map_or(budget, Budget::new);
        verify_theorem(family, &rings[i], b)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let identities = verify_all_identities(None)?;
    let chains = chains()?
        .iter()
        .map(|c| verify_chain_semantically(c, &rings, None, budget))
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    for t in theorems.iter().filter(|t| !t.agreement) {
        failures.push(format!("{} on {}: {}", t.family, t.ring, t.disagreements.join("; ")));
    }
    for i in identities.iter().filter(|i| !i.holds()) {
        failures.push(format!("identity {} (k={}) holds under no reading", i.id, i.k));
    }
    for c in chains.iter().filter(|c| !c.passed) {
        let mut bad = Vec::new();
        for e in c.readings.iter().flat_map(|r| &r.entries).filter(|e| !e.passed) {
            let rings: Vec<&str> = e
                .rings
                .iter()
                .filter(|r| !r.member || r.residual_recipe.is_none())
                .map(|r| r.ring.as_str())
                .collect();
            let item = format!("{} on {}", e.id, rings.join(", "));
            if !bad.contains(&item) {
                bad.push(item);
            }
        }
        failures.push(format!("chain {}: {}", c.family, bad.join("; ")));
    }
    Ok(UniverseReport {
        rings: rings.iter().map(|r| r.spec().to_string()).collect(),
        theorems,
        identities,
        chains,
        failures,
    })
}
