//! Invariant suite run by the `check` command.

use std::fmt;

use crate::automata::{
    build_direct, build_reverse_semigroup_within, equivalent, minimize, reverse_and_determinize,
};
use crate::budget::Budget;
use crate::digits::to_digits;
use crate::error::Result;
use crate::kernel::{enumerate_kernel_within, Side};
use crate::oracle::{expand_within, lambda};
use crate::semigroup::{structure_semigroup_within, SemigroupClosure};
use crate::substitution::Substitution;
use crate::toeplitz::ToeplitzAnalysis;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// Preconditions not met (e.g. a Toeplitz check on a substitution without
    /// a coincidence) or the budget was too small.
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Outcome,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS {}", self.name),
            Outcome::Fail(why) => write!(f, "FAIL {}: {why}", self.name),
            Outcome::Skipped(why) => write!(f, "SKIP {}: {why}", self.name),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AuditConfig {
    /// Indices [-range, range] compared against the oracle.
    pub range: i64,
    /// Steps ℓ^k with k ≤ max_k certify aperiodic verdicts.
    pub max_k: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { range: 300, max_k: 4 }
    }
}

/// Runs every check on the simplified power of `sub`. Errors are returned
/// only when the input itself is unusable (no seed, budget exceeded while
/// building the machines); failures of individual checks are reported in
/// the list.
pub fn run_checks(sub: &Substitution, config: &AuditConfig, budget: &Budget) -> Result<Vec<CheckResult>> {
    let (work, _) = sub.simplify_within(budget)?;
    work.fixed_seed()?;
    let ell = work.length();
    let range = config.range;
    let w = work.fixed_point_window_within(-range, range, budget)?;
    let direct = build_direct(&work)?;
    let reverse = build_reverse_semigroup_within(&work, budget)?.dfao;
    let mut out = Vec::new();
    let mut record = |name: &'static str, r: Result<Outcome>| {
        let outcome = r.unwrap_or_else(|e| {
            if e.is_refusal() {
                Outcome::Skipped(e.to_string())
            } else if e.is_budget() {
                Outcome::Skipped(format!("{e}; raise SUBSTRATUM_BUDGET"))
            } else {
                Outcome::Fail(e.to_string())
            }
        });
        out.push(CheckResult { name, outcome });
    };

    record("simplified columns are idempotent", {
        let (f, l) = (work.first_column(), work.last_column());
        Ok(if f.compose(&f) == f && l.compose(&l) == l {
            Outcome::Pass
        } else {
            Outcome::Fail("first or last column is not idempotent".into())
        })
    });

    record("fixed point is invariant under the substitution", (|| {
        let image = work.apply(w.slice(0, range / ell as i64)?.letters());
        let n = image.len().min(range as usize + 1);
        Ok(check(image[..n] == w.slice(0, n as i64 - 1)?.letters()[..], || {
            "θ(u) differs from u on the non-negative side".into()
        }))
    })());

    record("digit expansions round-trip", (|| {
        for n in -range..=range {
            let ds = to_digits(n, ell)?;
            if ds.to_int()? != n || !ds.is_canonical() {
                return Ok(Outcome::Fail(format!("{n} does not round-trip")));
            }
        }
        Ok(Outcome::Pass)
    })());

    record("direct machine generates the fixed point", Ok(first_mismatch(&w, |n| direct.run(n))));
    record("reverse machine generates the fixed point", Ok(first_mismatch(&w, |n| reverse.run(n))));

    record("padding does not change the output", (|| {
        let (m, d) = (&reverse, &direct);
        for n in -range..=range {
            let ds = to_digits(n, ell)?;
            for extra in 1..=2 {
                let padded = ds.pad(ds.len() + extra);
                if m.run_string(&padded)? != m.run(n)? || d.run_string(&padded)? != d.run(n)? {
                    return Ok(Outcome::Fail(format!("{n} changes under padding")));
                }
            }
        }
        Ok(Outcome::Pass)
    })());

    record("structure semigroup lies in the reachable monoid", (|| {
        let s = structure_semigroup_within(&work, budget)?;
        let closure = SemigroupClosure::within(&work.columns(), budget)?;
        let inside = s.elements.iter().all(|e| e.is_identity() || closure.contains(e));
        Ok(if !inside {
            Outcome::Fail("an element of S_θ is not a product of columns".into())
        } else if !s.diagnostics.is_empty() {
            Outcome::Fail(s.diagnostics.join("; "))
        } else {
            Outcome::Pass
        })
    })());

    record("kernel, minimal machines and determinized machine agree", (|| {
        let kernel = enumerate_kernel_within(&work, Side::TwoSided, budget)?.len();
        let a = minimize(&reverse);
        let b = minimize(&reverse_and_determinize(&direct)?);
        let eq = equivalent(&a, &b)?;
        Ok(if kernel != a.len() || a.len() != b.len() {
            Outcome::Fail(format!("sizes {kernel}, {}, {}", a.len(), b.len()))
        } else if !eq.equal {
            Outcome::Fail(format!("machines differ at {:?}", eq.counterexample))
        } else {
            Outcome::Pass
        })
    })());

    record("minimization is idempotent", (|| {
        let m = minimize(&reverse);
        Ok(check(minimize(&m) == m, || "second pass changed the machine".into()))
    })());

    record("kernel children are column images", (|| {
        for r in 0..ell {
            let col = work.column(r)?;
            let child = lambda(&w, ell, r);
            let bad = child.iter().find(|&(n, a)| Some(a) != w.get(n).map(|b| col.apply(b)));
            if let Some((n, _)) = bad {
                return Ok(Outcome::Fail(format!("Λ_{r} differs from θ_{r} at {n}")));
            }
        }
        Ok(Outcome::Pass)
    })());

    record("periodicity verdicts agree with the fixed point", (|| {
        let t = ToeplitzAnalysis::within(sub, budget)?;
        let verdicts = t.range(-range, range)?;
        let g = t.certification_generations(&verdicts, config.max_k);
        let window = expand_within(t.working(), g, budget)?;
        let cert = t.certify(&verdicts, &window, config.max_k)?;
        Ok(if !cert.inconsistencies.is_empty() {
            Outcome::Fail(cert.inconsistencies.join("; "))
        } else if !cert.uncovered.is_empty() {
            Outcome::Fail(format!("{} indices not covered", cert.uncovered.len()))
        } else {
            Outcome::Pass
        })
    })());

    record("aperiodic indices keep the digit stream in the reduced graph", (|| {
        let t = ToeplitzAnalysis::within(sub, budget)?;
        let g = t.reduced_graph();
        for n in -range..=range {
            let periodic = t.decide_per(n)?.is_periodic();
            if t.stream_stays_in_reduced_graph(n, &g) == periodic {
                return Ok(Outcome::Fail(format!("{n}")));
            }
        }
        Ok(Outcome::Pass)
    })());

    Ok(out)
}

fn check(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(why())
    }
}

fn first_mismatch(w: &crate::oracle::Window, run: impl Fn(i64) -> Result<u8>) -> Outcome {
    for (n, a) in w.iter() {
        match run(n) {
            Ok(b) if b == a => {}
            Ok(_) => return Outcome::Fail(format!("index {n}")),
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    Outcome::Pass
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| !matches!(r.outcome, Outcome::Fail(_)))
}

pub fn run_default(sub: &Substitution) -> Result<Vec<CheckResult>> {
    run_checks(sub, &AuditConfig::default(), &Budget::default())
}
