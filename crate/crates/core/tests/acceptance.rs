//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use substratum::automata::{build_direct, build_reverse_semigroup, minimize, reverse_and_determinize};
use substratum::catalog::{bigdiag, period_doubling, thue_morse};
use substratum::digits::to_digits;
use substratum::kernel::{enumerate_kernel, Side};
use substratum::oracle::{certifies_nonconstant, expand_within, lambda, sample_progression_between};
use substratum::semigroup::structure_semigroup;
use substratum::toeplitz::{self, Address, Status, ToeplitzAnalysis};
use substratum::{Budget, ColumnMap, Error, Letter, Substitution};

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Letters u_lo..=u_hi by iterating the rules on the seed, written out here
/// rather than taken from the library.
fn brute_window(sub: &Substitution, lo: i64, hi: i64) -> BTreeMap<i64, Letter> {
    let seed = sub.seed().expect("seeded");
    let (mut left, mut right) = (vec![seed.left], vec![seed.right]);
    while (left.len() as i64) < -lo || (right.len() as i64) <= hi {
        left = left.iter().flat_map(|&a| sub.rule(a).to_vec()).collect();
        right = right.iter().flat_map(|&a| sub.rule(a).to_vec()).collect();
    }
    let len = left.len() as i64;
    (lo..=hi)
        .map(|n| {
            let a = if n < 0 { left[(len + n) as usize] } else { right[n as usize] };
            (n, a)
        })
        .collect()
}

fn map(table: &[Letter]) -> ColumnMap {
    ColumnMap::new(table.to_vec())
}

/// Closure of the generators under composition, by pairwise products.
fn brute_closure(gens: &[ColumnMap]) -> BTreeSet<ColumnMap> {
    let mut set: BTreeSet<ColumnMap> = gens.iter().cloned().collect();
    loop {
        let products: Vec<ColumnMap> = set
            .iter()
            .flat_map(|x| set.iter().map(move |y| x.compose(y)))
            .collect();
        let before = set.len();
        set.extend(products);
        if set.len() == before {
            return set;
        }
    }
}

fn ac1() -> Check {
    let pd = period_doubling();
    let (pd2, p) = pd.simplify().map_err(|e| e.to_string())?;
    ensure!(p == 2, "simplify exponent {p}");
    let s = structure_semigroup(&pd2);
    let got: BTreeSet<ColumnMap> = s.elements.iter().cloned().collect();
    let expected = BTreeSet::from([map(&[0, 1]), map(&[0, 0]), map(&[1, 1])]);
    ensure!(got == expected, "S_θ = {got:?}");
    let mut m1 = brute_closure(&pd.columns());
    m1.insert(ColumnMap::identity(2));
    let expected_m1 = BTreeSet::from([map(&[0, 1]), map(&[0, 0]), map(&[1, 1]), map(&[1, 0])]);
    ensure!(m1 == expected_m1, "⟨id, θ_i⟩ = {m1:?}");
    ensure!(
        structure_semigroup(&pd).graded.generated_monoid(1) == expected_m1,
        "graded monoid at n = 1 differs"
    );
    Ok(())
}

fn ac2() -> Check {
    let m = build_direct(&bigdiag()).map_err(|e| e.to_string())?;
    let (a, b, c) = (0, 1, 2);
    let figure = BTreeSet::from([
        (a, 0, a),
        (a, 1, c),
        (a, 2, b),
        (b, 0, b),
        (b, 1, a),
        (b, 2, a),
        (c, 0, b),
        (c, 1, b),
        (c, 2, a),
    ]);
    let got: BTreeSet<(usize, usize, usize)> = (0..m.len())
        .flat_map(|s| (0..m.ell()).map(move |d| (s, d)))
        .map(|(s, d)| (s, d, m.step(s, d)))
        .collect();
    ensure!(got == figure, "edges {got:?}");
    ensure!(m.names() == ["a", "b", "c"], "names {:?}", m.names());
    use substratum::automata::Sign;
    ensure!(m.initial(Sign::Nonneg) == Some(a), "ℕ₀ start");
    ensure!(m.initial(Sign::Neg) == Some(b), "−ℕ start");
    Ok(())
}

fn ac3() -> Check {
    for sub in [period_doubling(), bigdiag()] {
        let (simple, _) = sub.simplify().map_err(|e| e.to_string())?;
        let m = build_reverse_semigroup(&simple).map_err(|e| e.to_string())?.dfao;
        let w = brute_window(&simple, -10_000, 10_000);
        let mismatches = w
            .iter()
            .filter(|&(&n, &a)| m.run(n).ok() != Some(a))
            .count();
        ensure!(mismatches == 0, "{mismatches} mismatches");
    }
    Ok(())
}

fn ac4() -> Check {
    let mut sizes = Vec::new();
    for sub in [period_doubling(), bigdiag()] {
        let (simple, _) = sub.simplify().map_err(|e| e.to_string())?;
        let kernel = enumerate_kernel(&simple, Side::TwoSided).map_err(|e| e.to_string())?.len();
        let a = minimize(&build_reverse_semigroup(&simple).map_err(|e| e.to_string())?.dfao).len();
        let direct = build_direct(&simple).map_err(|e| e.to_string())?;
        let b = minimize(&reverse_and_determinize(&direct).map_err(|e| e.to_string())?).len();
        ensure!(kernel == a && a == b, "sizes {kernel}, {a}, {b}");
        sizes.push(kernel);
    }
    ensure!(sizes[0] == 3, "period-doubling kernel has {} elements", sizes[0]);
    Ok(())
}

fn ac5() -> Check {
    let pd = period_doubling();
    let aper = toeplitz::aperiodic_in_range(&pd, -1000, 1000).map_err(|e| e.to_string())?;
    ensure!(aper == vec![-1], "Aper = {aper:?}");
    let g = toeplitz::reduced_graph(&pd).map_err(|e| e.to_string())?;
    ensure!(g.vertices.len() == 1, "{} vertices", g.vertices.len());
    let v = g.vertices[0];
    ensure!(g.names[v] == "(a,b)^T", "vertex {}", g.names[v]);
    ensure!(g.edges == vec![(v, v, vec![3])], "edges {:?}", g.edges);
    ensure!(g.cycles.len() == 1, "{} cycles", g.cycles.len());
    ensure!(g.cycles[0].address == Address::Integer(-1), "address {}", g.cycles[0].address);
    Ok(())
}

fn ac6() -> Check {
    let t = ToeplitzAnalysis::new(&bigdiag()).map_err(|e| e.to_string())?;
    let ell = t.ell() as u64;
    let verdicts = t.range(-500, 500).map_err(|e| e.to_string())?;
    let w = expand_within(t.working(), 7, &Budget::uniform(2 * 9usize.pow(7)))
        .map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for v in &verdicts {
        let n = v.index;
        match v.status {
            Status::Aperiodic => {
                for k in 0..=6u32 {
                    if !certifies_nonconstant(&w, n, ell.pow(k)).map_err(|e| e.to_string())? {
                        bad.push(format!("{n} constant at step {}", ell.pow(k)));
                    }
                }
            }
            Status::Periodic { k, period, letter } => {
                let span = ell.pow(k as u32 + 3) as i64;
                let (lo, hi) = (n - span / 2, n + span / 2);
                ensure!(w.contains(lo) && w.contains(hi), "window does not cover {n}");
                let seen = sample_progression_between(&w, n, period, lo, hi).map_err(|e| e.to_string())?;
                if seen != BTreeSet::from([letter]) {
                    bad.push(format!("{n}: {seen:?} along period {period}"));
                }
            }
        }
    }
    ensure!(bad.is_empty(), "{} inconsistencies, first {}", bad.len(), bad[0]);
    let cert = t.certify(&verdicts, &w, 6).map_err(|e| e.to_string())?;
    ensure!(cert.is_clean(), "library certification: {cert:?}");
    Ok(())
}

fn ac7() -> Check {
    let tm = thue_morse();
    let c = tm.column_number().map_err(|e| e.to_string())?;
    ensure!(c == 2, "column number {c}");
    match toeplitz::decide_per(&tm, 0) {
        Err(Error::NotToeplitz(2)) => Ok(()),
        other => Err(format!("decide_per gave {other:?}")),
    }
}

fn ac8() -> Check {
    for base in [2usize, 3, 4, 9] {
        for n in -100_000i64..=100_000 {
            let ds = to_digits(n, base).map_err(|e| e.to_string())?;
            ensure!(ds.to_int().ok() == Some(n), "round trip {n} base {base}");
        }
    }
    for sub in [period_doubling(), bigdiag()] {
        let (simple, _) = sub.simplify().map_err(|e| e.to_string())?;
        let ell = simple.length();
        let rev = build_reverse_semigroup(&simple).map_err(|e| e.to_string())?.dfao;
        let dir = build_direct(&simple).map_err(|e| e.to_string())?;
        for n in -2000i64..=2000 {
            let ds = to_digits(n, ell).map_err(|e| e.to_string())?;
            for extra in 1..=3 {
                let padded = ds.pad(ds.len() + extra);
                for m in [&rev, &dir] {
                    ensure!(m.run_string(&padded).ok() == m.run(n).ok(), "padding {n} by {extra}");
                }
            }
        }
        for m in [&rev, &dir] {
            let once = minimize(m);
            ensure!(minimize(&once) == once, "minimize is not idempotent");
        }

        let g = (1..).find(|&g| ell.pow(g) >= 4096).unwrap();
        let w = expand_within(&simple, g as usize, &Budget::default()).map_err(|e| e.to_string())?;
        ensure!(w.len() >= 4096, "window length {}", w.len());
        for r in 0..ell {
            let col = simple.column(r).map_err(|e| e.to_string())?;
            let child = lambda(&w, ell, r);
            ensure!(child.len() >= 2, "empty child");
            for (n, a) in child.iter() {
                ensure!(Some(a) == w.get(n).map(|b| col.apply(b)), "Λ_{r} at {n}");
            }
        }

        let brute = brute_window(&simple, -4096, 4096);
        let right: Vec<Letter> = (0..=4096 / ell as i64).map(|n| brute[&n]).collect();
        let image = simple.apply(&right);
        for (i, &a) in image.iter().enumerate().take(4097) {
            ensure!(brute[&(i as i64)] == a, "θ(u) ≠ u at {i}");
        }
        let left: Vec<Letter> = (-(4096 / ell as i64)..0).map(|n| brute[&n]).collect();
        let image = simple.apply(&left);
        let len = image.len() as i64;
        for (i, &a) in image.iter().enumerate() {
            ensure!(brute[&(i as i64 - len)] == a, "θ(u) ≠ u at {}", i as i64 - len);
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, &str, Duration, fn() -> Check); 8] = [
        ("AC1", "period-doubling semigroup", Duration::from_secs(1), ac1),
        ("AC2", "bigdiag direct automaton edges", Duration::from_secs(1), ac2),
        ("AC3", "reverse machine matches the fixed point on [-10^4, 10^4]", Duration::from_secs(10), ac3),
        ("AC4", "kernel and minimal machine sizes agree", Duration::from_secs(10), ac4),
        ("AC5", "period-doubling aperiodic set and reduced graph", Duration::from_secs(5), ac5),
        ("AC6", "bigdiag verdicts agree with progression samples on [-500, 500]", Duration::from_secs(30), ac6),
        ("AC7", "Thue-Morse is refused", Duration::from_secs(1), ac7),
        ("AC8", "property suites", Duration::from_secs(60), ac8),
    ];
    let mut failed = 0;
    for (id, what, limit, run) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(()) => println!("{id} PASS {what} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {what} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
