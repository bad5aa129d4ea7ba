//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Suites come from the library; counts and cardinalities are cross-checked
//! against brute-force enumerations written here. Every comparison is exact;
//! the only tolerances are the wall-clock limits printed with each line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use leibniz_cli::report::{Record, Status};
use leibniz_cli::suites::{run_suite, RunConfig, Suite};
use leibniz_core::fincat::{const_set, pullback_hom_map, pushout_product_map, small_maps, FinMap, Guard};
use leibniz_core::lattice::FiniteLattice;
use leibniz_core::leibniz::is_orthogonal;
use leibniz_core::obligation::{R_DOM_HORN_CASE_Y1, R_DOM_HORN_CASE_Y2};
use leibniz_core::shapes::{enumerate_horn, enumerate_simplex, HornSpec};
use leibniz_core::symlat::verify_retract_identity_symbolic;

const RETRACT_LIMIT: Duration = Duration::from_secs(60);
const SYMBOLIC_LIMIT: Duration = Duration::from_secs(10);

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("retract theorem on C2, C3, C4, B2", retract_theorem),
        ("symbolic certificate up to n = 12", symbolic_certificate),
        ("two-variable adjunction", adjunction),
        ("fiberwise join and preservation", fiberwise_join),
        ("bijective pullback-hom iff unique fillers", orthogonality_oracle),
        ("closure under bijections, pushout-products and retracts", closure),
        ("counting regressions", counting),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail} ({secs:.2} s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {detail} ({secs:.2} s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn no_failures(records: &[Record]) -> Result<(), String> {
    match records.iter().find(|r| r.status == Status::Fail) {
        None => Ok(()),
        Some(r) => Err(format!("{} failed: {}", r.check, r.witness.as_deref().unwrap_or(""))),
    }
}

fn count(records: &[Record], status: Status, prefix: &str) -> usize {
    records.iter().filter(|r| r.status == status && r.check.starts_with(prefix)).count()
}

// ---------------------------------------------------------------------------
// brute force

/// Every function `m → n` as a table, lexicographic.
fn functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 && m > 0 {
        return out;
    }
    let mut t = vec![0; m];
    loop {
        out.push(t.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Commuting squares from `p : P → Q` to `q : R → S`.
fn squares(p: &FinMap, q: &FinMap) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for u in functions(p.dom(), q.dom()) {
        for v in functions(p.cod(), q.cod()) {
            if (0..p.dom()).all(|a| q.apply(u[a]) == v[p.apply(a)]) {
                out.push((u.clone(), v));
            }
        }
    }
    out
}

/// Orthogonality by counting diagonals of every square.
fn orthogonal_by_fillers(i: &FinMap, f: &FinMap) -> bool {
    let diagonals = functions(i.cod(), f.dom());
    squares(i, f).iter().all(|(u, v)| {
        let fillers = diagonals
            .iter()
            .filter(|d| (0..i.dom()).all(|a| d[i.apply(a)] == u[a]) && (0..i.cod()).all(|b| f.apply(d[b]) == v[b]))
            .count();
        fillers == 1
    })
}

fn preimage(f: &FinMap, y: usize) -> usize {
    f.table().iter().filter(|&&v| v == y).count()
}

fn set_join(p: usize, q: usize) -> usize {
    match (p, q) {
        (0, q) => q,
        (p, 0) => p,
        _ => 1,
    }
}

/// Decreasing tuples `(top, x₁, …, xₙ, bottom)` in a chain with `m` elements,
/// where larger indices are larger elements.
fn chain_simplex(m: usize, n: usize) -> Vec<Vec<usize>> {
    functions(n, m)
        .into_iter()
        .map(|mid| {
            let mut x = vec![m - 1];
            x.extend(mid);
            x.push(0);
            x
        })
        .filter(|x| x.windows(2).all(|w| w[0] >= w[1]))
        .collect()
}

fn chain_horn(m: usize, n: usize, k: usize) -> usize {
    chain_simplex(m, n)
        .iter()
        .filter(|x| (0..=n).any(|j| j != k && x[j] == x[j + 1]))
        .count()
}

// ---------------------------------------------------------------------------
// criteria

fn retract_theorem() -> Verdict {
    let cfg = RunConfig::default();
    let start = Instant::now();
    let records = run_suite(Suite::Retract, &cfg);
    let elapsed = start.elapsed();
    no_failures(&records)?;
    let c3 = cfg.lattices.iter().find(|l| l.name == "C3").ok_or("C3 missing")?;
    ensure(cfg.nmax_for(c3) >= 5, || String::from("C3 bound below 5"))?;
    let mut inner = 0;
    for l in &cfg.lattices {
        for n in 2..=cfg.nmax_for(l) {
            for k in 1..n {
                let prefix = format!("{} n = {n}, k = {k} ", l.name);
                let passed = count(&records, Status::Pass, &prefix);
                ensure(passed == 13, || format!("{prefix}: {passed} of 13 checks passed"))?;
                inner += 1;
            }
        }
    }
    ensure(elapsed < RETRACT_LIMIT, || format!("took {elapsed:?}, limit {RETRACT_LIMIT:?}"))?;
    Ok(format!(
        "{inner} inner (L, n, k), {} passing checks, 0 failures; {:.2} s within {} s",
        count(&records, Status::Pass, ""),
        elapsed.as_secs_f64(),
        RETRACT_LIMIT.as_secs()
    ))
}

fn symbolic_certificate() -> Verdict {
    let cfg = RunConfig {
        symbolic_n: 12,
        ..RunConfig::default()
    };
    let start = Instant::now();
    let records = run_suite(Suite::Symbolic, &cfg);
    let elapsed = start.elapsed();
    no_failures(&records)?;
    let inner = count(&records, Status::Pass, "");
    let outer = count(&records, Status::ExpectedFail, "");
    ensure(inner == (1..=12).map(|n: usize| n.saturating_sub(1)).sum::<usize>(), || format!("{inner} inner passes"))?;
    ensure(outer == 24, || format!("{outer} outer horns failed as predicted, expected 24"))?;
    for n in [1, 5, 12] {
        for (k, id) in [(0, R_DOM_HORN_CASE_Y1), (n, R_DOM_HORN_CASE_Y2)] {
            let report = verify_retract_identity_symbolic(n, k).map_err(|e| e.to_string())?;
            ensure(report.failed_ids() == [id], || format!("n = {n}, k = {k}: {:?}", report.failed_ids()))?;
        }
    }
    ensure(elapsed < SYMBOLIC_LIMIT, || format!("took {elapsed:?}, limit {SYMBOLIC_LIMIT:?}"))?;
    Ok(format!(
        "{inner} inner proved, {outer} outer with only the horn case failing; {:.2} s within {} s",
        elapsed.as_secs_f64(),
        SYMBOLIC_LIMIT.as_secs()
    ))
}

fn adjunction() -> Verdict {
    let cfg = RunConfig {
        seed: 7,
        instances: 100,
        ..RunConfig::default()
    };
    let records = run_suite(Suite::Adjunction, &cfg);
    no_failures(&records)?;
    let random = count(&records, Status::Pass, "random instance");
    ensure(random == 100, || format!("{random} random instances passed"))?;

    // |Map(f□×g, h)| = |Map(f, g⋔h)| by counting squares directly
    let guard = Guard::default();
    let maps = small_maps(2);
    let mut triples = 0;
    for f in &maps {
        for g in &maps {
            let pp = pushout_product_map(f, g, guard).map_err(|e| e.to_string())?;
            for h in &maps {
                let ph = pullback_hom_map(g, h, guard).map_err(|e| e.to_string())?;
                let left = squares(&pp.map, h).len();
                let right = squares(f, &ph.map).len();
                ensure(left == right, || format!("f = {f}, g = {g}, h = {h}: {left} ≠ {right}"))?;
                triples += 1;
            }
        }
    }
    Ok(format!(
        "{} suite checks incl. 100 random instances; {triples} triples match brute-force square counts exactly",
        records.len()
    ))
}

fn fiberwise_join() -> Verdict {
    let records = run_suite(Suite::FiberwiseJoin, &RunConfig::default());
    no_failures(&records)?;
    let guard = Guard::default();
    let maps = small_maps(3);
    let mut pairs = 0;
    for f in &maps {
        for g in &maps {
            let pp = pushout_product_map(f, g, guard).map_err(|e| e.to_string())?;
            for b in 0..f.cod() {
                for y in 0..g.cod() {
                    let expected = set_join(preimage(f, b), preimage(g, y));
                    let got = preimage(&pp.map, b * g.cod() + y);
                    ensure(got == expected, || format!("f = {f}, g = {g}, fiber ({b}, {y}): {got} ≠ {expected}"))?;
                }
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{} suite checks; {pairs} map pairs have join-sized fibers",
        records.len()
    ))
}

fn orthogonality_oracle() -> Verdict {
    let records = run_suite(Suite::Orthogonality, &RunConfig::default());
    no_failures(&records)?;
    let guard = Guard::default();
    let mut pairs = 0;
    let mut orthogonal = 0;
    for i in &small_maps(2) {
        for f in &small_maps(3) {
            let fast = is_orthogonal(i, f, guard).map_err(|e| e.to_string())?.orthogonal;
            let slow = orthogonal_by_fillers(i, f);
            ensure(fast == slow, || format!("i = {i}, f = {f}: library {fast}, brute force {slow}"))?;
            pairs += 1;
            orthogonal += usize::from(slow);
        }
    }
    ensure(pairs >= 200, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} pairs agree with brute-force fillers ({orthogonal} orthogonal); suite clean"))
}

fn closure() -> Verdict {
    let records = run_suite(Suite::Closure, &RunConfig::default());
    no_failures(&records)?;
    let bijections = count(&records, Status::Pass, "bijection both ways");
    ensure(bijections >= 50, || format!("{bijections} bijection instances"))?;
    let pp = count(&records, Status::Pass, "pushout-product i =");
    ensure(pp > 0, || String::from("no orthogonal pairs found"))?;
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        let check = format!("inner anodyne C3 n = {n}, k = {k}");
        ensure(records.iter().any(|r| r.check == check && r.status == Status::Pass), || {
            format!("{check} missing")
        })?;
    }
    Ok(format!(
        "{bijections} bijections, {pp} orthogonal pairs closed under pushout-product, 3 C3 demos validated"
    ))
}

fn counting() -> Verdict {
    let c3 = FiniteLattice::chain(3).map_err(|e| e.to_string())?;
    let d2 = enumerate_simplex(&c3, 2, usize::MAX).map_err(|e| e.to_string())?.len();
    let l21 = enumerate_horn(&c3, HornSpec::new(2, 1).map_err(|e| e.to_string())?, usize::MAX)
        .map_err(|e| e.to_string())?
        .len();
    ensure(d2 == chain_simplex(3, 2).len() && d2 == 6, || format!("|Δ²(C3)| = {d2}"))?;
    ensure(l21 == chain_horn(3, 2, 1) && l21 == 5, || format!("|Λ²₁(C3)| = {l21}"))?;
    let c2 = FiniteLattice::chain(2).map_err(|e| e.to_string())?;
    for n in 0..=8 {
        let got = enumerate_simplex(&c2, n, usize::MAX).map_err(|e| e.to_string())?.len();
        ensure(got == chain_simplex(2, n).len() && got == n + 1, || format!("|Δ^{n}(C2)| = {got}"))?;
    }
    for s in 0..=3 {
        for t in 0..=3 {
            let total: usize = functions(s, t)
                .into_iter()
                .map(|table| const_set(&FinMap::new(t, table).expect("in range")).len())
                .sum();
            ensure(total == t, || format!("|S| = {s}, |T| = {t}: Σ const = {total}"))?;
        }
    }
    Ok(String::from("|Δ²(C3)| = 6, |Λ²₁(C3)| = 5, |Δⁿ(C2)| = n+1 for n ≤ 8, Σ const = |T| for |S|, |T| ≤ 3"))
}
