//! The verification suites behind `leibniz verify`.
//!
//! Every suite turns the run configuration into a list of independent jobs,
//! evaluates them in parallel, and returns records in job order. Random
//! instances come from one seed; each suite reads its own ChaCha stream so
//! that running a suite alone or within `all` gives the same instances.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use leibniz_core::fincat::{
    chi_inverse, fam_map_to_square, fiberwise_join, join_action, postcompose_hom, precompose_hom,
    pullback_hom_fam, pullback_hom_map, pullback_hom_preservation,
    pushout_product_preservation, small_maps, square_to_fam_map, Exponential, FamHomSet, FamMap, Family, FinMap,
    Guard,
};
use leibniz_core::leibniz::{
    is_orthogonal, is_orthogonal_checked, orth_closure_pushout_product, orthogonal_pairs, retract_under_hom,
    FamAdjunction, LeibnizError, MapAdjunction, StepStatus,
};
use leibniz_core::obligation::{R_DOM_HORN_CASE_Y1, R_DOM_HORN_CASE_Y2};
use leibniz_core::retract::{check_retract, inner_anodyne_demo, verify_retract, RetractError};
use leibniz_core::shapes::{horn_inclusion, HornSpec};
use leibniz_core::symlat::verify_retract_identity_symbolic;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::io::{resolve_lattice, NamedLattice};
use crate::report::{ConfigEcho, Record, Report, Status};

pub const DEFAULT_GUARD: usize = 1_000_000;
pub const DEFAULT_INSTANCES: usize = 100;
pub const DEFAULT_SYMBOLIC_N: usize = 12;
/// Lattices used when none are given.
pub const DEFAULT_LATTICES: [&str; 4] = ["C2", "C3", "C4", "B2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Adjunction,
    FiberwiseJoin,
    Orthogonality,
    Closure,
    Retract,
    Symbolic,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Adjunction,
        Suite::FiberwiseJoin,
        Suite::Orthogonality,
        Suite::Closure,
        Suite::Retract,
        Suite::Symbolic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Adjunction => "adjunction",
            Suite::FiberwiseJoin => "fiberwise-join",
            Suite::Orthogonality => "orthogonality",
            Suite::Closure => "closure",
            Suite::Retract => "retract",
            Suite::Symbolic => "symbolic",
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Expands suite names, with `all` standing for every suite.
pub fn parse_suites<S: AsRef<str>>(names: &[S]) -> Result<Vec<Suite>, String> {
    let mut out = Vec::new();
    for name in names {
        match name.as_ref() {
            "all" => out.extend(Suite::ALL),
            other => out.push(other.parse()?),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub lattices: Vec<NamedLattice>,
    /// Overrides the per-lattice dimension bound when set.
    pub nmax: Option<usize>,
    pub symbolic_n: usize,
    pub guard: usize,
    pub seed: u64,
    pub instances: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            lattices: default_lattices(),
            nmax: None,
            symbolic_n: DEFAULT_SYMBOLIC_N,
            guard: DEFAULT_GUARD,
            seed: 0,
            instances: DEFAULT_INSTANCES,
        }
    }
}

pub fn default_lattices() -> Vec<NamedLattice> {
    DEFAULT_LATTICES
        .iter()
        .map(|s| resolve_lattice(s).expect("built-in lattices resolve"))
        .collect()
}

impl RunConfig {
    fn guard(&self) -> Guard {
        Guard::new(self.guard)
    }

    /// 5 for lattices of at most three elements, 3 otherwise.
    pub fn nmax_for(&self, l: &NamedLattice) -> usize {
        self.nmax.unwrap_or(if l.lattice.size() <= 3 { 5 } else { 3 })
    }

    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(suite.stream());
        rng
    }

    pub fn echo(&self, suites: &[Suite]) -> ConfigEcho {
        ConfigEcho {
            suites: suites.iter().map(|s| s.name().to_string()).collect(),
            lattices: self.lattices.iter().map(|l| l.name.clone()).collect(),
            nmax: self.nmax,
            symbolic_n: self.symbolic_n,
            guard: self.guard,
            seed: self.seed,
            instances: self.instances,
        }
    }
}

pub fn run(suites: &[Suite], cfg: &RunConfig) -> Report {
    let records = suites.iter().flat_map(|&s| run_suite(s, cfg)).collect();
    Report::new(cfg.echo(suites), records)
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<Record> {
    match suite {
        Suite::Adjunction => adjunction(cfg),
        Suite::FiberwiseJoin => fiberwise(cfg),
        Suite::Orthogonality => orthogonality(cfg),
        Suite::Closure => closure(cfg),
        Suite::Retract => retract(cfg),
        Suite::Symbolic => symbolic(cfg),
    }
}

// ---------------------------------------------------------------------------
// helpers

type Outcome = Result<(Status, Option<String>), String>;

fn record(suite: Suite, check: String, tag: &str, f: impl FnOnce() -> Outcome) -> Record {
    let start = Instant::now();
    let (status, witness) = match f() {
        Ok(r) => r,
        Err(w) => (Status::Fail, Some(w)),
    };
    let mut r = Record::new(suite.name(), check, tag, status);
    r.witness = witness;
    r.duration_ms = start.elapsed().as_secs_f64() * 1000.0;
    r
}

fn pass(detail: impl Into<String>) -> Outcome {
    Ok((Status::Pass, Some(detail.into())))
}

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

/// All families with base at most `max_base` and fibers at most `max_fiber`.
pub fn family_catalog(max_base: usize, max_fiber: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for base in 0..=max_base {
        let fibers = Exponential::new(base, max_fiber + 1, Guard::default()).expect("small");
        out.extend(fibers.iter().map(|t| Family::new(t.table().to_vec())));
    }
    out
}

fn show_family(f: &Family) -> String {
    format!("{:?}", f.fibers())
}

fn random_family(rng: &mut ChaCha8Rng, max_base: usize, max_fiber: usize) -> Family {
    let base = rng.gen_range(0..=max_base);
    Family::new((0..base).map(|_| rng.gen_range(0..=max_fiber)).collect())
}

fn random_map(rng: &mut ChaCha8Rng, max: usize) -> FinMap {
    let cod = rng.gen_range(0..=max);
    let dom = if cod == 0 { 0 } else { rng.gen_range(0..=max) };
    FinMap::new(cod, (0..dom).map(|_| rng.gen_range(0..cod)).collect()).expect("in range")
}

fn random_bijection(rng: &mut ChaCha8Rng, max: usize) -> FinMap {
    let n = rng.gen_range(0..=max);
    let mut table: Vec<usize> = (0..n).collect();
    table.shuffle(rng);
    FinMap::new(n, table).expect("permutation")
}

fn pick(rng: &mut ChaCha8Rng, homs: &FamHomSet) -> Option<FamMap> {
    (!homs.is_empty()).then(|| homs.get(rng.gen_range(0..homs.len())))
}

// ---------------------------------------------------------------------------
// adjunction

/// Elementwise check of one family adjunction: equal hom-set sizes, and the
/// transpose is a bijection inverse to the untranspose on `elements`.
fn check_fam_adjunction(adj: &FamAdjunction, elements: Option<&[usize]>, guard: Guard) -> Result<usize, String> {
    let left = adj.left_homs(guard).map_err(err)?;
    let right = adj.right_homs(guard).map_err(err)?;
    ensure(left.len() == right.len(), || {
        format!("|Fam(F□×G, H)| = {} but |Fam(F, G⋔H)| = {}", left.len(), right.len())
    })?;
    let all: Vec<usize>;
    let indices = match elements {
        Some(e) => e,
        None => {
            all = (0..left.len()).collect();
            &all
        }
    };
    let mut images = Vec::with_capacity(indices.len());
    for &i in indices {
        let h = left.get(i);
        let t = adj.transpose(&h).map_err(err)?;
        let back = adj.untranspose(&t).map_err(err)?;
        ensure(back == h, || format!("untranspose(transpose(h)) ≠ h for element {i}"))?;
        images.push(right.index_of(&t).ok_or("transpose left the hom-set")?);
    }
    images.sort_unstable();
    images.dedup();
    ensure(images.len() == indices.len(), || String::from("transpose is not injective"))?;
    Ok(indices.len())
}

fn adjunction(cfg: &RunConfig) -> Vec<Record> {
    let suite = Suite::Adjunction;
    let guard = cfg.guard();
    let catalog = family_catalog(2, 2);
    let mut records: Vec<Record> = catalog
        .par_iter()
        .map(|f| {
            record(suite, format!("families F = {}", show_family(f)), "leibniz-adjunction", || {
                let mut elements = 0;
                for g in &catalog {
                    for h in &catalog {
                        let adj = FamAdjunction::new(f, g, h, guard).map_err(err)?;
                        elements += check_fam_adjunction(&adj, None, guard)
                            .map_err(|w| format!("G = {}, H = {}: {w}", show_family(g), show_family(h)))?;
                    }
                }
                pass(format!("{} triples, {elements} transposes", catalog.len() * catalog.len()))
            })
        })
        .collect();

    let maps = small_maps(2);
    records.par_extend(maps.par_iter().map(|f| {
        record(suite, format!("maps f = {f}"), "leibniz-adjunction", || {
            let mut elements = 0;
            for g in &maps {
                for h in &maps {
                    let adj = MapAdjunction::new(f, g, h, guard).map_err(err)?;
                    elements += check_map_adjunction(&adj, h, None, guard).map_err(|w| format!("g = {g}, h = {h}: {w}"))?;
                }
            }
            pass(format!("{} pairs, {elements} transposes", maps.len() * maps.len()))
        })
    }));

    let mut rng = cfg.rng(suite);
    let seeds: Vec<u64> = (0..cfg.instances).map(|_| rng.gen()).collect();
    records.par_extend(seeds.par_iter().enumerate().map(|(i, &seed)| {
        record(suite, format!("random instance {i}"), "leibniz-adjunction", || {
            random_adjunction_instance(seed, guard)
        })
    }));
    records
}

fn check_map_adjunction(adj: &MapAdjunction, h: &FinMap, sample: Option<&[usize]>, guard: Guard) -> Result<usize, String> {
    let (left, right) = adj.hom_sets(guard).map_err(err)?;
    ensure(left.len() == right.len(), || {
        format!("|Map(f□×g, h)| = {} but |Map(f, g⋔h)| = {}", left.len(), right.len())
    })?;
    let all: Vec<usize>;
    let indices = match sample {
        Some(s) => s,
        None => {
            all = (0..left.len()).collect();
            &all
        }
    };
    let mut images = Vec::with_capacity(indices.len());
    for &i in indices {
        let sq = fam_map_to_square(adj.pushout_product(), h, &left.get(i)).map_err(err)?;
        let t = adj.transpose(&sq).map_err(err)?;
        ensure(t.commutes(), || format!("transpose of square {i} does not commute"))?;
        ensure(adj.untranspose(&t).map_err(err)? == sq, || format!("square {i} does not round-trip"))?;
        images.push(right.index_of(&square_to_fam_map(&t)).ok_or("transpose left the hom-set")?);
    }
    images.sort_unstable();
    images.dedup();
    ensure(images.len() == indices.len(), || String::from("transpose is not injective"))?;
    Ok(indices.len())
}

/// Random families and maps: sizes, round trips on a sample, and one
/// naturality square in each variable.
fn random_adjunction_instance(seed: u64, guard: Guard) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let [f, g, h, f2, g2, h2] = std::array::from_fn(|_| random_family(&mut rng, 2, 3));
    let adj = FamAdjunction::new(&f, &g, &h, guard).map_err(err)?;
    let left = adj.left_homs(guard).map_err(err)?;
    let sample: Vec<usize> = if left.is_empty() {
        Vec::new()
    } else {
        let mut s: Vec<usize> = (0..8).map(|_| rng.gen_range(0..left.len())).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    check_fam_adjunction(&adj, Some(&sample), guard)?;
    let mut naturality = 0;
    if let Some(x) = pick(&mut rng, &left) {
        let a2 = FamAdjunction::new(&f2, &g, &h, guard).map_err(err)?;
        if let Some(mm) = pick(&mut rng, &FamHomSet::new(&f2, &f, guard).map_err(err)?) {
            let act = join_action(&mm, &FamMap::identity(&g), &a2.product, &adj.product).map_err(err)?;
            let lhs = a2.transpose(&act.then(&x).map_err(err)?).map_err(err)?;
            let rhs = mm.then(&adj.transpose(&x).map_err(err)?).map_err(err)?;
            ensure(lhs == rhs, || String::from("naturality fails in the first variable"))?;
            naturality += 1;
        }
        let a3 = FamAdjunction::new(&f, &g2, &h, guard).map_err(err)?;
        if let Some(nn) = pick(&mut rng, &FamHomSet::new(&g2, &g, guard).map_err(err)?) {
            let act = join_action(&FamMap::identity(&f), &nn, &a3.product, &adj.product).map_err(err)?;
            let pre = precompose_hom(&nn, &adj.hom, &a3.hom).map_err(err)?;
            let lhs = a3.transpose(&act.then(&x).map_err(err)?).map_err(err)?;
            let rhs = adj.transpose(&x).map_err(err)?.then(&pre).map_err(err)?;
            ensure(lhs == rhs, || String::from("naturality fails in the second variable"))?;
            naturality += 1;
        }
        let a4 = FamAdjunction::new(&f, &g, &h2, guard).map_err(err)?;
        if let Some(kk) = pick(&mut rng, &FamHomSet::new(&h, &h2, guard).map_err(err)?) {
            let post = postcompose_hom(&kk, &adj.hom, &a4.hom).map_err(err)?;
            let lhs = a4.transpose(&x.then(&kk).map_err(err)?).map_err(err)?;
            let rhs = adj.transpose(&x).map_err(err)?.then(&post).map_err(err)?;
            ensure(lhs == rhs, || String::from("naturality fails in the third variable"))?;
            naturality += 1;
        }
    }
    let [mf, mg, mh] = std::array::from_fn(|_| random_map(&mut rng, 3));
    let madj = MapAdjunction::new(&mf, &mg, &mh, guard).map_err(err)?;
    let (mleft, _) = madj.hom_sets(guard).map_err(err)?;
    let msample: Vec<usize> = if mleft.is_empty() {
        Vec::new()
    } else {
        let mut s: Vec<usize> = (0..4).map(|_| rng.gen_range(0..mleft.len())).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    check_map_adjunction(&madj, &mh, Some(&msample), guard)?;
    pass(format!(
        "|hom| = {}, {} sampled, {naturality} naturality squares, maps {mf}, {mg}, {mh}",
        left.len(),
        sample.len()
    ))
}

// ---------------------------------------------------------------------------
// fiberwise join and preservation

fn fiberwise(cfg: &RunConfig) -> Vec<Record> {
    let suite = Suite::FiberwiseJoin;
    let guard = cfg.guard();
    let maps = small_maps(3);
    let mut records: Vec<Record> = maps
        .par_iter()
        .map(|f| {
            record(suite, format!("join f = {f}"), "fiberwise-join", || {
                for g in &maps {
                    let fj = fiberwise_join(f, g, guard).map_err(err)?;
                    ensure(fj.all_bijective(), || format!("g = {g}: a fiber comparison is not bijective"))?;
                    let pp = &fj.product.map;
                    let fam = &fj.family.family;
                    ensure(fam.base() == pp.cod() && fam.total() == pp.dom(), || {
                        format!("g = {g}: total space has the wrong size")
                    })?;
                    let iso = pushout_product_preservation(&fj).map_err(err)?;
                    ensure(iso.is_iso(), || format!("g = {g}: comparison map is not an isomorphism"))?;
                }
                pass(format!("{} maps g", maps.len()))
            })
        })
        .collect();

    let catalog = family_catalog(2, 2);
    records.par_extend(catalog.par_iter().map(|a| {
        record(suite, format!("preservation F = {}", show_family(a)), "preservation", || {
            let f = chi_inverse(a);
            for b in &catalog {
                let g = chi_inverse(b);
                let fj = fiberwise_join(&f, &g, guard).map_err(err)?;
                ensure(pushout_product_preservation(&fj).map_err(err)?.is_iso(), || {
                    format!("G = {}: pushout-product comparison is not an isomorphism", show_family(b))
                })?;
                let fam = pullback_hom_fam(a, b, guard).map_err(err)?;
                let ph = pullback_hom_map(&f, &g, guard).map_err(err)?;
                ensure(pullback_hom_preservation(&fam, &ph).map_err(err)?.is_iso(), || {
                    format!("G = {}: pullback-hom comparison is not an isomorphism", show_family(b))
                })?;
            }
            pass(format!("{} families G", catalog.len()))
        })
    }));
    records
}

// ---------------------------------------------------------------------------
// orthogonality

fn orthogonality(cfg: &RunConfig) -> Vec<Record> {
    let suite = Suite::Orthogonality;
    let guard = cfg.guard();
    let lefts = small_maps(2);
    let rights = small_maps(3);
    let mut records: Vec<Record> = lefts
        .par_iter()
        .map(|i| {
            record(suite, format!("fillers agree i = {i}"), "orthogonality", || {
                let mut orthogonal = 0;
                for f in &rights {
                    if is_orthogonal_checked(i, f, guard).map_err(err)?.orthogonal {
                        orthogonal += 1;
                    }
                }
                pass(format!("{} pairs, {orthogonal} orthogonal", rights.len()))
            })
        })
        .collect();

    records.par_extend(cfg.lattices.par_iter().map(|l| {
        record(suite, format!("fillers agree i = λ²₁({})", l.name), "orthogonality", || {
            let lambda = horn_inclusion(&l.lattice, HornSpec::new(2, 1).map_err(err)?, cfg.guard).map_err(err)?;
            let mut orthogonal = 0;
            for f in &lefts {
                if is_orthogonal_checked(&lambda.map, f, guard).map_err(err)?.orthogonal {
                    orthogonal += 1;
                }
            }
            pass(format!("{} pairs, {orthogonal} orthogonal", lefts.len()))
        })
    }));

    records.push(record(suite, String::from("empty square against 2 → 1"), "orthogonality", || {
        let i = FinMap::empty(1);
        let f = FinMap::new(1, vec![0, 0]).expect("valid");
        let o = is_orthogonal_checked(&i, &f, guard).map_err(err)?;
        let ph = pullback_hom_map(&i, &f, guard).map_err(err)?;
        let fillers = ph.map.fibers()[0].len();
        if !o.orthogonal && fillers == 2 {
            Ok((Status::ExpectedFail, Some(String::from("not orthogonal: the only square has 2 fillers"))))
        } else {
            Err(format!("expected 2 fillers and no orthogonality, found {fillers}"))
        }
    }));
    records
}

// ---------------------------------------------------------------------------
// closure

fn closure(cfg: &RunConfig) -> Vec<Record> {
    let suite = Suite::Closure;
    let guard = cfg.guard();
    let mut rng = cfg.rng(suite);
    let pairs: Vec<(FinMap, FinMap)> = (0..cfg.instances.max(50))
        .map(|_| (random_bijection(&mut rng, 3), random_map(&mut rng, 3)))
        .collect();
    let mut records: Vec<Record> = pairs
        .par_iter()
        .enumerate()
        .map(|(n, (e, g))| {
            record(suite, format!("bijection both ways {n}"), "closure-bijection", || {
                ensure(is_orthogonal_checked(e, g, guard).map_err(err)?.orthogonal, || format!("{e} ⊥ {g} fails"))?;
                ensure(is_orthogonal_checked(g, e, guard).map_err(err)?.orthogonal, || format!("{g} ⊥ {e} fails"))?;
                pass(format!("e = {e}, g = {g}"))
            })
        })
        .collect();

    let maps = small_maps(2);
    let found = match orthogonal_pairs(&maps, guard) {
        Ok(p) => p,
        Err(e) => {
            records.push(record(suite, String::from("orthogonal pair search"), "closure-pushout-product", || Err(err(e))));
            Vec::new()
        }
    };
    records.par_extend(found.par_iter().map(|(i, f)| {
        record(suite, format!("pushout-product i = {i}, f = {f}"), "closure-pushout-product", || {
            let mut fiberwise = 0;
            for j in &maps {
                let d = orth_closure_pushout_product(i, j, f, guard).map_err(err)?;
                if !d.passed() {
                    let step = d.steps.iter().find(|s| s.status == StepStatus::Fail);
                    return Err(format!("j = {j}: {}", step.map(ToString::to_string).unwrap_or_default()));
                }
                if d.steps.iter().any(|s| s.status == StepStatus::Skipped) {
                    fiberwise += 1;
                }
            }
            pass(format!("{} maps j, {fiberwise} via the fiberwise fallback", maps.len()))
        })
    }));

    records.push(record(suite, String::from("pushout-product precondition"), "closure-pushout-product", || {
        let i = FinMap::empty(1);
        let f = FinMap::new(1, vec![0, 0]).expect("valid");
        match orth_closure_pushout_product(&i, &FinMap::identity(1), &f, guard) {
            Err(LeibnizError::Precondition(w)) => Ok((Status::ExpectedFail, Some(w))),
            Ok(_) => Err(String::from("derivation ran without its precondition")),
            Err(e) => Err(err(e)),
        }
    }));

    // (Δ²×Δ²)-sized exponentials stay within the guard only for maps between sets of size at most 1
    let small_targets: Vec<FinMap> = maps.iter().filter(|f| f.dom() <= 1 && f.cod() <= 1).cloned().collect();
    records.par_extend(cfg.lattices.par_iter().map(|l| {
        record(suite, format!("retract under (−)⋔f, {} n = 2, k = 1", l.name), "closure-retract", || {
            let inst = verify_retract(&l.lattice, 2, 1, guard).map_err(err)?;
            let rd = inst.retract_data().map_err(err)?;
            for f in &small_targets {
                retract_under_hom(&rd, f, guard).map_err(|e| format!("f = {f}: {e}"))?;
            }
            pass(format!("{} maps f", small_targets.len()))
        })
    }));

    let demos: Vec<(&NamedLattice, usize, usize)> = cfg
        .lattices
        .iter()
        .filter(|l| l.lattice.size() <= 3)
        .flat_map(|l| [(l, 2, 1), (l, 3, 1), (l, 3, 2)].into_iter().filter(|&(l, n, _)| n <= cfg.nmax_for(l)))
        .collect();
    records.par_extend(demos.par_iter().map(|&(l, n, k)| {
        record(suite, format!("inner anodyne {} n = {n}, k = {k}", l.name), "closure-retract", || {
            let lambda = horn_inclusion(&l.lattice, HornSpec::new(2, 1).map_err(err)?, cfg.guard).map_err(err)?;
            let mut targets = 0;
            let mut problems = 0;
            for f in &maps {
                if !is_orthogonal(&lambda.map, f, guard).map_err(err)?.orthogonal {
                    continue;
                }
                let r = inner_anodyne_demo(&l.lattice, n, k, f, guard).map_err(|e| format!("f = {f}: {e}"))?;
                ensure(r.passed(), || format!("f = {f}: {}/{} fillers validated", r.validated, r.problems))?;
                targets += 1;
                problems += r.problems;
            }
            ensure(targets > 0, || String::from("no map is right orthogonal to λ²₁"))?;
            pass(format!("{targets} maps f, {problems} lifting problems"))
        })
    }));

    // over C₂ every point of Δ² lies in the horn, so any lattice with three or more elements
    if let Some(l) = cfg.lattices.iter().find(|l| l.lattice.size() >= 3) {
        records.push(record(suite, format!("inner anodyne precondition {}", l.name), "closure-retract", || {
            let fold = FinMap::new(1, vec![0, 0]).expect("valid");
            match inner_anodyne_demo(&l.lattice, 2, 1, &fold, guard) {
                Err(RetractError::Precondition(w)) => Ok((Status::ExpectedFail, Some(w))),
                Ok(_) => Err(String::from("demo ran without its precondition")),
                Err(e) => Err(err(e)),
            }
        }));
    }
    records
}

// ---------------------------------------------------------------------------
// retract and symbolic

fn retract(cfg: &RunConfig) -> Vec<Record> {
    let suite = Suite::Retract;
    let guard = cfg.guard();
    let mut jobs = Vec::new();
    let mut records = Vec::new();
    for l in &cfg.lattices {
        let violations = l.lattice.validate();
        if !violations.is_empty() {
            records.push(record(suite, format!("{} lattice axioms", l.name), "retract-theorem", || {
                Err(format!("{} violation(s), first: {:?}", violations.len(), violations[0]))
            }));
            continue;
        }
        for n in 2..=cfg.nmax_for(l) {
            for k in 0..=n {
                jobs.push((l, n, k));
            }
        }
    }
    let results: Vec<Vec<Record>> = jobs
        .par_iter()
        .map(|&(l, n, k)| {
            let prefix = format!("{} n = {n}, k = {k}", l.name);
            let start = Instant::now();
            let check = check_retract(&l.lattice, n, k, guard);
            let elapsed = start.elapsed().as_secs_f64() * 1000.0;
            let check = match check {
                Ok(c) => c,
                Err(e) => return vec![record(suite, prefix, "retract-theorem", || Err(err(e)))],
            };
            if 0 < k && k < n {
                let mut out: Vec<Record> = check
                    .obligations
                    .iter()
                    .map(|o| {
                        let mut r = Record::new(
                            suite.name(),
                            format!("{prefix} {}", o.id),
                            "retract-theorem",
                            if o.passed { Status::Pass } else { Status::Fail },
                        );
                        r.witness = o.witness.clone();
                        r.duration_ms = elapsed / check.obligations.len() as f64;
                        r
                    })
                    .collect();
                out.push(record(suite, format!("{prefix} symbolic agreement"), "retract-theorem", || {
                    let sym = check.symbolic.as_ref().ok_or("dimension beyond the symbolic bound")?;
                    ensure(sym.passed(), || format!("symbolic failures: {:?}", sym.failed_ids()))?;
                    let d = check.disagreements();
                    ensure(d.is_empty(), || format!("concrete and symbolic disagree on {d:?}"))?;
                    pass(format!("{} obligations", sym.obligations.len()))
                }));
                out
            } else {
                let predicted = if k == 0 { R_DOM_HORN_CASE_Y1 } else { R_DOM_HORN_CASE_Y2 };
                vec![record(suite, format!("{prefix} outer horn"), "retract-theorem", || {
                    let failed = check.failed_ids();
                    ensure(failed == [predicted], || format!("expected only {predicted} to fail, got {failed:?}"))?;
                    let witness = check.obligations.iter().find(|o| !o.passed).and_then(|o| o.witness.clone());
                    Ok((Status::ExpectedFail, Some(format!("{predicted}: {}", witness.unwrap_or_default()))))
                })]
            }
        })
        .collect();
    records.extend(results.into_iter().flatten());
    records
}

fn symbolic(cfg: &RunConfig) -> Vec<Record> {
    let suite = Suite::Symbolic;
    let jobs: Vec<(usize, usize)> = (1..=cfg.symbolic_n).flat_map(|n| (0..=n).map(move |k| (n, k))).collect();
    jobs.par_iter()
        .map(|&(n, k)| {
            record(suite, format!("n = {n}, k = {k}"), "symbolic-certificate", || {
                let report = verify_retract_identity_symbolic(n, k).map_err(err)?;
                let failed = report.failed_ids();
                if 0 < k && k < n {
                    ensure(failed.is_empty(), || {
                        let first = report.obligations.iter().find(|o| !o.passed);
                        format!("{failed:?}: {}", first.and_then(|o| o.witness.clone()).unwrap_or_default())
                    })?;
                    pass(format!("{} obligations", report.obligations.len()))
                } else {
                    let predicted = if k == 0 { R_DOM_HORN_CASE_Y1 } else { R_DOM_HORN_CASE_Y2 };
                    ensure(failed == [predicted], || format!("expected only {predicted} to fail, got {failed:?}"))?;
                    Ok((Status::ExpectedFail, Some(predicted.to_string())))
                }
            })
        })
        .collect()
}
