//! The inner horn `λⁿₖ` as a retract of `λⁿₖ □× λ²₁`, built over a concrete
//! lattice with every proof obligation checked pointwise.
//!
//! The section sends `x` to `(x, (x_k, x_{k+1}))`. The retraction sends
//! `(x, y)` to `z` with `zᵢ = xᵢ ∨ y₁` for `i ≤ k` and `zᵢ = xᵢ ∧ y₂` for
//! `i > k`, over padded coordinates.

use alloc::{format, string::String, vec::Vec};

use thiserror::Error;

use crate::fincat::{pullback_hom_map, pushout_product_map, FinMap, FincatError, Guard, PushoutProduct, Square, Tagged};
use crate::lattice::{Elem, FiniteLattice};
use crate::leibniz::{
    enumerate_fillers, is_orthogonal, orth_closure_pushout_product, orth_closure_retract, Derivation, LeibnizError,
    RetractData,
};
use crate::obligation::{self, ObligationResult};
use crate::shapes::{horn_inclusion, index_of, HornSpec, ShapeError, SimplexPoint};
use crate::symlat::{verify_retract_identity_symbolic, SymbolicReport, SymlatError, DEFAULT_SYMBOLIC_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RetractError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Fincat(#[from] FincatError),
    #[error(transparent)]
    Symlat(#[from] SymlatError),
    #[error(transparent)]
    Leibniz(#[from] LeibnizError),
    #[error("parameters out of range: n = {n}, k = {k} ({reason})")]
    Range { n: usize, k: usize, reason: &'static str },
    #[error("obligation {id} failed: {witness}")]
    Obligation { id: &'static str, witness: String },
    #[error("symbolic and concrete results disagree on {id}")]
    Disagreement { id: &'static str },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Enumerated sets and the pushout-product `λⁿₖ □× λ²₁` for one `(L, n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractSetup {
    pub lattice: FiniteLattice,
    pub n: usize,
    pub k: usize,
    /// `Δⁿ(L)`.
    pub simplex: Vec<SimplexPoint>,
    /// `Λⁿₖ(L)`.
    pub horn: Vec<SimplexPoint>,
    /// `Δ²(L)`.
    pub triangle: Vec<SimplexPoint>,
    /// `Λ²₁(L)`.
    pub triangle_horn: Vec<SimplexPoint>,
    /// `λⁿₖ`.
    pub horn_map: FinMap,
    /// `λ²₁`.
    pub triangle_map: FinMap,
    /// `λⁿₖ □× λ²₁`, with corner `(Δⁿ × Λ²₁) ⊔_{Λⁿₖ × Λ²₁} (Λⁿₖ × Δ²)`.
    pub product: PushoutProduct,
}

impl RetractSetup {
    /// Accepts outer `k` so that the failing obligations can be observed.
    pub fn new(l: &FiniteLattice, n: usize, k: usize, guard: Guard) -> Result<Self, RetractError> {
        if n == 0 {
            return Err(RetractError::Range { n, k, reason: "n must be positive" });
        }
        let spec = HornSpec::new(n, k)?;
        let big = horn_inclusion(l, spec, guard.limit)?;
        let small = horn_inclusion(l, HornSpec::new(2, 1)?, guard.limit)?;
        let product = pushout_product_map(&big.map, &small.map, guard)?;
        Ok(RetractSetup {
            lattice: l.clone(),
            n,
            k,
            simplex: big.simplex,
            horn: big.horn,
            triangle: small.simplex,
            triangle_horn: small.horn,
            horn_map: big.map,
            triangle_map: small.map,
            product,
        })
    }

    /// Size of the pushout corner.
    pub fn corner_size(&self) -> usize {
        self.product.corner.apex
    }

    /// `(Δⁿ × Δ²)` index of a pair of points.
    fn pair_index(&self, x: usize, y: usize) -> usize {
        x * self.triangle.len() + y
    }

    /// `zᵢ = xᵢ ∨ y₁` for `i ≤ k`, `xᵢ ∧ y₂` otherwise, over `0..=n+1`.
    pub fn retraction_coords(&self, x: &SimplexPoint, y: &SimplexPoint) -> Vec<Elem> {
        let l = &self.lattice;
        let (y1, y2) = (y.coords()[1], y.coords()[2]);
        x.coords()
            .iter()
            .enumerate()
            .map(|(i, &xi)| if i <= self.k { l.join(xi, y1) } else { l.meet(xi, y2) })
            .collect()
    }

    fn show(&self, x: &SimplexPoint, y: &SimplexPoint) -> String {
        format!("x = {}, y = {}", x.display(&self.lattice), y.display(&self.lattice))
    }

    fn show_coords(&self, z: &[Elem]) -> String {
        let labels: Vec<String> = z.iter().map(|&c| self.lattice.label(c)).collect();
        format!("[{}]", labels.join(", "))
    }
}

/// `s_dom : Λⁿₖ → corner` and `s_cod : Δⁿ → Δⁿ × Δ²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub s_dom: FinMap,
    pub s_cod: FinMap,
    pub obligations: Vec<ObligationResult>,
}

/// Retraction data with the obligation log. `r_dom_simplex` is the formula
/// on the corner with values in `Δⁿ`; `r_dom` is its corestriction to
/// `Λⁿₖ`, present only when every value lies in the horn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retraction {
    pub r_cod: Option<FinMap>,
    pub r_dom_simplex: Option<FinMap>,
    pub r_dom: Option<FinMap>,
    pub obligations: Vec<ObligationResult>,
}

fn first_failure(obligations: &[ObligationResult]) -> Result<(), RetractError> {
    match obligations.iter().find(|o| !o.passed) {
        Some(o) => Err(RetractError::Obligation {
            id: o.id,
            witness: o.witness.clone().unwrap_or_default(),
        }),
        None => Ok(()),
    }
}

/// Section with its obligations logged: `s_cod-valid`, `square-s-commutes`.
pub fn section(setup: &RetractSetup) -> Result<Section, RetractError> {
    let l = &setup.lattice;
    let k = setup.k;
    let mut valid = ObligationResult::new(obligation::S_COD_VALID);
    let mut cod = Vec::with_capacity(setup.simplex.len());
    for x in &setup.simplex {
        let c = x.coords();
        let y = SimplexPoint::new(l, alloc::vec![l.top(), c[k], c[k + 1], l.bottom()]).ok();
        let pos = y.as_ref().and_then(|y| index_of(&setup.triangle, y));
        valid.record(pos.is_some(), || format!("(x_{k}, x_{}) is not in Δ² at x = {}", k + 1, x.display(l)));
        cod.push(pos);
    }
    let Some(cod) = cod.into_iter().collect::<Option<Vec<usize>>>() else {
        return Ok(Section {
            s_dom: FinMap::empty(0),
            s_cod: FinMap::empty(0),
            obligations: alloc::vec![valid],
        });
    };
    let s_cod = FinMap::new(
        setup.simplex.len() * setup.triangle.len(),
        cod.iter().enumerate().map(|(x, &y)| setup.pair_index(x, y)).collect(),
    )?;
    let s_dom = FinMap::new(
        setup.corner_size(),
        (0..setup.horn.len())
            .map(|a| setup.product.inr(a, cod[setup.horn_map.apply(a)]))
            .collect(),
    )?;
    let mut square = ObligationResult::new(obligation::SQUARE_S_COMMUTES);
    for a in 0..setup.horn.len() {
        let lhs = setup.product.map.apply(s_dom.apply(a));
        let rhs = s_cod.apply(setup.horn_map.apply(a));
        square.record(lhs == rhs, || format!("at horn point {}", setup.horn[a].display(l)));
    }
    Ok(Section {
        s_dom,
        s_cod,
        obligations: alloc::vec![valid, square],
    })
}

/// Retraction with every obligation logged, without aborting.
pub fn retraction(setup: &RetractSetup) -> Result<Retraction, RetractError> {
    let l = &setup.lattice;
    let (n, k) = (setup.n, setup.k);
    let (top, bottom) = (l.top(), l.bottom());
    let mut endpoints = ObligationResult::new(obligation::R_COD_ENDPOINTS);
    let mut monotone = ObligationResult::new(obligation::R_COD_MONOTONE);
    let mut case_y1 = ObligationResult::new(obligation::R_DOM_HORN_CASE_Y1);
    let mut case_y2 = ObligationResult::new(obligation::R_DOM_HORN_CASE_Y2);
    let mut right = ObligationResult::new(obligation::R_DOM_HORN_RIGHT);
    let mut well_defined = ObligationResult::new(obligation::R_DOM_WELL_DEFINED);

    // r_cod on Δⁿ × Δ², as simplex indices
    let mut cod = Vec::with_capacity(setup.simplex.len() * setup.triangle.len());
    for x in &setup.simplex {
        for y in &setup.triangle {
            let z = setup.retraction_coords(x, y);
            endpoints.record(z[0] == top && z[n + 1] == bottom, || {
                format!("{}: z = {}", setup.show(x, y), setup.show_coords(&z))
            });
            let decreasing = z.windows(2).all(|w| l.le(w[1], w[0]));
            monotone.record(decreasing, || format!("{}: z = {}", setup.show(x, y), setup.show_coords(&z)));
            cod.push(SimplexPoint::new(l, z).ok().and_then(|p| index_of(&setup.simplex, &p)));
        }
    }
    let r_cod = cod
        .iter()
        .copied()
        .collect::<Option<Vec<usize>>>()
        .map(|t| FinMap::new(setup.simplex.len(), t))
        .transpose()?;

    // Δⁿ × Λ²₁: y₁ = 1 uses face 0, y₂ = 0 uses face n
    let tri_h = setup.triangle_horn.len();
    let mut left_values = Vec::with_capacity(setup.simplex.len() * tri_h);
    for (xi, x) in setup.simplex.iter().enumerate() {
        for (yi, y) in setup.triangle_horn.iter().enumerate() {
            let z = setup.retraction_coords(x, y);
            let yc = y.coords();
            if yc[1] == top {
                case_y1.record(k != 0 && z[0] == z[1], || {
                    format!("{}: face 0 of z = {} (missing face k = {k})", setup.show(x, y), setup.show_coords(&z))
                });
            }
            if yc[2] == bottom {
                case_y2.record(k != n && z[n] == z[n + 1], || {
                    format!("{}: face {n} of z = {} (missing face k = {k})", setup.show(x, y), setup.show_coords(&z))
                });
            }
            let y_full = setup.triangle_map.apply(yi);
            left_values.push(cod[setup.pair_index(xi, y_full)]);
        }
    }

    // Λⁿₖ × Δ²: degenerate faces j ≠ k survive
    let tri = setup.triangle.len();
    let mut right_values = Vec::with_capacity(setup.horn.len() * tri);
    for (ai, x) in setup.horn.iter().enumerate() {
        let xc = x.coords();
        for (yi, y) in setup.triangle.iter().enumerate() {
            let z = setup.retraction_coords(x, y);
            for j in (0..=n).filter(|&j| j != k && xc[j] == xc[j + 1]) {
                right.record(z[j] == z[j + 1], || {
                    format!("{}: face {j} of z = {}", setup.show(x, y), setup.show_coords(&z))
                });
            }
            right_values.push(cod[setup.pair_index(setup.horn_map.apply(ai), yi)]);
        }
    }

    // constant on pushout classes
    let corner = &setup.product.corner;
    let value = |t: Tagged| match t {
        Tagged::Left(i) => left_values[i],
        Tagged::Right(i) => right_values[i],
    };
    let mut dom = Vec::with_capacity(corner.apex);
    for c in 0..corner.apex {
        let rep = value(corner.representative[c]);
        for &m in corner.members(c) {
            well_defined.record(value(m) == rep, || format!("class {c}: {:?} and {:?} differ", corner.representative[c], m));
        }
        dom.push(rep);
    }
    let r_dom_simplex = dom
        .into_iter()
        .collect::<Option<Vec<usize>>>()
        .map(|t| FinMap::new(setup.simplex.len(), t))
        .transpose()?;
    let r_dom = r_dom_simplex.as_ref().and_then(|m| {
        let table = m
            .table()
            .iter()
            .map(|&x| index_of(&setup.horn, &setup.simplex[x]))
            .collect::<Option<Vec<usize>>>()?;
        FinMap::new(setup.horn.len(), table).ok()
    });

    Ok(Retraction {
        r_cod,
        r_dom_simplex,
        r_dom,
        obligations: alloc::vec![endpoints, monotone, case_y1, case_y2, right, well_defined],
    })
}

/// Remaining obligations: corner injectivity, the right square, and `r ∘ s = id`.
fn assembly_obligations(setup: &RetractSetup, s: &Section, r: &Retraction) -> Vec<ObligationResult> {
    let l = &setup.lattice;
    let mut injective = ObligationResult::new(obligation::CORNER_INJECTIVE);
    injective.record(setup.product.corner.inl.is_injective(), || String::from("Δⁿ × Λ²₁ → corner"));
    injective.record(setup.product.corner.inr.is_injective(), || String::from("Λⁿₖ × Δ² → corner"));
    let mut square = ObligationResult::new(obligation::SQUARE_R_COMMUTES);
    let mut rs_cod = ObligationResult::new(obligation::RS_IDENTITY_COD);
    let mut rs_dom = ObligationResult::new(obligation::RS_IDENTITY_DOM);
    match (&r.r_cod, &r.r_dom_simplex) {
        (Some(r_cod), Some(r_dom)) => {
            for c in 0..setup.corner_size() {
                let lhs = r_dom.apply(c);
                let rhs = r_cod.apply(setup.product.map.apply(c));
                square.record(lhs == rhs, || format!("corner class {c}"));
            }
            if s.s_cod.dom() == setup.simplex.len() {
                for (x, p) in setup.simplex.iter().enumerate() {
                    rs_cod.record(r_cod.apply(s.s_cod.apply(x)) == x, || format!("x = {}", p.display(l)));
                }
            }
            if s.s_dom.dom() == setup.horn.len() {
                for (a, p) in setup.horn.iter().enumerate() {
                    rs_dom.record(r_dom.apply(s.s_dom.apply(a)) == setup.horn_map.apply(a), || {
                        format!("x = {}", p.display(l))
                    });
                }
            }
        }
        _ => {
            let missing = || String::from("retraction formula left the simplex");
            square.record(false, missing);
            rs_cod.record(false, missing);
            rs_dom.record(false, missing);
        }
    }
    alloc::vec![injective, square, rs_cod, rs_dom]
}

/// `(s_dom, s_cod)`, aborting on the first failed obligation.
pub fn build_section(l: &FiniteLattice, n: usize, k: usize, guard: Guard) -> Result<(FinMap, FinMap), RetractError> {
    let setup = RetractSetup::new(l, n, k, guard)?;
    let s = section(&setup)?;
    first_failure(&s.obligations)?;
    Ok((s.s_dom, s.s_cod))
}

/// `(r_dom, r_cod)`, aborting on the first failed obligation. For outer `k`
/// this is where the horn case that needs `j = k` is reported.
pub fn build_retraction(l: &FiniteLattice, n: usize, k: usize, guard: Guard) -> Result<(FinMap, FinMap), RetractError> {
    let setup = RetractSetup::new(l, n, k, guard)?;
    let r = retraction(&setup)?;
    first_failure(&r.obligations)?;
    match (r.r_dom, r.r_cod) {
        (Some(d), Some(c)) => Ok((d, c)),
        _ => Err(RetractError::Obligation {
            id: obligation::R_COD_MONOTONE,
            witness: String::from("retraction formula left the simplex"),
        }),
    }
}

/// Every obligation for one `(L, n, k)`, in a fixed order, plus the
/// symbolic certificate for the same `(n, k)` when within its bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractCheck {
    pub setup: RetractSetup,
    pub section: Section,
    pub retraction: Retraction,
    pub obligations: Vec<ObligationResult>,
    pub symbolic: Option<SymbolicReport>,
}

impl RetractCheck {
    pub fn passed(&self) -> bool {
        self.obligations.iter().all(|o| o.passed)
    }

    pub fn failed_ids(&self) -> Vec<&'static str> {
        obligation::failed_ids(&self.obligations)
    }

    /// Obligation ids whose concrete and symbolic verdicts differ.
    pub fn disagreements(&self) -> Vec<&'static str> {
        let Some(sym) = &self.symbolic else { return Vec::new() };
        self.obligations
            .iter()
            .filter(|o| sym.obligations.iter().any(|s| s.id == o.id && s.passed != o.passed))
            .map(|o| o.id)
            .collect()
    }
}

/// Runs every obligation without aborting. Outer `k` is allowed.
pub fn check_retract(l: &FiniteLattice, n: usize, k: usize, guard: Guard) -> Result<RetractCheck, RetractError> {
    let setup = RetractSetup::new(l, n, k, guard)?;
    let section = section(&setup)?;
    let retraction = retraction(&setup)?;
    let assembly = assembly_obligations(&setup, &section, &retraction);
    let mut obligations = section.obligations.clone();
    obligations.push(assembly[0].clone());
    obligations.extend(retraction.obligations.iter().cloned());
    obligations.extend(assembly[1..].iter().cloned());
    let symbolic = if n <= DEFAULT_SYMBOLIC_BOUND {
        Some(verify_retract_identity_symbolic(n, k)?)
    } else {
        None
    };
    Ok(RetractCheck {
        setup,
        section,
        retraction,
        obligations,
        symbolic,
    })
}

/// A verified retract: `λⁿₖ` is a retract of `λⁿₖ □× λ²₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractInstance {
    pub lattice: FiniteLattice,
    pub n: usize,
    pub k: usize,
    pub s_dom: FinMap,
    pub s_cod: FinMap,
    pub r_dom: FinMap,
    pub r_cod: FinMap,
    /// `λⁿₖ`.
    pub horn_map: FinMap,
    /// `λⁿₖ □× λ²₁`.
    pub product_map: FinMap,
    pub obligations: Vec<ObligationResult>,
    pub symbolic: Option<SymbolicReport>,
}

impl RetractInstance {
    /// `s : λⁿₖ → λⁿₖ □× λ²₁` and `r` back.
    pub fn retract_data(&self) -> Result<RetractData, RetractError> {
        Ok(RetractData {
            s: Square::new(self.horn_map.clone(), self.product_map.clone(), self.s_dom.clone(), self.s_cod.clone())?,
            r: Square::new(self.product_map.clone(), self.horn_map.clone(), self.r_dom.clone(), self.r_cod.clone())?,
        })
    }
}

/// Builds and checks the retract for inner `k`, cross-certified with the
/// symbolic decision procedure. Any failure is an error carrying its witness.
pub fn verify_retract(l: &FiniteLattice, n: usize, k: usize, guard: Guard) -> Result<RetractInstance, RetractError> {
    if !(0 < k && k < n) {
        return Err(RetractError::Range { n, k, reason: "k must be inner" });
    }
    let check = check_retract(l, n, k, guard)?;
    first_failure(&check.obligations)?;
    if let Some(sym) = &check.symbolic {
        first_failure(&sym.obligations)?;
    }
    if let Some(&id) = check.disagreements().first() {
        return Err(RetractError::Disagreement { id });
    }
    let (Some(r_dom), Some(r_cod)) = (check.retraction.r_dom.clone(), check.retraction.r_cod.clone()) else {
        return Err(RetractError::Obligation {
            id: obligation::R_COD_MONOTONE,
            witness: String::from("retraction formula left the simplex"),
        });
    };
    let instance = RetractInstance {
        lattice: l.clone(),
        n,
        k,
        s_dom: check.section.s_dom,
        s_cod: check.section.s_cod,
        r_dom,
        r_cod,
        horn_map: check.setup.horn_map,
        product_map: check.setup.product.map,
        obligations: check.obligations,
        symbolic: check.symbolic,
    };
    instance.retract_data()?.validate()?;
    Ok(instance)
}

/// Outcome of solving every lifting problem of `λⁿₖ` against `f` through
/// the retract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoReport {
    pub f: FinMap,
    pub derivation: Derivation,
    /// Lifting problems of `λⁿₖ` against `f`.
    pub problems: usize,
    /// Problems whose transported filler was the unique one.
    pub validated: usize,
}

impl DemoReport {
    pub fn passed(&self) -> bool {
        self.derivation.passed() && self.validated == self.problems
    }
}

/// From `λ²₁ ⊥ f`: derive `λ²₁ □× λⁿₖ ⊥ f` by closure under pushout-products,
/// then fill every square of `λⁿₖ` against `f` through the retract and
/// check each filler against direct enumeration.
pub fn inner_anodyne_demo(
    l: &FiniteLattice,
    n: usize,
    k: usize,
    f: &FinMap,
    guard: Guard,
) -> Result<DemoReport, RetractError> {
    let instance = verify_retract(l, n, k, guard)?;
    let lambda = horn_inclusion(l, HornSpec::new(2, 1)?, guard.limit)?.map;
    if !is_orthogonal(&lambda, f, guard)?.orthogonal {
        return Err(RetractError::Precondition(format!("λ²₁ is not left orthogonal to {f}")));
    }
    let derivation = orth_closure_pushout_product(&lambda, &instance.horn_map, f, guard)?;
    let rd = instance.retract_data()?;
    let ph = pullback_hom_map(&instance.horn_map, f, guard)?;
    let mut validated = 0;
    for c in 0..ph.corner.len() {
        let problem = ph.square(c);
        let t = orth_closure_retract(&rd, f, &problem, guard)?;
        if t.unique && enumerate_fillers(&problem, guard)? == [t.filler] {
            validated += 1;
        }
    }
    Ok(DemoReport {
        f: f.clone(),
        derivation,
        problems: ph.corner.len(),
        validated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::small_maps;
    use alloc::vec;

    fn c(n: usize) -> FiniteLattice {
        FiniteLattice::chain(n).unwrap()
    }

    fn g() -> Guard {
        Guard::default()
    }

    #[test]
    fn section_example_on_c3() {
        let l = c(3);
        let setup = RetractSetup::new(&l, 2, 1, g()).unwrap();
        let s = section(&setup).unwrap();
        assert!(s.obligations.iter().all(|o| o.passed));
        let x = SimplexPoint::from_interior(&l, &[2, 0]).unwrap();
        let xi = index_of(&setup.simplex, &x).unwrap();
        let out = s.s_cod.apply(xi);
        let (bx, by) = (out / setup.triangle.len(), out % setup.triangle.len());
        assert_eq!(bx, xi);
        assert_eq!(setup.triangle[by].interior(), &[2, 0]);
        for o in s.s_cod.table() {
            let y = &setup.triangle[o % setup.triangle.len()];
            assert!(l.le(y.coords()[2], y.coords()[1]));
        }
    }

    #[test]
    fn section_dom_is_injective() {
        let l = c(3);
        for n in 2..=4 {
            for k in 1..n {
                let (s_dom, _) = build_section(&l, n, k, g()).unwrap();
                assert!(s_dom.is_injective());
            }
        }
    }

    #[test]
    fn retraction_example_on_c3() {
        let l = c(3);
        let setup = RetractSetup::new(&l, 2, 1, g()).unwrap();
        let x = SimplexPoint::from_interior(&l, &[1, 1]).unwrap();
        let y = SimplexPoint::from_interior(&l, &[2, 1]).unwrap();
        let z = setup.retraction_coords(&x, &y);
        assert_eq!(&z[1..3], &[2, 1]);
        let zp = SimplexPoint::new(&l, z).unwrap();
        assert_eq!(crate::shapes::horn_witnesses(HornSpec::new(2, 1).unwrap(), &zp).unwrap(), vec![0]);
    }

    #[test]
    fn retraction_fixes_the_section() {
        let l = FiniteLattice::boolean(2).unwrap();
        let setup = RetractSetup::new(&l, 3, 1, g()).unwrap();
        for x in &setup.simplex {
            let c = x.coords();
            let y = SimplexPoint::new(&l, vec![l.top(), c[1], c[2], l.bottom()]).unwrap();
            assert_eq!(setup.retraction_coords(x, &y), c);
        }
    }

    #[test]
    fn configured_instances_pass() {
        for (l, n, k) in [(c(3), 2, 1), (c(4), 5, 2), (FiniteLattice::boolean(2).unwrap(), 3, 1)] {
            let inst = verify_retract(&l, n, k, g()).unwrap();
            assert_eq!(inst.obligations.len(), 12);
            assert!(inst.obligations.iter().all(|o| o.passed && o.checked > 0));
            assert!(inst.symbolic.as_ref().unwrap().passed());
        }
    }

    #[test]
    fn outer_horns_fail_exactly_the_predicted_case() {
        for l in [c(2), c(3), FiniteLattice::boolean(2).unwrap()] {
            for n in 1..=3 {
                let low = check_retract(&l, n, 0, g()).unwrap();
                assert_eq!(low.failed_ids(), vec![obligation::R_DOM_HORN_CASE_Y1], "n = {n}");
                let high = check_retract(&l, n, n, g()).unwrap();
                assert_eq!(high.failed_ids(), vec![obligation::R_DOM_HORN_CASE_Y2], "n = {n}");
                assert!(low.disagreements().is_empty());
                assert!(high.disagreements().is_empty());
            }
        }
        match build_retraction(&c(3), 2, 0, g()) {
            Err(RetractError::Obligation { id, .. }) => assert_eq!(id, obligation::R_DOM_HORN_CASE_Y1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(verify_retract(&c(3), 2, 0, g()), Err(RetractError::Range { .. })));
    }

    #[test]
    fn demo_with_searched_maps() {
        let l = c(3);
        let lambda = horn_inclusion(&l, HornSpec::new(2, 1).unwrap(), 100).unwrap().map;
        let candidates: Vec<FinMap> = small_maps(2)
            .into_iter()
            .filter(|f| is_orthogonal(&lambda, f, g()).unwrap().orthogonal)
            .collect();
        assert!(candidates.iter().any(|f| f.is_bijection() && f.dom() == 2));
        for f in &candidates {
            let r = inner_anodyne_demo(&l, 2, 1, f, g()).unwrap();
            assert!(r.passed(), "{f}: {:?}", r.derivation.steps);
        }
        let fold = FinMap::new(1, vec![0, 0]).unwrap();
        assert!(matches!(
            inner_anodyne_demo(&l, 2, 1, &fold, g()),
            Err(RetractError::Precondition(_))
        ));
    }
}
