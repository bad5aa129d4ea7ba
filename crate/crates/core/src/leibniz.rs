//! The Leibniz adjunction, associativity and commutativity of `□×`,
//! orthogonality, and its closure under pushout-products and retracts.
//!
//! Isomorphisms in the arrow category are returned as pairs of squares and
//! checked componentwise. A diagonal filler is just its map `d`: the
//! coherence between the two triangles is automatic for sets.

use alloc::{
    collections::BTreeMap,
    format,
    string::{String, ToString},
    vec::Vec,
};
use core::fmt;

use thiserror::Error;

use crate::fincat::{
    chi, fam_map_to_square, fiberwise_join, join_action, pullback_hom_fam, pullback_hom_map,
    pullback_hom_preservation, pushout_product_fam, pushout_product_map, pushout_product_preservation,
    set_join, square_to_fam_map, postcompose_hom, precompose_hom, precompose_map, Exponential, FamHomSet,
    FamMap, Family, FiberwiseJoin, FinMap, FincatError, Guard, PullbackHom, PullbackHomFamily, PushoutProduct,
    PushoutProductFamily, Square,
};

/// A commuting square from `i` (left) to `f` (right).
pub type LiftingProblem = Square;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeibnizError {
    #[error(transparent)]
    Fincat(#[from] FincatError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid retract data: {component}: {detail}")]
    InvalidRetract { component: &'static str, detail: String },
    #[error("expected exactly one filler, found {count}")]
    NoUniqueFiller { count: usize },
    #[error("orthogonality methods disagree: {0}")]
    Disagreement(String),
}

/// A pair of squares `p → q` and `q → p` claimed to be mutually inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub forward: Square,
    pub backward: Square,
}

impl IsoWitness {
    pub fn verify(&self) -> bool {
        let (p, q) = (&self.forward.left, &self.forward.right);
        self.forward.commutes()
            && self.backward.commutes()
            && self.backward.left == *q
            && self.backward.right == *p
            && self.forward.then(&self.backward).ok().as_ref() == Some(&Square::identity(p))
            && self.backward.then(&self.forward).ok().as_ref() == Some(&Square::identity(q))
    }
}

// ---------------------------------------------------------------------------
// Transposes

fn adjunction_shapes(pp: &PushoutProductFamily, ph: &PullbackHomFamily) -> Result<(), FincatError> {
    if pp.right != ph.left {
        return Err(FincatError::Mismatch {
            what: "adjunction middle family",
            expected: pp.right.base(),
            found: ph.left.base(),
        });
    }
    Ok(())
}

/// `Fam(F □× G, H) → Fam(F, G ⋔ H)`: curry the base, restrict each
/// `μ (a, x)` along `inr` to get `κ a`, and read the `inl` values as a section.
pub fn transpose_fam(h: &FamMap, pp: &PushoutProductFamily, ph: &PullbackHomFamily) -> Result<FamMap, FincatError> {
    adjunction_shapes(pp, ph)?;
    h.check(&pp.family, &ph.right)?;
    let xs = pp.right.base();
    let mut base = Vec::with_capacity(pp.left.base());
    let mut fibers = Vec::with_capacity(pp.left.base());
    for a in 0..pp.left.base() {
        let k = FinMap::from_fn(xs, ph.right.base(), |x| h.base.apply(a * xs + x));
        let kappa = (0..xs)
            .map(|x| h.fibers[a * xs + x].after(pp.join(a, x).inr()))
            .collect::<Result<Vec<_>, _>>()?;
        let m = ph
            .homs
            .index_of(&FamMap { base: k, fibers: kappa })
            .ok_or(FincatError::InvalidElement("family map"))?;
        base.push(m);
        let table = (0..pp.left.fiber(a))
            .map(|b| {
                let values: Vec<usize> = (0..xs)
                    .map(|x| h.fibers[a * xs + x].apply(pp.join(a, x).inl().apply(b)))
                    .collect();
                ph.section_index(m, &values).ok_or(FincatError::InvalidElement("constancy section"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        fibers.push(FinMap::new(ph.family.fiber(m), table)?);
    }
    FamMap::new(&pp.left, &ph.family, FinMap::new(ph.homs.len(), base)?, fibers)
}

/// Inverse of [`transpose_fam`]: glue the section values and `κ a x` along
/// the join.
pub fn untranspose_fam(t: &FamMap, pp: &PushoutProductFamily, ph: &PullbackHomFamily) -> Result<FamMap, FincatError> {
    adjunction_shapes(pp, ph)?;
    t.check(&pp.left, &ph.family)?;
    let xs = pp.right.base();
    let mut base = Vec::with_capacity(pp.family.base());
    let mut fibers = Vec::with_capacity(pp.family.base());
    for a in 0..pp.left.base() {
        let m = t.base.apply(a);
        let kk = ph.homs.get(m);
        let sections: Vec<Vec<usize>> = (0..pp.left.fiber(a))
            .map(|b| ph.section(m, t.fibers[a].apply(b)))
            .collect();
        for x in 0..xs {
            let c = kk.base.apply(x);
            let left = FinMap::new(ph.right.fiber(c), sections.iter().map(|s| s[x]).collect())?;
            base.push(c);
            fibers.push(pp.join(a, x).pushout.induced(&left, &kk.fibers[x])?);
        }
    }
    FamMap::new(&pp.family, &ph.right, FinMap::new(ph.right.base(), base)?, fibers)
}

/// The data of `Fam(F □× G, H) ≅ Fam(F, G ⋔ H)` for fixed families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamAdjunction {
    pub product: PushoutProductFamily,
    pub hom: PullbackHomFamily,
}

impl FamAdjunction {
    pub fn new(f: &Family, g: &Family, h: &Family, guard: Guard) -> Result<Self, FincatError> {
        Ok(FamAdjunction {
            product: pushout_product_fam(f, g, guard)?,
            hom: pullback_hom_fam(g, h, guard)?,
        })
    }

    /// `Fam(F □× G, H)`.
    pub fn left_homs(&self, guard: Guard) -> Result<FamHomSet, FincatError> {
        FamHomSet::new(&self.product.family, &self.hom.right, guard)
    }

    /// `Fam(F, G ⋔ H)`.
    pub fn right_homs(&self, guard: Guard) -> Result<FamHomSet, FincatError> {
        FamHomSet::new(&self.product.left, &self.hom.family, guard)
    }

    pub fn transpose(&self, h: &FamMap) -> Result<FamMap, FincatError> {
        transpose_fam(h, &self.product, &self.hom)
    }

    pub fn untranspose(&self, t: &FamMap) -> Result<FamMap, FincatError> {
        untranspose_fam(t, &self.product, &self.hom)
    }
}

/// `Map(f □× g, h) ≅ Map(f, g ⋔ h)`, obtained from the family version by
/// conjugating with `χ` and the preservation isomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapAdjunction {
    pub f: FinMap,
    pub g: FinMap,
    pub h: FinMap,
    pub product: FiberwiseJoin,
    pub hom: PullbackHom,
    pub hom_family: PullbackHomFamily,
    product_iso: FamMap,
    product_iso_inv: FamMap,
    hom_iso: FamMap,
    hom_iso_inv: FamMap,
}

impl MapAdjunction {
    pub fn new(f: &FinMap, g: &FinMap, h: &FinMap, guard: Guard) -> Result<Self, FincatError> {
        let product = fiberwise_join(f, g, guard)?;
        let product_iso = pushout_product_preservation(&product)?;
        let product_iso_inv = product_iso
            .inverse()
            .ok_or(FincatError::NotBijective("pushout-product comparison"))?;
        let hom = pullback_hom_map(g, h, guard)?;
        let hom_family = pullback_hom_fam(&chi(g), &chi(h), guard)?;
        let hom_iso = pullback_hom_preservation(&hom_family, &hom)?;
        let hom_iso_inv = hom_iso
            .inverse()
            .ok_or(FincatError::NotBijective("pullback-hom comparison"))?;
        Ok(MapAdjunction {
            f: f.clone(),
            g: g.clone(),
            h: h.clone(),
            product,
            hom,
            hom_family,
            product_iso,
            product_iso_inv,
            hom_iso,
            hom_iso_inv,
        })
    }

    /// `f □× g`.
    pub fn pushout_product(&self) -> &FinMap {
        &self.product.product.map
    }

    /// `g ⋔ h`.
    pub fn pullback_hom(&self) -> &FinMap {
        &self.hom.map
    }

    /// Both hom-sets, as family hom-sets through `χ`.
    pub fn hom_sets(&self, guard: Guard) -> Result<(FamHomSet, FamHomSet), FincatError> {
        Ok((
            FamHomSet::new(&chi(self.pushout_product()), &chi(&self.h), guard)?,
            FamHomSet::new(&chi(&self.f), &chi(self.pullback_hom()), guard)?,
        ))
    }

    pub fn transpose(&self, sq: &Square) -> Result<Square, FincatError> {
        if sq.left != *self.pushout_product() || sq.right != self.h {
            return Err(FincatError::Mismatch {
                what: "square to transpose",
                expected: self.pushout_product().dom(),
                found: sq.left.dom(),
            });
        }
        let mm = self.product_iso_inv.then(&square_to_fam_map(sq))?;
        let t = transpose_fam(&mm, &self.product.family, &self.hom_family)?.then(&self.hom_iso)?;
        fam_map_to_square(&self.f, self.pullback_hom(), &t)
    }

    pub fn untranspose(&self, sq: &Square) -> Result<Square, FincatError> {
        if sq.left != self.f || sq.right != *self.pullback_hom() {
            return Err(FincatError::Mismatch {
                what: "square to untranspose",
                expected: self.f.dom(),
                found: sq.left.dom(),
            });
        }
        let t = square_to_fam_map(sq).then(&self.hom_iso_inv)?;
        let mm = self
            .product_iso
            .then(&untranspose_fam(&t, &self.product.family, &self.hom_family)?)?;
        fam_map_to_square(self.pushout_product(), &self.h, &mm)
    }
}

pub fn transpose_map(f: &FinMap, g: &FinMap, h: &FinMap, sq: &Square, guard: Guard) -> Result<Square, FincatError> {
    MapAdjunction::new(f, g, h, guard)?.transpose(sq)
}

pub fn untranspose_map(f: &FinMap, g: &FinMap, h: &FinMap, sq: &Square, guard: Guard) -> Result<Square, FincatError> {
    MapAdjunction::new(f, g, h, guard)?.untranspose(sq)
}

// ---------------------------------------------------------------------------
// Associativity and commutativity

/// `f □× g → g □× f`: swap the factors in the corner and in `B × Y`.
fn swap_square(p: &PushoutProduct, q: &PushoutProduct) -> Result<Square, FincatError> {
    let (a, b) = (p.f.dom(), p.f.cod());
    let (x, y) = (p.g.dom(), p.g.cod());
    let apex = q.corner.apex;
    let left = FinMap::from_fn(b * x, apex, |t| q.inr(t % x, t / x));
    let right = FinMap::from_fn(a * y, apex, |t| q.inl(t % y, t / y));
    let top = p.corner.induced(&left, &right)?;
    let bottom = FinMap::from_fn(b * y, y * b, |t| (t % y) * b + t / y);
    Square::new(p.map.clone(), q.map.clone(), top, bottom)
}

/// `f □× g ≅ g □× f`, computed directly on maps.
pub fn commutativity_iso(f: &FinMap, g: &FinMap, guard: Guard) -> Result<IsoWitness, FincatError> {
    let fg = pushout_product_map(f, g, guard)?;
    let gf = pushout_product_map(g, f, guard)?;
    Ok(IsoWitness {
        forward: swap_square(&fg, &gf)?,
        backward: swap_square(&gf, &fg)?,
    })
}

/// `(P ∗ Q) ∗ R → P ∗ (Q ∗ R)` on sets of the given sizes.
pub fn join_associator(p: usize, q: usize, r: usize) -> FinMap {
    let (pq, qr) = (set_join(p, q), set_join(q, r));
    let (src, dst) = (set_join(pq.size(), r), set_join(p, qr.size()));
    let from_q = dst.inr().after(qr.inl()).expect("shapes agree");
    let from_pq = pq.pushout.induced(dst.inl(), &from_q).expect("joins are associative");
    let from_r = dst.inr().after(qr.inr()).expect("shapes agree");
    src.pushout.induced(&from_pq, &from_r).expect("joins are associative")
}

/// `(F □× G) □× H → F □× (G □× H)` over the identity of `A × X × C`.
fn family_associator(
    f: &Family,
    g: &Family,
    h: &Family,
    src: &PushoutProductFamily,
    dst: &PushoutProductFamily,
) -> Result<FamMap, FincatError> {
    let mut fibers = Vec::with_capacity(src.family.base());
    for a in 0..f.base() {
        for x in 0..g.base() {
            for c in 0..h.base() {
                fibers.push(join_associator(f.fiber(a), g.fiber(x), h.fiber(c)));
            }
        }
    }
    FamMap::new(&src.family, &dst.family, FinMap::identity(src.family.base()), fibers)
}

/// `(f □× g) □× h ≅ f □× (g □× h)`, built in families and converted back.
pub fn associativity_iso(f: &FinMap, g: &FinMap, h: &FinMap, guard: Guard) -> Result<IsoWitness, FincatError> {
    let (cf, cg, ch) = (chi(f), chi(g), chi(h));
    let fg = fiberwise_join(f, g, guard)?;
    let gh = fiberwise_join(g, h, guard)?;
    let outer_left = fiberwise_join(&fg.product.map, h, guard)?;
    let outer_right = fiberwise_join(f, &gh.product.map, guard)?;
    let fg_h = pushout_product_fam(&fg.family.family, &ch, guard)?;
    let f_gh = pushout_product_fam(&cf, &gh.family.family, guard)?;
    let gh_inv = pushout_product_preservation(&gh)?
        .inverse()
        .ok_or(FincatError::NotBijective("pushout-product comparison"))?;
    let last = pushout_product_preservation(&outer_right)?
        .inverse()
        .ok_or(FincatError::NotBijective("pushout-product comparison"))?;
    let total = pushout_product_preservation(&outer_left)?
        .then(&join_action(
            &pushout_product_preservation(&fg)?,
            &FamMap::identity(&ch),
            &outer_left.family,
            &fg_h,
        )?)?
        .then(&family_associator(&cf, &cg, &ch, &fg_h, &f_gh)?)?
        .then(&join_action(&FamMap::identity(&cf), &gh_inv, &f_gh, &outer_right.family)?)?
        .then(&last)?;
    let inverse = total.inverse().ok_or(FincatError::NotBijective("associator"))?;
    let (l, r) = (&outer_left.product.map, &outer_right.product.map);
    Ok(IsoWitness {
        forward: fam_map_to_square(l, r, &total)?,
        backward: fam_map_to_square(r, l, &inverse)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocCommReport {
    pub commutativity: IsoWitness,
    pub associativity: IsoWitness,
}

impl AssocCommReport {
    pub fn passed(&self) -> bool {
        self.commutativity.verify() && self.associativity.verify()
    }
}

/// Commutativity for `(f, g)` and associativity for `(f, g, h)`.
pub fn assoc_comm_check(f: &FinMap, g: &FinMap, h: &FinMap, guard: Guard) -> Result<AssocCommReport, FincatError> {
    Ok(AssocCommReport {
        commutativity: commutativity_iso(f, g, guard)?,
        associativity: associativity_iso(f, g, h, guard)?,
    })
}

// ---------------------------------------------------------------------------
// The two-variable adjunction

/// `(F □× G) ⋔ H → F ⋔ (G ⋔ H)`: transpose on the base; a section
/// `(b, y) ↦ d` becomes `b ↦ (y ↦ d)`.
fn fam_adjunction_iso(
    pp: &PushoutProductFamily,
    inner: &PullbackHomFamily,
    src: &PullbackHomFamily,
    dst: &PullbackHomFamily,
) -> Result<FamMap, FincatError> {
    let xs = pp.right.base();
    let mut base = Vec::with_capacity(src.homs.len());
    let mut fibers = Vec::with_capacity(src.homs.len());
    for (m, h) in src.homs.iter().enumerate() {
        let t = transpose_fam(&h, pp, inner)?;
        let target = dst.homs.index_of(&t).ok_or(FincatError::InvalidElement("family map"))?;
        base.push(target);
        let table = (0..src.family.fiber(m))
            .map(|s| {
                let d = src.section(m, s);
                let e = (0..pp.left.base())
                    .map(|a| inner.section_index(t.base.apply(a), &d[a * xs..(a + 1) * xs]))
                    .collect::<Option<Vec<_>>>()?;
                dst.section_index(target, &e)
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(FincatError::InvalidElement("constancy section"))?;
        fibers.push(FinMap::new(dst.family.fiber(target), table)?);
    }
    FamMap::new(&src.family, &dst.family, FinMap::new(dst.homs.len(), base)?, fibers)
}

/// `(i □× j) ⋔ f ≅ i ⋔ (j ⋔ f)` in the arrow category, established in
/// families and conjugated back to maps.
pub fn two_variable_adjunction(i: &FinMap, j: &FinMap, f: &FinMap, guard: Guard) -> Result<IsoWitness, FincatError> {
    let (ci, cj, cf) = (chi(i), chi(j), chi(f));
    let ij = fiberwise_join(i, j, guard)?;
    let pp_inv = pushout_product_preservation(&ij)?
        .inverse()
        .ok_or(FincatError::NotBijective("pushout-product comparison"))?;
    let ph1 = pullback_hom_map(&ij.product.map, f, guard)?;
    let phf1 = pullback_hom_fam(&chi(&ij.product.map), &cf, guard)?;
    let phi1_inv = pullback_hom_preservation(&phf1, &ph1)?
        .inverse()
        .ok_or(FincatError::NotBijective("pullback-hom comparison"))?;
    let phf_pp = pullback_hom_fam(&ij.family.family, &cf, guard)?;
    let inner = pullback_hom_fam(&cj, &cf, guard)?;
    let outer = pullback_hom_fam(&ci, &inner.family, guard)?;
    let ph2 = pullback_hom_map(j, f, guard)?;
    let phi2 = pullback_hom_preservation(&inner, &ph2)?;
    let outer2 = pullback_hom_fam(&ci, &chi(&ph2.map), guard)?;
    let ph3 = pullback_hom_map(i, &ph2.map, guard)?;
    let phi3 = pullback_hom_preservation(&outer2, &ph3)?;
    let total = phi1_inv
        .then(&precompose_hom(&pp_inv, &phf1, &phf_pp)?)?
        .then(&fam_adjunction_iso(&ij.family, &inner, &phf_pp, &outer)?)?
        .then(&postcompose_hom(&phi2, &outer, &outer2)?)?
        .then(&phi3)?;
    let inverse = total.inverse().ok_or(FincatError::NotBijective("two-variable adjunction"))?;
    Ok(IsoWitness {
        forward: fam_map_to_square(&ph1.map, &ph3.map, &total)?,
        backward: fam_map_to_square(&ph3.map, &ph1.map, &inverse)?,
    })
}

// ---------------------------------------------------------------------------
// Fillers and orthogonality

/// All diagonal fillers `d` with `d ∘ i = u` and `f ∘ d = v`, in
/// lexicographic order of tables.
///
/// Candidates for `d b` are independent across `b`, so the fillers are the
/// product of the per-point candidate sets.
pub fn enumerate_fillers(p: &LiftingProblem, guard: Guard) -> Result<Vec<FinMap>, FincatError> {
    let candidates = filler_candidates(p)?;
    let count = candidates.iter().try_fold(1usize, |c, v| c.checked_mul(v.len()));
    let count = guard.check("filler set", count)?;
    let mut out = Vec::with_capacity(count);
    let mut digits = alloc::vec![0usize; candidates.len()];
    for _ in 0..count {
        out.push(FinMap::from_table_unchecked(
            p.right.dom(),
            digits.iter().zip(&candidates).map(|(&d, c)| c[d]).collect(),
        ));
        for slot in (0..digits.len()).rev() {
            digits[slot] += 1;
            if digits[slot] < candidates[slot].len() {
                break;
            }
            digits[slot] = 0;
        }
    }
    Ok(out)
}

/// Number of fillers, without listing them. Saturates at `usize::MAX`.
pub fn count_fillers(p: &LiftingProblem) -> Result<usize, FincatError> {
    Ok(filler_candidates(p)?
        .iter()
        .fold(1usize, |c, v| c.saturating_mul(v.len())))
}

fn filler_candidates(p: &LiftingProblem) -> Result<Vec<Vec<usize>>, FincatError> {
    if !p.commutes() {
        return Err(FincatError::NotCommuting {
            at: (0..p.left.dom())
                .find(|&a| p.right.apply(p.top.apply(a)) != p.bottom.apply(p.left.apply(a)))
                .unwrap_or(0),
        });
    }
    let over = p.left.fibers();
    Ok((0..p.left.cod())
        .map(|b| {
            (0..p.right.dom())
                .filter(|&y| p.right.apply(y) == p.bottom.apply(b) && over[b].iter().all(|&a| p.top.apply(a) == y))
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthogonalityMethod {
    /// `i ⋔ f` computed and tested for bijectivity.
    PullbackHom,
    /// `i ⋔ f` decomposed as a product of per-point factor maps.
    Fiberwise,
}

impl fmt::Display for OrthogonalityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrthogonalityMethod::PullbackHom => "pullback-hom",
            OrthogonalityMethod::Fiberwise => "fiberwise",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orthogonality {
    pub orthogonal: bool,
    pub method: OrthogonalityMethod,
    /// Result of the per-square filler count, when it was run.
    pub filler_check: Option<bool>,
    /// Number of commuting squares, when `i ⋔ f` was computed.
    pub squares: Option<usize>,
}

/// `i ⋔ f` as a product over `b ∈ B` of the maps
/// `φ_s : Y → Σ_{x : X} (f⁻¹ x)^s`, `y ↦ (f y, (y, …, y))`, where
/// `s = |i⁻¹ b|`. Factors are stored per distinct `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberwiseOrthogonality {
    pub factors: BTreeMap<usize, FinMap>,
    /// `|i⁻¹ b|` for each `b`.
    pub preimage_sizes: Vec<usize>,
    pub bijective: bool,
}

pub fn orthogonal_fiberwise(i: &FinMap, f: &FinMap, guard: Guard) -> Result<FiberwiseOrthogonality, FincatError> {
    let preimage_sizes: Vec<usize> = i.fibers().iter().map(Vec::len).collect();
    let over = f.fibers();
    let mut factors = BTreeMap::new();
    for &s in &preimage_sizes {
        if factors.contains_key(&s) {
            continue;
        }
        let mut offsets = Vec::with_capacity(f.cod() + 1);
        let mut acc: usize = 0;
        offsets.push(0);
        for fiber in &over {
            let e = Exponential::new(s, fiber.len(), guard)?;
            acc = guard.check("fiberwise factor", acc.checked_add(e.len()))?;
            offsets.push(acc);
        }
        let factor = FinMap::from_fn(f.dom(), acc, |y| {
            let x = f.apply(y);
            let pos = over[x].binary_search(&y).expect("y lies in its own fiber");
            // the constant tuple (pos, …, pos) in base |f⁻¹ x|
            let digit_base = over[x].len();
            offsets[x] + (0..s).fold(0, |n, _| n * digit_base + pos)
        });
        factors.insert(s, factor);
    }
    let domain_empty = f.dom() == 0 && !preimage_sizes.is_empty();
    let codomain_empty = preimage_sizes.iter().any(|s| factors[s].cod() == 0);
    let bijective = preimage_sizes.is_empty()
        || (domain_empty && codomain_empty)
        || preimage_sizes.iter().all(|s| factors[s].is_bijection());
    Ok(FiberwiseOrthogonality {
        factors,
        preimage_sizes,
        bijective,
    })
}

/// `i ⊥ f` via bijectivity of `i ⋔ f`, falling back to the fiberwise
/// decomposition when `i ⋔ f` is beyond the guard.
pub fn is_orthogonal(i: &FinMap, f: &FinMap, guard: Guard) -> Result<Orthogonality, FincatError> {
    match pullback_hom_map(i, f, guard) {
        Ok(ph) => Ok(Orthogonality {
            orthogonal: ph.map.is_bijection(),
            method: OrthogonalityMethod::PullbackHom,
            filler_check: None,
            squares: Some(ph.corner.len()),
        }),
        Err(FincatError::SizeGuard { .. }) => Ok(Orthogonality {
            orthogonal: orthogonal_fiberwise(i, f, guard)?.bijective,
            method: OrthogonalityMethod::Fiberwise,
            filler_check: None,
            squares: None,
        }),
        Err(e) => Err(e),
    }
}

/// [`is_orthogonal`] by bijectivity, cross-checked against "every square has
/// exactly one filler" and against the fiberwise decomposition.
pub fn is_orthogonal_checked(i: &FinMap, f: &FinMap, guard: Guard) -> Result<Orthogonality, LeibnizError> {
    let ph = pullback_hom_map(i, f, guard)?;
    let by_bijection = ph.map.is_bijection();
    let mut by_fillers = true;
    for c in 0..ph.corner.len() {
        let fillers = enumerate_fillers(&ph.square(c), guard)?;
        if fillers.len() != 1 {
            by_fillers = false;
            break;
        }
    }
    let by_factors = orthogonal_fiberwise(i, f, guard)?.bijective;
    if by_bijection != by_fillers || by_bijection != by_factors {
        return Err(LeibnizError::Disagreement(format!(
            "{i} against {f}: bijection {by_bijection}, unique fillers {by_fillers}, fiberwise {by_factors}"
        )));
    }
    Ok(Orthogonality {
        orthogonal: by_bijection,
        method: OrthogonalityMethod::PullbackHom,
        filler_check: Some(by_fillers),
        squares: Some(ph.corner.len()),
    })
}

/// All pairs `(i, f)` from `candidates` with `i ⊥ f`, in candidate order.
pub fn orthogonal_pairs(candidates: &[FinMap], guard: Guard) -> Result<Vec<(FinMap, FinMap)>, FincatError> {
    let mut out = Vec::new();
    for i in candidates {
        for f in candidates {
            if is_orthogonal(i, f, guard)?.orthogonal {
                out.push((i.clone(), f.clone()));
            }
        }
    }
    Ok(out)
}

/// First `f` in `candidates` with `i ⊥ f`.
pub fn first_right_orthogonal(i: &FinMap, candidates: &[FinMap], guard: Guard) -> Result<Option<FinMap>, FincatError> {
    for f in candidates {
        if is_orthogonal(i, f, guard)?.orthogonal {
            return Ok(Some(f.clone()));
        }
    }
    Ok(None)
}

/// The action of `(−) ⋔ f` on a square `σ : p → p'`, giving
/// `p' ⋔ f → p ⋔ f`. `src` is `p' ⋔ f`, `dst` is `p ⋔ f`.
pub fn hom_action(sigma: &Square, src: &PullbackHom, dst: &PullbackHom, guard: Guard) -> Result<Square, FincatError> {
    if src.i != sigma.right || dst.i != sigma.left || src.f != dst.f {
        return Err(FincatError::Mismatch {
            what: "pullback-hom action",
            expected: sigma.right.dom(),
            found: src.i.dom(),
        });
    }
    let top = precompose_map(&sigma.bottom, src.f.dom(), guard)?;
    let bottom = (0..src.corner.len())
        .map(|c| {
            let (u, v) = src.corner.pairs[c];
            let u = src.tops.function(u).after(&sigma.top)?;
            let v = src.bottoms.function(v).after(&sigma.bottom)?;
            dst.corner
                .index_of(dst.tops.index_of(&u), dst.bottoms.index_of(&v))
                .ok_or(FincatError::InvalidElement("square"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Square::new(src.map.clone(), dst.map.clone(), top, FinMap::new(dst.corner.len(), bottom)?)
}

// ---------------------------------------------------------------------------
// Closure under pushout-products

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepStatus {
    Pass,
    Fail,
    /// Not attempted because an intermediate object exceeded the guard.
    Skipped,
}

impl fmt::Display for StepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepStatus::Pass => "pass",
            StepStatus::Fail => "fail",
            StepStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub name: &'static str,
    pub status: StepStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<DerivationStep>,
}

impl Derivation {
    fn push(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        self.steps.push(DerivationStep {
            name,
            status: if ok { StepStatus::Pass } else { StepStatus::Fail },
            detail: detail.into(),
        });
    }

    /// No step failed and the conclusion holds.
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.status != StepStatus::Fail)
            && self
                .steps
                .iter()
                .any(|s| s.name == STEP_CONCLUSION && s.status == StepStatus::Pass)
    }

    pub fn step(&self, name: &str) -> Option<&DerivationStep> {
        self.steps.iter().find(|s| s.name == name)
    }
}

pub const STEP_PRECONDITION: &str = "precondition";
pub const STEP_COMMUTATIVITY: &str = "commutativity";
pub const STEP_TWO_VARIABLE: &str = "two-variable-adjunction";
pub const STEP_EQUIVALENCE: &str = "equivalence-orthogonal";
pub const STEP_FIBERWISE: &str = "fiberwise-orthogonality";
pub const STEP_CONCLUSION: &str = "conclusion";

/// Derives `i □× j ⊥ f` from `i ⊥ f`:
/// `(i □× j) ⋔ f ≅ (j □× i) ⋔ f ≅ j ⋔ (i ⋔ f)`, and the last map is a
/// bijection because `i ⋔ f` is.
///
/// When an intermediate object exceeds the guard, the remaining chain steps
/// are marked skipped and the conclusion is checked fiberwise instead.
pub fn orth_closure_pushout_product(i: &FinMap, j: &FinMap, f: &FinMap, guard: Guard) -> Result<Derivation, LeibnizError> {
    let pre = is_orthogonal(i, f, guard)?;
    if !pre.orthogonal {
        return Err(LeibnizError::Precondition(format!("{i} is not left orthogonal to {f}")));
    }
    let mut d = Derivation::default();
    d.push(STEP_PRECONDITION, true, format!("i ⋔ f is a bijection ({} method)", pre.method));
    match closure_chain(i, j, f, guard, &mut d) {
        Ok(()) => Ok(d),
        Err(FincatError::SizeGuard { what, .. }) => {
            for name in [STEP_COMMUTATIVITY, STEP_TWO_VARIABLE, STEP_EQUIVALENCE] {
                if d.step(name).is_none() {
                    d.steps.push(DerivationStep {
                        name,
                        status: StepStatus::Skipped,
                        detail: format!("{what} exceeds the guard"),
                    });
                }
            }
            let pp = pushout_product_map(i, j, guard)?;
            let fw = orthogonal_fiberwise(&pp.map, f, guard)?;
            d.push(
                STEP_FIBERWISE,
                fw.bijective,
                format!("{} factor map(s) over {} points", fw.factors.len(), fw.preimage_sizes.len()),
            );
            d.push(STEP_CONCLUSION, fw.bijective, "(i □× j) ⋔ f is a bijection");
            Ok(d)
        }
        Err(e) => Err(e.into()),
    }
}

fn closure_chain(i: &FinMap, j: &FinMap, f: &FinMap, guard: Guard, d: &mut Derivation) -> Result<(), FincatError> {
    let pp_ij = pushout_product_map(i, j, guard)?;
    let pp_ji = pushout_product_map(j, i, guard)?;
    let ph_ij = pullback_hom_map(&pp_ij.map, f, guard)?;
    let ph_ji = pullback_hom_map(&pp_ji.map, f, guard)?;
    let comm = commutativity_iso(j, i, guard)?;
    let swap = IsoWitness {
        forward: hom_action(&comm.forward, &ph_ij, &ph_ji, guard)?,
        backward: hom_action(&comm.backward, &ph_ji, &ph_ij, guard)?,
    };
    d.push(
        STEP_COMMUTATIVITY,
        swap.verify(),
        format!("(i □× j) ⋔ f ≅ (j □× i) ⋔ f on {} squares", ph_ij.corner.len()),
    );
    let adj = two_variable_adjunction(j, i, f, guard)?;
    d.push(
        STEP_TWO_VARIABLE,
        adj.verify() && adj.forward.left == ph_ji.map,
        "(j □× i) ⋔ f ≅ j ⋔ (i ⋔ f)",
    );
    let ph_if = pullback_hom_map(i, f, guard)?;
    let outer = pullback_hom_map(j, &ph_if.map, guard)?;
    d.push(
        STEP_EQUIVALENCE,
        ph_if.map.is_bijection() && outer.map.is_bijection(),
        "j ⋔ (i ⋔ f) is a bijection since i ⋔ f is",
    );
    let total = swap.forward.then(&adj.forward)?;
    let ok = total.is_iso() && total.right == outer.map && total.right.is_bijection() && ph_ij.map.is_bijection();
    d.push(STEP_CONCLUSION, ok, "(i □× j) ⋔ f is a bijection");
    Ok(())
}

// ---------------------------------------------------------------------------
// Closure under retracts

/// `j` as a retract of `i` in the arrow category: `s : j → i`,
/// `r : i → j` with `r ∘ s = id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractData {
    pub s: Square,
    pub r: Square,
}

impl RetractData {
    pub fn j(&self) -> &FinMap {
        &self.s.left
    }

    pub fn i(&self) -> &FinMap {
        &self.s.right
    }

    pub fn identity(f: &FinMap) -> Self {
        RetractData {
            s: Square::identity(f),
            r: Square::identity(f),
        }
    }

    pub fn validate(&self) -> Result<(), LeibnizError> {
        let bad = |component, detail: String| Err(LeibnizError::InvalidRetract { component, detail });
        if self.s.right != self.r.left || self.r.right != self.s.left {
            return bad("shape", String::from("s and r do not form a round trip j → i → j"));
        }
        if !self.s.commutes() {
            return bad("s", String::from("square does not commute"));
        }
        if !self.r.commutes() {
            return bad("r", String::from("square does not commute"));
        }
        let rs_top = self.r.top.after(&self.s.top)?;
        if let Some(x) = (0..rs_top.dom()).find(|&x| rs_top.apply(x) != x) {
            return bad("top", format!("r ∘ s sends {x} to {}", rs_top.apply(x)));
        }
        let rs_bottom = self.r.bottom.after(&self.s.bottom)?;
        if let Some(x) = (0..rs_bottom.dom()).find(|&x| rs_bottom.apply(x) != x) {
            return bad("bottom", format!("r ∘ s sends {x} to {}", rs_bottom.apply(x)));
        }
        Ok(())
    }
}

/// Applies `(−) ⋔ f`: `j ⋔ f` becomes a retract of `i ⋔ f`.
pub fn retract_under_hom(rd: &RetractData, f: &FinMap, guard: Guard) -> Result<RetractData, LeibnizError> {
    rd.validate()?;
    let ph_i = pullback_hom_map(rd.i(), f, guard)?;
    let ph_j = pullback_hom_map(rd.j(), f, guard)?;
    let out = RetractData {
        s: hom_action(&rd.r, &ph_j, &ph_i, guard)?,
        r: hom_action(&rd.s, &ph_i, &ph_j, guard)?,
    };
    out.validate()?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractTransport {
    /// The problem against `i`: `(u ∘ r_top, v ∘ r_bottom)`.
    pub transported: LiftingProblem,
    pub i_filler: FinMap,
    /// `i_filler ∘ s_bottom`.
    pub filler: FinMap,
    /// Whether `enumerate_fillers` found exactly this filler and no other.
    pub unique: bool,
}

/// Solves a lifting problem of `j` against `f` through the retract: move it
/// to `i` along `r`, take the unique `i`-filler, and restrict along `s`.
pub fn orth_closure_retract(
    rd: &RetractData,
    f: &FinMap,
    problem: &LiftingProblem,
    guard: Guard,
) -> Result<RetractTransport, LeibnizError> {
    rd.validate()?;
    if problem.left != *rd.j() || problem.right != *f {
        return Err(LeibnizError::Precondition(String::from(
            "lifting problem is not a square from j to f",
        )));
    }
    if !problem.commutes() {
        return Err(FincatError::NotCommuting { at: 0 }.into());
    }
    if !is_orthogonal(rd.i(), f, guard)?.orthogonal {
        return Err(LeibnizError::Precondition(String::from("i is not left orthogonal to f")));
    }
    let transported = Square::new(
        rd.i().clone(),
        f.clone(),
        problem.top.after(&rd.r.top)?,
        problem.bottom.after(&rd.r.bottom)?,
    )?;
    let mut fillers = enumerate_fillers(&transported, guard)?;
    if fillers.len() != 1 {
        return Err(LeibnizError::NoUniqueFiller { count: fillers.len() });
    }
    let i_filler = fillers.remove(0);
    let filler = i_filler.after(&rd.s.bottom)?;
    if filler.after(rd.j())? != problem.top || f.after(&filler)? != problem.bottom {
        return Err(LeibnizError::Precondition(String::from(
            "transported filler does not fill the original square",
        )));
    }
    let unique = enumerate_fillers(problem, guard)? == [filler.clone()];
    Ok(RetractTransport {
        transported,
        i_filler,
        filler,
        unique,
    })
}

impl fmt::Display for DerivationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.name, self.status, self.detail)
    }
}

/// Renders a table compactly for witnesses.
pub fn describe(map: &FinMap) -> String {
    map.to_string()
}
