//! Pushout-products and pullback-homs, on maps and on families, with the
//! fiberwise comparison isomorphisms between the two levels.

use alloc::vec::Vec;

use super::colimit::{pullback, pushout, set_join, Join, Pullback, Pushout};
use super::exponential::{postcompose_map, precompose_map, Exponential};
use super::family::{chi, const_set, fam_map_to_square, FamHomSet, FamMap, Family, FiberIndex};
use super::{FinMap, FincatError, Guard, Square};

/// `f □× g` for `f : A → B`, `g : X → Y`: the map out of the pushout of
/// `B × X ← A × X → A × Y` into `B × Y`.
///
/// Corner elements are `inl (b, x)` and `inr (a, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutProduct {
    pub f: FinMap,
    pub g: FinMap,
    pub corner: Pushout,
    pub map: FinMap,
}

pub fn pushout_product_map(f: &FinMap, g: &FinMap, guard: Guard) -> Result<PushoutProduct, FincatError> {
    let (a, b, x, y) = (f.dom(), f.cod(), g.dom(), g.cod());
    for size in [a.checked_mul(x), b.checked_mul(x), a.checked_mul(y), b.checked_mul(y)] {
        guard.check("pushout-product", size)?;
    }
    let corner = pushout(&f.product(&FinMap::identity(x)), &FinMap::identity(a).product(g))?;
    let map = corner.induced(&FinMap::identity(b).product(g), &f.product(&FinMap::identity(y)))?;
    Ok(PushoutProduct {
        f: f.clone(),
        g: g.clone(),
        corner,
        map,
    })
}

impl PushoutProduct {
    /// The corner element `inl (b, x)`.
    pub fn inl(&self, b: usize, x: usize) -> usize {
        self.corner.inl.apply(b * self.g.dom() + x)
    }

    /// The corner element `inr (a, y)`.
    pub fn inr(&self, a: usize, y: usize) -> usize {
        self.corner.inr.apply(a * self.g.cod() + y)
    }
}

/// `(A, B) □× (X, Y) = (A × X, (a, x) ↦ B a ∗ Y x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutProductFamily {
    pub left: Family,
    pub right: Family,
    pub family: Family,
    joins: Vec<Join>,
}

pub fn pushout_product_fam(left: &Family, right: &Family, guard: Guard) -> Result<PushoutProductFamily, FincatError> {
    guard.check("pushout-product base", left.base().checked_mul(right.base()))?;
    let mut joins = Vec::with_capacity(left.base() * right.base());
    for a in 0..left.base() {
        for x in 0..right.base() {
            joins.push(set_join(left.fiber(a), right.fiber(x)));
        }
    }
    let family = Family::new(joins.iter().map(Join::size).collect());
    Ok(PushoutProductFamily {
        left: left.clone(),
        right: right.clone(),
        family,
        joins,
    })
}

impl PushoutProductFamily {
    pub fn join(&self, a: usize, x: usize) -> &Join {
        &self.joins[a * self.right.base() + x]
    }
}

/// Functorial action of the join on maps, `f ∗ g : X ∗ Y → X' ∗ Y'`.
pub fn join_map(f: &FinMap, g: &FinMap) -> FinMap {
    let src = set_join(f.dom(), g.dom());
    let dst = set_join(f.cod(), g.cod());
    let left = dst.inl().after(f).expect("shapes agree");
    let right = dst.inr().after(g).expect("shapes agree");
    src.pushout.induced(&left, &right).expect("joins are functorial")
}

/// `(m, μ) □× (n, ν) = (m × n, (a, a') ↦ μ a ∗ ν a')`.
pub fn join_action(
    mm: &FamMap,
    nn: &FamMap,
    src: &PushoutProductFamily,
    dst: &PushoutProductFamily,
) -> Result<FamMap, FincatError> {
    mm.check(&src.left, &dst.left)?;
    nn.check(&src.right, &dst.right)?;
    let mut fibers = Vec::with_capacity(src.family.base());
    for mu in &mm.fibers {
        for nu in &nn.fibers {
            fibers.push(join_map(mu, nu));
        }
    }
    FamMap::new(&src.family, &dst.family, mm.base.product(&nn.base), fibers)
}

/// The fiberwise-join comparison: for each `(b, y)`, an explicit bijection
/// `f⁻¹ b ∗ g⁻¹ y → (f □× g)⁻¹ (b, y)`, indexed by `b·|Y| + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberwiseJoin {
    pub product: PushoutProduct,
    pub family: PushoutProductFamily,
    pub bijections: Vec<FinMap>,
}

pub fn fiberwise_join(f: &FinMap, g: &FinMap, guard: Guard) -> Result<FiberwiseJoin, FincatError> {
    let product = pushout_product_map(f, g, guard)?;
    let family = pushout_product_fam(&chi(f), &chi(g), guard)?;
    let (fi, gi, pi) = (FiberIndex::new(f), FiberIndex::new(g), FiberIndex::new(&product.map));
    let mut bijections = Vec::with_capacity(f.cod() * g.cod());
    for b in 0..f.cod() {
        for y in 0..g.cod() {
            let target = pi.fiber(b * g.cod() + y).len();
            // a in the fiber of f goes to inr (a, y), x in the fiber of g to inl (b, x)
            let left = FinMap::from_fn(fi.fiber(b).len(), target, |i| pi.position(product.inr(fi.element(b, i), y)));
            let right = FinMap::from_fn(gi.fiber(y).len(), target, |j| pi.position(product.inl(b, gi.element(y, j))));
            bijections.push(family.join(b, y).pushout.induced(&left, &right)?);
        }
    }
    Ok(FiberwiseJoin {
        product,
        family,
        bijections,
    })
}

impl FiberwiseJoin {
    pub fn all_bijective(&self) -> bool {
        self.bijections.iter().all(FinMap::is_bijection)
    }
}

/// The isomorphism `χ (f □× g) → χ f □× χ g` over the identity of `B × Y`.
pub fn pushout_product_preservation(fj: &FiberwiseJoin) -> Result<FamMap, FincatError> {
    let fibers = fj
        .bijections
        .iter()
        .map(|e| e.inverse().ok_or(FincatError::NotBijective("fiberwise join comparison")))
        .collect::<Result<Vec<_>, _>>()?;
    FamMap::new(
        &chi(&fj.product.map),
        &fj.family.family,
        FinMap::identity(fj.family.family.base()),
        fibers,
    )
}

/// `i ⋔ f` for `i : A → B`, `f : X → Y`: the map `X^B → X^A ×_{Y^A} Y^B`,
/// `d ↦ (d ∘ i, f ∘ d)`.
///
/// Corner elements are commuting squares `i → f`, stored as index pairs into
/// `tops = X^A` and `bottoms = Y^B`; the fiber over a square is its set of
/// diagonal fillers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackHom {
    pub i: FinMap,
    pub f: FinMap,
    pub source: Exponential,
    pub tops: Exponential,
    pub bottoms: Exponential,
    pub corner: Pullback,
    pub map: FinMap,
}

pub fn pullback_hom_map(i: &FinMap, f: &FinMap, guard: Guard) -> Result<PullbackHom, FincatError> {
    let source = Exponential::new(i.cod(), f.dom(), guard)?;
    let tops = Exponential::new(i.dom(), f.dom(), guard)?;
    let bottoms = Exponential::new(i.cod(), f.cod(), guard)?;
    let corner = pullback(
        &postcompose_map(f, i.dom(), guard)?,
        &precompose_map(i, f.cod(), guard)?,
        guard,
    )?;
    let map = corner.induced(&precompose_map(i, f.dom(), guard)?, &postcompose_map(f, i.cod(), guard)?)?;
    Ok(PullbackHom {
        i: i.clone(),
        f: f.clone(),
        source,
        tops,
        bottoms,
        corner,
        map,
    })
}

impl PullbackHom {
    pub fn square(&self, c: usize) -> Square {
        let (u, v) = self.corner.pairs[c];
        Square {
            left: self.i.clone(),
            right: self.f.clone(),
            top: self.tops.function(u),
            bottom: self.bottoms.function(v),
        }
    }

    pub fn index_of_square(&self, sq: &Square) -> Option<usize> {
        if sq.left != self.i || sq.right != self.f {
            return None;
        }
        self.corner
            .index_of(self.tops.index_of(&sq.top), self.bottoms.index_of(&sq.bottom))
    }

    pub fn filler(&self, d: usize) -> FinMap {
        self.source.function(d)
    }
}

/// `(A, B) ⋔ (X, Y)`: base `Fam((A, B), (X, Y))`, fiber over `(m, μ)` the
/// sections `Π_a const (μ a)`, each given by its values `y_a ∈ Y (m a)` and
/// enumerated with `a = 0` most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackHomFamily {
    pub left: Family,
    pub right: Family,
    pub homs: FamHomSet,
    pub family: Family,
}

pub fn pullback_hom_fam(left: &Family, right: &Family, guard: Guard) -> Result<PullbackHomFamily, FincatError> {
    let homs = FamHomSet::new(left, right, guard)?;
    let mut fibers = Vec::with_capacity(homs.len());
    let mut total: usize = 0;
    for mm in homs.iter() {
        let count = mm
            .fibers
            .iter()
            .try_fold(1usize, |c, mu| c.checked_mul(const_set(mu).len()));
        total = guard.check("pullback-hom family", count.and_then(|c| total.checked_add(c)))?;
        fibers.push(count.expect("checked above"));
    }
    Ok(PullbackHomFamily {
        left: left.clone(),
        right: right.clone(),
        homs,
        family: Family::new(fibers),
    })
}

impl PullbackHomFamily {
    /// The values of section `s` over base element `m`.
    pub fn section(&self, m: usize, s: usize) -> Vec<usize> {
        let mm = self.homs.get(m);
        let consts: Vec<Vec<usize>> = mm.fibers.iter().map(const_set).collect();
        let mut rem = s;
        let mut values = alloc::vec![0; consts.len()];
        for (a, c) in consts.iter().enumerate().rev() {
            values[a] = c[rem % c.len()];
            rem /= c.len();
        }
        values
    }

    pub fn section_index(&self, m: usize, values: &[usize]) -> Option<usize> {
        let mm = self.homs.get(m);
        if values.len() != mm.fibers.len() {
            return None;
        }
        let mut index = 0;
        for (mu, &v) in mm.fibers.iter().zip(values) {
            let c = const_set(mu);
            index = index * c.len() + c.binary_search(&v).ok()?;
        }
        Some(index)
    }
}

/// The isomorphism `χ i ⋔ χ f → χ (i ⋔ f)`: a family map becomes its square,
/// a section of constancy witnesses becomes the filler it picks out.
pub fn pullback_hom_preservation(fam: &PullbackHomFamily, ph: &PullbackHom) -> Result<FamMap, FincatError> {
    let (li, ri) = (FiberIndex::new(&ph.i), FiberIndex::new(&ph.f));
    let expect = |what, expected: &Family, found: &Family| {
        if expected == found {
            Ok(())
        } else {
            Err(FincatError::Mismatch {
                what,
                expected: expected.base(),
                found: found.base(),
            })
        }
    };
    expect("pullback-hom left family", &li.family(), &fam.left)?;
    expect("pullback-hom right family", &ri.family(), &fam.right)?;
    let target = FiberIndex::new(&ph.map);
    let mut base = Vec::with_capacity(fam.homs.len());
    let mut fibers = Vec::with_capacity(fam.homs.len());
    for (m, mm) in fam.homs.iter().enumerate() {
        let sq = fam_map_to_square(&ph.i, &ph.f, &mm)?;
        let c = ph.index_of_square(&sq).ok_or(FincatError::InvalidElement("pullback-hom corner point"))?;
        base.push(c);
        let size = target.fiber(c).len();
        let table = (0..fam.family.fiber(m))
            .map(|s| {
                let values = fam.section(m, s);
                let d = FinMap::from_fn(ph.i.cod(), ph.f.dom(), |b| ri.element(mm.base.apply(b), values[b]));
                target.position(ph.source.index_of(&d))
            })
            .collect();
        fibers.push(FinMap::new(size, table)?);
    }
    FamMap::new(&fam.family, &chi(&ph.map), FinMap::new(ph.corner.len(), base)?, fibers)
}

/// Contravariant action: `(m, μ) : (A, B) → (A', B')` induces
/// `(A', B') ⋔ G → (A, B) ⋔ G` by precomposition.
pub fn precompose_hom(mm: &FamMap, from: &PullbackHomFamily, to: &PullbackHomFamily) -> Result<FamMap, FincatError> {
    mm.check(&to.left, &from.left)?;
    if from.right != to.right {
        return Err(FincatError::Mismatch {
            what: "precomposition target family",
            expected: from.right.base(),
            found: to.right.base(),
        });
    }
    let mut base = Vec::with_capacity(from.homs.len());
    let mut fibers = Vec::with_capacity(from.homs.len());
    for n in 0..from.homs.len() {
        let composite = mm.then(&from.homs.get(n))?;
        let target = to.homs.index_of(&composite).ok_or(FincatError::InvalidElement("family map"))?;
        base.push(target);
        let table = (0..from.family.fiber(n))
            .map(|s| {
                let c = from.section(n, s);
                let values: Vec<usize> = mm.base.table().iter().map(|&a| c[a]).collect();
                to.section_index(target, &values).ok_or(FincatError::InvalidElement("constancy section"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        fibers.push(FinMap::new(to.family.fiber(target), table)?);
    }
    FamMap::new(&from.family, &to.family, FinMap::new(to.homs.len(), base)?, fibers)
}

/// Covariant action: `(m, μ) : G → G'` induces `F ⋔ G → F ⋔ G'` by
/// postcomposition, transporting constancy witnesses along `μ`.
pub fn postcompose_hom(mm: &FamMap, from: &PullbackHomFamily, to: &PullbackHomFamily) -> Result<FamMap, FincatError> {
    mm.check(&from.right, &to.right)?;
    if from.left != to.left {
        return Err(FincatError::Mismatch {
            what: "postcomposition source family",
            expected: from.left.base(),
            found: to.left.base(),
        });
    }
    let mut base = Vec::with_capacity(from.homs.len());
    let mut fibers = Vec::with_capacity(from.homs.len());
    for n in 0..from.homs.len() {
        let nn = from.homs.get(n);
        let composite = nn.then(mm)?;
        let target = to.homs.index_of(&composite).ok_or(FincatError::InvalidElement("family map"))?;
        base.push(target);
        let table = (0..from.family.fiber(n))
            .map(|s| {
                let c = from.section(n, s);
                let values: Vec<usize> = c
                    .iter()
                    .enumerate()
                    .map(|(a, &y)| mm.fibers[nn.base.apply(a)].apply(y))
                    .collect();
                to.section_index(target, &values).ok_or(FincatError::InvalidElement("constancy section"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        fibers.push(FinMap::new(to.family.fiber(target), table)?);
    }
    FamMap::new(&from.family, &to.family, FinMap::new(to.homs.len(), base)?, fibers)
}

/// `(X ∗ Y → Z) → Σ_{f : X → Z} (Y → const f)`, restricting along both
/// injections. The second component lists the chosen constant per `y`.
pub fn join_to_const(x: usize, y: usize, h: &FinMap) -> Result<(FinMap, FinMap), FincatError> {
    let j = set_join(x, y);
    Ok((h.after(j.inl())?, h.after(j.inr())?))
}

/// Inverse of [`join_to_const`]; fails unless every value of `c` lies in
/// `const f`.
pub fn const_to_join(f: &FinMap, c: &FinMap) -> Result<FinMap, FincatError> {
    set_join(f.dom(), c.dom()).pushout.induced(f, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{chi_inverse, small_maps};
    use alloc::vec;

    fn m(cod: usize, table: &[usize]) -> FinMap {
        FinMap::new(cod, table.to_vec()).unwrap()
    }

    fn small_families() -> Vec<Family> {
        vec![
            Family::new(vec![]),
            Family::new(vec![0]),
            Family::new(vec![1]),
            Family::new(vec![2]),
            Family::new(vec![0, 1]),
            Family::new(vec![1, 2]),
            Family::new(vec![2, 0]),
        ]
    }

    #[test]
    fn pushout_product_of_empty_inclusions() {
        let e = FinMap::empty(1);
        let pp = pushout_product_map(&e, &e, Guard::default()).unwrap();
        assert_eq!(pp.map.dom(), 0);
        assert_eq!(pp.map.cod(), 1);
    }

    #[test]
    fn pushout_product_with_identity_is_bijective() {
        for f in small_maps(2) {
            let pp = pushout_product_map(&f, &FinMap::identity(2), Guard::default()).unwrap();
            assert!(pp.map.is_bijection(), "{f}");
        }
    }

    /// `∂Δ¹ □× ∂Δ¹ ↪ Δ¹ × Δ¹` in sets: the boundary of the square has 4 points.
    #[test]
    fn boundary_of_square() {
        let i = m(2, &[]);
        let pp = pushout_product_map(&i, &i, Guard::default()).unwrap();
        assert_eq!(pp.corner.apex, 0);
        let j = FinMap::identity(2);
        let pp = pushout_product_map(&m(1, &[0, 0]), &j, Guard::default()).unwrap();
        assert_eq!(pp.map.dom(), 2);
    }

    #[test]
    fn fiberwise_join_is_bijective_with_matching_sizes() {
        let maps = small_maps(2);
        for f in &maps {
            for g in &maps {
                let fj = fiberwise_join(f, g, Guard::default()).unwrap();
                assert!(fj.all_bijective(), "{f} {g}");
                let fibers = fj.product.map.fibers();
                for b in 0..f.cod() {
                    for y in 0..g.cod() {
                        let size = set_join(f.fibers()[b].len(), g.fibers()[y].len()).size();
                        assert_eq!(fibers[b * g.cod() + y].len(), size);
                    }
                }
                let iso = pushout_product_preservation(&fj).unwrap();
                assert!(iso.is_iso());
            }
        }
    }

    #[test]
    fn join_map_preserves_identities_and_composition() {
        for (a, b) in [(0, 0), (0, 2), (2, 0), (1, 2), (2, 2)] {
            let j = join_map(&FinMap::identity(a), &FinMap::identity(b));
            assert_eq!(j, FinMap::identity(set_join(a, b).size()));
        }
        let f = m(2, &[1, 1]);
        let g = m(3, &[]);
        let f2 = m(1, &[0, 0]);
        let g2 = m(2, &[0, 1, 1]);
        let lhs = join_map(&f2.after(&f).unwrap(), &g2.after(&g).unwrap());
        let rhs = join_map(&f2, &g2).after(&join_map(&f, &g)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn join_action_of_identities_is_identity() {
        for l in small_families() {
            for r in small_families() {
                let pp = pushout_product_fam(&l, &r, Guard::default()).unwrap();
                let id = join_action(&FamMap::identity(&l), &FamMap::identity(&r), &pp, &pp).unwrap();
                assert_eq!(id, FamMap::identity(&pp.family));
            }
        }
    }

    #[test]
    fn pullback_hom_against_identity_is_bijective() {
        for i in small_maps(2) {
            for n in 0..=2 {
                let ph = pullback_hom_map(&i, &FinMap::identity(n), Guard::default()).unwrap();
                assert!(ph.map.is_bijection());
            }
        }
    }

    #[test]
    fn pullback_hom_fibers_are_fillers() {
        let maps = small_maps(2);
        for i in &maps {
            for f in &maps {
                let ph = pullback_hom_map(i, f, Guard::default()).unwrap();
                let fibers = ph.map.fibers();
                for (c, fiber) in fibers.iter().enumerate() {
                    let sq = ph.square(c);
                    assert!(sq.commutes());
                    assert_eq!(ph.index_of_square(&sq), Some(c));
                    for &d in fiber {
                        let d = ph.filler(d);
                        assert_eq!(d.after(i).unwrap(), sq.top);
                        assert_eq!(f.after(&d).unwrap(), sq.bottom);
                    }
                }
            }
        }
    }

    /// Total space of `F ⋔ G` has `(Σ G)^A` elements.
    #[test]
    fn pullback_hom_total_space() {
        for l in small_families() {
            for r in small_families() {
                let ph = pullback_hom_fam(&l, &r, Guard::default()).unwrap();
                let expected = Exponential::new(l.base(), r.total(), Guard::default()).unwrap().len();
                assert_eq!(ph.family.total(), expected);
                for mi in 0..ph.homs.len() {
                    for s in 0..ph.family.fiber(mi) {
                        assert_eq!(ph.section_index(mi, &ph.section(mi, s)), Some(s));
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_hom_preservation_is_iso() {
        for l in small_families() {
            for r in small_families() {
                let (p, q) = (chi_inverse(&l), chi_inverse(&r));
                let fam = pullback_hom_fam(&l, &r, Guard::default()).unwrap();
                let ph = pullback_hom_map(&p, &q, Guard::default()).unwrap();
                let iso = pullback_hom_preservation(&fam, &ph).unwrap();
                assert!(iso.is_iso(), "{l:?} {r:?}");
            }
        }
    }

    #[test]
    fn hom_actions_are_functorial() {
        let a = Family::new(vec![1, 0]);
        let b = Family::new(vec![2]);
        let c = Family::new(vec![1, 1]);
        let g = Family::new(vec![2, 1]);
        let ab = FamHomSet::new(&a, &b, Guard::default()).unwrap();
        let bc = FamHomSet::new(&b, &c, Guard::default()).unwrap();
        let (pa, pb, pc) = (
            pullback_hom_fam(&a, &g, Guard::default()).unwrap(),
            pullback_hom_fam(&b, &g, Guard::default()).unwrap(),
            pullback_hom_fam(&c, &g, Guard::default()).unwrap(),
        );
        assert_eq!(precompose_hom(&FamMap::identity(&b), &pb, &pb).unwrap(), FamMap::identity(&pb.family));
        for x in ab.iter() {
            for y in bc.iter() {
                let whole = precompose_hom(&x.then(&y).unwrap(), &pc, &pa).unwrap();
                let parts = precompose_hom(&y, &pc, &pb)
                    .unwrap()
                    .then(&precompose_hom(&x, &pb, &pa).unwrap())
                    .unwrap();
                assert_eq!(whole, parts);
            }
        }
        let (qa, qb, qc) = (
            pullback_hom_fam(&g, &a, Guard::default()).unwrap(),
            pullback_hom_fam(&g, &b, Guard::default()).unwrap(),
            pullback_hom_fam(&g, &c, Guard::default()).unwrap(),
        );
        assert_eq!(postcompose_hom(&FamMap::identity(&b), &qb, &qb).unwrap(), FamMap::identity(&qb.family));
        for x in ab.iter() {
            for y in bc.iter() {
                let whole = postcompose_hom(&x.then(&y).unwrap(), &qa, &qc).unwrap();
                let parts = postcompose_hom(&x, &qa, &qb)
                    .unwrap()
                    .then(&postcompose_hom(&y, &qb, &qc).unwrap())
                    .unwrap();
                assert_eq!(whole, parts);
            }
        }
    }

    /// `(X ∗ Y → Z) ≅ Σ_{f : X → Z} (Y → const f)` by mutually inverse maps.
    #[test]
    fn join_and_constancy() {
        for x in 0..=2 {
            for y in 0..=2 {
                for z in 0..=2 {
                    let size = set_join(x, y).size();
                    let homs = Exponential::new(size, z, Guard::default()).unwrap();
                    for h in homs.iter() {
                        let (f, c) = join_to_const(x, y, &h).unwrap();
                        assert!(c.table().iter().all(|v| const_set(&f).contains(v)));
                        assert_eq!(const_to_join(&f, &c).unwrap(), h);
                    }
                    // brute-force size of the Σ side
                    let fs = Exponential::new(x, z, Guard::default()).unwrap();
                    let mut pairs = 0;
                    for f in fs.iter() {
                        let k = const_set(&f).len();
                        pairs += Exponential::new(y, k, Guard::default()).unwrap().len();
                        let cs = Exponential::new(y, z, Guard::default()).unwrap();
                        for c in cs.iter() {
                            let valid = c.table().iter().all(|v| const_set(&f).contains(v));
                            assert_eq!(const_to_join(&f, &c).is_ok(), valid);
                        }
                    }
                    assert_eq!(pairs, homs.len());
                }
            }
        }
    }
}
