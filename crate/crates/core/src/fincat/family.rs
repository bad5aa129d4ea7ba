//! Families of finite sets, the map/family correspondence `χ`, and hom-sets
//! between families.

use alloc::vec::Vec;

use super::exponential::checked_pow;
use super::{Exponential, FinMap, FincatError, Guard, Square};

/// A family of finite sets indexed by a finite base: fiber `a` has
/// `fibers[a]` elements.
///
/// Its total set `Σ` is ordered base-major: `(a, i)` comes before `(a', i')`
/// iff `a < a'`, or `a = a'` and `i < i'`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    fibers: Vec<usize>,
    offsets: Vec<usize>,
}

impl Family {
    pub fn new(fibers: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(fibers.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &f in &fibers {
            acc += f;
            offsets.push(acc);
        }
        Family { fibers, offsets }
    }

    pub fn base(&self) -> usize {
        self.fibers.len()
    }

    pub fn fiber(&self, a: usize) -> usize {
        self.fibers[a]
    }

    pub fn fibers(&self) -> &[usize] {
        &self.fibers
    }

    /// Cardinality of the total set.
    pub fn total(&self) -> usize {
        self.offsets[self.fibers.len()]
    }

    pub fn total_index(&self, a: usize, i: usize) -> usize {
        debug_assert!(i < self.fibers[a]);
        self.offsets[a] + i
    }

    pub fn total_pair(&self, index: usize) -> (usize, usize) {
        let a = self.offsets.partition_point(|&o| o <= index) - 1;
        (a, index - self.offsets[a])
    }
}

/// The fibers of a map, each listed in increasing preimage order, and the
/// position of every domain element inside its fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberIndex {
    fibers: Vec<Vec<usize>>,
    position: Vec<usize>,
}

impl FiberIndex {
    pub fn new(f: &FinMap) -> Self {
        let fibers = f.fibers();
        let mut position = alloc::vec![0; f.dom()];
        for fiber in &fibers {
            for (i, &a) in fiber.iter().enumerate() {
                position[a] = i;
            }
        }
        FiberIndex { fibers, position }
    }

    pub fn family(&self) -> Family {
        Family::new(self.fibers.iter().map(Vec::len).collect())
    }

    /// The `i`-th element of the fiber over `b`.
    pub fn element(&self, b: usize, i: usize) -> usize {
        self.fibers[b][i]
    }

    pub fn fiber(&self, b: usize) -> &[usize] {
        &self.fibers[b]
    }

    pub fn position(&self, a: usize) -> usize {
        self.position[a]
    }
}

/// `χ f`: the family of fibers of `f` over its codomain.
pub fn chi(f: &FinMap) -> Family {
    FiberIndex::new(f).family()
}

/// `χ⁻¹ F`: the first projection `Σ F → base`.
pub fn chi_inverse(family: &Family) -> FinMap {
    FinMap::from_fn(family.total(), family.base(), |p| family.total_pair(p).0)
}

/// The bijection `dom f ≅ Σ (χ f)`, `a ↦ (f a, position of a in its fiber)`;
/// it commutes with `f` and `χ⁻¹(χ f)`.
pub fn chi_roundtrip(f: &FinMap) -> FinMap {
    let index = FiberIndex::new(f);
    let family = index.family();
    FinMap::from_fn(f.dom(), family.total(), |a| {
        family.total_index(f.apply(a), index.position(a))
    })
}

/// A morphism of families `(A, B) → (X, Y)`: a base map `m` and, for each
/// `a`, a map `B a → Y (m a)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamMap {
    pub base: FinMap,
    pub fibers: Vec<FinMap>,
}

impl FamMap {
    pub fn new(src: &Family, dst: &Family, base: FinMap, fibers: Vec<FinMap>) -> Result<Self, FincatError> {
        let mm = FamMap { base, fibers };
        mm.check(src, dst)?;
        Ok(mm)
    }

    /// Checks that this is a morphism `src → dst`.
    pub fn check(&self, src: &Family, dst: &Family) -> Result<(), FincatError> {
        let mismatch = |what, expected, found| Err(FincatError::Mismatch { what, expected, found });
        if self.base.dom() != src.base() {
            return mismatch("family map base domain", src.base(), self.base.dom());
        }
        if self.base.cod() != dst.base() {
            return mismatch("family map base codomain", dst.base(), self.base.cod());
        }
        if self.fibers.len() != src.base() {
            return mismatch("family map fiber count", src.base(), self.fibers.len());
        }
        for (a, phi) in self.fibers.iter().enumerate() {
            if phi.dom() != src.fiber(a) {
                return mismatch("family map fiber domain", src.fiber(a), phi.dom());
            }
            let target = dst.fiber(self.base.apply(a));
            if phi.cod() != target {
                return mismatch("family map fiber codomain", target, phi.cod());
            }
        }
        Ok(())
    }

    pub fn identity(family: &Family) -> Self {
        FamMap {
            base: FinMap::identity(family.base()),
            fibers: family.fibers().iter().map(|&n| FinMap::identity(n)).collect(),
        }
    }

    /// `next ∘ self`: `(n ∘ m, a ↦ ν (m a) ∘ μ a)`.
    pub fn then(&self, next: &FamMap) -> Result<FamMap, FincatError> {
        let base = next.base.after(&self.base)?;
        let fibers = self
            .fibers
            .iter()
            .enumerate()
            .map(|(a, mu)| next.fibers[self.base.apply(a)].after(mu))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FamMap { base, fibers })
    }

    /// Apply to an element `(a, i)` of the total set.
    pub fn apply(&self, a: usize, i: usize) -> (usize, usize) {
        (self.base.apply(a), self.fibers[a].apply(i))
    }

    /// Total-space map `[m, μ] : Σ B → Σ Y`.
    pub fn total_map(&self, src: &Family, dst: &Family) -> FinMap {
        FinMap::from_fn(src.total(), dst.total(), |p| {
            let (a, i) = src.total_pair(p);
            let (x, j) = self.apply(a, i);
            dst.total_index(x, j)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.base.is_bijection() && self.fibers.iter().all(FinMap::is_bijection)
    }

    pub fn inverse(&self) -> Option<FamMap> {
        let base = self.base.inverse()?;
        let fibers = (0..base.dom())
            .map(|x| self.fibers[base.apply(x)].inverse())
            .collect::<Option<Vec<_>>>()?;
        Some(FamMap { base, fibers })
    }
}

/// The set-level `const f = Σ_{t:T} Π_{s:S} (f s = t)`, as its list of values:
/// all of `T` when `S` is empty, the constant value when `f` is constant, and
/// nothing otherwise.
pub fn const_set(f: &FinMap) -> Vec<usize> {
    match f.table().split_first() {
        None => (0..f.cod()).collect(),
        Some((&first, rest)) if rest.iter().all(|&v| v == first) => alloc::vec![first],
        Some(_) => Vec::new(),
    }
}

/// All family maps `src → dst`, ordered by base map (lexicographic), then by
/// fiber maps with base element 0 most significant, each lexicographic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamHomSet {
    src: Family,
    dst: Family,
    base: Exponential,
    /// `offsets[m]` is the index of the first element with base map `m`.
    offsets: Vec<usize>,
}

impl FamHomSet {
    pub fn new(src: &Family, dst: &Family, guard: Guard) -> Result<Self, FincatError> {
        let base = Exponential::new(src.base(), dst.base(), guard)?;
        let mut offsets = Vec::with_capacity(base.len() + 1);
        let mut acc: usize = 0;
        offsets.push(0);
        for m in 0..base.len() {
            let table = base.table(m);
            let count = table.iter().enumerate().try_fold(1usize, |c, (a, &x)| {
                c.checked_mul(checked_pow(dst.fiber(x), src.fiber(a))?)
            });
            acc = guard.check("family hom-set", count.and_then(|c| acc.checked_add(c)))?;
            offsets.push(acc);
        }
        Ok(FamHomSet {
            src: src.clone(),
            dst: dst.clone(),
            base,
            offsets,
        })
    }

    pub fn src(&self) -> &Family {
        &self.src
    }

    pub fn dst(&self) -> &Family {
        &self.dst
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().expect("offsets start with 0")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: usize) -> FamMap {
        assert!(index < self.len(), "hom-set index out of range");
        let m = self.offsets.partition_point(|&o| o <= index) - 1;
        let base = self.base.function(m);
        let mut rem = index - self.offsets[m];
        let exps: Vec<Exponential> = (0..self.src.base())
            .map(|a| {
                Exponential::new(self.src.fiber(a), self.dst.fiber(base.apply(a)), Guard::new(usize::MAX))
                    .expect("bounded by the hom-set guard")
            })
            .collect();
        let mut digits = alloc::vec![0; exps.len()];
        for (a, e) in exps.iter().enumerate().rev() {
            digits[a] = rem % e.len();
            rem /= e.len();
        }
        let fibers = exps.iter().zip(digits).map(|(e, d)| e.function(d)).collect();
        FamMap { base, fibers }
    }

    pub fn index_of(&self, mm: &FamMap) -> Option<usize> {
        mm.check(&self.src, &self.dst).ok()?;
        let m = self.base.index_of(&mm.base);
        let mut rem = 0usize;
        for (a, phi) in mm.fibers.iter().enumerate() {
            let e = Exponential::new(self.src.fiber(a), self.dst.fiber(mm.base.apply(a)), Guard::new(usize::MAX))
                .ok()?;
            rem = rem * e.len() + e.index_of(phi);
        }
        Some(self.offsets[m] + rem)
    }

    pub fn iter(&self) -> impl Iterator<Item = FamMap> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// A square `f → g` as a family map `χ f → χ g`: the base map is the bottom
/// edge; over `b`, the `i`-th preimage `a` goes to the position of `top a` in
/// the fiber of `g`.
pub fn square_to_fam_map(sq: &Square) -> FamMap {
    let fi = FiberIndex::new(&sq.left);
    let gi = FiberIndex::new(&sq.right);
    let gfam = gi.family();
    let fibers = (0..sq.left.cod())
        .map(|b| {
            let target = gfam.fiber(sq.bottom.apply(b));
            FinMap::from_fn(fi.fiber(b).len(), target, |i| gi.position(sq.top.apply(fi.element(b, i))))
        })
        .collect();
    FamMap {
        base: sq.bottom.clone(),
        fibers,
    }
}

/// Inverse of [`square_to_fam_map`] for a family map `χ f → χ g`.
pub fn fam_map_to_square(f: &FinMap, g: &FinMap, mm: &FamMap) -> Result<Square, FincatError> {
    let fi = FiberIndex::new(f);
    let gi = FiberIndex::new(g);
    mm.check(&fi.family(), &gi.family())?;
    let top = FinMap::from_fn(f.dom(), g.dom(), |a| {
        let b = f.apply(a);
        gi.element(mm.base.apply(b), mm.fibers[b].apply(fi.position(a)))
    });
    Square::new(f.clone(), g.clone(), top, mm.base.clone())
}

/// Currying `(A × X → C) ≅ Π_{a:A} (X → C)`, the non-dependent instance of
/// distributing `Π` over `Σ` used by the hom-set enumerations.
pub fn curry(a: usize, x: usize, m: &FinMap) -> Vec<FinMap> {
    assert_eq!(m.dom(), a * x, "curry: domain is not A × X");
    (0..a)
        .map(|ai| FinMap::from_fn(x, m.cod(), |xi| m.apply(ai * x + xi)))
        .collect()
}

pub fn uncurry(x: usize, c: usize, parts: &[FinMap]) -> FinMap {
    FinMap::from_fn(parts.len() * x, c, |p| parts[p / x].apply(p % x))
}
