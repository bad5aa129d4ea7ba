//! Pushouts (via union–find), pullbacks, and the join of two sets.

use alloc::{format, vec::Vec};

use super::{FinMap, FincatError, Guard};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Keeps the smaller index as root, so every root is its class minimum.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// An element of a disjoint union `A ⊔ B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tagged {
    Left(usize),
    Right(usize),
}

/// The pushout of `A ← C → B`, presented as a quotient of `A ⊔ B`.
///
/// Classes are numbered by their least member, `A` before `B`; that member is
/// the class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub apex: usize,
    pub inl: FinMap,
    pub inr: FinMap,
    pub representative: Vec<Tagged>,
    members: Vec<Vec<Tagged>>,
}

/// Pushout of `f : C → A` and `g : C → B`.
pub fn pushout(f: &FinMap, g: &FinMap) -> Result<Pushout, FincatError> {
    if f.dom() != g.dom() {
        return Err(FincatError::Mismatch {
            what: "pushout span",
            expected: f.dom(),
            found: g.dom(),
        });
    }
    let (a, b) = (f.cod(), g.cod());
    let mut uf = UnionFind::new(a + b);
    for c in 0..f.dom() {
        uf.union(f.apply(c), a + g.apply(c));
    }
    let tag = |i: usize| if i < a { Tagged::Left(i) } else { Tagged::Right(i - a) };
    let mut class_of_root = alloc::vec![usize::MAX; a + b];
    let mut representative = Vec::new();
    let mut members: Vec<Vec<Tagged>> = Vec::new();
    let mut class = alloc::vec![0; a + b];
    for i in 0..a + b {
        let r = uf.find(i);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = representative.len();
            representative.push(tag(i));
            members.push(Vec::new());
        }
        class[i] = class_of_root[r];
        members[class[i]].push(tag(i));
    }
    let apex = representative.len();
    Ok(Pushout {
        apex,
        inl: FinMap::from_table_unchecked(apex, class[..a].to_vec()),
        inr: FinMap::from_table_unchecked(apex, class[a..].to_vec()),
        representative,
        members,
    })
}

impl Pushout {
    /// Members of a class, in `A ⊔ B` order.
    pub fn members(&self, class: usize) -> &[Tagged] {
        &self.members[class]
    }

    pub fn class_of(&self, t: Tagged) -> usize {
        match t {
            Tagged::Left(x) => self.inl.apply(x),
            Tagged::Right(y) => self.inr.apply(y),
        }
    }

    /// The mediating map for the cocone `(left, right)`, which must agree on
    /// every class.
    pub fn induced(&self, left: &FinMap, right: &FinMap) -> Result<FinMap, FincatError> {
        if left.dom() != self.inl.dom() || right.dom() != self.inr.dom() || left.cod() != right.cod() {
            return Err(FincatError::Mismatch {
                what: "cocone legs",
                expected: self.inl.dom(),
                found: left.dom(),
            });
        }
        let value = |t: Tagged| match t {
            Tagged::Left(x) => left.apply(x),
            Tagged::Right(y) => right.apply(y),
        };
        let mut table = Vec::with_capacity(self.apex);
        for (class, members) in self.members.iter().enumerate() {
            let v = value(members[0]);
            if let Some(bad) = members.iter().find(|&&t| value(t) != v) {
                return Err(FincatError::NotACocone(format!(
                    "class {class} sends {:?} and {bad:?} to different points",
                    members[0]
                )));
            }
            table.push(v);
        }
        Ok(FinMap::from_table_unchecked(left.cod(), table))
    }
}

/// `{(a, b) : f a = g b}` in lexicographic order, with its projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    pub pairs: Vec<(usize, usize)>,
    pub p1: FinMap,
    pub p2: FinMap,
}

/// Pullback of `f : A → C` and `g : B → C`.
pub fn pullback(f: &FinMap, g: &FinMap, guard: Guard) -> Result<Pullback, FincatError> {
    if f.cod() != g.cod() {
        return Err(FincatError::Mismatch {
            what: "pullback cospan",
            expected: f.cod(),
            found: g.cod(),
        });
    }
    let over = g.fibers();
    let size = f.table().iter().map(|&c| over[c].len()).sum();
    guard.check("pullback", Some(size))?;
    let mut pairs = Vec::with_capacity(size);
    for (a, &c) in f.table().iter().enumerate() {
        pairs.extend(over[c].iter().map(|&b| (a, b)));
    }
    let p1 = FinMap::from_table_unchecked(f.dom(), pairs.iter().map(|p| p.0).collect());
    let p2 = FinMap::from_table_unchecked(g.dom(), pairs.iter().map(|p| p.1).collect());
    Ok(Pullback { pairs, p1, p2 })
}

impl Pullback {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.binary_search(&(a, b)).ok()
    }

    /// The mediating map for a cone `(to_a, to_b)`.
    pub fn induced(&self, to_a: &FinMap, to_b: &FinMap) -> Result<FinMap, FincatError> {
        if to_a.dom() != to_b.dom() {
            return Err(FincatError::Mismatch {
                what: "cone legs",
                expected: to_a.dom(),
                found: to_b.dom(),
            });
        }
        let table = (0..to_a.dom())
            .map(|z| {
                self.index_of(to_a.apply(z), to_b.apply(z))
                    .ok_or_else(|| FincatError::NotACocone(format!("cone leg pair at {z} is not in the pullback")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FinMap::from_table_unchecked(self.len(), table))
    }
}

/// The join `A ∗ B`: the pushout of the projections `A ← A × B → B`.
///
/// At the level of sets this is empty when both sides are, the other side when
/// one is empty, and a single point otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Join {
    pub left: usize,
    pub right: usize,
    pub pushout: Pushout,
}

pub fn set_join(left: usize, right: usize) -> Join {
    let pr1 = FinMap::from_fn(left * right, left, |p| p / right);
    let pr2 = FinMap::from_fn(left * right, right, |p| p % right);
    Join {
        left,
        right,
        pushout: pushout(&pr1, &pr2).expect("projections share a domain"),
    }
}

impl Join {
    pub fn size(&self) -> usize {
        self.pushout.apex
    }

    pub fn inl(&self) -> &FinMap {
        &self.pushout.inl
    }

    pub fn inr(&self) -> &FinMap {
        &self.pushout.inr
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{small_maps, Exponential};
    use alloc::vec;

    fn m(cod: usize, table: &[usize]) -> FinMap {
        FinMap::new(cod, table.to_vec()).unwrap()
    }

    #[test]
    fn pushout_of_empty_span_is_coproduct() {
        let p = pushout(&FinMap::empty(2), &FinMap::empty(3)).unwrap();
        assert_eq!(p.apex, 5);
        assert_eq!(p.inr.table(), &[2, 3, 4]);
    }

    #[test]
    fn codiagonal() {
        let id = FinMap::identity(3);
        let p = pushout(&id, &id).unwrap();
        assert_eq!(p.apex, 3);
        assert_eq!(p.inl, p.inr);
        assert_eq!(p.representative, vec![Tagged::Left(0), Tagged::Left(1), Tagged::Left(2)]);
    }

    #[test]
    fn identity_against_swap() {
        // generators A0 ~ B1 and A1 ~ B0 leave two classes
        let p = pushout(&FinMap::identity(2), &m(2, &[1, 0])).unwrap();
        assert_eq!(p.apex, 2);
        assert_eq!(p.members(0), &[Tagged::Left(0), Tagged::Right(1)]);
        assert_eq!(p.members(1), &[Tagged::Left(1), Tagged::Right(0)]);
        // swap against itself as well: the span is an isomorphism, so the apex is one copy
        assert_eq!(pushout(&m(2, &[1, 0]), &m(2, &[1, 0])).unwrap().apex, 2);
        // collapsing to a point needs both legs to identify the pair
        assert_eq!(pushout(&m(1, &[0, 0]), &m(2, &[1, 0])).unwrap().apex, 1);
    }

    #[test]
    fn induced_rejects_non_cocones() {
        let p = pushout(&FinMap::identity(1), &FinMap::identity(1)).unwrap();
        assert!(p.induced(&m(2, &[0]), &m(2, &[1])).is_err());
        assert_eq!(p.induced(&m(2, &[1]), &m(2, &[1])).unwrap().table(), &[1]);
    }

    /// For every span and every cocone over small sets, exactly one map out of
    /// the apex mediates, and `induced` finds it.
    #[test]
    fn pushout_universal_property() {
        let maps = small_maps(2);
        for f in &maps {
            for g in maps.iter().filter(|g| g.dom() == f.dom()) {
                let p = pushout(f, g).unwrap();
                for z in 0..=2 {
                    let la = Exponential::new(f.cod(), z, Guard::default()).unwrap();
                    let lb = Exponential::new(g.cod(), z, Guard::default()).unwrap();
                    let out = Exponential::new(p.apex, z, Guard::default()).unwrap();
                    for i in 0..la.len() {
                        for j in 0..lb.len() {
                            let (l, r) = (la.function(i), lb.function(j));
                            let cocone = l.after(f).unwrap() == r.after(g).unwrap();
                            let mediators: Vec<_> = (0..out.len())
                                .map(|k| out.function(k))
                                .filter(|h| h.after(&p.inl).unwrap() == l && h.after(&p.inr).unwrap() == r)
                                .collect();
                            if cocone {
                                assert_eq!(mediators.len(), 1);
                                assert_eq!(p.induced(&l, &r).unwrap(), mediators[0]);
                            } else {
                                assert!(mediators.is_empty());
                                assert!(p.induced(&l, &r).is_err());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_matches_brute_force() {
        let f = m(3, &[0, 2, 2]);
        let g = m(3, &[2, 1, 2]);
        let pb = pullback(&f, &g, Guard::default()).unwrap();
        let brute: Vec<_> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .filter(|&(a, b)| f.apply(a) == g.apply(b))
            .collect();
        assert_eq!(pb.pairs, brute);
        assert_eq!(pb.pairs, vec![(1, 0), (1, 2), (2, 0), (2, 2)]);
    }

    #[test]
    fn pullback_special_cases() {
        let f = m(3, &[0, 2, 1, 1]);
        let graph = pullback(&f, &FinMap::identity(3), Guard::default()).unwrap();
        assert_eq!(graph.len(), 4);
        assert!(graph.p1.is_bijection());
        let c1 = FinMap::constant(2, 1, 0);
        let c2 = FinMap::constant(3, 1, 0);
        assert_eq!(pullback(&c1, &c2, Guard::default()).unwrap().len(), 6);
        assert!(pullback(&c1, &c2, Guard::new(5)).is_err());
    }

    #[test]
    fn pullback_universal_property() {
        let maps = small_maps(2);
        for f in &maps {
            for g in maps.iter().filter(|g| g.cod() == f.cod()) {
                let pb = pullback(f, g, Guard::default()).unwrap();
                for z in 0..=2 {
                    let ea = Exponential::new(z, f.dom(), Guard::default()).unwrap();
                    let eb = Exponential::new(z, g.dom(), Guard::default()).unwrap();
                    let into = Exponential::new(z, pb.len(), Guard::default()).unwrap();
                    for i in 0..ea.len() {
                        for j in 0..eb.len() {
                            let (ta, tb) = (ea.function(i), eb.function(j));
                            let cone = f.after(&ta).unwrap() == g.after(&tb).unwrap();
                            let count = (0..into.len())
                                .map(|k| into.function(k))
                                .filter(|h| pb.p1.after(h).unwrap() == ta && pb.p2.after(h).unwrap() == tb)
                                .count();
                            assert_eq!(count, usize::from(cone));
                            assert_eq!(pb.induced(&ta, &tb).is_ok(), cone);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn joins() {
        assert_eq!(set_join(0, 0).size(), 0);
        assert_eq!(set_join(0, 3).size(), 3);
        assert_eq!(set_join(0, 3).inr().table(), &[0, 1, 2]);
        assert_eq!(set_join(2, 0).size(), 2);
        for a in 1..=3 {
            for b in 1..=3 {
                assert_eq!(set_join(a, b).size(), 1);
            }
        }
    }
}
