//! Finite bounded distributive lattices given by closed meet/join tables.
//!
//! Elements are indices `0..size`. Every axiom check is exhaustive over
//! element tuples, so these are meant for small models (a few dozen elements
//! at most). The order is `x ≤ y  :⇔  x ∨ y = y`, which on a valid lattice
//! coincides with `x ∧ y = x`.

use alloc::{format, string::String, vec::Vec};
use core::fmt;

use thiserror::Error;

/// An element of a [`FiniteLattice`], as an index into its tables.
pub type Elem = usize;

/// Largest `k` accepted by [`FiniteLattice::boolean`].
pub const DEFAULT_BOOLEAN_BOUND: usize = 4;

/// Largest element count produced by [`FiniteLattice::product`].
pub const MAX_PRODUCT_SIZE: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("{table} table has {found} rows or columns where {expected} were expected")]
    TableShape {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table}[{row}][{col}] = {value} is out of range for a lattice of size {size}")]
    EntryOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("{what} = {value} is out of range for a lattice of size {size}")]
    ElementOutOfRange {
        what: &'static str,
        value: usize,
        size: usize,
    },
    #[error("got {found} labels for {size} elements")]
    LabelCount { found: usize, size: usize },
    #[error("{what} bound exceeded: {requested} > {bound}")]
    BoundExceeded {
        what: &'static str,
        requested: usize,
        bound: usize,
    },
}

/// The equations a bounded distributive lattice must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    MeetIdempotent,
    JoinIdempotent,
    MeetAbsorbsJoin,
    MeetCommutative,
    JoinCommutative,
    JoinAbsorbsMeet,
    MeetAssociative,
    JoinAssociative,
    Distributive,
    MeetTop,
    JoinBottom,
}

impl Axiom {
    pub const ALL: [Axiom; 11] = [
        Axiom::MeetIdempotent,
        Axiom::JoinIdempotent,
        Axiom::MeetAbsorbsJoin,
        Axiom::MeetCommutative,
        Axiom::JoinCommutative,
        Axiom::JoinAbsorbsMeet,
        Axiom::MeetAssociative,
        Axiom::JoinAssociative,
        Axiom::Distributive,
        Axiom::MeetTop,
        Axiom::JoinBottom,
    ];

    /// The equation as text, e.g. `"x∨0 = x"`.
    pub fn equation(self) -> &'static str {
        match self {
            Axiom::MeetIdempotent => "x∧x = x",
            Axiom::JoinIdempotent => "x∨x = x",
            Axiom::MeetAbsorbsJoin => "x∧(x∨y) = x",
            Axiom::MeetCommutative => "x∧y = y∧x",
            Axiom::JoinCommutative => "x∨y = y∨x",
            Axiom::JoinAbsorbsMeet => "x∨(x∧y) = x",
            Axiom::MeetAssociative => "x∧(y∧z) = (x∧y)∧z",
            Axiom::JoinAssociative => "x∨(y∨z) = (x∨y)∨z",
            Axiom::Distributive => "x∧(y∨z) = (x∧y)∨(x∧z)",
            Axiom::MeetTop => "x∧1 = x",
            Axiom::JoinBottom => "x∨0 = x",
        }
    }

    /// Number of universally quantified variables in the equation.
    pub fn arity(self) -> usize {
        match self {
            Axiom::MeetIdempotent | Axiom::JoinIdempotent | Axiom::MeetTop | Axiom::JoinBottom => 1,
            Axiom::MeetAbsorbsJoin
            | Axiom::MeetCommutative
            | Axiom::JoinCommutative
            | Axiom::JoinAbsorbsMeet => 2,
            Axiom::MeetAssociative | Axiom::JoinAssociative | Axiom::Distributive => 3,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.equation())
    }
}

/// A failed axiom together with the lexicographically first tuple violating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

/// A finite lattice presented by its operation tables.
///
/// Construction only checks that the tables are well formed; whether the
/// lattice axioms hold is reported by [`FiniteLattice::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    size: usize,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    labels: Option<Vec<String>>,
}

impl FiniteLattice {
    /// Builds a lattice from row-major square tables.
    pub fn from_rows(
        meet: &[Vec<Elem>],
        join: &[Vec<Elem>],
        bottom: Elem,
        top: Elem,
    ) -> Result<Self, LatticeError> {
        let size = meet.len();
        if size == 0 {
            return Err(LatticeError::Empty);
        }
        let flatten = |table: &'static str, rows: &[Vec<Elem>]| -> Result<Vec<Elem>, LatticeError> {
            if rows.len() != size {
                return Err(LatticeError::TableShape {
                    table,
                    expected: size,
                    found: rows.len(),
                });
            }
            let mut flat = Vec::with_capacity(size * size);
            for (row, entries) in rows.iter().enumerate() {
                if entries.len() != size {
                    return Err(LatticeError::TableShape {
                        table,
                        expected: size,
                        found: entries.len(),
                    });
                }
                for (col, &value) in entries.iter().enumerate() {
                    if value >= size {
                        return Err(LatticeError::EntryOutOfRange {
                            table,
                            row,
                            col,
                            value,
                            size,
                        });
                    }
                    flat.push(value);
                }
            }
            Ok(flat)
        };
        let meet = flatten("meet", meet)?;
        let join = flatten("join", join)?;
        for (what, value) in [("bottom", bottom), ("top", top)] {
            if value >= size {
                return Err(LatticeError::ElementOutOfRange { what, value, size });
            }
        }
        Ok(FiniteLattice {
            size,
            meet,
            join,
            bottom,
            top,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LatticeError> {
        if labels.len() != self.size {
            return Err(LatticeError::LabelCount {
                found: labels.len(),
                size: self.size,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The chain `0 < 1/(n-1) < … < 1` on `n` elements, with min/max tables.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let rows = |op: fn(usize, usize) -> usize| -> Vec<Vec<Elem>> {
            (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect()
        };
        let labels = (0..n).map(|i| chain_label(i, n)).collect();
        FiniteLattice::from_rows(&rows(usize::min), &rows(usize::max), 0, n - 1)?.with_labels(labels)
    }

    /// The subset lattice of a `k`-element set, `k ≤ DEFAULT_BOOLEAN_BOUND`.
    pub fn boolean(k: usize) -> Result<Self, LatticeError> {
        FiniteLattice::boolean_bounded(k, DEFAULT_BOOLEAN_BOUND)
    }

    /// Element `e` is the subset whose bitmask is `e`; labels are `k`-digit
    /// bit strings, most significant bit first.
    pub fn boolean_bounded(k: usize, bound: usize) -> Result<Self, LatticeError> {
        if k > bound {
            return Err(LatticeError::BoundExceeded {
                what: "boolean lattice rank",
                requested: k,
                bound,
            });
        }
        let n = 1usize << k;
        let meet: Vec<Vec<Elem>> = (0..n).map(|x| (0..n).map(|y| x & y).collect()).collect();
        let join: Vec<Vec<Elem>> = (0..n).map(|x| (0..n).map(|y| x | y).collect()).collect();
        let labels = (0..n)
            .map(|e| {
                if k == 0 {
                    String::from("∅")
                } else {
                    (0..k).rev().map(|bit| if e >> bit & 1 == 1 { '1' } else { '0' }).collect()
                }
            })
            .collect();
        FiniteLattice::from_rows(&meet, &join, 0, n - 1)?.with_labels(labels)
    }

    /// Componentwise product; element `(a, b)` has index `a * |second| + b`.
    pub fn product(first: &FiniteLattice, second: &FiniteLattice) -> Result<Self, LatticeError> {
        let requested = first.size * second.size;
        if requested > MAX_PRODUCT_SIZE {
            return Err(LatticeError::BoundExceeded {
                what: "product lattice size",
                requested,
                bound: MAX_PRODUCT_SIZE,
            });
        }
        let m = second.size;
        let table = |op: fn(&FiniteLattice, Elem, Elem) -> Elem| -> Vec<Vec<Elem>> {
            (0..requested)
                .map(|x| {
                    (0..requested)
                        .map(|y| op(first, x / m, y / m) * m + op(second, x % m, y % m))
                        .collect()
                })
                .collect()
        };
        let labels = (0..requested)
            .map(|x| format!("({},{})", first.label(x / m), second.label(x % m)))
            .collect();
        FiniteLattice::from_rows(
            &table(FiniteLattice::meet),
            &table(FiniteLattice::join),
            first.bottom * m + second.bottom,
            first.top * m + second.top,
        )?
        .with_labels(labels)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `x`; falls back to the index.
    pub fn label(&self, x: Elem) -> String {
        match &self.labels {
            Some(labels) => labels[x].clone(),
            None => format!("{x}"),
        }
    }

    /// Index of the element carrying `label`, if any.
    pub fn element_by_label(&self, label: &str) -> Option<Elem> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// `x ∧ y`. Panics if either index is out of range.
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        assert!(x < self.size && y < self.size, "element out of range");
        self.meet[x * self.size + y]
    }

    /// `x ∨ y`. Panics if either index is out of range.
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        assert!(x < self.size && y < self.size, "element out of range");
        self.join[x * self.size + y]
    }

    pub fn meet_rows(&self) -> Vec<Vec<Elem>> {
        self.meet.chunks(self.size).map(<[Elem]>::to_vec).collect()
    }

    pub fn join_rows(&self) -> Vec<Vec<Elem>> {
        self.join.chunks(self.size).map(<[Elem]>::to_vec).collect()
    }

    /// `x ≤ y`, defined as `x ∨ y = y`.
    pub fn leq(&self, x: Elem, y: Elem) -> Result<bool, LatticeError> {
        self.check_elem("x", x)?;
        self.check_elem("y", y)?;
        Ok(self.le(x, y))
    }

    /// Unchecked form of [`FiniteLattice::leq`] for internal loops.
    pub fn le(&self, x: Elem, y: Elem) -> bool {
        self.join(x, y) == y
    }

    pub fn check_elem(&self, what: &'static str, x: Elem) -> Result<(), LatticeError> {
        if x < self.size {
            Ok(())
        } else {
            Err(LatticeError::ElementOutOfRange {
                what,
                value: x,
                size: self.size,
            })
        }
    }

    /// Checks every axiom over all element tuples. Each failing axiom is
    /// reported once, with its lexicographically first counterexample.
    pub fn validate(&self) -> Vec<Violation> {
        Axiom::ALL
            .iter()
            .filter_map(|&axiom| {
                self.first_counterexample(axiom)
                    .map(|witness| Violation { axiom, witness })
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        Axiom::ALL
            .iter()
            .all(|&axiom| self.first_counterexample(axiom).is_none())
    }

    fn holds(&self, axiom: Axiom, t: &[Elem]) -> bool {
        let m = |a, b| self.meet(a, b);
        let j = |a, b| self.join(a, b);
        match axiom {
            Axiom::MeetIdempotent => m(t[0], t[0]) == t[0],
            Axiom::JoinIdempotent => j(t[0], t[0]) == t[0],
            Axiom::MeetAbsorbsJoin => m(t[0], j(t[0], t[1])) == t[0],
            Axiom::MeetCommutative => m(t[0], t[1]) == m(t[1], t[0]),
            Axiom::JoinCommutative => j(t[0], t[1]) == j(t[1], t[0]),
            Axiom::JoinAbsorbsMeet => j(t[0], m(t[0], t[1])) == t[0],
            Axiom::MeetAssociative => m(t[0], m(t[1], t[2])) == m(m(t[0], t[1]), t[2]),
            Axiom::JoinAssociative => j(t[0], j(t[1], t[2])) == j(j(t[0], t[1]), t[2]),
            Axiom::Distributive => m(t[0], j(t[1], t[2])) == j(m(t[0], t[1]), m(t[0], t[2])),
            Axiom::MeetTop => m(t[0], self.top) == t[0],
            Axiom::JoinBottom => j(t[0], self.bottom) == t[0],
        }
    }

    fn first_counterexample(&self, axiom: Axiom) -> Option<Vec<Elem>> {
        let arity = axiom.arity();
        let mut tuple = alloc::vec![0; arity];
        loop {
            if !self.holds(axiom, &tuple) {
                return Some(tuple);
            }
            // odometer, last position fastest
            let mut pos = arity;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < self.size {
                    break;
                }
                tuple[pos] = 0;
            }
        }
    }
}

fn chain_label(i: usize, n: usize) -> String {
    if i == 0 {
        return String::from("0");
    }
    if i == n - 1 {
        return String::from("1");
    }
    let (mut a, mut b) = (i, n - 1);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    format!("{}/{}", i / a, (n - 1) / a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn diamond() -> FiniteLattice {
        // 0, a, b, c, 1
        let meet = |x: usize, y: usize| match (x, y) {
            _ if x == y => x,
            (4, o) | (o, 4) => o,
            _ => 0,
        };
        let join = |x: usize, y: usize| match (x, y) {
            _ if x == y => x,
            (0, o) | (o, 0) => o,
            _ => 4,
        };
        let rows = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..5).map(|x| (0..5).map(|y| op(x, y)).collect()).collect()
        };
        FiniteLattice::from_rows(&rows(&meet), &rows(&join), 0, 4).unwrap()
    }

    /// Brute-force isomorphism search over all permutations.
    fn isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
        fn go(a: &FiniteLattice, b: &FiniteLattice, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if perm.len() == a.size() {
                return (0..a.size()).all(|x| {
                    (0..a.size()).all(|y| {
                        perm[a.meet(x, y)] == b.meet(perm[x], perm[y])
                            && perm[a.join(x, y)] == b.join(perm[x], perm[y])
                    })
                });
            }
            for img in 0..b.size() {
                if !used[img] {
                    used[img] = true;
                    perm.push(img);
                    if go(a, b, perm, used) {
                        return true;
                    }
                    perm.pop();
                    used[img] = false;
                }
            }
            false
        }
        a.size() == b.size() && go(a, b, &mut Vec::new(), &mut vec![false; b.size()])
    }

    #[test]
    fn two_chain_is_valid() {
        let c2 = FiniteLattice::chain(2).unwrap();
        assert!(c2.validate().is_empty());
        assert_eq!(c2.labels().unwrap(), ["0", "1"]);
    }

    #[test]
    fn collapsed_join_breaks_unit_law() {
        let meet = vec![vec![0, 0], vec![0, 1]];
        let join = vec![vec![0, 0], vec![0, 1]];
        let bad = FiniteLattice::from_rows(&meet, &join, 0, 1).unwrap();
        let report = bad.validate();
        let unit = report.iter().find(|v| v.axiom == Axiom::JoinBottom).unwrap();
        assert_eq!(unit.axiom.equation(), "x∨0 = x");
        assert_eq!(unit.witness, vec![1]);
    }

    #[test]
    fn diamond_is_not_distributive() {
        let report = diamond().validate();
        assert_eq!(
            report,
            vec![Violation {
                axiom: Axiom::Distributive,
                witness: vec![1, 2, 3],
            }]
        );
    }

    #[test]
    fn out_of_range_entry_is_structural() {
        let meet = vec![vec![0, 0], vec![0, 7]];
        let join = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteLattice::from_rows(&meet, &join, 0, 1),
            Err(LatticeError::EntryOutOfRange { value: 7, .. })
        ));
        assert!(matches!(
            FiniteLattice::from_rows(&[vec![0]], &[vec![0]], 0, 1),
            Err(LatticeError::ElementOutOfRange { what: "top", .. })
        ));
    }

    #[test]
    fn chain_order() {
        let c3 = FiniteLattice::chain(3).unwrap();
        assert_eq!(c3.label(1), "1/2");
        assert!(c3.leq(0, 1).unwrap());
        assert!(!c3.leq(2, 1).unwrap());
        assert!(c3.leq(0, 5).is_err());
        assert_eq!(FiniteLattice::chain(5).unwrap().label(2), "1/2");
    }

    #[test]
    fn boolean_square() {
        let b2 = FiniteLattice::boolean(2).unwrap();
        assert_eq!(b2.size(), 4);
        let a = b2.element_by_label("01").unwrap();
        let b = b2.element_by_label("10").unwrap();
        assert!(!b2.leq(a, b).unwrap());
        let incomparable: Vec<_> = (0..4)
            .flat_map(|x| (x + 1..4).map(move |y| (x, y)))
            .filter(|&(x, y)| !b2.le(x, y) && !b2.le(y, x))
            .collect();
        assert_eq!(incomparable, vec![(1, 2)]);
        assert!(matches!(
            FiniteLattice::boolean(5),
            Err(LatticeError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn product_of_chains_is_boolean() {
        let c2 = FiniteLattice::chain(2).unwrap();
        let p = FiniteLattice::product(&c2, &c2).unwrap();
        assert!(p.validate().is_empty());
        assert!(isomorphic(&p, &FiniteLattice::boolean(2).unwrap()));
        assert!(!isomorphic(&p, &FiniteLattice::chain(4).unwrap()));
    }

    #[test]
    fn builders_are_valid_and_orders_agree() {
        let mut models = vec![FiniteLattice::chain(1).unwrap()];
        for n in 2..=6 {
            models.push(FiniteLattice::chain(n).unwrap());
        }
        for k in 0..=3 {
            models.push(FiniteLattice::boolean(k).unwrap());
        }
        let c3 = FiniteLattice::chain(3).unwrap();
        models.push(FiniteLattice::product(&c3, &FiniteLattice::boolean(1).unwrap()).unwrap());
        models.push(FiniteLattice::product(&c3, &c3).unwrap());
        for l in &models {
            assert!(l.validate().is_empty());
            let n = l.size();
            for x in 0..n {
                assert!(l.le(l.bottom(), x) && l.le(x, l.top()) && l.le(x, x));
                for y in 0..n {
                    assert_eq!(l.le(x, y), l.meet(x, y) == x);
                    if l.le(x, y) && l.le(y, x) {
                        assert_eq!(x, y);
                    }
                    let (m, j) = (l.meet(x, y), l.join(x, y));
                    for z in 0..n {
                        if l.le(x, y) && l.le(y, z) {
                            assert!(l.le(x, z));
                        }
                        if l.le(z, x) && l.le(z, y) {
                            assert!(l.le(z, m));
                        }
                        if l.le(x, z) && l.le(y, z) {
                            assert!(l.le(j, z));
                        }
                    }
                }
            }
        }
    }
}
