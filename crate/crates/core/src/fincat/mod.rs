//! Finite sets and functions between them.
//!
//! A finite set is its cardinality `n`, with elements `0..n`. Every derived set
//! (products, pushouts, pullbacks, exponentials, hom-sets) comes with a fixed
//! lexicographic enumeration, so bijections can be produced as explicit
//! tables and compared for equality.
//!
//! Path data of commuting squares and fillers is replaced by pointwise
//! equality of tables: at the level of sets these are propositions.

mod colimit;
mod exponential;
mod family;
mod leibniz_ops;

use alloc::{format, string::String, vec::Vec};
use core::fmt;

use thiserror::Error;

pub use colimit::{pullback, pushout, set_join, Join, Pullback, Pushout, Tagged};
pub use exponential::{postcompose_map, precompose_map, Exponential};
pub use family::{
    chi, chi_inverse, chi_roundtrip, const_set, curry, fam_map_to_square, square_to_fam_map,
    uncurry, FamHomSet, FamMap, Family, FiberIndex,
};
pub use leibniz_ops::{
    const_to_join, fiberwise_join, join_action, join_map, join_to_const, postcompose_hom,
    precompose_hom, pullback_hom_fam, pullback_hom_map, pullback_hom_preservation,
    pushout_product_fam, pushout_product_map, pushout_product_preservation, FiberwiseJoin,
    PullbackHom, PullbackHomFamily, PushoutProduct, PushoutProductFamily,
};

/// Default cap on the number of elements of any enumerated derived set.
pub const DEFAULT_GUARD: usize = 1_000_000;

/// Upper bound on derived-set sizes; enumeration fails fast beyond it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub limit: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            limit: DEFAULT_GUARD,
        }
    }
}

impl Guard {
    pub fn new(limit: usize) -> Self {
        Guard { limit }
    }

    /// `size` is `None` when the true size overflowed `usize`.
    pub fn check(&self, what: &'static str, size: Option<usize>) -> Result<usize, FincatError> {
        match size {
            Some(s) if s <= self.limit => Ok(s),
            _ => Err(FincatError::SizeGuard {
                what,
                size,
                limit: self.limit,
            }),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FincatError {
    #[error("{what} would have {} elements, above the guard of {limit}", .size.map_or_else(|| String::from("more than usize::MAX"), |s| format!("{s}")))]
    SizeGuard {
        what: &'static str,
        size: Option<usize>,
        limit: usize,
    },
    #[error("entry {index} maps to {value}, outside a codomain of size {cod}")]
    EntryOutOfRange { index: usize, value: usize, cod: usize },
    #[error("shape mismatch in {what}: expected {expected}, found {found}")]
    Mismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("square does not commute at element {at}")]
    NotCommuting { at: usize },
    #[error("maps do not form a cocone: {0}")]
    NotACocone(String),
    #[error("{0} is not a bijection")]
    NotBijective(&'static str),
    #[error("element is not a valid {0}")]
    InvalidElement(&'static str),
}

/// A function between finite sets, stored as its table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinMap {
    cod: usize,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(cod: usize, table: Vec<usize>) -> Result<Self, FincatError> {
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= cod) {
            return Err(FincatError::EntryOutOfRange { index, value, cod });
        }
        Ok(FinMap { cod, table })
    }

    /// Panics if `f` leaves the codomain.
    pub fn from_fn(dom: usize, cod: usize, f: impl FnMut(usize) -> usize) -> Self {
        let table: Vec<usize> = (0..dom).map(f).collect();
        assert!(table.iter().all(|&v| v < cod), "FinMap::from_fn: value out of range");
        FinMap { cod, table }
    }

    pub(crate) fn from_table_unchecked(cod: usize, table: Vec<usize>) -> Self {
        debug_assert!(table.iter().all(|&v| v < cod));
        FinMap { cod, table }
    }

    pub fn identity(n: usize) -> Self {
        FinMap {
            cod: n,
            table: (0..n).collect(),
        }
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Self {
        assert!(dom == 0 || value < cod);
        FinMap {
            cod,
            table: alloc::vec![value; dom],
        }
    }

    /// The unique map out of the empty set.
    pub fn empty(cod: usize) -> Self {
        FinMap {
            cod,
            table: Vec::new(),
        }
    }

    pub fn dom(&self) -> usize {
        self.table.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinMap) -> Result<FinMap, FincatError> {
        if first.cod != self.dom() {
            return Err(FincatError::Mismatch {
                what: "composition",
                expected: self.dom(),
                found: first.cod,
            });
        }
        Ok(FinMap {
            cod: self.cod,
            table: first.table.iter().map(|&x| self.table[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = alloc::vec![false; self.cod];
        self.table.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = alloc::vec![false; self.cod];
        for &y in &self.table {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijection(&self) -> bool {
        self.dom() == self.cod && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijection() {
            return None;
        }
        let mut table = alloc::vec![0; self.cod];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        Some(FinMap {
            cod: self.dom(),
            table,
        })
    }

    /// `self × other` on lexicographically ordered pairs.
    pub fn product(&self, other: &FinMap) -> FinMap {
        let (n, m) = (other.dom(), other.cod);
        FinMap::from_fn(self.dom() * n, self.cod * m, |p| {
            self.table[p / n] * m + other.table[p % n]
        })
    }

    /// Preimages of each codomain point, in increasing order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = alloc::vec![Vec::new(); self.cod];
        for (x, &y) in self.table.iter().enumerate() {
            fibers[y].push(x);
        }
        fibers
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{} {:?}", self.dom(), self.cod, self.table)
    }
}

/// `g ∘ f`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap, FincatError> {
    g.after(f)
}

/// A commuting square, i.e. a morphism `left → right` in the arrow category:
///
/// ```text
///   A --top--> X
///   |          |
///  left      right
///   v          v
///   B -bottom> Y
/// ```
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    pub left: FinMap,
    pub right: FinMap,
    pub top: FinMap,
    pub bottom: FinMap,
}

impl Square {
    /// Checks the shapes and `right ∘ top = bottom ∘ left`.
    pub fn new(left: FinMap, right: FinMap, top: FinMap, bottom: FinMap) -> Result<Self, FincatError> {
        let shape = [
            ("square top domain", left.dom(), top.dom()),
            ("square top codomain", right.dom(), top.cod()),
            ("square bottom domain", left.cod(), bottom.dom()),
            ("square bottom codomain", right.cod(), bottom.cod()),
        ];
        for (what, expected, found) in shape {
            if expected != found {
                return Err(FincatError::Mismatch { what, expected, found });
            }
        }
        let sq = Square {
            left,
            right,
            top,
            bottom,
        };
        if let Some(at) = sq.failure() {
            return Err(FincatError::NotCommuting { at });
        }
        Ok(sq)
    }

    fn failure(&self) -> Option<usize> {
        (0..self.left.dom()).find(|&a| {
            self.right.apply(self.top.apply(a)) != self.bottom.apply(self.left.apply(a))
        })
    }

    pub fn commutes(&self) -> bool {
        self.failure().is_none()
    }

    pub fn identity(f: &FinMap) -> Self {
        Square {
            left: f.clone(),
            right: f.clone(),
            top: FinMap::identity(f.dom()),
            bottom: FinMap::identity(f.cod()),
        }
    }

    /// Pastes `self : f → g` with `next : g → h`.
    pub fn then(&self, next: &Square) -> Result<Square, FincatError> {
        if self.right != next.left {
            return Err(FincatError::Mismatch {
                what: "square pasting",
                expected: self.right.dom(),
                found: next.left.dom(),
            });
        }
        Ok(Square {
            left: self.left.clone(),
            right: next.right.clone(),
            top: next.top.after(&self.top)?,
            bottom: next.bottom.after(&self.bottom)?,
        })
    }

    /// Both horizontal components are bijections.
    pub fn is_iso(&self) -> bool {
        self.top.is_bijection() && self.bottom.is_bijection()
    }

    pub fn inverse(&self) -> Option<Square> {
        Some(Square {
            left: self.right.clone(),
            right: self.left.clone(),
            top: self.top.inverse()?,
            bottom: self.bottom.inverse()?,
        })
    }
}

/// Canonical enumeration of all maps `dom → cod` with `|dom|, |cod| ≤ max`,
/// ordered by domain size, then codomain size, then table.
pub fn small_maps(max: usize) -> Vec<FinMap> {
    let mut out = Vec::new();
    for dom in 0..=max {
        for cod in 0..=max {
            let exp = Exponential::new(dom, cod, Guard::default()).expect("small exponential");
            out.extend((0..exp.len()).map(|i| exp.function(i)));
        }
    }
    out
}
