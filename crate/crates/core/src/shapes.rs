//! Simplices `Δⁿ(L)` and horns `Λⁿₖ(L)` over a finite interval lattice.
//!
//! A point of `Δⁿ` is stored padded: `n + 2` coordinates with `x₀ = 1`,
//! `x_{n+1} = 0` and `xᵢ ≥ x_{i+1}`. It lies in `Λⁿₖ` when some face
//! `j ≠ k` is degenerate, `x_j = x_{j+1}`. Enumerations are in lexicographic
//! order of the coordinate indices.

use alloc::{string::String, vec::Vec};
use core::fmt::Write;

use thiserror::Error;

use crate::fincat::FinMap;
use crate::lattice::{Elem, FiniteLattice};

/// Default cap on the number of points enumerated.
pub const DEFAULT_SHAPE_BOUND: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("enumeration exceeds the bound of {bound} points")]
    BoundExceeded { bound: usize },
    #[error("point has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("horn index k = {k} is outside 0..={n}")]
    IndexOutOfRange { n: usize, k: usize },
    #[error("not a simplex point: {0}")]
    InvalidPoint(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexPoint {
    coords: Vec<Elem>,
}

impl SimplexPoint {
    /// Checks the padded invariants against `l`.
    pub fn new(l: &FiniteLattice, coords: Vec<Elem>) -> Result<Self, ShapeError> {
        let invalid = |msg: &str| Err(ShapeError::InvalidPoint(String::from(msg)));
        if coords.len() < 2 {
            return invalid("fewer than two coordinates");
        }
        if coords.iter().any(|&c| c >= l.size()) {
            return invalid("coordinate out of range");
        }
        if coords[0] != l.top() || coords[coords.len() - 1] != l.bottom() {
            return invalid("endpoints must be top and bottom");
        }
        if coords.windows(2).any(|w| !l.le(w[1], w[0])) {
            return invalid("coordinates are not decreasing");
        }
        Ok(SimplexPoint { coords })
    }

    pub fn from_interior(l: &FiniteLattice, interior: &[Elem]) -> Result<Self, ShapeError> {
        let mut coords = Vec::with_capacity(interior.len() + 2);
        coords.push(l.top());
        coords.extend_from_slice(interior);
        coords.push(l.bottom());
        SimplexPoint::new(l, coords)
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 2
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    /// `x₁ … xₙ`.
    pub fn interior(&self) -> &[Elem] {
        &self.coords[1..self.coords.len() - 1]
    }

    /// Interior coordinates as labels, e.g. `(1, 1/2)`.
    pub fn display(&self, l: &FiniteLattice) -> String {
        let mut out = String::from("(");
        for (i, &c) in self.interior().iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{}", l.label(c));
        }
        out.push(')');
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HornSpec {
    pub n: usize,
    pub k: usize,
}

impl HornSpec {
    pub fn new(n: usize, k: usize) -> Result<Self, ShapeError> {
        if k > n {
            return Err(ShapeError::IndexOutOfRange { n, k });
        }
        Ok(HornSpec { n, k })
    }

    pub fn is_inner(&self) -> bool {
        0 < self.k && self.k < self.n
    }
}

/// All points of `Δⁿ(L)` in lexicographic order.
pub fn enumerate_simplex(l: &FiniteLattice, n: usize, bound: usize) -> Result<Vec<SimplexPoint>, ShapeError> {
    let mut out = Vec::new();
    let mut coords = alloc::vec![l.top(); n + 2];
    coords[n + 1] = l.bottom();
    extend(l, n, 1, &mut coords, &mut out, bound)?;
    Ok(out)
}

fn extend(
    l: &FiniteLattice,
    n: usize,
    i: usize,
    coords: &mut Vec<Elem>,
    out: &mut Vec<SimplexPoint>,
    bound: usize,
) -> Result<(), ShapeError> {
    if i == n + 1 {
        // x_n ≥ 0 always holds
        if out.len() == bound {
            return Err(ShapeError::BoundExceeded { bound });
        }
        out.push(SimplexPoint { coords: coords.clone() });
        return Ok(());
    }
    for c in 0..l.size() {
        if l.le(c, coords[i - 1]) {
            coords[i] = c;
            extend(l, n, i + 1, coords, out, bound)?;
        }
    }
    Ok(())
}

/// The faces `j ≠ k` that witness membership in the horn.
pub fn horn_witnesses(spec: HornSpec, p: &SimplexPoint) -> Result<Vec<usize>, ShapeError> {
    if p.n() != spec.n {
        return Err(ShapeError::DimensionMismatch {
            expected: spec.n,
            found: p.n(),
        });
    }
    Ok((0..=spec.n)
        .filter(|&j| j != spec.k && p.coords[j] == p.coords[j + 1])
        .collect())
}

pub fn horn_member(spec: HornSpec, p: &SimplexPoint) -> Result<bool, ShapeError> {
    if p.n() != spec.n {
        return Err(ShapeError::DimensionMismatch {
            expected: spec.n,
            found: p.n(),
        });
    }
    Ok((0..=spec.n).any(|j| j != spec.k && p.coords[j] == p.coords[j + 1]))
}

pub fn enumerate_horn(l: &FiniteLattice, spec: HornSpec, bound: usize) -> Result<Vec<SimplexPoint>, ShapeError> {
    let mut points = enumerate_simplex(l, spec.n, bound)?;
    points.retain(|p| horn_member(spec, p).expect("dimension matches"));
    Ok(points)
}

/// Position of `p` in a lexicographically sorted point list.
pub fn index_of(points: &[SimplexPoint], p: &SimplexPoint) -> Option<usize> {
    points.binary_search(p).ok()
}

/// `λⁿₖ : Λⁿₖ ↪ Δⁿ` between the two enumerations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornInclusion {
    pub spec: HornSpec,
    pub simplex: Vec<SimplexPoint>,
    pub horn: Vec<SimplexPoint>,
    pub map: FinMap,
}

pub fn horn_inclusion(l: &FiniteLattice, spec: HornSpec, bound: usize) -> Result<HornInclusion, ShapeError> {
    let simplex = enumerate_simplex(l, spec.n, bound)?;
    let mut horn = Vec::new();
    let mut table = Vec::new();
    for (i, p) in simplex.iter().enumerate() {
        if horn_member(spec, p)? {
            horn.push(p.clone());
            table.push(i);
        }
    }
    let map = FinMap::new(simplex.len(), table).expect("indices come from the simplex");
    Ok(HornInclusion {
        spec,
        simplex,
        horn,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(n: usize) -> FiniteLattice {
        FiniteLattice::chain(n).unwrap()
    }

    /// Every interior tuple, filtered by the invariants.
    fn brute_simplex(l: &FiniteLattice, n: usize) -> Vec<Vec<Elem>> {
        let mut out = Vec::new();
        let total = l.size().pow(n as u32);
        for mut code in 0..total {
            let mut interior = vec![0; n];
            for slot in interior.iter_mut().rev() {
                *slot = code % l.size();
                code /= l.size();
            }
            let mut coords = vec![l.top()];
            coords.extend(interior);
            coords.push(l.bottom());
            if coords.windows(2).all(|w| l.le(w[1], w[0])) {
                out.push(coords);
            }
        }
        out
    }

    #[test]
    fn simplex_sizes() {
        assert_eq!(enumerate_simplex(&c(2), 2, DEFAULT_SHAPE_BOUND).unwrap().len(), 3);
        assert_eq!(enumerate_simplex(&c(3), 2, DEFAULT_SHAPE_BOUND).unwrap().len(), 6);
        for l in [c(1), c(2), c(4), FiniteLattice::boolean(2).unwrap()] {
            let points = enumerate_simplex(&l, 0, DEFAULT_SHAPE_BOUND).unwrap();
            assert_eq!(points.len(), 1);
            assert_eq!(points[0].coords(), &[l.top(), l.bottom()]);
        }
    }

    #[test]
    fn enumeration_matches_full_filter() {
        let lattices = [c(2), c(3), c(4), FiniteLattice::boolean(2).unwrap()];
        for l in &lattices {
            for n in 0..=4 {
                let points = enumerate_simplex(l, n, DEFAULT_SHAPE_BOUND).unwrap();
                let coords: Vec<_> = points.iter().map(|p| p.coords().to_vec()).collect();
                assert_eq!(coords, brute_simplex(l, n));
                for p in &points {
                    SimplexPoint::new(l, p.coords().to_vec()).unwrap();
                }
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            enumerate_simplex(&c(3), 4, 10),
            Err(ShapeError::BoundExceeded { bound: 10 })
        );
        assert!(enumerate_simplex(&c(3), 4, 15).is_ok());
    }

    #[test]
    fn invalid_points_are_rejected() {
        let l = c(3);
        assert!(SimplexPoint::from_interior(&l, &[1, 2]).is_err());
        assert!(SimplexPoint::new(&l, vec![1, 0]).is_err());
        assert!(SimplexPoint::from_interior(&l, &[3]).is_err());
        assert!(SimplexPoint::from_interior(&l, &[2, 1]).is_ok());
    }

    #[test]
    fn horn_membership_examples() {
        let l = c(3);
        let spec = HornSpec::new(2, 1).unwrap();
        let half = SimplexPoint::from_interior(&l, &[1, 1]).unwrap();
        assert_eq!(half.display(&l), "(1/2, 1/2)");
        assert!(!horn_member(spec, &half).unwrap());
        let p = SimplexPoint::from_interior(&l, &[2, 1]).unwrap();
        assert!(horn_member(spec, &p).unwrap());
        assert_eq!(horn_witnesses(spec, &p).unwrap(), vec![0]);
        let zero = SimplexPoint::from_interior(&l, &[0, 0]).unwrap();
        assert!(horn_member(spec, &zero).unwrap());
        assert!(horn_member(HornSpec::new(3, 1).unwrap(), &half).is_err());
        assert!(HornSpec::new(2, 5).is_err());
    }

    #[test]
    fn inner_horn_of_three_chain() {
        let inc = horn_inclusion(&c(3), HornSpec::new(2, 1).unwrap(), DEFAULT_SHAPE_BOUND).unwrap();
        assert_eq!((inc.horn.len(), inc.simplex.len()), (5, 6));
        assert!(inc.map.is_injective());
        let missing: Vec<_> = (0..6).filter(|i| !inc.map.table().contains(i)).collect();
        assert_eq!(missing.len(), 1);
        assert_eq!(inc.simplex[missing[0]].interior(), &[1, 1]);
    }

    #[test]
    fn inner_horns_of_two_chain_are_everything() {
        for n in 2..=6 {
            for k in 1..n {
                let inc = horn_inclusion(&c(2), HornSpec::new(n, k).unwrap(), DEFAULT_SHAPE_BOUND).unwrap();
                assert!(inc.map.is_bijection(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn outer_horn_in_dimension_one() {
        let inc = horn_inclusion(&c(3), HornSpec::new(1, 1).unwrap(), DEFAULT_SHAPE_BOUND).unwrap();
        assert_eq!((inc.simplex.len(), inc.horn.len()), (3, 1));
        assert_eq!(inc.horn[0].interior(), &[2]);
    }

    /// Points with a degenerate face `j ≠ k` are always members; inclusions
    /// are injective and agree with the filter.
    #[test]
    fn faces_are_in_the_horn() {
        let lattices = [c(3), FiniteLattice::boolean(2).unwrap()];
        for l in &lattices {
            for n in 1..=3 {
                for k in 0..=n {
                    let spec = HornSpec::new(n, k).unwrap();
                    let inc = horn_inclusion(l, spec, DEFAULT_SHAPE_BOUND).unwrap();
                    assert!(inc.map.is_injective());
                    for p in &inc.simplex {
                        let flat = (0..=n).filter(|&j| j != k).any(|j| p.coords()[j] == p.coords()[j + 1]);
                        assert_eq!(index_of(&inc.horn, p).is_some(), flat);
                    }
                }
            }
        }
    }
}
