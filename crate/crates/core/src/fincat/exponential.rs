//! Function sets `X^A`, enumerated lexicographically by table.

use alloc::vec::Vec;

use super::{FinMap, FincatError, Guard};

/// All maps `dom → cod`. Function `t` has index `Σ t[i]·cod^(dom-1-i)`, so
/// index order is lexicographic order on tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exponential {
    dom: usize,
    cod: usize,
    len: usize,
}

impl Exponential {
    pub fn new(dom: usize, cod: usize, guard: Guard) -> Result<Self, FincatError> {
        let len = guard.check("exponential", checked_pow(cod, dom))?;
        Ok(Exponential { dom, cod, len })
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn function(&self, index: usize) -> FinMap {
        FinMap::from_table_unchecked(self.cod, self.table(index))
    }

    pub fn table(&self, mut index: usize) -> Vec<usize> {
        assert!(index < self.len, "exponential index out of range");
        let mut table = alloc::vec![0; self.dom];
        for slot in table.iter_mut().rev() {
            *slot = index % self.cod;
            index /= self.cod;
        }
        table
    }

    pub fn index_of(&self, f: &FinMap) -> usize {
        assert!(f.dom() == self.dom && f.cod() == self.cod, "map does not belong to this exponential");
        self.index_of_table(f.table())
    }

    pub fn index_of_table(&self, table: &[usize]) -> usize {
        table.iter().fold(0, |acc, &v| acc * self.cod + v)
    }

    pub fn iter(&self) -> impl Iterator<Item = FinMap> + '_ {
        (0..self.len).map(|i| self.function(i))
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc == 0 {
            return Some(0);
        }
    }
    Some(acc)
}

/// Precomposition `X^h : X^A → X^{A'}` for `h : A' → A`.
pub fn precompose_map(h: &FinMap, x: usize, guard: Guard) -> Result<FinMap, FincatError> {
    let from = Exponential::new(h.cod(), x, guard)?;
    let to = Exponential::new(h.dom(), x, guard)?;
    Ok(FinMap::from_table_unchecked(
        to.len(),
        (0..from.len())
            .map(|i| {
                let t = from.table(i);
                to.index_of_table(&h.table().iter().map(|&a| t[a]).collect::<Vec<_>>())
            })
            .collect(),
    ))
}

/// Postcomposition `g^A : X^A → Y^A` for `g : X → Y`.
pub fn postcompose_map(g: &FinMap, a: usize, guard: Guard) -> Result<FinMap, FincatError> {
    let from = Exponential::new(a, g.dom(), guard)?;
    let to = Exponential::new(a, g.cod(), guard)?;
    Ok(FinMap::from_table_unchecked(
        to.len(),
        (0..from.len())
            .map(|i| {
                let t = from.table(i);
                to.index_of_table(&t.iter().map(|&x| g.apply(x)).collect::<Vec<_>>())
            })
            .collect(),
    ))
}
