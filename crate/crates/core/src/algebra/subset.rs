use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `{0..universe-1}` kept sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset {
    universe: usize,
    elems: Vec<usize>,
}

impl Subset {
    pub fn new(universe: usize, elems: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elems: Vec<usize> = elems.into_iter().collect();
        if let Some(&bad) = elems.iter().find(|&&e| e >= universe) {
            return Err(Error::Precondition(format!(
                "element {bad} is outside a universe of size {universe}"
            )));
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(Subset { universe, elems })
    }

    pub fn full(universe: usize) -> Self {
        Subset {
            universe,
            elems: (0..universe).collect(),
        }
    }

    pub fn empty(universe: usize) -> Self {
        Subset {
            universe,
            elems: Vec::new(),
        }
    }

    /// Subset from a membership mask.
    pub fn from_mask(mask: &[bool]) -> Self {
        Subset {
            universe: mask.len(),
            elems: (0..mask.len()).filter(|&i| mask[i]).collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.elems.len() == self.universe
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    /// Position of `e` in the sorted carrier, i.e. its index in the
    /// re-indexed subalgebra.
    pub fn position(&self, e: usize) -> Option<usize> {
        self.elems.binary_search(&e).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elems.iter().copied()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.elems.iter().all(|&e| other.contains(e))
    }

    pub fn with(&self, e: usize) -> Subset {
        let mut elems = self.elems.clone();
        if let Err(pos) = elems.binary_search(&e) {
            elems.insert(pos, e);
        }
        Subset {
            universe: self.universe,
            elems,
        }
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for &e in &self.elems {
            mask[e] = true;
        }
        mask
    }

    pub fn complement(&self) -> Subset {
        let mask = self.mask();
        Subset {
            universe: self.universe,
            elems: (0..self.universe).filter(|&i| !mask[i]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let s = Subset::new(5, [3, 1, 3, 0]).unwrap();
        assert_eq!(s.elems(), &[0, 1, 3]);
        assert_eq!(s.position(3), Some(2));
        assert!(Subset::new(2, [2]).is_err());
        assert_eq!(s.with(2).elems(), &[0, 1, 2, 3]);
        assert_eq!(s.complement().elems(), &[2, 4]);
    }
}
