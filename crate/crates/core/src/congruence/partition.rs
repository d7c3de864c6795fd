use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use super::UnionFind;
use crate::error::{Error, Result};

/// An equivalence relation on `{0..n-1}` in canonical block form.
///
/// Block ids are assigned by first occurrence: `block_of[0] = 0` and each
/// element that opens a new block gets the next id. Two partitions are equal
/// iff their arrays are equal, and the derived order is the lexicographic
/// order on those arrays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    block_of: Vec<usize>,
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        let p = Partition::from_labels(&labels);
        if p.block_of != labels {
            return Err(serde::de::Error::custom("partition array is not in canonical form"));
        }
        Ok(p)
    }
}

impl Partition {
    pub fn identity(n: usize) -> Self {
        Partition {
            block_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Partition {
            block_of: vec![0; n],
        }
    }

    /// Canonicalizes an arbitrary labelling; `labels[i] == labels[j]` iff
    /// `i` and `j` share a block. Also serves as the kernel of a map.
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut ids = std::collections::HashMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l.clone()).or_insert(next)
            })
            .collect();
        Partition { block_of }
    }

    pub fn kernel(map: &[usize]) -> Self {
        Partition::from_labels(map)
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return Err(Error::Parse(format!("element {e} outside 0..{n}")));
                }
                if label[e] != usize::MAX {
                    return Err(Error::Parse(format!("element {e} appears twice")));
                }
                label[e] = b;
            }
        }
        if let Some(e) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Parse(format!("element {e} is missing")));
        }
        Ok(Partition::from_labels(&label))
    }

    /// Parses the text form, e.g. `"0 1|2"`; the ground set is `0..=max`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in text.split('|') {
            let block = part
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element `{t}` in partition")))
                })
                .collect::<Result<Vec<_>>>()?;
            if block.is_empty() {
                return Err(Error::Parse(format!("empty block in `{text}`")));
            }
            blocks.push(block);
        }
        let n = blocks.iter().flatten().max().map_or(0, |&m| m + 1);
        Partition::from_blocks(n, &blocks)
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    #[inline]
    pub fn block(&self, e: usize) -> usize {
        self.block_of[e]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |&m| m + 1)
    }

    /// Least element of each block, indexed by block id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.num_blocks()];
        for (e, &b) in self.block_of.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = e;
            }
        }
        reps
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (e, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(e);
        }
        blocks
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.len()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn leq(&self, other: &Partition) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let reps = self.representatives();
        self.block_of
            .iter()
            .enumerate()
            .all(|(e, &b)| other.related(e, reps[b]))
    }

    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(self.len(), other.len()));
        }
        let pairs: Vec<(usize, usize)> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Ok(Partition::from_labels(&pairs))
    }

    /// Transitive closure of the union of both relations.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch(self.len(), other.len()));
        }
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            let reps = p.representatives();
            for (e, &b) in p.block_of.iter().enumerate() {
                uf.union(e, reps[b]);
            }
        }
        Ok(uf.into_partition())
    }

    /// Relational product `self ∘ other` as a membership matrix:
    /// `(a, b)` is in it iff `a self c` and `c other b` for some `c`.
    pub fn compose(&self, other: &Partition) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut rel = vec![vec![false; n]; n];
        for (a, row) in rel.iter_mut().enumerate() {
            for c in 0..n {
                if self.related(a, c) {
                    for (b, cell) in row.iter_mut().enumerate() {
                        if other.related(c, b) {
                            *cell = true;
                        }
                    }
                }
            }
        }
        rel
    }

    /// Image of `self` under a surjection given by `map` onto `0..m`.
    pub fn image(&self, map: &[usize], m: usize) -> Partition {
        let mut uf = UnionFind::new(m);
        let reps = self.representatives();
        for (e, &b) in self.block_of.iter().enumerate() {
            uf.union(map[e], map[reps[b]]);
        }
        uf.into_partition()
    }

    /// Preimage of a partition of the codomain under `map`.
    pub fn preimage(&self, map: &[usize]) -> Partition {
        let labels: Vec<usize> = map.iter().map(|&v| self.block_of[v]).collect();
        Partition::from_labels(&labels)
    }

    /// All ordered pairs `(a, b)` with `a < b` in a common block.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for block in self.blocks() {
            for (i, &a) in block.iter().enumerate() {
                for &b in &block[i + 1..] {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", blocks.join("|"))
    }
}
