//! Finite algebras and the constructions every other module builds on:
//! terms, generated subuniverses, products, quotients and subalgebras.
//!
//! Universes are always `{0, .., n-1}`. An operation of arity `k` is stored
//! as a flat table of length `n^k`, row-major with the leftmost argument
//! varying slowest, so `f(a_0, .., a_{k-1})` lives at index
//! `((a_0 * n + a_1) * n + ..) * n + a_{k-1}`.

mod construct;
mod generate;
pub mod json;
mod subset;
mod term;

pub use construct::{induced_subalgebra, is_hom, product, product_with_cap, quotient};
pub(crate) use construct::decode as decode_digits;
pub use generate::{generate, sg, Closure, Derivation, GeneratedSubuniverse, ProductView};
pub use subset::Subset;
pub use term::{eval_term, Term};

use crate::error::{Error, Result};

/// Default cap on the size of any constructed universe.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Hard limit on the number of entries of a single operation table.
pub const MAX_TABLE_ENTRIES: u128 = 1 << 26;

/// Ordered list of operation symbols with their arities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<(String, usize)>,
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let symbols: Vec<(String, usize)> =
            symbols.into_iter().map(|(s, a)| (s.into(), a)).collect();
        for (i, (name, _)) in symbols.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidAlgebra(format!("operations[{i}]: empty symbol name")));
            }
            if symbols[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::InvalidAlgebra(format!(
                    "operations[{i}]: duplicate symbol `{name}`"
                )));
            }
        }
        Ok(Signature { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn name(&self, op: usize) -> &str {
        &self.symbols[op].0
    }

    pub fn arity(&self, op: usize) -> usize {
        self.symbols[op].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|(s, _)| s == name)
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|&(_, a)| a).max().unwrap_or(0)
    }
}

/// `n^k` as a checked `u128`.
pub(crate) fn checked_pow(n: usize, k: usize) -> u128 {
    (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Calls `f` on every `k`-tuple over `{0..n-1}` in row-major order.
pub fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut tuple = vec![0usize; k];
    if k == 0 {
        f(&tuple);
        return;
    }
    if n == 0 {
        return;
    }
    loop {
        f(&tuple);
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < n {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// A finite algebra on `{0..size-1}` with one table per signature symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    sig: Signature,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    /// Builds an algebra after validating table lengths and entries.
    pub fn new(
        name: impl Into<String>,
        size: usize,
        sig: Signature,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlgebra("size must be positive".into()));
        }
        if tables.len() != sig.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} tables given for {} symbols",
                tables.len(),
                sig.len()
            )));
        }
        for (op, table) in tables.iter().enumerate() {
            let expected = checked_pow(size, sig.arity(op));
            if table.len() as u128 != expected {
                return Err(Error::InvalidAlgebra(format!(
                    "operations[{op}] (`{}`): table has length {}, expected {expected}",
                    sig.name(op),
                    table.len()
                )));
            }
            if let Some(pos) = table.iter().position(|&v| v >= size) {
                return Err(Error::InvalidAlgebra(format!(
                    "operations[{op}] (`{}`): table[{pos}] = {} is outside 0..{size}",
                    sig.name(op),
                    table[pos]
                )));
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            sig,
            tables,
        })
    }

    /// Tabulates `f(op, args)` for every symbol and argument tuple.
    pub fn from_fn(
        name: impl Into<String>,
        size: usize,
        sig: Signature,
        mut f: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(sig.len());
        for op in 0..sig.len() {
            let arity = sig.arity(op);
            let entries = checked_pow(size, arity);
            if entries > MAX_TABLE_ENTRIES {
                return Err(Error::SizeOverflow {
                    size: entries,
                    cap: MAX_TABLE_ENTRIES,
                });
            }
            let mut table = Vec::with_capacity(entries as usize);
            for_each_tuple(size, arity, |args| table.push(f(op, args)));
            tables.push(table);
        }
        FiniteAlgebra::new(name, size, sig, tables)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let mut idx = 0usize;
        for &a in args {
            idx = idx * self.size + a;
        }
        self.tables[op][idx]
    }

    /// Same signature and same tables; names are ignored.
    pub fn same_structure(&self, other: &FiniteAlgebra) -> bool {
        self.size == other.size && self.sig == other.sig && self.tables == other.tables
    }

    pub fn universe(&self) -> Subset {
        Subset::full(self.size)
    }

    /// Checks that `sub` is closed under every operation, reporting the
    /// first violating application.
    pub fn check_closed(&self, sub: &Subset) -> Result<()> {
        let elems = sub.elems();
        for op in 0..self.sig.len() {
            let arity = self.sig.arity(op);
            let mut violation = None;
            let mut args = vec![0; arity];
            for_each_tuple(elems.len(), arity, |idx| {
                if violation.is_some() {
                    return;
                }
                for (slot, &i) in args.iter_mut().zip(idx) {
                    *slot = elems[i];
                }
                let r = self.apply(op, &args);
                if !sub.contains(r) {
                    violation = Some((args.clone(), r));
                }
            });
            if let Some((args, result)) = violation {
                return Err(Error::NotClosed {
                    symbol: self.sig.name(op).to_string(),
                    args,
                    result,
                });
            }
        }
        Ok(())
    }

    pub fn is_closed(&self, sub: &Subset) -> bool {
        self.check_closed(sub).is_ok()
    }
}

/// Anything with a signature whose operations can be applied pointwise.
///
/// Implemented by [`FiniteAlgebra`] and by [`ProductView`], which computes
/// products coordinatewise without tabulating them.
pub trait Structure {
    type Elem: Clone + Eq + std::hash::Hash + Ord;

    fn signature(&self) -> &Signature;

    fn apply_op(&self, op: usize, args: &[Self::Elem]) -> Self::Elem;
}

impl Structure for FiniteAlgebra {
    type Elem = usize;

    fn signature(&self) -> &Signature {
        &self.sig
    }

    fn apply_op(&self, op: usize, args: &[usize]) -> usize {
        self.apply(op, args)
    }
}
