use std::collections::HashMap;
use std::hash::Hash;

use super::{checked_pow, FiniteAlgebra, Signature, Structure, Subset, Term, MAX_TABLE_ENTRIES};
use crate::error::{Error, Result};

/// How an element entered a generated subuniverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// The `i`-th generator, witnessed by the variable `x_i`.
    Generator(usize),
    /// An operation applied to earlier elements (indices in discovery order).
    Apply(usize, Vec<usize>),
}

/// Result of a breadth-first closure: elements in discovery order together
/// with the derivation that first produced each of them.
#[derive(Clone, Debug)]
pub struct Closure<E> {
    sig: Signature,
    elems: Vec<E>,
    index: HashMap<E, usize>,
    derivations: Vec<Derivation>,
    complete: bool,
}

impl<E: Clone + Eq + Hash + Ord> Closure<E> {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements in discovery order.
    pub fn elems(&self) -> &[E] {
        &self.elems
    }

    pub fn position(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    /// False when the search stopped early at a target element.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn derivation(&self, i: usize) -> &Derivation {
        &self.derivations[i]
    }

    /// Witness term of the element at discovery index `i`.
    pub fn term_at(&self, i: usize) -> Term {
        match &self.derivations[i] {
            Derivation::Generator(v) => Term::Var(*v),
            Derivation::Apply(op, args) => Term::App(
                self.sig.name(*op).to_string(),
                args.iter().map(|&j| self.term_at(j)).collect(),
            ),
        }
    }

    pub fn term_of(&self, e: &E) -> Option<Term> {
        self.position(e).map(|i| self.term_at(i))
    }

    /// Elements in increasing order.
    pub fn sorted(&self) -> Vec<E> {
        let mut v = self.elems.clone();
        v.sort();
        v
    }
}

/// Breadth-first closure of `gens` under the operations of `s`.
///
/// Round 0 holds the generators (deduplicated, first occurrence wins). Each
/// later round applies every symbol, in signature order, to every argument
/// tuple over the elements known at the start of the round, taken in
/// increasing element order, that uses at least one element found in the
/// previous round; constants are applied in the first round. The first term
/// found for an element is kept, so witnesses have minimal depth.
///
/// With `target` set the search stops as soon as the target is found.
pub fn generate<S: Structure>(
    s: &S,
    gens: &[S::Elem],
    cap: usize,
    target: Option<&S::Elem>,
) -> Result<Closure<S::Elem>> {
    let sig = s.signature().clone();
    let mut closure = Closure {
        sig: sig.clone(),
        elems: Vec::new(),
        index: HashMap::new(),
        derivations: Vec::new(),
        complete: true,
    };
    for (v, g) in gens.iter().enumerate() {
        if !closure.index.contains_key(g) {
            closure.index.insert(g.clone(), closure.elems.len());
            closure.elems.push(g.clone());
            closure.derivations.push(Derivation::Generator(v));
        }
    }
    if closure.elems.len() > cap {
        return Err(Error::SizeOverflow {
            size: closure.elems.len() as u128,
            cap: cap as u128,
        });
    }
    if let Some(t) = target {
        if closure.contains(t) {
            closure.complete = false;
            return Ok(closure);
        }
    }

    let mut frontier_start = 0usize;
    let mut first_round = true;
    let max_arity = sig.max_arity();
    let mut idx = vec![0usize; max_arity];
    let mut args: Vec<S::Elem> = Vec::with_capacity(max_arity);
    loop {
        let known = closure.elems.len();
        let mut order: Vec<usize> = (0..known).collect();
        order.sort_by(|&a, &b| closure.elems[a].cmp(&closure.elems[b]));

        for op in 0..sig.len() {
            let arity = sig.arity(op);
            if arity == 0 {
                if first_round {
                    let r = s.apply_op(op, &[]);
                    if insert(&mut closure, r, Derivation::Apply(op, Vec::new()), cap, target)? {
                        return Ok(closure);
                    }
                }
                continue;
            }
            if known == 0 {
                continue;
            }
            idx[..arity].iter_mut().for_each(|i| *i = 0);
            'tuples: loop {
                let fresh = idx[..arity].iter().any(|&p| order[p] >= frontier_start);
                if fresh {
                    args.clear();
                    args.extend(idx[..arity].iter().map(|&p| closure.elems[order[p]].clone()));
                    let r = s.apply_op(op, &args);
                    if !closure.index.contains_key(&r) {
                        let from = idx[..arity].iter().map(|&p| order[p]).collect();
                        if insert(&mut closure, r, Derivation::Apply(op, from), cap, target)? {
                            return Ok(closure);
                        }
                    }
                }
                let mut pos = arity;
                loop {
                    if pos == 0 {
                        break 'tuples;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < known {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
        first_round = false;
        frontier_start = known;
        if closure.elems.len() == known {
            break;
        }
    }
    Ok(closure)
}

/// Inserts a new element; returns true when it is the target.
fn insert<E: Clone + Eq + Hash + Ord>(
    closure: &mut Closure<E>,
    e: E,
    d: Derivation,
    cap: usize,
    target: Option<&E>,
) -> Result<bool> {
    if closure.index.contains_key(&e) {
        return Ok(false);
    }
    if closure.elems.len() + 1 > cap {
        return Err(Error::SizeOverflow {
            size: (closure.elems.len() + 1) as u128,
            cap: cap as u128,
        });
    }
    let hit = target == Some(&e);
    closure.index.insert(e.clone(), closure.elems.len());
    closure.elems.push(e);
    closure.derivations.push(d);
    if hit {
        closure.complete = false;
    }
    Ok(hit)
}

/// `Sg^A(gens)` with a witness term for every element, written over the
/// variables `x_0, x_1, ..` bound to the generators in increasing order.
#[derive(Clone, Debug)]
pub struct GeneratedSubuniverse {
    pub elements: Subset,
    pub generators: Vec<usize>,
    closure: Closure<usize>,
}

impl GeneratedSubuniverse {
    pub fn witness(&self, e: usize) -> Option<Term> {
        self.closure.term_of(&e)
    }

    pub fn closure(&self) -> &Closure<usize> {
        &self.closure
    }
}

/// The subuniverse of `a` generated by `gens`.
pub fn sg(a: &FiniteAlgebra, gens: &Subset) -> Result<GeneratedSubuniverse> {
    if gens.universe() != a.size() {
        return Err(Error::SizeMismatch(gens.universe(), a.size()));
    }
    let closure = generate(a, gens.elems(), a.size(), None)?;
    let elements = Subset::new(a.size(), closure.elems().iter().copied())?;
    Ok(GeneratedSubuniverse {
        elements,
        generators: gens.elems().to_vec(),
        closure,
    })
}

/// A direct product computed coordinatewise, never tabulated.
#[derive(Clone, Debug)]
pub struct ProductView<'a> {
    factors: Vec<&'a FiniteAlgebra>,
    sig: Signature,
}

impl<'a> ProductView<'a> {
    pub fn new(sig: &Signature, factors: Vec<&'a FiniteAlgebra>) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| f.signature() != sig) {
            return Err(Error::SignatureMismatch(format!(
                "factor `{}` has a different signature",
                f.name()
            )));
        }
        Ok(ProductView {
            factors,
            sig: sig.clone(),
        })
    }

    pub fn power(a: &'a FiniteAlgebra, k: usize) -> Self {
        ProductView {
            factors: vec![a; k],
            sig: a.signature().clone(),
        }
    }

    pub fn width(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[&'a FiniteAlgebra] {
        &self.factors
    }

    /// Tabulates the subalgebra on `elems` (which must be closed). Elements
    /// are re-indexed in increasing tuple order; the sorted tuples are
    /// returned alongside.
    pub fn materialize(
        &self,
        name: &str,
        elems: &[Vec<usize>],
    ) -> Result<(FiniteAlgebra, Vec<Vec<usize>>)> {
        let mut sorted = elems.to_vec();
        sorted.sort();
        sorted.dedup();
        for op in 0..self.sig.len() {
            let entries = checked_pow(sorted.len(), self.sig.arity(op));
            if entries > MAX_TABLE_ENTRIES {
                return Err(Error::SizeOverflow {
                    size: entries,
                    cap: MAX_TABLE_ENTRIES,
                });
            }
        }
        let index: HashMap<&Vec<usize>, usize> =
            sorted.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut missing = None;
        let alg = FiniteAlgebra::from_fn(name, sorted.len(), self.sig.clone(), |op, args| {
            let tuple_args: Vec<Vec<usize>> = args.iter().map(|&i| sorted[i].clone()).collect();
            let r = self.apply_op(op, &tuple_args);
            match index.get(&r) {
                Some(&i) => i,
                None => {
                    missing.get_or_insert((op, args.to_vec()));
                    0
                }
            }
        })?;
        if let Some((op, args)) = missing {
            return Err(Error::NotClosed {
                symbol: self.sig.name(op).to_string(),
                args,
                result: usize::MAX,
            });
        }
        Ok((alg, sorted))
    }
}

impl Structure for ProductView<'_> {
    type Elem = Vec<usize>;

    fn signature(&self) -> &Signature {
        &self.sig
    }

    fn apply_op(&self, op: usize, args: &[Vec<usize>]) -> Vec<usize> {
        let mut buf = Vec::with_capacity(args.len());
        (0..self.factors.len())
            .map(|c| {
                buf.clear();
                buf.extend(args.iter().map(|a| a[c]));
                self.factors[c].apply(op, &buf)
            })
            .collect()
    }
}
