use crate::algebra::{for_each_tuple, generate, Closure, Derivation, FiniteAlgebra, DEFAULT_CAP};
use crate::error::{Error, Result};

use super::DEFAULT_NODE_BUDGET;

/// A generating set of `B` chosen greedily in increasing element order,
/// with the closure of every prefix of it.
///
/// A homomorphism out of `B` is fixed by the images of the generators. The
/// search assigns them one at a time; after each assignment the map is
/// extended over the subalgebra generated so far along the witness
/// derivations and checked there, so inconsistent prefixes are cut early.
#[derive(Clone, Debug)]
pub struct HomPlan {
    gens: Vec<usize>,
    levels: Vec<Closure<usize>>,
    size: usize,
}

impl HomPlan {
    pub fn new(b: &FiniteAlgebra) -> Result<Self> {
        let mut gens = Vec::new();
        let mut current = generate(b, &gens, DEFAULT_CAP, None)?;
        for e in 0..b.size() {
            if !current.contains(&e) {
                gens.push(e);
                current = generate(b, &gens, DEFAULT_CAP, None)?;
            }
        }
        let levels = (0..=gens.len())
            .map(|i| generate(b, &gens[..i], DEFAULT_CAP, None))
            .collect::<Result<Vec<_>>>()?;
        Ok(HomPlan {
            gens,
            levels,
            size: b.size(),
        })
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// The closure of all generators, i.e. `B` with witness terms.
    pub fn closure(&self) -> &Closure<usize> {
        self.levels.last().expect("at least one level")
    }

    /// Extends images of the first `level` generators over their closure.
    /// Returns false if the partial map fails to be a homomorphism there.
    fn extend(&self, b: &FiniteAlgebra, c: &FiniteAlgebra, level: usize, images: &[usize], map: &mut [usize]) -> bool {
        let closure = &self.levels[level];
        let prev: &[usize] = if level == 0 { &[] } else { self.levels[level - 1].elems() };
        let mut old = vec![false; self.size];
        for &e in prev {
            old[e] = true;
        }
        // Elements of the previous level keep their verified images; a
        // different value along a new derivation rules the prefix out.
        for (i, &e) in closure.elems().iter().enumerate() {
            let v = match closure.derivation(i) {
                Derivation::Generator(g) => images[*g],
                Derivation::Apply(op, args) => {
                    let vals: Vec<usize> = args.iter().map(|&j| map[closure.elems()[j]]).collect();
                    c.apply(*op, &vals)
                }
            };
            if old[e] {
                if map[e] != v {
                    return false;
                }
            } else {
                map[e] = v;
            }
        }
        let elems = closure.elems();
        let sig = b.signature();
        let mut args = Vec::new();
        let mut vals = Vec::new();
        for op in 0..sig.len() {
            let arity = sig.arity(op);
            let mut ok = true;
            for_each_tuple(elems.len(), arity, |idx| {
                if !ok || (arity > 0 && idx.iter().all(|&i| old[elems[i]])) || (arity == 0 && level > 0) {
                    return;
                }
                args.clear();
                args.extend(idx.iter().map(|&i| elems[i]));
                vals.clear();
                vals.extend(args.iter().map(|&x| map[x]));
                ok = map[b.apply(op, &args)] == c.apply(op, &vals);
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// All homomorphisms `b -> c`, sorted. `b` must be the algebra the plan
    /// was built for.
    pub fn homs(&self, b: &FiniteAlgebra, c: &FiniteAlgebra, budget: u64) -> Result<Vec<Vec<usize>>> {
        self.search(b, c, budget, false)
    }

    pub fn search(&self, b: &FiniteAlgebra, c: &FiniteAlgebra, budget: u64, injective: bool) -> Result<Vec<Vec<usize>>> {
        if b.signature() != c.signature() {
            return Err(Error::SignatureMismatch(format!(
                "`{}` and `{}` have different signatures",
                b.name(),
                c.name()
            )));
        }
        if injective && b.size() > c.size() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut images = vec![0; self.gens.len()];
        let mut map = vec![usize::MAX; self.size];
        let mut nodes = 0u64;
        if self.extend(b, c, 0, &images, &mut map) {
            self.descend(b, c, 0, &mut images, &mut map, &mut nodes, budget, injective, &mut out)?;
        }
        out.sort();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        b: &FiniteAlgebra,
        c: &FiniteAlgebra,
        depth: usize,
        images: &mut Vec<usize>,
        map: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
        injective: bool,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if injective {
            let elems = self.levels[depth].elems();
            let mut used = vec![false; c.size()];
            for &e in elems {
                if std::mem::replace(&mut used[map[e]], true) {
                    return Ok(());
                }
            }
        }
        if depth == self.gens.len() {
            out.push(map.clone());
            return Ok(());
        }
        for v in 0..c.size() {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::SearchBudgetExceeded(budget));
            }
            images[depth] = v;
            if self.extend(b, c, depth + 1, images, map) {
                self.descend(b, c, depth + 1, images, map, nodes, budget, injective, out)?;
            }
        }
        Ok(())
    }
}

/// All homomorphisms `b -> c` in increasing order of their value arrays.
pub fn homs(b: &FiniteAlgebra, c: &FiniteAlgebra) -> Result<Vec<Vec<usize>>> {
    homs_with_budget(b, c, DEFAULT_NODE_BUDGET)
}

pub fn homs_with_budget(b: &FiniteAlgebra, c: &FiniteAlgebra, budget: u64) -> Result<Vec<Vec<usize>>> {
    HomPlan::new(b)?.homs(b, c, budget)
}

/// Injective homomorphisms `b -> c`, sorted.
pub fn embeddings(b: &FiniteAlgebra, c: &FiniteAlgebra, budget: u64) -> Result<Vec<Vec<usize>>> {
    HomPlan::new(b)?.search(b, c, budget, true)
}
