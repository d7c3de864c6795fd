use crate::algebra::{for_each_tuple, generate, FiniteAlgebra, ProductView, Term};
use crate::classctx::ClassContext;
use crate::error::{Error, Result};

/// The free algebra of the class on `variables.len()` generators, as the
/// subalgebra of `∏_{C ∈ M} C^(C^X)` generated by the projections.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub base: FiniteAlgebra,
    pub variables: Vec<String>,
    /// The element of `base` for each variable.
    pub generators: Vec<usize>,
    /// A term for every element, over the variables in order.
    pub witnesses: Vec<Term>,
    /// The tuple over the coordinates for every element.
    pub tuples: Vec<Vec<usize>>,
    /// The generator of the class each coordinate ranges over.
    pub factors: Vec<usize>,
}

impl FreeAlgebra {
    pub fn size(&self) -> usize {
        self.base.size()
    }

    /// The element named by a term, if the term is over the variables.
    pub fn element_of(&self, t: &Term) -> Result<usize> {
        let env: Vec<usize> = self.generators.clone();
        crate::algebra::eval_term(&self.base, t, &env)
    }
}

/// Coordinates of the product: one per generator `C` of the class and
/// assignment of `vars` variables into `C`, assignments in lexicographic
/// order with the first variable varying slowest.
pub(crate) struct Coordinates {
    pub factors: Vec<usize>,
    pub assignments: Vec<Vec<usize>>,
}

pub(crate) fn coordinates(k: &ClassContext, vars: usize, cap: usize) -> Result<Coordinates> {
    let mut total: u128 = 0;
    for c in k.generators() {
        total += (c.size() as u128).checked_pow(vars as u32).unwrap_or(u128::MAX);
    }
    if total > cap as u128 {
        return Err(Error::SizeOverflow {
            size: total,
            cap: cap as u128,
        });
    }
    let mut factors = Vec::new();
    let mut assignments = Vec::new();
    for (i, c) in k.generators().iter().enumerate() {
        for_each_tuple(c.size(), vars, |t| {
            factors.push(i);
            assignments.push(t.to_vec());
        });
    }
    Ok(Coordinates { factors, assignments })
}

impl Coordinates {
    pub fn view<'a>(&self, k: &'a ClassContext) -> Result<ProductView<'a>> {
        let algebras = self.factors.iter().map(|&i| &k.generators()[i]).collect();
        ProductView::new(k.signature(), algebras)
    }

    pub fn projection(&self, v: usize) -> Vec<usize> {
        self.assignments.iter().map(|a| a[v]).collect()
    }
}

pub fn variable_names(vars: usize) -> Vec<String> {
    (0..vars).map(|i| format!("x{i}")).collect()
}

/// Builds the free algebra on `vars` generators; fails with `SizeOverflow`
/// beyond `cap` elements or coordinates.
pub fn free(k: &ClassContext, vars: usize, cap: usize) -> Result<FreeAlgebra> {
    if vars == 0 {
        return Err(Error::Precondition("a free algebra needs at least one variable".into()));
    }
    let coords = coordinates(k, vars, cap)?;
    let view = coords.view(k)?;
    let gens: Vec<Vec<usize>> = (0..vars).map(|v| coords.projection(v)).collect();
    let closure = generate(&view, &gens, cap, None)?;
    let name = format!("T_{}({})", k.describe(), vars);
    let (base, tuples) = view.materialize(&name, closure.elems())?;
    let find = |t: &Vec<usize>| tuples.binary_search(t).expect("closure element");
    let witnesses = tuples
        .iter()
        .map(|t| closure.term_of(t).expect("closure element"))
        .collect();
    Ok(FreeAlgebra {
        generators: gens.iter().map(find).collect(),
        base,
        variables: variable_names(vars),
        witnesses,
        tuples,
        factors: coords.factors,
    })
}
