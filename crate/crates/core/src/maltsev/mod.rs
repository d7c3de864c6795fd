//! Free algebras of a finitely generated class and detection of Maltsev
//! condition terms by membership in generated subalgebras of free powers.
//!
//! A term exists for a schema iff a target tuple lies in the subalgebra
//! generated by the tuples of its identities. The generated subuniverse is
//! exactly the set of values realized by terms in those generators, so a
//! complete closure without the target rules out every term.

mod arith;
mod free;

pub use arith::arithmeticity_witness;
pub use free::{free, variable_names, FreeAlgebra};

use std::fmt;

use crate::algebra::{eval_term, for_each_tuple, generate, FiniteAlgebra, ProductView, Structure, Term};
use crate::classctx::ClassContext;
use crate::error::{Error, Result};

/// Identity schemas a term can be tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schema {
    /// `φ(y,x,..,x) ≈ φ(x,y,x,..,x) ≈ .. ≈ φ(x,..,x,y) ≈ x` for arity `n`.
    NearUnanimity(usize),
    Majority,
    /// `φ(x,y,x) ≈ φ(x,y,y) ≈ φ(y,y,x) ≈ x`.
    Pixley,
    /// `p(x,y,y) ≈ x ≈ p(y,y,x)`.
    Maltsev,
    /// `d(a,b,c) = c` if `a = b`, else `a`, on every generator.
    Discriminator,
    /// `x ≈ x`.
    Trivial,
}

impl Schema {
    pub fn from_name(name: &str, arity: usize) -> Result<Schema> {
        let s = match name {
            "nu" if arity >= 3 => Schema::NearUnanimity(arity),
            "nu" => return Err(Error::Precondition("near-unanimity terms need arity at least 3".into())),
            "majority" => Schema::Majority,
            "pixley" => Schema::Pixley,
            "maltsev" => Schema::Maltsev,
            "discriminator" => Schema::Discriminator,
            "trivial" => Schema::Trivial,
            _ => return Err(Error::Parse(format!("unknown identity schema `{name}`"))),
        };
        if s.arity() != arity {
            return Err(Error::Precondition(format!("schema `{name}` has arity {}", s.arity())));
        }
        Ok(s)
    }

    pub fn name(self) -> &'static str {
        match self {
            Schema::NearUnanimity(_) => "nu",
            Schema::Majority => "majority",
            Schema::Pixley => "pixley",
            Schema::Maltsev => "maltsev",
            Schema::Discriminator => "discriminator",
            Schema::Trivial => "trivial",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Schema::NearUnanimity(n) => n,
            Schema::Trivial => 1,
            _ => 3,
        }
    }

    /// The argument patterns over `x = 0`, `y = 1` that must all give `x`.
    fn two_variable_rows(self) -> Vec<Vec<usize>> {
        match self {
            Schema::NearUnanimity(n) => (0..n).map(|k| (0..n).map(|j| usize::from(j == k)).collect()).collect(),
            Schema::Majority => Schema::NearUnanimity(3).two_variable_rows(),
            Schema::Pixley => vec![vec![0, 1, 0], vec![0, 1, 1], vec![1, 1, 0]],
            Schema::Maltsev => vec![vec![0, 1, 1], vec![1, 1, 0]],
            Schema::Discriminator | Schema::Trivial => Vec::new(),
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schema::NearUnanimity(n) => write!(f, "nu({n})"),
            s => f.write_str(s.name()),
        }
    }
}

/// Checks the identities of `schema` for `t` on every generator of the
/// class under every assignment. Identities hold in `V(M)` once they hold
/// in `M`.
pub fn verify_identities(k: &ClassContext, t: &Term, schema: Schema) -> Result<bool> {
    t.check(k.signature())?;
    if schema == Schema::Trivial {
        return Ok(true);
    }
    if let Some(v) = t.max_var() {
        if v >= schema.arity() {
            return Err(Error::VariableOutOfRange {
                index: v,
                len: schema.arity(),
            });
        }
    }
    for c in k.generators() {
        if !holds_in(c, t, schema)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn holds_in(c: &FiniteAlgebra, t: &Term, schema: Schema) -> Result<bool> {
    let mut ok = true;
    let mut err = None;
    let mut check = |env: &[usize], expected: usize| match eval_term(c, t, env) {
        Ok(v) => ok &= v == expected,
        Err(e) => {
            err.get_or_insert(e);
        }
    };
    match schema {
        Schema::Trivial => {}
        Schema::Discriminator => for_each_tuple(c.size(), 3, |abc| {
            let expected = if abc[0] == abc[1] { abc[2] } else { abc[0] };
            check(abc, expected);
        }),
        s => {
            let rows = s.two_variable_rows();
            for_each_tuple(c.size(), 2, |xy| {
                for row in &rows {
                    let env: Vec<usize> = row.iter().map(|&v| xy[v]).collect();
                    check(&env, xy[0]);
                }
            });
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(ok),
    }
}

/// The witness of `target` in `Sg(gens)`, re-verified against `schema`.
fn membership<S: Structure>(
    k: &ClassContext,
    s: &S,
    gens: &[S::Elem],
    target: &S::Elem,
    schema: Schema,
    cap: usize,
) -> Result<Option<Term>> {
    let closure = generate(s, gens, cap, Some(target))?;
    let Some(t) = closure.term_of(target) else {
        return Ok(None);
    };
    if !verify_identities(k, &t, schema)? {
        return Err(Error::Precondition(format!("extracted term {t} fails the {schema} identities")));
    }
    Ok(Some(t))
}

pub fn nu_term(k: &ClassContext, n: usize, cap: usize) -> Result<Option<Term>> {
    if n < 3 {
        return Err(Error::Precondition("near-unanimity terms need arity at least 3".into()));
    }
    let f = free(k, 2, cap)?;
    let (x, y) = (f.generators[0], f.generators[1]);
    let view = ProductView::power(&f.base, n);
    let gens: Vec<Vec<usize>> = (0..n)
        .map(|k| (0..n).map(|j| if j == k { y } else { x }).collect())
        .collect();
    membership(k, &view, &gens, &vec![x; n], Schema::NearUnanimity(n), cap)
}

pub fn majority_term(k: &ClassContext, cap: usize) -> Result<Option<Term>> {
    nu_term(k, 3, cap)
}

pub fn pixley_term(k: &ClassContext, cap: usize) -> Result<Option<Term>> {
    let f = free(k, 2, cap)?;
    let (x, y) = (f.generators[0], f.generators[1]);
    let view = ProductView::power(&f.base, 3);
    let gens = vec![vec![x, x, y], vec![y, y, y], vec![x, y, x]];
    membership(k, &view, &gens, &vec![x, x, x], Schema::Pixley, cap)
}

pub fn maltsev_term(k: &ClassContext, cap: usize) -> Result<Option<Term>> {
    let f = free(k, 2, cap)?;
    let (x, y) = (f.generators[0], f.generators[1]);
    let view = ProductView::power(&f.base, 2);
    let gens = vec![vec![x, y], vec![y, y], vec![y, x]];
    membership(k, &view, &gens, &vec![x, x], Schema::Maltsev, cap)
}

pub fn discriminator_term(k: &ClassContext, cap: usize) -> Result<Option<Term>> {
    let coords = free::coordinates(k, 3, cap)?;
    let view = coords.view(k)?;
    let gens: Vec<Vec<usize>> = (0..3).map(|v| coords.projection(v)).collect();
    let target: Vec<usize> = coords
        .assignments
        .iter()
        .map(|a| if a[0] == a[1] { a[2] } else { a[0] })
        .collect();
    membership(k, &view, &gens, &target, Schema::Discriminator, cap)
}

/// Dispatches on `schema`; `Trivial` is witnessed by a variable.
pub fn find_term(k: &ClassContext, schema: Schema, cap: usize) -> Result<Option<Term>> {
    match schema {
        Schema::NearUnanimity(n) => nu_term(k, n, cap),
        Schema::Majority => majority_term(k, cap),
        Schema::Pixley => pixley_term(k, cap),
        Schema::Maltsev => maltsev_term(k, cap),
        Schema::Discriminator => discriminator_term(k, cap),
        Schema::Trivial => Ok(Some(Term::Var(0))),
    }
}
