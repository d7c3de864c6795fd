use super::{free, verify_identities, Schema};
use crate::algebra::json::AlgebraFile;
use crate::algebra::{generate, ProductView, Subset};
use crate::classctx::{
    fullify_with, fully_epic_with, rel_con, Bounds, Certificate, ClassContext, Embedded, Verdict, Witness,
};
use crate::error::{Error, Result};

/// With `T` free on `x, y`, builds `A = Sg(xxy, yyy, xyx)` and
/// `B = Sg(A ∪ {xxx})` inside `T³`. If `xxx ∈ A` its witness is a Pixley
/// term. Otherwise `A ≤ B` is fullified and the quotient pair tested: a
/// fully epic pair is a failure of weak ES. Anything else is reported as
/// inconclusive.
pub fn arithmeticity_witness(k: &ClassContext, cap: usize) -> Result<Certificate> {
    let bounds = Bounds {
        cap: Some(cap),
        ..Bounds::default()
    };
    let t = free(k, 2, cap)?;
    let (x, y) = (t.generators[0], t.generators[1]);
    let cube = ProductView::power(&t.base, 3);
    let gens_a = vec![vec![x, x, y], vec![y, y, y], vec![x, y, x]];
    let top = vec![x, x, x];
    let a = generate(&cube, &gens_a, cap, None)?;
    if let Some(term) = a.term_of(&top) {
        if !verify_identities(k, &term, Schema::Pixley)? {
            return Err(Error::Precondition(format!("extracted term {term} fails the Pixley identities")));
        }
        let w = Witness::Term {
            schema: Schema::Pixley.name().into(),
            arity: 3,
            term,
        };
        return Ok(Certificate::new(Verdict::Arithmetical, k, w).with_bounds(bounds));
    }
    let mut gens_b = gens_a;
    gens_b.push(top);
    let b = generate(&cube, &gens_b, cap, None)?;

    let flat = |e: &Vec<usize>| -> Vec<usize> { e.iter().flat_map(|&i| t.tuples[i].iter().copied()).collect() };
    let mut elements: Vec<Vec<usize>> = b.elems().iter().map(flat).collect();
    elements.sort();
    let ambient = Embedded {
        factors: t.factors.repeat(3),
        elements,
    };
    let b_alg = ambient.build(k, "B")?;
    let a_sub = Subset::new(
        b_alg.size(),
        a.elems()
            .iter()
            .map(|e| ambient.elements.binary_search(&flat(e)).expect("A lies in B")),
    )?;
    let rc = rel_con(&b_alg, k)?;
    let f = fullify_with(&a_sub, &b_alg, &rc)?;
    let rq = rel_con(&f.quotient, k)?;
    let cert = fully_epic_with(&f.sub, &f.quotient, k, &rq)?;
    if cert.is(Verdict::FullyEpic) {
        let w = Witness::Failure {
            ambient,
            a: a_sub.elems().to_vec(),
            b_witness: f.witness,
            theta: f.theta,
            quotient: AlgebraFile::from_algebra(&f.quotient),
            quotient_a: f.sub.elems().to_vec(),
        };
        return Ok(Certificate::new(Verdict::WeakEsFailure, k, w).with_bounds(bounds));
    }
    let message = format!(
        "T has {} elements; A has {} and B has {} elements in T^3; fullify gives theta {} with a quotient of size {}; the quotient pair is {:?}, not fully epic",
        t.size(),
        a_sub.len(),
        b_alg.size(),
        f.theta,
        f.quotient.size(),
        cert.verdict
    );
    Ok(Certificate::new(Verdict::Inconclusive, k, Witness::Diagnostic { message }).with_bounds(bounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_CAP;
    use crate::catalog;
    use crate::classctx::verify;

    fn q(a: crate::algebra::FiniteAlgebra) -> ClassContext {
        ClassContext::quasivariety(vec![a]).unwrap()
    }

    #[test]
    fn boolean_is_arithmetical() {
        let cert = arithmeticity_witness(&q(catalog::boolean(1)), DEFAULT_CAP).unwrap();
        assert!(cert.is(Verdict::Arithmetical));
        verify(&cert).unwrap();
    }

    #[test]
    fn lattice_gives_a_failure() {
        let cert = arithmeticity_witness(&q(catalog::chain_lattice(2)), DEFAULT_CAP).unwrap();
        assert!(cert.is(Verdict::WeakEsFailure), "{:?}", cert.witness);
        let Witness::Failure { theta, .. } = &cert.witness else {
            unreachable!()
        };
        assert!(!theta.is_identity());
        verify(&cert).unwrap();
    }

    #[test]
    fn semilattice_is_not_arithmetical() {
        let cert = arithmeticity_witness(&q(catalog::chain_semilattice(2)), DEFAULT_CAP).unwrap();
        assert!(!cert.is(Verdict::Arithmetical));
        verify(&cert).unwrap();
    }
}
