use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{Bounds, Certificate, Embedded, Verdict, Witness};
use super::epic::{almost_total, fullify_with, fully_epic_with};
use super::{rel_con, subuniverses, ClassContext};
use crate::algebra::json::AlgebraFile;
use crate::algebra::{decode_digits, generate, ProductView};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_b_size: usize,
    pub max_generators: usize,
    pub max_product_width: usize,
}

impl SearchBounds {
    pub fn new(max_b_size: usize, max_generators: usize, max_product_width: usize) -> Self {
        SearchBounds {
            max_b_size,
            max_generators,
            max_product_width,
        }
    }
}

/// Candidate algebras `B` in search order: by product width, then by the
/// multiset of factors, then by generating tuples (fewest first, then
/// lexicographic). Each subuniverse of a given product is listed once.
pub fn candidates(k: &ClassContext, bounds: SearchBounds) -> Result<Vec<Embedded>> {
    let m = k.generators().len();
    let mut out = Vec::new();
    for width in 1..=bounds.max_product_width {
        for factors in (0..m).combinations_with_replacement(width) {
            let algebras: Vec<_> = factors.iter().map(|&i| &k.generators()[i]).collect();
            let radices: Vec<usize> = algebras.iter().map(|a| a.size()).collect();
            let size = radices
                .iter()
                .try_fold(1usize, |acc, &r| acc.checked_mul(r))
                .filter(|&s| s <= k.limits().cap)
                .ok_or(Error::SizeOverflow {
                    size: radices.iter().map(|&r| r as u128).product(),
                    cap: k.limits().cap as u128,
                })?;
            let view = ProductView::new(k.signature(), algebras)?;
            let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
            for g in 0..=bounds.max_generators {
                for combo in (0..size).combinations(g) {
                    let gens: Vec<Vec<usize>> = combo.iter().map(|&c| decode_digits(c, &radices)).collect();
                    let closure = match generate(&view, &gens, bounds.max_b_size, None) {
                        Ok(c) => c,
                        Err(Error::SizeOverflow { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    if closure.is_empty() {
                        continue;
                    }
                    let elements = closure.sorted();
                    if seen.insert(elements.clone()) {
                        out.push(Embedded {
                            factors: factors.clone(),
                            elements,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn examine(k: &ClassContext, cand: &Embedded) -> Result<Option<Witness>> {
    let b = cand.build(k, "B")?;
    if b.is_trivial() {
        return Ok(None);
    }
    let rc = rel_con(&b, k)?;
    let mut subs: Vec<_> = subuniverses(&b, k.limits().cap)?
        .into_iter()
        .filter(|s| !s.is_full())
        .collect();
    subs.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.elems().cmp(y.elems())));
    for a in subs {
        if almost_total(&a, &b)?.is_none() {
            continue;
        }
        let f = fullify_with(&a, &b, &rc)?;
        let rq = rel_con(&f.quotient, k)?;
        let cert = fully_epic_with(&f.sub, &f.quotient, k, &rq)?;
        if cert.is(Verdict::FullyEpic) {
            return Ok(Some(Witness::Failure {
                ambient: cand.clone(),
                a: a.elems().to_vec(),
                b_witness: f.witness,
                theta: f.theta,
                quotient: AlgebraFile::from_algebra(&f.quotient),
                quotient_a: f.sub.elems().to_vec(),
            }));
        }
    }
    Ok(None)
}

/// Bounded search for a finitely generated `B` in the class with a proper
/// almost-total `A` whose fullified quotient pair is fully epic. Returns
/// `WeakESFailure` for the first such pair in search order, `Exhausted`
/// otherwise. `Exhausted` says nothing beyond the bounds.
pub fn weak_es_search(k: &ClassContext, bounds: SearchBounds) -> Result<Certificate> {
    if bounds.max_b_size == 0 || bounds.max_generators == 0 || bounds.max_product_width == 0 {
        return Err(Error::Precondition("search bounds must be positive".into()));
    }
    let cands = candidates(k, bounds)?;
    let found = cands
        .par_iter()
        .map(|c| examine(k, c))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let b = Bounds::from(bounds);
    match found {
        Some(Ok(Some(w))) => Ok(Certificate::new(Verdict::WeakEsFailure, k, w).with_bounds(b)),
        Some(Err(e)) => Err(e),
        _ => Ok(Certificate::new(Verdict::Exhausted, k, Witness::Search {}).with_bounds(b)),
    }
}
