use std::collections::HashMap;

use super::certificate::{Certificate, FullReason, HomRoute, Target, Verdict, Witness};
use super::{rel_con, ClassContext, HomPlan, Mode, PoolMember};
use crate::algebra::json::AlgebraFile;
use crate::algebra::{is_hom, quotient, sg, FiniteAlgebra, Subset};
use crate::congruence::{restrict, CongruenceSet, Partition};
use crate::error::{Error, Result};

fn check_pair(a: &Subset, b: &FiniteAlgebra) -> Result<()> {
    if a.universe() != b.size() {
        return Err(Error::SizeMismatch(a.universe(), b.size()));
    }
    b.check_closed(a)
}

/// The least `b` outside `a` with `Sg(a ∪ {b}) = B`.
pub fn almost_total(a: &Subset, b: &FiniteAlgebra) -> Result<Option<usize>> {
    check_pair(a, b)?;
    for e in (0..b.size()).filter(|&e| !a.contains(e)) {
        if sg(b, &a.with(e))?.elements.is_full() {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FullOutcome {
    /// Full, with the least almost-total witness.
    Full { witness: usize },
    NotFull(FullReason),
}

impl FullOutcome {
    pub fn is_full(&self) -> bool {
        matches!(self, FullOutcome::Full { .. })
    }
}

pub(crate) fn full_outcome(a: &Subset, b: &FiniteAlgebra, rc: &CongruenceSet) -> Result<FullOutcome> {
    check_pair(a, b)?;
    if a.is_empty() {
        return Ok(FullOutcome::NotFull(FullReason::Empty));
    }
    if a.is_full() {
        return Ok(FullOutcome::NotFull(FullReason::NotProper));
    }
    let Some(witness) = almost_total(a, b)? else {
        return Ok(FullOutcome::NotFull(FullReason::NotAlmostTotal));
    };
    for theta in rc.nonidentity() {
        for e in 0..b.size() {
            if !a.iter().any(|x| theta.related(x, e)) {
                return Ok(FullOutcome::NotFull(FullReason::Uncovered {
                    theta: theta.clone(),
                    element: e,
                }));
            }
        }
    }
    Ok(FullOutcome::Full { witness })
}

fn record(b: &FiniteAlgebra) -> AlgebraFile {
    AlgebraFile::from_algebra(b)
}

fn pair_witness(a: &Subset, b: &FiniteAlgebra) -> Witness {
    Witness::Pair {
        b: record(b),
        a: a.elems().to_vec(),
    }
}

fn not_full_cert(a: &Subset, b: &FiniteAlgebra, k: &ClassContext, reason: FullReason) -> Certificate {
    Certificate::new(
        Verdict::NotFull,
        k,
        Witness::NotFull {
            b: record(b),
            a: a.elems().to_vec(),
            reason,
        },
    )
}

/// Full: proper, almost total, and every nonidentity relative congruence of
/// `b` relates each element to some element of `a`.
pub fn is_full(a: &Subset, b: &FiniteAlgebra, k: &ClassContext) -> Result<Certificate> {
    k.check_signature(b)?;
    let rc = rel_con(b, k)?;
    Ok(match full_outcome(a, b, &rc)? {
        FullOutcome::Full { .. } => Certificate::new(Verdict::Full, k, pair_witness(a, b)),
        FullOutcome::NotFull(reason) => not_full_cert(a, b, k, reason),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EpicOutcome {
    Epic,
    NotEpic { target: Target, g: Vec<usize>, h: Vec<usize> },
}

/// First pair of maps in `maps` (sorted) with equal restriction to `a`.
fn collision(maps: &[Vec<usize>], a: &Subset) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for (i, m) in maps.iter().enumerate() {
        let r: Vec<usize> = a.iter().map(|x| m[x]).collect();
        if let Some(&j) = seen.get(&r) {
            return Some((maps[j].clone(), m.clone()));
        }
        seen.insert(r, i);
    }
    None
}

pub(crate) fn epic_outcome(
    a: &Subset,
    b: &FiniteAlgebra,
    plan: &HomPlan,
    targets: &[PoolMember],
    budget: u64,
) -> Result<EpicOutcome> {
    for t in targets {
        let maps = plan.homs(b, &t.algebra, budget)?;
        if let Some((g, h)) = collision(&maps, a) {
            return Ok(EpicOutcome::NotEpic {
                target: t.target.clone(),
                g,
                h,
            });
        }
    }
    Ok(EpicOutcome::Epic)
}

/// Epic: any two homomorphisms from `b` into a target of `k` that agree on
/// `a` are equal. The targets are the members of `M` in quasivariety mode
/// and `HS(M)` in variety mode.
pub fn is_epic(a: &Subset, b: &FiniteAlgebra, k: &ClassContext) -> Result<Certificate> {
    k.check_signature(b)?;
    check_pair(a, b)?;
    let plan = HomPlan::new(b)?;
    let outcome = epic_outcome(a, b, &plan, &k.epic_targets()?, k.limits().node_budget)?;
    Ok(epic_cert(a, b, k, outcome, Verdict::Epic))
}

fn epic_cert(a: &Subset, b: &FiniteAlgebra, k: &ClassContext, outcome: EpicOutcome, positive: Verdict) -> Certificate {
    match outcome {
        EpicOutcome::Epic => Certificate::new(positive, k, pair_witness(a, b)),
        EpicOutcome::NotEpic { target, g, h } => Certificate::new(
            Verdict::NotEpic,
            k,
            Witness::HomPair {
                b: record(b),
                a: a.elems().to_vec(),
                route: HomRoute::Homs,
                target,
                g,
                h,
            },
        ),
    }
}

/// Full and epic. A negative answer carries the failing part.
pub fn is_fully_epic(a: &Subset, b: &FiniteAlgebra, k: &ClassContext) -> Result<Certificate> {
    k.check_signature(b)?;
    let rc = rel_con(b, k)?;
    fully_epic_with(a, b, k, &rc)
}

pub(crate) fn fully_epic_with(
    a: &Subset,
    b: &FiniteAlgebra,
    k: &ClassContext,
    rc: &CongruenceSet,
) -> Result<Certificate> {
    if let FullOutcome::NotFull(reason) = full_outcome(a, b, rc)? {
        return Ok(not_full_cert(a, b, k, reason));
    }
    let plan = HomPlan::new(b)?;
    let outcome = epic_outcome(a, b, &plan, &k.epic_targets()?, k.limits().node_budget)?;
    Ok(epic_cert(a, b, k, outcome, Verdict::FullyEpic))
}

/// The quotient pair produced by [`fullify`].
#[derive(Clone, Debug)]
pub struct Fullified {
    /// The fixed almost-total witness.
    pub witness: usize,
    pub theta: Partition,
    pub quotient: FiniteAlgebra,
    pub projection: Vec<usize>,
    /// `A/θ` as a subset of `B/θ`.
    pub sub: Subset,
}

/// A maximal `θ` among relative congruences of `b` that keep the least
/// almost-total witness away from `a`; ties go to the least partition.
pub fn fullify(a: &Subset, b: &FiniteAlgebra, k: &ClassContext) -> Result<Fullified> {
    k.check_signature(b)?;
    let rc = rel_con(b, k)?;
    fullify_with(a, b, &rc)
}

pub(crate) fn fullify_with(a: &Subset, b: &FiniteAlgebra, rc: &CongruenceSet) -> Result<Fullified> {
    check_pair(a, b)?;
    if a.is_empty() || a.is_full() {
        return Err(Error::Precondition("fullify needs a proper nonempty subalgebra".into()));
    }
    let Some(witness) = almost_total(a, b)? else {
        return Err(Error::Precondition("A is not almost total in B".into()));
    };
    let x: Vec<&Partition> = rc
        .iter()
        .filter(|t| !a.iter().any(|e| t.related(e, witness)))
        .collect();
    let theta = x
        .iter()
        .find(|t| !x.iter().any(|u| u != *t && t.leq(u)))
        .map(|t| (*t).clone())
        .ok_or_else(|| Error::Precondition("no relative congruence separates the witness from A".into()))?;
    let (q, projection) = quotient(b, &theta)?;
    let sub = Subset::new(q.size(), a.iter().map(|e| projection[e]))?;
    Ok(Fullified {
        witness,
        theta,
        quotient: q,
        projection,
        sub,
    })
}

/// The endomorphism sending each element to the unique element of `a` it
/// is `phi`-related to.
pub fn retraction_witness(a: &Subset, b: &FiniteAlgebra, k: &ClassContext, phi: &Partition) -> Result<Vec<usize>> {
    k.check_signature(b)?;
    check_pair(a, b)?;
    if phi.len() != b.size() {
        return Err(Error::SizeMismatch(phi.len(), b.size()));
    }
    if !rel_con(b, k)?.contains(phi) {
        return Err(Error::Precondition(format!("{phi} is not a relative congruence")));
    }
    retraction_of(a, b, phi)
}

fn retraction_of(a: &Subset, b: &FiniteAlgebra, phi: &Partition) -> Result<Vec<usize>> {
    let mut g = Vec::with_capacity(b.size());
    for e in 0..b.size() {
        let related: Vec<usize> = a.iter().filter(|&x| phi.related(x, e)).collect();
        match related.as_slice() {
            [] => return Err(Error::NotCovered { element: e }),
            [x] => g.push(*x),
            _ => {
                return Err(Error::NotUnique {
                    element: e,
                    count: related.len(),
                })
            }
        }
    }
    if !is_hom(&g, b, b) {
        return Err(Error::Precondition("the induced map is not a homomorphism".into()));
    }
    if g.iter().enumerate().all(|(i, &v)| i == v) {
        return Err(Error::Precondition("the induced map is the identity".into()));
    }
    Ok(g)
}

/// Condition (i) in its general form: two distinct relative congruences of
/// `b` with the same restriction to `a`, least pair first.
pub fn condition_i_pair(a: &Subset, b: &FiniteAlgebra, k: &ClassContext) -> Result<Option<(Partition, Partition)>> {
    k.check_signature(b)?;
    check_pair(a, b)?;
    let rc = rel_con(b, k)?;
    Ok(pair_with_equal_restriction(a, &rc))
}

fn pair_with_equal_restriction(a: &Subset, rc: &CongruenceSet) -> Option<(Partition, Partition)> {
    let mut seen: HashMap<Partition, &Partition> = HashMap::new();
    for t in rc.iter() {
        let r = restrict(t, a);
        if let Some(prev) = seen.get(&r) {
            return Some(((*prev).clone(), t.clone()));
        }
        seen.insert(r, t);
    }
    None
}

/// Decides epicity of a full pair through the two conditions of the
/// characterization: (i) distinct relative congruences of `b` with equal
/// restrictions to `a` (tried first with one of them the identity), or (ii)
/// two distinct embeddings of `b` into a relatively subdirectly irreducible
/// member of the candidate pool that agree on `a`.
pub fn decide_epic_thm(a: &Subset, b: &FiniteAlgebra, k: &ClassContext) -> Result<Certificate> {
    k.check_signature(b)?;
    let rc = rel_con(b, k)?;
    decide_with(a, b, k, &rc)
}

pub(crate) fn decide_with(a: &Subset, b: &FiniteAlgebra, k: &ClassContext, rc: &CongruenceSet) -> Result<Certificate> {
    if !full_outcome(a, b, rc)?.is_full() {
        return Err(Error::Precondition("the pair is not full".into()));
    }
    if k.mode() == Mode::Quasivariety && !rc.contains_identity() {
        return Err(Error::NotMember(format!("{} is not in {}", b.name(), k.describe())));
    }
    let id_a = Partition::identity(a.len());
    if let Some(phi) = rc.nonidentity().find(|p| restrict(p, a) == id_a) {
        let retraction = retraction_of(a, b, phi)?;
        return Ok(Certificate::new(
            Verdict::NotEpic,
            k,
            Witness::Retraction {
                b: record(b),
                a: a.elems().to_vec(),
                phi: phi.clone(),
                retraction,
            },
        ));
    }
    if let Some((theta, phi)) = pair_with_equal_restriction(a, rc) {
        return Ok(Certificate::new(
            Verdict::NotEpic,
            k,
            Witness::CongruencePair {
                b: record(b),
                a: a.elems().to_vec(),
                theta,
                phi,
            },
        ));
    }
    let plan = HomPlan::new(b)?;
    for c in k.rsi_pool()? {
        let maps = plan.search(b, &c.algebra, k.limits().node_budget, true)?;
        if let Some((g, h)) = collision(&maps, a) {
            return Ok(Certificate::new(
                Verdict::NotEpic,
                k,
                Witness::HomPair {
                    b: record(b),
                    a: a.elems().to_vec(),
                    route: HomRoute::Embeddings,
                    target: c.target.clone(),
                    g,
                    h,
                },
            ));
        }
    }
    Ok(Certificate::new(Verdict::Epic, k, pair_witness(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::catalog;

    fn q(g: FiniteAlgebra) -> ClassContext {
        ClassContext::quasivariety(vec![g]).unwrap()
    }

    fn square() -> FiniteAlgebra {
        let l2 = catalog::chain_lattice(2);
        product(&[l2.clone(), l2]).unwrap()
    }

    #[test]
    fn almost_total_examples() {
        let sq = square();
        assert_eq!(almost_total(&Subset::new(4, [0, 2, 3]).unwrap(), &sq).unwrap(), Some(1));
        let s3 = catalog::chain_semilattice(3);
        assert_eq!(almost_total(&Subset::new(3, [0, 2]).unwrap(), &s3).unwrap(), Some(1));
        let f4 = catalog::flat_semilattice(4);
        assert_eq!(almost_total(&Subset::new(4, [0, 1]).unwrap(), &f4).unwrap(), None);
    }

    #[test]
    fn semilattice_remark() {
        let k = q(catalog::chain_semilattice(2));
        let s3 = catalog::chain_semilattice(3);
        let a = Subset::new(3, [0, 2]).unwrap();
        assert!(is_full(&a, &s3, &k).unwrap().is(Verdict::Full));
        let epic = is_epic(&a, &s3, &k).unwrap();
        match &epic.witness {
            Witness::HomPair { g, h, .. } => {
                assert_eq!(g, &vec![0, 0, 1]);
                assert_eq!(h, &vec![0, 1, 1]);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let thm = decide_epic_thm(&a, &s3, &k).unwrap();
        match &thm.witness {
            Witness::Retraction { phi, retraction, .. } => {
                assert_eq!(phi, &Partition::parse("0 1|2").unwrap());
                assert_eq!(retraction, &vec![0, 0, 2]);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let phi = Partition::parse("0|1 2").unwrap();
        assert_eq!(retraction_witness(&a, &s3, &k, &phi).unwrap(), vec![0, 2, 2]);
        assert!(!is_fully_epic(&a, &s3, &k).unwrap().is(Verdict::FullyEpic));
        let f = fullify(&a, &s3, &k).unwrap();
        assert!(f.theta.is_identity());
    }

    #[test]
    fn chain_in_square() {
        let k = q(catalog::chain_lattice(2));
        let sq = square();
        let a = Subset::new(4, [0, 2, 3]).unwrap();
        assert!(is_full(&a, &sq, &k).unwrap().is(Verdict::Full));
        assert!(is_epic(&a, &sq, &k).unwrap().is(Verdict::Epic));
        assert!(is_fully_epic(&a, &sq, &k).unwrap().is(Verdict::FullyEpic));
        assert!(decide_epic_thm(&a, &sq, &k).unwrap().is(Verdict::Epic));
        assert!(fullify(&a, &sq, &k).unwrap().theta.is_identity());
    }

    #[test]
    fn boolean_remark() {
        let k = q(catalog::boolean(1));
        let b4 = catalog::boolean(2);
        let a = Subset::new(4, [0, 3]).unwrap();
        assert!(is_full(&a, &b4, &k).unwrap().is(Verdict::Full));
        assert!(is_epic(&a, &b4, &k).unwrap().is(Verdict::NotEpic));
        let thm = decide_epic_thm(&a, &b4, &k).unwrap();
        assert!(matches!(thm.witness, Witness::Retraction { .. }));
    }

    #[test]
    fn retraction_preconditions() {
        let k = q(catalog::chain_semilattice(2));
        let s3 = catalog::chain_semilattice(3);
        let a = Subset::new(3, [0, 2]).unwrap();
        let err = retraction_witness(&a, &s3, &k, &Partition::total(3)).unwrap_err();
        assert!(matches!(err, Error::NotUnique { .. }));
        let k = q(catalog::boolean(1));
        let b4 = catalog::boolean(2);
        let a = Subset::new(4, [0, 3]).unwrap();
        let g = retraction_witness(&a, &b4, &k, &Partition::parse("0 1|2 3").unwrap()).unwrap();
        assert!(g.iter().all(|v| a.contains(*v)));
    }
}
