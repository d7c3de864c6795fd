//! Verdict records and their independent checker.
//!
//! A certificate is `{"verdict", "context", "witness", "bounds"}`. The
//! context embeds every generator table, so a certificate can be checked
//! without access to the files or catalog keys that produced it. The
//! checker re-derives everything from the core and congruence primitives:
//! homomorphisms are enumerated naively (every assignment of a generating
//! set, extended along witness terms, kept if `is_hom` accepts it), never
//! through the pruned search used to produce verdicts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ClassContext, Mode, SearchBounds};
use crate::algebra::json::AlgebraFile;
use crate::algebra::{
    eval_term, for_each_tuple, induced_subalgebra, is_hom, quotient, sg, FiniteAlgebra, ProductView,
    Subset, Term,
};
use crate::congruence::{con_all, restrict, Partition};
use crate::error::{Error, Result};

pub type AlgebraRecord = AlgebraFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Epic,
    NotEpic,
    Full,
    NotFull,
    FullyEpic,
    #[serde(rename = "WeakESFailure")]
    WeakEsFailure,
    Exhausted,
    Arithmetical,
    Inconclusive,
    TermFound,
    NoTerm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextRecord {
    pub generators: Vec<String>,
    pub mode: Mode,
    pub algebras: Vec<AlgebraRecord>,
}

impl ContextRecord {
    pub fn of(k: &ClassContext) -> Self {
        ContextRecord {
            generators: k.generators().iter().map(|g| g.name().to_string()).collect(),
            mode: k.mode(),
            algebras: k.generators().iter().map(AlgebraFile::from_algebra).collect(),
        }
    }

    pub fn to_context(&self) -> Result<ClassContext> {
        let gens = self
            .algebras
            .iter()
            .map(AlgebraFile::to_algebra)
            .collect::<Result<Vec<_>>>()?;
        ClassContext::new(gens, self.mode)
    }
}

/// Points at `H(S(M_i))`: the generator, optionally a subuniverse of it and
/// optionally a congruence of that subalgebra (variety mode only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub generator: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subuniverse: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub congruence: Option<Partition>,
}

impl Target {
    pub fn generator(i: usize) -> Self {
        Target {
            generator: i,
            subuniverse: None,
            congruence: None,
        }
    }
}

/// A subalgebra of `∏ M[factors[i]]`, listed by its tuples. Its elements
/// are indexed in increasing tuple order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedded {
    pub factors: Vec<usize>,
    pub elements: Vec<Vec<usize>>,
}

impl Embedded {
    /// Rebuilds the algebra, checking that the tuples are closed.
    pub fn build(&self, k: &ClassContext, name: &str) -> Result<FiniteAlgebra> {
        let factors = self
            .factors
            .iter()
            .map(|&i| {
                k.generators()
                    .get(i)
                    .ok_or_else(|| Error::Precondition(format!("no generator {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        for t in &self.elements {
            if t.len() != factors.len() || t.iter().zip(&factors).any(|(&x, f)| x >= f.size()) {
                return Err(Error::Precondition(format!("tuple {t:?} is not in the product")));
            }
        }
        let view = ProductView::new(k.signature(), factors)?;
        let (alg, sorted) = view.materialize(name, &self.elements)?;
        if sorted != self.elements {
            return Err(Error::Precondition("embedded tuples must be sorted and distinct".into()));
        }
        Ok(alg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomRoute {
    /// Two homomorphisms into a target algebra.
    Homs,
    /// Two embeddings into a relatively subdirectly irreducible algebra.
    Embeddings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FullReason {
    Empty,
    NotProper,
    NotAlmostTotal,
    Uncovered { theta: Partition, element: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The pair `A <= B` itself; positive verdicts are re-derived.
    Pair { b: AlgebraRecord, a: Vec<usize> },
    HomPair {
        b: AlgebraRecord,
        a: Vec<usize>,
        route: HomRoute,
        target: Target,
        g: Vec<usize>,
        h: Vec<usize>,
    },
    /// Condition (i) with one congruence the identity: `phi` restricts to
    /// the identity on `A` and `retraction` collapses `B` onto `A`.
    Retraction {
        b: AlgebraRecord,
        a: Vec<usize>,
        phi: Partition,
        retraction: Vec<usize>,
    },
    /// Condition (i): distinct relative congruences with equal restrictions.
    CongruencePair {
        b: AlgebraRecord,
        a: Vec<usize>,
        theta: Partition,
        phi: Partition,
    },
    NotFull {
        b: AlgebraRecord,
        a: Vec<usize>,
        reason: FullReason,
    },
    /// `A <= B` almost total via `b_witness`; `A/θ <= B/θ` is fully epic.
    Failure {
        ambient: Embedded,
        a: Vec<usize>,
        b_witness: usize,
        theta: Partition,
        quotient: AlgebraRecord,
        quotient_a: Vec<usize>,
    },
    Term {
        schema: String,
        arity: usize,
        term: Term,
    },
    NoTerm { schema: String, arity: usize },
    Search {},
    Diagnostic { message: String },
}

/// Caps and bounds under which the verdict was computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_b_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_generators: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_product_width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

impl From<SearchBounds> for Bounds {
    fn from(s: SearchBounds) -> Self {
        Bounds {
            max_b_size: Some(s.max_b_size),
            max_generators: Some(s.max_generators),
            max_product_width: Some(s.max_product_width),
            cap: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub context: ContextRecord,
    pub witness: Witness,
    #[serde(default)]
    pub bounds: Bounds,
}

impl Certificate {
    pub fn new(verdict: Verdict, k: &ClassContext, witness: Witness) -> Self {
        Certificate {
            verdict,
            context: ContextRecord::of(k),
            witness,
            bounds: Bounds::default(),
        }
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn is(&self, v: Verdict) -> bool {
        self.verdict == v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn reject(msg: impl Into<String>) -> Error {
    Error::CertificateRejected(msg.into())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(reject(msg))
    }
}

/// The pieces of a pair witness, rebuilt and validated.
struct PairData {
    b: FiniteAlgebra,
    a: Subset,
}

fn pair_data(k: &ClassContext, b: &AlgebraRecord, a: &[usize]) -> Result<PairData> {
    let b = b.to_algebra()?;
    ensure(b.signature() == k.signature(), "B is not in the signature of the class")?;
    let set = Subset::new(b.size(), a.iter().copied())?;
    ensure(set.len() == a.len(), "A has repeated elements")?;
    Ok(PairData { b, a: set })
}

/// Every homomorphism `b -> c` by exhaustive assignment of a generating set.
fn naive_homs(b: &FiniteAlgebra, c: &FiniteAlgebra) -> Result<Vec<Vec<usize>>> {
    let mut gens = Vec::new();
    let mut span = sg(b, &Subset::empty(b.size()))?;
    for e in 0..b.size() {
        if !span.elements.contains(e) {
            gens.push(e);
            span = sg(b, &Subset::new(b.size(), gens.iter().copied())?)?;
        }
    }
    // `span.generators` lists generators in increasing order, which is the
    // variable order of its witnesses.
    let order = span.generators.clone();
    let terms: Vec<Term> = (0..b.size())
        .map(|e| span.witness(e).expect("generated"))
        .collect();
    let mut out = Vec::new();
    let mut failure = None;
    for_each_tuple(c.size(), order.len(), |images| {
        if failure.is_some() {
            return;
        }
        let map: Result<Vec<usize>> = terms.iter().map(|t| eval_term(c, t, images)).collect();
        match map {
            Ok(m) => {
                if is_hom(&m, b, c) {
                    out.push(m);
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn naive_targets(k: &ClassContext) -> Result<Vec<FiniteAlgebra>> {
    match k.mode() {
        Mode::Quasivariety => Ok(k.generators().to_vec()),
        Mode::Variety => {
            let mut out = Vec::new();
            for g in k.generators() {
                for s in naive_subuniverses(g)? {
                    let (sub, _) = induced_subalgebra(g, &s)?;
                    for theta in con_all(&sub)?.iter() {
                        out.push(quotient(&sub, theta)?.0);
                    }
                }
            }
            Ok(out)
        }
    }
}

fn naive_subuniverses(a: &FiniteAlgebra) -> Result<Vec<Subset>> {
    let n = a.size();
    let mut seen = BTreeSet::new();
    let mut stack = vec![sg(a, &Subset::empty(n))?.elements];
    while let Some(s) = stack.pop() {
        if !seen.insert(s.elems().to_vec()) {
            continue;
        }
        for e in (0..n).filter(|&e| !s.contains(e)) {
            stack.push(sg(a, &s.with(e))?.elements);
        }
    }
    Ok(seen
        .into_iter()
        .filter(|v| !v.is_empty())
        .map(|v| Subset::new(n, v).expect("in range"))
        .collect())
}

/// `Con_K(b)` recomputed from naive homomorphisms.
fn naive_rel_con(b: &FiniteAlgebra, k: &ClassContext) -> Result<Vec<Partition>> {
    match k.mode() {
        Mode::Variety => Ok(con_all(b)?.partitions().to_vec()),
        Mode::Quasivariety => {
            let mut set = BTreeSet::new();
            set.insert(Partition::total(b.size()));
            for c in k.generators() {
                for h in naive_homs(b, c)? {
                    set.insert(Partition::kernel(&h));
                }
            }
            loop {
                let items: Vec<Partition> = set.iter().cloned().collect();
                let before = set.len();
                for x in &items {
                    for y in &items {
                        set.insert(x.meet(y)?);
                    }
                }
                if set.len() == before {
                    break;
                }
            }
            Ok(set.into_iter().collect())
        }
    }
}

fn naive_full(p: &PairData, k: &ClassContext) -> Result<std::result::Result<(), FullReason>> {
    let PairData { b, a } = p;
    ensure(b.is_closed(a), "A is not closed in B")?;
    if a.is_empty() {
        return Ok(Err(FullReason::Empty));
    }
    if a.is_full() {
        return Ok(Err(FullReason::NotProper));
    }
    let total = (0..b.size())
        .filter(|&e| !a.contains(e))
        .any(|e| sg(b, &a.with(e)).map(|g| g.elements.is_full()).unwrap_or(false));
    if !total {
        return Ok(Err(FullReason::NotAlmostTotal));
    }
    for theta in naive_rel_con(b, k)? {
        if theta.is_identity() {
            continue;
        }
        for e in 0..b.size() {
            if !a.iter().any(|x| theta.related(x, e)) {
                return Ok(Err(FullReason::Uncovered { theta, element: e }));
            }
        }
    }
    Ok(Ok(()))
}

fn naive_epic(p: &PairData, k: &ClassContext) -> Result<bool> {
    for c in naive_targets(k)? {
        let hs = naive_homs(&p.b, &c)?;
        let mut seen = BTreeSet::new();
        for h in &hs {
            let r: Vec<usize> = p.a.iter().map(|x| h[x]).collect();
            if !seen.insert(r) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn naive_fully_epic(p: &PairData, k: &ClassContext) -> Result<bool> {
    Ok(naive_full(p, k)?.is_ok() && naive_epic(p, k)?)
}

fn check_in_rel_con(theta: &Partition, b: &FiniteAlgebra, k: &ClassContext, what: &str) -> Result<()> {
    ensure(theta.len() == b.size(), format!("{what} has the wrong ground size"))?;
    ensure(naive_rel_con(b, k)?.contains(theta), format!("{what} is not a relative congruence of B"))
}

fn check_target(t: &Target, k: &ClassContext) -> Result<FiniteAlgebra> {
    if k.mode() == Mode::Quasivariety {
        ensure(t.congruence.is_none(), "quotient targets are not in the quasivariety")?;
    }
    let g = k
        .generators()
        .get(t.generator)
        .ok_or_else(|| reject(format!("no generator {}", t.generator)))?;
    let sub = match &t.subuniverse {
        Some(s) => {
            let s = Subset::new(g.size(), s.iter().copied())?;
            ensure(!s.is_empty() && g.is_closed(&s), "target subuniverse is not closed")?;
            induced_subalgebra(g, &s)?.0
        }
        None => g.clone(),
    };
    match &t.congruence {
        Some(theta) => {
            ensure(con_all(&sub)?.contains(theta), "target congruence is not a congruence")?;
            Ok(quotient(&sub, theta)?.0)
        }
        None => Ok(sub),
    }
}

/// Re-checks a certificate from scratch. Returns `CertificateRejected` with
/// the first failed check.
pub fn verify(cert: &Certificate) -> Result<()> {
    let k = cert.context.to_context()?;
    ensure(
        cert.context.generators.len() == k.generators().len(),
        "generator names do not match the embedded algebras",
    )?;
    use Verdict as V;
    match (&cert.verdict, &cert.witness) {
        (V::Epic, Witness::Pair { b, a }) => {
            let p = pair_data(&k, b, a)?;
            ensure(p.b.is_closed(&p.a), "A is not closed in B")?;
            ensure(naive_epic(&p, &k)?, "two homomorphisms agree on A")
        }
        (V::Full, Witness::Pair { b, a }) => {
            let p = pair_data(&k, b, a)?;
            match naive_full(&p, &k)? {
                Ok(()) => Ok(()),
                Err(r) => Err(reject(format!("pair is not full: {r:?}"))),
            }
        }
        (V::FullyEpic, Witness::Pair { b, a }) => {
            let p = pair_data(&k, b, a)?;
            ensure(naive_fully_epic(&p, &k)?, "pair is not fully epic")
        }
        (V::NotFull, Witness::NotFull { b, a, reason }) => {
            let p = pair_data(&k, b, a)?;
            ensure(p.b.is_closed(&p.a), "A is not closed in B")?;
            match reason {
                FullReason::Empty => ensure(p.a.is_empty(), "A is not empty"),
                FullReason::NotProper => ensure(p.a.is_full(), "A is proper"),
                FullReason::NotAlmostTotal => ensure(
                    !p.a.is_empty()
                        && (0..p.b.size())
                            .filter(|&e| !p.a.contains(e))
                            .all(|e| !sg(&p.b, &p.a.with(e)).map(|g| g.elements.is_full()).unwrap_or(true)),
                    "A is almost total",
                ),
                FullReason::Uncovered { theta, element } => {
                    check_in_rel_con(theta, &p.b, &k, "theta")?;
                    ensure(!theta.is_identity(), "theta is the identity")?;
                    ensure(*element < p.b.size(), "element out of range")?;
                    ensure(
                        !p.a.iter().any(|x| theta.related(x, *element)),
                        "element is related to A",
                    )
                }
            }
        }
        (V::NotEpic, Witness::HomPair { b, a, route, target, g, h }) => {
            let p = pair_data(&k, b, a)?;
            ensure(p.b.is_closed(&p.a), "A is not closed in B")?;
            let c = check_target(target, &k)?;
            ensure(is_hom(g, &p.b, &c) && is_hom(h, &p.b, &c), "maps are not homomorphisms")?;
            ensure(g != h, "maps are equal")?;
            ensure(p.a.iter().all(|x| g[x] == h[x]), "maps differ on A")?;
            if *route == HomRoute::Embeddings {
                let inj = |f: &[usize]| f.iter().collect::<BTreeSet<_>>().len() == f.len();
                ensure(inj(g) && inj(h), "maps are not injective")?;
                ensure(naive_full(&p, &k)?.is_ok(), "condition (ii) needs a full pair")?;
            }
            Ok(())
        }
        (V::NotEpic, Witness::Retraction { b, a, phi, retraction }) => {
            let p = pair_data(&k, b, a)?;
            ensure(naive_full(&p, &k)?.is_ok(), "condition (i) needs a full pair")?;
            check_in_rel_con(phi, &p.b, &k, "phi")?;
            ensure(!phi.is_identity(), "phi is the identity")?;
            ensure(restrict(phi, &p.a).is_identity(), "phi does not restrict to the identity on A")?;
            ensure(is_hom(retraction, &p.b, &p.b), "retraction is not an endomorphism")?;
            ensure(p.a.iter().all(|x| retraction[x] == x), "retraction moves A")?;
            ensure(retraction.iter().enumerate().any(|(i, &v)| i != v), "retraction is the identity")?;
            ensure(retraction.iter().all(|&v| p.a.contains(v)), "retraction leaves A")?;
            ensure(
                naive_rel_con(&p.b, &k)?.contains(&Partition::identity(p.b.size())),
                "B is not in the class",
            )
        }
        (V::NotEpic, Witness::CongruencePair { b, a, theta, phi }) => {
            let p = pair_data(&k, b, a)?;
            ensure(naive_full(&p, &k)?.is_ok(), "condition (i) needs a full pair")?;
            check_in_rel_con(theta, &p.b, &k, "theta")?;
            check_in_rel_con(phi, &p.b, &k, "phi")?;
            ensure(theta != phi, "congruences are equal")?;
            ensure(restrict(theta, &p.a) == restrict(phi, &p.a), "restrictions differ")
        }
        (V::WeakEsFailure, Witness::Failure { ambient, a, b_witness, theta, quotient: q, quotient_a }) => {
            let b = ambient.build(&k, "B")?;
            let a = Subset::new(b.size(), a.iter().copied())?;
            ensure(!a.is_empty() && !a.is_full() && b.is_closed(&a), "A is not a proper subalgebra of B")?;
            ensure(*b_witness < b.size() && !a.contains(*b_witness), "witness is not outside A")?;
            ensure(sg(&b, &a.with(*b_witness))?.elements.is_full(), "A and the witness do not generate B")?;
            check_in_rel_con(theta, &b, &k, "theta")?;
            ensure(!a.iter().any(|x| theta.related(x, *b_witness)), "theta glues the witness into A")?;
            let (bq, proj) = quotient(&b, theta)?;
            ensure(bq.same_structure(&q.to_algebra()?), "quotient table does not match")?;
            let aq = Subset::new(bq.size(), a.iter().map(|x| proj[x]))?;
            ensure(aq.elems() == quotient_a.as_slice(), "quotient subalgebra does not match")?;
            let p = PairData { b: bq, a: aq };
            ensure(naive_fully_epic(&p, &k)?, "quotient pair is not fully epic")
        }
        (V::Exhausted, Witness::Search {}) => {
            let bounds = SearchBounds {
                max_b_size: cert.bounds.max_b_size.ok_or_else(|| reject("missing max_b_size"))?,
                max_generators: cert.bounds.max_generators.ok_or_else(|| reject("missing max_generators"))?,
                max_product_width: cert
                    .bounds
                    .max_product_width
                    .ok_or_else(|| reject("missing max_product_width"))?,
            };
            let again = super::weak_es_search(&k, bounds)?;
            ensure(again.is(V::Exhausted), "the bounded search finds a witness")
        }
        (V::TermFound | V::Arithmetical, Witness::Term { schema, arity, term }) => {
            let schema = crate::maltsev::Schema::from_name(schema, *arity)?;
            ensure(
                crate::maltsev::verify_identities(&k, term, schema)?,
                "term fails the identities",
            )
        }
        (V::NoTerm, Witness::NoTerm { schema, arity }) => {
            let schema = crate::maltsev::Schema::from_name(schema, *arity)?;
            let cap = cert.bounds.cap.unwrap_or(crate::algebra::DEFAULT_CAP);
            ensure(
                crate::maltsev::find_term(&k, schema, cap)?.is_none(),
                "membership search finds a term",
            )
        }
        (V::Inconclusive, Witness::Diagnostic { .. }) => {
            let cap = cert.bounds.cap.unwrap_or(crate::algebra::DEFAULT_CAP);
            let again = crate::maltsev::arithmeticity_witness(&k, cap)?;
            ensure(again.is(V::Inconclusive), "construction is no longer inconclusive")
        }
        (v, w) => Err(reject(format!("verdict {v:?} does not match witness {}", witness_kind(w)))),
    }
}

fn witness_kind(w: &Witness) -> &'static str {
    match w {
        Witness::Pair { .. } => "pair",
        Witness::HomPair { .. } => "hom_pair",
        Witness::Retraction { .. } => "retraction",
        Witness::CongruencePair { .. } => "congruence_pair",
        Witness::NotFull { .. } => "not_full",
        Witness::Failure { .. } => "failure",
        Witness::Term { .. } => "term",
        Witness::NoTerm { .. } => "no_term",
        Witness::Search {} => "search",
        Witness::Diagnostic { .. } => "diagnostic",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::catalog;

    #[test]
    fn naive_homs_match() {
        let l2 = catalog::chain_lattice(2);
        let sq = product(&[l2.clone(), l2.clone()]).unwrap();
        assert_eq!(naive_homs(&sq, &l2).unwrap(), super::super::homs(&sq, &l2).unwrap());
        let b4 = catalog::boolean(2);
        let b2 = catalog::boolean(1);
        assert_eq!(naive_homs(&b4, &b2).unwrap(), vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1]]);
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let k = ClassContext::quasivariety(vec![catalog::chain_semilattice(2)]).unwrap();
        let s3 = catalog::chain_semilattice(3);
        let a = Subset::new(3, [0, 2]).unwrap();
        let mut cert = super::super::is_epic(&a, &s3, &k).unwrap();
        assert!(cert.is(Verdict::NotEpic));
        verify(&cert).unwrap();
        if let Witness::HomPair { h, .. } = &mut cert.witness {
            h[1] = 0;
        }
        assert!(matches!(verify(&cert), Err(Error::CertificateRejected(_))));
    }
}
