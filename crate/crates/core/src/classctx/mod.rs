//! Everything relative to a class `K = Q(M)` or `K = V(M)` for a finite set
//! `M` of finite algebras: homomorphisms, relative congruences, full and
//! epic subalgebras, subdirect decompositions and the weak ES search.

mod certificate;
mod epic;
mod homs;
mod search;
mod subdirect;

use std::sync::OnceLock;

pub use certificate::{
    verify, AlgebraRecord, Bounds, Certificate, ContextRecord, Embedded, FullReason, HomRoute,
    Target, Verdict, Witness,
};
pub use epic::{
    almost_total, condition_i_pair, decide_epic_thm, fullify, is_epic, is_full, is_fully_epic,
    retraction_witness, EpicOutcome, FullOutcome, Fullified,
};
pub use homs::{embeddings, homs, homs_with_budget, HomPlan};
pub use search::{candidates, weak_es_search, SearchBounds};
pub use subdirect::{decompose, rsi_check, Factor, RsiInfo, SubdirectDecomposition};
pub(crate) use epic::{fullify_with, fully_epic_with};

use crate::algebra::{quotient, sg, FiniteAlgebra, Signature, Subset, DEFAULT_CAP};
use crate::congruence::{con_all_with_cap, CongruenceSet, Partition, DEFAULT_LATTICE_CAP};
use crate::error::{Error, Result};

/// Default node budget for homomorphism searches.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Quasivariety,
    Variety,
}

impl Mode {
    pub fn letter(self) -> char {
        match self {
            Mode::Quasivariety => 'Q',
            Mode::Variety => 'V',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest universe any construction may build.
    pub cap: usize,
    /// Backtracking nodes per homomorphism search.
    pub node_budget: u64,
    /// Largest congruence lattice computed.
    pub lattice_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cap: DEFAULT_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
            lattice_cap: DEFAULT_LATTICE_CAP,
        }
    }
}

/// A finite generating set `M` together with the choice of `Q(M)` or `V(M)`.
#[derive(Debug)]
pub struct ClassContext {
    generators: Vec<FiniteAlgebra>,
    mode: Mode,
    limits: Limits,
    subalgebra_pool: OnceLock<Vec<PoolMember>>,
    hs_pool: OnceLock<Vec<PoolMember>>,
    rsi_pool: OnceLock<Vec<PoolMember>>,
}

/// A member of `S(M)` or `HS(M)` with its provenance.
#[derive(Clone, Debug)]
pub struct PoolMember {
    pub algebra: FiniteAlgebra,
    pub target: Target,
}

impl Clone for ClassContext {
    fn clone(&self) -> Self {
        ClassContext {
            generators: self.generators.clone(),
            mode: self.mode,
            limits: self.limits,
            subalgebra_pool: OnceLock::new(),
            hs_pool: OnceLock::new(),
            rsi_pool: OnceLock::new(),
        }
    }
}

impl ClassContext {
    pub fn new(generators: Vec<FiniteAlgebra>, mode: Mode) -> Result<Self> {
        Self::with_limits(generators, mode, Limits::default())
    }

    pub fn quasivariety(generators: Vec<FiniteAlgebra>) -> Result<Self> {
        Self::new(generators, Mode::Quasivariety)
    }

    pub fn variety(generators: Vec<FiniteAlgebra>) -> Result<Self> {
        Self::new(generators, Mode::Variety)
    }

    pub fn with_limits(generators: Vec<FiniteAlgebra>, mode: Mode, limits: Limits) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Precondition("a class needs at least one generator".into()));
        };
        if let Some(g) = generators.iter().find(|g| g.signature() != first.signature()) {
            return Err(Error::SignatureMismatch(format!(
                "generator `{}` differs from `{}`",
                g.name(),
                first.name()
            )));
        }
        Ok(ClassContext {
            generators,
            mode,
            limits,
            subalgebra_pool: OnceLock::new(),
            hs_pool: OnceLock::new(),
            rsi_pool: OnceLock::new(),
        })
    }

    pub fn generators(&self) -> &[FiniteAlgebra] {
        &self.generators
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn signature(&self) -> &Signature {
        self.generators[0].signature()
    }

    /// E.g. `Q(L2)` or `V(S2,B2)`.
    pub fn describe(&self) -> String {
        let names: Vec<&str> = self.generators.iter().map(FiniteAlgebra::name).collect();
        format!("{}({})", self.mode.letter(), names.join(","))
    }

    pub(crate) fn check_signature(&self, a: &FiniteAlgebra) -> Result<()> {
        if a.signature() != self.signature() {
            return Err(Error::SignatureMismatch(format!(
                "`{}` is not in the signature of {}",
                a.name(),
                self.describe()
            )));
        }
        Ok(())
    }

    /// Subalgebras of members of `M`, one per nonempty subuniverse.
    pub fn subalgebra_pool(&self) -> Result<&[PoolMember]> {
        if let Some(p) = self.subalgebra_pool.get() {
            return Ok(p);
        }
        let mut pool = Vec::new();
        for (gi, g) in self.generators.iter().enumerate() {
            for s in subuniverses(g, self.limits.cap)? {
                let (alg, _) = crate::algebra::induced_subalgebra(g, &s)?;
                pool.push(PoolMember {
                    algebra: alg.with_name(format!("{}[{}]", g.name(), join(s.elems()))),
                    target: Target {
                        generator: gi,
                        subuniverse: (!s.is_full()).then(|| s.elems().to_vec()),
                        congruence: None,
                    },
                });
            }
        }
        Ok(self.subalgebra_pool.get_or_init(|| pool))
    }

    /// Quotients of subalgebras of members of `M`, deduplicated by table.
    pub fn hs_pool(&self) -> Result<&[PoolMember]> {
        if let Some(p) = self.hs_pool.get() {
            return Ok(p);
        }
        let mut pool: Vec<PoolMember> = Vec::new();
        for member in self.subalgebra_pool()? {
            for theta in con_all_with_cap(&member.algebra, self.limits.lattice_cap)?.iter() {
                let (q, _) = quotient(&member.algebra, theta)?;
                if pool.iter().any(|p| p.algebra.same_structure(&q)) {
                    continue;
                }
                pool.push(PoolMember {
                    algebra: q.with_name(format!("{}/{}", member.algebra.name(), theta)),
                    target: Target {
                        congruence: (!theta.is_identity()).then(|| theta.clone()),
                        ..member.target.clone()
                    },
                });
            }
        }
        Ok(self.hs_pool.get_or_init(|| pool))
    }

    /// Members of the candidate pool that pass `rsi_check`: `S(M)` in
    /// quasivariety mode, `HS(M)` in variety mode.
    pub fn rsi_pool(&self) -> Result<&[PoolMember]> {
        if let Some(p) = self.rsi_pool.get() {
            return Ok(p);
        }
        let base = match self.mode {
            Mode::Quasivariety => self.subalgebra_pool()?,
            Mode::Variety => self.hs_pool()?,
        };
        let mut pool = Vec::new();
        for m in base {
            if m.algebra.is_trivial() {
                continue;
            }
            if rsi_check(&m.algebra, self)?.rsi {
                pool.push(m.clone());
            }
        }
        Ok(self.rsi_pool.get_or_init(|| pool))
    }

    /// Algebras whose homomorphisms decide epicity: `M` itself in
    /// quasivariety mode, `HS(M)` in variety mode.
    pub fn epic_targets(&self) -> Result<Vec<PoolMember>> {
        match self.mode {
            Mode::Quasivariety => Ok(self
                .generators
                .iter()
                .enumerate()
                .map(|(gi, g)| PoolMember {
                    algebra: g.clone(),
                    target: Target::generator(gi),
                })
                .collect()),
            Mode::Variety => Ok(self.hs_pool()?.to_vec()),
        }
    }

    /// Builds the algebra a [`Target`] points at.
    pub fn resolve(&self, t: &Target) -> Result<FiniteAlgebra> {
        let g = self
            .generators
            .get(t.generator)
            .ok_or_else(|| Error::Precondition(format!("no generator {}", t.generator)))?;
        let sub = match &t.subuniverse {
            Some(s) => crate::algebra::induced_subalgebra(g, &Subset::new(g.size(), s.iter().copied())?)?.0,
            None => g.clone(),
        };
        match &t.congruence {
            Some(theta) => Ok(quotient(&sub, theta)?.0),
            None => Ok(sub),
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// All nonempty subuniverses of `a`, sorted by size then lexicographically.
pub fn subuniverses(a: &FiniteAlgebra, cap: usize) -> Result<Vec<Subset>> {
    use std::collections::BTreeSet;
    let n = a.size();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = Vec::new();
    let base = sg(a, &Subset::empty(n))?.elements;
    if !base.is_empty() {
        seen.insert(base.elems().to_vec());
        queue.push(base.clone());
    }
    let singles: Vec<Subset> = (0..n)
        .map(|e| sg(a, &base.with(e)).map(|g| g.elements))
        .collect::<Result<_>>()?;
    for s in &singles {
        if seen.insert(s.elems().to_vec()) {
            queue.push(s.clone());
        }
    }
    while let Some(s) = queue.pop() {
        for (e, single) in singles.iter().enumerate() {
            if s.contains(e) || single.is_subset_of(&s) {
                continue;
            }
            let t = sg(a, &s.with(e))?.elements;
            if seen.insert(t.elems().to_vec()) {
                if seen.len() > cap {
                    return Err(Error::SizeOverflow {
                        size: seen.len() as u128,
                        cap: cap as u128,
                    });
                }
                queue.push(t);
            }
        }
    }
    let mut out: Vec<Subset> = seen
        .into_iter()
        .map(|v| Subset::new(n, v).expect("in range"))
        .collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.elems().cmp(y.elems())));
    Ok(out)
}

/// Whether homomorphisms into members of `M` separate the points of `a`.
pub fn member_isp(a: &FiniteAlgebra, k: &ClassContext) -> Result<bool> {
    k.check_signature(a)?;
    let plan = HomPlan::new(a)?;
    let mut meet = Partition::total(a.size());
    for c in k.generators() {
        for h in plan.homs(a, c, k.limits().node_budget)? {
            meet = meet.meet(&Partition::kernel(&h))?;
            if meet.is_identity() {
                return Ok(true);
            }
        }
    }
    Ok(meet.is_identity())
}

/// `Con_K(a)`. In variety mode this is `Con(a)`; in quasivariety mode the
/// meet closure of the kernels of homomorphisms into members of `M`,
/// together with the total partition.
pub fn rel_con(a: &FiniteAlgebra, k: &ClassContext) -> Result<CongruenceSet> {
    k.check_signature(a)?;
    let name = Some(k.describe());
    match k.mode() {
        Mode::Variety => {
            let c = con_all_with_cap(a, k.limits().lattice_cap)?;
            Ok(CongruenceSet::new(a.size(), c.partitions().to_vec(), name))
        }
        Mode::Quasivariety => {
            let plan = HomPlan::new(a)?;
            let mut kernels = std::collections::BTreeSet::new();
            for c in k.generators() {
                for h in plan.homs(a, c, k.limits().node_budget)? {
                    kernels.insert(Partition::kernel(&h));
                }
            }
            let closed = meet_closure(a.size(), kernels, k.limits().lattice_cap)?;
            Ok(CongruenceSet::new(a.size(), closed, name))
        }
    }
}

/// Closes `gens` under pairwise meets and adds the total partition.
pub(crate) fn meet_closure(
    n: usize,
    gens: std::collections::BTreeSet<Partition>,
    cap: usize,
) -> Result<Vec<Partition>> {
    let base: Vec<Partition> = gens.iter().cloned().collect();
    let mut seen = gens;
    seen.insert(Partition::total(n));
    let mut frontier: Vec<Partition> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &base {
                let m = x.meet(g)?;
                if !seen.contains(&m) {
                    seen.insert(m.clone());
                    if seen.len() > cap {
                        return Err(Error::SizeOverflow {
                            size: seen.len() as u128,
                            cap: cap as u128,
                        });
                    }
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}
