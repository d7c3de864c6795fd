use super::{member_isp, rel_con, ClassContext, Mode};
use crate::algebra::{quotient, FiniteAlgebra};
use crate::congruence::{CongruenceSet, Partition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsiInfo {
    pub rsi: bool,
    pub rfsi: bool,
    /// The least nonidentity relative congruence, when `rsi` holds.
    pub monolith: Option<Partition>,
}

/// Relative subdirect irreducibility of `c`: the identity must be a member
/// of `Con_K(c)` with exactly one upper cover. In a finite lattice meet
/// irreducible and completely meet irreducible coincide, so `rsi == rfsi`.
pub fn rsi_check(c: &FiniteAlgebra, k: &ClassContext) -> Result<RsiInfo> {
    if c.is_trivial() {
        return Err(Error::TrivialAlgebra);
    }
    let lattice = rel_con(c, k)?;
    Ok(rsi_in(&lattice))
}

pub(crate) fn rsi_in(lattice: &CongruenceSet) -> RsiInfo {
    let id = Partition::identity(lattice.ground_size());
    if !lattice.contains(&id) {
        return RsiInfo {
            rsi: false,
            rfsi: false,
            monolith: None,
        };
    }
    let covers = lattice.upper_covers(&id);
    let irreducible = covers.len() == 1;
    RsiInfo {
        rsi: irreducible,
        rfsi: irreducible,
        monolith: irreducible.then(|| covers[0].clone()),
    }
}

/// One factor of a subdirect decomposition.
#[derive(Clone, Debug)]
pub struct Factor {
    pub theta: Partition,
    pub quotient: FiniteAlgebra,
    pub projection: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SubdirectDecomposition {
    pub factors: Vec<Factor>,
}

impl SubdirectDecomposition {
    /// The map into the product of the factors, one coordinate per factor.
    pub fn embedding(&self, size: usize) -> Vec<Vec<usize>> {
        (0..size)
            .map(|e| self.factors.iter().map(|f| f.projection[e]).collect())
            .collect()
    }
}

/// Embeds `a` subdirectly into relatively subdirectly irreducible quotients.
///
/// For each pair of distinct elements the least maximal relative congruence
/// not relating them is taken; the resulting family is pruned greedily in
/// canonical order while its meet stays the identity.
pub fn decompose(a: &FiniteAlgebra, k: &ClassContext) -> Result<SubdirectDecomposition> {
    k.check_signature(a)?;
    if k.mode() == Mode::Quasivariety && !member_isp(a, k)? {
        return Err(Error::NotMember(format!("{} is not in {}", a.name(), k.describe())));
    }
    let lattice = rel_con(a, k)?;
    let n = a.size();
    let id = Partition::identity(n);
    if !lattice.contains(&id) {
        return Err(Error::NotMember(format!("the identity of {} is not relative", a.name())));
    }
    let mut family: Vec<Partition> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let avoid: Vec<&Partition> = lattice.iter().filter(|p| !p.related(x, y)).collect();
            let best = avoid
                .iter()
                .find(|p| !avoid.iter().any(|q| q != *p && p.leq(q)))
                .expect("the identity separates every pair");
            if !family.contains(best) {
                family.push((*best).clone());
            }
        }
    }
    family.sort();
    let mut i = 0;
    while i < family.len() {
        let rest = family
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Partition::total(n), |acc, (_, p)| acc.meet(p).expect("same ground"));
        if rest == id && family.len() > 1 {
            family.remove(i);
        } else {
            i += 1;
        }
    }
    if n == 1 {
        family.clear();
    }
    let mut factors = Vec::new();
    for theta in family {
        let (q, projection) = quotient(a, &theta)?;
        let info = rsi_check(&q, k)?;
        if !info.rsi {
            return Err(Error::Precondition(format!("factor {theta} is not relatively subdirectly irreducible")));
        }
        factors.push(Factor {
            theta,
            quotient: q,
            projection,
        });
    }
    let d = SubdirectDecomposition { factors };
    let mut images = d.embedding(n);
    images.sort();
    images.dedup();
    if images.len() != n {
        return Err(Error::Precondition("the factors do not separate points".into()));
    }
    Ok(d)
}
