//! Acceptance run: one line per criterion with its verdict, elapsed time
//! and time limit. Exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use ualg::algebra::{generate, ProductView, Subset};
use ualg::catalog;
use ualg::classctx::{
    condition_i_pair, decide_epic_thm, is_epic, is_full, is_fully_epic, rel_con, rsi_check, subuniverses, verify,
    weak_es_search, Certificate, ClassContext, HomRoute, SearchBounds, Verdict, Witness,
};
use ualg::congruence::{cg_pair, con_all, decompose_irreducible, n_irreducible, restrict};
use ualg::maltsev::{self, Schema};
use ualg::{FiniteAlgebra, Partition};

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(a: FiniteAlgebra) -> ClassContext {
    ClassContext::quasivariety(vec![a]).unwrap()
}

/// Certificates emitted so far, each computed twice to compare bytes.
#[derive(Default)]
struct Ledger {
    certs: Vec<(String, Certificate)>,
    unstable: Vec<String>,
}

impl Ledger {
    fn emit(&mut self, label: &str, make: impl Fn() -> ualg::Result<Certificate>) -> std::result::Result<Certificate, String> {
        let first = make().map_err(|e| format!("{label}: {e}"))?;
        let second = make().map_err(|e| format!("{label}: {e}"))?;
        if first.to_json() != second.to_json() {
            self.unstable.push(label.to_string());
        }
        self.certs.push((label.to_string(), first.clone()));
        Ok(first)
    }
}

fn c1_congruence_oracles(_: &mut Ledger) -> Check {
    for a in small_catalog(6) {
        let fast = con_all(&a).map_err(|e| e.to_string())?;
        ensure(fast.partitions() == brute_con(&a).as_slice(), format!("con_all differs on {}", a.name()))?;
        for x in 0..a.size() {
            for y in x + 1..a.size() {
                ensure(cg_pair(&a, x, y) == brute_cg(&a, x, y), format!("cg_pair differs on {}", a.name()))?;
            }
        }
    }
    Ok(())
}

fn dl_pair() -> (FiniteAlgebra, Subset) {
    let ex = catalog::dl_example(&catalog::chain_lattice(2), 0, 1).unwrap();
    (ex.ambient, ex.a)
}

fn c2_distributive_lattices(l: &mut Ledger) -> Check {
    let k = q(catalog::chain_lattice(2));
    let (b, a) = dl_pair();
    ensure(a.len() == 3 && b.size() == 4, "expected the 3-chain inside 2x2")?;
    let cert = l.emit("fully-epic dl", || is_fully_epic(&a, &b, &k))?;
    ensure(cert.is(Verdict::FullyEpic), format!("got {:?}", cert.verdict))?;
    let cert = l.emit("weakes L2", || weak_es_search(&k, SearchBounds::new(4, 2, 2)))?;
    ensure(cert.is(Verdict::WeakEsFailure), format!("got {:?}", cert.verdict))?;
    verify(&cert).map_err(|e| e.to_string())
}

fn c3_semilattice(l: &mut Ledger) -> Check {
    let k = q(catalog::chain_semilattice(2));
    let s3 = catalog::chain_semilattice(3);
    let a = Subset::new(3, [0, 2]).unwrap();
    ensure(l.emit("full S3", || is_full(&a, &s3, &k))?.is(Verdict::Full), "A is not full")?;
    let epic = l.emit("epic S3", || is_epic(&a, &s3, &k))?;
    ensure(epic.is(Verdict::NotEpic), "A is epic")?;
    match &epic.witness {
        Witness::HomPair { route: HomRoute::Homs, target, g, h, .. } => {
            ensure(target.generator == 0 && target.subuniverse.is_none(), "target is not S2")?;
            ensure(g != h && a.iter().all(|x| g[x] == h[x]), "maps do not agree on A")?;
        }
        w => return Err(format!("unexpected witness {w:?}")),
    }
    let thm = l.emit("decide S3", || decide_epic_thm(&a, &s3, &k))?;
    ensure(thm.is(Verdict::NotEpic), "theorem says epic")?;
    match &thm.witness {
        Witness::Retraction { phi, .. } => {
            ensure(!phi.is_identity() && restrict(phi, &a).is_identity(), "phi does not restrict to id_A")
        }
        w => Err(format!("unexpected witness {w:?}")),
    }
}

fn c4_boolean(l: &mut Ledger) -> Check {
    let k = q(catalog::boolean(1));
    let b4 = catalog::boolean(2);
    let a = Subset::new(4, [0, 3]).unwrap();
    ensure(l.emit("full B4", || is_full(&a, &b4, &k))?.is(Verdict::Full), "A is not full")?;
    ensure(l.emit("epic B4", || is_epic(&a, &b4, &k))?.is(Verdict::NotEpic), "A is epic")?;
    let info = rsi_check(&b4, &k).map_err(|e| e.to_string())?;
    ensure(!info.rfsi && !info.rsi, "B4 is finitely subdirectly irreducible")
}

fn term_cert(k: &ClassContext, schema: Schema) -> ualg::Result<Certificate> {
    let cap = k.limits().cap;
    let name = schema.name().to_string();
    let arity = schema.arity();
    Ok(match maltsev::find_term(k, schema, cap)? {
        Some(term) => Certificate::new(Verdict::TermFound, k, Witness::Term { schema: name, arity, term }),
        None => Certificate::new(Verdict::NoTerm, k, Witness::NoTerm { schema: name, arity }),
    })
}

fn c5_maltsev_suite(l: &mut Ledger) -> Check {
    let l2 = q(catalog::chain_lattice(2));
    let s2 = q(catalog::chain_semilattice(2));
    let b2 = q(catalog::boolean(1));
    let expect = [
        (&l2, Schema::NearUnanimity(3), true),
        (&b2, Schema::NearUnanimity(3), true),
        (&s2, Schema::NearUnanimity(3), false),
        (&b2, Schema::Pixley, true),
        (&l2, Schema::Pixley, false),
        (&s2, Schema::Pixley, false),
        (&b2, Schema::Maltsev, true),
        (&l2, Schema::Maltsev, false),
        (&s2, Schema::Maltsev, false),
        (&b2, Schema::Discriminator, true),
        (&l2, Schema::Discriminator, false),
    ];
    for (k, schema, found) in expect {
        let label = format!("{schema} over {}", k.describe());
        let cert = l.emit(&label, || term_cert(k, schema))?;
        ensure(cert.is(Verdict::TermFound) == found, format!("{label}: got {:?}", cert.verdict))?;
        if let Witness::Term { term, .. } = &cert.witness {
            ensure(maltsev::verify_identities(k, term, schema).unwrap(), format!("{label}: {term} fails"))?;
        }
    }
    Ok(())
}

fn c6_arithmeticity(l: &mut Ledger) -> Check {
    let k = q(catalog::chain_lattice(2));
    let cap = k.limits().cap;
    let t = maltsev::free(&k, 2, cap).map_err(|e| e.to_string())?;
    ensure(t.size() == 4, format!("T has {} elements", t.size()))?;
    let cube = ProductView::power(&t.base, 3);
    let (x, y) = (t.generators[0], t.generators[1]);
    let whole = generate(&cube, &all_triples(4), cap, None).map_err(|e| e.to_string())?;
    ensure(whole.len() == 64, "T^3 does not have 64 elements")?;
    let a = generate(&cube, &[vec![x, x, y], vec![y, y, y], vec![x, y, x]], cap, None).map_err(|e| e.to_string())?;
    ensure(!a.contains(&vec![x, x, x]), "xxx lies in A")?;
    let cert = l.emit("arith L2", || maltsev::arithmeticity_witness(&k, cap))?;
    ensure(cert.is(Verdict::WeakEsFailure), format!("got {:?}", cert.verdict))?;
    verify(&cert).map_err(|e| e.to_string())?;
    let b2 = q(catalog::boolean(1));
    let cert = l.emit("arith B2", || maltsev::arithmeticity_witness(&b2, cap))?;
    ensure(cert.is(Verdict::Arithmetical), format!("got {:?}", cert.verdict))
}

fn all_triples(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    ualg::algebra::for_each_tuple(n, 3, |t| out.push(t.to_vec()));
    out
}

fn c7_agreement(l: &mut Ledger) -> Check {
    let mut pairs: Vec<(ClassContext, FiniteAlgebra, Subset)> = vec![
        (q(catalog::chain_lattice(2)), dl_pair().0, dl_pair().1),
        (q(catalog::chain_semilattice(2)), catalog::chain_semilattice(3), Subset::new(3, [0, 2]).unwrap()),
        (q(catalog::boolean(1)), catalog::boolean(2), Subset::new(4, [0, 3]).unwrap()),
    ];
    for k in contexts() {
        for (b, a) in full_pairs(&k, 5) {
            pairs.push((k.clone(), b, a));
        }
    }
    let mut disagreements = Vec::new();
    for (k, b, a) in &pairs {
        let direct = is_epic(a, b, k).map_err(|e| e.to_string())?;
        let label = format!("decide {} {:?} {}", b.name(), a.elems(), k.describe());
        let thm = l.emit(&label, || decide_epic_thm(a, b, k))?;
        if direct.verdict != thm.verdict {
            disagreements.push(label);
        }
    }
    ensure(disagreements.is_empty(), format!("{} of {} disagree: {disagreements:?}", disagreements.len(), pairs.len()))
}

fn c8_optimal_two_cases(_: &mut Ledger) -> Check {
    let mut checked = 0;
    for k in contexts() {
        for a in small_catalog(6).into_iter().filter(|a| a.signature() == k.signature()) {
            let c = rel_con(&a, &k).map_err(|e| e.to_string())?;
            if c.len() > 12 {
                continue;
            }
            for theta in c.iter() {
                for n in 1..=4 {
                    if n_irreducible(&c, theta, n) {
                        checked += 1;
                        let d = decompose_irreducible(&c, theta, n);
                        ensure(
                            d.as_ref().is_some_and(|d| d.len() < n && c.meet_all(d.iter()) == *theta),
                            format!("{theta} in {} fails for n = {n}", a.name()),
                        )?;
                    }
                }
            }
        }
    }
    ensure(checked > 0, "nothing was checked")
}

fn c9_kreisel(_: &mut Ledger) -> Check {
    for n in 1..=4 {
        let h = catalog::heyting_chain(n);
        let k = q(h.clone());
        for a in subuniverses(&h, 100).map_err(|e| e.to_string())? {
            if a.is_full() {
                continue;
            }
            let pair = condition_i_pair(&a, &h, &k).map_err(|e| e.to_string())?;
            ensure(pair.is_some(), format!("H{n} {:?} has no pair", a.elems()))?;
            let (t, p): (Partition, Partition) = pair.unwrap();
            ensure(t != p && restrict(&t, &a) == restrict(&p, &a), "bad pair")?;
        }
    }
    Ok(())
}

fn c10_negative_searches(l: &mut Ledger) -> Check {
    let s = l.emit("weakes S2", || weak_es_search(&q(catalog::chain_semilattice(2)), SearchBounds::new(6, 3, 3)))?;
    ensure(s.is(Verdict::Exhausted), format!("S2: {:?}", s.verdict))?;
    let b = l.emit("weakes B2", || weak_es_search(&q(catalog::boolean(1)), SearchBounds::new(8, 3, 3)))?;
    ensure(b.is(Verdict::Exhausted), format!("B2: {:?}", b.verdict))
}

fn c11_round_trip(l: &mut Ledger) -> Check {
    ensure(l.unstable.is_empty(), format!("non-deterministic: {:?}", l.unstable))?;
    for (label, cert) in &l.certs {
        let parsed = Certificate::from_json(&cert.to_json()).map_err(|e| format!("{label}: {e}"))?;
        ensure(parsed.to_json() == cert.to_json(), format!("{label}: JSON does not round-trip"))?;
        verify(&parsed).map_err(|e| format!("{label}: {e}"))?;
    }
    ensure(!l.certs.is_empty(), "no certificates")
}

type Criterion = (&'static str, Option<u64>, fn(&mut Ledger) -> Check);

fn main() {
    let criteria: [Criterion; 11] = [
        ("congruence oracle equivalence", Some(60), c1_congruence_oracles),
        ("distributive lattices at minimal scale", Some(10), c2_distributive_lattices),
        ("semilattice 0 < a < 1", Some(5), c3_semilattice),
        ("Boolean B4", Some(5), c4_boolean),
        ("Maltsev-condition suite", Some(120), c5_maltsev_suite),
        ("weak ES implies CP constructor", Some(120), c6_arithmeticity),
        ("decide_epic_thm agrees with is_epic", None, c7_agreement),
        ("n-irreducibles decompose", None, c8_optimal_two_cases),
        ("Kreisel property for Heyting chains", None, c9_kreisel),
        ("negative weak ES searches", Some(300), c10_negative_searches),
        ("certificate round-trip", None, c11_round_trip),
    ];
    let mut ledger = Ledger::default();
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = check(&mut ledger);
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            if result.is_ok() && elapsed > Duration::from_secs(*secs) {
                result = Err(format!("took longer than {secs} s"));
            }
        }
        let limit = limit.map_or("no limit".to_string(), |s| format!("limit {s} s"));
        match result {
            Ok(()) => println!("PASS  {:>2}. {name} ({:.2} s, {limit})", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL  {:>2}. {name} ({:.2} s, {limit}): {e}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} certificates emitted and re-verified", ledger.certs.len());
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
