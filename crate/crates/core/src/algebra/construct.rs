use super::{checked_pow, for_each_tuple, FiniteAlgebra, Signature, Subset, DEFAULT_CAP};
use crate::congruence::Partition;
use crate::error::{Error, Result};

/// Direct product with the default size cap.
pub fn product(algebras: &[FiniteAlgebra]) -> Result<FiniteAlgebra> {
    match algebras.first() {
        Some(first) => product_with_cap(first.signature(), algebras, DEFAULT_CAP),
        None => Err(Error::Precondition(
            "empty product needs an explicit signature; use product_with_cap".into(),
        )),
    }
}

/// Direct product over `sig`. Tuples are encoded mixed-radix with earlier
/// factors more significant; the empty product is the one-element algebra.
pub fn product_with_cap(
    sig: &Signature,
    algebras: &[FiniteAlgebra],
    cap: usize,
) -> Result<FiniteAlgebra> {
    if let Some(a) = algebras.iter().find(|a| a.signature() != sig) {
        return Err(Error::SignatureMismatch(format!(
            "factor `{}` does not share the product signature",
            a.name()
        )));
    }
    let size = algebras
        .iter()
        .try_fold(1u128, |acc, a| acc.checked_mul(a.size() as u128))
        .unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::SizeOverflow {
            size,
            cap: cap as u128,
        });
    }
    let size = size as usize;
    let radices: Vec<usize> = algebras.iter().map(FiniteAlgebra::size).collect();
    let coords: Vec<Vec<usize>> = (0..size).map(|e| decode(e, &radices)).collect();
    let name = if algebras.is_empty() {
        "1".to_string()
    } else {
        algebras.iter().map(|a| a.name()).collect::<Vec<_>>().join("x")
    };
    let mut buf = Vec::new();
    FiniteAlgebra::from_fn(name, size, sig.clone(), |op, args| {
        let mut code = 0;
        for (i, a) in algebras.iter().enumerate() {
            buf.clear();
            buf.extend(args.iter().map(|&e| coords[e][i]));
            code = code * radices[i] + a.apply(op, &buf);
        }
        code
    })
}

/// Mixed-radix digits of `code`, most significant first.
pub(crate) fn decode(mut code: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        digits[i] = code % radices[i];
        code /= radices[i];
    }
    digits
}

/// `A/θ` on the block ids of `theta`, with the projection map.
pub fn quotient(a: &FiniteAlgebra, theta: &Partition) -> Result<(FiniteAlgebra, Vec<usize>)> {
    if theta.len() != a.size() {
        return Err(Error::SizeMismatch(theta.len(), a.size()));
    }
    let reps = theta.representatives();
    let sig = a.signature().clone();
    // Compatibility: the block of f(args) depends only on the blocks of args.
    for op in 0..sig.len() {
        let arity = sig.arity(op);
        let mut bad = None;
        let mut rep_args = vec![0; arity];
        for_each_tuple(a.size(), arity, |args| {
            if bad.is_some() {
                return;
            }
            for (slot, &x) in rep_args.iter_mut().zip(args) {
                *slot = reps[theta.block(x)];
            }
            if theta.block(a.apply(op, args)) != theta.block(a.apply(op, &rep_args)) {
                bad = Some(args.to_vec());
            }
        });
        if let Some(args) = bad {
            return Err(Error::NotACongruence(format!(
                "`{}` is not compatible at arguments {args:?}",
                sig.name(op)
            )));
        }
    }
    let name = format!("{}/{}", a.name(), theta);
    let mut rep_args = Vec::new();
    let q = FiniteAlgebra::from_fn(name, theta.num_blocks(), sig, |op, blocks| {
        rep_args.clear();
        rep_args.extend(blocks.iter().map(|&b| reps[b]));
        theta.block(a.apply(op, &rep_args))
    })?;
    Ok((q, theta.labels().to_vec()))
}

/// The subalgebra on `s`, re-indexed in increasing order, with the
/// inclusion map.
pub fn induced_subalgebra(a: &FiniteAlgebra, s: &Subset) -> Result<(FiniteAlgebra, Vec<usize>)> {
    if s.universe() != a.size() {
        return Err(Error::SizeMismatch(s.universe(), a.size()));
    }
    if s.is_empty() {
        return Err(Error::Precondition("subalgebras are nonempty".into()));
    }
    a.check_closed(s)?;
    let elems = s.elems();
    let mut buf = Vec::new();
    let sub = FiniteAlgebra::from_fn(format!("{}|{}", a.name(), s.len()), s.len(), a.signature().clone(), |op, args| {
        buf.clear();
        buf.extend(args.iter().map(|&i| elems[i]));
        s.position(a.apply(op, &buf)).expect("closed subset")
    })?;
    Ok((sub, elems.to_vec()))
}

/// True iff `f` (indexed by elements of `a`) commutes with every operation.
pub fn is_hom(f: &[usize], a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    if f.len() != a.size() || a.signature() != b.signature() || f.iter().any(|&v| v >= b.size()) {
        return false;
    }
    let sig = a.signature();
    for op in 0..sig.len() {
        let arity = sig.arity(op);
        if checked_pow(a.size(), arity) == 0 {
            continue;
        }
        let mut ok = true;
        let mut image = vec![0; arity];
        for_each_tuple(a.size(), arity, |args| {
            if !ok {
                return;
            }
            for (slot, &x) in image.iter_mut().zip(args) {
                *slot = f[x];
            }
            ok = f[a.apply(op, args)] == b.apply(op, &image);
        });
        if !ok {
            return false;
        }
    }
    true
}
