//! Built-in algebras, addressed by keys such as `chain_lattice(3)`,
//! `boolean(2)` or `power(chain_semilattice(2),3)`.

use crate::algebra::{product, sg, FiniteAlgebra, Signature, Subset};
use crate::error::{Error, Result};

/// A built algebra together with display names for its elements.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub algebra: FiniteAlgebra,
    pub element_names: Vec<String>,
}

/// Key templates understood by [`build`], with a one-line description.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("chain_lattice(n)", "n-element chain as a lattice (and, or)"),
        ("chain_semilattice(n)", "n-element chain as a meet semilattice (and)"),
        ("flat_semilattice(n)", "bottom plus n-1 pairwise incomparable atoms (and)"),
        ("boolean(k)", "Boolean algebra with k atoms (and, or, not, zero, one)"),
        ("implication_of_boolean(k)", "implication reduct of boolean(k) (imp)"),
        ("heyting_chain(n)", "n-element chain as a Heyting algebra (and, or, imp, zero, one)"),
        ("dl_example(A1,a,b)", "ambient A1 x chain_lattice(2) of the distributive lattice construction"),
        ("product(k1,..,km)", "direct product of catalog algebras"),
        ("power(key,m)", "m-th direct power"),
        ("L2, S2, S3, B2, B4", "aliases for chain_lattice(2), chain_semilattice(2), chain_semilattice(3), boolean(1), boolean(2)"),
    ]
}

fn sig(symbols: &[(&str, usize)]) -> Signature {
    Signature::new(symbols.iter().copied()).expect("catalog signatures are valid")
}

fn lattice_sig() -> Signature {
    sig(&[("and", 2), ("or", 2)])
}

fn chain_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// `0 < 1 < .. < n-1` with min and max.
pub fn chain_lattice(n: usize) -> FiniteAlgebra {
    assert!(n > 0, "chains are nonempty");
    FiniteAlgebra::from_fn(format!("L{n}"), n, lattice_sig(), |op, a| match op {
        0 => a[0].min(a[1]),
        _ => a[0].max(a[1]),
    })
    .expect("valid tables")
}

/// `0 < 1 < .. < n-1` with min only. For `n = 3` this is the semilattice
/// `0 < a < 1` with `a` encoded as 1 and the top as 2.
pub fn chain_semilattice(n: usize) -> FiniteAlgebra {
    assert!(n > 0, "chains are nonempty");
    FiniteAlgebra::from_fn(format!("S{n}"), n, sig(&[("and", 2)]), |_, a| a[0].min(a[1]))
        .expect("valid tables")
}

/// Bottom 0 and atoms `1..n`; distinct elements meet to 0.
pub fn flat_semilattice(n: usize) -> FiniteAlgebra {
    assert!(n > 0, "semilattices are nonempty");
    FiniteAlgebra::from_fn(format!("F{n}"), n, sig(&[("and", 2)]), |_, a| {
        if a[0] == a[1] {
            a[0]
        } else {
            0
        }
    })
    .expect("valid tables")
}

/// Subsets of `k` atoms encoded as bitmasks; atom 0 is the least significant
/// bit. `boolean(1)` is B2 and `boolean(2)` is B4, whose two-element
/// subalgebra is `{0, 3}`.
pub fn boolean(k: usize) -> FiniteAlgebra {
    let n = 1usize << k;
    let mask = n - 1;
    let s = sig(&[("and", 2), ("or", 2), ("not", 1), ("zero", 0), ("one", 0)]);
    FiniteAlgebra::from_fn(format!("B{n}"), n, s, |op, a| match op {
        0 => a[0] & a[1],
        1 => a[0] | a[1],
        2 => !a[0] & mask,
        3 => 0,
        _ => mask,
    })
    .expect("valid tables")
}

fn boolean_names(k: usize) -> Vec<String> {
    let atoms: Vec<char> = ('a'..='z').collect();
    (0..1usize << k)
        .map(|e| {
            let s: String = (0..k).filter(|i| e >> i & 1 == 1).map(|i| atoms[i % 26]).collect();
            if s.is_empty() {
                "0".into()
            } else {
                s
            }
        })
        .collect()
}

/// `a -> b = ¬a ∨ b` on the bitmask universe of `boolean(k)`.
pub fn implication_of_boolean(k: usize) -> FiniteAlgebra {
    let n = 1usize << k;
    let mask = n - 1;
    FiniteAlgebra::from_fn(format!("I{n}"), n, sig(&[("imp", 2)]), |_, a| (!a[0] | a[1]) & mask)
        .expect("valid tables")
}

/// The chain `0 < .. < n-1` with relative pseudocomplement
/// `a -> b = top` if `a <= b`, else `b`.
pub fn heyting_chain(n: usize) -> FiniteAlgebra {
    assert!(n > 0, "chains are nonempty");
    let s = sig(&[("and", 2), ("or", 2), ("imp", 2), ("zero", 0), ("one", 0)]);
    FiniteAlgebra::from_fn(format!("H{n}"), n, s, |op, a| match op {
        0 => a[0].min(a[1]),
        1 => a[0].max(a[1]),
        2 => {
            if a[0] <= a[1] {
                n - 1
            } else {
                a[1]
            }
        }
        3 => 0,
        _ => n - 1,
    })
    .expect("valid tables")
}

/// The distributive lattice construction inside `A1 × 2`.
#[derive(Clone, Debug)]
pub struct DlExample {
    /// `A1 × chain_lattice(2)`, with `(c, t)` encoded as `2c + t`.
    pub ambient: FiniteAlgebra,
    /// `(A1 × {0}) ∪ (↑b × {1})`.
    pub a: Subset,
    /// `Sg(A ∪ {(a, 1)})`.
    pub b: Subset,
}

/// Requires a lattice `a1` (symbols `and`, `or`) and `a < b` in it.
pub fn dl_example(a1: &FiniteAlgebra, a: usize, b: usize) -> Result<DlExample> {
    let sig = a1.signature();
    let (Some(meet), Some(_)) = (sig.index_of("and"), sig.index_of("or")) else {
        return Err(Error::BadParams("dl_example needs a lattice with `and` and `or`".into()));
    };
    let n = a1.size();
    if a >= n || b >= n {
        return Err(Error::BadParams(format!("elements {a}, {b} must lie in 0..{n}")));
    }
    let leq = |x: usize, y: usize| a1.apply(meet, &[x, y]) == x;
    if a == b || !leq(a, b) {
        return Err(Error::BadParams(format!("need a < b, got a = {a}, b = {b}")));
    }
    let l2 = chain_lattice(2).with_name("2");
    if l2.signature() != sig {
        return Err(Error::BadParams("dl_example needs exactly the lattice signature".into()));
    }
    let ambient = product(&[a1.clone(), l2])?;
    let size = ambient.size();
    let a_set = Subset::new(
        size,
        (0..n).map(|c| 2 * c).chain((0..n).filter(|&c| leq(b, c)).map(|c| 2 * c + 1)),
    )?;
    ambient.check_closed(&a_set)?;
    let b_set = sg(&ambient, &a_set.with(2 * a + 1))?.elements;
    Ok(DlExample {
        ambient,
        a: a_set,
        b: b_set,
    })
}

#[derive(Debug)]
enum Arg {
    Num(usize),
    Key(String, Vec<Arg>),
}

impl Arg {
    fn text(&self) -> String {
        match self {
            Arg::Num(n) => n.to_string(),
            Arg::Key(name, args) if args.is_empty() => name.clone(),
            Arg::Key(name, args) => {
                let inner: Vec<String> = args.iter().map(Arg::text).collect();
                format!("{name}({})", inner.join(","))
            }
        }
    }
}

fn parse_key(text: &str) -> Result<Arg> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let arg = parse_arg(&chars, &mut pos, text)?;
    if pos != chars.len() {
        return Err(Error::Parse(format!("trailing input in catalog key `{text}`")));
    }
    Ok(arg)
}

fn parse_arg(chars: &[char], pos: &mut usize, text: &str) -> Result<Arg> {
    let start = *pos;
    while *pos < chars.len() && (chars[*pos].is_alphanumeric() || chars[*pos] == '_') {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Parse(format!("expected a name or number in catalog key `{text}`")));
    }
    let word: String = chars[start..*pos].iter().collect();
    if word.chars().all(|c| c.is_ascii_digit()) {
        return word
            .parse()
            .map(Arg::Num)
            .map_err(|_| Error::Parse(format!("number `{word}` is too large")));
    }
    let mut args = Vec::new();
    if chars.get(*pos) == Some(&'(') {
        *pos += 1;
        if chars.get(*pos) != Some(&')') {
            loop {
                args.push(parse_arg(chars, pos, text)?);
                match chars.get(*pos) {
                    Some(',') => *pos += 1,
                    Some(')') => break,
                    _ => return Err(Error::Parse(format!("unbalanced parentheses in `{text}`"))),
                }
            }
        }
        *pos += 1;
    }
    Ok(Arg::Key(word, args))
}

fn num(args: &[Arg], i: usize, key: &str) -> Result<usize> {
    match args.get(i) {
        Some(Arg::Num(n)) => Ok(*n),
        _ => Err(Error::BadParams(format!("`{key}` expects a number as argument {}", i + 1))),
    }
}

fn positive(n: usize, max: usize, key: &str) -> Result<usize> {
    if n == 0 || n > max {
        return Err(Error::BadParams(format!("`{key}` needs a size in 1..={max}, got {n}")));
    }
    Ok(n)
}

fn build_arg(arg: &Arg) -> Result<CatalogEntry> {
    let key = arg.text();
    let (name, args) = match arg {
        Arg::Num(_) => return Err(Error::UnknownKey(key)),
        Arg::Key(name, args) => (name.as_str(), args.as_slice()),
    };
    let arity = |k: usize| -> Result<()> {
        if args.len() != k {
            return Err(Error::BadParams(format!("`{name}` takes {k} arguments, got {}", args.len())));
        }
        Ok(())
    };
    let entry = |algebra: FiniteAlgebra, element_names: Vec<String>| CatalogEntry {
        key: key.clone(),
        algebra,
        element_names,
    };
    let aliased = match name {
        "L2" => Some("chain_lattice(2)"),
        "S2" => Some("chain_semilattice(2)"),
        "S3" => Some("chain_semilattice(3)"),
        "B2" => Some("boolean(1)"),
        "B4" => Some("boolean(2)"),
        _ => None,
    };
    if let Some(target) = aliased {
        arity(0)?;
        let mut e = build(target)?;
        e.key = key;
        return Ok(e);
    }
    match name {
        "chain_lattice" => {
            arity(1)?;
            let n = positive(num(args, 0, name)?, 4096, name)?;
            Ok(entry(chain_lattice(n), chain_names(n)))
        }
        "chain_semilattice" => {
            arity(1)?;
            let n = positive(num(args, 0, name)?, 4096, name)?;
            let names = if n == 3 {
                vec!["0".into(), "a".into(), "1".into()]
            } else {
                chain_names(n)
            };
            Ok(entry(chain_semilattice(n), names))
        }
        "flat_semilattice" => {
            arity(1)?;
            let n = positive(num(args, 0, name)?, 4096, name)?;
            Ok(entry(flat_semilattice(n), chain_names(n)))
        }
        "boolean" => {
            arity(1)?;
            let k = num(args, 0, name)?;
            if k > 10 {
                return Err(Error::BadParams(format!("`boolean` supports at most 10 atoms, got {k}")));
            }
            Ok(entry(boolean(k), boolean_names(k)))
        }
        "implication_of_boolean" => {
            arity(1)?;
            let k = num(args, 0, name)?;
            if k > 6 {
                return Err(Error::BadParams(format!(
                    "`implication_of_boolean` supports at most 6 atoms, got {k}"
                )));
            }
            Ok(entry(implication_of_boolean(k), boolean_names(k)))
        }
        "heyting_chain" => {
            arity(1)?;
            let n = positive(num(args, 0, name)?, 1024, name)?;
            Ok(entry(heyting_chain(n), chain_names(n)))
        }
        "dl_example" => {
            arity(3)?;
            let a1 = build_arg(&args[0])?;
            let ex = dl_example(&a1.algebra, num(args, 1, name)?, num(args, 2, name)?)?;
            let names = (0..ex.ambient.size())
                .map(|e| format!("({},{})", a1.element_names[e / 2], e % 2))
                .collect();
            Ok(entry(ex.ambient, names))
        }
        "product" | "power" => {
            let parts: Vec<CatalogEntry> = if name == "power" {
                arity(2)?;
                let base = build_arg(&args[0])?;
                let m = num(args, 1, name)?;
                if m == 0 {
                    return Err(Error::BadParams("`power` needs an exponent of at least 1".into()));
                }
                vec![base; m]
            } else {
                if args.is_empty() {
                    return Err(Error::BadParams("`product` needs at least one factor".into()));
                }
                args.iter().map(build_arg).collect::<Result<_>>()?
            };
            let algebras: Vec<FiniteAlgebra> = parts.iter().map(|p| p.algebra.clone()).collect();
            let prod = product(&algebras).map_err(|e| match e {
                Error::SignatureMismatch(m) => Error::BadParams(m),
                other => other,
            })?;
            let radices: Vec<usize> = algebras.iter().map(FiniteAlgebra::size).collect();
            let names = (0..prod.size())
                .map(|e| {
                    let digits = crate::algebra::decode_digits(e, &radices);
                    let coords: Vec<&str> = digits
                        .iter()
                        .zip(&parts)
                        .map(|(&d, p)| p.element_names[d].as_str())
                        .collect();
                    format!("({})", coords.join(","))
                })
                .collect();
            Ok(entry(prod, names))
        }
        _ => Err(Error::UnknownKey(key)),
    }
}

/// Builds the algebra named by `key`.
pub fn build(key: &str) -> Result<CatalogEntry> {
    build_arg(&parse_key(key)?)
}
