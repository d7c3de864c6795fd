use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FiniteAlgebra, Signature, Structure};
use crate::error::{Error, Result};

/// A term over a signature with variables `x0, x1, ..`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(symbol: impl Into<String>, children: Vec<Term>) -> Term {
        Term::App(symbol.into(), children)
    }

    /// Largest variable index occurring in the term.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::App(_, children) => children.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, children) => 1 + children.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Checks arities and symbol membership against `sig`.
    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(symbol, children) => {
                let op = sig
                    .index_of(symbol)
                    .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
                if sig.arity(op) != children.len() {
                    return Err(Error::ArityMismatch {
                        symbol: symbol.clone(),
                        expected: sig.arity(op),
                        found: children.len(),
                    });
                }
                children.iter().try_for_each(|c| c.check(sig))
            }
        }
    }

    /// Evaluates in any [`Structure`]; see [`eval_term`] for finite algebras.
    pub fn eval_in<S: Structure>(&self, s: &S, env: &[S::Elem]) -> Result<S::Elem> {
        match self {
            Term::Var(i) => env.get(*i).cloned().ok_or(Error::VariableOutOfRange {
                index: *i,
                len: env.len(),
            }),
            Term::App(symbol, children) => {
                let sig = s.signature();
                let op = sig
                    .index_of(symbol)
                    .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
                if sig.arity(op) != children.len() {
                    return Err(Error::ArityMismatch {
                        symbol: symbol.clone(),
                        expected: sig.arity(op),
                        found: children.len(),
                    });
                }
                let args = children
                    .iter()
                    .map(|c| c.eval_in(s, env))
                    .collect::<Result<Vec<_>>>()?;
                Ok(s.apply_op(op, &args))
            }
        }
    }

    /// Parses prefix notation such as `or(and(x0,x1),x2)`. Nullary symbols
    /// are written bare (`zero`) or with empty parentheses (`zero()`).
    pub fn parse(text: &str, sig: &Signature) -> Result<Term> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
            sig,
        };
        let term = parser.term()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(Error::Parse(format!(
                "unexpected trailing input at offset {}",
                parser.pos
            )));
        }
        Ok(term)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(symbol, children) if children.is_empty() => write!(f, "{symbol}"),
            Term::App(symbol, children) => {
                write!(f, "{symbol}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'-' || c == b'.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a symbol at offset {start}")));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        let has_args = self.peek() == Some(b'(');
        if self.sig.index_of(&name).is_none() && !has_args {
            if let Some(digits) = name.strip_prefix('x') {
                if let Ok(i) = digits.parse::<usize>() {
                    return Ok(Term::Var(i));
                }
            }
            return Err(Error::UnknownSymbol(name));
        }
        let mut children = Vec::new();
        if has_args {
            self.pos += 1;
            if self.peek() == Some(b')') {
                self.pos += 1;
            } else {
                loop {
                    children.push(self.term()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => {
                            return Err(Error::Parse(format!(
                                "expected `,` or `)` at offset {}",
                                self.pos
                            )))
                        }
                    }
                }
            }
        }
        let term = Term::App(name, children);
        term.check(self.sig)?;
        Ok(term)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TermTree {
    Var { var: usize },
    App { op: String, args: Vec<TermTree> },
}

impl From<&Term> for TermTree {
    fn from(t: &Term) -> Self {
        match t {
            Term::Var(i) => TermTree::Var { var: *i },
            Term::App(op, args) => TermTree::App {
                op: op.clone(),
                args: args.iter().map(TermTree::from).collect(),
            },
        }
    }
}

impl From<TermTree> for Term {
    fn from(t: TermTree) -> Self {
        match t {
            TermTree::Var { var } => Term::Var(var),
            TermTree::App { op, args } => Term::App(op, args.into_iter().map(Term::from).collect()),
        }
    }
}

/// JSON tree form: `{"var": 0}` or `{"op": "and", "args": [..]}`.
impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TermTree::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        TermTree::deserialize(deserializer).map(Term::from)
    }
}

/// Bottom-up evaluation of `t` in `a` with `x_i` bound to `env[i]`.
pub fn eval_term(a: &FiniteAlgebra, t: &Term, env: &[usize]) -> Result<usize> {
    if let Some(&bad) = env.iter().find(|&&e| e >= a.size()) {
        return Err(Error::Precondition(format!(
            "environment value {bad} is outside the universe of `{}`",
            a.name()
        )));
    }
    t.eval_in(a, env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn eval_examples() {
        let s2 = catalog::chain_semilattice(2);
        let meet = Term::app("and", vec![Term::var(0), Term::var(1)]);
        assert_eq!(eval_term(&s2, &meet, &[0, 1]).unwrap(), 0);
        assert_eq!(eval_term(&s2, &Term::var(0), &[1]).unwrap(), 1);

        let l2 = catalog::chain_lattice(2);
        let t = Term::app(
            "or",
            vec![Term::app("and", vec![Term::var(0), Term::var(1)]), Term::var(1)],
        );
        assert_eq!(eval_term(&l2, &t, &[1, 0]).unwrap(), 0);
    }

    #[test]
    fn eval_errors() {
        let s2 = catalog::chain_semilattice(2);
        let join = Term::app("or", vec![Term::var(0), Term::var(1)]);
        assert!(matches!(eval_term(&s2, &join, &[0, 1]), Err(Error::UnknownSymbol(_))));
        let bad = Term::app("and", vec![Term::var(0)]);
        assert!(matches!(eval_term(&s2, &bad, &[0]), Err(Error::ArityMismatch { .. })));
        assert!(matches!(
            eval_term(&s2, &Term::var(3), &[0]),
            Err(Error::VariableOutOfRange { index: 3, len: 1 })
        ));
    }

    #[test]
    fn prefix_and_json_forms() {
        let sig = catalog::boolean(1).signature().clone();
        let text = "or(and(x0,x1),or(and(x0,x2),not(zero)))";
        let t = Term::parse(text, &sig).unwrap();
        assert_eq!(t.to_string(), text);
        assert_eq!(Term::parse("zero()", &sig).unwrap().to_string(), "zero");
        let json = serde_json::to_string(&t).unwrap();
        let back: Term = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(Term::parse("and(x0)", &sig).is_err());
        assert!(Term::parse("meet(x0,x1)", &sig).is_err());
        assert!(Term::parse("and(x0,x1) junk", &sig).is_err());
    }
}
