//! Morphisms of the free strict monoidal category over a signature.
//!
//! Terms are kept as syntax trees. No quotienting by the monoidal axioms is
//! performed; two terms are compared through their values in a model.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signature::{Atom, EqTheory, GeneratorDecl, TypeWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Id(TypeWord),
    Gen(Arc<GeneratorDecl>),
    /// `Compose(f, g)` is "f then g".
    Compose(Box<Term>, Box<Term>),
    /// `Tensor(f, g)` puts `f` above `g`.
    Tensor(Box<Term>, Box<Term>),
}

/// One layer `id(left) ⊗ gen ⊗ id(right)` of a sliced term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub left: TypeWord,
    pub gen: Arc<GeneratorDecl>,
    pub right: TypeWord,
}

impl Slice {
    pub fn source(&self) -> TypeWord {
        self.left.concat(&self.gen.source).concat(&self.right)
    }

    pub fn target(&self) -> TypeWord {
        self.left.concat(&self.gen.target).concat(&self.right)
    }

    pub fn to_term(&self) -> Term {
        Term::id(self.left.clone())
            .tensor_with(Term::Gen(self.gen.clone()))
            .tensor_with(Term::id(self.right.clone()))
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.left, self.gen.name, self.right)
    }
}

impl Term {
    pub fn id(w: impl Into<TypeWord>) -> Term {
        Term::Id(w.into())
    }

    /// Checked composition: `self` then `next`.
    pub fn then(self, next: Term) -> Result<Term> {
        compose(self, next)
    }

    /// Tensor that drops empty identities, so built terms stay small.
    pub fn tensor_with(self, other: Term) -> Term {
        match (&self, &other) {
            (Term::Id(a), _) if a.is_empty() => other,
            (_, Term::Id(b)) if b.is_empty() => self,
            (Term::Id(a), Term::Id(b)) => Term::Id(a.concat(b)),
            _ => Term::Tensor(Box::new(self), Box::new(other)),
        }
    }

    pub fn boundary(&self) -> Result<(TypeWord, TypeWord)> {
        match self {
            Term::Id(w) => Ok((w.clone(), w.clone())),
            Term::Gen(g) => Ok((g.source.clone(), g.target.clone())),
            Term::Compose(f, g) => {
                let (s, m1) = f.boundary()?;
                let (m2, t) = g.boundary()?;
                if m1 != m2 {
                    return Err(Error::Boundary {
                        context: self.to_string(),
                        left: m1,
                        right: m2,
                    });
                }
                Ok((s, t))
            }
            Term::Tensor(f, g) => {
                let (s1, t1) = f.boundary()?;
                let (s2, t2) = g.boundary()?;
                Ok((s1.concat(&s2), t1.concat(&t2)))
            }
        }
    }

    pub fn source(&self) -> Result<TypeWord> {
        self.boundary().map(|b| b.0)
    }

    pub fn target(&self) -> Result<TypeWord> {
        self.boundary().map(|b| b.1)
    }

    /// Number of generator occurrences; zero exactly for identities.
    pub fn size(&self) -> usize {
        match self {
            Term::Id(_) => 0,
            Term::Gen(_) => 1,
            Term::Compose(a, b) | Term::Tensor(a, b) => a.size() + b.size(),
        }
    }

    /// Sequential decomposition with one generator per slice, top-most
    /// component of a tensor first.
    pub fn slice_form(&self) -> Result<Vec<Slice>> {
        self.boundary()?;
        let mut out = Vec::with_capacity(self.size());
        self.push_slices(&TypeWord::unit(), &TypeWord::unit(), &mut out);
        Ok(out)
    }

    fn push_slices(&self, left: &TypeWord, right: &TypeWord, out: &mut Vec<Slice>) {
        match self {
            Term::Id(_) => {}
            Term::Gen(g) => out.push(Slice {
                left: left.clone(),
                gen: g.clone(),
                right: right.clone(),
            }),
            Term::Compose(a, b) => {
                a.push_slices(left, right, out);
                b.push_slices(left, right, out);
            }
            Term::Tensor(a, b) => {
                // boundary was checked by the caller
                let (bs, _) = b.boundary().expect("checked");
                let (_, at) = a.boundary().expect("checked");
                a.push_slices(left, &bs.concat(right), out);
                b.push_slices(&left.concat(&at), right, out);
            }
        }
    }

    /// Rebuilds a term from slices; `source` is needed when `slices` is empty.
    pub fn from_slices(source: &TypeWord, slices: &[Slice]) -> Result<Term> {
        if slices.is_empty() {
            return Ok(Term::id(source.clone()));
        }
        let t = seq(slices.iter().map(Slice::to_term))?;
        let s = t.source()?;
        if &s != source {
            return Err(Error::Boundary {
                context: "slice sequence".into(),
                left: source.clone(),
                right: s,
            });
        }
        Ok(t)
    }
}

/// `f ; g`, failing when the target of `f` is not the source of `g`.
pub fn compose(f: Term, g: Term) -> Result<Term> {
    let (_, t) = f.boundary()?;
    let (s, _) = g.boundary()?;
    if t != s {
        return Err(Error::Boundary {
            context: format!("({f}) ; ({g})"),
            left: t,
            right: s,
        });
    }
    Ok(Term::Compose(Box::new(f), Box::new(g)))
}

pub fn tensor(f: Term, g: Term) -> Term {
    Term::Tensor(Box::new(f), Box::new(g))
}

/// Composes a non-empty chain of terms left to right.
pub fn seq<I: IntoIterator<Item = Term>>(terms: I) -> Result<Term> {
    let mut it = terms.into_iter();
    let first = it.next().ok_or_else(|| Error::Syntax {
        pos: 0,
        msg: "empty composite".into(),
    })?;
    it.try_fold(first, compose)
}

/// Moves the wire `wire`, sitting at position 0, past every wire of `past`
/// using the theory's crossing generators. The result has size `|past|`.
pub fn stairs(theory: &EqTheory, wire: Atom, past: &TypeWord) -> Result<Term> {
    let mut layers = Vec::with_capacity(past.len().max(1));
    layers.push(Term::id(TypeWord(vec![wire]).concat(past)));
    for (k, &p) in past.atoms().iter().enumerate() {
        let cross = theory
            .crossing(wire, p)
            .ok_or(Error::CrossingUnavailable { wire: wire.0, past: p.0 })?;
        layers.push(
            Term::id(past.slice(0..k))
                .tensor_with(Term::Gen(cross.clone()))
                .tensor_with(Term::id(past.slice(k + 1..past.len()))),
        );
    }
    if layers.len() == 1 {
        return Ok(layers.pop().unwrap());
    }
    seq(layers.into_iter().skip(1))
}

/// Inverse direction of [`stairs`]: moves the wire at position `|past|`
/// (just below `past`) up to position 0.
pub fn lift(theory: &EqTheory, wire: Atom, past: &TypeWord) -> Result<Term> {
    let n = past.len();
    if n == 0 {
        return Ok(Term::id(TypeWord(vec![wire])));
    }
    let mut layers = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let p = past.atoms()[k];
        let cross = theory
            .crossing(p, wire)
            .ok_or(Error::CrossingUnavailable { wire: wire.0, past: p.0 })?;
        layers.push(
            Term::id(past.slice(0..k))
                .tensor_with(Term::Gen(cross.clone()))
                .tensor_with(Term::id(past.slice(k + 1..n))),
        );
    }
    seq(layers)
}

fn is_pro_word(w: &TypeWord) -> bool {
    w.atoms().iter().all(|a| a.0 == '1')
}

// Printing: `;` is looser than `*`; both associate to the left.
fn write_term(t: &Term, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
    // ctx: 0 = top / left of `;`, 1 = right of `;`, 2 = left of `*`, 3 = right of `*`
    match t {
        Term::Id(w) if is_pro_word(w) => write!(f, "id:{}", w.len()),
        Term::Id(w) => write!(f, "id({})", w.atoms().iter().map(|a| a.0).collect::<String>()),
        Term::Gen(g) => write!(f, "{}", g.name),
        Term::Compose(a, b) => {
            let paren = ctx != 0;
            if paren {
                write!(f, "(")?;
            }
            write_term(a, f, 0)?;
            write!(f, " ; ")?;
            write_term(b, f, 1)?;
            if paren {
                write!(f, ")")?;
            }
            Ok(())
        }
        Term::Tensor(a, b) => {
            let paren = ctx == 3;
            if paren {
                write!(f, "(")?;
            }
            write_term(a, f, 2)?;
            write!(f, " * ")?;
            write_term(b, f, 3)?;
            if paren {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::builtin_theory;

    fn b() -> EqTheory {
        builtin_theory("B").unwrap()
    }

    #[test]
    fn boundary_of_identity_and_composites() {
        let t = Term::id("OP");
        assert_eq!(t.boundary().unwrap(), ("OP".into(), "OP".into()));

        let th = b();
        let t = compose(tensor(th.gen("eta").unwrap(), Term::id("1")), th.gen("mu").unwrap()).unwrap();
        assert_eq!(t.boundary().unwrap(), ("1".into(), "1".into()));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let th = b();
        let err = compose(th.gen("mu").unwrap(), th.gen("eta").unwrap()).unwrap_err();
        assert!(matches!(err, Error::Boundary { .. }));
        assert!(compose(th.gen("mu").unwrap(), th.gen("mu").unwrap()).is_err());
        let t = compose(Term::id("1"), th.gen("mu").unwrap());
        assert!(t.is_err());
        let t = compose(Term::id("11"), th.gen("mu").unwrap()).unwrap();
        assert_eq!(t.boundary().unwrap(), ("11".into(), "1".into()));
    }

    #[test]
    fn tensor_boundary() {
        let th = b();
        let t = tensor(th.gen("mu").unwrap(), th.gen("eta").unwrap());
        assert_eq!(t.boundary().unwrap(), ("11".into(), "11".into()));
    }

    #[test]
    fn sizes() {
        let th = b();
        assert_eq!(Term::id("OPP").size(), 0);
        assert_eq!(th.gen("mu").unwrap().size(), 1);
        let t = compose(tensor(th.gen("mu").unwrap(), Term::id("1")), th.gen("mu").unwrap()).unwrap();
        assert_eq!(t.size(), 2);
    }

    #[test]
    fn slices() {
        let th = b();
        assert!(Term::id("111").slice_form().unwrap().is_empty());

        let t = tensor(th.gen("mu").unwrap(), Term::id("1"));
        let s = t.slice_form().unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].left.len(), s[0].gen.name.as_str(), s[0].right.len()), (0, "mu", 1));

        let t = compose(tensor(Term::id("1"), th.gen("eta").unwrap()), th.gen("mu").unwrap()).unwrap();
        let s = t.slice_form().unwrap();
        let shape: Vec<_> = s.iter().map(|s| (s.left.len(), s.gen.name.as_str(), s.right.len())).collect();
        assert_eq!(shape, vec![(1, "eta", 0), (0, "mu", 0)]);
    }

    #[test]
    fn stairs_in_b_and_g() {
        let t = stairs(&b(), Atom('1'), &"11".into()).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.boundary().unwrap(), ("111".into(), "111".into()));

        let g = builtin_theory("G").unwrap();
        let t = stairs(&g, Atom('P'), &"O".into()).unwrap();
        assert_eq!(t, g.gen("gammaOP").unwrap());
        let err = stairs(&g, Atom('O'), &"P".into()).unwrap_err();
        assert_eq!(err, Error::CrossingUnavailable { wire: 'O', past: 'P' });
        assert!(stairs(&g, Atom('O'), &"OO".into()).is_ok());
        assert!(stairs(&g, Atom('P'), &"OPO".into()).is_ok());
    }

    #[test]
    fn lift_moves_a_wire_up() {
        let g = builtin_theory("G").unwrap();
        let t = lift(&g, Atom('P'), &"PP".into()).unwrap();
        assert_eq!(t.size(), 2);
        assert!(lift(&g, Atom('P'), &"O".into()).is_err());
    }
}
