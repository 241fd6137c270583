//! Signatures and monoidal equational theories.
//!
//! A signature declares atomic types and typed generators; a theory adds
//! labelled relations between closed terms. Sources and targets of
//! generators live in the free monoid on atoms ([`TypeWord`]).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::term::Term;

/// Atomic type, written as a single character (`1`, `O`, `P`, `L`, `R`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub char);

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An object of the free monoidal category: a word of atoms. The empty word
/// is the tensor unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeWord(pub Vec<Atom>);

impl TypeWord {
    pub fn unit() -> Self {
        TypeWord(Vec::new())
    }

    pub fn repeat(atom: Atom, n: usize) -> Self {
        TypeWord(vec![atom; n])
    }

    /// Parses a word such as `OPP`; `I` and the empty string denote the unit.
    pub fn parse(s: &str) -> Self {
        if s == "I" {
            return TypeWord::unit();
        }
        TypeWord(s.chars().filter(|c| !c.is_whitespace()).map(Atom).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn concat(&self, other: &TypeWord) -> TypeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TypeWord(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> TypeWord {
        TypeWord(self.0[range].to_vec())
    }
}

impl fmt::Display for TypeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl From<&str> for TypeWord {
    fn from(s: &str) -> Self {
        TypeWord::parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorDecl {
    pub name: String,
    pub source: TypeWord,
    pub target: TypeWord,
}

/// A labelled equation between two terms with identical boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqTheory {
    pub name: String,
    pub atoms: Vec<Atom>,
    pub generators: Vec<Arc<GeneratorDecl>>,
    pub relations: Vec<Relation>,
}

/// One problem found by [`validate_theory`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.relation, self.message)
    }
}

impl EqTheory {
    pub fn new(name: &str, atoms: &[char]) -> Self {
        EqTheory {
            name: name.to_string(),
            atoms: atoms.iter().copied().map(Atom).collect(),
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// Declares a generator and returns it as a term.
    pub fn declare(&mut self, name: &str, source: &str, target: &str) -> Term {
        let decl = Arc::new(GeneratorDecl {
            name: name.to_string(),
            source: TypeWord::parse(source),
            target: TypeWord::parse(target),
        });
        self.generators.push(decl.clone());
        Term::Gen(decl)
    }

    pub fn relate(&mut self, label: &str, lhs: Term, rhs: Term) {
        self.relations.push(Relation {
            label: label.to_string(),
            lhs,
            rhs,
        });
    }

    pub fn generator(&self, name: &str) -> Result<&Arc<GeneratorDecl>> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen(&self, name: &str) -> Result<Term> {
        self.generator(name).map(|g| Term::Gen(g.clone()))
    }

    pub fn relation(&self, label: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.label == label)
    }

    /// The sole atom of a single-sorted (PRO) theory.
    pub fn single_atom(&self) -> Option<Atom> {
        match self.atoms.as_slice() {
            [a] => Some(*a),
            _ => None,
        }
    }

    /// A generator of shape `ab -> ba` named `gamma*`, if one exists.
    pub fn crossing(&self, a: Atom, b: Atom) -> Option<&Arc<GeneratorDecl>> {
        self.generators.iter().find(|g| {
            g.name.starts_with("gamma")
                && g.source.0 == [a, b]
                && g.target.0 == [b, a]
        })
    }

    fn check_atoms(&self, w: &TypeWord) -> Result<()> {
        match w.0.iter().find(|a| !self.atoms.contains(a)) {
            Some(a) => Err(Error::UnknownAtom(a.0)),
            None => Ok(()),
        }
    }

    fn check_term(&self, t: &Term) -> Result<()> {
        match t {
            Term::Id(w) => self.check_atoms(w),
            Term::Gen(g) => {
                let decl = self.generator(&g.name)?;
                if **decl != **g {
                    return Err(Error::UnknownGenerator(format!(
                        "{} (declared {} -> {}, used {} -> {})",
                        g.name, decl.source, decl.target, g.source, g.target
                    )));
                }
                Ok(())
            }
            Term::Compose(a, b) | Term::Tensor(a, b) => {
                self.check_term(a)?;
                self.check_term(b)
            }
        }
    }
}

impl fmt::Display for EqTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theory {}", self.name)?;
        let atoms: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        writeln!(f, "atoms {}", atoms.join(" "))?;
        for g in &self.generators {
            writeln!(f, "gen {} : {} -> {}", g.name, g.source, g.target)?;
        }
        for r in &self.relations {
            writeln!(f, "rel {} : {} = {}", r.label, r.lhs, r.rhs)?;
        }
        Ok(())
    }
}

/// Checks that every generator and relation only mentions declared names and
/// that both sides of each relation share source and target.
pub fn validate_theory(theory: &EqTheory) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, g) in theory.generators.iter().enumerate() {
        if theory.generators[..i].iter().any(|h| h.name == g.name) {
            out.push(Violation {
                relation: format!("generator {}", g.name),
                message: "duplicate generator name".into(),
            });
        }
        for w in [&g.source, &g.target] {
            if let Err(e) = theory.check_atoms(w) {
                out.push(Violation {
                    relation: format!("generator {}", g.name),
                    message: e.to_string(),
                });
            }
        }
    }
    for r in &theory.relations {
        let mut push = |message: String| {
            out.push(Violation {
                relation: r.label.clone(),
                message,
            })
        };
        if let Err(e) = theory.check_term(&r.lhs).and(theory.check_term(&r.rhs)) {
            push(e.to_string());
            continue;
        }
        match (r.lhs.boundary(), r.rhs.boundary()) {
            (Ok((ls, lt)), Ok((rs, rt))) => {
                if ls != rs {
                    push(format!("source mismatch {}≠{}", show_len(&ls), show_len(&rs)));
                }
                if lt != rt {
                    push(format!("target mismatch {}≠{}", show_len(&lt), show_len(&rt)));
                }
            }
            (Err(e), _) | (_, Err(e)) => push(e.to_string()),
        }
    }
    out
}

// Single-sorted words print as their length, the usual PRO convention.
fn show_len(w: &TypeWord) -> String {
    if w.0.iter().all(|a| a.0 == '1') {
        w.len().to_string()
    } else {
        w.to_string()
    }
}
