use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FoTerm {
    Var(String),
    App(String, Vec<FoTerm>),
}

impl FoTerm {
    pub fn var(name: &str) -> FoTerm {
        FoTerm::Var(name.to_string())
    }

    pub fn app(f: &str, args: Vec<FoTerm>) -> FoTerm {
        FoTerm::App(f.to_string(), args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            FoTerm::Var(x) => {
                out.insert(x.clone());
            }
            FoTerm::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn subst(&self, x: &str, t: &FoTerm) -> FoTerm {
        match self {
            FoTerm::Var(y) if y == x => t.clone(),
            FoTerm::Var(_) => self.clone(),
            FoTerm::App(f, args) => FoTerm::App(f.clone(), args.iter().map(|a| a.subst(x, t)).collect()),
        }
    }
}

impl fmt::Display for FoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoTerm::Var(x) => write!(f, "{x}"),
            FoTerm::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<FoTerm>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(p: &str, args: Vec<FoTerm>) -> Formula {
        Formula::Atom(p.to_string(), args)
    }

    pub fn forall(x: &str, body: Formula) -> Formula {
        Formula::Forall(x.to_string(), Box::new(body))
    }

    pub fn exists(x: &str, body: Formula) -> Formula {
        Formula::Exists(x.to_string(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Atom(_, args) => args.iter().flat_map(|a| a.free_vars()).collect(),
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let mut v = b.free_vars();
                v.remove(x);
                v
            }
        }
    }

    fn all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                out.insert(x.clone());
                b.all_vars(out);
            }
        }
    }

    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::Atom(..) => 0,
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.quantifier_count(),
        }
    }

    /// Capture-avoiding `self[t/x]`; bound variables that would capture a
    /// variable of `t` are renamed by priming.
    pub fn subst(&self, x: &str, t: &FoTerm) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.subst(x, t)).collect()),
            Formula::Forall(y, b) | Formula::Exists(y, b) => {
                let rebuild = |y: String, b: Formula| match self {
                    Formula::Forall(..) => Formula::Forall(y, Box::new(b)),
                    _ => Formula::Exists(y, Box::new(b)),
                };
                if y == x || !b.free_vars().contains(x) {
                    return self.clone();
                }
                if t.free_vars().contains(y) {
                    let mut avoid = t.free_vars();
                    b.all_vars(&mut avoid);
                    avoid.insert(x.to_string());
                    let fresh = fresh_name(y, &avoid);
                    let renamed = b.subst(y, &FoTerm::Var(fresh.clone()));
                    rebuild(fresh, renamed.subst(x, t))
                } else {
                    rebuild(y.clone(), b.subst(x, t))
                }
            }
        }
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn go<'a>(
            a: &'a Formula,
            b: &'a Formula,
            env: &mut Vec<(&'a str, &'a str)>,
        ) -> bool {
            match (a, b) {
                (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
                    p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| term_eq(s, t, env))
                }
                (Formula::Forall(x, s), Formula::Forall(y, t)) | (Formula::Exists(x, s), Formula::Exists(y, t)) => {
                    env.push((x, y));
                    let r = go(s, t, env);
                    env.pop();
                    r
                }
                _ => false,
            }
        }
        fn term_eq(s: &FoTerm, t: &FoTerm, env: &[(&str, &str)]) -> bool {
            match (s, t) {
                (FoTerm::Var(x), FoTerm::Var(y)) => {
                    for &(bx, by) in env.iter().rev() {
                        if bx == x || by == y {
                            return bx == x && by == y;
                        }
                    }
                    x == y
                }
                (FoTerm::App(f, xs), FoTerm::App(g, ys)) => {
                    f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| term_eq(a, b, env))
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }
}

pub(crate) fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p, args) if args.is_empty() => write!(f, "{p}"),
            Formula::Atom(p, args) => write!(f, "{}", FoTerm::App(p.clone(), args.clone())),
            Formula::Forall(x, b) => write!(f, "forall {x}. {b}"),
            Formula::Exists(x, b) => write!(f, "exists {x}. {b}"),
        }
    }
}

/// `left ⊢ right`, one formula on each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent {
    pub left: Formula,
    pub right: Formula,
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.left, self.right)
    }
}

/// Symbol arities seen so far; a symbol used with two arities is an error.
#[derive(Debug, Default)]
pub struct Arities {
    seen: BTreeMap<(bool, String), usize>,
}

impl Arities {
    pub fn formula(&mut self, a: &Formula) -> Result<()> {
        match a {
            Formula::Atom(p, args) => {
                self.note(true, p, args.len())?;
                args.iter().try_for_each(|t| self.term(t))
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => self.formula(b),
        }
    }

    pub fn term(&mut self, t: &FoTerm) -> Result<()> {
        if let FoTerm::App(f, args) = t {
            self.note(false, f, args.len())?;
            args.iter().try_for_each(|a| self.term(a))?;
        }
        Ok(())
    }

    fn note(&mut self, prop: bool, name: &str, n: usize) -> Result<()> {
        match self.seen.insert((prop, name.to_string()), n) {
            Some(m) if m != n => Err(Error::Syntax {
                pos: 0,
                msg: format!("`{name}` used with arities {m} and {n}"),
            }),
            _ => Ok(()),
        }
    }
}

pub(crate) struct Reader<'a> {
    pub src: &'a str,
    pub pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(src: &'a str) -> Self {
        Reader { src, pos: 0 }
    }

    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\'' || (c == '-' && self.pos > start) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if start == self.pos || !self.src[start..].starts_with(|c: char| c.is_alphabetic() || c == '_') {
            self.pos = start;
            return Err(self.err("expected an identifier"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    pub fn term(&mut self) -> Result<FoTerm> {
        let name = self.ident()?;
        if self.peek() == Some('(') {
            self.pos += 1;
            let args = self.args()?;
            Ok(FoTerm::App(name, args))
        } else {
            Ok(FoTerm::Var(name))
        }
    }

    /// Arguments after an opening parenthesis, through the closing one.
    fn args(&mut self) -> Result<Vec<FoTerm>> {
        let mut args = Vec::new();
        if self.eat(')') {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.eat(')') {
                return Ok(args);
            }
            self.expect(',')?;
        }
    }

    pub fn formula(&mut self) -> Result<Formula> {
        self.skip_ws();
        let save = self.pos;
        for (kw, forall) in [("forall", true), ("exists", false), ("∀", true), ("∃", false)] {
            if self.eat_str(kw) {
                let next = self.peek();
                let is_word = kw.is_ascii();
                if is_word && !matches!(next, Some(c) if c.is_whitespace()) {
                    self.pos = save;
                    continue;
                }
                let x = self.ident()?;
                self.expect('.')?;
                let body = self.formula()?;
                return Ok(if forall {
                    Formula::Forall(x, Box::new(body))
                } else {
                    Formula::Exists(x, Box::new(body))
                });
            }
        }
        let p = self.ident()?;
        if self.peek() == Some('(') {
            self.pos += 1;
            Ok(Formula::Atom(p, self.args()?))
        } else {
            Ok(Formula::Atom(p, Vec::new()))
        }
    }

    pub fn sequent(&mut self) -> Result<Sequent> {
        let left = self.formula()?;
        if !(self.eat_str("|-") || self.eat_str("⊢")) {
            return Err(self.err("expected `|-`"));
        }
        let right = self.formula()?;
        Ok(Sequent { left, right })
    }
}

pub fn parse_formula(s: &str) -> Result<Formula> {
    let mut r = Reader::new(s);
    let f = r.formula()?;
    if !r.at_end() {
        return Err(r.err("unexpected trailing input"));
    }
    Arities::default().formula(&f)?;
    Ok(f)
}

pub fn parse_fo_term(s: &str) -> Result<FoTerm> {
    let mut r = Reader::new(s);
    let t = r.term()?;
    if !r.at_end() {
        return Err(r.err("unexpected trailing input"));
    }
    Ok(t)
}

pub fn parse_sequent(s: &str) -> Result<Sequent> {
    let mut r = Reader::new(s);
    let q = r.sequent()?;
    if !r.at_end() {
        return Err(r.err("unexpected trailing input"));
    }
    let mut ar = Arities::default();
    ar.formula(&q.left)?;
    ar.formula(&q.right)?;
    Ok(q)
}
