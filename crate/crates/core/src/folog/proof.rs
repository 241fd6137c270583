use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::games::{Game, MoveRef, Polarity, Strategy};

use super::syntax::{Arities, FoTerm, Formula, Reader, Sequent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proof {
    Ax(Formula, Formula),
    ForallL(FoTerm, Box<Proof>),
    ForallR(String, Box<Proof>),
    ExistsL(String, Box<Proof>),
    ExistsR(FoTerm, Box<Proof>),
    Cut(Formula, Box<Proof>, Box<Proof>),
}

impl Proof {
    pub fn rule(&self) -> &'static str {
        match self {
            Proof::Ax(..) => "ax",
            Proof::ForallL(..) => "forall-l",
            Proof::ForallR(..) => "forall-r",
            Proof::ExistsL(..) => "exists-l",
            Proof::ExistsR(..) => "exists-r",
            Proof::Cut(..) => "cut",
        }
    }
}

/// S-expression form. Cut formulas containing spaces are written in
/// square brackets.
impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proof::Ax(a, b) => write!(f, "(ax {a} {b})"),
            Proof::ForallL(t, p) => write!(f, "(forall-l {t} {p})"),
            Proof::ForallR(x, p) => write!(f, "(forall-r {x} {p})"),
            Proof::ExistsL(x, p) => write!(f, "(exists-l {x} {p})"),
            Proof::ExistsR(t, p) => write!(f, "(exists-r {t} {p})"),
            Proof::Cut(c, p, q) => match c {
                Formula::Atom(..) => write!(f, "(cut {c} {p} {q})"),
                _ => write!(f, "(cut [{c}] {p} {q})"),
            },
        }
    }
}

impl Reader<'_> {
    fn proof(&mut self) -> Result<Proof> {
        self.expect('(')?;
        let start = self.pos;
        let rule = self.ident()?;
        let p = match rule.as_str() {
            "ax" => {
                let a = self.formula()?;
                let b = self.formula()?;
                if !matches!(a, Formula::Atom(..)) || !matches!(b, Formula::Atom(..)) {
                    return Err(self.err("axiom leaves relate atomic formulas"));
                }
                Proof::Ax(a, b)
            }
            "forall-l" => Proof::ForallL(self.term()?, Box::new(self.proof()?)),
            "exists-r" => Proof::ExistsR(self.term()?, Box::new(self.proof()?)),
            "forall-r" => Proof::ForallR(self.ident()?, Box::new(self.proof()?)),
            "exists-l" => Proof::ExistsL(self.ident()?, Box::new(self.proof()?)),
            "cut" => {
                let c = if self.eat('[') {
                    let c = self.formula()?;
                    self.expect(']')?;
                    c
                } else {
                    self.formula()?
                };
                Proof::Cut(c, Box::new(self.proof()?), Box::new(self.proof()?))
            }
            other => {
                self.pos = start;
                return Err(self.err(format!("unknown rule `{other}`")));
            }
        };
        self.expect(')')?;
        Ok(p)
    }
}

pub fn parse_proof(s: &str) -> Result<Proof> {
    let mut r = Reader::new(s);
    let p = r.proof()?;
    if !r.at_end() {
        return Err(r.err("unexpected trailing input"));
    }
    Ok(p)
}

/// Pairs of atomic formulas granted by `ax`, closed under substitution
/// instances; reflexive pairs are always granted. Transitive composites
/// are not inferred.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomSet {
    pub pairs: Vec<(Formula, Formula)>,
}

impl AxiomSet {
    pub fn new(pairs: Vec<(Formula, Formula)>) -> Result<Self> {
        let mut ar = Arities::default();
        for (a, b) in &pairs {
            if !matches!(a, Formula::Atom(..)) || !matches!(b, Formula::Atom(..)) {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: format!("axiom {a} |- {b} must relate atomic formulas"),
                });
            }
            ar.formula(a)?;
            ar.formula(b)?;
        }
        Ok(AxiomSet { pairs })
    }

    pub fn parse_line(line: &str) -> Result<(Formula, Formula)> {
        let mut r = Reader::new(line);
        let q = r.sequent()?;
        if !r.at_end() {
            return Err(r.err("unexpected trailing input"));
        }
        Ok((q.left, q.right))
    }

    pub fn grants(&self, p: &Formula, q: &Formula) -> bool {
        if p == q {
            return true;
        }
        self.pairs.iter().any(|(a, b)| {
            let mut sub = BTreeMap::new();
            match_formula(a, p, &mut sub) && match_formula(b, q, &mut sub)
        })
    }
}

fn match_formula(pat: &Formula, f: &Formula, sub: &mut BTreeMap<String, FoTerm>) -> bool {
    match (pat, f) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) if p == q && xs.len() == ys.len() => {
            xs.iter().zip(ys).all(|(x, y)| match_term(x, y, sub))
        }
        _ => false,
    }
}

fn match_term(pat: &FoTerm, t: &FoTerm, sub: &mut BTreeMap<String, FoTerm>) -> bool {
    match pat {
        FoTerm::Var(x) => match sub.get(x) {
            Some(bound) => bound == t,
            None => {
                sub.insert(x.clone(), t.clone());
                true
            }
        },
        FoTerm::App(f, xs) => match t {
            FoTerm::App(g, ys) if f == g && xs.len() == ys.len() => {
                xs.iter().zip(ys).all(|(x, y)| match_term(x, y, sub))
            }
            _ => false,
        },
    }
}

/// A proof file: optional `axiom A |- B` lines, then the proof.
#[derive(Debug, Clone)]
pub struct ProofFile {
    pub axioms: AxiomSet,
    pub proof: Proof,
}

pub fn parse_proof_file(text: &str) -> Result<ProofFile> {
    let mut pairs = Vec::new();
    let mut body = String::new();
    for line in text.lines() {
        let t = line.trim();
        if t.starts_with('#') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("axiom ") {
            pairs.push(AxiomSet::parse_line(rest)?);
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    Ok(ProofFile {
        axioms: AxiomSet::new(pairs)?,
        proof: parse_proof(&body)?,
    })
}

fn fail(path: &[&'static str], rule: &'static str, reason: impl Into<String>) -> Error {
    Error::Proof {
        path: if path.is_empty() {
            "root".to_string()
        } else {
            format!("root/{}", path.join("/"))
        },
        rule,
        reason: reason.into(),
    }
}

pub fn check_proof(p: &Proof, seq: &Sequent, axioms: &AxiomSet) -> Result<()> {
    let mut ar = Arities::default();
    ar.formula(&seq.left)?;
    ar.formula(&seq.right)?;
    for (a, b) in &axioms.pairs {
        ar.formula(a)?;
        ar.formula(b)?;
    }
    check_arities(p, &mut ar)?;
    check_at(p, &seq.left, &seq.right, axioms, &mut Vec::new())
}

fn check_arities(p: &Proof, ar: &mut Arities) -> Result<()> {
    match p {
        Proof::Ax(a, b) => {
            ar.formula(a)?;
            ar.formula(b)
        }
        Proof::ForallL(t, q) | Proof::ExistsR(t, q) => {
            ar.term(t)?;
            check_arities(q, ar)
        }
        Proof::ForallR(_, q) | Proof::ExistsL(_, q) => check_arities(q, ar),
        Proof::Cut(c, q, r) => {
            ar.formula(c)?;
            check_arities(q, ar)?;
            check_arities(r, ar)
        }
    }
}

fn check_at(
    p: &Proof,
    a: &Formula,
    b: &Formula,
    axioms: &AxiomSet,
    path: &mut Vec<&'static str>,
) -> Result<()> {
    let rule = p.rule();
    let r = match p {
        Proof::Ax(pa, pb) => {
            if !matches!(a, Formula::Atom(..)) || !matches!(b, Formula::Atom(..)) {
                return Err(fail(path, rule, format!("sequent {a} |- {b} is not atomic")));
            }
            if pa != a || pb != b {
                return Err(fail(path, rule, format!("leaf ({pa}, {pb}) does not match the sequent {a} |- {b}")));
            }
            if !axioms.grants(a, b) {
                return Err(fail(path, rule, format!("({a}, {b}) is not an axiom instance")));
            }
            return Ok(());
        }
        Proof::ForallL(t, q) => match a {
            Formula::Forall(x, body) => {
                path.push(rule);
                check_at(q, &body.subst(x, t), b, axioms, path)
            }
            _ => return Err(fail(path, rule, format!("left formula {a} is not universal"))),
        },
        Proof::ExistsR(t, q) => match b {
            Formula::Exists(x, body) => {
                path.push(rule);
                check_at(q, a, &body.subst(x, t), axioms, path)
            }
            _ => return Err(fail(path, rule, format!("right formula {b} is not existential"))),
        },
        Proof::ForallR(y, q) => match b {
            Formula::Forall(x, body) => {
                if a.free_vars().contains(y) || b.free_vars().contains(y) {
                    return Err(fail(path, rule, format!("eigenvariable {y} is free in the conclusion")));
                }
                path.push(rule);
                check_at(q, a, &body.subst(x, &FoTerm::Var(y.clone())), axioms, path)
            }
            _ => return Err(fail(path, rule, format!("right formula {b} is not universal"))),
        },
        Proof::ExistsL(y, q) => match a {
            Formula::Exists(x, body) => {
                if a.free_vars().contains(y) || b.free_vars().contains(y) {
                    return Err(fail(path, rule, format!("eigenvariable {y} is free in the conclusion")));
                }
                path.push(rule);
                check_at(q, &body.subst(x, &FoTerm::Var(y.clone())), b, axioms, path)
            }
            _ => return Err(fail(path, rule, format!("left formula {a} is not existential"))),
        },
        Proof::Cut(c, q1, q2) => {
            path.push("cut.1");
            check_at(q1, a, c, axioms, path)?;
            path.pop();
            path.push("cut.2");
            check_at(q2, c, b, axioms, path)
        }
    };
    path.pop();
    r
}

/// One move per quantifier, outermost first: `∀` is an Opponent move and
/// `∃` a Proponent move.
pub fn game_of_formula(a: &Formula) -> Game {
    let mut out = Vec::new();
    let mut cur = a;
    loop {
        match cur {
            Formula::Atom(..) => return Game(out),
            Formula::Forall(_, b) => {
                out.push(Polarity::O);
                cur = b;
            }
            Formula::Exists(_, b) => {
                out.push(Polarity::P);
                cur = b;
            }
        }
    }
}

/// Moves are abstract nodes while interpreting so that cut formulas can
/// contribute internal moves that are later hidden.
type Node = usize;

struct Interp {
    next: Node,
    edges: Vec<(Node, Node)>,
}

/// The strategy `⟦A⟧ → ⟦B⟧` of a checked proof of `A ⊢ B`: an eigenvariable
/// move justifies every witness move whose term mentions it.
pub fn interpret_proof(p: &Proof, seq: &Sequent, axioms: &AxiomSet) -> Result<Strategy> {
    check_proof(p, seq, axioms)?;
    let src = game_of_formula(&seq.left);
    let tgt = game_of_formula(&seq.right);
    let a_nodes: Vec<Node> = (0..src.len()).collect();
    let b_nodes: Vec<Node> = (src.len()..src.len() + tgt.len()).collect();
    let mut st = Interp {
        next: src.len() + tgt.len(),
        edges: Vec::new(),
    };
    interpret_at(p, &seq.left, &seq.right, &a_nodes, &b_nodes, &HashMap::new(), &mut st);
    let to_move = |n: Node| {
        if n < src.len() {
            MoveRef::src(n)
        } else {
            MoveRef::tgt(n - src.len())
        }
    };
    let mut out = Strategy::empty(src.clone(), tgt.clone());
    for (x, y) in st.edges {
        let (a, b) = (to_move(x), to_move(y));
        if out.arena_polarity(a) == Polarity::O && out.arena_polarity(b) == Polarity::P {
            out.deps.insert((a, b));
        }
    }
    Ok(out)
}

fn witness_edges(t: &FoTerm, to: Node, env: &HashMap<String, Node>, st: &mut Interp) {
    for v in t.free_vars() {
        if let Some(&from) = env.get(&v) {
            st.edges.push((from, to));
        }
    }
}

fn interpret_at(
    p: &Proof,
    a: &Formula,
    b: &Formula,
    a_nodes: &[Node],
    b_nodes: &[Node],
    env: &HashMap<String, Node>,
    st: &mut Interp,
) {
    let bind = |y: &String, n: Node| {
        let mut e = env.clone();
        e.insert(y.clone(), n);
        e
    };
    match (p, a, b) {
        (Proof::Ax(..), _, _) => {}
        (Proof::ForallL(t, q), Formula::Forall(x, body), _) => {
            witness_edges(t, a_nodes[0], env, st);
            interpret_at(q, &body.subst(x, t), b, &a_nodes[1..], b_nodes, env, st);
        }
        (Proof::ExistsR(t, q), _, Formula::Exists(x, body)) => {
            witness_edges(t, b_nodes[0], env, st);
            interpret_at(q, a, &body.subst(x, t), a_nodes, &b_nodes[1..], env, st);
        }
        (Proof::ForallR(y, q), _, Formula::Forall(x, body)) => {
            let e = bind(y, b_nodes[0]);
            let body = body.subst(x, &FoTerm::Var(y.clone()));
            interpret_at(q, a, &body, a_nodes, &b_nodes[1..], &e, st);
        }
        (Proof::ExistsL(y, q), Formula::Exists(x, body), _) => {
            let e = bind(y, a_nodes[0]);
            let body = body.subst(x, &FoTerm::Var(y.clone()));
            interpret_at(q, &body, b, &a_nodes[1..], b_nodes, &e, st);
        }
        (Proof::Cut(c, q1, q2), _, _) => {
            let k = c.quantifier_count();
            let mid: Vec<Node> = (st.next..st.next + k).collect();
            st.next += k;
            let mut inner = Interp {
                next: st.next,
                edges: Vec::new(),
            };
            interpret_at(q1, a, c, a_nodes, &mid, env, &mut inner);
            interpret_at(q2, c, b, &mid, b_nodes, env, &mut inner);
            st.next = inner.next;
            hide(&inner.edges, &mid.iter().copied().collect(), &mut st.edges);
        }
        _ => unreachable!("proof was checked"),
    }
}

/// Chains edges through hidden nodes and keeps the pairs between visible ones.
fn hide(edges: &[(Node, Node)], hidden: &BTreeSet<Node>, out: &mut Vec<(Node, Node)>) {
    let mut succ: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for &(x, y) in edges {
        succ.entry(x).or_default().push(y);
    }
    for &start in succ.keys().filter(|n| !hidden.contains(n)) {
        let mut seen = BTreeSet::new();
        let mut stack = succ[&start].clone();
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            if hidden.contains(&n) {
                stack.extend(succ.get(&n).into_iter().flatten().copied());
            } else {
                out.push((start, n));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folog::syntax::{parse_formula, parse_sequent};
    use crate::games::{compose_strategies, generator_strategy};

    fn example(witness: &str) -> (Proof, Sequent, AxiomSet) {
        let seq = parse_sequent("exists x. exists y. P(x,y) |- exists z. Q(z)").unwrap();
        let ax = format!("P(x,y) |- Q({witness})");
        let axioms = AxiomSet::new(vec![AxiomSet::parse_line(&ax).unwrap()]).unwrap();
        let p = parse_proof(&format!(
            "(exists-l x (exists-l y (exists-r {witness} (ax P(x,y) Q({witness})))))"
        ))
        .unwrap();
        (p, seq, axioms)
    }

    #[test]
    fn the_three_witness_shapes() {
        let (p, q, ax) = example("f(x,y)");
        assert_eq!(interpret_proof(&p, &q, &ax).unwrap(), generator_strategy("muP").unwrap());
        let (p, q, ax) = example("g(x)");
        let s = interpret_proof(&p, &q, &ax).unwrap();
        assert_eq!(s.deps, [(MoveRef::src(0), MoveRef::tgt(0))].into_iter().collect());
        let (p, q, ax) = example("c()");
        assert!(interpret_proof(&p, &q, &ax).unwrap().deps.is_empty());
    }

    #[test]
    fn eigenvariable_condition() {
        let seq = parse_sequent("exists x. P(x) |- exists z. Q(z,x)").unwrap();
        let axioms = AxiomSet::new(vec![AxiomSet::parse_line("P(x) |- Q(x,x)").unwrap()]).unwrap();
        let p = parse_proof("(exists-l x (exists-r x (ax P(x) Q(x,x))))").unwrap();
        match check_proof(&p, &seq, &axioms) {
            Err(Error::Proof { rule, reason, .. }) => {
                assert_eq!(rule, "exists-l");
                assert!(reason.contains("eigenvariable"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn axiom_failure() {
        let seq = parse_sequent("P |- Q").unwrap();
        let p = parse_proof("(ax P Q)").unwrap();
        let e = check_proof(&p, &seq, &AxiomSet::default()).unwrap_err();
        assert!(e.to_string().contains("not an axiom instance"), "{e}");
        let refl = parse_sequent("P(c()) |- P(c())").unwrap();
        check_proof(&parse_proof("(ax P(c()) P(c()))").unwrap(), &refl, &AxiomSet::default()).unwrap();
    }

    #[test]
    fn axiom_instances_are_matched() {
        let ax = AxiomSet::new(vec![AxiomSet::parse_line("P(x,y) |- Q(f(x,y))").unwrap()]).unwrap();
        let p = |s: &str| parse_formula(s).unwrap();
        assert!(ax.grants(&p("P(a(),g(b()))"), &p("Q(f(a(),g(b())))")));
        assert!(!ax.grants(&p("P(a(),b())"), &p("Q(f(b(),a()))")));
        assert!(AxiomSet::new(vec![(p("forall x. P(x)"), p("Q"))]).is_err());
    }

    #[test]
    fn games_of_formulas() {
        assert_eq!(game_of_formula(&parse_formula("P(t)").unwrap()), Game::default());
        assert_eq!(game_of_formula(&parse_formula("forall y. exists z. Q").unwrap()).to_string(), "OP");
        assert_eq!(game_of_formula(&parse_formula("exists x. exists y. P").unwrap()).to_string(), "PP");
    }

    #[test]
    fn cut_composes() {
        // exists x. P(x) |- exists y. R(y) through exists z. Q(z)
        let ax = AxiomSet::new(vec![
            AxiomSet::parse_line("P(x) |- Q(x)").unwrap(),
            AxiomSet::parse_line("Q(x) |- R(x)").unwrap(),
        ])
        .unwrap();
        let seq = parse_sequent("exists x. P(x) |- exists y. R(y)").unwrap();
        let p = parse_proof(
            "(cut [exists z. Q(z)] (exists-l x (exists-r x (ax P(x) Q(x)))) (exists-l z (exists-r z (ax Q(z) R(z)))))",
        )
        .unwrap();
        let s = interpret_proof(&p, &seq, &ax).unwrap();
        let one = generator_strategy("deltaP").unwrap();
        let copy = crate::games::identity_strategy(&one.src);
        assert_eq!(s, compose_strategies(&copy, &copy).unwrap());
        assert_eq!(parse_proof(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn proof_files() {
        let f = parse_proof_file("# example\naxiom P(x,y) |- Q(f(x,y))\n(exists-l x (exists-l y (exists-r f(x,y) (ax P(x,y) Q(f(x,y))))))\n").unwrap();
        assert_eq!(f.axioms.pairs.len(), 1);
        assert_eq!(f.proof.rule(), "exists-l");
        assert!(parse_proof("(foo x)").is_err());
        assert!(parse_proof("(ax P Q) extra").is_err());
    }
}
