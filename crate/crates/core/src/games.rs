//! Filiform games and strategies given by causal dependencies between moves.
//!
//! A strategy `A → B` lives on the arena `A* ⊗ B`: source moves have the
//! polarity opposite to their letter, target moves keep theirs. A dependency
//! `(m, n)` goes from an arena-Opponent move `m` to an arena-Proponent move
//! `n` and reads "m is played before n".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::Model;
use crate::signature::{Atom, GeneratorDecl, TypeWord};
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    O,
    P,
}

impl Polarity {
    pub fn dual(self) -> Polarity {
        match self {
            Polarity::O => Polarity::P,
            Polarity::P => Polarity::O,
        }
    }

    pub fn atom(self) -> Atom {
        match self {
            Polarity::O => Atom('O'),
            Polarity::P => Atom('P'),
        }
    }

    pub fn letter(self) -> char {
        self.atom().0
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A filiform game: moves in play order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Game(pub Vec<Polarity>);

impl Game {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn before(&self, other: &Game) -> Game {
        Game(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn type_word(&self) -> TypeWord {
        TypeWord(self.0.iter().map(|p| p.atom()).collect())
    }

    pub fn from_type_word(w: &TypeWord) -> Result<Game> {
        w.atoms()
            .iter()
            .map(|a| match a.0 {
                'O' => Ok(Polarity::O),
                'P' => Ok(Polarity::P),
                c => Err(Error::UnknownAtom(c)),
            })
            .collect::<Result<Vec<_>>>()
            .map(Game)
    }

    pub fn slice(&self, r: std::ops::Range<usize>) -> Game {
        Game(self.0[r].to_vec())
    }

    /// Every game with exactly `n` moves.
    pub fn all_of_size(n: usize) -> Vec<Game> {
        (0u32..1 << n)
            .map(|code| {
                Game((0..n).map(|i| if code >> i & 1 == 1 { Polarity::P } else { Polarity::O }).collect())
            })
            .collect()
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        for p in &self.0 {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Game {
    type Err = Error;

    fn from_str(s: &str) -> Result<Game> {
        let s = s.trim();
        if s == "I" {
            return Ok(Game::default());
        }
        s.chars()
            .enumerate()
            .map(|(pos, c)| match c {
                'O' => Ok(Polarity::O),
                'P' => Ok(Polarity::P),
                _ => Err(Error::Syntax {
                    pos,
                    msg: format!("game letters are O and P, found `{c}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Game)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Src,
    Tgt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveRef {
    pub side: Side,
    pub index: usize,
}

impl MoveRef {
    pub fn src(index: usize) -> MoveRef {
        MoveRef { side: Side::Src, index }
    }

    pub fn tgt(index: usize) -> MoveRef {
        MoveRef { side: Side::Tgt, index }
    }
}

impl fmt::Display for MoveRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Src => "src",
            Side::Tgt => "tgt",
        };
        write!(f, "({side},{})", self.index)
    }
}

pub type Dep = (MoveRef, MoveRef);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strategy {
    pub src: Game,
    pub tgt: Game,
    pub deps: BTreeSet<Dep>,
}

impl Strategy {
    pub fn new(src: Game, tgt: Game, deps: impl IntoIterator<Item = Dep>) -> Strategy {
        Strategy {
            src,
            tgt,
            deps: deps.into_iter().collect(),
        }
    }

    pub fn empty(src: Game, tgt: Game) -> Strategy {
        Strategy::new(src, tgt, [])
    }

    pub fn size(&self) -> usize {
        self.deps.len()
    }

    pub fn game(&self, side: Side) -> &Game {
        match side {
            Side::Src => &self.src,
            Side::Tgt => &self.tgt,
        }
    }

    pub fn letter(&self, m: MoveRef) -> Polarity {
        self.game(m.side).0[m.index]
    }

    /// Polarity of a move in the arena `src* ⊗ tgt`.
    pub fn arena_polarity(&self, m: MoveRef) -> Polarity {
        match m.side {
            Side::Src => self.letter(m).dual(),
            Side::Tgt => self.letter(m),
        }
    }

    pub fn has_deps(&self, m: MoveRef) -> bool {
        self.deps.iter().any(|&(a, b)| a == m || b == m)
    }

    /// Every pair allowed by the polarity condition.
    pub fn candidate_deps(src: &Game, tgt: &Game) -> Vec<Dep> {
        let probe = Strategy::empty(src.clone(), tgt.clone());
        let moves = probe.moves();
        let mut out = Vec::new();
        for &a in &moves {
            for &b in &moves {
                if probe.arena_polarity(a) == Polarity::O && probe.arena_polarity(b) == Polarity::P {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn moves(&self) -> Vec<MoveRef> {
        (0..self.src.len())
            .map(MoveRef::src)
            .chain((0..self.tgt.len()).map(MoveRef::tgt))
            .collect()
    }
}

/// Text form: `src: WORD`, `tgt: WORD`, then one `(side,i)->(side,j)` per line.
impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "src: {}", self.src)?;
        write!(f, "tgt: {}", self.tgt)?;
        for (a, b) in &self.deps {
            write!(f, "\n{a}->{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        let mut src = None;
        let mut tgt = None;
        let mut deps = BTreeSet::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Syntax {
                pos: lineno,
                msg: format!("line {}: {msg}", lineno + 1),
            };
            if let Some(rest) = line.strip_prefix("src:") {
                src = Some(rest.parse::<Game>().map_err(|_| bad("bad source game"))?);
            } else if let Some(rest) = line.strip_prefix("tgt:") {
                tgt = Some(rest.parse::<Game>().map_err(|_| bad("bad target game"))?);
            } else {
                let (a, b) = line.split_once("->").ok_or_else(|| bad("expected `(side,i)->(side,j)`"))?;
                let a = parse_move_ref(a).ok_or_else(|| bad("bad move reference"))?;
                let b = parse_move_ref(b).ok_or_else(|| bad("bad move reference"))?;
                deps.insert((a, b));
            }
        }
        let (Some(src), Some(tgt)) = (src, tgt) else {
            return Err(Error::Syntax {
                pos: 0,
                msg: "strategy needs `src:` and `tgt:` lines".into(),
            });
        };
        Ok(Strategy { src, tgt, deps })
    }
}

fn parse_move_ref(s: &str) -> Option<MoveRef> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (side, idx) = inner.split_once(',')?;
    let index = idx.trim().parse().ok()?;
    match side.trim() {
        "src" => Some(MoveRef::src(index)),
        "tgt" => Some(MoveRef::tgt(index)),
        _ => None,
    }
}

/// Checks the polarity and acyclicity conditions.
pub fn check_strategy(s: &Strategy) -> Result<()> {
    for &(a, b) in &s.deps {
        for m in [a, b] {
            if m.index >= s.game(m.side).len() {
                return Err(Error::Strategy(format!("move {m} is out of range")));
            }
        }
        if s.arena_polarity(a) != Polarity::O || s.arena_polarity(b) != Polarity::P {
            return Err(Error::Strategy(format!(
                "polarity violation: {a}->{b} links an arena {} move to an arena {} move",
                s.arena_polarity(a),
                s.arena_polarity(b)
            )));
        }
    }
    if let Some(cycle) = find_cycle(s) {
        let shown: Vec<String> = cycle.iter().map(|m| m.to_string()).collect();
        return Err(Error::Strategy(format!("cycle violation: {}", shown.join(" -> "))));
    }
    Ok(())
}

pub fn is_strategy(s: &Strategy) -> bool {
    check_strategy(s).is_ok()
}

fn successors(s: &Strategy, m: MoveRef) -> Vec<MoveRef> {
    let mut out: Vec<MoveRef> = s.deps.iter().filter(|d| d.0 == m).map(|d| d.1).collect();
    if m.index + 1 < s.game(m.side).len() {
        out.push(MoveRef {
            side: m.side,
            index: m.index + 1,
        });
    }
    out
}

/// A directed cycle through the game orders and the dependencies, if any.
fn find_cycle(s: &Strategy) -> Option<Vec<MoveRef>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark: BTreeMap<MoveRef, Mark> = s.moves().into_iter().map(|m| (m, Mark::New)).collect();
    for start in s.moves() {
        if mark[&start] != Mark::New {
            continue;
        }
        let mut path = vec![start];
        let mut stack = vec![(start, successors(s, start))];
        mark.insert(start, Mark::Active);
        while let Some((_, next)) = stack.last_mut() {
            match next.pop() {
                Some(n) => match mark[&n] {
                    Mark::Active => {
                        let at = path.iter().position(|&p| p == n).expect("on path");
                        let mut cycle = path[at..].to_vec();
                        cycle.push(n);
                        return Some(cycle);
                    }
                    Mark::New => {
                        mark.insert(n, Mark::Active);
                        path.push(n);
                        stack.push((n, successors(s, n)));
                    }
                    Mark::Done => {}
                },
                None => {
                    let (m, _) = stack.pop().expect("non-empty");
                    mark.insert(m, Mark::Done);
                    path.pop();
                }
            }
        }
    }
    None
}

/// `s` then `t`: dependencies of both, chained through the middle game and
/// restricted to the outer games.
pub fn compose_strategies(s: &Strategy, t: &Strategy) -> Result<Strategy> {
    if s.tgt != t.src {
        return Err(Error::GameMismatch(format!(
            "target {} of the first strategy differs from source {} of the second",
            s.tgt, t.src
        )));
    }
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
    enum Node {
        A(usize),
        B(usize),
        C(usize),
    }
    let from_s = |m: MoveRef| match m.side {
        Side::Src => Node::A(m.index),
        Side::Tgt => Node::B(m.index),
    };
    let from_t = |m: MoveRef| match m.side {
        Side::Src => Node::B(m.index),
        Side::Tgt => Node::C(m.index),
    };
    let mut edges: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for &(a, b) in &s.deps {
        edges.entry(from_s(a)).or_default().push(from_s(b));
    }
    for &(a, b) in &t.deps {
        edges.entry(from_t(a)).or_default().push(from_t(b));
    }
    let outer = |n: Node| match n {
        Node::A(i) => Some(MoveRef::src(i)),
        Node::C(i) => Some(MoveRef::tgt(i)),
        Node::B(_) => None,
    };
    let mut out = Strategy::empty(s.src.clone(), t.tgt.clone());
    let starts: Vec<Node> = (0..s.src.len()).map(Node::A).chain((0..t.tgt.len()).map(Node::C)).collect();
    for start in starts {
        let mut seen = BTreeSet::new();
        let mut stack = edges.get(&start).cloned().unwrap_or_default();
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            match n {
                Node::B(_) => stack.extend(edges.get(&n).into_iter().flatten().copied()),
                _ => {
                    let (a, b) = (outer(start).expect("outer"), outer(n).expect("outer"));
                    if out.arena_polarity(a) == Polarity::O && out.arena_polarity(b) == Polarity::P {
                        out.deps.insert((a, b));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The copycat: each move's arena-Opponent copy justifies its
/// arena-Proponent copy.
pub fn identity_strategy(a: &Game) -> Strategy {
    Strategy::new(
        a.clone(),
        a.clone(),
        a.0.iter().enumerate().map(|(i, p)| match p {
            Polarity::P => (MoveRef::src(i), MoveRef::tgt(i)),
            Polarity::O => (MoveRef::tgt(i), MoveRef::src(i)),
        }),
    )
}

pub fn before_game(a: &Game, b: &Game) -> Game {
    a.before(b)
}

/// `s ⊲ t`: games concatenate and dependencies are shifted into place.
pub fn before_strategy(s: &Strategy, t: &Strategy) -> Strategy {
    let shift = |m: MoveRef| match m.side {
        Side::Src => MoveRef::src(m.index + s.src.len()),
        Side::Tgt => MoveRef::tgt(m.index + s.tgt.len()),
    };
    Strategy::new(
        s.src.before(&t.src),
        s.tgt.before(&t.tgt),
        s.deps.iter().copied().chain(t.deps.iter().map(|&(a, b)| (shift(a), shift(b)))),
    )
}

pub const GENERATOR_NAMES: [&str; 13] = [
    "muO", "etaO", "deltaO", "epsO", "gammaO", "muP", "etaP", "deltaP", "epsP", "gammaP", "etaOP", "epsOP",
    "gammaOP",
];

/// The strategy interpreting each generator of the theory of strategies.
pub fn generator_strategy(name: &str) -> Result<Strategy> {
    use MoveRef as M;
    let g = |s: &str| s.parse::<Game>().expect("literal game");
    let (src, tgt, deps): (&str, &str, Vec<Dep>) = match name {
        "muP" => ("PP", "P", vec![(M::src(0), M::tgt(0)), (M::src(1), M::tgt(0))]),
        "muO" => ("OO", "O", vec![(M::tgt(0), M::src(0)), (M::tgt(0), M::src(1))]),
        "deltaO" => ("O", "OO", vec![(M::tgt(0), M::src(0)), (M::tgt(1), M::src(0))]),
        "deltaP" => ("P", "PP", vec![(M::src(0), M::tgt(0)), (M::src(0), M::tgt(1))]),
        "etaO" => ("I", "O", vec![]),
        "etaP" => ("I", "P", vec![]),
        "epsO" => ("O", "I", vec![]),
        "epsP" => ("P", "I", vec![]),
        "gammaO" => ("OO", "OO", vec![(M::tgt(1), M::src(0)), (M::tgt(0), M::src(1))]),
        "gammaP" => ("PP", "PP", vec![(M::src(0), M::tgt(1)), (M::src(1), M::tgt(0))]),
        "gammaOP" => ("PO", "OP", vec![(M::src(0), M::tgt(1)), (M::tgt(0), M::src(1))]),
        "etaOP" => ("I", "OP", vec![(M::tgt(0), M::tgt(1))]),
        "epsOP" => ("PO", "I", vec![(M::src(0), M::src(1))]),
        other => return Err(Error::UnknownGenerator(other.to_string())),
    };
    Ok(Strategy::new(g(src), g(tgt), deps))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GamesModel;

impl Model for GamesModel {
    type Value = Strategy;

    fn name(&self) -> &'static str {
        "games"
    }

    fn identity(&self, w: &TypeWord) -> Result<Strategy> {
        Ok(identity_strategy(&Game::from_type_word(w)?))
    }

    fn generator(&self, g: &GeneratorDecl) -> Result<Strategy> {
        generator_strategy(&g.name).map_err(|_| Error::Unsupported {
            model: "games",
            what: g.name.clone(),
        })
    }

    fn compose(&self, f: &Strategy, g: &Strategy) -> Result<Strategy> {
        compose_strategies(f, g)
    }

    fn tensor(&self, f: &Strategy, g: &Strategy) -> Result<Strategy> {
        Ok(before_strategy(f, g))
    }
}

pub fn eval_games(t: &Term) -> Result<Strategy> {
    crate::model::eval(&GamesModel, t)
}

/// Every strategy between two games, by brute force over subsets of the
/// polarity-legal pairs. At most `max_candidates` pairs are allowed.
pub fn enumerate_strategies(src: &Game, tgt: &Game, max_candidates: usize) -> Result<Vec<Strategy>> {
    let cands = Strategy::candidate_deps(src, tgt);
    if cands.len() > max_candidates || cands.len() >= 64 {
        return Err(Error::Bound(format!(
            "{} candidate dependencies between {src} and {tgt} exceed the bound {max_candidates}",
            cands.len()
        )));
    }
    let mut out = Vec::new();
    for code in 0u64..1 << cands.len() {
        let s = Strategy::new(
            src.clone(),
            tgt.clone(),
            cands.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, d)| *d),
        );
        if is_strategy(&s) {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}
