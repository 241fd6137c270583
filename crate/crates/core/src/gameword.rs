//! Words over the polarized letters `Z`, `W^X_i`, `E^X`, `H^X`, `A_i`, `B_i`
//! and their reading as strategies.
//!
//! Letters act right to left on an inner strategy `φ′ : A → B`:
//!
//! * `H^X` prepends a target move `X` with no dependency;
//! * `E^X` prepends a source move `X` with no dependency;
//! * `W^X_i` links source move 0 (letter `X`) and target move `i` (letter
//!   `X`), from source to target when `X = P` and the other way when
//!   `X = O`; for `X = O` the target moves before `i` must all be `O`;
//! * `A_i` bends source move 0 (a `P` with dependencies) into a target `O`
//!   inserted at index `i`, after target moves that are all `O`;
//! * `B_i` bends target move 0 (an `O` with dependencies) into a source `P`
//!   inserted at index `i`, after source moves that are all `P`.
//!
//! The canonical word of a strategy is the first shortest word found by a
//! breadth-first search that peels letters off in the fixed order W (target
//! index descending), E, H, A (index ascending), B (index ascending).

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::games::{check_strategy, Dep, Game, MoveRef, Polarity, Side, Strategy};
use crate::signature::EqTheory;
use crate::term::{lift, seq, stairs, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GLetter {
    Z,
    W(Polarity, usize),
    E(Polarity),
    H(Polarity),
    A(usize),
    B(usize),
}

impl fmt::Display for GLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GLetter::Z => write!(f, "Z"),
            GLetter::W(x, i) => write!(f, "W^{x}{i}"),
            GLetter::E(x) => write!(f, "E^{x}"),
            GLetter::H(x) => write!(f, "H^{x}"),
            GLetter::A(i) => write!(f, "A{i}"),
            GLetter::B(i) => write!(f, "B{i}"),
        }
    }
}

impl FromStr for GLetter {
    type Err = Error;

    fn from_str(tok: &str) -> Result<GLetter> {
        let bad = || Error::Syntax {
            pos: 0,
            msg: format!("unknown letter `{tok}`"),
        };
        let pol = |c: Option<char>| match c {
            Some('O') => Ok(Polarity::O),
            Some('P') => Ok(Polarity::P),
            _ => Err(bad()),
        };
        if tok == "Z" {
            return Ok(GLetter::Z);
        }
        if let Some(rest) = tok.strip_prefix("W^") {
            let x = pol(rest.chars().next())?;
            let i = rest[1..].parse().map_err(|_| bad())?;
            return Ok(GLetter::W(x, i));
        }
        for (prefix, mk) in [("E^", GLetter::E as fn(Polarity) -> GLetter), ("H^", GLetter::H)] {
            if let Some(rest) = tok.strip_prefix(prefix) {
                if rest.len() != 1 {
                    return Err(bad());
                }
                return Ok(mk(pol(rest.chars().next())?));
            }
        }
        for (prefix, mk) in [("A", GLetter::A as fn(usize) -> GLetter), ("B", GLetter::B)] {
            if let Some(rest) = tok.strip_prefix(prefix) {
                return rest.parse().map(mk).map_err(|_| bad());
            }
        }
        Err(bad())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameWord(pub Vec<GLetter>);

impl GameWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GameWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GameWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<GameWord> {
        let mut out = Vec::new();
        let mut offset = 0;
        for tok in s.split_whitespace() {
            let pos = s[offset..].find(tok).map_or(offset, |p| p + offset);
            offset = pos + tok.len();
            out.push(tok.parse::<GLetter>().map_err(|e| match e {
                Error::Syntax { msg, .. } => Error::Syntax { pos, msg },
                e => e,
            })?);
        }
        Ok(GameWord(out))
    }
}

fn remap(s: &Strategy, src: Game, tgt: Game, f: impl Fn(MoveRef) -> MoveRef) -> Strategy {
    Strategy::new(src, tgt, s.deps.iter().map(|&(a, b)| (f(a), f(b))))
}

fn all(g: &Game, r: std::ops::Range<usize>, p: Polarity) -> bool {
    g.0[r].iter().all(|&x| x == p)
}

fn w_dep(x: Polarity, i: usize) -> Dep {
    match x {
        Polarity::P => (MoveRef::src(0), MoveRef::tgt(i)),
        Polarity::O => (MoveRef::tgt(i), MoveRef::src(0)),
    }
}

/// Applies one letter to the inner strategy, or explains why it does not
/// type.
pub fn apply_letter(l: GLetter, s: &Strategy) -> std::result::Result<Strategy, String> {
    let out = match l {
        GLetter::Z => return Err("Z may only appear last".into()),
        GLetter::H(x) => {
            let mut tgt = vec![x];
            tgt.extend(&s.tgt.0);
            remap(s, s.src.clone(), Game(tgt), |m| match m.side {
                Side::Tgt => MoveRef::tgt(m.index + 1),
                Side::Src => m,
            })
        }
        GLetter::E(x) => {
            let mut src = vec![x];
            src.extend(&s.src.0);
            remap(s, Game(src), s.tgt.clone(), |m| match m.side {
                Side::Src => MoveRef::src(m.index + 1),
                Side::Tgt => m,
            })
        }
        GLetter::W(x, i) => {
            if s.src.0.first() != Some(&x) {
                return Err(format!("source move 0 must be {x}"));
            }
            if s.tgt.0.get(i) != Some(&x) {
                return Err(format!("target move {i} must be {x}"));
            }
            if x == Polarity::O && !all(&s.tgt, 0..i, Polarity::O) {
                return Err("an O wire cannot cross a P wire".into());
            }
            let mut out = s.clone();
            if !out.deps.insert(w_dep(x, i)) {
                return Err("dependency already present".into());
            }
            out
        }
        GLetter::A(i) => {
            if s.src.0.first() != Some(&Polarity::P) || !s.has_deps(MoveRef::src(0)) {
                return Err("source move 0 must be a P with dependencies".into());
            }
            if i > s.tgt.len() || !all(&s.tgt, 0..i, Polarity::O) {
                return Err(format!("cannot insert an O at target index {i}"));
            }
            let mut tgt = s.tgt.0.clone();
            tgt.insert(i, Polarity::O);
            remap(s, s.src.slice(1..s.src.len()), Game(tgt), |m| match m.side {
                Side::Src if m.index == 0 => MoveRef::tgt(i),
                Side::Src => MoveRef::src(m.index - 1),
                Side::Tgt if m.index >= i => MoveRef::tgt(m.index + 1),
                Side::Tgt => m,
            })
        }
        GLetter::B(i) => {
            if s.tgt.0.first() != Some(&Polarity::O) || !s.has_deps(MoveRef::tgt(0)) {
                return Err("target move 0 must be an O with dependencies".into());
            }
            if i > s.src.len() || !all(&s.src, 0..i, Polarity::P) {
                return Err(format!("cannot insert a P at source index {i}"));
            }
            let mut src = s.src.0.clone();
            src.insert(i, Polarity::P);
            remap(s, Game(src), s.tgt.slice(1..s.tgt.len()), |m| match m.side {
                Side::Tgt if m.index == 0 => MoveRef::src(i),
                Side::Tgt => MoveRef::tgt(m.index - 1),
                Side::Src if m.index >= i => MoveRef::src(m.index + 1),
                Side::Src => m,
            })
        }
    };
    check_strategy(&out).map_err(|e| e.to_string())?;
    Ok(out)
}

fn typing_error(w: &GameWord, index: usize, reason: String) -> Error {
    Error::WordTyping {
        index,
        letter: w.0.get(index).map_or("<end>".into(), |l| l.to_string()),
        reason,
    }
}

pub fn gameword_eval(w: &GameWord) -> Result<Strategy> {
    match w.0.last() {
        Some(GLetter::Z) => {}
        _ => return Err(typing_error(w, w.0.len().saturating_sub(1), "word must end with Z".into())),
    }
    let mut s = Strategy::empty(Game::default(), Game::default());
    for (idx, &l) in w.0.iter().enumerate().rev().skip(1) {
        s = apply_letter(l, &s).map_err(|reason| typing_error(w, idx, reason))?;
    }
    Ok(s)
}

/// A term of the theory of strategies evaluating to the word's strategy.
pub fn gameword_to_term(theory: &EqTheory, w: &GameWord) -> Result<Term> {
    gameword_eval(w)?;
    let gen = |x: Polarity, base: &str| theory.gen(&format!("{base}{x}"));
    let id = |g: &Game| Term::id(g.type_word());
    let mut s = Strategy::empty(Game::default(), Game::default());
    let mut acc = id(&s.src);
    for &l in w.0.iter().rev().skip(1) {
        let (a, b) = (&s.src, &s.tgt);
        acc = match l {
            GLetter::H(x) => join(acc, gen(x, "eta")?.tensor_with(id(b)))?,
            GLetter::E(x) => join(gen(x, "eps")?.tensor_with(id(a)), acc)?,
            GLetter::W(x, i) => {
                let one = Game(vec![x]);
                seq([
                    gen(x, "delta")?.tensor_with(id(&a.slice(1..a.len()))),
                    id(&one).tensor_with(acc),
                    stairs(theory, x.atom(), &b.slice(0..i).type_word())?.tensor_with(id(&b.slice(i..b.len()))),
                    id(&b.slice(0..i))
                        .tensor_with(gen(x, "mu")?)
                        .tensor_with(id(&b.slice(i + 1..b.len()))),
                ])?
            }
            GLetter::A(i) => {
                let rest = a.slice(1..a.len());
                seq([
                    theory.gen("etaOP")?.tensor_with(id(&rest)),
                    id(&Game(vec![Polarity::O])).tensor_with(acc),
                    stairs(theory, Polarity::O.atom(), &b.slice(0..i).type_word())?
                        .tensor_with(id(&b.slice(i..b.len()))),
                ])?
            }
            GLetter::B(i) => seq([
                lift(theory, Polarity::P.atom(), &a.slice(0..i).type_word())?.tensor_with(id(&a.slice(i..a.len()))),
                id(&Game(vec![Polarity::P])).tensor_with(acc),
                theory.gen("epsOP")?.tensor_with(id(&b.slice(1..b.len()))),
            ])?,
            GLetter::Z => unreachable!("checked by evaluation"),
        };
        s = apply_letter(l, &s).expect("checked by evaluation");
    }
    Ok(acc)
}

fn join(a: Term, b: Term) -> Result<Term> {
    crate::multirel::then_skipping_ids(a, b)
}

/// Inverse letter applications available on `s`, in search order.
pub fn peels(s: &Strategy) -> Vec<(GLetter, Strategy)> {
    let mut out = Vec::new();
    if let Some(&x) = s.src.0.first() {
        for i in (0..s.tgt.len()).rev() {
            let d = w_dep(x, i);
            if s.tgt.0[i] == x && s.deps.contains(&d) && (x == Polarity::P || all(&s.tgt, 0..i, Polarity::O)) {
                let mut inner = s.clone();
                inner.deps.remove(&d);
                out.push((GLetter::W(x, i), inner));
            }
        }
        if !s.has_deps(MoveRef::src(0)) {
            let inner = remap(s, s.src.slice(1..s.src.len()), s.tgt.clone(), |m| match m.side {
                Side::Src => MoveRef::src(m.index - 1),
                Side::Tgt => m,
            });
            out.push((GLetter::E(x), inner));
        }
    }
    if let Some(&x) = s.tgt.0.first() {
        if !s.has_deps(MoveRef::tgt(0)) {
            let inner = remap(s, s.src.clone(), s.tgt.slice(1..s.tgt.len()), |m| match m.side {
                Side::Tgt => MoveRef::tgt(m.index - 1),
                Side::Src => m,
            });
            out.push((GLetter::H(x), inner));
        }
    }
    for i in 0..s.tgt.len() {
        if s.tgt.0[i] != Polarity::O || !all(&s.tgt, 0..i, Polarity::O) || !s.has_deps(MoveRef::tgt(i)) {
            continue;
        }
        let mut tgt = s.tgt.0.clone();
        tgt.remove(i);
        let mut src = vec![Polarity::P];
        src.extend(&s.src.0);
        let inner = remap(s, Game(src), Game(tgt), |m| match m.side {
            Side::Tgt if m.index == i => MoveRef::src(0),
            Side::Tgt if m.index > i => MoveRef::tgt(m.index - 1),
            Side::Tgt => m,
            Side::Src => MoveRef::src(m.index + 1),
        });
        if check_strategy(&inner).is_ok() {
            out.push((GLetter::A(i), inner));
        }
    }
    for i in 0..s.src.len() {
        if s.src.0[i] != Polarity::P || !all(&s.src, 0..i, Polarity::P) || !s.has_deps(MoveRef::src(i)) {
            continue;
        }
        let mut src = s.src.0.clone();
        src.remove(i);
        let mut tgt = vec![Polarity::O];
        tgt.extend(&s.tgt.0);
        let inner = remap(s, Game(src), Game(tgt), |m| match m.side {
            Side::Src if m.index == i => MoveRef::tgt(0),
            Side::Src if m.index > i => MoveRef::src(m.index - 1),
            Side::Src => m,
            Side::Tgt => MoveRef::tgt(m.index + 1),
        });
        if check_strategy(&inner).is_ok() {
            out.push((GLetter::B(i), inner));
        }
    }
    out
}

/// Default cap on the number of strategies the canonical-word search visits.
pub const ENCODE_STATE_CAP: usize = 200_000;

/// The canonical word of a strategy.
pub fn encode_strategy(s: &Strategy) -> Result<GameWord> {
    encode_strategy_capped(s, ENCODE_STATE_CAP)
}

pub fn encode_strategy_capped(s: &Strategy, cap: usize) -> Result<GameWord> {
    check_strategy(s)?;
    let empty = Strategy::empty(Game::default(), Game::default());
    let mut parent: HashMap<Strategy, Option<(GLetter, Strategy)>> = HashMap::new();
    parent.insert(s.clone(), None);
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(cur) = queue.pop_front() {
        if cur == empty {
            // Walking back from the empty strategy meets the innermost letter first.
            let mut letters = Vec::new();
            let mut node = cur;
            while let Some(Some((l, outer))) = parent.get(&node) {
                letters.push(*l);
                node = outer.clone();
            }
            letters.reverse();
            letters.push(GLetter::Z);
            return Ok(GameWord(letters));
        }
        for (l, inner) in peels(&cur) {
            if parent.contains_key(&inner) {
                continue;
            }
            if parent.len() >= cap {
                return Err(Error::Bound(format!("canonical-word search exceeded {cap} states")));
            }
            parent.insert(inner.clone(), Some((l, cur.clone())));
            queue.push_back(inner);
        }
    }
    Err(Error::Strategy(format!("no word denotes the strategy\n{s}")))
}

/// Every strategy reachable from the empty one by applying letters while
/// the total number of moves stays within `max_total`.
pub fn reachable_strategies(max_total: usize) -> BTreeSet<Strategy> {
    let start = Strategy::empty(Game::default(), Game::default());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let total = s.src.len() + s.tgt.len();
        let mut letters = Vec::new();
        if total < max_total {
            for x in [Polarity::O, Polarity::P] {
                letters.push(GLetter::H(x));
                letters.push(GLetter::E(x));
            }
        }
        for x in [Polarity::O, Polarity::P] {
            letters.extend((0..s.tgt.len()).map(|i| GLetter::W(x, i)));
        }
        letters.extend((0..=s.tgt.len()).map(GLetter::A));
        letters.extend((0..=s.src.len()).map(GLetter::B));
        for l in letters {
            if let Ok(next) = apply_letter(l, &s) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{eval_games, generator_strategy, identity_strategy};
    use crate::theories::builtin_theory;

    fn w(s: &str) -> GameWord {
        s.parse().unwrap()
    }

    #[test]
    fn letter_text_round_trips() {
        let word = w("A0 H^P B1 W^O12 E^O Z");
        assert_eq!(word.0[3], GLetter::W(Polarity::O, 12));
        assert_eq!(word.to_string(), "A0 H^P B1 W^O12 E^O Z");
        assert!("W^X0 Z".parse::<GameWord>().is_err());
        assert!("E^OP Z".parse::<GameWord>().is_err());
        assert!(matches!("Z Q".parse::<GameWord>(), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn evaluation_examples() {
        let e = gameword_eval(&w("E^P H^P Z")).unwrap();
        assert_eq!(e, Strategy::empty("P".parse().unwrap(), "P".parse().unwrap()));
        assert_eq!(gameword_eval(&w("W^P0 E^P W^P0 E^P H^P Z")).unwrap(), generator_strategy("muP").unwrap());
        assert_eq!(gameword_eval(&w("A0 W^P0 E^P H^P Z")).unwrap(), generator_strategy("etaOP").unwrap());
    }

    #[test]
    fn typing_errors() {
        assert!(gameword_eval(&w("W^P0 E^O H^O Z")).is_err());
        assert!(gameword_eval(&w("W^P0 W^P0 E^P H^P Z")).is_err());
        assert!(gameword_eval(&w("A0 E^P H^P Z")).is_err());
        assert!(gameword_eval(&w("W^O1 E^O H^O H^P Z")).is_err());
        assert!(gameword_eval(&w("E^P")).is_err());
        assert!(gameword_eval(&w("Z E^P Z")).is_err());
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(encode_strategy(&generator_strategy("muP").unwrap()).unwrap().to_string(), "W^P0 E^P W^P0 E^P H^P Z");
        assert_eq!(encode_strategy(&generator_strategy("etaOP").unwrap()).unwrap().to_string(), "A0 W^P0 E^P H^P Z");
        let empty = Strategy::empty(Game::default(), Game::default());
        assert_eq!(encode_strategy(&empty).unwrap().to_string(), "Z");
    }

    #[test]
    fn bend_reaches_the_split_after_unit() {
        let th = builtin_theory("G").unwrap();
        let t = crate::parse::parse_term(&th, "etaOP ; (id(O) * deltaP)").unwrap();
        let s = eval_games(&t).unwrap();
        let word = encode_strategy(&s).unwrap();
        assert_eq!(gameword_eval(&word).unwrap(), s);
    }

    #[test]
    fn generators_round_trip_through_words_and_terms() {
        let th = builtin_theory("G").unwrap();
        for name in crate::games::GENERATOR_NAMES {
            let s = generator_strategy(name).unwrap();
            let word = encode_strategy(&s).unwrap();
            assert_eq!(gameword_eval(&word).unwrap(), s, "{name}: {word}");
            let t = gameword_to_term(&th, &word).unwrap();
            assert_eq!(eval_games(&t).unwrap(), s, "{name}: {word} as {t}");
        }
    }

    #[test]
    fn identities_encode() {
        for g in ["O", "P", "OP", "PO", "OOP"] {
            let s = identity_strategy(&g.parse().unwrap());
            let word = encode_strategy(&s).unwrap();
            assert_eq!(gameword_eval(&word).unwrap(), s, "{g}: {word}");
        }
    }
}
