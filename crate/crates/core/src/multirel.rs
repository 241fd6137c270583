//! Multirelations: ℕ-valued matrices between finite ordinals, and the word
//! calculus of canonical forms for the theory of bicommutative bialgebras.
//!
//! A word is read right to left starting from `Z` (the empty 0→0 relation):
//!
//! * `H` on `m→n` yields `m→n+1`, adding a zero column at index 0;
//! * `E` on `m→n` yields `m+1→n`, adding a zero row at index 0;
//! * `W(i)` on `m→n` (with `m ≥ 1`, `i < n`) increments entry `(0, i)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::Model;
use crate::signature::{Atom, EqTheory, GeneratorDecl, TypeWord};
use crate::term::{seq, stairs, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiRel {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl MultiRel {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MultiRel {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::zero(n, n);
        for i in 0..n {
            r.set(i, i, 1);
        }
        r
    }

    pub fn from_rows(rows: usize, cols: usize, data: &[&[u64]]) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("entry array does not match {rows}×{cols}")));
        }
        Ok(MultiRel {
            rows,
            cols,
            entries: data.iter().flat_map(|r| r.iter().copied()).collect(),
        })
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}×{cols} matrix",
                entries.len()
            )));
        }
        Ok(MultiRel { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Sum of all coefficients.
    pub fn cardinal(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// `self` then `other`: `(R₂∘R₁)(a,c) = Σ_b R₁(a,b)·R₂(b,c)`.
    pub fn then(&self, other: &MultiRel) -> Result<MultiRel> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}→{} with {}→{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = MultiRel::zero(self.rows, other.cols);
        for a in 0..self.rows {
            for b in 0..self.cols {
                let x = self.get(a, b);
                if x == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let y = other.get(b, c);
                    let v = x
                        .checked_mul(y)
                        .and_then(|p| p.checked_add(out.get(a, c)))
                        .ok_or(Error::Overflow)?;
                    out.set(a, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Disjoint union: block-diagonal juxtaposition.
    pub fn tensor(&self, other: &MultiRel) -> MultiRel {
        let mut out = MultiRel::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// All matrices `m×n` with entries in `0..=max`.
    pub fn enumerate(m: usize, n: usize, max: u64) -> impl Iterator<Item = MultiRel> {
        let cells = m * n;
        let total = (max + 1).checked_pow(cells as u32).expect("enumeration bound");
        (0..total).map(move |mut code| {
            let mut entries = vec![0; cells];
            for e in entries.iter_mut() {
                *e = code % (max + 1);
                code /= max + 1;
            }
            MultiRel { rows: m, cols: n, entries }
        })
    }
}

/// Text form: a `m n` header line, then rows separated by `;` with entries
/// separated by spaces.
impl fmt::Display for MultiRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

impl FromStr for MultiRel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, cols, body) = parse_matrix_text(s)?;
        let entries = body
            .into_iter()
            .map(|tok| {
                tok.parse::<u64>().map_err(|_| Error::Syntax {
                    pos: 0,
                    msg: format!("bad entry `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        MultiRel::from_vec(rows, cols, entries)
    }
}

/// Shared by the multirelation and relation parsers: header plus the body's
/// entry tokens in row-major order, after checking the row structure.
pub(crate) fn parse_matrix_text(s: &str) -> Result<(usize, usize, Vec<String>)> {
    let s = s.trim();
    let (header, body) = match s.find('\n') {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => (s, ""),
    };
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Syntax {
            pos: 0,
            msg: "header must be `rows cols`".into(),
        })?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Syntax {
            pos: 0,
            msg: "header must be `rows cols`".into(),
        });
    };
    let mut entries = Vec::with_capacity(rows * cols);
    if rows > 0 && cols > 0 {
        let row_texts: Vec<&str> = body.split(';').collect();
        if row_texts.len() != rows {
            return Err(Error::Dimension(format!("expected {rows} rows, found {}", row_texts.len())));
        }
        for (i, r) in row_texts.iter().enumerate() {
            let toks: Vec<String> = r.split_whitespace().map(str::to_string).collect();
            if toks.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", toks.len())));
            }
            entries.extend(toks);
        }
    } else if body.chars().any(|c| !c.is_whitespace() && c != ';') {
        return Err(Error::Dimension(format!("a {rows}×{cols} matrix has no entries")));
    }
    Ok((rows, cols, entries))
}

/// The bicommutative bialgebra structure on the object 1 of MRel.
#[derive(Debug, Clone, Copy, Default)]
pub struct MultiRelModel;

impl MultiRelModel {
    pub fn generator_value(name: &str) -> Option<MultiRel> {
        let r = match name {
            "mu" => MultiRel::from_vec(2, 1, vec![1, 1]),
            "eta" => MultiRel::from_vec(0, 1, vec![]),
            "delta" => MultiRel::from_vec(1, 2, vec![1, 1]),
            "eps" => MultiRel::from_vec(1, 0, vec![]),
            "gamma" => MultiRel::from_vec(2, 2, vec![0, 1, 1, 0]),
            _ => return None,
        };
        r.ok()
    }
}

impl Model for MultiRelModel {
    type Value = MultiRel;

    fn name(&self) -> &'static str {
        "mrel"
    }

    fn identity(&self, w: &TypeWord) -> Result<MultiRel> {
        Ok(MultiRel::identity(w.len()))
    }

    fn generator(&self, g: &GeneratorDecl) -> Result<MultiRel> {
        Self::generator_value(&g.name).ok_or_else(|| Error::Unsupported {
            model: "mrel",
            what: g.name.clone(),
        })
    }

    fn compose(&self, f: &MultiRel, g: &MultiRel) -> Result<MultiRel> {
        f.then(g)
    }

    fn tensor(&self, f: &MultiRel, g: &MultiRel) -> Result<MultiRel> {
        Ok(f.tensor(g))
    }
}

pub fn eval_mrel(t: &Term) -> Result<MultiRel> {
    crate::model::eval(&MultiRelModel, t)
}

/// Equality in the category presented by B, decided in MRel.
pub fn equiv_b(t1: &Term, t2: &Term) -> Result<bool> {
    let (b1, b2) = (t1.boundary()?, t2.boundary()?);
    if b1 != b2 {
        let (side, left, right) = if b1.0 != b2.0 { ("sources", b1.0, b2.0) } else { ("targets", b1.1, b2.1) };
        return Err(Error::Boundary {
            context: format!("equivalence check ({side})"),
            left,
            right,
        });
    }
    Ok(eval_mrel(t1)? == eval_mrel(t2)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Z,
    W(usize),
    E,
    H,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Z => write!(f, "Z"),
            Letter::W(i) => write!(f, "W{i}"),
            Letter::E => write!(f, "E"),
            Letter::H => write!(f, "H"),
        }
    }
}

/// A precanonical form written as a word, outermost letter first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MrelWord(pub Vec<Letter>);

impl fmt::Display for MrelWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for MrelWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for tok in s.split_whitespace() {
            let pos = s[offset..].find(tok).map_or(offset, |p| p + offset);
            offset = pos + tok.len();
            let l = match tok {
                "Z" => Letter::Z,
                "E" => Letter::E,
                "H" => Letter::H,
                _ => match tok.strip_prefix('W').map(str::parse::<usize>) {
                    Some(Ok(i)) => Letter::W(i),
                    _ => {
                        return Err(Error::Syntax {
                            pos,
                            msg: format!("unknown letter `{tok}`"),
                        })
                    }
                },
            };
            letters.push(l);
        }
        Ok(MrelWord(letters))
    }
}

impl MrelWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Boundary `(m, n)` of a well-typed word.
    pub fn typing(&self) -> Result<(usize, usize)> {
        let bad = |index: usize, reason: &str| Error::WordTyping {
            index,
            letter: self.0.get(index).map_or("<end>".into(), |l| l.to_string()),
            reason: reason.to_string(),
        };
        match self.0.last() {
            Some(Letter::Z) => {}
            _ => return Err(bad(self.0.len().saturating_sub(1), "word must end with Z")),
        }
        let (mut m, mut n) = (0usize, 0usize);
        for (idx, l) in self.0.iter().enumerate().rev().skip(1) {
            match *l {
                Letter::Z => return Err(bad(idx, "Z may only appear last")),
                Letter::H => n += 1,
                Letter::E => m += 1,
                Letter::W(i) => {
                    if m == 0 {
                        return Err(bad(idx, "W needs at least one input"));
                    }
                    if i >= n {
                        return Err(bad(idx, "W index out of range"));
                    }
                }
            }
        }
        Ok((m, n))
    }
}

pub fn word_eval_mrel(w: &MrelWord) -> Result<MultiRel> {
    w.typing()?;
    let mut r = MultiRel::zero(0, 0);
    for l in w.0.iter().rev().skip(1) {
        r = match *l {
            Letter::H => {
                let mut out = MultiRel::zero(r.rows, r.cols + 1);
                for i in 0..r.rows {
                    for j in 0..r.cols {
                        out.set(i, j + 1, r.get(i, j));
                    }
                }
                out
            }
            Letter::E => {
                let mut out = MultiRel::zero(r.rows + 1, r.cols);
                out.entries[r.cols..].copy_from_slice(&r.entries);
                out
            }
            Letter::W(i) => {
                let v = r.get(0, i).checked_add(1).ok_or(Error::Overflow)?;
                r.set(0, i, v);
                r
            }
            Letter::Z => unreachable!("checked by typing"),
        };
    }
    Ok(r)
}

/// Expands a word into a term of theory `B` (or `R`) whose value is the
/// word's value.
pub fn word_to_term_mrel(theory: &EqTheory, w: &MrelWord) -> Result<Term> {
    w.typing()?;
    let one = theory
        .single_atom()
        .ok_or_else(|| Error::UnknownTheory(format!("{} is not single-sorted", theory.name)))?;
    let id = |n: usize| Term::id(TypeWord::repeat(one, n));
    let (mut m, mut n) = (0usize, 0usize);
    let mut acc = id(0);
    for l in w.0.iter().rev().skip(1) {
        acc = match *l {
            Letter::H => {
                n += 1;
                then_skipping_ids(acc, theory.gen("eta")?.tensor_with(id(n - 1)))?
            }
            Letter::E => {
                m += 1;
                then_skipping_ids(theory.gen("eps")?.tensor_with(id(m - 1)), acc)?
            }
            Letter::W(i) => w_letter_term(theory, one, acc, m, n, i)?,
            Letter::Z => unreachable!(),
        };
    }
    Ok(acc)
}

/// Composition that drops an identity operand.
pub(crate) fn then_skipping_ids(a: Term, b: Term) -> Result<Term> {
    match (&a, &b) {
        (Term::Id(_), _) | (_, Term::Id(_)) if a.target()? == b.source()? => {
            Ok(if matches!(a, Term::Id(_)) { b } else { a })
        }
        _ => crate::term::compose(a, b),
    }
}

/// `(δ ⊗ id) ; (id₁ ⊗ φ′) ; (stairs_i ⊗ id) ; (id_i ⊗ μ ⊗ id)`.
fn w_letter_term(theory: &EqTheory, one: Atom, inner: Term, m: usize, n: usize, i: usize) -> Result<Term> {
    let id = |k: usize| Term::id(TypeWord::repeat(one, k));
    seq([
        theory.gen("delta")?.tensor_with(id(m - 1)),
        id(1).tensor_with(inner),
        stairs(theory, one, &TypeWord::repeat(one, i))?.tensor_with(id(n - i)),
        id(i).tensor_with(theory.gen("mu")?).tensor_with(id(n - i - 1)),
    ])
}

/// The canonical word of a multirelation: emit `H…HZ` when there are no
/// rows; `E` when row 0 is zero; otherwise `W(k)` for the greatest `k` with
/// a positive entry `(0,k)`, decrement it, and continue.
pub fn encode_mrel(r: &MultiRel) -> MrelWord {
    let mut letters = Vec::with_capacity(r.cardinal() as usize + r.rows + r.cols + 1);
    let mut rows: Vec<Vec<u64>> = (0..r.rows)
        .map(|i| (0..r.cols).map(|j| r.get(i, j)).collect())
        .collect();
    for row in rows.iter_mut() {
        for k in (0..row.len()).rev() {
            while row[k] > 0 {
                letters.push(Letter::W(k));
                row[k] -= 1;
            }
        }
        letters.push(Letter::E);
    }
    letters.extend(std::iter::repeat_n(Letter::H, r.cols));
    letters.push(Letter::Z);
    MrelWord(letters)
}

/// Which orientation rules are in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleSet {
    /// `HWᵢ ⇒ Wᵢ₊₁H`, `HE ⇒ EH`, `WᵢWⱼ ⇒ WⱼWᵢ` for `i < j`.
    Multi,
    /// The above plus `WᵢWᵢ ⇒ Wᵢ`.
    Qualitative,
}

/// Every word reachable in one rewrite step, with the redex position.
pub fn rewrite_steps(w: &MrelWord, rules: RuleSet) -> Vec<(usize, MrelWord)> {
    let mut out = Vec::new();
    for p in 0..w.0.len().saturating_sub(1) {
        let replacement: Option<Vec<Letter>> = match (w.0[p], w.0[p + 1]) {
            (Letter::H, Letter::W(i)) => Some(vec![Letter::W(i + 1), Letter::H]),
            (Letter::H, Letter::E) => Some(vec![Letter::E, Letter::H]),
            (Letter::W(i), Letter::W(j)) if i < j => Some(vec![Letter::W(j), Letter::W(i)]),
            (Letter::W(i), Letter::W(j)) if i == j && rules == RuleSet::Qualitative => {
                Some(vec![Letter::W(i)])
            }
            _ => None,
        };
        if let Some(rep) = replacement {
            let mut v = Vec::with_capacity(w.0.len());
            v.extend_from_slice(&w.0[..p]);
            v.extend(rep);
            v.extend_from_slice(&w.0[p + 2..]);
            out.push((p, MrelWord(v)));
        }
    }
    out
}

pub fn is_normal(w: &MrelWord, rules: RuleSet) -> bool {
    rewrite_steps(w, rules).is_empty()
}

/// Termination measure, compared lexicographically: word length, then the
/// number of (H, non-H letter to its right) pairs, then the number of W
/// pairs whose indices increase left to right. Every rule decreases it.
pub fn measure(w: &MrelWord) -> (usize, usize, usize) {
    let mut h_seen = 0;
    let mut h_inv = 0;
    for l in &w.0 {
        match l {
            Letter::H => h_seen += 1,
            _ => h_inv += h_seen,
        }
    }
    let ws: Vec<usize> = w
        .0
        .iter()
        .filter_map(|l| if let Letter::W(i) = l { Some(*i) } else { None })
        .collect();
    let mut w_inv = 0;
    for a in 0..ws.len() {
        for b in a + 1..ws.len() {
            if ws[a] < ws[b] {
                w_inv += 1;
            }
        }
    }
    (w.0.len(), h_inv, w_inv)
}

/// Normal form by leftmost-innermost rewriting.
pub fn normalize_word(w: &MrelWord, rules: RuleSet) -> Result<MrelWord> {
    w.typing()?;
    let mut cur = w.clone();
    while let Some((_, next)) = rewrite_steps(&cur, rules).into_iter().next() {
        cur = next;
    }
    Ok(cur)
}

pub fn normalize_word_mrel(w: &MrelWord) -> Result<MrelWord> {
    normalize_word(w, RuleSet::Multi)
}

/// All normal forms reachable from `w` by any rewrite order, together with
/// a flag telling whether every step strictly decreased [`measure`].
pub fn all_normal_forms(w: &MrelWord, rules: RuleSet) -> (BTreeSet<MrelWord>, bool) {
    let mut memo = NormalFormMemo::default();
    let nfs = memo.normal_forms(w, rules).clone();
    (nfs, memo.decreasing)
}

/// Memoized exploration of every rewrite order; may be shared across words
/// under one rule set.
#[derive(Debug, Default)]
pub struct NormalFormMemo {
    table: HashMap<MrelWord, BTreeSet<MrelWord>>,
    /// Cleared as soon as a step fails to decrease [`measure`].
    pub decreasing: bool,
    pub steps: usize,
    started: bool,
}

impl NormalFormMemo {
    pub fn normal_forms(&mut self, w: &MrelWord, rules: RuleSet) -> &BTreeSet<MrelWord> {
        if !self.started {
            self.started = true;
            self.decreasing = true;
        }
        self.explore(w, rules);
        &self.table[w]
    }

    fn explore(&mut self, w: &MrelWord, rules: RuleSet) {
        if self.table.contains_key(w) {
            return;
        }
        let steps = rewrite_steps(w, rules);
        let mut nfs = BTreeSet::new();
        if steps.is_empty() {
            nfs.insert(w.clone());
        }
        let m = measure(w);
        for (_, next) in steps {
            self.steps += 1;
            if measure(&next) >= m {
                self.decreasing = false;
                continue;
            }
            self.explore(&next, rules);
            nfs.extend(self.table[&next].iter().cloned());
        }
        self.table.insert(w.clone(), nfs);
    }
}

/// All well-typed words with at most `max_len` letters (including `Z`).
pub fn enumerate_words(max_len: usize) -> Vec<MrelWord> {
    let mut out = Vec::new();
    // Build from the innermost letter outward; state is (m, n).
    let mut frontier = vec![(vec![Letter::Z], 0usize, 0usize)];
    while let Some((rev, m, n)) = frontier.pop() {
        out.push(MrelWord(rev.iter().rev().copied().collect()));
        if rev.len() == max_len {
            continue;
        }
        let mut push = |l: Letter, m: usize, n: usize| {
            let mut v = rev.clone();
            v.push(l);
            frontier.push((v, m, n));
        };
        push(Letter::H, m, n + 1);
        push(Letter::E, m + 1, n);
        if m > 0 {
            for i in 0..n {
                push(Letter::W(i), m, n);
            }
        }
    }
    out.sort();
    out
}

/// Every rewrite-normal word of boundary `m → n` whose value has entries at
/// most `max_entry`. Words are grown from `Z` outward; a redex can only
/// appear at the new leftmost pair, so normal suffixes suffice.
pub fn normal_words(m: usize, n: usize, rules: RuleSet, max_entry: u64) -> Vec<MrelWord> {
    let mut out = Vec::new();
    // (letters innermost-first, rows, cols, row-0 entries)
    let mut stack: Vec<(Vec<Letter>, usize, usize, Vec<u64>)> = vec![(vec![Letter::Z], 0, 0, vec![])];
    while let Some((rev, rm, rn, row0)) = stack.pop() {
        if rm == m && rn == n {
            out.push(MrelWord(rev.iter().rev().copied().collect()));
        }
        let first = *rev.last().expect("non-empty");
        let mut candidates = vec![Letter::H, Letter::E];
        if rm > 0 {
            candidates.extend((0..rn).map(Letter::W));
        }
        for l in candidates {
            let pair = MrelWord(vec![l, first]);
            if !rewrite_steps(&pair, rules).is_empty() {
                continue;
            }
            let (nm, nn, nrow) = match l {
                Letter::H if rn < n => {
                    let mut r = vec![0];
                    r.extend(&row0);
                    (rm, rn + 1, if rm > 0 { r } else { vec![] })
                }
                Letter::E if rm < m => (rm + 1, rn, vec![0; rn]),
                Letter::W(i) if row0[i] < max_entry => {
                    let mut r = row0.clone();
                    r[i] += 1;
                    (rm, rn, r)
                }
                _ => continue,
            };
            let mut v = rev.clone();
            v.push(l);
            stack.push((v, nm, nn, nrow));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::theories::builtin_theory;

    fn m(rows: usize, cols: usize, data: &[&[u64]]) -> MultiRel {
        MultiRel::from_rows(rows, cols, data).unwrap()
    }

    fn w(s: &str) -> MrelWord {
        s.parse().unwrap()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(m(1, 2, &[&[1, 2]]).then(&m(2, 1, &[&[3], &[1]])).unwrap(), m(1, 1, &[&[5]]));
        let r = m(2, 2, &[&[1, 2], &[0, 3]]);
        assert_eq!(r.then(&MultiRel::identity(2)).unwrap(), r);
        assert_eq!(m(1, 1, &[&[2]]).then(&m(1, 1, &[&[0]])).unwrap(), m(1, 1, &[&[0]]));
        assert!(r.then(&MultiRel::identity(3)).is_err());
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(m(1, 1, &[&[1]]).tensor(&m(1, 1, &[&[2]])), m(2, 2, &[&[1, 0], &[0, 2]]));
        let r = m(1, 2, &[&[1, 2]]);
        assert_eq!(r.tensor(&MultiRel::zero(0, 0)), r);
        assert_eq!(MultiRel::zero(1, 0).tensor(&MultiRel::zero(0, 1)), m(1, 1, &[&[0]]));
    }

    #[test]
    fn cardinals() {
        assert_eq!(m(2, 2, &[&[1, 2], &[0, 3]]).cardinal(), 6);
        assert_eq!(MultiRel::zero(0, 4).cardinal(), 0);
        assert_eq!(m(1, 1, &[&[2]]).cardinal(), 2);
    }

    #[test]
    fn evaluation_examples() {
        let b = builtin_theory("B").unwrap();
        let ev = |s: &str| eval_mrel(&parse_term(&b, s).unwrap()).unwrap();
        assert_eq!(ev("gamma"), m(2, 2, &[&[0, 1], &[1, 0]]));
        assert_eq!(ev("delta ; mu"), m(1, 1, &[&[2]]));
        assert_eq!(ev("(eta * id:1) ; mu"), m(1, 1, &[&[1]]));
    }

    #[test]
    fn equivalence_examples() {
        let b = builtin_theory("B").unwrap();
        let p = |s: &str| parse_term(&b, s).unwrap();
        assert!(equiv_b(&p("(eta * id:1) ; mu"), &p("id:1")).unwrap());
        assert!(equiv_b(&p("gamma ; mu"), &p("mu")).unwrap());
        assert!(!equiv_b(&p("delta ; mu"), &p("id:1")).unwrap());
        assert!(equiv_b(&p("mu"), &p("id:1")).is_err());
    }

    #[test]
    fn word_evaluation_examples() {
        assert_eq!(word_eval_mrel(&w("Z")).unwrap(), MultiRel::zero(0, 0));
        assert_eq!(word_eval_mrel(&w("E H Z")).unwrap(), m(1, 1, &[&[0]]));
        assert_eq!(word_eval_mrel(&w("W1 E H H Z")).unwrap(), m(1, 2, &[&[0, 1]]));
        assert!(word_eval_mrel(&w("W0 H Z")).is_err());
        assert!(word_eval_mrel(&w("W1 E H Z")).is_err());
        assert!(word_eval_mrel(&w("E Z H")).is_err());
        assert!(word_eval_mrel(&w("E H")).is_err());
    }

    #[test]
    fn word_terms() {
        let b = builtin_theory("B").unwrap();
        assert_eq!(word_to_term_mrel(&b, &w("H Z")).unwrap(), b.gen("eta").unwrap());
        assert_eq!(word_to_term_mrel(&b, &w("E Z")).unwrap(), b.gen("eps").unwrap());
        let t = word_to_term_mrel(&b, &w("W0 E H Z")).unwrap();
        assert_eq!(t.size(), 4);
        assert_eq!(eval_mrel(&t).unwrap(), m(1, 1, &[&[1]]));
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(encode_mrel(&MultiRel::zero(0, 3)).to_string(), "H H H Z");
        assert_eq!(encode_mrel(&m(1, 1, &[&[2]])).to_string(), "W0 W0 E H Z");
        assert_eq!(encode_mrel(&m(2, 1, &[&[1], &[1]])).to_string(), "W0 E W0 E H Z");
    }

    #[test]
    fn normalization_examples() {
        let n = |s: &str| normalize_word_mrel(&w(s)).unwrap().to_string();
        assert_eq!(n("H E Z"), "E H Z");
        assert_eq!(n("H W0 E H Z"), "W1 E H H Z");
        assert_eq!(n("W0 W1 E H H Z"), "W1 W0 E H H Z");
    }

    #[test]
    fn measure_decreases_on_each_rule() {
        for (from, rules) in [
            ("H W0 E H Z", RuleSet::Multi),
            ("H E Z", RuleSet::Multi),
            ("W0 W1 E H H Z", RuleSet::Multi),
            ("W0 W0 E H Z", RuleSet::Qualitative),
        ] {
            let word = w(from);
            for (_, next) in rewrite_steps(&word, rules) {
                assert!(measure(&next) < measure(&word), "{from} -> {next}");
            }
        }
    }

    #[test]
    fn matrix_text_form() {
        let r = m(2, 2, &[&[1, 0], &[0, 3]]);
        assert_eq!(r.to_string(), "2 2\n1 0; 0 3");
        assert_eq!(r.to_string().parse::<MultiRel>().unwrap(), r);
        assert_eq!("1 1\n2".parse::<MultiRel>().unwrap(), m(1, 1, &[&[2]]));
        assert_eq!("0 3".parse::<MultiRel>().unwrap(), MultiRel::zero(0, 3));
        assert_eq!("2 0\n;".parse::<MultiRel>().unwrap(), MultiRel::zero(2, 0));
        assert!("2 2\n1 0".parse::<MultiRel>().is_err());
        assert!("1 1\nx".parse::<MultiRel>().is_err());
    }

    #[test]
    fn normal_word_counts() {
        assert_eq!(normal_words(2, 2, RuleSet::Multi, 1).len(), 16);
        assert_eq!(normal_words(1, 1, RuleSet::Multi, 2).len(), 3);
        assert_eq!(normal_words(2, 2, RuleSet::Qualitative, 5).len(), 16);
        assert_eq!(normal_words(0, 3, RuleSet::Multi, 1), vec![w("H H H Z")]);
    }

    #[test]
    fn word_enumeration_is_well_typed() {
        let words = enumerate_words(4);
        assert!(words.iter().all(|x| x.typing().is_ok()));
        // Z; H Z; E Z; then length 3: HH, HE, EH, EE, and no W yet (needs m,n ≥ 1)
        assert_eq!(words.iter().filter(|x| x.len() == 3).count(), 4);
        assert!(words.contains(&w("W0 E H Z")));
    }
}
