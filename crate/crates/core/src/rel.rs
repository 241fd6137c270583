//! Boolean relations between finite ordinals, the qualitative quotient of
//! multirelations, and the cartesian model of dual objects.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::Model;
use crate::multirel::{
    encode_mrel, normalize_word, parse_matrix_text, word_eval_mrel, MrelWord, MultiRel, MultiRelModel,
    RuleSet,
};
use crate::signature::{GeneratorDecl, TypeWord};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rel {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Rel {
    pub fn empty(rows: usize, cols: usize) -> Self {
        Rel {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n, n);
        for i in 0..n {
            r.set(i, i, true);
        }
        r
    }

    pub fn from_rows(rows: usize, cols: usize, data: &[&[u8]]) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("entry array does not match {rows}×{cols}")));
        }
        Ok(Rel {
            rows,
            cols,
            bits: data.iter().flat_map(|r| r.iter().map(|&b| b != 0)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.cols + j] = v;
    }

    pub fn then(&self, other: &Rel) -> Result<Rel> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}→{} with {}→{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Rel::empty(self.rows, other.cols);
        for a in 0..self.rows {
            for b in (0..self.cols).filter(|&b| self.get(a, b)) {
                for c in 0..other.cols {
                    if other.get(b, c) {
                        out.set(a, c, true);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Disjoint union (block diagonal).
    pub fn tensor(&self, other: &Rel) -> Rel {
        let mut out = Rel::empty(self.rows + other.rows, self.cols + other.cols);
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

    /// Cartesian product; pair `(i, j)` is indexed `i * other.rows + j`.
    pub fn kron(&self, other: &Rel) -> Rel {
        let mut out = Rel::empty(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        if other.get(k, l) {
                            out.set(i * other.rows + k, j * other.cols + l, true);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_multirel(&self) -> MultiRel {
        let entries = self.bits.iter().map(|&b| b as u64).collect();
        MultiRel::from_vec(self.rows, self.cols, entries).expect("dimensions match")
    }

    /// All `2^(m·n)` relations `m → n`.
    pub fn enumerate(m: usize, n: usize) -> impl Iterator<Item = Rel> {
        let cells = m * n;
        (0u64..1 << cells).map(move |code| Rel {
            rows: m,
            cols: n,
            bits: (0..cells).map(|b| code >> b & 1 == 1).collect(),
        })
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_multirel().fmt(f)
    }
}

impl FromStr for Rel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, cols, body) = parse_matrix_text(s)?;
        let bits = body
            .into_iter()
            .map(|tok| match tok.as_str() {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(Error::Syntax {
                    pos: 0,
                    msg: format!("relation entries are 0 or 1, found `{tok}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Rel { rows, cols, bits })
    }
}

/// Entrywise nonzero test.
pub fn quotient(r: &MultiRel) -> Rel {
    Rel {
        rows: r.rows(),
        cols: r.cols(),
        bits: r.entries().iter().map(|&x| x != 0).collect(),
    }
}

/// The qualitative bialgebra structure on 1 in Rel.
#[derive(Debug, Clone, Copy, Default)]
pub struct RelModel;

impl Model for RelModel {
    type Value = Rel;

    fn name(&self) -> &'static str {
        "rel"
    }

    fn identity(&self, w: &TypeWord) -> Result<Rel> {
        Ok(Rel::identity(w.len()))
    }

    fn generator(&self, g: &GeneratorDecl) -> Result<Rel> {
        MultiRelModel::generator_value(&g.name)
            .map(|m| quotient(&m))
            .ok_or_else(|| Error::Unsupported {
                model: "rel",
                what: g.name.clone(),
            })
    }

    fn compose(&self, f: &Rel, g: &Rel) -> Result<Rel> {
        f.then(g)
    }

    fn tensor(&self, f: &Rel, g: &Rel) -> Result<Rel> {
        Ok(f.tensor(g))
    }
}

pub fn eval_rel(t: &Term) -> Result<Rel> {
    crate::model::eval(&RelModel, t)
}

/// Dual objects in Rel with the cartesian product as tensor: both atoms
/// denote a set with `k` elements, `cup` and `cap` are the diagonal.
#[derive(Debug, Clone, Copy)]
pub struct CartesianRelModel {
    pub k: usize,
}

impl Default for CartesianRelModel {
    fn default() -> Self {
        CartesianRelModel { k: 2 }
    }
}

impl CartesianRelModel {
    fn diagonal(&self) -> Rel {
        let mut r = Rel::empty(1, self.k * self.k);
        for a in 0..self.k {
            r.set(0, a * self.k + a, true);
        }
        r
    }
}

impl Model for CartesianRelModel {
    type Value = Rel;

    fn name(&self) -> &'static str {
        "rel-cartesian"
    }

    fn identity(&self, w: &TypeWord) -> Result<Rel> {
        let size = self
            .k
            .checked_pow(w.len() as u32)
            .ok_or(Error::Overflow)?;
        Ok(Rel::identity(size))
    }

    fn generator(&self, g: &GeneratorDecl) -> Result<Rel> {
        let d = self.diagonal();
        match g.name.as_str() {
            "cup" => Ok(d),
            "cap" => {
                let mut t = Rel::empty(d.cols, 1);
                for j in 0..d.cols {
                    t.set(j, 0, d.get(0, j));
                }
                Ok(t)
            }
            _ => Err(Error::Unsupported {
                model: "rel-cartesian",
                what: g.name.clone(),
            }),
        }
    }

    fn compose(&self, f: &Rel, g: &Rel) -> Result<Rel> {
        f.then(g)
    }

    fn tensor(&self, f: &Rel, g: &Rel) -> Result<Rel> {
        Ok(f.kron(g))
    }
}

pub fn word_eval_rel(w: &MrelWord) -> Result<Rel> {
    Ok(quotient(&word_eval_mrel(w)?))
}

pub fn encode_rel(r: &Rel) -> MrelWord {
    encode_mrel(&r.to_multirel())
}

pub fn normalize_word_rel(w: &MrelWord) -> Result<MrelWord> {
    normalize_word(w, RuleSet::Qualitative)
}
