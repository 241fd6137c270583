//! Monotone maps between finite ordinals: the model of the theory of monoids.

use crate::error::{Error, Result};
use crate::model::Model;
use crate::signature::{GeneratorDecl, TypeWord};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    pub source: usize,
    pub target: usize,
    /// `image[i]` is where input `i` goes; weakly increasing, all `< target`.
    pub image: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(target: usize, image: Vec<usize>) -> Result<Self> {
        if image.windows(2).any(|w| w[0] > w[1]) || image.iter().any(|&x| x >= target) {
            return Err(Error::Dimension(format!("{image:?} is not a monotone map into {target}")));
        }
        Ok(MonotoneMap {
            source: image.len(),
            target,
            image,
        })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            source: n,
            target: n,
            image: (0..n).collect(),
        }
    }

    pub fn then(&self, g: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target != g.source {
            return Err(Error::Dimension(format!(
                "cannot compose {}→{} with {}→{}",
                self.source, self.target, g.source, g.target
            )));
        }
        Ok(MonotoneMap {
            source: self.source,
            target: g.target,
            image: self.image.iter().map(|&i| g.image[i]).collect(),
        })
    }

    pub fn tensor(&self, g: &MonotoneMap) -> MonotoneMap {
        let mut image = self.image.clone();
        image.extend(g.image.iter().map(|&i| i + self.target));
        MonotoneMap {
            source: self.source + g.source,
            target: self.target + g.target,
            image,
        }
    }
}

/// Every weakly increasing map `m → n`.
pub fn enumerate_monotone(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if cur.len() == m {
            out.push(MonotoneMap {
                source: m,
                target: n,
                image: cur.clone(),
            });
            return;
        }
        for v in lo..n {
            cur.push(v);
            go(m, n, v, cur, out);
            cur.pop();
        }
    }
    go(m, n, 0, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MonotoneModel;

impl Model for MonotoneModel {
    type Value = MonotoneMap;

    fn name(&self) -> &'static str {
        "monotone"
    }

    fn identity(&self, w: &TypeWord) -> Result<MonotoneMap> {
        Ok(MonotoneMap::identity(w.len()))
    }

    fn generator(&self, g: &GeneratorDecl) -> Result<MonotoneMap> {
        match g.name.as_str() {
            "mu" => MonotoneMap::new(1, vec![0, 0]),
            "eta" => MonotoneMap::new(1, vec![]),
            _ => Err(Error::Unsupported {
                model: "monotone",
                what: g.name.clone(),
            }),
        }
    }

    fn compose(&self, f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
        f.then(g)
    }

    fn tensor(&self, f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
        Ok(f.tensor(g))
    }
}

pub fn eval_monotone(t: &Term) -> Result<MonotoneMap> {
    crate::model::eval(&MonotoneModel, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;
    use crate::theories::builtin_theory;

    #[test]
    fn generators() {
        let m = builtin_theory("M").unwrap();
        assert_eq!(eval_monotone(&m.gen("mu").unwrap()).unwrap().image, vec![0, 0]);
        let eta = eval_monotone(&m.gen("eta").unwrap()).unwrap();
        assert_eq!((eta.source, eta.target, eta.image.len()), (0, 1, 0));
        let t = parse_term(&m, "id:1 * eta ; mu").unwrap();
        assert_eq!(eval_monotone(&t).unwrap(), MonotoneMap::identity(1));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_monotone(2, 2).len(), 3);
        assert_eq!(enumerate_monotone(0, 0).len(), 1);
        assert_eq!(enumerate_monotone(3, 0).len(), 0);
        // multisets of size m from n values: C(n+m-1, m)
        assert_eq!(enumerate_monotone(4, 4).len(), 35);
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(MonotoneMap::new(2, vec![1, 0]).is_err());
        assert!(MonotoneMap::new(1, vec![1]).is_err());
    }
}
