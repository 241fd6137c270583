//! Strict monoidal functors out of the free category on a signature.

use std::fmt::Debug;

use crate::error::Result;
use crate::signature::{GeneratorDecl, TypeWord};
use crate::term::Term;

/// A semantic target for terms: values for identities and generators, plus
/// composition and tensor. [`eval`] extends it to all terms.
pub trait Model {
    type Value: Clone + PartialEq + Debug;

    fn name(&self) -> &'static str;
    fn identity(&self, w: &TypeWord) -> Result<Self::Value>;
    fn generator(&self, g: &GeneratorDecl) -> Result<Self::Value>;
    /// `f` then `g`.
    fn compose(&self, f: &Self::Value, g: &Self::Value) -> Result<Self::Value>;
    fn tensor(&self, f: &Self::Value, g: &Self::Value) -> Result<Self::Value>;
}

pub fn eval<M: Model>(model: &M, t: &Term) -> Result<M::Value> {
    t.boundary()?;
    eval_unchecked(model, t)
}

fn eval_unchecked<M: Model>(model: &M, t: &Term) -> Result<M::Value> {
    match t {
        Term::Id(w) => model.identity(w),
        Term::Gen(g) => model.generator(g),
        Term::Compose(a, b) => model.compose(&eval_unchecked(model, a)?, &eval_unchecked(model, b)?),
        Term::Tensor(a, b) => model.tensor(&eval_unchecked(model, a)?, &eval_unchecked(model, b)?),
    }
}

/// Both sides of an equation in a model; `None` when they agree.
pub fn counterexample<M: Model>(model: &M, lhs: &Term, rhs: &Term) -> Result<Option<(M::Value, M::Value)>> {
    let l = eval(model, lhs)?;
    let r = eval(model, rhs)?;
    Ok(if l == r { None } else { Some((l, r)) })
}
