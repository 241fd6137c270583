//! The builtin theories: monoids (M), bicommutative bialgebras (B), their
//! qualitative variant (R), dual objects (D) and the theory of strategies (G).

use crate::error::{Error, Result};
use crate::signature::{Atom, EqTheory, TypeWord};
use crate::term::{compose, Term};

pub const BUILTIN_NAMES: [&str; 5] = ["M", "B", "R", "D", "G"];

pub fn builtin_theory(name: &str) -> Result<EqTheory> {
    match name {
        "M" => Ok(monoids()),
        "B" => Ok(bialgebras(false)),
        "R" => Ok(bialgebras(true)),
        "D" => Ok(duals()),
        "G" => Ok(strategies()),
        other => Err(Error::UnknownTheory(other.to_string())),
    }
}

fn t(a: Term, b: Term) -> Term {
    a.tensor_with(b)
}

/// Well-typed by construction; a failure here is a bug in the catalog.
fn c(terms: impl IntoIterator<Item = Term>) -> Term {
    let mut it = terms.into_iter();
    let first = it.next().expect("non-empty");
    it.fold(first, |acc, x| compose(acc, x).expect("catalog term is well-typed"))
}

fn id(w: &str) -> Term {
    Term::id(TypeWord::parse(w))
}

/// The five operations of a bialgebra on one atom.
struct Kit {
    atom: Atom,
    mu: Term,
    eta: Term,
    delta: Term,
    eps: Term,
    gamma: Term,
}

impl Kit {
    fn id(&self, n: usize) -> Term {
        Term::id(TypeWord::repeat(self.atom, n))
    }
}

fn monoid_relations(th: &mut EqTheory, atom: Atom, mu: &Term, eta: &Term) {
    let i1 = Term::id(TypeWord(vec![atom]));
    th.relate(
        "mult-assoc",
        c([t(mu.clone(), i1.clone()), mu.clone()]),
        c([t(i1.clone(), mu.clone()), mu.clone()]),
    );
    th.relate("mult-unit-left", c([t(eta.clone(), i1.clone()), mu.clone()]), i1.clone());
    th.relate("mult-unit-right", c([t(i1.clone(), eta.clone()), mu.clone()]), i1);
}

fn bialgebra_relations(th: &mut EqTheory, k: &Kit, qualitative: bool) {
    let (mu, eta, delta, eps, gamma) = (&k.mu, &k.eta, &k.delta, &k.eps, &k.gamma);
    let i1 = || k.id(1);
    monoid_relations(th, k.atom, mu, eta);

    th.relate(
        "comult-coassoc",
        c([delta.clone(), t(delta.clone(), i1())]),
        c([delta.clone(), t(i1(), delta.clone())]),
    );
    th.relate("comult-counit-left", c([delta.clone(), t(eps.clone(), i1())]), i1());
    th.relate("comult-counit-right", c([delta.clone(), t(i1(), eps.clone())]), i1());

    th.relate(
        "yang-baxter",
        c([t(gamma.clone(), i1()), t(i1(), gamma.clone()), t(gamma.clone(), i1())]),
        c([t(i1(), gamma.clone()), t(gamma.clone(), i1()), t(i1(), gamma.clone())]),
    );
    th.relate("sym-involutive", c([gamma.clone(), gamma.clone()]), k.id(2));

    th.relate(
        "mult-sym-nat-left",
        c([t(mu.clone(), i1()), gamma.clone()]),
        c([t(i1(), gamma.clone()), t(gamma.clone(), i1()), t(i1(), mu.clone())]),
    );
    th.relate(
        "mult-sym-nat-right",
        c([t(i1(), mu.clone()), gamma.clone()]),
        c([t(gamma.clone(), i1()), t(i1(), gamma.clone()), t(mu.clone(), i1())]),
    );
    th.relate(
        "unit-sym-nat",
        c([t(eta.clone(), i1()), gamma.clone()]),
        t(i1(), eta.clone()),
    );
    th.relate(
        "comult-sym-nat-left",
        c([gamma.clone(), t(delta.clone(), i1())]),
        c([t(i1(), delta.clone()), t(gamma.clone(), i1()), t(i1(), gamma.clone())]),
    );
    th.relate(
        "comult-sym-nat-right",
        c([gamma.clone(), t(i1(), delta.clone())]),
        c([t(delta.clone(), i1()), t(i1(), gamma.clone()), t(gamma.clone(), i1())]),
    );
    th.relate(
        "counit-sym-nat",
        c([gamma.clone(), t(eps.clone(), i1())]),
        t(i1(), eps.clone()),
    );

    th.relate("mult-comm", c([gamma.clone(), mu.clone()]), mu.clone());
    th.relate("comult-cocomm", c([delta.clone(), gamma.clone()]), delta.clone());

    th.relate(
        "bialg-hopf",
        c([mu.clone(), delta.clone()]),
        c([
            t(delta.clone(), delta.clone()),
            t(t(i1(), gamma.clone()), i1()),
            t(mu.clone(), mu.clone()),
        ]),
    );
    th.relate("bialg-counit-mult", c([mu.clone(), eps.clone()]), t(eps.clone(), eps.clone()));
    th.relate("bialg-comult-unit", c([eta.clone(), delta.clone()]), t(eta.clone(), eta.clone()));
    th.relate("bialg-unit-counit", c([eta.clone(), eps.clone()]), k.id(0));

    if qualitative {
        th.relate("qualitative", c([delta.clone(), mu.clone()]), i1());
    }
}

fn monoids() -> EqTheory {
    let mut th = EqTheory::new("M", &['1']);
    let mu = th.declare("mu", "11", "1");
    let eta = th.declare("eta", "", "1");
    monoid_relations(&mut th, Atom('1'), &mu, &eta);
    th
}

fn bialgebras(qualitative: bool) -> EqTheory {
    let mut th = EqTheory::new(if qualitative { "R" } else { "B" }, &['1']);
    let k = Kit {
        atom: Atom('1'),
        mu: th.declare("mu", "11", "1"),
        eta: th.declare("eta", "", "1"),
        delta: th.declare("delta", "1", "11"),
        eps: th.declare("eps", "1", ""),
        gamma: th.declare("gamma", "11", "11"),
    };
    bialgebra_relations(&mut th, &k, qualitative);
    th
}

fn duals() -> EqTheory {
    let mut th = EqTheory::new("D", &['L', 'R']);
    let cup = th.declare("cup", "", "RL");
    let cap = th.declare("cap", "LR", "");
    th.relate(
        "zigzag-L",
        c([t(id("L"), cup.clone()), t(cap.clone(), id("L"))]),
        id("L"),
    );
    th.relate("zigzag-R", c([t(cup, id("R")), t(id("R"), cap)]), id("R"));
    th
}

fn strategies() -> EqTheory {
    let mut th = EqTheory::new("G", &['O', 'P']);
    let k = Kit {
        atom: Atom('O'),
        mu: th.declare("muO", "OO", "O"),
        eta: th.declare("etaO", "", "O"),
        delta: th.declare("deltaO", "O", "OO"),
        eps: th.declare("epsO", "O", ""),
        gamma: th.declare("gammaO", "OO", "OO"),
    };
    let mu_p = th.declare("muP", "PP", "P");
    let eta_p = th.declare("etaP", "", "P");
    let delta_p = th.declare("deltaP", "P", "PP");
    let eps_p = th.declare("epsP", "P", "");
    let gamma_p = th.declare("gammaP", "PP", "PP");
    let eta_op = th.declare("etaOP", "", "OP");
    let eps_op = th.declare("epsOP", "PO", "");
    let gamma_op = th.declare("gammaOP", "PO", "OP");

    bialgebra_relations(&mut th, &k, true);

    th.relate(
        "zigzag-P",
        c([t(id("P"), eta_op.clone()), t(eps_op.clone(), id("P"))]),
        id("P"),
    );
    th.relate(
        "zigzag-O",
        c([t(eta_op.clone(), id("O")), t(id("O"), eps_op.clone())]),
        id("O"),
    );

    // The Proponent structure and the mixed crossing, expressed through the
    // Opponent structure and the duality.
    th.relate("def-etaP", eta_p, c([eta_op.clone(), t(k.eps.clone(), id("P"))]));
    th.relate("def-epsP", eps_p, c([t(id("P"), k.eta.clone()), eps_op.clone()]));
    th.relate(
        "def-muP",
        mu_p,
        c([
            t(id("PP"), eta_op.clone()),
            t(t(id("PP"), k.delta.clone()), id("P")),
            t(t(id("P"), eps_op.clone()), id("OP")),
            t(eps_op.clone(), id("P")),
        ]),
    );
    th.relate(
        "def-deltaP",
        delta_p,
        c([
            t(id("P"), eta_op.clone()),
            t(t(id("PO"), eta_op.clone()), id("P")),
            t(t(id("P"), k.mu.clone()), id("PP")),
            t(eps_op.clone(), id("PP")),
        ]),
    );
    th.relate(
        "def-gammaP",
        gamma_p,
        c([
            t(id("PP"), eta_op.clone()),
            t(t(id("PPO"), eta_op.clone()), id("P")),
            t(t(id("PP"), k.gamma.clone()), id("PP")),
            t(t(id("P"), eps_op.clone()), id("OPP")),
            t(eps_op.clone(), id("PP")),
        ]),
    );
    th.relate(
        "def-gammaOP",
        gamma_op,
        c([
            t(id("PO"), eta_op),
            t(t(id("P"), k.gamma.clone()), id("P")),
            t(eps_op, id("OP")),
        ]),
    );
    th
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::validate_theory;

    #[test]
    fn catalog_sizes() {
        let m = builtin_theory("M").unwrap();
        assert_eq!((m.generators.len(), m.relations.len()), (2, 3));
        let b = builtin_theory("B").unwrap();
        assert_eq!(b.generators.len(), 5);
        assert_eq!(b.relations.len(), 20);
        let r = builtin_theory("R").unwrap();
        assert_eq!(r.relations.len(), b.relations.len() + 1);
        let d = builtin_theory("D").unwrap();
        assert_eq!((d.generators.len(), d.relations.len()), (2, 2));
        let g = builtin_theory("G").unwrap();
        assert_eq!(g.generators.len(), 13);
        assert_eq!(g.relations.len(), 21 + 2 + 6);
        assert!(matches!(builtin_theory("X"), Err(Error::UnknownTheory(_))));
    }

    #[test]
    fn all_builtins_validate() {
        for name in BUILTIN_NAMES {
            let th = builtin_theory(name).unwrap();
            assert_eq!(validate_theory(&th), vec![], "theory {name}");
            for r in &th.relations {
                assert_eq!(r.lhs.boundary().unwrap(), r.rhs.boundary().unwrap(), "{}", r.label);
            }
        }
    }

    #[test]
    fn mismatched_relation_is_reported() {
        let mut th = builtin_theory("M").unwrap();
        let mu = th.gen("mu").unwrap();
        let eta = th.gen("eta").unwrap();
        th.relate("bogus", mu, eta);
        let v = validate_theory(&th);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].relation, "bogus");
        assert_eq!(v[0].message, "source mismatch 2≠0");
    }

    #[test]
    fn g_has_no_o_past_p_crossing() {
        let g = builtin_theory("G").unwrap();
        let gamma_op = g.generator("gammaOP").unwrap();
        assert_eq!(gamma_op.source, TypeWord::parse("PO"));
        assert_eq!(gamma_op.target, TypeWord::parse("OP"));
        assert!(g
            .generators
            .iter()
            .all(|x| !(x.source == TypeWord::parse("OP") && x.target == TypeWord::parse("PO"))));
    }
}
