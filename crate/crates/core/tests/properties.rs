use std::collections::BTreeSet;

use proptest::prelude::*;

use diagrammar::folog::{parse_formula, Formula};
use diagrammar::games::{check_strategy, compose_strategies, identity_strategy, Strategy as Play};
use diagrammar::gameword::{encode_strategy, gameword_eval};
use diagrammar::model::{eval, Model};
use diagrammar::monotone::MonotoneModel;
use diagrammar::multirel::{
    encode_mrel, enumerate_words, is_normal, normalize_word, word_eval_mrel, MrelWord, MultiRelModel, RuleSet,
};
use diagrammar::rel::{encode_rel, quotient, word_eval_rel, CartesianRelModel, RelModel};
use diagrammar::verify::random_strategy;
use diagrammar::games::GamesModel;
use diagrammar::{builtin_theory, compose, parse_term, tensor, EqTheory, Game, MultiRel, Rel, Term, TypeWord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Grows a well-typed term from `source` by applying generators wherever
/// their source occurs; `choices` drives every decision.
fn grow(theory: &EqTheory, source: &TypeWord, choices: &[u32]) -> Term {
    let mut t = Term::id(source.clone());
    let mut width = source.clone();
    for &c in choices {
        let mut options = vec![];
        for g in &theory.generators {
            let n = g.source.len();
            for pos in 0..=width.len().saturating_sub(n) {
                if pos + n <= width.len() && width.slice(pos..pos + n) == g.source && width.len() < 8 + n {
                    options.push((g.clone(), pos));
                }
            }
        }
        if options.is_empty() {
            break;
        }
        let (g, pos) = options[c as usize % options.len()].clone();
        let left = width.slice(0..pos);
        let right = width.slice(pos + g.source.len()..width.len());
        let layer = Term::id(left.clone()).tensor_with(Term::Gen(g.clone())).tensor_with(Term::id(right.clone()));
        width = left.concat(&g.target).concat(&right);
        t = compose(t, layer).expect("layer matches");
    }
    t
}

fn source_word(theory: &EqTheory, picks: &[u8]) -> TypeWord {
    TypeWord(picks.iter().map(|&p| theory.atoms[p as usize % theory.atoms.len()]).collect())
}

fn same_value<M: Model>(model: &M, a: &Term, b: &Term) -> bool
where
    M::Value: PartialEq,
{
    eval(model, a).ok() == eval(model, b).ok()
}

fn theory_and_term() -> impl Strategy<Value = (String, Term)> {
    (
        prop::sample::select(vec!["M", "B", "R", "D", "G"]),
        prop::collection::vec(any::<u8>(), 0..4),
        prop::collection::vec(any::<u32>(), 0..8),
    )
        .prop_map(|(name, src, choices)| {
            let th = builtin_theory(name).unwrap();
            let t = grow(&th, &source_word(&th, &src), &choices);
            (name.to_string(), t)
        })
}

fn agree_in_model(theory: &str, a: &Term, b: &Term) -> bool {
    match theory {
        "M" => same_value(&MonotoneModel, a, b),
        "B" => same_value(&MultiRelModel, a, b),
        "R" => same_value(&RelModel, a, b),
        "D" => same_value(&CartesianRelModel::default(), a, b),
        _ => same_value(&GamesModel, a, b),
    }
}

fn matrix(max_dim: usize, max_entry: u64) -> impl Strategy<Value = MultiRel> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(m, n)| {
        prop::collection::vec(0..=max_entry, m * n).prop_map(move |v| MultiRel::from_vec(m, n, v).unwrap())
    })
}

fn game(max: usize) -> impl Strategy<Value = Game> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(|bits| {
        let text: String = bits.iter().map(|&b| if b { 'O' } else { 'P' }).collect();
        if text.is_empty() { "I".parse().unwrap() } else { text.parse().unwrap() }
    })
}

fn strategy_on(src: Game, tgt: Game, seed: u64) -> Play {
    random_strategy(&src, &tgt, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn slice_form_preserves_meaning((name, t) in theory_and_term()) {
        let slices = t.slice_form().unwrap();
        prop_assert_eq!(slices.len(), t.size());
        let rebuilt = Term::from_slices(&t.source().unwrap(), &slices).unwrap();
        prop_assert_eq!(rebuilt.boundary().unwrap(), t.boundary().unwrap());
        prop_assert!(agree_in_model(&name, &t, &rebuilt));
    }

    #[test]
    fn interchange_law((name, f) in theory_and_term(), g_choices in prop::collection::vec(any::<u32>(), 0..4), h_choices in prop::collection::vec(any::<u32>(), 0..4)) {
        // (f ⊗ h0) ; (g ⊗ h) = (f ; g) ⊗ (h0 ; h)
        let th = builtin_theory(&name).unwrap();
        let g = grow(&th, &f.target().unwrap(), &g_choices);
        let h0 = grow(&th, &TypeWord::unit(), &h_choices);
        let h = grow(&th, &h0.target().unwrap(), &h_choices);
        let left = compose(tensor(f.clone(), h0.clone()), tensor(g.clone(), h.clone())).unwrap();
        let right = tensor(compose(f, g).unwrap(), compose(h0, h).unwrap());
        prop_assert!(agree_in_model(&name, &left, &right));
    }

    #[test]
    fn identities_are_neutral((name, t) in theory_and_term()) {
        let (s, e) = t.boundary().unwrap();
        let wrapped = compose(compose(Term::id(s), t.clone()).unwrap(), Term::id(e)).unwrap();
        prop_assert!(agree_in_model(&name, &t, &wrapped));
    }

    #[test]
    fn term_text_round_trips((name, t) in theory_and_term()) {
        let th = builtin_theory(&name).unwrap();
        let back = parse_term(&th, &t.to_string()).unwrap();
        prop_assert_eq!(back.boundary().unwrap(), t.boundary().unwrap());
        prop_assert!(agree_in_model(&name, &t, &back));
    }

    #[test]
    fn mrel_encoding_round_trips(r in matrix(4, 5)) {
        let w = encode_mrel(&r);
        prop_assert!(is_normal(&w, RuleSet::Multi));
        prop_assert_eq!(word_eval_mrel(&w).unwrap(), r.clone());
        prop_assert_eq!(w.to_string().parse::<MrelWord>().unwrap(), w);
        prop_assert_eq!(r.to_string().parse::<MultiRel>().unwrap(), r);
    }

    #[test]
    fn mrel_composition_is_matrix_product(a in matrix(3, 3), cols in 0usize..4, seed in any::<u64>()) {
        let b = MultiRel::from_vec(a.cols(), cols, (0..a.cols() * cols).map(|i| (seed >> (i % 60)) & 3).collect()).unwrap();
        let ab = a.then(&b).unwrap();
        for i in 0..a.rows() {
            for k in 0..cols {
                let direct: u64 = (0..a.cols()).map(|j| a.get(i, j) * b.get(j, k)).sum();
                prop_assert_eq!(ab.get(i, k), direct);
            }
        }
    }

    #[test]
    fn rel_encoding_round_trips(r in matrix(4, 1)) {
        let rel = quotient(&r);
        let w = encode_rel(&rel);
        prop_assert!(is_normal(&w, RuleSet::Qualitative));
        prop_assert_eq!(word_eval_rel(&w).unwrap(), rel.clone());
        prop_assert_eq!(rel.to_string().parse::<Rel>().unwrap(), rel);
    }

    #[test]
    fn normalization_is_sound_and_idempotent(w in prop::sample::select(enumerate_words(9)), qualitative in any::<bool>()) {
        let rules = if qualitative { RuleSet::Qualitative } else { RuleSet::Multi };
        let v = word_eval_mrel(&w).unwrap();
        let nf = normalize_word(&w, rules).unwrap();
        prop_assert!(is_normal(&nf, rules));
        prop_assert_eq!(normalize_word(&nf, rules).unwrap(), nf.clone());
        if qualitative {
            prop_assert_eq!(nf, encode_rel(&quotient(&v)));
        } else {
            prop_assert_eq!(word_eval_mrel(&nf).unwrap(), v.clone());
            prop_assert_eq!(nf, encode_mrel(&v));
        }
    }

    #[test]
    fn strategy_composition_laws(a in game(3), b in game(3), c in game(3), d in game(2), seeds in any::<[u64; 3]>()) {
        let r = strategy_on(a.clone(), b.clone(), seeds[0]);
        let s = strategy_on(b, c.clone(), seeds[1]);
        let t = strategy_on(c, d, seeds[2]);
        let rs = compose_strategies(&r, &s).unwrap();
        prop_assert!(check_strategy(&rs).is_ok());
        prop_assert_eq!(
            compose_strategies(&rs, &t).unwrap(),
            compose_strategies(&r, &compose_strategies(&s, &t).unwrap()).unwrap()
        );
        prop_assert_eq!(compose_strategies(&identity_strategy(&a), &r).unwrap(), r.clone());
        prop_assert_eq!(compose_strategies(&r, &identity_strategy(&r.tgt)).unwrap(), r.clone());
        prop_assert_eq!(r.to_string().parse::<Play>().unwrap(), r);
    }

    #[test]
    fn strategy_encoding_round_trips(a in game(3), b in game(3), seed in any::<u64>()) {
        let s = strategy_on(a, b, seed);
        let w = encode_strategy(&s).unwrap();
        prop_assert_eq!(gameword_eval(&w).unwrap(), s.clone());
        prop_assert_eq!(encode_strategy(&gameword_eval(&w).unwrap()).unwrap(), w);
    }

    #[test]
    fn formula_text_round_trips(vars in prop::collection::vec(prop::sample::select(vec!["x", "y", "z"]), 1..4), fa in prop::collection::vec(any::<bool>(), 1..4)) {
        let mut text = format!("P({})", vars.join(","));
        for (v, &universal) in vars.iter().zip(&fa) {
            text = format!("{} {v}. {text}", if universal { "forall" } else { "exists" });
        }
        let f: Formula = parse_formula(&text).unwrap();
        let again = parse_formula(&f.to_string()).unwrap();
        prop_assert!(again.alpha_eq(&f));
        let free: BTreeSet<String> = f.free_vars();
        let bound: BTreeSet<&str> = vars.iter().take(fa.len()).copied().collect();
        prop_assert!(free.iter().all(|v| !bound.contains(v.as_str())));
    }
}
