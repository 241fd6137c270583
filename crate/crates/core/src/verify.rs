//! Bounded, deterministic checks of soundness, canonical forms, rewriting,
//! composition and the logic side. Each suite returns a [`SuiteReport`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::folog::{interpret_proof, parse_proof, parse_sequent, AxiomSet, Proof, Sequent};
use crate::games::{
    before_strategy, check_strategy, compose_strategies, enumerate_strategies, eval_games, generator_strategy,
    identity_strategy, Game, GamesModel, Strategy, GENERATOR_NAMES,
};
use crate::gameword::{encode_strategy, gameword_eval, gameword_to_term, reachable_strategies};
use crate::model::{counterexample, eval, Model};
use crate::monotone::{enumerate_monotone, MonotoneMap, MonotoneModel};
use crate::multirel::{
    encode_mrel, enumerate_words, is_normal, measure, normal_words, rewrite_steps, word_eval_mrel,
    word_to_term_mrel, MrelWord, MultiRel, MultiRelModel, NormalFormMemo, RuleSet,
};
use crate::rel::{encode_rel, normalize_word_rel, quotient, word_eval_rel, CartesianRelModel, Rel, RelModel};
use crate::signature::{EqTheory, TypeWord};
use crate::term::{compose, Term};
use crate::theories::builtin_theory;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.instances += other.instances;
        self.failures
            .extend(other.failures.into_iter().map(|f| format!("{}: {f}", other.suite)));
    }

    /// Machine-readable `suite,instances,failures`.
    pub fn porcelain(&self) -> String {
        format!("{},{},{}", self.suite, self.instances, self.failures.len())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(
            f,
            "{}: {status} ({} instances, {} failures)",
            self.suite,
            self.instances,
            self.failures.len()
        )?;
        for line in self.failures.iter().take(10) {
            write!(f, "\n  {line}")?;
        }
        if self.failures.len() > 10 {
            write!(f, "\n  ... {} more", self.failures.len() - 10)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Monotone,
    Mrel,
    Rel,
    /// Rel with the cartesian product as tensor, for dual objects.
    RelCartesian,
    Games,
}

impl ModelKind {
    pub fn parse(s: &str) -> Result<ModelKind> {
        Ok(match s {
            "monotone" => ModelKind::Monotone,
            "mrel" => ModelKind::Mrel,
            "rel" => ModelKind::Rel,
            "rel-cartesian" => ModelKind::RelCartesian,
            "games" => ModelKind::Games,
            other => {
                return Err(Error::Unsupported {
                    model: "verify",
                    what: format!("model `{other}`"),
                })
            }
        })
    }

    /// The intended model of each builtin theory.
    pub fn for_theory(name: &str) -> Result<ModelKind> {
        Ok(match name {
            "M" => ModelKind::Monotone,
            "B" => ModelKind::Mrel,
            "R" => ModelKind::Rel,
            "D" => ModelKind::RelCartesian,
            "G" => ModelKind::Games,
            other => return Err(Error::UnknownTheory(other.to_string())),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Monotone => "monotone",
            ModelKind::Mrel => "mrel",
            ModelKind::Rel => "rel",
            ModelKind::RelCartesian => "rel-cartesian",
            ModelKind::Games => "games",
        }
    }
}

/// Evaluates a term in the named model and prints the value.
pub fn eval_display(kind: ModelKind, t: &Term) -> Result<String> {
    Ok(match kind {
        ModelKind::Monotone => {
            let m = eval(&MonotoneModel, t)?;
            format!("{} {}\n{}", m.source, m.target, join(&m.image))
        }
        ModelKind::Mrel => eval(&MultiRelModel, t)?.to_string(),
        ModelKind::Rel => eval(&RelModel, t)?.to_string(),
        ModelKind::RelCartesian => eval(&CartesianRelModel::default(), t)?.to_string(),
        ModelKind::Games => eval(&GamesModel, t)?.to_string(),
    })
}

/// Semantic equality of two terms in the named model.
pub fn equivalent(kind: ModelKind, t1: &Term, t2: &Term) -> Result<bool> {
    let (b1, b2) = (t1.boundary()?, t2.boundary()?);
    if b1 != b2 {
        let (side, left, right) = if b1.0 != b2.0 { ("sources", b1.0, b2.0) } else { ("targets", b1.1, b2.1) };
        return Err(Error::Boundary {
            context: format!("equivalence check ({side})"),
            left,
            right,
        });
    }
    Ok(match kind {
        ModelKind::Monotone => counterexample(&MonotoneModel, t1, t2)?.is_none(),
        ModelKind::Mrel => counterexample(&MultiRelModel, t1, t2)?.is_none(),
        ModelKind::Rel => counterexample(&RelModel, t1, t2)?.is_none(),
        ModelKind::RelCartesian => counterexample(&CartesianRelModel::default(), t1, t2)?.is_none(),
        ModelKind::Games => counterexample(&GamesModel, t1, t2)?.is_none(),
    })
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn relations_in<M: Model>(theory: &EqTheory, model: &M, report: &mut SuiteReport) {
    for r in &theory.relations {
        report.instances += 1;
        match counterexample(model, &r.lhs, &r.rhs) {
            Ok(None) => {}
            Ok(Some((l, rv))) => report.fail(format!(
                "{}: {} = {} gives {l:?} vs {rv:?}",
                r.label, r.lhs, r.rhs
            )),
            Err(e) => report.fail(format!("{}: {e}", r.label)),
        }
    }
}

/// Evaluates both sides of every relation of `theory` in `model`.
pub fn check_relations(theory: &EqTheory, model: ModelKind) -> SuiteReport {
    let mut report = SuiteReport::new(format!("relations-{}-{}", theory.name, model.name()));
    match model {
        ModelKind::Monotone => relations_in(theory, &MonotoneModel, &mut report),
        ModelKind::Mrel => relations_in(theory, &MultiRelModel, &mut report),
        ModelKind::Rel => relations_in(theory, &RelModel, &mut report),
        ModelKind::RelCartesian => relations_in(theory, &CartesianRelModel::default(), &mut report),
        ModelKind::Games => relations_in(theory, &GamesModel, &mut report),
    }
    report
}

/// Bounds for the exhaustive and sampled suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest row/column count for matrices.
    pub max_dim: usize,
    /// Largest multirelation coefficient.
    pub max_entry: u64,
    /// Longest word (letters including `Z`) in the rewriting suites.
    pub max_word_len: usize,
    /// Largest `|A| + |B|` for exhaustive strategy suites.
    pub max_game_total: usize,
    /// Largest total number of moves in sampled compositions.
    pub fuzz_total: usize,
    pub fuzz_pairs: usize,
    pub fuzz_triples: usize,
    /// Largest monotone-map boundary and term size for the monoid suite.
    pub monotone_dim: usize,
    pub monotone_size: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_dim: 3,
            max_entry: 2,
            max_word_len: 8,
            max_game_total: 5,
            fuzz_total: 8,
            fuzz_pairs: 1000,
            fuzz_triples: 300,
            monotone_dim: 4,
            monotone_size: 8,
        }
    }
}

fn multirels(b: &Bounds) -> impl Iterator<Item = MultiRel> + '_ {
    (0..=b.max_dim).flat_map(move |m| (0..=b.max_dim).flat_map(move |n| MultiRel::enumerate(m, n, b.max_entry)))
}

fn rels(b: &Bounds) -> impl Iterator<Item = Rel> + '_ {
    (0..=b.max_dim).flat_map(move |m| (0..=b.max_dim).flat_map(move |n| Rel::enumerate(m, n)))
}

/// Every pair of games with `|A| + |B| ≤ total`.
pub fn game_pairs(total: usize) -> Vec<(Game, Game)> {
    let mut out = Vec::new();
    for n in 0..=total {
        for k in 0..=n {
            for a in Game::all_of_size(k) {
                for b in Game::all_of_size(n - k) {
                    out.push((a.clone(), b));
                }
            }
        }
    }
    out
}

/// Encodes every semantic object within bounds and checks that the word
/// evaluates back to it; encoded words must also be normal.
pub fn roundtrip_suite(model: ModelKind, b: &Bounds) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(format!("roundtrip-{}", model.name()));
    match model {
        ModelKind::Mrel => {
            for r in multirels(b) {
                let w = encode_mrel(&r);
                let back = word_eval_mrel(&w);
                report.check(back.as_ref() == Ok(&r) && is_normal(&w, RuleSet::Multi), || {
                    format!("{r:?} encodes to {w} which evaluates to {back:?}")
                });
            }
        }
        ModelKind::Rel => {
            for r in rels(b) {
                let w = encode_rel(&r);
                let back = word_eval_rel(&w);
                report.check(back.as_ref() == Ok(&r) && is_normal(&w, RuleSet::Qualitative), || {
                    format!("{r:?} encodes to {w} which evaluates to {back:?}")
                });
            }
        }
        ModelKind::Games => {
            let g = builtin_theory("G")?;
            for (src, tgt) in game_pairs(b.max_game_total) {
                for s in enumerate_strategies(&src, &tgt, 64)? {
                    report.instances += 1;
                    let w = match encode_strategy(&s) {
                        Ok(w) => w,
                        Err(e) => {
                            report.fail(format!("cannot encode\n{s}\n{e}"));
                            continue;
                        }
                    };
                    let back = gameword_eval(&w)?;
                    if back != s {
                        report.fail(format!("{w} evaluates to\n{back}\nnot\n{s}"));
                        continue;
                    }
                    if encode_strategy(&back)? != w {
                        report.fail(format!("{w} is not a fixed point of encoding"));
                    }
                    let t = gameword_to_term(&g, &w)?;
                    let via_term = eval_games(&t)?;
                    if via_term != s {
                        report.fail(format!("{w} as the term {t} evaluates to\n{via_term}"));
                    }
                }
            }
        }
        other => {
            return Err(Error::Unsupported {
                model: "roundtrip",
                what: other.name().to_string(),
            })
        }
    }
    Ok(report)
}

/// Compares, per boundary, the number of canonical words with the number
/// of semantic objects.
pub fn bijection_counts(model: ModelKind, b: &Bounds) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(format!("bijection-{}", model.name()));
    match model {
        ModelKind::Mrel | ModelKind::Rel => {
            let (rules, entry) = if model == ModelKind::Mrel {
                (RuleSet::Multi, b.max_entry)
            } else {
                (RuleSet::Qualitative, 1)
            };
            for m in 0..=b.max_dim {
                for n in 0..=b.max_dim {
                    let words = normal_words(m, n, rules, entry);
                    let expected = (entry + 1).pow((m * n) as u32) as usize;
                    let values: BTreeSet<MultiRel> =
                        words.iter().map(word_eval_mrel).collect::<Result<_>>()?;
                    report.check(words.len() == expected && values.len() == expected, || {
                        format!(
                            "{m}→{n}: {} canonical words with {} distinct values, expected {expected}",
                            words.len(),
                            values.len()
                        )
                    });
                }
            }
        }
        ModelKind::Games => {
            let reach = reachable_strategies(b.max_game_total);
            let mut by_boundary: BTreeMap<(Game, Game), BTreeSet<Strategy>> = BTreeMap::new();
            for s in reach {
                by_boundary.entry((s.src.clone(), s.tgt.clone())).or_default().insert(s);
            }
            for (src, tgt) in game_pairs(b.max_game_total) {
                let all = enumerate_strategies(&src, &tgt, 64)?;
                let words: BTreeSet<_> = all.iter().map(encode_strategy).collect::<Result<_>>()?;
                let generated = by_boundary.remove(&(src.clone(), tgt.clone())).unwrap_or_default();
                let generated_all = generated.iter().eq(all.iter());
                report.check(words.len() == all.len() && generated_all, || {
                    format!(
                        "({src}, {tgt}): {} strategies, {} canonical words, {} generated by letters",
                        all.len(),
                        words.len(),
                        generated.len()
                    )
                });
            }
        }
        ModelKind::Monotone => return Ok(monotone_coverage_suite(b)),
        ModelKind::RelCartesian => {
            return Err(Error::Unsupported {
                model: "bijection",
                what: model.name().to_string(),
            })
        }
    }
    Ok(report)
}

/// Every well-typed word within the length bound: each rewrite step
/// decreases the measure, preserves the value, and all orders agree.
pub fn rewriting_suite(rules: RuleSet, max_len: usize) -> Result<SuiteReport> {
    let name = match rules {
        RuleSet::Multi => "rewriting-B",
        RuleSet::Qualitative => "rewriting-R",
    };
    let mut report = SuiteReport::new(name);
    let mut memo = NormalFormMemo::default();
    let value = |w: &MrelWord| -> Result<MultiRel> {
        let v = word_eval_mrel(w)?;
        Ok(match rules {
            RuleSet::Multi => v,
            RuleSet::Qualitative => quotient(&v).to_multirel(),
        })
    };
    for w in enumerate_words(max_len) {
        report.instances += 1;
        let v = value(&w)?;
        for (pos, next) in rewrite_steps(&w, rules) {
            if measure(&next) >= measure(&w) {
                report.fail(format!("{w} -> {next} at {pos} does not decrease the measure"));
            }
            if value(&next)? != v {
                report.fail(format!("{w} -> {next} changes the value"));
            }
        }
        let nfs = memo.normal_forms(&w, rules);
        if nfs.len() != 1 {
            let shown: Vec<String> = nfs.iter().map(|x| x.to_string()).collect();
            report.fail(format!("{w} has normal forms {}", shown.join(" | ")));
        }
    }
    if !memo.decreasing {
        report.fail("a rewrite step did not decrease the measure".into());
    }
    Ok(report)
}

/// The idempotence rule identifies exactly the multirelations with the same
/// support: normalizing a canonical multirelation word with it yields the
/// canonical word of the quotient relation.
pub fn qualitative_merge_suite(b: &Bounds) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("qualitative-merge");
    for r in multirels(b) {
        let merged = normalize_word_rel(&encode_mrel(&r))?;
        let expected = encode_rel(&quotient(&r));
        report.check(merged == expected, || format!("{r:?}: {merged} vs {expected}"));
    }
    // Conversely, distinct supports never merge.
    let mut seen: BTreeMap<String, Rel> = BTreeMap::new();
    for r in rels(b) {
        let w = encode_rel(&r).to_string();
        if let Some(prev) = seen.insert(w.clone(), r.clone()) {
            report.fail(format!("{w} denotes both {prev:?} and {r:?}"));
        }
    }
    Ok(report)
}

/// Letter expansion agrees with direct word evaluation for every word
/// within the bound.
pub fn letter_term_suite(max_len: usize) -> Result<SuiteReport> {
    let b = builtin_theory("B")?;
    let mut report = SuiteReport::new("letter-terms-mrel");
    for w in enumerate_words(max_len) {
        let direct = word_eval_mrel(&w)?;
        let t = word_to_term_mrel(&b, &w)?;
        let via = eval(&MultiRelModel, &t)?;
        report.check(direct == via, || format!("{w}: {direct:?} vs {t} = {via:?}"));
    }
    Ok(report)
}

/// Terms reached by composing slices of `mu` and `eta` onto identities,
/// deduplicated by value; every monotone map within the bound must occur.
pub fn monotone_coverage_suite(b: &Bounds) -> SuiteReport {
    let mut report = SuiteReport::new("monoid-presents-monotone");
    let m = builtin_theory("M").expect("builtin");
    report.absorb(check_relations(&m, ModelKind::Monotone));
    let one = m.single_atom().expect("single sorted");
    let (mu, eta) = (m.gen("mu").expect("mu"), m.gen("eta").expect("eta"));
    let id = |n: usize| Term::id(TypeWord::repeat(one, n));
    let max_width = b.monotone_dim + b.monotone_size;

    let mut reached: BTreeMap<MonotoneMap, Term> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for w in 0..=b.monotone_dim {
        let t = id(w);
        let v = eval(&MonotoneModel, &t).expect("identity");
        reached.insert(v.clone(), t.clone());
        queue.push_back((t, v, 0usize));
    }
    while let Some((t, v, size)) = queue.pop_front() {
        if size == b.monotone_size {
            continue;
        }
        let w = v.target;
        let mut slices = Vec::new();
        for k in 0..w.saturating_sub(1) {
            slices.push(id(k).tensor_with(mu.clone()).tensor_with(id(w - k - 2)));
        }
        if w < max_width {
            for k in 0..=w {
                slices.push(id(k).tensor_with(eta.clone()).tensor_with(id(w - k)));
            }
        }
        for s in slices {
            let next = compose(t.clone(), s).expect("slice matches the width");
            let nv = eval(&MonotoneModel, &next).expect("M term");
            if !reached.contains_key(&nv) {
                reached.insert(nv.clone(), next.clone());
                queue.push_back((next, nv, size + 1));
            }
        }
    }
    for src in 0..=b.monotone_dim {
        for tgt in 0..=b.monotone_dim {
            for f in enumerate_monotone(src, tgt) {
                report.check(reached.get(&f).is_some_and(|t| t.size() <= b.monotone_size), || {
                    format!("no term of size ≤ {} denotes {f:?}", b.monotone_size)
                });
            }
        }
    }
    report
}

/// A strategy drawn by rejection sampling: each legal pair is kept with a
/// random density, and cyclic draws are discarded.
pub fn random_strategy(src: &Game, tgt: &Game, rng: &mut impl Rng) -> Strategy {
    let cands = Strategy::candidate_deps(src, tgt);
    for _ in 0..64 {
        let density: f64 = rng.gen_range(0.0..0.7);
        let s = Strategy::new(
            src.clone(),
            tgt.clone(),
            cands.iter().copied().filter(|_| rng.gen_bool(density)),
        );
        if check_strategy(&s).is_ok() {
            return s;
        }
    }
    Strategy::empty(src.clone(), tgt.clone())
}

fn random_game(len: usize, rng: &mut impl Rng) -> Game {
    Game::all_of_size(len).swap_remove(rng.gen_range(0..1 << len))
}

/// Splits `total` moves at random into `parts` games.
fn random_games(parts: usize, max_total: usize, rng: &mut impl Rng) -> Vec<Game> {
    let total = rng.gen_range(0..=max_total);
    let mut cuts: Vec<usize> = (0..parts - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort();
    let mut sizes = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain([total]) {
        sizes.push(c - prev);
        prev = c;
    }
    sizes.into_iter().map(|n| random_game(n, rng)).collect()
}

/// Seeded random compositions: closure, identity laws, associativity and
/// functoriality of `⊲`.
pub fn composition_closure_fuzz(b: &Bounds, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("composition-closure");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..b.fuzz_pairs {
        let g = random_games(3, b.fuzz_total, &mut rng);
        let s = random_strategy(&g[0], &g[1], &mut rng);
        let t = random_strategy(&g[1], &g[2], &mut rng);
        let st = compose_strategies(&s, &t)?;
        report.check(check_strategy(&st).is_ok(), || format!("composite is not a strategy:\n{s}\nthen\n{t}\ngives\n{st}"));
    }
    for _ in 0..b.fuzz_triples {
        let g = random_games(4, b.fuzz_total, &mut rng);
        let r = random_strategy(&g[0], &g[1], &mut rng);
        let s = random_strategy(&g[1], &g[2], &mut rng);
        let t = random_strategy(&g[2], &g[3], &mut rng);
        let left = compose_strategies(&compose_strategies(&r, &s)?, &t)?;
        let right = compose_strategies(&r, &compose_strategies(&s, &t)?)?;
        report.check(left == right, || format!("associativity fails on\n{r}\n;\n{s}\n;\n{t}"));
        let l_id = compose_strategies(&identity_strategy(&r.src), &r)?;
        let r_id = compose_strategies(&r, &identity_strategy(&r.tgt))?;
        report.check(l_id == r && r_id == r, || format!("identity law fails on\n{r}"));

        // (r ; s) ⊲ (r' ; s') = (r ⊲ r') ; (s ⊲ s')
        let h = random_games(3, b.fuzz_total.saturating_sub(g[0].len() + g[1].len() + g[2].len()), &mut rng);
        let r2 = random_strategy(&h[0], &h[1], &mut rng);
        let s2 = random_strategy(&h[1], &h[2], &mut rng);
        let lhs = before_strategy(&compose_strategies(&r, &s)?, &compose_strategies(&r2, &s2)?);
        let rhs = compose_strategies(&before_strategy(&r, &r2), &before_strategy(&s, &s2))?;
        report.check(lhs == rhs, || format!("before is not functorial on\n{r}\n{s}\n{r2}\n{s2}"));
    }
    // Copycat is idempotent and the zig-zags are identities.
    for (src, _) in game_pairs(4).into_iter().filter(|(_, t)| t.is_empty()) {
        let c = identity_strategy(&src);
        report.check(compose_strategies(&c, &c)? == c, || format!("copycat on {src} is not idempotent"));
    }
    let g = builtin_theory("G")?;
    for label in ["zigzag-P", "zigzag-O"] {
        let rel = g.relation(label).expect("zig-zag relation");
        let (lhs, id) = (eval_games(&rel.lhs)?, eval_games(&rel.rhs)?);
        report.check(lhs == id, || format!("{label}: {lhs} is not the identity"));
    }
    Ok(report)
}

/// `(exists-l x (exists-r t ax))` against `(exists-r t (exists-l x ax))`,
/// for witnesses with and without `x` free.
pub fn permutation_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("rule-permutation");
    let single = parse_sequent("exists x. P(x) |- exists z. Q(z)")?;
    for (witness, x_free) in [("c()", false), ("f(x)", true), ("g(x,c())", true), ("h()", false)] {
        let leaf = format!("(ax P(x) Q({witness}))");
        let axioms = AxiomSet::new(vec![AxiomSet::parse_line(&format!("P(x) |- Q({witness})"))?])?;
        let shape1 = parse_proof(&format!("(exists-l x (exists-r {witness} {leaf}))"))?;
        let shape2 = parse_proof(&format!("(exists-r {witness} (exists-l x {leaf}))"))?;
        permutation_case(&mut report, &single, &axioms, &shape1, &shape2, x_free);
    }
    // The witness mentions an eigenvariable bound by an outer rule.
    let nested = parse_sequent("exists y. exists x. P(x,y) |- exists z. Q(z)")?;
    let axioms = AxiomSet::new(vec![AxiomSet::parse_line("P(x,y) |- Q(f(y))")?])?;
    let leaf = "(ax P(x,y) Q(f(y)))";
    let shape1 = parse_proof(&format!("(exists-l y (exists-l x (exists-r f(y) {leaf})))"))?;
    let shape2 = parse_proof(&format!("(exists-l y (exists-r f(y) (exists-l x {leaf})))"))?;
    permutation_case(&mut report, &nested, &axioms, &shape1, &shape2, false);
    let s = interpret_proof(&shape1, &nested, &axioms)?;
    report.check(s.deps.len() == 1, || format!("expected one dependency, got\n{s}"));
    Ok(report)
}

fn permutation_case(
    report: &mut SuiteReport,
    seq: &Sequent,
    axioms: &AxiomSet,
    shape1: &Proof,
    shape2: &Proof,
    x_free: bool,
) {
    let first = interpret_proof(shape1, seq, axioms);
    let second = interpret_proof(shape2, seq, axioms);
    let ok = match (&first, &second, x_free) {
        (Ok(a), Ok(b), false) => a == b,
        (Ok(_), Err(Error::Proof { .. }), true) => true,
        _ => false,
    };
    report.check(ok, || format!("{shape1} vs {shape2}: {first:?} / {second:?}"));
}

/// Handwritten proofs, one per generator, with their sequents and axioms.
pub const DEFINABILITY_CORPUS: [(&str, &str, &str, &str); 13] = [
    (
        "muP",
        "exists x. exists y. P(x,y) |- exists z. Q(z)",
        "P(x,y) |- Q(f(x,y))",
        "(exists-l x (exists-l y (exists-r f(x,y) (ax P(x,y) Q(f(x,y))))))",
    ),
    ("etaP", "P |- exists x. Q(x)", "P |- Q(c())", "(exists-r c() (ax P Q(c())))"),
    (
        "deltaP",
        "exists x. P(x) |- exists y. exists z. Q(y,z)",
        "P(x) |- Q(x,x)",
        "(exists-l x (exists-r x (exists-r x (ax P(x) Q(x,x)))))",
    ),
    ("epsP", "exists x. P(x) |- Q", "P(x) |- Q", "(exists-l x (ax P(x) Q))"),
    (
        "gammaP",
        "exists x. exists y. P(x,y) |- exists z. exists w. Q(z,w)",
        "P(x,y) |- Q(y,x)",
        "(exists-l x (exists-l y (exists-r y (exists-r x (ax P(x,y) Q(y,x))))))",
    ),
    (
        "muO",
        "forall x. forall y. P(x,y) |- forall z. Q(z)",
        "P(z,z) |- Q(z)",
        "(forall-r z (forall-l z (forall-l z (ax P(z,z) Q(z)))))",
    ),
    ("etaO", "P |- forall x. Q(x)", "P |- Q(x)", "(forall-r x (ax P Q(x)))"),
    (
        "deltaO",
        "forall x. P(x) |- forall y. forall z. Q(y,z)",
        "P(f(y,z)) |- Q(y,z)",
        "(forall-r y (forall-r z (forall-l f(y,z) (ax P(f(y,z)) Q(y,z)))))",
    ),
    ("epsO", "forall x. P(x) |- Q", "P(c()) |- Q", "(forall-l c() (ax P(c()) Q))"),
    (
        "gammaO",
        "forall x. forall y. P(x,y) |- forall z. forall w. Q(z,w)",
        "P(w,z) |- Q(z,w)",
        "(forall-r z (forall-r w (forall-l w (forall-l z (ax P(w,z) Q(z,w))))))",
    ),
    (
        "etaOP",
        "P |- forall x. exists y. Q(x,y)",
        "P |- Q(x,x)",
        "(forall-r x (exists-r x (ax P Q(x,x))))",
    ),
    (
        "epsOP",
        "exists x. forall y. P(x,y) |- Q",
        "P(x,x) |- Q",
        "(exists-l x (forall-l x (ax P(x,x) Q)))",
    ),
    (
        "gammaOP",
        "exists x. forall y. P(x,y) |- forall z. exists w. Q(z,w)",
        "P(x,z) |- Q(z,x)",
        "(exists-l x (forall-r z (forall-l z (exists-r x (ax P(x,z) Q(z,x))))))",
    ),
];

/// Every generator strategy is the interpretation of a proof.
pub fn definability_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("definability");
    for (name, seq, axiom, proof) in DEFINABILITY_CORPUS {
        let seq = parse_sequent(seq)?;
        let axioms = AxiomSet::new(vec![AxiomSet::parse_line(axiom)?])?;
        let got = interpret_proof(&parse_proof(proof)?, &seq, &axioms);
        let want = generator_strategy(name)?;
        report.check(got.as_ref() == Ok(&want), || format!("{name}: got {got:?}"));
    }
    report.check(GENERATOR_NAMES.len() == DEFINABILITY_CORPUS.len(), || "corpus is incomplete".into());
    Ok(report)
}

pub const SUITE_NAMES: [&str; 12] = [
    "relations",
    "roundtrip-mrel",
    "roundtrip-rel",
    "roundtrip-games",
    "bijection",
    "rewriting",
    "qualitative-merge",
    "letter-terms",
    "monoid",
    "composition",
    "permutation",
    "definability",
];

/// Runs a suite by name; `relations` covers every builtin theory.
pub fn run_suite(name: &str, b: &Bounds, seed: u64) -> Result<Vec<SuiteReport>> {
    Ok(match name {
        "relations" => crate::theories::BUILTIN_NAMES
            .iter()
            .map(|t| Ok(check_relations(&builtin_theory(t)?, ModelKind::for_theory(t)?)))
            .collect::<Result<_>>()?,
        "roundtrip-mrel" => vec![roundtrip_suite(ModelKind::Mrel, b)?],
        "roundtrip-rel" => vec![roundtrip_suite(ModelKind::Rel, b)?],
        "roundtrip-games" => vec![roundtrip_suite(ModelKind::Games, b)?],
        "bijection" => vec![
            bijection_counts(ModelKind::Mrel, b)?,
            bijection_counts(ModelKind::Rel, b)?,
            bijection_counts(ModelKind::Games, b)?,
        ],
        "rewriting" => vec![
            rewriting_suite(RuleSet::Multi, b.max_word_len)?,
            rewriting_suite(RuleSet::Qualitative, b.max_word_len)?,
        ],
        "qualitative-merge" => vec![qualitative_merge_suite(b)?],
        "letter-terms" => vec![letter_term_suite(b.max_word_len)?],
        "monoid" => vec![monotone_coverage_suite(b)],
        "composition" => vec![composition_closure_fuzz(b, seed)?],
        "permutation" => vec![permutation_suite()?],
        "definability" => vec![definability_suite()?],
        other => {
            return Err(Error::Unsupported {
                model: "verify",
                what: format!("suite `{other}`"),
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Bounds {
        Bounds {
            max_dim: 2,
            max_entry: 1,
            max_word_len: 6,
            max_game_total: 3,
            fuzz_total: 6,
            fuzz_pairs: 50,
            fuzz_triples: 20,
            monotone_dim: 3,
            monotone_size: 6,
        }
    }

    #[test]
    fn relations_examples() {
        assert!(check_relations(&builtin_theory("B").unwrap(), ModelKind::Mrel).passed());
        let r = check_relations(&builtin_theory("R").unwrap(), ModelKind::Mrel);
        assert_eq!(r.failures.len(), 1);
        assert!(r.failures[0].starts_with("qualitative"), "{}", r.failures[0]);
        assert!(r.failures[0].contains("[2]") && r.failures[0].contains("[1]"), "{}", r.failures[0]);
        assert!(check_relations(&builtin_theory("G").unwrap(), ModelKind::Games).passed());
    }

    #[test]
    fn small_suites_pass() {
        let b = small();
        for name in SUITE_NAMES {
            for r in run_suite(name, &b, 42).unwrap() {
                assert!(r.passed(), "{r}");
                assert!(r.instances > 0, "{r}");
            }
        }
    }

    #[test]
    fn bijection_example_counts() {
        let b = Bounds {
            max_dim: 2,
            max_entry: 1,
            ..Bounds::default()
        };
        assert_eq!(normal_words(2, 2, RuleSet::Multi, b.max_entry).len(), 16);
        let g = |s: &str| s.parse::<Game>().unwrap();
        let words: BTreeSet<_> = enumerate_strategies(&g("I"), &g("OP"), 64)
            .unwrap()
            .iter()
            .map(|s| encode_strategy(s).unwrap())
            .collect();
        assert_eq!(words.len(), 2);
    }

    #[test]
    fn reports_render() {
        let mut r = SuiteReport::new("demo");
        r.check(true, String::new);
        r.check(false, || "bad".into());
        assert_eq!(r.porcelain(), "demo,2,1");
        assert!(r.to_string().contains("FAILED"));
    }

    #[test]
    fn seeded_fuzz_is_deterministic() {
        let b = small();
        assert_eq!(composition_closure_fuzz(&b, 7).unwrap(), composition_closure_fuzz(&b, 7).unwrap());
    }
}
