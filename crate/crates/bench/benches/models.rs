use criterion::{black_box, criterion_group, criterion_main, Criterion};

use diagrammar::folog::{interpret_proof, parse_proof, parse_sequent, AxiomSet};
use diagrammar::games::{compose_strategies, eval_games, generator_strategy};
use diagrammar::gameword::encode_strategy;
use diagrammar::multirel::{encode_mrel, eval_mrel, normalize_word, RuleSet};
use diagrammar::verify::{self, Bounds};
use diagrammar::{builtin_theory, parse_term, MrelWord, MultiRel};

fn evaluation(c: &mut Criterion) {
    let b = builtin_theory("B").unwrap();
    let t = parse_term(&b, "(delta * delta) ; (id(1) * gamma * id(1)) ; (mu * mu) ; (delta * delta) ; (mu * mu)").unwrap();
    c.bench_function("eval_mrel bialgebra term", |bench| bench.iter(|| eval_mrel(black_box(&t)).unwrap()));

    let g = builtin_theory("G").unwrap();
    let zig = &g.relation("zigzag-P").unwrap().lhs;
    c.bench_function("eval_games zig-zag", |bench| bench.iter(|| eval_games(black_box(zig)).unwrap()));
}

fn canonical_forms(c: &mut Criterion) {
    let r: MultiRel = "3 3\n2 0 1; 1 2 0; 0 1 2".parse().unwrap();
    c.bench_function("encode_mrel 3x3", |bench| bench.iter(|| encode_mrel(black_box(&r))));

    let w: MrelWord = "W0 H E W0 E H E H Z".parse().unwrap();
    c.bench_function("normalize word", |bench| {
        bench.iter(|| normalize_word(black_box(&w), RuleSet::Multi).unwrap())
    });

    let mu = generator_strategy("muP").unwrap();
    c.bench_function("encode_strategy muP", |bench| bench.iter(|| encode_strategy(black_box(&mu)).unwrap()));
}

fn games(c: &mut Criterion) {
    let delta = generator_strategy("deltaP").unwrap();
    let mu = generator_strategy("muP").unwrap();
    c.bench_function("compose deltaP ; muP", |bench| {
        bench.iter(|| compose_strategies(black_box(&delta), black_box(&mu)).unwrap())
    });

    let seq = parse_sequent("exists x. exists y. P(x,y) |- exists z. Q(z)").unwrap();
    let axioms = AxiomSet::new(vec![AxiomSet::parse_line("P(x,y) |- Q(f(x,y))").unwrap()]).unwrap();
    let proof = parse_proof("(exists-l x (exists-l y (exists-r f(x,y) (ax P(x,y) Q(f(x,y))))))").unwrap();
    c.bench_function("interpret proof", |bench| {
        bench.iter(|| interpret_proof(black_box(&proof), &seq, &axioms).unwrap())
    });
}

fn suites(c: &mut Criterion) {
    let b = Bounds::default();
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    group.bench_function("composition fuzz", |bench| {
        bench.iter(|| verify::composition_closure_fuzz(&b, 1).unwrap())
    });
    group.finish();
}

criterion_group!(benches, evaluation, canonical_forms, games, suites);
criterion_main!(benches);
