//! Parallel against sequential on the three hot loops: completion, the
//! composition check behind `check`, and the ideal span behind `verify`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nagsb::cli::parse_presentation;
use nagsb::complete::{is_gsb, shirshov_complete, CompletionConfig};
use nagsb::compose::ShapeBound;
use nagsb::embed::build_embedding;
use nagsb::par::set_parallel;
use nagsb::verify::ideal_span;

const SOURCE: &str = "\
yvars: y1 > y2
xvars: x1 > x2 > x3
rel: y1 x1 - 1/2 y2 x2
rel: y1 x2 - 1/2 y2 x2
rel: ((x1 x1) x1) - x2
rel: (x1 x1) - x3
";

const EMBED_SOURCE: &str = "\
yvars: y1
xvars: x1 > x2
crel: y1^2 - y1
rel: y1 x1 - x2
";

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn completion(c: &mut Criterion) {
    let p = parse_presentation(SOURCE).unwrap();
    let rels = p.lifted();
    let config = CompletionConfig {
        max_deg: 5,
        shape_bound: ShapeBound::AtMost(4),
        ..Default::default()
    };
    let mut group = c.benchmark_group("complete");
    group.sample_size(10);
    for (name, on) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            set_parallel(on);
            b.iter(|| shirshov_complete(&p.ctx, &rels, &config).unwrap())
        });
    }
    group.finish();
    set_parallel(true);
}

fn composition_check(c: &mut Criterion) {
    let p = parse_presentation(EMBED_SOURCE).unwrap();
    let e = build_embedding(&p, &CompletionConfig::default()).unwrap();
    let rules = e.rules();
    let config = CompletionConfig {
        shape_bound: ShapeBound::AtMost(4),
        ..Default::default()
    };
    let mut group = c.benchmark_group("is_gsb_embedding");
    group.sample_size(10);
    for (name, on) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            set_parallel(on);
            b.iter(|| is_gsb(&e.target.ctx, &rules, &config).unwrap())
        });
    }
    group.finish();
    set_parallel(true);
}

fn span(c: &mut Criterion) {
    let p = parse_presentation(SOURCE).unwrap();
    let basis = shirshov_complete(&p.ctx, &p.lifted(), &CompletionConfig::default())
        .unwrap()
        .basis;
    let mut group = c.benchmark_group("ideal_span");
    group.sample_size(10);
    for (name, on) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            set_parallel(on);
            b.iter(|| ideal_span(&p.ctx, &basis, 4))
        });
    }
    group.finish();
    set_parallel(true);
}

criterion_group!(benches, completion, composition_check, span);
criterion_main!(benches);
