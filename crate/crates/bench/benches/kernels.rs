use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use denomlab::character::root_context;
use denomlab::combinatorics::NoTracking;
use denomlab::verify::{tracked_registry, verify_all_seeds, CampaignOptions};
use denomlab::*;

fn d4() -> Quiver {
    Quiver::from_arrows(4, &[(0, 1, 1), (2, 1, 1), (3, 1, 1)]).unwrap()
}

fn enumeration(c: &mut Criterion) {
    let root = Seed::root(d4(), None);
    c.bench_function("enumerate_d4", |b| b.iter(|| enumerate(black_box(&root), &EnumerateOptions::default(), &NoTracking).unwrap()));
    let wild = Seed::root(Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 1)]).unwrap(), None);
    c.bench_function("enumerate_wild_depth5", |b| b.iter(|| enumerate(black_box(&wild), &EnumerateOptions::depth(5), &NoTracking).unwrap()));
}

fn laurent(c: &mut Criterion) {
    let reg = enumerate(&Seed::root(Quiver::linear_a(4), None), &EnumerateOptions::default(), &NoTracking).unwrap();
    let vars: Vec<&LaurentPoly> = reg.variables.keys().collect();
    let f = vars[vars.len() - 1].mul(vars[vars.len() - 2]).unwrap();
    let g = vars[vars.len() - 3];
    c.bench_function("laurent_mul", |b| b.iter(|| black_box(&f).mul(black_box(g)).unwrap()));
    let fg = f.mul(g).unwrap();
    c.bench_function("laurent_exact_div", |b| b.iter(|| black_box(&fg).exact_div(black_box(g)).unwrap()));
}

fn category(c: &mut Criterion) {
    let q = Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 1)]).unwrap();
    let x = ObjLabel::Mod(IntVector(vec![3, 4, 4]));
    let y = ObjLabel::Mod(IntVector(vec![2, 3, 3]));
    c.bench_function("hom_ext_wild_uncached", |b| {
        b.iter(|| {
            let cat = ClusterCategory::new(Rationals, &q, CategoryConfig::default()).unwrap();
            (cat.hom_dim(&x, &y).unwrap(), cat.ext1(&x, &y).unwrap())
        })
    });
    let cat = ClusterCategory::new(Rationals, &Quiver::linear_a(4), CategoryConfig::default()).unwrap();
    let reg = tracked_registry(&cat, None).unwrap();
    let r = reg.seeds.values().nth(20).unwrap().tilt.clone().unwrap();
    c.bench_function("tilting_context_a4", |b| b.iter(|| TiltingContext::new(&cat, black_box(&r)).unwrap()));
}

fn campaigns(c: &mut Criterion) {
    let mut g = c.benchmark_group("campaigns");
    g.sample_size(10);
    let q = Quiver::linear_a(4);
    g.bench_function("denominators_a4", |b| {
        b.iter(|| {
            let cat = ClusterCategory::new(Rationals, &q, CategoryConfig::default()).unwrap();
            let reg = tracked_registry(&cat, None).unwrap();
            verify_all_seeds(&cat, &reg, &CampaignOptions::default()).unwrap()
        })
    });
    let d = d4();
    g.bench_function("classical_characters_d4", |b| {
        b.iter(|| {
            let cat = ClusterCategory::new(Rationals, &d, CategoryConfig::default()).unwrap();
            let ctx = root_context(&cat).unwrap();
            let eng = CharacterEngine::new(&cat, CharacterOptions::default());
            for m in cat.pool() {
                eng.indecomposable(&ctx, m).unwrap();
            }
        })
    });
    g.finish();
}

criterion_group!(benches, enumeration, laurent, category, campaigns);
criterion_main!(benches);
