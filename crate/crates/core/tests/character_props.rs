mod common;

use denomlab::character::{classical_cc, root_context};
use denomlab::combinatorics::denominator;
use denomlab::verify::tracked_registry;
use denomlab::*;

fn cat(q: &Quiver) -> ClusterCategory<Rationals> {
    ClusterCategory::new(Rationals, q, CategoryConfig::default()).unwrap()
}

#[test]
fn classical_values() {
    for q in [common::a(3), common::d4()] {
        let c = cat(&q);
        let root = root_context(&c).unwrap();
        let eng = CharacterEngine::new(&c, CharacterOptions::default());
        let reg = tracked_registry(&c, None).unwrap();
        for (u, entry) in &reg.variables {
            let m = entry.object.clone().unwrap();
            let x = classical_cc(&eng, &root, &CObj::single(m.clone())).unwrap();
            assert_eq!(&x.value, u, "{m}");
            assert_eq!(denominator(&x.value), m.dim_vector(q.n()));
        }
        assert_eq!(classical_cc(&eng, &root, &CObj::zero()).unwrap().value, LaurentPoly::one(q.n()));
    }
}

#[test]
fn substitution_recovers_classical_characters() {
    let c = cat(&common::a3_sink());
    let root = root_context(&c).unwrap();
    let eng = CharacterEngine::new(&c, CharacterOptions::default());
    let reg = tracked_registry(&c, None).unwrap();
    for s in reg.seeds.values() {
        let r = s.tilt.clone().unwrap();
        let ctx = TiltingContext::new(&c, &r).unwrap();
        let images: Vec<LaurentPoly> =
            r.iter().map(|ri| classical_cc(&eng, &root, &CObj::single(ri.clone())).unwrap().value).collect();
        assert_eq!(images, s.vars);
        for m in c.pool() {
            let xt = eng.indecomposable(&ctx, m).unwrap();
            assert_eq!(xt.value, xt.ledger_sum());
            let back = xt.value.substitute(&images).unwrap();
            assert_eq!(back, classical_cc(&eng, &root, &CObj::single(m.clone())).unwrap().value, "{m} at {:?}", s.trace);
        }
    }
}

#[test]
fn multiplicativity_and_shifted_summands() {
    let c = cat(&common::a(3));
    let reg = tracked_registry(&c, None).unwrap();
    let eng = CharacterEngine::new(&c, CharacterOptions::default());
    let s = reg.seeds.values().nth(5).unwrap();
    let r = s.tilt.clone().unwrap();
    let ctx = TiltingContext::new(&c, &r).unwrap();
    for (i, ri) in r.iter().enumerate() {
        assert_eq!(eng.indecomposable(&ctx, ri).unwrap().value, LaurentPoly::var(3, i));
    }
    let pool = c.pool();
    for (a, b) in pool.iter().zip(pool.iter().skip(3)) {
        let xa = eng.indecomposable(&ctx, a).unwrap().value.clone();
        let xb = eng.indecomposable(&ctx, b).unwrap().value.clone();
        let both = eng.character(&ctx, &CObj::single(a.clone()).with(b.clone(), 1).with(a.clone(), 1)).unwrap();
        assert_eq!(both.value, xa.pow(2).mul(&xb).unwrap());
    }
}

#[test]
fn euler_characteristics_match_across_prime_lists() {
    let c = cat(&common::a(3));
    let ctx = root_context(&c).unwrap();
    let p1 = c.tau_inv(&ObjLabel::Shift(0)).unwrap();
    let a = CharacterEngine::new(&c, CharacterOptions::default()).indecomposable(&ctx, &p1).unwrap();
    let b = CharacterEngine::new(&c, CharacterOptions { primes: vec![3, 5, 7, 11, 13, 17], ..Default::default() })
        .indecomposable(&ctx, &p1)
        .unwrap();
    assert_eq!(a.value, b.value);
    for (s, t) in a.terms.iter().zip(&b.terms) {
        assert_eq!((s.e.clone(), s.chi), (t.e.clone(), t.chi));
    }
}
