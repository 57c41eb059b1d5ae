mod common;

use std::collections::BTreeSet;

use common::*;
use denomlab::{Field, PathAlgebra, PrimeField, Quiver, Rationals, Rep};

/// τ⁻¹-orbits of the projectives, stopping at injectives.
fn preprojectives<K: Field>(alg: &PathAlgebra<K>, rounds: usize) -> Vec<Rep<K::Elem>> {
    let mut out = Vec::new();
    for i in 0..alg.n() {
        let mut m = alg.projective(i).clone();
        for _ in 0..=rounds {
            if m.is_zero() {
                break;
            }
            out.push(m.clone());
            if !alg.injective_free(&m) {
                break;
            }
            m = alg.tau_inv(&m).unwrap();
        }
    }
    out
}

fn dims(m: &Rep<impl Clone>) -> Vec<i64> {
    m.dims.iter().map(|&d| d as i64).collect()
}

#[test]
fn tau_inverse_orbits_match_coxeter_knitting() {
    for q in [a(2), a(3), a3_sink(), a(4), d4()] {
        let alg = PathAlgebra::new(Rationals, &q).unwrap();
        let mods = preprojectives(&alg, 20);
        let got: BTreeSet<Vec<i64>> = mods.iter().map(dims).collect();
        let want: BTreeSet<Vec<i64>> = preprojective_dims(&q, 20).into_iter().collect();
        assert_eq!(got, want, "quiver {:?}", q.arrows());
        assert_eq!(got, positive_roots(&q), "every indecomposable is preprojective in Dynkin type");
        assert_eq!(mods.len(), got.len());
        for m in &mods {
            assert!(alg.is_indecomposable(m));
            assert!(alg.is_rigid(m));
        }
    }
}

#[test]
fn kronecker_tail_preprojectives_match_coxeter() {
    let q = kronecker_tail();
    let alg = PathAlgebra::new(Rationals, &q).unwrap();
    let got: Vec<Vec<i64>> = preprojectives(&alg, 3).iter().map(dims).collect();
    let want = preprojective_dims(&q, 3);
    assert_eq!(got, want);
}

#[test]
fn tau_and_tau_inverse_are_mutually_inverse() {
    let q = d4();
    let alg = PathAlgebra::new(Rationals, &q).unwrap();
    for m in preprojectives(&alg, 20) {
        if alg.projective_free(&m) {
            let t = alg.tau(&m).unwrap();
            assert!(alg.is_isomorphic(&alg.tau_inv(&t).unwrap(), &m, 3));
        }
    }
}

#[test]
fn euler_form_and_ar_formula() {
    for q in [a(3), a3_sink(), d4(), kronecker_tail()] {
        let alg = PathAlgebra::new(Rationals, &q).unwrap();
        let rounds = if q.is_dynkin() { 20 } else { 1 };
        let pool = preprojectives(&alg, rounds);
        for m in &pool {
            for n in &pool {
                let h = alg.hom_dim(m, n) as i64;
                let e = alg.ext1_dim(m, n) as i64;
                assert_eq!(h - e, alg.euler_form(&m.dim_vector(), &n.dim_vector()));
                if alg.projective_free(m) {
                    let tm = alg.tau(m).unwrap();
                    assert_eq!(e as usize, alg.hom_dim(n, &tm));
                }
            }
        }
    }
}

#[test]
fn dimensions_agree_across_fields() {
    let q = d4();
    let over_q = PathAlgebra::new(Rationals, &q).unwrap();
    let table = |alg_dims: &dyn Fn(usize, usize) -> (usize, usize)| -> Vec<(usize, usize)> {
        let n = 12;
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| alg_dims(i, j)).collect()
    };
    let pq = preprojectives(&over_q, 20);
    let want = table(&|i, j| (over_q.hom_dim(&pq[i], &pq[j]), over_q.ext1_dim(&pq[i], &pq[j])));
    for p in [2, 3, 5] {
        let alg = PathAlgebra::new(PrimeField::new(p).unwrap(), &q).unwrap();
        let pp = preprojectives(&alg, 20);
        assert_eq!(pp.len(), pq.len());
        let got = table(&|i, j| (alg.hom_dim(&pp[i], &pp[j]), alg.ext1_dim(&pp[i], &pp[j])));
        assert_eq!(got, want, "p = {p}");
    }
}

#[test]
fn standard_module_hom_identity() {
    let q = Quiver::from_arrows(4, &[(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
    let alg = PathAlgebra::new(Rationals, &q).unwrap();
    let pool = preprojectives(&alg, 2);
    for x in &pool {
        for i in 0..4 {
            assert_eq!(alg.hom_dim(alg.projective(i), x), x.dims[i]);
            assert_eq!(alg.hom_dim(x, alg.injective(i)), x.dims[i]);
        }
    }
    assert_eq!(alg.projective(0).dims, projective_dims(&q)[0].iter().map(|&d| d as usize).collect::<Vec<_>>());
}
