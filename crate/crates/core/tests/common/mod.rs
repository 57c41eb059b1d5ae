//! Independent oracles shared by the integration tests. Nothing here calls
//! into the mutation or representation code it is used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use denomlab::Quiver;

pub fn a(n: usize) -> Quiver {
    Quiver::linear_a(n)
}

/// A3 with a sink in the middle: 1 -> 2 <- 3.
pub fn a3_sink() -> Quiver {
    Quiver::from_arrows(3, &[(0, 1, 1), (2, 1, 1)]).unwrap()
}

/// D4 with the branch point 2 as a sink.
pub fn d4() -> Quiver {
    Quiver::from_arrows(4, &[(0, 1, 1), (2, 1, 1), (3, 1, 1)]).unwrap()
}

/// 1 => 2 -> 3.
pub fn kronecker_tail() -> Quiver {
    Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 1)]).unwrap()
}

fn sym_cartan(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.n();
    (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { -q.b(i, j).abs() }).collect()).collect()
}

/// Positive roots by closing the simple roots under simple reflections.
pub fn positive_roots(q: &Quiver) -> BTreeSet<Vec<i64>> {
    let n = q.n();
    let c = sym_cartan(q);
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut todo: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    while let Some(r) = todo.pop() {
        if !roots.insert(r.clone()) {
            continue;
        }
        assert!(roots.len() < 10_000, "not a finite root system");
        for i in 0..n {
            let pair: i64 = (0..n).map(|j| c[i][j] * r[j]).sum();
            let mut s = r.clone();
            s[i] -= pair;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && !roots.contains(&s) {
                todo.push(s);
            }
        }
    }
    roots
}

pub fn almost_positive_root_count(q: &Quiver) -> usize {
    positive_roots(q).len() + q.n()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Inverse Coxeter transformation `Φ⁻¹ = −(Eᵀ)⁻¹ E` with `E = I − A` the Euler matrix.
pub fn inverse_coxeter(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.n();
    let adj: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| q.b(i, j).max(0)).collect()).collect();
    let e: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64 - adj[i][j]).collect()).collect();
    // E⁻¹ = I + A + A² + … since A is nilpotent
    let mut einv: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut pw = einv.clone();
    for _ in 0..n {
        pw = mat_mul(&pw, &adj);
        for i in 0..n {
            for j in 0..n {
                einv[i][j] += pw[i][j];
            }
        }
    }
    let m = mat_mul(&transpose(&einv), &e);
    m.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect()
}

pub fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Dimension vectors of projectives: number of paths `i ⇝ v`, by counting on the b-matrix.
pub fn projective_dims(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.n();
    let order = q.topological_order().unwrap();
    (0..n)
        .map(|i| {
            let mut d = vec![0i64; n];
            d[i] = 1;
            for &v in &order {
                for w in 0..n {
                    if q.b(v, w) > 0 {
                        d[w] += d[v] * q.b(v, w);
                    }
                }
            }
            d
        })
        .collect()
}

/// Preprojective dimension vectors `Φ^{-r} dim P_i` up to `rounds` steps, dropping
/// non-positive results (which mark the end of a τ⁻¹-orbit).
pub fn preprojective_dims(q: &Quiver, rounds: usize) -> Vec<Vec<i64>> {
    let phi = inverse_coxeter(q);
    let mut out = Vec::new();
    for p in projective_dims(q) {
        let mut v = p;
        for _ in 0..=rounds {
            if v.iter().any(|&x| x < 0) || v.iter().all(|&x| x == 0) {
                break;
            }
            out.push(v.clone());
            v = apply(&phi, &v);
        }
    }
    out
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let (p, q) = a;
    let (r, s) = b;
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

/// Triangulations of a convex `m`-gon, each as a sorted set of diagonals; brute force.
pub fn triangulations(m: usize) -> BTreeSet<BTreeSet<(usize, usize)>> {
    let diagonals: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 2..m).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == m - 1))
        .collect();
    let want = m - 3;
    let mut out = BTreeSet::new();
    let mut chosen = Vec::new();
    fn rec(
        start: usize,
        want: usize,
        diagonals: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut BTreeSet<BTreeSet<(usize, usize)>>,
    ) {
        if chosen.len() == want {
            out.insert(chosen.iter().copied().collect());
            return;
        }
        for idx in start..diagonals.len() {
            let d = diagonals[idx];
            if chosen.iter().all(|&c| !crosses(c, d)) {
                chosen.push(d);
                rec(idx + 1, want, diagonals, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(0, want, &diagonals, &mut chosen, &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of clusters of type D_n.
pub fn d_cluster_count(n: u64) -> u64 {
    (3 * n - 2) * binomial(2 * n - 2, n - 1) / n
}
