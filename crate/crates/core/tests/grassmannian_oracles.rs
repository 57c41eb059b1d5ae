use denomlab::fdalg::{count_submodules, euler_char};
use denomlab::*;
use num_bigint::BigInt;

/// Number of `k`-dimensional subspaces of `F_q^n`.
fn gaussian(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let num: u64 = (0..k).map(|i| q.pow(n - i) - 1).product();
    let den: u64 = (0..k).map(|i| q.pow(i + 1) - 1).product();
    num / den
}

fn a2_module(p: u64, parts: &[usize]) -> (FdAlgebra<PrimeField>, FdModule<u64>) {
    let pa = PathAlgebra::new(PrimeField::new(p).unwrap(), &Quiver::linear_a(2)).unwrap();
    let reps: Vec<&Rep<u64>> = parts.iter().map(|&i| if i == 0 { pa.projective(0) } else { pa.simple(1) }).collect();
    let m = pa.direct_sum(&reps);
    let alg = FdAlgebra::from_path_algebra(&pa);
    let fm = alg.module_from_rep(&pa, &m);
    (alg, fm)
}

#[test]
fn semisimple_counts_are_gaussian_binomials() {
    for p in [2u64, 3, 5] {
        let (alg, m) = a2_module(p, &[1, 1, 1]);
        for k in 0..=3 {
            let c = count_submodules(&alg, &m, &[0, k as usize], 1_000_000).unwrap();
            assert_eq!(c, BigInt::from(gaussian(3, k, p)), "p={p} k={k}");
        }
        assert_eq!(count_submodules(&alg, &m, &[1, 0], 1_000_000).unwrap(), BigInt::from(0));
    }
}

#[test]
fn flags_in_two_projectives() {
    for p in [2u64, 3, 7] {
        let (alg, m) = a2_module(p, &[0, 0]);
        for a in 0..=2u32 {
            for b in 0..=2u32 {
                let want = if a <= b { gaussian(2, b, p) * gaussian(b, a, p) } else { 0 };
                let got = count_submodules(&alg, &m, &[a as usize, b as usize], 1_000_000).unwrap();
                assert_eq!(got, BigInt::from(want), "p={p} e=({a},{b})");
            }
        }
    }
}

#[test]
fn projective_plane_euler_characteristic() {
    let fit = euler_char(&[0, 3], &[0, 1], &[2, 3, 5, 7, 11], 1_000_000, |p| Ok(a2_module(p, &[1, 1, 1]))).unwrap();
    assert_eq!(fit.chi, 3);
    assert_eq!(fit.primes[..5], [2, 3, 5, 7, 11]);
}

#[test]
fn kronecker_band_module() {
    let q = Quiver::from_arrows(2, &[(0, 1, 2)]).unwrap();
    let pa = PathAlgebra::new(PrimeField::new(5).unwrap(), &q).unwrap();
    let m = pa.rep_from_ints(&[1, 1], &[vec![vec![1]], vec![vec![0]]]).unwrap();
    let alg = FdAlgebra::from_path_algebra(&pa);
    let fm = alg.module_from_rep(&pa, &m);
    let counts: Vec<BigInt> = [[0, 0], [0, 1], [1, 0], [1, 1]]
        .iter()
        .map(|e| count_submodules(&alg, &fm, e, 1_000).unwrap())
        .collect();
    assert_eq!(counts, [1, 1, 0, 1].map(BigInt::from));
}
