//! Dense matrices over an exact [`Field`] and the handful of elimination
//! routines everything else is built from.

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn into_data(self) -> Vec<E> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<F>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix of the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    /// Columns given as vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, columns.len(), zero);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
}

pub fn zeros<K: Field>(k: &K, rows: usize, cols: usize) -> Matrix<K::Elem> {
    Matrix::filled(rows, cols, k.zero())
}

pub fn identity<K: Field>(k: &K, n: usize) -> Matrix<K::Elem> {
    Matrix::from_fn(n, n, |r, c| if r == c { k.one() } else { k.zero() })
}

pub fn is_zero_matrix<K: Field>(k: &K, m: &Matrix<K::Elem>) -> bool {
    m.data.iter().all(|x| k.is_zero(x))
}

pub fn mul<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    let mut out = zeros(k, a.rows, b.cols);
    for r in 0..a.rows {
        for t in 0..a.cols {
            let x = a.get(r, t);
            if k.is_zero(x) {
                continue;
            }
            for c in 0..b.cols {
                let y = b.get(t, c);
                if !k.is_zero(y) {
                    let idx = r * out.cols + c;
                    out.data[idx] = k.add(&out.data[idx], &k.mul(x, y));
                }
            }
        }
    }
    out
}

pub fn add<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    assert_eq!(a.shape(), b.shape());
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| k.add(x, y)).collect(),
    }
}

pub fn sub<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    assert_eq!(a.shape(), b.shape());
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| k.sub(x, y)).collect(),
    }
}

pub fn scale<K: Field>(k: &K, s: &K::Elem, a: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    a.map(|x| k.mul(s, x))
}

pub fn mat_vec<K: Field>(k: &K, a: &Matrix<K::Elem>, v: &[K::Elem]) -> Vec<K::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|r| {
            a.row(r)
                .iter()
                .zip(v)
                .fold(k.zero(), |acc, (x, y)| if k.is_zero(x) { acc } else { k.add(&acc, &k.mul(x, y)) })
        })
        .collect()
}

/// In-place reduced row echelon form; returns pivot columns in order.
pub fn rref_in_place<K: Field>(k: &K, m: &mut Matrix<K::Elem>) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = k.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = k.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if k.is_zero(&f) {
                continue;
            }
            for j in c..cols {
                let v = k.sub(m.get(i, j), &k.mul(&f, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref<K: Field>(k: &K, m: &Matrix<K::Elem>) -> (Matrix<K::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let p = rref_in_place(k, &mut a);
    (a, p)
}

pub fn rank<K: Field>(k: &K, m: &Matrix<K::Elem>) -> usize {
    rref(k, m).1.len()
}

/// Kernel of `m` (as a map on column vectors).
///
/// The basis vector attached to free column `f` has a 1 in position `f` and
/// zeros in every other free position, so the coordinates of a kernel vector
/// are its entries at [`Kernel::free`].
#[derive(Clone, Debug)]
pub struct Kernel<E> {
    pub ambient: usize,
    pub free: Vec<usize>,
    pub basis: Vec<Vec<E>>,
}

impl<E: Clone> Kernel<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, v: &[E]) -> Vec<E> {
        self.free.iter().map(|&f| v[f].clone()).collect()
    }
}

pub fn kernel<K: Field>(k: &K, m: &Matrix<K::Elem>) -> Kernel<K::Elem> {
    let cols = m.cols();
    let (r, pivots) = rref(k, m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![k.zero(); cols];
            v[f] = k.one();
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, f);
                if !k.is_zero(x) {
                    v[p] = k.neg(x);
                }
            }
            v
        })
        .collect();
    Kernel { ambient: cols, free, basis }
}

/// Quotient of `K^ambient` by the span of some vectors, with the complement
/// spanned by the unit vectors at non-pivot positions.
#[derive(Clone, Debug)]
pub struct Quotient<E> {
    pub ambient: usize,
    reducer: Vec<(usize, Vec<E>)>,
    pub complement: Vec<usize>,
}

impl<E: Clone> Quotient<E> {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Unit representative of the `i`-th basis class.
    pub fn representative<K: Field<Elem = E>>(&self, k: &K, i: usize) -> Vec<E> {
        let mut v = vec![k.zero(); self.ambient];
        v[self.complement[i]] = k.one();
        v
    }

    /// Coordinates of the class of `v`.
    pub fn coords<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> Vec<E> {
        let mut w = v.to_vec();
        for (p, row) in &self.reducer {
            let f = w[*p].clone();
            if k.is_zero(&f) {
                continue;
            }
            for (j, x) in row.iter().enumerate() {
                if !k.is_zero(x) {
                    w[j] = k.sub(&w[j], &k.mul(&f, x));
                }
            }
        }
        self.complement.iter().map(|&c| w[c].clone()).collect()
    }
}

/// Quotient of `K^ambient` by the column space of `m`.
pub fn cokernel<K: Field>(k: &K, m: &Matrix<K::Elem>) -> Quotient<K::Elem> {
    quotient_by_rows(k, &m.transpose())
}

/// Quotient of `K^ambient` by the row space of `m`.
pub fn quotient_by_rows<K: Field>(k: &K, m: &Matrix<K::Elem>) -> Quotient<K::Elem> {
    let ambient = m.cols();
    let (r, pivots) = rref(k, m);
    let mut is_pivot = vec![false; ambient];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let reducer = pivots.iter().enumerate().map(|(i, &p)| (p, r.row(i).to_vec())).collect();
    let complement = (0..ambient).filter(|&c| !is_pivot[c]).collect();
    Quotient { ambient, reducer, complement }
}

/// Basis of the column space of `m` (a subset of its columns).
pub fn column_space<K: Field>(k: &K, m: &Matrix<K::Elem>) -> Vec<Vec<K::Elem>> {
    let (_, pivots) = rref(k, m);
    pivots.iter().map(|&c| m.column(c)).collect()
}

pub fn inverse<K: Field>(k: &K, m: &Matrix<K::Elem>) -> Option<Matrix<K::Elem>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    if n == 0 {
        return Some(m.clone());
    }
    let aug = m.hstack(&identity(k, n));
    let (r, pivots) = rref(k, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.block(0..n, n..2 * n))
}

/// Solves `m x = b`; returns one solution if the system is consistent.
pub fn solve<K: Field>(k: &K, m: &Matrix<K::Elem>, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let cols = m.cols();
    let bcol = Matrix::from_columns(m.rows(), &[b.to_vec()], k.zero());
    let (r, pivots) = rref(k, &m.hstack(&bcol));
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![k.zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, cols).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn qm(rows: usize, cols: usize, v: &[i64]) -> Matrix<BigRational> {
        Matrix::from_rows(rows, cols, v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn kernel_coordinates_are_free_entries() {
        let k = Rationals;
        let m = qm(2, 4, &[1, 2, 0, -1, 0, 0, 1, 3]);
        let ker = kernel(&k, &m);
        assert_eq!(ker.dim(), 2);
        for v in &ker.basis {
            assert!(mat_vec(&k, &m, v).iter().all(|x| k.is_zero(x)));
        }
        let v: Vec<_> = ker.basis[0]
            .iter()
            .zip(&ker.basis[1])
            .map(|(a, b)| k.add(&k.mul(&q(3), a), &k.mul(&q(-2), b)))
            .collect();
        assert_eq!(ker.coords(&v), vec![q(3), q(-2)]);
    }

    #[test]
    fn cokernel_of_rank_one_map() {
        let k = Rationals;
        let m = qm(3, 1, &[1, 1, 0]);
        let quo = cokernel(&k, &m);
        assert_eq!(quo.dim(), 2);
        // (1,1,0) is zero in the quotient
        assert!(quo.coords(&k, &[q(1), q(1), q(0)]).iter().all(|x| k.is_zero(x)));
        let c = quo.coords(&k, &[q(0), q(0), q(5)]);
        assert_eq!(c.iter().filter(|x| !k.is_zero(x)).count(), 1);
    }

    #[test]
    fn inverse_and_solve() {
        let k = Rationals;
        let m = qm(2, 2, &[2, 1, 1, 1]);
        let inv = inverse(&k, &m).unwrap();
        assert_eq!(mul(&k, &m, &inv), identity(&k, 2));
        assert!(inverse(&k, &qm(2, 2, &[1, 2, 2, 4])).is_none());
        let x = solve(&k, &m, &[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(solve(&k, &qm(2, 1, &[1, 1]), &[q(1), q(2)]).is_none());
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let m = Matrix::from_rows(2, 2, vec![1i64, 1, 1, -1]);
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(rank(&f2, &m.map(|&x| f2.from_i64(x))), 1);
        assert_eq!(rank(&f3, &m.map(|&x| f3.from_i64(x))), 2);
        assert_eq!(rank(&Rationals, &m.map(|&x| q(x))), 2);
    }
}
