//! Integer matrices: Hermite and Smith normal forms, determinants, kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix stored as rows. `cols` is kept explicitly so that
/// matrices with zero rows still know their width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZMat {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl ZMat {
    pub fn new(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix row");
        ZMat { cols, rows }
    }

    pub fn from_i64(rows: &[&[i64]], cols: usize) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMat {
            cols,
            rows: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.rows[r][c]
    }

    pub fn transpose(&self) -> ZMat {
        let rows = (0..self.cols)
            .map(|c| self.rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        ZMat {
            cols: self.rows.len(),
            rows,
        }
    }

    pub fn mul(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.cols, other.nrows(), "matrix product shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|c| {
                        r.iter()
                            .zip(&other.rows)
                            .fold(BigInt::zero(), |acc, (a, orow)| acc + a * &orow[c])
                    })
                    .collect()
            })
            .collect();
        ZMat {
            cols: other.cols,
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.rows {
            r.swap(a, b);
        }
    }

    /// col_dst -= q * col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in &mut self.rows {
            let v = &r[src] * q;
            r[dst] -= v;
        }
    }
}

/// row_dst -= q * row_src
fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s) {
        *x -= q * y;
    }
}

/// Replaces rows `a`, `b` by `x·a + y·b` and `u·a + v·b`.
fn row_combine(m: &mut [Vec<BigInt>], a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    for c in 0..m[a].len() {
        let ra = m[a][c].clone();
        let rb = m[b][c].clone();
        m[a][c] = x * &ra + y * &rb;
        m[b][c] = u * &ra + v * &rb;
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row {
        *x = -&*x;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    /// Full row Hermite form; zero rows sit at the bottom.
    pub h: ZMat,
    /// Unimodular transform with `u · input = h`.
    pub u: ZMat,
    pub rank: usize,
}

/// Row-style Hermite normal form with a unimodular transform.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hnf_with_transform(b: &ZMat) -> HnfResult {
    let n = b.nrows();
    let mut h = b.rows.clone();
    let mut u = ZMat::identity(n).rows;
    let mut row = 0;
    for col in 0..b.ncols() {
        if row == n {
            break;
        }
        for i in row + 1..n {
            if h[i][col].is_zero() {
                continue;
            }
            if h[row][col].is_zero() {
                h.swap(row, i);
                u.swap(row, i);
                continue;
            }
            let e = h[row][col].extended_gcd(&h[i][col]);
            let a = &h[row][col] / &e.gcd;
            let bb = &h[i][col] / &e.gcd;
            let nb = -&bb;
            // [[x, y], [-b, a]] has determinant x·a + y·b = 1.
            row_combine(&mut h, row, i, &e.x, &e.y, &nb, &a);
            row_combine(&mut u, row, i, &e.x, &e.y, &nb, &a);
        }
        if h[row][col].is_zero() {
            continue;
        }
        if h[row][col].is_negative() {
            negate_row(&mut h[row]);
            negate_row(&mut u[row]);
        }
        for k in 0..row {
            let q = h[k][col].div_floor(&h[row][col]);
            row_axpy(&mut h, k, row, &q);
            row_axpy(&mut u, k, row, &q);
        }
        row += 1;
    }
    HnfResult {
        h: ZMat { cols: b.ncols(), rows: h },
        u: ZMat { cols: n, rows: u },
        rank: row,
    }
}

/// Hermite basis: the nonzero rows of the row HNF.
pub fn hnf(b: &ZMat) -> ZMat {
    let res = hnf_with_transform(b);
    let rows = res.h.rows.into_iter().take(res.rank).collect();
    ZMat { cols: b.ncols(), rows }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub d: ZMat,
    pub u: ZMat,
    pub v: ZMat,
}

impl SnfResult {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k)
            .map(|i| self.d.rows[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form `u · b · v = d` with non-negative `d_i | d_{i+1}`.
pub fn snf(b: &ZMat) -> SnfResult {
    let (r, c) = (b.nrows(), b.ncols());
    let mut d = b.clone();
    let mut u = ZMat::identity(r);
    let mut v = ZMat::identity(c);

    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &d.rows[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d.rows[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SnfResult { d, u, v };
            };
            d.rows.swap(t, pi);
            u.rows.swap(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                let q = &d.rows[i][t] / &d.rows[t][t];
                row_axpy(&mut d.rows, i, t, &q);
                row_axpy(&mut u.rows, i, t, &q);
                clean &= d.rows[i][t].is_zero();
            }
            for j in t + 1..c {
                let q = &d.rows[t][j] / &d.rows[t][t];
                if !q.is_zero() {
                    d.col_axpy(j, t, &q);
                    v.col_axpy(j, t, &q);
                }
                clean &= d.rows[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d.rows[t][t].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.rows[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d.rows, t, i, &minus_one);
                    row_axpy(&mut u.rows, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.rows[t][t].is_negative() {
            negate_row(&mut d.rows[t]);
            negate_row(&mut u.rows[t]);
        }
    }
    SnfResult { d, u, v }
}

/// Determinant by Bareiss elimination.
pub fn det(m: &ZMat) -> BigInt {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.rows.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Basis of `{n : a · n = 0}`, as raw generator rows (not yet canonical).
pub(crate) fn kernel_generators(a: &ZMat) -> Vec<Vec<BigInt>> {
    let t = a.ncols();
    if a.nrows() == 0 {
        return ZMat::identity(t).rows;
    }
    let res = hnf_with_transform(&a.transpose());
    res.u.rows.into_iter().skip(res.rank).collect()
}
