use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{clear_denominators, Rat};

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds from row vectors; every row must have length `cols`.
    pub fn from_rows(rows: &[Vec<Rat>], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            entries.extend(r.iter().cloned());
        }
        QMat {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefKernel {
    pub rank: usize,
    /// Pivot column of each nonzero RREF row, ascending.
    pub pivots: Vec<usize>,
    /// The nonzero rows of the reduced row-echelon form.
    pub rref: Vec<Vec<Rat>>,
    /// One vector per free column (ascending), with that free variable set to 1.
    pub kernel: Vec<Vec<Rat>>,
}

/// Exact RREF and rational kernel.
///
/// Rows are first scaled to integers and brought to echelon form by
/// fraction-free elimination with content removal; only the final
/// back-substitution runs over ℚ.
pub fn rref_kernel(a: &QMat) -> RrefKernel {
    let cols = a.cols();
    let mut m: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|r| clear_denominators(a.row(r)))
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for i in row + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let g = m[row][col].gcd(&m[i][col]);
            let f_pivot = &m[i][col] / &g;
            let f_row = &m[row][col] / &g;
            for j in col..cols {
                let v = &m[i][j] * &f_row - &m[row][j] * &f_pivot;
                m[i][j] = v;
            }
            remove_content(&mut m[i]);
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();

    let mut rref: Vec<Vec<Rat>> = m[..rank]
        .iter()
        .zip(&pivots)
        .map(|(r, &p)| {
            let lead = Rat::from_integer(r[p].clone());
            r.iter()
                .map(|x| Rat::from_integer(x.clone()) / &lead)
                .collect()
        })
        .collect();
    for k in (0..rank).rev() {
        let p = pivots[k];
        for i in 0..k {
            let f = rref[i][p].clone();
            if f.is_zero() {
                continue;
            }
            for j in p..cols {
                let v = &rref[k][j] * &f;
                rref[i][j] -= v;
            }
        }
    }

    let kernel = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -rref[k][free].clone();
            }
            v
        })
        .collect();

    RrefKernel {
        rank,
        pivots,
        rref,
        kernel,
    }
}

pub fn rank(a: &QMat) -> usize {
    rref_kernel(a).rank
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = row.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
}
