//! Nonsingular evaluation certificates for tuples of polynomials.
//!
//! Given polynomials `b_1, …, b_q` over ℚ(ζ_M) in formal variables, find
//! rational points `v_1, …, v_{q′}` (with `q′` the linear dimension of the
//! tuple) such that the matrix `(b_j(v_i))` on a basis subset is
//! nonsingular. Points are found one at a time: with `v_1, …, v_{r−1}`
//! fixed, the determinant whose last row is left symbolic is a nonzero
//! polynomial, and the next point is the first non-root in a fixed spiral
//! order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{CycNum, Rat};
use crate::model::{CycPolyMV, ModelError};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTuple {
    variables: Vec<String>,
    order: usize,
    entries: Vec<CycPolyMV>,
}

impl PolyTuple {
    pub fn new(variables: Vec<String>, order: usize, entries: Vec<CycPolyMV>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if e.nvars() != variables.len() {
                return Err(ModelError::Dimension(format!(
                    "entry {} has {} variables, expected {}",
                    i + 1,
                    e.nvars(),
                    variables.len()
                ))
                .into());
            }
            if e.order() != order {
                return Err(ModelError::Dimension(format!(
                    "entry {} has coefficient order {}, expected {order}",
                    i + 1,
                    e.order()
                ))
                .into());
            }
        }
        Ok(PolyTuple {
            variables,
            order,
            entries,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[CycPolyMV] {
        &self.entries
    }
}

/// Rank over ℚ(ζ_M) of the entries' coefficient vectors, and the greedy
/// basis: an entry is kept when it is independent of the ones kept before.
pub fn linear_dimension(tuple: &PolyTuple) -> (usize, Vec<usize>) {
    let mut echelon: Vec<CycPolyMV> = Vec::new();
    let mut basis = Vec::new();
    for (i, e) in tuple.entries.iter().enumerate() {
        let rem = reduce(e, &echelon);
        if let Some((_, lead)) = rem.leading() {
            let inv = lead.inverse().expect("leading coefficient is nonzero");
            echelon.push(rem.scale(&inv));
            basis.push(i);
        }
    }
    (basis.len(), basis)
}

/// Clears the leading monomial of each echelon row from `p`, in insertion
/// order. Each row was itself reduced against the earlier ones, so later
/// steps never reintroduce an earlier pivot.
fn reduce(p: &CycPolyMV, echelon: &[CycPolyMV]) -> CycPolyMV {
    let mut rem = p.clone();
    for row in echelon {
        let (pivot, _) = row.leading().expect("echelon rows are nonzero");
        if let Some(c) = rem.coefficient(pivot) {
            rem = rem.add(&row.scale(&-c));
        }
    }
    rem
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationCert {
    /// One evaluation point per selected entry.
    pub points: Vec<Vec<Rat>>,
    /// Zero-based indices of the selected entries.
    pub selected_basis: Vec<usize>,
    /// `matrix[i][j] = b_{selected[j]}(points[i])`.
    pub matrix: Vec<Vec<CycNum>>,
    pub determinant: CycNum,
    /// Seed of the random fallback, if the spiral budget ran out.
    pub random_fallback: Option<u64>,
}

impl SpecializationCert {
    /// Recomputes the matrix and determinant from `tuple` and the recorded
    /// points and selection.
    pub fn verify(&self, tuple: &PolyTuple) -> bool {
        let n = self.selected_basis.len();
        if self.points.len() != n || self.matrix.len() != n {
            return false;
        }
        if self.selected_basis.iter().any(|&j| j >= tuple.entries.len()) {
            return false;
        }
        if self.points.iter().any(|p| p.len() != tuple.variables.len()) {
            return false;
        }
        let matrix = evaluation_matrix(tuple, &self.selected_basis, &self.points);
        matrix == self.matrix && !self.determinant.is_zero() && determinant(&matrix, tuple.order) == self.determinant
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecializeConfig {
    /// Spiral points tried per row before switching to random points.
    pub spiral_budget: usize,
    pub seed: u64,
}

impl Default for SpecializeConfig {
    fn default() -> Self {
        SpecializeConfig {
            spiral_budget: 100_000,
            seed: 0x5eed,
        }
    }
}

pub fn build_specializations(tuple: &PolyTuple) -> Result<SpecializationCert> {
    build_specializations_with(tuple, SpecializeConfig::default())
}

pub fn build_specializations_with(
    tuple: &PolyTuple,
    config: SpecializeConfig,
) -> Result<SpecializationCert> {
    let (_, selected) = linear_dimension(tuple);
    if selected.is_empty() {
        return Err(Error::ZeroTuple);
    }
    let order = tuple.order;
    let nvars = tuple.variables.len();
    let b: Vec<&CycPolyMV> = selected.iter().map(|&j| &tuple.entries[j]).collect();

    let mut points: Vec<Vec<Rat>> = Vec::new();
    let mut rng: Option<ChaCha8Rng> = None;
    for r in 0..b.len() {
        let rows: Vec<Vec<CycNum>> = points
            .iter()
            .map(|v| b[..=r].iter().map(|p| p.eval(v)).collect())
            .collect();
        let bordered = bordered_determinant(&rows, &b[..=r], order, nvars);
        debug_assert!(!bordered.is_zero());
        let point = match spiral_points(nvars)
            .take(config.spiral_budget)
            .find(|v| !bordered.eval(v).is_zero())
        {
            Some(v) => v,
            None => {
                let rng = rng.get_or_insert_with(|| ChaCha8Rng::seed_from_u64(config.seed));
                random_non_root(&bordered, nvars, rng)
            }
        };
        points.push(point);
    }
    let matrix = evaluation_matrix(tuple, &selected, &points);
    let det = determinant(&matrix, order);
    debug_assert!(!det.is_zero());
    Ok(SpecializationCert {
        points,
        selected_basis: selected,
        matrix,
        determinant: det,
        random_fallback: rng.map(|_| config.seed),
    })
}

/// `Σ_j C_j · b_j(X)` with `C_j` the cofactors of the symbolic last row.
fn bordered_determinant(
    rows: &[Vec<CycNum>],
    b: &[&CycPolyMV],
    order: usize,
    nvars: usize,
) -> CycPolyMV {
    let r = b.len();
    let mut out = CycPolyMV::zero(order, nvars);
    for (j, bj) in b.iter().enumerate() {
        let minor: Vec<Vec<CycNum>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let mut cof = determinant(&minor, order);
        if (r - 1 + j) % 2 == 1 {
            cof = -&cof;
        }
        if !cof.is_zero() {
            out = out.add(&bj.scale(&cof));
        }
    }
    out
}

fn evaluation_matrix(tuple: &PolyTuple, selected: &[usize], points: &[Vec<Rat>]) -> Vec<Vec<CycNum>> {
    points
        .iter()
        .map(|v| selected.iter().map(|&j| tuple.entries[j].eval(v)).collect())
        .collect()
}

/// Determinant by Gaussian elimination over ℚ(ζ_M); the empty matrix has
/// determinant 1.
pub fn determinant(matrix: &[Vec<CycNum>], order: usize) -> CycNum {
    let n = matrix.len();
    let mut m: Vec<Vec<CycNum>> = matrix.to_vec();
    let mut det = CycNum::one(order).expect("order is valid");
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return CycNum::zero(order).expect("order is valid");
        };
        if p != col {
            m.swap(p, col);
            det = -&det;
        }
        let pivot = m[col][col].clone();
        det = &det * &pivot;
        let inv = pivot.inverse().expect("pivot is nonzero");
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..n {
                let v = &m[i][j] - &(&f * &m[col][j]);
                m[i][j] = v;
            }
        }
    }
    det
}

/// `0, 1, −1, 2, −2, …`
fn spiral_value(i: usize) -> Rat {
    let k = i.div_ceil(2) as i64;
    Rat::from_integer(if i % 2 == 1 { k } else { -k }.into())
}

/// Integer points of `ℤⁿ` in shells of growing spiral index; within a shell,
/// index tuples in lexicographic order.
pub fn spiral_points(nvars: usize) -> impl Iterator<Item = Vec<Rat>> {
    // ℤ⁰ has a single point; stop after it instead of scanning empty shells.
    let limit = if nvars == 0 { 1 } else { usize::MAX };
    (0usize..)
        .flat_map(move |level| shell(nvars, level))
        .take(limit)
        .map(|idx| idx.into_iter().map(spiral_value).collect())
}

/// Index tuples with maximum entry exactly `level`, lexicographic.
fn shell(nvars: usize, level: usize) -> Vec<Vec<usize>> {
    if nvars == 0 {
        return if level == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; nvars];
    loop {
        if cur.iter().max() == Some(&level) {
            out.push(cur.clone());
        }
        // odometer over [0, level]^n
        let mut i = nvars;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < level {
                cur[i] += 1;
                cur[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

fn random_non_root(p: &CycPolyMV, nvars: usize, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let mut range: i64 = 1 << 10;
    loop {
        for _ in 0..64 {
            let v: Vec<Rat> = (0..nvars)
                .map(|_| Rat::from_integer(rng.gen_range(-range..=range).into()))
                .collect();
            if !p.eval(&v).is_zero() {
                return v;
            }
        }
        range = range.saturating_mul(2);
    }
}

/// `Σ_j coeffs[j]·b_j`, used by callers to probe the span of a tuple.
pub fn combination(tuple: &PolyTuple, coeffs: &[CycNum]) -> CycPolyMV {
    tuple
        .entries
        .iter()
        .zip(coeffs)
        .fold(CycPolyMV::zero(tuple.order, tuple.variables.len()), |acc, (b, c)| {
            acc.add(&b.scale(c))
        })
}
