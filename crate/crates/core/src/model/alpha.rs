use num_traits::Zero;

use crate::arith::Rat;

/// `α = 2πi·rho + Σ_m logs[m]·log g_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogCoord {
    pub rho: Rat,
    pub logs: Vec<Rat>,
}

impl LogCoord {
    pub fn new(rho: Rat, logs: Vec<Rat>) -> Self {
        LogCoord { rho, logs }
    }

    pub fn zero(m: usize) -> Self {
        LogCoord {
            rho: Rat::zero(),
            logs: vec![Rat::zero(); m],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rho.is_zero() && self.logs.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &LogCoord) -> LogCoord {
        LogCoord {
            rho: &self.rho - &other.rho,
            logs: self.logs.iter().zip(&other.logs).map(|(a, b)| a - b).collect(),
        }
    }
}

/// The `s × t` exponent array; row `i` is the vector `α_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaMatrix {
    rows: Vec<Vec<LogCoord>>,
}

impl AlphaMatrix {
    /// Callers validate shape; see [`super::validate_system`].
    pub fn new(rows: Vec<Vec<LogCoord>>) -> Self {
        AlphaMatrix { rows }
    }

    pub fn s(&self) -> usize {
        self.rows.len()
    }

    pub fn t(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn row(&self, i: usize) -> &[LogCoord] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<LogCoord>] {
        &self.rows
    }

    /// Row `i` becomes `α_i − α_1`; the first row becomes zero.
    pub fn normalize(&self) -> AlphaMatrix {
        let Some(first) = self.rows.first() else {
            return self.clone();
        };
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().zip(first).map(|(a, b)| a.sub(b)).collect())
            .collect();
        AlphaMatrix { rows }
    }
}

pub fn normalize_alpha(alpha: &AlphaMatrix) -> AlphaMatrix {
    alpha.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn lc(rho: Rat, logs: &[i64]) -> LogCoord {
        LogCoord::new(rho, logs.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn normalization_examples() {
        let single = AlphaMatrix::new(vec![vec![lc(rat(1, 3), &[2])]]);
        assert!(single.normalize().row(0)[0].is_zero());

        let two = AlphaMatrix::new(vec![vec![lc(int(0), &[1])], vec![lc(int(0), &[2])]]);
        let n = two.normalize();
        assert!(n.row(0)[0].is_zero());
        assert_eq!(n.row(1)[0], lc(int(0), &[1]));

        let rho = AlphaMatrix::new(vec![vec![lc(rat(1, 2), &[])], vec![lc(rat(1, 3), &[])]]);
        assert_eq!(rho.normalize().row(1)[0].rho, rat(-1, 6));
    }
}
