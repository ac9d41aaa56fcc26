use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::alpha::LogCoord;
use crate::arith::{clear_denominators, display_rat, display_vec, frac, Rat};
use crate::linalg::{congruence_lattice, integer_kernel, QMat, ZMat};

/// `exp(2πi·angle) · ∏_m g_m^{expvec[m]}`, with `angle` reduced into `[0, 1)`.
///
/// The angle is the torsion part (a root of unity) and `expvec` the
/// torsion-free part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupVal {
    angle: Rat,
    expvec: Vec<Rat>,
}

impl GroupVal {
    pub fn new(angle: Rat, expvec: Vec<Rat>) -> Self {
        GroupVal {
            angle: frac(&angle),
            expvec,
        }
    }

    pub fn one(m: usize) -> Self {
        GroupVal {
            angle: Rat::zero(),
            expvec: vec![Rat::zero(); m],
        }
    }

    pub fn angle(&self) -> &Rat {
        &self.angle
    }

    pub fn expvec(&self) -> &[Rat] {
        &self.expvec
    }

    pub fn is_one(&self) -> bool {
        self.angle.is_zero() && self.expvec.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &GroupVal) -> GroupVal {
        GroupVal::new(
            &self.angle + &other.angle,
            self.expvec.iter().zip(&other.expvec).map(|(a, b)| a + b).collect(),
        )
    }

    /// `self^e` for a rational exponent, taking the branch induced by the
    /// logarithmic coordinates.
    pub fn pow(&self, e: &Rat) -> GroupVal {
        GroupVal::new(&self.angle * e, self.expvec.iter().map(|x| x * e).collect())
    }

    /// Order of the torsion part as a root of unity.
    pub fn root_order(&self) -> BigInt {
        self.angle.denom().clone()
    }
}

impl fmt::Display for GroupVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2pi i*{})*g^{}", display_rat(&self.angle), display_vec(&self.expvec))
    }
}

/// `exp(q · α_i)` computed exactly: `angle = Σ q_j rho_j` and
/// `expvec = Σ q_j logs_j`.
pub fn exp_value(row: &[LogCoord], q: &[Rat]) -> GroupVal {
    assert_eq!(row.len(), q.len(), "exponent row and point differ in length");
    let m = row.first().map_or(0, |c| c.logs.len());
    let mut angle = Rat::zero();
    let mut expvec = vec![Rat::zero(); m];
    for (c, qj) in row.iter().zip(q) {
        if qj.is_zero() {
            continue;
        }
        angle += &c.rho * qj;
        for (acc, l) in expvec.iter_mut().zip(&c.logs) {
            *acc += l * qj;
        }
    }
    GroupVal::new(angle, expvec)
}

/// Smallest `n ≥ 1` with `x^n` in the subgroup generated by `generators`, if any.
///
/// Solves `n·x = Σ c_k·g_k` in the integers `(n, c, z)`, where the angle
/// equation carries the extra unknown `z` for the reduction mod 1; the
/// admissible `n` form the ideal generated by the first coordinates of the
/// solution lattice.
pub fn radical_member(x: &GroupVal, generators: &[GroupVal]) -> Option<BigInt> {
    let m = x.expvec.len();
    let k = generators.len();
    let cols = k + 2;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m + 1);
    for j in 0..m {
        let mut r = vec![Rat::zero(); cols];
        r[0] = x.expvec[j].clone();
        for (i, g) in generators.iter().enumerate() {
            r[i + 1] = -g.expvec[j].clone();
        }
        rows.push(r);
    }
    let mut angle_row = vec![Rat::zero(); cols];
    angle_row[0] = x.angle.clone();
    for (i, g) in generators.iter().enumerate() {
        angle_row[i + 1] = -g.angle.clone();
    }
    angle_row[k + 1] = Rat::from_integer(BigInt::from(-1));
    rows.push(angle_row);

    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let lattice = integer_kernel(&ZMat::new(ints, cols));
    let g = lattice
        .basis()
        .iter()
        .fold(BigInt::zero(), |acc, b| acc.gcd(&b[0]));
    g.is_positive().then_some(g)
}

/// A nonzero `e` with `∏ v_k^{e_k} = 1`, or `None` when the values are
/// multiplicatively independent.
pub fn group_relation(values: &[GroupVal]) -> Option<Vec<BigInt>> {
    let k = values.len();
    if k == 0 {
        return None;
    }
    let m = values[0].expvec.len();
    let log_rows: Vec<Vec<BigInt>> = (0..m)
        .map(|j| {
            let r: Vec<Rat> = values.iter().map(|v| v.expvec[j].clone()).collect();
            clear_denominators(&r)
        })
        .collect();
    let torsion_free = integer_kernel(&ZMat::new(log_rows, k));
    let angles = QMat::from_rows(&[values.iter().map(|v| v.angle.clone()).collect()], k);
    let torsion = congruence_lattice(&angles, &[BigInt::from(1)]).expect("unit modulus is valid");
    let rel = torsion_free.intersect(&torsion).expect("same ambient dimension");
    rel.basis().first().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn exp_value_examples() {
        let zero_row = vec![LogCoord::zero(1)];
        assert!(exp_value(&zero_row, &[rat(5, 7)]).is_one());

        let four = vec![LogCoord::new(int(0), vec![int(2)])];
        assert_eq!(exp_value(&four, &[rat(1, 2)]), GroupVal::new(int(0), vec![int(1)]));

        let minus_one = vec![LogCoord::new(rat(1, 2), vec![])];
        assert_eq!(exp_value(&minus_one, &[int(3)]), GroupVal::new(rat(1, 2), vec![]));
    }

    #[test]
    fn radical_examples() {
        let x = GroupVal::new(int(0), vec![rat(1, 2)]);
        let g = GroupVal::new(int(0), vec![int(1)]);
        assert_eq!(radical_member(&x, &[g]), Some(BigInt::from(2)));

        let x = GroupVal::new(int(0), vec![int(0), int(1)]);
        let g = GroupVal::new(int(0), vec![int(1), int(0)]);
        assert_eq!(radical_member(&x, &[g]), None);

        let x = GroupVal::new(rat(1, 3), vec![]);
        assert_eq!(radical_member(&x, &[]), Some(BigInt::from(3)));
    }

    #[test]
    fn radical_with_torsion_generators() {
        // x = −2^{1/3}: x^3 = −2 = g·h with g = 2, h = −1.
        let x = GroupVal::new(rat(1, 2), vec![rat(1, 3)]);
        let g = GroupVal::new(int(0), vec![int(1)]);
        let h = GroupVal::new(rat(1, 2), vec![int(0)]);
        assert_eq!(radical_member(&x, &[g.clone(), h]), Some(BigInt::from(3)));
        // without −1 available, x^6 = 4 = g^2 is the first hit.
        assert_eq!(radical_member(&x, &[g]), Some(BigInt::from(6)));
    }

    #[test]
    fn relations() {
        let two = GroupVal::new(int(0), vec![int(1)]);
        let half = GroupVal::new(int(0), vec![int(-1)]);
        assert!(group_relation(&[two.clone(), half]).is_some());
        let minus = GroupVal::new(rat(1, 2), vec![int(0)]);
        assert_eq!(group_relation(&[minus]), Some(vec![BigInt::from(2)]));
        assert_eq!(group_relation(&[two]), None);
    }
}
