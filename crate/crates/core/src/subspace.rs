//! The equalizing subspace `V = {q : q·α_i = q·α_1 ∀i}`, a fixed complement
//! `V′` with projections, the relation lattice `H` and the congruence lattice
//! attached to a modulus `N`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{clear_denominators, display_vec, Rat};
use crate::linalg::{congruence_lattice, integer_kernel, rref_kernel, QMat, ZLattice, ZMat};
use crate::model::{AlphaMatrix, EqSystem};
use crate::{Error, Result};

/// Rows of the log-coordinate constraints `Σ_j q_j (c_ijm − c_1jm)`, one per
/// pair `(i, 1)` and generator `m`.
fn log_difference_rows(alpha: &AlphaMatrix) -> Vec<Vec<Rat>> {
    let norm = alpha.normalize();
    let m = norm.row(0).first().map_or(0, |c| c.logs.len());
    (1..norm.s())
        .flat_map(|i| {
            let row = norm.row(i);
            (0..m).map(move |g| row.iter().map(|c| c.logs[g].clone()).collect())
        })
        .collect()
}

/// Rows `Σ_j q_j (ρ_ij − ρ_1j)`, one per pair `(i, 1)`.
fn rho_difference_rows(alpha: &AlphaMatrix) -> Vec<Vec<Rat>> {
    let norm = alpha.normalize();
    (1..norm.s())
        .map(|i| norm.row(i).iter().map(|c| c.rho.clone()).collect())
        .collect()
}

/// Basis of `V`. Pairs `(i, 1)` suffice by transitivity.
pub fn compute_v(alpha: &AlphaMatrix) -> Vec<Vec<Rat>> {
    let mut rows = log_difference_rows(alpha);
    rows.extend(rho_difference_rows(alpha));
    rref_kernel(&QMat::from_rows(&rows, alpha.t())).kernel
}

/// `ℚᵗ = V ⊕ V′` with `V′` spanned by the standard vectors at the non-pivot
/// columns of the RREF of `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpace {
    t: usize,
    v_basis: Vec<Vec<Rat>>,
    v_rref: Vec<Vec<Rat>>,
    v_pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl SplitSpace {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn v_basis(&self) -> &[Vec<Rat>] {
        &self.v_basis
    }

    pub fn v_rref(&self) -> &[Vec<Rat>] {
        &self.v_rref
    }

    /// Zero-based indices `j` with `e_j` spanning `V′`.
    pub fn complement_indices(&self) -> &[usize] {
        &self.complement
    }

    pub fn dim_v(&self) -> usize {
        self.v_rref.len()
    }

    /// `(π(q), π′(q))`.
    ///
    /// In the RREF basis of `V` the pivot coordinates form an identity block
    /// and `V′` vanishes there, so the `V`-coefficients of `q` are its pivot
    /// coordinates.
    pub fn project(&self, q: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        assert_eq!(q.len(), self.t);
        let mut pi = vec![Rat::zero(); self.t];
        for (row, &p) in self.v_rref.iter().zip(&self.v_pivots) {
            let a = &q[p];
            if a.is_zero() {
                continue;
            }
            for (x, r) in pi.iter_mut().zip(row) {
                *x += a * r;
            }
        }
        let pi_prime = q.iter().zip(&pi).map(|(a, b)| a - b).collect();
        (pi, pi_prime)
    }

    /// Stable description of the complement choice, echoed in every report.
    pub fn fingerprint(&self) -> String {
        let comp: Vec<String> = self.complement.iter().map(|j| format!("e{}", j + 1)).collect();
        let rows: Vec<String> = self.v_rref.iter().map(|r| display_vec(r)).collect();
        format!(
            "pivot-complement;V'=span{{{}}};rref(V)=[{}]",
            comp.join(","),
            rows.join(",")
        )
    }
}

pub fn complement_and_projections(v_basis: &[Vec<Rat>], t: usize) -> Result<SplitSpace> {
    let r = rref_kernel(&QMat::from_rows(v_basis, t));
    if r.rank != v_basis.len() {
        return Err(Error::DependentBasis);
    }
    let complement: Vec<usize> = (0..t).filter(|j| !r.pivots.contains(j)).collect();

    // V ⊕ V′ = ℚᵗ: the stacked basis has full rank.
    let mut stacked = r.rref.clone();
    stacked.extend(complement.iter().map(|&j| {
        let mut e = vec![Rat::zero(); t];
        e[j] = Rat::from_integer(BigInt::from(1));
        e
    }));
    debug_assert_eq!(rref_kernel(&QMat::from_rows(&stacked, t)).rank, t);

    Ok(SplitSpace {
        t,
        v_basis: v_basis.to_vec(),
        v_rref: r.rref,
        v_pivots: r.pivots,
        complement,
    })
}

pub fn split_space(sys: &EqSystem) -> SplitSpace {
    complement_and_projections(&compute_v(sys.alpha()), sys.t())
        .expect("a kernel basis is independent")
}

/// `H = {n ∈ ℤᵗ : ∏_j β_ij^{n_j} = ∏_j β_1j^{n_j} ∀i}`: log differences
/// annihilated and rho differences integral.
pub fn compute_h(sys: &EqSystem) -> ZLattice {
    relation_lattice(sys, &BigInt::from(1)).expect("unit modulus is valid")
}

/// Integer vectors `m` with log differences annihilated and
/// `Σ_j m_j (ρ_ij − ρ_1j) ≡ 0 (mod N)`.
pub fn corollary_congruence_lattice(sys: &EqSystem, n: &BigInt) -> Result<ZLattice> {
    if n.is_zero() {
        return Err(Error::InvalidParameter("modulus N must be positive".into()));
    }
    relation_lattice(sys, n)
}

fn relation_lattice(sys: &EqSystem, modulus: &BigInt) -> Result<ZLattice> {
    let t = sys.t();
    let logs: Vec<Vec<BigInt>> = log_difference_rows(sys.alpha())
        .iter()
        .map(|r| clear_denominators(r))
        .collect();
    let exact = integer_kernel(&ZMat::new(logs, t));
    let rho = rho_difference_rows(sys.alpha());
    let moduli = vec![modulus.clone(); rho.len()];
    let torsion = congruence_lattice(&QMat::from_rows(&rho, t), &moduli)?;
    Ok(exact.intersect(&torsion)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::catalog;

    #[test]
    fn v_examples() {
        let sym = catalog::symmetric_logs();
        assert_eq!(compute_v(sym.alpha()), vec![vec![int(1), int(1)]]);

        let single = catalog::single_term();
        assert_eq!(compute_v(single.alpha()).len(), single.t());

        let four = catalog::four_pow_minus_two();
        assert!(compute_v(four.alpha()).is_empty());
    }

    #[test]
    fn projection_example() {
        let split = complement_and_projections(&[vec![int(1), int(1)]], 2).unwrap();
        assert_eq!(split.complement_indices(), &[1]);
        let (pi, pip) = split.project(&[int(3), int(1)]);
        assert_eq!(pi, vec![int(3), int(3)]);
        assert_eq!(pip, vec![int(0), int(-2)]);
    }

    #[test]
    fn trivial_splits() {
        let split = complement_and_projections(&[], 3).unwrap();
        assert_eq!(split.complement_indices(), &[0, 1, 2]);
        let q = vec![int(1), int(2), int(3)];
        assert_eq!(split.project(&q), (vec![int(0); 3], q.clone()));

        let full: Vec<Vec<Rat>> = (0..3)
            .map(|i| (0..3).map(|j| int((i == j) as i64)).collect())
            .collect();
        let split = complement_and_projections(&full, 3).unwrap();
        assert!(split.complement_indices().is_empty());
        assert_eq!(split.project(&q), (q.clone(), vec![int(0); 3]));

        assert_eq!(
            complement_and_projections(&[vec![int(1)], vec![int(2)]], 1),
            Err(Error::DependentBasis)
        );
    }

    #[test]
    fn h_examples() {
        assert_eq!(compute_h(&catalog::two_vs_four()).rank(), 0);
        assert_eq!(compute_h(&catalog::identical_rows()), ZLattice::full(1));
        assert_eq!(compute_h(&catalog::minus_one_pow_plus_one()), ZLattice::multiples(2));
    }

    #[test]
    fn corollary_lattice_examples() {
        let sys = catalog::minus_one_pow_plus_one();
        assert_eq!(
            corollary_congruence_lattice(&sys, &BigInt::from(3)).unwrap(),
            ZLattice::multiples(6)
        );
        assert_eq!(
            corollary_congruence_lattice(&sys, &BigInt::from(1)).unwrap(),
            compute_h(&sys)
        );
        let single = catalog::single_term();
        assert_eq!(
            corollary_congruence_lattice(&single, &BigInt::from(5)).unwrap(),
            ZLattice::full(single.t())
        );
        assert!(corollary_congruence_lattice(&sys, &BigInt::from(0)).is_err());
        // 2^x 3^y = 6 has no nontrivial relations at any modulus.
        let lat = corollary_congruence_lattice(&catalog::two_three_six(), &BigInt::from(4)).unwrap();
        assert_eq!(lat.rank(), 0);
    }
}
