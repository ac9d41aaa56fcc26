use super::alpha::{AlphaMatrix, LogCoord};
use super::generators::{GenSet, Generator, Independence};
use super::poly::CycPolyMV;
use super::ModelError;

/// An unvalidated equation `Σ_i P_i(X)·exp(X·α_i) = 0`.
#[derive(Debug, Clone)]
pub struct RawSystem {
    pub generators: Vec<Generator>,
    /// `alpha[i][j]` is `α_ij`.
    pub alpha: Vec<Vec<LogCoord>>,
    pub polys: Vec<CycPolyMV>,
    /// Cyclotomic order shared by all coefficients.
    pub order: usize,
}

#[derive(Debug, Clone)]
pub struct EqSystem {
    genset: GenSet,
    alpha: AlphaMatrix,
    alpha_prime: AlphaMatrix,
    polys: Vec<CycPolyMV>,
    order: usize,
}

impl EqSystem {
    pub fn genset(&self) -> &GenSet {
        &self.genset
    }

    pub fn alpha(&self) -> &AlphaMatrix {
        &self.alpha
    }

    /// The normalized exponents `α_i − α_1`.
    pub fn alpha_prime(&self) -> &AlphaMatrix {
        &self.alpha_prime
    }

    pub fn polys(&self) -> &[CycPolyMV] {
        &self.polys
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of terms.
    pub fn s(&self) -> usize {
        self.alpha.s()
    }

    /// Number of variables.
    pub fn t(&self) -> usize {
        self.alpha.t()
    }

    /// Number of generators.
    pub fn m(&self) -> usize {
        self.genset.len()
    }

    pub fn all_constant(&self) -> bool {
        self.polys.iter().all(CycPolyMV::is_constant)
    }

    /// The same equation with `α` replaced by its normalization.
    pub fn normalized(&self) -> EqSystem {
        EqSystem {
            alpha: self.alpha_prime.clone(),
            ..self.clone()
        }
    }

    pub fn to_raw(&self) -> RawSystem {
        RawSystem {
            generators: self.genset.generators().to_vec(),
            alpha: self.alpha.rows().to_vec(),
            polys: self.polys.clone(),
            order: self.order,
        }
    }
}

/// Checks shapes and generator independence and produces an [`EqSystem`].
pub fn validate_system(raw: RawSystem) -> Result<EqSystem, ModelError> {
    let s = raw.alpha.len();
    if s == 0 {
        return Err(ModelError::Dimension("the equation needs at least one term".into()));
    }
    let t = raw.alpha[0].len();
    if t == 0 {
        return Err(ModelError::Dimension("the equation needs at least one variable".into()));
    }
    if raw.polys.len() != s {
        return Err(ModelError::Dimension(format!(
            "{} polynomials for {s} exponent rows",
            raw.polys.len()
        )));
    }
    let m = raw.generators.len();
    for (i, row) in raw.alpha.iter().enumerate() {
        if row.len() != t {
            return Err(ModelError::Dimension(format!(
                "exponent row {} has {} entries, expected {t}",
                i + 1,
                row.len()
            )));
        }
        if let Some(c) = row.iter().find(|c| c.logs.len() != m) {
            return Err(ModelError::Dimension(format!(
                "exponent row {} has {} log coordinates, expected {m}",
                i + 1,
                c.logs.len()
            )));
        }
    }
    for (i, p) in raw.polys.iter().enumerate() {
        if p.nvars() != t {
            return Err(ModelError::Dimension(format!(
                "polynomial {} has {} variables, expected {t}",
                i + 1,
                p.nvars()
            )));
        }
        if p.order() != raw.order {
            return Err(ModelError::Dimension(format!(
                "polynomial {} has coefficient order {}, expected {}",
                i + 1,
                p.order(),
                raw.order
            )));
        }
    }
    let genset = GenSet::new(raw.generators)?;
    if let Independence::Refuted(relation) = genset.independence() {
        return Err(ModelError::DependentGenerators {
            relation: relation.clone(),
        });
    }
    let alpha = AlphaMatrix::new(raw.alpha);
    let alpha_prime = alpha.normalize();
    Ok(EqSystem {
        genset,
        alpha,
        alpha_prime,
        polys: raw.polys,
        order: raw.order,
    })
}
