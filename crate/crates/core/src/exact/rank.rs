use std::collections::HashMap;

use super::{GaussianRational, SparseVector};
use crate::error::{Error, Result};

/// Incremental row-echelon basis over ℚ(i). Each stored row is keyed by its
/// leading index and normalized so that entry is 1.
#[derive(Debug, Default)]
pub struct EchelonBasis {
    dim: Option<usize>,
    rows: HashMap<usize, SparseVector>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the nonzero remainder, if any.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut v = v.clone();
        while let Some((lead, c)) = v.leading().cloned() {
            // Every row has a lead larger than the one it eliminates, so the
            // leading index strictly increases and the loop terminates.
            match self.rows.get(&lead) {
                Some(row) => {
                    v = SparseVector::combine(&GaussianRational::ONE, &v, &-c, row)
                        .expect("dimension checked on insert");
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVector) -> Result<bool> {
        match self.dim {
            None => self.dim = Some(v.dim()),
            Some(d) if d != v.dim() => return Err(Error::DimensionMismatch { left: d, right: v.dim() }),
            _ => {}
        }
        let r = self.reduce(v);
        match r.projective_key() {
            Some((row, _)) => {
                let lead = row.leading().expect("nonzero").0;
                self.rows.insert(lead, row);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Rank over ℚ(i) of the span of `vs`.
pub fn rank_of_span<'a, I>(vs: I) -> Result<usize>
where
    I: IntoIterator<Item = &'a SparseVector>,
{
    let mut basis = EchelonBasis::new();
    for v in vs {
        basis.insert(v)?;
    }
    Ok(basis.rank())
}

/// Rank over ℚ of the span of `vs`, viewing ℚ(i)ⁿ as ℚ²ⁿ. For a set that lies
/// in a real form this equals [`rank_of_span`]; it differs when the set mixes
/// `X` and `iX`.
pub fn real_rank_of_span<'a, I>(vs: I) -> Result<usize>
where
    I: IntoIterator<Item = &'a SparseVector>,
{
    let mut basis = EchelonBasis::new();
    for v in vs {
        basis.insert(&v.realify())?;
    }
    Ok(basis.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(dim: usize, e: &[(usize, i64)]) -> SparseVector {
        SparseVector::from_entries(dim, e.iter().map(|&(i, c)| (i, GaussianRational::from_int(c)))).unwrap()
    }

    #[test]
    fn empty_span() {
        assert_eq!(rank_of_span(std::iter::empty()).unwrap(), 0);
    }

    #[test]
    fn dependent_vectors() {
        let a = v(3, &[(0, 1), (1, 1)]);
        let b = a.scale(&GaussianRational::from_int(2));
        let c = v(3, &[(1, 1), (2, 1)]);
        assert_eq!(rank_of_span([&a, &b, &c]).unwrap(), 2);
    }

    #[test]
    fn mismatch_is_error() {
        let a = v(3, &[(0, 1)]);
        let b = v(4, &[(0, 1)]);
        assert!(rank_of_span([&a, &b]).is_err());
    }

    #[test]
    fn complex_vs_real_rank() {
        let a = v(2, &[(0, 1)]);
        let ia = a.mul_i();
        assert_eq!(rank_of_span([&a, &ia]).unwrap(), 1);
        assert_eq!(real_rank_of_span([&a, &ia]).unwrap(), 2);
    }
}
