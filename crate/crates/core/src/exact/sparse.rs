use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GaussianRational;
use crate::error::{Error, Result};

/// A vector over ℚ(i) stored as index-sorted `(index, value)` pairs with no
/// stored zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, GaussianRational)>,
}

/// Outcome of [`SparseVector::scalar_ratio`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ratio {
    /// `v = λ·w`. `λ` is zero exactly when `v` is zero and `w` is not.
    Scalar(GaussianRational),
    NotProportional,
    /// Both vectors are zero, so every `λ` works.
    Degenerate,
}

impl Ratio {
    pub fn scalar(&self) -> Option<&GaussianRational> {
        match self {
            Ratio::Scalar(l) => Some(l),
            _ => None,
        }
    }
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        assert!(index < dim, "index {index} out of range for dimension {dim}");
        SparseVector { dim, entries: vec![(index, GaussianRational::ONE)] }
    }

    /// Builds a vector from arbitrary entries: indices may repeat (values are
    /// summed) and zeros are pruned.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, GaussianRational)>,
    {
        let mut v: Vec<(usize, GaussianRational)> = entries.into_iter().collect();
        if let Some((i, _)) = v.iter().find(|(i, _)| *i >= dim) {
            return Err(Error::DimensionMismatch { left: *i + 1, right: dim });
        }
        v.sort_by_key(|(i, _)| *i);
        Ok(SparseVector { dim, entries: merge_sorted(v) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, GaussianRational)] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> GaussianRational {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => GaussianRational::ZERO,
        }
    }

    pub fn leading(&self) -> Option<&(usize, GaussianRational)> {
        self.entries.first()
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|(_, c)| c.is_real())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVector { dim: self.dim, entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    pub fn mul_i(&self) -> Self {
        SparseVector { dim: self.dim, entries: self.entries.iter().map(|(i, v)| (*i, v.mul_i())).collect() }
    }

    /// `c1·v1 + c2·v2` with zero entries pruned.
    pub fn combine(
        c1: &GaussianRational,
        v1: &SparseVector,
        c2: &GaussianRational,
        v2: &SparseVector,
    ) -> Result<Self> {
        if v1.dim != v2.dim {
            return Err(Error::DimensionMismatch { left: v1.dim, right: v2.dim });
        }
        let mut out = Vec::with_capacity(v1.entries.len() + v2.entries.len());
        let (mut a, mut b) = (v1.entries.iter().peekable(), v2.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) if i == j => {
                    let s = &(c1 * x) + &(c2 * y);
                    if !s.is_zero() {
                        out.push((*i, s));
                    }
                    a.next();
                    b.next();
                }
                (Some((i, x)), Some((j, _))) if i < j => {
                    push_scaled(&mut out, *i, c1, x);
                    a.next();
                }
                (Some(_), Some((j, y))) => {
                    push_scaled(&mut out, *j, c2, y);
                    b.next();
                }
                (Some((i, x)), None) => {
                    push_scaled(&mut out, *i, c1, x);
                    a.next();
                }
                (None, Some((j, y))) => {
                    push_scaled(&mut out, *j, c2, y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Ok(SparseVector { dim: v1.dim, entries: out })
    }

    /// Panics on dimension mismatch.
    pub fn add(&self, other: &SparseVector) -> Self {
        Self::combine(&GaussianRational::ONE, self, &GaussianRational::ONE, other)
            .expect("dimension mismatch in SparseVector::add")
    }

    /// Panics on dimension mismatch.
    pub fn sub(&self, other: &SparseVector) -> Self {
        Self::combine(&GaussianRational::ONE, self, &-GaussianRational::ONE, other)
            .expect("dimension mismatch in SparseVector::sub")
    }

    /// Finds `λ` with `self = λ·w`.
    pub fn scalar_ratio(&self, w: &SparseVector) -> Ratio {
        match (self.is_zero(), w.is_zero()) {
            (true, true) => return Ratio::Degenerate,
            (true, false) => return Ratio::Scalar(GaussianRational::ZERO),
            (false, true) => return Ratio::NotProportional,
            _ => {}
        }
        if self.dim != w.dim || self.entries.len() != w.entries.len() {
            return Ratio::NotProportional;
        }
        let (i0, a0) = &self.entries[0];
        let (j0, b0) = &w.entries[0];
        if i0 != j0 {
            return Ratio::NotProportional;
        }
        let lambda = a0.checked_div(b0).expect("stored entries are nonzero");
        for ((i, a), (j, b)) in self.entries.iter().zip(&w.entries).skip(1) {
            if i != j || *a != b * &lambda {
                return Ratio::NotProportional;
            }
        }
        Ratio::Scalar(lambda)
    }

    /// Splits a nonzero vector as `scale · key` where `key` has leading entry 1.
    /// Two vectors are proportional over ℚ(i) iff their keys are equal.
    pub fn projective_key(&self) -> Option<(SparseVector, GaussianRational)> {
        let (_, lead) = self.entries.first()?;
        let inv = lead.recip().expect("stored entries are nonzero");
        Some((self.scale(&inv), lead.clone()))
    }

    /// Representative of the class of `v` under nonzero real scaling: the
    /// leading entry is normalized to `1 + qi` or to `i`.
    pub fn real_projective_key(&self) -> Option<SparseVector> {
        let (_, lead) = self.entries.first()?;
        let d = if lead.re.is_zero() { lead.im.clone() } else { lead.re.clone() };
        let inv = GaussianRational::real(d.recip().expect("stored entries are nonzero"));
        Some(self.scale(&inv))
    }

    /// Re/im parts laid out as a real vector of dimension `2·dim`
    /// (`re` at `2k`, `im` at `2k+1`).
    pub fn realify(&self) -> SparseVector {
        let mut out = Vec::with_capacity(2 * self.entries.len());
        for (i, c) in &self.entries {
            if !c.re.is_zero() {
                out.push((2 * i, GaussianRational::real(c.re.clone())));
            }
            if !c.im.is_zero() {
                out.push((2 * i + 1, GaussianRational::real(c.im.clone())));
            }
        }
        SparseVector { dim: 2 * self.dim, entries: out }
    }
}

fn push_scaled(out: &mut Vec<(usize, GaussianRational)>, i: usize, c: &GaussianRational, x: &GaussianRational) {
    let s = c * x;
    if !s.is_zero() {
        out.push((i, s));
    }
}

fn merge_sorted(v: Vec<(usize, GaussianRational)>) -> Vec<(usize, GaussianRational)> {
    let mut out: Vec<(usize, GaussianRational)> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = &*acc + &c,
            _ => {
                if let Some((_, acc)) = out.last() {
                    if acc.is_zero() {
                        out.pop();
                    }
                }
                out.push((i, c));
            }
        }
    }
    if matches!(out.last(), Some((_, acc)) if acc.is_zero()) {
        out.pop();
    }
    out
}

/// Accumulates `(index, value)` contributions and yields a pruned vector.
pub(crate) fn collect_terms(dim: usize, mut terms: Vec<(usize, GaussianRational)>) -> SparseVector {
    terms.sort_by_key(|(i, _)| *i);
    SparseVector { dim, entries: merge_sorted(terms) }
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        write!(f, "]/{}", self.dim)
    }
}

struct EntryMap<'a>(&'a [(usize, GaussianRational)]);

impl Serialize for EntryMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.0.len()))?;
        for (i, c) in self.0 {
            m.serialize_entry(&i.to_string(), c)?;
        }
        m.end()
    }
}

impl Serialize for SparseVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(2))?;
        m.serialize_entry("dim", &self.dim)?;
        m.serialize_entry("entries", &EntryMap(&self.entries))?;
        m.end()
    }
}

#[derive(Deserialize)]
struct RawSparse {
    dim: usize,
    entries: BTreeMap<String, GaussianRational>,
}

impl<'de> Deserialize<'de> for SparseVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSparse::deserialize(deserializer)?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for (k, v) in raw.entries {
            let i: usize = k.parse().map_err(|_| D::Error::custom(format!("bad index `{k}`")))?;
            entries.push((i, v));
        }
        SparseVector::from_entries(raw.dim, entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn gi(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn v(dim: usize, e: &[(usize, i64)]) -> SparseVector {
        SparseVector::from_entries(dim, e.iter().map(|&(i, c)| (i, gi(c)))).unwrap()
    }

    #[test]
    fn self_cancellation_is_empty() {
        let a = v(3, &[(0, 1), (2, 5)]);
        let r = SparseVector::combine(&gi(1), &a, &gi(-1), &a).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn disjoint_combination() {
        let r = SparseVector::combine(&gi(2), &v(2, &[(0, 1)]), &gi(3), &v(2, &[(1, 1)])).unwrap();
        assert_eq!(r, v(2, &[(0, 2), (1, 3)]));
    }

    #[test]
    fn cancellation_prunes() {
        let r = SparseVector::combine(&gi(1), &v(2, &[(0, 1), (1, 2)]), &gi(-2), &v(2, &[(1, 1)])).unwrap();
        assert_eq!(r, v(2, &[(0, 1)]));
        assert_eq!(r.nnz(), 1);
    }

    #[test]
    fn combine_dimension_mismatch() {
        let r = SparseVector::combine(&gi(1), &v(2, &[]), &gi(1), &v(3, &[]));
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn from_entries_merges_and_rejects_out_of_range() {
        let a = SparseVector::from_entries(3, vec![(1, gi(2)), (0, gi(1)), (1, gi(-2))]).unwrap();
        assert_eq!(a, v(3, &[(0, 1)]));
        assert!(SparseVector::from_entries(2, vec![(2, gi(1))]).is_err());
    }

    #[test]
    fn ratios() {
        let w = v(3, &[(0, 1), (2, -3)]);
        assert_eq!(w.scale(&gi(2)).scalar_ratio(&w), Ratio::Scalar(gi(2)));
        assert_eq!(w.mul_i().scalar_ratio(&w), Ratio::Scalar(GaussianRational::I));
        assert_eq!(v(2, &[(0, 1), (1, 1)]).scalar_ratio(&v(2, &[(0, 1), (1, 2)])), Ratio::NotProportional);
        assert_eq!(SparseVector::zero(3).scalar_ratio(&w), Ratio::Scalar(GaussianRational::ZERO));
        assert_eq!(SparseVector::zero(3).scalar_ratio(&SparseVector::zero(3)), Ratio::Degenerate);
        assert_eq!(w.scalar_ratio(&SparseVector::zero(3)), Ratio::NotProportional);
    }

    #[test]
    fn projective_key_normalizes_lead() {
        let w = v(4, &[(1, 4), (3, 6)]);
        let (key, s) = w.scale(&GaussianRational::I).projective_key().unwrap();
        assert_eq!(key.leading().unwrap().1, GaussianRational::ONE);
        assert_eq!(key.scale(&s), w.scale(&GaussianRational::I));
        assert_eq!(key, w.projective_key().unwrap().0);
    }

    #[test]
    fn json_shape() {
        let a = SparseVector::from_entries(
            12,
            vec![(10, GaussianRational::new(Rational::new(1, 2).unwrap(), Rational::ZERO)), (2, GaussianRational::I)],
        )
        .unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"{"dim":12,"entries":{"2":{"re":"0","im":"1"},"10":{"re":"1/2","im":"0"}}}"#
        );
        let back: SparseVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
