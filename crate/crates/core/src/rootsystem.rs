//! Irreducible reduced root systems with rational coordinates.
//!
//! Roots are stored as integer vectors scaled by a per-system common
//! denominator, so sums, lookups and inner products stay in `i64`. Positive
//! roots are those whose first nonzero coordinate is positive; they are
//! sorted in decreasing lexicographic order and each is immediately followed
//! by its negative, so `neg(r)` flips the low bit of the index.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootIndex(u32);

impl RootIndex {
    pub fn new(i: usize) -> Self {
        RootIndex(i as u32)
    }

    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for RootIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan–Killing type such as `B3` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidRank { label: format!("{family:?}"), rank })
        }
    }

    /// Parses a family letter (`"B"`) with an explicit rank, or a full label
    /// (`"E6"`, `"B3"`) when `rank` is `None`.
    pub fn parse(label: &str, rank: Option<usize>) -> Result<Self> {
        let label = label.trim();
        let mut chars = label.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownType(label.to_string())),
        };
        let suffix = chars.as_str();
        let from_label = if suffix.is_empty() {
            None
        } else {
            Some(suffix.parse::<usize>().map_err(|_| Error::UnknownType(label.to_string()))?)
        };
        let rank = match (from_label, rank) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::InvalidRank { label: label.to_string(), rank: b })
            }
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => match family {
                Family::F => 4,
                Family::G => 2,
                _ => return Err(Error::InvalidRank { label: label.to_string(), rank: 0 }),
            },
        };
        CartanType::new(family, rank)
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CartanType::parse(s, None)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
    Uniform,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    ambient: usize,
    denom: i64,
    coords: Vec<Vec<i64>>,
    index_of: HashMap<Vec<i64>, RootIndex>,
    simple: Vec<RootIndex>,
    simple_coords: Vec<Vec<i64>>,
    norm2: Vec<i64>,
    length: Vec<LengthClass>,
    sums: Vec<u32>,
}

const NO_ROOT: u32 = u32::MAX;

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn pm_pairs(n: usize, range: std::ops::Range<usize>, scale: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in range.clone() {
        for j in range.clone().filter(|&j| j > i) {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; n];
                v[i] = si * scale;
                v[j] = sj * scale;
                out.push(v);
            }
        }
    }
    out
}

/// The three-dimensional vectors `a_i = e_j − e_k` and `3·b_i = e_j + e_k − 2e_i`
/// for `(i, j, k)` a cyclic rotation of `(0, 1, 2)`.
pub(crate) fn e6_blocks() -> ([[i64; 3]; 3], [[i64; 3]; 3]) {
    let mut a = [[0; 3]; 3];
    let mut b = [[0; 3]; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        a[i][j] = 3;
        a[i][k] = -3;
        b[i][j] = 1;
        b[i][k] = 1;
        b[i][i] = -2;
    }
    (a, b)
}

fn e6_roots() -> Vec<Vec<i64>> {
    // Coordinates scaled by 3.
    let (a, b) = e6_blocks();
    let cat = |x: [i64; 3], y: [i64; 3], z: [i64; 3]| -> Vec<i64> {
        x.iter().chain(&y).chain(&z).copied().collect()
    };
    let neg = |v: Vec<i64>| -> Vec<i64> { v.into_iter().map(|x| -x).collect() };
    let zero = [0; 3];
    let mut out = Vec::new();
    let mut push_pm = |v: Vec<i64>| {
        out.push(neg(v.clone()));
        out.push(v);
    };
    for i in 0..3 {
        push_pm(cat(a[i], zero, zero));
        for j in 0..3 {
            push_pm(cat(b[i], b[j], b[j]));
        }
    }
    for i in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        for l in 0..3 {
            for (j, k) in [(others[0], others[1]), (others[1], others[0])] {
                push_pm(cat(b[l], b[j], b[k]));
            }
        }
        push_pm(cat(zero, a[i], zero));
        push_pm(cat(zero, zero, a[i]));
    }
    out
}

fn e8_roots() -> Vec<Vec<i64>> {
    // Coordinates scaled by 2.
    let mut out = pm_pairs(8, 0..8, 2);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            out.push((0..8).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
        }
    }
    out
}

/// Raw scaled coordinates, the common denominator and the ambient dimension.
fn raw_roots(t: CartanType) -> (Vec<Vec<i64>>, i64, usize) {
    let n = t.rank;
    match (t.family, n) {
        (Family::A, _) => {
            let m = n + 1;
            let mut out = Vec::new();
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        let mut v = vec![0; m];
                        v[i] = 1;
                        v[j] = -1;
                        out.push(v);
                    }
                }
            }
            (out, 1, m)
        }
        (Family::B, _) => {
            let mut out = pm_pairs(n, 0..n, 1);
            for i in 0..n {
                out.push(unit(n, i, 1));
                out.push(unit(n, i, -1));
            }
            (out, 1, n)
        }
        (Family::C, _) => {
            let mut out = pm_pairs(n, 0..n, 1);
            for i in 0..n {
                out.push(unit(n, i, 2));
                out.push(unit(n, i, -2));
            }
            (out, 1, n)
        }
        (Family::D, _) => (pm_pairs(n, 0..n, 1), 1, n),
        (Family::G, _) => {
            let mut out = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        let mut v = vec![0; 3];
                        v[i] = 1;
                        v[j] = -1;
                        out.push(v);
                    }
                }
                let mut long = vec![1; 3];
                long[i] = -2;
                out.push(long.iter().map(|x| -x).collect());
                out.push(long);
            }
            (out, 1, 3)
        }
        (Family::F, _) => {
            let mut out: Vec<Vec<i64>> = pm_pairs(4, 0..4, 2);
            for i in 0..4 {
                out.push(unit(4, i, 2));
                out.push(unit(4, i, -2));
            }
            for mask in 0u32..16 {
                out.push((0..4).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
            }
            (out, 2, 4)
        }
        (Family::E, 6) => (e6_roots(), 3, 9),
        (Family::E, 7) => {
            let roots = e8_roots().into_iter().filter(|v| v[6] + v[7] == 0).collect();
            (roots, 2, 8)
        }
        (Family::E, _) => (e8_roots(), 2, 8),
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn is_lex_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

impl RootSystem {
    pub fn build(t: CartanType) -> Self {
        let (raw, denom, ambient) = raw_roots(t);
        let mut positive: Vec<Vec<i64>> = raw.into_iter().filter(|v| is_lex_positive(v)).collect();
        positive.sort_by(|a, b| b.cmp(a));
        positive.dedup();
        let mut coords = Vec::with_capacity(2 * positive.len());
        for p in positive {
            coords.push(p.iter().map(|x| -x).collect::<Vec<i64>>());
            coords.push(p);
        }
        // pairs are (neg, pos) above; swap so positives sit at even indices
        for k in 0..coords.len() / 2 {
            coords.swap(2 * k, 2 * k + 1);
        }
        let index_of: HashMap<Vec<i64>, RootIndex> =
            coords.iter().enumerate().map(|(i, v)| (v.clone(), RootIndex::new(i))).collect();
        let norm2: Vec<i64> = coords.iter().map(|v| dot(v, v)).collect();
        let max = *norm2.iter().max().expect("nonempty");
        let min = *norm2.iter().min().expect("nonempty");
        let length = norm2
            .iter()
            .map(|&n| {
                if max == min {
                    LengthClass::Uniform
                } else if n == max {
                    LengthClass::Long
                } else {
                    LengthClass::Short
                }
            })
            .collect();

        let n = coords.len();
        let mut sums = vec![NO_ROOT; n * n];
        let mut buf = vec![0i64; ambient];
        for a in 0..n {
            for b in 0..n {
                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = coords[a][k] + coords[b][k];
                }
                if let Some(r) = index_of.get(&buf) {
                    sums[a * n + b] = r.0;
                }
            }
        }

        let mut rs = RootSystem {
            cartan_type: t,
            ambient,
            denom,
            coords,
            index_of,
            simple: Vec::new(),
            simple_coords: Vec::new(),
            norm2,
            length,
            sums,
        };
        rs.simple = (0..n / 2)
            .map(|k| RootIndex::new(2 * k))
            .filter(|&r| {
                !(0..n / 2).any(|k| {
                    let a = RootIndex::new(2 * k);
                    rs.sub(r, a).is_some_and(|d| rs.is_positive(d))
                })
            })
            .collect();
        assert_eq!(rs.simple.len(), t.rank, "simple root count for {t}");
        rs.simple_coords = rs.compute_simple_coords();
        rs
    }

    /// Builds the root system from a family letter and rank.
    pub fn from_label(label: &str, rank: Option<usize>) -> Result<Self> {
        Ok(Self::build(CartanType::parse(label, rank)?))
    }

    fn compute_simple_coords(&self) -> Vec<Vec<i64>> {
        let r = self.simple.len();
        let gram: Vec<Vec<Rational>> = (0..r)
            .map(|i| (0..r).map(|j| Rational::from_int(self.dot_scaled(self.simple[i], self.simple[j]))).collect())
            .collect();
        let inv = invert(gram);
        (0..self.len())
            .map(|a| {
                let rhs: Vec<Rational> = self
                    .simple
                    .iter()
                    .map(|&s| Rational::from_int(self.dot_scaled(RootIndex::new(a), s)))
                    .collect();
                (0..r)
                    .map(|i| {
                        let m = (0..r).fold(Rational::ZERO, |acc, j| acc + &inv[i][j] * &rhs[j]);
                        m.to_i64().expect("roots are integral combinations of simple roots")
                    })
                    .collect()
            })
            .collect()
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn roots(&self) -> impl Iterator<Item = RootIndex> + '_ {
        (0..self.len()).map(RootIndex::new)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = RootIndex> + '_ {
        (0..self.len()).step_by(2).map(RootIndex::new)
    }

    pub fn simple_roots(&self) -> &[RootIndex] {
        &self.simple
    }

    pub fn is_positive(&self, r: RootIndex) -> bool {
        r.0.is_multiple_of(2)
    }

    pub fn neg(&self, r: RootIndex) -> RootIndex {
        RootIndex(r.0 ^ 1)
    }

    /// Coordinates as rationals.
    pub fn coords(&self, r: RootIndex) -> Vec<Rational> {
        self.coords[r.idx()]
            .iter()
            .map(|&x| Rational::new(x, self.denom).expect("nonzero denominator"))
            .collect()
    }

    /// Coordinates scaled by [`Self::denominator`].
    pub fn scaled_coords(&self, r: RootIndex) -> &[i64] {
        &self.coords[r.idx()]
    }

    pub fn denominator(&self) -> i64 {
        self.denom
    }

    /// Coefficients in the simple-root basis.
    pub fn simple_coords(&self, r: RootIndex) -> &[i64] {
        &self.simple_coords[r.idx()]
    }

    pub fn height(&self, r: RootIndex) -> i64 {
        self.simple_coords[r.idx()].iter().sum()
    }

    pub fn length_class(&self, r: RootIndex) -> LengthClass {
        self.length[r.idx()]
    }

    pub fn is_long(&self, r: RootIndex) -> bool {
        self.length[r.idx()] != LengthClass::Short
    }

    /// `⟨α, β⟩ · denom²`, an exact integer.
    pub fn dot_scaled(&self, a: RootIndex, b: RootIndex) -> i64 {
        dot(&self.coords[a.idx()], &self.coords[b.idx()])
    }

    pub fn norm2_scaled(&self, a: RootIndex) -> i64 {
        self.norm2[a.idx()]
    }

    pub fn inner_product(&self, a: RootIndex, b: RootIndex) -> Rational {
        Rational::new(self.dot_scaled(a, b), self.denom * self.denom).expect("nonzero")
    }

    pub fn norm2(&self, a: RootIndex) -> Rational {
        self.inner_product(a, a)
    }

    /// `2⟨β, α⟩ / |α|²`.
    pub fn cartan_integer(&self, alpha: RootIndex, beta: RootIndex) -> i64 {
        let num = 2 * self.dot_scaled(alpha, beta);
        let den = self.norm2[alpha.idx()];
        assert!(num % den == 0, "non-integral Cartan number for roots {alpha}, {beta}");
        num / den
    }

    pub fn add(&self, a: RootIndex, b: RootIndex) -> Option<RootIndex> {
        let s = self.sums[a.idx() * self.len() + b.idx()];
        (s != NO_ROOT).then_some(RootIndex(s))
    }

    pub fn sub(&self, a: RootIndex, b: RootIndex) -> Option<RootIndex> {
        self.add(a, self.neg(b))
    }

    pub fn proportional(&self, a: RootIndex, b: RootIndex) -> bool {
        a == b || a == self.neg(b)
    }

    /// `(p, q)` for the α-string `β + nα`, `−q ≤ n ≤ p`.
    pub fn root_string(&self, alpha: RootIndex, beta: RootIndex) -> Result<(u32, u32)> {
        if self.proportional(alpha, beta) {
            return Err(Error::ProportionalRoots(alpha.idx(), beta.idx()));
        }
        let walk = |step: RootIndex| {
            let mut n = 0;
            let mut cur = beta;
            while let Some(next) = self.add(cur, step) {
                n += 1;
                cur = next;
            }
            n
        };
        Ok((walk(alpha), walk(self.neg(alpha))))
    }

    pub fn lookup(&self, v: &[Rational]) -> Option<RootIndex> {
        if v.len() != self.ambient {
            return None;
        }
        let d = Rational::from_int(self.denom);
        let scaled: Option<Vec<i64>> = v.iter().map(|x| (x * &d).to_i64()).collect();
        self.index_of.get(&scaled?).copied()
    }

    /// Lookup by coordinates already scaled by the common denominator.
    pub fn lookup_scaled(&self, v: &[i64]) -> Option<RootIndex> {
        self.index_of.get(v).copied()
    }

    /// `s_α(β) = β − ⟨β, α^∨⟩ α`.
    pub fn reflect(&self, alpha: RootIndex, beta: RootIndex) -> Option<RootIndex> {
        let k = self.cartan_integer(alpha, beta);
        let v: Vec<i64> =
            self.coords[beta.idx()].iter().zip(&self.coords[alpha.idx()]).map(|(b, a)| b - k * a).collect();
        self.lookup_scaled(&v)
    }

    /// Cartan matrix `A_ij = ⟨α_j, α_i^∨⟩` on simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|&a| self.simple.iter().map(|&b| self.cartan_integer(a, b)).collect())
            .collect()
    }

    /// Root with the given simple-root coefficients.
    pub fn from_simple_coords(&self, m: &[i64]) -> Option<RootIndex> {
        let mut v = vec![0i64; self.ambient];
        for (k, &c) in m.iter().enumerate() {
            for (slot, x) in v.iter_mut().zip(&self.coords[self.simple[k].idx()]) {
                *slot += c * x;
            }
        }
        self.lookup_scaled(&v)
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            cartan_type: self.cartan_type.label(),
            rank: self.rank(),
            ambient: self.ambient,
            roots: self.roots().map(|r| self.coords(r)).collect(),
        }
    }
}

/// Gauss–Jordan inverse of a nonsingular rational matrix.
pub(crate) fn invert(mut m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular matrix");
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] = &m[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let a = &m[col][j] * &f;
                    m[r][j] -= &a;
                    let b = &inv[col][j] * &f;
                    inv[r][j] -= &b;
                }
            }
        }
    }
    inv
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub ambient: usize,
    pub roots: Vec<Vec<Rational>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn root(rs: &RootSystem, v: &[i64]) -> RootIndex {
        rs.lookup(&v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn invalid_ranks() {
        for (l, r) in [("A", 0), ("B", 1), ("C", 2), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3)] {
            assert!(CartanType::parse(l, Some(r)).is_err(), "{l}{r}");
        }
        assert!(CartanType::parse("X", Some(2)).is_err());
        assert!(CartanType::parse("B3", Some(4)).is_err());
        assert_eq!(CartanType::parse("b3", None).unwrap().to_string(), "B3");
        assert_eq!(CartanType::parse("G", None).unwrap().rank, 2);
    }

    #[test]
    fn g2_lengths() {
        let rs = RootSystem::from_label("G2", None).unwrap();
        assert_eq!(rs.len(), 12);
        let short = rs.roots().filter(|&r| rs.length_class(r) == LengthClass::Short).count();
        assert_eq!(short, 6);
    }

    #[test]
    fn f4_short_blocks() {
        let rs = RootSystem::from_label("F4", None).unwrap();
        assert_eq!(rs.len(), 48);
        let (mut long, mut sh1, mut sh2, mut sh3) = (0, 0, 0, 0);
        for r in rs.roots() {
            let c = rs.scaled_coords(r);
            match rs.length_class(r) {
                LengthClass::Long => long += 1,
                _ if c.iter().filter(|&&x| x != 0).count() == 1 => sh1 += 1,
                _ if c.iter().product::<i64>() > 0 => sh2 += 1,
                _ => sh3 += 1,
            }
        }
        assert_eq!((long, sh1, sh2, sh3), (24, 8, 8, 8));
    }

    #[test]
    fn e6_realization() {
        let rs = RootSystem::from_label("E6", None).unwrap();
        assert_eq!(rs.len(), 72);
        assert_eq!(rs.ambient_dim(), 9);
        assert!(rs.roots().all(|r| rs.norm2(r) == Rational::from_int(2)));
    }

    #[test]
    fn g2_inner_product_and_string() {
        let rs = RootSystem::from_label("G2", None).unwrap();
        let a = root(&rs, &[1, -1, 0]);
        let b = root(&rs, &[-2, 1, 1]);
        assert_eq!(rs.inner_product(a, b), Rational::from_int(-3));
        assert_eq!(rs.cartan_integer(a, b), -3);
        let c = root(&rs, &[0, 1, -1]);
        assert_eq!(rs.root_string(a, c).unwrap(), (2, 1));
        assert_eq!(rs.inner_product(a, rs.neg(a)), -rs.inner_product(a, a));
    }

    #[test]
    fn strings_and_errors() {
        let a2 = RootSystem::from_label("A", Some(2)).unwrap();
        let s = a2.simple_roots();
        assert_eq!(a2.root_string(s[0], s[1]).unwrap(), (1, 0));
        assert!(a2.root_string(s[0], a2.neg(s[0])).is_err());
        let b3 = RootSystem::from_label("B", Some(3)).unwrap();
        assert_eq!(b3.root_string(root(&b3, &[1, 0, 0]), root(&b3, &[0, 1, 0])).unwrap(), (1, 1));
        assert_eq!(b3.cartan_integer(root(&b3, &[1, 0, 0]), root(&b3, &[0, 1, 0])), 0);
    }

    #[test]
    fn lookups() {
        let b3 = RootSystem::from_label("B", Some(3)).unwrap();
        assert!(b3.lookup(&[q(1, 1), q(1, 1), q(0, 1)]).is_some());
        assert!(b3.lookup(&[q(1, 1), q(1, 1), q(1, 1)]).is_none());
        let f4 = RootSystem::from_label("F4", None).unwrap();
        let r = f4.lookup(&[q(1, 2), q(1, 2), q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(f4.length_class(r), LengthClass::Short);
    }

    #[test]
    fn simple_roots_a3() {
        let rs = RootSystem::from_label("A", Some(3)).unwrap();
        let got: Vec<Vec<Rational>> = rs.simple_roots().iter().map(|&r| rs.coords(r)).collect();
        let e = |i: usize, j: usize| {
            let mut v = vec![Rational::ZERO; 4];
            v[i] = Rational::ONE;
            v[j] = -Rational::ONE;
            v
        };
        assert_eq!(got, vec![e(0, 1), e(1, 2), e(2, 3)]);
    }
}
