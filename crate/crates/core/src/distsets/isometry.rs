use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::rootsystem::{e6_blocks, CartanType, Family, RootIndex, RootSystem};

/// Source and target of the isometries between spans of single roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IsometryPair {
    /// `B_n → D_{n+1}`
    BToD,
    /// `C_n → A_{2n−1}`
    CToA,
    /// `F4 → E6`
    F4ToE6,
}

impl IsometryPair {
    pub const ALL: [IsometryPair; 3] = [IsometryPair::BToD, IsometryPair::CToA, IsometryPair::F4ToE6];
}

/// A linear map between ambient spaces with `⟨πu, πv⟩ = gram_scale·⟨u, v⟩`
/// on the span of the source's single roots.
#[derive(Clone, Debug, Serialize)]
pub struct Isometry {
    pub pair: IsometryPair,
    #[serde(serialize_with = "ser_type")]
    pub source: CartanType,
    #[serde(serialize_with = "ser_type")]
    pub target: CartanType,
    /// `columns[j]` is the image of the `j`-th source coordinate vector.
    pub columns: Vec<Vec<Rational>>,
    pub gram_scale: Rational,
}

fn ser_type<S: serde::Serializer>(t: &CartanType, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

impl Isometry {
    /// `n` is the rank of the source for `BToD` and `CToA`; ignored for `F4ToE6`.
    pub fn new(pair: IsometryPair, n: usize) -> Result<Self> {
        match pair {
            IsometryPair::BToD => {
                let source = CartanType::new(Family::B, n)?;
                let target = CartanType::new(Family::D, n + 1)?;
                // e_i ± e_n ↦ e_i ± e_n, so e_j ↦ e_j.
                let columns = (0..n)
                    .map(|j| (0..=n).map(|i| Rational::from_int(i64::from(i == j))).collect())
                    .collect();
                Ok(Isometry { pair, source, target, columns, gram_scale: Rational::ONE })
            }
            IsometryPair::CToA => {
                let source = CartanType::new(Family::C, n)?;
                let target = CartanType::new(Family::A, 2 * n - 1)?;
                // 2e_j ↦ e_j − e_{2n+1−j} (1-based), halving squared lengths.
                let m = 2 * n;
                let columns = (0..n)
                    .map(|j| {
                        let mut c = vec![Rational::ZERO; m];
                        c[j] = r(1, 2);
                        c[m - 1 - j] = r(-1, 2);
                        c
                    })
                    .collect();
                Ok(Isometry { pair, source, target, columns, gram_scale: r(1, 2) })
            }
            IsometryPair::F4ToE6 => {
                let source = CartanType::new(Family::F, 4)?;
                let target = CartanType::new(Family::E, 6)?;
                let (a, b) = e6_blocks();
                let cat = |x: [i64; 3], y: [i64; 3], z: [i64; 3]| -> Vec<Rational> {
                    x.iter().chain(&y).chain(&z).map(|&c| r(c, 3)).collect()
                };
                let zero = [0; 3];
                // Images of e1+e2, e1−e2, e3+e4, e3−e4.
                let t = [cat(a[0], zero, zero), cat(b[0], b[0], b[0]), cat(b[0], b[1], b[1]), cat(b[0], b[2], b[2])];
                let half = |p: &Vec<Rational>, q: &Vec<Rational>, s: i64| -> Vec<Rational> {
                    p.iter().zip(q).map(|(x, y)| (x + &(y * &Rational::from_int(s))) * r(1, 2)).collect()
                };
                let columns = vec![half(&t[0], &t[1], 1), half(&t[0], &t[1], -1), half(&t[2], &t[3], 1), half(&t[2], &t[3], -1)];
                Ok(Isometry { pair, source, target, columns, gram_scale: Rational::ONE })
            }
        }
    }

    /// The isometry whose source has type `source`.
    pub fn for_source(source: CartanType) -> Result<Self> {
        match source.family {
            Family::B => Self::new(IsometryPair::BToD, source.rank),
            Family::C => Self::new(IsometryPair::CToA, source.rank),
            Family::F => Self::new(IsometryPair::F4ToE6, 4),
            _ => Err(Error::WrongSystem { expected: "B_n, C_n or F4".into(), got: source.to_string() }),
        }
    }

    /// Image of a source ambient vector. Single roots span the whole source
    /// ambient space in all three cases, so only the dimension can be wrong.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.columns.len() {
            return Err(Error::OutsideSpan);
        }
        let m = self.columns[0].len();
        let mut out = vec![Rational::ZERO; m];
        for (c, col) in v.iter().zip(&self.columns) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(col) {
                *o += &(c * x);
            }
        }
        Ok(out)
    }

    pub fn map_root(&self, src: &RootSystem, tgt: &RootSystem, r: RootIndex) -> Option<RootIndex> {
        tgt.lookup(&self.apply(&src.coords(r)).ok()?)
    }

    /// Pairs of source basis vectors whose images violate the Gram relation.
    pub fn gram_violations(&self) -> Vec<(usize, usize)> {
        let n = self.columns.len();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let img: Rational = self.columns[i].iter().zip(&self.columns[j]).map(|(x, y)| x * y).fold(Rational::ZERO, |a, b| a + b);
                let want = if i == j { self.gram_scale.clone() } else { Rational::ZERO };
                if img != want {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}
