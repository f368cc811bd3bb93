use serde::Serialize;

use super::isometry::{Isometry, IsometryPair};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::involution::RealForm;
use crate::rootsystem::{CartanType, Family, RootIndex, RootSystem};

/// Roots `(α, β)` with both `α + β` and `α − θβ` roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MatchedPair {
    pub alpha: RootIndex,
    pub beta: RootIndex,
}

/// `(x, y) = (α + β, α − θβ)` for a matched pair `(α, β)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Iop {
    pub x: RootIndex,
    pub y: RootIndex,
    pub witness: MatchedPair,
}

fn is_matched(rf: &RealForm, a: RootIndex, b: RootIndex) -> bool {
    let rs = rf.root_system();
    rs.add(a, b).is_some() && rs.sub(a, rf.inv.theta_root(b)).is_some()
}

pub fn find_matched_pairs(rf: &RealForm) -> Vec<MatchedPair> {
    let rs = rf.root_system();
    let mut out = Vec::new();
    for a in rs.roots() {
        for b in rs.roots() {
            if is_matched(rf, a, b) {
                out.push(MatchedPair { alpha: a, beta: b });
            }
        }
    }
    out
}

/// Roots that occur in no matched pair, in index order.
pub fn find_singles(rf: &RealForm) -> Vec<RootIndex> {
    let rs = rf.root_system();
    let mut paired = vec![false; rs.len()];
    for p in find_matched_pairs(rf) {
        paired[p.alpha.idx()] = true;
        paired[p.beta.idx()] = true;
    }
    rs.roots().filter(|r| !paired[r.idx()]).collect()
}

/// Distinct iops in order of their first witness.
pub fn iops(rf: &RealForm) -> Vec<Iop> {
    let rs = rf.root_system();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for p in find_matched_pairs(rf) {
        let x = rs.add(p.alpha, p.beta).expect("matched");
        let y = rs.sub(p.alpha, rf.inv.theta_root(p.beta)).expect("matched");
        if seen.insert((x, y)) {
            out.push(Iop { x, y, witness: p });
        }
    }
    out
}

/// A matched pair producing `(x, y)`, if any.
pub fn iop_witness(rf: &RealForm, x: RootIndex, y: RootIndex) -> Option<MatchedPair> {
    let rs = rf.root_system();
    rs.roots().find_map(|a| {
        let b = rs.sub(x, a)?;
        (rs.sub(a, rf.inv.theta_root(b)) == Some(y)).then_some(MatchedPair { alpha: a, beta: b })
    })
}

/// `R_{x,y} = ±{x, y}`, sorted.
pub fn r_class(rs: &RootSystem, x: RootIndex, y: RootIndex) -> [RootIndex; 4] {
    let mut r = [x, rs.neg(x), y, rs.neg(y)];
    r.sort();
    r
}

/// `ξ = ⟨x,x′⟩⟨y,y′⟩⟨x,y′⟩⟨y,x′⟩`.
pub fn xi(rs: &RootSystem, x: RootIndex, y: RootIndex, x2: RootIndex, y2: RootIndex) -> Rational {
    let ip = |a, b| rs.inner_product(a, b);
    ip(x, x2) * ip(y, y2) * ip(x, y2) * ip(y, x2)
}

/// Sums of two root sets that are roots, with a flag for sums equal to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SumSet {
    pub roots: Vec<RootIndex>,
    pub contains_zero: bool,
}

fn sum_set(rs: &RootSystem, left: &[RootIndex], right: &[RootIndex]) -> SumSet {
    let mut out = SumSet::default();
    for &a in left {
        for &b in right {
            if b == rs.neg(a) {
                out.contains_zero = true;
            } else if let Some(s) = rs.add(a, b) {
                out.roots.push(s);
            }
        }
    }
    out.roots.sort();
    out.roots.dedup();
    out
}

/// `Q = R_{x,y} + R_{x′,y′}`.
pub fn q_set(rs: &RootSystem, (x, y): (RootIndex, RootIndex), (x2, y2): (RootIndex, RootIndex)) -> SumSet {
    sum_set(rs, &r_class(rs, x, y), &r_class(rs, x2, y2))
}

/// `P = R_{x,y} + {γ, −θγ}`.
pub fn p_set(rf: &RealForm, (x, y): (RootIndex, RootIndex), gamma: RootIndex) -> SumSet {
    let rs = rf.root_system();
    let ntg = rs.neg(rf.inv.theta_root(gamma));
    sum_set(rs, &r_class(rs, x, y), &[gamma, ntg])
}

/// The three blocks of single roots of F4 (or their images in E6) and the
/// representatives `u_i, v_i, s_i, t_i` with `Δ_sin_i = ±{u_i, v_i, s_i, t_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SinDecomposition {
    pub blocks: [Vec<RootIndex>; 3],
    pub reps: [[RootIndex; 4]; 3],
}

impl SinDecomposition {
    /// Block number (0-based) containing `r`.
    pub fn block_of(&self, r: RootIndex) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&r))
    }
}

/// Representatives in F4 coordinates (`e_1..e_4`, entries ±1 on two slots).
const F4_REPS: [[(usize, i64, usize, i64); 4]; 3] = [
    [(0, 1, 1, 1), (0, 1, 1, -1), (2, 1, 3, 1), (2, 1, 3, -1)],
    [(2, 1, 1, -1), (1, 1, 2, 1), (0, 1, 3, -1), (0, 1, 3, 1)],
    [(0, 1, 2, 1), (0, 1, 2, -1), (1, 1, 3, 1), (1, 1, 3, -1)],
];

fn f4_rep(rs: &RootSystem, (i, a, j, b): (usize, i64, usize, i64)) -> RootIndex {
    // F4 coordinates are stored scaled by 2.
    let mut v = [0i64; 4];
    v[i] = 2 * a;
    v[j] = 2 * b;
    rs.lookup_scaled(&v).expect("long F4 root")
}

pub fn sin_decomposition(rf: &RealForm) -> Result<SinDecomposition> {
    let rs = rf.root_system();
    let t = rs.cartan_type();
    let reps: [[RootIndex; 4]; 3] = match t.family {
        Family::F => F4_REPS.map(|row| row.map(|e| f4_rep(rs, e))),
        Family::E if t.rank == 6 && rf.inv.has_complex_roots() => {
            let f4 = RootSystem::build(CartanType::new(Family::F, 4)?);
            let pi = Isometry::new(IsometryPair::F4ToE6, 4)?;
            let mut out = [[RootIndex::new(0); 4]; 3];
            for (i, row) in F4_REPS.iter().enumerate() {
                for (k, &e) in row.iter().enumerate() {
                    out[i][k] = pi.map_root(&f4, rs, f4_rep(&f4, e)).expect("image of a long root is a root");
                }
            }
            out
        }
        _ => {
            return Err(Error::WrongSystem { expected: "F4, or E6 with complex roots".into(), got: t.to_string() })
        }
    };
    let blocks = reps.map(|row| {
        let mut b: Vec<RootIndex> = row.iter().flat_map(|&r| [r, rs.neg(r)]).collect();
        b.sort();
        b
    });
    Ok(SinDecomposition { blocks, reps })
}
