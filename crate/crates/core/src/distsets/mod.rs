//! Candidate generating sets and the root combinatorics behind them.

mod combinatorics;
mod isometry;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::chevalley::{AlgebraElement, StructureTable};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, SparseVector};
use crate::involution::RealForm;
use crate::rootsystem::{Family, RootIndex, RootSystem};

pub use combinatorics::{
    find_matched_pairs, find_singles, iop_witness, iops, p_set, q_set, r_class, sin_decomposition, xi, Iop,
    MatchedPair, SinDecomposition, SumSet,
};
pub use isometry::{Isometry, IsometryPair};

/// Provenance of a set element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Hdiff(RootIndex),
    IHsum(RootIndex),
    Y(RootIndex),
    Z(RootIndex),
    PsiY { x: RootIndex, y: RootIndex, sign: i8 },
    PsiZ { x: RootIndex, y: RootIndex, sign: i8 },
    SigmaY { block: u8, signs: [i8; 3] },
    SigmaZ { block: u8, signs: [i8; 3] },
    Bracket(Box<Label>, Box<Label>),
    Fixture(String),
}

fn sign_char(s: i8) -> char {
    if s < 0 {
        '-'
    } else {
        '+'
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Hdiff(a) => write!(f, "Hdiff({a})"),
            Label::IHsum(a) => write!(f, "iHsum({a})"),
            Label::Y(a) => write!(f, "Y({a})"),
            Label::Z(a) => write!(f, "Z({a})"),
            Label::PsiY { x, y, sign } => write!(f, "PsiY({x},{y},{})", sign_char(*sign)),
            Label::PsiZ { x, y, sign } => write!(f, "PsiZ({x},{y},{})", sign_char(*sign)),
            Label::SigmaY { block, signs } => {
                write!(f, "SigmaY({block},{}{}{})", sign_char(signs[0]), sign_char(signs[1]), sign_char(signs[2]))
            }
            Label::SigmaZ { block, signs } => {
                write!(f, "SigmaZ({block},{}{}{})", sign_char(signs[0]), sign_char(signs[1]), sign_char(signs[2]))
            }
            Label::Bracket(a, b) => write!(f, "[{a}, {b}]"),
            Label::Fixture(s) => f.write_str(s),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledElement {
    pub label: Label,
    pub element: AlgebraElement,
}

impl LabeledElement {
    pub fn new(label: Label, element: AlgebraElement) -> Self {
        LabeledElement { label, element }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Stage {
    S0,
    S1,
    S2,
    S3,
    #[serde(rename = "Sstar")]
    SStar,
    #[serde(rename = "custom")]
    Custom,
}

impl Stage {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s0" => Ok(Stage::S0),
            "s1" => Ok(Stage::S1),
            "s2" => Ok(Stage::S2),
            "s3" => Ok(Stage::S3),
            "sstar" | "s*" => Ok(Stage::SStar),
            _ => Err(Error::InvalidSpec(format!("unknown stage '{s}'"))),
        }
    }

    /// Bracket depth for `S0..S3`.
    pub fn depth(self) -> Option<usize> {
        match self {
            Stage::S0 => Some(0),
            Stage::S1 => Some(1),
            Stage::S2 => Some(2),
            Stage::S3 => Some(3),
            _ => None,
        }
    }

    fn from_depth(k: usize) -> Self {
        match k {
            0 => Stage::S0,
            1 => Stage::S1,
            2 => Stage::S2,
            3 => Stage::S3,
            _ => Stage::Custom,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::S0 => "S0",
            Stage::S1 => "S1",
            Stage::S2 => "S2",
            Stage::S3 => "S3",
            Stage::SStar => "Sstar",
            Stage::Custom => "custom",
        })
    }
}

/// A finite set of nonzero elements, no two of which differ by a nonzero
/// real scalar. Insertion order is kept and the first representative wins.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateSet {
    stage: Stage,
    elements: Vec<LabeledElement>,
    #[serde(skip)]
    keys: HashMap<SparseVector, usize>,
}

impl CandidateSet {
    pub fn new(stage: Stage) -> Self {
        CandidateSet { stage, elements: Vec::new(), keys: HashMap::new() }
    }

    pub fn from_elements(stage: Stage, items: impl IntoIterator<Item = LabeledElement>) -> Self {
        let mut s = Self::new(stage);
        s.extend(items);
        s
    }

    /// Adds `item` unless it is zero or a real multiple of a member.
    pub fn insert(&mut self, item: LabeledElement) -> bool {
        let Some(key) = item.element.real_projective_key() else {
            return false;
        };
        if self.keys.contains_key(&key) {
            return false;
        }
        self.keys.insert(key, self.elements.len());
        self.elements.push(item);
        true
    }

    pub fn extend(&mut self, items: impl IntoIterator<Item = LabeledElement>) {
        for it in items {
            self.insert(it);
        }
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn with_stage(mut self, stage: Stage) -> Self {
        self.stage = stage;
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LabeledElement] {
        &self.elements
    }

    pub fn vectors(&self) -> impl Iterator<Item = &AlgebraElement> {
        self.elements.iter().map(|e| &e.element)
    }

    /// Index of the member that is a real multiple of `v`.
    pub fn position(&self, v: &AlgebraElement) -> Option<usize> {
        v.real_projective_key().and_then(|k| self.keys.get(&k).copied())
    }

    pub fn contains(&self, v: &AlgebraElement) -> bool {
        self.position(v).is_some()
    }

    /// `self ⊑ other`: every member is a real multiple of a member of `other`.
    pub fn is_refined_by(&self, other: &CandidateSet) -> bool {
        self.keys.keys().all(|k| other.keys.contains_key(k))
    }

    /// Projective equality.
    pub fn equivalent(&self, other: &CandidateSet) -> bool {
        self.len() == other.len() && self.is_refined_by(other)
    }

    /// Members of `self` with no real multiple in `other`.
    pub fn difference<'a>(&'a self, other: &'a CandidateSet) -> impl Iterator<Item = &'a LabeledElement> + 'a {
        self.elements.iter().filter(move |e| !other.contains(&e.element))
    }

    pub fn union(&self, other: &CandidateSet) -> CandidateSet {
        let mut s = self.clone().with_stage(Stage::Custom);
        s.extend(other.elements.iter().cloned());
        s
    }
}

/// `Y_α = X_α − θX_{−α} = X_α − σ_α X_{−θα}`.
pub fn y_elem(rf: &RealForm, a: RootIndex) -> AlgebraElement {
    let (t, rs) = (&rf.table, rf.root_system());
    let s = rf.inv.sigma(a);
    let nta = rs.neg(rf.inv.theta_root(a));
    SparseVector::combine(&GaussianRational::ONE, &t.x(a), &GaussianRational::from_int(-i64::from(s)), &t.x(nta))
        .expect("same dimension")
}

/// `Z_α = i(X_α + θX_{−α}) = i(X_α + σ_α X_{−θα})`.
pub fn z_elem(rf: &RealForm, a: RootIndex) -> AlgebraElement {
    let (t, rs) = (&rf.table, rf.root_system());
    let s = rf.inv.sigma(a);
    let nta = rs.neg(rf.inv.theta_root(a));
    SparseVector::combine(&GaussianRational::I, &t.x(a), &GaussianRational::I.scale_int(i64::from(s)), &t.x(nta))
        .expect("same dimension")
}

/// `H_α − H_{θα}`.
pub fn h_diff(rf: &RealForm, a: RootIndex) -> AlgebraElement {
    let t = &rf.table;
    t.coroot_element(a).sub(&t.coroot_element(rf.inv.theta_root(a)))
}

/// `i(H_α + H_{θα})`.
pub fn ih_sum(rf: &RealForm, a: RootIndex) -> AlgebraElement {
    let t = &rf.table;
    t.coroot_element(a).add(&t.coroot_element(rf.inv.theta_root(a))).mul_i()
}

/// `Φ_α` with zero elements dropped.
pub fn phi_set(rf: &RealForm, a: RootIndex) -> Vec<LabeledElement> {
    [
        LabeledElement::new(Label::Hdiff(a), h_diff(rf, a)),
        LabeledElement::new(Label::IHsum(a), ih_sum(rf, a)),
        LabeledElement::new(Label::Y(a), y_elem(rf, a)),
        LabeledElement::new(Label::Z(a), z_elem(rf, a)),
    ]
    .into_iter()
    .filter(|e| !e.element.is_zero())
    .collect()
}

/// `S_0 = ⋃ Φ_α` over all roots in index order.
pub fn s0(rf: &RealForm) -> CandidateSet {
    CandidateSet::from_elements(Stage::S0, rf.root_system().roots().flat_map(|a| phi_set(rf, a)))
}

/// Elementwise bracket `[S, S']`, deduplicated in row-major pair order.
pub fn bracket_set_product(table: &StructureTable, s: &CandidateSet, t: &CandidateSet) -> CandidateSet {
    let rows: Vec<Vec<LabeledElement>> = s
        .elements
        .par_iter()
        .map(|a| {
            t.elements
                .iter()
                .filter_map(|b| {
                    let v = table.bracket(&a.element, &b.element);
                    (!v.is_zero())
                        .then(|| LabeledElement::new(Label::Bracket(Box::new(a.label.clone()), Box::new(b.label.clone())), v))
                })
                .collect()
        })
        .collect();
    CandidateSet::from_elements(Stage::Custom, rows.into_iter().flatten())
}

/// `S_0, …, S_depth`.
pub fn build_stages(rf: &RealForm, depth: usize) -> Vec<CandidateSet> {
    let mut out = vec![s0(rf)];
    for k in 1..=depth {
        let prev = &out[k - 1];
        let next = bracket_set_product(&rf.table, prev, prev).with_stage(Stage::from_depth(k));
        out.push(next);
    }
    out
}

/// A named stage; `SStar` is only defined for G2.
pub fn build_stage(rf: &RealForm, stage: Stage) -> Result<CandidateSet> {
    match stage {
        Stage::SStar => s_star(rf),
        Stage::Custom => Err(Error::InvalidSpec("a custom set has no construction".into())),
        s => {
            let k = s.depth().expect("numbered stage");
            Ok(build_stages(rf, k).pop().expect("at least S0"))
        }
    }
}

/// The stage at which the generating set becomes distinguished.
pub fn auto_stage(rf: &RealForm) -> Stage {
    let t = rf.root_system().cartan_type();
    let complex = rf.inv.has_complex_roots();
    match (t.family, complex) {
        (Family::G, _) => Stage::SStar,
        (Family::F, _) | (Family::E, true) => Stage::S2,
        (Family::B | Family::C, _) | (Family::A | Family::D, true) => Stage::S1,
        _ => Stage::S0,
    }
}

/// `Ψ_{x,y} = {Y_x ± Y_y, Z_x ± Z_y}`.
pub fn psi_set(rf: &RealForm, x: RootIndex, y: RootIndex) -> Result<Vec<LabeledElement>> {
    if iop_witness(rf, x, y).is_none() {
        return Err(Error::NotAnIop(x.idx(), y.idx()));
    }
    Ok(psi_unchecked(rf, x, y))
}

fn psi_unchecked(rf: &RealForm, x: RootIndex, y: RootIndex) -> Vec<LabeledElement> {
    let (yx, yy, zx, zy) = (y_elem(rf, x), y_elem(rf, y), z_elem(rf, x), z_elem(rf, y));
    let mut out = Vec::with_capacity(4);
    for sign in [1i8, -1] {
        out.push(LabeledElement::new(Label::PsiY { x, y, sign }, signed_sum(&yx, &[(&yy, sign)])));
    }
    for sign in [1i8, -1] {
        out.push(LabeledElement::new(Label::PsiZ { x, y, sign }, signed_sum(&zx, &[(&zy, sign)])));
    }
    out
}

fn signed_sum(head: &AlgebraElement, rest: &[(&AlgebraElement, i8)]) -> AlgebraElement {
    rest.iter().fold(head.clone(), |acc, (v, s)| if *s > 0 { acc.add(v) } else { acc.sub(v) })
}

/// `Σ_1, Σ_2, Σ_3` on the representatives `u_i, v_i, s_i, t_i`.
pub fn sigma_sets(rf: &RealForm) -> Result<[Vec<LabeledElement>; 3]> {
    let dec = sin_decomposition(rf)?;
    Ok(std::array::from_fn(|i| sigma_block(rf, i as u8 + 1, &dec.reps[i])))
}

/// The 16 sign combinations `Y_u ± Y_v ± Y_s ± Y_t` and `Z_u ± …` for one block.
pub fn sigma_block(rf: &RealForm, block: u8, reps: &[RootIndex; 4]) -> Vec<LabeledElement> {
    let ys: Vec<_> = reps.iter().map(|&r| y_elem(rf, r)).collect();
    let zs: Vec<_> = reps.iter().map(|&r| z_elem(rf, r)).collect();
    let mut out = Vec::with_capacity(16);
    for (vecs, is_y) in [(&ys, true), (&zs, false)] {
        for mask in 0u8..8 {
            let signs: [i8; 3] = std::array::from_fn(|k| if mask >> (2 - k) & 1 == 1 { -1 } else { 1 });
            let v = signed_sum(&vecs[0], &[(&vecs[1], signs[0]), (&vecs[2], signs[1]), (&vecs[3], signs[2])]);
            let label = if is_y { Label::SigmaY { block, signs } } else { Label::SigmaZ { block, signs } };
            out.push(LabeledElement::new(label, v));
        }
    }
    out
}

/// The pairs `x_i = e_j − e_k`, `y_i = e_j + e_k − 2e_i` of G2 for cyclic `(i, j, k)`.
pub fn g2_pairs(rs: &RootSystem) -> Result<[(RootIndex, RootIndex); 3]> {
    if rs.cartan_type().family != Family::G {
        return Err(Error::WrongSystem { expected: "G2".into(), got: rs.cartan_type().to_string() });
    }
    let mut out = [(RootIndex::new(0), RootIndex::new(0)); 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut x = [0i64; 3];
        x[j] = 1;
        x[k] = -1;
        let mut y = [1i64; 3];
        y[i] = -2;
        let x = rs.lookup_scaled(&x).expect("short G2 root");
        let y = rs.lookup_scaled(&y).expect("long G2 root");
        *slot = (x, y);
    }
    Ok(out)
}

/// `S* = ⋃_i (Φ_{y_i} ∪ Ψ_{y_i, x_i})` for G2.
pub fn s_star(rf: &RealForm) -> Result<CandidateSet> {
    let pairs = g2_pairs(rf.root_system())?;
    let mut s = CandidateSet::new(Stage::SStar);
    for (x, y) in pairs {
        s.extend(phi_set(rf, y));
        s.extend(psi_set(rf, y, x)?);
    }
    Ok(s)
}

/// Elements of `Ψ_{x,y}` without checking that `(x, y)` is an iop.
pub fn psi_elements(rf: &RealForm, x: RootIndex, y: RootIndex) -> Vec<LabeledElement> {
    psi_unchecked(rf, x, y)
}
