//! Cartan involutions `θ = φ ∘ ψ_s` where `φ` lifts a diagram automorphism
//! (`X_{±α_i} ↦ X_{±τα_i}`) and `ψ_s` multiplies `X_α` by the sign character
//! `s(α)`. On root vectors `θX_α = σ_α X_{θα}` with `σ_α = ε_α s(α)`.

use serde::{Deserialize, Serialize};

use crate::chevalley::{AlgebraElement, StructureTable};
use crate::error::{Error, Result};
use crate::exact::collect_terms;
use crate::report::PropertyReport;
use crate::rootsystem::{Family, RootIndex, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealFormSpec {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootClass {
    CompactImaginary,
    NoncompactImaginary,
    Complex,
}

impl RootClass {
    pub fn is_imaginary(self) -> bool {
        self != RootClass::Complex
    }
}

#[derive(Clone, Debug)]
pub struct CartanInvolution {
    spec: RealFormSpec,
    theta_root: Vec<RootIndex>,
    sigma: Vec<i8>,
    cartan_action: Vec<Vec<i64>>,
    basis_signs: Vec<i8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionJson {
    pub spec: RealFormSpec,
    pub theta: Vec<usize>,
    pub sigma: Vec<i8>,
    pub classes: Vec<RootClass>,
}

impl RealFormSpec {
    pub fn compact(rank: usize) -> Self {
        RealFormSpec { perm: (0..rank).collect(), signs: vec![1; rank], preset: Some("compact".into()) }
    }

    pub fn painted(rank: usize, node: usize) -> Result<Self> {
        if node >= rank {
            return Err(Error::InvalidSpec(format!("painted node {node} out of range for rank {rank}")));
        }
        let mut signs = vec![1; rank];
        signs[node] = -1;
        Ok(RealFormSpec { perm: (0..rank).collect(), signs, preset: Some(format!("painted:{node}")) })
    }

    pub fn is_identity_perm(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    fn check_shape(&self, rs: &RootSystem) -> Result<()> {
        let r = rs.rank();
        if self.perm.len() != r || self.signs.len() != r {
            return Err(Error::InvalidSpec(format!(
                "expected {r} permutation entries and signs, got {} and {}",
                self.perm.len(),
                self.signs.len()
            )));
        }
        let mut seen = vec![false; r];
        for &p in &self.perm {
            if p >= r || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidSpec(format!("{:?} is not a permutation", self.perm)));
            }
        }
        if self.signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidSpec(format!("signs must be ±1, got {:?}", self.signs)));
        }
        let a = rs.cartan_matrix();
        for i in 0..r {
            for j in 0..r {
                if a[self.perm[i]][self.perm[j]] != a[i][j] {
                    return Err(Error::InvalidSpec(format!(
                        "{:?} is not an automorphism of the Cartan matrix",
                        self.perm
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Image of every root under the linear extension of `α_i ↦ α_{perm[i]}`.
fn permute_roots(rs: &RootSystem, perm: &[usize]) -> Result<Vec<RootIndex>> {
    rs.roots()
        .map(|r| {
            let m = rs.simple_coords(r);
            let mut out = vec![0; m.len()];
            for (i, &c) in m.iter().enumerate() {
                out[perm[i]] = c;
            }
            rs.from_simple_coords(&out)
                .ok_or_else(|| Error::InvalidSpec(format!("permutation {perm:?} does not map root {r} to a root")))
        })
        .collect()
}

/// Signs `ε_α` of the lift `X_{±α_i} ↦ X_{±τα_i}`, computed by height.
fn lift_signs(table: &StructureTable, tau: &[RootIndex]) -> Vec<i8> {
    let rs = table.root_system();
    let mut eps = vec![0i8; rs.len()];
    let mut pos: Vec<RootIndex> = rs.positive_roots().collect();
    pos.sort_by_key(|&r| (rs.height(r), r));
    for &s in rs.simple_roots() {
        eps[s.idx()] = 1;
        eps[rs.neg(s).idx()] = 1;
    }
    for &xi in pos.iter().filter(|&&r| rs.height(r) >= 2) {
        let (ai, a) = rs
            .simple_roots()
            .iter()
            .find_map(|&ai| rs.sub(xi, ai).filter(|&a| rs.is_positive(a)).map(|a| (ai, a)))
            .expect("every non-simple positive root has a simple summand");
        // [X_{α_i}, X_α] = c X_ξ and φ of it is ε_α c_{τα_i, τα} X_{τξ}
        let num = table.c(tau[ai.idx()], tau[a.idx()]).expect("τ preserves root sums");
        let den = table.c(ai, a).expect("ξ = α_i + α");
        assert!(num == den || num == -den, "lift ratio {num}/{den} is not a sign");
        let e = eps[a.idx()] * if num == den { 1 } else { -1 };
        eps[xi.idx()] = e;
        eps[rs.neg(xi).idx()] = e;
    }
    eps
}

/// Multiplicative extension of the sign character over the root lattice.
fn character(rs: &RootSystem, signs: &[i8], r: RootIndex) -> i8 {
    let odd = rs
        .simple_coords(r)
        .iter()
        .zip(signs)
        .filter(|&(&m, &s)| s == -1 && m.rem_euclid(2) == 1)
        .count();
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A Chevalley basis adapted to θ together with θ itself.
#[derive(Clone, Debug)]
pub struct RealForm {
    pub table: StructureTable,
    pub inv: CartanInvolution,
}

impl RealForm {
    pub fn root_system(&self) -> &RootSystem {
        self.table.root_system()
    }
}

impl CartanInvolution {
    /// Builds θ without validating it. The returned table is `table`
    /// re-signed on complex θ-orbits so that `σ_α = 1` for complex `α`.
    fn assemble(table: &StructureTable, spec: &RealFormSpec) -> Result<RealForm> {
        let rs = table.root_system();
        spec.check_shape(rs)?;
        let theta_root = permute_roots(rs, &spec.perm)?;
        let eps = lift_signs(table, &theta_root);
        let raw: Vec<i8> = rs.roots().map(|r| eps[r.idx()] * character(rs, &spec.signs, r)).collect();

        // In the basis η_α X_α the sign becomes η_α η_{θα} σ_α.
        let mut eta = vec![1i8; rs.len()];
        for a in rs.roots() {
            let ta = theta_root[a.idx()];
            let orbit = [a, ta, rs.neg(a), rs.neg(ta)];
            if ta != a && orbit.iter().all(|&x| a <= x) {
                eta[ta.idx()] = raw[a.idx()];
                eta[rs.neg(ta).idx()] = raw[a.idx()];
            }
        }
        let sigma = rs
            .roots()
            .map(|r| eta[r.idx()] * eta[theta_root[r.idx()].idx()] * raw[r.idx()])
            .collect();
        let table = if eta.iter().all(|&e| e == 1) { table.clone() } else { table.resigned(&eta) };

        let r = rs.rank();
        let cartan_action = (0..r).map(|i| (0..r).map(|j| i64::from(spec.perm[j] == i)).collect()).collect();
        let inv = CartanInvolution { spec: spec.clone(), theta_root, sigma, cartan_action, basis_signs: eta };
        Ok(RealForm { table, inv })
    }

    /// Signs `η_α` relating the adapted basis to the original Chevalley basis.
    pub fn basis_signs(&self) -> &[i8] {
        &self.basis_signs
    }

    pub fn spec(&self) -> &RealFormSpec {
        &self.spec
    }

    pub fn theta_root(&self, r: RootIndex) -> RootIndex {
        self.theta_root[r.idx()]
    }

    pub fn sigma(&self, r: RootIndex) -> i8 {
        self.sigma[r.idx()]
    }

    /// Matrix of θ on coroot coordinates: column `j` is the image of `H_j`.
    pub fn cartan_matrix_action(&self) -> &[Vec<i64>] {
        &self.cartan_action
    }

    pub fn classify_root(&self, r: RootIndex) -> RootClass {
        if self.theta_root(r) != r {
            RootClass::Complex
        } else if self.sigma(r) == 1 {
            RootClass::CompactImaginary
        } else {
            RootClass::NoncompactImaginary
        }
    }

    pub fn is_imaginary(&self, r: RootIndex) -> bool {
        self.theta_root(r) == r
    }

    pub fn has_complex_roots(&self) -> bool {
        self.theta_root.iter().enumerate().any(|(i, t)| t.idx() != i)
    }

    pub fn to_json(&self, rs: &RootSystem) -> InvolutionJson {
        InvolutionJson {
            spec: self.spec.clone(),
            theta: self.theta_root.iter().map(|r| r.idx()).collect(),
            sigma: self.sigma.clone(),
            classes: rs.roots().map(|r| self.classify_root(r)).collect(),
        }
    }

    /// Linear extension of `X_α ↦ σ_α X_{θα}`, `H_i ↦ H_{τ(i)}`.
    pub fn theta_element(&self, table: &StructureTable, x: &AlgebraElement) -> AlgebraElement {
        let terms = x
            .entries()
            .iter()
            .map(|(i, c)| match table.root_of_index(*i) {
                None => (self.spec.perm[*i], c.clone()),
                Some(r) => (table.x_index(self.theta_root(r)), c.scale_int(self.sigma(r) as i64)),
            })
            .collect();
        collect_terms(table.dim(), terms)
    }

    /// θ on a basis vector as integer terms.
    fn theta_basis(&self, table: &StructureTable, i: usize) -> (usize, i64) {
        match table.root_of_index(i) {
            None => (self.spec.perm[i], 1),
            Some(r) => (table.x_index(self.theta_root(r)), self.sigma(r) as i64),
        }
    }
}

fn allows_complex_roots(rs: &RootSystem) -> bool {
    let t = rs.cartan_type();
    match t.family {
        Family::A => t.rank % 2 == 1,
        Family::D => true,
        Family::E => t.rank == 6,
        _ => false,
    }
}

/// Exhaustive checks that θ is a maximally compact Cartan involution of the
/// expected shape.
pub fn validate_involution(inv: &CartanInvolution, table: &StructureTable) -> PropertyReport {
    let rs = table.root_system();
    let mut rep = PropertyReport::new("involution");
    for a in rs.roots() {
        let ta = inv.theta_root(a);
        rep.check(inv.theta_root(ta) == a, || format!("theta^2 moves root {a}"));
        rep.check(inv.theta_root(rs.neg(a)) == rs.neg(ta), || format!("theta does not commute with negation at {a}"));
        rep.check(ta != rs.neg(a), || format!("real root {a}"));
        let s = inv.sigma(a);
        rep.check(s == inv.sigma(rs.neg(a)) && s == inv.sigma(ta), || format!("sigma not constant on the orbit of {a}"));
        if ta != a {
            rep.check(s == 1, || format!("complex root {a} has sigma = -1"));
            let strongly = rs.inner_product(a, ta).is_zero() && rs.add(a, ta).is_none() && rs.sub(a, ta).is_none();
            rep.check(strongly, || format!("root {a} and its image {ta} are not strongly orthogonal"));
            rep.check(allows_complex_roots(rs), || format!("complex root {a} in type {}", rs.cartan_type()));
        }
        for b in rs.roots() {
            let Some(ab) = rs.add(a, b) else { continue };
            let lhs = table.c(ta, inv.theta_root(b));
            let rhs = (inv.sigma(a) * inv.sigma(b) * inv.sigma(ab)) as i64 * table.c_or_zero(a, b);
            rep.check(lhs == Some(rhs), || format!("c(theta {a}, theta {b}) = {lhs:?}, expected {rhs}"));
        }
    }
    // θ[e_i, e_j] = [θe_i, θe_j] on every basis pair
    let dim = table.dim();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..dim {
        let (ti, si) = inv.theta_basis(table, i);
        for j in 0..dim {
            let (tj, sj) = inv.theta_basis(table, j);
            lhs.clear();
            rhs.clear();
            table.basis_bracket(i, j, &mut lhs);
            let mut img: Vec<(usize, i64)> = lhs
                .iter()
                .map(|&(k, m)| {
                    let (tk, sk) = inv.theta_basis(table, k);
                    (tk, m * sk)
                })
                .collect();
            table.basis_bracket(ti, tj, &mut rhs);
            let mut rhs2: Vec<(usize, i64)> = rhs.iter().map(|&(k, m)| (k, m * si * sj)).collect();
            img.sort_unstable();
            rhs2.sort_unstable();
            rep.check(img == rhs2, || format!("theta is not an automorphism on basis pair ({i}, {j})"));
        }
    }
    rep
}

/// Builds and validates θ; any failed invariant rejects the spec.
pub fn build_involution(table: &StructureTable, spec: &RealFormSpec) -> Result<RealForm> {
    let form = CartanInvolution::assemble(table, spec)?;
    let rep = validate_involution(&form.inv, &form.table);
    if let Some(w) = rep.failures.first() {
        return Err(Error::InvolutionRejected {
            reason: format!("{} of {} invariant checks failed", rep.failure_count, rep.cases),
            witness: w.clone(),
        });
    }
    Ok(form)
}

/// Diagram permutation induced by the ambient involution used for the
/// quasi-split presets: `e_i ↦ −e_{m+2−i}` on `A_m` (1-based), negation of the
/// last coordinate on `D_n`, and the swap of the last two coordinate blocks on
/// the 9-dimensional `E6` realization.
pub fn quasi_split_permutation(rs: &RootSystem) -> Result<Vec<usize>> {
    let t = rs.cartan_type();
    let amb = rs.ambient_dim();
    let image = |v: &[i64]| -> Vec<i64> {
        match t.family {
            Family::A => (0..amb).map(|i| -v[amb - 1 - i]).collect(),
            Family::D => {
                let mut w = v.to_vec();
                w[amb - 1] *= -1;
                w
            }
            _ => {
                let mut w = v.to_vec();
                for k in 0..3 {
                    w.swap(3 + k, 6 + k);
                }
                w
            }
        }
    };
    let ok = match t.family {
        Family::A => t.rank % 2 == 1 && t.rank >= 3,
        Family::D => true,
        Family::E => t.rank == 6,
        _ => false,
    };
    if !ok {
        return Err(Error::InvalidSpec(format!("no quasi-split preset with complex roots for {t}")));
    }
    let simple = rs.simple_roots();
    simple
        .iter()
        .map(|&s| {
            let img = rs.lookup_scaled(&image(rs.scaled_coords(s))).expect("ambient involution preserves the roots");
            simple
                .iter()
                .position(|&x| x == img)
                .ok_or_else(|| Error::InvalidSpec(format!("ambient involution does not fix the base of {t}")))
        })
        .collect()
}

/// Every sign character (in lexicographic order, `+1` before `−1`) for which
/// the permutation gives a valid involution.
pub fn valid_characters(table: &StructureTable, perm: &[usize]) -> Vec<Vec<i8>> {
    let r = table.rank();
    (0u32..1 << r)
        .filter_map(|mask| {
            let signs: Vec<i8> = (0..r).map(|i| if mask >> (r - 1 - i) & 1 == 1 { -1 } else { 1 }).collect();
            let spec = RealFormSpec { perm: perm.to_vec(), signs: signs.clone(), preset: None };
            let form = CartanInvolution::assemble(table, &spec).ok()?;
            validate_involution(&form.inv, &form.table).passed().then_some(signs)
        })
        .collect()
}

/// Resolves a preset name: `compact`, `painted`, `painted:K` or `quasi-split`.
pub fn preset(table: &StructureTable, name: &str) -> Result<RealFormSpec> {
    let rs = table.root_system();
    let r = rs.rank();
    match name {
        "compact" => Ok(RealFormSpec::compact(r)),
        "painted" => RealFormSpec::painted(r, 0),
        "quasi-split" => {
            let perm = quasi_split_permutation(rs)?;
            let signs = valid_characters(table, &perm).into_iter().next().ok_or_else(|| Error::InvolutionRejected {
                reason: "no sign character satisfies the involution invariants".into(),
                witness: format!("permutation {perm:?}"),
            })?;
            Ok(RealFormSpec { perm, signs, preset: Some("quasi-split".into()) })
        }
        _ => match name.strip_prefix("painted:") {
            Some(k) => {
                let node = k.parse().map_err(|_| Error::InvalidSpec(format!("bad painted node '{k}'")))?;
                RealFormSpec::painted(r, node)
            }
            None => Err(Error::InvalidSpec(format!("unknown preset '{name}'"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{GaussianRational, Rational, SparseVector};

    fn setup(label: &str) -> StructureTable {
        StructureTable::build(RootSystem::from_label(label, None).unwrap())
    }

    fn root(t: &StructureTable, v: &[i64]) -> RootIndex {
        t.root_system().lookup(&v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>()).unwrap()
    }

    fn counts(t: &StructureTable, inv: &CartanInvolution) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for r in t.root_system().roots() {
            match inv.classify_root(r) {
                RootClass::CompactImaginary => c.0 += 1,
                RootClass::NoncompactImaginary => c.1 += 1,
                RootClass::Complex => c.2 += 1,
            }
        }
        c
    }

    #[test]
    fn compact_everywhere() {
        for l in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let t = setup(l);
            let RealForm { table: t, inv } = build_involution(&t, &preset(&t, "compact").unwrap()).unwrap();
            assert_eq!(counts(&t, &inv), (t.root_system().len(), 0, 0), "{l}");
            let x = t.x(RootIndex::new(0));
            assert_eq!(inv.theta_element(&t, &x), x);
        }
    }

    #[test]
    fn a2_one_painted() {
        let t = setup("A2");
        let spec = RealFormSpec { perm: vec![0, 1], signs: vec![-1, 1], preset: None };
        let RealForm { table: t, inv } = build_involution(&t, &spec).unwrap();
        let rs = t.root_system();
        let s = rs.simple_roots();
        let sum = rs.add(s[0], s[1]).unwrap();
        let nonc: Vec<RootIndex> = rs.roots().filter(|&r| inv.sigma(r) == -1).collect();
        let mut want = vec![s[0], rs.neg(s[0]), sum, rs.neg(sum)];
        want.sort();
        assert_eq!(nonc, want);
    }

    #[test]
    fn quasi_split_counts() {
        for (l, comp, imag) in [("A5", 24, 6), ("D5", 16, 24), ("E6", 48, 24), ("A3", 8, 4), ("D4", 12, 12)] {
            let t = setup(l);
            let RealForm { table: t, inv } = build_involution(&t, &preset(&t, "quasi-split").unwrap()).unwrap();
            let (c, n, x) = counts(&t, &inv);
            assert_eq!((x, c + n), (comp, imag), "{l}");
        }
    }

    #[test]
    fn a5_quasi_split_classes() {
        let t = setup("A5");
        let RealForm { table: t, inv } = build_involution(&t, &preset(&t, "quasi-split").unwrap()).unwrap();
        assert!(inv.classify_root(root(&t, &[1, 0, 0, 0, 0, -1])).is_imaginary());
        assert_eq!(inv.classify_root(root(&t, &[1, -1, 0, 0, 0, 0])), RootClass::Complex);
        // θ(e_i − e_j) = e_{7−j} − e_{7−i}
        assert_eq!(inv.theta_root(root(&t, &[1, -1, 0, 0, 0, 0])), root(&t, &[0, 0, 0, 0, 1, -1]));
    }

    #[test]
    fn d5_complex_roots_touch_last_coordinate() {
        let t = setup("D5");
        let RealForm { table: t, inv } = build_involution(&t, &preset(&t, "quasi-split").unwrap()).unwrap();
        let rs = t.root_system();
        for r in rs.roots() {
            assert_eq!(inv.classify_root(r) == RootClass::Complex, rs.scaled_coords(r)[4] != 0);
        }
    }

    #[test]
    fn theta_is_involutive_automorphism_on_elements() {
        let t = setup("A3");
        let RealForm { table: t, inv } = build_involution(&t, &preset(&t, "quasi-split").unwrap()).unwrap();
        let x = SparseVector::from_entries(
            t.dim(),
            [(0, GaussianRational::from_int(2)), (5, GaussianRational::I), (9, GaussianRational::from_int(-3))],
        )
        .unwrap();
        let y = SparseVector::from_entries(t.dim(), [(1, GaussianRational::ONE), (4, GaussianRational::from_int(7))])
            .unwrap();
        assert_eq!(inv.theta_element(&t, &inv.theta_element(&t, &x)), x);
        let lhs = inv.theta_element(&t, &t.bracket(&x, &y));
        let rhs = t.bracket(&inv.theta_element(&t, &x), &inv.theta_element(&t, &y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejections() {
        let t = setup("B3");
        assert!(preset(&t, "quasi-split").is_err());
        assert!(preset(&t, "painted:7").is_err());
        assert!(preset(&t, "nope").is_err());
        let bad = RealFormSpec { perm: vec![1, 0, 2], signs: vec![1, 1, 1], preset: None };
        assert!(matches!(build_involution(&t, &bad), Err(Error::InvalidSpec(_))));
        // flip of A4 has complex roots that are not strongly orthogonal
        let a4 = setup("A4");
        let flip = RealFormSpec { perm: vec![3, 2, 1, 0], signs: vec![1; 4], preset: None };
        assert!(matches!(build_involution(&a4, &flip), Err(Error::InvolutionRejected { .. })));
        assert!(valid_characters(&a4, &flip.perm).is_empty());
    }

    #[test]
    fn json_round_trip() {
        let spec = RealFormSpec::compact(3);
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"perm":[0,1,2],"signs":[1,1,1],"preset":"compact"}"#);
        assert_eq!(serde_json::from_str::<RealFormSpec>(&s).unwrap(), spec);
    }
}
