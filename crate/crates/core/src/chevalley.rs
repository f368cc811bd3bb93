//! Chevalley basis `{H_i, X_α}` with integer structure constants.
//!
//! Basis layout: indices `0..rank` are the simple coroots `H_{α_i}`, then
//! index `rank + r` is `X_r` for each root index `r`. Signs follow the
//! extraspecial-pair convention: positive roots are ordered by height, ties
//! broken by root index, and `c_{α,β} = q + 1` on every extraspecial pair.

use std::collections::HashMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{collect_terms, GaussianRational, Rational, SparseVector};
use crate::report::PropertyReport;
use crate::rootsystem::{RootIndex, RootSystem};

pub type AlgebraElement = SparseVector;

/// How many basis triples the Jacobi check visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
    /// Exhaustive up to 78-dimensional algebras, 10⁵ samples beyond.
    Auto { seed: u64 },
}

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CEntry {
    pub a: usize,
    pub b: usize,
    pub c: i64,
}

#[derive(Clone, Debug)]
pub struct StructureTable {
    rs: RootSystem,
    // c[a * n + b]; zero when a + b is not a root
    c: Vec<i64>,
    coroot: Vec<Vec<i64>>,
    // h_action[i * n + b] = cartan_integer(α_i, β_b)
    h_action: Vec<i64>,
}

fn exact_div(num: i64, den: i64) -> i64 {
    assert!(den != 0 && num % den == 0, "non-integral structure constant {num}/{den}");
    num / den
}

struct Builder<'a> {
    rs: &'a RootSystem,
    order: Vec<usize>,
    special: HashMap<(RootIndex, RootIndex), i64>,
}

impl Builder<'_> {
    fn n(&self, a: RootIndex, b: RootIndex) -> i64 {
        let rs = self.rs;
        let c = rs.add(a, b).expect("structure constant requested for a non-root sum");
        match (rs.is_positive(a), rs.is_positive(b)) {
            (true, true) => {
                if self.order[a.idx()] < self.order[b.idx()] {
                    self.special[&(a, b)]
                } else {
                    -self.special[&(b, a)]
                }
            }
            (false, false) => -self.n(rs.neg(a), rs.neg(b)),
            _ => {
                // a + b + (−c) = 0: rotate onto the same-sign pair
                let nc = rs.neg(c);
                let c2 = rs.norm2_scaled(c);
                let use_b_nc = rs.is_positive(b) == rs.is_positive(nc);
                if use_b_nc {
                    exact_div(c2 * self.n(b, nc), rs.norm2_scaled(a))
                } else {
                    exact_div(c2 * self.n(nc, a), rs.norm2_scaled(b))
                }
            }
        }
    }

    fn term(&self, s: RootIndex, t: RootIndex, u: RootIndex, v: RootIndex, via: Option<RootIndex>) -> Rational {
        match via {
            None => Rational::ZERO,
            Some(w) => Rational::new(self.n(s, t) * self.n(u, v), self.rs.norm2_scaled(w)).expect("nonzero"),
        }
    }
}

impl StructureTable {
    pub fn build(rs: RootSystem) -> Self {
        let n = rs.len();
        let mut pos: Vec<RootIndex> = rs.positive_roots().collect();
        pos.sort_by_key(|&r| (rs.height(r), r));
        let mut order = vec![usize::MAX; n];
        for (k, r) in pos.iter().enumerate() {
            order[r.idx()] = k;
        }
        let mut b = Builder { rs: &rs, order, special: HashMap::new() };

        for &xi in &pos {
            if rs.height(xi) < 2 {
                continue;
            }
            let mut pairs: Vec<(RootIndex, RootIndex)> = pos
                .iter()
                .filter_map(|&a| {
                    let c = rs.sub(xi, a)?;
                    (rs.is_positive(c) && b.order[a.idx()] < b.order[c.idx()]).then_some((a, c))
                })
                .collect();
            pairs.sort_by_key(|(a, _)| b.order[a.idx()]);
            let (a0, b0) = pairs[0];
            let (_, q) = rs.root_string(a0, b0).expect("non-proportional");
            let n0 = q as i64 + 1;
            b.special.insert((a0, b0), n0);
            for &(a, c) in &pairs[1..] {
                let na = rs.neg(a);
                let nc = rs.neg(c);
                let t1 = b.term(b0, na, a0, nc, rs.add(b0, na));
                let t2 = b.term(na, a0, b0, nc, rs.add(a0, na));
                let scale = Rational::new(rs.norm2_scaled(xi), n0).expect("nonzero");
                let val = (&scale * &(&t1 + &t2)).to_i64().expect("integral structure constant");
                b.special.insert((a, c), val);
            }
        }

        let mut c = vec![0i64; n * n];
        for x in 0..n {
            for y in 0..n {
                let (rx, ry) = (RootIndex::new(x), RootIndex::new(y));
                if rs.add(rx, ry).is_some() {
                    c[x * n + y] = b.n(rx, ry);
                }
            }
        }
        drop(b);

        let simple = rs.simple_roots().to_vec();
        let coroot = rs
            .roots()
            .map(|r| {
                rs.simple_coords(r)
                    .iter()
                    .zip(&simple)
                    .map(|(&m, &s)| exact_div(m * rs.norm2_scaled(s), rs.norm2_scaled(r)))
                    .collect()
            })
            .collect();
        let mut h_action = vec![0i64; simple.len() * n];
        for (i, &s) in simple.iter().enumerate() {
            for r in rs.roots() {
                h_action[i * n + r.idx()] = rs.cartan_integer(s, r);
            }
        }
        StructureTable { rs, c, coroot, h_action }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// `rank + |Δ|`.
    pub fn dim(&self) -> usize {
        self.rs.rank() + self.rs.len()
    }

    pub fn x_index(&self, r: RootIndex) -> usize {
        self.rank() + r.idx()
    }

    /// Inverse of [`Self::x_index`] for non-Cartan basis indices.
    pub fn root_of_index(&self, i: usize) -> Option<RootIndex> {
        (i >= self.rank() && i < self.dim()).then(|| RootIndex::new(i - self.rank()))
    }

    /// `c_{α,β}` when `α + β` is a root.
    pub fn c(&self, a: RootIndex, b: RootIndex) -> Option<i64> {
        self.rs.add(a, b).map(|_| self.c[a.idx() * self.rs.len() + b.idx()])
    }

    /// `c_{α,β}`, or 0 when `α + β` is not a root.
    pub fn c_or_zero(&self, a: RootIndex, b: RootIndex) -> i64 {
        self.c[a.idx() * self.rs.len() + b.idx()]
    }

    /// `H_α` in the simple-coroot basis.
    pub fn coroot_coords(&self, r: RootIndex) -> &[i64] {
        &self.coroot[r.idx()]
    }

    pub fn x(&self, r: RootIndex) -> AlgebraElement {
        SparseVector::unit(self.dim(), self.x_index(r))
    }

    pub fn h_simple(&self, i: usize) -> AlgebraElement {
        SparseVector::unit(self.dim(), i)
    }

    pub fn coroot_element(&self, r: RootIndex) -> AlgebraElement {
        collect_terms(
            self.dim(),
            self.coroot[r.idx()].iter().enumerate().map(|(i, &m)| (i, GaussianRational::from_int(m))).collect(),
        )
    }

    /// Bracket of two basis vectors as integer terms (unsorted, no zeros).
    pub fn basis_bracket(&self, i: usize, j: usize, out: &mut Vec<(usize, i64)>) {
        let r = self.rank();
        let n = self.rs.len();
        match (i < r, j < r) {
            (true, true) => {}
            (true, false) => {
                let k = self.h_action[i * n + (j - r)];
                if k != 0 {
                    out.push((j, k));
                }
            }
            (false, true) => {
                let k = self.h_action[j * n + (i - r)];
                if k != 0 {
                    out.push((i, -k));
                }
            }
            (false, false) => {
                let (a, b) = (RootIndex::new(i - r), RootIndex::new(j - r));
                if b == self.rs.neg(a) {
                    out.extend(self.coroot[a.idx()].iter().enumerate().filter(|(_, &m)| m != 0).map(|(k, &m)| (k, m)));
                } else if let Some(s) = self.rs.add(a, b) {
                    out.push((r + s.idx(), self.c[a.idx() * n + b.idx()]));
                }
            }
        }
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut terms = Vec::new();
        let mut buf = Vec::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                buf.clear();
                self.basis_bracket(*i, *j, &mut buf);
                if buf.is_empty() {
                    continue;
                }
                let ab = a * b;
                for &(k, m) in &buf {
                    terms.push((k, ab.scale_int(m)));
                }
            }
        }
        collect_terms(self.dim(), terms)
    }

    /// Integer bracket on integer sparse vectors, used by the axiom checks.
    fn bracket_int(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut terms = Vec::new();
        let mut buf = Vec::new();
        for &(i, a) in x {
            for &(j, b) in y {
                buf.clear();
                self.basis_bracket(i, j, &mut buf);
                terms.extend(buf.iter().map(|&(k, m)| (k, a * b * m)));
            }
        }
        normalize_int(terms)
    }

    /// Jacobi sum for three basis vectors.
    fn jacobi(&self, i: usize, j: usize, k: usize) -> Vec<(usize, i64)> {
        let e = |t: usize| [(t, 1i64)];
        let mut acc = self.bracket_int(&e(i), &self.bracket_int(&e(j), &e(k)));
        acc.extend(self.bracket_int(&e(j), &self.bracket_int(&e(k), &e(i))));
        acc.extend(self.bracket_int(&e(k), &self.bracket_int(&e(i), &e(j))));
        normalize_int(acc)
    }

    /// Copy with `c_{a,b}` negated together with its antisymmetric and
    /// negated partners; only the Jacobi identity can notice the change.
    pub fn with_flipped_sign(&self, a: RootIndex, b: RootIndex) -> Self {
        let mut t = self.clone();
        let n = self.rs.len();
        let (na, nb) = (self.rs.neg(a), self.rs.neg(b));
        for (x, y) in [(a, b), (b, a), (na, nb), (nb, na)] {
            t.c[x.idx() * n + y.idx()] *= -1;
        }
        t
    }

    /// Same algebra in the basis `X'_α = η_α X_α` (with `η_{−α} = η_α`), which
    /// is again a Chevalley basis: `c'_{α,β} = η_α η_β η_{α+β} c_{α,β}`.
    pub fn resigned(&self, eta: &[i8]) -> Self {
        let mut t = self.clone();
        let n = self.rs.len();
        for a in self.rs.roots() {
            for b in self.rs.roots() {
                if let Some(s) = self.rs.add(a, b) {
                    let f = (eta[a.idx()] * eta[b.idx()] * eta[s.idx()]) as i64;
                    t.c[a.idx() * n + b.idx()] *= f;
                }
            }
        }
        t
    }

    pub fn c_table_json(&self) -> Vec<CEntry> {
        let n = self.rs.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.rs.add(RootIndex::new(a), RootIndex::new(b)).is_some() {
                    out.push(CEntry { a, b, c: self.c[a * n + b] });
                }
            }
        }
        out
    }

    pub fn max_abs_c(&self) -> i64 {
        self.c.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

fn normalize_int(mut terms: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    terms.sort_by_key(|t| t.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
    for (k, m) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == k => *acc += m,
            _ => out.push((k, m)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

fn jacobi_triples(dim: usize, mode: JacobiMode) -> Option<Vec<(usize, usize, usize)>> {
    let (count, seed) = match mode {
        JacobiMode::Exhaustive => return None,
        JacobiMode::Auto { .. } if dim <= 78 => return None,
        JacobiMode::Auto { seed } => (100_000, seed),
        JacobiMode::Sampled { count, seed } => (count, seed),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Some((0..count).map(|_| (rng.random_range(0..dim), rng.random_range(0..dim), rng.random_range(0..dim))).collect())
}

/// Checks the Chevalley basis conventions, the Cartan action and the Jacobi identity.
pub fn verify_chevalley_axioms(table: &StructureTable, mode: JacobiMode) -> PropertyReport {
    let rs = table.root_system();
    let mut rep = PropertyReport::new(format!("chevalley axioms {}", rs.cartan_type()));
    for a in rs.roots() {
        for b in rs.roots() {
            let Some(c) = table.c(a, b) else { continue };
            let ba = table.c(b, a).unwrap_or(0);
            rep.check(c == -ba, || format!("c({a},{b}) = {c} but c({b},{a}) = {ba}"));
            let nn = table.c(rs.neg(a), rs.neg(b)).unwrap_or(0);
            rep.check(c == -nn, || format!("c({a},{b}) = {c} but c(-{a},-{b}) = {nn}"));
            let (_, q) = rs.root_string(a, b).expect("a + b a root, so not proportional");
            let q1 = q as i64 + 1;
            rep.check(c * c == q1 * q1, || format!("c({a},{b})^2 = {} but (q+1)^2 = {}", c * c, q1 * q1));
        }
        // H_α acts on every X_β by the Cartan integer
        let h = table.coroot_coords(a);
        for b in rs.roots() {
            let got: i64 =
                h.iter().enumerate().map(|(i, &m)| m * rs.cartan_integer(rs.simple_roots()[i], b)).sum();
            let want = rs.cartan_integer(a, b);
            rep.check(got == want, || format!("[H_{a}, X_{b}] = {got} X_{b}, expected {want}"));
        }
    }

    let dim = table.dim();
    let mut buf1 = Vec::new();
    let mut buf2 = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            buf1.clear();
            buf2.clear();
            table.basis_bracket(i, j, &mut buf1);
            table.basis_bracket(j, i, &mut buf2);
            let lhs = normalize_int(std::mem::take(&mut buf1));
            let rhs: Vec<(usize, i64)> = normalize_int(buf2.iter().map(|&(k, m)| (k, -m)).collect());
            rep.check(lhs == rhs, || format!("[e{i}, e{j}] != -[e{j}, e{i}]"));
        }
    }

    let failures: Vec<(u64, Vec<String>)> = match jacobi_triples(dim, mode) {
        None => (0..dim)
            .into_par_iter()
            .map(|i| {
                let mut cases = 0;
                let mut bad = Vec::new();
                for j in i + 1..dim {
                    for k in j + 1..dim {
                        cases += 1;
                        let s = table.jacobi(i, j, k);
                        if !s.is_empty() {
                            bad.push(format!("Jacobi fails on (e{i}, e{j}, e{k}): {s:?}"));
                        }
                    }
                }
                (cases, bad)
            })
            .collect(),
        Some(triples) => triples
            .par_chunks(4096)
            .map(|chunk| {
                let bad = chunk
                    .iter()
                    .filter_map(|&(i, j, k)| {
                        let s = table.jacobi(i, j, k);
                        (!s.is_empty()).then(|| format!("Jacobi fails on (e{i}, e{j}, e{k}): {s:?}"))
                    })
                    .collect();
                (chunk.len() as u64, bad)
            })
            .collect(),
    };
    for (cases, bad) in failures {
        rep.cases += cases;
        for w in bad {
            rep.fail(w);
        }
    }
    rep
}

/// For `α + β + γ = 0`: `c_{α,β}/|γ|² = c_{β,γ}/|α|² = c_{γ,α}/|β|²`.
pub fn check_three_root_identity(table: &StructureTable) -> PropertyReport {
    let rs = table.root_system();
    let mut rep = PropertyReport::new(format!("three-root identity {}", rs.cartan_type()));
    for a in rs.roots() {
        for b in rs.roots() {
            let Some(s) = rs.add(a, b) else { continue };
            let g = rs.neg(s);
            let n = |x: RootIndex| rs.norm2_scaled(x);
            let (cab, cbg, cga) = (table.c_or_zero(a, b), table.c_or_zero(b, g), table.c_or_zero(g, a));
            // cross-multiplied to stay in integers
            let ok = cab * n(a) == cbg * n(g) && cbg * n(b) == cga * n(a);
            rep.check(ok, || format!("roots ({a},{b},{g}): c = ({cab},{cbg},{cga})"));
        }
    }
    rep
}

/// For `s + t + u + v = 0` with no two summing to zero:
/// `c_{s,t}c_{u,v}/|s+t|² + c_{t,u}c_{s,v}/|t+u|² + c_{u,s}c_{t,v}/|u+s|² = 0`,
/// each term read as zero when its sum is not a root.
pub fn check_four_root_identity(table: &StructureTable, sample: Option<(usize, u64)>) -> PropertyReport {
    let rs = table.root_system();
    let mut rep = PropertyReport::new(format!("four-root identity {}", rs.cartan_type()));
    let n = rs.len();
    let quad = |s: usize, t: usize, u: usize| -> Option<[RootIndex; 4]> {
        let (s, t, u) = (RootIndex::new(s), RootIndex::new(t), RootIndex::new(u));
        let v: Vec<i64> = (0..rs.ambient_dim())
            .map(|k| -(rs.scaled_coords(s)[k] + rs.scaled_coords(t)[k] + rs.scaled_coords(u)[k]))
            .collect();
        let v = rs.lookup_scaled(&v)?;
        let all = [s, t, u, v];
        for x in 0..4 {
            for y in x + 1..4 {
                if all[x] == rs.neg(all[y]) {
                    return None;
                }
            }
        }
        Some(all)
    };
    let eval = |[s, t, u, v]: [RootIndex; 4], rep: &mut PropertyReport| {
        let term = |a: RootIndex, b: RootIndex, c: RootIndex, d: RootIndex| match rs.add(a, b) {
            Some(w) => Rational::new(table.c_or_zero(a, b) * table.c_or_zero(c, d), rs.norm2_scaled(w)).expect("nonzero"),
            None => Rational::ZERO,
        };
        let total = &(&term(s, t, u, v) + &term(t, u, s, v)) + &term(u, s, t, v);
        rep.check(total.is_zero(), || format!("quadruple ({s},{t},{u},{v}) sums to {total}"));
    };
    match sample {
        None => {
            for s in 0..n {
                for t in 0..n {
                    for u in 0..n {
                        if let Some(q) = quad(s, t, u) {
                            eval(q, &mut rep);
                        }
                    }
                }
            }
        }
        Some((count, seed)) => {
            // sample admissible quadruples: pick s, t, u until v is a root
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = 0;
            let mut attempts = 0usize;
            while found < count && attempts < count * 1000 {
                attempts += 1;
                let (s, t, u) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if let Some(q) = quad(s, t, u) {
                    found += 1;
                    eval(q, &mut rep);
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(label: &str, rank: Option<usize>) -> StructureTable {
        StructureTable::build(RootSystem::from_label(label, rank).unwrap())
    }

    fn root(t: &StructureTable, v: &[i64]) -> RootIndex {
        t.root_system().lookup(&v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn a2_simple_pair() {
        let t = table("A", Some(2));
        let s = t.root_system().simple_roots();
        assert_eq!(t.c(s[0], s[1]).unwrap().pow(2), 1);
    }

    #[test]
    fn g2_short_pair() {
        let t = table("G2", None);
        let (a, b) = (root(&t, &[1, -1, 0]), root(&t, &[0, 1, -1]));
        assert_eq!(t.c(a, b).unwrap().pow(2), 4);
        assert_eq!(t.max_abs_c(), 3);
    }

    #[test]
    fn x_minus_x_is_coroot() {
        let t = table("B", Some(3));
        let rs = t.root_system().clone();
        for a in rs.roots() {
            assert_eq!(t.bracket(&t.x(a), &t.x(rs.neg(a))), t.coroot_element(a));
            assert_eq!(t.coroot_element(rs.neg(a)), t.coroot_element(a).neg());
            let h = t.coroot_element(a);
            assert_eq!(t.bracket(&h, &t.x(a)), t.x(a).scale(&GaussianRational::from_int(2)));
        }
        for (i, &s) in rs.simple_roots().iter().enumerate() {
            assert_eq!(t.coroot_element(s), t.h_simple(i));
        }
    }

    #[test]
    fn non_root_sum_brackets_to_zero() {
        let t = table("B", Some(3));
        let (a, b) = (root(&t, &[1, 1, 0]), root(&t, &[1, -1, 0]));
        assert!(t.bracket(&t.x(a), &t.x(b)).is_zero());
    }

    #[test]
    fn axioms_small_types() {
        for (l, r) in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)] {
            let t = table(l, Some(r));
            let rep = verify_chevalley_axioms(&t, JacobiMode::Exhaustive);
            assert!(rep.passed(), "{}", rep.summary_line());
        }
    }

    #[test]
    fn flipped_sign_breaks_jacobi() {
        let t = table("A", Some(3));
        let s = t.root_system().simple_roots();
        let bad = t.with_flipped_sign(s[0], s[1]);
        let rep = verify_chevalley_axioms(&bad, JacobiMode::Exhaustive);
        assert!(!rep.passed());
        assert!(rep.failures.iter().all(|f| f.starts_with("Jacobi")), "{:?}", rep.failures);
    }

    #[test]
    fn three_and_four_root_identities() {
        for l in ["G2", "F4"] {
            let t = table(l, None);
            assert!(check_three_root_identity(&t).passed());
            let r = check_four_root_identity(&t, None);
            assert!(r.passed() && r.cases > 0, "{}", r.summary_line());
        }
    }

    #[test]
    fn ad_nilpotence() {
        for (l, steps) in [("D4", 4), ("G2", 6)] {
            let t = table(l, None);
            let rs = t.root_system();
            for a in rs.roots() {
                for b in rs.roots() {
                    if b == rs.neg(a) {
                        continue;
                    }
                    let mut v = t.x(b);
                    for _ in 0..steps {
                        v = t.bracket(&t.x(a), &v);
                    }
                    assert!(v.is_zero());
                }
            }
        }
    }
}
