use std::collections::BTreeSet;

use super::predicates::{expected_singles, iop_class_predicate, matched_pair_predicate, RClass};
use crate::chevalley::{
    check_four_root_identity, check_three_root_identity, verify_chevalley_axioms, AlgebraElement, JacobiMode,
    StructureTable,
};
use crate::distsets::{
    auto_stage, build_stages, find_matched_pairs, find_singles, g2_pairs, h_diff, ih_sum, iop_witness, iops, p_set,
    phi_set, psi_elements, q_set, r_class, sigma_sets, sin_decomposition, xi, y_elem, z_elem, CandidateSet, Iop,
    Isometry, Label, LabeledElement, MatchedPair, SinDecomposition, Stage,
};
use crate::error::{Error, Result};
use crate::exact::{real_rank_of_span, GaussianRational, Rational};
use crate::involution::{build_involution, preset, validate_involution, RealForm};
use crate::report::PropertyReport;
use crate::rootsystem::{CartanType, Family, RootIndex, RootSystem};

pub const SUITE_NAMES: &[&str] = &[
    "chevalley-axioms",
    "involution-consistency",
    "complex-root-strong-orthogonality",
    "matched-pairs-and-single-roots",
    "iop-strong-orthogonality",
    "iop-classification",
    "single-root-isometries",
    "iop-sums-containing-zero",
    "iop-sums-containing-roots",
    "cartan-action-on-y-z",
    "y-z-bracket-formulas",
    "y-z-opposite-root-brackets",
    "matched-pair-phi-brackets",
    "psi-phi-brackets",
    "psi-psi-brackets-zero-sum",
    "psi-psi-brackets-root-sum",
    "sigma-phi-brackets",
    "sigma-psi-brackets",
    "sigma-sigma-brackets",
    "g2-special-set-brackets",
    "iop-sign-equality",
    "four-root-structure-constants",
    "three-root-structure-constants",
    "sin-block-sign-equality",
    "sin-block-structure-constants",
    "sin-block-bracket-coefficients",
    "g2-structure-constant-relation",
    "stage-refinement",
];

/// Root systems with more roots than this get a sampled four-root check.
const FOUR_ROOT_EXHAUSTIVE_LIMIT: usize = 60;
const FOUR_ROOT_SAMPLES: usize = 20_000;

/// Algebra, involution and the enumerations every suite shares.
pub struct SuiteContext<'a> {
    pub rf: &'a RealForm,
    pub seed: u64,
    pub matched: Vec<MatchedPair>,
    pub iops: Vec<Iop>,
    /// Distinct `R_{x,y}` with one representative iop each.
    pub classes: Vec<(RClass, Iop)>,
    pub singles: Vec<RootIndex>,
    pub sin: Option<SinDecomposition>,
}

impl<'a> SuiteContext<'a> {
    pub fn new(rf: &'a RealForm, seed: u64) -> Self {
        let rs = rf.root_system();
        let matched = find_matched_pairs(rf);
        let iop_list = iops(rf);
        let mut seen = BTreeSet::new();
        let classes = iop_list
            .iter()
            .filter_map(|i| {
                let c = r_class(rs, i.x, i.y);
                seen.insert(c).then_some((c, *i))
            })
            .collect();
        let singles = find_singles(rf);
        let sin = sin_decomposition(rf).ok();
        SuiteContext { rf, seed, matched, iops: iop_list, classes, singles, sin }
    }

    fn rs(&self) -> &RootSystem {
        self.rf.root_system()
    }

    fn table(&self) -> &StructureTable {
        &self.rf.table
    }

    fn family(&self) -> Family {
        self.rs().cartan_type().family
    }

    fn is_single(&self, r: RootIndex) -> bool {
        self.singles.binary_search(&r).is_ok()
    }

    fn class_of(&self, roots: &[RootIndex]) -> Option<&(RClass, Iop)> {
        if roots.len() != 4 {
            return None;
        }
        self.classes.iter().find(|(c, _)| c[..] == *roots)
    }

    fn root_str(&self, r: RootIndex) -> String {
        let c: Vec<String> = self.rs().coords(r).iter().map(|x| x.to_string()).collect();
        format!("({})", c.join(","))
    }
}

pub fn run_all_suites(ctx: &SuiteContext) -> Vec<PropertyReport> {
    SUITE_NAMES.iter().map(|n| run_property_suite(n, ctx).expect("known suite")).collect()
}

pub fn run_property_suite(name: &str, ctx: &SuiteContext) -> Result<PropertyReport> {
    let r = match name {
        "chevalley-axioms" => {
            let mut r = verify_chevalley_axioms(ctx.table(), JacobiMode::Auto { seed: ctx.seed });
            r.suite = name.into();
            r
        }
        "involution-consistency" => {
            let mut r = validate_involution(&ctx.rf.inv, ctx.table());
            r.suite = name.into();
            r
        }
        "complex-root-strong-orthogonality" => complex_strong_orthogonality(ctx),
        "matched-pairs-and-single-roots" => matched_and_singles(ctx),
        "iop-strong-orthogonality" => iop_orthogonality(ctx),
        "iop-classification" => iop_classification(ctx),
        "single-root-isometries" => isometries(ctx),
        "iop-sums-containing-zero" => sums_with_zero(ctx),
        "iop-sums-containing-roots" => sums_with_roots(ctx),
        "cartan-action-on-y-z" => cartan_action(ctx),
        "y-z-bracket-formulas" => yz_brackets(ctx),
        "y-z-opposite-root-brackets" => opposite_brackets(ctx),
        "matched-pair-phi-brackets" => matched_phi(ctx),
        "psi-phi-brackets" => psi_phi(ctx),
        "psi-psi-brackets-zero-sum" => psi_psi_zero(ctx),
        "psi-psi-brackets-root-sum" => psi_psi_roots(ctx),
        "sigma-phi-brackets" => sigma_phi(ctx),
        "sigma-psi-brackets" => sigma_psi(ctx),
        "sigma-sigma-brackets" => sigma_sigma(ctx),
        "g2-special-set-brackets" => g2_brackets(ctx),
        "iop-sign-equality" => iop_signs(ctx),
        "four-root-structure-constants" => four_root(ctx),
        "three-root-structure-constants" => {
            let mut r = check_three_root_identity(ctx.table());
            r.suite = name.into();
            r
        }
        "sin-block-sign-equality" => block_signs(ctx),
        "sin-block-structure-constants" => block_constants(ctx),
        "sin-block-bracket-coefficients" => block_coefficients(ctx),
        "g2-structure-constant-relation" => g2_relation(ctx),
        "stage-refinement" => stage_refinement(ctx),
        _ => return Err(Error::InvalidSpec(format!("unknown suite '{name}'"))),
    };
    Ok(r)
}

// ---------------------------------------------------------------------------
// small helpers

fn set(items: impl IntoIterator<Item = LabeledElement>) -> CandidateSet {
    CandidateSet::from_elements(Stage::Custom, items)
}

fn bracket_sets(table: &StructureTable, a: &[LabeledElement], b: &[LabeledElement]) -> CandidateSet {
    let mut out = CandidateSet::new(Stage::Custom);
    for x in a {
        for y in b {
            let v = table.bracket(&x.element, &y.element);
            out.insert(LabeledElement::new(Label::Bracket(Box::new(x.label.clone()), Box::new(y.label.clone())), v));
        }
    }
    out
}

fn yz(rf: &RealForm, r: RootIndex) -> Vec<LabeledElement> {
    vec![LabeledElement::new(Label::Y(r), y_elem(rf, r)), LabeledElement::new(Label::Z(r), z_elem(rf, r))]
}

fn ih_root(table: &StructureTable, r: RootIndex) -> LabeledElement {
    LabeledElement::new(Label::Fixture(format!("iH({r})")), table.coroot_element(r).mul_i())
}

fn ihs(rf: &RealForm, r: RootIndex) -> LabeledElement {
    LabeledElement::new(Label::IHsum(r), ih_sum(rf, r))
}

fn describe(got: &CandidateSet, want: &CandidateSet) -> String {
    let extra: Vec<String> = got.difference(want).take(3).map(|e| e.label.to_string()).collect();
    let missing: Vec<String> = want.difference(got).take(3).map(|e| e.label.to_string()).collect();
    format!("got {} classes, expected {}; unexpected {:?}; missing {:?}", got.len(), want.len(), extra, missing)
}

fn check_equiv(rep: &mut PropertyReport, got: &CandidateSet, want: &CandidateSet, what: impl FnOnce() -> String) {
    let ok = got.equivalent(want);
    rep.check(ok, || format!("{}: {}", what(), describe(got, want)));
}

fn scaled(v: &AlgebraElement, c: &Rational) -> AlgebraElement {
    v.scale(&GaussianRational::real(c.clone()))
}

fn zero(table: &StructureTable) -> AlgebraElement {
    AlgebraElement::zero(table.dim())
}

fn sigma_r(rf: &RealForm, r: RootIndex) -> Rational {
    Rational::from_int(i64::from(rf.inv.sigma(r)))
}

fn c_r(table: &StructureTable, a: RootIndex, b: RootIndex) -> Rational {
    Rational::from_int(table.c_or_zero(a, b))
}

/// `Y_γ` (or `Z_γ`) for a vector sum that may not be a root.
fn y_or_zero(rf: &RealForm, r: Option<RootIndex>) -> AlgebraElement {
    r.map(|r| y_elem(rf, r)).unwrap_or_else(|| zero(&rf.table))
}

fn z_or_zero(rf: &RealForm, r: Option<RootIndex>) -> AlgebraElement {
    r.map(|r| z_elem(rf, r)).unwrap_or_else(|| zero(&rf.table))
}

fn lin(terms: &[(Rational, &AlgebraElement)], dim: usize) -> AlgebraElement {
    terms.iter().fold(AlgebraElement::zero(dim), |acc, (c, v)| acc.add(&scaled(v, c)))
}

fn strongly_orthogonal(rs: &RootSystem, a: RootIndex, b: RootIndex) -> bool {
    rs.dot_scaled(a, b) == 0 && rs.add(a, b).is_none() && rs.sub(a, b).is_none()
}

fn skipped(name: &str, why: impl Into<String>) -> PropertyReport {
    PropertyReport::skipped(name, why)
}

fn is_f4_or_e6_complex(ctx: &SuiteContext) -> bool {
    ctx.sin.is_some()
}

// ---------------------------------------------------------------------------
// root combinatorics

fn complex_strong_orthogonality(ctx: &SuiteContext) -> PropertyReport {
    let name = "complex-root-strong-orthogonality";
    if !ctx.rf.inv.has_complex_roots() {
        return skipped(name, "no complex roots");
    }
    let rs = ctx.rs();
    let mut rep = PropertyReport::new(name);
    for a in rs.roots().filter(|&a| !ctx.rf.inv.is_imaginary(a)) {
        let ta = ctx.rf.inv.theta_root(a);
        rep.check(strongly_orthogonal(rs, a, ta), || {
            format!("{} and θ of it {} are not strongly orthogonal", ctx.root_str(a), ctx.root_str(ta))
        });
    }
    rep
}

fn matched_and_singles(ctx: &SuiteContext) -> PropertyReport {
    let name = "matched-pairs-and-single-roots";
    let rs = ctx.rs();
    let mut rep = PropertyReport::new(name);
    let pred = match matched_pair_predicate(ctx.rf) {
        Ok(p) => p,
        Err(e) => return skipped(name, e.to_string()),
    };
    let found: BTreeSet<MatchedPair> = ctx.matched.iter().copied().collect();
    for a in rs.roots() {
        for b in rs.roots() {
            let want = pred(a, b);
            let got = found.contains(&MatchedPair { alpha: a, beta: b });
            rep.check(want == got, || {
                format!("pair {} {}: enumerated {got}, closed form {want}", ctx.root_str(a), ctx.root_str(b))
            });
        }
    }
    let want = expected_singles(ctx.rf);
    rep.check(want == ctx.singles, || {
        format!("{} single roots enumerated, {} predicted", ctx.singles.len(), want.len())
    });
    rep
}

fn iop_orthogonality(ctx: &SuiteContext) -> PropertyReport {
    let name = "iop-strong-orthogonality";
    if ctx.iops.is_empty() {
        return skipped(name, "no matched pairs");
    }
    let rs = ctx.rs();
    let mut rep = PropertyReport::new(name);
    for i in &ctx.iops {
        rep.check(strongly_orthogonal(rs, i.x, i.y), || {
            format!("iop ({}, {}) not strongly orthogonal", ctx.root_str(i.x), ctx.root_str(i.y))
        });
    }
    rep
}

fn iop_classification(ctx: &SuiteContext) -> PropertyReport {
    let name = "iop-classification";
    let rs = ctx.rs();
    let pred = match iop_class_predicate(ctx.rf) {
        Ok(p) => p,
        Err(e) => return skipped(name, e.to_string()),
    };
    let mut rep = PropertyReport::new(name);
    for i in &ctx.iops {
        rep.check(pred(i.x, i.y), || format!("iop ({}, {}) outside the closed form", ctx.root_str(i.x), ctx.root_str(i.y)));
    }
    let got: BTreeSet<RClass> = ctx.classes.iter().map(|(c, _)| *c).collect();
    let mut want = BTreeSet::new();
    for x in rs.roots() {
        for y in rs.roots() {
            if pred(x, y) {
                want.insert(r_class(rs, x, y));
            }
        }
    }
    rep.check(got == want, || format!("{} iop classes enumerated, {} predicted", got.len(), want.len()));
    if rs.cartan_type().family == Family::G {
        // The iops are exactly (e_i − e_j, e_i + e_j − 2e_k) for cyclic (i, j, k), up to equivalence.
        let mut cyc = BTreeSet::new();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let mut x = [0i64; 3];
            x[i] = 1;
            x[j] = -1;
            let mut y = [1i64; 3];
            y[k] = -2;
            cyc.insert(r_class(rs, rs.lookup_scaled(&x).unwrap(), rs.lookup_scaled(&y).unwrap()));
        }
        rep.check(got == cyc, || "G2 iops differ from the cyclic description".into());
    }
    rep
}

fn form_of(t: CartanType, preset_name: &str) -> Result<RealForm> {
    let table = StructureTable::build(RootSystem::build(t));
    let spec = preset(&table, preset_name)?;
    build_involution(&table, &spec)
}

fn isometries(ctx: &SuiteContext) -> PropertyReport {
    let name = "single-root-isometries";
    let t = ctx.rs().cartan_type();
    let complex = ctx.rf.inv.has_complex_roots();
    let source = match (t.family, complex) {
        (Family::B | Family::C | Family::F, false) => Some(t),
        (Family::D, true) => CartanType::new(Family::B, t.rank - 1).ok(),
        (Family::A, true) => CartanType::new(Family::C, t.rank.div_ceil(2)).ok(),
        (Family::E, true) => CartanType::new(Family::F, 4).ok(),
        _ => None,
    };
    let Some(source) = source else {
        return skipped(name, format!("{t} is not part of an isometry pair"));
    };
    let mut rep = PropertyReport::new(name);
    let pi = Isometry::for_source(source).expect("source of a pair");
    for (i, j) in pi.gram_violations() {
        rep.fail(format!("Gram relation fails on basis vectors {i}, {j}"));
    }
    rep.cases += (pi.columns.len() * pi.columns.len()) as u64;
    let (src, tgt) = match (form_of(pi.source, "compact"), form_of(pi.target, "quasi-split")) {
        (Ok(s), Ok(t)) => (s, t),
        (Err(e), _) | (_, Err(e)) => {
            rep.fail(format!("cannot build the pair: {e}"));
            return rep;
        }
    };
    let (srs, trs) = (src.root_system(), tgt.root_system());
    let s_singles = find_singles(&src);
    let t_singles: BTreeSet<RootIndex> = find_singles(&tgt).into_iter().collect();
    let mut image = BTreeSet::new();
    for &r in &s_singles {
        let img = pi.map_root(srs, trs, r);
        rep.check(img.is_some_and(|i| t_singles.contains(&i)), || format!("single root {r} maps outside the target singles"));
        if let Some(i) = img {
            image.insert(i);
        }
    }
    rep.check(image == t_singles && s_singles.len() == t_singles.len(), || "single roots do not map bijectively".into());
    let t_classes: BTreeSet<RClass> = iops(&tgt).iter().map(|i| r_class(trs, i.x, i.y)).collect();
    let mut img_classes = BTreeSet::new();
    for i in iops(&src) {
        let (x, y) = (pi.map_root(srs, trs, i.x), pi.map_root(srs, trs, i.y));
        let ok = matches!((x, y), (Some(x), Some(y)) if iop_witness(&tgt, x, y).is_some());
        rep.check(ok, || format!("iop ({}, {}) does not map to an iop", i.x, i.y));
        if let (Some(x), Some(y)) = (x, y) {
            img_classes.insert(r_class(trs, x, y));
        }
    }
    rep.check(img_classes == t_classes, || "iop classes do not map bijectively".into());
    rep
}

fn sums_with_zero(ctx: &SuiteContext) -> PropertyReport {
    let name = "iop-sums-containing-zero";
    if ctx.family() == Family::G {
        return skipped(name, "stated away from G2");
    }
    if ctx.classes.is_empty() {
        return skipped(name, "no iops");
    }
    let rs = ctx.rs();
    let mut rep = PropertyReport::new(name);
    for (c1, i1) in &ctx.classes {
        for (c2, i2) in &ctx.classes {
            let q = q_set(rs, (i1.x, i1.y), (i2.x, i2.y));
            if !q.contains_zero {
                continue;
            }
            let meets = c1.iter().any(|r| c2.contains(r));
            let mut union: Vec<RootIndex> = c1.iter().chain(c2.iter()).copied().collect();
            union.sort();
            union.dedup();
            let mut ok = meets;
            for &a in &union {
                for &b in &union {
                    if !rs.proportional(a, b) && !strongly_orthogonal(rs, a, b) {
                        ok = false;
                    }
                }
            }
            rep.check(ok, || format!("classes {c1:?} and {c2:?}"));
        }
    }
    rep
}

fn sums_with_roots(ctx: &SuiteContext) -> PropertyReport {
    let name = "iop-sums-containing-roots";
    if ctx.family() == Family::G {
        return skipped(name, "stated away from G2");
    }
    if ctx.classes.is_empty() {
        return skipped(name, "no iops");
    }
    let rs = ctx.rs();
    let mut rep = PropertyReport::new(name);
    for (c1, i1) in &ctx.classes {
        for (c2, i2) in &ctx.classes {
            let q = q_set(rs, (i1.x, i1.y), (i2.x, i2.y));
            if q.roots.is_empty() {
                continue;
            }
            let x = xi(rs, i1.x, i1.y, i2.x, i2.y);
            let ok = match x.signum() {
                1 => ctx.class_of(&q.roots).is_some(),
                -1 => match &ctx.sin {
                    Some(d) => {
                        let (bi, bj) = (d.block_of(i1.x), d.block_of(i2.x));
                        match (bi, bj) {
                            (Some(i), Some(j)) if i != j => q.roots == d.blocks[3 - i - j],
                            _ => false,
                        }
                    }
                    None => false,
                },
                _ => false,
            };
            rep.check(ok, || format!("classes {c1:?}, {c2:?}: ξ = {x}, {} roots in Q", q.roots.len()));
        }
    }
    rep
}

fn iop_signs(ctx: &SuiteContext) -> PropertyReport {
    let name = "iop-sign-equality";
    if ctx.iops.is_empty() {
        return skipped(name, "no iops");
    }
    let mut rep = PropertyReport::new(name);
    for i in &ctx.iops {
        rep.check(ctx.rf.inv.sigma(i.x) == ctx.rf.inv.sigma(i.y), || format!("σ differs on iop ({}, {})", i.x, i.y));
    }
    rep
}

// ---------------------------------------------------------------------------
// bracket formulas

fn cartan_action(ctx: &SuiteContext) -> PropertyReport {
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let mut rep = PropertyReport::new("cartan-action-on-y-z");
    let two = Rational::from_int(2);
    for a in rs.roots() {
        let (hd, hs) = (h_diff(rf, a), ih_sum(rf, a));
        let ta = rf.inv.theta_root(a);
        for b in rs.roots() {
            let tb = rf.inv.theta_root(b);
            let minus = (&two * &(rs.inner_product(a, b) - rs.inner_product(a, tb))) / &rs.norm2(a);
            let plus = (&two * &(rs.inner_product(a, b) + rs.inner_product(a, tb))) / &rs.norm2(a);
            let (yb, zb) = (y_elem(rf, b), z_elem(rf, b));
            let cases = [
                (t.bracket(&hd, &yb), scaled(&yb, &minus)),
                (t.bracket(&hd, &zb), scaled(&zb, &minus)),
                (t.bracket(&hs, &yb), scaled(&zb, &plus)),
                (t.bracket(&hs, &zb), scaled(&yb, &-plus.clone())),
            ];
            for (k, (got, want)) in cases.iter().enumerate() {
                rep.check(got == want, || format!("formula {k} fails for α={}, β={} (θα={ta})", ctx.root_str(a), ctx.root_str(b)));
            }
        }
    }
    rep
}

fn yz_brackets(ctx: &SuiteContext) -> PropertyReport {
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let mut rep = PropertyReport::new("y-z-bracket-formulas");
    let dim = t.dim();
    let ys: Vec<AlgebraElement> = rs.roots().map(|r| y_elem(rf, r)).collect();
    let zs: Vec<AlgebraElement> = rs.roots().map(|r| z_elem(rf, r)).collect();
    for a in rs.roots() {
        let ta = rf.inv.theta_root(a);
        for b in rs.roots() {
            if [b, rs.neg(b)].contains(&a) || [b, rs.neg(b)].contains(&ta) {
                continue;
            }
            let ntb = rs.neg(rf.inv.theta_root(b));
            let (sum, diff) = (rs.add(a, b), rs.add(a, ntb));
            let c1 = c_r(t, a, b);
            let c2 = &sigma_r(rf, b) * &c_r(t, a, ntb);
            let (ys1, ys2, zs1, zs2) = (y_or_zero(rf, sum), y_or_zero(rf, diff), z_or_zero(rf, sum), z_or_zero(rf, diff));
            let (ya, yb, za, zb) = (&ys[a.idx()], &ys[b.idx()], &zs[a.idx()], &zs[b.idx()]);
            let cases = [
                (t.bracket(ya, yb), lin(&[(c1.clone(), &ys1), (-c2.clone(), &ys2)], dim)),
                (t.bracket(za, zb), lin(&[(-c1.clone(), &ys1), (-c2.clone(), &ys2)], dim)),
                (t.bracket(ya, zb), lin(&[(c1.clone(), &zs1), (c2.clone(), &zs2)], dim)),
                (t.bracket(za, yb), lin(&[(c1.clone(), &zs1), (-c2.clone(), &zs2)], dim)),
            ];
            for (k, (got, want)) in cases.iter().enumerate() {
                rep.check(got == want, || format!("formula {k} fails for α={}, β={}", ctx.root_str(a), ctx.root_str(b)));
            }
        }
    }
    rep
}

fn opposite_brackets(ctx: &SuiteContext) -> PropertyReport {
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let mut rep = PropertyReport::new("y-z-opposite-root-brackets");
    for a in rs.roots() {
        let na = rs.neg(a);
        let (hd, hs) = (h_diff(rf, a), ih_sum(rf, a));
        let (ya, za, yn, zn) = (y_elem(rf, a), z_elem(rf, a), y_elem(rf, na), z_elem(rf, na));
        let cases = [
            (t.bracket(&ya, &yn), hd.clone()),
            (t.bracket(&za, &zn), hd.neg()),
            (t.bracket(&ya, &zn), hs.clone()),
            (t.bracket(&yn, &za), hs.neg()),
        ];
        for (k, (got, want)) in cases.iter().enumerate() {
            rep.check(got == want, || format!("identity {k} fails for α={}", ctx.root_str(a)));
        }
        if !rf.inv.is_imaginary(a) {
            rep.check(t.bracket(&ya, &za).is_zero(), || format!("[Y, Z] ≠ 0 for complex α={}", ctx.root_str(a)));
        }
    }
    rep
}

fn matched_phi(ctx: &SuiteContext) -> PropertyReport {
    let name = "matched-pair-phi-brackets";
    if ctx.matched.is_empty() {
        return skipped(name, "no matched pairs");
    }
    if ctx.family() == Family::G {
        return skipped(name, "stated away from G2; G2 is covered by g2-special-set-brackets");
    }
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let complex = rf.inv.has_complex_roots();
    let mut rep = PropertyReport::new(name);
    for p in &ctx.matched {
        let (a, b) = (p.alpha, p.beta);
        let tb = rf.inv.theta_root(b);
        let ntb = rs.neg(tb);
        let orth = (rs.inner_product(a, b) + rs.inner_product(a, tb)).is_zero();
        let (c1, c2) = (t.c_or_zero(a, b), t.c_or_zero(a, ntb));
        rep.check(orth && c1 * c1 == c2 * c2 && c1 != 0, || {
            format!("pair ({}, {}): ⟨α,β+θβ⟩ or c² condition fails ({c1}, {c2})", ctx.root_str(a), ctx.root_str(b))
        });
        let (x, y) = (rs.add(a, b).unwrap(), rs.add(a, ntb).unwrap());
        let got = bracket_sets(t, &phi_set(rf, a), &phi_set(rf, b));
        let mut want = set(psi_elements(rf, x, y));
        if complex {
            want.extend(yz(rf, a));
            want.extend(yz(rf, b));
        }
        check_equiv(&mut rep, &got, &want, || format!("[Φ_α, Φ_β] for ({}, {})", ctx.root_str(a), ctx.root_str(b)));
    }
    rep
}

fn psi_phi(ctx: &SuiteContext) -> PropertyReport {
    let name = "psi-phi-brackets";
    if ctx.matched.is_empty() {
        return skipped(name, "no matched pairs");
    }
    if ctx.family() == Family::G {
        return skipped(name, "stated away from G2");
    }
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let mut rep = PropertyReport::new(name);
    for p in &ctx.matched {
        let (a, b) = (p.alpha, p.beta);
        let (x, y) = (rs.add(a, b).unwrap(), rs.add(a, rs.neg(rf.inv.theta_root(b))).unwrap());
        let psi = psi_elements(rf, x, y);
        let r = r_class(rs, x, y);
        let mut tset: Vec<RootIndex> = [a, b, rf.inv.theta_root(a), rf.inv.theta_root(b)]
            .iter()
            .flat_map(|&r| [r, rs.neg(r)])
            .collect();
        tset.sort();
        for g in rs.roots() {
            let pset = p_set(rf, (x, y), g);
            let got = bracket_sets(t, &psi, &phi_set(rf, g));
            let what = || format!("Ψ for pair ({}, {}) with γ={}", ctx.root_str(a), ctx.root_str(b), ctx.root_str(g));
            if pset.contains_zero {
                rep.check(r.contains(&g), || format!("{}: P contains zero but γ ∉ R", what()));
                check_equiv(&mut rep, &got, &set(phi_set(rf, g)), what);
            } else if pset.roots.is_empty() {
                rep.check(got.is_empty(), || format!("{}: expected zero brackets", what()));
            } else if tset.contains(&g) || !ctx.is_single(g) {
                if pset.roots.len() != 2 {
                    rep.fail(format!("{}: P has {} roots", what(), pset.roots.len()));
                    continue;
                }
                let d = pset.roots[0];
                let want = if tset.contains(&g) {
                    let mut w = set(psi.clone());
                    w.extend(yz(rf, d));
                    w
                } else {
                    let orth: Vec<RootIndex> = [x, y].into_iter().filter(|&u| strongly_orthogonal(rs, g, u)).collect();
                    if orth.len() != 1 {
                        rep.fail(format!("{}: γ strongly orthogonal to {} of x, y", what(), orth.len()));
                        continue;
                    }
                    let v = if orth[0] == x { y } else { x };
                    let mut w = set(yz(rf, v));
                    w.extend(yz(rf, d));
                    w
                };
                check_equiv(&mut rep, &got, &want, what);
            } else {
                let Some((_, i2)) = ctx.class_of(&pset.roots) else {
                    rep.fail(format!("{}: P roots do not form an iop class", what()));
                    continue;
                };
                let mut want = set(psi.clone());
                want.extend(psi_elements(rf, i2.x, i2.y));
                check_equiv(&mut rep, &got, &want, what);
            }
        }
    }
    rep
}

fn psi_psi_zero(ctx: &SuiteContext) -> PropertyReport {
    let name = "psi-psi-brackets-zero-sum";
    if ctx.matched.is_empty() {
        return skipped(name, "no matched pairs");
    }
    if ctx.family() == Family::G {
        return skipped(name, "stated away from G2");
    }
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let mut rep = PropertyReport::new(name);
    for p in &ctx.matched {
        let (a, b) = (p.alpha, p.beta);
        let (x, y) = (rs.add(a, b).unwrap(), rs.add(a, rs.neg(rf.inv.theta_root(b))).unwrap());
        let r1 = r_class(rs, x, y);
        let psi = psi_elements(rf, x, y);
        for (r2, i2) in &ctx.classes {
            let q = q_set(rs, (x, y), (i2.x, i2.y));
            let got = bracket_sets(t, &psi, &psi_elements(rf, i2.x, i2.y));
            let what = || format!("pair ({}, {}) against class {r2:?}", ctx.root_str(a), ctx.root_str(b));
            if !q.contains_zero {
                if q.roots.is_empty() {
                    rep.check(got.is_empty(), || format!("{}: expected zero brackets", what()));
                }
                continue;
            }
            let common: Vec<RootIndex> = r1.iter().filter(|r| r2.contains(r)).copied().collect();
            let want = if r1 == *r2 {
                set([ihs(rf, a), ihs(rf, b)])
            } else if common.len() == 2 {
                set([ih_root(t, common[0])])
            } else {
                rep.fail(format!("{}: Q contains zero with {} common roots", what(), common.len()));
                continue;
            };
            check_equiv(&mut rep, &got, &want, what);
        }
    }
    rep
}

fn psi_psi_roots(ctx: &SuiteContext) -> PropertyReport {
    let name = "psi-psi-brackets-root-sum";
    if ctx.classes.is_empty() {
        return skipped(name, "no iops");
    }
    if ctx.family() == Family::G {
        return skipped(name, "stated away from G2");
    }
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let sig = sigma_sets(rf).ok();
    let mut rep = PropertyReport::new(name);
    for (r1, i1) in &ctx.classes {
        let psi1 = psi_elements(rf, i1.x, i1.y);
        for (r2, i2) in &ctx.classes {
            let q = q_set(rs, (i1.x, i1.y), (i2.x, i2.y));
            if q.roots.is_empty() || q.contains_zero {
                continue;
            }
            let got = bracket_sets(t, &psi1, &psi_elements(rf, i2.x, i2.y));
            let what = || format!("classes {r1:?}, {r2:?}");
            let x = xi(rs, i1.x, i1.y, i2.x, i2.y);
            let want = if x.signum() > 0 {
                ctx.class_of(&q.roots).map(|(_, i3)| set(psi_elements(rf, i3.x, i3.y)))
            } else {
                match (&ctx.sin, &sig) {
                    (Some(d), Some(s)) => match (d.block_of(i1.x), d.block_of(i2.x)) {
                        (Some(i), Some(j)) if i != j => Some(set(s[3 - i - j].clone())),
                        _ => None,
                    },
                    _ => None,
                }
            };
            match want {
                Some(w) => check_equiv(&mut rep, &got, &w, what),
                None => rep.fail(format!("{}: no predicted set (ξ = {x})", what())),
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// F4 / E6 four-term sets

fn sigma_phi(ctx: &SuiteContext) -> PropertyReport {
    let name = "sigma-phi-brackets";
    if !is_f4_or_e6_complex(ctx) {
        return skipped(name, "needs F4, or E6 with complex roots");
    }
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let dec = ctx.sin.as_ref().unwrap();
    let sig = sigma_sets(rf).unwrap();
    let mut rep = PropertyReport::new(name);
    for i in 0..3 {
        for a in rs.roots() {
            let got = bracket_sets(t, &sig[i], &phi_set(rf, a));
            let what = || format!("block {} with α={}", i + 1, ctx.root_str(a));
            let want = match dec.block_of(a) {
                Some(j) if j == i => set(phi_set(rf, a)),
                Some(j) => {
                    let mut w = set(sig[i].clone());
                    w.extend(sig[3 - i - j].clone());
                    w
                }
                None => {
                    let partners: Vec<RootIndex> = ctx
                        .matched
                        .iter()
                        .filter(|p| p.alpha == a && !ctx.is_single(p.beta))
                        .filter(|p| dec.block_of(rs.add(a, p.beta).unwrap()) == Some(i))
                        .map(|p| p.beta)
                        .collect();
                    let Some(&b) = partners.first() else {
                        rep.fail(format!("{}: no partner with iop in the block", what()));
                        continue;
                    };
                    let ntb = rs.neg(rf.inv.theta_root(b));
                    let unique = partners.iter().all(|&p| p == b || p == ntb);
                    rep.check(unique, || format!("{}: partner not unique up to −θ ({} found)", what(), partners.len()));
                    let (x, y) = (rs.add(a, b).unwrap(), rs.add(a, ntb).unwrap());
                    let mut w = set(psi_elements(rf, x, y));
                    w.extend(yz(rf, rs.neg(b)));
                    w
                }
            };
            check_equiv(&mut rep, &got, &want, what);
        }
    }
    rep
}

fn sigma_psi(ctx: &SuiteContext) -> PropertyReport {
    let name = "sigma-psi-brackets";
    if !is_f4_or_e6_complex(ctx) {
        return skipped(name, "needs F4, or E6 with complex roots");
    }
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let dec = ctx.sin.as_ref().unwrap();
    let sig = sigma_sets(rf).unwrap();
    let mut rep = PropertyReport::new(name);
    for i in 0..3 {
        for p in &ctx.matched {
            let (a, b) = (p.alpha, p.beta);
            let (x, y) = (rs.add(a, b).unwrap(), rs.add(a, rs.neg(rf.inv.theta_root(b))).unwrap());
            let got = bracket_sets(t, &sig[i], &psi_elements(rf, x, y));
            let what = || format!("block {} with pair ({}, {})", i + 1, ctx.root_str(a), ctx.root_str(b));
            let Some(j) = dec.block_of(x) else {
                rep.fail(format!("{}: iop outside the single blocks", what()));
                continue;
            };
            if j == i {
                check_equiv(&mut rep, &got, &set([ihs(rf, a), ihs(rf, b)]), what);
                continue;
            }
            let k = 3 - i - j;
            let in_k: Vec<&(RClass, Iop)> =
                ctx.classes.iter().filter(|(c, _)| c.iter().all(|r| dec.blocks[k].contains(r))).collect();
            let mut found = false;
            for (m, (c1, i1)) in in_k.iter().enumerate() {
                for (c2, i2) in &in_k[m + 1..] {
                    if c1.iter().any(|r| c2.contains(r)) {
                        continue;
                    }
                    let mut w = set(sig[k].clone());
                    w.extend(psi_elements(rf, i1.x, i1.y));
                    w.extend(psi_elements(rf, i2.x, i2.y));
                    if got.equivalent(&w) {
                        found = true;
                    }
                }
            }
            rep.check(found, || format!("{}: no splitting of block {} into two iop classes matches", what(), k + 1));
        }
    }
    rep
}

fn sigma_sigma(ctx: &SuiteContext) -> PropertyReport {
    let name = "sigma-sigma-brackets";
    if !is_f4_or_e6_complex(ctx) {
        return skipped(name, "needs F4, or E6 with complex roots");
    }
    let rf = ctx.rf;
    let t = ctx.table();
    let dec = ctx.sin.as_ref().unwrap();
    let sig = sigma_sets(rf).unwrap();
    let mut rep = PropertyReport::new(name);
    for i in 0..3 {
        for j in 0..3 {
            let got = bracket_sets(t, &sig[i], &sig[j]);
            let want = if i == j {
                set((0..3).filter(|&l| l != i).flat_map(|l| dec.blocks[l].iter().map(|&x| ih_root(t, x))))
            } else {
                let k = 3 - i - j;
                let mut w = set(sig[k].clone());
                w.extend(dec.blocks[k].iter().flat_map(|&x| yz(rf, x)));
                w
            };
            check_equiv(&mut rep, &got, &want, || format!("blocks {} and {}", i + 1, j + 1));
        }
    }
    rep
}

fn block_signs(ctx: &SuiteContext) -> PropertyReport {
    let name = "sin-block-sign-equality";
    let Some(dec) = &ctx.sin else {
        return skipped(name, "needs F4, or E6 with complex roots");
    };
    let mut rep = PropertyReport::new(name);
    for (i, block) in dec.blocks.iter().enumerate() {
        let s0 = ctx.rf.inv.sigma(block[0]);
        for &r in block {
            rep.check(ctx.rf.inv.sigma(r) == s0, || format!("σ not constant on block {}", i + 1));
        }
    }
    rep
}

fn block_constants(ctx: &SuiteContext) -> PropertyReport {
    let name = "sin-block-structure-constants";
    let Some(dec) = &ctx.sin else {
        return skipped(name, "needs F4, or E6 with complex roots");
    };
    let (rs, t) = (ctx.rs(), ctx.table());
    let [u1, v1, s1, t1] = dec.reps[0];
    let [u2, v2, s2, t2] = dec.reps[1];
    let n = |r| rs.neg(r);
    let c = |a, b| t.c_or_zero(a, b);
    let eqs = [
        (c(u1, u2) * c(v1, v2), c(u1, n(v2)) * c(v1, n(u2))),
        (c(u1, u2) * c(s1, s2), c(u1, n(s2)) * c(s1, n(u2))),
        (c(u1, u2) * c(t1, t2), c(u1, n(t2)) * c(t1, n(u2))),
        (c(u1, n(v2)) * c(s1, n(t2)), c(u1, n(t2)) * c(s1, n(v2))),
        (c(u1, n(v2)) * c(t1, n(s2)), c(u1, n(s2)) * c(t1, n(v2))),
        (c(u1, n(s2)) * c(v1, n(t2)), c(u1, n(t2)) * c(v1, n(s2))),
        (c(v1, n(u2)) * c(t1, n(s2)), c(v1, n(s2)) * c(t1, n(u2))),
        (c(s1, n(u2)) * c(t1, n(v2)), c(s1, n(v2)) * c(t1, n(u2))),
        // Four more that follow from the first eight.
        (c(v1, v2) * c(s1, s2), c(v1, n(s2)) * c(s1, n(v2))),
        (c(v1, v2) * c(t1, t2), c(v1, n(t2)) * c(t1, n(v2))),
        (c(v1, n(u2)) * c(s1, n(t2)), c(s1, n(u2)) * c(v1, n(t2))),
        (c(s1, s2) * c(t1, t2), c(s1, n(t2)) * c(t1, n(s2))),
    ];
    let mut rep = PropertyReport::new(name);
    for (k, (l, r)) in eqs.iter().enumerate() {
        rep.check(l == r && *l != 0, || format!("equality {k}: {l} vs {r}"));
    }
    rep
}

fn block_coefficients(ctx: &SuiteContext) -> PropertyReport {
    let name = "sin-block-bracket-coefficients";
    let Some(dec) = &ctx.sin else {
        return skipped(name, "needs F4, or E6 with complex roots");
    };
    let rf = ctx.rf;
    let (rs, t) = (ctx.rs(), ctx.table());
    let dim = t.dim();
    let [u1, v1, s1, t1] = dec.reps[0];
    let [u2, v2, s2, t2] = dec.reps[1];
    let [u3, v3, s3, t3] = dec.reps[2];
    let n = |r| rs.neg(r);
    let c = |a, b| t.c_or_zero(a, b);
    let sg2 = i64::from(rf.inv.sigma(u2));
    let bold = |reps: [RootIndex; 4], e: [i64; 3], f: fn(&RealForm, RootIndex) -> AlgebraElement| {
        let terms: Vec<(Rational, AlgebraElement)> = [1, e[0], e[1], e[2]]
            .iter()
            .zip(reps)
            .map(|(&s, r)| (Rational::from_int(s), f(rf, r)))
            .collect();
        terms.iter().fold(AlgebraElement::zero(dim), |acc, (s, v)| acc.add(&scaled(v, s)))
    };
    let mut rep = PropertyReport::new(name);
    let signs: Vec<[i64; 3]> =
        (0..8).map(|m| std::array::from_fn(|k| if m >> (2 - k) & 1 == 1 { -1 } else { 1 })).collect();
    let (y3, z3): (Vec<_>, Vec<_>) = ([u3, v3, s3, t3].map(|r| (y_elem(rf, r), z_elem(rf, r)))).into_iter().unzip();
    for e1 in &signs {
        for e2 in &signs {
            let [ev1, es1, et1] = *e1;
            let [ev2, es2, et2] = *e2;
            let m1 = c(u1, u2) + ev1 * ev2 * c(v1, v2) + es1 * es2 * c(s1, s2) + et1 * et2 * c(t1, t2);
            let a2 = sg2 * ev2 * c(u1, n(v2)) + sg2 * ev1 * c(v1, n(u2));
            let b2 = es1 * et2 * c(s1, n(t2)) + et1 * es2 * c(t1, n(s2));
            let a3 = sg2 * es2 * c(u1, n(s2)) + sg2 * es1 * c(s1, n(u2));
            let b3 = ev1 * et2 * c(v1, n(t2)) + et1 * ev2 * c(t1, n(v2));
            let a4 = sg2 * et2 * c(u1, n(t2)) + sg2 * et1 * c(t1, n(u2));
            let b4 = ev1 * es2 * c(v1, n(s2)) + es1 * ev2 * c(s1, n(v2));
            let (mu, nu) = ([m1, a2 - b2, a3 - b3, a4 - b4], [m1, a2 + b2, a3 + b3, a4 + b4]);
            let r = |x: i64| Rational::from_int(x);
            let (yy1, zz1) = (bold(dec.reps[0], *e1, y_elem), bold(dec.reps[0], *e1, z_elem));
            let (yy2, zz2) = (bold(dec.reps[1], *e2, y_elem), bold(dec.reps[1], *e2, z_elem));
            let cases = [
                (t.bracket(&yy1, &yy2), lin(&[(r(mu[0]), &y3[0]), (r(-mu[1]), &y3[1]), (r(-mu[2]), &y3[2]), (r(-mu[3]), &y3[3])], dim)),
                (t.bracket(&zz1, &zz2), lin(&[(r(-mu[0]), &y3[0]), (r(-mu[1]), &y3[1]), (r(-mu[2]), &y3[2]), (r(-mu[3]), &y3[3])], dim)),
                (t.bracket(&yy1, &zz2), lin(&[(r(nu[0]), &z3[0]), (r(nu[1]), &z3[1]), (r(nu[2]), &z3[2]), (r(nu[3]), &z3[3])], dim)),
                (t.bracket(&zz1, &yy2), lin(&[(r(nu[0]), &z3[0]), (r(-nu[1]), &z3[1]), (r(-nu[2]), &z3[2]), (r(-nu[3]), &z3[3])], dim)),
            ];
            for (k, (got, want)) in cases.iter().enumerate() {
                rep.check(got == want, || format!("bracket {k} fails for signs {e1:?}, {e2:?}"));
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------------
// G2

fn g2_brackets(ctx: &SuiteContext) -> PropertyReport {
    let name = "g2-special-set-brackets";
    let rf = ctx.rf;
    let Ok(pairs) = g2_pairs(ctx.rs()) else {
        return skipped(name, "needs G2");
    };
    if ctx.rs().roots().any(|r| rf.inv.sigma(r) != 1) {
        return skipped(name, "stated for the compact form of G2");
    }
    let t = ctx.table();
    let phi: Vec<Vec<LabeledElement>> = pairs.iter().map(|&(_, y)| phi_set(rf, y)).collect();
    let psi: Vec<Vec<LabeledElement>> = pairs.iter().map(|&(x, y)| psi_elements(rf, y, x)).collect();
    let mut rep = PropertyReport::new(name);
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let phi_i = set(phi[i].clone());
        check_equiv(&mut rep, &bracket_sets(t, &phi[i], &psi[i]), &phi_i, || format!("[Φ_{i}, Ψ_{i}]"));
        check_equiv(&mut rep, &bracket_sets(t, &phi[i], &phi[i]), &phi_i, || format!("[Φ_{i}, Φ_{i}]"));
        let want = set([ih_root(t, pairs[j].1), ih_root(t, pairs[k].1)]);
        check_equiv(&mut rep, &bracket_sets(t, &psi[i], &psi[i]), &want, || format!("[Ψ_{i}, Ψ_{i}]"));
        for j in (0..3).filter(|&j| j != i) {
            let k = 3 - i - j;
            let all_yz = set((0..3).flat_map(|l| yz(rf, pairs[l].1)));
            check_equiv(&mut rep, &bracket_sets(t, &phi[i], &phi[j]), &all_yz, || format!("[Φ_{i}, Φ_{j}]"));
            let mut w = set(psi[j].clone());
            w.extend(psi[k].clone());
            check_equiv(&mut rep, &bracket_sets(t, &phi[i], &psi[j]), &w, || format!("[Φ_{i}, Ψ_{j}]"));
            let mut w = set(psi[k].clone());
            w.extend(yz(rf, pairs[k].1));
            check_equiv(&mut rep, &bracket_sets(t, &psi[i], &psi[j]), &w, || format!("[Ψ_{i}, Ψ_{j}]"));
        }
    }
    rep
}

fn g2_relation(ctx: &SuiteContext) -> PropertyReport {
    let name = "g2-structure-constant-relation";
    let Ok(pairs) = g2_pairs(ctx.rs()) else {
        return skipped(name, "needs G2");
    };
    let (rs, t) = (ctx.rs(), ctx.table());
    let mut rep = PropertyReport::new(name);
    for i in 0..3 {
        let ((x1, y1), (x2, y2)) = (pairs[i], pairs[(i + 1) % 3]);
        // c_{x1,−x2}·c_{y1,y2} = 3·c_{x1,y2}·c_{y1,−x2}; with c_{y1,y2} = 1 this
        // is the normalized form c_{x1,−x2} = 3·c_{x1,y2}·c_{y1,−x2}.
        let l = t.c_or_zero(x1, rs.neg(x2)) * t.c_or_zero(y1, y2);
        let r = 3 * t.c_or_zero(x1, y2) * t.c_or_zero(y1, rs.neg(x2));
        rep.check(l == r && l != 0, || format!("pairs {i}, {}: {l} vs {r}", (i + 1) % 3));
        rep.check(t.c_or_zero(x1, rs.neg(x2)).abs() == 3, || "c_{x1,-x2} is not ±3".into());
    }
    rep
}

// ---------------------------------------------------------------------------
// structure constants and stages

fn four_root(ctx: &SuiteContext) -> PropertyReport {
    let t = ctx.table();
    let sample = (t.root_system().len() > FOUR_ROOT_EXHAUSTIVE_LIMIT).then_some((FOUR_ROOT_SAMPLES, ctx.seed));
    let mut r = check_four_root_identity(t, sample);
    r.suite = "four-root-structure-constants".into();
    r
}

fn stage_refinement(ctx: &SuiteContext) -> PropertyReport {
    let rf = ctx.rf;
    let depth = auto_stage(rf).depth().unwrap_or(0).max(1);
    let stages = build_stages(rf, depth);
    let dim = ctx.table().dim();
    let mut rep = PropertyReport::new("stage-refinement");
    for (k, s) in stages.iter().enumerate() {
        let r = real_rank_of_span(s.vectors()).expect("same dimension");
        rep.check(r == dim, || format!("S{k} spans {r} of {dim}"));
        if k + 1 < stages.len() {
            rep.check(s.is_refined_by(&stages[k + 1]), || format!("S{k} is not refined by S{}", k + 1));
        }
    }
    rep
}
