//! Closed-form descriptions of matched pairs, single roots and iops, read
//! directly off root coordinates. The suites compare them with brute-force
//! enumeration.

use crate::error::{Error, Result};
use crate::involution::RealForm;
use crate::rootsystem::{e6_blocks, Family, RootIndex, RootSystem};

/// `R_{x,y} = ±{x, y}` as a sorted array.
pub type RClass = [RootIndex; 4];

fn support(v: &[i64]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, _)| i).collect()
}

/// Image of a scaled coordinate vector under the ambient involution the
/// closed forms are stated for.
fn ambient_theta(rs: &RootSystem, v: &[i64]) -> Option<Vec<i64>> {
    let t = rs.cartan_type();
    match t.family {
        Family::A => {
            // e_i − e_j ↦ e_{m+1−j} − e_{m+1−i} (1-based), i.e. reverse and negate.
            Some(v.iter().rev().map(|c| -c).collect())
        }
        Family::D => {
            let mut w = v.to_vec();
            *w.last_mut()? *= -1;
            Some(w)
        }
        Family::E if t.rank == 6 => {
            let mut w = v.to_vec();
            w[3..6].copy_from_slice(&v[6..9]);
            w[6..9].copy_from_slice(&v[3..6]);
            Some(w)
        }
        _ => None,
    }
}

fn require_standard_theta(rf: &RealForm) -> Result<()> {
    let rs = rf.root_system();
    for r in rs.roots() {
        let img = ambient_theta(rs, rs.scaled_coords(r)).and_then(|w| rs.lookup_scaled(&w));
        if img != Some(rf.inv.theta_root(r)) {
            return Err(Error::InvalidSpec(format!(
                "no closed form for {}: θ differs from the standard diagram involution at root {r}",
                rs.cartan_type()
            )));
        }
    }
    Ok(())
}

/// `F4` short blocks: one nonzero coordinate, or four with sign product ±1.
fn f4_short_block(v: &[i64]) -> Option<usize> {
    match support(v).len() {
        1 => Some(0),
        4 => Some(if v.iter().product::<i64>() > 0 { 1 } else { 2 }),
        _ => None,
    }
}

/// The three sets `Δ_comp_i` of E6 in scaled coordinates.
fn e6_complex_blocks() -> [Vec<Vec<i64>>; 3] {
    let (a, b) = e6_blocks();
    let cat = |x: [i64; 3], y: [i64; 3], z: [i64; 3]| -> Vec<i64> { x.iter().chain(&y).chain(&z).copied().collect() };
    let zero = [0; 3];
    std::array::from_fn(|i| {
        let others: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let mut out = Vec::new();
        for l in 0..3 {
            for (j, k) in [(others[0], others[1]), (others[1], others[0])] {
                out.push(cat(b[l], b[j], b[k]));
            }
        }
        out.push(cat(zero, a[i], zero));
        out.push(cat(zero, zero, a[i]));
        let neg: Vec<Vec<i64>> = out.iter().map(|v| v.iter().map(|c| -c).collect()).collect();
        out.extend(neg);
        out
    })
}

/// Closed-form test for "(α, β) is a matched pair", case by case.
pub fn matched_pair_predicate(rf: &RealForm) -> Result<Box<dyn Fn(RootIndex, RootIndex) -> bool + Sync + '_>> {
    let rs = rf.root_system();
    let t = rs.cartan_type();
    let not_prop = move |a: RootIndex, b: RootIndex| !rs.proportional(a, b);
    if !rf.inv.has_complex_roots() {
        return Ok(match t.family {
            Family::A | Family::D | Family::E => Box::new(|_, _| false),
            Family::B | Family::G => Box::new(move |a, b| !rs.is_long(a) && !rs.is_long(b) && not_prop(a, b)),
            // Short roots on the same pair of coordinates; "any two short roots"
            // fails already for (e1 + e2, e1 + e3) in C3.
            Family::C => Box::new(move |a, b| {
                !rs.is_long(a)
                    && !rs.is_long(b)
                    && support(rs.scaled_coords(a)) == support(rs.scaled_coords(b))
                    && not_prop(a, b)
            }),
            Family::F => Box::new(move |a, b| {
                let (x, y) = (f4_short_block(rs.scaled_coords(a)), f4_short_block(rs.scaled_coords(b)));
                x.is_some() && x == y && not_prop(a, b)
            }),
        });
    }
    require_standard_theta(rf)?;
    match t.family {
        Family::A => {
            let m = rs.ambient_dim();
            Ok(Box::new(move |a, b| {
                // α = e_i − e_j with i + j ≠ m + 1 (1-based) and β = e_j − e_{m+1−i},
                // or its image e_{m+1−j} − e_i under −θ.
                let (va, vb) = (rs.scaled_coords(a), rs.scaled_coords(b));
                let i = va.iter().position(|&c| c == 1).expect("A root");
                let j = va.iter().position(|&c| c == -1).expect("A root");
                let (p, q) = (vb.iter().position(|&c| c == 1).unwrap(), vb.iter().position(|&c| c == -1).unwrap());
                i + j != m - 1 && ((p == j && q == m - 1 - i) || (p == m - 1 - j && q == i))
            }))
        }
        Family::D => {
            let n = rs.ambient_dim();
            Ok(Box::new(move |a, b| {
                // (ε_i e_i + ε_n e_n, ε_j e_j − ε_n e_n) with i ≠ j.
                let (va, vb) = (rs.scaled_coords(a), rs.scaled_coords(b));
                let (sa, sb) = (support(va), support(vb));
                sa.len() == 2
                    && sb.len() == 2
                    && sa[1] == n - 1
                    && sb[1] == n - 1
                    && sa[0] != sb[0]
                    && va[n - 1] == -vb[n - 1]
            }))
        }
        Family::E if t.rank == 6 => {
            let blocks = e6_complex_blocks();
            let block_of = move |v: &[i64]| blocks.iter().position(|b| b.iter().any(|w| w == v));
            Ok(Box::new(move |a, b| {
                let (ba, bb) = (block_of(rs.scaled_coords(a)), block_of(rs.scaled_coords(b)));
                let ta = rf.inv.theta_root(a);
                ba.is_some()
                    && ba == bb
                    && ![a, rs.neg(a), ta, rs.neg(ta)].contains(&b)
                    && rs.dot_scaled(a, b) < 0
            }))
        }
        _ => Err(Error::InvalidSpec(format!("{t} has no complex roots"))),
    }
}

/// Single roots as the case analysis describes them: all roots, the long
/// roots, or the imaginary roots.
pub fn expected_singles(rf: &RealForm) -> Vec<RootIndex> {
    let rs = rf.root_system();
    let t = rs.cartan_type();
    if rf.inv.has_complex_roots() {
        rs.roots().filter(|&r| rf.inv.is_imaginary(r)).collect()
    } else {
        match t.family {
            Family::A | Family::D | Family::E => rs.roots().collect(),
            _ => rs.roots().filter(|&r| rs.is_long(r)).collect(),
        }
    }
}

/// Closed-form test for "(x, y) is equivalent to an iop".
pub fn iop_class_predicate(rf: &RealForm) -> Result<Box<dyn Fn(RootIndex, RootIndex) -> bool + Sync + '_>> {
    let rs = rf.root_system();
    let t = rs.cartan_type();
    let orth = move |x: RootIndex, y: RootIndex| rs.dot_scaled(x, y) == 0;
    if !rf.inv.has_complex_roots() {
        return Ok(match t.family {
            Family::A | Family::D | Family::E => Box::new(|_, _| false),
            // ±{e_i + e_j, e_i − e_j}
            Family::B => Box::new(move |x, y| {
                let (sx, sy) = (support(rs.scaled_coords(x)), support(rs.scaled_coords(y)));
                sx.len() == 2 && sx == sy && !rs.proportional(x, y)
            }),
            // ±{2e_i, 2e_j}
            Family::C => Box::new(move |x, y| {
                let (sx, sy) = (support(rs.scaled_coords(x)), support(rs.scaled_coords(y)));
                sx.len() == 1 && sy.len() == 1 && sx != sy
            }),
            Family::F => Box::new(move |x, y| rs.is_long(x) && rs.is_long(y) && orth(x, y)),
            Family::G => Box::new(orth),
        });
    }
    require_standard_theta(rf)?;
    match t.family {
        Family::A => {
            let m = rs.ambient_dim();
            Ok(Box::new(move |x, y| {
                // ±{e_i − e_{m+1−i}, e_j − e_{m+1−j}} with i ≠ j, i + j ≠ m + 1.
                let mirror = |v: &[i64]| {
                    let s = support(v);
                    (s[0] + s[1] == m - 1).then_some(s[0])
                };
                match (mirror(rs.scaled_coords(x)), mirror(rs.scaled_coords(y))) {
                    (Some(i), Some(j)) => i != j,
                    _ => false,
                }
            }))
        }
        Family::D => {
            let n = rs.ambient_dim();
            Ok(Box::new(move |x, y| {
                let (sx, sy) = (support(rs.scaled_coords(x)), support(rs.scaled_coords(y)));
                sx.len() == 2 && sx == sy && sx[1] != n - 1 && !rs.proportional(x, y)
            }))
        }
        Family::E if t.rank == 6 => {
            Ok(Box::new(move |x, y| rf.inv.is_imaginary(x) && rf.inv.is_imaginary(y) && orth(x, y)))
        }
        _ => Err(Error::InvalidSpec(format!("{t} has no complex roots"))),
    }
}
