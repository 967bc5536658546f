//! The minimum of `x -> d(x, x w0)` over semi-affine quotients, the explicit
//! constructions in types A, B, C, and good decompositions of `w0`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{
    check_level, finite_longest, in_semi_affine_quotient, longest_affine, semi_affine_quotient, AffineElem,
    LevelType,
};
use crate::cartan::Family;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::weyl::{conjugacy_orbit, involutions_conjugate, ConjugacyMethod, NodeSet, WeylElem};

/// `l_R(w0) + l(w_J) - l_R(w_J)`.
pub fn theorem_min_rhs(rs: &RootSystem, j: LevelType) -> Result<usize> {
    let wj = longest_affine(rs, j)?;
    let w0 = WeylElem::longest(rs);
    Ok(w0.reflection_length(rs) + wj.length(rs) - wj.finite().reflection_length(rs))
}

/// `l(w_J) - l_R(w_J)` for a level `J`.
pub fn length_excess(rs: &RootSystem, j: LevelType) -> Result<usize> {
    let wj = longest_affine(rs, j)?;
    Ok(wj.length(rs) - wj.finite().reflection_length(rs))
}

#[derive(Clone, Debug, Serialize)]
pub struct MinDistanceReport {
    pub level: String,
    pub quotient_size: usize,
    pub min_value: usize,
    pub argmin: Vec<String>,
    pub rhs: usize,
    pub matches: bool,
    /// `d(x, x w0) >= rhs` for every scanned `x`.
    pub lower_bound_ok: bool,
}

/// Exhaustive scan of `d(x, x w0)` over `^J W`.
pub fn min_distance_scan(ctx: &Context, j: LevelType) -> Result<MinDistanceReport> {
    let rs = &ctx.rs;
    check_level(rs, j)?;
    let rhs = theorem_min_rhs(rs, j)?;
    let g = ctx.group()?;
    let table = ctx.xw0_distances()?;
    let quot = semi_affine_quotient(&g, j)?;
    let dists: Vec<usize> = quot.iter().map(|&x| table[x] as usize).collect();
    let min_value = *dists.iter().min().expect("quotient is nonempty");
    let argmin = quot
        .iter()
        .zip(&dists)
        .filter(|(_, &d)| d == min_value)
        .map(|(&x, _)| g.elem(x).to_word_string(rs))
        .collect();
    Ok(MinDistanceReport {
        level: j.to_string(),
        quotient_size: quot.len(),
        min_value,
        argmin,
        rhs,
        matches: min_value == rhs,
        lower_bound_ok: dists.iter().all(|&d| d >= rhs),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyLemmaCheck {
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

/// Checks `d(x, x w0) = l(y) + d(x, ybar x w0)` for `x` in `^J W`, `y` in `W~_J`.
pub fn verify_key_lemma(ctx: &Context, j: LevelType, x: &WeylElem, y: &AffineElem) -> Result<KeyLemmaCheck> {
    let rs = &ctx.rs;
    check_level(rs, j)?;
    if !in_semi_affine_quotient(rs, x, j) {
        return Err(Error::Invalid(format!("{} is not in ^J W for J = {j}", x.to_word_string(rs))));
    }
    let (word, tau) = y.reduced_word(rs);
    if tau != AffineElem::identity(rs) || word.iter().any(|&s| !j.contains(s)) {
        return Err(Error::Invalid(format!("{} is not in W~_J for J = {j}", y.to_display(rs))));
    }
    let g = ctx.group()?;
    let q = ctx.qbg()?;
    let w0 = WeylElem::longest(rs);
    let xi = g.index_of(x);
    let lhs = q.distance(xi, g.index_of(&x.mul(&w0)));
    let rhs = word.len() + q.distance(xi, g.index_of(&y.finite().mul(x).mul(&w0)));
    Ok(KeyLemmaCheck {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// Elements `x` of `^J W` with `x <= x w0`, as group indices.
pub fn below_x_w0(ctx: &Context, j: LevelType) -> Result<Vec<usize>> {
    let rs = &ctx.rs;
    let g = ctx.group()?;
    let w0 = WeylElem::longest(rs);
    let quot = semi_affine_quotient(&g, j)?;
    Ok(quot
        .into_par_iter()
        .filter(|&x| {
            let e = g.elem(x);
            e.bruhat_le(rs, &e.mul(&w0)).expect("same type")
        })
        .collect())
}

/// Connected components of `J` (finite nodes) in the Dynkin diagram, each sorted.
pub fn components(rs: &RootSystem, j: NodeSet) -> Vec<Vec<usize>> {
    let a = rs.cartan_matrix();
    let mut left: Vec<usize> = j.iter().filter(|&i| i >= 1).collect();
    let mut out = Vec::new();
    while let Some(start) = left.first().copied() {
        let mut comp = vec![start];
        let mut k = 0;
        while k < comp.len() {
            let u = comp[k];
            for &v in &left {
                if !comp.contains(&v) && a[u - 1][v - 1] != 0 {
                    comp.push(v);
                }
            }
            k += 1;
        }
        left.retain(|v| !comp.contains(v));
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// `s_a s_{a+1} ... s_b`, empty when `a > b`.
fn interval_word(a: i64, b: i64) -> Vec<usize> {
    if a > b || a < 1 {
        return Vec::new();
    }
    (a..=b).map(|k| k as usize).collect()
}

/// Factor for removing position `p` from a type `A_m` diagram, in positions.
fn factor_a(m: usize, p: usize) -> Vec<usize> {
    let (m_, p_) = (m as i64, p as i64);
    if p > m.div_ceil(2) {
        return factor_a(m, m + 1 - p).into_iter().map(|k| m + 1 - k).collect();
    }
    if p == 1 {
        return interval_word(1, m_ / 2);
    }
    let mut word = Vec::new();
    for k in 0..p_ / 2 {
        word.extend(interval_word(p_ - k, m_ - k));
    }
    if p % 2 == 1 {
        word.extend(interval_word((p_ + 1) / 2, m_ / 2));
    }
    word
}

/// Factor for removing position `p` from a type `B_m`/`C_m` diagram (node `m`
/// the special end), in positions.
fn factor_bc(m: usize, p: usize) -> Vec<usize> {
    let (m_, p_) = (m as i64, p as i64);
    if p == 1 {
        return interval_word(1, m_ - 1);
    }
    let c = (p_ + 1) / 2;
    let gamma = if p % 2 == 0 { 2 } else { 1 };
    let mut word = Vec::new();
    for kappa in 0..p_ / 2 {
        word.extend(interval_word(p_ - kappa, m_));
    }
    for eta in 0..c {
        word.extend(interval_word(c - eta, m_ - gamma - 2 * eta));
    }
    word
}

/// The factor `i` in `^{J - j} W_J` used to pass from `J` to `J - {j}`.
pub fn classical_factor(rs: &RootSystem, j_set: NodeSet, j: usize) -> Result<WeylElem> {
    let fam = rs.cartan_type().family();
    let n = rs.rank();
    if !matches!(fam, Family::A | Family::B | Family::C) {
        return Err(Error::Unsupported(format!(
            "explicit construction is only available in types A, B, C (got {})",
            rs.cartan_type()
        )));
    }
    if !j_set.contains(j) {
        return Err(Error::Invalid(format!("node {j} not in {j_set}")));
    }
    let comp = components(rs, j_set)
        .into_iter()
        .find(|c| c.contains(&j))
        .expect("j lies in some component");
    let m = comp.len();
    let p = j - comp[0] + 1;
    let positions = if fam != Family::A && comp.contains(&n) {
        factor_bc(m, p)
    } else {
        factor_a(m, p)
    };
    let word: Vec<usize> = positions.into_iter().map(|k| comp[0] + k - 1).collect();
    WeylElem::from_word(rs, &word)
}

/// Element `x` of `^J W` with `x <= x w0` and `l(x)` as small as the
/// minimum-distance formula allows, assembled by downward induction from `S`.
pub fn construct_x_classical(rs: &RootSystem, j: NodeSet) -> Result<WeylElem> {
    let n = rs.rank();
    j.check(n, false)?;
    let mut cur = NodeSet::finite(n);
    let mut x = WeylElem::identity(rs);
    for node in 1..=n {
        if j.contains(node) {
            continue;
        }
        let i = classical_factor(rs, cur, node)?;
        x = i.mul(&x);
        cur = cur.remove(node);
    }
    Ok(x)
}

fn odd_nodes(k: usize) -> impl Iterator<Item = usize> {
    (0..k).map(|t| 2 * t + 1)
}

/// The subset `I` paired with `J` in types A-D.
pub fn classical_assignment(rs: &RootSystem, j: NodeSet) -> Result<NodeSet> {
    let n = rs.rank();
    j.check(n, false)?;
    let comps = components(rs, j);
    match rs.cartan_type().family() {
        Family::A => {
            let p: usize = comps.iter().map(|c| c.len().div_ceil(2)).sum();
            Ok(if 2 * p >= n { NodeSet::EMPTY } else { NodeSet::from_nodes((p + 1)..=(n - p)) })
        }
        Family::B | Family::C => {
            let l = comps.iter().find(|c| c.contains(&n)).map_or(0, Vec::len);
            let p: usize = comps.iter().filter(|c| !c.contains(&n)).map(|c| c.len().div_ceil(2)).sum();
            Ok(NodeSet::from_nodes(odd_nodes(p).chain((2 * p + l + 1)..=n)))
        }
        Family::D => {
            let l = if j.contains(n - 1) && j.contains(n) {
                let mut l = 2;
                while l < n && j.contains(n - l) {
                    l += 1;
                }
                l
            } else {
                0
            };
            let rest = j.minus(NodeSet::from_nodes((n + 1 - l)..=n));
            let k: usize = components(rs, rest).iter().map(|c| c.len().div_ceil(2)).sum();
            if 2 * k >= n {
                // A maximal family of orthogonal roots: two classes, told apart by conjugacy.
                let full = NodeSet::finite(n);
                let wj = WeylElem::longest_of(rs, j);
                let minus_nm1 = WeylElem::longest_of(rs, full.remove(n - 1));
                let in_first = involutions_conjugate(rs, &wj, &minus_nm1, 0)?.conjugate;
                let last = if (n % 4 == 0) == in_first { n } else { n - 1 };
                return Ok(NodeSet::from_nodes(odd_nodes((n - 2) / 2).chain([last])));
            }
            let w_kl = |big_l: usize| NodeSet::from_nodes(odd_nodes(k).chain((n + 1 - big_l)..=n));
            let gap = n as i64 - (2 * k + l) as i64;
            Ok(if gap == 0 || (gap == 1 && l % 2 == 0) {
                w_kl(0)
            } else if gap >= 1 && l % 2 == 1 {
                w_kl(n - 2 * k - l + 1)
            } else {
                w_kl((n - 2 * k).saturating_sub(l))
            })
        }
        _ => Err(Error::Unsupported(format!(
            "classical assignment is for types A-D (got {})",
            rs.cartan_type()
        ))),
    }
}

/// One row of an exceptional table: `(J, l_R(w_J))` paired with `(I, l_R(w_I))`.
/// Each side lists interchangeable representatives.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub j: Vec<NodeSet>,
    pub lr_j: usize,
    pub i: Vec<NodeSet>,
    pub lr_i: usize,
}

fn ns(nodes: &[usize]) -> NodeSet {
    NodeSet::from_nodes(nodes.iter().copied())
}

fn row(j: &[&[usize]], lr_j: usize, i: &[&[usize]], lr_i: usize) -> TableRow {
    TableRow {
        j: j.iter().map(|x| ns(x)).collect(),
        lr_j,
        i: i.iter().map(|x| ns(x)).collect(),
        lr_i,
    }
}

/// The exceptional tables, with concrete representatives for each class.
pub fn exceptional_rows(rs: &RootSystem) -> Result<Vec<TableRow>> {
    let ty = rs.cartan_type();
    let all: Vec<usize> = (1..=ty.rank()).collect();
    let rows = match (ty.family(), ty.rank()) {
        (Family::E, 6) => vec![
            row(&[&[]], 0, &[&all], 4),
            row(&[&[1]], 1, &[&[1, 3, 4, 5, 6]], 3),
            row(&[&[1, 4]], 2, &[&[3, 4, 5]], 2),
            row(&[&[1, 4, 6]], 3, &[&[4]], 1),
            row(&[&[2, 3, 4, 5], &[1, 2, 3, 4, 5]], 4, &[&[]], 0),
        ],
        (Family::E, 7) => vec![
            row(&[&[]], 0, &[&all], 7),
            row(&[&[1]], 1, &[&[2, 3, 4, 5, 6, 7]], 6),
            row(&[&[1, 4]], 2, &[&[2, 3, 4, 5, 7]], 5),
            row(&[&[1, 4, 6]], 3, &[&[1, 2, 5, 7]], 4),
            row(&[&[2, 5, 7]], 3, &[&[2, 3, 4, 5]], 4),
        ],
        (Family::E, 8) => vec![
            row(&[&[]], 0, &[&all], 8),
            row(&[&[1]], 1, &[&[1, 2, 3, 4, 5, 6, 7]], 7),
            row(&[&[1, 4]], 2, &[&[2, 3, 4, 5, 6, 7]], 6),
            row(&[&[1, 4, 6]], 3, &[&[1, 2, 5, 8]], 4),
            row(&[&[2, 3, 5, 7]], 4, &[&[1, 4, 6, 8]], 4),
            row(&[&[2, 3, 4, 5]], 4, &[&[2, 3, 4, 5]], 4),
        ],
        (Family::F, 4) => vec![
            row(&[&[]], 0, &[&all], 4),
            row(&[&[1], &[2]], 1, &[&[2, 3, 4]], 3),
            row(&[&[3], &[4]], 1, &[&[1, 2, 3]], 3),
            row(&[&[1, 3], &[1, 4], &[2, 4]], 2, &[&[1, 3], &[1, 4], &[2, 4]], 2),
            row(&[&[2, 3]], 2, &[&[2, 3]], 2),
        ],
        (Family::G, 2) => vec![
            row(&[&[]], 0, &[&all], 2),
            row(&[&[1]], 1, &[&[1]], 1),
            row(&[&[2]], 1, &[&[2]], 1),
        ],
        _ => {
            return Err(Error::Unsupported(format!("no exceptional table for {ty}")));
        }
    };
    Ok(rows)
}

/// Certification of one `(J, I)` pairing.
#[derive(Clone, Debug, Serialize)]
pub struct PairCertificate {
    pub j: String,
    pub i: String,
    pub lr_j: usize,
    pub lr_i: usize,
    /// `w_J ~ w0 w_I`.
    pub conjugate: bool,
    pub method: ConjugacyMethod,
    /// `l_R(w0 w_I) = l_R(w0) - l_R(w_I)` and `l_R(w0) = l_R(w_J) + l_R(w_I)`.
    pub lr_additive: bool,
}

impl PairCertificate {
    pub fn ok(&self) -> bool {
        self.conjugate && self.lr_additive
    }
}

/// Checks `w_J ~ w0 w_I` and reflection-length additivity.
pub fn certify_pair(rs: &RootSystem, j: NodeSet, i: NodeSet, orbit_bound: u64) -> Result<PairCertificate> {
    let w0 = WeylElem::longest(rs);
    let wj = WeylElem::longest_of(rs, j);
    let wi = WeylElem::longest_of(rs, i);
    let w0wi = w0.mul(&wi);
    let verdict = if w0wi.is_involution() {
        involutions_conjugate(rs, &wj, &w0wi, orbit_bound)?
    } else {
        crate::weyl::ConjugacyVerdict {
            conjugate: false,
            method: ConjugacyMethod::Orbit,
        }
    };
    let (lr0, lr_j, lr_i) = (w0.reflection_length(rs), wj.reflection_length(rs), wi.reflection_length(rs));
    Ok(PairCertificate {
        j: j.to_string(),
        i: i.to_string(),
        lr_j,
        lr_i,
        conjugate: verdict.conjugate,
        method: verdict.method,
        lr_additive: w0wi.reflection_length(rs) + lr_i == lr0 && lr_j + lr_i == lr0,
    })
}

/// Certification of an exceptional table row: for each `J` representative,
/// the first `I` representative that certifies (or the first one if none does).
#[derive(Clone, Debug, Serialize)]
pub struct RowCertificate {
    pub pairs: Vec<PairCertificate>,
    /// Table values `l_R(w_J)`, `l_R(w_I)` agree with the computed ones.
    pub values_match: bool,
}

impl RowCertificate {
    pub fn ok(&self) -> bool {
        self.values_match && self.pairs.iter().all(PairCertificate::ok)
    }
}

pub fn certify_row(rs: &RootSystem, row: &TableRow, orbit_bound: u64) -> Result<RowCertificate> {
    let mut pairs = Vec::new();
    let mut values_match = true;
    for &j in &row.j {
        let mut chosen = None;
        for &i in &row.i {
            let c = certify_pair(rs, j, i, orbit_bound)?;
            if c.ok() {
                chosen = Some(c);
                break;
            }
            chosen.get_or_insert(c);
        }
        let c = chosen.expect("row has an I representative");
        values_match &= c.lr_j == row.lr_j && c.lr_i == row.lr_i;
        pairs.push(c);
    }
    Ok(RowCertificate { pairs, values_match })
}

/// Table lookup by conjugacy class of `w_J`; the table is read in both directions.
pub fn exceptional_table(rs: &RootSystem, j: NodeSet, orbit_bound: u64) -> Result<NodeSet> {
    let rows = exceptional_rows(rs)?;
    let wj = WeylElem::longest_of(rs, j);
    let same = |k: NodeSet| -> Result<bool> {
        Ok(involutions_conjugate(rs, &wj, &WeylElem::longest_of(rs, k), orbit_bound)?.conjugate)
    };
    for row in &rows {
        if same(row.j[0])? {
            for &i in &row.i {
                if certify_pair(rs, j, i, orbit_bound)?.ok() {
                    return Ok(i);
                }
            }
            return Ok(row.i[0]);
        }
    }
    for row in &rows {
        if same(row.i[0])? {
            return Ok(row.j[0]);
        }
    }
    Err(Error::Invalid(format!("{j} matches no row of the {} table", rs.cartan_type())))
}

/// The paired subset from the classical assignment or the exceptional table.
pub fn assigned_subset(rs: &RootSystem, j: NodeSet, orbit_bound: u64) -> Result<NodeSet> {
    match rs.cartan_type().family() {
        Family::A | Family::B | Family::C | Family::D => classical_assignment(rs, j),
        _ => exceptional_table(rs, j, orbit_bound),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodDecomposition {
    pub level: String,
    /// For levels containing 0: a finite `J'` with `w_{J'}` conjugate to `bar w_J`.
    pub reduced_level: Option<String>,
    pub x: String,
    pub i: String,
    #[serde(skip)]
    pub x_elem: WeylElem,
    #[serde(skip)]
    pub i_set: NodeSet,
    /// Whether `I` came from the assignment rather than the exhaustive fallback.
    pub from_assignment: bool,
    pub lr_j: usize,
    pub lr_i: usize,
    /// `l(x w_I) = l(x) - l(w_I)`.
    pub length_condition: bool,
    /// `d(x, x w_I)` by BFS, when the graph is within budget.
    pub d_x_xwi: Option<usize>,
}

/// A finite `J'` with `w_{J'}` conjugate to the involution `w`, smallest bitmask first.
pub fn finite_level_for(rs: &RootSystem, w: &WeylElem, orbit_bound: u64) -> Result<NodeSet> {
    let n = rs.rank();
    let use_orbit = rs.cartan_type().weyl_order() <= u128::from(orbit_bound);
    let orbit = if use_orbit { Some(conjugacy_orbit(rs, w)) } else { None };
    for bits in 0u16..(1 << n) {
        let k = NodeSet(bits << 1);
        let wk = WeylElem::longest_of(rs, k);
        let hit = match &orbit {
            Some(o) => o.contains(&wk.key()),
            None => involutions_conjugate(rs, w, &wk, orbit_bound)?.conjugate,
        };
        if hit {
            return Ok(k);
        }
    }
    Err(Error::Invalid("involution is not conjugate to any w_K".into()))
}

/// Searches `x` in `^J W` (longest first, then lexicographic word) and `I`
/// (assigned first, then all subsets) with `w0 = (x^{-1} bar w_J x) w_I`,
/// `l_R`-additivity and `d(x, x w_I) = l_R(w_I)`.
pub fn decomposition_search(ctx: &Context, j: LevelType) -> Result<GoodDecomposition> {
    let rs = &ctx.rs;
    let n = rs.rank();
    let wbar = finite_longest(rs, j)?;
    let w0 = WeylElem::longest(rs);
    let lr0 = w0.reflection_length(rs);
    let lr_j = wbar.reflection_length(rs);
    let g = ctx.group()?;
    let q = ctx.qbg().ok();

    let reduced = if j.contains(0) {
        Some(finite_level_for(rs, &wbar, ctx.budgets.group)?)
    } else {
        None
    };
    let mut candidates = Vec::new();
    if let Ok(i) = assigned_subset(rs, reduced.unwrap_or(j), ctx.budgets.group) {
        candidates.push(i);
    }
    let assigned = candidates.first().copied();
    candidates.extend((0u16..(1 << n)).map(|b| NodeSet(b << 1)).filter(|&i| Some(i) != assigned));

    let mut quot: Vec<(usize, Vec<usize>, WeylElem)> = semi_affine_quotient(&g, j)?
        .into_iter()
        .map(|x| {
            let e = g.elem(x);
            (e.length(), e.reduced_word(rs), e)
        })
        .collect();
    quot.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));

    let mut tried = HashSet::new();
    for i in candidates {
        if !tried.insert(i) {
            continue;
        }
        let wi = WeylElem::longest_of(rs, i);
        let lr_i = wi.reflection_length(rs);
        if lr_j + lr_i != lr0 {
            continue;
        }
        let target = w0.mul(&wi);
        for (_, _, x) in &quot {
            if x.inverse().mul(&wbar).mul(x) != target {
                continue;
            }
            let xwi = x.mul(&wi);
            let length_condition = xwi.length() + wi.length() == x.length();
            let d = q.as_ref().map(|q| q.distance(g.index_of(x), g.index_of(&xwi)));
            let certified = match d {
                Some(d) => d == lr_i,
                None => length_condition,
            };
            if certified {
                return Ok(GoodDecomposition {
                    level: j.to_string(),
                    reduced_level: reduced.map(|k| k.to_string()),
                    x: x.to_word_string(rs),
                    i: i.to_string(),
                    x_elem: x.clone(),
                    i_set: i,
                    from_assignment: Some(i) == assigned,
                    lr_j,
                    lr_i,
                    length_condition,
                    d_x_xwi: d,
                });
            }
        }
    }
    Err(Error::NoDecomposition(j.to_string()))
}
