//! Finite Weyl groups as signed permutations of the positive roots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cartan::CartanType;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{positive_code, root_index, CoweightQ, Root, RootCode, RootSystem, Q};

/// Default bound on `|W|` for full enumeration and orbit-based conjugacy.
pub const DEFAULT_GROUP_BUDGET: u64 = 1_000_000;

/// A set of Dynkin nodes; bit `i` is node `i` (0 is the affine node).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeSet(pub u16);

/// Subset of the finite nodes `1..=n`.
pub type ParabolicSubset = NodeSet;

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_nodes<I: IntoIterator<Item = usize>>(nodes: I) -> NodeSet {
        NodeSet(nodes.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// All finite nodes `1..=n`.
    pub fn finite(n: usize) -> NodeSet {
        NodeSet::from_nodes(1..=n)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn insert(self, i: usize) -> NodeSet {
        NodeSet(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> NodeSet {
        NodeSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn minus(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.contains(i))
    }

    pub fn nodes(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Parses `"0,2,3"`; the empty string (or `"-"`) is the empty set.
    pub fn parse(s: &str) -> Result<NodeSet> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "{}" {
            return Ok(NodeSet::EMPTY);
        }
        let s = s.trim_start_matches('{').trim_end_matches('}');
        let mut set = NodeSet::EMPTY;
        for part in s.split(',') {
            let i: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad node index {part:?}")))?;
            if i > 8 {
                return Err(Error::Parse(format!("node index {i} out of range")));
            }
            set = set.insert(i);
        }
        Ok(set)
    }

    /// Rejects nodes outside `1..=n` (or `0..=n` with `allow_affine`).
    pub fn check(self, n: usize, allow_affine: bool) -> Result<()> {
        for i in self.iter() {
            if i > n || (i == 0 && !allow_affine) {
                return Err(Error::Invalid(format!("node {i} not in the diagram (rank {n})")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Element of a finite Weyl group, stored as the image of every positive root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElem {
    ty: CartanType,
    perm: Box<[RootCode]>,
    len: u32,
}

impl WeylElem {
    fn from_perm(ty: CartanType, perm: Box<[RootCode]>) -> WeylElem {
        let len = perm.iter().filter(|&&c| c < 0).count() as u32;
        WeylElem { ty, perm, len }
    }

    pub fn identity(rs: &RootSystem) -> WeylElem {
        let perm: Box<[RootCode]> = (0..rs.num_positive_roots()).map(positive_code).collect();
        WeylElem::from_perm(rs.cartan_type(), perm)
    }

    /// The simple reflection `s_i`, `i` in `1..=n`.
    pub fn simple(rs: &RootSystem, i: usize) -> WeylElem {
        WeylElem::from_perm(rs.cartan_type(), rs.simple_action(i - 1).into())
    }

    /// The reflection in the positive root with index `k`.
    pub fn reflection(rs: &RootSystem, k: usize) -> WeylElem {
        WeylElem::from_perm(rs.cartan_type(), rs.reflection_action(k).into())
    }

    /// `s_{i_1} s_{i_2} ...` for a word of 1-based node indices.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<WeylElem> {
        let mut w = WeylElem::identity(rs);
        for &i in word {
            if i == 0 || i > rs.rank() {
                return Err(Error::Parse(format!("simple index {i} out of range for {}", rs.cartan_type())));
            }
            w = w.mul_simple(rs, i);
        }
        Ok(w)
    }

    pub fn longest(rs: &RootSystem) -> WeylElem {
        WeylElem::longest_of(rs, NodeSet::finite(rs.rank()))
    }

    /// The longest element `w_J` of the standard parabolic subgroup `W_J`.
    pub fn longest_of(rs: &RootSystem, j: ParabolicSubset) -> WeylElem {
        let mut w = WeylElem::identity(rs);
        while let Some(i) = j.iter().find(|&i| i >= 1 && w.perm[i - 1] > 0) {
            w = w.mul_simple(rs, i);
        }
        w
    }

    /// Parses `"1.2.1"`, `"e"` or `"w0"`.
    pub fn parse(rs: &RootSystem, s: &str) -> Result<WeylElem> {
        let s = s.trim();
        match s {
            "e" => Ok(WeylElem::identity(rs)),
            "w0" => Ok(WeylElem::longest(rs)),
            "" => Err(Error::Parse("empty element".into())),
            _ => {
                let word: Vec<usize> = s
                    .split('.')
                    .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad element {s:?}"))))
                    .collect::<Result<_>>()?;
                WeylElem::from_word(rs, &word)
            }
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn length(&self) -> usize {
        self.len as usize
    }

    pub fn perm(&self) -> &[RootCode] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    fn check(&self, other: &WeylElem) -> Result<()> {
        if self.ty != other.ty {
            return Err(Error::Mismatch {
                left: self.ty,
                right: other.ty,
            });
        }
        Ok(())
    }

    #[inline]
    fn apply_code(&self, c: RootCode) -> RootCode {
        let img = self.perm[root_index(c)];
        if c < 0 {
            -img
        } else {
            img
        }
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &WeylElem) -> Result<WeylElem> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    /// Unchecked `self * other`; both must come from the same root system.
    pub fn mul(&self, other: &WeylElem) -> WeylElem {
        let perm: Box<[RootCode]> = other.perm.iter().map(|&c| self.apply_code(c)).collect();
        WeylElem::from_perm(self.ty, perm)
    }

    pub fn inverse(&self) -> WeylElem {
        let mut perm = vec![0 as RootCode; self.perm.len()];
        for (k, &c) in self.perm.iter().enumerate() {
            let code = positive_code(k);
            perm[root_index(c)] = if c < 0 { -code } else { code };
        }
        WeylElem {
            ty: self.ty,
            perm: perm.into(),
            len: self.len,
        }
    }

    /// `self * s_i`.
    pub fn mul_simple(&self, rs: &RootSystem, i: usize) -> WeylElem {
        let perm: Box<[RootCode]> = rs.simple_action(i - 1).iter().map(|&c| self.apply_code(c)).collect();
        WeylElem::from_perm(self.ty, perm)
    }

    /// `s_i * self`.
    pub fn simple_mul(&self, rs: &RootSystem, i: usize) -> WeylElem {
        let s = rs.simple_action(i - 1);
        let perm: Box<[RootCode]> = self
            .perm
            .iter()
            .map(|&c| {
                let img = s[root_index(c)];
                if c < 0 {
                    -img
                } else {
                    img
                }
            })
            .collect();
        WeylElem::from_perm(self.ty, perm)
    }

    /// Code of `w(beta)` for a signed root code.
    pub fn act_code(&self, c: RootCode) -> RootCode {
        self.apply_code(c)
    }

    pub fn act_on(&self, rs: &RootSystem, beta: &Root) -> Result<Root> {
        if self.ty != rs.cartan_type() {
            return Err(Error::Mismatch {
                left: self.ty,
                right: rs.cartan_type(),
            });
        }
        Ok(rs.root_from_code(self.apply_code(rs.code_of(beta)?)))
    }

    /// `w(lambda)` for a coweight in simple-coroot coordinates.
    pub fn act_on_coweight(&self, rs: &RootSystem, lambda: &CoweightQ) -> Result<CoweightQ> {
        if lambda.cartan_type() != self.ty {
            return Err(Error::Mismatch {
                left: self.ty,
                right: lambda.cartan_type(),
            });
        }
        let n = rs.rank();
        let mut out = vec![Q::default(); n];
        for (k, ck) in lambda.coords().iter().enumerate() {
            let c = self.perm[k];
            let cv = rs.coroot_coords(root_index(c));
            for i in 0..n {
                let term = ck * crate::rootsys::q(cv[i]);
                if c < 0 {
                    out[i] -= term;
                } else {
                    out[i] += term;
                }
            }
        }
        CoweightQ::from_coroot_coords(self.ty, out)
    }

    /// `w(lambda)` for an integral coweight in fundamental coordinates.
    pub fn act_fundamental(&self, rs: &RootSystem, lambda: &[i64]) -> Vec<i64> {
        let inv = self.inverse();
        (0..rs.rank())
            .map(|i| {
                let c = inv.perm[i];
                let r = rs.root_coords(root_index(c));
                let v: i64 = r.iter().zip(lambda).map(|(a, b)| a * b).sum();
                if c < 0 {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.perm[i - 1] < 0
    }

    /// `s_i w < w`, i.e. `w^{-1}(alpha_i) < 0`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let code = positive_code(i - 1);
        self.perm.iter().any(|&c| c == -code)
    }

    pub fn right_descents(&self) -> NodeSet {
        NodeSet::from_nodes((1..=self.ty.rank()).filter(|&i| self.has_right_descent(i)))
    }

    pub fn left_descents(&self) -> NodeSet {
        self.inverse().right_descents()
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while !w.is_identity() {
            let inv = w.inverse();
            let i = (1..=rs.rank()).find(|&i| inv.perm[i - 1] < 0).expect("nonidentity has a descent");
            word.push(i);
            w = w.simple_mul(rs, i);
        }
        word
    }

    /// Dot-separated reduced word, `e` for the identity.
    pub fn to_word_string(&self, rs: &RootSystem) -> String {
        let w = self.reduced_word(rs);
        if w.is_empty() {
            "e".into()
        } else {
            w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
        }
    }

    /// Inversion set `{ alpha > 0 : w(alpha) < 0 }` as positive-root indices.
    pub fn inversions(&self) -> Vec<usize> {
        (0..self.perm.len()).filter(|&k| self.perm[k] < 0).collect()
    }

    /// Bruhat order by the descent recursion.
    pub fn bruhat_le(&self, rs: &RootSystem, w: &WeylElem) -> Result<bool> {
        self.check(w)?;
        let mut v = self.clone();
        let mut w = w.clone();
        loop {
            if v.len > w.len {
                return Ok(false);
            }
            if w.is_identity() {
                return Ok(v.is_identity());
            }
            let winv = w.inverse();
            let s = (1..=rs.rank()).find(|&i| winv.perm[i - 1] < 0).expect("descent");
            w = w.simple_mul(rs, s);
            if v.has_left_descent(s) {
                v = v.simple_mul(rs, s);
            }
        }
    }

    /// Matrix of `w` on the root lattice; column `j` holds `w(alpha_j)`.
    pub fn root_matrix(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        let n = rs.rank();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            let c = self.perm[j];
            let r = rs.root_coords(root_index(c));
            for i in 0..n {
                m[i][j] = if c < 0 { -r[i] } else { r[i] };
            }
        }
        m
    }

    /// Reflection length `rank(w - 1)`.
    pub fn reflection_length(&self, rs: &RootSystem) -> usize {
        let mut m = self.root_matrix(rs);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= 1;
        }
        linalg::rank(&m)
    }

    pub fn is_involution(&self) -> bool {
        self.mul(self).is_identity()
    }

    /// Packs the images of the simple roots; determines the element for rank <= 8.
    pub fn key(&self) -> u128 {
        pack_key(&self.perm[..self.ty.rank()])
    }
}

fn pack_key(simple_images: &[RootCode]) -> u128 {
    simple_images
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &c)| acc | (u128::from(c as u16) << (16 * i)))
}

/// Fully enumerated Weyl group with a right-multiplication table.
#[derive(Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    np: usize,
    perms: Vec<RootCode>,
    lengths: Vec<u16>,
    index: HashMap<u128, u32>,
    right: Vec<u32>,
}

impl WeylGroup {
    /// BFS from the identity by right multiplication; refused if `|W| > budget`.
    pub fn new(rs: Arc<RootSystem>, budget: u64) -> Result<WeylGroup> {
        let order = rs.cartan_type().weyl_order();
        if order > u128::from(budget) {
            return Err(Error::budget("Weyl group", u64::try_from(order).unwrap_or(u64::MAX), budget));
        }
        let order = order as usize;
        let n = rs.rank();
        let np = rs.num_positive_roots();
        let mut perms: Vec<RootCode> = Vec::with_capacity(order * np);
        let mut lengths: Vec<u16> = Vec::with_capacity(order);
        let mut index: HashMap<u128, u32> = HashMap::with_capacity(order);
        let mut right = vec![u32::MAX; order * n];

        let id = WeylElem::identity(&rs);
        index.insert(id.key(), 0);
        perms.extend_from_slice(&id.perm);
        lengths.push(0);
        let mut head = 0usize;
        let mut buf = vec![0 as RootCode; np];
        while head < lengths.len() {
            for i in 0..n {
                if right[head * n + i] != u32::MAX {
                    continue;
                }
                let s = rs.simple_action(i);
                let cur = &perms[head * np..(head + 1) * np];
                for (k, &c) in s.iter().enumerate() {
                    let img = cur[root_index(c)];
                    buf[k] = if c < 0 { -img } else { img };
                }
                let key = pack_key(&buf[..n]);
                let idx = match index.get(&key) {
                    Some(&idx) => idx,
                    None => {
                        let idx = lengths.len() as u32;
                        index.insert(key, idx);
                        let l = buf.iter().filter(|&&c| c < 0).count() as u16;
                        perms.extend_from_slice(&buf);
                        lengths.push(l);
                        idx
                    }
                };
                right[head * n + i] = idx;
                right[idx as usize * n + i] = head as u32;
            }
            head += 1;
        }
        assert_eq!(lengths.len(), order, "enumeration reached |W|");
        Ok(WeylGroup {
            rs,
            np,
            perms,
            lengths,
            index,
            right,
        })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn length(&self, idx: usize) -> usize {
        self.lengths[idx] as usize
    }

    pub fn perm(&self, idx: usize) -> &[RootCode] {
        &self.perms[idx * self.np..(idx + 1) * self.np]
    }

    pub fn elem(&self, idx: usize) -> WeylElem {
        WeylElem {
            ty: self.rs.cartan_type(),
            perm: self.perm(idx).into(),
            len: u32::from(self.lengths[idx]),
        }
    }

    pub fn index_of(&self, w: &WeylElem) -> usize {
        self.index_of_key(w.key())
    }

    pub(crate) fn index_of_key(&self, key: u128) -> usize {
        self.index[&key] as usize
    }

    /// Index of `w s_i`, `i` 1-based.
    pub fn right_mul_simple(&self, idx: usize, i: usize) -> usize {
        self.right[idx * self.rs.rank() + i - 1] as usize
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn longest_index(&self) -> usize {
        self.index_of(&WeylElem::longest(&self.rs))
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElem> + '_ {
        (0..self.order()).map(|i| self.elem(i))
    }

    /// Minimal length representatives of `W_J \ W`: `w^{-1}(alpha_j) > 0` for `j` in `J`.
    pub fn min_coset_reps(&self, j: ParabolicSubset) -> Vec<usize> {
        (0..self.order())
            .filter(|&idx| {
                let p = self.perm(idx);
                j.iter().filter(|&i| i >= 1).all(|i| {
                    let code = positive_code(i - 1);
                    !p.contains(&-code)
                })
            })
            .collect()
    }
}

/// Which method decided an involution conjugacy question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjugacyMethod {
    Orbit,
    CanonicalForm,
}

impl fmt::Display for ConjugacyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjugacyMethod::Orbit => "orbit",
            ConjugacyMethod::CanonicalForm => "canonical-form",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyVerdict {
    pub conjugate: bool,
    pub method: ConjugacyMethod,
}

/// Conjugacy of two involutions: orbit enumeration when `|W| <= orbit_bound`,
/// otherwise comparison of canonical standard-parabolic forms.
pub fn involutions_conjugate(
    rs: &RootSystem,
    a: &WeylElem,
    b: &WeylElem,
    orbit_bound: u64,
) -> Result<ConjugacyVerdict> {
    a.check(b)?;
    if !a.is_involution() || !b.is_involution() {
        return Err(Error::NotInvolution);
    }
    if rs.cartan_type().weyl_order() <= u128::from(orbit_bound) {
        Ok(ConjugacyVerdict {
            conjugate: conjugacy_orbit(rs, a).contains(&b.key()),
            method: ConjugacyMethod::Orbit,
        })
    } else {
        Ok(ConjugacyVerdict {
            conjugate: involution_canonical_form(rs, a)? == involution_canonical_form(rs, b)?,
            method: ConjugacyMethod::CanonicalForm,
        })
    }
}

/// Keys of the conjugacy class of `a`, closed under `w -> s_i w s_i`.
pub fn conjugacy_orbit(rs: &RootSystem, a: &WeylElem) -> HashSet<u128> {
    let mut seen = HashSet::from([a.key()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(w) = queue.pop_front() {
        for i in 1..=rs.rank() {
            let c = w.simple_mul(rs, i).mul_simple(rs, i);
            if seen.insert(c.key()) {
                queue.push_back(c);
            }
        }
    }
    seen
}

/// Canonical representative of the conjugacy class of an involution: the
/// smallest subset `K` (as a bitmask) such that the involution is conjugate
/// to `w_K` and `w_K = -1` on the span of `K`.
pub fn involution_canonical_form(rs: &RootSystem, w: &WeylElem) -> Result<NodeSet> {
    if !w.is_involution() {
        return Err(Error::NotInvolution);
    }
    let k = conjugate_to_standard(rs, w);
    Ok(*subset_class(rs, k).iter().min().expect("class contains K"))
}

/// A standard parabolic `K` with `w ~ w_K` and `w_K = -1` on span(K).
pub fn conjugate_to_standard(rs: &RootSystem, w: &WeylElem) -> NodeSet {
    let n = rs.rank();
    let a = rs.cartan_matrix();
    let minus_one = (0..rs.num_positive_roots())
        .filter(|&k| w.perm()[k] == -positive_code(k))
        .count();
    for seed in 0u64.. {
        let u: Vec<i64> = (0..n as u64)
            .map(|i| 1 + ((seed * 7919 + i * 104_729 + i * i * 31) % 1009) as i64)
            .collect();
        let wu = w.act_fundamental(rs, &u);
        let mut v: Vec<i64> = u.iter().zip(&wu).map(|(x, y)| x + y).collect();
        let zeros = (0..rs.num_positive_roots())
            .filter(|&k| rs.root_coords(k).iter().zip(&v).map(|(c, x)| c * x).sum::<i64>() == 0)
            .count();
        if zeros != minus_one {
            continue;
        }
        while let Some(i) = (0..n).find(|&i| v[i] < 0) {
            let vi = v[i];
            for j in 0..n {
                v[j] -= a[i][j] * vi;
            }
        }
        return NodeSet::from_nodes((0..n).filter(|&i| v[i] == 0).map(|i| i + 1));
    }
    unreachable!()
}

/// The W-equivalence class of a subset of simple roots, generated by the moves
/// `K -> sigma_L(K)` with `L = K + {s}` and `w_L(alpha_j) = -alpha_{sigma(j)}`.
pub fn subset_class(rs: &RootSystem, k: NodeSet) -> HashSet<NodeSet> {
    let n = rs.rank();
    let mut seen = HashSet::from([k]);
    let mut queue = VecDeque::from([k]);
    while let Some(cur) = queue.pop_front() {
        for s in 1..=n {
            if cur.contains(s) {
                continue;
            }
            let l = cur.insert(s);
            let wl = WeylElem::longest_of(rs, l);
            let mut img = NodeSet::EMPTY;
            let mut ok = true;
            for j in cur.iter() {
                let c = wl.perm()[j - 1];
                let idx = root_index(c);
                if c > 0 || idx >= n {
                    ok = false;
                    break;
                }
                img = img.insert(idx + 1);
            }
            if ok && seen.insert(img) {
                queue.push_back(img);
            }
        }
    }
    seen
}

/// Whether `w_K` acts as `-1` on the span of `K`.
pub fn is_minus_one_on_span(rs: &RootSystem, k: NodeSet) -> bool {
    let wk = WeylElem::longest_of(rs, k);
    k.iter().all(|j| wk.perm()[j - 1] == -positive_code(j - 1))
}
