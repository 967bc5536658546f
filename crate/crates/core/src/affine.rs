//! Extended affine Weyl group `X_*(T) x W`, elements `t^lambda w`.
//!
//! Translations are integral coweights in fundamental coordinates, so
//! `<alpha_i, lambda> = lambda_i`. Node 0 is the affine simple reflection
//! `s_0 = t^{theta^vee} s_theta`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{positive_code, RootSystem};
use crate::weyl::{NodeSet, WeylElem, WeylGroup};

/// Subset of the affine nodes `0..=n`.
pub type LevelType = NodeSet;

/// Default cap on `<2 rho, mu>` for admissible-set enumeration.
pub const DEFAULT_ADM_CAP: i64 = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// `X_*(T) = P^vee`.
    #[default]
    Adjoint,
    /// `X_*(T) = Q^vee`.
    Sc,
}

impl std::str::FromStr for Lattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Lattice> {
        match s.trim().to_ascii_lowercase().as_str() {
            "adjoint" | "ad" => Ok(Lattice::Adjoint),
            "sc" | "simply-connected" => Ok(Lattice::Sc),
            _ => Err(Error::Parse(format!("unknown lattice {s:?} (adjoint|sc)"))),
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lattice::Adjoint => "adjoint",
            Lattice::Sc => "sc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElem {
    lambda: Vec<i64>,
    w: WeylElem,
}

pub(crate) fn pair_fund(root: &[i64], lambda: &[i64]) -> i64 {
    root.iter().zip(lambda).map(|(a, b)| a * b).sum()
}

/// Applies `s_i` (0-based `i`) to fundamental coordinates.
fn reflect_fund(rs: &RootSystem, v: &mut [i64], i: usize) {
    let a = rs.cartan_matrix();
    let vi = v[i];
    for (j, x) in v.iter_mut().enumerate() {
        *x -= a[i][j] * vi;
    }
}

/// Dominant representative of `W mu` and the minimal `z` with `z mu` dominant.
pub fn dominantize(rs: &RootSystem, mu: &[i64]) -> (Vec<i64>, WeylElem) {
    let mut v = mu.to_vec();
    let mut z = WeylElem::identity(rs);
    while let Some(i) = (0..rs.rank()).find(|&i| v[i] < 0) {
        reflect_fund(rs, &mut v, i);
        z = z.simple_mul(rs, i + 1);
    }
    (v, z)
}

/// The W-orbit of an integral coweight (fundamental coordinates), sorted.
pub fn weyl_orbit(rs: &RootSystem, mu: &[i64]) -> Vec<Vec<i64>> {
    let mut seen = HashSet::from([mu.to_vec()]);
    let mut queue = VecDeque::from([mu.to_vec()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..rs.rank() {
            if v[i] == 0 {
                continue;
            }
            let mut u = v.clone();
            reflect_fund(rs, &mut u, i);
            if seen.insert(u.clone()) {
                queue.push_back(u);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    out
}

/// `<2 rho, lambda>` for fundamental coordinates.
pub fn two_rho_fund(rs: &RootSystem, lambda: &[i64]) -> i64 {
    (0..rs.num_positive_roots()).map(|k| pair_fund(rs.root_coords(k), lambda)).sum()
}

impl AffineElem {
    pub fn new(rs: &RootSystem, lambda: Vec<i64>, w: WeylElem) -> Result<AffineElem> {
        if lambda.len() != rs.rank() {
            return Err(Error::Invalid(format!("translation needs {} coordinates", rs.rank())));
        }
        if w.cartan_type() != rs.cartan_type() {
            return Err(Error::Mismatch {
                left: rs.cartan_type(),
                right: w.cartan_type(),
            });
        }
        Ok(AffineElem { lambda, w })
    }

    pub fn identity(rs: &RootSystem) -> AffineElem {
        AffineElem {
            lambda: vec![0; rs.rank()],
            w: WeylElem::identity(rs),
        }
    }

    pub fn translation(rs: &RootSystem, lambda: &[i64]) -> AffineElem {
        AffineElem {
            lambda: lambda.to_vec(),
            w: WeylElem::identity(rs),
        }
    }

    pub fn from_finite(rs: &RootSystem, w: WeylElem) -> AffineElem {
        AffineElem {
            lambda: vec![0; rs.rank()],
            w,
        }
    }

    /// Affine simple reflection `s_i`, `i` in `0..=n`.
    pub fn simple(rs: &RootSystem, i: usize) -> AffineElem {
        if i == 0 {
            let th = rs.theta_index();
            AffineElem {
                lambda: rs.coroot_fundamental(th),
                w: WeylElem::reflection(rs, th),
            }
        } else {
            AffineElem::from_finite(rs, WeylElem::simple(rs, i))
        }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> AffineElem {
        word.iter()
            .fold(AffineElem::identity(rs), |acc, &i| acc.mul(rs, &AffineElem::simple(rs, i)))
    }

    /// Translation part in fundamental coordinates.
    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    /// Finite part.
    pub fn finite(&self) -> &WeylElem {
        &self.w
    }

    /// `(t^l u)(t^m v) = t^{l + u(m)} uv`.
    pub fn mul(&self, rs: &RootSystem, other: &AffineElem) -> AffineElem {
        let um = self.w.act_fundamental(rs, &other.lambda);
        AffineElem {
            lambda: self.lambda.iter().zip(&um).map(|(a, b)| a + b).collect(),
            w: self.w.mul(&other.w),
        }
    }

    pub fn inverse(&self, rs: &RootSystem) -> AffineElem {
        let winv = self.w.inverse();
        let l = winv.act_fundamental(rs, &self.lambda);
        AffineElem {
            lambda: l.into_iter().map(|x| -x).collect(),
            w: winv,
        }
    }

    /// Iwahori-Matsumoto length.
    pub fn length(&self, rs: &RootSystem) -> usize {
        let winv = self.w.inverse();
        let mut len = 0i64;
        for k in 0..rs.num_positive_roots() {
            let p = pair_fund(rs.root_coords(k), &self.lambda);
            len += if winv.perm()[k] > 0 { p.abs() } else { (p - 1).abs() };
        }
        len as usize
    }

    pub fn is_translation(&self) -> bool {
        self.w.is_identity()
    }

    /// Index of the class of `lambda` in `P^vee / Q^vee` (the Omega component).
    pub fn component(&self, rs: &RootSystem) -> usize {
        rs.coweight_class(&rs.coweight_from_fundamental_int(&self.lambda))
            .expect("integral coweight")
    }

    /// Whether the translation part lies in the configured lattice.
    pub fn in_lattice(&self, rs: &RootSystem, lattice: Lattice) -> bool {
        lattice == Lattice::Adjoint || self.component(rs) == 0
    }

    pub fn has_left_descent(&self, rs: &RootSystem, i: usize) -> bool {
        AffineElem::simple(rs, i).mul(rs, self).length(rs) < self.length(rs)
    }

    pub fn has_right_descent(&self, rs: &RootSystem, i: usize) -> bool {
        self.mul(rs, &AffineElem::simple(rs, i)).length(rs) < self.length(rs)
    }

    /// Lexicographically smallest reduced word `s_{i_1}...s_{i_k}` and the
    /// length-zero remainder `tau`, with `self = s_{i_1}...s_{i_k} tau`.
    pub fn reduced_word(&self, rs: &RootSystem) -> (Vec<usize>, AffineElem) {
        let mut word = Vec::new();
        let mut w = self.clone();
        let mut len = w.length(rs);
        while len > 0 {
            let (i, next) = (0..=rs.rank())
                .map(|i| (i, AffineElem::simple(rs, i).mul(rs, &w)))
                .find(|(_, x)| x.length(rs) < len)
                .expect("positive length has a descent");
            word.push(i);
            w = next;
            len -= 1;
        }
        (word, w)
    }

    /// Bruhat order by the descent recursion; elements of different Omega
    /// components are incomparable.
    pub fn bruhat_le(&self, rs: &RootSystem, w: &AffineElem) -> BruhatCmp {
        if self.component(rs) != w.component(rs) {
            return BruhatCmp {
                le: false,
                comparable: false,
            };
        }
        let mut v = self.clone();
        let mut lv = v.length(rs);
        let mut w = w.clone();
        let mut lw = w.length(rs);
        loop {
            if lv > lw {
                return BruhatCmp { le: false, comparable: true };
            }
            if lw == 0 {
                return BruhatCmp { le: v == w, comparable: true };
            }
            let (s, sw) = (0..=rs.rank())
                .map(|i| (i, AffineElem::simple(rs, i).mul(rs, &w)))
                .find(|(_, x)| x.length(rs) < lw)
                .expect("descent");
            w = sw;
            lw -= 1;
            let sv = AffineElem::simple(rs, s).mul(rs, &v);
            let lsv = sv.length(rs);
            if lsv < lv {
                v = sv;
                lv = lsv;
            }
        }
    }

    /// `w = u t^lambda v` with `lambda` dominant and `t^lambda v` minimal in
    /// its left `W`-coset.
    pub fn normal_form(&self, rs: &RootSystem) -> NormalForm {
        let (lambda, z) = dominantize(rs, &self.lambda);
        let u0 = z.inverse();
        let k = NodeSet::from_nodes((1..=rs.rank()).filter(|&i| lambda[i - 1] == 0));
        let mut g = z.mul(&self.w);
        let mut u = u0;
        while let Some(j) = k.iter().find(|&j| g.has_left_descent(j)) {
            g = g.simple_mul(rs, j);
            u = u.mul_simple(rs, j);
        }
        NormalForm { u, lambda, v: g }
    }

    /// `p_l(w) = u`.
    pub fn p_l(&self, rs: &RootSystem) -> WeylElem {
        self.normal_form(rs).u
    }

    /// `eta(w) = v u`.
    pub fn eta(&self, rs: &RootSystem) -> WeylElem {
        let nf = self.normal_form(rs);
        nf.v.mul(&nf.u)
    }

    /// `s w > w` for all `s` in `J`.
    pub fn is_min_in_left_coset(&self, rs: &RootSystem, j: LevelType) -> bool {
        let l = self.length(rs);
        j.iter().all(|i| AffineElem::simple(rs, i).mul(rs, self).length(rs) > l)
    }

    pub fn to_display(&self, rs: &RootSystem) -> String {
        let parts: Vec<String> = self.lambda.iter().map(|x| x.to_string()).collect();
        format!("t[{}]·{}", parts.join(","), self.w.to_word_string(rs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruhatCmp {
    pub le: bool,
    /// False when the two elements lie in different Omega components.
    pub comparable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub u: WeylElem,
    /// Dominant, fundamental coordinates.
    pub lambda: Vec<i64>,
    pub v: WeylElem,
}

impl NormalForm {
    pub fn to_elem(&self, rs: &RootSystem) -> AffineElem {
        let t = AffineElem::translation(rs, &self.lambda);
        AffineElem::from_finite(rs, self.u.clone())
            .mul(rs, &t)
            .mul(rs, &AffineElem::from_finite(rs, self.v.clone()))
    }
}

/// Whether `W~_J` is finite: positive-definite affine Cartan submatrix.
pub fn is_spherical(rs: &RootSystem, j: LevelType) -> bool {
    let a = rs.affine_cartan_matrix();
    RootSystem::is_positive_definite(&a, &j.nodes())
}

pub fn check_level(rs: &RootSystem, j: LevelType) -> Result<()> {
    j.check(rs.rank(), true)?;
    if !is_spherical(rs, j) {
        return Err(Error::NotSpherical(j.to_string()));
    }
    Ok(())
}

/// All spherical `J` in `0..=n`, ordered by bitmask.
pub fn spherical_levels(rs: &RootSystem) -> Vec<LevelType> {
    let n = rs.rank();
    (0u16..(1 << (n + 1)))
        .map(NodeSet)
        .filter(|&j| is_spherical(rs, j))
        .collect()
}

/// Longest element of `W~_J` (affine), refused unless `J` is spherical.
pub fn longest_affine(rs: &RootSystem, j: LevelType) -> Result<AffineElem> {
    check_level(rs, j)?;
    let mut w = AffineElem::identity(rs);
    let mut len = 0;
    loop {
        let next = j
            .iter()
            .map(|i| w.mul(rs, &AffineElem::simple(rs, i)))
            .find(|x| x.length(rs) > len);
        match next {
            Some(x) => {
                w = x;
                len += 1;
            }
            None => return Ok(w),
        }
    }
}

/// All elements of the finite group `W~_J`.
pub fn parabolic_elements(rs: &RootSystem, j: LevelType) -> Result<Vec<AffineElem>> {
    check_level(rs, j)?;
    let id = AffineElem::identity(rs);
    let mut seen = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for i in j.iter() {
            let x = w.mul(rs, &AffineElem::simple(rs, i));
            if seen.insert(x.clone()) {
                order.push(x.clone());
                queue.push_back(x);
            }
        }
    }
    Ok(order)
}

/// `^J W = { w in W : w^{-1}(bar alpha_s) > 0 for s in J }`, with
/// `bar alpha_0 = -theta`; indices into the enumerated group.
pub fn semi_affine_quotient(g: &WeylGroup, j: LevelType) -> Result<Vec<usize>> {
    let rs = g.root_system();
    check_level(rs, j)?;
    let theta = positive_code(rs.theta_index());
    Ok((0..g.order())
        .filter(|&idx| {
            let p = g.perm(idx);
            j.iter().all(|i| {
                if i == 0 {
                    // w^{-1}(-theta) > 0 iff w maps some positive root to -theta
                    p.contains(&-theta)
                } else {
                    !p.contains(&-positive_code(i - 1))
                }
            })
        })
        .collect())
}

/// Membership test for `^J W` without an enumerated group.
pub fn in_semi_affine_quotient(rs: &RootSystem, w: &WeylElem, j: LevelType) -> bool {
    let inv = w.inverse();
    j.iter().all(|i| {
        let c = if i == 0 {
            -inv.act_code(positive_code(rs.theta_index()))
        } else {
            inv.act_code(positive_code(i - 1))
        };
        c > 0
    })
}

/// Length-zero element of the extended affine Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElem {
    pub elem: AffineElem,
    /// Minuscule node `i` with translation part `varpi_i^vee`, or 0 for identity.
    pub node: usize,
    /// `perm[j]` is the image of affine node `j`.
    pub perm: Vec<usize>,
}

/// Omega for the configured lattice: `tau_i = t^{varpi_i^vee} w_{S - i} w_0`
/// over minuscule `i` (adjoint), or the identity alone (simply connected).
pub fn omega_group(rs: &RootSystem, lattice: Lattice) -> Vec<OmegaElem> {
    let n = rs.rank();
    let mut out = vec![OmegaElem {
        elem: AffineElem::identity(rs),
        node: 0,
        perm: (0..=n).collect(),
    }];
    if lattice == Lattice::Sc {
        return out;
    }
    let w0 = WeylElem::longest(rs);
    for i in rs.minuscule_nodes() {
        let lambda: Vec<i64> = (1..=n).map(|j| i64::from(i == j)).collect();
        let w = WeylElem::longest_of(rs, NodeSet::finite(n).remove(i)).mul(&w0);
        let tau = AffineElem { lambda, w };
        assert_eq!(tau.length(rs), 0, "tau_{i} has length zero");
        let tinv = tau.inverse(rs);
        let perm: Vec<usize> = (0..=n)
            .map(|j| {
                let c = tau.mul(rs, &AffineElem::simple(rs, j)).mul(rs, &tinv);
                (0..=n)
                    .find(|&k| AffineElem::simple(rs, k) == c)
                    .expect("conjugate of a simple reflection by tau is simple")
            })
            .collect();
        out.push(OmegaElem { elem: tau, node: i, perm });
    }
    out
}

/// `Ad(tau)(J)`.
pub fn ad_tau(tau: &OmegaElem, j: LevelType) -> LevelType {
    NodeSet::from_nodes(j.iter().map(|i| tau.perm[i]))
}

/// Admissible set `Adm(mu)` for dominant integral `mu` (fundamental
/// coordinates), refused if `<2 rho, mu>` exceeds `cap`.
pub fn admissible_set(rs: &RootSystem, mu: &[i64], cap: i64) -> Result<Vec<AffineElem>> {
    if mu.len() != rs.rank() {
        return Err(Error::Invalid(format!("mu needs {} coordinates", rs.rank())));
    }
    if mu.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("{mu:?}")));
    }
    let size = two_rho_fund(rs, mu);
    if size > cap {
        return Err(Error::budget("admissible set <2rho, mu>", size, cap));
    }
    let mut all: HashSet<AffineElem> = HashSet::new();
    for x_mu in weyl_orbit(rs, mu) {
        let t = AffineElem::translation(rs, &x_mu);
        let (word, tau) = t.reduced_word(rs);
        let mut ideal: HashSet<AffineElem> = HashSet::from([tau]);
        for &s in word.iter().rev() {
            let s_elem = AffineElem::simple(rs, s);
            let shifted: Vec<AffineElem> = ideal.iter().map(|w| s_elem.mul(rs, w)).collect();
            ideal.extend(shifted);
        }
        all.extend(ideal);
    }
    let mut out: Vec<AffineElem> = all.into_iter().collect();
    out.sort_by_cached_key(|w| (w.length(rs), w.clone()));
    Ok(out)
}

/// `^J Adm(mu) = Adm(mu) intersected with ^J W~`.
pub fn j_admissible(rs: &RootSystem, mu: &[i64], j: LevelType, cap: i64) -> Result<Vec<AffineElem>> {
    check_level(rs, j)?;
    Ok(admissible_set(rs, mu, cap)?
        .into_iter()
        .filter(|w| w.is_min_in_left_coset(rs, j))
        .collect())
}

/// Finite part of `w_J`.
pub fn finite_longest(rs: &RootSystem, j: LevelType) -> Result<WeylElem> {
    Ok(longest_affine(rs, j)?.finite().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn rs(s: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(s.parse().unwrap()))
    }

    #[test]
    fn simple_affine_reflections_have_length_one() {
        for t in ["A1", "A3", "B3", "C2", "D4", "G2", "F4", "E6"] {
            let r = rs(t);
            for i in 0..=r.rank() {
                let s = AffineElem::simple(&r, i);
                assert_eq!(s.length(&r), 1, "{t} s_{i}");
                assert_eq!(s.mul(&r, &s), AffineElem::identity(&r));
            }
        }
    }

    #[test]
    fn translation_lengths() {
        let r = rs("A1");
        // alpha^vee = 2 varpi^vee
        let t = AffineElem::translation(&r, &[2]);
        assert_eq!(t.length(&r), 2);
        let a2 = rs("A2");
        let mu = [3, 1];
        assert_eq!(AffineElem::translation(&a2, &mu).length(&a2) as i64, two_rho_fund(&a2, &mu));
        assert_eq!(two_rho_fund(&a2, &mu), 8);
    }

    #[test]
    fn a1_bruhat_examples() {
        let r = rs("A1");
        let t = AffineElem::translation(&r, &[2]);
        let tneg = AffineElem::translation(&r, &[-2]);
        assert_eq!(t, AffineElem::from_word(&r, &[0, 1]));
        assert_eq!(tneg, AffineElem::from_word(&r, &[1, 0]));
        let s0 = AffineElem::simple(&r, 0);
        assert!(AffineElem::identity(&r).bruhat_le(&r, &t).le);
        assert!(s0.bruhat_le(&r, &t).le);
        assert!(!t.bruhat_le(&r, &tneg).le);
        assert!(!tneg.bruhat_le(&r, &t).le);
        let odd = AffineElem::translation(&r, &[1]);
        let cmp = odd.bruhat_le(&r, &t);
        assert!(!cmp.le && !cmp.comparable);
    }

    #[test]
    fn a1_admissible_sets() {
        let r = rs("A1");
        let adm = admissible_set(&r, &[2], DEFAULT_ADM_CAP).unwrap();
        let words: HashSet<Vec<usize>> = adm.iter().map(|w| w.reduced_word(&r).0).collect();
        let want: HashSet<Vec<usize>> = [vec![], vec![0], vec![1], vec![0, 1], vec![1, 0]].into_iter().collect();
        assert_eq!(words, want);
        let jadm = j_admissible(&r, &[2], NodeSet::from_nodes([1]), DEFAULT_ADM_CAP).unwrap();
        let words: HashSet<Vec<usize>> = jadm.iter().map(|w| w.reduced_word(&r).0).collect();
        let want: HashSet<Vec<usize>> = [vec![], vec![0], vec![0, 1]].into_iter().collect();
        assert_eq!(words, want);
        assert!(admissible_set(&r, &[30], DEFAULT_ADM_CAP).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let r = rs("A2");
        let mu = [2, 3];
        let t = AffineElem::translation(&r, &mu);
        let nf = t.normal_form(&r);
        assert!(nf.u.is_identity() && nf.v.is_identity());
        let w0 = WeylElem::longest(&r);
        let w = AffineElem::from_finite(&r, w0.clone()).mul(&r, &t);
        let nf = w.normal_form(&r);
        assert_eq!(nf.u, w0);
        assert!(nf.v.is_identity());
        assert_eq!(w.eta(&r), w0);
        let g = WeylGroup::new(r.clone(), 1000).unwrap();
        for x in g.elements() {
            let e = AffineElem::from_finite(&r, x.clone())
                .mul(&r, &t)
                .mul(&r, &AffineElem::from_finite(&r, w0.mul(&x.inverse())));
            assert_eq!(e.p_l(&r), x);
            assert_eq!(e.eta(&r), w0);
        }
    }

    #[test]
    fn normal_form_is_reconstructing_and_minimal() {
        for t in ["A2", "C2", "G2"] {
            let r = rs(t);
            let g = WeylGroup::new(r.clone(), 1000).unwrap();
            for lam in [vec![0, 0], vec![1, 0], vec![0, 2], vec![-1, 2], vec![2, -3]] {
                for x in g.elements() {
                    let w = AffineElem::new(&r, lam.clone(), x).unwrap();
                    let nf = w.normal_form(&r);
                    assert_eq!(nf.to_elem(&r), w);
                    assert!(nf.lambda.iter().all(|&c| c >= 0));
                    let tv = AffineElem::translation(&r, &nf.lambda).mul(&r, &AffineElem::from_finite(&r, nf.v.clone()));
                    assert!(tv.is_min_in_left_coset(&r, NodeSet::finite(2)), "{t} {:?}", nf);
                }
            }
        }
    }

    #[test]
    fn omega_groups() {
        assert_eq!(omega_group(&rs("A2"), Lattice::Adjoint).len(), 3);
        assert_eq!(omega_group(&rs("A2"), Lattice::Sc).len(), 1);
        for t in ["E8", "F4", "G2"] {
            assert_eq!(omega_group(&rs(t), Lattice::Adjoint).len(), 1);
        }
        let r = rs("A3");
        let om = omega_group(&r, Lattice::Adjoint);
        let j = NodeSet::from_nodes([0, 2]);
        assert!(om.iter().any(|t| ad_tau(t, j).is_subset(NodeSet::finite(3))));
        // diagram automorphisms: preserve the affine Cartan matrix
        for t in ["A4", "B3", "C3", "D4", "D5", "E6", "E7"] {
            let r = rs(t);
            let a = r.affine_cartan_matrix();
            for tau in omega_group(&r, Lattice::Adjoint) {
                for i in 0..=r.rank() {
                    for k in 0..=r.rank() {
                        assert_eq!(a[tau.perm[i]][tau.perm[k]], a[i][k], "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn semi_affine_quotients() {
        let r = rs("A2");
        let g = WeylGroup::new(r.clone(), 1000).unwrap();
        let q0: HashSet<String> = semi_affine_quotient(&g, NodeSet::from_nodes([0]))
            .unwrap()
            .into_iter()
            .map(|i| g.elem(i).to_word_string(&r))
            .collect();
        let want: HashSet<String> = ["1.2", "2.1", "1.2.1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(q0, want);
        assert_eq!(
            semi_affine_quotient(&g, NodeSet::from_nodes([1])).unwrap(),
            g.min_coset_reps(NodeSet::from_nodes([1]))
        );
        assert_eq!(semi_affine_quotient(&g, NodeSet::EMPTY).unwrap().len(), 6);
        assert!(matches!(
            semi_affine_quotient(&g, NodeSet::from_nodes([0, 1, 2])),
            Err(Error::NotSpherical(_))
        ));
        for idx in 0..g.order() {
            for j in spherical_levels(&r) {
                let inq = semi_affine_quotient(&g, j).unwrap().contains(&idx);
                assert_eq!(inq, in_semi_affine_quotient(&r, &g.elem(idx), j));
            }
        }
    }

    #[test]
    fn spherical_level_counts() {
        // every proper subset of an irreducible affine diagram is spherical
        for t in ["A1", "A3", "C2", "G2", "F4"] {
            let r = rs(t);
            assert_eq!(spherical_levels(&r).len(), (1 << (r.rank() + 1)) - 1, "{t}");
        }
    }

    #[test]
    fn affine_longest_elements() {
        let r = rs("A2");
        let w = longest_affine(&r, NodeSet::from_nodes([0])).unwrap();
        assert_eq!(w, AffineElem::simple(&r, 0));
        assert_eq!(w.finite(), &WeylElem::reflection(&r, r.theta_index()));
        let c2 = rs("C2");
        let w = longest_affine(&c2, NodeSet::from_nodes([0, 1])).unwrap();
        assert_eq!(w.length(&c2), 4);
        assert_eq!(parabolic_elements(&c2, NodeSet::from_nodes([0, 1])).unwrap().len(), 8);
    }
}
