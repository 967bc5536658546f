//! Root data for irreducible reduced root systems.
//!
//! Roots live in simple-root coordinates and coweights in simple-coroot
//! coordinates; every pairing goes through the Cartan matrix. Positive roots are
//! ordered by height, so the simple root `alpha_i` has index `i - 1`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cartan::CartanType;
use crate::error::{Error, Result};
use crate::linalg;

pub type Q = BigRational;

pub(crate) fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Signed reference to a root: `k + 1` for the positive root `k`, `-(k + 1)` for
/// its negative.
pub type RootCode = i16;

#[inline]
pub fn root_index(code: RootCode) -> usize {
    (code.unsigned_abs() - 1) as usize
}

#[inline]
pub fn positive_code(k: usize) -> RootCode {
    (k + 1) as RootCode
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    ty: CartanType,
    coords: Vec<i64>,
}

impl Root {
    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().any(|&c| c > 0)
    }

    pub fn negate(&self) -> Root {
        Root {
            ty: self.ty,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// A coroot in simple-coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coroot {
    ty: CartanType,
    coords: Vec<i64>,
}

impl Coroot {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn to_coweight(&self) -> CoweightQ {
        CoweightQ {
            ty: self.ty,
            coords: self.coords.iter().map(|&c| q(c)).collect(),
        }
    }
}

/// Which basis a coweight string is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoweightBasis {
    SimpleCoroot,
    Fundamental,
}

/// Rational coweight in simple-coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoweightQ {
    ty: CartanType,
    coords: Vec<Q>,
}

impl CoweightQ {
    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn zero(ty: CartanType) -> Self {
        CoweightQ {
            ty,
            coords: vec![Q::zero(); ty.rank()],
        }
    }

    pub fn from_coroot_coords(ty: CartanType, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != ty.rank() {
            return Err(Error::Invalid(format!(
                "{ty} coweight needs {} coordinates, got {}",
                ty.rank(),
                coords.len()
            )));
        }
        Ok(CoweightQ { ty, coords })
    }

    fn check(&self, other: &CoweightQ) -> Result<()> {
        if self.ty != other.ty {
            return Err(Error::Mismatch {
                left: self.ty,
                right: other.ty,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CoweightQ) -> Result<CoweightQ> {
        self.check(other)?;
        Ok(CoweightQ {
            ty: self.ty,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &CoweightQ) -> Result<CoweightQ> {
        self.check(other)?;
        Ok(CoweightQ {
            ty: self.ty,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, k: &Q) -> CoweightQ {
        CoweightQ {
            ty: self.ty,
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// True iff every simple-coroot coordinate is a non-negative rational.
    pub fn in_nonneg_coroot_cone(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral_in_coroots(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for CoweightQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Immutable root datum of an irreducible Cartan type.
#[derive(Debug)]
pub struct RootSystem {
    ty: CartanType,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    heights: Vec<i64>,
    coroot_heights: Vec<i64>,
    index: HashMap<Vec<i64>, usize>,
    theta: usize,
    /// Columns are fundamental coweights in simple-coroot coordinates.
    fund: Vec<Vec<Q>>,
    simple_action: Vec<Vec<RootCode>>,
    reflection_action: Vec<Vec<RootCode>>,
}

impl RootSystem {
    pub fn new(ty: CartanType) -> RootSystem {
        let n = ty.rank();
        let cartan = ty.cartan_matrix();

        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut k = 0;
        while k < roots.len() {
            let beta = roots[k].clone();
            for i in 0..n {
                if beta.iter().enumerate().all(|(j, &b)| b == i64::from(i == j)) {
                    continue;
                }
                // alpha_i-string through beta: beta - q alpha_i, ..., beta + p alpha_i
                let mut q_len = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains(&down) {
                        q_len += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                if q_len - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        roots.push(up);
                    }
                }
            }
            k += 1;
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        assert_eq!(roots.len(), ty.num_positive_roots(), "{ty}: positive root count");

        let sym = symmetrizer(&cartan);
        let form = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += a[i] * b[j] * sym[i] * cartan[i][j];
                }
            }
            s
        };
        let coroots: Vec<Vec<i64>> = roots
            .iter()
            .map(|r| {
                let norm = form(r, r);
                (0..n)
                    .map(|i| {
                        let num = 2 * r[i] * sym[i];
                        debug_assert_eq!(num % norm, 0);
                        num / norm
                    })
                    .collect()
            })
            .collect();
        let heights: Vec<i64> = roots.iter().map(|r| r.iter().sum()).collect();
        let coroot_heights: Vec<i64> = coroots.iter().map(|r| r.iter().sum()).collect();
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        let theta = roots.len() - 1;
        debug_assert!(heights[..theta].iter().all(|&h| h < heights[theta]));

        let transpose: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cartan[j][i]).collect()).collect();
        let inv = linalg::inverse(&transpose).expect("Cartan matrix is invertible");
        let fund: Vec<Vec<Q>> = (0..n).map(|j| (0..n).map(|k| inv[k][j].clone()).collect()).collect();

        let pair_rc = |root: &[i64], coroot: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for k in 0..n {
                    s += root[i] * coroot[k] * cartan[k][i];
                }
            }
            s
        };
        let signed_lookup = |v: &[i64]| -> RootCode {
            if let Some(&k) = index.get(v) {
                positive_code(k)
            } else {
                let neg: Vec<i64> = v.iter().map(|c| -c).collect();
                -positive_code(index[&neg])
            }
        };
        let reflect = |alpha: usize| -> Vec<RootCode> {
            roots
                .iter()
                .map(|beta| {
                    let c = pair_rc(beta, &coroots[alpha]);
                    let img: Vec<i64> = (0..n).map(|i| beta[i] - c * roots[alpha][i]).collect();
                    signed_lookup(&img)
                })
                .collect()
        };
        let reflection_action: Vec<Vec<RootCode>> = (0..roots.len()).map(reflect).collect();
        let simple_action = reflection_action[..n].to_vec();

        RootSystem {
            ty,
            cartan,
            roots,
            coroots,
            heights,
            coroot_heights,
            index,
            theta,
            fund,
            simple_action,
            reflection_action,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    /// `a[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_coords(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn coroot_coords(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn positive_root(&self, k: usize) -> Root {
        Root {
            ty: self.ty,
            coords: self.roots[k].clone(),
        }
    }

    pub fn positive_coroot(&self, k: usize) -> Coroot {
        Coroot {
            ty: self.ty,
            coords: self.coroots[k].clone(),
        }
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.roots.len()).map(|k| self.positive_root(k))
    }

    pub fn height(&self, k: usize) -> i64 {
        self.heights[k]
    }

    /// `<2 rho, alpha^vee>` for the positive root `k`.
    pub fn two_rho_on_coroot(&self, k: usize) -> i64 {
        2 * self.coroot_heights[k]
    }

    pub fn simple_root(&self, i: usize) -> Root {
        self.positive_root(i - 1)
    }

    pub fn root(&self, coords: Vec<i64>) -> Result<Root> {
        let r = Root { ty: self.ty, coords };
        self.code_of(&r)?;
        Ok(r)
    }

    pub fn root_from_code(&self, code: RootCode) -> Root {
        let r = self.positive_root(root_index(code));
        if code < 0 {
            r.negate()
        } else {
            r
        }
    }

    pub fn code_of(&self, r: &Root) -> Result<RootCode> {
        if r.ty != self.ty {
            return Err(Error::Mismatch {
                left: self.ty,
                right: r.ty,
            });
        }
        if let Some(&k) = self.index.get(&r.coords) {
            return Ok(positive_code(k));
        }
        let neg = r.negate();
        self.index
            .get(&neg.coords)
            .map(|&k| -positive_code(k))
            .ok_or_else(|| Error::Invalid(format!("{:?} is not a root of {}", r.coords, self.ty)))
    }

    pub fn index_of_positive(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn theta_index(&self) -> usize {
        self.theta
    }

    pub fn theta(&self) -> Root {
        self.positive_root(self.theta)
    }

    /// Coefficient of `alpha_i` in the highest root; 1 marks a minuscule coweight.
    pub fn theta_coefficient(&self, i: usize) -> i64 {
        self.roots[self.theta][i - 1]
    }

    /// Nodes `i` whose fundamental coweight is minuscule.
    pub fn minuscule_nodes(&self) -> Vec<usize> {
        (1..=self.rank()).filter(|&i| self.theta_coefficient(i) == 1).collect()
    }

    pub fn simple_action(&self, i: usize) -> &[RootCode] {
        &self.simple_action[i]
    }

    pub fn reflection_action(&self, k: usize) -> &[RootCode] {
        &self.reflection_action[k]
    }

    /// rho in simple-root coordinates (half the sum of positive roots).
    pub fn rho(&self) -> Vec<Q> {
        let n = self.rank();
        (0..n)
            .map(|i| Q::new(BigInt::from(self.roots.iter().map(|r| r[i]).sum::<i64>()), BigInt::from(2)))
            .collect()
    }

    /// rho^vee = sum of fundamental coweights.
    pub fn rho_vee(&self) -> CoweightQ {
        let n = self.rank();
        CoweightQ {
            ty: self.ty,
            coords: (0..n).map(|k| self.fund.iter().map(|col| &col[k]).sum()).collect(),
        }
    }

    pub fn fundamental_coweight(&self, i: usize) -> CoweightQ {
        CoweightQ {
            ty: self.ty,
            coords: self.fund[i - 1].clone(),
        }
    }

    pub fn coweight_from_fundamental(&self, f: &[Q]) -> Result<CoweightQ> {
        let n = self.rank();
        if f.len() != n {
            return Err(Error::Invalid(format!("{} needs {n} coordinates, got {}", self.ty, f.len())));
        }
        Ok(CoweightQ {
            ty: self.ty,
            coords: (0..n).map(|k| (0..n).map(|j| &self.fund[j][k] * &f[j]).sum()).collect(),
        })
    }

    pub fn coweight_from_fundamental_int(&self, f: &[i64]) -> CoweightQ {
        let fq: Vec<Q> = f.iter().map(|&x| q(x)).collect();
        self.coweight_from_fundamental(&fq).expect("length checked by caller")
    }

    /// Fundamental coordinates `<alpha_i, lambda>`.
    pub fn to_fundamental(&self, l: &CoweightQ) -> Result<Vec<Q>> {
        self.check(l.ty)?;
        let n = self.rank();
        Ok((0..n)
            .map(|i| (0..n).map(|k| &l.coords[k] * q(self.cartan[k][i])).sum())
            .collect())
    }

    pub fn coroot_as_coweight(&self, k: usize) -> CoweightQ {
        self.positive_coroot(k).to_coweight()
    }

    pub fn parse_coweight(&self, s: &str, basis: CoweightBasis) -> Result<CoweightQ> {
        let vals: Vec<Q> = if s.trim().is_empty() {
            Vec::new()
        } else {
            s.split(',').map(parse_q).collect::<Result<_>>()?
        };
        match basis {
            CoweightBasis::SimpleCoroot => CoweightQ::from_coroot_coords(self.ty, vals),
            CoweightBasis::Fundamental => self.coweight_from_fundamental(&vals),
        }
    }

    fn check(&self, ty: CartanType) -> Result<()> {
        if ty != self.ty {
            return Err(Error::Mismatch { left: self.ty, right: ty });
        }
        Ok(())
    }

    /// `<alpha, lambda>`.
    pub fn pairing(&self, alpha: &Root, lambda: &CoweightQ) -> Result<Q> {
        self.check(alpha.ty)?;
        self.check(lambda.ty)?;
        Ok(self.pair_coords(&alpha.coords, &lambda.coords))
    }

    pub(crate) fn pair_coords(&self, root: &[i64], lambda: &[Q]) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            if root[i] == 0 {
                continue;
            }
            let mut t = Q::zero();
            for k in 0..n {
                if self.cartan[k][i] != 0 {
                    t += &lambda[k] * q(self.cartan[k][i]);
                }
            }
            s += t * q(root[i]);
        }
        s
    }

    /// `<2 rho, lambda>`.
    pub fn two_rho_pairing(&self, lambda: &CoweightQ) -> Result<Q> {
        self.check(lambda.ty)?;
        Ok(lambda.coords.iter().sum::<Q>() * q(2))
    }

    /// `<rho, lambda>`.
    pub fn rho_pairing(&self, lambda: &CoweightQ) -> Result<Q> {
        self.check(lambda.ty)?;
        Ok(lambda.coords.iter().sum::<Q>())
    }

    pub fn is_dominant(&self, lambda: &CoweightQ) -> Result<bool> {
        Ok(self.to_fundamental(lambda)?.iter().all(|x| !x.is_negative()))
    }

    /// `min { <alpha, lambda> : alpha simple }` for dominant `lambda`.
    pub fn depth(&self, lambda: &CoweightQ) -> Result<Q> {
        let f = self.to_fundamental(lambda)?;
        if f.iter().any(|x| x.is_negative()) {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        Ok(f.into_iter().min().expect("rank >= 1"))
    }

    /// k-regular means depth at least k + 1.
    pub fn is_k_regular(&self, lambda: &CoweightQ, k: u64) -> Result<bool> {
        Ok(self.depth(lambda)? >= q(k as i64 + 1))
    }

    /// Dominance order on dominant coweights: `mu - lambda` is a non-negative
    /// rational combination of simple coroots.
    pub fn dominance_le(&self, lambda: &CoweightQ, mu: &CoweightQ) -> Result<bool> {
        if !self.is_dominant(lambda)? {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        if !self.is_dominant(mu)? {
            return Err(Error::NotDominant(mu.to_string()));
        }
        Ok(mu.sub(lambda)?.in_nonneg_coroot_cone())
    }

    /// Positive-definiteness of the Cartan matrix restricted to `nodes`
    /// (0-based), via leading principal minors.
    pub(crate) fn is_positive_definite(matrix: &[Vec<i64>], nodes: &[usize]) -> bool {
        (1..=nodes.len()).all(|m| {
            let sub: Vec<Vec<i64>> = nodes[..m]
                .iter()
                .map(|&i| nodes[..m].iter().map(|&j| matrix[i][j]).collect())
                .collect();
            linalg::determinant(&sub) > 0
        })
    }

    /// Cartan matrix of the affine diagram; index 0 is the affine node, index
    /// `i` the finite node `i`.
    pub fn affine_cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let theta = &self.roots[self.theta];
        let theta_vee = &self.coroots[self.theta];
        let mut a = vec![vec![0i64; n + 1]; n + 1];
        a[0][0] = 2;
        for j in 0..n {
            // <alpha_j, alpha_0^vee> = -<alpha_j, theta^vee>
            let e: Vec<i64> = (0..n).map(|i| i64::from(i == j)).collect();
            let pj: i64 = (0..n).flat_map(|i| (0..n).map(move |k| (i, k))).map(|(i, k)| e[i] * theta_vee[k] * self.cartan[k][i]).sum();
            a[0][j + 1] = -pj;
            // <alpha_0, alpha_j^vee> = -<theta, alpha_j^vee>
            let pt: i64 = (0..n).map(|i| theta[i] * self.cartan[j][i]).sum();
            a[j + 1][0] = -pt;
            for k in 0..n {
                a[j + 1][k + 1] = self.cartan[j][k];
            }
        }
        a
    }

    /// Representatives of the coweight classes `P^vee / Q^vee`: zero followed by
    /// the minuscule fundamental coweights, in fundamental coordinates.
    pub fn coweight_class_representatives(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut reps = vec![vec![0; n]];
        for i in self.minuscule_nodes() {
            reps.push((1..=n).map(|j| i64::from(i == j)).collect());
        }
        reps
    }

    /// Index into `coweight_class_representatives` of the class of `lambda`.
    pub fn coweight_class(&self, lambda: &CoweightQ) -> Result<usize> {
        self.check(lambda.ty)?;
        let reps = self.coweight_class_representatives();
        for (idx, r) in reps.iter().enumerate() {
            let rep = self.coweight_from_fundamental_int(r);
            if lambda.sub(&rep)?.is_integral_in_coroots() {
                return Ok(idx);
            }
        }
        Err(Error::Invalid(format!("{lambda} is not in the coweight lattice")))
    }

    /// Integral coroot coordinates -> fundamental coordinates.
    pub fn coroot_to_fundamental_int(&self, c: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|k| c[k] * self.cartan[k][i]).sum()).collect()
    }

    /// Fundamental coordinates of the coroot `k`.
    pub fn coroot_fundamental(&self, k: usize) -> Vec<i64> {
        self.coroot_to_fundamental_int(&self.coroots[k])
    }
}

/// Integers `d_i` with `d_i a_ij = d_j a_ji`.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().expect("visited");
                d[j] = Some(di * q(a[i][j]) / q(a[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let l = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    d.iter()
        .map(|x| {
            let v = x * Q::from_integer(l.clone());
            i64::try_from(v.to_integer()).expect("small")
        })
        .collect()
}
