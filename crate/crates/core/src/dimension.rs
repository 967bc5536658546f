//! Virtual dimensions, the admissible-set maximum and the dimension formula
//! for parahoric affine Deligne-Lusztig varieties.

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{
    ad_tau, check_level, j_admissible, omega_group, AffineElem, Lattice, LevelType,
};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::qbg::wt_w0_1;
use crate::rootsys::{fmt_q, q, CoweightQ, RootSystem, Q};
use crate::theorems::{length_excess, min_distance_scan, theorem_min_rhs};
use crate::weyl::WeylElem;

/// Invariants of a sigma-conjugacy class `[b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonDatum {
    /// Newton point, dominant.
    pub nu: CoweightQ,
    /// Index into `RootSystem::coweight_class_representatives`.
    pub kappa: usize,
    pub defect: u64,
}

impl NewtonDatum {
    /// `nu = 0`, defect 0.
    pub fn basic(rs: &RootSystem, kappa: usize) -> NewtonDatum {
        NewtonDatum {
            nu: CoweightQ::zero(rs.cartan_type()),
            kappa,
            defect: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimInput {
    pub level: LevelType,
    /// Dominant integral coweight, fundamental coordinates.
    pub mu: Vec<i64>,
    pub b: NewtonDatum,
}

impl DimInput {
    pub fn mu_coweight(&self, rs: &RootSystem) -> CoweightQ {
        rs.coweight_from_fundamental_int(&self.mu)
    }
}

fn half(x: Q) -> Q {
    x / q(2)
}

/// `d_w(b) = (l(w) + l(eta(w)) - def(b) - <2 rho, nu(b)>) / 2`.
pub fn virtual_dimension(rs: &RootSystem, w: &AffineElem, b: &NewtonDatum) -> Result<Q> {
    let numer = q((w.length(rs) + w.eta(rs).length()) as i64) - q(b.defect as i64) - rs.two_rho_pairing(&b.nu)?;
    if !numer.is_integer() {
        return Err(Error::Invalid(format!(
            "virtual dimension {} is not a half-integer",
            fmt_q(&half(numer))
        )));
    }
    Ok(half(numer))
}

/// Checks `kappa(b) = [mu]` and `nu(b) <= mu`, plus dominance and range conditions.
pub fn check_neutrally_acceptable(rs: &RootSystem, lattice: Lattice, input: &DimInput) -> Result<()> {
    check_level(rs, input.level)?;
    if input.mu.len() != rs.rank() {
        return Err(Error::Invalid(format!("mu needs {} coordinates", rs.rank())));
    }
    if input.mu.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("mu = {:?}", input.mu)));
    }
    let mu = input.mu_coweight(rs);
    let b = &input.b;
    if !rs.is_dominant(&b.nu)? {
        return Err(Error::NotDominant(format!("nu = {}", b.nu)));
    }
    if b.defect > rs.rank() as u64 {
        return Err(Error::Invalid(format!("defect {} exceeds the rank {}", b.defect, rs.rank())));
    }
    let classes = rs.coweight_class_representatives().len();
    let mu_class = rs.coweight_class(&mu)?;
    if lattice == Lattice::Sc && mu_class != 0 {
        return Err(Error::Invalid(format!("mu = {mu} is not in the coroot lattice")));
    }
    if b.kappa >= classes {
        return Err(Error::Invalid(format!("kappa must be below {classes}")));
    }
    let kappa_ok = lattice == Lattice::Sc || b.kappa == mu_class;
    if !kappa_ok || !rs.dominance_le(&b.nu, &mu)? {
        return Err(Error::NotNeutrallyAcceptable(format!(
            "kappa = {}, [mu] = {mu_class}, nu = {}, mu = {mu}",
            b.kappa, b.nu
        )));
    }
    Ok(())
}

/// `<rho, mu - nu> - def/2`.
fn hyperspecial_part(rs: &RootSystem, input: &DimInput) -> Result<Q> {
    let mu = input.mu_coweight(rs);
    Ok(rs.rho_pairing(&mu.sub(&input.b.nu)?)? - half(q(input.b.defect as i64)))
}

fn depth_of(input: &DimInput) -> i64 {
    *input.mu.iter().min().expect("rank >= 1")
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedForm {
    pub value: String,
    #[serde(skip)]
    pub exact: Q,
    pub min_distance: usize,
    /// Whether the minimum came from an exhaustive scan rather than the formula.
    pub from_scan: bool,
}

/// `<rho, mu - nu> - def/2 + l(w0)/2 - min_{x in ^J W} d(x, x w0) / 2`, under the
/// depth hypothesis: 4 when `J` is finite, `2 l(w0) + 2` otherwise.
pub fn d_adm_closed_form(ctx: &Context, input: &DimInput) -> Result<ClosedForm> {
    let rs = &ctx.rs;
    check_neutrally_acceptable(rs, ctx.lattice, input)?;
    let l0 = WeylElem::longest(rs).length();
    let required = if input.level.contains(0) { 2 * l0 as u64 + 2 } else { 4 };
    let depth = depth_of(input);
    if depth < required as i64 {
        return Err(Error::DepthHypothesis {
            depth: depth.to_string(),
            required,
        });
    }
    let (min_distance, from_scan) = match min_distance_scan(ctx, input.level) {
        Ok(r) => (r.min_value, true),
        Err(Error::Budget { .. }) => (theorem_min_rhs(rs, input.level)?, false),
        Err(e) => return Err(e),
    };
    let exact = hyperspecial_part(rs, input)? + half(q(l0 as i64) - q(min_distance as i64));
    Ok(ClosedForm {
        value: fmt_q(&exact),
        exact,
        min_distance,
        from_scan,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BruteForce {
    pub value: String,
    #[serde(skip)]
    pub exact: Q,
    pub argmax: String,
    pub admissible: usize,
}

/// `max { d_w(b) : w in ^J Adm(mu) }` by enumeration.
pub fn d_adm_brute(ctx: &Context, input: &DimInput) -> Result<BruteForce> {
    let rs = &ctx.rs;
    check_neutrally_acceptable(rs, ctx.lattice, input)?;
    let adm = j_admissible(rs, &input.mu, input.level, ctx.budgets.adm_cap)?;
    let values: Vec<Q> = adm
        .par_iter()
        .map(|w| virtual_dimension(rs, w, &input.b))
        .collect::<Result<_>>()?;
    let (best, exact) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("t^mu is admissible");
    Ok(BruteForce {
        value: fmt_q(exact),
        exact: exact.clone(),
        argmax: adm[best].to_display(rs),
        admissible: adm.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DimCase {
    I,
    Ii,
    Iii,
    None,
}

impl std::fmt::Display for DimCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DimCase::I => "i",
            DimCase::Ii => "ii",
            DimCase::Iii => "iii",
            DimCase::None => "none",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Regularity {
    pub depth: i64,
    /// depth >= 3
    pub two_regular: bool,
    /// depth >= 5
    pub four_regular: bool,
    /// depth >= 2 l(w0) + 3
    pub deep_regular: bool,
    pub deep_threshold: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gap {
    /// `wt(w0, 1)` in simple-coroot coordinates.
    pub wt_w0_1: Vec<i64>,
    /// `mu >= nu + wt(w0, 1)`
    pub above_wt: bool,
    /// `mu >= nu + 2 rho^vee + wt(w0, 1)`
    pub above_two_rho_wt: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReduction {
    /// Minuscule node of `tau`, 0 for the identity.
    pub tau: usize,
    pub image: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypotheses {
    pub regularity: Regularity,
    pub gap: Gap,
    /// First `tau` in Omega with `Ad(tau)(J)` inside the finite nodes.
    pub level_reduction: Option<LevelReduction>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimReport {
    pub value: String,
    #[serde(skip)]
    pub exact: Q,
    pub case: DimCase,
    pub hypotheses: Hypotheses,
}

/// `<rho, mu - nu> - def/2 + ([l(w0) - l_R(w0)] - [l(w_J) - l_R(w_J)]) / 2`.
pub fn formula_value(rs: &RootSystem, input: &DimInput) -> Result<Q> {
    let w0 = WeylElem::longest(rs);
    let bracket = (w0.length() - w0.reflection_length(rs)) as i64 - length_excess(rs, input.level)? as i64;
    Ok(hyperspecial_part(rs, input)? + half(q(bracket)))
}

/// The formula value together with the hypothesis case certifying it.
pub fn dim_formula(ctx: &Context, input: &DimInput) -> Result<DimReport> {
    let rs = &ctx.rs;
    check_neutrally_acceptable(rs, ctx.lattice, input)?;
    let exact = formula_value(rs, input)?;
    let l0 = WeylElem::longest(rs).length() as u64;
    let depth = depth_of(input);
    let deep_threshold = 2 * l0 + 3;
    let regularity = Regularity {
        depth,
        two_regular: depth >= 3,
        four_regular: depth >= 5,
        deep_regular: depth >= deep_threshold as i64,
        deep_threshold,
    };

    let (wt, _) = wt_w0_1(rs)?;
    let wt_cw = CoweightQ::from_coroot_coords(rs.cartan_type(), wt.iter().map(|&c| q(c)).collect())?;
    let mu = input.mu_coweight(rs);
    let slack = mu.sub(&input.b.nu)?.sub(&wt_cw)?;
    let above_wt = slack.in_nonneg_coroot_cone();
    let above_two_rho_wt = slack.sub(&rs.rho_vee().scale(&q(2)))?.in_nonneg_coroot_cone();
    let gap = Gap {
        wt_w0_1: wt,
        above_wt,
        above_two_rho_wt,
    };

    let level_reduction = omega_group(rs, ctx.lattice).into_iter().find_map(|tau| {
        let image = ad_tau(&tau, input.level);
        (!image.contains(0)).then(|| LevelReduction {
            tau: tau.node,
            image: image.to_string(),
        })
    });

    let case = if input.level.is_empty() && regularity.two_regular && gap.above_wt {
        DimCase::I
    } else if regularity.four_regular && gap.above_two_rho_wt && level_reduction.is_some() {
        DimCase::Ii
    } else if regularity.deep_regular {
        DimCase::Iii
    } else {
        DimCase::None
    };
    Ok(DimReport {
        value: fmt_q(&exact),
        exact,
        case,
        hypotheses: Hypotheses {
            regularity,
            gap,
            level_reduction,
        },
    })
}

/// Defect of a class in `GL_n`-style slope coordinates: `n` minus the sum of the
/// `m_i`, where slope `r_i / s_i` in lowest terms fills `m_i s_i` entries.
pub fn defect_type_a(slopes: &[Q]) -> Result<u64> {
    if slopes.is_empty() {
        return Err(Error::Invalid("no slopes given".into()));
    }
    if slopes.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Invalid("slopes must be weakly decreasing".into()));
    }
    let mut blocks = 0u64;
    let mut start = 0;
    while start < slopes.len() {
        let slope = &slopes[start];
        let count = slopes[start..].iter().take_while(|s| *s == slope).count();
        let denom = slope.denom().to_u64().expect("small denominator");
        if (count as u64) % denom != 0 {
            return Err(Error::Invalid(format!(
                "slope {} occurs {count} times, not a multiple of {denom}",
                fmt_q(slope)
            )));
        }
        blocks += count as u64 / denom;
        start += count;
    }
    Ok(slopes.len() as u64 - blocks)
}

/// Slopes `(nu_1 >= ... >= nu_n)` with integral sum, projected to a coweight
/// of `A_{n-1}` in simple-coroot coordinates.
pub fn slopes_to_coweight(rs: &RootSystem, slopes: &[Q]) -> Result<CoweightQ> {
    let n = slopes.len();
    if rs.cartan_type().family() != crate::cartan::Family::A || rs.rank() + 1 != n {
        return Err(Error::Invalid(format!("{n} slopes do not describe {}", rs.cartan_type())));
    }
    let total: Q = slopes.iter().sum();
    if !total.is_integer() {
        return Err(Error::Invalid("slopes do not close an integral polygon".into()));
    }
    let mean = total / q(n as i64);
    let mut acc = Q::zero();
    let coords = slopes[..n - 1]
        .iter()
        .map(|s| {
            acc += s - &mean;
            acc.clone()
        })
        .collect();
    CoweightQ::from_coroot_coords(rs.cartan_type(), coords)
}
