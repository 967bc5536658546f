use std::ops::RangeInclusive;

use clap::{Args, Subcommand};
use qbgdim_core::affine::{check_level, in_semi_affine_quotient, spherical_levels, LevelType};
use qbgdim_core::cartan::Family;
use qbgdim_core::dimension::{d_adm_brute, d_adm_closed_form, DimInput, NewtonDatum};
use qbgdim_core::qbg::{simple_pairings, two_rho};
use qbgdim_core::theorems::{
    below_x_w0, certify_pair, certify_row, classical_assignment, construct_x_classical, decomposition_search,
    exceptional_rows, length_excess, min_distance_scan, theorem_min_rhs,
};
use qbgdim_core::{Error, NodeSet, QbgGraph, WeylElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{Format, Table};
use crate::{Outcome, Run};

#[derive(Args, Clone)]
pub struct LevelArgs {
    /// A single level such as "0,2" or "" (empty).
    #[arg(long, conflicts_with = "all_j")]
    level: Option<String>,
    /// Every spherical level (finite nodes only unless the type has the `aff` suffix).
    #[arg(long = "all-J")]
    all_j: bool,
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Minimum of `d(x, x w0)` over `^J W` against `l_R(w0) + l(w_J) - l_R(w_J)`.
    MinDistance(LevelArgs),
    /// Weight and distance lemmas of the quantum Bruhat graph.
    Lemmas {
        /// Random pairs; 0 checks every pair.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Explicit minimizers in types A, B, C.
    #[command(alias = "section4")]
    Constructions(LevelArgs),
    /// Exceptional tables or classical assignments; with --decompose, good
    /// decompositions of `w0` per level.
    #[command(alias = "section5")]
    LevelPairs {
        #[command(flatten)]
        levels: LevelArgs,
        #[arg(long)]
        decompose: bool,
        /// Decide conjugacy by orbit enumeration regardless of group size.
        #[arg(long)]
        deep: bool,
    },
    /// Closed form against the admissible-set maximum.
    DAdm {
        #[command(flatten)]
        levels: LevelArgs,
        /// Range `a..b` of coordinates of `mu` (fundamental coordinates).
        #[arg(long, value_parser = parse_range)]
        mu_depth: RangeInclusive<i64>,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if a < 0 || a > b {
        return Err(format!("empty or negative range {s}"));
    }
    Ok(a..=b)
}

fn levels(run: &Run, args: &LevelArgs) -> Result<Vec<LevelType>, Error> {
    let rs = &run.ctx.rs;
    if let Some(s) = &args.level {
        let j = NodeSet::parse(s)?;
        check_level(rs, j)?;
        return Ok(vec![j]);
    }
    Ok(spherical_levels(rs)
        .into_iter()
        .filter(|j| run.affine || !j.contains(0))
        .collect())
}

/// Folds per-row status into the process outcome.
#[derive(Default)]
struct Tally {
    failed: bool,
    budget: bool,
}

impl Tally {
    fn record(&mut self, ok: bool) -> Value {
        self.failed |= !ok;
        json!(ok)
    }

    fn error(&mut self, e: &Error) -> Value {
        match e {
            Error::Budget { .. } => self.budget = true,
            _ => self.failed = true,
        }
        eprintln!("row error: {e}");
        json!(if matches!(e, Error::Budget { .. }) { "budget" } else { "error" })
    }

    fn outcome(&self) -> Outcome {
        if self.failed {
            Outcome::VerificationFailed
        } else if self.budget {
            Outcome::BudgetExceeded
        } else {
            Outcome::Ok
        }
    }
}

pub fn execute(cmd: &VerifyCmd, run: &Run, format: Option<Format>) -> Result<Outcome, Error> {
    let format = format.unwrap_or(Format::Tsv);
    let mut tally = Tally::default();
    let table = match cmd {
        VerifyCmd::MinDistance(args) => min_distance(run, args, &mut tally)?,
        VerifyCmd::Lemmas { samples, seed } => lemmas(run, *samples, *seed, &mut tally)?,
        VerifyCmd::Constructions(args) => constructions(run, args, &mut tally)?,
        VerifyCmd::LevelPairs { levels, decompose, deep } => {
            if *decompose {
                decompositions(run, levels, &mut tally)?
            } else {
                level_pairs(run, *deep, &mut tally)?
            }
        }
        VerifyCmd::DAdm { levels, mu_depth } => d_adm(run, levels, mu_depth.clone(), &mut tally)?,
    };
    print!("{}", table.render(run, format));
    Ok(tally.outcome())
}

fn min_distance(run: &Run, args: &LevelArgs, tally: &mut Tally) -> Result<Table, Error> {
    let mut t = Table::new(&["J", "|^JW|", "min", "rhs", "match", "argmin"]);
    for j in levels(run, args)? {
        match min_distance_scan(&run.ctx, j) {
            Ok(r) => {
                let ok = tally.record(r.matches && r.lower_bound_ok);
                t.push(vec![json!(r.level), json!(r.quotient_size), json!(r.min_value), json!(r.rhs), ok, json!(r.argmin)]);
            }
            Err(e) => {
                let status = tally.error(&e);
                t.push(vec![json!(j.to_string()), Value::Null, Value::Null, Value::Null, status, Value::Null]);
            }
        }
    }
    Ok(t)
}

#[derive(Default)]
struct LemmaCount {
    checked: u64,
    failed: u64,
    example: Option<String>,
}

impl LemmaCount {
    fn add(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            self.example.get_or_insert_with(example);
        }
    }
}

fn lemmas(run: &Run, samples: usize, seed: u64, tally: &mut Tally) -> Result<Table, Error> {
    let q: std::sync::Arc<QbgGraph> = run.ctx.qbg()?;
    let g = q.group();
    let rs = q.root_system();
    let path_cap = run.ctx.budgets.path_cap;
    let order = g.order();
    let word = |v: usize| g.elem(v).to_word_string(rs);

    // (source, targets) batches
    let batches: Vec<(usize, Vec<usize>)> = if samples == 0 {
        (0..order).map(|x| (x, (0..order).collect())).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let per_source = 500.min(samples);
        (0..samples.div_ceil(per_source))
            .map(|_| (rng.gen_range(0..order), (0..per_source).map(|_| rng.gen_range(0..order)).collect()))
            .collect()
    };
    let parabolic: Vec<WeylElem> = (0u16..(1 << rs.rank())).map(|b| WeylElem::longest_of(rs, NodeSet(b << 1))).collect();

    let [mut pairing, mut identity, mut paths, mut product, mut product_wi]: [LemmaCount; 5] = Default::default();
    let product_check = |x: usize, y: &WeylElem, count: &mut LemmaCount| {
        let xe = g.elem(x);
        let xy = xe.mul(y);
        if xy.length() + y.length() != xe.length() {
            return;
        }
        let d = q.distance(x, g.index_of(&xy));
        let lr = y.reflection_length(rs);
        count.add(d == lr, || format!("x={} y={}: d={d} l_R={lr}", word(x), y.to_word_string(rs)));
    };
    for (x, targets) in &batches {
        let x = *x;
        let b = q.bfs_uncached(x);
        let bad = q.check_weight_consistency(&b);
        paths.add(bad.is_none(), || format!("from {}: {bad:?}", word(x)));
        for &y in targets {
            let wt = b.wt(y);
            pairing.add(simple_pairings(rs, wt).iter().all(|&p| p <= 2), || format!("{} -> {}", word(x), word(y)));
            let lhs = g.length(y) as i64 - g.length(x) as i64;
            identity.add(lhs == b.dist(y) as i64 - two_rho(wt), || format!("{} -> {}", word(x), word(y)));
            let (weights, _) = q.shortest_path_weights(&b, y, path_cap);
            paths.add(weights.iter().all(|w| w == wt), || format!("{} -> {}", word(x), word(y)));
        }
        if samples == 0 {
            for y in g.elements() {
                product_check(x, &y, &mut product);
            }
        } else {
            // right factors of a reduced word of x give y with l(xy) = l(x) - l(y)
            let w = g.elem(x).reduced_word(rs);
            for cut in 0..=w.len() {
                let y = WeylElem::from_word(rs, &w[cut..]).expect("valid word").inverse();
                product_check(x, &y, &mut product);
            }
        }
        for y in &parabolic {
            product_check(x, y, &mut product_wi);
        }
    }

    let mut t = Table::new(&["check", "cases", "failures", "example"]);
    for (name, c) in [
        ("<wt(x,y), alpha_i> <= 2", &pairing),
        ("l(y) - l(x) = d(x,y) - <2rho, wt(x,y)>", &identity),
        ("shortest paths share one weight", &paths),
        ("d(x,xy) = l_R(y) when l(xy) = l(x) - l(y)", &product),
        ("same, with y = w_I", &product_wi),
    ] {
        tally.record(c.failed == 0);
        t.push(vec![json!(name), json!(c.checked), json!(c.failed), json!(c.example)]);
    }
    Ok(t)
}

fn constructions(run: &Run, args: &LevelArgs, tally: &mut Tally) -> Result<Table, Error> {
    let ctx = &run.ctx;
    let rs = &ctx.rs;
    if !matches!(rs.cartan_type().family(), Family::A | Family::B | Family::C) {
        return Err(Error::Unsupported(format!("explicit minimizers are for types A, B, C (got {})", rs.cartan_type())));
    }
    let g = ctx.group()?;
    let q = ctx.qbg()?;
    let w0 = WeylElem::longest(rs);
    let excess0 = w0.length() - w0.reflection_length(rs);
    let mut t = Table::new(&["J", "x", "l(x)", "in ^JW", "x <= xw0", "length formula", "d(x,xw0)", "rhs", "ok"]);
    for j in levels(run, args)? {
        if j.contains(0) {
            // no construction; report how many x in ^JW lie below x w0
            let below = below_x_w0(ctx, j)?;
            let na = Value::Null;
            t.push(vec![json!(j.to_string()), na.clone(), na.clone(), na.clone(), json!(below.len()), na.clone(), na.clone(), na.clone(), na]);
            continue;
        }
        let x = construct_x_classical(rs, j)?;
        let xw0 = x.mul(&w0);
        let in_quot = in_semi_affine_quotient(rs, &x, j);
        let below = x.bruhat_le(rs, &xw0)?;
        let formula = 2 * x.length() + length_excess(rs, j)? == excess0;
        let d = q.distance(g.index_of(&x), g.index_of(&xw0));
        let rhs = theorem_min_rhs(rs, j)?;
        let ok = tally.record(in_quot && below && formula && d == rhs);
        t.push(vec![
            json!(j.to_string()),
            json!(x.to_word_string(rs)),
            json!(x.length()),
            json!(in_quot),
            json!(below),
            json!(formula),
            json!(d),
            json!(rhs),
            ok,
        ]);
    }
    Ok(t)
}

fn level_pairs(run: &Run, deep: bool, tally: &mut Tally) -> Result<Table, Error> {
    let rs = &run.ctx.rs;
    let bound = if deep { u64::MAX } else { run.ctx.budgets.group };
    let mut t = Table::new(&["row", "J", "I", "l_R(w_J)", "l_R(w_I)", "conjugate", "method", "l_R additive", "ok"]);
    let mut push = |t: &mut Table, row: String, c: &qbgdim_core::theorems::PairCertificate, ok: bool| {
        let ok = tally.record(ok);
        t.push(vec![
            json!(row),
            json!(c.j),
            json!(c.i),
            json!(c.lr_j),
            json!(c.lr_i),
            json!(c.conjugate),
            json!(c.method.to_string()),
            json!(c.lr_additive),
            ok,
        ]);
    };
    match rs.cartan_type().family() {
        Family::A | Family::B | Family::C | Family::D => {
            for b in 0u16..(1 << rs.rank()) {
                let j = NodeSet(b << 1);
                let i = classical_assignment(rs, j)?;
                let c = certify_pair(rs, j, i, bound)?;
                push(&mut t, "-".into(), &c, c.ok());
            }
        }
        _ => {
            for (k, row) in exceptional_rows(rs)?.iter().enumerate() {
                let cert = certify_row(rs, row, bound)?;
                for c in &cert.pairs {
                    push(&mut t, (k + 1).to_string(), c, c.ok() && cert.values_match);
                }
            }
        }
    }
    Ok(t)
}

fn decompositions(run: &Run, args: &LevelArgs, tally: &mut Tally) -> Result<Table, Error> {
    let mut t = Table::new(&["J", "reduced J", "x", "I", "from assignment", "l_R(w_J)", "l_R(w_I)", "length condition", "d(x,xw_I)", "ok"]);
    for j in levels(run, args)? {
        match decomposition_search(&run.ctx, j) {
            Ok(d) => {
                let ok = tally.record(d.length_condition && d.d_x_xwi.map_or(true, |v| v == d.lr_i));
                t.push(vec![
                    json!(d.level),
                    json!(d.reduced_level),
                    json!(d.x),
                    json!(d.i),
                    json!(d.from_assignment),
                    json!(d.lr_j),
                    json!(d.lr_i),
                    json!(d.length_condition),
                    json!(d.d_x_xwi),
                    ok,
                ]);
            }
            Err(e) => {
                let status = tally.error(&e);
                let mut row = vec![json!(j.to_string())];
                row.extend(std::iter::repeat(Value::Null).take(8));
                row.push(status);
                t.push(row);
            }
        }
    }
    Ok(t)
}

/// All vectors of length `n` with entries in `range`, lexicographic.
fn boxes(n: usize, range: &RangeInclusive<i64>) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                range.clone().map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn d_adm(run: &Run, args: &LevelArgs, range: RangeInclusive<i64>, tally: &mut Tally) -> Result<Table, Error> {
    let ctx = &run.ctx;
    let rs = &ctx.rs;
    let mut t = Table::new(&["J", "mu", "closed", "brute", "|^JAdm|", "match"]);
    for j in levels(run, args)? {
        for mu in boxes(rs.rank(), &range) {
            let kappa = rs.coweight_class(&rs.coweight_from_fundamental_int(&mu))?;
            let input = DimInput {
                level: j,
                mu: mu.clone(),
                b: NewtonDatum::basic(rs, kappa),
            };
            let closed = d_adm_closed_form(ctx, &input);
            if let Err(Error::DepthHypothesis { required, .. }) = &closed {
                let note = json!(format!("depth < {required}"));
                t.push(vec![json!(j.to_string()), json!(mu), note, Value::Null, Value::Null, Value::Null]);
                continue;
            }
            match (closed, d_adm_brute(ctx, &input)) {
                (Ok(c), Ok(b)) => {
                    let ok = tally.record(c.exact == b.exact);
                    t.push(vec![json!(j.to_string()), json!(mu), json!(c.value), json!(b.value), json!(b.admissible), ok]);
                }
                (Err(e), _) | (_, Err(e)) => {
                    let status = tally.error(&e);
                    t.push(vec![json!(j.to_string()), json!(mu), Value::Null, Value::Null, Value::Null, status]);
                }
            }
        }
    }
    Ok(t)
}
