use clap::{Args, ValueEnum};
use num_traits::ToPrimitive;
use qbgdim_core::affine::check_level;
use qbgdim_core::dimension::{dim_formula, DimInput, NewtonDatum};
use qbgdim_core::{CoweightBasis, CoweightQ, Error, NodeSet, RootSystem};
use serde_json::{json, Value};

use crate::output::{document, Format, Table};
use crate::{Outcome, Run};

#[derive(Args)]
pub struct DimArgs {
    /// Level `J` as a node list such as `0,2`; empty for the Iwahori level.
    #[arg(long, default_value = "")]
    pub level: String,
    /// Dominant coweight `mu`, comma separated.
    #[arg(long)]
    pub mu: String,
    /// Newton point `nu`; zero when omitted.
    #[arg(long)]
    pub nu: Option<String>,
    /// Class index of `kappa(b)`; the class of `mu` when omitted.
    #[arg(long)]
    pub kappa: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub defect: u64,
    /// Basis for `--mu` and `--nu`.
    #[arg(long, value_enum, default_value_t = Basis::Fundamental)]
    pub mu_coords: Basis,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Basis {
    Fundamental,
    Coroot,
}

impl Basis {
    fn core(self) -> CoweightBasis {
        match self {
            Basis::Fundamental => CoweightBasis::Fundamental,
            Basis::Coroot => CoweightBasis::SimpleCoroot,
        }
    }
}

fn integral_fundamental(rs: &RootSystem, mu: &CoweightQ) -> Result<Vec<i64>, Error> {
    rs.to_fundamental(mu)?
        .iter()
        .map(|c| {
            c.is_integer()
                .then(|| c.to_integer().to_i64())
                .flatten()
                .ok_or_else(|| Error::Invalid(format!("mu = {mu} is not integral")))
        })
        .collect()
}

pub fn execute(args: &DimArgs, run: &Run, format: Option<Format>) -> Result<Outcome, Error> {
    let ctx = &run.ctx;
    let rs = &ctx.rs;
    let level = NodeSet::parse(&args.level)?;
    check_level(rs, level)?;
    let mu_cw = rs.parse_coweight(&args.mu, args.mu_coords.core())?;
    let mu = integral_fundamental(rs, &mu_cw)?;
    let nu = match &args.nu {
        Some(s) => rs.parse_coweight(s, args.mu_coords.core())?,
        None => CoweightQ::zero(rs.cartan_type()),
    };
    let kappa = match args.kappa {
        Some(k) => k,
        None => rs.coweight_class(&mu_cw)?,
    };
    let input = DimInput {
        level,
        mu,
        b: NewtonDatum {
            nu,
            kappa,
            defect: args.defect,
        },
    };
    let report = dim_formula(ctx, &input)?;
    let echo = json!({
        "level": level.to_string(),
        "mu_fundamental": input.mu,
        "nu_coroot": input.b.nu.to_string(),
        "kappa": kappa,
        "defect": args.defect,
    });
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => document(
            run,
            json!({
                "value": report.value,
                "case": report.case,
                "hypotheses": report.hypotheses,
                "inputs_echo": echo,
            }),
        ),
        other => {
            let mut t = Table::new(&["value", "case"]);
            t.push(vec![Value::String(report.value.clone()), json!(report.case.to_string())]);
            t.render(run, other)
        }
    };
    print!("{text}");
    Ok(Outcome::Ok)
}
