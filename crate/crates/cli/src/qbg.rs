use clap::Subcommand;
use qbgdim_core::qbg::wt_w0_1;
use qbgdim_core::{Error, RootSystem, WeylElem};
use serde_json::{json, Value};

use crate::output::{document, header, Format, Table};
use crate::{Outcome, Run};

#[derive(Subcommand)]
pub enum QbgCmd {
    /// `d(x, y)`.
    Dist { x: String, y: String },
    /// `d(x, y)` and `wt(x, y)`.
    Wt { x: String, y: String },
    /// `wt(w0, 1)` and `d(w0, 1)` without enumerating the group.
    WtW0,
    /// Graphviz rendering, optionally of the Bruhat interval `[from, to]`.
    ExportDot {
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
    },
    /// Vertices and edges as JSON.
    ExportJson,
}

/// Weight in simple-coroot coordinates and fundamental coweight coordinates.
fn weight_cells(rs: &RootSystem, wt: &[i64]) -> (Value, Value) {
    (json!(wt), json!(rs.coroot_to_fundamental_int(wt)))
}

pub fn execute(cmd: &QbgCmd, run: &Run, format: Option<Format>) -> Result<Outcome, Error> {
    let ctx = &run.ctx;
    let rs = &ctx.rs;
    let format = format.unwrap_or(match cmd {
        QbgCmd::ExportDot { .. } => Format::Dot,
        QbgCmd::ExportJson => Format::Json,
        _ => Format::Tsv,
    });
    let text = match cmd {
        QbgCmd::Dist { x, y } | QbgCmd::Wt { x, y } => {
            let q = ctx.qbg()?;
            let g = q.group();
            let xe = WeylElem::parse(rs, x)?;
            let ye = WeylElem::parse(rs, y)?;
            let (d, wt) = q.dist_wt(g.index_of(&xe), g.index_of(&ye));
            let xs = json!(xe.to_word_string(rs));
            let ys = json!(ye.to_word_string(rs));
            let table = if matches!(cmd, QbgCmd::Dist { .. }) {
                let mut t = Table::new(&["x", "y", "d"]);
                t.push(vec![xs, ys, json!(d)]);
                t
            } else {
                let mut t = Table::new(&["x", "y", "d", "wt", "wt_fundamental"]);
                let (c, f) = weight_cells(rs, &wt);
                t.push(vec![xs, ys, json!(d), c, f]);
                t
            };
            table.render(run, format)
        }
        QbgCmd::WtW0 => {
            let (wt, d) = wt_w0_1(rs)?;
            let lr = WeylElem::longest(rs).reflection_length(rs);
            let mut t = Table::new(&["d", "l_R(w0)", "wt", "wt_fundamental"]);
            let (c, f) = weight_cells(rs, &wt);
            t.push(vec![json!(d), json!(lr), c, f]);
            t.render(run, format)
        }
        QbgCmd::ExportDot { from, to } => {
            let q = ctx.qbg()?;
            let g = q.group();
            let interval = match (from, to) {
                (Some(a), Some(b)) => Some((
                    g.index_of(&WeylElem::parse(rs, a)?),
                    g.index_of(&WeylElem::parse(rs, b)?),
                )),
                _ => None,
            };
            let mut s = header(run, "//");
            s.push_str(&q.to_dot(interval));
            s
        }
        QbgCmd::ExportJson => {
            let q = ctx.qbg()?;
            let g = q.group();
            let vertices: Vec<Value> = (0..g.order())
                .map(|v| json!({ "index": v, "word": g.elem(v).to_word_string(rs), "length": g.length(v) }))
                .collect();
            let edges: Vec<Value> = (0..g.order())
                .flat_map(|u| {
                    q.out_edges(u).iter().map(move |e| {
                        json!({
                            "source": u,
                            "target": e.target,
                            "root": rs.root_coords(e.root as usize),
                            "down": e.down,
                        })
                    })
                })
                .collect();
            document(run, json!({ "vertices": vertices, "edges": edges }))
        }
    };
    print!("{text}");
    Ok(Outcome::Ok)
}
