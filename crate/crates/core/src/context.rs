//! Shared configuration and lazily built group and graph data for one type.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{Lattice, DEFAULT_ADM_CAP};
use crate::cartan::CartanType;
use crate::error::Result;
use crate::qbg::{QbgGraph, DEFAULT_PATH_CAP, DEFAULT_QBG_BUDGET};
use crate::rootsys::RootSystem;
use crate::weyl::{WeylGroup, DEFAULT_GROUP_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Largest `|W|` enumerated, and the orbit-conjugacy bound.
    pub group: u64,
    /// Largest quantum Bruhat graph built.
    pub qbg: u64,
    /// Largest `<2 rho, mu>` for admissible sets.
    pub adm_cap: i64,
    /// Shortest paths enumerated per pair.
    pub path_cap: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            group: DEFAULT_GROUP_BUDGET,
            qbg: DEFAULT_QBG_BUDGET,
            adm_cap: DEFAULT_ADM_CAP,
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

#[derive(Debug)]
pub struct Context {
    pub rs: Arc<RootSystem>,
    pub lattice: Lattice,
    pub budgets: Budgets,
    group: OnceLock<Result<Arc<WeylGroup>>>,
    qbg: OnceLock<Result<Arc<QbgGraph>>>,
    xw0: OnceLock<Result<Arc<Vec<u32>>>>,
}

impl Context {
    pub fn new(ty: CartanType, lattice: Lattice, budgets: Budgets) -> Context {
        Context {
            rs: Arc::new(RootSystem::new(ty)),
            lattice,
            budgets,
            group: OnceLock::new(),
            qbg: OnceLock::new(),
            xw0: OnceLock::new(),
        }
    }

    pub fn with_defaults(ty: CartanType) -> Context {
        Context::new(ty, Lattice::default(), Budgets::default())
    }

    pub fn group(&self) -> Result<Arc<WeylGroup>> {
        self.group
            .get_or_init(|| WeylGroup::new(self.rs.clone(), self.budgets.group).map(Arc::new))
            .clone()
    }

    pub fn qbg(&self) -> Result<Arc<QbgGraph>> {
        self.qbg
            .get_or_init(|| {
                let g = self.group()?;
                QbgGraph::new(g, self.budgets.qbg).map(Arc::new)
            })
            .clone()
    }

    /// `d(x, x w0)` for every group index `x`.
    pub fn xw0_distances(&self) -> Result<Arc<Vec<u32>>> {
        self.xw0
            .get_or_init(|| {
                let g = self.group()?;
                let q = self.qbg()?;
                let w0 = g.longest_index();
                let table = (0..g.order())
                    .into_par_iter()
                    .map(|x| {
                        let y = g.index_of(&g.elem(x).mul(&g.elem(w0)));
                        q.distance(x, y) as u32
                    })
                    .collect();
                Ok(Arc::new(table))
            })
            .clone()
    }
}
