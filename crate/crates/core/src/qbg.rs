//! Quantum Bruhat graph on a finite Weyl group.
//!
//! Edges `w -> w s_alpha` go up when `l(w s_alpha) = l(w) + 1` and down, with
//! weight `alpha^vee`, when `l(w s_alpha) = l(w) - <2 rho, alpha^vee> + 1`.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::{root_index, RootSystem};
use crate::weyl::{WeylElem, WeylGroup};

/// Default bound on the number of vertices of a graph that may be built.
pub const DEFAULT_QBG_BUDGET: u64 = 100_000;
/// Default cap on explicitly enumerated shortest paths per pair.
pub const DEFAULT_PATH_CAP: usize = 10_000;
const CACHE_SLOTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QbgEdge {
    pub target: u32,
    /// Index of the positive root `alpha`.
    pub root: u16,
    pub down: bool,
}

/// Single-source shortest-path data.
#[derive(Debug)]
pub struct Bfs {
    pub source: usize,
    dist: Vec<u32>,
    /// Weight of the BFS-tree path, `rank` entries per vertex, simple-coroot coordinates.
    wt: Vec<i64>,
    parent: Vec<u32>,
    rank: usize,
}

impl Bfs {
    pub fn dist(&self, v: usize) -> usize {
        self.dist[v] as usize
    }

    pub fn wt(&self, v: usize) -> &[i64] {
        &self.wt[v * self.rank..(v + 1) * self.rank]
    }

    /// Vertices of one shortest path from the source to `v`, inclusive.
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while cur != self.source {
            cur = self.parent[cur] as usize;
            path.push(cur);
        }
        path.reverse();
        path
    }
}

#[derive(Debug)]
pub struct QbgGraph {
    group: Arc<WeylGroup>,
    offsets: Vec<u32>,
    edges: Vec<QbgEdge>,
    rev_offsets: Vec<u32>,
    rev_sources: Vec<u32>,
    cache: Mutex<VecDeque<Arc<Bfs>>>,
}

impl QbgGraph {
    pub fn new(group: Arc<WeylGroup>, budget: u64) -> Result<QbgGraph> {
        let order = group.order();
        if order as u64 > budget {
            return Err(Error::budget("quantum Bruhat graph", order, budget));
        }
        let rs = group.root_system().clone();
        let n = rs.rank();
        let np = rs.num_positive_roots();
        let per_vertex: Vec<Vec<QbgEdge>> = (0..order)
            .into_par_iter()
            .map(|w| {
                let perm = group.perm(w);
                let lw = group.length(w) as i64;
                let mut out = Vec::new();
                let mut img = vec![0i16; n];
                for k in 0..np {
                    let refl = rs.reflection_action(k);
                    for i in 0..n {
                        let c = refl[i];
                        let x = perm[root_index(c)];
                        img[i] = if c < 0 { -x } else { x };
                    }
                    let t = group.index_of_simple_images(&img);
                    let lt = group.length(t) as i64;
                    if lt == lw + 1 {
                        out.push(QbgEdge { target: t as u32, root: k as u16, down: false });
                    } else if lt == lw - rs.two_rho_on_coroot(k) + 1 {
                        out.push(QbgEdge { target: t as u32, root: k as u16, down: true });
                    }
                }
                out
            })
            .collect();
        let mut offsets = Vec::with_capacity(order + 1);
        let mut edges = Vec::new();
        offsets.push(0);
        for list in per_vertex {
            edges.extend(list);
            offsets.push(edges.len() as u32);
        }
        let mut indeg = vec![0u32; order + 1];
        for e in &edges {
            indeg[e.target as usize + 1] += 1;
        }
        for v in 0..order {
            indeg[v + 1] += indeg[v];
        }
        let rev_offsets = indeg;
        let mut fill = rev_offsets.clone();
        let mut rev_sources = vec![0u32; edges.len()];
        for u in 0..order {
            for e in &edges[offsets[u] as usize..offsets[u + 1] as usize] {
                let slot = &mut fill[e.target as usize];
                rev_sources[*slot as usize] = u as u32;
                *slot += 1;
            }
        }
        Ok(QbgGraph {
            group,
            offsets,
            edges,
            rev_offsets,
            rev_sources,
            cache: Mutex::new(VecDeque::new()),
        })
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        self.group.root_system()
    }

    pub fn num_vertices(&self) -> usize {
        self.group.order()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn out_edges(&self, v: usize) -> &[QbgEdge] {
        &self.edges[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    /// Full BFS from `source`.
    pub fn bfs_uncached(&self, source: usize) -> Bfs {
        let rs = self.root_system();
        let n = rs.rank();
        let order = self.num_vertices();
        let mut dist = vec![u32::MAX; order];
        let mut wt = vec![0i64; order * n];
        let mut parent = vec![u32::MAX; order];
        let mut queue = VecDeque::with_capacity(order);
        dist[source] = 0;
        parent[source] = source as u32;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for e in self.out_edges(u) {
                let v = e.target as usize;
                if dist[v] != u32::MAX {
                    continue;
                }
                dist[v] = du + 1;
                parent[v] = u as u32;
                wt.copy_within(u * n..u * n + n, v * n);
                if e.down {
                    for (d, c) in wt[v * n..v * n + n].iter_mut().zip(rs.coroot_coords(e.root as usize)) {
                        *d += c;
                    }
                }
                queue.push_back(v);
            }
        }
        debug_assert!(dist.iter().all(|&d| d != u32::MAX), "strongly connected");
        Bfs {
            source,
            dist,
            wt,
            parent,
            rank: n,
        }
    }

    /// BFS from `source`, served from a small LRU cache.
    pub fn bfs(&self, source: usize) -> Arc<Bfs> {
        {
            let mut cache = self.cache.lock().expect("cache lock");
            if let Some(pos) = cache.iter().position(|b| b.source == source) {
                let b = cache.remove(pos).expect("present");
                cache.push_front(b.clone());
                return b;
            }
        }
        let b = Arc::new(self.bfs_uncached(source));
        let mut cache = self.cache.lock().expect("cache lock");
        cache.push_front(b.clone());
        cache.truncate(CACHE_SLOTS);
        b
    }

    /// BFS from every vertex (parallel).
    pub fn all_sources(&self) -> Vec<Bfs> {
        (0..self.num_vertices()).into_par_iter().map(|s| self.bfs_uncached(s)).collect()
    }

    /// Sources of the edges into `v`.
    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        &self.rev_sources[self.rev_offsets[v] as usize..self.rev_offsets[v + 1] as usize]
    }

    /// `d(x, y)` by a bidirectional BFS that expands whole layers, smaller frontier first.
    pub fn distance(&self, x: usize, y: usize) -> usize {
        if x == y {
            return 0;
        }
        let order = self.num_vertices();
        let mut df = vec![u32::MAX; order];
        let mut db = vec![u32::MAX; order];
        df[x] = 0;
        db[y] = 0;
        let mut front = vec![x as u32];
        let mut back = vec![y as u32];
        let mut next = Vec::new();
        loop {
            let forward = front.len() <= back.len();
            let (layer, mine, other) = if forward {
                (&front, &mut df, &db)
            } else {
                (&back, &mut db, &df)
            };
            let mut best = u32::MAX;
            next.clear();
            for &u in layer.iter() {
                let du = mine[u as usize];
                let mut visit = |v: usize| {
                    if other[v] != u32::MAX {
                        best = best.min(du + 1 + other[v]);
                    }
                    if mine[v] == u32::MAX {
                        mine[v] = du + 1;
                        next.push(v as u32);
                    }
                };
                if forward {
                    self.out_edges(u as usize).iter().for_each(|e| visit(e.target as usize));
                } else {
                    self.in_neighbors(u as usize).iter().for_each(|&s| visit(s as usize));
                }
            }
            if best != u32::MAX {
                return best as usize;
            }
            assert!(!next.is_empty(), "quantum Bruhat graph is strongly connected");
            if forward {
                std::mem::swap(&mut front, &mut next);
            } else {
                std::mem::swap(&mut back, &mut next);
            }
        }
    }

    /// `(d(x, y), wt(x, y))`, weight in simple-coroot coordinates.
    pub fn dist_wt(&self, x: usize, y: usize) -> (usize, Vec<i64>) {
        let b = self.bfs(x);
        (b.dist(y), b.wt(y).to_vec())
    }

    /// Checks that every shortest-path edge out of `b.source` carries weights
    /// consistently, which makes all shortest paths from the source to any
    /// vertex have the same weight. Returns the first offending edge.
    pub fn check_weight_consistency(&self, b: &Bfs) -> Option<(usize, usize)> {
        let rs = self.root_system();
        for u in 0..self.num_vertices() {
            for e in self.out_edges(u) {
                let v = e.target as usize;
                if b.dist[v] != b.dist[u] + 1 {
                    continue;
                }
                let ok = (0..rs.rank()).all(|i| {
                    let add = if e.down { rs.coroot_coords(e.root as usize)[i] } else { 0 };
                    b.wt(u)[i] + add == b.wt(v)[i]
                });
                if !ok {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Weights of explicitly enumerated shortest paths from `b.source` to `y`,
    /// up to `cap` paths. Returns the weights and whether enumeration finished.
    pub fn shortest_path_weights(&self, b: &Bfs, y: usize, cap: usize) -> (Vec<Vec<i64>>, bool) {
        let rs = self.root_system().clone();
        let n = rs.rank();
        let mut out = Vec::new();
        // DFS forward along shortest-path edges that can still reach y in time.
        let target_d = b.dist[y];
        let dy = self.bfs_reverse_dist(y);
        let mut stack: Vec<(usize, Vec<i64>)> = vec![(b.source, vec![0; n])];
        while let Some((u, w)) = stack.pop() {
            if u == y && b.dist[u] == target_d {
                out.push(w);
                if out.len() >= cap {
                    return (out, false);
                }
                continue;
            }
            for e in self.out_edges(u) {
                let v = e.target as usize;
                if b.dist[v] == b.dist[u] + 1 && b.dist[v] + dy[v] == target_d {
                    let mut w2 = w.clone();
                    if e.down {
                        for (a, c) in w2.iter_mut().zip(rs.coroot_coords(e.root as usize)) {
                            *a += c;
                        }
                    }
                    stack.push((v, w2));
                }
            }
        }
        (out, true)
    }

    /// Distances to `y` from every vertex.
    fn bfs_reverse_dist(&self, y: usize) -> Vec<u32> {
        let order = self.num_vertices();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); order];
        for u in 0..order {
            for e in self.out_edges(u) {
                rev[e.target as usize].push(u as u32);
            }
        }
        let mut dist = vec![u32::MAX; order];
        let mut queue = VecDeque::from([y]);
        dist[y] = 0;
        while let Some(v) = queue.pop_front() {
            for &u in &rev[v] {
                let u = u as usize;
                if dist[u] == u32::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// DOT rendering, optionally restricted to the Bruhat interval `[lo, hi]`.
    pub fn to_dot(&self, interval: Option<(usize, usize)>) -> String {
        let rs = self.root_system();
        let g = &self.group;
        let keep: Vec<bool> = match interval {
            None => vec![true; self.num_vertices()],
            Some((lo, hi)) => {
                let (lo, hi) = (g.elem(lo), g.elem(hi));
                (0..self.num_vertices())
                    .map(|v| {
                        let w = g.elem(v);
                        lo.bruhat_le(rs, &w).unwrap_or(false) && w.bruhat_le(rs, &hi).unwrap_or(false)
                    })
                    .collect()
            }
        };
        let mut s = String::from("digraph qbg {\n");
        for v in 0..self.num_vertices() {
            if keep[v] {
                let _ = writeln!(s, "  v{v} [label=\"{}\"];", g.elem(v).to_word_string(rs));
            }
        }
        for u in 0..self.num_vertices() {
            if !keep[u] {
                continue;
            }
            for e in self.out_edges(u) {
                let v = e.target as usize;
                if !keep[v] {
                    continue;
                }
                let root: Vec<String> = rs.root_coords(e.root as usize).iter().map(|c| c.to_string()).collect();
                let style = if e.down { ", style=dashed" } else { "" };
                let _ = writeln!(s, "  v{u} -> v{v} [label=\"{}\"{style}];", root.join(","));
            }
        }
        s.push_str("}\n");
        s
    }
}

impl WeylGroup {
    /// Index of the element with the given images of the simple roots.
    pub fn index_of_simple_images(&self, img: &[i16]) -> usize {
        let key = img
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &c)| acc | (u128::from(c as u16) << (16 * i)));
        self.index_of_key(key)
    }
}

/// Whether `w -> w s_alpha` is an edge, and if so whether it goes down.
pub fn edge_kind(rs: &RootSystem, w: &WeylElem, k: usize) -> Option<bool> {
    let t = w.mul(&WeylElem::reflection(rs, k));
    let (lw, lt) = (w.length() as i64, t.length() as i64);
    if lt == lw + 1 {
        Some(false)
    } else if lt == lw - rs.two_rho_on_coroot(k) + 1 {
        Some(true)
    } else {
        None
    }
}

/// `(wt(w0, 1), d(w0, 1))` without enumerating `W`: a path from `w0` to `1` of
/// length `l_R(w0)` is searched depth-first, each step lowering `l_R` by one.
/// Any such path is shortest because `d(x, 1) >= l_R(x)`.
pub fn wt_w0_1(rs: &RootSystem) -> Result<(Vec<i64>, usize)> {
    let w0 = WeylElem::longest(rs);
    let target = w0.reflection_length(rs);
    let mut wt = vec![0i64; rs.rank()];
    if dfs_descend(rs, &w0, target, &mut wt) {
        Ok((wt, target))
    } else {
        Err(Error::Unsupported(format!(
            "no path of length l_R(w0) from w0 to 1 in {}",
            rs.cartan_type()
        )))
    }
}

fn dfs_descend(rs: &RootSystem, u: &WeylElem, remaining: usize, wt: &mut Vec<i64>) -> bool {
    if remaining == 0 {
        return u.is_identity();
    }
    for k in 0..rs.num_positive_roots() {
        let Some(down) = edge_kind(rs, u, k) else { continue };
        let v = u.mul(&WeylElem::reflection(rs, k));
        if v.reflection_length(rs) != remaining - 1 {
            continue;
        }
        if down {
            for (a, c) in wt.iter_mut().zip(rs.coroot_coords(k)) {
                *a += c;
            }
        }
        if dfs_descend(rs, &v, remaining - 1, wt) {
            return true;
        }
        if down {
            for (a, c) in wt.iter_mut().zip(rs.coroot_coords(k)) {
                *a -= c;
            }
        }
    }
    false
}

/// `<alpha_i, wt>` for a weight in simple-coroot coordinates.
pub fn simple_pairings(rs: &RootSystem, wt: &[i64]) -> Vec<i64> {
    let a = rs.cartan_matrix();
    (0..rs.rank()).map(|i| (0..rs.rank()).map(|k| wt[k] * a[k][i]).sum()).collect()
}

/// `<2 rho, wt>` for a weight in simple-coroot coordinates.
pub fn two_rho(wt: &[i64]) -> i64 {
    2 * wt.iter().sum::<i64>()
}
