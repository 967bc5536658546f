//! Independent oracle: the Weyl group as integer matrices on root coordinates,
//! generated from the Cartan matrix alone, with its own root list, lengths,
//! reflection lengths, quantum Bruhat graph and subword Bruhat order.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::Ratio;
use num_traits::Zero;
use qbgdim_core::{CartanType, NodeSet, RootSystem, WeylElem};

pub type Mat = Vec<i64>;

pub struct Oracle {
    pub n: usize,
    pub a: Vec<Vec<i64>>,
    /// Reduced word of each element (BFS order, so words are shortest).
    pub words: Vec<Vec<usize>>,
    pub mats: Vec<Mat>,
    pub index: HashMap<Mat, usize>,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub len: Vec<usize>,
    /// Element index of the reflection in each positive root.
    pub refl: Vec<usize>,
    /// `<2 rho, beta^vee>` for each positive root.
    pub two_rho: Vec<i64>,
}

fn mat_mul(n: usize, x: &Mat, y: &Mat) -> Mat {
    let mut out = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            out[r * n + c] = (0..n).map(|k| x[r * n + k] * y[k * n + c]).sum();
        }
    }
    out
}

fn apply(n: usize, m: &Mat, v: &[i64]) -> Vec<i64> {
    (0..n).map(|r| (0..n).map(|k| m[r * n + k] * v[k]).sum()).collect()
}

fn identity(n: usize) -> Mat {
    (0..n * n).map(|k| i64::from(k / n == k % n)).collect()
}

impl Oracle {
    pub fn new(ty: &str) -> Oracle {
        let ty: CartanType = ty.parse().unwrap();
        let a = ty.cartan_matrix();
        let n = a.len();
        // column j of s_i is alpha_j - a[i][j] alpha_i; coroots use the transpose
        let simple = |i: usize, transpose: bool| -> Mat {
            let mut m = identity(n);
            for j in 0..n {
                let c = if transpose { a[j][i] } else { a[i][j] };
                m[i * n + j] -= c;
            }
            m
        };
        let s: Vec<Mat> = (0..n).map(|i| simple(i, false)).collect();
        let sc: Vec<Mat> = (0..n).map(|i| simple(i, true)).collect();

        let mut words = vec![Vec::new()];
        let mut mats = vec![identity(n)];
        let mut comats = vec![identity(n)];
        let mut index = HashMap::from([(identity(n), 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for i in 0..n {
                let m = mat_mul(n, &mats[u], &s[i]);
                if index.contains_key(&m) {
                    continue;
                }
                let cm = mat_mul(n, &comats[u], &sc[i]);
                let mut w = words[u].clone();
                w.push(i + 1);
                index.insert(m.clone(), mats.len());
                queue.push_back(mats.len());
                mats.push(m);
                comats.push(cm);
                words.push(w);
            }
        }

        let mut seen = HashSet::new();
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut coroots: Vec<Vec<i64>> = Vec::new();
        for (m, cm) in mats.iter().zip(&comats) {
            for i in 0..n {
                let col: Vec<i64> = (0..n).map(|r| m[r * n + i]).collect();
                if col.iter().all(|&x| x >= 0) && seen.insert(col.clone()) {
                    roots.push(col);
                    coroots.push((0..n).map(|r| cm[r * n + i]).collect());
                }
            }
        }
        let pair = |gamma: &[i64], cv: &[i64]| -> i64 {
            (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).map(|(j, k)| gamma[j] * cv[k] * a[k][j]).sum()
        };
        let two_rho: Vec<i64> = coroots.iter().map(|cv| roots.iter().map(|g| pair(g, cv)).sum()).collect();
        let refl = roots
            .iter()
            .zip(&coroots)
            .map(|(beta, cv)| {
                let mut m = identity(n);
                for j in 0..n {
                    let e: Vec<i64> = (0..n).map(|r| i64::from(r == j)).collect();
                    let p = pair(&e, cv);
                    for r in 0..n {
                        m[r * n + j] -= p * beta[r];
                    }
                }
                index[&m]
            })
            .collect();
        let len = mats
            .iter()
            .map(|m| roots.iter().filter(|b| apply(n, m, b).iter().any(|&x| x < 0)).count())
            .collect();
        Oracle {
            n,
            a,
            words,
            mats,
            index,
            roots,
            coroots,
            len,
            refl,
            two_rho,
        }
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.index[&mat_mul(self.n, &self.mats[x], &self.mats[y])]
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.mul(x, y) == 0).unwrap()
    }

    pub fn longest(&self) -> usize {
        (0..self.order()).max_by_key(|&x| self.len[x]).unwrap()
    }

    /// Element of the product of simple reflections in `word`.
    pub fn from_word(&self, word: &[usize]) -> usize {
        let mut m = identity(self.n);
        for &i in word {
            m = mat_mul(self.n, &m, &self.mats[self.index_of_simple(i)]);
        }
        self.index[&m]
    }

    fn index_of_simple(&self, i: usize) -> usize {
        self.words.iter().position(|w| w == &[i]).unwrap()
    }

    /// `n - dim Fix(w)` by exact Gaussian elimination over the rationals.
    pub fn reflection_length(&self, x: usize) -> usize {
        let n = self.n;
        let mut rows: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|r| (0..n).map(|c| Ratio::from_integer(self.mats[x][r * n + c] - i64::from(r == c))).collect())
            .collect();
        let mut rank = 0;
        for c in 0..n {
            let Some(p) = (rank..n).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..n {
                if r != rank && !rows[r][c].is_zero() {
                    let f = rows[r][c] / rows[rank][c];
                    for k in 0..n {
                        let v = rows[rank][k];
                        rows[r][k] -= f * v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Longest element of the parabolic subgroup on `j` (finite nodes).
    pub fn longest_of(&self, j: NodeSet) -> usize {
        (0..self.order())
            .filter(|&x| self.words[x].iter().all(|&i| j.contains(i)))
            .max_by_key(|&x| self.len[x])
            .unwrap()
    }

    /// Edges `(target, root index, down)` out of `x`.
    pub fn edges(&self, x: usize) -> Vec<(usize, usize, bool)> {
        (0..self.roots.len())
            .filter_map(|k| {
                let t = self.mul(x, self.refl[k]);
                let (lx, lt) = (self.len[x] as i64, self.len[t] as i64);
                if lt == lx + 1 {
                    Some((t, k, false))
                } else if lt == lx - self.two_rho[k] + 1 {
                    Some((t, k, true))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Distances and one shortest-path weight (simple-coroot coordinates) from `x`.
    pub fn bfs(&self, x: usize) -> (Vec<usize>, Vec<Vec<i64>>) {
        let mut dist = vec![usize::MAX; self.order()];
        let mut wt = vec![vec![0; self.n]; self.order()];
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for (t, k, down) in self.edges(u) {
                if dist[t] == usize::MAX {
                    dist[t] = dist[u] + 1;
                    let mut w = wt[u].clone();
                    if down {
                        for (a, b) in w.iter_mut().zip(&self.coroots[k]) {
                            *a += b;
                        }
                    }
                    wt[t] = w;
                    queue.push_back(t);
                }
            }
        }
        (dist, wt)
    }

    /// All elements below `w` in Bruhat order, as subword products of one reduced word.
    pub fn bruhat_ideal(&self, w: usize) -> HashSet<usize> {
        let mut ideal = HashSet::from([0usize]);
        for &i in &self.words[w] {
            let s = self.index_of_simple(i);
            let next: Vec<usize> = ideal.iter().map(|&v| self.mul(v, s)).collect();
            ideal.extend(next);
        }
        ideal
    }

    /// Inversion set `{beta > 0 : w beta < 0}` as root indices.
    pub fn inversions(&self, x: usize) -> HashSet<usize> {
        (0..self.roots.len())
            .filter(|&k| apply(self.n, &self.mats[x], &self.roots[k]).iter().any(|&c| c < 0))
            .collect()
    }

    pub fn to_lib(&self, rs: &RootSystem, x: usize) -> WeylElem {
        WeylElem::from_word(rs, &self.words[x]).unwrap()
    }
}

/// Types with rank at most 3.
pub const SMALL_TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C3", "G2"];
