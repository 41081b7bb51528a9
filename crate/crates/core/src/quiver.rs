//! Marked quiver settings and Euler-form arithmetic.
//!
//! Vertices are 0-indexed throughout the library API; the text format and the
//! command-line front end present them 1-indexed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A marked quiver together with a dimension vector.
///
/// The arrow matrix is stored row-major: entry `(i, j)` with `i != j` counts
/// arrows `v_i -> v_j`, entry `(i, i)` counts the *unmarked* loops at `v_i`.
/// Marked loops (trace-zero loops) are kept in a separate vector.
///
/// Marked loops at a vertex with `alpha_v = 1` carry no coordinate (a trace-zero
/// 1x1 matrix vanishes), so construction drops them.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SettingRepr", into = "SettingRepr")]
pub struct MarkedQuiverSetting {
    alpha: Vec<u32>,
    arrows: Vec<u32>,
    marked: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct SettingRepr {
    vertex_count: usize,
    alpha: Vec<u32>,
    arrows: Vec<Vec<u32>>,
    marked_loops: Vec<u32>,
}

impl TryFrom<SettingRepr> for MarkedQuiverSetting {
    type Error = Error;

    fn try_from(r: SettingRepr) -> Result<Self> {
        if r.alpha.len() != r.vertex_count {
            return Err(Error::LengthMismatch {
                expected: r.vertex_count,
                got: r.alpha.len(),
            });
        }
        MarkedQuiverSetting::new(r.alpha, r.arrows, r.marked_loops)
    }
}

impl From<MarkedQuiverSetting> for SettingRepr {
    fn from(s: MarkedQuiverSetting) -> Self {
        SettingRepr {
            vertex_count: s.vertex_count(),
            arrows: s.arrow_rows(),
            alpha: s.alpha,
            marked_loops: s.marked,
        }
    }
}

impl MarkedQuiverSetting {
    /// Builds a setting from a dimension vector, a square arrow matrix (diagonal =
    /// unmarked loops) and per-vertex marked-loop counts.
    pub fn new(alpha: Vec<u32>, arrows: Vec<Vec<u32>>, marked: Vec<u32>) -> Result<Self> {
        let k = alpha.len();
        if arrows.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: arrows.len(),
            });
        }
        let mut flat = Vec::with_capacity(k * k);
        for row in &arrows {
            if row.len() != k {
                return Err(Error::LengthMismatch {
                    expected: k,
                    got: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(alpha, flat, marked)
    }

    /// Same as [`MarkedQuiverSetting::new`] with a row-major flattened arrow matrix.
    pub fn from_flat(alpha: Vec<u32>, arrows: Vec<u32>, mut marked: Vec<u32>) -> Result<Self> {
        let k = alpha.len();
        if k == 0 {
            return Err(Error::InvalidSetting("a setting needs at least one vertex".into()));
        }
        if arrows.len() != k * k {
            return Err(Error::LengthMismatch {
                expected: k * k,
                got: arrows.len(),
            });
        }
        if marked.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: marked.len(),
            });
        }
        if let Some(v) = alpha.iter().position(|&a| a == 0) {
            return Err(Error::InvalidSetting(format!(
                "vertex {} has dimension 0",
                v + 1
            )));
        }
        for (m, &a) in marked.iter_mut().zip(&alpha) {
            if a == 1 {
                *m = 0;
            }
        }
        Ok(MarkedQuiverSetting {
            alpha,
            arrows,
            marked,
        })
    }

    /// Single vertex of dimension `dim` with the given loop counts.
    pub fn one_vertex(dim: u32, unmarked: u32, marked: u32) -> Result<Self> {
        Self::from_flat(vec![dim], vec![unmarked], vec![marked])
    }

    /// Oriented cycle `v_1 -> v_2 -> ... -> v_l -> v_1` with all dimensions 1 and
    /// `bundles[i]` parallel arrows on the edge leaving `v_{i+1}`.
    pub fn cycle(bundles: &[u32]) -> Result<Self> {
        let l = bundles.len();
        let mut arrows = vec![0; l * l];
        for (i, &b) in bundles.iter().enumerate() {
            let j = (i + 1) % l;
            arrows[i * l + j] += b;
        }
        Self::from_flat(vec![1; l], arrows, vec![0; l])
    }

    pub fn vertex_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn dim(&self, v: usize) -> u32 {
        self.alpha[v]
    }

    /// Number of arrows `i -> j`; for `i == j` the number of unmarked loops.
    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.arrows[i * self.vertex_count() + j]
    }

    pub fn arrow_rows(&self) -> Vec<Vec<u32>> {
        self.arrows
            .chunks(self.vertex_count())
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn unmarked_loops(&self, v: usize) -> u32 {
        self.arrows(v, v)
    }

    pub fn marked_loops(&self, v: usize) -> u32 {
        self.marked[v]
    }

    pub fn marked(&self) -> &[u32] {
        &self.marked
    }

    /// Marked plus unmarked loops at `v`.
    pub fn loops(&self, v: usize) -> u32 {
        self.arrows(v, v) + self.marked[v]
    }

    pub fn total_marked(&self) -> u32 {
        self.marked.iter().sum()
    }

    pub fn total_loops(&self) -> u32 {
        (0..self.vertex_count()).map(|v| self.loops(v)).sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.alpha.iter().all(|&a| a == 1)
    }

    /// Total arrow count `v -> u` over `u != v`.
    pub fn out_arrows(&self, v: usize) -> u32 {
        (0..self.vertex_count())
            .filter(|&u| u != v)
            .map(|u| self.arrows(v, u))
            .sum()
    }

    pub fn in_arrows(&self, v: usize) -> u32 {
        (0..self.vertex_count())
            .filter(|&u| u != v)
            .map(|u| self.arrows(u, v))
            .sum()
    }

    /// Relabels vertices: vertex `i` of the result is vertex `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let k = self.vertex_count();
        debug_assert_eq!(perm.len(), k);
        let mut arrows = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                arrows[i * k + j] = self.arrows(perm[i], perm[j]);
            }
        }
        MarkedQuiverSetting {
            alpha: perm.iter().map(|&p| self.alpha[p]).collect(),
            arrows,
            marked: perm.iter().map(|&p| self.marked[p]).collect(),
        }
    }

    /// The opposite quiver: every arrow reversed, loops and dimensions kept.
    pub fn opposite(&self) -> Self {
        let k = self.vertex_count();
        let mut arrows = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                arrows[j * k + i] = self.arrows(i, j);
            }
        }
        MarkedQuiverSetting {
            alpha: self.alpha.clone(),
            arrows,
            marked: self.marked.clone(),
        }
    }

    /// The full sub-setting on `vertices` (in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Self {
        self.permute_partial(vertices)
    }

    fn permute_partial(&self, vertices: &[usize]) -> Self {
        let n = vertices.len();
        let mut arrows = vec![0; n * n];
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate() {
                arrows[a * n + b] = self.arrows(i, j);
            }
        }
        MarkedQuiverSetting {
            alpha: vertices.iter().map(|&v| self.alpha[v]).collect(),
            arrows,
            marked: vertices.iter().map(|&v| self.marked[v]).collect(),
        }
    }

    /// Disjoint union of two settings, `other` placed after `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let (k1, k2) = (self.vertex_count(), other.vertex_count());
        let k = k1 + k2;
        let mut arrows = vec![0; k * k];
        for i in 0..k1 {
            for j in 0..k1 {
                arrows[i * k + j] = self.arrows(i, j);
            }
        }
        for i in 0..k2 {
            for j in 0..k2 {
                arrows[(k1 + i) * k + k1 + j] = other.arrows(i, j);
            }
        }
        let mut alpha = self.alpha.clone();
        alpha.extend_from_slice(&other.alpha);
        let mut marked = self.marked.clone();
        marked.extend_from_slice(&other.marked);
        MarkedQuiverSetting {
            alpha,
            arrows,
            marked,
        }
    }

    pub(crate) fn set_arrows(&mut self, i: usize, j: usize, n: u32) {
        let k = self.vertex_count();
        self.arrows[i * k + j] = n;
    }

    pub(crate) fn set_marked(&mut self, v: usize, n: u32) {
        self.marked[v] = if self.alpha[v] == 1 { 0 } else { n };
    }

    /// Removes vertex `v` together with every arrow touching it.
    pub(crate) fn without_vertex(&self, v: usize) -> Self {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&u| u != v).collect();
        self.permute_partial(&keep)
    }

    /// True when every vertex reaches every other one along arrows.
    pub fn is_strongly_connected(&self) -> bool {
        let k = self.vertex_count();
        let reach = |forward: bool| {
            let mut seen = vec![false; k];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for w in 0..k {
                    let n = if forward {
                        self.arrows(u, w)
                    } else {
                        self.arrows(w, u)
                    };
                    if n > 0 && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.into_iter().all(|x| x)
        };
        reach(true) && reach(false)
    }
}

impl fmt::Debug for MarkedQuiverSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Setting(alpha={:?}, arrows={:?}", self.alpha, self.arrow_rows())?;
        if self.marked.iter().any(|&m| m > 0) {
            write!(f, ", marked={:?}", self.marked)?;
        }
        write!(f, ")")
    }
}

/// `M_ij = delta_ij - #(arrows v_i -> v_j)`, loops (marked or not) counting on the
/// diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerMatrix {
    k: usize,
    entries: Vec<i64>,
}

impl EulerMatrix {
    pub fn size(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.k + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.k).map(|r| r.to_vec()).collect()
    }

    /// `beta^T M gamma` without length checks.
    pub fn form(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &b) in beta.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let row = &self.entries[i * self.k..(i + 1) * self.k];
            acc += b * row.iter().zip(gamma).map(|(m, g)| m * g).sum::<i64>();
        }
        acc
    }
}

pub fn euler_matrix(s: &MarkedQuiverSetting) -> EulerMatrix {
    let k = s.vertex_count();
    let mut entries = vec![0i64; k * k];
    for i in 0..k {
        for j in 0..k {
            let n = if i == j {
                s.loops(i)
            } else {
                s.arrows(i, j)
            };
            entries[i * k + j] = i64::from(i == j) - i64::from(n);
        }
    }
    EulerMatrix { k, entries }
}

/// The Euler form `chi(beta, gamma)` of the underlying quiver.
pub fn euler_form(s: &MarkedQuiverSetting, beta: &[i64], gamma: &[i64]) -> Result<i64> {
    let k = s.vertex_count();
    for v in [beta, gamma] {
        if v.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: v.len(),
            });
        }
    }
    Ok(euler_matrix(s).form(beta, gamma))
}

pub(crate) fn alpha_i64(s: &MarkedQuiverSetting) -> Vec<i64> {
    s.alpha().iter().map(|&a| i64::from(a)).collect()
}

pub(crate) fn unit(k: usize, v: usize) -> Vec<i64> {
    let mut e = vec![0; k];
    e[v] = 1;
    e
}

/// `chi(alpha, alpha)` of the setting's own dimension vector.
pub fn euler_alpha(s: &MarkedQuiverSetting) -> i64 {
    let a = alpha_i64(s);
    euler_matrix(s).form(&a, &a)
}
