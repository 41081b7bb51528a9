//! Primitive oriented cycles of settings with all vertex dimensions one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::MarkedQuiverSetting;

/// One arrow of the multigraph: `(source, target, copy)`.
pub type Arrow = (usize, usize, u32);

/// Every arrow (loops included), ordered by source, target, copy.
pub fn arrow_list(s: &MarkedQuiverSetting) -> Vec<Arrow> {
    let k = s.vertex_count();
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for t in 0..s.arrows(i, j) {
                out.push((i, j, t));
            }
        }
    }
    out
}

/// A cycle visiting distinct vertices, starting at its smallest vertex, with a
/// concrete choice among parallel arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    /// Indices into [`arrow_list`].
    pub arrows: Vec<usize>,
}

impl Cycle {
    pub fn exponents(&self, arrow_count: usize) -> Vec<u32> {
        let mut v = vec![0; arrow_count];
        for &a in &self.arrows {
            v[a] += 1;
        }
        v
    }
}

/// All primitive cycles. For all-ones settings their traces are exactly the
/// monomials that cannot be split into smaller cycles.
pub fn primitive_cycles(s: &MarkedQuiverSetting) -> Result<Vec<Cycle>> {
    if !s.is_all_ones() {
        return Err(Error::NotAllOnes);
    }
    let k = s.vertex_count();
    let arrows = arrow_list(s);
    let first = |i: usize, j: usize| arrows.iter().position(|&(a, b, _)| a == i && b == j);
    let mut out = Vec::new();

    fn expand(
        s: &MarkedQuiverSetting,
        path: &[usize],
        first: &dyn Fn(usize, usize) -> Option<usize>,
        out: &mut Vec<Cycle>,
    ) {
        let n = path.len();
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (path[i], path[(i + 1) % n])).collect();
        let mut choice = vec![0u32; n];
        loop {
            out.push(Cycle {
                vertices: path.to_vec(),
                arrows: edges
                    .iter()
                    .zip(&choice)
                    .map(|(&(a, b), &c)| first(a, b).unwrap() + c as usize)
                    .collect(),
            });
            let mut pos = 0;
            loop {
                if pos == n {
                    return;
                }
                let (a, b) = edges[pos];
                choice[pos] += 1;
                if choice[pos] < s.arrows(a, b) {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    fn dfs(
        s: &MarkedQuiverSetting,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        first: &dyn Fn(usize, usize) -> Option<usize>,
        out: &mut Vec<Cycle>,
    ) {
        let start = path[0];
        let last = *path.last().unwrap();
        if s.arrows(last, start) > 0 && (path.len() > 1 || s.arrows(start, start) > 0) {
            expand(s, path, first, out);
        }
        for next in start + 1..s.vertex_count() {
            if !on_path[next] && s.arrows(last, next) > 0 {
                on_path[next] = true;
                path.push(next);
                dfs(s, path, on_path, first, out);
                path.pop();
                on_path[next] = false;
            }
        }
    }

    let mut on_path = vec![false; k];
    for start in 0..k {
        let mut path = vec![start];
        on_path[start] = true;
        dfs(s, &mut path, &mut on_path, &first, &mut out);
        on_path[start] = false;
    }
    out.sort();
    Ok(out)
}

/// Exponent vectors of the primitive cycles.
pub fn cycle_exponents(s: &MarkedQuiverSetting) -> Result<Vec<Vec<u32>>> {
    let n = arrow_list(s).len();
    Ok(primitive_cycles(s)?
        .iter()
        .map(|c| c.exponents(n))
        .collect())
}
