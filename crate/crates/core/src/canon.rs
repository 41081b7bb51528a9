//! Canonical labelling of settings.
//!
//! Vertices are first split into classes by an iterated colour refinement that
//! only looks at labelling-independent data; the canonical key is then the
//! lexicographically least encoding over all orderings that list the classes in
//! colour order. Settings in scope have a handful of vertices, so brute force
//! inside each class is cheap.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::quiver::MarkedQuiverSetting;

/// Relabelling-invariant encoding: `[k, (alpha, unmarked, marked) per vertex,
/// arrow matrix row-major]` in canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<u32>);

fn encode(s: &MarkedQuiverSetting, order: &[usize]) -> Vec<u32> {
    let k = order.len();
    let mut out = Vec::with_capacity(1 + 3 * k + k * k);
    out.push(k as u32);
    for &v in order {
        out.extend([s.dim(v), s.unmarked_loops(v), s.marked_loops(v)]);
    }
    for &i in order {
        for &j in order {
            out.push(s.arrows(i, j));
        }
    }
    out
}

/// Stable colour classes, ranked canonically (rank 0 first).
fn refine(s: &MarkedQuiverSetting) -> Vec<usize> {
    let k = s.vertex_count();
    let mut colour: Vec<usize> = {
        let base: Vec<(u32, u32, u32)> = (0..k)
            .map(|v| (s.dim(v), s.unmarked_loops(v), s.marked_loops(v)))
            .collect();
        rank(&base)
    };
    loop {
        let sig: Vec<(usize, Vec<(usize, u32)>, Vec<(usize, u32)>)> = (0..k)
            .map(|v| {
                let mut outs: Vec<(usize, u32)> = (0..k)
                    .filter(|&u| u != v && s.arrows(v, u) > 0)
                    .map(|u| (colour[u], s.arrows(v, u)))
                    .collect();
                let mut ins: Vec<(usize, u32)> = (0..k)
                    .filter(|&u| u != v && s.arrows(u, v) > 0)
                    .map(|u| (colour[u], s.arrows(u, v)))
                    .collect();
                outs.sort_unstable();
                ins.sort_unstable();
                (colour[v], outs, ins)
            })
            .collect();
        let next = rank(&sig);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn rank<T: Ord + Clone>(items: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = items.to_vec();
    distinct.sort();
    distinct.dedup();
    items
        .iter()
        .map(|x| distinct.binary_search(x).unwrap())
        .collect()
}

/// Calls `f` on every vertex ordering compatible with the colour classes.
fn for_each_ordering(colour: &[usize], mut f: impl FnMut(&[usize])) {
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();
    let mut order = Vec::with_capacity(colour.len());
    fn rec(cells: &[Vec<usize>], order: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        match cells.split_first() {
            None => f(order),
            Some((cell, rest)) => {
                let mut cell = cell.clone();
                permute_all(&mut cell, 0, &mut |p| {
                    let len = order.len();
                    order.extend_from_slice(p);
                    rec(rest, order, f);
                    order.truncate(len);
                });
            }
        }
    }
    rec(&cells, &mut order, &mut f);
}

fn permute_all(items: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute_all(items, start + 1, f);
        items.swap(start, i);
    }
}

fn best_order(s: &MarkedQuiverSetting) -> (Vec<u32>, Vec<usize>) {
    let colour = refine(s);
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    for_each_ordering(&colour, |order| {
        let enc = encode(s, order);
        if best.as_ref().map_or(true, |(b, _)| enc < *b) {
            best = Some((enc, order.to_vec()));
        }
    });
    best.expect("at least one ordering")
}

pub fn canonical_key(s: &MarkedQuiverSetting) -> CanonicalKey {
    CanonicalKey(best_order(s).0)
}

/// The setting relabelled into canonical vertex order.
pub fn canonical_form(s: &MarkedQuiverSetting) -> MarkedQuiverSetting {
    s.permute(&best_order(s).1)
}

pub fn are_isomorphic(a: &MarkedQuiverSetting, b: &MarkedQuiverSetting) -> bool {
    a.vertex_count() == b.vertex_count() && canonical_key(a) == canonical_key(b)
}

/// Every vertex permutation `p` (vertex `i` goes to `p[i]`) preserving the setting.
pub fn automorphisms(s: &MarkedQuiverSetting) -> Vec<Vec<usize>> {
    let colour = refine(s);
    let mut out = Vec::new();
    let k = s.vertex_count();
    // cells are laid out contiguously by colour; map them back onto their own positions
    let mut positions: Vec<usize> = (0..k).collect();
    positions.sort_by_key(|&v| (colour[v], v));
    let mut order = vec![0; k];
    for_each_ordering(&colour, |laid_out| {
        for (&pos, &v) in positions.iter().zip(laid_out) {
            order[pos] = v;
        }
        if s.permute(&order) == *s {
            // order[i] is the preimage of i; invert to get images
            let mut image = vec![0; k];
            for (i, &o) in order.iter().enumerate() {
                image[o] = i;
            }
            out.push(image);
        }
    });
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(alpha: Vec<u32>, rows: Vec<Vec<u32>>) -> MarkedQuiverSetting {
        let k = alpha.len();
        MarkedQuiverSetting::new(alpha, rows, vec![0; k]).unwrap()
    }

    fn q43a() -> MarkedQuiverSetting {
        s(vec![1, 1, 1], vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])
    }

    fn q43b() -> MarkedQuiverSetting {
        s(vec![1, 1, 1], vec![vec![0, 2, 0], vec![0, 0, 2], vec![2, 0, 0]])
    }

    #[test]
    fn conifold_swapped() {
        let c = s(vec![1, 1], vec![vec![0, 2], vec![2, 0]]);
        assert!(are_isomorphic(&c, &c.permute(&[1, 0])));
        assert!(are_isomorphic(&c, &c));
    }

    #[test]
    fn three_vertex_classes_differ() {
        assert!(!are_isomorphic(&q43a(), &q43b()));
    }

    #[test]
    fn key_is_permutation_invariant() {
        let x = MarkedQuiverSetting::new(
            vec![2, 1, 1],
            vec![vec![1, 1, 0], vec![2, 0, 1], vec![1, 0, 0]],
            vec![1, 0, 0],
        )
        .unwrap();
        let key = canonical_key(&x);
        for p in [[0, 2, 1], [1, 0, 2], [2, 1, 0], [1, 2, 0], [2, 0, 1]] {
            assert_eq!(canonical_key(&x.permute(&p)), key);
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&q43a()).len(), 6);
        assert_eq!(automorphisms(&q43b()).len(), 3);
        for p in automorphisms(&q43b()) {
            let mut inv = vec![0; 3];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            assert_eq!(q43b().permute(&inv), q43b());
        }
    }

    #[test]
    fn automorphisms_with_interleaved_colours() {
        // hub of dimension 2 listed first, three symmetric arms after it
        let star = MarkedQuiverSetting::new(
            vec![2, 1, 1, 1],
            vec![vec![0, 1, 1, 1], vec![1, 0, 0, 0], vec![1, 0, 0, 0], vec![1, 0, 0, 0]],
            vec![0; 4],
        )
        .unwrap();
        assert_eq!(automorphisms(&star).len(), 6);
        let mixed = star.permute(&[1, 0, 2, 3]);
        assert_eq!(automorphisms(&mixed).len(), 6);
    }
}
