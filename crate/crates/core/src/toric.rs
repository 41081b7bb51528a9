//! Isomorphism of the toric invariant rings of all-ones settings.
//!
//! For all-ones settings the invariant ring is the semigroup ring of the balanced
//! monomials, whose Hilbert basis is the set of primitive cycles. Two such rings
//! are isomorphic as graded monomial algebras when some bijection of Hilbert
//! bases extends to a linear isomorphism of the spanned spaces, i.e. when both
//! generator lists satisfy exactly the same linear relations.

use std::collections::HashMap;

use crate::cycles::cycle_exponents;
use crate::error::Result;
use crate::quiver::MarkedQuiverSetting;

/// Exact rank by fraction-free elimination.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let (n, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (r..n).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..n {
            for j in c + 1..cols {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
        if r == n {
            break;
        }
    }
    r
}

/// Per-generator invariant: sorted counts of how many generator pairs share the
/// sum `g_a + g_b`, over all partners `b`.
fn colours(gens: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = gens.len();
    let sum = |a: usize, b: usize| -> Vec<u32> {
        gens[a].iter().zip(&gens[b]).map(|(x, y)| x + y).collect()
    };
    let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
    for a in 0..n {
        for b in a..n {
            *counts.entry(sum(a, b)).or_default() += 1;
        }
    }
    (0..n)
        .map(|a| {
            let mut p: Vec<usize> = (0..n).map(|b| counts[&sum(a, b)]).collect();
            p.sort_unstable();
            p
        })
        .collect()
}

/// Decides whether the semigroups generated by two Hilbert bases are isomorphic
/// through a bijection of the bases.
pub fn semigroup_isomorphic(g1: &[Vec<u32>], g2: &[Vec<u32>]) -> bool {
    let n = g1.len();
    if n != g2.len() {
        return false;
    }
    if n == 0 {
        return true;
    }
    let (c1, c2) = (colours(g1), colours(g2));
    let (mut s1, mut s2) = (c1.clone(), c2.clone());
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return false;
    }
    let to128 = |g: &[Vec<u32>]| -> Vec<Vec<i128>> {
        g.iter()
            .map(|r| r.iter().map(|&x| i128::from(x)).collect())
            .collect()
    };
    let (a1, a2) = (to128(g1), to128(g2));
    if rank(&a1) != rank(&a2) {
        return false;
    }
    // rarest colours first
    let mut order: Vec<usize> = (0..n).collect();
    let freq = |c: &Vec<usize>| c1.iter().filter(|x| *x == c).count();
    order.sort_by_key(|&i| (freq(&c1[i]), i));

    struct Search<'a> {
        a1: &'a [Vec<i128>],
        a2: &'a [Vec<i128>],
        c1: &'a [Vec<usize>],
        c2: &'a [Vec<usize>],
        order: Vec<usize>,
        used: Vec<bool>,
        rows: Vec<usize>,
        cols: Vec<usize>,
    }

    impl Search<'_> {
        fn consistent(&self) -> bool {
            let left: Vec<Vec<i128>> = self.rows.iter().map(|&i| self.a1[i].clone()).collect();
            let right: Vec<Vec<i128>> = self.cols.iter().map(|&j| self.a2[j].clone()).collect();
            let r1 = rank(&left);
            if rank(&right) != r1 {
                return false;
            }
            let joined: Vec<Vec<i128>> = left
                .into_iter()
                .zip(right)
                .map(|(mut l, r)| {
                    l.extend(r);
                    l
                })
                .collect();
            rank(&joined) == r1
        }

        fn run(&mut self) -> bool {
            let depth = self.rows.len();
            if depth == self.order.len() {
                return true;
            }
            let i = self.order[depth];
            for j in 0..self.a2.len() {
                if self.used[j] || self.c2[j] != self.c1[i] {
                    continue;
                }
                self.used[j] = true;
                self.rows.push(i);
                self.cols.push(j);
                if self.consistent() && self.run() {
                    return true;
                }
                self.rows.pop();
                self.cols.pop();
                self.used[j] = false;
            }
            false
        }
    }

    let mut search = Search {
        a1: &a1,
        a2: &a2,
        c1: &c1,
        c2: &c2,
        order,
        used: vec![false; n],
        rows: Vec::new(),
        cols: Vec::new(),
    };
    search.run()
}

/// Toric ring isomorphism test for two all-ones settings.
pub fn toric_isomorphic(s1: &MarkedQuiverSetting, s2: &MarkedQuiverSetting) -> Result<bool> {
    Ok(semigroup_isomorphic(
        &cycle_exponents(s1)?,
        &cycle_exponents(s2)?,
    ))
}
