//! Simple dimension vectors, representation types, local quivers and the
//! degeneration order on types.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{euler_matrix, EulerMatrix, MarkedQuiverSetting};

fn to_i64(v: &[u32]) -> Vec<i64> {
    v.iter().map(|&x| i64::from(x)).collect()
}

/// Simplicity test for a dimension vector of the underlying quiver (marked loops
/// count as loops).
///
/// The support must be strongly connected; a loop-free single vertex only admits
/// `1`, an oriented cycle (loops included) only admits the all-ones vector, and any
/// other support needs `chi(e_v, beta) <= 0` and `chi(beta, e_v) <= 0` on it.
pub fn is_simple_dimension_vector(s: &MarkedQuiverSetting, beta: &[u32]) -> Result<bool> {
    let k = s.vertex_count();
    if beta.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            got: beta.len(),
        });
    }
    Ok(simple_with(s, &euler_matrix(s), beta))
}

fn simple_with(s: &MarkedQuiverSetting, m: &EulerMatrix, beta: &[u32]) -> bool {
    let support: Vec<usize> = (0..beta.len()).filter(|&v| beta[v] > 0).collect();
    if support.is_empty() {
        return false;
    }
    let sub = s.induced(&support);
    if !sub.is_strongly_connected() {
        return false;
    }
    let n = support.len();
    if n == 1 && sub.loops(0) == 0 {
        return beta[support[0]] == 1;
    }
    let mult = |i: usize, j: usize| {
        if i == j {
            sub.loops(i)
        } else {
            sub.arrows(i, j)
        }
    };
    let is_cycle = (0..n).all(|i| {
        (0..n).map(|j| mult(i, j)).sum::<u32>() == 1 && (0..n).map(|j| mult(j, i)).sum::<u32>() == 1
    });
    if is_cycle {
        return support.iter().all(|&v| beta[v] == 1);
    }
    let b = to_i64(beta);
    support.iter().all(|&v| {
        let mut e = vec![0; beta.len()];
        e[v] = 1;
        m.form(&e, &b) <= 0 && m.form(&b, &e) <= 0
    })
}

/// `tau = (e_1, beta_1; ...; e_l, beta_l)`, factors sorted by decreasing
/// `(beta, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RepresentationType {
    factors: Vec<(u32, Vec<u32>)>,
}

fn factor_cmp(a: &(u32, Vec<u32>), b: &(u32, Vec<u32>)) -> Ordering {
    (&b.1, b.0).cmp(&(&a.1, a.0))
}

impl RepresentationType {
    pub fn new(mut factors: Vec<(u32, Vec<u32>)>) -> Self {
        factors.sort_by(factor_cmp);
        RepresentationType { factors }
    }

    pub fn factors(&self) -> &[(u32, Vec<u32>)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// True for the single-factor type `(1, alpha)`.
    pub fn is_generic(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].0 == 1
    }

    /// Moves vertex `v` to `image[v]` in every factor.
    pub fn relabelled(&self, image: &[usize]) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|(e, b)| {
                let mut nb = vec![0; b.len()];
                for (v, &x) in b.iter().enumerate() {
                    nb[image[v]] = x;
                }
                (*e, nb)
            })
            .collect();
        Self::new(factors)
    }

    /// Parses `(e,(b1,...,bk));(e,(...))`. Any punctuation separates numbers, so
    /// the compact `(1,(2;1,1,0);1,(0;0,0,1))` spelling is accepted too.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let nums: Vec<u32> = text
            .split(|c: char| !c.is_ascii_digit())
            .filter(|w| !w.is_empty())
            .map(|w| w.parse::<u32>().map_err(|_| Error::InvalidType(text.into())))
            .collect::<Result<_>>()?;
        if k == 0 || nums.is_empty() || nums.len() % (k + 1) != 0 {
            return Err(Error::InvalidType(format!(
                "`{text}` does not split into factors of {k} entries"
            )));
        }
        let factors = nums
            .chunks(k + 1)
            .map(|c| (c[0], c[1..].to_vec()))
            .collect();
        Ok(Self::new(factors))
    }

    /// Checks multiplicities, lengths, simplicity and that the factors add up to
    /// `alpha`.
    pub fn validate(&self, s: &MarkedQuiverSetting) -> Result<()> {
        let k = s.vertex_count();
        let m = euler_matrix(s);
        let mut total = vec![0u32; k];
        if self.factors.is_empty() {
            return Err(Error::InvalidType("empty type".into()));
        }
        for (e, b) in &self.factors {
            if *e == 0 || b.len() != k {
                return Err(Error::InvalidType(self.to_string()));
            }
            if !simple_with(s, &m, b) {
                return Err(Error::InvalidType(format!(
                    "{self}: factor {} is not a simple dimension vector",
                    fmt_vec(b)
                )));
            }
            for (t, x) in total.iter_mut().zip(b) {
                *t += e * x;
            }
        }
        if total != s.alpha() {
            return Err(Error::InvalidType(format!(
                "{self}: factors add up to {} instead of {}",
                fmt_vec(&total),
                fmt_vec(s.alpha())
            )));
        }
        for w in self.factors.windows(2) {
            if w[0].1 == w[1].1 && rigid(&m, &w[0].1) {
                return Err(Error::InvalidType(format!(
                    "{self}: repeated rigid factor {}",
                    fmt_vec(&w[0].1)
                )));
            }
        }
        Ok(())
    }
}

fn fmt_vec(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for RepresentationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(e, b)| format!("({e},{})", fmt_vec(b)))
            .collect();
        f.write_str(&parts.join(";"))
    }
}

/// A simple vector is rigid when it carries no moduli, i.e. `chi(beta, beta) = 1`;
/// two distinct simples of that dimension cannot occur.
fn rigid(m: &EulerMatrix, beta: &[u32]) -> bool {
    let b = to_i64(beta);
    m.form(&b, &b) == 1
}

/// Every simple dimension vector bounded componentwise by `alpha`, decreasing.
pub fn simple_vectors(s: &MarkedQuiverSetting) -> Vec<Vec<u32>> {
    let m = euler_matrix(s);
    let k = s.vertex_count();
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(
        s: &MarkedQuiverSetting,
        m: &EulerMatrix,
        v: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if v == cur.len() {
            if simple_with(s, m, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=s.dim(v) {
            cur[v] = x;
            rec(s, m, v + 1, cur, out);
        }
        cur[v] = 0;
    }
    rec(s, &m, 0, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// All representation types of `alpha`, sorted.
pub fn representation_types(s: &MarkedQuiverSetting) -> Vec<RepresentationType> {
    let m = euler_matrix(s);
    let simples = simple_vectors(s);
    let rigidity: Vec<bool> = simples.iter().map(|b| rigid(&m, b)).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(u32, Vec<u32>)> = Vec::new();
    let residual: Vec<u32> = s.alpha().to_vec();

    // Factors are produced in canonical order: simple index non-decreasing (the
    // list is decreasing), and for a repeated non-rigid vector, multiplicities
    // non-increasing.
    fn rec(
        simples: &[Vec<u32>],
        rigidity: &[bool],
        start: usize,
        max_e: u32,
        residual: Vec<u32>,
        chosen: &mut Vec<(u32, Vec<u32>)>,
        out: &mut Vec<RepresentationType>,
    ) {
        if residual.iter().all(|&x| x == 0) {
            out.push(RepresentationType::new(chosen.clone()));
            return;
        }
        for idx in start..simples.len() {
            let b = &simples[idx];
            let cap = b
                .iter()
                .zip(&residual)
                .filter(|(&x, _)| x > 0)
                .map(|(&x, &r)| r / x)
                .min()
                .unwrap_or(0);
            let cap = if idx == start { cap.min(max_e) } else { cap };
            for e in (1..=cap).rev() {
                let rest: Vec<u32> = residual.iter().zip(b).map(|(&r, &x)| r - e * x).collect();
                chosen.push((e, b.clone()));
                if rigidity[idx] {
                    rec(simples, rigidity, idx + 1, u32::MAX, rest, chosen, out);
                } else {
                    rec(simples, rigidity, idx, e, rest, chosen, out);
                }
                chosen.pop();
            }
        }
    }
    rec(
        &simples,
        &rigidity,
        0,
        u32::MAX,
        residual,
        &mut chosen,
        &mut out,
    );
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalQuiverResult {
    pub setting: MarkedQuiverSetting,
    /// Number of unmarked loops left after compensation.
    pub stratum_dim: u32,
}

/// Local quiver of a type: one vertex per factor, `delta_ij - chi(beta_i, beta_j)`
/// arrows, dimension vector the multiplicities.
///
/// Each marked loop at an original vertex `v` then turns one unmarked loop into a
/// marked one at the factor with the largest `(beta_i[v], e_i)` that still has an
/// unmarked loop (lowest index on ties). Marked loops landing on a multiplicity-one
/// factor disappear.
pub fn local_quiver(s: &MarkedQuiverSetting, tau: &RepresentationType) -> Result<LocalQuiverResult> {
    tau.validate(s)?;
    let m = euler_matrix(s);
    let f = tau.factors();
    let l = f.len();
    let betas: Vec<Vec<i64>> = f.iter().map(|(_, b)| to_i64(b)).collect();
    let mut arrows = vec![0u32; l * l];
    for i in 0..l {
        for j in 0..l {
            let n = i64::from(i == j) - m.form(&betas[i], &betas[j]);
            arrows[i * l + j] = u32::try_from(n).expect("simple factors have non-positive form");
        }
    }
    let mut marked = vec![0u32; l];
    for v in 0..s.vertex_count() {
        for _ in 0..s.marked_loops(v) {
            let target = (0..l)
                .filter(|&i| f[i].1[v] > 0 && arrows[i * l + i] > 0)
                .max_by(|&a, &b| (f[a].1[v], f[a].0).cmp(&(f[b].1[v], f[b].0)).then(b.cmp(&a)))
                .ok_or(Error::CompensationImpossible(v + 1))?;
            arrows[target * l + target] -= 1;
            marked[target] += 1;
        }
    }
    let alpha = f.iter().map(|(e, _)| *e).collect();
    let setting = MarkedQuiverSetting::from_flat(alpha, arrows, marked)?;
    let stratum_dim = (0..l).map(|i| setting.unmarked_loops(i)).sum();
    Ok(LocalQuiverResult {
        setting,
        stratum_dim,
    })
}

/// `tau1 <= tau2` when `tau2` is a degeneration of `tau1`: each simple of `tau1`
/// splits as `beta_i = sum_j n_ij gamma_j` with the multiplicities matching,
/// `sum_i e_i n_ij = f_j`.
pub fn degeneration_leq(tau1: &RepresentationType, tau2: &RepresentationType) -> bool {
    let a = tau1.factors();
    let b = tau2.factors();
    let remaining: Vec<u32> = b.iter().map(|(f, _)| *f).collect();
    if a.first().map(|x| x.1.len()) != b.first().map(|x| x.1.len()) {
        return false;
    }

    fn split_factor(
        a: &[(u32, Vec<u32>)],
        b: &[(u32, Vec<u32>)],
        i: usize,
        remaining: &mut Vec<u32>,
    ) -> bool {
        if i == a.len() {
            return remaining.iter().all(|&r| r == 0);
        }
        let (e, beta) = &a[i];
        let mut residual = beta.clone();
        split_into(a, b, i, *e, 0, &mut residual, remaining)
    }

    fn split_into(
        a: &[(u32, Vec<u32>)],
        b: &[(u32, Vec<u32>)],
        i: usize,
        e: u32,
        j: usize,
        residual: &mut Vec<u32>,
        remaining: &mut Vec<u32>,
    ) -> bool {
        if residual.iter().all(|&r| r == 0) {
            return split_factor(a, b, i + 1, remaining);
        }
        if j == b.len() {
            return false;
        }
        let gamma = &b[j].1;
        let by_dim = gamma
            .iter()
            .zip(residual.iter())
            .filter(|(&g, _)| g > 0)
            .map(|(&g, &r)| r / g)
            .min()
            .unwrap_or(0);
        let cap = by_dim.min(remaining[j] / e);
        for n in (0..=cap).rev() {
            for (r, &g) in residual.iter_mut().zip(gamma) {
                *r -= n * g;
            }
            remaining[j] -= n * e;
            let ok = split_into(a, b, i, e, j + 1, residual, remaining);
            remaining[j] += n * e;
            for (r, &g) in residual.iter_mut().zip(gamma) {
                *r += n * g;
            }
            if ok {
                return true;
            }
        }
        false
    }

    let mut remaining = remaining;
    split_factor(a, b, 0, &mut remaining)
}
