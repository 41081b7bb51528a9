//! Smoothness, isolated singularities and the exhaustive table of reduced
//! singular settings.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, canonical_key, CanonicalKey};
use crate::cores::cycle_cores;
use crate::dimension::reduced_dimension;
use crate::error::{Error, Result};
use crate::fingerprint::graded_dimensions;
use crate::quiver::MarkedQuiverSetting;
use crate::reduction::{is_reduced, reduce};
use crate::toric::toric_isomorphic;

/// True for the reduced settings with a polynomial invariant ring: a single vertex
/// with no loop, with one loop (marked or not), or of dimension two with two loops.
pub fn is_smooth_reduced(s: &MarkedQuiverSetting) -> bool {
    s.vertex_count() == 1 && (s.loops(0) <= 1 || (s.dim(0) == 2 && s.loops(0) == 2))
}

pub fn is_smooth(s: &MarkedQuiverSetting) -> bool {
    cycle_cores(s)
        .iter()
        .all(|c| is_smooth_reduced(&reduce(c).reduced))
}

fn check_reduced_singular(s: &MarkedQuiverSetting) -> Result<()> {
    if !s.is_strongly_connected() {
        return Err(Error::Precondition("setting is not strongly connected".into()));
    }
    if !is_reduced(s) {
        return Err(Error::Precondition("setting is not reduced".into()));
    }
    if is_smooth_reduced(s) {
        return Err(Error::Precondition("setting is smooth".into()));
    }
    Ok(())
}

/// For an oriented cycle of dimension-one vertices whose every edge carries at
/// least two arrows (the isolated singularities), the sorted bundle sizes.
pub fn is_isolated(s: &MarkedQuiverSetting) -> Result<Option<Vec<u32>>> {
    check_reduced_singular(s)?;
    Ok(isolated_tuple(s))
}

pub(crate) fn isolated_tuple(s: &MarkedQuiverSetting) -> Option<Vec<u32>> {
    let k = s.vertex_count();
    if !s.is_all_ones() || k < 2 {
        return None;
    }
    let mut bundles = Vec::with_capacity(k);
    for v in 0..k {
        if s.loops(v) > 0 {
            return None;
        }
        let outs: Vec<usize> = (0..k).filter(|&u| u != v && s.arrows(v, u) > 0).collect();
        let ins = (0..k).filter(|&u| u != v && s.arrows(u, v) > 0).count();
        if outs.len() != 1 || ins != 1 {
            return None;
        }
        let b = s.arrows(v, outs[0]);
        if b < 2 {
            return None;
        }
        bundles.push(b);
    }
    // one in- and one out-neighbour everywhere plus strong connectivity: one cycle
    if !s.is_strongly_connected() {
        return None;
    }
    bundles.sort_unstable();
    Some(bundles)
}

/// Quotient dimension of the isolated singularity with the given bundle sizes:
/// `k_1 + ... + k_l - l + 1`.
pub fn isolated_dimension(bundles: &[u32]) -> u64 {
    bundles.iter().map(|&b| u64::from(b)).sum::<u64>() + 1 - bundles.len() as u64
}

/// Per-vertex loop data `(unmarked, marked)`.
type Loops = Vec<(u32, u32)>;

/// Weight a vertex uses up from the `d - 1` budget, with the smallest in/out
/// weight it needs to stay reduced and strongly connected.
fn vertex_cost(a: u32, unmarked: u32, marked: u32) -> (u32, u32) {
    match unmarked + marked {
        0 => (a, a + 1),
        1 => (2 * a - marked, 2),
        n => (a * a * (n - 1) + a - marked, 1),
    }
}

fn alpha_vectors(budget: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if acc.len() >= 2 {
        out.push(acc.clone());
    }
    for a in (1..=max_part.min(budget)).rev() {
        acc.push(a);
        alpha_vectors(budget - a, a, acc, out);
        acc.pop();
    }
}

fn loop_configs(alpha: &[u32], budget: u32) -> Vec<Loops> {
    fn rec(alpha: &[u32], v: usize, budget: u32, acc: &mut Loops, out: &mut Vec<Loops>) {
        if v == alpha.len() {
            out.push(acc.clone());
            return;
        }
        let a = alpha[v];
        let max_n = if a == 1 { 0 } else { budget };
        for n in 0..=max_n {
            for marked in 0..=n {
                let (cost, _) = vertex_cost(a, n - marked, marked);
                if cost > budget {
                    continue;
                }
                acc.push((n - marked, marked));
                rec(alpha, v + 1, budget - cost, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(alpha, 0, budget, &mut Vec::new(), &mut out);
    out
}

struct Filler<'a> {
    alpha: &'a [u32],
    loops: &'a Loops,
    min_out: Vec<u32>,
    min_in: Vec<u32>,
    d: u64,
    arrows: Vec<u32>,
    found: &'a mut BTreeMap<CanonicalKey, MarkedQuiverSetting>,
}

impl Filler<'_> {
    fn k(&self) -> usize {
        self.alpha.len()
    }

    /// Fills row `i` from column `j` on; `row_w` is the weight already placed in
    /// the row, `budget` what remains overall.
    fn fill(&mut self, i: usize, j: usize, row_w: u32, budget: u32) {
        let k = self.k();
        if i == k {
            if budget == 0 {
                self.check();
            }
            return;
        }
        if j == k {
            if row_w < self.min_out[i] {
                return;
            }
            let rest: u32 = (i + 1..k).map(|r| self.alpha[r] * self.min_out[r]).sum();
            if rest > budget {
                return;
            }
            self.fill(i + 1, 0, 0, budget);
            return;
        }
        if j == i {
            self.fill(i, j + 1, row_w, budget);
            return;
        }
        let unit = self.alpha[i] * self.alpha[j];
        let mut n = 0;
        loop {
            self.arrows[i * k + j] = n;
            self.fill(i, j + 1, row_w + n * self.alpha[j], budget - n * unit);
            n += 1;
            if n * unit > budget {
                break;
            }
        }
        self.arrows[i * k + j] = 0;
    }

    fn check(&mut self) {
        let k = self.k();
        for v in 0..k {
            let w: u32 = (0..k)
                .filter(|&u| u != v)
                .map(|u| self.arrows[u * k + v] * self.alpha[u])
                .sum();
            if w < self.min_in[v] {
                return;
            }
        }
        let mut arrows = self.arrows.clone();
        let marked: Vec<u32> = self.loops.iter().map(|l| l.1).collect();
        for v in 0..k {
            arrows[v * k + v] = self.loops[v].0;
        }
        let s = MarkedQuiverSetting::from_flat(self.alpha.to_vec(), arrows, marked)
            .expect("generated settings are valid");
        if s.is_strongly_connected()
            && is_reduced(&s)
            && reduced_dimension(&s) == self.d
            && !is_smooth_reduced(&s)
        {
            let c = canonical_form(&s);
            self.found.entry(canonical_key(&c)).or_insert(c);
        }
    }
}

fn single_vertex_settings(d: u64) -> Vec<MarkedQuiverSetting> {
    let mut out = Vec::new();
    for a in 2u64.. {
        if a * a + 1 > d + 2 {
            break;
        }
        for n in 2u64.. {
            if (n - 1) * a * a + 1 > d + n {
                break;
            }
            for m in 0..=n {
                if (n - 1) * a * a + 1 - m == d {
                    let s = MarkedQuiverSetting::one_vertex(a as u32, (n - m) as u32, m as u32)
                        .unwrap();
                    if !is_smooth_reduced(&s) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

/// Every reduced, strongly connected, singular setting of quotient dimension `d`,
/// up to relabelling, in canonical form and sorted by canonical key.
pub fn enumerate_reduced_settings(d: u64) -> Vec<MarkedQuiverSetting> {
    if d < 3 {
        return Vec::new();
    }
    let budget = u32::try_from(d - 1).expect("dimension fits in u32");
    let mut alphas = Vec::new();
    alpha_vectors(budget, budget, &mut Vec::new(), &mut alphas);
    let jobs: Vec<(Vec<u32>, Loops)> = alphas
        .into_iter()
        .flat_map(|a| {
            loop_configs(&a, budget)
                .into_iter()
                .map(move |l| (a.clone(), l))
        })
        .collect();
    let found: BTreeMap<CanonicalKey, MarkedQuiverSetting> = jobs
        .par_iter()
        .map(|(alpha, loops)| {
            let mut found = BTreeMap::new();
            let k = alpha.len();
            let sq: i64 = alpha
                .iter()
                .zip(loops)
                .map(|(&a, &(u, m))| i64::from(a * a) * (1 - i64::from(u + m)))
                .sum();
            let marked: i64 = loops.iter().map(|l| i64::from(l.1)).sum();
            let weight = d as i64 - 1 + marked + sq;
            if weight < 0 {
                return found;
            }
            let bounds: Vec<u32> = alpha
                .iter()
                .zip(loops)
                .map(|(&a, &(u, m))| vertex_cost(a, u, m).1)
                .collect();
            let mut filler = Filler {
                alpha,
                loops,
                min_out: bounds.clone(),
                min_in: bounds,
                d,
                arrows: vec![0; k * k],
                found: &mut found,
            };
            filler.fill(0, 0, 0, weight as u32);
            found
        })
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut all: BTreeMap<CanonicalKey, MarkedQuiverSetting> = found;
    for s in single_vertex_settings(d) {
        let c = canonical_form(&s);
        all.entry(canonical_key(&c)).or_insert(c);
    }
    all.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityClass {
    pub id: String,
    pub aliases: Vec<String>,
    /// Representative: the member with the smallest canonical key.
    pub setting: MarkedQuiverSetting,
    pub dim: u64,
    pub isolated: Option<Vec<u32>>,
    /// Pairwise non-isomorphic settings with isomorphic invariant rings, sorted by
    /// canonical key; the representative comes first.
    pub members: Vec<MarkedQuiverSetting>,
}

fn all_ones(rows: Vec<Vec<u32>>) -> MarkedQuiverSetting {
    let k = rows.len();
    MarkedQuiverSetting::new(vec![1; k], rows, vec![0; k]).unwrap()
}

/// Settings with conventional names.
pub fn named_settings() -> Vec<(&'static str, MarkedQuiverSetting)> {
    let arm_star = |arms: usize, marked: u32| {
        let k = arms + 1;
        let mut rows = vec![vec![0; k]; k];
        for a in 1..k {
            rows[0][a] = 1;
            rows[a][0] = 1;
        }
        let mut alpha = vec![1; k];
        alpha[0] = 2;
        let mut m = vec![0; k];
        m[0] = marked;
        MarkedQuiverSetting::new(alpha, rows, m).unwrap()
    };
    vec![
        ("3_con", all_ones(vec![vec![0, 2], vec![2, 0]])),
        (
            "4_3a",
            all_ones(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]),
        ),
        (
            "4_3b",
            all_ones(vec![vec![0, 2, 0], vec![0, 0, 2], vec![2, 0, 0]]),
        ),
        ("4_2", all_ones(vec![vec![0, 2], vec![3, 0]])),
        (
            "5_4a",
            all_ones(vec![
                vec![0, 0, 1, 1],
                vec![0, 0, 1, 1],
                vec![1, 1, 0, 0],
                vec![1, 1, 0, 0],
            ]),
        ),
        ("type_A", arm_star(3, 0)),
        ("type_B", arm_star(2, 1)),
        ("type_C", arm_star(1, 2)),
        ("type_D", MarkedQuiverSetting::one_vertex(2, 0, 3).unwrap()),
    ]
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Groups the reduced singular settings of dimension `d` into classes of
/// isomorphic invariant rings.
///
/// Two settings are merged when one is the opposite quiver of the other, or, for
/// all-ones settings, when their toric rings are isomorphic.
pub fn enumerate_reduced_singularities(d: u64) -> Vec<SingularityClass> {
    let settings = enumerate_reduced_settings(d);
    let n = settings.len();
    let index: HashMap<CanonicalKey, usize> = settings
        .iter()
        .enumerate()
        .map(|(i, s)| (canonical_key(s), i))
        .collect();
    let mut dsu = Dsu((0..n).collect());
    for (i, s) in settings.iter().enumerate() {
        if let Some(&j) = index.get(&canonical_key(&s.opposite())) {
            dsu.union(i, j);
        }
    }
    let mut buckets: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (i, s) in settings.iter().enumerate() {
        if s.is_all_ones() {
            let g = graded_dimensions(s, 2).expect("all-ones").0;
            buckets.entry(g).or_default().push(i);
        }
    }
    let pairs: Vec<(usize, usize)> = buckets
        .values()
        .flat_map(|b| {
            b.iter()
                .enumerate()
                .flat_map(move |(x, &i)| b[x + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    let pairs: Vec<(usize, usize)> = {
        let mut todo = Vec::new();
        for (i, j) in pairs {
            if dsu.find(i) != dsu.find(j) {
                todo.push((i, j));
            }
        }
        todo.into_par_iter()
            .filter(|&(i, j)| toric_isomorphic(&settings[i], &settings[j]).unwrap())
            .collect()
    };
    for (i, j) in pairs {
        dsu.union(i, j);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = dsu.find(i);
        groups.entry(r).or_default().push(i);
    }
    let names: Vec<(&str, CanonicalKey)> = named_settings()
        .into_iter()
        .map(|(name, s)| (name, canonical_key(&s)))
        .collect();
    // settings are sorted by key and roots are minimal indices, so groups come out
    // ordered by representative key
    groups
        .into_values()
        .enumerate()
        .map(|(ordinal, idx)| {
            let members: Vec<MarkedQuiverSetting> =
                idx.iter().map(|&i| settings[i].clone()).collect();
            let keys: BTreeSet<CanonicalKey> = members.iter().map(canonical_key).collect();
            let aliases = names
                .iter()
                .filter(|(_, k)| keys.contains(k))
                .map(|(n, _)| n.to_string())
                .collect();
            let setting = members[0].clone();
            SingularityClass {
                id: format!("{d}_{}", ordinal + 1),
                aliases,
                isolated: isolated_tuple(&setting),
                dim: d,
                setting,
                members,
            }
        })
        .collect()
}

/// Classes for a range of dimensions, with lookup by member.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ClassificationTable {
    pub classes: BTreeMap<u64, Vec<SingularityClass>>,
    #[serde(skip)]
    by_key: HashMap<CanonicalKey, (u64, usize)>,
}

impl ClassificationTable {
    /// Classifies every dimension up to `max_dim`.
    pub fn build(max_dim: u64) -> Self {
        let mut t = ClassificationTable::default();
        for d in 1..=max_dim {
            t.insert(d, enumerate_reduced_singularities(d));
        }
        t
    }

    pub fn insert(&mut self, d: u64, classes: Vec<SingularityClass>) {
        for (i, c) in classes.iter().enumerate() {
            for m in &c.members {
                self.by_key.insert(canonical_key(m), (d, i));
            }
        }
        self.classes.insert(d, classes);
    }

    pub fn max_dim(&self) -> u64 {
        self.classes.keys().next_back().copied().unwrap_or(0)
    }

    pub fn dim(&self, d: u64) -> &[SingularityClass] {
        self.classes.get(&d).map_or(&[], Vec::as_slice)
    }

    /// The class containing a reduced singular setting, if tabulated.
    pub fn lookup(&self, s: &MarkedQuiverSetting) -> Option<&SingularityClass> {
        let &(d, i) = self.by_key.get(&canonical_key(s))?;
        self.classes.get(&d).map(|c| &c[i])
    }

    pub fn by_id(&self, id: &str) -> Option<&SingularityClass> {
        self.classes
            .values()
            .flatten()
            .find(|c| c.id == id || c.aliases.iter().any(|a| a == id))
    }

    pub fn iter(&self) -> impl Iterator<Item = &SingularityClass> {
        self.classes.values().flatten()
    }
}
