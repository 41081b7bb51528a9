//! Discriminating invariants: graded dimensions of the cycle grading, stratum
//! fingerprints built from local quivers, and the equivalence verdict.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::canon::{automorphisms, canonical_key};
use crate::classify::{isolated_tuple, is_smooth_reduced, ClassificationTable};
use crate::cores::cycle_cores;
use crate::cycles::cycle_exponents;
use crate::dimension::quotient_dimension;
use crate::error::{Error, Result};
use crate::format::emit;
use crate::moduli::{degeneration_leq, local_quiver, representation_types, RepresentationType};
use crate::quiver::MarkedQuiverSetting;
use crate::reduction::{is_reduced, reduce};
use crate::toric::toric_isomorphic;

/// `d_i = dim m^i / m^(i+1)` for `i = 1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GradedDims(pub Vec<u64>);

/// Counts balanced monomials by the length of their longest factorisation into
/// primitive cycles.
pub fn graded_dimensions(s: &MarkedQuiverSetting, n: usize) -> Result<GradedDims> {
    if n == 0 {
        return Err(Error::Precondition("degree bound must be at least 1".into()));
    }
    let gens = cycle_exponents(s)?;
    let mut memo: HashMap<Vec<u32>, Option<u32>> = HashMap::new();

    fn longest(m: &[u32], gens: &[Vec<u32>], memo: &mut HashMap<Vec<u32>, Option<u32>>) -> Option<u32> {
        if m.iter().all(|&x| x == 0) {
            return Some(0);
        }
        if let Some(&r) = memo.get(m) {
            return r;
        }
        let mut best = None;
        for g in gens {
            if g.iter().zip(m).all(|(a, b)| a <= b) {
                let rest: Vec<u32> = m.iter().zip(g).map(|(a, b)| a - b).collect();
                if let Some(r) = longest(&rest, gens, memo) {
                    best = best.max(Some(r + 1));
                }
            }
        }
        memo.insert(m.to_vec(), best);
        best
    }

    let mut out = Vec::with_capacity(n);
    // level i holds the distinct sums of i generators, built as sums of
    // non-decreasing generator index sequences
    let mut level: HashSet<(Vec<u32>, usize)> = HashSet::new();
    if gens.is_empty() {
        return Ok(GradedDims(vec![0; n]));
    }
    let width = gens[0].len();
    level.insert((vec![0; width], 0));
    for i in 1..=n {
        let mut next: HashSet<(Vec<u32>, usize)> = HashSet::new();
        for (m, last) in &level {
            for (gi, g) in gens.iter().enumerate().skip(*last) {
                let sum: Vec<u32> = m.iter().zip(g).map(|(a, b)| a + b).collect();
                next.insert((sum, gi));
            }
        }
        let monomials: HashSet<&Vec<u32>> = next.iter().map(|(m, _)| m).collect();
        let count = monomials
            .into_iter()
            .filter(|m| longest(m, &gens, &mut memo) == Some(i as u32))
            .count();
        out.push(count as u64);
        level = next;
    }
    Ok(GradedDims(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FingerprintNode {
    pub stratum_dim: u32,
    /// Class ids of the singular reduced cores; empty for the closed point.
    pub classes: Vec<String>,
    /// Display labels (conventional name when there is one).
    pub labels: Vec<String>,
    /// Number of representation types in the orbit under the setting's symmetries.
    pub multiplicity: usize,
    pub types: Vec<RepresentationType>,
}

impl FingerprintNode {
    pub fn is_root(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn label(&self) -> String {
        if self.is_root() {
            "•".into()
        } else {
            self.labels.join("+")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    /// Sorted by decreasing stratum dimension; the root comes last.
    pub nodes: Vec<FingerprintNode>,
    /// Covering relations `(from, to)`, `to` being the more degenerate stratum.
    pub edges: Vec<(usize, usize)>,
}

/// Relabelling-invariant summary used for comparisons.
pub type Signature = Vec<(u32, Vec<String>, usize, Vec<(u32, Vec<String>, usize)>)>;

impl Fingerprint {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn signature(&self) -> Signature {
        let mut sig: Signature = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut succ: Vec<(u32, Vec<String>, usize)> = self
                    .edges
                    .iter()
                    .filter(|e| e.0 == i)
                    .map(|&(_, j)| {
                        let t = &self.nodes[j];
                        (t.stratum_dim, t.classes.clone(), t.multiplicity)
                    })
                    .collect();
                succ.sort();
                (n.stratum_dim, n.classes.clone(), n.multiplicity, succ)
            })
            .collect();
        sig.sort();
        sig
    }

    /// One line per node in topological order:
    /// `#i (<stratum>, <label>) x<multiplicity> -> #j, ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            write!(out, "#{} ({}, {}) x{}", i + 1, n.stratum_dim, n.label(), n.multiplicity).unwrap();
            let succ: Vec<String> = self
                .edges
                .iter()
                .filter(|e| e.0 == i)
                .map(|e| format!("#{}", e.1 + 1))
                .collect();
            if !succ.is_empty() {
                write!(out, " -> {}", succ.join(", ")).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph fingerprint {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = if n.is_root() {
                "•".to_string()
            } else {
                format!("({}, {}) x{}", n.stratum_dim, n.label(), n.multiplicity)
            };
            writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  n{a} -> n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_reduced_singular(s: &MarkedQuiverSetting) -> Result<()> {
    if !s.is_strongly_connected() || !is_reduced(s) || is_smooth_reduced(s) {
        return Err(Error::Precondition(
            "expected a reduced, strongly connected, singular setting".into(),
        ));
    }
    Ok(())
}

struct Stratum {
    tau: RepresentationType,
    stratum_dim: u32,
    classes: Vec<String>,
    labels: Vec<String>,
}

/// Singular strata of a reduced singularity, identified against `table`.
pub fn strata(s: &MarkedQuiverSetting, table: &ClassificationTable) -> Result<Vec<(RepresentationType, u32, Vec<String>)>> {
    Ok(kept_strata(s, table)?
        .into_iter()
        .map(|st| (st.tau, st.stratum_dim, st.classes))
        .collect())
}

fn kept_strata(s: &MarkedQuiverSetting, table: &ClassificationTable) -> Result<Vec<Stratum>> {
    let mut out = Vec::new();
    for tau in representation_types(s) {
        if tau.is_generic() {
            continue;
        }
        let lq = local_quiver(s, &tau)?;
        if lq.stratum_dim == 0 {
            out.push(Stratum {
                tau,
                stratum_dim: 0,
                classes: Vec::new(),
                labels: Vec::new(),
            });
            continue;
        }
        let mut found: Vec<(String, String)> = Vec::new();
        let mut transversal = 0;
        for core in cycle_cores(&lq.setting) {
            let r = reduce(&core).reduced;
            if is_smooth_reduced(&r) {
                continue;
            }
            let class = table
                .lookup(&r)
                .ok_or_else(|| Error::UnidentifiedClass(emit(&r).replace('\n', "; ")))?;
            let label = class.aliases.first().cloned().unwrap_or_else(|| class.id.clone());
            transversal += class.dim;
            found.push((class.id.clone(), label));
        }
        // free directions beyond the loops put the point inside a larger
        // stratum with the same transversal singularity
        if found.is_empty() || u64::from(lq.stratum_dim) + transversal < quotient_dimension(&lq.setting) {
            continue;
        }
        found.sort();
        out.push(Stratum {
            tau,
            stratum_dim: lq.stratum_dim,
            classes: found.iter().map(|f| f.0.clone()).collect(),
            labels: found.iter().map(|f| f.1.clone()).collect(),
        });
    }
    Ok(out)
}

/// Hasse diagram of the singular strata, quotiented by the symmetries of `s`,
/// with the closed point as root.
pub fn fingerprint(s: &MarkedQuiverSetting, table: &ClassificationTable) -> Result<Fingerprint> {
    check_reduced_singular(s)?;
    let autos = automorphisms(s);
    let kept = kept_strata(s, table)?;

    // orbit representative: smallest relabelled type
    let mut orbits: BTreeMap<(bool, RepresentationType), Vec<usize>> = BTreeMap::new();
    for (i, st) in kept.iter().enumerate() {
        let root = st.stratum_dim == 0;
        let rep = if root {
            RepresentationType::new(Vec::new())
        } else {
            autos
                .iter()
                .map(|p| st.tau.relabelled(p))
                .min()
                .unwrap_or_else(|| st.tau.clone())
        };
        orbits.entry((root, rep)).or_default().push(i);
    }
    let mut nodes: Vec<(FingerprintNode, Vec<usize>)> = Vec::new();
    let mut root_members = Vec::new();
    for ((root, _), members) in orbits {
        if root {
            root_members = members;
            continue;
        }
        let first = &kept[members[0]];
        nodes.push((
            FingerprintNode {
                stratum_dim: first.stratum_dim,
                classes: first.classes.clone(),
                labels: first.labels.clone(),
                multiplicity: members.len(),
                types: members.iter().map(|&i| kept[i].tau.clone()).collect(),
            },
            members,
        ));
    }
    nodes.sort_by(|a, b| {
        (b.0.stratum_dim, &a.0.classes, &a.0.types).cmp(&(a.0.stratum_dim, &b.0.classes, &b.0.types))
    });
    nodes.push((
        FingerprintNode {
            stratum_dim: 0,
            classes: Vec::new(),
            labels: Vec::new(),
            multiplicity: 1,
            types: root_members.iter().map(|&i| kept[i].tau.clone()).collect(),
        },
        root_members,
    ));

    let n = nodes.len();
    let root = n - 1;
    let mut below = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let higher = nodes[a].0.stratum_dim > nodes[b].0.stratum_dim || (b == root && a != root);
            if !higher {
                continue;
            }
            below[a][b] = b == root
                || nodes[a].1.iter().any(|&i| {
                    nodes[b]
                        .1
                        .iter()
                        .any(|&j| degeneration_leq(&kept[i].tau, &kept[j].tau))
                });
        }
    }
    // every stratum contains the closed point in its closure
    for row in below.iter_mut().take(root) {
        row[root] = true;
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if below[a][b] && !(0..n).any(|c| below[a][c] && below[c][b]) {
                edges.push((a, b));
            }
        }
    }
    Ok(Fingerprint {
        nodes: nodes.into_iter().map(|x| x.0).collect(),
        edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Distinct(String),
    EquivalentByIdentity,
    /// Opposite quivers have isomorphic invariant rings (transposition).
    EquivalentByOpposite,
    /// All-ones settings whose cycle semigroups are isomorphic.
    EquivalentByToricIsomorphism,
    Indistinguishable,
}

impl Verdict {
    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinct(why) => write!(f, "distinct ({why})"),
            Verdict::EquivalentByIdentity => f.write_str("equivalent-by-identity"),
            Verdict::EquivalentByOpposite => f.write_str("equivalent-by-opposite-quiver"),
            Verdict::EquivalentByToricIsomorphism => {
                f.write_str("equivalent-by-toric-isomorphism")
            }
            Verdict::Indistinguishable => f.write_str("indistinguishable"),
        }
    }
}

/// Compares two reduced singularities, cheapest discriminators first.
pub fn equivalent(
    s1: &MarkedQuiverSetting,
    s2: &MarkedQuiverSetting,
    table: &ClassificationTable,
) -> Result<Verdict> {
    check_reduced_singular(s1)?;
    check_reduced_singular(s2)?;
    if canonical_key(s1) == canonical_key(s2) {
        return Ok(Verdict::EquivalentByIdentity);
    }
    let (d1, d2) = (quotient_dimension(s1), quotient_dimension(s2));
    if d1 != d2 {
        return Ok(Verdict::Distinct(format!("dimension {d1} vs {d2}")));
    }
    match (isolated_tuple(s1), isolated_tuple(s2)) {
        (Some(a), Some(b)) if a != b => {
            return Ok(Verdict::Distinct(format!("isolated {a:?} vs {b:?}")))
        }
        (Some(_), None) | (None, Some(_)) => {
            return Ok(Verdict::Distinct("only one is isolated".into()))
        }
        _ => {}
    }
    if canonical_key(&s1.opposite()) == canonical_key(s2) {
        return Ok(Verdict::EquivalentByOpposite);
    }
    if s1.is_all_ones() && s2.is_all_ones() {
        let (g1, g2) = (graded_dimensions(s1, 3)?, graded_dimensions(s2, 3)?);
        if g1 != g2 {
            return Ok(Verdict::Distinct(format!(
                "graded dimensions {:?} vs {:?}",
                g1.0, g2.0
            )));
        }
        if toric_isomorphic(s1, s2)? {
            return Ok(Verdict::EquivalentByToricIsomorphism);
        }
    }
    let (f1, f2) = (fingerprint(s1, table)?, fingerprint(s2, table)?);
    if f1.signature() != f2.signature() {
        return Ok(Verdict::Distinct("fingerprints differ".into()));
    }
    Ok(Verdict::Indistinguishable)
}

/// Class ids of every stratum node, root excluded.
pub fn node_classes(f: &Fingerprint) -> BTreeSet<String> {
    f.nodes.iter().flat_map(|n| n.classes.clone()).collect()
}
