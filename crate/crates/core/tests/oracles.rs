mod common;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::random_permutation;
use qsing_core::classify::named_settings;
use qsing_core::{
    fingerprint, graded_dimensions, primitive_cycles, quotient_dimension, representation_types,
    ClassificationTable, MarkedQuiverSetting,
};

fn named(name: &str) -> MarkedQuiverSetting {
    named_settings().into_iter().find(|(n, _)| *n == name).unwrap().1
}

/// Euler form computed straight from the arrow counts.
fn chi(s: &MarkedQuiverSetting, a: &[u32], b: &[u32]) -> i64 {
    let k = s.vertex_count();
    let mut total = 0;
    for i in 0..k {
        total += i64::from(a[i]) * i64::from(b[i]);
        for j in 0..k {
            let arrows = if i == j { s.loops(i) } else { s.arrows(i, j) };
            total -= i64::from(arrows) * i64::from(a[i]) * i64::from(b[j]);
        }
    }
    total
}

fn reachable(s: &MarkedQuiverSetting, support: &[usize]) -> bool {
    let n = support.len();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        reach[i][i] = true;
        for j in 0..n {
            if s.arrows(support[i], support[j]) > 0 {
                reach[i][j] = true;
            }
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                reach[i][j] |= reach[i][m] && reach[m][j];
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|&x| x))
}

fn simple(s: &MarkedQuiverSetting, beta: &[u32]) -> bool {
    let support: Vec<usize> = (0..beta.len()).filter(|&v| beta[v] > 0).collect();
    if support.is_empty() || !reachable(s, &support) {
        return false;
    }
    let inside = |v: usize, out: bool| -> u32 {
        support
            .iter()
            .map(|&u| {
                if u == v {
                    s.loops(v)
                } else if out {
                    s.arrows(v, u)
                } else {
                    s.arrows(u, v)
                }
            })
            .sum()
    };
    if support.len() == 1 && s.loops(support[0]) == 0 {
        return beta[support[0]] == 1;
    }
    if support.iter().all(|&v| inside(v, true) == 1 && inside(v, false) == 1) {
        return support.iter().all(|&v| beta[v] == 1);
    }
    support.iter().all(|&v| {
        let mut e = vec![0; beta.len()];
        e[v] = 1;
        chi(s, &e, beta) <= 0 && chi(s, beta, &e) <= 0
    })
}

fn partitions(n: u32) -> u64 {
    fn p(n: u32, max: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|part| p(n - part, part)).sum()
    }
    p(n, n)
}

/// Counts types as multisets of simple vectors summing to alpha; a vector used
/// `n` times is one factor when rigid and any partition of `n` otherwise.
fn type_count(s: &MarkedQuiverSetting) -> u64 {
    let alpha = s.alpha().to_vec();
    let mut boxes: Vec<Vec<u32>> = vec![vec![]];
    for &a in &alpha {
        boxes = boxes
            .into_iter()
            .flat_map(|b| (0..=a).map(move |x| [b.clone(), vec![x]].concat()))
            .collect();
    }
    let simples: Vec<Vec<u32>> = boxes.into_iter().filter(|b| simple(s, b)).collect();
    fn count(
        s: &MarkedQuiverSetting,
        simples: &[Vec<u32>],
        idx: usize,
        rest: Vec<u32>,
    ) -> u64 {
        if rest.iter().all(|&x| x == 0) {
            return 1;
        }
        if idx == simples.len() {
            return 0;
        }
        let beta = &simples[idx];
        let rigid = chi(s, beta, beta) == 1;
        let mut total = 0;
        let mut n = 0;
        let mut r = rest;
        loop {
            let ways = if n == 0 || rigid { 1 } else { partitions(n) };
            total += ways * count(s, simples, idx + 1, r.clone());
            if r.iter().zip(beta).any(|(x, b)| x < b) {
                break;
            }
            r = r.iter().zip(beta).map(|(x, b)| x - b).collect();
            n += 1;
        }
        total
    }
    count(s, &simples, 0, alpha)
}

#[test]
fn representation_types_match_counting_oracle() {
    let table = ClassificationTable::build(5);
    let mut settings: Vec<MarkedQuiverSetting> =
        table.iter().flat_map(|c| c.members.clone()).collect();
    settings.extend(["type_A", "type_B", "type_C", "type_D"].map(named));
    settings.push(MarkedQuiverSetting::one_vertex(3, 2, 0).unwrap());
    settings.push(MarkedQuiverSetting::one_vertex(2, 1, 1).unwrap());
    for s in &settings {
        assert_eq!(representation_types(s).len() as u64, type_count(s), "{s:?}");
    }
}

#[test]
fn type_counts_of_dimension_two_settings() {
    let counts: BTreeMap<&str, u64> = ["type_A", "type_B", "type_C", "type_D"]
        .into_iter()
        .map(|n| (n, type_count(&named(n))))
        .collect();
    for (name, count) in &counts {
        assert_eq!(representation_types(&named(name)).len() as u64, *count);
    }
    // generic, one factor of multiplicity 2, or two distinct one-dimensional factors
    assert_eq!(counts["type_D"], 3);
}

#[test]
fn degree_one_counts_primitive_cycles() {
    let table = ClassificationTable::build(6);
    for class in table.iter() {
        for s in class.members.iter().filter(|s| s.is_all_ones()) {
            let g = graded_dimensions(s, 1).unwrap();
            assert_eq!(g.0[0], primitive_cycles(s).unwrap().len() as u64, "{}", class.id);
        }
    }
}

#[test]
fn invariants_ignore_vertex_labels() {
    let table = ClassificationTable::build(6);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for class in table.iter() {
        let s = &class.setting;
        let p = random_permutation(&mut rng, s.vertex_count());
        let t = s.permute(&p);
        assert_eq!(
            fingerprint(s, &table).unwrap().signature(),
            fingerprint(&t, &table).unwrap().signature(),
            "{}",
            class.id
        );
        if s.is_all_ones() {
            assert_eq!(graded_dimensions(s, 2).unwrap(), graded_dimensions(&t, 2).unwrap());
        }
    }
}

/// Strata counted per (dimension, classes); orbit grouping depends on the
/// symmetries of the particular quiver, the totals do not.
fn strata_census(s: &MarkedQuiverSetting, table: &ClassificationTable) -> BTreeMap<(u32, Vec<String>), usize> {
    let mut out = BTreeMap::new();
    for n in fingerprint(s, table).unwrap().nodes {
        *out.entry((n.stratum_dim, n.classes)).or_default() += n.multiplicity;
    }
    out
}

#[test]
fn members_of_a_class_share_invariants() {
    let table = ClassificationTable::build(6);
    for class in table.iter() {
        let base = strata_census(&class.setting, &table);
        for m in &class.members {
            assert_eq!(quotient_dimension(m), class.dim);
            assert_eq!(strata_census(m, &table), base, "{}", class.id);
        }
    }
}

#[test]
fn fingerprint_nodes_conserve_dimension() {
    let table = ClassificationTable::build(6);
    for class in table.iter() {
        let f = fingerprint(&class.setting, &table).unwrap();
        for node in f.nodes.iter().filter(|n| !n.is_root()) {
            let referenced: u64 = node.classes.iter().map(|id| table.by_id(id).unwrap().dim).sum();
            assert_eq!(u64::from(node.stratum_dim) + referenced, class.dim, "{}", class.id);
            assert!(node.classes.iter().all(|id| table.by_id(id).unwrap().dim < class.dim));
        }
    }
}

#[test]
fn degeneration_is_a_partial_order() {
    use qsing_core::{degeneration_leq, local_quiver};
    let table = ClassificationTable::build(6);
    for class in table.iter() {
        let s = &class.setting;
        let types = representation_types(s);
        let generic = types.iter().find(|t| t.is_generic()).unwrap();
        assert_eq!(u64::from(local_quiver(s, generic).unwrap().stratum_dim), class.dim);
        for a in &types {
            assert!(degeneration_leq(a, a));
            for b in &types {
                if a != b && degeneration_leq(a, b) {
                    assert!(!degeneration_leq(b, a), "{}: {a} {b}", class.id);
                }
                if !degeneration_leq(a, b) {
                    continue;
                }
                for c in &types {
                    if degeneration_leq(b, c) {
                        assert!(degeneration_leq(a, c), "{}: {a} {b} {c}", class.id);
                    }
                }
            }
        }
    }
}
