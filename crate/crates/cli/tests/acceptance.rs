//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed; exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsing_core::classify::named_settings;
use qsing_core::cycles::primitive_cycles;
use qsing_core::{
    are_isomorphic, canonical_key, cycle_cores, equivalent, fingerprint, graded_dimensions,
    is_smooth, local_quiver, quotient_dimension, reduce, reduce_with_order, representation_types, ClassificationTable,
    Fingerprint, MarkedQuiverSetting,
};

const LIMIT_D3: Duration = Duration::from_secs(1);
const LIMIT_D4: Duration = Duration::from_secs(10);
const LIMIT_D5: Duration = Duration::from_secs(60);
const LIMIT_D6: Duration = Duration::from_secs(600);
const LIMIT_CONFLUENCE: Duration = Duration::from_secs(120);

const CONFLUENCE_SETTINGS: usize = 1000;
const CONFLUENCE_ORDERS: u64 = 10;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn named(name: &str) -> MarkedQuiverSetting {
    named_settings()
        .into_iter()
        .find(|(n, _)| *n == name)
        .unwrap()
        .1
}

/// Runs `qsing classify --dim d --format json`; returns class representatives.
fn classify_cli(d: u64) -> (Vec<MarkedQuiverSetting>, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qsing"))
        .args(["classify", "--dim", &d.to_string(), "--format", "json"])
        .output()
        .expect("qsing runs");
    let elapsed = start.elapsed();
    assert!(out.status.success(), "classify --dim {d} failed");
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid json");
    let classes = json["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| serde_json::from_value(c["setting"].clone()).unwrap())
        .collect();
    (classes, elapsed)
}

fn keys(settings: &[MarkedQuiverSetting]) -> BTreeSet<Vec<u32>> {
    settings.iter().map(|s| canonical_key(s).0).collect()
}

fn c1() -> Verdict {
    let (classes, t) = classify_cli(3);
    let ok = classes.len() == 1 && are_isomorphic(&classes[0], &named("3_con"));
    verdict(
        ok && t < LIMIT_D3,
        format!("{} class(es), conifold={ok}, {:.3}s", classes.len(), t.as_secs_f64()),
    )
}

fn c2() -> Verdict {
    let (classes, t) = classify_cli(4);
    let expected = keys(&[named("4_3a"), named("4_3b"), named("4_2")]);
    let ok = classes.len() == 3 && keys(&classes) == expected;
    verdict(
        ok && t < LIMIT_D4,
        format!("{} classes, match={ok}, {:.3}s", classes.len(), t.as_secs_f64()),
    )
}

fn c3() -> Verdict {
    let (five, t5) = classify_cli(5);
    let (six, t6) = classify_cli(6);
    verdict(
        five.len() == 10 && six.len() == 53 && t5 < LIMIT_D5 && t6 < LIMIT_D6,
        format!(
            "d=5: {} classes (want 10) in {:.3}s; d=6: {} classes (want 53) in {:.3}s",
            five.len(),
            t5.as_secs_f64(),
            six.len(),
            t6.as_secs_f64()
        ),
    )
}

fn c4(table: &ClassificationTable) -> Verdict {
    let mut got = Vec::new();
    for name in ["4_3a", "4_3b", "4_2"] {
        let class = table.by_id(name).expect("named class present");
        got.push(primitive_cycles(&class.setting).unwrap().len());
    }
    verdict(got == [5, 8, 6], format!("cycle counts {got:?} (want [5, 8, 6])"))
}

/// `(stratum, label, multiplicity, successors)` per node, sorted.
type Shape = Vec<(u32, String, usize, Vec<(u32, String, usize)>)>;

fn shape(f: &Fingerprint) -> Shape {
    let mut out: Shape = f
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let mut succ: Vec<(u32, String, usize)> = f
                .edges
                .iter()
                .filter(|e| e.0 == i)
                .map(|e| {
                    let t = &f.nodes[e.1];
                    (t.stratum_dim, t.label(), t.multiplicity)
                })
                .collect();
            succ.sort();
            (n.stratum_dim, n.label(), n.multiplicity, succ)
        })
        .collect();
    out.sort();
    out
}

fn expected_shape(nodes: &[(u32, &str, usize, &[(u32, &str, usize)])]) -> Shape {
    let mut out: Shape = nodes
        .iter()
        .map(|&(s, l, m, succ)| {
            let mut succ: Vec<(u32, String, usize)> =
                succ.iter().map(|&(a, b, c)| (a, b.to_string(), c)).collect();
            succ.sort();
            (s, l.to_string(), m, succ)
        })
        .collect();
    out.sort();
    out
}

fn c5(table: &ClassificationTable) -> Verdict {
    const ROOT: (u32, &str, usize) = (0, "•", 1);
    let expected: BTreeMap<&str, Shape> = BTreeMap::from([
        (
            "type_A",
            expected_shape(&[
                (3, "3_con", 3, &[(2, "4_3a", 3)]),
                (3, "3_con", 3, &[(2, "4_3a", 3)]),
                (2, "4_3a", 3, &[ROOT]),
                (0, "•", 1, &[]),
            ]),
        ),
        (
            "type_B",
            expected_shape(&[
                (3, "3_con", 1, &[(1, "5_4a", 1)]),
                (3, "3_con", 1, &[(1, "5_4a", 1)]),
                (1, "5_4a", 1, &[ROOT]),
                (0, "•", 1, &[]),
            ]),
        ),
        (
            "type_C",
            expected_shape(&[
                (3, "3_con", 1, &[(2, "4_3a", 1)]),
                (2, "4_3a", 1, &[ROOT]),
                (0, "•", 1, &[]),
            ]),
        ),
        (
            "type_D",
            expected_shape(&[(3, "3_con", 1, &[ROOT]), (0, "•", 1, &[])]),
        ),
    ]);
    let mixed: Vec<_> = table
        .dim(6)
        .iter()
        .filter(|c| c.members.iter().any(|m| !m.is_all_ones()))
        .collect();
    let mut details = vec![format!("{} classes with a dimension-2 vertex", mixed.len())];
    let mut ok = mixed.len() == 4;
    let named_keys: BTreeSet<Vec<u32>> = expected
        .keys()
        .map(|n| canonical_key(&named(n)).0)
        .collect();
    ok &= mixed.iter().map(|c| canonical_key(&c.setting).0).collect::<BTreeSet<_>>() == named_keys;
    for (name, want) in &expected {
        let f = fingerprint(&named(name), table).expect("fingerprint");
        let got = shape(&f);
        let matches = &got == want;
        ok &= matches;
        let nodes: Vec<String> = f
            .nodes
            .iter()
            .map(|n| format!("({},{})x{}", n.stratum_dim, n.label(), n.multiplicity))
            .collect();
        details.push(format!(
            "{name}: {} [{}]",
            if matches { "match" } else { "differs" },
            nodes.join(" ")
        ));
    }
    verdict(ok, details.join("; "))
}

fn random_setting(rng: &mut ChaCha8Rng) -> MarkedQuiverSetting {
    loop {
        let k = rng.gen_range(1..=5usize);
        let alpha: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let mut arrows = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                let p = if i == j { 0.3 } else { 0.45 };
                if rng.gen_bool(p) {
                    arrows[i * k + j] = rng.gen_range(1..=3);
                }
            }
        }
        let marked: Vec<u32> = alpha
            .iter()
            .map(|&a| {
                if a > 1 && rng.gen_bool(0.3) {
                    rng.gen_range(1..=3)
                } else {
                    0
                }
            })
            .collect();
        let s = MarkedQuiverSetting::from_flat(alpha, arrows, marked).unwrap();
        if s.is_strongly_connected() {
            return s;
        }
    }
}

fn c6() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = 0;
    let mut moves = 0usize;
    for _ in 0..CONFLUENCE_SETTINGS {
        let s = random_setting(&mut rng);
        let base = reduce_with_order(&s, 0);
        let key = canonical_key(&base.reduced);
        moves += base.trace.len();
        for seed in 1..CONFLUENCE_ORDERS {
            let other = reduce_with_order(&s, seed);
            moves += other.trace.len();
            if canonical_key(&other.reduced) != key || other.z != base.z {
                failures += 1;
                break;
            }
        }
    }
    let t = start.elapsed();
    verdict(
        failures == 0 && t < LIMIT_CONFLUENCE,
        format!(
            "{CONFLUENCE_SETTINGS} strongly connected settings x {CONFLUENCE_ORDERS} orders, {moves} moves, {failures} failures, {:.2}s",
            t.as_secs_f64()
        ),
    )
}

/// Kept types recomputed here from the primitives: non-generic, with at least
/// one local-quiver core that reduces to a singular class.
fn c7(table: &ClassificationTable) -> Verdict {
    let mut checked = 0;
    let mut violations = Vec::new();
    for class in table.iter() {
        for s in &class.members {
            for tau in representation_types(s) {
                if tau.is_generic() {
                    continue;
                }
                let lq = local_quiver(s, &tau).unwrap();
                let referenced: Vec<u64> = cycle_cores(&lq.setting)
                    .iter()
                    .map(|core| reduce(core).reduced)
                    .filter(|r| !is_smooth(r))
                    .map(|r| table.lookup(&r).expect("core class in table").dim)
                    .collect();
                if referenced.is_empty() || lq.stratum_dim == 0 {
                    continue;
                }
                checked += 1;
                let local_dim = quotient_dimension(&lq.setting);
                let total = u64::from(lq.stratum_dim) + referenced.iter().sum::<u64>();
                if local_dim != class.dim || total != class.dim {
                    violations.push(format!(
                        "{} {tau}: local {local_dim}, stratum+classes {total}",
                        class.id
                    ));
                }
            }
        }
    }
    verdict(
        violations.is_empty(),
        format!(
            "{checked} kept types over all members, {} violations {:?}",
            violations.len(),
            violations
        ),
    )
}

fn c8(table: &ClassificationTable) -> Verdict {
    let mut smooth_ok = true;
    for k in 1..=6 {
        smooth_ok &= is_smooth(&MarkedQuiverSetting::one_vertex(k, 0, 0).unwrap());
        smooth_ok &= is_smooth(&MarkedQuiverSetting::one_vertex(k, 1, 0).unwrap());
    }
    for (u, m) in [(2, 0), (1, 1), (0, 2)] {
        smooth_ok &= is_smooth(&MarkedQuiverSetting::one_vertex(2, u, m).unwrap());
    }
    let classes: Vec<_> = table.iter().collect();
    let settings: Vec<_> = classes.iter().flat_map(|c| c.members.iter()).collect();
    let singular = settings.iter().filter(|s| !is_smooth(s)).count();
    let all_singular = singular == settings.len();
    verdict(
        smooth_ok && all_singular && classes.len() == 67,
        format!(
            "smooth types smooth={smooth_ok}; {singular}/{} classified settings singular; {} classes (want 67)",
            settings.len(),
            classes.len()
        ),
    )
}

fn c9(table: &ClassificationTable) -> Verdict {
    let mut pairs = 0;
    let mut bad = Vec::new();
    let mut reasons: BTreeMap<String, usize> = BTreeMap::new();
    for d in 3..=6 {
        let classes = table.dim(d);
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                pairs += 1;
                let v = equivalent(&classes[i].setting, &classes[j].setting, table).unwrap();
                if v.is_distinct() {
                    let reason = v.to_string();
                    let kind = reason.split(' ').nth(1).unwrap_or("").trim_matches('(');
                    *reasons.entry(kind.to_string()).or_default() += 1;
                } else {
                    bad.push(format!("{}~{}: {v}", classes[i].id, classes[j].id));
                }
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("{pairs} pairs, {} not distinct {bad:?}; by discriminator {reasons:?}", bad.len()),
    )
}

/// Independent count: enumerate exponent vectors over the four conifold arrows,
/// keep balanced ones, find indecomposables by definition, and take the longest
/// factorisation by exhaustive search.
fn conifold_oracle(n: usize) -> Vec<u64> {
    // arrows 0,1: v1 -> v2; arrows 2,3: v2 -> v1
    let balanced = |m: &[u32; 4]| m[0] + m[1] == m[2] + m[3];
    let max = n as u32;
    let mut monomials = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                for d in 0..=max {
                    let m = [a, b, c, d];
                    if balanced(&m) && m.iter().sum::<u32>() > 0 && a + b <= max {
                        monomials.push(m);
                    }
                }
            }
        }
    }
    let le = |x: &[u32; 4], y: &[u32; 4]| x.iter().zip(y).all(|(p, q)| p <= q);
    let sub = |x: &[u32; 4], y: &[u32; 4]| [x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]];
    let set: HashSet<[u32; 4]> = monomials.iter().copied().collect();
    let indecomposable: Vec<[u32; 4]> = monomials
        .iter()
        .copied()
        .filter(|m| {
            !set.iter()
                .any(|p| p != m && le(p, m) && set.contains(&sub(m, p)))
        })
        .collect();
    fn longest(m: [u32; 4], gens: &[[u32; 4]]) -> u32 {
        if m == [0; 4] {
            return 0;
        }
        gens.iter()
            .filter(|g| g.iter().zip(&m).all(|(p, q)| p <= q))
            .map(|g| 1 + longest([m[0] - g[0], m[1] - g[1], m[2] - g[2], m[3] - g[3]], gens))
            .max()
            .unwrap_or(0)
    }
    (1..=n as u32)
        .map(|i| {
            monomials
                .iter()
                .filter(|m| m[0] + m[1] == i && longest(**m, &indecomposable) == i)
                .count() as u64
        })
        .collect()
}

fn c10() -> Verdict {
    let oracle = conifold_oracle(2);
    let got = graded_dimensions(&named("3_con"), 2).unwrap().0;
    verdict(
        got == [4, 9] && oracle == [4, 9],
        format!("implementation {got:?}, oracle {oracle:?} (want [4, 9])"),
    )
}

fn main() {
    let start = Instant::now();
    let table = ClassificationTable::build(6);
    let cores_ok = table
        .iter()
        .all(|c| cycle_cores(&c.setting).len() == 1);
    assert!(cores_ok, "every class is strongly connected");
    println!("classification table built in {:.3}s", start.elapsed().as_secs_f64());

    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, "d=3 table is the conifold", Box::new(c1)),
        (2, "d=4 table is 4_3a, 4_3b, 4_2", Box::new(c2)),
        (3, "d=5 has 10 classes, d=6 has 53", Box::new(c3)),
        (4, "primitive cycle counts 5, 8, 6", Box::new(|| c4(&table))),
        (5, "dimension-2 classes and fingerprints", Box::new(|| c5(&table))),
        (6, "confluence of random reduction orders", Box::new(c6)),
        (7, "dimension conservation on local quivers", Box::new(|| c7(&table))),
        (8, "smoothness oracle", Box::new(|| c8(&table))),
        (9, "pairwise separation", Box::new(|| c9(&table))),
        (10, "conifold graded dimensions", Box::new(c10)),
    ];
    let mut failed = Vec::new();
    for (n, title, run) in &criteria {
        let v = run();
        println!(
            "criterion {n:>2} {}: {title} -- {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        if !v.pass {
            failed.push(*n);
        }
    }
    println!(
        "acceptance: {} passed, {} failed {failed:?}",
        criteria.len() - failed.len(),
        failed.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
