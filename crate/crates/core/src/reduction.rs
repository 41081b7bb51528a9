//! The three reduction moves and reduction to normal form.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{alpha_i64, euler_matrix, unit, MarkedQuiverSetting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    /// `chi(alpha, e_v) >= 0` at a loop-free vertex.
    VertexIn,
    /// `chi(e_v, alpha) >= 0` at a loop-free vertex.
    VertexOut,
    SmallLoop,
    BigLoopIn,
    BigLoopOut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveKind {
    VertexRemoval,
    SmallLoopRemoval,
    BigLoopRemoval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    In,
    Out,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionMove {
    pub kind: MoveKind,
    /// Vertex index in the *input* setting of the whole reduction.
    pub vertex: usize,
    /// `alpha_v` at the time of the move.
    pub dim: u32,
    pub direction: Direction,
    /// Only meaningful for big-loop removal.
    pub marked: bool,
    pub z_delta: u32,
}

impl fmt::Display for ReductionMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::In => "in",
            Direction::Out => "out",
        };
        match self.kind {
            MoveKind::VertexRemoval => {
                write!(f, "VertexRemoval {} {dir} z={}", self.vertex + 1, self.z_delta)
            }
            MoveKind::SmallLoopRemoval => {
                write!(f, "SmallLoopRemoval {} z={}", self.vertex + 1, self.z_delta)
            }
            MoveKind::BigLoopRemoval => {
                let flavour = if self.marked { "marked" } else { "unmarked" };
                write!(
                    f,
                    "BigLoopRemoval {} {flavour}-{dir} z={}",
                    self.vertex + 1,
                    self.z_delta
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionOutcome {
    pub reduced: MarkedQuiverSetting,
    pub z: u32,
    pub trace: Vec<ReductionMove>,
}

fn check_vertex(s: &MarkedQuiverSetting, v: usize) -> Result<()> {
    if v >= s.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            count: s.vertex_count(),
        });
    }
    Ok(())
}

/// Every condition that holds at `v`, sorted.
///
/// A vertex-removal condition is never reported for the last remaining vertex:
/// removing it would leave nothing to reduce to.
pub fn applicable_conditions(s: &MarkedQuiverSetting, v: usize) -> Result<Vec<Condition>> {
    check_vertex(s, v)?;
    let m = euler_matrix(s);
    let alpha = alpha_i64(s);
    let e = unit(s.vertex_count(), v);
    let chi_in = m.form(&alpha, &e);
    let chi_out = m.form(&e, &alpha);
    let loops = s.loops(v);
    let mut out = Vec::new();
    if loops == 0 && s.vertex_count() > 1 {
        if chi_in >= 0 {
            out.push(Condition::VertexIn);
        }
        if chi_out >= 0 {
            out.push(Condition::VertexOut);
        }
    }
    if s.dim(v) == 1 && loops >= 1 {
        out.push(Condition::SmallLoop);
    }
    if s.dim(v) >= 2 && loops == 1 {
        if chi_in == -1 {
            out.push(Condition::BigLoopIn);
        }
        if chi_out == -1 {
            out.push(Condition::BigLoopOut);
        }
    }
    Ok(out)
}

pub fn is_reduced(s: &MarkedQuiverSetting) -> bool {
    (0..s.vertex_count()).all(|v| applicable_conditions(s, v).unwrap().is_empty())
}

fn violated(condition: &'static str, vertex: usize) -> Error {
    Error::ConditionViolated { condition, vertex }
}

/// Deletes `v` and composes every path `i -> v -> u` into an arrow `i -> u`
/// (a loop when `i == u`).
pub fn apply_vertex_removal(s: &MarkedQuiverSetting, v: usize) -> Result<MarkedQuiverSetting> {
    let conds = applicable_conditions(s, v)?;
    if !conds
        .iter()
        .any(|c| matches!(c, Condition::VertexIn | Condition::VertexOut))
    {
        return Err(violated("C_V", v));
    }
    Ok(compose_through(s, v))
}

pub(crate) fn compose_through(s: &MarkedQuiverSetting, v: usize) -> MarkedQuiverSetting {
    let k = s.vertex_count();
    let mut t = s.clone();
    for i in (0..k).filter(|&i| i != v) {
        let a = s.arrows(i, v);
        if a == 0 {
            continue;
        }
        for u in (0..k).filter(|&u| u != v) {
            let b = s.arrows(v, u);
            if b > 0 {
                t.set_arrows(i, u, t.arrows(i, u) + a * b);
            }
        }
    }
    t.without_vertex(v)
}

pub fn apply_small_loop_removal(
    s: &MarkedQuiverSetting,
    v: usize,
) -> Result<(MarkedQuiverSetting, u32)> {
    check_vertex(s, v)?;
    if s.dim(v) != 1 || s.unmarked_loops(v) == 0 {
        return Err(violated("C_l", v));
    }
    let mut t = s.clone();
    t.set_arrows(v, v, s.unmarked_loops(v) - 1);
    Ok((t, 1))
}

/// Removes the single loop at `v` and multiplies the unique arrow to (or from) the
/// dimension-one neighbour by `alpha_v`. The outgoing side is used when both hold.
pub fn apply_big_loop_removal(
    s: &MarkedQuiverSetting,
    v: usize,
) -> Result<(MarkedQuiverSetting, u32)> {
    let conds = applicable_conditions(s, v)?;
    let dir = if conds.contains(&Condition::BigLoopOut) {
        Direction::Out
    } else if conds.contains(&Condition::BigLoopIn) {
        Direction::In
    } else {
        return Err(violated("C_L", v));
    };
    Ok(big_loop(s, v, dir))
}

fn big_loop(s: &MarkedQuiverSetting, v: usize, dir: Direction) -> (MarkedQuiverSetting, u32) {
    let a = s.dim(v);
    let marked = s.marked_loops(v) == 1;
    let mut t = s.clone();
    if marked {
        t.set_marked(v, 0);
    } else {
        t.set_arrows(v, v, 0);
    }
    let w = (0..s.vertex_count())
        .find(|&w| {
            w != v
                && match dir {
                    Direction::Out => s.arrows(v, w) > 0,
                    Direction::In => s.arrows(w, v) > 0,
                }
        })
        .expect("condition guarantees a neighbour");
    match dir {
        Direction::Out => t.set_arrows(v, w, a),
        Direction::In => t.set_arrows(w, v, a),
    }
    (t, if marked { a - 1 } else { a })
}

/// One concrete move available on a setting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Vertex(Direction),
    Small,
    Big(Direction),
}

fn available_steps(s: &MarkedQuiverSetting, v: usize) -> Vec<Step> {
    let conds = applicable_conditions(s, v).unwrap();
    let mut steps = Vec::new();
    if conds.contains(&Condition::VertexIn) {
        steps.push(Step::Vertex(Direction::In));
    } else if conds.contains(&Condition::VertexOut) {
        steps.push(Step::Vertex(Direction::Out));
    }
    if conds.contains(&Condition::SmallLoop) {
        steps.push(Step::Small);
    }
    if conds.contains(&Condition::BigLoopOut) {
        steps.push(Step::Big(Direction::Out));
    }
    if conds.contains(&Condition::BigLoopIn) {
        steps.push(Step::Big(Direction::In));
    }
    steps
}

struct Reducer {
    cur: MarkedQuiverSetting,
    labels: Vec<usize>,
    z: u32,
    trace: Vec<ReductionMove>,
}

impl Reducer {
    fn new(s: &MarkedQuiverSetting) -> Self {
        Reducer {
            cur: s.clone(),
            labels: (0..s.vertex_count()).collect(),
            z: 0,
            trace: Vec::new(),
        }
    }

    fn apply(&mut self, v: usize, step: Step) {
        let dim = self.cur.dim(v);
        let (kind, direction, marked, delta) = match step {
            Step::Vertex(d) => {
                self.cur = compose_through(&self.cur, v);
                (MoveKind::VertexRemoval, d, false, 0)
            }
            Step::Small => {
                let (t, dz) = apply_small_loop_removal(&self.cur, v).unwrap();
                self.cur = t;
                (MoveKind::SmallLoopRemoval, Direction::Out, false, dz)
            }
            Step::Big(d) => {
                let marked = self.cur.marked_loops(v) == 1;
                let (t, dz) = big_loop(&self.cur, v, d);
                self.cur = t;
                (MoveKind::BigLoopRemoval, d, marked, dz)
            }
        };
        self.trace.push(ReductionMove {
            kind,
            vertex: self.labels[v],
            dim,
            direction,
            marked,
            z_delta: delta,
        });
        if kind == MoveKind::VertexRemoval {
            self.labels.remove(v);
        }
        self.z += delta;
    }

    fn finish(self) -> ReductionOutcome {
        ReductionOutcome {
            reduced: self.cur,
            z: self.z,
            trace: self.trace,
        }
    }
}

/// Reduces to normal form: always acts on the lowest-indexed reducible vertex,
/// preferring vertex removal, then small-loop, then big-loop removal.
pub fn reduce(s: &MarkedQuiverSetting) -> ReductionOutcome {
    let mut r = Reducer::new(s);
    loop {
        let next = (0..r.cur.vertex_count())
            .find_map(|v| available_steps(&r.cur, v).first().map(|&st| (v, st)));
        match next {
            Some((v, st)) => r.apply(v, st),
            None => return r.finish(),
        }
    }
}

/// Reduces choosing uniformly among all available moves at each step.
pub fn reduce_with_order(s: &MarkedQuiverSetting, seed: u64) -> ReductionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Reducer::new(s);
    loop {
        let moves: Vec<(usize, Step)> = (0..r.cur.vertex_count())
            .flat_map(|v| available_steps(&r.cur, v).into_iter().map(move |st| (v, st)))
            .collect();
        match moves.choose(&mut rng) {
            Some(&(v, st)) => r.apply(v, st),
            None => return r.finish(),
        }
    }
}

/// Extra-indeterminate count of a trace: one per small-loop removal, and
/// `alpha_v` (unmarked) or `alpha_v - 1` (marked) per big-loop removal.
pub fn z_from_trace(trace: &[ReductionMove]) -> u32 {
    trace
        .iter()
        .map(|m| match m.kind {
            MoveKind::VertexRemoval => 0,
            MoveKind::SmallLoopRemoval => 1,
            MoveKind::BigLoopRemoval if m.marked => m.dim - 1,
            MoveKind::BigLoopRemoval => m.dim,
        })
        .sum()
}

pub fn format_trace(trace: &[ReductionMove]) -> String {
    trace.iter().map(|m| format!("{m}\n")).collect()
}
