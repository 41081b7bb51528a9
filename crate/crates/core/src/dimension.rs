use crate::cores::cycle_cores;
use crate::quiver::{euler_alpha, MarkedQuiverSetting};
use crate::reduction::reduce;

/// Krull dimension of the quotient of a reduced, strongly connected setting.
///
/// A single vertex with at most one loop is handled directly: no loop gives a
/// point, one loop gives the invariants of one matrix (`a` coordinates, one fewer
/// if the loop is marked). Everything else follows `1 - chi(alpha, alpha) - m`.
pub fn reduced_dimension(s: &MarkedQuiverSetting) -> u64 {
    if s.vertex_count() == 1 && s.loops(0) <= 1 {
        let a = u64::from(s.dim(0));
        return match (s.unmarked_loops(0), s.marked_loops(0)) {
            (0, 0) => 0,
            (1, 0) => a,
            _ => a - 1,
        };
    }
    let d = 1 - euler_alpha(s) - i64::from(s.total_marked());
    u64::try_from(d).expect("reduced strongly connected settings have non-negative dimension")
}

/// Dimension of the quotient variety: reduce each cycle core and add up the
/// reduced dimensions and the split-off indeterminates.
pub fn quotient_dimension(s: &MarkedQuiverSetting) -> u64 {
    cycle_cores(s)
        .iter()
        .map(|c| {
            let out = reduce(c);
            reduced_dimension(&out.reduced) + u64::from(out.z)
        })
        .sum()
}
