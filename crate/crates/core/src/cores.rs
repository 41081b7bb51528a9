use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::quiver::MarkedQuiverSetting;

/// Vertex sets of the strongly connected components, each sorted, ordered by
/// smallest member.
pub fn strong_components(s: &MarkedQuiverSetting) -> Vec<Vec<usize>> {
    let k = s.vertex_count();
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..k).map(|_| g.add_node(())).collect();
    for i in 0..k {
        for j in 0..k {
            if i != j && s.arrows(i, j) > 0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort();
    comps
}

/// Drops every arrow lying on no oriented cycle and splits into the strongly
/// connected pieces. Loops always lie on a cycle and are kept.
pub fn cycle_cores(s: &MarkedQuiverSetting) -> Vec<MarkedQuiverSetting> {
    strong_components(s)
        .iter()
        .map(|c| s.induced(c))
        .collect()
}
