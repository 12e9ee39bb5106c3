//! One-inclusion hypergraphs and their orientations.
//!
//! Vertices are the words of a class. For each direction `i` the words that
//! agree off coordinate `i` form one edge, so every vertex lies in exactly one
//! edge per direction. Singleton edges are stored explicitly.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::class::{ConceptClass, Label, Word};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;

pub type Rational = Ratio<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub direction: usize,
    /// Vertex indices, ascending.
    pub members: Vec<usize>,
}

impl Edge {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_singleton(&self) -> bool {
        self.members.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct OneInclusionGraph {
    class: ConceptClass,
    edges: Vec<Edge>,
    /// `incidence[v][i]` is the direction-`i` edge containing `v`.
    incidence: Vec<Vec<usize>>,
}

impl OneInclusionGraph {
    /// Edges are ordered by direction, then by the off-coordinate pattern.
    pub fn build(class: &ConceptClass) -> Result<Self> {
        if class.is_empty() {
            return Err(Error::EmptyClass);
        }
        let n = class.domain_size();
        let mut edges = Vec::new();
        let mut incidence = vec![vec![0; n]; class.len()];
        for i in 0..n {
            let mut groups: BTreeMap<Vec<Label>, Vec<usize>> = BTreeMap::new();
            for (v, w) in class.words().iter().enumerate() {
                let mut key = w.clone();
                key.remove(i);
                groups.entry(key).or_default().push(v);
            }
            for members in groups.into_values() {
                let id = edges.len();
                for &v in &members {
                    incidence[v][i] = id;
                }
                edges.push(Edge { direction: i, members });
            }
        }
        Ok(OneInclusionGraph { class: class.clone(), edges, incidence })
    }

    pub fn class(&self) -> &ConceptClass {
        &self.class
    }

    pub fn vertex_count(&self) -> usize {
        self.class.len()
    }

    pub fn dimension(&self) -> usize {
        self.class.domain_size()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn edge_containing(&self, v: usize, direction: usize) -> usize {
        self.incidence[v][direction]
    }

    /// Number of non-singleton edges through `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].iter().filter(|&&e| !self.edges[e].is_singleton()).count()
    }

    /// Sum of the sizes of non-singleton edges.
    pub fn non_singleton_size_sum(&self) -> u64 {
        self.edges.iter().filter(|e| !e.is_singleton()).map(|e| e.len() as u64).sum()
    }
}

/// A choice of one member per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub choice: Vec<usize>,
}

impl Orientation {
    pub fn validate(&self, g: &OneInclusionGraph) -> Result<()> {
        if self.choice.len() != g.edges.len() {
            return Err(Error::Precondition(format!(
                "orientation covers {} edges, graph has {}",
                self.choice.len(),
                g.edges.len()
            )));
        }
        for (id, (&c, e)) in self.choice.iter().zip(&g.edges).enumerate() {
            if e.members.binary_search(&c).is_err() {
                return Err(Error::Precondition(format!("edge {id} is oriented to non-member {c}")));
            }
        }
        Ok(())
    }

    pub fn chosen(&self, edge: usize) -> usize {
        self.choice[edge]
    }
}

/// `outdeg(v; sigma)` for every vertex.
pub fn out_degrees(g: &OneInclusionGraph, sigma: &Orientation) -> Result<Vec<usize>> {
    sigma.validate(g)?;
    Ok((0..g.vertex_count())
        .map(|v| g.incident(v).iter().filter(|&&e| sigma.choice[e] != v).count())
        .collect())
}

pub fn max_out_degree(g: &OneInclusionGraph, sigma: &Orientation) -> Result<usize> {
    Ok(out_degrees(g, sigma)?.into_iter().max().unwrap_or(0))
}

/// Peel a vertex with at most `bound` non-singleton edges in the current
/// induced sub-hypergraph, orient the edges it is the last member of towards
/// it, and repeat. Returns `None` if at some stage no vertex can be peeled.
pub fn greedy_orientation(g: &OneInclusionGraph, bound: usize) -> Option<Orientation> {
    let nv = g.vertex_count();
    let mut remaining: Vec<usize> = g.edges.iter().map(Edge::len).collect();
    let mut degree: Vec<usize> = (0..nv).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; nv];
    let mut choice = vec![usize::MAX; g.edges.len()];
    for _ in 0..nv {
        let v = (0..nv).find(|&v| alive[v] && degree[v] <= bound)?;
        alive[v] = false;
        for &e in g.incident(v) {
            remaining[e] -= 1;
            match remaining[e] {
                0 => choice[e] = v,
                1 => {
                    // the edge just became a singleton for its last member
                    let u = g.edges[e].members.iter().copied().find(|&u| alive[u]).unwrap();
                    degree[u] -= 1;
                }
                _ => {}
            }
        }
    }
    Some(Orientation { choice })
}

/// Demands and free edges of the assignment problem "max out-degree <= k".
/// Returns a full orientation when feasible.
fn feasible_with(g: &OneInclusionGraph, k: usize, fixed: &[Option<usize>]) -> Option<Vec<usize>> {
    let nv = g.vertex_count();
    let mut demand: Vec<i64> = (0..nv).map(|v| g.degree(v) as i64 - k as i64).collect();
    let mut free = Vec::new();
    for (id, e) in g.edges.iter().enumerate() {
        if e.is_singleton() {
            continue;
        }
        match fixed[id] {
            Some(v) => demand[v] -= 1,
            None => free.push(id),
        }
    }
    let need: i64 = demand.iter().map(|&d| d.max(0)).sum();
    if need == 0 {
        return Some(complete(g, fixed, &[]));
    }
    // source, free edges, vertices, sink
    let src = 0;
    let sink = 1 + free.len() + nv;
    let mut net = FlowNetwork::new(sink + 1);
    let mut member_arcs = Vec::new();
    for (slot, &id) in free.iter().enumerate() {
        net.add_arc(src, 1 + slot, 1);
        for &v in &g.edges[id].members {
            let a = net.add_arc(1 + slot, 1 + free.len() + v, 1);
            member_arcs.push((id, v, a));
        }
    }
    for (v, &d) in demand.iter().enumerate() {
        if d > 0 {
            net.add_arc(1 + free.len() + v, sink, d);
        }
    }
    if net.max_flow(src, sink) < need {
        return None;
    }
    let assigned: Vec<(usize, usize)> =
        member_arcs.iter().filter(|&&(_, _, a)| net.flow_on(a) > 0).map(|&(id, v, _)| (id, v)).collect();
    Some(complete(g, fixed, &assigned))
}

fn complete(g: &OneInclusionGraph, fixed: &[Option<usize>], assigned: &[(usize, usize)]) -> Vec<usize> {
    let mut choice: Vec<usize> =
        g.edges.iter().zip(fixed).map(|(e, f)| f.unwrap_or(e.members[0])).collect();
    for &(id, v) in assigned {
        choice[id] = v;
    }
    choice
}

/// An orientation with the minimum possible maximum out-degree, and that minimum.
///
/// Binary search on `k` with an exact flow feasibility test: every vertex `v`
/// must receive at least `deg(v) - k` of its non-singleton edges. Among all
/// optimal orientations the lexicographically smallest choice vector (by
/// edge id, then vertex id) is returned.
pub fn optimal_orientation(g: &OneInclusionGraph) -> (Orientation, usize) {
    let none = vec![None; g.edges.len()];
    let mut lo = 0;
    let mut hi = (0..g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut best = feasible_with(g, hi, &none).expect("k = max degree is always feasible");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match feasible_with(g, mid, &none) {
            Some(a) => {
                hi = mid;
                best = a;
            }
            None => lo = mid + 1,
        }
    }
    let k = hi;
    let mut fixed = none;
    for id in 0..g.edges.len() {
        let e = &g.edges[id];
        if e.is_singleton() {
            fixed[id] = Some(e.members[0]);
            continue;
        }
        for &v in &e.members {
            if best[id] == v {
                fixed[id] = Some(v);
                break;
            }
            fixed[id] = Some(v);
            if let Some(a) = feasible_with(g, k, &fixed) {
                best = a;
                break;
            }
        }
    }
    (Orientation { choice: best }, k)
}

/// `avd`: total size of non-singleton edges per vertex.
pub fn avg_degree(g: &OneInclusionGraph) -> Rational {
    Rational::new(g.non_singleton_size_sum(), g.vertex_count() as u64)
}

/// `avd'`: sum of `|e| - 1` over all edges, per vertex.
pub fn shifting_avg_degree(g: &OneInclusionGraph) -> Rational {
    let s: u64 = g.edges.iter().map(|e| e.len() as u64 - 1).sum();
    Rational::new(s, g.vertex_count() as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrientationExport {
    pub vertices: Vec<Word>,
    pub edges: Vec<EdgeExport>,
    pub max_outdeg: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeExport {
    pub dir: usize,
    pub members: Vec<usize>,
    pub chosen: usize,
}

pub fn export(g: &OneInclusionGraph, sigma: &Orientation) -> Result<OrientationExport> {
    let max_outdeg = max_out_degree(g, sigma)?;
    Ok(OrientationExport {
        vertices: g.class().words().to_vec(),
        edges: g
            .edges
            .iter()
            .zip(&sigma.choice)
            .map(|(e, &c)| EdgeExport { dir: e.direction, members: e.members.clone(), chosen: c })
            .collect(),
        max_outdeg,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catalog;

    /// Exhaustive minimum over all orientations; test oracle only.
    pub(crate) fn brute_force_min(g: &OneInclusionGraph) -> usize {
        let ns: Vec<usize> = (0..g.edges.len()).filter(|&i| !g.edges[i].is_singleton()).collect();
        let mut choice: Vec<usize> = g.edges.iter().map(|e| e.members[0]).collect();
        let mut best = usize::MAX;
        fn rec(g: &OneInclusionGraph, ns: &[usize], k: usize, choice: &mut Vec<usize>, best: &mut usize) {
            if k == ns.len() {
                let sigma = Orientation { choice: choice.clone() };
                *best = (*best).min(max_out_degree(g, &sigma).unwrap());
                return;
            }
            for &v in &g.edges[ns[k]].members {
                choice[ns[k]] = v;
                rec(g, ns, k + 1, choice, best);
            }
        }
        rec(g, &ns, 0, &mut choice, &mut best);
        best
    }

    #[test]
    fn hexagon_graph_shape() {
        let g = OneInclusionGraph::build(&catalog::hexagon()).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edges().len(), 6);
        assert!(g.edges().iter().all(|e| e.len() == 2));
        for v in 0..6 {
            assert_eq!(g.incident(v).len(), 2);
        }
    }

    #[test]
    fn singleton_graph() {
        let g = OneInclusionGraph::build(&catalog::singleton(vec![0, 0, 0])).unwrap();
        assert_eq!(g.edges().len(), 3);
        assert!(g.edges().iter().all(Edge::is_singleton));
        let (sigma, k) = optimal_orientation(&g);
        assert_eq!(k, 0);
        assert_eq!(max_out_degree(&g, &sigma).unwrap(), 0);
        assert!(greedy_orientation(&g, 0).is_some());
    }

    #[test]
    fn edge_drop_sizes() {
        let g = OneInclusionGraph::build(&catalog::edge_drop()).unwrap();
        assert_eq!(g.non_singleton_size_sum(), 6);
        assert_eq!(avg_degree(&g), Rational::new(6, 4));
        assert_eq!(shifting_avg_degree(&g), Rational::new(3, 4));
    }

    #[test]
    fn hexagon_degrees() {
        let g = OneInclusionGraph::build(&catalog::hexagon()).unwrap();
        assert_eq!(avg_degree(&g), Rational::from_integer(2));
        assert_eq!(shifting_avg_degree(&g), Rational::from_integer(1));
    }

    #[test]
    fn hexagon_cyclic_orientation() {
        let hex = catalog::hexagon();
        let g = OneInclusionGraph::build(&hex).unwrap();
        // walk the 6-cycle 12-32-34-54-56-16 and orient each edge to its later vertex
        let cycle: Vec<usize> = [[1, 2], [3, 2], [3, 4], [5, 4], [5, 6], [1, 6]]
            .iter()
            .map(|w| hex.index_of(w).unwrap())
            .collect();
        let mut choice = vec![0; 6];
        for k in 0..6 {
            let (a, b) = (cycle[k], cycle[(k + 1) % 6]);
            let e = (0..6).find(|&e| g.edges()[e].members.contains(&a) && g.edges()[e].members.contains(&b)).unwrap();
            choice[e] = b;
        }
        let sigma = Orientation { choice };
        assert_eq!(max_out_degree(&g, &sigma).unwrap(), 1);
        // both edges at one vertex pointing away
        let v = cycle[0];
        let choice: Vec<usize> = g
            .edges()
            .iter()
            .map(|e| if e.members.contains(&v) { *e.members.iter().find(|&&u| u != v).unwrap() } else { e.members[0] })
            .collect();
        assert!(max_out_degree(&g, &Orientation { choice }).unwrap() >= 2);
    }

    #[test]
    fn hexagon_optimum_is_one() {
        let g = OneInclusionGraph::build(&catalog::hexagon()).unwrap();
        let (sigma, k) = optimal_orientation(&g);
        assert_eq!(k, 1);
        assert_eq!(max_out_degree(&g, &sigma).unwrap(), 1);
        assert_eq!(brute_force_min(&g), 1);
    }

    #[test]
    fn hexagon_greedy() {
        let g = OneInclusionGraph::build(&catalog::hexagon()).unwrap();
        assert!(greedy_orientation(&g, 1).is_none());
        let sigma = greedy_orientation(&g, 2).unwrap();
        assert!(max_out_degree(&g, &sigma).unwrap() <= 2);
    }

    #[test]
    fn invalid_orientation_rejected() {
        let g = OneInclusionGraph::build(&catalog::hexagon()).unwrap();
        let bad = Orientation { choice: vec![5; 6] };
        assert!(max_out_degree(&g, &bad).is_err());
    }

    #[test]
    fn outdegree_sum_identity() {
        let g = OneInclusionGraph::build(&catalog::dimension_jump()).unwrap();
        let (sigma, _) = optimal_orientation(&g);
        let total: usize = out_degrees(&g, &sigma).unwrap().iter().sum();
        let expected: usize = g.edges().iter().map(|e| e.len() - 1).sum();
        assert_eq!(total, expected);
    }

    #[test]
    fn boolean_cube_optimum() {
        for d in 1..=4 {
            let g = OneInclusionGraph::build(&catalog::boolean_cube(d)).unwrap();
            let (_, k) = optimal_orientation(&g);
            assert_eq!(k, d.div_ceil(2));
        }
    }
}
