//! Weighted graphs and hypergraphs, their cut-type set functions, max-cut,
//! clique and triangle LPs, named instances and the monotonicity probe.

mod cliques;
mod generators;
mod probe;
mod triangles;

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};
use crate::{Error, GroundSet, Result, SetFunction, SubsetMask};

pub use cliques::{
    check_vertex_inequality, clique_bound, enumerate_cliques, recover_clique_weights, CliqueWeights,
};
pub use generators::{
    complete, complete_bipartite, complete_graph_decomposition, complete_minus_edge,
    counterexample_diff, counterexample_sum, cycle, hyperedge, path, wheel,
};
pub use probe::{conjecture_probe, ProbeReport, ProbeTrial, PROBE_MAX_VERTICES};
pub use triangles::{nu_star_bound, triangle_lps, triangles, TriangleLpResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

impl Edge {
    pub fn mask(&self) -> SubsetMask {
        SubsetMask::singleton(self.u).with(self.v)
    }
}

/// Simple undirected graph with nonnegative rational edge weights.
/// Edges are stored with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct WeightedGraph {
    ground: GroundSet,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize, String)>,
}

impl TryFrom<GraphRepr> for WeightedGraph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        let mut g = WeightedGraph::new(r.n)?;
        for (u, v, w) in r.edges {
            g.add_edge(u, v, rational::parse(&w)?)?;
        }
        Ok(g)
    }
}

impl From<WeightedGraph> for GraphRepr {
    fn from(g: WeightedGraph) -> Self {
        GraphRepr {
            n: g.n(),
            edges: g
                .edges
                .iter()
                .map(|e| (e.u, e.v, rational::format(&e.weight)))
                .collect(),
        }
    }
}

impl WeightedGraph {
    pub fn new(n: usize) -> Result<Self> {
        Ok(WeightedGraph {
            ground: GroundSet::new(n)?,
            edges: Vec::new(),
        })
    }

    pub fn with_unit_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = WeightedGraph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v, Rational::from_integer(1.into()))?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: Rational) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        if weight.is_negative() {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) has negative weight {}",
                rational::format(&weight)
            )));
        }
        let (u, v) = (u.min(v), u.max(v));
        if self.edge_index(u, v).is_some() {
            return Err(Error::InvalidGraph(format!("repeated edge ({u}, {v})")));
        }
        self.edges.push(Edge { u, v, weight });
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = (u.min(v), u.max(v));
        self.edges.iter().position(|e| e.u == u && e.v == v)
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Rational> {
        self.edge_index(u, v).map(|i| &self.edges[i].weight)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Adjacency as neighbour masks.
    pub fn adjacency(&self) -> Vec<SubsetMask> {
        let mut adj = vec![SubsetMask::EMPTY; self.n()];
        for e in &self.edges {
            adj[e.u] = adj[e.u].with(e.v);
            adj[e.v] = adj[e.v].with(e.u);
        }
        adj
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.iter().map(|e| e.weight.clone()).sum()
    }

    /// Same graph with new weights, listed in edge order.
    pub fn reweighted(&self, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(Error::InvalidGraph(format!(
                "{} weights for {} edges",
                weights.len(),
                self.edges.len()
            )));
        }
        let mut g = WeightedGraph::new(self.n())?;
        for (e, w) in self.edges.iter().zip(weights) {
            g.add_edge(e.u, e.v, w)?;
        }
        Ok(g)
    }

    pub fn to_hypergraph(&self) -> WeightedHypergraph {
        WeightedHypergraph {
            ground: self.ground,
            hyperedges: self
                .edges
                .iter()
                .map(|e| Hyperedge {
                    vertices: e.mask(),
                    weight: e.weight.clone(),
                })
                .collect(),
        }
    }

    /// Parses `u,v,weight` rows. Blank lines, `#` comments and a leading
    /// header row are skipped. Without `n`, the vertex count is one more
    /// than the largest endpoint.
    pub fn from_csv(text: &str, n: Option<usize>) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::InvalidGraph(format!(
                    "line {}: expected u,v,weight",
                    lineno + 1
                )));
            }
            let (Ok(u), Ok(v)) = (fields[0].parse::<usize>(), fields[1].parse::<usize>()) else {
                if rows.is_empty() && lineno == first_content_line(text) {
                    continue;
                }
                return Err(Error::InvalidGraph(format!(
                    "line {}: bad vertex index",
                    lineno + 1
                )));
            };
            rows.push((u, v, rational::parse(fields[2])?));
        }
        let n = n.unwrap_or_else(|| rows.iter().map(|r| r.0.max(r.1) + 1).max().unwrap_or(1));
        let mut g = WeightedGraph::new(n)?;
        for (u, v, w) in rows {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,weight\n");
        for e in &self.edges {
            out.push_str(&format!(
                "{},{},{}\n",
                e.u,
                e.v,
                rational::format(&e.weight)
            ));
        }
        out
    }

    pub fn cut_function(&self) -> SetFunction {
        self.to_hypergraph().cut_function()
    }

    pub fn induced_function(&self) -> SetFunction {
        self.to_hypergraph().induced_function()
    }

    pub fn incident_function(&self) -> SetFunction {
        self.to_hypergraph().incident_function()
    }

    /// Weighted degree `d_w({v})`.
    pub fn degree(&self, v: usize) -> Rational {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .map(|e| e.weight.clone())
            .sum()
    }

    pub fn is_triangle_free(&self) -> bool {
        triangles(self).is_empty()
    }
}

fn first_content_line(text: &str) -> usize {
    text.lines()
        .position(|l| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperedge {
    pub vertices: SubsetMask,
    pub weight: Rational,
}

/// Hypergraph with arbitrary rational hyperedge weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphRepr", into = "HypergraphRepr")]
pub struct WeightedHypergraph {
    ground: GroundSet,
    hyperedges: Vec<Hyperedge>,
}

#[derive(Serialize, Deserialize)]
struct HyperedgeRepr {
    vertices: Vec<usize>,
    weight: String,
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    n: usize,
    hyperedges: Vec<HyperedgeRepr>,
}

impl TryFrom<HypergraphRepr> for WeightedHypergraph {
    type Error = Error;
    fn try_from(r: HypergraphRepr) -> Result<Self> {
        let mut h = WeightedHypergraph::new(r.n)?;
        for e in r.hyperedges {
            let distinct: BTreeSet<usize> = e.vertices.iter().copied().collect();
            if distinct.len() != e.vertices.len() {
                return Err(Error::InvalidGraph("hyperedge lists a vertex twice".into()));
            }
            if let Some(&v) = distinct.iter().find(|&&v| v >= r.n) {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} outside 0..{}",
                    r.n
                )));
            }
            h.add_hyperedge(
                SubsetMask::from_elements(distinct),
                rational::parse(&e.weight)?,
            )?;
        }
        Ok(h)
    }
}

impl From<WeightedHypergraph> for HypergraphRepr {
    fn from(h: WeightedHypergraph) -> Self {
        HypergraphRepr {
            n: h.n(),
            hyperedges: h
                .hyperedges
                .iter()
                .map(|e| HyperedgeRepr {
                    vertices: e.vertices.elements().collect(),
                    weight: rational::format(&e.weight),
                })
                .collect(),
        }
    }
}

impl WeightedHypergraph {
    pub fn new(n: usize) -> Result<Self> {
        Ok(WeightedHypergraph {
            ground: GroundSet::new(n)?,
            hyperedges: Vec::new(),
        })
    }

    pub fn add_hyperedge(&mut self, vertices: SubsetMask, weight: Rational) -> Result<()> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("empty hyperedge".into()));
        }
        self.ground.check(vertices)?;
        self.hyperedges.push(Hyperedge { vertices, weight });
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    fn weight_where(&self, mut keep: impl FnMut(SubsetMask) -> bool) -> Rational {
        let mut s = Rational::zero();
        for e in &self.hyperedges {
            if keep(e.vertices) {
                s += &e.weight;
            }
        }
        s
    }

    /// `w(E[X, Y])`: hyperedges meeting both `X - Y` and `Y - X`.
    pub fn connecting_weight(&self, x: SubsetMask, y: SubsetMask) -> Rational {
        self.weight_where(|f| f.intersects(x - y) && f.intersects(y - x))
    }

    pub fn cut_value(&self, x: SubsetMask) -> Rational {
        let rest = self.ground.complement(x);
        self.weight_where(|f| f.intersects(x) && f.intersects(rest))
    }

    pub fn induced_value(&self, x: SubsetMask) -> Rational {
        self.weight_where(|f| f.is_subset_of(x))
    }

    pub fn incident_value(&self, x: SubsetMask) -> Rational {
        self.weight_where(|f| f.intersects(x))
    }

    pub fn cut_function(&self) -> SetFunction {
        SetFunction::from_fn(self.ground, |x| self.cut_value(x))
    }

    pub fn induced_function(&self) -> SetFunction {
        SetFunction::from_fn(self.ground, |x| self.induced_value(x))
    }

    pub fn incident_function(&self) -> SetFunction {
        SetFunction::from_fn(self.ground, |x| self.incident_value(x))
    }
}

/// The three exchange identities for the cut, induced and incident
/// functions of `h` at the pair `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutIdentities {
    pub cut: bool,
    pub induced: bool,
    pub incident: bool,
}

impl CutIdentities {
    pub fn all(&self) -> bool {
        self.cut && self.induced && self.incident
    }
}

pub fn verify_cut_identities(
    h: &WeightedHypergraph,
    x: SubsetMask,
    y: SubsetMask,
) -> CutIdentities {
    let (meet, join) = (x & y, x | y);
    let outside_meet = h.ground.complement(meet);
    let inside_join =
        h.weight_where(|f| f.intersects(x - y) && f.intersects(y - x) && f.is_subset_of(join));
    let avoiding_meet = h.weight_where(|f| {
        f.intersects(x - y) && f.intersects(y - x) && f.is_subset_of(outside_meet)
    });
    let check = |value: &dyn Fn(SubsetMask) -> Rational, correction: Rational| {
        value(x) + value(y) == value(meet) + value(join) + correction
    };
    CutIdentities {
        cut: check(&|s| h.cut_value(s), &inside_join + &avoiding_meet),
        induced: check(&|s| h.induced_value(s), -inside_join.clone()),
        incident: check(&|s| h.incident_value(s), avoiding_meet.clone()),
    }
}

/// First pair `(X, Y)` in mask order at which some identity fails.
pub fn verify_cut_identities_exhaustive(
    h: &WeightedHypergraph,
) -> Option<(SubsetMask, SubsetMask)> {
    for x in h.ground.subsets() {
        for y in h.ground.subsets() {
            if !verify_cut_identities(h, x, y).all() {
                return Some((x, y));
            }
        }
    }
    None
}

/// Maximum cut weight with its lowest-mask witness among sides avoiding the
/// last vertex.
pub fn max_cut(g: &WeightedGraph) -> (Rational, SubsetMask) {
    let h = g.to_hypergraph();
    let half = 1u32 << (g.n() - 1);
    let mut best = (Rational::zero(), SubsetMask::EMPTY);
    for m in 1..half {
        let value = h.cut_value(SubsetMask(m));
        if value > best.0 {
            best = (value, SubsetMask(m));
        }
    }
    best
}

/// Local search from the empty side, always taking the lowest-index vertex
/// whose move strictly increases the cut.
pub fn greedy_local_search_cut(g: &WeightedGraph) -> (Rational, SubsetMask) {
    let h = g.to_hypergraph();
    let mut side = SubsetMask::EMPTY;
    let mut value = Rational::zero();
    'search: loop {
        for v in 0..g.n() {
            let moved = if side.contains(v) {
                side.without(v)
            } else {
                side.with(v)
            };
            let candidate = h.cut_value(moved);
            if candidate > value {
                side = moved;
                value = candidate;
                continue 'search;
            }
        }
        return (value, side);
    }
}

/// Max-cut weight over total weight; `None` for a weightless graph.
pub fn bipartite_density(g: &WeightedGraph) -> Option<Rational> {
    let total = g.total_weight();
    if total.is_zero() {
        None
    } else {
        Some(max_cut(g).0 / total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn k3() -> WeightedGraph {
        WeightedGraph::with_unit_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn triangle_functions() {
        let d = k3().cut_function();
        let by_size: Vec<Rational> = [0u32, 1, 3, 7]
            .iter()
            .map(|&m| d.value(SubsetMask(m)).clone())
            .collect();
        assert_eq!(by_size, vec![int(0), int(2), int(2), int(0)]);
        let e = k3().incident_function();
        let i = k3().induced_function();
        for x in GroundSet::new(3).unwrap().subsets() {
            let deg: Rational = x.elements().map(|v| k3().degree(v)).sum();
            assert_eq!(e.value(x) + i.value(x), deg);
        }
    }

    #[test]
    fn single_hyperedge_cut() {
        let mut h = WeightedHypergraph::new(5).unwrap();
        let f = SubsetMask(0b1111);
        h.add_hyperedge(f, int(1)).unwrap();
        for x in h.ground().subsets() {
            let zero = h.cut_value(x).is_zero();
            let m = x & f;
            assert_eq!(zero, m.is_empty() || m == f);
        }
    }

    #[test]
    fn identities_on_triangle() {
        let h = k3().to_hypergraph();
        let r = verify_cut_identities(&h, SubsetMask(0b001), SubsetMask(0b010));
        assert!(r.all());
        assert_eq!(
            h.weight_where(|f| f.intersects(SubsetMask(1)) && f.intersects(SubsetMask(2))),
            int(1)
        );
        assert_eq!(verify_cut_identities_exhaustive(&h), None);
    }

    #[test]
    fn max_cut_values() {
        let k4 =
            WeightedGraph::with_unit_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
                .unwrap();
        assert_eq!(max_cut(&k4).0, int(4));
        assert_eq!(max_cut(&k3()).0, int(2));
        assert_eq!(greedy_local_search_cut(&k3()).0, int(2));
        let empty = WeightedGraph::new(3).unwrap();
        assert_eq!(greedy_local_search_cut(&empty).0, int(0));
        assert_eq!(bipartite_density(&k3()), Some(frac(2, 3)));
        assert_eq!(bipartite_density(&empty), None);
    }

    #[test]
    fn graph_validation() {
        let mut g = WeightedGraph::new(3).unwrap();
        assert!(g.add_edge(0, 0, int(1)).is_err());
        assert!(g.add_edge(0, 3, int(1)).is_err());
        assert!(g.add_edge(0, 1, int(-1)).is_err());
        g.add_edge(1, 0, int(1)).unwrap();
        assert!(g.add_edge(0, 1, int(1)).is_err());
        assert_eq!(g.edges()[0].u, 0);
    }

    #[test]
    fn json_and_csv_round_trip() {
        let mut g = WeightedGraph::new(3).unwrap();
        g.add_edge(0, 1, frac(1, 2)).unwrap();
        g.add_edge(1, 2, int(3)).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":3,"edges":[[0,1,"1/2"],[1,2,"3"]]}"#);
        let back: WeightedGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert_eq!(WeightedGraph::from_csv(&g.to_csv(), None).unwrap(), g);
        let bare = WeightedGraph::from_csv("# comment\n0,1,1/2\n\n1,2,3\n", Some(3)).unwrap();
        assert_eq!(bare, g);
        assert!(WeightedGraph::from_csv("0,1\n", None).is_err());
    }

    #[test]
    fn hypergraph_json() {
        let h: WeightedHypergraph =
            serde_json::from_str(r#"{"n":4,"hyperedges":[{"vertices":[0,2,3],"weight":"-1/3"}]}"#)
                .unwrap();
        assert_eq!(h.hyperedges()[0].vertices, SubsetMask(0b1101));
        assert!(serde_json::from_str::<WeightedHypergraph>(
            r#"{"n":2,"hyperedges":[{"vertices":[],"weight":"1"}]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<WeightedHypergraph>(
            r#"{"n":2,"hyperedges":[{"vertices":[2],"weight":"1"}]}"#
        )
        .is_err());
    }
}
