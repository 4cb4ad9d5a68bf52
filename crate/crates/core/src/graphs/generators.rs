use num_traits::{One, Zero};

use super::{WeightedGraph, WeightedHypergraph};
use crate::lp::{Decomposition, DecompositionKind};
use crate::rational::Rational;
use crate::{Error, GroundSet, Result, SetFunction, SubsetMask};

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(what.to_string()))
    }
}

/// Wheel `W_n`: hub 0 joined to the rim cycle `1, 2, ..., n-1`.
pub fn wheel(n: usize) -> Result<WeightedGraph> {
    require(n >= 4, "a wheel needs at least 4 vertices")?;
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
    edges.extend((1..n - 1).map(|i| (i, i + 1)));
    edges.push((1, n - 1));
    WeightedGraph::with_unit_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<WeightedGraph> {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    WeightedGraph::with_unit_edges(n, &edges)
}

/// `K_n` without the edge `01`.
pub fn complete_minus_edge(n: usize) -> Result<WeightedGraph> {
    require(n >= 2, "complete-minus-edge needs at least 2 vertices")?;
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&e| e != (0, 1))
        .collect();
    WeightedGraph::with_unit_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<WeightedGraph> {
    require(n >= 3, "a cycle needs at least 3 vertices")?;
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    WeightedGraph::with_unit_edges(n, &edges)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Result<WeightedGraph> {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    WeightedGraph::with_unit_edges(n, &edges)
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<WeightedGraph> {
    let edges: Vec<(usize, usize)> = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .collect();
    WeightedGraph::with_unit_edges(a + b, &edges)
}

/// One unit hyperedge spanning all `k` vertices.
pub fn hyperedge(k: usize) -> Result<WeightedHypergraph> {
    let mut h = WeightedHypergraph::new(k)?;
    let all = h.ground().full();
    h.add_hyperedge(all, Rational::one())?;
    Ok(h)
}

/// On `2n` elements with `A = {0, ..., n-1}`: zero on sets comparable
/// with `A`, one elsewhere. Submodular, with `||psi||_+ >= n`.
pub fn counterexample_sum(n: usize) -> Result<SetFunction> {
    require(n >= 1, "counterexample_sum needs n >= 1")?;
    let ground = GroundSet::new(2 * n)?;
    let a = SubsetMask((1u32 << n) - 1);
    Ok(SetFunction::from_fn(ground, |x| {
        if x.is_subset_of(a) || a.is_subset_of(x) {
            Rational::zero()
        } else {
            Rational::one()
        }
    }))
}

/// On `n` elements: `-1` on the full set, zero elsewhere.
pub fn counterexample_diff(n: usize) -> Result<SetFunction> {
    let ground = GroundSet::new(n)?;
    let full = ground.full();
    Ok(SetFunction::from_fn(ground, |x| {
        if x == full {
            -Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// The 1-bounded sum-decomposition of the cut function of unit `K_n`,
/// `d(X) = h(|X|)` with `h(k) = k(n-k)`, split at the smallest maximizer of `h`.
pub fn complete_graph_decomposition(n: usize) -> Result<Decomposition> {
    let d = complete(n)?.cut_function();
    let h = |k: usize| Rational::from_integer(((k * (n - k)) as i64).into());
    let k0 = (0..=n).fold(0, |best, k| if h(k) > h(best) { k } else { best });
    let phi1 = SetFunction::from_fn(d.ground(), |x| h(x.len().min(k0)));
    let dec = Decomposition::from_phi1(&d, phi1, DecompositionKind::Sum)?;
    if let Some(msg) = dec.violation(&d) {
        return Err(Error::Internal(msg));
    }
    if dec.part_norm() != d.norm_inf() {
        return Err(Error::Internal(
            "complete graph split is not 1-bounded".into(),
        ));
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::max_cut;
    use crate::rational::int;

    #[test]
    fn named_graphs() {
        let w5 = wheel(5).unwrap();
        assert_eq!(w5.edges().len(), 8);
        assert_eq!(max_cut(&w5).0, int(6));
        assert_eq!(
            edge_set(&wheel(4).unwrap()),
            edge_set(&complete(4).unwrap())
        );
        assert_eq!(complete_minus_edge(7).unwrap().edges().len(), 20);
        assert!(!complete_minus_edge(3).unwrap().has_edge(0, 1));
        assert_eq!(cycle(5).unwrap().edges().len(), 5);
        assert_eq!(path(4).unwrap().edges().len(), 3);
        assert_eq!(complete_bipartite(3, 3).unwrap().edges().len(), 9);
        assert!(wheel(3).is_err());
    }

    fn edge_set(g: &WeightedGraph) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
        edges.sort();
        edges
    }

    #[test]
    fn counterexamples() {
        let f = counterexample_sum(2).unwrap();
        assert_eq!(f.n(), 4);
        assert_eq!(f.norm_inf(), int(1));
        assert!(f.is_submodular());
        let g = counterexample_diff(3).unwrap();
        assert_eq!(g.total(), &int(-1));
        assert!(g.is_submodular());
    }

    #[test]
    fn complete_splits() {
        let k4 = complete_graph_decomposition(4).unwrap();
        assert_eq!(k4.phi1.total(), &int(4));
        assert_eq!(k4.phi2.total(), &int(-4));
        let k2 = complete_graph_decomposition(2).unwrap();
        assert_eq!(k2.phi1.values(), &[int(0), int(1), int(1), int(1)]);
        assert_eq!(k2.phi2.values(), &[int(0), int(0), int(0), int(-1)]);
        let k1 = complete_graph_decomposition(1).unwrap();
        assert!(k1.phi1.values().iter().all(Zero::is_zero));
        assert!(complete_graph_decomposition(5).is_ok());
    }

    #[test]
    fn spanning_hyperedge() {
        let h = hyperedge(4).unwrap();
        assert_eq!(h.hyperedges().len(), 1);
        assert_eq!(h.hyperedges()[0].vertices, SubsetMask(0b1111));
    }
}
