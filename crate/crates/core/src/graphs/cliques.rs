use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::WeightedGraph;
use crate::alternating::alt_sum;
use crate::lp::{Direction, LinearProgram, LpStatus, Relation};
use crate::rational::{self, Rational};
use crate::{Error, GroundSet, Result, SetFunction, SubsetMask};

/// Vertex sets of all complete subgraphs (singletons included), in
/// lexicographic order of their sorted vertex lists.
pub fn enumerate_cliques(g: &WeightedGraph) -> Vec<SubsetMask> {
    fn extend(
        adj: &[SubsetMask],
        clique: SubsetMask,
        candidates: SubsetMask,
        out: &mut Vec<SubsetMask>,
    ) {
        out.push(clique);
        for v in candidates.elements() {
            let later = SubsetMask(candidates.bits() & !((2u32 << v) - 1));
            extend(adj, clique.with(v), later & adj[v], out);
        }
    }
    let adj = g.adjacency();
    let mut out = Vec::new();
    for v in 0..g.n() {
        let later = SubsetMask(g.ground().full().bits() & !((2u32 << v) - 1));
        extend(&adj, SubsetMask::singleton(v), later & adj[v], &mut out);
    }
    out
}

/// Weights on the cliques of a graph; the induced function of the clique
/// hypergraph under these weights is `X -> sum of w'(K) over cliques K in X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueWeights {
    ground: GroundSet,
    weights: Vec<(SubsetMask, Rational)>,
}

impl Serialize for CliqueWeights {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            clique: Vec<usize>,
            weight: String,
        }
        let mut seq = s.serialize_seq(Some(self.weights.len()))?;
        for (k, w) in &self.weights {
            seq.serialize_element(&Entry {
                clique: k.elements().collect(),
                weight: rational::format(w),
            })?;
        }
        seq.end()
    }
}

impl CliqueWeights {
    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, &Rational)> {
        self.weights.iter().map(|(k, w)| (*k, w))
    }

    pub fn get(&self, clique: SubsetMask) -> Option<&Rational> {
        self.weights
            .iter()
            .find(|(k, _)| *k == clique)
            .map(|(_, w)| w)
    }

    pub fn induced_value(&self, x: SubsetMask) -> Rational {
        self.weights
            .iter()
            .filter(|(k, _)| k.is_subset_of(x))
            .map(|(_, w)| w.clone())
            .sum()
    }

    pub fn induced_function(&self) -> SetFunction {
        SetFunction::from_fn(self.ground, |x| self.induced_value(x))
    }
}

/// Recovers `w'` with `phi1 = i_{H,w'}` over the clique hypergraph `H` of
/// `g`, defining `w'(K) = phi1(K) - sum of w'(K')` over cliques `K'` strictly
/// inside `K`, then checking the identity on every subset.
///
/// The identity holds whenever `phi1` is the increasing part of a monotonic
/// sum-decomposition of the cut function of `g`. On failure the error names
/// the lowest failing set `X` and the pair `X - u`, `X - v` (with `uv` a
/// non-edge) on which `phi1` is not modular.
pub fn recover_clique_weights(g: &WeightedGraph, phi1: &SetFunction) -> Result<CliqueWeights> {
    if phi1.n() != g.n() {
        return Err(Error::GroundMismatch(phi1.n(), g.n()));
    }
    phi1.require_normalized()?;
    let mut cliques = enumerate_cliques(g);
    cliques.sort_by_key(|k| (k.len(), k.bits()));
    let mut by_mask = vec![None::<Rational>; g.ground().num_subsets()];
    for &k in &cliques {
        let mut w = phi1.value(k).clone();
        for sub in k.subsets() {
            if sub != k {
                if let Some(v) = &by_mask[sub.index()] {
                    w -= v;
                }
            }
        }
        by_mask[k.index()] = Some(w);
    }
    let weights: Vec<(SubsetMask, Rational)> = enumerate_cliques(g)
        .into_iter()
        .map(|k| (k, by_mask[k.index()].clone().unwrap_or_else(Rational::zero)))
        .collect();
    let result = CliqueWeights {
        ground: g.ground(),
        weights,
    };

    for (k, w) in result.iter() {
        let singles: Vec<SubsetMask> = k.elements().map(SubsetMask::singleton).collect();
        let mut closed = alt_sum(phi1, SubsetMask::EMPTY, &singles)?;
        if singles.len() % 2 == 1 {
            closed = -closed;
        }
        if &closed != w {
            return Err(Error::Internal(format!(
                "clique weight of {k} disagrees with its alternating sum"
            )));
        }
    }

    let adj = g.adjacency();
    for x in g.ground().subsets() {
        if &result.induced_value(x) == phi1.value(x) {
            continue;
        }
        let pair = x
            .elements()
            .flat_map(|u| x.elements().filter(move |&v| v > u).map(move |v| (u, v)))
            .find(|&(u, v)| !adj[u].contains(v));
        let (u, v) = pair.ok_or_else(|| Error::Internal(format!("clique {x} failed recovery")))?;
        return Err(Error::CliqueRecovery {
            set: x,
            left: x.without(u),
            right: x.without(v),
        });
    }
    Ok(result)
}

/// `d_w(v) <= w'({v}) + sum of w'(K) over cliques K containing v`.
pub fn check_vertex_inequality(g: &WeightedGraph, weights: &CliqueWeights, v: usize) -> bool {
    let single = weights
        .get(SubsetMask::singleton(v))
        .cloned()
        .unwrap_or_else(Rational::zero);
    let around: Rational = weights
        .iter()
        .filter(|(k, _)| k.contains(v))
        .map(|(_, w)| w.clone())
        .sum();
    g.degree(v) <= single + around
}

/// `min sum ceil(|K|/2) floor(|K|/2) z(K)` over `z >= 0` on cliques of size
/// at least two, with `sum of z(K) over K containing e = w(e)` per edge.
pub fn clique_bound(g: &WeightedGraph) -> Result<Rational> {
    let cliques: Vec<SubsetMask> = enumerate_cliques(g)
        .into_iter()
        .filter(|k| k.len() >= 2)
        .collect();
    if cliques.is_empty() {
        return Ok(Rational::zero());
    }
    let mut lp = LinearProgram::new(cliques.len(), Direction::Minimize);
    for (j, k) in cliques.iter().enumerate() {
        let size = k.len() as i64;
        lp.set_objective(
            j,
            Rational::from_integer((((size + 1) / 2) * (size / 2)).into()),
        );
    }
    for e in g.edges() {
        let row = cliques
            .iter()
            .enumerate()
            .filter(|(_, k)| e.mask().is_subset_of(**k))
            .map(|(j, _)| (j, Rational::one()))
            .collect();
        lp.add_constraint(row, Relation::Eq, e.weight.clone())?;
    }
    let sol = lp.solve()?;
    match (sol.status, sol.value) {
        (LpStatus::Optimal, Some(v)) => Ok(v),
        (status, _) => Err(Error::UnexpectedLpStatus(status.as_str())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, cycle, path};
    use crate::rational::{frac, int};

    #[test]
    fn clique_lists() {
        assert_eq!(enumerate_cliques(&complete(3).unwrap()).len(), 7);
        let c5 = cycle(5).unwrap();
        let ks = enumerate_cliques(&c5);
        assert_eq!(ks.len(), 10);
        assert!(ks.iter().all(|k| k.len() <= 2));
        let edgeless = WeightedGraph::new(3).unwrap();
        assert_eq!(
            enumerate_cliques(&edgeless),
            vec![SubsetMask(1), SubsetMask(2), SubsetMask(4)]
        );
        let k3 = enumerate_cliques(&complete(3).unwrap());
        let expected: Vec<u32> = vec![0b001, 0b011, 0b111, 0b101, 0b010, 0b110, 0b100];
        assert_eq!(k3.iter().map(|k| k.bits()).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn edge_incident_recovery() {
        let k2 = path(2).unwrap();
        let e = k2.incident_function();
        let w = recover_clique_weights(&k2, &e).unwrap();
        assert_eq!(w.get(SubsetMask(1)), Some(&int(1)));
        assert_eq!(w.get(SubsetMask(2)), Some(&int(1)));
        assert_eq!(w.get(SubsetMask(3)), Some(&int(-1)));
        assert_eq!(w.induced_function(), e);
        assert!(check_vertex_inequality(&k2, &w, 0));
        assert!(check_vertex_inequality(&k2, &w, 1));
    }

    #[test]
    fn edgeless_recovery() {
        let g = WeightedGraph::new(3).unwrap();
        let w = recover_clique_weights(&g, &SetFunction::zero(g.ground())).unwrap();
        assert!(w.iter().all(|(_, v)| v.is_zero()));
        assert!(check_vertex_inequality(&g, &w, 2));
    }

    #[test]
    fn recovery_reports_non_modular_pair() {
        let g = WeightedGraph::new(2).unwrap();
        let f = SetFunction::from_fn(g.ground(), |x| int(x.len().min(1) as i64));
        match recover_clique_weights(&g, &f) {
            Err(Error::CliqueRecovery { set, left, right }) => {
                assert_eq!(set, SubsetMask(3));
                assert_eq!((left, right), (SubsetMask(2), SubsetMask(1)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(clique_bound(&cycle(5).unwrap()).unwrap(), int(5));
        assert_eq!(clique_bound(&complete(3).unwrap()).unwrap(), int(2));
        let mut g = WeightedGraph::new(3).unwrap();
        g.add_edge(0, 1, frac(1, 2)).unwrap();
        assert_eq!(clique_bound(&g).unwrap(), frac(1, 2));
    }
}
