use num_traits::{One, Zero};
use serde::Serialize;

use super::WeightedGraph;
use crate::lp::{Direction, LinearProgram, LpStatus, Relation};
use crate::rational::{self, Rational};
use crate::{Error, Result, SubsetMask};

/// Triangles as vertex masks in lexicographic order.
pub fn triangles(g: &WeightedGraph) -> Vec<SubsetMask> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if !adj[a].contains(b) {
                continue;
            }
            for c in b + 1..g.n() {
                if adj[a].contains(c) && adj[b].contains(c) {
                    out.push(SubsetMask::from_elements([a, b, c]));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrianglePacking {
    pub triangle: Vec<usize>,
    #[serde(with = "rational::as_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCover {
    pub edge: (usize, usize),
    #[serde(with = "rational::as_str")]
    pub value: Rational,
}

/// Optimal fractional triangle packing and weighted triangle cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleLpResult {
    #[serde(with = "rational::as_str")]
    pub nu_star: Rational,
    #[serde(with = "rational::as_str")]
    pub tau_star: Rational,
    pub packing: Vec<TrianglePacking>,
    pub cover: Vec<EdgeCover>,
}

fn optimum(lp: &LinearProgram) -> Result<(Rational, Vec<Rational>)> {
    let sol = lp.solve()?;
    match (sol.status, sol.value) {
        (LpStatus::Optimal, Some(v)) => Ok((v, sol.assignment)),
        (status, _) => Err(Error::UnexpectedLpStatus(status.as_str())),
    }
}

/// Solves the packing LP (`max sum x(T)`, triangle loads within edge
/// weights) and the cover LP (`min sum w(e) y(e)`, every triangle covered at
/// least once) separately and checks that the optima agree.
pub fn triangle_lps(g: &WeightedGraph) -> Result<TriangleLpResult> {
    let tris = triangles(g);
    let edges = g.edges();

    let mut packing = LinearProgram::new(tris.len(), Direction::Maximize);
    for j in 0..tris.len() {
        packing.set_objective(j, Rational::one());
    }
    for e in edges {
        let row: Vec<(usize, Rational)> = tris
            .iter()
            .enumerate()
            .filter(|(_, t)| e.mask().is_subset_of(**t))
            .map(|(j, _)| (j, Rational::one()))
            .collect();
        if !row.is_empty() {
            packing.add_constraint(row, Relation::Le, e.weight.clone())?;
        }
    }

    let mut cover = LinearProgram::new(edges.len(), Direction::Minimize);
    for (j, e) in edges.iter().enumerate() {
        cover.set_objective(j, e.weight.clone());
    }
    for t in &tris {
        let row = edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.mask().is_subset_of(*t))
            .map(|(j, _)| (j, Rational::one()))
            .collect();
        cover.add_constraint(row, Relation::Ge, Rational::one())?;
    }

    let (nu_star, x) = optimum(&packing)?;
    let (tau_star, y) = optimum(&cover)?;
    if nu_star != tau_star {
        return Err(Error::Internal(format!(
            "triangle packing {} and cover {} optima differ",
            rational::format(&nu_star),
            rational::format(&tau_star)
        )));
    }
    Ok(TriangleLpResult {
        nu_star,
        tau_star,
        packing: tris
            .iter()
            .zip(x)
            .filter(|(_, v)| !v.is_zero())
            .map(|(t, value)| TrianglePacking {
                triangle: t.elements().collect(),
                value,
            })
            .collect(),
        cover: edges
            .iter()
            .zip(y)
            .filter(|(_, v)| !v.is_zero())
            .map(|(e, value)| EdgeCover {
                edge: (e.u, e.v),
                value,
            })
            .collect(),
    })
}

/// `w(E) - nu*`, an upper bound on the optimal sum-decomposition value of
/// the cut function.
pub fn nu_star_bound(g: &WeightedGraph) -> Result<Rational> {
    Ok(g.total_weight() - triangle_lps(g)?.nu_star)
}
