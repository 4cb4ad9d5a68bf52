mod common;

use monodec::lp::{Direction, LinearProgram, LpStatus, Relation, VarBound};
use monodec::rational::{frac, int};
use monodec::Rational;
use num_traits::Zero;
use proptest::prelude::*;

/// Vertices of a two-variable LP: all feasible pairwise intersections of
/// constraint lines (including the axes for sign-bounded variables).
fn brute_force_2d(lp: &LinearProgram) -> Option<Rational> {
    let mut lines: Vec<(Rational, Rational, Rational)> = lp
        .constraints()
        .iter()
        .map(|c| {
            let mut a = [Rational::zero(), Rational::zero()];
            for (j, v) in &c.row {
                a[*j] = v.clone();
            }
            (a[0].clone(), a[1].clone(), c.rhs.clone())
        })
        .collect();
    for j in 0..2 {
        if lp.bounds()[j] == VarBound::NonNegative {
            lines.push(if j == 0 {
                (int(1), int(0), int(0))
            } else {
                (int(0), int(1), int(0))
            });
        }
    }
    let mut best: Option<Rational> = None;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b, e) = &lines[i];
            let (c, d, f) = &lines[j];
            let det = a * d - b * c;
            if det.is_zero() {
                continue;
            }
            let x = vec![(e * d - b * f) / &det, (a * f - e * c) / &det];
            if lp.feasibility_violation(&x).is_none() {
                let v = lp.objective_value(&x);
                let better = match (&best, lp.direction()) {
                    (None, _) => true,
                    (Some(b), Direction::Maximize) => v > *b,
                    (Some(b), Direction::Minimize) => v < *b,
                };
                if better {
                    best = Some(v);
                }
            }
        }
    }
    best
}

fn lp_strategy() -> impl Strategy<Value = LinearProgram> {
    let coeff = (-5i64..=5, 1i64..=3);
    let row = (coeff.clone(), coeff.clone(), 0usize..3, -8i64..=8);
    (
        prop::collection::vec(row, 1..6),
        (coeff.clone(), coeff),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(rows, (c0, c1), maximize, free)| {
            let dir = if maximize {
                Direction::Maximize
            } else {
                Direction::Minimize
            };
            let mut lp = LinearProgram::new(2, dir);
            lp.set_objective(0, frac(c0.0, c0.1));
            lp.set_objective(1, frac(c1.0, c1.1));
            if free {
                lp.set_bound(1, VarBound::Free);
            }
            // Keep the region bounded so the vertex scan is a complete oracle.
            for j in 0..2 {
                lp.add_constraint(vec![(j, int(1))], Relation::Le, int(20))
                    .unwrap();
                lp.add_constraint(vec![(j, int(1))], Relation::Ge, int(-20))
                    .unwrap();
            }
            for ((a, b), (c, d), rel, rhs) in rows {
                let rel = [Relation::Le, Relation::Ge, Relation::Eq][rel];
                lp.add_constraint(vec![(0, frac(a, b)), (1, frac(c, d))], rel, int(rhs))
                    .unwrap();
            }
            lp
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn simplex_matches_vertex_enumeration(lp in lp_strategy()) {
        let sol = lp.solve().unwrap();
        prop_assert!(lp.check_solution(&sol).is_ok(), "{:?}", lp.check_solution(&sol));
        let brute = brute_force_2d(&lp);
        match sol.status {
            LpStatus::Optimal => prop_assert_eq!(sol.value, brute),
            LpStatus::Infeasible => prop_assert_eq!(brute, None),
            LpStatus::Unbounded => prop_assert!(false, "bounded region reported unbounded"),
        }
    }

    #[test]
    fn certificates_hold_without_box(lp in lp_strategy()) {
        // Drop the box rows: the program may now be unbounded.
        let mut open = LinearProgram::new(2, lp.direction());
        for j in 0..2 {
            open.set_objective(j, lp.objective()[j].clone());
            open.set_bound(j, lp.bounds()[j]);
        }
        for c in &lp.constraints()[4..] {
            open.add_constraint(c.row.clone(), c.relation, c.rhs.clone()).unwrap();
        }
        let sol = open.solve().unwrap();
        prop_assert!(open.check_solution(&sol).is_ok(), "{:?}", open.check_solution(&sol));
    }
}

#[test]
fn degenerate_assignment_problem() {
    // 4x4 assignment LP: highly degenerate, integral optimum.
    let cost = [[9, 2, 7, 8], [6, 4, 3, 7], [5, 8, 1, 8], [7, 6, 9, 4]];
    let mut lp = LinearProgram::new(16, Direction::Minimize);
    for (i, row) in cost.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            lp.set_objective(4 * i + j, int(c));
        }
    }
    for i in 0..4 {
        lp.add_constraint(
            (0..4).map(|j| (4 * i + j, int(1))).collect(),
            Relation::Eq,
            int(1),
        )
        .unwrap();
        lp.add_constraint(
            (0..4).map(|j| (4 * j + i, int(1))).collect(),
            Relation::Eq,
            int(1),
        )
        .unwrap();
    }
    let sol = lp.solve().unwrap();
    lp.check_solution(&sol).unwrap();
    assert_eq!(sol.value, Some(int(13)));
}
