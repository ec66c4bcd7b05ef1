use proptest::prelude::*;

use ird_core::dh::{build_decomposition, solve_dh, DecompTree};
use ird_core::generate::{gen_dh, generate, GenSpec, GraphClass, Prng};
use ird_core::oracle::{exact_i, exact_irdf};
use ird_core::p4::{join, solve_p4, JoinOperand};
use ird_core::solver::{solve_as, SolverClass};
use ird_core::split::solve_split;
use ird_core::{validate_irdf, Graph, Solution};

const CAP: usize = 15;

fn check(g: &Graph, sol: &Solution) {
    assert!(validate_irdf(g, &sol.certificate).unwrap().is_valid());
    assert_eq!(sol.certificate.weight(), sol.value);
}

/// `g` with vertex `v` renamed to `perm[v]`.
fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().map(|(a, b)| (perm[a], perm[b]))).unwrap()
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    Prng::new(seed).shuffle(&mut p);
    p
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, keep)| *keep).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dh_matches_oracle(n in 1usize..=10, seed: u64) {
        let (g, tree) = gen_dh(&GenSpec::new(GraphClass::Dh, n, seed)).unwrap();
        let sol = solve_dh(&g).unwrap();
        check(&g, &sol);
        prop_assert_eq!(sol.value, exact_irdf(&g, CAP).unwrap().value);
        // Solving the generator's own tree gives the same value as the rebuilt one.
        prop_assert_eq!(ird_core::dh::solve_dh_tree(&tree).value, sol.value);
    }

    #[test]
    fn split_matches_oracle(n in 1usize..=10, seed: u64, frac in 0.0f64..=1.0, cross in 0.0f64..=1.0) {
        let mut spec = GenSpec::new(GraphClass::Split, n, seed);
        spec.clique_fraction = frac;
        spec.cross_p = cross;
        let g = generate(&spec).unwrap();
        let sol = solve_split(&g).unwrap();
        check(&g, &sol);
        prop_assert_eq!(sol.value, exact_irdf(&g, CAP).unwrap().value);
    }

    #[test]
    fn p4sparse_matches_oracle(n in 1usize..=11, seed: u64, empty_head: bool) {
        let mut spec = GenSpec::new(GraphClass::P4Sparse, n, seed);
        spec.empty_head = empty_head;
        let g = generate(&spec).unwrap();
        let sol = solve_p4(&g).unwrap();
        check(&g, &sol);
        prop_assert_eq!(sol.value, exact_irdf(&g, CAP).unwrap().value);
    }

    #[test]
    fn headless_spiders_agree_with_split(half in 2usize..=6, seed: u64) {
        let mut spec = GenSpec::new(GraphClass::P4Sparse, 2 * half, seed);
        spec.p4_weights = [0.0, 0.0, 1.0];
        spec.empty_head = true;
        let g = generate(&spec).unwrap();
        prop_assert_eq!(solve_p4(&g).unwrap().value, solve_split(&g).unwrap().value);
    }

    #[test]
    fn cographs_agree_across_solvers(n in 1usize..=40, seed: u64) {
        let g = generate(&GenSpec::new(GraphClass::Cograph, n, seed)).unwrap();
        let dh = solve_dh(&g).unwrap();
        let p4 = solve_p4(&g).unwrap();
        check(&g, &dh);
        check(&g, &p4);
        prop_assert_eq!(dh.value, p4.value);
    }

    #[test]
    fn values_ignore_vertex_names(n in 1usize..=30, seed: u64, perm_seed: u64) {
        for class in [GraphClass::Dh, GraphClass::Split, GraphClass::P4Sparse] {
            let g = generate(&GenSpec::new(class, n, seed)).unwrap();
            let h = relabel(&g, &permutation(n, perm_seed));
            let solver = match class {
                GraphClass::Dh => SolverClass::Dh,
                GraphClass::Split => SolverClass::Split,
                _ => SolverClass::P4Sparse,
            };
            prop_assert_eq!(
                solve_as(solver, &g, CAP).unwrap().value,
                solve_as(solver, &h, CAP).unwrap().value
            );
        }
    }

    #[test]
    fn every_accepting_solver_agrees(g in graph_strategy(9)) {
        let values: Vec<usize> = SolverClass::AUTO_ORDER
            .into_iter()
            .filter_map(|c| solve_as(c, &g, CAP).ok())
            .inspect(|sol| check(&g, sol))
            .map(|sol| sol.value)
            .collect();
        prop_assert!(values.windows(2).all(|w| w[0] == w[1]), "{:?}", values);
    }

    #[test]
    fn roman_bounds_on_independent_domination(g in graph_strategy(10)) {
        let ir = exact_irdf(&g, CAP).unwrap().value;
        let i = exact_i(&g, CAP).unwrap().value;
        prop_assert!(i <= ir && ir <= 2 * i, "i = {}, i_R = {}", i, ir);
    }

    #[test]
    fn dh_recognition_matches_definition(g in graph_strategy(8)) {
        // Distance-hereditary iff every induced subgraph on two or more
        // vertices has a pendant vertex or a pair of twins.
        let n = g.n();
        let brute = (0u32..1 << n).all(|mask| {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let h = g.induced_subgraph(&set);
            h.n() < 2 || (0..h.n()).any(|u| {
                h.degree(u) == 1 || (0..h.n()).any(|w| {
                    w != u && (h.neighbors(u) == h.neighbors(w) || {
                        let mut a = h.neighbors(u).to_vec();
                        a.push(u);
                        a.sort_unstable();
                        let mut b = h.neighbors(w).to_vec();
                        b.push(w);
                        b.sort_unstable();
                        a == b
                    })
                })
            })
        });
        prop_assert_eq!(build_decomposition(&g).is_ok(), brute);
    }

    #[test]
    fn tree_json_round_trip(n in 1usize..=60, seed: u64) {
        let (_, tree) = gen_dh(&GenSpec::new(GraphClass::Dh, n, seed)).unwrap();
        let back = DecompTree::from_json(&tree.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), tree.to_json());
        prop_assert_eq!(back.to_graph(), tree.to_graph());
    }

    #[test]
    fn join_fold_order_is_irrelevant(
        parts in proptest::collection::vec((1usize..8, 1usize..8, any::<bool>()), 2..6),
        rotate in 0usize..6,
    ) {
        let operands: Vec<JoinOperand> = parts
            .iter()
            .map(|&(size, value, edgeless)| {
                if edgeless {
                    JoinOperand { value: size, size, edgeless }
                } else {
                    JoinOperand { value: value.min(size + 1).max(1), size: size.max(2), edgeless }
                }
            })
            .collect();
        let fold = |ops: &[JoinOperand]| {
            ops.iter().skip(1).fold(ops[0], |acc, &op| join(acc, op).0).value
        };
        let mut other = operands.clone();
        other.rotate_left(rotate % operands.len());
        other.reverse();
        prop_assert_eq!(fold(&operands), fold(&other));
    }
}
