mod common;

use common::{all_graphs, chromatic_number, naive_conflicts, naive_first_fit, random_graph, Dense};
use optcolor::coloring::parallel::{color_catalyurek_with, color_rsoc_with};
use optcolor::io::{load_edge_list, load_matrix_market, relabel, shuffle_vertices};
use optcolor::{
    color_catalyurek, color_rsoc, count_colors, detect_conflicts, first_fit_sequential, Coloring, Graph,
    ParallelConfig, Worklist,
};
use proptest::prelude::*;

#[test]
fn first_fit_matches_naive_on_all_small_graphs() {
    for n in 0..=5 {
        for edges in all_graphs(n) {
            let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
            let ours = first_fit_sequential(&g);
            assert_eq!(
                ours.as_slice(),
                naive_first_fit(&Dense::new(n, &edges)).as_slice(),
                "{edges:?}"
            );
            assert!(ours.is_dense());
            assert!(count_colors(&ours).unwrap() <= g.max_degree() + 1);
        }
    }
}

#[test]
fn five_cycle_hand_trace() {
    // v0 -> 0; v1 sees {0} -> 1; v2 sees {1} -> 0; v3 sees {0} -> 1;
    // v4 sees v3=1 and v0=0 -> 2.
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    assert_eq!(naive_first_fit(&Dense::new(5, &edges)), vec![0, 1, 0, 1, 2]);
    let g = Graph::from_edges(5, edges).unwrap();
    assert_eq!(first_fit_sequential(&g).as_slice(), &[0, 1, 0, 1, 2]);
}

#[test]
fn detect_conflicts_matches_double_loop() {
    for n in 1..=5 {
        for (k, edges) in all_graphs(n).enumerate() {
            let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
            let d = Dense::new(n, &edges);
            let colorings = [
                vec![0u32; n],
                (0..n as u32).map(|v| (v * 7 + k as u32) % 3).collect::<Vec<_>>(),
                (0..n as u32).map(|v| v % 2).collect(),
            ];
            for colors in colorings {
                let all: Vec<u32> = (0..n as u32).collect();
                let subset: Vec<u32> = all.iter().copied().filter(|v| (v + k as u32) % 2 == 0).collect();
                for u in [all, subset] {
                    let got = detect_conflicts(
                        &g,
                        &Coloring::from_vec(colors.clone()),
                        &Worklist::new(u.clone(), n).unwrap(),
                    );
                    assert_eq!(got.as_slice(), naive_conflicts(&d, &colors, &u).as_slice());
                }
            }
        }
    }
}

#[test]
fn shuffle_preserves_chromatic_number() {
    for seed in 0..60u64 {
        let n = 2 + (seed as usize % 9);
        let g = random_graph(n, 3.0, seed);
        let (s, perm) = shuffle_vertices(&g, seed ^ 0xfeed);
        assert_eq!(s.num_vertices(), g.num_vertices());
        assert_eq!(s.num_edges(), g.num_edges());
        assert_eq!(
            chromatic_number(&Dense::from_graph(&s)),
            chromatic_number(&Dense::from_graph(&g))
        );
        // Undoing the permutation restores the original arrays.
        let mut inverse = vec![0u32; n];
        for (old, &new) in perm.iter().enumerate() {
            inverse[new as usize] = old as u32;
        }
        assert_eq!(relabel(&s, &inverse).unwrap(), g);
    }
}

#[test]
fn brute_force_chromatic_sanity() {
    assert_eq!(chromatic_number(&Dense::new(3, &[(0, 1), (1, 2), (2, 0)])), 3);
    assert_eq!(
        chromatic_number(&Dense::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])),
        3
    );
    assert_eq!(chromatic_number(&Dense::new(4, &[(0, 1), (2, 3)])), 2);
    assert_eq!(chromatic_number(&Dense::new(2, &[])), 1);
}

fn mm_text(n: usize, edges: &[(u32, u32)], general: bool, pattern: bool, diagonal: bool) -> String {
    let mut entries = Vec::new();
    for &(u, v) in edges {
        let (r, c) = if u >= v { (u, v) } else { (v, u) };
        entries.push((r + 1, c + 1));
        if general && (u + v) % 3 == 0 {
            entries.push((c + 1, r + 1));
        }
    }
    if diagonal && n > 0 {
        entries.push((1, 1));
    }
    let mut text = format!(
        "%%MatrixMarket matrix coordinate {} {}\n% generated\n{n} {n} {}\n",
        if pattern { "pattern" } else { "real" },
        if general { "general" } else { "symmetric" },
        entries.len()
    );
    for (r, c) in entries {
        if pattern {
            text += &format!("{r} {c}\n");
        } else {
            text += &format!("{r} {c} {}.5\n", r + c);
        }
    }
    text
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_market_loader_fuzz(
        n in 1usize..30,
        raw in prop::collection::vec((0u32..30, 0u32..30), 0..80),
        general in any::<bool>(),
        pattern in any::<bool>(),
        diagonal in any::<bool>(),
    ) {
        let edges: Vec<_> = raw.into_iter().map(|(u, v)| (u % n as u32, v % n as u32)).collect();
        let text = mm_text(n, &edges, general, pattern, diagonal);
        let g = load_matrix_market(text.as_bytes()).unwrap();
        g.validate().unwrap();
        prop_assert_eq!(g, Graph::from_edges(n, edges).unwrap());
    }

    #[test]
    fn edge_list_loader_fuzz(raw in prop::collection::vec((0u32..50, 0u32..50), 0..100)) {
        let mut text = String::from("# fuzz\n");
        for (i, (u, v)) in raw.iter().enumerate() {
            text += &format!("{}{u}\t {v}\n", if i % 5 == 0 { "\n" } else { "" });
        }
        let g = load_edge_list(text.as_bytes(), None).unwrap();
        g.validate().unwrap();
        let n = raw.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0);
        prop_assert_eq!(g, Graph::from_edges(n, raw).unwrap());
    }

    #[test]
    fn single_thread_equals_sequential(n in 0usize..400, deg in 0.0f64..12.0, seed in any::<u64>()) {
        let g = random_graph(n, deg, seed);
        let expected = first_fit_sequential(&g);
        let (c, s) = color_catalyurek(&g, 1).unwrap();
        prop_assert_eq!(&c, &expected);
        prop_assert_eq!((s.rounds, s.conflicts_total, s.fallback_triggered), (1, 0, false));
        let (c, s) = color_rsoc(&g, 1).unwrap();
        prop_assert_eq!(&c, &expected);
        prop_assert_eq!((s.rounds, s.conflicts_total, s.fallback_triggered), (1, 0, false));
    }

    #[test]
    fn parallel_colorings_are_proper(
        n in 1usize..2000,
        deg in 0.0f64..20.0,
        seed in any::<u64>(),
        threads in 1usize..6,
        chunk in 1usize..100,
    ) {
        let g = random_graph(n, deg, seed);
        let cfg = ParallelConfig { threads, chunk_size: Some(chunk), round_cap: 1000 };
        for (c, s) in [color_catalyurek_with(&g, &cfg).unwrap(), color_rsoc_with(&g, &cfg).unwrap()] {
            prop_assert!(common::proper(&g, c.as_slice()));
            prop_assert!(s.num_colors <= g.max_degree() + 1);
            s.check(g.max_degree()).unwrap();
            let all = Worklist::all(g.num_vertices());
            prop_assert!(detect_conflicts(&g, &c, &all).is_empty());
        }
    }
}
