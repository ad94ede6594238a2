mod common;

use chipfire::{
    alpha_r, bipartite_extension, bound_preconditions, complete_bipartite, crown,
    detect_bipartition, gonality, independence_divisor, is_r_independent, mdba, mf_gonality,
    upper_bound, Block, Divisor, Error, Multigraph, SearchOptions, VertexSet,
};
use itertools::Itertools;

#[test]
fn corpus_sizes_match_known_counts() {
    let levels = common::connected_corpus(8);
    let sizes: Vec<usize> = levels.iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![1, 1, 2, 6, 21, 112, 853, 11117]);
}

fn brute_alpha(g: &Multigraph, r: u32) -> usize {
    let n = g.vertex_count();
    let d = g.distances();
    (1u32..(1 << n))
        .filter(|&m| {
            (0..n).all(|u| {
                (u + 1..n).all(|v| m >> u & 1 == 0 || m >> v & 1 == 0 || d[u][v] > r as usize)
            })
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

#[test]
fn alpha_matches_subset_enumeration() {
    for g in common::corpus_multigraphs(7) {
        for r in 1..=3 {
            let rep = alpha_r(&g, r).unwrap();
            assert_eq!(rep.alpha, brute_alpha(&g, r));
            assert_eq!(rep.witness.len(), rep.alpha);
            assert!(is_r_independent(&g, &rep.witness, r));
        }
    }
}

/// On a qualifying graph, every burned component of `D - E` is a tree whose
/// size is bounded by `r` and its deepest debt.
#[test]
fn burned_components_are_small_trees() {
    let mut checked = 0u64;
    for g in common::corpus_multigraphs(8) {
        let n = g.vertex_count();
        for r in 1..=2u32 {
            if !bound_preconditions(&g, r) {
                continue;
            }
            let d = independence_divisor(&g, r).unwrap();
            for e in (0..n).combinations_with_replacement(r as usize) {
                let debt = &d - &Divisor::from_multiset(n, &e);
                let report = mdba(&g, &debt).unwrap();
                for c in &report.first_pass_components {
                    let worst = c.iter().map(|v| -debt[v]).max().unwrap();
                    assert!(worst >= 1, "every burned component holds debt");
                    assert!(c.len() as i64 <= i64::from(r) - worst + 1);
                    let inner = c
                        .as_slice()
                        .iter()
                        .tuple_combinations()
                        .map(|(&u, &v)| g.mult(u, v) as usize);
                    assert_eq!(inner.sum::<usize>(), c.len() - 1, "component is a tree");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 90_000, "{checked}");
}

#[test]
fn independence_divisor_on_small_corpus() {
    for g in common::corpus_multigraphs(6) {
        for r in 1..=3u32 {
            if !bound_preconditions(&g, r) {
                assert_eq!(
                    independence_divisor(&g, r),
                    Err(Error::PreconditionsViolated { r })
                );
                continue;
            }
            let d = independence_divisor(&g, r).unwrap();
            let alpha = alpha_r(&g, r).unwrap();
            assert_eq!(d.degree() as usize, g.vertex_count() - alpha.alpha);
            for v in g.vertices() {
                assert_eq!(d[v] == 0, alpha.witness.contains(v));
            }
            let gon = gonality(&g, r, &SearchOptions::default()).unwrap();
            assert!(u64::from(gon.minimum_degree.unwrap()) <= upper_bound(&g, r).unwrap());
        }
    }
}

#[test]
fn gonality_at_most_mf_gonality() {
    for g in common::corpus_multigraphs(6) {
        for r in 1..=2u32 {
            let gon = gonality(&g, r, &SearchOptions::default()).unwrap();
            match mf_gonality(&g, r, &SearchOptions::default()) {
                Ok(mf) => assert!(gon.minimum_degree <= mf.minimum_degree),
                Err(Error::MfInfeasible { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

fn check_extension(g: &Multigraph) {
    let labels = detect_bipartition(g).unwrap();
    let ext = bipartite_extension(g, &labels).unwrap();
    let hat = &ext.graph;
    let (b1, b2) = (ext.block(Block::B1), ext.block(Block::B2));
    let (a1, a2) = (ext.block(Block::A1), ext.block(Block::A2));
    let orig = |vs: &[usize]| -> Vec<usize> { vs.iter().map(|&v| ext.roles[v].original).collect() };

    // Each of the three pieces copies g under the role map.
    for piece in [[&b1, &b2], [&a1, &b1], [&a2, &b2]] {
        let order: Vec<usize> = piece[0].iter().chain(piece[1].iter()).copied().collect();
        assert_eq!(hat.induced_matrix(&order), g.induced_matrix(&orig(&order)));
    }
    for &u in &a1 {
        for &w in &a2 {
            assert_eq!(hat.mult(u, w), 1);
        }
    }
    let sides = detect_bipartition(hat).unwrap();
    for v in a1.iter().chain(&b2) {
        assert_eq!(sides.side(*v), sides.side(a1[0]));
    }
    let edges = g.edge_count() as usize;
    assert_eq!(hat.edge_count() as usize, 3 * edges + b1.len() * b2.len());
}

#[test]
fn extension_pieces_copy_the_input() {
    let bipartite: Vec<Multigraph> = common::corpus_multigraphs(7)
        .into_iter()
        .filter(|g| detect_bipartition(g).is_ok())
        .collect();
    assert!(bipartite.len() > 50);
    for g in &bipartite {
        check_extension(g);
    }
    check_extension(&crown(10).unwrap());
    check_extension(&complete_bipartite(4, 4).unwrap());
}

/// 5x5 biadjacency matrices with all row and column sums 4 are exactly the
/// complements of permutation matrices, so every 4-regular bipartite graph
/// with sides of five is a crown graph; with sides of four only `K_{4,4}`
/// remains. Both are checked here together with the independence identity.
#[test]
fn four_regular_bipartite_graphs_up_to_ten_vertices() {
    let rows: Vec<u8> = (0u8..32).filter(|r| r.count_ones() == 4).collect();
    let mut found = 0;
    for choice in std::iter::repeat_n(rows.iter(), 5).multi_cartesian_product() {
        let regular = (0..5).all(|c| choice.iter().filter(|&&&r| r >> c & 1 == 1).count() == 4);
        if !regular {
            continue;
        }
        found += 1;
        let edges: Vec<(usize, usize, u32)> = (0..5)
            .flat_map(|i| {
                let row = *choice[i];
                (0..5)
                    .filter(move |&j| row >> j & 1 == 1)
                    .map(move |j| (i, 5 + j, 1))
            })
            .collect();
        let g = Multigraph::from_edges(10, &edges).unwrap();
        assert_eq!(g.girth(), crown(10).unwrap().girth());
        let hat = bipartite_extension(&g, &detect_bipartition(&g).unwrap())
            .unwrap()
            .graph;
        assert_eq!(
            alpha_r(&hat, 2).unwrap().alpha,
            alpha_r(&g, 2).unwrap().alpha
        );
    }
    assert_eq!(found, 120);

    let k44 = complete_bipartite(4, 4).unwrap();
    let hat = bipartite_extension(&k44, &detect_bipartition(&k44).unwrap())
        .unwrap()
        .graph;
    assert_eq!(alpha_r(&hat, 2).unwrap().alpha, 1);
    assert_eq!(alpha_r(&k44, 2).unwrap().alpha, 1);
}

#[test]
fn alpha_witness_is_lexicographically_smallest() {
    for g in common::corpus_multigraphs(6) {
        let rep = alpha_r(&g, 2).unwrap();
        let n = g.vertex_count();
        let best = (0..n)
            .combinations(rep.alpha)
            .map(VertexSet::from_unchecked)
            .find(|s| is_r_independent(&g, s, 2))
            .unwrap();
        assert_eq!(rep.witness, best);
    }
}
