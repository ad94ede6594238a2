mod common;

use chipfire::{
    bramble_order_r, certify_lower_bound, egg_cut_number, generalized_banana, gonality,
    hitting_number_r, scramble_order, treewidth_r_lower_bound, vertex_scramble, CertificateFile,
    EggCut, Multigraph, SearchOptions, VertexSet,
};

/// Vertices reachable from `start` once the listed bundles are deleted.
fn reach_without(g: &Multigraph, cut: &[(usize, usize, u32)], start: usize) -> Vec<bool> {
    let removed = |u: usize, v: usize| {
        cut.iter()
            .any(|&(a, b, _)| (a, b) == (u, v) || (b, a) == (u, v))
    };
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for &(w, _) in g.neighbors(u) {
            if !seen[w] && !removed(u, w) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

#[test]
fn fixture_chain_holds() {
    let fixtures = common::bramble_fixtures(0xb4a3, 150);
    for (g, bramble) in &fixtures {
        let scramble = bramble.as_scramble();
        let r = bramble.r;
        let report = scramble_order(g, &scramble).unwrap();
        let bn = bramble_order_r(g, bramble).unwrap();
        let gon = gonality(g, r, &SearchOptions::default())
            .unwrap()
            .minimum_degree
            .unwrap();
        assert!(bn as i64 - i64::from(r) <= report.order as i64);
        assert_eq!(
            treewidth_r_lower_bound(g, bramble).unwrap(),
            bn as i64 - i64::from(r)
        );
        assert!(
            report.order <= u64::from(gon),
            "order {} > gon {gon}",
            report.order
        );
        if let Some(e) = report.egg_cut.size() {
            assert!(e + u64::from(r) >= report.h_r.size);
        }

        for egg in &bramble.sets {
            assert!(report.h_r.witness.intersection_size(egg) >= u64::from(r));
        }
        if let EggCut::Finite { size, edges, eggs } = &report.egg_cut {
            let total: u64 = edges.iter().map(|&(_, _, m)| u64::from(m)).sum();
            assert_eq!(total, *size);
            let (a, b) = (&bramble.sets[eggs.0], &bramble.sets[eggs.1]);
            assert!(a.is_disjoint(b));
            let seen = reach_without(g, edges, a.as_slice()[0]);
            assert!(a.iter().all(|v| seen[v]));
            assert!(b.iter().all(|v| !seen[v]));
        }
    }
}

#[test]
fn banana_vertex_scrambles_meet_gonality() {
    for n in 2..=3usize {
        let m = 2 * n as u32;
        for extra in [0, 1] {
            let mults: Vec<u32> = (0..n - 1).map(|i| m + extra * i as u32).collect();
            let g = generalized_banana(n, &mults).unwrap();
            let cert = vertex_scramble(&g, 2);
            let order = certify_lower_bound(&g, &cert).unwrap();
            let gon = gonality(&g, 2, &SearchOptions::default()).unwrap();
            assert_eq!(order, 2 * n as u64);
            assert_eq!(gon.minimum_degree, Some(2 * n as u32));
        }
    }
}

#[test]
fn certificate_files_round_trip() {
    let g = generalized_banana(3, &[6, 6]).unwrap();
    let text = r#"{"kind": "bramble", "r": 2, "sets": [[0, 1], [1, 2], [0, 1, 2]]}"#;
    let file = CertificateFile::from_json(text).unwrap();
    let bramble = file.to_bramble(3).unwrap();
    assert_eq!(bramble_order_r(&g, &bramble).unwrap(), 2);
    assert_eq!(treewidth_r_lower_bound(&g, &bramble).unwrap(), 0);

    assert!(
        CertificateFile::from_json(r#"{"kind": "scramble", "r": 1, "sets": [[5]]}"#)
            .unwrap()
            .to_scramble(3)
            .is_err()
    );
    assert!(
        CertificateFile::from_json(r#"{"kind": "scramble", "r": 1, "sets": [], "x": 1}"#).is_err()
    );

    let single = chipfire::ScrambleCertificate {
        eggs: vec![VertexSet::full(3)],
        r: 1,
    };
    let report = scramble_order(&g, &single).unwrap();
    assert_eq!(report.order, 1);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["egg_cut"], "infinite");
    assert_eq!(json["h_r"]["size"], 1);
    assert_eq!(egg_cut_number(&g, &single).unwrap(), EggCut::Infinite);
    assert_eq!(
        hitting_number_r(&g, &single)
            .unwrap()
            .witness
            .to_sorted_vec(),
        vec![0]
    );
}
