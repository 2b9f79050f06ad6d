mod common;

use std::collections::BTreeSet;

use matchcover::generators::corpus::{random_graph, random_matching_covered};
use matchcover::matching::maximum_matching;
use matchcover::{canonical_form, equivalence_partition, Cut, EdgeId, MultiGraph, VertexId};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mcg(seed: u64, half: usize) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = rng.gen_range(0.3..0.8);
    random_matching_covered(&mut rng, 2 * half, density, 0.15).expect("sampled")
}

fn odd_shore(seed: u64, g: &MultiGraph) -> Vec<VertexId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = g.vertex_count();
    let size = 2 * rng.gen_range(0..n / 2) + 1;
    let mut vs = g.vertices().to_vec();
    vs.shuffle(&mut rng);
    let mut shore = vs[..size.min(n - 1)].to_vec();
    shore.sort();
    shore
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels(seed in any::<u64>(), half in 1usize..=5) {
        let g = mcg(seed, half);
        let (h, _, _) = common::relabel(&mut ChaCha8Rng::seed_from_u64(seed), &g);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn classes_follow_relabeling(seed in any::<u64>(), half in 2usize..=5) {
        let g = mcg(seed, half);
        let (h, _, emap) = common::relabel(&mut ChaCha8Rng::seed_from_u64(seed), &g);
        let mut moved: Vec<Vec<EdgeId>> = equivalence_partition(&g)
            .unwrap()
            .classes()
            .iter()
            .map(|f| {
                let mut c: Vec<EdgeId> = f.iter().map(|e| emap[e]).collect();
                c.sort();
                c
            })
            .collect();
        moved.sort();
        let direct = equivalence_partition(&h).unwrap();
        prop_assert_eq!(moved.as_slice(), direct.classes());
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 1usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.4, 0.2);
        let back = MultiGraph::from_text(&g.to_text()).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_text(), g.to_text());
    }

    #[test]
    fn contraction_keeps_edge_ids(seed in any::<u64>(), half in 2usize..=5) {
        let g = mcg(seed, half);
        let shore = odd_shore(seed, &g);
        let set: BTreeSet<VertexId> = shore.iter().copied().collect();
        let (h, x) = g.contract(&shore).unwrap();
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - shore.len() + 1);
        for e in g.edges() {
            let inside = set.contains(&e.u) && set.contains(&e.v);
            match h.edge(e.id) {
                None => prop_assert!(inside),
                Some(k) => {
                    prop_assert!(!inside);
                    let map = |v: VertexId| if set.contains(&v) { x } else { v };
                    prop_assert_eq!((k.u, k.v), (map(e.u), map(e.v)));
                }
            }
        }
    }

    #[test]
    fn contraction_preserves_cuts_and_parity(seed in any::<u64>(), half in 2usize..=5) {
        let g = mcg(seed, half);
        let shore = odd_shore(seed, &g);
        let c = Cut::new(&g, &shore).unwrap();
        let far = c.complement(&g);
        for side in [c.shore_side(&g).unwrap(), c.far_side(&g).unwrap()] {
            let h = side.graph;
            prop_assert_eq!(h.vertex_count() % 2, 0);
            let shrunk = if h.has_vertex(far[0]) { &shore } else { &far };
            let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
            for _ in 0..8 {
                let y: Vec<VertexId> = h.vertices().iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                if y.is_empty() || y.len() == h.vertex_count() {
                    continue;
                }
                let in_g: Vec<VertexId> = y
                    .iter()
                    .flat_map(|&v| if v == side.vertex { shrunk.clone() } else { vec![v] })
                    .collect();
                let mut dh = h.boundary(&y);
                let mut dg = g.boundary(&in_g);
                dh.sort();
                dg.sort();
                prop_assert_eq!(&dh, &dg);
                prop_assert_eq!(y.len() % 2, in_g.len() % 2);
            }
        }
    }

    #[test]
    fn maximum_matching_is_optimal(seed in any::<u64>(), n in 1usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let density = rng.gen_range(0.05..0.7);
        let g = random_graph(&mut rng, n, density, 0.1);
        let m = maximum_matching(&g);
        let mut seen = BTreeSet::new();
        for &e in m.edges() {
            let k = g.edge(e).unwrap();
            prop_assert!(seen.insert(k.u) && seen.insert(k.v));
        }
        prop_assert_eq!(m.len(), common::max_matching_size(&g));
    }
}
