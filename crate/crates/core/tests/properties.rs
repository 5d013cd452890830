use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uniconn::canon::{canonical_form, canonical_text};
use uniconn::connectivity::is_uniformly_k_connected;
use uniconn::constructions::{bridge, random_recipe, replay};
use uniconn::generators::line_graph;
use uniconn::graph6::{decode, encode};
use uniconn::planar::{crossing_le_one, is_planar};
use uniconn::report::{analyze, AnalysisReport, AnalyzeOptions};
use uniconn::treewidth::{clique_sum, treewidth, treewidth_exact, validate, width};
use uniconn::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|b| (0..b).map(move |a| (a, b)));
            Graph::new(n, pairs.zip(bits).filter(|(_, x)| *x).map(|(e, _)| e)).unwrap()
        })
    })
}

fn with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in graph(20)) {
        let text = encode(&g).unwrap();
        prop_assert_eq!(decode(text.as_str()).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in with_perm(9)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_text(&g).unwrap(), canonical_text(&h).unwrap());
        // And the canonical graph really is a relabeling of g.
        let c = canonical_form(&g).unwrap();
        prop_assert_eq!(c.graph().degree_sequence(), g.degree_sequence());
    }

    #[test]
    fn line_graph_degree_law(g in graph(10)) {
        let lg = line_graph(&g).unwrap();
        prop_assert_eq!(lg.graph.n(), g.m());
        let pairs: usize = g.degrees().iter().map(|d| d * d.saturating_sub(1) / 2).sum();
        prop_assert_eq!(lg.graph.m(), pairs);
        for e in g.edges() {
            let x = lg.vertex_of(*e).unwrap();
            prop_assert_eq!(lg.graph.degree(x), g.degree(e.u()) + g.degree(e.v()) - 2);
        }
    }

    #[test]
    fn contraction_counts(g in graph(10), pick in any::<usize>()) {
        prop_assume!(g.m() > 0);
        let e = g.edges()[pick % g.m()];
        let (h, map) = g.contract_edge(e.u(), e.v()).unwrap();
        let common = (g.neighbor_mask(e.u()) & g.neighbor_mask(e.v())).count_ones() as usize;
        prop_assert_eq!(h.n(), g.n() - 1);
        prop_assert_eq!(h.m(), g.m() - 1 - common);
        prop_assert_eq!(map.get(e.u()), map.get(e.v()));
        for f in g.edges() {
            let (a, b) = (map.get(f.u()).unwrap(), map.get(f.v()).unwrap());
            prop_assert!(a == b || h.has_edge(a, b));
        }
    }

    #[test]
    fn optimal_decomposition_is_valid_and_holds_cliques(g in graph(11)) {
        let r = treewidth_exact(&g).unwrap();
        prop_assert_eq!(validate(&g, &r.decomposition), Ok(()));
        prop_assert_eq!(width(&r.decomposition).unwrap(), r.width);
        // Every triangle sits in one bag.
        for a in g.vertices() {
            for b in g.neighbors(a).filter(|&b| b > a) {
                for c in g.neighbors(b).filter(|&c| c > b && g.has_edge(a, c)) {
                    let m = 1u64 << a | 1 << b | 1 << c;
                    prop_assert!(r.decomposition.nodes_containing(m).next().is_some());
                }
            }
        }
    }

    #[test]
    fn deleting_never_raises_width(g in graph(10), pick in any::<usize>()) {
        let tw = treewidth(&g).unwrap();
        let v = pick % g.n();
        prop_assert!(treewidth(&g.delete_vertex(v).unwrap().0).unwrap() <= tw);
        if g.m() > 0 {
            let e = g.edges()[pick % g.m()];
            prop_assert!(treewidth(&g.delete_edge(e.u(), e.v()).unwrap()).unwrap() <= tw);
        }
    }

    #[test]
    fn clique_sum_width_is_max(g1 in graph(8), g2 in graph(8), k in 1usize..=3) {
        // Plant a k-clique on the first k vertices of each side.
        let plant = |g: &Graph| {
            let mut h = g.clone();
            for a in 0..k.min(g.n()) {
                for b in a + 1..k.min(g.n()) {
                    if !h.has_edge(a, b) {
                        h = h.add_edge(a, b).unwrap();
                    }
                }
            }
            h
        };
        let k = k.min(g1.n()).min(g2.n());
        let (h1, h2) = (plant(&g1), plant(&g2));
        let c: Vec<usize> = (0..k).collect();
        let sum = clique_sum(&h1, &c, &h2, &c).unwrap();
        prop_assert_eq!(sum.graph.n(), h1.n() + h2.n() - k);
        prop_assert_eq!(
            treewidth(&sum.graph).unwrap(),
            treewidth(&h1).unwrap().max(treewidth(&h2).unwrap())
        );
    }

    #[test]
    fn planar_graphs_respect_euler(g in graph(12)) {
        if g.n() >= 3 && is_planar(&g) {
            prop_assert!(g.m() <= 3 * g.n() - 6);
        }
        let c = crossing_le_one(&g).unwrap();
        prop_assert!(c.verify(&g).unwrap());
    }

    #[test]
    fn report_json_round_trip(g in graph(9)) {
        let r = analyze(&g, &AnalyzeOptions::default()).unwrap();
        let text = r.to_json_line();
        let back = AnalysisReport::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json_line(), text);
        prop_assert_eq!(back, r);
    }

    #[test]
    fn random_recipes_are_uniform(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rep, recipe) = random_recipe(&mut rng, 12).unwrap();
        prop_assert!(is_uniformly_k_connected(&rep.graph, 3));
        prop_assert_eq!(rep.graph.n(), recipe.counts.vertex_count_from_k4());
        // Text round trip rebuilds the same graph.
        let again = replay(&uniconn::constructions::Recipe::from_text(&recipe.to_text()).unwrap()).unwrap();
        prop_assert_eq!(again.graph, rep.graph);
    }

    #[test]
    fn bridge_keeps_uniformity(s1 in any::<u64>(), s2 in any::<u64>(), pick in any::<usize>()) {
        let a = random_recipe(&mut ChaCha8Rng::seed_from_u64(s1), 8).unwrap().0.graph;
        let b = random_recipe(&mut ChaCha8Rng::seed_from_u64(s2), 8).unwrap().0.graph;
        let da: Vec<usize> = a.vertices().filter(|&v| a.degree(v) == 3).collect();
        let db: Vec<usize> = b.vertices().filter(|&v| b.degree(v) == 3).collect();
        let m = uniconn::constructions::Matching::all()[pick % 6];
        let g = bridge(&a, da[pick % da.len()], &b, db[(pick / 7) % db.len()], m).unwrap();
        prop_assert_eq!(g.n(), a.n() + b.n() - 2);
        prop_assert!(is_uniformly_k_connected(&g, 3));
    }
}
