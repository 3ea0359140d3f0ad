use hm_core::duality::{check_properties, eps_partial_dual_formula, partial_dual};
use hm_core::generators::{random_hypertree, tree_closed_form};
use hm_core::walsh::{walsh_build, BEdge, BVertex, BipartiteMapSpec, EdgeEnd, End, Side};
use hm_core::{
    euler_genus_polynomial, hmf, join, CornerRef, EdgeSubset, Engine, EngineConfig, Hypermap,
    Permutation,
};
use proptest::prelude::*;
use proptest::sample::Index;

/// A random bipartite map: `darts` edges, each from one of `k` V-side
/// vertices to one of `m` E-side vertices, shuffled rotations, random twists.
fn bipartite(max_edges: usize) -> impl Strategy<Value = Hypermap> {
    (1..=max_edges, 1usize..=4)
        .prop_flat_map(|(m, k)| {
            let darts = m.max(k)..=m.max(k) + 4;
            (Just(m), Just(k), darts)
        })
        .prop_flat_map(|(m, k, d)| {
            (
                Just(m),
                Just(k),
                prop::collection::vec((any::<Index>(), any::<Index>(), any::<bool>()), d),
                Just((0..d).collect::<Vec<_>>()).prop_shuffle(),
                Just((0..d).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(m, k, ends, order_v, order_e)| {
            let d = ends.len();
            let v_of = |i: usize| if i < k { i } else { ends[i].0.index(k) };
            let e_of = |i: usize| if i < m { i } else { ends[i].1.index(m) };
            let mut vs: Vec<BVertex> = (0..k)
                .map(|j| BVertex {
                    side: Side::V,
                    name: format!("v{}", j + 1),
                    rotation: vec![],
                })
                .collect();
            let mut es: Vec<BVertex> = (0..m)
                .map(|j| BVertex {
                    side: Side::E,
                    name: format!("e{}", j + 1),
                    rotation: vec![],
                })
                .collect();
            for &i in &order_v {
                vs[v_of(i)].rotation.push(EdgeEnd {
                    edge: format!("b{}", i + 1),
                    end: End::U,
                });
            }
            for &i in &order_e {
                es[e_of(i)].rotation.push(EdgeEnd {
                    edge: format!("b{}", i + 1),
                    end: End::V,
                });
            }
            let edges = (0..d)
                .map(|i| BEdge {
                    name: format!("b{}", i + 1),
                    twisted: ends[i].2,
                })
                .collect();
            vs.extend(es);
            let spec = BipartiteMapSpec {
                vertices: vs,
                edges,
            };
            walsh_build(&spec).expect("random spec is valid").1
        })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn subset_of(h: &Hypermap, mask: u64) -> EdgeSubset {
    let e = h.edge_count();
    EdgeSubset::new(mask & ((1 << e) - 1), e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_in_either_order_have_equal_orbit_counts(
        (a, b) in (1usize..40).prop_flat_map(|n| (permutation(n), permutation(n)))
    ) {
        let ab = a.then(&b).unwrap();
        let ba = b.then(&a).unwrap();
        prop_assert_eq!(ab.orbit_count(), ba.orbit_count());
        prop_assert!(a.then(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn partial_duality_identities(h in bipartite(5), ma in any::<u64>(), mb in any::<u64>()) {
        let a = subset_of(&h, ma);
        let b = subset_of(&h, mb);
        let checks = check_properties(&h, &a, Some(&b)).unwrap();
        for c in checks {
            prop_assert!(c.passed(), "{} {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn engines_agree_on_small_maps(h in bipartite(6)) {
        prop_assume!(h.is_connected());
        let p = euler_genus_polynomial(&h, &EngineConfig::with_engine(Engine::Both)).unwrap();
        prop_assert_eq!(p.eval_at_one().unwrap(), 1u64 << h.edge_count());
        let threaded = euler_genus_polynomial(&h, &EngineConfig::default().workers(3)).unwrap();
        prop_assert_eq!(p, threaded);
    }

    #[test]
    fn partial_dual_genus_matches_formula(h in bipartite(5), m in any::<u64>()) {
        prop_assume!(h.is_connected());
        let a = subset_of(&h, m);
        let d = partial_dual(&h, &a).unwrap();
        prop_assert_eq!(d.euler_genus(), eps_partial_dual_formula(&h, &a).unwrap());
        prop_assert_eq!(d.component_count(), h.component_count());
        prop_assert_eq!(d.is_orientable(), h.is_orientable());
    }

    #[test]
    fn relabeling_preserves_isomorphism_class(h in bipartite(4), shift in 1u64..1000, stride in 1u64..4) {
        let r = h.relabeled(|x| x * stride + shift).unwrap();
        prop_assert!(h.is_isomorphic(&r));
        prop_assert_eq!(h.counts(), r.counts());
        let text = hmf::write(&r);
        let back = hmf::parse(&text).unwrap();
        prop_assert!(back.same_flags(&r));
    }

    #[test]
    fn joining_a_tree_scales_by_its_mass(h in bipartite(4), e in 1usize..=3, seed in any::<u64>(), at in any::<Index>()) {
        prop_assume!(h.is_connected());
        let t = random_hypertree(e, seed).unwrap();
        let x = h.labels().external(at.index(h.n_labels()) as u32);
        let j = join(&h, &CornerRef::at(x), &t, &CornerRef::at(1)).unwrap();
        let cfg = EngineConfig::default();
        let want = euler_genus_polynomial(&h, &cfg).unwrap().mul(&tree_closed_form(e).unwrap()).unwrap();
        prop_assert_eq!(euler_genus_polynomial(&j, &cfg).unwrap(), want);
    }
}
