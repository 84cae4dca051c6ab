use coarse_core::asdim::multiplicity;
use coarse_core::complex::{self, flag_complex, is_simplicial, SimplicialMap};
use coarse_core::graph::{augment, graph_metric, is_short, rips_graph_t};
use coarse_core::homology::{betti, chain_complex, induced_map, is_t_chain_connected};
use coarse_core::metric::{self, distortion_profile, lebesgue_ball, lebesgue_exact, ls_distance, Norm};
use coarse_core::property_a::{l1_distance, truncate_xi, uniform_ball_xi, SparseProbVector};
use coarse_core::tower::{self, verify_coarse_complex};
use coarse_core::{Cover, ExtDist, FiniteMetricSpace, Graph, PointMap, SimplicialComplex};
use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[i] {
                        edges.push((a, b));
                    }
                    i += 1;
                }
            }
            Graph::numbered(n, edges).unwrap()
        })
    })
}

fn connected_graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(max_n).prop_map(|g| {
        // Chain the components together so the metric is finite.
        let comps = g.components();
        let mut edges = g.edges().to_vec();
        for w in comps.windows(2) {
            edges.push((w[0][0], w[1][0]));
        }
        Graph::numbered(g.len(), edges).unwrap()
    })
}

fn points_strategy(max_n: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    proptest::collection::btree_set((0i32..12, 0i32..12), 2..=max_n).prop_map(|pts| {
        let ids = (0..pts.len()).map(|i| format!("p{i}")).collect();
        let coords = pts.into_iter().map(|(x, y)| vec![f64::from(x), f64::from(y)]).collect();
        FiniteMetricSpace::from_points(ids, coords, Norm::Manhattan).unwrap()
    })
}

fn t(v: f64) -> ExtDist {
    ExtDist::finite(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ball_lebesgue_below_exact(m in points_strategy(12), r in 0u32..6) {
        let cover = Cover::closed_balls(&m, t(f64::from(r)));
        let ball = lebesgue_ball(&m, &cover).unwrap();
        let exact = lebesgue_exact(&m, &cover, None).unwrap().value().unwrap();
        prop_assert!(ball <= exact);
    }

    #[test]
    fn distortion_of_composition(m in points_strategy(10), seed in any::<u64>()) {
        let n = m.len();
        let f = PointMap::from_fn(&m, &m, |x| (x * 7 + seed as usize) % n).unwrap();
        let g = PointMap::from_fn(&m, &m, |x| (x * 3 + 1) % n).unwrap();
        let gf = f.then(&g).unwrap();
        let ts: Vec<ExtDist> = (0..8).map(|i| t(f64::from(i))).collect();
        let pf = distortion_profile(&f, &ts).unwrap();
        let pgf = distortion_profile(&gf, &ts).unwrap();
        for i in 0..ts.len() {
            let sf = pf.samples[i].1;
            let bound = distortion_profile(&g, &[sf]).unwrap().samples[0].1;
            prop_assert!(pgf.samples[i].1 <= bound);
        }
    }

    #[test]
    fn ls_distance_is_a_pseudometric(m in points_strategy(10), a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let n = m.len();
        let f = PointMap::from_fn(&m, &m, |x| (x + a as usize) % n).unwrap();
        let g = PointMap::from_fn(&m, &m, |x| (x * 2 + b as usize) % n).unwrap();
        let h = PointMap::from_fn(&m, &m, |x| (x * 5 + c as usize) % n).unwrap();
        let fg = ls_distance(&f, &g).unwrap();
        prop_assert_eq!(fg, ls_distance(&g, &f).unwrap());
        prop_assert_eq!(ls_distance(&f, &f).unwrap(), ExtDist::ZERO);
        let fh = ls_distance(&f, &h).unwrap().value();
        let gh = ls_distance(&g, &h).unwrap().value();
        prop_assert!(fg.value() <= fh + gh + 1e-9);
    }

    #[test]
    fn rips_graph_composition_law(g in connected_graph_strategy(12), a in 1u32..4, b in 1u32..4) {
        let m = graph_metric(&g);
        let inner = rips_graph_t(&m, t(f64::from(a))).unwrap();
        let outer = rips_graph_t(&graph_metric(&inner), t(f64::from(b))).unwrap();
        let direct = rips_graph_t(&m, t(f64::from(a * b))).unwrap();
        prop_assert_eq!(outer.edges(), direct.edges());
    }

    #[test]
    fn rips_graph_monotone_and_lipschitz(m in points_strategy(12), a in 1u32..5, extra in 0u32..4) {
        let small = rips_graph_t(&m, t(f64::from(a))).unwrap();
        let big = rips_graph_t(&m, t(f64::from(a + extra))).unwrap();
        prop_assert!(small.edges().iter().all(|&(x, y)| big.has_edge(x, y)));
        let hops = graph_metric(&small);
        for x in 0..m.len() {
            for y in 0..m.len() {
                let h = hops.d(x, y);
                prop_assert!(h.is_inf() || h.value() * f64::from(a) + 1e-9 >= m.d(x, y).value());
            }
        }
    }

    #[test]
    fn augmentation_is_rips_two(g in graph_strategy(14)) {
        let a = augment(&g);
        let id: Vec<usize> = (0..g.len()).collect();
        prop_assert!(is_short(&id, &g, &a).unwrap().holds());
        prop_assert_eq!(a.vertices(), g.vertices());
        let r = rips_graph_t(&graph_metric(&g), t(2.0)).unwrap();
        prop_assert_eq!(a.edges(), r.edges());
    }

    #[test]
    fn flag_complexes_are_flag(g in graph_strategy(10)) {
        let k = flag_complex(&g, 3).unwrap();
        let n = g.len();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if set.len() > 4 {
                continue;
            }
            let clique = set.iter().all(|&a| set.iter().all(|&b| a == b || g.has_edge(a, b)));
            prop_assert_eq!(k.is_simplex(&set), clique);
        }
    }

    #[test]
    fn augmented_complex_edges(g in graph_strategy(12)) {
        let k = flag_complex(&g, 3).unwrap();
        let a = complex::augment_complex(&k);
        for f in k.facets() {
            prop_assert!(a.is_simplex(f));
        }
        let hops = graph_metric(&g);
        for x in 0..g.len() {
            for y in x + 1..g.len() {
                prop_assert_eq!(a.has_edge(x, y), hops.d(x, y) <= t(2.0));
            }
        }
    }

    #[test]
    fn contiguity_reflexive_and_symmetric(g in graph_strategy(9), shift in 0usize..9) {
        let k = flag_complex(&g, 3).unwrap();
        let cone = SimplicialComplex::simplex(g.len(), 3);
        let f = SimplicialMap::new(&k, &cone, (0..g.len()).collect()).unwrap();
        let h = SimplicialMap::new(&k, &cone, (0..g.len()).map(|v| (v + shift) % g.len()).collect()).unwrap();
        prop_assert!(complex::are_contiguous(&f, &f).unwrap().holds());
        prop_assert_eq!(
            complex::are_contiguous(&f, &h).unwrap().holds(),
            complex::are_contiguous(&h, &f).unwrap().holds()
        );
        let kk = SimplicialMap::identity(&k);
        let self_shift = SimplicialMap::new(&k, &k, (0..g.len()).map(|v| (v + shift) % g.len()).collect()).unwrap();
        prop_assert_eq!(
            complex::are_contiguous(&kk, &self_shift).unwrap().holds(),
            complex::are_contiguous(&self_shift, &kk).unwrap().holds()
        );
    }

    #[test]
    fn nerve_dimension_from_multiplicity(m in points_strategy(10), r in 0u32..4) {
        let cover = Cover::closed_balls(&m, t(f64::from(r)));
        let nerve = complex::nerve(&m, &cover, 64).unwrap();
        prop_assert_eq!(nerve.dim(), multiplicity(&m, &cover).unwrap() as isize - 1);
    }

    #[test]
    fn simplicial_maps_compose(m in points_strategy(10), a in 1u32..3) {
        let k0 = complex::rips_complex(&m, t(f64::from(a)), 3).unwrap();
        let k1 = complex::rips_complex(&m, t(f64::from(2 * a)), 3).unwrap();
        let k2 = complex::rips_complex(&m, t(f64::from(4 * a)), 3).unwrap();
        let f = SimplicialMap::inclusion(&k0, &k1).unwrap();
        let g = SimplicialMap::inclusion(&k1, &k2).unwrap();
        prop_assert!(is_simplicial(&f).holds() && is_simplicial(&g).holds());
        prop_assert!(is_simplicial(&f.then(&g).unwrap()).holds());
    }

    #[test]
    fn rips_towers_are_coarse(m in points_strategy(10), a in 1u32..3) {
        let scales: Vec<ExtDist> = (0..3).map(|i| t(f64::from(a << i))).collect();
        let tw = tower::rips_tower(&m, &scales, 3).unwrap();
        let report = verify_coarse_complex(&tw);
        prop_assert!(report.passes());
        prop_assert!(tw.composition_holds());
        for l in &report.levels[..2] {
            prop_assert_eq!(l.witness, Some(l.level + 1));
        }
    }

    #[test]
    fn boundary_squares_to_zero(g in graph_strategy(9), prime in prop::sample::select(vec![2u32, 3, 5])) {
        let k = flag_complex(&g, 3).unwrap();
        prop_assert!(chain_complex(&k, 2, prime).unwrap().boundary_squared_vanishes());
    }

    #[test]
    fn euler_characteristic(g in graph_strategy(9)) {
        let k = flag_complex(&g, 4).unwrap();
        prop_assume!(k.dim() <= 3);
        let b = betti(&k, 3, 2).unwrap();
        let f = k.f_vector(3);
        let chi_f: i64 = f.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        let chi_b: i64 = b.unreduced.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        prop_assert_eq!(chi_f, chi_b);
    }

    #[test]
    fn induced_rank_of_composition(m in points_strategy(9), a in 1u32..3) {
        let k0 = complex::rips_complex(&m, t(f64::from(a)), 3).unwrap();
        let k1 = complex::rips_complex(&m, t(f64::from(a + 1)), 3).unwrap();
        let k2 = complex::rips_complex(&m, t(f64::from(a + 3)), 3).unwrap();
        let f = SimplicialMap::inclusion(&k0, &k1).unwrap();
        let g = SimplicialMap::inclusion(&k1, &k2).unwrap();
        let rf = induced_map(&f, 1, 2).unwrap().ranks;
        let rg = induced_map(&g, 1, 2).unwrap().ranks;
        let rgf = induced_map(&f.then(&g).unwrap(), 1, 2).unwrap().ranks;
        for p in 0..2 {
            prop_assert!(rgf[p] <= rf[p].min(rg[p]));
        }
    }

    #[test]
    fn chain_connectivity_matches_b0(m in points_strategy(12), a in 1u32..5) {
        let r = t(f64::from(a));
        let k = complex::rips_complex(&m, r, 1).unwrap();
        prop_assert_eq!(is_t_chain_connected(&m, r), betti(&k, 0, 2).unwrap().unreduced[0] == 1);
    }

    #[test]
    fn truncation_moves_less_than_eps(n in 3i64..40, s in 1u32..15, num in 1i64..9) {
        let m = FiniteMetricSpace::integer_interval(0, n);
        let xi = uniform_ball_xi(&m, t(f64::from(s)));
        let eps = BigRational::new(BigInt::from(num), BigInt::from(10));
        let tr = truncate_xi(&xi, &eps);
        for x in 0..m.len() {
            prop_assert!(l1_distance(tr.xi(x), xi.xi(x)) < eps);
            prop_assert!(tr.xi(x).total() == BigRational::from_integer(1.into()));
        }
    }

    #[test]
    fn barycentric_images_stay_within_vertex_bound(
        s in 1u32..6,
        w in proptest::collection::vec(1u32..20, 3),
    ) {
        let m = FiniteMetricSpace::integer_interval(0, 30);
        let xi = uniform_ball_xi(&m, t(f64::from(s)));
        let simplex = [10usize, 11, 12];
        let vertex_bound = simplex
            .iter()
            .flat_map(|&a| simplex.iter().map(move |&b| (a, b)))
            .map(|(a, b)| l1_distance(xi.xi(a), xi.xi(b)))
            .max()
            .unwrap();
        let total: u32 = w.iter().sum();
        let mix = |coeffs: &[u32]| {
            let mut acc: std::collections::BTreeMap<usize, BigRational> = Default::default();
            for (&v, &c) in simplex.iter().zip(coeffs) {
                let lambda = BigRational::new(BigInt::from(c), BigInt::from(total));
                for (&i, wt) in xi.xi(v).weights() {
                    *acc.entry(i).or_insert_with(BigRational::zero) += &lambda * wt;
                }
            }
            SparseProbVector::new(acc).unwrap()
        };
        let p = mix(&w);
        for (vi, &v) in simplex.iter().enumerate() {
            let mut c = vec![0; 3];
            c[vi] = total;
            prop_assert!(l1_distance(&p, &mix(&c)) <= vertex_bound);
            prop_assert_eq!(l1_distance(&mix(&c), xi.xi(v)), BigRational::zero());
        }
    }
}

#[test]
fn lebesgue_on_half_overlapping_intervals() {
    let m = FiniteMetricSpace::integer_interval(0, 20);
    let cover = coarse_core::asdim::interval_cover(&m, 4.0, t(2.0)).unwrap();
    assert!(lebesgue_ball(&m, &cover).unwrap() <= lebesgue_exact(&m, &cover, None).unwrap().value().unwrap());
    assert_eq!(metric::mesh(&m, &cover).unwrap(), t(7.0));
}
