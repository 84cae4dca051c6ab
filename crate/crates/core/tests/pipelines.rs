use coarse_core::asdim::{cover_to_factorization, factorization_to_cover, interval_cover, multiplicity};
use coarse_core::homology::connectivity_profile;
use coarse_core::metric::{distortion_profile, ls_distance};
use coarse_core::property_a::{
    l1_distance, parse_rational, realization_map_to_xi, uniform_ball_xi, verify_xi, xi_to_realization_map,
};
use coarse_core::tower::{self, verify_coarse_complex};
use coarse_core::{Cover, ExtDist, FiniteMetricSpace, PointMap};
use num::{BigInt, BigRational};

fn t(v: f64) -> ExtDist {
    ExtDist::finite(v)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn uniform_balls_match_closed_form_away_from_the_ends() {
    let s = 6i64;
    let m = FiniteMetricSpace::integer_interval(0, 60);
    let xi = uniform_ball_xi(&m, t(s as f64));
    for x in s..=60 - s {
        for y in x..=60 - s {
            let d = y - x;
            let expected = q(2 * d.min(2 * s + 1), 2 * s + 1);
            assert_eq!(l1_distance(xi.xi(x as usize), xi.xi(y as usize)), expected, "{x} {y}");
        }
    }
}

#[test]
fn boundary_balls_are_truncated() {
    let m = FiniteMetricSpace::integer_interval(-50, 50);
    let xi = uniform_ball_xi(&m, t(20.0));
    let r = verify_xi(&xi, t(2.0), &parse_rational("0.1").unwrap(), t(20.0));
    assert!(r.supports_ok && r.norms_ok);
    assert!(!r.closeness_ok);
    assert_eq!(r.worst_value.exact, "4/23");
    assert_eq!(r.worst_pair, Some(("-50".to_string(), "-48".to_string())));
}

#[test]
fn certificate_and_complex_map_imply_each_other() {
    let m = FiniteMetricSpace::integer_interval(0, 40);
    let (r, s) = (t(2.0), t(8.0));
    let xi = uniform_ball_xi(&m, s);
    let worst = verify_xi(&xi, r, &q(1, 1), s).worst_value.exact;
    let eps = parse_rational(&worst).unwrap();
    assert!(verify_xi(&xi, r, &eps, s).pass);
    let map = xi_to_realization_map(&xi, r, &eps, s, 3).unwrap();
    assert!(map.report.pass, "{:?}", map.report);
    assert_eq!(map.tower.labels(), &["2", "18"]);
    let back = realization_map_to_xi(&m, &map.values, r, &eps, s).unwrap();
    assert!(back.report.pass);
    assert_eq!(back.xi.vectors(), xi.vectors());
    // Supports are balls of radius S, so they span simplices of Rips_{2S}
    // but not of Rips_S.
    assert!(!back.anchored);
    assert!(realization_map_to_xi(&m, &map.values, r, &eps, t(16.0)).unwrap().anchored);
    let tighter = &eps - q(1, 1000);
    assert!(xi_to_realization_map(&xi, r, &tighter, s, 3).is_err());
}

#[test]
fn cech_tower_witnesses_the_next_level() {
    let m = FiniteMetricSpace::integer_interval(0, 20);
    let unit = Cover::new(21, (0..20).map(|j| (format!("u{j}"), vec![j, j + 1])).collect()).unwrap();
    let mid = Cover::new(21, (0..4).map(|j| (format!("v{j}"), (4 * j..=(4 * j + 8).min(20)).collect())).collect())
        .unwrap();
    let top = Cover::whole(&m);
    let tw = tower::cech_tower(&m, &[unit, mid, top], 3).unwrap();
    let report = verify_coarse_complex(&tw);
    assert!(report.passes(), "{report:?}");
    for l in &report.levels[..2] {
        assert_eq!(l.witness, Some(l.level + 1));
    }
    assert!(tw.verify_projections().unwrap().passes());
}

#[test]
fn interval_round_trip_through_a_factorization() {
    let m = FiniteMetricSpace::integer_interval(0, 30);
    let cover = interval_cover(&m, 4.0, t(1.0)).unwrap();
    assert_eq!(multiplicity(&m, &cover).unwrap(), 2);
    let w = cover_to_factorization(&m, &cover, t(1.0), 3).unwrap();
    assert!(w.verified());
    let back = factorization_to_cover(&m, t(1.0), &w).unwrap();
    assert!(back.multiplicity as isize <= w.mid_dim + 1);
    assert!(back.mesh.is_finite());
}

#[test]
fn circle_loop_dies_at_the_cone_scale() {
    let m = FiniteMetricSpace::circle(12);
    let tw = tower::rips_tower(&m, &[t(0.6), t(1.2), t(2.1)], 3).unwrap();
    let p = connectivity_profile(&tw, 1, 3).unwrap();
    assert_eq!(p.rank(0, 0, 1), 1);
    assert_eq!(p.rank(0, 1, 1), 1);
    assert_eq!(p.rank(0, 2, 1), 0);
    assert_eq!(p.levels[0].witness, Some(2));
}

#[test]
fn bornologous_maps_respect_closeness() {
    let m = FiniteMetricSpace::integer_interval(0, 25);
    let f = PointMap::from_fn(&m, &m, |x| x / 2).unwrap();
    let ts: Vec<ExtDist> = (0..6).map(|i| t(f64::from(i))).collect();
    assert!(distortion_profile(&f, &ts).unwrap().is_finite());
    let g = PointMap::from_fn(&m, &m, |x| (x + 3).min(25)).unwrap();
    let h = PointMap::from_fn(&m, &m, |x| x.saturating_sub(2)).unwrap();
    assert!(ls_distance(&g, &h).unwrap().is_finite());
    let fg = g.then(&f).unwrap();
    let fh = h.then(&f).unwrap();
    assert!(ls_distance(&fg, &fh).unwrap() <= t(3.0));
}
