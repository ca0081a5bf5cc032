use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rpl_core::experiments::ks_statistic;
use rpl_core::geometry::{
    apply_affine, cap_area_at_point, cap_by_area, cap_by_point, cap_intersection_area, clip_area, make_body,
    AffineMap, BodySpec, ConvexBody, HalfPlane, Point,
};
use rpl_core::measure::{dependence_bound, gamma_sequence, mu_interval, MeasureProfile};
use rpl_core::process::{sample_poisson, SeedRecord, Triangulation};
use std::f64::consts::{PI, TAU};

fn body_strategy() -> impl Strategy<Value = ConvexBody> {
    prop_oneof![
        (1.0f64..200.0).prop_map(|s| format!("square:side={s}")),
        (10.0f64..5000.0, 1.0f64..5.0, 0.0f64..PI).prop_map(|(a, r, t)| format!("ellipse:area={a},ratio={r},angle={t},k=64")),
        (3usize..40, 0u32..1000, 5.0f64..5000.0).prop_map(|(k, s, a)| format!("random:k={k},seed={s},area={a}")),
        (10.0f64..3000.0, 0.2f64..4.0, -2.0f64..2.0).prop_map(|(a, b, k)| format!("triangle:area={a},a=1,b={b},skew={k}")),
    ]
    .prop_map(|s| make_body(&s.parse::<BodySpec>().unwrap()).unwrap())
}

fn uniform_in(body: &ConvexBody, rng: &mut ChaCha8Rng) -> Point {
    Triangulation::fan(body).sample(rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_vertex_minimises_projection(body in body_strategy(), theta in 0.0f64..TAU) {
        let n = Point::new(-theta.sin(), theta.cos());
        let best = body.vertices().iter().map(|v| v.dot(n)).fold(f64::INFINITY, f64::min);
        let w = body.support_vertex(theta);
        prop_assert!(w.dot(n) <= best + 1e-9 * body.diameter());
    }

    #[test]
    fn cap_area_round_trip(body in body_strategy(), theta in 0.0f64..TAU, frac in 1e-4f64..0.999) {
        let r = frac * body.area();
        let cap = cap_by_area(&body, r, theta).unwrap();
        prop_assert!((cap.area - r).abs() <= 1e-9 * r.max(1.0));
        let again = cap_by_point(&body, cap.midpoint(), theta).unwrap();
        prop_assert!((again.area - r).abs() <= 1e-8 * body.area());
        prop_assert!((cap_area_at_point(&body, cap.chord[0], theta) - r).abs() <= 1e-8 * body.area());
    }

    #[test]
    fn clip_area_is_monotone(body in body_strategy(), theta in 0.0f64..TAU, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = body.offset_range(theta);
        let (c1, c2) = (lo + a.min(b) * (hi - lo), lo + a.max(b) * (hi - lo));
        let s1 = clip_area(&body, &HalfPlane::new(theta, c1));
        let s2 = clip_area(&body, &HalfPlane::new(theta, c2));
        prop_assert!(s1 <= s2 + 1e-9 * body.area());
        prop_assert!(s2 <= body.area() * (1.0 + 1e-12));
    }

}

proptest! {
    // each case integrates the measure twice; keep the count low
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mu_is_affine_invariant(body in body_strategy(), s in 0.5f64..2.0, sh in -1.0f64..1.0, phi in 0.0f64..TAU, a in 0.0f64..TAU, len in 0.1f64..6.0) {
        prop_assume!(body.area() >= 4.0);
        let g = AffineMap::rotation(phi)
            .compose(&AffineMap::new([[s, sh], [0.0, 1.0 / s]], Point::new(3.0, -7.0)).unwrap());
        let gk = apply_affine(&body, &g).unwrap();
        let before = mu_interval(&body, a, a + len).unwrap();
        let (ga, mut gb) = (g.map_angle(a), g.map_angle(a + len));
        while gb <= ga { gb += TAU; }
        let after = mu_interval(&gk, ga, gb).unwrap();
        prop_assert!((after - before).abs() <= 1e-6 * before);
    }
}

#[test]
fn clip_area_matches_monte_carlo() {
    let body = make_body(&"random:k=9,seed=3,area=50".parse().unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let h = HalfPlane::through(body.centroid() + Point::new(0.7, -0.2), 1.1);
    let m = 200_000;
    let hits = (0..m).filter(|_| h.contains(uniform_in(&body, &mut rng))).count();
    let p = hits as f64 / m as f64;
    let se = (p * (1.0 - p) / m as f64).sqrt();
    assert!((clip_area(&body, &h) / body.area() - p).abs() < 4.0 * se);
}

#[test]
fn cap_intersection_matches_monte_carlo() {
    let body = make_body(&"ellipse:area=80,ratio=2,k=128".parse().unwrap()).unwrap();
    let c1 = cap_by_area(&body, 20.0, 0.3).unwrap();
    let c2 = cap_by_area(&body, 25.0, 1.0).unwrap();
    let exact = cap_intersection_area(&body, &c1, &c2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let m = 200_000;
    let hits = (0..m)
        .filter(|_| {
            let p = uniform_in(&body, &mut rng);
            c1.halfplane.contains(p) && c2.halfplane.contains(p)
        })
        .count();
    let p = hits as f64 / m as f64;
    let se = (p * (1.0 - p) / m as f64).sqrt();
    assert!((exact / body.area() - p).abs() < 4.0 * se, "{exact} vs {}", p * body.area());
}

#[test]
fn dependence_integral_matches_monte_carlo() {
    let body = make_body(&"square:side=6".parse().unwrap()).unwrap();
    let (t, s) = (0.2, 1.4);
    let b = dependence_bound(&body, t, s);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = 200_000;
    let ys: Vec<f64> = (0..m)
        .map(|_| {
            let p = uniform_in(&body, &mut rng);
            (-cap_area_at_point(&body, p, t) - cap_area_at_point(&body, p, s)).exp()
        })
        .collect();
    let mean = ys.iter().sum::<f64>() / m as f64;
    let sd = (ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (m - 1) as f64).sqrt();
    let mc = body.area() * mean;
    let tol = 4.0 * body.area() * sd / (m as f64).sqrt() + b.error_estimate;
    assert!((b.value - mc).abs() < tol, "{} vs {mc} ± {tol}", b.value);
}

#[test]
fn disk_cap_matches_circular_segment() {
    let area = 1000.0;
    let disk = make_body(&format!("disk:area={area},k=4096").parse().unwrap()).unwrap();
    let r = (area / PI).sqrt();
    for d in [0.5, 0.8, 0.95] {
        // cap beyond distance d·R from the centre
        let h = d * r;
        let seg = r * r * (h / r).acos() - h * (r * r - h * h).sqrt();
        let c = disk.centroid();
        let got = cap_area_at_point(&disk, Point::new(c.x, c.y - h), 0.0);
        // the inscribed polygon loses O(R²/k²) per unit angle
        assert!((got - seg).abs() < 1e-4 * seg.max(1.0), "d={d}: {got} vs {seg}");
    }
}

#[test]
fn fan_triangles_hit_in_proportion_to_area() {
    let body = make_body(&"random:k=7,seed=11,area=30".parse().unwrap()).unwrap();
    let fan = Triangulation::fan(&body);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let m = 100_000;
    let mut counts = vec![0usize; fan.triangles().len()];
    let tri_area = |t: &[Point; 3]| 0.5 * (t[1] - t[0]).cross(t[2] - t[0]);
    for _ in 0..m {
        let p = fan.sample(&mut rng);
        let i = fan
            .triangles()
            .iter()
            .position(|t| (0..3).all(|k| (t[(k + 1) % 3] - t[k]).cross(p - t[k]) >= -1e-12))
            .unwrap();
        counts[i] += 1;
    }
    let chi2: f64 = fan
        .triangles()
        .iter()
        .zip(&counts)
        .map(|(t, &c)| {
            let e = m as f64 * tri_area(t) / fan.area();
            (c as f64 - e).powi(2) / e
        })
        .sum();
    // 5 degrees of freedom; 99.9% quantile ≈ 20.5
    assert!(chi2 < 20.5, "χ² = {chi2}");
}

#[test]
fn poisson_points_stay_inside() {
    let body = make_body(&"triangle:area=200,a=1,b=2,skew=0.5".parse().unwrap()).unwrap();
    for t in 0..20 {
        let ps = sample_poisson(&body, SeedRecord::new(8, t));
        assert!(ps.points.iter().all(|&p| body.contains_with_slack(p, 1e-9)));
    }
}

#[test]
fn ks_of_exact_normals() {
    // Lilliefors D for M = 1e5 normals: below 0.006 in at least 99% of runs
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let runs = 100;
    let below = (0..runs)
        .filter(|_| {
            let xs: Vec<f64> = (0..100_000).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            ks_statistic(&xs).unwrap().d < 0.006
        })
        .count();
    assert!(below >= 99, "{below} of {runs}");
}

#[test]
fn ks_scales_as_inverse_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut median_d = |m: usize| {
        let mut ds: Vec<f64> = (0..50)
            .map(|_| {
                let xs: Vec<f64> = (0..m).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                ks_statistic(&xs).unwrap().d
            })
            .collect();
        ds.sort_by(f64::total_cmp);
        0.5 * (ds[24] + ds[25])
    };
    let (d1, d2, d4) = (median_d(2000), median_d(4000), median_d(8000));
    // doubling M shrinks D by √2, quadrupling halves it
    assert!((d1 / d2 - 2f64.sqrt()).abs() < 0.35, "{d1} {d2}");
    assert!((d1 / d4 - 2.0).abs() < 0.5, "{d1} {d4}");
}

#[test]
fn gamma_steps_track_measure() {
    // L / μ([α, β]) across bodies and intervals stays in a narrow band
    let mut ratios = Vec::new();
    for spec in ["square:side=60", "disk:area=3000,k=1024", "random:k=15,seed=2,area=2500", "ellipse:area=4000,ratio=4,k=512"] {
        let body = make_body(&spec.parse().unwrap()).unwrap();
        let profile = MeasureProfile::new(&body).unwrap();
        for (a, b) in [(0.0, 1.0), (0.5, 3.0), (2.0, 2.0 + PI)] {
            let g = gamma_sequence(&body, a, b).unwrap();
            let mu = profile.interval(a, b);
            if mu >= 20.0 {
                ratios.push((g.len() - 1) as f64 / mu);
            }
        }
    }
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    assert!(ratios.len() >= 8);
    assert!(lo > 0.0 && hi / lo < 1.5, "band [{lo}, {hi}]");
}
