//! Property tests for the grid and geometry invariants the algorithms
//! lean on.

use approx_incidences::geom::{self, p2, slope_split, Line2, Point2, Rot2};
use approx_incidences::grid::{cells_crossed_by_line_2d, UniformGrid};
use proptest::prelude::*;

fn small_f64(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi).prop_filter("finite", |x: &f64| x.is_finite())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn locate_of_cell_center_is_identity(
        cell in small_f64(0.01, 0.4),
        extent in small_f64(0.5, 2.0),
        ix in 0i64..20,
        iy in 0i64..20,
    ) {
        let g = UniformGrid::<2>::new([-extent, -extent], [extent, extent], [cell, cell]);
        let key = [ix % g.counts[0], iy % g.counts[1]];
        let c = g.cell_center(key);
        prop_assert_eq!(g.locate(c), Some(key));
    }

    #[test]
    fn line_cells_cover_every_sampled_point(
        x0 in small_f64(-1.0, 1.0),
        y0 in small_f64(-1.0, 1.0),
        x1 in small_f64(-1.0, 1.0),
        y1 in small_f64(-1.0, 1.0),
        cell in small_f64(0.05, 0.3),
        t in -3.0f64..3.0,
    ) {
        prop_assume!((p2(x0, y0) - p2(x1, y1)).norm() > 1e-6);
        let l = Line2::through(p2(x0, y0), p2(x1, y1));
        let g = UniformGrid::<2>::new([-1.0, -1.0], [1.0, 1.0], [cell, cell]);
        let cells = cells_crossed_by_line_2d(&l, &g);
        let (a, b) = l.two_points();
        let p = a + (b - a) * t;
        if let Some(key) = g.locate([p.x, p.y]) {
            prop_assert!(cells.contains(&key));
        }
        if let Line2::Slant { a, .. } = l {
            if a.abs() <= 1.0 {
                prop_assert!(cells.len() as i64 <= 2 * g.counts[0] + 2);
            }
        }
    }

    #[test]
    fn touch_range_contains_the_home_cell(
        lo in small_f64(-2.0, 2.0),
        width in small_f64(0.0, 1.0),
        cell in small_f64(0.01, 0.5),
        t in 0.0f64..1.0,
    ) {
        let g = UniformGrid::<2>::new([-3.0, -3.0], [3.0, 3.0], [cell, cell]);
        let v = lo + t * width;
        let (rl, rh) = g.touch_range(0, lo, lo + width);
        let home = ((v - g.origin[0]) / cell).floor() as i64;
        prop_assert!(rl <= home && home <= rh);
    }

    #[test]
    fn slope_classes_always_land_legal(
        a in small_f64(-50.0, 50.0),
        b in small_f64(-2.0, 2.0),
    ) {
        let lines = [Line2::Slant { a, b }];
        for class in slope_split(&lines) {
            for (_, l) in class.lines {
                match l {
                    Line2::Slant { a, .. } => prop_assert!(a.abs() <= 1.0 + 1e-9),
                    Line2::Vertical { .. } => prop_assert!(false, "vertical after rotation"),
                }
            }
        }
    }

    #[test]
    fn rotations_preserve_line_distance(
        px in small_f64(-1.0, 1.0),
        py in small_f64(-1.0, 1.0),
        a in small_f64(-5.0, 5.0),
        b in small_f64(-1.0, 1.0),
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let p = Point2 { x: px, y: py };
        let l = Line2::Slant { a, b };
        let rot = Rot2::from_angle(theta);
        let before = geom::dist_point_line_2d(p, &l);
        let after = geom::dist_point_line_2d(rot.apply(p), &rot.apply_line(&l));
        prop_assert!((before - after).abs() < 1e-9);
    }

    #[test]
    fn filtered_pairs_are_sorted_unique_and_within_eps(
        seed in 0u64..500,
        eps in 0.002f64..0.02,
    ) {
        let mut rng = approx_incidences::gen::rng(seed);
        let pts = approx_incidences::gen::points_2d(60, &mut rng);
        let lines = approx_incidences::gen::lines_2d(40, &mut rng);
        let rep = approx_incidences::planar::point_line::report(
            &pts,
            &lines,
            eps,
            approx_incidences::pairs::Mode::Filtered,
        )
        .unwrap();
        let keys: Vec<(u32, u32)> = rep.pairs.iter().map(|p| (p.point, p.object)).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(keys, sorted);
        for p in &rep.pairs {
            prop_assert!(p.distance <= eps);
        }
    }
}
