//! Degenerate and boundary inputs across the reporting algorithms:
//! minimal sizes, duplicated points, domain corners, class-boundary
//! slopes, and the extreme legal tolerances.

use approx_incidences::baseline::{brute_pairs_2d, brute_pairs_3d};
use approx_incidences::geom::{p2, p3, Circle2, Line2, Line3, Object2, Object3, Plane3};
use approx_incidences::pairs::Mode;
use approx_incidences::planar::{circles, congruent as congruent2, point_line as pl2};
use approx_incidences::spatial::{
    congruent as congruent3, point_circle, point_line as pl3, point_plane,
};
use approx_incidences::{gen, Report};

fn filtered_set(rep: &Report) -> Vec<(u32, u32)> {
    rep.pairs.iter().map(|p| (p.point, p.object)).collect()
}

#[test]
fn single_point_single_object_everywhere() {
    let eps = 0.01;
    let p = [p2(0.3, -0.2)];
    let l = [Line2::through(p2(0.3, -0.2), p2(0.9, 0.4))];
    assert_eq!(
        filtered_set(&pl2::report(&p, &l, eps, Mode::Filtered).unwrap()),
        vec![(0, 0)]
    );

    let q = [p2(0.3 - 0.25, -0.2)];
    let rep = congruent2::sector_report(&p, &q, 0.25, eps, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0)]);
    let rep = congruent2::dual_report(&p, &q, 0.25, eps, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0)]);

    let c = [Circle2 {
        center: p2(0.0, 0.0),
        r: 0.3,
    }];
    let on = [p2(0.3, 0.0)];
    let rep = circles::report(&on, &c, eps, 0.2, 0.6, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0)]);

    let p3s = [p3(0.1, 0.2, 0.3)];
    let pl = [Plane3 {
        a: 0.5,
        b: -0.5,
        c: 0.3 - 0.05 + 0.1,
    }];
    let d = approx_incidences::geom::dist_point_plane_3d(p3s[0], &pl[0]);
    let rep = point_plane::report(&p3s, &pl, d + 1e-6, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0)]);

    let l3 = [Line3 {
        a: 0.2,
        b: 0.1,
        c: -0.1,
        d: 0.0,
    }];
    let on3 = [l3[0].point_at(-0.3)];
    let rep = pl3::report(&on3, &l3, eps, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0)]);
}

#[test]
fn duplicate_points_are_all_reported() {
    let eps = 0.01;
    let p = vec![p2(0.2, 0.2); 5];
    let l = [Line2::Slant { a: 0.0, b: 0.2 }];
    let rep = pl2::report(&p, &l, eps, Mode::Filtered).unwrap();
    assert_eq!(rep.count, 5);
    // Coincident centers on the congruent side.
    let q = vec![p2(0.2, -0.1); 4];
    let rep = congruent2::sector_report(&p, &q, 0.3, eps, Mode::Filtered).unwrap();
    assert_eq!(rep.count, 20);
}

#[test]
fn corner_points_and_large_radius() {
    // Pairs pinned at domain corners with the largest legal radius.
    let p = vec![p2(1.0, 1.0), p2(-1.0, -1.0), p2(1.0, -1.0)];
    let q = vec![p2(0.5, 1.0), p2(-0.5, -1.0)];
    let (r, eps) = (0.5, 0.005);
    for rep in [
        congruent2::sector_report(&p, &q, r, eps, Mode::Filtered).unwrap(),
        congruent2::dual_report(&p, &q, r, eps, Mode::Filtered).unwrap(),
    ] {
        assert_eq!(filtered_set(&rep), vec![(0, 0), (1, 1)]);
    }
}

#[test]
fn class_boundary_slopes_are_exact() {
    // Slopes exactly +-1 rotate onto the axis of their class; incidences
    // survive bit-for-bit.
    let p = [p2(0.25, 0.25), p2(-0.25, 0.25)];
    let lines = [
        Line2::Slant { a: 1.0, b: 0.0 },
        Line2::Slant { a: -1.0, b: 0.0 },
    ];
    let eps = 0.004;
    let rep = pl2::report(&p, &lines, eps, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0), (1, 1)]);
    let oracle =
        brute_pairs_2d(&p, &[Object2::Line(lines[0]), Object2::Line(lines[1])], eps).unwrap();
    assert_eq!(filtered_set(&rep), oracle.pairs);
}

#[test]
fn forty_five_degree_lines_in_space() {
    // Direction at the class half-angle boundary (45 degrees to x).
    let l = Line3::from_point_dir(p3(0.0, 0.0, 0.0), p3(1.0, 1.0, 0.0)).unwrap();
    let on = [l.point_at(0.35), p3(0.35, 0.35 + 0.5, 0.0)];
    let rep = pl3::report(&on, &[l], 0.01, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0)]);
}

#[test]
fn extreme_legal_eps_values() {
    let mut rng = gen::rng(600);
    let pts = gen::points_2d(100, &mut rng);
    let lines = gen::lines_2d(100, &mut rng);
    let objs: Vec<Object2> = lines.iter().map(|&l| Object2::Line(l)).collect();
    // The largest legal tolerance and a very small one.
    for eps in [0.5, 1e-6] {
        let rep = pl2::report(&pts, &lines, eps, Mode::Filtered).unwrap();
        let oracle = brute_pairs_2d(&pts, &objs, eps).unwrap();
        assert_eq!(filtered_set(&rep), oracle.pairs, "eps {eps}");
    }
}

#[test]
fn coplanar_and_collinear_3d_inputs() {
    // All points on one plane, all planes parallel: stacked degeneracy.
    let mut rng = gen::rng(601);
    let pts: Vec<_> = (0..200)
        .map(|_| {
            let p = gen::point_2d(&mut rng);
            p3(p.x, p.y, 0.1)
        })
        .collect();
    let planes: Vec<Plane3> = (0..40)
        .map(|i| Plane3 {
            a: 0.0,
            b: 0.0,
            c: 0.09 + 0.001 * i as f64,
        })
        .collect();
    let eps = 0.005;
    let rep = point_plane::report(&pts, &planes, eps, Mode::Filtered).unwrap();
    let objs: Vec<Object3> = planes.iter().map(|&p| Object3::Plane(p)).collect();
    let oracle = brute_pairs_3d(&pts, &objs, eps).unwrap();
    assert_eq!(filtered_set(&rep), oracle.pairs);
}

#[test]
fn clustered_points_heavy_cells() {
    // Everything inside one primal cell: the dual stage carries the load.
    let mut rng = gen::rng(602);
    let pts: Vec<_> = (0..400).map(|_| gen::point_2d(&mut rng) * 0.01).collect();
    let lines: Vec<Line2> = (0..200)
        .map(|_| {
            let a = gen::point_2d(&mut rng) * 0.02;
            let b = a + gen::point_2d(&mut rng);
            Line2::through(a, b)
        })
        .collect();
    let eps = 0.002;
    let rep = pl2::report(&pts, &lines, eps, Mode::Filtered).unwrap();
    let objs: Vec<Object2> = lines.iter().map(|&l| Object2::Line(l)).collect();
    assert_eq!(
        filtered_set(&rep),
        brute_pairs_2d(&pts, &objs, eps).unwrap().pairs
    );
}

#[test]
fn axis_aligned_circles_3d() {
    // Circle axes exactly on class boundaries (pure x / y / z and the
    // diagonal), with points planted on each circle.
    let (r, eps) = (0.3, 0.004);
    let s = 1.0 / 3.0f64.sqrt();
    let circles = vec![
        approx_incidences::geom::Circle3::new(p3(0.1, 0.0, 0.0), r, p3(0.0, 0.0, 1.0)),
        approx_incidences::geom::Circle3::new(p3(0.0, 0.1, 0.0), r, p3(1.0, 0.0, 0.0)),
        approx_incidences::geom::Circle3::new(p3(0.0, 0.0, 0.1), r, p3(0.0, 1.0, 0.0)),
        approx_incidences::geom::Circle3::new(p3(0.0, 0.0, 0.0), r, p3(s, s, s)),
    ];
    let pts: Vec<_> = circles
        .iter()
        .map(|c| {
            let helper = if c.axis.x.abs() < 0.9 {
                p3(1.0, 0.0, 0.0)
            } else {
                p3(0.0, 1.0, 0.0)
            };
            let u = c.axis.cross(helper).normalized();
            c.center + u * r
        })
        .collect();
    let rep = point_circle::report(&pts, &circles, r, eps, Mode::Filtered).unwrap();
    let got = filtered_set(&rep);
    for i in 0..circles.len() as u32 {
        assert!(got.contains(&(i, i)), "planted incidence {i}");
    }
    let objs: Vec<Object3> = circles.iter().map(|&c| Object3::Circle(c)).collect();
    assert_eq!(got, brute_pairs_3d(&pts, &objs, eps).unwrap().pairs);
}

#[test]
fn antipodal_congruent_pairs() {
    // p - q along every cap-net seam direction (axes and diagonals).
    let (r, eps) = (0.25, 0.004);
    let dirs = [
        p3(1.0, 0.0, 0.0),
        p3(0.0, 0.0, 1.0),
        p3(1.0, 1.0, 0.0).normalized(),
        p3(1.0, 1.0, 1.0).normalized(),
        p3(-1.0, 0.3, 0.1).normalized(),
    ];
    let q: Vec<_> = dirs.iter().map(|_| p3(0.0, 0.0, 0.0)).collect();
    let p: Vec<_> = dirs.iter().map(|d| *d * r).collect();
    let rep = congruent3::report(&p, &q, r, eps, Mode::Filtered).unwrap();
    let got = filtered_set(&rep);
    for i in 0..dirs.len() as u32 {
        assert!(
            got.iter().any(|&(a, b)| a == i && b == i),
            "seam direction {i}"
        );
    }
}
