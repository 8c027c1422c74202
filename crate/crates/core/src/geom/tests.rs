use super::*;
use crate::gen;
use rand::Rng;

const SCAN_TOL: f64 = 1e-9;

/// Dense parametric minimization: the scan distance upper-bounds the true
/// one and converges quadratically near the minimum, so 1e6 samples land
/// within 1e-9 for well-separated inputs.
fn scan_line_2d(p: Point2, l: &Line2, samples: usize) -> f64 {
    let (a, b) = l.two_points();
    let dir = b - a;
    let mut best = f64::INFINITY;
    for i in 0..=samples {
        let t = -4.0 + 8.0 * i as f64 / samples as f64;
        best = best.min((p - (a + dir * t)).norm());
    }
    best
}

fn scan_circle_2d(p: Point2, c: &Circle2, samples: usize) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..samples {
        let t = std::f64::consts::TAU * i as f64 / samples as f64;
        let q = c.center + p2(t.cos(), t.sin()) * c.r;
        best = best.min((p - q).norm());
    }
    best
}

fn scan_circle_3d(p: Point3, c: &Circle3, samples: usize) -> f64 {
    let helper = if c.axis.x.abs() < 0.9 {
        p3(1.0, 0.0, 0.0)
    } else {
        p3(0.0, 1.0, 0.0)
    };
    let u = c.axis.cross(helper).normalized();
    let v = c.axis.cross(u);
    let mut best = f64::INFINITY;
    for i in 0..samples {
        let t = std::f64::consts::TAU * i as f64 / samples as f64;
        let q = c.center + u * (c.r * t.cos()) + v * (c.r * t.sin());
        best = best.min((p - q).norm());
    }
    best
}

fn scan_line_3d(p: Point3, l: &Line3, samples: usize) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..=samples {
        let t = -4.0 + 8.0 * i as f64 / samples as f64;
        best = best.min((p - l.point_at(t)).norm());
    }
    best
}

#[test]
fn line_distance_trivial() {
    assert_eq!(
        dist_point_line_2d(p2(0.0, 0.0), &Line2::Slant { a: 0.0, b: 0.0 }),
        0.0
    );
    assert_eq!(
        dist_point_line_2d(p2(0.0, 1.0), &Line2::Slant { a: 0.0, b: 0.0 }),
        1.0
    );
    assert!((dist_point_line_2d(p2(0.3, 0.0), &Line2::Vertical { x: 0.1 }) - 0.2).abs() < 1e-15);
}

#[test]
fn line_distance_matches_parametric_scan() {
    let l = Line2::Slant { a: 0.5, b: 0.1 };
    let p = p2(0.3, 0.7);
    let exact = dist_point_line_2d(p, &l);
    assert!((exact - (0.5f64 * 0.3 - 0.7 + 0.1).abs() / 1.25f64.sqrt()).abs() < 1e-15);
    assert!((exact - scan_line_2d(p, &l, 1_000_000)).abs() < SCAN_TOL);

    let mut rng = gen::rng(11);
    for _ in 0..20 {
        let p = gen::point_2d(&mut rng);
        let l = gen::lines_2d(1, &mut rng)[0];
        if dist_point_line_2d(p, &l) < 0.01 {
            continue; // scan resolution is linear, not quadratic, near zero
        }
        assert!((dist_point_line_2d(p, &l) - scan_line_2d(p, &l, 1_000_000)).abs() < SCAN_TOL);
    }
}

#[test]
fn circle_distance_2d() {
    let c = Circle2 {
        center: p2(0.1, -0.2),
        r: 0.4,
    };
    assert!(dist_point_circle_2d(p2(0.5, -0.2), &c) < 1e-15); // on the circle
    assert_eq!(dist_point_circle_2d(c.center, &c), 0.4);
    let mut rng = gen::rng(12);
    for _ in 0..20 {
        let p = gen::point_2d(&mut rng);
        let c = gen::circles_2d(1, 0.2, 0.6, &mut rng)[0];
        if dist_point_circle_2d(p, &c) < 0.01 {
            continue;
        }
        assert!((dist_point_circle_2d(p, &c) - scan_circle_2d(p, &c, 1_000_000)).abs() < SCAN_TOL);
    }
}

#[test]
fn spatial_distances_trivial_and_scanned() {
    let c3 = Circle3::new(p3(0.1, 0.2, -0.1), 0.3, p3(0.0, 0.0, 1.0));
    assert!((dist_point_circle_3d(c3.center, &c3) - 0.3).abs() < 1e-15);
    let s = Sphere3 {
        center: p3(0.0, 0.0, 0.0),
        r: 0.5,
    };
    assert!(dist_point_sphere_3d(p3(0.5, 0.0, 0.0), &s) < 1e-15);

    let mut rng = gen::rng(13);
    for _ in 0..15 {
        let p = gen::point_3d(&mut rng);
        let l = gen::lines_3d(1, &mut rng)[0];
        if dist_point_line_3d(p, &l) >= 0.01 {
            assert!((dist_point_line_3d(p, &l) - scan_line_3d(p, &l, 1_000_000)).abs() < SCAN_TOL);
        }
        let c = gen::circles_3d(1, 0.3, &mut rng)[0];
        if dist_point_circle_3d(p, &c) >= 0.01 {
            assert!(
                (dist_point_circle_3d(p, &c) - scan_circle_3d(p, &c, 1_000_000)).abs() < SCAN_TOL
            );
        }
        let pl = gen::planes_3d(1, &mut rng)[0];
        // Plane distance via an independent projection route.
        let n = pl.normal();
        let q0 = p3(0.0, 0.0, pl.c);
        let proj = ((p - q0).dot(n) / n.norm()).abs();
        assert!((dist_point_plane_3d(p, &pl) - proj).abs() < 1e-12);
    }
}

#[test]
fn power_of_point_brackets_distance() {
    // |pow| = dist * (|pq| + r) exactly, so |pow| <= 3 r dist whenever
    // dist <= r, and |pow| >= 2 r dist for points on or outside the circle
    // (inside, |pq| + r < 2r: the center itself has |pow| = r^2 = r * dist).
    let c = Circle2 {
        center: p2(0.0, 0.0),
        r: 0.4,
    };
    assert_eq!(power_of_point(p2(0.4, 0.0), &c), 0.0);
    assert_eq!(power_of_point(c.center, &c), -c.r * c.r);
    let mut rng = gen::rng(14);
    for _ in 0..1000 {
        let r = rng.gen_range(0.05..0.5);
        let c = Circle2 {
            center: gen::point_2d(&mut rng) * 0.5,
            r,
        };
        let ang: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let radial = rng.gen_range((-0.99 * r)..r);
        let p = c.center + p2(ang.cos(), ang.sin()) * (r + radial);
        let d = dist_point_circle_2d(p, &c);
        assert!(d <= r + 1e-12);
        let pow = power_of_point(p, &c).abs();
        let reach = (p - c.center).norm();
        assert!((pow - d * (reach + r)).abs() <= 1e-12);
        if reach >= r {
            assert!(pow >= 2.0 * r * d - 1e-12);
        } else {
            assert!(pow >= r * d - 1e-12);
        }
        assert!(pow <= 3.0 * r * d + 1e-12);
    }
}

#[test]
fn distances_invariant_under_rigid_motions() {
    let mut rng = gen::rng(15);
    for _ in 0..200 {
        let rot = gen::rotation_3d(&mut rng);
        let shift = gen::point_3d(&mut rng) * 0.2;
        let p = gen::point_3d(&mut rng) * 0.7;
        let c = gen::circles_3d(1, 0.25, &mut rng)[0];
        let before = dist_point_circle_3d(p, &c);
        let moved = Circle3 {
            center: rot.apply(c.center) + shift,
            r: c.r,
            axis: rot.apply(c.axis),
        };
        let after = dist_point_circle_3d(rot.apply(p) + shift, &moved);
        assert!((before - after).abs() < 1e-9);

        let s = Sphere3 {
            center: gen::point_3d(&mut rng) * 0.5,
            r: 0.3,
        };
        let before = dist_point_sphere_3d(p, &s);
        let after = dist_point_sphere_3d(
            rot.apply(p) + shift,
            &Sphere3 {
                center: rot.apply(s.center) + shift,
                r: s.r,
            },
        );
        assert!((before - after).abs() < 1e-9);
    }
    let mut rng = gen::rng(16);
    for _ in 0..200 {
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let rot = Rot2::from_angle(theta);
        let p = gen::point_2d(&mut rng);
        let l = gen::lines_2d(1, &mut rng)[0];
        let before = dist_point_line_2d(p, &l);
        let after = dist_point_line_2d(rot.apply(p), &rot.apply_line(&l));
        assert!((before - after).abs() < 1e-9);
    }
}

#[test]
fn slope_classes_rotate_into_legal_frames() {
    let lines = vec![
        Line2::Slant { a: 3.0, b: 0.2 },  // positive class
        Line2::Slant { a: 0.0, b: -0.1 }, // nonnegative class
        Line2::Slant { a: -1.0, b: 0.0 }, // negative class
        Line2::Vertical { x: 0.3 },       // rotates to slope 1 exactly
    ];
    let [pos, neg] = slope_split(&lines);
    let pos_ids: Vec<u32> = pos.lines.iter().map(|(i, _)| *i).collect();
    assert_eq!(pos_ids, vec![0, 1, 3]);
    let slope_of = |l: &Line2| match *l {
        Line2::Slant { a, .. } => a,
        Line2::Vertical { .. } => panic!("vertical after rotation"),
    };
    // tan(atan 3 - 45 deg) = (3 - 1) / (1 + 3)
    assert!((slope_of(&pos.lines[0].1) - 0.5).abs() < 1e-12);
    assert!((slope_of(&pos.lines[2].1) - 1.0).abs() < 1e-12);
    assert_eq!(neg.lines[0].0, 2);
    assert!(slope_of(&neg.lines[0].1).abs() < 1e-12);
    for cls in [&pos, &neg] {
        for (_, l) in &cls.lines {
            assert!(slope_of(l).abs() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn rotation_roundtrip_is_identity() {
    let mut rng = gen::rng(17);
    for _ in 0..500 {
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let rot = Rot2::from_angle(theta);
        let p = gen::point_2d(&mut rng);
        let back = rot.inverse().apply(rot.apply(p));
        assert!((back - p).norm() < 1e-12);

        let r3 = gen::rotation_3d(&mut rng);
        let q = gen::point_3d(&mut rng);
        let back = r3.transpose().apply(r3.apply(q));
        assert!((back - q).norm() < 1e-12);
    }
}

#[test]
fn thirteen_direction_net_covers_within_quarter_pi() {
    let net = DirectionNet::thirteen();
    assert_eq!(net.dirs.len(), 13);
    // z-aligned input lands on the z class with an identity rotation.
    let z = p3(0.0, 0.0, 1.0);
    let class = net.assign(z);
    assert_eq!(net.dirs[class], z);
    assert_eq!(Rot3::between(net.dirs[class], z), Rot3::IDENTITY);

    let mut rng = gen::rng(18);
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let v = gen::unit_vec_3d(&mut rng);
        worst = worst.max(net.gap(v));
        assert_eq!(net.assign(v), net.assign(-v)); // unoriented
    }
    assert!(worst <= std::f64::consts::FRAC_PI_4);
}

#[test]
fn band_net_covers_at_its_half_angle() {
    for (half, unoriented) in [(std::f64::consts::PI / 12.0, true), (0.05, false)] {
        let net = DirectionNet::bands(half, unoriented);
        let mut rng = gen::rng(19);
        let mut worst: f64 = 0.0;
        for _ in 0..100_000 {
            worst = worst.max(net.gap(gen::unit_vec_3d(&mut rng)));
        }
        assert!(worst <= half, "gap {worst} exceeds {half}");
    }
    // Axis classes for the space-circle algorithm stay a small net.
    let axis_net = DirectionNet::bands(std::f64::consts::PI / 12.0, true);
    assert!(
        axis_net.dirs.len() <= 60,
        "axis net has {} directions",
        axis_net.dirs.len()
    );
}

#[test]
fn validation_rejects_out_of_domain() {
    assert!(validate_points_2d(&[p2(0.0, 0.0)]).is_ok());
    assert!(matches!(
        validate_points_2d(&[p2(1.5, 0.0)]),
        Err(ParamError::PointOutOfDomain { index: 0 })
    ));
    assert!(matches!(
        validate_points_3d(&[p3(0.0, f64::NAN, 0.0)]),
        Err(ParamError::NonFinite { index: 0 })
    ));
    assert!(validate_eps(0.0, 0.5).is_err());
    assert!(validate_eps(0.6, 0.5).is_err());
    assert!(validate_radius(0.3, 0.05, 10.0).is_err()); // eps > r/10
    assert!(validate_radius(0.3, 0.02, 10.0).is_ok());
}
