//! Oracle-backed tests for the spatial reporting algorithms.

use approx_incidences::baseline::{brute_pairs_3d, oracle_dist_3d};
use approx_incidences::geom::{p3, Line3, Object3, Plane3, Point3, Sphere3};
use approx_incidences::pairs::Mode;
use approx_incidences::spatial::{congruent, point_circle, point_line, point_plane};
use approx_incidences::{gen, Report};
use rand::Rng;

fn filtered_set(rep: &Report) -> Vec<(u32, u32)> {
    rep.pairs.iter().map(|p| (p.point, p.object)).collect()
}

#[test]
fn point_plane_incident_and_far() {
    let pl = Plane3 {
        a: 0.2,
        b: -0.3,
        c: 0.05,
    };
    let on = [p3(0.1, 0.2, pl.eval(0.1, 0.2))];
    let rep = point_plane::report(&on, &[pl], 0.01, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0)]);
    // Distance 8 eps exceeds the 7 eps envelope.
    let eps = 0.01;
    let off = [p3(
        0.0,
        0.0,
        8.0 * eps * (1.0f64 + 0.04f64 + 0.09f64).sqrt(),
    )];
    let flat = Plane3 {
        a: 0.2,
        b: 0.3,
        c: 0.0,
    };
    let d = approx_incidences::geom::dist_point_plane_3d(off[0], &flat);
    assert!(d > 7.9 * eps && d < 8.1 * eps);
    let rep = point_plane::report(&off, &[flat], eps, Mode::Candidates).unwrap();
    assert!(rep.pairs.is_empty());
}

#[test]
fn point_plane_filtered_equals_brute_force() {
    for (seed, m, n, eps) in [(200u64, 500, 500, 0.01), (201, 300, 600, 0.005)] {
        let mut rng = gen::rng(seed);
        let pts = gen::points_3d(m, &mut rng);
        let planes = gen::planes_3d(n, &mut rng);
        let rep = point_plane::report(&pts, &planes, eps, Mode::Filtered).unwrap();
        let objs: Vec<Object3> = planes.iter().map(|&p| Object3::Plane(p)).collect();
        let oracle = brute_pairs_3d(&pts, &objs, eps).unwrap();
        assert_eq!(filtered_set(&rep), oracle.pairs, "seed {seed}");
        let cand = point_plane::report(&pts, &planes, eps, Mode::Candidates).unwrap();
        for pr in &cand.pairs {
            assert!(
                pr.distance <= 7.0 * eps * (1.0 + 1e-9),
                "at {} eps",
                pr.distance / eps
            );
        }
        assert!(cand.metrics.dup_factor() <= 16.0);
    }
}

#[test]
fn point_plane_degenerate_plans() {
    let mut rng = gen::rng(202);
    for (m, n) in [(1500, 4), (4, 1500)] {
        let pts = gen::points_3d(m, &mut rng);
        let planes = gen::planes_3d(n, &mut rng);
        let eps = 0.02;
        let rep = point_plane::report(&pts, &planes, eps, Mode::Filtered).unwrap();
        let objs: Vec<Object3> = planes.iter().map(|&p| Object3::Plane(p)).collect();
        assert_eq!(
            filtered_set(&rep),
            brute_pairs_3d(&pts, &objs, eps).unwrap().pairs
        );
    }
}

#[test]
fn cap_directions_cover_and_stay_small() {
    for eps in [0.25, 0.04, 0.01, 0.0025] {
        let net = congruent::build_cap_directions(eps).unwrap();
        let mut rng = gen::rng(210);
        let mut worst: f64 = 0.0;
        for _ in 0..100_000 {
            worst = worst.max(net.gap(gen::unit_vec_3d(&mut rng)));
        }
        assert!(
            worst <= eps.sqrt() / 2.0,
            "coverage gap {worst} at eps {eps}"
        );
        let size = net.dirs.len() as f64;
        assert!(size <= 32.0 / eps, "net size {size} at eps {eps}");
        assert!(
            size >= 2.0 / eps,
            "net suspiciously small: {size} at eps {eps}"
        );
        // Bounded overlap: no direction is covered by too many caps.
        let mut max_overlap = 0usize;
        for _ in 0..2000 {
            let v = gen::unit_vec_3d(&mut rng);
            let covered = net
                .dirs
                .iter()
                .filter(|d| v.dot(**d).clamp(-1.0, 1.0).acos() <= eps.sqrt() / 2.0)
                .count();
            max_overlap = max_overlap.max(covered);
        }
        assert!(max_overlap <= 8, "cap overlap {max_overlap}");
    }
    assert!(congruent::build_cap_directions(0.3).is_err());
}

#[test]
fn congruent_pairs_match_brute_force() {
    let (r, eps) = (0.25, 0.004);
    let mut rng = gen::rng(211);
    let p = gen::points_3d(400, &mut rng);
    let q = gen::points_3d(400, &mut rng);
    let rep = congruent::report(&p, &q, r, eps, Mode::Filtered).unwrap();
    let spheres: Vec<Object3> = q
        .iter()
        .map(|&c| Object3::Sphere(Sphere3 { center: c, r }))
        .collect();
    let oracle = brute_pairs_3d(&p, &spheres, eps).unwrap();
    assert_eq!(filtered_set(&rep), oracle.pairs);
    assert!(rep.metrics.dup_factor() <= 16.0);
}

#[test]
fn congruent_pairs_trivial_and_box_predicate() {
    let (r, eps) = (0.3, 0.001);
    let q = [p3(0.0, 0.0, 0.0)];
    let on = [p3(0.3, 0.0, 0.0)];
    let rep = congruent::report(&on, &q, r, eps, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0)]);
    // |pq| = r + 10 eps: outside every 3x-scaled cap box, so not even a
    // candidate.
    let far = [p3(r + 10.0 * eps, 0.0, 0.0)];
    let rep = congruent::report(&far, &q, r, eps, Mode::Candidates).unwrap();
    assert!(rep.pairs.is_empty());

    // Every candidate lies inside the 3x-scaled box of its emitting cap.
    let mut rng = gen::rng(212);
    let p = gen::points_3d(300, &mut rng);
    let qq = gen::points_3d(300, &mut rng);
    let net = congruent::build_cap_directions(eps).unwrap();
    let cap = congruent::cap_box(r, eps, net.half_angle);
    let rep = congruent::report(&p, &qq, r, eps, Mode::Candidates).unwrap();
    for pr in &rep.pairs {
        let dir = net.dirs[pr.tag as usize];
        let rot = approx_incidences::geom::Rot3::between(dir, p3(0.0, 0.0, 1.0));
        let v = rot.apply(p[pr.point as usize] - qq[pr.object as usize]);
        let (cx, cz) = (cap.half_xy, 0.5 * (cap.z_lo + cap.z_hi));
        let hz = 0.5 * (cap.z_hi - cap.z_lo);
        assert!(v.x.abs() <= 3.0 * cx && v.y.abs() <= 3.0 * cx);
        assert!((v.z - cz).abs() <= 3.0 * hz);
    }
}

#[test]
fn point_line_3d_matches_brute_force() {
    for (seed, m, n, eps) in [(220u64, 400, 400, 0.01), (221, 300, 500, 0.004)] {
        let mut rng = gen::rng(seed);
        let pts = gen::points_3d(m, &mut rng);
        let lines = gen::lines_3d(n, &mut rng);
        let rep = point_line::report(&pts, &lines, eps, Mode::Filtered).unwrap();
        let objs: Vec<Object3> = lines.iter().map(|&l| Object3::Line(l)).collect();
        let oracle = brute_pairs_3d(&pts, &objs, eps).unwrap();
        assert_eq!(filtered_set(&rep), oracle.pairs, "seed {seed}");
        let cand = point_line::report(&pts, &lines, eps, Mode::Candidates).unwrap();
        let bound = 8.0 * std::f64::consts::SQRT_2 * eps;
        for pr in &cand.pairs {
            assert!(
                pr.distance <= bound * (1.0 + 1e-9),
                "at {} eps",
                pr.distance / eps
            );
        }
        assert!(cand.metrics.dup_factor() <= 16.0);
    }
}

#[test]
fn point_line_3d_trivial_and_degenerate() {
    let l = Line3 {
        a: 0.3,
        b: 0.1,
        c: -0.2,
        d: 0.0,
    };
    let on = [l.point_at(0.4)];
    let rep = point_line::report(&on, &[l], 0.005, Mode::Filtered).unwrap();
    assert_eq!(filtered_set(&rep), vec![(0, 0)]);
    // 20 eps > 8 sqrt(2) eps: never a candidate.
    let eps = 0.01;
    let off = [p3(
        0.4,
        l.point_at(0.4).y + 20.0 * eps / (1.0f64 + 0.09).sqrt() * 1.0,
        l.point_at(0.4).z,
    )];
    let d = approx_incidences::geom::dist_point_line_3d(off[0], &l);
    assert!(d >= 12.0 * eps);
    let rep = point_line::report(&off, &[l], eps, Mode::Candidates).unwrap();
    assert!(rep.pairs.is_empty());

    let mut rng = gen::rng(222);
    for (m, n) in [(1200, 3), (3, 1200)] {
        let pts = gen::points_3d(m, &mut rng);
        let lines = gen::lines_3d(n, &mut rng);
        let rep = point_line::report(&pts, &lines, 0.02, Mode::Filtered).unwrap();
        let objs: Vec<Object3> = lines.iter().map(|&l| Object3::Line(l)).collect();
        assert_eq!(
            filtered_set(&rep),
            brute_pairs_3d(&pts, &objs, 0.02).unwrap().pairs
        );
    }
}

#[test]
fn dual_distance_identity() {
    // The 4D dual distance equals the vertical (y,z)-plane distance to the
    // line's point on x = xi, identically.
    let mut rng = gen::rng(223);
    for _ in 0..10_000 {
        let p = gen::point_3d(&mut rng);
        let l = gen::lines_3d(1, &mut rng)[0];
        let lp = l.point_at(p.x);
        let direct = ((p.y - lp.y).powi(2) + (p.z - lp.z).powi(2)).sqrt();
        let dual = ((l.a * p.x + l.b - p.y).powi(2) + (l.c * p.x + l.d - p.z).powi(2)).sqrt();
        assert!((direct - dual).abs() <= 1e-12);
    }
}

#[test]
fn dual_points_of_crossing_lines_land_in_the_box() {
    // Lines crossing a cube [0, d1]^3 in a legal frame have duals inside
    // [-1,1]^2 x [-d1, 2 d1]^2 (slopes, local intercepts).
    let mut rng = gen::rng(224);
    for _ in 0..5000 {
        let d1 = rng.gen_range(0.01..0.3);
        // A point inside the cube and a legal direction pin the line.
        let inside = p3(
            rng.gen_range(0.0..d1),
            rng.gen_range(0.0..d1),
            rng.gen_range(0.0..d1),
        );
        let dir = loop {
            let v = gen::unit_vec_3d(&mut rng);
            if v.x.abs() >= std::f64::consts::FRAC_1_SQRT_2 {
                break v;
            }
        };
        let l = Line3::from_point_dir(inside, dir).unwrap();
        assert!(l.a * l.a + l.c * l.c <= 1.0 + 1e-9);
        assert!(-d1 - 1e-12 <= l.b && l.b <= 2.0 * d1 + 1e-12);
        assert!(-d1 - 1e-12 <= l.d && l.d <= 2.0 * d1 + 1e-12);
    }
}

#[test]
fn point_circle_3d_matches_brute_force() {
    let (r, eps) = (0.3, 0.002);
    let mut rng = gen::rng(230);
    let pts = gen::points_3d(300, &mut rng);
    let circs = gen::circles_3d(300, r, &mut rng);
    let rep = point_circle::report(&pts, &circs, r, eps, Mode::Filtered).unwrap();
    let objs: Vec<Object3> = circs.iter().map(|&c| Object3::Circle(c)).collect();
    let oracle = brute_pairs_3d(&pts, &objs, eps).unwrap();
    assert_eq!(filtered_set(&rep), oracle.pairs);
    assert!(rep.metrics.dup_factor() <= 16.0);
}

#[test]
fn point_circle_3d_incident_points() {
    let (r, eps) = (0.3, 0.002);
    let mut rng = gen::rng(231);
    let circs = gen::circles_3d(40, r, &mut rng);
    // One point planted exactly on each circle.
    let pts: Vec<Point3> = circs
        .iter()
        .map(|c| {
            let helper = if c.axis.x.abs() < 0.9 {
                p3(1.0, 0.0, 0.0)
            } else {
                p3(0.0, 1.0, 0.0)
            };
            let u = c.axis.cross(helper).normalized();
            let v = c.axis.cross(u);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            c.center + u * (r * t.cos()) + v * (r * t.sin())
        })
        .collect();
    let rep = point_circle::report(&pts, &circs, r, eps, Mode::Filtered).unwrap();
    let got = filtered_set(&rep);
    for i in 0..circs.len() as u32 {
        assert!(got.contains(&(i, i)), "planted incidence {i} missing");
    }
    // Mixed radii are rejected.
    let mut bad = circs.clone();
    bad[0].r = 0.2;
    assert!(point_circle::report(&pts, &bad, r, eps, Mode::Filtered).is_err());
}

#[test]
fn cylinder_axes_cross_few_slabs_and_enclose_their_sector() {
    let (r, eps) = (0.3, 0.002);
    let frame = point_circle::sector_frame(r, eps);
    assert!(frame.chord <= eps.sqrt());
    let mut rng = gen::rng(232);
    // Sampled sector tube points stay within the cylinder radius of the
    // reference axis, and each tilted axis x-extent covers O(1) slabs.
    for _ in 0..10_000 {
        let theta =
            rng.gen_range(-0.5 * frame.theta..0.5 * frame.theta) - 0.5 * std::f64::consts::PI;
        let arc = p3(r * theta.cos(), r * theta.sin(), 0.0);
        let off = gen::unit_vec_3d(&mut rng) * rng.gen_range(0.0..eps);
        let pt = arc + off;
        let d = ((pt.y + frame.axis_rho).powi(2) + pt.z.powi(2)).sqrt();
        assert!(
            d <= frame.radius * (1.0 + 1e-9),
            "tube point {d} vs {}",
            frame.radius
        );
    }
    for _ in 0..10_000 {
        let tilt_angle = rng.gen_range(0.0..point_circle::AXIS_CLASS_HALF_ANGLE);
        let azim = rng.gen_range(0.0..std::f64::consts::TAU);
        let axis = p3(
            tilt_angle.sin() * azim.cos(),
            tilt_angle.sin() * azim.sin(),
            tilt_angle.cos(),
        );
        let tilt = approx_incidences::geom::Rot3::between(p3(0.0, 0.0, 1.0), axis);
        let dir = tilt.apply(p3(1.0, 0.0, 0.0));
        let span = 2.0 * (frame.half_len * dir.x.abs() + frame.radius);
        let slabs = (span / frame.chord).ceil() as i64 + 1;
        assert!(slabs <= 3, "cylinder axis crosses {slabs} slabs");
    }
}

#[test]
fn oracle_distances_cross_validate_library_geometry_3d() {
    let mut rng = gen::rng(240);
    for _ in 0..100 {
        let p = gen::point_3d(&mut rng);
        let pl = gen::planes_3d(1, &mut rng)[0];
        let lib = approx_incidences::geom::dist_point_plane_3d(p, &pl);
        assert!((oracle_dist_3d(p, &Object3::Plane(pl)) - lib).abs() < 1e-12);
        let l = gen::lines_3d(1, &mut rng)[0];
        let lib = approx_incidences::geom::dist_point_line_3d(p, &l);
        assert!((oracle_dist_3d(p, &Object3::Line(l)) - lib).abs() < 1e-12);
        let s = Sphere3 {
            center: gen::point_3d(&mut rng) * 0.5,
            r: 0.3,
        };
        let lib = approx_incidences::geom::dist_point_sphere_3d(p, &s);
        assert!((oracle_dist_3d(p, &Object3::Sphere(s)) - lib).abs() < 1e-12);
        let c = gen::circles_3d(1, 0.25, &mut rng)[0];
        let lib = approx_incidences::geom::dist_point_circle_3d(p, &c);
        assert!((oracle_dist_3d(p, &Object3::Circle(c)) - lib).abs() < 1e-12);
    }
}
