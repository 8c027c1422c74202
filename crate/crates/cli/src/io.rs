//! Instance file formats.
//!
//! Points: UTF-8 text, one point per line, comma-separated reals
//! ("x,y" or "x,y,z"); '#' starts a comment line.
//!
//! Objects: a kind-tag header line (line2d | plane3 | circle2 | circle3 |
//! sphere3 | line3), then one object per line:
//!   line2d:  "a,b"  or  "V,x0" for vertical lines
//!   plane3:  "a,b,c"
//!   circle2: "cx,cy,r"
//!   circle3: "cx,cy,cz,r,ax,ay,az"
//!   sphere3: "cx,cy,cz"
//!   line3:   "a,b,c,d"
//!
//! Out-of-range coordinates are normalized into the [-1,1] domain by a
//! uniform affine map, reported on stderr; tolerances and reported
//! distances are mapped back so results are stated in the original frame.

use approx_incidences::geom::{
    p2, p3, Circle2, Circle3, Line2, Line3, Object2, Object3, Plane3, Point2, Point3, Sphere3,
};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug)]
pub enum IoError {
    File(String, std::io::Error),
    Parse {
        path: String,
        line: usize,
        what: String,
    },
}

impl std::fmt::Display for IoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IoError::File(path, e) => write!(f, "{path}: {e}"),
            IoError::Parse { path, line, what } => write!(f, "{path}:{line}: {what}"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Points {
    D2(Vec<Point2>),
    D3(Vec<Point3>),
}

#[derive(Debug, Clone)]
pub enum Objects {
    D2(Vec<Object2>),
    D3(Vec<Object3>),
}

fn parse_fields(path: &str, lineno: usize, line: &str) -> Result<Vec<f64>, IoError> {
    line.split(',')
        .map(|t| {
            t.trim().parse::<f64>().map_err(|_| IoError::Parse {
                path: path.to_string(),
                line: lineno,
                what: format!("bad number {t:?}"),
            })
        })
        .collect()
}

fn content_lines(path: &str, text: &str) -> Vec<(usize, String)> {
    let _ = path;
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

pub fn load_points(path: &Path) -> Result<Points, IoError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| IoError::File(name.clone(), e))?;
    let mut d2 = Vec::new();
    let mut d3 = Vec::new();
    let mut dim = None;
    for (lineno, line) in content_lines(&name, &text) {
        let f = parse_fields(&name, lineno, &line)?;
        let d = f.len();
        if d != 2 && d != 3 {
            return Err(IoError::Parse {
                path: name,
                line: lineno,
                what: format!("expected 2 or 3 coordinates, got {d}"),
            });
        }
        if *dim.get_or_insert(d) != d {
            return Err(IoError::Parse {
                path: name,
                line: lineno,
                what: "mixed 2D and 3D points in one file".into(),
            });
        }
        if d == 2 {
            d2.push(p2(f[0], f[1]));
        } else {
            d3.push(p3(f[0], f[1], f[2]));
        }
    }
    Ok(if dim == Some(3) {
        Points::D3(d3)
    } else {
        Points::D2(d2)
    })
}

pub fn load_objects(path: &Path) -> Result<Objects, IoError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| IoError::File(name.clone(), e))?;
    let mut lines = content_lines(&name, &text).into_iter();
    let Some((header_line, header)) = lines.next() else {
        return Ok(Objects::D2(Vec::new()));
    };
    let bad_header = || IoError::Parse {
        path: name.clone(),
        line: header_line,
        what: format!("unknown object kind {header:?}"),
    };
    let mut o2: Vec<Object2> = Vec::new();
    let mut o3: Vec<Object3> = Vec::new();
    for (lineno, line) in lines {
        let err = |what: String| IoError::Parse {
            path: name.clone(),
            line: lineno,
            what,
        };
        match header.as_str() {
            "line2d" => {
                if let Some(rest) = line.strip_prefix("V,").or_else(|| line.strip_prefix("v,")) {
                    let x = rest
                        .trim()
                        .parse::<f64>()
                        .map_err(|_| err(format!("bad number {rest:?}")))?;
                    o2.push(Object2::Line(Line2::Vertical { x }));
                } else {
                    let f = parse_fields(&name, lineno, &line)?;
                    if f.len() != 2 {
                        return Err(err("line2d rows are \"a,b\" or \"V,x0\"".into()));
                    }
                    o2.push(Object2::Line(Line2::Slant { a: f[0], b: f[1] }));
                }
            }
            "circle2" => {
                let f = parse_fields(&name, lineno, &line)?;
                if f.len() != 3 {
                    return Err(err("circle2 rows are \"cx,cy,r\"".into()));
                }
                o2.push(Object2::Circle(Circle2 {
                    center: p2(f[0], f[1]),
                    r: f[2],
                }));
            }
            "plane3" => {
                let f = parse_fields(&name, lineno, &line)?;
                if f.len() != 3 {
                    return Err(err("plane3 rows are \"a,b,c\"".into()));
                }
                o3.push(Object3::Plane(Plane3 {
                    a: f[0],
                    b: f[1],
                    c: f[2],
                }));
            }
            "line3" => {
                let f = parse_fields(&name, lineno, &line)?;
                if f.len() != 4 {
                    return Err(err("line3 rows are \"a,b,c,d\"".into()));
                }
                o3.push(Object3::Line(Line3 {
                    a: f[0],
                    b: f[1],
                    c: f[2],
                    d: f[3],
                }));
            }
            "sphere3" => {
                let f = parse_fields(&name, lineno, &line)?;
                if f.len() != 3 {
                    return Err(err("sphere3 rows are \"cx,cy,cz\"".into()));
                }
                o3.push(Object3::Sphere(Sphere3 {
                    center: p3(f[0], f[1], f[2]),
                    r: 0.0,
                }));
            }
            "circle3" => {
                let f = parse_fields(&name, lineno, &line)?;
                if f.len() != 7 {
                    return Err(err("circle3 rows are \"cx,cy,cz,r,ax,ay,az\"".into()));
                }
                o3.push(Object3::Circle(Circle3::new(
                    p3(f[0], f[1], f[2]),
                    f[3],
                    p3(f[4], f[5], f[6]),
                )));
            }
            _ => return Err(bad_header()),
        }
    }
    Ok(match header.as_str() {
        "line2d" | "circle2" => Objects::D2(o2),
        _ => Objects::D3(o3),
    })
}

pub fn save_points_2d(points: &[Point2]) -> String {
    let mut s = String::new();
    for p in points {
        let _ = writeln!(s, "{},{}", p.x, p.y);
    }
    s
}

pub fn save_points_3d(points: &[Point3]) -> String {
    let mut s = String::new();
    for p in points {
        let _ = writeln!(s, "{},{},{}", p.x, p.y, p.z);
    }
    s
}

pub fn save_objects_2d(objects: &[Object2]) -> String {
    let mut s = String::new();
    match objects.first() {
        Some(Object2::Line(_)) | None => s.push_str("line2d\n"),
        Some(Object2::Circle(_)) => s.push_str("circle2\n"),
    }
    for o in objects {
        match o {
            Object2::Line(Line2::Slant { a, b }) => {
                let _ = writeln!(s, "{a},{b}");
            }
            Object2::Line(Line2::Vertical { x }) => {
                let _ = writeln!(s, "V,{x}");
            }
            Object2::Circle(c) => {
                let _ = writeln!(s, "{},{},{}", c.center.x, c.center.y, c.r);
            }
        }
    }
    s
}

pub fn save_objects_3d(objects: &[Object3]) -> String {
    let mut s = String::new();
    match objects.first() {
        Some(Object3::Plane(_)) | None => s.push_str("plane3\n"),
        Some(Object3::Line(_)) => s.push_str("line3\n"),
        Some(Object3::Sphere(_)) => s.push_str("sphere3\n"),
        Some(Object3::Circle(_)) => s.push_str("circle3\n"),
    }
    for o in objects {
        match o {
            Object3::Plane(p) => {
                let _ = writeln!(s, "{},{},{}", p.a, p.b, p.c);
            }
            Object3::Line(l) => {
                let _ = writeln!(s, "{},{},{},{}", l.a, l.b, l.c, l.d);
            }
            Object3::Sphere(sp) => {
                let _ = writeln!(s, "{},{},{}", sp.center.x, sp.center.y, sp.center.z);
            }
            Object3::Circle(c) => {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    c.center.x, c.center.y, c.center.z, c.r, c.axis.x, c.axis.y, c.axis.z
                );
            }
        }
    }
    s
}

/// Uniform map `x -> scale * x + offset` applied per instance; identity
/// when the data already fits the [-1, 1] domain.
#[derive(Debug, Clone, Copy)]
pub struct Normalization {
    pub scale: f64,
    pub offset: [f64; 3],
}

impl Normalization {
    pub fn identity() -> Self {
        Normalization {
            scale: 1.0,
            offset: [0.0; 3],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.scale == 1.0 && self.offset == [0.0; 3]
    }
}

/// Fit the instance into the domain box: uniform scale about the bounding
/// box center, slightly shrunk for safety.
pub fn normalize_2d(points: &mut [Point2], objects: &mut [Object2]) -> Normalization {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in points.iter() {
        lo[0] = lo[0].min(p.x);
        lo[1] = lo[1].min(p.y);
        hi[0] = hi[0].max(p.x);
        hi[1] = hi[1].max(p.y);
    }
    if lo[0] >= -1.0 && lo[1] >= -1.0 && hi[0] <= 1.0 && hi[1] <= 1.0 {
        return Normalization::identity();
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-300);
    let scale = 1.98 / extent;
    let offset = [
        -0.5 * (lo[0] + hi[0]) * scale,
        -0.5 * (lo[1] + hi[1]) * scale,
        0.0,
    ];
    let map = |p: Point2| p2(p.x * scale + offset[0], p.y * scale + offset[1]);
    for p in points.iter_mut() {
        *p = map(*p);
    }
    for o in objects.iter_mut() {
        *o = match *o {
            Object2::Line(l) => {
                let (a, b) = l.two_points();
                Object2::Line(Line2::through(map(a), map(b)))
            }
            Object2::Circle(c) => Object2::Circle(Circle2 {
                center: map(c.center),
                r: c.r * scale,
            }),
        };
    }
    Normalization { scale, offset }
}

pub fn normalize_3d(points: &mut [Point3], objects: &mut [Object3]) -> Normalization {
    let (mut lo, mut hi) = ([f64::INFINITY; 3], [f64::NEG_INFINITY; 3]);
    for p in points.iter() {
        for (a, v) in [(0, p.x), (1, p.y), (2, p.z)] {
            lo[a] = lo[a].min(v);
            hi[a] = hi[a].max(v);
        }
    }
    if (0..3).all(|a| lo[a] >= -1.0 && hi[a] <= 1.0) {
        return Normalization::identity();
    }
    let extent = (0..3).map(|a| hi[a] - lo[a]).fold(1e-300f64, f64::max);
    let scale = 1.98 / extent;
    let offset = [
        -0.5 * (lo[0] + hi[0]) * scale,
        -0.5 * (lo[1] + hi[1]) * scale,
        -0.5 * (lo[2] + hi[2]) * scale,
    ];
    let map = |p: Point3| {
        p3(
            p.x * scale + offset[0],
            p.y * scale + offset[1],
            p.z * scale + offset[2],
        )
    };
    for p in points.iter_mut() {
        *p = map(*p);
    }
    for o in objects.iter_mut() {
        *o = match *o {
            Object3::Plane(pl) => {
                // Slopes are scale-invariant; remap the intercept through a
                // point on the plane.
                let q = map(p3(0.0, 0.0, pl.c));
                Object3::Plane(Plane3 {
                    a: pl.a,
                    b: pl.b,
                    c: q.z - pl.a * q.x - pl.b * q.y,
                })
            }
            Object3::Line(l) => {
                let q = map(l.point_at(0.0));
                Object3::Line(
                    Line3::from_point_dir(q, l.dir()).expect("slopes unchanged by scaling"),
                )
            }
            Object3::Sphere(s) => Object3::Sphere(Sphere3 {
                center: map(s.center),
                r: s.r * scale,
            }),
            Object3::Circle(c) => Object3::Circle(Circle3 {
                center: map(c.center),
                r: c.r * scale,
                axis: c.axis,
            }),
        };
    }
    Normalization { scale, offset }
}
