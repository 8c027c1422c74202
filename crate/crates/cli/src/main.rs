//! Benchmark harness for the approximate-incidence library: seeded
//! instance generation, instance files, per-algorithm runs with work
//! counters, and the CSV series behind the overhead/crossover studies.
//!
//! Exit codes: 0 success, 2 parameter error, 3 I/O error, 4 oracle budget
//! refusal.

mod io;

use approx_incidences::baseline::{
    brute_pairs_2d, brute_pairs_3d, brute_triples, naive_2d, naive_3d, naive_duality_2d,
    naive_duality_3d, oracle_dist_2d, oracle_dist_3d,
};
use approx_incidences::geom::{
    Circle2, Circle3, Line2, Line3, Object2, Object3, Plane3, Point2, Point3, Sphere3,
};
use approx_incidences::pairs::Mode;
use approx_incidences::planar::{circles, congruent as congruent2, point_line as pl2};
use approx_incidences::spatial::{
    congruent as congruent3, point_circle, point_line as pl3, point_plane,
};
use approx_incidences::triangles::{self, TriangleQuery};
use approx_incidences::{gen, BudgetError, ParamError, Report};
use clap::{Args, Parser, Subcommand, ValueEnum};
use io::Normalization;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "incbench",
    about = "approximate-incidence benchmark harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded random instance and write its files.
    Gen(CommonArgs),
    /// Run an algorithm over a (swept) configuration and emit CSV rows.
    Run(CommonArgs),
    /// Run the exact brute-force oracle and print the true pairs/triples.
    Oracle(CommonArgs),
    /// Run an algorithm and print its pairs (or triples).
    Pairs(CommonArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Kind {
    Lines2d,
    Planes3d,
    Circles2d,
    Congruent2d,
    Congruent3d,
    Lines3d,
    Circles3d,
    Triangles3d,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Algo {
    /// One fine grid on the point side.
    Naive,
    /// The fine grid on whichever side is smaller after dualizing.
    NaiveDuality,
    /// The primal-dual scheme for the kind (the sector method's polar
    /// sibling for congruent 2D pairs).
    Efficient,
    /// Annulus-sector method (congruent 2D pairs only).
    Sector,
    /// Brute-force scan (oracle as an algorithm).
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum RunMode {
    Count,
    Report,
    Candidates,
}

impl RunMode {
    fn to_mode(self) -> Mode {
        match self {
            RunMode::Count => Mode::Count,
            RunMode::Report => Mode::Filtered,
            RunMode::Candidates => Mode::Candidates,
        }
    }
}

#[derive(Args, Clone)]
struct CommonArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, value_enum, default_value = "efficient")]
    algo: Algo,
    /// Point count(s); comma-separated for sweeps.
    #[arg(long, default_value = "1000", value_delimiter = ',')]
    m: Vec<usize>,
    /// Object count(s); comma-separated for sweeps.
    #[arg(long, default_value = "1000", value_delimiter = ',')]
    n: Vec<usize>,
    /// Tolerance(s); comma-separated for sweeps.
    #[arg(long, default_value = "0.01", value_delimiter = ',')]
    eps: Vec<f64>,
    /// Common radius (congruent kinds, 3D circles).
    #[arg(long)]
    r: Option<f64>,
    /// Radius band for arbitrary 2D circles.
    #[arg(long)]
    r1: Option<f64>,
    #[arg(long)]
    r2: Option<f64>,
    /// Reference triangle sides "u,v,w" (triangles3d).
    #[arg(long, value_delimiter = ',')]
    tri: Option<Vec<f64>>,
    /// Fatness floors for the triangle query.
    #[arg(long, default_value_t = 0.2)]
    beta: f64,
    #[arg(long = "fat-s", default_value_t = 0.2)]
    fat_s: f64,
    /// Seed for generated instances (required unless loading files).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "report")]
    mode: RunMode,
    #[arg(long = "in-points")]
    in_points: Option<PathBuf>,
    #[arg(long = "in-objects")]
    in_objects: Option<PathBuf>,
    /// Output path (CSV for run, pair list for oracle/pairs, file prefix
    /// for gen); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum AppError {
    Param(String),
    Io(String),
    Budget(BudgetError),
}

impl From<ParamError> for AppError {
    fn from(e: ParamError) -> Self {
        AppError::Param(e.to_string())
    }
}

impl From<io::IoError> for AppError {
    fn from(e: io::IoError) -> Self {
        AppError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Gen(a) => cmd_gen(&a),
        Cmd::Run(a) => cmd_run(&a),
        Cmd::Oracle(a) => cmd_oracle(&a),
        Cmd::Pairs(a) => cmd_pairs(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Param(msg)) => {
            eprintln!("parameter error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(3)
        }
        Err(AppError::Budget(e)) => {
            eprintln!("oracle refused: {e}");
            ExitCode::from(4)
        }
    }
}

enum Inst {
    D2 {
        pts: Vec<Point2>,
        objs: Vec<Object2>,
    },
    D3 {
        pts: Vec<Point3>,
        objs: Vec<Object3>,
    },
    Tri {
        pts: Vec<Point3>,
    },
}

impl Inst {
    fn sizes(&self) -> (usize, usize) {
        match self {
            Inst::D2 { pts, objs } => (pts.len(), objs.len()),
            Inst::D3 { pts, objs } => (pts.len(), objs.len()),
            Inst::Tri { pts } => (pts.len(), pts.len()),
        }
    }
}

fn require<T: Copy>(v: Option<T>, what: &str) -> Result<T, AppError> {
    v.ok_or_else(|| AppError::Param(format!("missing required flag --{what}")))
}

fn gen_instance(a: &CommonArgs, m: usize, n: usize) -> Result<Inst, AppError> {
    let seed = require(a.seed, "seed")?;
    let mut rng = gen::rng(seed);
    Ok(match a.kind {
        Kind::Lines2d => Inst::D2 {
            pts: gen::points_2d(m, &mut rng),
            objs: gen::lines_2d(n, &mut rng)
                .into_iter()
                .map(Object2::Line)
                .collect(),
        },
        Kind::Circles2d => {
            let r1 = require(a.r1, "r1")?;
            let r2 = require(a.r2, "r2")?;
            Inst::D2 {
                pts: gen::points_2d(m, &mut rng),
                objs: gen::circles_2d(n, r1, r2, &mut rng)
                    .into_iter()
                    .map(Object2::Circle)
                    .collect(),
            }
        }
        Kind::Congruent2d => {
            let r = require(a.r, "r")?;
            Inst::D2 {
                pts: gen::points_2d(m, &mut rng),
                objs: gen::points_2d(n, &mut rng)
                    .into_iter()
                    .map(|c| Object2::Circle(Circle2 { center: c, r }))
                    .collect(),
            }
        }
        Kind::Planes3d => Inst::D3 {
            pts: gen::points_3d(m, &mut rng),
            objs: gen::planes_3d(n, &mut rng)
                .into_iter()
                .map(Object3::Plane)
                .collect(),
        },
        Kind::Lines3d => Inst::D3 {
            pts: gen::points_3d(m, &mut rng),
            objs: gen::lines_3d(n, &mut rng)
                .into_iter()
                .map(Object3::Line)
                .collect(),
        },
        Kind::Congruent3d => {
            let r = require(a.r, "r")?;
            Inst::D3 {
                pts: gen::points_3d(m, &mut rng),
                objs: gen::points_3d(n, &mut rng)
                    .into_iter()
                    .map(|c| Object3::Sphere(Sphere3 { center: c, r }))
                    .collect(),
            }
        }
        Kind::Circles3d => {
            let r = require(a.r, "r")?;
            Inst::D3 {
                pts: gen::points_3d(m, &mut rng),
                objs: gen::circles_3d(n, r, &mut rng)
                    .into_iter()
                    .map(Object3::Circle)
                    .collect(),
            }
        }
        Kind::Triangles3d => Inst::Tri {
            pts: gen::points_3d(m, &mut rng),
        },
    })
}

/// Load, check dimensionality against the kind, normalize into the domain.
fn load_instance(a: &CommonArgs) -> Result<(Inst, Normalization), AppError> {
    let ppath = a.in_points.as_ref().expect("checked by caller");
    let pts = io::load_points(ppath)?;
    let is_2d = matches!(a.kind, Kind::Lines2d | Kind::Circles2d | Kind::Congruent2d);
    if matches!(a.kind, Kind::Triangles3d) {
        let Points3(mut pts) = coerce3(pts)?;
        let norm = io::normalize_3d(&mut pts, &mut []);
        report_norm(&norm);
        return Ok((Inst::Tri { pts }, norm));
    }
    let opath = a
        .in_objects
        .as_ref()
        .ok_or_else(|| AppError::Param("--in-objects required with --in-points".into()))?;
    let objs = io::load_objects(opath)?;
    match (pts, objs, is_2d) {
        (io::Points::D2(mut pts), io::Objects::D2(mut objs), true) => {
            if matches!(a.kind, Kind::Congruent2d) {
                let r = common_radius_2d(&objs)?;
                if a.r.is_some() && a.r != Some(r) {
                    return Err(AppError::Param("--r disagrees with the file radii".into()));
                }
            }
            let norm = io::normalize_2d(&mut pts, &mut objs);
            report_norm(&norm);
            Ok((Inst::D2 { pts, objs }, norm))
        }
        (io::Points::D3(mut pts), io::Objects::D3(mut objs), false) => {
            if matches!(a.kind, Kind::Congruent3d) {
                let r = require(a.r, "r")?;
                for o in objs.iter_mut() {
                    if let Object3::Sphere(s) = o {
                        s.r = r;
                    }
                }
            }
            let norm = io::normalize_3d(&mut pts, &mut objs);
            report_norm(&norm);
            Ok((Inst::D3 { pts, objs }, norm))
        }
        _ => Err(AppError::Param(
            "file dimensionality does not match --kind".into(),
        )),
    }
}

struct Points3(Vec<Point3>);
fn coerce3(p: io::Points) -> Result<Points3, AppError> {
    match p {
        io::Points::D3(v) => Ok(Points3(v)),
        io::Points::D2(_) => Err(AppError::Param("expected 3D points for this kind".into())),
    }
}

fn report_norm(norm: &Normalization) {
    if !norm.is_identity() {
        eprintln!(
            "note: input normalized into the [-1,1] domain: x -> {} * x + ({}, {}, {})",
            norm.scale, norm.offset[0], norm.offset[1], norm.offset[2]
        );
    }
}

fn common_radius_2d(objs: &[Object2]) -> Result<f64, AppError> {
    let mut r = None;
    for o in objs {
        let Object2::Circle(c) = o else {
            return Err(AppError::Param(
                "congruent2d objects must be circles".into(),
            ));
        };
        let rv = *r.get_or_insert(c.r);
        if (c.r - rv).abs() > 1e-9 {
            return Err(AppError::Param(
                "congruent2d circles must share one radius".into(),
            ));
        }
    }
    r.ok_or_else(|| AppError::Param("no circles in the objects file".into()))
}

fn centers_2d(objs: &[Object2]) -> Vec<Point2> {
    objs.iter()
        .map(|o| match o {
            Object2::Circle(c) => c.center,
            _ => unreachable!(),
        })
        .collect()
}

fn lines_of(objs: &[Object2]) -> Result<Vec<Line2>, AppError> {
    objs.iter()
        .map(|o| match o {
            Object2::Line(l) => Ok(*l),
            _ => Err(AppError::Param("expected line objects".into())),
        })
        .collect()
}

/// Dispatch one (instance, algorithm, eps) run.
fn run_algo(a: &CommonArgs, inst: &Inst, eps: f64, mode: Mode) -> Result<Report, AppError> {
    let unsupported = || {
        AppError::Param(format!(
            "algo {:?} is not available for kind {:?}",
            a.algo, a.kind
        ))
    };
    Ok(match (inst, a.kind) {
        (Inst::D2 { pts, objs }, Kind::Lines2d) => match a.algo {
            Algo::Naive => naive_2d(pts, objs, eps, mode)?,
            Algo::NaiveDuality => naive_duality_2d(pts, objs, eps, mode)?,
            Algo::Efficient => pl2::report(pts, &lines_of(objs)?, eps, mode)?,
            _ => return Err(unsupported()),
        },
        (Inst::D2 { pts, objs }, Kind::Circles2d) => {
            let r1 = require(a.r1, "r1")?;
            let r2 = require(a.r2, "r2")?;
            match a.algo {
                Algo::Naive => naive_2d(pts, objs, eps, mode)?,
                Algo::Efficient => {
                    let cs: Vec<Circle2> = objs
                        .iter()
                        .map(|o| match o {
                            Object2::Circle(c) => *c,
                            _ => unreachable!(),
                        })
                        .collect();
                    circles::report(pts, &cs, eps, r1, r2, mode)?
                }
                _ => return Err(unsupported()),
            }
        }
        (Inst::D2 { pts, objs }, Kind::Congruent2d) => {
            let r = match a.r {
                Some(r) => r,
                None => common_radius_2d(objs)?,
            };
            match a.algo {
                Algo::Naive => naive_2d(pts, objs, eps, mode)?,
                Algo::NaiveDuality => naive_duality_2d(pts, objs, eps, mode)?,
                Algo::Sector => congruent2::sector_report(pts, &centers_2d(objs), r, eps, mode)?,
                Algo::Efficient => congruent2::dual_report(pts, &centers_2d(objs), r, eps, mode)?,
                Algo::Brute => return Err(unsupported()),
            }
        }
        (Inst::D3 { pts, objs }, kind) => match (kind, a.algo) {
            (_, Algo::Naive) => naive_3d(pts, objs, eps, mode)?,
            (Kind::Planes3d, Algo::NaiveDuality) | (Kind::Congruent3d, Algo::NaiveDuality) => {
                naive_duality_3d(pts, objs, eps, mode)?
            }
            (Kind::Planes3d, Algo::Efficient) => {
                let ps: Vec<Plane3> = objs
                    .iter()
                    .map(|o| match o {
                        Object3::Plane(p) => *p,
                        _ => unreachable!(),
                    })
                    .collect();
                point_plane::report(pts, &ps, eps, mode)?
            }
            (Kind::Lines3d, Algo::Efficient) => {
                let ls: Vec<Line3> = objs
                    .iter()
                    .map(|o| match o {
                        Object3::Line(l) => *l,
                        _ => unreachable!(),
                    })
                    .collect();
                pl3::report(pts, &ls, eps, mode)?
            }
            (Kind::Congruent3d, Algo::Efficient) => {
                let centers: Vec<Point3> = objs
                    .iter()
                    .map(|o| match o {
                        Object3::Sphere(s) => s.center,
                        _ => unreachable!(),
                    })
                    .collect();
                let r = require(a.r, "r")?;
                congruent3::report(pts, &centers, r, eps, mode)?
            }
            (Kind::Circles3d, Algo::Efficient) => {
                let cs: Vec<Circle3> = objs
                    .iter()
                    .map(|o| match o {
                        Object3::Circle(c) => *c,
                        _ => unreachable!(),
                    })
                    .collect();
                let r =
                    a.r.unwrap_or_else(|| cs.first().map(|c| c.r).unwrap_or(0.0));
                point_circle::report(pts, &cs, r, eps, mode)?
            }
            _ => return Err(unsupported()),
        },
        (Inst::Tri { .. }, _) | (Inst::D2 { .. }, _) => {
            return Err(AppError::Param("instance does not match --kind".into()))
        }
    })
}

fn triangle_query(a: &CommonArgs, eps: f64) -> Result<TriangleQuery, AppError> {
    let tri = a
        .tri
        .as_ref()
        .filter(|t| t.len() == 3)
        .ok_or_else(|| AppError::Param("missing or malformed flag --tri u,v,w".into()))?;
    Ok(TriangleQuery::new(
        tri[0], tri[1], tri[2], eps, a.beta, a.fat_s,
    )?)
}

fn param_column(a: &CommonArgs) -> String {
    match a.kind {
        Kind::Circles2d => format!(
            "{}:{}",
            a.r1.map(|v| v.to_string()).unwrap_or_default(),
            a.r2.map(|v| v.to_string()).unwrap_or_default()
        ),
        Kind::Congruent2d | Kind::Congruent3d | Kind::Circles3d => {
            a.r.map(|v| v.to_string()).unwrap_or_default()
        }
        Kind::Triangles3d => a
            .tri
            .as_ref()
            .map(|t| format!("{}:{}:{}", t[0], t[1], t[2]))
            .unwrap_or_default(),
        _ => String::new(),
    }
}

fn write_out(a: &CommonArgs, content: &str) -> Result<(), AppError> {
    match &a.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| AppError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn kind_tag(kind: Kind) -> &'static str {
    match kind {
        Kind::Lines2d => "lines2d",
        Kind::Planes3d => "planes3d",
        Kind::Circles2d => "circles2d",
        Kind::Congruent2d => "congruent2d",
        Kind::Congruent3d => "congruent3d",
        Kind::Lines3d => "lines3d",
        Kind::Circles3d => "circles3d",
        Kind::Triangles3d => "triangles3d",
    }
}

fn cmd_gen(a: &CommonArgs) -> Result<(), AppError> {
    let inst = gen_instance(a, a.m[0], a.n[0])?;
    let prefix = a.out.clone().unwrap_or_else(|| {
        PathBuf::from(format!(
            "{}_{}",
            kind_tag(a.kind),
            a.seed.unwrap_or_default()
        ))
    });
    let ppath = prefix.with_extension("points.txt");
    let opath = prefix.with_extension("objects.txt");
    let write = |path: &PathBuf, content: String| {
        std::fs::write(path, content).map_err(|e| AppError::Io(format!("{}: {e}", path.display())))
    };
    match &inst {
        Inst::D2 { pts, objs } => {
            write(&ppath, io::save_points_2d(pts))?;
            write(&opath, io::save_objects_2d(objs))?;
            println!("wrote {} and {}", ppath.display(), opath.display());
        }
        Inst::D3 { pts, objs } => {
            write(&ppath, io::save_points_3d(pts))?;
            write(&opath, io::save_objects_3d(objs))?;
            println!("wrote {} and {}", ppath.display(), opath.display());
        }
        Inst::Tri { pts } => {
            write(&ppath, io::save_points_3d(pts))?;
            println!("wrote {}", ppath.display());
        }
    }
    Ok(())
}

const CSV_HEADER: &str = "kind,algo,m,n,eps,param,seed,mode,cells_visited,candidates,k_true,k_filtered,dup_factor,max_distortion,elapsed_ms";

fn cmd_run(a: &CommonArgs) -> Result<(), AppError> {
    let mut csv = String::new();
    let _ = writeln!(csv, "{CSV_HEADER}");
    let from_files = a.in_points.is_some();
    let (m_sweep, n_sweep) = if from_files {
        (vec![0usize], vec![0usize]) // sizes come from the files
    } else {
        (a.m.clone(), a.n.clone())
    };
    for &m in &m_sweep {
        for &n in &n_sweep {
            let (inst, norm) = if from_files {
                load_instance(a)?
            } else {
                (gen_instance(a, m, n)?, Normalization::identity())
            };
            for &eps in &a.eps {
                let eps_work = eps * norm.scale;
                let row = one_row(a, &inst, eps, eps_work)?;
                let _ = writeln!(csv, "{row}");
            }
        }
    }
    write_out(a, &csv)
}

fn one_row(a: &CommonArgs, inst: &Inst, eps: f64, eps_work: f64) -> Result<String, AppError> {
    let (m, n) = inst.sizes();
    let algo = format!("{:?}", a.algo).to_lowercase();
    let base = format!(
        "{},{},{},{},{},{},{},{:?}",
        kind_tag(a.kind),
        algo,
        m,
        n,
        eps,
        param_column(a),
        a.seed.map(|s| s.to_string()).unwrap_or_default(),
        a.mode
    )
    .to_lowercase();

    if let Inst::Tri { pts } = inst {
        let q = triangle_query(a, eps_work)?;
        let rep = triangles::report(pts, &q)?;
        let k_filtered = rep.filtered(eps_work).len() as u64;
        let k_true = match brute_triples(pts, q.u, q.v, q.w, eps_work) {
            Ok(o) => o.count.to_string(),
            Err(e) => {
                eprintln!("warning: oracle skipped: {e}");
                String::new()
            }
        };
        return Ok(format!(
            "{base},{},{},{k_true},{k_filtered},{:.3},{:.3},{:.3}",
            rep.metrics.cells_visited,
            rep.metrics.candidates,
            rep.metrics.dup_factor(),
            rep.metrics.max_distortion,
            rep.metrics.elapsed.as_secs_f64() * 1e3,
        ));
    }

    if matches!(a.algo, Algo::Brute) {
        let oracle = match inst {
            Inst::D2 { pts, objs } => brute_pairs_2d(pts, objs, eps_work),
            Inst::D3 { pts, objs } => brute_pairs_3d(pts, objs, eps_work),
            Inst::Tri { .. } => unreachable!(),
        }
        .map_err(AppError::Budget)?;
        let k = oracle.count;
        return Ok(format!(
            "{base},0,{k},{k},{k},1.000,1.000,{:.3}",
            oracle.elapsed.as_secs_f64() * 1e3,
        ));
    }
    let rep = run_algo(a, inst, eps_work, a.mode.to_mode())?;
    let k_filtered = match a.mode {
        RunMode::Report | RunMode::Count => rep.count,
        RunMode::Candidates => rep.metrics.filtered,
    };
    let k_true = match inst {
        Inst::D2 { pts, objs } => brute_pairs_2d(pts, objs, eps_work),
        Inst::D3 { pts, objs } => brute_pairs_3d(pts, objs, eps_work),
        Inst::Tri { .. } => unreachable!(),
    };
    let k_true = match k_true {
        Ok(o) => {
            if o.count != k_filtered && !matches!(a.mode, RunMode::Candidates) {
                eprintln!(
                    "warning: filtered count {k_filtered} disagrees with the oracle {}",
                    o.count
                );
            }
            o.count.to_string()
        }
        Err(e) => {
            eprintln!("warning: oracle skipped: {e}");
            String::new()
        }
    };
    Ok(format!(
        "{base},{},{},{k_true},{k_filtered},{:.3},{:.3},{:.3}",
        rep.metrics.cells_visited,
        rep.metrics.candidates,
        rep.metrics.dup_factor(),
        rep.metrics.max_distortion,
        rep.metrics.elapsed.as_secs_f64() * 1e3,
    ))
}

fn cmd_oracle(a: &CommonArgs) -> Result<(), AppError> {
    let (inst, norm) = if a.in_points.is_some() {
        load_instance(a)?
    } else {
        (gen_instance(a, a.m[0], a.n[0])?, Normalization::identity())
    };
    let eps = a.eps[0] * norm.scale;
    let mut out = String::new();
    match &inst {
        Inst::D2 { pts, objs } => {
            let o = brute_pairs_2d(pts, objs, eps).map_err(AppError::Budget)?;
            for &(p, oi) in &o.pairs {
                let d = oracle_dist_2d(pts[p as usize], &objs[oi as usize]) / norm.scale;
                let _ = writeln!(out, "{p},{oi},{d}");
            }
        }
        Inst::D3 { pts, objs } => {
            let o = brute_pairs_3d(pts, objs, eps).map_err(AppError::Budget)?;
            for &(p, oi) in &o.pairs {
                let d = oracle_dist_3d(pts[p as usize], &objs[oi as usize]) / norm.scale;
                let _ = writeln!(out, "{p},{oi},{d}");
            }
        }
        Inst::Tri { pts } => {
            let q = triangle_query(a, eps)?;
            let o = brute_triples(pts, q.u, q.v, q.w, eps).map_err(AppError::Budget)?;
            for &(p, qq, oo) in &o.triples {
                let _ = writeln!(out, "{p},{qq},{oo}");
            }
        }
    }
    write_out(a, &out)
}

fn cmd_pairs(a: &CommonArgs) -> Result<(), AppError> {
    let (inst, norm) = if a.in_points.is_some() {
        load_instance(a)?
    } else {
        (gen_instance(a, a.m[0], a.n[0])?, Normalization::identity())
    };
    let eps = a.eps[0] * norm.scale;
    let mut out = String::new();
    if let Inst::Tri { pts } = &inst {
        let q = triangle_query(a, eps)?;
        let rep = triangles::report(pts, &q)?;
        let shown = match a.mode {
            RunMode::Candidates => rep.matches.clone(),
            _ => rep.filtered(eps),
        };
        for t in shown {
            let dev = t.dev.iter().cloned().fold(0.0f64, f64::max) / norm.scale;
            let _ = writeln!(out, "{},{},{},{dev}", t.p, t.q, t.o);
        }
        return write_out(a, &out);
    }
    let mode = match a.mode {
        RunMode::Count => Mode::Count,
        m => m.to_mode(),
    };
    let rep = run_algo(a, &inst, eps, mode)?;
    if matches!(a.mode, RunMode::Count) {
        let _ = writeln!(out, "{}", rep.count);
    } else {
        for p in &rep.pairs {
            let _ = writeln!(out, "{},{},{}", p.point, p.object, p.distance / norm.scale);
        }
    }
    write_out(a, &out)
}
