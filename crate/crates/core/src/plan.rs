//! Grid-size planning: given input sizes and the tolerance, choose the
//! primal and dual cell scales (or fall back to a single grid on whichever
//! side is cheaper) so the two-stage overhead is balanced.

use crate::error::ParamError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanStrategy {
    /// Coarse primal grid, then a dual grid per primal cell.
    PrimalDual,
    /// One grid over the points, objects probe it (the naive layout).
    PrimalOnly,
    /// One grid over the dualized objects, dual points probe it.
    DualOnly,
    /// Nothing to do (an empty side).
    Empty,
}

/// Chosen cell scales. `d1 * d2` equals the tolerance (times the
/// profile-specific constant); `swapped` records whether the pipeline runs
/// on the dualized instance with roles exchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPlan {
    pub d1: f64,
    pub d2: f64,
    pub strategy: PlanStrategy,
    pub swapped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemProfile {
    /// 2D point-line: d1 = sqrt(n eps / m).
    PointLine2,
    /// 3D point-plane: d1 = (n eps^2 / m)^(1/4).
    PointPlane3,
    /// 3D point-line via the 4D dual: d1 = (eps^2 n / m)^(1/3), d2 <= 1/sqrt(2).
    PointLine3,
    /// Congruent pairs in 2D by polar duality: d1 d2 = sqrt(2) eps,
    /// d1 <= r/10; the primal stage is skipped when m/n <= 100 eps / r^2.
    CongruentDual2 { r: f64 },
    /// Arbitrary circles by power + lifting: d1 = (eps^2 n / m)^(1/3) < r_lo.
    CirclePower { r_lo: f64 },
}

impl DeltaPlan {
    fn empty() -> DeltaPlan {
        DeltaPlan {
            d1: 0.0,
            d2: 0.0,
            strategy: PlanStrategy::Empty,
            swapped: false,
        }
    }
}

/// Plan the grid scales for `m` points and `n` objects at tolerance `eps`.
pub fn plan_deltas(
    m: usize,
    n: usize,
    eps: f64,
    profile: ProblemProfile,
) -> Result<DeltaPlan, ParamError> {
    crate::geom::validate_eps(eps, 0.5)?;
    if m == 0 || n == 0 {
        return Ok(DeltaPlan::empty());
    }
    let (mf, nf) = (m as f64, n as f64);
    Ok(match profile {
        ProblemProfile::PointLine2 => {
            // Keep the point side no larger than the object side so the
            // primal cell stays above sqrt(2) eps.
            let swapped = m > n;
            let (a, b) = if swapped { (nf, mf) } else { (mf, nf) };
            let d1 = (b * eps / a).sqrt();
            if d1 <= 1.0 {
                DeltaPlan {
                    d1,
                    d2: (a * eps / b).sqrt(),
                    strategy: PlanStrategy::PrimalDual,
                    swapped,
                }
            } else if swapped {
                // Objects are scarce: a single grid over the points suffices.
                DeltaPlan {
                    d1: eps,
                    d2: 0.0,
                    strategy: PlanStrategy::PrimalOnly,
                    swapped: false,
                }
            } else {
                DeltaPlan {
                    d1: 0.0,
                    d2: eps,
                    strategy: PlanStrategy::DualOnly,
                    swapped: false,
                }
            }
        }
        ProblemProfile::PointPlane3 => {
            let swapped = m > n;
            let (a, b) = if swapped { (nf, mf) } else { (mf, nf) };
            let d1 = (b * eps * eps / a).powf(0.25);
            if d1 <= 1.0 {
                DeltaPlan {
                    d1,
                    d2: (a * eps * eps / b).powf(0.25),
                    strategy: PlanStrategy::PrimalDual,
                    swapped,
                }
            } else if swapped {
                DeltaPlan {
                    d1: eps,
                    d2: 0.0,
                    strategy: PlanStrategy::PrimalOnly,
                    swapped: false,
                }
            } else {
                DeltaPlan {
                    d1: 0.0,
                    d2: eps,
                    strategy: PlanStrategy::DualOnly,
                    swapped: false,
                }
            }
        }
        ProblemProfile::PointLine3 => {
            let d1 = (eps * eps * nf / mf).cbrt();
            let d2 = (eps * mf / nf).cbrt();
            if d1 > 1.0 {
                DeltaPlan {
                    d1: 0.0,
                    d2: eps,
                    strategy: PlanStrategy::DualOnly,
                    swapped: false,
                }
            } else if d2 > std::f64::consts::FRAC_1_SQRT_2 {
                DeltaPlan {
                    d1: eps,
                    d2: 0.0,
                    strategy: PlanStrategy::PrimalOnly,
                    swapped: false,
                }
            } else {
                DeltaPlan {
                    d1,
                    d2,
                    strategy: PlanStrategy::PrimalDual,
                    swapped: false,
                }
            }
        }
        ProblemProfile::CongruentDual2 { r } => {
            // The pair relation is symmetric, so order the sides first.
            let swapped = m > n;
            let (a, b) = if swapped { (nf, mf) } else { (mf, nf) };
            if a / b <= 100.0 * eps / (r * r) {
                // Skip the primal stage; probe annuli on a plain eps-grid.
                return Ok(DeltaPlan {
                    d1: 0.0,
                    d2: eps,
                    strategy: PlanStrategy::DualOnly,
                    swapped,
                });
            }
            let s2eps = std::f64::consts::SQRT_2 * eps;
            let d1 = (2.0 * b * eps / a).sqrt().min(r / 10.0);
            let d2 = s2eps / d1;
            DeltaPlan {
                d1,
                d2,
                strategy: PlanStrategy::PrimalDual,
                swapped,
            }
        }
        ProblemProfile::CirclePower { r_lo } => {
            let d2 = (eps * mf / nf).cbrt();
            if d2 > 1.0 {
                // Fewer circles than m*eps: one grid over the points.
                return Ok(DeltaPlan {
                    d1: eps,
                    d2: 0.0,
                    strategy: PlanStrategy::PrimalOnly,
                    swapped: false,
                });
            }
            let d1 = (eps * eps * nf / mf).cbrt();
            if d1 >= r_lo {
                // Primal cells would swallow whole circles: run the lifted
                // dual stage over the full data.
                DeltaPlan {
                    d1: 0.0,
                    d2: eps,
                    strategy: PlanStrategy::DualOnly,
                    swapped: false,
                }
            } else {
                DeltaPlan {
                    d1,
                    d2,
                    strategy: PlanStrategy::PrimalDual,
                    swapped: false,
                }
            }
        }
    })
}
