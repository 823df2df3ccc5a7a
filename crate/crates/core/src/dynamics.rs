//! Double-precision oracle for the torus dynamics of a hyperbolic matrix:
//! asymptotic-pair verification and translation-orbit density.
//!
//! Everything else in this crate is exact; this module deliberately is not.
//! It exists to witness the qualitative dynamical statements numerically,
//! with an explicit floating-point error budget: iteration counts are capped
//! so that accumulated rounding stays below the tolerances being tested.

use thiserror::Error;

use crate::exactfield::ExactError;
use crate::hyperbolic::{HypMatrix, Mat2Z, MatrixError};
use crate::torusparams::{alpha_translation, theta_from_eigenvectors};

/// Iteration cap: per-step error grows like the unstable eigenvalue, so 25
/// doublings of a ~1e−16 seed keeps drift under ~1e−4 even for |λ_u| ≈ 3.
pub const MAX_STEPS: u32 = 25;

/// Errors from the dynamics oracle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("step budget exceeded: n_max={0} is above the double-precision cap of {MAX_STEPS}")]
    StepBudget(u32),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A point on the unit torus, coordinates reduced to `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    x1: f64,
    x2: f64,
}

fn wrap(v: f64) -> f64 {
    let r = v.rem_euclid(1.0);
    // rem_euclid can return exactly 1.0 for tiny negative inputs.
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl TorusPoint {
    /// Reduces arbitrary finite coordinates mod 1.
    pub fn new(x1: f64, x2: f64) -> Self {
        debug_assert!(x1.is_finite() && x2.is_finite());
        TorusPoint {
            x1: wrap(x1),
            x2: wrap(x2),
        }
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }
}

/// Torus metric: the minimum over the nine adjacent lifts of the Euclidean
/// distance.  For reduced points the infimum over all lifts is attained
/// there, so the range is `[0, √2/2]`.
pub fn torus_distance(x: TorusPoint, y: TorusPoint) -> f64 {
    let mut best = f64::INFINITY;
    for dx in [-1.0, 0.0, 1.0] {
        for dy in [-1.0, 0.0, 1.0] {
            let d1 = x.x1 - y.x1 + dx;
            let d2 = x.x2 - y.x2 + dy;
            best = best.min((d1 * d1 + d2 * d2).sqrt());
        }
    }
    best
}

/// One step of the toral map: `x ↦ Ax mod 1`, reduced immediately so that
/// iteration never grows coordinate magnitudes.
pub fn apply_matrix(a: &Mat2Z, x: TorusPoint) -> TorusPoint {
    let (m1, m2) = (
        a.a as f64 * x.x1 + a.b as f64 * x.x2,
        a.c as f64 * x.x1 + a.d as f64 * x.x2,
    );
    TorusPoint::new(m1, m2)
}

/// Distance records for an asymptotic pair, forward under `A` and backward
/// under `A⁻¹`, indexed `0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub forward_dists: Vec<f64>,
    pub backward_dists: Vec<f64>,
    pub converged_forward: bool,
    pub converged_backward: bool,
}

impl AsymptoticReport {
    pub fn converged(&self) -> bool {
        self.converged_forward && self.converged_backward
    }

    /// `{"forward":[…],"backward":[…],"converged":…}`
    pub fn to_json(&self) -> String {
        let seq = |v: &[f64]| {
            let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
            format!("[{}]", parts.join(","))
        };
        format!(
            "{{\"forward\":{},\"backward\":{},\"converged\":{}}}",
            seq(&self.forward_dists),
            seq(&self.backward_dists),
            self.converged()
        )
    }

    /// CSV with header `step,forward,backward`, one row per step.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,forward,backward\n");
        for (k, (f, b)) in self
            .forward_dists
            .iter()
            .zip(&self.backward_dists)
            .enumerate()
        {
            out.push_str(&format!("{},{},{}\n", k, f, b));
        }
        out
    }
}

/// Builds the companion point `z = x + (mθ₁+nθ₃, mθ₂+nθ₄)` (eigenvector
/// route, evaluated to floats) and records the torus distance between the
/// orbits of `x` and `z`, `n_max` steps forward under `A` and backward under
/// `A⁻¹`.  Convergence flags compare the final distances against `tol`.
pub fn asymptotic_pair_report(
    a: &Mat2Z,
    x: TorusPoint,
    m: i64,
    n: i64,
    n_max: u32,
    tol: f64,
) -> Result<AsymptoticReport, DynamicsError> {
    if n_max > MAX_STEPS {
        return Err(DynamicsError::StepBudget(n_max));
    }
    let h = HypMatrix::certify(*a)?;
    let theta = theta_from_eigenvectors(&h);
    let (a1, a2) = alpha_translation(&theta, m, n);
    let z = TorusPoint::new(x.x1 + a1.to_f64()?, x.x2 + a2.to_f64()?);

    let walk = |step: Mat2Z| {
        let (mut p, mut q) = (x, z);
        let mut dists = Vec::with_capacity(n_max as usize + 1);
        dists.push(torus_distance(p, q));
        for _ in 0..n_max {
            p = apply_matrix(&step, p);
            q = apply_matrix(&step, q);
            dists.push(torus_distance(p, q));
        }
        dists
    };

    let forward_dists = walk(*a);
    let backward_dists = walk(a.inv()?);
    let converged_forward = *forward_dists.last().expect("nonempty") < tol;
    let converged_backward = *backward_dists.last().expect("nonempty") < tol;
    Ok(AsymptoticReport {
        forward_dists,
        backward_dists,
        converged_forward,
        converged_backward,
    })
}

/// Covering radius of the translation orbit `{α_{(m,n)}(x) : |m|,|n| ≤ N}`,
/// estimated as the maximum over a `grid×grid` lattice of sample points of
/// the distance to the nearest orbit point.  Non-increasing in `N` because
/// the orbit sets are nested.
pub fn orbit_density_estimate(
    a: &Mat2Z,
    x: TorusPoint,
    n_bound: i64,
    grid: u32,
) -> Result<f64, DynamicsError> {
    let h = HypMatrix::certify(*a)?;
    let theta = theta_from_eigenvectors(&h);
    let t: Vec<f64> = (1..=4)
        .map(|i| theta.theta(i).to_f64())
        .collect::<Result<_, _>>()?;

    let mut orbit = Vec::with_capacity(((2 * n_bound + 1) * (2 * n_bound + 1)) as usize);
    for m in -n_bound..=n_bound {
        for n in -n_bound..=n_bound {
            let (m, n) = (m as f64, n as f64);
            orbit.push(TorusPoint::new(
                x.x1 + m * t[0] + n * t[2],
                x.x2 + m * t[1] + n * t[3],
            ));
        }
    }

    let mut radius = 0.0f64;
    for i in 0..grid {
        for j in 0..grid {
            let sample = TorusPoint::new(i as f64 / grid as f64, j as f64 / grid as f64);
            let nearest = orbit
                .iter()
                .map(|p| torus_distance(sample, *p))
                .fold(f64::INFINITY, f64::min);
            radius = radius.max(nearest);
        }
    }
    Ok(radius)
}
