//! Numerical phase portraits of planar polynomial vector fields:
//! trajectory integration, separatrix extraction, and zero-isolation
//! probing.
//!
//! The fields of interest vanish to high order at the origin, so the
//! equilibrium is degenerate and trajectories approach it along power
//! laws rather than exponentials. An embedded Dormand-Prince 4(5) pair
//! with PI step control handles that gracefully: steps grow without
//! bound as the field decays, so power-law convergence over enormous
//! time horizons costs only a bounded number of steps per decade.
//!
//! Everything here is floating point by design; exact statements about
//! the fields (axis invariance, coefficient identities) live in the
//! symbolic layers.

use crate::foliation::VectorField2;
use crate::poly::MultiPoly;
use num::ToPrimitive;

/// Default relative-and-absolute integration tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Accepted plus rejected step cap per trajectory.
pub const MAX_STEPS: usize = 1_000_000;
/// Trajectories terminate on entering this ball around the origin.
pub const ORIGIN_RADIUS: f64 = 1e-10;
/// Time horizon for grid trajectories.
pub const T_GRID: f64 = 1e6;
/// Time horizon for separatrix shooting; power-law convergence toward a
/// degenerate equilibrium needs astronomically long (but cheap) runs.
pub const T_SEPARATRIX: f64 = 1e30;

/// A polynomial plane field flattened to `f64` terms for fast pointwise
/// evaluation.
#[derive(Clone, Debug)]
pub struct CompiledField {
    alpha: Vec<(f64, i32, i32)>,
    beta: Vec<(f64, i32, i32)>,
}

fn compile(p: &MultiPoly) -> Vec<(f64, i32, i32)> {
    p.terms()
        .map(|(m, c)| {
            (
                c.to_f64().unwrap_or(f64::NAN),
                m.0[0] as i32,
                m.0[1] as i32,
            )
        })
        .collect()
}

impl CompiledField {
    pub fn new(field: &VectorField2) -> Self {
        CompiledField {
            alpha: compile(&field.alpha),
            beta: compile(&field.beta),
        }
    }

    /// Evaluates `(alpha, beta)` at `(t, s)`.
    pub fn eval(&self, t: f64, s: f64) -> (f64, f64) {
        let horner = |terms: &[(f64, i32, i32)]| {
            terms
                .iter()
                .map(|&(c, et, es)| c * t.powi(et) * s.powi(es))
                .sum::<f64>()
        };
        (horner(&self.alpha), horner(&self.beta))
    }
}

/// Why a trajectory stopped.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Terminated {
    /// Entered the ball of radius [`ORIGIN_RADIUS`].
    ReachedOrigin,
    /// Left the configured box.
    LeftBox,
    /// Hit the step cap.
    MaxSteps,
    /// Integrated the full requested time span.
    ReachedTEnd,
    /// The error control demanded a step below the representable floor.
    StepUnderflow,
}

/// Time orientation of a run. Points always store nonnegative elapsed
/// time; the flow time is `elapsed` for forward runs and `-elapsed` for
/// backward ones.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Forward,
    Backward,
}

/// An integrated orbit: `(elapsed_time, t, s)` samples at the accepted
/// steps, in strictly increasing elapsed time.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub points: Vec<(f64, f64, f64)>,
    pub terminated: Terminated,
    pub direction: Direction,
}

impl Trajectory {
    pub fn last_point(&self) -> (f64, f64) {
        let &(_, t, s) = self.points.last().expect("trajectory has a start point");
        (t, s)
    }
}

/// Dormand-Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Difference between the 5th and embedded 4th order weights.
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

/// Integrates `(dt/dτ, ds/dτ) = sign(t_end) (alpha, beta)` from `start`
/// for elapsed time up to `|t_end|`, stopping early at the origin ball,
/// the box boundary, the step cap, or a step-size underflow.
///
/// Preconditions (asserted): `tol > 0`, `box_size > 0`, `t_end` nonzero
/// and finite, and `start` inside the closed box.
pub fn integrate(
    field: &VectorField2,
    start: (f64, f64),
    t_end: f64,
    tol: f64,
    box_size: f64,
) -> Trajectory {
    integrate_compiled(&CompiledField::new(field), start, t_end, tol, box_size)
}

pub(crate) fn integrate_compiled(
    cf: &CompiledField,
    start: (f64, f64),
    t_end: f64,
    tol: f64,
    box_size: f64,
) -> Trajectory {
    assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive");
    assert!(box_size > 0.0 && box_size.is_finite(), "box must be positive");
    assert!(t_end != 0.0 && t_end.is_finite(), "time span must be nonzero");
    assert!(
        start.0.abs() <= box_size && start.1.abs() <= box_size,
        "start must lie inside the box"
    );
    let direction = if t_end > 0.0 {
        Direction::Forward
    } else {
        Direction::Backward
    };
    let sign = if t_end > 0.0 { 1.0 } else { -1.0 };
    let horizon = t_end.abs();
    let f = |y: [f64; 2]| {
        let (a, b) = cf.eval(y[0], y[1]);
        [sign * a, sign * b]
    };

    let mut y = [start.0, start.1];
    let mut tau = 0.0f64;
    let mut points = vec![(0.0, y[0], y[1])];
    let mut k1 = f(y);

    // Initial step: conservative balance of position and speed scales.
    let speed = k1[0].hypot(k1[1]);
    let mut h = (0.01 * (1.0 + y[0].hypot(y[1])) / (speed + 1e-30)).min(horizon);
    let mut err_old = 1e-4f64;

    let terminated = loop {
        if y[0].hypot(y[1]) <= ORIGIN_RADIUS {
            break Terminated::ReachedOrigin;
        }
        if y[0].abs() > box_size || y[1].abs() > box_size {
            break Terminated::LeftBox;
        }
        if tau >= horizon || horizon - tau <= 1e-14 * (tau + 1.0) {
            break Terminated::ReachedTEnd;
        }
        if points.len() + 1 >= MAX_STEPS {
            break Terminated::MaxSteps;
        }
        let h_eff = h.min(horizon - tau);
        if h_eff <= 1e-14 * (tau + 1.0) {
            break Terminated::StepUnderflow;
        }

        // Stage evaluations.
        let mut k = [[0.0f64; 2]; 7];
        k[0] = k1;
        for stage in 0..6 {
            let mut yi = y;
            for (j, kj) in k.iter().enumerate().take(stage + 1) {
                yi[0] += h_eff * A[stage][j] * kj[0];
                yi[1] += h_eff * A[stage][j] * kj[1];
            }
            k[stage + 1] = f(yi);
        }
        // 5th order solution is the 6th stage argument (FSAL pair).
        let mut y_new = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            y_new[0] += h_eff * A[5][j] * kj[0];
            y_new[1] += h_eff * A[5][j] * kj[1];
        }
        let mut err = [0.0f64; 2];
        for (j, kj) in k.iter().enumerate() {
            err[0] += E[j] * kj[0];
            err[1] += E[j] * kj[1];
        }
        let err_norm = {
            let sc0 = tol + tol * y[0].abs().max(y_new[0].abs());
            let sc1 = tol + tol * y[1].abs().max(y_new[1].abs());
            let e0 = h_eff * err[0] / sc0;
            let e1 = h_eff * err[1] / sc1;
            (0.5 * (e0 * e0 + e1 * e1)).sqrt()
        };

        if err_norm <= 1.0 {
            tau += h_eff;
            y = y_new;
            points.push((tau, y[0], y[1]));
            k1 = k[6];
            // PI controller (accepted step).
            let fac = 0.9 * err_norm.max(1e-10).powf(-0.17) * err_old.powf(0.04);
            h = h_eff * fac.clamp(0.2, 5.0);
            err_old = err_norm.max(1e-10);
        } else {
            h = h_eff * (0.9 * err_norm.powf(-0.2)).max(0.2);
            // Rejections also count toward the cap so the loop terminates.
            if points.len() + 1 >= MAX_STEPS {
                break Terminated::MaxSteps;
            }
        }
    };

    Trajectory {
        points,
        terminated,
        direction,
    }
}

/// Integrates a deterministic lattice of seeds forward for time
/// [`T_GRID`]: the smallest `m x m` cell-centered lattice covering the
/// box with at least `n_seeds` cells, taken in row-major order.
pub fn phase_portrait_grid(field: &VectorField2, box_size: f64, n_seeds: usize) -> Vec<Trajectory> {
    assert!(n_seeds >= 1, "at least one seed");
    let cf = CompiledField::new(field);
    let m = (n_seeds as f64).sqrt().ceil() as usize;
    let step = 2.0 * box_size / m as f64;
    let mut out = Vec::with_capacity(n_seeds);
    'outer: for i in 0..m {
        for j in 0..m {
            if out.len() == n_seeds {
                break 'outer;
            }
            let t0 = -box_size + (i as f64 + 0.5) * step;
            let s0 = -box_size + (j as f64 + 0.5) * step;
            out.push(integrate_compiled(
                &cf,
                (t0, s0),
                T_GRID,
                DEFAULT_TOL,
                box_size,
            ));
        }
    }
    out
}

/// Minimum of `|(alpha, beta)|` over the punctured lattice
/// `{(i, j) box/grid : |(t, s)| >= box/grid}` in the box. A strictly
/// positive value is numerical evidence that the origin is an isolated
/// zero at the lattice resolution.
pub fn zero_isolation_probe(field: &VectorField2, box_size: f64, grid: u32) -> f64 {
    assert!(grid >= 8, "grid must be at least 8");
    assert!(box_size > 0.0, "box must be positive");
    let cf = CompiledField::new(field);
    let h = box_size / grid as f64;
    let cutoff_sq = h * h;
    let n = grid as i64;
    let mut min = f64::INFINITY;
    for i in -n..=n {
        for j in -n..=n {
            let (t, s) = (i as f64 * h, j as f64 * h);
            if t * t + s * s < cutoff_sq {
                continue;
            }
            let (a, b) = cf.eval(t, s);
            min = min.min(a.hypot(b));
        }
    }
    min
}

/// One separatrix candidate: a polyline through the exact origin built
/// from one or two converging trajectories, with the limiting angles of
/// its ends.
#[derive(Clone, Debug)]
pub struct SeparatrixArc {
    /// Points from one end through `(0, 0)` to the other end (or ending
    /// at the origin for a one-sided arc).
    pub points: Vec<(f64, f64)>,
    /// Limiting approach angles of the contributing trajectories.
    pub angles: Vec<f64>,
}

/// Separatrix extraction summary.
#[derive(Clone, Debug)]
pub struct SeparatrixReport {
    pub arcs: Vec<SeparatrixArc>,
    /// Circular means of the direction clusters, in `[0, 2π)`.
    pub cluster_angles: Vec<f64>,
    /// Seeds with at least one run converging to the origin.
    pub converging_seeds: usize,
    pub seeds: usize,
    /// More than half the seeds converge: the equilibrium attracts (or
    /// repels) a full neighborhood and direction clustering is
    /// meaningless (a node rather than a saddle-like configuration).
    pub degenerate: bool,
    /// [`zero_isolation_probe`] value recorded before shooting.
    pub probe_min: f64,
}

const SEED_COUNT: usize = 256;
const HISTOGRAM_BINS: usize = 720;

fn normalize_angle(a: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut x = a % tau;
    if x < 0.0 {
        x += tau;
    }
    x
}

/// Circular mean of angles, `[0, 2π)`.
fn circular_mean(angles: &[f64]) -> f64 {
    let (mut sx, mut sy) = (0.0, 0.0);
    for &a in angles {
        sx += a.cos();
        sy += a.sin();
    }
    normalize_angle(sy.atan2(sx))
}

/// Limiting direction of a converging trajectory: circular mean over the
/// final tenth of its points.
fn tail_angle(traj: &Trajectory) -> f64 {
    let n = traj.points.len();
    let from = n - (n / 10).max(1);
    let angles: Vec<f64> = traj.points[from..]
        .iter()
        .filter(|&&(_, t, s)| t != 0.0 || s != 0.0)
        .map(|&(_, t, s)| s.atan2(t))
        .collect();
    circular_mean(&angles)
}

/// Shoots a ring of seeds in both time directions, keeps the runs that
/// reach the origin, clusters their limiting directions with a 720-bin
/// angular histogram, and joins diametrically opposite clusters into
/// arcs through the exact origin.
///
/// The ring contains exact on-axis seeds (angles that are multiples of
/// `π/2` are special-cased to exact coordinates), so fields with
/// invariant axes converge along them bit-exactly.
pub fn separatrices(field: &VectorField2, box_size: f64) -> SeparatrixReport {
    assert!(box_size > 0.0 && box_size.is_finite(), "box must be positive");
    let probe_min = zero_isolation_probe(field, box_size, 64);
    let cf = CompiledField::new(field);
    let r = 0.9 * box_size;

    // Converging runs: (limit angle, trajectory).
    let mut converging: Vec<(f64, Trajectory)> = Vec::new();
    let mut converging_seeds = 0usize;
    for k in 0..SEED_COUNT {
        let seed = match 4 * k / SEED_COUNT {
            _ if k % (SEED_COUNT / 4) != 0 => {
                let theta = std::f64::consts::TAU * k as f64 / SEED_COUNT as f64;
                (r * theta.cos(), r * theta.sin())
            }
            0 => (r, 0.0),
            1 => (0.0, r),
            2 => (-r, 0.0),
            _ => (0.0, -r),
        };
        let mut hit = false;
        for t_end in [T_SEPARATRIX, -T_SEPARATRIX] {
            let traj = integrate_compiled(&cf, seed, t_end, DEFAULT_TOL, box_size);
            if traj.terminated == Terminated::ReachedOrigin {
                hit = true;
                converging.push((tail_angle(&traj), traj));
            }
        }
        if hit {
            converging_seeds += 1;
        }
    }

    let degenerate = converging_seeds > SEED_COUNT / 2;

    // Angular histogram clustering with wraparound.
    let mut bins: Vec<Vec<usize>> = vec![Vec::new(); HISTOGRAM_BINS];
    for (i, (angle, _)) in converging.iter().enumerate() {
        let b = ((angle / std::f64::consts::TAU) * HISTOGRAM_BINS as f64) as usize % HISTOGRAM_BINS;
        bins[b].push(i);
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut visited = vec![false; HISTOGRAM_BINS];
    for b0 in 0..HISTOGRAM_BINS {
        if visited[b0] || bins[b0].is_empty() {
            continue;
        }
        // Walk the maximal run of nonempty bins containing b0 (wrapping).
        let mut lo = b0;
        loop {
            let prev = (lo + HISTOGRAM_BINS - 1) % HISTOGRAM_BINS;
            if prev == b0 || bins[prev].is_empty() || visited[prev] {
                break;
            }
            lo = prev;
        }
        let mut members = Vec::new();
        let mut b = lo;
        while !bins[b].is_empty() && !visited[b] {
            visited[b] = true;
            members.extend(bins[b].iter().copied());
            b = (b + 1) % HISTOGRAM_BINS;
        }
        clusters.push(members);
    }

    let cluster_angles: Vec<f64> = clusters
        .iter()
        .map(|members| {
            let angles: Vec<f64> = members.iter().map(|&i| converging[i].0).collect();
            circular_mean(&angles)
        })
        .collect();

    // Representative run per cluster: closest limiting angle to the mean.
    let reps: Vec<usize> = clusters
        .iter()
        .zip(&cluster_angles)
        .map(|(members, &mean)| {
            *members
                .iter()
                .min_by(|&&a, &&b| {
                    let da = angular_distance(converging[a].0, mean);
                    let db = angular_distance(converging[b].0, mean);
                    da.partial_cmp(&db).expect("finite angles")
                })
                .expect("clusters are nonempty")
        })
        .collect();

    // Pair diametrically opposite clusters into arcs through the origin.
    let pair_tol = 10.0 * std::f64::consts::TAU / HISTOGRAM_BINS as f64;
    let mut used = vec![false; clusters.len()];
    let mut arcs = Vec::new();
    for i in 0..clusters.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let opposite = normalize_angle(cluster_angles[i] + std::f64::consts::PI);
        let partner = (0..clusters.len())
            .filter(|&j| !used[j])
            .find(|&j| angular_distance(cluster_angles[j], opposite) <= pair_tol);
        let mut points: Vec<(f64, f64)> = Vec::new();
        let half_in: Vec<(f64, f64)> = converging[reps[i]]
            .1
            .points
            .iter()
            .map(|&(_, t, s)| (t, s))
            .collect();
        points.extend(half_in.iter().copied());
        points.push((0.0, 0.0));
        let mut angles = vec![cluster_angles[i]];
        if let Some(j) = partner {
            used[j] = true;
            let half_out: Vec<(f64, f64)> = converging[reps[j]]
                .1
                .points
                .iter()
                .rev()
                .map(|&(_, t, s)| (t, s))
                .collect();
            points.extend(half_out);
            angles.push(cluster_angles[j]);
        }
        arcs.push(SeparatrixArc { points, angles });
    }

    SeparatrixReport {
        arcs,
        cluster_angles,
        converging_seeds,
        seeds: SEED_COUNT,
        degenerate,
        probe_min,
    }
}

fn angular_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(std::f64::consts::TAU - d)
}
