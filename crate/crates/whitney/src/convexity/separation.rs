//! Sampling checks for separation of two perturbed totally real surfaces
//! by the imaginary part of a polynomial.
//!
//! The linear theory certifies `Im p < 0` on one plane and `Im p > 0` on
//! the other with exact quadratic margins. For surfaces that bend away
//! from their tangent planes to second order, those margins dominate the
//! cubic remainders near the origin; [`surface_separation_check`] probes
//! that numerically on a lattice and reports the observed separation
//! constants. A tangential mode covers configurations where `p` maps the
//! first surface into `[0, ∞)` instead of the open lower half plane.

use super::ConvexityError;
use crate::linalg::RatMat;
use crate::poly::{GaussRat, MultiPoly, Rat};
use crate::symplectic::PolyMap;

/// A surface `{re(u) + i im(u)} ⊂ C^n` parametrized polynomially by
/// `u ∈ R^n`, passing through the origin.
#[derive(Clone, Debug)]
pub struct SurfaceGraph {
    re: PolyMap,
    im: PolyMap,
}

/// Linear map `u ↦ M u` as a polynomial map in the given variables.
fn linear_polymap(m: &RatMat, vars: &[String]) -> PolyMap {
    let comps = (0..m.nrows())
        .map(|i| {
            let mut p = MultiPoly::zero(vars);
            for j in 0..m.ncols() {
                p = p.add(&MultiPoly::var(vars, j).scale(m.at(i, j)));
            }
            p
        })
        .collect();
    PolyMap::new(comps, m.ncols())
}

fn perturbation_vanishes_to_second_order(map: &PolyMap) -> bool {
    map.components()
        .iter()
        .all(|c| c.valuation().map_or(true, |v| v >= 2))
}

impl SurfaceGraph {
    /// General constructor: both parts must be self-maps of the same
    /// dimension fixing the origin.
    pub fn new(re: PolyMap, im: PolyMap) -> Result<Self, ConvexityError> {
        let n = re.source_dim();
        if re.target_dim() != n || im.source_dim() != n || im.target_dim() != n {
            return Err(ConvexityError::DimensionMismatch(format!(
                "graph parts must be n -> n over a shared parameter, got {} -> {} and {} -> {}",
                re.source_dim(),
                re.target_dim(),
                im.source_dim(),
                im.target_dim()
            )));
        }
        if !re.fixes_origin() || !im.fixes_origin() {
            return Err(ConvexityError::BadDomain(
                "surface must pass through the origin".into(),
            ));
        }
        Ok(SurfaceGraph { re, im })
    }

    /// Graph `{x + i φ(x)}` over the real subspace; `φ` must vanish to
    /// second order so the tangent plane at the origin is `R^n` itself.
    pub fn over_real(phi: PolyMap) -> Result<Self, ConvexityError> {
        if !perturbation_vanishes_to_second_order(&phi) {
            return Err(ConvexityError::BadDomain(
                "graph perturbation must vanish to second order".into(),
            ));
        }
        let vars: Vec<String> = phi.components()[0].var_names().to_vec();
        let re = PolyMap::identity(phi.source_dim(), &vars);
        Self::new(re, phi)
    }

    /// Graph `{(A y + ψ(y)) + i y}` over the imaginary directions; `ψ`
    /// must vanish to second order so the tangent plane is `(A + iI) R^n`.
    pub fn over_imaginary(a: &RatMat, psi: PolyMap) -> Result<Self, ConvexityError> {
        if !a.is_square() {
            return Err(ConvexityError::NonSquare(a.nrows(), a.ncols()));
        }
        if a.nrows() != psi.source_dim() {
            return Err(ConvexityError::DimensionMismatch(format!(
                "matrix is {} x {} but the perturbation has {} parameters",
                a.nrows(),
                a.ncols(),
                psi.source_dim()
            )));
        }
        if !perturbation_vanishes_to_second_order(&psi) {
            return Err(ConvexityError::BadDomain(
                "graph perturbation must vanish to second order".into(),
            ));
        }
        let vars: Vec<String> = psi.components()[0].var_names().to_vec();
        let linear = linear_polymap(a, &vars);
        let re = PolyMap::new(
            linear
                .components()
                .iter()
                .zip(psi.components())
                .map(|(l, q)| l.add(q))
                .collect(),
            psi.source_dim(),
        );
        let im = PolyMap::identity(psi.source_dim(), &vars);
        Self::new(re, im)
    }

    pub fn dimension(&self) -> usize {
        self.re.source_dim()
    }

    fn eval(&self, u: &[f64]) -> (Vec<f64>, Vec<f64>) {
        (self.re.eval_f64(u), self.im.eval_f64(u))
    }
}

/// Outcome of sampling `Im p` over two surfaces near the origin.
///
/// The separation constants `c1`, `c2` normalize by the squared parameter
/// norm, so for graphs of second-order perturbations they converge to the
/// extreme eigenvalues of the tangent-plane forms as the radius shrinks.
#[derive(Clone, Debug)]
pub struct SeparationReport {
    /// Largest `Im p` over the first surface.
    pub max_im_l1: f64,
    /// Smallest `Im p` over the second surface, excluding the origin.
    pub min_im_l2: f64,
    /// Largest `Im p / |u|²` on the first surface.
    pub c1: f64,
    /// Smallest `Im p / |u|²` on the second surface.
    pub c2: f64,
    /// `Im p` vanishes and `Re p >= 0` at every sample of the first
    /// surface: `p` maps it into the closed positive real axis.
    pub l1_tangential: bool,
    /// Strict two-sided separation: `c1 < 0 < c2`.
    pub standard_pass: bool,
    /// First surface maps to `[0, ∞)`, second to the open upper half
    /// plane off the origin.
    pub tangential_pass: bool,
    /// Either separation mode holds.
    pub pass: bool,
    /// Number of lattice points evaluated per surface.
    pub samples: usize,
}

/// Absolute slack for the exact-vanishing tests in tangential mode.
const TANGENTIAL_TOL: f64 = 1e-12;

/// Cap on the total lattice size, to keep the check interactive.
const MAX_SAMPLES: usize = 10_000_000;

/// Samples `Im p` on two surfaces over the centered lattice of `grid^n`
/// cells in `[-radius, radius]^n` and reports the observed separation.
///
/// Standard mode requires `Im p <= c1 |u|² < 0` on the first surface and
/// `Im p >= c2 |u|² > 0` on the second; tangential mode instead requires
/// `p` to map the first surface into `[0, ∞)` and the second into the
/// open upper half plane off the origin.
pub fn surface_separation_check(
    l1: &SurfaceGraph,
    l2: &SurfaceGraph,
    p: &MultiPoly<GaussRat>,
    radius: f64,
    grid: usize,
) -> Result<SeparationReport, ConvexityError> {
    let n = l1.dimension();
    if l2.dimension() != n || p.nvars() != n {
        return Err(ConvexityError::DimensionMismatch(format!(
            "surfaces have dimensions {} and {} but p has {} variables",
            n,
            l2.dimension(),
            p.nvars()
        )));
    }
    if !(radius.is_finite() && radius > 0.0) || grid == 0 {
        return Err(ConvexityError::BadDomain(
            "radius must be positive and the grid nonempty".into(),
        ));
    }
    let total = (grid as u128).checked_pow(n as u32);
    if total.map_or(true, |t| t > MAX_SAMPLES as u128) {
        return Err(ConvexityError::BadDomain(format!(
            "lattice of {grid}^{n} points exceeds the sampling cap"
        )));
    }

    let step = 2.0 * radius / grid as f64;
    let mut max_im_l1 = f64::NEG_INFINITY;
    let mut min_im_l2 = f64::INFINITY;
    let mut c1 = f64::NEG_INFINITY;
    let mut c2 = f64::INFINITY;
    let mut l1_tangential = true;
    let mut samples = 0usize;

    let mut idx = vec![0usize; n];
    let mut u = vec![0.0f64; n];
    loop {
        for (ui, &ix) in u.iter_mut().zip(idx.iter()) {
            *ui = -radius + (ix as f64 + 0.5) * step;
        }
        let norm_sq: f64 = u.iter().map(|x| x * x).sum();
        if norm_sq > 0.0 {
            samples += 1;
            let (x1, y1) = l1.eval(&u);
            let (re1, im1) = p.eval_complex_f64(&x1, &y1);
            max_im_l1 = max_im_l1.max(im1);
            c1 = c1.max(im1 / norm_sq);
            if im1.abs() > TANGENTIAL_TOL || re1 < -TANGENTIAL_TOL {
                l1_tangential = false;
            }
            let (x2, y2) = l2.eval(&u);
            let (_, im2) = p.eval_complex_f64(&x2, &y2);
            min_im_l2 = min_im_l2.min(im2);
            c2 = c2.min(im2 / norm_sq);
        }
        // Odometer over the lattice.
        let mut d = 0;
        while d < n {
            idx[d] += 1;
            if idx[d] < grid {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
        if d == n {
            break;
        }
    }

    let standard_pass = c1 < 0.0 && c2 > 0.0;
    let tangential_pass = l1_tangential && min_im_l2 > 0.0;
    Ok(SeparationReport {
        max_im_l1,
        min_im_l2,
        c1,
        c2,
        l1_tangential,
        standard_pass,
        tangential_pass,
        pass: standard_pass || tangential_pass,
        samples,
    })
}

/// Zero perturbation in `n` variables named `u1..un`.
pub fn zero_perturbation(n: usize) -> PolyMap {
    let vars: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    PolyMap::new(vec![MultiPoly::<Rat>::zero(&vars); n], n)
}
