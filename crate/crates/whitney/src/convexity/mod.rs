//! Polynomial-convexity decisions for totally real planes and Lagrangian
//! graphs in `C^n`.
//!
//! Three layers, from cheap screening to constructive proof:
//!
//! * [`weinstock_decide`]: the eigenvalue criterion for a single totally
//!   real plane `(A + iI) R^n`. Floating point, with an explicit tolerance
//!   and a three-way verdict: purely imaginary eigenvalues of modulus
//!   beyond one defeat convexity, near-unit ones are flagged as boundary
//!   cases and never certified either way.
//! * [`kallin_construct`] and [`kallin_verify`]: for a plane given by a
//!   real Jordan model, a quadratic polynomial whose imaginary part
//!   strictly separates `R^n` from the plane. All arithmetic is rational
//!   and the definiteness margins are exact, so the certificate is a proof.
//! * [`surface_separation_check`] and [`symplectic_area`]: numeric probes
//!   for perturbed (nonlinear) surfaces, used to corroborate separation
//!   behaviour and to measure symplectic area of holomorphic annuli.

mod area;
mod kallin;
mod separation;

pub use area::{symplectic_area, AreaDomain, AreaReport};
pub use kallin::{
    jordan_spec_from_matrix, kallin_construct, kallin_verify, JordanBlock, KallinCertificate,
    KallinVerification, RealJordanSpec,
};
pub use separation::{surface_separation_check, zero_perturbation, SeparationReport, SurfaceGraph};

use nalgebra::DMatrix;

use crate::linalg::RatMat;
use crate::poly::PolyError;

/// Errors across the convexity layers.
#[derive(thiserror::Error, Debug)]
pub enum ConvexityError {
    #[error("matrix must be square, got {0} x {1}")]
    NonSquare(usize, usize),
    #[error("inadmissible Jordan data: {0}")]
    Inadmissible(String),
    #[error("no positive delta certified after {0} halvings")]
    DeltaExhausted(u32),
    #[error("certificate data malformed: {0}")]
    MalformedCertificate(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("component pair {0} violates the Cauchy-Riemann equations")]
    CauchyRiemannViolated(usize),
    #[error("invalid domain: {0}")]
    BadDomain(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Default relative tolerance for eigenvalue classification.
pub const DEFAULT_EIG_TOL: f64 = 1e-9;

/// Verdict of the eigenvalue screening.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConvexityVerdict {
    /// No purely imaginary eigenvalue of modulus greater than one.
    Convex,
    /// A purely imaginary eigenvalue of modulus strictly beyond one.
    NotConvex,
    /// A purely imaginary eigenvalue with modulus within tolerance of one;
    /// the strict criterion is inconclusive and no certificate is issued.
    BoundaryCase,
}

/// Screening result: the verdict, the witnessing eigenvalue when the
/// verdict is not `Convex`, and the full spectrum for the record.
#[derive(Clone, Debug)]
pub struct WeinstockReport {
    pub verdict: ConvexityVerdict,
    /// Offending eigenvalue `(re, im)`, normalized to `im > 0`.
    pub witness: Option<(f64, f64)>,
    pub eigenvalues: Vec<(f64, f64)>,
    pub tol: f64,
}

/// Decides convexity of the totally real plane `(A + iI) R^n` by the
/// spectrum of `A`.
///
/// The plane fails to be polynomially convex exactly when `A` has a purely
/// imaginary eigenvalue of modulus greater than one. `Purely imaginary`
/// means `|Re| <= tol * |A|_F`; a modulus within `tol` of one yields
/// [`ConvexityVerdict::BoundaryCase`].
pub fn weinstock_decide(a: &RatMat, tol: f64) -> Result<WeinstockReport, ConvexityError> {
    if !a.is_square() {
        return Err(ConvexityError::NonSquare(a.nrows(), a.ncols()));
    }
    let n = a.nrows();
    let rows = a.to_f64_rows();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let frob = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let eigs = m.complex_eigenvalues();
    let eigenvalues: Vec<(f64, f64)> = eigs.iter().map(|c| (c.re, c.im)).collect();

    let mut not_convex: Option<(f64, f64)> = None;
    let mut boundary: Option<(f64, f64)> = None;
    for &(re, im) in &eigenvalues {
        if re.abs() > tol * frob {
            continue;
        }
        let modulus = (re * re + im * im).sqrt();
        let witness = (re, im.abs());
        if modulus > 1.0 + tol {
            match not_convex {
                Some((r0, i0)) if (r0 * r0 + i0 * i0) >= modulus * modulus => {}
                _ => not_convex = Some(witness),
            }
        } else if (modulus - 1.0).abs() <= tol {
            boundary.get_or_insert(witness);
        }
    }
    let (verdict, witness) = if let Some(w) = not_convex {
        (ConvexityVerdict::NotConvex, Some(w))
    } else if let Some(w) = boundary {
        (ConvexityVerdict::BoundaryCase, Some(w))
    } else {
        (ConvexityVerdict::Convex, None)
    };
    Ok(WeinstockReport {
        verdict,
        witness,
        eigenvalues,
        tol,
    })
}

/// A graph plane `(A + iI) R^n` is Lagrangian exactly when `A` is
/// symmetric; checked exactly.
pub fn is_lagrangian_graph(a: &RatMat) -> bool {
    a.is_symmetric()
}
