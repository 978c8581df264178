//! Local-algebra invariants of planar vector-field germs: truncated
//! quotient dimensions, the jet-level dimension test, certified algebraic
//! multiplicity, and a numeric Lojasiewicz-exponent probe.
//!
//! For a germ `X = (X_1, X_2)` vanishing at the origin, the central object
//! is the quotient of the formal power-series ring by the ideal generated
//! by the components. Working at truncation order `k` makes everything
//! finite: the quotient dimension `tau_k` is a rank computation over the
//! rationals, hence exact. Multiplicity is certified, never guessed: a
//! Nakayama-style criterion (every monomial of degree `k + 1` lies in the
//! truncated generator span at level `k + 1`) proves that the ideal
//! swallows the whole power `M^{k+1}` of the maximal ideal, at which point
//! `tau_k` equals the multiplicity.

use crate::foliation::VectorField2;
use crate::linalg::RowEchelon;
use crate::poly::{monomial_basis, MultiPoly, Rat};

/// Dimension of the local algebra truncated at order `k`:
/// the codimension of `span{trunc(m X_i, k) : deg m <= k}` inside the
/// space of polynomials of degree at most `k`.
///
/// Depends only on the `k`-jet of the field. `k >= 1` required.
pub fn local_algebra_dim(field: &VectorField2, k: u32) -> usize {
    assert!(k >= 1, "truncation order must be at least 1");
    let basis = monomial_basis(2, k);
    let ech = generator_span(field, k);
    basis.len() - ech.rank()
}

/// Row-echelon span of `trunc(m X_i, level)` over all monomials `m` of
/// degree at most `level`, in coordinates indexed by `monomial_basis`.
fn generator_span(field: &VectorField2, level: u32) -> RowEchelon {
    let basis = monomial_basis(2, level);
    let index: std::collections::BTreeMap<_, _> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut ech = RowEchelon::new(basis.len());
    let vars = field.alpha.var_names();
    for m in &basis {
        let mono = MultiPoly::from_terms(vars, vec![(m.0.clone(), Rat::from_integer(1.into()))]);
        for comp in [&field.alpha, &field.beta] {
            let prod = mono.mul_trunc(comp, level);
            if prod.is_zero() {
                continue;
            }
            let mut row = vec![Rat::from_integer(0.into()); basis.len()];
            for (mm, c) in prod.terms() {
                row[index[mm]] = c.clone();
            }
            ech.insert(row);
        }
    }
    ech
}

/// The jet-level dimension test: true when `tau_k(X) > k - 1`, the closed
/// algebraic condition under which the `k`-jet fails to witness finite
/// multiplicity.
pub fn exceeds_dim_bound(field: &VectorField2, k: u32) -> bool {
    local_algebra_dim(field, k) > (k as usize).saturating_sub(1)
}

/// Outcome of the certified multiplicity search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplicityReport {
    /// `(k, tau_k)` for every order tried, in increasing `k`.
    pub tau_sequence: Vec<(u32, usize)>,
    /// First order at which the Nakayama criterion held.
    pub certified_at: Option<u32>,
    /// The algebraic multiplicity `dim C[[t, s]] / <X_1, X_2>`, present
    /// exactly when certification succeeded.
    pub mu0: Option<usize>,
    /// The search budget that was used.
    pub k_max: u32,
}

/// Checks the ideal-saturation certificate at order `k`: every monomial of
/// degree exactly `k + 1` must lie, literally, in the span of the
/// generators truncated at level `k + 1`.
fn nakayama_certificate(field: &VectorField2, k: u32) -> bool {
    let level = k + 1;
    let basis = monomial_basis(2, level);
    let index: std::collections::BTreeMap<_, _> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let ech = generator_span(field, level);
    basis
        .iter()
        .filter(|m| m.degree() == level)
        .all(|m| {
            let mut v = vec![Rat::from_integer(0.into()); basis.len()];
            v[index[m]] = Rat::from_integer(1.into());
            ech.contains(&v)
        })
}

/// Searches orders `k = 1..=k_max` for a certified multiplicity.
///
/// Exhausting the budget is reported in the result, not an error: the
/// caller sees the whole `tau` sequence either way.
pub fn multiplicity(field: &VectorField2, k_max: u32) -> MultiplicityReport {
    assert!(k_max >= 2, "multiplicity search needs k_max >= 2");
    let mut tau_sequence = Vec::new();
    let mut certified_at = None;
    let mut mu0 = None;
    for k in 1..=k_max {
        let tau = local_algebra_dim(field, k);
        tau_sequence.push((k, tau));
        if certified_at.is_none() && nakayama_certificate(field, k) {
            certified_at = Some(k);
            mu0 = Some(tau);
            // Later tau values are frozen at mu0; stop early.
            break;
        }
    }
    MultiplicityReport {
        tau_sequence,
        certified_at,
        mu0,
        k_max,
    }
}

/// Default search budget: generous for cubic germs, still instant.
pub const DEFAULT_K_MAX: u32 = 12;

/// One row per radius: the minimum of `|X|` over the circle and the radius
/// itself, with the overall fitted exponent.
#[derive(Clone, PartialEq, Debug)]
pub struct LojasiewiczProbe {
    /// `(r, min |X| on the circle of radius r)`.
    pub rows: Vec<(f64, f64)>,
    /// Least-squares slope of `log min |X|` against `log r`.
    pub exponent: f64,
}

/// Samples `|X|` on circles and fits the growth exponent of the minimum.
///
/// Purely numeric and heuristic, meant to corroborate the exact
/// multiplicity computations, not to replace them.
pub fn lojasiewicz_probe(field: &VectorField2, radii: &[f64], n_angles: usize) -> LojasiewiczProbe {
    assert!(radii.len() >= 2, "need at least two radii to fit a slope");
    assert!(n_angles >= 8, "need a reasonable angular resolution");
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut min_norm = f64::INFINITY;
        for i in 0..n_angles {
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (n_angles as f64);
            let (a, b) = field.eval_f64(r * theta.cos(), r * theta.sin());
            let norm = (a * a + b * b).sqrt();
            if norm < min_norm {
                min_norm = norm;
            }
        }
        rows.push((r, min_norm));
    }
    // Ordinary least squares on the log-log cloud.
    let n = rows.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (r, m) in &rows {
        let (x, y) = (r.ln(), m.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    LojasiewiczProbe { rows, exponent }
}

/// Geometrically spaced radii from `r_max` down to `r_min`.
pub fn geometric_radii(r_min: f64, r_max: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && r_min > 0.0 && r_max > r_min);
    let ratio = (r_min / r_max).powf(1.0 / ((count - 1) as f64));
    (0..count).map(|i| r_max * ratio.powi(i as i32)).collect()
}
