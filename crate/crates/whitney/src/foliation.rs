//! The open Whitney umbrella in `R^4`, its defining function, and the exact
//! characteristic vector field of its image under a polynomial
//! symplectomorphism.
//!
//! The umbrella is parametrized by `pi(t, s) = (t s, 2 t^3 / 3, t^2, s)` in
//! the coordinates `(x, u, y, v)`. For a polynomial symplectomorphism `phi`
//! fixing the origin, a complex-linear normalizer `psi` is applied first, so
//! the composite `g = psi . phi` has linear part `[[I, 0], [E, G]]`, and the
//! characteristic direction of the image `g(pi)` is pulled back to the
//! parameter plane. Because the Jacobian determinant of `g` is the nonzero
//! constant `det psi`, the pullback is itself polynomial, with exact
//! rational coefficients:
//!
//! * `W = cof(Dg . pi) * (grad rho . pi) / det psi` is the transported
//!   normal direction (`cof` is the cofactor matrix),
//! * `alpha = <J d_s f, W>` and `beta = -<J d_t f, W>` with `f = g . pi`
//!   and `J` the complex structure.
//!
//! The plane field `ker(omega restricted)` along the image surface then
//! corresponds to the direction field `alpha d_t + beta d_s` on the
//! parameter plane.

use num::traits::Zero;

use crate::poly::{
    jet_reciprocal, rat, ratq, Jet, MultiPoly, PolyError, Rat, DEFAULT_TERM_CAP,
};
use crate::symplectic::{
    build_normalizer, symplectic_defect, BlockDecomposition, PolyMap, SymplecticError, R4_VARS,
};

/// Parameter names of the umbrella chart.
pub const PARAM_VARS: [&str; 2] = ["t", "s"];

/// Errors from characteristic-field computations.
#[derive(thiserror::Error, Debug)]
pub enum FoliationError {
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("Jacobian determinant is not constant")]
    NonconstantJacobian,
    #[error("map fails to be symplectic at jet order {0}")]
    DefectNotZero(u32),
    #[error("characteristic field has terms below degree 2; input violates the normal form")]
    LowOrderBreakdown,
    #[error(
        "inconsistent coefficient readings: g12 = {from_alpha} from alpha, {from_beta} from beta"
    )]
    InconsistentG12 {
        from_alpha: String,
        from_beta: String,
    },
}

/// The standard parametrization `(t, s) -> (t s, 2 t^3 / 3, t^2, s)`.
pub fn umbrella_param() -> PolyMap {
    let x = MultiPoly::from_terms(&PARAM_VARS, vec![(vec![1, 1], rat(1))]);
    let u = MultiPoly::from_terms(&PARAM_VARS, vec![(vec![3, 0], ratq(2, 3))]);
    let y = MultiPoly::from_terms(&PARAM_VARS, vec![(vec![2, 0], rat(1))]);
    let s = MultiPoly::var(&PARAM_VARS, 1);
    PolyMap::new(vec![x, u, y, s], 2)
}

/// The defining function `rho = x^2 - y v^2 + (9/4) u^2 - y^3`, which
/// vanishes identically on the umbrella.
pub fn umbrella_defining() -> MultiPoly<Rat> {
    MultiPoly::from_terms(
        &R4_VARS,
        vec![
            (vec![2, 0, 0, 0], rat(1)),
            (vec![0, 0, 1, 2], rat(-1)),
            (vec![0, 2, 0, 0], ratq(9, 4)),
            (vec![0, 0, 3, 0], rat(-1)),
        ],
    )
}

/// Gradient of [`umbrella_defining`] as a polynomial map of `R^4`.
pub fn umbrella_gradient() -> PolyMap {
    let rho = umbrella_defining();
    PolyMap::new((0..4).map(|i| rho.diff(i)).collect(), 4)
}

/// A polynomial vector field `alpha d_t + beta d_s` on the parameter plane,
/// vanishing at the origin.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField2 {
    pub alpha: MultiPoly<Rat>,
    pub beta: MultiPoly<Rat>,
}

impl VectorField2 {
    pub fn new(alpha: MultiPoly<Rat>, beta: MultiPoly<Rat>) -> Result<Self, FoliationError> {
        if alpha.nvars() != 2 || beta.nvars() != 2 {
            return Err(FoliationError::Poly(PolyError::VarMismatch {
                expected: 2,
                found: alpha.nvars().max(beta.nvars()),
            }));
        }
        if !alpha.coeff(&[0, 0]).is_zero() || !beta.coeff(&[0, 0]).is_zero() {
            return Err(FoliationError::LowOrderBreakdown);
        }
        Ok(VectorField2 { alpha, beta })
    }

    pub fn eval_f64(&self, t: f64, s: f64) -> (f64, f64) {
        (self.alpha.eval_f64(&[t, s]), self.beta.eval_f64(&[t, s]))
    }

    /// Componentwise truncation.
    pub fn truncate(&self, max_degree: u32) -> VectorField2 {
        VectorField2 {
            alpha: self.alpha.truncate(max_degree),
            beta: self.beta.truncate(max_degree),
        }
    }
}

// Polynomial matrix minors. `trunc` selects truncated arithmetic for the
// jet route; `None` is exact with the default term cap.

fn pmul(
    a: &MultiPoly<Rat>,
    b: &MultiPoly<Rat>,
    trunc: Option<u32>,
) -> Result<MultiPoly<Rat>, PolyError> {
    match trunc {
        Some(k) => Ok(a.mul_trunc(b, k)),
        None => a.mul_with_cap(b, DEFAULT_TERM_CAP),
    }
}

fn det2(
    m: [[&MultiPoly<Rat>; 2]; 2],
    trunc: Option<u32>,
) -> Result<MultiPoly<Rat>, PolyError> {
    Ok(pmul(m[0][0], m[1][1], trunc)?.sub(&pmul(m[0][1], m[1][0], trunc)?))
}

fn det3(
    m: [[&MultiPoly<Rat>; 3]; 3],
    trunc: Option<u32>,
) -> Result<MultiPoly<Rat>, PolyError> {
    // Expand along the row with the fewest stored terms.
    let row_weight =
        |i: usize| -> usize { (0..3).map(|j| m[i][j].num_terms()).sum() };
    let i0 = (0..3).min_by_key(|&i| row_weight(i)).unwrap();
    let rows: Vec<usize> = (0..3).filter(|&r| r != i0).collect();
    let mut acc = MultiPoly::zero(m[0][0].var_names());
    for j0 in 0..3 {
        if m[i0][j0].is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..3).filter(|&c| c != j0).collect();
        let minor = det2(
            [
                [m[rows[0]][cols[0]], m[rows[0]][cols[1]]],
                [m[rows[1]][cols[0]], m[rows[1]][cols[1]]],
            ],
            trunc,
        )?;
        let term = pmul(m[i0][j0], &minor, trunc)?;
        if (i0 + j0) % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    Ok(acc)
}

fn minor3(
    m: &[Vec<MultiPoly<Rat>>],
    skip_row: usize,
    skip_col: usize,
    trunc: Option<u32>,
) -> Result<MultiPoly<Rat>, PolyError> {
    let rows: Vec<usize> = (0..4).filter(|&r| r != skip_row).collect();
    let cols: Vec<usize> = (0..4).filter(|&c| c != skip_col).collect();
    det3(
        [
            [&m[rows[0]][cols[0]], &m[rows[0]][cols[1]], &m[rows[0]][cols[2]]],
            [&m[rows[1]][cols[0]], &m[rows[1]][cols[1]], &m[rows[1]][cols[2]]],
            [&m[rows[2]][cols[0]], &m[rows[2]][cols[1]], &m[rows[2]][cols[2]]],
        ],
        trunc,
    )
}

/// Determinant of a `4 x 4` polynomial matrix, expanding along the lightest
/// row.
fn det4(m: &[Vec<MultiPoly<Rat>>], trunc: Option<u32>) -> Result<MultiPoly<Rat>, PolyError> {
    let row_weight =
        |i: usize| -> usize { (0..4).map(|j| m[i][j].num_terms()).sum() };
    let i0 = (0..4).min_by_key(|&i| row_weight(i)).unwrap();
    let mut acc = MultiPoly::zero(m[0][0].var_names());
    for j0 in 0..4 {
        if m[i0][j0].is_zero() {
            continue;
        }
        let term = pmul(&m[i0][j0], &minor3(m, i0, j0, trunc)?, trunc)?;
        if (i0 + j0) % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    Ok(acc)
}

/// Cofactor matrix: `cof[i][j] = (-1)^{i+j} det(minor_{ij})`; the product
/// `cof * v` realizes `adj(M)^T v` without materializing the transpose.
fn cofactor4(
    m: &[Vec<MultiPoly<Rat>>],
    trunc: Option<u32>,
) -> Result<Vec<Vec<MultiPoly<Rat>>>, PolyError> {
    let mut out = Vec::with_capacity(4);
    for i in 0..4 {
        let mut row = Vec::with_capacity(4);
        for j in 0..4 {
            let mut c = minor3(m, i, j, trunc)?;
            if (i + j) % 2 == 1 {
                c = c.neg();
            }
            row.push(c);
        }
        out.push(row);
    }
    Ok(out)
}

/// Applies the complex structure `J(a, b, c, d) = (-c, -d, a, b)` to a
/// 4-vector of polynomials.
fn apply_j(v: &[MultiPoly<Rat>]) -> Vec<MultiPoly<Rat>> {
    vec![v[2].neg(), v[3].neg(), v[0].clone(), v[1].clone()]
}

fn dot4(
    a: &[MultiPoly<Rat>],
    b: &[MultiPoly<Rat>],
    trunc: Option<u32>,
) -> Result<MultiPoly<Rat>, PolyError> {
    let mut acc = MultiPoly::zero(a[0].var_names());
    for i in 0..4 {
        acc = acc.add(&pmul(&a[i], &b[i], trunc)?);
    }
    Ok(acc)
}

struct NormalizedData {
    /// Components of `g = psi . phi`.
    g: PolyMap,
    det_psi: Rat,
}

/// Validates the origin and block conditions and forms `g = psi . phi`.
fn normalize(phi: &PolyMap) -> Result<NormalizedData, FoliationError> {
    let blocks = BlockDecomposition::from_map(phi)?;
    let psi = build_normalizer(&blocks);
    let det_psi = psi.det();
    debug_assert!(!det_psi.is_zero());
    let mut comps = Vec::with_capacity(4);
    for i in 0..4 {
        let mut c = MultiPoly::zero(phi.source_vars());
        for j in 0..4 {
            c = c.add(&phi.component(j).scale(psi.at(i, j)));
        }
        comps.push(c);
    }
    Ok(NormalizedData {
        g: PolyMap::new(comps, 4),
        det_psi,
    })
}

fn compose_with_param(
    m: &[Vec<MultiPoly<Rat>>],
    pi: &PolyMap,
    trunc: Option<u32>,
) -> Result<Vec<Vec<MultiPoly<Rat>>>, PolyError> {
    let args: Vec<MultiPoly<Rat>> = pi.components().to_vec();
    m.iter()
        .map(|row| {
            row.iter()
                .map(|e| match trunc {
                    Some(k) => e.compose_trunc(&args, k),
                    None => e.compose(&args, DEFAULT_TERM_CAP),
                })
                .collect()
        })
        .collect()
}

/// The exact characteristic field of the image umbrella `phi(pi)`.
///
/// Preconditions checked: `phi` is a self-map of `R^4` fixing the origin,
/// its linear part satisfies the symplectic block relations, and the
/// Jacobian determinant of `phi` is constant as a polynomial (for a
/// symplectic linear part the constant is then `1`).
pub fn characteristic_field(phi: &PolyMap) -> Result<VectorField2, FoliationError> {
    let data = normalize(phi)?;
    let dphi = phi.jacobian();
    let det = det4(&dphi, None)?;
    if det.degree().map_or(false, |d| d > 0) {
        return Err(FoliationError::NonconstantJacobian);
    }
    field_from_normalized(&data, None).map(|(a, b)| VectorField2 {
        alpha: a,
        beta: b,
    })
}

/// Shared exact/jet pipeline. With `trunc = Some(k)` every intermediate is
/// truncated at `k + 1` or `k` as precision requires, and the Jacobian
/// determinant is inverted as a jet; with `None` the determinant is the
/// constant `det psi` and arithmetic is exact.
fn field_from_normalized(
    data: &NormalizedData,
    trunc: Option<u32>,
) -> Result<(MultiPoly<Rat>, MultiPoly<Rat>), FoliationError> {
    let pi = umbrella_param();
    let f = match trunc {
        Some(k) => data.g.compose_trunc(&pi, k + 1)?,
        None => data.g.compose(&pi, DEFAULT_TERM_CAP)?,
    };
    let ft: Vec<MultiPoly<Rat>> = f.components().iter().map(|c| c.diff(0)).collect();
    let fs: Vec<MultiPoly<Rat>> = f.components().iter().map(|c| c.diff(1)).collect();

    let dg = data.g.jacobian();
    let m = compose_with_param(&dg, &pi, trunc)?;
    let n: Vec<MultiPoly<Rat>> = umbrella_gradient()
        .compose(&pi, DEFAULT_TERM_CAP)?
        .components()
        .to_vec();

    let cof = cofactor4(&m, trunc)?;
    // W_i = sum_j cof[i][j] N_j, then divide by the determinant: the exact
    // constant det psi, or the jet inverse of det(M) on the jet route.
    let mut w = Vec::with_capacity(4);
    for i in 0..4 {
        let mut acc = MultiPoly::zero(n[0].var_names());
        for j in 0..4 {
            acc = acc.add(&pmul(&cof[i][j], &n[j], trunc)?);
        }
        w.push(acc);
    }
    match trunc {
        Some(k) => {
            let detm = det4(&m, trunc)?;
            let r = jet_reciprocal(&Jet::new(detm, k))
                .map_err(FoliationError::Poly)?;
            for wi in w.iter_mut() {
                *wi = wi.mul_trunc(r.poly(), k);
            }
        }
        None => {
            let inv = rat(1) / data.det_psi.clone();
            for wi in w.iter_mut() {
                *wi = wi.scale(&inv);
            }
        }
    }

    let alpha = dot4(&apply_j(&fs), &w, trunc)?;
    let beta = dot4(&apply_j(&ft), &w, trunc)?.neg();
    let (alpha, beta) = match trunc {
        Some(k) => (alpha.truncate(k), beta.truncate(k)),
        None => (alpha, beta),
    };
    if alpha.valuation().map_or(false, |v| v < 2)
        || beta.valuation().map_or(false, |v| v < 2)
    {
        return Err(FoliationError::LowOrderBreakdown);
    }
    Ok((alpha, beta))
}

/// Order-`k` jet of the characteristic field computed from the
/// `(k + 1)`-jet of `phi` alone, inverting the Jacobian determinant as a
/// truncated series.
///
/// Preconditions: as for [`characteristic_field`], with the determinant
/// condition replaced by vanishing of the symplectic defect jets at order
/// `k`, which is all the truncated data can see.
pub fn jet_foliation(phi: &PolyMap, k: u32) -> Result<(Jet<Rat>, Jet<Rat>), FoliationError> {
    let defect = symplectic_defect(phi, k)?;
    if !defect.is_zero() {
        return Err(FoliationError::DefectNotZero(k));
    }
    let truncated = phi.truncate(k + 1);
    let data = normalize(&truncated)?;
    let (alpha, beta) = field_from_normalized(&data, Some(k))?;
    Ok((Jet::new(alpha, k), Jet::new(beta, k)))
}

/// Closed form of the characteristic field of the unperturbed umbrella:
/// `alpha = -3t^3 - t s^2 - 3t^5`, `beta = s^3 + 4t^2 s + 7t^4 s`.
///
/// This is what [`characteristic_field`] returns at the identity map; it
/// is kept as an explicit constant so callers (and the self-test) can
/// compare against it without rerunning the pipeline.
pub fn standard_umbrella_field() -> VectorField2 {
    VectorField2 {
        alpha: MultiPoly::from_int_terms(&PARAM_VARS, &[(&[3, 0], -3), (&[1, 2], -1), (&[5, 0], -3)]),
        beta: MultiPoly::from_int_terms(&PARAM_VARS, &[(&[0, 3], 1), (&[2, 1], 4), (&[4, 1], 7)]),
    }
}

/// The coefficients that govern the lowest-order behaviour of the
/// characteristic field of a normalized map: entries of the lower-right
/// block `G` of the normalized linear part, and the three free cubic
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SystemCoefficients {
    pub g11: Rat,
    pub g12: Rat,
    pub g22: Rat,
    pub a02: Rat,
    pub b12: Rat,
    pub b03: Rat,
    /// All three free cubic coefficients nonzero.
    pub generic: bool,
}

/// Result of reading the template coefficients off a planar field, with
/// everything the template does not explain reported verbatim.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoefficientExtraction {
    pub coefficients: SystemCoefficients,
    /// Second reading of `g12` from the `t^4` coefficient of `beta`, when
    /// that coefficient is nonzero.
    pub g12_from_beta: Option<Rat>,
    /// True when the two readings agree or the second is absent with
    /// `g12 == 0`.
    pub g12_consistent: bool,
    /// Low-order terms of `alpha` (degree <= 3) the template does not read.
    pub residual_alpha: MultiPoly<Rat>,
    /// Low-order terms of `beta` (degree <= 4) the template does not read.
    pub residual_beta: MultiPoly<Rat>,
}

/// Reads the low-order template
/// `alpha = -2 g12 t s + a02 s^2 - 3 g22 t^3 + ...`,
/// `beta = 4 g11 t^2 s + b12 t s^2 + b03 s^3 + 6 g12 t^4 + ...`
/// off a planar field.
///
/// Fails only when the two available readings of `g12` are both present and
/// disagree; all unread low-order terms are returned as residuals rather
/// than interpreted.
pub fn extract_system_coefficients(
    field: &VectorField2,
) -> Result<CoefficientExtraction, FoliationError> {
    let a = &field.alpha;
    let b = &field.beta;
    let g12 = -a.coeff(&[1, 1]) / rat(2);
    let a02 = a.coeff(&[0, 2]);
    let g22 = -a.coeff(&[3, 0]) / rat(3);
    let g11 = b.coeff(&[2, 1]) / rat(4);
    let b12 = b.coeff(&[1, 2]);
    let b03 = b.coeff(&[0, 3]);
    let beta_t4 = b.coeff(&[4, 0]);

    let g12_from_beta = if beta_t4.is_zero() {
        None
    } else {
        Some(beta_t4.clone() / rat(6))
    };
    let g12_consistent = match &g12_from_beta {
        Some(r) => *r == g12,
        None => g12.is_zero(),
    };
    if let Some(r) = &g12_from_beta {
        if *r != g12 {
            return Err(FoliationError::InconsistentG12 {
                from_alpha: g12.to_string(),
                from_beta: r.to_string(),
            });
        }
    }

    let mut residual_alpha = a.truncate(3);
    for e in [[1u32, 1], [0, 2], [3, 0]] {
        let c = residual_alpha.coeff(&e);
        residual_alpha = residual_alpha.sub(&MultiPoly::from_terms(
            a.var_names(),
            vec![(e.to_vec(), c)],
        ));
    }
    let mut residual_beta = b.truncate(4);
    for e in [[2u32, 1], [1, 2], [0, 3], [4, 0]] {
        let c = residual_beta.coeff(&e);
        residual_beta = residual_beta.sub(&MultiPoly::from_terms(
            b.var_names(),
            vec![(e.to_vec(), c)],
        ));
    }

    let generic = !a02.is_zero() && !b12.is_zero() && !b03.is_zero();
    Ok(CoefficientExtraction {
        coefficients: SystemCoefficients {
            g11,
            g12,
            g22,
            a02,
            b12,
            b03,
            generic,
        },
        g12_from_beta,
        g12_consistent,
        residual_alpha,
        residual_beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{henon_map, HenonSpec};

    /// The hand-checked field of the standard umbrella.
    fn golden_field() -> VectorField2 {
        standard_umbrella_field()
    }

    #[test]
    fn umbrella_lies_on_zero_set() {
        let pulled = umbrella_defining()
            .compose(&umbrella_param().components().to_vec(), DEFAULT_TERM_CAP)
            .unwrap();
        assert!(pulled.is_zero());
    }

    #[test]
    fn gradient_pulls_back_to_known_form() {
        let g = umbrella_gradient()
            .compose(&umbrella_param(), DEFAULT_TERM_CAP)
            .unwrap();
        assert_eq!(
            g.component(0),
            &MultiPoly::from_int_terms(&PARAM_VARS, &[(&[1, 1], 2)])
        );
        assert_eq!(
            g.component(1),
            &MultiPoly::from_int_terms(&PARAM_VARS, &[(&[3, 0], 3)])
        );
        assert_eq!(
            g.component(2),
            &MultiPoly::from_int_terms(&PARAM_VARS, &[(&[0, 2], -1), (&[4, 0], -3)])
        );
        assert_eq!(
            g.component(3),
            &MultiPoly::from_int_terms(&PARAM_VARS, &[(&[2, 1], -2)])
        );
    }

    #[test]
    fn identity_gives_golden_field() {
        let phi = PolyMap::identity(4, &R4_VARS);
        let field = characteristic_field(&phi).unwrap();
        assert_eq!(field, golden_field());
        assert_eq!(field.alpha.to_string(), "-3t^3 - t s^2 - 3t^5");
        assert_eq!(field.beta.to_string(), "4t^2 s + s^3 + 7t^4 s");
    }

    #[test]
    fn rejects_origin_movers_and_non_symplectic_linear_parts() {
        let mut comps: Vec<MultiPoly<Rat>> =
            (0..4).map(|i| MultiPoly::var(&R4_VARS, i)).collect();
        comps[0] = comps[0].add(&MultiPoly::constant(&R4_VARS, rat(1)));
        let shifted = PolyMap::new(comps, 4);
        assert!(matches!(
            characteristic_field(&shifted),
            Err(FoliationError::Symplectic(SymplecticError::MovesOrigin))
        ));

        let mut comps2: Vec<MultiPoly<Rat>> =
            (0..4).map(|i| MultiPoly::var(&R4_VARS, i)).collect();
        comps2[0] = comps2[0].scale(&rat(2));
        let doubled = PolyMap::new(comps2, 4);
        assert!(matches!(
            characteristic_field(&doubled),
            Err(FoliationError::Symplectic(SymplecticError::NotSymplectic(_)))
        ));
    }

    #[test]
    fn rejects_nonconstant_jacobian_with_symplectic_linear_part() {
        // Identity plus a quadratic term in one position with a
        // symplectic linear part but nonconstant determinant.
        let mut comps: Vec<MultiPoly<Rat>> =
            (0..4).map(|i| MultiPoly::var(&R4_VARS, i)).collect();
        comps[0] = comps[0].add(&MultiPoly::from_int_terms(&R4_VARS, &[(&[2, 0, 0, 0], 1)]));
        let phi = PolyMap::new(comps, 4);
        assert!(matches!(
            characteristic_field(&phi),
            Err(FoliationError::NonconstantJacobian)
        ));
    }

    #[test]
    fn henon_field_matches_normalized_block_readings() {
        let v = MultiPoly::from_int_terms(&["y1", "y2"], &[(&[3, 0], 1), (&[1, 1], -2)]);
        let spec = HenonSpec::new(v, [rat(0), rat(0)], 2).unwrap();
        let h = henon_map(&spec).unwrap();
        let field = characteristic_field(&h).unwrap();
        let blocks = BlockDecomposition::from_map(&h).unwrap();
        let g = blocks.normalized_lower_right();
        assert_eq!(-field.alpha.coeff(&[1, 1]) / rat(2), g.at(0, 1).clone());
        assert_eq!(-field.alpha.coeff(&[3, 0]) / rat(3), g.at(1, 1).clone());
        assert_eq!(field.beta.coeff(&[2, 1]) / rat(4), g.at(0, 0).clone());
        // The quadratic part of beta vanishes for exact symplectomorphisms.
        assert!(field.beta.truncate(2).is_zero());
    }

    #[test]
    fn jet_route_matches_exact_route() {
        // Translation part must vanish: the foliation requires a fixed
        // origin, and with a potential of valuation 2 the Henon map then
        // fixes it.
        let v = MultiPoly::from_int_terms(&["y1", "y2"], &[(&[2, 1], 1), (&[0, 3], 1)]);
        let spec = HenonSpec::new(v, [rat(0), rat(0)], 2).unwrap();
        let h = henon_map(&spec).unwrap();
        let exact = characteristic_field(&h).unwrap();
        for k in [2u32, 4, 6] {
            let (ja, jb) = jet_foliation(&h, k).unwrap();
            assert_eq!(ja, Jet::new(exact.alpha.clone(), k));
            assert_eq!(jb, Jet::new(exact.beta.clone(), k));
        }
    }

    #[test]
    fn jet_route_rejects_defective_maps() {
        let mut comps: Vec<MultiPoly<Rat>> =
            (0..4).map(|i| MultiPoly::var(&R4_VARS, i)).collect();
        comps[0] = comps[0].scale(&rat(2));
        let doubled = PolyMap::new(comps, 4);
        assert!(matches!(
            jet_foliation(&doubled, 3),
            Err(FoliationError::DefectNotZero(3))
        ));
    }

    #[test]
    fn extraction_reads_golden_field() {
        let ext = extract_system_coefficients(&golden_field()).unwrap();
        let c = &ext.coefficients;
        assert_eq!(c.g11, rat(1));
        assert_eq!(c.g12, rat(0));
        assert_eq!(c.g22, rat(1));
        assert_eq!(c.a02, rat(0));
        assert_eq!(c.b12, rat(0));
        assert_eq!(c.b03, rat(1));
        assert!(!c.generic);
        assert!(ext.g12_consistent);
        assert!(ext.g12_from_beta.is_none());
        // The t s^2 term of alpha sits below everything the template reads.
        assert_eq!(
            ext.residual_alpha,
            MultiPoly::from_int_terms(&PARAM_VARS, &[(&[1, 2], -1)])
        );
        assert!(ext.residual_beta.is_zero());
    }

    #[test]
    fn extraction_flags_unexplained_terms_and_inconsistency() {
        // alpha = -2 t s + s^2, beta = 4 t^2 s + t s^2 + s^3: a nonzero g12
        // from alpha with no t^4 coefficient in beta to confirm it.
        let alpha =
            MultiPoly::from_int_terms(&PARAM_VARS, &[(&[1, 1], -2), (&[0, 2], 1)]);
        let beta = MultiPoly::from_int_terms(
            &PARAM_VARS,
            &[(&[2, 1], 4), (&[1, 2], 1), (&[0, 3], 1)],
        );
        let f = VectorField2::new(alpha, beta).unwrap();
        let ext = extract_system_coefficients(&f).unwrap();
        assert_eq!(ext.coefficients.g12, rat(1));
        assert!(ext.coefficients.generic);
        assert!(!ext.g12_consistent);
        assert!(ext.g12_from_beta.is_none());

        // Now force the two readings into conflict: t^4 coefficient 12
        // reads g12 = 2 against g12 = 1 from alpha.
        let beta2 = MultiPoly::from_int_terms(
            &PARAM_VARS,
            &[(&[2, 1], 4), (&[1, 2], 1), (&[0, 3], 1), (&[4, 0], 12)],
        );
        let f2 = VectorField2::new(
            MultiPoly::from_int_terms(&PARAM_VARS, &[(&[1, 1], -2), (&[0, 2], 1)]),
            beta2,
        )
        .unwrap();
        assert!(matches!(
            extract_system_coefficients(&f2),
            Err(FoliationError::InconsistentG12 { .. })
        ));

        // Unread low-order terms come back verbatim.
        let f3 = VectorField2::new(
            MultiPoly::from_int_terms(&PARAM_VARS, &[(&[2, 0], 5), (&[0, 2], 1)]),
            MultiPoly::from_int_terms(&PARAM_VARS, &[(&[0, 2], 3), (&[0, 3], 1)]),
        )
        .unwrap();
        let ext3 = extract_system_coefficients(&f3).unwrap();
        assert_eq!(
            ext3.residual_alpha,
            MultiPoly::from_int_terms(&PARAM_VARS, &[(&[2, 0], 5)])
        );
        assert_eq!(
            ext3.residual_beta,
            MultiPoly::from_int_terms(&PARAM_VARS, &[(&[0, 2], 3)])
        );
    }
}
