//! Symplectic area of polynomial holomorphic curves, measured two ways.
//!
//! For a curve `h : C ⊃ Ω → C^n` the area is the integral of the pulled
//! back standard form `ω = Σ dx_j ∧ dy_j`. [`symplectic_area`] evaluates
//! it by two-dimensional quadrature of the exact polynomial integrand and
//! independently as the circulation of the primitive `λ = Σ x_j dy_j`
//! around the oriented boundary. The two answers agree by Stokes, so
//! their difference is a quadrature error estimate the caller can assert
//! against.

use super::ConvexityError;
use crate::poly::{MultiPoly, Rat};
use crate::symplectic::PolyMap;

/// Integration domain in the parameter plane.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum AreaDomain {
    Disc { radius: f64 },
    Annulus { inner: f64, outer: f64 },
}

impl AreaDomain {
    fn validate(&self) -> Result<(), ConvexityError> {
        let ok = match *self {
            AreaDomain::Disc { radius } => radius.is_finite() && radius > 0.0,
            AreaDomain::Annulus { inner, outer } => {
                inner.is_finite() && outer.is_finite() && 0.0 < inner && inner < outer
            }
        };
        if ok {
            Ok(())
        } else {
            Err(ConvexityError::BadDomain(format!("{self:?}")))
        }
    }

    fn radial_range(&self) -> (f64, f64) {
        match *self {
            AreaDomain::Disc { radius } => (0.0, radius),
            AreaDomain::Annulus { inner, outer } => (inner, outer),
        }
    }
}

/// Both routes to the area of `h` over the domain.
#[derive(Clone, Copy, Debug)]
pub struct AreaReport {
    /// Two-dimensional quadrature of `h*ω`.
    pub area: f64,
    /// Circulation `∮ h*λ` over the oriented boundary.
    pub boundary_integral: f64,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the three-term recurrence.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_value(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_value(n, x);
        let w = 2.0 / ((1.0 - x * x) * (dp * dp));
        out.push((x, w));
    }
    out
}

/// `(P_n(x), P_n'(x))`.
fn legendre_value(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let pk = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Splits the target into `(x_1..x_n, y_1..y_n)` and checks the
/// Cauchy-Riemann relations `∂x_j/∂ξ = ∂y_j/∂η`, `∂x_j/∂η = -∂y_j/∂ξ`
/// exactly on the polynomial components.
fn check_cauchy_riemann(h: &PolyMap) -> Result<usize, ConvexityError> {
    if h.source_dim() != 2 {
        return Err(ConvexityError::DimensionMismatch(format!(
            "curve must have 2 real parameters, got {}",
            h.source_dim()
        )));
    }
    if h.target_dim() == 0 || h.target_dim() % 2 != 0 {
        return Err(ConvexityError::DimensionMismatch(format!(
            "target dimension {} is not of the form 2n",
            h.target_dim()
        )));
    }
    let n = h.target_dim() / 2;
    for j in 0..n {
        let xj = h.component(j);
        let yj = h.component(n + j);
        if xj.diff(0) != yj.diff(1) || xj.diff(1) != yj.diff(0).neg() {
            return Err(ConvexityError::CauchyRiemannViolated(j));
        }
    }
    Ok(n)
}

/// Exact density of `h*ω` against `dξ ∧ dη`.
fn pullback_density(h: &PolyMap, n: usize) -> Result<MultiPoly<Rat>, ConvexityError> {
    let vars: Vec<String> = h.component(0).var_names().to_vec();
    let mut f = MultiPoly::<Rat>::zero(&vars);
    for j in 0..n {
        let xj = h.component(j);
        let yj = h.component(n + j);
        let jac = xj.diff(0).mul(&yj.diff(1))?.sub(&xj.diff(1).mul(&yj.diff(0))?);
        f = f.add(&jac);
    }
    Ok(f)
}

/// Uniform (trapezoidal) node count that integrates trigonometric
/// polynomials of the given degree exactly.
fn angular_nodes(trig_degree: u32) -> usize {
    (2 * trig_degree as usize + 4).max(64)
}

/// `∮ h*λ` over the positively oriented circle of radius `rho`, with
/// `λ = Σ x_j dy_j`.
fn circle_circulation(h: &PolyMap, n: usize, rho: f64, nodes: usize) -> f64 {
    let dy_dxi: Vec<MultiPoly<Rat>> = (0..n).map(|j| h.component(n + j).diff(0)).collect();
    let dy_deta: Vec<MultiPoly<Rat>> = (0..n).map(|j| h.component(n + j).diff(1)).collect();
    let mut total = 0.0;
    let step = std::f64::consts::TAU / nodes as f64;
    for k in 0..nodes {
        let theta = k as f64 * step;
        let (sin, cos) = theta.sin_cos();
        let pt = [rho * cos, rho * sin];
        // d/dθ of the circle parameter, chain rule through (ξ, η).
        let (dxi, deta) = (-rho * sin, rho * cos);
        let mut g = 0.0;
        for j in 0..n {
            let xj = h.component(j).eval_f64(&pt);
            g += xj * (dxi * dy_dxi[j].eval_f64(&pt) + deta * dy_deta[j].eval_f64(&pt));
        }
        total += g;
    }
    total * step
}

/// Area of the polynomial holomorphic curve `h` over a disc or annulus,
/// by quadrature of `h*ω` and independently by the boundary circulation
/// of `h*λ`. The components must satisfy the Cauchy-Riemann relations
/// exactly; quadrature orders are chosen so both routes are exact for
/// polynomial data up to floating point roundoff (`quad_n` radial nodes
/// integrate the density exactly once `2 quad_n - 1` reaches its radial
/// degree plus one).
pub fn symplectic_area(
    h: &PolyMap,
    domain: &AreaDomain,
    quad_n: usize,
) -> Result<AreaReport, ConvexityError> {
    domain.validate()?;
    if quad_n == 0 {
        return Err(ConvexityError::BadDomain("quad_n must be positive".into()));
    }
    let n = check_cauchy_riemann(h)?;
    let density = pullback_density(h, n)?;
    let trig_degree = density.degree().unwrap_or(0);
    let m_ang = angular_nodes(trig_degree);
    let (r0, r1) = domain.radial_range();

    // Interior route: polar quadrature of the exact density.
    let mut area = 0.0;
    let ang_step = std::f64::consts::TAU / m_ang as f64;
    let radial = gauss_legendre(quad_n);
    let (mid, half) = (0.5 * (r1 + r0), 0.5 * (r1 - r0));
    for k in 0..m_ang {
        let theta = k as f64 * ang_step;
        let (sin, cos) = theta.sin_cos();
        let mut radial_sum = 0.0;
        for &(x, w) in &radial {
            let r = mid + half * x;
            let pt = [r * cos, r * sin];
            radial_sum += w * density.eval_f64(&pt) * r;
        }
        area += radial_sum * half;
    }
    area *= ang_step;

    // Boundary route: outer circle counterclockwise, inner clockwise.
    let curve_degree = h.degree().unwrap_or(0);
    let m_bnd = angular_nodes(2 * curve_degree);
    let mut boundary_integral = circle_circulation(h, n, r1, m_bnd);
    if r0 > 0.0 {
        boundary_integral -= circle_circulation(h, n, r0, m_bnd);
    }

    Ok(AreaReport {
        area,
        boundary_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn planar_inclusion() -> PolyMap {
        // h(ζ) = (ζ, 0) in C²: components (ξ, 0, η, 0).
        let vars = ["xi", "eta"];
        PolyMap::new(
            vec![
                MultiPoly::from_int_terms(&vars, &[(&[1, 0], 1)]),
                MultiPoly::zero(&vars),
                MultiPoly::from_int_terms(&vars, &[(&[0, 1], 1)]),
                MultiPoly::zero(&vars),
            ],
            2,
        )
    }

    fn parabola_curve() -> PolyMap {
        // h(ζ) = (ζ², 2ζ): x = (ξ²-η², 2ξ), y = (2ξη, 2η).
        let vars = ["xi", "eta"];
        PolyMap::new(
            vec![
                MultiPoly::from_int_terms(&vars, &[(&[2, 0], 1), (&[0, 2], -1)]),
                MultiPoly::from_int_terms(&vars, &[(&[1, 0], 2)]),
                MultiPoly::from_int_terms(&vars, &[(&[1, 1], 2)]),
                MultiPoly::from_int_terms(&vars, &[(&[0, 1], 2)]),
            ],
            2,
        )
    }

    #[test]
    fn annulus_inclusion_has_area_three_pi() {
        let rep = symplectic_area(
            &planar_inclusion(),
            &AreaDomain::Annulus {
                inner: 1.0,
                outer: 2.0,
            },
            16,
        )
        .unwrap();
        assert!((rep.area - 3.0 * PI).abs() < 1e-10, "area = {}", rep.area);
        assert!(
            (rep.boundary_integral - 3.0 * PI).abs() < 1e-10,
            "boundary = {}",
            rep.boundary_integral
        );
    }

    #[test]
    fn quadratic_curve_matches_the_closed_form() {
        // |h'|² = |2ζ|² + 4, so the disc area is 2π(R⁴ + 2R²) = 6π at R=1.
        let rep = symplectic_area(&parabola_curve(), &AreaDomain::Disc { radius: 1.0 }, 8).unwrap();
        assert!((rep.area - 6.0 * PI).abs() < 1e-10, "area = {}", rep.area);
        assert!((rep.area - rep.boundary_integral).abs() < 1e-10);
        assert!(rep.area > 0.0);
    }

    #[test]
    fn constant_curves_have_zero_area() {
        let vars = ["xi", "eta"];
        let h = PolyMap::new(
            vec![
                MultiPoly::from_int_terms(&vars, &[(&[0, 0], 7)]),
                MultiPoly::from_int_terms(&vars, &[(&[0, 0], -3)]),
            ],
            2,
        );
        let rep = symplectic_area(&h, &AreaDomain::Disc { radius: 2.0 }, 4).unwrap();
        assert_eq!(rep.area, 0.0);
        assert_eq!(rep.boundary_integral, 0.0);
    }

    #[test]
    fn antiholomorphic_components_are_rejected() {
        // Conjugate inclusion: x = ξ, y = -η violates the relations.
        let vars = ["xi", "eta"];
        let h = PolyMap::new(
            vec![
                MultiPoly::from_int_terms(&vars, &[(&[1, 0], 1)]),
                MultiPoly::from_int_terms(&vars, &[(&[0, 1], -1)]),
            ],
            2,
        );
        assert!(matches!(
            symplectic_area(&h, &AreaDomain::Disc { radius: 1.0 }, 4),
            Err(ConvexityError::CauchyRiemannViolated(0))
        ));
    }

    #[test]
    fn degenerate_domains_are_rejected() {
        let h = planar_inclusion();
        for d in [
            AreaDomain::Disc { radius: 0.0 },
            AreaDomain::Disc { radius: -1.0 },
            AreaDomain::Annulus {
                inner: 2.0,
                outer: 1.0,
            },
            AreaDomain::Annulus {
                inner: 0.0,
                outer: 1.0,
            },
        ] {
            assert!(matches!(
                symplectic_area(&h, &d, 4),
                Err(ConvexityError::BadDomain(_))
            ));
        }
        let odd = PolyMap::new(
            vec![MultiPoly::zero(&["xi", "eta"]); 3],
            2,
        );
        assert!(matches!(
            symplectic_area(&odd, &AreaDomain::Disc { radius: 1.0 }, 4),
            Err(ConvexityError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn gauss_nodes_integrate_high_degree_monomials() {
        // 8 nodes are exact through degree 15: check x^14 on [-1,1].
        let nodes = gauss_legendre(8);
        let integral: f64 = nodes.iter().map(|&(x, w)| w * x.powi(14)).sum();
        assert!((integral - 2.0 / 15.0).abs() < 1e-14);
        let odd: f64 = nodes.iter().map(|&(x, w)| w * x.powi(13)).sum();
        assert!(odd.abs() < 1e-15);
    }
}
