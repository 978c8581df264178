//! Exact symbolic and numeric tools for a family of problems at the border of
//! symplectic geometry and several complex variables:
//!
//! * the characteristic foliation induced on an open Whitney umbrella by a
//!   polynomial symplectomorphism of `R^4`, computed exactly over the
//!   rationals ([`foliation`]);
//! * finite-determinacy and multiplicity invariants of the resulting planar
//!   vector-field germs, with certified local-algebra dimensions
//!   ([`local_algebra`]);
//! * polynomial-convexity decisions for totally real planes and Lagrangian
//!   graph surfaces, including a constructive certificate built from a
//!   quadratic polynomial whose imaginary part separates the two planes
//!   ([`convexity`]);
//! * numeric phase portraits and separatrix extraction for the planar fields
//!   ([`portrait`]).
//!
//! Everything symbolic runs over `BigRational` (or Gaussian rationals for
//! complex quadrics), so equality checks in the library and its tests are
//! exact, never approximate. Floating point enters only in the numeric
//! layers: eigenvalue screening, quadrature, and ODE integration.
//!
//! # Example
//!
//! Compute the characteristic field of the standard umbrella (the identity
//! symplectomorphism) and read off its lowest-order coefficients:
//!
//! ```
//! use whitney::symplectic::PolyMap;
//! use whitney::foliation::characteristic_field;
//!
//! let phi = PolyMap::identity(4, &["x", "u", "y", "v"]);
//! let field = characteristic_field(&phi).unwrap();
//! assert_eq!(field.alpha.to_string(), "-3t^3 - t s^2 - 3t^5");
//! assert_eq!(field.beta.to_string(), "4t^2 s + s^3 + 7t^4 s");
//! ```
//!
//! # Modules
//!
//! * [`poly`]: sparse multivariate polynomials, truncated jets, monomial
//!   bases, exact coefficient fields.
//! * [`linalg`]: dense rational matrices with exact rank, determinant,
//!   adjugate, and definiteness tests.
//! * [`symplectic`]: polynomial maps of `R^4`, symplectic block data at the
//!   origin, the complex-linear normalizer, symplectic defect jets, and the
//!   Henon family of polynomial symplectomorphisms.
//! * [`foliation`]: the umbrella parametrization, its defining function, and
//!   the exact characteristic vector field with its jet-level variant.
//! * [`local_algebra`]: local-algebra codimensions, determinacy membership,
//!   certified multiplicity, and a numeric Lojasiewicz probe.
//! * [`convexity`]: eigenvalue screening of linear Lagrangian planes,
//!   constructive separation certificates for real Jordan models, symplectic
//!   area of holomorphically immersed annuli and discs, and a numeric
//!   surface-separation check.
//! * [`portrait`]: adaptive Runge-Kutta integration, portrait grids, zero
//!   isolation probes, and separatrix clustering.
//! * [`json`]: serde data-transfer types for every CLI input and output
//!   format, with deterministic serialization.
//! * [`cli`]: the `whitney` command-line interface.

pub mod cli;
pub mod convexity;
pub mod foliation;
pub mod json;
pub mod linalg;
pub mod local_algebra;
pub mod poly;
pub mod portrait;
pub mod symplectic;

pub use poly::{Jet, MultiPoly, Rat};
pub use symplectic::PolyMap;

// Every fenced Rust block in the guide under book/ compiles and runs with
// `cargo test --doc`, so the book cannot drift from the crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/symplectomorphisms.md")]
    mod symplectomorphisms {}
    #[doc = include_str!("../../../book/src/foliation.md")]
    mod foliation {}
    #[doc = include_str!("../../../book/src/multiplicity.md")]
    mod multiplicity {}
    #[doc = include_str!("../../../book/src/convexity.md")]
    mod convexity {}
    #[doc = include_str!("../../../book/src/areas.md")]
    mod areas {}
    #[doc = include_str!("../../../book/src/portraits.md")]
    mod portraits {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
