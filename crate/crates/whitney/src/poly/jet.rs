//! Truncated Taylor polynomials with a fixed order.

use std::fmt;

use super::{Coefficient, MultiPoly, PolyError, Rat};

/// A polynomial truncated at a fixed total degree.
///
/// Construction truncates, so the representation never carries terms above
/// `order` and repeated truncation is a no-op. Arithmetic requires equal
/// orders; mixing orders is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Jet<C: Coefficient = Rat> {
    poly: MultiPoly<C>,
    order: u32,
}

impl<C: Coefficient> Jet<C> {
    pub fn new(poly: MultiPoly<C>, order: u32) -> Self {
        Jet {
            poly: poly.truncate(order),
            order,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly<C> {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "jet arithmetic requires equal orders"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        Jet {
            poly: self.poly.add(&other.poly),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        Jet {
            poly: self.poly.sub(&other.poly),
            order: self.order,
        }
    }

    pub fn neg(&self) -> Self {
        Jet {
            poly: self.poly.neg(),
            order: self.order,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        Jet {
            poly: self.poly.mul_trunc(&other.poly, self.order),
            order: self.order,
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        Jet {
            poly: self.poly.scale(k),
            order: self.order,
        }
    }
}

impl fmt::Display for Jet<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Multiplicative inverse of a jet whose constant term is a unit.
///
/// With `u = c (1 + m)` where `m` has positive valuation, the result is the
/// geometric series `c^{-1} sum_{j<=k} (-m)^j` truncated at the jet order,
/// so `u * jet_reciprocal(u)` is the constant jet `1`.
pub fn jet_reciprocal<C: Coefficient>(u: &Jet<C>) -> Result<Jet<C>, PolyError> {
    let vars = u.poly().var_names().to_vec();
    let c = u.poly().coeff(&vec![0; u.poly().nvars()]);
    let cinv = c.inverse().ok_or(PolyError::ZeroConstantTerm)?;
    let k = u.order();
    // m = u / c - 1 has valuation >= 1, so powers beyond the order vanish.
    let one = MultiPoly::constant(&vars, C::one());
    let m = u.poly().scale(&cinv).sub(&one);
    let mut acc = one.clone();
    let mut mpow = one;
    for _ in 0..k {
        mpow = mpow.mul_trunc(&m, k);
        if mpow.is_zero() {
            break;
        }
        acc = acc.add(&mpow.neg());
        // The sign alternates with each power, folded in by negating the
        // running product instead of tracking a parity flag.
        mpow = mpow.neg();
    }
    Ok(Jet::new(acc.scale(&cinv), k))
}
