//! Sparse multivariate polynomials, truncated jets, and monomial bases over
//! exact coefficient fields.
//!
//! Polynomials store their terms in a `BTreeMap` keyed by a graded
//! monomial order (total degree first, then lexicographically descending
//! exponents), so iteration, display, and serialization are canonical and
//! deterministic. Coefficients are exact: [`Rat`] for real data, [`GaussRat`]
//! for complex quadrics. Products and compositions enforce a configurable
//! term-count cap and fail loudly instead of silently swallowing memory.

mod coef;
mod jet;

pub use coef::{fmt_rat, parse_rat, rat, rat_from_f64, ratq, Coefficient, GaussRat, Rat};
pub use jet::{jet_reciprocal, Jet};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Signed, ToPrimitive, Zero};

/// Default bound on the number of stored terms in any product or
/// composition result. Large enough for every map in the Henon family this
/// crate generates in its tests, small enough to fail fast when a
/// composition is about to go dense in high degree.
pub const DEFAULT_TERM_CAP: usize = 1_000_000;

/// Errors from exact polynomial arithmetic.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("term count {count} exceeds cap {cap}")]
    TermCap { count: usize, cap: usize },
    #[error("operand has {found} variables, expected {expected}")]
    VarMismatch { expected: usize, found: usize },
    #[error("reciprocal of a jet with zero constant term")]
    ZeroConstantTerm,
    #[error("{0}")]
    Invalid(String),
}

/// Exponent vector with the graded order used everywhere in this crate:
/// lower total degree first, then lexicographically larger exponent vectors
/// first within a degree. For two variables `(t, s)` this sorts
/// `1 < t < s < t^2 < t s < s^2 < ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total degree at most `max_degree`,
/// listed in the canonical graded order starting from the constant.
pub fn monomial_basis(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, vars_left: usize, deg_left: u32, out: &mut Vec<Monomial>) {
        if vars_left == 1 {
            prefix.push(deg_left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=deg_left).rev() {
            prefix.push(e);
            fill(prefix, vars_left - 1, deg_left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    for d in 0..=max_degree {
        fill(&mut Vec::new(), nvars, d, &mut out);
    }
    out
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Variable names are carried for display and serialization only; arithmetic
/// matches variables by position and the left operand's names win.
#[derive(Clone, Debug)]
pub struct MultiPoly<C: Coefficient = Rat> {
    nvars: usize,
    vars: Vec<String>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<C: Coefficient> Eq for MultiPoly<C> {}

impl<C: Coefficient> MultiPoly<C> {
    /// The zero polynomial in the named variables.
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        MultiPoly {
            nvars: vars.len(),
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant<S: AsRef<str>>(vars: &[S], c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.nvars), c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var<S: AsRef<str>>(vars: &[S], i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut p = Self::zero(vars);
        let mut e = vec![0; p.nvars];
        e[i] = 1;
        p.terms.insert(Monomial(e), C::one());
        p
    }

    /// Builds a polynomial from raw terms, combining duplicates and dropping
    /// zero coefficients.
    pub fn from_terms<S: AsRef<str>>(vars: &[S], terms: Vec<(Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (expo, c) in terms {
            assert_eq!(expo.len(), p.nvars, "exponent length mismatch");
            p.add_term(Monomial(expo), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    /// Returns a copy with the same terms under new display names.
    pub fn with_var_names<S: AsRef<str>>(&self, vars: &[S]) -> Self {
        assert_eq!(vars.len(), self.nvars, "variable count mismatch");
        MultiPoly {
            nvars: self.nvars,
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            terms: self.terms.clone(),
        }
    }

    /// Iterates terms in the canonical graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the given exponent vector (zero when absent).
    pub fn coeff(&self, expo: &[u32]) -> C {
        assert_eq!(expo.len(), self.nvars, "exponent length mismatch");
        self.terms
            .get(&Monomial(expo.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.last_key_value().map(|(m, _)| m.degree())
    }

    /// Smallest total degree of a term, or `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.first_key_value().map(|(m, _)| m.degree())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg_ref();
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self {
                nvars: self.nvars,
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.mul_ref(k);
        }
        out
    }

    /// Product under the default term cap.
    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.mul_with_cap(other, DEFAULT_TERM_CAP)
    }

    /// Product that fails once the accumulated term count exceeds `cap`.
    pub fn mul_with_cap(&self, other: &Self, cap: usize) -> Result<Self, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VarMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
                if out.terms.len() > cap {
                    return Err(PolyError::TermCap {
                        count: out.terms.len(),
                        cap,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Product truncated to total degree `max_degree`. The result size is
    /// bounded by the monomial count of that degree, so no cap is needed.
    pub fn mul_trunc(&self, other: &Self, max_degree: u32) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > max_degree {
                break;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() > max_degree {
                    break;
                }
                out.add_term(ma.mul(mb), ca.mul_ref(cb));
            }
        }
        out
    }

    /// Integer power under a term cap.
    pub fn pow_with_cap(&self, e: u32, cap: usize) -> Result<Self, PolyError> {
        let mut out = Self::constant(&self.vars, C::one());
        for _ in 0..e {
            out = out.mul_with_cap(self, cap)?;
        }
        Ok(out)
    }

    /// Drops all terms of total degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        let mut out = self.clone();
        out.terms = out
            .terms
            .into_iter()
            .take_while(|(m, _)| m.degree() <= max_degree)
            .collect();
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut expo = m.0.clone();
            expo[i] = e - 1;
            let factor = C::from_rat(&rat(e as i64));
            out.add_term(Monomial(expo), c.mul_ref(&factor));
        }
        out
    }

    /// Substitutes `args[i]` for variable `i`. All arguments must share one
    /// variable set, which becomes the variable set of the result.
    pub fn compose(&self, args: &[Self], cap: usize) -> Result<Self, PolyError> {
        if args.len() != self.nvars {
            return Err(PolyError::VarMismatch {
                expected: self.nvars,
                found: args.len(),
            });
        }
        if self.nvars == 0 {
            return Ok(self.clone());
        }
        let out_vars = args[0].vars.clone();
        for a in args {
            if a.nvars != args[0].nvars {
                return Err(PolyError::VarMismatch {
                    expected: args[0].nvars,
                    found: a.nvars,
                });
            }
        }
        let mut max_e = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_e[i] = max_e[i].max(e);
            }
        }
        // pows[i][e] = args[i]^e, built on demand up to the largest exponent
        // actually used.
        let mut pows: Vec<Vec<Self>> = args
            .iter()
            .map(|a| vec![Self::constant(&a.vars, C::one()), a.clone()])
            .collect();
        for (i, &me) in max_e.iter().enumerate() {
            while (pows[i].len() as u32) <= me {
                let next = pows[i].last().unwrap().mul_with_cap(&args[i], cap)?;
                pows[i].push(next);
            }
        }
        let mut acc = Self::zero(&out_vars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(&out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul_with_cap(&pows[i][e as usize], cap)?;
                }
            }
            acc = acc.add(&term);
            if acc.terms.len() > cap {
                return Err(PolyError::TermCap {
                    count: acc.terms.len(),
                    cap,
                });
            }
        }
        Ok(acc)
    }

    /// Composition with every intermediate product truncated to total degree
    /// `max_degree`. Agrees with `compose` followed by `truncate` whenever
    /// the arguments have no constant term.
    pub fn compose_trunc(&self, args: &[Self], max_degree: u32) -> Result<Self, PolyError> {
        if args.len() != self.nvars {
            return Err(PolyError::VarMismatch {
                expected: self.nvars,
                found: args.len(),
            });
        }
        if self.nvars == 0 {
            return Ok(self.clone());
        }
        let out_vars = args[0].vars.clone();
        let mut max_e = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_e[i] = max_e[i].max(e);
            }
        }
        let mut pows: Vec<Vec<Self>> = args
            .iter()
            .map(|a| {
                vec![
                    Self::constant(&a.vars, C::one()),
                    a.truncate(max_degree),
                ]
            })
            .collect();
        for (i, &me) in max_e.iter().enumerate() {
            while (pows[i].len() as u32) <= me {
                let next = pows[i].last().unwrap().mul_trunc(&args[i], max_degree);
                pows[i].push(next);
            }
        }
        let mut acc = Self::zero(&out_vars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(&out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul_trunc(&pows[i][e as usize], max_degree);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Relabels variables in place: exponent `i` of the input becomes
    /// exponent `perm[i]` of the output. `perm` must be a permutation.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars, "permutation length mismatch");
        let mut vars = vec![String::new(); self.nvars];
        for (i, &p) in perm.iter().enumerate() {
            vars[p] = self.vars[i].clone();
        }
        let mut out = MultiPoly {
            nvars: self.nvars,
            vars,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let mut expo = vec![0u32; self.nvars];
            for (i, &p) in perm.iter().enumerate() {
                expo[p] = m.0[i];
            }
            out.terms.insert(Monomial(expo), c.clone());
        }
        out
    }

    /// Exact evaluation at a point of the coefficient field.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul_ref(&point[i]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Converts coefficients into another exact field.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::<D>::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl MultiPoly<Rat> {
    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms<S: AsRef<str>>(vars: &[S], terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            vars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), rat(*c)))
                .collect(),
        )
    }

    /// Floating-point evaluation for the numeric layers.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (i, &e) in m.0.iter().enumerate() {
                t *= point[i].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Promotes a real polynomial to Gaussian-rational coefficients.
    pub fn to_gauss(&self) -> MultiPoly<GaussRat> {
        self.map_coefficients(|c| GaussRat::from(c.clone()))
    }
}

impl MultiPoly<GaussRat> {
    /// Evaluates at a complex point given by parallel real and imaginary
    /// slices, returning `(re, im)` in floating point.
    pub fn eval_complex_f64(&self, re: &[f64], im: &[f64]) -> (f64, f64) {
        assert_eq!(re.len(), self.nvars, "point dimension mismatch");
        assert_eq!(im.len(), self.nvars, "point dimension mismatch");
        let (mut are, mut aim) = (0.0f64, 0.0f64);
        for (m, c) in &self.terms {
            let (mut tre, mut tim) = c.to_f64_parts();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    let (nr, ni) = (tre * re[i] - tim * im[i], tre * im[i] + tim * re[i]);
                    tre = nr;
                    tim = ni;
                }
            }
            are += tre;
            aim += tim;
        }
        (are, aim)
    }

    /// Splits into exact real and imaginary parts.
    pub fn split_re_im(&self) -> (MultiPoly<Rat>, MultiPoly<Rat>) {
        let re = self.map_coefficients(|c| c.re.clone());
        let im = self.map_coefficients(|c| c.im.clone());
        (re, im)
    }
}

fn fmt_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            parts.push(vars[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", vars[i], e));
        }
    }
    parts.join(" ")
}

impl fmt::Display for MultiPoly<Rat> {
    /// Terms in ascending canonical order; `+`/`-` join with the sign folded
    /// into the coefficient; unit coefficients elided next to variables.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            let mono = fmt_monomial(&self.vars, m);
            let body = if mono.is_empty() {
                format!("{mag}")
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}{mono}")
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly<GaussRat> {
    /// Real coefficients print like the rational case; properly complex ones
    /// print parenthesized as `(a+bi)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono = fmt_monomial(&self.vars, m);
            let (neg, body) = if c.im.is_zero() {
                let mag = c.re.abs();
                let body = if mono.is_empty() {
                    format!("{mag}")
                } else if mag.is_one() {
                    mono.clone()
                } else {
                    format!("{mag}{mono}")
                };
                (c.re.is_negative(), body)
            } else {
                let body = if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}){mono}")
                };
                (false, body)
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}
