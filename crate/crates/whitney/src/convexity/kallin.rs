//! Constructive separation certificates for `R^n ∪ (A + iI) R^n`.
//!
//! Given the real Jordan model of `A`, [`kallin_construct`] produces a
//! quadratic polynomial `p` whose imaginary part is negative definite on
//! the real subspace `E1 = R^n` and positive definite on the graph plane
//! `E2 = (A + iI) R^n`. Definiteness of both exact rational forms proves
//! that `{p = 0}` meets `E1 ∪ E2` only at the origin, which is the
//! separation hypothesis needed to glue the two planes into a polynomially
//! convex union.
//!
//! Coefficients are chosen per Jordan block: an isolated real eigenvalue
//! `λ` contributes `(λ - δi) z²`, a chain of length `k ≥ 2` weights the
//! squares by an inductively growing sequence `α`, and complex pairs reuse
//! the same weights on both coordinates of each pair. A single global
//! `δ > 0` is found by exact halving. [`kallin_verify`] recomputes both
//! forms from `p` and the matrix alone, so certificate and verifier share
//! no intermediate state.

use num::{One, Signed, Zero};

use super::ConvexityError;
use crate::linalg::RatMat;
use crate::poly::{rat, GaussRat, MultiPoly, Rat};

/// One block of a real Jordan normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum JordanBlock {
    /// `size x size` chain for a real eigenvalue: `lambda` on the
    /// diagonal, ones on the superdiagonal.
    Real { lambda: Rat, size: usize },
    /// `2 pairs x 2 pairs` chain for the conjugate pair `s ± it`:
    /// rotation-scaling blocks `[[s, -t], [t, s]]` on the diagonal,
    /// `2 x 2` identities on the block superdiagonal. Requires `t != 0`
    /// (a real eigenvalue belongs in a `Real` block).
    Complex { s: Rat, t: Rat, pairs: usize },
}

impl JordanBlock {
    /// Number of real dimensions the block occupies.
    pub fn dimension(&self) -> usize {
        match self {
            JordanBlock::Real { size, .. } => *size,
            JordanBlock::Complex { pairs, .. } => 2 * pairs,
        }
    }

    /// Structural constraints of the normal form itself: nonzero block
    /// size, and `t != 0` for complex pairs (a real eigenvalue belongs in
    /// a `Real` block).
    fn validate(&self) -> Result<(), ConvexityError> {
        match self {
            JordanBlock::Real { size, .. } => {
                if *size == 0 {
                    return Err(ConvexityError::Inadmissible("block size must be >= 1".into()));
                }
            }
            JordanBlock::Complex { t, pairs, .. } => {
                if *pairs == 0 {
                    return Err(ConvexityError::Inadmissible("pair count must be >= 1".into()));
                }
                if t.is_zero() {
                    return Err(ConvexityError::Inadmissible(
                        "complex block needs t != 0; use a real block instead".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Whether the inductive coefficient construction applies. A real
    /// chain of length at least two needs `λ != 0`, and a purely
    /// imaginary pair needs `|t| < 1`; both limits come from the weight
    /// recursions, which divide by `λ²` resp. `(1 - t²)²`.
    fn check_admissible(&self) -> Result<(), ConvexityError> {
        match self {
            JordanBlock::Real { lambda, size } => {
                if *size >= 2 && lambda.is_zero() {
                    return Err(ConvexityError::Inadmissible(
                        "nilpotent chain of size >= 2 has no inductive certificate".into(),
                    ));
                }
            }
            JordanBlock::Complex { s, t, .. } => {
                if s.is_zero() && t.abs() >= Rat::one() {
                    return Err(ConvexityError::Inadmissible(
                        "purely imaginary pair with |t| >= 1 admits no certificate".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// A real Jordan normal form, block by block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealJordanSpec {
    pub blocks: Vec<JordanBlock>,
}

impl RealJordanSpec {
    /// Validates every block and the overall shape.
    pub fn new(blocks: Vec<JordanBlock>) -> Result<Self, ConvexityError> {
        if blocks.is_empty() {
            return Err(ConvexityError::Inadmissible("empty block list".into()));
        }
        for b in &blocks {
            b.validate()?;
        }
        Ok(RealJordanSpec { blocks })
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(JordanBlock::dimension).sum()
    }

    /// Assembles the block-diagonal real Jordan matrix.
    pub fn matrix(&self) -> RatMat {
        let n = self.dimension();
        let mut m = RatMat::zeros(n, n);
        let mut off = 0;
        for b in &self.blocks {
            match b {
                JordanBlock::Real { lambda, size } => {
                    for l in 0..*size {
                        *m.at_mut(off + l, off + l) = lambda.clone();
                        if l + 1 < *size {
                            *m.at_mut(off + l, off + l + 1) = Rat::one();
                        }
                    }
                }
                JordanBlock::Complex { s, t, pairs } => {
                    for l in 0..*pairs {
                        let r = off + 2 * l;
                        *m.at_mut(r, r) = s.clone();
                        *m.at_mut(r, r + 1) = -t.clone();
                        *m.at_mut(r + 1, r) = t.clone();
                        *m.at_mut(r + 1, r + 1) = s.clone();
                        if l + 1 < *pairs {
                            *m.at_mut(r, r + 2) = Rat::one();
                            *m.at_mut(r + 1, r + 3) = Rat::one();
                        }
                    }
                }
            }
            off += b.dimension();
        }
        m
    }
}

/// A separating polynomial together with the exact quadratic forms of its
/// imaginary part on both planes and their definiteness margins.
///
/// Invariants: `qform_l1` is negative definite, `qform_l2` positive
/// definite; `qform_l1 + margin_l1 I` stays negative semidefinite and
/// `qform_l2 - margin_l2 I` positive semidefinite, all exactly.
#[derive(Clone, PartialEq, Debug)]
pub struct KallinCertificate {
    /// Quadratic polynomial in `z1..zn`, only square terms.
    pub p: MultiPoly<GaussRat>,
    /// Per-block weight chains (positive magnitudes; empty for an
    /// isolated real eigenvalue whose coefficient is the eigenvalue).
    pub alphas: Vec<Vec<Rat>>,
    /// Global imaginary shift, a power of `1/2`.
    pub delta: Rat,
    /// Form of `Im p` on `E1` in the real coordinates `x`.
    pub qform_l1: RatMat,
    /// Form of `Im p` on `E2` in the parameters `y` of `z = (A + iI) y`.
    pub qform_l2: RatMat,
    pub margin_l1: Rat,
    pub margin_l2: Rat,
}

/// Per-variable coefficient data contributed by one block.
struct BlockWeights {
    /// Real parts of the `z_ν²` coefficients.
    re: Vec<Rat>,
    /// Positive magnitudes multiplying `-δ i`.
    im_pattern: Vec<Rat>,
    /// The inductive chain recorded in the certificate.
    alphas: Vec<Rat>,
}

fn block_weights(block: &JordanBlock) -> BlockWeights {
    match block {
        JordanBlock::Real { lambda, size: 1 } => BlockWeights {
            re: vec![lambda.clone()],
            im_pattern: vec![Rat::one()],
            alphas: vec![],
        },
        JordanBlock::Real { lambda, size } => {
            // alpha_{l+1} = 2 alpha_l / lambda^2 keeps every consecutive
            // 2x2 minor of the chain form positive with a factor-7 slack.
            let growth = rat(2) / (lambda * lambda);
            let alphas = chain(*size, &growth);
            let sign = lambda.signum();
            BlockWeights {
                re: alphas.iter().map(|a| a * &sign).collect(),
                im_pattern: vec![Rat::one(); *size],
                alphas,
            }
        }
        JordanBlock::Complex { s, t, pairs } => {
            let growth = if s.is_zero() {
                // Derived from the pair determinants of the chain form:
                // positivity needs alpha_{l+1} > alpha_l / (1-t^2)^2, and
                // 4(1+t^2) provides the slack.
                let q = Rat::one() - t * t;
                rat(4) * (Rat::one() + t * t) / (&q * &q)
            } else {
                rat(2) / (s * s)
            };
            let alphas = chain(*pairs, &growth);
            let mut re = Vec::with_capacity(2 * pairs);
            let mut im_pattern = Vec::with_capacity(2 * pairs);
            for a in &alphas {
                let sa = s * a;
                re.push(sa.clone());
                re.push(sa);
                im_pattern.push(a.clone());
                im_pattern.push(a.clone());
            }
            BlockWeights {
                re,
                im_pattern,
                alphas,
            }
        }
    }
}

fn chain(len: usize, growth: &Rat) -> Vec<Rat> {
    let mut out = Vec::with_capacity(len);
    let mut a = Rat::one();
    for _ in 0..len {
        out.push(a.clone());
        a *= growth;
    }
    out
}

fn diag(entries: &[Rat]) -> RatMat {
    let mut m = RatMat::zeros(entries.len(), entries.len());
    for (i, e) in entries.iter().enumerate() {
        *m.at_mut(i, i) = e.clone();
    }
    m
}

/// Form of `Im p` on the graph plane `(A + iI) R^n`, for the quadratic
/// `p = z' C z` with `C = c_re + i c_im` symmetric: substituting
/// `z = (A + iI) y` and taking imaginary parts gives
/// `A' c_re + c_re A + A' c_im A - c_im`.
fn graph_form(a: &RatMat, c_re: &RatMat, c_im: &RatMat) -> RatMat {
    let at = a.transpose();
    at.mul(c_re)
        .add(&c_re.mul(a))
        .add(&at.mul(&c_im.mul(a)))
        .sub(c_im)
}

/// Largest tried `m = m0 / 2^j` with `q - m I` positive semidefinite,
/// starting from the smallest diagonal entry (an upper bound for the
/// least eigenvalue). Requires `q` positive definite, so the halving
/// terminates.
fn psd_margin(q: &RatMat) -> Rat {
    let n = q.nrows();
    let mut m = q.at(0, 0).clone();
    for i in 1..n {
        if q.at(i, i) < &m {
            m = q.at(i, i).clone();
        }
    }
    debug_assert!(m.is_positive(), "margin search needs a definite form");
    let id = RatMat::identity(n);
    loop {
        if q.sub(&id.scale(&m)).is_positive_semidefinite() {
            return m;
        }
        m /= rat(2);
    }
}

/// Maximum number of times the global shift `δ` is halved before the
/// search is declared failed. Admissible specs certify long before this.
pub const MAX_DELTA_HALVINGS: u32 = 64;

/// Builds a separation certificate for `R^n ∪ (A + iI) R^n` where `A` is
/// the real Jordan matrix described by `spec`.
///
/// The polynomial is `p = Σ_ν (r_ν - δ w_ν i) z_ν²` with per-block weights
/// `r, w` fixed by the eigenvalue data and a single global `δ` halved from
/// `1` until both quadratic forms are definite. Both forms and both
/// margins in the result are exact.
pub fn kallin_construct(spec: &RealJordanSpec) -> Result<KallinCertificate, ConvexityError> {
    let spec = RealJordanSpec::new(spec.blocks.clone())?;
    for b in &spec.blocks {
        b.check_admissible()?;
    }
    let a = spec.matrix();
    let n = spec.dimension();

    let mut re = Vec::with_capacity(n);
    let mut im_pattern = Vec::with_capacity(n);
    let mut alphas = Vec::with_capacity(spec.blocks.len());
    for b in &spec.blocks {
        let w = block_weights(b);
        re.extend(w.re);
        im_pattern.extend(w.im_pattern);
        alphas.push(w.alphas);
    }
    let c_re = diag(&re);
    let pattern = diag(&im_pattern);

    let mut delta = Rat::one();
    for _ in 0..=MAX_DELTA_HALVINGS {
        let c_im = pattern.scale(&-delta.clone());
        let q1 = c_im.clone();
        let q2 = graph_form(&a, &c_re, &c_im);
        let neg_q1 = q1.scale(&rat(-1));
        if neg_q1.is_positive_definite() && q2.is_positive_definite() {
            let vars: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
            let terms = (0..n)
                .map(|v| {
                    let mut expo = vec![0u32; n];
                    expo[v] = 2;
                    let coef = GaussRat::new(re[v].clone(), &-delta.clone() * &im_pattern[v]);
                    (expo, coef)
                })
                .collect();
            let margin_l1 = psd_margin(&neg_q1);
            let margin_l2 = psd_margin(&q2);
            return Ok(KallinCertificate {
                p: MultiPoly::from_terms(&vars, terms),
                alphas,
                delta,
                qform_l1: q1,
                qform_l2: q2,
                margin_l1,
                margin_l2,
            });
        }
        delta /= rat(2);
    }
    Err(ConvexityError::DeltaExhausted(MAX_DELTA_HALVINGS))
}

/// Outcome of re-deriving the two forms from `p` and `A` alone.
#[derive(Clone, PartialEq, Debug)]
pub struct KallinVerification {
    /// Both recomputed forms are definite with the right signs, so
    /// `{p = 0}` meets `E1 ∪ E2` only at the origin.
    pub valid: bool,
    /// Margin of the recomputed `E1` form, when negative definite.
    pub margin_l1: Option<Rat>,
    /// Margin of the recomputed `E2` form, when positive definite.
    pub margin_l2: Option<Rat>,
    /// Recomputed forms coincide with the ones stored in the certificate.
    pub matches_certificate: bool,
}

/// Reads the symmetric complex coefficient matrix of a quadratic
/// polynomial. Rejects terms of degree other than two and requires every
/// variable to occur.
fn quadratic_coefficient_matrices(
    p: &MultiPoly<GaussRat>,
) -> Result<(RatMat, RatMat), ConvexityError> {
    let n = p.nvars();
    let mut c_re = RatMat::zeros(n, n);
    let mut c_im = RatMat::zeros(n, n);
    let mut seen = vec![false; n];
    if p.is_zero() {
        return Err(ConvexityError::MalformedCertificate(
            "polynomial is zero".into(),
        ));
    }
    for (mono, c) in p.terms() {
        let support: Vec<usize> = (0..n).filter(|&v| mono.0[v] > 0).collect();
        match support.as_slice() {
            [v] if mono.0[*v] == 2 => {
                *c_re.at_mut(*v, *v) = c.re.clone();
                *c_im.at_mut(*v, *v) = c.im.clone();
                seen[*v] = true;
            }
            [v, w] if mono.0[*v] == 1 && mono.0[*w] == 1 => {
                let half_re = &c.re / rat(2);
                let half_im = &c.im / rat(2);
                *c_re.at_mut(*v, *w) = half_re.clone();
                *c_re.at_mut(*w, *v) = half_re;
                *c_im.at_mut(*v, *w) = half_im.clone();
                *c_im.at_mut(*w, *v) = half_im;
                seen[*v] = true;
                seen[*w] = true;
            }
            _ => {
                return Err(ConvexityError::MalformedCertificate(format!(
                    "non-quadratic term of degree {}",
                    mono.degree()
                )))
            }
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(ConvexityError::MalformedCertificate(format!(
            "variable z{} does not occur in p",
            missing + 1
        )));
    }
    Ok((c_re, c_im))
}

/// Independently recomputes `Im p` on `R^n` and on `(A + iI) R^n` from the
/// polynomial and the matrix, checks definiteness, and compares against
/// the certificate's stored forms.
pub fn kallin_verify(
    cert: &KallinCertificate,
    a: &RatMat,
) -> Result<KallinVerification, ConvexityError> {
    if !a.is_square() {
        return Err(ConvexityError::NonSquare(a.nrows(), a.ncols()));
    }
    if a.nrows() != cert.p.nvars() {
        return Err(ConvexityError::DimensionMismatch(format!(
            "p has {} variables but the matrix is {} x {}",
            cert.p.nvars(),
            a.nrows(),
            a.ncols()
        )));
    }
    let (c_re, c_im) = quadratic_coefficient_matrices(&cert.p)?;
    let q1 = c_im.clone();
    let q2 = graph_form(a, &c_re, &c_im);
    let neg_q1 = q1.scale(&rat(-1));
    let l1_definite = neg_q1.is_positive_definite();
    let l2_definite = q2.is_positive_definite();
    Ok(KallinVerification {
        valid: l1_definite && l2_definite,
        margin_l1: l1_definite.then(|| psd_margin(&neg_q1)),
        margin_l2: l2_definite.then(|| psd_margin(&q2)),
        matches_certificate: q1 == cert.qform_l1 && q2 == cert.qform_l2,
    })
}

/// Reads a real Jordan model off a matrix whose eigenvalues are simple
/// and mutually separated by more than `gap` in the complex plane.
/// Returns `None` when the spectrum is too clustered to trust a floating
/// point reduction; eigenvalue coordinates are rationalized bit-exactly
/// from their `f64` values, so the resulting spec describes a nearby
/// (not necessarily identical) matrix.
pub fn jordan_spec_from_matrix(
    a: &RatMat,
    gap: f64,
) -> Result<Option<RealJordanSpec>, ConvexityError> {
    if !a.is_square() {
        return Err(ConvexityError::NonSquare(a.nrows(), a.ncols()));
    }
    let n = a.nrows();
    let rows = a.to_f64_rows();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let eigs: Vec<(f64, f64)> = m.complex_eigenvalues().iter().map(|c| (c.re, c.im)).collect();
    for i in 0..eigs.len() {
        for j in (i + 1)..eigs.len() {
            let (dr, di) = (eigs[i].0 - eigs[j].0, eigs[i].1 - eigs[j].1);
            if (dr * dr + di * di).sqrt() <= gap {
                return Ok(None);
            }
        }
    }
    let to_rat = |x: f64| {
        crate::poly::rat_from_f64(x)
            .ok_or_else(|| ConvexityError::Inadmissible(format!("non-finite eigenvalue {x}")))
    };
    let mut sorted = eigs;
    sorted.sort_by(|p, q| p.partial_cmp(q).expect("finite eigenvalues"));
    let mut blocks = Vec::new();
    for (re, im) in sorted {
        if im == 0.0 {
            blocks.push(JordanBlock::Real {
                lambda: to_rat(re)?,
                size: 1,
            });
        } else if im > 0.0 {
            blocks.push(JordanBlock::Complex {
                s: to_rat(re)?,
                t: to_rat(im)?,
                pairs: 1,
            });
        }
    }
    Ok(Some(RealJordanSpec::new(blocks)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratq;

    fn real_block(lambda: i64, size: usize) -> JordanBlock {
        JordanBlock::Real {
            lambda: rat(lambda),
            size,
        }
    }

    fn spec(blocks: Vec<JordanBlock>) -> RealJordanSpec {
        RealJordanSpec::new(blocks).unwrap()
    }

    #[test]
    fn isolated_unit_eigenvalue_gives_the_textbook_forms() {
        let cert = kallin_construct(&spec(vec![real_block(1, 1)])).unwrap();
        assert_eq!(cert.delta, Rat::one());
        assert_eq!(cert.p.to_string(), "(1-i)z1^2");
        assert_eq!(cert.qform_l1, RatMat::from_int_rows(&[&[-1]]));
        assert_eq!(cert.qform_l2, RatMat::from_int_rows(&[&[2]]));
        assert_eq!(cert.margin_l1, rat(1));
        assert_eq!(cert.margin_l2, rat(2));
        let rep = kallin_verify(&cert, &RatMat::from_int_rows(&[&[1]])).unwrap();
        assert!(rep.valid && rep.matches_certificate);
        assert_eq!(rep.margin_l1, Some(rat(1)));
        assert_eq!(rep.margin_l2, Some(rat(2)));
    }

    #[test]
    fn verification_against_the_wrong_matrix_reports_the_mismatch() {
        let cert = kallin_construct(&spec(vec![real_block(1, 1)])).unwrap();
        // Im (1-i)(2y+iy)^2 = y^2: still definite, but not the stored form
        // and with a smaller margin.
        let rep = kallin_verify(&cert, &RatMat::from_int_rows(&[&[2]])).unwrap();
        assert!(rep.valid);
        assert!(!rep.matches_certificate);
        assert_eq!(rep.margin_l2, Some(rat(1)));
    }

    #[test]
    fn size_two_chain_matches_the_hand_expansion() {
        // p = (1 - δi) z1^2 + (2 - δi) z2^2 on z = (A+iI)y with
        // A = [[1,1],[0,1]]. By direct substitution the δ-free part of
        // Im p is 2y1^2 + 2 y1 y2 + 4 y2^2 and the δ part subtracts
        // y1^2 + 2 y1 y2 + 2 y2^2 - (y1^2 + y2^2).
        let cert = kallin_construct(&spec(vec![real_block(1, 2)])).unwrap();
        assert_eq!(cert.alphas, vec![vec![rat(1), rat(2)]]);
        assert_eq!(cert.delta, Rat::one());
        let delta_free = RatMat::from_int_rows(&[&[2, 1], &[1, 4]]);
        let delta_part = RatMat::from_int_rows(&[&[0, 1], &[1, 1]]);
        assert_eq!(cert.qform_l2, delta_free.sub(&delta_part));
        assert_eq!(cert.qform_l2, RatMat::from_int_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(cert.margin_l1, rat(1));
        assert_eq!(cert.margin_l2, rat(2));
        let rep = kallin_verify(&cert, &cert_matrix(&spec(vec![real_block(1, 2)]))).unwrap();
        assert!(rep.valid && rep.matches_certificate);
    }

    fn cert_matrix(s: &RealJordanSpec) -> RatMat {
        s.matrix()
    }

    #[test]
    fn purely_imaginary_small_pair_certifies_at_delta_one() {
        let s = spec(vec![JordanBlock::Complex {
            s: rat(0),
            t: ratq(1, 2),
            pairs: 1,
        }]);
        let cert = kallin_construct(&s).unwrap();
        assert_eq!(cert.delta, Rat::one());
        assert_eq!(cert.p.to_string(), "(-i)z1^2 + (-i)z2^2");
        let three_quarters = diag(&[ratq(3, 4), ratq(3, 4)]);
        assert_eq!(cert.qform_l2, three_quarters);
        let rep = kallin_verify(&cert, &s.matrix()).unwrap();
        assert!(rep.valid && rep.matches_certificate);
        assert_eq!(rep.margin_l2, Some(ratq(3, 4)));
    }

    #[test]
    fn imaginary_chains_stay_definite_near_the_unit_modulus() {
        for t in [ratq(1, 2), ratq(-1, 2), ratq(9, 10), ratq(99, 100)] {
            for pairs in 1..=4 {
                let s = spec(vec![JordanBlock::Complex {
                    s: rat(0),
                    t: t.clone(),
                    pairs,
                }]);
                let cert = kallin_construct(&s).unwrap();
                let rep = kallin_verify(&cert, &s.matrix()).unwrap();
                assert!(rep.valid, "t = {t}, pairs = {pairs}");
                assert!(rep.margin_l2.unwrap().is_positive());
            }
        }
    }

    #[test]
    fn mixed_spectra_certify_and_verify() {
        let s = spec(vec![
            real_block(-1, 3),
            JordanBlock::Complex {
                s: rat(2),
                t: rat(-3),
                pairs: 2,
            },
            real_block(5, 1),
        ]);
        let cert = kallin_construct(&s).unwrap();
        let rep = kallin_verify(&cert, &s.matrix()).unwrap();
        assert!(rep.valid && rep.matches_certificate);
        assert!(rep.margin_l1.unwrap().is_positive());
        assert!(rep.margin_l2.unwrap().is_positive());
        // A negative eigenvalue flips the signs of the real parts.
        assert!(cert.p.coeff(&[2, 0, 0, 0, 0, 0, 0, 0]).re.is_negative());
    }

    #[test]
    fn block_sums_give_coefficientwise_sums() {
        let combined = kallin_construct(&spec(vec![real_block(1, 1), real_block(-1, 1)])).unwrap();
        assert_eq!(combined.delta, Rat::one());
        assert_eq!(combined.qform_l1, diag(&[rat(-1), rat(-1)]));
        assert_eq!(combined.qform_l2, diag(&[rat(2), rat(2)]));
        assert_eq!(combined.p.to_string(), "(1-i)z1^2 + (-1-i)z2^2");
        let a = RatMat::from_int_rows(&[&[1, 0], &[0, -1]]);
        let rep = kallin_verify(&combined, &a).unwrap();
        assert!(rep.valid && rep.matches_certificate);
    }

    #[test]
    fn inadmissible_blocks_are_rejected() {
        // Structurally valid specs that the construction cannot serve.
        assert!(matches!(
            kallin_construct(&spec(vec![real_block(0, 2)])),
            Err(ConvexityError::Inadmissible(_))
        ));
        assert!(matches!(
            kallin_construct(&spec(vec![JordanBlock::Complex {
                s: rat(0),
                t: rat(2),
                pairs: 1
            }])),
            Err(ConvexityError::Inadmissible(_))
        ));
        // t = 0 is not a complex pair at all; rejected at the type level.
        assert!(matches!(
            RealJordanSpec::new(vec![JordanBlock::Complex {
                s: rat(1),
                t: rat(0),
                pairs: 1
            }]),
            Err(ConvexityError::Inadmissible(_))
        ));
        // A nilpotent 1x1 block (lambda = 0) is fine.
        assert!(kallin_construct(&spec(vec![real_block(0, 1)])).is_ok());
    }

    #[test]
    fn malformed_polynomials_fail_verification() {
        let mut cert = kallin_construct(&spec(vec![real_block(1, 1), real_block(2, 1)])).unwrap();
        cert.p = MultiPoly::from_terms(
            &["z1", "z2"],
            vec![(vec![2, 0], GaussRat::from_parts(1, -1))],
        );
        assert!(matches!(
            kallin_verify(&cert, &RatMat::identity(2)),
            Err(ConvexityError::MalformedCertificate(_))
        ));
        let cubic = MultiPoly::from_terms(&["z1"], vec![(vec![3], GaussRat::from_parts(1, -1))]);
        let mut bad = kallin_construct(&spec(vec![real_block(1, 1)])).unwrap();
        bad.p = cubic;
        assert!(matches!(
            kallin_verify(&bad, &RatMat::identity(1)),
            Err(ConvexityError::MalformedCertificate(_))
        ));
    }

    #[test]
    fn jordan_reduction_reads_simple_spectra() {
        let a = RatMat::from_int_rows(&[&[1, 0], &[0, -1]]);
        let s = jordan_spec_from_matrix(&a, 1e-6).unwrap().unwrap();
        assert_eq!(
            s.blocks,
            vec![real_block(-1, 1), real_block(1, 1)]
        );
        // Rotation by 2 reads back the conjugate pair 0 +- 2i; the spec is
        // a valid normal form, and certification then fails exactly where
        // the eigenvalue criterion says NotConvex.
        let rot = RatMat::from_int_rows(&[&[0, -2], &[2, 0]]);
        let s = jordan_spec_from_matrix(&rot, 1e-6).unwrap().unwrap();
        assert_eq!(
            s.blocks,
            vec![JordanBlock::Complex {
                s: rat(0),
                t: rat(2),
                pairs: 1
            }]
        );
        assert!(matches!(
            kallin_construct(&s),
            Err(ConvexityError::Inadmissible(_))
        ));
        // Repeated eigenvalues are too clustered to reduce in floats.
        let id = RatMat::identity(2);
        assert!(jordan_spec_from_matrix(&id, 1e-6).unwrap().is_none());
    }
}
