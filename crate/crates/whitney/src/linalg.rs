//! Dense matrices over the rationals with exact rank, determinant, and
//! definiteness tests, plus an incremental row-echelon span for membership
//! queries in local-algebra computations.
//!
//! Sizes here are small (quadratic forms up to dimension 12, generator
//! matrices with a few hundred rows), so straightforward exact Gaussian
//! elimination is both fast enough and free of numerical judgment calls.

use num::traits::{One, Signed, Zero};

use crate::poly::{rat, Rat};

/// Row-major dense rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    a: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            a: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMat {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Assembles a square matrix from equally sized square blocks.
    pub fn from_blocks(blocks: &[&[&RatMat]]) -> Self {
        let bs = blocks[0][0].rows;
        let br = blocks.len();
        let bc = blocks[0].len();
        let mut m = Self::zeros(br * bs, bc * bs);
        for (bi, row) in blocks.iter().enumerate() {
            assert_eq!(row.len(), bc, "ragged block rows");
            for (bj, blk) in row.iter().enumerate() {
                assert!(blk.rows == bs && blk.cols == bs, "block size mismatch");
                for i in 0..bs {
                    for j in 0..bs {
                        *m.at_mut(bi * bs + i, bj * bs + j) = blk.at(i, j).clone();
                    }
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.a[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.at(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = lik * other.at(k, j);
                    if !add.is_zero() {
                        *m.at_mut(i, j) += add;
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "dimension mismatch in sum"
        );
        let mut m = self.clone();
        for (x, y) in m.a.iter_mut().zip(&other.a) {
            *x += y;
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "dimension mismatch in difference"
        );
        let mut m = self.clone();
        for (x, y) in m.a.iter_mut().zip(&other.a) {
            *x -= y;
        }
        m
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut m = self.clone();
        for x in m.a.iter_mut() {
            *x = &*x * k;
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant by Gaussian elimination with column pivoting.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else {
                return Rat::zero();
            };
            if p != col {
                for j in 0..n {
                    let tmp = m.at(p, j).clone();
                    *m.at_mut(p, j) = m.at(col, j).clone();
                    *m.at_mut(col, j) = tmp;
                }
                det = -det;
            }
            let pv = m.at(col, col).clone();
            det *= &pv;
            for r in (col + 1)..n {
                let factor = m.at(r, col) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = &factor * m.at(col, j);
                    *m.at_mut(r, j) -= sub;
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let mut ech = RowEchelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.rank()
    }

    /// Determinants of the leading principal `k x k` submatrices for
    /// `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Vec<Rat> {
        assert!(self.is_square(), "principal minors of a non-square matrix");
        (1..=self.rows)
            .map(|k| {
                let mut sub = Self::zeros(k, k);
                for i in 0..k {
                    for j in 0..k {
                        *sub.at_mut(i, j) = self.at(i, j).clone();
                    }
                }
                sub.det()
            })
            .collect()
    }

    /// Sylvester criterion: symmetric with all leading principal minors
    /// strictly positive.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric()
            && self
                .leading_principal_minors()
                .iter()
                .all(|d| d.is_positive())
    }

    /// Coefficients `[c_n=1, c_{n-1}, ..., c_0]` of the characteristic
    /// polynomial `det(lambda I - A)`, by the Faddeev-LeVerrier recurrence.
    pub fn char_poly(&self) -> Vec<Rat> {
        assert!(self.is_square(), "characteristic polynomial needs a square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rat::one()];
        let mut m = self.clone();
        for k in 1..=n {
            let tr: Rat = (0..n).map(|i| m.at(i, i).clone()).sum();
            let c = -tr / rat(k as i64);
            coeffs.push(c.clone());
            if k < n {
                let mut shifted = m;
                for i in 0..n {
                    *shifted.at_mut(i, i) += &c;
                }
                m = self.mul(&shifted);
            }
        }
        coeffs
    }

    /// Exact positive-semidefiniteness for symmetric matrices: the real
    /// spectrum is nonnegative iff the characteristic polynomial
    /// `lambda^n + c_{n-1} lambda^{n-1} + ... + c_0` has weakly alternating
    /// signs, `(-1)^j c_{n-j} >= 0`.
    pub fn is_positive_semidefinite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let coeffs = self.char_poly();
        coeffs.iter().enumerate().all(|(j, c)| {
            if j % 2 == 0 {
                !c.is_negative()
            } else {
                !c.is_positive()
            }
        })
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        use num::traits::ToPrimitive;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_f64().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    }
}

/// Incrementally built reduced row-echelon span of rational vectors.
///
/// Supports rank queries and exact membership tests; used for local-algebra
/// dimensions where the same generator family is probed monomial by
/// monomial.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    ncols: usize,
    /// Pairs of pivot column and reduced row with a unit pivot.
    rows: Vec<(usize, Vec<Rat>)>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_in_place(&self, v: &mut [Rat]) {
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !row[j].is_zero() {
                    let sub = &c * &row[j];
                    v[j] -= sub;
                }
            }
        }
    }

    /// Reduces `v` against the span; returns `true` and extends the span if
    /// a new pivot appears, `false` if `v` was already in the span.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.ncols, "row length mismatch");
        self.reduce_in_place(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let pv = v[p].clone();
        for x in v.iter_mut() {
            *x = &*x / &pv;
        }
        // Back-substitute so every stored row stays reduced and a single
        // elimination pass suffices for future queries.
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !v[j].is_zero() {
                    let sub = &c * &v[j];
                    row[j] -= sub;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    /// Exact membership of `v` in the current span.
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ncols, "row length mismatch");
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w.iter().all(Rat::is_zero)
    }
}
