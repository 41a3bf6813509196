//! Rational quadratic spaces: diagonalization, signature and the discriminant
//! square class.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{fmt_q, is_rational_square, q, Q};

/// Trial-division bound used by [`square_class`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// A nondegenerate symmetric bilinear form on `Q^n`, given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSpace {
    gram: QMatrix,
}

impl QuadraticSpace {
    pub fn new(gram: QMatrix) -> Result<Self> {
        if gram.rows() == 0 {
            return Err(Error::InvalidDimension(
                "quadratic space must have n >= 1".into(),
            ));
        }
        if gram.rows() != gram.cols() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                got: gram.cols(),
            });
        }
        if let Some((i, j)) = gram.is_symmetric() {
            return Err(Error::NotSymmetric(i, j));
        }
        if gram.determinant()?.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(QuadraticSpace { gram })
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        Self::new(QMatrix::from_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> Q {
        self.gram
            .determinant()
            .expect("gram matrix is square by construction")
    }

    /// The hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic_plane() -> Self {
        Self::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).expect("U is nondegenerate")
    }

    /// Orthogonal sum of `k >= 1` hyperbolic planes.
    pub fn hyperbolic(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDimension("U^0 is the zero space".into()));
        }
        let u = Self::hyperbolic_plane();
        Ok((1..k).fold(u.clone(), |acc, _| acc.direct_sum(&u)))
    }

    pub fn diagonal(entries: &[Q]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDimension(
                "diagonal form needs at least one entry".into(),
            ));
        }
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::Zero("diagonal entry".into()));
        }
        let mut g = QMatrix::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            g[(i, i)] = d.clone();
        }
        Ok(QuadraticSpace { gram: g })
    }

    /// Block-diagonal Gram matrix.
    pub fn direct_sum(&self, other: &QuadraticSpace) -> QuadraticSpace {
        let (a, b) = (self.dim(), other.dim());
        let mut g = QMatrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[(a + i, a + j)] = other.gram[(i, j)].clone();
            }
        }
        QuadraticSpace { gram: g }
    }

    /// Rescales the form by a nonzero rational.
    pub fn scaled(&self, c: &Q) -> Result<QuadraticSpace> {
        if c.is_zero() {
            return Err(Error::Zero("scale factor".into()));
        }
        let mut g = self.gram.clone();
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                g[(i, j)] = &g[(i, j)] * c;
            }
        }
        Ok(QuadraticSpace { gram: g })
    }

    /// Applies the change of basis `gram -> P^T gram P`.
    pub fn congruent(&self, p: &QMatrix) -> Result<QuadraticSpace> {
        let g = p.transpose().mul(&self.gram)?.mul(p)?;
        QuadraticSpace::new(g)
    }
}

/// Diagonal coefficients of a form congruent to some [`QuadraticSpace`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    coeffs: Vec<Q>,
}

impl DiagonalForm {
    pub fn new(coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidDimension("diagonal form needs n >= 1".into()));
        }
        if coeffs.iter().any(Zero::is_zero) {
            return Err(Error::Zero("diagonal coefficient".into()));
        }
        Ok(DiagonalForm { coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn product(&self) -> Q {
        self.coeffs.iter().product()
    }

    pub fn signature(&self) -> (usize, usize) {
        let pos = self.coeffs.iter().filter(|c| c.is_positive()).count();
        (pos, self.coeffs.len() - pos)
    }
}

/// Diagonalizes by symmetric Gaussian reduction.
pub fn diagonalize(space: &QuadraticSpace) -> Result<DiagonalForm> {
    diagonalize_with_basis(space).map(|(d, _)| d)
}

/// Diagonalizes and also returns the change of basis `P` (columns are the new
/// basis vectors), so that `P^T gram P = diag(coeffs)`.
pub fn diagonalize_with_basis(space: &QuadraticSpace) -> Result<(DiagonalForm, QMatrix)> {
    let n = space.dim();
    let mut a = space.gram().clone();
    let mut p = QMatrix::identity(n);

    // Column operation on `p` mirrors each congruence step on `a`.
    let add_multiple = |a: &mut QMatrix, p: &mut QMatrix, dst: usize, src: usize, f: &Q| {
        for r in 0..n {
            let v = &a[(src, r)] * f;
            a[(dst, r)] += v;
        }
        for r in 0..n {
            let v = &a[(r, src)] * f;
            a[(r, dst)] += v;
        }
        for r in 0..n {
            let v = &p[(r, src)] * f;
            p[(r, dst)] += v;
        }
    };

    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                for r in 0..n {
                    let (x, y) = (a[(k, r)].clone(), a[(j, r)].clone());
                    a[(k, r)] = y;
                    a[(j, r)] = x;
                }
                for r in 0..n {
                    let (x, y) = (a[(r, k)].clone(), a[(r, j)].clone());
                    a[(r, k)] = y;
                    a[(r, j)] = x;
                    let (x, y) = (p[(r, k)].clone(), p[(r, j)].clone());
                    p[(r, k)] = y;
                    p[(r, j)] = x;
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // Remaining diagonal is zero: x_k <- x_k + x_j gives q = 2 b(x_k, x_j) != 0.
                add_multiple(&mut a, &mut p, k, j, &Q::one());
            } else {
                return Err(Error::Degenerate);
            }
        }
        let pivot = a[(k, k)].clone();
        for j in k + 1..n {
            if a[(j, k)].is_zero() {
                continue;
            }
            let f = -(&a[(j, k)] / &pivot);
            add_multiple(&mut a, &mut p, j, k, &f);
        }
    }

    let coeffs = (0..n).map(|i| a[(i, i)].clone()).collect();
    Ok((DiagonalForm::new(coeffs)?, p))
}

/// Number of positive and negative coefficients of any rational diagonalization.
pub fn signature(space: &QuadraticSpace) -> Result<(usize, usize)> {
    Ok(diagonalize(space)?.signature())
}

/// The square class of `det(gram)`.
pub fn discriminant(space: &QuadraticSpace) -> Result<SquareClass> {
    square_class(&space.determinant())
}

/// An element of `Q*/(Q*)^2`, represented by its squarefree integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SquareClass {
    #[serde(with = "crate::rational::serde_bigint")]
    rep: BigInt,
}

impl SquareClass {
    pub fn one() -> Self {
        SquareClass { rep: BigInt::one() }
    }

    /// Builds a class from a representative that is already squarefree.
    pub fn from_squarefree(rep: i64) -> Result<Self> {
        let c = square_class(&q(rep))?;
        if c.rep != BigInt::from(rep) {
            return Err(Error::Parse(format!("{rep} is not squarefree")));
        }
        Ok(c)
    }

    pub fn rep(&self) -> &BigInt {
        &self.rep
    }

    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.rep.is_negative()
    }

    pub fn to_q(&self) -> Q {
        Q::from_integer(self.rep.clone())
    }

    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        square_class(&Q::from_integer(&self.rep * &other.rep))
            .expect("product of squarefree integers factors within their own primes")
    }

    /// Class of `-self`.
    pub fn negate(&self) -> SquareClass {
        SquareClass {
            rep: -self.rep.clone(),
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl std::str::FromStr for SquareClass {
    type Err = Error;

    /// Accepts any nonzero rational and reduces it.
    fn from_str(s: &str) -> Result<Self> {
        square_class(&crate::rational::parse_q(s)?)
    }
}

/// Square class of a nonzero rational, using [`DEFAULT_FACTOR_BOUND`].
pub fn square_class(a: &Q) -> Result<SquareClass> {
    square_class_bounded(a, DEFAULT_FACTOR_BOUND)
}

/// Square class with an explicit trial-division bound.
///
/// `a = p/q` has the same class as `p*q`. Trial division removes every prime up
/// to `bound`. The cofactor left over has only prime factors above `bound`, so
/// below `bound^3` it is `1`, a prime, a product of two distinct primes, or the
/// square of a prime, and a perfect-square test tells the last case apart.
/// Larger cofactors are rejected.
pub fn square_class_bounded(a: &Q, bound: u64) -> Result<SquareClass> {
    if a.is_zero() {
        return Err(Error::Zero("square class of 0".into()));
    }
    let mut m: BigInt = (a.numer() * a.denom()).abs();
    let mut rep = BigInt::one();

    let mut d: u64 = 2;
    while d <= bound {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut odd = false;
        while m.is_multiple_of(&bd) {
            m /= &bd;
            odd = !odd;
        }
        if odd {
            rep *= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let smallest_left = BigInt::from(d);
        let prime = &smallest_left * &smallest_left > m;
        let b = BigInt::from(bound);
        if prime {
            rep *= m;
        } else if &b * &b * &b >= m {
            let r = m.sqrt();
            if &r * &r != m {
                rep *= m;
            }
        } else {
            return Err(Error::FactorizationBound {
                value: fmt_q(a),
                cofactor: m.to_string(),
                bound,
            });
        }
    }
    if a.is_negative() {
        rep = -rep;
    }
    debug_assert!(is_rational_square(&(a / Q::from_integer(rep.clone()))));
    Ok(SquareClass { rep })
}

/// `true` iff `a` is a nonzero rational square.
pub fn is_square(a: &Q) -> bool {
    !a.is_zero() && is_rational_square(a)
}
