//! Lifting cocharacters through isogenies of tori.
//!
//! An isogeny of split tori is an integer matrix `M` of nonzero determinant
//! acting on cocharacter lattices. A cocharacter `h` of the target lifts to the
//! source only after passing to a finite cover: the lift is the rational vector
//! `x` with `M x = h`, and the cover level is the least `N` making `N x`
//! integral.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{q, Q};

/// Square integer matrix with nonzero determinant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ToralIsogeny {
    matrix: Vec<Vec<i64>>,
}

impl ToralIsogeny {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let r = matrix.len();
        if r == 0 {
            return Err(Error::InvalidDimension("isogeny matrix is empty".into()));
        }
        if let Some(row) = matrix.iter().find(|row| row.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: row.len(),
            });
        }
        let iso = ToralIsogeny { matrix };
        if iso.rational().determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(iso)
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn determinant(&self) -> BigInt {
        self.rational().determinant().expect("square").to_integer()
    }

    fn rational(&self) -> QMatrix {
        QMatrix::from_rows(
            self.matrix
                .iter()
                .map(|row| row.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .expect("rows have equal length")
    }

    /// The matrix product `self · other`, i.e. the isogeny `other` followed by `self`.
    #[allow(clippy::needless_range_loop)]
    pub fn compose(&self, other: &ToralIsogeny) -> Result<ToralIsogeny> {
        let r = self.rank();
        if other.rank() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: other.rank(),
            });
        }
        let mut out = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut acc: i64 = 0;
                for k in 0..r {
                    acc = self.matrix[i][k]
                        .checked_mul(other.matrix[k][j])
                        .and_then(|p| acc.checked_add(p))
                        .ok_or_else(|| {
                            Error::InvalidDimension("matrix entries overflow i64".into())
                        })?;
                }
                out[i][j] = acc;
            }
        }
        ToralIsogeny::new(out)
    }
}

impl TryFrom<Vec<Vec<i64>>> for ToralIsogeny {
    type Error = Error;
    fn try_from(m: Vec<Vec<i64>>) -> Result<Self> {
        ToralIsogeny::new(m)
    }
}

impl From<ToralIsogeny> for Vec<Vec<i64>> {
    fn from(iso: ToralIsogeny) -> Self {
        iso.matrix
    }
}

/// A rational cocharacter together with its level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalCocharacter {
    #[serde(with = "crate::rational::serde_q_vec")]
    pub x: Vec<Q>,
    /// Least positive `N` with `N x` integral.
    #[serde(rename = "N")]
    pub level: u64,
}

impl FractionalCocharacter {
    pub fn new(x: Vec<Q>) -> Result<Self> {
        let level = x
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
            .to_u64()
            .ok_or_else(|| Error::InvalidDimension("lift level exceeds u64".into()))?;
        Ok(FractionalCocharacter { x, level })
    }
}

/// The unique rational `x` with `M x = h`, with its minimal level.
pub fn fractional_lift(iso: &ToralIsogeny, h: &[i64]) -> Result<FractionalCocharacter> {
    let target: Vec<Q> = h.iter().map(|&v| q(v)).collect();
    lift_rational(iso, &target)
}

/// Same as [`fractional_lift`] for an already fractional target.
pub fn lift_rational(iso: &ToralIsogeny, h: &[Q]) -> Result<FractionalCocharacter> {
    if h.len() != iso.rank() {
        return Err(Error::DimensionMismatch {
            expected: iso.rank(),
            got: h.len(),
        });
    }
    let x = iso.rational().solve(h)?;
    FractionalCocharacter::new(x)
}

/// Exponent of `Z^r / M Z^r`, the largest elementary divisor of `M`.
///
/// Every lift through `M` has level dividing this number.
pub fn lift_level_bound(iso: &ToralIsogeny) -> Result<u64> {
    let divisors = elementary_divisors(iso.matrix());
    let last = divisors.last().cloned().unwrap_or_else(BigInt::zero);
    if last.is_zero() {
        return Err(Error::Singular);
    }
    last.to_u64()
        .ok_or_else(|| Error::InvalidDimension("elementary divisor exceeds u64".into()))
}

/// Diagonal of the Smith normal form, `d_1 | d_2 | …`, all nonnegative;
/// zeros trail when the matrix is singular.
#[allow(clippy::needless_range_loop)]
pub fn elementary_divisors(matrix: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i1, j1), &(i2, j2)| a[i1][j1].abs().cmp(&a[i2][j2].abs()));
            let Some((pi, pj)) = pivot else {
                return finish(a, steps);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                let f = a[i][t].div_floor(&a[t][t]);
                if !f.is_zero() {
                    for j in t..cols {
                        let d = &f * &a[t][j];
                        a[i][j] -= d;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let f = a[t][j].div_floor(&a[t][t]);
                if !f.is_zero() {
                    for i in t..rows {
                        let d = &f * &a[i][t];
                        a[i][j] -= d;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match offender {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    finish(a, steps)
}

fn finish(a: Vec<Vec<BigInt>>, steps: usize) -> Vec<BigInt> {
    (0..steps).map(|i| a[i][i].abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn lift_examples() {
        let sq = ToralIsogeny::new(vec![vec![2]]).unwrap();
        let l = fractional_lift(&sq, &[1]).unwrap();
        assert_eq!((l.x, l.level), (vec![frac(1, 2)], 2));

        let m = ToralIsogeny::new(vec![vec![1, 1], vec![0, 2]]).unwrap();
        let l = fractional_lift(&m, &[1, 0]).unwrap();
        assert_eq!((l.x, l.level), (vec![q(1), q(0)], 1));
        let l = fractional_lift(&m, &[0, 1]).unwrap();
        assert_eq!((l.x.clone(), l.level), (vec![frac(-1, 2), frac(1, 2)], 2));
        // no integral preimage of (0,1): M x has even second coordinate for integral x
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                assert_ne!((a + b, 2 * b), (0, 1));
            }
        }
    }

    #[test]
    fn level_bound_examples() {
        let b = |m: Vec<Vec<i64>>| lift_level_bound(&ToralIsogeny::new(m).unwrap()).unwrap();
        assert_eq!(b(vec![vec![2]]), 2);
        assert_eq!(b(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), 1);
        assert_eq!(b(vec![vec![1, 1], vec![0, 2]]), 2);
        assert_eq!(
            elementary_divisors(&[vec![1, 1], vec![0, 2]]),
            vec![BigInt::from(1), BigInt::from(2)]
        );
    }

    #[test]
    fn smith_form_of_known_matrices() {
        let d = |m: &[Vec<i64>]| -> Vec<i64> {
            elementary_divisors(m)
                .iter()
                .map(|x| x.to_i64().unwrap())
                .collect()
        };
        assert_eq!(d(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(
            d(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            vec![2, 6, 12]
        );
        assert_eq!(d(&[vec![1, 2], vec![2, 4]]), vec![1, 0]);
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            ToralIsogeny::new(vec![vec![1, 2], vec![2, 4]]),
            Err(Error::Singular)
        );
        assert!(ToralIsogeny::new(vec![vec![1, 2]]).is_err());
        let m = ToralIsogeny::new(vec![vec![3]]).unwrap();
        assert!(matches!(
            fractional_lift(&m, &[1, 2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
