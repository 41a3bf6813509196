//! The Clifford algebra of a diagonal quadratic form on the bitmask basis
//! `{e_S : S ⊆ {1..n}}`, and a first-principles computation of the center of
//! its even part.
//!
//! A mask stores `S` with bit `i - 1` set for `i ∈ S`; generators inside a
//! basis monomial are always written in increasing order.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::quadspace::{is_square, DiagonalForm};
use crate::rational::{fmt_q, Q};

/// Default largest `n` accepted by [`even_center`].
pub const DEFAULT_CENTER_BOUND: usize = 8;

/// Largest dimension representable by the 32-bit mask basis.
pub const MAX_DIM: usize = 30;

pub type Mask = u32;

/// Sparse element of `C(V)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordElement {
    n: usize,
    coords: BTreeMap<Mask, Q>,
}

impl CliffordElement {
    pub fn zero(n: usize) -> Self {
        CliffordElement {
            n,
            coords: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Q::one())
    }

    pub fn scalar(n: usize, c: Q) -> Self {
        Self::zero(n).with_term(0, c)
    }

    /// `c · e_S`.
    pub fn monomial(n: usize, mask: Mask, c: Q) -> Result<Self> {
        check_mask(n, mask)?;
        Ok(Self::zero(n).with_term(mask, c))
    }

    /// The basis monomial `e_S`.
    pub fn basis(n: usize, mask: Mask) -> Result<Self> {
        Self::monomial(n, mask, Q::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Mask, Q)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (m, c) in terms {
            check_mask(n, m)?;
            out.add_term(m, c);
        }
        Ok(out)
    }

    fn with_term(mut self, mask: Mask, c: Q) -> Self {
        self.add_term(mask, c);
        self
    }

    fn add_term(&mut self, mask: Mask, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.coords.entry(mask).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coords.remove(&mask);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &Q)> {
        self.coords.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, mask: Mask) -> Q {
        self.coords.get(&mask).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Scalar multiple of `e_∅`, if it is one.
    pub fn as_scalar(&self) -> Option<Q> {
        match self.coords.len() {
            0 => Some(Q::zero()),
            1 => self.coords.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_even(&self) -> bool {
        self.coords.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.coords {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.n);
        for (m, v) in &self.coords {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }
}

impl CliffordElement {
    /// Parses the [`Display`](fmt::Display) syntax, e.g. `"2 + 1/2*e{1,2} - e{1,3}"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in clifford element {s:?}"));
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut depth = 0i32;
        for ch in s.chars() {
            match ch {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
            let ends_term = cur
                .trim_end()
                .chars()
                .last()
                .is_some_and(|c| c.is_ascii_digit() || c == '}');
            if depth == 0 && (ch == '+' || ch == '-') && ends_term {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        if depth != 0 {
            return Err(bad("unbalanced braces"));
        }
        terms.push(cur);

        let mut out = Self::zero(n);
        for raw in terms {
            let mut t: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let mut sign = Q::one();
            while let Some(c) = t.chars().next().filter(|c| *c == '+' || *c == '-') {
                if c == '-' {
                    sign = -sign;
                }
                t.remove(0);
            }
            if t.is_empty() {
                return Err(bad("empty term"));
            }
            let (coef, blade) = match t.find('e') {
                Some(pos) => {
                    let head = t[..pos].strip_suffix('*').unwrap_or(&t[..pos]);
                    let coef = if head.is_empty() {
                        Q::one()
                    } else {
                        crate::rational::parse_q(head)?
                    };
                    (coef, Some(&t[pos..]))
                }
                None => (crate::rational::parse_q(&t)?, None),
            };
            let mask = match blade {
                None => 0,
                Some(b) => {
                    let inner = b
                        .strip_prefix("e{")
                        .and_then(|r| r.strip_suffix('}'))
                        .ok_or_else(|| bad("expected e{i,j,...}"))?;
                    let idx: Vec<usize> = if inner.is_empty() {
                        Vec::new()
                    } else {
                        inner
                            .split(',')
                            .map(|x| x.parse::<usize>().map_err(|_| bad("bad generator index")))
                            .collect::<Result<_>>()?
                    };
                    let mut sorted = idx.clone();
                    sorted.sort_unstable();
                    if sorted != idx {
                        return Err(bad("generator indices must be increasing"));
                    }
                    mask_of(&idx)?
                }
            };
            check_mask(n, mask)?;
            out.add_term(mask, sign * coef);
        }
        Ok(out)
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.coords.iter().enumerate() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if *m == 0 {
                write!(f, "{}", fmt_q(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_q(&abs))?;
                }
                write!(f, "{}", mask_label(*m))?;
            }
        }
        Ok(())
    }
}

/// `e{1,2}`-style label of a basis mask.
pub fn mask_label(mask: Mask) -> String {
    let idx: Vec<String> = mask_indices(mask).iter().map(|i| i.to_string()).collect();
    format!("e{{{}}}", idx.join(","))
}

/// 1-based generator indices of a mask, increasing.
pub fn mask_indices(mask: Mask) -> Vec<usize> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// Mask of a set of 1-based generator indices.
pub fn mask_of(indices: &[usize]) -> Result<Mask> {
    let mut m: Mask = 0;
    for &i in indices {
        if i == 0 || i > MAX_DIM {
            return Err(Error::InvalidDimension(format!(
                "generator index {i} out of range"
            )));
        }
        let bit = 1 << (i - 1);
        if m & bit != 0 {
            return Err(Error::Parse(format!("generator index {i} repeated")));
        }
        m |= bit;
    }
    Ok(m)
}

fn check_mask(n: usize, mask: Mask) -> Result<()> {
    if n > MAX_DIM {
        return Err(Error::InvalidDimension(format!(
            "n = {n} exceeds {MAX_DIM}"
        )));
    }
    if (mask as u64) >= (1u64 << n) {
        return Err(Error::InvalidDimension(format!(
            "basis mask {mask:#b} has generators beyond n = {n}"
        )));
    }
    Ok(())
}

fn check_same(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `(-1)^{#{(i,j) ∈ S×T : i > j}}` as `true` for a minus sign.
pub fn reorder_sign(s: Mask, t: Mask) -> bool {
    let mut inversions = 0u32;
    let mut rest = s;
    while rest != 0 {
        let i = rest.trailing_zeros();
        inversions += (t & ((1u32 << i) - 1)).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

/// `e_S · e_T = sign(S,T) · (∏_{i∈S∩T} d_i) · e_{S△T}`.
pub fn basis_product(s: Mask, t: Mask, d: &DiagonalForm) -> (Mask, Q) {
    let mut c: Q = Q::one();
    let mut common = s & t;
    while common != 0 {
        let i = common.trailing_zeros() as usize;
        c *= &d.coeffs()[i];
        common &= common - 1;
    }
    if reorder_sign(s, t) {
        c = -c;
    }
    (s ^ t, c)
}

pub fn clifford_product(
    a: &CliffordElement,
    b: &CliffordElement,
    d: &DiagonalForm,
) -> Result<CliffordElement> {
    check_same(d.dim(), a.n)?;
    check_same(d.dim(), b.n)?;
    check_mask(d.dim(), 0)?;
    let mut out = CliffordElement::zero(a.n);
    for (s, x) in &a.coords {
        for (t, y) in &b.coords {
            let (m, c) = basis_product(*s, *t, d);
            out.add_term(m, c * x * y);
        }
    }
    Ok(out)
}

/// Masks of even popcount, in increasing order; there are `2^{n-1}` of them.
pub fn even_basis(n: usize) -> Result<Vec<Mask>> {
    if n == 0 {
        return Err(Error::InvalidDimension("even basis needs n >= 1".into()));
    }
    if n > MAX_DIM {
        return Err(Error::InvalidDimension(format!(
            "n = {n} exceeds {MAX_DIM}"
        )));
    }
    Ok((0..(1u32 << n))
        .filter(|m| m.count_ones() % 2 == 0)
        .collect())
}

/// `(dim C(V), dim C⁺(V)) = (2^n, 2^{n-1})`.
pub fn dimension_check(n: usize) -> Result<(u128, u128)> {
    if n == 0 || n > 127 {
        return Err(Error::InvalidDimension(format!("n = {n} outside 1..=127")));
    }
    Ok((1u128 << n, 1u128 << (n - 1)))
}

/// Center of `C⁺(V)` recomputed by exact linear algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterReport {
    pub dim: usize,
    pub basis: Vec<CliffordElement>,
    /// `None` for odd `n`.
    pub split: Option<bool>,
    /// The scalar `s` with `z² = s` for the normalized non-scalar central `z`
    /// (even `n` only).
    pub central_square: Option<Q>,
}

/// Computes `{z ∈ C⁺ : z g = g z}` for the generators `g = e_{i,j}` of `C⁺`,
/// verifies commutation with the whole even basis, and for even `n` decides
/// whether the two-dimensional center is split (`≅ Q × Q`).
pub fn even_center(d: &DiagonalForm) -> Result<CenterReport> {
    even_center_bounded(d, DEFAULT_CENTER_BOUND)
}

pub fn even_center_bounded(d: &DiagonalForm, bound: usize) -> Result<CenterReport> {
    let n = d.dim();
    if n > bound {
        return Err(Error::OracleBound { n, bound });
    }
    let basis = even_basis(n)?;
    let col_of: BTreeMap<Mask, usize> = basis.iter().enumerate().map(|(k, m)| (*m, k)).collect();

    let generators: Vec<Mask> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (1 << i) | (1 << j)))
        .collect();

    // One equation per (generator g, output mask U): the e_U coefficient of z g - g z.
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for &g in &generators {
        let mut eqs: BTreeMap<Mask, Vec<Q>> = BTreeMap::new();
        for &s in &basis {
            let (u, right) = basis_product(s, g, d);
            let (u2, left) = basis_product(g, s, d);
            debug_assert_eq!(u, u2);
            let c = right - left;
            if c.is_zero() {
                continue;
            }
            eqs.entry(u).or_insert_with(|| vec![Q::zero(); basis.len()])[col_of[&s]] += c;
        }
        rows.extend(eqs.into_values());
    }

    let kernel = if rows.is_empty() {
        QMatrix::identity(basis.len()).to_rows()
    } else {
        QMatrix::from_rows(rows)?.nullspace()
    };
    let center: Vec<CliffordElement> = kernel
        .into_iter()
        .map(|v| {
            CliffordElement::from_terms(n, basis.iter().copied().zip(v))
                .expect("even masks are within range")
        })
        .collect();

    for z in &center {
        for &m in &basis {
            let g = CliffordElement::basis(n, m)?;
            if clifford_product(z, &g, d)? != clifford_product(&g, z, d)? {
                return Err(Error::Internal(format!(
                    "center element {z} does not commute with {}",
                    mask_label(m)
                )));
            }
        }
    }

    let (split, central_square) = if n.is_multiple_of(2) {
        let s = normalized_central_square(&center, d)?;
        (Some(is_square(&s)), Some(s))
    } else {
        (None, None)
    };

    Ok(CenterReport {
        dim: center.len(),
        basis: center,
        split,
        central_square,
    })
}

/// For a two-dimensional center `Q[w]`, finds `z = w - α/2` with `z² = s`
/// scalar, where `w² = α w + β`, and returns `s`.
fn normalized_central_square(center: &[CliffordElement], d: &DiagonalForm) -> Result<Q> {
    let n = d.dim();
    if center.len() != 2 {
        return Err(Error::Internal(format!(
            "even-dimensional form has a center of dimension {} in C⁺",
            center.len()
        )));
    }
    let w0 = center
        .iter()
        .find(|z| z.as_scalar().is_none())
        .ok_or_else(|| Error::Internal("center is spanned by scalars".into()))?;
    // Remove the scalar part so that w is independent of 1.
    let w = w0.sub(&CliffordElement::scalar(n, w0.coeff(0)))?;
    let w2 = clifford_product(&w, &w, d)?;

    // Solve w² = α w + β: pick any non-scalar mask of w to read off α.
    let (pivot, wp) = w
        .terms()
        .find(|(m, _)| *m != 0)
        .map(|(m, c)| (m, c.clone()))
        .ok_or_else(|| Error::Internal("non-scalar central element vanished".into()))?;
    let alpha = w2.coeff(pivot) / wp;
    let beta = w2.coeff(0);
    let check = w
        .scale(&alpha)
        .add(&CliffordElement::scalar(n, beta.clone()))?;
    if check != w2 {
        return Err(Error::Internal(
            "center is not closed under squaring".into(),
        ));
    }
    let half = Q::new(1.into(), 2.into());
    let z = w.sub(&CliffordElement::scalar(n, &alpha * &half))?;
    let z2 = clifford_product(&z, &z, d)?;
    let s = z2
        .as_scalar()
        .ok_or_else(|| Error::Internal(format!("normalized central element squares to {z2}")))?;
    let expected = beta + &alpha * &alpha * &half * &half;
    if s != expected {
        return Err(Error::Internal(
            "central square disagrees with w² = αw + β".into(),
        ));
    }
    Ok(s)
}
