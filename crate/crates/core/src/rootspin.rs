//! Root data of types `B_m` and `D_m` in the standard `t_i` coordinates,
//! special vertices of cocharacters, and spin weight spectra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, frac, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    /// `SO(2m+1)`.
    B,
    /// `SO(2m)`.
    D,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::B => "B",
            Series::D => "D",
        })
    }
}

impl std::str::FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Series::B),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::Parse(format!(
                "unknown series {other:?}, expected B or D"
            ))),
        }
    }
}

/// Which half-spin representation of `D_m`: parity of the number of `-1/2` entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfSpin {
    Even,
    Odd,
}

impl std::str::FromStr for HalfSpin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "even" => Ok(HalfSpin::Even),
            "odd" => Ok(HalfSpin::Odd),
            other => Err(Error::Parse(format!(
                "unknown half {other:?}, expected even or odd"
            ))),
        }
    }
}

/// Simple roots `t_1 - t_2, …, t_{m-1} - t_m` followed by `t_m` (B) or
/// `t_{m-1} + t_m` (D), as integer vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    series: Series,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let min = match series {
            Series::B => 2,
            Series::D => 3,
        };
        if rank < min {
            return Err(Error::InvalidRootDatum(format!(
                "{series}_{rank}: rank must be at least {min}"
            )));
        }
        let m = rank;
        let mut simple_roots = Vec::with_capacity(m);
        for i in 0..m - 1 {
            let mut v = vec![0; m];
            v[i] = 1;
            v[i + 1] = -1;
            simple_roots.push(v);
        }
        let mut last = vec![0; m];
        match series {
            Series::B => last[m - 1] = 1,
            Series::D => {
                last[m - 2] = 1;
                last[m - 1] = 1;
            }
        }
        simple_roots.push(last);
        Ok(RootDatum {
            series,
            rank,
            simple_roots,
        })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    /// `t_i ± t_j` for `i < j`, plus `t_i` for series B.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let m = self.rank;
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for s in [-1, 1] {
                    let mut v = vec![0; m];
                    v[i] = 1;
                    v[j] = s;
                    out.push(v);
                }
            }
            if self.series == Series::B {
                let mut v = vec![0; m];
                v[i] = 1;
                out.push(v);
            }
        }
        out
    }
}

/// A rational cocharacter in the coordinates dual to the `t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cocharacter(#[serde(with = "crate::rational::serde_q_vec")] pub Vec<Q>);

impl Cocharacter {
    /// `(1, 0, …, 0)`: acts by `z` on one isotropic line and `z^{-1}` on its partner.
    pub fn distinguished(rank: usize) -> Self {
        let mut v = vec![Q::zero(); rank];
        if rank > 0 {
            v[0] = Q::one();
        }
        Cocharacter(v)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Cocharacter(v.iter().map(|&x| q(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

fn dot_int(root: &[i64], nu: &Cocharacter) -> Q {
    root.iter()
        .zip(&nu.0)
        .filter(|(a, _)| **a != 0)
        .map(|(a, x)| x * q(*a))
        .sum()
}

fn check_rank(datum: &RootDatum, nu: &Cocharacter) -> Result<()> {
    if datum.rank != nu.rank() {
        return Err(Error::DimensionMismatch {
            expected: datum.rank,
            got: nu.rank(),
        });
    }
    Ok(())
}

/// `⟨α_i, ν⟩` for the simple roots in order.
pub fn pairings(datum: &RootDatum, nu: &Cocharacter) -> Result<Vec<Q>> {
    check_rank(datum, nu)?;
    Ok(datum.simple_roots.iter().map(|a| dot_int(a, nu)).collect())
}

fn root_label(root: &[i64]) -> String {
    let mut s = String::new();
    for (i, c) in root.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        if !s.is_empty() || *c < 0 {
            s.push_str(if *c < 0 { "-" } else { "+" });
        }
        s.push_str(&format!("t{}", i + 1));
    }
    s
}

/// 1-based index of the unique simple root pairing to 1 with `ν`.
///
/// Requires `ν` dominant and every positive root to pair into `{0, 1}`.
pub fn special_vertex(datum: &RootDatum, nu: &Cocharacter) -> Result<usize> {
    let pairs = pairings(datum, nu)?;
    if let Some((i, v)) = pairs.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(Error::NotDominant {
            index: i + 1,
            value: fmt_q(v),
        });
    }
    for root in datum.positive_roots() {
        let v = dot_int(&root, nu);
        if !(v.is_zero() || v.is_one()) {
            return Err(Error::NotMinuscule {
                root: root_label(&root),
                value: fmt_q(&v),
            });
        }
    }
    let hits: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].is_one()).collect();
    match hits.as_slice() {
        [i] => Ok(i + 1),
        _ => Err(Error::SpecialVertexCount(hits.len())),
    }
}

/// Weights with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSet {
    rank: usize,
    weights: BTreeMap<Vec<Q>, u64>,
}

impl WeightSet {
    pub fn new(rank: usize, weights: impl IntoIterator<Item = Vec<Q>>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for w in weights {
            if w.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: w.len(),
                });
            }
            *map.entry(w).or_insert(0) += 1;
        }
        Ok(WeightSet { rank, weights: map })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Vec<Q>, u64)> {
        self.weights.iter().map(|(w, m)| (w, *m))
    }

    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }

    fn map_all(&self, f: impl Fn(&[Q]) -> Vec<Q>) -> BTreeMap<Vec<Q>, u64> {
        let mut out = BTreeMap::new();
        for (w, m) in &self.weights {
            *out.entry(f(w)).or_insert(0) += m;
        }
        out
    }

    /// Invariance under every transposition of coordinates.
    pub fn is_permutation_invariant(&self) -> bool {
        (0..self.rank).all(|i| {
            (i + 1..self.rank).all(|j| {
                self.map_all(|w| {
                    let mut v = w.to_vec();
                    v.swap(i, j);
                    v
                }) == self.weights
            })
        })
    }

    /// Invariance under a sign flip of the given coordinates.
    pub fn is_invariant_under_flip(&self, coords: &[usize]) -> bool {
        self.map_all(|w| {
            let mut v = w.to_vec();
            for &c in coords {
                v[c] = -v[c].clone();
            }
            v
        }) == self.weights
    }

    /// Weyl-group sign symmetry: all single flips for B, flips of pairs for D.
    pub fn is_sign_invariant(&self, series: Series) -> bool {
        match series {
            Series::B => (0..self.rank).all(|i| self.is_invariant_under_flip(&[i])),
            Series::D => (0..self.rank)
                .all(|i| (i + 1..self.rank).all(|j| self.is_invariant_under_flip(&[i, j]))),
        }
    }
}

/// The spin representation of `B_m` (`half = None`), or one half-spin
/// representation of `D_m`: the vectors `(±1/2, …, ±1/2)`, restricted for D
/// to a parity of minus signs.
pub fn spin_weights(series: Series, rank: usize, half: Option<HalfSpin>) -> Result<WeightSet> {
    match (series, half) {
        (Series::B, None) | (Series::D, Some(_)) => {}
        (Series::B, Some(_)) => {
            return Err(Error::InvalidRootDatum(
                "series B has a single spin representation".into(),
            ))
        }
        (Series::D, None) => {
            return Err(Error::InvalidRootDatum(
                "series D needs a half-spin choice (even or odd)".into(),
            ))
        }
    }
    RootDatum::new(series, rank)?;
    if rank > 24 {
        return Err(Error::InvalidDimension(format!(
            "rank {rank} too large to enumerate"
        )));
    }
    let half_q = frac(1, 2);
    let weights = (0u32..(1 << rank))
        .filter(|bits| match half {
            None => true,
            Some(HalfSpin::Even) => bits.count_ones() % 2 == 0,
            Some(HalfSpin::Odd) => bits.count_ones() % 2 == 1,
        })
        .map(|bits| {
            (0..rank)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        -half_q.clone()
                    } else {
                        half_q.clone()
                    }
                })
                .collect()
        });
    WeightSet::new(rank, weights)
}

/// The standard representation: `±t_i`, plus the zero weight for series B.
pub fn standard_weights(series: Series, rank: usize) -> Result<WeightSet> {
    RootDatum::new(series, rank)?;
    let mut ws = Vec::new();
    for i in 0..rank {
        for s in [1, -1] {
            let mut v = vec![Q::zero(); rank];
            v[i] = q(s);
            ws.push(v);
        }
    }
    if series == Series::B {
        ws.push(vec![Q::zero(); rank]);
    }
    WeightSet::new(rank, ws)
}

/// Multiset of `⟨w, ν⟩` over the weights.
pub fn weight_spectrum(weights: &WeightSet, nu: &Cocharacter) -> Result<BTreeMap<Q, u64>> {
    if weights.rank != nu.rank() {
        return Err(Error::DimensionMismatch {
            expected: weights.rank,
            got: nu.rank(),
        });
    }
    let mut out = BTreeMap::new();
    for (w, m) in &weights.weights {
        let v: Q = w.iter().zip(&nu.0).map(|(a, b)| a * b).sum();
        *out.entry(v).or_insert(0) += m;
    }
    Ok(out)
}

/// `Some(a)` iff the spectrum consists of exactly the two values `a` and `a + 1`.
pub fn two_weight_offset(spectrum: &BTreeMap<Q, u64>) -> Option<Q> {
    let keys: Vec<&Q> = spectrum.keys().collect();
    match keys.as_slice() {
        [a, b] if (*b - *a).is_one() => Some((*a).clone()),
        _ => None,
    }
}
