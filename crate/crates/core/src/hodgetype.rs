//! Hodge types as multisets of rational `(p, q)` pairs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, Q};

pub type Bidegree = (Q, Q);

/// The type of a (fractional) Hodge structure: each `(p, q)` with the
/// dimension of `V^{p,q}`.
///
/// Valid values are nonempty and real: `(p, q)` and `(q, p)` carry the same
/// multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HodgeType {
    entries: BTreeMap<Bidegree, u64>,
}

impl HodgeType {
    pub fn new(entries: impl IntoIterator<Item = (Bidegree, u64)>) -> Result<Self> {
        let mut map: BTreeMap<Bidegree, u64> = BTreeMap::new();
        for (pq, m) in entries {
            if m == 0 {
                return Err(Error::InvalidHodgeType(format!(
                    "multiplicity of ({}, {}) must be positive",
                    fmt_q(&pq.0),
                    fmt_q(&pq.1)
                )));
            }
            *map.entry(pq).or_insert(0) += m;
        }
        if map.is_empty() {
            return Err(Error::InvalidHodgeType("empty type".into()));
        }
        for ((p, qq), m) in &map {
            let mirror = map.get(&(qq.clone(), p.clone())).copied().unwrap_or(0);
            if mirror != *m {
                return Err(Error::InvalidHodgeType(format!(
                    "not real: ({}, {}) has multiplicity {m} but ({}, {}) has {mirror}",
                    fmt_q(p),
                    fmt_q(qq),
                    fmt_q(qq),
                    fmt_q(p)
                )));
            }
        }
        Ok(HodgeType { entries: map })
    }

    /// A multiset of bidegrees without the reality check, for pieces such as
    /// `V^{1,0}` taken on their own.
    pub fn graded(entries: impl IntoIterator<Item = (Bidegree, u64)>) -> Result<Self> {
        let mut map: BTreeMap<Bidegree, u64> = BTreeMap::new();
        for (pq, m) in entries {
            if m == 0 {
                return Err(Error::InvalidHodgeType(
                    "multiplicities must be positive".into(),
                ));
            }
            *map.entry(pq).or_insert(0) += m;
        }
        if map.is_empty() {
            return Err(Error::InvalidHodgeType("empty type".into()));
        }
        Ok(HodgeType { entries: map })
    }

    pub fn is_real(&self) -> bool {
        self.entries
            .iter()
            .all(|((p, qq), m)| self.multiplicity(qq, p) == *m)
    }

    /// The one-dimensional type `{(p, p)}`.
    pub fn point(p: Q) -> Self {
        HodgeType {
            entries: BTreeMap::from([((p.clone(), p), 1)]),
        }
    }

    /// `Q(0)`, the unit for [`tensor`].
    pub fn trivial() -> Self {
        Self::point(Q::zero())
    }

    /// `{(0,1):g, (1,0):g}`, the type of `H^1` of a `g`-dimensional torus.
    pub fn abelian(g: u64) -> Result<Self> {
        Self::new([((q(0), q(1)), g), ((q(1), q(0)), g)])
    }

    /// `{(1,-1):1, (0,0):n-2, (-1,1):1}`.
    pub fn k3(n: u64) -> Result<Self> {
        let mut e = vec![((q(1), q(-1)), 1), ((q(-1), q(1)), 1)];
        if n > 2 {
            e.push(((q(0), q(0)), n - 2));
        } else if n < 2 {
            return Err(Error::InvalidHodgeType(
                "K3 type needs dimension >= 2".into(),
            ));
        }
        Self::new(e)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Bidegree, u64)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    pub fn multiplicity(&self, p: &Q, qq: &Q) -> u64 {
        self.entries
            .get(&(p.clone(), qq.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Distinct values of `p`, increasing.
    pub fn p_values(&self) -> Vec<Q> {
        let mut ps: Vec<Q> = self.entries.keys().map(|(p, _)| p.clone()).collect();
        ps.dedup();
        ps
    }
}

impl fmt::Display for HodgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((p, qq), m)| format!("({},{}):{}", fmt_q(p), fmt_q(qq), m))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl std::str::FromStr for HodgeType {
    type Err = Error;

    /// Parses `"(p,q):m, (p,q):m, ..."`; `:m` may be omitted for multiplicity 1.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in hodge type {s:?}"));
        let mut entries = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("missing ')'"))?;
            let (p, qq) = body[..close]
                .split_once(',')
                .ok_or_else(|| bad("expected 'p,q'"))?;
            let pq = (parse_q(p)?, parse_q(qq)?);
            rest = body[close + 1..].trim_start();
            let mut mult = 1u64;
            if let Some(after) = rest.strip_prefix(':') {
                let after = after.trim_start();
                let end = after
                    .find(|c: char| !c.is_ascii_digit())
                    .unwrap_or(after.len());
                mult = after[..end].parse().map_err(|_| bad("bad multiplicity"))?;
                rest = after[end..].trim_start();
            }
            entries.push((pq, mult));
            if let Some(after) = rest.strip_prefix(',') {
                rest = after.trim_start();
                if rest.is_empty() {
                    return Err(bad("trailing ','"));
                }
            } else if !rest.is_empty() {
                return Err(bad("expected ','"));
            }
        }
        HodgeType::new(entries)
    }
}

impl Serialize for HodgeType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            p: String,
            q: String,
            mult: u64,
        }
        self.entries
            .iter()
            .map(|((p, qq), m)| Entry {
                p: fmt_q(p),
                q: fmt_q(qq),
                mult: *m,
            })
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HodgeType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry {
            p: String,
            q: String,
            mult: u64,
        }
        let raw = Vec::<Entry>::deserialize(d)?;
        let mut entries = Vec::with_capacity(raw.len());
        for e in raw {
            let p = parse_q(&e.p).map_err(serde::de::Error::custom)?;
            let qq = parse_q(&e.q).map_err(serde::de::Error::custom)?;
            entries.push(((p, qq), e.mult));
        }
        HodgeType::new(entries).map_err(serde::de::Error::custom)
    }
}

/// Minkowski sum of bidegrees with convolved multiplicities.
pub fn tensor(a: &HodgeType, b: &HodgeType) -> HodgeType {
    let mut out: BTreeMap<Bidegree, u64> = BTreeMap::new();
    for ((p1, q1), m1) in &a.entries {
        for ((p2, q2), m2) in &b.entries {
            *out.entry((p1 + p2, q1 + q2)).or_insert(0) += m1 * m2;
        }
    }
    HodgeType { entries: out }
}

pub fn tensor_all(factors: &[HodgeType]) -> HodgeType {
    factors
        .iter()
        .fold(HodgeType::trivial(), |acc, f| tensor(&acc, f))
}

pub fn dual(a: &HodgeType) -> HodgeType {
    HodgeType {
        entries: a
            .entries
            .iter()
            .map(|((p, qq), m)| ((-p, -qq), *m))
            .collect(),
    }
}

/// Tensoring with `Q(c)`, shifting every bidegree by `(-c, -c)`.
pub fn tate_twist(a: &HodgeType, c: &Q) -> HodgeType {
    HodgeType {
        entries: a
            .entries
            .iter()
            .map(|((p, qq), m)| ((p - c, qq - c), *m))
            .collect(),
    }
}

pub fn direct_sum(a: &HodgeType, b: &HodgeType) -> HodgeType {
    let mut entries = a.entries.clone();
    for (k, m) in &b.entries {
        *entries.entry(k.clone()).or_insert(0) += m;
    }
    HodgeType { entries }
}

/// The weight `k` if every bidegree has `p + q = k`.
pub fn purity(a: &HodgeType) -> Option<Q> {
    let mut weights = a.entries.keys().map(|(p, qq)| p + qq);
    let w = weights.next()?;
    weights.all(|x| x == w).then_some(w)
}

pub fn is_k3_type(a: &HodgeType) -> bool {
    let (one, zero) = (Q::one(), Q::zero());
    let allowed = [
        (one.clone(), -one.clone()),
        (zero.clone(), zero),
        (-one.clone(), one.clone()),
    ];
    a.entries.keys().all(|k| allowed.contains(k)) && a.multiplicity(&one, &-one.clone()) == 1
}

pub fn is_abelian_type(a: &HodgeType) -> bool {
    a.entries
        .keys()
        .all(|(p, qq)| (p.is_zero() && qq.is_one()) || (p.is_one() && qq.is_zero()))
}

/// Result of [`weight1_tensor_factor`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorFactorization {
    /// Index of the factor carrying the weight-one part.
    pub index: usize,
    /// `c_j` for each `j != index`, in order: factor `j` is of type `{(c_j, c_j)}`.
    #[serde(with = "crate::rational::serde_q_vec")]
    pub constants: Vec<Q>,
    /// `c_i` such that factor `index` has type `{(c_i+1, c_i), (c_i, c_i+1)}`.
    #[serde(with = "crate::rational::serde_q")]
    pub offset: Q,
}

/// Given factors whose tensor product is of type `{(0,1),(1,0)}`, finds the
/// unique factor that is not a sum of copies of a single `(c, c)`.
///
/// A Minkowski sum of sets with sizes `s_1, …, s_k` has at least
/// `Σ s_j − k + 1` elements, so exactly one factor can have more than one
/// value of `p`, and that factor has exactly two, differing by one.
pub fn weight1_tensor_factor(factors: &[HodgeType]) -> Result<TensorFactorization> {
    if factors.is_empty() {
        return Err(Error::Shape("no factors given".into()));
    }
    if let Some(j) = factors.iter().position(|f| !f.is_real()) {
        return Err(Error::Shape(format!("factor {j} is not real")));
    }
    let total = tensor_all(factors);
    if !is_abelian_type(&total) {
        return Err(Error::Shape(format!(
            "tensor product has type {total}, not a subset of {{(0,1),(1,0)}}"
        )));
    }
    let spread: Vec<usize> = factors.iter().map(|f| f.p_values().len()).collect();
    let wide: Vec<usize> = (0..factors.len()).filter(|&j| spread[j] > 1).collect();
    let &[index] = wide.as_slice() else {
        return Err(Error::Internal(format!(
            "expected exactly one factor with several p-values, found {}",
            wide.len()
        )));
    };

    let mut constants = Vec::with_capacity(factors.len() - 1);
    for (j, f) in factors.iter().enumerate() {
        if j == index {
            continue;
        }
        let ((p, qq), _) = f.entries().next().expect("types are nonempty");
        if p != qq {
            return Err(Error::Internal(format!(
                "factor {j} has type {f}, not a single (c,c)"
            )));
        }
        constants.push(p.clone());
    }

    let wide_factor = &factors[index];
    let ps = wide_factor.p_values();
    let offset = ps[0].clone();
    let hi = (&offset + Q::one(), offset.clone());
    let lo = (offset.clone(), &offset + Q::one());
    let shape_ok = ps.len() == 2 && wide_factor.entries().all(|(k, _)| *k == hi || *k == lo);
    if !shape_ok {
        return Err(Error::Internal(format!(
            "factor {index} has type {wide_factor}, not {{(c+1,c),(c,c+1)}}"
        )));
    }
    Ok(TensorFactorization {
        index,
        constants,
        offset,
    })
}
