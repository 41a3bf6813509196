//! Simple factors of the Kuga–Satake Hodge structure `H_KS` on `C⁺(V)` and
//! the resulting lower bounds on the dimension of a complex torus carrying `V`.
//!
//! With `n = dim V` and `δ` the discriminant, the structure of `H_KS` depends
//! on the parity of `n` and, for even `n`, on whether `(-1)^{n/2} δ` is a
//! square. Within each case an integer `r ∈ {1, 2}` (the number of spin
//! constituents in a simple factor) is fixed by the splitness of a quaternion
//! algebra that is not computed here, so reports carry both branches.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clifford::{even_center_bounded, DEFAULT_CENTER_BOUND};
use crate::error::{Error, Result};
use crate::quadspace::{diagonalize, square_class, QuadraticSpace, SquareClass};

/// Largest `n` for which `2^{n-1}` fits the report's integer fields.
pub const MAX_N: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KSCase {
    /// `n` odd: `H_KS ≅ H^N`.
    #[serde(rename = "ODD")]
    Odd,
    /// `n` even, `(-1)^{n/2} δ` not a square: `H_KS ≅ H^N`.
    #[serde(rename = "EVEN_NONSQUARE")]
    EvenNonsquare,
    /// `n` even, `(-1)^{n/2} δ` a square: `H_KS ≅ (H ⊕ H')^N`.
    #[serde(rename = "EVEN_SQUARE")]
    EvenSquare,
}

impl KSCase {
    /// Case label for any `n >= 1`.
    pub fn determine(n: usize, delta: &SquareClass) -> KSCase {
        if n % 2 == 1 {
            KSCase::Odd
        } else if signed_discriminant(n, delta).is_trivial() {
            KSCase::EvenSquare
        } else {
            KSCase::EvenNonsquare
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            KSCase::Odd => "ODD",
            KSCase::EvenNonsquare => "EVEN_NONSQUARE",
            KSCase::EvenSquare => "EVEN_SQUARE",
        }
    }
}

impl fmt::Display for KSCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Square class of `(-1)^{n/2} δ` (of `δ` itself for odd `n`).
pub fn signed_discriminant(n: usize, delta: &SquareClass) -> SquareClass {
    if n.is_multiple_of(2) && (n / 2) % 2 == 1 {
        delta.negate()
    } else {
        delta.clone()
    }
}

/// Splitness of the endomorphism quaternion algebra, when known from outside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitness {
    /// Selects `r = 1`.
    Split,
    /// Selects `r = 2`.
    Nonsplit,
}

impl Splitness {
    pub fn branch_r(&self) -> u8 {
        match self {
            Splitness::Split => 1,
            Splitness::Nonsplit => 2,
        }
    }
}

impl std::str::FromStr for Splitness {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "split" => Ok(Splitness::Split),
            "nonsplit" => Ok(Splitness::Nonsplit),
            other => Err(Error::Parse(format!("unknown splitness {other:?}"))),
        }
    }
}

/// One value of `r` and the resulting decomposition of `H_KS`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSBranch {
    pub r: u8,
    /// Number of pairwise nonisomorphic simple factors (1 or 2).
    #[serde(rename = "factors")]
    pub distinct_factors: u8,
    /// Dimension of each simple factor.
    #[serde(rename = "dim")]
    pub factor_dim: u64,
    /// Multiplicity of each simple factor.
    #[serde(rename = "N")]
    pub multiplicity: u64,
}

impl KSBranch {
    pub fn total_dim(&self) -> u128 {
        self.distinct_factors as u128 * self.factor_dim as u128 * self.multiplicity as u128
    }
}

/// Cross-check of the case label against the center of `C⁺(V)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub center_dim: usize,
    pub split: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSReport {
    pub n: usize,
    pub delta: SquareClass,
    pub case: KSCase,
    pub branches: Vec<KSBranch>,
    pub torus_bound: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitness_hint: Option<Splitness>,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

impl KSReport {
    pub fn branch(&self, r: u8) -> Option<&KSBranch> {
        self.branches.iter().find(|b| b.r == r)
    }

    /// The branch picked by `splitness_hint`, if any.
    pub fn selected_branch(&self) -> Option<&KSBranch> {
        self.splitness_hint.and_then(|h| self.branch(h.branch_r()))
    }
}

fn pow2(e: usize) -> u64 {
    1u64 << e
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidDimension(format!(
            "n = {n}; the classifier needs n >= 3"
        )));
    }
    if n > MAX_N {
        return Err(Error::InvalidDimension(format!("n = {n} exceeds {MAX_N}")));
    }
    Ok(())
}

/// The two branches `r = 1, 2` for a case at dimension `n >= 3`.
pub fn branches_for(n: usize, case: KSCase) -> Result<Vec<KSBranch>> {
    check_n(n)?;
    let branch = |r, f, dim_exp: usize, n_exp: usize| KSBranch {
        r,
        distinct_factors: f,
        factor_dim: pow2(dim_exp),
        multiplicity: pow2(n_exp),
    };
    Ok(match case {
        KSCase::Odd => {
            if n.is_multiple_of(2) {
                return Err(Error::InvalidDimension(format!(
                    "case ODD needs odd n, got {n}"
                )));
            }
            vec![
                branch(1, 1, (n - 1) / 2, (n - 1) / 2),
                branch(2, 1, n.div_ceil(2), (n - 3) / 2),
            ]
        }
        KSCase::EvenNonsquare | KSCase::EvenSquare if n % 2 == 1 => {
            return Err(Error::InvalidDimension(format!(
                "case {case} needs even n, got {n}"
            )));
        }
        KSCase::EvenNonsquare => vec![
            branch(1, 1, n / 2, n / 2 - 1),
            branch(2, 1, n / 2 + 1, n / 2 - 2),
        ],
        KSCase::EvenSquare => vec![
            branch(1, 2, n / 2 - 1, n / 2 - 1),
            branch(2, 2, n / 2, n / 2 - 2),
        ],
    })
}

/// Least possible dimension of a complex torus whose cohomology carries `V`.
pub fn torus_bound(n: usize, delta: &SquareClass) -> Result<u64> {
    check_n(n)?;
    Ok(match KSCase::determine(n, delta) {
        KSCase::Odd => pow2((n - 3) / 2),
        KSCase::EvenSquare => pow2(n / 2 - 2),
        KSCase::EvenNonsquare => pow2(n / 2 - 1),
    })
}

pub fn classify(n: usize, delta: &SquareClass) -> Result<KSReport> {
    let case = KSCase::determine(n, delta);
    let branches = branches_for(n, case)?;
    Ok(KSReport {
        n,
        delta: delta.clone(),
        case,
        branches,
        torus_bound: torus_bound(n, delta)?,
        splitness_hint: None,
        warnings: Vec::new(),
        signature: None,
        oracle: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Cross-check the case label against the center of `C⁺(V)`.
    pub oracle: bool,
    /// Largest `n` for which the oracle runs; larger inputs skip it with a warning.
    pub oracle_max_n: usize,
    pub splitness_hint: Option<Splitness>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            oracle: false,
            oracle_max_n: DEFAULT_CENTER_BOUND,
            splitness_hint: None,
        }
    }
}

/// Diagonalize, take the discriminant, classify, and attach diagnostics.
pub fn classify_from_gram(space: &QuadraticSpace, opts: &ClassifyOptions) -> Result<KSReport> {
    let diag = diagonalize(space)?;
    let delta = square_class(&diag.product())?;
    let mut report = classify(space.dim(), &delta)?;
    report.splitness_hint = opts.splitness_hint;

    let (pos, neg) = diag.signature();
    report.signature = Some((pos, neg));
    if pos < 2 {
        report.warnings.push(format!(
            "signature ({pos}, {neg}) has no positive definite 2-plane; \
             no K3-type Hodge structure admits this form as a Beauville-Bogomolov form"
        ));
    }

    if opts.oracle {
        if space.dim() > opts.oracle_max_n {
            report.warnings.push(format!(
                "clifford oracle skipped: n = {} exceeds bound {}",
                space.dim(),
                opts.oracle_max_n
            ));
        } else {
            let center = even_center_bounded(&diag, opts.oracle_max_n)?;
            let consistent = match report.case {
                KSCase::Odd => center.dim == 1 && center.split.is_none(),
                KSCase::EvenSquare => center.dim == 2 && center.split == Some(true),
                KSCase::EvenNonsquare => center.dim == 2 && center.split == Some(false),
            };
            if !consistent {
                return Err(Error::Internal(format!(
                    "clifford oracle disagrees with case {}: center dim {}, split {:?}",
                    report.case, center.dim, center.split
                )));
            }
            report.oracle = Some(OracleCheck {
                center_dim: center.dim,
                split: center.split,
            });
        }
    }
    Ok(report)
}

/// Classification of `H^2` of a compact hyperkähler manifold with second Betti
/// number `b2`, or of the orthogonal complement of a polarization in it, using
/// only what the signature `(3, b2 - 3)` forces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperkahlerPreset {
    pub b2: usize,
    pub polarized: bool,
    pub n: usize,
    pub signature: (usize, usize),
    /// Sign of the discriminant, `(-1)^{neg}`.
    pub discriminant_sign: i8,
    /// `None` when the sign does not decide between the two even cases.
    pub case: Option<KSCase>,
    pub candidates: Vec<KSCase>,
    pub branches: Vec<KSBranch>,
    pub torus_bound: Option<u64>,
    pub sign_indeterminate: bool,
}

impl HyperkahlerPreset {
    /// Possible dimensions of the simple factors, increasing.
    pub fn factor_dims(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.branches.iter().map(|b| b.factor_dim).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

pub fn hyperkahler_presets(b2: usize, polarized: bool) -> Result<HyperkahlerPreset> {
    if b2 < 5 {
        return Err(Error::InvalidDimension(format!(
            "b2 = {b2}; presets need b2 >= 5"
        )));
    }
    let (n, signature) = if polarized {
        (b2 - 1, (2, b2 - 3))
    } else {
        (b2, (3, b2 - 3))
    };
    check_n(n)?;
    let discriminant_sign: i8 = if signature.1 % 2 == 0 { 1 } else { -1 };

    let case = if n % 2 == 1 {
        Some(KSCase::Odd)
    } else {
        let sign = if (n / 2) % 2 == 0 {
            discriminant_sign
        } else {
            -discriminant_sign
        };
        // A negative rational is never a square; a positive one may be.
        (sign < 0).then_some(KSCase::EvenNonsquare)
    };
    let (candidates, branches, bound) = match case {
        Some(c) => {
            let branches = branches_for(n, c)?;
            let bound = branches.iter().map(|b| b.factor_dim / 2).min();
            (vec![c], branches, bound)
        }
        None => (
            vec![KSCase::EvenNonsquare, KSCase::EvenSquare],
            Vec::new(),
            None,
        ),
    };
    Ok(HyperkahlerPreset {
        b2,
        polarized,
        n,
        signature,
        discriminant_sign,
        case,
        candidates,
        branches,
        torus_bound: bound,
        sign_indeterminate: case.is_none(),
    })
}
