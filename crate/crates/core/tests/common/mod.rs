//! Brute-force oracles shared by the integration suites. None of these call
//! into the code path they are used to check.

#![allow(dead_code)]

use ks_core::hodgetype::HodgeType;
use ks_core::rational::{frac, q, Q};
use num_traits::{One, Zero};
use rand::Rng;

/// Product of two monomials `e_{s_1} ... e_{s_k}` and `e_{t_1} ... e_{t_l}`
/// (1-based, increasing), by appending one generator at a time and moving it
/// left with adjacent transpositions until the word is sorted, contracting
/// `e_i e_i = d_i` when it meets its twin.
pub fn expand_product(s: &[usize], t: &[usize], d: &[Q]) -> (Vec<usize>, Q) {
    let mut word: Vec<usize> = s.to_vec();
    let mut coeff = Q::one();
    for &g in t {
        word.push(g);
        let mut pos = word.len() - 1;
        loop {
            if pos == 0 {
                break;
            }
            let left = word[pos - 1];
            if left > g {
                word.swap(pos - 1, pos);
                coeff = -coeff;
                pos -= 1;
            } else if left == g {
                coeff *= &d[g - 1];
                word.remove(pos);
                word.remove(pos - 1);
                break;
            } else {
                break;
            }
        }
    }
    (word, coeff)
}

pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

pub fn mask_from(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, i| m | 1 << (i - 1))
}

/// Checks the post-condition of the weight-one tensor factorization at index `i`.
pub fn factor_index_valid(factors: &[HodgeType], i: usize) -> bool {
    for (j, f) in factors.iter().enumerate() {
        let entries: Vec<_> = f.entries().map(|(k, _)| k.clone()).collect();
        if j == i {
            let (p0, _) = &entries[0];
            let c = entries
                .iter()
                .map(|(p, _)| p.clone())
                .min()
                .unwrap_or_else(|| p0.clone());
            let hi = (&c + Q::one(), c.clone());
            let lo = (c.clone(), &c + Q::one());
            if !(entries.len() == 2 && entries.contains(&hi) && entries.contains(&lo)) {
                return false;
            }
        } else if !(entries.len() == 1 && entries[0].0 == entries[0].1) {
            return false;
        }
    }
    true
}

/// All indices passing [`factor_index_valid`].
pub fn brute_force_factor_indices(factors: &[HodgeType]) -> Vec<usize> {
    (0..factors.len())
        .filter(|&i| factor_index_valid(factors, i))
        .collect()
}

pub fn random_small_q<R: Rng>(rng: &mut R, max_den: i64) -> Q {
    frac(rng.gen_range(-8..=8), rng.gen_range(1..=max_den))
}

/// A list of `k` factors whose tensor product is `{(0,1):m, (1,0):m}`.
pub fn random_factor_list<R: Rng>(rng: &mut R, k: usize) -> (Vec<HodgeType>, usize, Vec<Q>) {
    let wide = rng.gen_range(0..k);
    let mut constants = Vec::new();
    let mut factors = Vec::new();
    for j in 0..k {
        if j == wide {
            factors.push(HodgeType::trivial());
            continue;
        }
        let c = random_small_q(rng, 4);
        let mult = rng.gen_range(1..=3);
        factors.push(HodgeType::new([((c.clone(), c.clone()), mult)]).unwrap());
        constants.push(c);
    }
    let offset: Q = -constants.iter().cloned().sum::<Q>();
    let mult = rng.gen_range(1..=3);
    factors[wide] = HodgeType::new([
        ((&offset + Q::one(), offset.clone()), mult),
        ((offset.clone(), &offset + Q::one()), mult),
    ])
    .unwrap();
    (factors, wide, constants)
}

/// Smallest `k >= 1` with `k · M^{-1}` integral, via the adjugate: the
/// entries of `M^{-1}` are `adj(M)_{ij} / det M`.
pub fn inverse_exponent(m: &[Vec<i64>]) -> u64 {
    let r = m.len();
    let det = int_det(m);
    let mut k: u64 = 1;
    for i in 0..r {
        for j in 0..r {
            let minor: Vec<Vec<i64>> = (0..r)
                .filter(|&a| a != j)
                .map(|a| (0..r).filter(|&b| b != i).map(|b| m[a][b]).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let cof = sign * if r == 1 { 1 } else { int_det(&minor) };
            let entry = frac(cof, det);
            let den: u64 = entry.denom().try_into().unwrap();
            k = lcm(k, den);
        }
    }
    k
}

/// Laplace expansion.
pub fn int_det(m: &[Vec<i64>]) -> i64 {
    let r = m.len();
    if r == 0 {
        return 1;
    }
    if r == 1 {
        return m[0][0];
    }
    (0..r)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != c)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * int_det(&minor)
        })
        .sum()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn random_nonsingular<R: Rng>(rng: &mut R, r: usize) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..r).map(|_| rng.gen_range(-5..=5)).collect())
            .collect();
        if int_det(&m) != 0 {
            return m;
        }
    }
}

pub fn mat_vec(m: &[Vec<i64>], x: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| q(*a) * b).sum())
        .collect()
}

pub fn is_integral_vec(x: &[Q]) -> bool {
    x.iter().all(|v| v.denom().is_one() || v.is_zero())
}

pub const FORM_ENTRIES: [i64; 7] = [1, 2, 3, 5, 6, 7, 10];

pub fn random_diagonal<R: Rng>(rng: &mut R, n: usize) -> Vec<Q> {
    (0..n)
        .map(|_| {
            let v = FORM_ENTRIES[rng.gen_range(0..FORM_ENTRIES.len())];
            q(if rng.gen_bool(0.5) { v } else { -v })
        })
        .collect()
}
