//! Acceptance criteria. Each criterion runs independently and prints one
//! PASS/FAIL line; the target exits nonzero if any criterion fails.
//!
//! Runs without the libtest harness, so `cargo test -p ks-core --test acceptance`
//! always shows the report.

mod common;

use std::time::{Duration, Instant};

use common::*;
use ks_core::clifford::{
    basis_product, clifford_product, even_basis, even_center, CliffordElement,
};
use ks_core::error::Error;
use ks_core::hodgetype::{is_abelian_type, weight1_tensor_factor, HodgeType};
use ks_core::ksclassify::{
    classify, classify_from_gram, hyperkahler_presets, torus_bound, ClassifyOptions, KSCase,
};
use ks_core::lifting::{fractional_lift, lift_level_bound, ToralIsogeny};
use ks_core::quadspace::{discriminant, square_class, DiagonalForm, QuadraticSpace, SquareClass};
use ks_core::rational::{frac, is_rational_square, q, Q};
use ks_core::rootspin::{
    special_vertex, spin_weights, standard_weights, two_weight_offset, weight_spectrum,
    Cocharacter, HalfSpin, RootDatum, Series,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn branch_shape(r: &ks_core::ksclassify::KSReport, idx: usize) -> (u8, u8, u64, u64) {
    let b = &r.branches[idx];
    (b.r, b.distinct_factors, b.factor_dim, b.multiplicity)
}

/// 1. Three hyperbolic planes.
fn c1_hyperbolic_example() -> Outcome {
    let start = Instant::now();
    let u3 = QuadraticSpace::hyperbolic(3).map_err(|e| e.to_string())?;
    let delta = discriminant(&u3).map_err(|e| e.to_string())?;
    ensure(delta == SquareClass::from_squarefree(-1).unwrap(), || {
        format!("delta = {delta}")
    })?;
    let opts = ClassifyOptions {
        oracle: true,
        ..Default::default()
    };
    let r = classify_from_gram(&u3, &opts).map_err(|e| e.to_string())?;
    ensure(r.case == KSCase::EvenSquare, || format!("case {}", r.case))?;
    ensure(branch_shape(&r, 0) == (1, 2, 4, 4), || {
        format!("r=1 branch {:?}", r.branches[0])
    })?;
    ensure(branch_shape(&r, 1) == (2, 2, 8, 2), || {
        format!("r=2 branch {:?}", r.branches[1])
    })?;
    ensure(r.torus_bound == 2, || {
        format!("torus bound {}", r.torus_bound)
    })?;
    // H^1 of a 4-dimensional torus: type {(0,1):4,(1,0):4}, dimension 8.
    let h1 = HodgeType::abelian(4).unwrap();
    ensure(
        is_abelian_type(&h1) && h1.dim() == r.branches[1].factor_dim,
        || format!("H^1(T) of a 4-torus has dim {}", h1.dim()),
    )?;
    within(start, Duration::from_secs(1))?;
    Ok("3U: delta=-1, EVEN_SQUARE, {4,N=4,x2} / {8,N=2,x2}, bound 2".into())
}

fn both_deltas() -> [SquareClass; 2] {
    [
        SquareClass::one(),
        SquareClass::from_squarefree(-1).unwrap(),
    ]
}

/// 2. factors · dim · N = 2^{n-1}.
fn c2_conservation() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=16usize {
        for d in both_deltas() {
            let r = classify(n, &d).map_err(|e| e.to_string())?;
            ensure(r.branches.len() == 2, || {
                format!("n={n}: {} branches", r.branches.len())
            })?;
            for b in &r.branches {
                ensure(b.total_dim() == 1u128 << (n - 1), || {
                    format!("n={n} case {} r={}: total {}", r.case, b.r, b.total_dim())
                })?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{checked} branches over n = 3..16"))
}

/// 3. torus bound = min factor dim / 2.
fn c3_bound_consistency() -> Outcome {
    let start = Instant::now();
    let mut cases = std::collections::BTreeSet::new();
    for n in 3..=16usize {
        for d in both_deltas() {
            let r = classify(n, &d).map_err(|e| e.to_string())?;
            let min_half = r.branches.iter().map(|b| b.factor_dim / 2).min().unwrap();
            let bound = torus_bound(n, &d).map_err(|e| e.to_string())?;
            let closed_form = match r.case {
                KSCase::Odd => 1u64 << ((n - 3) / 2),
                KSCase::EvenSquare => 1u64 << (n / 2 - 2),
                KSCase::EvenNonsquare => 1u64 << (n / 2 - 1),
            };
            ensure(
                bound == min_half && bound == closed_form && r.torus_bound == bound,
                || {
                    format!(
                        "n={n} delta={d}: bound {bound}, min/2 {min_half}, formula {closed_form}"
                    )
                },
            )?;
            cases.insert(r.case);
        }
    }
    ensure(cases.len() == 3, || "not every case was reached".into())?;
    within(start, Duration::from_secs(1))?;
    Ok("all three cases, n = 3..16, both square-class outcomes".into())
}

/// 4. Center of C⁺ vs. signed discriminant vs. case label.
fn c4_center_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20240601);
    let mut timings = Vec::new();
    let mut splits = 0;
    for n in [2usize, 4, 6, 8] {
        let start = Instant::now();
        for _ in 0..50 {
            let coeffs = random_diagonal(&mut rng, n);
            let form = DiagonalForm::new(coeffs.clone()).map_err(|e| e.to_string())?;
            let center = even_center(&form).map_err(|e| e.to_string())?;
            let sign = if (n / 2) % 2 == 0 { q(1) } else { q(-1) };
            let signed: Q = sign * coeffs.iter().product::<Q>();
            let square = is_rational_square(&signed);
            let delta = square_class(&form.product()).map_err(|e| e.to_string())?;
            let case = if n >= 3 {
                classify(n, &delta).map_err(|e| e.to_string())?.case
            } else {
                KSCase::determine(n, &delta)
            };
            ensure(center.split == Some(square), || {
                format!("{coeffs:?}: split {:?}, square {square}", center.split)
            })?;
            ensure((case == KSCase::EvenSquare) == square, || {
                format!("{coeffs:?}: case {case}, square {square}")
            })?;
            splits += square as usize;
        }
        let took = start.elapsed();
        if n == 8 {
            ensure(took < Duration::from_secs(60), || {
                format!("n=8 took {took:?}")
            })?;
        }
        timings.push(format!("n={n}: {:.2?}", took));
    }
    Ok(format!("200 forms, {splits} split; {}", timings.join(", ")))
}

/// 5. Associativity, unit, even closure, sign rule vs. expansion.
fn c5_clifford_laws() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(5);
    for n in 1..=8usize {
        let coeffs = random_diagonal(&mut rng, n);
        let form = DiagonalForm::new(coeffs.clone()).unwrap();
        let top = 1u32 << n;
        let e = |m| CliffordElement::basis(n, m).unwrap();
        for _ in 0..200 {
            let (a, b, c) = (
                rng.gen_range(0..top),
                rng.gen_range(0..top),
                rng.gen_range(0..top),
            );
            let ab_c = clifford_product(
                &clifford_product(&e(a), &e(b), &form).unwrap(),
                &e(c),
                &form,
            )
            .unwrap();
            let a_bc = clifford_product(
                &e(a),
                &clifford_product(&e(b), &e(c), &form).unwrap(),
                &form,
            )
            .unwrap();
            ensure(ab_c == a_bc, || {
                format!("n={n}: ({a:b}·{b:b})·{c:b} != {a:b}·({b:b}·{c:b})")
            })?;
        }
        let one = CliffordElement::one(n);
        for m in 0..top {
            let x = e(m);
            ensure(
                clifford_product(&one, &x, &form).unwrap() == x
                    && clifford_product(&x, &one, &form).unwrap() == x,
                || format!("unit fails on {m:b}"),
            )?;
        }
        let even = even_basis(n).unwrap();
        for _ in 0..200 {
            let (s, t) = (
                even[rng.gen_range(0..even.len())],
                even[rng.gen_range(0..even.len())],
            );
            let (m, _) = basis_product(s, t, &form);
            ensure(m.count_ones() % 2 == 0, || format!("{s:b}·{t:b} is odd"))?;
        }
        for _ in 0..200 {
            let (s, t) = (rng.gen_range(0..top), rng.gen_range(0..top));
            let (m, c) = basis_product(s, t, &form);
            let (word, c2) = expand_product(&indices_of(s), &indices_of(t), &coeffs);
            ensure(m == mask_from(&word) && c == c2, || {
                format!("sign rule mismatch on {s:b}, {t:b}")
            })?;
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("n = 1..8, {:.2?}", start.elapsed()))
}

fn series_ranks() -> Vec<(Series, usize)> {
    let mut out = Vec::new();
    for m in 2..=8 {
        out.push((Series::B, m));
        if m >= 3 {
            out.push((Series::D, m));
        }
    }
    out
}

/// 6. Special vertex is the leftmost one.
fn c6_special_vertex() -> Outcome {
    for (series, m) in series_ranks() {
        let datum = RootDatum::new(series, m).map_err(|e| e.to_string())?;
        let v =
            special_vertex(&datum, &Cocharacter::distinguished(m)).map_err(|e| e.to_string())?;
        ensure(v == 1, || format!("{series}_{m}: vertex {v}"))?;
        let mut bad = vec![0i64; m];
        bad[0] = 1;
        bad[1] = 1;
        let res = special_vertex(&datum, &Cocharacter::from_ints(&bad));
        ensure(matches!(res, Err(Error::NotMinuscule { .. })), || {
            format!("{series}_{m}: (1,1,0,..) gave {res:?}")
        })?;
    }
    Ok("B_2..B_8, D_3..D_8: vertex 1; (1,1,0,..) rejected".into())
}

/// 7. Two-weight property for spin and half-spin representations.
fn c7_two_weights() -> Outcome {
    let h = frac(1, 2);
    for (series, m) in series_ranks() {
        let nu = Cocharacter::distinguished(m);
        let (halves, mult): (Vec<Option<HalfSpin>>, u64) = match series {
            Series::B => (vec![None], 1 << (m - 1)),
            Series::D => (
                vec![Some(HalfSpin::Even), Some(HalfSpin::Odd)],
                1 << (m - 2),
            ),
        };
        for half in halves {
            let ws = spin_weights(series, m, half).map_err(|e| e.to_string())?;
            let spec = weight_spectrum(&ws, &nu).map_err(|e| e.to_string())?;
            let a = two_weight_offset(&spec);
            ensure(a == Some(-h.clone()), || {
                format!("{series}_{m} {half:?}: {spec:?}")
            })?;
            ensure(spec.values().all(|&k| k == mult), || {
                format!("{series}_{m} {half:?}: multiplicities {spec:?}, expected {mult}")
            })?;
        }
        let std = standard_weights(series, m).map_err(|e| e.to_string())?;
        let spec = weight_spectrum(&std, &nu).map_err(|e| e.to_string())?;
        let keys: Vec<Q> = spec.keys().cloned().collect();
        ensure(
            keys == vec![q(-1), q(0), q(1)] && two_weight_offset(&spec).is_none(),
            || format!("{series}_{m} standard: {spec:?}"),
        )?;
    }
    Ok("spin/half-spin two-valued {-1/2, 1/2}; standard {-1,0,1} rejected".into())
}

/// 8. Fractional lifting through random isogenies.
fn c8_lifting() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(8);
    let mut max_level = 0;
    for _ in 0..200 {
        let r = rng.gen_range(1..=4);
        let m = random_nonsingular(&mut rng, r);
        let h: Vec<i64> = (0..r).map(|_| rng.gen_range(-10..=10)).collect();
        let iso = ToralIsogeny::new(m.clone()).map_err(|e| e.to_string())?;
        let lift = fractional_lift(&iso, &h).map_err(|e| e.to_string())?;
        let hq: Vec<Q> = h.iter().map(|&v| q(v)).collect();
        ensure(mat_vec(&m, &lift.x) == hq, || format!("{m:?} x != {h:?}"))?;
        for k in 1..lift.level {
            let scaled: Vec<Q> = lift.x.iter().map(|v| v * q(k as i64)).collect();
            ensure(!is_integral_vec(&scaled), || {
                format!("{m:?}, {h:?}: level {} not minimal", lift.level)
            })?;
        }
        let bound = lift_level_bound(&iso).map_err(|e| e.to_string())?;
        ensure(bound % lift.level == 0, || {
            format!("{m:?}: level {} does not divide {bound}", lift.level)
        })?;
        max_level = max_level.max(lift.level);
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("200 lifts, largest level {max_level}"))
}

/// 9. Weight-one tensor factorization vs. brute-force index search.
fn c9_tensor_factor() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..200 {
        let k = rng.gen_range(1..=4);
        let (factors, _, _) = random_factor_list(&mut rng, k);
        let found = weight1_tensor_factor(&factors).map_err(|e| e.to_string())?;
        let brute = brute_force_factor_indices(&factors);
        ensure(brute == vec![found.index], || {
            format!(
                "factors {factors:?}: found {}, brute force {brute:?}",
                found.index
            )
        })?;
    }
    Ok("200 factor lists, unique index agrees".into())
}

/// 10. Hyperkähler second cohomology presets.
fn c10_hyperkahler() -> Outcome {
    let p = |e: usize| 1u64 << e;
    // (b2, polarized, expected case, expected factor dims)
    let expected: Vec<(usize, bool, KSCase, Vec<u64>)> = vec![
        (7, false, KSCase::Odd, vec![p(3), p(4)]),
        (23, false, KSCase::Odd, vec![p(11), p(12)]),
        (8, false, KSCase::EvenNonsquare, vec![p(4), p(5)]),
        (8, true, KSCase::Odd, vec![p(3), p(4)]),
        (22, true, KSCase::Odd, vec![p(10), p(11)]),
        (7, true, KSCase::EvenNonsquare, vec![p(3), p(4)]),
        (23, true, KSCase::EvenNonsquare, vec![p(11), p(12)]),
    ];
    for (b2, polarized, case, dims) in expected {
        let r = hyperkahler_presets(b2, polarized).map_err(|e| e.to_string())?;
        ensure(r.case == Some(case) && r.factor_dims() == dims, || {
            format!(
                "b2={b2} polarized={polarized}: {:?} {:?}",
                r.case,
                r.factor_dims()
            )
        })?;
    }
    let r = hyperkahler_presets(22, false).map_err(|e| e.to_string())?;
    ensure(r.sign_indeterminate && r.case.is_none(), || {
        "b2=22 unpolarized should need a full discriminant".into()
    })?;
    Ok("b2 in {7, 8, 22, 23}: all four dimension patterns".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> std::process::ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("1 hyperbolic-plane example", c1_hyperbolic_example),
        ("2 conservation identity", c2_conservation),
        ("3 bound-factor consistency", c3_bound_consistency),
        ("4 clifford center oracle", c4_center_oracle),
        ("5 clifford algebra laws", c5_clifford_laws),
        ("6 special vertex", c6_special_vertex),
        ("7 two-weight spin property", c7_two_weights),
        ("8 fractional lifting", c8_lifting),
        ("9 tensor-factorization oracle", c9_tensor_factor),
        ("10 hyperkahler presets", c10_hyperkahler),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                println!("[FAIL] {name}: {why}");
                failed.push(name);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed.len());
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
