//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use percoperm::counting::{permutations, tally, verify_factorial_identity};
use percoperm::percolation::{
    matrix_of, mutation_layers, percolate, Cell, Policy, StateSpace,
};
use percoperm::perm::{comps, is_indecomposable, reduce, reverse, Permutation};
use percoperm::series::{
    a_abramson_moser, a_formula, a_formula_terms, a_via_series, series_b, series_compose,
    series_compose_horner, series_g, ExactRational, Series,
};
use percoperm::tiling::{
    components_via_bracketing, is_full_fast, merge_eager, merge_run, top_level_kind, Direction,
    Kind,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const FULL: [u64; 9] = [1, 2, 6, 22, 90, 394, 1806, 8558, 41586];
const INDEC_FULL: [u64; 8] = [1, 3, 11, 45, 197, 903, 4279, 20793];
const NO_GROWTH: [u64; 8] = [1, 0, 0, 2, 14, 90, 646, 5242];

fn criterion_1() -> Outcome {
    for n in 1..=8 {
        let t = tally(n, false).map_err(|e| e.to_string())?;
        ensure(t.full == FULL[n - 1], || format!("p_{n} = {}", t.full))?;
    }
    let start = Instant::now();
    let serial = tally(9, false).map_err(|e| e.to_string())?;
    let serial_time = start.elapsed();
    let start = Instant::now();
    let parallel = tally(9, true).map_err(|e| e.to_string())?;
    let parallel_time = start.elapsed();
    ensure(serial.full == FULL[8], || format!("serial p_9 = {}", serial.full))?;
    ensure(parallel.full == FULL[8], || format!("parallel p_9 = {}", parallel.full))?;
    ensure(serial_time <= Duration::from_secs(60), || {
        format!("serial n=9 took {serial_time:?}")
    })?;
    ensure(parallel_time <= Duration::from_secs(15), || {
        format!("parallel n=9 took {parallel_time:?}")
    })?;
    Ok(format!(
        "p_1..p_9 exact; n=9 serial {serial_time:.2?}, parallel {parallel_time:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    for n in 2..=9 {
        let t = tally(n, true).map_err(|e| e.to_string())?;
        ensure(2 * t.full_indecomposable == t.full, || {
            format!("n={n}: 2*{} != {}", t.full_indecomposable, t.full)
        })?;
        ensure(t.full_indecomposable == INDEC_FULL[n - 2], || {
            format!("q_{n} = {}", t.full_indecomposable)
        })?;
    }
    Ok("q_2..q_9 exact and half of p_n".into())
}

fn criterion_3() -> Outcome {
    for n in 1..=8 {
        let a = tally(n, true).map_err(|e| e.to_string())?.no_growth;
        ensure(a == NO_GROWTH[n - 1], || format!("a_{n} = {a}"))?;
    }
    let start = Instant::now();
    let series = a_via_series(25);
    for n in 1..=25 {
        let f = a_formula(n);
        let am = a_abramson_moser(n);
        ensure(f == am, || format!("n={n}: formula {f} vs Abramson-Moser {am}"))?;
        ensure(*series.coeff(n) == BigInt::from(f.clone()), || {
            format!("n={n}: formula {f} vs series {}", series.coeff(n))
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(5), || format!("formulas took {elapsed:?}"))?;
    Ok(format!("a_1..a_8 brute force exact; three routes agree to n=25 in {elapsed:.2?}"))
}

fn criterion_4() -> Outcome {
    let rat = |n: i64, d: i64| ExactRational::new(BigInt::from(n), BigInt::from(d));
    let terms = a_formula_terms(5);
    let inner: Vec<_> = terms.iter().map(|t| t.inner.clone()).collect();
    let signed: Vec<_> = terms.iter().map(|t| t.term.clone()).collect();
    let want_inner = [rat(1, 1), rat(3, 1), rat(9, 4), rat(1, 2), rat(1, 32)];
    let want_terms = [rat(2, 1), rat(-24, 1), rat(108, 1), rat(-192, 1), rat(120, 1)];
    ensure(inner == want_inner, || format!("inner sums {inner:?}"))?;
    ensure(signed == want_terms, || format!("terms {signed:?}"))?;
    let total: ExactRational = signed.iter().cloned().sum();
    ensure(total == rat(14, 1), || format!("sum {total}"))?;
    ensure(a_formula(5) == BigUint::from(14u32), || "a_formula(5)".into())?;
    Ok("2 - 24 + 108 - 192 + 120 = 14; inner sums 1, 3, 9/4, 1/2, 1/32".into())
}

fn criterion_5() -> Outcome {
    for n in 1..=8 {
        let (lhs, rhs) = verify_factorial_identity(n).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("n={n}: {lhs} != {rhs}"))?;
    }
    Ok("n! = sum over compositions for n = 1..8".into())
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut orders: u128 = 0;
    for n in 1..=4 {
        for p in permutations(n) {
            let g = matrix_of(&p);
            let space = StateSpace::explore(&g).map_err(|e| e.to_string())?;
            let terminals = space.terminals();
            ensure(terminals.len() == 1, || format!("{p}: {} final grids", terminals.len()))?;
            orders += space.complete_orders();
            checked += 1;
        }
    }
    ensure(checked == 33, || format!("{checked} permutations"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut sampled = 0;
    for n in 5..=7 {
        for _ in 0..15 {
            let mut v: Vec<u32> = (1..=n).collect();
            v.shuffle(&mut rng);
            let p = Permutation::new(v).unwrap();
            let g = matrix_of(&p);
            let reference = percolate(&g, &Policy::Random { seed: 0 }).unwrap().final_grid;
            for seed in 1..100 {
                let fin = percolate(&g, &Policy::Random { seed }).unwrap().final_grid;
                ensure(fin == reference, || format!("{p}: seed {seed} disagrees"))?;
            }
            sampled += 1;
        }
    }
    Ok(format!(
        "33 permutations of n<=4 over {orders} complete orders; {sampled} sampled n=5..7 x 100 seeds"
    ))
}

fn criterion_7() -> Outcome {
    let p = |s: &str| -> Permutation { s.parse().unwrap() };
    let cases = [
        (merge_run(&p("1324"), Direction::Left).bracketings(), "((1 [3 2]) 4)"),
        (merge_run(&p("1324"), Direction::Right).bracketings(), "(1 ([3 2] 4))"),
        (merge_run(&p("4231"), Direction::Left).bracketings(), "[[4 (2 3)] 1]"),
        (merge_eager(&p("4231")).bracketings(), "[4 [(2 3) 1]]"),
        (
            merge_run(&p("312645798"), Direction::Left).bracketings(),
            "((([3 (1 2)] [6 (4 5)]) 7) [9 8])",
        ),
    ];
    for (got, want) in cases {
        ensure(got == [want], || format!("got {got:?}, want {want:?}"))?;
    }
    Ok("five bracketings byte-exact".into())
}

fn criterion_8() -> Outcome {
    let mut full_count = 0;
    for n in 1..=8 {
        for p in permutations(n) {
            let left = merge_run(&p, Direction::Left);
            for m in &left.melds {
                ensure(m.right_children_alternate(), || format!("{p}: right-child rule on {m}"))?;
            }
            let all_full = comps(&p).iter().all(|w| is_full_fast(reduce(w).values()));
            ensure(left.full == all_full, || format!("{p}: full vs components"))?;
            if !left.full || n < 2 {
                continue;
            }
            full_count += 1;
            let kind = top_level_kind(&p).unwrap();
            ensure((kind == Kind::Square) == is_indecomposable(&p.as_word()), || {
                format!("{p}: root {kind:?}")
            })?;
            let rev = reverse(&p);
            ensure(top_level_kind(&rev).unwrap() != kind, || format!("{p}: reversal kept kind"))?;
            ensure(components_via_bracketing(&p).unwrap() == comps(&p), || {
                format!("{p}: components differ")
            })?;
            if n <= 7 {
                let mirrored = merge_run(&p, Direction::Right).root().unwrap().mirrored(n);
                ensure(*merge_run(&rev, Direction::Left).root().unwrap() == mirrored, || {
                    format!("{p}: mirror relation")
                })?;
            }
        }
    }
    Ok(format!("all structural suites over n<=8 ({full_count} full permutations, n>=2)"))
}

fn criterion_9() -> Outcome {
    let id = Series::identity(30);
    let b = series_b(30);
    let g = series_g(30);
    for (name, got) in [
        ("compose(B, g)", series_compose(&b, &g)),
        ("compose(g, B)", series_compose(&g, &b)),
        ("horner(B, g)", series_compose_horner(&b, &g)),
        ("horner(g, B)", series_compose_horner(&g, &b)),
    ] {
        ensure(got.as_ref() == Ok(&id), || format!("{name} is not t to order 30"))?;
    }
    let a = a_via_series(25);
    for n in 1..=25 {
        ensure(*a.coeff(n) == BigInt::from(a_formula(n)), || format!("a_{n} via series"))?;
    }
    ensure(a.coeffs()[..9] == Series::from_i64(&[1, 1, 0, 0, 2, 14, 90, 646, 5242]).coeffs()[..], || {
        "a_0..a_8".into()
    })?;
    let layers = mutation_layers(&matrix_of(&"213".parse().unwrap())).map_err(|e| e.to_string())?;
    let cells = |v: &[(usize, usize)]| -> Vec<Cell> { v.iter().map(|&(r, c)| Cell::new(r, c)).collect() };
    ensure(layers.layer(1) == cells(&[(2, 2), (3, 1)]), || format!("U_1 = {:?}", layers.layer(1)))?;
    ensure(layers.layer(2) == cells(&[(1, 2), (2, 3)]), || format!("U_2 = {:?}", layers.layer(2)))?;
    ensure(layers.layer(3) == cells(&[(1, 1), (3, 3)]), || format!("U_3 = {:?}", layers.layer(3)))?;
    Ok("B and g inverse to order 30; E o g gives a_n; U_1..U_3 of 213 exact".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 full counts", criterion_1),
        ("2 half-lemma", criterion_2),
        ("3 no-growth counts and formulas", criterion_3),
        ("4 worked example n=5", criterion_4),
        ("5 factorial identity", criterion_5),
        ("6 confluence", criterion_6),
        ("7 golden bracketings", criterion_7),
        ("8 structural suites", criterion_8),
        ("9 series", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  {name:<34} {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name:<34} {why}");
            }
        }
    }
    println!("N/A   10 asymptotic densities            out of scope; finite prefixes covered by 1 and 3");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
