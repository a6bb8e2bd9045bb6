//! Acceptance suite: one line per criterion.
//!
//! Run with `cargo test --test acceptance`. Criteria whose stated values
//! cannot hold in the group are listed in `KNOWN_UNATTAINABLE`; they are
//! still evaluated and reported as FAIL, but only unexpected failures make the
//! target exit non-zero.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thompson::diagram::word_to_diagram;
use thompson::dyadic::two_adic_distance;
use thompson::metric::{self, GenSet, Rotation};
use thompson::presentation::{finite_relators, infinite_relators};
use thompson::rewrite::{self, Side};
use thompson::{torsion, Dyadic, Letter, MarkedPair, PcqForm, PlMap, Word};

const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[
    (
        2,
        "x1 c1 = x1 c2^2 x0^-1; equality with x1 c2 x1^-1 would give c2 = x1^-1 x0, \
         a torsion element equal to a non-trivial element of F",
    ),
    (7, "the reduced diagram of x1^n has n+2 carets (x1 itself has 3), not n+3"),
];

struct Check {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Check {
    Check { ok, detail: detail.into() }
}

fn word(text: &str) -> Word {
    text.parse().expect("test words parse")
}

fn show(form: &PcqForm) -> String {
    if form.is_identity() {
        "1".into()
    } else {
        form.to_string()
    }
}

fn worked_example() -> Check {
    let w = word("x0^-1 c1 x3 c3^2 x1^-1");
    let nf = show(&rewrite::normal_form(&w));
    let run = rewrite::to_pcq_algebraic_traced(&w);
    let intermediate = word("x0^-1 x1 x2^2 c4^4 x1^-2");
    let through = run.trace.contains(&intermediate);
    let algebraic = rewrite::normal_form_algebraic(&w).ok().flatten().map(|f| show(&f));
    check(
        nf == "x2 x3^2 c5^4 x4^-1 x1^-2" && through && algebraic.as_deref() == Some(nf.as_str()),
        format!("nf = {nf}, algebraic = {algebraic:?}, passes through {intermediate}: {through}"),
    )
}

fn x1_c1() -> Check {
    let nf = show(&rewrite::normal_form(&word("x1 c1")));
    check(nf == "x1 c2 x1^-1", format!("nf = {nf}, expected x1 c2 x1^-1"))
}

fn presentation() -> Check {
    let relators: Vec<_> = finite_relators().into_iter().chain(infinite_relators(8)).collect();
    let failed: Vec<_> = relators.iter().filter(|r| !r.check().passed()).map(|r| r.name.clone()).collect();
    check(
        failed.is_empty(),
        format!("{}/{} relators hold, failing: {failed:?}", relators.len() - failed.len(), relators.len()),
    )
}

fn pumping() -> Check {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 0..=8u32 {
        let c = MarkedPair::c(n);
        for m in 0..=n + 3 {
            for side in [Side::Left, Side::Right] {
                let result = rewrite::pump(n, m, side);
                let in_range = (1..n + 2).contains(&m);
                match result {
                    Ok(rhs) if in_range => {
                        checked += 1;
                        if word_to_diagram(&rhs) != c.pow(i64::from(m)) {
                            bad.push(format!("c{n}^{m} {side:?}"));
                        }
                    }
                    Err(_) if !in_range => {}
                    _ => bad.push(format!("c{n}^{m} {side:?}: range handling")),
                }
            }
        }
    }
    check(bad.is_empty(), format!("{checked} identities hold, out-of-range m rejected; problems: {bad:?}"))
}

fn caret_formula() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = 0;
    for _ in 0..200 {
        let p = common::random_positive(&mut rng, 6, 4);
        let form = PcqForm::new(p.clone(), None, Vec::new()).expect("positive normal form");
        if rewrite::n_carets_positive(&p) != word_to_diagram(&form.to_word()).carets() {
            mismatches += 1;
        }
    }
    let example = [(0, 1), (2, 3), (4, 1), (8, 2)];
    let g = word_to_diagram(&word("x0 x2^3 x4 x8^2"));
    let (formula, carets, leaves) = (rewrite::n_carets_positive(&example), g.carets(), g.leaves());
    check(
        mismatches == 0 && formula == 11 && carets == 11 && leaves == 12,
        format!("{mismatches}/200 mismatches; x0 x2^3 x4 x8^2: formula {formula}, carets {carets}, leaves {leaves}"),
    )
}

fn sandwich() -> Check {
    let (mut elements, mut violations, mut worst_d, mut worst_n) = (0usize, 0usize, 0.0f64, 0.0f64);
    let result = metric::for_each_sphere(GenSet::X0X1C1, 9, None, |k, sphere| {
        for g in sphere {
            elements += 1;
            let n = g.carets() as u64;
            let d = metric::d_value(&g.pcq_factorization());
            if d > 5 * n || n > 3 * k as u64 {
                violations += 1;
            }
            if n > 0 {
                worst_d = worst_d.max(d as f64 / n as f64);
                worst_n = worst_n.max(n as f64 / k as f64);
            }
        }
    });
    check(
        result.is_ok() && violations == 0 && elements > 0,
        format!("{elements} elements, {violations} violations, max D/N {worst_d:.3}, max N/|w| {worst_n:.3}"),
    )
}

fn length_coincidence() -> Check {
    let mut problems = Vec::new();
    for n in 1..=6i64 {
        for (i, expected_carets) in [(0u32, n as usize + 1), (1, n as usize + 3)] {
            let g = MarkedPair::x(i).pow(n);
            let f = metric::bfs_length(&g, GenSet::X0X1, n as usize + 1);
            let t = metric::bfs_length(&g, GenSet::X0X1C0, n as usize + 1);
            if f != Some(n as usize) || t != Some(n as usize) {
                problems.push(format!("|x{i}^{n}| F {f:?} T {t:?}"));
            }
            if g.carets() != expected_carets {
                problems.push(format!("N(x{i}^{n}) = {} (expected {expected_carets})", g.carets()));
            }
        }
    }
    check(
        problems.is_empty(),
        if problems.is_empty() { "all lengths and caret counts match".into() } else { problems.join("; ") },
    )
}

fn torsion_checks() -> Check {
    let mut problems = Vec::new();
    for n in 0..=8u32 {
        let period = u64::from(n) + 2;
        for j in 1..=period {
            let order = torsion::order(&MarkedPair::c(n).pow(j as i64), 64);
            if order != Some(period / period.gcd(&j)) {
                problems.push(format!("order(c{n}^{j}) = {order:?}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut round_trips = 0;
    for _ in 0..100 {
        let s = common::random_word(&mut rng, 4, 4, 0.3);
        let i = rng.gen_range(0..=4u32);
        let j = rng.gen_range(1..=i64::from(i) + 1);
        let g = word_to_diagram(&s.concat(&Word::new(vec![Letter::c(i, j)])).concat(&s.inverse()));
        let balanced = torsion::balanced_form(&g, 4096);
        let rebuilt = torsion::conjugator(&g, 4096).map(|(p, ci, cj)| {
            let c = if cj == 0 { Word::identity() } else { Word::new(vec![Letter::c(ci, cj.into())]) };
            word_to_diagram(&p.concat(&c).concat(&p.inverse()))
        });
        let order_ok = balanced.as_ref().map(|b| Some(b.order) == torsion::order(&g, 64)) == Some(true);
        if rebuilt.as_ref() == Some(&g) && order_ok {
            round_trips += 1;
        } else {
            problems.push(format!("conjugate of c{i}^{j} by {s}"));
        }
    }
    for (name, g) in [("x0", MarkedPair::x(0)), ("x1", MarkedPair::x(1))] {
        if torsion::balanced_form(&g, 4096).is_some() {
            problems.push(format!("{name} balanced"));
        }
    }
    check(
        problems.is_empty(),
        format!("orders for n <= 8, {round_trips}/100 conjugators round-trip; problems: {problems:?}"),
    )
}

fn rotations() -> Check {
    let mut problems = Vec::new();
    let mut count = 0;
    for n in 1..=6u32 {
        for a in (1..1u64 << n).step_by(2) {
            count += 1;
            let r = Rotation::new(a, n).expect("odd numerator");
            let g = metric::rotation_element(r);
            let carets = g.carets();
            let order = torsion::order(&g, 128);
            let distance = two_adic_distance(&r.amount(), &Dyadic::zero());
            let map_ok = g.to_plmap() == PlMap::rotation(&r.amount());
            if carets != (1 << n) - 1 || order != Some(1 << n) || distance != BigUint::from(1u64 << n) || !map_ok {
                problems.push(format!("{a}/2^{n}: carets {carets}, order {order:?}, 2-adic {distance}"));
            }
        }
    }
    check(problems.is_empty(), format!("{count} rotations checked; problems: {problems:?}"))
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut agree, mut equal_pairs) = (0, 0);
    for case in 0..500 {
        let w = common::random_word(&mut rng, 12, 5, 0.3);
        // a third of the pairs are equal by construction, a third differ by
        // one letter, a third are independent
        let other = match case % 3 {
            0 => rewrite::normal_form(&w).to_word(),
            1 => w.concat(&common::random_word(&mut rng, 1, 5, 0.3)),
            _ => common::random_word(&mut rng, 12, 5, 0.3),
        };
        let by_diagram = word_to_diagram(&w) == word_to_diagram(&other);
        let by_map = w.analytic_map() == other.analytic_map();
        equal_pairs += usize::from(by_map);
        agree += usize::from(by_diagram == by_map);
    }
    check(agree == 500, format!("{agree}/500 agree ({equal_pairs} equal pairs)"))
}

type Criterion = (u32, &'static str, Duration, fn() -> Check);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "worked example", Duration::from_secs(1), worked_example),
        (2, "normal form of x1 c1", Duration::from_secs(1), x1_c1),
        (3, "presentation self-check", Duration::from_secs(10), presentation),
        (4, "pumping identities", Duration::from_secs(10), pumping),
        (5, "caret formula", Duration::from_secs(30), caret_formula),
        (6, "metric sandwich on the radius-9 ball", Duration::from_secs(600), sandwich),
        (7, "length coincidence", Duration::from_secs(300), length_coincidence),
        (8, "torsion", Duration::from_secs(120), torsion_checks),
        (9, "rotation subgroup", Duration::from_secs(10), rotations),
        (10, "oracle equivalence", Duration::from_secs(60), oracle_equivalence),
    ];
    let mut passed = 0;
    let mut unexpected = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let ok = result.ok && elapsed <= limit;
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id);
        println!(
            "criterion {id:>2} {}: {name} — {} [{:.3}s, limit {}s]",
            if ok { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if ok {
            passed += 1;
        } else if let Some((_, reason)) = known {
            println!("             known unattainable: {reason}");
        } else {
            unexpected.push(id);
        }
    }
    println!("acceptance: {passed}/10 passed, unexpected failures: {unexpected:?}");
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
