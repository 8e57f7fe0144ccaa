//! Acceptance criteria. Run with
//! `cargo test -p mut3-core --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mut3_core::{
    classify, enumerate_class, is_mutation_finite, is_root, random_walk, s_closed_form,
    s_recurrence, threshold_c0, verify_certificate, verify_monotone_window, Caps,
    ClassificationResult, ExchangeMatrix, RecurrenceParams, SortedTriple, Verdict,
};

type Outcome = Result<String, String>;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn triple(a: i64, b: i64, c: i64) -> SortedTriple {
    SortedTriple::new(big(a), big(b), big(c)).unwrap()
}

fn sorted3(mut v: [BigInt; 3]) -> [BigInt; 3] {
    v.sort();
    v
}

fn sides(m: &ExchangeMatrix) -> [BigInt; 3] {
    sorted3([1, 2, 3].map(|k| m.side_opposite(k).unwrap()))
}

fn matrix_from_upper(b12: BigInt, b13: BigInt, b23: BigInt) -> ExchangeMatrix {
    let z = BigInt::from(0);
    ExchangeMatrix::new(
        3,
        vec![z.clone(), b12.clone(), b13.clone(), -&b12, z.clone(), b23.clone(), -b13, -b23, z],
    )
    .unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Collects (input, result) pairs from criteria 3–9 for criterion 12.
#[derive(Default)]
struct Ledger {
    results: Vec<(ExchangeMatrix, ClassificationResult)>,
}

impl Ledger {
    fn classify(&mut self, m: &ExchangeMatrix) -> ClassificationResult {
        let r = classify(m).unwrap();
        self.results.push((m.clone(), r.clone()));
        r
    }

    fn verdict(&mut self, t: &SortedTriple) -> Verdict {
        self.classify(&t.to_matrix()).verdict
    }
}

fn c1_involution() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1001);
    for trial in 0..10_000 {
        let [x, y, z] = [0; 3].map(|_| big(rng.gen_range(-6..=6)));
        let m = matrix_from_upper(x, y, z);
        for k in 1..=3 {
            let once = m.mutate(k).map_err(|e| e.to_string())?;
            // revalidate through the checked constructor
            ExchangeMatrix::new(3, once.entries().to_vec())
                .map_err(|e| format!("trial {trial}: invalid output {e}"))?;
            let twice = once.mutate(k).unwrap();
            check(twice == m, || format!("trial {trial}: mu_{k} mu_{k} {m} = {twice}"))?;
        }
    }
    Ok("10000 matrices x 3 vertices".into())
}

fn c2_parameter_law() -> Outcome {
    let mut cases = 0;
    for a in 2..=12i64 {
        for b in a..=12 {
            for c in b..=12 {
                let q = triple(a, b, c).to_matrix();
                let (ba, bb, bc) = (big(a), big(b), big(c));
                // vertex 2 is opposite the side carrying b
                let m2 = q.mutate(2).unwrap();
                check(m2.is_cyclic(), || format!("({a},{b},{c}) at 2 acyclic"))?;
                check(sides(&m2) == sorted3([ba.clone(), bc.clone(), &ba * &bc - &bb]), || {
                    format!("({a},{b},{c}) at 2 gave {m2}")
                })?;
                check(a * c - b >= c, || format!("({a},{b},{c}): ac-b < c"))?;
                // vertex 3 is opposite the side carrying a
                let m3 = q.mutate(3).unwrap();
                check(m3.is_cyclic(), || format!("({a},{b},{c}) at 3 acyclic"))?;
                check(sides(&m3) == sorted3([bb.clone(), bc.clone(), &bb * &bc - &ba]), || {
                    format!("({a},{b},{c}) at 3 gave {m3}")
                })?;
                check(b * c - a >= c, || format!("({a},{b},{c}): bc-a < c"))?;
                // vertex 1 is opposite the side carrying c
                let m1 = q.mutate(1).unwrap();
                let ab = &ba * &bb;
                check(sides(&m1) == sorted3([ba.clone(), bb.clone(), (&ab - &bc).abs()]), || {
                    format!("({a},{b},{c}) at 1 gave {m1}")
                })?;
                check(m1.is_cyclic() == (a * b > c), || format!("({a},{b},{c}) at 1 cyclicity"))?;
                let delta = m1.arrow_count() - q.arrow_count();
                let expected = if c >= a * b { -ab } else { big(a * b - 2 * c) };
                check(delta == expected, || format!("({a},{b},{c}) arrow delta {delta}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} triples, mutations at vertices 1, 2, 3"))
}

fn roots_up_to_10() -> Vec<SortedTriple> {
    let mut roots = Vec::new();
    for a in 2..=10i64 {
        for b in a..=10 {
            for c in b..=10 {
                if a * b >= 2 * c {
                    roots.push(triple(a, b, c));
                }
            }
        }
    }
    roots
}

fn c3_c4_walks(ledger: &mut Ledger) -> (Outcome, Outcome) {
    let roots = roots_up_to_10();
    let mut walks = 0;
    let mut c3 = Ok(());
    let mut c4 = Ok(());
    for (ri, root) in roots.iter().enumerate() {
        assert!(is_root(root));
        let start = root.to_matrix();
        let floor = start.arrow_count();
        for w in 0..100u64 {
            let seed = (ri as u64) << 16 | w;
            let walk = random_walk(&start, 15, seed).unwrap();
            if c4.is_ok() {
                c4 = check(walk.is_reduced(), || format!("walk {seed} not reduced")).and_then(|_| {
                    walk.snapshots().try_for_each(|s| {
                        check(s.is_cyclic() && s.arrow_count() >= floor, || {
                            format!("root {root}, seed {seed}: snapshot {s} breaks monotonicity")
                        })
                    })
                });
            }
            let r = ledger.classify(walk.end());
            if c3.is_ok() {
                c3 = check(
                    r.verdict == Verdict::MutationCyclic && r.root.as_ref() == Some(root),
                    || format!("root {root}, seed {seed}: got {:?} {:?}", r.verdict, r.root),
                );
            }
            walks += 1;
        }
    }
    let msg = format!("{} roots x 100 walks of depth 15 ({walks} walks)", roots.len());
    (c3.map(|_| msg.clone()), c4.map(|_| msg))
}

fn c5_lemma_a2(ledger: &mut Ledger) -> Outcome {
    for b in 2..=25 {
        for c in b..=25 {
            let v = ledger.verdict(&triple(2, b, c));
            check((v == Verdict::MutationCyclic) == (b == c), || {
                format!("(2,{b},{c}) classified {v}")
            })?;
        }
    }
    Ok("2 <= b <= c <= 25".into())
}

fn c6_bounds(ledger: &mut Ledger) -> Outcome {
    for a in 2..=12 {
        for b in a..=12 {
            let lo = ledger.verdict(&triple(a, b, a * b - b));
            check(lo == Verdict::MutationCyclic, || format!("({a},{b},ab-b) is {lo}"))?;
            let hi = ledger.verdict(&triple(a, b, a * b - 1));
            check(hi == Verdict::MutationAcyclic, || format!("({a},{b},ab-1) is {hi}"))?;
        }
    }
    Ok("2 <= a <= b <= 12".into())
}

fn c7_single_switch(ledger: &mut Ledger) -> Outcome {
    for a in 2..=12i64 {
        for b in a..=12 {
            let (ba, bb) = (big(a), big(b));
            let monotone = verify_monotone_window(&ba, &bb, &bb, &big(a * b - 1)).unwrap();
            check(monotone, || format!("window for ({a},{b}) is not monotone"))?;
            // independent count of switches over the same window
            let verdicts: Vec<Verdict> =
                (b..=a * b - 1).map(|c| ledger.verdict(&triple(a, b, c))).collect();
            let switches = verdicts.windows(2).filter(|w| w[0] != w[1]).count();
            check(
                switches == 1
                    && verdicts[0] == Verdict::MutationCyclic
                    && *verdicts.last().unwrap() == Verdict::MutationAcyclic,
                || format!("({a},{b}) has {switches} switches"),
            )?;
            let c0 = threshold_c0(&ba, &bb).unwrap().c0;
            check(c0 >= big(a * b - b) && c0 <= big(a * b - 2), || {
                format!("c0({a},{b}) = {c0} outside [ab-b, ab-2]")
            })?;
        }
    }
    Ok("2 <= a <= b <= 12, c in [b, ab-1]".into())
}

fn c8_equal_case(ledger: &mut Ledger) -> Outcome {
    for a in 2..=12 {
        let t = threshold_c0(&big(a), &big(a)).unwrap();
        check(t.c0 == big(a * a - 2), || format!("c0({a},{a}) = {}", t.c0))?;
        ledger.verdict(&triple(a, a, a * a - 2));
        ledger.verdict(&triple(a, a, a * a - 1));
    }
    Ok("c0(a,a) = a^2 - 2 for 2 <= a <= 12".into())
}

fn c9_near_case(ledger: &mut Ledger) -> Outcome {
    for a in 3..=10 {
        for m in 1..=4 {
            let t = threshold_c0(&big(a), &big(a + m)).unwrap();
            check(t.c0 == big(a * a + a * m - 3), || format!("c0({a},{}) = {}", a + m, t.c0))?;
            ledger.verdict(&triple(a, a + m, a * a + a * m - 3));
            ledger.verdict(&triple(a, a + m, a * a + a * m - 2));
        }
    }
    Ok("c0(a,a+m) = a^2 + am - 3 for 3 <= a <= 10, 1 <= m <= 4".into())
}

// Class sizes (up to relabeling and opposite) found by the breadth-first
// search and cross-checked against a raw labelled-matrix closure in
// tests/oracles.rs. Derived regression values.
const PATH_CLASS_SIZE: usize = 3;
const TRIANGLE_CLASS_SIZE: usize = 2;

fn c10_finite_classes() -> Outcome {
    let mut exhausted: BTreeSet<BTreeSet<Vec<BigInt>>> = BTreeSet::new();
    let mut seeds = 0;
    for x in -2..=2 {
        for y in -2..=2 {
            for z in -2..=2 {
                let m = matrix_from_upper(big(x), big(y), big(z));
                if !m.is_connected() {
                    continue;
                }
                seeds += 1;
                let g = enumerate_class(&m, Caps::with_multiplicity(2)).unwrap();
                if g.is_exhausted() {
                    exhausted.insert(g.keys().map(|k| k.entries().to_vec()).collect());
                }
            }
        }
    }
    check(exhausted.len() == 3, || format!("{} exhausted classes", exhausted.len()))?;
    let mut sizes: Vec<usize> = exhausted.iter().map(|c| c.len()).collect();
    sizes.sort();
    check(sizes == vec![1, TRIANGLE_CLASS_SIZE, PATH_CLASS_SIZE], || format!("sizes {sizes:?}"))?;
    let g = enumerate_class(&triple(2, 2, 2).to_matrix(), Caps::with_multiplicity(2)).unwrap();
    check(g.is_exhausted() && g.nodes().len() == 1, || "(2,2,2) class".into())?;
    let path = ExchangeMatrix::from_arrows(3, [(1, 2, 1), (2, 3, 1)]).unwrap();
    let g = enumerate_class(&path, Caps::with_multiplicity(2)).unwrap();
    check(g.nodes().len() == PATH_CLASS_SIZE, || "path class size".into())?;
    check(!is_mutation_finite(&triple(1, 2, 2).to_matrix()).unwrap(), || {
        "(1,2,2) reported finite".into()
    })?;
    Ok(format!("{seeds} connected seeds -> class sizes {sizes:?}; (1,2,2) infinite"))
}

const CLOSED_FORM_REL_TOL: f64 = 1e-9;

fn c11_sequence() -> Outcome {
    let limit = BigInt::from(1u64 << 52);
    let mut compared = 0;
    for a in 2..=12 {
        let p = RecurrenceParams::new(big(a)).unwrap();
        for n in 0..=30u64 {
            let s = s_recurrence(&p, n);
            let next = s_recurrence(&p, n + 1);
            check(s < next, || format!("a={a}: S_{n} >= S_{}", n + 1))?;
            if n >= 2 {
                check(s >= big(a), || format!("a={a}: S_{n} < a"))?;
            }
            if s < limit {
                let exact: f64 = s.to_string().parse().unwrap();
                let approx = s_closed_form(&p, n);
                let rel = (approx - exact).abs() / exact.max(1.0);
                check(rel <= CLOSED_FORM_REL_TOL, || format!("a={a}, n={n}: relative error {rel:e}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!(
        "a <= 12, n <= 30; {compared} closed-form comparisons within relative error {CLOSED_FORM_REL_TOL:e}"
    ))
}

/// Flips bit `bit` of a two's-complement integer.
fn flip(x: &BigInt, bit: u32) -> BigInt {
    x ^ (BigInt::from(1) << bit)
}

fn tampered_matrices(m: &ExchangeMatrix, bits: &[u32]) -> Vec<ExchangeMatrix> {
    let u = m.upper();
    let mut out = Vec::new();
    for pos in 0..3 {
        for &bit in bits {
            let mut v = u.clone();
            v[pos] = flip(&v[pos], bit);
            let [x, y, z] = [v[0].clone(), v[1].clone(), v[2].clone()];
            out.push(matrix_from_upper(x, y, z));
        }
    }
    out
}

fn c12_certificates(ledger: &Ledger) -> Outcome {
    let mut tampers = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x1212);
    for (m, r) in &ledger.results {
        check(verify_certificate(m, r), || format!("certificate for {m} rejected"))?;
        let bits = [0, rng.gen_range(1..8)];
        for (i, step) in r.certificate.steps.iter().enumerate() {
            for bad in tampered_matrices(&step.result, &bits) {
                let mut t = r.clone();
                t.certificate.steps[i].result = bad;
                check(!verify_certificate(m, &t), || format!("tampered step {i} of {m} accepted"))?;
                tampers += 1;
            }
        }
        // endpoint claims
        match (&r.root, &r.witness) {
            (Some(root), _) => {
                for bit in bits {
                    let mut t = r.clone();
                    let c = flip(root.c(), bit);
                    t.root = SortedTriple::sorted(root.a().clone(), root.b().clone(), c).ok();
                    check(!verify_certificate(m, &t), || format!("tampered root of {m} accepted"))?;
                    tampers += 1;
                }
            }
            (None, Some(w)) => {
                for bad in tampered_matrices(w, &bits) {
                    let mut t = r.clone();
                    t.witness = Some(bad);
                    check(!verify_certificate(m, &t), || format!("tampered witness of {m} accepted"))?;
                    tampers += 1;
                }
            }
            (None, None) => return Err(format!("result for {m} has no endpoint")),
        }
    }
    Ok(format!("{} certificates verified, {tampers} tampered copies rejected", ledger.results.len()))
}

// Runs without the libtest harness so the PASS/FAIL lines always appear in
// `cargo test` output.
fn main() -> std::process::ExitCode {
    let mut ledger = Ledger::default();
    let (c3, c4) = c3_c4_walks(&mut ledger);
    let outcomes: Vec<(&str, Outcome)> = vec![
        ("1 involution & closure", c1_involution()),
        ("2 parameter update law", c2_parameter_law()),
        ("3 root round-trip after random walks", c3),
        ("4 arrow-count monotonicity from roots", c4),
        ("5 a = 2: cyclic iff b = c", c5_lemma_a2(&mut ledger)),
        ("6 bounds at ab-b and ab-1", c6_bounds(&mut ledger)),
        ("7 single cyclic->acyclic switch", c7_single_switch(&mut ledger)),
        ("8 c0(a,a) = a^2 - 2", c8_equal_case(&mut ledger)),
        ("9 c0(a,a+m) = a^2 + am - 3", c9_near_case(&mut ledger)),
        ("10 three finite classes", c10_finite_classes()),
        ("11 sequence growth and closed form", c11_sequence()),
        ("12 certificates replay and detect tampering", c12_certificates(&ledger)),
    ];
    let mut failed = 0;
    for (name, outcome) in &outcomes {
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
