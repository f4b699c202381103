//! One line per acceptance criterion, non-zero exit if any fails.
//!
//! Set `FRIEZE_STRETCH=1` to also run the 16-gon brute-force count.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use frieze_core::frieze::{generate_frieze, has_ones_row};
use frieze_core::polygon::{catalan, enumerate_triangulations, to_dual_tree, Triangulation};
use frieze_core::similarity::{
    brute_types, case_count, count_tsa, count_tsa_brute, count_types, enumerate_types,
    perfect_tripartitions, Method,
};
use frieze_core::supplement::{supplement, supplement_by_runs, BasicSeq};
use frieze_core::tiling::{
    extract_factors, formula_tiling, formula_window, generate_tiling, Span,
};
use frieze_core::{is_eta, EtaSeq, Mat2, SUWord};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

const K_TABLE: [u64; 11] = [1, 1, 1, 3, 4, 12, 27, 82, 228, 733, 2282];
const T_TABLE: [u64; 11] = [1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786];
const S_TABLE: [u64; 11] = [1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42];
const A_TABLE: [u64; 11] = [0, 1, 2, 7, 20, 66, 221, 715, 2424, 8398, 29372];

fn k_table() -> Check {
    let start = Instant::now();
    let k: Vec<BigUint> = (3..=13)
        .map(|n| count_types(n, Method::Formula).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let took = start.elapsed();
    ensure(k == big(&K_TABLE), format!("got {k:?}"))?;
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    Ok(format!("K3..K13 exact in {took:?}"))
}

fn k16() -> Check {
    let start = Instant::now();
    let k = count_types(16, Method::Formula).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(k == BigUint::from(83898u32), format!("got {k}"))?;
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    Ok(format!("K16 = {k} in {took:?}"))
}

fn formula_vs_brute() -> Check {
    let start = Instant::now();
    for n in 3..=14 {
        let f = count_types(n, Method::Formula).map_err(|e| e.to_string())?;
        let b = count_types(n, Method::Brute { cap: 14 }).map_err(|e| e.to_string())?;
        ensure(f == b, format!("n = {n}: formula {f}, brute {b}"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), format!("took {took:?}"))?;
    let mut detail = format!("n = 3..14 agree in {took:?}");
    if std::env::var_os("FRIEZE_STRETCH").is_some() {
        let b = count_types(16, Method::Brute { cap: 16 }).map_err(|e| e.to_string())?;
        detail += &format!("; stretch n = 16 brute = {b}");
        ensure(b == BigUint::from(83898u32), detail.clone())?;
    }
    Ok(detail)
}

fn tsa_table() -> Check {
    let mut mismatches = Vec::new();
    for (x, n) in (3..=13).enumerate() {
        let t = count_tsa(n).map_err(|e| e.to_string())?;
        if n <= 12 {
            let b = count_tsa_brute(n, 16).map_err(|e| e.to_string())?;
            ensure(b == t, format!("n = {n}: enumeration gives {b:?}, formula {t:?}"))?;
        }
        for (name, got, printed) in [
            ("T", &t.t, T_TABLE[x]),
            ("S", &t.s, S_TABLE[x]),
            ("A", &t.a, A_TABLE[x]),
        ] {
            if *got != BigUint::from(printed) {
                let consistent = T_TABLE[x] == 2 * A_TABLE[x] + S_TABLE[x];
                mismatches.push(format!(
                    "{name}{n}: table {printed}, computed {got} (table column satisfies T = 2A + S: {consistent})"
                ));
            }
        }
    }
    ensure(mismatches.is_empty(), mismatches.join("; "))?;
    Ok("formula n = 3..13, enumeration n = 3..12".into())
}

fn n13_partitions() -> Check {
    let got: Vec<(usize, usize, usize, BigUint)> = perfect_tripartitions(13)
        .iter()
        .map(|t| (t.i, t.j, t.k, case_count(t)))
        .collect();
    let want: Vec<(usize, usize, usize, BigUint)> = [
        (6, 6, 1, 903u32),
        (6, 5, 2, 588),
        (6, 4, 3, 420),
        (5, 5, 3, 196),
        (5, 4, 4, 175),
    ]
    .into_iter()
    .map(|(i, j, k, c)| (i, j, k, BigUint::from(c)))
    .collect();
    ensure(got == want, format!("got {got:?}"))?;
    Ok("903, 588, 420, 196, 175".into())
}

fn theorem_one() -> Check {
    let mut valid = 0usize;
    for n in 3..=9 {
        for q in enumerate_triangulations(n, 16).map_err(|e| e.to_string())?.quiddities() {
            let m = SUWord::from_sequence(&q).eval();
            ensure(m.is_minus_identity(), format!("{q:?} gives {m}"))?;
            valid += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut invalid = 0usize;
    while invalid < 10_000 {
        let n = rng.gen_range(3..=12);
        let q: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=n as u64)).collect();
        // ear clipping decides validity without the matrix word
        if Triangulation::try_from_quiddity(&q).is_ok() {
            continue;
        }
        ensure(!is_eta(&q).unwrap(), format!("is_eta accepts {q:?}"))?;
        let m = SUWord::from_sequence(&q).eval();
        ensure(!m.is_minus_identity(), format!("{q:?} gives -I"))?;
        invalid += 1;
    }
    Ok(format!("{valid} quiddity words are -I, {invalid} random non-quiddity words are not"))
}

fn frieze_property() -> Check {
    let mut count = 0usize;
    for n in 3..=12 {
        for q in enumerate_triangulations(n, 16).map_err(|e| e.to_string())?.quiddities() {
            let w = generate_frieze(&q).map_err(|e| format!("{q:?}: {e}"))?;
            ensure(has_ones_row(&w) == Some(n - 1), format!("{q:?}: no ones at row n-1"))?;
            ensure(
                w.row(n - 1).iter().all(|x| *x == BigInt::from(1)),
                format!("{q:?}: row n-1"),
            )?;
            for i in 1..n {
                ensure(
                    w.row(i).iter().all(|x| *x > BigInt::from(0)),
                    format!("{q:?}: row {i} not positive"),
                )?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} friezes"))
}

fn basic_sequences(max_len: usize, max_entry: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut layer = vec![vec![1u64]];
    for _ in 1..max_len {
        let mut next = Vec::new();
        for s in &layer {
            for a in 2..=max_entry {
                let mut t = s.clone();
                t.push(a);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn check_supplement(a: &[u64]) -> std::result::Result<(), String> {
    let b = BasicSeq::new(a.to_vec()).map_err(|e| e.to_string())?;
    let s = supplement(&b);
    ensure(supplement(&s) == b, format!("{a:?}: not an involution"))?;
    ensure(supplement_by_runs(&b) == s, format!("{a:?}: run-length formula differs"))?;
    let mut cat = a.to_vec();
    cat.extend_from_slice(s.entries());
    ensure(is_eta(&cat).unwrap(), format!("{a:?} ∥ {s}: not a quiddity sequence"))?;
    ensure(
        cat.iter().sum::<u64>() == 3 * cat.len() as u64 - 6,
        format!("{cat:?}: entry sum"),
    )
}

fn supplement_criterion() -> Check {
    let worked = BasicSeq::new(vec![1, 2, 2, 6, 2, 4, 3, 2, 2, 2, 2]).unwrap();
    let s = supplement(&worked);
    ensure(s.entries() == [1, 6, 3, 2, 4, 2, 2, 2, 4], format!("got {s}"))?;
    let all = basic_sequences(8, 5);
    for a in &all {
        check_supplement(a)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let len = rng.gen_range(9..=16);
        let mut a = vec![1u64];
        a.extend((1..len).map(|_| rng.gen_range(2..=9)));
        check_supplement(&a)?;
    }
    Ok(format!("worked pair, {} exhaustive, 1000 random", all.len()))
}

fn tiling_criterion() -> Check {
    let shown: [[i64; 5]; 5] = [
        [10, 7, 4, 5, 6],
        [7, 5, 3, 4, 5],
        [4, 3, 2, 3, 4],
        [5, 4, 3, 5, 7],
        [6, 5, 4, 7, 10],
    ];
    for (r, row) in shown.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            let (i, j) = (r as i64 - 2, c as i64 - 2);
            ensure(
                formula_tiling(i, j) == BigInt::from(v),
                format!("alpha({i},{j}) = {}", formula_tiling(i, j)),
            )?;
        }
    }
    let wide = formula_window(Span::new(-6, 6).unwrap(), Span::new(-6, 6).unwrap());
    ensure(wide.is_unimodular(), "window [-6,6]^2 is not unimodular")?;
    let below: Vec<BigInt> = (-2..=2).map(|j| formula_tiling(3, j)).collect();
    ensure(
        below == [7, 6, 5, 9, 13].map(BigInt::from),
        format!("row 3 is {below:?}"),
    )?;
    let factors = extract_factors(&wide).map_err(|e| e.to_string())?;
    let seed = Mat2::new(2, 3, 3, 5).map_err(|e| e.to_string())?;
    let inner = Span::new(-5, 5).unwrap();
    let rebuilt = generate_tiling(&seed, &factors, inner, inner).map_err(|e| e.to_string())?;
    ensure(
        Some(&rebuilt) == wide.crop(inner, inner).as_ref(),
        "generate(extract(window)) differs",
    )?;
    Ok("5x5 core, [-6,6]^2 unimodular, row 3 = 7,6,5,9,13, round trip on [-5,5]^2".into())
}

fn round_trips() -> Check {
    let mut count = 0usize;
    for n in 3..=10 {
        for t in enumerate_triangulations(n, 16).map_err(|e| e.to_string())? {
            let q = t.to_quiddity();
            ensure(is_eta(q.entries()).unwrap(), format!("{t}: quiddity {q} invalid"))?;
            let back = Triangulation::from_quiddity(&q);
            ensure(back == t, format!("{t}: from_quiddity gives {back}"))?;
            for r in 0..n {
                let d = to_dual_tree(&t, r).map_err(|e| e.to_string())?;
                ensure(
                    d.root().internal_count() == n - 2 && d.root().leaf_count() == n - 1,
                    format!("{t}: tree size"),
                )?;
                ensure(d.to_quiddity() == q, format!("{t}: readout at root {r}"))?;
                ensure(d.to_triangulation() == t, format!("{t}: tree at root {r}"))?;
            }
            count += 1;
        }
    }
    for n in 3..=14 {
        let c = enumerate_triangulations(n, 16).map_err(|e| e.to_string())?.count();
        ensure(BigUint::from(c) == catalan(n - 2), format!("n = {n}: {c} triangulations"))?;
    }
    Ok(format!("{count} triangulations round-trip, counts C(n-2) for n <= 14"))
}

fn composition() -> Check {
    for n in 3..=12 {
        let types = enumerate_types(n, 16).map_err(|e| e.to_string())?;
        let brute = brute_types(n, 16).map_err(|e| e.to_string())?;
        let k = count_types(n, Method::Formula).map_err(|e| e.to_string())?;
        ensure(BigUint::from(types.len()) == k, format!("n = {n}: {} types", types.len()))?;
        let a: BTreeSet<&EtaSeq> = types.iter().map(|t| &t.canon).collect();
        let b: BTreeSet<&EtaSeq> = brute.iter().map(|t| &t.canon).collect();
        ensure(a == b, format!("n = {n}: type sets differ"))?;
    }
    Ok("n = 3..12".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("K table by formula", k_table),
        ("K16 by formula", k16),
        ("formula equals brute force", formula_vs_brute),
        ("T, S, A table", tsa_table),
        ("n = 13 partition counts", n13_partitions),
        ("word test equivalence", theorem_one),
        ("frieze property", frieze_property),
        ("supplement", supplement_criterion),
        ("tiling", tiling_criterion),
        ("round trips and Catalan counts", round_trips),
        ("composition enumerates types", composition),
    ];
    let mut failed = 0;
    for (x, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{took:.2?}]", x + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{took:.2?}]", x + 1)
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
