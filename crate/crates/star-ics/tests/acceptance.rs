//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `--nocapture`). The two n=9 oracle escalations are
//! `#[ignore]`d by default; run them with `cargo test -- --ignored`.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;

use star_ics::dist::{
    antipode_count, class_weight_distribution, closed_form_comparison, diameter, eset_distribution,
    s_closed, s_recurrence, vertex_weight_distribution,
};
use star_ics::lambda::{
    class_size, class_size_closed, for_each_class, generate_pruned, generate_unpruned, prune,
    table_t, unpruned_column_counts, IndexString,
};
use star_ics::oracle::{bfs, class_histogram, eset_histogram, verify_quotient};
use star_ics::threading::build_gamma;

fn s(text: &str) -> IndexString {
    text.parse().unwrap()
}

fn factorial(n: usize) -> BigUint {
    let mut f = BigUint::one();
    for k in 2..=n {
        f *= k;
    }
    f
}

fn assert_histogram_matches(n: usize) {
    let oracle = bfs(n).unwrap();
    let tree = vertex_weight_distribution(n).unwrap();
    assert_eq!(
        oracle.histogram.len(),
        tree.counts().len(),
        "weight range differs at n={n}"
    );
    for (w, (h, c)) in oracle.histogram.iter().zip(tree.counts()).enumerate() {
        assert_eq!(&BigUint::from(*h), c, "n={n} weight {w}");
    }
}

#[test]
fn criterion_01_oracle_equivalence_distributions() {
    for n in 2..=8 {
        assert_histogram_matches(n);
    }
    println!("criterion 01 oracle equivalence (n=2..8): PASS");
}

#[test]
#[ignore = "deep: full BFS over S_9"]
fn criterion_01_deep_oracle_equivalence_n9() {
    let start = Instant::now();
    assert_histogram_matches(9);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "n=9 check took {elapsed:?}, budget is 60 s"
    );
    println!("criterion 01 deep oracle equivalence (n=9, {elapsed:?}): PASS");
}

#[test]
fn criterion_02_figure_distributions() {
    let d4: Vec<u64> = vertex_weight_distribution(4)
        .unwrap()
        .counts()
        .iter()
        .map(|c| u64::try_from(c).unwrap())
        .collect();
    assert_eq!(d4, vec![1, 3, 6, 9, 5]);
    let d5: Vec<u64> = vertex_weight_distribution(5)
        .unwrap()
        .counts()
        .iter()
        .map(|c| u64::try_from(c).unwrap())
        .collect();
    assert_eq!(d5, vec![1, 4, 12, 30, 44, 26, 3]);
    println!("criterion 02 figure distributions (n=4, n=5): PASS");
}

#[test]
fn criterion_03_mass_conservation_to_n40() {
    for n in 2..=39 {
        assert_eq!(
            vertex_weight_distribution(n).unwrap().sum(),
            factorial(n),
            "n={n}"
        );
    }
    let start = Instant::now();
    let d40 = vertex_weight_distribution(40).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(d40.sum(), factorial(40));
    assert!(
        elapsed.as_secs() < 5,
        "n=40 enumeration took {elapsed:?}, budget is 5 s"
    );
    println!("criterion 03 mass conservation (n<=40, n=40 in {elapsed:?}): PASS");
}

#[test]
fn criterion_04_ledger_fidelity_n9() {
    let (_, rows) = prune(&generate_unpruned(9).unwrap()).unwrap();
    let row = |id: &str| rows.iter().find(|r| r.id == s(id)).unwrap();

    let r = row("35");
    assert_eq!(r.weight, 6);
    assert_eq!(r.sigma.ledger_shorthand(), "642315");
    assert_eq!(r.ell, 6);
    assert_eq!(
        r.sigma_closed.as_ref().unwrap().ledger_shorthand(),
        "142365"
    );
    assert_eq!(r.ctuple_multiset(), Some(vec![2, 3]));
    assert_eq!(r.ctuple.as_deref(), Some(&[3, 2][..])); // listed in t-order
    assert_eq!((r.b, r.a), (0, 2));

    let r = row("244");
    assert_eq!(r.weight, 6);
    assert_eq!(r.sigma.ledger_shorthand(), "13254");
    assert_eq!(r.ell, 5);
    assert!(r.sigma_closed.is_none() && r.ctuple.is_none()); // first vertex
    assert_eq!((r.b, r.a), (0, 0));

    // second vertex of its mhdp: closed-word fields blank, b.a = 0.1;
    // the cycle tuple 2222 sits on the next row, u(2468,11)
    let r = row("2467");
    assert_eq!(r.weight, 10);
    assert_eq!(r.sigma.ledger_shorthand(), "83254761");
    assert_eq!(r.ell, 8);
    assert!(r.sigma_closed.is_none() && r.ctuple.is_none());
    assert_eq!((r.b, r.a), (0, 1));
    let r = row("2468");
    assert_eq!(r.weight, 11);
    assert_eq!(r.ctuple_multiset(), Some(vec![2, 2, 2, 2]));
    assert_eq!((r.b, r.a), (4, 2));

    let r = row("0");
    assert_eq!(r.weight, 0);
    assert_eq!(r.sigma.ledger_shorthand(), "1");
    assert_eq!(r.ell, 1);
    assert!(r.sigma_closed.is_none() && r.ctuple.is_none());
    assert_eq!((r.b, r.a), (0, 0));

    println!("criterion 04 ledger fidelity (rows 35, 244, 2467, 0 of the n=9 scan): PASS");
}

#[test]
fn criterion_05_thread_fidelity_n9() {
    let gamma = build_gamma(9).unwrap();
    let got: Vec<(IndexString, IndexString)> = gamma
        .threads()
        .map(|a| (a.from.clone(), a.to.clone()))
        .collect();
    let expected = [
        ("35", "255"),
        ("46", "266"),
        ("47", "377"),
        ("57", "277"),
        ("58", "388"),
        ("68", "288"),
        ("257", "2477"),
        ("268", "2488"),
        ("368", "2588"),
    ];
    assert_eq!(got.len(), 9);
    for (from, to) in expected {
        assert!(
            got.contains(&(s(from), s(to))),
            "missing thread {from} -> {to}"
        );
    }
    println!("criterion 05 thread fidelity (nine threads of the n=9 orientation): PASS");
}

#[test]
fn criterion_06_diameter() {
    for n in 2..=8 {
        assert_eq!(bfs(n).unwrap().max_distance, diameter(n).unwrap(), "n={n}");
    }
    assert_eq!(diameter(9).unwrap(), 12);
    println!("criterion 06 diameter (oracle n=2..8, closed form at 9): PASS");
}

#[test]
#[ignore = "deep: full BFS over S_9"]
fn criterion_06_deep_diameter_n9() {
    assert_eq!(bfs(9).unwrap().max_distance, 12);
    println!("criterion 06 deep diameter (n=9): PASS");
}

#[test]
fn criterion_07_antipodes() {
    for (n, expected) in [(5usize, 3u64), (7, 15), (9, 105)] {
        assert_eq!(antipode_count(n).unwrap(), BigUint::from(expected));
    }
    for n in (3..=15).step_by(2) {
        let d = vertex_weight_distribution(n).unwrap();
        assert_eq!(
            d.counts().last().unwrap(),
            &antipode_count(n).unwrap(),
            "n={n}"
        );
    }
    println!("criterion 07 antipodes (odd n=3..15, pinned 3/15/105): PASS");
}

#[test]
fn criterion_08_eset_distributions() {
    for n in 3..=8 {
        let oracle_shifted = eset_histogram(n, 2).unwrap();
        for i in 2..=n {
            let formula = eset_distribution(n, i).unwrap();
            let filtered = eset_histogram(n, i).unwrap();
            assert_eq!(formula.counts().len(), filtered.len(), "n={n} i={i}");
            for (w, (c, h)) in formula.counts().iter().zip(&filtered).enumerate() {
                assert_eq!(c, &BigUint::from(*h), "n={n} i={i} weight {w}");
            }
            // all sets with i >= 2 share one distribution
            assert_eq!(filtered, oracle_shifted, "n={n} i={i}");
        }
        // shift identity against the smaller star graph
        let prev = vertex_weight_distribution(n - 1).unwrap();
        let shifted = eset_distribution(n, 2).unwrap();
        assert_eq!(shifted.counts()[0], BigUint::from(0u32));
        for (w, c) in prev.counts().iter().enumerate() {
            assert_eq!(&shifted.counts()[w + 1], c, "n={n} shift at {w}");
        }
        for c in &shifted.counts()[prev.counts().len() + 1..] {
            assert_eq!(c, &BigUint::from(0u32));
        }
        // the leftover after removing the n-1 identical copies is C_1
        let c1 = eset_distribution(n, 1).unwrap();
        let filtered = eset_histogram(n, 1).unwrap();
        for (w, (c, h)) in c1.counts().iter().zip(&filtered).enumerate() {
            assert_eq!(c, &BigUint::from(*h), "n={n} C_1 weight {w}");
        }
        assert_eq!(c1.sum(), factorial(n - 1));
    }
    println!("criterion 08 E-set distributions (n=3..8, all symbols): PASS");
}

#[test]
fn criterion_09_quotient_orientation() {
    for n in 2..=8 {
        let gamma = build_gamma(n).unwrap();
        let report = verify_quotient(n, &gamma).unwrap();
        for check in &report.checks {
            assert!(check.pass, "n={n}: {} — {}", check.name, check.details);
        }
    }
    println!("criterion 09 quotient orientation (n=2..8 full edge scans): PASS");
}

#[test]
fn criterion_10_pruning_equals_direct_generation() {
    for n in 2..=12 {
        let (pruned, _) = prune(&generate_unpruned(n).unwrap()).unwrap();
        let direct = generate_pruned(n).unwrap();
        let a: Vec<_> = pruned.ids().cloned().collect();
        let b: Vec<_> = direct.ids().cloned().collect();
        assert_eq!(a, b, "node sets differ at n={n}");
        assert_eq!(pruned, direct, "trees differ at n={n}");
    }
    println!("criterion 10 pruning equals direct generation (n<=12): PASS");
}

#[test]
fn criterion_11_cardinality_triple_agreement() {
    // path product == closed form == oracle class size, n <= 8
    for n in 2..=8 {
        let classes = class_histogram(n).unwrap();
        let tree = generate_pruned(n).unwrap();
        assert_eq!(classes.len(), tree.node_count());
        for (key, info) in &classes {
            let id = key.index_string();
            let by_path = class_size(&id, n).unwrap();
            let by_formula = class_size_closed(key, n).unwrap();
            let by_oracle = BigUint::from(info.size);
            assert_eq!(by_path, by_formula, "n={n} {id}");
            assert_eq!(by_path, by_oracle, "n={n} {id}");
            assert_eq!(tree.node(&id).unwrap().card, by_oracle, "n={n} {id}");
        }
    }
    // path product == closed form on every node, n <= 40
    for n in 2..=40 {
        for_each_class(n, &mut |idx, _, card| {
            let id = IndexString::new(idx.to_vec()).unwrap();
            let closed = class_size_closed(&id.ics_key().unwrap(), n).unwrap();
            assert_eq!(card, &closed, "n={n} {id}");
        });
    }
    assert_eq!(class_size(&s("2468aa"), 11).unwrap(), BigUint::from(945u32));
    println!("criterion 11 cardinality triple agreement (oracle n<=8, closed n<=40, 945): PASS");
}

#[test]
fn criterion_12_fibonacci_columns() {
    let counts = unpruned_column_counts(26);
    let mut fib = vec![1u64, 1];
    while fib.len() < 26 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    assert_eq!(&counts[..=25], &fib[..=25]);
    println!("criterion 12 Fibonacci column counts (columns 0..25): PASS");
}

#[test]
fn criterion_13_table_t11_columns() {
    // the expected table, one (first vertex, start column, run length) per
    // mhdp row; the overflow row holds the single weight-15 string
    let rows: &[(&str, usize, usize)] = &[
        ("0", 0, 11),
        ("22", 3, 9),
        ("33", 4, 8),
        ("44", 5, 7),
        ("55", 6, 6),
        ("66", 7, 5),
        ("77", 8, 4),
        ("88", 9, 3),
        ("99", 10, 2),
        ("aa", 11, 1),
        ("244", 6, 7),
        ("255", 7, 6),
        ("266", 8, 5),
        ("277", 9, 4),
        ("288", 10, 3),
        ("299", 11, 2),
        ("2aa", 12, 1),
        ("366", 8, 5),
        ("377", 9, 4),
        ("388", 10, 3),
        ("399", 11, 2),
        ("3aa", 12, 1),
        ("488", 10, 3),
        ("499", 11, 2),
        ("4aa", 12, 1),
        ("5aa", 12, 1),
        ("2466", 9, 5),
        ("2477", 10, 4),
        ("2488", 11, 3),
        ("2499", 12, 2),
        ("24aa", 13, 1),
        ("2588", 11, 3),
        ("2599", 12, 2),
        ("25aa", 13, 1),
        ("26aa", 13, 1),
        ("3699", 12, 2),
        ("36aa", 13, 1),
        ("24688", 12, 3),
        ("24699", 13, 2),
        ("246aa", 14, 1),
        ("247aa", 14, 1),
        ("2468aa", 15, 1),
    ];
    let diameter_11 = diameter(11).unwrap();
    let mut expected: Vec<std::collections::BTreeSet<IndexString>> =
        vec![Default::default(); diameter_11 + 1];
    let mut total = 0;
    for &(first, start, len) in rows {
        let mut cur = s(first);
        for k in 0..len {
            expected[start + k].insert(cur.clone());
            cur = cur.horizontal_child();
            total += 1;
        }
    }
    assert_eq!(total, 139);

    let table = table_t(11).unwrap();
    let got = table.column_sets();
    assert_eq!(got.len(), expected.len());
    for (w, (g, e)) in got.iter().zip(&expected).enumerate() {
        assert_eq!(g, e, "column {w}");
    }
    assert!(expected[15].contains(&s("2468aa")));
    println!("criterion 13 table fidelity (all 16 columns of the n=11 table): PASS");
}

#[test]
fn criterion_14_s_recurrence_equals_binomial() {
    for j in 1..=30i64 {
        for h in 1..=30usize {
            assert_eq!(s_recurrence(j, h), s_closed(j, h), "j={j} h={h}");
        }
    }
    println!("criterion 14 S recurrence equals binomial (j,h <= 30): PASS");
}

#[test]
fn criterion_15_closed_form_divergence_documented() {
    let rows = closed_form_comparison(12, 4);
    let pinned = rows.iter().find(|r| r.omega == 6 && r.k == 2).unwrap();
    assert_eq!(pinned.closed, BigUint::from(27u32));
    assert_eq!(pinned.enumerated, BigUint::from(4u32));
    assert!(!pinned.matches);
    let mismatches: Vec<_> = rows.iter().filter(|r| !r.matches).collect();
    assert!(!mismatches.is_empty());
    // the report itself, as the experiment's output
    println!(
        "closed form vs enumeration ({} of {} rows diverge):",
        mismatches.len(),
        rows.len()
    );
    for row in mismatches.iter().take(8) {
        println!(
            "  omega={:<2} k={}: closed {} vs enumerated {}",
            row.omega, row.k, row.closed, row.enumerated
        );
    }
    // enumeration, not the closed form, matches the class distribution
    for n in [9usize, 11] {
        let classes = class_weight_distribution(n).unwrap();
        for (omega, expected) in classes.counts().iter().enumerate() {
            let total: BigUint = (1..=omega + 1)
                .map(|l| star_ics::dist::w_enum(omega, l, Some(n)))
                .sum();
            assert_eq!(&total, expected, "n={n} omega={omega}");
        }
    }
    println!("criterion 15 documented divergence (27 vs 4 at weight 6, length 2): PASS");
}
