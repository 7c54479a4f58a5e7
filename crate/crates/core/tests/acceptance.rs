//! Acceptance suite: every criterion the library must meet, one test per
//! criterion, each printing a pass line with its measured result.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use tropflip::enumerate::{h_table, scan_h_table, self_product_table};
use tropflip::flip::{
    flip_zero_certificate, is_flip_positive, FlipEngine, FlipValue, ZeroCertificate,
};
use tropflip::gain::{realisation_sym, Gain, GainGraph, GainGroup};
use tropflip::invariants::{nbc_count_natural, nbc_via_flip};
use tropflip::matrix::{Orientation, PrimeFieldMatrix};
use tropflip::matroid::Matroid;
use tropflip::suite::{self, Universe};

fn u(n: usize, r: usize) -> Matroid {
    Matroid::uniform(n, r).unwrap()
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// K4 on {0,1,2,3} glued to a 4-cycle along the edge {1,2}.
fn fig1_graph() -> Matroid {
    Matroid::graphic(
        6,
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2)],
    )
    .unwrap()
}

/// The same graph with the edge {0,2} moved to {2,4}.
fn fig2_graph() -> Matroid {
    Matroid::graphic(
        6,
        &[(0, 1), (0, 3), (1, 2), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2), (2, 4)],
    )
    .unwrap()
}

/// Three-vertex Z_4-gain graph: two parallel edges, a path closing a
/// triangle, and a loop.
fn fig3_gain_graph() -> GainGraph {
    GainGraph::new(
        GainGroup::Zk { k: 4 },
        3,
        vec![
            (0, 1, Gain::Zk(1)),
            (1, 0, Gain::Zk(0)),
            (1, 2, Gain::Zk(2)),
            (2, 0, Gain::Zk(3)),
            (2, 2, Gain::Zk(1)),
        ],
    )
    .unwrap()
}

/// The rank-4 binary matroid on seven elements whose self product
/// undershoots 2^(r-1).
fn binary_counterexample() -> Matroid {
    let matrix = PrimeFieldMatrix::new(
        2,
        vec![
            vec![1, 1, 1, 0, 0, 0, 0],
            vec![1, 0, 0, 1, 1, 0, 0],
            vec![0, 1, 0, 1, 0, 1, 0],
            vec![1, 1, 0, 1, 0, 0, 1],
        ],
    )
    .unwrap();
    Matroid::from_prime_field_matrix(&matrix, Orientation::Columns).unwrap()
}

const TABLE1_ROWS: [(usize, usize); 9] =
    [(1, 1), (1, 2), (1, 3), (2, 2), (1, 4), (2, 3), (1, 5), (2, 4), (3, 3)];

fn expected_table1(k1: usize, k2: usize) -> BTreeMap<u64, u64> {
    let rows: &[u64] = match (k1, k2) {
        (1, 1) => &[0, 1],
        (1, 2) => &[2, 2],
        (1, 3) => &[12, 6],
        (2, 2) => &[32, 16, 6],
        (1, 4) => &[72, 24],
        (2, 3) => &[414, 174, 60, 24],
        (1, 5) => &[480, 120],
        (2, 4) => &[5208, 1416, 768, 288, 120],
        (3, 3) => &[11724, 3864, 2596, 1192, 508, 276, 120],
        _ => unreachable!("not a required row"),
    };
    rows.iter()
        .enumerate()
        .filter(|(_, &count)| count > 0)
        .map(|(p, &count)| (p as u64, count))
        .collect()
}

fn computed_table1() -> &'static Vec<((usize, usize), BTreeMap<u64, u64>)> {
    static TABLES: OnceLock<Vec<((usize, usize), BTreeMap<u64, u64>)>> = OnceLock::new();
    TABLES.get_or_init(|| {
        TABLE1_ROWS
            .iter()
            .map(|&(k1, k2)| ((k1, k2), h_table(k1, k2, 1).unwrap()))
            .collect()
    })
}

fn universe5() -> &'static Universe {
    static UNIVERSE: OnceLock<Universe> = OnceLock::new();
    UNIVERSE.get_or_init(|| Universe::up_to(5))
}

#[test]
fn criterion_01_one_element_base_cases() {
    let engine = FlipEngine::with_defaults();
    assert_eq!(engine.flip(&u(1, 1), &u(1, 1)).unwrap(), FlipValue::one());
    for (m, n) in [(u(1, 0), u(1, 0)), (u(1, 0), u(1, 1)), (u(1, 1), u(1, 0))] {
        assert_eq!(engine.flip(&m, &n).unwrap(), FlipValue::zero());
    }
    println!("criterion 1 (one-element base cases): PASS");
}

#[test]
fn criterion_02_glued_graph_examples() {
    let engine = FlipEngine::with_defaults();
    let fig1 = fig1_graph();
    assert_eq!(fig1.rank(), 5);
    assert_eq!(engine.flip(&fig1, &fig1).unwrap(), FlipValue::zero());
    let fig2 = fig2_graph();
    assert_eq!(engine.flip(&fig2, &fig2).unwrap(), FlipValue::from_u64(16));
    // Positivity witnesses: the K4 edge set (elements 0..5) kills the first
    // pair, the moved-edge graph has no bad subset.
    assert!(!is_flip_positive(&fig1, &fig1).unwrap());
    assert!(is_flip_positive(&fig2, &fig2).unwrap());
    assert_eq!(
        flip_zero_certificate(&fig1, &fig1).unwrap(),
        ZeroCertificate::BadSubset(0b111111)
    );
    assert_eq!(
        flip_zero_certificate(&fig2, &fig2).unwrap(),
        ZeroCertificate::None
    );
    println!("criterion 2 (K4-glued-C4 graphs: 0 and 16): PASS");
}

#[test]
fn criterion_03_uniform_closed_form() {
    let engine = FlipEngine::with_defaults();
    let mut checked = 0;
    for n in 1..=10usize {
        for r in 1..=n {
            let value = engine.flip(&u(n, r), &u(n, n - r + 1)).unwrap();
            assert_eq!(
                value,
                FlipValue::from_u64(binomial(n - 1, r - 1)),
                "U({n},{r}) * U({n},{})",
                n - r + 1
            );
            checked += 1;
        }
    }
    println!("criterion 3 (uniform closed form, {checked} pairs up to n = 10): PASS");
}

#[test]
fn criterion_04_self_product_table() {
    assert_eq!(self_product_table(1, 1).unwrap(), BTreeMap::from([(1, 1)]));
    assert_eq!(self_product_table(3, 1).unwrap(), BTreeMap::from([(0, 2), (2, 1)]));
    assert_eq!(
        self_product_table(5, 1).unwrap(),
        BTreeMap::from([(0, 10), (4, 2), (6, 1)])
    );
    println!("criterion 4 (self-product tables for n = 1, 3, 5): PASS");
}

#[test]
fn criterion_05_h_tables_match() {
    for ((k1, k2), table) in computed_table1() {
        assert_eq!(
            *table,
            expected_table1(*k1, *k2),
            "h table for ranks ({k1},{k2})"
        );
    }
    println!("criterion 5 (h tables for all rows with n <= 5): PASS");
}

#[test]
fn criterion_06_binary_counterexample() {
    let m = binary_counterexample();
    assert_eq!(m.n(), 7);
    assert_eq!(m.rank(), 4);
    let engine = FlipEngine::with_defaults();
    assert_eq!(engine.flip(&m, &m).unwrap(), FlipValue::from_u64(6));
    // The nbc count and its flip-product form also agree on this matroid.
    let nbc = nbc_count_natural(&m);
    assert_eq!(nbc_via_flip(&engine, &m).unwrap(), FlipValue::from_u64(nbc));
    println!("criterion 6 (rank-4 binary matroid on 7 elements, self product 6): PASS");
}

#[test]
fn criterion_07_rotation_example() {
    let graph = fig3_gain_graph();
    assert!(graph.is_min_rotation_rigid().unwrap());
    let engine = FlipEngine::with_defaults();
    let count = realisation_sym(&engine, &graph).unwrap();
    assert_eq!(count, 6u32.into());
    println!("criterion 7 (Z_4 gain graph: minimally rotation rigid, count 6): PASS");
}

#[test]
fn criterion_08_oracle_equivalence() {
    let exhaustive = suite::oracle_exhaustive(universe5(), 2024, 1).unwrap();
    let random = suite::oracle_random(50, 4096, 1).unwrap();
    println!("criterion 8 (oracle equivalence: {exhaustive}; {random}): PASS");
}

#[test]
fn criterion_09_invariant_suite() {
    let universe = universe5();
    let parts = vec![
        suite::matroid_identities(universe).unwrap(),
        suite::flip_symmetry(universe, 200, 51).unwrap(),
        suite::pivot_independence(universe).unwrap(),
        suite::rank_gates(universe).unwrap(),
        suite::beta_agreement(universe, 100, 52).unwrap(),
        suite::nbc_and_mu(universe, 10, 53).unwrap(),
        suite::nbc_upper_bound(universe).unwrap(),
        suite::relaxation_monotonicity(universe).unwrap(),
        suite::hadamard_wellformed(universe).unwrap(),
        suite::oracle_stability(universe).unwrap(),
        suite::gain_invariants(54).unwrap(),
    ];
    println!("criterion 9 (invariant suite: {}): PASS", parts.join("; "));
}

#[test]
fn criterion_10_conjecture_scan() {
    for ((k1, k2), table) in computed_table1() {
        let report = scan_h_table(table, *k1, *k2);
        assert!(
            report.holds(),
            "conjecture fails for ({k1},{k2}): {:?}",
            report.violations
        );
        // Spot checks from the table: the top value is attained by exactly
        // n! triples for n >= 3.
        if *k1 == 3 && *k2 == 3 {
            assert_eq!(report.max_value, 6);
            assert_eq!(table.get(&6), Some(&120));
        }
        if *k1 == 2 && *k2 == 2 {
            assert_eq!(report.max_value, 2);
            assert_eq!(table.get(&2), Some(&6));
        }
    }
    println!("criterion 10 (conjectured h-table properties at n <= 5): PASS");
}

#[test]
fn criterion_11_out_of_scope_documented() {
    // Larger enumerations (n >= 6 rows of the pair table, the (7,4)
    // self-product row), real realisation solving, and numerical fibre
    // counting are intentionally out of scope at desk scale; the pointwise
    // checks of criteria 6-9 stand in for them. Nothing to run.
    println!("criterion 11 (desk-scale exclusions documented): PASS");
}
