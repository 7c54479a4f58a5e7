//! The exhaustive small-ground-set verification suite.
//!
//! Every flip-product law the library relies on is checked here over all
//! matroid isomorphism classes with n <= 5 (and seeded random inputs at
//! n = 6, 7), pitting the deletion-contraction engine against the
//! independent subset-sum and tropical oracles. The CLI `check` command and
//! the acceptance tests both run these functions.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::enumerate::enumerate_matroids;
use crate::flip::{
    flip_product, flip_zero_certificate, hadamard_matroid, is_flip_positive, FlipConfig,
    FlipEngine, FlipValue, PivotRule, ZeroCertificate,
};
use crate::gain::{Gain, GainGraph, GainGroup};
use crate::invariants::{beta_direct, beta_via_flip, char_poly, mu_via_flip, nbc_count, nbc_via_flip};
use crate::mask;
use crate::matrix::{Orientation, PrimeFieldMatrix};
use crate::matroid::Matroid;
use crate::oracle::{oracle_flip, oracle_flip_detailed, GenericShift};

/// Outcome of one named check: a summary on success, the first violations
/// on failure.
pub type CheckResult = Result<String, String>;

/// All isomorphism classes over every rank for each ground size up to
/// `max_n`, enumerated once and shared by the checks.
pub struct Universe {
    by_n: Vec<Vec<Matroid>>,
}

impl Universe {
    pub fn up_to(max_n: usize) -> Self {
        let by_n = (0..=max_n)
            .map(|n| {
                (0..=n)
                    .flat_map(|r| enumerate_matroids(n, r).expect("within cap").reps)
                    .collect()
            })
            .collect();
        Self { by_n }
    }

    pub fn classes(&self, n: usize) -> &[Matroid] {
        &self.by_n[n]
    }

    pub fn max_n(&self) -> usize {
        self.by_n.len() - 1
    }

    fn pairs(&self, n: usize) -> impl Iterator<Item = (&Matroid, &Matroid)> {
        self.classes(n)
            .iter()
            .flat_map(move |m| self.classes(n).iter().map(move |other| (m, other)))
    }
}

/// Seeded loopless representable matroid of the requested rank: the row
/// matroid of a random matrix over F_5 with no zero rows.
pub fn random_matroid(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Matroid {
    loop {
        let entries: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..r).map(|_| rng.gen_range(0..5)).collect())
            .collect();
        if entries.iter().any(|row| row.iter().all(|&x| x == 0)) {
            continue;
        }
        let matrix = PrimeFieldMatrix::new(5, entries).expect("5 is prime");
        let matroid =
            Matroid::from_prime_field_matrix(&matrix, Orientation::Rows).expect("within cap");
        if matroid.rank() == r {
            debug_assert!(!matroid.has_loop());
            return matroid;
        }
    }
}

/// Matroid algebra identities over every class with n <= max: the exchange
/// axiom itself, double duality, the minor-duality exchange
/// (M / S)* = M* \ S, and monotonicity plus submodularity of the rank
/// function over all subset pairs.
pub fn matroid_identities(universe: &Universe) -> CheckResult {
    let mut checked = 0usize;
    for n in 0..=universe.max_n() {
        for m in universe.classes(n) {
            if !m.verify_exchange_axiom() {
                return Err(format!("exchange axiom fails at n={n}: {:?}", m.bases()));
            }
            if m.dual().dual() != *m {
                return Err(format!("double dual differs at n={n}: {:?}", m.bases()));
            }
            let full = m.ground().full_mask();
            for s in mask::subsets_of(full) {
                let contracted_dual = m.contract(s).map_err(|e| e.to_string())?.0.dual();
                let dual_deleted = m.dual().delete(s).map_err(|e| e.to_string())?.0;
                if contracted_dual != dual_deleted {
                    return Err(format!("(M/S)* != M*\\S at n={n} for S={s:#b}"));
                }
            }
            for s in mask::subsets_of(full) {
                for t in mask::subsets_of(full) {
                    let (rs, rt) = (m.rank_of(s), m.rank_of(t));
                    if m.rank_of(s | t) + m.rank_of(s & t) > rs + rt {
                        return Err(format!("rank not submodular at n={n}"));
                    }
                    if t & !s == 0 && rt > rs {
                        return Err(format!("rank not monotone at n={n}"));
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} matroids identity-checked"))
}

/// Flip symmetry M * N = N * M: exhaustive over all class pairs for each
/// n <= max, then on seeded random pairs at n = 6, 7.
pub fn flip_symmetry(universe: &Universe, random_pairs: usize, seed: u64) -> CheckResult {
    let engine = FlipEngine::with_defaults();
    let mut checked = 0usize;
    for n in 0..=universe.max_n() {
        for (m, other) in universe.pairs(n) {
            let ab = engine.flip(m, other).expect("same ground");
            let ba = engine.flip(other, m).expect("same ground");
            if ab != ba {
                return Err(format!(
                    "symmetry fails at n={n}: {:?} vs {:?} gives {ab} / {ba}",
                    m.bases(),
                    other.bases()
                ));
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random_pairs {
        let n = if i % 2 == 0 { 6 } else { 7 };
        let r1 = rng.gen_range(1..n);
        let r2 = n + 1 - r1;
        let m = random_matroid(&mut rng, n, r1);
        let other = random_matroid(&mut rng, n, r2);
        let ab = engine.flip(&m, &other).expect("same ground");
        let ba = engine.flip(&other, &m).expect("same ground");
        if ab != ba {
            return Err(format!("symmetry fails on random pair #{i} at n={n}: {ab} vs {ba}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} pairs symmetric"))
}

/// The result is identical under every pivot choice and under the
/// min-branching heuristic, for every critical-regime class pair.
pub fn pivot_independence(universe: &Universe) -> CheckResult {
    let mut checked = 0usize;
    for n in 2..=universe.max_n() {
        for (m, other) in universe.pairs(n) {
            if m.rank() + other.rank() != n + 1 {
                continue;
            }
            let reference = flip_product(m, other, &FlipConfig::default()).expect("same ground");
            let mut rules: Vec<PivotRule> = (0..n).map(PivotRule::Fixed).collect();
            rules.push(PivotRule::MinBranching);
            for rule in rules {
                let cfg = FlipConfig { pivot: rule, ..FlipConfig::default() };
                let value = flip_product(m, other, &cfg).expect("same ground");
                if value != reference {
                    return Err(format!(
                        "pivot {rule:?} changes the value at n={n}: {value} vs {reference}"
                    ));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs pivot-independent"))
}

/// The rank gates: below the critical line the product is 0, on it the
/// product is finite, above it the product is 0 or infinite and positive
/// exactly when the Hadamard product is free (which the certificate
/// witnesses).
pub fn rank_gates(universe: &Universe) -> CheckResult {
    let engine = FlipEngine::with_defaults();
    let mut checked = 0usize;
    for n in 1..=universe.max_n() {
        for (m, other) in universe.pairs(n) {
            let value = engine.flip(m, other).expect("same ground");
            let sum = m.rank() + other.rank();
            let ok = if sum < n + 1 {
                value.is_zero()
            } else if sum == n + 1 {
                value.is_finite()
            } else {
                value.is_zero() || value == FlipValue::Infinite
            };
            if !ok {
                return Err(format!("rank gate violated at n={n}, ranks {}+{}: {value}", m.rank(), other.rank()));
            }
            if m.has_loop() || other.has_loop() {
                if !value.is_zero() {
                    return Err(format!("loop rule violated at n={n}: {value}"));
                }
            } else if sum >= n + 1 {
                let positive = !value.is_zero();
                if positive != is_flip_positive(m, other).expect("same ground") {
                    return Err(format!("positivity test disagrees with flip at n={n}"));
                }
                let certificate = flip_zero_certificate(m, other).expect("same ground");
                if positive != matches!(certificate, ZeroCertificate::None) {
                    return Err(format!("certificate {certificate:?} disagrees at n={n}"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs gate-consistent"))
}

/// beta by subset sum equals beta by flip product, for every pivot element.
pub fn beta_agreement(universe: &Universe, random_count: usize, seed: u64) -> CheckResult {
    let engine = FlipEngine::with_defaults();
    let mut checked = 0usize;
    let verify = |m: &Matroid, label: &str| -> Result<(), String> {
        let direct = beta_direct(m);
        for e in 0..m.n() {
            let via = beta_via_flip(&engine, m, e).map_err(|err| err.to_string())?;
            if via != FlipValue::from_u64(direct as u64) {
                return Err(format!("beta mismatch on {label}, pivot {e}: direct {direct}, flip {via}"));
            }
        }
        Ok(())
    };
    for n in 2..=universe.max_n() {
        for m in universe.classes(n) {
            verify(m, &format!("class at n={n}"))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random_count {
        let n = if i % 2 == 0 { 6 } else { 7 };
        let r = rng.gen_range(1..=n);
        let m = random_matroid(&mut rng, n, r);
        verify(&m, &format!("random #{i} at n={n}"))?;
        checked += 1;
    }
    Ok(format!("{checked} matroids beta-consistent"))
}

/// nbc counts are independent of the element order, equal mu_{r-1}, and
/// equal the flip product with the complementary uniform matroid; for
/// simple matroids every mu_k matches its flip-product form.
pub fn nbc_and_mu(universe: &Universe, orders_per_matroid: usize, seed: u64) -> CheckResult {
    let engine = FlipEngine::with_defaults();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    for n in 1..=universe.max_n() {
        for m in universe.classes(n) {
            let natural: Vec<usize> = (0..n).collect();
            let reference = nbc_count(m, &natural);
            for _ in 0..orders_per_matroid {
                let mut order = natural.clone();
                for i in (1..order.len()).rev() {
                    order.swap(i, rng.gen_range(0..=i));
                }
                let shuffled = nbc_count(m, &order);
                if shuffled != reference {
                    return Err(format!(
                        "nbc depends on order at n={n}: {reference} vs {shuffled} under {order:?}"
                    ));
                }
            }
            let via = nbc_via_flip(&engine, m).map_err(|e| e.to_string())?;
            if via != FlipValue::from_u64(reference) {
                return Err(format!("nbc flip mismatch at n={n}: count {reference}, flip {via}"));
            }
            if m.rank() > 0 {
                let cp = char_poly(m);
                if cp.mu[m.rank() - 1] != reference {
                    return Err(format!(
                        "mu_(r-1) != nbc at n={n}: {} vs {reference}",
                        cp.mu[m.rank() - 1]
                    ));
                }
                if m.is_simple() {
                    for (k, &expected) in cp.mu.iter().enumerate() {
                        let via = mu_via_flip(&engine, m, k).map_err(|e| e.to_string())?;
                        if via != FlipValue::from_u64(expected) {
                            return Err(format!(
                                "mu_{k} flip mismatch at n={n}: char poly {expected}, flip {via}"
                            ));
                        }
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} matroids nbc/mu-consistent"))
}

/// The nbc upper bound M * N <= min(nbc(M), nbc(N)) in the critical regime.
pub fn nbc_upper_bound(universe: &Universe) -> CheckResult {
    let engine = FlipEngine::with_defaults();
    let mut checked = 0usize;
    for n in 1..=universe.max_n() {
        for (m, other) in universe.pairs(n) {
            if m.rank() + other.rank() != n + 1 {
                continue;
            }
            let natural: Vec<usize> = (0..n).collect();
            let bound = nbc_count(m, &natural).min(nbc_count(other, &natural));
            let value = engine.flip(m, other).expect("same ground");
            if value.finite().is_none_or(|v| *v > BigUint::from(bound)) {
                return Err(format!("nbc bound violated at n={n}: {value} > {bound}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs below the nbc bound"))
}

/// Circuit-hyperplane relaxation can only increase flip products.
pub fn relaxation_monotonicity(universe: &Universe) -> CheckResult {
    let engine = FlipEngine::with_defaults();
    let mut checked = 0usize;
    for n in 1..=universe.max_n() {
        for m in universe.classes(n) {
            for x in 1..=mask::full(n) {
                let Ok(relaxed) = m.circuit_hyperplane_relax(x) else {
                    continue;
                };
                for other in universe.classes(n) {
                    if m.rank() + other.rank() != n + 1 {
                        continue;
                    }
                    let before = engine.flip(m, other).expect("same ground");
                    let after = engine.flip(&relaxed, other).expect("same ground");
                    let (Some(b), Some(a)) = (before.finite(), after.finite()) else {
                        return Err(format!("non-finite value in relaxation check at n={n}"));
                    };
                    if b > a {
                        return Err(format!(
                            "relaxation decreased a flip product at n={n}: {before} > {after}"
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} relaxation comparisons monotone"))
}

/// The Hadamard product matroid is a genuine matroid and its freeness
/// matches positivity, on every loopless class pair.
pub fn hadamard_wellformed(universe: &Universe) -> CheckResult {
    let mut checked = 0usize;
    for n in 1..=universe.max_n().min(4) {
        for (m, other) in universe.pairs(n) {
            if m.has_loop() || other.has_loop() {
                continue;
            }
            let product = hadamard_matroid(m, other).expect("same ground");
            if !product.verify_exchange_axiom() {
                return Err(format!("Hadamard product is not a matroid at n={n}"));
            }
            let free = product.rank() == n;
            if free != is_flip_positive(m, other).expect("same ground") {
                return Err(format!("Hadamard freeness disagrees with positivity at n={n}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} Hadamard products verified"))
}

/// The tropical oracle agrees with the recursion on every loopless
/// critical-regime class pair up to max_n.
pub fn oracle_exhaustive(universe: &Universe, seed: u64, jobs: usize) -> CheckResult {
    let engine = FlipEngine::with_defaults();
    let mut tasks: Vec<(usize, &Matroid, &Matroid)> = Vec::new();
    for n in 1..=universe.max_n() {
        for (m, other) in universe.pairs(n) {
            if m.has_loop() || other.has_loop() || m.rank() + other.rank() != n + 1 {
                continue;
            }
            tasks.push((n, m, other));
        }
    }
    let compare = |(n, m, other): &(usize, &Matroid, &Matroid)| -> Result<(), String> {
        let expected = engine.flip(m, other).expect("same ground");
        let got = oracle_flip(m, other, 0, &GenericShift::new(seed)).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!(
                "oracle disagrees at n={n}: engine {expected}, oracle {got} for {:?} / {:?}",
                m.bases(),
                other.bases()
            ));
        }
        Ok(())
    };
    run_tasks(&tasks, jobs, compare)?;
    Ok(format!("{} loopless pairs oracle-checked", tasks.len()))
}

/// Oracle equivalence on seeded random representable pairs at n = 6 and 7.
pub fn oracle_random(count: usize, seed: u64, jobs: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks = Vec::with_capacity(count);
    for i in 0..count {
        let n = if i % 2 == 0 { 6 } else { 7 };
        let r1 = rng.gen_range(1..n);
        let m = random_matroid(&mut rng, n, r1);
        let other = random_matroid(&mut rng, n, n + 1 - r1);
        tasks.push((i, m, other));
    }
    let compare = |(i, m, other): &(usize, Matroid, Matroid)| -> Result<(), String> {
        let engine = FlipEngine::with_defaults();
        let expected = engine.flip(m, other).expect("same ground");
        let got =
            oracle_flip(m, other, 0, &GenericShift::new(seed ^ *i as u64)).map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("oracle disagrees on random pair #{i}: {expected} vs {got}"));
        }
        Ok(())
    };
    run_tasks(&tasks, jobs, compare)?;
    Ok(format!("{count} random pairs oracle-checked"))
}

/// The oracle value does not depend on the pinned coordinate or the shift
/// seed, and two independent shifts agree; multiplicities on uniform and
/// graphic inputs are all 1.
pub fn oracle_stability(universe: &Universe) -> CheckResult {
    let mut checked = 0usize;
    for n in 1..=universe.max_n().min(4) {
        for (m, other) in universe.pairs(n) {
            if m.has_loop() || other.has_loop() || m.rank() + other.rank() != n + 1 {
                continue;
            }
            let reference = oracle_flip(m, other, 0, &GenericShift::new(11)).map_err(|e| e.to_string())?;
            for epsilon in 1..n {
                let v = oracle_flip(m, other, epsilon, &GenericShift::new(11)).map_err(|e| e.to_string())?;
                if v != reference {
                    return Err(format!("oracle depends on epsilon={epsilon} at n={n}"));
                }
            }
            let second = oracle_flip(m, other, 0, &GenericShift::new(5417)).map_err(|e| e.to_string())?;
            if second != reference {
                return Err(format!("oracle depends on the shift seed at n={n}"));
            }
            checked += 1;
        }
    }
    // Unimodularity of chain cones on uniform and graphic inputs.
    let k3 = Matroid::graphic(3, &[(0, 1), (0, 2), (1, 2)]).expect("triangle");
    let c4 = Matroid::graphic(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).expect("4-cycle");
    let c5 = Matroid::graphic(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).expect("5-cycle");
    let mut unimodular: Vec<(Matroid, Matroid)> = Vec::new();
    for n in 1..=5usize {
        for r in 1..=n {
            unimodular.push((
                Matroid::uniform(n, r).expect("in range"),
                Matroid::uniform(n, n + 1 - r).expect("in range"),
            ));
        }
    }
    for g in [k3, c4, c5] {
        let partner = Matroid::uniform(g.n(), g.n() + 1 - g.rank()).expect("in range");
        unimodular.push((g, partner));
    }
    for (m, other) in &unimodular {
        let outcome = oracle_flip_detailed(m, other, 0, &GenericShift::new(23)).map_err(|e| e.to_string())?;
        if outcome.multiplicities.iter().any(|&mult| mult != 1) {
            return Err(format!(
                "non-unit multiplicity {:?} on a uniform/graphic input (n={})",
                outcome.multiplicities,
                m.n()
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} oracle stability checks passed"))
}

/// Gain-graph laws: switching invariance, reversal consistency, functor
/// commutation for deletion and non-loop contraction, and zero-gain Z^1
/// matroids being graphic (exhaustive over small multigraphs).
pub fn gain_invariants(seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;

    // Switching invariance: 100 random switches on a three-vertex Z_4 graph and
    // on a random Z^2 graph.
    let z4 = GainGraph::new(
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
    .expect("valid graph");
    let lattice = random_gain_graph(&mut rng, GainGroup::Lattice { d: 2 }, 3, 5);
    for graph in [&z4, &lattice] {
        let reference = graph.matroid().map_err(|e| e.to_string())?;
        let mut current = graph.clone();
        for _ in 0..100 {
            let v = rng.gen_range(0..current.vertices());
            let gamma = random_gain(&mut rng, &current.group());
            current = current.switch(v, &gamma).map_err(|e| e.to_string())?;
            checked += 1;
        }
        if current.matroid().map_err(|e| e.to_string())? != reference {
            return Err("switching changed the gain matroid".into());
        }
    }

    // Reversal: querying a gain from either endpoint negates.
    for e in 0..z4.edge_count() {
        let edge = &z4.edges()[e];
        if edge.is_loop() {
            continue;
        }
        let fwd = z4.gain_from(e, edge.from).map_err(|e| e.to_string())?;
        let bwd = z4.gain_from(e, edge.to).map_err(|e| e.to_string())?;
        if z4.group().add(&fwd, &bwd) != z4.group().zero() {
            return Err(format!("reversal does not negate on edge {e}"));
        }
        checked += 1;
    }

    // Deletion always commutes with the matroid functor; contraction of
    // non-loop edges never reports a rule mismatch.
    for i in 0..40 {
        let group = if i % 2 == 0 {
            GainGroup::Zk { k: 2 + (i as u64 % 4) }
        } else {
            GainGroup::Lattice { d: 1 + (i / 2) % 2 }
        };
        let graph = random_gain_graph(&mut rng, group, 1 + i % 4, 1 + i % 6);
        let matroid = graph.matroid().map_err(|e| e.to_string())?;
        for e in 0..graph.edge_count() {
            let deleted = graph.gain_delete(e).map_err(|e| e.to_string())?;
            if deleted.matroid().map_err(|e| e.to_string())?
                != matroid.delete(mask::bit(e)).map_err(|e| e.to_string())?.0
            {
                return Err(format!("gain deletion disagrees with matroid deletion (graph {i})"));
            }
            if !graph.edges()[e].is_loop() {
                match graph.gain_contract(e) {
                    Ok(_) => {}
                    Err(err) => {
                        return Err(format!(
                            "non-loop gain contraction failed on graph {i}, edge {e}: {err}"
                        ))
                    }
                }
            }
            checked += 1;
        }
    }

    // Zero-gain Z^1 multigraphs give graphic matroids, exhaustively for up
    // to 4 vertices and up to 6 edges (with multiplicity).
    for vertices in 1..=4usize {
        let mut slots = Vec::new();
        for u in 0..vertices {
            for v in u..vertices {
                slots.push((u, v));
            }
        }
        let mut multiset = Vec::new();
        enumerate_multisets(&slots, 6, 0, &mut multiset, &mut |edges: &[(usize, usize)]| {
            if edges.is_empty() {
                return Ok(());
            }
            let graphic = Matroid::graphic(vertices, edges).expect("within cap");
            let gains = edges
                .iter()
                .map(|&(u, v)| (u, v, Gain::Lattice(vec![0])))
                .collect();
            let zero_gain = GainGraph::new(GainGroup::Lattice { d: 1 }, vertices, gains)
                .expect("valid graph");
            if zero_gain.zd_matroid().expect("lattice group") != graphic {
                return Err(format!("zero-gain mismatch on {edges:?}"));
            }
            Ok(())
        })?;
        checked += 1;
    }

    Ok(format!("{checked} gain-graph checks passed"))
}

fn random_gain(rng: &mut ChaCha8Rng, group: &GainGroup) -> Gain {
    match *group {
        GainGroup::Zk { k } => Gain::Zk(rng.gen_range(0..k)),
        GainGroup::Lattice { d } => Gain::Lattice((0..d).map(|_| rng.gen_range(-2..=2)).collect()),
    }
}

fn random_gain_graph(
    rng: &mut ChaCha8Rng,
    group: GainGroup,
    vertices: usize,
    edges: usize,
) -> GainGraph {
    let edges = (0..edges)
        .map(|_| {
            let u = rng.gen_range(0..vertices);
            let v = rng.gen_range(0..vertices);
            (u, v, random_gain(rng, &group))
        })
        .collect();
    GainGraph::new(group, vertices, edges).expect("valid random graph")
}

/// Enumerate all multisets of at most `budget` further edges over `slots`,
/// starting at slot index `from`.
fn enumerate_multisets(
    slots: &[(usize, usize)],
    budget: usize,
    from: usize,
    current: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]) -> Result<(), String>,
) -> Result<(), String> {
    visit(current)?;
    if budget == 0 {
        return Ok(());
    }
    for i in from..slots.len() {
        current.push(slots[i]);
        enumerate_multisets(slots, budget - 1, i, current, visit)?;
        current.pop();
    }
    Ok(())
}

fn run_tasks<T: Sync>(
    tasks: &[T],
    jobs: usize,
    check: impl Fn(&T) -> Result<(), String> + Sync,
) -> Result<(), String> {
    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| tasks.par_iter().try_for_each(&check))
    } else {
        tasks.iter().try_for_each(check)
    }
}

/// Run the whole suite, returning one (name, outcome) row per check.
pub fn run_full_suite(jobs: usize, seed: u64) -> Vec<(&'static str, CheckResult)> {
    let universe = Universe::up_to(5);
    vec![
        ("matroid identities", matroid_identities(&universe)),
        ("flip symmetry", flip_symmetry(&universe, 200, seed)),
        ("pivot independence", pivot_independence(&universe)),
        ("rank gates & certificates", rank_gates(&universe)),
        ("beta agreement", beta_agreement(&universe, 100, seed.wrapping_add(1))),
        ("nbc & mu agreement", nbc_and_mu(&universe, 10, seed.wrapping_add(2))),
        ("nbc upper bound", nbc_upper_bound(&universe)),
        ("relaxation monotonicity", relaxation_monotonicity(&universe)),
        ("hadamard well-formedness", hadamard_wellformed(&universe)),
        ("oracle equivalence (exhaustive)", oracle_exhaustive(&universe, seed.wrapping_add(3), jobs)),
        ("oracle equivalence (random)", oracle_random(50, seed.wrapping_add(4), jobs)),
        ("oracle stability", oracle_stability(&universe)),
        ("gain invariants", gain_invariants(seed.wrapping_add(5))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_counts() {
        let universe = Universe::up_to(4);
        assert_eq!(universe.classes(1).len(), 2);
        assert_eq!(universe.classes(2).len(), 4);
        assert_eq!(universe.classes(3).len(), 8);
        assert_eq!(universe.classes(4).len(), 17);
    }

    #[test]
    fn random_matroids_hit_requested_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for r in 1..=4 {
            let m = random_matroid(&mut rng, 6, r);
            assert_eq!(m.rank(), r);
            assert!(!m.has_loop());
        }
    }

    #[test]
    fn small_universe_suite_passes() {
        // A reduced version of the full suite on n <= 3, exercising every
        // check function quickly; the acceptance tests run the full thing.
        let universe = Universe::up_to(3);
        matroid_identities(&universe).unwrap();
        flip_symmetry(&universe, 4, 7).unwrap();
        pivot_independence(&universe).unwrap();
        rank_gates(&universe).unwrap();
        beta_agreement(&universe, 4, 8).unwrap();
        nbc_and_mu(&universe, 3, 9).unwrap();
        nbc_upper_bound(&universe).unwrap();
        relaxation_monotonicity(&universe).unwrap();
        hadamard_wellformed(&universe).unwrap();
        oracle_exhaustive(&universe, 10, 1).unwrap();
        oracle_stability(&universe).unwrap();
    }
}
