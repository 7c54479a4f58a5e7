//! Enumeration of matroids on small ground sets up to isomorphism, and the
//! flip-product histograms built from them.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flip::{FlipConfig, FlipEngine};
use crate::mask::{self, Mask};
use crate::matroid::{permutations, Matroid};

/// Ground-set cap for enumeration: C(6,3) = 20 candidate bases already
/// means screening 2^20 families.
pub const MAX_ENUM_GROUND: usize = 6;

/// One representative per isomorphism class of rank-r matroids on `[n]`.
#[derive(Debug, Clone)]
pub struct IsoClassSet {
    pub n: usize,
    pub r: usize,
    pub reps: Vec<Matroid>,
}

impl IsoClassSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Enumerate all rank-r matroids on `[n]` up to isomorphism.
///
/// Depth-first search over subfamilies of r-subsets with incremental
/// exchange-axiom pruning: a branch dies as soon as some exchange obligation
/// has no present or future witness. Deduplication keeps the
/// lexicographically minimal basis list over all n! relabelings.
pub fn enumerate_matroids(n: usize, r: usize) -> Result<IsoClassSet> {
    if n > MAX_ENUM_GROUND {
        return Err(Error::SizeCapExceeded { n, cap: MAX_ENUM_GROUND });
    }
    if r > n {
        return Err(Error::RankOutOfRange { r, n });
    }
    let candidates: Vec<Mask> = mask::combinations(n, r).collect();
    let index_of: HashMap<Mask, usize> = candidates.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let perms = permutations(n);

    let mut seen: HashSet<Vec<Mask>> = HashSet::new();
    let mut reps: Vec<Vec<Mask>> = Vec::new();
    let mut family: Vec<Mask> = Vec::new();
    dfs(
        0,
        &candidates,
        &index_of,
        &mut family,
        &mut |family: &[Mask]| {
            if seen.contains(family) {
                return;
            }
            // New isomorphism class: insert its whole relabeling orbit and
            // keep the lexicographically minimal member as representative.
            let mut orbit: Vec<Vec<Mask>> = perms
                .iter()
                .map(|p| {
                    let mut mapped: Vec<Mask> = family
                        .iter()
                        .map(|&b| mask::bits(b).fold(0, |acc, e| acc | mask::bit(p[e])))
                        .collect();
                    mapped.sort_unstable();
                    mapped
                })
                .collect();
            orbit.sort();
            reps.push(orbit[0].clone());
            for member in orbit {
                seen.insert(member);
            }
        },
    );

    reps.sort();
    let reps = reps
        .into_iter()
        .map(|masks| Matroid::from_base_masks_unchecked(n, masks))
        .collect();
    Ok(IsoClassSet { n, r, reps })
}

/// DFS over include/exclude decisions for each candidate basis, pruning
/// branches whose exchange obligations can no longer be satisfied.
fn dfs(
    next: usize,
    candidates: &[Mask],
    index_of: &HashMap<Mask, usize>,
    family: &mut Vec<Mask>,
    record: &mut impl FnMut(&[Mask]),
) {
    if exchange_dead(family, next, index_of) {
        return;
    }
    if next == candidates.len() {
        if !family.is_empty() {
            record(family);
        }
        return;
    }
    dfs(next + 1, candidates, index_of, family, record);
    family.push(candidates[next]);
    dfs(next + 1, candidates, index_of, family, record);
    family.pop();
}

/// An exchange obligation (B1, B2, x) is dead when no witness basis
/// (B1 - x + y) is in the family or among the still-undecided candidates.
fn exchange_dead(family: &[Mask], next: usize, index_of: &HashMap<Mask, usize>) -> bool {
    for &b1 in family {
        for &b2 in family {
            if b1 == b2 {
                continue;
            }
            for x in mask::bits(b1 & !b2) {
                let stripped = b1 & !mask::bit(x);
                let mut witnessed = false;
                for y in mask::bits(b2 & !b1) {
                    let candidate = stripped | mask::bit(y);
                    if family.contains(&candidate) {
                        witnessed = true;
                        break;
                    }
                    if index_of.get(&candidate).is_some_and(|&i| i >= next) {
                        witnessed = true;
                        break;
                    }
                }
                if !witnessed {
                    return true;
                }
            }
        }
    }
    false
}

/// Histogram of flip products over iso-class pairs and all ground-set
/// permutations: for ranks k1, k2 on n = k1 + k2 - 1 elements, count the
/// triples (M, N, sigma) with M * sigma(N) = p.
pub fn h_table(k1: usize, k2: usize, jobs: usize) -> Result<BTreeMap<u64, u64>> {
    let n = k1 + k2 - 1;
    if n > MAX_ENUM_GROUND {
        return Err(Error::SizeCapExceeded { n, cap: MAX_ENUM_GROUND });
    }
    let left = enumerate_matroids(n, k1)?;
    let right = enumerate_matroids(n, k2)?;
    let perms = permutations(n);
    let engine = FlipEngine::new(FlipConfig::default());

    let pairs: Vec<(&Matroid, &Matroid)> = left
        .reps
        .iter()
        .flat_map(|m| right.reps.iter().map(move |n| (m, n)))
        .collect();

    let tally = |acc: &mut BTreeMap<u64, u64>, (m, n0): &(&Matroid, &Matroid)| {
        for perm in &perms {
            let permuted = n0.apply_permutation(perm);
            let value = engine
                .flip(m, &permuted)
                .expect("same ground set")
                .to_u64()
                .expect("flip values on small ground sets fit in u64");
            *acc.entry(value).or_insert(0) += 1;
        }
    };

    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        let merged = pool.install(|| {
            pairs
                .par_iter()
                .fold(BTreeMap::new, |mut acc, pair| {
                    tally(&mut acc, pair);
                    acc
                })
                .reduce(BTreeMap::new, |mut a, b| {
                    for (k, v) in b {
                        *a.entry(k).or_insert(0) += v;
                    }
                    a
                })
        });
        Ok(merged)
    } else {
        let mut acc = BTreeMap::new();
        for pair in &pairs {
            tally(&mut acc, pair);
        }
        Ok(acc)
    }
}

/// Histogram of self flip products M * M over the iso classes of rank
/// (n+1)/2 matroids on `[n]`, for odd n in {1, 3, 5}.
pub fn self_product_table(n: usize, jobs: usize) -> Result<BTreeMap<u64, u64>> {
    if !matches!(n, 1 | 3 | 5) {
        return Err(Error::SizeCapExceeded { n, cap: 5 });
    }
    let k = (n + 1) / 2;
    let classes = enumerate_matroids(n, k)?;
    let engine = FlipEngine::new(FlipConfig::default());
    let values: Vec<u64> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| {
            classes
                .reps
                .par_iter()
                .map(|m| {
                    engine
                        .flip(m, m)
                        .expect("same ground set")
                        .to_u64()
                        .expect("small self products fit in u64")
                })
                .collect()
        })
    } else {
        classes
            .reps
            .iter()
            .map(|m| {
                engine
                    .flip(m, m)
                    .expect("same ground set")
                    .to_u64()
                    .expect("small self products fit in u64")
            })
            .collect()
    };
    let mut table = BTreeMap::new();
    for v in values {
        *table.entry(v).or_insert(0u64) += 1;
    }
    Ok(table)
}

/// Verdict of checking both conjectured properties of an h-table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub k1: usize,
    pub k2: usize,
    pub n: usize,
    /// U_{n,k1} * U_{n,k2} = C(n-1, k1-1), the maximal attainable value.
    pub max_value: u64,
    /// Every p in 0..=max_value is attained (checked for n >= 2).
    pub surjective: Option<bool>,
    /// h(p) <= n! holds exactly for p = max_value (checked for n >= 3).
    pub threshold_iff: Option<bool>,
    pub violations: Vec<String>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.surjective != Some(false) && self.threshold_iff != Some(false)
    }
}

/// Check both conjecture clauses against a computed h-table.
pub fn scan_h_table(table: &BTreeMap<u64, u64>, k1: usize, k2: usize) -> ConjectureReport {
    let n = k1 + k2 - 1;
    let max_value = binomial(n - 1, k1 - 1);
    let factorial: u64 = (1..=n as u64).product();
    let mut violations = Vec::new();

    let surjective = (n >= 2).then(|| {
        let mut ok = true;
        for p in 0..=max_value {
            if table.get(&p).copied().unwrap_or(0) == 0 {
                violations.push(format!("h({p}) = 0 inside 0..={max_value}"));
                ok = false;
            }
        }
        ok
    });
    let threshold_iff = (n >= 3).then(|| {
        let mut ok = true;
        for p in 0..=max_value {
            let count = table.get(&p).copied().unwrap_or(0);
            let small = count <= factorial;
            if small != (p == max_value) {
                violations.push(format!(
                    "h({p}) = {count} vs n! = {factorial}: threshold equivalence fails"
                ));
                ok = false;
            }
        }
        ok
    });

    ConjectureReport { k1, k2, n, max_value, surjective, threshold_iff, violations }
}

/// Compute the h-table for (k1, k2) and check the conjectured properties.
pub fn conjecture_scan(k1: usize, k2: usize, jobs: usize) -> Result<ConjectureReport> {
    let table = h_table(k1, k2, jobs)?;
    Ok(scan_h_table(&table, k1, k2))
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_small() {
        assert_eq!(enumerate_matroids(1, 1).unwrap().len(), 1);
        assert_eq!(enumerate_matroids(2, 1).unwrap().len(), 2);
        assert_eq!(enumerate_matroids(3, 2).unwrap().len(), 3);
        assert_eq!(enumerate_matroids(4, 2).unwrap().len(), 7);
        assert_eq!(enumerate_matroids(5, 2).unwrap().len(), 13);
        assert_eq!(enumerate_matroids(5, 3).unwrap().len(), 13);
        assert_eq!(enumerate_matroids(5, 4).unwrap().len(), 5);
        assert!(enumerate_matroids(7, 3).is_err());
    }

    #[test]
    fn totals_match_known_counts() {
        // Matroids on n elements up to isomorphism: 2, 4, 8, 17, 38.
        let totals: Vec<usize> = (1..=5)
            .map(|n| (0..=n).map(|r| enumerate_matroids(n, r).unwrap().len()).sum())
            .collect();
        assert_eq!(totals, vec![2, 4, 8, 17, 38]);
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        let classes = enumerate_matroids(4, 2).unwrap();
        let keys: HashSet<Vec<u8>> = classes
            .reps
            .iter()
            .map(|m| m.iso_canonical_key().unwrap())
            .collect();
        assert_eq!(keys.len(), classes.len());
        for m in &classes.reps {
            assert!(m.verify_exchange_axiom());
            assert_eq!(m.rank(), 2);
        }
    }

    #[test]
    fn h_table_tiny_rows() {
        let t11 = h_table(1, 1, 1).unwrap();
        assert_eq!(t11, BTreeMap::from([(1, 1)]));
        let t12 = h_table(1, 2, 1).unwrap();
        assert_eq!(t12, BTreeMap::from([(0, 2), (1, 2)]));
        let t22 = h_table(2, 2, 1).unwrap();
        assert_eq!(t22, BTreeMap::from([(0, 32), (1, 16), (2, 6)]));
        // Parallel runs merge to the same histogram.
        assert_eq!(h_table(2, 2, 3).unwrap(), t22);
    }

    #[test]
    fn self_table_small() {
        assert_eq!(self_product_table(1, 1).unwrap(), BTreeMap::from([(1, 1)]));
        assert_eq!(
            self_product_table(3, 1).unwrap(),
            BTreeMap::from([(0, 2), (2, 1)])
        );
        assert!(self_product_table(4, 1).is_err());
        assert!(self_product_table(7, 1).is_err());
    }

    #[test]
    fn conjecture_rows() {
        let report = conjecture_scan(2, 2, 1).unwrap();
        assert_eq!(report.max_value, 2);
        assert_eq!(report.surjective, Some(true));
        assert_eq!(report.threshold_iff, Some(true));
        assert!(report.holds());
        // n = 1 is excluded by both guards.
        let tiny = conjecture_scan(1, 1, 1).unwrap();
        assert_eq!(tiny.surjective, None);
        assert_eq!(tiny.threshold_iff, None);
        assert!(tiny.holds());
    }
}
