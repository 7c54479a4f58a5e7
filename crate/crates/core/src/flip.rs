//! The flip product of matroids, computed by a memoized
//! deletion-contraction recursion with zero-pruning rules.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mask::{self, Mask};
use crate::matroid::{iso_pair_key, pair_key, Matroid};

/// Value of a flip product: a nonnegative integer or infinity.
///
/// Multiplication uses the convention `0 * infinity = 0`; addition lets
/// infinity absorb.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FlipValue {
    Finite(BigUint),
    Infinite,
}

impl FlipValue {
    pub fn zero() -> Self {
        FlipValue::Finite(BigUint::zero())
    }

    pub fn one() -> Self {
        FlipValue::Finite(BigUint::one())
    }

    pub fn from_u64(v: u64) -> Self {
        FlipValue::Finite(BigUint::from(v))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FlipValue::Finite(v) if v.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FlipValue::Finite(_))
    }

    /// The finite value, if any.
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            FlipValue::Finite(v) => Some(v),
            FlipValue::Infinite => None,
        }
    }

    /// The finite value as u64 when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.finite().and_then(|v| u64::try_from(v).ok())
    }
}

impl From<u64> for FlipValue {
    fn from(v: u64) -> Self {
        FlipValue::from_u64(v)
    }
}

impl fmt::Display for FlipValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlipValue::Finite(v) => write!(f, "{v}"),
            FlipValue::Infinite => write!(f, "infinity"),
        }
    }
}

impl Add<&FlipValue> for &FlipValue {
    type Output = FlipValue;

    fn add(self, rhs: &FlipValue) -> FlipValue {
        match (self, rhs) {
            (FlipValue::Finite(a), FlipValue::Finite(b)) => FlipValue::Finite(a + b),
            _ => FlipValue::Infinite,
        }
    }
}

impl AddAssign<FlipValue> for FlipValue {
    fn add_assign(&mut self, rhs: FlipValue) {
        *self = &*self + &rhs;
    }
}

impl Mul<&FlipValue> for &FlipValue {
    type Output = FlipValue;

    fn mul(self, rhs: &FlipValue) -> FlipValue {
        if self.is_zero() || rhs.is_zero() {
            return FlipValue::zero();
        }
        match (self, rhs) {
            (FlipValue::Finite(a), FlipValue::Finite(b)) => FlipValue::Finite(a * b),
            _ => FlipValue::Infinite,
        }
    }
}

/// Pivot selection for the deletion-contraction branching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Always pivot on element 0 of the (re-indexed) ground set.
    FirstIndex,
    /// Pivot on the element minimizing the number of surviving subset pairs,
    /// estimated by a linear scan. A heuristic: correctness is
    /// pivot-independent, speed is not.
    MinBranching,
    /// Pivot on a fixed index, clamped to the current ground set. Mostly
    /// useful for exercising pivot independence.
    Fixed(usize),
}

/// Memoization key mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemoMode {
    /// Key on the exact labeled basis families.
    Exact,
    /// Key on the isomorphism-canonical form of the pair (simultaneous
    /// relabeling). Only applied for n <= 9; larger ground sets fall back to
    /// exact keys since canonicalization costs n! per node.
    IsoCanonical,
}

#[derive(Debug, Clone)]
pub struct FlipConfig {
    pub pivot: PivotRule,
    pub memo: MemoMode,
    /// Worker count for fanning out top-level subset pairs. 1 = sequential.
    pub parallel_width: usize,
}

impl Default for FlipConfig {
    fn default() -> Self {
        Self {
            pivot: PivotRule::FirstIndex,
            memo: MemoMode::Exact,
            parallel_width: 1,
        }
    }
}

/// Ranks of every subset of the ground set, built once per branching node.
pub(crate) struct RankTable {
    rank: Vec<u8>,
}

impl RankTable {
    pub(crate) fn build(m: &Matroid) -> Self {
        let n = m.n();
        let size = 1usize << n;
        // A set is independent iff it is contained in some basis: mark the
        // bases and propagate down by a superset-or transform.
        let mut indep = vec![false; size];
        for &b in m.bases() {
            indep[b as usize] = true;
        }
        for i in 0..n {
            let bit = 1usize << i;
            for s in 0..size {
                if s & bit == 0 && indep[s | bit] {
                    indep[s] = true;
                }
            }
        }
        let mut rank = vec![0u8; size];
        for s in 1..size {
            if indep[s] {
                rank[s] = (s as u32).count_ones() as u8;
            } else {
                let mut best = 0;
                let mut rest = s;
                while rest != 0 {
                    let low = rest & rest.wrapping_neg();
                    best = best.max(rank[s ^ low]);
                    rest ^= low;
                }
                rank[s] = best;
            }
        }
        Self { rank }
    }

    #[inline]
    pub(crate) fn rank(&self, s: Mask) -> usize {
        self.rank[s as usize] as usize
    }
}

/// Memoized flip product engine. Reuse one engine across related queries to
/// share the memo table; all methods take `&self` and are safe to call from
/// several threads.
pub struct FlipEngine {
    cfg: FlipConfig,
    memo: DashMap<Vec<u8>, FlipValue>,
    pool: Option<rayon::ThreadPool>,
}

impl FlipEngine {
    pub fn new(cfg: FlipConfig) -> Self {
        let pool = (cfg.parallel_width > 1).then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.parallel_width)
                .build()
                .expect("failed to build worker pool")
        });
        Self { cfg, memo: DashMap::new(), pool }
    }

    pub fn with_defaults() -> Self {
        Self::new(FlipConfig::default())
    }

    pub fn config(&self) -> &FlipConfig {
        &self.cfg
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Compute the flip product M * N.
    pub fn flip(&self, m: &Matroid, n: &Matroid) -> Result<FlipValue> {
        if m.n() != n.n() {
            return Err(Error::GroundSetMismatch { left: m.n(), right: n.n() });
        }
        Ok(self.eval(m, n, 0))
    }

    fn eval(&self, m: &Matroid, n: &Matroid, depth: usize) -> FlipValue {
        let size = m.n();
        if size == 0 {
            return FlipValue::one();
        }
        if size == 1 {
            // Base case: both must be U_{1,1}.
            return if m.rank() == 1 && n.rank() == 1 {
                FlipValue::one()
            } else {
                FlipValue::zero()
            };
        }
        if m.has_loop() || n.has_loop() {
            return FlipValue::zero();
        }
        let (rm, rn) = (m.rank(), n.rank());
        if rm + rn < size + 1 {
            return FlipValue::zero();
        }
        if rm + rn > size + 1 {
            // Either 0 or infinite; decided by freeness of the Hadamard
            // product, without recursing.
            return if is_flip_positive_loopless(m, n) {
                FlipValue::Infinite
            } else {
                FlipValue::zero()
            };
        }

        // From here on: loopless, r(M) + r(N) = |E| + 1, |E| >= 2.
        let (cm, cn) = (m.coloops(), n.coloops());
        if cm & cn != 0 {
            return FlipValue::zero();
        }
        if have_common_separator(m, n) {
            return FlipValue::zero();
        }
        // Coloop simplification: an element that is a coloop of exactly one
        // side (and a loop of neither) can be deleted from both.
        let lone_coloop = cm | cn;
        if lone_coloop != 0 {
            let e = mask::bit(lone_coloop.trailing_zeros() as usize);
            let (md, _) = m.delete(e).expect("element in range");
            let (nd, _) = n.delete(e).expect("element in range");
            return self.eval(&md, &nd, depth);
        }

        let key = self.key(m, n);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let value = self.branch(m, n, depth);
        self.memo.insert(key, value.clone());
        value
    }

    fn key(&self, m: &Matroid, n: &Matroid) -> Vec<u8> {
        match self.cfg.memo {
            MemoMode::Exact => pair_key(m, n),
            MemoMode::IsoCanonical => iso_pair_key(m, n).unwrap_or_else(|_| pair_key(m, n)),
        }
    }

    /// The deletion-contraction sum over splittings E = E1 u E2 with
    /// E1 n E2 = {pivot}: the two singleton terms plus, for every pair with
    /// |E1|, |E2| >= 2 passing the rank-equality pruning, the product of the
    /// two sub flip products.
    fn branch(&self, m: &Matroid, n: &Matroid, depth: usize) -> FlipValue {
        let size = m.n();
        let full = mask::full(size);
        let tm = RankTable::build(m);
        let tn = RankTable::build(n);
        let pivot = match self.cfg.pivot {
            PivotRule::FirstIndex => 0,
            PivotRule::Fixed(k) => k.min(size - 1),
            PivotRule::MinBranching => (0..size)
                .min_by_key(|&e| surviving_pairs(m, n, &tm, &tn, e))
                .unwrap_or(0),
        };
        let pb = mask::bit(pivot);

        let mut product_terms: Vec<[Matroid; 4]> = Vec::new();
        let rest = full & !pb;
        let (rm, rn) = (m.rank(), n.rank());
        for s in mask::subsets_of(rest) {
            if s == 0 || s == rest {
                continue; // endpoints are the singleton terms below
            }
            let e1 = s | pb;
            let e2 = (full & !e1) | pb;
            let left = rm - tm.rank(e1) + tn.rank(full & !e1);
            if left != size - mask::count(e1) + 1 {
                continue;
            }
            let right = tm.rank(e1 & !pb) + rn - tn.rank(e2);
            if right != size - mask::count(e2) + 1 {
                continue;
            }
            let (m1, _) = m.contract(e1).expect("subset in range");
            let (n1, _) = n.delete(e1).expect("subset in range");
            let (m2, _) = m.delete(e2).expect("subset in range");
            let (n2, _) = n.contract(e2).expect("subset in range");
            product_terms.push([m1, n1, m2, n2]);
        }
        let (ma, _) = m.contract(pb).expect("pivot in range");
        let (na, _) = n.delete(pb).expect("pivot in range");
        let (mb, _) = m.delete(pb).expect("pivot in range");
        let (nb, _) = n.contract(pb).expect("pivot in range");
        drop(tm);
        drop(tn);

        let singles = &self.eval(&ma, &na, depth + 1) + &self.eval(&mb, &nb, depth + 1);
        let pairs = match &self.pool {
            Some(pool) if depth == 0 && product_terms.len() > 1 => pool.install(|| {
                product_terms
                    .par_iter()
                    .map(|[m1, n1, m2, n2]| {
                        let left = self.eval(m1, n1, depth + 1);
                        if left.is_zero() {
                            return FlipValue::zero();
                        }
                        &left * &self.eval(m2, n2, depth + 1)
                    })
                    .reduce(FlipValue::zero, |a, b| &a + &b)
            }),
            _ => {
                let mut acc = FlipValue::zero();
                for [m1, n1, m2, n2] in &product_terms {
                    let left = self.eval(m1, n1, depth + 1);
                    if left.is_zero() {
                        continue;
                    }
                    acc += &left * &self.eval(m2, n2, depth + 1);
                }
                acc
            }
        };
        &singles + &pairs
    }
}

/// Number of (E1, E2) pairs surviving the rank-equality pruning for a given
/// pivot; used by [`PivotRule::MinBranching`].
fn surviving_pairs(m: &Matroid, n: &Matroid, tm: &RankTable, tn: &RankTable, pivot: usize) -> usize {
    let size = m.n();
    let full = mask::full(size);
    let pb = mask::bit(pivot);
    let rest = full & !pb;
    let (rm, rn) = (m.rank(), n.rank());
    let mut count = 0;
    for s in mask::subsets_of(rest) {
        if s == 0 || s == rest {
            continue;
        }
        let e1 = s | pb;
        let e2 = (full & !e1) | pb;
        let left = rm - tm.rank(e1) + tn.rank(full & !e1);
        if left != size - mask::count(e1) + 1 {
            continue;
        }
        let right = tm.rank(e1 & !pb) + rn - tn.rank(e2);
        if right == size - mask::count(e2) + 1 {
            count += 1;
        }
    }
    count
}

/// Join of the component partitions of both matroids, found through
/// elementary basis exchanges: if the join has more than one block, each
/// block is a common separator and the flip product vanishes.
fn have_common_separator(m: &Matroid, n: &Matroid) -> bool {
    let size = m.n();
    let mut dsu = crate::matroid::Dsu::new(size);
    for mat in [m, n] {
        let set: std::collections::HashSet<Mask> = mat.bases().iter().copied().collect();
        let full = mask::full(size);
        for &b in mat.bases() {
            for x in mask::bits(b) {
                let stripped = b & !mask::bit(x);
                for y in mask::bits(full & !b) {
                    if set.contains(&(stripped | mask::bit(y))) {
                        dsu.union(x, y);
                    }
                }
            }
        }
    }
    let roots = (0..size).filter(|&v| dsu.find(v) == v).count();
    roots > 1
}

/// Compute a flip product with a fresh engine.
pub fn flip_product(m: &Matroid, n: &Matroid, cfg: &FlipConfig) -> Result<FlipValue> {
    FlipEngine::new(cfg.clone()).flip(m, n)
}

/// The Hadamard product of matroids: F is independent iff every nonempty
/// subset F' of F satisfies `r_M(F') + r_N(F') >= |F'| + 1`.
pub fn hadamard_matroid(m: &Matroid, n: &Matroid) -> Result<Matroid> {
    if m.n() != n.n() {
        return Err(Error::GroundSetMismatch { left: m.n(), right: n.n() });
    }
    let size = m.n();
    let tm = RankTable::build(m);
    let tn = RankTable::build(n);
    let total = 1usize << size;
    // bad[f] = some nonempty subset of f violates the rank condition.
    let mut bad = vec![false; total];
    let mut best_rank = 0;
    for f in 1..total {
        let violated =
            tm.rank(f as Mask) + tn.rank(f as Mask) < (f as u32).count_ones() as usize + 1;
        bad[f] = violated || {
            let mut rest = f;
            let mut hit = false;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                if bad[f ^ low] {
                    hit = true;
                    break;
                }
                rest ^= low;
            }
            hit
        };
        if !bad[f] {
            best_rank = best_rank.max((f as u32).count_ones() as usize);
        }
    }
    let masks: Vec<Mask> = (0..total)
        .filter(|&f| !bad[f] && (f as u32).count_ones() as usize == best_rank)
        .map(|f| f as Mask)
        .collect();
    Ok(Matroid::from_base_masks_unchecked(size, masks))
}

/// Whether the flip product of the pair is positive (equivalently, whether
/// the Hadamard product matroid is free).
pub fn is_flip_positive(m: &Matroid, n: &Matroid) -> Result<bool> {
    if m.n() != n.n() {
        return Err(Error::GroundSetMismatch { left: m.n(), right: n.n() });
    }
    if m.has_loop() || n.has_loop() {
        return Ok(false);
    }
    Ok(is_flip_positive_loopless(m, n))
}

fn is_flip_positive_loopless(m: &Matroid, n: &Matroid) -> bool {
    let size = m.n();
    let tm = RankTable::build(m);
    let tn = RankTable::build(n);
    (1..1usize << size)
        .all(|f| tm.rank(f as Mask) + tn.rank(f as Mask) >= (f as u32).count_ones() as usize + 1)
}

/// Diagnostic witness for a vanishing flip product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroCertificate {
    /// One of the matroids has a loop.
    Loop,
    /// r(M) + r(N) < |E| + 1.
    RankDeficit,
    /// Both matroids share a coloop (and |E| >= 2).
    SharedColoop,
    /// A subset violating the Hadamard rank condition; the flip product is
    /// zero in the critical rank regime, and 0-or-infinite above it.
    BadSubset(Mask),
    /// No witness: the flip product is positive (possibly infinite).
    None,
}

/// First zero-witness found, or [`ZeroCertificate::None`] when positive.
pub fn flip_zero_certificate(m: &Matroid, n: &Matroid) -> Result<ZeroCertificate> {
    if m.n() != n.n() {
        return Err(Error::GroundSetMismatch { left: m.n(), right: n.n() });
    }
    if m.has_loop() || n.has_loop() {
        return Ok(ZeroCertificate::Loop);
    }
    let size = m.n();
    let (rm, rn) = (m.rank(), n.rank());
    if rm + rn < size + 1 {
        return Ok(ZeroCertificate::RankDeficit);
    }
    if rm + rn == size + 1 && size >= 2 && m.coloops() & n.coloops() != 0 {
        return Ok(ZeroCertificate::SharedColoop);
    }
    let tm = RankTable::build(m);
    let tn = RankTable::build(n);
    for f in 1..1usize << size {
        if tm.rank(f as Mask) + tn.rank(f as Mask) < (f as u32).count_ones() as usize + 1 {
            return Ok(ZeroCertificate::BadSubset(f as Mask));
        }
    }
    Ok(ZeroCertificate::None)
}
