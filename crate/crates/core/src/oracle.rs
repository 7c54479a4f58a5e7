//! Brute-force flip products via tropical stable intersection.
//!
//! The flip product of loopless matroids with r(M) + r(N) = |E| + 1 equals
//! the number of points, counted with lattice-index multiplicity, in
//! `Trop(M) n (-Trop(N) + w) n {x_eps = 0}` for a generic shift w. This
//! module enumerates the maximal cones of both Bergman fans as maximal
//! chains of flats, solves each cone pair exactly over the rationals, and
//! sums the multiplicities. It shares no code with the deletion-contraction
//! engine, which is the point: the two sides check each other.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::flip::{FlipValue, RankTable};
use crate::linalg;
use crate::mask::{self, Mask};
use crate::matroid::{Dsu, Matroid};

/// A maximal cone of the fine-structure Bergman fan, encoded as a maximal
/// chain of flats `{} = F_0 < F_1 < ... < F_r = E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCone {
    chain: Vec<Mask>,
}

impl ChainCone {
    /// The full chain, from the empty set to the ground set.
    pub fn chain(&self) -> &[Mask] {
        &self.chain
    }

    /// The proper nonempty flats F_1 .. F_{r-1}, whose indicator vectors
    /// generate the cone's rays; chi_E spans the lineality line.
    pub fn rays(&self) -> &[Mask] {
        &self.chain[1..self.chain.len() - 1]
    }

    /// Successive differences F_i \ F_{i-1}; these partition the ground set.
    fn layers(&self) -> Vec<Mask> {
        self.chain.windows(2).map(|w| w[1] & !w[0]).collect()
    }
}

/// All maximal chains of flats of a loopless matroid, by depth-first search
/// over the flat lattice.
pub fn maximal_chains(m: &Matroid) -> Result<Vec<ChainCone>> {
    if m.has_loop() {
        return Err(Error::HasLoop);
    }
    let size = m.n();
    let full = mask::full(size);
    let table = RankTable::build(m);
    let closure = |s: Mask| -> Mask {
        let r = table.rank(s);
        let mut cl = s;
        for e in 0..size {
            if !mask::contains(s, e) && table.rank(s | mask::bit(e)) == r {
                cl |= mask::bit(e);
            }
        }
        cl
    };

    let mut chains = Vec::new();
    let mut stack = vec![0 as Mask];
    dfs_chains(&mut chains, &mut stack, full, &closure);
    Ok(chains)
}

fn dfs_chains(
    chains: &mut Vec<ChainCone>,
    stack: &mut Vec<Mask>,
    full: Mask,
    closure: &impl Fn(Mask) -> Mask,
) {
    let top = *stack.last().expect("stack nonempty");
    if top == full {
        chains.push(ChainCone { chain: stack.clone() });
        return;
    }
    let mut covers: Vec<Mask> = mask::bits(full & !top)
        .map(|e| closure(top | mask::bit(e)))
        .collect();
    covers.sort_unstable();
    covers.dedup();
    for cover in covers {
        stack.push(cover);
        dfs_chains(chains, stack, full, closure);
        stack.pop();
    }
}

/// Index of the full-rank sublattice of Z^n spanned by the given integer
/// vectors, via the Smith normal form.
pub fn lattice_index(generators: &[Vec<i64>]) -> Result<u64> {
    let n = generators.first().map_or(0, Vec::len);
    if generators.len() < n {
        return Err(Error::NotFullRank);
    }
    // Rows indexed by coordinates, columns by generators.
    let matrix: Vec<Vec<i128>> = (0..n)
        .map(|row| generators.iter().map(|g| g[row] as i128).collect())
        .collect();
    let diag = linalg::smith_diagonal(&matrix);
    let mut product = 1u64;
    for d in diag {
        if d == 0 {
            return Err(Error::NotFullRank);
        }
        product *= u64::try_from(d).expect("smith diagonal entries are positive");
    }
    Ok(product)
}

/// A seeded random shift vector, resampled on detected degeneracy.
#[derive(Debug, Clone)]
pub struct GenericShift {
    pub seed: u64,
    /// How many resamples to attempt before giving up.
    pub retries: u32,
}

impl Default for GenericShift {
    fn default() -> Self {
        Self { seed: 1, retries: 32 }
    }
}

impl GenericShift {
    pub fn new(seed: u64) -> Self {
        Self { seed, retries: 32 }
    }

    /// Draw one shift vector: each component is a ratio of independent
    /// uniform integers in [1, 2^31) with a random sign.
    fn draw(&self, rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
        (0..n)
            .map(|_| {
                let p: i64 = rng.gen_range(1..1i64 << 31);
                let q: i64 = rng.gen_range(1..1i64 << 31);
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                BigRational::new((sign * p).into(), q.into())
            })
            .collect()
    }
}

/// Result of one oracle evaluation, with the per-point multiplicities.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub value: BigUint,
    pub multiplicities: Vec<u64>,
    pub resamples: u32,
}

/// Evaluate the flip product by stable intersection with a generic shift.
///
/// Requires both matroids loopless and r(M) + r(N) = |E| + 1; outside that
/// regime the rank gates decide the product directly and the oracle refuses
/// to run.
pub fn oracle_flip(
    m: &Matroid,
    n: &Matroid,
    epsilon: usize,
    shift: &GenericShift,
) -> Result<FlipValue> {
    oracle_flip_detailed(m, n, epsilon, shift).map(|o| FlipValue::Finite(o.value))
}

/// As [`oracle_flip`], also reporting multiplicities and resample count.
pub fn oracle_flip_detailed(
    m: &Matroid,
    n: &Matroid,
    epsilon: usize,
    shift: &GenericShift,
) -> Result<OracleOutcome> {
    let size = m.n();
    if n.n() != size {
        return Err(Error::GroundSetMismatch { left: size, right: n.n() });
    }
    if epsilon >= size {
        return Err(Error::IndexOutOfRange { index: epsilon, n: size });
    }
    if m.has_loop() || n.has_loop() {
        return Err(Error::HasLoop);
    }
    if m.rank() + n.rank() != size + 1 {
        return Err(Error::RankRegimeUnsupported);
    }

    let chains_m = maximal_chains(m)?;
    let chains_n = maximal_chains(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(shift.seed);

    'attempt: for attempt in 0..=shift.retries {
        let w = shift.draw(&mut rng, size);
        let mut total = BigUint::zero();
        let mut multiplicities = Vec::new();
        let mut points: Vec<Vec<BigRational>> = Vec::new();

        for c1 in &chains_m {
            for c2 in &chains_n {
                if !layers_connected(c1, c2, size) {
                    // The cone spans do not fill R^n; this pair contributes
                    // nothing for any shift.
                    continue;
                }
                let solution = solve_cone_pair(c1, c2, &w, epsilon, size)
                    .expect("connected layer graph implies a nonsingular system");
                let rays1 = c1.rays();
                let rays2 = c2.rays();
                let a = &solution[..rays1.len()];
                let t = &solution[rays1.len()];
                let b = &solution[rays1.len() + 1..rays1.len() + 1 + rays2.len()];
                if a.iter().chain(b.iter()).any(BigRational::is_zero) {
                    // Boundary-touching solution: w is not generic enough.
                    continue 'attempt;
                }
                if !a.iter().chain(b.iter()).all(BigRational::is_positive) {
                    continue; // outside the cones; not an intersection point
                }
                let point: Vec<BigRational> = (0..size)
                    .map(|e| {
                        let mut x = t.clone();
                        for (coeff, &flat) in a.iter().zip(rays1) {
                            if mask::contains(flat, e) {
                                x += coeff;
                            }
                        }
                        x
                    })
                    .collect();
                if points.contains(&point) {
                    continue 'attempt; // coincident intersection points
                }
                points.push(point);

                let full = mask::full(size);
                let mut generators: Vec<Vec<i64>> = Vec::new();
                for &flat in rays1.iter().chain(rays2.iter()) {
                    generators.push(indicator(flat, size));
                }
                generators.push(indicator(full, size));
                generators.push(indicator(full, size));
                let index = lattice_index(&generators)?;
                multiplicities.push(index);
                total += index;
            }
        }
        // Cross-check: the count of accepted points matches the list.
        debug_assert_eq!(points.len(), multiplicities.len());
        let _ = attempt;
        return Ok(OracleOutcome {
            value: total,
            multiplicities,
            resamples: attempt,
        });
    }
    Err(Error::DegeneracyRetriesExhausted { retries: shift.retries })
}

fn indicator(s: Mask, n: usize) -> Vec<i64> {
    (0..n).map(|e| i64::from(mask::contains(s, e))).collect()
}

/// The 0/1 columns of a cone pair span R^n exactly when the bipartite graph
/// joining overlapping chain layers is connected.
fn layers_connected(c1: &ChainCone, c2: &ChainCone, size: usize) -> bool {
    let layers1 = c1.layers();
    let layers2 = c2.layers();
    let offset = layers1.len();
    let mut dsu = Dsu::new(offset + layers2.len());
    for e in 0..size {
        let i = layers1.iter().position(|&l| mask::contains(l, e)).expect("layers cover E");
        let j = layers2.iter().position(|&l| mask::contains(l, e)).expect("layers cover E");
        dsu.union(i, offset + j);
    }
    let total = offset + layers2.len();
    (0..total).filter(|&v| dsu.find(v) == v).count() == 1
}

/// Solve for `x = sum a_i chi_{F_i} + t 1` and `w - x = sum b_j chi_{G_j} +
/// s 1` with `x_epsilon = 0`. Unknowns are ordered a.., t, b.., s.
fn solve_cone_pair(
    c1: &ChainCone,
    c2: &ChainCone,
    w: &[BigRational],
    epsilon: usize,
    size: usize,
) -> Option<Vec<BigRational>> {
    let rays1 = c1.rays();
    let rays2 = c2.rays();
    let unknowns = rays1.len() + rays2.len() + 2;
    debug_assert_eq!(unknowns, size + 1);
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());

    let mut matrix = Vec::with_capacity(size + 1);
    let mut rhs = Vec::with_capacity(size + 1);
    for e in 0..size {
        let mut row = Vec::with_capacity(unknowns);
        for &f in rays1 {
            row.push(if mask::contains(f, e) { one.clone() } else { zero.clone() });
        }
        row.push(one.clone()); // t
        for &g in rays2 {
            row.push(if mask::contains(g, e) { one.clone() } else { zero.clone() });
        }
        row.push(one.clone()); // s
        matrix.push(row);
        rhs.push(w[e].clone());
    }
    // x_epsilon = 0.
    let mut row = Vec::with_capacity(unknowns);
    for &f in rays1 {
        row.push(if mask::contains(f, epsilon) { one.clone() } else { zero.clone() });
    }
    row.push(one.clone()); // t
    row.extend(std::iter::repeat_with(|| zero.clone()).take(rays2.len() + 1));
    matrix.push(row);
    rhs.push(zero);

    linalg::solve_rational(&matrix, &rhs)
}
