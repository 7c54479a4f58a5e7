//! Matroids as explicit basis families over a small ground set.
//!
//! Every constructor normalizes to the same representation: a sorted list of
//! basis bitmasks over elements `0..n`. Minor operations re-index the ground
//! set so that equal matroids have bit-identical basis lists, which is what
//! the memoization keys rely on.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::mask::{self, Mask};
use crate::matrix::{Orientation, PrimeFieldMatrix, RationalMatrix};

/// Hard cap on ground set size: subset sweeps and the flip recursion are
/// exponential in `n`.
pub const MAX_GROUND: usize = 24;

/// The indexed ground set `{0, .., n-1}` of a matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::SizeCapExceeded { n, cap: MAX_GROUND });
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn full_mask(&self) -> Mask {
        mask::full(self.n)
    }

    #[inline]
    pub fn contains_subset(&self, s: Mask) -> bool {
        s & !self.full_mask() == 0
    }
}

/// A matroid, stored as its full family of bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    ground: GroundSet,
    rank: usize,
    bases: Vec<Mask>,
}

impl Matroid {
    /// Build a matroid from an explicit basis family, verifying the basis
    /// exchange axiom by brute force.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        let _ = GroundSet::new(n)?;
        let mut masks = Vec::with_capacity(bases.len());
        for b in bases {
            for &i in b {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
            }
            let m = mask::from_indices(b, n).ok_or(Error::SubsetOutOfRange)?;
            if mask::count(m) != b.len() {
                // Repeated indices inside one basis.
                return Err(Error::InvalidDescriptor("repeated element in a basis".into()));
            }
            masks.push(m);
        }
        Self::from_base_masks(n, masks)
    }

    /// Same as [`Matroid::from_bases`], taking bitmasks directly.
    pub fn from_base_masks(n: usize, mut masks: Vec<Mask>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        masks.sort_unstable();
        masks.dedup();
        if masks.is_empty() {
            return Err(Error::InvalidDescriptor("basis family must be nonempty".into()));
        }
        let rank = mask::count(masks[0]);
        if masks.iter().any(|&m| mask::count(m) != rank) {
            return Err(Error::UnequalBasisSizes);
        }
        if !exchange_axiom_holds(&masks) {
            return Err(Error::ExchangeAxiomViolated);
        }
        Ok(Self { ground, rank, bases: masks })
    }

    /// Internal constructor for families known to satisfy the exchange axiom.
    pub(crate) fn from_base_masks_unchecked(n: usize, mut masks: Vec<Mask>) -> Self {
        masks.sort_unstable();
        masks.dedup();
        debug_assert!(!masks.is_empty());
        debug_assert!(n <= MAX_GROUND);
        let rank = mask::count(masks[0]);
        debug_assert!(masks.iter().all(|&m| mask::count(m) == rank));
        debug_assert!(exchange_axiom_holds(&masks), "exchange axiom violated");
        Self { ground: GroundSet { n }, rank, bases: masks }
    }

    /// The uniform matroid U_{n,r}: all r-subsets are bases.
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        let _ = GroundSet::new(n)?;
        if r > n {
            return Err(Error::RankOutOfRange { r, n });
        }
        let masks: Vec<Mask> = mask::combinations(n, r).collect();
        Ok(Self::from_base_masks_unchecked(n, masks))
    }

    /// Graphic matroid of a multigraph: one element per edge, bases are the
    /// maximal spanning forests.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let n = edges.len();
        let _ = GroundSet::new(n)?;
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::IndexOutOfRange { index: u.max(v), n: vertices });
            }
        }
        let rank = vertices - graph_components(vertices, edges, mask::full(n));
        let masks: Vec<Mask> = mask::combinations(n, rank)
            .filter(|&f| is_forest(vertices, edges, f))
            .collect();
        Ok(Self::from_base_masks_unchecked(n, masks))
    }

    /// Matroid of a rational matrix; elements are rows or columns, and
    /// independence is linear independence over Q.
    pub fn from_rational_matrix(m: &RationalMatrix, orientation: Orientation) -> Result<Self> {
        let rows = m.element_rows(orientation);
        let n = rows.len();
        let _ = GroundSet::new(n)?;
        let rank_of = |s: Mask| {
            let sel: Vec<&Vec<_>> = mask::bits(s).map(|i| &rows[i]).collect();
            RationalMatrix::row_rank(&sel)
        };
        Self::from_rank_oracle(n, rank_of)
    }

    /// Matroid of a matrix over F_p.
    pub fn from_prime_field_matrix(m: &PrimeFieldMatrix, orientation: Orientation) -> Result<Self> {
        let rows = m.element_rows(orientation);
        let p = m.p();
        let n = rows.len();
        let _ = GroundSet::new(n)?;
        let rank_of = |s: Mask| {
            let sel: Vec<&Vec<u64>> = mask::bits(s).map(|i| &rows[i]).collect();
            PrimeFieldMatrix::row_rank(&sel, p)
        };
        Self::from_rank_oracle(n, rank_of)
    }

    /// Build the basis family by querying a rank oracle on all r-subsets.
    pub(crate) fn from_rank_oracle(n: usize, rank_of: impl Fn(Mask) -> usize) -> Result<Self> {
        let _ = GroundSet::new(n)?;
        let rank = rank_of(mask::full(n));
        let masks: Vec<Mask> = mask::combinations(n, rank)
            .filter(|&s| rank_of(s) == rank)
            .collect();
        Ok(Self::from_base_masks_unchecked(n, masks))
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.ground.n
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn bases(&self) -> &[Mask] {
        &self.bases
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, s: Mask) -> usize {
        debug_assert!(self.ground.contains_subset(s));
        self.bases
            .iter()
            .map(|&b| mask::count(b & s))
            .max()
            .unwrap_or(0)
    }

    pub fn is_independent(&self, s: Mask) -> bool {
        self.rank_of(s) == mask::count(s)
    }

    /// Elements contained in no basis.
    pub fn loops(&self) -> Mask {
        let union = self.bases.iter().fold(0, |acc, &b| acc | b);
        self.ground.full_mask() & !union
    }

    pub fn is_loop(&self, e: usize) -> bool {
        mask::contains(self.loops(), e)
    }

    /// Elements contained in every basis.
    pub fn coloops(&self) -> Mask {
        self.bases.iter().fold(self.ground.full_mask(), |acc, &b| acc & b)
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        mask::contains(self.coloops(), e)
    }

    pub fn has_loop(&self) -> bool {
        self.loops() != 0
    }

    /// No loops and no two-element circuits.
    pub fn is_simple(&self) -> bool {
        if self.has_loop() {
            return false;
        }
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.rank_of(mask::bit(i) | mask::bit(j)) < 2 {
                    return false;
                }
            }
        }
        true
    }

    /// All circuits: inclusion-minimal dependent sets. Circuits have at most
    /// rank + 1 elements, so only subsets up to that size are scanned.
    pub fn circuits(&self) -> Vec<Mask> {
        let mut circuits = Vec::new();
        for size in 1..=(self.rank + 1).min(self.n()) {
            for s in mask::combinations(self.n(), size) {
                if self.rank_of(s) < size
                    && mask::bits(s).all(|e| self.is_independent(s & !mask::bit(e)))
                {
                    circuits.push(s);
                }
            }
        }
        circuits
    }

    /// Closure of a set: all elements whose addition does not raise the rank.
    pub fn closure(&self, s: Mask) -> Mask {
        let r = self.rank_of(s);
        let mut cl = s;
        for e in 0..self.n() {
            if !mask::contains(s, e) && self.rank_of(s | mask::bit(e)) == r {
                cl |= mask::bit(e);
            }
        }
        cl
    }

    pub fn is_flat(&self, s: Mask) -> bool {
        self.closure(s) == s
    }

    /// Delete the elements of `s`, re-indexing the survivors to `0..n-|s|`
    /// in order. The second value maps new indices to old ones.
    pub fn delete(&self, s: Mask) -> Result<(Matroid, Vec<usize>)> {
        self.minor(s, false)
    }

    /// Contract the elements of `s`, with the same re-indexing convention as
    /// [`Matroid::delete`].
    pub fn contract(&self, s: Mask) -> Result<(Matroid, Vec<usize>)> {
        self.minor(s, true)
    }

    fn minor(&self, s: Mask, contract: bool) -> Result<(Matroid, Vec<usize>)> {
        if !self.ground.contains_subset(s) {
            return Err(Error::SubsetOutOfRange);
        }
        let survivors: Vec<usize> = (0..self.n()).filter(|&e| !mask::contains(s, e)).collect();
        let new_n = survivors.len();
        let mut position = vec![usize::MAX; self.n()];
        for (new, &old) in survivors.iter().enumerate() {
            position[old] = new;
        }

        let mut best: Vec<Mask> = Vec::new();
        let mut best_size = if contract { usize::MAX } else { 0 };
        for &b in &self.bases {
            let rest = b & !s;
            let size = mask::count(rest);
            let better = if contract { size < best_size } else { size > best_size };
            if better {
                best.clear();
                best_size = size;
            }
            if size == best_size {
                let compact = mask::bits(rest).fold(0, |acc, e| acc | mask::bit(position[e]));
                best.push(compact);
            }
        }
        Ok((Matroid::from_base_masks_unchecked(new_n, best), survivors))
    }

    /// Dual matroid: bases are the complements of bases.
    pub fn dual(&self) -> Matroid {
        let full = self.ground.full_mask();
        let masks: Vec<Mask> = self.bases.iter().map(|&b| full & !b).collect();
        Matroid::from_base_masks_unchecked(self.n(), masks)
    }

    /// Direct sum: ground sets are concatenated, bases are unions of one
    /// basis from each side.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n() + other.n();
        let _ = GroundSet::new(n)?;
        let mut masks = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                masks.push(a | (b << self.n()));
            }
        }
        Ok(Matroid::from_base_masks_unchecked(n, masks))
    }

    /// Truncation to rank k: bases are the independent sets of size k.
    pub fn truncation(&self, k: usize) -> Result<Matroid> {
        if k > self.rank {
            return Err(Error::RankOutOfRange { r: k, n: self.n() });
        }
        let mut masks: HashSet<Mask> = HashSet::new();
        for &b in &self.bases {
            for sub in subsets_of_size(b, k) {
                masks.insert(sub);
            }
        }
        Ok(Matroid::from_base_masks_unchecked(self.n(), masks.into_iter().collect()))
    }

    /// Relax a circuit-hyperplane `x`: add it to the basis family.
    pub fn circuit_hyperplane_relax(&self, x: Mask) -> Result<Matroid> {
        if !self.ground.contains_subset(x) {
            return Err(Error::SubsetOutOfRange);
        }
        let is_circuit = self.rank_of(x) < mask::count(x)
            && mask::bits(x).all(|e| self.is_independent(x & !mask::bit(e)));
        let is_hyperplane = self.rank > 0 && self.rank_of(x) == self.rank - 1 && self.is_flat(x);
        if !is_circuit || !is_hyperplane {
            return Err(Error::NotCircuitHyperplane);
        }
        let mut masks = self.bases.clone();
        masks.push(x);
        Ok(Matroid::from_base_masks_unchecked(self.n(), masks))
    }

    /// Relabel the ground set by a permutation: element `i` becomes
    /// `perm[i]`.
    pub fn apply_permutation(&self, perm: &[usize]) -> Matroid {
        debug_assert_eq!(perm.len(), self.n());
        let masks: Vec<Mask> = self
            .bases
            .iter()
            .map(|&b| mask::bits(b).fold(0, |acc, e| acc | mask::bit(perm[e])))
            .collect();
        Matroid::from_base_masks_unchecked(self.n(), masks)
    }

    /// Deterministic byte key: ground size followed by the sorted basis
    /// masks. Equal matroids give equal keys.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(5 + 4 * self.bases.len());
        out.push(self.n() as u8);
        out.extend_from_slice(&(self.bases.len() as u32).to_le_bytes());
        for &b in &self.bases {
            out.extend_from_slice(&b.to_le_bytes());
        }
        out
    }

    /// Key that is invariant under ground set relabeling: the
    /// lexicographically minimal [`Matroid::canonical_key`] over all n!
    /// permutations. Guarded to n <= 9.
    pub fn iso_canonical_key(&self) -> Result<Vec<u8>> {
        if self.n() > 9 {
            return Err(Error::SizeCapExceeded { n: self.n(), cap: 9 });
        }
        let mut best: Option<Vec<u8>> = None;
        for perm in permutations(self.n()) {
            let key = self.apply_permutation(&perm).canonical_key();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        Ok(best.unwrap_or_else(|| self.canonical_key()))
    }

    /// Brute-force exchange axiom verification, exposed for tests and for
    /// validating externally supplied families.
    pub fn verify_exchange_axiom(&self) -> bool {
        exchange_axiom_holds(&self.bases)
    }
}

/// Symmetric memo key for a pair: each side's key, smaller one first.
pub fn pair_key(m: &Matroid, n: &Matroid) -> Vec<u8> {
    let a = m.canonical_key();
    let b = n.canonical_key();
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut out = lo;
    out.extend_from_slice(&hi);
    out
}

/// Pair key invariant under simultaneous relabeling of both matroids (and
/// under swapping the pair). Guarded to n <= 9.
pub fn iso_pair_key(m: &Matroid, n: &Matroid) -> Result<Vec<u8>> {
    if m.n() > 9 {
        return Err(Error::SizeCapExceeded { n: m.n(), cap: 9 });
    }
    let mut best: Option<Vec<u8>> = None;
    for perm in permutations(m.n()) {
        let pm = m.apply_permutation(&perm);
        let pn = n.apply_permutation(&perm);
        for (a, b) in [(&pm, &pn), (&pn, &pm)] {
            let mut key = a.canonical_key();
            key.extend_from_slice(&b.canonical_key());
            if best.as_ref().is_none_or(|cur| key < *cur) {
                best = Some(key);
            }
        }
    }
    Ok(best.expect("at least the identity permutation"))
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next_permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

fn exchange_axiom_holds(bases: &[Mask]) -> bool {
    let set: HashSet<Mask> = bases.iter().copied().collect();
    for &b1 in bases {
        for &b2 in bases {
            if b1 == b2 {
                continue;
            }
            for x in mask::bits(b1 & !b2) {
                let stripped = b1 & !mask::bit(x);
                let fixable = mask::bits(b2 & !b1).any(|y| set.contains(&(stripped | mask::bit(y))));
                if !fixable {
                    return false;
                }
            }
        }
    }
    true
}

fn subsets_of_size(set: Mask, k: usize) -> Vec<Mask> {
    let elements = mask::to_indices(set);
    if k > elements.len() {
        return Vec::new();
    }
    mask::combinations(elements.len(), k)
        .map(|local| mask::bits(local).fold(0, |acc, i| acc | mask::bit(elements[i])))
        .collect()
}

fn graph_components(vertices: usize, edges: &[(usize, usize)], subset: Mask) -> usize {
    let mut dsu = Dsu::new(vertices);
    for e in mask::bits(subset) {
        let (u, v) = edges[e];
        dsu.union(u, v);
    }
    (0..vertices).filter(|&v| dsu.find(v) == v).count()
}

fn is_forest(vertices: usize, edges: &[(usize, usize)], subset: Mask) -> bool {
    let mut dsu = Dsu::new(vertices);
    for e in mask::bits(subset) {
        let (u, v) = edges[e];
        if !dsu.union(u, v) {
            return false;
        }
    }
    true
}

/// Small union-find used for graph ranks and separator detection.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when both endpoints were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize, r: usize) -> Matroid {
        Matroid::uniform(n, r).unwrap()
    }

    #[test]
    fn from_bases_accepts_uniform() {
        let m = Matroid::from_bases(3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        assert_eq!(m, u(3, 2));
        let single = Matroid::from_bases(1, &[vec![0]]).unwrap();
        assert_eq!(single, u(1, 1));
    }

    #[test]
    fn from_bases_rejects_bad_families() {
        // No equal-cardinality family on 3 elements violates exchange (an
        // exhaustive scan confirms this), so the smallest violation lives on
        // 4 elements: two disjoint pairs with no exchange partner.
        assert_eq!(
            Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]]),
            Err(Error::ExchangeAxiomViolated)
        );
        assert_eq!(
            Matroid::from_bases(2, &[vec![0], vec![0, 1]]),
            Err(Error::UnequalBasisSizes)
        );
        assert!(matches!(
            Matroid::from_bases(2, &[vec![0, 5]]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn every_equal_size_family_on_three_elements_is_a_matroid() {
        // Documents why the exchange-violation example above needs n = 4.
        for size in 1..=3usize {
            let candidates: Vec<Mask> = mask::combinations(3, size).collect();
            for family in mask::subsets_of(mask::full(candidates.len())) {
                if family == 0 {
                    continue;
                }
                let masks: Vec<Mask> = mask::bits(family).map(|i| candidates[i]).collect();
                assert!(exchange_axiom_holds(&masks), "family {masks:?}");
            }
        }
    }

    #[test]
    fn matrix_constructors() {
        use crate::matrix::{Orientation, RationalMatrix};
        let identity = RationalMatrix::from_i64(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ])
        .unwrap();
        assert_eq!(
            Matroid::from_rational_matrix(&identity, Orientation::Rows).unwrap(),
            u(3, 3)
        );
        let ones = RationalMatrix::from_i64(&[vec![1], vec![1], vec![1]]).unwrap();
        assert_eq!(
            Matroid::from_rational_matrix(&ones, Orientation::Rows).unwrap(),
            u(3, 1)
        );
    }

    #[test]
    fn graphic_triangle_is_uniform() {
        let k3 = Matroid::graphic(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(k3, u(3, 2));
    }

    #[test]
    fn graphic_loop_edge() {
        let m = Matroid::graphic(1, &[(0, 0)]).unwrap();
        assert_eq!(m.rank(), 0);
        assert_eq!(m.loops(), 0b1);
    }

    #[test]
    fn fig1_graph_rank_and_k4_subset() {
        // K4 on {0,1,2,3} glued to a 4-cycle through vertices 1,4,5,2.
        let edges = [
            (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
            (1, 4), (4, 5), (5, 2),
        ];
        let m = Matroid::graphic(6, &edges).unwrap();
        assert_eq!(m.rank(), 5);
        assert_eq!(m.rank_of(0b111111), 3);
    }

    #[test]
    fn minors_and_duality() {
        assert_eq!(u(3, 2).delete(0b001).unwrap().0, u(2, 2));
        assert_eq!(u(3, 2).contract(0b001).unwrap().0, u(2, 1));
        assert_eq!(u(5, 3).dual(), u(5, 2));
        let (_, map) = u(4, 2).delete(0b0101).unwrap();
        assert_eq!(map, vec![1, 3]);
    }

    #[test]
    fn deletion_contraction_duality_exhaustive_small() {
        // (M / S)* = M* \ S for every subset of a few matroids.
        let k3 = Matroid::graphic(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let ms = [u(4, 2), u(5, 3), k3];
        for m in &ms {
            for s in mask::subsets_of(m.ground().full_mask()) {
                let lhs = m.contract(s).unwrap().0.dual();
                let rhs = m.dual().delete(s).unwrap().0;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rank_function_examples() {
        assert_eq!(u(3, 2).rank_of(0b001), 1);
        assert_eq!(u(3, 2).rank_of(0), 0);
        assert_eq!(u(3, 2).rank_of(0b111), 2);
    }

    #[test]
    fn loops_coloops_circuits() {
        assert!(u(1, 1).is_coloop(0));
        assert_eq!(u(3, 2).circuits(), vec![0b111]);
        let with_loop = Matroid::graphic(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(with_loop.loops(), 0b10);
        assert!(!with_loop.is_simple());
        assert!(u(4, 2).is_simple());
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(u(5, 3).truncation(2).unwrap(), u(5, 2));
        let m = u(4, 3);
        assert_eq!(m.truncation(3).unwrap(), m);
        let k3 = Matroid::graphic(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(k3.truncation(1).unwrap(), u(3, 1));
    }

    #[test]
    fn relaxation_examples() {
        // Parallel pair {1,2} with coloop 0: {1,2} is a circuit and a flat of
        // rank 1, so relaxing it gives the uniform matroid.
        let m = Matroid::from_bases(3, &[vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(m.circuit_hyperplane_relax(0b110).unwrap(), u(3, 2));
        // Relaxing a K4 triangle is legal (it is a circuit-hyperplane) and
        // adds exactly one basis; rank is unchanged. The triangle on
        // vertices {0,1,2} uses edges (0,1), (0,2), (1,2) = indices 0, 1, 3.
        let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let triangle: Mask = 0b001011;
        assert_eq!(k4.rank_of(triangle), 2);
        assert!(k4.is_flat(triangle));
        let relaxed = k4.circuit_hyperplane_relax(triangle).unwrap();
        assert_eq!(relaxed.rank(), k4.rank());
        assert_eq!(relaxed.bases().len(), k4.bases().len() + 1);
        // The full ground set of a uniform matroid is a circuit but not a
        // hyperplane.
        assert_eq!(u(3, 2).circuit_hyperplane_relax(0b111), Err(Error::NotCircuitHyperplane));
    }

    #[test]
    fn canonical_keys() {
        assert_eq!(u(3, 2).canonical_key(), u(3, 2).canonical_key());
        let k3 = Matroid::graphic(3, &[(1, 2), (0, 2), (0, 1)]).unwrap();
        assert_eq!(
            k3.iso_canonical_key().unwrap(),
            u(3, 2).iso_canonical_key().unwrap()
        );
        // Default-mode keys of isomorphic but differently labeled matroids
        // may differ.
        let a = Matroid::from_bases(2, &[vec![0]]).unwrap();
        let b = Matroid::from_bases(2, &[vec![1]]).unwrap();
        assert_ne!(a.canonical_key(), b.canonical_key());
        assert_eq!(pair_key(&a, &b), pair_key(&b, &a));
        assert_eq!(
            iso_pair_key(&a, &b).unwrap(),
            iso_pair_key(&b, &a).unwrap()
        );
    }

    #[test]
    fn direct_sum_concatenates() {
        let m = u(1, 1).direct_sum(&u(2, 1)).unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.bases(), &[0b011, 0b101]);
    }

    #[test]
    fn double_dual_and_rank_submodularity() {
        let k3 = Matroid::graphic(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        for m in [u(5, 2), u(4, 4), k3] {
            assert_eq!(m.dual().dual(), m);
            let full = m.ground().full_mask();
            for s in mask::subsets_of(full) {
                for t in mask::subsets_of(full) {
                    let sub = m.rank_of(s) + m.rank_of(t);
                    assert!(m.rank_of(s | t) + m.rank_of(s & t) <= sub);
                    if t & !s == 0 {
                        assert!(m.rank_of(t) <= m.rank_of(s));
                    }
                }
            }
        }
    }
}
