//! Gain graphs over Z_k and Z^k, their matroids via combinatorial rank
//! formulas, minimal-rigidity predicates, and realisation numbers.
//!
//! The matroids are built from the rank formulas
//! `r(F) = |V[F]| - #(balanced components)` for Z_k and
//! `r(F) = sum_i (|V[F_i]| - 1 + latticerank(F_i))` for Z^k, avoiding any
//! cyclotomic or integer-matrix arithmetic. Gain-level deletion and
//! contraction are provided as printed, but contraction is always
//! cross-validated against matroid-level contraction and reports a
//! mismatch instead of trusting the rule.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::flip::{FlipEngine, FlipValue};
use crate::mask::{self, Mask};
use crate::matroid::Matroid;

/// The gain group: the cyclic group Z_k or the lattice Z^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainGroup {
    Zk { k: u64 },
    Lattice { d: usize },
}

impl GainGroup {
    fn validate(&self) -> Result<()> {
        match *self {
            GainGroup::Zk { k } if k >= 2 => Ok(()),
            GainGroup::Lattice { d } if d == 1 || d == 2 => Ok(()),
            _ => Err(Error::WrongGroup),
        }
    }

    pub fn zero(&self) -> Gain {
        match *self {
            GainGroup::Zk { .. } => Gain::Zk(0),
            GainGroup::Lattice { d } => Gain::Lattice(vec![0; d]),
        }
    }

    pub fn add(&self, a: &Gain, b: &Gain) -> Gain {
        match (self, a, b) {
            (GainGroup::Zk { k }, Gain::Zk(x), Gain::Zk(y)) => Gain::Zk((x + y) % k),
            (GainGroup::Lattice { .. }, Gain::Lattice(x), Gain::Lattice(y)) => {
                Gain::Lattice(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            _ => panic!("gain does not match group"),
        }
    }

    pub fn neg(&self, a: &Gain) -> Gain {
        match (self, a) {
            (GainGroup::Zk { k }, Gain::Zk(x)) => Gain::Zk((k - x % k) % k),
            (GainGroup::Lattice { .. }, Gain::Lattice(v)) => {
                Gain::Lattice(v.iter().map(|x| -x).collect())
            }
            _ => panic!("gain does not match group"),
        }
    }

    pub fn sub(&self, a: &Gain, b: &Gain) -> Gain {
        self.add(a, &self.neg(b))
    }

    pub fn is_zero_gain(&self, a: &Gain) -> bool {
        match a {
            Gain::Zk(x) => *x == 0,
            Gain::Lattice(v) => v.iter().all(|&x| x == 0),
        }
    }

    fn normalize(&self, a: Gain) -> Gain {
        match (self, a) {
            (GainGroup::Zk { k }, Gain::Zk(x)) => Gain::Zk(x % k),
            (_, g) => g,
        }
    }
}

/// A group element: a residue mod k, or an integer vector of length d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gain {
    Zk(u64),
    Lattice(Vec<i64>),
}

impl Gain {
    fn conforms(&self, group: &GainGroup) -> bool {
        match (self, group) {
            (Gain::Zk(_), GainGroup::Zk { .. }) => true,
            (Gain::Lattice(v), GainGroup::Lattice { d }) => v.len() == *d,
            _ => false,
        }
    }
}

/// An oriented gained edge. The reverse orientation of a non-loop carries
/// the negated gain; loops use the stored orientation as canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainEdge {
    pub from: usize,
    pub to: usize,
    pub gain: Gain,
}

impl GainEdge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

/// A gain multigraph; edge ids are positions in the edge list, matching the
/// ground set of the associated matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainGraph {
    group: GainGroup,
    vertices: usize,
    edges: Vec<GainEdge>,
}

impl GainGraph {
    pub fn new(group: GainGroup, vertices: usize, edges: Vec<(usize, usize, Gain)>) -> Result<Self> {
        group.validate()?;
        let mut out = Vec::with_capacity(edges.len());
        for (from, to, gain) in edges {
            if from >= vertices || to >= vertices {
                return Err(Error::IndexOutOfRange { index: from.max(to), n: vertices });
            }
            if !gain.conforms(&group) {
                return Err(Error::WrongGroup);
            }
            out.push(GainEdge { from, to, gain: group.normalize(gain) });
        }
        Ok(Self { group, vertices, edges: out })
    }

    pub fn group(&self) -> GainGroup {
        self.group
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[GainEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Mask of the full edge set.
    pub fn full_edge_mask(&self) -> Mask {
        mask::full(self.edges.len())
    }

    /// Gain of edge `e` oriented away from `src`.
    pub fn gain_from(&self, e: usize, src: usize) -> Result<Gain> {
        let edge = self.edges.get(e).ok_or(Error::EdgeNotFound { edge: e })?;
        if edge.from == src {
            Ok(edge.gain.clone())
        } else if edge.to == src {
            Ok(self.group.neg(&edge.gain))
        } else {
            Err(Error::IndexOutOfRange { index: src, n: self.vertices })
        }
    }

    /// The two gain-graph conditions: parallel edges carry distinct gains
    /// and loop gains are nonzero. Multigraphs may violate both.
    pub fn is_proper_gain_graph(&self) -> bool {
        for (i, a) in self.edges.iter().enumerate() {
            if a.is_loop() && self.group.is_zero_gain(&a.gain) {
                return false;
            }
            for b in &self.edges[i + 1..] {
                if a.is_loop() != b.is_loop() {
                    continue;
                }
                if a.is_loop() {
                    if a.from == b.from && a.gain == b.gain {
                        return false;
                    }
                    continue;
                }
                let same = a.from == b.from && a.to == b.to;
                let reversed = a.from == b.to && a.to == b.from;
                if same && a.gain == b.gain {
                    return false;
                }
                if reversed && a.gain == self.group.neg(&b.gain) {
                    return false;
                }
            }
        }
        true
    }

    /// Switching at a vertex: out-edges gain `gamma`, in-edges lose it,
    /// loops and non-incident edges are untouched. Switching never changes
    /// the associated matroid.
    pub fn switch(&self, v: usize, gamma: &Gain) -> Result<GainGraph> {
        if v >= self.vertices {
            return Err(Error::IndexOutOfRange { index: v, n: self.vertices });
        }
        if !gamma.conforms(&self.group) {
            return Err(Error::WrongGroup);
        }
        let mut out = self.clone();
        for edge in &mut out.edges {
            if edge.is_loop() {
                continue;
            }
            if edge.from == v {
                edge.gain = self.group.add(&edge.gain, gamma);
            } else if edge.to == v {
                edge.gain = self.group.sub(&edge.gain, gamma);
            }
        }
        Ok(out)
    }

    fn touched_vertices(&self, f: Mask) -> Vec<usize> {
        let mut seen = vec![false; self.vertices];
        for e in mask::bits(f) {
            seen[self.edges[e].from] = true;
            seen[self.edges[e].to] = true;
        }
        (0..self.vertices).filter(|&v| seen[v]).collect()
    }

    /// Per connected component of the induced subgraph: vertex count and the
    /// gains of all fundamental cycles (via spanning-tree potentials; loops
    /// contribute their stored gain).
    fn component_cycles(&self, f: Mask) -> Vec<(usize, Vec<Gain>)> {
        let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut loops_at: HashMap<usize, Vec<usize>> = HashMap::new();
        for e in mask::bits(f) {
            let edge = &self.edges[e];
            if edge.is_loop() {
                loops_at.entry(edge.from).or_default().push(e);
            } else {
                incident.entry(edge.from).or_default().push(e);
                incident.entry(edge.to).or_default().push(e);
            }
        }

        let mut potential: HashMap<usize, Gain> = HashMap::new();
        let mut components = Vec::new();
        for &root in &self.touched_vertices(f) {
            if potential.contains_key(&root) {
                continue;
            }
            potential.insert(root, self.group.zero());
            let mut comp_vertices = vec![root];
            let mut tree: HashSet<usize> = HashSet::new();
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &e in incident.get(&u).into_iter().flatten() {
                    let edge = &self.edges[e];
                    let other = if edge.from == u { edge.to } else { edge.from };
                    if !potential.contains_key(&other) {
                        let p = self
                            .group
                            .add(&potential[&u], &self.gain_from(e, u).expect("incident edge"));
                        potential.insert(other, p);
                        tree.insert(e);
                        comp_vertices.push(other);
                        queue.push_back(other);
                    }
                }
            }

            let in_comp: HashSet<usize> = comp_vertices.iter().copied().collect();
            let mut cycles = Vec::new();
            for &v in &comp_vertices {
                for &e in loops_at.get(&v).into_iter().flatten() {
                    cycles.push(self.edges[e].gain.clone());
                }
            }
            for e in mask::bits(f) {
                let edge = &self.edges[e];
                if edge.is_loop() || tree.contains(&e) || !in_comp.contains(&edge.from) {
                    continue;
                }
                // Fundamental cycle: root -> from, the edge, then to -> root.
                let path = self.group.sub(&potential[&edge.from], &potential[&edge.to]);
                cycles.push(self.group.add(&edge.gain, &path));
            }
            components.push((comp_vertices.len(), cycles));
        }
        components
    }

    /// Whether every cycle inside the edge subset has gain zero.
    pub fn is_balanced(&self, f: Mask) -> bool {
        self.component_cycles(f)
            .iter()
            .all(|(_, cycles)| cycles.iter().all(|g| self.group.is_zero_gain(g)))
    }

    /// Z_k rank formula: `|V[F]| - #(balanced components of G[F])`.
    pub fn zk_rank(&self, f: Mask) -> Result<usize> {
        if !matches!(self.group, GainGroup::Zk { .. }) {
            return Err(Error::WrongGroup);
        }
        Ok(self
            .component_cycles(f)
            .iter()
            .map(|(vertices, cycles)| {
                let balanced = cycles.iter().all(|g| self.group.is_zero_gain(g));
                vertices - usize::from(balanced)
            })
            .sum())
    }

    /// Z^d rank formula: per component, `|V| - 1` plus the rank over Q of
    /// the subgroup of Z^d generated by the fundamental-cycle gains.
    pub fn zd_rank(&self, f: Mask) -> Result<usize> {
        if !matches!(self.group, GainGroup::Lattice { .. }) {
            return Err(Error::WrongGroup);
        }
        Ok(self
            .component_cycles(f)
            .iter()
            .map(|(vertices, cycles)| vertices - 1 + lattice_rank(cycles))
            .sum())
    }

    /// Rank by whichever formula matches the group.
    pub fn rank_of(&self, f: Mask) -> usize {
        match self.group {
            GainGroup::Zk { .. } => self.zk_rank(f).expect("group checked"),
            GainGroup::Lattice { .. } => self.zd_rank(f).expect("group checked"),
        }
    }

    /// The Z_k gain matroid on the edge set.
    pub fn zk_matroid(&self) -> Result<Matroid> {
        if !matches!(self.group, GainGroup::Zk { .. }) {
            return Err(Error::WrongGroup);
        }
        self.build_matroid()
    }

    /// The Z^d gain matroid on the edge set.
    pub fn zd_matroid(&self) -> Result<Matroid> {
        if !matches!(self.group, GainGroup::Lattice { .. }) {
            return Err(Error::WrongGroup);
        }
        self.build_matroid()
    }

    /// The gain matroid for whichever group the graph carries.
    pub fn matroid(&self) -> Result<Matroid> {
        self.build_matroid()
    }

    fn build_matroid(&self) -> Result<Matroid> {
        Matroid::from_rank_oracle(self.edges.len(), |s| self.rank_of(s))
    }

    /// Delete an edge; surviving edge ids shift down to stay contiguous.
    pub fn gain_delete(&self, e: usize) -> Result<GainGraph> {
        if e >= self.edges.len() {
            return Err(Error::EdgeNotFound { edge: e });
        }
        let mut out = self.clone();
        out.edges.remove(e);
        Ok(out)
    }

    /// Contract an edge at the gain level, following the printed rules, and
    /// verify the result against matroid-level contraction. A disagreement
    /// returns [`Error::GainRuleMismatch`] instead of a wrong graph.
    pub fn gain_contract(&self, e: usize) -> Result<GainGraph> {
        if e >= self.edges.len() {
            return Err(Error::EdgeNotFound { edge: e });
        }
        let contracted = self.contract_rule(e)?;
        let expected = self.matroid()?.contract(mask::bit(e))?.0;
        if contracted.matroid()? != expected {
            return Err(Error::GainRuleMismatch);
        }
        Ok(contracted)
    }

    fn contract_rule(&self, e: usize) -> Result<GainGraph> {
        let edge = self.edges[e].clone();
        if edge.is_loop() && self.group.is_zero_gain(&edge.gain) {
            // Contracting a zero-gain loop is just deleting it.
            return self.gain_delete(e);
        }
        if !edge.is_loop() {
            return Ok(self.contract_non_loop(e));
        }
        match self.group {
            GainGroup::Zk { .. } => Ok(self.contract_zk_loop(e)),
            GainGroup::Lattice { .. } => Ok(self.contract_lattice_loop(e)),
        }
    }

    /// Switch the removed endpoint so the contracted edge has gain zero,
    /// then merge it into the kept endpoint.
    fn contract_non_loop(&self, e: usize) -> GainGraph {
        let (keep, remove) = (self.edges[e].from, self.edges[e].to);
        let switched = self.switch(remove, &self.edges[e].gain).expect("valid switch");
        debug_assert!(switched.group.is_zero_gain(&switched.edges[e].gain));

        let relabel = |v: usize| {
            let v = if v == remove { keep } else { v };
            if v > remove {
                v - 1
            } else {
                v
            }
        };
        let edges = switched
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != e)
            .map(|(_, edge)| (relabel(edge.from), relabel(edge.to), edge.gain.clone()))
            .collect();
        GainGraph::new(self.group, self.vertices - 1, edges).expect("valid contraction")
    }

    /// Z_k rule for a nonzero-gain loop at v: drop v, turn each other
    /// v-incident edge into a gain-1 loop at its other endpoint, and move
    /// the remaining loops at v (with gain 0) to an arbitrary vertex.
    fn contract_zk_loop(&self, e: usize) -> GainGraph {
        let v = self.edges[e].from;
        let single_vertex = self.vertices == 1;
        let host = if single_vertex {
            0
        } else {
            (0..self.vertices).find(|&u| u != v).expect("two or more vertices")
        };
        let relabel = |x: usize| {
            if single_vertex {
                return 0;
            }
            if x > v {
                x - 1
            } else {
                x
            }
        };
        let mut edges = Vec::with_capacity(self.edges.len() - 1);
        for (i, edge) in self.edges.iter().enumerate() {
            if i == e {
                continue;
            }
            let entry = if edge.is_loop() && edge.from == v {
                (relabel(host), relabel(host), Gain::Zk(0))
            } else if edge.from == v || edge.to == v {
                let anchor = if edge.from == v { edge.to } else { edge.from };
                (relabel(anchor), relabel(anchor), Gain::Zk(1))
            } else {
                (relabel(edge.from), relabel(edge.to), edge.gain.clone())
            };
            edges.push(entry);
        }
        let vertices = if single_vertex { 1 } else { self.vertices - 1 };
        GainGraph::new(self.group, vertices, edges).expect("valid contraction")
    }

    /// Z^k rule for a nonzero-gain loop, as printed: pick j with gamma_j
    /// nonzero and map every other gain phi to
    /// `gamma_j * phi - gamma (.) phi` (componentwise product). The rule is
    /// suspect in general; [`GainGraph::gain_contract`] verifies it.
    fn contract_lattice_loop(&self, e: usize) -> GainGraph {
        let Gain::Lattice(gamma) = self.edges[e].gain.clone() else {
            unreachable!("group checked by caller");
        };
        let j = gamma.iter().position(|&x| x != 0).expect("nonzero loop gain");
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != e)
            .map(|(_, edge)| {
                let Gain::Lattice(phi) = &edge.gain else {
                    unreachable!("homogeneous gains");
                };
                let mapped: Vec<i64> = phi
                    .iter()
                    .zip(&gamma)
                    .map(|(&p, &g)| gamma[j] * p - g * p)
                    .collect();
                (edge.from, edge.to, Gain::Lattice(mapped))
            })
            .collect();
        GainGraph::new(self.group, self.vertices, edges).expect("valid contraction")
    }

    /// Minimal k-fold rotation-symmetric rigidity: |E| = 2n - 1 and the
    /// balanced/unbalanced sparsity counts hold for every nonempty subset.
    pub fn is_min_rotation_rigid(&self) -> Result<bool> {
        if !matches!(self.group, GainGroup::Zk { .. }) {
            return Err(Error::WrongGroup);
        }
        let m = self.edges.len();
        if m > crate::matroid::MAX_GROUND {
            return Err(Error::SizeCapExceeded { n: m, cap: crate::matroid::MAX_GROUND });
        }
        if m as i64 != 2 * self.vertices as i64 - 1 {
            return Ok(false);
        }
        for f in 1..(1 as Mask) << m {
            let vertices = self.touched_vertices(f).len() as i64;
            let bound = if self.is_balanced(f) { 2 * vertices - 3 } else { 2 * vertices - 1 };
            if mask::count(f) as i64 > bound {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minimal periodic rigidity for Z^d, d in {1,2}: |E| = 2n - 3 + 2d and
    /// the three-tier sparsity counts hold for every nonempty connected
    /// subset, graded by lattice rank.
    pub fn is_min_periodic_rigid(&self) -> Result<bool> {
        let GainGroup::Lattice { d } = self.group else {
            return Err(Error::WrongGroup);
        };
        let m = self.edges.len();
        if m > crate::matroid::MAX_GROUND {
            return Err(Error::SizeCapExceeded { n: m, cap: crate::matroid::MAX_GROUND });
        }
        if m as i64 != 2 * self.vertices as i64 - 3 + 2 * d as i64 {
            return Ok(false);
        }
        for f in 1..(1 as Mask) << m {
            let components = self.component_cycles(f);
            if components.len() != 1 {
                continue; // only connected subsets are constrained
            }
            let (vertices, cycles) = &components[0];
            let bound = match lattice_rank(cycles) {
                0 => 2 * *vertices as i64 - 3,
                1 => 2 * *vertices as i64 - 1,
                _ => 2 * *vertices as i64 + 1,
            };
            if mask::count(f) as i64 > bound {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Rank over Q of the subgroup of Z^d generated by the given vectors.
fn lattice_rank(gains: &[Gain]) -> usize {
    let vectors: Vec<&Vec<i64>> = gains
        .iter()
        .map(|g| match g {
            Gain::Lattice(v) => v,
            Gain::Zk(_) => panic!("lattice rank of a cyclic gain"),
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect();
    let Some(first) = vectors.first() else {
        return 0;
    };
    if first.len() == 1 {
        return 1;
    }
    for v in &vectors[1..] {
        let det = first[0] as i128 * v[1] as i128 - first[1] as i128 * v[0] as i128;
        if det != 0 {
            return 2;
        }
    }
    1
}

/// Laman counts for a plain graph: |E| = 2n - 3 and every nonempty edge
/// subset F satisfies `|F| <= 2|V[F]| - 3`.
pub fn is_laman(vertices: usize, edges: &[(usize, usize)]) -> Result<bool> {
    let m = edges.len();
    if m > crate::matroid::MAX_GROUND {
        return Err(Error::SizeCapExceeded { n: m, cap: crate::matroid::MAX_GROUND });
    }
    for &(u, v) in edges {
        if u >= vertices || v >= vertices {
            return Err(Error::IndexOutOfRange { index: u.max(v), n: vertices });
        }
    }
    if m as i64 != 2 * vertices as i64 - 3 {
        return Ok(false);
    }
    for f in 1..(1 as Mask) << m {
        let mut seen = vec![false; vertices];
        for e in mask::bits(f) {
            seen[edges[e].0] = true;
            seen[edges[e].1] = true;
        }
        let touched = seen.iter().filter(|&&s| s).count() as i64;
        if mask::count(f) as i64 > 2 * touched - 3 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn halve(value: FlipValue) -> Result<BigUint> {
    match value {
        FlipValue::Finite(v) if v.is_even() => Ok(v / 2u32),
        _ => Err(Error::OddSelfProduct),
    }
}

/// Realisation number of a minimally rigid plane graph: half the self flip
/// product of its graphic matroid.
pub fn realisation_plane(
    engine: &FlipEngine,
    vertices: usize,
    edges: &[(usize, usize)],
) -> Result<BigUint> {
    if !is_laman(vertices, edges)? {
        return Err(Error::NotMinimallyRigid);
    }
    let m = Matroid::graphic(vertices, edges)?;
    halve(engine.flip(&m, &m)?)
}

/// Rotation-symmetric realisation number of a minimally k-fold rotation
/// rigid Z_k-gain graph: the self flip product of its gain matroid.
///
/// Unlike the plane and periodic counts, no halving happens here: the
/// rotation-symmetric measurement map conjugates the rotation matrix under
/// reflections, so reflections do not act on its fibres and the torus
/// quotient already matches the isometry quotient. (The nbc upper bound
/// makes a halved count impossible for the three-vertex Z_4 example, whose gain
/// matroid is U_{5,3} with self product 6.)
pub fn realisation_sym(engine: &FlipEngine, graph: &GainGraph) -> Result<BigUint> {
    if !graph.is_min_rotation_rigid()? {
        return Err(Error::NotMinimallyRigid);
    }
    let m = graph.zk_matroid()?;
    match engine.flip(&m, &m)? {
        FlipValue::Finite(v) => Ok(v),
        FlipValue::Infinite => Err(Error::OddSelfProduct),
    }
}

/// Periodic realisation number of a minimally periodically rigid Z^d-gain
/// graph: half the self flip product of its gain matroid.
pub fn realisation_per(engine: &FlipEngine, graph: &GainGraph) -> Result<BigUint> {
    if !graph.is_min_periodic_rigid()? {
        return Err(Error::NotMinimallyRigid);
    }
    let m = graph.zd_matroid()?;
    halve(engine.flip(&m, &m)?)
}
