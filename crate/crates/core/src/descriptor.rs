//! JSON descriptors for matroids and gain graphs: the input format shared
//! by the CLI and anything else that wants to feed the library from files.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gain::{Gain, GainGraph, GainGroup};
use crate::mask;
use crate::matrix::{Orientation, PrimeFieldMatrix, RationalMatrix};
use crate::matroid::Matroid;

/// A matroid given by one of the supported constructors, possibly wrapped
/// in minor/duality/truncation/relaxation/sum nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MatroidDescriptor {
    Bases {
        n: usize,
        bases: Vec<Vec<usize>>,
    },
    Uniform {
        n: usize,
        r: usize,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Matrix {
        field: FieldDescriptor,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u64>,
        orientation: OrientationDescriptor,
        entries: Vec<Vec<EntryDescriptor>>,
    },
    Dual {
        of: Box<MatroidDescriptor>,
    },
    Delete {
        of: Box<MatroidDescriptor>,
        set: Vec<usize>,
    },
    Contract {
        of: Box<MatroidDescriptor>,
        set: Vec<usize>,
    },
    Truncate {
        of: Box<MatroidDescriptor>,
        k: usize,
    },
    Relax {
        of: Box<MatroidDescriptor>,
        set: Vec<usize>,
    },
    DirectSum {
        parts: Vec<MatroidDescriptor>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldDescriptor {
    Q,
    F2,
    Fp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrientationDescriptor {
    Rows,
    Columns,
}

impl From<OrientationDescriptor> for Orientation {
    fn from(o: OrientationDescriptor) -> Self {
        match o {
            OrientationDescriptor::Rows => Orientation::Rows,
            OrientationDescriptor::Columns => Orientation::Columns,
        }
    }
}

/// A matrix entry: an integer, or a rational written as "a/b".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryDescriptor {
    Int(i64),
    Fraction(String),
}

impl EntryDescriptor {
    fn to_rational(&self) -> Result<BigRational> {
        match self {
            EntryDescriptor::Int(v) => Ok(BigRational::from(BigInt::from(*v))),
            EntryDescriptor::Fraction(s) => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s.trim(), "1"),
                };
                let num: BigInt = num
                    .parse()
                    .map_err(|_| Error::InvalidDescriptor(format!("bad rational '{s}'")))?;
                let den: BigInt = den
                    .parse()
                    .map_err(|_| Error::InvalidDescriptor(format!("bad rational '{s}'")))?;
                if den == BigInt::from(0) {
                    return Err(Error::InvalidDescriptor(format!("zero denominator in '{s}'")));
                }
                Ok(BigRational::new(num, den))
            }
        }
    }

    fn to_integer(&self) -> Result<i64> {
        match self {
            EntryDescriptor::Int(v) => Ok(*v),
            EntryDescriptor::Fraction(s) => {
                Err(Error::InvalidDescriptor(format!("'{s}' is not an integer entry")))
            }
        }
    }
}

impl MatroidDescriptor {
    /// Parse a JSON descriptor.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))
    }

    /// Parse an inline shorthand: `uniform:N:R` or `graphic:U-V,U-V,...`.
    /// Returns `None` when the string is not shorthand (e.g. a file path).
    pub fn from_shorthand(text: &str) -> Option<Result<Self>> {
        let (kind, rest) = text.split_once(':')?;
        match kind {
            "uniform" => Some(parse_uniform_shorthand(rest)),
            "graphic" => Some(parse_graphic_shorthand(rest)),
            _ => None,
        }
    }

    /// Build the matroid this descriptor denotes.
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidDescriptor::Bases { n, bases } => Matroid::from_bases(*n, bases),
            MatroidDescriptor::Uniform { n, r } => Matroid::uniform(*n, *r),
            MatroidDescriptor::Graphic { vertices, edges } => Matroid::graphic(*vertices, edges),
            MatroidDescriptor::Matrix { field, p, orientation, entries } => {
                build_matrix_matroid(*field, *p, (*orientation).into(), entries)
            }
            MatroidDescriptor::Dual { of } => Ok(of.build()?.dual()),
            MatroidDescriptor::Delete { of, set } => {
                let m = of.build()?;
                let s = mask::from_indices(set, m.n()).ok_or(Error::SubsetOutOfRange)?;
                Ok(m.delete(s)?.0)
            }
            MatroidDescriptor::Contract { of, set } => {
                let m = of.build()?;
                let s = mask::from_indices(set, m.n()).ok_or(Error::SubsetOutOfRange)?;
                Ok(m.contract(s)?.0)
            }
            MatroidDescriptor::Truncate { of, k } => of.build()?.truncation(*k),
            MatroidDescriptor::Relax { of, set } => {
                let m = of.build()?;
                let s = mask::from_indices(set, m.n()).ok_or(Error::SubsetOutOfRange)?;
                m.circuit_hyperplane_relax(s)
            }
            MatroidDescriptor::DirectSum { parts } => {
                let mut parts = parts.iter();
                let first = parts
                    .next()
                    .ok_or_else(|| Error::InvalidDescriptor("empty direct_sum".into()))?;
                let mut acc = first.build()?;
                for part in parts {
                    acc = acc.direct_sum(&part.build()?)?;
                }
                Ok(acc)
            }
        }
    }

    /// Descriptor listing the bases of a matroid explicitly.
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidDescriptor::Bases {
            n: m.n(),
            bases: m.bases().iter().map(|&b| mask::to_indices(b)).collect(),
        }
    }
}

fn parse_uniform_shorthand(rest: &str) -> Result<MatroidDescriptor> {
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidDescriptor(format!("expected uniform:N:R, got 'uniform:{rest}'")));
    }
    let n = parts[0]
        .parse()
        .map_err(|_| Error::InvalidDescriptor(format!("bad count '{}'", parts[0])))?;
    let r = parts[1]
        .parse()
        .map_err(|_| Error::InvalidDescriptor(format!("bad rank '{}'", parts[1])))?;
    Ok(MatroidDescriptor::Uniform { n, r })
}

fn parse_graphic_shorthand(rest: &str) -> Result<MatroidDescriptor> {
    let mut edges = Vec::new();
    let mut max_vertex = 0;
    for part in rest.split(',') {
        let (u, v) = part
            .split_once('-')
            .ok_or_else(|| Error::InvalidDescriptor(format!("bad edge '{part}'")))?;
        let u: usize = u
            .trim()
            .parse()
            .map_err(|_| Error::InvalidDescriptor(format!("bad vertex '{u}'")))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidDescriptor(format!("bad vertex '{v}'")))?;
        max_vertex = max_vertex.max(u).max(v);
        edges.push((u, v));
    }
    Ok(MatroidDescriptor::Graphic { vertices: max_vertex + 1, edges })
}

fn build_matrix_matroid(
    field: FieldDescriptor,
    p: Option<u64>,
    orientation: Orientation,
    entries: &[Vec<EntryDescriptor>],
) -> Result<Matroid> {
    match field {
        FieldDescriptor::Q => {
            let rows: Result<Vec<Vec<BigRational>>> = entries
                .iter()
                .map(|row| row.iter().map(EntryDescriptor::to_rational).collect())
                .collect();
            let matrix = RationalMatrix::new(rows?)?;
            Matroid::from_rational_matrix(&matrix, orientation)
        }
        FieldDescriptor::F2 | FieldDescriptor::Fp => {
            let p = match field {
                FieldDescriptor::F2 => 2,
                _ => p.ok_or_else(|| {
                    Error::InvalidDescriptor("field Fp requires an explicit prime p".into())
                })?,
            };
            let rows: Result<Vec<Vec<i64>>> = entries
                .iter()
                .map(|row| row.iter().map(EntryDescriptor::to_integer).collect())
                .collect();
            let matrix = PrimeFieldMatrix::new(p, rows?)?;
            Matroid::from_prime_field_matrix(&matrix, orientation)
        }
    }
}

/// A gain graph in JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainGraphDescriptor {
    pub group: GroupDescriptor,
    pub vertices: usize,
    pub edges: Vec<GainEdgeDescriptor>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum GroupDescriptor {
    Zk { k: u64 },
    Zd { d: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainEdgeDescriptor {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub gain: GainDescriptor,
}

/// A single residue for Z_k (any integer, reduced mod k), or an integer
/// vector of length d for Z^d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GainDescriptor {
    Scalar(i64),
    Vector(Vec<i64>),
}

impl GainGraphDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))
    }

    pub fn build(&self) -> Result<GainGraph> {
        let group = match self.group {
            GroupDescriptor::Zk { k } => GainGroup::Zk { k },
            GroupDescriptor::Zd { d } => GainGroup::Lattice { d },
        };
        // Edge ids must be exactly 0..m-1; they index the matroid ground set.
        let mut slots: Vec<Option<(usize, usize, Gain)>> = vec![None; self.edges.len()];
        for edge in &self.edges {
            let gain = match (&edge.gain, &group) {
                (GainDescriptor::Scalar(g), GainGroup::Zk { k }) => {
                    Gain::Zk(g.rem_euclid(*k as i64) as u64)
                }
                (GainDescriptor::Vector(v), GainGroup::Lattice { d }) => {
                    if v.len() != *d {
                        return Err(Error::InvalidDescriptor(format!(
                            "gain vector {v:?} has length {} but d = {d}",
                            v.len()
                        )));
                    }
                    Gain::Lattice(v.clone())
                }
                _ => {
                    return Err(Error::InvalidDescriptor(
                        "gain shape does not match the declared group".into(),
                    ))
                }
            };
            let slot = slots.get_mut(edge.id).ok_or_else(|| {
                Error::InvalidDescriptor(format!("edge id {} out of range", edge.id))
            })?;
            if slot.is_some() {
                return Err(Error::InvalidDescriptor(format!("duplicate edge id {}", edge.id)));
            }
            *slot = Some((edge.from, edge.to, gain));
        }
        let edges = slots
            .into_iter()
            .map(|s| s.expect("all ids present when distinct and in range"))
            .collect();
        GainGraph::new(group, self.vertices, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_build_bases() {
        let text = r#"{"type":"bases","n":3,"bases":[[0,1],[0,2],[1,2]]}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m, Matroid::uniform(3, 2).unwrap());
    }

    #[test]
    fn parse_and_build_wrappers() {
        let text = r#"{"type":"dual","of":{"type":"uniform","n":5,"r":3}}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m, Matroid::uniform(5, 2).unwrap());
        let text = r#"{"type":"delete","of":{"type":"uniform","n":3,"r":2},"set":[0]}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m, Matroid::uniform(2, 2).unwrap());
        let text = r#"{"type":"direct_sum","parts":[
            {"type":"uniform","n":1,"r":1},{"type":"uniform","n":2,"r":1}]}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.rank(), 2);
        let text = r#"{"type":"truncate","of":{"type":"uniform","n":5,"r":3},"k":2}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m, Matroid::uniform(5, 2).unwrap());
        let text = r#"{"type":"contract","of":{"type":"uniform","n":3,"r":2},"set":[1]}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m, Matroid::uniform(2, 1).unwrap());
        // Relaxing the parallel pair {1,2} of the coloop-plus-pair matroid.
        let text = r#"{"type":"relax","of":{"type":"bases","n":3,"bases":[[0,1],[0,2]]},"set":[1,2]}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m, Matroid::uniform(3, 2).unwrap());
    }

    #[test]
    fn parse_matrix_fields() {
        let text = r#"{"type":"matrix","field":"Q","orientation":"rows",
            "entries":[["1/2",1],[1,"3"]]}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.rank(), 2);
        let text = r#"{"type":"matrix","field":"F2","orientation":"columns",
            "entries":[[1,0,1],[0,1,1]]}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m, Matroid::uniform(3, 2).unwrap());
        let text = r#"{"type":"matrix","field":"Fp","p":5,"orientation":"rows",
            "entries":[[1,2],[2,4]]}"#;
        let m = MatroidDescriptor::from_json(text).unwrap().build().unwrap();
        assert_eq!(m.rank(), 1);
        let missing_p = r#"{"type":"matrix","field":"Fp","orientation":"rows","entries":[[1]]}"#;
        assert!(MatroidDescriptor::from_json(missing_p).unwrap().build().is_err());
    }

    #[test]
    fn shorthand_forms() {
        let m = MatroidDescriptor::from_shorthand("uniform:5:3").unwrap().unwrap();
        assert_eq!(m, MatroidDescriptor::Uniform { n: 5, r: 3 });
        let g = MatroidDescriptor::from_shorthand("graphic:0-1,0-2,1-2").unwrap().unwrap();
        assert_eq!(g.build().unwrap(), Matroid::uniform(3, 2).unwrap());
        assert!(MatroidDescriptor::from_shorthand("somefile.json").is_none());
        assert!(MatroidDescriptor::from_shorthand("uniform:bad").unwrap().is_err());
    }

    #[test]
    fn gain_graph_round_trip() {
        let text = r#"{
            "group": {"type": "Zk", "k": 4},
            "vertices": 3,
            "edges": [
                {"id": 0, "from": 0, "to": 1, "gain": 1},
                {"id": 1, "from": 1, "to": 0, "gain": 0},
                {"id": 2, "from": 1, "to": 2, "gain": 2},
                {"id": 3, "from": 2, "to": 0, "gain": 3},
                {"id": 4, "from": 2, "to": 2, "gain": 1}
            ]
        }"#;
        let descriptor = GainGraphDescriptor::from_json(text).unwrap();
        let graph = descriptor.build().unwrap();
        assert_eq!(graph.edge_count(), 5);
        assert_eq!(graph.vertices(), 3);
        // Serialize and parse again: same descriptor.
        let serialized = serde_json::to_string(&descriptor).unwrap();
        assert_eq!(GainGraphDescriptor::from_json(&serialized).unwrap(), descriptor);
        // Negative Z_k gains reduce mod k.
        let negative = r#"{"group":{"type":"Zk","k":4},"vertices":1,
            "edges":[{"id":0,"from":0,"to":0,"gain":-1}]}"#;
        let graph = GainGraphDescriptor::from_json(negative).unwrap().build().unwrap();
        assert_eq!(graph.edges()[0].gain, Gain::Zk(3));
        // Lattice gains as vectors.
        let lattice = r#"{"group":{"type":"Zd","d":2},"vertices":1,
            "edges":[{"id":0,"from":0,"to":0,"gain":[1,0]}]}"#;
        assert!(GainGraphDescriptor::from_json(lattice).unwrap().build().is_ok());
        // Duplicate ids are rejected.
        let dup = r#"{"group":{"type":"Zk","k":4},"vertices":2,
            "edges":[{"id":0,"from":0,"to":1,"gain":0},{"id":0,"from":1,"to":0,"gain":1}]}"#;
        assert!(GainGraphDescriptor::from_json(dup).unwrap().build().is_err());
    }
}
