//! Exact matrices used to define representable matroids.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;

/// Which axis of the matrix carries the matroid elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Rows,
    Columns,
}

/// A matrix with exact rational entries.
#[derive(Debug, Clone)]
pub struct RationalMatrix {
    entries: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        check_rectangular(entries.len(), entries.iter().map(Vec::len))?;
        Ok(Self { entries })
    }

    pub fn from_i64(entries: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            entries
                .iter()
                .map(|row| row.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// Row vectors indexed by the matroid elements for a given orientation.
    pub(crate) fn element_rows(&self, orientation: Orientation) -> Vec<Vec<BigRational>> {
        match orientation {
            Orientation::Rows => self.entries.clone(),
            Orientation::Columns => transpose(&self.entries),
        }
    }

    /// Rank of a set of element rows, by fraction-free elimination on the
    /// denominator-cleared integer matrix.
    pub(crate) fn row_rank(rows: &[&Vec<BigRational>]) -> usize {
        let scaled: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        linalg::rank_bareiss(&scaled)
    }
}

/// A matrix over a small prime field F_p (p <= 97).
#[derive(Debug, Clone)]
pub struct PrimeFieldMatrix {
    p: u64,
    entries: Vec<Vec<u64>>,
}

impl PrimeFieldMatrix {
    pub const MAX_PRIME: u64 = 97;

    pub fn new(p: u64, entries: Vec<Vec<i64>>) -> Result<Self> {
        if p > Self::MAX_PRIME || !is_prime(p) {
            return Err(Error::UnsupportedField(format!("F_{p}")));
        }
        check_rectangular(entries.len(), entries.iter().map(Vec::len))?;
        let entries = entries
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.rem_euclid(p as i64) as u64).collect())
            .collect();
        Ok(Self { p, entries })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub(crate) fn element_rows(&self, orientation: Orientation) -> Vec<Vec<u64>> {
        match orientation {
            Orientation::Rows => self.entries.clone(),
            Orientation::Columns => transpose(&self.entries),
        }
    }

    pub(crate) fn row_rank(rows: &[&Vec<u64>], p: u64) -> usize {
        let m: Vec<Vec<u64>> = rows.iter().map(|r| (*r).clone()).collect();
        linalg::rank_mod_p(&m, p)
    }
}

fn check_rectangular(rows: usize, widths: impl Iterator<Item = usize>) -> Result<()> {
    let mut widths = widths.peekable();
    if rows == 0 || widths.peek() == Some(&0) {
        return Err(Error::InvalidDescriptor("matrix must be nonempty".into()));
    }
    let first = *widths.peek().unwrap();
    if widths.any(|w| w != first) {
        return Err(Error::InvalidDescriptor("matrix rows have unequal lengths".into()));
    }
    Ok(())
}

fn transpose<T: Clone + Zero>(entries: &[Vec<T>]) -> Vec<Vec<T>> {
    let rows = entries.len();
    let cols = entries.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| (0..rows).map(|r| entries[r][c].clone()).collect())
        .collect()
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    (2..=p.isqrt()).all(|d| p % d != 0)
}
