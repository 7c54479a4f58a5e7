//! Exact linear algebra helpers: rational solving, fraction-free rank, and
//! Smith normal form diagonals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Solve the square system `a x = rhs` exactly over the rationals.
///
/// Returns `None` when the matrix is singular.
pub fn solve_rational(a: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(rhs.len(), n);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_bareiss(matrix: &[Vec<BigInt>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pivot) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Rank of a matrix over the prime field F_p.
pub fn rank_mod_p(matrix: &[Vec<u64>], p: u64) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<u64>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x % p).collect())
        .collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pivot) = (row..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pivot);
        let inv = mod_inverse(m[row][col], p);
        for c in col..cols {
            m[row][c] = m[row][c] * inv % p;
        }
        for r in 0..rows {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for c in col..cols {
                    m[r][c] = (m[r][c] + (p - factor) * m[row][c]) % p;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is a small prime, so Fermat works fine.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Diagonal of the Smith normal form of an integer matrix.
///
/// The returned vector has `min(rows, cols)` entries `d_1 | d_2 | ...`,
/// padded with zeros when the matrix has smaller rank.
pub fn smith_diagonal(matrix: &[Vec<i128>]) -> Vec<i128> {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let k = rows.min(cols);
    let mut m = matrix.to_vec();
    let mut diag = vec![0i128; k];

    for t in 0..k {
        'pivot: loop {
            // Nonzero entry of smallest magnitude in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    if m[r][c] != 0
                        && best.is_none_or(|(br, bc)| m[r][c].abs() < m[br][bc].abs())
                    {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else {
                return diag; // trailing block is zero; rest of the diagonal stays 0
            };
            m.swap(t, br);
            for row in m.iter_mut() {
                row.swap(t, bc);
            }

            // Reduce row/column t modulo the pivot. Any leftover remainder
            // becomes a strictly smaller pivot candidate, so loop back.
            for r in t + 1..rows {
                if m[r][t] != 0 {
                    let q = m[r][t].div_euclid(m[t][t]);
                    for c in t..cols {
                        m[r][c] -= q * m[t][c];
                    }
                    if m[r][t] != 0 {
                        continue 'pivot;
                    }
                }
            }
            for c in t + 1..cols {
                if m[t][c] != 0 {
                    let q = m[t][c].div_euclid(m[t][t]);
                    for row in m.iter_mut().skip(t) {
                        row[c] -= q * row[t];
                    }
                    if m[t][c] != 0 {
                        continue 'pivot;
                    }
                }
            }

            // Enforce divisibility of the remaining block by the pivot.
            for r in t + 1..rows {
                for c in t + 1..cols {
                    if m[r][c] % m[t][t] != 0 {
                        for cc in t..cols {
                            let add = m[r][cc];
                            m[t][cc] += add;
                        }
                        continue 'pivot;
                    }
                }
            }
            diag[t] = m[t][t].abs();
            break;
        }
    }
    diag
}
