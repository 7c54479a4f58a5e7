//! Beta invariant, nbc-basis counts, and the characteristic polynomial,
//! together with their flip-product characterisations. The direct subset-sum
//! versions double as independent oracles for the flip engine.

use crate::error::{Error, Result};
use crate::flip::{FlipEngine, FlipValue, RankTable};
use crate::mask::{self, Mask};
use crate::matroid::Matroid;

/// The characteristic polynomial of a matroid, with its reduced form and
/// the unsigned coefficients mu_0..mu_{r-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    /// Coefficients of p_M, leading term first; degree r(M).
    pub coeffs: Vec<i64>,
    /// Coefficients of the reduced polynomial p_M / (lambda - 1), leading
    /// term first; degree r(M) - 1.
    pub reduced: Vec<i64>,
    /// `mu_i = |reduced[i]|`; the signs of `reduced` alternate.
    pub mu: Vec<u64>,
}

/// Beta invariant by the signed subset sum
/// `(-1)^r(M) * sum_X (-1)^|X| r_M(X)`.
pub fn beta_direct(m: &Matroid) -> i64 {
    let table = RankTable::build(m);
    let mut sum: i64 = 0;
    for s in 0..1usize << m.n() {
        let sign = if (s as u32).count_ones() % 2 == 0 { 1 } else { -1 };
        sum += sign * table.rank(s as Mask) as i64;
    }
    if m.rank() % 2 == 0 {
        sum
    } else {
        -sum
    }
}

/// Beta invariant as the flip product `(M \ e) * (M* \ e)`, valid for any
/// element e of a matroid with at least two elements.
pub fn beta_via_flip(engine: &FlipEngine, m: &Matroid, e: usize) -> Result<FlipValue> {
    if m.n() < 2 {
        return Err(Error::GroundSetTooSmall { n: m.n(), need: 2 });
    }
    if e >= m.n() {
        return Err(Error::IndexOutOfRange { index: e, n: m.n() });
    }
    let b = mask::bit(e);
    let (left, _) = m.delete(b)?;
    let (right, _) = m.dual().delete(b)?;
    engine.flip(&left, &right)
}

/// Number of bases containing no broken circuit, under the element order
/// given by `order` (a permutation of the ground set; `order[k]` is the
/// k-th smallest element).
pub fn nbc_count(m: &Matroid, order: &[usize]) -> u64 {
    debug_assert_eq!(order.len(), m.n());
    let mut position = vec![0usize; m.n()];
    for (pos, &e) in order.iter().enumerate() {
        position[e] = pos;
    }
    let broken: Vec<Mask> = m
        .circuits()
        .into_iter()
        .map(|c| {
            let least = mask::bits(c).min_by_key(|&e| position[e]).expect("nonempty circuit");
            c & !mask::bit(least)
        })
        .collect();
    m.bases()
        .iter()
        .filter(|&&b| broken.iter().all(|&bc| b & bc != bc))
        .count() as u64
}

/// nbc count under the natural element order.
pub fn nbc_count_natural(m: &Matroid) -> u64 {
    let order: Vec<usize> = (0..m.n()).collect();
    nbc_count(m, &order)
}

/// Characteristic polynomial by the 2^n signed subset sum, with the reduced
/// polynomial obtained by exact synthetic division by (lambda - 1).
pub fn char_poly(m: &Matroid) -> CharPoly {
    let r = m.rank();
    let table = RankTable::build(m);
    // coeffs[i] multiplies lambda^(r - i).
    let mut coeffs = vec![0i64; r + 1];
    for s in 0..1usize << m.n() {
        let sign = if (s as u32).count_ones() % 2 == 0 { 1 } else { -1 };
        let degree = r - table.rank(s as Mask);
        coeffs[r - degree] += sign;
    }

    if m.n() == 0 {
        // The empty matroid has p = 1, which (lambda - 1) does not divide.
        return CharPoly { coeffs, reduced: Vec::new(), mu: Vec::new() };
    }
    let at_one: i64 = coeffs.iter().sum();
    assert_eq!(at_one, 0, "characteristic polynomial must vanish at 1");

    // Synthetic division by (lambda - 1).
    let mut reduced = Vec::with_capacity(r);
    let mut carry = 0i64;
    for &c in &coeffs[..r] {
        carry += c;
        reduced.push(carry);
    }
    debug_assert_eq!(carry + coeffs[r], 0, "nonzero remainder dividing by (lambda - 1)");

    let mu: Vec<u64> = reduced
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let signed = if i % 2 == 0 { c } else { -c };
            assert!(signed >= 0, "mu_{i} must be nonnegative, got {signed}");
            signed as u64
        })
        .collect();
    CharPoly { coeffs, reduced, mu }
}

/// The coefficient mu_k as the flip product
/// `U_{n, n-k} * Trunc_{k+1}(M)`, for simple matroids.
pub fn mu_via_flip(engine: &FlipEngine, m: &Matroid, k: usize) -> Result<FlipValue> {
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    if m.rank() == 0 || k > m.rank() - 1 {
        return Err(Error::IndexOutOfRange { index: k, n: m.rank() });
    }
    let uniform = Matroid::uniform(m.n(), m.n() - k)?;
    let truncated = m.truncation(k + 1)?;
    engine.flip(&uniform, &truncated)
}

/// The flip product `M * U_{n, n-r+1}`, which equals the nbc count of M.
pub fn nbc_via_flip(engine: &FlipEngine, m: &Matroid) -> Result<FlipValue> {
    if m.n() == 0 {
        return Ok(FlipValue::one());
    }
    if m.rank() == 0 {
        // All elements are loops, so both sides vanish; U_{n, n+1} does not
        // exist.
        return Ok(FlipValue::zero());
    }
    let partner = Matroid::uniform(m.n(), m.n() - m.rank() + 1)?;
    engine.flip(m, &partner)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize, r: usize) -> Matroid {
        Matroid::uniform(n, r).unwrap()
    }

    fn binom(n: usize, k: usize) -> u64 {
        if k > n {
            return 0;
        }
        let mut acc = 1u64;
        for i in 0..k {
            acc = acc * (n - i) as u64 / (i + 1) as u64;
        }
        acc
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_direct(&u(1, 1)), 1);
        for n in 2..=7 {
            for d in 1..n {
                assert_eq!(beta_direct(&u(n, d)), binom(n - 2, d - 1) as i64, "U({n},{d})");
            }
        }
        // Disconnected matroids have beta 0.
        let disc = u(2, 1).direct_sum(&u(2, 1)).unwrap();
        assert_eq!(beta_direct(&disc), 0);
    }

    #[test]
    fn beta_flip_agreement() {
        let engine = FlipEngine::with_defaults();
        for m in [u(3, 2), u(4, 2), u(5, 3)] {
            let expected = beta_direct(&m);
            for e in 0..m.n() {
                let via = beta_via_flip(&engine, &m, e).unwrap();
                assert_eq!(via, FlipValue::from_u64(expected as u64));
            }
        }
        // With a coloop, both sides are zero.
        let coloopy = u(1, 1).direct_sum(&u(3, 2)).unwrap();
        assert_eq!(beta_direct(&coloopy), 0);
        assert_eq!(
            beta_via_flip(&FlipEngine::with_defaults(), &coloopy, 0).unwrap(),
            FlipValue::zero()
        );
        assert!(beta_via_flip(&FlipEngine::with_defaults(), &u(1, 1), 0).is_err());
    }

    #[test]
    fn nbc_examples() {
        for n in 1..=7 {
            for r in 1..=n {
                assert_eq!(nbc_count_natural(&u(n, r)), binom(n - 1, r - 1), "U({n},{r})");
            }
        }
        let k3 = Matroid::graphic(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(nbc_count_natural(&k3), 2);
        assert_eq!(nbc_count(&k3, &[2, 0, 1]), 2);
        let loopy = Matroid::graphic(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(nbc_count_natural(&loopy), 0);
    }

    #[test]
    fn char_poly_u32() {
        let cp = char_poly(&u(3, 2));
        assert_eq!(cp.coeffs, vec![1, -3, 2]);
        assert_eq!(cp.reduced, vec![1, -2]);
        assert_eq!(cp.mu, vec![1, 2]);
    }

    #[test]
    fn mu_flip_agreement() {
        let engine = FlipEngine::with_defaults();
        let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for m in [u(3, 2), u(5, 3), k4] {
            let mu = char_poly(&m).mu;
            for (k, &expected) in mu.iter().enumerate() {
                let via = mu_via_flip(&engine, &m, k).unwrap();
                assert_eq!(via, FlipValue::from_u64(expected), "mu_{k}");
            }
        }
        let loopy = Matroid::graphic(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(mu_via_flip(&engine, &loopy, 0), Err(Error::NotSimple));
    }

    #[test]
    fn nbc_flip_agreement() {
        let engine = FlipEngine::with_defaults();
        assert_eq!(nbc_via_flip(&engine, &u(5, 3)).unwrap(), FlipValue::from_u64(6));
        let loopy = Matroid::graphic(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(nbc_via_flip(&engine, &loopy).unwrap(), FlipValue::zero());
        let k3 = Matroid::graphic(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(
            nbc_via_flip(&engine, &k3).unwrap().to_u64().unwrap(),
            nbc_count_natural(&k3)
        );
    }

    #[test]
    fn mu_last_equals_nbc() {
        let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for m in [u(4, 2), u(5, 4), k4] {
            let cp = char_poly(&m);
            assert_eq!(cp.mu[m.rank() - 1], nbc_count_natural(&m));
        }
    }
}
