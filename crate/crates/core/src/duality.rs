//! Kronecker pairing between monomials of the dual of a length component
//! and monomials of the component, and the dimension series used to compare
//! bases with polynomial duals.
//!
//! Only bounded slices `(k, degree)` are ever materialized.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitMatrix;
use crate::freealg::primitive_x;
use crate::par::Exec;
use crate::seq::{compositions, Sequence};

/// `y_{k,i}`: the dual of `x_{k,i}`, or of `(Q^0)^k` when `i = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualGenerator {
    pub k: usize,
    pub i: usize,
}

impl fmt::Display for DualGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y_{{{},{}}}", self.k, self.i)
    }
}

/// `ξ^Λ = Π y_{k,i}^{λ_i}` with `exponents = (λ_1, ..., λ_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualMonomial {
    exponents: Vec<u32>,
}

impl DualMonomial {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Range("a dual monomial needs k >= 1".into()));
        }
        Ok(DualMonomial { exponents })
    }

    /// `y_{k,i}^b`.
    pub fn power(k: usize, i: usize, b: u32) -> Self {
        assert!(1 <= i && i <= k, "y_{{{k},{i}}} out of range");
        let mut exponents = vec![0; k];
        exponents[i - 1] = b;
        DualMonomial { exponents }
    }

    pub fn k(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&l| u64::from(l)).sum()
    }

    /// One factor `x_{k,i}` per power of `y_{k,i}`, in increasing `i`.
    pub fn factors(&self) -> Vec<Sequence> {
        let k = self.k();
        self.exponents
            .iter()
            .enumerate()
            .flat_map(|(idx, &l)| {
                let x = primitive_x(k, idx + 1).expect("index within component");
                std::iter::repeat_n(x, l as usize)
            })
            .collect()
    }
}

/// `Λ(I) = Σ λ_i I(x_{k,i})`: `λ_i` sits at position `i` from the right.
pub fn lambda_sequence(xi: &DualMonomial) -> Sequence {
    Sequence::new(xi.exponents.iter().rev().copied().collect())
}

/// `⟨y_{f_1} ⋯ y_{f_λ}, Q^J⟩` for primitive factors `f_1, ..., f_λ` of the
/// same length as `J`: the number of times the tuple `(f_1, ..., f_λ)`
/// occurs in the `λ`-fold coproduct of `Q^J`, mod 2.
pub fn pair_factors(factors: &[Sequence], j: &Sequence) -> Result<u8> {
    if factors.iter().any(|f| f.len() != j.len()) {
        return Err(Error::Domain(
            "factor lengths differ from the monomial".into(),
        ));
    }
    let degree: u64 = factors.iter().map(Sequence::degree).sum();
    if degree != j.degree() {
        return Ok(0);
    }
    if factors.is_empty() {
        return Ok(u8::from(j.is_all_zero()));
    }
    // each tuple summing termwise to J occurs exactly once in the coproduct
    let mut total = vec![0u32; j.len()];
    for f in factors {
        for (t, &e) in total.iter_mut().zip(f.entries()) {
            *t += e;
        }
    }
    Ok(u8::from(total == j.entries()))
}

/// `⟨ξ^Λ, Q^J⟩`.
pub fn pair(xi: &DualMonomial, j: &Sequence) -> Result<u8> {
    if j.len() != xi.k() {
        return Err(Error::Domain(format!(
            "cannot pair a dual monomial on component {} with {j:?}",
            xi.k()
        )));
    }
    pair_factors(&xi.factors(), j)
}

/// The pairing between all dual monomials and all monomials of one
/// `(k, degree)` slice, both sides sorted by the total order.
#[derive(Debug, Clone)]
pub struct PairingMatrix {
    pub k: usize,
    pub degree: u32,
    pub rows: Vec<DualMonomial>,
    pub cols: Vec<Sequence>,
    pub bits: BitMatrix,
    pub is_unitriangular: bool,
    pub is_invertible: bool,
}

pub fn pairing_matrix(k: usize, degree: u32, exec: Exec) -> Result<PairingMatrix> {
    if k == 0 {
        return Err(Error::Range("pairing matrix needs k >= 1".into()));
    }
    let mut rows: Vec<DualMonomial> = compositions(k, degree)
        .into_iter()
        .map(|s| DualMonomial {
            exponents: s.into_entries(),
        })
        .collect();
    rows.sort_by_cached_key(lambda_sequence);
    let mut cols = compositions(k, degree);
    cols.sort();

    let columns: Vec<Result<Vec<u8>>> =
        exec.map(&cols, |j| rows.iter().map(|xi| pair(xi, j)).collect());
    let mut bits = BitMatrix::zeros(rows.len(), cols.len());
    for (c, col) in columns.into_iter().enumerate() {
        for (r, bit) in col?.into_iter().enumerate() {
            if bit == 1 {
                bits.set(r, c, true);
            }
        }
    }

    let labels: Vec<Sequence> = rows.iter().map(lambda_sequence).collect();
    let mut is_unitriangular = rows.len() == cols.len();
    for (r, label) in labels.iter().enumerate() {
        for (c, col) in cols.iter().enumerate() {
            let bit = bits.get(r, c);
            if col == label && !bit {
                is_unitriangular = false;
            }
            if bit && col < label {
                is_unitriangular = false;
            }
        }
    }
    let is_invertible = rows.len() == cols.len() && bits.rank() == rows.len();
    Ok(PairingMatrix {
        k,
        degree,
        rows,
        cols,
        bits,
        is_unitriangular,
        is_invertible,
    })
}

/// Coefficients of `Π (1 - q^{d_i})^{-1}` up to `max_degree`.
pub fn poincare_series(generator_degrees: &[u32], max_degree: usize) -> Vec<u64> {
    let mut series = vec![0u64; max_degree + 1];
    series[0] = 1;
    for &g in generator_degrees {
        let g = g as usize;
        if g == 0 || g > max_degree {
            continue;
        }
        for n in g..=max_degree {
            series[n] += series[n - g];
        }
    }
    series
}

/// Degrees `2^{n+1} - 1` of the duals of the Milnor primitives, up to a bound.
pub fn milnor_generator_degrees(max_degree: u32) -> Vec<u32> {
    (1..32)
        .map(|n| (1u32 << n) - 1)
        .take_while(|&d| d <= max_degree)
        .collect()
}

/// Degrees `2^k - 2^t`, `0 <= t < k`, of the duals of the Madsen basis vectors.
pub fn madsen_generator_degrees(k: usize) -> Vec<u32> {
    (0..k).map(|t| (1u32 << k) - (1u32 << t)).collect()
}

/// The terms of `ψ y_{k,i}`, one for every way of cutting `x_{k,i}` into a
/// left word of length `k - t` and a right word of length `t`, `1 <= t < k`.
pub fn dual_coproduct_y(k: usize, i: usize) -> Result<Vec<(DualGenerator, DualGenerator)>> {
    if i == 0 || i > k {
        return Err(Error::Range(format!("y_{{{k},{i}}} needs 1 <= i <= k")));
    }
    let mut out = Vec::with_capacity(k.saturating_sub(1));
    for t in 1..k {
        if t >= i {
            out.push((DualGenerator { k: k - t, i: 0 }, DualGenerator { k: t, i }));
        } else {
            out.push((
                DualGenerator { k: k - t, i: i - t },
                DualGenerator { k: t, i: 0 },
            ));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{iterated_coproduct, multiply, Element};
    use crate::seq::compositions;

    fn xi(v: &[u32]) -> DualMonomial {
        DualMonomial::new(v.to_vec()).unwrap()
    }

    /// Independent pairing: enumerate all ordered tuples of length-k
    /// sequences summing termwise to J and count the ones equal to the
    /// factor list.
    fn brute_pair(factors: &[Sequence], j: &Sequence) -> u8 {
        fn rec(idx: usize, factors: &[Sequence], remaining: Vec<u32>) -> u32 {
            if idx == factors.len() {
                return u32::from(remaining.iter().all(|&r| r == 0));
            }
            let k = remaining.len();
            let mut count = 0;
            let deg: u32 = remaining.iter().sum();
            for d in 0..=deg {
                for part in compositions(k, d) {
                    let fits = part.entries().iter().zip(&remaining).all(|(p, r)| p <= r);
                    if fits && part == factors[idx] {
                        let rest = remaining
                            .iter()
                            .zip(part.entries())
                            .map(|(r, p)| r - p)
                            .collect();
                        count += rec(idx + 1, factors, rest);
                    }
                }
            }
            count
        }
        if factors.is_empty() {
            return u8::from(j.is_all_zero());
        }
        (rec(0, factors, j.entries().to_vec()) % 2) as u8
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(&xi(&[1, 1]), &Sequence::from([1, 1])).unwrap(), 1);
        assert_eq!(pair(&xi(&[1, 1]), &Sequence::from([2, 0])).unwrap(), 0);
        assert_eq!(pair(&xi(&[0, 2]), &Sequence::from([2, 0])).unwrap(), 1);
        assert_eq!(pair(&xi(&[0, 2]), &Sequence::from([3, 0])).unwrap(), 0);
        assert!(matches!(
            pair(&xi(&[1, 1]), &Sequence::from([2])),
            Err(Error::Domain(_))
        ));
        assert_eq!(pair(&xi(&[0, 0]), &Sequence::from([0, 0])).unwrap(), 1);
    }

    #[test]
    fn pair_matches_brute_force() {
        for k in 1..=3 {
            for d in 0..=4 {
                for lam in compositions(k, d) {
                    let m = xi(lam.entries());
                    for j in compositions(k, d) {
                        let bit = pair(&m, &j).unwrap();
                        assert_eq!(bit, brute_pair(&m.factors(), &j));
                        if d > 0 {
                            let psi = iterated_coproduct(&Element::monomial(j.clone()), d as usize)
                                .unwrap();
                            assert_eq!(bit, u8::from(psi.contains(&m.factors())));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factor_order_is_irrelevant() {
        for k in 2..=3 {
            for d in 2..=4 {
                for lam in compositions(k, d) {
                    let m = xi(lam.entries());
                    let mut rev = m.factors();
                    rev.reverse();
                    let mut rot = m.factors();
                    rot.rotate_left(1);
                    for j in compositions(k, d) {
                        let base = pair(&m, &j).unwrap();
                        assert_eq!(pair_factors(&rev, &j).unwrap(), base);
                        assert_eq!(pair_factors(&rot, &j).unwrap(), base);
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_sequence_examples() {
        assert_eq!(lambda_sequence(&xi(&[1, 1])), Sequence::from([1, 1]));
        assert_eq!(lambda_sequence(&xi(&[0, 2])), Sequence::from([2, 0]));
        assert_eq!(lambda_sequence(&xi(&[3, 0, 0])), Sequence::from([0, 0, 3]));
    }

    #[test]
    fn pairing_matrix_examples() {
        let m = pairing_matrix(2, 1, Exec::Sequential).unwrap();
        assert_eq!((m.bits.rows(), m.bits.cols()), (2, 2));
        assert!(m.is_invertible && m.is_unitriangular);
        for d in 0..=6 {
            let m = pairing_matrix(1, d, Exec::Sequential).unwrap();
            assert_eq!((m.bits.rows(), m.bits.cols()), (1, 1));
            assert!(m.bits.get(0, 0));
        }
        let m = pairing_matrix(2, 2, Exec::Parallel).unwrap();
        assert_eq!(m.bits.rows(), 3);
        assert!(m.is_invertible && m.is_unitriangular);
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_series(&[1], 3), vec![1, 1, 1, 1]);
        assert_eq!(poincare_series(&[2, 3], 6), vec![1, 0, 1, 1, 1, 1, 2]);
        assert_eq!(poincare_series(&[1, 3, 7], 7)[7], 4);
        assert_eq!(milnor_generator_degrees(24), vec![1, 3, 7, 15]);
        assert_eq!(madsen_generator_degrees(2), vec![3, 2]);
    }

    /// Partition counting by explicit enumeration of multisets of parts.
    fn count_partitions(n: u32, parts: &[u32]) -> u64 {
        fn rec(n: u32, parts: &[u32]) -> u64 {
            match parts.split_first() {
                None => u64::from(n == 0),
                Some((&p, rest)) => (0..=n / p).map(|c| rec(n - c * p, rest)).sum(),
            }
        }
        rec(n, parts)
    }

    #[test]
    fn poincare_matches_partition_enumeration() {
        for parts in [vec![1, 3, 7, 15], vec![3, 2], vec![7, 6, 4], vec![2, 3]] {
            let series = poincare_series(&parts, 24);
            for (n, &c) in series.iter().enumerate() {
                assert_eq!(c, count_partitions(n as u32, &parts));
            }
        }
    }

    fn y(k: usize, i: usize) -> DualGenerator {
        DualGenerator { k, i }
    }

    #[test]
    fn dual_coproduct_examples() {
        assert_eq!(dual_coproduct_y(2, 1).unwrap(), vec![(y(1, 0), y(1, 1))]);
        assert_eq!(dual_coproduct_y(2, 2).unwrap(), vec![(y(1, 1), y(1, 0))]);
        assert_eq!(
            dual_coproduct_y(3, 2).unwrap(),
            vec![(y(1, 0), y(2, 2)), (y(2, 1), y(1, 0))]
        );
        assert!(dual_coproduct_y(2, 0).is_err());
    }

    fn label_of(s: &Sequence) -> Option<DualGenerator> {
        let k = s.len();
        (0..=k).find_map(|i| (primitive_x(k, i).ok()? == *s).then_some(DualGenerator { k, i }))
    }

    #[test]
    fn dual_coproduct_matches_pairing_against_products() {
        // ⟨ψ y, a ⊗ b⟩ = ⟨y, ab⟩ over monomials a, b of total degree 1
        for k in 2..=5usize {
            for i in 1..=k {
                let mut found = Vec::new();
                for t in 1..k {
                    for (da, db) in [(0, 1), (1, 0)] {
                        for a in compositions(k - t, da) {
                            for b in compositions(t, db) {
                                let ab = multiply(
                                    &Element::monomial(a.clone()),
                                    &Element::monomial(b.clone()),
                                );
                                let j = ab.terms().next().unwrap();
                                if pair(&DualMonomial::power(k, i, 1), j).unwrap() == 1 {
                                    found.push((label_of(&a).unwrap(), label_of(&b).unwrap()));
                                }
                            }
                        }
                    }
                }
                found.sort();
                assert_eq!(dual_coproduct_y(k, i).unwrap(), found, "k={k} i={i}");
            }
        }
    }
}
