//! Sequences of superscripts, their gradings, and the total order on them.
//!
//! A [`Sequence`] `(i_k, ..., i_1)` names the monomial `Q^{i_k} ... Q^{i_1}`.
//! Entries are stored in written order, so `entries()[0]` is `i_k`. Every
//! positional accessor in this crate counts positions from the right,
//! starting at 1, so position 1 is the rightmost factor `i_1`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(n, k) mod 2`, zero unless `0 <= k <= n`.
pub fn binom_mod2(n: i64, k: i64) -> u8 {
    if k < 0 || n < k {
        return 0;
    }
    // Lucas: the bits of k must be a subset of the bits of n.
    u8::from(k & !n == 0)
}

/// Excess of a sequence. The empty sequence has infinite excess.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Excess {
    Finite(i64),
    Infinite,
}

impl Excess {
    pub fn is_negative(self) -> bool {
        matches!(self, Excess::Finite(e) if e < 0)
    }
}

impl fmt::Display for Excess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Excess::Finite(e) => write!(f, "{e}"),
            Excess::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sequence(Vec<u32>);

impl Sequence {
    pub fn new(entries: Vec<u32>) -> Self {
        Sequence(entries)
    }

    pub fn empty() -> Self {
        Sequence(Vec::new())
    }

    pub fn zeros(len: usize) -> Self {
        Sequence(vec![0; len])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&i| u64::from(i)).sum()
    }

    /// Entry at position `p` counted from the right (1-based).
    pub fn at(&self, p: usize) -> u32 {
        self.0[self.0.len() - p]
    }

    pub fn excess(&self) -> Excess {
        match self.0.split_first() {
            None => Excess::Infinite,
            Some((&top, rest)) => {
                let rest: i64 = rest.iter().map(|&i| i64::from(i)).sum();
                Excess::Finite(i64::from(top) - rest)
            }
        }
    }

    /// The rightmost `t` entries, `I_t = (i_t, ..., i_1)`.
    pub fn suffix(&self, t: usize) -> Result<Sequence> {
        if t == 0 || t > self.len() {
            return Err(Error::Range(format!(
                "suffix length {t} not in 1..={}",
                self.len()
            )));
        }
        Ok(Sequence(self.0[self.len() - t..].to_vec()))
    }

    /// Excesses `e(I_1), ..., e(I_k)` of all suffixes, shortest first.
    pub fn suffix_excesses(&self) -> impl Iterator<Item = i64> + '_ {
        let mut below = 0i64;
        self.0.iter().rev().map(move |&i| {
            let e = i64::from(i) - below;
            below += i64::from(i);
            e
        })
    }

    /// True when some suffix has negative excess, i.e. the monomial lies in
    /// the two-sided ideal generated by negative-excess monomials.
    pub fn has_negative_suffix(&self) -> bool {
        self.suffix_excesses().any(|e| e < 0)
    }

    /// Concatenation, `self` written to the left.
    pub fn concat(&self, other: &Sequence) -> Sequence {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Sequence(v)
    }

    pub fn strip_zeros(&self) -> Sequence {
        Sequence(self.0.iter().copied().filter(|&i| i != 0).collect())
    }

    pub fn pad_right(&self, len: usize) -> Sequence {
        let mut v = self.0.clone();
        if v.len() < len {
            v.resize(len, 0);
        }
        Sequence(v)
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|&i| i == 0)
    }

    /// Termwise sum of two sequences of equal length.
    pub fn add(&self, other: &Sequence) -> Sequence {
        assert_eq!(self.len(), other.len(), "termwise sum needs equal lengths");
        Sequence(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: u32) -> Sequence {
        Sequence(self.0.iter().map(|&i| i * c).collect())
    }
}

impl From<Vec<u32>> for Sequence {
    fn from(v: Vec<u32>) -> Self {
        Sequence(v)
    }
}

impl<const N: usize> From<[u32; N]> for Sequence {
    fn from(v: [u32; N]) -> Self {
        Sequence(v.to_vec())
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, i) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        if self.0.len() == 1 {
            f.write_str(",")?;
        }
        f.write_str(")")
    }
}

/// Shorter sequences are smaller; sequences of equal length compare by the
/// excess of their suffixes `I_1, I_2, ...` at the first place they differ.
pub fn compare(a: &Sequence, b: &Sequence) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.suffix_excesses()
            .zip(b.suffix_excesses())
            .map(|(x, y)| x.cmp(&y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

impl Ord for Sequence {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl PartialOrd for Sequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All length-`k` sequences of degree `d`, lexicographically smallest first.
pub fn compositions(k: usize, d: u32) -> Vec<Sequence> {
    fn go(k: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Sequence>) {
        if k == 1 {
            prefix.push(d);
            out.push(Sequence(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=d {
            prefix.push(first);
            go(k - 1, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if d == 0 {
            out.push(Sequence::empty());
        }
        return out;
    }
    go(k, d, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s<const N: usize>(v: [u32; N]) -> Sequence {
        Sequence::from(v)
    }

    fn factorial_binom(n: i64, k: i64) -> u8 {
        if k < 0 || n < k {
            return 0;
        }
        let mut c: u128 = 1;
        for j in 0..k {
            c = c * (n - j) as u128 / (j + 1) as u128;
        }
        (c % 2) as u8
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom_mod2(1, 0), 1);
        assert_eq!(binom_mod2(2, 1), 0);
        assert_eq!(binom_mod2(-1, 2), 0);
        assert_eq!(binom_mod2(3, 2), 1);
        assert_eq!(binom_mod2(-3, 0), 0);
        assert_eq!(binom_mod2(0, 0), 1);
    }

    #[test]
    fn binom_matches_factorials() {
        for n in -4..40 {
            for k in -3..40 {
                assert_eq!(binom_mod2(n, k), factorial_binom(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn excess_examples() {
        assert_eq!(s([3, 2]).excess(), Excess::Finite(1));
        assert_eq!(Sequence::empty().excess(), Excess::Infinite);
        assert_eq!(s([1, 2]).excess(), Excess::Finite(-1));
        assert!(Excess::Infinite > Excess::Finite(i64::MAX));
    }

    #[test]
    fn suffix_examples() {
        assert_eq!(s([3, 2, 1]).suffix(2).unwrap(), s([2, 1]));
        assert_eq!(s([3, 2, 1]).suffix(3).unwrap(), s([3, 2, 1]));
        assert_eq!(s([1]).suffix(1).unwrap(), s([1]));
        assert!(matches!(s([1]).suffix(2), Err(Error::Range(_))));
        assert!(matches!(s([1]).suffix(0), Err(Error::Range(_))));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&s([1]), &s([2, 1])), Ordering::Less);
        assert_eq!(compare(&s([2, 0]), &s([1, 1])), Ordering::Less);
        assert_eq!(compare(&s([2, 1]), &s([2, 1])), Ordering::Equal);
    }

    #[test]
    fn compositions_examples() {
        assert_eq!(compositions(2, 2), vec![s([0, 2]), s([1, 1]), s([2, 0])]);
        assert_eq!(compositions(1, 5), vec![s([5])]);
        assert_eq!(compositions(3, 0), vec![s([0, 0, 0])]);
    }

    fn binom_u(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |c, j| c * (n - j) / (j + 1))
    }

    #[test]
    fn compositions_count() {
        for k in 1..=5usize {
            for d in 0..=10u32 {
                let got = compositions(k, d).len() as u64;
                assert_eq!(got, binom_u(u64::from(d) + k as u64 - 1, k as u64 - 1));
            }
        }
    }

    fn all_up_to(len: usize, max_deg: u32) -> Vec<Sequence> {
        (0..=max_deg).flat_map(|d| compositions(len, d)).collect()
    }

    #[test]
    fn order_is_total_on_equal_lengths() {
        for k in 1..=3 {
            let all = all_up_to(k, 8);
            for a in &all {
                for b in &all {
                    assert_eq!(compare(a, b) == Ordering::Equal, a == b, "{a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn order_is_transitive_and_antisymmetric() {
        let mut sample: Vec<Sequence> = Vec::new();
        for k in 0..=3 {
            sample.extend(all_up_to(k, 4));
        }
        for a in &sample {
            for b in &sample {
                assert_eq!(compare(a, b), compare(b, a).reverse());
                for c in &sample {
                    if compare(a, b).is_le() && compare(b, c).is_le() {
                        assert!(compare(a, c).is_le(), "{a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn window_excess_dominates_suffix_excess() {
        for k in 1..=4 {
            for seq in all_up_to(k, 7) {
                let e = seq.entries();
                for p in 1..=k {
                    let e_p = seq.suffix(p).unwrap().excess();
                    for lo in 1..=p {
                        // window from position p down to position lo
                        let window = Sequence::new(e[k - p..=k - lo].to_vec());
                        assert!(window.excess() >= e_p);
                    }
                }
            }
        }
    }
}
