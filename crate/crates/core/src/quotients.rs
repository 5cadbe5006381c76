//! Normal forms and bases for the quotients `F`, `A₂`, `U` and `R` of the
//! free algebra, and the Milnor and Madsen coefficient bijections.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{Element, TensorElement};
use crate::seq::{binom_mod2, compositions, Sequence};

/// Default cap on Adem rewrite steps for one monomial.
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraId {
    /// The free algebra itself.
    F0,
    /// `F0 / (Q^0 - 1)`.
    F,
    /// The Steenrod algebra, `F` modulo the cohomology Adem relations.
    A2,
    /// `F0` modulo the ideal of negative-excess monomials.
    U,
    /// The Dyer-Lashof algebra, `U` modulo the homology Adem relations.
    R,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 5] = [
        AlgebraId::F0,
        AlgebraId::F,
        AlgebraId::A2,
        AlgebraId::U,
        AlgebraId::R,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraId::F0 => "f0",
            AlgebraId::F => "f",
            AlgebraId::A2 => "a2",
            AlgebraId::U => "u",
            AlgebraId::R => "r",
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f0" => Ok(AlgebraId::F0),
            "f" => Ok(AlgebraId::F),
            "a2" => Ok(AlgebraId::A2),
            "u" => Ok(AlgebraId::U),
            "r" => Ok(AlgebraId::R),
            other => Err(Error::Precondition(format!("unknown algebra {other:?}"))),
        }
    }
}

/// `I_{k,t}`, the Madsen basis vector of degree `2^k - 2^t`.
pub fn basis_vector_i(k: usize, t: usize) -> Result<Sequence> {
    if k == 0 || t >= k || k > 31 {
        return Err(Error::Range(format!(
            "I_{{{k},{t}}} needs 0 <= t < k <= 31"
        )));
    }
    let v = (1..=k)
        .map(|j| {
            let high = 1u32 << (k - j);
            if j <= t {
                high - (1u32 << (t - j))
            } else {
                high
            }
        })
        .collect();
    Ok(Sequence::new(v))
}

/// `J_{k,t} = (2^{t-1}, ..., 2, 1, 1, 0, ..., 0)`, of degree `2^t`.
pub fn basis_vector_j(k: usize, t: usize) -> Result<Sequence> {
    if t == 0 || t + 1 > k || t > 31 {
        return Err(Error::Range(format!(
            "J_{{{k},{t}}} needs its block of {} entries to fit in length {k}",
            t + 1
        )));
    }
    let mut v: Vec<u32> = (0..t).map(|j| 1u32 << (t - 1 - j)).collect();
    v.push(1);
    v.resize(k, 0);
    Ok(Sequence::new(v))
}

pub fn is_admissible(s: &Sequence, alg: AlgebraId) -> Result<bool> {
    let v = s.entries();
    match alg {
        AlgebraId::A2 => Ok(v.iter().all(|&i| i >= 1)
            && v.windows(2).all(|w| u64::from(w[0]) >= 2 * u64::from(w[1]))),
        AlgebraId::R => Ok(v.windows(2).all(|w| u64::from(w[0]) <= 2 * u64::from(w[1]))
            && !s.excess().is_negative()),
        AlgebraId::U => Ok(!s.has_negative_suffix()),
        AlgebraId::F0 | AlgebraId::F => Err(Error::Precondition(format!(
            "no admissibility notion in {alg}"
        ))),
    }
}

type Cache = LazyLock<RwLock<HashMap<Sequence, Element>>>;

static A2_CACHE: Cache = LazyLock::new(|| RwLock::new(HashMap::new()));
static R_CACHE: Cache = LazyLock::new(|| RwLock::new(HashMap::new()));

/// Reduces elements to the admissible basis of a quotient.
///
/// Inadmissible pairs are rewritten rightmost first. Normal forms of
/// individual monomials are memoized in a process-wide cache; entries are
/// only ever written with the unique normal form, so concurrent fills agree.
#[derive(Debug, Clone, Copy)]
pub struct Normalizer {
    max_steps: u64,
}

impl Default for Normalizer {
    fn default() -> Self {
        Normalizer {
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

impl Normalizer {
    pub fn with_max_steps(max_steps: u64) -> Self {
        Normalizer { max_steps }
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    pub fn normalize(&self, x: &Element, alg: AlgebraId) -> Result<Element> {
        x.try_linear(|s| self.normalize_monomial(s, alg))
    }

    pub fn normalize_monomial(&self, s: &Sequence, alg: AlgebraId) -> Result<Element> {
        match alg {
            AlgebraId::F0 => Ok(Element::monomial(s.clone())),
            AlgebraId::F => Ok(Element::monomial(s.strip_zeros())),
            AlgebraId::U => Ok(if s.has_negative_suffix() {
                Element::zero()
            } else {
                Element::monomial(s.clone())
            }),
            AlgebraId::A2 => {
                let mut steps = 0;
                self.reduce(&s.strip_zeros(), Side::Cohomology, &mut steps)
            }
            AlgebraId::R => {
                let mut steps = 0;
                self.reduce(s, Side::Homology, &mut steps)
            }
        }
    }

    /// Normalizes every slot of a tensor.
    pub fn normalize_tensor(&self, t: &TensorElement, alg: AlgebraId) -> Result<TensorElement> {
        t.try_map_slots(|_, s| self.normalize_monomial(s, alg))
    }

    fn reduce(&self, s: &Sequence, side: Side, steps: &mut u64) -> Result<Element> {
        if side == Side::Homology && s.has_negative_suffix() {
            return Ok(Element::zero());
        }
        let cache = side.cache();
        if let Some(hit) = cache.read().expect("normal form cache poisoned").get(s) {
            return Ok(hit.clone());
        }
        let v = s.entries();
        let Some(j) = (0..v.len().saturating_sub(1))
            .rev()
            .find(|&j| side.is_bad_pair(v[j], v[j + 1]))
        else {
            return Ok(Element::monomial(s.clone()));
        };
        *steps += 1;
        if *steps > self.max_steps {
            return Err(Error::Guard(format!(
                "more than {} rewrite steps normalizing {s:?}",
                self.max_steps
            )));
        }
        let mut out = Element::zero();
        for pair in side.relation(v[j], v[j + 1]) {
            let mut w = Vec::with_capacity(v.len());
            w.extend_from_slice(&v[..j]);
            w.extend(
                pair.into_iter()
                    .filter(|&e| side == Side::Homology || e != 0),
            );
            w.extend_from_slice(&v[j + 2..]);
            out += self.reduce(&Sequence::new(w), side, steps)?;
        }
        cache
            .write()
            .expect("normal form cache poisoned")
            .insert(s.clone(), out.clone());
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Cohomology,
    Homology,
}

impl Side {
    fn cache(self) -> &'static Cache {
        match self {
            Side::Cohomology => &A2_CACHE,
            Side::Homology => &R_CACHE,
        }
    }

    fn is_bad_pair(self, left: u32, right: u32) -> bool {
        let (l, r) = (u64::from(left), u64::from(right));
        match self {
            Side::Cohomology => l < 2 * r,
            Side::Homology => l > 2 * r,
        }
    }

    fn relation(self, left: u32, right: u32) -> Vec<[u32; 2]> {
        match self {
            Side::Cohomology => cohomology_adem(left, right),
            Side::Homology => homology_adem(left, right),
        }
    }
}

/// Right-hand side of `Q^a Q^b` for `0 < a < 2b`:
/// `Σ_{c=0}^{⌊a/2⌋} C(b-c-1, a-2c) Q^{a+b-c} Q^c`.
pub fn cohomology_adem(a: u32, b: u32) -> Vec<[u32; 2]> {
    let (ai, bi) = (i64::from(a), i64::from(b));
    (0..=a / 2)
        .filter(|&c| binom_mod2(bi - i64::from(c) - 1, ai - 2 * i64::from(c)) == 1)
        .map(|c| [a + b - c, c])
        .collect()
}

/// Right-hand side of `Q^r Q^s` for `r > 2s`:
/// `Σ_{t>0} C(t-s-1, 2t-r) Q^{r+s-t} Q^t`.
pub fn homology_adem(r: u32, s: u32) -> Vec<[u32; 2]> {
    let (ri, si) = (i64::from(r), i64::from(s));
    // the binomial vanishes unless r/2 <= t <= r-s-1
    let lo = r.div_ceil(2).max(1);
    let hi = r.saturating_sub(s + 1);
    (lo..=hi)
        .filter(|&t| binom_mod2(i64::from(t) - si - 1, 2 * i64::from(t) - ri) == 1)
        .map(|t| [r + s - t, t])
        .collect()
}

/// Normalizes with the default step cap.
pub fn normalize(x: &Element, alg: AlgebraId) -> Result<Element> {
    Normalizer::default().normalize(x, alg)
}

/// Basis monomials of `alg` in one degree, sorted by the total order.
///
/// `F0`, `U` and `R` need a fixed length; for `F` and `A2` the length is an
/// optional upper bound.
pub fn basis(alg: AlgebraId, degree: u32, length: Option<usize>) -> Result<Vec<Sequence>> {
    let mut out = match (alg, length) {
        (AlgebraId::F0 | AlgebraId::U | AlgebraId::R, None) => {
            return Err(Error::Precondition(format!(
                "basis of {alg} needs a fixed length"
            )))
        }
        (AlgebraId::F0, Some(k)) => compositions(k, degree),
        (AlgebraId::U, Some(k)) => compositions(k, degree)
            .into_iter()
            .filter(|s| !s.has_negative_suffix())
            .collect(),
        (AlgebraId::R, Some(k)) => r_admissibles(k, degree),
        (AlgebraId::F, cap) => positive_compositions(degree, cap.unwrap_or(degree as usize)),
        (AlgebraId::A2, cap) => a2_admissibles(degree, cap.unwrap_or(degree as usize)),
    };
    out.sort();
    Ok(out)
}

fn positive_compositions(d: u32, max_len: usize) -> Vec<Sequence> {
    fn go(d: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Sequence>) {
        if d == 0 {
            out.push(Sequence::new(cur.clone()));
            return;
        }
        if left == 0 {
            return;
        }
        for first in 1..=d {
            cur.push(first);
            go(d - first, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, max_len, &mut Vec::new(), &mut out);
    out
}

/// Admissible sequences (each entry at least twice its right neighbour),
/// built from the right.
fn a2_admissibles(d: u32, max_len: usize) -> Vec<Sequence> {
    // cur holds entries rightmost first
    fn go(d: u32, min_next: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Sequence>) {
        if d == 0 {
            out.push(Sequence::new(cur.iter().rev().copied().collect()));
            return;
        }
        if left == 0 {
            return;
        }
        for next in min_next.max(1)..=d {
            cur.push(next);
            go(d - next, 2 * next, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, 1, max_len, &mut Vec::new(), &mut out);
    out
}

/// Length-`k` sequences with each entry at most twice its right neighbour
/// and nonnegative excess.
fn r_admissibles(k: usize, d: u32) -> Vec<Sequence> {
    if k == 0 {
        return if d == 0 {
            vec![Sequence::empty()]
        } else {
            Vec::new()
        };
    }
    // cur holds entries rightmost first
    fn go(k: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Sequence>) {
        let used: u32 = cur.iter().sum();
        if cur.len() + 1 == k {
            let top = d - used;
            let prev = *cur.last().unwrap_or(&top);
            if (cur.is_empty() || top <= 2 * prev) && top >= used {
                cur.push(top);
                out.push(Sequence::new(cur.iter().rev().copied().collect()));
                cur.pop();
            }
            return;
        }
        let cap = cur.last().map_or(d - used, |&p| (2 * p).min(d - used));
        for next in 0..=cap {
            cur.push(next);
            go(k, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, d, &mut Vec::with_capacity(k), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientRole {
    Madsen,
    Milnor,
    DualExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub role: CoefficientRole,
    pub values: Vec<u64>,
}

impl CoefficientVector {
    pub fn new(role: CoefficientRole, values: Vec<u64>) -> Self {
        CoefficientVector { role, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `Q^{2^n} ... Q^2 Q^1`.
pub fn milnor_primitive(n: usize) -> Sequence {
    Sequence::new((0..=n).rev().map(|j| 1u32 << j).collect())
}

/// Milnor coefficients `(n_1, ..., n_k)` of an admissible sequence of length
/// at most `k`.
///
/// The sequence is padded with zeros on the right to length `k`; then
/// `n_k = s_1` and `n_{k-t} = s_{t+1} - 2 s_t`.
pub fn milnor_decompose(s: &Sequence, k: usize) -> Result<CoefficientVector> {
    if !is_admissible(s, AlgebraId::A2)? {
        return Err(Error::Domain(format!("{s:?} is not admissible in a2")));
    }
    if s.len() > k {
        return Err(Error::Domain(format!("{s:?} is longer than {k}")));
    }
    let padded = s.pad_right(k);
    let mut n = vec![0u64; k];
    for t in 0..k {
        let upper = u64::from(padded.at(t + 1));
        let lower = if t == 0 {
            0
        } else {
            2 * u64::from(padded.at(t))
        };
        n[k - t - 1] = upper - lower;
    }
    Ok(CoefficientVector::new(CoefficientRole::Milnor, n))
}

/// `Σ n_i S_{i,i}` with each primitive `S_{i,i}` right-padded to length `k`,
/// zeros stripped.
pub fn milnor_compose(n: &CoefficientVector, k: usize) -> Result<Sequence> {
    if n.len() != k {
        return Err(Error::Precondition(format!(
            "Milnor vector has length {}, expected {k}",
            n.len()
        )));
    }
    let mut acc = vec![0u64; k];
    for (i, &c) in n.values.iter().enumerate() {
        for (j, slot) in acc.iter_mut().take(i + 1).enumerate() {
            *slot += c << (i - j);
        }
    }
    to_sequence(acc).map(|s| s.strip_zeros())
}

fn to_sequence(v: Vec<u64>) -> Result<Sequence> {
    v.into_iter()
        .map(|e| u32::try_from(e).map_err(|_| Error::Range(format!("entry {e} overflows"))))
        .collect::<Result<Vec<_>>>()
        .map(Sequence::new)
}

/// The unique `(a_0, ..., a_{k-1})` with `S = Σ a_t I_{k,t}`.
pub fn madsen_decompose(s: &Sequence) -> Result<CoefficientVector> {
    let k = s.len();
    if k == 0 || s.degree() == 0 {
        return Err(Error::Domain(
            "Madsen decomposition needs positive degree".into(),
        ));
    }
    if !is_admissible(s, AlgebraId::R)? {
        return Err(Error::Domain(format!("{s:?} is not admissible in r")));
    }
    // Entry at position p: 2^{p-1} Σ a - Σ_{t >= k-p+1} a_t 2^{t-k+p-1}.
    let total = i128::from(s.at(1));
    let mut a = vec![0i128; k];
    for p in 2..=k {
        let mut rest = (total << (p - 1)) - i128::from(s.at(p));
        for t in (k - p + 2)..k {
            rest -= a[t] << (t + p - k - 1);
        }
        a[k - p + 1] = rest;
    }
    a[0] = total - a[1..].iter().sum::<i128>();
    if a.iter().any(|&x| x < 0) {
        return Err(Error::Domain(format!(
            "{s:?} has no nonnegative Madsen decomposition"
        )));
    }
    let values: Vec<u64> = a.into_iter().map(|x| x as u64).collect();
    let coeffs = CoefficientVector::new(CoefficientRole::Madsen, values);
    if madsen_compose(&coeffs, k)? != *s {
        return Err(Error::Domain(format!(
            "{s:?} is not in the span of I_{{{k},t}}"
        )));
    }
    Ok(coeffs)
}

/// `Σ a_t I_{k,t}`.
pub fn madsen_compose(a: &CoefficientVector, k: usize) -> Result<Sequence> {
    if a.len() != k || k == 0 {
        return Err(Error::Precondition(format!(
            "Madsen vector has length {}, expected {k} >= 1",
            a.len()
        )));
    }
    let mut acc = vec![0u64; k];
    for (t, &c) in a.values.iter().enumerate() {
        let basis = basis_vector_i(k, t)?;
        for (slot, &e) in acc.iter_mut().zip(basis.entries()) {
            *slot += c * u64::from(e);
        }
    }
    to_sequence(acc)
}

/// Nonnegative `(a_1, ..., a_{k-1})` with `S = Σ a_t J_{k,t}`, if one exists.
pub fn u_decompose(s: &Sequence, k: usize) -> Result<CoefficientVector> {
    if s.len() != k || s.degree() == 0 {
        return Err(Error::Domain(format!(
            "{s:?} must have length {k} and positive degree"
        )));
    }
    let v: Vec<i128> = s.entries().iter().map(|&e| i128::from(e)).collect();
    // a[t] multiplies J_{k,t}, t = 1..k-1; index 0 unused
    let mut a = vec![0i128; k];
    // J_{k,t} has entry 2^{t-j} at written index j <= t, 1 at j = t+1.
    for j in (2..=k).rev() {
        let mut rest = v[j - 1];
        for (t, &at) in a.iter().enumerate().skip(j) {
            rest -= at << (t - j);
        }
        a[j - 1] = rest;
    }
    let top: i128 = (1..k).map(|t| a[t] << (t - 1)).sum();
    if top != v[0] || a[1..].iter().any(|&x| x < 0) {
        return Err(Error::Domain(format!(
            "{s:?} is not a nonnegative combination of J_{{{k},t}}"
        )));
    }
    Ok(CoefficientVector::new(
        CoefficientRole::Madsen,
        a[1..].iter().map(|&x| x as u64).collect(),
    ))
}
