//! Structure maps between length components and between the Steenrod and
//! Dyer-Lashof sides: `φ_k : R[k] → R[k+1]`, `U[k] → A₂(k)`,
//! `π_k : A₂(k) → R[k]`, and a constructive section of `π_k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{append_right, Element};
use crate::nishida::sq_act_with;
use crate::quotients::{
    basis, basis_vector_i, is_admissible, madsen_compose, madsen_decompose, AlgebraId,
    CoefficientRole, CoefficientVector, Normalizer,
};
use crate::seq::Sequence;

/// Default cap on lifting iterations for one monomial.
pub const DEFAULT_LIFT_STEPS: usize = 10_000;

fn check_r_normal(norm: &Normalizer, k: usize, x: &Element) -> Result<()> {
    if !x.all_of_length(k) {
        return Err(Error::Domain(format!(
            "every monomial must have length {k}"
        )));
    }
    if norm.normalize(x, AlgebraId::R)? != *x {
        return Err(Error::Domain("input is not in r normal form".into()));
    }
    Ok(())
}

/// `φ_k(Q^I) = Q^I Q^0`, reduced in `R`.
pub fn phi_r(k: usize, x: &Element) -> Result<Element> {
    phi_r_with(&Normalizer::default(), k, x)
}

pub fn phi_r_with(norm: &Normalizer, k: usize, x: &Element) -> Result<Element> {
    check_r_normal(norm, k, x)?;
    norm.normalize(&append_right(x), AlgebraId::R)
}

fn r_basis_monomial(k: usize, s: &Sequence) -> Result<()> {
    if s.len() != k || !is_admissible(s, AlgebraId::R)? {
        return Err(Error::Domain(format!(
            "{s:?} is not an admissible length-{k} monomial of r"
        )));
    }
    Ok(())
}

/// Closed form of `φ_k` on a basis monomial: zero if some entry is odd;
/// otherwise, writing `S = Σ 2 a_i I_{k,i}`, the monomial `Σ a_i I_{k+1,i+1}`.
pub fn phi_r_fast(k: usize, s: &Sequence) -> Result<Element> {
    r_basis_monomial(k, s)?;
    if s.degree() == 0 {
        return Ok(Element::monomial(Sequence::zeros(k + 1)));
    }
    if s.entries().iter().any(|&e| e % 2 == 1) {
        return Ok(Element::zero());
    }
    let doubled = madsen_decompose(s)?;
    let halves: Vec<u64> = doubled.values.iter().map(|a| a / 2).collect();
    Ok(Element::monomial(shifted_madsen(&halves, k + 1, 1)?))
}

/// `Σ_i b_i I_{k,i+shift}`.
fn shifted_madsen(b: &[u64], k: usize, shift: usize) -> Result<Sequence> {
    let mut acc = vec![0u64; k];
    for (i, &c) in b.iter().enumerate() {
        let v = basis_vector_i(k, i + shift)?;
        for (slot, &e) in acc.iter_mut().zip(v.entries()) {
            *slot += c * u64::from(e);
        }
    }
    let entries = acc
        .into_iter()
        .map(|e| u32::try_from(e).map_err(|_| Error::Range(format!("entry {e} overflows"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sequence::new(entries))
}

fn check_stabilizable(s: &Sequence, n: usize) -> Result<CoefficientVector> {
    if n == 0 || n > 31 {
        return Err(Error::Range(format!(
            "stabilization depth {n} not in 1..=31"
        )));
    }
    r_basis_monomial(s.len(), s)?;
    let a = madsen_decompose(s)?;
    if a.values.iter().any(|c| c % (1u64 << n) != 0) {
        return Err(Error::Domain(format!(
            "Madsen coefficients {:?} of {s:?} are not divisible by 2^{n}",
            a.values
        )));
    }
    Ok(a)
}

/// `S` followed by `n` copies of `Q^0`, reduced in `R[k+n]`.
pub fn stabilize(s: &Sequence, n: usize) -> Result<Element> {
    check_stabilizable(s, n)?;
    Normalizer::default().normalize_monomial(&s.pad_right(s.len() + n), AlgebraId::R)
}

/// `Σ b_i I_{k+n,i+n}` where `a_i = 2^n b_i` are the Madsen coefficients of `S`.
pub fn stabilize_formula(s: &Sequence, n: usize) -> Result<Sequence> {
    let a = check_stabilizable(s, n)?;
    let b: Vec<u64> = a.values.iter().map(|c| c >> n).collect();
    shifted_madsen(&b, s.len() + n, n)
}

/// `Q^I Q^0 ⋯ Q^0 ↦ Q^I`: drop the `Q^0`s and reduce in `A₂`.
pub fn phi_u_to_a2(x: &Element, k: usize) -> Result<Element> {
    if !x.all_of_length(k) {
        return Err(Error::Domain(format!(
            "every monomial must have length {k}"
        )));
    }
    if x.terms().any(Sequence::has_negative_suffix) {
        return Err(Error::Domain("input is not in u normal form".into()));
    }
    Normalizer::default().normalize(x, AlgebraId::A2)
}

/// `π_k(Q^I) = Q^I Q^0 ⋯ Q^0` padded to length `k`, reduced in `R`.
pub fn pi(k: usize, x: &Element) -> Result<Element> {
    pi_with(&Normalizer::default(), k, x)
}

pub fn pi_with(norm: &Normalizer, k: usize, x: &Element) -> Result<Element> {
    x.try_linear(|s| {
        if s.len() > k {
            return Err(Error::Domain(format!("{s:?} is longer than {k}")));
        }
        if !is_admissible(s, AlgebraId::A2)? {
            return Err(Error::Domain(format!("{s:?} is not admissible in a2")));
        }
        norm.normalize_monomial(&s.pad_right(k), AlgebraId::R)
    })
}

/// The lifting seed `J(M)` of a positive-degree basis monomial `M` of
/// `R[k]`: with Madsen coefficients `a`, entry `b_{t+1} = 2^t (a_0 + ⋯ + a_t)`
/// at position `t + 1` from the right. Returned zero-stripped.
pub fn lift_seed(m: &Sequence) -> Result<Sequence> {
    let a = madsen_decompose(m)?;
    let k = m.len();
    let mut entries = vec![0u32; k];
    let mut prefix = 0u64;
    for (t, &c) in a.values.iter().enumerate() {
        prefix += c;
        let b = prefix << t;
        entries[k - 1 - t] =
            u32::try_from(b).map_err(|_| Error::Range(format!("seed entry {b} overflows")))?;
    }
    Ok(Sequence::new(entries).strip_zeros())
}

/// Outcome of a lifting run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub element: Element,
    pub iterations: usize,
}

/// Builds preimages under `π_k` by repeatedly cancelling the smallest
/// unwanted term.
#[derive(Debug, Clone, Copy)]
pub struct Lifter {
    pub max_iterations: usize,
    pub normalizer: Normalizer,
}

impl Default for Lifter {
    fn default() -> Self {
        Lifter {
            max_iterations: DEFAULT_LIFT_STEPS,
            normalizer: Normalizer::default(),
        }
    }
}

impl Lifter {
    pub fn lift(&self, k: usize, target: &Sequence) -> Result<Lift> {
        if target.len() != k || !is_admissible(target, AlgebraId::R)? {
            return Err(Error::Domain(format!(
                "{target:?} is not an admissible length-{k} monomial of r"
            )));
        }
        if target.degree() == 0 {
            return Ok(Lift {
                element: Element::one(),
                iterations: 0,
            });
        }
        let goal = Element::monomial(target.clone());
        let mut lifted = Element::zero();
        let mut residual = goal.clone();
        let mut iterations = 0;
        while let Some(smallest) = residual.min_term() {
            if iterations == self.max_iterations {
                return Err(Error::Guard(format!(
                    "lifting {target:?} did not finish in {} iterations",
                    self.max_iterations
                )));
            }
            iterations += 1;
            lifted.toggle(lift_seed(smallest)?);
            residual = pi_with(&self.normalizer, k, &lifted)? + goal.clone();
        }
        Ok(Lift {
            element: lifted,
            iterations,
        })
    }
}

/// A preimage of `Q^I` under `π_k`.
pub fn lift(k: usize, target: &Sequence) -> Result<Element> {
    Lifter::default().lift(k, target).map(|l| l.element)
}

/// An element of the direct limit of the `R[k]`, represented at a finite
/// level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitClass {
    level: usize,
    rep: Element,
}

impl LimitClass {
    pub fn new(level: usize, rep: Element) -> Result<Self> {
        if level == 0 {
            return Err(Error::Range("limit classes live at level >= 1".into()));
        }
        check_r_normal(&Normalizer::default(), level, &rep)?;
        Ok(LimitClass { level, rep })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn rep(&self) -> &Element {
        &self.rep
    }

    /// Equality in the colimit, decided at the higher of the two levels.
    pub fn equivalent(&self, other: &LimitClass) -> Result<bool> {
        let level = self.level.max(other.level);
        Ok(limit_inject(self, level)?.rep == limit_inject(other, level)?.rep)
    }
}

/// Transports a class to a higher level along the maps `φ`.
pub fn limit_inject(c: &LimitClass, target_k: usize) -> Result<LimitClass> {
    if target_k < c.level {
        return Err(Error::Domain(format!(
            "cannot lower a class from level {} to {target_k}",
            c.level
        )));
    }
    let mut rep = c.rep.clone();
    for k in c.level..target_k {
        rep = phi_r(k, &rep)?;
    }
    Ok(LimitClass {
        level: target_k,
        rep,
    })
}

/// The image of an `A₂` element in the direct limit, realised at level `k`.
pub fn limit_of_a2(x: &Element, k: usize) -> Result<LimitClass> {
    LimitClass::new(k, pi(k, x)?)
}

/// All basis monomials `J'` of `R[k]` in degree `2^{k+1} - 2^{i+1} + 2^m`
/// whose image under `Sq^{2^m}` contains `2 I_{k,i}`.
pub fn sq_claim_witnesses(k: usize, i: usize, m: usize) -> Result<Vec<Sequence>> {
    if k == 0 || i >= k || m > k || k > 20 {
        return Err(Error::Range(format!(
            "claim parameters need 0 <= i < k, m <= k (got k={k}, i={i}, m={m})"
        )));
    }
    let target = basis_vector_i(k, i)?.scale(2);
    let degree = (1u32 << (k + 1)) - (1u32 << (i + 1)) + (1u32 << m);
    let norm = Normalizer::default();
    let mut out = Vec::new();
    for j in basis(AlgebraId::R, degree, Some(k))? {
        let image = sq_act_with(&norm, 1 << m, &Element::monomial(j.clone()), AlgebraId::R)?;
        if image.contains(&target) {
            out.push(j);
        }
    }
    Ok(out)
}

/// The case list stated for [`sq_claim_witnesses`]:
/// `2I_{k,i-1}` when `m = i < k`, `2I_{k,i} + 2I_{k,k-1}` when `i + 1 < m = k`,
/// `2I_{k,k-1}` when `i + 1 = m = k`, and nothing otherwise.
pub fn claimed_witnesses(k: usize, i: usize, m: usize) -> Result<Vec<Sequence>> {
    if k == 0 || i >= k || m > k || k > 20 {
        return Err(Error::Range(format!(
            "claim parameters need 0 <= i < k, m <= k (got k={k}, i={i}, m={m})"
        )));
    }
    let two = |t: usize| basis_vector_i(k, t).map(|v| v.scale(2));
    Ok(if m == i && i < k && i >= 1 {
        vec![two(i - 1)?]
    } else if i + 1 < m && m == k {
        vec![two(i)?.add(&two(k - 1)?)]
    } else if i + 1 == m && m == k {
        vec![two(k - 1)?]
    } else {
        Vec::new()
    })
}

/// Helper for callers that hold Madsen coefficients rather than sequences.
pub fn madsen_monomial(a: &[u64]) -> Result<Sequence> {
    madsen_compose(
        &CoefficientVector::new(CoefficientRole::Madsen, a.to_vec()),
        a.len(),
    )
}

/// Serializable summary of a lifting run, used by reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LiftSummary {
    pub k: usize,
    pub target: Sequence,
    pub lift: Vec<Sequence>,
    pub iterations: usize,
}
