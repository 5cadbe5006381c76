//! The free algebra on `Q^i` over F₂ and its Hopf structure.
//!
//! Elements are finite sets of monomials: a monomial is present exactly when
//! its coefficient is 1, and addition is symmetric difference.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use crate::error::{Error, Result};
use crate::seq::Sequence;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeSet<Sequence>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::monomial(Sequence::empty())
    }

    pub fn monomial(s: Sequence) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(s);
        Element { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, s: &Sequence) -> bool {
        self.terms.contains(s)
    }

    /// Adds a single monomial mod 2.
    pub fn toggle(&mut self, s: Sequence) {
        if !self.terms.remove(&s) {
            self.terms.insert(s);
        }
    }

    /// Monomials in increasing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Sequence> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn min_term(&self) -> Option<&Sequence> {
        self.terms.first()
    }

    /// The element obtained by applying `f` to every monomial, mod 2.
    pub fn map_terms(&self, mut f: impl FnMut(&Sequence) -> Sequence) -> Element {
        self.terms.iter().map(&mut f).collect()
    }

    /// Sum of `f(m)` over monomials `m`.
    pub fn try_linear<F>(&self, mut f: F) -> Result<Element>
    where
        F: FnMut(&Sequence) -> Result<Element>,
    {
        let mut out = Element::zero();
        for s in &self.terms {
            out += f(s)?;
        }
        Ok(out)
    }

    pub fn linear(&self, mut f: impl FnMut(&Sequence) -> Element) -> Element {
        let mut out = Element::zero();
        for s in &self.terms {
            out += f(s);
        }
        out
    }

    pub fn all_of_length(&self, k: usize) -> bool {
        self.terms.iter().all(|s| s.len() == k)
    }
}

impl FromIterator<Sequence> for Element {
    fn from_iter<T: IntoIterator<Item = Sequence>>(iter: T) -> Self {
        let mut e = Element::zero();
        for s in iter {
            e.toggle(s);
        }
        e
    }
}

impl IntoIterator for Element {
    type Item = Sequence;
    type IntoIter = std::collections::btree_set::IntoIter<Sequence>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl AddAssign for Element {
    fn add_assign(&mut self, rhs: Element) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += lhs;
            return;
        }
        for s in rhs.terms {
            self.toggle(s);
        }
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        for s in &rhs.terms {
            self.toggle(s.clone());
        }
    }
}

impl Add for Element {
    type Output = Element;

    fn add(mut self, rhs: Element) -> Element {
        self += rhs;
        self
    }
}

impl Mul for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        multiply(self, rhs)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.terms.iter()).finish()
    }
}

/// Finite sum of tensors of monomials, all of the same arity.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeSet<Vec<Sequence>>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "tensor arity must be positive");
        TensorElement {
            arity,
            terms: BTreeSet::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &[Sequence]) -> bool {
        self.terms.contains(t)
    }

    pub fn toggle(&mut self, t: Vec<Sequence>) {
        assert_eq!(t.len(), self.arity, "tensor arity mismatch");
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &[Sequence]> {
        self.terms.iter().map(Vec::as_slice)
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    /// Applies a linear map slot by slot and expands the result.
    pub fn try_map_slots<F>(&self, mut f: F) -> Result<TensorElement>
    where
        F: FnMut(usize, &Sequence) -> Result<Element>,
    {
        let mut out = TensorElement::zero(self.arity);
        for t in &self.terms {
            let mut partial: Vec<Vec<Sequence>> = vec![Vec::new()];
            for (slot, s) in t.iter().enumerate() {
                let image = f(slot, s)?;
                let mut next = Vec::with_capacity(partial.len() * image.len());
                for p in &partial {
                    for m in image.terms() {
                        let mut q = p.clone();
                        q.push(m.clone());
                        next.push(q);
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for p in partial {
                out.toggle(p);
            }
        }
        Ok(out)
    }

    pub fn map_slots(&self, mut f: impl FnMut(usize, &Sequence) -> Element) -> TensorElement {
        self.try_map_slots(|i, s| Ok(f(i, s)))
            .expect("infallible slot map")
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.terms.iter()).finish()
    }
}

pub fn multiply(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for x in a.terms() {
        for y in b.terms() {
            out.toggle(x.concat(y));
        }
    }
    out
}

/// Every way of writing each entry of `s` as an ordered sum of `parts`
/// nonnegative integers, as `parts` sequences of the same length as `s`.
fn split_monomial(s: &Sequence, parts: usize, out: &mut TensorElement) {
    fn rec(
        entries: &[u32],
        pos: usize,
        parts: usize,
        cur: &mut Vec<Vec<u32>>,
        out: &mut TensorElement,
    ) {
        if pos == entries.len() {
            out.toggle(cur.iter().cloned().map(Sequence::new).collect());
            return;
        }
        // distribute entries[pos] over `parts` slots
        fn dist(
            remaining: u32,
            slot: usize,
            entries: &[u32],
            pos: usize,
            parts: usize,
            cur: &mut Vec<Vec<u32>>,
            out: &mut TensorElement,
        ) {
            if slot + 1 == parts {
                cur[slot].push(remaining);
                rec(entries, pos + 1, parts, cur, out);
                cur[slot].pop();
                return;
            }
            for v in (0..=remaining).rev() {
                cur[slot].push(v);
                dist(remaining - v, slot + 1, entries, pos, parts, cur, out);
                cur[slot].pop();
            }
        }
        dist(entries[pos], 0, entries, pos, parts, cur, out);
    }
    let mut cur = vec![Vec::with_capacity(s.len()); parts];
    rec(s.entries(), 0, parts, &mut cur, out);
}

/// `ψ`, the algebra map with `ψ(Q^i) = Σ_t Q^{i-t} ⊗ Q^t`.
pub fn coproduct(x: &Element) -> TensorElement {
    iterated_coproduct(x, 2).expect("arity 2 is valid")
}

/// The `lambda`-fold iterated coproduct. For a monomial this is the sum of
/// all tuples of sequences adding up termwise to it.
pub fn iterated_coproduct(x: &Element, lambda: usize) -> Result<TensorElement> {
    if lambda == 0 {
        return Err(Error::Range("iterated coproduct arity must be >= 1".into()));
    }
    let mut out = TensorElement::zero(lambda);
    for s in x.terms() {
        split_monomial(s, lambda, &mut out);
    }
    Ok(out)
}

/// Counit: the number of all-zero monomials mod 2.
pub fn augmentation(x: &Element) -> u8 {
    (x.terms().filter(|s| s.is_all_zero()).count() % 2) as u8
}

/// The primitive monomial `x_{k,i}`: zeros with a single 1 at position `i`
/// from the right, or all zeros when `i = 0`.
pub fn primitive_x(k: usize, i: usize) -> Result<Sequence> {
    if k == 0 || i > k {
        return Err(Error::Range(format!(
            "x_{{{k},{i}}} needs k >= 1, 0 <= i <= k"
        )));
    }
    let mut v = vec![0u32; k];
    if i > 0 {
        v[k - i] = 1;
    }
    Ok(Sequence::new(v))
}

/// Whether `ψx = x ⊗ g + g ⊗ x` with `g` the grouplike `(Q^0)^k`.
pub fn is_primitive(x: &Element, k: usize) -> Result<bool> {
    if !x.all_of_length(k) {
        return Err(Error::Precondition(format!(
            "primitivity test in component {k} needs every monomial of length {k}"
        )));
    }
    let g = Sequence::zeros(k);
    let mut expected = TensorElement::zero(2);
    for s in x.terms() {
        expected.toggle(vec![s.clone(), g.clone()]);
        expected.toggle(vec![g.clone(), s.clone()]);
    }
    Ok(coproduct(x) == expected)
}

/// `Φ_k(Q^I) = Q^0 Q^I`.
pub fn pad_left(x: &Element) -> Element {
    x.map_terms(|s| Sequence::zeros(1).concat(s))
}

/// `φ_k(Q^I) = Q^I Q^0`.
pub fn append_right(x: &Element) -> Element {
    x.map_terms(|s| s.concat(&Sequence::zeros(1)))
}

pub fn component_split(x: &Element) -> BTreeMap<usize, Element> {
    let mut out: BTreeMap<usize, Element> = BTreeMap::new();
    for s in x.terms() {
        out.entry(s.len()).or_default().toggle(s.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::BitMatrix;
    use crate::seq::compositions;

    fn e(seqs: &[&[u32]]) -> Element {
        seqs.iter().map(|s| Sequence::new(s.to_vec())).collect()
    }

    fn t2(pairs: &[(&[u32], &[u32])]) -> TensorElement {
        let mut t = TensorElement::zero(2);
        for (a, b) in pairs {
            t.toggle(vec![Sequence::new(a.to_vec()), Sequence::new(b.to_vec())]);
        }
        t
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(multiply(&e(&[&[3]]), &e(&[&[2]])), e(&[&[3, 2]]));
        assert_eq!(multiply(&Element::one(), &e(&[&[2, 1]])), e(&[&[2, 1]]));
        assert_eq!(
            multiply(&(e(&[&[1]]) + e(&[&[2]])), &e(&[&[1]])),
            e(&[&[1, 1], &[2, 1]])
        );
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(
            coproduct(&e(&[&[2]])),
            t2(&[(&[2], &[0]), (&[1], &[1]), (&[0], &[2])])
        );
        assert_eq!(coproduct(&e(&[&[0]])), t2(&[(&[0], &[0])]));
        assert_eq!(
            coproduct(&e(&[&[1, 1]])),
            t2(&[
                (&[1, 1], &[0, 0]),
                (&[1, 0], &[0, 1]),
                (&[0, 1], &[1, 0]),
                (&[0, 0], &[1, 1])
            ])
        );
    }

    #[test]
    fn iterated_coproduct_examples() {
        let x = e(&[&[1]]);
        assert_eq!(iterated_coproduct(&x, 1).unwrap().len(), 1);
        assert_eq!(
            iterated_coproduct(&x, 2).unwrap(),
            t2(&[(&[1], &[0]), (&[0], &[1])])
        );
        let g = iterated_coproduct(&e(&[&[0, 0]]), 3).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.contains(&[Sequence::zeros(2), Sequence::zeros(2), Sequence::zeros(2)]));
        let three = iterated_coproduct(&e(&[&[2]]), 3).unwrap();
        assert_eq!(three.len(), 6);
        for t in three.terms() {
            assert_eq!(t.iter().map(Sequence::degree).sum::<u64>(), 2);
        }
        assert!(iterated_coproduct(&x, 0).is_err());
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(augmentation(&e(&[&[0, 0]])), 1);
        assert_eq!(augmentation(&e(&[&[2, 1]])), 0);
        assert_eq!(augmentation(&Element::zero()), 0);
    }

    #[test]
    fn primitive_x_examples() {
        assert_eq!(primitive_x(2, 2).unwrap(), Sequence::from([1, 0]));
        assert_eq!(primitive_x(2, 0).unwrap(), Sequence::from([0, 0]));
        assert_eq!(primitive_x(3, 1).unwrap(), Sequence::from([0, 0, 1]));
        assert!(primitive_x(2, 3).is_err());
        assert!(primitive_x(0, 0).is_err());
    }

    #[test]
    fn is_primitive_examples() {
        assert!(is_primitive(&e(&[&[1, 0]]), 2).unwrap());
        assert!(!is_primitive(&e(&[&[1, 1]]), 2).unwrap());
        assert!(!is_primitive(&e(&[&[2]]), 1).unwrap());
        assert!(matches!(
            is_primitive(&e(&[&[1], &[1, 0]]), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn padding_examples() {
        assert_eq!(pad_left(&e(&[&[1]])), e(&[&[0, 1]]));
        assert_eq!(pad_left(&Element::one()), e(&[&[0]]));
        assert_eq!(pad_left(&e(&[&[1, 0]])), e(&[&[0, 1, 0]]));
        assert_eq!(append_right(&e(&[&[1]])), e(&[&[1, 0]]));
        assert_eq!(append_right(&Element::one()), e(&[&[0]]));
        assert_eq!(append_right(&e(&[&[2, 1]])), e(&[&[2, 1, 0]]));
    }

    #[test]
    fn component_split_examples() {
        let m = component_split(&e(&[&[1], &[1, 0]]));
        assert_eq!(m.len(), 2);
        assert_eq!(m[&1], e(&[&[1]]));
        assert_eq!(m[&2], e(&[&[1, 0]]));
        assert!(component_split(&Element::zero()).is_empty());
        assert_eq!(component_split(&e(&[&[0, 0]]))[&2], e(&[&[0, 0]]));
    }

    fn monomials(max_len: usize, max_deg: u32) -> Vec<Sequence> {
        (0..=max_len)
            .flat_map(|k| (0..=max_deg).flat_map(move |d| compositions(k, d)))
            .collect()
    }

    fn psi_left(t: &TensorElement) -> TensorElement {
        // (ψ ⊗ id)
        let mut out = TensorElement::zero(3);
        for tuple in t.terms() {
            for inner in coproduct(&Element::monomial(tuple[0].clone())).terms() {
                out.toggle(vec![inner[0].clone(), inner[1].clone(), tuple[1].clone()]);
            }
        }
        out
    }

    fn psi_right(t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(3);
        for tuple in t.terms() {
            for inner in coproduct(&Element::monomial(tuple[1].clone())).terms() {
                out.toggle(vec![tuple[0].clone(), inner[0].clone(), inner[1].clone()]);
            }
        }
        out
    }

    #[test]
    fn coassociative_and_counital() {
        for m in monomials(3, 6) {
            let x = Element::monomial(m.clone());
            let psi = coproduct(&x);
            assert_eq!(psi_left(&psi), psi_right(&psi), "{m:?}");
            assert_eq!(psi_left(&psi), iterated_coproduct(&x, 3).unwrap());
            let mut left = Element::zero();
            let mut right = Element::zero();
            for t in psi.terms() {
                if augmentation(&Element::monomial(t[0].clone())) == 1 {
                    left.toggle(t[1].clone());
                }
                if augmentation(&Element::monomial(t[1].clone())) == 1 {
                    right.toggle(t[0].clone());
                }
            }
            assert_eq!(left, x);
            assert_eq!(right, x);
        }
    }

    #[test]
    fn coproduct_is_multiplicative() {
        let sample = monomials(2, 3);
        for a in &sample {
            for b in &sample {
                let x = Element::monomial(a.clone());
                let y = Element::monomial(b.clone());
                let lhs = coproduct(&multiply(&x, &y));
                let mut rhs = TensorElement::zero(2);
                for p in coproduct(&x).terms() {
                    for q in coproduct(&y).terms() {
                        rhs.toggle(vec![p[0].concat(&q[0]), p[1].concat(&q[1])]);
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn only_grouplikes_are_zero_words() {
        for k in 1..=3 {
            for d in 0..=4 {
                for m in compositions(k, d) {
                    let x = Element::monomial(m.clone());
                    let mut gg = TensorElement::zero(2);
                    gg.toggle(vec![m.clone(), m.clone()]);
                    assert_eq!(coproduct(&x) == gg, m.is_all_zero(), "{m:?}");
                }
            }
        }
    }

    #[test]
    fn primitive_space_dimension() {
        for k in 1..=3usize {
            for d in 1..=4u32 {
                let basis = compositions(k, d);
                let g = Sequence::zeros(k);
                // columns: monomials; rows: tensor basis elements touched
                let mut row_index: BTreeMap<Vec<Sequence>, usize> = BTreeMap::new();
                let mut cols: Vec<Vec<usize>> = Vec::new();
                for m in &basis {
                    let x = Element::monomial(m.clone());
                    let mut t = coproduct(&x);
                    t.toggle(vec![m.clone(), g.clone()]);
                    t.toggle(vec![g.clone(), m.clone()]);
                    let mut col = Vec::new();
                    for tuple in t.terms() {
                        let n = row_index.len();
                        col.push(*row_index.entry(tuple.to_vec()).or_insert(n));
                    }
                    cols.push(col);
                }
                let mut mat = BitMatrix::zeros(row_index.len(), basis.len());
                for (c, col) in cols.iter().enumerate() {
                    for &r in col {
                        mat.flip(r, c);
                    }
                }
                let expected = if d == 1 { k } else { 0 };
                assert_eq!(mat.nullity(), expected, "k={k} d={d}");
            }
            for i in 1..=k {
                let x = Element::monomial(primitive_x(k, i).unwrap());
                assert!(is_primitive(&x, k).unwrap());
            }
        }
    }

    #[test]
    fn products_add_components() {
        for a in monomials(2, 2) {
            for b in monomials(2, 2) {
                let p = multiply(&Element::monomial(a.clone()), &Element::monomial(b.clone()));
                assert!(p.all_of_length(a.len() + b.len()));
            }
        }
    }
}
