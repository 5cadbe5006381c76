//! The left action of the opposite Steenrod algebra on the free algebra and
//! on its quotients, and the induced action on dual generators.

use serde::{Deserialize, Serialize};

use crate::duality::DualGenerator;
use crate::error::{Error, Result};
use crate::freealg::Element;
use crate::quotients::{AlgebraId, Normalizer};
use crate::seq::{binom_mod2, Sequence};

/// `y_{k,i}^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualGeneratorPower {
    pub generator: DualGenerator,
    pub exponent: u32,
}

impl DualGeneratorPower {
    pub fn new(k: usize, i: usize, exponent: u32) -> Result<Self> {
        if i == 0 || i > k {
            return Err(Error::Range(format!("y_{{{k},{i}}} needs 1 <= i <= k")));
        }
        Ok(DualGeneratorPower {
            generator: DualGenerator { k, i },
            exponent,
        })
    }
}

/// `Sq^a` applied to a monomial of the free algebra, peeling the leftmost
/// letter:
///
/// `Sq^a(Q^0 r) = Q^0 Sq^a(r)` and, for `b > 0`,
/// `Sq^a(Q^b r) = Σ_t C(b-a, a-2t) Q^{b-a+t} Sq^t(r)`,
/// where terms with a negative superscript vanish.
fn act_on_word(a: u32, word: &[u32], out: &mut Element, prefix: &mut Vec<u32>) {
    let Some((&b, rest)) = word.split_first() else {
        if a == 0 {
            out.toggle(Sequence::new(prefix.clone()));
        }
        return;
    };
    if b == 0 {
        prefix.push(0);
        act_on_word(a, rest, out, prefix);
        prefix.pop();
        return;
    }
    let (ai, bi) = (i64::from(a), i64::from(b));
    for t in 0..=a / 2 {
        let ti = i64::from(t);
        if binom_mod2(bi - ai, ai - 2 * ti) == 0 || bi - ai + ti < 0 {
            continue;
        }
        prefix.push((bi - ai + ti) as u32);
        act_on_word(t, rest, out, prefix);
        prefix.pop();
    }
}

/// `Sq^a x` computed in the free algebra, then reduced in `alg`.
///
/// The Steenrod quotient `A2` is not closed under this action and is
/// rejected.
pub fn sq_act(a: u32, x: &Element, alg: AlgebraId) -> Result<Element> {
    sq_act_with(&Normalizer::default(), a, x, alg)
}

pub fn sq_act_with(norm: &Normalizer, a: u32, x: &Element, alg: AlgebraId) -> Result<Element> {
    if alg == AlgebraId::A2 {
        return Err(Error::Domain(
            "the Steenrod quotient a2 is not closed under the opposite action".into(),
        ));
    }
    let raw = sq_act_raw(a, x);
    match alg {
        AlgebraId::F0 => Ok(raw),
        _ => norm.normalize(&raw, alg),
    }
}

/// `Sq^a` in the free algebra, with no quotient applied.
pub fn sq_act_raw(a: u32, x: &Element) -> Element {
    let mut raw = Element::zero();
    let mut prefix = Vec::new();
    for s in x.terms() {
        act_on_word(a, s.entries(), &mut raw, &mut prefix);
    }
    raw
}

/// `Sq^a y_{k,i}^b = C(b, a) y_{k,i}^{b+a}`.
pub fn sq_act_dual(a: u32, y: DualGeneratorPower) -> (u8, DualGeneratorPower) {
    let bit = binom_mod2(i64::from(y.exponent), i64::from(a));
    (
        bit,
        DualGeneratorPower {
            generator: y.generator,
            exponent: y.exponent + a,
        },
    )
}
