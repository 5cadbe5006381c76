//! Property suites over bounded slices of the algebras. Each suite returns a
//! list of named checks; sweeps fan out through [`Exec`] and are aggregated
//! in input order, so reports are deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::duality::{
    madsen_generator_degrees, milnor_generator_degrees, pairing_matrix, poincare_series,
};
use crate::error::Result;
use crate::f2::BitMatrix;
use crate::freealg::{
    augmentation, coproduct, iterated_coproduct, multiply, Element, TensorElement,
};
use crate::limit::{
    claimed_witnesses, lift_seed, phi_r, phi_r_fast, phi_u_to_a2, pi, sq_claim_witnesses,
    stabilize, stabilize_formula, Lifter,
};
use crate::nishida::sq_act_raw;
use crate::par::Exec;
use crate::quotients::{
    basis, basis_vector_i, is_admissible, madsen_decompose, normalize, AlgebraId, Normalizer,
};
use crate::seq::{compositions, Sequence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((pass, detail)) => Check::new(name, pass, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub id: u8,
    pub title: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

pub const SUITE_TITLES: [&str; 9] = [
    "worked identities",
    "lifting sweep",
    "dual polynomiality",
    "copolynomial dimensions",
    "phi fast path",
    "sq claim",
    "nishida well-definedness",
    "coalgebra laws",
    "rewriting order",
];

pub fn run_suite(id: u8, exec: Exec) -> SuiteReport {
    let checks = match id {
        1 => identities(),
        2 => lifting(exec),
        3 => duality(exec),
        4 => dimensions(),
        5 => phi_fast_path(exec),
        6 => sq_claim(exec),
        7 => nishida(exec),
        8 => coalgebra(exec),
        9 => rewriting_order(exec),
        _ => vec![Check::new("suite", false, format!("no suite {id}"))],
    };
    SuiteReport {
        id,
        title: SUITE_TITLES
            .get(usize::from(id).wrapping_sub(1))
            .map_or("unknown", |t| t)
            .to_string(),
        checks,
    }
}

pub fn run_all(exec: Exec) -> Vec<SuiteReport> {
    (1..=9).map(|id| run_suite(id, exec)).collect()
}

/// Runs `f` on every item and folds the failures into one check.
fn sweep<T, F>(name: &str, exec: Exec, items: &[T], f: F) -> Check
where
    T: Sync,
    F: Fn(&T) -> Result<Option<String>> + Sync + Send,
{
    let results = exec.map(items, |t| match f(t) {
        Ok(v) => v,
        Err(e) => Some(format!("error: {e}")),
    });
    let failed: Vec<String> = results.into_iter().flatten().collect();
    let detail = match failed.first() {
        None => format!("{} cases", items.len()),
        Some(first) => format!(
            "{} of {} cases failed; first: {first}",
            failed.len(),
            items.len()
        ),
    };
    Check::new(name, failed.is_empty(), detail)
}

fn el(seqs: &[&[u32]]) -> Element {
    seqs.iter().map(|v| Sequence::new(v.to_vec())).collect()
}

fn show(x: &Element) -> String {
    format!("{x:?}")
}

fn r_basis_upto(k_max: usize, d_max: u32) -> Result<Vec<(usize, Sequence)>> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        for d in 0..=d_max {
            out.extend(basis(AlgebraId::R, d, Some(k))?.into_iter().map(|s| (k, s)));
        }
    }
    Ok(out)
}

fn expect(name: &str, got: Result<Element>, want: Element) -> Check {
    Check::from_result(
        name,
        got.map(|g| {
            (
                g == want,
                format!("got {}, expected {}", show(&g), show(&want)),
            )
        }),
    )
}

fn identities() -> Vec<Check> {
    vec![
        expect(
            "Q1 Q2 = Q3 in a2",
            normalize(&el(&[&[1, 2]]), AlgebraId::A2),
            el(&[&[3]]),
        ),
        expect(
            "Q3 Q2 = 0 in a2",
            normalize(&el(&[&[3, 2]]), AlgebraId::A2),
            Element::zero(),
        ),
        expect(
            "Sq2 Q3 Q2 = Q2 Q1",
            Ok(sq_act_raw(2, &el(&[&[3, 2]]))),
            el(&[&[2, 1]]),
        ),
        expect("phi_1 Q1 = 0", phi_r(1, &el(&[&[1]])), Element::zero()),
        expect(
            "Q2 Q0 = Q1 Q1 in r",
            normalize(&el(&[&[2, 0]]), AlgebraId::R),
            el(&[&[1, 1]]),
        ),
        expect(
            "pi_2 phi_2 (Q1 Q1) = 0",
            phi_u_to_a2(&el(&[&[1, 1]]), 2).and_then(|x| pi(2, &x)),
            Element::zero(),
        ),
        Check::from_result(
            "no phi_1 preimage of Q2 Q1",
            (|| {
                let target = el(&[&[2, 1]]);
                let candidates = basis(AlgebraId::R, 3, Some(1))?;
                for m in &candidates {
                    if phi_r(1, &Element::monomial(m.clone()))? == target {
                        return Ok((false, format!("{m:?} maps to Q2 Q1")));
                    }
                }
                Ok((true, format!("scanned {candidates:?}")))
            })(),
        ),
    ]
}

fn lifting(exec: Exec) -> Vec<Check> {
    let items = match r_basis_upto(3, 20) {
        Ok(v) => v,
        Err(e) => return vec![Check::new("basis", false, e.to_string())],
    };
    let lifter = Lifter::default();
    vec![sweep(
        "pi(lift(I)) = I, k <= 3, d <= 20",
        exec,
        &items,
        |(k, s)| {
            let lift = lifter.lift(*k, s)?;
            for t in lift.element.terms() {
                if !is_admissible(t, AlgebraId::A2)? {
                    return Ok(Some(format!("lift of {s:?} has inadmissible {t:?}")));
                }
            }
            let image = pi(*k, &lift.element)?;
            Ok((image != Element::monomial(s.clone()))
                .then(|| format!("pi({:?}) = {} for {s:?}", lift.element, show(&image))))
        },
    )]
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn duality(exec: Exec) -> Vec<Check> {
    let mut items = Vec::new();
    for k in 1..=4usize {
        for d in 0..=6u32 {
            items.push((k, d));
        }
    }
    vec![sweep(
        "pairing matrices k <= 4, d <= 6",
        exec,
        &items,
        |&(k, d)| {
            let m = pairing_matrix(k, d, Exec::Sequential)?;
            let size = binom(u64::from(d) + k as u64 - 1, k as u64 - 1) as usize;
            if m.bits.rows() != size || m.bits.cols() != size {
                return Ok(Some(format!(
                    "(k={k}, d={d}) has shape {}x{}",
                    m.bits.rows(),
                    m.bits.cols()
                )));
            }
            if !m.is_invertible {
                return Ok(Some(format!("(k={k}, d={d}) is singular")));
            }
            Ok((!m.is_unitriangular).then(|| format!("(k={k}, d={d}) is not triangular")))
        },
    )]
}

fn dimensions() -> Vec<Check> {
    let a2 = (|| {
        let series = poincare_series(&milnor_generator_degrees(24), 24);
        for (d, &want) in series.iter().enumerate() {
            let got = basis(AlgebraId::A2, d as u32, None)?.len() as u64;
            if got != want {
                return Ok((
                    false,
                    format!("degree {d}: {got} admissibles, series {want}"),
                ));
            }
        }
        Ok((true, "degrees 0..=24".to_string()))
    })();
    let r = (|| {
        for k in 1..=3usize {
            let series = poincare_series(&madsen_generator_degrees(k), 24);
            for (d, &want) in series.iter().enumerate() {
                let got = basis(AlgebraId::R, d as u32, Some(k))?.len() as u64;
                if got != want {
                    return Ok((
                        false,
                        format!("k={k} degree {d}: {got} admissibles, series {want}"),
                    ));
                }
            }
        }
        Ok((true, "k <= 3, degrees 0..=24".to_string()))
    })();
    vec![
        Check::from_result("dim a2 matches Milnor series", a2),
        Check::from_result("dim r[k] matches Madsen series", r),
    ]
}

fn phi_fast_path(exec: Exec) -> Vec<Check> {
    let items = match r_basis_upto(3, 20) {
        Ok(v) => v,
        Err(e) => return vec![Check::new("basis", false, e.to_string())],
    };
    let fast = sweep("phi fast path agrees", exec, &items, |(k, s)| {
        let slow = phi_r(*k, &Element::monomial(s.clone()))?;
        let quick = phi_r_fast(*k, s)?;
        Ok((slow != quick).then(|| format!("{s:?}: {} vs {}", show(&slow), show(&quick))))
    });
    let odd = sweep("odd inputs map to zero", exec, &items, |(k, s)| {
        if s.entries().iter().all(|e| e % 2 == 0) {
            return Ok(None);
        }
        let image = phi_r(*k, &Element::monomial(s.clone()))?;
        Ok((!image.is_zero()).then(|| format!("{s:?} -> {}", show(&image))))
    });
    let even = sweep(
        "even inputs follow the Madsen shift",
        exec,
        &items,
        |(k, s)| {
            if s.degree() == 0 || s.entries().iter().any(|e| e % 2 == 1) {
                return Ok(None);
            }
            let a = madsen_decompose(s)?;
            let mut want = Sequence::zeros(k + 1);
            for (i, c) in a.values.iter().enumerate() {
                want = want.add(&basis_vector_i(k + 1, i + 1)?.scale((c / 2) as u32));
            }
            let image = phi_r(*k, &Element::monomial(s.clone()))?;
            Ok((image != Element::monomial(want.clone()))
                .then(|| format!("{s:?} -> {}, expected {want:?}", show(&image))))
        },
    );
    let stab_items = match r_basis_upto(3, 24) {
        Ok(v) => v,
        Err(e) => return vec![fast, odd, even, Check::new("basis", false, e.to_string())],
    };
    let stab_items: Vec<(Sequence, usize)> = stab_items
        .into_iter()
        .filter(|(_, s)| s.degree() > 0)
        .flat_map(|(_, s)| [(s.clone(), 1), (s, 2)])
        .collect();
    let stab = sweep("stabilization, n <= 2", exec, &stab_items, |(s, n)| {
        let a = madsen_decompose(s)?;
        if a.values.iter().any(|c| c % (1 << n) != 0) {
            return Ok(None);
        }
        let direct = stabilize(s, *n)?;
        let formula = stabilize_formula(s, *n)?;
        Ok((direct != Element::monomial(formula.clone()))
            .then(|| format!("{s:?}, n={n}: {} vs {formula:?}", show(&direct))))
    });
    vec![fast, odd, even, stab]
}

fn sq_claim(exec: Exec) -> Vec<Check> {
    let mut items = Vec::new();
    for k in 1..=4usize {
        for i in 0..k {
            for m in 0..=k {
                items.push((k, i, m));
            }
        }
    }
    let outcomes = exec.map(&items, |&(k, i, m)| {
        let found = sq_claim_witnesses(k, i, m)?;
        let claimed = claimed_witnesses(k, i, m)?;
        Ok::<_, crate::Error>((
            found == claimed,
            format!("{found:?} vs claimed {claimed:?}"),
        ))
    });
    items
        .iter()
        .zip(outcomes)
        .map(|(&(k, i, m), r)| Check::from_result(&format!("k={k} i={i} m={m}"), r))
        .collect()
}

fn nishida(exec: Exec) -> Vec<Check> {
    let mut words = Vec::new();
    for len in 1..=3usize {
        for d in 0..=10u32 {
            words.extend(compositions(len, d));
        }
    }
    let mut checks: Vec<Check> = [AlgebraId::U, AlgebraId::R]
        .into_iter()
        .map(|alg| {
            sweep(&format!("action descends to {alg}"), exec, &words, |w| {
                let m = Element::monomial(w.clone());
                let reduced = normalize(&m, alg)?;
                for a in 0..=6u32 {
                    let lhs = normalize(&sq_act_raw(a, &m), alg)?;
                    let rhs = normalize(&sq_act_raw(a, &reduced), alg)?;
                    if lhs != rhs {
                        return Ok(Some(format!(
                            "Sq{a} on {w:?}: {} vs {}",
                            show(&lhs),
                            show(&rhs)
                        )));
                    }
                }
                Ok(None)
            })
        })
        .collect();
    checks.push(Check::from_result(
        "action does not descend to a2",
        (|| {
            let m = el(&[&[3, 2]]);
            let lhs = normalize(&sq_act_raw(2, &m), AlgebraId::A2)?;
            let rhs = normalize(
                &sq_act_raw(2, &normalize(&m, AlgebraId::A2)?),
                AlgebraId::A2,
            )?;
            Ok((lhs != rhs, format!("{} vs {}", show(&lhs), show(&rhs))))
        })(),
    ));
    checks
}

fn normalize_slots(t: &TensorElement, alg: AlgebraId) -> Result<TensorElement> {
    Normalizer::default().normalize_tensor(t, alg)
}

fn coalgebra(exec: Exec) -> Vec<Check> {
    let mut words = Vec::new();
    for len in 1..=3usize {
        for d in 0..=6u32 {
            words.extend(compositions(len, d));
        }
    }
    let coassoc = sweep("coassociativity", exec, &words, |w| {
        let psi = coproduct(&Element::monomial(w.clone()));
        let mut lhs = TensorElement::zero(3);
        let mut rhs = TensorElement::zero(3);
        for pair in psi.terms() {
            for inner in coproduct(&Element::monomial(pair[0].clone())).terms() {
                lhs.toggle(vec![inner[0].clone(), inner[1].clone(), pair[1].clone()]);
            }
            for inner in coproduct(&Element::monomial(pair[1].clone())).terms() {
                rhs.toggle(vec![pair[0].clone(), inner[0].clone(), inner[1].clone()]);
            }
        }
        Ok((lhs != rhs).then(|| format!("{w:?}")))
    });
    let counit = sweep("counit", exec, &words, |w| {
        let psi = coproduct(&Element::monomial(w.clone()));
        let mut left = Element::zero();
        let mut right = Element::zero();
        for pair in psi.terms() {
            if augmentation(&Element::monomial(pair[0].clone())) == 1 {
                left.toggle(pair[1].clone());
            }
            if augmentation(&Element::monomial(pair[1].clone())) == 1 {
                right.toggle(pair[0].clone());
            }
        }
        let x = Element::monomial(w.clone());
        Ok((left != x || right != x).then(|| format!("{w:?}")))
    });
    let pairs: Vec<(Sequence, Sequence)> = words
        .iter()
        .filter(|a| a.degree() <= 3 && a.len() <= 2)
        .flat_map(|a| {
            words
                .iter()
                .filter(|b| b.degree() <= 3 && b.len() <= 2)
                .map(move |b| (a.clone(), b.clone()))
        })
        .collect();
    let mult = sweep("psi is multiplicative", exec, &pairs, |(a, b)| {
        let (x, y) = (Element::monomial(a.clone()), Element::monomial(b.clone()));
        let lhs = coproduct(&multiply(&x, &y));
        let mut rhs = TensorElement::zero(2);
        for p in coproduct(&x).terms() {
            for q in coproduct(&y).terms() {
                rhs.toggle(vec![p[0].concat(&q[0]), p[1].concat(&q[1])]);
            }
        }
        Ok((lhs != rhs).then(|| format!("{a:?} * {b:?}")))
    });

    let r_items = match r_basis_upto(3, 12) {
        Ok(v) => v,
        Err(e) => {
            return vec![
                coassoc,
                counit,
                mult,
                Check::new("basis", false, e.to_string()),
            ]
        }
    };
    let phi_law = sweep("phi commutes with psi", exec, &r_items, |(k, s)| {
        let x = Element::monomial(s.clone());
        let lhs = normalize_slots(&coproduct(&phi_r(*k, &x)?), AlgebraId::R)?;
        let rhs = normalize_slots(&coproduct(&x), AlgebraId::R)?
            .try_map_slots(|_, t| phi_r(*k, &Element::monomial(t.clone())))?;
        Ok((lhs != rhs).then(|| format!("{s:?}: {lhs:?} vs {rhs:?}")))
    });
    let mut a2_items = Vec::new();
    for k in 1..=3usize {
        for d in 0..=12u32 {
            if let Ok(b) = basis(AlgebraId::A2, d, None) {
                a2_items.extend(b.into_iter().filter(|s| s.len() <= k).map(|s| (k, s)));
            }
        }
    }
    let pi_law = sweep("pi commutes with psi", exec, &a2_items, |(k, s)| {
        let x = Element::monomial(s.clone());
        let lhs = normalize_slots(&coproduct(&pi(*k, &x)?), AlgebraId::R)?;
        let rhs = normalize_slots(&coproduct(&x), AlgebraId::A2)?
            .try_map_slots(|_, t| pi(*k, &Element::monomial(t.clone())))?;
        Ok((lhs != rhs).then(|| format!("{s:?} at k={k}: {lhs:?} vs {rhs:?}")))
    });

    let grouplike = Check::from_result(
        "grouplikes (Q0)^k",
        (|| {
            for k in 1..=3 {
                let g = Element::monomial(Sequence::zeros(k));
                let mut want = TensorElement::zero(2);
                want.toggle(vec![Sequence::zeros(k), Sequence::zeros(k)]);
                if coproduct(&g) != want || augmentation(&g) != 1 {
                    return Ok((false, format!("k={k}")));
                }
                if iterated_coproduct(&g, 3)?.len() != 1 {
                    return Ok((false, format!("k={k}, arity 3")));
                }
            }
            Ok((true, "k <= 3".to_string()))
        })(),
    );
    let primitives = Check::from_result(
        "primitive dimensions",
        (|| {
            for k in 1..=3usize {
                for d in 1..=4u32 {
                    let dim = primitive_dimension(k, d)?;
                    let want = if d == 1 { k } else { 0 };
                    if dim != want {
                        return Ok((
                            false,
                            format!("k={k} d={d}: {dim} primitives, expected {want}"),
                        ));
                    }
                }
            }
            Ok((true, "k <= 3, degrees 1..=4".to_string()))
        })(),
    );
    vec![
        coassoc, counit, mult, phi_law, pi_law, grouplike, primitives,
    ]
}

/// Dimension of the primitives of `F₀[k]` in degree `d`, as the nullity of
/// `x ↦ ψx + x⊗g + g⊗x` on the monomial basis.
pub fn primitive_dimension(k: usize, d: u32) -> Result<usize> {
    let monos = compositions(k, d);
    let g = Sequence::zeros(k);
    let mut images = Vec::with_capacity(monos.len());
    let mut targets: Vec<Vec<Sequence>> = Vec::new();
    for m in &monos {
        let mut t = coproduct(&Element::monomial(m.clone()));
        t.toggle(vec![m.clone(), g.clone()]);
        t.toggle(vec![g.clone(), m.clone()]);
        let terms: Vec<Vec<Sequence>> = t.terms().map(<[Sequence]>::to_vec).collect();
        for term in &terms {
            if !targets.contains(term) {
                targets.push(term.clone());
            }
        }
        images.push(terms);
    }
    let mut matrix = BitMatrix::zeros(targets.len(), monos.len());
    for (c, terms) in images.iter().enumerate() {
        for term in terms {
            let r = targets
                .iter()
                .position(|t| t == term)
                .expect("collected above");
            matrix.flip(r, c);
        }
    }
    Ok(matrix.nullity())
}

fn rewriting_order(exec: Exec) -> Vec<Check> {
    let mut inadmissible = Vec::new();
    for d in 0..=12u32 {
        for s in compositions(2, d) {
            if !is_admissible(&s, AlgebraId::A2).unwrap_or(true) {
                inadmissible.push(s);
            }
        }
    }
    let decrease = sweep(
        "a2 rewriting strictly decreases",
        exec,
        &inadmissible,
        |s| {
            let out = normalize(&Element::monomial(s.clone()), AlgebraId::A2)?;
            let bad = out
                .terms()
                .find(|t| *t >= s)
                .map(|t| format!("{s:?} -> {t:?}"));
            Ok(bad)
        },
    );
    let lift_inputs: Vec<(usize, Sequence)> = match r_basis_upto(3, 16) {
        Ok(v) => v.into_iter().filter(|(_, s)| s.degree() > 0).collect(),
        Err(e) => return vec![decrease, Check::new("basis", false, e.to_string())],
    };
    let increase = sweep(
        "homology extras strictly increase",
        exec,
        &lift_inputs,
        |(k, s)| {
            let image = pi(*k, &Element::monomial(lift_seed(s)?))?;
            if !image.contains(s) {
                return Ok(Some(format!(
                    "pi(J({s:?})) = {} misses {s:?}",
                    show(&image)
                )));
            }
            let bad = image
                .terms()
                .find(|t| *t < s)
                .map(|t| format!("J({s:?}) has smaller extra {t:?}"));
            Ok(bad)
        },
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let triples: Vec<[u32; 3]> = (0..200)
        .map(|_| {
            let a = rng.gen_range(0..=12);
            let b = rng.gen_range(0..=12 - a);
            let c = rng.gen_range(0..=12 - a - b);
            [a, b, c]
        })
        .collect();
    let assoc: Vec<Check> = [AlgebraId::A2, AlgebraId::R]
        .into_iter()
        .map(|alg| {
            sweep(
                &format!("associativity in {alg}"),
                exec,
                &triples,
                |&[a, b, c]| {
                    let q = |i: u32| el(&[&[i]]);
                    let ab = normalize(&multiply(&q(a), &q(b)), alg)?;
                    let bc = normalize(&multiply(&q(b), &q(c)), alg)?;
                    let lhs = normalize(&multiply(&ab, &q(c)), alg)?;
                    let rhs = normalize(&multiply(&q(a), &bc), alg)?;
                    Ok((lhs != rhs)
                        .then(|| format!("Q{a} Q{b} Q{c}: {} vs {}", show(&lhs), show(&rhs))))
                },
            )
        })
        .collect();
    let mut out = vec![decrease, increase];
    out.extend(assoc);
    out
}
