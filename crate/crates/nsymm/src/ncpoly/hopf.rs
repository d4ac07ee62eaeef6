//! Hopf-algebra structure maps of `NSymm` and `2NSymm`: comultiplication,
//! counit, antipode, Verschiebung endomorphisms, word reversal, letterwise
//! substitution and the iterated coproduct.
//!
//! The comultiplication is the algebra morphism with
//! `mu(Z_n) = sum_{i+j=n} Z_i (x) Z_j` (with `Z_0 = 1`), and the same shape
//! on the `X` and `Y` letters of `2NSymm`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{Host, Int, Letter, MultiTensor, NcPoly, Tag, TensorPoly, Word};

/// `mu` of a single letter: `sum_{i+j=n} L_i (x) L_j`, index 0 meaning the
/// empty word.
fn mu_letter(host: Host, l: Letter) -> TensorPoly {
    let mut t = TensorPoly::zero(host);
    for i in 0..=l.index {
        let j = l.index - i;
        let left = if i == 0 {
            Word::empty()
        } else {
            Word::one_letter(Letter { index: i, tag: l.tag })
        };
        let right = if j == 0 {
            Word::empty()
        } else {
            Word::one_letter(Letter { index: j, tag: l.tag })
        };
        t.add_term(left, right, Int::one());
    }
    t
}

/// Comultiplication, extended multiplicatively over words and linearly over
/// terms.
pub fn mu(p: &NcPoly) -> TensorPoly {
    let host = p.host();
    let mut out = TensorPoly::zero(host);
    for (w, c) in p.terms() {
        let mut acc = TensorPoly::one(host);
        for &l in &w.0 {
            acc = acc.mul(&mu_letter(host, l));
        }
        for ((a, b), v) in acc.terms() {
            out.add_term(a.clone(), b.clone(), v * c);
        }
    }
    out
}

/// Coefficient of the empty word.
pub fn counit(p: &NcPoly) -> Int {
    p.constant_term()
}

/// True iff `mu(p) = 1 (x) p + p (x) 1` and `p` has no constant term.
pub fn is_primitive(p: &NcPoly) -> bool {
    if !counit(p).is_zero() {
        return false;
    }
    let expected = TensorPoly::of(&NcPoly::one(p.host()), p).add(&TensorPoly::of(p, &NcPoly::one(p.host())));
    mu(p).sub(&expected).is_zero()
}

/// Antipode. On a generator the graded-connected recursion
/// `iota(L_n) = -L_n - sum_{0<i<n} iota(L_i) L_{n-i}` applies; on words it
/// extends as an algebra anti-morphism.
pub fn antipode(p: &NcPoly) -> NcPoly {
    let host = p.host();
    let mut cache: HashMap<Letter, NcPoly> = HashMap::new();
    fn letter_antipode(host: Host, l: Letter, cache: &mut HashMap<Letter, NcPoly>) -> NcPoly {
        if let Some(v) = cache.get(&l) {
            return v.clone();
        }
        let gen = |i: u32| NcPoly::monomial(host, Word::one_letter(Letter { index: i, tag: l.tag }), Int::one());
        let mut acc = -&gen(l.index);
        for i in 1..l.index {
            let rec = letter_antipode(host, Letter { index: i, tag: l.tag }, cache);
            acc = &acc - &(&rec * &gen(l.index - i));
        }
        cache.insert(l, acc.clone());
        acc
    }
    let mut out = NcPoly::zero(host);
    for (w, c) in p.terms() {
        let mut acc = NcPoly::constant(host, c.clone());
        for &l in w.0.iter().rev() {
            acc = &acc * &letter_antipode(host, l, &mut cache);
        }
        out += &acc;
    }
    out
}

/// Verschiebung `V_r`: the algebra endomorphism with `V_r(L_n) = L_{n/r}`
/// when `r | n` and `0` otherwise.
pub fn verschiebung(r: u32, p: &NcPoly) -> NcPoly {
    assert!(r >= 1);
    let mut out = NcPoly::zero(p.host());
    'term: for (w, c) in p.terms() {
        let mut mapped = Vec::with_capacity(w.len());
        for &l in &w.0 {
            if l.index % r != 0 {
                continue 'term;
            }
            mapped.push(Letter { index: l.index / r, tag: l.tag });
        }
        out += &NcPoly::monomial(p.host(), Word(mapped), c.clone());
    }
    out
}

/// The algebra anti-isomorphism reversing each word.
pub fn reverse(p: &NcPoly) -> NcPoly {
    NcPoly::from_terms(p.host(), p.terms().map(|(w, c)| (w.reversed(), c.clone())))
}

/// Exchanges the X and Y alphabets (2NSymm only).
pub fn swap_xy(p: &NcPoly) -> NcPoly {
    assert_eq!(p.host(), Host::TwoNSymm);
    NcPoly::from_terms(
        p.host(),
        p.terms().map(|(w, c)| {
            let flipped = Word(
                w.0.iter()
                    .map(|l| Letter {
                        index: l.index,
                        tag: match l.tag {
                            Tag::X => Tag::Y,
                            Tag::Y => Tag::X,
                            Tag::Z => Tag::Z,
                        },
                    })
                    .collect(),
            );
            (flipped, c.clone())
        }),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingAssignment(pub Letter);

impl std::fmt::Display for MissingAssignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "no substitution image for letter {}", self.0)
    }
}

impl std::error::Error for MissingAssignment {}

/// Algebra-morphism extension of a letterwise assignment. All images must
/// live in `target`; a letter without an image is an error.
pub fn substitute<F>(p: &NcPoly, target: Host, assign: F) -> Result<NcPoly, MissingAssignment>
where
    F: Fn(Letter) -> Option<NcPoly>,
{
    let mut out = NcPoly::zero(target);
    let mut cache: HashMap<Letter, NcPoly> = HashMap::new();
    for (w, c) in p.terms() {
        let mut acc = NcPoly::constant(target, c.clone());
        for &l in &w.0 {
            let image = match cache.get(&l) {
                Some(img) => img.clone(),
                None => {
                    let img = assign(l).ok_or(MissingAssignment(l))?;
                    assert_eq!(img.host(), target, "substitution image in wrong host");
                    cache.insert(l, img.clone());
                    img
                }
            };
            acc = &acc * &image;
        }
        out += &acc;
    }
    Ok(out)
}

/// Iterated coproduct: rank 2 is `mu`, and each further step expands the
/// last slot.
pub fn iterated_coproduct(k: usize, p: &NcPoly) -> MultiTensor {
    assert!(k >= 2, "the iterated coproduct needs rank >= 2");
    let mut cur = MultiTensor::from_tensor(&mu(p));
    for _ in 3..=k {
        cur = expand_last(&cur);
    }
    cur
}

/// Applies `mu` to the last slot of each term, raising the rank by one.
pub fn expand_last(t: &MultiTensor) -> MultiTensor {
    let host = t.host();
    let mut out = MultiTensor::zero(host, t.rank() + 1);
    for (slots, c) in t.terms() {
        let last = slots.last().expect("rank >= 1");
        let expanded = mu(&NcPoly::monomial(host, last.clone(), Int::one()));
        for ((a, b), v) in expanded.terms() {
            let mut next = slots[..slots.len() - 1].to_vec();
            next.push(a.clone());
            next.push(b.clone());
            out.add_term(next, c * v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn zw(v: &[u32]) -> Word {
        Word(v.iter().map(|&i| Letter::z(i)).collect())
    }

    #[test]
    fn mu_generator_examples() {
        let m1 = mu(&NcPoly::z(1));
        assert_eq!(m1.coeff(&Word::empty(), &zw(&[1])), int(1));
        assert_eq!(m1.coeff(&zw(&[1]), &Word::empty()), int(1));
        assert_eq!(m1.terms().count(), 2);

        let m2 = mu(&NcPoly::z(2));
        assert_eq!(m2.coeff(&zw(&[1]), &zw(&[1])), int(1));
        assert_eq!(m2.coeff(&Word::empty(), &zw(&[2])), int(1));
        assert_eq!(m2.coeff(&zw(&[2]), &Word::empty()), int(1));
        assert_eq!(m2.terms().count(), 3);

        // mu(Z1*Z1) = square of mu(Z1): middle coefficient 2.
        let sq = mu(&(&NcPoly::z(1) * &NcPoly::z(1)));
        assert_eq!(sq.coeff(&zw(&[1]), &zw(&[1])), int(2));
        assert_eq!(sq.coeff(&Word::empty(), &zw(&[1, 1])), int(1));
        assert_eq!(sq.coeff(&zw(&[1, 1]), &Word::empty()), int(1));
        assert_eq!(sq.terms().count(), 3);
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&NcPoly::z(1)));
        assert!(!is_primitive(&NcPoly::z(2)));
        let p2 = &NcPoly::z(2).scale_i64(2) - &(&NcPoly::z(1) * &NcPoly::z(1));
        assert!(is_primitive(&p2));
        assert!(!is_primitive(&NcPoly::one(Host::NSymm)));
    }

    #[test]
    fn counit_and_antipode_examples() {
        let p = &NcPoly::constant(Host::NSymm, int(3)) + &NcPoly::z(1);
        assert_eq!(counit(&p), int(3));

        assert_eq!(antipode(&NcPoly::z(1)),up(-1, &[1]));
        let i2 = antipode(&NcPoly::z(2));
        let expected = &up(-1, &[2]) + &NcPoly::monomial(Host::NSymm, zw(&[1, 1]), int(1));
        assert_eq!(i2, expected);
    }

    fn up(c: i64, idx: &[u32]) -> NcPoly {
        NcPoly::monomial(Host::NSymm, zw(idx), int(c))
    }

    #[test]
    fn antipode_axiom_on_generators() {
        // m(iota (x) id) mu (Z_n) = 0 for n >= 1.
        for n in 1..=6u32 {
            let m = mu(&NcPoly::z(n));
            let mut acc = NcPoly::zero(Host::NSymm);
            for ((a, b), c) in m.terms() {
                let ia = antipode(&NcPoly::monomial(Host::NSymm, a.clone(), c.clone()));
                acc += &(&ia * &NcPoly::monomial(Host::NSymm, b.clone(), int(1)));
            }
            assert!(acc.is_zero(), "antipode axiom fails at Z_{n}");
        }
    }

    #[test]
    fn verschiebung_examples() {
        assert_eq!(verschiebung(2, &NcPoly::z(4)), NcPoly::z(2));
        assert!(verschiebung(2, &NcPoly::z(3)).is_zero());
        let p = &NcPoly::z(2) * &NcPoly::z(4);
        assert_eq!(verschiebung(2, &p), &NcPoly::z(1) * &NcPoly::z(2));
    }

    #[test]
    fn verschiebung_composes() {
        for n in 1..=12u32 {
            for r in 2..=3u32 {
                for s in 2..=3u32 {
                    assert_eq!(
                        verschiebung(r, &verschiebung(s, &NcPoly::z(n))),
                        verschiebung(r * s, &NcPoly::z(n))
                    );
                }
            }
        }
    }

    #[test]
    fn reverse_examples() {
        let p = NcPoly::monomial(Host::NSymm, zw(&[1, 3, 2]), int(1));
        assert_eq!(reverse(&p), NcPoly::monomial(Host::NSymm, zw(&[2, 3, 1]), int(1)));
        assert_eq!(reverse(&NcPoly::z(5)), NcPoly::z(5));
        let c = NcPoly::x(1).commutator(&NcPoly::y(1));
        assert_eq!(reverse(&c), -&c);
    }

    #[test]
    fn substitute_examples() {
        let p = &NcPoly::z(1) * &NcPoly::z(2);
        let id = substitute(&p, Host::NSymm, |l| Some(NcPoly::z(l.index))).unwrap();
        assert_eq!(id, p);

        let assign = |l: Letter| Some(NcPoly::z(l.index));
        let c11 = NcPoly::x(1).commutator(&NcPoly::y(1));
        assert!(substitute(&c11, Host::NSymm, assign).unwrap().is_zero());

        let c12 = NcPoly::x(1).commutator(&NcPoly::y(2));
        let expect = NcPoly::z(1).commutator(&NcPoly::z(2));
        assert_eq!(substitute(&c12, Host::NSymm, assign).unwrap(), expect);

        let err = substitute(&NcPoly::z(3), Host::NSymm, |l| {
            (l.index <= 2).then(|| NcPoly::z(l.index))
        });
        assert!(err.is_err());
    }

    #[test]
    fn iterated_coproduct_examples() {
        let t = iterated_coproduct(3, &NcPoly::z(1));
        let e = Word::empty();
        assert_eq!(t.coeff(&[e.clone(), e.clone(), zw(&[1])]), int(1));
        assert_eq!(t.coeff(&[e.clone(), zw(&[1]), e.clone()]), int(1));
        assert_eq!(t.coeff(&[zw(&[1]), e.clone(), e.clone()]), int(1));
        assert_eq!(t.terms().count(), 3);

        let t2 = iterated_coproduct(3, &NcPoly::z(2));
        assert_eq!(t2.terms().count(), 6);
        assert_eq!(t2.coeff(&[zw(&[1]), zw(&[1]), e.clone()]), int(1));
    }

    #[test]
    #[should_panic(expected = "rank >= 2")]
    fn iterated_coproduct_rejects_rank_one() {
        iterated_coproduct(1, &NcPoly::z(2));
    }

    #[test]
    fn rank_two_iteration_is_mu() {
        let mut rng = crate::rng::Rng::new(11);
        for _ in 0..100 {
            let p = random_poly(&mut rng, 5);
            assert_eq!(iterated_coproduct(2, &p), MultiTensor::from_tensor(&mu(&p)));
        }
    }

    fn random_poly(rng: &mut crate::rng::Rng, max_weight: u32) -> NcPoly {
        let mut p = NcPoly::zero(Host::NSymm);
        for _ in 0..4 {
            let mut rest = rng.below(max_weight as u64 + 1) as u32;
            let mut letters = Vec::new();
            while rest > 0 {
                let part = rng.below(rest as u64) as u32 + 1;
                letters.push(Letter::z(part));
                rest -= part;
            }
            p += &NcPoly::monomial(Host::NSymm, Word(letters), int(rng.range(-3, 3)));
        }
        p
    }

    #[test]
    fn coassociativity_and_counit_axioms() {
        let mut rng = crate::rng::Rng::new(5);
        let mut samples: Vec<NcPoly> = (1..=6).map(NcPoly::z).collect();
        for _ in 0..50 {
            samples.push(random_poly(&mut rng, 5));
        }
        for p in &samples {
            // (mu (x) id) mu = (id (x) mu) mu, both as rank-3 tensors.
            let left = expand_first(&MultiTensor::from_tensor(&mu(p)));
            let right = expand_last(&MultiTensor::from_tensor(&mu(p)));
            assert_eq!(left, right, "coassociativity fails on {p}");

            // (eps (x) id) mu = id = (id (x) eps) mu.
            let m = mu(p);
            assert_eq!(&m.contract_counit(0), p);
            assert_eq!(&m.contract_counit(1), p);
        }
    }

    fn expand_first(t: &MultiTensor) -> MultiTensor {
        // Companion of expand_last for the coassociativity test only.
        let host = t.host();
        let mut out = MultiTensor::zero(host, t.rank() + 1);
        for (slots, c) in t.terms() {
            let first = &slots[0];
            let expanded = mu(&NcPoly::monomial(host, first.clone(), Int::one()));
            for ((a, b), v) in expanded.terms() {
                let mut next = vec![a.clone(), b.clone()];
                next.extend_from_slice(&slots[1..]);
                out.add_term(next, c * v);
            }
        }
        out
    }

    #[test]
    fn antipode_axiom_random() {
        let mut rng = crate::rng::Rng::new(9);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 4);
            let m = mu(&p);
            let mut acc = NcPoly::zero(Host::NSymm);
            for ((a, b), c) in m.terms() {
                let ia = antipode(&NcPoly::monomial(Host::NSymm, a.clone(), c.clone()));
                acc += &(&ia * &NcPoly::monomial(Host::NSymm, b.clone(), int(1)));
            }
            assert_eq!(acc, NcPoly::constant(Host::NSymm, counit(&p)));
        }
    }

    #[test]
    fn mu_is_algebra_morphism() {
        let mut rng = crate::rng::Rng::new(13);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 4);
            let q = random_poly(&mut rng, 4);
            assert_eq!(mu(&(&p * &q)), mu(&p).mul(&mu(&q)));
        }
    }

    #[test]
    fn reverse_is_involutive_and_anti_multiplicative() {
        let mut rng = crate::rng::Rng::new(17);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 4);
            let q = random_poly(&mut rng, 4);
            assert_eq!(reverse(&reverse(&p)), p);
            assert_eq!(reverse(&(&p * &q)), &reverse(&q) * &reverse(&p));
        }
    }
}
