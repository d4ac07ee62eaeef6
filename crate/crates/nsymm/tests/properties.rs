//! Randomized algebraic laws over the public API.

use proptest::prelude::*;

use nsymm::ncpoly::hopf::{antipode, counit, mu, reverse};
use nsymm::qsymm::{osh_mul, QElem};
use nsymm::words::Composition;
use nsymm::zlattice::{smith_normal_form, IntMatrix};
use nsymm::{int, Host, Letter, NcPoly, Word};

fn composition_strategy(max_weight: u32) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1u32..=3, 0..=3).prop_map(move |mut parts| {
        let mut total = 0;
        parts.retain(|&p| {
            total += p;
            total <= max_weight
        });
        Composition::new(parts)
    })
}

fn poly_strategy(max_weight: u32) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((composition_strategy(max_weight), -4i64..=4), 0..=4).prop_map(|terms| {
        let mut p = NcPoly::zero(Host::NSymm);
        for (c, coeff) in terms {
            let word = Word(c.parts().iter().map(|&i| Letter::z(i)).collect());
            p += &NcPoly::monomial(Host::NSymm, word, int(coeff));
        }
        p
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly_strategy(4), b in poly_strategy(4), c in poly_strategy(4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn comultiplication_is_multiplicative(a in poly_strategy(3), b in poly_strategy(3)) {
        prop_assert_eq!(mu(&(&a * &b)), mu(&a).mul(&mu(&b)));
    }

    #[test]
    fn antipode_axiom(a in poly_strategy(3)) {
        let m = mu(&a);
        let mut acc = NcPoly::zero(Host::NSymm);
        for ((l, r), c) in m.terms() {
            let il = antipode(&NcPoly::monomial(Host::NSymm, l.clone(), c.clone()));
            acc += &(&il * &NcPoly::monomial(Host::NSymm, r.clone(), int(1)));
        }
        prop_assert_eq!(acc, NcPoly::constant(Host::NSymm, counit(&a)));
    }

    #[test]
    fn reversal_laws(a in poly_strategy(3), b in poly_strategy(3)) {
        prop_assert_eq!(reverse(&reverse(&a)), a.clone());
        prop_assert_eq!(reverse(&(&a * &b)), &reverse(&b) * &reverse(&a));
    }

    #[test]
    fn shuffle_commutes_and_respects_counts(a in composition_strategy(5), b in composition_strategy(5)) {
        let ab = osh_mul(&a, &b);
        prop_assert_eq!(ab.clone(), osh_mul(&b, &a));
        prop_assert_eq!(
            ab.coefficient_sum(),
            nsymm::qsymm::osh_term_count(a.len(), b.len())
        );
    }

    #[test]
    fn shuffle_associates(a in composition_strategy(3), b in composition_strategy(3), c in composition_strategy(3)) {
        let left = osh_mul(&a, &b).mul(&QElem::from_composition(&c));
        let right = QElem::from_composition(&a).mul(&osh_mul(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn smith_form_recomposes(entries in prop::collection::vec(-9i64..=9, 9)) {
        let m = IntMatrix::from_rows(
            entries.chunks(3).map(|r| r.iter().map(|&v| int(v)).collect()).collect(),
        );
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        let fs = snf.invariant_factors();
        for w in fs.windows(2) {
            prop_assert!((&w[1] % &w[0]) == int(0));
        }
    }

    #[test]
    fn poly_json_roundtrip(a in poly_strategy(4)) {
        let v = nsymm::json::poly_to_json(&a);
        prop_assert_eq!(nsymm::json::poly_from_json(&v).unwrap(), a);
    }

    #[test]
    fn composition_text_roundtrip(c in composition_strategy(6)) {
        let s = c.to_string();
        prop_assert_eq!(s.parse::<Composition>().unwrap(), c);
    }
}
