//! The Lyndon-indexed basis of primitives of `NSymm`.
//!
//! To a Lyndon word `alpha` belong a gcd `g(alpha)`, a curve `d_alpha`, and
//! the primitive `P_alpha = P_{g(alpha)}(d_alpha)`:
//!
//! - `d_[n]` is the natural curve `(1, Z_1, Z_2, ...)` for every single
//!   letter;
//! - for longer words, split `alpha = alpha' . alpha''` at the
//!   lexicographically smallest proper tail, put `a = g(alpha')/g(alpha)`
//!   and `b = g(alpha'')/g(alpha)`, and substitute `(d_alpha', d_alpha'')`
//!   into the commutator ray factor in direction `(a, b)`.
//!
//! Every primitive sits on top of a curve: `d_alpha` itself when
//! `g(alpha) = 1`, otherwise the direction-`(1, g-1)` ray of the addition
//! decomposition evaluated on `d_alpha`.
//!
//! The wll-least monomial of `P_alpha` is `g(alpha) * Z_alpha`, which makes
//! the basis matrix triangular on the Lyndon columns and drives the index
//! computation of the free Lie subalgebra generated by the `P_n`: the index
//! at weight `n` comes out of the Smith form of the change-of-basis matrix
//! and independently as the product of `k(alpha)/g(alpha)` over Lyndon
//! words of weight `n`.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::curves::{ray_curve, Curve, RayWeight};
use crate::isobaric::{newton_p, IsobaricTable, TableKind};
use crate::ncpoly::hopf::{substitute, verschiebung};
use crate::ncpoly::{Int, NcPoly, Word};
use crate::words::{compositions, enumerate_lyndon, Composition};
use crate::zlattice::{lattice_index, IntMatrix, LatticeIndex};

/// A Lyndon word's primitive with the curves over it.
#[derive(Clone, Debug)]
pub struct LyndonPrimitive {
    pub alpha: Composition,
    pub gcd: u32,
    pub d_alpha: Curve,
    pub primitive: NcPoly,
    pub over_curve: Curve,
}

/// Memoized builder for the Lyndon primitives and everything derived from
/// them. Single-threaded by design: complete an engine first, then share
/// its immutable outputs.
pub struct Engine {
    l_table: IsobaricTable,
    n_table: IsobaricTable,
    d_memo: HashMap<Composition, Curve>,
    p_memo: HashMap<Composition, NcPoly>,
    bracket_memo: HashMap<Composition, NcPoly>,
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            l_table: IsobaricTable::build(TableKind::LWl, 1),
            n_table: IsobaricTable::build(TableKind::NWl, 1),
            d_memo: HashMap::new(),
            p_memo: HashMap::new(),
            bracket_memo: HashMap::new(),
        }
    }

    /// Read access to the commutator table, grown to at least `weight`.
    pub fn l_table(&mut self, weight: u32) -> &IsobaricTable {
        self.l_table.ensure(weight);
        &self.l_table
    }

    /// Read access to the addition table, grown to at least `weight`.
    pub fn n_table(&mut self, weight: u32) -> &IsobaricTable {
        self.n_table.ensure(weight);
        &self.n_table
    }

    /// The curve `d_alpha`, truncated at `bound`.
    pub fn d_curve(&mut self, alpha: &Composition, bound: u32) -> Curve {
        assert!(alpha.is_lyndon(), "{alpha} is not Lyndon");
        if let Some(c) = self.d_memo.get(alpha) {
            if c.bound() >= bound {
                return c.truncate(bound);
            }
        }
        let curve = if alpha.len() == 1 {
            Curve::natural_z(bound)
        } else {
            let (prefix, suffix) = alpha.canonical_factorization().expect("Lyndon, length >= 2");
            let g = alpha.parts_gcd();
            let a = prefix.parts_gcd() / g;
            let b = suffix.parts_gcd() / g;
            self.l_table.ensure(bound * (a + b));
            let dp = self.d_curve(&prefix, bound * a);
            let ds = self.d_curve(&suffix, bound * b);
            let ray = ray_curve(a, b, &self.l_table, bound);
            let d = ray.subst_pair(&dp, &ds).expect("inner curves truncated deep enough");
            assert_eq!(
                d.ray_weight(),
                Some(RayWeight::new(alpha.weight(), g)),
                "weight bookkeeping for d_{alpha}"
            );
            d
        };
        self.d_memo.insert(alpha.clone(), curve.clone());
        curve
    }

    /// `P_alpha = P_{g(alpha)}(d_alpha)`, homogeneous of weight `wt(alpha)`.
    pub fn primitive(&mut self, alpha: &Composition) -> NcPoly {
        assert!(alpha.is_lyndon(), "{alpha} is not Lyndon");
        if let Some(p) = self.p_memo.get(alpha) {
            return p.clone();
        }
        let g = alpha.parts_gcd();
        let d = self.d_curve(alpha, g);
        let p = substitute(&newton_p(g), d.host(), |l| {
            (l.index <= d.bound()).then(|| d.term(l.index))
        })
        .expect("d_alpha holds all indices up to g");
        assert!(p.is_homogeneous(alpha.weight()));
        self.p_memo.insert(alpha.clone(), p.clone());
        p
    }

    /// The isobaric curve whose first term is `P_alpha`: `d_alpha` itself
    /// when `g = 1`, otherwise the `(1, g-1)` addition ray on `d_alpha`.
    pub fn over_curve(&mut self, alpha: &Composition, bound: u32) -> Curve {
        assert!(alpha.is_lyndon(), "{alpha} is not Lyndon");
        let g = alpha.parts_gcd();
        let curve = if g == 1 {
            self.d_curve(alpha, bound)
        } else {
            self.n_table.ensure(bound * g);
            let d = self.d_curve(alpha, bound * g);
            let ray = ray_curve(1, g - 1, &self.n_table, bound);
            ray.subst_into(&d).expect("d_alpha truncated deep enough")
        };
        assert_eq!(curve.term(1), self.primitive(alpha), "over-curve must start at P_{alpha}");
        curve
    }

    /// Full bundle for one Lyndon word, curves truncated at `bound`.
    pub fn lyndon_primitive(&mut self, alpha: &Composition, bound: u32) -> LyndonPrimitive {
        let gcd = alpha.parts_gcd();
        LyndonPrimitive {
            alpha: alpha.clone(),
            gcd,
            d_alpha: self.d_curve(alpha, bound),
            primitive: self.primitive(alpha),
            over_curve: self.over_curve(alpha, bound),
        }
    }

    /// Standard bracketing of the free Lie algebra on the `P_n` along the
    /// canonical factorization: `b([n]) = P_n`,
    /// `b(alpha) = [b(alpha'), b(alpha'')]`.
    pub fn fl_bracket(&mut self, alpha: &Composition) -> NcPoly {
        assert!(alpha.is_lyndon(), "{alpha} is not Lyndon");
        if let Some(b) = self.bracket_memo.get(alpha) {
            return b.clone();
        }
        let b = if alpha.len() == 1 {
            newton_p(alpha.weight())
        } else {
            let (prefix, suffix) = alpha.canonical_factorization().expect("Lyndon, length >= 2");
            let bp = self.fl_bracket(&prefix);
            let bs = self.fl_bracket(&suffix);
            bp.commutator(&bs)
        };
        assert!(b.is_homogeneous(alpha.weight()));
        self.bracket_memo.insert(alpha.clone(), b.clone());
        b
    }

    /// `V_r(P_alpha)` with the dichotomy asserted: `r * P_{alpha/r}` when
    /// `r` divides `g(alpha)`, zero otherwise.
    pub fn verschiebung_on_primitive(&mut self, r: u32, alpha: &Composition) -> NcPoly {
        let p = self.primitive(alpha);
        let image = verschiebung(r, &p);
        let g = alpha.parts_gcd();
        if g.is_multiple_of(r) {
            let smaller = alpha.unscale(r).expect("r divides every part");
            let expect = self.primitive(&smaller).scale_i64(r as i64);
            assert_eq!(image, expect, "V_{r} P_{alpha} != {r} P_{smaller}");
        } else {
            assert!(image.is_zero(), "V_{r} P_{alpha} should vanish");
        }
        image
    }

    /// Rows: `P_alpha` for `alpha` in LYN_n (wll order); columns: all
    /// compositions of weight `n` (wll order). The Lyndon-column submatrix
    /// is upper triangular with `g(alpha)` on the diagonal.
    pub fn prim_basis_matrix(&mut self, n: u32) -> IntMatrix {
        let lyndon = enumerate_lyndon(n);
        let m = self.coeff_matrix(n, Self::primitive);
        let cols = compositions(n);
        let lyndon_col: Vec<usize> = lyndon
            .iter()
            .map(|a| cols.iter().position(|c| c == a).expect("Lyndon word is a composition"))
            .collect();
        for (i, alpha) in lyndon.iter().enumerate() {
            for (j, beta) in lyndon.iter().enumerate() {
                let entry = m.get(i, lyndon_col[j]);
                if j < i {
                    assert!(entry.is_zero(), "triangularity fails at ({alpha}, {beta})");
                } else if j == i {
                    assert_eq!(entry, &Int::from(alpha.parts_gcd()), "diagonal at {alpha}");
                }
            }
        }
        m
    }

    /// Rows: the Lie brackets `b(alpha)` in the same coordinates.
    pub fn fl_basis_matrix(&mut self, n: u32) -> IntMatrix {
        self.coeff_matrix(n, Self::fl_bracket)
    }

    fn coeff_matrix(
        &mut self,
        n: u32,
        build: impl Fn(&mut Self, &Composition) -> NcPoly,
    ) -> IntMatrix {
        let cols = compositions(n);
        let rows = enumerate_lyndon(n)
            .iter()
            .map(|alpha| {
                let p = build(self, alpha);
                cols.iter().map(|c| p.coeff(&Word::from_composition(c))).collect()
            })
            .collect();
        IntMatrix::from_rows(rows)
    }

    /// Expresses every bracket through the primitives by exact triangular
    /// back-substitution on the Lyndon columns; divisions must come out
    /// integral and the expansion must reproduce the brackets on all
    /// columns.
    pub fn change_of_basis(&mut self, n: u32) -> IntMatrix {
        let lyndon = enumerate_lyndon(n);
        let k = lyndon.len();
        let cols = compositions(n);
        let lyndon_col: Vec<usize> = lyndon
            .iter()
            .map(|a| cols.iter().position(|c| c == a).expect("Lyndon word is a composition"))
            .collect();
        let mp = self.prim_basis_matrix(n);
        let mb = self.fl_basis_matrix(n);

        let mut c = IntMatrix::zero(k, k);
        for r in 0..k {
            for j in 0..k {
                // Column lyndon_col[j]: contributions from x_0..x_j.
                let mut acc = mb.get(r, lyndon_col[j]).clone();
                for i in 0..j {
                    acc -= c.get(r, i) * mp.get(i, lyndon_col[j]);
                }
                let g = Int::from(lyndon[j].parts_gcd());
                let (q, rem) = (acc.clone() / &g, acc % &g);
                assert!(rem.is_zero(), "bracket {} is not an integer combination", lyndon[r]);
                c.set(r, j, q);
            }
        }
        assert_eq!(c.mul(&mp), mb, "change of basis must reproduce the brackets");
        c
    }

    /// Index of the bracket lattice inside the primitive lattice at weight
    /// `n`, via the determinant of the change-of-basis matrix.
    pub fn index_by_determinant(&mut self, n: u32) -> Int {
        self.change_of_basis(n).det().abs()
    }

    /// Same index through the general lattice machinery: Hermite coordinates
    /// plus Smith invariant factors, no use of triangularity.
    pub fn index_by_lattice(&mut self, n: u32) -> Int {
        let mp = self.prim_basis_matrix(n);
        let mb = self.fl_basis_matrix(n);
        match lattice_index(&mb, &mp).expect("brackets lie in the primitive lattice") {
            LatticeIndex::Finite(v) => v,
            LatticeIndex::Infinite => panic!("bracket lattice lost rank at weight {n}"),
        }
    }

    /// All three routes, asserted equal.
    pub fn index_of_fl(&mut self, n: u32) -> Int {
        let det = self.index_by_determinant(n);
        let lat = self.index_by_lattice(n);
        let prod = index_by_product(n);
        assert_eq!(det, lat, "determinant and lattice routes disagree at weight {n}");
        assert_eq!(det, prod, "product formula disagrees at weight {n}");
        det
    }
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

/// `prod k(alpha)/g(alpha)` over the Lyndon words of weight `n`; each factor
/// is an exact integer.
pub fn index_by_product(n: u32) -> Int {
    let mut idx = Int::from(1);
    for alpha in enumerate_lyndon(n) {
        let k = Int::from(alpha.parts_product());
        let g = Int::from(alpha.parts_gcd());
        let (q, rem) = (k.clone() / &g, k % &g);
        assert!(rem.is_zero());
        idx *= q;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use crate::ncpoly::hopf::is_primitive;
    use crate::ncpoly::{Host, Letter};
    use crate::words::compositions;
    use crate::zlattice::hermite_normal_form;

    fn c(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn d_curve_base_and_first_substitutions() {
        let mut eng = Engine::new();
        assert_eq!(eng.d_curve(&c(&[1]), 3), Curve::natural_z(3));
        assert_eq!(eng.d_curve(&c(&[7]), 2), Curve::natural_z(2));

        let d12 = eng.d_curve(&c(&[1, 2]), 2);
        assert_eq!(d12.term(1), NcPoly::z(1).commutator(&NcPoly::z(2)));

        let d112 = eng.d_curve(&c(&[1, 1, 2]), 1);
        let z1 = NcPoly::z(1);
        assert_eq!(d112.term(1), z1.commutator(&z1.commutator(&NcPoly::z(2))));
    }

    #[test]
    fn d_curve_is_scale_invariant() {
        let mut eng = Engine::new();
        assert_eq!(eng.d_curve(&c(&[2, 4]), 2), eng.d_curve(&c(&[1, 2]), 2));
        assert_eq!(eng.d_curve(&c(&[3, 6]), 1), eng.d_curve(&c(&[1, 2]), 1));
        assert_eq!(eng.d_curve(&c(&[4]), 3), eng.d_curve(&c(&[2]), 3));
    }

    #[test]
    #[should_panic(expected = "not Lyndon")]
    fn d_curve_rejects_non_lyndon() {
        Engine::new().d_curve(&c(&[2, 1]), 1);
    }

    #[test]
    fn primitive_examples() {
        let mut eng = Engine::new();
        assert_eq!(eng.primitive(&c(&[1])), NcPoly::z(1));

        let p2 = &NcPoly::z(2).scale_i64(2) - &(&NcPoly::z(1) * &NcPoly::z(1));
        assert_eq!(eng.primitive(&c(&[2])), p2);

        assert_eq!(eng.primitive(&c(&[1, 2])), NcPoly::z(1).commutator(&NcPoly::z(2)));
    }

    #[test]
    fn primitives_are_primitive_up_to_weight_five() {
        // The full weight <= 7 sweep is an acceptance criterion.
        let mut eng = Engine::new();
        for n in 1..=5u32 {
            for alpha in enumerate_lyndon(n) {
                assert!(is_primitive(&eng.primitive(&alpha)), "P_{alpha}");
            }
        }
    }

    #[test]
    fn min_term_examples() {
        let mut eng = Engine::new();
        let p12 = eng.primitive(&c(&[1, 2]));
        let (w, coeff) = p12.min_term().unwrap();
        assert_eq!(w, &Word::from_composition(&c(&[1, 2])));
        assert_eq!(coeff, &int(1));

        let p2 = eng.primitive(&c(&[2]));
        let (w, coeff) = p2.min_term().unwrap();
        assert_eq!(w, &Word::from_composition(&c(&[2])));
        assert_eq!(coeff, &int(2));

        let d12 = eng.d_curve(&c(&[1, 2]), 2);
        let t2 = d12.term(2);
        let (w, coeff) = t2.min_term().unwrap();
        assert_eq!(w, &Word::from_composition(&c(&[2, 4])));
        assert_eq!(coeff, &int(1));
    }

    #[test]
    fn minimal_terms_across_small_weights() {
        // Least monomial of P_alpha is g(alpha) Z_alpha; least monomial of
        // d_alpha(i) is the i/g-scaled word with coefficient 1.
        let mut eng = Engine::new();
        for n in 1..=5u32 {
            for alpha in enumerate_lyndon(n) {
                let p = eng.primitive(&alpha);
                let (w, coeff) = p.min_term().unwrap();
                assert_eq!(w, &Word::from_composition(&alpha), "min word of P_{alpha}");
                assert_eq!(coeff, &Int::from(alpha.parts_gcd()), "min coeff of P_{alpha}");

                let g = alpha.parts_gcd();
                let d = eng.d_curve(&alpha, 2);
                for i in 1..=2u32 {
                    let scaled = alpha.unscale(g).unwrap().scale(i);
                    let term = d.term(i);
                    let (w, coeff) = term.min_term().unwrap();
                    assert_eq!(w, &Word::from_composition(&scaled), "min word of d_{alpha}({i})");
                    assert_eq!(coeff, &int(1));
                }
            }
        }
    }

    #[test]
    fn over_curve_examples() {
        let mut eng = Engine::new();
        let over2 = eng.over_curve(&c(&[2]), 3);
        let p2 = &NcPoly::z(2).scale_i64(2) - &(&NcPoly::z(1) * &NcPoly::z(1));
        assert_eq!(over2.term(1), p2);
        assert!(over2.is_curve());

        // g = 1: the over-curve is d_alpha itself.
        let d12 = eng.d_curve(&c(&[1, 2]), 2);
        assert_eq!(eng.over_curve(&c(&[1, 2]), 2), d12);
    }

    #[test]
    fn verschiebung_dichotomy_examples() {
        let mut eng = Engine::new();
        let v = eng.verschiebung_on_primitive(2, &c(&[2]));
        assert_eq!(v, NcPoly::z(1).scale_i64(2));

        assert!(eng.verschiebung_on_primitive(2, &c(&[1, 2])).is_zero());

        let v3 = eng.verschiebung_on_primitive(3, &c(&[3]));
        assert_eq!(v3, NcPoly::z(1).scale_i64(3));

        let v24 = eng.verschiebung_on_primitive(2, &c(&[2, 4]));
        assert_eq!(v24, eng.primitive(&c(&[1, 2])).scale_i64(2));
    }

    #[test]
    fn basis_matrix_diagonals() {
        let mut eng = Engine::new();
        // prim_basis_matrix asserts triangularity internally.
        let m2 = eng.prim_basis_matrix(2);
        assert_eq!(m2.rows(), 1);
        let m3 = eng.prim_basis_matrix(3);
        assert_eq!(m3.rows(), 2);
        let m5 = eng.prim_basis_matrix(5);
        assert_eq!(m5.rows(), 6);
        assert_eq!(m5.cols(), 16);
    }

    #[test]
    fn bracket_examples() {
        let mut eng = Engine::new();
        let p2 = &NcPoly::z(2).scale_i64(2) - &(&NcPoly::z(1) * &NcPoly::z(1));
        assert_eq!(eng.fl_bracket(&c(&[2])), p2);

        let b12 = eng.fl_bracket(&c(&[1, 2]));
        assert_eq!(b12, NcPoly::z(1).commutator(&p2));
        // [Z_1, 2 Z_2 - Z_1^2] = 2 [Z_1, Z_2].
        assert_eq!(b12, NcPoly::z(1).commutator(&NcPoly::z(2)).scale_i64(2));

        let b112 = eng.fl_bracket(&c(&[1, 1, 2]));
        assert_eq!(b112, NcPoly::z(1).commutator(&b12));
    }

    #[test]
    fn index_table_small_weights() {
        let mut eng = Engine::new();
        let expected = [1i64, 1, 2, 6, 576];
        for (i, &want) in expected.iter().enumerate() {
            let n = i as u32 + 1;
            assert_eq!(eng.index_of_fl(n), int(want), "weight {n}");
        }
    }

    #[test]
    fn product_formula_values() {
        assert_eq!(index_by_product(3), int(2));
        assert_eq!(index_by_product(5), int(576));
        assert_eq!(index_by_product(6), int(69120));
    }

    #[test]
    fn verschiebung_image_lattice_is_r_times_primitives() {
        // V_r on the weight-rn primitive lattice lands exactly on r times
        // the weight-n primitive lattice; compare Hermite forms.
        let mut eng = Engine::new();
        for r in 2..=4u32 {
            for n in 1..=(4 / r).max(1) {
                let rn = r * n;
                let cols = compositions(n);
                let image_rows: Vec<Vec<Int>> = enumerate_lyndon(rn)
                    .iter()
                    .map(|alpha| {
                        let v = verschiebung(r, &eng.primitive(alpha));
                        cols.iter().map(|c| v.coeff(&Word::from_composition(c))).collect()
                    })
                    .collect();
                let scaled_rows: Vec<Vec<Int>> = enumerate_lyndon(n)
                    .iter()
                    .map(|beta| {
                        let p = eng.primitive(beta).scale_i64(r as i64);
                        cols.iter().map(|c| p.coeff(&Word::from_composition(c))).collect()
                    })
                    .collect();
                let a = hermite_normal_form(&IntMatrix::from_rows(image_rows));
                let b = hermite_normal_form(&IntMatrix::from_rows(scaled_rows));
                assert_eq!(a, b, "r = {r}, n = {n}");
            }
        }
    }

    #[test]
    fn bundle_carries_consistent_pieces() {
        let mut eng = Engine::new();
        let alpha = c(&[2, 4]);
        let bundle = eng.lyndon_primitive(&alpha, 2);
        assert_eq!(bundle.gcd, 2);
        assert_eq!(bundle.primitive, eng.primitive(&alpha));
        assert_eq!(bundle.d_alpha, eng.d_curve(&c(&[1, 2]), 2));
        assert_eq!(bundle.over_curve.term(1), bundle.primitive);
        assert!(bundle.primitive.is_homogeneous(6));
    }

    #[test]
    fn over_curve_term_hosts() {
        let mut eng = Engine::new();
        let over = eng.over_curve(&c(&[3]), 2);
        assert_eq!(over.host(), Host::NSymm);
        assert!(over.term(2).is_homogeneous(6));
        let has_z6 = over.term(2).coeff(&Word(vec![Letter::z(6)]));
        assert!(!has_z6.is_zero());
    }
}
