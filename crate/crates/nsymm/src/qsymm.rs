//! Quasisymmetric functions on the composition basis: the overlapping
//! shuffle product (two implementations that cross-check each other), the
//! cut comultiplication, the Frobenius maps, and the duality pairing with
//! `NSymm`.
//!
//! The two-fold product walks both words and at each step takes a part from
//! the left word, a part from the right word, or the sum of both; every walk
//! contributes one term. The k-fold product enumerates row matrices padded
//! with zeros and no all-zero column, summing columns. Both descriptions
//! count the same terms and the k-fold form is asserted against the
//! iterated two-fold one.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::ncpoly::{Host, Int, NcPoly, TensorPoly};
use crate::words::Composition;

/// Finitely supported integer combination of compositions; the empty
/// composition is the unit.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QElem {
    terms: BTreeMap<Composition, Int>,
}

impl QElem {
    pub fn zero() -> Self {
        QElem { terms: BTreeMap::new() }
    }

    pub fn unit() -> Self {
        QElem::from_composition(&Composition::empty())
    }

    pub fn from_composition(c: &Composition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(c.clone(), Int::one());
        QElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, c: &Composition) -> Int {
        self.terms.get(c).cloned().unwrap_or_else(Int::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Int)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, c: Composition, v: Int) {
        if v.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(c) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &QElem) -> QElem {
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &QElem) -> QElem {
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), -v.clone());
        }
        out
    }

    pub fn scale(&self, k: &Int) -> QElem {
        if k.is_zero() {
            return QElem::zero();
        }
        QElem {
            terms: self.terms.iter().map(|(c, v)| (c.clone(), v * k)).collect(),
        }
    }

    /// Bilinear extension of the overlapping shuffle.
    pub fn mul(&self, other: &QElem) -> QElem {
        let mut out = QElem::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let prod = osh_mul(a, b);
                for (c, v) in prod.terms {
                    out.add_term(c, v * ca * cb);
                }
            }
        }
        out
    }

    /// Sum of coefficients; with products of plain compositions this counts
    /// the terms with multiplicity.
    pub fn coefficient_sum(&self) -> Int {
        let mut s = Int::zero();
        for v in self.terms.values() {
            s += v;
        }
        s
    }

    /// All coefficients divisible by `m`.
    pub fn divisible_by(&self, m: u32) -> bool {
        let m = Int::from(m);
        self.terms.values().all(|v| (v % &m).is_zero())
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, v)) in self.terms.iter().enumerate() {
            let mag = v.abs();
            if i == 0 {
                if v.is_negative() {
                    write!(f, "-")?;
                }
            } else if v.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{mag}*{c}")?;
            }
        }
        Ok(())
    }
}

/// Overlapping shuffle of two compositions by the three-way walk.
pub fn osh_mul(a: &Composition, b: &Composition) -> QElem {
    fn rec(ap: &[u32], bp: &[u32], cur: &mut Vec<u32>, out: &mut QElem) {
        if ap.is_empty() && bp.is_empty() {
            out.add_term(Composition::new(cur.clone()), Int::one());
            return;
        }
        if let Some((&a0, rest)) = ap.split_first() {
            cur.push(a0);
            rec(rest, bp, cur, out);
            cur.pop();
        }
        if let Some((&b0, rest)) = bp.split_first() {
            cur.push(b0);
            rec(ap, rest, cur, out);
            cur.pop();
        }
        if let (Some((&a0, ra)), Some((&b0, rb))) = (ap.split_first(), bp.split_first()) {
            cur.push(a0 + b0);
            rec(ra, rb, cur, out);
            cur.pop();
        }
    }
    let mut out = QElem::zero();
    let mut cur = Vec::new();
    rec(a.parts(), b.parts(), &mut cur, &mut out);
    out
}

/// k-fold overlapping shuffle by matrix enumeration: each term is the
/// column-sum composition of a matrix whose row `i` holds `words[i]` in
/// order padded with zeros and which has no all-zero column. Asserted to
/// agree with the iterated two-fold product.
pub fn osh_mul_multi(words: &[Composition]) -> QElem {
    fn rec(words: &[Composition], pos: &mut Vec<usize>, cur: &mut Vec<u32>, out: &mut QElem) {
        let active: Vec<usize> = (0..words.len()).filter(|&i| pos[i] < words[i].len()).collect();
        if active.is_empty() {
            out.add_term(Composition::new(cur.clone()), Int::one());
            return;
        }
        // Every nonempty subset of the active rows advances into the next
        // column.
        for mask in 1u32..(1 << active.len()) {
            let mut sum = 0;
            for (bit, &row) in active.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    sum += words[row].parts()[pos[row]];
                    pos[row] += 1;
                }
            }
            cur.push(sum);
            rec(words, pos, cur, out);
            cur.pop();
            for (bit, &row) in active.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    pos[row] -= 1;
                }
            }
        }
    }
    let mut out = QElem::zero();
    let mut pos = vec![0usize; words.len()];
    let mut cur = Vec::new();
    rec(words, &mut pos, &mut cur, &mut out);
    if words.is_empty() {
        out = QElem::unit();
    }

    let mut iterated = QElem::unit();
    for w in words {
        iterated = iterated.mul(&QElem::from_composition(w));
    }
    assert_eq!(out, iterated, "matrix and iterated shuffle products disagree");
    out
}

/// Cut comultiplication: all ways of splitting the word in two.
pub fn cut_comul(c: &Composition) -> Vec<(Composition, Composition)> {
    (0..=c.len())
        .map(|i| {
            (
                Composition::new(c.parts()[..i].to_vec()),
                Composition::new(c.parts()[i..].to_vec()),
            )
        })
        .collect()
}

/// Frobenius `f_n`: every part multiplied by `n`.
pub fn frobenius(n: u32, c: &Composition) -> Composition {
    assert!(n >= 1);
    c.scale(n)
}

/// Duality pairing: `Z_alpha` against the composition basis is a Kronecker
/// delta.
pub fn pairing(p: &NcPoly, q: &QElem) -> Int {
    assert_eq!(p.host(), Host::NSymm, "pairing is defined against NSymm");
    let mut acc = Int::zero();
    for (w, c) in p.terms() {
        let comp = w.to_composition();
        let qc = q.coeff(&comp);
        if !qc.is_zero() {
            acc += c * qc;
        }
    }
    acc
}

/// Pairing of a tensor against `alpha (x) beta`.
pub fn pairing2(t: &TensorPoly, a: &Composition, b: &Composition) -> Int {
    let mut acc = Int::zero();
    for ((wa, wb), c) in t.terms() {
        if wa.to_composition() == *a && wb.to_composition() == *b {
            acc += c;
        }
    }
    acc
}

/// `f_p(alpha) = alpha^p mod p`: the p-th shuffle power minus the Frobenius
/// image has all coefficients divisible by `p`.
pub fn check_fp_power(p: u32, alpha: &Composition) -> bool {
    let mut power = QElem::unit();
    for _ in 0..p {
        power = power.mul(&QElem::from_composition(alpha));
    }
    let rest = power.sub(&QElem::from_composition(&frobenius(p, alpha)));
    rest.divisible_by(p)
}

/// Number of walks: `sum_k (m+n-k)! / ((m-k)! (n-k)! k!)`.
pub fn osh_term_count(m: usize, n: usize) -> Int {
    let fact = |k: usize| -> Int {
        let mut f = Int::one();
        for i in 2..=k {
            f *= Int::from(i as u64);
        }
        f
    };
    let mut total = Int::zero();
    for k in 0..=m.min(n) {
        total += fact(m + n - k) / (fact(m - k) * fact(n - k) * fact(k));
    }
    total
}
