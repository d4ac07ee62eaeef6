//! Noncommutative polynomials with exact integer coefficients over the
//! generator alphabets of `NSymm` (letters `Z_1, Z_2, ...`) and `2NSymm`
//! (letters `X_i` and `Y_j`), plus their tensor squares and higher tensor
//! powers.
//!
//! Term maps are kept in wll order of the words (weight, then length, then
//! letterwise), zero coefficients are dropped eagerly, and every operation is
//! pure; equality and hashing are structural. Coefficients are arbitrary
//! precision throughout: the lattice determinants downstream grow far too
//! fast for machine words.

pub mod hopf;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exec;
use crate::words::Composition;

pub type Int = num_bigint::BigInt;

/// Generator alphabet a letter belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Tag {
    Z,
    X,
    Y,
}

impl Tag {
    pub fn symbol(self) -> char {
        match self {
            Tag::Z => 'Z',
            Tag::X => 'X',
            Tag::Y => 'Y',
        }
    }
}

/// A single generator. Index 0 never occurs: `Z_0 = X_0 = Y_0 = 1` is the
/// empty word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub index: u32,
    pub tag: Tag,
}

impl Letter {
    pub fn z(index: u32) -> Self {
        assert!(index >= 1);
        Letter { index, tag: Tag::Z }
    }

    pub fn x(index: u32) -> Self {
        assert!(index >= 1);
        Letter { index, tag: Tag::X }
    }

    pub fn y(index: u32) -> Self {
        assert!(index >= 1);
        Letter { index, tag: Tag::Y }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag.symbol(), self.index)
    }
}

/// Which free algebra a polynomial lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Host {
    NSymm,
    TwoNSymm,
}

impl Host {
    pub fn admits(self, tag: Tag) -> bool {
        match self {
            Host::NSymm => tag == Tag::Z,
            Host::TwoNSymm => tag == Tag::X || tag == Tag::Y,
        }
    }
}

impl fmt::Display for Host {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Host::NSymm => write!(f, "NSymm"),
            Host::TwoNSymm => write!(f, "2NSymm"),
        }
    }
}

/// A monomial: a finite sequence of letters. Ordered by wll (weight, then
/// length, then letterwise), which makes the minimum key of a term map the
/// wll-smallest monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn one_letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|l| l.index).sum()
    }

    /// X-weight and Y-weight of a mixed word (Z letters count as X).
    pub fn biweight(&self) -> (u32, u32) {
        let mut u = 0;
        let mut v = 0;
        for l in &self.0 {
            match l.tag {
                Tag::Y => v += l.index,
                _ => u += l.index,
            }
        }
        (u, v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// Z-word from a composition.
    pub fn from_composition(c: &Composition) -> Word {
        Word(c.parts().iter().map(|&p| Letter::z(p)).collect())
    }

    /// Composition from a pure Z-word.
    pub fn to_composition(&self) -> Composition {
        assert!(self.0.iter().all(|l| l.tag == Tag::Z));
        Composition::new(self.0.iter().map(|l| l.index).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // Adjacent equal letters print as a power: Z1*Z1*Z2 -> "Z1^2*Z2".
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "{}", self.0[i])?;
            } else {
                write!(f, "{}^{}", self.0[i], j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Finitely supported integer combination of words.
#[derive(Clone, PartialEq, Eq)]
pub struct NcPoly {
    host: Host,
    terms: BTreeMap<Word, Int>,
}

fn add_term(map: &mut BTreeMap<Word, Int>, w: Word, c: Int) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

// Above this many term pairs a product is split over the chunked parallel
// path; merging the partial maps is order independent.
const MUL_PAR_PAIRS: usize = 1 << 13;

impl NcPoly {
    pub fn zero(host: Host) -> Self {
        NcPoly { host, terms: BTreeMap::new() }
    }

    pub fn one(host: Host) -> Self {
        Self::constant(host, Int::one())
    }

    pub fn constant(host: Host, c: Int) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, Word::empty(), c);
        NcPoly { host, terms }
    }

    pub fn monomial(host: Host, w: Word, c: Int) -> Self {
        for l in &w.0 {
            assert!(host.admits(l.tag), "letter {l} does not live in {host}");
        }
        let mut terms = BTreeMap::new();
        add_term(&mut terms, w, c);
        NcPoly { host, terms }
    }

    pub fn from_terms(host: Host, items: impl IntoIterator<Item = (Word, Int)>) -> Self {
        let mut p = NcPoly::zero(host);
        for (w, c) in items {
            for l in &w.0 {
                assert!(host.admits(l.tag), "letter {l} does not live in {host}");
            }
            add_term(&mut p.terms, w, c);
        }
        p
    }

    /// The generator `Z_n`.
    pub fn z(n: u32) -> Self {
        Self::monomial(Host::NSymm, Word::one_letter(Letter::z(n)), Int::one())
    }

    /// The generator `X_n`.
    pub fn x(n: u32) -> Self {
        Self::monomial(Host::TwoNSymm, Word::one_letter(Letter::x(n)), Int::one())
    }

    /// The generator `Y_n`.
    pub fn y(n: u32) -> Self {
        Self::monomial(Host::TwoNSymm, Word::one_letter(Letter::y(n)), Int::one())
    }

    /// Z-monomial `Z_{a_1} ... Z_{a_m}` of a composition, coefficient 1.
    pub fn z_monomial(c: &Composition) -> Self {
        Self::monomial(Host::NSymm, Word::from_composition(c), Int::one())
    }

    pub fn host(&self) -> Host {
        self.host
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Int {
        self.terms.get(w).cloned().unwrap_or_else(Int::zero)
    }

    pub fn constant_term(&self) -> Int {
        self.coeff(&Word::empty())
    }

    /// wll-least word with nonzero coefficient, with that coefficient.
    pub fn min_term(&self) -> Option<(&Word, &Int)> {
        self.terms.iter().next()
    }

    /// Sum of the terms of weight exactly `n`.
    pub fn graded_part(&self, n: u32) -> NcPoly {
        NcPoly {
            host: self.host,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|w| w.weight()).max().unwrap_or(0)
    }

    /// True when every term has weight `n` (the zero polynomial passes).
    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|w| w.weight() == n)
    }

    /// True when every term has X-weight `u` and Y-weight `v`.
    pub fn is_bihomogeneous(&self, u: u32, v: u32) -> bool {
        self.terms.keys().all(|w| w.biweight() == (u, v))
    }

    pub fn scale(&self, c: &Int) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(self.host);
        }
        NcPoly {
            host: self.host,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> NcPoly {
        self.scale(&Int::from(c))
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &NcPoly) -> NcPoly {
        &(self * other) - &(other * self)
    }

    fn assert_host(&self, other: &NcPoly) {
        assert!(
            self.host == other.host,
            "host mismatch: {} vs {}",
            self.host,
            other.host
        );
    }

    fn add_assign_ref(&mut self, other: &NcPoly) {
        self.assert_host(other);
        for (w, c) in &other.terms {
            add_term(&mut self.terms, w.clone(), c.clone());
        }
    }

    fn mul_ref(&self, other: &NcPoly) -> NcPoly {
        self.assert_host(other);
        let pairs = self.terms.len() * other.terms.len();
        // Splitting only pays off with real workers; the merge re-inserts
        // every term once.
        if pairs >= MUL_PAR_PAIRS && exec::parallel_enabled() && exec::threads() > 1 {
            return self.mul_chunked(other);
        }
        let mut terms = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                add_term(&mut terms, wa.concat(wb), ca * cb);
            }
        }
        NcPoly { host: self.host, terms }
    }

    /// Chunked product over the left terms; partial maps merge
    /// commutatively, so the result never depends on scheduling.
    fn mul_chunked(&self, other: &NcPoly) -> NcPoly {
        let lhs: Vec<(&Word, &Int)> = self.terms.iter().collect();
        let chunk = lhs.len().div_ceil(16).max(1);
        let chunks: Vec<&[(&Word, &Int)]> = lhs.chunks(chunk).collect();
        let partials = exec::map_collect(chunks, |part| {
            let mut map: BTreeMap<Word, Int> = BTreeMap::new();
            for (wa, ca) in part {
                for (wb, cb) in &other.terms {
                    add_term(&mut map, wa.concat(wb), *ca * cb);
                }
            }
            map
        });
        let mut terms = BTreeMap::new();
        for part in partials {
            for (w, c) in part {
                add_term(&mut terms, w, c);
            }
        }
        NcPoly { host: self.host, terms }
    }
}

impl std::ops::Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl std::ops::Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        self.assert_host(rhs);
        for (w, c) in &rhs.terms {
            add_term(&mut out.terms, w.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            host: self.host,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect(),
        }
    }
}

impl std::ops::Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.mul_ref(rhs)
    }
}

impl std::ops::AddAssign<&NcPoly> for NcPoly {
    fn add_assign(&mut self, rhs: &NcPoly) {
        self.add_assign_ref(rhs);
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer combination of pairs of words; the codomain of the
/// comultiplication.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorPoly {
    host: Host,
    terms: BTreeMap<(Word, Word), Int>,
}

impl TensorPoly {
    pub fn zero(host: Host) -> Self {
        TensorPoly { host, terms: BTreeMap::new() }
    }

    pub fn one(host: Host) -> Self {
        let mut t = Self::zero(host);
        t.add_term(Word::empty(), Word::empty(), Int::one());
        t
    }

    pub fn host(&self) -> Host {
        self.host
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Int) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &Word, b: &Word) -> Int {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Int::zero)
    }

    /// `p (x) q` as a tensor.
    pub fn of(p: &NcPoly, q: &NcPoly) -> TensorPoly {
        assert_eq!(p.host(), q.host());
        let mut t = TensorPoly::zero(p.host());
        for (wa, ca) in p.terms() {
            for (wb, cb) in q.terms() {
                t.add_term(wa.clone(), wb.clone(), ca * cb);
            }
        }
        t
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        assert_eq!(self.host, other.host);
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        assert_eq!(self.host, other.host);
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), -c.clone());
        }
        out
    }

    /// Componentwise product: `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        assert_eq!(self.host, other.host);
        let mut out = TensorPoly::zero(self.host);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.concat(a2), b1.concat(b2), c1 * c2);
            }
        }
        out
    }

    /// Applies the counit to the left (slot 0) or right (slot 1) factor.
    pub fn contract_counit(&self, slot: usize) -> NcPoly {
        let mut out = NcPoly::zero(self.host);
        for ((a, b), c) in &self.terms {
            let (kill, keep) = if slot == 0 { (a, b) } else { (b, a) };
            if kill.is_empty() {
                out += &NcPoly::monomial(self.host, keep.clone(), c.clone());
            }
        }
        out
    }

    /// Multiplies the two slots together (the convolution-style contraction
    /// used by the antipode axiom).
    pub fn contract_mul(&self) -> NcPoly {
        let mut out = NcPoly::zero(self.host);
        for ((a, b), c) in &self.terms {
            out += &NcPoly::monomial(self.host, a.concat(b), c.clone());
        }
        out
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{a}(x){b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer combination of `rank`-tuples of words; the codomain of the
/// iterated coproduct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiTensor {
    host: Host,
    rank: usize,
    terms: BTreeMap<Vec<Word>, Int>,
}

impl MultiTensor {
    pub fn zero(host: Host, rank: usize) -> Self {
        assert!(rank >= 1);
        MultiTensor { host, rank, terms: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn host(&self) -> Host {
        self.host
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, slots: Vec<Word>, c: Int) {
        assert_eq!(slots.len(), self.rank);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(slots) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Int)> {
        self.terms.iter()
    }

    pub fn from_poly(p: &NcPoly) -> MultiTensor {
        let mut t = MultiTensor::zero(p.host(), 1);
        for (w, c) in p.terms() {
            t.add_term(vec![w.clone()], c.clone());
        }
        t
    }

    pub fn from_tensor(t2: &TensorPoly) -> MultiTensor {
        let mut t = MultiTensor::zero(t2.host(), 2);
        for ((a, b), c) in t2.terms() {
            t.add_term(vec![a.clone(), b.clone()], c.clone());
        }
        t
    }

    pub fn coeff(&self, slots: &[Word]) -> Int {
        self.terms.get(slots).cloned().unwrap_or_else(Int::zero)
    }
}
