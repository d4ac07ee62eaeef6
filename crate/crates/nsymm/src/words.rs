//! Compositions (words over the positive integers), their orderings, and
//! Lyndon words.
//!
//! Three orders matter downstream and are easy to confuse:
//!
//! - plain lexicographic on compositions, where a proper prefix is *smaller*
//!   than the full word (so `[1] < [1,1]` and powers are never Lyndon);
//! - `wll` on compositions: weight first, then length, then lexicographic —
//!   the canonical enumeration order for every matrix in the crate;
//! - `wl` on bidegree pairs: weight `u + v` first, then `u`; and its
//!   symmetrized variant `swl`, which lists the `a > b` half in `wl` order,
//!   then `(1,1)`, then the mirrored `a < b` half, with `(1,0)` first and
//!   `(0,1)` last overall.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer as _;

/// A word over the positive integers. The empty composition is the unit of
/// `QSymm` and has weight and length zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "composition parts must be >= 1");
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// gcd of the parts.
    pub fn parts_gcd(&self) -> u32 {
        assert!(!self.is_empty(), "gcd of the empty composition is undefined");
        self.0.iter().fold(0u32, |g, &p| g.gcd(&p))
    }

    /// Product of the parts (exact, may exceed u64 only far beyond desk
    /// scale; parts sum to at most a few dozen here).
    pub fn parts_product(&self) -> u64 {
        assert!(!self.is_empty(), "product of the empty composition is undefined");
        self.0.iter().map(|&p| p as u64).product()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    /// Every part multiplied by `r` (`r >= 1`).
    pub fn scale(&self, r: u32) -> Composition {
        assert!(r >= 1);
        Composition(self.0.iter().map(|&p| p * r).collect())
    }

    /// Every part divided by `r`; `None` unless `r` divides each part.
    pub fn unscale(&self, r: u32) -> Option<Composition> {
        assert!(r >= 1);
        if self.0.iter().all(|&p| p % r == 0) {
            Some(Composition(self.0.iter().map(|&p| p / r).collect()))
        } else {
            None
        }
    }

    /// Plain lexicographic comparison with the proper-prefix-is-smaller
    /// convention; this is exactly slice ordering.
    pub fn lex_cmp(&self, other: &Composition) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// Weight, then length, then lexicographic.
    pub fn wll_cmp(&self, other: &Composition) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.lex_cmp(other))
    }

    /// True iff the word is lexicographically smaller than each of its
    /// proper tails. Single letters are Lyndon; the empty word is rejected.
    pub fn is_lyndon(&self) -> bool {
        assert!(!self.is_empty(), "the Lyndon predicate is undefined on the empty word");
        let w = &self.0;
        (1..w.len()).all(|i| w[..] < w[i..])
    }

    /// Splits a Lyndon word of length >= 2 at its lexicographically smallest
    /// proper tail. Both halves are again Lyndon.
    pub fn canonical_factorization(&self) -> Result<(Composition, Composition), WordError> {
        if self.len() < 2 {
            return Err(WordError::FactorizationLength(self.clone()));
        }
        if !self.is_lyndon() {
            return Err(WordError::NotLyndon(self.clone()));
        }
        let w = &self.0;
        let cut = (1..w.len())
            .min_by(|&i, &j| w[i..].cmp(&w[j..]))
            .expect("length >= 2");
        let prefix = Composition(w[..cut].to_vec());
        let suffix = Composition(w[cut..].to_vec());
        debug_assert!(prefix.is_lyndon() && suffix.is_lyndon());
        Ok((prefix, suffix))
    }
}

/// `Ord` is the wll order: the one canonical enumeration order of the crate.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.wll_cmp(other)
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Composition {
    type Err = WordError;

    /// Parses the canonical text form `[a1,a2,...,am]` (whitespace allowed).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| WordError::Parse(s.to_string()))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let p: u32 = piece
                .trim()
                .parse()
                .map_err(|_| WordError::Parse(s.to_string()))?;
            if p == 0 {
                return Err(WordError::Parse(s.to_string()));
            }
            parts.push(p);
        }
        Ok(Composition(parts))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    Parse(String),
    NotLyndon(Composition),
    FactorizationLength(Composition),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::Parse(s) => write!(f, "cannot parse composition from {s:?}"),
            WordError::NotLyndon(c) => write!(f, "{c} is not a Lyndon word"),
            WordError::FactorizationLength(c) => {
                write!(f, "{c} has no canonical factorization (length < 2)")
            }
        }
    }
}

impl std::error::Error for WordError {}

/// All compositions of weight `n` in wll order (`2^(n-1)` of them for
/// `n >= 1`; just the empty word for `n = 0`).
pub fn compositions(n: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for first in 1..=rest {
            cur.push(first);
            rec(rest - first, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out.sort();
    out
}

/// All Lyndon compositions of weight `n`, in wll order.
pub fn enumerate_lyndon(n: u32) -> Vec<Composition> {
    assert!(n >= 1);
    compositions(n).into_iter().filter(|c| c.is_lyndon()).collect()
}

/// A bidegree `(u, v)`, used to index the ray factors of the bi-isobaric
/// decompositions. `(0, 0)` is never a valid direction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DirectionPair {
    pub u: u32,
    pub v: u32,
}

impl DirectionPair {
    pub fn new(u: u32, v: u32) -> Self {
        assert!(u > 0 || v > 0, "(0,0) is not a direction");
        DirectionPair { u, v }
    }

    pub fn weight(&self) -> u32 {
        self.u + self.v
    }

    pub fn gcd(&self) -> u32 {
        self.u.gcd(&self.v)
    }

    pub fn is_normalized(&self) -> bool {
        self.gcd() == 1
    }

    /// `(u, v) / gcd(u, v)`.
    pub fn normalized(&self) -> DirectionPair {
        let g = self.gcd();
        DirectionPair { u: self.u / g, v: self.v / g }
    }

    pub fn swap(&self) -> DirectionPair {
        DirectionPair { u: self.v, v: self.u }
    }

    /// Weight first, then first coordinate.
    pub fn wl_cmp(&self, other: &DirectionPair) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.u.cmp(&other.u))
    }

    /// The symmetric order: `(1,0)`, then the `u > v` half ascending in wl,
    /// then `(1,1)`, then the `u < v` half (mirror image of the first half),
    /// then `(0,1)`. Only defined on normalized pairs.
    pub fn swl_cmp(&self, other: &DirectionPair) -> Ordering {
        assert!(
            self.is_normalized() && other.is_normalized(),
            "swl order is defined on coprime pairs only"
        );
        let class = |p: &DirectionPair| -> u8 {
            match (p.u, p.v) {
                (_, 0) => 0,
                (u, v) if u > v => 1,
                (u, v) if u == v => 2,
                (0, _) => 4,
                _ => 3,
            }
        };
        let (ca, cb) = (class(self), class(other));
        if ca != cb {
            return ca.cmp(&cb);
        }
        match ca {
            1 => self.wl_cmp(other),
            3 => other.swap().wl_cmp(&self.swap()),
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for DirectionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}
