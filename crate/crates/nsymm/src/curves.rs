//! Curves (divided power series) in `NSymm` and `2NSymm`: the defining
//! coproduct condition, the group structure under series multiplication,
//! Verschiebung compatibility, and substitution of curves into curves.
//!
//! A curve is a sequence `d(0) = 1, d(1), ..., d(T)` with
//! `mu(d(n)) = sum_{i+j=n} d(i) (x) d(j)`; every check here is "up to the
//! truncation bound T" and says so. A curve may carry a ray weight `w`
//! (a reduced rational) recording that `d(i)` is homogeneous of weight
//! `i * w`; it is asserted on construction and propagated where it stays
//! meaningful.

use std::fmt;

use num_integer::Integer as _;

use crate::isobaric::IsobaricTable;
use crate::ncpoly::hopf::{antipode, mu, substitute, verschiebung, MissingAssignment};
use crate::ncpoly::{Host, NcPoly, Tag, TensorPoly};
use crate::series::Series1;

/// Reduced positive rational, used only as homogeneity metadata.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RayWeight {
    pub num: u32,
    pub den: u32,
}

impl RayWeight {
    pub fn new(num: u32, den: u32) -> Self {
        assert!(num > 0 && den > 0);
        let g = num.gcd(&den);
        RayWeight { num: num / g, den: den / g }
    }

    pub fn int(w: u32) -> Self {
        Self::new(w, 1)
    }

    /// `i * w` when integral.
    fn term_weight(&self, i: u32) -> Option<u32> {
        let prod = i as u64 * self.num as u64;
        prod.is_multiple_of(self.den as u64)
            .then(|| (prod / self.den as u64) as u32)
    }

    fn mul(&self, other: &RayWeight) -> RayWeight {
        RayWeight::new(self.num * other.num, self.den * other.den)
    }

    fn div_by(&self, r: u32) -> RayWeight {
        RayWeight::new(self.num, self.den * r)
    }
}

impl fmt::Display for RayWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Truncated divided power series; `d(0) = 1` is implicit.
#[derive(Clone, Debug)]
pub struct Curve {
    host: Host,
    terms: Vec<NcPoly>, // terms[i] = d(i+1)
    ray_weight: Option<RayWeight>,
}

/// Equality ignores the homogeneity metadata: a curve is its terms.
impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.host == other.host && self.terms == other.terms
    }
}

impl Eq for Curve {}

impl Curve {
    pub fn new(host: Host, terms: Vec<NcPoly>, ray_weight: Option<RayWeight>) -> Self {
        for (i, t) in terms.iter().enumerate() {
            assert_eq!(t.host(), host);
            if let Some(w) = &ray_weight {
                if !t.is_zero() {
                    let expect = w
                        .term_weight(i as u32 + 1)
                        .unwrap_or_else(|| panic!("nonzero term {} cannot have weight {}*{}", i + 1, i + 1, w));
                    assert!(
                        t.is_homogeneous(expect),
                        "term {} is not homogeneous of weight {expect}",
                        i + 1
                    );
                }
            }
        }
        Curve { host, terms, ray_weight }
    }

    /// The natural curve `(1, Z_1, Z_2, ...)`.
    pub fn natural_z(bound: u32) -> Curve {
        Curve::new(Host::NSymm, (1..=bound).map(NcPoly::z).collect(), Some(RayWeight::int(1)))
    }

    /// `(1, X_1, X_2, ...)` in `2NSymm`.
    pub fn natural_x(bound: u32) -> Curve {
        Curve::new(Host::TwoNSymm, (1..=bound).map(NcPoly::x).collect(), Some(RayWeight::int(1)))
    }

    /// `(1, Y_1, Y_2, ...)` in `2NSymm`.
    pub fn natural_y(bound: u32) -> Curve {
        Curve::new(Host::TwoNSymm, (1..=bound).map(NcPoly::y).collect(), Some(RayWeight::int(1)))
    }

    /// The group identity `(1, 0, 0, ...)`.
    pub fn identity(host: Host, bound: u32) -> Curve {
        Curve::new(host, vec![NcPoly::zero(host); bound as usize], None)
    }

    pub fn host(&self) -> Host {
        self.host
    }

    pub fn bound(&self) -> u32 {
        self.terms.len() as u32
    }

    pub fn ray_weight(&self) -> Option<RayWeight> {
        self.ray_weight
    }

    /// `d(i)`; index 0 is the constant 1.
    pub fn term(&self, i: u32) -> NcPoly {
        if i == 0 {
            NcPoly::one(self.host)
        } else {
            self.terms[i as usize - 1].clone()
        }
    }

    pub fn truncate(&self, bound: u32) -> Curve {
        assert!(bound <= self.bound());
        Curve {
            host: self.host,
            terms: self.terms[..bound as usize].to_vec(),
            ray_weight: self.ray_weight,
        }
    }

    pub fn to_series(&self) -> Series1 {
        Series1::from_unit_and_terms(self.host, self.bound(), |i| self.term(i))
    }

    /// Wraps a unit-constant-term series, inferring homogeneity metadata
    /// from the terms when consistent.
    pub fn from_series(s: &Series1) -> Curve {
        assert_eq!(s.coeff(0), &NcPoly::one(s.host()), "curves start at 1");
        let terms: Vec<NcPoly> = (1..=s.bound()).map(|i| s.coeff(i).clone()).collect();
        let ray_weight = infer_ray_weight(&terms);
        Curve { host: s.host(), terms, ray_weight }
    }

    /// The defining condition, checked for every `n <= bound`.
    pub fn is_curve(&self) -> bool {
        for n in 1..=self.bound() {
            let lhs = mu(&self.term(n));
            let mut rhs = TensorPoly::zero(self.host);
            for i in 0..=n {
                rhs = rhs.add(&TensorPoly::of(&self.term(i), &self.term(n - i)));
            }
            if !lhs.sub(&rhs).is_zero() {
                return false;
            }
        }
        true
    }

    /// Power series product of curves.
    pub fn mul(&self, other: &Curve) -> Curve {
        assert_eq!(self.host, other.host);
        let s = self.to_series().mul(&other.to_series());
        let terms: Vec<NcPoly> = (1..=s.bound()).map(|i| s.coeff(i).clone()).collect();
        let ray_weight = match (self.ray_weight, other.ray_weight) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => infer_ray_weight(&terms),
        };
        Curve { host: self.host, terms, ray_weight }
    }

    /// Power series inverse; termwise it is the antipode sequence.
    pub fn inv(&self) -> Curve {
        let s = self.to_series().inv();
        let terms: Vec<NcPoly> = (1..=s.bound()).map(|i| s.coeff(i).clone()).collect();
        Curve { host: self.host, terms, ray_weight: self.ray_weight }
    }

    /// `d(t^r)`: inserts `r - 1` zeros between consecutive terms.
    pub fn reparam_power(&self, r: u32) -> Curve {
        assert!(r >= 1);
        let bound = self.bound(); // keep the same truncation
        let terms: Vec<NcPoly> = (1..=bound)
            .map(|n| if n % r == 0 { self.term(n / r) } else { NcPoly::zero(self.host) })
            .collect();
        Curve {
            host: self.host,
            terms,
            ray_weight: self.ray_weight.map(|w| w.div_by(r)),
        }
    }

    /// Verschiebung compatibility: `V_r(d(n)) = d(n/r)` when `r | n`, else 0,
    /// for every `r >= 2` that could act nontrivially on the stored terms.
    pub fn is_v_curve(&self) -> bool {
        let max_index = self
            .terms
            .iter()
            .flat_map(|t| t.terms().flat_map(|(w, _)| w.0.iter().map(|l| l.index)))
            .max()
            .unwrap_or(0);
        let r_max = self.bound().max(max_index);
        for r in 2..=r_max {
            for n in 1..=self.bound() {
                let image = verschiebung(r, &self.term(n));
                let expect = if n % r == 0 { self.term(n / r) } else { NcPoly::zero(self.host) };
                if image != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Substitutes this curve's terms (polynomials in `Z`) along `inner`:
    /// `Z_j` is replaced by `inner(j)`. Fails if `inner` is truncated below
    /// some occurring index.
    pub fn subst_into(&self, inner: &Curve) -> Result<Curve, MissingAssignment> {
        assert_eq!(self.host, Host::NSymm, "outer curve must live in NSymm");
        let mut terms = Vec::with_capacity(self.terms.len());
        for i in 1..=self.bound() {
            let image = substitute(&self.term(i), inner.host, |l| {
                (l.index <= inner.bound()).then(|| inner.term(l.index))
            })?;
            terms.push(image);
        }
        let ray_weight = match (self.ray_weight, inner.ray_weight) {
            (Some(a), Some(b)) => Some(a.mul(&b)),
            _ => infer_ray_weight(&terms),
        };
        Ok(Curve { host: inner.host, terms, ray_weight })
    }

    /// Substitutes a `2NSymm` curve along a pair of curves: `X_i` goes to
    /// `dx(i)` and `Y_j` to `dy(j)`.
    pub fn subst_pair(&self, dx: &Curve, dy: &Curve) -> Result<Curve, MissingAssignment> {
        assert_eq!(self.host, Host::TwoNSymm, "outer curve must live in 2NSymm");
        assert_eq!(dx.host(), dy.host(), "host mismatch between substituted curves");
        let mut terms = Vec::with_capacity(self.terms.len());
        for i in 1..=self.bound() {
            let image = substitute(&self.term(i), dx.host(), |l| {
                let src = if l.tag == Tag::X { dx } else { dy };
                (l.index <= src.bound()).then(|| src.term(l.index))
            })?;
            terms.push(image);
        }
        let ray_weight = infer_ray_weight(&terms);
        Ok(Curve { host: dx.host(), terms, ray_weight })
    }

    /// Termwise antipode sequence `(1, iota(d(1)), iota(d(2)), ...)`.
    pub fn antipode_sequence(&self) -> Curve {
        let terms: Vec<NcPoly> = (1..=self.bound()).map(|i| antipode(&self.term(i))).collect();
        Curve { host: self.host, terms, ray_weight: self.ray_weight }
    }
}

fn infer_ray_weight(terms: &[NcPoly]) -> Option<RayWeight> {
    let (i0, first) = terms
        .iter()
        .enumerate()
        .find(|(_, t)| !t.is_zero())
        .map(|(i, t)| (i as u32 + 1, t))?;
    let w0 = first.max_weight();
    if w0 == 0 || !first.is_homogeneous(w0) {
        return None;
    }
    let w = RayWeight::new(w0, i0);
    for (i, t) in terms.iter().enumerate() {
        if t.is_zero() {
            continue;
        }
        match w.term_weight(i as u32 + 1) {
            Some(expect) if t.is_homogeneous(expect) => {}
            _ => return None,
        }
    }
    Some(w)
}

/// The ray factor of an isobaric table in the normalized direction `(a, b)`
/// as a one-variable curve: term `i` is the table entry at `(ia, ib)`.
pub fn ray_curve(a: u32, b: u32, table: &IsobaricTable, bound: u32) -> Curve {
    assert_eq!(a.gcd(&b), 1, "ray direction must be coprime");
    assert!(a >= 1 && b >= 1);
    assert!(
        table.bound() >= bound * (a + b),
        "table built to weight {}, need {}",
        table.bound(),
        bound * (a + b)
    );
    let terms: Vec<NcPoly> = (1..=bound).map(|i| table.entry(i * a, i * b).clone()).collect();
    Curve::new(table.kind().host(), terms, Some(RayWeight::int(a + b)))
}
