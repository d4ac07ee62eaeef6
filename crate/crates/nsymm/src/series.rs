//! Truncated power series in one and two central counting variables with
//! `NcPoly` coefficients.
//!
//! Truncation is exact: every retained coefficient equals the coefficient of
//! the untruncated series, so recomputing with a larger bound never changes
//! the degrees already present. Inverses require constant term 1 and are
//! two-sided up to the bound.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;

use crate::ncpoly::hopf::mu;
use crate::ncpoly::{Host, Int, NcPoly, TensorPoly};

/// `1 + c_1 t + ... + c_T t^T` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series1 {
    host: Host,
    coeffs: Vec<NcPoly>, // index = degree, length = bound + 1
}

impl Series1 {
    pub fn one(host: Host, bound: u32) -> Self {
        let mut coeffs = vec![NcPoly::zero(host); bound as usize + 1];
        coeffs[0] = NcPoly::one(host);
        Series1 { host, coeffs }
    }

    /// Builds from the coefficient at each positive degree; degree 0 is set
    /// to the constant 1.
    pub fn from_unit_and_terms(host: Host, bound: u32, term: impl Fn(u32) -> NcPoly) -> Self {
        let mut s = Series1::one(host, bound);
        for i in 1..=bound {
            let c = term(i);
            assert_eq!(c.host(), host);
            s.coeffs[i as usize] = c;
        }
        s
    }

    pub fn host(&self) -> Host {
        self.host
    }

    pub fn bound(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeff(&self, i: u32) -> &NcPoly {
        &self.coeffs[i as usize]
    }

    pub fn set_coeff(&mut self, i: u32, c: NcPoly) {
        assert_eq!(c.host(), self.host);
        self.coeffs[i as usize] = c;
    }

    pub fn truncate(&self, bound: u32) -> Series1 {
        assert!(bound <= self.bound());
        Series1 {
            host: self.host,
            coeffs: self.coeffs[..=bound as usize].to_vec(),
        }
    }

    pub fn mul(&self, other: &Series1) -> Series1 {
        assert_eq!(self.host, other.host);
        let bound = self.bound().min(other.bound());
        let mut coeffs = vec![NcPoly::zero(self.host); bound as usize + 1];
        for n in 0..=bound {
            let mut acc = NcPoly::zero(self.host);
            for i in 0..=n {
                acc += &(self.coeff(i) * other.coeff(n - i));
            }
            coeffs[n as usize] = acc;
        }
        Series1 { host: self.host, coeffs }
    }

    /// Two-sided inverse up to the bound; the constant term must be 1.
    pub fn inv(&self) -> Series1 {
        assert!(
            self.coeffs[0] == NcPoly::one(self.host),
            "series inverse requires constant term 1"
        );
        let bound = self.bound();
        let mut inv = vec![NcPoly::zero(self.host); bound as usize + 1];
        inv[0] = NcPoly::one(self.host);
        for n in 1..=bound {
            // From sum_{i=0..n} c_i * b_{n-i} = 0 with c_0 = 1.
            let mut acc = NcPoly::zero(self.host);
            for i in 1..=n {
                acc += &(self.coeff(i) * &inv[(n - i) as usize]);
            }
            inv[n as usize] = -&acc;
        }
        Series1 { host: self.host, coeffs: inv }
    }
}

impl fmt::Display for Series1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for i in 1..=self.bound() {
            if !self.coeff(i).is_zero() {
                write!(f, " + ({})*t^{}", self.coeff(i), i)?;
            }
        }
        Ok(())
    }
}

/// Power series in two variables truncated by total degree: coefficients at
/// `s^i t^j` for `i + j <= bound`; only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series2 {
    host: Host,
    bound: u32,
    coeffs: BTreeMap<(u32, u32), NcPoly>,
}

impl Series2 {
    pub fn one(host: Host, bound: u32) -> Self {
        let mut s = Series2 { host, bound, coeffs: BTreeMap::new() };
        s.set_coeff(0, 0, NcPoly::one(host));
        s
    }

    pub fn zero(host: Host, bound: u32) -> Self {
        Series2 { host, bound, coeffs: BTreeMap::new() }
    }

    pub fn host(&self) -> Host {
        self.host
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeff(&self, i: u32, j: u32) -> NcPoly {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| NcPoly::zero(self.host))
    }

    pub fn set_coeff(&mut self, i: u32, j: u32, c: NcPoly) {
        assert!(i + j <= self.bound, "degree ({i},{j}) beyond bound {}", self.bound);
        assert_eq!(c.host(), self.host);
        if c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&(u32, u32), &NcPoly)> {
        self.coeffs.iter()
    }

    pub fn truncate(&self, bound: u32) -> Series2 {
        assert!(bound <= self.bound);
        Series2 {
            host: self.host,
            bound,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((i, j), _)| i + j <= bound)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// `X(s) = 1 + X_1 s + X_2 s^2 + ...` viewed as a degenerate 2-curve.
    pub fn x_in_s(bound: u32) -> Series2 {
        let mut s = Series2::one(Host::TwoNSymm, bound);
        for i in 1..=bound {
            s.set_coeff(i, 0, NcPoly::x(i));
        }
        s
    }

    /// `Y(t) = 1 + Y_1 t + Y_2 t^2 + ...`.
    pub fn y_in_t(bound: u32) -> Series2 {
        let mut s = Series2::one(Host::TwoNSymm, bound);
        for j in 1..=bound {
            s.set_coeff(0, j, NcPoly::y(j));
        }
        s
    }

    /// `Z(s)` over `NSymm`.
    pub fn z_in_s(bound: u32) -> Series2 {
        let mut s = Series2::one(Host::NSymm, bound);
        for i in 1..=bound {
            s.set_coeff(i, 0, NcPoly::z(i));
        }
        s
    }

    /// `Z(t)` over `NSymm`.
    pub fn z_in_t(bound: u32) -> Series2 {
        let mut s = Series2::one(Host::NSymm, bound);
        for j in 1..=bound {
            s.set_coeff(0, j, NcPoly::z(j));
        }
        s
    }

    /// `Z(s + t)`: the coefficient of `s^a t^b` is `C(a+b, a) Z_{a+b}`.
    pub fn z_in_s_plus_t(bound: u32) -> Series2 {
        let mut s = Series2::one(Host::NSymm, bound);
        for a in 0..=bound {
            for b in 0..=(bound - a) {
                if a + b == 0 {
                    continue;
                }
                let c = binomial(Int::from(a + b), Int::from(a));
                s.set_coeff(a, b, NcPoly::z(a + b).scale(&c));
            }
        }
        s
    }

    pub fn mul(&self, other: &Series2) -> Series2 {
        assert_eq!(self.host, other.host);
        let bound = self.bound.min(other.bound);
        let mut out = Series2::zero(self.host, bound);
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &other.coeffs {
                let (i, j) = (i1 + i2, j1 + j2);
                if i + j > bound {
                    continue;
                }
                let mut cur = out.coeff(i, j);
                cur += &(c1 * c2);
                out.set_coeff(i, j, cur);
            }
        }
        out
    }

    /// Two-sided inverse up to the bound; requires constant term 1.
    pub fn inv(&self) -> Series2 {
        assert!(
            self.coeff(0, 0) == NcPoly::one(self.host),
            "series inverse requires constant term 1"
        );
        let mut out = Series2::one(self.host, self.bound);
        // Ascending total degree; each slot depends on strictly smaller ones.
        for w in 1..=self.bound {
            for u in 0..=w {
                let v = w - u;
                let mut acc = NcPoly::zero(self.host);
                for ((i, j), c) in &self.coeffs {
                    if (*i, *j) == (0, 0) || *i > u || *j > v {
                        continue;
                    }
                    acc += &(c * &out.coeff(u - i, v - j));
                }
                out.set_coeff(u, v, -&acc);
            }
        }
        out
    }

    /// The 2-curve condition: `mu(c(n,m))` equals the full convolution of
    /// the coefficients, at every retained bidegree.
    pub fn is_2curve(&self) -> bool {
        if self.coeff(0, 0) != NcPoly::one(self.host) {
            return false;
        }
        for w in 1..=self.bound {
            for n in 0..=w {
                let m = w - n;
                let lhs = mu(&self.coeff(n, m));
                let mut rhs = TensorPoly::zero(self.host);
                for n1 in 0..=n {
                    for m1 in 0..=m {
                        let a = self.coeff(n1, m1);
                        if a.is_zero() {
                            continue;
                        }
                        let b = self.coeff(n - n1, m - m1);
                        if b.is_zero() {
                            continue;
                        }
                        rhs = rhs.add(&TensorPoly::of(&a, &b));
                    }
                }
                if !lhs.sub(&rhs).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Every coefficient at `s^i t^j` homogeneous of weight `i + j`; all the
    /// series taken apart in this crate have this grading.
    pub fn is_weight_graded(&self) -> bool {
        self.coeffs.iter().all(|((i, j), c)| c.is_homogeneous(i + j))
    }

    /// Transcribes a series supported on the ray `{(ra, rb)}` into a
    /// one-variable series with `c_r` = coefficient at `(ra, rb)`.
    pub fn restrict_direction(&self, a: u32, b: u32) -> Result<Series1, OffRaySupport> {
        assert!(a + b > 0);
        assert_eq!(num_integer::gcd(a, b), 1, "direction must be normalized");
        for ((i, j), c) in &self.coeffs {
            if (*i, *j) == (0, 0) || c.is_zero() {
                continue;
            }
            let on_ray = if a == 0 {
                *i == 0 && *j % b == 0
            } else if b == 0 {
                *j == 0 && *i % a == 0
            } else {
                *i % a == 0 && *j % b == 0 && *i / a == *j / b
            };
            if !on_ray {
                return Err(OffRaySupport { i: *i, j: *j });
            }
        }
        let t_bound = self.bound / (a + b);
        Ok(Series1::from_unit_and_terms(self.host, t_bound, |r| {
            self.coeff(r * a, r * b)
        }))
    }
}

/// A term off the requested ray, reported by bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OffRaySupport {
    pub i: u32,
    pub j: u32,
}

impl fmt::Display for OffRaySupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "series has support off the ray at bidegree ({},{})", self.i, self.j)
    }
}

impl std::error::Error for OffRaySupport {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use crate::ncpoly::{Letter, Word};

    fn z_curve_series(bound: u32) -> Series1 {
        Series1::from_unit_and_terms(Host::NSymm, bound, NcPoly::z)
    }

    #[test]
    fn geometric_inverse() {
        let s = Series1::from_unit_and_terms(Host::NSymm, 4, |i| {
            if i == 1 {
                NcPoly::z(1)
            } else {
                NcPoly::zero(Host::NSymm)
            }
        });
        let inv = s.inv();
        for k in 0..=4u32 {
            let mut want = NcPoly::one(Host::NSymm);
            for _ in 0..k {
                want = &want * &NcPoly::z(1);
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(k), &want.scale_i64(sign));
        }
    }

    #[test]
    fn z_series_inverse_degree_two() {
        let inv = z_curve_series(3).inv();
        let want = &(&NcPoly::z(1) * &NcPoly::z(1)) - &NcPoly::z(2);
        assert_eq!(inv.coeff(2), &want);
    }

    #[test]
    fn inverse_is_two_sided() {
        let d = z_curve_series(6);
        let inv = d.inv();
        assert_eq!(d.mul(&inv), Series1::one(Host::NSymm, 6));
        assert_eq!(inv.mul(&d), Series1::one(Host::NSymm, 6));
    }

    #[test]
    fn inverse_is_involutive() {
        let d = z_curve_series(5);
        assert_eq!(d.inv().inv(), d);
    }

    #[test]
    #[should_panic(expected = "constant term 1")]
    fn inverse_requires_unit_constant_term() {
        let mut s = Series1::one(Host::NSymm, 2);
        s.set_coeff(0, NcPoly::z(1));
        s.inv();
    }

    #[test]
    fn truncation_consistency() {
        let d = z_curve_series(6);
        let big = d.inv();
        let small = d.truncate(4).inv();
        assert_eq!(big.truncate(4), small);

        let p_big = d.mul(&big);
        let p_small = d.truncate(4).mul(&small);
        assert_eq!(p_big.truncate(4), p_small);
    }

    #[test]
    fn binomial_two_curve_coefficients() {
        let s = Series2::z_in_s_plus_t(6);
        assert_eq!(s.coeff(1, 1), NcPoly::z(2).scale_i64(2));
        assert_eq!(s.coeff(0, 3), NcPoly::z(3));
        assert_eq!(s.coeff(2, 2), NcPoly::z(4).scale_i64(6));
        assert!(s.is_weight_graded());
    }

    #[test]
    fn two_curve_checks() {
        assert!(Series2::x_in_s(5).is_2curve());
        assert!(Series2::z_in_s_plus_t(5).is_2curve());

        let mut bad = Series2::one(Host::NSymm, 4);
        bad.set_coeff(1, 1, NcPoly::z(2));
        assert!(!bad.is_2curve());
    }

    #[test]
    fn two_curves_closed_under_product_and_inverse() {
        let x = Series2::x_in_s(6);
        let y = Series2::y_in_t(6);
        assert!(x.mul(&y).is_2curve());
        assert!(x.inv().is_2curve());
        assert!(Series2::z_in_s_plus_t(6).inv().is_2curve());
    }

    #[test]
    fn restrict_direction_transcribes_the_ray() {
        let mut s = Series2::one(Host::NSymm, 6);
        let z1sq = &NcPoly::z(1) * &NcPoly::z(1);
        s.set_coeff(1, 2, z1sq.clone());
        s.set_coeff(2, 4, NcPoly::z(3));
        let c = s.restrict_direction(1, 2).unwrap();
        assert_eq!(c.bound(), 2);
        assert_eq!(c.coeff(1), &z1sq);
        assert_eq!(c.coeff(2), &NcPoly::z(3));
    }

    #[test]
    #[should_panic(expected = "normalized")]
    fn restrict_direction_rejects_unnormalized_ray() {
        Series2::one(Host::NSymm, 4).restrict_direction(2, 4).unwrap();
    }

    #[test]
    fn restrict_direction_reports_stray_support() {
        let mut s = Series2::one(Host::NSymm, 4);
        s.set_coeff(1, 2, NcPoly::z(3));
        s.set_coeff(1, 0, NcPoly::z(1));
        assert_eq!(s.restrict_direction(1, 2), Err(OffRaySupport { i: 1, j: 0 }));
    }

    #[test]
    fn two_curve_product_slices() {
        let x = Series2::x_in_s(3);
        let y = Series2::y_in_t(3);
        let p = x.mul(&y);
        assert_eq!(p.coeff(1, 1), &NcPoly::x(1) * &NcPoly::y(1));
        assert_eq!(p.coeff(2, 1), &NcPoly::x(2) * &NcPoly::y(1));
        assert_eq!(p.coeff(1, 0).coeff(&Word(vec![Letter::x(1)])), int(1));
    }
}
