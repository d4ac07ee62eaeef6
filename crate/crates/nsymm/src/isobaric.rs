//! The bi-isobaric decomposition tables and the Newton primitives.
//!
//! Writing `X(s)` and `Y(t)` for the natural curves of `2NSymm` and `Z(s)`
//! for the natural curve of `NSymm`, two 2-curves decompose uniquely into
//! ordered products of ray factors indexed by normalized directions:
//!
//! ```text
//! X(s)^-1 Y(t)^-1 X(s) Y(t) = prod (1 + L_{a,b} s^a t^b + L_{2a,2b} s^2a t^2b + ...)
//! Z(s)^-1 Z(t)^-1 Z(s+t)   = prod (1 + N_{a,b} s^a t^b + N_{2a,2b} s^2a t^2b + ...)
//! ```
//!
//! with factors ascending in the wl order of directions. Matching
//! coefficients of `s^u t^v` turns each identity into a recursion for the
//! table entries; [`reconstruct`] multiplies the factors back out and
//! compares against the series computed directly, which is the independent
//! check that the recursion, the factor ordering and the prefix convention
//! all agree.
//!
//! The swl-ordered variants decompose `X(s)^-1 Y(t) X(s) Y(t)^-1` and
//! `Z(s)^-1 Z(s+t) Z(t)^-1` instead, with the unary factors split around the
//! ray product; these have the reversal symmetries checked in the tests.
//!
//! On the `N` side the companion of the ordered product is the pulled-out
//! pair of unary series, so in `Z(s+t) = Z(t) Z(s) prod(...)` the prefix at
//! bidegree `(u0, v0)` reads `Z_{v0} Z_{u0}`, the `t`-indexed letter first,
//! exactly as `Y_{v0} X_{u0}` does on the `L` side.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;

use crate::exec;
use crate::ncpoly::{Host, Int, NcPoly};
use crate::series::Series2;
use crate::words::DirectionPair;

/// Which of the four entry families a table holds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableKind {
    /// `L_{u,v}` in `2NSymm`, wl-ordered factors.
    LWl,
    /// `N_{u,v}` in `NSymm`, wl-ordered factors.
    NWl,
    /// The swl-ordered `L` variant.
    LSwl,
    /// The swl-ordered `N` variant.
    NSwl,
}

impl TableKind {
    pub fn host(self) -> Host {
        match self {
            TableKind::LWl | TableKind::LSwl => Host::TwoNSymm,
            TableKind::NWl | TableKind::NSwl => Host::NSymm,
        }
    }

    fn swl(self) -> bool {
        matches!(self, TableKind::LSwl | TableKind::NSwl)
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableKind::LWl => write!(f, "L"),
            TableKind::NWl => write!(f, "N"),
            TableKind::LSwl => write!(f, "L-swl"),
            TableKind::NSwl => write!(f, "N-swl"),
        }
    }
}

/// All entries of one family for `u, v >= 1`, `u + v <= bound`, built
/// bottom-up by total weight. Entries of equal weight only depend on lower
/// weights, so each level is computed in parallel.
#[derive(Clone, Debug)]
pub struct IsobaricTable {
    kind: TableKind,
    bound: u32,
    entries: BTreeMap<(u32, u32), NcPoly>,
}

impl IsobaricTable {
    pub fn build(kind: TableKind, bound: u32) -> Self {
        let mut t = IsobaricTable { kind, bound: 1, entries: BTreeMap::new() };
        t.ensure(bound);
        t
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn entry(&self, u: u32, v: u32) -> &NcPoly {
        assert!(u >= 1 && v >= 1, "table entries need u, v >= 1");
        self.entries
            .get(&(u, v))
            .unwrap_or_else(|| panic!("{} table built to weight {} only, asked for ({u},{v})", self.kind, self.bound))
    }

    /// Extends the table to cover all entries of weight up to `bound`.
    pub fn ensure(&mut self, bound: u32) {
        while self.bound < bound {
            let wt = self.bound + 1;
            let jobs: Vec<(u32, u32)> = (1..wt).map(|u| (u, wt - u)).collect();
            let computed = {
                let entries = &self.entries;
                let kind = self.kind;
                exec::map_collect(jobs, move |(u, v)| ((u, v), compute_entry(kind, entries, u, v)))
            };
            self.entries.extend(computed);
            self.bound = wt;
        }
    }
}

fn gen_or_one(host: Host, tag_x: bool, index: u32) -> NcPoly {
    if index == 0 {
        return NcPoly::one(host);
    }
    match (host, tag_x) {
        (Host::TwoNSymm, true) => NcPoly::x(index),
        (Host::TwoNSymm, false) => NcPoly::y(index),
        (Host::NSymm, _) => NcPoly::z(index),
    }
}

fn compute_entry(kind: TableKind, lower: &BTreeMap<(u32, u32), NcPoly>, u: u32, v: u32) -> NcPoly {
    let host = kind.host();
    let x = |i| gen_or_one(host, true, i);
    let y = |j| gen_or_one(host, false, j);

    // Coefficient of s^u t^v on the curve side of the defining identity.
    let base = match kind {
        TableKind::LWl => &x(u) * &y(v),
        TableKind::LSwl => &y(v) * &x(u),
        TableKind::NWl | TableKind::NSwl => NcPoly::z(u + v).scale(&binomial(Int::from(u + v), Int::from(u))),
    };

    let mut acc = base;
    for u0 in 0..=u {
        for v0 in 0..=v {
            for factors in ray_factorizations(u - u0, v - v0, kind.swl()) {
                if u0 == 0 && v0 == 0 && factors.len() == 1 {
                    continue; // the entry being defined
                }
                let mut prod = NcPoly::one(host);
                for &(fu, fv) in &factors {
                    prod = &prod * &lower[&(fu, fv)];
                }
                let term = match kind {
                    TableKind::LWl => &(&y(v0) * &x(u0)) * &prod,
                    TableKind::NWl => &(&y(v0) * &x(u0)) * &prod, // Z_{v0} Z_{u0} prefix
                    TableKind::LSwl => &(&x(u0) * &prod) * &y(v0),
                    TableKind::NSwl => &(&x(u0) * &prod) * &y(v0), // Z_{u0} ... Z_{v0}
                };
                acc = &acc - &term;
            }
        }
    }
    acc
}

/// All ways of writing the bidegree `(p, q)` as an ordered product of ray
/// picks: normalized directions strictly ascending in the wl (or swl) order,
/// one factor `(m a, m b)` per chosen ray. The empty product appears exactly
/// when `(p, q) = (0, 0)`.
fn ray_factorizations(p: u32, q: u32, swl: bool) -> Vec<Vec<(u32, u32)>> {
    let mut rays: Vec<DirectionPair> = Vec::new();
    for a in 1..=p {
        for b in 1..=q {
            let d = DirectionPair::new(a, b);
            if d.is_normalized() {
                rays.push(d);
            }
        }
    }
    if swl {
        rays.sort_by(|r, s| r.swl_cmp(s));
    } else {
        rays.sort_by(|r, s| r.wl_cmp(s));
    }
    let mut out = Vec::new();
    let mut cur: Vec<(u32, u32)> = Vec::new();
    fn rec(
        rays: &[DirectionPair],
        from: usize,
        p: u32,
        q: u32,
        cur: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        if p == 0 && q == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..rays.len() {
            let r = rays[i];
            let mut m = 1;
            while m * r.u <= p && m * r.v <= q {
                cur.push((m * r.u, m * r.v));
                rec(rays, i + 1, p - m * r.u, q - m * r.v, cur, out);
                cur.pop();
                m += 1;
            }
        }
    }
    rec(&rays, 0, p, q, &mut cur, &mut out);
    out
}

/// `P_n`: computed by the alternating closed sum over compositions of `n`
/// and, as a consistency assertion, by the left recursion
/// `P_n = n Z_n - Z_{n-1} P_1 - ... - Z_1 P_{n-1}`.
pub fn newton_p(n: u32) -> NcPoly {
    assert!(n >= 1);
    let mut closed = NcPoly::zero(Host::NSymm);
    for comp in crate::words::compositions(n) {
        let k = comp.len();
        let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
        let last = *comp.parts().last().expect("weight >= 1") as i64;
        closed += &NcPoly::z_monomial(&comp).scale_i64(sign * last);
    }
    debug_assert_eq!(closed, newton_p_by_recursion(n));
    closed
}

/// The recursion route for `P_n` on its own.
pub fn newton_p_by_recursion(n: u32) -> NcPoly {
    assert!(n >= 1);
    let mut memo: Vec<NcPoly> = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let mut p = NcPoly::z(m).scale_i64(m as i64);
        for i in 1..m {
            p = &p - &(&NcPoly::z(m - i) * &memo[i as usize - 1]);
        }
        memo.push(p);
    }
    memo.pop().expect("n >= 1")
}

/// `Q_n`: the mirror family, `Q_n = n Z_n - Q_1 Z_{n-1} - ... - Q_{n-1} Z_1`.
pub fn newton_q(n: u32) -> NcPoly {
    assert!(n >= 1);
    let mut memo: Vec<NcPoly> = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let mut q = NcPoly::z(m).scale_i64(m as i64);
        for i in 1..m {
            q = &q - &(&memo[i as usize - 1] * &NcPoly::z(m - i));
        }
        memo.push(q);
    }
    memo.pop().expect("n >= 1")
}

/// The decomposed 2-curve a table belongs to, computed directly from series
/// arithmetic.
pub fn decomposed_series(kind: TableKind, bound: u32) -> Series2 {
    match kind {
        TableKind::LWl => {
            let x = Series2::x_in_s(bound);
            let y = Series2::y_in_t(bound);
            x.inv().mul(&y.inv()).mul(&x).mul(&y)
        }
        TableKind::LSwl => {
            let x = Series2::x_in_s(bound);
            let y = Series2::y_in_t(bound);
            x.inv().mul(&y).mul(&x).mul(&y.inv())
        }
        TableKind::NWl => Series2::z_in_s(bound)
            .inv()
            .mul(&Series2::z_in_t(bound).inv())
            .mul(&Series2::z_in_s_plus_t(bound)),
        TableKind::NSwl => Series2::z_in_s(bound)
            .inv()
            .mul(&Series2::z_in_s_plus_t(bound))
            .mul(&Series2::z_in_t(bound).inv()),
    }
}

/// The ordered product of the ray factor series of a table, ascending in
/// the table's order, truncated by total weight.
pub fn ordered_ray_product(table: &IsobaricTable, bound: u32) -> Series2 {
    assert!(table.bound() >= bound);
    let mut rays: Vec<DirectionPair> = Vec::new();
    for a in 1..=bound {
        for b in 1..=(bound - a) {
            let d = DirectionPair::new(a, b);
            if d.is_normalized() {
                rays.push(d);
            }
        }
    }
    if table.kind().swl() {
        rays.sort_by(|r, s| r.swl_cmp(s));
    } else {
        rays.sort_by(|r, s| r.wl_cmp(s));
    }
    let mut acc = Series2::one(table.kind().host(), bound);
    for ray in rays {
        let mut factor = Series2::one(table.kind().host(), bound);
        let mut m = 1;
        while m * ray.weight() <= bound {
            factor.set_coeff(m * ray.u, m * ray.v, table.entry(m * ray.u, m * ray.v).clone());
            m += 1;
        }
        acc = acc.mul(&factor);
    }
    acc
}

/// Full reconstruction check: the decomposed series equals the ordered ray
/// product up to total weight `bound`, and the decomposed series carries no
/// pure `s` or `t` powers.
pub fn reconstruct(table: &IsobaricTable, bound: u32) -> bool {
    let lhs = decomposed_series(table.kind(), bound);
    for ((i, j), c) in lhs.support() {
        if (*i == 0 || *j == 0) && (*i, *j) != (0, 0) && !c.is_zero() {
            return false;
        }
    }
    lhs == ordered_ray_product(table, bound)
}
