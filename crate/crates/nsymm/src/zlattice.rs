//! Exact integer linear algebra: Hermite and Smith normal forms,
//! determinants, kernels, and lattice comparison.
//!
//! Matrices here are small (dimensions below ~64) and entries are
//! arbitrary-precision, so plain elementary-operation algorithms with
//! min-absolute-value pivoting are enough; no modular tricks.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::ncpoly::Int;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a += q * row_b
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(a, j) + q * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col_a += q * col_b
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, a) + q * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j).clone();
            self.set(a, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; square only.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.get(i, k).is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(k, k) * m.get(i, j) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, Int::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Result of the Smith decomposition: `u * m * v = d` with `u`, `v`
/// unimodular and `d` diagonal, nonnegative, each entry dividing the next.
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .filter(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let steps = m.rows().min(m.cols());

    for k in 0..steps {
        'pivot: loop {
            // Min-absolute-value pivot in the trailing submatrix.
            let mut best: Option<(usize, usize)> = None;
            for i in k..d.rows() {
                for j in k..d.cols() {
                    if d.get(i, j).is_zero() {
                        continue;
                    }
                    match &best {
                        Some((bi, bj)) if d.get(*bi, *bj).abs() <= d.get(i, j).abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot; // trailing block is zero
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            // Clear column k below the pivot.
            let mut dirty = false;
            for i in k + 1..d.rows() {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let q = -(d.get(i, k) / d.get(k, k));
                d.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                if !d.get(i, k).is_zero() {
                    dirty = true; // remainder left, pivot again
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Clear row k right of the pivot.
            for j in k + 1..d.cols() {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let q = -(d.get(k, j) / d.get(k, k));
                d.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !d.get(k, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Divisibility: every trailing entry must be a multiple of the
            // pivot; fold an offending row into row k and restart.
            for i in k + 1..d.rows() {
                for j in k + 1..d.cols() {
                    if !(d.get(i, j) % d.get(k, k)).is_zero() {
                        d.add_row_multiple(k, i, &Int::one());
                        u.add_row_multiple(k, i, &Int::one());
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }

    debug_assert_eq!(u.mul(m).mul(&v), d, "Smith recomposition");
    Snf { u, d, v }
}

/// Canonical row Hermite normal form: echelon with positive pivots, entries
/// above each pivot reduced into `[0, pivot)`, zero rows dropped. Two row
/// lattices are equal iff their forms are equal.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let mut r = 0usize;
    for c in 0..h.cols() {
        // Euclid on the entries of column c in rows r.., until one remains.
        loop {
            let mut nonzero: Vec<usize> = (r..h.rows()).filter(|&i| !h.get(i, c).is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                h.swap_rows(r, nonzero[0]);
                break;
            }
            nonzero.sort_by_key(|&i| h.get(i, c).abs());
            let (small, other) = (nonzero[0], nonzero[1]);
            let q = -(h.get(other, c) / h.get(small, c));
            h.add_row_multiple(other, small, &q);
        }
        if r < h.rows() && !h.get(r, c).is_zero() {
            if h.get(r, c).is_negative() {
                h.negate_row(r);
            }
            // Reduce the entries above the pivot.
            let pivot = h.get(r, c).clone();
            for i in 0..r {
                let q = -Int::div_floor(h.get(i, c), &pivot);
                h.add_row_multiple(i, r, &q);
            }
            r += 1;
        }
    }
    // Drop the zero tail.
    let rows: Vec<Vec<Int>> = (0..r).map(|i| h.row(i).to_vec()).collect();
    IntMatrix::from_rows(rows)
}

use num_integer::Integer as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    /// Row `row` of the candidate sublattice is not an integer combination
    /// of the ambient rows.
    NotContained { row: usize },
    ShapeMismatch,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::NotContained { row } => {
                write!(f, "row {row} is not contained in the ambient lattice")
            }
            LatticeError::ShapeMismatch => write!(f, "matrices must have equal column count"),
        }
    }
}

impl std::error::Error for LatticeError {}

/// Expresses each row of `a` over the Hermite basis of `b`'s row lattice.
/// Exact integer forward substitution; failure means `a` is not a
/// sublattice of `b`.
fn coords_in_lattice(a: &IntMatrix, b_hnf: &IntMatrix) -> Result<IntMatrix, LatticeError> {
    let pivots: Vec<usize> = (0..b_hnf.rows())
        .map(|i| (0..b_hnf.cols()).find(|&j| !b_hnf.get(i, j).is_zero()).expect("no zero rows in HNF"))
        .collect();
    let mut coords = IntMatrix::zero(a.rows(), b_hnf.rows());
    for r in 0..a.rows() {
        let mut residual: Vec<Int> = a.row(r).to_vec();
        for (i, &p) in pivots.iter().enumerate() {
            let (q, rem) = residual[p].div_rem(b_hnf.get(i, p));
            if !rem.is_zero() {
                return Err(LatticeError::NotContained { row: r });
            }
            if !q.is_zero() {
                for (j, r) in residual.iter_mut().enumerate() {
                    *r = &*r - &(&q * b_hnf.get(i, j));
                }
            }
            coords.set(r, i, q);
        }
        if residual.iter().any(|v| !v.is_zero()) {
            return Err(LatticeError::NotContained { row: r });
        }
    }
    Ok(coords)
}

/// Index `[span(b) : span(a)]` of nested row lattices: the product of the
/// Smith invariant factors of the coordinate matrix of `a` over `b`, or
/// `Infinite` when the ranks differ.
pub fn lattice_index(a: &IntMatrix, b: &IntMatrix) -> Result<LatticeIndex, LatticeError> {
    if a.cols() != b.cols() {
        return Err(LatticeError::ShapeMismatch);
    }
    let hb = hermite_normal_form(b);
    let coords = coords_in_lattice(a, &hb)?;
    let snf = smith_normal_form(&coords);
    if snf.rank() < hb.rows() {
        return Ok(LatticeIndex::Infinite);
    }
    let mut idx = Int::one();
    for f in snf.invariant_factors() {
        idx *= f;
    }
    Ok(LatticeIndex::Finite(idx))
}

/// True when the row lattice is a pure (saturated) sublattice of the
/// ambient free group: all Smith invariant factors are 1.
pub fn is_pure_sublattice(a: &IntMatrix) -> bool {
    smith_normal_form(a).invariant_factors().iter().all(|f| f.is_one())
}

/// A basis of `{x : x * m = 0}` over the integers. The rows returned span a
/// saturated sublattice (they come from a unimodular transform).
pub fn left_kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let diag = m.rows().min(m.cols());
    let mut rows = Vec::new();
    for i in 0..m.rows() {
        if i >= diag || snf.d.get(i, i).is_zero() {
            rows.push(snf.u.row(i).to_vec());
        }
    }
    if rows.is_empty() {
        IntMatrix::zero(0, m.rows())
    } else {
        IntMatrix::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use crate::rng::Rng;

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 6]]));
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
    }

    #[test]
    fn snf_identity_and_rank_deficient() {
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).d, id);

        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 0]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, m);
        assert_eq!(snf.rank(), 1);
    }

    #[test]
    fn snf_divisibility_chain_random() {
        let mut rng = Rng::new(2024);
        for _ in 0..40 {
            let rows = rng.below(4) as usize + 1;
            let cols = rng.below(4) as usize + 1;
            let mut m = IntMatrix::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, int(rng.range(-9, 9)));
                }
            }
            let snf = smith_normal_form(&m);
            assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d, "recomposition");
            assert_eq!(snf.u.det().abs(), int(1), "u unimodular");
            assert_eq!(snf.v.det().abs(), int(1), "v unimodular");
            let fs = snf.invariant_factors();
            for w in fs.windows(2) {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain in {fs:?}");
            }
            if rows == cols {
                let mut prod = Int::one();
                for f in &fs {
                    prod *= f;
                }
                if fs.len() == rows {
                    assert_eq!(prod, m.det().abs(), "determinant preserved");
                }
            }
        }
    }

    #[test]
    fn snf_invariants_stable_under_permutation() {
        let m = IntMatrix::from_i64_rows(&[&[4, 6, 2], &[2, 8, 10], &[0, 4, 4]]);
        let mut p = m.clone();
        p.swap_rows(0, 2);
        p.swap_cols(1, 2);
        assert_eq!(
            smith_normal_form(&m).invariant_factors(),
            smith_normal_form(&p).invariant_factors()
        );
    }

    #[test]
    fn hermite_canonical_for_equal_lattices() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[0, 4, 1]]);
        let b = IntMatrix::from_i64_rows(&[&[1, 6, 4], &[0, 4, 1], &[1, 2, 3]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));

        let c = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[0, 4, 2]]);
        assert_ne!(hermite_normal_form(&a), hermite_normal_form(&c));
    }

    #[test]
    fn lattice_index_examples() {
        let b = IntMatrix::identity(2);
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        assert_eq!(lattice_index(&a, &b).unwrap(), LatticeIndex::Finite(int(4)));
        assert_eq!(lattice_index(&b, &b).unwrap(), LatticeIndex::Finite(int(1)));

        let a2 = IntMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]);
        assert_eq!(lattice_index(&a2, &b).unwrap(), LatticeIndex::Finite(int(2)));
    }

    #[test]
    fn lattice_index_detects_non_sublattice_and_rank_drop() {
        let b = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]);
        let a = IntMatrix::from_i64_rows(&[&[1, 0]]);
        assert_eq!(lattice_index(&a, &b), Err(LatticeError::NotContained { row: 0 }));

        let thin = IntMatrix::from_i64_rows(&[&[2, 0]]);
        assert_eq!(lattice_index(&thin, &b).unwrap(), LatticeIndex::Infinite);
    }

    #[test]
    fn lattice_index_is_multiplicative_on_chains() {
        let mut rng = Rng::new(7);
        for _ in 0..25 {
            let c = IntMatrix::identity(2);
            let mk = |rng: &mut Rng| {
                loop {
                    let m = IntMatrix::from_rows(vec![
                        vec![int(rng.range(-3, 3)), int(rng.range(-3, 3))],
                        vec![int(rng.range(-3, 3)), int(rng.range(-3, 3))],
                    ]);
                    if !m.det().is_zero() {
                        return m;
                    }
                }
            };
            let bm = mk(&mut rng);
            let am = mk(&mut rng);
            // a = am * bm spans a sublattice of b = bm (rows combine rows of bm).
            let a = am.mul(&bm);
            let (ib, ia, iab) = (
                lattice_index(&bm, &c).unwrap(),
                lattice_index(&a, &bm).unwrap(),
                lattice_index(&a, &c).unwrap(),
            );
            match (ib, ia, iab) {
                (LatticeIndex::Finite(x), LatticeIndex::Finite(y), LatticeIndex::Finite(z)) => {
                    assert_eq!(x * y, z)
                }
                other => panic!("unexpected infinite index {other:?}"),
            }
        }
    }

    #[test]
    fn purity_examples() {
        assert!(is_pure_sublattice(&IntMatrix::from_i64_rows(&[&[1, 0]])));
        assert!(!is_pure_sublattice(&IntMatrix::from_i64_rows(&[&[2, 0]])));
        assert!(!is_pure_sublattice(&IntMatrix::from_i64_rows(&[&[1, 1], &[1, -1]])));
    }

    #[test]
    fn left_kernel_is_saturated_and_annihilates() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[0, 1]]);
        let k = left_kernel_basis(&m);
        assert_eq!(k.rows(), 1);
        let prod = k.mul(&m);
        assert!(prod.row(0).iter().all(|v| v.is_zero()));
        assert!(is_pure_sublattice(&k));

        let full = left_kernel_basis(&IntMatrix::identity(3));
        assert_eq!(full.rows(), 0);
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), int(18));
        let singular = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(), int(0));
    }
}
