//! Exact rational sparse linear algebra.
//!
//! Everything downstream (Lie brackets, Chevalley differentials, homology
//! dimensions) reduces to ranks and kernels of sparse matrices over ℚ. Ranks
//! of integer matrices are exact facts, so there is no floating point anywhere
//! in this crate: ranks are computed by fraction-free (Bareiss) elimination on
//! denominator-cleared rows, kernels by rational Gauss–Jordan. The two
//! routines are independent of each other and are cross-checked in tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Arbitrary-precision rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Parse a rational from `"p"` or `"p/q"` form.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entry index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error(
        "shape mismatch: {left_rows}x{left_cols} is incompatible with {right_rows}x{right_cols}"
    )]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("composition d_out * d_in is nonzero; the pair is not a chain complex")]
    CompositionNonzero,
}

/// Sparse linear combination of basis elements, indexed by position.
///
/// No zero coefficients are stored; an empty combination is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<usize, Rational>,
}

impl LinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(index: usize, coeff: Rational) -> Self {
        let mut c = Self::default();
        c.add_term(index, coeff);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Rational {
        self.terms
            .get(&index)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, index: usize, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &LinComb, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (&i, c) in &other.terms {
            self.add_term(i, c * scale);
        }
    }

    pub fn negated(&self) -> LinComb {
        let mut out = LinComb::zero();
        for (&i, c) in &self.terms {
            out.terms.insert(i, -c.clone());
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    /// Remap indices through `f` (used when transporting a combination into a
    /// larger tensor-product basis).
    pub fn mapped(&self, f: impl Fn(usize) -> usize) -> LinComb {
        let mut out = LinComb::zero();
        for (i, c) in self.iter() {
            out.add_term(f(i), c.clone());
        }
        out
    }
}

impl FromIterator<(usize, Rational)> for LinComb {
    fn from_iter<T: IntoIterator<Item = (usize, Rational)>>(iter: T) -> Self {
        let mut c = LinComb::zero();
        for (i, r) in iter {
            c.add_term(i, r);
        }
        c
    }
}

/// Immutable sparse matrix over ℚ with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = ((usize, usize), Rational)>,
    ) -> Result<Self, LinalgError> {
        let mut m = Self::zero(rows, cols);
        for ((r, c), v) in entries {
            m.add(r, c, v)?;
        }
        Ok(m)
    }

    /// Test helper: build from dense integer rows.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.insert((i, j), Rational::from_integer(v.into()));
                }
            }
        }
        m
    }

    /// Accumulate `value` into entry `(row, col)`.
    pub fn add(&mut self, row: usize, col: usize, value: Rational) -> Result<(), LinalgError> {
        if row >= self.rows || col >= self.cols {
            return Err(LinalgError::IndexOutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if value.is_zero() {
            return Ok(());
        }
        let entry = self
            .entries
            .entry((row, col))
            .or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.entries.remove(&(row, col));
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = SparseMatrix::zero(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in other.entries.range((k, 0)..=(k, usize::MAX)) {
                out.add(i, j, a * b)?;
            }
        }
        Ok(out)
    }

    /// Rows as sparse maps, denominators cleared (row-wise integer scaling
    /// preserves rank and kernels-as-supports).
    fn integer_rows(&self) -> Vec<BTreeMap<usize, BigInt>> {
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        rows.into_iter()
            .map(|row| {
                let lcm = row
                    .values()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.into_iter()
                    .map(|(c, v)| {
                        let scaled = v * Rational::from_integer(lcm.clone());
                        debug_assert!(scaled.denom().is_one());
                        (c, scaled.numer().clone())
                    })
                    .collect()
            })
            .collect()
    }

    /// Rank over ℚ by fraction-free (Bareiss) elimination.
    ///
    /// Pivot rows are chosen by sparsity; every surviving row is updated with
    /// the two-term Bareiss rule at every step, so all intermediate entries
    /// stay integral (they are minors of the denominator-cleared matrix).
    pub fn rank(&self) -> usize {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = self
            .integer_rows()
            .into_iter()
            .filter(|r| !r.is_empty())
            .collect();
        let mut prev_pivot = BigInt::one();
        let mut rank = 0;
        while !rows.is_empty() {
            let pivot_idx = rows
                .iter()
                .enumerate()
                .min_by_key(|(i, r)| (r.len(), *i))
                .map(|(i, _)| i)
                .expect("nonempty");
            let pivot_row = rows.remove(pivot_idx);
            let (&pivot_col, pivot_val) = pivot_row.first_key_value().expect("nonempty row");
            let pivot_val = pivot_val.clone();
            rank += 1;

            let mut next_rows = Vec::with_capacity(rows.len());
            for mut row in rows {
                let at_pivot = row.remove(&pivot_col).unwrap_or_else(BigInt::zero);
                let mut updated: BTreeMap<usize, BigInt> = BTreeMap::new();
                let mut cols: Vec<usize> = row.keys().copied().collect();
                for &c in pivot_row.keys() {
                    if c != pivot_col && !row.contains_key(&c) {
                        cols.push(c);
                    }
                }
                for c in cols {
                    let a = row.get(&c).cloned().unwrap_or_else(BigInt::zero);
                    let b = pivot_row.get(&c).cloned().unwrap_or_else(BigInt::zero);
                    let num = &a * &pivot_val - &at_pivot * &b;
                    if num.is_zero() {
                        continue;
                    }
                    let (q, r) = num.div_rem(&prev_pivot);
                    debug_assert!(r.is_zero(), "Bareiss exact division failed");
                    updated.insert(c, q);
                }
                if !updated.is_empty() {
                    next_rows.push(updated);
                }
            }
            rows = next_rows;
            prev_pivot = pivot_val;
        }
        rank
    }

    /// Basis of `ker(self)` as matrix columns; column count is
    /// `cols - rank`.
    ///
    /// Computed by rational Gauss–Jordan, a route independent of [`rank`]'s
    /// Bareiss elimination.
    pub fn kernel_basis(&self) -> SparseMatrix {
        let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        rows.retain(|r| !r.is_empty());

        // (row index in `reduced`, pivot column)
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut reduced: Vec<BTreeMap<usize, Rational>> = Vec::new();

        for col in 0..self.cols {
            let candidate = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.contains_key(&col))
                .min_by_key(|(i, r)| (r.len(), *i))
                .map(|(i, _)| i);
            let Some(idx) = candidate else { continue };
            let mut pivot_row = rows.remove(idx);
            let inv = {
                let p = pivot_row.get(&col).expect("pivot entry");
                p.recip()
            };
            for v in pivot_row.values_mut() {
                *v *= &inv;
            }
            let eliminate = |row: &mut BTreeMap<usize, Rational>| {
                let Some(factor) = row.get(&col).cloned() else {
                    return;
                };
                for (&c, pv) in &pivot_row {
                    let delta = pv * &factor;
                    let entry = row.entry(c).or_insert_with(Rational::zero);
                    *entry -= delta;
                    if entry.is_zero() {
                        row.remove(&c);
                    }
                }
            };
            for row in rows.iter_mut() {
                eliminate(row);
            }
            for row in reduced.iter_mut() {
                eliminate(row);
            }
            rows.retain(|r| !r.is_empty());
            pivots.push((reduced.len(), col));
            reduced.push(pivot_row);
        }

        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();

        let mut kernel = SparseMatrix::zero(self.cols, free_cols.len());
        for (j, &free) in free_cols.iter().enumerate() {
            kernel
                .add(free, j, Rational::one())
                .expect("kernel index in range");
            for &(row_idx, pivot_col) in &pivots {
                if let Some(v) = reduced[row_idx].get(&free) {
                    kernel
                        .add(pivot_col, j, -v.clone())
                        .expect("kernel index in range");
                }
            }
        }
        kernel
    }
}

/// Homology dimension `dim ker(d_out) - rank(d_in)` of a two-step complex
/// `. --d_in--> . --d_out--> .`.
///
/// Re-checks `d_out * d_in = 0` and errors rather than reporting a dimension
/// for something that is not a complex.
pub fn homology_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize, LinalgError> {
    if d_out.cols() != d_in.rows() {
        return Err(LinalgError::ShapeMismatch {
            left_rows: d_out.rows(),
            left_cols: d_out.cols(),
            right_rows: d_in.rows(),
            right_cols: d_in.cols(),
        });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(LinalgError::CompositionNonzero);
    }
    let ker = d_out.cols() - d_out.rank();
    let im = d_in.rank();
    Ok(ker
        .checked_sub(im)
        .expect("im(d_in) is contained in ker(d_out) once the composition vanishes"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rank_identity() {
        assert_eq!(SparseMatrix::identity(2).rank(), 2);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(SparseMatrix::zero(3, 5).rank(), 0);
    }

    #[test]
    fn rank_dependent_rows() {
        // [[1,2],[2,4]] has rank 1 by hand row-reduction.
        let m = SparseMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = SparseMatrix::identity(4).kernel_basis();
        assert_eq!(k.cols(), 0);
        assert_eq!(k.rows(), 4);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = SparseMatrix::zero(2, 3).kernel_basis();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = SparseMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        // The kernel is the line through (2, -1).
        let (a, b) = (k.get(0, 0), k.get(1, 0));
        assert_eq!(a, &rat(-2, 1) * &b);
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn homology_of_zero_differentials() {
        let d_in = SparseMatrix::zero(4, 0);
        let d_out = SparseMatrix::zero(0, 4);
        assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 4);
    }

    #[test]
    fn homology_of_exact_complex() {
        let d_in = SparseMatrix::identity(3);
        let d_out = SparseMatrix::zero(0, 3);
        assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn homology_middle_of_short_complex() {
        // ker d_out = span(1,0) = im d_in.
        let d_in = SparseMatrix::from_i64_rows(&[vec![1], vec![0]]);
        let d_out = SparseMatrix::from_i64_rows(&[vec![0, 1]]);
        assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn homology_rejects_shape_mismatch() {
        let d_in = SparseMatrix::zero(3, 1);
        let d_out = SparseMatrix::zero(1, 2);
        assert!(matches!(
            homology_dim(&d_in, &d_out),
            Err(LinalgError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn homology_rejects_nonzero_composition() {
        let d_in = SparseMatrix::identity(2);
        let d_out = SparseMatrix::identity(2);
        assert_eq!(
            homology_dim(&d_in, &d_out),
            Err(LinalgError::CompositionNonzero)
        );
    }

    #[test]
    fn lincomb_cancels_to_zero() {
        let mut c = LinComb::zero();
        c.add_term(3, rat(1, 2));
        c.add_term(3, rat(-1, 2));
        assert!(c.is_zero());
    }

    #[test]
    fn parse_rational_normalizes() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    prop_compose! {
        fn arb_matrix(max_dim: usize)
            (rows in 1..=max_dim, cols in 1..=max_dim)
            (entries in proptest::collection::vec((0..rows, 0..cols, -4i64..=4, 1i64..=3), 0..=rows*cols),
             rows in Just(rows), cols in Just(cols))
            -> SparseMatrix
        {
            let mut m = SparseMatrix::zero(rows, cols);
            for (r, c, n, d) in entries {
                m.add(r, c, Rational::new(n.into(), d.into())).unwrap();
            }
            m
        }
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(6)) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
        }

        #[test]
        fn kernel_columns_are_killed(m in arb_matrix(6)) {
            let k = m.kernel_basis();
            prop_assert!(m.mul(&k).unwrap().is_zero());
            // and they are independent
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn rank_invariant_under_permutation_and_scaling(
            m in arb_matrix(5),
            seed in 0u64..1000,
            scale_num in 1i64..=5,
            scale_den in 1i64..=5,
        ) {
            // deterministic pseudo-permutations from the seed
            let perm = |n: usize, s: u64| -> Vec<usize> {
                let mut v: Vec<usize> = (0..n).collect();
                let mut state = s.wrapping_add(1);
                for i in (1..n).rev() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let j = (state >> 33) as usize % (i + 1);
                    v.swap(i, j);
                }
                v
            };
            let rp = perm(m.rows(), seed);
            let cp = perm(m.cols(), seed ^ 0xdead_beef);
            let mut permuted = SparseMatrix::zero(m.rows(), m.cols());
            for (r, c, v) in m.entries() {
                let scaled = if rp[r] == 0 {
                    v * Rational::new(scale_num.into(), scale_den.into())
                } else {
                    v.clone()
                };
                permuted.add(rp[r], cp[c], scaled).unwrap();
            }
            prop_assert_eq!(m.rank(), permuted.rank());
        }

        #[test]
        fn bareiss_agrees_with_gauss_jordan(m in arb_matrix(6)) {
            // two independent elimination routes
            prop_assert_eq!(m.rank(), m.cols() - m.kernel_basis().cols());
        }
    }
}
