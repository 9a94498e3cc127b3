//! Weight-truncated homological Chevalley complexes and their bigraded
//! homology.
//!
//! For a graded Lie superalgebra `g` and a Lie weight `w`, the complex is
//!
//! ```text
//! 0 → (Sym^w(g[1]))_w → (Sym^{w-1}(g[1]))_w → ⋯ → (Sym^1(g[1]))_w → 0
//! ```
//!
//! with the standard differential `D(y_1⋯y_n) = Σ_{i<j} ε(i,j) ⟦y_i,y_j⟧
//! y_1⋯ŷ_i⋯ŷ_j⋯y_n`, where ε(i,j) is the Koszul sign of moving `y_i` then
//! `y_j` to the front in the shifted degrees, and the shifted bracket is
//! `⟦y_1,y_2⟧ = (-1)^{|y_1|} s[s⁻¹y_1, s⁻¹y_2]`. Any consistent décalage
//! alternative changes matrices by invertible diagonal signs only; `D² = 0`
//! is asserted at construction time, always, so an inconsistent convention
//! cannot slip through.
//!
//! `D` preserves the Tate weight and Lie weight, and trades one unit of word
//! length for one unit of internal degree (the sum of unshifted degrees of
//! the letters is invariant). The homology is therefore computed blockwise
//! per (unshifted degree sum, Tate weight), and a monomial surviving at word
//! length `n` in a block with degree sum `U` contributes to cohomological
//! degree `U - n`.

use crate::freelie::{FreeLieError, GLieAlgebra};
use crate::grvec::{sym_monomials, GradedSpace, SymMonomial};
use crate::qlinalg::{homology_dim, LinalgError, SparseMatrix};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChevalleyError {
    #[error(
        "Lie algebra is truncated at weight {max_weight}, below the requested weight {requested}"
    )]
    TruncationExceeded { max_weight: u32, requested: u32 },
    #[error("internal error: D² ≠ 0 between lengths {n} and {}; sign convention bug", n - 2)]
    InternalD2Nonzero { n: usize },
    #[error("internal linear algebra error: {0}")]
    Linalg(#[from] LinalgError),
}

/// Dimensions of (co)homology per (cohomological degree, Tate weight).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(i64, i64), usize>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((i64, i64), usize)>) -> Self {
        let mut t = Self::new();
        for ((d, w), dim) in entries {
            t.add(d, w, dim);
        }
        t
    }

    pub fn add(&mut self, degree: i64, weight: i64, dim: usize) {
        if dim > 0 {
            *self.entries.entry((degree, weight)).or_insert(0) += dim;
        }
    }

    pub fn get(&self, degree: i64, weight: i64) -> usize {
        self.entries.get(&(degree, weight)).copied().unwrap_or(0)
    }

    /// Sorted (degree, weight, dim) rows; zero rows are never stored.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, usize)> + '_ {
        self.entries.iter().map(|(&(d, w), &dim)| (d, w, dim))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(d, _), &dim) in &self.entries {
            *out.entry(d).or_insert(0) += dim;
        }
        out
    }

    /// Re-index by a degree and weight offset.
    pub fn shifted(&self, degree_offset: i64, weight_offset: i64) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .map(|(&(d, w), &dim)| ((d + degree_offset, w + weight_offset), dim))
                .collect(),
        }
    }
}

/// The weight-`w` Chevalley complex: terms indexed by word length `n = 1..=w`
/// and differentials `D_n : term(n) → term(n-1)`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    weight: u32,
    terms: Vec<GradedSpace>,
    monomials: Vec<Vec<SymMonomial>>,
    differentials: Vec<SparseMatrix>,
    shifted_space: GradedSpace,
}

impl ChainComplex {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// The space at word length `n` (1-indexed).
    pub fn term(&self, n: usize) -> &GradedSpace {
        &self.terms[n - 1]
    }

    /// `D_n : term(n) → term(n-1)` for `2 <= n <= w`.
    pub fn differential(&self, n: usize) -> &SparseMatrix {
        &self.differentials[n - 2]
    }

    pub fn term_dims(&self) -> Vec<usize> {
        self.terms.iter().map(GradedSpace::dim).collect()
    }

    pub(crate) fn monomials(&self, n: usize) -> &[SymMonomial] {
        &self.monomials[n - 1]
    }

    pub(crate) fn shifted_space(&self) -> &GradedSpace {
        &self.shifted_space
    }
}

fn parity(space: &GradedSpace, i: usize) -> bool {
    space.element(i).bidegree.is_odd()
}

/// Build the weight-`w` truncation of the homological Chevalley complex.
pub fn ce_complex(g: &GLieAlgebra, w: u32) -> Result<ChainComplex, ChevalleyError> {
    assert!(w >= 1, "weights start at 1");
    if g.max_weight() < w {
        return Err(ChevalleyError::TruncationExceeded {
            max_weight: g.max_weight(),
            requested: w,
        });
    }
    let shifted = g.space().shift(1);

    let mut monomials: Vec<Vec<SymMonomial>> = Vec::with_capacity(w as usize);
    let mut terms: Vec<GradedSpace> = Vec::with_capacity(w as usize);
    for n in 1..=(w as usize) {
        let layer: Vec<SymMonomial> = sym_monomials(&shifted, n)
            .into_iter()
            .filter(|m| m.bidegree(&shifted).lie_weight == w)
            .collect();
        let space = GradedSpace::new(
            layer
                .iter()
                .map(|m| crate::grvec::BasisElement::new(m.label(&shifted), m.bidegree(&shifted)))
                .collect(),
        )
        .expect("monomial labels are canonical and distinct");
        monomials.push(layer);
        terms.push(space);
    }

    let index_maps: Vec<BTreeMap<&[usize], usize>> = monomials
        .iter()
        .map(|layer| {
            layer
                .iter()
                .enumerate()
                .map(|(i, m)| (m.letters(), i))
                .collect()
        })
        .collect();

    let mut differentials = Vec::with_capacity(w.saturating_sub(1) as usize);
    for n in 2..=(w as usize) {
        let source = &monomials[n - 1];
        let target_index = &index_maps[n - 2];
        let mut d = SparseMatrix::zero(monomials[n - 2].len(), source.len());
        for (col, m) in source.iter().enumerate() {
            let letters = m.letters();
            for p in 0..letters.len() {
                for q in (p + 1)..letters.len() {
                    let (ip, iq) = (letters[p], letters[q]);
                    // Koszul sign of extracting y_p then y_q to the front,
                    // in shifted degrees
                    let before_p: u32 = letters[..p]
                        .iter()
                        .map(|&r| parity(&shifted, r) as u32)
                        .sum();
                    let before_q: u32 = letters[..q]
                        .iter()
                        .map(|&r| parity(&shifted, r) as u32)
                        .sum::<u32>()
                        - parity(&shifted, ip) as u32;
                    let mut sign = (parity(&shifted, ip) as u32) * before_p
                        + (parity(&shifted, iq) as u32) * before_q;
                    // décalage: ⟦y_1,y_2⟧ = (-1)^{|y_1|} s[s⁻¹y_1, s⁻¹y_2]
                    sign += parity(&shifted, ip) as u32;

                    let bracket = g.bracket(ip, iq).map_err(|e| match e {
                        FreeLieError::TruncationExceeded { max_weight, .. } => {
                            ChevalleyError::TruncationExceeded {
                                max_weight,
                                requested: w,
                            }
                        }
                        other => panic!("unexpected bracket failure: {other}"),
                    })?;

                    let mut rest: Vec<usize> = Vec::with_capacity(letters.len() - 2);
                    for (r, &l) in letters.iter().enumerate() {
                        if r != p && r != q {
                            rest.push(l);
                        }
                    }
                    for (target, coeff) in bracket.iter() {
                        let t_odd = parity(&shifted, target);
                        if t_odd && rest.contains(&target) {
                            continue; // odd square in Sym
                        }
                        let insert_at = rest.partition_point(|&l| l < target);
                        let passed: u32 = rest[..insert_at]
                            .iter()
                            .map(|&r| parity(&shifted, r) as u32)
                            .sum();
                        let total_sign = sign + (t_odd as u32) * passed;
                        let mut word = rest.clone();
                        word.insert(insert_at, target);
                        let row = *target_index
                            .get(word.as_slice())
                            .expect("bracket preserves Lie weight, so the image monomial exists");
                        let mut c = coeff.clone();
                        if total_sign % 2 == 1 {
                            c = -c;
                        }
                        d.add(row, col, c)?;
                    }
                }
            }
        }

        // every entry must preserve Tate weight and trade one unit of word
        // length for one unit of internal degree
        for (row, col, _) in d.entries() {
            let src = monomials[n - 1][col].bidegree(&shifted);
            let dst = monomials[n - 2][row].bidegree(&shifted);
            assert_eq!(
                src.tate_weight, dst.tate_weight,
                "D must preserve Tate weight"
            );
            assert_eq!(src.lie_weight, dst.lie_weight, "D must preserve Lie weight");
            assert_eq!(
                dst.coh_deg,
                src.coh_deg + 1,
                "D must raise internal degree by 1"
            );
        }
        differentials.push(d);
    }

    // hard self-check, not only in tests: D_{n-1} ∘ D_n = 0
    for n in 3..=(w as usize) {
        let product = differentials[n - 3].mul(&differentials[n - 2])?;
        if !product.is_zero() {
            return Err(ChevalleyError::InternalD2Nonzero { n });
        }
    }

    Ok(ChainComplex {
        weight: w,
        terms,
        monomials,
        differentials,
        shifted_space: shifted,
    })
}

/// Homology of the weight-`w` Chevalley complex as a Betti table over
/// (total cohomological degree, Tate weight).
pub fn ce_homology(g: &GLieAlgebra, w: u32) -> Result<BettiTable, ChevalleyError> {
    let complex = ce_complex(g, w)?;
    homology_of_complex(&complex)
}

/// Block key: (sum of unshifted letter degrees, Tate weight). Both are
/// preserved by `D`; a length-`n` class in block `(U, t)` has cohomological
/// degree `U - n`.
pub(crate) type BlockKey = (i64, i64);

/// Homology dimensions per block and word length: `result[key][n-1]` is the
/// homology at length `n` within the block.
pub(crate) fn blockwise_homology(
    complex: &ChainComplex,
) -> Result<BTreeMap<BlockKey, Vec<usize>>, ChevalleyError> {
    let w = complex.weight() as usize;
    let shifted = complex.shifted_space();

    let mut blocks: Vec<BTreeMap<BlockKey, Vec<usize>>> = Vec::with_capacity(w);
    for n in 1..=w {
        let mut layer: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
        for (i, m) in complex.monomials(n).iter().enumerate() {
            let bd = m.bidegree(shifted);
            let key = (bd.coh_deg + n as i64, bd.tate_weight);
            layer.entry(key).or_default().push(i);
        }
        blocks.push(layer);
    }

    let all_keys: std::collections::BTreeSet<BlockKey> = blocks
        .iter()
        .flat_map(|layer| layer.keys().copied())
        .collect();

    let mut out = BTreeMap::new();
    for key in all_keys {
        let empty = Vec::new();
        let members: Vec<&Vec<usize>> = (1..=w)
            .map(|n| blocks[n - 1].get(&key).unwrap_or(&empty))
            .collect();
        let restricted: Vec<SparseMatrix> = (2..=w)
            .map(|n| {
                let rows = members[n - 2];
                let cols = members[n - 1];
                let row_pos: BTreeMap<usize, usize> =
                    rows.iter().enumerate().map(|(l, &g)| (g, l)).collect();
                let col_pos: BTreeMap<usize, usize> =
                    cols.iter().enumerate().map(|(l, &g)| (g, l)).collect();
                let mut m = SparseMatrix::zero(rows.len(), cols.len());
                for (r, c, v) in complex.differential(n).entries() {
                    if let Some(&lc) = col_pos.get(&c) {
                        let lr = *row_pos
                            .get(&r)
                            .expect("block decomposition is exact: D preserves the key");
                        m.add(lr, lc, v.clone()).expect("indices in range");
                    }
                }
                m
            })
            .collect();

        let mut dims = vec![0usize; w];
        for n in 1..=w {
            let dim_n = members[n - 1].len();
            if dim_n == 0 {
                continue;
            }
            let d_out = if n >= 2 {
                restricted[n - 2].clone()
            } else {
                SparseMatrix::zero(0, dim_n)
            };
            let d_in = if n < w {
                restricted[n - 1].clone()
            } else {
                SparseMatrix::zero(dim_n, 0)
            };
            dims[n - 1] = homology_dim(&d_in, &d_out)?;
        }
        out.insert(key, dims);
    }
    Ok(out)
}

pub(crate) fn homology_of_complex(complex: &ChainComplex) -> Result<BettiTable, ChevalleyError> {
    let mut table = BettiTable::new();
    for ((degree_sum, tate), dims) in blockwise_homology(complex)? {
        for (n, &h) in dims.iter().enumerate() {
            table.add(degree_sum - (n + 1) as i64, tate, h);
        }
    }
    Ok(table)
}
