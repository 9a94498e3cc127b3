//! Trigraded rational vector spaces with Koszul-sign-aware functors.
//!
//! Every basis element carries a [`Bidegree`]: cohomological degree,
//! Frobenius/Tate weight (normalized so that a Tate twist by `-m` raises the
//! weight by `2m`), and a non-negative Lie/cardinality weight. Parity — the
//! only input to Koszul signs — is the cohomological degree mod 2.
//!
//! Conventions fixed here and relied on everywhere else:
//!
//! * shift: `(V[n])^i = V^{n+i}`, so `shift(V, n)` lowers `coh_deg` by `n`
//!   and a degree-0 line shifted by `-1` sits in degree `+1`;
//! * symmetric powers follow the Koszul rule: monomials are multisets over
//!   even-parity basis elements and strict subsets over odd-parity ones
//!   (odd elements square to zero);
//! * monomials are kept in a canonical sorted form, so the sign of a product
//!   is the sign of the sorting permutation counted on odd transpositions.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrvecError {
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
}

/// (cohomological degree, Tate weight, Lie weight) of a basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree {
    pub coh_deg: i64,
    pub tate_weight: i64,
    pub lie_weight: u32,
}

impl Bidegree {
    pub fn new(coh_deg: i64, tate_weight: i64, lie_weight: u32) -> Self {
        Self {
            coh_deg,
            tate_weight,
            lie_weight,
        }
    }

    /// Parity governing all Koszul signs.
    pub fn is_odd(&self) -> bool {
        self.coh_deg.rem_euclid(2) == 1
    }

    pub fn plus(&self, other: &Bidegree) -> Bidegree {
        Bidegree {
            coh_deg: self.coh_deg + other.coh_deg,
            tate_weight: self.tate_weight + other.tate_weight,
            lie_weight: self.lie_weight + other.lie_weight,
        }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(deg {}, wt {}, lie {})",
            self.coh_deg, self.tate_weight, self.lie_weight
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub bidegree: Bidegree,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, bidegree: Bidegree) -> Self {
        Self {
            label: label.into(),
            bidegree,
        }
    }
}

/// Finite-dimensional trigraded vector space with an ordered, labeled basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
}

impl GradedSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self, GrvecError> {
        let mut seen = std::collections::BTreeSet::new();
        for b in &basis {
            if !seen.insert(b.label.as_str()) {
                return Err(GrvecError::DuplicateLabel(b.label.clone()));
            }
        }
        Ok(Self { basis })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// One-dimensional space on a single labeled element.
    pub fn line(label: impl Into<String>, bidegree: Bidegree) -> Self {
        Self {
            basis: vec![BasisElement::new(label, bidegree)],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, index: usize) -> &BasisElement {
        &self.basis[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// `(V[n])^i = V^{n+i}`: lowers every `coh_deg` by `n`.
    pub fn shift(&self, n: i64) -> GradedSpace {
        let basis = self
            .basis
            .iter()
            .map(|b| {
                let mut bd = b.bidegree;
                bd.coh_deg -= n;
                BasisElement::new(b.label.clone(), bd)
            })
            .collect();
        GradedSpace { basis }
    }

    /// Tate twist `V(m)`: lowers every `tate_weight` by `2m`.
    pub fn tate_twist(&self, m: i64) -> GradedSpace {
        let basis = self
            .basis
            .iter()
            .map(|b| {
                let mut bd = b.bidegree;
                bd.tate_weight -= 2 * m;
                BasisElement::new(b.label.clone(), bd)
            })
            .collect();
        GradedSpace { basis }
    }

    /// Tensor product; basis is ordered pairs (left-major) and all three
    /// gradings add.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for l in &self.basis {
            for r in &other.basis {
                basis.push(BasisElement::new(
                    format!("{}⊗{}", l.label, r.label),
                    l.bidegree.plus(&r.bidegree),
                ));
            }
        }
        GradedSpace { basis }
    }

    /// Koszul symmetric power `Sym^n`, `n >= 1`.
    pub fn sym_power(&self, n: usize) -> GradedSpace {
        assert!(n >= 1, "Sym here is non-unital; n must be at least 1");
        let basis = sym_monomials(self, n)
            .into_iter()
            .map(|m| BasisElement::new(m.label(self), m.bidegree(self)))
            .collect();
        GradedSpace { basis }
    }

    /// Subspace spanned by basis elements of the given Lie weight.
    pub fn lie_weight_component(&self, w: u32) -> GradedSpace {
        let basis = self
            .basis
            .iter()
            .filter(|b| b.bidegree.lie_weight == w)
            .cloned()
            .collect();
        GradedSpace { basis }
    }

    /// Replace every element's Lie weight (used to install the generator
    /// grading of a free Lie algebra).
    pub fn with_lie_weight(&self, w: u32) -> GradedSpace {
        let basis = self
            .basis
            .iter()
            .map(|b| {
                let mut bd = b.bidegree;
                bd.lie_weight = w;
                BasisElement::new(b.label.clone(), bd)
            })
            .collect();
        GradedSpace { basis }
    }

    pub fn dims_by_bidegree(&self) -> BTreeMap<Bidegree, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.bidegree).or_insert(0) += 1;
        }
        out
    }
}

/// Monomial in a symmetric power: ascending letter indices into the base
/// space, odd-parity letters pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymMonomial {
    letters: Vec<usize>,
}

impl SymMonomial {
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn bidegree(&self, space: &GradedSpace) -> Bidegree {
        self.letters.iter().fold(Bidegree::new(0, 0, 0), |acc, &i| {
            acc.plus(&space.element(i).bidegree)
        })
    }

    pub fn label(&self, space: &GradedSpace) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let letter = self.letters[i];
            let mut count = 1;
            while i + count < self.letters.len() && self.letters[i + count] == letter {
                count += 1;
            }
            let name = &space.element(letter).label;
            if count == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{count}"));
            }
            i += count;
        }
        parts.join("·")
    }
}

/// All degree-`n` Koszul-symmetric monomials over `space`, in lexicographic
/// order on letter sequences.
pub fn sym_monomials(space: &GradedSpace, n: usize) -> Vec<SymMonomial> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(
        space: &GradedSpace,
        n_left: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<SymMonomial>,
    ) {
        if n_left == 0 {
            out.push(SymMonomial {
                letters: current.clone(),
            });
            return;
        }
        for i in start..space.dim() {
            let odd = space.element(i).bidegree.is_odd();
            current.push(i);
            rec(space, n_left - 1, if odd { i + 1 } else { i }, current, out);
            current.pop();
        }
    }
    rec(space, n, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn deg(d: i64, w: i64) -> Bidegree {
        Bidegree::new(d, w, 0)
    }

    fn space(elems: &[(&str, i64, i64, u32)]) -> GradedSpace {
        GradedSpace::new(
            elems
                .iter()
                .map(|&(l, d, w, lw)| BasisElement::new(l, Bidegree::new(d, w, lw)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn shift_moves_degree_zero_line_to_degree_one() {
        let v = GradedSpace::line("1", deg(0, 0));
        let shifted = v.shift(-1);
        assert_eq!(shifted.element(0).bidegree.coh_deg, 1);
        assert_eq!(shifted.element(0).bidegree.tate_weight, 0);
    }

    #[test]
    fn shift_by_zero_is_identity() {
        let v = space(&[("a", 2, 2, 0), ("b", -1, 4, 1)]);
        assert_eq!(v.shift(0), v);
    }

    #[test]
    fn shifts_compose_additively() {
        let v = space(&[("a", 2, 2, 0), ("b", -1, 4, 1)]);
        assert_eq!(v.shift(3).shift(-5), v.shift(-2));
    }

    #[test]
    fn twist_by_minus_n_gives_weight_2n() {
        let v = GradedSpace::line("1", deg(0, 0));
        let t = v.tate_twist(-3);
        assert_eq!(t.element(0).bidegree.tate_weight, 6);
        assert_eq!(t.element(0).bidegree.coh_deg, 0);
    }

    #[test]
    fn twists_compose_additively() {
        let v = space(&[("a", 2, 2, 0)]);
        assert_eq!(v.tate_twist(1).tate_twist(-4), v.tate_twist(-3));
    }

    #[test]
    fn tensor_with_unit_line_preserves_bidegrees() {
        let v = space(&[("a", 1, 2, 1), ("b", 3, 0, 2)]);
        let unit = GradedSpace::line("1", deg(0, 0));
        let t = v.tensor(&unit);
        for (x, y) in v.basis().iter().zip(t.basis()) {
            assert_eq!(x.bidegree, y.bidegree);
        }
    }

    #[test]
    fn tensor_dim_multiplies_and_degrees_add() {
        let v = space(&[("a", 1, 2, 0)]);
        let w = space(&[("b", 2, 2, 0), ("c", 0, 0, 1)]);
        let t = v.tensor(&w);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.element(0).bidegree, Bidegree::new(3, 4, 0));
    }

    #[test]
    fn sym_square_of_odd_generator_vanishes() {
        let v = space(&[("x", 1, 0, 1)]);
        assert_eq!(v.sym_power(2).dim(), 0);
    }

    #[test]
    fn sym_square_of_even_generator_is_a_line() {
        let v = space(&[("u", 2, 0, 1)]);
        let s = v.sym_power(2);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.element(0).label, "u^2");
        assert_eq!(s.element(0).bidegree, Bidegree::new(4, 0, 2));
    }

    #[test]
    fn sym_cube_of_even_plus_odd() {
        // direct enumeration: u^3 and u^2·v only
        let v = space(&[("u", 2, 2, 1), ("v", 3, 2, 2)]);
        let s = v.sym_power(3);
        let labels: Vec<_> = s.basis().iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, vec!["u^3", "u^2·v"]);
    }

    #[test]
    fn lie_weight_component_picks_the_layer() {
        let v = space(&[("a", 1, 0, 1), ("b", 2, 0, 2), ("c", 0, 0, 1)]);
        assert_eq!(v.lie_weight_component(1).dim(), 2);
        assert_eq!(v.lie_weight_component(2).dim(), 1);
        assert_eq!(v.lie_weight_component(7).dim(), 0);
        let w1 = v.lie_weight_component(1);
        assert_eq!(
            w1.basis().iter().map(|b| &b.label).collect::<Vec<_>>(),
            vec!["a", "c"]
        );
    }

    #[test]
    fn whole_space_in_one_weight_is_recovered() {
        let v = space(&[("a", 1, 0, 3), ("b", 2, 0, 3)]);
        assert_eq!(v.lie_weight_component(3), v);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let err = GradedSpace::new(vec![
            BasisElement::new("a", deg(0, 0)),
            BasisElement::new("a", deg(1, 0)),
        ])
        .unwrap_err();
        assert_eq!(err, GrvecError::DuplicateLabel("a".into()));
    }

    /// Independent count: multisets on the even part times subsets on the odd
    /// part.
    fn super_binomial(even: usize, odd: usize, n: usize) -> usize {
        fn choose(n: usize, k: usize) -> usize {
            if k > n {
                return 0;
            }
            let mut acc = 1usize;
            for i in 0..k {
                acc = acc * (n - i) / (i + 1);
            }
            acc
        }
        let multichoose = |m: usize, k: usize| {
            if k == 0 {
                1
            } else if m == 0 {
                0
            } else {
                choose(m + k - 1, k)
            }
        };
        (0..=n.min(odd))
            .map(|j| choose(odd, j) * multichoose(even, n - j))
            .sum()
    }

    prop_compose! {
        fn arb_space(max_dim: usize)
            (elems in proptest::collection::vec((-3i64..=3, -4i64..=4, 0u32..=3), 1..=max_dim))
            -> GradedSpace
        {
            GradedSpace::new(
                elems.into_iter().enumerate()
                    .map(|(i, (d, w, lw))| BasisElement::new(format!("e{i}"), Bidegree::new(d, w, lw)))
                    .collect(),
            ).unwrap()
        }
    }

    proptest! {
        #[test]
        fn sym_dims_match_super_binomial(v in arb_space(4), n in 1usize..=5) {
            let odd = v.basis().iter().filter(|b| b.bidegree.is_odd()).count();
            let even = v.dim() - odd;
            prop_assert_eq!(v.sym_power(n).dim(), super_binomial(even, odd, n));
        }

        #[test]
        fn gradings_add_under_tensor(v in arb_space(3), w in arb_space(3)) {
            let t = v.tensor(&w);
            let mut idx = 0;
            for a in v.basis() {
                for b in w.basis() {
                    prop_assert_eq!(t.element(idx).bidegree, a.bidegree.plus(&b.bidegree));
                    idx += 1;
                }
            }
        }

        #[test]
        fn gradings_add_under_sym(v in arb_space(3), n in 1usize..=4) {
            for m in sym_monomials(&v, n) {
                let expected = m.letters().iter().fold(Bidegree::new(0, 0, 0), |acc, &i| {
                    acc.plus(&v.element(i).bidegree)
                });
                prop_assert_eq!(m.bidegree(&v), expected);
            }
        }

        #[test]
        fn even_shift_commutes_with_sym(v in arb_space(3), n in 1usize..=3, s in -2i64..=2) {
            // parity is preserved by even shifts, so the monomial sets agree
            let shifted_first = v.shift(2 * s).sym_power(n);
            let shifted_last = v.sym_power(n).shift(2 * s * n as i64);
            prop_assert_eq!(shifted_first.dims_by_bidegree(), shifted_last.dims_by_bidegree());
        }

        #[test]
        fn twist_commutes_with_sym(v in arb_space(3), n in 1usize..=3, m in -2i64..=2) {
            let a = v.tate_twist(m).sym_power(n);
            let b = v.sym_power(n).tate_twist(m * n as i64);
            prop_assert_eq!(a.dims_by_bidegree(), b.dims_by_bidegree());
        }

        #[test]
        fn shift_twist_commute_with_tensor(v in arb_space(3), w in arb_space(3), s in -2i64..=2, m in -2i64..=2) {
            let a = v.shift(s).tate_twist(m).tensor(&w.shift(-s).tate_twist(-m));
            let b = v.tensor(&w);
            prop_assert_eq!(a.dims_by_bidegree(), b.dims_by_bidegree());
        }
    }
}
