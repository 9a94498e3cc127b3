//! Free graded Lie superalgebras on super-Lyndon words, truncated by Lie
//! weight.
//!
//! The basis in characteristic 0 consists of the standard-factorization
//! brackets of Lyndon words, together with the adjoined squares `[u,u]` of
//! Lyndon words of odd total degree. Expansions in the tensor algebra are
//! triangular against this basis: the leading word of a Lyndon bracket (in
//! lexicographic order among its rearrangements) is the word itself with
//! coefficient 1, and the leading word of `[u,u]` is `uu` with coefficient 2.
//! Structure constants are computed by expanding commutators and running the
//! resulting triangular back-substitution.
//!
//! Truncation is always by Lie weight, never by cohomological degree;
//! a bracket that would land above the truncation bound is flagged with
//! [`FreeLieError::TruncationExceeded`], not silently zeroed.

use crate::grvec::{BasisElement, Bidegree, GradedSpace};
use crate::qlinalg::{LinComb, Rational};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FreeLieError {
    #[error("bracket of weights {left} and {right} lands above the truncation bound {max_weight}")]
    TruncationExceeded {
        left: u32,
        right: u32,
        max_weight: u32,
    },
    #[error("invalid Lie algebra data: {0}")]
    Structural(String),
}

/// A violated Lie identity, with witnesses.
#[derive(Debug, PartialEq, Eq)]
pub enum LieAxiomViolation {
    Antisymmetry { left: String, right: String },
    Jacobi { a: String, b: String, c: String },
    GradingAdditivity { left: String, right: String },
}

impl std::fmt::Display for LieAxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LieAxiomViolation::Antisymmetry { left, right } => {
                write!(f, "graded antisymmetry fails on ([{left}], [{right}])")
            }
            LieAxiomViolation::Jacobi { a, b, c } => {
                write!(f, "graded Jacobi fails on ({a}, {b}, {c})")
            }
            LieAxiomViolation::GradingAdditivity { left, right } => {
                write!(f, "bracket of ({left}, {right}) is not grading-additive")
            }
        }
    }
}

/// Binary bracketing of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Leaf(usize),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    fn label(&self, generators: &GradedSpace) -> String {
        match self {
            BracketTree::Leaf(i) => generators.element(*i).label.clone(),
            BracketTree::Node(l, r) => {
                format!("[{},{}]", l.label(generators), r.label(generators))
            }
        }
    }
}

/// A super-Lyndon basis element: a Lyndon word with its standard-factorization
/// bracketing, or the adjoined square of an odd-degree Lyndon word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyndonBracket {
    pub word: Vec<usize>,
    pub bracketing: BracketTree,
    pub is_square: bool,
}

impl LyndonBracket {
    /// Lie weight: word length (already doubled for squares).
    pub fn weight(&self) -> u32 {
        self.word.len() as u32
    }
}

/// Finite-dimensional graded Lie superalgebra with explicit structure
/// constants, truncated at a Lie weight bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLieAlgebra {
    space: GradedSpace,
    brackets: BTreeMap<(usize, usize), LinComb>,
    /// Pairs whose weight sum exceeds the truncation but whose bracket is
    /// known to vanish anyway (e.g. killed by a zero algebra product).
    zero_above_truncation: BTreeSet<(usize, usize)>,
    max_weight: u32,
}

impl GLieAlgebra {
    pub fn new(
        space: GradedSpace,
        brackets: impl IntoIterator<Item = ((usize, usize), LinComb)>,
        max_weight: u32,
    ) -> Result<Self, FreeLieError> {
        Self::with_known_zero(space, brackets, BTreeSet::new(), max_weight)
    }

    pub(crate) fn with_known_zero(
        space: GradedSpace,
        brackets: impl IntoIterator<Item = ((usize, usize), LinComb)>,
        zero_above_truncation: BTreeSet<(usize, usize)>,
        max_weight: u32,
    ) -> Result<Self, FreeLieError> {
        let dim = space.dim();
        for b in space.basis() {
            if b.bidegree.lie_weight < 1 {
                return Err(FreeLieError::Structural(format!(
                    "element `{}` has Lie weight 0; all Lie data lives in weights >= 1",
                    b.label
                )));
            }
        }
        let mut table = BTreeMap::new();
        for ((i, j), combo) in brackets {
            if i >= dim || j >= dim || combo.iter().any(|(t, _)| t >= dim) {
                return Err(FreeLieError::Structural(format!(
                    "bracket entry ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            let expected = space.element(i).bidegree.plus(&space.element(j).bidegree);
            for (t, _) in combo.iter() {
                if space.element(t).bidegree != expected {
                    return Err(FreeLieError::Structural(format!(
                        "bracket of `{}` and `{}` is not grading-additive at `{}`",
                        space.element(i).label,
                        space.element(j).label,
                        space.element(t).label
                    )));
                }
            }
            if !combo.is_zero() {
                table.insert((i, j), combo);
            }
        }
        Ok(Self {
            space,
            brackets: table,
            zero_above_truncation,
            max_weight,
        })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    fn weight(&self, i: usize) -> u32 {
        self.space.element(i).bidegree.lie_weight
    }

    /// Structure constants of `[e_i, e_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Result<LinComb, FreeLieError> {
        if let Some(c) = self.brackets.get(&(i, j)) {
            return Ok(c.clone());
        }
        let total = self.weight(i) + self.weight(j);
        if total <= self.max_weight || self.zero_above_truncation.contains(&(i, j)) {
            Ok(LinComb::zero())
        } else {
            Err(FreeLieError::TruncationExceeded {
                left: self.weight(i),
                right: self.weight(j),
                max_weight: self.max_weight,
            })
        }
    }

    /// Bracket extended bilinearly to combinations.
    pub fn bracket_lin(&self, x: &LinComb, y: &LinComb) -> Result<LinComb, FreeLieError> {
        let mut out = LinComb::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let br = self.bracket(i, j)?;
                out.add_scaled(&br, &(a * b));
            }
        }
        Ok(out)
    }

    /// True when no nonzero bracket is stored (all known brackets vanish).
    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (&(usize, usize), &LinComb)> {
        self.brackets.iter()
    }

    /// Dimension of each Lie-weight layer, `1..=max_weight`.
    pub fn weight_dims(&self) -> Vec<usize> {
        let mut dims = vec![0usize; self.max_weight as usize];
        for b in self.space.basis() {
            let w = b.bidegree.lie_weight as usize;
            if (1..=self.max_weight as usize).contains(&w) {
                dims[w - 1] += 1;
            }
        }
        dims
    }
}

/// Exhaustively check graded antisymmetry and Jacobi, by expansion, on every
/// pair and triple that stays within the truncation bound.
pub fn check_lie_axioms(g: &GLieAlgebra) -> Result<(), LieAxiomViolation> {
    let dim = g.dim();
    let parity = |i: usize| g.space().element(i).bidegree.is_odd();
    let label = |i: usize| g.space().element(i).label.clone();
    let weight = |i: usize| g.space().element(i).bidegree.lie_weight;

    for i in 0..dim {
        for j in i..dim {
            if weight(i) + weight(j) > g.max_weight() {
                continue;
            }
            let mut rhs = g.bracket(j, i).expect("within truncation");
            if !(parity(i) && parity(j)) {
                rhs = rhs.negated();
            }
            // [x,y] = -(-1)^{|x||y|}[y,x]
            if g.bracket(i, j).expect("within truncation") != rhs {
                return Err(LieAxiomViolation::Antisymmetry {
                    left: label(i),
                    right: label(j),
                });
            }
        }
    }

    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                if weight(x) + weight(y) + weight(z) > g.max_weight() {
                    continue;
                }
                let one = LinComb::single;
                let unit = Rational::one();
                let yz = g.bracket(y, z).expect("in range");
                let lhs = g.bracket_lin(&one(x, unit.clone()), &yz).expect("in range");
                let xy = g.bracket(x, y).expect("in range");
                let mut rhs = g.bracket_lin(&xy, &one(z, unit.clone())).expect("in range");
                let xz = g.bracket(x, z).expect("in range");
                let mut second = g.bracket_lin(&one(y, unit.clone()), &xz).expect("in range");
                if parity(x) && parity(y) {
                    second = second.negated();
                }
                rhs.add_scaled(&second, &unit);
                if lhs != rhs {
                    return Err(LieAxiomViolation::Jacobi {
                        a: label(x),
                        b: label(y),
                        c: label(z),
                    });
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Lyndon word combinatorics
// ---------------------------------------------------------------------------

/// All Lyndon words over `0..alphabet` of length `1..=max_len`, generated by
/// Duval's algorithm, in lexicographic order.
fn lyndon_words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if alphabet == 0 || max_len == 0 {
        return out;
    }
    let mut w = vec![0usize];
    loop {
        out.push(w.clone());
        let base = w.clone();
        w.clear();
        for i in 0..max_len {
            w.push(base[i % base.len()]);
        }
        while let Some(&last) = w.last() {
            if last == alphabet - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => return out,
        }
    }
}

/// Standard (right) factorization of a Lyndon word of length >= 2: the split
/// point of `w = uv` where `v` is the lexicographically least proper suffix.
fn standard_factorization(word: &[usize]) -> usize {
    debug_assert!(word.len() >= 2);
    let mut best = 1;
    for i in 2..word.len() {
        if word[i..] < word[best..] {
            best = i;
        }
    }
    best
}

fn bracket_tree(word: &[usize]) -> BracketTree {
    if word.len() == 1 {
        return BracketTree::Leaf(word[0]);
    }
    let split = standard_factorization(word);
    BracketTree::Node(
        Box::new(bracket_tree(&word[..split])),
        Box::new(bracket_tree(&word[split..])),
    )
}

// ---------------------------------------------------------------------------
// Tensor algebra expansions
// ---------------------------------------------------------------------------

/// Noncommutative polynomial in the generators; keys are words, compared
/// lexicographically (all words in a homogeneous polynomial share a length).
type TensorPoly = BTreeMap<Vec<usize>, Rational>;

fn poly_add_term(p: &mut TensorPoly, word: Vec<usize>, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match p.entry(word) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn poly_mul(a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
    let mut out = TensorPoly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            poly_add_term(&mut out, w, ca * cb);
        }
    }
    out
}

/// `a·b − (−1)^{|a||b|} b·a` with parities supplied by the caller.
fn poly_commutator(a: &TensorPoly, a_odd: bool, b: &TensorPoly, b_odd: bool) -> TensorPoly {
    let mut out = poly_mul(a, b);
    let sign = if a_odd && b_odd {
        Rational::one()
    } else {
        -Rational::one()
    };
    for (w, c) in poly_mul(b, a) {
        poly_add_term(&mut out, w, c * &sign);
    }
    out
}

struct ExpandedElement {
    expansion: TensorPoly,
    odd: bool,
}

fn expand_tree(tree: &BracketTree, generators: &GradedSpace) -> ExpandedElement {
    match tree {
        BracketTree::Leaf(i) => {
            let mut p = TensorPoly::new();
            p.insert(vec![*i], Rational::one());
            ExpandedElement {
                expansion: p,
                odd: generators.element(*i).bidegree.is_odd(),
            }
        }
        BracketTree::Node(l, r) => {
            let el = expand_tree(l, generators);
            let er = expand_tree(r, generators);
            ExpandedElement {
                expansion: poly_commutator(&el.expansion, el.odd, &er.expansion, er.odd),
                odd: el.odd != er.odd,
            }
        }
    }
}

/// The super-Lyndon basis of `Free_Lie(V)` up to the weight bound: brackets of
/// Lyndon words, plus squares of odd-degree Lyndon words. Ordered by
/// (weight, squares last, word).
pub fn super_lyndon_basis(generators: &GradedSpace, max_weight: u32) -> Vec<LyndonBracket> {
    let words = lyndon_words(generators.dim(), max_weight as usize);
    let word_degree = |w: &[usize]| -> i64 {
        w.iter()
            .map(|&i| generators.element(i).bidegree.coh_deg)
            .sum()
    };
    let mut basis: Vec<LyndonBracket> = Vec::new();
    for w in &words {
        basis.push(LyndonBracket {
            word: w.clone(),
            bracketing: bracket_tree(w),
            is_square: false,
        });
    }
    for u in &words {
        if 2 * u.len() <= max_weight as usize && word_degree(u).rem_euclid(2) == 1 {
            let tree = bracket_tree(u);
            let mut word = u.clone();
            word.extend_from_slice(u);
            basis.push(LyndonBracket {
                word,
                bracketing: BracketTree::Node(Box::new(tree.clone()), Box::new(tree)),
                is_square: true,
            });
        }
    }
    basis.sort_by(|a, b| {
        (a.word.len(), a.is_square, &a.word).cmp(&(b.word.len(), b.is_square, &b.word))
    });
    basis
}

/// Rewrite a homogeneous Lie element, given as a tensor polynomial, into
/// coordinates on the super-Lyndon basis. Panics if the input is not in the
/// span (impossible for commutators of basis elements).
fn rewrite_to_basis(
    mut p: TensorPoly,
    leading: &BTreeMap<Vec<usize>, usize>,
    expansions: &[ExpandedElement],
    lead_coeffs: &[Rational],
) -> LinComb {
    let mut out = LinComb::zero();
    while let Some((word, coeff)) = p.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
        let idx = *leading.get(&word).unwrap_or_else(|| {
            panic!("leading word {word:?} is not super-Lyndon; input is not a Lie element")
        });
        let c = coeff / &lead_coeffs[idx];
        out.add_term(idx, c.clone());
        for (w, e) in &expansions[idx].expansion {
            poly_add_term(&mut p, w.clone(), -(e * &c));
        }
        if let Some((next, _)) = p.iter().next() {
            assert!(next > &word, "triangular rewriting failed to make progress");
        }
    }
    out
}

/// The free graded Lie superalgebra on `generators`, truncated at
/// `max_weight`, with its full bracket table.
///
/// Generators receive Lie weight 1; the weight of a basis bracket is its word
/// length. Bracket structure constants are integral when the generators are
/// (leading coefficients are 1, or 2 for squares, and squares absorb the 2).
pub fn free_lie(generators: &GradedSpace, max_weight: u32) -> Result<GLieAlgebra, FreeLieError> {
    if max_weight < 1 {
        return Err(FreeLieError::Structural(
            "truncation weight must be at least 1".into(),
        ));
    }
    let generators = generators.with_lie_weight(1);
    let basis = super_lyndon_basis(&generators, max_weight);

    let mut space_elems = Vec::with_capacity(basis.len());
    let mut expansions = Vec::with_capacity(basis.len());
    let mut lead_coeffs = Vec::with_capacity(basis.len());
    let mut leading: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (idx, lb) in basis.iter().enumerate() {
        let expanded = expand_tree(&lb.bracketing, &generators);
        let mut bidegree = lb.word.iter().fold(Bidegree::new(0, 0, 0), |acc, &i| {
            acc.plus(&generators.element(i).bidegree)
        });
        bidegree.lie_weight = lb.weight();
        space_elems.push(BasisElement::new(
            lb.bracketing.label(&generators),
            bidegree,
        ));
        let lead = expanded
            .expansion
            .iter()
            .next()
            .map(|(w, c)| (w.clone(), c.clone()))
            .expect("basis expansions are nonzero");
        debug_assert_eq!(
            lead.0, lb.word,
            "leading word of a basis bracket is its word"
        );
        leading.insert(lead.0, idx);
        lead_coeffs.push(lead.1);
        expansions.push(expanded);
    }

    let space =
        GradedSpace::new(space_elems).map_err(|e| FreeLieError::Structural(e.to_string()))?;

    let mut brackets = BTreeMap::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if basis[i].weight() + basis[j].weight() > max_weight {
                continue;
            }
            let p = poly_commutator(
                &expansions[i].expansion,
                expansions[i].odd,
                &expansions[j].expansion,
                expansions[j].odd,
            );
            let combo = rewrite_to_basis(p, &leading, &expansions, &lead_coeffs);
            if !combo.is_zero() {
                brackets.insert((i, j), combo);
            }
        }
    }

    GLieAlgebra::new(space, brackets, max_weight)
}

// ---------------------------------------------------------------------------
// PBW dimension oracle
// ---------------------------------------------------------------------------

/// Dimension table of `Free_Lie(V)` in Lie weight `w`, per (cohomological
/// degree, Tate weight), computed independently of the Lyndon construction.
///
/// Iterates the PBW identity: the weight-graded super-dimension of the tensor
/// algebra `T(V)` equals that of the Koszul `Sym` of the free Lie algebra, so
/// each layer is the tensor layer minus the symmetric-product contributions
/// of the lower layers.
pub fn graded_dimension_oracle(generators: &GradedSpace, w: u32) -> BTreeMap<(i64, i64), usize> {
    assert!(w >= 1, "Lie weights start at 1");
    let v_table: BTreeMap<(i64, i64), usize> = {
        let mut t = BTreeMap::new();
        for b in generators.basis() {
            *t.entry((b.bidegree.coh_deg, b.bidegree.tate_weight))
                .or_insert(0) += 1;
        }
        t
    };

    // tensor powers by convolution
    let mut tensor_layers: Vec<BTreeMap<(i64, i64), usize>> = vec![v_table.clone()];
    for _ in 2..=w {
        let prev = tensor_layers.last().unwrap();
        let mut next = BTreeMap::new();
        for (&(d1, t1), &m1) in prev {
            for (&(d2, t2), &m2) in &v_table {
                *next.entry((d1 + d2, t1 + t2)).or_insert(0) += m1 * m2;
            }
        }
        tensor_layers.push(next);
    }

    let mut lie_layers: Vec<BTreeMap<(i64, i64), usize>> = vec![v_table];
    for weight in 2..=(w as usize) {
        // Sym of everything below `weight`, as a series in the Lie grading,
        // truncated at `weight`. Key: (lie, deg, tate) -> dim.
        let mut series: BTreeMap<(usize, i64, i64), i64> = BTreeMap::new();
        series.insert((0, 0, 0), 1);
        for (lower, layer) in lie_layers.iter().enumerate() {
            let lw = lower + 1;
            for (&(d, t), &mult) in layer {
                let odd = d.rem_euclid(2) == 1;
                for _ in 0..mult {
                    let current: Vec<((usize, i64, i64), i64)> =
                        series.iter().map(|(&k, &v)| (k, v)).collect();
                    for ((l0, d0, t0), count) in current {
                        let mut reps = 1usize;
                        loop {
                            let l = l0 + reps * lw;
                            if l > weight || (odd && reps > 1) {
                                break;
                            }
                            *series
                                .entry((l, d0 + d * reps as i64, t0 + t * reps as i64))
                                .or_insert(0) += count;
                            reps += 1;
                        }
                    }
                }
            }
        }
        let tensor = &tensor_layers[weight - 1];
        let mut layer: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        let keys: BTreeSet<(i64, i64)> = tensor
            .keys()
            .copied()
            .chain(
                series
                    .iter()
                    .filter(|(&(l, _, _), _)| l == weight)
                    .map(|(&(_, d, t), _)| (d, t)),
            )
            .collect();
        for (d, t) in keys {
            let from_tensor = *tensor.get(&(d, t)).unwrap_or(&0) as i64;
            let from_sym = *series.get(&(weight, d, t)).unwrap_or(&0);
            let dim = from_tensor - from_sym;
            assert!(
                dim >= 0,
                "PBW bookkeeping produced a negative dimension at weight {weight}, ({d}, {t})"
            );
            if dim > 0 {
                layer.insert((d, t), dim as usize);
            }
        }
        lie_layers.push(layer);
    }

    lie_layers[(w - 1) as usize].clone()
}
