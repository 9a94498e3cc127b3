//! The twisted Lie algebra `g = A ⊗ L` of a graded-commutative algebra and a
//! graded Lie superalgebra.
//!
//! The bracket is `[a⊗v, b⊗w] = (-1)^{|v||b|} (ab) ⊗ [v,w]`, with the sign on
//! cohomological parities only — the Lie weight is bookkeeping, not a parity.
//! Graded antisymmetry and Jacobi for this bracket are consequences of `A`
//! being graded-commutative and associative; they are not re-imposed here but
//! are checked exhaustively in tests.

use crate::cdga::GCAlgebra;
use crate::freelie::{FreeLieError, GLieAlgebra};
use crate::qlinalg::LinComb;
use std::collections::{BTreeMap, BTreeSet};

/// Tensor a validated graded-commutative algebra with a graded Lie algebra.
///
/// The basis is the ordered tensor basis (algebra-major); `coh_deg` and
/// `tate_weight` add, and the Lie weight is the Lie factor's. A pair whose
/// Lie bracket is cut off by the truncation is still known to vanish when the
/// algebra product kills it.
pub fn tensor_lie(a: &GCAlgebra, l: &GLieAlgebra) -> GLieAlgebra {
    let space = a.space().tensor(l.space());
    let ldim = l.dim();
    let pair = |ai: usize, li: usize| ai * ldim + li;

    let mut brackets: BTreeMap<(usize, usize), LinComb> = BTreeMap::new();
    let mut zero_above: BTreeSet<(usize, usize)> = BTreeSet::new();

    for a1 in 0..a.dim() {
        for v1 in 0..ldim {
            for a2 in 0..a.dim() {
                for v2 in 0..ldim {
                    let key = (pair(a1, v1), pair(a2, v2));
                    let product = a.product(a1, a2);
                    match l.bracket(v1, v2) {
                        Ok(lie_part) => {
                            if product.is_zero() || lie_part.is_zero() {
                                continue;
                            }
                            let v1_odd = l.space().element(v1).bidegree.is_odd();
                            let a2_odd = a.space().element(a2).bidegree.is_odd();
                            let negate = v1_odd && a2_odd;
                            let mut combo = LinComb::zero();
                            for (m, ca) in product.iter() {
                                for (n, cl) in lie_part.iter() {
                                    let mut c = ca * cl;
                                    if negate {
                                        c = -c;
                                    }
                                    combo.add_term(pair(m, n), c);
                                }
                            }
                            if !combo.is_zero() {
                                brackets.insert(key, combo);
                            }
                        }
                        Err(FreeLieError::TruncationExceeded { .. }) => {
                            // above the truncation the bracket is unknown,
                            // unless the algebra product already kills it
                            if product.is_zero() {
                                zero_above.insert(key);
                            }
                        }
                        Err(e) => unreachable!("bracket lookup cannot fail structurally: {e}"),
                    }
                }
            }
        }
    }

    GLieAlgebra::with_known_zero(space, brackets, zero_above, l.max_weight())
        .expect("tensor of valid inputs is structurally valid")
}
