//! Graded-commutative algebra presentations for compactly-supported
//! cohomology rings, with Frobenius weights.
//!
//! Algebras may be non-unital: the compactly-supported cohomology of a
//! non-proper scheme has no unit, and the affine-space builtin has an empty
//! product table. Weights are required inputs and are never inferred; they
//! add under the product and are reported verbatim downstream.
//!
//! The input document format is TOML with sections `[space]`, `[[basis]]`
//! and `[[product]]`; omitted products are zero and coefficients are exact
//! rationals written `"p"` or `"p/q"`.

use crate::grvec::{BasisElement, Bidegree, GradedSpace};
use crate::qlinalg::{parse_rational, LinComb, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Geometric metadata of the underlying space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceMeta {
    pub name: String,
    pub dimension: Option<u32>,
    pub smooth: bool,
    pub proper: bool,
    pub connected: bool,
    pub unital: bool,
}

/// One violated identity, with the witnessing basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    NonzeroLieWeight {
        label: String,
    },
    DegreeAdditivity {
        left: String,
        right: String,
        term: String,
    },
    WeightAdditivity {
        left: String,
        right: String,
        term: String,
    },
    GradedCommutativity {
        left: String,
        right: String,
    },
    Associativity {
        a: String,
        b: String,
        c: String,
    },
    UnitBidegree {
        unit: String,
    },
    UnitAxiom {
        element: String,
    },
    MissingDimension,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NonzeroLieWeight { label } => {
                write!(f, "basis element `{label}` has nonzero Lie weight")
            }
            Diagnostic::DegreeAdditivity { left, right, term } => write!(
                f,
                "product `{left}`·`{right}` hits `{term}` in the wrong cohomological degree"
            ),
            Diagnostic::WeightAdditivity { left, right, term } => write!(
                f,
                "product `{left}`·`{right}` hits `{term}` in the wrong Tate weight"
            ),
            Diagnostic::GradedCommutativity { left, right } => write!(
                f,
                "graded commutativity fails on the pair (`{left}`, `{right}`)"
            ),
            Diagnostic::Associativity { a, b, c } => {
                write!(f, "associativity fails on the triple (`{a}`, `{b}`, `{c}`)")
            }
            Diagnostic::UnitBidegree { unit } => write!(
                f,
                "unit `{unit}` is not in cohomological degree 0 and Tate weight 0"
            ),
            Diagnostic::UnitAxiom { element } => {
                write!(f, "unit does not act as identity on `{element}`")
            }
            Diagnostic::MissingDimension => {
                write!(f, "space is declared smooth but carries no dimension")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum CdgaError {
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("validation failed: {}", format_diagnostics(.0))]
    ValidationFailed(Vec<Diagnostic>),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid parameters for builtin `{id}`: {reason}")]
    InvalidParams { id: String, reason: String },
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Finite-dimensional graded-commutative (possibly non-unital) algebra with
/// an explicit multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCAlgebra {
    space: GradedSpace,
    product: BTreeMap<(usize, usize), LinComb>,
    meta: SpaceMeta,
    unit: Option<usize>,
}

impl GCAlgebra {
    /// Assemble an algebra from parts. Structural checks only (index ranges,
    /// unit declaration consistent with `meta.unital`); the graded identities
    /// are the business of [`GCAlgebra::validate`].
    pub fn new(
        space: GradedSpace,
        product: impl IntoIterator<Item = ((usize, usize), LinComb)>,
        meta: SpaceMeta,
        unit: Option<usize>,
    ) -> Result<Self, CdgaError> {
        let dim = space.dim();
        let mut table = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for ((i, j), combo) in product {
            if i >= dim || j >= dim || combo.iter().any(|(t, _)| t >= dim) {
                return Err(CdgaError::ParseError(format!(
                    "product entry ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(CdgaError::ParseError(format!(
                    "duplicate product entry for ({}, {})",
                    space.element(i).label,
                    space.element(j).label
                )));
            }
            if !combo.is_zero() {
                table.insert((i, j), combo);
            }
        }
        if meta.unital != unit.is_some() {
            return Err(CdgaError::ParseError(
                "`unital` flag and unit element must be declared together".into(),
            ));
        }
        if let Some(u) = unit {
            if u >= dim {
                return Err(CdgaError::ParseError("unit index out of range".into()));
            }
        }
        Ok(Self {
            space,
            product: table,
            meta,
            unit,
        })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn meta(&self) -> &SpaceMeta {
        &self.meta
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The product of two basis elements (zero if absent from the table).
    pub fn product(&self, i: usize, j: usize) -> LinComb {
        self.product.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn product_entries(&self) -> impl Iterator<Item = (&(usize, usize), &LinComb)> {
        self.product.iter()
    }

    /// True if the multiplication table is identically zero.
    pub fn has_zero_multiplication(&self) -> bool {
        self.product.is_empty()
    }

    fn mul_lin(&self, x: &LinComb, j: usize) -> LinComb {
        let mut out = LinComb::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.product(i, j), c);
        }
        out
    }

    /// Check every invariant; an empty list means the presentation is a
    /// genuine graded-commutative algebra.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let dim = self.dim();
        let label = |i: usize| self.space.element(i).label.clone();
        let bid = |i: usize| self.space.element(i).bidegree;

        for b in self.space.basis() {
            if b.bidegree.lie_weight != 0 {
                diags.push(Diagnostic::NonzeroLieWeight {
                    label: b.label.clone(),
                });
            }
        }

        for (&(i, j), combo) in &self.product {
            for (t, _) in combo.iter() {
                if bid(t).coh_deg != bid(i).coh_deg + bid(j).coh_deg {
                    diags.push(Diagnostic::DegreeAdditivity {
                        left: label(i),
                        right: label(j),
                        term: label(t),
                    });
                }
                if bid(t).tate_weight != bid(i).tate_weight + bid(j).tate_weight {
                    diags.push(Diagnostic::WeightAdditivity {
                        left: label(i),
                        right: label(j),
                        term: label(t),
                    });
                }
            }
        }

        // a·b = (-1)^{|a||b|} b·a, including a·a for odd a (forces 2a² = 0).
        for i in 0..dim {
            for j in i..dim {
                let sign_odd = bid(i).is_odd() && bid(j).is_odd();
                let mut rhs = self.product(j, i);
                if sign_odd {
                    rhs = rhs.negated();
                }
                if self.product(i, j) != rhs {
                    diags.push(Diagnostic::GradedCommutativity {
                        left: label(i),
                        right: label(j),
                    });
                }
            }
        }

        for a in 0..dim {
            for b in 0..dim {
                let ab = self.product(a, b);
                for c in 0..dim {
                    let left = self.mul_lin(&ab, c);
                    let bc = self.product(b, c);
                    let mut right = LinComb::zero();
                    for (t, coeff) in bc.iter() {
                        right.add_scaled(&self.product(a, t), coeff);
                    }
                    if left != right {
                        diags.push(Diagnostic::Associativity {
                            a: label(a),
                            b: label(b),
                            c: label(c),
                        });
                    }
                }
            }
        }

        if let Some(u) = self.unit {
            let ubid = bid(u);
            if ubid.coh_deg != 0 || ubid.tate_weight != 0 {
                diags.push(Diagnostic::UnitBidegree { unit: label(u) });
            }
            for x in 0..dim {
                let expected = LinComb::single(x, Rational::from_integer(1.into()));
                if self.product(u, x) != expected || self.product(x, u) != expected {
                    diags.push(Diagnostic::UnitAxiom { element: label(x) });
                }
            }
        }

        if self.meta.smooth && self.meta.dimension.is_none() {
            diags.push(Diagnostic::MissingDimension);
        }

        diags
    }

    /// The same algebra with its basis listed in a different order.
    /// `perm[new_position] = old_index`.
    pub fn permuted(&self, perm: &[usize]) -> GCAlgebra {
        assert_eq!(perm.len(), self.dim(), "permutation length mismatch");
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let basis = perm
            .iter()
            .map(|&old| self.space.element(old).clone())
            .collect();
        let space = GradedSpace::new(basis).expect("permutation preserves labels");
        let product = self
            .product
            .iter()
            .map(|(&(i, j), combo)| ((inverse[i], inverse[j]), combo.mapped(|t| inverse[t])))
            .collect::<BTreeMap<_, _>>();
        GCAlgebra {
            space,
            product,
            meta: self.meta.clone(),
            unit: self.unit.map(|u| inverse[u]),
        }
    }
}

/// Identifier of a builtin space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinId {
    AffineSpace,
    ProjectiveSpace,
    SmoothProperCurve,
}

impl BuiltinId {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "affine" | "affine_space" => Some(Self::AffineSpace),
            "projective" | "projective_space" => Some(Self::ProjectiveSpace),
            "curve" | "smooth_proper_curve" => Some(Self::SmoothProperCurve),
            _ => None,
        }
    }
}

/// Builtin library of standard spaces.
///
/// * `AffineSpace(n)`: one class in degree `2n`, weight `2n`, zero products.
/// * `ProjectiveSpace(n)`: `h^0, …, h^n` with `h^i·h^j = h^{i+j}` (zero past
///   the top), unital.
/// * `SmoothProperCurve(g)`: unit, `2g` degree-1 classes, a point class,
///   with the intersection pairing `a_i·b_i = p = -b_i·a_i`.
pub fn builtin(id: BuiltinId, param: u32) -> Result<GCAlgebra, CdgaError> {
    match id {
        BuiltinId::AffineSpace => {
            if param < 1 {
                return Err(CdgaError::InvalidParams {
                    id: "affine_space".into(),
                    reason: "n must be at least 1".into(),
                });
            }
            let n = param as i64;
            let space = GradedSpace::line("t", Bidegree::new(2 * n, 2 * n, 0));
            GCAlgebra::new(
                space,
                [],
                SpaceMeta {
                    name: format!("A^{param}"),
                    dimension: Some(param),
                    smooth: true,
                    proper: false,
                    connected: true,
                    unital: false,
                },
                None,
            )
        }
        BuiltinId::ProjectiveSpace => {
            if param < 1 {
                return Err(CdgaError::InvalidParams {
                    id: "projective_space".into(),
                    reason: "n must be at least 1".into(),
                });
            }
            let n = param as usize;
            let basis = (0..=n)
                .map(|i| {
                    BasisElement::new(
                        format!("h{i}"),
                        Bidegree::new(2 * i as i64, 2 * i as i64, 0),
                    )
                })
                .collect();
            let space = GradedSpace::new(basis).expect("distinct labels");
            let mut product = Vec::new();
            for i in 0..=n {
                for j in 0..=n {
                    if i + j <= n {
                        product.push((
                            (i, j),
                            LinComb::single(i + j, Rational::from_integer(1.into())),
                        ));
                    }
                }
            }
            GCAlgebra::new(
                space,
                product,
                SpaceMeta {
                    name: format!("P^{param}"),
                    dimension: Some(param),
                    smooth: true,
                    proper: true,
                    connected: true,
                    unital: true,
                },
                Some(0),
            )
        }
        BuiltinId::SmoothProperCurve => {
            let g = param as usize;
            let mut basis = vec![BasisElement::new("e", Bidegree::new(0, 0, 0))];
            for i in 1..=g {
                basis.push(BasisElement::new(format!("a{i}"), Bidegree::new(1, 1, 0)));
            }
            for i in 1..=g {
                basis.push(BasisElement::new(format!("b{i}"), Bidegree::new(1, 1, 0)));
            }
            basis.push(BasisElement::new("p", Bidegree::new(2, 2, 0)));
            let space = GradedSpace::new(basis).expect("distinct labels");
            let p_idx = 2 * g + 1;
            let one = || Rational::from_integer(1.into());
            let mut product = Vec::new();
            for x in 0..space.dim() {
                product.push(((0, x), LinComb::single(x, one())));
                if x != 0 {
                    product.push(((x, 0), LinComb::single(x, one())));
                }
            }
            for i in 1..=g {
                let a = i;
                let b = g + i;
                product.push(((a, b), LinComb::single(p_idx, one())));
                product.push(((b, a), LinComb::single(p_idx, -one())));
            }
            GCAlgebra::new(
                space,
                product,
                SpaceMeta {
                    name: format!("curve_g{param}"),
                    dimension: Some(1),
                    smooth: true,
                    proper: true,
                    connected: true,
                    unital: true,
                },
                Some(0),
            )
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct RawDocument {
    space: RawSpace,
    basis: Vec<RawBasis>,
    #[serde(default)]
    product: Vec<RawProduct>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawSpace {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<u32>,
    smooth: bool,
    proper: bool,
    connected: bool,
    unital: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    unit: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawBasis {
    label: String,
    degree: i64,
    weight: i64,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawProduct {
    left: String,
    right: String,
    terms: Vec<RawTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawTerm {
    basis: String,
    coeff: String,
}

/// Parse an input document; the result is always validated.
pub fn load(text: &str) -> Result<GCAlgebra, CdgaError> {
    let raw: RawDocument =
        toml::from_str(text).map_err(|e| CdgaError::ParseError(e.to_string()))?;

    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, b) in raw.basis.iter().enumerate() {
        if index.insert(b.label.as_str(), i).is_some() {
            return Err(CdgaError::DuplicateLabel(b.label.clone()));
        }
    }
    let resolve = |label: &str| -> Result<usize, CdgaError> {
        index
            .get(label)
            .copied()
            .ok_or_else(|| CdgaError::ParseError(format!("unknown basis label `{label}`")))
    };

    let space = GradedSpace::new(
        raw.basis
            .iter()
            .map(|b| BasisElement::new(b.label.clone(), Bidegree::new(b.degree, b.weight, 0)))
            .collect(),
    )
    .map_err(|e| CdgaError::ParseError(e.to_string()))?;

    let unit = match (&raw.space.unital, &raw.space.unit) {
        (true, Some(label)) => Some(resolve(label)?),
        (true, None) => {
            return Err(CdgaError::ParseError(
                "unital space must declare its unit label".into(),
            ))
        }
        (false, Some(_)) => {
            return Err(CdgaError::ParseError(
                "non-unital space must not declare a unit".into(),
            ))
        }
        (false, None) => None,
    };

    let mut product = Vec::new();
    for row in &raw.product {
        let left = resolve(&row.left)?;
        let right = resolve(&row.right)?;
        let mut combo = LinComb::zero();
        for term in &row.terms {
            let target = resolve(&term.basis)?;
            let coeff = parse_rational(&term.coeff).ok_or_else(|| {
                CdgaError::ParseError(format!("malformed coefficient `{}`", term.coeff))
            })?;
            combo.add_term(target, coeff);
        }
        product.push(((left, right), combo));
    }

    let meta = SpaceMeta {
        name: raw.space.name,
        dimension: raw.space.dimension,
        smooth: raw.space.smooth,
        proper: raw.space.proper,
        connected: raw.space.connected,
        unital: raw.space.unital,
    };

    let algebra = GCAlgebra::new(space, product, meta, unit)?;
    let diags = algebra.validate();
    if !diags.is_empty() {
        return Err(CdgaError::ValidationFailed(diags));
    }
    Ok(algebra)
}

/// Emit the canonical document for an algebra; `load(serialize(a)) == a`.
pub fn serialize(a: &GCAlgebra) -> String {
    let raw = RawDocument {
        space: RawSpace {
            name: a.meta.name.clone(),
            dimension: a.meta.dimension,
            smooth: a.meta.smooth,
            proper: a.meta.proper,
            connected: a.meta.connected,
            unital: a.meta.unital,
            unit: a.unit.map(|u| a.space.element(u).label.clone()),
        },
        basis: a
            .space
            .basis()
            .iter()
            .map(|b| RawBasis {
                label: b.label.clone(),
                degree: b.bidegree.coh_deg,
                weight: b.bidegree.tate_weight,
            })
            .collect(),
        product: a
            .product
            .iter()
            .map(|(&(i, j), combo)| RawProduct {
                left: a.space.element(i).label.clone(),
                right: a.space.element(j).label.clone(),
                terms: combo
                    .iter()
                    .map(|(t, c)| RawTerm {
                        basis: a.space.element(t).label.clone(),
                        coeff: c.to_string(),
                    })
                    .collect(),
            })
            .collect(),
    };
    toml::to_string(&raw).expect("document serialization cannot fail")
}
