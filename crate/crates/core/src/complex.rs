//! Reduced crossed complexes of finite length and their morphisms.
//!
//! A complex of length `n` is a chain of groups `C_n -> ... -> C_2 -> C_1`
//! with one object: `C_1` carries no boundary, acts on itself by conjugation
//! and on every higher degree through a stored right action. Degrees are
//! 1-based throughout. A complex of length `n` is silently identified with
//! its paddings by trivial groups in degrees above `n`; morphism maps into
//! missing degrees are maps into the trivial group.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::action::{ActionViolation, RightAction};
use crate::caps::Caps;
use crate::group::{direct_product, DirectProduct, FinGroup, GroupError};
use crate::hom::GroupHom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("a complex needs at least the degree-1 group")]
    Empty,
    #[error("expected {expected} boundary maps for length {n}, got {got}")]
    BoundaryCountMismatch { n: usize, expected: usize, got: usize },
    #[error("expected {expected} actions for length {n}, got {got}")]
    ActionCountMismatch { n: usize, expected: usize, got: usize },
    #[error("boundary at degree {degree} does not run between the stored groups")]
    BoundaryEndpointMismatch { degree: usize },
    #[error("action at degree {degree} does not involve the stored groups")]
    ActionEndpointMismatch { degree: usize },
    #[error("degree {degree} is out of range 1..={n}")]
    DegreeOutOfRange { degree: usize, n: usize },
    #[error("morphism carries {got} maps, expected {expected} (one per source degree)")]
    MapCountMismatch { got: usize, expected: usize },
    #[error("morphism map at degree {degree} does not match the complexes")]
    MapEndpointMismatch { degree: usize },
    #[error("complex lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("morphism endpoints do not match")]
    EndpointMismatch,
    #[error(
        "induced map on homotopy groups at degree {degree} is ill-defined: \
         elements {a} and {b} share a class but their images do not"
    )]
    InducedMapIllDefined { degree: usize, a: usize, b: usize },
    #[error("quotient data at degree {degree} did not descend: {detail}")]
    QuotientIllDefined { degree: usize, detail: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Identifier for one crossed-complex axiom, used in validation reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomRule {
    /// The degree's group fails the group axioms.
    GroupAxioms,
    /// A boundary map is not a homomorphism.
    BoundaryHom,
    /// One of the three right-action axioms fails.
    Action,
    /// `d(d(x)) != e`.
    Chain,
    /// A group in degree >= 3 is not abelian.
    Abelian,
    /// `d(a^x) != d(a)^x` (for degree 2 the target action is conjugation,
    /// making this the first crossed-module identity).
    Equivariance,
    /// `a^(d b) != b^-1 a b` in degree 2 (the Peiffer identity).
    Peiffer,
    /// The image of the degree-2 boundary moves an element of degree >= 3.
    BoundaryActsAboveTwo,
}

impl fmt::Display for AxiomRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AxiomRule::GroupAxioms => "group axioms",
            AxiomRule::BoundaryHom => "boundary homomorphism",
            AxiomRule::Action => "action axioms",
            AxiomRule::Chain => "chain condition",
            AxiomRule::Abelian => "abelian above degree 2",
            AxiomRule::Equivariance => "boundary equivariance (CM1)",
            AxiomRule::Peiffer => "Peiffer identity (CM2)",
            AxiomRule::BoundaryActsAboveTwo => "degree-2 boundary acts trivially higher up",
        };
        f.write_str(name)
    }
}

/// One axiom failure: which rule, in which degree, and a witness tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub rule: AxiomRule,
    pub degree: usize,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] degree {}: {} (witness {:?})",
            self.rule, self.degree, self.detail, self.witness
        )
    }
}

/// A reduced crossed complex of finite length.
#[derive(Debug, Clone)]
pub struct CrossedComplex {
    /// `groups[k-1]` is the degree-`k` group.
    groups: Vec<Arc<FinGroup>>,
    /// `boundaries[k-2]` maps degree `k` to degree `k-1`, for `k = 2..=n`.
    boundaries: Vec<GroupHom>,
    /// `actions[k-2]` is the degree-1 action on degree `k`, for `k = 2..=n`.
    actions: Vec<RightAction>,
}

impl PartialEq for CrossedComplex {
    fn eq(&self, other: &Self) -> bool {
        self.groups == other.groups
            && self.boundaries == other.boundaries
            && self.actions == other.actions
    }
}

impl Eq for CrossedComplex {}

impl CrossedComplex {
    /// Assembles a complex after shape checks only; axioms are the business
    /// of [`CrossedComplex::validate`].
    pub fn assemble(
        groups: Vec<Arc<FinGroup>>,
        boundaries: Vec<GroupHom>,
        actions: Vec<RightAction>,
    ) -> Result<CrossedComplex, ComplexError> {
        let n = groups.len();
        if n == 0 {
            return Err(ComplexError::Empty);
        }
        if boundaries.len() != n - 1 {
            return Err(ComplexError::BoundaryCountMismatch {
                n,
                expected: n - 1,
                got: boundaries.len(),
            });
        }
        if actions.len() != n - 1 {
            return Err(ComplexError::ActionCountMismatch {
                n,
                expected: n - 1,
                got: actions.len(),
            });
        }
        for k in 2..=n {
            let b = &boundaries[k - 2];
            if b.source().as_ref() != groups[k - 1].as_ref()
                || b.target().as_ref() != groups[k - 2].as_ref()
            {
                return Err(ComplexError::BoundaryEndpointMismatch { degree: k });
            }
            let a = &actions[k - 2];
            if a.actor().as_ref() != groups[0].as_ref()
                || a.module().as_ref() != groups[k - 1].as_ref()
            {
                return Err(ComplexError::ActionEndpointMismatch { degree: k });
            }
        }
        Ok(CrossedComplex {
            groups,
            boundaries,
            actions,
        })
    }

    /// The length `n`; the complex has groups in degrees `1..=n`.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn group(&self, degree: usize) -> &Arc<FinGroup> {
        &self.groups[degree - 1]
    }

    /// The degree-`k` group, trivial above the length.
    pub fn group_at(&self, degree: usize) -> Arc<FinGroup> {
        if degree >= 1 && degree <= self.len() {
            self.groups[degree - 1].clone()
        } else {
            FinGroup::trivial()
        }
    }

    pub fn groups(&self) -> &[Arc<FinGroup>] {
        &self.groups
    }

    /// The stored boundary `C_k -> C_{k-1}` for `2 <= k <= n`.
    pub fn boundary(&self, degree: usize) -> &GroupHom {
        &self.boundaries[degree - 2]
    }

    /// The boundary at any degree >= 2; trivial outside the stored range.
    pub fn boundary_at(&self, degree: usize) -> GroupHom {
        if degree >= 2 && degree <= self.len() {
            self.boundaries[degree - 2].clone()
        } else {
            GroupHom::zero(&self.group_at(degree), &self.group_at(degree.saturating_sub(1)))
        }
    }

    pub fn action(&self, degree: usize) -> &RightAction {
        &self.actions[degree - 2]
    }

    /// Applies the degree-1 action in any degree; conjugation in degree 1,
    /// stored table in degrees `2..=n`, nothing above.
    pub fn act(&self, degree: usize, m: usize, x: usize) -> usize {
        if degree == 1 {
            self.groups[0].conj(m, x)
        } else if degree <= self.len() {
            self.actions[degree - 2].act(m, x)
        } else {
            m
        }
    }

    /// Exhaustively checks every axiom and returns all violations.
    pub fn validate(&self) -> Vec<AxiomViolation> {
        let mut out = Vec::new();
        let n = self.len();

        for k in 1..=n {
            if let Err(err) = self.groups[k - 1].check_axioms() {
                out.push(AxiomViolation {
                    rule: AxiomRule::GroupAxioms,
                    degree: k,
                    witness: vec![],
                    detail: err.to_string(),
                });
            }
        }
        for k in 2..=n {
            if let Err(err) = self.boundary(k).check_multiplicative() {
                out.push(AxiomViolation {
                    rule: AxiomRule::BoundaryHom,
                    degree: k,
                    witness: vec![],
                    detail: err.to_string(),
                });
            }
        }
        for k in 2..=n {
            for violation in self.action(k).violations() {
                let (witness, detail) = match violation {
                    ActionViolation::IdentityMoves { module_elt, result } => (
                        vec![module_elt],
                        format!("identity moves {module_elt} to {result}"),
                    ),
                    ActionViolation::NotCompatible { module_elt, a, b } => (
                        vec![module_elt, a, b],
                        format!("({module_elt}^{a})^{b} differs from {module_elt}^({a}*{b})"),
                    ),
                    ActionViolation::NotAutomorphism { a, m, n } => (
                        vec![a, m, n],
                        format!("{a} does not act as an automorphism on ({m},{n})"),
                    ),
                };
                out.push(AxiomViolation {
                    rule: AxiomRule::Action,
                    degree: k,
                    witness,
                    detail,
                });
            }
        }
        // chain condition d_{k-1} . d_k = 1
        for k in 3..=n {
            let upper = self.boundary(k);
            let lower = self.boundary(k - 1);
            let e = self.group(k - 2).identity();
            for x in self.group(k).elements() {
                let image = lower.apply(upper.apply(x));
                if image != e {
                    out.push(AxiomViolation {
                        rule: AxiomRule::Chain,
                        degree: k,
                        witness: vec![x],
                        detail: format!("d(d({x})) = {image}"),
                    });
                }
            }
        }
        for k in 3..=n {
            if !self.group(k).is_abelian() {
                let g = self.group(k);
                let witness = g
                    .elements()
                    .flat_map(|a| g.elements().map(move |b| (a, b)))
                    .find(|&(a, b)| g.mul(a, b) != g.mul(b, a))
                    .map(|(a, b)| vec![a, b])
                    .unwrap_or_default();
                out.push(AxiomViolation {
                    rule: AxiomRule::Abelian,
                    degree: k,
                    witness,
                    detail: "group is not abelian".to_string(),
                });
            }
        }
        // boundary equivariance: d(a^x) = d(a)^x, conjugation in degree 1
        for k in 2..=n {
            let boundary = self.boundary(k);
            for a in self.group(k).elements() {
                for x in self.group(1).elements() {
                    let left = boundary.apply(self.act(k, a, x));
                    let right = self.act(k - 1, boundary.apply(a), x);
                    if left != right {
                        out.push(AxiomViolation {
                            rule: AxiomRule::Equivariance,
                            degree: k,
                            witness: vec![a, x],
                            detail: format!("d({a}^{x}) = {left} but d({a})^{x} = {right}"),
                        });
                    }
                }
            }
        }
        // Peiffer identity in degree 2
        if n >= 2 {
            let boundary = self.boundary(2);
            let c2 = self.group(2);
            for a in c2.elements() {
                for b in c2.elements() {
                    let left = self.act(2, a, boundary.apply(b));
                    let right = c2.conj(a, b);
                    if left != right {
                        out.push(AxiomViolation {
                            rule: AxiomRule::Peiffer,
                            degree: 2,
                            witness: vec![a, b],
                            detail: format!("{a}^(d {b}) = {left} but {b}^-1 {a} {b} = {right}"),
                        });
                    }
                }
            }
        }
        // image of d_2 fixes degrees >= 3
        for k in 3..=n {
            let boundary = self.boundary(2);
            for a in self.group(k).elements() {
                for b in self.group(2).elements() {
                    let moved = self.act(k, a, boundary.apply(b));
                    if moved != a {
                        out.push(AxiomViolation {
                            rule: AxiomRule::BoundaryActsAboveTwo,
                            degree: k,
                            witness: vec![a, b],
                            detail: format!("{a}^(d {b}) = {moved}"),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// Rule identifiers for morphism validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismRule {
    /// A degreewise map is not a homomorphism.
    Hom,
    /// A boundary square does not commute.
    Square,
    /// A degreewise map is not equivariant over the degree-1 map.
    Equivariance,
}

impl fmt::Display for MorphismRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MorphismRule::Hom => "degreewise homomorphism",
            MorphismRule::Square => "boundary square",
            MorphismRule::Equivariance => "equivariance",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismViolation {
    pub rule: MorphismRule,
    pub degree: usize,
    pub witness: Vec<usize>,
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] degree {} (witness {:?})",
            self.rule, self.degree, self.witness
        )
    }
}

/// A degreewise map of crossed complexes.
///
/// One map is stored per source degree. When the target is shorter, the maps
/// for the degrees above its length land in the trivial group, which encodes
/// the padded reading of both complexes.
#[derive(Debug, Clone)]
pub struct ComplexMorphism {
    source: Arc<CrossedComplex>,
    target: Arc<CrossedComplex>,
    maps: Vec<GroupHom>,
}

impl PartialEq for ComplexMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.maps == other.maps && self.source == other.source && self.target == other.target
    }
}

impl Eq for ComplexMorphism {}

impl ComplexMorphism {
    pub fn new(
        source: Arc<CrossedComplex>,
        target: Arc<CrossedComplex>,
        maps: Vec<GroupHom>,
    ) -> Result<ComplexMorphism, ComplexError> {
        if maps.len() != source.len() {
            return Err(ComplexError::MapCountMismatch {
                got: maps.len(),
                expected: source.len(),
            });
        }
        for (i, map) in maps.iter().enumerate() {
            let degree = i + 1;
            if map.source().as_ref() != source.group(degree).as_ref()
                || map.target().as_ref() != target.group_at(degree).as_ref()
            {
                return Err(ComplexError::MapEndpointMismatch { degree });
            }
        }
        Ok(ComplexMorphism {
            source,
            target,
            maps,
        })
    }

    /// Builds the morphism from raw index tables without homomorphism checks;
    /// use [`ComplexMorphism::validate`] afterwards.
    pub fn from_tables(
        source: Arc<CrossedComplex>,
        target: Arc<CrossedComplex>,
        tables: &[Vec<usize>],
    ) -> Result<ComplexMorphism, ComplexError> {
        if tables.len() != source.len() {
            return Err(ComplexError::MapCountMismatch {
                got: tables.len(),
                expected: source.len(),
            });
        }
        let mut maps = Vec::with_capacity(tables.len());
        for (i, table) in tables.iter().enumerate() {
            let degree = i + 1;
            maps.push(GroupHom::new_unchecked(
                source.group(degree).clone(),
                target.group_at(degree),
                table,
            )?);
        }
        Ok(ComplexMorphism {
            source,
            target,
            maps,
        })
    }

    pub fn identity(complex: &Arc<CrossedComplex>) -> ComplexMorphism {
        let maps = (1..=complex.len())
            .map(|k| GroupHom::identity(complex.group(k)))
            .collect();
        ComplexMorphism {
            source: complex.clone(),
            target: complex.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &Arc<CrossedComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CrossedComplex> {
        &self.target
    }

    /// The stored map at `1 <= degree <= source length`.
    pub fn map(&self, degree: usize) -> &GroupHom {
        &self.maps[degree - 1]
    }

    pub fn maps(&self) -> &[GroupHom] {
        &self.maps
    }

    /// Applies the degree-`k` map; above the source length everything is the
    /// target identity.
    pub fn apply(&self, degree: usize, x: usize) -> usize {
        if degree <= self.maps.len() {
            self.maps[degree - 1].apply(x)
        } else {
            self.target.group_at(degree).identity()
        }
    }

    /// Checks each map for multiplicativity, each boundary square, and
    /// equivariance over the degree-1 map.
    pub fn validate(&self) -> Vec<MorphismViolation> {
        let mut out = Vec::new();
        let ns = self.source.len();
        for k in 1..=ns {
            if self.maps[k - 1].check_multiplicative().is_err() {
                let g = self.source.group(k);
                let witness = g
                    .elements()
                    .flat_map(|a| g.elements().map(move |b| (a, b)))
                    .find(|&(a, b)| {
                        self.apply(k, g.mul(a, b))
                            != self
                                .target
                                .group_at(k)
                                .mul(self.apply(k, a), self.apply(k, b))
                    })
                    .map(|(a, b)| vec![a, b])
                    .unwrap_or_default();
                out.push(MorphismViolation {
                    rule: MorphismRule::Hom,
                    degree: k,
                    witness,
                });
            }
        }
        // squares: target_boundary . f_k = f_{k-1} . source_boundary
        for k in 2..=ns {
            let source_boundary = self.source.boundary(k);
            let target_boundary = self.target.boundary_at(k);
            for x in self.source.group(k).elements() {
                let left = target_boundary.apply(self.apply(k, x));
                let right = self.apply(k - 1, source_boundary.apply(x));
                if left != right {
                    out.push(MorphismViolation {
                        rule: MorphismRule::Square,
                        degree: k,
                        witness: vec![x],
                    });
                }
            }
        }
        // equivariance: f_k(a^x) = f_k(a)^(f_1(x))
        for k in 2..=ns {
            for a in self.source.group(k).elements() {
                for x in self.source.group(1).elements() {
                    let left = self.apply(k, self.source.act(k, a, x));
                    let right = self.target.act(k, self.apply(k, a), self.apply(1, x));
                    if left != right {
                        out.push(MorphismViolation {
                            rule: MorphismRule::Equivariance,
                            degree: k,
                            witness: vec![a, x],
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.source.as_ref() == self.target.as_ref()
            && self.maps.iter().all(|m| m.is_identity())
    }

    /// `self` after `first`.
    pub fn compose_after(&self, first: &ComplexMorphism) -> Result<ComplexMorphism, ComplexError> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(ComplexError::EndpointMismatch);
        }
        let mut maps = Vec::with_capacity(first.source.len());
        for k in 1..=first.source.len() {
            let inner = first.map(k);
            if k <= self.source.len() {
                maps.push(self.map(k).compose_after(inner)?);
            } else {
                // the middle complex is trivial here, so the composite is too
                maps.push(GroupHom::zero(
                    &first.source.group_at(k),
                    &self.target.group_at(k),
                ));
            }
        }
        ComplexMorphism::new(first.source.clone(), self.target.clone(), maps)
    }
}

/// Enumerates every morphism between two complexes, in lexicographic order
/// of the degreewise map tables.
///
/// Degreewise candidates come from the group-level hom enumeration; tuples
/// are pruned by the boundary squares and equivariance as soon as the
/// degrees involved are fixed.
pub fn enumerate_morphisms(
    source: &Arc<CrossedComplex>,
    target: &Arc<CrossedComplex>,
    caps: &Caps,
) -> Result<Vec<ComplexMorphism>, ComplexError> {
    let n = source.len();
    let mut candidates: Vec<Vec<GroupHom>> = Vec::with_capacity(n);
    for k in 1..=n {
        candidates.push(crate::hom::enumerate_homs(
            &source.group_at(k),
            &target.group_at(k),
            caps,
        )?);
    }

    fn square_ok(
        source: &CrossedComplex,
        target: &CrossedComplex,
        lower: &GroupHom,
        upper: &GroupHom,
        k: usize,
    ) -> bool {
        let sb = source.boundary(k);
        let tb = target.boundary_at(k);
        source
            .group(k)
            .elements()
            .all(|x| tb.apply(upper.apply(x)) == lower.apply(sb.apply(x)))
    }

    fn equivariant_ok(
        source: &CrossedComplex,
        target: &CrossedComplex,
        base: &GroupHom,
        upper: &GroupHom,
        k: usize,
    ) -> bool {
        source.group(k).elements().all(|c| {
            source.group(1).elements().all(|x| {
                upper.apply(source.act(k, c, x))
                    == target.act(k, upper.apply(c), base.apply(x))
            })
        })
    }

    let mut out = Vec::new();
    let mut chosen: Vec<GroupHom> = Vec::with_capacity(n);
    fn descend(
        source: &Arc<CrossedComplex>,
        target: &Arc<CrossedComplex>,
        candidates: &[Vec<GroupHom>],
        chosen: &mut Vec<GroupHom>,
        out: &mut Vec<ComplexMorphism>,
        square_ok: &dyn Fn(&CrossedComplex, &CrossedComplex, &GroupHom, &GroupHom, usize) -> bool,
        equivariant_ok: &dyn Fn(&CrossedComplex, &CrossedComplex, &GroupHom, &GroupHom, usize) -> bool,
    ) {
        let k = chosen.len() + 1;
        if k > source.len() {
            out.push(ComplexMorphism {
                source: source.clone(),
                target: target.clone(),
                maps: chosen.clone(),
            });
            return;
        }
        for map in &candidates[k - 1] {
            if k >= 2 {
                if !square_ok(source, target, &chosen[k - 2], map, k) {
                    continue;
                }
                if !equivariant_ok(source, target, &chosen[0], map, k) {
                    continue;
                }
            }
            chosen.push(map.clone());
            descend(source, target, candidates, chosen, out, square_ok, equivariant_ok);
            chosen.pop();
        }
    }
    descend(
        source,
        target,
        &candidates,
        &mut chosen,
        &mut out,
        &square_ok,
        &equivariant_ok,
    );
    Ok(out)
}

/// The size of the Hom-set, computed by full enumeration.
pub fn count_morphisms(
    source: &Arc<CrossedComplex>,
    target: &Arc<CrossedComplex>,
    caps: &Caps,
) -> Result<usize, ComplexError> {
    Ok(enumerate_morphisms(source, target, caps)?.len())
}

/// A degreewise direct product of two complexes, with its projections.
#[derive(Debug, Clone)]
pub struct ProductComplex {
    pub complex: Arc<CrossedComplex>,
    pub left: Arc<CrossedComplex>,
    pub right: Arc<CrossedComplex>,
    /// Degreewise product data, one entry per degree `1..=n`.
    pub products: Vec<DirectProduct>,
    pub proj_left: ComplexMorphism,
    pub proj_right: ComplexMorphism,
}

impl ProductComplex {
    pub fn encode(&self, degree: usize, a: usize, b: usize) -> usize {
        self.products[degree - 1].encode(a, b)
    }

    pub fn decode(&self, degree: usize, x: usize) -> (usize, usize) {
        self.products[degree - 1].decode(x)
    }
}

/// Builds the degreewise product. Shorter inputs are padded with trivial
/// groups so both factors reach the same length.
pub fn product_complex(
    left: &Arc<CrossedComplex>,
    right: &Arc<CrossedComplex>,
    caps: &Caps,
) -> Result<ProductComplex, ComplexError> {
    let n = left.len().max(right.len());
    let mut products = Vec::with_capacity(n);
    for k in 1..=n {
        products.push(direct_product(&left.group_at(k), &right.group_at(k), caps)?);
    }
    let mut groups = Vec::with_capacity(n);
    for p in &products {
        groups.push(p.group.clone());
    }
    let mut boundaries = Vec::with_capacity(n.saturating_sub(1));
    let mut actions = Vec::with_capacity(n.saturating_sub(1));
    for k in 2..=n {
        let lb = left.boundary_at(k);
        let rb = right.boundary_at(k);
        let upper = &products[k - 1];
        let lower = &products[k - 2];
        let table: Vec<usize> = (0..upper.group.order())
            .map(|x| {
                let (a, b) = upper.decode(x);
                lower.encode(lb.apply(a), rb.apply(b))
            })
            .collect();
        boundaries.push(GroupHom::new(
            upper.group.clone(),
            lower.group.clone(),
            &table,
        )?);

        let upper_k = upper.clone();
        let base = products[0].clone();
        let left_c = left.clone();
        let right_c = right.clone();
        actions.push(RightAction::from_fn(
            products[0].group.clone(),
            upper.group.clone(),
            move |m, x| {
                let (a, b) = upper_k.decode(m);
                let (xa, xb) = base.decode(x);
                upper_k.encode(left_c.act(k, a, xa), right_c.act(k, b, xb))
            },
        ));
    }
    let complex = Arc::new(CrossedComplex::assemble(groups, boundaries, actions)?);

    let proj_left = {
        let mut maps = Vec::with_capacity(n);
        for k in 1..=n {
            maps.push(
                products[k - 1]
                    .proj_left
                    .resource(complex.group(k).clone())?
                    .retarget(left.group_at(k))?,
            );
        }
        ComplexMorphism::new(complex.clone(), left.clone(), maps)?
    };
    let proj_right = {
        let mut maps = Vec::with_capacity(n);
        for k in 1..=n {
            maps.push(
                products[k - 1]
                    .proj_right
                    .resource(complex.group(k).clone())?
                    .retarget(right.group_at(k))?,
            );
        }
        ComplexMorphism::new(complex.clone(), right.clone(), maps)?
    };
    Ok(ProductComplex {
        complex,
        left: left.clone(),
        right: right.clone(),
        products,
        proj_left,
        proj_right,
    })
}

/// Pairs two morphisms out of one source into the product of their targets.
pub fn pair_into_product(
    p: &ComplexMorphism,
    f: &ComplexMorphism,
    product: &ProductComplex,
) -> Result<ComplexMorphism, ComplexError> {
    if p.source().as_ref() != f.source().as_ref() {
        return Err(ComplexError::EndpointMismatch);
    }
    if product.left.as_ref() != p.target().as_ref()
        || product.right.as_ref() != f.target().as_ref()
    {
        return Err(ComplexError::EndpointMismatch);
    }
    let source = p.source().clone();
    let mut maps = Vec::with_capacity(source.len());
    for k in 1..=source.len() {
        let table: Vec<usize> = source
            .group(k)
            .elements()
            .map(|x| product.encode(k, p.apply(k, x), f.apply(k, x)))
            .collect();
        maps.push(GroupHom::new(
            source.group(k).clone(),
            product.complex.group_at(k),
            &table,
        )?);
    }
    ComplexMorphism::new(source, product.complex.clone(), maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{
        cyclic, inner_module, symmetric_3, three_stage_complex, zmod_module,
    };

    #[test]
    fn valid_instances_pass() {
        assert!(inner_module(&symmetric_3()).is_valid());
        assert!(inner_module(&cyclic(4)).is_valid());
        assert!(zmod_module().is_valid());
        assert!(three_stage_complex().is_valid());
    }

    #[test]
    fn peiffer_failure_is_reported() {
        // inner S3 data but with the trivial action: CM1 and CM2 both break
        let s3 = symmetric_3();
        let complex = CrossedComplex::assemble(
            vec![s3.clone(), s3.clone()],
            vec![GroupHom::identity(&s3)],
            vec![RightAction::trivial(s3.clone(), s3.clone())],
        )
        .unwrap();
        let report = complex.validate();
        assert!(report.iter().any(|v| v.rule == AxiomRule::Peiffer));
        assert!(report.iter().any(|v| v.rule == AxiomRule::Equivariance));
    }

    #[test]
    fn chain_condition_failure_is_reported() {
        // [Z/2 -(id-ish)-> Z/2 -(id)-> Z/2] with nonzero composite
        let z2 = cyclic(2);
        let complex = CrossedComplex::assemble(
            vec![z2.clone(), z2.clone(), z2.clone()],
            vec![GroupHom::identity(&z2), GroupHom::identity(&z2)],
            vec![
                RightAction::trivial(z2.clone(), z2.clone()),
                RightAction::trivial(z2.clone(), z2.clone()),
            ],
        )
        .unwrap();
        let report = complex.validate();
        assert!(report.iter().any(|v| v.rule == AxiomRule::Chain));
    }

    #[test]
    fn abelian_rule_covers_degree_three() {
        let s3 = symmetric_3();
        let z2 = cyclic(2);
        let complex = CrossedComplex::assemble(
            vec![z2.clone(), z2.clone(), s3.clone()],
            vec![
                GroupHom::identity(&z2),
                GroupHom::zero(&s3, &z2),
            ],
            vec![
                RightAction::trivial(z2.clone(), z2.clone()),
                RightAction::trivial(z2.clone(), s3.clone()),
            ],
        )
        .unwrap();
        let report = complex.validate();
        assert!(report.iter().any(|v| v.rule == AxiomRule::Abelian && v.degree == 3));
    }

    #[test]
    fn morphism_validation() {
        let m = zmod_module();
        let id = ComplexMorphism::identity(&m);
        assert!(id.is_valid());

        // doubling on top, identity below: squares commute (2c mod 2 = c mod 2
        // fails!), so expect a square violation
        let doubling = ComplexMorphism::from_tables(
            m.clone(),
            m.clone(),
            &[vec![0, 1], vec![0, 2, 0, 2]],
        )
        .unwrap();
        let report = doubling.validate();
        assert!(report.iter().any(|v| v.rule == MorphismRule::Square));

        // negation on top, identity below is a genuine morphism
        let negation = ComplexMorphism::from_tables(
            m.clone(),
            m.clone(),
            &[vec![0, 1], vec![0, 3, 2, 1]],
        )
        .unwrap();
        assert!(negation.is_valid());
    }

    #[test]
    fn morphism_into_shorter_target_needs_killed_image() {
        // zmod has length 2; target of length 1 forces degree-2 into the
        // trivial group, and the square demands f_1 kill the image of d_2.
        let m = zmod_module();
        let base = crate::instances::base_complex(&cyclic(2));
        let collapse = ComplexMorphism::from_tables(m.clone(), base.clone(), &[vec![0, 1], vec![0, 0, 0, 0]])
            .unwrap();
        // f_1 = id does not kill im d_2 = Z/2
        assert!(!collapse.is_valid());

        let kill = ComplexMorphism::from_tables(m, base, &[vec![0, 0], vec![0, 0, 0, 0]]).unwrap();
        assert!(kill.is_valid());
    }

    #[test]
    fn product_complex_projects() {
        let caps = Caps::default();
        let a = zmod_module();
        let b = inner_module(&cyclic(3));
        let p = product_complex(&a, &b, &caps).unwrap();
        assert!(p.complex.is_valid());
        assert_eq!(p.complex.group(1).order(), 2 * 3);
        assert_eq!(p.complex.group(2).order(), 4 * 3);
        assert!(p.proj_left.is_valid());
        assert!(p.proj_right.is_valid());

        let diag = pair_into_product(
            &ComplexMorphism::identity(&a),
            &ComplexMorphism::identity(&a),
            &product_complex(&a, &a, &caps).unwrap(),
        )
        .unwrap();
        assert!(diag.is_valid());
    }

    #[test]
    fn compose_handles_padding() {
        let m = zmod_module();
        let base = crate::instances::base_complex(&cyclic(2));
        let kill = ComplexMorphism::from_tables(m.clone(), base.clone(), &[vec![0, 0], vec![0; 4]])
            .unwrap();
        let up = ComplexMorphism::from_tables(base.clone(), m.clone(), &[vec![0, 1]]).unwrap();
        let composite = up.compose_after(&kill).unwrap();
        assert_eq!(composite.source().as_ref(), m.as_ref());
        assert_eq!(composite.target().as_ref(), m.as_ref());
        assert!(composite.map(1).table().iter().all(|&v| v == 0));
    }
}
