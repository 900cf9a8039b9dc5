//! Butterfly spans: a length `n-1` complex with wings onto two length `n`
//! ends presents a weak map between them without inverting anything.  This
//! module validates the span axioms, folds a span back into a morphism pair,
//! unfolds a span out of the diagonal gluing, and decides when two spans are
//! connected by a comparison morphism.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::action::RightAction;
use crate::caps::Caps;
use crate::complex::{enumerate_morphisms, ComplexError, ComplexMorphism, CrossedComplex};
use crate::group::{direct_product, DirectProduct, GroupError};
use crate::hom::{enumerate_homs, GroupHom};
use crate::homotopy::{search_homotopy, HomotopyError, PointedHomotopy};
use crate::model::{is_trivial_fibration, is_weak_equivalence};
use crate::pushout::{diagonal_pushout, DiagonalPushout, PushoutError};
use crate::reshape::{cotruncate_morphism, truncate, truncate_morphism};

#[derive(Debug, Error)]
pub enum ButterflyError {
    #[error("the end complexes must share a length of at least 2, got {left} and {right}")]
    BadEndLengths { left: usize, right: usize },
    #[error("the middle complex must have length {expected}, got {got}")]
    BadMiddleLength { got: usize, expected: usize },
    #[error("{what} does not have the required endpoints")]
    EndpointMismatch { what: &'static str },
    #[error("{what} failed validation: {detail}")]
    ConstructionInvalid { what: &'static str, detail: String },
    #[error("the folded complex is not valid: {detail}")]
    FoldInvalid { detail: String },
    #[error("the replacement projection must be a trivial fibration")]
    NotAReplacement,
    #[error("the two span morphisms cannot be chained")]
    NotChainable,
    #[error("the middle comparison is not constant on the glued class {class}")]
    IllDefinedOnCosets { class: usize },
    #[error("the wing comparison identity fails on representative {element}")]
    IdentityViolated { element: usize },
    #[error("search budget exhausted before the question was decided")]
    SearchCapExceeded,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
    #[error(transparent)]
    Pushout(#[from] PushoutError),
}

fn cap_from_complex(err: ComplexError) -> ButterflyError {
    match err {
        ComplexError::Group(GroupError::SearchCapExceeded { .. }) => {
            ButterflyError::SearchCapExceeded
        }
        other => ButterflyError::Complex(other),
    }
}

fn cap_from_group(err: GroupError) -> ButterflyError {
    match err {
        GroupError::SearchCapExceeded { .. } => ButterflyError::SearchCapExceeded,
        other => ButterflyError::Group(other),
    }
}

/// A span from `h` to `g`: the middle complex `e` has length one less than
/// the two ends, the wings `p` and `f` land in the truncated ends, and the
/// corner maps `alpha`, `beta` feed the missing top groups into the middle
/// top degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NButterfly {
    pub h: Arc<CrossedComplex>,
    pub g: Arc<CrossedComplex>,
    pub e: Arc<CrossedComplex>,
    /// Wing onto the truncation of `h`.
    pub p: ComplexMorphism,
    /// Wing onto the truncation of `g`.
    pub f: ComplexMorphism,
    /// Corner map out of the top group of `h`.
    pub alpha: GroupHom,
    /// Corner map out of the top group of `g`.
    pub beta: GroupHom,
}

impl NButterfly {
    /// Checks shapes and endpoints only; the span axioms are the business of
    /// [`validate_butterfly`].
    pub fn new(
        h: Arc<CrossedComplex>,
        g: Arc<CrossedComplex>,
        e: Arc<CrossedComplex>,
        p: ComplexMorphism,
        f: ComplexMorphism,
        alpha: GroupHom,
        beta: GroupHom,
    ) -> Result<NButterfly, ButterflyError> {
        let n = h.len();
        if n < 2 || g.len() != n {
            return Err(ButterflyError::BadEndLengths {
                left: h.len(),
                right: g.len(),
            });
        }
        if e.len() != n - 1 {
            return Err(ButterflyError::BadMiddleLength {
                got: e.len(),
                expected: n - 1,
            });
        }
        if p.source().as_ref() != e.as_ref()
            || p.target().as_ref() != truncate(&h, n - 1)?.as_ref()
        {
            return Err(ButterflyError::EndpointMismatch {
                what: "the first wing",
            });
        }
        if f.source().as_ref() != e.as_ref()
            || f.target().as_ref() != truncate(&g, n - 1)?.as_ref()
        {
            return Err(ButterflyError::EndpointMismatch {
                what: "the second wing",
            });
        }
        if alpha.source().as_ref() != h.group(n).as_ref()
            || alpha.target().as_ref() != e.group(n - 1).as_ref()
        {
            return Err(ButterflyError::EndpointMismatch {
                what: "the first corner map",
            });
        }
        if beta.source().as_ref() != g.group(n).as_ref()
            || beta.target().as_ref() != e.group(n - 1).as_ref()
        {
            return Err(ButterflyError::EndpointMismatch {
                what: "the second corner map",
            });
        }
        Ok(NButterfly {
            h,
            g,
            e,
            p,
            f,
            alpha,
            beta,
        })
    }

    /// The length `n` of the two ends.
    pub fn top_degree(&self) -> usize {
        self.h.len()
    }

    pub fn is_valid(&self) -> bool {
        validate_butterfly(self).is_empty()
    }
}

/// The four span axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ButterflyAxiom {
    /// The wings are morphisms and the corner squares commute.
    B1,
    /// The top sequence through the middle is exact and the lower pairings
    /// are onto their pullbacks.
    B2,
    /// The mixed composites through the corners vanish.
    B3,
    /// The corner maps intertwine the degree-1 actions.
    B4,
}

impl std::fmt::Display for ButterflyAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ButterflyAxiom::B1 => "B1 (wings and corner squares)",
            ButterflyAxiom::B2 => "B2 (exactness through the middle)",
            ButterflyAxiom::B3 => "B3 (vanishing mixed composites)",
            ButterflyAxiom::B4 => "B4 (corner equivariance)",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone)]
pub struct ButterflyViolation {
    pub axiom: ButterflyAxiom,
    pub degree: usize,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl std::fmt::Display for ButterflyViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} fails at degree {}: {} (witness {:?})",
            self.axiom, self.degree, self.detail, self.witness
        )
    }
}

/// Checks the four span axioms exhaustively and reports every violation.
pub fn validate_butterfly(b: &NButterfly) -> Vec<ButterflyViolation> {
    let mut out = Vec::new();
    let n = b.h.len();

    // B1: wing morphism laws and the two corner squares.
    for v in b.p.validate() {
        out.push(ButterflyViolation {
            axiom: ButterflyAxiom::B1,
            degree: v.degree,
            witness: v.witness.clone(),
            detail: format!("first wing: {v}"),
        });
    }
    for v in b.f.validate() {
        out.push(ButterflyViolation {
            axiom: ButterflyAxiom::B1,
            degree: v.degree,
            witness: v.witness.clone(),
            detail: format!("second wing: {v}"),
        });
    }
    for x in b.h.group(n).elements() {
        if b.p.apply(n - 1, b.alpha.apply(x)) != b.h.boundary(n).apply(x) {
            out.push(ButterflyViolation {
                axiom: ButterflyAxiom::B1,
                degree: n - 1,
                witness: vec![x],
                detail: "first corner square does not commute".into(),
            });
        }
    }
    for y in b.g.group(n).elements() {
        if b.f.apply(n - 1, b.beta.apply(y)) != b.g.boundary(n).apply(y) {
            out.push(ButterflyViolation {
                axiom: ButterflyAxiom::B1,
                degree: n - 1,
                witness: vec![y],
                detail: "second corner square does not commute".into(),
            });
        }
    }

    // B2: the second corner map starts a short exact sequence ending in the
    // pullback pairing, and the lower pairings are onto.
    for y in b.beta.kernel_elements() {
        if y != b.g.group(n).identity() {
            out.push(ButterflyViolation {
                axiom: ButterflyAxiom::B2,
                degree: n - 1,
                witness: vec![y],
                detail: "second corner map is not injective".into(),
            });
        }
    }
    let eta_top = b.e.boundary_at(n - 1);
    let eta_top_id = eta_top.target().identity();
    let h_top_id = b.h.group_at(n - 1).identity();
    let kernel_u: BTreeSet<usize> = b
        .e
        .group(n - 1)
        .elements()
        .filter(|&z| eta_top.apply(z) == eta_top_id && b.p.apply(n - 1, z) == h_top_id)
        .collect();
    let image_beta: BTreeSet<usize> =
        b.g.group(n).elements().map(|y| b.beta.apply(y)).collect();
    if kernel_u != image_beta {
        let witness = kernel_u
            .symmetric_difference(&image_beta)
            .next()
            .copied()
            .unwrap_or(0);
        out.push(ButterflyViolation {
            axiom: ButterflyAxiom::B2,
            degree: n - 1,
            witness: vec![witness],
            detail: "kernel of the top pairing differs from the corner image".into(),
        });
    }
    for k in 1..n {
        let below = b.e.boundary_at(k - 1);
        let below_id = below.target().identity();
        let kernel_below: Vec<usize> = b
            .e
            .group_at(k - 1)
            .elements()
            .filter(|&q| below.apply(q) == below_id)
            .collect();
        let glue_boundary = b.h.boundary_at(k);
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &q in &kernel_below {
            let glue = if k == 1 { 0 } else { b.p.apply(k - 1, q) };
            for x in b.h.group_at(k).elements() {
                if glue_boundary.apply(x) == glue {
                    pairs.insert((q, x));
                }
            }
        }
        let eta = b.e.boundary_at(k);
        let hit: BTreeSet<(usize, usize)> = b
            .e
            .group(k)
            .elements()
            .map(|z| (eta.apply(z), b.p.apply(k, z)))
            .collect();
        if hit != pairs {
            let witness = pairs
                .difference(&hit)
                .next()
                .map(|&(q, x)| vec![q, x])
                .unwrap_or_default();
            out.push(ButterflyViolation {
                axiom: ButterflyAxiom::B2,
                degree: k,
                witness,
                detail: "pairing misses a compatible pair".into(),
            });
        }
    }

    // B3: the middle boundary kills both corner images, and the second wing
    // kills the first corner image.
    for x in b.h.group(n).elements() {
        if eta_top.apply(b.alpha.apply(x)) != eta_top_id {
            out.push(ButterflyViolation {
                axiom: ButterflyAxiom::B3,
                degree: n - 1,
                witness: vec![x],
                detail: "middle boundary does not kill the first corner image".into(),
            });
        }
    }
    for y in b.g.group(n).elements() {
        if eta_top.apply(b.beta.apply(y)) != eta_top_id {
            out.push(ButterflyViolation {
                axiom: ButterflyAxiom::B3,
                degree: n - 1,
                witness: vec![y],
                detail: "middle boundary does not kill the second corner image".into(),
            });
        }
    }
    let g_top_id = b.g.group_at(n - 1).identity();
    for x in b.h.group(n).elements() {
        if b.f.apply(n - 1, b.alpha.apply(x)) != g_top_id {
            out.push(ButterflyViolation {
                axiom: ButterflyAxiom::B3,
                degree: n - 1,
                witness: vec![x],
                detail: "second wing does not kill the first corner image".into(),
            });
        }
    }

    // B4: the corner maps are equivariant over degree 1 of the middle.
    for a in b.e.group(1).elements() {
        let pa = b.p.apply(1, a);
        let fa = b.f.apply(1, a);
        for x in b.h.group(n).elements() {
            if b.alpha.apply(b.h.act(n, x, pa)) != b.e.act(n - 1, b.alpha.apply(x), a) {
                out.push(ButterflyViolation {
                    axiom: ButterflyAxiom::B4,
                    degree: n - 1,
                    witness: vec![x, a],
                    detail: "first corner map is not equivariant".into(),
                });
            }
        }
        for y in b.g.group(n).elements() {
            if b.beta.apply(b.g.act(n, y, fa)) != b.e.act(n - 1, b.beta.apply(y), a) {
                out.push(ButterflyViolation {
                    axiom: ButterflyAxiom::B4,
                    degree: n - 1,
                    witness: vec![y, a],
                    detail: "second corner map is not equivariant".into(),
                });
            }
        }
    }

    out
}

/// The span folded back into a single complex: the two end top groups sit
/// jointly on top of the middle, and the wings extend to full-length
/// morphisms by the projections.
#[derive(Debug, Clone)]
pub struct FoldedButterfly {
    /// Product of the two end top groups, the new top degree.
    pub product: DirectProduct,
    pub complex: Arc<CrossedComplex>,
    /// The first wing extended by the left projection.
    pub pstar: ComplexMorphism,
    /// The second wing extended by the right projection.
    pub fstar: ComplexMorphism,
}

/// Stacks `H_n x G_n` on the middle complex along the corner maps.  The top
/// boundary is `(x, y) -> alpha(x) beta(y)` and degree 1 acts on the top
/// through the two wing base maps.
pub fn fold(b: &NButterfly, caps: &Caps) -> Result<FoldedButterfly, ButterflyError> {
    let n = b.h.len();
    let product = direct_product(b.h.group(n), b.g.group(n), caps)?;
    let middle_top = b.e.group(n - 1).clone();
    let table: Vec<usize> = product
        .group
        .elements()
        .map(|z| {
            let (x, y) = product.decode(z);
            middle_top.mul(b.alpha.apply(x), b.beta.apply(y))
        })
        .collect();
    let top_boundary = GroupHom::new(product.group.clone(), middle_top, &table)
        .map_err(|err| ButterflyError::FoldInvalid {
            detail: format!("top boundary is not a homomorphism: {err}"),
        })?;
    let top_action = RightAction::from_fn(b.e.group(1).clone(), product.group.clone(), |m, a| {
        let (x, y) = product.decode(m);
        product.encode(
            b.h.act(n, x, b.p.apply(1, a)),
            b.g.act(n, y, b.f.apply(1, a)),
        )
    });

    let mut groups = b.e.groups().to_vec();
    groups.push(product.group.clone());
    let mut boundaries: Vec<GroupHom> = (2..n).map(|k| b.e.boundary(k).clone()).collect();
    boundaries.push(top_boundary);
    let mut actions: Vec<RightAction> = (2..n).map(|k| b.e.action(k).clone()).collect();
    actions.push(top_action);
    let complex = Arc::new(CrossedComplex::assemble(groups, boundaries, actions)?);
    if let Some(first) = complex.validate().first() {
        return Err(ButterflyError::FoldInvalid {
            detail: first.to_string(),
        });
    }

    let mut p_tables: Vec<Vec<usize>> = (1..n).map(|k| b.p.map(k).table_usize()).collect();
    p_tables.push(product.proj_left.table_usize());
    let pstar = ComplexMorphism::from_tables(complex.clone(), b.h.clone(), &p_tables)?;
    if let Some(first) = pstar.validate().first() {
        return Err(ButterflyError::FoldInvalid {
            detail: format!("extended first wing: {first}"),
        });
    }
    let mut f_tables: Vec<Vec<usize>> = (1..n).map(|k| b.f.map(k).table_usize()).collect();
    f_tables.push(product.proj_right.table_usize());
    let fstar = ComplexMorphism::from_tables(complex.clone(), b.g.clone(), &f_tables)?;
    if let Some(first) = fstar.validate().first() {
        return Err(ButterflyError::FoldInvalid {
            detail: format!("extended second wing: {first}"),
        });
    }

    Ok(FoldedButterfly {
        product,
        complex,
        pstar,
        fstar,
    })
}

/// Folds the span and checks that the extended first wing is a trivial
/// fibration, certifying the top degree by the explicit comparison
/// `(x, y) -> (alpha(x) beta(y), x)` onto the top pullback.
pub fn check_fold_trivial_fibration(
    b: &NButterfly,
    caps: &Caps,
) -> Result<bool, ButterflyError> {
    let folded = fold(b, caps)?;
    if !is_trivial_fibration(&folded.pstar, caps)? {
        return Ok(false);
    }
    let n = b.h.len();
    let eta = b.e.boundary_at(n - 1);
    let eta_id = eta.target().identity();
    let top_boundary = b.h.boundary(n);
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for q in b.e.group(n - 1).elements() {
        if eta.apply(q) != eta_id {
            continue;
        }
        for x in b.h.group(n).elements() {
            if b.p.apply(n - 1, q) == top_boundary.apply(x) {
                pairs.insert((q, x));
            }
        }
    }
    let middle_top = b.e.group(n - 1);
    let mut image: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut injective = true;
    for z in folded.product.group.elements() {
        let (x, y) = folded.product.decode(z);
        let value = (middle_top.mul(b.alpha.apply(x), b.beta.apply(y)), x);
        if !image.insert(value) {
            injective = false;
        }
    }
    Ok(injective && image == pairs)
}

/// A span read off from the diagonal gluing of a trivial fibration `p` and a
/// morphism `f` out of the same source.
#[derive(Debug, Clone)]
pub struct DerivedButterfly {
    pub diagonal: DiagonalPushout,
    pub butterfly: NButterfly,
}

/// Unfolds the diagonal gluing of `(p, f)` into a span: the middle is the
/// glued complex cut below its top degree, the wings are the two projections
/// of the comparison morphism, and the corner maps feed the end top groups
/// into the glued degree.
pub fn butterfly_from_derived(
    p: &ComplexMorphism,
    f: &ComplexMorphism,
    caps: &Caps,
) -> Result<DerivedButterfly, ButterflyError> {
    let dp = diagonal_pushout(p, f, caps)?;
    let n = p.source().len();
    let e = truncate(&dp.pushout.complex, n - 1)?;
    let to_h = dp.product.proj_left.compose_after(&dp.pushout.rho)?;
    let to_g = dp.product.proj_right.compose_after(&dp.pushout.rho)?;
    let wing_p = truncate_morphism(&to_h, n - 1)?;
    let wing_f = truncate_morphism(&to_g, n - 1)?;
    let h = p.target().clone();
    let g = f.target().clone();
    let top_boundary = dp.pushout.complex.boundary(n);
    let alpha_table: Vec<usize> = h
        .group(n)
        .elements()
        .map(|x| top_boundary.apply(dp.product.encode(n, x, g.group(n).identity())))
        .collect();
    let beta_table: Vec<usize> = g
        .group(n)
        .elements()
        .map(|y| top_boundary.apply(dp.product.encode(n, h.group(n).identity(), y)))
        .collect();
    let alpha = GroupHom::new(h.group(n).clone(), e.group(n - 1).clone(), &alpha_table)?;
    let beta = GroupHom::new(g.group(n).clone(), e.group(n - 1).clone(), &beta_table)?;
    let butterfly = NButterfly::new(h, g, e, wing_p, wing_f, alpha, beta)?;
    Ok(DerivedButterfly { diagonal: dp, butterfly })
}

/// Decides whether the span lies over the replacement `p_q`: some lift of
/// `p_q` through the extended first wing must cut to an isomorphism in the
/// top quotient degree and the identity below.  Without a stated lift the
/// candidates are enumerated within the caps.
pub fn is_over_q(
    b: &NButterfly,
    p_q: &ComplexMorphism,
    lift: Option<&ComplexMorphism>,
    caps: &Caps,
) -> Result<bool, ButterflyError> {
    if p_q.target().as_ref() != b.h.as_ref() {
        return Err(ButterflyError::EndpointMismatch {
            what: "the replacement projection",
        });
    }
    if !is_trivial_fibration(p_q, caps)? {
        return Err(ButterflyError::NotAReplacement);
    }
    let folded = fold(b, caps)?;
    let n = b.h.len();
    let check = |l: &ComplexMorphism| -> Result<bool, ButterflyError> {
        if l.source().as_ref() != p_q.source().as_ref()
            || l.target().as_ref() != folded.complex.as_ref()
        {
            return Err(ButterflyError::EndpointMismatch {
                what: "the candidate lift",
            });
        }
        if folded.pstar.compose_after(l)? != *p_q {
            return Ok(false);
        }
        let cut = cotruncate_morphism(l, n - 1)?;
        Ok(cut.is_valid()
            && cut.map(n - 1).is_bijective()
            && (1..n - 1).all(|k| cut.map(k).is_identity()))
    };
    match lift {
        Some(l) => check(l),
        None => {
            let candidates = enumerate_morphisms(p_q.source(), &folded.complex, caps)
                .map_err(cap_from_complex)?;
            for l in &candidates {
                if check(l)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// A comparison between two spans with the same ends: an isomorphism on the
/// middle top degree, the identity below, strict on the first wing and the
/// corner triangles, and a pointed homotopy filling the second wing
/// triangle.
#[derive(Debug, Clone)]
pub struct ButterflyMorphism {
    pub source: NButterfly,
    pub target: NButterfly,
    pub theta: ComplexMorphism,
    /// Arrow from the source second wing to the composed target second wing.
    pub phi: PointedHomotopy,
}

impl ButterflyMorphism {
    pub fn new(
        source: NButterfly,
        target: NButterfly,
        theta: ComplexMorphism,
        phi: PointedHomotopy,
    ) -> Result<ButterflyMorphism, ButterflyError> {
        let m = ButterflyMorphism {
            source,
            target,
            theta,
            phi,
        };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<(), ButterflyError> {
        let n = self.source.h.len();
        if self.target.h.len() != n
            || self.source.h.as_ref() != self.target.h.as_ref()
            || self.source.g.as_ref() != self.target.g.as_ref()
        {
            return Err(ButterflyError::NotChainable);
        }
        if self.theta.source().as_ref() != self.source.e.as_ref()
            || self.theta.target().as_ref() != self.target.e.as_ref()
        {
            return Err(ButterflyError::EndpointMismatch {
                what: "the middle comparison",
            });
        }
        if let Some(v) = self.theta.validate().first() {
            return Err(ButterflyError::ConstructionInvalid {
                what: "the middle comparison",
                detail: v.to_string(),
            });
        }
        if !self.theta.map(n - 1).is_bijective() {
            return Err(ButterflyError::ConstructionInvalid {
                what: "the middle comparison",
                detail: "the top map is not an isomorphism".into(),
            });
        }
        for k in 1..n - 1 {
            if !self.theta.map(k).is_identity() {
                return Err(ButterflyError::ConstructionInvalid {
                    what: "the middle comparison",
                    detail: format!("the map at degree {k} is not the identity"),
                });
            }
        }
        let first_wing = self.target.p.compose_after(&self.theta)?;
        if first_wing != self.source.p {
            return Err(ButterflyError::ConstructionInvalid {
                what: "the first wing triangle",
                detail: "does not commute strictly".into(),
            });
        }
        for x in self.source.h.group(n).elements() {
            if self.theta.apply(n - 1, self.source.alpha.apply(x)) != self.target.alpha.apply(x) {
                return Err(ButterflyError::ConstructionInvalid {
                    what: "the first corner triangle",
                    detail: format!("fails at element {x}"),
                });
            }
        }
        for y in self.source.g.group(n).elements() {
            if self.theta.apply(n - 1, self.source.beta.apply(y)) != self.target.beta.apply(y) {
                return Err(ButterflyError::ConstructionInvalid {
                    what: "the second corner triangle",
                    detail: format!("fails at element {y}"),
                });
            }
        }
        if self.phi.derived() != &self.source.f {
            return Err(ButterflyError::ConstructionInvalid {
                what: "the second wing homotopy",
                detail: "does not start at the source wing".into(),
            });
        }
        let composed_wing = self.target.f.compose_after(&self.theta)?;
        if self.phi.base() != &composed_wing {
            return Err(ButterflyError::ConstructionInvalid {
                what: "the second wing homotopy",
                detail: "does not land on the composed target wing".into(),
            });
        }
        if let Some(v) = self.phi.validate().first() {
            return Err(ButterflyError::ConstructionInvalid {
                what: "the second wing homotopy",
                detail: v.to_string(),
            });
        }
        Ok(())
    }

    pub fn identity(b: &NButterfly) -> Result<ButterflyMorphism, ButterflyError> {
        ButterflyMorphism::new(
            b.clone(),
            b.clone(),
            ComplexMorphism::identity(&b.e),
            PointedHomotopy::constant(b.f.clone()),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.theta.is_identity()
            && self.phi.components().iter().all(|c| {
                let id = c.target().identity();
                c.source().elements().all(|x| c.apply(x) == id)
            })
    }

    /// Chains two comparisons; the homotopy components multiply pointwise.
    pub fn compose(
        second: &ButterflyMorphism,
        first: &ButterflyMorphism,
    ) -> Result<ButterflyMorphism, ButterflyError> {
        if first.target != second.source {
            return Err(ButterflyError::NotChainable);
        }
        let theta = second.theta.compose_after(&first.theta)?;
        let tr_g = first.source.f.target().clone();
        let mut components = Vec::with_capacity(first.source.e.len());
        for k in 1..=first.source.e.len() {
            let next = tr_g.group_at(k + 1);
            let table: Vec<usize> = first
                .source
                .e
                .group(k)
                .elements()
                .map(|x| {
                    next.mul(
                        second.phi.component(k).apply(x),
                        first.phi.component(k).apply(x),
                    )
                })
                .collect();
            components.push(GroupHom::new_unchecked(
                first.source.e.group(k).clone(),
                next,
                &table,
            )?);
        }
        let base = second.target.f.compose_after(&theta)?;
        let phi = PointedHomotopy::between(&first.source.f, base, components)?;
        ButterflyMorphism::new(first.source.clone(), second.target.clone(), theta, phi)
    }

    /// The reverse comparison: the top map inverts and the homotopy
    /// components invert pointwise.
    pub fn invert(&self) -> Result<ButterflyMorphism, ButterflyError> {
        let n = self.source.h.len();
        let mut tables: Vec<Vec<usize>> = (1..n - 1)
            .map(|k| (0..self.target.e.group(k).order()).collect())
            .collect();
        tables.push(self.theta.map(n - 1).inverse()?.table_usize());
        let theta_inv =
            ComplexMorphism::from_tables(self.target.e.clone(), self.source.e.clone(), &tables)?;
        let tr_g = self.target.f.target().clone();
        let mut components = Vec::with_capacity(self.target.e.len());
        for k in 1..=self.target.e.len() {
            let next = tr_g.group_at(k + 1);
            let table: Vec<usize> = self
                .target
                .e
                .group(k)
                .elements()
                .map(|x| next.inv(self.phi.component(k).apply(x)))
                .collect();
            components.push(GroupHom::new_unchecked(
                self.target.e.group(k).clone(),
                next,
                &table,
            )?);
        }
        let base = self.source.f.compose_after(&theta_inv)?;
        let phi = PointedHomotopy::between(&self.target.f, base, components)?;
        ButterflyMorphism::new(self.target.clone(), self.source.clone(), theta_inv, phi)
    }
}

/// Turns a homotopy between two morphisms out of the same replacement into a
/// comparison between their derived spans.  The middle comparison twists the
/// glued top coordinate by the homotopy component; the comparison identity
/// on the second wing is checked on every ambient representative.
pub fn induced_butterfly_morphism(
    phi: &PointedHomotopy,
    p: &ComplexMorphism,
    caps: &Caps,
) -> Result<(DerivedButterfly, DerivedButterfly, ButterflyMorphism), ButterflyError> {
    let f = phi.derived().clone();
    let g = phi.base().clone();
    let source = butterfly_from_derived(p, &f, caps)?;
    let target = butterfly_from_derived(p, &g, caps)?;
    let n = p.source().len();
    let q = p.source().clone();
    let gc = f.target().clone();
    let gn = gc.group(n);
    let phi_top = phi.component(n - 1);

    let fc_f = &source.diagonal.pushout.coproduct;
    let fc_g = &target.diagonal.pushout.coproduct;
    let middle_order = source.butterfly.e.group(n - 1).order();
    let mut table = vec![usize::MAX; middle_order];
    for z in fc_f.ambient.group.elements() {
        let (a, w) = fc_f.ambient.decode(z);
        let (b, c) = source.diagonal.product.decode(n, w);
        let twisted = gn.mul(phi_top.apply(a), c);
        let image = fc_g
            .project
            .apply(fc_g.ambient.encode(a, target.diagonal.product.encode(n, b, twisted)));
        let class = fc_f.project.apply(z);
        if table[class] == usize::MAX {
            table[class] = image;
        } else if table[class] != image {
            return Err(ButterflyError::IllDefinedOnCosets { class });
        }
    }

    // wing comparison identity, on every representative
    let gn1 = gc.group_at(n - 1);
    let delta_top = gc.boundary(n);
    for z in fc_f.ambient.group.elements() {
        let (a, w) = fc_f.ambient.decode(z);
        let (_, c) = source.diagonal.product.decode(n, w);
        let class = fc_f.project.apply(z);
        let mut lhs = target.butterfly.f.apply(n - 1, table[class]);
        if n >= 3 {
            let xi = source.butterfly.e.boundary_at(n - 1).apply(class);
            lhs = gn1.mul(lhs, phi.component(n - 2).apply(xi));
        }
        let rhs = gn1.mul(f.apply(n - 1, a), delta_top.apply(c));
        if lhs != rhs {
            return Err(ButterflyError::IdentityViolated { element: z });
        }
    }

    let mut tables: Vec<Vec<usize>> = (1..n - 1)
        .map(|k| (0..q.group(k).order()).collect())
        .collect();
    tables.push(table);
    let theta = ComplexMorphism::from_tables(
        source.butterfly.e.clone(),
        target.butterfly.e.clone(),
        &tables,
    )?;
    let tr_g = source.butterfly.f.target().clone();
    let mut components: Vec<GroupHom> = (1..n - 1).map(|k| phi.component(k).clone()).collect();
    components.push(GroupHom::zero(
        source.butterfly.e.group(n - 1),
        &tr_g.group_at(n),
    ));
    let base = target.butterfly.f.compose_after(&theta)?;
    let wing_phi = PointedHomotopy::between(&source.butterfly.f, base, components)?;
    let morphism = ButterflyMorphism::new(
        source.butterfly.clone(),
        target.butterfly.clone(),
        theta,
        wing_phi,
    )?;
    Ok((source, target, morphism))
}

/// Folds a comparison into a morphism between the folded complexes: the
/// identity on the stacked top degree and the middle comparison below.  The
/// result is checked to be a weak equivalence.
pub fn fold_morphism(
    m: &ButterflyMorphism,
    caps: &Caps,
) -> Result<(FoldedButterfly, FoldedButterfly, ComplexMorphism), ButterflyError> {
    let src = fold(&m.source, caps)?;
    let tgt = fold(&m.target, caps)?;
    let n = m.source.h.len();
    let mut tables: Vec<Vec<usize>> = (1..n).map(|k| m.theta.map(k).table_usize()).collect();
    tables.push((0..src.product.group.order()).collect());
    let folded = ComplexMorphism::from_tables(src.complex.clone(), tgt.complex.clone(), &tables)?;
    if let Some(v) = folded.validate().first() {
        return Err(ButterflyError::ConstructionInvalid {
            what: "the folded comparison",
            detail: v.to_string(),
        });
    }
    if !is_weak_equivalence(&folded)? {
        return Err(ButterflyError::ConstructionInvalid {
            what: "the folded comparison",
            detail: "not a weak equivalence".into(),
        });
    }
    Ok((src, tgt, folded))
}

/// Searches for a comparison between two spans: candidate top isomorphisms
/// come from the hom enumeration and each surviving candidate is completed
/// by a homotopy search on the second wing.  `Ok(None)` is a proof of
/// disconnection within the stated caps.
pub fn connect_butterflies(
    from: &NButterfly,
    to: &NButterfly,
    caps: &Caps,
) -> Result<Option<ButterflyMorphism>, ButterflyError> {
    if from.h.as_ref() != to.h.as_ref() || from.g.as_ref() != to.g.as_ref() {
        return Ok(None);
    }
    let n = from.h.len();
    for k in 1..n - 1 {
        if from.e.group(k).as_ref() != to.e.group(k).as_ref() {
            return Ok(None);
        }
    }
    let candidates =
        enumerate_homs(from.e.group(n - 1), to.e.group(n - 1), caps).map_err(cap_from_group)?;
    for top in candidates {
        if !top.is_bijective() {
            continue;
        }
        let mut tables: Vec<Vec<usize>> = (1..n - 1)
            .map(|k| (0..from.e.group(k).order()).collect())
            .collect();
        tables.push(top.table_usize());
        let theta = match ComplexMorphism::from_tables(from.e.clone(), to.e.clone(), &tables) {
            Ok(t) => t,
            Err(_) => continue,
        };
        if !theta.is_valid() {
            continue;
        }
        if to.p.compose_after(&theta)? != from.p {
            continue;
        }
        if from
            .h
            .group(n)
            .elements()
            .any(|x| theta.apply(n - 1, from.alpha.apply(x)) != to.alpha.apply(x))
        {
            continue;
        }
        if from
            .g
            .group(n)
            .elements()
            .any(|y| theta.apply(n - 1, from.beta.apply(y)) != to.beta.apply(y))
        {
            continue;
        }
        let base = to.f.compose_after(&theta)?;
        match search_homotopy(&from.f, &base, caps) {
            Ok(Some(phi)) => {
                return Ok(Some(ButterflyMorphism::new(
                    from.clone(),
                    to.clone(),
                    theta,
                    phi,
                )?));
            }
            Ok(None) => continue,
            Err(HomotopyError::Group(GroupError::SearchCapExceeded { .. })) => {
                return Err(ButterflyError::SearchCapExceeded);
            }
            Err(err) => return Err(err.into()),
        }
    }
    Ok(None)
}

/// The partition of a finite list of spans under connectivity, with the
/// pairs the bounded search could not decide.  The partition is a lower
/// bound: an undecided pair may merge classes once the caps are raised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi0Outcome {
    pub classes: Vec<Vec<usize>>,
    pub indeterminate: Vec<(usize, usize)>,
}

pub fn pi0(butterflies: &[NButterfly], caps: &Caps) -> Result<Pi0Outcome, ButterflyError> {
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    let n = butterflies.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut capped: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            match connect_butterflies(&butterflies[i], &butterflies[j], caps) {
                Ok(Some(_)) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                Ok(None) => {}
                Err(ButterflyError::SearchCapExceeded) => capped.push((i, j)),
                Err(err) => return Err(err),
            }
        }
    }
    let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        grouped.entry(root).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = grouped.into_values().collect();
    classes.sort();
    let indeterminate: Vec<(usize, usize)> = capped
        .into_iter()
        .filter(|&(i, j)| find(&mut parent, i) != find(&mut parent, j))
        .collect();
    Ok(Pi0Outcome {
        classes,
        indeterminate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CrossedComplex;
    use crate::group::FinGroup;
    use crate::instances::{base_complex, cyclic, inner_module, symmetric_3, three_stage_complex, zmod_module};

    fn default_caps() -> Caps {
        Caps::default()
    }

    /// The classical span carrying the nonsplit extension of Z/2 by Z/2:
    /// middle Z/4, first end `[1 -> Z/2]`, second end `[Z/2 -> 1]`.
    fn extension_butterfly() -> NButterfly {
        let c2 = cyclic(2);
        let c4 = cyclic(4);
        let one = FinGroup::trivial();
        let h = Arc::new(
            CrossedComplex::assemble(
                vec![c2.clone(), one.clone()],
                vec![GroupHom::zero(&one, &c2)],
                vec![RightAction::trivial(c2.clone(), one.clone())],
            )
            .unwrap(),
        );
        let g = Arc::new(
            CrossedComplex::assemble(
                vec![one.clone(), c2.clone()],
                vec![GroupHom::zero(&c2, &one)],
                vec![RightAction::trivial(one.clone(), c2.clone())],
            )
            .unwrap(),
        );
        let e = base_complex(&c4);
        let p = ComplexMorphism::from_tables(e.clone(), truncate(&h, 1).unwrap(), &[vec![0, 1, 0, 1]])
            .unwrap();
        let f = ComplexMorphism::from_tables(e.clone(), truncate(&g, 1).unwrap(), &[vec![0; 4]])
            .unwrap();
        let alpha = GroupHom::zero(&one, &c4);
        let beta = GroupHom::new(c2.clone(), c4.clone(), &[0, 2]).unwrap();
        NButterfly::new(h, g, e, p, f, alpha, beta).unwrap()
    }

    /// The worked homotopy on `[Z/4 -> Z/2]`: base the identity, degree-1
    /// component `1 -> 2`, derived top map `[0, 3, 2, 1]`.
    fn zmod_homotopy() -> PointedHomotopy {
        let q = zmod_module();
        let id = ComplexMorphism::identity(&q);
        let phi1 = GroupHom::new(q.group_at(1), q.group_at(2), &[0, 2]).unwrap();
        let phi2 = GroupHom::zero(q.group(2), &q.group_at(3));
        PointedHomotopy::new(id, vec![phi1, phi2]).unwrap()
    }

    #[test]
    fn hand_built_extension_is_a_valid_butterfly() {
        let b = extension_butterfly();
        let violations = validate_butterfly(&b);
        assert!(violations.is_empty(), "{violations:?}");
        assert!(check_fold_trivial_fibration(&b, &default_caps()).unwrap());
        let folded = fold(&b, &default_caps()).unwrap();
        assert_eq!(folded.complex.len(), 2);
        assert_eq!(folded.complex.group(1).order(), 4);
        assert_eq!(folded.complex.group(2).order(), 2);
    }

    #[test]
    fn broken_corner_data_is_pinned_to_the_right_axiom() {
        let mut b = extension_butterfly();
        b.beta = GroupHom::zero(b.beta.source(), b.beta.target());
        let violations = validate_butterfly(&b);
        assert!(!violations.is_empty());
        assert!(violations.iter().all(|v| v.axiom == ButterflyAxiom::B2));

        let mut b = extension_butterfly();
        b.p = ComplexMorphism::from_tables(
            b.e.clone(),
            b.p.target().clone(),
            &[vec![0; 4]],
        )
        .unwrap();
        let violations = validate_butterfly(&b);
        assert!(!violations.is_empty());
        assert!(violations.iter().all(|v| v.axiom == ButterflyAxiom::B2));
    }

    #[test]
    fn derived_butterflies_fold_back_to_the_glued_complex() {
        let caps = default_caps();
        for q in [zmod_module(), inner_module(&symmetric_3()), three_stage_complex()] {
            let id = ComplexMorphism::identity(&q);
            let derived = butterfly_from_derived(&id, &id, &caps).unwrap();
            let violations = validate_butterfly(&derived.butterfly);
            assert!(violations.is_empty(), "{violations:?}");
            let folded = fold(&derived.butterfly, &caps).unwrap();
            assert_eq!(
                folded.complex.as_ref(),
                derived.diagonal.pushout.complex.as_ref()
            );
            assert!(check_fold_trivial_fibration(&derived.butterfly, &caps).unwrap());
        }
    }

    #[test]
    fn derived_butterflies_lie_over_their_replacement() {
        let caps = default_caps();

        let q = three_stage_complex();
        let id = ComplexMorphism::identity(&q);
        let derived = butterfly_from_derived(&id, &id, &caps).unwrap();
        let folded = fold(&derived.butterfly, &caps).unwrap();
        let lift_tables: Vec<Vec<usize>> = (1..=q.len())
            .map(|k| derived.diagonal.pushout.iota.map(k).table_usize())
            .collect();
        let lift =
            ComplexMorphism::from_tables(q.clone(), folded.complex.clone(), &lift_tables).unwrap();
        assert!(is_over_q(&derived.butterfly, &id, Some(&lift), &caps).unwrap());

        let q = zmod_module();
        let id = ComplexMorphism::identity(&q);
        let derived = butterfly_from_derived(&id, &id, &caps).unwrap();
        assert!(is_over_q(&derived.butterfly, &id, None, &caps).unwrap());
    }

    #[test]
    fn worked_homotopy_induces_a_comparison() {
        let caps = default_caps();
        let phi = zmod_homotopy();
        assert_eq!(phi.derived().map(2).table_usize(), vec![0, 3, 2, 1]);
        let q = zmod_module();
        let p = ComplexMorphism::identity(&q);
        let (_, _, morphism) = induced_butterfly_morphism(&phi, &p, &caps).unwrap();
        let inverse = morphism.invert().unwrap();
        let round = ButterflyMorphism::compose(&inverse, &morphism).unwrap();
        assert!(round.is_identity());
    }

    #[test]
    fn three_stage_homotopy_induces_a_comparison_and_folds() {
        let caps = default_caps();
        let q = three_stage_complex();
        let id = ComplexMorphism::identity(&q);
        let phi1 = GroupHom::zero(q.group(1), q.group(2));
        let phi2 = GroupHom::new(q.group_at(2), q.group_at(3), &[0, 1, 0, 1]).unwrap();
        let phi3 = GroupHom::zero(q.group(3), &q.group_at(4));
        let phi = PointedHomotopy::new(id.clone(), vec![phi1, phi2, phi3]).unwrap();
        assert_eq!(phi.derived().map(2).table_usize(), vec![0, 3, 2, 1]);

        let (_, _, morphism) = induced_butterfly_morphism(&phi, &id, &caps).unwrap();
        assert!(!morphism.theta.is_identity());
        let inverse = morphism.invert().unwrap();
        let round = ButterflyMorphism::compose(&inverse, &morphism).unwrap();
        assert!(round.is_identity());

        let (src, _, folded) = fold_morphism(&morphism, &caps).unwrap();
        let (_, _, folded_inverse) = fold_morphism(&inverse, &caps).unwrap();
        let round_folded = folded_inverse.compose_after(&folded).unwrap();
        assert_eq!(round_folded, ComplexMorphism::identity(&src.complex));
    }

    #[test]
    fn pi0_partitions_by_homotopy_class() {
        let caps = default_caps();
        let q = zmod_module();
        let p = ComplexMorphism::identity(&q);
        let phi = zmod_homotopy();
        let f = phi.derived().clone();
        let id = ComplexMorphism::identity(&q);
        let zero = ComplexMorphism::from_tables(
            q.clone(),
            q.clone(),
            &[vec![0, 0], vec![0, 0, 0, 0]],
        )
        .unwrap();
        let butterflies: Vec<NButterfly> = [f, id, zero]
            .iter()
            .map(|m| butterfly_from_derived(&p, m, &caps).unwrap().butterfly)
            .collect();
        let outcome = pi0(&butterflies, &caps).unwrap();
        assert_eq!(outcome.classes, vec![vec![0, 1], vec![2]]);
        assert!(outcome.indeterminate.is_empty());
    }

    #[test]
    fn tiny_caps_leave_pairs_undecided() {
        let caps = default_caps();
        let q = zmod_module();
        let p = ComplexMorphism::identity(&q);
        let id = ComplexMorphism::identity(&q);
        let zero = ComplexMorphism::from_tables(
            q.clone(),
            q.clone(),
            &[vec![0, 0], vec![0, 0, 0, 0]],
        )
        .unwrap();
        let butterflies: Vec<NButterfly> = [id, zero]
            .iter()
            .map(|m| butterfly_from_derived(&p, m, &caps).unwrap().butterfly)
            .collect();
        let tiny = Caps {
            max_search: 1,
            ..Caps::default()
        };
        let outcome = pi0(&butterflies, &tiny).unwrap();
        assert_eq!(outcome.classes, vec![vec![0], vec![1]]);
        assert_eq!(outcome.indeterminate, vec![(0, 1)]);
    }
}
