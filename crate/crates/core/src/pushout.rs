//! Gluing constructions: fibered coproducts of group data, the pushout of a
//! complex morphism below its top degree, and the exactness report for the
//! diagonal construction over a trivial fibration.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::action::RightAction;
use crate::caps::Caps;
use crate::complex::{
    pair_into_product, product_complex, ComplexError, ComplexMorphism, CrossedComplex,
    ProductComplex,
};
use crate::group::{check_normal, direct_product, quotient, subgroup_of, FinGroup, GroupError};
use crate::hom::{cokernel, GroupHom};
use crate::model::{induced_map, is_trivial_fibration, is_weak_equivalence};
use crate::reshape::cotruncate_morphism;

#[derive(Debug, Error)]
pub enum PushoutError {
    #[error("both maps must start from the same group")]
    SharedSourceMismatch,
    #[error("expected matching lengths, got {left} and {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("the construction needs length at least 2, got {len}")]
    TooShort { len: usize },
    #[error("twist endpoints do not match the product factors")]
    TwistMismatch,
    #[error("relation {element} is not central in the ambient product")]
    RelationNotCentral { element: usize },
    #[error("the two legs disagree on source element {element}")]
    LegsDisagree { element: usize },
    #[error("{context} takes two different values on class {class}")]
    IllDefinedOnCosets { context: &'static str, class: usize },
    #[error("{what} failed validation: {detail}")]
    ConstructionInvalid { what: &'static str, detail: String },
    #[error("the factorization misses the input at degree {degree}, element {element}")]
    FactorizationFailed { degree: usize, element: usize },
    #[error("the first morphism must be a trivial fibration")]
    PreconditionFailed,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Which closure property the relation subgroup must satisfy. Degrees three
/// and up demand centrality; the degree-two case only normality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralityMode {
    Central,
    Normal,
}

/// An ambient product `K x G`. With a twist the multiplication is
/// `(a, x)(b, y) = (ab, x^b y)`, the left factor acting on the right through
/// the supplied action; without one it is the plain direct product.
#[derive(Debug, Clone)]
pub struct GluedProduct {
    pub group: Arc<FinGroup>,
    pub left: Arc<FinGroup>,
    pub right: Arc<FinGroup>,
    pub twist: Option<RightAction>,
    pub incl_left: GroupHom,
    pub incl_right: GroupHom,
}

impl GluedProduct {
    pub fn encode(&self, a: usize, b: usize) -> usize {
        a * self.right.order() + b
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x / self.right.order(), x % self.right.order())
    }
}

pub fn glued_product(
    left: &Arc<FinGroup>,
    right: &Arc<FinGroup>,
    twist: Option<RightAction>,
    caps: &Caps,
) -> Result<GluedProduct, PushoutError> {
    let (group, incl_left, incl_right) = match &twist {
        None => {
            let dp = direct_product(left, right, caps)?;
            (dp.group, dp.incl_left, dp.incl_right)
        }
        Some(action) => {
            if action.actor().as_ref() != left.as_ref()
                || action.module().as_ref() != right.as_ref()
            {
                return Err(PushoutError::TwistMismatch);
            }
            let order = left.order() * right.order();
            if order > caps.max_product {
                return Err(PushoutError::Group(GroupError::OrderCapExceeded {
                    required: order,
                    cap: caps.max_product,
                }));
            }
            let rn = right.order();
            let encode = |a: usize, b: usize| a * rn + b;
            let mut table = vec![vec![0usize; order]; order];
            for a in left.elements() {
                for x in right.elements() {
                    for b in left.elements() {
                        for y in right.elements() {
                            table[encode(a, x)][encode(b, y)] =
                                encode(left.mul(a, b), right.mul(action.act(x, b), y));
                        }
                    }
                }
            }
            let labels = match (left.labels(), right.labels()) {
                (Some(ls), Some(rs)) => Some(
                    (0..order)
                        .map(|i| format!("({},{})", ls[i / rn], rs[i % rn]))
                        .collect(),
                ),
                _ => None,
            };
            let identity = encode(left.identity(), right.identity());
            let group = Arc::new(FinGroup::from_cayley(&table, identity, labels)?);
            let left_table: Vec<usize> =
                left.elements().map(|a| encode(a, right.identity())).collect();
            let right_table: Vec<usize> =
                right.elements().map(|x| encode(left.identity(), x)).collect();
            let incl_left = GroupHom::new(left.clone(), group.clone(), &left_table)?;
            let incl_right = GroupHom::new(right.clone(), group.clone(), &right_table)?;
            (group, incl_left, incl_right)
        }
    };
    Ok(GluedProduct {
        group,
        left: left.clone(),
        right: right.clone(),
        twist,
        incl_left,
        incl_right,
    })
}

/// The quotient of the ambient product of a span `K <-d- H -p-> G` by the
/// relations `(d(h)^-1, p(h))`, together with its two legs into the quotient.
#[derive(Debug, Clone)]
pub struct FiberedCoproduct {
    pub d: GroupHom,
    pub p: GroupHom,
    pub ambient: GluedProduct,
    pub relations: Vec<usize>,
    pub group: Arc<FinGroup>,
    pub project: GroupHom,
    pub leg_left: GroupHom,
    pub leg_right: GroupHom,
}

pub fn fibered_coproduct(
    d: &GroupHom,
    p: &GroupHom,
    twist: Option<RightAction>,
    mode: CentralityMode,
    caps: &Caps,
) -> Result<FiberedCoproduct, PushoutError> {
    if d.source().as_ref() != p.source().as_ref() {
        return Err(PushoutError::SharedSourceMismatch);
    }
    let ambient = glued_product(d.target(), p.target(), twist, caps)?;
    let mut relations: Vec<usize> = d
        .source()
        .elements()
        .map(|h| ambient.encode(d.target().inv(d.apply(h)), p.apply(h)))
        .collect();
    relations.sort_unstable();
    relations.dedup();
    subgroup_of(&ambient.group, &relations)?;
    match mode {
        CentralityMode::Central => {
            let center: BTreeSet<usize> = ambient.group.center().into_iter().collect();
            for &r in &relations {
                if !center.contains(&r) {
                    return Err(PushoutError::RelationNotCentral { element: r });
                }
            }
        }
        CentralityMode::Normal => check_normal(&ambient.group, &relations)?,
    }
    let (group, project) = quotient(&ambient.group, &relations)?;
    let leg_left = project.compose_after(&ambient.incl_left)?;
    let leg_right = project.compose_after(&ambient.incl_right)?;
    for h in d.source().elements() {
        if leg_left.apply(d.apply(h)) != leg_right.apply(p.apply(h)) {
            return Err(PushoutError::LegsDisagree { element: h });
        }
    }
    Ok(FiberedCoproduct {
        d: d.clone(),
        p: p.clone(),
        ambient,
        relations,
        group,
        project,
        leg_left,
        leg_right,
    })
}

/// True iff `p` carries `ker d` onto the kernel of the right leg and the left
/// leg induces an isomorphism between the cokernels of `d` and the right leg.
pub fn check_coproduct_kernel_cokernel(fc: &FiberedCoproduct) -> Result<bool, PushoutError> {
    let hit: BTreeSet<usize> = fc
        .d
        .kernel_elements()
        .into_iter()
        .map(|h| fc.p.apply(h))
        .collect();
    let kernels_onto = fc
        .leg_right
        .kernel_elements()
        .into_iter()
        .all(|g| hit.contains(&g));

    let (coker_d, to_coker_d) = cokernel(&fc.d)?;
    let (coker_leg, to_coker_leg) = cokernel(&fc.leg_right)?;
    let mut table = vec![usize::MAX; coker_d.order()];
    for k in fc.d.target().elements() {
        let class = to_coker_d.apply(k);
        let value = to_coker_leg.apply(fc.leg_left.apply(k));
        if table[class] == usize::MAX {
            table[class] = value;
        } else if table[class] != value {
            return Ok(false);
        }
    }
    let cokernels_iso = match GroupHom::new(coker_d, coker_leg, &table) {
        Ok(hom) => hom.is_bijective(),
        Err(_) => false,
    };
    Ok(kernels_onto && cokernels_iso)
}

fn descend_table(
    fc: &FiberedCoproduct,
    value: impl Fn(usize, usize) -> usize,
    context: &'static str,
) -> Result<Vec<usize>, PushoutError> {
    let mut table = vec![usize::MAX; fc.group.order()];
    for x in fc.ambient.group.elements() {
        let (k, g) = fc.ambient.decode(x);
        let class = fc.project.apply(x);
        let v = value(k, g);
        if table[class] == usize::MAX {
            table[class] = v;
        } else if table[class] != v {
            return Err(PushoutError::IllDefinedOnCosets { context, class });
        }
    }
    Ok(table)
}

/// A morphism glued into its pushout: `rho` after `iota` recovers the input.
#[derive(Debug, Clone)]
pub struct NPushout {
    pub f: ComplexMorphism,
    pub coproduct: FiberedCoproduct,
    pub complex: Arc<CrossedComplex>,
    pub iota: ComplexMorphism,
    pub rho: ComplexMorphism,
}

/// Replaces the top two degrees of the source by `[G_n -> (H_{n-1} x G_n)/N]`
/// and glues everything below unchanged. The result is validated, as are the
/// two canonical morphisms and the factorization through them.
pub fn n_pushout_below(f: &ComplexMorphism, caps: &Caps) -> Result<NPushout, PushoutError> {
    let source = f.source().clone();
    let target = f.target().clone();
    let n = source.len();
    if n != target.len() {
        return Err(PushoutError::LengthMismatch {
            left: n,
            right: target.len(),
        });
    }
    if n < 2 {
        return Err(PushoutError::TooShort { len: n });
    }

    // In the degenerate case the glued group becomes the new base, so the
    // ambient product must be twisted by the degree-1 action through f1;
    // higher up the plain product works and the relations sit in its center.
    let (twist, mode) = if n == 2 {
        let through_base = target.action(2).restrict_actor(f.map(1))?;
        (Some(through_base), CentralityMode::Normal)
    } else {
        (None, CentralityMode::Central)
    };
    let coproduct = fibered_coproduct(source.boundary(n), f.map(n), twist, mode, caps)?;
    let middle = coproduct.group.clone();
    let top = target.group(n).clone();

    let mut groups: Vec<Arc<FinGroup>> = source.groups()[..n - 2].to_vec();
    groups.push(middle.clone());
    groups.push(top.clone());

    let mut boundaries: Vec<GroupHom> =
        (2..=n - 2).map(|k| source.boundary(k).clone()).collect();
    if n >= 3 {
        let lower = source.group(n - 2).clone();
        let db = source.boundary(n - 1);
        let table = descend_table(&coproduct, |k, _| db.apply(k), "the lowered boundary")?;
        boundaries.push(GroupHom::new(middle.clone(), lower, &table)?);
    }
    boundaries.push(coproduct.leg_right.clone());

    let mut actions: Vec<RightAction> = Vec::with_capacity(n - 1);
    if n == 2 {
        // the new base acts on the top by conjugation through representatives
        let ambient = &coproduct.ambient;
        let mn = middle.order();
        let neutral_left = ambient.left.identity();
        let mut table = vec![usize::MAX; top.order() * mn];
        for x in ambient.group.elements() {
            let class = coproduct.project.apply(x);
            for m in top.elements() {
                let conj = ambient.group.conj(ambient.encode(neutral_left, m), x);
                let (stray, value) = ambient.decode(conj);
                debug_assert_eq!(stray, neutral_left);
                let slot = &mut table[m * mn + class];
                if *slot == usize::MAX {
                    *slot = value;
                } else if *slot != value {
                    return Err(PushoutError::IllDefinedOnCosets {
                        context: "the induced action",
                        class,
                    });
                }
            }
        }
        actions.push(RightAction::from_fn(middle.clone(), top.clone(), |m, a| {
            table[m * mn + a]
        }));
    } else {
        for k in 2..=n - 2 {
            actions.push(source.action(k).clone());
        }
        let base = source.group(1).clone();
        let ambient = &coproduct.ambient;
        let on_ambient = RightAction::from_fn(base, ambient.group.clone(), |m, a| {
            let (k, g) = ambient.decode(m);
            ambient.encode(source.act(n - 1, k, a), target.act(n, g, f.apply(1, a)))
        });
        actions.push(on_ambient.quotient_module(&coproduct.project).map_err(|err| {
            PushoutError::ConstructionInvalid {
                what: "the induced action",
                detail: err.to_string(),
            }
        })?);
        actions.push(target.action(n).restrict_actor(f.map(1))?);
    }

    let complex = Arc::new(CrossedComplex::assemble(groups, boundaries, actions)?);
    let complex_violations = complex.validate();
    if let Some(first) = complex_violations.first() {
        return Err(PushoutError::ConstructionInvalid {
            what: "the glued complex",
            detail: first.to_string(),
        });
    }

    let mut iota_tables: Vec<Vec<usize>> = Vec::with_capacity(n);
    for k in 1..=n - 2 {
        iota_tables.push(source.group(k).elements().collect());
    }
    iota_tables.push(
        source
            .group(n - 1)
            .elements()
            .map(|k| coproduct.leg_left.apply(k))
            .collect(),
    );
    iota_tables.push(f.map(n).table_usize());
    let iota = ComplexMorphism::from_tables(source.clone(), complex.clone(), &iota_tables)?;

    let mut rho_tables: Vec<Vec<usize>> = Vec::with_capacity(n);
    for k in 1..=n - 2 {
        rho_tables.push(f.map(k).table_usize());
    }
    let lower = target.group(n - 1).clone();
    let dn = target.boundary(n);
    rho_tables.push(descend_table(
        &coproduct,
        |k, g| lower.mul(f.apply(n - 1, k), dn.apply(g)),
        "the projection to the target",
    )?);
    rho_tables.push(top.elements().collect());
    let rho = ComplexMorphism::from_tables(complex.clone(), target.clone(), &rho_tables)?;

    for (what, morphism) in [
        ("the canonical inclusion", &iota),
        ("the projection to the target", &rho),
    ] {
        let violations = morphism.validate();
        if let Some(first) = violations.first() {
            return Err(PushoutError::ConstructionInvalid {
                what,
                detail: first.to_string(),
            });
        }
    }

    let composite = rho.compose_after(&iota)?;
    for k in 1..=n {
        for x in source.group(k).elements() {
            if composite.apply(k, x) != f.apply(k, x) {
                return Err(PushoutError::FactorizationFailed {
                    degree: k,
                    element: x,
                });
            }
        }
    }

    Ok(NPushout {
        f: f.clone(),
        coproduct,
        complex,
        iota,
        rho,
    })
}

/// What the canonical inclusion does to homotopy groups, plus the induced map
/// between the cotruncations one below the top.
#[derive(Debug, Clone)]
pub struct PushoutReport {
    pub iso_below_top: Vec<(usize, bool)>,
    pub surjective_at_top: bool,
    pub cotruncation_iso: bool,
    pub cotruncation_identity_below: bool,
}

impl PushoutReport {
    pub fn all_hold(&self) -> bool {
        self.iso_below_top.iter().all(|&(_, ok)| ok)
            && self.surjective_at_top
            && self.cotruncation_iso
            && self.cotruncation_identity_below
    }
}

pub fn compare_pushout_homotopy_groups(np: &NPushout) -> Result<PushoutReport, PushoutError> {
    let n = np.f.source().len();
    let mut iso_below_top = Vec::with_capacity(n - 1);
    for k in 1..n {
        let (_, _, hom) = induced_map(&np.iota, k)?;
        iso_below_top.push((k, hom.is_bijective()));
    }
    let (_, _, at_top) = induced_map(&np.iota, n)?;
    let surjective_at_top = at_top.is_surjective();

    let cut = cotruncate_morphism(&np.iota, n - 1)?;
    let cotruncation_iso = cut.is_valid() && cut.map(n - 1).is_bijective();
    let cotruncation_identity_below = (1..n - 1).all(|k| cut.map(k).is_identity());
    Ok(PushoutReport {
        iso_below_top,
        surjective_at_top,
        cotruncation_iso,
        cotruncation_identity_below,
    })
}

/// Checks recorded for a diagonal pushout: the inclusion is a weak
/// equivalence, projecting back to the left target is a trivial fibration,
/// and the new degrees fit into the expected exact sequences.
#[derive(Debug, Clone)]
pub struct DiagonalReport {
    pub inclusion_weak_equivalence: bool,
    pub projection_trivial_fibration: bool,
    pub top_injective: bool,
    pub kernel_matches_image: bool,
    /// Degree by degree: the boundary paired with the projection hits every
    /// compatible pair. The last entry is the glued degree.
    pub onto_pullback: Vec<(usize, bool)>,
}

impl DiagonalReport {
    pub fn all_hold(&self) -> bool {
        self.inclusion_weak_equivalence
            && self.projection_trivial_fibration
            && self.top_injective
            && self.kernel_matches_image
            && self.onto_pullback.iter().all(|&(_, ok)| ok)
    }
}

#[derive(Debug, Clone)]
pub struct DiagonalPushout {
    pub p: ComplexMorphism,
    pub f: ComplexMorphism,
    pub product: ProductComplex,
    pub diagonal: ComplexMorphism,
    pub pushout: NPushout,
    pub report: DiagonalReport,
}

/// Pairs `p` and `f` into the product and takes the pushout below the pair.
/// Requires `p` to be a trivial fibration.
pub fn diagonal_pushout(
    p: &ComplexMorphism,
    f: &ComplexMorphism,
    caps: &Caps,
) -> Result<DiagonalPushout, PushoutError> {
    if p.source().as_ref() != f.source().as_ref() {
        return Err(PushoutError::SharedSourceMismatch);
    }
    if p.source().len() != p.target().len() || p.source().len() != f.target().len() {
        return Err(PushoutError::LengthMismatch {
            left: p.target().len(),
            right: f.target().len(),
        });
    }
    if !is_trivial_fibration(p, caps)? {
        return Err(PushoutError::PreconditionFailed);
    }
    let product = product_complex(p.target(), f.target(), caps)?;
    let diagonal = pair_into_product(p, f, &product)?;
    let pushout = n_pushout_below(&diagonal, caps)?;
    let report = exactness_report(&pushout, p, &product, caps)?;
    Ok(DiagonalPushout {
        p: p.clone(),
        f: f.clone(),
        product,
        diagonal,
        pushout,
        report,
    })
}

fn exactness_report(
    np: &NPushout,
    p: &ComplexMorphism,
    product: &ProductComplex,
    caps: &Caps,
) -> Result<DiagonalReport, PushoutError> {
    let n = np.f.source().len();
    let q = np.f.source().clone();
    let h = p.target().clone();

    let inclusion_weak_equivalence = is_weak_equivalence(&np.iota)?;
    let to_h = product.proj_left.compose_after(&np.rho)?;
    let projection_trivial_fibration = is_trivial_fibration(&to_h, caps)?;

    // the top piece a |-> [1, (1, a)] of the sequence, and its image
    let top_boundary = np.complex.boundary(n);
    let gn = product.right.group_at(n);
    let left_identity = product.left.group_at(n).identity();
    let middle_order = np.complex.group(n - 1).order();
    let mut seen = vec![false; middle_order];
    let mut image = vec![false; middle_order];
    let mut top_injective = true;
    for a in gn.elements() {
        let value = top_boundary.apply(product.encode(n, left_identity, a));
        if seen[value] {
            top_injective = false;
        }
        seen[value] = true;
        image[value] = true;
    }

    let mut onto_pullback = Vec::with_capacity(n - 1);
    let mut kernel_matches_image = true;
    for k in 1..n {
        let domain = np.complex.group_at(k);
        let first = np.complex.boundary_at(k);
        let below_kernel = q.boundary_at(k - 1).kernel_elements();
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &qe in &below_kernel {
            let glue = if k == 1 { 0 } else { p.apply(k - 1, qe) };
            for he in h.group_at(k).elements() {
                if h.boundary_at(k).apply(he) == glue {
                    pairs.insert((qe, he));
                }
            }
        }
        let mut hit: BTreeSet<(usize, usize)> = BTreeSet::new();
        for x in domain.elements() {
            hit.insert((first.apply(x), to_h.apply(k, x)));
        }
        onto_pullback.push((k, hit == pairs));
        if k == n - 1 {
            let neutral = (
                np.complex.group_at(k - 1).identity(),
                h.group_at(k).identity(),
            );
            let kernel: BTreeSet<usize> = domain
                .elements()
                .filter(|&x| (first.apply(x), to_h.apply(k, x)) == neutral)
                .collect();
            let image_set: BTreeSet<usize> = image
                .iter()
                .enumerate()
                .filter_map(|(i, &inside)| inside.then_some(i))
                .collect();
            kernel_matches_image = kernel == image_set;
        }
    }

    Ok(DiagonalReport {
        inclusion_weak_equivalence,
        projection_trivial_fibration,
        top_injective,
        kernel_matches_image,
        onto_pullback,
    })
}

/// Facts forced by the degree-two axioms: the kernel of the degree-2 boundary
/// is central there, and so is the image of the degree-3 boundary if present.
pub fn degree_two_centrality(complex: &CrossedComplex) -> bool {
    if complex.len() < 2 {
        return true;
    }
    let g2 = complex.group(2);
    let mut central = vec![false; g2.order()];
    for z in g2.center() {
        central[z] = true;
    }
    let kernel_ok = complex
        .boundary(2)
        .kernel_elements()
        .into_iter()
        .all(|x| central[x]);
    let image_ok = complex.len() < 3
        || complex
            .boundary(3)
            .image_elements()
            .into_iter()
            .all(|x| central[x]);
    kernel_ok && image_ok
}
