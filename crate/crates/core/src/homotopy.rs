//! Homotopies between morphisms of crossed complexes.
//!
//! A pointed homotopy from `f` to `g` (both `C -> D`) is a family
//! `phi_k : C_k -> D_{k+1}` where `phi_1` is a derivation over `g_1` and the
//! higher `phi_k` are equivariant homomorphisms, such that
//!
//! ```text
//! f_1(c) = g_1(c) * d(phi_1(c))
//! f_k(c) = g_k(c) * d(phi_k(c)) * phi_{k-1}(boundary(c))     (k >= 2)
//! ```
//!
//! The struct stores the base `g`, the family, and the derived `f`; the pair
//! `(derived, base)` is the arrow the homotopy witnesses. A free homotopy
//! additionally carries a degree-1 conjugator applied to the whole formula.

use std::sync::Arc;

use thiserror::Error;

use crate::caps::Caps;
use crate::complex::{ComplexError, ComplexMorphism, CrossedComplex};
use crate::group::GroupError;
use crate::hom::GroupHom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("morphisms do not share endpoints")]
    EndpointMismatch,
    #[error("expected {expected} homotopy components, got {got}")]
    ComponentCountMismatch { got: usize, expected: usize },
    #[error("component at degree {degree} does not map C_{degree} into D_{next}", next = degree + 1)]
    ComponentEndpointMismatch { degree: usize },
    #[error("the derived morphism differs from the stated one at degree {degree}, element {element}")]
    DerivedMismatch { degree: usize, element: usize },
    #[error("homotopies do not compose: the first base differs from the second derived morphism")]
    ComposeMismatch,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomotopyRule {
    /// `phi_1(xy) != phi_1(x)^(g_1 y) * phi_1(y)`.
    Derivation,
    /// `phi_k` fails to be multiplicative for some `k >= 2`.
    Hom,
    /// `phi_k(c^x) != phi_k(c)^(g_1 x)` for some `k >= 2`.
    Equivariance,
    /// The derived family is not a morphism of complexes.
    Derived,
}

impl std::fmt::Display for HomotopyRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            HomotopyRule::Derivation => "degree-1 derivation law",
            HomotopyRule::Hom => "component multiplicativity",
            HomotopyRule::Equivariance => "component equivariance",
            HomotopyRule::Derived => "derived morphism validity",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyViolation {
    pub rule: HomotopyRule,
    pub degree: usize,
    pub witness: Vec<usize>,
}

impl std::fmt::Display for HomotopyViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] degree {} (witness {:?})", self.rule, self.degree, self.witness)
    }
}

fn check_components(
    source: &CrossedComplex,
    target: &CrossedComplex,
    phi: &[GroupHom],
) -> Result<(), HomotopyError> {
    if phi.len() != source.len() {
        return Err(HomotopyError::ComponentCountMismatch {
            got: phi.len(),
            expected: source.len(),
        });
    }
    for (i, component) in phi.iter().enumerate() {
        let degree = i + 1;
        if component.source().as_ref() != source.group(degree).as_ref()
            || component.target().as_ref() != target.group_at(degree + 1).as_ref()
        {
            return Err(HomotopyError::ComponentEndpointMismatch { degree });
        }
    }
    Ok(())
}

/// Evaluates the homotopy formulas on a base morphism and a component family.
pub fn derive_morphism(
    base: &ComplexMorphism,
    phi: &[GroupHom],
) -> Result<ComplexMorphism, HomotopyError> {
    let source = base.source().clone();
    let target = base.target().clone();
    check_components(&source, &target, phi)?;
    let mut tables = Vec::with_capacity(source.len());
    for k in 1..=source.len() {
        let dk = target.group_at(k);
        let delta = target.boundary_at(k + 1);
        let table: Vec<usize> = source
            .group(k)
            .elements()
            .map(|c| {
                let mut value = dk.mul(base.apply(k, c), delta.apply(phi[k - 1].apply(c)));
                if k >= 2 {
                    let from_below = phi[k - 2].apply(source.boundary(k).apply(c));
                    value = dk.mul(value, from_below);
                }
                value
            })
            .collect();
        tables.push(table);
    }
    Ok(ComplexMorphism::from_tables(source, target, &tables)?)
}

/// A pointed homotopy, stored as the arrow `derived -> base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedHomotopy {
    base: ComplexMorphism,
    phi: Vec<GroupHom>,
    derived: ComplexMorphism,
}

impl PointedHomotopy {
    /// Builds the homotopy out of a base morphism and components, computing
    /// the derived morphism from the formulas.
    pub fn new(base: ComplexMorphism, phi: Vec<GroupHom>) -> Result<PointedHomotopy, HomotopyError> {
        let derived = derive_morphism(&base, &phi)?;
        Ok(PointedHomotopy { base, phi, derived })
    }

    /// Like [`PointedHomotopy::new`], but demands the derived morphism equal
    /// a stated one.
    pub fn between(
        derived: &ComplexMorphism,
        base: ComplexMorphism,
        phi: Vec<GroupHom>,
    ) -> Result<PointedHomotopy, HomotopyError> {
        if derived.source().as_ref() != base.source().as_ref()
            || derived.target().as_ref() != base.target().as_ref()
        {
            return Err(HomotopyError::EndpointMismatch);
        }
        let built = PointedHomotopy::new(base, phi)?;
        for k in 1..=built.derived.source().len() {
            for c in built.derived.source().group(k).elements() {
                if built.derived.apply(k, c) != derived.apply(k, c) {
                    return Err(HomotopyError::DerivedMismatch {
                        degree: k,
                        element: c,
                    });
                }
            }
        }
        Ok(built)
    }

    /// The constant homotopy at a morphism.
    pub fn constant(at: ComplexMorphism) -> PointedHomotopy {
        let phi = (1..=at.source().len())
            .map(|k| GroupHom::zero(at.source().group(k), &at.target().group_at(k + 1)))
            .collect();
        let derived = at.clone();
        PointedHomotopy {
            base: at,
            phi,
            derived,
        }
    }

    /// The morphism the homotopy starts from.
    pub fn derived(&self) -> &ComplexMorphism {
        &self.derived
    }

    /// The morphism the homotopy lands on.
    pub fn base(&self) -> &ComplexMorphism {
        &self.base
    }

    pub fn component(&self, degree: usize) -> &GroupHom {
        &self.phi[degree - 1]
    }

    pub fn components(&self) -> &[GroupHom] {
        &self.phi
    }

    /// Checks the derivation and equivariance laws and the derived morphism.
    pub fn validate(&self) -> Vec<HomotopyViolation> {
        let mut out = Vec::new();
        let source = self.base.source().clone();
        let target = self.base.target().clone();
        let n = source.len();

        // degree 1: derivation over the base
        let c1 = source.group(1);
        let d2 = target.group_at(2);
        for x in c1.elements() {
            for y in c1.elements() {
                let left = self.phi[0].apply(c1.mul(x, y));
                let right = d2.mul(
                    target.act(2, self.phi[0].apply(x), self.base.apply(1, y)),
                    self.phi[0].apply(y),
                );
                if left != right {
                    out.push(HomotopyViolation {
                        rule: HomotopyRule::Derivation,
                        degree: 1,
                        witness: vec![x, y],
                    });
                }
            }
        }
        for k in 2..=n {
            let ck = source.group(k);
            let dk1 = target.group_at(k + 1);
            for x in ck.elements() {
                for y in ck.elements() {
                    let left = self.phi[k - 1].apply(ck.mul(x, y));
                    let right = dk1.mul(self.phi[k - 1].apply(x), self.phi[k - 1].apply(y));
                    if left != right {
                        out.push(HomotopyViolation {
                            rule: HomotopyRule::Hom,
                            degree: k,
                            witness: vec![x, y],
                        });
                    }
                }
            }
            for c in ck.elements() {
                for a in c1.elements() {
                    let left = self.phi[k - 1].apply(source.act(k, c, a));
                    let right = target.act(k + 1, self.phi[k - 1].apply(c), self.base.apply(1, a));
                    if left != right {
                        out.push(HomotopyViolation {
                            rule: HomotopyRule::Equivariance,
                            degree: k,
                            witness: vec![c, a],
                        });
                    }
                }
            }
        }
        for violation in self.derived.validate() {
            out.push(HomotopyViolation {
                rule: HomotopyRule::Derived,
                degree: violation.degree,
                witness: violation.witness,
            });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Composes two homotopy arrows; needs `second.derived == first.base`.
    /// The composite runs from `first.derived` to `second.base` and its
    /// components are the pointwise products.
    pub fn compose(
        second: &PointedHomotopy,
        first: &PointedHomotopy,
    ) -> Result<PointedHomotopy, HomotopyError> {
        if second.derived != first.base {
            return Err(HomotopyError::ComposeMismatch);
        }
        let target = first.base.target().clone();
        let mut phi = Vec::with_capacity(first.phi.len());
        for k in 1..=first.phi.len() {
            let dk1 = target.group_at(k + 1);
            let table: Vec<usize> = first
                .base
                .source()
                .group(k)
                .elements()
                .map(|c| {
                    dk1.mul(
                        second.phi[k - 1].apply(c),
                        first.phi[k - 1].apply(c),
                    )
                })
                .collect();
            phi.push(GroupHom::new_unchecked(
                first.base.source().group(k).clone(),
                dk1,
                &table,
            )?);
        }
        PointedHomotopy::between(&first.derived, second.base.clone(), phi)
    }

    /// The reverse arrow, with pointwise inverted components.
    pub fn invert(&self) -> Result<PointedHomotopy, HomotopyError> {
        let source = self.base.source().clone();
        let target = self.base.target().clone();
        let mut phi = Vec::with_capacity(self.phi.len());
        for k in 1..=self.phi.len() {
            let dk1 = target.group_at(k + 1);
            let table: Vec<usize> = source
                .group(k)
                .elements()
                .map(|c| dk1.inv(self.phi[k - 1].apply(c)))
                .collect();
            phi.push(GroupHom::new_unchecked(
                source.group(k).clone(),
                dk1,
                &table,
            )?);
        }
        PointedHomotopy::between(&self.base, self.derived.clone(), phi)
    }
}

/// The morphism `c -> f(c)^x` for a fixed degree-1 conjugator `x`.
pub fn conjugate_morphism(
    f: &ComplexMorphism,
    x: usize,
) -> Result<ComplexMorphism, ComplexError> {
    let source = f.source().clone();
    let target = f.target().clone();
    let mut tables = Vec::with_capacity(source.len());
    for k in 1..=source.len() {
        let table: Vec<usize> = source
            .group(k)
            .elements()
            .map(|c| target.act(k, f.apply(k, c), x))
            .collect();
        tables.push(table);
    }
    ComplexMorphism::from_tables(source, target, &tables)
}

/// A free homotopy: a pointed family together with a degree-1 conjugator.
/// The derived morphism is the pointed formula conjugated by the inverse of
/// the conjugator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeHomotopy {
    base: ComplexMorphism,
    conjugator: usize,
    phi: Vec<GroupHom>,
    derived: ComplexMorphism,
}

impl FreeHomotopy {
    pub fn new(
        base: ComplexMorphism,
        conjugator: usize,
        phi: Vec<GroupHom>,
    ) -> Result<FreeHomotopy, HomotopyError> {
        let pointed = derive_morphism(&base, &phi)?;
        let inverse = base.target().group(1).inv(conjugator);
        let derived = conjugate_morphism(&pointed, inverse)?;
        Ok(FreeHomotopy {
            base,
            conjugator,
            phi,
            derived,
        })
    }

    pub fn base(&self) -> &ComplexMorphism {
        &self.base
    }

    pub fn derived(&self) -> &ComplexMorphism {
        &self.derived
    }

    pub fn conjugator(&self) -> usize {
        self.conjugator
    }

    pub fn components(&self) -> &[GroupHom] {
        &self.phi
    }

    /// Same component laws as the pointed case, plus validity of the
    /// conjugated derived morphism.
    pub fn validate(&self) -> Vec<HomotopyViolation> {
        let mut out = match PointedHomotopy::new(self.base.clone(), self.phi.clone()) {
            Ok(pointed) => pointed
                .validate()
                .into_iter()
                .filter(|v| v.rule != HomotopyRule::Derived)
                .collect(),
            Err(_) => Vec::new(),
        };
        for violation in self.derived.validate() {
            out.push(HomotopyViolation {
                rule: HomotopyRule::Derived,
                degree: violation.degree,
                witness: violation.witness,
            });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

fn ensure_parallel(
    f: &ComplexMorphism,
    g: &ComplexMorphism,
) -> Result<(Arc<CrossedComplex>, Arc<CrossedComplex>), HomotopyError> {
    if f.source().as_ref() != g.source().as_ref() || f.target().as_ref() != g.target().as_ref() {
        return Err(HomotopyError::EndpointMismatch);
    }
    Ok((f.source().clone(), g.target().clone()))
}

/// The number of component families the exhaustive search ranges over,
/// before pruning: the product over degrees and non-identity elements of
/// the size of the receiving group.
pub fn homotopy_search_space(f: &ComplexMorphism) -> u128 {
    let source = f.source();
    let target = f.target();
    let mut total: u128 = 1;
    for k in 1..=source.len() {
        let choices = target.group_at(k + 1).order() as u128;
        for _ in 1..source.group(k).order() {
            total = total.saturating_mul(choices);
        }
    }
    total
}

/// Exhaustive search for a pointed homotopy from `f` to `g`.
///
/// Candidates for each component value are confined to a fiber of the target
/// boundary, degrees are filled in ascending order, and partial families are
/// rejected as soon as a derivation, multiplicativity, or equivariance law
/// fails on assigned elements. `Ok(None)` is a proof that no homotopy
/// exists; if the unpruned space exceeds the search cap the function refuses
/// up front instead.
pub fn search_homotopy(
    f: &ComplexMorphism,
    g: &ComplexMorphism,
    caps: &Caps,
) -> Result<Option<PointedHomotopy>, HomotopyError> {
    let (source, target) = ensure_parallel(f, g)?;
    let space = homotopy_search_space(f);
    if space > caps.max_search as u128 {
        return Err(HomotopyError::Group(GroupError::SearchCapExceeded {
            required: space,
            cap: caps.max_search,
        }));
    }

    // per-degree fibers of the target boundary
    let n = source.len();
    let mut fibers: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for k in 1..=n {
        let dk = target.group_at(k);
        let delta = target.boundary_at(k + 1);
        let mut fiber = vec![Vec::new(); dk.order()];
        for v in target.group_at(k + 1).elements() {
            fiber[delta.apply(v)].push(v);
        }
        fibers.push(fiber);
    }

    let mut assignment: Vec<Vec<usize>> = (1..=n)
        .map(|k| vec![usize::MAX; source.group(k).order()])
        .collect();
    if fill_degree(f, g, &source, &target, &fibers, &mut assignment, 1, 0) {
        let mut phi = Vec::with_capacity(n);
        for k in 1..=n {
            phi.push(GroupHom::new_unchecked(
                source.group(k).clone(),
                target.group_at(k + 1),
                &assignment[k - 1],
            )?);
        }
        let found = PointedHomotopy::between(f, g.clone(), phi)?;
        Ok(Some(found))
    } else {
        Ok(None)
    }
}

/// Required boundary value for `phi_k(c)`, given the finished lower degree.
fn needed_value(
    f: &ComplexMorphism,
    g: &ComplexMorphism,
    source: &CrossedComplex,
    target: &CrossedComplex,
    assignment: &[Vec<usize>],
    k: usize,
    c: usize,
) -> usize {
    let dk = target.group_at(k);
    let mut value = dk.mul(dk.inv(g.apply(k, c)), f.apply(k, c));
    if k >= 2 {
        let below = assignment[k - 2][source.boundary(k).apply(c)];
        value = dk.mul(value, dk.inv(below));
    }
    value
}

/// Laws touching element `c` among already-assigned elements of degree `k`.
fn partial_laws_hold(
    g: &ComplexMorphism,
    source: &CrossedComplex,
    target: &CrossedComplex,
    row: &[usize],
    k: usize,
    c: usize,
) -> bool {
    let ck = source.group(k);
    let dk1 = target.group_at(k + 1);
    if k == 1 {
        for x in ck.elements() {
            for y in ck.elements() {
                if x != c && y != c && ck.mul(x, y) != c {
                    continue;
                }
                let (px, py, pxy) = (row[x], row[y], row[ck.mul(x, y)]);
                if px == usize::MAX || py == usize::MAX || pxy == usize::MAX {
                    continue;
                }
                if pxy != dk1.mul(target.act(2, px, g.apply(1, y)), py) {
                    return false;
                }
            }
        }
    } else {
        for x in ck.elements() {
            for y in ck.elements() {
                if x != c && y != c && ck.mul(x, y) != c {
                    continue;
                }
                let (px, py, pxy) = (row[x], row[y], row[ck.mul(x, y)]);
                if px == usize::MAX || py == usize::MAX || pxy == usize::MAX {
                    continue;
                }
                if pxy != dk1.mul(px, py) {
                    return false;
                }
            }
        }
        for x in ck.elements() {
            for a in source.group(1).elements() {
                let moved = source.act(k, x, a);
                if x != c && moved != c {
                    continue;
                }
                let (px, pmoved) = (row[x], row[moved]);
                if px == usize::MAX || pmoved == usize::MAX {
                    continue;
                }
                if pmoved != target.act(k + 1, px, g.apply(1, a)) {
                    return false;
                }
            }
        }
    }
    true
}

fn fill_degree(
    f: &ComplexMorphism,
    g: &ComplexMorphism,
    source: &CrossedComplex,
    target: &CrossedComplex,
    fibers: &[Vec<Vec<usize>>],
    assignment: &mut Vec<Vec<usize>>,
    k: usize,
    next_element: usize,
) -> bool {
    let n = source.len();
    if k > n {
        return true;
    }
    let ck = source.group(k);
    if next_element == ck.order() {
        return fill_degree(f, g, source, target, fibers, assignment, k + 1, 0);
    }
    let c = next_element;
    let needed = needed_value(f, g, source, target, assignment, k, c);
    let candidates: Vec<usize> = fibers[k - 1][needed].clone();
    for candidate in candidates {
        assignment[k - 1][c] = candidate;
        if partial_laws_hold(g, source, target, &assignment[k - 1], k, c)
            && fill_degree(f, g, source, target, fibers, assignment, k, c + 1)
        {
            return true;
        }
        assignment[k - 1][c] = usize::MAX;
    }
    false
}

/// Exhaustive search for a free homotopy: tries every degree-1 conjugator in
/// ascending order and runs the pointed search against the conjugated start.
pub fn search_free_homotopy(
    f: &ComplexMorphism,
    g: &ComplexMorphism,
    caps: &Caps,
) -> Result<Option<FreeHomotopy>, HomotopyError> {
    let (_, target) = ensure_parallel(f, g)?;
    let conjugators = target.group(1).order() as u128;
    let space = homotopy_search_space(f).saturating_mul(conjugators);
    if space > caps.max_search as u128 {
        return Err(HomotopyError::Group(GroupError::SearchCapExceeded {
            required: space,
            cap: caps.max_search,
        }));
    }
    for x in target.group(1).elements() {
        let moved = conjugate_morphism(f, x)?;
        if let Some(pointed) = search_homotopy(&moved, g, caps)? {
            let free = FreeHomotopy::new(g.clone(), x, pointed.phi.clone())?;
            debug_assert_eq!(free.derived(), f);
            return Ok(Some(free));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{base_complex, cyclic, inner_module, symmetric_3, zmod_module};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn worked_example_on_zmod() {
        // base g = id on [Z/4 -> Z/2], phi_1(1) = 2 in Z/4
        let m = zmod_module();
        let g = ComplexMorphism::identity(&m);
        let phi1 = GroupHom::new_unchecked(m.group(1).clone(), m.group_at(2), &[0, 2]).unwrap();
        let phi2 = GroupHom::zero(m.group(2), &m.group_at(3));
        let h = PointedHomotopy::new(g.clone(), vec![phi1, phi2]).unwrap();
        assert!(h.is_valid());
        assert_eq!(h.derived().map(1).table_usize(), vec![0, 1]);
        assert_eq!(h.derived().map(2).table_usize(), vec![0, 3, 2, 1]);

        // phi_1(1) = 1 derives the non-morphism [0, 2, 2, 0]
        let bad1 = GroupHom::new_unchecked(m.group(1).clone(), m.group_at(2), &[0, 1]).unwrap();
        let bad2 = GroupHom::zero(m.group(2), &m.group_at(3));
        let bad = PointedHomotopy::new(g, vec![bad1, bad2]).unwrap();
        assert_eq!(bad.derived().map(2).table_usize(), vec![0, 2, 2, 0]);
        let report = bad.validate();
        assert!(report.iter().any(|v| v.rule == HomotopyRule::Derivation));
        assert!(report.iter().any(|v| v.rule == HomotopyRule::Derived));
    }

    #[test]
    fn search_finds_least_witness() {
        let m = zmod_module();
        let g = ComplexMorphism::identity(&m);
        let negation =
            ComplexMorphism::from_tables(m.clone(), m.clone(), &[vec![0, 1], vec![0, 3, 2, 1]])
                .unwrap();
        assert!(negation.is_valid());
        let found = search_homotopy(&negation, &g, &caps()).unwrap().unwrap();
        assert!(found.is_valid());
        assert_eq!(found.component(1).table_usize(), vec![0, 2]);
        assert_eq!(found.derived(), &negation);
        assert_eq!(found.base(), &g);
    }

    #[test]
    fn search_proves_absence() {
        // (0, 2c) kills pi_2, the identity does not: never homotopic
        let m = zmod_module();
        let g = ComplexMorphism::identity(&m);
        let collapse =
            ComplexMorphism::from_tables(m.clone(), m.clone(), &[vec![0, 0], vec![0, 2, 0, 2]])
                .unwrap();
        assert!(collapse.is_valid());
        assert!(search_homotopy(&collapse, &g, &caps()).unwrap().is_none());

        // in a length-1 complex nothing moves: id and zero stay separate
        let base = base_complex(&cyclic(2));
        let id = ComplexMorphism::identity(&base);
        let zero = ComplexMorphism::from_tables(base.clone(), base.clone(), &[vec![0, 0]]).unwrap();
        assert!(search_homotopy(&zero, &id, &caps()).unwrap().is_none());
    }

    #[test]
    fn search_cap_refuses_predictably() {
        let m = zmod_module();
        let g = ComplexMorphism::identity(&m);
        let tight = Caps {
            max_search: 2,
            ..Caps::default()
        };
        let err = search_homotopy(&g, &g, &tight).unwrap_err();
        assert!(matches!(
            err,
            HomotopyError::Group(GroupError::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn compose_and_invert() {
        let m = zmod_module();
        let g = ComplexMorphism::identity(&m);
        let negation =
            ComplexMorphism::from_tables(m.clone(), m.clone(), &[vec![0, 1], vec![0, 3, 2, 1]])
                .unwrap();
        let h = search_homotopy(&negation, &g, &caps()).unwrap().unwrap();

        let back = h.invert().unwrap();
        assert!(back.is_valid());
        assert_eq!(back.derived(), &g);
        assert_eq!(back.base(), &negation);

        let round = PointedHomotopy::compose(&back, &h).unwrap();
        assert!(round.is_valid());
        assert_eq!(round.derived(), &negation);
        assert_eq!(round.base(), &negation);

        let constant = PointedHomotopy::constant(g.clone());
        assert!(constant.is_valid());
        let same = PointedHomotopy::compose(&constant, &h).unwrap();
        assert_eq!(same.derived(), &negation);
        assert_eq!(same.base(), &g);
    }

    #[test]
    fn inner_conjugation_is_pointed_homotopic_to_id() {
        // on [G -id-> G] conjugation by any t deforms to the identity
        let m = inner_module(&symmetric_3());
        let id = ComplexMorphism::identity(&m);
        for t in m.group(1).elements() {
            let conj = conjugate_morphism(&id, t).unwrap();
            assert!(conj.is_valid());
            let h = search_homotopy(&conj, &id, &caps()).unwrap();
            assert!(h.is_some(), "conjugation by {t} should be null-homotopic");
            assert!(h.unwrap().is_valid());
        }
    }

    #[test]
    fn free_homotopy_absorbs_conjugation() {
        // on the base complex [S3] only free homotopies can relate id and
        // conjugation, and they do
        let b = base_complex(&symmetric_3());
        let id = ComplexMorphism::identity(&b);
        let conj = conjugate_morphism(&id, 1).unwrap();
        assert!(search_homotopy(&conj, &id, &caps()).unwrap().is_none());
        let free = search_free_homotopy(&conj, &id, &caps()).unwrap();
        let free = free.expect("free homotopy should exist");
        assert!(free.is_valid());
        assert_eq!(free.derived(), &conj);

        // and a non-inner discrepancy stays separated: S3 -> S3 id vs zero
        let zero = ComplexMorphism::from_tables(b.clone(), b.clone(), &[vec![0; 6]]).unwrap();
        assert!(search_free_homotopy(&zero, &id, &caps()).unwrap().is_none());
    }

    #[test]
    fn free_homotopy_explicit_conjugator() {
        let m = inner_module(&symmetric_3());
        let id = ComplexMorphism::identity(&m);
        let t = 1;
        let conj = conjugate_morphism(&id, m.group(1).inv(t)).unwrap();
        let phi = vec![
            GroupHom::zero(m.group(1), &m.group_at(2)),
            GroupHom::zero(m.group(2), &m.group_at(3)),
        ];
        let free = FreeHomotopy::new(id.clone(), t, phi).unwrap();
        assert!(free.is_valid());
        assert_eq!(free.derived(), &conj);
        assert_eq!(free.conjugator(), t);
    }
}
