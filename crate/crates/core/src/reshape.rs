//! Length-changing operations on complexes: padding, truncation, and the
//! two constructions adjoint to them.

use std::sync::Arc;

use crate::action::RightAction;
use crate::complex::{ComplexError, ComplexMorphism, CrossedComplex};
use crate::group::{quotient, subgroup_of, FinGroup};
use crate::hom::GroupHom;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReshapeKind {
    Skeleton,
    Truncate,
    Coskeleton,
    Cotruncate,
}

pub fn reshape(
    complex: &Arc<CrossedComplex>,
    kind: ReshapeKind,
    m: usize,
) -> Result<Arc<CrossedComplex>, ComplexError> {
    match kind {
        ReshapeKind::Skeleton => skeleton(complex, m),
        ReshapeKind::Truncate => truncate(complex, m),
        ReshapeKind::Coskeleton => coskeleton(complex, m),
        ReshapeKind::Cotruncate => cotruncate(complex, m),
    }
}

/// Pads the complex with trivial groups up to length `m >= n`.
pub fn skeleton(
    complex: &Arc<CrossedComplex>,
    m: usize,
) -> Result<Arc<CrossedComplex>, ComplexError> {
    let n = complex.len();
    if m < n {
        return Err(ComplexError::DegreeOutOfRange { degree: m, n });
    }
    if m == n {
        return Ok(complex.clone());
    }
    let mut groups: Vec<Arc<FinGroup>> = complex.groups().to_vec();
    let mut boundaries: Vec<GroupHom> =
        (2..=n).map(|k| complex.boundary(k).clone()).collect();
    let mut actions: Vec<RightAction> =
        (2..=n).map(|k| complex.action(k).clone()).collect();
    for _ in n + 1..=m {
        let top = FinGroup::trivial();
        boundaries.push(GroupHom::zero(&top, groups.last().unwrap()));
        groups.push(top.clone());
        actions.push(RightAction::trivial(groups[0].clone(), top));
    }
    Ok(Arc::new(CrossedComplex::assemble(groups, boundaries, actions)?))
}

/// Drops every degree above `m >= 1`.
pub fn truncate(
    complex: &Arc<CrossedComplex>,
    m: usize,
) -> Result<Arc<CrossedComplex>, ComplexError> {
    let n = complex.len();
    if m < 1 {
        return Err(ComplexError::DegreeOutOfRange { degree: m, n });
    }
    if m >= n {
        return Ok(complex.clone());
    }
    let groups = complex.groups()[..m].to_vec();
    let boundaries = (2..=m).map(|k| complex.boundary(k).clone()).collect();
    let actions = (2..=m).map(|k| complex.action(k).clone()).collect();
    Ok(Arc::new(CrossedComplex::assemble(groups, boundaries, actions)?))
}

/// Adjusts the complex to length `m`, then adds the kernel of the top
/// boundary as a new top degree, included into degree `m`.
///
/// For `m = 1` the new top is the degree-1 group itself, with the identity
/// boundary and the conjugation action.
pub fn coskeleton(
    complex: &Arc<CrossedComplex>,
    m: usize,
) -> Result<Arc<CrossedComplex>, ComplexError> {
    let n = complex.len();
    if m < 1 {
        return Err(ComplexError::DegreeOutOfRange { degree: m, n });
    }
    let adjusted = if m <= n {
        truncate(complex, m)?
    } else {
        skeleton(complex, m)?
    };
    let mut groups: Vec<Arc<FinGroup>> = adjusted.groups().to_vec();
    let mut boundaries: Vec<GroupHom> =
        (2..=m).map(|k| adjusted.boundary(k).clone()).collect();
    let mut actions: Vec<RightAction> =
        (2..=m).map(|k| adjusted.action(k).clone()).collect();

    if m == 1 {
        let base = groups[0].clone();
        groups.push(base.clone());
        boundaries.push(GroupHom::identity(&base));
        actions.push(RightAction::conjugation(base));
    } else {
        let kernel_elements = adjusted.boundary(m).kernel_elements();
        let kernel = subgroup_of(adjusted.group(m), &kernel_elements)?;
        let action = adjusted.action(m).restrict_module(&kernel.inclusion)?;
        groups.push(kernel.group.clone());
        boundaries.push(kernel.inclusion);
        actions.push(action);
    }
    Ok(Arc::new(CrossedComplex::assemble(groups, boundaries, actions)?))
}

/// Cuts the complex down to length `m` by quotienting the new top degree by
/// the image of the boundary from above. The top boundary and the action
/// must descend to classes; failures report `QuotientIllDefined`.
pub fn cotruncate(
    complex: &Arc<CrossedComplex>,
    m: usize,
) -> Result<Arc<CrossedComplex>, ComplexError> {
    let n = complex.len();
    if m < 1 {
        return Err(ComplexError::DegreeOutOfRange { degree: m, n });
    }
    if m >= n {
        return Ok(complex.clone());
    }
    let image = complex.boundary(m + 1).image_elements();
    let (top, projection) = quotient(complex.group(m), &image).map_err(|err| {
        ComplexError::QuotientIllDefined {
            degree: m,
            detail: err.to_string(),
        }
    })?;

    let mut groups: Vec<Arc<FinGroup>> = complex.groups()[..m - 1].to_vec();
    groups.push(top.clone());
    let mut boundaries: Vec<GroupHom> =
        (2..m).map(|k| complex.boundary(k).clone()).collect();
    let mut actions: Vec<RightAction> =
        (2..m).map(|k| complex.action(k).clone()).collect();

    if m >= 2 {
        // descend d_m to the quotient: classes must have a single image
        let lower = complex.group(m - 1);
        let dm = complex.boundary(m);
        let mut table = vec![usize::MAX; top.order()];
        for x in complex.group(m).elements() {
            let class = projection.apply(x);
            let value = dm.apply(x);
            if table[class] == usize::MAX {
                table[class] = value;
            } else if table[class] != value {
                return Err(ComplexError::QuotientIllDefined {
                    degree: m,
                    detail: format!(
                        "boundary sends class of {x} to both {} and {value}",
                        table[class]
                    ),
                });
            }
        }
        boundaries.push(GroupHom::new(top.clone(), lower.clone(), &table).map_err(
            |err| ComplexError::QuotientIllDefined {
                degree: m,
                detail: err.to_string(),
            },
        )?);

        let action = complex
            .action(m)
            .quotient_module(&projection)
            .map_err(|err| ComplexError::QuotientIllDefined {
                degree: m,
                detail: err.to_string(),
            })?;
        actions.push(action);
    }
    Ok(Arc::new(CrossedComplex::assemble(groups, boundaries, actions)?))
}

/// Induces a morphism between the degree-`m` cotruncations of both endpoints.
///
/// Maps below the cut are reused; the top map descends to classes, which is
/// checked elementwise.
pub fn cotruncate_morphism(
    f: &ComplexMorphism,
    m: usize,
) -> Result<ComplexMorphism, ComplexError> {
    let source = cotruncate(f.source(), m)?;
    let target = cotruncate(f.target(), m)?;
    let top = source.len();
    let mut tables: Vec<Vec<usize>> = (1..top).map(|k| f.map(k).table_usize()).collect();

    let source_classes = if m < f.source().len() {
        let image = f.source().boundary(m + 1).image_elements();
        Some(quotient(f.source().group(m), &image)?.1)
    } else {
        None
    };
    let target_classes = if top == m && m < f.target().len() {
        let image = f.target().boundary(m + 1).image_elements();
        Some(quotient(f.target().group(m), &image)?.1)
    } else {
        None
    };
    let mut table = vec![usize::MAX; source.group_at(top).order()];
    for x in f.source().group(top).elements() {
        let class = source_classes.as_ref().map_or(x, |p| p.apply(x));
        let mut value = f.apply(top, x);
        if let Some(p) = target_classes.as_ref() {
            value = p.apply(value);
        }
        if table[class] == usize::MAX {
            table[class] = value;
        } else if table[class] != value {
            return Err(ComplexError::QuotientIllDefined {
                degree: top,
                detail: format!("morphism does not descend at element {x}"),
            });
        }
    }
    tables.push(table);
    ComplexMorphism::from_tables(source, target, &tables)
}

/// Restricts a morphism to the degree-`m` truncations of both endpoints.
pub fn truncate_morphism(
    f: &ComplexMorphism,
    m: usize,
) -> Result<ComplexMorphism, ComplexError> {
    let source = truncate(f.source(), m)?;
    let target = truncate(f.target(), m)?;
    let take = source.len();
    let mut maps = Vec::with_capacity(take);
    for k in 1..=take {
        let map = f.map(k);
        maps.push(map.retarget(target.group_at(k))?);
    }
    ComplexMorphism::new(source, target, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{
        base_complex, cyclic, inner_module, symmetric_3, three_stage_complex, zmod_module,
    };
    use crate::model::homotopy_group;

    #[test]
    fn skeleton_pads_and_truncate_drops() {
        let m = zmod_module();
        let padded = skeleton(&m, 4).unwrap();
        assert_eq!(padded.len(), 4);
        assert!(padded.is_valid());
        assert!(padded.group_at(3).is_trivial());

        assert!(skeleton(&m, 1).is_err());

        let cut = truncate(&padded, 2).unwrap();
        assert_eq!(cut.len(), 2);
        assert_eq!(cut.as_ref(), m.as_ref());
    }

    #[test]
    fn coskeleton_shapes() {
        let base = base_complex(&symmetric_3());
        let c = coskeleton(&base, 1).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.is_valid());
        assert_eq!(c.group_at(2).order(), 6);
        assert!(c.boundary(2).is_identity());

        // [Z/4 -> Z/2] at level 2: top becomes ker = {0,2}
        let m = zmod_module();
        let c2 = coskeleton(&m, 2).unwrap();
        assert_eq!(c2.len(), 3);
        assert!(c2.is_valid());
        assert_eq!(c2.group_at(3).order(), 2);
    }

    #[test]
    fn coskeleton_is_exact_in_the_middle() {
        // new top = ker d_m kills pi_m and everything above
        let c = three_stage_complex();
        let cosk = coskeleton(&c, 2).unwrap();
        assert!(cosk.is_valid());
        assert!(homotopy_group(&cosk, 2).unwrap().is_trivial());
        assert!(homotopy_group(&cosk, 3).unwrap().is_trivial());
        assert_eq!(
            homotopy_group(&cosk, 1).unwrap().group.order(),
            homotopy_group(&c, 1).unwrap().group.order()
        );
    }

    #[test]
    fn cotruncate_quotients_the_top() {
        let c = three_stage_complex();
        // [Z/2 -> Z/4 -> Z/2] at m=2: top Z/4 / im = Z/4 / {0,2} = Z/2
        let cut = cotruncate(&c, 2).unwrap();
        assert_eq!(cut.len(), 2);
        assert!(cut.is_valid());
        assert_eq!(cut.group_at(2).order(), 2);
        assert_eq!(
            homotopy_group(&cut, 2).unwrap().group.order(),
            homotopy_group(&c, 2).unwrap().group.order()
        );

        let deep = cotruncate(&c, 1).unwrap();
        assert_eq!(deep.len(), 1);
        // Z/2 / im(d_2 = 0) = Z/2
        assert_eq!(deep.group_at(1).order(), 2);
    }

    #[test]
    fn cotruncate_of_inner_module_collapses() {
        let m = inner_module(&symmetric_3());
        let cut = cotruncate(&m, 1).unwrap();
        assert!(cut.group_at(1).is_trivial());
    }

    #[test]
    fn reshape_operations_are_adjoint_by_counting() {
        let caps = crate::caps::Caps::default();
        let count = |a: &std::sync::Arc<crate::complex::CrossedComplex>,
                     b: &std::sync::Arc<crate::complex::CrossedComplex>| {
            crate::complex::count_morphisms(a, b, &caps).unwrap()
        };
        let a = zmod_module();
        let c = three_stage_complex();
        let d = inner_module(&cyclic(4));

        // padding a source changes nothing a truncated target would see
        for m in 2..=4 {
            assert_eq!(
                count(&skeleton(&a, m).unwrap(), &c),
                count(&a, &truncate(&c, m).unwrap()),
                "skeleton/truncate at m={m}"
            );
        }
        // truncating a source corresponds to a kernel on top of the target
        for m in 1..=3 {
            assert_eq!(
                count(&truncate(&c, m).unwrap(), &d),
                count(&c, &coskeleton(&d, m).unwrap()),
                "truncate/coskeleton at m={m}"
            );
        }
        // quotienting the top corresponds to padding the target
        for m in 2..=3 {
            assert_eq!(
                count(&cotruncate(&c, m).unwrap(), &a),
                count(&c, &skeleton(&a, m).unwrap()),
                "cotruncate/skeleton at m={m}"
            );
        }
        assert_eq!(
            count(&cotruncate(&c, 1).unwrap(), &base_complex(&cyclic(2))),
            count(&c, &base_complex(&cyclic(2))),
            "cotruncate/skeleton at m=1"
        );
    }

    #[test]
    fn truncate_morphism_restricts() {
        let m = zmod_module();
        let id = crate::complex::ComplexMorphism::identity(&m);
        let cut = truncate_morphism(&id, 1).unwrap();
        assert_eq!(cut.source().len(), 1);
        assert!(cut.is_valid());
        let _ = base_complex(&cyclic(2));
    }
}
