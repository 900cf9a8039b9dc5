//! Homotopy groups of a complex, induced maps, and the fibration notions
//! built from them.

use std::sync::Arc;

use crate::caps::Caps;
use crate::complex::{ComplexError, ComplexMorphism, CrossedComplex};
use crate::group::{check_normal, quotient, subgroup_of, FinGroup, GroupError};
use crate::hom::{fiber_product, GroupHom};

/// A subquotient `K/N` of an ambient group, with the class map.
#[derive(Debug, Clone)]
pub struct Subquotient {
    /// The quotient group itself.
    pub group: Arc<FinGroup>,
    /// For each ambient element, its class in `group`, or `None` outside `K`.
    pub class_of: Vec<Option<usize>>,
    /// One ambient representative per class, by ascending class index.
    pub reps: Vec<usize>,
}

impl Subquotient {
    fn from_parts(
        ambient: &Arc<FinGroup>,
        kernel: &[usize],
        image: &[usize],
    ) -> Result<Subquotient, GroupError> {
        let sub = subgroup_of(ambient, kernel)?;
        // the image sits inside the kernel here, so re-express it there
        let mut inner = Vec::with_capacity(image.len());
        for &x in image {
            let pos = sub
                .elements()
                .iter()
                .position(|&k| k as usize == x)
                .ok_or(GroupError::NotASubgroup {
                    a: x,
                    b: x,
                    product: x,
                })?;
            inner.push(pos);
        }
        check_normal(&sub.group, &inner)?;
        let (q, proj) = quotient(&sub.group, &inner)?;

        let mut class_of = vec![None; ambient.order()];
        for (pos, &amb) in sub.elements().iter().enumerate() {
            class_of[amb as usize] = Some(proj.apply(pos));
        }
        let mut reps = vec![usize::MAX; q.order()];
        for (amb, class) in class_of.iter().enumerate() {
            if let Some(c) = *class {
                if reps[c] == usize::MAX {
                    reps[c] = amb;
                }
            }
        }
        Ok(Subquotient {
            group: q,
            class_of,
            reps,
        })
    }

    pub fn class(&self, ambient_element: usize) -> Option<usize> {
        self.class_of[ambient_element]
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }
}

/// `pi_k = ker d_k / im d_{k+1}`, with the boundaries read as trivial
/// outside the stored range. In particular `pi_1 = C_1 / im d_2` and
/// `pi_n = ker d_n`.
pub fn homotopy_group(
    complex: &CrossedComplex,
    degree: usize,
) -> Result<Subquotient, ComplexError> {
    let n = complex.len();
    if degree < 1 || degree > n {
        return Err(ComplexError::DegreeOutOfRange { degree, n });
    }
    let ambient = complex.group_at(degree);
    let kernel: Vec<usize> = if degree == 1 {
        ambient.elements().collect()
    } else {
        complex.boundary(degree).kernel_elements()
    };
    let image: Vec<usize> = if degree == n {
        vec![ambient.identity()]
    } else {
        complex.boundary(degree + 1).image_elements()
    };
    Ok(Subquotient::from_parts(&ambient, &kernel, &image)?)
}

/// All homotopy groups `pi_1 .. pi_n` in order.
pub fn homotopy_groups(complex: &CrossedComplex) -> Result<Vec<Subquotient>, ComplexError> {
    (1..=complex.len()).map(|k| homotopy_group(complex, k)).collect()
}

/// The map `pi_k(source) -> pi_k(target)` induced by a morphism.
pub fn induced_map(
    f: &ComplexMorphism,
    degree: usize,
) -> Result<(Subquotient, Subquotient, GroupHom), ComplexError> {
    let source_pi = homotopy_group(f.source(), degree)?;
    let target_pi = if degree <= f.target().len() {
        homotopy_group(f.target(), degree)?
    } else {
        let trivial = FinGroup::trivial();
        Subquotient {
            group: trivial.clone(),
            class_of: vec![Some(0)],
            reps: vec![0],
        }
    };
    let mut table = vec![usize::MAX; source_pi.group.order()];
    // scan every ambient element, not just reps, to detect ill-definedness
    for (amb, class) in source_pi.class_of.iter().enumerate() {
        let Some(c) = *class else { continue };
        let image = f.apply(degree, amb);
        let image_class = target_pi.class(image).ok_or_else(|| {
            ComplexError::InducedMapIllDefined {
                degree,
                a: amb,
                b: amb,
            }
        })?;
        if table[c] == usize::MAX {
            table[c] = image_class;
        } else if table[c] != image_class {
            return Err(ComplexError::InducedMapIllDefined {
                degree,
                a: source_pi.reps[c],
                b: amb,
            });
        }
    }
    let hom = GroupHom::new(source_pi.group.clone(), target_pi.group.clone(), &table)?;
    Ok((source_pi, target_pi, hom))
}

/// True when every induced map on homotopy groups is an isomorphism. Degrees
/// above either length compare against the trivial group.
pub fn is_weak_equivalence(f: &ComplexMorphism) -> Result<bool, ComplexError> {
    let top = f.source().len().max(f.target().len());
    for degree in 1..=top {
        if degree > f.source().len() {
            // source side is trivial there; need the target side trivial too
            if !homotopy_group(f.target(), degree)?.is_trivial() {
                return Ok(false);
            }
            continue;
        }
        let (_, target_pi, hom) = induced_map(f, degree)?;
        if degree > f.target().len() {
            if !hom.source().is_trivial() {
                return Ok(false);
            }
            let _ = target_pi;
            continue;
        }
        if !hom.is_bijective() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A fibration: surjective on degree 1 and surjective onto each pullback
/// `P_k = C_{k-1} x_{D_{k-1}} D_k` for `2 <= k <= max length`. In degree 2
/// the pullback is taken over the full degree-1 groups; in higher degrees
/// over the kernels of the one-lower boundaries.
pub fn is_fibration(f: &ComplexMorphism, caps: &Caps) -> Result<bool, ComplexError> {
    fibration_failures(f, caps, false).map(|v| v.is_empty())
}

/// A trivial fibration: a fibration whose top-degree lift is unique, i.e.
/// additionally `ker d_L` meets `ker f_L` trivially at the top length `L`.
pub fn is_trivial_fibration(f: &ComplexMorphism, caps: &Caps) -> Result<bool, ComplexError> {
    fibration_failures(f, caps, true).map(|v| v.is_empty())
}

/// Degrees at which the (trivial) fibration condition fails; degree 0 marks
/// the top-uniqueness failure in the trivial case.
pub fn fibration_failures(
    f: &ComplexMorphism,
    caps: &Caps,
    trivial: bool,
) -> Result<Vec<usize>, ComplexError> {
    let mut failures = Vec::new();
    let source = f.source().clone();
    let target = f.target().clone();
    let top = source.len().max(target.len());

    if !f.map(1).is_surjective() {
        failures.push(1);
    }
    for k in 2..=top {
        // the comparison map u_k : C_k -> P_k; surjectivity is checked by
        // counting hits among pairs
        let lower_source: Vec<usize> = if k == 2 {
            source.group_at(1).elements().collect()
        } else {
            source.boundary_at(k - 1).kernel_elements()
        };
        // P_k pairs (c, d) with c in lower_source, d in target degree k,
        // boundary of d = f(c)
        let mut wanted: Vec<(usize, usize)> = Vec::new();
        let db = target.boundary_at(k);
        for &c in &lower_source {
            let fc = f.apply(k - 1, c);
            for d in target.group_at(k).elements() {
                if db.apply(d) == fc {
                    wanted.push((c, d));
                }
            }
        }
        let pair_count = (lower_source.len() as u64).saturating_mul(
            target.group_at(k).order() as u64,
        );
        if pair_count > caps.max_product as u64 {
            return Err(ComplexError::Group(GroupError::SearchCapExceeded {
                required: pair_count as u128,
                cap: caps.max_product as u64,
            }));
        }

        let sb = source.boundary_at(k);
        let mut hit = vec![false; wanted.len()];
        for c in source.group_at(k).elements() {
            let pair = (sb.apply(c), f.apply(k, c));
            if let Some(pos) = wanted.iter().position(|&w| w == pair) {
                hit[pos] = true;
            }
        }
        if hit.iter().any(|&h| !h) {
            failures.push(k);
        }
    }
    if trivial {
        let l = top;
        let kernel_boundary: Vec<usize> = if l >= 2 && l <= source.len() {
            source.boundary(l).kernel_elements()
        } else if l > source.len() {
            vec![0]
        } else {
            source.group_at(1).elements().collect()
        };
        let e = source.group_at(l).identity();
        // ker d_L meet ker f_L = 1
        let meet_trivial = kernel_boundary.iter().all(|&c| {
            c == e || f.apply(l, c) != target.group_at(l).identity()
        });
        if !meet_trivial {
            failures.push(0);
        }
    }
    Ok(failures)
}

/// The degreewise fiber of a morphism over the basepoint: kernels with the
/// restricted boundaries and actions pulled back along nothing (the actor
/// stays the source degree-1 kernel).
pub fn fiber_complex(
    f: &ComplexMorphism,
    caps: &Caps,
) -> Result<Arc<CrossedComplex>, ComplexError> {
    let _ = caps;
    let source = f.source().clone();
    let n = source.len();
    let mut kernels = Vec::with_capacity(n);
    for k in 1..=n {
        kernels.push(subgroup_of(
            &source.group_at(k),
            &f.map(k).kernel_elements(),
        )?);
    }
    let mut groups = Vec::with_capacity(n);
    for s in &kernels {
        groups.push(s.group.clone());
    }
    let mut boundaries = Vec::with_capacity(n - 1);
    let mut actions = Vec::with_capacity(n - 1);
    for k in 2..=n {
        let upper = &kernels[k - 1];
        let lower = &kernels[k - 2];
        let ambient_boundary = source.boundary(k);
        let table: Vec<usize> = upper
            .elements()
            .iter()
            .map(|&x| {
                let image = ambient_boundary.apply(x as usize);
                lower
                    .elements()
                    .iter()
                    .position(|&y| y as usize == image)
                    .ok_or(GroupError::NotASubgroup {
                        a: x as usize,
                        b: x as usize,
                        product: image,
                    })
            })
            .collect::<Result<_, _>>()?;
        boundaries.push(GroupHom::new(
            upper.group.clone(),
            lower.group.clone(),
            &table,
        )?);

        let base = &kernels[0];
        let module_elems: Vec<usize> =
            upper.elements().iter().map(|&x| x as usize).collect();
        let actor_elems: Vec<usize> = base.elements().iter().map(|&x| x as usize).collect();
        let mut rows = Vec::with_capacity(module_elems.len());
        for &m in &module_elems {
            let mut row = Vec::with_capacity(actor_elems.len());
            for &a in &actor_elems {
                let moved = source.act(k, m, a);
                let pos = module_elems
                    .iter()
                    .position(|&y| y == moved)
                    .ok_or(GroupError::NotASubgroup {
                        a: m,
                        b: a,
                        product: moved,
                    })?;
                row.push(pos);
            }
            rows.push(row);
        }
        actions.push(crate::action::RightAction::new(
            base.group.clone(),
            upper.group.clone(),
            &rows,
        )?);
    }
    Ok(Arc::new(CrossedComplex::assemble(groups, boundaries, actions)?))
}

/// Convenience: the pullback of group homs, re-exported at complex level for
/// the comparison maps used in surjectivity arguments.
pub fn pullback_group(
    f: &GroupHom,
    g: &GroupHom,
    caps: &Caps,
) -> Result<crate::hom::FiberProduct, GroupError> {
    fiber_product(f, g, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexMorphism;
    use crate::instances::{
        base_complex, cyclic, inner_module, symmetric_3, three_stage_complex, zmod_module,
    };

    #[test]
    fn homotopy_groups_of_zmod() {
        // [Z/4 -mod2-> Z/2]: pi_1 = Z/2 / im = 1, pi_2 = ker = {0,2}
        let m = zmod_module();
        let pi1 = homotopy_group(&m, 1).unwrap();
        let pi2 = homotopy_group(&m, 2).unwrap();
        assert_eq!(pi1.group.order(), 1);
        assert_eq!(pi2.group.order(), 2);
    }

    #[test]
    fn homotopy_groups_of_inner() {
        // [G -id-> G] is contractible
        let m = inner_module(&symmetric_3());
        assert!(homotopy_group(&m, 1).unwrap().is_trivial());
        assert!(homotopy_group(&m, 2).unwrap().is_trivial());
    }

    #[test]
    fn homotopy_groups_of_three_stage() {
        // [Z/2 -x->2x-> Z/4 -0-> Z/2]
        let c = three_stage_complex();
        let pi1 = homotopy_group(&c, 1).unwrap();
        let pi2 = homotopy_group(&c, 2).unwrap();
        let pi3 = homotopy_group(&c, 3).unwrap();
        assert_eq!(pi1.group.order(), 2);
        // ker d_2 = Z/4, im d_3 = {0,2}: pi_2 = Z/2
        assert_eq!(pi2.group.order(), 2);
        // ker d_3 = 0
        assert_eq!(pi3.group.order(), 1);
    }

    #[test]
    fn induced_map_and_weak_equivalence() {
        let m = zmod_module();
        let id = ComplexMorphism::identity(&m);
        assert!(is_weak_equivalence(&id).unwrap());

        // collapse to the base [Z/2]: pi_1 matches (both trivial? no:
        // base complex of Z/2 has pi_1 = Z/2, m has pi_1 = 1) so not a w.e.
        let base = base_complex(&cyclic(2));
        let kill =
            ComplexMorphism::from_tables(m.clone(), base.clone(), &[vec![0, 0], vec![0; 4]])
                .unwrap();
        assert!(kill.is_valid());
        assert!(!is_weak_equivalence(&kill).unwrap());
    }

    #[test]
    fn fibration_checks() {
        let caps = Caps::default();
        let m = inner_module(&symmetric_3());
        let id = ComplexMorphism::identity(&m);
        assert!(is_fibration(&id, &caps).unwrap());
        assert!(is_trivial_fibration(&id, &caps).unwrap());

        // [G -id-> G] collapses to the point as a trivial fibration
        let point = base_complex(&cyclic(1));
        let collapse =
            ComplexMorphism::from_tables(m.clone(), point.clone(), &[vec![0; 6], vec![0; 6]])
                .unwrap();
        assert!(collapse.is_valid());
        assert!(is_fibration(&collapse, &caps).unwrap());
        assert!(is_trivial_fibration(&collapse, &caps).unwrap());

        // [Z/4 -> Z/2] over the point: a fibration (the boundary is onto)
        // but not trivial, ker d_2 = {0,2} survives
        let z = zmod_module();
        let zcollapse =
            ComplexMorphism::from_tables(z.clone(), point.clone(), &[vec![0, 0], vec![0; 4]])
                .unwrap();
        assert!(zcollapse.is_valid());
        assert!(is_fibration(&zcollapse, &caps).unwrap());
        assert!(!is_trivial_fibration(&zcollapse, &caps).unwrap());

        // [Z/2 -> Z/4 -> Z/2] over the point: d_2 = 0 misses half of C_1
        let three = three_stage_complex();
        let tcollapse = ComplexMorphism::from_tables(
            three.clone(),
            point,
            &[vec![0, 0], vec![0; 4], vec![0, 0]],
        )
        .unwrap();
        assert!(tcollapse.is_valid());
        assert!(!is_fibration(&tcollapse, &caps).unwrap());
    }

    #[test]
    fn non_surjective_base_is_not_a_fibration() {
        let caps = Caps::default();
        let z2 = base_complex(&cyclic(2));
        let z4 = base_complex(&cyclic(4));
        let doubling = ComplexMorphism::from_tables(z2.clone(), z4, &[vec![0, 2]]).unwrap();
        assert!(doubling.is_valid());
        assert!(!is_fibration(&doubling, &caps).unwrap());
    }

    #[test]
    fn fiber_complex_of_projection() {
        let caps = Caps::default();
        let a = zmod_module();
        let b = inner_module(&cyclic(3));
        let p = crate::complex::product_complex(&a, &b, &caps).unwrap();
        let fiber = fiber_complex(&p.proj_left, &caps).unwrap();
        assert!(fiber.is_valid());
        assert_eq!(fiber.group_at(1).order(), 3);
        assert_eq!(fiber.group_at(2).order(), 3);
    }
}
