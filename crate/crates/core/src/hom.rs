//! Group homomorphisms as dense index maps, plus the derived constructions
//! (kernel, image, cokernel, fiber product) and exhaustive hom enumeration.

use std::sync::Arc;

use crate::caps::Caps;
use crate::group::{
    check_normal, quotient, subgroup_of, FinGroup, GroupError, Subgroup,
};

/// A homomorphism stored as the full image table of its source.
#[derive(Debug, Clone)]
pub struct GroupHom {
    source: Arc<FinGroup>,
    target: Arc<FinGroup>,
    map: Vec<u32>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl Eq for GroupHom {}

impl GroupHom {
    /// Builds a hom and checks multiplicativity on every pair.
    pub fn new(
        source: Arc<FinGroup>,
        target: Arc<FinGroup>,
        map: &[usize],
    ) -> Result<GroupHom, GroupError> {
        let hom = GroupHom::new_unchecked(source, target, map)?;
        hom.check_multiplicative()?;
        Ok(hom)
    }

    /// Builds a candidate map without the homomorphism check (shape is still
    /// validated). Used for derived maps that are tested for validity later.
    pub fn new_unchecked(
        source: Arc<FinGroup>,
        target: Arc<FinGroup>,
        map: &[usize],
    ) -> Result<GroupHom, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::MapLengthMismatch {
                got: map.len(),
                expected: source.order(),
            });
        }
        for (element, &value) in map.iter().enumerate() {
            if value >= target.order() {
                return Err(GroupError::MapValueOutOfRange {
                    element,
                    value,
                    order: target.order(),
                });
            }
        }
        Ok(GroupHom {
            source,
            target,
            map: map.iter().map(|&v| v as u32).collect(),
        })
    }

    /// Verifies `map(a*b) = map(a)*map(b)` on all pairs.
    pub fn check_multiplicative(&self) -> Result<(), GroupError> {
        for a in self.source.elements() {
            for b in self.source.elements() {
                let got = self.apply(self.source.mul(a, b));
                let expected = self.target.mul(self.apply(a), self.apply(b));
                if got != expected {
                    return Err(GroupError::NotAHomomorphism {
                        a,
                        b,
                        got,
                        expected,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn identity(group: &Arc<FinGroup>) -> GroupHom {
        let map: Vec<u32> = group.elements().map(|x| x as u32).collect();
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            map,
        }
    }

    /// The constant-identity hom.
    pub fn zero(source: &Arc<FinGroup>, target: &Arc<FinGroup>) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            map: vec![target.identity() as u32; source.order()],
        }
    }

    pub fn source(&self) -> &Arc<FinGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinGroup> {
        &self.target
    }

    pub fn table(&self) -> &[u32] {
        &self.map
    }

    pub fn table_usize(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize).collect()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    /// `self` after `first`: computes `self(first(x))`.
    pub fn compose_after(&self, first: &GroupHom) -> Result<GroupHom, GroupError> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(GroupError::EndpointMismatch);
        }
        let map: Vec<u32> = first.map.iter().map(|&x| self.map[x as usize]).collect();
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            map,
        })
    }

    /// Same underlying table, retargeted to a structurally equal target group.
    pub fn retarget(&self, target: Arc<FinGroup>) -> Result<GroupHom, GroupError> {
        if target.as_ref() != self.target.as_ref() {
            return Err(GroupError::EndpointMismatch);
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target,
            map: self.map.clone(),
        })
    }

    /// Same underlying table on a structurally equal source group.
    pub fn resource(&self, source: Arc<FinGroup>) -> Result<GroupHom, GroupError> {
        if source.as_ref() != self.source.as_ref() {
            return Err(GroupError::EndpointMismatch);
        }
        Ok(GroupHom {
            source,
            target: self.target.clone(),
            map: self.map.clone(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &v in &self.map {
            if seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        let mut count = 0;
        for &v in &self.map {
            if !seen[v as usize] {
                seen[v as usize] = true;
                count += 1;
            }
        }
        count == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn is_identity(&self) -> bool {
        self.source.as_ref() == self.target.as_ref()
            && self.map.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Sorted, deduplicated image elements.
    pub fn image_elements(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.map.iter().map(|&v| v as usize).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn kernel_elements(&self) -> Vec<usize> {
        let identity = self.target.identity() as u32;
        self.map
            .iter()
            .enumerate()
            .filter_map(|(x, &v)| (v == identity).then_some(x))
            .collect()
    }

    /// Inverse of a bijective hom.
    pub fn inverse(&self) -> Result<GroupHom, GroupError> {
        if !self.is_bijective() {
            return Err(GroupError::EndpointMismatch);
        }
        let mut map = vec![0u32; self.target.order()];
        for x in self.source.elements() {
            map[self.apply(x)] = x as u32;
        }
        Ok(GroupHom {
            source: self.target.clone(),
            target: self.source.clone(),
            map,
        })
    }
}

/// Kernel and image of a hom, both materialized as subgroups.
pub fn hom_kernel_image(f: &GroupHom) -> Result<(Subgroup, Subgroup), GroupError> {
    let kernel = subgroup_of(f.source(), &f.kernel_elements())?;
    let image = subgroup_of(f.target(), &f.image_elements())?;
    Ok((kernel, image))
}

/// Target modulo the image; fails with `ImageNotNormal` when that quotient
/// does not exist.
pub fn cokernel(f: &GroupHom) -> Result<(Arc<FinGroup>, GroupHom), GroupError> {
    let image = f.image_elements();
    check_normal(f.target(), &image).map_err(|err| match err {
        GroupError::NotNormal {
            member, conjugator, ..
        } => GroupError::ImageNotNormal { member, conjugator },
        other => other,
    })?;
    quotient(f.target(), &image)
}

/// The pullback of two homs into one shared target.
#[derive(Debug, Clone)]
pub struct FiberProduct {
    pub group: Arc<FinGroup>,
    /// Projection onto the source of the first hom.
    pub to_left: GroupHom,
    /// Projection onto the source of the second hom.
    pub to_right: GroupHom,
    /// The pairs `(a, b)` with `f(a) = g(b)`, in the group's element order.
    pub pairs: Vec<(usize, usize)>,
}

/// Builds `{(a, b) | f(a) = g(b)}` with componentwise multiplication.
pub fn fiber_product(f: &GroupHom, g: &GroupHom, caps: &Caps) -> Result<FiberProduct, GroupError> {
    if f.target().as_ref() != g.target().as_ref() {
        return Err(GroupError::TargetMismatch);
    }
    let mut pairs = Vec::new();
    for a in f.source().elements() {
        for b in g.source().elements() {
            if f.apply(a) == g.apply(b) {
                pairs.push((a, b));
            }
        }
    }
    if pairs.len() > caps.max_product {
        return Err(GroupError::OrderCapExceeded {
            required: pairs.len(),
            cap: caps.max_product,
        });
    }
    let order = pairs.len();
    let index_of: std::collections::HashMap<(usize, usize), usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, &pair)| (pair, i))
        .collect();
    let mut mul = vec![0u32; order * order];
    for (i, &(a1, b1)) in pairs.iter().enumerate() {
        for (j, &(a2, b2)) in pairs.iter().enumerate() {
            let product = (f.source().mul(a1, a2), g.source().mul(b1, b2));
            mul[i * order + j] = index_of[&product] as u32;
        }
    }
    let identity = index_of[&(f.source().identity(), g.source().identity())];
    let table: Vec<Vec<usize>> = (0..order)
        .map(|i| (0..order).map(|j| mul[i * order + j] as usize).collect())
        .collect();
    let group = Arc::new(FinGroup::from_cayley(&table, identity, None)?);
    let left_map: Vec<usize> = pairs.iter().map(|&(a, _)| a).collect();
    let right_map: Vec<usize> = pairs.iter().map(|&(_, b)| b).collect();
    Ok(FiberProduct {
        to_left: GroupHom::new(group.clone(), f.source().clone(), &left_map)?,
        to_right: GroupHom::new(group.clone(), g.source().clone(), &right_map)?,
        group,
        pairs,
    })
}

/// Generator data for exhaustive hom search: a generating sequence plus, for
/// every element, a recipe `element = previous * generator`.
struct GeneratorWords {
    generators: Vec<usize>,
    /// Discovery order; first entry is the identity.
    order: Vec<usize>,
    /// For each element in discovery order (except the identity): indices
    /// `(previous_position, generator_position)`.
    recipe: Vec<(usize, usize)>,
}

fn generator_words(g: &FinGroup) -> GeneratorWords {
    let generators = g.generating_set();
    let mut position = vec![usize::MAX; g.order()];
    let mut order = vec![g.identity()];
    position[g.identity()] = 0;
    let mut recipe = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for (gi, &gen) in generators.iter().enumerate() {
            let y = g.mul(x, gen);
            if position[y] == usize::MAX {
                position[y] = order.len();
                order.push(y);
                recipe.push((i, gi));
            }
        }
        i += 1;
    }
    GeneratorWords {
        generators,
        order,
        recipe,
    }
}

/// Every homomorphism from `source` to `target`, by exhaustive search over
/// generator images. The nominal space is `|target| ^ generators`; if it
/// exceeds `caps.max_search` the search is refused.
pub fn enumerate_homs(
    source: &Arc<FinGroup>,
    target: &Arc<FinGroup>,
    caps: &Caps,
) -> Result<Vec<GroupHom>, GroupError> {
    let words = generator_words(source);
    let k = words.generators.len();
    let space = (target.order() as u128).pow(k as u32);
    if space > caps.max_search as u128 {
        return Err(GroupError::SearchCapExceeded {
            required: space,
            cap: caps.max_search,
        });
    }

    let mut result = Vec::new();
    let mut assignment = vec![0usize; k];
    loop {
        if let Some(hom) = try_extend(source, target, &words, &assignment) {
            result.push(hom);
        }
        // odometer increment over assignments
        let mut i = 0;
        loop {
            if i == k {
                return Ok(result);
            }
            assignment[i] += 1;
            if assignment[i] < target.order() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
        if k == 0 {
            // only the empty assignment exists for the trivial source
            return Ok(result);
        }
    }
}

/// Extends generator images to a full map and keeps it when multiplicative.
fn try_extend(
    source: &Arc<FinGroup>,
    target: &Arc<FinGroup>,
    words: &GeneratorWords,
    assignment: &[usize],
) -> Option<GroupHom> {
    let mut image = vec![0usize; source.order()];
    image[source.identity()] = target.identity();
    for (pos, &(prev, gi)) in words.recipe.iter().enumerate() {
        let element = words.order[pos + 1];
        image[element] = target.mul(image[words.order[prev]], assignment[gi]);
    }
    // quick generator check before the full scan
    for (gi, &gen) in words.generators.iter().enumerate() {
        if image[gen] != assignment[gi] {
            return None;
        }
    }
    let hom = GroupHom::new_unchecked(source.clone(), target.clone(), &image).ok()?;
    hom.check_multiplicative().ok()?;
    Some(hom)
}

/// Searches for an isomorphism. Orders up to 8 use brute force over element
/// bijections; larger orders search generator images with order-profile
/// pruning. Returns `None` when the groups are not isomorphic.
pub fn find_isomorphism(
    a: &Arc<FinGroup>,
    b: &Arc<FinGroup>,
    caps: &Caps,
) -> Result<Option<GroupHom>, GroupError> {
    if a.order() != b.order() || a.order_profile() != b.order_profile() {
        return Ok(None);
    }
    if a.order() <= 8 {
        return Ok(brute_force_isomorphism(a, b));
    }
    for hom in enumerate_homs(a, b, caps)? {
        if hom.is_bijective() {
            return Ok(Some(hom));
        }
    }
    Ok(None)
}

fn brute_force_isomorphism(a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> Option<GroupHom> {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.identity()] = b.identity();
    used[b.identity()] = true;
    let elements: Vec<usize> = a.elements().filter(|&x| x != a.identity()).collect();
    fn assign(
        a: &FinGroup,
        b: &FinGroup,
        elements: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == elements.len() {
            // full bijection; verify multiplicativity
            for x in a.elements() {
                for y in a.elements() {
                    if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                        return false;
                    }
                }
            }
            return true;
        }
        let x = elements[depth];
        for candidate in b.elements() {
            if used[candidate] || b.element_order(candidate) != a.element_order(x) {
                continue;
            }
            map[x] = candidate;
            used[candidate] = true;
            // partial consistency: products among already-assigned elements
            let consistent = (0..=depth).all(|i| {
                let y = elements[i];
                let products_ok = |p: usize, q: usize| {
                    let image = map[a.mul(p, q)];
                    image == usize::MAX || image == b.mul(map[p], map[q])
                };
                products_ok(x, y) && products_ok(y, x)
            });
            if consistent && assign(a, b, elements, depth + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[candidate] = false;
        }
        false
    }
    if assign(a, b, &elements, 0, &mut map, &mut used) {
        GroupHom::new(a.clone(), b.clone(), &map).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;
    use crate::instances::{cyclic, dihedral_4, klein_four, symmetric_3};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn hom_validation() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let modulo = GroupHom::new(z4.clone(), z2.clone(), &[0, 1, 0, 1]).unwrap();
        assert_eq!(modulo.apply(3), 1);
        assert!(modulo.is_surjective());
        assert!(!modulo.is_injective());

        assert!(matches!(
            GroupHom::new(z4.clone(), z2.clone(), &[0, 1, 1, 0]),
            Err(GroupError::NotAHomomorphism { .. })
        ));
        assert!(matches!(
            GroupHom::new(z4.clone(), z2.clone(), &[0, 1, 0]),
            Err(GroupError::MapLengthMismatch { .. })
        ));
        assert!(matches!(
            GroupHom::new(z4, z2, &[0, 3, 0, 3]),
            Err(GroupError::MapValueOutOfRange { .. })
        ));
    }

    #[test]
    fn kernel_image_cokernel() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let modulo = GroupHom::new(z4.clone(), z2.clone(), &[0, 1, 0, 1]).unwrap();
        let (kernel, image) = hom_kernel_image(&modulo).unwrap();
        assert_eq!(kernel.group.order(), 2);
        assert_eq!(kernel.elements(), &[0, 2]);
        assert_eq!(image.group.order(), 2);

        let (coker, proj) = cokernel(&modulo).unwrap();
        assert_eq!(coker.order(), 1);
        assert_eq!(proj.apply(1), coker.identity());

        // embed Z/2 in S3 as a transposition: image is not normal
        let s3 = symmetric_3();
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let embed = GroupHom::new(z2, s3.clone(), &[s3.identity(), t]).unwrap();
        assert!(matches!(
            cokernel(&embed),
            Err(GroupError::ImageNotNormal { .. })
        ));
    }

    #[test]
    fn fiber_product_of_two_projections() {
        let z4 = cyclic(4);
        let z2 = cyclic(2);
        let modulo = GroupHom::new(z4.clone(), z2.clone(), &[0, 1, 0, 1]).unwrap();
        let id2 = GroupHom::identity(&z2);
        let fp = fiber_product(&modulo, &id2, &caps()).unwrap();
        // pairs (a, a mod 2): order 4
        assert_eq!(fp.group.order(), 4);
        assert!(fp.to_left.is_injective());
        assert!(fp.to_right.is_surjective());

        let z3 = cyclic(3);
        let id3 = GroupHom::identity(&z3);
        assert!(matches!(
            fiber_product(&modulo, &id3, &caps()),
            Err(GroupError::TargetMismatch)
        ));
    }

    #[test]
    fn enumerate_homs_counts() {
        // Z/4 -> Z/2: generator can land on either element
        let homs = enumerate_homs(&cyclic(4), &cyclic(2), &caps()).unwrap();
        assert_eq!(homs.len(), 2);
        // Z/2 -> Z/4: 1 must land in the 2-torsion {0, 2}
        let homs = enumerate_homs(&cyclic(2), &cyclic(4), &caps()).unwrap();
        assert_eq!(homs.len(), 2);
        // V4 -> Z/2 has 4 homs; V4 -> V4 has 16 (including non-autos)
        assert_eq!(enumerate_homs(&klein_four(), &cyclic(2), &caps()).unwrap().len(), 4);
        assert_eq!(enumerate_homs(&klein_four(), &klein_four(), &caps()).unwrap().len(), 16);
        // S3 -> Z/3 only the trivial hom (no normal subgroup of index 3)
        assert_eq!(enumerate_homs(&symmetric_3(), &cyclic(3), &caps()).unwrap().len(), 1);
        // S3 -> S3: 1 trivial + 3 onto Z/2 factors + 6 automorphisms
        assert_eq!(enumerate_homs(&symmetric_3(), &symmetric_3(), &caps()).unwrap().len(), 10);
    }

    /// Oracle: every set map, filtered for multiplicativity.
    fn brute_force_hom_count(a: &Arc<FinGroup>, b: &Arc<FinGroup>) -> usize {
        let n = a.order();
        let m = b.order();
        let total = m.pow(n as u32);
        let mut count = 0;
        for code in 0..total {
            let mut map = Vec::with_capacity(n);
            let mut rest = code;
            for _ in 0..n {
                map.push(rest % m);
                rest /= m;
            }
            if GroupHom::new(a.clone(), b.clone(), &map).is_ok() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn enumerate_homs_agrees_with_brute_force() {
        let pool = [cyclic(2), cyclic(3), cyclic(4), klein_four()];
        for a in &pool {
            for b in &pool {
                let fast = enumerate_homs(a, b, &caps()).unwrap().len();
                let slow = brute_force_hom_count(a, b);
                assert_eq!(fast, slow, "{} -> {}", a.order(), b.order());
            }
        }
    }

    #[test]
    fn search_cap_is_enforced() {
        let tight = Caps {
            max_search: 2,
            ..caps()
        };
        assert!(matches!(
            enumerate_homs(&klein_four(), &klein_four(), &tight),
            Err(GroupError::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn isomorphism_search() {
        // Z/2 x Z/3 is cyclic of order 6
        let p = direct_product(&cyclic(2), &cyclic(3), &caps()).unwrap();
        let iso = find_isomorphism(&p.group, &cyclic(6), &caps()).unwrap();
        assert!(iso.is_some());
        assert!(iso.unwrap().is_bijective());

        // S3 vs Z/6: same order, different structure
        assert!(find_isomorphism(&symmetric_3(), &cyclic(6), &caps())
            .unwrap()
            .is_none());
        // V4 vs Z/4
        assert!(find_isomorphism(&klein_four(), &cyclic(4), &caps())
            .unwrap()
            .is_none());
        // D4 is isomorphic to itself through brute force
        assert!(find_isomorphism(&dihedral_4(), &dihedral_4(), &caps())
            .unwrap()
            .is_some());
    }

    #[test]
    fn compose_and_inverse() {
        let z4 = cyclic(4);
        let neg = GroupHom::new(z4.clone(), z4.clone(), &[0, 3, 2, 1]).unwrap();
        let composed = neg.compose_after(&neg).unwrap();
        assert!(composed.is_identity());
        let inv = neg.inverse().unwrap();
        assert_eq!(inv, neg);
    }
}
