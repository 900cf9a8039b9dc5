//! Finite groups as dense-index Cayley tables.
//!
//! Elements of a group of order `n` are the indices `0..n`. Every constructor
//! that accepts external data checks the group axioms by exhaustive scan and
//! names an offending element or triple on failure. Groups built internally
//! (products, subgroups, quotients) are correct by construction but can be
//! re-checked with [`FinGroup::check_axioms`].

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::caps::Caps;
use crate::hom::GroupHom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cayley table row {row} has {got} entries, expected {expected}")]
    TableNotSquare {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("cayley entry at ({a},{b}) is {value}, out of range for order {order}")]
    EntryOutOfRange {
        a: usize,
        b: usize,
        value: usize,
        order: usize,
    },
    #[error("identity index {identity} is out of range for order {order}")]
    IdentityOutOfRange { identity: usize, order: usize },
    #[error("not associative at ({a},{b},{c}): ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
        left: usize,
        right: usize,
    },
    #[error("{identity} is not a two-sided identity, witness {witness}")]
    NoIdentity { identity: usize, witness: usize },
    #[error("element {witness} has no inverse")]
    NoInverse { witness: usize },
    #[error("label list has {got} entries, expected {expected}")]
    LabelCountMismatch { got: usize, expected: usize },
    #[error("generator {index} is not a permutation of degree {degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("permutation {index} has degree {got}, expected {expected}")]
    PermutationDegreeMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("closure exceeded the bound of {bound} elements")]
    ClosureBoundExceeded { bound: usize },
    #[error("group of order {required} exceeds the cap of {cap}")]
    OrderCapExceeded { required: usize, cap: usize },
    #[error("element {element} is out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("subset does not contain the identity")]
    SubgroupMissingIdentity,
    #[error("subset is not closed: {a}*{b} = {product} escapes it")]
    NotASubgroup { a: usize, b: usize, product: usize },
    #[error("subgroup not normal: {conjugator}^-1 * {member} * {conjugator} = {conjugate} escapes it")]
    NotNormal {
        member: usize,
        conjugator: usize,
        conjugate: usize,
    },
    #[error("image is not normal in the target: conjugating {member} by {conjugator} escapes the image")]
    ImageNotNormal { member: usize, conjugator: usize },
    #[error("map table has {got} entries, expected {expected}")]
    MapLengthMismatch { got: usize, expected: usize },
    #[error("map sends {element} to {value}, out of range for target order {order}")]
    MapValueOutOfRange {
        element: usize,
        value: usize,
        order: usize,
    },
    #[error("not a homomorphism at ({a},{b}): map({a}*{b}) = {got} but map({a})*map({b}) = {expected}")]
    NotAHomomorphism {
        a: usize,
        b: usize,
        got: usize,
        expected: usize,
    },
    #[error("homs do not share the required endpoint groups")]
    EndpointMismatch,
    #[error("fiber product requires two homs into one shared target")]
    TargetMismatch,
    #[error("search space of {required} assignments exceeds the cap of {cap}")]
    SearchCapExceeded { required: u128, cap: u64 },
}

/// A finite group on elements `0..order` with a dense multiplication table.
///
/// Labels are optional display names; they never participate in equality.
#[derive(Debug, Clone)]
pub struct FinGroup {
    order: usize,
    identity: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.mul == other.mul
    }
}

impl Eq for FinGroup {}

fn shared_trivial() -> &'static Arc<FinGroup> {
    static TRIVIAL: OnceLock<Arc<FinGroup>> = OnceLock::new();
    TRIVIAL.get_or_init(|| {
        Arc::new(FinGroup {
            order: 1,
            identity: 0,
            mul: vec![0],
            inv: vec![0],
            labels: Some(vec!["e".to_string()]),
        })
    })
}

impl FinGroup {
    /// The one-element group. A shared instance, cheap to clone.
    pub fn trivial() -> Arc<FinGroup> {
        shared_trivial().clone()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x^-1 * a * x`.
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn label(&self, element: usize) -> String {
        match &self.labels {
            Some(labels) => labels[element].clone(),
            None => element.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) -> Result<(), GroupError> {
        if let Some(list) = &labels {
            if list.len() != self.order {
                return Err(GroupError::LabelCountMismatch {
                    got: list.len(),
                    expected: self.order,
                });
            }
        }
        self.labels = labels;
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut profile: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        profile.sort_unstable();
        profile
    }

    /// A small generating sequence found greedily by ascending index.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        let mut span_size = 1;
        for candidate in self.elements() {
            if span[candidate] {
                continue;
            }
            gens.push(candidate);
            // close the span under multiplication by the new generator set
            let mut frontier: Vec<usize> = span
                .iter()
                .enumerate()
                .filter_map(|(i, &in_span)| in_span.then_some(i))
                .collect();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !span[y] {
                        span[y] = true;
                        span_size += 1;
                        frontier.push(y);
                    }
                }
            }
            if span_size == self.order {
                break;
            }
        }
        gens
    }

    /// Verifies associativity, the two-sided identity and inverses by scan.
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        check_table(&table_rows(self), self.identity).map(|_| ())
    }

    /// Builds a group from a full multiplication table.
    ///
    /// `table[a][b]` is the product `a*b`. All three group axioms are checked
    /// exhaustively; failures name the offending entry, element or triple.
    pub fn from_cayley(
        table: &[Vec<usize>],
        identity: usize,
        labels: Option<Vec<String>>,
    ) -> Result<FinGroup, GroupError> {
        let inv = check_table(table, identity)?;
        let order = table.len();
        if let Some(list) = &labels {
            if list.len() != order {
                return Err(GroupError::LabelCountMismatch {
                    got: list.len(),
                    expected: order,
                });
            }
        }
        let mut mul = Vec::with_capacity(order * order);
        for row in table {
            for &value in row {
                mul.push(value as u32);
            }
        }
        Ok(FinGroup {
            order,
            identity,
            mul,
            inv,
            labels,
        })
    }

    /// Closes a set of permutations under composition and returns the group.
    ///
    /// Permutations act on points `0..degree`; the product `p*q` is "apply `p`
    /// first, then `q`". Closure stops with `ClosureBoundExceeded` if more
    /// than `caps.max_closure` elements appear. Elements are labeled in cycle
    /// notation on 1-based points.
    pub fn from_permutations(
        generators: &[Vec<usize>],
        caps: &Caps,
    ) -> Result<FinGroup, GroupError> {
        if generators.is_empty() {
            return Ok(shared_trivial().as_ref().clone());
        }
        let degree = generators[0].len();
        for (index, gen) in generators.iter().enumerate() {
            if gen.len() != degree {
                return Err(GroupError::PermutationDegreeMismatch {
                    index,
                    got: gen.len(),
                    expected: degree,
                });
            }
            let mut seen = vec![false; degree];
            for &image in gen {
                if image >= degree || seen[image] {
                    return Err(GroupError::NotAPermutation { index, degree });
                }
                seen[image] = true;
            }
        }

        let identity_perm: Vec<usize> = (0..degree).collect();
        let mut elements: Vec<Vec<usize>> = vec![identity_perm.clone()];
        let mut index_of = std::collections::HashMap::new();
        index_of.insert(identity_perm, 0usize);
        let mut queue = 0usize;
        while queue < elements.len() {
            let current = elements[queue].clone();
            for gen in generators {
                let mut next = vec![0usize; degree];
                for point in 0..degree {
                    next[point] = gen[current[point]];
                }
                if !index_of.contains_key(&next) {
                    if elements.len() >= caps.max_closure {
                        return Err(GroupError::ClosureBoundExceeded {
                            bound: caps.max_closure,
                        });
                    }
                    index_of.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
            queue += 1;
        }

        let order = elements.len();
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let mut composed = vec![0usize; degree];
                for point in 0..degree {
                    composed[point] = elements[b][elements[a][point]];
                }
                mul[a * order + b] = index_of[&composed] as u32;
            }
        }
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let mut inverse = vec![0usize; degree];
            for point in 0..degree {
                inverse[elements[a][point]] = point;
            }
            inv[a] = index_of[&inverse] as u32;
        }
        let labels = elements.iter().map(|p| cycle_notation(p)).collect();
        Ok(FinGroup {
            order,
            identity: 0,
            mul,
            inv,
            labels: Some(labels),
        })
    }
}

fn table_rows(g: &FinGroup) -> Vec<Vec<usize>> {
    g.elements()
        .map(|a| g.elements().map(|b| g.mul(a, b)).collect())
        .collect()
}

/// Shared axiom scan; returns the inverse table on success.
fn check_table(table: &[Vec<usize>], identity: usize) -> Result<Vec<u32>, GroupError> {
    let order = table.len();
    if identity >= order {
        return Err(GroupError::IdentityOutOfRange { identity, order });
    }
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != order {
            return Err(GroupError::TableNotSquare {
                row,
                got: entries.len(),
                expected: order,
            });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= order {
                return Err(GroupError::EntryOutOfRange {
                    a: row,
                    b: col,
                    value,
                    order,
                });
            }
        }
    }
    for a in 0..order {
        if table[identity][a] != a || table[a][identity] != a {
            return Err(GroupError::NoIdentity {
                identity,
                witness: a,
            });
        }
    }
    for a in 0..order {
        for b in 0..order {
            for c in 0..order {
                let left = table[table[a][b]][c];
                let right = table[a][table[b][c]];
                if left != right {
                    return Err(GroupError::NotAssociative {
                        a,
                        b,
                        c,
                        left,
                        right,
                    });
                }
            }
        }
    }
    let mut inv = vec![0u32; order];
    for a in 0..order {
        match (0..order).find(|&b| table[a][b] == identity && table[b][a] == identity) {
            Some(b) => inv[a] = b as u32,
            None => return Err(GroupError::NoInverse { witness: a }),
        }
    }
    Ok(inv)
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut point = perm[start];
        while point != start {
            seen[point] = true;
            cycle.push(point);
            point = perm[point];
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(|p| (p + 1).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A subgroup materialized as a standalone group plus its inclusion hom.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgroup {
    pub group: Arc<FinGroup>,
    pub inclusion: GroupHom,
}

impl Subgroup {
    /// The sorted parent indices the subgroup consists of.
    pub fn elements(&self) -> &[u32] {
        self.inclusion.table()
    }
}

/// Materializes the subgroup on `elements`, checking closure and the identity.
pub fn subgroup_of(parent: &Arc<FinGroup>, elements: &[usize]) -> Result<Subgroup, GroupError> {
    let mut sorted: Vec<usize> = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &x in &sorted {
        if x >= parent.order() {
            return Err(GroupError::ElementOutOfRange {
                element: x,
                order: parent.order(),
            });
        }
    }
    if sorted.binary_search(&parent.identity()).is_err() {
        return Err(GroupError::SubgroupMissingIdentity);
    }
    let mut index_in_sub = vec![usize::MAX; parent.order()];
    for (i, &x) in sorted.iter().enumerate() {
        index_in_sub[x] = i;
    }
    let order = sorted.len();
    let mut mul = vec![0u32; order * order];
    for (i, &a) in sorted.iter().enumerate() {
        for (j, &b) in sorted.iter().enumerate() {
            let product = parent.mul(a, b);
            let k = index_in_sub[product];
            if k == usize::MAX {
                return Err(GroupError::NotASubgroup { a, b, product });
            }
            mul[i * order + j] = k as u32;
        }
    }
    let mut inv = vec![0u32; order];
    for (i, &a) in sorted.iter().enumerate() {
        // closure plus finiteness already guarantees the inverse is inside
        inv[i] = index_in_sub[parent.inv(a)] as u32;
    }
    let labels = parent
        .labels()
        .map(|ls| sorted.iter().map(|&x| ls[x].clone()).collect());
    let group = Arc::new(FinGroup {
        order,
        identity: index_in_sub[parent.identity()],
        mul,
        inv,
        labels,
    });
    let inclusion = GroupHom::new(group.clone(), parent.clone(), &sorted)?;
    Ok(Subgroup { group, inclusion })
}

/// A direct product together with its four canonical homs.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: Arc<FinGroup>,
    pub left: Arc<FinGroup>,
    pub right: Arc<FinGroup>,
    pub proj_left: GroupHom,
    pub proj_right: GroupHom,
    pub incl_left: GroupHom,
    pub incl_right: GroupHom,
}

impl DirectProduct {
    pub fn encode(&self, a: usize, b: usize) -> usize {
        a * self.right.order() + b
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        (x / self.right.order(), x % self.right.order())
    }
}

/// Componentwise product; element `(a,b)` is index `a * |right| + b`.
pub fn direct_product(
    left: &Arc<FinGroup>,
    right: &Arc<FinGroup>,
    caps: &Caps,
) -> Result<DirectProduct, GroupError> {
    let order = left.order() * right.order();
    if order > caps.max_product {
        return Err(GroupError::OrderCapExceeded {
            required: order,
            cap: caps.max_product,
        });
    }
    let rn = right.order();
    let mut mul = vec![0u32; order * order];
    for a1 in left.elements() {
        for b1 in right.elements() {
            let x = a1 * rn + b1;
            for a2 in left.elements() {
                for b2 in right.elements() {
                    let y = a2 * rn + b2;
                    mul[x * order + y] = (left.mul(a1, a2) * rn + right.mul(b1, b2)) as u32;
                }
            }
        }
    }
    let mut inv = vec![0u32; order];
    for a in left.elements() {
        for b in right.elements() {
            inv[a * rn + b] = (left.inv(a) * rn + right.inv(b)) as u32;
        }
    }
    let labels = if left.labels().is_some() || right.labels().is_some() {
        let mut list = Vec::with_capacity(order);
        for a in left.elements() {
            for b in right.elements() {
                list.push(format!("({},{})", left.label(a), right.label(b)));
            }
        }
        Some(list)
    } else {
        None
    };
    let identity = left.identity() * rn + right.identity();
    let group = Arc::new(FinGroup {
        order,
        identity,
        mul,
        inv,
        labels,
    });

    let proj_left_map: Vec<usize> = (0..order).map(|x| x / rn).collect();
    let proj_right_map: Vec<usize> = (0..order).map(|x| x % rn).collect();
    let incl_left_map: Vec<usize> = left.elements().map(|a| a * rn + right.identity()).collect();
    let incl_right_map: Vec<usize> = right.elements().map(|b| left.identity() * rn + b).collect();
    Ok(DirectProduct {
        proj_left: GroupHom::new(group.clone(), left.clone(), &proj_left_map)?,
        proj_right: GroupHom::new(group.clone(), right.clone(), &proj_right_map)?,
        incl_left: GroupHom::new(left.clone(), group.clone(), &incl_left_map)?,
        incl_right: GroupHom::new(right.clone(), group.clone(), &incl_right_map)?,
        group,
        left: left.clone(),
        right: right.clone(),
    })
}

/// Checks that `elements` is a normal subgroup, naming an escaping conjugate
/// otherwise.
pub fn check_normal(parent: &FinGroup, elements: &[usize]) -> Result<(), GroupError> {
    let mut member = vec![false; parent.order()];
    for &x in elements {
        member[x] = true;
    }
    for &n in elements {
        for g in parent.elements() {
            let conjugate = parent.conj(n, g);
            if !member[conjugate] {
                return Err(GroupError::NotNormal {
                    member: n,
                    conjugator: g,
                    conjugate,
                });
            }
        }
    }
    Ok(())
}

/// The quotient by a normal subgroup, with the projection hom.
///
/// Class representatives are canonical: the least parent index in each coset,
/// and classes are numbered by ascending representative.
pub fn quotient(
    parent: &Arc<FinGroup>,
    normal_elements: &[usize],
) -> Result<(Arc<FinGroup>, GroupHom), GroupError> {
    let sub = subgroup_of(parent, normal_elements)?;
    let members: Vec<usize> = sub.elements().iter().map(|&x| x as usize).collect();
    check_normal(parent, &members)?;

    let mut class_of = vec![usize::MAX; parent.order()];
    let mut reps = Vec::new();
    for g in parent.elements() {
        if class_of[g] != usize::MAX {
            continue;
        }
        let class = reps.len();
        reps.push(g);
        for &n in &members {
            class_of[parent.mul(g, n)] = class;
        }
    }
    let order = reps.len();
    let mut mul = vec![0u32; order * order];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * order + j] = class_of[parent.mul(a, b)] as u32;
        }
    }
    let mut inv = vec![0u32; order];
    for (i, &a) in reps.iter().enumerate() {
        inv[i] = class_of[parent.inv(a)] as u32;
    }
    let labels = parent
        .labels()
        .map(|ls| reps.iter().map(|&r| format!("[{}]", ls[r])).collect());
    let group = Arc::new(FinGroup {
        order,
        identity: class_of[parent.identity()],
        mul,
        inv,
        labels,
    });
    let projection = GroupHom::new(parent.clone(), group.clone(), &class_of)?;
    Ok((group, projection))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn z(n: usize) -> Arc<FinGroup> {
        crate::instances::cyclic(n)
    }

    #[test]
    fn cyclic_tables_validate() {
        let g = z(4);
        assert_eq!(g.order(), 4);
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.inv(1), 3);
        assert!(g.is_abelian());
        assert!(g.check_axioms().is_ok());
        assert_eq!(g.element_order(1), 4);
        assert_eq!(g.element_order(2), 2);
    }

    #[test]
    fn from_cayley_rejects_broken_tables() {
        // swap one entry of the Z/3 table: 1*1 = 0 instead of 2
        let table = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
        let err = FinGroup::from_cayley(&table, 0, None).unwrap_err();
        assert!(matches!(
            err,
            GroupError::NotAssociative { .. } | GroupError::NoInverse { .. }
        ));

        let ragged = vec![vec![0, 1], vec![1]];
        assert!(matches!(
            FinGroup::from_cayley(&ragged, 0, None),
            Err(GroupError::TableNotSquare { row: 1, .. })
        ));

        let out_of_range = vec![vec![0, 1], vec![1, 7]];
        assert!(matches!(
            FinGroup::from_cayley(&out_of_range, 0, None),
            Err(GroupError::EntryOutOfRange { value: 7, .. })
        ));

        // identity index that is not an identity
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert!(matches!(
            FinGroup::from_cayley(&z2, 1, None),
            Err(GroupError::NoIdentity { .. })
        ));
    }

    #[test]
    fn permutation_closure_builds_s3() {
        let s3 = FinGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], &caps()).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(s3.check_axioms().is_ok());
        assert_eq!(s3.label(0), "()");
        // two 3-cycles, three transpositions, one identity
        assert_eq!(s3.order_profile(), vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn permutation_closure_edge_cases() {
        let trivial = FinGroup::from_permutations(&[], &caps()).unwrap();
        assert_eq!(trivial.order(), 1);

        assert!(matches!(
            FinGroup::from_permutations(&[vec![0, 0, 1]], &caps()),
            Err(GroupError::NotAPermutation { index: 0, .. })
        ));

        let tight = Caps {
            max_closure: 3,
            ..caps()
        };
        assert!(matches!(
            FinGroup::from_permutations(&[vec![1, 2, 3, 0]], &tight),
            Err(GroupError::ClosureBoundExceeded { bound: 3 })
        ));
    }

    #[test]
    fn direct_product_has_expected_structure() {
        let p = direct_product(&z(2), &z(3), &caps()).unwrap();
        assert_eq!(p.group.order(), 6);
        assert!(p.group.is_abelian());
        assert_eq!(p.group.element_order(p.encode(1, 1)), 6);
        assert_eq!(p.proj_left.apply(p.encode(1, 2)), 1);
        assert_eq!(p.proj_right.apply(p.encode(1, 2)), 2);
        assert_eq!(p.incl_right.apply(2), p.encode(0, 2));

        let tiny = Caps {
            max_product: 5,
            ..caps()
        };
        assert!(matches!(
            direct_product(&z(2), &z(3), &tiny),
            Err(GroupError::OrderCapExceeded { required: 6, cap: 5 })
        ));
    }

    #[test]
    fn subgroup_materialization() {
        let g = z(6);
        let sub = subgroup_of(&g, &[0, 2, 4]).unwrap();
        assert_eq!(sub.group.order(), 3);
        assert_eq!(sub.inclusion.apply(1), 2);
        assert!(sub.group.check_axioms().is_ok());

        assert!(matches!(
            subgroup_of(&g, &[0, 2, 3]),
            Err(GroupError::NotASubgroup { .. })
        ));
        assert!(matches!(
            subgroup_of(&g, &[2, 4]),
            Err(GroupError::SubgroupMissingIdentity)
        ));
    }

    #[test]
    fn quotient_of_cyclic() {
        let g = z(4);
        let (q, proj) = quotient(&g, &[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.apply(1), proj.apply(3));
        assert_ne!(proj.apply(0), proj.apply(1));
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = crate::instances::symmetric_3();
        // a transposition generates a non-normal order-2 subgroup
        let t = s3
            .elements()
            .find(|&a| s3.element_order(a) == 2)
            .unwrap();
        let err = quotient(&s3, &[s3.identity(), t]).unwrap_err();
        match err {
            GroupError::NotNormal {
                member, conjugate, ..
            } => {
                assert_eq!(member, t);
                assert_ne!(conjugate, t);
            }
            other => panic!("expected NotNormal, got {other:?}"),
        }
    }

    #[test]
    fn center_of_s3_is_trivial() {
        let s3 = crate::instances::symmetric_3();
        assert_eq!(s3.center(), vec![s3.identity()]);
        let d4 = crate::instances::dihedral_4();
        assert_eq!(d4.center().len(), 2);
    }

    #[test]
    fn generating_set_spans() {
        let d4 = crate::instances::dihedral_4();
        let gens = d4.generating_set();
        assert!(gens.len() <= 3);
        let from_gens = {
            let mut span = vec![d4.identity()];
            let mut seen = vec![false; d4.order()];
            seen[d4.identity()] = true;
            let mut i = 0;
            while i < span.len() {
                for &g in &gens {
                    let y = d4.mul(span[i], g);
                    if !seen[y] {
                        seen[y] = true;
                        span.push(y);
                    }
                }
                i += 1;
            }
            span.len()
        };
        assert_eq!(from_gens, d4.order());
    }
}
