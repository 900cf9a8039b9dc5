//! Right actions of one finite group on another by automorphisms.

use std::sync::Arc;

use crate::group::{FinGroup, GroupError};
use crate::hom::GroupHom;

/// A right action `m^a` of `actor` on `module`, stored as a dense table.
#[derive(Debug, Clone)]
pub struct RightAction {
    actor: Arc<FinGroup>,
    module: Arc<FinGroup>,
    /// `table[m * |actor| + a] = m^a`
    table: Vec<u32>,
}

impl PartialEq for RightAction {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.actor == other.actor && self.module == other.module
    }
}

impl Eq for RightAction {}

/// One violated action axiom with its witness elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionViolation {
    /// `m^e != m`
    IdentityMoves { module_elt: usize, result: usize },
    /// `(m^a)^b != m^(a*b)`
    NotCompatible { module_elt: usize, a: usize, b: usize },
    /// `(m*n)^a != m^a * n^a`
    NotAutomorphism { a: usize, m: usize, n: usize },
}

impl RightAction {
    pub fn new(
        actor: Arc<FinGroup>,
        module: Arc<FinGroup>,
        rows: &[Vec<usize>],
    ) -> Result<RightAction, GroupError> {
        if rows.len() != module.order() {
            return Err(GroupError::MapLengthMismatch {
                got: rows.len(),
                expected: module.order(),
            });
        }
        let mut table = Vec::with_capacity(module.order() * actor.order());
        for (m, row) in rows.iter().enumerate() {
            if row.len() != actor.order() {
                return Err(GroupError::MapLengthMismatch {
                    got: row.len(),
                    expected: actor.order(),
                });
            }
            for &value in row {
                if value >= module.order() {
                    return Err(GroupError::MapValueOutOfRange {
                        element: m,
                        value,
                        order: module.order(),
                    });
                }
                table.push(value as u32);
            }
        }
        Ok(RightAction {
            actor,
            module,
            table,
        })
    }

    /// Builds the table by evaluating `act(m, a)` on every pair.
    pub fn from_fn(
        actor: Arc<FinGroup>,
        module: Arc<FinGroup>,
        act: impl Fn(usize, usize) -> usize,
    ) -> RightAction {
        let an = actor.order();
        let mut table = Vec::with_capacity(module.order() * an);
        for m in module.elements() {
            for a in actor.elements() {
                table.push(act(m, a) as u32);
            }
        }
        RightAction {
            actor,
            module,
            table,
        }
    }

    /// The action fixing every module element.
    pub fn trivial(actor: Arc<FinGroup>, module: Arc<FinGroup>) -> RightAction {
        RightAction::from_fn(actor, module, |m, _| m)
    }

    /// The conjugation action of a group on itself: `m^a = a^-1 m a`.
    pub fn conjugation(group: Arc<FinGroup>) -> RightAction {
        RightAction::from_fn(group.clone(), group.clone(), |m, a| group.conj(m, a))
    }

    pub fn actor(&self) -> &Arc<FinGroup> {
        &self.actor
    }

    pub fn module(&self) -> &Arc<FinGroup> {
        &self.module
    }

    pub fn act(&self, m: usize, a: usize) -> usize {
        self.table[m * self.actor.order() + a] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.module
            .elements()
            .map(|m| self.actor.elements().map(|a| self.act(m, a)).collect())
            .collect()
    }

    /// Whether every actor element fixes every module element.
    pub fn is_trivial(&self) -> bool {
        self.module
            .elements()
            .all(|m| self.actor.elements().all(|a| self.act(m, a) == m))
    }

    /// Exhaustive check of the three action axioms.
    pub fn violations(&self) -> Vec<ActionViolation> {
        let mut out = Vec::new();
        let e = self.actor.identity();
        for m in self.module.elements() {
            let result = self.act(m, e);
            if result != m {
                out.push(ActionViolation::IdentityMoves {
                    module_elt: m,
                    result,
                });
            }
        }
        for m in self.module.elements() {
            for a in self.actor.elements() {
                for b in self.actor.elements() {
                    if self.act(self.act(m, a), b) != self.act(m, self.actor.mul(a, b)) {
                        out.push(ActionViolation::NotCompatible { module_elt: m, a, b });
                    }
                }
            }
        }
        for a in self.actor.elements() {
            for m in self.module.elements() {
                for n in self.module.elements() {
                    let left = self.act(self.module.mul(m, n), a);
                    let right = self.module.mul(self.act(m, a), self.act(n, a));
                    if left != right {
                        out.push(ActionViolation::NotAutomorphism { a, m, n });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Pulls the action back along a hom into the actor.
    pub fn restrict_actor(&self, along: &GroupHom) -> Result<RightAction, GroupError> {
        if along.target().as_ref() != self.actor.as_ref() {
            return Err(GroupError::EndpointMismatch);
        }
        Ok(RightAction::from_fn(
            along.source().clone(),
            self.module.clone(),
            |m, a| self.act(m, along.apply(a)),
        ))
    }

    /// Restricts the module to an invariant subgroup given by its inclusion.
    ///
    /// Fails when the subgroup is not closed under the action.
    pub fn restrict_module(&self, inclusion: &GroupHom) -> Result<RightAction, GroupError> {
        if inclusion.target().as_ref() != self.module.as_ref() {
            return Err(GroupError::EndpointMismatch);
        }
        let sub = inclusion.source();
        let mut position = vec![usize::MAX; self.module.order()];
        for s in sub.elements() {
            position[inclusion.apply(s)] = s;
        }
        let an = self.actor.order();
        let mut table = Vec::with_capacity(sub.order() * an);
        for s in sub.elements() {
            let m = inclusion.apply(s);
            for a in self.actor.elements() {
                let image = self.act(m, a);
                let inside = position[image];
                if inside == usize::MAX {
                    return Err(GroupError::NotASubgroup {
                        a: m,
                        b: a,
                        product: image,
                    });
                }
                table.push(inside as u32);
            }
        }
        Ok(RightAction {
            actor: self.actor.clone(),
            module: sub.clone(),
            table,
        })
    }

    /// Pushes the action forward along a surjective projection of the module,
    /// checking that the result is well defined on classes.
    pub fn quotient_module(&self, projection: &GroupHom) -> Result<RightAction, GroupError> {
        if projection.source().as_ref() != self.module.as_ref() {
            return Err(GroupError::EndpointMismatch);
        }
        let quot = projection.target();
        let an = self.actor.order();
        let mut table = vec![u32::MAX; quot.order() * an];
        for m in self.module.elements() {
            let class = projection.apply(m);
            for a in self.actor.elements() {
                let image_class = projection.apply(self.act(m, a)) as u32;
                let slot = &mut table[class * an + a];
                if *slot == u32::MAX {
                    *slot = image_class;
                } else if *slot != image_class {
                    return Err(GroupError::NotAHomomorphism {
                        a: m,
                        b: a,
                        got: image_class as usize,
                        expected: *slot as usize,
                    });
                }
            }
        }
        Ok(RightAction {
            actor: self.actor.clone(),
            module: quot.clone(),
            table,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{cyclic, klein_four, symmetric_3};

    #[test]
    fn conjugation_is_valid() {
        let s3 = symmetric_3();
        let action = RightAction::conjugation(s3);
        assert!(action.is_valid());
        assert!(!action.is_trivial());
    }

    #[test]
    fn trivial_action_is_valid() {
        let action = RightAction::trivial(cyclic(2), cyclic(4));
        assert!(action.is_valid());
        assert!(action.is_trivial());
    }

    #[test]
    fn single_cell_perturbations_are_caught() {
        let action = RightAction::trivial(cyclic(2), cyclic(4));
        let mut rows = action.rows();
        rows[2][1] = 3; // 2^g := 3
        let broken = RightAction::new(cyclic(2), cyclic(4), &rows).unwrap();
        assert!(!broken.is_valid());
    }

    #[test]
    fn swap_action_on_klein_four() {
        let v4 = klein_four();
        let z2 = cyclic(2);
        // nontrivial element swaps the two generators (indices 1 and 2)
        let rows = vec![
            vec![0, 0],
            vec![1, 2],
            vec![2, 1],
            vec![3, 3],
        ];
        let action = RightAction::new(z2, v4, &rows).unwrap();
        assert!(action.is_valid());
        assert_eq!(action.act(1, 1), 2);
    }

    #[test]
    fn restrict_and_quotient() {
        let s3 = symmetric_3();
        let conj = RightAction::conjugation(s3.clone());
        // the rotation subgroup is invariant under conjugation
        let rotations: Vec<usize> = s3
            .elements()
            .filter(|&x| s3.element_order(x) != 2)
            .collect();
        let sub = crate::group::subgroup_of(&s3, &rotations).unwrap();
        let restricted = conj.restrict_module(&sub.inclusion).unwrap();
        assert!(restricted.is_valid());

        // an order-2 subgroup generated by a transposition is not invariant
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let bad = crate::group::subgroup_of(&s3, &[s3.identity(), t]).unwrap();
        assert!(conj.restrict_module(&bad.inclusion).is_err());

        let (_, projection) = crate::group::quotient(&s3, &rotations).unwrap();
        let descended = conj.quotient_module(&projection).unwrap();
        assert!(descended.is_valid());
        assert!(descended.is_trivial());
    }
}
