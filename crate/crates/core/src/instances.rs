//! Ready-made small groups and crossed complexes used by tests, samples and
//! the command-line tool.

use std::sync::Arc;

use crate::action::RightAction;
use crate::caps::Caps;
use crate::complex::CrossedComplex;
use crate::group::FinGroup;
use crate::hom::GroupHom;

/// The cyclic group Z/n with addition mod n.
pub fn cyclic(n: usize) -> Arc<FinGroup> {
    assert!(n >= 1);
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let labels = (0..n).map(|a| a.to_string()).collect();
    Arc::new(FinGroup::from_cayley(&table, 0, Some(labels)).expect("cyclic table"))
}

/// Klein four-group as Z/2 x Z/2; elements 0=(0,0), 1=(1,0), 2=(0,1), 3=(1,1).
pub fn klein_four() -> Arc<FinGroup> {
    let encode = |a: usize, b: usize| a + 2 * b;
    let mut table = vec![vec![0usize; 4]; 4];
    for a1 in 0..2 {
        for b1 in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    table[encode(a1, b1)][encode(a2, b2)] = encode((a1 + a2) % 2, (b1 + b2) % 2);
                }
            }
        }
    }
    let labels = vec!["e".into(), "a".into(), "b".into(), "ab".into()];
    Arc::new(FinGroup::from_cayley(&table, 0, Some(labels)).expect("klein table"))
}

/// The symmetric group on three points, from its two standard generators.
pub fn symmetric_3() -> Arc<FinGroup> {
    Arc::new(
        FinGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], &Caps::default())
            .expect("s3 closure"),
    )
}

/// The dihedral group of the square (order 8), generated by the rotation and
/// a reflection.
pub fn dihedral_4() -> Arc<FinGroup> {
    Arc::new(
        FinGroup::from_permutations(&[vec![1, 2, 3, 0], vec![1, 0, 3, 2]], &Caps::default())
            .expect("d4 closure"),
    )
}

/// The inner crossed module `[G -> G]` with the identity boundary and the
/// conjugation action. Valid for every finite group, and acyclic.
pub fn inner_module(group: &Arc<FinGroup>) -> Arc<CrossedComplex> {
    let boundary = GroupHom::identity(group);
    let action = RightAction::conjugation(group.clone());
    Arc::new(
        CrossedComplex::assemble(
            vec![group.clone(), group.clone()],
            vec![boundary],
            vec![action],
        )
        .expect("inner module shape"),
    )
}

/// The crossed module `[Z/4 -> Z/2]` with the mod-2 boundary and the trivial
/// action.
pub fn zmod_module() -> Arc<CrossedComplex> {
    let c2 = cyclic(4);
    let c1 = cyclic(2);
    let boundary = GroupHom::new(c2.clone(), c1.clone(), &[0, 1, 0, 1]).expect("mod 2");
    let action = RightAction::trivial(c1.clone(), c2.clone());
    Arc::new(
        CrossedComplex::assemble(vec![c1, c2], vec![boundary], vec![action])
            .expect("zmod shape"),
    )
}

/// A length-1 complex on a single group.
pub fn base_complex(group: &Arc<FinGroup>) -> Arc<CrossedComplex> {
    Arc::new(CrossedComplex::assemble(vec![group.clone()], vec![], vec![]).expect("base"))
}

/// A crossed complex with all boundaries trivial and all actions trivial.
///
/// Degrees 3 and up must be handed abelian groups.
pub fn zero_boundary_complex(groups: Vec<Arc<FinGroup>>) -> Arc<CrossedComplex> {
    let n = groups.len();
    let mut boundaries = Vec::new();
    let mut actions = Vec::new();
    for k in 2..=n {
        boundaries.push(GroupHom::zero(&groups[k - 1], &groups[k - 2]));
        actions.push(RightAction::trivial(groups[0].clone(), groups[k - 1].clone()));
    }
    Arc::new(
        CrossedComplex::assemble(groups, boundaries, actions).expect("zero boundary shape"),
    )
}

/// Builds a crossed module from explicit parts.
pub fn crossed_module(
    c1: Arc<FinGroup>,
    c2: Arc<FinGroup>,
    boundary: GroupHom,
    action: RightAction,
) -> Arc<CrossedComplex> {
    Arc::new(
        CrossedComplex::assemble(vec![c1, c2], vec![boundary], vec![action])
            .expect("crossed module shape"),
    )
}

/// The length-3 complex `[Z/2 -> Z/4 -> Z/2]`: top boundary embeds onto the
/// 2-torsion, next boundary is mod 2 composed with zero so the chain
/// condition holds, and all actions are trivial.
pub fn three_stage_complex() -> Arc<CrossedComplex> {
    let c1 = cyclic(2);
    let c2 = cyclic(4);
    let c3 = cyclic(2);
    let top = GroupHom::new(c3.clone(), c2.clone(), &[0, 2]).expect("2-torsion");
    let bottom = GroupHom::zero(&c2, &c1);
    let a2 = RightAction::trivial(c1.clone(), c2.clone());
    let a3 = RightAction::trivial(c1.clone(), c3.clone());
    Arc::new(
        CrossedComplex::assemble(vec![c1, c2, c3], vec![bottom, top], vec![a2, a3])
            .expect("three stage shape"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_have_expected_orders() {
        assert_eq!(cyclic(5).order(), 5);
        assert_eq!(klein_four().order(), 4);
        assert_eq!(symmetric_3().order(), 6);
        assert_eq!(dihedral_4().order(), 8);
        assert!(klein_four().is_abelian());
        assert!(!dihedral_4().is_abelian());
    }
}
