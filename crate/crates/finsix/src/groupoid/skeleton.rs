//! Skeleta: one object per component, with the comparison equivalence.

use std::sync::Arc;

use super::{Arrow, FiniteGroupoid, GroupoidFunctor, GroupoidRef, NatTrans};

#[derive(Clone, Debug)]
pub struct Skeleton {
    pub skeleton: GroupoidRef,
    pub inclusion: GroupoidFunctor,
    pub retraction: GroupoidFunctor,
    /// `id ⇒ inclusion ∘ retraction`; the other composite is the identity on the nose.
    pub unit: NatTrans,
}

pub fn skeletalize(g: &GroupoidRef) -> Skeleton {
    let comps = g.components();
    let sk = FiniteGroupoid {
        names: comps.iter().map(|c| g.name(c.rep).to_string()).collect(),
        comp_of: (0..comps.len()).collect(),
        components: comps
            .iter()
            .enumerate()
            .map(|(i, c)| super::Component {
                rep: i,
                objects: vec![i],
                group: c.group.clone(),
            })
            .collect(),
    };
    let sk = Arc::new(sk);
    let reps: Vec<usize> = comps.iter().map(|c| c.rep).collect();
    let inclusion = GroupoidFunctor::from_arrow_map(&sk, g, reps.clone(), |a| Arrow {
        src: reps[a.src],
        tgt: reps[a.tgt],
        g: a.g,
    });
    let comp_of: Vec<usize> = (0..g.num_objects()).map(|x| g.component_of(x)).collect();
    let retraction = GroupoidFunctor::from_arrow_map(g, &sk, comp_of.clone(), |a| Arrow {
        src: comp_of[a.src],
        tgt: comp_of[a.tgt],
        g: a.g,
    });
    let unit = NatTrans {
        components: (0..g.num_objects())
            .map(|x| Arrow {
                src: x,
                tgt: g.rep_of(x),
                g: g.group_of(x).identity(),
            })
            .collect(),
    };
    Skeleton {
        skeleton: sk,
        inclusion,
        retraction,
        unit,
    }
}

/// Equivalence test: the components can be matched with isomorphic automorphism groups.
pub fn equivalent(a: &FiniteGroupoid, b: &FiniteGroupoid) -> bool {
    let (ca, cb) = (a.components(), b.components());
    if ca.len() != cb.len() {
        return false;
    }
    let mut used = vec![false; cb.len()];
    // greedy matching is enough since isomorphism is an equivalence relation
    for c in ca {
        match (0..cb.len()).find(|&j| !used[j] && c.group.find_isomorphism(&cb[j].group).is_some()) {
            Some(j) => used[j] = true,
            None => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn skeleton_of_action_groupoid() {
        let c3 = FiniteGroup::cyclic(3);
        let pts: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let act: Vec<Vec<usize>> = c3
            .elements()
            .map(|g| (0..4).map(|x| if x < 3 { (x + g) % 3 } else { 3 }).collect())
            .collect();
        let ag = super::super::action_groupoid(&c3, &pts, &act).unwrap();
        let sk = skeletalize(&ag.groupoid);
        assert_eq!(sk.skeleton.num_objects(), 2);
        assert!(sk.retraction.after(&sk.inclusion).is_identity());
        let ir = sk.inclusion.after(&sk.retraction);
        assert!(sk.unit.is_natural(&GroupoidFunctor::identity(&ag.groupoid), &ir));
        assert!(equivalent(&ag.groupoid, &FiniteGroupoid::from_groups(&[FiniteGroup::cyclic(1), c3])));
    }
}
