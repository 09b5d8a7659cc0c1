use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{GroupoidFunctor, WideProduct};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexKind {
    /// Pairs `([n], i•)` with `i• ∈ I^{n+1}`.
    Delta,
    /// Non-empty subsets of `I`.
    Power,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentIndex {
    pub kind: IndexKind,
    pub size: usize,
    pub truncation: usize,
    /// Index tuples; subsets are listed increasingly.
    pub objects: Vec<Vec<usize>>,
}

fn tuples(size: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Monotone maps `[m] → [n]`.
fn monotone(m: usize, n: usize) -> Vec<Vec<usize>> {
    tuples(n + 1, m + 1)
        .into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

impl DescentIndex {
    pub fn new(size: usize, kind: IndexKind, truncation: usize) -> Result<DescentIndex> {
        if size == 0 {
            return Err(Error::Precondition("index set must be non-empty".into()));
        }
        let objects = match kind {
            IndexKind::Delta => (0..=truncation).flat_map(|n| tuples(size, n + 1)).collect(),
            IndexKind::Power => (1u64..(1 << size))
                .map(|mask| (0..size).filter(|i| mask >> i & 1 == 1).collect())
                .collect(),
        };
        Ok(DescentIndex {
            kind,
            size,
            truncation,
            objects,
        })
    }

    pub fn level(&self, n: usize) -> Vec<&Vec<usize>> {
        self.objects.iter().filter(|o| o.len() == n + 1).collect()
    }

    /// Morphisms `a → b` as index maps `α` with `b[α(k)] = a[k]`.
    pub fn hom(&self, a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
        match self.kind {
            IndexKind::Delta => monotone(a.len() - 1, b.len() - 1)
                .into_iter()
                .filter(|al| al.iter().enumerate().all(|(k, &v)| b[v] == a[k]))
                .collect(),
            IndexKind::Power => {
                let pos: Option<Vec<usize>> = a.iter().map(|x| b.iter().position(|y| y == x)).collect();
                pos.into_iter().collect()
            }
        }
    }

    pub fn num_morphisms(&self) -> usize {
        self.objects.iter().map(|a| self.objects.iter().map(|b| self.hom(a, b).len()).sum::<usize>()).sum()
    }

    /// `U_{i₀} ×_U ⋯ ×_U U_{iₙ}` for every object.
    pub fn attach(&self, cover: &[GroupoidFunctor]) -> Result<Vec<WideProduct>> {
        if cover.len() != self.size {
            return Err(Error::Structural("cover has the wrong number of pieces".into()));
        }
        self.objects
            .iter()
            .map(|o| WideProduct::new(&o.iter().map(|&i| cover[i].clone()).collect::<Vec<_>>()))
            .collect()
    }

    /// The map `U_b → U_a` induced by a morphism `α: a → b`.
    pub fn transition(&self, powers: &[WideProduct], a: usize, b: usize, alpha: &[usize]) -> Result<GroupoidFunctor> {
        powers[b].project(alpha, &powers[a])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::{cech_nerve, equivalent, FiniteGroupoid};
    use std::sync::Arc;

    #[test]
    fn counts() {
        let d = DescentIndex::new(2, IndexKind::Delta, 1).unwrap();
        assert_eq!(d.level(0).len(), 2);
        assert_eq!(d.level(1).len(), 4);
        assert_eq!(DescentIndex::new(3, IndexKind::Power, 0).unwrap().objects.len(), 7);
        let one = DescentIndex::new(1, IndexKind::Delta, 3).unwrap();
        assert!((0..=3).all(|n| one.level(n).len() == 1));
        // faces and degeneracies between [0] and [1]
        assert_eq!(one.hom(&[0], &[0, 0]).len(), 2);
        assert_eq!(one.hom(&[0, 0], &[0]).len(), 1);
        assert!(DescentIndex::new(0, IndexKind::Delta, 1).is_err());
    }

    #[test]
    fn single_piece_is_cech() {
        let pt = Arc::new(FiniteGroupoid::point());
        let bc2 = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)));
        let f = GroupoidFunctor::from_group_hom(&pt, &bc2, &[0]);
        let ix = DescentIndex::new(1, IndexKind::Delta, 2).unwrap();
        let powers = ix.attach(&[f.clone()]).unwrap();
        let nerve = cech_nerve(&f, 2).unwrap();
        for (p, l) in powers.iter().zip(&nerve.levels) {
            assert!(equivalent(&p.groupoid, &l.groupoid));
        }
        let t = ix.transition(&powers, 0, 1, &[1]).unwrap();
        assert_eq!(t, nerve.faces[1][0]);
    }

    #[test]
    fn power_transitions() {
        let u = Arc::new(FiniteGroupoid::point());
        let pieces = vec![GroupoidFunctor::identity(&u); 3];
        let ix = DescentIndex::new(3, IndexKind::Power, 0).unwrap();
        let powers = ix.attach(&pieces).unwrap();
        let a = ix.objects.iter().position(|o| o == &vec![1]).unwrap();
        let b = ix.objects.iter().position(|o| o == &vec![0, 1, 2]).unwrap();
        let al = ix.hom(&ix.objects[a], &ix.objects[b]);
        assert_eq!(al, vec![vec![1]]);
        assert!(ix.transition(&powers, a, b, &al[0]).is_ok());
        assert_eq!(ix.num_morphisms(), 19);
    }
}
