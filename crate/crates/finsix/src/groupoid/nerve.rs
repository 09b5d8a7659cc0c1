//! Action groupoids and truncated Čech nerves.

use std::sync::Arc;

use super::{Arrow, FiniteGroupoid, GroupoidFunctor, GroupoidRef, WideProduct};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// The quotient stack `X//G` with its map to `*/G`.
#[derive(Clone, Debug)]
pub struct ActionGroupoid {
    pub groupoid: GroupoidRef,
    pub to_delooping: GroupoidFunctor,
    pub delooping: GroupoidRef,
}

/// `action[g][x] = g·x`. Checks `e·x = x` and `g(g′x) = (gg′)x`.
pub fn action_groupoid(group: &FiniteGroup, points: &[String], action: &[Vec<usize>]) -> Result<ActionGroupoid> {
    let n = points.len();
    if action.len() != group.order() || action.iter().any(|r| r.len() != n || r.iter().any(|&y| y >= n)) {
        return Err(Error::Structural("action table has the wrong shape".into()));
    }
    for x in 0..n {
        if action[group.identity()][x] != x {
            return Err(Error::Axiom(format!("identity moves {}", points[x])));
        }
        for g in group.elements() {
            for h in group.elements() {
                if action[g][action[h][x]] != action[group.mul(g, h)][x] {
                    return Err(Error::Axiom(format!(
                        "compatibility fails at ({}, {}, {})",
                        group.name(g),
                        group.name(h),
                        points[x]
                    )));
                }
            }
        }
    }
    // arrows are pairs (g, x): x → g·x
    let (gd, coords) = FiniteGroupoid::coordinatize(
        points.to_vec(),
        |x| group.elements().map(|g| (action[g][x], (g, x))).collect(),
        |b: &(usize, usize), a: &(usize, usize)| (group.mul(b.0, a.0), a.1),
        |x| (group.identity(), x),
        |t| group.name(t.0).to_string(),
    );
    let gd = Arc::new(gd);
    let bg = Arc::new(FiniteGroupoid::delooping(group));
    let f = GroupoidFunctor::from_arrow_map(&gd, &bg, vec![0; n], |a| {
        let t = coords.decode(
            &gd,
            a,
            |b, a| (group.mul(b.0, a.0), a.1),
            |t| (group.inv(t.0), action[t.0][t.1]),
        );
        Arrow {
            src: 0,
            tgt: 0,
            g: t.0,
        }
    });
    Ok(ActionGroupoid {
        groupoid: gd,
        to_delooping: f,
        delooping: bg,
    })
}

/// Levels `0..=N` of the Čech nerve with face and degeneracy functors.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialGroupoid {
    pub levels: Vec<WideProduct>,
    /// `faces[n][i]`: level `n` → level `n−1`, deleting index `i` (for `n ≥ 1`).
    pub faces: Vec<Vec<GroupoidFunctor>>,
    /// `degeneracies[n][i]`: level `n` → level `n+1`, repeating index `i`.
    pub degeneracies: Vec<Vec<GroupoidFunctor>>,
}

pub fn cech_nerve(f: &GroupoidFunctor, n: i64) -> Result<TruncatedSimplicialGroupoid> {
    if n < 0 {
        return Err(Error::Precondition("truncation level must be nonnegative".into()));
    }
    let n = n as usize;
    let levels: Vec<WideProduct> = (0..=n)
        .map(|k| WideProduct::new(&vec![f.clone(); k + 1]))
        .collect::<Result<_>>()?;
    let mut faces = vec![vec![]];
    for k in 1..=n {
        let mut v = Vec::new();
        for i in 0..=k {
            let idx: Vec<usize> = (0..=k).filter(|&j| j != i).collect();
            v.push(levels[k].project(&idx, &levels[k - 1])?);
        }
        faces.push(v);
    }
    let mut degeneracies = Vec::new();
    for k in 0..n {
        let mut v = Vec::new();
        for i in 0..=k {
            let mut idx: Vec<usize> = (0..=k).collect();
            idx.insert(i, i);
            v.push(levels[k].project(&idx, &levels[k + 1])?);
        }
        degeneracies.push(v);
    }
    degeneracies.push(vec![]);
    Ok(TruncatedSimplicialGroupoid {
        levels,
        faces,
        degeneracies,
    })
}

impl TruncatedSimplicialGroupoid {
    /// Lists every simplicial identity that fails on the nose.
    pub fn simplicial_identity_failures(&self) -> Vec<String> {
        let n = self.levels.len() - 1;
        let d = |k: usize, i: usize| &self.faces[k][i];
        let s = |k: usize, i: usize| &self.degeneracies[k][i];
        let mut bad = Vec::new();
        for k in 2..=n {
            for j in 0..=k {
                for i in 0..j {
                    // d_i d_j = d_{j-1} d_i
                    if d(k - 1, i).after(d(k, j)) != d(k - 1, j - 1).after(d(k, i)) {
                        bad.push(format!("d{i}d{j} at level {k}"));
                    }
                }
            }
        }
        for k in 0..n {
            for j in 0..=k {
                for i in 0..=j {
                    if k + 1 < n && s(k + 1, i).after(s(k, j)) != s(k + 1, j + 1).after(s(k, i)) {
                        bad.push(format!("s{i}s{j} at level {k}"));
                    }
                }
            }
            for j in 0..=k {
                for i in 0..=k + 1 {
                    let lhs = d(k + 1, i).after(s(k, j));
                    let rhs = if i < j {
                        s(k - 1, j - 1).after(d(k, i))
                    } else if i == j || i == j + 1 {
                        GroupoidFunctor::identity(&self.levels[k].groupoid)
                    } else {
                        s(k - 1, j).after(d(k, i - 1))
                    };
                    if lhs != rhs {
                        bad.push(format!("d{i}s{j} at level {k}"));
                    }
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::equivalent;

    #[test]
    fn swap_action_is_contractible() {
        let c2 = FiniteGroup::cyclic(2);
        let pts = vec!["a".to_string(), "b".to_string()];
        let act = vec![vec![0, 1], vec![1, 0]];
        let ag = action_groupoid(&c2, &pts, &act).unwrap();
        assert_eq!(ag.groupoid.components().len(), 1);
        assert_eq!(ag.groupoid.components()[0].group.order(), 1);
        assert_eq!(ag.groupoid.num_arrows(), 4);
        assert!(ag.to_delooping.validate().is_valid());
    }

    #[test]
    fn bad_action_rejected() {
        let c2 = FiniteGroup::cyclic(2);
        let pts = vec!["a".to_string(), "b".to_string()];
        assert!(action_groupoid(&c2, &pts, &[vec![1, 0], vec![1, 0]]).is_err());
    }

    #[test]
    fn point_to_bc2_nerve() {
        let pt = Arc::new(FiniteGroupoid::point());
        let bc2 = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)));
        let f = GroupoidFunctor::from_group_hom(&pt, &bc2, &[0]);
        let nerve = cech_nerve(&f, 2).unwrap();
        for (k, size) in [1usize, 2, 4].iter().enumerate() {
            let disc = FiniteGroupoid::discrete_n(*size);
            assert!(equivalent(&nerve.levels[k].groupoid, &disc));
        }
        assert!(nerve.simplicial_identity_failures().is_empty());
    }
}
