//! Iso-comma (2-categorical) fiber products and their wide versions.

use std::collections::HashMap;
use std::sync::Arc;

use super::{same, Arrow, Coordinates, FiniteGroupoid, GroupoidFunctor, GroupoidRef, NatTrans};
use crate::error::{Error, Result};

/// An object `(u_0, …, u_n; φ_1, …, φ_n)` with `φ_k: f_0(u_0) → f_k(u_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WideObject {
    pub us: Vec<usize>,
    pub phis: Vec<Arrow>,
}

/// The wide iso-comma product of maps `f_k: X_k → S`.
#[derive(Clone, Debug)]
pub struct WideProduct {
    pub base: GroupoidRef,
    pub maps: Vec<GroupoidFunctor>,
    pub groupoid: GroupoidRef,
    pub objects: Vec<WideObject>,
    index: HashMap<WideObject, usize>,
    coords: Option<Coordinates<Vec<Arrow>>>,
    pub projections: Vec<GroupoidFunctor>,
}

impl WideProduct {
    pub fn new(maps: &[GroupoidFunctor]) -> Result<WideProduct> {
        let first = maps
            .first()
            .ok_or_else(|| Error::Precondition("wide product of no maps".into()))?;
        let base = first.tgt.clone();
        if maps.iter().any(|m| !same(&m.tgt, &base)) {
            return Err(Error::Structural("maps do not share a base".into()));
        }
        if maps.len() == 1 {
            let x = first.src.clone();
            let objects: Vec<WideObject> = (0..x.num_objects())
                .map(|u| WideObject {
                    us: vec![u],
                    phis: vec![],
                })
                .collect();
            let index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
            return Ok(WideProduct {
                base,
                maps: maps.to_vec(),
                groupoid: x.clone(),
                objects,
                index,
                coords: None,
                projections: vec![GroupoidFunctor::identity(&x)],
            });
        }
        let s = &base;
        let mut objects = Vec::new();
        let mut partial: Vec<WideObject> = (0..maps[0].src.num_objects())
            .map(|u| WideObject {
                us: vec![u],
                phis: vec![],
            })
            .collect();
        for m in &maps[1..] {
            let mut next = Vec::new();
            for o in &partial {
                let a = maps[0].obj(o.us[0]);
                for u in 0..m.src.num_objects() {
                    for phi in s.hom(a, m.obj(u)) {
                        let mut o2 = o.clone();
                        o2.us.push(u);
                        o2.phis.push(phi);
                        next.push(o2);
                    }
                }
            }
            partial = next;
        }
        objects.extend(partial);
        let index: HashMap<WideObject, usize> = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let names: Vec<String> = objects.iter().map(|o| wide_name(maps, s, o)).collect();
        let factors: Vec<GroupoidRef> = maps.iter().map(|m| m.src.clone()).collect();
        let target_of = |o: &WideObject, t: &[Arrow]| -> WideObject {
            let a0 = maps[0].apply(&t[0]);
            let a0inv = s.inverse(&a0);
            WideObject {
                us: t.iter().map(|a| a.tgt).collect(),
                phis: (1..maps.len())
                    .map(|k| s.compose(&maps[k].apply(&t[k]), &s.compose(&o.phis[k - 1], &a0inv)))
                    .collect(),
            }
        };
        let arrows_from = |x: usize| -> Vec<(usize, Vec<Arrow>)> {
            let o = &objects[x];
            let lists: Vec<Vec<Arrow>> = o.us.iter().enumerate().map(|(k, &u)| factors[k].arrows_from(u)).collect();
            let mut out = Vec::new();
            let mut choice = vec![0usize; lists.len()];
            loop {
                let t: Vec<Arrow> = choice.iter().enumerate().map(|(k, &c)| lists[k][c]).collect();
                let y = index[&target_of(o, &t)];
                out.push((y, t));
                let mut i = lists.len();
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    choice[i] += 1;
                    if choice[i] < lists[i].len() {
                        break;
                    }
                    choice[i] = 0;
                }
            }
        };
        let (g, coords) = FiniteGroupoid::coordinatize(
            names,
            arrows_from,
            |b, a| b.iter().zip(a).enumerate().map(|(k, (y, x))| factors[k].compose(y, x)).collect(),
            |x| objects[x].us.iter().enumerate().map(|(k, &u)| factors[k].identity(u)).collect(),
            |t| {
                t.iter()
                    .enumerate()
                    .map(|(k, a)| factors[k].group_of(a.src).name(a.g).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            },
        );
        let groupoid = Arc::new(g);
        let mut wp = WideProduct {
            base: base.clone(),
            maps: maps.to_vec(),
            groupoid: groupoid.clone(),
            objects,
            index,
            coords: Some(coords),
            projections: vec![],
        };
        wp.projections = (0..maps.len())
            .map(|k| {
                GroupoidFunctor::from_arrow_map(
                    &groupoid,
                    &factors[k],
                    wp.objects.iter().map(|o| o.us[k]).collect(),
                    |a| wp.decode(a)[k],
                )
            })
            .collect();
        Ok(wp)
    }

    /// The binary iso-comma product of `f: Y → S` and `g: X → S`: objects `(y, x, φ: f y → g x)`.
    pub fn iso_comma(f: &GroupoidFunctor, g: &GroupoidFunctor) -> Result<WideProduct> {
        WideProduct::new(&[f.clone(), g.clone()])
    }

    pub fn arity(&self) -> usize {
        self.maps.len()
    }

    pub fn factor(&self, k: usize) -> &GroupoidRef {
        &self.maps[k].src
    }

    pub fn object_of(&self, o: &WideObject) -> Option<usize> {
        self.index.get(o).copied()
    }

    fn factors(&self) -> Vec<GroupoidRef> {
        self.maps.iter().map(|m| m.src.clone()).collect()
    }

    /// The tuple of factor arrows underlying an arrow of the product.
    pub fn decode(&self, a: &Arrow) -> Vec<Arrow> {
        match &self.coords {
            None => vec![*a],
            Some(c) => {
                let fs = self.factors();
                c.decode(
                    &self.groupoid,
                    a,
                    |b, x| b.iter().zip(x).enumerate().map(|(k, (y, z))| fs[k].compose(y, z)).collect(),
                    |t| t.iter().enumerate().map(|(k, y)| fs[k].inverse(y)).collect(),
                )
            }
        }
    }

    /// The arrow of the product with the given factor components between two objects.
    pub fn encode(&self, x: usize, y: usize, t: &[Arrow]) -> Arrow {
        match &self.coords {
            None => t[0],
            Some(c) => {
                let fs = self.factors();
                c.encode(
                    &self.groupoid,
                    x,
                    y,
                    &t.to_vec(),
                    |b, z| b.iter().zip(z).enumerate().map(|(k, (u, v))| fs[k].compose(u, v)).collect(),
                    |t| t.iter().enumerate().map(|(k, u)| fs[k].inverse(u)).collect(),
                )
            }
        }
    }

    /// `φ_k` of an object, with `φ_0` the identity.
    pub fn phi(&self, x: usize, k: usize) -> Arrow {
        let o = &self.objects[x];
        if k == 0 {
            self.base.identity(self.maps[0].obj(o.us[0]))
        } else {
            o.phis[k - 1]
        }
    }

    /// The comparison cell `f_i π_i ⇒ f_j π_j` with components `φ_j φ_i⁻¹`.
    pub fn cell(&self, i: usize, j: usize) -> NatTrans {
        let s = &self.base;
        NatTrans {
            components: (0..self.groupoid.num_objects())
                .map(|x| s.compose(&self.phi(x, j), &s.inverse(&self.phi(x, i))))
                .collect(),
        }
    }

    /// The structure map `f_0 π_0` to the base.
    pub fn to_base(&self) -> GroupoidFunctor {
        self.maps[0].after(&self.projections[0])
    }

    /// Projection to the wide product of the factors listed in `idx` (repeats allowed).
    pub fn project(&self, idx: &[usize], target: &WideProduct) -> Result<GroupoidFunctor> {
        if target.arity() != idx.len() || idx.iter().enumerate().any(|(j, &i)| target.maps[j] != self.maps[i]) {
            return Err(Error::Structural("projection target has different factors".into()));
        }
        let s = &self.base;
        let obj_map: Vec<usize> = (0..self.groupoid.num_objects())
            .map(|x| {
                let o = &self.objects[x];
                let inv0 = s.inverse(&self.phi(x, idx[0]));
                let w = WideObject {
                    us: idx.iter().map(|&i| o.us[i]).collect(),
                    phis: idx[1..].iter().map(|&i| s.compose(&self.phi(x, i), &inv0)).collect(),
                };
                target.index[&w]
            })
            .collect();
        Ok(GroupoidFunctor::from_arrow_map(&self.groupoid, &target.groupoid, obj_map.clone(), |a| {
            let t = self.decode(a);
            let sel: Vec<Arrow> = idx.iter().map(|&i| t[i]).collect();
            target.encode(obj_map[a.src], obj_map[a.tgt], &sel)
        }))
    }

    /// The 2-universal map from a cone `(T, l_k, β_k: f_0 l_0 ⇒ f_k l_k)`.
    pub fn mediate(&self, legs: &[GroupoidFunctor], cells: &[NatTrans]) -> Result<GroupoidFunctor> {
        if legs.len() != self.arity() || cells.len() + 1 != self.arity() {
            return Err(Error::Structural("cone has the wrong shape".into()));
        }
        let t = legs[0].src.clone();
        for (k, l) in legs.iter().enumerate() {
            if !same(&l.src, &t) || !same(&l.tgt, self.factor(k)) {
                return Err(Error::Structural("cone legs do not match the factors".into()));
            }
        }
        for (k, c) in cells.iter().enumerate() {
            let lhs = self.maps[0].after(&legs[0]);
            let rhs = self.maps[k + 1].after(&legs[k + 1]);
            if !c.is_natural(&lhs, &rhs) {
                return Err(Error::Precondition("cone cell is not natural".into()));
            }
        }
        let obj_map: Vec<usize> = (0..t.num_objects())
            .map(|z| {
                let w = WideObject {
                    us: legs.iter().map(|l| l.obj(z)).collect(),
                    phis: cells.iter().map(|c| c.components[z]).collect(),
                };
                self.index[&w]
            })
            .collect();
        Ok(GroupoidFunctor::from_arrow_map(&t, &self.groupoid, obj_map.clone(), |a| {
            let tup: Vec<Arrow> = legs.iter().map(|l| l.apply(a)).collect();
            self.encode(obj_map[a.src], obj_map[a.tgt], &tup)
        }))
    }
}

fn wide_name(maps: &[GroupoidFunctor], s: &FiniteGroupoid, o: &WideObject) -> String {
    let mut parts: Vec<String> = vec![maps[0].src.name(o.us[0]).to_string()];
    for k in 1..maps.len() {
        let phi = &o.phis[k - 1];
        parts.push(format!("{}:{}", maps[k].src.name(o.us[k]), s.group_of(phi.src).name(phi.g)));
        if s.num_objects() > 1 {
            let last = parts.pop().expect("part");
            parts.push(format!("{last}@{}", s.name(phi.src)));
        }
    }
    format!("({})", parts.join(";"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn classifying(g: &FiniteGroup, h: &[usize]) -> (GroupoidRef, GroupoidFunctor, GroupoidRef) {
        let (sub, incl) = g.subgroup_group(h);
        let bh = Arc::new(FiniteGroupoid::delooping(&sub));
        let bg = Arc::new(FiniteGroupoid::delooping(g));
        let f = GroupoidFunctor::from_group_hom(&bh, &bg, &incl);
        (bh, f, bg)
    }

    #[test]
    fn c2_s3_c2_components() {
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.parse_element("(12)").unwrap();
        let h = s3.generated(&[t]);
        let (_, f, _) = classifying(&s3, &h);
        let w = WideProduct::iso_comma(&f, &f).unwrap();
        let mut orders: Vec<usize> = w.groupoid.components().iter().map(|c| c.group.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2]);
        assert_eq!(w.objects.len(), 6);
    }

    #[test]
    fn c2_over_s3_times_point() {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.generated(&[s3.parse_element("(12)").unwrap()]);
        let (_, f, bg) = classifying(&s3, &h);
        let pt = Arc::new(FiniteGroupoid::point());
        let p = GroupoidFunctor::from_group_hom(&pt, &bg, &[s3.identity()]);
        let w = WideProduct::iso_comma(&f, &p).unwrap();
        assert_eq!(w.groupoid.components().len(), 3);
        assert!(w.groupoid.components().iter().all(|c| c.group.order() == 1));
    }

    #[test]
    fn projections_are_functors_and_cell_natural() {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.generated(&[s3.parse_element("(12)").unwrap()]);
        let (_, f, _) = classifying(&s3, &h);
        let w = WideProduct::iso_comma(&f, &f).unwrap();
        for p in &w.projections {
            assert!(p.validate().is_valid());
        }
        let lhs = f.after(&w.projections[0]);
        let rhs = f.after(&w.projections[1]);
        assert!(w.cell(0, 1).is_natural(&lhs, &rhs));
    }

    #[test]
    fn mediate_recovers_identity() {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.generated(&[s3.parse_element("(12)").unwrap()]);
        let (_, f, _) = classifying(&s3, &h);
        let w = WideProduct::iso_comma(&f, &f).unwrap();
        let m = w.mediate(&w.projections, &[w.cell(0, 1)]).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn projection_composition_exact() {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.generated(&[s3.parse_element("(12)").unwrap()]);
        let (_, f, _) = classifying(&s3, &h);
        let w3 = WideProduct::new(&[f.clone(), f.clone(), f.clone()]).unwrap();
        let w2 = WideProduct::new(&[f.clone(), f.clone()]).unwrap();
        let w1 = WideProduct::new(&[f.clone()]).unwrap();
        let p02 = w3.project(&[0, 2], &w2).unwrap();
        let p1 = w2.project(&[1], &w1).unwrap();
        let p2 = w3.project(&[2], &w1).unwrap();
        assert_eq!(p1.after(&p02), p2);
        assert!(p02.validate().is_valid());
    }
}
