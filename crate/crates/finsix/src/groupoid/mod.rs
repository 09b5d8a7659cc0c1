//! Finite groupoids in coordinates: each component has a representative object,
//! a chosen path to every other object, and the automorphism group of the
//! representative. The arrow `(x, y, g)` stands for `p_y ∘ g ∘ p_x⁻¹`.

mod fiber;
mod nerve;
mod skeleton;

pub use fiber::{WideObject, WideProduct};
pub use nerve::{action_groupoid, cech_nerve, ActionGroupoid, TruncatedSimplicialGroupoid};

pub use skeleton::{equivalent, skeletalize, Skeleton};

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::category::{FiniteCategory, MorphismRecord, ValidationReport};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub g: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub rep: usize,
    pub objects: Vec<usize>,
    pub group: FiniteGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    names: Vec<String>,
    comp_of: Vec<usize>,
    components: Vec<Component>,
}

pub type GroupoidRef = Arc<FiniteGroupoid>;

/// True when the two handles denote the same groupoid.
pub fn same(a: &GroupoidRef, b: &GroupoidRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FiniteGroupoid {
    pub fn point() -> FiniteGroupoid {
        FiniteGroupoid::delooping(&FiniteGroup::cyclic(1))
    }

    pub fn delooping(group: &FiniteGroup) -> FiniteGroupoid {
        FiniteGroupoid {
            names: vec!["*".into()],
            comp_of: vec![0],
            components: vec![Component {
                rep: 0,
                objects: vec![0],
                group: group.clone(),
            }],
        }
    }

    pub fn discrete(names: Vec<String>) -> FiniteGroupoid {
        let n = names.len();
        FiniteGroupoid {
            names,
            comp_of: (0..n).collect(),
            components: (0..n)
                .map(|i| Component {
                    rep: i,
                    objects: vec![i],
                    group: FiniteGroup::cyclic(1),
                })
                .collect(),
        }
    }

    pub fn discrete_n(n: usize) -> FiniteGroupoid {
        FiniteGroupoid::discrete((0..n).map(|i| i.to_string()).collect())
    }

    /// Disjoint union of deloopings.
    pub fn from_groups(groups: &[FiniteGroup]) -> FiniteGroupoid {
        FiniteGroupoid {
            names: (0..groups.len()).map(|i| format!("*{i}")).collect(),
            comp_of: (0..groups.len()).collect(),
            components: groups
                .iter()
                .enumerate()
                .map(|(i, g)| Component {
                    rep: i,
                    objects: vec![i],
                    group: g.clone(),
                })
                .collect(),
        }
    }

    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let off = self.names.len();
        let coff = self.components.len();
        let mut names = self.names.clone();
        names.extend(other.names.iter().map(|n| format!("{n}'")));
        let mut comp_of = self.comp_of.clone();
        comp_of.extend(other.comp_of.iter().map(|c| c + coff));
        let mut components = self.components.clone();
        components.extend(other.components.iter().map(|c| Component {
            rep: c.rep + off,
            objects: c.objects.iter().map(|o| o + off).collect(),
            group: c.group.clone(),
        }));
        FiniteGroupoid {
            names,
            comp_of,
            components,
        }
    }

    /// Builds coordinates from an arbitrary arrow representation.
    ///
    /// `arrows_from(x)` must list every arrow out of `x` with its target, and the
    /// closure functions must implement a groupoid on those arrows.
    pub fn coordinatize<T: Clone + Eq + Hash>(
        names: Vec<String>,
        arrows_from: impl Fn(usize) -> Vec<(usize, T)>,
        compose: impl Fn(&T, &T) -> T,
        identity: impl Fn(usize) -> T,
        elem_name: impl Fn(&T) -> String,
    ) -> (FiniteGroupoid, Coordinates<T>) {
        let n = names.len();
        let mut comp_of = vec![usize::MAX; n];
        let mut components = Vec::new();
        let mut paths: Vec<Option<T>> = vec![None; n];
        let mut elems: Vec<Vec<T>> = Vec::new();
        for x in 0..n {
            if comp_of[x] != usize::MAX {
                continue;
            }
            let c = components.len();
            let out = arrows_from(x);
            let mut objects = vec![];
            let mut autos: Vec<T> = vec![identity(x)];
            for (y, t) in &out {
                if comp_of[*y] == usize::MAX {
                    comp_of[*y] = c;
                    objects.push(*y);
                    paths[*y] = Some(if *y == x { identity(x) } else { t.clone() });
                }
                if *y == x && *t != autos[0] {
                    autos.push(t.clone());
                }
            }
            if comp_of[x] == usize::MAX {
                comp_of[x] = c;
                objects.push(x);
                paths[x] = Some(identity(x));
            }
            objects.sort_unstable();
            let index: HashMap<T, usize> = autos.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
            let m = autos.len();
            let mut table = vec![0; m * m];
            for a in 0..m {
                for b in 0..m {
                    table[a * m + b] = index[&compose(&autos[a], &autos[b])];
                }
            }
            let mut gnames: Vec<String> = autos.iter().map(&elem_name).collect();
            gnames[0] = "e".into();
            let group = FiniteGroup::from_flat_unchecked(gnames, table);
            components.push(Component {
                rep: x,
                objects,
                group,
            });
            elems.push(autos);
        }
        let paths: Vec<T> = paths.into_iter().map(|p| p.expect("path")).collect();
        let groupoid = FiniteGroupoid {
            names,
            comp_of,
            components,
        };
        let elem_index = elems
            .iter()
            .map(|v| v.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        (
            groupoid,
            Coordinates {
                paths,
                elems,
                elem_index,
            },
        )
    }

    /// Reads a groupoid from a table category, rejecting non-invertible morphisms.
    pub fn from_category(cat: &FiniteCategory) -> Result<(FiniteGroupoid, Coordinates<usize>)> {
        cat.validate().into_result()?;
        let mut inverse = vec![0; cat.num_morphisms()];
        for (f, slot) in inverse.iter_mut().enumerate() {
            *slot = cat
                .inverse_of(f)
                .ok_or_else(|| Error::Axiom(format!("morphism {} has no inverse", cat.mor_name(f))))?;
        }
        let out = |x: usize| -> Vec<(usize, usize)> {
            (0..cat.num_morphisms())
                .filter(|&f| cat.src(f) == x)
                .map(|f| (cat.tgt(f), f))
                .collect()
        };
        Ok(FiniteGroupoid::coordinatize(
            cat.object_names().to_vec(),
            out,
            |g, f| cat.comp(*g, *f).expect("composable"),
            |x| cat.id_of(x),
            |f| cat.mor_name(*f).to_string(),
        ))
    }

    /// The groupoid as an explicit table category (all arrows enumerated).
    pub fn to_category(&self) -> FiniteCategory {
        let arrows = self.all_arrows();
        let index: HashMap<Arrow, usize> = arrows.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let morphisms = arrows
            .iter()
            .map(|a| MorphismRecord {
                name: self.arrow_name(a),
                source: a.src,
                target: a.tgt,
            })
            .collect();
        let identity = (0..self.num_objects()).map(|x| index[&self.identity(x)]).collect();
        FiniteCategory::from_fn(self.names.clone(), morphisms, identity, |g, f| {
            index[&self.compose(&arrows[g], &arrows[f])]
        })
    }

    pub fn num_objects(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }
    pub fn components(&self) -> &[Component] {
        &self.components
    }
    pub fn component_of(&self, x: usize) -> usize {
        self.comp_of[x]
    }
    pub fn component(&self, x: usize) -> &Component {
        &self.components[self.comp_of[x]]
    }
    pub fn rep_of(&self, x: usize) -> usize {
        self.component(x).rep
    }
    pub fn group_of(&self, x: usize) -> &FiniteGroup {
        &self.component(x).group
    }
    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn num_arrows(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.objects.len() * c.objects.len() * c.group.order())
            .sum()
    }

    pub fn max_aut_order(&self) -> usize {
        self.components.iter().map(|c| c.group.order()).max().unwrap_or(1)
    }

    pub fn identity(&self, x: usize) -> Arrow {
        Arrow {
            src: x,
            tgt: x,
            g: self.group_of(x).identity(),
        }
    }

    /// The chosen path from the representative of `x`'s component to `x`.
    pub fn path(&self, x: usize) -> Arrow {
        Arrow {
            src: self.rep_of(x),
            tgt: x,
            g: self.group_of(x).identity(),
        }
    }

    pub fn auto(&self, comp: usize, g: usize) -> Arrow {
        let r = self.components[comp].rep;
        Arrow { src: r, tgt: r, g }
    }

    /// `b ∘ a`.
    pub fn compose(&self, b: &Arrow, a: &Arrow) -> Arrow {
        assert_eq!(a.tgt, b.src, "arrows not composable");
        Arrow {
            src: a.src,
            tgt: b.tgt,
            g: self.group_of(a.src).mul(b.g, a.g),
        }
    }

    pub fn try_compose(&self, b: &Arrow, a: &Arrow) -> Option<Arrow> {
        (a.tgt == b.src).then(|| self.compose(b, a))
    }

    pub fn inverse(&self, a: &Arrow) -> Arrow {
        Arrow {
            src: a.tgt,
            tgt: a.src,
            g: self.group_of(a.src).inv(a.g),
        }
    }

    pub fn is_valid_arrow(&self, a: &Arrow) -> bool {
        a.src < self.num_objects()
            && a.tgt < self.num_objects()
            && self.comp_of[a.src] == self.comp_of[a.tgt]
            && a.g < self.group_of(a.src).order()
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<Arrow> {
        if self.comp_of[x] != self.comp_of[y] {
            return vec![];
        }
        self.group_of(x).elements().map(|g| Arrow { src: x, tgt: y, g }).collect()
    }

    pub fn arrows_from(&self, x: usize) -> Vec<Arrow> {
        let c = self.component(x);
        c.objects
            .iter()
            .flat_map(|&y| c.group.elements().map(move |g| Arrow { src: x, tgt: y, g }))
            .collect()
    }

    pub fn all_arrows(&self) -> Vec<Arrow> {
        (0..self.num_objects()).flat_map(|x| self.arrows_from(x)).collect()
    }

    pub fn arrow_name(&self, a: &Arrow) -> String {
        format!("{}>{}[{}]", self.names[a.src], self.names[a.tgt], self.group_of(a.src).name(a.g))
    }

    /// Checks that the component data is internally consistent.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        if self.comp_of.len() != self.names.len() {
            rep.push("component-map", "component map not total");
            return rep;
        }
        for (ci, c) in self.components.iter().enumerate() {
            if !c.objects.contains(&c.rep) {
                rep.push("representative", format!("component {ci} misses its representative"));
            }
            for &o in &c.objects {
                if self.comp_of.get(o) != Some(&ci) {
                    rep.push("component-map", format!("object {o} listed in component {ci}"));
                }
            }
        }
        rep
    }

    /// Labels matching the semisimplicity gate: every automorphism order invertible.
    pub fn gate(&self, field: crate::field::Field) -> Result<()> {
        for c in &self.components {
            if !field.admits_order(c.group.order()) {
                return Err(Error::Gate(format!(
                    "characteristic {} divides |Aut({})| = {}",
                    field.characteristic(),
                    self.names[c.rep],
                    c.group.order()
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "groupoid with {} objects, components [", self.num_objects())?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}x|{}|", c.objects.len(), c.group.order())?;
        }
        write!(f, "]")
    }
}

/// Translation between an external arrow representation and coordinates.
#[derive(Clone, Debug)]
pub struct Coordinates<T: Clone + Eq + Hash> {
    pub paths: Vec<T>,
    pub elems: Vec<Vec<T>>,
    pub elem_index: Vec<HashMap<T, usize>>,
}

impl<T: Clone + Eq + Hash> Coordinates<T> {
    /// Coordinates of an external arrow `t: x → y`, given composition and inverse.
    pub fn encode(
        &self,
        g: &FiniteGroupoid,
        x: usize,
        y: usize,
        t: &T,
        compose: impl Fn(&T, &T) -> T,
        inverse: impl Fn(&T) -> T,
    ) -> Arrow {
        let c = g.component_of(x);
        let core = compose(&inverse(&self.paths[y]), &compose(t, &self.paths[x]));
        Arrow {
            src: x,
            tgt: y,
            g: self.elem_index[c][&core],
        }
    }

    pub fn decode(&self, g: &FiniteGroupoid, a: &Arrow, compose: impl Fn(&T, &T) -> T, inverse: impl Fn(&T) -> T) -> T {
        let c = g.component_of(a.src);
        compose(&self.paths[a.tgt], &compose(&self.elems[c][a.g], &inverse(&self.paths[a.src])))
    }
}

/// A random essentially surjective map onto `x`: each component receives one or two
/// deloopings of random subgroups, included at the representative.
pub fn random_surjection<R: rand::Rng>(x: &GroupoidRef, rng: &mut R) -> GroupoidFunctor {
    let mut groups = Vec::new();
    let mut targets = Vec::new();
    let mut embeds = Vec::new();
    for comp in x.components() {
        let subs = comp.group.subgroups();
        for _ in 0..rng.gen_range(1..=2) {
            let h = &subs[rng.gen_range(0..subs.len())];
            let (grp, emb) = comp.group.subgroup_group(h);
            groups.push(grp);
            targets.push(comp.rep);
            embeds.push(emb);
        }
    }
    let y: GroupoidRef = Arc::new(FiniteGroupoid::from_groups(&groups));
    GroupoidFunctor::from_arrow_map(&y, x, targets.clone(), |a| Arrow {
        src: targets[a.src],
        tgt: targets[a.tgt],
        g: embeds[a.src][a.g],
    })
}

/// A functor of groupoids, stored by its values on paths and automorphisms.
#[derive(Clone, Debug)]
pub struct GroupoidFunctor {
    pub src: GroupoidRef,
    pub tgt: GroupoidRef,
    pub obj_map: Vec<usize>,
    /// Image of the path `p_y` for every source object.
    pub path_img: Vec<Arrow>,
    /// Image of every automorphism of each source representative.
    pub grp_img: Vec<Vec<Arrow>>,
}

impl PartialEq for GroupoidFunctor {
    fn eq(&self, other: &Self) -> bool {
        same(&self.src, &other.src)
            && same(&self.tgt, &other.tgt)
            && self.obj_map == other.obj_map
            && self.path_img == other.path_img
            && self.grp_img == other.grp_img
    }
}

impl GroupoidFunctor {
    pub fn identity(x: &GroupoidRef) -> GroupoidFunctor {
        GroupoidFunctor::from_arrow_map(x, x, (0..x.num_objects()).collect(), |a| *a)
    }

    /// Builds a functor from an object map and an arrow map (evaluated on generators).
    pub fn from_arrow_map(
        src: &GroupoidRef,
        tgt: &GroupoidRef,
        obj_map: Vec<usize>,
        arrow: impl Fn(&Arrow) -> Arrow,
    ) -> GroupoidFunctor {
        let path_img = (0..src.num_objects()).map(|y| arrow(&src.path(y))).collect();
        let grp_img = (0..src.components().len())
            .map(|c| src.components()[c].group.elements().map(|g| arrow(&src.auto(c, g))).collect())
            .collect();
        GroupoidFunctor {
            src: src.clone(),
            tgt: tgt.clone(),
            obj_map,
            path_img,
            grp_img,
        }
    }

    /// Constant functor at an object.
    pub fn constant(src: &GroupoidRef, tgt: &GroupoidRef, obj: usize) -> GroupoidFunctor {
        let id = tgt.identity(obj);
        GroupoidFunctor::from_arrow_map(src, tgt, vec![obj; src.num_objects()], |_| id)
    }

    /// The map to the point.
    pub fn to_point(src: &GroupoidRef, point: &GroupoidRef) -> GroupoidFunctor {
        GroupoidFunctor::constant(src, point, 0)
    }

    /// A group homomorphism as a functor of deloopings.
    pub fn from_group_hom(src: &GroupoidRef, tgt: &GroupoidRef, hom: &[usize]) -> GroupoidFunctor {
        GroupoidFunctor::from_arrow_map(src, tgt, vec![0; src.num_objects()], |a| Arrow {
            src: 0,
            tgt: 0,
            g: hom[a.g],
        })
    }

    pub fn obj(&self, y: usize) -> usize {
        self.obj_map[y]
    }

    pub fn apply(&self, a: &Arrow) -> Arrow {
        let c = self.src.component_of(a.src);
        let t = &self.tgt;
        let core = &self.grp_img[c][a.g];
        t.compose(&self.path_img[a.tgt], &t.compose(core, &t.inverse(&self.path_img[a.src])))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupoidFunctor) -> GroupoidFunctor {
        assert!(same(&first.tgt, &self.src), "functors not composable");
        GroupoidFunctor {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            obj_map: first.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            path_img: first.path_img.iter().map(|a| self.apply(a)).collect(),
            grp_img: first.grp_img.iter().map(|v| v.iter().map(|a| self.apply(a)).collect()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        same(&self.src, &self.tgt) && *self == GroupoidFunctor::identity(&self.src)
    }

    /// Checks endpoints and that automorphism images form group homomorphisms.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let (s, t) = (&self.src, &self.tgt);
        if self.obj_map.len() != s.num_objects() || self.obj_map.iter().any(|&x| x >= t.num_objects()) {
            rep.push("object-map", "object map not total");
            return rep;
        }
        for y in 0..s.num_objects() {
            let p = self.path_img[y];
            if !t.is_valid_arrow(&p) || p.src != self.obj_map[s.rep_of(y)] || p.tgt != self.obj_map[y] {
                rep.push("endpoints", format!("path image at {} has wrong endpoints", s.name(y)));
            }
        }
        for (c, comp) in s.components().iter().enumerate() {
            let r = self.obj_map[comp.rep];
            for a in comp.group.elements() {
                let img = self.grp_img[c][a];
                if img.src != r || img.tgt != r || !t.is_valid_arrow(&img) {
                    rep.push("endpoints", format!("automorphism image in component {c}"));
                    continue;
                }
                for b in comp.group.elements() {
                    let lhs = self.grp_img[c][comp.group.mul(a, b)];
                    let rhs = t.compose(&img, &self.grp_img[c][b]);
                    if lhs != rhs {
                        rep.push("composition", format!("automorphisms {a},{b} of component {c}"));
                    }
                }
            }
            if self.grp_img[c][comp.group.identity()] != t.identity(r) {
                rep.push("identity", format!("identity of component {c}"));
            }
        }
        rep
    }
}

/// A natural transformation `F ⇒ G` of groupoid functors (always invertible).
#[derive(Clone, Debug, PartialEq)]
pub struct NatTrans {
    pub components: Vec<Arrow>,
}

impl NatTrans {
    pub fn identity(f: &GroupoidFunctor) -> NatTrans {
        NatTrans {
            components: (0..f.src.num_objects()).map(|y| f.tgt.identity(f.obj(y))).collect(),
        }
    }

    pub fn is_natural(&self, f: &GroupoidFunctor, g: &GroupoidFunctor) -> bool {
        let (s, t) = (&f.src, &f.tgt);
        if self.components.len() != s.num_objects() {
            return false;
        }
        for y in 0..s.num_objects() {
            let a = self.components[y];
            if a.src != f.obj(y) || a.tgt != g.obj(y) {
                return false;
            }
        }
        let check = |a: &Arrow| {
            t.compose(&g.apply(a), &self.components[a.src]) == t.compose(&self.components[a.tgt], &f.apply(a))
        };
        (0..s.num_objects()).all(|y| check(&s.path(y)))
            && (0..s.components().len()).all(|c| s.components()[c].group.elements().all(|g| check(&s.auto(c, g))))
    }

    pub fn inverse(&self, t: &FiniteGroupoid) -> NatTrans {
        NatTrans {
            components: self.components.iter().map(|a| t.inverse(a)).collect(),
        }
    }

    /// Vertical composite `other ∘ self`.
    pub fn then(&self, other: &NatTrans, t: &FiniteGroupoid) -> NatTrans {
        NatTrans {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| t.compose(b, a))
                .collect(),
        }
    }

    /// Precomposition with a functor: `(α h)_z = α_{h z}`.
    pub fn whisker_right(&self, h: &GroupoidFunctor) -> NatTrans {
        NatTrans {
            components: h.obj_map.iter().map(|&y| self.components[y]).collect(),
        }
    }

    /// Postcomposition with a functor: `(k α)_y = k(α_y)`.
    pub fn whisker_left(&self, k: &GroupoidFunctor) -> NatTrans {
        NatTrans {
            components: self.components.iter().map(|a| k.apply(a)).collect(),
        }
    }
}

/// Converts a table functor between table groupoids into coordinates.
pub fn functor_from_table(
    src_cat: &FiniteCategory,
    tgt_cat: &FiniteCategory,
    table: &crate::category::Functor,
) -> Result<GroupoidFunctor> {
    let rep = table.validate(src_cat, tgt_cat)?;
    rep.into_result()?;
    let (s, cs) = FiniteGroupoid::from_category(src_cat)?;
    let (t, ct) = FiniteGroupoid::from_category(tgt_cat)?;
    let s = Arc::new(s);
    let t = Arc::new(t);
    let scomp = |g: &usize, f: &usize| src_cat.comp(*g, *f).expect("composable");
    let sinv = |f: &usize| src_cat.inverse_of(*f).expect("invertible");
    let tcomp = |g: &usize, f: &usize| tgt_cat.comp(*g, *f).expect("composable");
    let tinv = |f: &usize| tgt_cat.inverse_of(*f).expect("invertible");
    let f = GroupoidFunctor::from_arrow_map(&s, &t, table.obj_map.clone(), |a| {
        let m = cs.decode(&s, a, scomp, sinv);
        let img = table.mor_map[m];
        ct.encode(&t, table.obj_map[a.src], table.obj_map[a.tgt], &img, tcomp, tinv)
    });
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::samples;

    #[test]
    fn delooping_roundtrip() {
        let g = FiniteGroupoid::delooping(&FiniteGroup::symmetric(3));
        assert_eq!(g.num_arrows(), 6);
        let cat = g.to_category();
        assert!(cat.validate().is_valid());
        let (back, _) = FiniteGroupoid::from_category(&cat).unwrap();
        assert_eq!(back.components()[0].group.order(), 6);
    }

    #[test]
    fn non_groupoid_rejected() {
        assert!(FiniteGroupoid::from_category(&samples::chain3()).is_err());
    }

    #[test]
    fn identity_functor_acts_trivially() {
        let g = Arc::new(FiniteGroupoid::discrete_n(2).disjoint_union(&FiniteGroupoid::delooping(&FiniteGroup::cyclic(3))));
        let id = GroupoidFunctor::identity(&g);
        assert!(id.validate().is_valid());
        for a in g.all_arrows() {
            assert_eq!(id.apply(&a), a);
        }
        assert!(id.is_identity());
    }

    #[test]
    fn sign_functor_valid() {
        let s3 = FiniteGroup::symmetric(3);
        let c2 = FiniteGroup::cyclic(2);
        let sign: Vec<usize> = s3
            .elements()
            .map(|g| {
                let p = s3.permutation(g).unwrap();
                let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                inversions % 2
            })
            .collect();
        let a = Arc::new(FiniteGroupoid::delooping(&s3));
        let b = Arc::new(FiniteGroupoid::delooping(&c2));
        let f = GroupoidFunctor::from_group_hom(&a, &b, &sign);
        assert!(f.validate().is_valid());
        let table = crate::category::Functor {
            obj_map: vec![0],
            mor_map: sign.clone(),
        };
        let rep = table.validate(&a.to_category(), &b.to_category()).unwrap();
        assert!(rep.is_valid());
    }
}
