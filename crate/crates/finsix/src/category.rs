//! Finite categories given by tables, functors between them, finite sets, and pullbacks.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A machine-readable axiom violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
    pub fn push(&mut self, code: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            code: code.to_string(),
            detail: detail.into(),
        });
    }
    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::Axiom(format!("{}: {}", v.code, v.detail))),
        }
    }
}

/// Interface shared by table categories and the category of finite sets.
pub trait Category {
    type Obj: Clone + Eq + Ord + Debug;
    type Mor: Clone + Eq + Ord + Debug;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`, or `None` when not composable.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor>;
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Mor>;
    fn objects(&self) -> Vec<Self::Obj>;
    fn is_iso(&self, f: &Self::Mor) -> bool;

    /// Canonical pullback of `f: X → S ← Y: g` as `(P, p1: P → X, p2: P → Y)`.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Option<(Self::Obj, Self::Mor, Self::Mor)>;

    /// The unique `u` with `p1∘u = q1`, `p2∘u = q2`, if it exists.
    fn mediate(
        &self,
        cone: &(Self::Obj, Self::Mor, Self::Mor),
        q1: &Self::Mor,
        q2: &Self::Mor,
    ) -> Option<Self::Mor>;

    /// An isomorphism `h: z1 → z2` with `legs2[i] ∘ h = legs1[i]` for all `i`.
    fn find_iso_over(
        &self,
        z1: &Self::Obj,
        legs1: &[Self::Mor],
        z2: &Self::Obj,
        legs2: &[Self::Mor],
    ) -> Option<Self::Mor>;

    fn terminal(&self) -> Option<Self::Obj>;

    /// Unique morphism to the terminal object.
    fn to_terminal(&self, x: &Self::Obj) -> Option<Self::Mor> {
        let t = self.terminal()?;
        self.hom(x, &t).into_iter().next()
    }

    fn product(&self, x: &Self::Obj, y: &Self::Obj) -> Option<(Self::Obj, Self::Mor, Self::Mor)> {
        let f = self.to_terminal(x)?;
        let g = self.to_terminal(y)?;
        self.pullback(&f, &g)
    }

    fn compose_all(&self, chain: &[&Self::Mor]) -> Option<Self::Mor> {
        let mut it = chain.iter().rev();
        let mut acc = (*it.next()?).clone();
        for m in it {
            acc = self.compose(m, &acc)?;
        }
        Some(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category with a partial composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<MorphismRecord>,
    identity: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
}

/// JSON record format for categories and groupoids.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    /// Object id to identity morphism id; defaults to morphisms named `id_<obj>`.
    #[serde(default)]
    pub identities: BTreeMap<String, String>,
    /// Triples `[g, f, g∘f]` for every composable pair.
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub id: String,
    pub source: String,
    pub target: String,
    /// Optional exceptional flag used by geometric setup inputs.
    #[serde(default, rename = "E")]
    pub exceptional: Option<bool>,
}

impl FiniteCategory {
    /// Builds from raw tables after checking that every identifier resolves.
    pub fn from_tables(
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identity: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<FiniteCategory> {
        let (no, nm) = (objects.len(), morphisms.len());
        for m in &morphisms {
            if m.source >= no || m.target >= no {
                return Err(Error::Structural(format!("morphism {} has dangling endpoint", m.name)));
            }
        }
        if identity.len() != no || identity.iter().any(|&i| i >= nm) {
            return Err(Error::Structural("identity map not total".into()));
        }
        for (&(g, f), &h) in &compose {
            if g >= nm || f >= nm || h >= nm {
                return Err(Error::Structural("composition table names unknown morphism".into()));
            }
        }
        Ok(FiniteCategory {
            objects,
            morphisms,
            identity,
            compose,
        })
    }

    pub fn from_spec(spec: &CategorySpec) -> Result<FiniteCategory> {
        let obj_ix: HashMap<&str, usize> = spec.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj_ix.len() != spec.objects.len() {
            return Err(Error::Structural("duplicate object id".into()));
        }
        let mut mor_ix: HashMap<&str, usize> = HashMap::new();
        let mut morphisms = Vec::new();
        for (i, m) in spec.morphisms.iter().enumerate() {
            let s = *obj_ix
                .get(m.source.as_str())
                .ok_or_else(|| Error::Structural(format!("morphism {} has unknown source {}", m.id, m.source)))?;
            let t = *obj_ix
                .get(m.target.as_str())
                .ok_or_else(|| Error::Structural(format!("morphism {} has unknown target {}", m.id, m.target)))?;
            if mor_ix.insert(m.id.as_str(), i).is_some() {
                return Err(Error::Structural(format!("duplicate morphism id {}", m.id)));
            }
            morphisms.push(MorphismRecord {
                name: m.id.clone(),
                source: s,
                target: t,
            });
        }
        let lookup = |name: &str| -> Result<usize> {
            mor_ix
                .get(name)
                .copied()
                .ok_or_else(|| Error::Structural(format!("unknown morphism id {name}")))
        };
        let mut identity = Vec::new();
        for o in &spec.objects {
            let name = spec.identities.get(o).cloned().unwrap_or_else(|| format!("id_{o}"));
            identity.push(lookup(&name)?);
        }
        let mut compose = HashMap::new();
        for [g, f, h] in &spec.compose {
            let key = (lookup(g)?, lookup(f)?);
            if compose.insert(key, lookup(h)?).is_some() {
                return Err(Error::Structural(format!("composite {g}∘{f} listed twice")));
            }
        }
        FiniteCategory::from_tables(spec.objects.clone(), morphisms, identity, compose)
    }

    pub fn to_spec(&self) -> CategorySpec {
        let name = |i: usize| self.morphisms[i].name.clone();
        let mut compose: Vec<[String; 3]> = self.compose.iter().map(|(&(g, f), &h)| [name(g), name(f), name(h)]).collect();
        compose.sort();
        CategorySpec {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismSpec {
                    id: m.name.clone(),
                    source: self.objects[m.source].clone(),
                    target: self.objects[m.target].clone(),
                    exceptional: None,
                })
                .collect(),
            identities: self
                .objects
                .iter()
                .enumerate()
                .map(|(i, o)| (o.clone(), name(self.identity[i])))
                .collect(),
            compose,
        }
    }

    /// Builds a category from objects, generating morphisms given by name and endpoints,
    /// and a composition closure function returning the composite's index.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identity: Vec<usize>,
        comp: impl Fn(usize, usize) -> usize,
    ) -> FiniteCategory {
        let mut compose = HashMap::new();
        for g in 0..morphisms.len() {
            for f in 0..morphisms.len() {
                if morphisms[f].target == morphisms[g].source {
                    compose.insert((g, f), comp(g, f));
                }
            }
        }
        FiniteCategory::from_tables(objects, morphisms, identity, compose).expect("well-formed tables")
    }

    /// A finite poset as a thin category; `leq[a][b]` means `a ≤ b`, arrow `a → b`.
    pub fn poset(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> FiniteCategory {
        let n = names.len();
        let mut morphisms = Vec::new();
        let mut ix = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || leq(a, b) {
                    ix.insert((a, b), morphisms.len());
                    let name = if a == b {
                        format!("id_{}", names[a])
                    } else {
                        format!("{}<{}", names[a], names[b])
                    };
                    morphisms.push(MorphismRecord {
                        name,
                        source: a,
                        target: b,
                    });
                }
            }
        }
        let identity = (0..n).map(|a| ix[&(a, a)]).collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.source, m.target)).collect();
        FiniteCategory::from_fn(names.iter().map(|s| s.to_string()).collect(), morphisms, identity, |g, f| {
            ix[&(ends[f].0, ends[g].1)]
        })
    }

    /// The delooping of a group given by its table.
    pub fn delooping(group: &crate::group::FiniteGroup) -> FiniteCategory {
        let morphisms = group
            .elements()
            .map(|g| MorphismRecord {
                name: group.name(g).to_string(),
                source: 0,
                target: 0,
            })
            .collect();
        FiniteCategory::from_fn(vec!["*".into()], morphisms, vec![group.identity()], |g, f| group.mul(g, f))
    }

    /// The product of two finite categories.
    pub fn product(&self, other: &FiniteCategory) -> FiniteCategory {
        let no2 = other.objects.len();
        let nm2 = other.morphisms.len();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let mut morphisms = Vec::new();
        for f in &self.morphisms {
            for g in &other.morphisms {
                morphisms.push(MorphismRecord {
                    name: format!("({},{})", f.name, g.name),
                    source: f.source * no2 + g.source,
                    target: f.target * no2 + g.target,
                });
            }
        }
        let identity = (0..self.objects.len())
            .flat_map(|a| (0..no2).map(move |b| (a, b)))
            .map(|(a, b)| self.identity[a] * nm2 + other.identity[b])
            .collect();
        FiniteCategory::from_fn(objects, morphisms, identity, |g, f| {
            let a = self.compose[&(g / nm2, f / nm2)];
            let b = other.compose[&(g % nm2, f % nm2)];
            a * nm2 + b
        })
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }
    pub fn morphism_records(&self) -> &[MorphismRecord] {
        &self.morphisms
    }
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }
    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].source
    }
    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].target
    }
    pub fn id_of(&self, x: usize) -> usize {
        self.identity[x]
    }
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }
    pub fn mor_name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }
    pub fn obj_name(&self, x: usize) -> &str {
        &self.objects[x]
    }
    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }
    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }
    pub fn homset(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].source == x && self.morphisms[f].target == y)
            .collect()
    }

    pub fn inverse_of(&self, f: usize) -> Option<usize> {
        let (s, t) = (self.src(f), self.tgt(f));
        self.homset(t, s)
            .into_iter()
            .find(|&g| self.comp(g, f) == Some(self.identity[s]) && self.comp(f, g) == Some(self.identity[t]))
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.num_morphisms()).all(|f| self.inverse_of(f).is_some())
    }

    /// Checks composability, unit and associativity axioms exhaustively.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let nm = self.morphisms.len();
        for (x, &i) in self.identity.iter().enumerate() {
            if self.src(i) != x || self.tgt(i) != x {
                rep.push("identity-endpoints", format!("identity of {} is {}", self.objects[x], self.mor_name(i)));
            }
        }
        for g in 0..nm {
            for f in 0..nm {
                let composable = self.tgt(f) == self.src(g);
                match (composable, self.comp(g, f)) {
                    (true, None) => rep.push(
                        "undefined-composite",
                        format!("{}∘{} missing", self.mor_name(g), self.mor_name(f)),
                    ),
                    (false, Some(_)) => rep.push(
                        "spurious-composite",
                        format!("{}∘{} defined but not composable", self.mor_name(g), self.mor_name(f)),
                    ),
                    (true, Some(h)) => {
                        if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                            rep.push(
                                "composite-endpoints",
                                format!("{}∘{} = {} has wrong endpoints", self.mor_name(g), self.mor_name(f), self.mor_name(h)),
                            );
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !rep.is_valid() {
            return rep;
        }
        for f in 0..nm {
            let (s, t) = (self.src(f), self.tgt(f));
            if self.comp(self.identity[t], f) != Some(f) {
                rep.push("left-unit", format!("id∘{} ≠ {}", self.mor_name(f), self.mor_name(f)));
            }
            if self.comp(f, self.identity[s]) != Some(f) {
                rep.push("right-unit", format!("{}∘id ≠ {}", self.mor_name(f), self.mor_name(f)));
            }
        }
        for h in 0..nm {
            for g in 0..nm {
                let Some(hg) = self.comp(h, g) else { continue };
                for f in 0..nm {
                    let Some(gf) = self.comp(g, f) else { continue };
                    if self.comp(hg, f) != self.comp(h, gf) {
                        rep.push(
                            "non-associative",
                            format!("({}, {}, {})", self.mor_name(h), self.mor_name(g), self.mor_name(f)),
                        );
                    }
                }
            }
        }
        rep
    }
}

impl Category for FiniteCategory {
    type Obj = usize;
    type Mor = usize;

    fn source(&self, f: &usize) -> usize {
        self.src(*f)
    }
    fn target(&self, f: &usize) -> usize {
        self.tgt(*f)
    }
    fn identity(&self, x: &usize) -> usize {
        self.identity[*x]
    }
    fn compose(&self, g: &usize, f: &usize) -> Option<usize> {
        self.comp(*g, *f)
    }
    fn hom(&self, x: &usize, y: &usize) -> Vec<usize> {
        self.homset(*x, *y)
    }
    fn objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }
    fn is_iso(&self, f: &usize) -> bool {
        self.inverse_of(*f).is_some()
    }

    /// Lexicographically minimal terminal cone, by exhaustive cone enumeration.
    fn pullback(&self, f: &usize, g: &usize) -> Option<(usize, usize, usize)> {
        if self.tgt(*f) != self.tgt(*g) {
            return None;
        }
        let (x, y) = (self.src(*f), self.src(*g));
        let cones = self.cones(*f, *g);
        cones.iter().copied().find(|&(p, p1, p2)| {
            cones.iter().all(|&(q, q1, q2)| {
                self.homset(q, p)
                    .into_iter()
                    .filter(|&u| self.comp(p1, u) == Some(q1) && self.comp(p2, u) == Some(q2))
                    .count()
                    == 1
            }) && self.src(p1) == p
                && self.tgt(p1) == x
                && self.tgt(p2) == y
        })
    }

    fn mediate(&self, cone: &(usize, usize, usize), q1: &usize, q2: &usize) -> Option<usize> {
        let (p, p1, p2) = *cone;
        let q = self.src(*q1);
        let mut it = self
            .homset(q, p)
            .into_iter()
            .filter(|&u| self.comp(p1, u) == Some(*q1) && self.comp(p2, u) == Some(*q2));
        let u = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some(u)
    }

    fn find_iso_over(&self, z1: &usize, legs1: &[usize], z2: &usize, legs2: &[usize]) -> Option<usize> {
        self.homset(*z1, *z2).into_iter().find(|&h| {
            self.is_iso(&h) && legs1.iter().zip(legs2).all(|(&a, &b)| self.comp(b, h) == Some(a))
        })
    }

    fn terminal(&self) -> Option<usize> {
        (0..self.num_objects()).find(|&t| (0..self.num_objects()).all(|x| self.homset(x, t).len() == 1))
    }
}

impl FiniteCategory {
    /// All commuting cones over the cospan, in lexicographic order.
    pub fn cones(&self, f: usize, g: usize) -> Vec<(usize, usize, usize)> {
        let (x, y) = (self.src(f), self.src(g));
        let mut out = Vec::new();
        for q in 0..self.num_objects() {
            for q1 in self.homset(q, x) {
                for q2 in self.homset(q, y) {
                    if self.comp(f, q1) == self.comp(g, q2) {
                        out.push((q, q1, q2));
                    }
                }
            }
        }
        out
    }
}

/// A functor between table categories.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functor {
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Functor {
        Functor {
            obj_map: (0..c.num_objects()).collect(),
            mor_map: (0..c.num_morphisms()).collect(),
        }
    }

    pub fn constant(c: &FiniteCategory, d: &FiniteCategory, obj: usize) -> Functor {
        Functor {
            obj_map: vec![obj; c.num_objects()],
            mor_map: vec![d.id_of(obj); c.num_morphisms()],
        }
    }

    pub fn validate(&self, c: &FiniteCategory, d: &FiniteCategory) -> Result<ValidationReport> {
        if self.obj_map.len() != c.num_objects() || self.mor_map.len() != c.num_morphisms() {
            return Err(Error::Structural("functor maps are not total".into()));
        }
        if self.obj_map.iter().any(|&o| o >= d.num_objects()) || self.mor_map.iter().any(|&m| m >= d.num_morphisms()) {
            return Err(Error::Structural("functor maps into unknown identifiers".into()));
        }
        let mut rep = ValidationReport::default();
        for f in 0..c.num_morphisms() {
            let m = self.mor_map[f];
            if d.src(m) != self.obj_map[c.src(f)] || d.tgt(m) != self.obj_map[c.tgt(f)] {
                rep.push("endpoints", format!("image of {} has wrong endpoints", c.mor_name(f)));
            }
        }
        for x in 0..c.num_objects() {
            if self.mor_map[c.id_of(x)] != d.id_of(self.obj_map[x]) {
                rep.push("identity", format!("identity of {} not preserved", c.obj_name(x)));
            }
        }
        for g in 0..c.num_morphisms() {
            for f in 0..c.num_morphisms() {
                if let Some(h) = c.comp(g, f) {
                    if d.comp(self.mor_map[g], self.mor_map[f]) != Some(self.mor_map[h]) {
                        rep.push(
                            "composition",
                            format!("F({}∘{}) ≠ F({})∘F({})", c.mor_name(g), c.mor_name(f), c.mor_name(g), c.mor_name(f)),
                        );
                    }
                }
            }
        }
        Ok(rep)
    }
}

/// A natural transformation between table functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<usize>,
}

impl NatTrans {
    pub fn is_natural(&self, c: &FiniteCategory, d: &FiniteCategory, f: &Functor, g: &Functor) -> bool {
        (0..c.num_morphisms()).all(|m| {
            let (s, t) = (c.src(m), c.tgt(m));
            d.comp(self.components[t], f.mor_map[m]) == d.comp(g.mor_map[m], self.components[s])
        })
    }
}

/// The category of finite sets {0..n-1}; morphisms are functions.
#[derive(Clone, Debug, Default)]
pub struct FinSet {
    /// Largest object enumerated by `objects()`.
    pub max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FnMor {
    pub src: usize,
    pub tgt: usize,
    pub map: Vec<usize>,
}

impl FnMor {
    pub fn new(tgt: usize, map: Vec<usize>) -> FnMor {
        assert!(map.iter().all(|&v| v < tgt), "function value out of range");
        FnMor {
            src: map.len(),
            tgt,
            map,
        }
    }
}

impl FinSet {
    pub fn new(max: usize) -> FinSet {
        FinSet { max }
    }

    /// All functions `x → y`, in lexicographic order of value vectors.
    pub fn functions(x: usize, y: usize) -> Vec<FnMor> {
        let mut out = Vec::new();
        if y == 0 {
            if x == 0 {
                out.push(FnMor::new(0, vec![]));
            }
            return out;
        }
        let mut cur = vec![0usize; x];
        loop {
            out.push(FnMor::new(y, cur.clone()));
            let mut i = x;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < y {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Checks the pullback cone against every point cone and returns it.
    pub fn verify_pullback(&self, f: &FnMor, g: &FnMor, cone: &(usize, FnMor, FnMor)) -> bool {
        let (p, p1, p2) = cone;
        // points of the cone apex biject with compatible pairs
        let mut pairs = Vec::new();
        for a in 0..f.src {
            for b in 0..g.src {
                if f.map[a] == g.map[b] {
                    pairs.push((a, b));
                }
            }
        }
        if pairs.len() != *p {
            return false;
        }
        pairs.iter().all(|&(a, b)| {
            let q1 = FnMor::new(f.src, vec![a]);
            let q2 = FnMor::new(g.src, vec![b]);
            let hits = (0..*p).filter(|&u| p1.map[u] == q1.map[0] && p2.map[u] == q2.map[0]).count();
            hits == 1
        })
    }
}

impl Category for FinSet {
    type Obj = usize;
    type Mor = FnMor;

    fn source(&self, f: &FnMor) -> usize {
        f.src
    }
    fn target(&self, f: &FnMor) -> usize {
        f.tgt
    }
    fn identity(&self, x: &usize) -> FnMor {
        FnMor::new(*x, (0..*x).collect())
    }
    fn compose(&self, g: &FnMor, f: &FnMor) -> Option<FnMor> {
        if f.tgt != g.src {
            return None;
        }
        Some(FnMor::new(g.tgt, f.map.iter().map(|&i| g.map[i]).collect()))
    }
    fn hom(&self, x: &usize, y: &usize) -> Vec<FnMor> {
        FinSet::functions(*x, *y)
    }
    fn objects(&self) -> Vec<usize> {
        (0..=self.max).collect()
    }
    fn is_iso(&self, f: &FnMor) -> bool {
        if f.src != f.tgt {
            return false;
        }
        let mut seen = vec![false; f.tgt];
        f.map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    /// Compatible pairs in lexicographic order.
    fn pullback(&self, f: &FnMor, g: &FnMor) -> Option<(usize, FnMor, FnMor)> {
        if f.tgt != g.tgt {
            return None;
        }
        let mut l = Vec::new();
        let mut r = Vec::new();
        for a in 0..f.src {
            for b in 0..g.src {
                if f.map[a] == g.map[b] {
                    l.push(a);
                    r.push(b);
                }
            }
        }
        Some((l.len(), FnMor::new(f.src, l), FnMor::new(g.src, r)))
    }

    fn mediate(&self, cone: &(usize, FnMor, FnMor), q1: &FnMor, q2: &FnMor) -> Option<FnMor> {
        let (p, p1, p2) = cone;
        if q1.src != q2.src {
            return None;
        }
        let mut map = Vec::with_capacity(q1.src);
        for i in 0..q1.src {
            let mut hits = (0..*p).filter(|&u| p1.map[u] == q1.map[i] && p2.map[u] == q2.map[i]);
            let u = hits.next()?;
            if hits.next().is_some() {
                return None;
            }
            map.push(u);
        }
        Some(FnMor::new(*p, map))
    }

    /// Matches fibers of the joint leg map in order.
    fn find_iso_over(&self, z1: &usize, legs1: &[FnMor], z2: &usize, legs2: &[FnMor]) -> Option<FnMor> {
        if z1 != z2 || legs1.len() != legs2.len() {
            return None;
        }
        let key = |legs: &[FnMor], i: usize| -> Vec<usize> { legs.iter().map(|l| l.map[i]).collect() };
        let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for j in 0..*z2 {
            buckets.entry(key(legs2, j)).or_default().push(j);
        }
        let mut next: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut map = Vec::with_capacity(*z1);
        for i in 0..*z1 {
            let k = key(legs1, i);
            let bucket = buckets.get(&k)?;
            let c = next.entry(k).or_insert(0);
            map.push(*bucket.get(*c)?);
            *c += 1;
        }
        if buckets.iter().any(|(k, v)| next.get(k).copied().unwrap_or(0) != v.len()) {
            return None;
        }
        Some(FnMor::new(*z2, map))
    }

    fn terminal(&self) -> Option<usize> {
        Some(1)
    }
}

/// Small categories used as fixed test beds.
pub mod samples {
    use super::*;

    /// The chain a → b → c.
    pub fn chain3() -> FiniteCategory {
        FiniteCategory::poset(&["a", "b", "c"], |x, y| x <= y)
    }

    /// Divisors of 12 ordered by divisibility.
    pub fn divisors12() -> FiniteCategory {
        let ds = [1usize, 2, 3, 4, 6, 12];
        let names: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        FiniteCategory::poset(&refs, |a, b| ds[b] % ds[a] == 0)
    }

    /// The walking split idempotent: objects A, B; r: A → B, s: B → A, r∘s = id_B, e = s∘r.
    pub fn split_idempotent() -> FiniteCategory {
        let m = |name: &str, s, t| MorphismRecord {
            name: name.into(),
            source: s,
            target: t,
        };
        // 0 id_A, 1 id_B, 2 e, 3 r, 4 s
        let morphisms = vec![m("id_A", 0, 0), m("id_B", 1, 1), m("e", 0, 0), m("r", 0, 1), m("s", 1, 0)];
        FiniteCategory::from_fn(vec!["A".into(), "B".into()], morphisms, vec![0, 1], |g, f| match (g, f) {
            (0, f) | (1, f) => f,
            (g, 0) | (g, 1) => g,
            (2, 2) => 2,
            (3, 2) => 3,
            (2, 4) => 4,
            (3, 4) => 1,
            (4, 3) => 2,
            _ => unreachable!("non-composable pair"),
        })
    }

    /// The arrow category [1] times the delooping of C2.
    pub fn arrow_times_c2() -> FiniteCategory {
        let arrow = FiniteCategory::poset(&["0", "1"], |a, b| a <= b);
        arrow.product(&FiniteCategory::delooping(&crate::group::FiniteGroup::cyclic(2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn samples_are_valid() {
        for c in [samples::chain3(), samples::divisors12(), samples::split_idempotent(), samples::arrow_times_c2()] {
            assert!(c.validate().is_valid(), "{:?}", c.validate());
        }
        assert_eq!(samples::split_idempotent().num_morphisms(), 5);
        assert_eq!(samples::arrow_times_c2().num_morphisms(), 6);
    }

    #[test]
    fn delooping_s3_valid() {
        let c = FiniteCategory::delooping(&FiniteGroup::symmetric(3));
        assert!(c.validate().is_valid());
        assert!(c.is_groupoid());
    }

    #[test]
    fn broken_associativity_reported() {
        let mut c = samples::split_idempotent();
        // redefine e∘e := id_A, breaking associativity but not endpoints
        c.compose.insert((2, 2), 0);
        let rep = c.validate();
        assert!(rep.violations.iter().any(|v| v.code == "non-associative"));
    }

    #[test]
    fn divisor_meet() {
        let c = samples::divisors12();
        let ix = |s: &str| c.object_index(s).unwrap();
        let f = c.homset(ix("4"), ix("12"))[0];
        let g = c.homset(ix("6"), ix("12"))[0];
        let (p, _, _) = c.pullback(&f, &g).unwrap();
        assert_eq!(c.obj_name(p), "2");
    }

    #[test]
    fn finset_product() {
        let fs = FinSet::new(6);
        let (p, a, b) = fs.product(&2, &3).unwrap();
        assert_eq!(p, 6);
        assert!(fs.verify_pullback(&fs.to_terminal(&2).unwrap(), &fs.to_terminal(&3).unwrap(), &(p, a, b)));
    }
}
