//! Strict 2-categories given by finite composition tables.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{verify, Adjunction, TwoCategory};
use crate::category::{FiniteCategory, Functor, MorphismRecord, NatTrans, ValidationReport};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCell {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCell {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A strict 2-category with 1-cells and 2-cells indexed by integers.
#[derive(Clone, Debug)]
pub struct TableTwoCat {
    pub objects: Vec<String>,
    pub ones: Vec<OneCell>,
    pub twos: Vec<TwoCell>,
    pub id1: Vec<usize>,
    pub id2: Vec<usize>,
    pub comp1: HashMap<(usize, usize), usize>,
    pub vert: HashMap<(usize, usize), usize>,
    pub horiz: HashMap<(usize, usize), usize>,
}

/// JSON format: objects, 1-cells and 2-cells by id, plus composition triples `[b, a, b∘a]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwoCatSpec {
    pub objects: Vec<String>,
    pub one_cells: Vec<CellSpec>,
    pub two_cells: Vec<CellSpec>,
    /// Defaults to `id_<object>`.
    #[serde(default)]
    pub identities1: BTreeMap<String, String>,
    /// Defaults to `1_<1-cell>`.
    #[serde(default)]
    pub identities2: BTreeMap<String, String>,
    pub compose1: Vec<[String; 3]>,
    pub vertical: Vec<[String; 3]>,
    pub horizontal: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellSpec {
    pub id: String,
    pub source: String,
    pub target: String,
}

fn lookup(ix: &HashMap<&str, usize>, name: &str, what: &str) -> Result<usize> {
    ix.get(name)
        .copied()
        .ok_or_else(|| Error::Structural(format!("unknown {what} {name}")))
}

impl TableTwoCat {
    pub fn from_spec(spec: &TwoCatSpec) -> Result<TableTwoCat> {
        let obj_ix: HashMap<&str, usize> = spec.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let one_ix: HashMap<&str, usize> = spec.one_cells.iter().enumerate().map(|(i, o)| (o.id.as_str(), i)).collect();
        let two_ix: HashMap<&str, usize> = spec.two_cells.iter().enumerate().map(|(i, o)| (o.id.as_str(), i)).collect();
        if obj_ix.len() != spec.objects.len() || one_ix.len() != spec.one_cells.len() || two_ix.len() != spec.two_cells.len() {
            return Err(Error::Structural("duplicate identifier".into()));
        }
        let ones = spec
            .one_cells
            .iter()
            .map(|c| {
                Ok(OneCell {
                    name: c.id.clone(),
                    src: lookup(&obj_ix, &c.source, "object")?,
                    tgt: lookup(&obj_ix, &c.target, "object")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let twos = spec
            .two_cells
            .iter()
            .map(|c| {
                Ok(TwoCell {
                    name: c.id.clone(),
                    dom: lookup(&one_ix, &c.source, "1-cell")?,
                    cod: lookup(&one_ix, &c.target, "1-cell")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let id1 = spec
            .objects
            .iter()
            .map(|o| {
                let name = spec.identities1.get(o).cloned().unwrap_or_else(|| format!("id_{o}"));
                lookup(&one_ix, &name, "identity 1-cell")
            })
            .collect::<Result<Vec<_>>>()?;
        let id2 = spec
            .one_cells
            .iter()
            .map(|c| {
                let name = spec.identities2.get(&c.id).cloned().unwrap_or_else(|| format!("1_{}", c.id));
                lookup(&two_ix, &name, "identity 2-cell")
            })
            .collect::<Result<Vec<_>>>()?;
        let table = |rows: &[[String; 3]], ix: &HashMap<&str, usize>, what: &str| -> Result<HashMap<(usize, usize), usize>> {
            rows.iter()
                .map(|[b, a, c]| Ok(((lookup(ix, b, what)?, lookup(ix, a, what)?), lookup(ix, c, what)?)))
                .collect()
        };
        let t = TableTwoCat {
            objects: spec.objects.clone(),
            ones,
            twos,
            id1,
            id2,
            comp1: table(&spec.compose1, &one_ix, "1-cell")?,
            vert: table(&spec.vertical, &two_ix, "2-cell")?,
            horiz: table(&spec.horizontal, &two_ix, "2-cell")?,
        };
        t.validate().into_result()?;
        Ok(t)
    }

    pub fn to_spec(&self) -> TwoCatSpec {
        let one = |i: usize| self.ones[i].name.clone();
        let two = |i: usize| self.twos[i].name.clone();
        let mut compose1: Vec<[String; 3]> = self.comp1.iter().map(|(&(g, f), &h)| [one(g), one(f), one(h)]).collect();
        let mut vertical: Vec<[String; 3]> = self.vert.iter().map(|(&(b, a), &c)| [two(b), two(a), two(c)]).collect();
        let mut horizontal: Vec<[String; 3]> = self.horiz.iter().map(|(&(b, a), &c)| [two(b), two(a), two(c)]).collect();
        compose1.sort();
        vertical.sort();
        horizontal.sort();
        TwoCatSpec {
            objects: self.objects.clone(),
            one_cells: self
                .ones
                .iter()
                .map(|c| CellSpec {
                    id: c.name.clone(),
                    source: self.objects[c.src].clone(),
                    target: self.objects[c.tgt].clone(),
                })
                .collect(),
            two_cells: self
                .twos
                .iter()
                .map(|c| CellSpec {
                    id: c.name.clone(),
                    source: one(c.dom),
                    target: one(c.cod),
                })
                .collect(),
            identities1: self.objects.iter().zip(&self.id1).map(|(o, &i)| (o.clone(), one(i))).collect(),
            identities2: (0..self.ones.len()).map(|f| (one(f), two(self.id2[f]))).collect(),
            compose1,
            vertical,
            horizontal,
        }
    }

    /// The sub-2-category of `Cat` on the given categories, with all functors and
    /// all natural transformations between them.
    pub fn from_categories(cats: &[(String, FiniteCategory)]) -> TableTwoCat {
        let mut ones = Vec::new();
        let mut functors: Vec<Functor> = Vec::new();
        let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, (ni, c)) in cats.iter().enumerate() {
            for (j, (nj, d)) in cats.iter().enumerate() {
                for (k, f) in all_functors(c, d).into_iter().enumerate() {
                    let name = if i == j && f == Functor::identity(c) {
                        format!("id_{ni}")
                    } else {
                        format!("{ni}>{nj}#{k}")
                    };
                    by_pair.entry((i, j)).or_default().push(ones.len());
                    ones.push(OneCell { name, src: i, tgt: j });
                    functors.push(f);
                }
            }
        }
        let find_one = |src: usize, tgt: usize, f: &Functor| -> usize {
            by_pair[&(src, tgt)]
                .iter()
                .copied()
                .find(|&k| functors[k] == *f)
                .expect("composite functor enumerated")
        };
        let id1: Vec<usize> = (0..cats.len()).map(|i| find_one(i, i, &Functor::identity(&cats[i].1))).collect();
        let mut comp1 = HashMap::new();
        for g in 0..ones.len() {
            for f in 0..ones.len() {
                if ones[f].tgt == ones[g].src {
                    let h = compose_functors(&functors[g], &functors[f]);
                    comp1.insert((g, f), find_one(ones[f].src, ones[g].tgt, &h));
                }
            }
        }
        let mut twos = Vec::new();
        let mut nats: Vec<NatTrans> = Vec::new();
        let mut two_ix: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        let mut id2 = vec![0; ones.len()];
        for f in 0..ones.len() {
            for g in 0..ones.len() {
                if ones[f].src != ones[g].src || ones[f].tgt != ones[g].tgt {
                    continue;
                }
                let (c, d) = (&cats[ones[f].src].1, &cats[ones[f].tgt].1);
                for (k, t) in all_nat_trans(c, d, &functors[f], &functors[g]).into_iter().enumerate() {
                    let is_id = f == g && (0..c.num_objects()).all(|x| t.components[x] == d.id_of(functors[f].obj_map[x]));
                    let name = if is_id {
                        format!("1_{}", ones[f].name)
                    } else {
                        format!("{}=>{}#{k}", ones[f].name, ones[g].name)
                    };
                    if is_id {
                        id2[f] = twos.len();
                    }
                    two_ix.insert((f, g, t.components.clone()), twos.len());
                    twos.push(TwoCell { name, dom: f, cod: g });
                    nats.push(t);
                }
            }
        }
        let mut vert = HashMap::new();
        let mut horiz = HashMap::new();
        for b in 0..twos.len() {
            for a in 0..twos.len() {
                let (ta, tb) = (&twos[a], &twos[b]);
                let (fa, fb) = (&ones[ta.dom], &ones[tb.dom]);
                if ta.cod == tb.dom {
                    let d = &cats[fa.tgt].1;
                    let comps: Vec<usize> = (0..cats[fa.src].1.num_objects())
                        .map(|x| d.comp(nats[b].components[x], nats[a].components[x]).expect("composable"))
                        .collect();
                    vert.insert((b, a), two_ix[&(ta.dom, tb.cod, comps)]);
                }
                if fa.tgt == fb.src {
                    // (β * α)_x = β_{F′x} ∘ G(α_x) with α: F ⇒ F′, β: G ⇒ G′
                    let (c, e) = (&cats[fa.src].1, &cats[fb.tgt].1);
                    let g = &functors[tb.dom];
                    let f2 = &functors[ta.cod];
                    let comps: Vec<usize> = (0..c.num_objects())
                        .map(|x| {
                            e.comp(nats[b].components[f2.obj_map[x]], g.mor_map[nats[a].components[x]])
                                .expect("composable")
                        })
                        .collect();
                    let dom = comp1[&(tb.dom, ta.dom)];
                    let cod = comp1[&(tb.cod, ta.cod)];
                    horiz.insert((b, a), two_ix[&(dom, cod, comps)]);
                }
            }
        }
        TableTwoCat {
            objects: cats.iter().map(|(n, _)| n.clone()).collect(),
            ones,
            twos,
            id1,
            id2,
            comp1,
            vert,
            horiz,
        }
    }

    /// The product 2-category.
    pub fn product(&self, other: &TableTwoCat) -> TableTwoCat {
        let n1 = other.ones.len();
        let n2 = other.twos.len();
        let no = other.objects.len();
        let ones = self
            .ones
            .iter()
            .flat_map(|a| {
                other.ones.iter().map(move |b| OneCell {
                    name: format!("({},{})", a.name, b.name),
                    src: a.src * no + b.src,
                    tgt: a.tgt * no + b.tgt,
                })
            })
            .collect();
        let twos = self
            .twos
            .iter()
            .flat_map(|a| {
                other.twos.iter().map(move |b| TwoCell {
                    name: format!("({},{})", a.name, b.name),
                    dom: a.dom * n1 + b.dom,
                    cod: a.cod * n1 + b.cod,
                })
            })
            .collect();
        let pair = |t1: &HashMap<(usize, usize), usize>, t2: &HashMap<(usize, usize), usize>, n: usize| {
            let mut out = HashMap::new();
            for (&(b1, a1), &c1) in t1 {
                for (&(b2, a2), &c2) in t2 {
                    out.insert((b1 * n + b2, a1 * n + a2), c1 * n + c2);
                }
            }
            out
        };
        TableTwoCat {
            objects: self
                .objects
                .iter()
                .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
                .collect(),
            ones,
            twos,
            id1: (0..self.objects.len() * no)
                .map(|x| self.id1[x / no] * n1 + other.id1[x % no])
                .collect(),
            id2: (0..self.ones.len() * n1)
                .map(|f| self.id2[f / n1] * n2 + other.id2[f % n1])
                .collect(),
            comp1: pair(&self.comp1, &other.comp1, n1),
            vert: pair(&self.vert, &other.vert, n2),
            horiz: pair(&self.horiz, &other.horiz, n2),
        }
    }

    /// Images under the projection `self × other → self`.
    pub fn project_first_one(&self, other: &TableTwoCat, f: usize) -> usize {
        f / other.ones.len()
    }

    pub fn project_first_two(&self, other: &TableTwoCat, a: usize) -> usize {
        a / other.twos.len()
    }

    pub fn one_index(&self, name: &str) -> Option<usize> {
        self.ones.iter().position(|c| c.name == name)
    }

    pub fn two_index(&self, name: &str) -> Option<usize> {
        self.twos.iter().position(|c| c.name == name)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|c| c == name)
    }

    /// 1-cells `x → y`.
    pub fn ones_between(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.ones.len()).filter(|&f| self.ones[f].src == x && self.ones[f].tgt == y).collect()
    }

    /// 2-cells `f ⇒ g`.
    pub fn twos_between(&self, f: usize, g: usize) -> Vec<usize> {
        (0..self.twos.len()).filter(|&a| self.twos[a].dom == f && self.twos[a].cod == g).collect()
    }

    /// The hom-category `Hom(x, y)`.
    pub fn hom_category(&self, x: usize, y: usize) -> FiniteCategory {
        let objs = self.ones_between(x, y);
        let pos: HashMap<usize, usize> = objs.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let cells: Vec<usize> = (0..self.twos.len()).filter(|&a| pos.contains_key(&self.twos[a].dom)).collect();
        let cpos: HashMap<usize, usize> = cells.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let morphisms = cells
            .iter()
            .map(|&a| MorphismRecord {
                name: self.twos[a].name.clone(),
                source: pos[&self.twos[a].dom],
                target: pos[&self.twos[a].cod],
            })
            .collect();
        let identity = objs.iter().map(|&f| cpos[&self.id2[f]]).collect();
        FiniteCategory::from_fn(
            objs.iter().map(|&f| self.ones[f].name.clone()).collect(),
            morphisms,
            identity,
            |g, f| cpos[&self.vert[&(cells[g], cells[f])]],
        )
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let n1 = self.ones.len();
        let n2 = self.twos.len();
        for (x, &i) in self.id1.iter().enumerate() {
            if self.ones[i].src != x || self.ones[i].tgt != x {
                rep.push("identity", format!("identity of {} has wrong endpoints", self.objects[x]));
            }
        }
        for (f, &a) in self.id2.iter().enumerate() {
            if self.twos[a].dom != f || self.twos[a].cod != f {
                rep.push("identity", format!("identity of {} has wrong boundary", self.ones[f].name));
            }
        }
        for g in 0..n1 {
            for f in 0..n1 {
                if self.ones[f].tgt != self.ones[g].src {
                    continue;
                }
                match self.comp1.get(&(g, f)) {
                    None => rep.push("totality", format!("{}∘{} missing", self.ones[g].name, self.ones[f].name)),
                    Some(&h) => {
                        if self.ones[h].src != self.ones[f].src || self.ones[h].tgt != self.ones[g].tgt {
                            rep.push("endpoints", format!("{}∘{} has wrong endpoints", self.ones[g].name, self.ones[f].name));
                        }
                    }
                }
            }
        }
        if !rep.is_valid() {
            return rep;
        }
        for f in 0..n1 {
            let o = &self.ones[f];
            if self.comp1[&(f, self.id1[o.src])] != f || self.comp1[&(self.id1[o.tgt], f)] != f {
                rep.push("unit", format!("identity 1-cells not neutral for {}", o.name));
            }
        }
        for h in 0..n1 {
            for g in 0..n1 {
                if self.ones[g].tgt != self.ones[h].src {
                    continue;
                }
                for f in 0..n1 {
                    if self.ones[f].tgt != self.ones[g].src {
                        continue;
                    }
                    if self.comp1[&(self.comp1[&(h, g)], f)] != self.comp1[&(h, self.comp1[&(g, f)])] {
                        rep.push("associativity", "1-cell composition is not associative".to_string());
                    }
                }
            }
        }
        for b in 0..n2 {
            for a in 0..n2 {
                let (ta, tb) = (&self.twos[a], &self.twos[b]);
                if ta.cod == tb.dom {
                    match self.vert.get(&(b, a)) {
                        Some(&c) if self.twos[c].dom == ta.dom && self.twos[c].cod == tb.cod => {}
                        _ => rep.push("vertical", format!("{}·{} missing or misplaced", tb.name, ta.name)),
                    }
                }
                if self.ones[ta.dom].tgt == self.ones[tb.dom].src {
                    let dom = self.comp1[&(tb.dom, ta.dom)];
                    let cod = self.comp1[&(tb.cod, ta.cod)];
                    match self.horiz.get(&(b, a)) {
                        Some(&c) if self.twos[c].dom == dom && self.twos[c].cod == cod => {}
                        _ => rep.push("horizontal", format!("{}*{} missing or misplaced", tb.name, ta.name)),
                    }
                }
            }
        }
        if !rep.is_valid() {
            return rep;
        }
        for a in 0..n2 {
            let t = &self.twos[a];
            if self.vert[&(a, self.id2[t.dom])] != a || self.vert[&(self.id2[t.cod], a)] != a {
                rep.push("unit", format!("identity 2-cells not neutral for {}", t.name));
            }
        }
        for g in 0..n1 {
            for f in 0..n1 {
                if let Some(&h) = self.comp1.get(&(g, f)) {
                    if self.horiz[&(self.id2[g], self.id2[f])] != self.id2[h] {
                        rep.push("identity", "horizontal composite of identities is not an identity".to_string());
                    }
                }
            }
        }
        for c in 0..n2 {
            for b in 0..n2 {
                for a in 0..n2 {
                    if let (Some(&ba), true) = (self.vert.get(&(b, a)), self.twos[b].cod == self.twos[c].dom) {
                        if self.vert[&(c, ba)] != self.vert[&(self.vert[&(c, b)], a)] {
                            rep.push("associativity", "vertical composition is not associative".to_string());
                        }
                    }
                    if let (Some(&ba), Some(&cb)) = (self.horiz.get(&(b, a)), self.horiz.get(&(c, b))) {
                        if self.horiz[&(c, ba)] != self.horiz[&(cb, a)] {
                            rep.push("associativity", "horizontal composition is not associative".to_string());
                        }
                    }
                }
            }
        }
        // interchange: (β′·β) * (α′·α) = (β′*α′)·(β*α)
        for (&(a2, a1), &a) in &self.vert {
            for (&(b2, b1), &b) in &self.vert {
                if let Some(&h) = self.horiz.get(&(b, a)) {
                    let rhs = self.vert.get(&(self.horiz[&(b2, a2)], self.horiz[&(b1, a1)]));
                    if rhs != Some(&h) {
                        rep.push("interchange", "interchange law fails".to_string());
                    }
                }
            }
        }
        rep.violations.sort_by(|x, y| (&x.code, &x.detail).cmp(&(&y.code, &y.detail)));
        rep.violations.dedup();
        rep
    }
}

fn compose_functors(g: &Functor, f: &Functor) -> Functor {
    Functor {
        obj_map: f.obj_map.iter().map(|&x| g.obj_map[x]).collect(),
        mor_map: f.mor_map.iter().map(|&m| g.mor_map[m]).collect(),
    }
}

/// Every functor `c → d`, by backtracking over object images then morphism images.
pub fn all_functors(c: &FiniteCategory, d: &FiniteCategory) -> Vec<Functor> {
    let (no, nm) = (c.num_objects(), c.num_morphisms());
    let mut out = Vec::new();
    let mut obj_map = vec![0; no];
    fn objs(
        i: usize,
        obj_map: &mut Vec<usize>,
        c: &FiniteCategory,
        d: &FiniteCategory,
        nm: usize,
        out: &mut Vec<Functor>,
    ) {
        if i == obj_map.len() {
            let mut mor_map = vec![usize::MAX; nm];
            morphs(0, obj_map, &mut mor_map, c, d, out);
            return;
        }
        for y in 0..d.num_objects() {
            obj_map[i] = y;
            objs(i + 1, obj_map, c, d, nm, out);
        }
    }
    fn morphs(
        m: usize,
        obj_map: &[usize],
        mor_map: &mut Vec<usize>,
        c: &FiniteCategory,
        d: &FiniteCategory,
        out: &mut Vec<Functor>,
    ) {
        if m == mor_map.len() {
            let f = Functor {
                obj_map: obj_map.to_vec(),
                mor_map: mor_map.clone(),
            };
            if f.validate(c, d).map(|r| r.is_valid()).unwrap_or(false) {
                out.push(f);
            }
            return;
        }
        let (s, t) = (obj_map[c.src(m)], obj_map[c.tgt(m)]);
        let candidates = if c.id_of(c.src(m)) == m { vec![d.id_of(s)] } else { d.homset(s, t) };
        for k in candidates {
            mor_map[m] = k;
            let consistent = (0..=m).all(|g| {
                (0..=m).all(|f| match c.comp(g, f) {
                    Some(h) if h <= m => d.comp(mor_map[g], mor_map[f]) == Some(mor_map[h]),
                    _ => true,
                })
            });
            if consistent {
                morphs(m + 1, obj_map, mor_map, c, d, out);
            }
        }
    }
    objs(0, &mut obj_map, c, d, nm, &mut out);
    out
}

/// Every natural transformation `f ⇒ g`.
pub fn all_nat_trans(c: &FiniteCategory, d: &FiniteCategory, f: &Functor, g: &Functor) -> Vec<NatTrans> {
    let mut out = Vec::new();
    let choices: Vec<Vec<usize>> = (0..c.num_objects()).map(|x| d.homset(f.obj_map[x], g.obj_map[x])).collect();
    let mut cur = vec![0; c.num_objects()];
    fn go(
        i: usize,
        choices: &[Vec<usize>],
        cur: &mut Vec<usize>,
        out: &mut Vec<NatTrans>,
        check: &dyn Fn(&NatTrans) -> bool,
    ) {
        if i == choices.len() {
            let t = NatTrans { components: cur.clone() };
            if check(&t) {
                out.push(t);
            }
            return;
        }
        for &m in &choices[i] {
            cur[i] = m;
            go(i + 1, choices, cur, out, check);
        }
    }
    let check = |t: &NatTrans| t.is_natural(c, d, f, g);
    go(0, &choices, &mut cur, &mut out, &check);
    out
}

impl TwoCategory for TableTwoCat {
    type Obj = usize;
    type One = usize;
    type Two = usize;

    fn source(&self, f: &usize) -> usize {
        self.ones[*f].src
    }

    fn target(&self, f: &usize) -> usize {
        self.ones[*f].tgt
    }

    fn id1(&self, x: &usize) -> usize {
        self.id1[*x]
    }

    fn comp1(&self, g: &usize, f: &usize) -> Result<usize> {
        self.comp1
            .get(&(*g, *f))
            .copied()
            .ok_or_else(|| Error::Structural(format!("{} and {} are not composable", self.ones[*g].name, self.ones[*f].name)))
    }

    fn dom(&self, a: &usize) -> usize {
        self.twos[*a].dom
    }

    fn cod(&self, a: &usize) -> usize {
        self.twos[*a].cod
    }

    fn id2(&self, f: &usize) -> Result<usize> {
        Ok(self.id2[*f])
    }

    fn vcomp(&self, b: &usize, a: &usize) -> Result<usize> {
        self.vert.get(&(*b, *a)).copied().ok_or_else(|| {
            Error::Structural(format!("{} and {} are not vertically composable", self.twos[*b].name, self.twos[*a].name))
        })
    }

    fn hcomp(&self, b: &usize, a: &usize) -> Result<usize> {
        self.horiz.get(&(*b, *a)).copied().ok_or_else(|| {
            Error::Structural(format!("{} and {} are not horizontally composable", self.twos[*b].name, self.twos[*a].name))
        })
    }

    fn eq1(&self, f: &usize, g: &usize) -> bool {
        f == g
    }

    fn eq2(&self, a: &usize, b: &usize) -> bool {
        a == b
    }

    fn inverse2(&self, a: &usize) -> Option<usize> {
        let t = &self.twos[*a];
        self.twos_between(t.cod, t.dom).into_iter().find(|&b| {
            self.vert.get(&(b, *a)) == Some(&self.id2[t.dom]) && self.vert.get(&(*a, b)) == Some(&self.id2[t.cod])
        })
    }
}

/// Per test object: the right adjoint of post-composition, if any, and the
/// invertibility of the comparison cells `G_X(id_X)∘h ⇒ G_Z(h)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZAudit {
    pub z: usize,
    /// `h ↦ (G_Z(h), ε_h)`, or `None` when some `h` has no universal arrow.
    pub adjoint: Option<Vec<(usize, usize, usize)>>,
    pub comparisons_invertible: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub per_z: Vec<ZAudit>,
    /// `G_X(id_X)` with its counit.
    pub candidate: Option<(usize, usize)>,
    pub condition_a: bool,
    pub condition_b: bool,
    pub criterion: bool,
    /// Result of searching directly for `(g, η, ε)`.
    pub direct: Option<(usize, usize, usize)>,
    pub agrees: bool,
    pub candidates_examined: usize,
}

/// Universal arrows for `f∘−: Hom(Z, Y) → Hom(Z, X)` at `h`.
fn universal_arrow(c: &TableTwoCat, f: usize, z: usize, h: usize, budget: &mut usize) -> Result<Option<(usize, usize)>> {
    let y = c.ones[f].src;
    let ks = c.ones_between(z, y);
    let pairs: Vec<(usize, usize)> = ks
        .iter()
        .flat_map(|&k| c.twos_between(c.comp1[&(f, k)], h).into_iter().map(move |e| (k, e)))
        .collect();
    for &(k, eps) in &pairs {
        if *budget == 0 {
            return Err(Error::Bound("pointwise audit exceeded its candidate budget".into()));
        }
        *budget -= 1;
        let universal = pairs.iter().all(|&(k2, phi)| {
            let hits = c
                .twos_between(k2, k)
                .into_iter()
                .filter(|&psi| c.vert.get(&(eps, c.horiz[&(c.id2[f], psi)])) == Some(&phi))
                .count();
            hits == 1
        });
        if universal {
            return Ok(Some((k, eps)));
        }
    }
    Ok(None)
}

/// Pointwise criterion for `f: Y → X` to have a right adjoint, over the test objects `zs`.
pub fn pointwise_audit(c: &TableTwoCat, f: usize, zs: &[usize], budget: usize) -> Result<AuditReport> {
    let mut budget_left = budget;
    let (y, x) = (c.ones[f].src, c.ones[f].tgt);
    let candidate = universal_arrow(c, f, x, c.id1[x], &mut budget_left)?;
    let mut per_z = Vec::new();
    for &z in zs {
        let mut table = Vec::new();
        let mut ok = true;
        for h in c.ones_between(z, x) {
            match universal_arrow(c, f, z, h, &mut budget_left)? {
                Some((k, e)) => table.push((h, k, e)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        let comparisons_invertible = match (ok, candidate) {
            (true, Some((g, eps0))) => {
                let mut all = true;
                for &(h, k, e) in &table {
                    let gh = c.comp1[&(g, h)];
                    let target = c.horiz[&(eps0, c.id2[h])];
                    let psi = c
                        .twos_between(gh, k)
                        .into_iter()
                        .find(|&psi| c.vert.get(&(e, c.horiz[&(c.id2[f], psi)])) == Some(&target));
                    all &= psi.is_some_and(|p| c.inverse2(&p).is_some());
                }
                Some(all)
            }
            _ => None,
        };
        per_z.push(ZAudit {
            z,
            adjoint: ok.then_some(table),
            comparisons_invertible,
        });
    }
    let condition_a = candidate.is_some() && per_z.iter().all(|a| a.adjoint.is_some());
    let condition_b = condition_a && per_z.iter().all(|a| a.comparisons_invertible == Some(true));
    let direct = direct_adjoint(c, f, y, x);
    let criterion = condition_a && condition_b;
    let agrees = criterion == direct.is_some()
        && match (candidate, direct) {
            (Some((g, _)), Some((g2, _, _))) if criterion => c.isomorphic_ones(g, g2),
            _ => true,
        };
    Ok(AuditReport {
        per_z,
        candidate,
        condition_a,
        condition_b,
        criterion,
        direct,
        agrees,
        candidates_examined: budget - budget_left,
    })
}

/// First `(g, η, ε)` making `f` a left adjoint.
pub fn direct_adjoint(c: &TableTwoCat, f: usize, y: usize, x: usize) -> Option<(usize, usize, usize)> {
    for g in c.ones_between(x, y) {
        for eta in c.twos_between(c.id1[y], c.comp1[&(g, f)]) {
            for eps in c.twos_between(c.comp1[&(f, g)], c.id1[x]) {
                let adj = Adjunction::<TableTwoCat> {
                    left: f,
                    right: g,
                    unit: eta,
                    counit: eps,
                };
                if verify(c, &adj).map(|v| v.holds()).unwrap_or(false) {
                    return Some((g, eta, eps));
                }
            }
        }
    }
    None
}

impl TableTwoCat {
    /// True when the 1-cells are isomorphic in their hom-category.
    fn isomorphic_ones(&self, f: usize, g: usize) -> bool {
        f == g || self.twos_between(f, g).into_iter().any(|a| self.inverse2(&a).is_some())
    }
}

/// Every `(f, g, η, ε)` in the table satisfying both triangle identities.
pub fn all_adjunctions(c: &TableTwoCat) -> Vec<Adjunction<TableTwoCat>> {
    let mut out = Vec::new();
    for f in 0..c.ones.len() {
        let (y, x) = (c.ones[f].src, c.ones[f].tgt);
        for g in c.ones_between(x, y) {
            for unit in c.twos_between(c.id1[y], c.comp1[&(g, f)]) {
                for counit in c.twos_between(c.comp1[&(f, g)], c.id1[x]) {
                    let adj = Adjunction::<TableTwoCat> {
                        left: f,
                        right: g,
                        unit,
                        counit,
                    };
                    if verify(c, &adj).map(|v| v.holds()).unwrap_or(false) {
                        out.push(adj);
                    }
                }
            }
        }
    }
    out
}

/// Outcome of `mate_battery`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MateBattery {
    pub adjunctions: usize,
    pub squares: usize,
    /// 2-cells pushed through `ρ` then `λ`, or `λ` then `ρ`.
    pub checked: usize,
    /// Largest number of 2-cells between two parallel 1-cells.
    pub max_parallel_twos: usize,
    pub failures: Vec<String>,
}

impl MateBattery {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `λ∘ρ = id` and `ρ∘λ = id` on every mate square built from pairs of adjunctions.
pub fn mate_battery(c: &TableTwoCat) -> Result<MateBattery> {
    let adjs = all_adjunctions(c);
    let mut out = MateBattery {
        adjunctions: adjs.len(),
        ..MateBattery::default()
    };
    for f in 0..c.ones.len() {
        for g in c.ones_between(c.ones[f].src, c.ones[f].tgt) {
            out.max_parallel_twos = out.max_parallel_twos.max(c.twos_between(f, g).len());
        }
    }
    for adj in &adjs {
        for adj2 in &adjs {
            let (x, y) = (c.ones[adj.left].src, c.ones[adj.left].tgt);
            let (x2, y2) = (c.ones[adj2.left].src, c.ones[adj2.left].tgt);
            for a in c.ones_between(x, x2) {
                for b in c.ones_between(y, y2) {
                    out.squares += 1;
                    let sq = super::MateSquare { adj, adj2, a, b };
                    let name = |cell: usize| c.twos[cell].name.clone();
                    for phi in c.twos_between(c.comp1[&(adj2.left, a)], c.comp1[&(b, adj.left)]) {
                        let rho = super::mate_rho(c, &sq, &phi)?;
                        if super::mate_lambda(c, &sq, &rho)? != phi {
                            out.failures.push(format!("λ(ρ({})) ≠ {}", name(phi), name(phi)));
                        }
                        out.checked += 1;
                    }
                    for psi in c.twos_between(c.comp1[&(a, adj.right)], c.comp1[&(adj2.right, b)]) {
                        let lam = super::mate_lambda(c, &sq, &psi)?;
                        if super::mate_rho(c, &sq, &lam)? != psi {
                            out.failures.push(format!("ρ(λ({})) ≠ {}", name(psi), name(psi)));
                        }
                        out.checked += 1;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Three objects: the terminal category, the arrow `0 → 1` and `BC₂`, with all
/// functors and natural transformations between them.
pub fn sample_two_category() -> TableTwoCat {
    TableTwoCat::from_categories(&[
        ("1".into(), FiniteCategory::poset(&["*"], |_, _| true)),
        ("I".into(), FiniteCategory::poset(&["0", "1"], |a, b| a <= b)),
        ("B".into(), FiniteCategory::delooping(&crate::group::FiniteGroup::cyclic(2))),
    ])
}
