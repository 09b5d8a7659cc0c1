//! JSON input formats for groups, groupoids, sheaves, setups and strict 2-categories.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::adjunction::{TableTwoCat, TwoCatSpec};
use crate::category::{CategorySpec, FiniteCategory};
use crate::corr::{validate_setup, GeometricSetup, SetupReport};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::{parse_cycles, FiniteGroup};
use crate::groupoid::{Arrow, Coordinates, FiniteGroupoid, GroupoidFunctor, GroupoidRef};
use crate::matrix::Matrix;
use crate::sheaf::Sheaf;

/// A group: a named preset, a Cayley table over element names, or permutation generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Preset {
        preset: String,
    },
    Table {
        elements: Vec<String>,
        /// `table[a][b]` is the name of `a·b`.
        table: Vec<Vec<String>>,
    },
    Permutations {
        /// Image vectors, 0-based.
        generators: Vec<Vec<usize>>,
    },
    Cycles {
        degree: usize,
        cycles: Vec<String>,
    },
}

impl GroupSpec {
    pub fn load(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Preset { preset } => FiniteGroup::preset(preset),
            GroupSpec::Table { elements, table } => {
                let ix: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
                let rows = table
                    .iter()
                    .enumerate()
                    .map(|(a, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(b, c)| {
                                ix.get(c.as_str()).copied().ok_or_else(|| {
                                    Error::Structural(format!(
                                        "product {}*{} = {c} is not an element",
                                        elements.get(a).map_or("?", String::as_str),
                                        elements.get(b).map_or("?", String::as_str)
                                    ))
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_table(elements.clone(), rows)
            }
            GroupSpec::Permutations { generators } => FiniteGroup::from_permutations(generators),
            GroupSpec::Cycles { degree, cycles } => {
                let gens = cycles.iter().map(|c| parse_cycles(c, *degree)).collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_permutations(&gens)
            }
        }
    }
}

/// A groupoid: a delooping, a discrete set, or object/morphism/composition records.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupoidSpec {
    Delooping { group: GroupSpec },
    Discrete { discrete: Vec<String> },
    Records(CategorySpec),
}

/// A loaded groupoid together with a way to name its arrows.
pub struct LoadedGroupoid {
    pub groupoid: GroupoidRef,
    naming: Naming,
}

enum Naming {
    Group,
    Discrete,
    Records(FiniteCategory, Coordinates<usize>),
}

impl LoadedGroupoid {
    /// The arrow carrying an input morphism id (a group element for deloopings).
    pub fn arrow(&self, id: &str) -> Result<Arrow> {
        let g = &self.groupoid;
        match &self.naming {
            Naming::Group => Ok(g.auto(0, g.group_of(0).parse_element(id)?)),
            Naming::Discrete => Err(Error::Structural(format!("discrete groupoid has no morphism {id}"))),
            Naming::Records(cat, coords) => {
                let f = cat
                    .morphism_index(id)
                    .ok_or_else(|| Error::Structural(format!("unknown morphism id {id}")))?;
                let inv = |m: &usize| cat.inverse_of(*m).expect("groupoid");
                Ok(coords.encode(g, cat.src(f), cat.tgt(f), &f, |b, a| cat.comp(*b, *a).expect("composable"), inv))
            }
        }
    }

    pub fn object(&self, name: &str) -> Result<usize> {
        self.groupoid
            .object_index(name)
            .ok_or_else(|| Error::Structural(format!("unknown object {name}")))
    }
}

impl GroupoidSpec {
    pub fn load(&self) -> Result<LoadedGroupoid> {
        Ok(match self {
            GroupoidSpec::Delooping { group } => LoadedGroupoid {
                groupoid: Arc::new(FiniteGroupoid::delooping(&group.load()?)),
                naming: Naming::Group,
            },
            GroupoidSpec::Discrete { discrete } => LoadedGroupoid {
                groupoid: Arc::new(FiniteGroupoid::discrete(discrete.clone())),
                naming: Naming::Discrete,
            },
            GroupoidSpec::Records(spec) => {
                let cat = FiniteCategory::from_spec(spec)?;
                let (g, coords) = FiniteGroupoid::from_category(&cat)?;
                LoadedGroupoid {
                    groupoid: Arc::new(g),
                    naming: Naming::Records(cat, coords),
                }
            }
        })
    }
}

/// An exact scalar: an integer, `"p/q"`, `{num, den}` or `{residue}` for prime fields.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
    Fraction { num: i64, den: i64 },
    Residue { residue: u64 },
}

impl ScalarSpec {
    pub fn load(&self, field: Field) -> Result<Scalar> {
        match self {
            ScalarSpec::Int(n) => Ok(field.int(*n)),
            ScalarSpec::Fraction { num, den } => field.frac(*num, *den),
            ScalarSpec::Residue { residue } => match field {
                Field::Prime(p) => Ok(field.int((*residue % p) as i64)),
                Field::Rational => Err(Error::Parse("residues need a prime field".into())),
            },
            ScalarSpec::Text(s) => {
                let bad = || Error::Parse(format!("bad scalar `{s}`"));
                match s.split_once('/') {
                    Some((a, b)) => field.frac(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
                    None => Ok(field.int(s.trim().parse().map_err(|_| bad())?)),
                }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub morphism: String,
    /// Rows of the matrix.
    pub matrix: Vec<Vec<ScalarSpec>>,
}

/// Per-object dimensions plus matrices on generating morphisms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SheafSpec {
    pub base: GroupoidSpec,
    /// `q` or `fp:P`; the caller's field when absent.
    #[serde(default)]
    pub field: Option<String>,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
}

impl SheafSpec {
    pub fn load(&self, default: Field) -> Result<Sheaf> {
        let field = match &self.field {
            Some(s) => s.parse()?,
            None => default,
        };
        let lg = self.base.load()?;
        sheaf_from_generators(&lg, field, &self.dims, &self.generators)
    }
}

fn load_matrix(rows: &[Vec<ScalarSpec>], field: Field, shape: (usize, usize), what: &str) -> Result<Matrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Structural(format!("matrix for {what} must be {}x{}", shape.0, shape.1)));
    }
    let data = rows.iter().flatten().map(|s| s.load(field)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::new(field, shape.0, shape.1, data))
}

/// Closes generator matrices under composition and inverses, checking consistency.
pub fn sheaf_from_generators(
    lg: &LoadedGroupoid,
    field: Field,
    dims: &BTreeMap<String, usize>,
    gens: &[GeneratorSpec],
) -> Result<Sheaf> {
    let g = &lg.groupoid;
    g.gate(field)?;
    let mut dim = vec![None; g.num_objects()];
    for (name, &d) in dims {
        dim[lg.object(name)?] = Some(d);
    }
    let dim: Vec<usize> = dim
        .into_iter()
        .enumerate()
        .map(|(x, d)| d.ok_or_else(|| Error::Structural(format!("no dimension for object {}", g.name(x)))))
        .collect::<Result<_>>()?;
    let mut steps: Vec<(Arrow, Matrix)> = Vec::new();
    for s in gens {
        let a = lg.arrow(&s.morphism)?;
        let m = load_matrix(&s.matrix, field, (dim[a.tgt], dim[a.src]), &s.morphism)?;
        let mi = m
            .inverse()
            .ok_or_else(|| Error::Axiom(format!("matrix for {} is not invertible", s.morphism)))?;
        steps.push((g.inverse(&a), mi));
        steps.push((a, m));
    }
    let mut known: HashMap<Arrow, Matrix> = HashMap::new();
    let mut queue = VecDeque::new();
    for x in 0..g.num_objects() {
        let id = g.identity(x);
        known.insert(id, Matrix::identity(field, dim[x]));
        queue.push_back(id);
    }
    while let Some(a) = queue.pop_front() {
        for (s, ms) in &steps {
            if s.src != a.tgt {
                continue;
            }
            let b = g.compose(s, &a);
            let mb = ms.mul(&known[&a]);
            match known.get(&b) {
                Some(old) if *old != mb => {
                    return Err(Error::Axiom(format!(
                        "generator matrices are inconsistent on {}",
                        g.arrow_name(&b)
                    )))
                }
                Some(_) => {}
                None => {
                    known.insert(b, mb);
                    queue.push_back(b);
                }
            }
        }
    }
    if let Some(missing) = g.all_arrows().into_iter().find(|a| !known.contains_key(a)) {
        return Err(Error::Structural(format!(
            "generators do not reach {}",
            g.arrow_name(&missing)
        )));
    }
    let rep = g
        .components()
        .iter()
        .enumerate()
        .map(|(c, comp)| comp.group.elements().map(|e| known[&g.auto(c, e)].clone()).collect())
        .collect();
    let path = (0..g.num_objects()).map(|x| known[&g.path(x)].clone()).collect();
    Sheaf::new(g, field, rep, path)
}

/// A map into a given groupoid: images of objects and of generating morphisms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapSpec {
    pub source: GroupoidSpec,
    /// Needed only when the file is loaded on its own.
    #[serde(default)]
    pub target: Option<GroupoidSpec>,
    /// Object images; may be omitted when the target has one object.
    #[serde(default)]
    pub objects: BTreeMap<String, String>,
    /// Morphism id in the source to morphism id in the target.
    #[serde(default)]
    pub generators: BTreeMap<String, String>,
}

impl MapSpec {
    pub fn load_standalone(&self) -> Result<GroupoidFunctor> {
        let t = self
            .target
            .as_ref()
            .ok_or_else(|| Error::Structural("map has no target".into()))?;
        self.load(&t.load()?)
    }

    /// Closes the generator images under composition and checks they define a functor.
    pub fn load(&self, target: &LoadedGroupoid) -> Result<GroupoidFunctor> {
        let src = self.source.load()?;
        let (s, t) = (&src.groupoid, &target.groupoid);
        let obj_map: Vec<usize> = (0..s.num_objects())
            .map(|y| match self.objects.get(s.name(y)) {
                Some(x) => target.object(x),
                None if t.num_objects() == 1 => Ok(0),
                None => Err(Error::Structural(format!("no image for object {}", s.name(y)))),
            })
            .collect::<Result<_>>()?;
        let mut steps = Vec::new();
        for (a, b) in &self.generators {
            let (a, b) = (src.arrow(a)?, target.arrow(b)?);
            if b.src != obj_map[a.src] || b.tgt != obj_map[a.tgt] {
                return Err(Error::Structural(format!(
                    "image of {} has the wrong endpoints",
                    s.arrow_name(&a)
                )));
            }
            steps.push((s.inverse(&a), t.inverse(&b)));
            steps.push((a, b));
        }
        let mut known: HashMap<Arrow, Arrow> = HashMap::new();
        let mut queue = VecDeque::new();
        for y in 0..s.num_objects() {
            known.insert(s.identity(y), t.identity(obj_map[y]));
            queue.push_back(s.identity(y));
        }
        while let Some(a) = queue.pop_front() {
            for (g, h) in &steps {
                if g.src != a.tgt {
                    continue;
                }
                let b = s.compose(g, &a);
                let img = t.compose(h, &known[&a]);
                match known.get(&b) {
                    Some(old) if *old != img => {
                        return Err(Error::Axiom(format!("generator images are inconsistent on {}", s.arrow_name(&b))))
                    }
                    Some(_) => {}
                    None => {
                        known.insert(b, img);
                        queue.push_back(b);
                    }
                }
            }
        }
        if let Some(missing) = s.all_arrows().into_iter().find(|a| !known.contains_key(a)) {
            return Err(Error::Structural(format!("generators do not reach {}", s.arrow_name(&missing))));
        }
        let f = GroupoidFunctor::from_arrow_map(s, t, obj_map, |a| known[a]);
        f.validate().into_result()?;
        Ok(f)
    }
}

/// A setup file: category records with an `E` flag per morphism.
pub fn load_setup(spec: &CategorySpec) -> Result<(GeometricSetup<FiniteCategory>, SetupReport)> {
    let s = GeometricSetup::from_spec(spec)?;
    let r = validate_setup(&s);
    Ok((s, r))
}

pub fn load_two_category(spec: &TwoCatSpec) -> Result<TableTwoCat> {
    let c = TableTwoCat::from_spec(spec)?;
    c.validate().into_result()?;
    Ok(c)
}

/// Any supported input file, distinguished by its top-level `kind`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Input {
    Group(GroupSpec),
    Groupoid(GroupoidSpec),
    Category(CategorySpec),
    Setup(CategorySpec),
    Sheaf(SheafSpec),
    TwoCategory(TwoCatSpec),
    Map(MapSpec),
}

pub fn parse_input(text: &str) -> Result<Input> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_from_all_formats() {
        let d4: GroupSpec = serde_json::from_str(r#"{"generators": [[1,2,3,0],[3,2,1,0]]}"#).unwrap();
        assert_eq!(d4.load().unwrap().order(), 8);
        let c: GroupSpec = serde_json::from_str(r#"{"degree": 3, "cycles": ["(123)"]}"#).unwrap();
        assert_eq!(c.load().unwrap().order(), 3);
        let t: GroupSpec =
            serde_json::from_str(r#"{"elements": ["e","a"], "table": [["e","a"],["a","e"]]}"#).unwrap();
        assert_eq!(t.load().unwrap().order(), 2);
        let bad: GroupSpec =
            serde_json::from_str(r#"{"elements": ["e","a"], "table": [["e","a"],["a","a"]]}"#).unwrap();
        assert!(bad.load().is_err());
        let p: GroupSpec = serde_json::from_str(r#"{"preset": "s3"}"#).unwrap();
        assert_eq!(p.load().unwrap().order(), 6);
    }

    #[test]
    fn malformed_composition_names_triple() {
        let text = r#"{"objects": ["x"], "morphisms": [
            {"id": "id_x", "source": "x", "target": "x"},
            {"id": "a", "source": "x", "target": "x"},
            {"id": "b", "source": "x", "target": "x"}],
          "compose": [["id_x","id_x","id_x"],["id_x","a","a"],["a","id_x","a"],["id_x","b","b"],["b","id_x","b"],
                      ["a","a","b"],["a","b","id_x"],["b","a","a"],["b","b","a"]]}"#;
        let spec: CategorySpec = serde_json::from_str(text).unwrap();
        let err = FiniteCategory::from_spec(&spec)
            .and_then(|c| c.validate().into_result())
            .unwrap_err()
            .to_string();
        assert!(err.contains("(a, a, a)"), "{err}");
    }

    #[test]
    fn sheaf_from_generators_on_records() {
        let text = r#"{"kind": "sheaf", "field": "q",
          "base": {"objects": ["x","y"], "morphisms": [
             {"id": "id_x", "source": "x", "target": "x"}, {"id": "id_y", "source": "y", "target": "y"},
             {"id": "f", "source": "x", "target": "y"}, {"id": "g", "source": "y", "target": "x"}],
           "compose": [["id_x","id_x","id_x"],["id_y","id_y","id_y"],["f","id_x","f"],["id_y","f","f"],
                       ["g","id_y","g"],["id_x","g","g"],["g","f","id_x"],["f","g","id_y"]]},
          "dims": {"x": 2, "y": 2},
          "generators": [{"morphism": "f", "matrix": [[1, "1/2"], [0, {"num": 3, "den": 1}]]}]}"#;
        let Input::Sheaf(spec) = parse_input(text).unwrap() else { panic!("kind") };
        let s = spec.load(Field::Rational).unwrap();
        assert_eq!(s.dims(), vec![2, 2]);
    }

    #[test]
    fn maps_from_generators() {
        let base = GroupoidSpec::Delooping {
            group: GroupSpec::Preset { preset: "s3".into() },
        }
        .load()
        .unwrap();
        let text = r#"{"source": {"group": {"degree": 2, "cycles": ["(12)"]}}, "generators": {"(12)": "(12)"}}"#;
        let spec: MapSpec = serde_json::from_str(text).unwrap();
        let f = spec.load(&base).unwrap();
        assert_eq!(f.grp_img[0].iter().filter(|a| a.g != base.groupoid.group_of(0).identity()).count(), 1);
        let bad: MapSpec =
            serde_json::from_str(r#"{"source": {"group": {"preset": "c3"}}, "generators": {"1": "(12)"}}"#).unwrap();
        let c3 = FiniteGroup::cyclic(3);
        let spec = MapSpec {
            generators: [(c3.name(1).to_string(), "(12)".to_string())].into_iter().collect(),
            ..bad
        };
        assert!(spec.load(&base).is_err());
        let pt: MapSpec = serde_json::from_str(r#"{"source": {"discrete": ["a", "b"]}}"#).unwrap();
        assert_eq!(pt.load(&base).unwrap().obj_map, vec![0, 0]);
    }

    #[test]
    fn sheaf_on_delooping_mod_p() {
        let text = r#"{"base": {"group": {"preset": "c2"}}, "field": "fp:5", "dims": {"*": 1},
          "generators": [{"morphism": "1", "matrix": [[{"residue": 4}]]}]}"#;
        let spec: SheafSpec = serde_json::from_str(text).unwrap();
        let g = FiniteGroup::cyclic(2);
        let name = g.name(1 - g.identity()).to_string();
        let spec = SheafSpec {
            generators: vec![GeneratorSpec {
                morphism: name,
                ..spec.generators[0].clone()
            }],
            ..spec
        };
        let s = spec.load(Field::Rational).unwrap();
        assert_eq!(crate::sheaf::global_sections(&s).unwrap().dims(), (0, 0));
        let wrong = SheafSpec {
            generators: vec![GeneratorSpec {
                morphism: spec.generators[0].morphism.clone(),
                matrix: vec![vec![ScalarSpec::Int(2)]],
            }],
            ..spec
        };
        assert!(wrong.load(Field::Rational).is_err());
    }
}
