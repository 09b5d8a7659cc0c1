//! Functors between sheaf categories as a strict 2-category: 1-cells are words
//! in `f_!` and `f^!`, 2-cells are natural transformations compared on probes.

use std::fmt;
use std::sync::Arc;

use super::{Adjunction, TwoCategory};
use crate::error::{Error, Result};
use crate::groupoid::{GroupoidFunctor, GroupoidRef};
use crate::sheaf::{lan, lan_counit, lan_morphism, lan_unit, upper_shriek, Sheaf, SheafMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// `f_!` along the map with this index.
    Shriek(usize),
    /// `f^!` along the map with this index.
    UpperShriek(usize),
}

/// A composite of steps, applied last to first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeWord {
    pub src: usize,
    pub tgt: usize,
    pub steps: Vec<Step>,
}

type Eval = Arc<dyn Fn(&Sheaf) -> Result<SheafMorphism> + Send + Sync>;

#[derive(Clone)]
pub struct ProbeCell {
    pub dom: ProbeWord,
    pub cod: ProbeWord,
    pub eval: Eval,
}

impl fmt::Debug for ProbeCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProbeCell").field("dom", &self.dom).field("cod", &self.cod).finish()
    }
}

pub struct ProbeTwoCat {
    pub objects: Vec<GroupoidRef>,
    pub maps: Vec<(usize, usize, GroupoidFunctor)>,
    pub probes: Vec<Vec<Sheaf>>,
}

impl ProbeTwoCat {
    pub fn new(objects: Vec<GroupoidRef>, maps: Vec<(usize, usize, GroupoidFunctor)>, probes: Vec<Vec<Sheaf>>) -> Result<ProbeTwoCat> {
        if probes.len() != objects.len() {
            return Err(Error::Structural("one probe list per object".into()));
        }
        for (s, t, f) in &maps {
            if *f.src != *objects[*s] || *f.tgt != *objects[*t] {
                return Err(Error::Structural("map endpoints do not match the objects".into()));
            }
        }
        Ok(ProbeTwoCat { objects, maps, probes })
    }

    fn step_ends(&self, s: Step) -> (usize, usize) {
        match s {
            Step::Shriek(i) => (self.maps[i].0, self.maps[i].1),
            Step::UpperShriek(i) => (self.maps[i].1, self.maps[i].0),
        }
    }

    pub fn word(&self, s: Step) -> ProbeWord {
        let (src, tgt) = self.step_ends(s);
        ProbeWord { src, tgt, steps: vec![s] }
    }

    pub fn apply(&self, w: &ProbeWord, m: &Sheaf) -> Result<Sheaf> {
        let mut cur = m.clone();
        for s in w.steps.iter().rev() {
            cur = match *s {
                Step::Shriek(i) => lan(&self.maps[i].2, &cur)?,
                Step::UpperShriek(i) => upper_shriek(&self.maps[i].2, &cur)?,
            };
        }
        Ok(cur)
    }

    pub fn apply_morphism(&self, w: &ProbeWord, a: &SheafMorphism) -> Result<SheafMorphism> {
        let mut cur = a.clone();
        for s in w.steps.iter().rev() {
            cur = match *s {
                Step::Shriek(i) => lan_morphism(&self.maps[i].2, &cur)?,
                Step::UpperShriek(i) => cur.pullback(&self.maps[i].2),
            };
        }
        Ok(cur)
    }

    /// `f_! ⊣ f^!` for the map with index `i`.
    pub fn shriek_adjunction(&self, i: usize) -> Adjunction<ProbeTwoCat> {
        let (s, t) = (self.maps[i].0, self.maps[i].1);
        let f = self.word(Step::Shriek(i));
        let g = self.word(Step::UpperShriek(i));
        let map = self.maps[i].2.clone();
        let map2 = map.clone();
        let gf = ProbeWord {
            src: s,
            tgt: s,
            steps: vec![Step::UpperShriek(i), Step::Shriek(i)],
        };
        let fg = ProbeWord {
            src: t,
            tgt: t,
            steps: vec![Step::Shriek(i), Step::UpperShriek(i)],
        };
        Adjunction {
            unit: ProbeCell {
                dom: TwoCategory::id1(self, &s),
                cod: gf,
                eval: Arc::new(move |m| lan_unit(&map, m)),
            },
            counit: ProbeCell {
                dom: fg,
                cod: TwoCategory::id1(self, &t),
                eval: Arc::new(move |n| lan_counit(&map2, n)),
            },
            left: f,
            right: g,
        }
    }
}

impl TwoCategory for ProbeTwoCat {
    type Obj = usize;
    type One = ProbeWord;
    type Two = ProbeCell;

    fn source(&self, f: &ProbeWord) -> usize {
        f.src
    }

    fn target(&self, f: &ProbeWord) -> usize {
        f.tgt
    }

    fn id1(&self, x: &usize) -> ProbeWord {
        ProbeWord {
            src: *x,
            tgt: *x,
            steps: vec![],
        }
    }

    fn comp1(&self, g: &ProbeWord, f: &ProbeWord) -> Result<ProbeWord> {
        if f.tgt != g.src {
            return Err(Error::Structural("words not composable".into()));
        }
        let mut steps = g.steps.clone();
        steps.extend_from_slice(&f.steps);
        Ok(ProbeWord {
            src: f.src,
            tgt: g.tgt,
            steps,
        })
    }

    fn dom(&self, a: &ProbeCell) -> ProbeWord {
        a.dom.clone()
    }

    fn cod(&self, a: &ProbeCell) -> ProbeWord {
        a.cod.clone()
    }

    fn id2(&self, f: &ProbeWord) -> Result<ProbeCell> {
        let w = f.clone();
        let cat = ProbeTwoCat {
            objects: self.objects.clone(),
            maps: self.maps.clone(),
            probes: vec![],
        };
        Ok(ProbeCell {
            dom: f.clone(),
            cod: f.clone(),
            eval: Arc::new(move |m| Ok(SheafMorphism::identity(&cat.apply(&w, m)?))),
        })
    }

    fn vcomp(&self, b: &ProbeCell, a: &ProbeCell) -> Result<ProbeCell> {
        if a.cod != b.dom {
            return Err(Error::Structural("2-cells not vertically composable".into()));
        }
        let (ea, eb) = (a.eval.clone(), b.eval.clone());
        Ok(ProbeCell {
            dom: a.dom.clone(),
            cod: b.cod.clone(),
            eval: Arc::new(move |m| ea(m)?.then(&eb(m)?)),
        })
    }

    fn hcomp(&self, b: &ProbeCell, a: &ProbeCell) -> Result<ProbeCell> {
        let dom = self.comp1(&b.dom, &a.dom)?;
        let cod = self.comp1(&b.cod, &a.cod)?;
        let cat = ProbeTwoCat {
            objects: self.objects.clone(),
            maps: self.maps.clone(),
            probes: vec![],
        };
        let (ea, eb) = (a.eval.clone(), b.eval.clone());
        let (g, f2) = (b.dom.clone(), a.cod.clone());
        Ok(ProbeCell {
            dom,
            cod,
            eval: Arc::new(move |m| {
                let first = cat.apply_morphism(&g, &ea(m)?)?;
                first.then(&eb(&cat.apply(&f2, m)?)?)
            }),
        })
    }

    fn eq1(&self, f: &ProbeWord, g: &ProbeWord) -> bool {
        f == g
    }

    fn eq2(&self, a: &ProbeCell, b: &ProbeCell) -> bool {
        a.dom == b.dom
            && a.cod == b.cod
            && self.probes[a.dom.src].iter().all(|m| match (a.eval.as_ref()(m), b.eval.as_ref()(m)) {
                (Ok(x), Ok(y)) => x == y,
                _ => false,
            })
    }

    fn inverse2(&self, a: &ProbeCell) -> Option<ProbeCell> {
        let all_iso = self.probes[a.dom.src]
            .iter()
            .all(|m| a.eval.as_ref()(m).map(|x| x.is_iso()).unwrap_or(false));
        if !all_iso {
            return None;
        }
        let ea = a.eval.clone();
        Some(ProbeCell {
            dom: a.cod.clone(),
            cod: a.dom.clone(),
            eval: Arc::new(move |m| {
                ea(m)?
                    .inverse()
                    .ok_or_else(|| Error::Precondition("2-cell is not invertible here".into()))
            }),
        })
    }

    fn is_identity2(&self, a: &ProbeCell) -> Result<bool> {
        if a.dom != a.cod {
            return Ok(false);
        }
        for m in &self.probes[a.dom.src] {
            if !a.eval.as_ref()(m)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
