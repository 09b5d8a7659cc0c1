//! Pyramid posets, cartesian pyramids, the two pyramid sections, descent index shapes,
//! and descent data along covers of groupoids.

mod descent;
mod index;

pub use descent::{descent_comparison, DescentCategory, DescentCertificate, DescentDatum};
pub use index::{DescentIndex, IndexKind};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::category::{Category, FiniteCategory};
use crate::corr::GeometricSetup;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    Sigma,
    Sigma2,
    Lambda,
}

pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidPoset {
    pub n: usize,
    pub variant: Variant,
    pub elements: Vec<Cell>,
}

pub fn build_pyramid(n: usize, variant: Variant) -> PyramidPoset {
    let elements = (0..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| variant != Variant::Lambda || j - i <= 1)
        .collect();
    PyramidPoset { n, variant, elements }
}

impl PyramidPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.elements.contains(&c)
    }

    /// `(i, j) ≤ (k, l)`.
    pub fn leq(&self, a: Cell, b: Cell) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        let ((i, j), (k, l)) = (a, b);
        match self.variant {
            Variant::Sigma | Variant::Lambda => i <= k && l <= j,
            Variant::Sigma2 => i <= k && j == l,
        }
    }

    /// Covering relations `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Cell, Cell)> {
        let mut out = Vec::new();
        for &a in &self.elements {
            for &b in &self.elements {
                if a != b
                    && self.leq(a, b)
                    && !self.elements.iter().any(|&m| m != a && m != b && self.leq(a, m) && self.leq(m, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_category(&self) -> FiniteCategory {
        let names: Vec<String> = self.elements.iter().map(|(i, j)| format!("{i}{j}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        FiniteCategory::poset(&refs, |a, b| self.leq(self.elements[a], self.elements[b]))
    }
}

/// A diagram `Σⁿ → C` (or its restriction to `Λⁿ`) by its generating arrows.
pub struct Pyramid<C: Category> {
    pub n: usize,
    pub obj: BTreeMap<Cell, C::Obj>,
    /// `(i, j) → (i, j−1)`.
    pub left: BTreeMap<Cell, C::Mor>,
    /// `(i, j) → (i+1, j)`.
    pub right: BTreeMap<Cell, C::Mor>,
}

impl<C: Category> Clone for Pyramid<C> {
    fn clone(&self) -> Self {
        Pyramid {
            n: self.n,
            obj: self.obj.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

impl<C: Category> std::fmt::Debug for Pyramid<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pyramid")
            .field("n", &self.n)
            .field("obj", &self.obj)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

impl<C: Category> PartialEq for Pyramid<C> {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.obj == o.obj && self.left == o.left && self.right == o.right
    }
}

impl<C: Category> Pyramid<C> {
    /// The `Λⁿ` part from a chain of spans `X_{i} ← Z_i → X_{i+1}` given as `(left, right)` legs.
    pub fn from_spans(c: &C, legs: &[(C::Mor, C::Mor)]) -> Result<Pyramid<C>> {
        let n = legs.len();
        let mut p = Pyramid {
            n,
            obj: BTreeMap::new(),
            left: BTreeMap::new(),
            right: BTreeMap::new(),
        };
        for (i, (l, r)) in legs.iter().enumerate() {
            if c.source(l) != c.source(r) {
                return Err(Error::Structural(format!("span {i} legs have different sources")));
            }
            p.obj.insert((i, i + 1), c.source(l));
            p.obj.insert((i, i), c.target(l));
            p.left.insert((i, i + 1), l.clone());
            p.right.insert((i, i + 1), r.clone());
        }
        for (i, (_, r)) in legs.iter().enumerate() {
            let t = c.target(r);
            match p.obj.get(&(i + 1, i + 1)) {
                Some(x) if *x != t => return Err(Error::Structural(format!("span {i} does not end at the next span"))),
                _ => {
                    p.obj.insert((i + 1, i + 1), t);
                }
            }
        }
        if n == 0 {
            return Err(Error::Precondition("use a constant pyramid for n = 0".into()));
        }
        Ok(p)
    }

    pub fn constant(c: &C, n: usize, x: &C::Obj) -> Pyramid<C> {
        let id = c.identity(x);
        let poset = build_pyramid(n, Variant::Sigma);
        let mut p = Pyramid {
            n,
            obj: BTreeMap::new(),
            left: BTreeMap::new(),
            right: BTreeMap::new(),
        };
        for &(i, j) in &poset.elements {
            p.obj.insert((i, j), x.clone());
            if i < j {
                p.left.insert((i, j), id.clone());
                p.right.insert((i, j), id.clone());
            }
        }
        p
    }

    pub fn variant(&self) -> Variant {
        if self.obj.keys().any(|&(i, j)| j - i >= 2) {
            Variant::Sigma
        } else {
            Variant::Lambda
        }
    }

    /// Endpoint and commutativity check.
    pub fn validate(&self, c: &C) -> Result<()> {
        let shape = build_pyramid(self.n, self.variant());
        for &(i, j) in &shape.elements {
            if !self.obj.contains_key(&(i, j)) {
                return Err(Error::Structural(format!("missing object at ({i},{j})")));
            }
            if i < j {
                let l = self.left.get(&(i, j)).ok_or_else(|| Error::Structural(format!("missing left arrow at ({i},{j})")))?;
                let r = self.right.get(&(i, j)).ok_or_else(|| Error::Structural(format!("missing right arrow at ({i},{j})")))?;
                if c.source(l) != self.obj[&(i, j)]
                    || c.target(l) != self.obj[&(i, j - 1)]
                    || c.source(r) != self.obj[&(i, j)]
                    || c.target(r) != self.obj[&(i + 1, j)]
                {
                    return Err(Error::Structural(format!("arrow endpoints wrong at ({i},{j})")));
                }
                if j - i >= 2 {
                    let a = c.compose(&self.left[&(i + 1, j)], r);
                    let b = c.compose(&self.right[&(i, j - 1)], l);
                    if a.is_none() || a != b {
                        return Err(Error::Axiom(format!("square at ({i},{j}) does not commute")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn restrict_to_lambda(&self) -> Pyramid<C> {
        let keep = |&(i, j): &Cell| j - i <= 1;
        Pyramid {
            n: self.n,
            obj: self.obj.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (*k, v.clone())).collect(),
            left: self.left.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (*k, v.clone())).collect(),
            right: self.right.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartesianReport {
    pub cartesian: bool,
    pub first_failure: Option<Cell>,
}

/// Every square with corners `(i,j)` and `(i+1,j−1)` is a pullback.
pub fn is_cartesian<C: Category>(c: &C, p: &Pyramid<C>) -> Result<CartesianReport> {
    p.validate(c)?;
    for i in 0..=p.n {
        for j in i + 2..=p.n {
            let cospan = (&p.right[&(i, j - 1)], &p.left[&(i + 1, j)]);
            let ok = c.pullback(cospan.0, cospan.1).is_some_and(|(q, q1, q2)| {
                c.find_iso_over(
                    &p.obj[&(i, j)],
                    &[p.left[&(i, j)].clone(), p.right[&(i, j)].clone()],
                    &q,
                    &[q1, q2],
                )
                .is_some()
            });
            if !ok {
                return Ok(CartesianReport {
                    cartesian: false,
                    first_failure: Some((i, j)),
                });
            }
        }
    }
    Ok(CartesianReport {
        cartesian: true,
        first_failure: None,
    })
}

/// Fills a `Λⁿ`-diagram with right legs in E to a cartesian `Σⁿ`-diagram by iterated pullback.
pub fn lambda_to_sigma<C: Category>(s: &GeometricSetup<C>, f: &Pyramid<C>) -> Result<Pyramid<C>> {
    let c = &s.base;
    f.validate(c)?;
    if f.variant() != Variant::Lambda {
        return Err(Error::Precondition("input must be a Λ-diagram".into()));
    }
    for (k, r) in &f.right {
        if !s.in_e(r) {
            return Err(Error::Precondition(format!("right leg at {k:?} not in E")));
        }
    }
    let mut p = f.clone();
    for d in 2..=f.n {
        for i in 0..=f.n - d {
            let j = i + d;
            let (apex, l, r) = c
                .pullback(&p.right[&(i, j - 1)], &p.left[&(i + 1, j)])
                .ok_or_else(|| Error::Axiom(format!("no pullback for ({i},{j})")))?;
            if !s.in_e(&r) {
                return Err(Error::Axiom(format!("base change at ({i},{j}) leaves E")));
            }
            p.obj.insert((i, j), apex);
            p.left.insert((i, j), l);
            p.right.insert((i, j), r);
        }
    }
    Ok(p)
}

/// A monotone map `[src] → [tgt]` of ordered sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderMap {
    pub src: usize,
    pub tgt: usize,
    pub values: Vec<usize>,
}

impl OrderMap {
    pub fn identity(n: usize) -> OrderMap {
        OrderMap {
            src: n,
            tgt: n,
            values: (0..=n).collect(),
        }
    }

    pub fn then(&self, next: &OrderMap) -> OrderMap {
        assert_eq!(self.tgt, next.src, "order maps not composable");
        OrderMap {
            src: self.src,
            tgt: next.tgt,
            values: self.values.iter().map(|&v| next.values[v]).collect(),
        }
    }

    pub fn is_monotone(&self) -> bool {
        self.values.len() == self.src + 1 && self.values.iter().all(|&v| v <= self.tgt) && self.values.windows(2).all(|w| w[0] <= w[1])
    }

    /// Conjugation by order reversal.
    pub fn reversed(&self) -> OrderMap {
        OrderMap {
            src: self.src,
            tgt: self.tgt,
            values: (0..=self.src).map(|a| self.tgt - self.values[self.src - a]).collect(),
        }
    }
}

/// A pyramid `(Σⁿ)^op → Δ^op`: values `[m(i,j)]` and, for each relation `a ≤ b`,
/// the ordered-set map `[m(a)] → [m(b)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionData {
    pub n: usize,
    pub values: BTreeMap<String, usize>,
    /// Covering relations with their shape label and map.
    pub transitions: Vec<Transition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub from: Cell,
    pub to: Cell,
    pub shape: char,
    pub map: OrderMap,
}

fn key((i, j): Cell) -> String {
    format!("{i},{j}")
}

impl SectionData {
    pub fn value(&self, c: Cell) -> usize {
        self.values[&key(c)]
    }
}

fn s_value((i, _): Cell) -> usize {
    i
}

fn t_value((i, j): Cell) -> usize {
    2 * i + 1 - usize::from(i == j)
}

fn s_map(a: Cell, b: Cell) -> OrderMap {
    OrderMap {
        src: a.0,
        tgt: b.0,
        values: (0..=a.0).collect(),
    }
}

/// First half maps identically, second half aligned from the top.
fn t_map(a: Cell, b: Cell) -> OrderMap {
    let (sv, tv) = (t_value(a), t_value(b));
    OrderMap {
        src: sv,
        tgt: tv,
        values: (0..=sv).map(|x| if x <= a.0 { x } else { x + tv - sv }).collect(),
    }
}

fn t_shape(a: Cell, b: Cell) -> char {
    match (t_value(a), t_value(b)) {
        (x, y) if x == y => 'a',
        (x, y) if y == x + 2 => 'b',
        (x, y) if y == x + 1 && b.0 == b.1 => 'c',
        _ => 'd',
    }
}

fn section(n: usize, value: fn(Cell) -> usize, map: fn(Cell, Cell) -> OrderMap, shape: fn(Cell, Cell) -> char) -> SectionData {
    let poset = build_pyramid(n, Variant::Sigma);
    SectionData {
        n,
        values: poset.elements.iter().map(|&c| (key(c), value(c))).collect(),
        transitions: poset
            .covers()
            .into_iter()
            .map(|(a, b)| Transition {
                from: a,
                to: b,
                shape: shape(a, b),
                map: map(a, b),
            })
            .collect(),
    }
}

/// Output of `pyramid_sections`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidSections {
    pub s: SectionData,
    pub t: SectionData,
    /// Components of `t ≅ rev ∘ t`, one per cell.
    pub symmetry: Vec<(Cell, OrderMap)>,
    /// Components `[i] → [t(i,j)]` of the comparison `t → s`.
    pub comparison: Vec<(Cell, OrderMap)>,
}

pub fn pyramid_sections(n: usize) -> PyramidSections {
    let s = section(n, s_value, s_map, |_, _| 'i');
    let t = section(n, t_value, t_map, t_shape);
    let cells = build_pyramid(n, Variant::Sigma).elements;
    PyramidSections {
        symmetry: cells.iter().map(|&c| (c, OrderMap::identity(t_value(c)))).collect(),
        comparison: cells
            .iter()
            .map(|&c| {
                (
                    c,
                    OrderMap {
                        src: c.0,
                        tgt: t_value(c),
                        values: (0..=c.0).collect(),
                    },
                )
            })
            .collect(),
        s,
        t,
    }
}

impl PyramidSections {
    fn composite(data: &SectionData, path: &[Cell]) -> OrderMap {
        let mut acc = OrderMap::identity(data.value(path[0]));
        for w in path.windows(2) {
            let tr = data
                .transitions
                .iter()
                .find(|t| t.from == w[0] && t.to == w[1])
                .expect("covering relation");
            acc = acc.then(&tr.map);
        }
        acc
    }

    /// Every square of covering relations commutes and all maps are monotone.
    pub fn functorial(&self) -> bool {
        [&self.s, &self.t].iter().all(|d| {
            d.transitions.iter().all(|t| t.map.is_monotone())
                && (0..=d.n).all(|i| {
                    (i + 2..=d.n).all(|j| {
                        let a = Self::composite(d, &[(i, j), (i + 1, j), (i + 1, j - 1)]);
                        let b = Self::composite(d, &[(i, j), (i, j - 1), (i + 1, j - 1)]);
                        a == b
                    })
                })
        })
    }

    /// The symmetry components are natural between `t` and `rev ∘ t` and square to the identity.
    pub fn symmetric(&self) -> bool {
        let comp = |c: Cell| &self.symmetry.iter().find(|(k, _)| *k == c).expect("cell").1;
        self.t.transitions.iter().all(|tr| {
            let rev = tr.map.reversed();
            comp(tr.from).then(&rev) == tr.map.then(comp(tr.to))
        }) && self.symmetry.iter().all(|(_, m)| m.then(m) == OrderMap::identity(m.src))
    }

    /// Naturality of `t → s`.
    pub fn comparison_natural(&self) -> bool {
        let comp = |c: Cell| &self.comparison.iter().find(|(k, _)| *k == c).expect("cell").1;
        self.t.transitions.iter().all(|tr| {
            let s_tr = self.s.transitions.iter().find(|x| x.from == tr.from && x.to == tr.to).expect("same shape");
            s_tr.map.then(comp(tr.to)) == comp(tr.from).then(&tr.map)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{samples, FinSet, FnMor};
    use crate::corr::{compose_spans, span_iso, Exceptional, Span};

    #[test]
    fn pyramid_sizes() {
        assert_eq!(build_pyramid(0, Variant::Sigma).elements, vec![(0, 0)]);
        assert_eq!(build_pyramid(2, Variant::Sigma).len(), 6);
        for n in 0..=8 {
            assert_eq!(build_pyramid(n, Variant::Sigma).len(), (n + 1) * (n + 2) / 2);
            assert_eq!(build_pyramid(n, Variant::Lambda).len(), 2 * n + 1);
        }
    }

    #[test]
    fn lambda_three_covers() {
        let p = build_pyramid(3, Variant::Lambda);
        assert_eq!(p.len(), 7);
        let mut covers = p.covers();
        covers.sort();
        let mut expect = Vec::new();
        for i in 0..3 {
            expect.push(((i, i + 1), (i, i)));
            expect.push(((i, i + 1), (i + 1, i + 1)));
        }
        expect.sort();
        assert_eq!(covers, expect);
        assert!(p.to_category().validate().is_valid());
        let s2 = build_pyramid(2, Variant::Sigma2);
        assert!(s2.leq((0, 2), (1, 2)) && !s2.leq((0, 2), (0, 1)));
    }

    fn finset() -> GeometricSetup<FinSet> {
        GeometricSetup::new(FinSet::new(6), Exceptional::All)
    }

    #[test]
    fn extension_matches_span_composition() {
        let s = finset();
        let legs = vec![
            (FnMor::new(2, vec![0, 1, 1]), FnMor::new(2, vec![1, 0, 1])),
            (FnMor::new(2, vec![0, 0, 1]), FnMor::new(1, vec![0, 0, 0])),
        ];
        let lam = Pyramid::from_spans(&s.base, &legs).unwrap();
        let full = lambda_to_sigma(&s, &lam).unwrap();
        assert!(is_cartesian(&s.base, &full).unwrap().cartesian);
        assert_eq!(full.restrict_to_lambda(), lam);
        let sp: Vec<Span<FinSet>> = legs.iter().map(|(l, r)| Span::new(&s, l.clone(), r.clone()).unwrap()).collect();
        let comp = compose_spans(&s, &sp[0], &sp[1]).unwrap();
        let outer_left = s.base.compose(&full.left[&(0, 1)], &full.left[&(0, 2)]).unwrap();
        let outer_right = s.base.compose(&full.right[&(1, 2)], &full.right[&(0, 2)]).unwrap();
        let from_pyramid = Span::new(&s, outer_left, outer_right).unwrap();
        assert!(span_iso(&s.base, &comp, &from_pyramid).is_some());
        assert_eq!(full.obj[&(0, 2)], comp.apex);
    }

    #[test]
    fn enlarged_apex_not_cartesian() {
        let s = finset();
        let legs = vec![
            (FnMor::new(1, vec![0, 0]), FnMor::new(1, vec![0, 0])),
            (FnMor::new(1, vec![0]), FnMor::new(1, vec![0])),
        ];
        let mut p = lambda_to_sigma(&s, &Pyramid::from_spans(&s.base, &legs).unwrap()).unwrap();
        let n = p.obj[&(0, 2)];
        let l = p.left[&(0, 2)].clone();
        let r = p.right[&(0, 2)].clone();
        p.obj.insert((0, 2), n + 1);
        let mut lm = l.map.clone();
        lm.push(l.map[0]);
        let mut rm = r.map.clone();
        rm.push(r.map[0]);
        p.left.insert((0, 2), FnMor::new(l.tgt, lm));
        p.right.insert((0, 2), FnMor::new(r.tgt, rm));
        let rep = is_cartesian(&s.base, &p).unwrap();
        assert_eq!(rep.first_failure, Some((0, 2)));
    }

    #[test]
    fn trivial_cartesian_cases() {
        let s = finset();
        let lam = Pyramid::from_spans(&s.base, &[(FnMor::new(2, vec![0, 1]), FnMor::new(1, vec![0, 0]))]).unwrap();
        assert!(is_cartesian(&s.base, &lam).unwrap().cartesian);
        assert_eq!(lambda_to_sigma(&s, &lam).unwrap(), lam);
        let one = GeometricSetup::new(samples::chain3(), Exceptional::All);
        let k = Pyramid::constant(&one.base, 3, &0);
        assert!(is_cartesian(&one.base, &k).unwrap().cartesian);
        assert_eq!(lambda_to_sigma(&one, &k.restrict_to_lambda()).unwrap(), k);
    }

    #[test]
    fn section_values() {
        let sec = pyramid_sections(2);
        let t: Vec<usize> = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)].iter().map(|&c| sec.t.value(c)).collect();
        assert_eq!(t, vec![0, 1, 1, 2, 3, 4]);
        for &(i, j) in &build_pyramid(2, Variant::Sigma).elements {
            assert_eq!(sec.s.value((i, j)), i);
        }
        let z = pyramid_sections(0);
        assert_eq!(z.s.value((0, 0)), 0);
        assert_eq!(z.t.value((0, 0)), 0);
        let shapes: std::collections::BTreeSet<char> = pyramid_sections(3).t.transitions.iter().map(|t| t.shape).collect();
        assert_eq!(shapes.into_iter().collect::<String>(), "abcd");
    }

    // oracle: the (d) map sends both middle elements to the middle, and (b) misses exactly i, i+1
    #[test]
    fn section_shapes() {
        let sec = pyramid_sections(3);
        let d = sec.t.transitions.iter().find(|t| t.from == (1, 2) && t.to == (1, 1)).unwrap();
        assert_eq!(d.map.values, vec![0, 1, 1, 2]);
        let b = sec.t.transitions.iter().find(|t| t.from == (0, 3) && t.to == (1, 3)).unwrap();
        assert_eq!(b.map.values, vec![0, 3]);
        let c = sec.t.transitions.iter().find(|t| t.from == (0, 1) && t.to == (1, 1)).unwrap();
        assert_eq!(c.map.values, vec![0, 2]);
    }

    #[test]
    fn sections_functorial_and_symmetric() {
        for n in 0..=5 {
            let sec = pyramid_sections(n);
            assert!(sec.functorial() && sec.symmetric() && sec.comparison_natural(), "n = {n}");
        }
    }
}
