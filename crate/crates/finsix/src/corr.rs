//! Geometric setups and the correspondence category Corr(C, E) up to span isomorphism.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::category::{Category, CategorySpec, FiniteCategory, ValidationReport};
use crate::error::{Error, Result};

/// The class of exceptional morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exceptional<M> {
    All,
    Isomorphisms,
    Listed(BTreeSet<M>),
}

#[derive(Clone, Debug)]
pub struct GeometricSetup<C: Category> {
    pub base: C,
    pub exceptional: Exceptional<C::Mor>,
}

impl<C: Category> GeometricSetup<C> {
    pub fn new(base: C, exceptional: Exceptional<C::Mor>) -> GeometricSetup<C> {
        GeometricSetup { base, exceptional }
    }

    pub fn in_e(&self, f: &C::Mor) -> bool {
        match &self.exceptional {
            Exceptional::All => true,
            Exceptional::Isomorphisms => self.base.is_iso(f),
            Exceptional::Listed(s) => s.contains(f),
        }
    }

    /// Every morphism between enumerated objects.
    pub fn morphisms(&self) -> Vec<C::Mor> {
        let obs = self.base.objects();
        let mut out = Vec::new();
        for x in &obs {
            for y in &obs {
                out.extend(self.base.hom(x, y));
            }
        }
        out
    }
}

impl GeometricSetup<FiniteCategory> {
    pub fn listed(base: FiniteCategory, e: impl IntoIterator<Item = usize>) -> Result<Self> {
        let e: BTreeSet<usize> = e.into_iter().collect();
        if let Some(bad) = e.iter().find(|&&m| m >= base.num_morphisms()) {
            return Err(Error::Structural(format!("exceptional morphism {bad} is not a morphism")));
        }
        Ok(GeometricSetup::new(base, Exceptional::Listed(e)))
    }

    /// Reads a category record whose morphisms carry an `E` flag; unflagged means not in E.
    pub fn from_spec(spec: &CategorySpec) -> Result<Self> {
        let base = FiniteCategory::from_spec(spec)?;
        let e = spec
            .morphisms
            .iter()
            .enumerate()
            .filter(|(_, m)| m.exceptional == Some(true))
            .map(|(i, _)| i);
        GeometricSetup::listed(base, e)
    }

    pub fn to_spec(&self) -> CategorySpec {
        let mut spec = self.base.to_spec();
        for (i, m) in spec.morphisms.iter_mut().enumerate() {
            m.exceptional = Some(self.in_e(&i));
        }
        spec
    }
}

/// Outcome of `validate_setup`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupReport {
    pub report: ValidationReport,
    pub contains_isos: bool,
    pub composition_closed: bool,
    pub base_change_closed: bool,
    pub diagonals_in_e: bool,
    pub right_cancellative: bool,
}

impl SetupReport {
    fn common(&self) -> bool {
        self.contains_isos && self.composition_closed && self.base_change_closed
    }
    /// Full validator using the diagonal form of the last axiom.
    pub fn diagonal_verdict(&self) -> bool {
        self.common() && self.diagonals_in_e
    }
    /// Full validator using right cancellativity as the last axiom.
    pub fn cancellative_verdict(&self) -> bool {
        self.common() && self.right_cancellative
    }
    pub fn agree(&self) -> bool {
        self.diagonal_verdict() == self.cancellative_verdict()
    }
    pub fn is_valid(&self) -> bool {
        self.report.is_valid()
    }
}

pub fn validate_setup<C: Category>(s: &GeometricSetup<C>) -> SetupReport {
    let c = &s.base;
    let mors = s.morphisms();
    let mut out = SetupReport {
        contains_isos: true,
        composition_closed: true,
        base_change_closed: true,
        diagonals_in_e: true,
        right_cancellative: true,
        ..Default::default()
    };
    for f in &mors {
        if c.is_iso(f) && !s.in_e(f) {
            out.contains_isos = false;
            out.report.push("iso-not-in-E", format!("{f:?}"));
        }
    }
    for g in &mors {
        for f in &mors {
            let Some(gf) = c.compose(g, f) else { continue };
            if s.in_e(g) && s.in_e(f) && !s.in_e(&gf) {
                out.composition_closed = false;
                out.report.push("composition", format!("{g:?} ∘ {f:?}"));
            }
            if s.in_e(g) && s.in_e(&gf) && !s.in_e(f) {
                out.right_cancellative = false;
                out.report.push("right-cancellative", format!("{g:?} ∘ {f:?} with {f:?} ∉ E"));
            }
        }
    }
    for f in mors.iter().filter(|f| s.in_e(f)) {
        let t = c.target(f);
        for g in mors.iter().filter(|g| c.target(g) == t) {
            match c.pullback(f, g) {
                Some((_, _, p2)) if s.in_e(&p2) => {}
                Some(_) => {
                    out.base_change_closed = false;
                    out.report.push("base-change", format!("{f:?} along {g:?}"));
                }
                None => {
                    out.base_change_closed = false;
                    out.report.push("missing-pullback", format!("{f:?} along {g:?}"));
                }
            }
        }
        let diag = c.pullback(f, f).and_then(|cone| {
            let id = c.identity(&c.source(f));
            c.mediate(&cone, &id, &id)
        });
        match diag {
            Some(d) if s.in_e(&d) => {}
            _ => {
                out.diagonals_in_e = false;
                out.report.push("diagonal", format!("{f:?}"));
            }
        }
    }
    out
}

/// Pullback with its universality certificate.
#[derive(Debug)]
pub struct Pullback<C: Category> {
    pub apex: C::Obj,
    pub p1: C::Mor,
    pub p2: C::Mor,
    /// Number of cones checked for a unique mediating morphism.
    pub cones_checked: usize,
}

/// The canonical pullback of `f: X → S ← Y: g`, verified against every cone with enumerated apex.
pub fn pullback<C: Category>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<Option<Pullback<C>>> {
    if c.target(f) != c.target(g) {
        return Err(Error::Precondition("cospan legs have different targets".into()));
    }
    let Some((apex, p1, p2)) = c.pullback(f, g) else {
        return Ok(None);
    };
    let (x, y) = (c.source(f), c.source(g));
    let mut checked = 0;
    for q in c.objects() {
        for q1 in c.hom(&q, &x) {
            for q2 in c.hom(&q, &y) {
                if c.compose(f, &q1) != c.compose(g, &q2) {
                    continue;
                }
                let n = c
                    .hom(&q, &apex)
                    .into_iter()
                    .filter(|u| c.compose(&p1, u).as_ref() == Some(&q1) && c.compose(&p2, u).as_ref() == Some(&q2))
                    .count();
                if n != 1 {
                    return Err(Error::theorem("pullback-universality", format!("{n} mediators from {q:?}")));
                }
                checked += 1;
            }
        }
    }
    Ok(Some(Pullback {
        apex,
        p1,
        p2,
        cones_checked: checked,
    }))
}

/// A correspondence `X ← Z → Y`; the right leg lies in E.
pub struct Span<C: Category> {
    pub source: C::Obj,
    pub apex: C::Obj,
    pub target: C::Obj,
    pub left: C::Mor,
    pub right: C::Mor,
}

impl<C: Category> Clone for Span<C> {
    fn clone(&self) -> Self {
        Span {
            source: self.source.clone(),
            apex: self.apex.clone(),
            target: self.target.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

impl<C: Category> PartialEq for Span<C> {
    fn eq(&self, o: &Self) -> bool {
        self.source == o.source && self.apex == o.apex && self.target == o.target && self.left == o.left && self.right == o.right
    }
}

impl<C: Category> std::fmt::Debug for Span<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} <-{:?}- {:?} -{:?}-> {:?}", self.source, self.left, self.apex, self.right, self.target)
    }
}

impl<C: Category> Span<C> {
    pub fn new(s: &GeometricSetup<C>, left: C::Mor, right: C::Mor) -> Result<Span<C>> {
        let c = &s.base;
        if c.source(&left) != c.source(&right) {
            return Err(Error::Structural("span legs have different sources".into()));
        }
        if !s.in_e(&right) {
            return Err(Error::Precondition(format!("right leg {right:?} not in E")));
        }
        Ok(Span {
            source: c.target(&left),
            apex: c.source(&left),
            target: c.target(&right),
            left,
            right,
        })
    }

    pub fn identity(s: &GeometricSetup<C>, x: &C::Obj) -> Span<C> {
        let id = s.base.identity(x);
        Span {
            source: x.clone(),
            apex: x.clone(),
            target: x.clone(),
            left: id.clone(),
            right: id,
        }
    }

    /// `X ← X → Y` for `f: X → Y` in E.
    pub fn forward(s: &GeometricSetup<C>, f: &C::Mor) -> Result<Span<C>> {
        Span::new(s, s.base.identity(&s.base.source(f)), f.clone())
    }

    /// `Y ← X → X` for any `f: X → Y`.
    pub fn backward(s: &GeometricSetup<C>, f: &C::Mor) -> Span<C> {
        let x = s.base.source(f);
        Span {
            source: s.base.target(f),
            apex: x.clone(),
            target: x.clone(),
            left: f.clone(),
            right: s.base.identity(&x),
        }
    }
}

/// `s2 ∘ s1` for `s1: X ⇒ Y`, `s2: Y ⇒ W`.
pub fn compose_spans<C: Category>(s: &GeometricSetup<C>, s1: &Span<C>, s2: &Span<C>) -> Result<Span<C>> {
    let c = &s.base;
    if s1.target != s2.source {
        return Err(Error::Structural("spans not composable".into()));
    }
    let (_, p1, p2) = c
        .pullback(&s1.right, &s2.left)
        .ok_or_else(|| Error::Axiom("setup has no pullback for span composite".into()))?;
    if !s.in_e(&p2) {
        return Err(Error::Axiom(format!("base change {p2:?} of an E-morphism not in E")));
    }
    let left = c.compose(&s1.left, &p1).expect("composable");
    let right = c.compose(&s2.right, &p2).expect("composable");
    Span::new(s, left, right)
}

pub fn compose_chain<C: Category>(s: &GeometricSetup<C>, chain: &[Span<C>]) -> Result<Span<C>> {
    let mut it = chain.iter();
    let mut acc = it.next().ok_or_else(|| Error::Precondition("empty chain".into()))?.clone();
    for t in it {
        acc = compose_spans(s, &acc, t)?;
    }
    Ok(acc)
}

/// An apex isomorphism `h` with `left2∘h = left1` and `right2∘h = right1`.
pub fn span_iso<C: Category>(c: &C, s1: &Span<C>, s2: &Span<C>) -> Option<C::Mor> {
    if s1.source != s2.source || s1.target != s2.target {
        return None;
    }
    c.find_iso_over(
        &s1.apex,
        &[s1.left.clone(), s1.right.clone()],
        &s2.apex,
        &[s2.left.clone(), s2.right.clone()],
    )
}

/// Leg swap; needs the left leg in E.
pub fn swap<C: Category>(s: &GeometricSetup<C>, sp: &Span<C>) -> Result<Span<C>> {
    Span::new(s, sp.right.clone(), sp.left.clone())
}

/// Chosen product with its projections.
fn product<C: Category>(c: &C, x: &C::Obj, y: &C::Obj) -> Result<(C::Obj, C::Mor, C::Mor)> {
    c.product(x, y)
        .ok_or_else(|| Error::Precondition(format!("no product {x:?} × {y:?}")))
}

fn pair<C: Category>(c: &C, x: &C::Obj, y: &C::Obj, a: &C::Mor, b: &C::Mor) -> Result<C::Mor> {
    let cone = product(c, x, y)?;
    c.mediate(&cone, a, b)
        .ok_or_else(|| Error::theorem("product-universality", "no pairing"))
}

/// Product of spans `s × t: A×C ⇒ B×D`.
pub fn span_product<C: Category>(s: &GeometricSetup<C>, a: &Span<C>, b: &Span<C>) -> Result<Span<C>> {
    let c = &s.base;
    let (_, q1, q2) = product(c, &a.apex, &b.apex)?;
    let l1 = c.compose(&a.left, &q1).expect("composable");
    let l2 = c.compose(&b.left, &q2).expect("composable");
    let r1 = c.compose(&a.right, &q1).expect("composable");
    let r2 = c.compose(&b.right, &q2).expect("composable");
    let left = pair(c, &a.source, &b.source, &l1, &l2)?;
    let right = pair(c, &a.target, &b.target, &r1, &r2)?;
    Span::new(s, left, right)
}

/// Evaluation, coevaluation and the two zigzag witnesses.
#[derive(Debug)]
pub struct DualData<C: Category> {
    pub ev: Span<C>,
    pub coev: Span<C>,
    pub left_zigzag: Span<C>,
    pub right_zigzag: Span<C>,
    pub left_witness: C::Mor,
    pub right_witness: C::Mor,
}

pub fn dual_data<C: Category>(s: &GeometricSetup<C>, x: &C::Obj) -> Result<DualData<C>> {
    let c = &s.base;
    let one = c.terminal().ok_or_else(|| Error::Precondition("no final object".into()))?;
    let bang = c.to_terminal(x).expect("terminal");
    let idx = c.identity(x);
    let (xx, _, _) = product(c, x, x)?;
    let delta = pair(c, x, x, &idx, &idx)?;
    let ev = Span::new(s, delta.clone(), bang.clone())?;
    let coev = Span::new(s, bang.clone(), delta)?;
    let idspan = Span::identity(s, x);

    let (x1, pa, pb) = product(c, x, &one)?;
    let (ox, qa, qb) = product(c, &one, x)?;
    let rho_inv = Span::forward(s, &pair(c, x, &one, &idx, &bang)?)?;
    let rho = Span::forward(s, &pa)?;
    let lam_inv = Span::forward(s, &pair(c, &one, x, &bang, &idx)?)?;
    let lam = Span::forward(s, &qb)?;
    let _ = (x1, pb, ox, qa);

    // (X×X)×X and X×(X×X) with the associator between them
    let (l3, u1, u2) = product(c, &xx, x)?;
    let (r3, v1, v2) = product(c, x, &xx)?;
    let (_, w1, w2) = product(c, x, x)?;
    let a = c.compose(&w1, &u1).expect("composable");
    let b = c.compose(&w2, &u1).expect("composable");
    let bc = pair(c, x, x, &b, &u2)?;
    let assoc = pair(c, x, &xx, &a, &bc)?;
    let a2 = c.compose(&w1, &v2).expect("composable");
    let b2 = c.compose(&w2, &v2).expect("composable");
    let ab = pair(c, x, x, &v1, &a2)?;
    let assoc_inv = pair(c, &xx, x, &ab, &b2)?;
    let _ = (l3, r3);
    let assoc = Span::forward(s, &assoc)?;
    let assoc_inv = Span::forward(s, &assoc_inv)?;

    let left_zigzag = compose_chain(
        s,
        &[
            rho_inv,
            span_product(s, &idspan, &coev)?,
            assoc_inv,
            span_product(s, &ev, &idspan)?,
            lam,
        ],
    )?;
    let right_zigzag = compose_chain(
        s,
        &[
            lam_inv,
            span_product(s, &coev, &idspan)?,
            assoc,
            span_product(s, &idspan, &ev)?,
            rho,
        ],
    )?;
    let left_witness = span_iso(c, &left_zigzag, &idspan)
        .ok_or_else(|| Error::theorem("corr-duals", "left zigzag not isomorphic to the identity"))?;
    let right_witness = span_iso(c, &right_zigzag, &idspan)
        .ok_or_else(|| Error::theorem("corr-duals", "right zigzag not isomorphic to the identity"))?;
    Ok(DualData {
        ev,
        coev,
        left_zigzag,
        right_zigzag,
        left_witness,
        right_witness,
    })
}

/// Representatives of span isomorphism classes `X ⇒ Y`.
pub fn corr_hom<C: Category>(s: &GeometricSetup<C>, x: &C::Obj, y: &C::Obj, bound: usize) -> Result<Vec<Span<C>>> {
    let c = &s.base;
    let mut candidates = Vec::new();
    for z in c.objects() {
        let lefts = c.hom(&z, x);
        if lefts.is_empty() {
            continue;
        }
        let rights: Vec<C::Mor> = c.hom(&z, y).into_iter().filter(|r| s.in_e(r)).collect();
        if candidates.len() + lefts.len() * rights.len() > bound {
            return Err(Error::Bound(format!("more than {bound} candidate spans")));
        }
        for l in &lefts {
            for r in &rights {
                candidates.push((l.clone(), r.clone()));
            }
        }
    }
    let mut classes: Vec<Span<C>> = Vec::new();
    for (l, r) in candidates {
        let sp = Span::new(s, l, r)?;
        if !classes.iter().any(|k| span_iso(c, &sp, k).is_some()) {
            classes.push(sp);
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{samples, FinSet, FnMor};

    fn finset(max: usize) -> GeometricSetup<FinSet> {
        GeometricSetup::new(FinSet::new(max), Exceptional::All)
    }

    #[test]
    fn trivial_setups_valid() {
        for c in [samples::chain3(), samples::divisors12(), samples::split_idempotent()] {
            let r = validate_setup(&GeometricSetup::new(c.clone(), Exceptional::Isomorphisms));
            assert!(r.is_valid(), "{r:?}");
        }
        let r = validate_setup(&GeometricSetup::new(samples::divisors12(), Exceptional::All));
        assert!(r.is_valid() && r.agree());
        assert!(validate_setup(&finset(2)).is_valid());
    }

    #[test]
    fn chain_missing_edge() {
        let c = samples::chain3();
        let m = |a: usize, b: usize| c.homset(a, b)[0];
        let e = [m(0, 0), m(1, 1), m(2, 2), m(0, 2), m(1, 2)];
        let s = GeometricSetup::listed(c.clone(), e).unwrap();
        let r = validate_setup(&s);
        assert!(!r.right_cancellative);
        assert!(!r.diagonal_verdict() && !r.cancellative_verdict() && r.agree());
        assert!(GeometricSetup::listed(c, [99]).is_err());
    }

    // oracle: right cancellativity from the definition, diagonals via explicit kernel pairs in a poset
    #[test]
    fn exhaustive_agreement_on_chain() {
        let c = samples::chain3();
        let n = c.num_morphisms();
        for mask in 0u32..(1 << n) {
            let s = GeometricSetup::listed(c.clone(), (0..n).filter(|i| mask >> i & 1 == 1)).unwrap();
            assert!(validate_setup(&s).agree(), "mask {mask:b}");
        }
    }

    #[test]
    fn pullbacks() {
        let fs = FinSet::new(3);
        let f = FnMor::new(1, vec![0, 0]);
        let g = FnMor::new(1, vec![0, 0, 0]);
        let pb = pullback(&fs, &f, &g).unwrap().unwrap();
        assert_eq!(pb.apex, 6);
        let id = FnMor::new(2, vec![0, 1]);
        let h = FnMor::new(2, vec![1, 0, 1]);
        assert_eq!(pullback(&fs, &h, &id).unwrap().unwrap().apex, 3);
        let d = samples::divisors12();
        let ix = |s: &str| d.object_index(s).unwrap();
        let pb = pullback(&d, &d.homset(ix("4"), ix("12"))[0], &d.homset(ix("6"), ix("12"))[0]).unwrap().unwrap();
        assert_eq!(d.obj_name(pb.apex), "2");
        assert!(pb.cones_checked > 0);
    }

    #[test]
    fn span_composition_examples() {
        let s = finset(4);
        let sp = Span::new(&s, FnMor::new(1, vec![0, 0]), FnMor::new(1, vec![0, 0])).unwrap();
        let sq = compose_spans(&s, &sp, &sp).unwrap();
        assert_eq!(sq.apex, 4);
        let id = Span::identity(&s, &1);
        let u = compose_spans(&s, &sp, &id).unwrap();
        assert!(span_iso(&s.base, &u, &sp).is_some());
        let f = FnMor::new(3, vec![2, 0]);
        let g = FnMor::new(2, vec![1, 0, 1]);
        let c = compose_spans(&s, &Span::forward(&s, &f).unwrap(), &Span::forward(&s, &g).unwrap()).unwrap();
        let gf = s.base.compose(&g, &f).unwrap();
        assert_eq!(c, Span::forward(&s, &gf).unwrap());
    }

    #[test]
    fn span_isos() {
        let s = finset(3);
        let sp = Span::new(&s, FnMor::new(1, vec![0, 0]), FnMor::new(2, vec![1, 0])).unwrap();
        assert_eq!(span_iso(&s.base, &sp, &sp), Some(FnMor::new(2, vec![0, 1])));
        let big = Span::new(&s, FnMor::new(1, vec![0, 0, 0]), FnMor::new(2, vec![1, 0, 0])).unwrap();
        assert!(span_iso(&s.base, &sp, &big).is_none());
        // a second pullback choice: permute the canonical apex
        let f = FnMor::new(2, vec![0, 1, 1]);
        let g = FnMor::new(2, vec![1, 1, 0]);
        let (p, p1, p2) = s.base.pullback(&f, &g).unwrap();
        let perm = FnMor::new(p, (0..p).rev().collect());
        let a = Span::new(&s, p1.clone(), p2.clone()).unwrap();
        let b = Span::new(&s, s.base.compose(&p1, &perm).unwrap(), s.base.compose(&p2, &perm).unwrap()).unwrap();
        assert!(span_iso(&s.base, &a, &b).is_some());
    }

    #[test]
    fn duals_in_finsets() {
        let s = finset(3);
        for x in 0..=3usize {
            let d = dual_data(&s, &x).unwrap();
            assert_eq!(d.left_zigzag.apex, x);
            assert_eq!(d.right_zigzag.apex, x);
        }
        let d = dual_data(&s, &1).unwrap();
        assert_eq!(d.ev, Span::identity(&s, &1));
    }

    #[test]
    fn hom_classes() {
        let s = finset(2);
        let hs = corr_hom(&s, &1, &1, 100).unwrap();
        let mut apexes: Vec<usize> = hs.iter().map(|h| h.apex).collect();
        apexes.sort();
        assert_eq!(apexes, vec![0, 1, 2]);
        assert!(matches!(corr_hom(&s, &2, &2, 3), Err(Error::Bound(_))));
        // E = isomorphisms: classes match Hom(Y, X)
        let c = samples::split_idempotent();
        let iso = GeometricSetup::new(c.clone(), Exceptional::Isomorphisms);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(corr_hom(&iso, &x, &y, 1000).unwrap().len(), c.homset(y, x).len());
            }
        }
        let empty = FiniteCategory::from_tables(vec![], vec![], vec![], Default::default()).unwrap();
        let e = GeometricSetup::new(empty, Exceptional::All);
        assert!(e.morphisms().is_empty());
    }

    #[test]
    fn setup_json_round_trip() {
        let c = samples::chain3();
        let s = GeometricSetup::new(c, Exceptional::All);
        let spec = s.to_spec();
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"E\":true"));
        let back = GeometricSetup::from_spec(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.morphisms().into_iter().filter(|m| back.in_e(m)).count(), 6);
    }
}
