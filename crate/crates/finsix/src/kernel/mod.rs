//! The kernel 2-category over a base groupoid `S`.
//!
//! Objects are maps `X → S`. A 1-cell `Y → X` is a sheaf on `X ×_S Y`; composition
//! pulls back to the triple product, tensors, and pushes forward with `π₁₃!`.
//! 1-cells are kept as composable lists and 2-cells act on normal forms, which
//! makes composition strictly associative; the comparison isomorphisms between
//! normal forms and iterated composites are built from base change, projection
//! formulas and functoriality.

mod duality;

pub use duality::{
    base_change_suave_prim, dprim, dsuave, etale_proper_test, prim_test, suave_test, DualityReport,
    EtaleProperReport,
};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::adjunction::TwoCategory;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groupoid::{same, GroupoidFunctor, GroupoidRef, NatTrans, WideProduct};
use crate::sheaf::{
    base_change_square, find_iso, functoriality_shriek, lan, lan_morphism, projection_formula_left,
    projection_formula_right, Sheaf, SheafMorphism,
};

#[derive(Debug)]
pub struct KernelCat {
    pub base: GroupoidRef,
    pub field: Field,
    objects: Vec<GroupoidFunctor>,
    wides: Mutex<HashMap<Vec<usize>, Arc<WideProduct>>>,
    projs: Mutex<HashMap<(Vec<usize>, Vec<usize>), GroupoidFunctor>>,
}

/// A composable list `L_1 ∘ ⋯ ∘ L_n` with `L_i` a sheaf on `X_{i-1} ×_S X_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct KCell {
    pub objs: Vec<usize>,
    pub kernels: Vec<Sheaf>,
}

impl KCell {
    pub fn target(&self) -> usize {
        self.objs[0]
    }

    pub fn source(&self) -> usize {
        *self.objs.last().expect("nonempty chain")
    }

    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }
}

/// A 2-cell: a map between normal forms.
#[derive(Clone, Debug, PartialEq)]
pub struct K2Cell {
    pub dom: KCell,
    pub cod: KCell,
    pub map: SheafMorphism,
}

impl KernelCat {
    pub fn new(base: &GroupoidRef, field: Field) -> KernelCat {
        KernelCat {
            base: base.clone(),
            field,
            objects: Vec::new(),
            wides: Mutex::new(HashMap::new()),
            projs: Mutex::new(HashMap::new()),
        }
    }

    pub fn add_object(&mut self, map: &GroupoidFunctor) -> Result<usize> {
        if !same(&map.tgt, &self.base) {
            return Err(Error::Structural("object does not map to the base".into()));
        }
        self.objects.push(map.clone());
        Ok(self.objects.len() - 1)
    }

    /// Adds the base itself, via its identity.
    pub fn add_base(&mut self) -> usize {
        self.objects.push(GroupoidFunctor::identity(&self.base));
        self.objects.len() - 1
    }

    pub fn object(&self, i: usize) -> &GroupoidFunctor {
        &self.objects[i]
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// `X_{o_0} ×_S ⋯ ×_S X_{o_n}`, shared between calls.
    pub fn wide(&self, objs: &[usize]) -> Result<Arc<WideProduct>> {
        if let Some(w) = self.wides.lock().expect("cache").get(objs) {
            return Ok(w.clone());
        }
        let maps: Vec<GroupoidFunctor> = objs.iter().map(|&o| self.objects[o].clone()).collect();
        let w = Arc::new(WideProduct::new(&maps)?);
        self.wides.lock().expect("cache").insert(objs.to_vec(), w.clone());
        Ok(w)
    }

    /// The projection of `wide(objs)` onto the factors at `idx`.
    pub fn proj(&self, objs: &[usize], idx: &[usize]) -> Result<GroupoidFunctor> {
        let key = (objs.to_vec(), idx.to_vec());
        if let Some(p) = self.projs.lock().expect("cache").get(&key) {
            return Ok(p.clone());
        }
        let sub: Vec<usize> = idx.iter().map(|&i| objs[i]).collect();
        let p = self.wide(objs)?.project(idx, &*self.wide(&sub)?)?;
        self.projs.lock().expect("cache").insert(key, p.clone());
        Ok(p)
    }

    /// Groupoid carrying kernels `src → tgt`.
    pub fn hom_base(&self, tgt: usize, src: usize) -> Result<GroupoidRef> {
        Ok(self.wide(&[tgt, src])?.groupoid.clone())
    }

    /// A single kernel as a 1-cell `src → tgt`.
    pub fn cell(&self, tgt: usize, src: usize, kernel: &Sheaf) -> Result<KCell> {
        let hb = self.hom_base(tgt, src)?;
        if !same(&kernel.base, &hb) {
            return Err(Error::Structural("kernel lives on the wrong fiber product".into()));
        }
        Ok(KCell {
            objs: vec![tgt, src],
            kernels: vec![kernel.clone()],
        })
    }

    /// Pulls a sheaf on one factor back to a kernel `src → tgt`, the factor being `src` or `tgt`.
    pub fn kernel_from_factor(&self, tgt: usize, src: usize, on_src: bool, m: &Sheaf) -> Result<Sheaf> {
        let p = self.proj(&[tgt, src], &[if on_src { 1 } else { 0 }])?;
        Ok(m.pullback(&p))
    }

    /// `⊗_i π_{i-1,i}* L_i` on the wide product of the chain.
    fn chain_tensor(&self, c: &KCell) -> Result<Sheaf> {
        let w = self.wide(&c.objs)?;
        let mut t = Sheaf::unit(&w.groupoid, self.field);
        for (i, k) in c.kernels.iter().enumerate() {
            let p = self.proj(&c.objs, &[i, i + 1])?;
            t = t.tensor(&k.pullback(&p));
        }
        Ok(t)
    }

    /// The normal form `π_{0n}!(⊗_i π_{i-1,i}* L_i)`.
    pub fn nf(&self, c: &KCell) -> Result<Sheaf> {
        let n = c.objs.len() - 1;
        lan(&self.proj(&c.objs, &[0, n])?, &self.chain_tensor(c)?)
    }

    /// `Δ_!𝟏`, the identity kernel.
    pub fn kernel_identity(&self, x: usize) -> Result<Sheaf> {
        self.nf(&TwoCategory::id1(self, &x))
    }

    /// `M ∘ N = π₁₃!(π₁₂*M ⊗ π₂₃*N)` for `M: Y → X`, `N: Z → Y`.
    pub fn kernel_compose(&self, objs: [usize; 3], m: &Sheaf, n: &Sheaf) -> Result<Sheaf> {
        self.nf(&KCell {
            objs: objs.to_vec(),
            kernels: vec![m.clone(), n.clone()],
        })
    }

    fn concat(&self, l: &KCell, a: &KCell) -> Result<KCell> {
        if l.source() != a.target() {
            return Err(Error::Structural("1-cells not composable".into()));
        }
        let mut objs = l.objs.clone();
        objs.extend_from_slice(&a.objs[1..]);
        let mut kernels = l.kernels.clone();
        kernels.extend(a.kernels.iter().cloned());
        Ok(KCell { objs, kernels })
    }

    fn binary(&self, l: &KCell, a: &KCell) -> Result<KCell> {
        Ok(KCell {
            objs: vec![l.target(), l.source(), a.source()],
            kernels: vec![self.nf(l)?, self.nf(a)?],
        })
    }

    /// `c_{L,A}: NF(L·A) → NF(L) ∘ NF(A)`.
    pub fn comparison(&self, l: &KCell, a: &KCell) -> Result<SheafMorphism> {
        let full = self.concat(l, a)?;
        let (n, m) = (l.len(), a.len());
        let top = n + m;
        let fo = &full.objs;
        let w1_objs: Vec<usize> = fo[..=n].iter().copied().chain([fo[top]]).collect();
        let v_objs = vec![fo[0], fo[n], fo[top]];
        let a1 = self.proj(&w1_objs, &[0, n, n + 1])?;
        let b1 = self.proj(&w1_objs, &(0..=n).collect::<Vec<_>>())?;
        let a2 = self.proj(fo, &(0..=n).chain([top]).collect::<Vec<_>>())?;
        let b2 = self.proj(fo, &(n..=top).collect::<Vec<_>>())?;
        let pi12 = self.proj(&v_objs, &[0, 1])?;
        let pi23 = self.proj(&v_objs, &[1, 2])?;
        let pi13 = self.proj(&v_objs, &[0, 2])?;
        let pi_l = self.proj(&l.objs, &[0, n])?;
        let pi_a = self.proj(&a.objs, &[0, m])?;
        let q = self.proj(&w1_objs, &[n, n + 1])?;
        let t_l = self.chain_tensor(l)?;
        let t_a = self.chain_tensor(a)?;
        let t = self.chain_tensor(&full)?;
        let nf_a = lan(&pi_a, &t_a)?;

        let a12 = a1.after(&a2);
        if pi13.after(&a12) != self.proj(fo, &[0, top])? {
            return Err(Error::theorem("kernel-strictification", "projections do not compose"));
        }
        let func1 = functoriality_shriek(&a12, &pi13, &t)?.map;
        let func2 = lan_morphism(&pi13, &functoriality_shriek(&a2, &a1, &t)?.map)?;
        let tl1 = t_l.pullback(&b1);
        let ta2 = t_a.pullback(&b2);
        let pl = projection_formula_left(&a2, &tl1, &ta2)?.map;
        let bc2 = base_change_square(&pi_a, &q, &a2, &b2, &NatTrans::identity(&q.after(&a2)), &t_a)?;
        let step3 = SheafMorphism::identity(&tl1).tensor(&bc2);
        let pr = projection_formula_right(&a1, &tl1, &nf_a.pullback(&pi23))?.map;
        let bc1 = base_change_square(&pi_l, &pi12, &a1, &b1, &NatTrans::identity(&pi12.after(&a1)), &t_l)?;
        let step5 = bc1.tensor(&SheafMorphism::identity(&nf_a.pullback(&pi23)));
        let inner = lan_morphism(&a1, &pl)?.then(&lan_morphism(&a1, &step3)?)?.then(&pr)?.then(&step5)?;
        func1.then(&func2)?.then(&lan_morphism(&pi13, &inner)?)
    }

    fn inv(&self, m: &SheafMorphism, what: &str) -> Result<SheafMorphism> {
        m.inverse()
            .ok_or_else(|| Error::theorem("kernel-strictification", format!("{what} is not invertible")))
    }

    /// `M ∘ (N ∘ P) ≅ (M ∘ N) ∘ P`, through the normal form of the triple.
    pub fn associator(&self, m: &KCell, n: &KCell, p: &KCell) -> Result<K2Cell> {
        let mn = self.concat(m, n)?;
        let np = self.concat(n, p)?;
        let c_left = self.comparison(m, &np)?;
        let c_right = self.comparison(&mn, p)?;
        Ok(K2Cell {
            dom: self.binary(m, &np)?,
            cod: self.binary(&mn, p)?,
            map: self.inv(&c_left, "comparison")?.then(&c_right)?,
        })
    }

    /// `Δ_!𝟏 ∘ M ≅ M ≅ M ∘ Δ_!𝟏` as maps out of `M`.
    pub fn unitors(&self, m: &KCell) -> Result<(SheafMorphism, SheafMorphism)> {
        let left = self.comparison(&TwoCategory::id1(self, &m.target()), m)?;
        let right = self.comparison(m, &TwoCategory::id1(self, &m.source()))?;
        Ok((left, right))
    }

    /// `Ψ(M)(N) = π₁!(M ⊗ π₂*N)` for a kernel `M: Y → X` and `N` on `Y`.
    pub fn psi(&self, tgt: usize, src: usize, m: &Sheaf, n: &Sheaf) -> Result<Sheaf> {
        let p1 = self.proj(&[tgt, src], &[0])?;
        let p2 = self.proj(&[tgt, src], &[1])?;
        lan(&p1, &m.tensor(&n.pullback(&p2)))
    }

    /// `Φ` of a span `X ← Z → Y` over `S`, with `β: p_X a ⇒ p_Y b`.
    pub fn phi(&self, tgt: usize, src: usize, a: &GroupoidFunctor, b: &GroupoidFunctor, beta: &NatTrans) -> Result<Sheaf> {
        let w = self.wide(&[tgt, src])?;
        let h = w.mediate(&[a.clone(), b.clone()], std::slice::from_ref(beta))?;
        lan(&h, &Sheaf::unit(&a.src, self.field))
    }

    /// The canonical map `a_!b*N → Ψ(Φ(span))(N)`.
    pub fn phi_psi_map(
        &self,
        tgt: usize,
        src: usize,
        a: &GroupoidFunctor,
        b: &GroupoidFunctor,
        beta: &NatTrans,
        n: &Sheaf,
    ) -> Result<SheafMorphism> {
        let w = self.wide(&[tgt, src])?;
        let h = w.mediate(&[a.clone(), b.clone()], std::slice::from_ref(beta))?;
        let p1 = self.proj(&[tgt, src], &[0])?;
        let p2 = self.proj(&[tgt, src], &[1])?;
        let bn = n.pullback(b);
        let f = functoriality_shriek(&h, &p1, &bn)?.map;
        let one = Sheaf::unit(&a.src, self.field);
        let pr = projection_formula_right(&h, &one, &n.pullback(&p2))?.map;
        f.then(&lan_morphism(&p1, &pr)?)
    }

    /// `swap: D(X ×_S Y) → D(Y ×_S X)`.
    pub fn swap(&self, tgt: usize, src: usize, m: &Sheaf) -> Result<Sheaf> {
        Ok(m.pullback(&self.proj(&[src, tgt], &[1, 0])?))
    }

    /// `swap(M ∘ N) ≅ swap(N) ∘ swap(M)`, witnessed by an explicit isomorphism.
    pub fn swap_compose_iso(&self, objs: [usize; 3], m: &Sheaf, n: &Sheaf) -> Result<Option<SheafMorphism>> {
        let [x, y, z] = objs;
        let lhs = self.swap(x, z, &self.kernel_compose(objs, m, n)?)?;
        let rhs = self.kernel_compose([z, y, x], &self.swap(y, z, n)?, &self.swap(x, y, m)?)?;
        Ok(find_iso(&lhs, &rhs))
    }
}

impl TwoCategory for KernelCat {
    type Obj = usize;
    type One = KCell;
    type Two = K2Cell;

    fn source(&self, f: &KCell) -> usize {
        f.source()
    }

    fn target(&self, f: &KCell) -> usize {
        f.target()
    }

    fn id1(&self, x: &usize) -> KCell {
        KCell {
            objs: vec![*x],
            kernels: vec![],
        }
    }

    fn comp1(&self, g: &KCell, f: &KCell) -> Result<KCell> {
        self.concat(g, f)
    }

    fn dom(&self, a: &K2Cell) -> KCell {
        a.dom.clone()
    }

    fn cod(&self, a: &K2Cell) -> KCell {
        a.cod.clone()
    }

    fn id2(&self, f: &KCell) -> Result<K2Cell> {
        Ok(K2Cell {
            dom: f.clone(),
            cod: f.clone(),
            map: SheafMorphism::identity(&self.nf(f)?),
        })
    }

    fn vcomp(&self, b: &K2Cell, a: &K2Cell) -> Result<K2Cell> {
        if a.cod != b.dom {
            return Err(Error::Structural("2-cells not vertically composable".into()));
        }
        Ok(K2Cell {
            dom: a.dom.clone(),
            cod: b.cod.clone(),
            map: a.map.then(&b.map)?,
        })
    }

    fn hcomp(&self, b: &K2Cell, a: &K2Cell) -> Result<K2Cell> {
        let dom = self.concat(&b.dom, &a.dom)?;
        let cod = self.concat(&b.cod, &a.cod)?;
        let objs = [b.dom.target(), b.dom.source(), a.dom.source()];
        let v_objs = objs.to_vec();
        let pi12 = self.proj(&v_objs, &[0, 1])?;
        let pi23 = self.proj(&v_objs, &[1, 2])?;
        let pi13 = self.proj(&v_objs, &[0, 2])?;
        let mid = lan_morphism(&pi13, &b.map.pullback(&pi12).tensor(&a.map.pullback(&pi23)))?;
        let c_dom = self.comparison(&b.dom, &a.dom)?;
        let c_cod = self.comparison(&b.cod, &a.cod)?;
        let map = c_dom.then(&mid)?.then(&self.inv(&c_cod, "comparison")?)?;
        Ok(K2Cell { dom, cod, map })
    }

    fn eq1(&self, f: &KCell, g: &KCell) -> bool {
        f == g
    }

    fn eq2(&self, a: &K2Cell, b: &K2Cell) -> bool {
        a == b
    }

    fn inverse2(&self, a: &K2Cell) -> Option<K2Cell> {
        a.map.inverse().map(|map| K2Cell {
            dom: a.cod.clone(),
            cod: a.dom.clone(),
            map,
        })
    }
}

#[cfg(test)]
mod tests;
