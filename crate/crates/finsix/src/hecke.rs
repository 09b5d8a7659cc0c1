//! Double cosets, compact induction and Hecke algebras of finite groups.
//!
//! `cInd_K^G V` is modelled as functions `f: G → V` with `f(kg) = ρ(k)f(g)` and
//! `G` acting by right translation. A function is stored by its values at the
//! minimal representatives `r_j` of the right cosets `K r_j`. The Hecke algebra is
//! computed twice: as `End_G` of that sheaf on `*/G`, and as bi-equivariant
//! functions `G → End(V)` under convolution.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adjunction::{mate_lambda, mate_rho, MateSquare, TwoCategory};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, GroupoidFunctor, GroupoidRef, WideProduct};
use crate::kernel::{prim_test, K2Cell};
use crate::matrix::Matrix;
use crate::sheaf::{find_iso, hom_basis, hom_dim, lan, lan_morphism, Sheaf, SheafMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCoset {
    /// Minimal element of `HgK`.
    pub rep: usize,
    pub size: usize,
    /// `|H ∩ gKg⁻¹|`.
    pub stabilizer: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCosets {
    pub cosets: Vec<DoubleCoset>,
    /// Double coset index of every element.
    pub index: Vec<usize>,
    /// Components of `*/H ×_{*/G} */K`.
    pub fiber_components: usize,
    /// Automorphism orders of those components, sorted.
    pub fiber_automorphisms: Vec<usize>,
}

impl DoubleCosets {
    /// Component count and automorphism orders agree with the fiber product.
    pub fn matches_fiber_product(&self) -> bool {
        let mut st: Vec<usize> = self.cosets.iter().map(|c| c.stabilizer).collect();
        st.sort_unstable();
        self.fiber_components == self.cosets.len() && st == self.fiber_automorphisms
    }
}

/// The delooping of a subgroup together with its inclusion.
fn inclusion(big: &GroupoidRef, g: &FiniteGroup, elems: &[usize]) -> (GroupoidRef, GroupoidFunctor) {
    let (sub, emb) = g.subgroup_group(elems);
    let small = Arc::new(FiniteGroupoid::delooping(&sub));
    let f = GroupoidFunctor::from_group_hom(&small, big, &emb);
    (small, f)
}

/// `H\G/K` with minimal representatives, checked against the iso-comma product.
pub fn double_cosets(g: &FiniteGroup, h: &[usize], k: &[usize]) -> Result<DoubleCosets> {
    let h = g.check_subgroup(h)?;
    let k = g.check_subgroup(k)?;
    let mut index = vec![usize::MAX; g.order()];
    let mut cosets = Vec::new();
    for x in g.elements() {
        if index[x] != usize::MAX {
            continue;
        }
        let c = cosets.len();
        let mut size = 0;
        for &a in &h {
            for &b in &k {
                let y = g.mul(g.mul(a, x), b);
                if index[y] == usize::MAX {
                    index[y] = c;
                    size += 1;
                }
            }
        }
        let xi = g.inv(x);
        let stabilizer = h.iter().filter(|&&a| k.contains(&g.mul(g.mul(xi, a), x))).count();
        cosets.push(DoubleCoset { rep: x, size, stabilizer });
    }
    let big = Arc::new(FiniteGroupoid::delooping(g));
    let (_, fh) = inclusion(&big, g, &h);
    let (_, fk) = inclusion(&big, g, &k);
    let w = WideProduct::iso_comma(&fh, &fk)?;
    let comps = w.groupoid.components();
    let mut fiber_automorphisms: Vec<usize> = comps.iter().map(|c| c.group.order()).collect();
    fiber_automorphisms.sort_unstable();
    Ok(DoubleCosets {
        cosets,
        index,
        fiber_components: comps.len(),
        fiber_automorphisms,
    })
}

/// A subgroup `K ≤ G` with the deloopings and inclusion `*/K → */G`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// Elements of `K` in increasing order.
    pub elems: Vec<usize>,
    pub big: GroupoidRef,
    pub small: GroupoidRef,
    pub inclusion: GroupoidFunctor,
    local: Vec<Option<usize>>,
}

impl Subgroup {
    pub fn new(g: &FiniteGroup, elems: &[usize]) -> Result<Subgroup> {
        let elems = g.check_subgroup(elems)?;
        let big = Arc::new(FiniteGroupoid::delooping(g));
        let (small, inclusion) = inclusion(&big, g, &elems);
        let mut local = vec![None; g.order()];
        for (i, &e) in elems.iter().enumerate() {
            local[e] = Some(i);
        }
        Ok(Subgroup {
            group: g.clone(),
            elems,
            big,
            small,
            inclusion,
            local,
        })
    }

    /// Parses a subgroup from generator names such as `(12)`.
    pub fn generated_by(g: &FiniteGroup, gens: &[&str]) -> Result<Subgroup> {
        let gs = gens.iter().map(|s| g.parse_element(s)).collect::<Result<Vec<_>>>()?;
        Subgroup::new(g, &g.generated(&gs))
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup::new(g, &g.elements().collect::<Vec<_>>()).expect("whole group")
    }

    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup::new(g, &[g.identity()]).expect("trivial subgroup")
    }

    pub fn contains(&self, x: usize) -> bool {
        self.local[x].is_some()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.elems.len()
    }

    pub fn unit_weight(&self, field: Field) -> Sheaf {
        Sheaf::unit(&self.small, field)
    }

    /// `ρ(k)` for `k ∈ K` given as an element of `G`.
    fn rho<'a>(&self, v: &'a Sheaf, k: usize) -> &'a Matrix {
        &v.rep[0][self.local[k].expect("element of the subgroup")]
    }

    fn check_weight(&self, v: &Sheaf) -> Result<()> {
        if !crate::groupoid::same(&v.base, &self.small) {
            return Err(Error::Structural("weight does not live on the subgroup's delooping".into()));
        }
        self.big.gate(v.field)
    }
}

/// `cInd_K^G V` in the function model, with an intertwiner to `i_!V`.
#[derive(Clone, Debug)]
pub struct Induced {
    pub subgroup: Subgroup,
    pub weight: Sheaf,
    pub sheaf: Sheaf,
    /// Minimal representatives of the right cosets `K r`.
    pub reps: Vec<usize>,
    pub coset_of: Vec<usize>,
    /// `cInd V → i_!V`.
    pub intertwiner: SheafMorphism,
}

impl Induced {
    pub fn dim(&self) -> usize {
        self.sheaf.dim(0)
    }

    fn d(&self) -> usize {
        self.weight.dim(0)
    }

    /// The block of `r_j` in a function vector.
    fn block(&self, j: usize) -> usize {
        j * self.d()
    }

    /// `r g = k r_j`, returned as `(k, j)`.
    fn factor(&self, x: usize) -> (usize, usize) {
        let g = &self.subgroup.group;
        let j = self.coset_of[x];
        (g.mul(x, g.inv(self.reps[j])), j)
    }
}

pub fn compact_induction(sub: &Subgroup, v: &Sheaf) -> Result<Induced> {
    sub.check_weight(v)?;
    let g = &sub.group;
    let f = v.field;
    let (coset_of, reps) = g.right_cosets(&sub.elems);
    let d = v.dim(0);
    let n = reps.len();
    let mats = g
        .elements()
        .map(|x| {
            let mut m = Matrix::zeros(f, n * d, n * d);
            for (i, &r) in reps.iter().enumerate() {
                let y = g.mul(r, x);
                let j = coset_of[y];
                let k = g.mul(y, g.inv(reps[j]));
                m.paste(i * d, j * d, sub.rho(v, k));
            }
            m
        })
        .collect();
    let sheaf = Sheaf::from_representation(&sub.big, f, mats)?;
    let lower = lan(&sub.inclusion, v)?;
    let intertwiner = find_iso(&sheaf, &lower)
        .ok_or_else(|| Error::theorem("compact-induction", "function model is not isomorphic to i_!V"))?;
    Ok(Induced {
        subgroup: sub.clone(),
        weight: v.clone(),
        sheaf,
        reps,
        coset_of,
        intertwiner,
    })
}

/// A function `G → End(V)`, one matrix per element.
#[derive(Clone, Debug, PartialEq)]
pub struct BiFunction {
    pub values: Vec<Matrix>,
}

impl BiFunction {
    fn flatten(&self) -> Vec<Scalar> {
        self.values.iter().flat_map(|m| m.data().iter().cloned()).collect()
    }

    fn add_scaled(&mut self, other: &BiFunction, s: &Scalar) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a = a.add(&b.scale(s));
        }
    }
}

#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    pub induced: Induced,
    /// Model B basis, grouped by double coset.
    pub basis: Vec<BiFunction>,
    /// Double coset representative carrying each basis element.
    pub support: Vec<usize>,
    /// `constants[a][b]`: coordinates of `B_a * B_b`.
    pub constants: Vec<Vec<Vec<Scalar>>>,
    pub identity: Vec<Scalar>,
    /// Model A: a basis of `End_G(cInd V)`.
    pub endo_basis: Vec<SheafMorphism>,
    pub certificate: HeckeCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeCertificate {
    pub dim_a: usize,
    pub dim_b: usize,
    pub bi_equivariant: bool,
    pub associative: bool,
    pub unital: bool,
    /// `Φ(T)` acts on the function model as `T` does.
    pub phi_inverts_action: bool,
    pub phi_multiplicative: bool,
    pub phi_unital: bool,
    pub phi_injective: bool,
}

impl HeckeCertificate {
    pub fn holds(&self) -> bool {
        self.dim_a == self.dim_b
            && self.bi_equivariant
            && self.associative
            && self.unital
            && self.phi_inverts_action
            && self.phi_multiplicative
            && self.phi_unital
            && self.phi_injective
    }
}

impl HeckeAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> Field {
        self.induced.weight.field
    }

    fn group(&self) -> &FiniteGroup {
        &self.induced.subgroup.group
    }

    pub fn zero(&self) -> BiFunction {
        let d = self.induced.d();
        BiFunction {
            values: vec![Matrix::zeros(self.field(), d, d); self.group().order()],
        }
    }

    /// `F_e`: supported on `K`, `F_e(k) = ρ(k)`.
    pub fn unit(&self) -> BiFunction {
        let sub = &self.induced.subgroup;
        let mut out = self.zero();
        for &k in &sub.elems {
            out.values[k] = sub.rho(&self.induced.weight, k).clone();
        }
        out
    }

    /// `(F₁ * F₂)(g) = Σ_j F₁(g r_j⁻¹) F₂(r_j)`.
    pub fn convolve(&self, a: &BiFunction, b: &BiFunction) -> BiFunction {
        let g = self.group();
        let mut out = self.zero();
        for x in g.elements() {
            for &r in &self.induced.reps {
                let t = a.values[g.mul(x, g.inv(r))].mul(&b.values[r]);
                out.values[x] = out.values[x].add(&t);
            }
        }
        out
    }

    pub fn is_bi_equivariant(&self, a: &BiFunction) -> bool {
        let g = self.group();
        let sub = &self.induced.subgroup;
        let v = &self.induced.weight;
        g.elements().all(|x| {
            sub.elems.iter().all(|&k| {
                sub.elems.iter().all(|&k2| {
                    a.values[g.mul(g.mul(k, x), k2)] == sub.rho(v, k).mul(&a.values[x]).mul(sub.rho(v, k2))
                })
            })
        })
    }

    pub fn combine(&self, coords: &[Scalar]) -> BiFunction {
        let mut out = self.zero();
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled(b, c);
        }
        out
    }

    /// Coordinates in the basis, or `None` outside the span.
    pub fn coordinates(&self, a: &BiFunction) -> Option<Vec<Scalar>> {
        coordinates(&self.basis, a, self.field())
    }

    /// Product of two coordinate vectors through the structure constants.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            for (b, yb) in y.iter().enumerate() {
                if xa.is_zero() || yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for (o, c) in out.iter_mut().zip(&self.constants[a][b]) {
                    *o = &*o + &(&s * c);
                }
            }
        }
        out
    }

    /// The operator of a function on `cInd V`: block `(i, j)` is `F(r_i r_j⁻¹)`.
    pub fn operator(&self, a: &BiFunction) -> Matrix {
        let g = self.group();
        let ind = &self.induced;
        let d = ind.d();
        let mut m = Matrix::zeros(self.field(), ind.dim(), ind.dim());
        for (i, &ri) in ind.reps.iter().enumerate() {
            for (j, &rj) in ind.reps.iter().enumerate() {
                m.paste(i * d, j * d, &a.values[g.mul(ri, g.inv(rj))]);
            }
        }
        m
    }

    /// `Φ(T)(k r_j) = ρ(k) T_{j,e}` where `T_{j,e}` is the block of `T` applied to `f_v`.
    pub fn phi(&self, t: &Matrix) -> BiFunction {
        let ind = &self.induced;
        let d = ind.d();
        let e = ind.coset_of[self.group().identity()];
        let mut out = self.zero();
        for x in self.group().elements() {
            let (k, j) = ind.factor(x);
            let blk = t.block(ind.block(j), ind.block(e), d, d);
            out.values[x] = ind.subgroup.rho(&ind.weight, k).mul(&blk);
        }
        out
    }

    /// Multiplication matrix of `T_a` acting on the double coset basis, for display.
    pub fn structure_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        self.constants.clone()
    }
}

fn coordinates(basis: &[BiFunction], a: &BiFunction, f: Field) -> Option<Vec<Scalar>> {
    let cols: Vec<Vec<Scalar>> = basis.iter().map(BiFunction::flatten).collect();
    let rhs = a.flatten();
    let n = rhs.len();
    let mut m = Matrix::zeros(f, n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, s) in c.iter().enumerate() {
            m.set(i, j, s.clone());
        }
    }
    let x = m.solve(&Matrix::new(f, n, 1, rhs.clone()))?;
    let coords: Vec<Scalar> = (0..cols.len()).map(|j| x.get(j, 0).clone()).collect();
    let back = m.mul(&Matrix::new(f, cols.len(), 1, coords.clone()));
    (back.data() == rhs.as_slice()).then_some(coords)
}

/// Solutions `X` of `ρ(k) X ρ(w⁻¹k⁻¹w) = X` for `k ∈ K ∩ wKw⁻¹`.
fn local_basis(sub: &Subgroup, v: &Sheaf, w: usize) -> Vec<Matrix> {
    let g = &sub.group;
    let f = v.field;
    let d = v.dim(0);
    let wi = g.inv(w);
    let mut rows = Vec::new();
    for &k in &sub.elems {
        let k2 = g.mul(g.mul(wi, g.inv(k)), w);
        if !sub.contains(k2) {
            continue;
        }
        let (a, b) = (sub.rho(v, k), sub.rho(v, k2));
        // vec_row(A X B) = (A ⊗ Bᵀ) vec_row(X)
        rows.push(a.kron(&b.transpose()).sub(&Matrix::identity(f, d * d)));
    }
    let sys = if rows.is_empty() {
        Matrix::zeros(f, 0, d * d)
    } else {
        Matrix::vstack(&rows, f, d * d)
    };
    let ns = sys.nullspace();
    (0..ns.cols()).map(|j| Matrix::unvec(&ns.select_cols(&[j]), d, d)).collect()
}

pub fn hecke_algebra(sub: &Subgroup, v: &Sheaf) -> Result<HeckeAlgebra> {
    let induced = compact_induction(sub, v)?;
    let g = &sub.group;
    let f = v.field;
    let d = v.dim(0);
    let dc = double_cosets(g, &sub.elems, &sub.elems)?;
    let mut basis = Vec::new();
    let mut support = Vec::new();
    for c in &dc.cosets {
        for x in local_basis(sub, v, c.rep) {
            let mut values = vec![Matrix::zeros(f, d, d); g.order()];
            for &k in &sub.elems {
                for &k2 in &sub.elems {
                    let y = g.mul(g.mul(k, c.rep), k2);
                    values[y] = sub.rho(v, k).mul(&x).mul(sub.rho(v, k2));
                }
            }
            basis.push(BiFunction { values });
            support.push(c.rep);
        }
    }
    let endo_basis = hom_basis(&induced.sheaf, &induced.sheaf);
    let mut alg = HeckeAlgebra {
        induced,
        basis,
        support,
        constants: Vec::new(),
        identity: Vec::new(),
        endo_basis,
        certificate: HeckeCertificate {
            dim_a: 0,
            dim_b: 0,
            bi_equivariant: false,
            associative: false,
            unital: false,
            phi_inverts_action: false,
            phi_multiplicative: false,
            phi_unital: false,
            phi_injective: false,
        },
    };
    let n = alg.dim();
    let mut constants = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let p = alg.convolve(&alg.basis[a], &alg.basis[b]);
            constants[a][b] = alg
                .coordinates(&p)
                .ok_or_else(|| Error::theorem("hecke-convolution", "convolution leaves the bi-equivariant span"))?;
        }
    }
    alg.constants = constants;
    alg.identity = alg
        .coordinates(&alg.unit())
        .ok_or_else(|| Error::theorem("hecke-convolution", "unit is not bi-equivariant"))?;
    alg.certificate = certify(&alg);
    if !alg.certificate.holds() {
        return Err(Error::theorem("hecke-models", format!("{:?}", alg.certificate)));
    }
    Ok(alg)
}

fn unit_vector(f: Field, n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()
}

fn certify(alg: &HeckeAlgebra) -> HeckeCertificate {
    let n = alg.dim();
    let f = alg.field();
    let e = |i| unit_vector(f, n, i);
    let associative = (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let ab = alg.multiply(&e(a), &e(b));
                let bc = alg.multiply(&e(b), &e(c));
                alg.multiply(&ab, &e(c)) == alg.multiply(&e(a), &bc)
            })
        })
    });
    let unital = (0..n).all(|a| alg.multiply(&alg.identity, &e(a)) == e(a) && alg.multiply(&e(a), &alg.identity) == e(a));
    let ts: Vec<Matrix> = alg.endo_basis.iter().map(|t| t.comps[0].clone()).collect();
    let images: Vec<BiFunction> = ts.iter().map(|t| alg.phi(t)).collect();
    let phi_inverts_action = ts.iter().zip(&images).all(|(t, p)| &alg.operator(p) == t);
    let phi_multiplicative = ts.iter().zip(&images).all(|(s, ps)| {
        ts.iter()
            .zip(&images)
            .all(|(t, pt)| alg.phi(&s.mul(t)) == alg.convolve(ps, pt))
    });
    let id = Matrix::identity(f, alg.induced.dim());
    let phi_unital = alg.phi(&id) == alg.unit();
    let flat: Vec<BiFunction> = images.clone();
    let phi_injective = rank_of(&flat, f) == flat.len() && images.iter().all(|p| alg.coordinates(p).is_some());
    HeckeCertificate {
        dim_a: ts.len(),
        dim_b: n,
        bi_equivariant: alg.basis.iter().all(|b| alg.is_bi_equivariant(b)),
        associative,
        unital,
        phi_inverts_action,
        phi_multiplicative,
        phi_unital,
        phi_injective,
    }
}

fn rank_of(fs: &[BiFunction], f: Field) -> usize {
    if fs.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = fs.iter().map(BiFunction::flatten).collect();
    let m = Matrix::new(f, rows.len(), rows[0].len(), rows.concat());
    m.rank()
}

/// `V*` with `ρ*(k) = ρ(k⁻¹)ᵀ`.
pub fn dual_weight(sub: &Subgroup, v: &Sheaf) -> Result<Sheaf> {
    let g = &sub.group;
    let mats = sub.elems.iter().map(|&k| sub.rho(v, g.inv(k)).transpose()).collect();
    Sheaf::from_representation(&sub.small, v.field, mats)
}

/// `F ↦ [g ↦ F(g⁻¹)ᵀ]`, a map `H(G,K,V) → H(G,K,V*)`.
pub fn to_dual(alg: &HeckeAlgebra, a: &BiFunction) -> BiFunction {
    let g = alg.group();
    BiFunction {
        values: g.elements().map(|x| a.values[g.inv(x)].transpose()).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionReport {
    /// `ι` on the basis, as coordinate vectors.
    pub images: Vec<Vec<Scalar>>,
    pub anti_multiplicative: bool,
    pub involutive: bool,
    pub unital: bool,
    /// For a weight of rank one: `ι(T_w) = T_{w⁻¹}`, as a permutation of the basis.
    pub coset_inversion: Option<Vec<usize>>,
    pub inversion_matches: bool,
}

impl InvolutionReport {
    pub fn holds(&self) -> bool {
        self.anti_multiplicative && self.involutive && self.unital && self.inversion_matches
    }
}

fn self_dual(sub: &Subgroup, v: &Sheaf) -> bool {
    let g = &sub.group;
    sub.elems.iter().all(|&k| sub.rho(v, g.inv(k)).transpose() == *sub.rho(v, k))
}

/// `ι(F)(g) = F(g⁻¹)ᵀ` on an algebra whose weight satisfies `ρ(k⁻¹)ᵀ = ρ(k)`.
pub fn anti_involution(alg: &HeckeAlgebra, a: &BiFunction) -> Result<BiFunction> {
    if !self_dual(&alg.induced.subgroup, &alg.induced.weight) {
        return Err(Error::Precondition(
            "weight is not self-dual under the transpose pairing; use to_dual".into(),
        ));
    }
    Ok(to_dual(alg, a))
}

pub fn involution_report(alg: &HeckeAlgebra) -> Result<InvolutionReport> {
    let n = alg.dim();
    let f = alg.field();
    let mut images = Vec::with_capacity(n);
    for b in &alg.basis {
        let i = anti_involution(alg, b)?;
        images.push(
            alg.coordinates(&i)
                .ok_or_else(|| Error::theorem("hecke-anti-involution", "image is not bi-equivariant"))?,
        );
    }
    let apply = |x: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![f.zero(); n];
        for (c, img) in x.iter().zip(&images) {
            for (o, y) in out.iter_mut().zip(img) {
                *o = &*o + &(c * y);
            }
        }
        out
    };
    let e = |i| unit_vector(f, n, i);
    let anti_multiplicative = (0..n).all(|a| {
        (0..n).all(|b| apply(&alg.multiply(&e(a), &e(b))) == alg.multiply(&apply(&e(b)), &apply(&e(a))))
    });
    let involutive = (0..n).all(|a| apply(&apply(&e(a))) == e(a));
    let unital = apply(&alg.identity) == alg.identity;
    let (coset_inversion, inversion_matches) = if alg.induced.d() == 1 {
        let g = alg.group();
        let dc = double_cosets(g, &alg.induced.subgroup.elems, &alg.induced.subgroup.elems)?;
        let perm: Vec<usize> = alg
            .support
            .iter()
            .map(|&w| {
                let c = dc.index[g.inv(w)];
                alg.support.iter().position(|&s| s == dc.cosets[c].rep).expect("coset in basis")
            })
            .collect();
        let ok = perm.iter().enumerate().all(|(a, &b)| images[a] == e(b));
        (Some(perm), ok)
    } else {
        (None, true)
    };
    Ok(InvolutionReport {
        images,
        anti_multiplicative,
        involutive,
        unital,
        coset_inversion,
        inversion_matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimHeckeReport {
    pub dim: usize,
    /// The prim adjunction for `cInd 𝟏` over `*/G → *` satisfies the triangle identities.
    pub adjunction: bool,
    /// `DPrim(cInd 𝟏) ≅ cInd 𝟏`.
    pub dual_identified: bool,
    /// `λ(ρ(τ)) = τ` on the lifted basis.
    pub mates_inverse: bool,
    /// The induced map is anti-multiplicative and involutive.
    pub anti_multiplicative: bool,
    pub involutive: bool,
    /// Equal to `ι` on the double coset basis.
    pub agrees: bool,
    /// Equal to `ι` after conjugating by a unit; implied by `agrees`.
    pub agrees_up_to_conjugation: bool,
}

impl PrimHeckeReport {
    pub fn holds(&self) -> bool {
        self.adjunction && self.dual_identified && self.mates_inverse && self.anti_multiplicative && self.involutive && self.agrees
    }
}

fn stage(name: &str) -> impl Fn(&str) -> Error + '_ {
    move |detail| Error::theorem("prim-duality-hecke", format!("{name}: {detail}"))
}

/// Transports endomorphisms of `cInd 𝟏` through the prim adjunction `P ⊣ DPrim(P)`
/// of `*/G → *` and compares the result with `ι`.
pub fn prim_duality_on_hecke(sub: &Subgroup, field: Field) -> Result<PrimHeckeReport> {
    let alg = hecke_algebra(sub, &sub.unit_weight(field))?;
    let p = alg.induced.sheaf.clone();
    let point = Arc::new(FiniteGroupoid::point());
    let f = GroupoidFunctor::to_point(&sub.big, &point);
    let rep = prim_test(&f, &p)?;
    let adjunction = rep.passes();
    if !adjunction {
        return Err(stage("prim-test")("triangle identities fail"));
    }
    let dual_identified = find_iso(&rep.dual, &p).is_some();
    if !dual_identified {
        return Err(stage("dual-identification")("DPrim(cInd 1) is not isomorphic to cInd 1"));
    }
    let kc = &rep.kernel_cat;
    let adj = &rep.adjunction;
    let (x, s) = (adj.left.target(), adj.left.source());
    let sq = MateSquare {
        adj,
        adj2: adj,
        a: kc.id1(&s),
        b: kc.id1(&x),
    };

    // lift T to NF(P) as a 2-cell, following the shape of the normal form
    let pi01 = kc.proj(&[x, s], &[0, 1])?;
    let pi0 = kc.proj(&[x, s], &[0])?;
    let unit = Sheaf::unit(&kc.wide(&[x, s])?.groupoid, field);
    let lift = |t: &SheafMorphism| -> Result<K2Cell> {
        let inner = SheafMorphism::identity(&unit).tensor(&t.pullback(&pi0).pullback(&pi01));
        Ok(K2Cell {
            dom: adj.left.clone(),
            cod: adj.left.clone(),
            map: lan_morphism(&pi01, &inner)?,
        })
    };

    // NF(R) ≅ q*P with q the projection to */G; q*P has the matrices of P
    let nf_r = kc.nf(&adj.right)?;
    let q = kc.proj(&[s, x], &[1])?;
    let pr = p.pullback(&q);
    if pr.base.num_objects() != 1 {
        return Err(stage("dual-identification")("unexpected fiber product shape"));
    }
    let theta = find_iso(&nf_r, &pr).ok_or_else(|| stage("dual-identification")("NF(R) is not isomorphic to P"))?;
    let theta_inv = theta.inverse().expect("iso");

    let mut mates_inverse = true;
    let mut prim_images = Vec::new();
    for t in &alg.endo_basis {
        let tau = lift(t)?;
        let r = mate_rho(kc, &sq, &tau)?;
        mates_inverse &= kc.eq2(&mate_lambda(kc, &sq, &r)?, &tau);
        let e = theta_inv.then(&r.map)?.then(&theta)?;
        let m = SheafMorphism::new(&p, &p, e.comps.clone())
            .map_err(|_| stage("transport")("transported map is not G-equivariant"))?;
        prim_images.push(m.comps[0].clone());
    }

    // compare with ι through Φ
    let ts: Vec<Matrix> = alg.endo_basis.iter().map(|t| t.comps[0].clone()).collect();
    let direct: Vec<Matrix> = ts
        .iter()
        .map(|t| Ok(alg.operator(&anti_involution(&alg, &alg.phi(t))?)))
        .collect::<Result<_>>()?;
    let n = ts.len();
    let apply = |x: &Matrix| -> Result<Matrix> {
        // linear extension of T_a ↦ prim_images[a]
        let mut out = Matrix::zeros(field, x.rows(), x.cols());
        let c = solve_in(&ts, x, field).ok_or_else(|| stage("transport")("element outside End"))?;
        for (s, m) in c.iter().zip(&prim_images) {
            out = out.add(&m.scale(s));
        }
        Ok(out)
    };
    let mut anti_multiplicative = true;
    for a in 0..n {
        for b in 0..n {
            let lhs = apply(&ts[a].mul(&ts[b]))?;
            anti_multiplicative &= lhs == prim_images[b].mul(&prim_images[a]);
        }
    }
    let mut involutive = true;
    for a in 0..n {
        involutive &= apply(&prim_images[a])? == ts[a];
    }
    let agrees = prim_images == direct;
    let agrees_up_to_conjugation = agrees || conjugate(&prim_images, &direct, field);
    Ok(PrimHeckeReport {
        dim: n,
        adjunction,
        dual_identified,
        mates_inverse,
        anti_multiplicative,
        involutive,
        agrees,
        agrees_up_to_conjugation,
    })
}

fn solve_in(basis: &[Matrix], x: &Matrix, f: Field) -> Option<Vec<Scalar>> {
    let n = x.rows() * x.cols();
    let cols: Vec<Matrix> = basis.iter().map(Matrix::vec).collect();
    let a = Matrix::hstack(&cols, f, n);
    let s = a.solve(&x.vec())?;
    (a.mul(&s) == x.vec()).then(|| (0..basis.len()).map(|i| s.get(i, 0).clone()).collect())
}

/// An invertible `u` with `xs[a] u = u ys[a]` for all `a`.
fn conjugate(xs: &[Matrix], ys: &[Matrix], f: Field) -> bool {
    let Some(first) = xs.first() else { return true };
    let d = first.rows();
    let id = Matrix::identity(f, d);
    // vec_row(X U - U Y) = (X ⊗ I - I ⊗ Yᵀ) vec_row(U)
    let rows: Vec<Matrix> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| x.kron(&id).sub(&id.kron(&y.transpose())))
        .collect();
    let ns = Matrix::vstack(&rows, f, d * d).nullspace();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4845);
    for _ in 0..16 {
        let mut u = Matrix::zeros(f, d * d, 1);
        for j in 0..ns.cols() {
            u = u.add(&ns.select_cols(&[j]).scale(&f.int(rng.gen_range(-7..=7))));
        }
        if Matrix::unvec(&u, d, d).is_invertible() {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub induced_side: usize,
    pub restricted_side: usize,
}

impl FrobeniusReport {
    pub fn holds(&self) -> bool {
        self.induced_side == self.restricted_side
    }
}

/// `dim Hom_G(cInd V, W)` against `dim Hom_K(V, Res W)`.
pub fn frobenius_check(sub: &Subgroup, v: &Sheaf, w: &Sheaf) -> Result<FrobeniusReport> {
    let ind = compact_induction(sub, v)?;
    Ok(FrobeniusReport {
        induced_side: hom_dim(&ind.sheaf, w),
        restricted_side: hom_dim(v, &w.pullback(&sub.inclusion)),
    })
}

/// Structure constants and `ι` on the double coset basis, keyed by representative names.
#[derive(Clone, Debug, Serialize)]
pub struct HeckeTable {
    pub basis: Vec<String>,
    pub products: BTreeMap<String, Vec<String>>,
    pub involution: Vec<String>,
}

pub fn hecke_table(alg: &HeckeAlgebra) -> Result<HeckeTable> {
    let g = alg.group();
    let names: Vec<String> = alg.support.iter().map(|&w| format!("T[{}]", g.name(w))).collect();
    let mut products = BTreeMap::new();
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            products.insert(format!("{}*{}", names[a], names[b]), render(&alg.constants[a][b], &names));
        }
    }
    let inv = involution_report(alg)?;
    let involution = inv.images.iter().map(|c| render(c, &names).join(" + ")).collect();
    Ok(HeckeTable {
        basis: names,
        products,
        involution,
    })
}

fn render(c: &[Scalar], names: &[String]) -> Vec<String> {
    c.iter()
        .zip(names)
        .filter(|(s, _)| !s.is_zero())
        .map(|(s, n)| if s.is_one() { n.clone() } else { format!("{s}{n}") })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    #[test]
    fn double_cosets_small() {
        let g = s3();
        let k = Subgroup::generated_by(&g, &["(12)"]).unwrap();
        let dc = double_cosets(&g, &k.elems, &k.elems).unwrap();
        let mut sizes: Vec<usize> = dc.cosets.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);
        assert!(dc.matches_fiber_product());
        let all: Vec<usize> = g.elements().collect();
        assert_eq!(double_cosets(&g, &all, &all).unwrap().cosets.len(), 1);
        let triv = double_cosets(&g, &[g.identity()], &k.elems).unwrap();
        assert_eq!(triv.cosets.len(), 3);
    }

    #[test]
    fn induction_dimensions() {
        let g = s3();
        let k = Subgroup::generated_by(&g, &["(12)"]).unwrap();
        let ind = compact_induction(&k, &k.unit_weight(Field::Rational)).unwrap();
        assert_eq!(ind.dim(), 3);
        let whole = Subgroup::whole(&g);
        let v = crate::sheaf::irreducibles_s3(&whole.small, Field::Rational).unwrap()[2].clone();
        let same = compact_induction(&whole, &v).unwrap();
        assert!(find_iso(&same.sheaf, &v).is_some());
    }

    #[test]
    fn regular_induces_regular() {
        let g = s3();
        let k = Subgroup::generated_by(&g, &["(123)"]).unwrap();
        let f = Field::Rational;
        let (sub, _) = g.subgroup_group(&k.elems);
        let reg_k: Vec<Matrix> = sub
            .elements()
            .map(|a| Matrix::from_columns_map(f, sub.order(), &sub.elements().map(|b| sub.mul(a, b)).collect::<Vec<_>>()))
            .collect();
        let v = Sheaf::from_representation(&k.small, f, reg_k).unwrap();
        let ind = compact_induction(&k, &v).unwrap();
        let reg_g: Vec<Matrix> = g
            .elements()
            .map(|a| Matrix::from_columns_map(f, g.order(), &g.elements().map(|b| g.mul(a, b)).collect::<Vec<_>>()))
            .collect();
        let rg = Sheaf::from_representation(&k.big, f, reg_g).unwrap();
        assert!(find_iso(&ind.sheaf, &rg).is_some());
    }

    #[test]
    fn s3_c2_hecke() {
        let g = s3();
        let k = Subgroup::generated_by(&g, &["(12)"]).unwrap();
        let alg = hecke_algebra(&k, &k.unit_weight(Field::Rational)).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.certificate.holds());
        // oracle: two cosets are adjacent when they differ
        let n = alg.induced.reps.len();
        let f = Field::Rational;
        let mut adj = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    adj.set(i, j, f.one());
                }
            }
        }
        let w = alg.support.iter().position(|&r| !k.contains(r)).unwrap();
        assert_eq!(alg.operator(&alg.basis[w]), adj);
        let sq = adj.mul(&adj);
        assert_eq!(sq, Matrix::identity(f, n).scale(&f.int(2)).add(&adj));
        let e = 1 - w;
        let mut expect = vec![f.zero(); 2];
        expect[e] = f.int(2);
        expect[w] = f.one();
        assert_eq!(alg.constants[w][w], expect);
        let inv = involution_report(&alg).unwrap();
        assert!(inv.holds());
        assert_eq!(inv.coset_inversion.unwrap(), vec![0, 1]);
    }

    #[test]
    fn trivial_subgroup_gives_group_algebra() {
        let g = s3();
        let k = Subgroup::trivial(&g);
        let alg = hecke_algebra(&k, &k.unit_weight(Field::Rational)).unwrap();
        assert_eq!(alg.dim(), 6);
        let inv = involution_report(&alg).unwrap();
        assert!(inv.holds());
        let whole = Subgroup::whole(&g);
        assert_eq!(hecke_algebra(&whole, &whole.unit_weight(Field::Rational)).unwrap().dim(), 1);
    }

    #[test]
    fn mod_p_and_higher_weight() {
        let g = s3();
        let whole = Subgroup::whole(&g);
        let f = Field::prime(5).unwrap();
        let v = crate::sheaf::irreducibles_s3(&whole.small, f).unwrap()[2].clone();
        let alg = hecke_algebra(&whole, &v).unwrap();
        assert_eq!(alg.dim(), 1);
        assert!(compact_induction(&whole, &Sheaf::unit(&whole.small, Field::prime(3).unwrap())).is_err());
    }

    #[test]
    fn non_self_dual_weight() {
        let g = FiniteGroup::cyclic(3);
        let k = Subgroup::whole(&g);
        let f = Field::prime(7).unwrap();
        let mats: Vec<Matrix> = [1, 2, 4].iter().map(|&a| Matrix::new(f, 1, 1, vec![f.int(a)])).collect();
        let v = Sheaf::from_representation(&k.small, f, mats).unwrap();
        let alg = hecke_algebra(&k, &v).unwrap();
        assert!(matches!(anti_involution(&alg, &alg.basis[0]), Err(Error::Precondition(_))));
        let vd = dual_weight(&k, &v).unwrap();
        let dual = hecke_algebra(&k, &vd).unwrap();
        assert!(dual.is_bi_equivariant(&to_dual(&alg, &alg.basis[0])));
    }

    #[test]
    fn frobenius() {
        let g = s3();
        let k = Subgroup::generated_by(&g, &["(12)"]).unwrap();
        let f = Field::Rational;
        let irr = crate::sheaf::irreducibles_s3(&k.big, f).unwrap();
        let v = k.unit_weight(f);
        let r = frobenius_check(&k, &v, &irr[2]).unwrap();
        assert!(r.holds() && r.induced_side == 1);
        assert_eq!(frobenius_check(&k, &v, &irr[0]).unwrap().induced_side, 1);
        let ind = compact_induction(&k, &v).unwrap();
        assert_eq!(frobenius_check(&k, &v, &ind.sheaf).unwrap().induced_side, 2);
    }

    #[test]
    fn prim_agrees_s3_c2() {
        let g = s3();
        let k = Subgroup::generated_by(&g, &["(12)"]).unwrap();
        let r = prim_duality_on_hecke(&k, Field::Rational).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.dim, 2);
    }

    #[test]
    fn prim_agrees_c4_c2_and_whole() {
        let g = FiniteGroup::cyclic(4);
        let k = Subgroup::new(&g, &g.generated(&[2])).unwrap();
        let r = prim_duality_on_hecke(&k, Field::Rational).unwrap();
        assert!(r.holds(), "{r:?}");
        let w = Subgroup::whole(&s3());
        assert!(prim_duality_on_hecke(&w, Field::Rational).unwrap().holds());
    }
}
