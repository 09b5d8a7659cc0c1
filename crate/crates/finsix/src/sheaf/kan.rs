//! Left and right Kan extensions along maps of groupoids, their units and
//! counits, and the norm map between them.

use super::{Sheaf, SheafMorphism};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groupoid::{same, Arrow, GroupoidFunctor};
use crate::matrix::Matrix;

/// A source component sitting over a target component.
struct Piece {
    comp: usize,
    /// `f` of the source representative.
    y0: usize,
    kernel: Vec<usize>,
    /// A preimage under `h` of each element of the image (indexed by target group element).
    pre: Vec<Option<usize>>,
    lreps: Vec<usize>,
    lcoset: Vec<usize>,
    rreps: Vec<usize>,
    rcoset: Vec<usize>,
}

fn pieces(f: &GroupoidFunctor) -> Vec<Vec<Piece>> {
    let (s, t) = (&f.src, &f.tgt);
    let mut out: Vec<Vec<Piece>> = t.components().iter().map(|_| Vec::new()).collect();
    for (c, comp) in s.components().iter().enumerate() {
        let y0 = f.obj(comp.rep);
        let cx = t.component_of(y0);
        let g = &t.components()[cx].group;
        let h: Vec<usize> = f.grp_img[c].iter().map(|a| a.g).collect();
        let kernel: Vec<usize> = comp.group.elements().filter(|&a| h[a] == g.identity()).collect();
        let mut pre = vec![None; g.order()];
        for a in comp.group.elements() {
            pre[h[a]].get_or_insert(a);
        }
        let image: Vec<usize> = g.elements().filter(|&x| pre[x].is_some()).collect();
        let (lcoset, mut lreps) = g.left_cosets(&image);
        lreps[lcoset[g.identity()]] = g.identity();
        let (rcoset, mut rreps) = g.right_cosets(&image);
        rreps[rcoset[g.identity()]] = g.identity();
        out[cx].push(Piece {
            comp: c,
            y0,
            kernel,
            pre,
            lreps,
            lcoset,
            rreps,
            rcoset,
        });
    }
    out
}

/// Invariants of the kernel: basis `b`, coordinates `l`, and the projection `q = l·P_K`.
struct Fix {
    b: Matrix,
    l: Matrix,
    q: Matrix,
}

impl Fix {
    fn k(&self) -> usize {
        self.b.cols()
    }
}

fn fix(field: Field, rho: &[Matrix], kernel: &[usize]) -> Fix {
    let d = rho[0].rows();
    let mut p = Matrix::zeros(field, d, d);
    for &k in kernel {
        p = p.add(&rho[k]);
    }
    let p = p.scale(&field.int(kernel.len() as i64).inv().expect("gate"));
    let (_, piv) = p.rref();
    let b = p.select_cols(&piv);
    let l = b.left_inverse().expect("independent columns");
    let q = l.mul(&p);
    Fix { b, l, q }
}

fn gate(f: &GroupoidFunctor, field: Field) -> Result<()> {
    f.src.gate(field)?;
    f.tgt.gate(field)
}

fn check_base(f: &GroupoidFunctor, m: &Sheaf, on_source: bool) -> Result<()> {
    let b = if on_source { &f.src } else { &f.tgt };
    if !same(b, &m.base) {
        return Err(Error::Structural("sheaf does not live on the expected groupoid".into()));
    }
    Ok(())
}

fn fixes(m: &Sheaf, ps: &[Vec<Piece>]) -> Vec<Vec<Fix>> {
    ps.iter()
        .map(|v| v.iter().map(|p| fix(m.field, &m.rep[p.comp], &p.kernel)).collect())
        .collect()
}

fn offsets(sizes: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut acc = 0;
    for s in sizes {
        offs.push(acc);
        acc += s;
    }
    (offs, acc)
}

/// `f_!M`, with value at each target representative the induced module
/// `⊕ k[G] ⊗_{k[A]} M(rep)` over the source components.
pub fn lan(f: &GroupoidFunctor, m: &Sheaf) -> Result<Sheaf> {
    check_base(f, m, true)?;
    gate(f, m.field)?;
    if f.is_identity() {
        return Ok(m.clone());
    }
    let field = m.field;
    let ps = pieces(f);
    let fx = fixes(m, &ps);
    let rep = f
        .tgt
        .components()
        .iter()
        .enumerate()
        .map(|(cx, comp)| {
            let g = &comp.group;
            let (offs, dim) = offsets(ps[cx].iter().zip(&fx[cx]).map(|(p, x)| p.lreps.len() * x.k()));
            g.elements()
                .map(|c| {
                    let mut mat = Matrix::zeros(field, dim, dim);
                    for (i, (p, x)) in ps[cx].iter().zip(&fx[cx]).enumerate() {
                        let k = x.k();
                        for (j, &gj) in p.lreps.iter().enumerate() {
                            let cg = g.mul(c, gj);
                            let j2 = p.lcoset[cg];
                            let ha = g.mul(g.inv(p.lreps[j2]), cg);
                            let a = p.pre[ha].expect("coset decomposition");
                            let blk = x.q.mul(&m.rep[p.comp][a]).mul(&x.b);
                            mat.paste(offs[i] + j2 * k, offs[i] + j * k, &blk);
                        }
                    }
                    mat
                })
                .collect()
        })
        .collect();
    Ok(Sheaf::identity_paths(&f.tgt, field, rep))
}

/// `f_!` on a morphism `φ: M → M′`.
pub fn lan_morphism(f: &GroupoidFunctor, phi: &SheafMorphism) -> Result<SheafMorphism> {
    let src = lan(f, &phi.src)?;
    let tgt = lan(f, &phi.tgt)?;
    if f.is_identity() {
        return Ok(phi.clone());
    }
    let ps = pieces(f);
    let (fa, fb) = (fixes(&phi.src, &ps), fixes(&phi.tgt, &ps));
    let field = phi.src.field;
    let per_comp: Vec<Matrix> = (0..f.tgt.components().len())
        .map(|cx| {
            let blocks: Vec<Matrix> = ps[cx]
                .iter()
                .enumerate()
                .flat_map(|(i, p)| {
                    let blk = fb[cx][i].q.mul(&phi.comps[f.src.components()[p.comp].rep]).mul(&fa[cx][i].b);
                    std::iter::repeat(blk).take(p.lreps.len())
                })
                .collect();
            Matrix::block_diag(&blocks, field)
        })
        .collect();
    let comps = (0..f.tgt.num_objects()).map(|x| per_comp[f.tgt.component_of(x)].clone()).collect();
    Ok(SheafMorphism { src, tgt, comps })
}

/// Unit `M → f*f_!M`.
pub fn lan_unit(f: &GroupoidFunctor, m: &Sheaf) -> Result<SheafMorphism> {
    let l = lan(f, m)?;
    let tgt = l.pullback(f);
    if f.is_identity() {
        return Ok(SheafMorphism::identity(m));
    }
    let ps = pieces(f);
    let fx = fixes(m, &ps);
    let s = &f.src;
    let mut at_rep: Vec<Option<Matrix>> = vec![None; s.components().len()];
    for (cx, v) in ps.iter().enumerate() {
        let (offs, dim) = offsets(v.iter().zip(&fx[cx]).map(|(p, x)| p.lreps.len() * x.k()));
        for (i, p) in v.iter().enumerate() {
            let x = &fx[cx][i];
            let g = &f.tgt.components()[cx].group;
            let j0 = p.lcoset[g.identity()];
            let mut mat = Matrix::zeros(m.field, dim, x.q.cols());
            mat.paste(offs[i] + j0 * x.k(), 0, &x.q);
            at_rep[p.comp] = Some(mat);
        }
    }
    let comps = (0..s.num_objects())
        .map(|y| {
            let r = at_rep[s.component_of(y)].as_ref().expect("piece");
            l.mat(&f.path_img[y]).mul(r).mul(&m.path_inv[y])
        })
        .collect();
    Ok(SheafMorphism {
        src: m.clone(),
        tgt,
        comps,
    })
}

/// Counit `f_!f*N → N`.
pub fn lan_counit(f: &GroupoidFunctor, n: &Sheaf) -> Result<SheafMorphism> {
    check_base(f, n, false)?;
    let q = n.pullback(f);
    let src = lan(f, &q)?;
    if f.is_identity() {
        return Ok(SheafMorphism::identity(n));
    }
    let ps = pieces(f);
    let fx = fixes(&q, &ps);
    let t = &f.tgt;
    let per_comp: Vec<Matrix> = t
        .components()
        .iter()
        .enumerate()
        .map(|(cx, comp)| {
            let parts: Vec<Matrix> = ps[cx]
                .iter()
                .zip(&fx[cx])
                .flat_map(|(p, x)| {
                    p.lreps.iter().map(move |&gj| {
                        n.mat(&Arrow {
                            src: p.y0,
                            tgt: comp.rep,
                            g: gj,
                        })
                        .mul(&x.b)
                    })
                })
                .collect();
            Matrix::hstack(&parts, n.field, n.dim(comp.rep))
        })
        .collect();
    let comps = (0..t.num_objects())
        .map(|x| n.path[x].mul(&per_comp[t.component_of(x)]))
        .collect();
    Ok(SheafMorphism {
        src,
        tgt: n.clone(),
        comps,
    })
}

/// `f_*M`, with value at each target representative the coinduced module of
/// functions `F(h(a)g) = ρ(a)F(g)` over the source components.
pub fn ran(f: &GroupoidFunctor, m: &Sheaf) -> Result<Sheaf> {
    check_base(f, m, true)?;
    gate(f, m.field)?;
    if f.is_identity() {
        return Ok(m.clone());
    }
    let field = m.field;
    let ps = pieces(f);
    let fx = fixes(m, &ps);
    let rep = f
        .tgt
        .components()
        .iter()
        .enumerate()
        .map(|(cx, comp)| {
            let g = &comp.group;
            let (offs, dim) = offsets(ps[cx].iter().zip(&fx[cx]).map(|(p, x)| p.rreps.len() * x.k()));
            g.elements()
                .map(|c| {
                    let mut mat = Matrix::zeros(field, dim, dim);
                    for (i, (p, x)) in ps[cx].iter().zip(&fx[cx]).enumerate() {
                        let k = x.k();
                        for (j, &tj) in p.rreps.iter().enumerate() {
                            let tc = g.mul(tj, c);
                            let j2 = p.rcoset[tc];
                            let ha = g.mul(tc, g.inv(p.rreps[j2]));
                            let a = p.pre[ha].expect("coset decomposition");
                            let blk = x.l.mul(&m.rep[p.comp][a]).mul(&x.b);
                            mat.paste(offs[i] + j * k, offs[i] + j2 * k, &blk);
                        }
                    }
                    mat
                })
                .collect()
        })
        .collect();
    Ok(Sheaf::identity_paths(&f.tgt, field, rep))
}

/// `f_*` on a morphism.
pub fn ran_morphism(f: &GroupoidFunctor, phi: &SheafMorphism) -> Result<SheafMorphism> {
    let src = ran(f, &phi.src)?;
    let tgt = ran(f, &phi.tgt)?;
    if f.is_identity() {
        return Ok(phi.clone());
    }
    let ps = pieces(f);
    let (fa, fb) = (fixes(&phi.src, &ps), fixes(&phi.tgt, &ps));
    let field = phi.src.field;
    let per_comp: Vec<Matrix> = (0..f.tgt.components().len())
        .map(|cx| {
            let blocks: Vec<Matrix> = ps[cx]
                .iter()
                .enumerate()
                .flat_map(|(i, p)| {
                    let blk = fb[cx][i].l.mul(&phi.comps[f.src.components()[p.comp].rep]).mul(&fa[cx][i].b);
                    std::iter::repeat(blk).take(p.rreps.len())
                })
                .collect();
            Matrix::block_diag(&blocks, field)
        })
        .collect();
    let comps = (0..f.tgt.num_objects()).map(|x| per_comp[f.tgt.component_of(x)].clone()).collect();
    Ok(SheafMorphism { src, tgt, comps })
}

/// Unit `N → f_*f*N`.
pub fn ran_unit(f: &GroupoidFunctor, n: &Sheaf) -> Result<SheafMorphism> {
    check_base(f, n, false)?;
    let q = n.pullback(f);
    let tgt = ran(f, &q)?;
    if f.is_identity() {
        return Ok(SheafMorphism::identity(n));
    }
    let ps = pieces(f);
    let fx = fixes(&q, &ps);
    let t = &f.tgt;
    let per_comp: Vec<Matrix> = t
        .components()
        .iter()
        .enumerate()
        .map(|(cx, comp)| {
            let parts: Vec<Matrix> = ps[cx]
                .iter()
                .zip(&fx[cx])
                .flat_map(|(p, x)| {
                    p.rreps.iter().map(move |&tj| {
                        x.l.mul(&n.mat(&Arrow {
                            src: comp.rep,
                            tgt: p.y0,
                            g: tj,
                        }))
                    })
                })
                .collect();
            Matrix::vstack(&parts, n.field, n.dim(comp.rep))
        })
        .collect();
    let comps = (0..t.num_objects())
        .map(|x| per_comp[t.component_of(x)].mul(&n.path_inv[x]))
        .collect();
    Ok(SheafMorphism {
        src: n.clone(),
        tgt,
        comps,
    })
}

/// Counit `f*f_*M → M`.
pub fn ran_counit(f: &GroupoidFunctor, m: &Sheaf) -> Result<SheafMorphism> {
    let r = ran(f, m)?;
    let src = r.pullback(f);
    if f.is_identity() {
        return Ok(SheafMorphism::identity(m));
    }
    let ps = pieces(f);
    let fx = fixes(m, &ps);
    let s = &f.src;
    let mut at_rep: Vec<Option<Matrix>> = vec![None; s.components().len()];
    for (cx, v) in ps.iter().enumerate() {
        let (offs, dim) = offsets(v.iter().zip(&fx[cx]).map(|(p, x)| p.rreps.len() * x.k()));
        let g = &f.tgt.components()[cx].group;
        for (i, p) in v.iter().enumerate() {
            let x = &fx[cx][i];
            let i0 = p.rcoset[g.identity()];
            let mut mat = Matrix::zeros(m.field, x.b.rows(), dim);
            mat.paste(0, offs[i] + i0 * x.k(), &x.b);
            at_rep[p.comp] = Some(mat);
        }
    }
    let comps = (0..s.num_objects())
        .map(|y| {
            let e = at_rep[s.component_of(y)].as_ref().expect("piece");
            m.path[y].mul(e).mul(&r.mat(&f.tgt.inverse(&f.path_img[y])))
        })
        .collect();
    Ok(SheafMorphism {
        src,
        tgt: m.clone(),
        comps,
    })
}

/// The unnormalized norm `f_!M → f_*M`: `[g ⊗ m] ↦ (x ↦ Σ_{h(a) = xg} ρ(a)m)`.
pub fn norm_map(f: &GroupoidFunctor, m: &Sheaf) -> Result<SheafMorphism> {
    let src = lan(f, m)?;
    let tgt = ran(f, m)?;
    if f.is_identity() {
        return Ok(SheafMorphism::identity(m));
    }
    let field = m.field;
    let ps = pieces(f);
    let fx = fixes(m, &ps);
    let per_comp: Vec<Matrix> = f
        .tgt
        .components()
        .iter()
        .enumerate()
        .map(|(cx, comp)| {
            let g = &comp.group;
            let (lo, ldim) = offsets(ps[cx].iter().zip(&fx[cx]).map(|(p, x)| p.lreps.len() * x.k()));
            let (ro, rdim) = offsets(ps[cx].iter().zip(&fx[cx]).map(|(p, x)| p.rreps.len() * x.k()));
            let mut mat = Matrix::zeros(field, rdim, ldim);
            for (i, (p, x)) in ps[cx].iter().zip(&fx[cx]).enumerate() {
                let k = x.k();
                let scale = field.int(p.kernel.len() as i64);
                for (ri, &t) in p.rreps.iter().enumerate() {
                    for (lj, &gj) in p.lreps.iter().enumerate() {
                        if let Some(a) = p.pre[g.mul(t, gj)] {
                            let blk = x.l.mul(&m.rep[p.comp][a]).mul(&x.b).scale(&scale);
                            mat.paste(ro[i] + ri * k, lo[i] + lj * k, &blk);
                        }
                    }
                }
            }
            mat
        })
        .collect();
    let comps = (0..f.tgt.num_objects()).map(|x| per_comp[f.tgt.component_of(x)].clone()).collect();
    Ok(SheafMorphism { src, tgt, comps })
}

/// `f^!M`, which is `f*M` in this formalism.
pub fn upper_shriek(f: &GroupoidFunctor, m: &Sheaf) -> Result<Sheaf> {
    check_base(f, m, false)?;
    gate(f, m.field)?;
    Ok(m.pullback(f))
}

/// Unit and counit of an adjunction `L ⊣ R` at sample objects, with the triangle checks.
#[derive(Clone, Debug)]
pub struct AdjunctionWitness {
    pub left: String,
    pub right: String,
    pub unit: SheafMorphism,
    pub counit: SheafMorphism,
    /// `εL ∘ Lη = id_L` at the sample source object.
    pub left_triangle: bool,
    /// `Rε ∘ ηR = id_R` at the sample target object.
    pub right_triangle: bool,
}

impl AdjunctionWitness {
    pub fn holds(&self) -> bool {
        self.left_triangle && self.right_triangle
    }

    /// `f_! ⊣ f^!` at `M` on the source and `N` on the target.
    pub fn shriek(f: &GroupoidFunctor, m: &Sheaf, n: &Sheaf) -> Result<AdjunctionWitness> {
        let eta = lan_unit(f, m)?;
        let eps = lan_counit(f, n)?;
        let t1 = lan_morphism(f, &eta)?.then(&lan_counit(f, &lan(f, m)?)?)?;
        let t2 = lan_unit(f, &n.pullback(f))?.then(&eps.pullback(f))?;
        Ok(AdjunctionWitness {
            left: "f_!".into(),
            right: "f^!".into(),
            unit: eta,
            counit: eps,
            left_triangle: t1.is_identity(),
            right_triangle: t2.is_identity(),
        })
    }

    /// `f* ⊣ f_*` at `N` on the target and `M` on the source.
    pub fn star(f: &GroupoidFunctor, n: &Sheaf, m: &Sheaf) -> Result<AdjunctionWitness> {
        let eta = ran_unit(f, n)?;
        let eps = ran_counit(f, m)?;
        let t1 = eta.pullback(f).then(&ran_counit(f, &n.pullback(f))?)?;
        let t2 = ran_unit(f, &ran(f, m)?)?.then(&ran_morphism(f, &eps)?)?;
        Ok(AdjunctionWitness {
            left: "f*".into(),
            right: "f_*".into(),
            unit: eta,
            counit: eps,
            left_triangle: t1.is_identity(),
            right_triangle: t2.is_identity(),
        })
    }

    /// `f_* ⊣ f^!` assembled from the `f_! ⊣ f^!` data and the inverse norm.
    pub fn ambidextrous(f: &GroupoidFunctor, m: &Sheaf, n: &Sheaf) -> Result<AdjunctionWitness> {
        let unit_at = |m: &Sheaf| -> Result<SheafMorphism> { lan_unit(f, m)?.then(&norm_map(f, m)?.pullback(f)) };
        let counit_at = |n: &Sheaf| -> Result<SheafMorphism> {
            let q = n.pullback(f);
            let inv = norm_map(f, &q)?
                .inverse()
                .ok_or_else(|| Error::theorem("norm", "norm map not invertible"))?;
            inv.then(&lan_counit(f, n)?)
        };
        let eta = unit_at(m)?;
        let eps = counit_at(n)?;
        let t1 = ran_morphism(f, &eta)?.then(&counit_at(&ran(f, m)?)?)?;
        let t2 = unit_at(&n.pullback(f))?.then(&eps.pullback(f))?;
        Ok(AdjunctionWitness {
            left: "f_*".into(),
            right: "f^!".into(),
            unit: eta,
            counit: eps,
            left_triangle: t1.is_identity(),
            right_triangle: t2.is_identity(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::{FiniteGroupoid, GroupoidRef};
    use crate::sheaf::random_sheaf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    const Q: Field = Field::Rational;

    fn c2_in_s3() -> (GroupoidRef, GroupoidRef, GroupoidFunctor) {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.generated(&[s3.parse_element("(12)").unwrap()]);
        let (sub, incl) = s3.subgroup_group(&h);
        let a = Arc::new(FiniteGroupoid::delooping(&sub));
        let b = Arc::new(FiniteGroupoid::delooping(&s3));
        let f = GroupoidFunctor::from_group_hom(&a, &b, &incl);
        (a, b, f)
    }

    fn to_point(x: &GroupoidRef) -> GroupoidFunctor {
        GroupoidFunctor::to_point(x, &Arc::new(FiniteGroupoid::point()))
    }

    #[test]
    fn induced_dimensions() {
        let (a, _, f) = c2_in_s3();
        assert_eq!(lan(&f, &Sheaf::unit(&a, Q)).unwrap().dim(0), 3);
        let three = Arc::new(FiniteGroupoid::discrete_n(3));
        assert_eq!(lan(&to_point(&three), &Sheaf::unit(&three, Q)).unwrap().dim(0), 3);
        let pt = Arc::new(FiniteGroupoid::point());
        let bc2 = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)));
        let g = GroupoidFunctor::from_group_hom(&pt, &bc2, &[0]);
        let reg = lan(&g, &Sheaf::unit(&pt, Q)).unwrap();
        assert_eq!(reg.dim(0), 2);
        assert!(reg.validate().is_ok());
    }

    #[test]
    fn invariants_of_sign_and_regular() {
        let bc2 = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)));
        let sign = Sheaf::from_representation(&bc2, Q, vec![Matrix::from_ints(Q, 1, 1, &[1]), Matrix::from_ints(Q, 1, 1, &[-1])]).unwrap();
        let reg = Sheaf::from_representation(&bc2, Q, vec![Matrix::identity(Q, 2), Matrix::from_ints(Q, 2, 2, &[0, 1, 1, 0])]).unwrap();
        let p = to_point(&bc2);
        assert_eq!(ran(&p, &sign).unwrap().dim(0), 0);
        assert_eq!(ran(&p, &reg).unwrap().dim(0), 1);
        let nm = norm_map(&p, &Sheaf::unit(&bc2, Q)).unwrap();
        assert_eq!(nm.comps[0], Matrix::from_ints(Q, 1, 1, &[2]));
    }

    #[test]
    fn restriction_of_standard_rep() {
        let (_, b, f) = c2_in_s3();
        let s3 = b.components()[0].group.clone();
        // permutation action on the sum-zero plane, basis e0-e1, e1-e2
        let mats: Vec<Matrix> = s3
            .elements()
            .map(|g| {
                let p = s3.permutation(g).unwrap();
                let img = |v: [i64; 3]| {
                    let mut w = [0i64; 3];
                    for i in 0..3 {
                        w[p[i]] += v[i];
                    }
                    [w[0], w[0] + w[1]]
                };
                let c0 = img([1, -1, 0]);
                let c1 = img([0, 1, -1]);
                Matrix::from_ints(Q, 2, 2, &[c0[0], c1[0], c0[1], c1[1]])
            })
            .collect();
        let std = Sheaf::from_representation(&b, Q, mats).unwrap();
        let r = std.pullback(&f);
        assert_eq!(r.dim(0), 2);
        let t = r.rep[0][1].clone();
        assert!(t.mul(&t).is_identity() && !t.is_identity());
    }

    #[test]
    fn adjunctions_and_norm_on_random_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (a, b, f) = c2_in_s3();
        let x = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)).disjoint_union(&FiniteGroupoid::discrete_n(2)));
        let y = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::symmetric(3)));
        let g = GroupoidFunctor::constant(&x, &y, 0);
        for field in [Q, Field::Prime(5)] {
            for (map, src, tgt) in [(&f, &a, &b), (&g, &x, &y)] {
                let m = random_sheaf(src, field, &mut rng, 2);
                let n = random_sheaf(tgt, field, &mut rng, 2);
                for w in [
                    AdjunctionWitness::shriek(map, &m, &n).unwrap(),
                    AdjunctionWitness::star(map, &n, &m).unwrap(),
                    AdjunctionWitness::ambidextrous(map, &m, &n).unwrap(),
                ] {
                    assert!(w.holds(), "{} ⊣ {}", w.left, w.right);
                    assert!(w.unit.is_natural() && w.counit.is_natural());
                }
                let nm = norm_map(map, &m).unwrap();
                assert!(nm.is_natural() && nm.is_iso());
            }
        }
    }

    #[test]
    fn gate_rejects_char_dividing_order() {
        let (a, _, f) = c2_in_s3();
        let err = lan(&f, &Sheaf::unit(&a, Field::Prime(2))).unwrap_err();
        assert!(matches!(err, Error::Gate(_)));
    }
}
