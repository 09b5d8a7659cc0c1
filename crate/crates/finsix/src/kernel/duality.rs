//! Suave and prim objects: the duals, the canonical units and counits in the
//! kernel 2-category, and the étale/proper and base change tests.

use super::{K2Cell, KernelCat};
use crate::adjunction::{verify, Adjunction, TriangleVerdict, TwoCategory};
use crate::error::{Error, Result};
use crate::groupoid::{GroupoidFunctor, NatTrans, WideProduct};
use crate::matrix::Matrix;
use crate::sheaf::{
    base_change_square, braiding, coevaluation, evaluation, find_iso, functoriality_shriek, functoriality_star, lan,
    lan_cell, lan_counit, lan_morphism, lan_unit, norm_map, projection_formula_right, ran, ran_cell, ran_counit,
    ran_morphism, ran_unit, tensor_hom_counit, tensor_hom_unit, upper_shriek, Certificate, Sheaf, SheafMorphism,
};

/// `DSuave_f(P) = iHom(P, f^!𝟏)`.
pub fn dsuave(f: &GroupoidFunctor, p: &Sheaf) -> Result<Sheaf> {
    let one = Sheaf::unit(&f.tgt, p.field);
    Ok(p.ihom(&upper_shriek(f, &one)?))
}

/// `DPrim_f(P) = π₂*iHom(π₁*P, Δ_!𝟏)` on `X ×_S X`.
pub fn dprim(f: &GroupoidFunctor, p: &Sheaf) -> Result<Sheaf> {
    let w = WideProduct::new(&[f.clone(), f.clone()])?;
    let x = WideProduct::new(&[f.clone()])?;
    let delta = x.project(&[0, 0], &w)?;
    let h = p.pullback(&w.projections[0]).ihom(&lan(&delta, &Sheaf::unit(&f.src, p.field))?);
    ran(&w.projections[1], &h)
}

#[derive(Debug)]
pub struct DualityReport {
    pub kernel_cat: KernelCat,
    pub adjunction: Adjunction<KernelCat>,
    pub triangles: TriangleVerdict,
    pub dual: Sheaf,
    /// The dual of the dual is isomorphic to the input.
    pub involutive: bool,
}

impl DualityReport {
    pub fn passes(&self) -> bool {
        self.triangles.holds() && self.involutive
    }
}

fn setup(f: &GroupoidFunctor, field: crate::field::Field) -> Result<(KernelCat, usize, usize)> {
    let mut kc = KernelCat::new(&f.tgt, field);
    let s = kc.add_base();
    let x = kc.add_object(f)?;
    Ok((kc, s, x))
}

fn inverse(m: &SheafMorphism, anchor: &str) -> Result<SheafMorphism> {
    m.inverse()
        .ok_or_else(|| Error::theorem(anchor, "a comparison map that should be invertible is not"))
}

/// `P` on `X` as a left adjoint `X → S` in the kernel 2-category, with right
/// adjoint `DSuave_f(P)`.
pub fn suave_test(f: &GroupoidFunctor, p: &Sheaf) -> Result<DualityReport> {
    let field = p.field;
    let (kc, s, x) = setup(f, field)?;
    let q = dsuave(f, p)?;
    let pk = kc.kernel_from_factor(s, x, true, p)?;
    let qk = kc.kernel_from_factor(x, s, false, &q)?;
    let pc = kc.cell(s, x, &pk)?;
    let qc = kc.cell(x, s, &qk)?;

    // unit: Δ_!𝟏 → NF(Q·P), adjoint to 𝟏 → Q ⊗ P ≅ b_!b*(Q ⊗ P) → Δ*NF(Q·P)
    let qp = kc.comp1(&qc, &pc)?;
    let nf_qp = kc.nf(&qp)?;
    let t = kc.chain_tensor(&qp)?;
    let a = kc.proj(&[x, s], &[0, 1, 0])?;
    let b = kc.proj(&[x, s], &[0])?;
    let delta = kc.proj(&[x], &[0, 0])?;
    let pi02 = kc.proj(&[x, s, x], &[0, 2])?;
    let bc = base_change_square(&pi02, &delta, &b, &a, &NatTrans::identity(&delta.after(&b)), &t)?;
    let qtp = q.tensor(p);
    let eps_b = inverse(&lan_counit(&b, &qtp)?, "suave-duality")?;
    let u = coevaluation(p).then(&eps_b)?.then(&bc)?;
    let unit_map = lan_morphism(&delta, &u)?.then(&lan_counit(&delta, &nf_qp)?)?;
    let unit = K2Cell {
        dom: kc.id1(&x),
        cod: qp,
        map: unit_map,
    };

    // counit: NF(P·Q) → Δ_!𝟏 via evaluation and the unit of Δ_S
    let pq = kc.comp1(&pc, &qc)?;
    let r = kc.proj(&[s, x, s], &[1])?;
    let psi = kc.proj(&[s, x, s], &[0])?;
    let delta_s = kc.proj(&[s], &[0, 0])?;
    let pi02s = kc.proj(&[s, x, s], &[0, 2])?;
    let u3 = kc.wide(&[s, x, s])?;
    let wss = kc.wide(&[s, s])?;
    let ds_psi = delta_s.after(&psi);
    let gamma = NatTrans {
        components: (0..u3.groupoid.num_objects())
            .map(|o| {
                let phi2 = u3.phi(o, 2);
                wss.encode(ds_psi.obj(o), pi02s.obj(o), &[kc.base.identity(phi2.src), phi2])
            })
            .collect(),
    };
    if !gamma.is_natural(&ds_psi, &pi02s) {
        return Err(Error::theorem("suave-duality", "diagonal comparison cell is not natural"));
    }
    let one_s = Sheaf::unit(&kc.base, field);
    let d1 = lan(&delta_s, &one_s)?;
    let inner = evaluation(p)
        .pullback(&r)
        .then(&lan_unit(&delta_s, &one_s)?.pullback(&psi))?
        .then(&d1.transport(&gamma, &ds_psi, &pi02s))?;
    let counit_map = lan_morphism(&pi02s, &inner)?.then(&lan_counit(&pi02s, &d1)?)?;
    let counit = K2Cell {
        dom: pq,
        cod: kc.id1(&s),
        map: counit_map,
    };

    let adjunction = Adjunction {
        left: pc,
        right: qc,
        unit,
        counit,
    };
    let triangles = verify(&kc, &adjunction)?;
    let involutive = find_iso(&dsuave(f, &q)?, p).is_some();
    Ok(DualityReport {
        kernel_cat: kc,
        adjunction,
        triangles,
        dual: q,
        involutive,
    })
}

/// `iHom(P, P)` element `id`.
fn identity_section(p: &Sheaf) -> SheafMorphism {
    let f = p.field;
    let comps = p
        .dims()
        .iter()
        .map(|&d| {
            let mut v = Matrix::zeros(f, d * d, 1);
            for i in 0..d {
                v.set(i * d + i, 0, f.one());
            }
            v
        })
        .collect();
    SheafMorphism {
        src: Sheaf::unit(&p.base, f),
        tgt: p.ihom(p),
        comps,
    }
}

/// `P` on `X` as a left adjoint `S → X` in the kernel 2-category, with right
/// adjoint `DPrim_f(P)`.
pub fn prim_test(f: &GroupoidFunctor, p: &Sheaf) -> Result<DualityReport> {
    let field = p.field;
    let (kc, s, x) = setup(f, field)?;
    let wxx = kc.wide(&[x, x])?;
    let pi1 = kc.proj(&[x, x], &[0])?;
    let pi2 = kc.proj(&[x, x], &[1])?;
    let delta = kc.proj(&[x], &[0, 0])?;
    let one_x = Sheaf::unit(&f.src, field);
    let d1 = lan(&delta, &one_x)?;
    let p1 = p.pullback(&pi1);
    let h = p1.ihom(&d1);
    let r = ran(&pi2, &h)?;
    let pk = kc.kernel_from_factor(x, s, false, p)?;
    let rk = kc.kernel_from_factor(s, x, true, &r)?;
    let pc = kc.cell(x, s, &pk)?;
    let rc = kc.cell(s, x, &rk)?;

    // counit: NF(P·R) = j_!j*(π₁*P ⊗ π₂*R) → π₁*P ⊗ π₂*R → π₁*P ⊗ H → Δ_!𝟏
    let pr = kc.comp1(&pc, &rc)?;
    let j = kc.proj(&[x, s, x], &[0, 2])?;
    let r2 = r.pullback(&pi2);
    let eps_r = ran_counit(&pi2, &h)?;
    let ev = braiding(&p1, &h).then(&tensor_hom_counit(&p1, &d1))?;
    let counit_map = lan_counit(&j, &p1.tensor(&r2))?
        .then(&SheafMorphism::identity(&p1).tensor(&eps_r))?
        .then(&ev)?;
    let counit = K2Cell {
        dom: pr,
        cod: kc.id1(&x),
        map: counit_map,
    };

    // criterion map f_!(R ⊗ P) → f_*iHom(P, P), from its adjoint f*f_!(R ⊗ P) ⊗ P → P
    let rp = r.tensor(p);
    let big = lan(f, &rp)?;
    let bc = base_change_square(f, f, &pi1, &pi2, &wxx.cell(0, 1), &rp)?;
    let n = rp.pullback(&pi2);
    let step1 = inverse(&bc, "prim-duality")?.tensor(&SheafMorphism::identity(p));
    let step2 = inverse(&projection_formula_right(&pi1, &n, p)?.map, "prim-duality")?;
    let p2 = p.pullback(&pi2);
    let core = eps_r
        .tensor(&SheafMorphism::identity(&p2))
        .tensor(&SheafMorphism::identity(&p1))
        .then(&SheafMorphism::identity(&h).tensor(&braiding(&p2, &p1)))?
        .then(&tensor_hom_counit(&p1, &d1).tensor(&SheafMorphism::identity(&p2)))?;
    let unit_p = one_x.tensor(p);
    let step4 = inverse(&projection_formula_right(&delta, &one_x, &p2)?.map, "prim-duality")?;
    let step5 = inverse(&functoriality_shriek(&delta, &pi1, &unit_p)?.map, "prim-duality")?;
    let phi = step1
        .then(&step2)?
        .then(&lan_morphism(&pi1, &core)?)?
        .then(&lan_morphism(&pi1, &step4)?)?
        .then(&step5)?;
    let fbig = big.pullback(f);
    let curry = tensor_hom_unit(p, &fbig).then(&phi.ihom_post(p))?;
    let crit = ran_unit(f, &big)?.then(&ran_morphism(f, &curry)?)?;
    let one_s = Sheaf::unit(&kc.base, field);
    let idsec = ran_unit(f, &one_s)?.then(&ran_morphism(f, &identity_section(p))?)?;
    let eta0 = idsec.then(&inverse(&crit, "prim-criterion")?)?;

    // transport 𝟏 → f_!(R ⊗ P) to Δ_S!𝟏 → NF(R·P)
    let rpc = kc.comp1(&rc, &pc)?;
    let nf_rp = kc.nf(&rpc)?;
    let t = kc.chain_tensor(&rpc)?;
    let a1 = kc.proj(&[s, x], &[0, 1, 0])?;
    let b1 = kc.proj(&[s, x], &[0])?;
    let f2 = kc.proj(&[s, x], &[1])?;
    let delta_s = kc.proj(&[s], &[0, 0])?;
    let pi02 = kc.proj(&[s, x, s], &[0, 2])?;
    let vsx = kc.wide(&[s, x])?;
    let frp = rp.pullback(&f2);
    let c1 = lan_morphism(f, &inverse(&lan_counit(&f2, &rp)?, "prim-duality")?)?;
    let ff2 = f.after(&f2);
    let c2 = inverse(&functoriality_shriek(&f2, f, &frp)?.map, "prim-duality")?;
    let c3 = lan_cell(&vsx.cell(1, 0), &ff2, &b1, &frp)?;
    let c4 = base_change_square(&pi02, &delta_s, &b1, &a1, &NatTrans::identity(&delta_s.after(&b1)), &t)?;
    let u = eta0.then(&c1)?.then(&c2)?.then(&c3)?.then(&c4)?;
    let unit_map = lan_morphism(&delta_s, &u)?.then(&lan_counit(&delta_s, &nf_rp)?)?;
    let unit = K2Cell {
        dom: kc.id1(&s),
        cod: rpc,
        map: unit_map,
    };

    let adjunction = Adjunction {
        left: pc,
        right: rc,
        unit,
        counit,
    };
    let triangles = verify(&kc, &adjunction)?;
    let involutive = find_iso(&dprim(f, &r)?, p).is_some();
    Ok(DualityReport {
        kernel_cat: kc,
        adjunction,
        triangles,
        dual: r,
        involutive,
    })
}

#[derive(Clone, Debug)]
pub struct EtaleProperReport {
    /// `ω_f ⊗ f*N → f^!N` on `𝟏` and the probes.
    pub twist_shriek: Vec<Certificate>,
    /// `Nm: f_!N → f_*N` on `𝟏` and the probes.
    pub norm: Vec<Certificate>,
    /// `δ_f = DPrim_f(𝟏) ≅ 𝟏` through `π₂*(Nm_Δ)` and star functoriality.
    pub delta_trivial: Certificate,
    /// `f_!(δ_f ⊗ N) → f_*N` on the probes.
    pub twist_star: Vec<Certificate>,
}

impl EtaleProperReport {
    pub fn etale(&self) -> bool {
        self.twist_shriek.iter().all(|c| c.invertible)
    }

    pub fn proper(&self) -> bool {
        self.norm.iter().all(|c| c.invertible) && self.delta_trivial.invertible && self.twist_star.iter().all(|c| c.invertible)
    }
}

/// `f^!𝟏 ⊗ f*N → f^!N`, adjoint to `f_!(f^!𝟏 ⊗ f*N) → f_!f^!𝟏 ⊗ N → N`.
fn twist_shriek(f: &GroupoidFunctor, n: &Sheaf) -> Result<Certificate> {
    let one = Sheaf::unit(&f.tgt, n.field);
    let omega = upper_shriek(f, &one)?;
    let pf = projection_formula_right(f, &omega, n)?.map;
    let adj = pf.then(&lan_counit(f, &one)?.tensor(&SheafMorphism::identity(n)))?;
    let src = omega.tensor(&n.pullback(f));
    let map = lan_unit(f, &src)?.then(&adj.pullback(f))?;
    Ok(Certificate::new("etale-twist", map))
}

pub fn etale_proper_test(f: &GroupoidFunctor, probes: &[Sheaf]) -> Result<EtaleProperReport> {
    let field = probes.first().map_or(crate::field::Field::Rational, |p| p.field);
    let one_s = Sheaf::unit(&f.tgt, field);
    let one_x = Sheaf::unit(&f.src, field);
    let mut all = vec![one_s.clone()];
    all.extend(probes.iter().cloned());
    let twist = all.iter().map(|n| twist_shriek(f, n)).collect::<Result<Vec<_>>>()?;
    let norm = all
        .iter()
        .map(|n| Ok(Certificate::new("proper-norm", norm_map(f, &n.pullback(f))?)))
        .collect::<Result<Vec<_>>>()?;
    let w = WideProduct::new(&[f.clone(), f.clone()])?;
    let xw = WideProduct::new(&[f.clone()])?;
    let delta = xw.project(&[0, 0], &w)?;
    let pi2 = &w.projections[1];
    let nm_delta = norm_map(&delta, &one_x)?;
    let star = functoriality_star(&delta, pi2, &one_x)?.map;
    // π₂∘Δ is the identity, so (π₂Δ)_*𝟏 = 𝟏 on the nose
    let delta_map = ran_morphism(pi2, &nm_delta)?.then(&star)?;
    let delta_trivial = Certificate::new("proper-delta", delta_map.clone());
    let twist_star = all
        .iter()
        .map(|n| {
            let fx = n.pullback(f);
            let m = lan_morphism(f, &delta_map.tensor(&SheafMorphism::identity(&fx)))?.then(&norm_map(f, &fx)?)?;
            Ok(Certificate::new("proper-twist", m))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EtaleProperReport {
        twist_shriek: twist,
        norm,
        delta_trivial,
        twist_star,
    })
}

/// The eight comparison maps attached to the square `W = X′ ×_X Y` for `f: Y → X`,
/// `g: X′ → X`, evaluated on `M` (on `Y`, `X′` or `W` as each map requires).
pub fn base_change_suave_prim(
    f: &GroupoidFunctor,
    g: &GroupoidFunctor,
    on_y: &Sheaf,
    on_x1: &Sheaf,
    on_w: Option<&Sheaf>,
) -> Result<Vec<Certificate>> {
    let w = WideProduct::iso_comma(g, f)?;
    let (f1, g1) = (&w.projections[0], &w.projections[1]);
    let alpha = w.cell(0, 1);
    let gf1 = g.after(f1);
    let fg1 = f.after(g1);
    let field = on_y.field;
    let owned;
    let mw = match on_w {
        Some(m) => m,
        None => {
            owned = on_y.pullback(g1).tensor(&on_x1.pullback(f1)).direct_sum(&Sheaf::unit(&w.groupoid, field));
            &owned
        }
    };
    let mut out = Vec::new();

    out.push(Certificate::new(
        "proper-base-change",
        base_change_square(f, g, f1, g1, &alpha, on_y)?,
    ));

    // g*f_* → f′_*g′*, adjoint to f′*g*f_* = g′*f*f_* → g′*
    let fm = ran(f, on_y)?;
    let adj = fm
        .transport(&alpha, &gf1, &fg1)
        .then(&ran_counit(f, on_y)?.pullback(g1))?;
    let gfm = fm.pullback(g);
    out.push(Certificate::new(
        "star-base-change",
        ran_unit(f1, &gfm)?.then(&ran_morphism(f1, &adj)?)?,
    ));

    // f_!g′_* → g_*f′_!, adjoint to g*f_!g′_* ≅ f′_!g′*g′_* → f′_!
    let gm = ran(g1, mw)?;
    let fgm = lan(f, &gm)?;
    let bc = base_change_square(f, g, f1, g1, &alpha, &gm)?;
    let adj = inverse(&bc, "proper-base-change")?.then(&lan_morphism(f1, &ran_counit(g1, mw)?)?)?;
    out.push(Certificate::new(
        "mixed-base-change",
        ran_unit(g, &fgm)?.then(&ran_morphism(g, &adj)?)?,
    ));

    // f*g_* → g′_*f′*, adjoint to g′*f*g_* = f′*g*g_* → f′*
    let gx = ran(g, on_x1)?;
    let alpha_inv = alpha.inverse(&w.base);
    let adj = gx
        .transport(&alpha_inv, &fg1, &gf1)
        .then(&ran_counit(g, on_x1)?.pullback(f1))?;
    out.push(Certificate::new(
        "star-base-change-transposed",
        ran_unit(g1, &gx.pullback(f))?.then(&ran_morphism(g1, &adj)?)?,
    ));

    // g′*f^! → f′^!g*, via the square cell
    let on_x = lan(f, on_y)?;
    out.push(Certificate::new(
        "upper-shriek-exchange",
        on_x.transport(&alpha_inv, &fg1, &gf1),
    ));

    // g′_!f′^! → f^!g_!, base change for the transposed square
    let tw = base_change_square(g, f, g1, f1, &alpha_inv, on_x1)?;
    out.push(Certificate::new("proper-base-change-transposed", tw));

    // (g f′)_! ≅ (f g′)_! through the cell
    out.push(Certificate::new("shriek-cell", lan_cell(&alpha, &gf1, &fg1, mw)?));

    // f_*g′_* → (f g′)_* → (g f′)_* → g_*f′_*
    let a = functoriality_star(g1, f, mw)?.map;
    let b = ran_cell(&alpha_inv, &fg1, &gf1, mw)?;
    let c = inverse(&functoriality_star(f1, g, mw)?.map, "star-functoriality")?;
    out.push(Certificate::new("star-square", a.then(&b)?.then(&c)?));
    Ok(out)
}
