//! Canonical comparison maps: base change, projection formulas, composition of
//! shriek pushforwards. Each map is assembled from units and counits.

use super::{
    hom_basis, hom_dim, lan, lan_counit, lan_morphism, lan_unit, ran, ran_counit, ran_morphism, ran_unit, Sheaf,
    SheafMorphism,
};
use crate::error::{Error, Result};
use crate::groupoid::{GroupoidFunctor, NatTrans, WideProduct};
use crate::matrix::Matrix;

/// A canonical map together with its invertibility verdict.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub name: String,
    pub map: SheafMorphism,
    pub invertible: bool,
}

impl Certificate {
    pub fn new(name: &str, map: SheafMorphism) -> Certificate {
        let invertible = map.is_iso();
        Certificate {
            name: name.to_string(),
            map,
            invertible,
        }
    }
}

/// `f′_!g′*M → g*f_!M` for the square `W = X′ ×_X Y`, `f: Y → X`, `g: X′ → X`.
///
/// Returns the square as well, so callers can reuse its projections.
pub fn base_change(f: &GroupoidFunctor, g: &GroupoidFunctor, m: &Sheaf) -> Result<(WideProduct, Certificate)> {
    let w = WideProduct::iso_comma(g, f)?;
    let map = base_change_square(f, g, &w.projections[0], &w.projections[1], &w.cell(0, 1), m)?;
    Ok((w, Certificate::new("proper-base-change", map)))
}

/// `f′_!g′*M → g*f_!M` for any square `f′: W → X′`, `g′: W → Y` with `α: g∘f′ ⇒ f∘g′`.
pub fn base_change_square(
    f: &GroupoidFunctor,
    g: &GroupoidFunctor,
    f1: &GroupoidFunctor,
    g1: &GroupoidFunctor,
    alpha: &NatTrans,
    m: &Sheaf,
) -> Result<SheafMorphism> {
    let fm = lan(f, m)?;
    let gf1 = g.after(f1);
    let fg1 = f.after(g1);
    if !alpha.is_natural(&gf1, &fg1) {
        return Err(Error::Structural("square cell is not natural".into()));
    }
    let alpha_inv = alpha.inverse(&f.tgt);
    let step1 = lan_morphism(f1, &lan_unit(f, m)?.pullback(g1))?;
    let step2 = lan_morphism(f1, &fm.transport(&alpha_inv, &fg1, &gf1))?;
    let step3 = lan_counit(f1, &fm.pullback(g))?;
    SheafMorphism::chain(&[&step1, &step2, &step3])
}

/// `u_!M → v_!M` induced by `θ: u ⇒ v`.
pub fn lan_cell(theta: &NatTrans, u: &GroupoidFunctor, v: &GroupoidFunctor, m: &Sheaf) -> Result<SheafMorphism> {
    let vm = lan(v, m)?;
    let back = vm.transport(&theta.inverse(&v.tgt), v, u);
    let inner = lan_unit(v, m)?.then(&back)?;
    lan_morphism(u, &inner)?.then(&lan_counit(u, &vm)?)
}

/// `u_*M → v_*M` induced by `θ: u ⇒ v`.
pub fn ran_cell(theta: &NatTrans, u: &GroupoidFunctor, v: &GroupoidFunctor, m: &Sheaf) -> Result<SheafMorphism> {
    let um = ran(u, m)?;
    let back = um.transport(&theta.inverse(&v.tgt), v, u);
    let adj = back.then(&ran_counit(u, m)?)?;
    ran_unit(v, &um)?.then(&ran_morphism(v, &adj)?)
}

/// `g_*f_*M → (g∘f)_*M`.
pub fn functoriality_star(f: &GroupoidFunctor, g: &GroupoidFunctor, m: &Sheaf) -> Result<Certificate> {
    let gf = g.after(f);
    let fm = ran(f, m)?;
    let q = ran(g, &fm)?;
    let a = ran_counit(g, &fm)?.pullback(f);
    let b = ran_counit(f, m)?;
    let adj = a.then(&b)?;
    let map = ran_unit(&gf, &q)?.then(&ran_morphism(&gf, &adj)?)?;
    Ok(Certificate::new("star-functoriality", map))
}

/// `f_!(f*M ⊗ N) → M ⊗ f_!N`.
pub fn projection_formula_left(f: &GroupoidFunctor, m: &Sheaf, n: &Sheaf) -> Result<Certificate> {
    let fm = m.pullback(f);
    let step1 = lan_morphism(f, &SheafMorphism::identity(&fm).tensor(&lan_unit(f, n)?))?;
    let step2 = lan_counit(f, &m.tensor(&lan(f, n)?))?;
    Ok(Certificate::new("projection-formula", step1.then(&step2)?))
}

/// `f_!(N ⊗ f*M) → f_!N ⊗ M`.
pub fn projection_formula_right(f: &GroupoidFunctor, n: &Sheaf, m: &Sheaf) -> Result<Certificate> {
    let fm = m.pullback(f);
    let step1 = lan_morphism(f, &lan_unit(f, n)?.tensor(&SheafMorphism::identity(&fm)))?;
    let step2 = lan_counit(f, &lan(f, n)?.tensor(m))?;
    Ok(Certificate::new("projection-formula", step1.then(&step2)?))
}

/// `iHom(f_!N, M) → f_*iHom(N, f^!M)`.
pub fn hom_projection(f: &GroupoidFunctor, n: &Sheaf, m: &Sheaf) -> Result<Certificate> {
    let h = lan(f, n)?.ihom(m);
    let step1 = ran_unit(f, &h)?;
    let step2 = ran_morphism(f, &lan_unit(f, n)?.ihom_pre(&m.pullback(f)))?;
    Ok(Certificate::new("shriek-hom-adjunction", step1.then(&step2)?))
}

/// `(g∘f)_!M → g_!f_!M`.
pub fn functoriality_shriek(f: &GroupoidFunctor, g: &GroupoidFunctor, m: &Sheaf) -> Result<Certificate> {
    let gf = g.after(f);
    let fm = lan(f, m)?;
    let q = lan(g, &fm)?;
    let a = lan_unit(f, m)?;
    let b = lan_unit(g, &fm)?.pullback(f);
    let c = lan_morphism(&gf, &a.then(&b)?)?;
    let d = lan_counit(&gf, &q)?;
    Ok(Certificate::new("shriek-functoriality", c.then(&d)?))
}

/// `1 → iHom(P, 1) ⊗ P`.
pub fn coevaluation(p: &Sheaf) -> SheafMorphism {
    let f = p.field;
    let one = Sheaf::unit(&p.base, f);
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
        src: one.clone(),
        tgt: p.ihom(&one).tensor(p),
        comps,
    }
}

/// `P ⊗ iHom(P, 1) → 1`.
pub fn evaluation(p: &Sheaf) -> SheafMorphism {
    let f = p.field;
    let one = Sheaf::unit(&p.base, f);
    let comps = p
        .dims()
        .iter()
        .map(|&d| {
            let mut v = Matrix::zeros(f, 1, d * d);
            for i in 0..d {
                v.set(0, i * d + i, f.one());
            }
            v
        })
        .collect();
    SheafMorphism {
        src: p.tensor(&p.ihom(&one)),
        tgt: one,
        comps,
    }
}

/// Tests `A ≅ B` by comparing hom dimensions, then exhibits an isomorphism as
/// a combination of hom basis elements.
pub fn find_iso(a: &Sheaf, b: &Sheaf) -> Option<SheafMorphism> {
    if a.dims() != b.dims() {
        return None;
    }
    let ab = hom_dim(a, b);
    if ab != hom_dim(a, a) || ab != hom_dim(b, b) {
        return None;
    }
    let basis = hom_basis(a, b);
    let zero = SheafMorphism::zero(a, b);
    if basis.is_empty() {
        return zero.is_iso().then_some(zero);
    }
    let f = a.field;
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..64 {
        let mut acc = zero.clone();
        for m in &basis {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            let c = f.int(((state >> 33) % 11) as i64 - 5);
            let scaled = SheafMorphism {
                src: m.src.clone(),
                tgt: m.tgt.clone(),
                comps: m.comps.iter().map(|x| x.scale(&c)).collect(),
            };
            acc = acc.add(&scaled);
        }
        if acc.is_iso() {
            return Some(acc);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::group::FiniteGroup;
    use crate::groupoid::{FiniteGroupoid, GroupoidRef};
    use crate::sheaf::random_sheaf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    const Q: Field = Field::Rational;

    fn s3_setup() -> (GroupoidRef, GroupoidRef, GroupoidRef, GroupoidFunctor, GroupoidFunctor) {
        let s3 = FiniteGroup::symmetric(3);
        let h = s3.generated(&[s3.parse_element("(12)").unwrap()]);
        let (sub, incl) = s3.subgroup_group(&h);
        let a = Arc::new(FiniteGroupoid::delooping(&sub));
        let b = Arc::new(FiniteGroupoid::delooping(&s3));
        let pt = Arc::new(FiniteGroupoid::point());
        let f = GroupoidFunctor::from_group_hom(&a, &b, &incl);
        let g = GroupoidFunctor::from_group_hom(&pt, &b, &[s3.identity()]);
        (a, b, pt, f, g)
    }

    #[test]
    fn base_change_point_over_s3() {
        let (a, _, _, f, g) = s3_setup();
        let (w, c) = base_change(&f, &g, &Sheaf::unit(&a, Q)).unwrap();
        assert_eq!(w.groupoid.components().len(), 3);
        assert!(c.invertible);
        assert_eq!(c.map.comps[0].shape(), (3, 3));
    }

    #[test]
    fn base_change_along_identity_is_identity() {
        let (a, b, _, f, _) = s3_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_sheaf(&a, Q, &mut rng, 2);
        let id = GroupoidFunctor::identity(&b);
        let (_, c) = base_change(&f, &id, &m).unwrap();
        assert!(c.invertible);
    }

    #[test]
    fn projection_and_functoriality_random() {
        let (a, b, pt, f, _) = s3_setup();
        let p = GroupoidFunctor::to_point(&b, &pt);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for field in [Q, Field::Prime(5)] {
            let m = random_sheaf(&b, field, &mut rng, 2);
            let n = random_sheaf(&a, field, &mut rng, 2);
            assert!(projection_formula_left(&f, &m, &n).unwrap().invertible);
            assert!(projection_formula_right(&f, &n, &m).unwrap().invertible);
            assert!(hom_projection(&f, &n, &m).unwrap().invertible);
            assert!(functoriality_shriek(&f, &p, &n).unwrap().invertible);
        }
    }

    #[test]
    fn projection_with_unit_is_identity() {
        let (a, b, _, f, _) = s3_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = random_sheaf(&a, Q, &mut rng, 2);
        let c = projection_formula_left(&f, &Sheaf::unit(&b, Q), &n).unwrap();
        assert!(c.invertible);
        assert_eq!(c.map.src.dims(), c.map.tgt.dims());
    }

    #[test]
    fn cells_and_star_functoriality() {
        let (a, b, pt, f, g) = s3_setup();
        let w = WideProduct::iso_comma(&g, &f).unwrap();
        let (f1, g1) = (&w.projections[0], &w.projections[1]);
        let (u, v) = (g.after(f1), f.after(g1));
        let alpha = w.cell(0, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_sheaf(&w.groupoid, Q, &mut rng, 2);
        assert!(lan_cell(&alpha, &u, &v, &m).unwrap().is_iso());
        assert!(ran_cell(&alpha, &u, &v, &m).unwrap().is_iso());
        let p = GroupoidFunctor::to_point(&b, &pt);
        let n = random_sheaf(&a, Q, &mut rng, 2);
        assert!(functoriality_star(&f, &p, &n).unwrap().invertible);
    }

    #[test]
    fn zigzag_for_evaluation() {
        let (_, b, _, _, _) = s3_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let p = random_sheaf(&b, Q, &mut rng, 2);
        assert!(coevaluation(&p).is_natural());
        assert!(evaluation(&p).is_natural());
        let q = p.clone();
        let found = find_iso(&p, &q).unwrap();
        assert!(found.is_iso());
        let other = random_sheaf(&b, Q, &mut rng, 3);
        if other.dims() != p.dims() {
            assert!(find_iso(&p, &other).is_none());
        }
    }
}
