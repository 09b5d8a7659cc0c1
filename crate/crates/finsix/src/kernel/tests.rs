use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;
use crate::sheaf::random_sheaf;

const Q: Field = Field::Rational;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `BC₂ → *` and `* → BC₂`.
fn maps() -> (GroupoidFunctor, GroupoidFunctor) {
    let c2 = FiniteGroup::cyclic(2);
    let b = Arc::new(FiniteGroupoid::delooping(&c2));
    let pt = Arc::new(FiniteGroupoid::point());
    (
        GroupoidFunctor::to_point(&b, &pt),
        GroupoidFunctor::from_group_hom(&pt, &b, &[c2.identity()]),
    )
}

#[test]
fn identity_kernel_is_diagonal_pushforward() {
    let (f, _) = maps();
    let mut kc = KernelCat::new(&f.tgt, Q);
    let x = kc.add_object(&f).unwrap();
    let id = kc.kernel_identity(x).unwrap();
    // BC₂ ×_* BC₂ = B(C₂ × C₂), Δ_!𝟏 = induced from the diagonal: dimension 2
    assert_eq!(id.dims(), vec![2]);
}

#[test]
fn comparisons_and_associator_invertible() {
    let (_, g) = maps();
    let mut kc = KernelCat::new(&g.tgt, Q);
    let s = kc.add_base();
    let x = kc.add_object(&g).unwrap();
    let mut r = rng(1);
    let m = random_sheaf(&kc.hom_base(s, x).unwrap(), Q, &mut r, 2);
    let n = random_sheaf(&kc.hom_base(x, s).unwrap(), Q, &mut r, 2);
    let p = random_sheaf(&kc.hom_base(s, x).unwrap(), Q, &mut r, 2);
    let (mc, nc, pc) = (kc.cell(s, x, &m).unwrap(), kc.cell(x, s, &n).unwrap(), kc.cell(s, x, &p).unwrap());
    assert!(kc.comparison(&mc, &nc).unwrap().is_iso());
    let a = kc.associator(&mc, &nc, &pc).unwrap();
    assert!(a.map.is_iso());
    let (l, rr) = kc.unitors(&mc).unwrap();
    assert!(l.is_iso() && rr.is_iso());
    assert_eq!(l.src, m);
}

#[test]
fn interchange_on_kernels() {
    let (_, g) = maps();
    let mut kc = KernelCat::new(&g.tgt, Q);
    let s = kc.add_base();
    let x = kc.add_object(&g).unwrap();
    let mut r = rng(2);
    let m = random_sheaf(&kc.hom_base(s, x).unwrap(), Q, &mut r, 2);
    let n = random_sheaf(&kc.hom_base(x, s).unwrap(), Q, &mut r, 2);
    let (mc, nc) = (kc.cell(s, x, &m).unwrap(), kc.cell(x, s, &n).unwrap());
    let mk = |c: &KCell, k: i64| K2Cell {
        dom: c.clone(),
        cod: c.clone(),
        map: {
            let id = SheafMorphism::identity(&kc.nf(c).unwrap());
            SheafMorphism {
                comps: id.comps.iter().map(|a| a.scale(&Q.int(k))).collect(),
                ..id
            }
        },
    };
    let (b1, b2, a1, a2) = (mk(&mc, 2), mk(&mc, 3), mk(&nc, 5), mk(&nc, 7));
    let lhs = kc.hcomp(&kc.vcomp(&b2, &b1).unwrap(), &kc.vcomp(&a2, &a1).unwrap()).unwrap();
    let rhs = kc.vcomp(&kc.hcomp(&b2, &a2).unwrap(), &kc.hcomp(&b1, &a1).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    let ids = kc.hcomp(&kc.id2(&mc).unwrap(), &kc.id2(&nc).unwrap()).unwrap();
    assert!(kc.is_identity2(&ids).unwrap());
}

#[test]
fn suave_adjunction_over_point() {
    let (f, _) = maps();
    let mut r = rng(3);
    for field in [Q, Field::Prime(5)] {
        let p = random_sheaf(&f.src, field, &mut r, 2);
        let rep = suave_test(&f, &p).unwrap();
        assert!(rep.triangles.holds(), "{:?}", rep.triangles);
        assert!(rep.involutive);
    }
}

#[test]
fn suave_adjunction_over_bc2() {
    let (_, g) = maps();
    let mut r = rng(4);
    let p = random_sheaf(&g.src, Q, &mut r, 2);
    assert!(suave_test(&g, &p).unwrap().passes());
}

#[test]
fn prim_adjunction() {
    let (f, g) = maps();
    let mut r = rng(5);
    for map in [&f, &g] {
        let p = random_sheaf(&map.src, Q, &mut r, 2);
        let rep = prim_test(map, &p).unwrap();
        assert!(rep.triangles.holds(), "{:?}", rep.triangles);
        assert!(rep.involutive);
    }
}

#[test]
fn etale_and_proper() {
    let (f, g) = maps();
    let mut r = rng(6);
    for map in [&f, &g] {
        let probes = vec![random_sheaf(&map.tgt, Q, &mut r, 2)];
        let rep = etale_proper_test(map, &probes).unwrap();
        assert!(rep.etale() && rep.proper());
    }
}

#[test]
fn base_change_maps_invertible() {
    let (f, g) = maps();
    let mut r = rng(7);
    let on_y = random_sheaf(&f.src, Q, &mut r, 2);
    let h = GroupoidFunctor::identity(&f.tgt);
    let on_x1 = random_sheaf(&h.src, Q, &mut r, 2);
    let certs = base_change_suave_prim(&f, &h, &on_y, &on_x1, None).unwrap();
    assert_eq!(certs.len(), 8);
    assert!(certs.iter().all(|c| c.invertible), "{:?}", certs.iter().map(|c| (&c.name, c.invertible)).collect::<Vec<_>>());
    let on_y = random_sheaf(&g.src, Q, &mut r, 2);
    let on_x1 = random_sheaf(&g.src, Q, &mut r, 2);
    let certs = base_change_suave_prim(&g, &g, &on_y, &on_x1, None).unwrap();
    assert!(certs.iter().all(|c| c.invertible));
}

#[test]
fn phi_psi_agree_with_push_pull() {
    let (f, _) = maps();
    let mut kc = KernelCat::new(&f.tgt, Q);
    let x = kc.add_object(&f).unwrap();
    let pt = kc.add_base();
    let a = GroupoidFunctor::identity(&f.src);
    let b = f.clone();
    let beta = NatTrans::identity(&f);
    let mut r = rng(8);
    let n = random_sheaf(&f.tgt, Q, &mut r, 2);
    let m = kc.phi_psi_map(x, pt, &a, &b, &beta, &n).unwrap();
    assert!(m.is_iso());
    let k = kc.phi(x, pt, &a, &b, &beta).unwrap();
    assert_eq!(kc.psi(x, pt, &k, &n).unwrap(), m.tgt);
}

#[test]
fn swap_reverses_composition() {
    let (_, g) = maps();
    let mut kc = KernelCat::new(&g.tgt, Q);
    let s = kc.add_base();
    let x = kc.add_object(&g).unwrap();
    let mut r = rng(9);
    let m = random_sheaf(&kc.hom_base(s, x).unwrap(), Q, &mut r, 2);
    let n = random_sheaf(&kc.hom_base(x, s).unwrap(), Q, &mut r, 2);
    assert!(kc.swap_compose_iso([s, x, s], &m, &n).unwrap().is_some());
    let back = kc.swap(x, s, &kc.swap(s, x, &m).unwrap()).unwrap();
    assert_eq!(back, m);
}

#[test]
fn rescaled_counit_breaks_triangles() {
    let (f, _) = maps();
    let mut r = rng(10);
    let p = random_sheaf(&f.src, Q, &mut r, 1);
    let rep = suave_test(&f, &p).unwrap();
    if p.dims() == vec![0] {
        return;
    }
    let mut adj = rep.adjunction.clone();
    adj.counit.map.comps = adj.counit.map.comps.iter().map(|a| a.scale(&Q.int(2))).collect();
    let v = crate::adjunction::verify(&rep.kernel_cat, &adj).unwrap();
    assert!(!v.left && !v.right);
    let fixed = crate::adjunction::upgrade_weak(&rep.kernel_cat, &adj).unwrap();
    assert!(crate::adjunction::verify(&rep.kernel_cat, &fixed).unwrap().holds());
}
