use std::sync::Arc;

use super::table::{all_functors, direct_adjoint};
use super::*;
use crate::category::FiniteCategory;
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, GroupoidFunctor};
use crate::sheaf::Sheaf;

fn arrow() -> FiniteCategory {
    FiniteCategory::poset(&["0", "1"], |a, b| a <= b)
}

fn small_cat() -> TableTwoCat {
    TableTwoCat::from_categories(&[
        ("1".into(), FiniteCategory::poset(&["*"], |_, _| true)),
        ("I".into(), arrow()),
        ("B".into(), FiniteCategory::delooping(&FiniteGroup::cyclic(2))),
    ])
}

fn obj(c: &TableTwoCat, n: &str) -> usize {
    c.object_index(n).unwrap()
}

#[test]
fn table_is_valid_strict_two_category() {
    let c = small_cat();
    assert!(c.validate().is_valid(), "{:?}", c.validate());
    assert_eq!(all_functors(&arrow(), &arrow()).len(), 3);
    let round = TableTwoCat::from_spec(&c.to_spec()).unwrap();
    assert_eq!(round.twos.len(), c.twos.len());
}

#[test]
fn identity_adjunction_passes() {
    let c = small_cat();
    let i = c.id1[obj(&c, "I")];
    let e = c.id2[i];
    let adj = Adjunction::<TableTwoCat> {
        left: i,
        right: i,
        unit: e,
        counit: e,
    };
    assert!(verify(&c, &adj).unwrap().holds());
}

#[test]
fn twisted_equivalence_fails_then_upgrades() {
    let c = small_cat();
    let b = obj(&c, "B");
    let id = c.id1[b];
    let twist = c.twos_between(id, id).into_iter().find(|&a| a != c.id2[id]).unwrap();
    let adj = Adjunction::<TableTwoCat> {
        left: id,
        right: id,
        unit: c.id2[id],
        counit: twist,
    };
    let v = verify(&c, &adj).unwrap();
    assert!(!v.left);
    let fixed = upgrade_weak(&c, &adj).unwrap();
    assert!(verify(&c, &fixed).unwrap().holds());
    assert_eq!(fixed.unit, twist);
    let good = Adjunction::<TableTwoCat> {
        unit: c.id2[id],
        counit: c.id2[id],
        ..adj.clone()
    };
    let (cell, ok) = adjoint_uniqueness(&c, &good, &fixed).unwrap();
    assert!(ok);
    assert_eq!(cell, twist);
}

/// All adjunctions of the table, by direct search.
fn adjunctions(c: &TableTwoCat) -> Vec<Adjunction<TableTwoCat>> {
    let mut out = Vec::new();
    for f in 0..c.ones.len() {
        let (y, x) = (c.ones[f].src, c.ones[f].tgt);
        if let Some((g, eta, eps)) = direct_adjoint(c, f, y, x) {
            out.push(Adjunction {
                left: f,
                right: g,
                unit: eta,
                counit: eps,
            });
        }
    }
    out
}

fn exhaustive_mates(c: &TableTwoCat) -> usize {
    let adjs = adjunctions(c);
    let mut checked = 0;
    for adj in &adjs {
        for adj2 in &adjs {
            let (x, y) = (c.ones[adj.left].src, c.ones[adj.left].tgt);
            let (x2, y2) = (c.ones[adj2.left].src, c.ones[adj2.left].tgt);
            for a in c.ones_between(x, x2) {
                for b in c.ones_between(y, y2) {
                    let sq = MateSquare {
                        adj,
                        adj2,
                        a,
                        b,
                    };
                    let fa = c.comp1[&(adj2.left, a)];
                    let bf = c.comp1[&(b, adj.left)];
                    for phi in c.twos_between(fa, bf) {
                        let rho = mate_rho(c, &sq, &phi).unwrap();
                        assert_eq!(mate_lambda(c, &sq, &rho).unwrap(), phi);
                        checked += 1;
                    }
                    let au = c.comp1[&(a, adj.right)];
                    let ub = c.comp1[&(adj2.right, b)];
                    for psi in c.twos_between(au, ub) {
                        let lam = mate_lambda(c, &sq, &psi).unwrap();
                        assert_eq!(mate_rho(c, &sq, &lam).unwrap(), psi);
                        checked += 1;
                    }
                }
            }
        }
    }
    checked
}

#[test]
fn mates_are_inverse_bijections() {
    let c = small_cat();
    for f in 0..c.ones.len() {
        for g in 0..c.ones.len() {
            if c.ones[f].src == c.ones[g].src && c.ones[f].tgt == c.ones[g].tgt {
                assert!(c.twos_between(f, g).len() <= 4);
            }
        }
    }
    assert!(exhaustive_mates(&c) > 20);
}

#[test]
fn mates_commute_with_projection() {
    let c = small_cat();
    let d = TableTwoCat::from_categories(&[("I".into(), arrow())]);
    let p = c.product(&d);
    assert!(p.validate().is_valid());
    let i = obj(&c, "I");
    let one = obj(&c, "1");
    let t = c.ones_between(i, one)[0];
    let adj = adjunctions(&c).into_iter().find(|a| a.right == t).unwrap();
    let did = d.id1[0];
    let lift = |x: usize| x * d.ones.len() + did;
    let lift2 = |x: usize| x * d.twos.len() + d.id2[did];
    let padj = Adjunction::<TableTwoCat> {
        left: lift(adj.left),
        right: lift(adj.right),
        unit: lift2(adj.unit),
        counit: lift2(adj.counit),
    };
    assert!(verify(&p, &padj).unwrap().holds());
    let a = c.id1[c.ones[adj.left].src];
    let b = c.id1[c.ones[adj.left].tgt];
    let sq = MateSquare {
        adj: &adj,
        adj2: &adj,
        a,
        b,
    };
    let psq = MateSquare {
        adj: &padj,
        adj2: &padj,
        a: lift(a),
        b: lift(b),
    };
    let fa = c.comp1[&(adj.left, a)];
    let bf = c.comp1[&(b, adj.left)];
    for phi in c.twos_between(fa, bf) {
        let here = mate_rho(&c, &sq, &phi).unwrap();
        let there = mate_rho(&p, &psq, &lift2(phi)).unwrap();
        assert_eq!(p.project_first_two(&d, there), here);
    }
}

#[test]
fn pointwise_audit_cases() {
    let c = small_cat();
    let zs: Vec<usize> = (0..c.objects.len()).collect();
    // terminal functor I → 1 is a left adjoint (its right adjoint picks the top)
    let (i, one, b) = (obj(&c, "I"), obj(&c, "1"), obj(&c, "B"));
    let t = c.ones_between(i, one)[0];
    let rep = pointwise_audit(&c, t, &zs, 10_000).unwrap();
    assert!(rep.criterion && rep.agrees && rep.direct.is_some());
    // an equivalence
    let idb = c.id1[b];
    let rep = pointwise_audit(&c, idb, &zs, 10_000).unwrap();
    assert!(rep.criterion && rep.agrees);
    // B → 1 has no right adjoint: condition (a) fails at Z = 1
    let u = c.ones_between(b, one)[0];
    let rep = pointwise_audit(&c, u, &zs, 10_000).unwrap();
    assert!(!rep.condition_a && rep.direct.is_none() && rep.agrees);
    assert!(matches!(pointwise_audit(&c, t, &zs, 1), Err(crate::Error::Bound(_))));
}

#[test]
fn shriek_witness_in_probe_category() {
    let c2 = FiniteGroup::cyclic(2);
    let b = Arc::new(FiniteGroupoid::delooping(&c2));
    let pt = Arc::new(FiniteGroupoid::point());
    let f = GroupoidFunctor::to_point(&b, &pt);
    let q = Field::Rational;
    let sign = Sheaf::from_representation(&b, q, vec![crate::Matrix::from_ints(q, 1, 1, &[1]), crate::Matrix::from_ints(q, 1, 1, &[-1])]).unwrap();
    let probes = vec![vec![Sheaf::unit(&b, q), sign.clone(), sign.direct_sum(&Sheaf::unit(&b, q))], vec![Sheaf::unit(&pt, q), Sheaf::constant(&pt, q, 2)]];
    let cat = ProbeTwoCat::new(vec![b.clone(), pt.clone()], vec![(0, 1, f)], probes).unwrap();
    let adj = cat.shriek_adjunction(0);
    assert!(verify(&cat, &adj).unwrap().holds());
    let (cell, ok) = adjoint_uniqueness(&cat, &adj, &adj).unwrap();
    assert!(ok && cat.is_identity2(&cell).unwrap());
}

#[test]
fn battery_covers_direct_search() {
    let c = sample_two_category();
    let b = mate_battery(&c).unwrap();
    assert!(b.holds(), "{:?}", b.failures);
    assert!(b.adjunctions >= adjunctions(&c).len());
    assert!(b.checked >= exhaustive_mates(&c));
    assert!(b.max_parallel_twos <= 4);
}
