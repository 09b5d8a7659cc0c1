//! Global sections and compactly supported sections, and the Künneth check.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::{lan, ran, random_sheaf, Sheaf};
use crate::error::Result;
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, GroupoidFunctor, GroupoidRef, WideProduct};

#[derive(Clone, Debug)]
pub struct GlobalSections {
    /// `Γ(X, M) = p_*M`.
    pub gamma: Sheaf,
    /// `Γ_c(X, M) = p_!M`.
    pub gamma_c: Sheaf,
}

impl GlobalSections {
    pub fn dims(&self) -> (usize, usize) {
        (self.gamma.dim(0), self.gamma_c.dim(0))
    }
}

fn to_point(x: &GroupoidRef) -> GroupoidFunctor {
    GroupoidFunctor::to_point(x, &Arc::new(FiniteGroupoid::point()))
}

pub fn global_sections(m: &Sheaf) -> Result<GlobalSections> {
    m.base.gate(m.field)?;
    let p = to_point(&m.base);
    Ok(GlobalSections {
        gamma: ran(&p, m)?,
        gamma_c: lan(&p, m)?,
    })
}

/// `X × Y` as the fiber product over the point, with its projections.
pub fn product(x: &GroupoidRef, y: &GroupoidRef) -> Result<WideProduct> {
    let pt = Arc::new(FiniteGroupoid::point());
    WideProduct::new(&[GroupoidFunctor::to_point(x, &pt), GroupoidFunctor::to_point(y, &pt)])
}

#[derive(Clone, Debug, Serialize)]
pub struct KunnethReport {
    pub left: usize,
    pub right: usize,
    pub product: usize,
}

impl KunnethReport {
    pub fn holds(&self) -> bool {
        self.product == self.left * self.right
    }
}

/// `dim Γ_c(X × Y, M ⊠ N)` against `dim Γ_c(X, M) · dim Γ_c(Y, N)`.
pub fn kunneth(m: &Sheaf, n: &Sheaf) -> Result<KunnethReport> {
    let w = product(&m.base, &n.base)?;
    let boxed = m.pullback(&w.projections[0]).tensor(&n.pullback(&w.projections[1]));
    Ok(KunnethReport {
        left: global_sections(m)?.gamma_c.dim(0),
        right: global_sections(n)?.gamma_c.dim(0),
        product: global_sections(&boxed)?.gamma_c.dim(0),
    })
}

/// A small random groupoid: a few components drawn from cyclic groups, `S₃` and
/// discrete points, with up to three objects each.
pub fn random_groupoid<R: Rng>(field: Field, rng: &mut R) -> GroupoidRef {
    let mut out: Option<FiniteGroupoid> = None;
    for _ in 0..rng.gen_range(1..=3) {
        let g = loop {
            let g = match rng.gen_range(0..4) {
                0 => FiniteGroup::cyclic(1),
                1 => FiniteGroup::cyclic(2),
                2 => FiniteGroup::cyclic(3),
                _ => FiniteGroup::symmetric(3),
            };
            if field.admits_order(g.order()) {
                break g;
            }
        };
        let copies = rng.gen_range(1..=3);
        let mut c = FiniteGroupoid::delooping(&g);
        if copies > 1 {
            c = connected(&g, copies);
        }
        out = Some(match out {
            None => c,
            Some(o) => o.disjoint_union(&c),
        });
    }
    Arc::new(out.expect("at least one component"))
}

/// The connected groupoid with `n` objects and automorphism group `g`.
fn connected(g: &FiniteGroup, n: usize) -> FiniteGroupoid {
    let names: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let order = g.order();
    // arrows i → j labelled by group elements, composed in the group
    let (gr, _) = FiniteGroupoid::coordinatize(
        names,
        |x| (0..n).flat_map(|y| (0..order).map(move |a| (y, (x, y, a)))).collect(),
        |b: &(usize, usize, usize), a: &(usize, usize, usize)| (a.0, b.1, g.mul(b.2, a.2)),
        |x| (x, x, g.identity()),
        |t| g.name(t.2).to_string(),
    );
    gr
}

/// A random sheaf on a random groupoid.
pub fn random_pair<R: Rng>(field: Field, rng: &mut R) -> Sheaf {
    let x = random_groupoid(field, rng);
    random_sheaf(&x, field, rng, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_examples() {
        let f = Field::Rational;
        let s3 = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::symmetric(3)));
        assert_eq!(global_sections(&Sheaf::unit(&s3, f)).unwrap().dims(), (1, 1));
        let three = Arc::new(FiniteGroupoid::discrete_n(3));
        assert_eq!(global_sections(&Sheaf::unit(&three, f)).unwrap().dims(), (3, 3));
        let two = Arc::new(FiniteGroupoid::discrete_n(2));
        let k = kunneth(&Sheaf::unit(&three, f), &Sheaf::unit(&two, f)).unwrap();
        assert_eq!(k.product, 6);
        let sign = &crate::sheaf::irreducibles_s3(&s3, f).unwrap()[1];
        assert_eq!(global_sections(sign).unwrap().dims(), (0, 0));
    }

    #[test]
    fn kunneth_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [Field::Rational, Field::prime(5).unwrap()] {
            for _ in 0..6 {
                let m = random_pair(field, &mut rng);
                let n = random_pair(field, &mut rng);
                assert!(kunneth(&m, &n).unwrap().holds());
            }
        }
    }

    #[test]
    fn connected_groupoid_is_equivalent_to_delooping() {
        let g = FiniteGroup::cyclic(3);
        let c = connected(&g, 3);
        assert!(c.validate().is_valid());
        assert!(crate::groupoid::equivalent(&c, &FiniteGroupoid::delooping(&g)));
    }
}
