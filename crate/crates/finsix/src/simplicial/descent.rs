use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groupoid::{cech_nerve, Arrow, GroupoidFunctor, TruncatedSimplicialGroupoid, WideObject};
use crate::matrix::Matrix;
use crate::sheaf::{hom_basis, hom_dim, random_invertible, Sheaf, SheafMorphism};

/// A sheaf on the cover with gluing isomorphism `α: d⁰*X → d¹*X`.
#[derive(Clone, Debug, PartialEq)]
pub struct DescentDatum {
    pub sheaf: Sheaf,
    pub alpha: SheafMorphism,
}

/// Descent data along a cover `f: Y → X`, using the Čech nerve up to level 2.
pub struct DescentCategory {
    pub cover: GroupoidFunctor,
    pub field: Field,
    pub nerve: TruncatedSimplicialGroupoid,
}

fn flatten(m: &SheafMorphism, field: Field) -> Matrix {
    let parts: Vec<Matrix> = m.comps.iter().map(|c| c.vec()).collect();
    Matrix::vstack(&parts, field, 1)
}

fn combine(basis: &[SheafMorphism], coeffs: &Matrix, col: usize) -> SheafMorphism {
    let mut acc = SheafMorphism::zero(&basis[0].src, &basis[0].tgt);
    for (k, b) in basis.iter().enumerate() {
        let c = coeffs.get(k, col);
        if !c.is_zero() {
            acc = acc.add(&SheafMorphism {
                src: b.src.clone(),
                tgt: b.tgt.clone(),
                comps: b.comps.iter().map(|x| x.scale(c)).collect(),
            });
        }
    }
    acc
}

impl DescentCategory {
    pub fn new(cover: &GroupoidFunctor, field: Field) -> Result<DescentCategory> {
        cover.src.gate(field)?;
        cover.tgt.gate(field)?;
        let x = &cover.tgt;
        let hit: Vec<bool> = (0..x.components().len())
            .map(|c| (0..cover.src.num_objects()).any(|y| x.component_of(cover.obj(y)) == c))
            .collect();
        if hit.iter().any(|h| !h) {
            return Err(Error::Precondition("map is not essentially surjective".into()));
        }
        Ok(DescentCategory {
            cover: cover.clone(),
            field,
            nerve: cech_nerve(cover, 2)?,
        })
    }

    fn d(&self, level: usize, i: usize) -> &GroupoidFunctor {
        &self.nerve.faces[level][i]
    }

    /// Checks invertibility and the cocycle `d¹*α = d²*α ∘ d⁰*α` on level 2.
    pub fn datum(&self, sheaf: Sheaf, alpha: SheafMorphism) -> Result<DescentDatum> {
        let d = DescentDatum { sheaf, alpha };
        if d.alpha.src != d.sheaf.pullback(self.d(1, 0)) || d.alpha.tgt != d.sheaf.pullback(self.d(1, 1)) {
            return Err(Error::Structural("gluing map has the wrong endpoints".into()));
        }
        if !d.alpha.is_iso() {
            return Err(Error::Axiom("gluing map is not an isomorphism".into()));
        }
        if !self.cocycle_holds(&d)? {
            return Err(Error::Axiom("cocycle condition fails".into()));
        }
        Ok(d)
    }

    /// The same datum transported along random invertible matrices, one per object of the cover.
    pub fn conjugate<R: rand::Rng>(&self, d: &DescentDatum, rng: &mut R) -> Result<DescentDatum> {
        let y = &d.sheaf.base;
        let f = d.sheaf.field;
        let gs: Vec<Matrix> = (0..y.num_objects()).map(|u| random_invertible(f, d.sheaf.dim(u), rng)).collect();
        let mut reps = d.sheaf.rep.clone();
        for (c, comp) in y.components().iter().enumerate() {
            let g = &gs[comp.rep];
            let gi = g.inverse().expect("invertible");
            for m in reps[c].iter_mut() {
                *m = g.mul(m).mul(&gi);
            }
        }
        let paths: Vec<Matrix> = (0..y.num_objects())
            .map(|u| gs[u].mul(&d.sheaf.path[u]).mul(&gs[y.rep_of(u)].inverse().expect("invertible")))
            .collect();
        let sheaf = Sheaf::new(y, f, reps, paths)?;
        let iso = SheafMorphism::new(&d.sheaf, &sheaf, gs)?;
        let inv = iso.inverse().expect("invertible");
        let alpha = SheafMorphism::chain(&[&inv.pullback(self.d(1, 0)), &d.alpha, &iso.pullback(self.d(1, 1))])?;
        self.datum(sheaf, alpha)
    }

    pub fn cocycle_holds(&self, d: &DescentDatum) -> Result<bool> {
        let a0 = d.alpha.pullback(self.d(2, 0));
        let a1 = d.alpha.pullback(self.d(2, 1));
        let a2 = d.alpha.pullback(self.d(2, 2));
        Ok(a0.then(&a2)? == a1)
    }

    /// Basis of maps `φ` with `d¹*φ ∘ α₁ = α₂ ∘ d⁰*φ`.
    pub fn hom_basis(&self, a: &DescentDatum, b: &DescentDatum) -> Result<Vec<SheafMorphism>> {
        let basis = hom_basis(&a.sheaf, &b.sheaf);
        if basis.is_empty() {
            return Ok(vec![]);
        }
        let f = self.field;
        let mut cols = Vec::new();
        for phi in &basis {
            let lhs = a.alpha.then(&phi.pullback(self.d(1, 1)))?;
            let rhs = phi.pullback(self.d(1, 0)).then(&b.alpha)?;
            cols.push(flatten(&lhs, f).sub(&flatten(&rhs, f)));
        }
        let rows = cols[0].rows();
        let sys = Matrix::hstack(&cols, f, rows);
        let ns = sys.nullspace();
        Ok((0..ns.cols()).map(|j| combine(&basis, &ns, j)).collect())
    }

    pub fn hom_dim(&self, a: &DescentDatum, b: &DescentDatum) -> Result<usize> {
        Ok(self.hom_basis(a, b)?.len())
    }

    /// `M ↦ (f*M, α)` with `α` transported along the comparison cell of the nerve.
    pub fn comparison(&self, m: &Sheaf) -> Result<DescentDatum> {
        let level1 = &self.nerve.levels[1];
        let u = self.cover.after(self.d(1, 0));
        let v = self.cover.after(self.d(1, 1));
        let alpha = m.transport(&level1.cell(1, 0), &u, &v);
        let sheaf = m.pullback(&self.cover);
        let alpha = SheafMorphism {
            src: sheaf.pullback(self.d(1, 0)),
            tgt: sheaf.pullback(self.d(1, 1)),
            comps: alpha.comps,
        };
        self.datum(sheaf, alpha)
    }

    /// Descends a datum: builds `M` on the base from the gluing maps over chosen lifts,
    /// and an isomorphism `comparison(M) → d` found in the descent hom space.
    pub fn descend(&self, d: &DescentDatum) -> Result<(Sheaf, SheafMorphism)> {
        let x = &self.cover.tgt;
        let y = &self.cover.src;
        let level1 = &self.nerve.levels[1];
        let mut reps = Vec::new();
        for (c, comp) in x.components().iter().enumerate() {
            let lift = (0..y.num_objects())
                .find(|&u| x.component_of(self.cover.obj(u)) == c)
                .ok_or_else(|| Error::Precondition("map is not essentially surjective".into()))?;
            let fx = self.cover.obj(lift);
            let mats = comp
                .group
                .elements()
                .map(|g| {
                    let phi = Arrow {
                        src: fx,
                        tgt: fx,
                        g: comp.group.inv(g),
                    };
                    let o = WideObject {
                        us: vec![lift, lift],
                        phis: vec![phi],
                    };
                    let k = level1.object_of(&o).expect("object of the nerve");
                    d.alpha.comps[k].clone()
                })
                .collect();
            reps.push(mats);
        }
        let m = Sheaf::from_reps(x, self.field, reps)?;
        let fm = self.comparison(&m)?;
        let iso = self
            .find_iso(&fm, d)?
            .ok_or_else(|| Error::theorem("grothendieck-descent", "descended object is not isomorphic to the datum"))?;
        Ok((m, iso))
    }

    fn find_iso(&self, a: &DescentDatum, b: &DescentDatum) -> Result<Option<SheafMorphism>> {
        if a.sheaf.dims() != b.sheaf.dims() {
            return Ok(None);
        }
        let basis = self.hom_basis(a, b)?;
        if basis.is_empty() {
            let z = SheafMorphism::zero(&a.sheaf, &b.sheaf);
            return Ok(z.is_iso().then_some(z));
        }
        let f = self.field;
        let mut state: u64 = 0x2545_f491_4f6c_dd1d;
        for _ in 0..64 {
            let mut coeffs = Matrix::zeros(f, basis.len(), 1);
            for k in 0..basis.len() {
                state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                coeffs.set(k, 0, f.int(((state >> 33) % 11) as i64 - 5));
            }
            let cand = combine(&basis, &coeffs, 0);
            if cand.is_iso() {
                return Ok(Some(cand));
            }
        }
        Ok(None)
    }
}

/// Fully-faithfulness by hom dimensions and injectivity, essential surjectivity by descending data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentCertificate {
    /// `(dim Hom_X(M, N), dim Hom_desc(FM, FN))` over the test family.
    pub hom_dims: Vec<Vec<(usize, usize)>>,
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    pub data_checked: usize,
}

impl DescentCertificate {
    pub fn equivalence(&self) -> bool {
        self.fully_faithful && self.essentially_surjective
    }
}

pub fn descent_comparison(
    cat: &DescentCategory,
    objects: &[Sheaf],
    data: &[DescentDatum],
) -> Result<DescentCertificate> {
    let images: Vec<DescentDatum> = objects.iter().map(|m| cat.comparison(m)).collect::<Result<_>>()?;
    let mut hom_dims = Vec::new();
    let mut ff = true;
    for (m, fm) in objects.iter().zip(&images) {
        let mut row = Vec::new();
        for (n, fn_) in objects.iter().zip(&images) {
            let (a, b) = (hom_dim(m, n), cat.hom_dim(fm, fn_)?);
            let basis = hom_basis(m, n);
            let pulled: Vec<Matrix> = basis.iter().map(|p| flatten(&p.pullback(&cat.cover), cat.field)).collect();
            let injective = pulled.is_empty() || Matrix::hstack(&pulled, cat.field, pulled[0].rows()).rank() == basis.len();
            ff &= a == b && injective;
            row.push((a, b));
        }
        hom_dims.push(row);
    }
    for d in data {
        cat.descend(d)?;
    }
    Ok(DescentCertificate {
        hom_dims,
        fully_faithful: ff,
        essentially_surjective: true,
        data_checked: data.len(),
    })
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

    fn q() -> Field {
        Field::Rational
    }

    fn check(cat: &DescentCategory, family: &[Sheaf], seed: u64) -> DescentCertificate {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<DescentDatum> = family.iter().map(|m| cat.conjugate(&cat.comparison(m).unwrap(), &mut rng).unwrap()).collect();
        descent_comparison(cat, family, &data).unwrap()
    }

    fn deloop(g: &FiniteGroup) -> GroupoidRef {
        Arc::new(FiniteGroupoid::delooping(g))
    }

    #[test]
    fn two_points_over_a_point() {
        let y: GroupoidRef = Arc::new(FiniteGroupoid::discrete_n(2));
        let pt: GroupoidRef = Arc::new(FiniteGroupoid::point());
        let cat = DescentCategory::new(&GroupoidFunctor::to_point(&y, &pt), q()).unwrap();
        assert_eq!(cat.nerve.levels[1].groupoid.num_objects(), 4);
        let w = Sheaf::constant(&pt, q(), 2);
        let fw = cat.comparison(&w).unwrap();
        assert!(fw.alpha.comps.iter().all(|m| m.is_identity()));
        let family = vec![Sheaf::unit(&pt, q()), w, Sheaf::constant(&pt, q(), 3)];
        let cert = check(&cat, &family, 1);
        assert!(cert.equivalence(), "{cert:?}");
        assert_eq!(cert.hom_dims[1][2], (6, 6));
    }

    #[test]
    fn point_over_bc2_reps() {
        let c2 = FiniteGroup::cyclic(2);
        let pt: GroupoidRef = Arc::new(FiniteGroupoid::point());
        let b = deloop(&c2);
        let cat = DescentCategory::new(&GroupoidFunctor::from_group_hom(&pt, &b, &[0]), q()).unwrap();
        let sign = Sheaf::from_representation(&b, q(), vec![Matrix::from_ints(q(), 1, 1, &[1]), Matrix::from_ints(q(), 1, 1, &[-1])]).unwrap();
        let triv = Sheaf::unit(&b, q());
        let fam = vec![triv.clone(), sign.clone(), triv.direct_sum(&sign)];
        let cert = check(&cat, &fam, 2);
        assert!(cert.equivalence());
        assert_eq!(cert.hom_dims[0][1], (0, 0));
        // the datum recovers the action
        let (m, _) = cat.descend(&cat.comparison(&sign).unwrap()).unwrap();
        assert_eq!(m.rep[0][1], Matrix::from_ints(q(), 1, 1, &[-1]));
    }

    #[test]
    fn point_over_bs3_irreducibles() {
        let s3 = FiniteGroup::symmetric(3);
        let pt: GroupoidRef = Arc::new(FiniteGroupoid::point());
        let b = deloop(&s3);
        let cat = DescentCategory::new(&GroupoidFunctor::from_group_hom(&pt, &b, &[0]), q()).unwrap();
        let irr = crate::sheaf::irreducibles_s3(&b, q()).unwrap();
        let cert = check(&cat, &irr, 3);
        assert!(cert.equivalence());
        for (i, row) in cert.hom_dims.iter().enumerate() {
            for (j, &(a, bb)) in row.iter().enumerate() {
                assert_eq!(a, bb);
                assert_eq!(a, usize::from(i == j));
            }
        }
    }

    #[test]
    fn identity_cover_and_random_surjection() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x: GroupoidRef = Arc::new(FiniteGroupoid::from_groups(&[FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)]));
        let id = DescentCategory::new(&GroupoidFunctor::identity(&x), q()).unwrap();
        let fam: Vec<Sheaf> = (0..3).map(|_| random_sheaf(&x, q(), &mut rng, 2)).collect();
        assert!(check(&id, &fam, 4).equivalence());
        let cover = crate::groupoid::random_surjection(&x, &mut rng);
        let cat = DescentCategory::new(&cover, q()).unwrap();
        assert!(check(&cat, &fam, 5).equivalence());
    }

    #[test]
    fn gate_and_surjectivity() {
        let b = deloop(&FiniteGroup::cyclic(2));
        let pt: GroupoidRef = Arc::new(FiniteGroupoid::point());
        let f = GroupoidFunctor::from_group_hom(&pt, &b, &[0]);
        assert!(matches!(DescentCategory::new(&f, Field::prime(2).unwrap()), Err(Error::Gate(_))));
        let two: GroupoidRef = Arc::new(FiniteGroupoid::discrete_n(2));
        let g = GroupoidFunctor::constant(&pt, &two, 0);
        assert!(DescentCategory::new(&g, q()).is_err());
    }

    #[test]
    fn broken_cocycle_rejected() {
        let y: GroupoidRef = Arc::new(FiniteGroupoid::discrete_n(2));
        let pt: GroupoidRef = Arc::new(FiniteGroupoid::point());
        let cat = DescentCategory::new(&GroupoidFunctor::to_point(&y, &pt), q()).unwrap();
        let d = cat.comparison(&Sheaf::unit(&pt, q())).unwrap();
        let mut alpha = d.alpha.clone();
        let k = alpha.comps.len() - 1;
        alpha.comps[k] = alpha.comps[k].scale(&q().int(2));
        assert!(cat.datum(d.sheaf.clone(), alpha).is_err());
    }
}
