//! Sheaves of finite-dimensional vector spaces on finite groupoids.
//!
//! A sheaf stores, per component, the action of the automorphism group of the
//! representative and, per object, the matrix of the chosen path `p_x`.

mod compat;
mod kan;
mod random;
mod sections;

pub use compat::{
    base_change, base_change_square, coevaluation, evaluation, find_iso, functoriality_shriek, functoriality_star,
    hom_projection, lan_cell, projection_formula_left, projection_formula_right, ran_cell, Certificate,
};
pub use kan::{
    lan, lan_counit, lan_morphism, lan_unit, norm_map, ran, ran_counit, ran_morphism, ran_unit, upper_shriek,
    AdjunctionWitness,
};
pub use random::{irreducibles_s3, random_invertible, random_sheaf, random_sheaf_bounded};
pub use sections::{global_sections, kunneth, product, random_groupoid, random_pair, GlobalSections, KunnethReport};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groupoid::{same, Arrow, GroupoidFunctor, GroupoidRef, NatTrans};
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct Sheaf {
    pub base: GroupoidRef,
    pub field: Field,
    /// `rep[c][g]`: action of automorphism `g` on the value at the representative of component `c`.
    pub rep: Vec<Vec<Matrix>>,
    /// Matrix of the chosen path into each object, and its inverse.
    pub path: Vec<Matrix>,
    pub path_inv: Vec<Matrix>,
}

impl PartialEq for Sheaf {
    fn eq(&self, other: &Self) -> bool {
        same(&self.base, &other.base)
            && self.field == other.field
            && self.rep == other.rep
            && self.path == other.path
    }
}

impl Sheaf {
    pub fn new(base: &GroupoidRef, field: Field, rep: Vec<Vec<Matrix>>, path: Vec<Matrix>) -> Result<Sheaf> {
        if rep.len() != base.components().len() || path.len() != base.num_objects() {
            return Err(Error::Structural("sheaf data does not match the groupoid".into()));
        }
        let path_inv = path
            .iter()
            .enumerate()
            .map(|(x, p)| {
                p.inverse()
                    .ok_or_else(|| Error::Axiom(format!("path matrix at {} not invertible", base.name(x))))
            })
            .collect::<Result<Vec<_>>>()?;
        let s = Sheaf {
            base: base.clone(),
            field,
            rep,
            path,
            path_inv,
        };
        s.validate()?;
        Ok(s)
    }

    /// A sheaf with identity paths from per-component representations.
    pub fn from_reps(base: &GroupoidRef, field: Field, rep: Vec<Vec<Matrix>>) -> Result<Sheaf> {
        let path = (0..base.num_objects())
            .map(|x| {
                let d = rep.get(base.component_of(x)).and_then(|r| r.first()).map_or(0, |m| m.rows());
                Matrix::identity(field, d)
            })
            .collect();
        Sheaf::new(base, field, rep, path)
    }

    fn from_parts_unchecked(base: &GroupoidRef, field: Field, rep: Vec<Vec<Matrix>>, path: Vec<Matrix>) -> Sheaf {
        let path_inv = path.iter().map(|p| p.inverse().expect("invertible path")).collect();
        Sheaf {
            base: base.clone(),
            field,
            rep,
            path,
            path_inv,
        }
    }

    fn identity_paths(base: &GroupoidRef, field: Field, rep: Vec<Vec<Matrix>>) -> Sheaf {
        let path: Vec<Matrix> = (0..base.num_objects())
            .map(|x| Matrix::identity(field, rep[base.component_of(x)][0].rows()))
            .collect();
        Sheaf {
            base: base.clone(),
            field,
            rep,
            path_inv: path.clone(),
            path,
        }
    }

    /// Constant sheaf with value `k^d`.
    pub fn constant(base: &GroupoidRef, field: Field, d: usize) -> Sheaf {
        let rep = base
            .components()
            .iter()
            .map(|c| vec![Matrix::identity(field, d); c.group.order()])
            .collect();
        Sheaf::identity_paths(base, field, rep)
    }

    pub fn unit(base: &GroupoidRef, field: Field) -> Sheaf {
        Sheaf::constant(base, field, 1)
    }

    pub fn zero(base: &GroupoidRef, field: Field) -> Sheaf {
        Sheaf::constant(base, field, 0)
    }

    /// Sheaf on a delooping from a representation.
    pub fn from_representation(base: &GroupoidRef, field: Field, mats: Vec<Matrix>) -> Result<Sheaf> {
        Sheaf::from_reps(base, field, vec![mats])
    }

    pub fn dim(&self, x: usize) -> usize {
        self.path[x].rows()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..self.base.num_objects()).map(|x| self.dim(x)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }

    /// Matrix of an arbitrary arrow.
    pub fn mat(&self, a: &Arrow) -> Matrix {
        let c = self.base.component_of(a.src);
        self.path[a.tgt].mul(&self.rep[c][a.g]).mul(&self.path_inv[a.src])
    }

    pub fn validate(&self) -> Result<()> {
        for (ci, comp) in self.base.components().iter().enumerate() {
            let r = &self.rep[ci];
            if r.len() != comp.group.order() {
                return Err(Error::Structural(format!("component {ci}: wrong number of matrices")));
            }
            let d = self.path[comp.rep].rows();
            if !self.path[comp.rep].is_identity() {
                return Err(Error::Axiom(format!("path at representative {} is not the identity", self.base.name(comp.rep))));
            }
            for &x in &comp.objects {
                if self.path[x].shape() != (d, d) {
                    return Err(Error::Structural(format!("dimension jumps inside component {ci}")));
                }
            }
            if r.iter().any(|m| m.shape() != (d, d)) {
                return Err(Error::Structural(format!("component {ci}: matrix of wrong size")));
            }
            if !r[comp.group.identity()].is_identity() {
                return Err(Error::Axiom(format!("identity of component {ci} acts nontrivially")));
            }
            for a in comp.group.elements() {
                for b in comp.group.elements() {
                    if r[comp.group.mul(a, b)] != r[a].mul(&r[b]) {
                        return Err(Error::Axiom(format!(
                            "composition fails at ({}, {}) in component {ci}",
                            comp.group.name(a),
                            comp.group.name(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn same_shape(&self, other: &Sheaf) -> bool {
        same(&self.base, &other.base) && self.dims() == other.dims()
    }

    pub fn pullback(&self, f: &GroupoidFunctor) -> Sheaf {
        assert!(same(&f.tgt, &self.base), "pullback along a map with another target");
        let rep = f.grp_img.iter().map(|v| v.iter().map(|a| self.mat(a)).collect()).collect();
        let path = f.path_img.iter().map(|a| self.mat(a)).collect();
        let path_inv = f.path_img.iter().map(|a| self.mat(&f.tgt.inverse(a))).collect();
        Sheaf {
            base: f.src.clone(),
            field: self.field,
            rep,
            path,
            path_inv,
        }
    }

    pub fn tensor(&self, other: &Sheaf) -> Sheaf {
        assert!(same(&self.base, &other.base), "tensor over different bases");
        let rep = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.kron(y)).collect())
            .collect();
        let path = self.path.iter().zip(&other.path).map(|(x, y)| x.kron(y)).collect();
        let path_inv = self.path_inv.iter().zip(&other.path_inv).map(|(x, y)| x.kron(y)).collect();
        Sheaf {
            base: self.base.clone(),
            field: self.field,
            rep,
            path,
            path_inv,
        }
    }

    /// `iHom(self, other)`, with `Hom(M(x), N(x))` flattened row-major.
    pub fn ihom(&self, other: &Sheaf) -> Sheaf {
        assert!(same(&self.base, &other.base), "internal hom over different bases");
        let conj = |n: &Matrix, minv: &Matrix| n.kron(&minv.transpose());
        let rep = self
            .base
            .components()
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                comp.group
                    .elements()
                    .map(|g| conj(&other.rep[c][g], &self.rep[c][comp.group.inv(g)]))
                    .collect()
            })
            .collect();
        let path = self.path_inv.iter().zip(&other.path).map(|(minv, n)| conj(n, minv)).collect();
        Sheaf::from_parts_unchecked(&self.base, self.field, rep, path)
    }

    pub fn dual(&self) -> Sheaf {
        self.ihom(&Sheaf::unit(&self.base, self.field))
    }

    pub fn direct_sum(&self, other: &Sheaf) -> Sheaf {
        assert!(same(&self.base, &other.base), "direct sum over different bases");
        let f = self.field;
        let rep = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| Matrix::block_diag(&[x.clone(), y.clone()], f)).collect())
            .collect();
        let path = self
            .path
            .iter()
            .zip(&other.path)
            .map(|(x, y)| Matrix::block_diag(&[x.clone(), y.clone()], f))
            .collect();
        Sheaf::from_parts_unchecked(&self.base, f, rep, path)
    }

    /// `α*: u*M → v*M` for a natural transformation `α: u ⇒ v`.
    pub fn transport(&self, alpha: &NatTrans, u: &GroupoidFunctor, v: &GroupoidFunctor) -> SheafMorphism {
        SheafMorphism {
            src: self.pullback(u),
            tgt: self.pullback(v),
            comps: alpha.components.iter().map(|a| self.mat(a)).collect(),
        }
    }

    /// Same groupoid data with every path normalized to the identity.
    pub fn normalized(&self) -> (Sheaf, SheafMorphism) {
        let n = Sheaf::identity_paths(&self.base, self.field, self.rep.clone());
        let iso = SheafMorphism {
            src: self.clone(),
            tgt: n.clone(),
            comps: self.path_inv.clone(),
        };
        (n, iso)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SheafMorphism {
    pub src: Sheaf,
    pub tgt: Sheaf,
    pub comps: Vec<Matrix>,
}

impl SheafMorphism {
    pub fn new(src: &Sheaf, tgt: &Sheaf, comps: Vec<Matrix>) -> Result<SheafMorphism> {
        let m = SheafMorphism {
            src: src.clone(),
            tgt: tgt.clone(),
            comps,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(m: &Sheaf) -> SheafMorphism {
        SheafMorphism {
            src: m.clone(),
            tgt: m.clone(),
            comps: m.dims().iter().map(|&d| Matrix::identity(m.field, d)).collect(),
        }
    }

    pub fn zero(src: &Sheaf, tgt: &Sheaf) -> SheafMorphism {
        SheafMorphism {
            src: src.clone(),
            tgt: tgt.clone(),
            comps: src
                .dims()
                .iter()
                .zip(tgt.dims())
                .map(|(&a, b)| Matrix::zeros(src.field, b, a))
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !same(&self.src.base, &self.tgt.base) || self.comps.len() != self.src.base.num_objects() {
            return Err(Error::Structural("sheaf morphism between different bases".into()));
        }
        let g = &self.src.base;
        for x in 0..g.num_objects() {
            if self.comps[x].shape() != (self.tgt.dim(x), self.src.dim(x)) {
                return Err(Error::Structural(format!("component at {} has the wrong shape", g.name(x))));
            }
        }
        let mut gens: Vec<Arrow> = (0..g.num_objects()).map(|x| g.path(x)).collect();
        for (c, comp) in g.components().iter().enumerate() {
            gens.extend(comp.group.elements().map(|e| g.auto(c, e)));
        }
        for a in gens {
            let lhs = self.tgt.mat(&a).mul(&self.comps[a.src]);
            let rhs = self.comps[a.tgt].mul(&self.src.mat(&a));
            if lhs != rhs {
                return Err(Error::Axiom(format!("not natural at {}", g.arrow_name(&a))));
            }
        }
        Ok(())
    }

    pub fn is_natural(&self) -> bool {
        self.validate().is_ok()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SheafMorphism) -> Result<SheafMorphism> {
        if self.tgt != other.src {
            return Err(Error::Structural("sheaf morphisms not composable".into()));
        }
        Ok(SheafMorphism {
            src: self.src.clone(),
            tgt: other.tgt.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| b.mul(a)).collect(),
        })
    }

    /// Composite of a chain `first, then, …`.
    pub fn chain(parts: &[&SheafMorphism]) -> Result<SheafMorphism> {
        let mut acc = parts[0].clone();
        for p in &parts[1..] {
            acc = acc.then(p)?;
        }
        Ok(acc)
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<SheafMorphism> {
        Some(SheafMorphism {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            comps: self.comps.iter().map(Matrix::inverse).collect::<Option<_>>()?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && self.comps.iter().all(Matrix::is_identity)
    }

    pub fn add(&self, other: &SheafMorphism) -> SheafMorphism {
        SheafMorphism {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn pullback(&self, f: &GroupoidFunctor) -> SheafMorphism {
        SheafMorphism {
            src: self.src.pullback(f),
            tgt: self.tgt.pullback(f),
            comps: f.obj_map.iter().map(|&x| self.comps[x].clone()).collect(),
        }
    }

    pub fn tensor(&self, other: &SheafMorphism) -> SheafMorphism {
        SheafMorphism {
            src: self.src.tensor(&other.src),
            tgt: self.tgt.tensor(&other.tgt),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.kron(b)).collect(),
        }
    }

    /// `iHom(self, N): iHom(tgt, N) → iHom(src, N)`, precomposition.
    pub fn ihom_pre(&self, n: &Sheaf) -> SheafMorphism {
        let f = n.field;
        SheafMorphism {
            src: self.tgt.ihom(n),
            tgt: self.src.ihom(n),
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(x, u)| Matrix::identity(f, n.dim(x)).kron(&u.transpose()))
                .collect(),
        }
    }

    /// `iHom(M, self): iHom(M, src) → iHom(M, tgt)`, postcomposition.
    pub fn ihom_post(&self, m: &Sheaf) -> SheafMorphism {
        let f = m.field;
        SheafMorphism {
            src: m.ihom(&self.src),
            tgt: m.ihom(&self.tgt),
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(x, v)| v.kron(&Matrix::identity(f, m.dim(x))))
                .collect(),
        }
    }
}

/// Dimension of `Hom(M, N)`: the natural maps, as the kernel of the naturality equations.
pub fn hom_dim(m: &Sheaf, n: &Sheaf) -> usize {
    hom_basis(m, n).len()
}

/// A basis of `Hom(M, N)`.
pub fn hom_basis(m: &Sheaf, n: &Sheaf) -> Vec<SheafMorphism> {
    let g = &m.base;
    let f = m.field;
    let mut out_per_comp: Vec<Vec<Matrix>> = Vec::new();
    for (c, comp) in g.components().iter().enumerate() {
        // equivariant maps at the representative: N(g) X = X M(g)
        let (dm, dn) = (m.rep[c][0].rows(), n.rep[c][0].rows());
        let k = dm * dn;
        let mut rows: Vec<Matrix> = Vec::new();
        for e in comp.group.generators() {
            // vec_row(N X - X M) = (N ⊗ I - I ⊗ Mᵀ) vec_row(X)
            let a = n.rep[c][e].kron(&Matrix::identity(f, dm)).sub(&Matrix::identity(f, dn).kron(&m.rep[c][e].transpose()));
            rows.push(a);
        }
        let sys = if rows.is_empty() { Matrix::zeros(f, 0, k) } else { Matrix::vstack(&rows, f, k) };
        let ns = sys.nullspace();
        out_per_comp.push((0..ns.cols()).map(|j| Matrix::unvec(&ns.select_cols(&[j]), dn, dm)).collect());
    }
    let mut basis = Vec::new();
    for (c, sols) in out_per_comp.iter().enumerate() {
        for x in sols {
            let comps = (0..g.num_objects())
                .map(|y| {
                    if g.component_of(y) == c {
                        n.path[y].mul(x).mul(&m.path_inv[y])
                    } else {
                        Matrix::zeros(f, n.dim(y), m.dim(y))
                    }
                })
                .collect();
            basis.push(SheafMorphism {
                src: m.clone(),
                tgt: n.clone(),
                comps,
            });
        }
    }
    basis
}

/// Unit and counit of `− ⊗ M ⊣ iHom(M, −)` at `N` and `P`.
pub fn tensor_hom_unit(m: &Sheaf, n: &Sheaf) -> SheafMorphism {
    let f = m.field;
    let comps = (0..m.base.num_objects())
        .map(|x| {
            let (dm, dn) = (m.dim(x), n.dim(x));
            let mut u = Matrix::zeros(f, dn * dm * dm, dn);
            for i in 0..dn {
                for k in 0..dm {
                    u.set((i * dm + k) * dm + k, i, f.one());
                }
            }
            u
        })
        .collect();
    SheafMorphism {
        src: n.clone(),
        tgt: m.ihom(&n.tensor(m)),
        comps,
    }
}

pub fn tensor_hom_counit(m: &Sheaf, p: &Sheaf) -> SheafMorphism {
    let f = m.field;
    let comps = (0..m.base.num_objects())
        .map(|x| {
            let (dm, dp) = (m.dim(x), p.dim(x));
            let mut e = Matrix::zeros(f, dp, dp * dm * dm);
            for q in 0..dp {
                for k in 0..dm {
                    e.set(q, (q * dm + k) * dm + k, f.one());
                }
            }
            e
        })
        .collect();
    SheafMorphism {
        src: m.ihom(p).tensor(m),
        tgt: p.clone(),
        comps,
    }
}

/// Checks both triangle identities of `− ⊗ M ⊣ iHom(M, −)` at `N`.
pub fn tensor_hom_triangles(m: &Sheaf, n: &Sheaf) -> Result<()> {
    // (ε ⊗ M) ∘ (η ⊗ M) = id on N ⊗ M
    let eta = tensor_hom_unit(m, n);
    let t1 = eta
        .tensor(&SheafMorphism::identity(m))
        .then(&tensor_hom_counit(m, &n.tensor(m)))?;
    if !t1.is_identity() {
        return Err(Error::theorem("tensor-hom", "first triangle identity fails"));
    }
    // iHom(M, ε) ∘ η_{iHom(M, N)} = id
    let h = m.ihom(n);
    let t2 = tensor_hom_unit(m, &h).then(&tensor_hom_counit(m, n).ihom_post(m))?;
    if !t2.is_identity() {
        return Err(Error::theorem("tensor-hom", "second triangle identity fails"));
    }
    Ok(())
}

/// The symmetry `M ⊗ N → N ⊗ M`.
pub fn braiding(m: &Sheaf, n: &Sheaf) -> SheafMorphism {
    let f = m.field;
    let comps = (0..m.base.num_objects())
        .map(|x| {
            let (a, b) = (m.dim(x), n.dim(x));
            let perm: Vec<usize> = (0..a * b).map(|idx| (idx % b) * a + idx / b).collect();
            Matrix::from_columns_map(f, a * b, &perm)
        })
        .collect();
    SheafMorphism {
        src: m.tensor(n),
        tgt: n.tensor(m),
        comps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::FiniteGroupoid;
    use std::sync::Arc;

    fn sign_c2(f: Field) -> (GroupoidRef, Sheaf) {
        let b = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)));
        let s = Sheaf::from_representation(&b, f, vec![Matrix::from_ints(f, 1, 1, &[1]), Matrix::from_ints(f, 1, 1, &[-1])]).unwrap();
        (b, s)
    }

    #[test]
    fn sign_squared_is_trivial() {
        let (b, s) = sign_c2(Field::Rational);
        let t = s.tensor(&s);
        assert_eq!(t, Sheaf::unit(&b, Field::Rational));
    }

    #[test]
    fn bad_representation_rejected() {
        let f = Field::Rational;
        let b = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)));
        assert!(Sheaf::from_representation(&b, f, vec![Matrix::from_ints(f, 1, 1, &[1]), Matrix::from_ints(f, 1, 1, &[2])]).is_err());
    }

    #[test]
    fn hom_dims_regular_rep() {
        let f = Field::Rational;
        let b = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::cyclic(2)));
        let reg = Sheaf::from_representation(&b, f, vec![Matrix::identity(f, 2), Matrix::from_ints(f, 2, 2, &[0, 1, 1, 0])]).unwrap();
        let (_, s) = sign_c2(f);
        assert_eq!(hom_dim(&reg, &reg), 2);
        assert_eq!(hom_dim(&s, &reg), 1);
        assert_eq!(hom_dim(&s, &Sheaf::unit(&b, f)), 0);
        for m in hom_basis(&reg, &reg) {
            assert!(m.is_natural());
        }
    }

    #[test]
    fn ihom_triangles_and_double_dual() {
        let f = Field::Prime(5);
        let b = Arc::new(FiniteGroupoid::delooping(&FiniteGroup::symmetric(3)).disjoint_union(&FiniteGroupoid::discrete_n(2)));
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(7);
        let m = random_sheaf(&b, f, &mut rng, 2);
        let n = random_sheaf(&b, f, &mut rng, 2);
        tensor_hom_triangles(&m, &n).unwrap();
        let dd = m.dual().dual();
        assert_eq!(dd.dims(), m.dims());
        assert!(m.ihom(&n).validate().is_ok());
    }
}
