//! Random sheaves: conjugated sums of permutation and sign-type representations.

use rand::Rng;

use super::Sheaf;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::groupoid::GroupoidRef;
use crate::matrix::Matrix;

pub fn random_invertible<R: Rng>(field: Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let vals: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-2..=2)).collect();
        let m = Matrix::from_ints(field, n, n, &vals);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Permutation action on the cosets of a random subgroup, or its sign when the index is 2.
fn coset_rep<R: Rng>(g: &FiniteGroup, field: Field, rng: &mut R) -> Vec<Matrix> {
    let gens: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..g.order())).collect();
    let mut h = g.generated(&gens);
    if g.order() / h.len() > 4 {
        h = g.elements().collect();
    }
    let (idx, reps) = g.left_cosets(&h);
    let n = reps.len();
    let signed = n == 2 && rng.gen_bool(0.5);
    g.elements()
        .map(|x| {
            if signed {
                Matrix::from_ints(field, 1, 1, &[if idx[x] == 0 { 1 } else { -1 }])
            } else {
                let perm: Vec<usize> = reps.iter().map(|&r| idx[g.mul(x, r)]).collect();
                Matrix::from_columns_map(field, n, &perm)
            }
        })
        .collect()
}

/// A random sheaf with up to `max_summands` summands per component, conjugated
/// by a random change of basis and carried along random path matrices.
pub fn random_sheaf<R: Rng>(base: &GroupoidRef, field: Field, rng: &mut R, max_summands: usize) -> Sheaf {
    let mut rep: Vec<Vec<Matrix>> = Vec::new();
    for comp in base.components() {
        let g = &comp.group;
        let n = rng.gen_range(0..=max_summands);
        let mut mats: Vec<Matrix> = vec![Matrix::zeros(field, 0, 0); g.order()];
        for _ in 0..n {
            let part = coset_rep(g, field, rng);
            mats = mats
                .iter()
                .zip(&part)
                .map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()], field))
                .collect();
        }
        let d = mats[0].rows();
        let p = random_invertible(field, d, rng);
        let pinv = p.inverse().expect("invertible");
        rep.push(mats.iter().map(|m| pinv.mul(m).mul(&p)).collect());
    }
    let path = (0..base.num_objects())
        .map(|x| {
            let c = base.component(x);
            let d: usize = rep[base.component_of(x)].first().map_or(0, Matrix::rows);
            if c.rep == x {
                Matrix::identity(field, d)
            } else {
                random_invertible(field, d, rng)
            }
        })
        .collect();
    Sheaf::new(base, field, rep, path).expect("random sheaf is valid")
}

/// Draws from `random_sheaf` until the total dimension is at most `max_dim`.
pub fn random_sheaf_bounded<R: Rng>(base: &GroupoidRef, field: Field, rng: &mut R, max_summands: usize, max_dim: usize) -> Sheaf {
    loop {
        let m = random_sheaf(base, field, rng, max_summands);
        if m.total_dim() <= max_dim {
            return m;
        }
    }
}

/// Trivial, sign and two-dimensional standard sheaves on a delooping of S3 given by permutations.
pub fn irreducibles_s3(base: &GroupoidRef, field: Field) -> Result<Vec<Sheaf>> {
    let g = &base.components()[0].group;
    if base.components().len() != 1 || g.order() != 6 || g.degree() != Some(3) {
        return Err(Error::Precondition("expected the delooping of S3 on three letters".into()));
    }
    let perm = |a: usize| {
        let p = g.permutation(a).expect("permutation group");
        let mut m = Matrix::zeros(field, 3, 3);
        for (i, &j) in p.iter().enumerate() {
            m.set(j, i, field.one());
        }
        m
    };
    let b = Matrix::from_ints(field, 3, 2, &[1, 0, -1, 1, 0, -1]);
    let bl = b.left_inverse().expect("full column rank");
    let sign: Vec<Matrix> = g
        .elements()
        .map(|a| {
            let even = g.permutation(a).map(parity_even).unwrap_or(true);
            Matrix::from_ints(field, 1, 1, &[if even { 1 } else { -1 }])
        })
        .collect();
    let std: Vec<Matrix> = g.elements().map(|a| bl.mul(&perm(a)).mul(&b)).collect();
    Ok(vec![
        Sheaf::unit(base, field),
        Sheaf::from_representation(base, field, sign)?,
        Sheaf::from_representation(base, field, std)?,
    ])
}

fn parity_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}
