//! Adjunctions in 2-categories: triangle checks, upgrading weak data, mates and
//! uniqueness of adjoints.

mod probe;
mod table;

pub use probe::{ProbeCell, ProbeTwoCat, ProbeWord, Step};
pub use table::{
    all_adjunctions, direct_adjoint, mate_battery, pointwise_audit, sample_two_category, AuditReport, CellSpec, MateBattery,
    TableTwoCat, TwoCatSpec, ZAudit,
};

use std::fmt::Debug;

use crate::error::{Error, Result};

/// A strict 2-category.
pub trait TwoCategory {
    type Obj: Clone + Debug + PartialEq;
    type One: Clone + Debug;
    type Two: Clone + Debug;

    fn source(&self, f: &Self::One) -> Self::Obj;
    fn target(&self, f: &Self::One) -> Self::Obj;
    fn id1(&self, x: &Self::Obj) -> Self::One;
    /// `g ∘ f`.
    fn comp1(&self, g: &Self::One, f: &Self::One) -> Result<Self::One>;
    fn dom(&self, a: &Self::Two) -> Self::One;
    fn cod(&self, a: &Self::Two) -> Self::One;
    fn id2(&self, f: &Self::One) -> Result<Self::Two>;
    /// `β · α`.
    fn vcomp(&self, b: &Self::Two, a: &Self::Two) -> Result<Self::Two>;
    /// `β * α: g∘f ⇒ g′∘f′` for `α: f ⇒ f′`, `β: g ⇒ g′`.
    fn hcomp(&self, b: &Self::Two, a: &Self::Two) -> Result<Self::Two>;
    fn eq1(&self, f: &Self::One, g: &Self::One) -> bool;
    fn eq2(&self, a: &Self::Two, b: &Self::Two) -> bool;
    fn inverse2(&self, a: &Self::Two) -> Option<Self::Two>;

    /// `f α`.
    fn whisker_left(&self, f: &Self::One, a: &Self::Two) -> Result<Self::Two> {
        self.hcomp(&self.id2(f)?, a)
    }

    /// `α f`.
    fn whisker_right(&self, a: &Self::Two, f: &Self::One) -> Result<Self::Two> {
        self.hcomp(a, &self.id2(f)?)
    }

    fn is_identity2(&self, a: &Self::Two) -> Result<bool> {
        let d = self.dom(a);
        Ok(self.eq1(&d, &self.cod(a)) && self.eq2(a, &self.id2(&d)?))
    }
}

/// `f ⊣ g` with `η: id ⇒ g∘f` and `ε: f∘g ⇒ id`.
#[derive(Debug)]
pub struct Adjunction<C: TwoCategory> {
    pub left: C::One,
    pub right: C::One,
    pub unit: C::Two,
    pub counit: C::Two,
}

impl<C: TwoCategory> Clone for Adjunction<C> {
    fn clone(&self) -> Self {
        Adjunction {
            left: self.left.clone(),
            right: self.right.clone(),
            unit: self.unit.clone(),
            counit: self.counit.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleVerdict {
    pub left: bool,
    pub right: bool,
}

impl TriangleVerdict {
    pub fn holds(&self) -> bool {
        self.left && self.right
    }
}

/// `(εf)·(fη)` and `(gε)·(ηg)`.
pub fn triangle_composites<C: TwoCategory>(c: &C, adj: &Adjunction<C>) -> Result<(C::Two, C::Two)> {
    let (f, g) = (&adj.left, &adj.right);
    let t1 = c.vcomp(&c.whisker_right(&adj.counit, f)?, &c.whisker_left(f, &adj.unit)?)?;
    let t2 = c.vcomp(&c.whisker_left(g, &adj.counit)?, &c.whisker_right(&adj.unit, g)?)?;
    Ok((t1, t2))
}

fn check_shape<C: TwoCategory>(c: &C, adj: &Adjunction<C>) -> Result<()> {
    let (f, g) = (&adj.left, &adj.right);
    let x = c.source(f);
    let y = c.target(f);
    if c.source(g) != y || c.target(g) != x {
        return Err(Error::Structural("adjoint 1-cells are not opposite".into()));
    }
    let gf = c.comp1(g, f)?;
    let fg = c.comp1(f, g)?;
    let ok = c.eq1(&c.dom(&adj.unit), &c.id1(&x))
        && c.eq1(&c.cod(&adj.unit), &gf)
        && c.eq1(&c.dom(&adj.counit), &fg)
        && c.eq1(&c.cod(&adj.counit), &c.id1(&y));
    if ok {
        Ok(())
    } else {
        Err(Error::Structural("unit or counit has the wrong boundary".into()))
    }
}

pub fn verify<C: TwoCategory>(c: &C, adj: &Adjunction<C>) -> Result<TriangleVerdict> {
    check_shape(c, adj)?;
    let (t1, t2) = triangle_composites(c, adj)?;
    Ok(TriangleVerdict {
        left: c.is_identity2(&t1)?,
        right: c.is_identity2(&t2)?,
    })
}

/// Repairs data whose triangle composites are invertible: with `θ = (εf)·(fη)`,
/// the unit becomes `(gθ⁻¹)·η`.
pub fn upgrade_weak<C: TwoCategory>(c: &C, adj: &Adjunction<C>) -> Result<Adjunction<C>> {
    check_shape(c, adj)?;
    let (t1, t2) = triangle_composites(c, adj)?;
    let theta_inv = c
        .inverse2(&t1)
        .ok_or_else(|| Error::Precondition("first triangle composite is not invertible".into()))?;
    if c.inverse2(&t2).is_none() {
        return Err(Error::Precondition("second triangle composite is not invertible".into()));
    }
    let unit = c.vcomp(&c.whisker_left(&adj.right, &theta_inv)?, &adj.unit)?;
    let fixed = Adjunction {
        left: adj.left.clone(),
        right: adj.right.clone(),
        unit,
        counit: adj.counit.clone(),
    };
    if !verify(c, &fixed)?.holds() {
        return Err(Error::theorem("weak-adjunction-upgrade", "corrected data fails a triangle"));
    }
    Ok(fixed)
}

/// The square of a mate correspondence: `a: X → X′`, `b: Y → Y′`, `f ⊣ u`, `f′ ⊣ u′`.
pub struct MateSquare<'a, C: TwoCategory> {
    pub adj: &'a Adjunction<C>,
    pub adj2: &'a Adjunction<C>,
    pub a: C::One,
    pub b: C::One,
}

/// `ρ(φ) = (u′bε)·(u′φu)·(η′au): a∘u ⇒ u′∘b` for `φ: f′∘a ⇒ b∘f`.
pub fn mate_rho<C: TwoCategory>(c: &C, sq: &MateSquare<C>, phi: &C::Two) -> Result<C::Two> {
    let (u, u2) = (&sq.adj.right, &sq.adj2.right);
    let au = c.comp1(&sq.a, u)?;
    let ub = c.comp1(u2, &sq.b)?;
    let s1 = c.whisker_right(&sq.adj2.unit, &au)?;
    let s2 = c.whisker_left(u2, &c.whisker_right(phi, u)?)?;
    let s3 = c.whisker_left(&ub, &sq.adj.counit)?;
    c.vcomp(&s3, &c.vcomp(&s2, &s1)?)
}

/// `λ(ψ) = (ε′bf)·(f′ψf)·(f′aη): f′∘a ⇒ b∘f` for `ψ: a∘u ⇒ u′∘b`.
pub fn mate_lambda<C: TwoCategory>(c: &C, sq: &MateSquare<C>, psi: &C::Two) -> Result<C::Two> {
    let (f, f2) = (&sq.adj.left, &sq.adj2.left);
    let fa = c.comp1(f2, &sq.a)?;
    let bf = c.comp1(&sq.b, f)?;
    let s1 = c.whisker_left(&fa, &sq.adj.unit)?;
    let s2 = c.whisker_left(f2, &c.whisker_right(psi, f)?)?;
    let s3 = c.whisker_right(&sq.adj2.counit, &bf)?;
    c.vcomp(&s3, &c.vcomp(&s2, &s1)?)
}

/// The canonical `g ⇒ g′` between two right adjoints of one 1-cell, with a check
/// that it is invertible with the expected inverse.
pub fn adjoint_uniqueness<C: TwoCategory>(c: &C, adj: &Adjunction<C>, adj2: &Adjunction<C>) -> Result<(C::Two, bool)> {
    if !c.eq1(&adj.left, &adj2.left) {
        return Err(Error::Precondition("adjunctions have different left adjoints".into()));
    }
    let (g, g2) = (&adj.right, &adj2.right);
    let there = c.vcomp(&c.whisker_left(g2, &adj.counit)?, &c.whisker_right(&adj2.unit, g)?)?;
    let back = c.vcomp(&c.whisker_left(g, &adj2.counit)?, &c.whisker_right(&adj.unit, g2)?)?;
    let ok = c.is_identity2(&c.vcomp(&back, &there)?)? && c.is_identity2(&c.vcomp(&there, &back)?)?;
    Ok((there, ok))
}

#[cfg(test)]
mod tests;
