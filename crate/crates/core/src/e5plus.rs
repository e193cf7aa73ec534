//! The kernel form of the Mal'tsev axiom over pointed algebras.
//!
//! An instance is a map `f: A1 → B` over a common base `A0`
//! (`b ∘ f = a`) between two short exact rows; `k` is the restriction of
//! `f` to the kernels.

use crate::error::{Error, Result};
use crate::extension::{square_comparison, Base, ExtensionClass, SquareArrow};
use crate::limit::compute_kernel;
use crate::morphism::{compose, FinMorphism};

#[derive(Debug, Clone)]
pub struct E5PlusInstance {
    pub a: FinMorphism,
    pub b: FinMorphism,
    pub f: FinMorphism,
    /// `K[a] → K[b]`
    pub k: FinMorphism,
    pub ker_a: FinMorphism,
    pub ker_b: FinMorphism,
}

impl E5PlusInstance {
    /// Validates the shape and computes the kernels and `k`.
    pub fn new(a: FinMorphism, b: FinMorphism, f: FinMorphism) -> Result<Self> {
        if a.cod() != b.cod() || f.dom() != a.dom() || f.cod() != b.dom() {
            return Err(Error::Precondition(
                "expected a: A1 → A0, b: B → A0 and f: A1 → B".into(),
            ));
        }
        if compose(&b, &f)? != a {
            return Err(Error::Precondition("b ∘ f differs from a".into()));
        }
        if !a.is_surjective() || !b.is_surjective() {
            return Err(Error::Precondition("rows are not short exact".into()));
        }
        let (_, ker_a) = compute_kernel(&a)?;
        let (kb, ker_b) = compute_kernel(&b)?;
        let fk = compose(&f, &ker_a)?;
        let table = fk
            .table()
            .iter()
            .map(|&y| ker_b.table().iter().position(|&z| z == y))
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::Precondition("f does not restrict to the kernels".into()))?;
        let k = FinMorphism::new(ker_a.dom().clone(), kb, table)?;
        Ok(E5PlusInstance {
            a,
            b,
            f,
            k,
            ker_a,
            ker_b,
        })
    }

    /// Checks a user-supplied `k` against the computed restriction.
    pub fn with_k(a: FinMorphism, b: FinMorphism, f: FinMorphism, k: &FinMorphism) -> Result<Self> {
        let inst = Self::new(a, b, f)?;
        if inst.k.table() != k.table() || inst.k.dom().size() != k.dom().size() {
            return Err(Error::Precondition("k is not the restriction of f to the kernels".into()));
        }
        Ok(inst)
    }
}

/// Whether the instance satisfies "k ∈ E implies f ∈ E"; `a` and `b` must
/// be extensions.
pub fn check_e5_plus(class: ExtensionClass, inst: &E5PlusInstance) -> Result<bool> {
    if !class.member(&inst.a) || !class.member(&inst.b) {
        return Err(Error::Precondition("a and b must be extensions".into()));
    }
    Ok(!class.member(&inst.k) || class.member(&inst.f))
}

/// The section of `f` assembled from a set section `u` of `k` and a set
/// section `s` of `a`: `β ↦ u(β·(tb(β))⁻¹)·sb(β)` with `t = f ∘ s`.
pub fn set_section_from_kernel(inst: &E5PlusInstance, u: &[usize], s: &[usize]) -> Result<Vec<usize>> {
    let big_a = inst.a.dom();
    let big_b = inst.b.dom();
    let err = || Error::Unsupported("section formula needs group objects".into());
    let kb_pos = |y: usize| inst.ker_b.table().iter().position(|&z| z == y);
    let mut out = Vec::with_capacity(big_b.size());
    for beta in 0..big_b.size() {
        let sb = s[inst.b.apply(beta)];
        let tb = inst.f.apply(sb);
        let kappa = big_b.mul(beta, big_b.inv(tb).ok_or_else(err)?).ok_or_else(err)?;
        let kappa_ix = kb_pos(kappa)
            .ok_or_else(|| Error::Precondition("s is not a section of a".into()))?;
        let lifted = inst.ker_a.apply(u[kappa_ix]);
        out.push(big_a.mul(lifted, sb).ok_or_else(err)?);
    }
    Ok(out)
}

/// The instance attached to a square `(a, b, f1, f0)`: `a` against the
/// pullback leg `A0 ×_{B0} B1 → A0`, with `f` the comparison `⟨a, f1⟩`.
/// Here `f ∈ E` says the square is a double extension.
pub fn instance_from_square(sq: &SquareArrow) -> Result<E5PlusInstance> {
    let (pb, comparison) = square_comparison(&Base::new(ExtensionClass::All), sq)?
        .ok_or_else(|| Error::Precondition("pullback does not exist".into()))?;
    E5PlusInstance::new(sq.a.clone(), pb.leg("p0").clone(), comparison)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn map(d: &crate::Obj, c: &crate::Obj, t: &[usize]) -> FinMorphism {
        FinMorphism::new(d.clone(), c.clone(), t.to_vec()).unwrap()
    }

    #[test]
    fn identities_hold() {
        let z = catalog::cyclic(3);
        let id = FinMorphism::identity(&z);
        let inst = E5PlusInstance::new(id.clone(), id.clone(), id).unwrap();
        assert_eq!(inst.k.dom().size(), 1);
        for c in ExtensionClass::ALL_CLASSES {
            assert!(check_e5_plus(c, &inst).unwrap());
        }
    }

    #[test]
    fn section_formula_on_quotient() {
        // f: Z4 x Z2 → Z4 the projection, over Z2 via the quotient
        let z4 = catalog::cyclic(4);
        let z2 = catalog::cyclic(2);
        let p = catalog::product(&z4, &z2);
        let f = map(&p, &z4, &(0..8).map(|i| i / 2).collect::<Vec<_>>());
        let b = map(&z4, &z2, &[0, 1, 0, 1]);
        let a = compose(&b, &f).unwrap();
        let inst = E5PlusInstance::new(a.clone(), b, f.clone()).unwrap();
        assert!(check_e5_plus(ExtensionClass::SetSplit, &inst).unwrap());
        let u = inst.k.set_section().unwrap();
        let s = a.set_section().unwrap();
        let sigma = set_section_from_kernel(&inst, &u, &s).unwrap();
        for (beta, &x) in sigma.iter().enumerate() {
            assert_eq!(f.apply(x), beta);
        }
    }

    #[test]
    fn sets_are_unsupported() {
        let two = crate::FinObject::set_of_size(2);
        let one = crate::FinObject::set_of_size(1);
        let a = map(&two, &one, &[0, 0]);
        let id = FinMorphism::identity(&two);
        assert!(matches!(
            E5PlusInstance::new(a.clone(), a, id),
            Err(Error::Unsupported(_))
        ));
    }
}
