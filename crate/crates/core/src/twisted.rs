//! Twisted 2-cocycles on transitive G-sets: solutions of `δμ = ω`.

use crate::cochain::{delta, Cochain};
use crate::cohomology::{cohomology_group, solve_coboundary, CohomologyGroup};
use crate::group::FiniteGroup;
use crate::gset::{GSet, Transversal};
use crate::{Error, Result};

/// Transport of `ψ` on the stabilizer with `δψ = ω|_H` to `μ` on `X` with
/// `δμ = ω`:
/// `μ(σ,τ;x) = ψ(b,a) − ω(σ,τ,r(x)) + ω(σ,r(τx),a) − ω(r(στx),b,a)`,
/// where `a = h(τ,x)` and `b = h(σ,τx)`.
pub fn twisted_transport(
    g: &FiniteGroup,
    omega: &Cochain,
    set: &GSet,
    t: &Transversal,
    psi: &Cochain,
) -> Cochain {
    let stab = t.stabilizer.elements();
    Cochain::from_fn(g.order(), Some(set.size()), 2, |s, x| {
        let (sigma, tau) = (s[0], s[1]);
        let tx = set.act(tau, x);
        let a = t.h(g, set, tau, x);
        let b = t.h(g, set, sigma, tx);
        let (ga, gb) = (stab[a], stab[b]);
        let stx = set.act(sigma, tx);
        psi.at(&[b, a], 0) - omega.at(&[sigma, tau, t.rep[x]], 0)
            + omega.at(&[sigma, t.rep[tx], ga], 0)
            - omega.at(&[t.rep[stx], gb, ga], 0)
    })
}

/// `H²_G(X)_ω` for transitive `X`: empty, or a torsor over `H²(Stab(x0))`.
#[derive(Clone, Debug)]
pub struct TwistedClassSet {
    pub transversal: Transversal,
    /// `H²` of the stabilizer.
    pub h2: CohomologyGroup,
    /// `ψ0` on the stabilizer with `δψ0 = ω|_H`, when one exists.
    pub particular: Option<Cochain>,
    /// One `μ` on `X` per class, indexed like `h2`.
    pub classes: Vec<Cochain>,
}

impl TwistedClassSet {
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class of `μ` (which must satisfy `δμ = ω`).
    pub fn class_index(&self, mu: &Cochain) -> Result<usize> {
        let psi0 = self
            .particular
            .as_ref()
            .ok_or_else(|| Error::invalid("class set is empty"))?;
        let r = mu
            .restrict(&self.transversal.stabilizer)
            .at_point(self.transversal.base);
        self.h2.class_index(&(&r - psi0))
    }
}

pub fn twisted_class_set(g: &FiniteGroup, omega: &Cochain, set: &GSet) -> Result<TwistedClassSet> {
    if omega.n() != 3 || omega.m() != 0 {
        return Err(Error::invalid("ω must be a 3-cochain on G"));
    }
    if !delta(g, None, omega)?.is_zero() {
        return Err(Error::invalid("ω is not a cocycle"));
    }
    twisted_class_set_unchecked(g, omega, set)
}

/// As `twisted_class_set`, for an `ω` already known to be a 3-cocycle.
pub(crate) fn twisted_class_set_unchecked(
    g: &FiniteGroup,
    omega: &Cochain,
    set: &GSet,
) -> Result<TwistedClassSet> {
    let t = Transversal::new(g, set, 0)?;
    let h = &t.stab_group;
    let h2 = cohomology_group(h, 2)?;
    let w = omega.restrict(&t.stabilizer);
    let particular = solve_coboundary(h, None, &w)?;
    let classes = match &particular {
        None => Vec::new(),
        Some(p0) => h2
            .elements()
            .iter()
            .map(|z| twisted_transport(g, omega, set, &t, &(p0 + z)))
            .collect(),
    };
    Ok(TwistedClassSet {
        transversal: t,
        h2,
        particular,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cyclic_3cocycle;
    use crate::group::Subgroup;

    #[test]
    fn transport_satisfies_twist_equation() {
        let z4 = FiniteGroup::cyclic(4);
        let h = Subgroup::generated(&z4, &[2]);
        let x = GSet::cosets(&z4, &h);
        // The generator restricts to the generator of H³(Z/2); twice it restricts trivially.
        let obstructed = twisted_class_set(&z4, &cyclic_3cocycle(4, 1), &x).unwrap();
        assert!(obstructed.is_empty());
        let w = cyclic_3cocycle(4, 2);
        let ts = twisted_class_set(&z4, &w, &x).unwrap();
        assert_eq!(ts.classes.len(), 1);
        for mu in &ts.classes {
            assert_eq!(delta(&z4, Some(&x), mu).unwrap(), w.constant_on(x.size()));
        }
    }

    #[test]
    fn examples() {
        let z2 = FiniteGroup::cyclic(2);
        let w = cyclic_3cocycle(2, 1);
        assert!(twisted_class_set(&z2, &w, &GSet::point(&z2))
            .unwrap()
            .is_empty());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let reg = twisted_class_set(&s3, &Cochain::zero(6, 3), &GSet::regular(&s3)).unwrap();
        assert_eq!(reg.classes.len(), 1);
        let v = FiniteGroup::direct_product(&z2, &z2);
        let pt = twisted_class_set(&v, &Cochain::zero(4, 3), &GSet::point(&v)).unwrap();
        assert_eq!(pt.classes.len(), 2);
        assert_eq!(pt.class_index(&pt.classes[1]).unwrap(), 1);
    }

    #[test]
    fn non_abelian_stabilizer_with_twist() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        // Pull a Z/2-valued cocycle back along the sign map.
        let sign: Vec<usize> = (0..6)
            .map(|g| {
                let p = s3.element_order(g);
                usize::from(p == 2)
            })
            .collect();
        let w = cyclic_3cocycle(2, 1).pullback(&sign);
        assert!(delta(&s3, None, &w).unwrap().is_zero());
        let x = GSet::cosets(&s3, &Subgroup::generated(&s3, &[3]));
        let ts = twisted_class_set(&s3, &w, &x).unwrap();
        assert_eq!(ts.classes.len(), 1);
        assert_eq!(
            delta(&s3, Some(&x), &ts.classes[0]).unwrap(),
            w.constant_on(2)
        );
    }
}
