//! Module categories `M(X, μ)` over `Vec_G^ω` as twisted G-sets, their
//! 1-cells, automorphism groups and pointed duals.

use crate::cochain::{delta, Cochain};
use crate::cohomology::{cohomology_group, cohomology_group_on, solve_coboundary};
use crate::group::{find_isomorphism, subgroups_up_to_conjugacy, FiniteGroup, GroupHom, Subgroup};
use crate::gset::{GSet, Transversal};
use crate::qz::QZ;
use crate::twisted::{twisted_class_set, TwistedClassSet};
use crate::{Error, Result};
use std::collections::HashMap;

/// A `(G, ω)`-set with twist: `δμ = ω` on `X`.
#[derive(Clone, Debug)]
pub struct TwistedGSet {
    pub group: FiniteGroup,
    pub omega: Cochain,
    pub set: GSet,
    pub mu: Cochain,
}

impl TwistedGSet {
    pub fn new(group: FiniteGroup, omega: Cochain, set: GSet, mu: Cochain) -> Result<Self> {
        if mu.n() != 2 || mu.m() != 1 || mu.set_size() != set.size() {
            return Err(Error::invalid("twist must be a 2-cochain on the set"));
        }
        if !mu.is_normalized() {
            return Err(Error::invalid("twist is not normalized"));
        }
        if delta(&group, Some(&set), &mu)? != omega.constant_on(set.size()) {
            return Err(Error::invalid("twist does not satisfy δμ = ω"));
        }
        Ok(TwistedGSet {
            group,
            omega,
            set,
            mu,
        })
    }

    /// `M(G/H, μ)` for the `class`-th element of the twisted class set.
    pub fn from_subgroup(
        g: &FiniteGroup,
        omega: &Cochain,
        h: &Subgroup,
        class: usize,
    ) -> Result<Self> {
        let set = GSet::cosets(g, h);
        let ts = twisted_class_set(g, omega, &set)?;
        let mu = ts.classes.get(class).cloned().ok_or_else(|| {
            Error::invalid("no twist with that index (ω may not restrict trivially)")
        })?;
        Ok(TwistedGSet {
            group: g.clone(),
            omega: omega.clone(),
            set,
            mu,
        })
    }

    /// `G` acting on itself.
    pub fn regular(g: &FiniteGroup, omega: &Cochain) -> Result<Self> {
        TwistedGSet::from_subgroup(g, omega, &Subgroup::trivial(), 0)
    }

    pub fn stabilizer(&self) -> Subgroup {
        self.set.stabilizer(0)
    }

    /// `μ` at point 0, restricted to its stabilizer.
    pub fn psi(&self) -> Cochain {
        self.mu.restrict(&self.stabilizer()).at_point(0)
    }
}

/// A 1-cell `(L, β)` with `δβ = L*μ_Y − μ_X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleFunctorCell {
    pub map: Vec<usize>,
    pub beta: Cochain,
}

impl ModuleFunctorCell {
    /// `self ∘ first = (L_self L_first, L_first* β_self + β_first)`.
    pub fn after(&self, first: &ModuleFunctorCell) -> ModuleFunctorCell {
        let map = first.map.iter().map(|&x| self.map[x]).collect();
        ModuleFunctorCell {
            map,
            beta: &self.beta.pull_set(&first.map) + &first.beta,
        }
    }

    /// The representative of the 2-cell class with `β(r(y); x0) = 0`.
    pub fn canonical(&self, x: &GSet, t: &Transversal) -> ModuleFunctorCell {
        let theta: Vec<QZ> = t.rep.iter().map(|&r| self.beta.at(&[r], t.base)).collect();
        let beta = Cochain::from_fn(
            self.beta.group_order(),
            Some(self.beta.set_size()),
            1,
            |a, y| self.beta.at(a, y) + theta[y] - theta[x.act(a[0], y)],
        );
        ModuleFunctorCell {
            map: self.map.clone(),
            beta,
        }
    }

    fn key(&self) -> (Vec<usize>, Vec<(u64, u64)>) {
        (
            self.map.clone(),
            self.beta
                .values()
                .iter()
                .map(|v| (v.numer(), v.denom()))
                .collect(),
        )
    }
}

/// `Aut_{Vec_G^ω}(M(X, μ))` with the pieces of its exact sequence.
#[derive(Clone, Debug)]
pub struct ModuleAutGroup {
    pub group: FiniteGroup,
    /// Canonical 1-cell of each element; element 0 is the identity.
    pub cells: Vec<ModuleFunctorCell>,
    /// `|H¹_G(X)|`.
    pub h1_order: usize,
    /// `|Aut_G(X)|`.
    pub gset_aut_order: usize,
    /// Maps of `Aut_G(X, [μ])`.
    pub stabilizing_maps: Vec<Vec<usize>>,
}

impl ModuleAutGroup {
    pub fn order(&self) -> usize {
        self.cells.len()
    }
}

pub fn aut_group_of_module_cat(m: &TwistedGSet) -> Result<ModuleAutGroup> {
    let g = &m.group;
    let x = &m.set;
    let t = Transversal::new(g, x, 0)?;
    let h1 = cohomology_group_on(g, 1, x)?;
    let maps = x.isomorphisms_to(x);
    let gset_aut_order = maps.len();
    let mut stabilizing_maps = Vec::new();
    let mut cells = Vec::new();
    for l in maps {
        let c = &m.mu.pull_set(&l) - &m.mu;
        let Some(b) = solve_coboundary(g, Some(x), &c)? else {
            continue;
        };
        for z in h1.elements() {
            let cell = ModuleFunctorCell {
                map: l.clone(),
                beta: &b + &z,
            };
            cells.push(cell.canonical(x, &t));
        }
        stabilizing_maps.push(l);
    }
    cells.sort_by_key(|c| c.key());
    let index: HashMap<ModuleFunctorCell, usize> = cells
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let n = cells.len();
    let mut table = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let c = cells[i].after(&cells[j]).canonical(x, &t);
            table[i * n + j] = *index
                .get(&c)
                .ok_or_else(|| Error::invalid("composite 1-cell not found"))?;
        }
    }
    Ok(ModuleAutGroup {
        group: FiniteGroup::from_flat(n, table)?,
        cells,
        h1_order: h1.order() as usize,
        gset_aut_order,
        stabilizing_maps,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PointedWitness {
    pub pointed: bool,
    pub stabilizer_normal: bool,
    pub stabilizer_abelian: bool,
    pub class_invariant: bool,
}

pub fn is_pointed(m: &TwistedGSet) -> Result<PointedWitness> {
    let g = &m.group;
    if !m.set.is_transitive() {
        return Err(Error::invalid("G-set is not transitive"));
    }
    let h = m.stabilizer();
    let stabilizer_normal = h.is_normal(g);
    let stabilizer_abelian = h.is_abelian(g);
    let mut class_invariant = true;
    for l in m.set.isomorphisms_to(&m.set) {
        let c = &m.mu.pull_set(&l) - &m.mu;
        if solve_coboundary(g, Some(&m.set), &c)?.is_none() {
            class_invariant = false;
            break;
        }
    }
    Ok(PointedWitness {
        pointed: stabilizer_normal && stabilizer_abelian && class_invariant,
        stabilizer_normal,
        stabilizer_abelian,
        class_invariant,
    })
}

/// The dual `Vec_H^{ω′}` of a pointed module category.
#[derive(Clone, Debug)]
pub struct PointedDualData {
    pub group: FiniteGroup,
    pub omega_prime: Cochain,
    /// 1-cell representing each element of `group`.
    pub labels: Vec<ModuleFunctorCell>,
    pub base: usize,
}

/// Dual data with the 2-cells pinned by `θ(base) = 0`.
pub fn dual_pointed_data(m: &TwistedGSet, base: usize) -> Result<PointedDualData> {
    let w = is_pointed(m)?;
    if !w.pointed {
        return Err(Error::NotPointed(format!(
            "normal={}, abelian={}, invariant={}",
            w.stabilizer_normal, w.stabilizer_abelian, w.class_invariant
        )));
    }
    if base >= m.set.size() {
        return Err(Error::invalid("basepoint out of range"));
    }
    let aut = aut_group_of_module_cat(m)?;
    let (g, x, h) = (&m.group, &m.set, &aut.group);
    let t = Transversal::new(g, x, base)?;
    let n = h.order();
    let mut theta: Vec<Vec<QZ>> = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let comp = aut.cells[a].after(&aut.cells[b]);
            let c = &aut.cells[h.mul(a, b)].beta - &comp.beta;
            let th: Vec<QZ> = t.rep.iter().map(|&r| -c.at(&[r], base)).collect();
            let d = Cochain::from_fn(g.order(), Some(x.size()), 1, |s, y| {
                th[y] - th[x.act(s[0], y)]
            });
            if d != c {
                return Err(Error::invalid("2-cell equation has no solution"));
            }
            theta.push(th);
        }
    }
    let th = |a: usize, b: usize| &theta[a * n + b];
    let mut omega_prime = Cochain::zero(n, 3);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lk = &aut.cells[c].map;
                let (ab, bc) = (h.mul(a, b), h.mul(b, c));
                let val = |y: usize| th(a, b)[lk[y]] + th(ab, c)[y] - th(b, c)[y] - th(a, bc)[y];
                let v0 = val(0);
                if (1..x.size()).any(|y| val(y) != v0) {
                    return Err(Error::invalid("coherence failure is not constant"));
                }
                omega_prime.set(&[a, b, c], 0, v0);
            }
        }
    }
    if !delta(h, None, &omega_prime)?.is_zero() {
        return Err(Error::invalid("dual 3-cochain is not a cocycle"));
    }
    Ok(PointedDualData {
        group: aut.group,
        omega_prime,
        labels: aut.cells,
        base,
    })
}

/// True iff some equivariant bijection lifts to an invertible 1-cell.
pub fn module_cat_equivalent(m1: &TwistedGSet, m2: &TwistedGSet) -> Result<bool> {
    if !m1.group.same_table(&m2.group) || m1.omega != m2.omega {
        return Err(Error::invalid("module categories over different (G, ω)"));
    }
    for l in m1.set.isomorphisms_to(&m2.set) {
        let c = &m2.mu.pull_set(&l) - &m1.mu;
        if solve_coboundary(&m1.group, Some(&m1.set), &c)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// An indecomposable module category together with how it was found.
#[derive(Clone, Debug)]
pub struct ModuleCategoryClass {
    pub module: TwistedGSet,
    pub stabilizer: Subgroup,
    /// Index in the twisted class set of `G/H`.
    pub class_index: usize,
    /// Size of the orbit of `Aut_G(X)` on twisted classes.
    pub orbit_size: usize,
}

/// One representative per equivalence class of indecomposable module categories.
pub fn enumerate_module_categories(
    g: &FiniteGroup,
    omega: &Cochain,
) -> Result<Vec<ModuleCategoryClass>> {
    let mut out = Vec::new();
    for h in subgroups_up_to_conjugacy(g)? {
        let set = GSet::cosets(g, &h);
        let ts = twisted_class_set(g, omega, &set)?;
        if ts.is_empty() {
            continue;
        }
        for (i, size) in class_orbits(&set, &ts)? {
            out.push(ModuleCategoryClass {
                module: TwistedGSet {
                    group: g.clone(),
                    omega: omega.clone(),
                    set: set.clone(),
                    mu: ts.classes[i].clone(),
                },
                stabilizer: h.clone(),
                class_index: i,
                orbit_size: size,
            });
        }
    }
    Ok(out)
}

/// Orbits of `Aut_G(X)` on a twisted class set, as (smallest index, size).
pub(crate) fn class_orbits(set: &GSet, ts: &TwistedClassSet) -> Result<Vec<(usize, usize)>> {
    let maps = set.isomorphisms_to(set);
    let mut seen = vec![false; ts.classes.len()];
    let mut out = Vec::new();
    for i in 0..ts.classes.len() {
        if seen[i] {
            continue;
        }
        let mut size = 0;
        for l in &maps {
            let j = ts.class_index(&ts.classes[i].pull_set(l))?;
            if !std::mem::replace(&mut seen[j], true) {
                size += 1;
            }
        }
        out.push((i, size));
    }
    Ok(out)
}

/// An isomorphism `φ: a → b` with `[φ*ω_b] = [ω_a]`, if any.
pub fn pointed_equivalence(
    a: &FiniteGroup,
    omega_a: &Cochain,
    b: &FiniteGroup,
    omega_b: &Cochain,
) -> Result<Option<GroupHom>> {
    let Some(phi) = find_isomorphism(a, b) else {
        return Ok(None);
    };
    let auts = crate::group::automorphism_group(b)?;
    let h3 = cohomology_group(a, 3)?;
    let target = h3.class_of(omega_a)?;
    for f in &auts.maps {
        let psi = f.compose(&phi);
        if h3.class_of(&omega_b.pullback(&psi.image))? == target {
            return Ok(Some(psi));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cyclic_3cocycle;

    fn klein() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    #[test]
    fn counts() {
        let v = klein();
        assert_eq!(
            enumerate_module_categories(&v, &Cochain::zero(4, 3))
                .unwrap()
                .len(),
            6
        );
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(
            enumerate_module_categories(&s3, &Cochain::zero(6, 3))
                .unwrap()
                .len(),
            4
        );
        for p in [2, 3, 5] {
            let z = FiniteGroup::cyclic(p);
            let m = enumerate_module_categories(&z, &cyclic_3cocycle(p, 1)).unwrap();
            assert_eq!(m.len(), 1);
            assert_eq!(m[0].stabilizer.order(), 1);
        }
    }

    #[test]
    fn automorphism_groups() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let z = Cochain::zero(6, 3);
        let reg = TwistedGSet::regular(&s3, &z).unwrap();
        let a = aut_group_of_module_cat(&reg).unwrap();
        assert_eq!(a.order(), 6);
        assert!(find_isomorphism(&a.group, &s3).is_some());
        let a3 = Subgroup::generated(&s3, &[3]);
        assert_eq!(a3.order(), 3);
        let m = TwistedGSet::from_subgroup(&s3, &z, &a3, 0).unwrap();
        let a = aut_group_of_module_cat(&m).unwrap();
        assert_eq!((a.order(), a.h1_order, a.stabilizing_maps.len()), (6, 3, 2));
        let v = klein();
        for k in 0..2 {
            let pt = TwistedGSet::from_subgroup(&v, &Cochain::zero(4, 3), &Subgroup::whole(&v), k)
                .unwrap();
            let a = aut_group_of_module_cat(&pt).unwrap();
            assert!(find_isomorphism(&a.group, &v).is_some());
        }
    }

    #[test]
    fn pointedness() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let z = Cochain::zero(6, 3);
        let t = Subgroup::generated(&s3, &[1]);
        assert_eq!(t.order(), 2);
        let m = TwistedGSet::from_subgroup(&s3, &z, &t, 0).unwrap();
        let w = is_pointed(&m).unwrap();
        assert!(!w.pointed && !w.stabilizer_normal);
        assert!(dual_pointed_data(&m, 0).is_err());
        let a3 = Subgroup::generated(&s3, &[3]);
        let m = TwistedGSet::from_subgroup(&s3, &z, &a3, 0).unwrap();
        assert!(is_pointed(&m).unwrap().pointed);
        let d = dual_pointed_data(&m, 0).unwrap();
        assert!(find_isomorphism(&d.group, &s3).is_some());
        assert!(cohomology_group(&d.group, 3)
            .unwrap()
            .is_coboundary(&d.omega_prime)
            .unwrap());
    }

    #[test]
    fn regular_dual_round_trip() {
        for n in 2..=4 {
            let g = FiniteGroup::cyclic(n);
            let h3 = cohomology_group(&g, 3).unwrap();
            for k in 0..n as u64 {
                let w = cyclic_3cocycle(n, k);
                let m = TwistedGSet::regular(&g, &w).unwrap();
                let d0 = dual_pointed_data(&m, 0).unwrap();
                let d1 = dual_pointed_data(&m, n - 1).unwrap();
                assert_eq!(d0.group, d1.group);
                let diff = &d0.omega_prime - &d1.omega_prime;
                assert!(cohomology_group(&d0.group, 3)
                    .unwrap()
                    .is_coboundary(&diff)
                    .unwrap());
                let phi = find_isomorphism(&d0.group, &g).unwrap();
                let k0 = h3.class_of(&w).unwrap()[0];
                let k1 = h3
                    .class_of(&d0.omega_prime.pullback(&phi.inverse().image))
                    .unwrap()[0];
                let n64 = n as u64;
                assert!(
                    k1 == k0 || k1 == (n64 - k0) % n64,
                    "n={n} k={k}: {k0} vs {k1}"
                );
            }
        }
    }

    #[test]
    fn equivalence() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let z = Cochain::zero(6, 3);
        let t1 = Subgroup::generated(&s3, &[1]);
        let x = 3;
        let t2 = t1.conjugate(&s3, x);
        assert_ne!(t1, t2);
        let m1 = TwistedGSet::from_subgroup(&s3, &z, &t1, 0).unwrap();
        let m2 = TwistedGSet::from_subgroup(&s3, &z, &t2, 0).unwrap();
        assert!(module_cat_equivalent(&m1, &m2).unwrap());
        let reg = TwistedGSet::regular(&s3, &z).unwrap();
        assert!(!module_cat_equivalent(&m1, &reg).unwrap());
        let v = klein();
        let p0 =
            TwistedGSet::from_subgroup(&v, &Cochain::zero(4, 3), &Subgroup::whole(&v), 0).unwrap();
        let p1 =
            TwistedGSet::from_subgroup(&v, &Cochain::zero(4, 3), &Subgroup::whole(&v), 1).unwrap();
        assert!(!module_cat_equivalent(&p0, &p1).unwrap());
    }
}
