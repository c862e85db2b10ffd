//! Cohomology with `Q/Z` coefficients on the normalized bar complex.

use crate::bounds::{bounds, check};
use crate::cochain::{delta, Cochain};
use crate::group::FiniteGroup;
use crate::gset::{GSet, Transversal};
use crate::linalg::{prime_factors, row_module, solve, valuation, Ring, SparseRow};
use crate::qz::QZ;
use crate::{Error, Result};
use num_integer::Integer;

/// Normalized coordinates: tuples of non-identity elements, then the set slot.
pub(crate) struct Coords {
    g: usize,
    xs: usize,
    k: usize,
}

impl Coords {
    pub(crate) fn new(g: usize, xs: usize, k: usize) -> Self {
        Coords { g, xs, k }
    }

    pub(crate) fn len(&self) -> usize {
        (self.g - 1).pow(self.k as u32) * self.xs
    }

    pub(crate) fn encode(&self, args: &[usize], x: usize) -> usize {
        let mut i = 0;
        for &a in args {
            i = i * (self.g - 1) + (a - 1);
        }
        i * self.xs + x
    }

    pub(crate) fn decode(&self, mut i: usize, args: &mut [usize]) -> usize {
        let x = i % self.xs;
        i /= self.xs;
        for k in (0..self.k).rev() {
            args[k] = i % (self.g - 1) + 1;
            i /= self.g - 1;
        }
        x
    }
}

/// Rows of `δ: C^k -> C^{k+1}`, one per normalized `(k+1)`-tuple.
pub(crate) fn delta_rows(g: &FiniteGroup, set: Option<&GSet>, k: usize) -> Vec<SparseRow> {
    let xs = set.map_or(1, |s| s.size());
    let src = Coords::new(g.order(), xs, k);
    let dst = Coords::new(g.order(), xs, k + 1);
    let mut args = vec![0; k + 1];
    let mut buf = vec![0; k];
    let mut rows = Vec::with_capacity(dst.len());
    for r in 0..dst.len() {
        let x = dst.decode(r, &mut args);
        let mut row: SparseRow = Vec::with_capacity(k + 2);
        let mut push = |c: usize, s: i64| match row.iter_mut().find(|e| e.0 == c) {
            Some(e) => e.1 += s,
            None => row.push((c, s)),
        };
        push(src.encode(&args[1..], x), 1);
        for i in 0..k {
            let prod = g.mul(args[i], args[i + 1]);
            if prod == 0 {
                continue;
            }
            for j in 0..k {
                buf[j] = if j < i {
                    args[j]
                } else if j == i {
                    prod
                } else {
                    args[j + 1]
                };
            }
            push(src.encode(&buf, x), if i % 2 == 0 { -1 } else { 1 });
        }
        let y = set.map_or(0, |s| s.act(args[k], x));
        push(src.encode(&args[..k], y), if k % 2 == 0 { -1 } else { 1 });
        row.retain(|e| e.1 != 0);
        rows.push(row);
    }
    rows
}

fn to_vector(ring: Ring, c: &Cochain, coords: &Coords, scale_to: u32) -> Vec<u64> {
    let mut args = vec![0; coords.k];
    (0..coords.len())
        .map(|i| {
            let x = coords.decode(i, &mut args);
            let v = c.at(&args, x);
            if v.is_zero() {
                return 0;
            }
            let e = valuation(v.denom(), ring.p);
            debug_assert_eq!(v.denom(), ring.p.pow(e));
            v.numer() * ring.p.pow(scale_to - e) % ring.m
        })
        .collect()
}

fn from_vector(
    ring: Ring,
    x: &[u64],
    coords: &Coords,
    group_order: usize,
    set: Option<usize>,
    den_exp: u32,
) -> Cochain {
    let den = ring.p.pow(den_exp);
    let mut c = match set {
        None => Cochain::zero(group_order, coords.k),
        Some(s) => Cochain::zero_on(group_order, s, coords.k),
    };
    let mut args = vec![0; coords.k];
    for (i, &v) in x.iter().enumerate() {
        if v != 0 {
            let pt = coords.decode(i, &mut args);
            c.set(&args, pt, QZ::new((v % den) as i128, den));
        }
    }
    c
}

#[derive(Clone, Debug)]
struct PrimePart {
    ring: Ring,
    /// Exponents `e` of the cyclic summands `Z/p^e`, ascending.
    exps: Vec<u32>,
    /// Columns of `V` for those summands.
    cols: Vec<Vec<u64>>,
    /// Matching rows of `V^-1`.
    inv_rows: Vec<Vec<u64>>,
}

fn prime_part(g: &FiniteGroup, n: usize, p: u64, w: u32, rows: &[SparseRow]) -> Result<PrimePart> {
    let ring = Ring::new(p, w)?;
    let ncols = Coords::new(g.order(), 1, n).len();
    let form = row_module(ring, rows, ncols);
    let vinv = form.vinv.as_ref().expect("inverse tracked");
    let mut items: Vec<(u32, usize)> = form
        .pivots
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(t, &v)| (v, t))
        .collect();
    items.sort();
    Ok(PrimePart {
        ring,
        exps: items.iter().map(|x| x.0).collect(),
        cols: items.iter().map(|x| form.vt[x.1].clone()).collect(),
        inv_rows: items.iter().map(|x| vinv[x.1].clone()).collect(),
    })
}

/// `H^n(G, Q/Z)` with explicit generators, or `H^n_G(X, Q/Z)` for
/// transitive `X` through the stabilizer.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub n: usize,
    /// `d1 | d2 | …`, all greater than 1.
    pub invariant_factors: Vec<u64>,
    /// Cocycle of order `d_j` for each factor.
    pub representatives: Vec<Cochain>,
    group: FiniteGroup,
    parts: Vec<PrimePart>,
    /// For factor `j`, the summand index inside each prime part.
    layout: Vec<Vec<Option<usize>>>,
    shapiro: Option<Shapiro>,
}

#[derive(Clone, Debug)]
struct Shapiro {
    g: FiniteGroup,
    set: GSet,
    t: Transversal,
}

impl CohomologyGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// The group the classes live on (the stabilizer for a G-set).
    pub fn base_group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Coordinates `k_j mod d_j` with `[c] = Σ k_j [rep_j]`.
    pub fn class_of(&self, c: &Cochain) -> Result<Vec<u64>> {
        let c = match &self.shapiro {
            Some(s) => c.restrict(&s.t.stabilizer).at_point(s.t.base),
            None => c.clone(),
        };
        if c.n() != self.n || c.group_order() != self.group.order() || c.m() != 0 {
            return Err(Error::invalid(
                "cochain does not match the cohomology group",
            ));
        }
        if !delta(&self.group, None, &c)?.is_zero() {
            return Err(Error::invalid("cochain is not a cocycle"));
        }
        let coords = Coords::new(self.group.order(), 1, self.n);
        let mut per_part: Vec<Vec<u64>> = Vec::new();
        for part in &self.parts {
            let p = part.ring.p;
            let cp = c.primary_part(p);
            let v = valuation(cp.denominator(), p);
            let recomputed;
            let part = if v > part.ring.w {
                let rows = delta_rows(&self.group, None, self.n);
                recomputed = prime_part(&self.group, self.n, p, v + part.ring.w, &rows)?;
                &recomputed
            } else {
                part
            };
            let ring = part.ring;
            let vec = to_vector(ring, &cp, &coords, ring.w);
            let mut ks = Vec::new();
            for (e, row) in part.exps.iter().zip(&part.inv_rows) {
                let y = row
                    .iter()
                    .zip(&vec)
                    .fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)));
                // y / p^w lies in (1/p^e)Z/Z.
                let shift = ring.p.pow(ring.w - e);
                if y % shift != 0 {
                    return Err(Error::invalid(
                        "class coordinate has unexpected denominator",
                    ));
                }
                ks.push(y / shift);
            }
            per_part.push(ks);
        }
        Ok(self
            .layout
            .iter()
            .map(|slots| {
                let mut acc = (0i128, 1i128);
                for (pi, slot) in slots.iter().enumerate() {
                    if let Some(i) = slot {
                        let m = self.parts[pi].ring.p.pow(self.parts[pi].exps[*i]) as i128;
                        acc = crt(acc, (per_part[pi][*i] as i128, m));
                    }
                }
                acc.0 as u64
            })
            .collect())
    }

    /// Mixed-radix index of the class of `c` in `0..order()`.
    pub fn class_index(&self, c: &Cochain) -> Result<usize> {
        let k = self.class_of(c)?;
        Ok(self.index_of_coords(&k))
    }

    pub fn index_of_coords(&self, k: &[u64]) -> usize {
        let mut idx = 0usize;
        for (j, &d) in self.invariant_factors.iter().enumerate() {
            idx = idx * d as usize + k[j] as usize;
        }
        idx
    }

    pub fn coords_of_index(&self, mut idx: usize) -> Vec<u64> {
        let mut k = vec![0; self.invariant_factors.len()];
        for j in (0..k.len()).rev() {
            let d = self.invariant_factors[j] as usize;
            k[j] = (idx % d) as u64;
            idx /= d;
        }
        k
    }

    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool> {
        Ok(self.class_of(c)?.iter().all(|&k| k == 0))
    }

    /// `Σ k_j rep_j`.
    pub fn element(&self, k: &[u64]) -> Cochain {
        let mut c = match &self.shapiro {
            Some(s) => Cochain::zero_on(s.g.order(), s.set.size(), self.n),
            None => Cochain::zero(self.group.order(), self.n),
        };
        for (r, &kj) in self.representatives.iter().zip(k) {
            if kj != 0 {
                c = &c + &r.scale(kj as i64);
            }
        }
        c
    }

    /// One cocycle per class, in index order.
    pub fn elements(&self) -> Vec<Cochain> {
        (0..self.order() as usize)
            .map(|i| self.element(&self.coords_of_index(i)))
            .collect()
    }
}

fn crt(a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
    let e = a.1.extended_gcd(&b.1);
    let m = a.1 * b.1;
    let x = (a.0 * b.1 * e.y + b.0 * a.1 * e.x).rem_euclid(m);
    (x, m)
}

/// `H^n(G, Q/Z)` for `n = 1..3`.
pub fn cohomology_group(g: &FiniteGroup, n: usize) -> Result<CohomologyGroup> {
    if !(1..=3).contains(&n) {
        return Err(Error::ArityUnsupported { n, m: 0 });
    }
    let b = bounds();
    match n {
        2 => check("degree-2 cohomology", g.order(), b.h2)?,
        3 => check("degree-3 cohomology", g.order(), b.h3)?,
        _ => check("degree-1 cohomology", g.order(), 256)?,
    }
    let order = g.order() as u64;
    let rows = if order > 1 {
        delta_rows(g, None, n)
    } else {
        Vec::new()
    };
    let mut parts = Vec::new();
    for p in prime_factors(order) {
        let v = valuation(order, p);
        parts.push(prime_part(g, n, p, 3 * v + 2, &rows)?);
    }
    let k = parts.iter().map(|p| p.exps.len()).max().unwrap_or(0);
    let mut layout = vec![vec![None; parts.len()]; k];
    let mut factors = vec![1u64; k];
    for (pi, part) in parts.iter().enumerate() {
        let off = k - part.exps.len();
        for (i, &e) in part.exps.iter().enumerate() {
            layout[off + i][pi] = Some(i);
            factors[off + i] *= part.ring.p.pow(e);
        }
    }
    let coords = Coords::new(g.order(), 1, n);
    let representatives = layout
        .iter()
        .map(|slots| {
            let mut c = Cochain::zero(g.order(), n);
            for (pi, slot) in slots.iter().enumerate() {
                if let Some(i) = slot {
                    let part = &parts[pi];
                    let r = from_vector(
                        part.ring,
                        &part.cols[*i],
                        &coords,
                        g.order(),
                        None,
                        part.exps[*i],
                    );
                    c = &c + &r;
                }
            }
            c
        })
        .collect();
    Ok(CohomologyGroup {
        n,
        invariant_factors: factors,
        representatives,
        group: g.clone(),
        parts,
        layout,
        shapiro: None,
    })
}

/// `S(ψ)(σ1..σn; x) = ψ(h(σ1, σ2⋯σn x), …, h(σn, x))`.
pub fn shapiro_transport(g: &FiniteGroup, set: &GSet, t: &Transversal, psi: &Cochain) -> Cochain {
    let n = psi.n();
    let mut hs = vec![0; n];
    Cochain::from_fn(g.order(), Some(set.size()), n, |a, x| {
        let mut y = x;
        for i in (0..n).rev() {
            hs[i] = t.h(g, set, a[i], y);
            y = set.act(a[i], y);
        }
        psi.at(&hs, 0)
    })
}

/// `H^n_G(X, Q/Z) ≅ H^n(Stab(x0), Q/Z)` for transitive `X`, with
/// representatives transported back to `X`.
pub fn cohomology_group_on(g: &FiniteGroup, n: usize, set: &GSet) -> Result<CohomologyGroup> {
    let t = Transversal::new(g, set, 0)?;
    let mut h = cohomology_group(&t.stab_group, n)?;
    h.representatives = h
        .representatives
        .iter()
        .map(|r| shapiro_transport(g, set, &t, r))
        .collect();
    h.shapiro = Some(Shapiro {
        g: g.clone(),
        set: set.clone(),
        t,
    });
    Ok(h)
}

/// Some normalized `b` with `δb = c`, if one exists.
pub fn solve_coboundary(
    g: &FiniteGroup,
    set: Option<&GSet>,
    c: &Cochain,
) -> Result<Option<Cochain>> {
    let n = c.n();
    if n == 0 {
        return Err(Error::ArityUnsupported { n: 0, m: c.m() });
    }
    if n > 4 {
        return Err(Error::ArityUnsupported { n, m: c.m() });
    }
    if !c.is_normalized() {
        return Err(Error::invalid("cochain is not normalized"));
    }
    let set = if c.m() == 1 {
        Some(set.ok_or_else(|| Error::invalid("set-valued cochain needs a G-set"))?)
    } else {
        None
    };
    let xs = set.map(|s| s.size());
    let zero = match xs {
        None => Cochain::zero(g.order(), n - 1),
        Some(s) => Cochain::zero_on(g.order(), s, n - 1),
    };
    if c.is_zero() {
        return Ok(Some(zero));
    }
    if g.order() == 1 {
        return Ok(None);
    }
    let src = Coords::new(g.order(), xs.unwrap_or(1), n - 1);
    let dst = Coords::new(g.order(), xs.unwrap_or(1), n);
    check("linear unknowns", src.len(), bounds().linear_unknowns)?;
    let rows = delta_rows(g, set, n - 1);
    let den = c.denominator();
    let mut b = zero;
    for p in prime_factors(den) {
        let v = valuation(den, p);
        let w = v + valuation(g.order() as u64, p);
        let ring = Ring::new(p, w)?;
        let rhs = to_vector(ring, &c.primary_part(p), &dst, w);
        match solve(ring, &rows, &rhs, src.len()) {
            Some(x) => b = &b + &from_vector(ring, &x, &src, g.order(), xs, w),
            None => return Ok(None),
        }
    }
    if delta(g, set, &b)? != *c {
        return Err(Error::invalid("coboundary solution failed verification"));
    }
    Ok(Some(b))
}

/// `ω(a, b, c) = k·a·⌊(b + c)/n⌋ / n` on `Z/n`.
pub fn cyclic_3cocycle(n: usize, k: u64) -> Cochain {
    Cochain::from_fn(n, None, 3, |a, _| {
        let carry = ((a[1] + a[2]) / n) as i128;
        QZ::new(k as i128 * a[0] as i128 * carry, n as u64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn klein() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    #[test]
    fn small_tables() {
        for n in 1..=8 {
            assert!(cohomology_group(&FiniteGroup::cyclic(n), 2)
                .unwrap()
                .is_trivial());
        }
        assert_eq!(
            cohomology_group(&klein(), 2).unwrap().invariant_factors,
            vec![2]
        );
        assert_eq!(
            cohomology_group(&FiniteGroup::cyclic(2), 3)
                .unwrap()
                .invariant_factors,
            vec![2]
        );
        assert_eq!(
            cohomology_group(&FiniteGroup::cyclic(6), 1)
                .unwrap()
                .invariant_factors,
            vec![6]
        );
        assert_eq!(
            cohomology_group(&klein(), 1).unwrap().invariant_factors,
            vec![2, 2]
        );
    }

    #[test]
    fn representatives_are_cocycles_of_right_order() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        let h = cohomology_group(&g, 2).unwrap();
        assert_eq!(h.invariant_factors, vec![2]);
        for (r, &d) in h.representatives.iter().zip(&h.invariant_factors) {
            assert!(delta(&g, None, r).unwrap().is_zero());
            assert_eq!(h.class_of(r).unwrap(), vec![1]);
            assert!(h.is_coboundary(&r.scale(d as i64)).unwrap());
        }
    }

    #[test]
    fn class_of_is_invariant_under_coboundaries() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let g = klein();
        let h = cohomology_group(&g, 2).unwrap();
        let r = &h.representatives[0];
        for _ in 0..10 {
            let b = Cochain::random(&mut rng, 4, None, 1, 12);
            let c = r + &delta(&g, None, &b).unwrap();
            assert_eq!(h.class_of(&c).unwrap(), vec![1]);
        }
    }

    #[test]
    fn solve_round_trip() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        let g = FiniteGroup::dihedral(4);
        for n in 1..3 {
            let b = Cochain::random(&mut rng, 8, None, n, 8);
            let c = delta(&g, None, &b).unwrap();
            let x = solve_coboundary(&g, None, &c).unwrap().unwrap();
            assert_eq!(delta(&g, None, &x).unwrap(), c);
        }
        let w = cyclic_3cocycle(2, 1);
        assert!(solve_coboundary(&FiniteGroup::cyclic(2), None, &w)
            .unwrap()
            .is_none());
        assert!(solve_coboundary(&g, None, &Cochain::zero(8, 2))
            .unwrap()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn solve_on_sets() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let x = GSet::cosets(&s3, &crate::group::Subgroup::generated(&s3, &[1]));
        for n in 0..2 {
            let b = Cochain::random(&mut rng, 6, Some(3), n, 6);
            let c = delta(&s3, Some(&x), &b).unwrap();
            let y = solve_coboundary(&s3, Some(&x), &c).unwrap().unwrap();
            assert_eq!(delta(&s3, Some(&x), &y).unwrap(), c);
        }
    }

    #[test]
    fn cyclic_family() {
        for n in 1..=6 {
            let g = FiniteGroup::cyclic(n);
            for k in 0..n as u64 {
                let w = cyclic_3cocycle(n, k);
                assert!(delta(&g, None, &w).unwrap().is_zero());
            }
            assert!(cyclic_3cocycle(n, 0).is_zero());
        }
        assert_eq!(cyclic_3cocycle(2, 1).at(&[1, 1, 1], 0), QZ::new(1, 2));
        let z3 = FiniteGroup::cyclic(3);
        let d = &cyclic_3cocycle(3, 1) - &cyclic_3cocycle(3, 2);
        assert!(solve_coboundary(&z3, None, &d).unwrap().is_none());
        assert!(solve_coboundary(&z3, None, &cyclic_3cocycle(3, 1).scale(3))
            .unwrap()
            .is_some());
    }

    #[test]
    fn shapiro_first_cohomology() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        for gens in [vec![], vec![1], vec![3]] {
            let h = crate::group::Subgroup::generated(&s3, &gens);
            let x = GSet::cosets(&s3, &h);
            let c = cohomology_group_on(&s3, 1, &x).unwrap();
            assert_eq!(c.order() as usize, h.order());
            for r in &c.representatives {
                assert!(delta(&s3, Some(&x), r).unwrap().is_zero());
            }
        }
    }
}
