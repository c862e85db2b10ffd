//! Finite left G-sets as action tables.

use crate::group::{left_cosets, FiniteGroup, Subgroup};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// `action[g * size + x] = g·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GSet {
    group_order: usize,
    size: usize,
    action: Vec<usize>,
}

impl GSet {
    pub fn new(g: &FiniteGroup, size: usize, action: Vec<usize>) -> Result<Self> {
        let n = g.order();
        if size == 0 || action.len() != n * size || action.iter().any(|&y| y >= size) {
            return Err(Error::invalid("action table has wrong shape"));
        }
        let s = GSet {
            group_order: n,
            size,
            action,
        };
        for x in 0..size {
            if s.act(0, x) != x {
                return Err(Error::invalid("identity does not act trivially"));
            }
        }
        for a in 0..n {
            let mut seen = vec![false; size];
            for x in 0..size {
                if std::mem::replace(&mut seen[s.act(a, x)], true) {
                    return Err(Error::invalid("group element does not act bijectively"));
                }
            }
            for b in 0..n {
                for x in 0..size {
                    if s.act(g.mul(a, b), x) != s.act(a, s.act(b, x)) {
                        return Err(Error::invalid("action is not compatible with the product"));
                    }
                }
            }
        }
        Ok(s)
    }

    pub(crate) fn from_raw(group_order: usize, size: usize, action: Vec<usize>) -> Self {
        GSet {
            group_order,
            size,
            action,
        }
    }

    pub fn point(g: &FiniteGroup) -> Self {
        GSet::from_raw(g.order(), 1, vec![0; g.order()])
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(g: &FiniteGroup) -> Self {
        let n = g.order();
        GSet::from_raw(n, n, (0..n * n).map(|i| g.mul(i / n, i % n)).collect())
    }

    /// `G/H`; point `i` is the `i`-th left coset ordered by smallest element,
    /// so point 0 is `H` with stabilizer `H`.
    pub fn cosets(g: &FiniteGroup, h: &Subgroup) -> Self {
        let cos = left_cosets(g, h);
        let mut which = vec![0; g.order()];
        for (i, c) in cos.iter().enumerate() {
            for &x in c {
                which[x] = i;
            }
        }
        let k = cos.len();
        let mut action = vec![0; g.order() * k];
        for a in 0..g.order() {
            for (i, c) in cos.iter().enumerate() {
                action[a * k + i] = which[g.mul(a, c[0])];
            }
        }
        GSet::from_raw(g.order(), k, action)
    }

    /// `G` acting on itself by conjugation.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let n = g.order();
        GSet::from_raw(n, n, (0..n * n).map(|i| g.conj(i / n, i % n)).collect())
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let mut o: Vec<usize> = (0..self.group_order).map(|g| self.act(g, x)).collect();
            o.sort_unstable();
            o.dedup();
            for &y in &o {
                seen[y] = true;
            }
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        Subgroup::from_sorted(
            (0..self.group_order)
                .filter(|&g| self.act(g, x) == x)
                .collect(),
        )
    }

    /// The G-set obtained by restricting to a subgroup, with its elements
    /// renumbered by position.
    pub fn restrict(&self, h: &Subgroup) -> GSet {
        let mut action = Vec::with_capacity(h.order() * self.size);
        for &g in h.elements() {
            for x in 0..self.size {
                action.push(self.act(g, x));
            }
        }
        GSet::from_raw(h.order(), self.size, action)
    }

    /// Equivariant bijections `self -> other` (at most one per image of a
    /// basepoint when transitive).
    pub fn isomorphisms_to(&self, other: &GSet) -> Vec<Vec<usize>> {
        if self.size != other.size || self.group_order != other.group_order {
            return Vec::new();
        }
        let orbits = self.orbits();
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; self.size];
        self.iso_rec(
            other,
            &orbits,
            0,
            &mut map,
            &mut vec![false; other.size],
            &mut out,
        );
        out
    }

    fn iso_rec(
        &self,
        other: &GSet,
        orbits: &[Vec<usize>],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == orbits.len() {
            out.push(map.clone());
            return;
        }
        let x0 = orbits[k][0];
        for y0 in 0..other.size {
            if used[y0] {
                continue;
            }
            // Try x0 -> y0 and propagate along the orbit.
            let mut ok = true;
            let mut assigned = Vec::new();
            for g in 0..self.group_order {
                let (x, y) = (self.act(g, x0), other.act(g, y0));
                if map[x] == usize::MAX {
                    if used[y] {
                        ok = false;
                        break;
                    }
                    map[x] = y;
                    used[y] = true;
                    assigned.push(x);
                } else if map[x] != y {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.iso_rec(other, orbits, k + 1, map, used, out);
            }
            for x in assigned {
                used[map[x]] = false;
                map[x] = usize::MAX;
            }
        }
    }
}

/// Basepoint data of a transitive G-set used by the Shapiro transport.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub base: usize,
    /// `rep[x]` is the smallest `g` with `g·base = x`.
    pub rep: Vec<usize>,
    pub stabilizer: Subgroup,
    /// The stabilizer as a standalone group (indices are positions).
    pub stab_group: FiniteGroup,
}

impl Transversal {
    pub fn new(g: &FiniteGroup, x: &GSet, base: usize) -> Result<Self> {
        let mut rep = vec![usize::MAX; x.size()];
        for s in 0..g.order() {
            let y = x.act(s, base);
            if rep[y] == usize::MAX {
                rep[y] = s;
            }
        }
        if rep.contains(&usize::MAX) {
            return Err(Error::invalid("G-set is not transitive"));
        }
        let stabilizer = x.stabilizer(base);
        let stab_group = stabilizer.as_group(g);
        Ok(Transversal {
            base,
            rep,
            stabilizer,
            stab_group,
        })
    }

    /// `r(σx)^-1 σ r(x)`, as a position in the stabilizer.
    pub fn h(&self, g: &FiniteGroup, x: &GSet, sigma: usize, pt: usize) -> usize {
        let y = x.act(sigma, pt);
        let e = g.mul(g.mul(g.inv(self.rep[y]), sigma), self.rep[pt]);
        self.stabilizer
            .position(e)
            .expect("element lies in the stabilizer")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_sets() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let h = Subgroup::generated(&s3, &[1]);
        let x = GSet::cosets(&s3, &h);
        assert_eq!(x.size(), 3);
        assert!(x.is_transitive());
        assert_eq!(x.stabilizer(0), h);
        assert!(GSet::new(&s3, 3, x.action.clone()).is_ok());
        assert_eq!(GSet::conjugation(&s3).orbits().len(), 3);
        assert_eq!(x.isomorphisms_to(&x).len(), 1);
        let r = GSet::regular(&s3);
        assert_eq!(r.isomorphisms_to(&r).len(), 6);
    }

    #[test]
    fn shapiro_h_lands_in_stabilizer() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let h = Subgroup::generated(&s4, &[1, 6]);
        let x = GSet::cosets(&s4, &h);
        let t = Transversal::new(&s4, &x, 0).unwrap();
        for s in 0..24 {
            for p in 0..x.size() {
                let _ = t.h(&s4, &x, s, p);
            }
        }
        assert_eq!(t.rep[0], 0);
    }
}
