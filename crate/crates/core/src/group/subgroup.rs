use super::FiniteGroup;
use crate::bounds::{bounds, check};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

/// A subgroup stored as its sorted element list.
///
/// Position 0 of `elements` is always the identity, so `as_group` can use
/// positions as element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub(crate) fn from_sorted(elements: Vec<usize>) -> Self {
        debug_assert!(elements.first() == Some(&0));
        Subgroup { elements }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            elements: (0..g.order()).collect(),
        }
    }

    /// Validate an element list as a subgroup of `g`.
    pub fn from_elements(g: &FiniteGroup, elems: &[usize]) -> Result<Self> {
        let mut e: Vec<usize> = elems.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.first() != Some(&0) || e.iter().any(|&x| x >= g.order()) {
            return Err(Error::invalid("subgroup must contain the identity"));
        }
        let set: HashSet<usize> = e.iter().copied().collect();
        for &a in &e {
            for &b in &e {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::invalid("subset is not closed"));
                }
            }
        }
        Ok(Subgroup { elements: e })
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut inside = vec![false; g.order()];
        inside[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &s in gens {
                let y = g.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Subgroup { elements: elems }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Position of `x` inside `elements`.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = self
            .elements
            .iter()
            .chain(&other.elements)
            .copied()
            .collect();
        Subgroup::generated(g, &gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    /// `x H x^-1`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elements.iter().map(|&h| g.conj(x, h)).collect();
        e.sort_unstable();
        Subgroup { elements: e }
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|x| self.elements.iter().all(|&h| self.contains(g.conj(x, h))))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn normalizer(&self, g: &FiniteGroup) -> Subgroup {
        Subgroup {
            elements: (0..g.order())
                .filter(|&x| self.elements.iter().all(|&h| self.contains(g.conj(x, h))))
                .collect(),
        }
    }

    /// The subgroup as a standalone group; element `i` is `elements[i]`.
    pub fn as_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let n = self.order();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self
                    .position(g.mul(self.elements[i], self.elements[j]))
                    .unwrap();
            }
        }
        FiniteGroup::from_flat_trusted(n, table)
    }
}

/// Quotient by a normal subgroup. Cosets are ordered by their smallest
/// element, so coset 0 is `N` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Projection `G -> G/N`.
    pub projection: Vec<usize>,
    /// Smallest element of each coset.
    pub section: Vec<usize>,
}

impl Quotient {
    pub fn new(g: &FiniteGroup, n: &Subgroup) -> Result<Self> {
        if !n.is_normal(g) {
            return Err(Error::invalid("quotient by a non-normal subgroup"));
        }
        let mut projection = vec![usize::MAX; g.order()];
        let mut section = Vec::new();
        for x in 0..g.order() {
            if projection[x] != usize::MAX {
                continue;
            }
            let c = section.len();
            section.push(x);
            for &h in n.elements() {
                projection[g.mul(x, h)] = c;
            }
        }
        let m = section.len();
        let mut table = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                table[a * m + b] = projection[g.mul(section[a], section[b])];
            }
        }
        Ok(Quotient {
            group: FiniteGroup::from_flat(m, table)?,
            projection,
            section,
        })
    }
}

/// All subgroups, ordered by (order, elements). Built as joins of cyclic
/// subgroups.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    check("subgroup lattice", g.order(), bounds().subgroup_lattice)?;
    let cyclic: BTreeSet<Subgroup> = (0..g.order())
        .map(|x| Subgroup::generated(g, &[x]))
        .collect();
    let cyclic: Vec<Subgroup> = cyclic.into_iter().collect();
    let mut found: BTreeSet<Subgroup> = cyclic.iter().cloned().collect();
    let mut layer: Vec<Subgroup> = cyclic.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            for c in &cyclic {
                if c.is_subgroup_of(s) {
                    continue;
                }
                let j = s.join(g, c);
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(out)
}

/// One subgroup per conjugacy class, the smallest in (order, elements) order.
pub fn subgroups_up_to_conjugacy(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let all = all_subgroups(g)?;
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut out = Vec::new();
    for s in all {
        if seen.contains(&s) {
            continue;
        }
        for x in 0..g.order() {
            seen.insert(s.conjugate(g, x));
        }
        out.push(s);
    }
    Ok(out)
}

/// Normal subgroups as joins of normal closures of conjugacy classes.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let closures: BTreeSet<Subgroup> = g
        .conjugacy_classes()
        .iter()
        .map(|c| Subgroup::generated(g, c))
        .collect();
    let closures: Vec<Subgroup> = closures.into_iter().collect();
    let mut found: BTreeSet<Subgroup> = closures.iter().cloned().collect();
    let mut layer = closures.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            for c in &closures {
                if c.is_subgroup_of(s) {
                    continue;
                }
                let j = s.join(g, c);
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    out
}

pub fn normal_abelian_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    normal_subgroups(g)
        .into_iter()
        .filter(|s| s.is_abelian(g))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    /// `None` when the lattice bound was exceeded.
    pub subgroups: Option<Vec<Subgroup>>,
    pub normal: Vec<Subgroup>,
    pub normal_abelian: Vec<Subgroup>,
    pub center: Subgroup,
    pub classes: Vec<Vec<usize>>,
    /// Centralizer of the first element of each class.
    pub centralizers: Vec<Subgroup>,
    /// Orders of `G/N` for each normal subgroup, in the same order.
    pub quotient_orders: Vec<usize>,
}

pub fn subgroup_analysis(g: &FiniteGroup, up_to_conjugacy: bool) -> Result<SubgroupReport> {
    if g.order() > 256 {
        return Err(Error::BoundExceeded {
            what: "group order",
            limit: 256,
            actual: g.order(),
        });
    }
    let subgroups = match if up_to_conjugacy {
        subgroups_up_to_conjugacy(g)
    } else {
        all_subgroups(g)
    } {
        Ok(s) => Some(s),
        Err(e) if e.is_bound() => None,
        Err(e) => return Err(e),
    };
    let normal = normal_subgroups(g);
    let normal_abelian = normal.iter().filter(|s| s.is_abelian(g)).cloned().collect();
    let classes = g.conjugacy_classes();
    let centralizers = classes
        .iter()
        .map(|c| Subgroup {
            elements: g.centralizer(c[0]),
        })
        .collect();
    let quotient_orders = normal.iter().map(|n| g.order() / n.order()).collect();
    Ok(SubgroupReport {
        subgroups,
        normal,
        normal_abelian,
        center: Subgroup {
            elements: g.center(),
        },
        classes,
        centralizers,
        quotient_orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_subgroups(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u64..1 << n)
            .filter(|&m| {
                m & 1 == 1
                    && (0..n).all(|a| {
                        m >> a & 1 == 0
                            || (0..n).all(|b| m >> b & 1 == 0 || m >> g.mul(a, b) & 1 == 1)
                    })
            })
            .count()
    }

    #[test]
    fn klein_lattice() {
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let s = all_subgroups(&v).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.len(), brute_subgroups(&v));
        assert_eq!(all_subgroups(&FiniteGroup::trivial()).unwrap().len(), 1);
    }

    #[test]
    fn lattice_against_subset_closure() {
        for g in [
            FiniteGroup::dihedral(4),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::cyclic(12),
            FiniteGroup::alternating(4).unwrap(),
        ] {
            assert_eq!(all_subgroups(&g).unwrap().len(), brute_subgroups(&g));
        }
    }

    #[test]
    fn s3_normal_abelian() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let na = normal_abelian_subgroups(&s3);
        assert_eq!(na.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(subgroups_up_to_conjugacy(&s3).unwrap().len(), 4);
    }

    #[test]
    fn quotient_projection_is_hom() {
        let d4 = FiniteGroup::dihedral(4);
        for n in normal_subgroups(&d4) {
            let q = Quotient::new(&d4, &n).unwrap();
            assert_eq!(q.group.order() * n.order(), 8);
            for a in 0..8 {
                for b in 0..8 {
                    assert_eq!(
                        q.projection[d4.mul(a, b)],
                        q.group.mul(q.projection[a], q.projection[b])
                    );
                }
            }
        }
    }
}
