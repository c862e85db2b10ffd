use super::subgroup::{Quotient, Subgroup};
use super::FiniteGroup;
use crate::bounds::{bounds, check};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A homomorphism given by its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupHom {
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn identity(n: usize) -> Self {
        GroupHom {
            image: (0..n).collect(),
        }
    }

    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    /// Checked constructor.
    pub fn new(dom: &FiniteGroup, cod: &FiniteGroup, image: Vec<usize>) -> Result<Self> {
        let h = GroupHom { image };
        if h.is_homomorphism(dom, cod) {
            Ok(h)
        } else {
            Err(Error::invalid("map is not a homomorphism"))
        }
    }

    pub fn is_homomorphism(&self, dom: &FiniteGroup, cod: &FiniteGroup) -> bool {
        self.image.len() == dom.order()
            && self.image.iter().all(|&x| x < cod.order())
            && (0..dom.order()).all(|a| {
                (0..dom.order())
                    .all(|b| self.image[dom.mul(a, b)] == cod.mul(self.image[a], self.image[b]))
            })
    }

    pub fn is_bijective(&self, cod_order: usize) -> bool {
        let mut seen = vec![false; cod_order];
        self.image.len() == cod_order
            && self
                .image
                .iter()
                .all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupHom {
        let mut inv = vec![0; self.image.len()];
        for (a, &b) in self.image.iter().enumerate() {
            inv[b] = a;
        }
        GroupHom { image: inv }
    }
}

/// Greedy generating set: elements by decreasing order, kept when new.
pub(crate) fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut elems: Vec<usize> = (1..g.order()).collect();
    elems.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial();
    for x in elems {
        if span.order() == g.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated(g, &gens);
        }
    }
    gens
}

/// Extend generator images along the Cayley graph of `<gens>`.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let v = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push(y);
            } else if map[y] != v {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

struct Search<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    bijective: bool,
    limit: usize,
    first_only: bool,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, imgs: &mut Vec<usize>) -> Result<()> {
        let k = imgs.len();
        if k == self.gens.len() {
            let map = extend(self.g, self.h, &self.gens, imgs).expect("checked on descent");
            if self.bijective && !(GroupHom { image: map.clone() }).is_bijective(self.h.order()) {
                return Ok(());
            }
            self.out.push(map);
            if self.out.len() > self.limit {
                return Err(Error::BoundExceeded {
                    what: "automorphism count",
                    limit: self.limit,
                    actual: self.out.len(),
                });
            }
            return Ok(());
        }
        for ci in 0..self.candidates[k].len() {
            let c = self.candidates[k][ci];
            imgs.push(c);
            if let Some(map) = extend(self.g, self.h, &self.gens[..=k], imgs) {
                let injective_so_far = !self.bijective || {
                    let mut seen = vec![false; self.h.order()];
                    map.iter()
                        .filter(|&&v| v != usize::MAX)
                        .all(|&v| !std::mem::replace(&mut seen[v], true))
                };
                if injective_so_far {
                    self.run(imgs)?;
                }
            }
            imgs.pop();
            if self.first_only && !self.out.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn search_isos(g: &FiniteGroup, h: &FiniteGroup, first_only: bool) -> Result<Vec<Vec<usize>>> {
    if g.order() != h.order() {
        return Ok(Vec::new());
    }
    let gens = generating_set(g);
    let class_size = |grp: &FiniteGroup, x: usize| grp.order() / grp.centralizer(x).len();
    let candidates = gens
        .iter()
        .map(|&s| {
            let (o, c) = (g.element_order(s), class_size(g, s));
            (0..h.order())
                .filter(|&t| h.element_order(t) == o && class_size(h, t) == c)
                .collect()
        })
        .collect();
    let mut s = Search {
        g,
        h,
        gens,
        candidates,
        bijective: true,
        limit: bounds().automorphism_count,
        first_only,
        out: Vec::new(),
    };
    s.run(&mut Vec::new())?;
    Ok(s.out)
}

/// Some isomorphism `g -> h`, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupHom> {
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() {
        return None;
    }
    let mut og: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let mut oh: Vec<usize> = (0..h.order()).map(|x| h.element_order(x)).collect();
    og.sort_unstable();
    oh.sort_unstable();
    if og != oh {
        return None;
    }
    search_isos(g, h, true)
        .ok()
        .and_then(|v| v.into_iter().next())
        .map(|image| GroupHom { image })
}

/// All isomorphisms `g -> h`.
pub fn all_isomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<GroupHom>> {
    Ok(search_isos(g, h, false)?
        .into_iter()
        .map(|image| GroupHom { image })
        .collect())
}

/// All homomorphisms `g -> h` (not necessarily injective).
pub fn all_homomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<GroupHom>> {
    let gens = generating_set(g);
    let candidates = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..h.order())
                .filter(|&t| o % h.element_order(t) == 0)
                .collect()
        })
        .collect();
    let mut s = Search {
        g,
        h,
        gens,
        candidates,
        bijective: false,
        limit: bounds().automorphism_count,
        first_only: false,
        out: Vec::new(),
    };
    s.run(&mut Vec::new())?;
    Ok(s.out.into_iter().map(|image| GroupHom { image }).collect())
}

/// `Aut(G)` as an abstract group with its action on `G`.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    /// Product is composition: `a * b = a ∘ b`.
    pub group: FiniteGroup,
    /// Element `i` of `group` acts on `G` by `maps[i]`; sorted, so 0 is the identity.
    pub maps: Vec<GroupHom>,
    /// `inner_of[g]` is the index of `x ↦ g x g^-1`.
    pub inner_of: Vec<usize>,
    pub inner: Subgroup,
    pub outer: Quotient,
}

impl AutomorphismGroup {
    pub fn index_of(&self, map: &GroupHom) -> Option<usize> {
        self.maps.binary_search(map).ok()
    }
}

pub fn automorphism_group(g: &FiniteGroup) -> Result<AutomorphismGroup> {
    check("automorphism search", g.order(), bounds().automorphisms)?;
    let mut maps: Vec<GroupHom> = search_isos(g, g, false)?
        .into_iter()
        .map(|image| GroupHom { image })
        .collect();
    maps.sort();
    let m = maps.len();
    let mut table = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            let c = maps[a].compose(&maps[b]);
            table[a * m + b] = maps
                .binary_search(&c)
                .map_err(|_| Error::invalid("not closed"))?;
        }
    }
    let group = FiniteGroup::from_flat(m, table)?;
    let inner_of: Vec<usize> = (0..g.order())
        .map(|x| {
            let ad = GroupHom {
                image: (0..g.order()).map(|y| g.conj(x, y)).collect(),
            };
            maps.binary_search(&ad).unwrap()
        })
        .collect();
    let inner = Subgroup::generated(&group, &inner_of);
    let outer = Quotient::new(&group, &inner)?;
    Ok(AutomorphismGroup {
        group,
        maps,
        inner_of,
        inner,
        outer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_aut_count(g: &FiniteGroup) -> usize {
        // Filter all bijections fixing 0 generated by permuting 1..n.
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            if (0..n).all(|a| (0..n).all(|b| perm[g.mul(a, b)] == g.mul(perm[a], perm[b]))) {
                count += 1;
            }
            let Some(i) = (1..n.saturating_sub(1))
                .rev()
                .find(|&i| perm[i] < perm[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        count
    }

    #[test]
    fn small_aut_orders() {
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(automorphism_group(&v).unwrap().group.order(), 6);
        let c5 = automorphism_group(&FiniteGroup::cyclic(5)).unwrap();
        assert_eq!(c5.group.order(), 4);
        assert!((0..4).any(|x| c5.group.element_order(x) == 4));
        assert_eq!(
            automorphism_group(&FiniteGroup::trivial())
                .unwrap()
                .group
                .order(),
            1
        );
        let s3 = automorphism_group(&FiniteGroup::symmetric(3).unwrap()).unwrap();
        assert_eq!(s3.inner.order(), 6);
        assert_eq!(s3.outer.group.order(), 1);
    }

    #[test]
    fn against_bijection_filter() {
        for g in [
            FiniteGroup::cyclic(8),
            FiniteGroup::dihedral(4),
            FiniteGroup::dihedral(3),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)),
        ] {
            assert_eq!(
                automorphism_group(&g).unwrap().group.order(),
                brute_aut_count(&g)
            );
        }
    }

    #[test]
    fn iso_search() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let d3 = FiniteGroup::dihedral(3);
        let f = find_isomorphism(&s3, &d3).unwrap();
        assert!(f.is_homomorphism(&s3, &d3) && f.is_bijective(6));
        assert!(find_isomorphism(&FiniteGroup::cyclic(6), &s3).is_none());
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert!(find_isomorphism(&FiniteGroup::cyclic(4), &v).is_none());
    }

    #[test]
    fn hom_count() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(all_homomorphisms(&c4, &c2).unwrap().len(), 2);
        assert_eq!(all_homomorphisms(&c4, &c4).unwrap().len(), 4);
    }
}
