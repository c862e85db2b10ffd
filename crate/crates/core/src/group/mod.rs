//! Finite groups as dense multiplication tables.
//!
//! Elements are the indices `0..order`; index 0 is always the identity.

mod aut;
mod coset;
mod subgroup;

pub use aut::{
    all_homomorphisms, all_isomorphisms, automorphism_group, find_isomorphism, AutomorphismGroup, GroupHom,
};
pub use coset::{
    coset_machinery, double_cosets, left_cosets, right_cosets, simultaneous_transversal,
    CosetReport, CrossedFactorization,
};
pub use subgroup::{
    all_subgroups, normal_abelian_subgroups, normal_subgroups, subgroup_analysis,
    subgroups_up_to_conjugacy, Quotient, Subgroup, SubgroupReport,
};

use crate::{Error, Result};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    label: Option<String>,
}

impl FiniteGroup {
    /// Validate a full multiplication table.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("empty table"));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotClosed(i));
            }
            table.extend_from_slice(r);
        }
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        for (i, &v) in table.iter().enumerate() {
            if v >= n {
                return Err(Error::NotClosed(i / n));
            }
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                let r = table[a * n + b];
                let c = table[b * n + a];
                if row[r] || col[c] {
                    return Err(Error::NotClosed(a));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return Err(Error::NoIdentity);
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self::from_flat_trusted(n, table))
    }

    /// For tables that are group tables by construction (products, subgroups,
    /// quotients, permutation closures); skips the cubic associativity check.
    pub(crate) fn from_flat_trusted(n: usize, table: Vec<usize>) -> Self {
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("group table");
        }
        FiniteGroup {
            order: n,
            table,
            inverse,
            label: None,
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mut g = Self::from_flat(n, table).expect("cyclic table");
        g.label = Some(format!("cyclic:{n}"));
        g
    }

    /// Dihedral group of order `2n`; element `i + n*j` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let m = 2 * n;
        let mut table = vec![0; m * m];
        for a in 0..m {
            let (i, j) = (a % n, a / n);
            for b in 0..m {
                let (k, l) = (b % n, b / n);
                // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j+l)
                let e = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                table[a * m + b] = e + n * ((j + l) % 2);
            }
        }
        let mut g = Self::from_flat(m, table).expect("dihedral table");
        g.label = Some(format!("dihedral:{n}"));
        g
    }

    /// Dicyclic group of order `4n`; element `i + 2n*j` is `a^i x^j`
    /// with `x² = a^n` and `x a x⁻¹ = a⁻¹`. `n = 2` is the quaternion group.
    pub fn dicyclic(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("dicyclic parameter must be at least 2"));
        }
        let (h, m) = (2 * n, 4 * n);
        let mut table = vec![0; m * m];
        for a in 0..m {
            let (i, j) = (a % h, a / h);
            for b in 0..m {
                let (k, l) = (b % h, b / h);
                table[a * m + b] = match (j, l) {
                    (0, _) => (i + k) % h + h * l,
                    (_, 0) => (i + h - k) % h + h,
                    _ => (i + h - k + n) % h,
                };
            }
        }
        let mut g = Self::from_flat(m, table)?;
        g.label = Some(format!("dicyclic:{n}"));
        Ok(g)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::invalid("symmetric degree must be 1..5"));
        }
        let perms = all_permutations(n);
        let mut g = Self::from_perm_list(&perms);
        g.label = Some(format!("symmetric:{n}"));
        Ok(g)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::invalid("alternating degree must be 1..5"));
        }
        let perms: Vec<_> = all_permutations(n)
            .into_iter()
            .filter(|p| perm_parity(p) == 0)
            .collect();
        let mut g = Self::from_perm_list(&perms);
        g.label = Some(format!("alternating:{n}"));
        Ok(g)
    }

    /// Direct product; element `(a, b)` has index `a * |h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (n, m) = (g.order, h.order);
        let nm = n * m;
        let mut table = vec![0; nm * nm];
        for x in 0..nm {
            for y in 0..nm {
                let (a, b) = (x / m, x % m);
                let (c, d) = (y / m, y % m);
                table[x * nm + y] = g.mul(a, c) * m + h.mul(b, d);
            }
        }
        let mut p = Self::from_flat_trusted(nm, table);
        p.label = match (&g.label, &h.label) {
            (Some(a), Some(b)) => Some(format!("{a}*{b}")),
            _ => None,
        };
        p
    }

    /// Group generated by permutations of `0..d`, enumerated breadth first.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let d = gens.iter().map(|g| g.len()).max().unwrap_or(0);
        let mut norm = Vec::new();
        for g in gens {
            let mut p: Vec<usize> = (0..d).collect();
            let mut seen = vec![false; d];
            for (i, &v) in g.iter().enumerate() {
                if v >= d || seen[v] {
                    return Err(Error::invalid("generator is not a permutation"));
                }
                seen[v] = true;
                p[i] = v;
            }
            if g.len() < d && (g.len()..d).any(|i| seen[i]) {
                return Err(Error::invalid("generator is not a permutation"));
            }
            norm.push(p);
        }
        let id: Vec<usize> = (0..d).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(id, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in &norm {
                let p: Vec<usize> = (0..d).map(|x| elems[i][g[x]]).collect();
                if !index.contains_key(&p) {
                    if elems.len() >= 256 {
                        return Err(Error::BoundExceeded {
                            what: "permutation group order",
                            limit: 256,
                            actual: 257,
                        });
                    }
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        Ok(Self::from_perm_list(&elems))
    }

    fn from_perm_list(perms: &[Vec<usize>]) -> Self {
        let n = perms.len();
        let index: HashMap<&Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let p: Vec<usize> = (0..perms[a].len()).map(|x| perms[a][perms[b][x]]).collect();
                table[a * n + b] = index[&p];
            }
        }
        Self::from_flat_trusted(n, table)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    /// Equality of multiplication tables, ignoring labels.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.table == other.table
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, g);
        }
        r
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| num_integer::lcm(acc, self.element_order(g)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|g| self.conj(g, x)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls);
        }
        out
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(g, z) == self.mul(z, g)))
            .collect()
    }
}

/// One group per isomorphism class of order at most `max_order` (at most 15).
pub fn small_groups(max_order: usize) -> Result<Vec<FiniteGroup>> {
    if max_order > 15 {
        return Err(Error::invalid("small group list stops at order 15"));
    }
    let c = FiniteGroup::cyclic;
    let x = FiniteGroup::direct_product;
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(c(n));
        match n {
            4 => out.push(x(&c(2), &c(2))),
            6 | 10 | 14 => out.push(FiniteGroup::dihedral(n / 2)),
            8 => {
                out.push(x(&c(4), &c(2)));
                out.push(x(&x(&c(2), &c(2)), &c(2)));
                out.push(FiniteGroup::dihedral(4));
                out.push(FiniteGroup::dicyclic(2)?);
            }
            9 => out.push(x(&c(3), &c(3))),
            12 => {
                out.push(x(&c(6), &c(2)));
                out.push(FiniteGroup::dihedral(6));
                out.push(FiniteGroup::alternating(4)?);
                out.push(FiniteGroup::dicyclic(3)?);
            }
            _ => {}
        }
    }
    Ok(out)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
        out.push(p.clone());
    }
    out
}

fn perm_parity(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut parity = 0;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        parity += len - 1;
    }
    parity % 2
}

/// Permutation of `0..d` from cycles.
pub fn perm_from_cycles(cycles: &[Vec<usize>], degree: usize) -> Result<Vec<usize>> {
    let d = cycles
        .iter()
        .flatten()
        .map(|&x| x + 1)
        .max()
        .unwrap_or(0)
        .max(degree);
    let mut p: Vec<usize> = (0..d).collect();
    let mut seen = vec![false; d];
    for c in cycles {
        for (i, &x) in c.iter().enumerate() {
            if seen[x] {
                return Err(Error::invalid("cycles are not disjoint"));
            }
            seen[x] = true;
            p[x] = c[(i + 1) % c.len()];
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(FiniteGroup::trivial().order(), 1);
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(v.order(), 4);
        assert!((1..4).all(|g| v.inv(g) == g));
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let mut sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(FiniteGroup::alternating(5).unwrap().order(), 60);
        assert_eq!(FiniteGroup::dihedral(4).center().len(), 2);
    }

    #[test]
    fn class_sizes_against_bruteforce() {
        let s4 = FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(s4.order(), 24);
        for cls in s4.conjugacy_classes() {
            let x = cls[0];
            let brute: std::collections::BTreeSet<_> = (0..24).map(|g| s4.conj(g, x)).collect();
            assert_eq!(brute.len(), cls.len());
            assert_eq!(24 / s4.centralizer(x).len(), cls.len());
        }
    }

    #[test]
    fn small_group_list() {
        let gs = small_groups(12).unwrap();
        assert_eq!(gs.len(), 24);
        let q8 = FiniteGroup::dicyclic(2).unwrap();
        assert_eq!((0..8).filter(|&g| q8.element_order(g) == 2).count(), 1);
        assert!(!q8.is_abelian());
        for (i, a) in gs.iter().enumerate() {
            for b in &gs[i + 1..] {
                if a.order() == b.order() {
                    assert!(find_isomorphism(a, b).is_none());
                }
            }
        }
    }

    #[test]
    fn rejects_non_groups() {
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(matches!(
            FiniteGroup::from_table(&bad),
            Err(Error::NotClosed(_))
        ));
        let noid = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(FiniteGroup::from_table(&noid), Err(Error::NoIdentity));
        // A Latin square with identity that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&loop5),
            Err(Error::NonAssociative(..))
        ));
    }

    #[test]
    fn cycles_parse() {
        let p = perm_from_cycles(&[vec![0, 1, 2], vec![3, 4]], 0).unwrap();
        assert_eq!(p, vec![1, 2, 0, 4, 3]);
    }
}
