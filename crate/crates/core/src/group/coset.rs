use super::subgroup::Subgroup;
use super::FiniteGroup;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Left cosets `xF`, each sorted, ordered by smallest element.
pub fn left_cosets(g: &FiniteGroup, f: &Subgroup) -> Vec<Vec<usize>> {
    partition(g.order(), |x| {
        f.elements().iter().map(|&h| g.mul(x, h)).collect()
    })
}

/// Right cosets `Fx`, each sorted, ordered by smallest element.
pub fn right_cosets(g: &FiniteGroup, f: &Subgroup) -> Vec<Vec<usize>> {
    partition(g.order(), |x| {
        f.elements().iter().map(|&h| g.mul(h, x)).collect()
    })
}

/// Double cosets `H1 x H2`, each sorted, ordered by smallest element.
pub fn double_cosets(g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup) -> Vec<Vec<usize>> {
    partition(g.order(), |x| {
        let mut v = Vec::new();
        for &a in h1.elements() {
            for &b in h2.elements() {
                v.push(g.mul(g.mul(a, x), b));
            }
        }
        v
    })
}

fn partition(n: usize, block: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut b = block(x);
        b.sort_unstable();
        b.dedup();
        for &y in &b {
            seen[y] = true;
        }
        out.push(b);
    }
    out
}

/// `G = F·Q` as a generalized crossed product.
///
/// Indices into `F` are positions in `f.elements()`; indices into `Q` are
/// positions in `transversal`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedFactorization {
    pub f: Subgroup,
    pub transversal: Vec<usize>,
    /// `q ◁ x`, row-major over `Q × F`.
    pub action_right: Vec<usize>,
    /// `q ▷ x`, row-major over `Q × F`.
    pub action_left: Vec<usize>,
    /// `θ(p, q)`, row-major over `Q × Q`.
    pub theta: Vec<usize>,
    /// `p.q`, row-major over `Q × Q`.
    pub dot: Vec<usize>,
}

impl CrossedFactorization {
    pub fn new(g: &FiniteGroup, f: &Subgroup) -> Result<Self> {
        let q = simultaneous_transversal(g, f);
        let (nf, nq) = (f.order(), q.len());
        // Each element is uniquely u·s with u in F, s in Q.
        let mut split = vec![(usize::MAX, usize::MAX); g.order()];
        for (j, &s) in q.iter().enumerate() {
            for (i, &u) in f.elements().iter().enumerate() {
                split[g.mul(u, s)] = (i, j);
            }
        }
        if split.iter().any(|&(i, _)| i == usize::MAX) {
            return Err(Error::invalid("transversal does not factor G"));
        }
        let mut action_right = vec![0; nq * nf];
        let mut action_left = vec![0; nq * nf];
        for j in 0..nq {
            for i in 0..nf {
                let (u, s) = split[g.mul(q[j], f.elements()[i])];
                action_left[j * nf + i] = u;
                action_right[j * nf + i] = s;
            }
        }
        let mut theta = vec![0; nq * nq];
        let mut dot = vec![0; nq * nq];
        for a in 0..nq {
            for b in 0..nq {
                let (u, s) = split[g.mul(q[a], q[b])];
                theta[a * nq + b] = u;
                dot[a * nq + b] = s;
            }
        }
        Ok(CrossedFactorization {
            f: f.clone(),
            transversal: q,
            action_right,
            action_left,
            theta,
            dot,
        })
    }

    /// The group `F#Q` on pairs `(u, s)`, index `u * |Q| + s`.
    pub fn reconstruct(&self, g: &FiniteGroup) -> Result<FiniteGroup> {
        let fg = self.f.as_group(g);
        let (nf, nq) = (self.f.order(), self.transversal.len());
        let n = nf * nq;
        let mut table = vec![0; n * n];
        for x in 0..n {
            let (u, s) = (x / nq, x % nq);
            for y in 0..n {
                let (v, t) = (y / nq, y % nq);
                // (u,s)(v,t) = (u (s▷v) θ(s◁v, t), (s◁v).t)
                let sv = self.action_right[s * nf + v];
                let w = fg.mul(
                    fg.mul(u, self.action_left[s * nf + v]),
                    self.theta[sv * nq + t],
                );
                table[x * n + y] = w * nq + self.dot[sv * nq + t];
            }
        }
        FiniteGroup::from_flat(n, table)
    }
}

/// One element per double coset `FxF`, split as `q_j = s_j x t_j` so that
/// `q_j F` and `F q_j` run over the left and right cosets inside `FxF`.
pub fn simultaneous_transversal(g: &FiniteGroup, f: &Subgroup) -> Vec<usize> {
    let mut q = Vec::new();
    for dc in double_cosets(g, f, f) {
        let x = dc[0];
        let xinv = g.inv(x);
        let k_left = f.intersection(&f.conjugate(g, x));
        let k_right = f.intersection(&f.conjugate(g, xinv));
        let s: Vec<usize> = left_cosets_in(g, f, &k_left, true);
        let t: Vec<usize> = left_cosets_in(g, f, &k_right, false);
        for (sj, tj) in s.iter().zip(&t) {
            q.push(g.mul(g.mul(*sj, x), *tj));
        }
    }
    q
}

/// Smallest representatives of cosets of `k` inside `f` (left `sK` or right `Kt`).
fn left_cosets_in(g: &FiniteGroup, f: &Subgroup, k: &Subgroup, left: bool) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for &x in f.elements() {
        if seen.contains(&x) {
            continue;
        }
        reps.push(x);
        for &h in k.elements() {
            seen.insert(if left { g.mul(x, h) } else { g.mul(h, x) });
        }
    }
    reps
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetReport {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    pub double: Option<Vec<Vec<usize>>>,
    pub factorization: CrossedFactorization,
}

pub fn coset_machinery(
    g: &FiniteGroup,
    f: &Subgroup,
    h2: Option<&Subgroup>,
) -> Result<CosetReport> {
    Ok(CosetReport {
        left: left_cosets(g, f),
        right: right_cosets(g, f),
        double: h2.map(|h| double_cosets(g, f, h)),
        factorization: CrossedFactorization::new(g, f)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;

    #[test]
    fn s3_over_a3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a3 = Subgroup::from_elements(&s3, &[0, 3, 4]).unwrap();
        let cf = CrossedFactorization::new(&s3, &a3).unwrap();
        assert_eq!(cf.transversal.len(), 2);
        let r = cf.reconstruct(&s3).unwrap();
        assert!(find_isomorphism(&r, &s3).is_some());
    }

    #[test]
    fn whole_group() {
        let d4 = FiniteGroup::dihedral(4);
        let cf = CrossedFactorization::new(&d4, &Subgroup::whole(&d4)).unwrap();
        assert_eq!(cf.transversal, vec![0]);
    }

    #[test]
    fn z4_not_klein() {
        let z4 = FiniteGroup::cyclic(4);
        let f = Subgroup::from_elements(&z4, &[0, 2]).unwrap();
        let cf = CrossedFactorization::new(&z4, &f).unwrap();
        assert_eq!(cf.transversal.len(), 2);
        let r = cf.reconstruct(&z4).unwrap();
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert!(find_isomorphism(&r, &z4).is_some());
        assert!(find_isomorphism(&r, &v).is_none());
    }

    #[test]
    fn transversal_is_two_sided() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let f = Subgroup::generated(&s4, &[1, 6]);
        let q = simultaneous_transversal(&s4, &f);
        assert_eq!(q.len() * f.order(), 24);
        let mut l: Vec<usize> = q
            .iter()
            .map(|&x| {
                left_cosets(&s4, &f)
                    .iter()
                    .position(|c| c.contains(&x))
                    .unwrap()
            })
            .collect();
        let mut r: Vec<usize> = q
            .iter()
            .map(|&x| {
                right_cosets(&s4, &f)
                    .iter()
                    .position(|c| c.contains(&x))
                    .unwrap()
            })
            .collect();
        l.sort();
        r.sort();
        l.dedup();
        r.dedup();
        assert_eq!(l.len(), q.len());
        assert_eq!(r.len(), q.len());
    }
}
