//! Bisets, bimodule data and invertible bimodule categories.
//!
//! A `(G1, G2)`-biset is stored as a left `G1 × G2`-set with
//! `(a, b)·x = a x b⁻¹`. Bimodule twists are twists on that set for
//! `Ω = ω1 × 1 − 1 × ω2`, split into left, right and mixed parts.

use crate::bounds::{bounds, check};
use crate::cochain::Cochain;
use crate::group::{
    all_isomorphisms, normal_subgroups, FiniteGroup, GroupHom, Quotient, Subgroup,
};
use crate::gset::GSet;
use crate::modcats::{class_orbits, TwistedGSet};
use crate::qz::QZ;
use crate::twisted::twisted_class_set_unchecked;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// `G1 × G2` together with the coordinate maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPair {
    pub g1: FiniteGroup,
    pub g2: FiniteGroup,
    pub product: FiniteGroup,
}

impl GroupPair {
    pub fn new(g1: &FiniteGroup, g2: &FiniteGroup) -> Self {
        GroupPair {
            g1: g1.clone(),
            g2: g2.clone(),
            product: FiniteGroup::direct_product(g1, g2),
        }
    }

    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.g2.order() + b
    }

    #[inline]
    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.g2.order(), p % self.g2.order())
    }

    /// `ω1(a1, a2, a3) − ω2(b1, b2, b3)`.
    pub fn omega(&self, omega1: &Cochain, omega2: &Cochain) -> Cochain {
        Cochain::from_fn(self.product.order(), None, 3, |s, _| {
            let (a, b): (Vec<usize>, Vec<usize>) = s.iter().map(|&p| self.split(p)).unzip();
            omega1.at(&a, 0) - omega2.at(&b, 0)
        })
    }
}

/// `(N1, N2, f: G1/N1 → G2/N2)` with its fiber product.
#[derive(Clone, Debug)]
pub struct BisetTriple {
    pub n1: Subgroup,
    pub n2: Subgroup,
    pub q1: Quotient,
    pub q2: Quotient,
    pub f: GroupHom,
    /// `G1 ×_f G2` inside `G1 × G2`.
    pub fiber: Subgroup,
}

/// Triples up to `f ~ Ad(b) ∘ f`, i.e. bitransitive bisets up to isomorphism.
pub fn bitransitive_triples(pair: &GroupPair) -> Result<Vec<BisetTriple>> {
    let (g1, g2) = (&pair.g1, &pair.g2);
    let mut out = Vec::new();
    for n1 in normal_subgroups(g1) {
        for n2 in normal_subgroups(g2) {
            if g1.order() / n1.order() != g2.order() / n2.order() {
                continue;
            }
            let q1 = Quotient::new(g1, &n1)?;
            let q2 = Quotient::new(g2, &n2)?;
            let mut found: Vec<Subgroup> = Vec::new();
            for f in all_isomorphisms(&q1.group, &q2.group)? {
                let fiber = fiber_product(pair, &q1, &q2, &f);
                if found.iter().any(|k| conjugate_in_second(pair, k, &fiber)) {
                    continue;
                }
                found.push(fiber.clone());
                out.push(BisetTriple {
                    n1: n1.clone(),
                    n2: n2.clone(),
                    q1: q1.clone(),
                    q2: q2.clone(),
                    f,
                    fiber,
                });
            }
        }
    }
    Ok(out)
}

fn fiber_product(pair: &GroupPair, q1: &Quotient, q2: &Quotient, f: &GroupHom) -> Subgroup {
    let mut e = Vec::new();
    for a in 0..pair.g1.order() {
        for b in 0..pair.g2.order() {
            if f.apply(q1.projection[a]) == q2.projection[b] {
                e.push(pair.pair(a, b));
            }
        }
    }
    Subgroup::from_sorted(e)
}

fn conjugate_in_second(pair: &GroupPair, k: &Subgroup, other: &Subgroup) -> bool {
    (0..pair.g2.order()).any(|b| k.conjugate(&pair.product, pair.pair(0, b)) == *other)
}

/// `(X, μ_l, μ_r, μ_m)` read off a twist `μ` on the `G1 × G2`-set `X`.
#[derive(Clone, Debug)]
pub struct BimoduleData {
    pub pair: GroupPair,
    pub omega1: Cochain,
    pub omega2: Cochain,
    /// The underlying module category over `(G1 × G2, Ω)`.
    pub module: TwistedGSet,
    /// `μ_l(σ, τ; x)`.
    pub mu_l: Cochain,
    mu_r: Vec<QZ>,
    mu_m: Vec<QZ>,
}

impl BimoduleData {
    pub fn from_module(
        pair: &GroupPair,
        omega1: &Cochain,
        omega2: &Cochain,
        module: TwistedGSet,
    ) -> Self {
        let (n1, n2) = (pair.g1.order(), pair.g2.order());
        let xs = module.set.size();
        let mu = &module.mu;
        let l = |a: usize| pair.pair(a, 0);
        let r = |b: usize| pair.pair(0, pair.g2.inv(b));
        let mu_l = Cochain::from_fn(n1, Some(xs), 2, |s, x| mu.at(&[l(s[0]), l(s[1])], x));
        let mut mu_r = vec![QZ::ZERO; xs * n2 * n2];
        for x in 0..xs {
            for a in 0..n2 {
                for b in 0..n2 {
                    mu_r[(x * n2 + a) * n2 + b] = -mu.at(&[r(b), r(a)], x);
                }
            }
        }
        let mut mu_m = vec![QZ::ZERO; n1 * xs * n2];
        for s in 0..n1 {
            for x in 0..xs {
                for b in 0..n2 {
                    mu_m[(s * xs + x) * n2 + b] = mu.at(&[l(s), r(b)], x) - mu.at(&[r(b), l(s)], x);
                }
            }
        }
        BimoduleData {
            pair: pair.clone(),
            omega1: omega1.clone(),
            omega2: omega2.clone(),
            module,
            mu_l,
            mu_r,
            mu_m,
        }
    }

    pub fn set_size(&self) -> usize {
        self.module.set.size()
    }

    /// `σ x`.
    pub fn left(&self, s: usize, x: usize) -> usize {
        self.module.set.act(self.pair.pair(s, 0), x)
    }

    /// `x ρ`.
    pub fn right(&self, x: usize, r: usize) -> usize {
        self.module
            .set
            .act(self.pair.pair(0, self.pair.g2.inv(r)), x)
    }

    pub fn mu_r(&self, x: usize, r: usize, f: usize) -> QZ {
        let n2 = self.pair.g2.order();
        self.mu_r[(x * n2 + r) * n2 + f]
    }

    pub fn mu_m(&self, s: usize, x: usize, r: usize) -> QZ {
        let (xs, n2) = (self.set_size(), self.pair.g2.order());
        self.mu_m[(s * xs + x) * n2 + r]
    }

    /// Residuals of the two mixed equations over all tuples; both must be empty.
    pub fn mixed_violations(&self) -> (usize, usize) {
        let (g1, g2) = (&self.pair.g1, &self.pair.g2);
        let xs = self.set_size();
        let mut bad = (0, 0);
        for s in 0..g1.order() {
            for x in 0..xs {
                for r in 0..g2.order() {
                    for f in 0..g2.order() {
                        let lhs = self.mu_r(self.left(s, x), r, f) + self.mu_m(s, x, g2.mul(r, f));
                        let rhs = self.mu_m(s, x, r)
                            + self.mu_m(s, self.right(x, r), f)
                            + self.mu_r(x, r, f);
                        bad.0 += usize::from(lhs != rhs);
                    }
                }
            }
        }
        for s in 0..g1.order() {
            for t in 0..g1.order() {
                for x in 0..xs {
                    for f in 0..g2.order() {
                        let lhs =
                            self.mu_m(g1.mul(s, t), x, f) + self.mu_l.at(&[s, t], self.right(x, f));
                        let rhs = self.mu_l.at(&[s, t], x)
                            + self.mu_m(s, self.left(t, x), f)
                            + self.mu_m(t, x, f);
                        bad.1 += usize::from(lhs != rhs);
                    }
                }
            }
        }
        bad
    }

    /// Count of tuples where the left or right associativity fails.
    pub fn side_violations(&self) -> (usize, usize) {
        let (g1, g2) = (&self.pair.g1, &self.pair.g2);
        let xs = self.set_size();
        let mut bad = (0, 0);
        for a in 0..g1.order() {
            for b in 0..g1.order() {
                for c in 0..g1.order() {
                    for x in 0..xs {
                        let d = self.mu_l.at(&[b, c], x) - self.mu_l.at(&[g1.mul(a, b), c], x)
                            + self.mu_l.at(&[a, g1.mul(b, c)], x)
                            - self.mu_l.at(&[a, b], self.left(c, x));
                        bad.0 += usize::from(d != self.omega1.at(&[a, b, c], 0));
                    }
                }
            }
        }
        for x in 0..xs {
            for r in 0..g2.order() {
                for f in 0..g2.order() {
                    for c in 0..g2.order() {
                        let d = self.mu_r(self.right(x, r), f, c) - self.mu_r(x, g2.mul(r, f), c)
                            + self.mu_r(x, r, g2.mul(f, c))
                            - self.mu_r(x, r, f);
                        let w = -self.omega2.at(&[g2.inv(c), g2.inv(f), g2.inv(r)], 0);
                        bad.1 += usize::from(d != w);
                    }
                }
            }
        }
        bad
    }

    /// `μ_m(n1, x, n2)` for `n1 ∈ Stab_l(x)`, `n2 ∈ Stab_r(x)`.
    pub fn pairing(&self, x: usize) -> (Vec<usize>, Vec<usize>, Vec<Vec<QZ>>) {
        let sl: Vec<usize> = (0..self.pair.g1.order())
            .filter(|&s| self.left(s, x) == x)
            .collect();
        let sr: Vec<usize> = (0..self.pair.g2.order())
            .filter(|&r| self.right(x, r) == x)
            .collect();
        let m = sl
            .iter()
            .map(|&a| sr.iter().map(|&b| self.mu_m(a, x, b)).collect())
            .collect();
        (sl, sr, m)
    }

    pub fn is_bitransitive(&self) -> bool {
        let xs = self.set_size();
        let orbit = |act: &dyn Fn(usize) -> usize, n: usize| {
            let mut seen = vec![false; xs];
            (0..n).for_each(|g| seen[act(g)] = true);
            seen.into_iter().all(|b| b)
        };
        orbit(&|s| self.left(s, 0), self.pair.g1.order())
            && orbit(&|r| self.right(0, r), self.pair.g2.order())
    }

    /// The `(G2, G1)`-bimodule on the same set with `ρ x σ := σ⁻¹ x ρ⁻¹`.
    pub fn opposite(&self) -> Result<BimoduleData> {
        let pair = GroupPair::new(&self.pair.g2, &self.pair.g1);
        let swap: Vec<usize> = (0..pair.product.order())
            .map(|p| {
                let (b, a) = pair.split(p);
                self.pair.pair(a, b)
            })
            .collect();
        let set = &self.module.set;
        let action: Vec<usize> = (0..pair.product.order())
            .flat_map(|p| (0..set.size()).map(move |x| (p, x)))
            .map(|(p, x)| set.act(swap[p], x))
            .collect();
        let set = GSet::new(&pair.product, set.size(), action)?;
        let omega = pair.omega(&self.omega2, &self.omega1);
        let mu = -&self.module.mu.pullback(&swap);
        let module = TwistedGSet::new(pair.product.clone(), omega, set, mu)?;
        Ok(BimoduleData::from_module(
            &pair,
            &self.omega2,
            &self.omega1,
            module,
        ))
    }
}

/// Non-degeneracy of a `Q/Z`-valued matrix: both radicals trivial.
pub fn nondegenerate(m: &[Vec<QZ>]) -> bool {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let left = (1..rows).all(|i| m[i].iter().any(|v| !v.is_zero()));
    let right = (1..cols).all(|j| m.iter().any(|r| !r[j].is_zero()));
    rows == cols && left && right
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertibilityReport {
    pub invertible: bool,
    pub bitransitive: bool,
    /// Non-degeneracy at each point.
    pub nondegenerate_at: Vec<bool>,
    /// Pairing at point 0.
    pub pairing: Vec<Vec<QZ>>,
}

pub fn is_invertible_bimodule(b: &BimoduleData) -> InvertibilityReport {
    let bitransitive = b.is_bitransitive();
    let nondegenerate_at: Vec<bool> = (0..b.set_size())
        .map(|x| nondegenerate(&b.pairing(x).2))
        .collect();
    InvertibilityReport {
        invertible: bitransitive && nondegenerate_at.iter().all(|&t| t),
        bitransitive,
        nondegenerate_at,
        pairing: b.pairing(0).2,
    }
}

/// One bimodule per element of the twisted class set over the triple's biset.
pub fn bimodule_classes(
    pair: &GroupPair,
    omega1: &Cochain,
    omega2: &Cochain,
    t: &BisetTriple,
) -> Result<Vec<BimoduleData>> {
    check("fiber product", t.fiber.order(), bounds().fiber_product)?;
    let (set, ts, omega) = triple_classes(pair, omega1, omega2, t)?;
    Ok(ts
        .classes
        .into_iter()
        .map(|mu| bimodule(pair, omega1, omega2, &omega, &set, mu))
        .collect())
}

fn triple_classes(
    pair: &GroupPair,
    omega1: &Cochain,
    omega2: &Cochain,
    t: &BisetTriple,
) -> Result<(GSet, crate::twisted::TwistedClassSet, Cochain)> {
    check_cocycles(pair, omega1, omega2)?;
    let omega = pair.omega(omega1, omega2);
    let set = GSet::cosets(&pair.product, &t.fiber);
    let ts = twisted_class_set_unchecked(&pair.product, &omega, &set)?;
    Ok((set, ts, omega))
}

/// `Ω = ω1 − ω2` is a cocycle whenever both factors are; checking them
/// separately avoids the differential on `G1 × G2`.
fn check_cocycles(pair: &GroupPair, omega1: &Cochain, omega2: &Cochain) -> Result<()> {
    for (g, w) in [(&pair.g1, omega1), (&pair.g2, omega2)] {
        if w.n() != 3 || w.m() != 0 || w.group_order() != g.order() {
            return Err(Error::invalid("ω must be a 3-cochain on its group"));
        }
        if !w.is_normalized() || !crate::cochain::delta(g, None, w)?.is_zero() {
            return Err(Error::invalid("ω is not a normalized cocycle"));
        }
    }
    Ok(())
}

fn bimodule(
    pair: &GroupPair,
    omega1: &Cochain,
    omega2: &Cochain,
    omega: &Cochain,
    set: &GSet,
    mu: Cochain,
) -> BimoduleData {
    let module = TwistedGSet {
        group: pair.product.clone(),
        omega: omega.clone(),
        set: set.clone(),
        mu,
    };
    BimoduleData::from_module(pair, omega1, omega2, module)
}

/// An invertible bimodule labelled by its quadruple.
#[derive(Clone, Debug)]
pub struct BrPicElement {
    pub a1: Subgroup,
    pub a2: Subgroup,
    pub f: GroupHom,
    /// Index of the twist in the class set of the triple's biset.
    pub class_index: usize,
    pub data: BimoduleData,
    pub pairing: Vec<Vec<QZ>>,
}

/// Invertible `(Vec_{G1}^{ω1}, Vec_{G2}^{ω2})`-bimodules up to equivalence.
pub fn enumerate_invertible_bimodules(
    pair: &GroupPair,
    omega1: &Cochain,
    omega2: &Cochain,
) -> Result<Vec<BrPicElement>> {
    if pair.g1.order() != pair.g2.order() {
        return Ok(Vec::new());
    }
    // The triple with trivial kernels always occurs.
    check("fiber product", pair.g1.order(), bounds().fiber_product)?;
    let triples: Vec<BisetTriple> = bitransitive_triples(pair)?
        .into_iter()
        .filter(|t| t.n1.is_abelian(&pair.g1) && t.n2.is_abelian(&pair.g2))
        .collect();
    for t in &triples {
        check("fiber product", t.fiber.order(), bounds().fiber_product)?;
    }
    let per_triple = crate::par::map(&triples, |t| -> Result<Vec<BrPicElement>> {
        let (set, ts, omega) = triple_classes(pair, omega1, omega2, t)?;
        let mut out = Vec::new();
        for (i, _) in class_orbits(&set, &ts)? {
            let data = bimodule(pair, omega1, omega2, &omega, &set, ts.classes[i].clone());
            let rep = is_invertible_bimodule(&data);
            if rep.invertible {
                out.push(BrPicElement {
                    a1: t.n1.clone(),
                    a2: t.n2.clone(),
                    f: t.f.clone(),
                    class_index: i,
                    data,
                    pairing: rep.pairing,
                });
            }
        }
        Ok(out)
    });
    let mut out = Vec::new();
    for r in per_triple {
        out.extend(r?);
    }
    Ok(out)
}

/// `BrPic(Vec_G^ω)` as a list of classes; element 0 is the identity bimodule.
pub fn enumerate_brpic(g: &FiniteGroup, omega: &Cochain) -> Result<Vec<BrPicElement>> {
    let pair = GroupPair::new(g, g);
    let mut els = enumerate_invertible_bimodules(&pair, omega, omega)?;
    let id = identity_bimodule(g, omega)?;
    let pos = identify(&els, &id)?.ok_or_else(|| Error::invalid("identity bimodule not found"))?;
    els.swap(0, pos);
    Ok(els)
}

/// `Vec_G^ω` as a bimodule over itself: the diagonal biset.
pub fn identity_bimodule(g: &FiniteGroup, omega: &Cochain) -> Result<BimoduleData> {
    let pair = GroupPair::new(g, g);
    let diag = Subgroup::from_sorted((0..g.order()).map(|a| pair.pair(a, a)).collect());
    let omega_p = pair.omega(omega, omega);
    let set = GSet::cosets(&pair.product, &diag);
    check_cocycles(&pair, omega, omega)?;
    let ts = twisted_class_set_unchecked(&pair.product, &omega_p, &set)?;
    let mu = ts
        .classes
        .into_iter()
        .next()
        .ok_or_else(|| Error::invalid("diagonal is obstructed"))?;
    Ok(bimodule(&pair, omega, omega, &omega_p, &set, mu))
}

/// Index of the element equivalent to `b`, if any.
pub fn identify(els: &[BrPicElement], b: &BimoduleData) -> Result<Option<usize>> {
    for (i, e) in els.iter().enumerate() {
        if e.data.module.set.size() == b.module.set.size()
            && crate::modcats::module_cat_equivalent(&e.data.module, &b.module)?
        {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
