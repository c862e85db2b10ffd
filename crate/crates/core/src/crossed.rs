//! Crossed products `G #_α k^X`, their simple modules, functor categories
//! between module categories and relative tensor products of bimodules.
//!
//! Projective representations are kept monomial: a permutation together with
//! a `Q/Z` phase per basis vector, so all phases are read off exactly.

use crate::bimodcats::{BimoduleData, GroupPair};
use crate::cochain::{delta, Cochain};
use crate::cohomology::{cohomology_group, solve_coboundary};
use crate::group::{FiniteGroup, Subgroup};
use crate::gset::{GSet, Transversal};
use crate::modcats::TwistedGSet;
use crate::qz::QZ;
use crate::twisted::twisted_transport;
use crate::{Error, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// `G #_α k^X` with basis `g # e_x`.
#[derive(Clone, Debug)]
pub struct CrossedAlgebra {
    pub group: FiniteGroup,
    pub set: GSet,
    pub alpha: Cochain,
}

impl CrossedAlgebra {
    pub fn new(group: FiniteGroup, set: GSet, alpha: Cochain) -> Result<Self> {
        if alpha.n() != 2
            || alpha.m() != 1
            || alpha.set_size() != set.size()
            || alpha.group_order() != group.order()
        {
            return Err(Error::invalid("α must be a 2-cochain on the G-set"));
        }
        if !alpha.is_normalized() {
            return Err(Error::invalid("α is not normalized"));
        }
        if !delta(&group, Some(&set), &alpha)?.is_zero() {
            return Err(Error::invalid("α is not a cocycle"));
        }
        Ok(CrossedAlgebra { group, set, alpha })
    }

    pub fn dim(&self) -> usize {
        self.group.order() * self.set.size()
    }

    /// `(g # e_s)(h # e_t) = δ_{s, ht} α(g, h; t) (gh # e_t)`.
    pub fn multiply(&self, a: (usize, usize), b: (usize, usize)) -> Option<(usize, usize, QZ)> {
        let ((g, s), (h, t)) = (a, b);
        (s == self.set.act(h, t)).then(|| (self.group.mul(g, h), t, self.alpha.at(&[g, h], t)))
    }

    /// Basis triples on which the product fails to associate. Exhaustive over
    /// the support when `|G|·|X| ≤ 256`, otherwise `samples` random triples.
    pub fn associativity_violations(&self, samples: usize, seed: u64) -> usize {
        let (n, xs) = (self.group.order(), self.set.size());
        let check = |g: usize, h: usize, k: usize, u: usize| -> bool {
            let t = self.set.act(k, u);
            let s = self.set.act(h, t);
            let (gh, _, p) = self.multiply((g, s), (h, t)).expect("supported");
            let left = self.multiply((gh, t), (k, u)).map(|(a, b, q)| (a, b, p + q));
            let (hk, _, q) = self.multiply((h, t), (k, u)).expect("supported");
            let right = self
                .multiply((g, s), (hk, u))
                .map(|(a, b, r)| (a, b, q + r));
            left == right
        };
        let mut bad = 0;
        if n * xs <= 256 {
            for g in 0..n {
                for h in 0..n {
                    for k in 0..n {
                        for u in 0..xs {
                            bad += usize::from(!check(g, h, k, u));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..samples {
                let (g, h, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                bad += usize::from(!check(g, h, k, rng.gen_range(0..xs)));
            }
        }
        bad
    }
}

/// A simple module of a crossed product: an orbit and an irreducible
/// projective representation of its stabilizer.
#[derive(Clone, Debug, Serialize)]
pub struct SimpleLabel {
    pub orbit: usize,
    pub representative: usize,
    pub orbit_size: usize,
    pub stabilizer: Subgroup,
    /// `α(·, ·; x)` on the stabilizer, indexed by positions.
    pub alpha_rep: Cochain,
    pub irrep: usize,
    /// Known when the stabilizer is abelian.
    pub dim: Option<usize>,
}

/// Conjugacy classes of `h` made of `α`-regular elements: `g` with
/// `α(g, k) = α(k, g)` for all `k` commuting with `g`.
pub fn regular_classes(h: &FiniteGroup, alpha: &Cochain) -> Vec<Vec<usize>> {
    h.conjugacy_classes()
        .into_iter()
        .filter(|c| {
            let g = c[0];
            h.centralizer(g)
                .into_iter()
                .all(|k| alpha.at(&[g, k], 0) == alpha.at(&[k, g], 0))
        })
        .collect()
}

pub fn simples_of_crossed_product(a: &CrossedAlgebra) -> Result<Vec<SimpleLabel>> {
    orbit_simples(&a.group, &a.set, |s, t, x| a.alpha.at(&[s, t], x))
}

/// Clifford decomposition: the cocycle is only evaluated on stabilizers.
fn orbit_simples(
    g: &FiniteGroup,
    set: &GSet,
    alpha: impl Fn(usize, usize, usize) -> QZ + Sync + Send,
) -> Result<Vec<SimpleLabel>> {
    let orbits = set.orbits();
    let per_orbit = crate::par::map(&orbits, |o| -> Result<Vec<SimpleLabel>> {
        let x = o[0];
        let stab = set.stabilizer(x);
        let sg = stab.as_group(g);
        let e = stab.elements();
        let alpha_rep = Cochain::from_fn(stab.order(), None, 2, |a, _| alpha(e[a[0]], e[a[1]], x));
        let count = regular_classes(&sg, &alpha_rep).len();
        let dims: Vec<Option<usize>> = if sg.is_abelian() {
            let reps = monomial_irreps(&sg, &alpha_rep)?;
            if reps.len() != count {
                return Err(Error::invalid("regular class count disagrees with irreps"));
            }
            reps.iter().map(|r| Some(r.dim)).collect()
        } else {
            vec![None; count]
        };
        Ok(dims
            .into_iter()
            .enumerate()
            .map(|(i, dim)| SimpleLabel {
                orbit: 0,
                representative: x,
                orbit_size: o.len(),
                stabilizer: stab.clone(),
                alpha_rep: alpha_rep.clone(),
                irrep: i,
                dim,
            })
            .collect())
    });
    let mut out = Vec::new();
    for (i, r) in per_orbit.into_iter().enumerate() {
        out.extend(r?.into_iter().map(|mut l| {
            l.orbit = i;
            l
        }));
    }
    Ok(out)
}

/// `e_i ↦ e(phase[i]) e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub phase: Vec<QZ>,
}

impl MonomialMatrix {
    pub fn identity(d: usize) -> Self {
        MonomialMatrix {
            perm: (0..d).collect(),
            phase: vec![QZ::ZERO; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut phase = vec![QZ::ZERO; d];
        for i in 0..d {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            phase[i] = other.phase[i] + self.phase[j];
        }
        MonomialMatrix { perm, phase }
    }

    pub fn scaled(&self, c: QZ) -> MonomialMatrix {
        MonomialMatrix {
            perm: self.perm.clone(),
            phase: self.phase.iter().map(|&p| p + c).collect(),
        }
    }

    /// `c` with `self = e(c)·other`, if the two are proportional.
    pub fn ratio(&self, other: &MonomialMatrix) -> Option<QZ> {
        if self.perm != other.perm {
            return None;
        }
        let c = self.phase[0] - other.phase[0];
        (0..self.dim())
            .all(|i| self.phase[i] - other.phase[i] == c)
            .then_some(c)
    }

    /// The scalar, if this is a scalar matrix.
    pub fn scalar(&self) -> Option<QZ> {
        self.ratio(&MonomialMatrix::identity(self.dim()))
    }
}

/// A projective representation by monomial matrices, one per group element.
#[derive(Clone, Debug, Serialize)]
pub struct MonomialRep {
    pub dim: usize,
    pub matrices: Vec<MonomialMatrix>,
}

impl MonomialRep {
    /// `ρ(g)ρ(h) = e(α(g, h)) ρ(gh)` for all pairs.
    pub fn verify(&self, g: &FiniteGroup, alpha: &Cochain) -> bool {
        let n = g.order();
        self.matrices.len() == n
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    self.matrices[a].mul(&self.matrices[b])
                        == self.matrices[g.mul(a, b)].scaled(alpha.at(&[a, b], 0))
                })
            })
    }
}

/// Radical of the alternating form `α(a, b) − α(b, a)` on an abelian group.
fn radical(a: &FiniteGroup, alpha: &Cochain) -> Vec<usize> {
    let n = a.order();
    (0..n)
        .filter(|&x| (0..n).all(|y| alpha.at(&[x, y], 0) == alpha.at(&[y, x], 0)))
        .collect()
}

/// All irreducible `α`-projective representations of an abelian group,
/// induced from characters of a maximal isotropic subgroup.
pub fn monomial_irreps(a: &FiniteGroup, alpha: &Cochain) -> Result<Vec<MonomialRep>> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if alpha.n() != 2 || alpha.m() != 0 || alpha.group_order() != a.order() {
        return Err(Error::invalid("α must be a 2-cochain on the group"));
    }
    let n = a.order();
    let form = |x: usize, y: usize| alpha.at(&[x, y], 0) - alpha.at(&[y, x], 0);
    let rad = Subgroup::from_sorted(radical(a, alpha));
    let mut l = rad.clone();
    for x in 0..n {
        if !l.contains(x) && l.elements().iter().all(|&y| form(x, y).is_zero()) {
            l = l.join(a, &Subgroup::generated(a, &[x]));
        }
    }
    let lg = l.as_group(a);
    let c = solve_coboundary(&lg, None, &alpha.restrict(&l))?
        .ok_or_else(|| Error::invalid("α is not a coboundary on an isotropic subgroup"))?;
    let rad_pos: Vec<usize> = rad
        .elements()
        .iter()
        .map(|&r| l.position(r).expect("radical lies in L"))
        .collect();
    let mut chars: BTreeMap<Vec<QZ>, Cochain> = BTreeMap::new();
    for chi in cohomology_group(&lg, 1)?.elements() {
        let key: Vec<QZ> = rad_pos.iter().map(|&p| chi.at(&[p], 0)).collect();
        chars.entry(key).or_insert(chi);
    }
    if chars.len() != rad.order() {
        return Err(Error::invalid("characters do not separate the radical"));
    }
    // Transversal of A/L by smallest elements; y = t_j · l.
    let mut reps: Vec<usize> = Vec::new();
    let mut coset = vec![usize::MAX; n];
    let mut lpart = vec![0; n];
    for y in 0..n {
        if coset[y] != usize::MAX {
            continue;
        }
        let j = reps.len();
        reps.push(y);
        for (p, &e) in l.elements().iter().enumerate() {
            let z = a.mul(y, e);
            coset[z] = j;
            lpart[z] = p;
        }
    }
    let d = reps.len();
    let mut out = Vec::with_capacity(chars.len());
    for chi in chars.values() {
        let v = |p: usize| c.at(&[p], 0) + chi.at(&[p], 0);
        let matrices = (0..n)
            .map(|g| {
                let mut perm = vec![0; d];
                let mut phase = vec![QZ::ZERO; d];
                for (i, &t) in reps.iter().enumerate() {
                    let y = a.mul(g, t);
                    let (j, p) = (coset[y], lpart[y]);
                    perm[i] = j;
                    phase[i] = alpha.at(&[g, t], 0) - alpha.at(&[reps[j], l.elements()[p]], 0)
                        + v(p);
                }
                MonomialMatrix { perm, phase }
            })
            .collect();
        let rep = MonomialRep { dim: d, matrices };
        if !rep.verify(a, alpha) {
            return Err(Error::invalid("induced representation fails the twisted relation"));
        }
        out.push(rep);
    }
    if out.len() * d * d != n {
        return Err(Error::invalid("Σ d² differs from |A|"));
    }
    Ok(out)
}

/// `Fun_C(M1, M2)` for pointed module categories over the same `(G, ω)`.
#[derive(Clone, Debug)]
pub struct HomCategory {
    /// `G` acting diagonally on `X × Y`, point `(x, y)` at `x·|Y| + y`.
    pub set: GSet,
    /// Simple modules of `G #_α k^{X × Y}` with
    /// `α(g, h; (x, y)) = μ_Y(g, h; y) − μ_X(g, h; x)`.
    pub simples: Vec<SimpleLabel>,
    pub rank: usize,
    /// Simple functors that are equivalences.
    pub invertible: usize,
}

fn product_set(g: usize, x: &GSet, y: &GSet) -> GSet {
    let (xs, ys) = (x.size(), y.size());
    let mut action = Vec::with_capacity(g * xs * ys);
    for s in 0..g {
        for i in 0..xs {
            for j in 0..ys {
                action.push(x.act(s, i) * ys + y.act(s, j));
            }
        }
    }
    GSet::from_raw(g, xs * ys, action)
}

pub fn hom_category_simples(m1: &TwistedGSet, m2: &TwistedGSet) -> Result<HomCategory> {
    if !m1.group.same_table(&m2.group) || m1.omega != m2.omega {
        return Err(Error::MiddleMismatch);
    }
    let g = &m1.group;
    let (xs, ys) = (m1.set.size(), m2.set.size());
    let set = product_set(g.order(), &m1.set, &m2.set);
    let simples = orbit_simples(g, &set, |s, t, z| {
        m2.mu.at(&[s, t], z % ys) - m1.mu.at(&[s, t], z / ys)
    })?;
    let mut invertible = 0;
    if xs == ys {
        let mut last = usize::MAX;
        for s in &simples {
            if s.orbit == last || s.orbit_size != xs {
                continue;
            }
            last = s.orbit;
            let sg = s.stabilizer.as_group(g);
            if solve_coboundary(&sg, None, &s.alpha_rep)?.is_some() {
                invertible += cohomology_group(&sg, 1)?.order() as usize;
            }
        }
    }
    Ok(HomCategory {
        set,
        rank: simples.len(),
        simples,
        invertible,
    })
}

/// `Z(Vec_G^ω)` as the endomorphisms of the regular bimodule over `G × G`.
pub fn center_via_enveloping(g: &FiniteGroup, omega: &Cochain) -> Result<HomCategory> {
    crate::bounds::check("enveloping group", g.order(), crate::bounds::bounds().enveloping)?;
    let b = crate::bimodcats::identity_bimodule(g, omega)?;
    hom_category_simples(&b.module, &b.module)
}

/// `Z(Vec_G^ω)` as `G #_θ k^G` for the conjugation action, with
/// `θ(x, y; g) = ω(x, y, g) + ω(xy g (xy)⁻¹, x, y) − ω(x, y g y⁻¹, y)`.
pub fn center_via_conjugation(g: &FiniteGroup, omega: &Cochain) -> Result<Vec<SimpleLabel>> {
    let set = GSet::conjugation(g);
    let theta = Cochain::from_fn(g.order(), Some(g.order()), 2, |s, x| {
        let (a, b) = (s[0], s[1]);
        let ab = g.mul(a, b);
        omega.at(&[a, b, x], 0) + omega.at(&[g.conj(ab, x), a, b], 0)
            - omega.at(&[a, g.conj(b, x), b], 0)
    });
    simples_of_crossed_product(&CrossedAlgebra::new(g.clone(), set, theta)?)
}

/// One indecomposable summand of a relative tensor product.
#[derive(Clone, Debug)]
pub struct CompositeSummand {
    /// Base point `(x, y)` of the `G1 × G2 × G3`-orbit on `X × Y`.
    pub base: (usize, usize),
    /// `Stab(x, y) ∩ G2`, as elements of `G2`.
    pub middle_stabilizer: Vec<usize>,
    /// Irreps of the middle stabilizer lying in this summand.
    pub irreps: Vec<usize>,
    pub dim: usize,
    /// Gauge: coset representatives `(a, ρ, c)` of the irrep stabilizer modulo
    /// the middle stabilizer, and the chosen intertwiners.
    pub section: Vec<(usize, usize, usize)>,
    pub intertwiners: Vec<MonomialMatrix>,
    /// The summand as a module category over `(G1 × G3, Ω)`.
    pub module: TwistedGSet,
}

/// `B1 ⊠_{Vec_{G2}^{ω2}} B2`.
#[derive(Clone, Debug)]
pub struct Composite {
    /// `(G1, G3)`.
    pub pair: GroupPair,
    pub omega1: Cochain,
    pub omega3: Cochain,
    /// `G1 × G3` acting on the `G2`-orbits of `X × Y`.
    pub orbit_biset: GSet,
    /// Simple objects: simple modules of `G2 #_α k^{X × Y}`.
    pub simples: Vec<SimpleLabel>,
    pub summands: Vec<CompositeSummand>,
    /// Present when the composite is indecomposable and fully extracted.
    pub bimodule: Option<BimoduleData>,
    /// Why full extraction was skipped.
    pub downgraded: Option<String>,
}

impl Composite {
    /// The pairing at point 0 of the composite biset, when available.
    pub fn pairing(&self) -> Option<Vec<Vec<QZ>>> {
        self.bimodule.as_ref().map(|b| b.pairing(0).2)
    }
}

type Triple = (usize, usize, usize);

struct Context<'a> {
    b1: &'a BimoduleData,
    b2: &'a BimoduleData,
    ys: usize,
}

impl Context<'_> {
    fn g2(&self) -> &FiniteGroup {
        &self.b1.pair.g2
    }

    fn p12(&self, k: Triple) -> usize {
        self.b1.pair.pair(k.0, k.1)
    }

    fn p23(&self, k: Triple) -> usize {
        self.b2.pair.pair(k.1, k.2)
    }

    fn act(&self, k: Triple, z: usize) -> usize {
        let (x, y) = (z / self.ys, z % self.ys);
        self.b1.module.set.act(self.p12(k), x) * self.ys + self.b2.module.set.act(self.p23(k), y)
    }

    /// `ν(k, k'; z) = μ_X(k, k'; x) + μ_Y(k, k'; y)`.
    fn nu(&self, k: Triple, k2: Triple, z: usize) -> QZ {
        self.b1.module.mu.at(&[self.p12(k), self.p12(k2)], z / self.ys)
            + self.b2.module.mu.at(&[self.p23(k), self.p23(k2)], z % self.ys)
    }

    fn mul(&self, a: Triple, b: Triple) -> Triple {
        (
            self.b1.pair.g1.mul(a.0, b.0),
            self.g2().mul(a.1, b.1),
            self.b2.pair.g2.mul(a.2, b.2),
        )
    }

    fn inv(&self, a: Triple) -> Triple {
        (
            self.b1.pair.g1.inv(a.0),
            self.g2().inv(a.1),
            self.b2.pair.g2.inv(a.2),
        )
    }
}

pub fn tensor_and_compose(b1: &BimoduleData, b2: &BimoduleData) -> Result<Composite> {
    if !b1.pair.g2.same_table(&b2.pair.g1) || b1.omega2 != b2.omega1 {
        return Err(Error::MiddleMismatch);
    }
    let (g1, g2, g3) = (&b1.pair.g1, &b1.pair.g2, &b2.pair.g2);
    let (n1, n2, n3) = (g1.order(), g2.order(), g3.order());
    let ys = b2.set_size();
    let zs = b1.set_size() * ys;
    let cx = Context { b1, b2, ys };

    // The middle crossed product.
    let mid_action: Vec<usize> = (0..n2)
        .flat_map(|r| (0..zs).map(move |z| (r, z)))
        .map(|(r, z)| cx.act((0, r, 0), z))
        .collect();
    let mid_set = GSet::from_raw(n2, zs, mid_action);
    let alpha = Cochain::from_fn(n2, Some(zs), 2, |s, z| cx.nu((0, s[0], 0), (0, s[1], 0), z));
    let mid = CrossedAlgebra::new(g2.clone(), mid_set.clone(), alpha)?;
    let simples = simples_of_crossed_product(&mid)?;

    let pair = GroupPair::new(g1, g3);
    let mid_orbits = mid_set.orbits();
    let mut orbit_of = vec![0; zs];
    for (i, o) in mid_orbits.iter().enumerate() {
        for &z in o {
            orbit_of[z] = i;
        }
    }
    let np = pair.product.order();
    let mut action = vec![0; np * mid_orbits.len()];
    for p in 0..np {
        let (a, c) = pair.split(p);
        for (i, o) in mid_orbits.iter().enumerate() {
            action[p * mid_orbits.len() + i] = orbit_of[cx.act((a, 0, c), o[0])];
        }
    }
    let orbit_biset = GSet::from_raw(np, mid_orbits.len(), action);
    let omega13 = pair.omega(&b1.omega1, &b2.omega2);

    let gamma: Vec<Triple> = (0..n1)
        .flat_map(|a| (0..n2).flat_map(move |r| (0..n3).map(move |c| (a, r, c))))
        .collect();
    let mut seen = vec![false; zs];
    let mut bases = Vec::new();
    for z0 in 0..zs {
        if seen[z0] {
            continue;
        }
        for &k in &gamma {
            seen[cx.act(k, z0)] = true;
        }
        bases.push(z0);
    }
    let mut summands = Vec::new();
    let mut downgraded = None;
    for &z0 in &bases {
        let k: Vec<Triple> = gamma
            .iter()
            .copied()
            .filter(|&k| cx.act(k, z0) == z0)
            .collect();
        let s = Subgroup::from_sorted(
            k.iter()
                .filter(|t| t.0 == 0 && t.2 == 0)
                .map(|t| t.1)
                .collect(),
        );
        if !s.is_abelian(g2) {
            downgraded = Some(Error::NonAbelianStabilizer.to_string());
            summands.clear();
            break;
        }
        summands.extend(orbit_summands(&cx, &pair, &omega13, z0, &k, &s)?);
    }
    let bimodule = (summands.len() == 1).then(|| {
        BimoduleData::from_module(&pair, &b1.omega1, &b2.omega2, summands[0].module.clone())
    });
    Ok(Composite {
        pair,
        omega1: b1.omega1.clone(),
        omega3: b2.omega2.clone(),
        orbit_biset,
        simples,
        summands,
        bimodule,
        downgraded,
    })
}

fn orbit_summands(
    cx: &Context,
    pair: &GroupPair,
    omega13: &Cochain,
    z0: usize,
    k: &[Triple],
    s: &Subgroup,
) -> Result<Vec<CompositeSummand>> {
    let g2 = cx.g2();
    let sg = s.as_group(g2);
    let mid = |r: usize| (0, r, 0);
    let psi_s = Cochain::from_fn(s.order(), None, 2, |a, _| {
        cx.nu(mid(s.elements()[a[0]]), mid(s.elements()[a[1]]), z0)
    });
    let irreps = monomial_irreps(&sg, &psi_s)?;
    let rad = radical(&sg, &psi_s);
    let central: Vec<Vec<QZ>> = irreps
        .iter()
        .map(|v| {
            rad.iter()
                .map(|&r| v.matrices[r].scalar().expect("radical acts by scalars"))
                .collect()
        })
        .collect();
    let spos = |r: usize| s.position(r).expect("conjugate stays in the middle stabilizer");
    // c_κ(r) = ψ(κ, r) − ψ(κ r κ⁻¹, κ)
    let twist = |kappa: Triple, r: usize| -> (usize, QZ) {
        let rc = g2.conj(kappa.1, r);
        (rc, cx.nu(kappa, mid(r), z0) - cx.nu(mid(rc), kappa, z0))
    };
    // κ sends irrep j to the irrep with central character c_κ(r) + λ_j(κ r κ⁻¹).
    let act_irrep = |kappa: Triple, j: usize| -> usize {
        let target: Vec<QZ> = rad
            .iter()
            .map(|&rp| {
                let (rc, c) = twist(kappa, s.elements()[rp]);
                let q = rad.iter().position(|&x| x == spos(rc)).expect("radical is stable");
                c + central[j][q]
            })
            .collect();
        central
            .iter()
            .position(|ch| *ch == target)
            .expect("twisted irrep is an irrep")
    };
    let mut orbit_of = vec![usize::MAX; irreps.len()];
    let mut out = Vec::new();
    for j0 in 0..irreps.len() {
        if orbit_of[j0] != usize::MAX {
            continue;
        }
        let mut members = Vec::new();
        let mut stab = Vec::new();
        for &kappa in k {
            let i = act_irrep(kappa, j0);
            if orbit_of[i] == usize::MAX {
                orbit_of[i] = j0;
                members.push(i);
            }
            if i == j0 {
                stab.push(kappa);
            }
        }
        members.sort_unstable();
        out.push(stabilizer_summand(
            cx, pair, omega13, z0, s, &irreps[j0], &stab, members,
        )?);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn stabilizer_summand(
    cx: &Context,
    pair: &GroupPair,
    omega13: &Cochain,
    z0: usize,
    s: &Subgroup,
    v: &MonomialRep,
    k2: &[Triple],
    members: Vec<usize>,
) -> Result<CompositeSummand> {
    let mid = |r: usize| (0, r, 0);
    let spos = |r: usize| s.position(r).expect("element of the middle stabilizer");
    let proj = |t: Triple| pair.pair(t.0, t.2);
    // Section of π: K'' → G1 × G3, smallest element per fiber.
    let mut sec: BTreeMap<usize, Triple> = BTreeMap::new();
    for &kappa in k2 {
        sec.entry(proj(kappa)).or_insert(kappa);
    }
    let mut inter: HashMap<Triple, MonomialMatrix> = HashMap::new();
    for &kc in sec.values() {
        let t = if kc == (0, 0, 0) {
            MonomialMatrix::identity(v.dim)
        } else {
            find_intertwiner(cx, z0, s, v, kc)?
        };
        inter.insert(kc, t);
    }
    // Ṽ(s κ_c) = e(−ψ(s, κ_c)) V(s) T_c.
    let extended = |kappa: Triple| -> MonomialMatrix {
        let kc = sec[&proj(kappa)];
        let r = cx.mul(kappa, cx.inv(kc)).1;
        v.matrices[spos(r)]
            .mul(&inter[&kc])
            .scaled(-cx.nu(mid(r), kc, z0))
    };
    let kbar = Subgroup::from_sorted(sec.keys().copied().collect());
    let ext: HashMap<Triple, MonomialMatrix> = k2.iter().map(|&t| (t, extended(t))).collect();
    let psi2 = |a: Triple, b: Triple| -> Result<QZ> {
        let lambda = ext[&a]
            .mul(&ext[&b])
            .ratio(&ext[&cx.mul(a, b)])
            .ok_or_else(|| Error::invalid("extended intertwiners are not projective"))?;
        Ok(cx.nu(a, b, z0) - lambda)
    };
    let reps: Vec<Triple> = kbar.elements().iter().map(|p| sec[p]).collect();
    let m = kbar.order();
    let mut vals = vec![QZ::ZERO; m * m];
    for i in 0..m {
        for j in 0..m {
            vals[i * m + j] = psi2(reps[i], reps[j])?;
        }
    }
    for &a in k2 {
        for &b in k2 {
            let (i, j) = (
                kbar.position(proj(a)).expect("in image"),
                kbar.position(proj(b)).expect("in image"),
            );
            if psi2(a, b)? != vals[i * m + j] {
                return Err(Error::invalid("stabilizer cocycle does not descend"));
            }
        }
    }
    let psi_bar = Cochain::from_fn(m, None, 2, |a, _| vals[a[0] * m + a[1]]);
    let kg = kbar.as_group(&pair.product);
    if delta(&kg, None, &psi_bar)? != omega13.restrict(&kbar) {
        return Err(Error::invalid("descended cocycle has the wrong coboundary"));
    }
    let set = GSet::cosets(&pair.product, &kbar);
    let t = Transversal::new(&pair.product, &set, 0)?;
    let mu = twisted_transport(&pair.product, omega13, &set, &t, &psi_bar);
    let module = TwistedGSet::new(pair.product.clone(), omega13.clone(), set, mu)?;
    let section: Vec<Triple> = reps.clone();
    let intertwiners = reps.iter().map(|r| inter[r].clone()).collect();
    let zy = (z0 / cx.ys, z0 % cx.ys);
    Ok(CompositeSummand {
        base: zy,
        middle_stabilizer: s.elements().to_vec(),
        irreps: members,
        dim: v.dim,
        section,
        intertwiners,
        module,
    })
}

/// Monomial `T` with `T V(s) = e(ψ(κ, s) − ψ(κsκ⁻¹, κ)) V(κsκ⁻¹) T`.
fn find_intertwiner(
    cx: &Context,
    z0: usize,
    s: &Subgroup,
    v: &MonomialRep,
    kappa: Triple,
) -> Result<MonomialMatrix> {
    const MAX_DIM: usize = 8;
    let d = v.dim;
    if d > MAX_DIM {
        return Err(Error::NonMonomialIntertwiner);
    }
    let g2 = cx.g2();
    let mid = |r: usize| (0, r, 0);
    let data: Vec<(usize, usize, QZ)> = s
        .elements()
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let rc = g2.conj(kappa.1, r);
            let c = cx.nu(kappa, mid(r), z0) - cx.nu(mid(rc), kappa, z0);
            (i, s.position(rc).expect("conjugate stays in the stabilizer"), c)
        })
        .collect();
    let mut tau: Vec<usize> = (0..d).collect();
    let mut found = None;
    permutations(&mut tau, 0, &mut |tau| {
        if found.is_some() {
            return;
        }
        let perm_ok = data.iter().all(|&(i, j, _)| {
            (0..d).all(|x| tau[v.matrices[i].perm[x]] == v.matrices[j].perm[tau[x]])
        });
        if !perm_ok {
            return;
        }
        // t_{π_s x} − t_x = c_s + p_{s'}[τ x] − p_s[x], propagated from t_0 = 0.
        let mut t: Vec<Option<QZ>> = vec![None; d];
        t[0] = Some(QZ::ZERO);
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            let tx = t[x].expect("visited");
            for &(i, j, c) in &data {
                let (a, b) = (&v.matrices[i], &v.matrices[j]);
                let y = a.perm[x];
                let ty = tx + c + b.phase[tau[x]] - a.phase[x];
                match t[y] {
                    None => {
                        t[y] = Some(ty);
                        stack.push(y);
                    }
                    Some(old) if old != ty => return,
                    Some(_) => {}
                }
            }
        }
        if t.iter().all(Option::is_some) {
            found = Some(MonomialMatrix {
                perm: tau.to_vec(),
                phase: t.into_iter().map(Option::unwrap).collect(),
            });
        }
    });
    found.ok_or(Error::NonMonomialIntertwiner)
}

fn permutations(p: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodcats::{enumerate_brpic, identify, identity_bimodule};
    use crate::cohomology::cyclic_3cocycle;

    fn klein() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    /// A non-degenerate 2-cocycle on the Klein four group.
    fn klein_psi() -> Cochain {
        // (a1, a2)·(b1, b2) ↦ a2 b1 / 2, elements indexed as 2·x1 + x2.
        Cochain::from_fn(4, None, 2, |s, _| {
            QZ::new(((s[0] % 2) * (s[1] / 2)) as i128, 2)
        })
    }

    #[test]
    fn crossed_algebra_associates() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let m = TwistedGSet::regular(&s3, &Cochain::zero(6, 3)).unwrap();
        let a = CrossedAlgebra::new(s3.clone(), m.set.clone(), m.mu.clone()).unwrap();
        assert_eq!(a.associativity_violations(0, 1), 0);
        let v = klein();
        let pt = CrossedAlgebra::new(
            v.clone(),
            GSet::point(&v),
            Cochain::from_fn(4, Some(1), 2, |s, _| klein_psi().at(s, 0)),
        )
        .unwrap();
        assert_eq!(pt.associativity_violations(0, 1), 0);
        assert_eq!(simples_of_crossed_product(&pt).unwrap().len(), 1);
    }

    #[test]
    fn simple_counts() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let pt = CrossedAlgebra::new(s3.clone(), GSet::point(&s3), Cochain::zero_on(6, 1, 2))
            .unwrap();
        assert_eq!(simples_of_crossed_product(&pt).unwrap().len(), 3);
        let reg = CrossedAlgebra::new(s3.clone(), GSet::regular(&s3), Cochain::zero_on(6, 6, 2))
            .unwrap();
        assert_eq!(simples_of_crossed_product(&reg).unwrap().len(), 1);
    }

    #[test]
    fn monomial_irreps_examples() {
        let v = klein();
        let reps = monomial_irreps(&v, &klein_psi()).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].dim, 2);
        for n in 1..7 {
            let z = FiniteGroup::cyclic(n);
            let alpha = Cochain::from_fn(n, None, 2, |s, _| {
                QZ::new(((s[0] + s[1]) / n) as i128, n as u64)
            });
            let reps = monomial_irreps(&z, &alpha).unwrap();
            assert_eq!(reps.len(), n);
            assert!(reps.iter().all(|r| r.dim == 1 && r.verify(&z, &alpha)));
        }
        let z2 = FiniteGroup::cyclic(2);
        let a = FiniteGroup::direct_product(&v, &z2);
        assert_eq!(monomial_irreps(&a, &Cochain::zero(8, 2)).unwrap().len(), 8);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(matches!(
            monomial_irreps(&s3, &Cochain::zero(6, 2)),
            Err(Error::NotAbelian)
        ));
    }

    #[test]
    fn hom_categories() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let w = Cochain::zero(6, 3);
        let reg = TwistedGSet::regular(&s3, &w).unwrap();
        let e = hom_category_simples(&reg, &reg).unwrap();
        assert_eq!((e.rank, e.invertible), (6, 6));
        let pt = TwistedGSet::from_subgroup(&s3, &w, &Subgroup::whole(&s3), 0).unwrap();
        let e = hom_category_simples(&pt, &pt).unwrap();
        assert_eq!((e.rank, e.invertible), (3, 2));
        assert_eq!(hom_category_simples(&reg, &pt).unwrap().rank, 1);
    }

    #[test]
    fn center_ranks() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let z = center_via_enveloping(&s3, &Cochain::zero(6, 3)).unwrap();
        assert_eq!(z.rank, 8);
        assert_eq!(center_via_conjugation(&s3, &Cochain::zero(6, 3)).unwrap().len(), 8);
        let z2 = FiniteGroup::cyclic(2);
        let w = cyclic_3cocycle(2, 1);
        let z = center_via_enveloping(&z2, &w).unwrap();
        assert_eq!((z.rank, z.invertible), (4, 4));
        assert_eq!(center_via_conjugation(&z2, &w).unwrap().len(), 4);
    }

    #[test]
    fn composition_in_brpic_z2() {
        let z2 = FiniteGroup::cyclic(2);
        let w = Cochain::zero(2, 3);
        let els = enumerate_brpic(&z2, &w).unwrap();
        assert_eq!(els.len(), 2);
        let mut table = vec![vec![0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let c = tensor_and_compose(&els[i].data, &els[j].data).unwrap();
                let b = c.bimodule.expect("indecomposable");
                table[i][j] = identify(&els, &b).unwrap().expect("invertible");
            }
        }
        assert_eq!(table, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn identity_is_neutral() {
        let v = klein();
        let w = Cochain::zero(4, 3);
        let els = enumerate_brpic(&v, &w).unwrap();
        let id = identity_bimodule(&v, &w).unwrap();
        for (i, e) in els.iter().enumerate().step_by(7) {
            let c = tensor_and_compose(&id, &e.data).unwrap();
            assert_eq!(identify(&els, c.bimodule.as_ref().unwrap()).unwrap(), Some(i));
            let c = tensor_and_compose(&e.data, &id).unwrap();
            assert_eq!(identify(&els, c.bimodule.as_ref().unwrap()).unwrap(), Some(i));
        }
    }

    #[test]
    fn points_over_s3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let one = FiniteGroup::trivial();
        let w = Cochain::zero(6, 3);
        let w1 = Cochain::zero(1, 3);
        // M(point) as a (1, S3)-bimodule and as an (S3, 1)-bimodule.
        let mk = |left: bool| {
            let pair = if left {
                GroupPair::new(&s3, &one)
            } else {
                GroupPair::new(&one, &s3)
            };
            let (o1, o2) = if left { (&w, &w1) } else { (&w1, &w) };
            let omega = pair.omega(o1, o2);
            let m = TwistedGSet::from_subgroup(
                &pair.product,
                &omega,
                &Subgroup::whole(&pair.product),
                0,
            )
            .unwrap();
            BimoduleData::from_module(&pair, o1, o2, m)
        };
        let c = tensor_and_compose(&mk(false), &mk(true)).unwrap();
        assert_eq!(c.simples.len(), 3);
        assert!(c.downgraded.is_some());
    }
}
