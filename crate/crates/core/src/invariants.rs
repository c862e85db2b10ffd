//! Invariants of `Vec_G^ω`: tensor autoequivalences, invertible objects of
//! the center, the Rosenberg–Zelinsky report with `T(C)`, isocategorical
//! groups, and isomorphism of group-theoretical Hopf algebras.

use crate::bimodcats::{enumerate_brpic, enumerate_invertible_bimodules, BimoduleData, GroupPair};
use crate::cochain::{delta, Cochain};
use crate::cohomology::{cohomology_group, solve_coboundary};
use crate::crossed::{center_via_enveloping, hom_category_simples, tensor_and_compose};
use crate::group::{
    automorphism_group, find_isomorphism, normal_abelian_subgroups, FiniteGroup, GroupHom,
    Subgroup,
};
use crate::gset::{GSet, Transversal};
use crate::modcats::{
    aut_group_of_module_cat, class_orbits, dual_pointed_data, is_pointed, module_cat_equivalent,
    pointed_equivalence, TwistedGSet,
};
use crate::twisted::{twisted_class_set, twisted_transport};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

fn check_omega(g: &FiniteGroup, omega: &Cochain) -> Result<()> {
    if omega.n() != 3 || omega.m() != 0 || omega.group_order() != g.order() {
        return Err(Error::invalid("ω must be a 3-cochain on G"));
    }
    if !omega.is_normalized() || !delta(g, None, omega)?.is_zero() {
        return Err(Error::invalid("ω is not a normalized 3-cocycle"));
    }
    Ok(())
}

/// `Aut⊗(Vec_G^ω)`: pairs `(f, γ)` with `δγ = ω∘f − ω`, `γ` up to coboundaries.
#[derive(Clone, Debug)]
pub struct TensorAutGroup {
    /// Multiplication table; element `i·|H²| + j` is `(f_i, γ_i + z_j)`.
    pub group: FiniteGroup,
    pub maps: Vec<GroupHom>,
    pub gammas: Vec<Cochain>,
    pub h2_order: usize,
    pub stabilizer_order: usize,
    /// `inner_of[x]` is the class of conjugation by `x`.
    pub inner_of: Vec<usize>,
    pub inner: Subgroup,
    pub out_order: usize,
}

impl TensorAutGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Monoidal structure of `g ↦ x⁻¹ g x`:
/// `γ_x(g, h) = ω(g, h, x) + ω(x, x⁻¹gx, x⁻¹hx) − ω(g, x, x⁻¹hx)`.
pub fn inner_gamma(g: &FiniteGroup, omega: &Cochain, x: usize) -> Cochain {
    let xi = g.inv(x);
    Cochain::from_fn(g.order(), None, 2, |s, _| {
        let (a, b) = (s[0], s[1]);
        let (ca, cb) = (g.conj(xi, a), g.conj(xi, b));
        omega.at(&[a, b, x], 0) + omega.at(&[x, ca, cb], 0) - omega.at(&[a, x, cb], 0)
    })
}

pub fn aut_tensor_and_out(g: &FiniteGroup, omega: &Cochain) -> Result<TensorAutGroup> {
    check_omega(g, omega)?;
    let auts = automorphism_group(g)?;
    let h2 = cohomology_group(g, 2)?;
    let zs = h2.elements();
    let mut base: Vec<(GroupHom, Cochain)> = Vec::new();
    for f in &auts.maps {
        let d = &omega.pullback(&f.image) - omega;
        if let Some(gamma) = solve_coboundary(g, None, &d)? {
            base.push((f.clone(), gamma));
        }
    }
    let nz = zs.len();
    let mut maps = Vec::new();
    let mut gammas = Vec::new();
    for (f, g0) in &base {
        for z in &zs {
            maps.push(f.clone());
            gammas.push(g0 + z);
        }
    }
    let class = |f: &GroupHom, gamma: &Cochain| -> Result<usize> {
        let i = base
            .iter()
            .position(|(b, _)| b == f)
            .ok_or_else(|| Error::invalid("map does not stabilize [ω]"))?;
        Ok(i * nz + h2.class_index(&(gamma - &base[i].1))?)
    };
    // (f, γ_f)(h, γ_h) = (f∘h, h*γ_f + γ_h). With γ = b_i + z this splits into
    // a base part and the action of each stabilizing map on H².
    let nb = base.len();
    let mut base_prod = vec![(0, 0); nb * nb];
    for i in 0..nb {
        for j in 0..nb {
            let (fi, bi) = &base[i];
            let (fj, bj) = &base[j];
            let k = class(&fi.compose(fj), &(&bi.pullback(&fj.image) + bj))?;
            base_prod[i * nb + j] = (k / nz, k % nz);
        }
    }
    let mut add = vec![0; nz * nz];
    for a in 0..nz {
        for b in 0..nz {
            add[a * nz + b] = h2.class_index(&(&zs[a] + &zs[b]))?;
        }
    }
    let mut act = vec![0; nb * nz];
    for j in 0..nb {
        for z in 0..nz {
            act[j * nz + z] = h2.class_index(&zs[z].pullback(&base[j].0.image))?;
        }
    }
    let n = maps.len();
    let mut table = vec![0; n * n];
    for x in 0..n {
        let (i, z) = (x / nz, x % nz);
        for y in 0..n {
            let (j, w) = (y / nz, y % nz);
            let (k, c) = base_prod[i * nb + j];
            let c = add[add[c * nz + act[j * nz + z]] * nz + w];
            table[x * n + y] = k * nz + c;
        }
    }
    let group = if n <= 256 {
        FiniteGroup::from_flat(n, table)?
    } else {
        FiniteGroup::from_flat_trusted(n, table)
    };
    let mut inner_of = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let xi = g.inv(x);
        let f = GroupHom {
            image: (0..g.order()).map(|a| g.conj(xi, a)).collect(),
        };
        let gamma = inner_gamma(g, omega, x);
        if delta(g, None, &gamma)? != &omega.pullback(&f.image) - omega {
            return Err(Error::invalid("conjugation cocycle fails its coboundary equation"));
        }
        inner_of.push(class(&f, &gamma)?);
    }
    let mut inner: Vec<usize> = inner_of.clone();
    inner.sort_unstable();
    inner.dedup();
    let inner = Subgroup::from_elements(&group, &inner)?;
    Ok(TensorAutGroup {
        out_order: n / inner.order(),
        group,
        maps,
        gammas,
        h2_order: nz,
        stabilizer_order: base.len(),
        inner_of,
        inner,
    })
}

/// `γ(σ, τ; ρ) = ω(σ, τ, ρ) + ω(στρ(στ)⁻¹, σ, τ) − ω(σ, τρτ⁻¹, τ)` for fixed `ρ`.
pub fn conjugation_gamma(g: &FiniteGroup, omega: &Cochain, rho: usize) -> Cochain {
    Cochain::from_fn(g.order(), None, 2, |s, _| {
        let (a, b) = (s[0], s[1]);
        omega.at(&[a, b, rho], 0) + omega.at(&[g.conj(g.mul(a, b), rho), a, b], 0)
            - omega.at(&[a, g.conj(b, rho), b], 0)
    })
}

/// Invertible objects of `Z(Vec_G^ω)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CenterInvertibles {
    /// `|Ĝ| = |Hom(G, Q/Z)|`.
    pub dual_order: usize,
    /// `Z(G)^ω`: central `ρ` with `γ(−, −; ρ)` a coboundary.
    pub twisted_center: Vec<usize>,
    /// `|Ĝ|·|Z(G)^ω|`.
    pub order: usize,
    /// One-dimensional simples counted in the enveloping crossed product.
    pub direct_count: Field<usize>,
}

pub fn center_invertibles(g: &FiniteGroup, omega: &Cochain) -> Result<CenterInvertibles> {
    check_omega(g, omega)?;
    let dual_order = cohomology_group(g, 1)?.order() as usize;
    let mut twisted_center = Vec::new();
    for rho in g.center() {
        if solve_coboundary(g, None, &conjugation_gamma(g, omega, rho))?.is_some() {
            twisted_center.push(rho);
        }
    }
    let direct_count = field(center_via_enveloping(g, omega).map(|h| h.invertible))?;
    Ok(CenterInvertibles {
        dual_order,
        order: dual_order * twisted_center.len(),
        twisted_center,
        direct_count,
    })
}

/// Module categories `M` with `C*_M ≅ C`, one per equivalence class.
pub fn t_of_c(g: &FiniteGroup, omega: &Cochain) -> Result<Vec<TwistedGSet>> {
    check_omega(g, omega)?;
    let regular = TwistedGSet::regular(g, omega)?;
    let mut out = vec![regular.clone()];
    let mut reference = None;
    for a in normal_abelian_subgroups(g) {
        if a.order() == 1 {
            continue;
        }
        let set = GSet::cosets(g, &a);
        let ts = twisted_class_set(g, omega, &set)?;
        if ts.is_empty() {
            continue;
        }
        for (i, _) in class_orbits(&set, &ts)? {
            let m = TwistedGSet {
                group: g.clone(),
                omega: omega.clone(),
                set: set.clone(),
                mu: ts.classes[i].clone(),
            };
            if !is_pointed(&m)?.pointed {
                continue;
            }
            if reference.is_none() {
                reference = Some(dual_pointed_data(&regular, 0)?);
            }
            let r = reference.as_ref().expect("set above");
            let d = dual_pointed_data(&m, 0)?;
            if pointed_equivalence(&d.group, &d.omega_prime, &r.group, &r.omega_prime)?.is_some() {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// A report field that may have been skipped because a bound was hit.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Field<T> {
    Value(T),
    Skipped { skipped: String },
}

impl<T: Copy> Field<T> {
    pub fn value(&self) -> Option<T> {
        match self {
            Field::Value(v) => Some(*v),
            Field::Skipped { .. } => None,
        }
    }
}

fn field<T>(r: Result<T>) -> Result<Field<T>> {
    match r {
        Ok(v) => Ok(Field::Value(v)),
        Err(e) if e.is_bound() => Ok(Field::Skipped {
            skipped: format!("bound: {e}"),
        }),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
}

/// Orders along `1 → Ĝ → Inv(Z) → G → Aut⊗ → BrPic` and `|BrPic| = |Out⊗|·|T|`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RzReport {
    pub group_order: usize,
    pub dual_group: Field<usize>,
    pub twisted_center: Field<usize>,
    pub center_invertibles: Field<usize>,
    pub center_invertibles_direct: Field<usize>,
    pub h2: Field<usize>,
    pub stabilizer: Field<usize>,
    pub aut_tensor: Field<usize>,
    pub inn: Field<usize>,
    pub out_tensor: Field<usize>,
    pub brpic: Field<usize>,
    /// BrPic elements whose underlying left module is the regular one.
    pub quasi_trivial: Field<usize>,
    pub t_c: Field<usize>,
    pub verdicts: Vec<Verdict>,
}

pub fn rz_report(g: &FiniteGroup, omega: &Cochain) -> Result<RzReport> {
    check_omega(g, omega)?;
    let ci = field(center_invertibles(g, omega))?;
    let aut = field(aut_tensor_and_out(g, omega))?;
    let brpic = field(enumerate_brpic(g, omega))?;
    let t = field(t_of_c(g, omega).map(|v| v.len()))?;
    let by = |f: &dyn Fn(&CenterInvertibles) -> usize| match &ci {
        Field::Value(c) => Field::Value(f(c)),
        Field::Skipped { skipped } => Field::Skipped {
            skipped: skipped.clone(),
        },
    };
    let ga = |f: &dyn Fn(&TensorAutGroup) -> usize| match &aut {
        Field::Value(a) => Field::Value(f(a)),
        Field::Skipped { skipped } => Field::Skipped {
            skipped: skipped.clone(),
        },
    };
    let (bp, qt) = match &brpic {
        Field::Value(els) => (
            Field::Value(els.len()),
            Field::Value(els.iter().filter(|e| e.a1.order() == 1).count()),
        ),
        Field::Skipped { skipped } => (
            Field::Skipped {
                skipped: skipped.clone(),
            },
            Field::Skipped {
                skipped: skipped.clone(),
            },
        ),
    };
    let mut report = RzReport {
        group_order: g.order(),
        dual_group: by(&|c| c.dual_order),
        twisted_center: by(&|c| c.twisted_center.len()),
        center_invertibles: by(&|c| c.order),
        center_invertibles_direct: match &ci {
            Field::Value(c) => c.direct_count.clone(),
            Field::Skipped { skipped } => Field::Skipped {
                skipped: skipped.clone(),
            },
        },
        h2: ga(&|a| a.h2_order),
        stabilizer: ga(&|a| a.stabilizer_order),
        aut_tensor: ga(&|a| a.order()),
        inn: ga(&|a| a.inner.order()),
        out_tensor: ga(&|a| a.out_order),
        brpic: bp,
        quasi_trivial: qt,
        t_c: t,
        verdicts: Vec::new(),
    };
    report.verdicts = verdicts(&report);
    Ok(report)
}

fn verdicts(r: &RzReport) -> Vec<Verdict> {
    let mut v = Vec::new();
    let mut push = |name: &str, holds: Option<bool>| {
        if let Some(holds) = holds {
            v.push(Verdict {
                name: name.to_string(),
                holds,
            });
        }
    };
    let (gh, zc, inv, invd) = (
        r.dual_group.value(),
        r.twisted_center.value(),
        r.center_invertibles.value(),
        r.center_invertibles_direct.value(),
    );
    let (h2, st, aut, inn, out) = (
        r.h2.value(),
        r.stabilizer.value(),
        r.aut_tensor.value(),
        r.inn.value(),
        r.out_tensor.value(),
    );
    let (bp, qt, t) = (r.brpic.value(), r.quasi_trivial.value(), r.t_c.value());
    push(
        "inv_z = dual_group * twisted_center",
        gh.zip(zc).zip(inv).map(|((a, b), c)| a * b == c),
    );
    push(
        "inv_z matches the direct count",
        inv.zip(invd).map(|(a, b)| a == b),
    );
    push(
        "inn = |G| / twisted_center",
        zc.zip(inn).map(|(z, i)| z * i == r.group_order),
    );
    push(
        "aut_tensor = h2 * stabilizer",
        h2.zip(st).zip(aut).map(|((a, b), c)| a * b == c),
    );
    push(
        "out_tensor = aut_tensor / inn",
        aut.zip(inn).zip(out).map(|((a, i), o)| a == i * o),
    );
    push(
        "out_tensor = quasi-trivial count in brpic",
        out.zip(qt).map(|(o, q)| o == q),
    );
    push(
        "brpic = out_tensor * t_c",
        bp.zip(out).zip(t).map(|((b, o), t)| b == o * t),
    );
    push("brpic = out_tensor", t.filter(|&t| t == 1).map(|_| true));
    v
}

/// A candidate `(A, ψ)` with its reconstructed group.
#[derive(Clone, Debug)]
pub struct IsocategoricalEntry {
    pub normal: Subgroup,
    /// Index of `[ψ]` in `H²(A)`.
    pub class_index: usize,
    pub psi: Cochain,
    pub module: TwistedGSet,
    /// `Aut_{Vec_G}(M(G/A, ψ))`.
    pub group: FiniteGroup,
    pub isomorphic_to_g: bool,
}

/// Groups `H` with `Rep(H) ≅ Rep(G)`, one entry per `(A, [ψ])` with `A` normal
/// abelian, `[ψ]` conjugation invariant and `ψ` non-degenerate.
pub fn isocategorical_search(g: &FiniteGroup) -> Result<Vec<IsocategoricalEntry>> {
    let omega = Cochain::zero(g.order(), 3);
    let mut out = Vec::new();
    for a in normal_abelian_subgroups(g) {
        let ag = a.as_group(g);
        let h2 = cohomology_group(&ag, 2)?;
        let pos = |x: usize| a.position(x).expect("normal subgroup");
        let conj: Vec<Vec<usize>> = (0..g.order())
            .map(|x| a.elements().iter().map(|&y| pos(g.conj(x, y))).collect())
            .collect();
        for (ci, psi) in h2.elements().into_iter().enumerate() {
            let n = ag.order();
            let degenerate = (1..n).any(|x| {
                (0..n).all(|y| psi.at(&[x, y], 0) == psi.at(&[y, x], 0))
            });
            if degenerate {
                continue;
            }
            let mut invariant = true;
            for c in &conj {
                if h2.class_index(&psi.pullback(c))? != ci {
                    invariant = false;
                    break;
                }
            }
            if !invariant {
                continue;
            }
            let set = GSet::cosets(g, &a);
            let t = Transversal::new(g, &set, 0)?;
            let mu = twisted_transport(g, &omega, &set, &t, &psi);
            let module = TwistedGSet::new(g.clone(), omega.clone(), set, mu)?;
            let h = aut_group_of_module_cat(&module)?.group;
            out.push(IsocategoricalEntry {
                normal: a.clone(),
                class_index: ci,
                psi,
                module,
                isomorphic_to_g: find_isomorphism(g, &h).is_some(),
                group: h,
            });
        }
    }
    Ok(out)
}

/// Data `(G, ω, M(X, μ_X), M(Y, μ_Y))` of a group-theoretical Hopf algebra.
#[derive(Clone, Debug)]
pub struct HopfDatum {
    pub x: TwistedGSet,
    pub y: TwistedGSet,
}

impl HopfDatum {
    pub fn new(x: TwistedGSet, y: TwistedGSet) -> Result<Self> {
        let h = hom_category_simples(&x, &y)?;
        if h.rank != 1 {
            return Err(Error::NotAFiberFunctor(format!(
                "Fun(M(X), M(Y)) has rank {}",
                h.rank
            )));
        }
        Ok(HopfDatum { x, y })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.x.group
    }
}

#[derive(Clone, Debug)]
pub struct HopfIsoResult {
    pub isomorphic: bool,
    /// `S` with `S ⊠ M(X′) ≅ M(X)` and `S ⊠ M(Y′) ≅ M(Y)`.
    pub witness: Option<BimoduleData>,
    pub candidates: usize,
    pub reason: String,
}

fn as_bimodule(m: &TwistedGSet) -> BimoduleData {
    let one = FiniteGroup::trivial();
    let pair = GroupPair::new(&m.group, &one);
    let module = TwistedGSet {
        group: pair.product.clone(),
        ..m.clone()
    };
    BimoduleData::from_module(&pair, &m.omega, &Cochain::zero(1, 3), module)
}

fn as_left_module(b: &BimoduleData) -> TwistedGSet {
    TwistedGSet {
        group: b.pair.g1.clone(),
        omega: b.omega1.clone(),
        ..b.module.clone()
    }
}

/// Decides `H(G, ω, X, Y) ≅ H(G′, ω′, X′, Y′)` by searching invertible
/// `(Vec_G^ω, Vec_{G′}^{ω′})`-bimodules.
pub fn gt_hopf_iso(left: &HopfDatum, right: &HopfDatum) -> Result<HopfIsoResult> {
    let (g, gp) = (left.group(), right.group());
    if g.order() != gp.order() {
        return Ok(HopfIsoResult {
            isomorphic: false,
            witness: None,
            candidates: 0,
            reason: "dimensions differ".into(),
        });
    }
    let pair = GroupPair::new(g, gp);
    let cands = enumerate_invertible_bimodules(&pair, &left.x.omega, &right.x.omega)?;
    let (xp, yp) = (as_bimodule(&right.x), as_bimodule(&right.y));
    for s in &cands {
        let carries = |target: &TwistedGSet, src: &BimoduleData| -> Result<bool> {
            let c = tensor_and_compose(&s.data, src)?;
            match &c.bimodule {
                Some(b) => {
                    let m = as_left_module(b);
                    Ok(m.set.size() == target.set.size() && module_cat_equivalent(&m, target)?)
                }
                None => Ok(false),
            }
        };
        if carries(&left.x, &xp)? && carries(&left.y, &yp)? {
            return Ok(HopfIsoResult {
                isomorphic: true,
                witness: Some(s.data.clone()),
                candidates: cands.len(),
                reason: "invertible bimodule found".into(),
            });
        }
    }
    Ok(HopfIsoResult {
        isomorphic: false,
        witness: None,
        candidates: cands.len(),
        reason: "no invertible bimodule transports both module categories".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cyclic_3cocycle;
    use crate::group::Subgroup;

    fn klein() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    #[test]
    fn aut_tensor_examples() {
        let a = aut_tensor_and_out(&klein(), &Cochain::zero(4, 3)).unwrap();
        assert_eq!((a.order(), a.inner.order(), a.out_order), (12, 1, 12));
        for p in [2, 3, 5, 7] {
            let a = aut_tensor_and_out(&FiniteGroup::cyclic(p), &Cochain::zero(p, 3)).unwrap();
            assert_eq!(a.order(), p - 1);
        }
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a = aut_tensor_and_out(&s3, &Cochain::zero(6, 3)).unwrap();
        assert_eq!((a.order(), a.inner.order(), a.out_order), (6, 6, 1));
    }

    #[test]
    fn center_invertible_examples() {
        let z2 = FiniteGroup::cyclic(2);
        for w in [Cochain::zero(2, 3), cyclic_3cocycle(2, 1)] {
            let c = center_invertibles(&z2, &w).unwrap();
            assert_eq!((c.order, c.direct_count), (4, Field::Value(4)));
        }
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let c = center_invertibles(&s3, &Cochain::zero(6, 3)).unwrap();
        assert_eq!((c.order, c.direct_count), (2, Field::Value(2)));
        // H² of a cyclic group vanishes, so the center stays pointed.
        let z4 = FiniteGroup::cyclic(4);
        let c = center_invertibles(&z4, &cyclic_3cocycle(4, 1)).unwrap();
        assert_eq!((c.order, c.direct_count), (16, Field::Value(16)));
        assert_eq!(c.twisted_center.len(), 4);
    }

    #[test]
    fn t_of_c_examples() {
        assert_eq!(t_of_c(&klein(), &Cochain::zero(4, 3)).unwrap().len(), 6);
        assert_eq!(
            t_of_c(&FiniteGroup::cyclic(3), &Cochain::zero(3, 3)).unwrap().len(),
            2
        );
        let a5 = FiniteGroup::alternating(5).unwrap();
        assert_eq!(t_of_c(&a5, &Cochain::zero(60, 3)).unwrap().len(), 1);
    }

    #[test]
    fn rz_reports() {
        let r = rz_report(&klein(), &Cochain::zero(4, 3)).unwrap();
        assert_eq!(r.brpic, Field::Value(72));
        assert_eq!(r.out_tensor, Field::Value(12));
        assert_eq!(r.t_c, Field::Value(6));
        assert!(r.verdicts.iter().all(|v| v.holds), "{:?}", r.verdicts);
        let r = rz_report(&FiniteGroup::cyclic(3), &Cochain::zero(3, 3)).unwrap();
        assert_eq!(r.brpic, Field::Value(4));
        assert!(r.verdicts.iter().all(|v| v.holds));
    }

    #[test]
    fn a5_report_is_partial() {
        let a5 = FiniteGroup::alternating(5).unwrap();
        let r = rz_report(&a5, &Cochain::zero(60, 3)).unwrap();
        assert_eq!(r.t_c, Field::Value(1));
        assert!(matches!(r.brpic, Field::Skipped { .. }));
        assert!(r
            .verdicts
            .iter()
            .any(|v| v.name == "brpic = out_tensor" && v.holds));
    }

    #[test]
    fn isocategorical_examples() {
        let v = isocategorical_search(&klein()).unwrap();
        assert!(v
            .iter()
            .any(|e| e.normal.order() == 4 && e.isomorphic_to_g));
        assert!(v.iter().all(|e| e.group.order() == 4));
        for g in [FiniteGroup::symmetric(3).unwrap(), FiniteGroup::cyclic(4)] {
            let v = isocategorical_search(&g).unwrap();
            assert_eq!(v.len(), 1);
            assert!(v[0].normal.order() == 1 && v[0].isomorphic_to_g);
        }
    }

    #[test]
    fn hopf_iso() {
        let v = klein();
        let w = Cochain::zero(4, 3);
        let whole = Subgroup::whole(&v);
        let p0 = TwistedGSet::from_subgroup(&v, &w, &whole, 0).unwrap();
        let p1 = TwistedGSet::from_subgroup(&v, &w, &whole, 1).unwrap();
        let reg = TwistedGSet::regular(&v, &w).unwrap();
        let d = HopfDatum::new(reg.clone(), p0.clone()).unwrap();
        assert!(gt_hopf_iso(&d, &d).unwrap().isomorphic);
        assert!(matches!(
            HopfDatum::new(p0.clone(), p0.clone()),
            Err(Error::NotAFiberFunctor(_))
        ));
        let a = HopfDatum::new(p0.clone(), p1.clone()).unwrap();
        let b = HopfDatum::new(p1.clone(), p0.clone()).unwrap();
        let r = gt_hopf_iso(&a, &b).unwrap();
        assert_eq!(r.candidates, 72);
        let z4 = FiniteGroup::cyclic(4);
        let w4 = Cochain::zero(4, 3);
        let c = HopfDatum::new(
            TwistedGSet::regular(&z4, &w4).unwrap(),
            TwistedGSet::from_subgroup(&z4, &w4, &Subgroup::whole(&z4), 0).unwrap(),
        )
        .unwrap();
        assert!(!gt_hopf_iso(&d, &c).unwrap().isomorphic);
    }
}
