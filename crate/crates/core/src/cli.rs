//! Command-line front end: group and cocycle specs, JSON reports, exit codes.
//!
//! Group specs: `family:cyclic:n`, `family:dihedral:n`, `family:dicyclic:n`,
//! `family:symmetric:n`, `family:alternating:n`, products joined by `*`,
//! inline JSON, or `@path` to a JSON file.
//!
//! Cocycle specs: `0`, `cyclic:n:k` (pulled back along an isomorphism with
//! `Z/n`), inline JSON, or `@path`.
//!
//! Module specs: `GENS[:CLASS]`, where `GENS` is `trivial`, `all`, or
//! comma-separated generators of the stabilizer.

use crate::bimodcats::{
    bitransitive_triples, enumerate_brpic, enumerate_invertible_bimodules, identify, GroupPair,
};
use crate::cochain::{delta, Cochain};
use crate::cohomology::cyclic_3cocycle;
use crate::crossed::{center_via_conjugation, hom_category_simples, tensor_and_compose};
use crate::group::{coset_machinery, find_isomorphism, perm_from_cycles, CosetReport};
use crate::group::{FiniteGroup, Subgroup};
use crate::invariants::{
    aut_tensor_and_out, center_invertibles, gt_hopf_iso, isocategorical_search, rz_report,
    CenterInvertibles, HopfDatum, RzReport,
};
use crate::modcats::{
    aut_group_of_module_cat, dual_pointed_data, enumerate_module_categories, is_pointed,
    PointedWitness, TwistedGSet,
};
use crate::qz::QZ;
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "vecg", version, about = "Morita invariants of Vec_G^omega")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Replace every group-order enumeration limit.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Worker threads for enumerations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value = "0")]
    pub omega: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Indecomposable module categories up to equivalence.
    Modcats(Target),
    /// Autoequivalences of one module category.
    Autmod {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "trivial")]
        module: String,
    },
    /// Whether the dual of a module category is pointed.
    Pointed {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "trivial")]
        module: String,
    },
    /// Dual pointed data `(H, ω′)` of a pointed module category.
    Dual {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "trivial")]
        module: String,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Bitransitive `(G1, G2)`-bisets up to isomorphism.
    Bisets {
        #[arg(long)]
        group: String,
        #[arg(long)]
        group2: Option<String>,
    },
    /// Invertible bimodule categories.
    Bimodules {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        group2: Option<String>,
        #[arg(long)]
        omega2: Option<String>,
    },
    /// The Brauer-Picard group, element 0 being the identity.
    Brpic(Target),
    /// Rank of `Fun(M, M)`, or of the center with `--center`.
    Rank {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "trivial")]
        module: String,
        #[arg(long)]
        center: bool,
    },
    /// Invertible objects of the center.
    CenterInv(Target),
    /// Tensor autoequivalences and their outer quotient.
    Out(Target),
    /// Orders along the exact sequence, with consistency verdicts.
    Rz(Target),
    /// Groups with equivalent representation categories.
    Isocat {
        #[arg(long)]
        group: String,
    },
    /// Generalized crossed product `F#Q` for a subgroup `F`.
    Gcp {
        #[arg(long)]
        group: String,
        /// Generators of `F`.
        #[arg(long)]
        subgroup: String,
    },
    /// Isomorphism of two group-theoretical Hopf algebras.
    HopfIso {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        group2: Option<String>,
        #[arg(long)]
        omega2: Option<String>,
        #[arg(long)]
        x2: String,
        #[arg(long)]
        y2: String,
    },
    /// Product of two Brauer-Picard elements, by index.
    Compose {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
    },
}

/// `{"order": n, "table": rows}`; also the input format for explicit tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl From<&FiniteGroup> for GroupJson {
    fn from(g: &FiniteGroup) -> Self {
        GroupJson {
            order: g.order(),
            table: g.table_rows(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModcatEntry {
    pub stabilizer: Vec<usize>,
    pub class_index: usize,
    pub orbit_size: usize,
    pub set_size: usize,
    pub pointed: bool,
    pub mu: Cochain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModcatsReport {
    pub count: usize,
    pub categories: Vec<ModcatEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutmodReport {
    pub order: usize,
    pub h1_order: usize,
    pub gset_aut_order: usize,
    pub stabilizing_maps: usize,
    pub group: GroupJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    pub base: usize,
    pub group: GroupJson,
    pub omega_prime: Cochain,
    pub isomorphic_to_g: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisetEntry {
    pub n1: Vec<usize>,
    pub n2: Vec<usize>,
    pub f: Vec<usize>,
    pub fiber_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisetsReport {
    pub count: usize,
    pub triples: Vec<BisetEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleEntry {
    pub index: usize,
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    pub f: Vec<usize>,
    pub class_index: usize,
    pub set_size: usize,
    pub pairing: Vec<Vec<QZ>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimodulesReport {
    pub count: usize,
    pub elements: Vec<BimoduleEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invertible: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutReport {
    pub aut_tensor: usize,
    pub h2: usize,
    pub stabilizer: usize,
    pub inn: usize,
    pub out_tensor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsocatEntry {
    pub normal: Vec<usize>,
    pub class_index: usize,
    pub group: GroupJson,
    pub isomorphic_to_g: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsocatReport {
    pub count: usize,
    /// Number of isomorphism classes among the groups found, `G` included.
    pub distinct_groups: usize,
    pub entries: Vec<IsocatEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcpReport {
    pub cosets: CosetReport,
    pub reconstructed_isomorphic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfReport {
    pub isomorphic: bool,
    pub candidates: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeReport {
    pub left: usize,
    pub right: usize,
    pub product: Option<usize>,
    pub summands: usize,
    pub downgraded: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    /// `invalid_input` or `bound_exceeded`.
    pub kind: String,
    pub message: String,
}

fn read_spec(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn family(name: &str, n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::invalid("family parameter must be positive"));
    }
    match name {
        "cyclic" => Ok(FiniteGroup::cyclic(n)),
        "dihedral" => Ok(FiniteGroup::dihedral(n)),
        "dicyclic" => FiniteGroup::dicyclic(n),
        "symmetric" => FiniteGroup::symmetric(n),
        "alternating" => FiniteGroup::alternating(n),
        _ => Err(Error::invalid(format!("unknown family {name}"))),
    }
}

/// Parse a group spec (see the module docs).
pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let s = read_spec(spec)?;
    let s = s.trim();
    if s.starts_with('{') {
        let v: Value =
            serde_json::from_str(s).map_err(|e| Error::invalid(format!("group JSON: {e}")))?;
        return group_from_json(&v);
    }
    let mut out: Option<FiniteGroup> = None;
    for part in s.split('*') {
        let part = part.trim();
        let part = part.strip_prefix("family:").unwrap_or(part);
        let (name, n) = part
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("group spec {part:?} needs family:name:n")))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::invalid(format!("bad family parameter {n:?}")))?;
        let g = family(name, n)?;
        out = Some(match out {
            None => g,
            Some(h) => FiniteGroup::direct_product(&h, &g),
        });
    }
    out.ok_or_else(|| Error::invalid("empty group spec"))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::invalid(format!("missing integer field {key:?}")))
}

fn group_from_json(v: &Value) -> Result<FiniteGroup> {
    if let Some(t) = v.get("table") {
        let rows: Vec<Vec<usize>> = serde_json::from_value(t.clone())
            .map_err(|e| Error::invalid(format!("table: {e}")))?;
        if let Some(n) = v.get("order").and_then(Value::as_u64) {
            if n as usize != rows.len() {
                return Err(Error::invalid("order does not match the table"));
            }
        }
        return FiniteGroup::from_table(&rows);
    }
    if let Some(gens) = v.get("perm_gens") {
        let gens: Vec<Vec<Vec<usize>>> = serde_json::from_value(gens.clone())
            .map_err(|e| Error::invalid(format!("perm_gens: {e}")))?;
        let degree = gens.iter().flatten().flatten().map(|&x| x + 1).max().unwrap_or(1);
        let perms = gens
            .iter()
            .map(|c| perm_from_cycles(c, degree))
            .collect::<Result<Vec<_>>>()?;
        return FiniteGroup::from_permutations(&perms);
    }
    let fam = v
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::invalid("group JSON needs table, perm_gens or family"))?;
    if fam == "product" {
        let factors = v
            .get("factors")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("product needs a factors array"))?;
        let mut out = FiniteGroup::trivial();
        for (i, f) in factors.iter().enumerate() {
            let g = match f {
                Value::String(s) => parse_group(s)?,
                _ => group_from_json(f)?,
            };
            out = if i == 0 {
                g
            } else {
                FiniteGroup::direct_product(&out, &g)
            };
        }
        return Ok(out);
    }
    family(fam, usize_field(v, "n")?)
}

fn cyclic_family(g: &FiniteGroup, n: usize, k: u64) -> Result<Cochain> {
    if n == 0 {
        return Err(Error::invalid("cyclic family needs n > 0"));
    }
    let zn = FiniteGroup::cyclic(n);
    let phi = find_isomorphism(g, &zn)
        .ok_or_else(|| Error::invalid(format!("cyclic:{n}:{k} needs G cyclic of order {n}")))?;
    Ok(cyclic_3cocycle(n, k % n as u64).pullback(&phi.image))
}

fn flatten(v: &Value, out: &mut Vec<QZ>) -> Result<()> {
    match v {
        Value::Array(a) => a.iter().try_for_each(|x| flatten(x, out)),
        Value::String(s) => {
            out.push(s.parse()?);
            Ok(())
        }
        Value::Number(n) if n.as_u64() == Some(0) => {
            out.push(QZ::ZERO);
            Ok(())
        }
        _ => Err(Error::invalid("cochain values must be \"p/q\" strings")),
    }
}

/// Parse a 3-cocycle spec for `g` and check `δω = 0`.
pub fn parse_omega(g: &FiniteGroup, spec: &str) -> Result<Cochain> {
    let s = read_spec(spec)?;
    let s = s.trim();
    let omega = if s == "0" {
        Cochain::zero(g.order(), 3)
    } else if s.starts_with('{') {
        let v: Value =
            serde_json::from_str(s).map_err(|e| Error::invalid(format!("cocycle JSON: {e}")))?;
        if v.get("family").and_then(Value::as_str) == Some("cyclic") {
            let k = v.get("k").and_then(Value::as_u64).unwrap_or(1);
            cyclic_family(g, usize_field(&v, "n")?, k)?
        } else {
            let n = v.get("n").and_then(Value::as_u64).unwrap_or(3) as usize;
            if n != 3 {
                return Err(Error::invalid("ω must be a 3-cochain"));
            }
            let mut vals = Vec::new();
            flatten(
                v.get("values")
                    .ok_or_else(|| Error::invalid("cocycle JSON needs values"))?,
                &mut vals,
            )?;
            Cochain::from_values(g.order(), None, 3, vals)?
        }
    } else {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["cyclic", n, k] => {
                let n = n.parse().map_err(|_| Error::invalid("bad n in cyclic:n:k"))?;
                let k = k.parse().map_err(|_| Error::invalid("bad k in cyclic:n:k"))?;
                cyclic_family(g, n, k)?
            }
            _ => return Err(Error::invalid(format!("unknown cocycle spec {s:?}"))),
        }
    };
    if !omega.is_normalized() {
        return Err(Error::invalid("ω is not normalized"));
    }
    if !delta(g, None, &omega)?.is_zero() {
        return Err(Error::invalid("ω is not a cocycle"));
    }
    Ok(omega)
}

/// Parse `GENS[:CLASS]` into a stabilizer and a class index.
pub fn parse_module_spec(g: &FiniteGroup, spec: &str) -> Result<(Subgroup, usize)> {
    let (gens, class) = match spec.split_once(':') {
        Some((a, b)) => (
            a,
            b.parse()
                .map_err(|_| Error::invalid(format!("bad class index {b:?}")))?,
        ),
        None => (spec, 0),
    };
    let h = match gens.trim() {
        "" | "trivial" => Subgroup::trivial(),
        "all" => Subgroup::whole(g),
        list => {
            let gens = list
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&x| x < g.order())
                        .ok_or_else(|| Error::invalid(format!("bad generator {x:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Subgroup::generated(g, &gens)
        }
    };
    Ok((h, class))
}

fn module(g: &FiniteGroup, omega: &Cochain, spec: &str) -> Result<TwistedGSet> {
    let (h, class) = parse_module_spec(g, spec)?;
    TwistedGSet::from_subgroup(g, omega, &h, class)
}

fn target(t: &Target) -> Result<(FiniteGroup, Cochain)> {
    let g = parse_group(&t.group)?;
    let w = parse_omega(&g, &t.omega)?;
    Ok((g, w))
}

fn second(
    g: &FiniteGroup,
    omega: &Cochain,
    group2: &Option<String>,
    omega2: &Option<String>,
) -> Result<(FiniteGroup, Cochain)> {
    match group2 {
        None => {
            let w = match omega2 {
                None => omega.clone(),
                Some(s) => parse_omega(g, s)?,
            };
            Ok((g.clone(), w))
        }
        Some(s) => {
            let h = parse_group(s)?;
            let w = parse_omega(&h, omega2.as_deref().unwrap_or("0"))?;
            Ok((h, w))
        }
    }
}

fn to_json<T: Serialize>(r: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(r)
        .map_err(|e| Error::invalid(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn execute(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Modcats(t) => {
            let (g, w) = target(t)?;
            let mut categories = Vec::new();
            for c in enumerate_module_categories(&g, &w)? {
                categories.push(ModcatEntry {
                    stabilizer: c.stabilizer.elements().to_vec(),
                    class_index: c.class_index,
                    orbit_size: c.orbit_size,
                    set_size: c.module.set.size(),
                    pointed: is_pointed(&c.module)?.pointed,
                    mu: c.module.mu,
                });
            }
            to_json(&ModcatsReport {
                count: categories.len(),
                categories,
            })
        }
        Command::Autmod { target: t, module: m } => {
            let (g, w) = target(t)?;
            let a = aut_group_of_module_cat(&module(&g, &w, m)?)?;
            to_json(&AutmodReport {
                order: a.order(),
                h1_order: a.h1_order,
                gset_aut_order: a.gset_aut_order,
                stabilizing_maps: a.stabilizing_maps.len(),
                group: (&a.group).into(),
            })
        }
        Command::Pointed { target: t, module: m } => {
            let (g, w) = target(t)?;
            let r: PointedWitness = is_pointed(&module(&g, &w, m)?)?;
            to_json(&r)
        }
        Command::Dual {
            target: t,
            module: m,
            base,
        } => {
            let (g, w) = target(t)?;
            let d = dual_pointed_data(&module(&g, &w, m)?, *base)?;
            to_json(&DualReport {
                base: d.base,
                isomorphic_to_g: find_isomorphism(&d.group, &g).is_some(),
                group: (&d.group).into(),
                omega_prime: d.omega_prime,
            })
        }
        Command::Bisets { group, group2 } => {
            let g1 = parse_group(group)?;
            let g2 = match group2 {
                Some(s) => parse_group(s)?,
                None => g1.clone(),
            };
            let pair = GroupPair::new(&g1, &g2);
            let triples: Vec<BisetEntry> = bitransitive_triples(&pair)?
                .into_iter()
                .map(|t| BisetEntry {
                    n1: t.n1.elements().to_vec(),
                    n2: t.n2.elements().to_vec(),
                    f: t.f.image,
                    fiber_order: t.fiber.order(),
                })
                .collect();
            to_json(&BisetsReport {
                count: triples.len(),
                triples,
            })
        }
        Command::Bimodules {
            target: t,
            group2,
            omega2,
        } => {
            let (g, w) = target(t)?;
            let (h, w2) = second(&g, &w, group2, omega2)?;
            let els = enumerate_invertible_bimodules(&GroupPair::new(&g, &h), &w, &w2)?;
            to_json(&bimodules_report(&els))
        }
        Command::Brpic(t) => {
            let (g, w) = target(t)?;
            to_json(&bimodules_report(&enumerate_brpic(&g, &w)?))
        }
        Command::Rank {
            target: t,
            module: m,
            center,
        } => {
            let (g, w) = target(t)?;
            let r = if *center {
                RankReport {
                    rank: center_via_conjugation(&g, &w)?.len(),
                    invertible: None,
                }
            } else {
                let m = module(&g, &w, m)?;
                let h = hom_category_simples(&m, &m)?;
                RankReport {
                    rank: h.rank,
                    invertible: Some(h.invertible),
                }
            };
            to_json(&r)
        }
        Command::CenterInv(t) => {
            let (g, w) = target(t)?;
            let r: CenterInvertibles = center_invertibles(&g, &w)?;
            to_json(&r)
        }
        Command::Out(t) => {
            let (g, w) = target(t)?;
            let a = aut_tensor_and_out(&g, &w)?;
            to_json(&OutReport {
                aut_tensor: a.order(),
                h2: a.h2_order,
                stabilizer: a.stabilizer_order,
                inn: a.inner.order(),
                out_tensor: a.out_order,
            })
        }
        Command::Rz(t) => {
            let (g, w) = target(t)?;
            let r: RzReport = rz_report(&g, &w)?;
            to_json(&r)
        }
        Command::Isocat { group } => {
            let g = parse_group(group)?;
            let found = isocategorical_search(&g)?;
            let mut reps = vec![g.clone()];
            for e in &found {
                if reps.iter().all(|r| find_isomorphism(r, &e.group).is_none()) {
                    reps.push(e.group.clone());
                }
            }
            let entries: Vec<IsocatEntry> = found
                .iter()
                .map(|e| IsocatEntry {
                    normal: e.normal.elements().to_vec(),
                    class_index: e.class_index,
                    group: (&e.group).into(),
                    isomorphic_to_g: e.isomorphic_to_g,
                })
                .collect();
            to_json(&IsocatReport {
                count: entries.len(),
                distinct_groups: reps.len(),
                entries,
            })
        }
        Command::Gcp { group, subgroup } => {
            let g = parse_group(group)?;
            let (f, _) = parse_module_spec(&g, subgroup)?;
            let cosets = coset_machinery(&g, &f, None)?;
            let r = cosets.factorization.reconstruct(&g)?;
            to_json(&GcpReport {
                reconstructed_isomorphic: find_isomorphism(&r, &g).is_some(),
                cosets,
            })
        }
        Command::HopfIso {
            target: t,
            x,
            y,
            group2,
            omega2,
            x2,
            y2,
        } => {
            let (g, w) = target(t)?;
            let (h, w2) = second(&g, &w, group2, omega2)?;
            let left = HopfDatum::new(module(&g, &w, x)?, module(&g, &w, y)?)?;
            let right = HopfDatum::new(module(&h, &w2, x2)?, module(&h, &w2, y2)?)?;
            let r = gt_hopf_iso(&left, &right)?;
            to_json(&HopfReport {
                isomorphic: r.isomorphic,
                candidates: r.candidates,
                reason: r.reason,
            })
        }
        Command::Compose {
            target: t,
            left,
            right,
        } => {
            let (g, w) = target(t)?;
            let els = enumerate_brpic(&g, &w)?;
            let get = |i: usize| {
                els.get(i).ok_or_else(|| {
                    Error::invalid(format!("index {i} out of range (|BrPic| = {})", els.len()))
                })
            };
            let c = tensor_and_compose(&get(*left)?.data, &get(*right)?.data)?;
            let product = match &c.bimodule {
                Some(b) => identify(&els, b)?,
                None => None,
            };
            to_json(&ComposeReport {
                left: *left,
                right: *right,
                product,
                summands: c.summands.len(),
                downgraded: c.downgraded,
            })
        }
    }
}

fn bimodules_report(els: &[crate::bimodcats::BrPicElement]) -> BimodulesReport {
    let elements: Vec<BimoduleEntry> = els
        .iter()
        .enumerate()
        .map(|(index, e)| BimoduleEntry {
            index,
            a1: e.a1.elements().to_vec(),
            a2: e.a2.elements().to_vec(),
            f: e.f.image.clone(),
            class_index: e.class_index,
            set_size: e.data.set_size(),
            pairing: e.pairing.clone(),
        })
        .collect();
    BimodulesReport {
        count: elements.len(),
        elements,
    }
}

fn error_output(e: &Error) -> (i32, String) {
    let (code, kind) = if e.is_bound() {
        (2, "bound_exceeded")
    } else {
        (1, "invalid_input")
    };
    let body = ErrorReport {
        error: ErrorBody {
            kind: kind.into(),
            message: e.to_string(),
        },
    };
    let text = to_json(&body).unwrap_or_else(|_| format!("{{\"error\":\"{e}\"}}\n"));
    (code, text)
}

/// Run one invocation; returns the exit code and the text for standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => error_output(&Error::invalid(e.to_string().trim().to_string())),
            };
        }
    };
    crate::bounds::set_bound_override(cli.bound.unwrap_or(0));
    if let Some(j) = cli.jobs {
        crate::par::set_jobs(j);
    }
    let out = execute(&cli.command);
    crate::bounds::set_bound_override(0);
    match out {
        Ok(text) => match &cli.output {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => (0, String::new()),
                Err(e) => error_output(&Error::invalid(format!(
                    "cannot write {}: {e}",
                    path.display()
                ))),
            },
            None => (0, text),
        },
        Err(e) => error_output(&e),
    }
}
