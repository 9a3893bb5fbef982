//! The `.ecat` text format: TOML documents with named objects and morphisms.
//!
//! Every table is a list of string tuples. Composition entries `[g, f, g∘f]` that involve
//! an identity may be left out. Coherence tables accept `{ all_identity = true }` when
//! every component has equal domain and codomain.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::actions::ModuleAction;
use crate::core_cat::{FinCategory, Functor, Mor, NatTransf, Obj};
use crate::enriched_core::EnrichedCategory;
use crate::enriched_monoidal::{EnrichedBraidedCategory, EnrichedMonoidalCategory};
use crate::monoidal_cat::{
    BraidedStructure, LaxKind, LaxMonoidalFunctor, LaxMonoidalNat, MonoidalCategory,
};

use super::fixtures::FixtureSpec;
use super::WorkbenchError;

/// A tuple list, or the identity shorthand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coherence {
    Shorthand { all_identity: bool },
    List(Vec<Vec<String>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySection {
    pub objects: Vec<String>,
    /// `[name, dom, cod]`.
    pub morphisms: Vec<Vec<String>>,
    pub identities: Vec<String>,
    /// `[g, f, g∘f]`.
    #[serde(default)]
    pub compose: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidalSection {
    pub unit: String,
    pub tensor_obj: Vec<Vec<String>>,
    pub tensor_mor: Vec<Vec<String>>,
    pub assoc: Coherence,
    pub lunitor: Coherence,
    pub runitor: Coherence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidedSection {
    pub symmetric: bool,
    pub braiding: Coherence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSection {
    pub carrier: CategorySection,
    pub act_obj: Vec<Vec<String>>,
    pub act_mor: Vec<Vec<String>>,
    pub assoc: Coherence,
    pub unitor: Coherence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrichedSection {
    pub objects: Vec<String>,
    /// `[x, y, hom(x,y)]`.
    pub hom: Vec<Vec<String>>,
    /// `[x, 1_x]`.
    pub ident: Vec<Vec<String>>,
    /// `[x, y, z, ∘_{x,y,z}]`.
    pub comp: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrichedMonoidalSection {
    pub unit: String,
    pub tensor_obj: Vec<Vec<String>>,
    /// `[x1, y1, x2, y2, component]`.
    pub tensor_components: Vec<Vec<String>>,
    pub assoc: Coherence,
    pub lunitor: Coherence,
    pub runitor: Coherence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braiding: Option<Coherence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorSection {
    /// `A(𝟙, −)` into finite sets; the other fields are then absent.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub global_sections: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Box<FileDoc>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub obj_map: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mor_map: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mult: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_cell: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatSection {
    /// A second functor with the same source and target as `[functor]`.
    pub target: FunctorSection,
    pub components: Vec<Vec<String>>,
}

/// The raw document as written on disk.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FileDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<FixtureSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CategorySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoidal: Option<MonoidalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braided: Option<BraidedSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enriched: Option<EnrichedSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enriched_monoidal: Option<EnrichedMonoidalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functor: Option<FunctorSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nat: Option<NatSection>,
}

/// Display names of a category's objects and morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Names {
    pub objects: Vec<String>,
    pub morphisms: Vec<String>,
}

impl Names {
    /// `o0, o1, …` and `m0, m1, …`.
    pub fn generated(c: &FinCategory) -> Self {
        Names {
            objects: (0..c.n_obj()).map(|x| format!("o{x}")).collect(),
            morphisms: (0..c.n_mor()).map(|f| format!("m{f}")).collect(),
        }
    }

    fn fits(&self, c: &FinCategory) -> bool {
        self.objects.len() == c.n_obj() && self.morphisms.len() == c.n_mor()
    }
}

/// A lax monoidal functor out of the document's base, or global sections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorEntry {
    GlobalSections,
    Lax {
        functor: LaxMonoidalFunctor,
        target_names: Names,
    },
}

/// Loaded structures sharing the base category of the document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub names: Names,
    pub category: Option<Arc<FinCategory>>,
    pub monoidal: Option<Arc<MonoidalCategory>>,
    pub braided: Option<BraidedStructure>,
    pub module: Option<Arc<ModuleAction>>,
    pub carrier_names: Names,
    pub enriched: Option<Arc<EnrichedCategory>>,
    pub enriched_names: Vec<String>,
    pub enriched_monoidal: Option<Arc<EnrichedMonoidalCategory>>,
    pub enriched_braided: Option<EnrichedBraidedCategory>,
    pub functor: Option<FunctorEntry>,
    pub nat: Option<LaxMonoidalNat>,
}

impl Document {
    pub fn from_category(c: &Arc<FinCategory>, names: Names) -> Self {
        Document {
            names,
            category: Some(c.clone()),
            ..Document::default()
        }
    }

    pub fn from_monoidal(m: &Arc<MonoidalCategory>, names: Names) -> Self {
        Document {
            monoidal: Some(m.clone()),
            ..Document::from_category(&m.cat, names)
        }
    }

    pub fn from_enriched(e: &Arc<EnrichedCategory>, names: Names, objects: Vec<String>) -> Self {
        Document {
            enriched: Some(e.clone()),
            enriched_names: objects,
            ..Document::from_monoidal(&e.base, names)
        }
    }

    pub fn from_enriched_monoidal(
        em: &Arc<EnrichedMonoidalCategory>,
        names: Names,
        objects: Vec<String>,
    ) -> Self {
        Document {
            braided: Some(em.braiding.clone()),
            enriched_monoidal: Some(em.clone()),
            ..Document::from_enriched(&em.host, names, objects)
        }
    }

    pub fn from_enriched_braided(
        eb: &EnrichedBraidedCategory,
        names: Names,
        objects: Vec<String>,
    ) -> Self {
        Document {
            enriched_braided: Some(eb.clone()),
            ..Document::from_enriched_monoidal(&Arc::new(eb.host.clone()), names, objects)
        }
    }

    /// Replaces missing or mismatched names by generated ones.
    pub fn normalize_names(&mut self) {
        if let Some(c) = &self.category {
            if !self.names.fits(c) {
                self.names = Names::generated(c);
            }
        }
        if let Some(m) = &self.module {
            if !self.carrier_names.fits(&m.carrier) {
                self.carrier_names = Names::generated(&m.carrier);
            }
        }
        if let Some(e) = &self.enriched {
            if self.enriched_names.len() != e.n_obj {
                self.enriched_names = (0..e.n_obj).map(|x| format!("e{x}")).collect();
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Loading

struct Lookup<'a> {
    what: &'static str,
    index: HashMap<&'a str, usize>,
}

impl<'a> Lookup<'a> {
    fn new(what: &'static str, names: &'a [String]) -> Result<Self, WorkbenchError> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.as_str(), i).is_some() {
                return Err(WorkbenchError::Semantic(format!(
                    "duplicate {what} name `{n}`"
                )));
            }
        }
        Ok(Lookup { what, index })
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    fn get(&self, name: &str) -> Result<usize, WorkbenchError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| WorkbenchError::Semantic(format!("unknown {} `{name}`", self.what)))
    }
}

fn semantic(msg: impl Into<String>) -> WorkbenchError {
    WorkbenchError::Semantic(msg.into())
}

fn arity<'r>(section: &str, row: &'r [String], n: usize) -> Result<&'r [String], WorkbenchError> {
    if row.len() == n {
        Ok(row)
    } else {
        Err(semantic(format!(
            "{section}: expected {n} entries per row, found {row:?}"
        )))
    }
}

/// A table keyed by tuples of names, flattened in row-major order.
fn table(
    section: &str,
    rows: &[Vec<String>],
    keys: &[&Lookup<'_>],
    value: &Lookup<'_>,
) -> Result<Vec<usize>, WorkbenchError> {
    let size: usize = keys.iter().map(|k| k.len()).product();
    let mut out = vec![None; size];
    for row in rows {
        let row = arity(section, row, keys.len() + 1)?;
        let k = row.iter().zip(keys).try_fold(0, |acc, (name, l)| {
            Ok::<_, WorkbenchError>(acc * l.len() + l.get(name)?)
        })?;
        if out[k].replace(value.get(&row[keys.len()])?).is_some() {
            return Err(semantic(format!("{section}: repeated entry {row:?}")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(k, v)| {
            v.ok_or_else(|| semantic(format!("{section}: missing entry at position {k}")))
        })
        .collect()
}

fn unflatten(mut p: usize, sizes: &[usize]) -> Vec<usize> {
    let mut tuple = vec![0; sizes.len()];
    for (slot, &s) in tuple.iter_mut().zip(sizes).rev() {
        *slot = p % s;
        p /= s;
    }
    tuple
}

/// A coherence table; the shorthand asks `identity` for the component at each key tuple.
fn coherence(
    section: &str,
    c: &Coherence,
    keys: &[&Lookup<'_>],
    value: &Lookup<'_>,
    identity: impl Fn(&[usize]) -> Option<usize>,
) -> Result<Vec<usize>, WorkbenchError> {
    match c {
        Coherence::List(rows) => table(section, rows, keys, value),
        Coherence::Shorthand {
            all_identity: false,
        } => Err(semantic(format!(
            "{section}: `all_identity = false` is not a table"
        ))),
        Coherence::Shorthand { all_identity: true } => {
            let sizes: Vec<usize> = keys.iter().map(|k| k.len()).collect();
            (0..sizes.iter().product())
                .map(|p| {
                    let tuple = unflatten(p, &sizes);
                    identity(&tuple).ok_or_else(|| {
                        semantic(format!(
                            "{section}: all_identity needs equal domain and codomain at {tuple:?}"
                        ))
                    })
                })
                .collect()
        }
    }
}

fn id_if(c: &FinCategory, x: Obj, y: Obj) -> Option<Mor> {
    (x == y).then(|| c.id(x))
}

fn load_category(s: &CategorySection) -> Result<(FinCategory, Names), WorkbenchError> {
    let objs = Lookup::new("object", &s.objects)?;
    let names: Vec<String> = s
        .morphisms
        .iter()
        .map(|r| r.first().cloned().unwrap_or_default())
        .collect();
    let mors = Lookup::new("morphism", &names)?;
    let mut dom = Vec::with_capacity(names.len());
    let mut cod = Vec::with_capacity(names.len());
    for row in &s.morphisms {
        let row = arity("category.morphisms", row, 3)?;
        dom.push(objs.get(&row[1])?);
        cod.push(objs.get(&row[2])?);
    }
    if s.identities.len() != s.objects.len() {
        return Err(semantic("category.identities: one identity per object"));
    }
    let identity = s
        .identities
        .iter()
        .map(|i| mors.get(i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut entries: HashMap<(Mor, Mor), Mor> = HashMap::new();
    let mut order = Vec::new();
    for row in &s.compose {
        let row = arity("category.compose", row, 3)?;
        let (g, f, h) = (mors.get(&row[0])?, mors.get(&row[1])?, mors.get(&row[2])?);
        if entries.insert((g, f), h).is_some() {
            return Err(semantic(format!(
                "category.compose: repeated entry {row:?}"
            )));
        }
        order.push((g, f));
    }
    for f in 0..names.len() {
        for (g, h) in [(identity[cod[f]], f), (f, identity[dom[f]])] {
            if let std::collections::hash_map::Entry::Vacant(slot) = entries.entry((g, h)) {
                slot.insert(f);
                order.push((g, h));
            }
        }
    }
    let triples: Vec<(Mor, Mor, Mor)> =
        order.into_iter().map(|k| (k.0, k.1, entries[&k])).collect();
    let cat = FinCategory::new(s.objects.len(), dom, cod, identity, triples)?;
    Ok((
        cat,
        Names {
            objects: s.objects.clone(),
            morphisms: names,
        },
    ))
}

fn load_monoidal(
    cat: &Arc<FinCategory>,
    names: &Names,
    s: &MonoidalSection,
) -> Result<MonoidalCategory, WorkbenchError> {
    let o = Lookup::new("object", &names.objects)?;
    let m = Lookup::new("morphism", &names.morphisms)?;
    let n = o.len();
    let tensor_obj = table("monoidal.tensor_obj", &s.tensor_obj, &[&o, &o], &o)?;
    let t = |a: Obj, b: Obj| tensor_obj[a * n + b];
    let unit = o.get(&s.unit)?;
    Ok(MonoidalCategory {
        cat: cat.clone(),
        tensor_mor: table("monoidal.tensor_mor", &s.tensor_mor, &[&m, &m], &m)?,
        unit,
        assoc: coherence("monoidal.assoc", &s.assoc, &[&o, &o, &o], &m, |k| {
            id_if(cat, t(t(k[0], k[1]), k[2]), t(k[0], t(k[1], k[2])))
        })?,
        lunitor: coherence("monoidal.lunitor", &s.lunitor, &[&o], &m, |k| {
            id_if(cat, t(unit, k[0]), k[0])
        })?,
        runitor: coherence("monoidal.runitor", &s.runitor, &[&o], &m, |k| {
            id_if(cat, t(k[0], unit), k[0])
        })?,
        tensor_obj,
    })
}

fn load_braided(
    mc: &Arc<MonoidalCategory>,
    names: &Names,
    s: &BraidedSection,
) -> Result<BraidedStructure, WorkbenchError> {
    let o = Lookup::new("object", &names.objects)?;
    let m = Lookup::new("morphism", &names.morphisms)?;
    let braiding = coherence("braided.braiding", &s.braiding, &[&o, &o], &m, |k| {
        id_if(&mc.cat, mc.t(k[0], k[1]), mc.t(k[1], k[0]))
    })?;
    Ok(BraidedStructure {
        host: mc.clone(),
        braiding,
        symmetric: s.symmetric,
    })
}

fn load_module(
    mc: &Arc<MonoidalCategory>,
    names: &Names,
    s: &ModuleSection,
) -> Result<(ModuleAction, Names), WorkbenchError> {
    let (carrier, carrier_names) = load_category(&s.carrier)?;
    let carrier = Arc::new(carrier);
    let a = Lookup::new("object", &names.objects)?;
    let am = Lookup::new("morphism", &names.morphisms)?;
    let x = Lookup::new("carrier object", &carrier_names.objects)?;
    let xm = Lookup::new("carrier morphism", &carrier_names.morphisms)?;
    let nl = x.len();
    let act_obj = table("module.act_obj", &s.act_obj, &[&a, &x], &x)?;
    let act = |p: Obj, q: Obj| act_obj[p * nl + q];
    let assoc = coherence("module.assoc", &s.assoc, &[&a, &a, &x], &xm, |k| {
        id_if(
            &carrier,
            act(mc.t(k[0], k[1]), k[2]),
            act(k[0], act(k[1], k[2])),
        )
    })?;
    let unitor = coherence("module.unitor", &s.unitor, &[&x], &xm, |k| {
        id_if(&carrier, act(mc.unit, k[0]), k[0])
    })?;
    let action = ModuleAction {
        base: mc.clone(),
        act_mor: table("module.act_mor", &s.act_mor, &[&am, &xm], &xm)?,
        act_obj,
        assoc,
        unitor,
        carrier,
    };
    Ok((action, carrier_names))
}

fn load_enriched(
    mc: &Arc<MonoidalCategory>,
    names: &Names,
    s: &EnrichedSection,
) -> Result<EnrichedCategory, WorkbenchError> {
    let e = Lookup::new("enriched object", &s.objects)?;
    let o = Lookup::new("object", &names.objects)?;
    let m = Lookup::new("morphism", &names.morphisms)?;
    Ok(EnrichedCategory {
        base: mc.clone(),
        n_obj: e.len(),
        hom: table("enriched.hom", &s.hom, &[&e, &e], &o)?,
        ident: table("enriched.ident", &s.ident, &[&e], &m)?,
        comp: table("enriched.comp", &s.comp, &[&e, &e, &e], &m)?,
    })
}

fn load_enriched_monoidal(
    host: &Arc<EnrichedCategory>,
    braiding: &BraidedStructure,
    names: &Names,
    objects: &[String],
    s: &EnrichedMonoidalSection,
) -> Result<(EnrichedMonoidalCategory, Option<EnrichedBraidedCategory>), WorkbenchError> {
    let e = Lookup::new("enriched object", objects)?;
    let m = Lookup::new("morphism", &names.morphisms)?;
    let n = e.len();
    let tensor_obj = table("enriched_monoidal.tensor_obj", &s.tensor_obj, &[&e, &e], &e)?;
    let t = |a: Obj, b: Obj| tensor_obj[a * n + b];
    let unit = e.get(&s.unit)?;
    let ident = |x: Obj, y: Obj| (x == y).then(|| host.ident(x));
    let assoc = coherence(
        "enriched_monoidal.assoc",
        &s.assoc,
        &[&e, &e, &e],
        &m,
        |k| ident(t(t(k[0], k[1]), k[2]), t(k[0], t(k[1], k[2]))),
    )?;
    let lunitor = coherence("enriched_monoidal.lunitor", &s.lunitor, &[&e], &m, |k| {
        ident(t(unit, k[0]), k[0])
    })?;
    let runitor = coherence("enriched_monoidal.runitor", &s.runitor, &[&e], &m, |k| {
        ident(t(k[0], unit), k[0])
    })?;
    let components = table(
        "enriched_monoidal.tensor_components",
        &s.tensor_components,
        &[&e, &e, &e, &e],
        &m,
    )?;
    let braided_components = s
        .braiding
        .as_ref()
        .map(|b| {
            coherence("enriched_monoidal.braiding", b, &[&e, &e], &m, |k| {
                ident(t(k[0], k[1]), t(k[1], k[0]))
            })
        })
        .transpose()?;
    let em = EnrichedMonoidalCategory::new(
        host.clone(),
        braiding.clone(),
        tensor_obj.clone(),
        components,
        unit,
        assoc,
        lunitor,
        runitor,
    );
    let eb = braided_components.map(|b| EnrichedBraidedCategory {
        host: em.clone(),
        braiding: b,
        symmetric: s.symmetric.unwrap_or(false),
    });
    Ok((em, eb))
}

fn parse_kind(k: Option<&str>) -> Result<LaxKind, WorkbenchError> {
    match k.unwrap_or("lax") {
        "lax" => Ok(LaxKind::Lax),
        "oplax" => Ok(LaxKind::Oplax),
        "strong" => Ok(LaxKind::Strong),
        other => Err(semantic(format!("functor.kind: unknown kind `{other}`"))),
    }
}

fn kind_name(k: LaxKind) -> &'static str {
    match k {
        LaxKind::Lax => "lax",
        LaxKind::Oplax => "oplax",
        LaxKind::Strong => "strong",
    }
}

fn load_functor(
    source: &Arc<MonoidalCategory>,
    names: &Names,
    target: &Arc<MonoidalCategory>,
    target_names: &Names,
    s: &FunctorSection,
) -> Result<LaxMonoidalFunctor, WorkbenchError> {
    let o = Lookup::new("object", &names.objects)?;
    let m = Lookup::new("morphism", &names.morphisms)?;
    let to = Lookup::new("target object", &target_names.objects)?;
    let tm = Lookup::new("target morphism", &target_names.morphisms)?;
    let unit_cell = s
        .unit_cell
        .as_deref()
        .ok_or_else(|| semantic("functor.unit_cell is required"))?;
    Ok(LaxMonoidalFunctor {
        source: source.clone(),
        target: target.clone(),
        functor: Functor {
            source: source.cat.clone(),
            target: target.cat.clone(),
            obj_map: table("functor.obj_map", &s.obj_map, &[&o], &to)?,
            mor_map: table("functor.mor_map", &s.mor_map, &[&m], &tm)?,
        },
        unit_cell: tm.get(unit_cell)?,
        mult: table("functor.mult", &s.mult, &[&o, &o], &tm)?,
        kind: parse_kind(s.kind.as_deref())?,
    })
}

fn require<'a, T>(v: &'a Option<T>, what: &str) -> Result<&'a T, WorkbenchError> {
    v.as_ref()
        .ok_or_else(|| semantic(format!("section [{what}] is required here")))
}

/// Builds the in-memory structures of a parsed document.
pub fn load_doc(f: &FileDoc) -> Result<Document, WorkbenchError> {
    let mut d = match f
        .fixture
        .as_ref()
        .filter(|s| s.kind != super::fixtures::FixtureKind::Table)
    {
        Some(spec) => {
            if f.category.is_some()
                || f.monoidal.is_some()
                || f.braided.is_some()
                || f.module.is_some()
                || f.enriched.is_some()
                || f.enriched_monoidal.is_some()
            {
                return Err(semantic(
                    "a generated [fixture] cannot be combined with explicit structure sections",
                ));
            }
            super::fixtures::build_fixture(spec)?
        }
        None => Document::default(),
    };
    if let Some(s) = &f.category {
        let (c, names) = load_category(s)?;
        d.category = Some(Arc::new(c));
        d.names = names;
    }
    if let Some(s) = &f.monoidal {
        let c = require(&d.category, "category")?;
        d.monoidal = Some(Arc::new(load_monoidal(c, &d.names, s)?));
    }
    if let Some(s) = &f.braided {
        let mc = require(&d.monoidal, "monoidal")?;
        d.braided = Some(load_braided(mc, &d.names, s)?);
    }
    if let Some(s) = &f.module {
        let mc = require(&d.monoidal, "monoidal")?;
        let (action, names) = load_module(mc, &d.names, s)?;
        d.module = Some(Arc::new(action));
        d.carrier_names = names;
    }
    if let Some(s) = &f.enriched {
        let mc = require(&d.monoidal, "monoidal")?;
        d.enriched = Some(Arc::new(load_enriched(mc, &d.names, s)?));
        d.enriched_names = s.objects.clone();
    }
    if let Some(s) = &f.enriched_monoidal {
        let host = require(&d.enriched, "enriched")?;
        let b = require(&d.braided, "braided")?;
        let (em, eb) = load_enriched_monoidal(host, b, &d.names, &d.enriched_names, s)?;
        d.enriched_monoidal = Some(Arc::new(em));
        d.enriched_braided = eb;
    }
    if let Some(s) = &f.functor {
        d.functor = Some(if s.global_sections {
            FunctorEntry::GlobalSections
        } else {
            let src = require(&d.monoidal, "monoidal")?;
            let target = load_doc(
                s.target
                    .as_deref()
                    .ok_or_else(|| semantic("functor.target is required"))?,
            )?;
            let tgt = require(&target.monoidal, "functor.target.monoidal")?;
            let functor = load_functor(src, &d.names, tgt, &target.names, s)?;
            FunctorEntry::Lax {
                functor,
                target_names: target.names,
            }
        });
    }
    if let Some(s) = &f.nat {
        let Some(FunctorEntry::Lax {
            functor,
            target_names,
        }) = &d.functor
        else {
            return Err(semantic("[nat] needs an explicit [functor]"));
        };
        let mut target_section = s.target.clone();
        target_section.target = None;
        let target = load_functor(
            &functor.source,
            &d.names,
            &functor.target,
            target_names,
            &target_section,
        )?;
        let o = Lookup::new("object", &d.names.objects)?;
        let tm = Lookup::new("target morphism", &target_names.morphisms)?;
        let components = table("nat.components", &s.components, &[&o], &tm)?;
        d.nat = Some(LaxMonoidalNat {
            nat: NatTransf {
                source: functor.functor.clone(),
                target: target.functor.clone(),
                components,
            },
            source: functor.clone(),
            target,
        });
    }
    Ok(d)
}

/// Parses and loads `.ecat` text. Parse errors carry line and column.
pub fn load_str(text: &str) -> Result<Document, WorkbenchError> {
    let f: FileDoc = toml::from_str(text).map_err(|e| WorkbenchError::Parse(e.to_string()))?;
    load_doc(&f)
}

// ---------------------------------------------------------------------------
// Saving

fn rows<const N: usize>(it: impl Iterator<Item = [String; N]>) -> Vec<Vec<String>> {
    it.map(|r| r.to_vec()).collect()
}

fn save_coherence(
    components: &[Mor],
    is_identity: impl Fn(usize, Mor) -> bool,
    keys: &[&[String]],
    value: &[String],
) -> Coherence {
    if components
        .iter()
        .enumerate()
        .all(|(p, &f)| is_identity(p, f))
    {
        return Coherence::Shorthand { all_identity: true };
    }
    let sizes: Vec<usize> = keys.iter().map(|k| k.len()).collect();
    Coherence::List(
        components
            .iter()
            .enumerate()
            .map(|(p, &f)| {
                let mut row: Vec<String> = unflatten(p, &sizes)
                    .iter()
                    .zip(keys)
                    .map(|(&i, k)| k[i].clone())
                    .collect();
                row.push(value[f].clone());
                row
            })
            .collect(),
    )
}

fn save_category(c: &FinCategory, names: &Names) -> CategorySection {
    let is_id = |f: Mor| c.id(c.dom(f)) == f;
    let mut entries = c.entries();
    entries.retain(|&(g, f, _)| !is_id(g) && !is_id(f));
    entries.sort_unstable();
    CategorySection {
        objects: names.objects.clone(),
        morphisms: rows((0..c.n_mor()).map(|f| {
            [
                names.morphisms[f].clone(),
                names.objects[c.dom(f)].clone(),
                names.objects[c.cod(f)].clone(),
            ]
        })),
        identities: (0..c.n_obj())
            .map(|x| names.morphisms[c.id(x)].clone())
            .collect(),
        compose: rows(entries.into_iter().map(|(g, f, h)| {
            [
                names.morphisms[g].clone(),
                names.morphisms[f].clone(),
                names.morphisms[h].clone(),
            ]
        })),
    }
}

fn save_monoidal(m: &MonoidalCategory, names: &Names) -> MonoidalSection {
    let (n, nm) = (m.n_obj(), m.cat.n_mor());
    let (o, mo) = (&names.objects, &names.morphisms);
    let is_id = |_: usize, f: Mor| m.cat.id(m.cat.dom(f)) == f;
    MonoidalSection {
        unit: o[m.unit].clone(),
        tensor_obj: (0..n * n)
            .map(|p| {
                vec![
                    o[p / n].clone(),
                    o[p % n].clone(),
                    o[m.tensor_obj[p]].clone(),
                ]
            })
            .collect(),
        tensor_mor: (0..nm * nm)
            .map(|p| {
                vec![
                    mo[p / nm].clone(),
                    mo[p % nm].clone(),
                    mo[m.tensor_mor[p]].clone(),
                ]
            })
            .collect(),
        assoc: save_coherence(&m.assoc, is_id, &[o, o, o], mo),
        lunitor: save_coherence(&m.lunitor, is_id, &[o], mo),
        runitor: save_coherence(&m.runitor, is_id, &[o], mo),
    }
}

fn save_module(a: &ModuleAction, names: &Names, carrier: &Names) -> ModuleSection {
    let c = &*a.carrier;
    let (na, nl, ma, ml) = (a.base.n_obj(), c.n_obj(), a.base.cat.n_mor(), c.n_mor());
    let is_id = |_: usize, f: Mor| c.id(c.dom(f)) == f;
    let (o, mo, x, xm) = (
        &names.objects,
        &names.morphisms,
        &carrier.objects,
        &carrier.morphisms,
    );
    ModuleSection {
        carrier: save_category(c, carrier),
        act_obj: (0..na * nl)
            .map(|p| {
                vec![
                    o[p / nl].clone(),
                    x[p % nl].clone(),
                    x[a.act_obj[p]].clone(),
                ]
            })
            .collect(),
        act_mor: (0..ma * ml)
            .map(|p| {
                vec![
                    mo[p / ml].clone(),
                    xm[p % ml].clone(),
                    xm[a.act_mor[p]].clone(),
                ]
            })
            .collect(),
        assoc: save_coherence(&a.assoc, is_id, &[o, o, x], xm),
        unitor: save_coherence(&a.unitor, is_id, &[x], xm),
    }
}

fn save_enriched(e: &EnrichedCategory, names: &Names, objects: &[String]) -> EnrichedSection {
    let n = e.n_obj;
    let (o, mo) = (&names.objects, &names.morphisms);
    EnrichedSection {
        objects: objects.to_vec(),
        hom: (0..n * n)
            .map(|p| {
                vec![
                    objects[p / n].clone(),
                    objects[p % n].clone(),
                    o[e.hom[p]].clone(),
                ]
            })
            .collect(),
        ident: (0..n)
            .map(|x| vec![objects[x].clone(), mo[e.ident[x]].clone()])
            .collect(),
        comp: (0..n * n * n)
            .map(|p| {
                vec![
                    objects[p / (n * n)].clone(),
                    objects[(p / n) % n].clone(),
                    objects[p % n].clone(),
                    mo[e.comp[p]].clone(),
                ]
            })
            .collect(),
    }
}

fn save_enriched_monoidal(
    em: &EnrichedMonoidalCategory,
    eb: Option<&EnrichedBraidedCategory>,
    names: &Names,
    objects: &[String],
) -> EnrichedMonoidalSection {
    let e = &*em.host;
    let n = e.n_obj;
    let nn = n * n;
    let mo = &names.morphisms;
    let ob = objects;
    let tensor_obj = &em.tensor.obj_map;
    let t = |a: Obj, b: Obj| tensor_obj[a * n + b];
    let ident_at = |x: Obj, y: Obj, f: Mor| x == y && e.ident(x) == f;
    EnrichedMonoidalSection {
        unit: ob[em.unit].clone(),
        tensor_obj: (0..nn)
            .map(|p| {
                vec![
                    ob[p / n].clone(),
                    ob[p % n].clone(),
                    ob[tensor_obj[p]].clone(),
                ]
            })
            .collect(),
        tensor_components: (0..nn * nn)
            .map(|p| {
                let (s, q) = (p / nn, p % nn);
                vec![
                    ob[s / n].clone(),
                    ob[s % n].clone(),
                    ob[q / n].clone(),
                    ob[q % n].clone(),
                    mo[em.tensor.components[p]].clone(),
                ]
            })
            .collect(),
        assoc: save_coherence(
            &em.assoc,
            |p, f| {
                ident_at(
                    t(t(p / nn, (p / n) % n), p % n),
                    t(p / nn, t((p / n) % n, p % n)),
                    f,
                )
            },
            &[ob, ob, ob],
            mo,
        ),
        lunitor: save_coherence(&em.lunitor, |x, f| ident_at(t(em.unit, x), x, f), &[ob], mo),
        runitor: save_coherence(&em.runitor, |x, f| ident_at(t(x, em.unit), x, f), &[ob], mo),
        braiding: eb.map(|b| {
            save_coherence(
                &b.braiding,
                |p, f| ident_at(t(p / n, p % n), t(p % n, p / n), f),
                &[ob, ob],
                mo,
            )
        }),
        symmetric: eb.map(|b| b.symmetric),
    }
}

fn save_functor(
    f: &LaxMonoidalFunctor,
    names: &Names,
    target_names: &Names,
    with_target: bool,
) -> FunctorSection {
    let (n, m) = (f.source.n_obj(), f.source.cat.n_mor());
    let (o, mo, to, tm) = (
        &names.objects,
        &names.morphisms,
        &target_names.objects,
        &target_names.morphisms,
    );
    FunctorSection {
        global_sections: false,
        kind: Some(kind_name(f.kind).into()),
        target: with_target.then(|| {
            Box::new(save_doc(&Document::from_monoidal(
                &f.target,
                target_names.clone(),
            )))
        }),
        obj_map: (0..n)
            .map(|x| vec![o[x].clone(), to[f.functor.obj_map[x]].clone()])
            .collect(),
        mor_map: (0..m)
            .map(|g| vec![mo[g].clone(), tm[f.functor.mor_map[g]].clone()])
            .collect(),
        mult: (0..n * n)
            .map(|p| vec![o[p / n].clone(), o[p % n].clone(), tm[f.mult[p]].clone()])
            .collect(),
        unit_cell: Some(tm[f.unit_cell].clone()),
    }
}

/// The raw form of a document, with generated names where none are known.
pub fn save_doc(d: &Document) -> FileDoc {
    let mut d = d.clone();
    d.normalize_names();
    let names = &d.names;
    let mut f = FileDoc {
        category: d.category.as_ref().map(|c| save_category(c, names)),
        monoidal: d.monoidal.as_ref().map(|m| save_monoidal(m, names)),
        braided: d.braided.as_ref().map(|b| BraidedSection {
            symmetric: b.symmetric,
            braiding: save_coherence(
                &b.braiding,
                |_, g| b.host.cat.id(b.host.cat.dom(g)) == g,
                &[&names.objects, &names.objects],
                &names.morphisms,
            ),
        }),
        module: d
            .module
            .as_ref()
            .map(|m| save_module(m, names, &d.carrier_names)),
        enriched: d
            .enriched
            .as_ref()
            .map(|e| save_enriched(e, names, &d.enriched_names)),
        enriched_monoidal: d.enriched_monoidal.as_ref().map(|em| {
            save_enriched_monoidal(em, d.enriched_braided.as_ref(), names, &d.enriched_names)
        }),
        ..FileDoc::default()
    };
    f.functor = d.functor.as_ref().map(|fe| match fe {
        FunctorEntry::GlobalSections => FunctorSection {
            global_sections: true,
            kind: None,
            target: None,
            obj_map: vec![],
            mor_map: vec![],
            mult: vec![],
            unit_cell: None,
        },
        FunctorEntry::Lax {
            functor,
            target_names,
        } => save_functor(functor, names, target_names, true),
    });
    if let (Some(t), Some(FunctorEntry::Lax { target_names, .. })) = (&d.nat, &d.functor) {
        let n = t.nat.components.len();
        f.nat = Some(NatSection {
            target: save_functor(&t.target, names, target_names, false),
            components: (0..n)
                .map(|x| {
                    vec![
                        names.objects[x].clone(),
                        target_names.morphisms[t.nat.components[x]].clone(),
                    ]
                })
                .collect(),
        });
    }
    f
}

/// Serializes a document; the output is a deterministic function of the structures and names.
pub fn save_str(d: &Document) -> Result<String, WorkbenchError> {
    toml::to_string(&save_doc(d)).map_err(|e| WorkbenchError::Serialize(e.to_string()))
}
