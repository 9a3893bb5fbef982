//! Fixture builders: small structures described by a handful of parameters.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::actions::ModuleAction;
use crate::canonical::{
    canonical_braided, canonical_construction, canonical_monoidal, central_self_module,
};
use crate::core_cat::{Budget, FinCategory, Obj};
use crate::enriched_core::EnrichedCategory;
use crate::enriched_monoidal::{EnrichedBraidedCategory, EnrichedMonoidalCategory};
use crate::monoidal_cat::{
    check_algebra, check_braided, AlgebraObject, BraidedStructure, MonoidalCategory,
};

use super::format::{Document, Names};
use super::WorkbenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
    Terminal,
    DiscreteMonoid,
    Lattice,
    /// Explicit sections; the `[fixture]` table only labels the document.
    Table,
    AstAlgebra,
    /// A commutative monoid with a compatible order, enriched in lattice-2.
    MonoidPreorder,
}

/// What to derive from the base monoidal category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Build {
    #[default]
    Monoidal,
    SelfModule,
    Canonical,
    CanonicalMonoidal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub kind: FixtureKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<String>,
    /// `[a, b, a·b]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<Vec<String>>,
    /// `[a, b]` for `a ≤ b`; closed reflexively and transitively.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub order: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default)]
    pub build: Build,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<FixtureSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
}

fn bad(msg: impl Into<String>) -> WorkbenchError {
    WorkbenchError::Semantic(format!("fixture: {}", msg.into()))
}

fn index(elements: &[String], name: &str) -> Result<usize, WorkbenchError> {
    elements
        .iter()
        .position(|e| e == name)
        .ok_or_else(|| bad(format!("unknown element `{name}`")))
}

fn product_table(spec: &FixtureSpec) -> Result<(Vec<Vec<usize>>, usize), WorkbenchError> {
    let n = spec.elements.len();
    let mut mul = vec![vec![None; n]; n];
    for row in &spec.table {
        let [a, b, c] = row.as_slice() else {
            return Err(bad(format!("table rows have three entries, found {row:?}")));
        };
        let (a, b, c) = (
            index(&spec.elements, a)?,
            index(&spec.elements, b)?,
            index(&spec.elements, c)?,
        );
        if mul[a][b].replace(c).is_some() {
            return Err(bad(format!("repeated product {row:?}")));
        }
    }
    let mul = mul
        .into_iter()
        .enumerate()
        .map(|(a, r)| {
            r.into_iter()
                .enumerate()
                .map(|(b, c)| c.ok_or_else(|| bad(format!("missing product of {a} and {b}"))))
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let unit = index(
        &spec.elements,
        spec.unit
            .as_deref()
            .ok_or_else(|| bad("`unit` is required"))?,
    )?;
    Ok((mul, unit))
}

fn order_relation(spec: &FixtureSpec) -> Result<Vec<Vec<bool>>, WorkbenchError> {
    let n = spec.elements.len();
    let mut leq = vec![vec![false; n]; n];
    for (x, row) in leq.iter_mut().enumerate() {
        row[x] = true;
    }
    for row in &spec.order {
        let [a, b] = row.as_slice() else {
            return Err(bad(format!("order rows have two entries, found {row:?}")));
        };
        leq[index(&spec.elements, a)?][index(&spec.elements, b)?] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    if (0..n).any(|i| (0..n).any(|j| i != j && leq[i][j] && leq[j][i])) {
        return Err(bad("order is not antisymmetric"));
    }
    Ok(leq)
}

fn preorder_names(cat: &FinCategory, elements: &[String]) -> Names {
    Names {
        objects: elements.to_vec(),
        morphisms: (0..cat.n_mor())
            .map(|f| format!("{}<={}", elements[cat.dom(f)], elements[cat.cod(f)]))
            .collect(),
    }
}

fn lattice(spec: &FixtureSpec) -> Result<(Arc<MonoidalCategory>, Names), WorkbenchError> {
    let leq = order_relation(spec)?;
    let n = spec.elements.len();
    let meet = |a: Obj, b: Obj| -> Option<Obj> {
        let lower: Vec<Obj> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&c| leq[c][m]))
    };
    let table: Vec<Obj> = (0..n * n)
        .map(|p| {
            meet(p / n, p % n).ok_or_else(|| {
                bad(format!(
                    "no meet of {} and {}",
                    spec.elements[p / n],
                    spec.elements[p % n]
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let top = (0..n)
        .find(|&t| (0..n).all(|x| leq[x][t]))
        .ok_or_else(|| bad("lattice has no top element"))?;
    let cat = Arc::new(FinCategory::from_preorder(n, |x, y| leq[x][y]));
    let names = preorder_names(&cat, &spec.elements);
    Ok((
        Arc::new(MonoidalCategory::from_thin(
            cat,
            |a, b| table[a * n + b],
            top,
        )?),
        names,
    ))
}

fn discrete_names(elements: &[String]) -> Names {
    Names {
        objects: elements.to_vec(),
        morphisms: elements.iter().map(|e| format!("id_{e}")).collect(),
    }
}

fn base_structures(
    spec: &FixtureSpec,
) -> Result<(Arc<MonoidalCategory>, Names, Option<BraidedStructure>), WorkbenchError> {
    match spec.kind {
        FixtureKind::Terminal => {
            let m = Arc::new(MonoidalCategory::terminal());
            Ok((
                m.clone(),
                discrete_names(&["*".to_string()]),
                Some(BraidedStructure::identity(m, true)),
            ))
        }
        FixtureKind::DiscreteMonoid => {
            let (mul, unit) = product_table(spec)?;
            let m = Arc::new(MonoidalCategory::discrete_monoid(&mul, unit)?);
            let n = mul.len();
            let commutative = (0..n).all(|a| (0..n).all(|b| mul[a][b] == mul[b][a]));
            let braided = commutative.then(|| BraidedStructure::identity(m.clone(), true));
            Ok((m, discrete_names(&spec.elements), braided))
        }
        FixtureKind::Lattice => {
            let (m, names) = lattice(spec)?;
            let b = BraidedStructure::thin(m.clone())?;
            Ok((m, names, Some(b)))
        }
        _ => Err(bad(format!(
            "{:?} has no base monoidal category",
            spec.kind
        ))),
    }
}

fn lattice2() -> Result<(Arc<MonoidalCategory>, Names), WorkbenchError> {
    let two = FixtureSpec {
        kind: FixtureKind::Lattice,
        elements: vec!["0".into(), "1".into()],
        table: vec![],
        order: vec![vec!["0".into(), "1".into()]],
        unit: None,
        build: Build::Monoidal,
        base: None,
        object: None,
    };
    lattice(&two)
}

fn monoid_preorder(spec: &FixtureSpec) -> Result<Document, WorkbenchError> {
    let (mul, unit) = product_table(spec)?;
    let leq = order_relation(spec)?;
    let n = mul.len();
    for a in 0..n {
        for b in 0..n {
            if mul[a][b] != mul[b][a] {
                return Err(bad("monoid is not commutative"));
            }
            for c in 0..n {
                if leq[a][b] && !leq[mul[a][c]][mul[b][c]] {
                    return Err(bad("product is not monotone"));
                }
            }
        }
    }
    let (l2, names) = lattice2()?;
    let b = BraidedStructure::thin(l2)?;
    let em = EnrichedMonoidalCategory::thin(
        &b,
        n,
        |x, y| usize::from(leq[x][y]),
        |x, y| mul[x][y],
        unit,
    )?;
    let eb = EnrichedBraidedCategory::thin(em)?;
    Ok(Document::from_enriched_braided(
        &eb,
        names,
        spec.elements.clone(),
    ))
}

fn ast_algebra(spec: &FixtureSpec) -> Result<Document, WorkbenchError> {
    let base = spec
        .base
        .as_deref()
        .ok_or_else(|| bad("ast_algebra needs a `base` fixture"))?;
    let (m, names, braided) = base_structures(base)?;
    let object = spec
        .object
        .as_deref()
        .ok_or_else(|| bad("ast_algebra needs an `object`"))?;
    let carrier = index(&names.objects, object)?;
    let unique = |x: Obj, y: Obj, what: &str| match m.cat.hom(x, y) {
        [f] => Ok(*f),
        fs => Err(bad(format!(
            "{what} is not determined: {} candidates",
            fs.len()
        ))),
    };
    let alg = AlgebraObject {
        host: m.clone(),
        carrier,
        mult: unique(m.t(carrier, carrier), carrier, "multiplication")?,
        unit: unique(m.unit, carrier, "unit")?,
        commutative: braided.is_some(),
    };
    let r = check_algebra(&alg, braided.as_ref());
    if !r.is_valid() {
        return Err(WorkbenchError::Invalid(r));
    }
    match braided {
        Some(b) => {
            let em = Arc::new(EnrichedMonoidalCategory::from_commutative_algebra(
                &b, &alg,
            )?);
            Ok(Document::from_enriched_monoidal(
                &em,
                names,
                vec!["*".into()],
            ))
        }
        None => Ok(Document::from_enriched(
            &Arc::new(EnrichedCategory::from_algebra(&alg)),
            names,
            vec!["*".into()],
        )),
    }
}

/// Expands a fixture specification into its structures.
pub fn build_fixture(spec: &FixtureSpec) -> Result<Document, WorkbenchError> {
    match spec.kind {
        FixtureKind::Table => Err(bad("`table` fixtures are written as explicit sections")),
        FixtureKind::MonoidPreorder => monoid_preorder(spec),
        FixtureKind::AstAlgebra => ast_algebra(spec),
        _ => {
            let (m, names, braided) = base_structures(spec)?;
            let mut d = Document {
                braided: braided.clone(),
                ..Document::from_monoidal(&m, names.clone())
            };
            match spec.build {
                Build::Monoidal => {}
                Build::SelfModule | Build::Canonical => {
                    let module = Arc::new(ModuleAction::regular(&m));
                    if spec.build == Build::Canonical {
                        let canon = canonical_construction(&module, Budget::DEFAULT)?;
                        d.enriched = Some(canon.category.clone());
                        d.enriched_names = names.objects.clone();
                    }
                    d.module = Some(module);
                    d.carrier_names = names;
                }
                Build::CanonicalMonoidal => {
                    let b =
                        braided.ok_or_else(|| bad("canonical_monoidal needs a braided base"))?;
                    let r = check_braided(&b);
                    if !r.is_valid() {
                        return Err(WorkbenchError::Invalid(r));
                    }
                    let mm = central_self_module(&b, Budget::DEFAULT)?;
                    let objects = names.objects.clone();
                    d = if b.symmetric {
                        let (_, eb) = canonical_braided(&mm, &b, Budget::DEFAULT)?;
                        Document::from_enriched_braided(&eb, names.clone(), objects)
                    } else {
                        let (_, em) = canonical_monoidal(&mm, Budget::DEFAULT)?;
                        Document::from_enriched_monoidal(&Arc::new(em), names.clone(), objects)
                    };
                    d.module = Some(mm.module.clone());
                    d.carrier_names = names;
                }
            }
            Ok(d)
        }
    }
}
