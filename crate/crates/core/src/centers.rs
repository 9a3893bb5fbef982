//! Centers of enriched categories.
//!
//! `E0(M)` is the enriched monoidal category of enriched endofunctors of a
//! `B`-enriched category, enriched over the Drinfeld center `Z1(B)`, with
//! hom-objects found as terminal cones. `Γ₁(M)` is the enriched Drinfeld center of
//! an enriched monoidal category over its Müger center `Z2(A)`, and `Γ₂(M)` the
//! full subcategory of transparent objects of an enriched braided category. The
//! `verify_*` routines build the comparison functor from a concrete action and check
//! the pasting identity and the uniqueness of the comparison isomorphism.

use std::collections::HashMap;
use std::sync::Arc;

use crate::actions::{ActionError, ModuleAction, MonoidalModule, RLaxStructure};
use crate::canonical::{
    canonical_construction, canonical_monoidal, enumerate_enriched_functors, enumerate_rlax,
    enumerate_xilax, rlax_from_enriched_functor, Canonical, CanonicalError,
};
use crate::core_cat::{
    enum_components, enumerate_nat_transfs, Budget, BudgetExceeded, BudgetMeter, CategoryError,
    FinCategory, Functor, Mor, NatTransf, Obj, ValidationReport, Verification,
};
use crate::enriched_core::{
    check_enriched_category, check_enriched_functor, check_enriched_nat, EnrichedCategory,
    EnrichedError, EnrichedFunctor, EnrichedNat,
};
use crate::enriched_monoidal::{
    check_enriched_monoidal_functor, check_enriched_monoidal_nat,
    enumerate_enriched_half_braidings, rebase, underlying_braided, underlying_monoidal,
    EnrichedBraidedCategory, EnrichedHalfBraiding, EnrichedMonoidalCategory,
    EnrichedMonoidalFunctor, EnrichedMonoidalNat,
};
use crate::monoidal_cat::{
    check_braided_functor, check_lax_monoidal_functor, check_lax_monoidal_nat, drinfeld_center_z1,
    muger_center_z2, muger_centralizer, product_monoidal, tensor_half_braidings, BraidedStructure,
    BraidedSubcategory, DrinfeldCenter, HalfBraidingOrd, LaxKind, LaxMonoidalFunctor,
    LaxMonoidalNat, MonoidalCategory, MonoidalError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CenterError {
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Enriched(#[from] EnrichedError),
    #[error(transparent)]
    Monoidal(#[from] MonoidalError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("no terminal cone of transformations for the endofunctor pairs {0:?}")]
    NoEndofunctorHom(Vec<(usize, usize)>),
    #[error("no enriched hom-object between center objects {0} and {1}")]
    NoCenterHom(usize, usize),
    #[error("invalid input:\n{0}")]
    InvalidInput(ValidationReport),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

fn ensure(r: ValidationReport) -> Result<(), CenterError> {
    if r.is_valid() {
        Ok(())
    } else {
        Err(CenterError::InvalidInput(r))
    }
}

fn need<T>(v: Option<T>, what: impl FnOnce() -> String) -> Result<T, CenterError> {
    v.ok_or_else(|| CenterError::Precondition(what()))
}

/// Runs a verification body, turning a failed construction step into a failed check.
fn guarded(
    body: impl FnOnce(&mut Verification) -> Result<(), CenterError>,
) -> Result<Verification, CenterError> {
    let mut v = Verification::new();
    match body(&mut v) {
        Ok(()) => Ok(v),
        Err(CenterError::Precondition(msg)) => {
            v.record("construction", false, msg);
            Ok(v)
        }
        Err(CenterError::InvalidInput(r)) => {
            v.record("construction", false, r.to_string());
            Ok(v)
        }
        Err(e) => Err(e),
    }
}

/// The inverse of an element `f ∈ hom(x,y)` under enriched composition.
pub fn element_inverse(e: &EnrichedCategory, x: Obj, y: Obj, f: Mor) -> Option<Mor> {
    let b = &*e.base;
    b.cat.hom(b.unit, e.hom(y, x)).iter().copied().find(|&g| {
        e.compose_elements(x, y, x, g, f) == Some(e.ident(x))
            && e.compose_elements(y, x, y, f, g) == Some(e.ident(y))
    })
}

fn position<T: PartialEq>(xs: &[T], x: &T) -> Option<usize> {
    xs.iter().position(|y| y == x)
}

// ---------------------------------------------------------------------------
// Terminal cones

/// An apex in a category `Z` lying over `B` through `ι`, with legs `ι(apex) → target_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    pub apex: Obj,
    pub legs: Vec<Mor>,
}

/// A terminal cone together with every candidate and its unique mediator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalCone {
    pub terminal: Cone,
    pub candidates: Vec<Cone>,
    pub mediators: Vec<Mor>,
}

fn is_cone_morphism(b: &FinCategory, iota: &Functor, f: Mor, from: &Cone, to: &Cone) -> bool {
    let g = iota.mor(f);
    from.legs
        .iter()
        .zip(&to.legs)
        .all(|(&l, &t)| b.compose(t, g) == Some(l))
}

/// Morphisms `from.apex → to.apex` in `Z` commuting with the legs.
pub fn cone_morphisms(
    z: &FinCategory,
    b: &FinCategory,
    iota: &Functor,
    from: &Cone,
    to: &Cone,
) -> Vec<Mor> {
    z.hom(from.apex, to.apex)
        .iter()
        .copied()
        .filter(|&f| is_cone_morphism(b, iota, f, from, to))
        .collect()
}

/// Brute-force terminal object among the cones accepted by `accept`.
pub fn terminal_cone(
    z: &FinCategory,
    b: &FinCategory,
    iota: &Functor,
    targets: &[Obj],
    accept: &mut dyn FnMut(&Cone) -> bool,
    meter: &mut BudgetMeter,
) -> Result<Option<TerminalCone>, BudgetExceeded> {
    let mut candidates = Vec::new();
    for apex in 0..z.n_obj() {
        let choices: Vec<Vec<Mor>> = targets
            .iter()
            .map(|&t| b.hom(iota.obj(apex), t).to_vec())
            .collect();
        let mut all = Vec::new();
        enum_components(&choices, &mut Vec::new(), meter, &mut |legs| {
            all.push(legs.to_vec())
        })?;
        for legs in all {
            meter.tick()?;
            let c = Cone { apex, legs };
            if accept(&c) {
                candidates.push(c);
            }
        }
    }
    'terminal: for t in &candidates {
        let mut mediators = Vec::with_capacity(candidates.len());
        for c in &candidates {
            meter.tick()?;
            match cone_morphisms(z, b, iota, c, t)[..] {
                [f] => mediators.push(f),
                _ => continue 'terminal,
            }
        }
        return Ok(Some(TerminalCone {
            terminal: t.clone(),
            candidates: candidates.clone(),
            mediators,
        }));
    }
    Ok(None)
}

/// Rechecks a terminal-cone certificate by scanning every morphism into the terminal apex.
pub fn check_terminal_cone(
    z: &FinCategory,
    b: &FinCategory,
    iota: &Functor,
    tc: &TerminalCone,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    if tc.mediators.len() != tc.candidates.len() || !tc.candidates.contains(&tc.terminal) {
        r.push("terminal_cone.typing", "certificate lists do not match");
        return r;
    }
    for (i, (c, &f)) in tc.candidates.iter().zip(&tc.mediators).enumerate() {
        if !is_cone_morphism(b, iota, f, c, &tc.terminal)
            || z.dom(f) != c.apex
            || z.cod(f) != tc.terminal.apex
        {
            r.push(
                "terminal_cone.mediator",
                format!("recorded mediator of candidate {i} is not a cone morphism"),
            );
        }
        let n = z
            .hom(c.apex, tc.terminal.apex)
            .iter()
            .filter(|&&g| is_cone_morphism(b, iota, g, c, &tc.terminal))
            .count();
        if n != 1 {
            r.push(
                "terminal_cone.uniqueness",
                format!("candidate {i} has {n} cone morphisms to the terminal cone"),
            );
        }
    }
    r
}

fn unique_mediator(
    z: &FinCategory,
    b: &FinCategory,
    iota: &Functor,
    from: &Cone,
    to: &Cone,
) -> Result<Mor, CenterError> {
    match cone_morphisms(z, b, iota, from, to)[..] {
        [f] => Ok(f),
        ref fs => Err(CenterError::Precondition(format!(
            "expected one mediator from apex {}, found {}",
            from.apex,
            fs.len()
        ))),
    }
}

// ---------------------------------------------------------------------------
// E0

/// The cone condition on `(a, {a_x})`: for all `x, y`, with `γ` the half-braiding of
/// `a` at `hom(x,y)`, `∘ ∘ (a_y ⊗ F_{x,y}) ∘ γ = ∘ ∘ (G_{x,y} ⊗ a_x)`.
fn transformation_cone(
    m: &EnrichedCategory,
    center: &DrinfeldCenter,
    f: &EnrichedFunctor,
    g: &EnrichedFunctor,
    cone: &Cone,
) -> bool {
    let b = &*m.base;
    let n = m.n_obj;
    (0..n).all(|x| {
        (0..n).all(|y| {
            let gamma = center.gamma(cone.apex, m.hom(x, y));
            let lhs = b.cat.seq(&[
                gamma,
                b.tm(cone.legs[y], f.component(x, y)),
                m.comp(f.obj(x), f.obj(y), g.obj(y)),
            ]);
            let rhs = b.cat.seq(&[
                b.tm(g.component(x, y), cone.legs[x]),
                m.comp(f.obj(x), g.obj(x), g.obj(y)),
            ]);
            lhs.is_some() && lhs == rhs
        })
    })
}

/// Enriched endofunctors with identity background and, per ordered pair, the terminal
/// cone of transformations when it exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndofunctorHoms {
    pub center: DrinfeldCenter,
    pub functors: Vec<EnrichedFunctor>,
    pub brackets: Vec<Option<TerminalCone>>,
}

impl EndofunctorHoms {
    pub fn missing(&self) -> Vec<(usize, usize)> {
        let k = self.functors.len();
        (0..k * k)
            .filter(|&p| self.brackets[p].is_none())
            .map(|p| (p / k, p % k))
            .collect()
    }

    pub fn complete(&self) -> bool {
        self.brackets.iter().all(Option::is_some)
    }
}

/// Searches every `[F,G]` in `Z1(B)` for the endofunctors of `m`.
pub fn endofunctor_homs(
    m: &Arc<EnrichedCategory>,
    budget: Budget,
) -> Result<EndofunctorHoms, CenterError> {
    ensure(check_enriched_category(m))?;
    let b = &m.base;
    let center = drinfeld_center_z1(b, budget)?;
    let functors = enumerate_enriched_functors(m, m, &LaxMonoidalFunctor::identity(b), budget)?;
    let mut meter = budget.meter();
    let z = &*center.monoidal().cat;
    let iota = &center.forgetful.functor;
    let mut brackets = Vec::with_capacity(functors.len() * functors.len());
    for f in &functors {
        for g in &functors {
            let targets: Vec<Obj> = (0..m.n_obj).map(|x| m.hom(f.obj(x), g.obj(x))).collect();
            let mut accept = |c: &Cone| transformation_cone(m, &center, f, g, c);
            brackets.push(terminal_cone(
                z,
                &b.cat,
                iota,
                &targets,
                &mut accept,
                &mut meter,
            )?);
        }
    }
    Ok(EndofunctorHoms {
        center,
        functors,
        brackets,
    })
}

/// `E0(M)`: endofunctors as objects, `[F,G]` as hom-objects in `Z1(B)`, composition of
/// functors as tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E0Center {
    pub source: Arc<EnrichedCategory>,
    pub center: DrinfeldCenter,
    pub functors: Vec<EnrichedFunctor>,
    pub brackets: Vec<TerminalCone>,
    pub em: Arc<EnrichedMonoidalCategory>,
}

impl E0Center {
    pub fn bracket(&self, f: usize, g: usize) -> &TerminalCone {
        &self.brackets[f * self.functors.len() + g]
    }

    pub fn index_of(&self, f: &EnrichedFunctor) -> Option<usize> {
        self.functors
            .iter()
            .position(|g| g.obj_map == f.obj_map && g.components == f.components)
    }

    /// Every morphism of cones from `from` into `[F,G]`.
    pub fn mediators(&self, f: usize, g: usize, from: &Cone) -> Vec<Mor> {
        let c = &self.center;
        cone_morphisms(
            &c.monoidal().cat,
            &self.source.base.cat,
            &c.forgetful.functor,
            from,
            &self.bracket(f, g).terminal,
        )
    }

    pub fn mediate(&self, f: usize, g: usize, from: &Cone) -> Result<Mor, CenterError> {
        let c = &self.center;
        unique_mediator(
            &c.monoidal().cat,
            &self.source.base.cat,
            &c.forgetful.functor,
            from,
            &self.bracket(f, g).terminal,
        )
    }

    /// Rechecks every terminal-cone certificate.
    pub fn check_certificates(&self) -> ValidationReport {
        let c = &self.center;
        let mut r = ValidationReport::new();
        for (p, tc) in self.brackets.iter().enumerate() {
            r.absorb(
                &format!("bracket[{p}]"),
                check_terminal_cone(
                    &c.monoidal().cat,
                    &self.source.base.cat,
                    &c.forgetful.functor,
                    tc,
                ),
            );
        }
        r
    }
}

/// Builds `E0(M)`. Fails with [`CenterError::NoEndofunctorHom`] when some `[F,G]` is missing.
pub fn e0_center(m: &Arc<EnrichedCategory>, budget: Budget) -> Result<E0Center, CenterError> {
    let homs = endofunctor_homs(m, budget)?;
    let missing = homs.missing();
    if !missing.is_empty() {
        return Err(CenterError::NoEndofunctorHom(missing));
    }
    let EndofunctorHoms {
        center,
        functors,
        brackets,
    } = homs;
    let brackets: Vec<TerminalCone> = brackets.into_iter().flatten().collect();
    let b = &*m.base;
    let zm = center.monoidal().clone();
    let k = functors.len();
    let n = m.n_obj;
    let partial = E0Center {
        source: m.clone(),
        center: center.clone(),
        functors: functors.clone(),
        brackets: brackets.clone(),
        em: Arc::new(EnrichedMonoidalCategory::new(
            Arc::new(EnrichedCategory::terminal()),
            BraidedStructure::identity(Arc::new(MonoidalCategory::terminal()), true),
            vec![0],
            vec![0],
            0,
            vec![0],
            vec![0],
            vec![0],
        )),
    };
    let apex = |f: usize, g: usize| brackets[f * k + g].terminal.apex;
    let legs = |f: usize, g: usize| &brackets[f * k + g].terminal.legs;
    let ident: Vec<Mor> = (0..k)
        .map(|f| {
            let cone = Cone {
                apex: zm.unit,
                legs: (0..n).map(|x| m.ident(functors[f].obj(x))).collect(),
            };
            partial.mediate(f, f, &cone)
        })
        .collect::<Result<_, _>>()?;
    let mut comp = Vec::with_capacity(k * k * k);
    for f in 0..k {
        for g in 0..k {
            for h in 0..k {
                let (ff, fg, fh) = (&functors[f], &functors[g], &functors[h]);
                let cone_legs = (0..n)
                    .map(|x| {
                        b.cat.seq(&[
                            b.tm(legs(g, h)[x], legs(f, g)[x]),
                            m.comp(ff.obj(x), fg.obj(x), fh.obj(x)),
                        ])
                    })
                    .collect::<Option<Vec<_>>>();
                let cone = Cone {
                    apex: zm.t(apex(g, h), apex(f, g)),
                    legs: need(cone_legs, || "composition legs".into())?,
                };
                comp.push(partial.mediate(f, h, &cone)?);
            }
        }
    }
    let host = Arc::new(
        EnrichedCategory {
            base: zm.clone(),
            n_obj: k,
            hom: (0..k * k).map(|p| apex(p / k, p % k)).collect(),
            ident,
            comp,
        }
        .validated()?,
    );
    let unit = need(partial.index_of(&EnrichedFunctor::identity(m)), || {
        "identity endofunctor missing".into()
    })?;
    let tensor_obj: Vec<Obj> = (0..k * k)
        .map(|p| {
            let composite = functors[p % k].then(&functors[p / k])?;
            need(partial.index_of(&composite), || {
                format!("composite of endofunctors {} and {}", p / k, p % k)
            })
        })
        .collect::<Result<_, CenterError>>()?;
    let kk = k * k;
    let mut tensor_components = Vec::with_capacity(kk * kk);
    for s in 0..kk {
        for t in 0..kk {
            let ((f, f2), (g, g2)) = ((s / k, s % k), (t / k, t % k));
            let (ff, ff2, gg2) = (&functors[f], &functors[f2], &functors[g2]);
            let cone_legs = (0..n)
                .map(|x| {
                    let inner = b
                        .cat
                        .compose(ff.component(ff2.obj(x), gg2.obj(x)), legs(f2, g2)[x])?;
                    let gg = &functors[g];
                    b.cat.seq(&[
                        b.tm(legs(f, g)[gg2.obj(x)], inner),
                        m.comp(ff.obj(ff2.obj(x)), ff.obj(gg2.obj(x)), gg.obj(gg2.obj(x))),
                    ])
                })
                .collect::<Option<Vec<_>>>();
            let cone = Cone {
                apex: zm.t(apex(f, g), apex(f2, g2)),
                legs: need(cone_legs, || "tensor legs".into())?,
            };
            tensor_components.push(partial.mediate(tensor_obj[s], tensor_obj[t], &cone)?);
        }
    }
    // Validation tabulates composition on the triple product E0 × E0 × E0.
    budget.meter().charge((k as u64).saturating_pow(9))?;
    let host_ident = |x: Obj| host.ident(x);
    let assoc = (0..k * kk)
        .map(|p| host_ident(tensor_obj[tensor_obj[p / k] * k + p % k]))
        .collect();
    let unitors: Vec<Mor> = (0..k).map(host_ident).collect();
    let em = EnrichedMonoidalCategory::new(
        host.clone(),
        center.braided.clone(),
        tensor_obj,
        tensor_components,
        unit,
        assoc,
        unitors.clone(),
        unitors,
    )
    .validated()?;
    Ok(E0Center {
        em: Arc::new(em),
        ..partial
    })
}

/// `E0` computed through the module side: lax module endofunctors of `L` with module
/// transformations, acted on by `Z1(B)` through the half-braidings, then the canonical
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E0ViaModule {
    pub center: DrinfeldCenter,
    pub endofunctors: Vec<RLaxStructure>,
    pub transformations: Vec<(usize, usize, Vec<Mor>)>,
    pub canonical: Canonical,
}

pub fn e0_center_via_module(
    module: &Arc<ModuleAction>,
    budget: Budget,
) -> Result<E0ViaModule, CenterError> {
    let m = &**module;
    let b = &m.base;
    let l = &*m.carrier;
    let (nl, ml) = (l.n_obj(), l.n_mor());
    let center = drinfeld_center_z1(b, budget)?;
    let zm = center.monoidal().clone();
    let id_b = LaxMonoidalFunctor::identity(b);
    let endofunctors = enumerate_rlax(module, module, &id_b, budget)?;
    let k = endofunctors.len();
    let xi = LaxMonoidalNat::identity(&id_b);
    let mut transformations = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for t in enumerate_xilax(&endofunctors[i], &endofunctors[j], &xi, budget)? {
                transformations.push((i, j, t.nat.components));
            }
        }
    }
    let lookup: HashMap<(usize, usize, Vec<Mor>), usize> = transformations
        .iter()
        .enumerate()
        .map(|(p, (i, j, c))| ((*i, *j, c.clone()), p))
        .collect();
    let find = |i: usize, j: usize, c: Vec<Mor>| {
        need(lookup.get(&(i, j, c)).copied(), || {
            format!("module transformation {i} → {j} missing")
        })
    };
    let identity: Vec<Mor> = (0..k)
        .map(|i| {
            find(
                i,
                i,
                (0..nl).map(|x| l.id(endofunctors[i].obj(x))).collect(),
            )
        })
        .collect::<Result<_, _>>()?;
    let funlax = FinCategory::from_fn(
        k,
        transformations.iter().map(|t| t.0).collect(),
        transformations.iter().map(|t| t.1).collect(),
        identity,
        |g, f| {
            let (i, _, cf) = &transformations[f];
            let (_, j, cg) = &transformations[g];
            lookup[&(
                *i,
                *j,
                (0..nl).map(|x| l.comp(cg[x], cf[x])).collect::<Vec<_>>(),
            )]
        },
    )?;
    let na = zm.n_obj();
    let carrier = |a: usize| center.objects[a].carrier;
    let mut act_obj = Vec::with_capacity(na * k);
    for a in 0..na {
        let ia = carrier(a);
        for s in &endofunctors {
            let functor = Functor {
                source: m.carrier.clone(),
                target: m.carrier.clone(),
                obj_map: (0..nl).map(|x| m.act(ia, s.obj(x))).collect(),
                mor_map: (0..ml).map(|g| m.act_l(ia, s.mor(g))).collect(),
            };
            let beta = (0..b.n_obj() * nl)
                .map(|p| {
                    let (z, x) = (p / nl, p % nl);
                    let fx = s.obj(x);
                    l.seq(&[
                        l.inverse(m.assoc_at(z, ia, fx))?,
                        m.act_r(center.gamma(a, z), fx),
                        m.assoc_at(ia, z, fx),
                        m.act_l(ia, s.beta_at(z, x)),
                    ])
                })
                .collect::<Option<Vec<_>>>();
            let beta = need(beta, || "module associator is not invertible".into())?;
            let image = endofunctors
                .iter()
                .position(|t| t.functor == functor && t.beta == beta);
            act_obj.push(need(image, || {
                format!("central object {a} does not act on the endofunctors")
            })?);
        }
    }
    let zc = &*zm.cat;
    let mf = funlax.n_mor();
    let mut act_mor = Vec::with_capacity(zc.n_mor() * mf);
    for (zs, zt, u) in center.morphisms.iter().copied() {
        for (i, j, c) in &transformations {
            act_mor.push(find(
                act_obj[zs * k + i],
                act_obj[zt * k + j],
                (0..nl).map(|x| m.actm(u, c[x])).collect(),
            )?);
        }
    }
    let mut assoc = Vec::with_capacity(na * na * k);
    for a in 0..na {
        for a2 in 0..na {
            for f in 0..k {
                let comps = (0..nl)
                    .map(|x| m.assoc_at(carrier(a), carrier(a2), endofunctors[f].obj(x)))
                    .collect();
                assoc.push(find(
                    act_obj[zm.t(a, a2) * k + f],
                    act_obj[a * k + act_obj[a2 * k + f]],
                    comps,
                )?);
            }
        }
    }
    let unitor = (0..k)
        .map(|f| {
            find(
                act_obj[zm.unit * k + f],
                f,
                (0..nl).map(|x| m.u(endofunctors[f].obj(x))).collect(),
            )
        })
        .collect::<Result<_, _>>()?;
    let action = ModuleAction {
        base: zm,
        carrier: Arc::new(funlax),
        act_obj,
        act_mor,
        assoc,
        unitor,
    }
    .validated()?;
    let canonical = canonical_construction(&Arc::new(action), budget)?;
    Ok(E0ViaModule {
        center,
        endofunctors,
        transformations,
        canonical,
    })
}

/// Compares `E0(ᴮL)` with the module-side construction by an enriched isomorphism
/// with identity background, built from the mediators between the two hom-objects.
pub fn compare_e0(
    z0: &E0Center,
    via: &E0ViaModule,
    canon: &Canonical,
) -> Result<Verification, CenterError> {
    guarded(|v| {
        if *z0.source != *canon.category {
            return Err(CenterError::Precondition(
                "E0 was not computed on this canonical construction".into(),
            ));
        }
        let k = z0.functors.len();
        let obj_map = z0
            .functors
            .iter()
            .map(|f| {
                let s = rlax_from_enriched_functor(f, canon, canon)?;
                need(
                    via.endofunctors
                        .iter()
                        .position(|t| t.functor == s.functor && t.beta == s.beta),
                    || "endofunctor has no module counterpart".into(),
                )
            })
            .collect::<Result<Vec<_>, CenterError>>()?;
        let mut seen = obj_map.clone();
        seen.sort_unstable();
        seen.dedup();
        v.record(
            "objects.bijection",
            seen.len() == k && via.endofunctors.len() == k,
            format!("{k} endofunctors"),
        );
        let zc = &*z0.center.monoidal().cat;
        let mut components = Vec::with_capacity(k * k);
        for f in 0..k {
            for g in 0..k {
                let (i, j) = (obj_map[f], obj_map[g]);
                let h = via.canonical.homs.hom(i, j);
                let ev = &via.transformations[via.canonical.homs.ev(i, j)].2;
                let ih = via.center.objects[h].carrier;
                let legs = (0..z0.source.n_obj)
                    .map(|x| {
                        let (fx, gx) = (z0.functors[f].obj(x), z0.functors[g].obj(x));
                        need(canon.homs.get(fx, gx).mediate(ih, ev[x]), || {
                            format!("leg at {x} has no mediator")
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let phi = z0.mediate(f, g, &Cone { apex: h, legs })?;
                components.push(need(zc.inverse(phi), || {
                    format!("comparison of [{f},{g}] is not invertible")
                })?);
            }
        }
        let iso = EnrichedFunctor {
            background: LaxMonoidalFunctor::identity(z0.em.base()),
            source: z0.em.host.clone(),
            target: via.canonical.category.clone(),
            obj_map,
            components,
        };
        let r = check_enriched_functor(&iso);
        v.record("comparison.enriched_iso", r.is_valid(), r.to_string());
        Ok(())
    })
}

/// `Z1(B) × B → B`, `(z, b) ↦ I(z) ⊗ b`, strong through the half-braidings.
pub fn center_tensor_background(center: &DrinfeldCenter) -> LaxMonoidalFunctor {
    let zm = center.monoidal();
    let b = &center.forgetful.target;
    let src = Arc::new(product_monoidal(zm, b));
    let (nb, mb, n) = (b.n_obj(), b.cat.n_mor(), src.n_obj());
    let ic = |z: usize| center.objects[z].carrier;
    let mult = (0..n * n)
        .map(|p| {
            let ((z, x), (z2, y)) = (((p / n) / nb, (p / n) % nb), ((p % n) / nb, (p % n) % nb));
            let (iz, iz2) = (ic(z), ic(z2));
            b.seq(&[
                b.alpha(iz, x, b.t(iz2, y)),
                b.tl(iz, b.alpha_inv(x, iz2, y)),
                b.tl(iz, b.tr(center.gamma(z2, x), y)),
                b.tl(iz, b.alpha(iz2, x, y)),
                b.alpha_inv(iz, iz2, b.t(x, y)),
            ])
        })
        .collect();
    LaxMonoidalFunctor {
        functor: Functor {
            source: src.cat.clone(),
            target: b.cat.clone(),
            obj_map: (0..n).map(|p| b.t(ic(p / nb), p % nb)).collect(),
            mor_map: (0..src.cat.n_mor())
                .map(|q| b.tm(center.morphisms[q / mb].2, q % mb))
                .collect(),
        },
        source: src,
        target: b.clone(),
        unit_cell: b.cat.inv(b.lambda(b.unit)),
        mult,
        kind: LaxKind::Strong,
    }
}

/// An action `⊙ : L × M → M` with background `⊙̂ : A × B → B`, unit `1_L` and
/// unitor `ξ : ⊙(1_L × −) ⇒ 1` over `ξ̂ : 𝟙 ⊙̂ − ⇒ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E0Action {
    pub acting: Arc<EnrichedCategory>,
    pub act: EnrichedFunctor,
    pub unit: Obj,
    pub xi: EnrichedNat,
}

fn unitor_nat(
    acting: &Arc<EnrichedCategory>,
    unit: Obj,
    act: &EnrichedFunctor,
    background: Vec<Mor>,
    components: Vec<Mor>,
) -> Result<EnrichedNat, CenterError> {
    let m = &act.target;
    let source = rebase(
        EnrichedFunctor::point(acting, unit)
            .product(&EnrichedFunctor::identity(m))
            .then(act)?,
        m,
    );
    let target = EnrichedFunctor::identity(m);
    let background = LaxMonoidalNat {
        nat: NatTransf {
            source: source.background.functor.clone(),
            target: target.background.functor.clone(),
            components: background,
        },
        source: source.background.clone(),
        target: target.background.clone(),
    };
    Ok(EnrichedNat {
        background,
        source,
        target,
        components,
    })
}

fn trivial_action(m: &Arc<EnrichedCategory>) -> (Arc<EnrichedCategory>, EnrichedFunctor) {
    let t = Arc::new(EnrichedCategory::terminal());
    let b = &m.base;
    let src = Arc::new(crate::enriched_core::cartesian_product(&t, m));
    let n = m.n_obj;
    let background = LaxMonoidalFunctor {
        functor: Functor {
            source: src.base.cat.clone(),
            target: b.cat.clone(),
            obj_map: (0..b.n_obj()).collect(),
            mor_map: (0..b.cat.n_mor()).collect(),
        },
        source: src.base.clone(),
        target: b.clone(),
        unit_cell: b.id(b.unit),
        mult: (0..b.n_obj() * b.n_obj())
            .map(|p| b.id(b.t(p / b.n_obj(), p % b.n_obj())))
            .collect(),
        kind: LaxKind::Strong,
    };
    let act = EnrichedFunctor {
        background,
        source: src,
        target: m.clone(),
        obj_map: (0..n).collect(),
        components: (0..n * n).map(|p| b.id(m.hom(p / n, p % n))).collect(),
    };
    (t, act)
}

impl E0Action {
    pub fn validated(self) -> Result<Self, CenterError> {
        let mut r = ValidationReport::new();
        r.absorb("action.functor", check_enriched_functor(&self.act));
        r.absorb("action.unitor", check_enriched_nat(&self.xi));
        if *self.act.source
            != crate::enriched_core::cartesian_product(&self.acting, &self.act.target)
        {
            r.push("action.typing", "action source is not L × M");
        }
        ensure(r)?;
        Ok(self)
    }

    /// `E0(M)` acting on `M` by evaluation, `ev_{(F,x),(G,y)} = ∘ ∘ ([F,G]_y ⊗ F_{x,y})`.
    pub fn evaluation(z0: &E0Center) -> Result<Self, CenterError> {
        let m = &z0.source;
        let b = &*m.base;
        let l = &z0.em.host;
        let (k, n) = (l.n_obj, m.n_obj);
        let src = Arc::new(crate::enriched_core::cartesian_product(l, m));
        let components = (0..k * n * k * n)
            .map(|p| {
                let (s, t) = (p / (k * n), p % (k * n));
                let ((f, x), (g, y)) = ((s / n, s % n), (t / n, t % n));
                let ff = &z0.functors[f];
                let gg = &z0.functors[g];
                b.cat.seq(&[
                    b.tm(z0.bracket(f, g).terminal.legs[y], ff.component(x, y)),
                    m.comp(ff.obj(x), ff.obj(y), gg.obj(y)),
                ])
            })
            .collect::<Option<Vec<_>>>();
        let act = EnrichedFunctor {
            background: center_tensor_background(&z0.center),
            source: src,
            target: m.clone(),
            obj_map: (0..k * n).map(|p| z0.functors[p / n].obj(p % n)).collect(),
            components: need(components, || "evaluation components".into())?,
        };
        let xi = unitor_nat(
            l,
            z0.em.unit,
            &act,
            b.lunitor.clone(),
            (0..n).map(|x| m.ident(x)).collect(),
        )?;
        E0Action {
            acting: l.clone(),
            act,
            unit: z0.em.unit,
            xi,
        }
        .validated()
    }

    /// The terminal category acting trivially.
    pub fn trivial(m: &Arc<EnrichedCategory>) -> Result<Self, CenterError> {
        let (t, act) = trivial_action(m);
        let b = &m.base;
        let xi = unitor_nat(
            &t,
            0,
            &act,
            (0..b.n_obj()).map(|x| b.id(x)).collect(),
            (0..m.n_obj).map(|x| m.ident(x)).collect(),
        )?;
        E0Action {
            acting: t,
            act,
            unit: 0,
            xi,
        }
        .validated()
    }

    /// An enriched monoidal category acting on itself by its tensor.
    pub fn regular(em: &EnrichedMonoidalCategory) -> Result<Self, CenterError> {
        E0Action {
            acting: em.host.clone(),
            act: em.tensor.clone(),
            unit: em.unit,
            xi: em.lunitor_nat()?,
        }
        .validated()
    }
}

/// Element-level calculus for an action `⊙ : L × M → M`.
struct ActCalc<'a> {
    act: &'a EnrichedFunctor,
    nm: usize,
    mc: usize,
}

impl<'a> ActCalc<'a> {
    fn new(act: &'a EnrichedFunctor) -> Self {
        ActCalc {
            act,
            nm: act.target.n_obj,
            mc: act.target.base.cat.n_mor(),
        }
    }

    fn obj(&self, x: Obj, m: Obj) -> Obj {
        self.act.obj(x * self.nm + m)
    }

    fn bg_obj(&self, a: Obj, c: Obj) -> Obj {
        self.act
            .background
            .obj(a * self.act.target.base.n_obj() + c)
    }

    fn bg_mor(&self, f: Mor, g: Mor) -> Mor {
        self.act.background.mor(f * self.mc + g)
    }

    fn bg_mu(&self, a: Obj, c: Obj, a2: Obj, c2: Obj) -> Mor {
        let nc = self.act.target.base.n_obj();
        self.act.background.mu(a * nc + c, a2 * nc + c2)
    }

    /// `f ⊙ g` for elements `f ∈ L(x,y)`, `g ∈ M(m,n)`.
    fn el(&self, (x, m): (Obj, Obj), (y, n): (Obj, Obj), f: Mor, g: Mor) -> Option<Mor> {
        let bg = &self.act.background;
        bg.target.cat.seq(&[
            bg.unit_cell,
            self.bg_mor(f, g),
            self.act.component(x * self.nm + m, y * self.nm + n),
        ])
    }
}

/// Checks the universal action of `E0(M)` against `action`: the comparison functor
/// `Φ : L → E0(M)`, the transformations `σ` and `ρ`, the pasting identity and the
/// uniqueness of the comparison isomorphism.
pub fn verify_e0_universal(action: &E0Action, budget: Budget) -> Result<Verification, CenterError> {
    let m = action.act.target.clone();
    let z0 = e0_center(&m, budget)?;
    let ev = E0Action::evaluation(&z0)?;
    guarded(|v| e0_universal_body(v, action, &z0, &ev, budget))
}

fn e0_universal_body(
    v: &mut Verification,
    action: &E0Action,
    z0: &E0Center,
    ev: &E0Action,
    budget: Budget,
) -> Result<(), CenterError> {
    let m = &*z0.source;
    let b = &*m.base;
    let bc = &*b.cat;
    let l = &action.acting;
    let a = &l.base;
    let center = &z0.center;
    let zm = center.monoidal();
    let zc = &*zm.cat;
    let calc = ActCalc::new(&action.act);
    let (nl, nm) = (l.n_obj, m.n_obj);
    let xi_hat = |c: Obj| action.xi.background.component(c);
    let inv = |f: Mor| {
        need(bc.inverse(f), || {
            format!("morphism {f} of the base is not invertible")
        })
    };
    let mor_in = |s: usize, t: usize, f: Mor| {
        need(
            center
                .morphisms
                .iter()
                .position(|&(s1, t1, g)| s1 == s && t1 == t && g == f),
            || format!("no central morphism {s} → {t} over {f}"),
        )
    };

    // Φ̂ : A → Z1(B), a ↦ a ⊙̂ 𝟙.
    let mut hat_obj = Vec::with_capacity(a.n_obj());
    for x in 0..a.n_obj() {
        let carrier = calc.bg_obj(x, b.unit);
        let components = (0..b.n_obj())
            .map(|z| {
                Ok(b.seq(&[
                    b.tr(inv(xi_hat(z))?, carrier),
                    calc.bg_mu(a.unit, z, x, b.unit),
                    calc.bg_mor(a.lambda(x), b.rho(z)),
                    calc.bg_mor(a.cat.inv(a.rho(x)), bc.inv(b.lambda(z))),
                    inv(calc.bg_mu(x, b.unit, a.unit, z))?,
                    b.tl(carrier, xi_hat(z)),
                ]))
            })
            .collect::<Result<Vec<_>, CenterError>>()?;
        let hb = HalfBraidingOrd {
            carrier,
            components,
        };
        hat_obj.push(need(center.find(&hb), || {
            format!("{x} ⊙ 𝟙 carries no central half-braiding")
        })?);
    }
    let ac = &*a.cat;
    let hat_mor = (0..ac.n_mor())
        .map(|f| {
            mor_in(
                hat_obj[ac.dom(f)],
                hat_obj[ac.cod(f)],
                calc.bg_mor(f, b.id(b.unit)),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let na = a.n_obj();
    let hat_mult = (0..na * na)
        .map(|p| {
            let (x, y) = (p / na, p % na);
            let f = b.seq(&[
                calc.bg_mu(x, b.unit, y, b.unit),
                calc.bg_mor(a.id(a.t(x, y)), b.lambda(b.unit)),
            ]);
            mor_in(zm.t(hat_obj[x], hat_obj[y]), hat_obj[a.t(x, y)], f)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sigma_hat = mor_in(zm.unit, hat_obj[a.unit], inv(xi_hat(b.unit))?)?;
    let phi_hat = LaxMonoidalFunctor {
        source: a.clone(),
        target: zm.clone(),
        functor: Functor {
            source: a.cat.clone(),
            target: zm.cat.clone(),
            obj_map: hat_obj.clone(),
            mor_map: hat_mor,
        },
        unit_cell: sigma_hat,
        mult: hat_mult,
        kind: LaxKind::Strong,
    };
    let r = check_lax_monoidal_functor(&phi_hat);
    v.record("phi_hat.monoidal", r.is_valid(), r.to_string());

    // Φ on objects and hom-objects.
    let phi_obj = (0..nl)
        .map(|x| {
            let components = (0..nm * nm)
                .map(|p| {
                    let (y, z) = (p / nm, p % nm);
                    let h = m.hom(y, z);
                    bc.seq(&[
                        inv(xi_hat(h)).ok()?,
                        calc.bg_mor(l.ident(x), b.id(h)),
                        action.act.component(x * nm + y, x * nm + z),
                    ])
                })
                .collect::<Option<Vec<_>>>();
            let f = EnrichedFunctor {
                background: LaxMonoidalFunctor::identity(&m.base),
                source: z0.source.clone(),
                target: z0.source.clone(),
                obj_map: (0..nm).map(|y| calc.obj(x, y)).collect(),
                components: need(components, || "acting endofunctor components".into())?,
            };
            need(z0.index_of(&f), || {
                format!("{x} ⊙ − is not an enriched endofunctor")
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut counts = Vec::new();
    let mut phi_components = Vec::with_capacity(nl * nl);
    for x in 0..nl {
        for y in 0..nl {
            let h = l.hom(x, y);
            let legs = (0..nm)
                .map(|c| {
                    bc.seq(&[
                        calc.bg_mor(a.id(h), m.ident(c)),
                        action.act.component(x * nm + c, y * nm + c),
                    ])
                })
                .collect::<Option<Vec<_>>>();
            let cone = Cone {
                apex: hat_obj[h],
                legs: need(legs, || "comparison legs".into())?,
            };
            let found = z0.mediators(phi_obj[x], phi_obj[y], &cone);
            counts.push(found.len());
            phi_components.push(found.first().copied().unwrap_or(0));
        }
    }
    let unique = counts.iter().all(|&c| c == 1);
    v.record(
        "phi.components_unique",
        unique,
        format!("mediator counts {counts:?}"),
    );
    if !unique {
        return Ok(());
    }
    let phi = EnrichedFunctor {
        background: phi_hat.clone(),
        source: l.clone(),
        target: z0.em.host.clone(),
        obj_map: phi_obj.clone(),
        components: phi_components,
    };
    let r = check_enriched_functor(&phi);
    v.record("phi.enriched_functor", r.is_valid(), r.to_string());

    // σ : 𝟙 ⇒ Φ(1_L).
    let id_e0 = z0.em.unit;
    let phi1 = phi_obj[action.unit];
    let sigma_legs = (0..nm)
        .map(|c| element_inverse(m, calc.obj(action.unit, c), c, action.xi.component(c)))
        .collect::<Option<Vec<_>>>();
    let sigma_star = z0.mediate(
        id_e0,
        phi1,
        &Cone {
            apex: zm.unit,
            legs: need(sigma_legs, || "ξ is not invertible".into())?,
        },
    )?;
    let sigma_src = EnrichedFunctor::point(&z0.em.host, id_e0);
    let sigma_tgt = EnrichedFunctor::point(l, action.unit).then(&phi)?;
    let sigma = EnrichedNat {
        background: LaxMonoidalNat {
            nat: NatTransf {
                source: sigma_src.background.functor.clone(),
                target: sigma_tgt.background.functor.clone(),
                components: vec![sigma_hat],
            },
            source: sigma_src.background.clone(),
            target: sigma_tgt.background.clone(),
        },
        source: sigma_src,
        target: sigma_tgt,
        components: vec![sigma_star],
    };
    let r = check_enriched_nat(&sigma);
    v.record("sigma.enriched_nat", r.is_valid(), r.to_string());

    // ρ : ev ∘ (Φ × 1) ⇒ ⊙.
    let rho_hat_at = |x: Obj, c: Obj| -> Result<Mor, CenterError> {
        Ok(b.seq(&[
            b.tl(center.objects[hat_obj[x]].carrier, inv(xi_hat(c))?),
            calc.bg_mu(x, b.unit, a.unit, c),
            calc.bg_mor(a.rho(x), b.lambda(c)),
        ]))
    };
    let nb = b.n_obj();
    let rho_hat = (0..na * nb)
        .map(|p| rho_hat_at(p / nb, p % nb))
        .collect::<Result<Vec<_>, _>>()?;
    let rho_src = phi
        .product(&EnrichedFunctor::identity(&z0.source))
        .then(&ev.act)?;
    let rho = EnrichedNat {
        background: LaxMonoidalNat {
            nat: NatTransf {
                source: rho_src.background.functor.clone(),
                target: action.act.background.functor.clone(),
                components: rho_hat.clone(),
            },
            source: rho_src.background.clone(),
            target: action.act.background.clone(),
        },
        components: (0..nl * nm).map(|p| m.ident(action.act.obj(p))).collect(),
        source: rho_src,
        target: action.act.clone(),
    };
    let r = check_enriched_nat(&rho);
    v.record("rho.enriched_nat", r.is_valid(), r.to_string());

    // Pasting: ξ ∘ ρ(1_L × −) ∘ ev(σ × 1) = 1 over ξ̂ ∘ ρ̂(𝟙 × −) ∘ ev̂(σ̂ × 1) = λ.
    let ev_calc = ActCalc::new(&ev.act);
    let mut comps_ok = true;
    for c in 0..nm {
        let w = ev_calc.el((id_e0, c), (phi1, c), sigma_star, m.ident(c));
        let one_c = calc.obj(action.unit, c);
        let lhs = w
            .and_then(|w| {
                m.compose_elements(c, one_c, one_c, rho.component(action.unit * nm + c), w)
            })
            .and_then(|w| m.compose_elements(c, one_c, c, action.xi.component(c), w));
        comps_ok &= lhs == Some(m.ident(c));
    }
    v.record(
        "pasting.components",
        comps_ok,
        "ξ ∘ ρ ∘ ev(σ × 1) against the identity",
    );
    let sigma_under = center.morphisms[sigma_hat].2;
    let bg_ok = (0..nb).all(|c| {
        bc.seq(&[b.tr(sigma_under, c), rho_hat[a.unit * nb + c], xi_hat(c)]) == Some(b.lambda(c))
    });
    v.record("pasting.background", bg_ok, "ξ̂ ∘ ρ̂ ∘ (σ̂ ⊗ 1) against λ");

    // Uniqueness of the comparison isomorphism.
    let mut meter = budget.meter();
    let mut count = 0usize;
    for nat in enumerate_nat_transfs(&phi_hat.functor, &phi_hat.functor, budget)? {
        let beta_hat = LaxMonoidalNat {
            source: phi_hat.clone(),
            target: phi_hat.clone(),
            nat,
        };
        if !check_lax_monoidal_nat(&beta_hat).is_valid()
            || !beta_hat.nat.components.iter().all(|&f| zc.is_iso(f))
        {
            continue;
        }
        if zc.compose(beta_hat.component(a.unit), sigma_hat) != Some(sigma_hat) {
            continue;
        }
        let absorbed = (0..na).all(|x| {
            let bx = center.morphisms[beta_hat.component(x)].2;
            (0..nb)
                .all(|c| bc.compose(rho_hat[x * nb + c], b.tr(bx, c)) == Some(rho_hat[x * nb + c]))
        });
        if !absorbed {
            continue;
        }
        let host = &z0.em.host;
        let choices: Vec<Vec<Mor>> = (0..nl)
            .map(|x| zc.hom(zm.unit, host.hom(phi_obj[x], phi_obj[x])).to_vec())
            .collect();
        let mut hits = 0usize;
        enum_components(&choices, &mut Vec::new(), &mut meter, &mut |comps| {
            let beta = EnrichedNat {
                background: beta_hat.clone(),
                source: phi.clone(),
                target: phi.clone(),
                components: comps.to_vec(),
            };
            if !check_enriched_nat(&beta).is_valid() {
                return;
            }
            if !(0..nl).all(|x| element_inverse(host, phi_obj[x], phi_obj[x], comps[x]).is_some()) {
                return;
            }
            if host.compose_elements(id_e0, phi1, phi1, comps[action.unit], sigma_star)
                != Some(sigma_star)
            {
                return;
            }
            let fixed = (0..nl).all(|x| {
                (0..nm).all(|c| {
                    ev_calc.el((phi_obj[x], c), (phi_obj[x], c), comps[x], m.ident(c))
                        == Some(m.ident(calc.obj(x, c)))
                })
            });
            if fixed {
                hits += 1;
            }
        })?;
        count += hits;
    }
    v.record(
        "uniqueness",
        count == 1,
        format!("{count} comparison isomorphisms"),
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// Γ₁ and Γ₂

/// The enriched Drinfeld center `Γ₁(M)` over `Z2(A)` with its forgetful functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma1 {
    pub source: Arc<EnrichedMonoidalCategory>,
    pub z2: BraidedSubcategory,
    pub objects: Vec<EnrichedHalfBraiding>,
    pub brackets: Vec<TerminalCone>,
    pub braided: EnrichedBraidedCategory,
    pub forgetful: EnrichedFunctor,
}

impl Gamma1 {
    pub fn em(&self) -> Arc<EnrichedMonoidalCategory> {
        Arc::new(self.braided.host.clone())
    }

    /// Rechecks every terminal-cone certificate.
    pub fn check_certificates(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        let (z, iota) = (&*self.z2.braided.host.cat, &self.z2.inclusion.functor);
        for (p, tc) in self.brackets.iter().enumerate() {
            r.absorb(
                &format!("bracket[{p}]"),
                check_terminal_cone(z, &self.source.base().cat, iota, tc),
            );
        }
        r
    }
}

/// The equalizer condition on `(a, ζ : a → hom(x,y))` for half-braidings `βx`, `βy`:
/// `post(βy_z) ∘ ⊗ ∘ (ι_z ⊗ ζ) ∘ λ⁻¹ = pre(βx_z) ∘ ⊗ ∘ (ζ ⊗ ι_z) ∘ ρ⁻¹` for every `z`.
fn center_hom_cone(
    em: &EnrichedMonoidalCategory,
    bx: &EnrichedHalfBraiding,
    by: &EnrichedHalfBraiding,
    apex: Obj,
    zeta: Mor,
) -> bool {
    let e = &*em.host;
    let c = &*e.base;
    let (x, y) = (bx.carrier, by.carrier);
    (0..e.n_obj).all(|z| {
        let top = c.cat.seq_opt(&[
            c.cat.inverse(c.lambda(apex)),
            Some(c.tm(e.ident(z), zeta)),
            Some(em.tensor_component(z, x, z, y)),
            e.post(em.t(z, x), em.t(z, y), em.t(y, z), by.components[z]),
        ]);
        let bottom = c.cat.seq_opt(&[
            c.cat.inverse(c.rho(apex)),
            Some(c.tm(zeta, e.ident(z))),
            Some(em.tensor_component(x, z, y, z)),
            e.pre(em.t(z, x), em.t(x, z), em.t(y, z), bx.components[z]),
        ]);
        top.is_some() && top == bottom
    })
}

pub fn gamma1(em: &Arc<EnrichedMonoidalCategory>, budget: Budget) -> Result<Gamma1, CenterError> {
    let e = &em.host;
    let c = &*e.base;
    let z2 = muger_center_z2(&em.braiding)?;
    let zm = z2.braided.host.clone();
    let (zc, iota) = (&*zm.cat, &z2.inclusion.functor);
    let mut objects = Vec::new();
    for x in 0..e.n_obj {
        objects.extend(enumerate_enriched_half_braidings(em, x, budget)?);
    }
    let k = objects.len();
    let mut meter = budget.meter();
    let mut brackets = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let (bx, by) = (&objects[i], &objects[j]);
            let mut accept =
                |cone: &Cone| center_hom_cone(em, bx, by, iota.obj(cone.apex), cone.legs[0]);
            let tc = terminal_cone(
                zc,
                &c.cat,
                iota,
                &[e.hom(bx.carrier, by.carrier)],
                &mut accept,
                &mut meter,
            )?;
            brackets.push(tc.ok_or(CenterError::NoCenterHom(i, j))?);
        }
    }
    let apex = |i: usize, j: usize| brackets[i * k + j].terminal.apex;
    let zeta = |i: usize, j: usize| brackets[i * k + j].terminal.legs[0];
    let carrier = |i: usize| objects[i].carrier;
    let mediate = |i: usize, j: usize, a: Obj, leg: Option<Mor>| -> Result<Mor, CenterError> {
        let leg = need(leg, || format!("ill-typed leg into [{i}, {j}]"))?;
        unique_mediator(
            zc,
            &c.cat,
            iota,
            &Cone {
                apex: a,
                legs: vec![leg],
            },
            &brackets[i * k + j].terminal,
        )
    };
    let ident = (0..k)
        .map(|i| mediate(i, i, zm.unit, Some(e.ident(carrier(i)))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut comp = Vec::with_capacity(k * k * k);
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let leg = c.cat.compose(
                    e.comp(carrier(i), carrier(j), carrier(l)),
                    c.tm(zeta(j, l), zeta(i, j)),
                );
                comp.push(mediate(i, l, zm.t(apex(j, l), apex(i, j)), leg)?);
            }
        }
    }
    let host = Arc::new(
        EnrichedCategory {
            base: zm.clone(),
            n_obj: k,
            hom: (0..k * k).map(|p| apex(p / k, p % k)).collect(),
            ident,
            comp,
        }
        .validated()?,
    );
    let (um, u) = underlying_monoidal(em)?;
    let ords = objects
        .iter()
        .map(|hb| {
            need(hb.underlying(em, &u), || {
                "half-braiding is not underlying".into()
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lookup = |hb: &HalfBraidingOrd| {
        need(
            position(&objects, &EnrichedHalfBraiding::from_underlying(hb, &u)),
            || "tensor of center objects is missing".into(),
        )
    };
    let tensor_obj = (0..k * k)
        .map(|p| lookup(&tensor_half_braidings(&um, &ords[p / k], &ords[p % k])))
        .collect::<Result<Vec<_>, _>>()?;
    let unit_hb = HalfBraidingOrd {
        carrier: um.unit,
        components: (0..um.n_obj())
            .map(|z| um.seq(&[um.rho(z), um.cat.inv(um.lambda(z))]))
            .collect(),
    };
    let unit = lookup(&unit_hb)?;
    let kk = k * k;
    let mut tensor_components = Vec::with_capacity(kk * kk);
    for s in 0..kk {
        for t in 0..kk {
            let ((x1, y1), (x2, y2)) = ((s / k, s % k), (t / k, t % k));
            let leg = c.cat.compose(
                em.tensor_component(carrier(x1), carrier(y1), carrier(x2), carrier(y2)),
                c.tm(zeta(x1, x2), zeta(y1, y2)),
            );
            tensor_components.push(mediate(
                tensor_obj[s],
                tensor_obj[t],
                zm.t(apex(x1, x2), apex(y1, y2)),
                leg,
            )?);
        }
    }
    let t = |i: usize, j: usize| tensor_obj[i * k + j];
    let assoc = (0..k * kk)
        .map(|p| {
            let (x, y, z) = (p / kk, (p / k) % k, p % k);
            mediate(
                t(t(x, y), z),
                t(x, t(y, z)),
                zm.unit,
                Some(em.alpha(carrier(x), carrier(y), carrier(z))),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lunitor = (0..k)
        .map(|x| mediate(t(unit, x), x, zm.unit, Some(em.lunitor[carrier(x)])))
        .collect::<Result<Vec<_>, _>>()?;
    let runitor = (0..k)
        .map(|x| mediate(t(x, unit), x, zm.unit, Some(em.runitor[carrier(x)])))
        .collect::<Result<Vec<_>, _>>()?;
    let host_em = EnrichedMonoidalCategory::new(
        host.clone(),
        z2.braided.clone(),
        tensor_obj.clone(),
        tensor_components,
        unit,
        assoc,
        lunitor,
        runitor,
    )
    .validated()?;
    let braiding = (0..kk)
        .map(|p| {
            let (x, y) = (p / k, p % k);
            mediate(
                t(x, y),
                t(y, x),
                zm.unit,
                Some(objects[y].components[carrier(x)]),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut braided = EnrichedBraidedCategory {
        host: host_em,
        braiding,
        symmetric: false,
    };
    let (ub, _) = underlying_braided(&braided)?;
    braided.symmetric = (0..k).all(|x| (0..k).all(|y| ub.double_braiding_trivial(x, y)));
    let braided = braided.validated()?;
    let forgetful = EnrichedFunctor {
        background: z2.inclusion.clone(),
        source: host,
        target: e.clone(),
        obj_map: (0..k).map(carrier).collect(),
        components: (0..kk).map(|p| zeta(p / k, p % k)).collect(),
    }
    .validated()?;
    Ok(Gamma1 {
        source: em.clone(),
        z2,
        objects,
        brackets,
        braided,
        forgetful,
    })
}

/// The full subcategory `Γ₂(M)` of transparent objects, with the inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma2 {
    pub source: Arc<EnrichedMonoidalCategory>,
    pub objects: Vec<Obj>,
    pub braided: EnrichedBraidedCategory,
    pub inclusion: EnrichedFunctor,
}

impl Gamma2 {
    pub fn em(&self) -> Arc<EnrichedMonoidalCategory> {
        Arc::new(self.braided.host.clone())
    }
}

pub fn gamma2(eb: &EnrichedBraidedCategory) -> Result<Gamma2, CenterError> {
    let em = &eb.host;
    let e = &*em.host;
    let (ub, _) = underlying_braided(eb)?;
    let objs: Vec<Obj> = (0..e.n_obj).filter(|&x| ub.is_transparent(x)).collect();
    let k = objs.len();
    let pos = |x: Obj| {
        need(position(&objs, &x), || {
            format!("object {x} is not transparent")
        })
    };
    let o = |i: usize| objs[i];
    let host = Arc::new(EnrichedCategory {
        base: e.base.clone(),
        n_obj: k,
        hom: (0..k * k).map(|p| e.hom(o(p / k), o(p % k))).collect(),
        ident: (0..k).map(|i| e.ident(o(i))).collect(),
        comp: (0..k * k * k)
            .map(|p| e.comp(o(p / (k * k)), o((p / k) % k), o(p % k)))
            .collect(),
    });
    let kk = k * k;
    let tensor_obj = (0..kk)
        .map(|p| pos(em.t(o(p / k), o(p % k))))
        .collect::<Result<Vec<_>, _>>()?;
    let tensor_components = (0..kk * kk)
        .map(|p| {
            em.tensor_component(
                o((p / kk) / k),
                o((p / kk) % k),
                o((p % kk) / k),
                o((p % kk) % k),
            )
        })
        .collect();
    let assoc = (0..k * kk)
        .map(|p| em.alpha(o(p / kk), o((p / k) % k), o(p % k)))
        .collect();
    let host_em = EnrichedMonoidalCategory::new(
        host.clone(),
        em.braiding.clone(),
        tensor_obj,
        tensor_components,
        pos(em.unit)?,
        assoc,
        (0..k).map(|i| em.lunitor[o(i)]).collect(),
        (0..k).map(|i| em.runitor[o(i)]).collect(),
    )
    .validated()?;
    let braided = EnrichedBraidedCategory {
        host: host_em,
        braiding: (0..kk).map(|p| eb.c(o(p / k), o(p % k))).collect(),
        symmetric: true,
    }
    .validated()?;
    let inclusion = EnrichedFunctor {
        background: LaxMonoidalFunctor::identity(&e.base),
        source: host.clone(),
        target: em.host.clone(),
        obj_map: objs.clone(),
        components: (0..kk).map(|p| e.base.id(host.hom[p])).collect(),
    }
    .validated()?;
    Ok(Gamma2 {
        source: Arc::new(em.clone()),
        objects: objs,
        braided,
        inclusion,
    })
}

/// Which center an object or certificate lives in, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterResult {
    E0(Box<E0Center>),
    E1(Box<Gamma1>),
    E2(Box<Gamma2>),
}

impl CenterResult {
    pub fn em(&self) -> Arc<EnrichedMonoidalCategory> {
        match self {
            CenterResult::E0(z) => z.em.clone(),
            CenterResult::E1(g) => g.em(),
            CenterResult::E2(g) => g.em(),
        }
    }
}

/// Recovers the braided functor `φ : base → Z1(L)` of a monoidal module from the
/// interchange: `φ(a) = a ⊙ 𝟙` with half-braiding routed through `χ`.
pub fn central_functor(
    mm: &MonoidalModule,
    budget: Budget,
) -> Result<(DrinfeldCenter, LaxMonoidalFunctor), CenterError> {
    let m = &*mm.module;
    let (a, l) = (&mm.base.host, &*mm.carrier);
    let lc = &*l.cat;
    let center = drinfeld_center_z1(&mm.carrier, budget)?;
    let zm = center.monoidal().clone();
    let inv = |f: Mor| need(lc.inverse(f), || "interchange is not invertible".into());
    let one = l.unit;
    let obj_map = (0..a.n_obj())
        .map(|x| {
            let carrier = m.act(x, one);
            let components = (0..l.n_obj())
                .map(|z| {
                    Ok(l.seq(&[
                        l.tr(m.u_inv(z), carrier),
                        inv(mm.chi(a.unit, x, z, one))?,
                        m.actm(a.lambda(x), l.rho(z)),
                        m.actm(a.cat.inv(a.rho(x)), lc.inv(l.lambda(z))),
                        mm.chi(x, a.unit, one, z),
                        l.tl(carrier, m.u(z)),
                    ]))
                })
                .collect::<Result<Vec<_>, CenterError>>()?;
            need(
                center.find(&HalfBraidingOrd {
                    carrier,
                    components,
                }),
                || format!("{x} ⊙ 𝟙 is not central"),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let find = |s: usize, t: usize, f: Mor| {
        need(
            center
                .morphisms
                .iter()
                .position(|&(s1, t1, g)| s1 == s && t1 == t && g == f),
            || format!("no central morphism over {f}"),
        )
    };
    let ac = &*a.cat;
    let mor_map = (0..ac.n_mor())
        .map(|f| find(obj_map[ac.dom(f)], obj_map[ac.cod(f)], m.act_r(f, one)))
        .collect::<Result<Vec<_>, _>>()?;
    let na = a.n_obj();
    let mult = (0..na * na)
        .map(|p| {
            let (x, y) = (p / na, p % na);
            let f = l.seq(&[
                inv(mm.chi(x, y, one, one))?,
                m.act_l(a.t(x, y), l.lambda(one)),
            ]);
            find(zm.t(obj_map[x], obj_map[y]), obj_map[a.t(x, y)], f)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let unit_cell = find(zm.unit, obj_map[a.unit], m.u_inv(one))?;
    let phi = LaxMonoidalFunctor {
        source: a.clone(),
        target: zm.clone(),
        functor: Functor {
            source: a.cat.clone(),
            target: zm.cat.clone(),
            obj_map,
            mor_map,
        },
        unit_cell,
        mult,
        kind: LaxKind::Strong,
    };
    Ok((center, phi))
}

/// Compares `Γ₁` of the canonical construction of a monoidal module with the canonical
/// construction of the Müger centralizer `Z2(φ)` as a `Z2(C)`-module, by an enriched
/// isomorphism with identity background.
pub fn gamma1_of_canonical(
    mm: &MonoidalModule,
    budget: Budget,
) -> Result<Verification, CenterError> {
    let (canon, em) = canonical_monoidal(mm, budget)?;
    let em = Arc::new(em);
    let g1 = gamma1(&em, budget)?;
    let (center, phi) = central_functor(mm, budget)?;
    let z2phi = muger_centralizer(&phi, &mm.base, &center.braided)?;
    let z2c = &g1.z2;
    let sub_mor = |f: Mor| {
        need(position(&z2phi.inclusion.functor.mor_map, &f), || {
            "morphism leaves the centralizer".into()
        })
    };
    let zc_incl = &z2c.inclusion;
    let k2 = z2c.objects.len();
    let restricted = LaxMonoidalFunctor {
        source: z2c.braided.host.clone(),
        target: z2phi.braided.host.clone(),
        functor: Functor {
            source: z2c.braided.host.cat.clone(),
            target: z2phi.braided.host.cat.clone(),
            obj_map: z2c
                .objects
                .iter()
                .map(|&x| {
                    need(position(&z2phi.objects, &phi.obj(x)), || {
                        "transparent object leaves the centralizer".into()
                    })
                })
                .collect::<Result<_, _>>()?,
            mor_map: (0..z2c.braided.host.cat.n_mor())
                .map(|f| sub_mor(phi.mor(zc_incl.mor(f))))
                .collect::<Result<_, _>>()?,
        },
        unit_cell: sub_mor(phi.unit_cell)?,
        mult: (0..k2 * k2)
            .map(|p| sub_mor(phi.mu(z2c.objects[p / k2], z2c.objects[p % k2])))
            .collect::<Result<_, _>>()?,
        kind: LaxKind::Strong,
    };
    let module = Arc::new(ModuleAction::regular(&z2phi.braided.host).pullback(&restricted)?);
    let canon2 = canonical_construction(&module, budget)?;
    guarded(|v| {
        let (ident, u) = canon.identification()?;
        let mut back = vec![usize::MAX; u.cat.n_mor()];
        for (f, &g) in ident.mor_map.iter().enumerate() {
            back[g] = f;
        }
        let host = &g1.braided.host.host;
        let obj_map = g1
            .objects
            .iter()
            .map(|hb| {
                let ord = need(hb.underlying(&em, &u), || {
                    "half-braiding is not underlying".into()
                })?;
                let lifted = HalfBraidingOrd {
                    carrier: ord.carrier,
                    components: ord.components.iter().map(|&g| back[g]).collect(),
                };
                let z = need(center.find(&lifted), || {
                    "center object has no ordinary counterpart".into()
                })?;
                need(position(&z2phi.objects, &z), || {
                    "center object is not in the centralizer".into()
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let k = obj_map.len();
        let mut sorted = obj_map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        v.record(
            "objects.bijection",
            sorted.len() == k && k == z2phi.objects.len(),
            format!("{k} center objects"),
        );
        let zc = &*z2c.braided.host.cat;
        let choices: Vec<Vec<Mor>> = (0..k * k)
            .map(|p| {
                let (i, j) = (p / k, p % k);
                zc.hom(host.hom(i, j), canon2.category.hom(obj_map[i], obj_map[j]))
                    .iter()
                    .copied()
                    .filter(|&f| zc.is_iso(f))
                    .collect()
            })
            .collect();
        let mut found = None;
        let mut meter = budget.meter();
        enum_components(&choices, &mut Vec::new(), &mut meter, &mut |comps| {
            if found.is_some() {
                return;
            }
            let f = EnrichedFunctor {
                background: LaxMonoidalFunctor::identity(&host.base),
                source: host.clone(),
                target: canon2.category.clone(),
                obj_map: obj_map.clone(),
                components: comps.to_vec(),
            };
            if check_enriched_functor(&f).is_valid() {
                found = Some(f);
            }
        })?;
        v.record(
            "comparison.enriched_iso",
            found.is_some(),
            "identity-background isomorphism Γ₁(ᴬL) ≅ ᶻL'",
        );
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Universal actions of Γ₁ and Γ₂

/// A monoidal action `⊙ : L × M → M` of an enriched monoidal category on the target:
/// `mult[p * |L×M| + q] ∈ hom(⊙p ⊗ ⊙q, ⊙(p ⊗ q))`, `unit_cell ∈ hom(𝟙, ⊙(1_L, 𝟙))`
/// and unitor `u : ⊙(1_L × −) ⇒ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralAction {
    pub acting: Arc<EnrichedMonoidalCategory>,
    pub acting_braiding: Option<Vec<Mor>>,
    pub act: EnrichedFunctor,
    pub mult: Vec<Mor>,
    pub unit_cell: Mor,
    pub u: EnrichedNat,
}

/// The interchange `(X⊗m)⊗(Y⊗n) → (X⊗Y)⊗(m⊗n)` through `swap : m⊗Y → Y⊗m`.
fn interchange(um: &MonoidalCategory, x: Obj, m: Obj, y: Obj, n: Obj, swap: Mor) -> Mor {
    um.seq(&[
        um.alpha(x, m, um.t(y, n)),
        um.tl(x, um.alpha_inv(m, y, n)),
        um.tl(x, um.tr(swap, n)),
        um.tl(x, um.alpha(y, m, n)),
        um.alpha_inv(x, y, um.t(m, n)),
    ])
}

impl CentralAction {
    /// `L` acting on `target` through `forget : L → M` and the tensor; `swap(y, m)` is
    /// an element of `hom(m ⊗ forget(y), forget(y) ⊗ m)`.
    pub fn through_tensor(
        acting: Arc<EnrichedMonoidalCategory>,
        acting_braiding: Option<Vec<Mor>>,
        forget: &EnrichedFunctor,
        target: &EnrichedMonoidalCategory,
        swap: impl Fn(Obj, Obj) -> Mor,
    ) -> Result<Self, CenterError> {
        let m = &target.host;
        let c = &*m.base;
        let act = forget
            .product(&EnrichedFunctor::identity(m))
            .then(&target.tensor)?;
        let (um, u) = underlying_monoidal(target)?;
        let (nl, nm) = (acting.n_obj(), m.n_obj);
        let np = nl * nm;
        let mult = (0..np * np)
            .map(|p| {
                let ((x, mo), (y, n)) = (
                    ((p / np) / nm, (p / np) % nm),
                    ((p % np) / nm, (p % np) % nm),
                );
                let (fx, fy) = (forget.obj(x), forget.obj(y));
                let swap = need(u.index(um.t(mo, fy), um.t(fy, mo), swap(y, mo)), || {
                    "swap is not an element".into()
                })?;
                Ok(u.element(interchange(&um, fx, mo, fy, n, swap)))
            })
            .collect::<Result<Vec<_>, CenterError>>()?;
        let unit_cell = need(
            element_inverse(
                m,
                target.t(target.unit, target.unit),
                target.unit,
                target.lunitor[target.unit],
            ),
            || "unitor is not invertible".into(),
        )?;
        let u_nat = unitor_nat(
            &acting.host,
            acting.unit,
            &act,
            c.lunitor.clone(),
            target.lunitor.clone(),
        )?;
        Ok(CentralAction {
            acting,
            acting_braiding,
            act,
            mult,
            unit_cell,
            u: u_nat,
        })
    }

    pub fn center_self(g1: &Gamma1) -> Result<Self, CenterError> {
        let acting = g1.em();
        CentralAction::through_tensor(
            acting,
            Some(g1.braided.braiding.clone()),
            &g1.forgetful,
            &g1.source,
            |y, m| g1.objects[y].components[m],
        )
    }

    pub fn transparent_self(
        g2: &Gamma2,
        eb: &EnrichedBraidedCategory,
    ) -> Result<Self, CenterError> {
        CentralAction::through_tensor(
            g2.em(),
            Some(g2.braided.braiding.clone()),
            &g2.inclusion,
            &eb.host,
            |y, m| eb.c(m, g2.objects[y]),
        )
    }

    /// A braided enriched monoidal category acting on itself by its tensor.
    pub fn regular(eb: &EnrichedBraidedCategory) -> Result<Self, CenterError> {
        let em = Arc::new(eb.host.clone());
        CentralAction::through_tensor(
            em.clone(),
            Some(eb.braiding.clone()),
            &EnrichedFunctor::identity(&em.host),
            &em,
            |y, m| eb.c(m, y),
        )
    }

    /// The terminal enriched monoidal category acting trivially.
    pub fn trivial(target: &EnrichedMonoidalCategory) -> Result<Self, CenterError> {
        let m = &target.host;
        let (t, act) = trivial_action(m);
        let acting = Arc::new(EnrichedMonoidalCategory::new(
            t.clone(),
            BraidedStructure::identity(t.base.clone(), true),
            vec![0],
            vec![0],
            0,
            vec![0],
            vec![0],
            vec![0],
        ));
        let c = &*m.base;
        let n = m.n_obj;
        let mult = (0..n * n)
            .map(|p| m.ident(target.t(p / n, p % n)))
            .collect();
        let u = unitor_nat(
            &t,
            0,
            &act,
            (0..c.n_obj()).map(|x| c.id(x)).collect(),
            (0..n).map(|x| m.ident(x)).collect(),
        )?;
        Ok(CentralAction {
            acting,
            acting_braiding: Some(vec![0]),
            act,
            mult,
            unit_cell: m.ident(target.unit),
            u,
        })
    }

    pub fn mu(&self, p: usize, q: usize) -> Mor {
        self.mult[p * self.act.source.n_obj + q]
    }
}

/// The center side of a universal action: the center as an enriched monoidal category,
/// the forgetful functor into the target, the half-braidings of its objects if any,
/// and its braiding.
struct CenterSide<'a> {
    em: &'a EnrichedMonoidalCategory,
    forget: &'a EnrichedFunctor,
    half_braidings: Option<&'a [EnrichedHalfBraiding]>,
    braiding: &'a [Mor],
}

/// Checks `Γ₁`'s universal property against a monoidal action on its source.
pub fn verify_e1_universal(
    g1: &Gamma1,
    action: &CentralAction,
    budget: Budget,
) -> Result<Verification, CenterError> {
    let side = CenterSide {
        em: &g1.braided.host,
        forget: &g1.forgetful,
        half_braidings: Some(&g1.objects),
        braiding: &g1.braided.braiding,
    };
    guarded(|v| central_universal_body(v, &side, &g1.source, action, budget))
}

/// Checks `Γ₂`'s universal property against a braided action on its source.
pub fn verify_e2_universal(
    g2: &Gamma2,
    action: &CentralAction,
    budget: Budget,
) -> Result<Verification, CenterError> {
    let side = CenterSide {
        em: &g2.braided.host,
        forget: &g2.inclusion,
        half_braidings: None,
        braiding: &g2.braided.braiding,
    };
    guarded(|v| central_universal_body(v, &side, &g2.source, action, budget))
}

fn central_universal_body(
    v: &mut Verification,
    side: &CenterSide<'_>,
    target: &Arc<EnrichedMonoidalCategory>,
    action: &CentralAction,
    budget: Budget,
) -> Result<(), CenterError> {
    let m = &*target.host;
    let c = &*m.base;
    let cc = &*c.cat;
    let l = &*action.acting;
    let lh = &*l.host;
    let a = &*lh.base;
    let t = &*side.em.host;
    let zm = t.base.clone();
    let zc = &*zm.cat;
    let iota = &side.forget.background;
    let calc = ActCalc::new(&action.act);
    let (nl, nm, nc, na) = (lh.n_obj, m.n_obj, c.n_obj(), a.n_obj());
    let (um, u) = underlying_monoidal(target)?;
    let inv = |f: Mor| {
        need(cc.inverse(f), || {
            format!("morphism {f} of the base is not invertible")
        })
    };
    let uel = |x: Obj, y: Obj, e: Option<Mor>| {
        need(e.and_then(|e| u.index(x, y, e)), || {
            format!("no element {x} → {y}")
        })
    };
    let el_inv = |x: Obj, y: Obj, e: Mor| {
        need(element_inverse(m, x, y, e), || {
            format!("element {x} → {y} is not invertible")
        })
    };
    let lel_inv = |x: Obj, y: Obj, e: Mor| {
        need(element_inverse(lh, x, y, e), || {
            format!("acting element {x} → {y} is not invertible")
        })
    };
    let u_hat = |x: Obj| action.u.background.component(x);
    let u_comp = |x: Obj| uel(calc.obj(l.unit, x), x, Some(action.u.component(x)));
    let mu = |(x, mo): (Obj, Obj), (y, n): (Obj, Obj)| {
        uel(
            target.t(calc.obj(x, mo), calc.obj(y, n)),
            calc.obj(l.t(x, y), target.t(mo, n)),
            Some(action.mu(x * nm + mo, y * nm + n)),
        )
    };
    let act_el = |p: (Obj, Obj), q: (Obj, Obj), f: Mor, g: Mor| {
        uel(calc.obj(p.0, p.1), calc.obj(q.0, q.1), calc.el(p, q, f, g))
    };
    let z_obj = |x: Obj| {
        need(position(&iota.functor.obj_map, &x), || {
            format!("{x} does not lie in the center base")
        })
    };
    let z_mor = |f: Mor| {
        need(position(&iota.functor.mor_map, &f), || {
            format!("{f} does not lie in the center base")
        })
    };
    let one = target.unit;

    // P(x) = x ⊙ 𝟙 with its half-braiding.
    let mut p_obj = Vec::with_capacity(nl);
    for x in 0..nl {
        let carrier = calc.obj(x, one);
        let found = match side.half_braidings {
            Some(hbs) => {
                let components = (0..nm)
                    .map(|mo| {
                        let path = [
                            um.tr(um.cat.inv(u_comp(mo)?), carrier),
                            mu((l.unit, mo), (x, one))?,
                            act_el(
                                (l.t(l.unit, x), target.t(mo, one)),
                                (x, mo),
                                l.lunitor[x],
                                target.runitor[mo],
                            )?,
                            act_el(
                                (x, mo),
                                (l.t(x, l.unit), target.t(one, mo)),
                                lel_inv(l.t(x, l.unit), x, l.runitor[x])?,
                                el_inv(target.t(one, mo), mo, target.lunitor[mo])?,
                            )?,
                            um.cat.inv(mu((x, one), (l.unit, mo))?),
                            um.tl(carrier, u_comp(mo)?),
                        ];
                        Ok(u.element(um.seq(&path)))
                    })
                    .collect::<Result<Vec<_>, CenterError>>()?;
                position(
                    hbs,
                    &EnrichedHalfBraiding {
                        carrier,
                        components,
                    },
                )
            }
            None => position(&side.forget.obj_map, &carrier),
        };
        p_obj.push(need(found, || {
            format!("{x} ⊙ 𝟙 is not an object of the center")
        })?);
    }

    // P̂ = − ⊙̂ 𝟙.
    let hat_obj = (0..na)
        .map(|x| z_obj(calc.bg_obj(x, c.unit)))
        .collect::<Result<Vec<_>, _>>()?;
    let ac = &*a.cat;
    let hat_mor = (0..ac.n_mor())
        .map(|f| z_mor(calc.bg_mor(f, c.id(c.unit))))
        .collect::<Result<Vec<_>, _>>()?;
    let hat_mult = (0..na * na)
        .map(|p| {
            let (x, y) = (p / na, p % na);
            z_mor(c.seq(&[
                calc.bg_mu(x, c.unit, y, c.unit),
                calc.bg_mor(a.id(a.t(x, y)), c.lambda(c.unit)),
            ]))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let hat_unit = z_mor(inv(u_hat(c.unit))?)?;
    let p_hat = LaxMonoidalFunctor {
        source: lh.base.clone(),
        target: zm.clone(),
        functor: Functor {
            source: a.cat.clone(),
            target: zm.cat.clone(),
            obj_map: hat_obj.clone(),
            mor_map: hat_mor,
        },
        unit_cell: hat_unit,
        mult: hat_mult,
        kind: LaxKind::Strong,
    };
    let r = check_lax_monoidal_functor(&p_hat);
    v.record("p_hat.monoidal", r.is_valid(), r.to_string());
    let r = check_braided_functor(&p_hat, &l.braiding, &side.em.braiding);
    v.record("p_hat.braided", r.is_valid(), r.to_string());

    // Lifting legs into the center's hom-objects.
    let lift = |i: usize, j: usize, apex: Obj, leg: Mor| -> Vec<Mor> {
        let fc = side.forget.component(i, j);
        zc.hom(apex, t.hom(i, j))
            .iter()
            .copied()
            .filter(|&f| cc.compose(fc, iota.mor(f)) == Some(leg))
            .collect()
    };
    let mut counts = Vec::new();
    let mut p_components = Vec::with_capacity(nl * nl);
    for x in 0..nl {
        for y in 0..nl {
            let h = lh.hom(x, y);
            let leg = need(
                cc.seq(&[
                    calc.bg_mor(a.id(h), m.ident(one)),
                    action.act.component(x * nm + one, y * nm + one),
                ]),
                || "comparison leg".into(),
            )?;
            let found = lift(p_obj[x], p_obj[y], hat_obj[h], leg);
            counts.push(found.len());
            p_components.push(found.first().copied().unwrap_or(0));
        }
    }
    let unique = counts.iter().all(|&n| n == 1);
    v.record(
        "p.components_unique",
        unique,
        format!("lift counts {counts:?}"),
    );
    if !unique {
        return Ok(());
    }
    let p = EnrichedFunctor {
        background: p_hat.clone(),
        source: l.host.clone(),
        target: side.em.host.clone(),
        obj_map: p_obj.clone(),
        components: p_components,
    };
    let r = check_enriched_functor(&p);
    v.record("p.enriched_functor", r.is_valid(), r.to_string());

    let lift_element = |i: usize, j: usize, e: Mor, what: &str| -> Result<Mor, CenterError> {
        match lift(i, j, zm.unit, e)[..] {
            [f] => Ok(f),
            ref fs => Err(CenterError::Precondition(format!(
                "{what}: {} lifts",
                fs.len()
            ))),
        }
    };
    let p_mult = (0..nl * nl)
        .map(|q| {
            let (x, y) = (q / nl, q % nl);
            let f = um.seq(&[
                mu((x, one), (y, one))?,
                act_el(
                    (l.t(x, y), target.t(one, one)),
                    (l.t(x, y), one),
                    lh.ident(l.t(x, y)),
                    target.lunitor[one],
                )?,
            ]);
            lift_element(
                side.em.t(p_obj[x], p_obj[y]),
                p_obj[l.t(x, y)],
                u.element(f),
                "monoidal structure of P",
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let p_unit = lift_element(side.em.unit, p_obj[l.unit], action.unit_cell, "unit of P")?;
    let pm = EnrichedMonoidalFunctor {
        functor: p.clone(),
        source: action.acting.clone(),
        target: Arc::new(side.em.clone()),
        mult: p_mult,
        unit_cell: p_unit,
    };
    let r = check_enriched_monoidal_functor(&pm);
    v.record("p.monoidal", r.is_valid(), r.to_string());
    if let Some(braiding) = &action.acting_braiding {
        let src = EnrichedBraidedCategory {
            host: l.clone(),
            braiding: braiding.clone(),
            symmetric: false,
        };
        let tgt = EnrichedBraidedCategory {
            host: side.em.clone(),
            braiding: side.braiding.to_vec(),
            symmetric: false,
        };
        let (sb, _) = underlying_braided(&src)?;
        let (tb, _) = underlying_braided(&tgt)?;
        let r = check_braided_functor(&pm.underlying()?, &sb, &tb);
        v.record("p.braided", r.is_valid(), r.to_string());
    }

    // ρ : ⊗ ∘ (forget P × 1) ⇒ ⊙.
    let star = side
        .forget
        .product(&EnrichedFunctor::identity(&target.host))
        .then(&target.tensor)?;
    let rho_hat_at = |x: Obj, cobj: Obj| -> Result<Mor, CenterError> {
        Ok(c.seq(&[
            c.tl(calc.bg_obj(x, c.unit), inv(u_hat(cobj))?),
            calc.bg_mu(x, c.unit, a.unit, cobj),
            calc.bg_mor(a.rho(x), c.lambda(cobj)),
        ]))
    };
    let rho_hat = (0..na * nc)
        .map(|q| rho_hat_at(q / nc, q % nc))
        .collect::<Result<Vec<_>, _>>()?;
    let rho_components = (0..nl * nm)
        .map(|q| {
            let (x, mo) = (q / nm, q % nm);
            let f = um.seq(&[
                um.tl(calc.obj(x, one), um.cat.inv(u_comp(mo)?)),
                mu((x, one), (l.unit, mo))?,
                act_el(
                    (l.t(x, l.unit), target.t(one, mo)),
                    (x, mo),
                    l.runitor[x],
                    target.lunitor[mo],
                )?,
            ]);
            Ok(u.element(f))
        })
        .collect::<Result<Vec<_>, CenterError>>()?;
    let rho_src = p
        .product(&EnrichedFunctor::identity(&target.host))
        .then(&star)?;
    let rho = EnrichedNat {
        background: LaxMonoidalNat {
            nat: NatTransf {
                source: rho_src.background.functor.clone(),
                target: action.act.background.functor.clone(),
                components: rho_hat.clone(),
            },
            source: rho_src.background.clone(),
            target: action.act.background.clone(),
        },
        source: rho_src,
        target: action.act.clone(),
        components: rho_components.clone(),
    };
    let r = check_enriched_nat(&rho);
    v.record("rho.enriched_nat", r.is_valid(), r.to_string());

    // Pasting: u ∘ ρ(1_L × −) ∘ ⊗(P⁰ × 1) = λ over û ∘ ρ̂(𝟙 × −) ∘ (ι P̂⁰ ⊗ 1) = λ.
    let star_calc = ActCalc::new(&star);
    let p1 = p_obj[l.unit];
    let mut comps_ok = true;
    for mo in 0..nm {
        let w = star_calc.el((side.em.unit, mo), (p1, mo), p_unit, m.ident(mo));
        let (x1, one_m) = (star.obj(p1 * nm + mo), calc.obj(l.unit, mo));
        let lhs = w
            .and_then(|w| {
                m.compose_elements(
                    target.t(one, mo),
                    x1,
                    one_m,
                    rho_components[l.unit * nm + mo],
                    w,
                )
            })
            .and_then(|w| {
                m.compose_elements(target.t(one, mo), one_m, mo, action.u.component(mo), w)
            });
        comps_ok &= lhs == Some(target.lunitor[mo]);
    }
    v.record(
        "pasting.components",
        comps_ok,
        "u ∘ ρ ∘ ⊗(P⁰ × 1) against λ",
    );
    let p0 = iota.mor(hat_unit);
    let bg_ok = (0..nc)
        .all(|x| cc.seq(&[c.tr(p0, x), rho_hat[a.unit * nc + x], u_hat(x)]) == Some(c.lambda(x)));
    v.record("pasting.background", bg_ok, "û ∘ ρ̂ ∘ (P̂⁰ ⊗ 1) against λ");

    // Uniqueness of the comparison isomorphism.
    let mut meter = budget.meter();
    let mut count = 0usize;
    for nat in enumerate_nat_transfs(&p_hat.functor, &p_hat.functor, budget)? {
        let alpha_hat = LaxMonoidalNat {
            source: p_hat.clone(),
            target: p_hat.clone(),
            nat,
        };
        if !check_lax_monoidal_nat(&alpha_hat).is_valid()
            || !alpha_hat.nat.components.iter().all(|&f| zc.is_iso(f))
        {
            continue;
        }
        let absorbed = (0..na).all(|x| {
            let ax = iota.mor(alpha_hat.component(x));
            (0..nc)
                .all(|y| cc.compose(rho_hat[x * nc + y], c.tr(ax, y)) == Some(rho_hat[x * nc + y]))
        });
        if !absorbed {
            continue;
        }
        let choices: Vec<Vec<Mor>> = (0..nl)
            .map(|x| zc.hom(zm.unit, t.hom(p_obj[x], p_obj[x])).to_vec())
            .collect();
        let mut hits = 0usize;
        enum_components(&choices, &mut Vec::new(), &mut meter, &mut |comps| {
            let nat = EnrichedNat {
                background: alpha_hat.clone(),
                source: p.clone(),
                target: p.clone(),
                components: comps.to_vec(),
            };
            let mnat = EnrichedMonoidalNat {
                nat,
                source: pm.clone(),
                target: pm.clone(),
            };
            if !check_enriched_monoidal_nat(&mnat).is_valid() {
                return;
            }
            if !(0..nl).all(|x| element_inverse(t, p_obj[x], p_obj[x], comps[x]).is_some()) {
                return;
            }
            let fixed = (0..nl).all(|x| {
                (0..nm).all(|mo| {
                    let xm = star.obj(p_obj[x] * nm + mo);
                    star_calc.el((p_obj[x], mo), (p_obj[x], mo), comps[x], m.ident(mo))
                        == Some(m.ident(xm))
                })
            });
            if fixed {
                hits += 1;
            }
        })?;
        count += hits;
    }
    v.record(
        "uniqueness",
        count == 1,
        format!("{count} comparison isomorphisms"),
    );
    Ok(())
}

/// Underlying-level view used by tests: the elements of `hom(x,y)` in index order.
pub fn elements(e: &EnrichedCategory, x: Obj, y: Obj) -> Vec<Mor> {
    e.base.cat.hom(e.base.unit, e.hom(x, y)).to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{canonical_braided, central_self_module};

    fn lattice2() -> Arc<MonoidalCategory> {
        let c = Arc::new(FinCategory::from_preorder(2, |x, y| x <= y));
        Arc::new(MonoidalCategory::from_thin(c, |a, b| a.min(b), 1).unwrap())
    }

    fn z2() -> Arc<MonoidalCategory> {
        Arc::new(MonoidalCategory::discrete_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap())
    }

    fn terminal() -> Arc<MonoidalCategory> {
        Arc::new(MonoidalCategory::terminal())
    }

    fn chain2() -> Canonical {
        canonical_construction(
            &Arc::new(ModuleAction::regular(&lattice2())),
            Budget::DEFAULT,
        )
        .unwrap()
    }

    /// `({0,1}, max, 0)` ordered by `0 ≤ 1`, enriched in lattice-2.
    fn monoid_preorder() -> EnrichedBraidedCategory {
        let b = BraidedStructure::thin(lattice2()).unwrap();
        let em =
            EnrichedMonoidalCategory::thin(&b, 2, |x, y| usize::from(x <= y), |x, y| x.max(y), 0)
                .unwrap();
        EnrichedBraidedCategory::thin(em).unwrap()
    }

    fn heyting(x: Obj, y: Obj) -> Obj {
        if x <= y {
            1
        } else {
            y
        }
    }

    #[test]
    fn chain2_brackets_match_meet_formula() {
        let c = chain2();
        let z0 = e0_center(&c.category, Budget::DEFAULT).unwrap();
        assert_eq!(z0.functors.len(), 3);
        assert!(z0.check_certificates().is_valid());
        let iota = &z0.center.forgetful.functor;
        for (i, f) in z0.functors.iter().enumerate() {
            for (j, g) in z0.functors.iter().enumerate() {
                let expected = (0..2).map(|x| heyting(f.obj(x), g.obj(x))).min().unwrap();
                assert_eq!(iota.obj(z0.bracket(i, j).terminal.apex), expected);
            }
        }
    }

    #[test]
    fn e0_routes_agree() {
        for base in [lattice2(), z2(), terminal()] {
            let module = Arc::new(ModuleAction::regular(&base));
            let canon = canonical_construction(&module, Budget::DEFAULT).unwrap();
            let z0 = e0_center(&canon.category, Budget::DEFAULT).unwrap();
            let via = e0_center_via_module(&module, Budget::DEFAULT).unwrap();
            let v = compare_e0(&z0, &via, &canon).unwrap();
            assert!(v.all_passed(), "{:?}", v.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn e0_universal_on_designated_actions() {
        let c = chain2();
        let z0 = e0_center(&c.category, Budget::DEFAULT).unwrap();
        let eb = monoid_preorder();
        for action in [
            E0Action::evaluation(&z0).unwrap(),
            E0Action::trivial(&c.category).unwrap(),
            E0Action::regular(&eb.host).unwrap(),
        ] {
            let v = verify_e0_universal(&action, Budget::DEFAULT).unwrap();
            assert!(v.all_passed(), "{:?}", v.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn gamma1_on_monoid_preorder() {
        let eb = monoid_preorder();
        let g1 = gamma1(&Arc::new(eb.host.clone()), Budget::DEFAULT).unwrap();
        assert_eq!(g1.objects.len(), 2);
        assert!(g1.check_certificates().is_valid());
    }

    #[test]
    fn e1_universal_on_designated_actions() {
        let eb = monoid_preorder();
        let em = Arc::new(eb.host.clone());
        let g1 = gamma1(&em, Budget::DEFAULT).unwrap();
        for action in [
            CentralAction::center_self(&g1).unwrap(),
            CentralAction::trivial(&em).unwrap(),
            CentralAction::regular(&eb).unwrap(),
        ] {
            let v = verify_e1_universal(&g1, &action, Budget::DEFAULT).unwrap();
            assert!(v.all_passed(), "{:?}", v.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn e2_universal_on_designated_actions() {
        let eb = monoid_preorder();
        let g2 = gamma2(&eb).unwrap();
        for action in [
            CentralAction::transparent_self(&g2, &eb).unwrap(),
            CentralAction::trivial(&eb.host).unwrap(),
            CentralAction::regular(&eb).unwrap(),
        ] {
            let v = verify_e2_universal(&g2, &action, Budget::DEFAULT).unwrap();
            assert!(v.all_passed(), "{:?}", v.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn gamma1_of_canonical_on_fixtures() {
        let l2 = BraidedStructure::thin(lattice2()).unwrap();
        for b in [
            BraidedStructure::identity(z2(), true),
            l2,
            BraidedStructure::identity(terminal(), true),
        ] {
            let mm = central_self_module(&b, Budget::DEFAULT).unwrap();
            let v = gamma1_of_canonical(&mm, Budget::DEFAULT).unwrap();
            assert!(v.all_passed(), "{:?}", v.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn gamma2_of_symmetric_canonical_is_itself() {
        let l2 = BraidedStructure::thin(lattice2()).unwrap();
        for b in [BraidedStructure::identity(z2(), true), l2] {
            let mm = central_self_module(&b, Budget::DEFAULT).unwrap();
            let (_, eb) = canonical_braided(&mm, &b, Budget::DEFAULT).unwrap();
            let g2 = gamma2(&eb).unwrap();
            assert_eq!(g2.braided, eb);
        }
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let c = chain2();
        let z0 = e0_center(&c.category, Budget::DEFAULT).unwrap();
        let zc = &*z0.center.monoidal().cat;
        let mut tc = z0.bracket(0, 0).clone();
        let n = tc.candidates.len();
        let (i, j) = (0..n * n)
            .map(|p| (p / n, p % n))
            .find(|&(i, j)| tc.candidates[i].apex != tc.candidates[j].apex)
            .unwrap();
        tc.mediators[i] = tc.mediators[j];
        let r = check_terminal_cone(zc, &c.category.base.cat, &z0.center.forgetful.functor, &tc);
        assert!(!r.is_valid());
    }

    #[test]
    fn gamma2_is_idempotent() {
        let eb = monoid_preorder();
        let g2 = gamma2(&eb).unwrap();
        let again = gamma2(&g2.braided).unwrap();
        assert_eq!(again.braided, g2.braided);
    }

    #[test]
    fn gamma1_braiding_lifts_half_braidings() {
        let eb = monoid_preorder();
        let g1 = gamma1(&Arc::new(eb.host.clone()), Budget::DEFAULT).unwrap();
        let k = g1.objects.len();
        let f = &g1.forgetful;
        let c = &*g1.source.base().cat;
        for x in 0..k {
            for y in 0..k {
                let (xy, yx) = (g1.braided.host.t(x, y), g1.braided.host.t(y, x));
                let lifted = c.compose(f.component(xy, yx), f.background.mor(g1.braided.c(x, y)));
                assert_eq!(
                    lifted,
                    Some(g1.objects[y].components[g1.objects[x].carrier])
                );
            }
        }
    }
}
