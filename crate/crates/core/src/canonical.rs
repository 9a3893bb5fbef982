//! The canonical construction `ᴬL` of an enriched category from a strongly unital
//! module with internal homs, and the correspondences between enriched functors
//! and transformations on one side and R-lax functors and ξ̂-lax transformations
//! on the other, including the monoidal and braided upgrades.

use std::sync::Arc;

use crate::actions::{
    check_module, check_rlax, check_xilax_nat, internal_homs, ActionError, InternalHomTable,
    ModuleAction, MonoidalModule, RLaxStructure, XiLaxNat,
};
use crate::core_cat::{
    check_functor, enum_components, enumerate_functors, enumerate_nat_transfs, iso_search,
    product_category, Budget, BudgetExceeded, CategoryError, Functor, Mor, NatTransf, Obj,
    ValidationReport, Verification,
};
use crate::enriched_core::{
    cartesian_product, check_enriched_category, check_enriched_functor, check_enriched_nat,
    underlying_category, EnrichedCategory, EnrichedError, EnrichedFunctor, EnrichedNat,
};
use crate::enriched_monoidal::{EnrichedBraidedCategory, EnrichedMonoidalCategory};
use crate::monoidal_cat::{
    drinfeld_center_z1, product_monoidal, BraidedStructure, HalfBraidingOrd, LaxKind,
    LaxMonoidalFunctor, LaxMonoidalNat, MonoidalCategory, MonoidalError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonicalError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Enriched(#[from] EnrichedError),
    #[error(transparent)]
    Monoidal(#[from] MonoidalError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("invalid input:\n{0}")]
    InvalidInput(ValidationReport),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

fn ensure(r: ValidationReport) -> Result<(), CanonicalError> {
    if r.is_valid() {
        Ok(())
    } else {
        Err(CanonicalError::InvalidInput(r))
    }
}

/// `ᴬL` together with the module and internal-hom certificates it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub module: Arc<ModuleAction>,
    pub homs: InternalHomTable,
    pub category: Arc<EnrichedCategory>,
}

impl Canonical {
    fn mediate(&self, x: Obj, y: Obj, a: Obj, f: Option<Mor>) -> Result<Mor, CanonicalError> {
        f.and_then(|f| self.homs.get(x, y).mediate(a, f))
            .ok_or_else(|| {
                CanonicalError::Precondition(format!("no mediator into [{x}, {y}] from {a}"))
            })
    }

    /// `f̲ : 𝟙 → [x,y]` for `f : x → y`, the mediator of `f ∘ u_x`.
    pub fn underline(&self, f: Mor) -> Mor {
        let l = &*self.module.carrier;
        let (x, y) = (l.dom(f), l.cod(f));
        self.mediate(x, y, self.module.base.unit, l.compose(f, self.module.u(x)))
            .expect("a strongly unital module has every f̲")
    }

    /// The morphism `x → y` with element `e : 𝟙 → [x,y]`: `ev ∘ (e ⊙ 1) ∘ u⁻¹`.
    pub fn overline(&self, x: Obj, y: Obj, e: Mor) -> Option<Mor> {
        let m = &*self.module;
        m.carrier
            .seq(&[m.u_inv(x), m.act_r(e, x), self.homs.ev(x, y)])
    }

    /// The identification `L → underlying(ᴬL)`, `f ↦ f̲`.
    pub fn identification(
        &self,
    ) -> Result<(Functor, crate::enriched_core::Underlying), CanonicalError> {
        let u = underlying_category(&self.category)?;
        let l = &self.module.carrier;
        let mor_map = (0..l.n_mor())
            .map(|f| {
                u.index(l.dom(f), l.cod(f), self.underline(f))
                    .ok_or_else(|| {
                        CanonicalError::Precondition(format!("f̲ of morphism {f} is not an element"))
                    })
            })
            .collect::<Result<_, _>>()?;
        let fun = Functor::new(l.clone(), u.cat.clone(), (0..l.n_obj()).collect(), mor_map)?;
        Ok((fun, u))
    }
}

/// Builds `ᴬL`: hom-objects are internal homs, identities and compositions the unique
/// mediators of `u_x` and `ev_y ∘ (1 ⊙ ev_x) ∘ assoc`.
pub fn canonical_construction(
    m: &Arc<ModuleAction>,
    budget: Budget,
) -> Result<Canonical, CanonicalError> {
    ensure(check_module(m))?;
    if !m.is_strongly_unital() {
        return Err(CanonicalError::Precondition(
            "module is not strongly unital".into(),
        ));
    }
    let homs = internal_homs(m, budget)?;
    let n = m.carrier.n_obj();
    let l = &*m.carrier;
    let a = &*m.base;
    let partial = Canonical {
        module: m.clone(),
        homs,
        category: Arc::new(EnrichedCategory {
            base: m.base.clone(),
            n_obj: n,
            hom: vec![],
            ident: vec![],
            comp: vec![],
        }),
    };
    let h = |x: Obj, y: Obj| partial.homs.hom(x, y);
    let ident = (0..n)
        .map(|x| partial.mediate(x, x, a.unit, Some(m.u(x))))
        .collect::<Result<_, _>>()?;
    let mut comp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hyz, hxy) = (h(y, z), h(x, y));
                let f = l.seq(&[
                    m.assoc_at(hyz, hxy, x),
                    m.act_l(hyz, partial.homs.ev(x, y)),
                    partial.homs.ev(y, z),
                ]);
                comp.push(partial.mediate(x, z, a.t(hyz, hxy), f)?);
            }
        }
    }
    let category = EnrichedCategory {
        base: m.base.clone(),
        n_obj: n,
        hom: (0..n * n).map(|p| h(p / n, p % n)).collect(),
        ident,
        comp,
    };
    ensure(check_enriched_category(&category))?;
    Ok(Canonical {
        category: Arc::new(category),
        ..partial
    })
}

/// `F_{x,y}` is the mediator of `F(ev_x) ∘ β_{[x,y],x} : R[x,y] ⊙ Fx → Fy`.
pub fn enriched_functor_from_rlax(
    s: &RLaxStructure,
    src: &Canonical,
    tgt: &Canonical,
) -> Result<EnrichedFunctor, CanonicalError> {
    if s.source != src.module || s.target != tgt.module {
        return Err(CanonicalError::Precondition(
            "R-lax structure does not join the given modules".into(),
        ));
    }
    ensure(check_rlax(s))?;
    let n = src.category.n_obj;
    let c = &*tgt.module.carrier;
    let components = (0..n * n)
        .map(|p| {
            let (x, y) = (p / n, p % n);
            let hxy = src.homs.hom(x, y);
            let f = c.compose(s.mor(src.homs.ev(x, y)), s.beta_at(hxy, x));
            tgt.mediate(s.obj(x), s.obj(y), s.r.obj(hxy), f)
        })
        .collect::<Result<_, _>>()?;
    Ok(EnrichedFunctor {
        background: s.r.clone(),
        source: src.category.clone(),
        target: tgt.category.clone(),
        obj_map: s.functor.obj_map.clone(),
        components,
    })
}

/// The underlying functor with `β_{a,x} = ev_{Fx} ∘ (F_{x,a⊙x} ⊙ 1) ∘ (F̂(coev_x) ⊙ 1)`.
pub fn rlax_from_enriched_functor(
    f: &EnrichedFunctor,
    src: &Canonical,
    tgt: &Canonical,
) -> Result<RLaxStructure, CanonicalError> {
    if f.source != src.category || f.target != tgt.category {
        return Err(CanonicalError::Precondition(
            "enriched functor does not join the given canonical constructions".into(),
        ));
    }
    ensure(check_enriched_functor(f))?;
    let (lm, mm) = (&*src.module, &*tgt.module);
    let (l, m) = (&*lm.carrier, &*mm.carrier);
    let bc = &*mm.base.cat;
    let bg = &f.background;
    let mor_map = (0..l.n_mor())
        .map(|g| {
            let (y, y1) = (l.dom(g), l.cod(g));
            bc.seq(&[bg.unit_cell, bg.mor(src.underline(g)), f.component(y, y1)])
                .and_then(|e| tgt.overline(f.obj(y), f.obj(y1), e))
                .ok_or_else(|| {
                    CanonicalError::Precondition(format!("image of morphism {g} undefined"))
                })
        })
        .collect::<Result<_, _>>()?;
    let functor = Functor::new(
        lm.carrier.clone(),
        mm.carrier.clone(),
        f.obj_map.clone(),
        mor_map,
    )?;
    let nl = l.n_obj();
    let beta = (0..lm.base.n_obj() * nl)
        .map(|p| {
            let (a, x) = (p / nl, p % nl);
            let fx = f.obj(x);
            let ax = lm.act(a, x);
            m.seq(&[
                mm.act_r(bg.mor(src.homs.coev(lm, x, a)), fx),
                mm.act_r(f.component(x, ax), fx),
                tgt.homs.ev(fx, f.obj(ax)),
            ])
            .ok_or_else(|| CanonicalError::Precondition(format!("β({a},{x}) undefined")))
        })
        .collect::<Result<_, _>>()?;
    Ok(RLaxStructure {
        r: bg.clone(),
        source: src.module.clone(),
        target: tgt.module.clone(),
        functor,
        beta,
    })
}

/// `(ξ̂, ξ) ↦` the enriched transformation with components `ξ̲_x`.
pub fn enriched_nat_from_xilax(
    t: &XiLaxNat,
    src: &Canonical,
    tgt: &Canonical,
) -> Result<EnrichedNat, CanonicalError> {
    ensure(check_xilax_nat(t))?;
    Ok(EnrichedNat {
        background: t.xi_hat.clone(),
        source: enriched_functor_from_rlax(&t.source, src, tgt)?,
        target: enriched_functor_from_rlax(&t.target, src, tgt)?,
        components: t.nat.components.iter().map(|&g| tgt.underline(g)).collect(),
    })
}

/// The inverse of [`enriched_nat_from_xilax`]: components read through the identification.
pub fn xilax_from_enriched_nat(
    t: &EnrichedNat,
    src: &Canonical,
    tgt: &Canonical,
) -> Result<XiLaxNat, CanonicalError> {
    ensure(check_enriched_nat(t))?;
    let source = rlax_from_enriched_functor(&t.source, src, tgt)?;
    let target = rlax_from_enriched_functor(&t.target, src, tgt)?;
    let components = (0..src.category.n_obj)
        .map(|x| {
            tgt.overline(t.source.obj(x), t.target.obj(x), t.component(x))
                .ok_or_else(|| CanonicalError::Precondition(format!("component {x} undefined")))
        })
        .collect::<Result<_, _>>()?;
    let nat = NatTransf {
        source: source.functor.clone(),
        target: target.functor.clone(),
        components,
    };
    Ok(XiLaxNat {
        xi_hat: t.background.clone(),
        source,
        target,
        nat,
    })
}

/// Enriched monoidal structure on `ᴬL` from a monoidal module over the anti-braided base:
/// `⊗` is the mediator of `(ev ⊗ ev) ∘ χ`, coherence elements are `α̲`, `λ̲`, `ρ̲`.
pub fn canonical_monoidal(
    mm: &MonoidalModule,
    budget: Budget,
) -> Result<(Canonical, EnrichedMonoidalCategory), CanonicalError> {
    ensure(crate::actions::check_monoidal_module(mm))?;
    let canon = canonical_construction(&mm.module, budget)?;
    let l = &*mm.carrier;
    let m = &*mm.module;
    let a = &*m.base;
    let n = l.n_obj();
    let h = |x: Obj, y: Obj| canon.homs.hom(x, y);
    let nn = n * n;
    let tensor_components = (0..nn * nn)
        .map(|p| {
            let ((x1, y1), (x2, y2)) = (((p / nn) / n, (p / nn) % n), ((p % nn) / n, (p % nn) % n));
            let (h1, h2) = (h(x1, x2), h(y1, y2));
            let f = l.cat.seq(&[
                mm.chi(h1, h2, x1, y1),
                l.tm(canon.homs.ev(x1, x2), canon.homs.ev(y1, y2)),
            ]);
            canon.mediate(l.t(x1, y1), l.t(x2, y2), a.t(h1, h2), f)
        })
        .collect::<Result<_, _>>()?;
    let assoc = (0..nn * n)
        .map(|p| canon.underline(l.alpha(p / nn, (p / n) % n, p % n)))
        .collect();
    let lunitor = (0..n).map(|x| canon.underline(l.lambda(x))).collect();
    let runitor = (0..n).map(|x| canon.underline(l.rho(x))).collect();
    let em = EnrichedMonoidalCategory::new(
        canon.category.clone(),
        mm.base.reversed(),
        l.tensor_obj.clone(),
        tensor_components,
        l.unit,
        assoc,
        lunitor,
        runitor,
    )
    .validated()?;
    Ok((canon, em))
}

/// Recovers the monoidal module from an enriched monoidal structure on `ᴬL`:
/// `χ_{a,b,x,y} = ev ∘ ((⊗ ∘ (coev_x ⊗ coev_y)) ⊙ 1)`.
pub fn extract_monoidal_module(
    canon: &Canonical,
    em: &EnrichedMonoidalCategory,
) -> Result<MonoidalModule, CanonicalError> {
    if em.host != canon.category {
        return Err(CanonicalError::Precondition(
            "enriched monoidal category is not on this canonical construction".into(),
        ));
    }
    let m = &*canon.module;
    let (l, a) = (&*m.carrier, &*m.base);
    let ac = &*a.cat;
    let (n, ml) = (l.n_obj(), l.n_mor());
    let (_, u) = crate::enriched_monoidal::underlying_monoidal(em)?;
    let (ident, _) = canon.identification()?;
    let undefined = |what: &str| CanonicalError::Precondition(format!("{what} undefined"));
    let tensor_mor = (0..ml * ml)
        .map(|p| {
            let (f, g) = (p / ml, p % ml);
            let (x1, x2, y1, y2) = (l.dom(f), l.cod(f), l.dom(g), l.cod(g));
            let el = ac.seq(&[
                em.tensor.background.unit_cell,
                a.tm(canon.underline(f), canon.underline(g)),
                em.tensor_component(x1, y1, x2, y2),
            ]);
            el.and_then(|e| canon.overline(em.t(x1, y1), em.t(x2, y2), e))
                .ok_or_else(|| undefined("tensor of morphisms"))
        })
        .collect::<Result<_, _>>()?;
    let over = |x: Obj, y: Obj, e: Mor| {
        canon
            .overline(x, y, e)
            .ok_or_else(|| undefined("coherence morphism"))
    };
    let mut assoc = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                assoc.push(over(
                    em.t(em.t(x, y), z),
                    em.t(x, em.t(y, z)),
                    em.alpha(x, y, z),
                )?);
            }
        }
    }
    let carrier = MonoidalCategory {
        cat: m.carrier.clone(),
        tensor_obj: em.tensor.obj_map.clone(),
        tensor_mor,
        unit: em.unit,
        assoc,
        lunitor: (0..n)
            .map(|x| over(em.t(em.unit, x), x, em.lunitor[x]))
            .collect::<Result<_, _>>()?,
        runitor: (0..n)
            .map(|x| over(em.t(x, em.unit), x, em.runitor[x]))
            .collect::<Result<_, _>>()?,
    };
    let _ = (ident, u);
    let na = a.n_obj();
    let mut interchange = Vec::with_capacity(na * na * n * n);
    for s in 0..na {
        for t in 0..na {
            for x in 0..n {
                for y in 0..n {
                    let (sx, ty) = (m.act(s, x), m.act(t, y));
                    let (xy, target) = (em.t(x, y), em.t(sx, ty));
                    let g = ac.seq(&[
                        a.tm(canon.homs.coev(m, x, s), canon.homs.coev(m, y, t)),
                        em.tensor_component(x, y, sx, ty),
                    ]);
                    let chi = g
                        .and_then(|g| l.seq(&[m.act_r(g, xy), canon.homs.ev(xy, target)]))
                        .ok_or_else(|| undefined("interchange"))?;
                    interchange.push(chi);
                }
            }
        }
    }
    Ok(MonoidalModule {
        module: canon.module.clone(),
        base: em.braiding.reversed(),
        carrier: Arc::new(carrier),
        interchange,
        unit_cell: m.u(em.unit),
    })
}

/// Checks `c_{a⊙x, b⊙y} ∘ χ_{a,b,x,y} = χ_{b,a,y,x} ∘ (ĉ_{a,b} ⊙ c_{x,y})`, with `ĉ` the
/// braiding of the enriching base.
pub fn check_braided_module(mm: &MonoidalModule, braiding: &BraidedStructure) -> ValidationReport {
    let mut r = ValidationReport::new();
    if *braiding.host != *mm.carrier {
        r.push("braided_module.typing", "braiding is not on the carrier");
        return r;
    }
    let m = &*mm.module;
    let base = mm.base.reversed();
    let (a, l) = (&*base.host, &*mm.carrier);
    for p in 0..a.n_obj() {
        for q in 0..a.n_obj() {
            for x in 0..l.n_obj() {
                for y in 0..l.n_obj() {
                    let lhs = l
                        .cat
                        .compose(braiding.c(m.act(p, x), m.act(q, y)), mm.chi(p, q, x, y));
                    let rhs = l
                        .cat
                        .compose(mm.chi(q, p, y, x), m.actm(base.c(p, q), braiding.c(x, y)));
                    r.expect_eq("braided_module.square", lhs, rhs, || {
                        format!("({p},{q},{x},{y})")
                    });
                }
            }
        }
    }
    r
}

/// Enriched braiding `c̲_{x,y}` on `ᴬL` for a braided monoidal module over a symmetric base.
pub fn canonical_braided(
    mm: &MonoidalModule,
    braiding: &BraidedStructure,
    budget: Budget,
) -> Result<(Canonical, EnrichedBraidedCategory), CanonicalError> {
    ensure(check_braided_module(mm, braiding))?;
    let (canon, em) = canonical_monoidal(mm, budget)?;
    let n = em.n_obj();
    let components = (0..n * n)
        .map(|p| canon.underline(braiding.c(p / n, p % n)))
        .collect();
    let eb = EnrichedBraidedCategory {
        host: em,
        braiding: components,
        symmetric: braiding.symmetric,
    }
    .validated()?;
    Ok((canon, eb))
}

/// The monoidal module of a braided category acting on itself through
/// `Ā → Z1(A)`, `a ↦ (a, c⁻¹_{a,−})`.
pub fn central_self_module(
    b: &BraidedStructure,
    budget: Budget,
) -> Result<MonoidalModule, CanonicalError> {
    let a = &b.host;
    let n = a.n_obj();
    let center = drinfeld_center_z1(a, budget)?;
    let zm = center.monoidal().clone();
    let missing = |what: String| CanonicalError::Precondition(format!("central lift: {what}"));
    let obj_map: Vec<Obj> = (0..n)
        .map(|x| {
            center
                .find(&HalfBraidingOrd {
                    carrier: x,
                    components: (0..n).map(|z| b.c_inv(x, z)).collect(),
                })
                .ok_or_else(|| missing(format!("object {x}")))
        })
        .collect::<Result<_, _>>()?;
    let find_mor = |s: usize, t: usize, f: Mor| {
        center
            .morphisms
            .iter()
            .position(|&(s1, t1, g)| s1 == s && t1 == t && g == f)
            .ok_or_else(|| missing(format!("morphism {f}")))
    };
    let ac = &*a.cat;
    let mor_map = (0..ac.n_mor())
        .map(|f| find_mor(obj_map[ac.dom(f)], obj_map[ac.cod(f)], f))
        .collect::<Result<_, _>>()?;
    let unit_cell = find_mor(zm.unit, obj_map[a.unit], a.id(a.unit))?;
    let mult = (0..n * n)
        .map(|p| {
            let (x, y) = (p / n, p % n);
            find_mor(
                zm.t(obj_map[x], obj_map[y]),
                obj_map[a.t(x, y)],
                a.id(a.t(x, y)),
            )
        })
        .collect::<Result<_, _>>()?;
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
    Ok(MonoidalModule::from_central(
        &b.reversed(),
        a,
        &center,
        &phi,
    )?)
}

/// Product of module actions over the product of the acting categories.
pub fn product_module(m1: &ModuleAction, m2: &ModuleAction) -> ModuleAction {
    let base = Arc::new(product_monoidal(&m1.base, &m2.base));
    let carrier = Arc::new(product_category(&m1.carrier, &m2.carrier));
    let (na2, nl2, ma2, ml2) = (
        m2.base.n_obj(),
        m2.carrier.n_obj(),
        m2.base.cat.n_mor(),
        m2.carrier.n_mor(),
    );
    let (na, nl, ma, ml) = (
        base.n_obj(),
        carrier.n_obj(),
        base.cat.n_mor(),
        carrier.n_mor(),
    );
    let act_obj = (0..na * nl).map(|p| {
        let (a, x) = (p / nl, p % nl);
        m1.act(a / na2, x / nl2) * nl2 + m2.act(a % na2, x % nl2)
    });
    let act_mor = (0..ma * ml).map(|p| {
        let (f, g) = (p / ml, p % ml);
        m1.actm(f / ma2, g / ml2) * ml2 + m2.actm(f % ma2, g % ml2)
    });
    let mut assoc = Vec::with_capacity(na * na * nl);
    for a in 0..na {
        for b in 0..na {
            for x in 0..nl {
                assoc.push(
                    m1.assoc_at(a / na2, b / na2, x / nl2) * ml2
                        + m2.assoc_at(a % na2, b % na2, x % nl2),
                );
            }
        }
    }
    ModuleAction {
        act_obj: act_obj.collect(),
        act_mor: act_mor.collect(),
        assoc,
        unitor: (0..nl)
            .map(|x| m1.u(x / nl2) * ml2 + m2.u(x % nl2))
            .collect(),
        base,
        carrier,
    }
}

/// Every R-lax structure on every functor between the carriers, over a fixed `r`.
pub fn enumerate_rlax(
    source: &Arc<ModuleAction>,
    target: &Arc<ModuleAction>,
    r: &LaxMonoidalFunctor,
    budget: Budget,
) -> Result<Vec<RLaxStructure>, CanonicalError> {
    let mut meter = budget.meter();
    let functors = enumerate_functors(&source.carrier, &target.carrier, budget)?;
    let (na, nl) = (source.base.n_obj(), source.carrier.n_obj());
    let mut out = Vec::new();
    for functor in functors {
        let choices: Vec<Vec<Mor>> = (0..na * nl)
            .map(|p| {
                let (a, x) = (p / nl, p % nl);
                target
                    .carrier
                    .hom(
                        target.act(r.obj(a), functor.obj(x)),
                        functor.obj(source.act(a, x)),
                    )
                    .to_vec()
            })
            .collect();
        let mut prefix = Vec::new();
        enum_components(&choices, &mut prefix, &mut meter, &mut |beta| {
            let s = RLaxStructure {
                r: r.clone(),
                source: source.clone(),
                target: target.clone(),
                functor: functor.clone(),
                beta: beta.to_vec(),
            };
            if check_rlax(&s).is_valid() {
                out.push(s);
            }
        })?;
    }
    Ok(out)
}

/// Every enriched functor `source → target` with the given background.
pub fn enumerate_enriched_functors(
    source: &Arc<EnrichedCategory>,
    target: &Arc<EnrichedCategory>,
    background: &LaxMonoidalFunctor,
    budget: Budget,
) -> Result<Vec<EnrichedFunctor>, CanonicalError> {
    let mut meter = budget.meter();
    let (n, nt) = (source.n_obj, target.n_obj);
    let mut out = Vec::new();
    let obj_choices: Vec<Vec<Obj>> = vec![(0..nt).collect(); n];
    let mut maps = Vec::new();
    enum_components(&obj_choices, &mut Vec::new(), &mut meter, &mut |m| {
        maps.push(m.to_vec())
    })?;
    let bc = &*target.base.cat;
    for obj_map in maps {
        let choices: Vec<Vec<Mor>> = (0..n * n)
            .map(|p| {
                bc.hom(
                    background.obj(source.hom(p / n, p % n)),
                    target.hom(obj_map[p / n], obj_map[p % n]),
                )
                .to_vec()
            })
            .collect();
        enum_components(&choices, &mut Vec::new(), &mut meter, &mut |comps| {
            let f = EnrichedFunctor {
                background: background.clone(),
                source: source.clone(),
                target: target.clone(),
                obj_map: obj_map.clone(),
                components: comps.to_vec(),
            };
            if check_enriched_functor(&f).is_valid() {
                out.push(f);
            }
        })?;
    }
    Ok(out)
}

/// Every enriched transformation `f ⇒ g` with the given background.
pub fn enumerate_enriched_nats(
    f: &EnrichedFunctor,
    g: &EnrichedFunctor,
    background: &LaxMonoidalNat,
    budget: Budget,
) -> Result<Vec<EnrichedNat>, CanonicalError> {
    let mut meter = budget.meter();
    let m = &*f.target;
    let b = &*m.base;
    let choices: Vec<Vec<Mor>> = (0..f.source.n_obj)
        .map(|x| b.cat.hom(b.unit, m.hom(f.obj(x), g.obj(x))).to_vec())
        .collect();
    let mut out = Vec::new();
    enum_components(&choices, &mut Vec::new(), &mut meter, &mut |comps| {
        let t = EnrichedNat {
            background: background.clone(),
            source: f.clone(),
            target: g.clone(),
            components: comps.to_vec(),
        };
        if check_enriched_nat(&t).is_valid() {
            out.push(t);
        }
    })?;
    Ok(out)
}

/// Every ξ̂-lax transformation between two R-lax functors.
pub fn enumerate_xilax(
    s1: &RLaxStructure,
    s2: &RLaxStructure,
    xi_hat: &LaxMonoidalNat,
    budget: Budget,
) -> Result<Vec<XiLaxNat>, CanonicalError> {
    Ok(enumerate_nat_transfs(&s1.functor, &s2.functor, budget)?
        .into_iter()
        .map(|nat| XiLaxNat {
            xi_hat: xi_hat.clone(),
            source: s1.clone(),
            target: s2.clone(),
            nat,
        })
        .filter(|t| check_xilax_nat(t).is_valid())
        .collect())
}

fn same_set<T: PartialEq>(xs: &[T], ys: &[T]) -> bool {
    xs.len() == ys.len() && xs.iter().all(|x| ys.contains(x))
}

/// Checks functoriality, local bijectivity and product preservation of the canonical
/// construction on a set of modules, with identity backgrounds between modules over a common base.
pub fn verify_canonical_2functor(
    modules: &[Arc<ModuleAction>],
    budget: Budget,
) -> Result<Verification, CanonicalError> {
    let mut v = Verification::new();
    let canons = modules
        .iter()
        .map(|m| canonical_construction(m, budget))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, c) in canons.iter().enumerate() {
        let (ident, _) = c.identification()?;
        v.record(
            format!("identification[{i}]"),
            check_functor(&ident).is_valid() && ident.is_bijective(),
            "f ↦ f̲ is an isomorphism",
        );
        let id = enriched_functor_from_rlax(&RLaxStructure::identity(&c.module), c, c)?;
        v.record(
            format!("identity[{i}]"),
            id == EnrichedFunctor::identity(&c.category),
            "identity 1-cell preserved",
        );
    }
    let mut cells: Vec<Vec<Vec<RLaxStructure>>> = vec![vec![vec![]; canons.len()]; canons.len()];
    for (i, ci) in canons.iter().enumerate() {
        for (j, cj) in canons.iter().enumerate() {
            if ci.module.base != cj.module.base {
                continue;
            }
            let r = LaxMonoidalFunctor::identity(&ci.module.base);
            let rlax = enumerate_rlax(&ci.module, &cj.module, &r, budget)?;
            let images = rlax
                .iter()
                .map(|s| enriched_functor_from_rlax(s, ci, cj))
                .collect::<Result<Vec<_>, _>>()?;
            let enriched = enumerate_enriched_functors(&ci.category, &cj.category, &r, budget)?;
            let back = images
                .iter()
                .map(|f| rlax_from_enriched_functor(f, ci, cj))
                .collect::<Result<Vec<_>, _>>()?;
            v.record(
                format!("local_bijection_1cells[{i},{j}]"),
                same_set(&images, &enriched) && back == rlax,
                format!(
                    "{} R-lax functors, {} enriched functors",
                    rlax.len(),
                    enriched.len()
                ),
            );
            for s1 in rlax.iter().take(4) {
                for s2 in rlax.iter().take(4) {
                    let xi = LaxMonoidalNat::identity(&r);
                    let xs = enumerate_xilax(s1, s2, &xi, budget)?;
                    let (f1, f2) = (
                        enriched_functor_from_rlax(s1, ci, cj)?,
                        enriched_functor_from_rlax(s2, ci, cj)?,
                    );
                    let es = enumerate_enriched_nats(&f1, &f2, &xi, budget)?;
                    let imgs = xs
                        .iter()
                        .map(|t| enriched_nat_from_xilax(t, ci, cj))
                        .collect::<Result<Vec<_>, _>>()?;
                    let backs = imgs
                        .iter()
                        .map(|t| xilax_from_enriched_nat(t, ci, cj))
                        .collect::<Result<Vec<_>, _>>()?;
                    if !(same_set(&imgs, &es) && backs == xs) {
                        v.record(
                            format!("local_bijection_2cells[{i},{j}]"),
                            false,
                            format!("{} vs {}", xs.len(), es.len()),
                        );
                    }
                }
            }
            cells[i][j] = rlax;
        }
    }
    let mut composites = 0usize;
    let mut composite_ok = true;
    for i in 0..canons.len() {
        for j in 0..canons.len() {
            for k in 0..canons.len() {
                for s in cells[i][j].iter().take(6) {
                    for t in cells[j][k].iter().take(6) {
                        let lhs = enriched_functor_from_rlax(&s.then(t)?, &canons[i], &canons[k])?;
                        let rhs = enriched_functor_from_rlax(s, &canons[i], &canons[j])?
                            .then(&enriched_functor_from_rlax(t, &canons[j], &canons[k])?)?;
                        composites += 1;
                        composite_ok &= lhs == rhs;
                    }
                }
            }
        }
    }
    v.record(
        "composition",
        composite_ok,
        format!("{composites} composable pairs"),
    );
    if v.checks
        .iter()
        .all(|c| !c.name.starts_with("local_bijection_2cells"))
    {
        v.record(
            "local_bijection_2cells",
            true,
            "every sampled pair of 1-cells",
        );
    }
    for (i, ci) in canons.iter().enumerate() {
        for (j, cj) in canons.iter().enumerate().skip(i) {
            let pm = Arc::new(product_module(&ci.module, &cj.module));
            let pc = canonical_construction(&pm, budget)?;
            let prod = cartesian_product(&ci.category, &cj.category);
            let same_homs = pc.category.hom == prod.hom;
            let u1 = underlying_category(&pc.category)?;
            let u2 = underlying_category(&prod)?;
            let iso = iso_search(&u1.cat, &u2.cat, budget)?.is_some();
            v.record(
                format!("product[{i},{j}]"),
                same_homs && iso,
                "canonical construction of a product module",
            );
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_cat::FinCategory;
    use crate::enriched_monoidal::{check_enriched_monoidal, reversed, reversed_with};
    use crate::monoidal_cat::check_braided;

    fn lattice(
        n: usize,
        leq: impl Fn(usize, usize) -> bool + Copy,
        meet: impl Fn(usize, usize) -> usize,
        top: usize,
    ) -> Arc<MonoidalCategory> {
        let c = Arc::new(FinCategory::from_preorder(n, leq));
        Arc::new(MonoidalCategory::from_thin(c, meet, top).unwrap())
    }

    fn lattice2() -> Arc<MonoidalCategory> {
        lattice(2, |x, y| x <= y, |a, b| a.min(b), 1)
    }

    fn lattice4() -> Arc<MonoidalCategory> {
        lattice(4, |x, y| x & y == x, |a, b| a & b, 3)
    }

    /// Objects `Z/3`, each with automorphism group `Z/3`; `c_{a,b} = ω^{ab}`.
    fn z3_braided() -> BraidedStructure {
        let cat = Arc::new(
            FinCategory::from_fn(
                3,
                (0..9).map(|f| f / 3).collect(),
                (0..9).map(|f| f / 3).collect(),
                vec![0, 3, 6],
                |g, f| 3 * (f / 3) + (f % 3 + g % 3) % 3,
            )
            .unwrap(),
        );
        let m = Arc::new(
            MonoidalCategory {
                tensor_obj: (0..9).map(|p| (p / 3 + p % 3) % 3).collect(),
                tensor_mor: (0..81)
                    .map(|p| {
                        let (f, g) = (p / 9, p % 9);
                        3 * ((f / 3 + g / 3) % 3) + (f % 3 + g % 3) % 3
                    })
                    .collect(),
                unit: 0,
                assoc: (0..27).map(|p| 3 * ((p / 9 + p / 3 + p) % 3)).collect(),
                lunitor: (0..3).map(|x| 3 * x).collect(),
                runitor: (0..3).map(|x| 3 * x).collect(),
                cat,
            }
            .validated()
            .unwrap(),
        );
        BraidedStructure {
            braiding: (0..9)
                .map(|p| 3 * ((p / 3 + p % 3) % 3) + (p / 3) * (p % 3) % 3)
                .collect(),
            host: m,
            symmetric: false,
        }
        .validated()
        .unwrap()
    }

    #[test]
    fn lattice_self_modules_give_heyting_homs() {
        let m2 = Arc::new(ModuleAction::regular(&lattice2()));
        let c2 = canonical_construction(&m2, Budget::DEFAULT).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(c2.category.hom(x, y), if x <= y { 1 } else { y });
            }
        }
        let m4 = Arc::new(ModuleAction::regular(&lattice4()));
        let c4 = canonical_construction(&m4, Budget::DEFAULT).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(c4.category.hom(x, y), (!x | y) & 3);
            }
        }
        for c in [&c2, &c4] {
            let (f, _) = c.identification().unwrap();
            assert!(f.is_bijective());
        }
    }

    #[test]
    fn functor_correspondence_round_trips() {
        let m4 = Arc::new(ModuleAction::regular(&lattice4()));
        let c4 = canonical_construction(&m4, Budget::DEFAULT).unwrap();
        let r = LaxMonoidalFunctor::identity(&m4.base);
        for s in enumerate_rlax(&m4, &m4, &r, Budget::DEFAULT).unwrap() {
            let f = enriched_functor_from_rlax(&s, &c4, &c4).unwrap();
            assert!(check_enriched_functor(&f).is_valid());
            assert_eq!(rlax_from_enriched_functor(&f, &c4, &c4).unwrap(), s);
        }
    }

    #[test]
    fn two_functor_on_lattices() {
        let mods = vec![
            Arc::new(ModuleAction::regular(&lattice2())),
            Arc::new(ModuleAction::regular(&lattice2())),
        ];
        let v = verify_canonical_2functor(&mods, Budget::DEFAULT).unwrap();
        assert!(v.all_passed(), "{:?}", v.failures().collect::<Vec<_>>());
    }

    #[test]
    fn monoidal_round_trip_on_central_self_modules() {
        let l2 = lattice2();
        let z2 = Arc::new(MonoidalCategory::discrete_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap());
        for b in [
            BraidedStructure::thin(l2).unwrap(),
            BraidedStructure::identity(z2, true),
            z3_braided(),
        ] {
            let mm = central_self_module(&b, Budget::DEFAULT).unwrap();
            let (canon, em) = canonical_monoidal(&mm, Budget::DEFAULT).unwrap();
            assert!(check_enriched_monoidal(&em).is_valid());
            assert_eq!(extract_monoidal_module(&canon, &em).unwrap(), mm);
        }
    }

    #[test]
    fn reversed_needs_the_braiding() {
        let b = z3_braided();
        assert!(check_braided(&b).is_valid());
        let mm = central_self_module(&b, Budget::DEFAULT).unwrap();
        let (_, em) = canonical_monoidal(&mm, Budget::DEFAULT).unwrap();
        assert!(check_enriched_monoidal(&reversed(&em).unwrap()).is_valid());
        let wrong = reversed_with(&em, &em.braiding.reversed()).unwrap();
        assert!(!check_enriched_monoidal(&wrong).is_valid());
    }

    #[test]
    fn braided_canonical_on_symmetric_fixtures() {
        let z2 = Arc::new(MonoidalCategory::discrete_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap());
        for b in [
            BraidedStructure::thin(lattice2()).unwrap(),
            BraidedStructure::identity(z2, true),
        ] {
            let mm = central_self_module(&b, Budget::DEFAULT).unwrap();
            let (_, eb) = canonical_braided(&mm, &b, Budget::DEFAULT).unwrap();
            assert!(eb.symmetric);
        }
    }
}
