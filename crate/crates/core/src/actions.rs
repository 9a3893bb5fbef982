//! Left oplax module actions, module functors and transformations, R-lax
//! structures, internal-hom search, and monoidal modules.

use std::sync::Arc;

use crate::core_cat::{
    check_functor, check_nat, product_category, Budget, BudgetExceeded, CategoryError, FinCategory,
    Functor, Mor, NatTransf, Obj, ValidationReport,
};
use crate::monoidal_cat::{
    braided_tensor_lax_structure, check_braided, check_lax_monoidal_functor,
    check_lax_monoidal_nat, check_monoidal, BraidedStructure, DrinfeldCenter, LaxKind,
    LaxMonoidalFunctor, LaxMonoidalNat, MonoidalCategory, MonoidalError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Monoidal(#[from] MonoidalError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("invalid input:\n{0}")]
    InvalidInput(ValidationReport),
    #[error("no internal hom [{x}, {y}]: {counterexample}")]
    MissingInternalHom {
        x: Obj,
        y: Obj,
        counterexample: String,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub(crate) fn ensure(r: ValidationReport) -> Result<(), ActionError> {
    if r.is_valid() {
        Ok(())
    } else {
        Err(ActionError::InvalidInput(r))
    }
}

fn typed(c: &FinCategory, f: Mor, x: Obj, y: Obj) -> bool {
    f < c.n_mor() && c.dom(f) == x && c.cod(f) == y
}

/// A left oplax action `⊙ : A × L → L`.
///
/// `act_obj[a * |L| + x] = a⊙x`, `act_mor[f * |Mor L| + g] = f⊙g`,
/// `assoc[(a * |A| + b) * |L| + x] : (a⊗b)⊙x → a⊙(b⊙x)`, `unitor[x] : 𝟙⊙x → x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleAction {
    pub base: Arc<MonoidalCategory>,
    pub carrier: Arc<FinCategory>,
    pub act_obj: Vec<Obj>,
    pub act_mor: Vec<Mor>,
    pub assoc: Vec<Mor>,
    pub unitor: Vec<Mor>,
}

impl ModuleAction {
    pub fn act(&self, a: Obj, x: Obj) -> Obj {
        self.act_obj[a * self.carrier.n_obj() + x]
    }

    pub fn actm(&self, f: Mor, g: Mor) -> Mor {
        self.act_mor[f * self.carrier.n_mor() + g]
    }

    /// `f ⊙ 1_x`.
    pub fn act_r(&self, f: Mor, x: Obj) -> Mor {
        self.actm(f, self.carrier.id(x))
    }

    /// `1_a ⊙ g`.
    pub fn act_l(&self, a: Obj, g: Mor) -> Mor {
        self.actm(self.base.id(a), g)
    }

    pub fn assoc_at(&self, a: Obj, b: Obj, x: Obj) -> Mor {
        let (na, nl) = (self.base.n_obj(), self.carrier.n_obj());
        self.assoc[(a * na + b) * nl + x]
    }

    pub fn u(&self, x: Obj) -> Mor {
        self.unitor[x]
    }

    pub fn u_inv(&self, x: Obj) -> Mor {
        self.carrier.inv(self.unitor[x])
    }

    pub fn is_strongly_unital(&self) -> bool {
        self.unitor.iter().all(|&f| self.carrier.is_iso(f))
    }

    pub fn is_strongly_associative(&self) -> bool {
        self.assoc.iter().all(|&f| self.carrier.is_iso(f))
    }

    pub fn action_functor(&self) -> Functor {
        Functor {
            source: Arc::new(product_category(&self.base.cat, &self.carrier)),
            target: self.carrier.clone(),
            obj_map: self.act_obj.clone(),
            mor_map: self.act_mor.clone(),
        }
    }

    pub fn validated(self) -> Result<Self, ActionError> {
        ensure(check_module(&self))?;
        Ok(self)
    }

    /// A monoidal category acting on itself by its tensor.
    pub fn regular(m: &Arc<MonoidalCategory>) -> Self {
        ModuleAction {
            base: m.clone(),
            carrier: m.cat.clone(),
            act_obj: m.tensor_obj.clone(),
            act_mor: m.tensor_mor.clone(),
            assoc: m.assoc.clone(),
            unitor: m.lunitor.clone(),
        }
    }

    /// Pullback along an oplax (or strong) functor `L : B → A`: `b ⊙' x = L(b) ⊙ x`.
    pub fn pullback(&self, l: &LaxMonoidalFunctor) -> Result<ModuleAction, ActionError> {
        if *l.target != *self.base {
            return Err(ActionError::Precondition(
                "pullback functor does not land in the acting category".into(),
            ));
        }
        let l = match l.kind {
            LaxKind::Oplax => l.clone(),
            _ => l
                .inverted(LaxKind::Oplax)
                .ok_or_else(|| ActionError::Precondition("pullback needs oplax cells".into()))?,
        };
        let b = &l.source;
        let (nb, nl, mb, ml) = (
            b.n_obj(),
            self.carrier.n_obj(),
            b.cat.n_mor(),
            self.carrier.n_mor(),
        );
        let c = &*self.carrier;
        let mut assoc = Vec::with_capacity(nb * nb * nl);
        for p in 0..nb {
            for q in 0..nb {
                for x in 0..nl {
                    assoc.push(c.comp(
                        self.assoc_at(l.obj(p), l.obj(q), x),
                        self.act_r(l.mu(p, q), x),
                    ));
                }
            }
        }
        Ok(ModuleAction {
            base: b.clone(),
            carrier: self.carrier.clone(),
            act_obj: (0..nb * nl)
                .map(|p| self.act(l.obj(p / nl), p % nl))
                .collect(),
            act_mor: (0..mb * ml)
                .map(|p| self.actm(l.mor(p / ml), p % ml))
                .collect(),
            assoc,
            unitor: (0..nl)
                .map(|x| c.comp(self.u(x), self.act_r(l.unit_cell, x)))
                .collect(),
        })
    }
}

/// Checks the action functor, naturality of the cells, the associativity pentagon
/// and both unit triangles.
pub fn check_module(m: &ModuleAction) -> ValidationReport {
    let (a, l) = (&*m.base, &*m.carrier);
    let (na, nl) = (a.n_obj(), l.n_obj());
    let mut r = ValidationReport::new();
    if m.act_obj.len() != na * nl
        || m.act_mor.len() != a.cat.n_mor() * l.n_mor()
        || m.assoc.len() != na * na * nl
        || m.unitor.len() != nl
    {
        r.push("module.typing", "table sizes do not match");
        return r;
    }
    if m.act_obj.iter().any(|&x| x >= nl) || m.act_mor.iter().any(|&f| f >= l.n_mor()) {
        r.push("module.typing", "action table out of range");
        return r;
    }
    for v in check_functor(&m.action_functor()).violations {
        r.push(&v.axiom.replacen("functor", "module.action", 1), v.detail);
    }
    for p in 0..na {
        for q in 0..na {
            for x in 0..nl {
                let f = m.assoc_at(p, q, x);
                if !typed(l, f, m.act(a.t(p, q), x), m.act(p, m.act(q, x))) {
                    r.push("module.associator.typing", format!("({p},{q},{x})"));
                }
            }
        }
    }
    for x in 0..nl {
        if !typed(l, m.u(x), m.act(a.unit, x), x) {
            r.push("module.unitor.typing", format!("object {x}"));
        }
    }
    if !r.is_valid() {
        return r;
    }
    let ac = &*a.cat;
    for g in 0..l.n_mor() {
        let (x, y) = (l.dom(g), l.cod(g));
        r.expect_eq(
            "module.unitor.naturality",
            l.compose(m.u(y), m.act_l(a.unit, g)),
            l.compose(g, m.u(x)),
            || format!("morphism {g}"),
        );
        for f in 0..ac.n_mor() {
            for h in 0..ac.n_mor() {
                let lhs = l.compose(m.assoc_at(ac.cod(f), ac.cod(h), y), m.actm(a.tm(f, h), g));
                let rhs = l.compose(m.actm(f, m.actm(h, g)), m.assoc_at(ac.dom(f), ac.dom(h), x));
                r.expect_eq("module.associator.naturality", lhs, rhs, || {
                    format!("({f},{h},{g})")
                });
            }
        }
    }
    for p in 0..na {
        for q in 0..na {
            for x in 0..nl {
                for s in 0..na {
                    let lhs = l.seq(&[m.assoc_at(a.t(p, q), s, x), m.assoc_at(p, q, m.act(s, x))]);
                    let rhs = l.seq(&[
                        m.act_r(a.alpha(p, q, s), x),
                        m.assoc_at(p, a.t(q, s), x),
                        m.act_l(p, m.assoc_at(q, s, x)),
                    ]);
                    r.expect_eq("module.pentagon", lhs, rhs, || format!("({p},{q},{s},{x})"));
                }
                let lhs = l.seq(&[m.assoc_at(a.unit, q, x), m.u(m.act(q, x))]);
                r.expect_eq(
                    "module.left_unit",
                    lhs,
                    Some(m.act_r(a.lambda(q), x)),
                    || format!("({q},{x})"),
                );
                let lhs = l.seq(&[m.assoc_at(q, a.unit, x), m.act_l(q, m.u(x))]);
                r.expect_eq("module.right_unit", lhs, Some(m.act_r(a.rho(q), x)), || {
                    format!("({q},{x})")
                });
            }
        }
    }
    r
}

/// Cells `β_{a,x} : R(a)⊙F(x) → F(a⊙x)` for a lax functor `R` between the acting
/// categories and a functor `F` between carriers; `beta[a * |L| + x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RLaxStructure {
    pub r: LaxMonoidalFunctor,
    pub source: Arc<ModuleAction>,
    pub target: Arc<ModuleAction>,
    pub functor: Functor,
    pub beta: Vec<Mor>,
}

impl RLaxStructure {
    pub fn beta_at(&self, a: Obj, x: Obj) -> Mor {
        self.beta[a * self.source.carrier.n_obj() + x]
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.functor.obj(x)
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.functor.mor(f)
    }

    /// Identity functor on a module with identity cells.
    pub fn identity(m: &Arc<ModuleAction>) -> Self {
        let nl = m.carrier.n_obj();
        RLaxStructure {
            r: LaxMonoidalFunctor::identity(&m.base),
            source: m.clone(),
            target: m.clone(),
            functor: Functor::identity(&m.carrier),
            beta: (0..m.base.n_obj() * nl)
                .map(|p| m.carrier.id(m.act(p / nl, p % nl)))
                .collect(),
        }
    }

    pub fn validated(self) -> Result<Self, ActionError> {
        ensure(check_rlax(&self))?;
        Ok(self)
    }

    /// Composite `outer ∘ self`: `β''_{a,x} = G(β_{a,x}) ∘ β'_{Ra,Fx} ∘ (R'^…)`, with
    /// `R'' = R'∘R` and `β'' = G(β) ∘ β'_{R a, F x}`.
    pub fn then(&self, outer: &RLaxStructure) -> Result<RLaxStructure, ActionError> {
        let r = self.r.then(&outer.r)?;
        let functor = outer.functor.after(&self.functor)?;
        let nl = self.source.carrier.n_obj();
        let c = &*outer.target.carrier;
        let beta = (0..self.source.base.n_obj() * nl)
            .map(|p| {
                let (a, x) = (p / nl, p % nl);
                c.comp(
                    outer.mor(self.beta_at(a, x)),
                    outer.beta_at(self.r.obj(a), self.obj(x)),
                )
            })
            .collect();
        Ok(RLaxStructure {
            r,
            source: self.source.clone(),
            target: outer.target.clone(),
            functor,
            beta,
        })
    }
}

/// Checks naturality of `β` and the associativity and unit diagrams of an R-lax structure.
pub fn check_rlax(s: &RLaxStructure) -> ValidationReport {
    let (l, m) = (&*s.source, &*s.target);
    let (a, b) = (&*l.base, &*m.base);
    let mut r = ValidationReport::new();
    if *s.r.source != *a
        || *s.r.target != *b
        || s.functor.source != l.carrier
        || s.functor.target != m.carrier
    {
        r.push("rlax.typing", "functors do not match the modules");
        return r;
    }
    r.absorb("rlax.background", check_lax_monoidal_functor(&s.r));
    r.absorb("rlax", check_functor(&s.functor));
    let (na, nl) = (a.n_obj(), l.carrier.n_obj());
    if s.beta.len() != na * nl {
        r.push("rlax.typing", "β table has the wrong size");
    }
    if !r.is_valid() {
        return r;
    }
    let c = &*m.carrier;
    let rf = &s.r;
    if rf.kind == LaxKind::Oplax {
        r.push("rlax.typing", "background must be lax or strong");
        return r;
    }
    for p in 0..na {
        for x in 0..nl {
            if !typed(
                c,
                s.beta_at(p, x),
                m.act(rf.obj(p), s.obj(x)),
                s.obj(l.act(p, x)),
            ) {
                r.push("rlax.typing", format!("β({p},{x}) = {}", s.beta_at(p, x)));
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    let (ac, lc) = (&*a.cat, &*l.carrier);
    for f in 0..ac.n_mor() {
        for g in 0..lc.n_mor() {
            let lhs = c.compose(s.beta_at(ac.cod(f), lc.cod(g)), m.actm(rf.mor(f), s.mor(g)));
            let rhs = c.compose(s.mor(l.actm(f, g)), s.beta_at(ac.dom(f), lc.dom(g)));
            r.expect_eq("rlax.naturality", lhs, rhs, || format!("({f},{g})"));
        }
    }
    for x in 0..nl {
        let fx = s.obj(x);
        for p in 0..na {
            for q in 0..na {
                let lhs = c.seq(&[
                    m.act_r(rf.mu(p, q), fx),
                    s.beta_at(a.t(p, q), x),
                    s.mor(l.assoc_at(p, q, x)),
                ]);
                let rhs = c.seq(&[
                    m.assoc_at(rf.obj(p), rf.obj(q), fx),
                    m.act_l(rf.obj(p), s.beta_at(q, x)),
                    s.beta_at(p, l.act(q, x)),
                ]);
                r.expect_eq("rlax.associativity", lhs, rhs, || format!("({p},{q},{x})"));
            }
        }
        let lhs = c.seq(&[
            m.act_r(rf.unit_cell, fx),
            s.beta_at(a.unit, x),
            s.mor(l.u(x)),
        ]);
        r.expect_eq("rlax.unit", lhs, Some(m.u(fx)), || format!("object {x}"));
    }
    r
}

fn relabel(r: ValidationReport, from: &str, to: &str) -> ValidationReport {
    let mut out = ValidationReport::new();
    for v in r.violations {
        out.push(&v.axiom.replacen(from, to, 1), v.detail);
    }
    out
}

/// A lax module functor is an R-lax structure over the identity of the acting category.
pub fn check_module_functor(s: &RLaxStructure) -> ValidationReport {
    let mut r = ValidationReport::new();
    if s.r != LaxMonoidalFunctor::identity(&s.source.base) || *s.source.base != *s.target.base {
        r.push("module_functor.typing", "background must be the identity");
        return r;
    }
    r.extend(relabel(check_rlax(s), "rlax", "module_functor"));
    r
}

/// A natural transformation between R-lax functors, compatible with a monoidal
/// transformation `xi_hat` between their backgrounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiLaxNat {
    pub xi_hat: LaxMonoidalNat,
    pub source: RLaxStructure,
    pub target: RLaxStructure,
    pub nat: NatTransf,
}

impl XiLaxNat {
    pub fn identity(s: &RLaxStructure) -> Self {
        XiLaxNat {
            xi_hat: LaxMonoidalNat::identity(&s.r),
            source: s.clone(),
            target: s.clone(),
            nat: NatTransf::identity(&s.functor),
        }
    }
}

/// Checks `ξ_{a⊙x} ∘ β¹_{a,x} = β²_{a,x} ∘ (ξ̂_a ⊙ ξ_x)`.
pub fn check_xilax_nat(t: &XiLaxNat) -> ValidationReport {
    let mut r = ValidationReport::new();
    let (s1, s2) = (&t.source, &t.target);
    if s1.source != s2.source
        || s1.target != s2.target
        || t.xi_hat.source != s1.r
        || t.xi_hat.target != s2.r
        || t.nat.source != s1.functor
        || t.nat.target != s2.functor
    {
        r.push("xilax_nat.typing", "endpoints do not match");
        return r;
    }
    r.absorb("xilax_nat.background", check_lax_monoidal_nat(&t.xi_hat));
    r.absorb("xilax_nat", check_nat(&t.nat));
    if !r.is_valid() {
        return r;
    }
    let (l, m) = (&*s1.source, &*s1.target);
    let c = &*m.carrier;
    for p in 0..l.base.n_obj() {
        for x in 0..l.carrier.n_obj() {
            let lhs = c.compose(t.nat.component(l.act(p, x)), s1.beta_at(p, x));
            let rhs = c.compose(
                s2.beta_at(p, x),
                m.actm(t.xi_hat.component(p), t.nat.component(x)),
            );
            r.expect_eq("xilax_nat.square", lhs, rhs, || format!("({p},{x})"));
        }
    }
    r
}

/// A module natural transformation is a ξ̂-lax transformation with `ξ̂` the identity.
pub fn check_module_nat(t: &XiLaxNat) -> ValidationReport {
    let mut r = ValidationReport::new();
    if t.xi_hat != LaxMonoidalNat::identity(&LaxMonoidalFunctor::identity(&t.source.source.base)) {
        r.push(
            "module_nat.typing",
            "background transformation must be the identity",
        );
        return r;
    }
    r.extend(relabel(check_xilax_nat(t), "xilax_nat", "module_nat"));
    r
}

/// An adjunction `L ⊣ R` with `R : A → B` lax monoidal; `L` carries the induced oplax cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjunction {
    pub left: LaxMonoidalFunctor,
    pub right: LaxMonoidalFunctor,
    /// `η_b : b → RL(b)`.
    pub unit: Vec<Mor>,
    /// `ε_a : LR(a) → a`.
    pub counit: Vec<Mor>,
}

impl Adjunction {
    /// Builds the oplax cells of `left` from the lax cells of `right` and checks the triangle identities.
    pub fn from_right(
        right: LaxMonoidalFunctor,
        left: Functor,
        unit: Vec<Mor>,
        counit: Vec<Mor>,
    ) -> Result<Self, ActionError> {
        let (a, b) = (right.source.clone(), right.target.clone());
        let mut r = check_lax_monoidal_functor(&right);
        r.absorb("adjunction.left", check_functor(&left));
        if left.source != b.cat
            || left.target != a.cat
            || unit.len() != b.n_obj()
            || counit.len() != a.n_obj()
        {
            r.push(
                "adjunction.typing",
                "left adjoint or unit/counit tables do not match",
            );
        }
        ensure(r)?;
        let (ac, bc) = (&*a.cat, &*b.cat);
        let mut r = ValidationReport::new();
        for (y, &eta) in unit.iter().enumerate() {
            if !typed(bc, eta, y, right.obj(left.obj(y))) {
                r.push("adjunction.typing", format!("η({y})"));
            }
        }
        for (x, &eps) in counit.iter().enumerate() {
            if !typed(ac, eps, left.obj(right.obj(x)), x) {
                r.push("adjunction.typing", format!("ε({x})"));
            }
        }
        ensure(r)?;
        let mut r = ValidationReport::new();
        r.absorb(
            "adjunction.unit",
            check_nat(&NatTransf {
                source: Functor::identity(&b.cat),
                target: right.functor.after(&left)?,
                components: unit.clone(),
            }),
        );
        r.absorb(
            "adjunction.counit",
            check_nat(&NatTransf {
                source: left.after(&right.functor)?,
                target: Functor::identity(&a.cat),
                components: counit.clone(),
            }),
        );
        for y in 0..b.n_obj() {
            r.expect_eq(
                "adjunction.triangle",
                ac.compose(counit[left.obj(y)], left.mor(unit[y])),
                Some(ac.id(left.obj(y))),
                || format!("left at {y}"),
            );
        }
        for x in 0..a.n_obj() {
            r.expect_eq(
                "adjunction.triangle",
                bc.compose(right.mor(counit[x]), unit[right.obj(x)]),
                Some(bc.id(right.obj(x))),
                || format!("right at {x}"),
            );
        }
        ensure(r)?;
        let nb = b.n_obj();
        let unit_cell = ac.comp(counit[a.unit], left.mor(right.unit_cell));
        let mult = (0..nb * nb)
            .map(|p| {
                let (y1, y2) = (p / nb, p % nb);
                let (l1, l2) = (left.obj(y1), left.obj(y2));
                a.seq(&[
                    left.mor(b.tm(unit[y1], unit[y2])),
                    left.mor(right.mu(l1, l2)),
                    counit[a.t(l1, l2)],
                ])
            })
            .collect();
        let left = LaxMonoidalFunctor {
            source: b,
            target: a,
            functor: left,
            unit_cell,
            mult,
            kind: LaxKind::Oplax,
        };
        let lr = check_lax_monoidal_functor(&left);
        ensure(lr)?;
        Ok(Adjunction {
            left,
            right,
            unit,
            counit,
        })
    }

    /// R-lax structure to L-oplax structure: `α_{b,x} = β_{Lb,x} ∘ (η_b ⊙ 1)`.
    /// The result is a lax module functor out of the pulled-back module.
    pub fn rlax_to_loplax(&self, s: &RLaxStructure) -> Result<RLaxStructure, ActionError> {
        if s.r != self.right {
            return Err(ActionError::Precondition(
                "structure is not over the right adjoint".into(),
            ));
        }
        let pulled = Arc::new(s.source.pullback(&self.left)?);
        let m = &s.target;
        let nl = s.source.carrier.n_obj();
        let beta = (0..self.left.source.n_obj() * nl)
            .map(|p| {
                let (y, x) = (p / nl, p % nl);
                m.carrier.comp(
                    s.beta_at(self.left.obj(y), x),
                    m.act_r(self.unit[y], s.obj(x)),
                )
            })
            .collect();
        Ok(RLaxStructure {
            r: LaxMonoidalFunctor::identity(&m.base),
            source: pulled,
            target: m.clone(),
            functor: s.functor.clone(),
            beta,
        })
    }

    /// L-oplax structure to R-lax structure: `β_{a,x} = F(ε_a ⊙ 1) ∘ α_{Ra,x}`.
    pub fn loplax_to_rlax(
        &self,
        alpha: &RLaxStructure,
        original: &Arc<ModuleAction>,
    ) -> Result<RLaxStructure, ActionError> {
        let nl = original.carrier.n_obj();
        let c = &*alpha.target.carrier;
        let beta = (0..original.base.n_obj() * nl)
            .map(|p| {
                let (a, x) = (p / nl, p % nl);
                c.comp(
                    alpha.mor(original.act_r(self.counit[a], x)),
                    alpha.beta_at(self.right.obj(a), x),
                )
            })
            .collect();
        Ok(RLaxStructure {
            r: self.right.clone(),
            source: original.clone(),
            target: alpha.target.clone(),
            functor: alpha.functor.clone(),
            beta,
        })
    }
}

/// The internal hom `[x, y]` with its evaluation and every mediating morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalHom {
    pub x: Obj,
    pub y: Obj,
    pub hom: Obj,
    /// `ev : [x,y] ⊙ x → y`.
    pub ev: Mor,
    /// `mediators[a]` lists `(f, g)` sorted by `f`: `f : a⊙x → y` and the unique `g : a → [x,y]`
    /// with `ev ∘ (g ⊙ 1_x) = f`.
    pub mediators: Vec<Vec<(Mor, Mor)>>,
}

impl InternalHom {
    pub fn mediate(&self, a: Obj, f: Mor) -> Option<Mor> {
        let row = self.mediators.get(a)?;
        row.binary_search_by_key(&f, |p| p.0).ok().map(|i| row[i].1)
    }
}

/// Why a candidate pair failed to be terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCounterexample {
    /// First candidate `(t, e)` tried, if any existed.
    pub candidate: Option<(Obj, Mor)>,
    /// Pair `(a, f)` with no or several mediators into the candidate.
    pub probe: Option<(Obj, Mor)>,
    pub mediator_count: usize,
}

impl std::fmt::Display for HomCounterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.candidate, self.probe) {
            (None, _) => write!(f, "no pair (a, a⊙x → y) exists"),
            (Some((t, e)), Some((a, g))) => {
                write!(
                    f,
                    "candidate ({t}, {e}) admits {} mediators for ({a}, {g})",
                    self.mediator_count
                )
            }
            (Some((t, e)), None) => write!(f, "candidate ({t}, {e}) rejected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomSearch {
    Found(InternalHom),
    Absent(HomCounterexample),
}

/// Order in which terminal candidates are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    Forward,
    Reverse,
}

/// Exhaustive search for the terminal pair `([x,y], ev)` in index order.
pub fn internal_hom(
    m: &ModuleAction,
    x: Obj,
    y: Obj,
    budget: Budget,
) -> Result<HomSearch, BudgetExceeded> {
    internal_hom_ordered(m, x, y, budget, SearchOrder::Forward)
}

pub fn internal_hom_ordered(
    m: &ModuleAction,
    x: Obj,
    y: Obj,
    budget: Budget,
    order: SearchOrder,
) -> Result<HomSearch, BudgetExceeded> {
    let (a, l) = (&*m.base, &*m.carrier);
    let mut meter = budget.meter();
    let mut candidates: Vec<(Obj, Mor)> = Vec::new();
    for t in 0..a.n_obj() {
        for &e in l.hom(m.act(t, x), y) {
            candidates.push((t, e));
        }
    }
    if order == SearchOrder::Reverse {
        candidates.reverse();
    }
    let mut first_failure: Option<HomCounterexample> = None;
    'cand: for &(t, e) in &candidates {
        let mut mediators = Vec::with_capacity(a.n_obj());
        for s in 0..a.n_obj() {
            let mut row = Vec::new();
            for &f in l.hom(m.act(s, x), y) {
                meter.tick()?;
                let gs: Vec<Mor> = a
                    .cat
                    .hom(s, t)
                    .iter()
                    .copied()
                    .filter(|&g| l.compose(e, m.act_r(g, x)) == Some(f))
                    .collect();
                if gs.len() != 1 {
                    if first_failure.is_none() {
                        first_failure = Some(HomCounterexample {
                            candidate: Some((t, e)),
                            probe: Some((s, f)),
                            mediator_count: gs.len(),
                        });
                    }
                    continue 'cand;
                }
                row.push((f, gs[0]));
            }
            row.sort_unstable();
            mediators.push(row);
        }
        return Ok(HomSearch::Found(InternalHom {
            x,
            y,
            hom: t,
            ev: e,
            mediators,
        }));
    }
    Ok(HomSearch::Absent(first_failure.unwrap_or(
        HomCounterexample {
            candidate: None,
            probe: None,
            mediator_count: 0,
        },
    )))
}

/// Internal homs for every pair of carrier objects; `homs[x * n + y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalHomTable {
    pub n: usize,
    pub homs: Vec<InternalHom>,
}

impl InternalHomTable {
    pub fn get(&self, x: Obj, y: Obj) -> &InternalHom {
        &self.homs[x * self.n + y]
    }

    pub fn hom(&self, x: Obj, y: Obj) -> Obj {
        self.get(x, y).hom
    }

    pub fn ev(&self, x: Obj, y: Obj) -> Mor {
        self.get(x, y).ev
    }

    /// `coev_{x,a} : a → [x, a⊙x]`, the mediator of the identity.
    pub fn coev(&self, m: &ModuleAction, x: Obj, a: Obj) -> Mor {
        let ax = m.act(a, x);
        self.get(x, ax)
            .mediate(a, m.carrier.id(ax))
            .expect("identity has a mediator")
    }
}

/// Computes every internal hom, failing on the first missing pair.
pub fn internal_homs(m: &ModuleAction, budget: Budget) -> Result<InternalHomTable, ActionError> {
    let n = m.carrier.n_obj();
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            match internal_hom(m, x, y, budget)? {
                HomSearch::Found(h) => homs.push(h),
                HomSearch::Absent(c) => {
                    return Err(ActionError::MissingInternalHom {
                        x,
                        y,
                        counterexample: c.to_string(),
                    })
                }
            }
        }
    }
    Ok(InternalHomTable { n, homs })
}

/// A module whose carrier is monoidal, acting by an oplax monoidal functor.
///
/// `interchange[((a * |A| + b) * |L| + x) * |L| + y] : (a⊗b)⊙(x⊗y) → (a⊙x)⊗(b⊙y)`,
/// `unit_cell : 𝟙⊙𝟙 → 𝟙`. `base` is the braided category the module is over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalModule {
    pub module: Arc<ModuleAction>,
    pub base: BraidedStructure,
    pub carrier: Arc<MonoidalCategory>,
    pub interchange: Vec<Mor>,
    pub unit_cell: Mor,
}

impl MonoidalModule {
    pub fn chi(&self, a: Obj, b: Obj, x: Obj, y: Obj) -> Mor {
        let (na, nl) = (self.base.host.n_obj(), self.carrier.n_obj());
        self.interchange[((a * na + b) * nl + x) * nl + y]
    }

    pub fn validated(self) -> Result<Self, ActionError> {
        ensure(check_monoidal_module(&self))?;
        Ok(self)
    }

    /// The module induced by a strong braided functor `phi : base → Z1(L)`:
    /// `a ⊙ x = I(φa) ⊗ x`, with interchange routed through the half-braiding of `φ(b)`.
    pub fn from_central(
        base: &BraidedStructure,
        carrier: &Arc<MonoidalCategory>,
        center: &DrinfeldCenter,
        phi: &LaxMonoidalFunctor,
    ) -> Result<Self, ActionError> {
        if *phi.source != *base.host
            || *phi.target != **center.monoidal()
            || *center.forgetful.target != **carrier
        {
            return Err(ActionError::Precondition(
                "central functor endpoints do not match".into(),
            ));
        }
        if phi.kind != LaxKind::Strong {
            return Err(ActionError::Precondition(
                "central functor must be strong".into(),
            ));
        }
        let a = &base.host;
        let l = &**carrier;
        let lc = &*l.cat;
        let (na, nl, ma, ml) = (a.n_obj(), l.n_obj(), a.cat.n_mor(), lc.n_mor());
        let p = |x: Obj| center.objects[phi.obj(x)].carrier;
        let pm = |f: Mor| center.morphisms[phi.mor(f)].2;
        // δ_{a,b} : p(a⊗b) → p(a)⊗p(b) and ε⁻¹ : p(𝟙) → 𝟙.
        let delta = |x: Obj, y: Obj| lc.inv(center.morphisms[phi.mu(x, y)].2);
        let eps_inv = lc.inv(center.morphisms[phi.unit_cell].2);
        let mut assoc = Vec::with_capacity(na * na * nl);
        for x in 0..na {
            for y in 0..na {
                for z in 0..nl {
                    assoc.push(l.seq(&[l.tr(delta(x, y), z), l.alpha(p(x), p(y), z)]));
                }
            }
        }
        let module = ModuleAction {
            base: a.clone(),
            carrier: l.cat.clone(),
            act_obj: (0..na * nl).map(|q| l.t(p(q / nl), q % nl)).collect(),
            act_mor: (0..ma * ml).map(|q| l.tm(pm(q / ml), q % ml)).collect(),
            assoc,
            unitor: (0..nl)
                .map(|z| l.seq(&[l.tr(eps_inv, z), l.lambda(z)]))
                .collect(),
        };
        let mut interchange = Vec::with_capacity(na * na * nl * nl);
        for s in 0..na {
            for t in 0..na {
                for x in 0..nl {
                    for y in 0..nl {
                        let (ps, pt) = (p(s), p(t));
                        let gamma_inv = lc.inv(center.gamma(phi.obj(t), x));
                        interchange.push(l.seq(&[
                            l.tr(delta(s, t), l.t(x, y)),
                            l.alpha(ps, pt, l.t(x, y)),
                            l.tl(ps, l.alpha_inv(pt, x, y)),
                            l.alpha_inv(ps, l.t(pt, x), y),
                            l.tr(l.tl(ps, gamma_inv), y),
                            l.tr(l.alpha_inv(ps, x, pt), y),
                            l.alpha(l.t(ps, x), pt, y),
                        ]));
                    }
                }
            }
        }
        let unit_cell = l.seq(&[l.tr(eps_inv, l.unit), l.lambda(l.unit)]);
        MonoidalModule {
            module: Arc::new(module),
            base: base.clone(),
            carrier: carrier.clone(),
            interchange,
            unit_cell,
        }
        .validated()
    }
}

/// Checks the module, the oplax monoidal structure of the action, and the
/// associator and unitor as oplax monoidal transformations.
pub fn check_monoidal_module(mm: &MonoidalModule) -> ValidationReport {
    let m = &*mm.module;
    let (a, l) = (&*mm.base.host, &*mm.carrier);
    let c = &*l.cat;
    let mut r = ValidationReport::new();
    if *m.base != *a || m.carrier != l.cat {
        r.push(
            "monoidal_module.typing",
            "module does not match the base or carrier",
        );
        return r;
    }
    r.absorb("monoidal_module", check_module(m));
    r.absorb("monoidal_module.carrier", check_monoidal(l));
    r.absorb("monoidal_module.base", check_braided(&mm.base));
    let (na, nl) = (a.n_obj(), l.n_obj());
    if mm.interchange.len() != na * na * nl * nl {
        r.push(
            "monoidal_module.typing",
            "interchange table has the wrong size",
        );
    }
    if !r.is_valid() {
        return r;
    }
    for s in 0..na {
        for t in 0..na {
            for x in 0..nl {
                for y in 0..nl {
                    if !typed(
                        c,
                        mm.chi(s, t, x, y),
                        m.act(a.t(s, t), l.t(x, y)),
                        l.t(m.act(s, x), m.act(t, y)),
                    ) {
                        r.push(
                            "monoidal_module.interchange.typing",
                            format!("({s},{t},{x},{y})"),
                        );
                    }
                }
            }
        }
    }
    if !typed(c, mm.unit_cell, m.act(a.unit, l.unit), l.unit) {
        r.push("monoidal_module.unit.typing", "unit cell");
    }
    if !r.is_valid() {
        return r;
    }
    let ac = &*a.cat;
    for f in 0..ac.n_mor() {
        for g in 0..ac.n_mor() {
            for h in 0..c.n_mor() {
                for k in 0..c.n_mor() {
                    let lhs = c.compose(
                        mm.chi(ac.cod(f), ac.cod(g), c.cod(h), c.cod(k)),
                        m.actm(a.tm(f, g), l.tm(h, k)),
                    );
                    let rhs = c.compose(
                        l.tm(m.actm(f, h), m.actm(g, k)),
                        mm.chi(ac.dom(f), ac.dom(g), c.dom(h), c.dom(k)),
                    );
                    r.expect_eq("monoidal_module.interchange.naturality", lhs, rhs, || {
                        format!("({f},{g},{h},{k})")
                    });
                }
            }
        }
    }
    let (ua, ul) = (a.unit, l.unit);
    for p in 0..na {
        for q in 0..na {
            for x in 0..nl {
                for y in 0..nl {
                    for s in 0..na {
                        for z in 0..nl {
                            let lhs = c.seq(&[
                                mm.chi(a.t(p, q), s, l.t(x, y), z),
                                l.tr(mm.chi(p, q, x, y), m.act(s, z)),
                                l.alpha(m.act(p, x), m.act(q, y), m.act(s, z)),
                            ]);
                            let rhs = c.seq(&[
                                m.actm(a.alpha(p, q, s), l.alpha(x, y, z)),
                                mm.chi(p, a.t(q, s), x, l.t(y, z)),
                                l.tl(m.act(p, x), mm.chi(q, s, y, z)),
                            ]);
                            r.expect_eq("monoidal_module.associativity", lhs, rhs, || {
                                format!("({p},{q},{s};{x},{y},{z})")
                            });
                        }
                    }
                }
                if q == 0 {
                    let lhs = c.seq(&[
                        mm.chi(ua, p, ul, x),
                        l.tr(mm.unit_cell, m.act(p, x)),
                        l.lambda(m.act(p, x)),
                    ]);
                    r.expect_eq(
                        "monoidal_module.left_unit",
                        lhs,
                        Some(m.actm(a.lambda(p), l.lambda(x))),
                        || format!("({p},{x})"),
                    );
                    let lhs = c.seq(&[
                        mm.chi(p, ua, x, ul),
                        l.tl(m.act(p, x), mm.unit_cell),
                        l.rho(m.act(p, x)),
                    ]);
                    r.expect_eq(
                        "monoidal_module.right_unit",
                        lhs,
                        Some(m.actm(a.rho(p), l.rho(x))),
                        || format!("({p},{x})"),
                    );
                }
            }
        }
    }
    let tensor_oplax = braided_tensor_lax_structure(&mm.base);
    let na2 = na;
    for a1 in 0..na {
        for a2 in 0..na {
            for b1 in 0..na {
                for b2 in 0..na {
                    let shuffle = a.cat.inv(tensor_oplax.mu(a1 * na2 + b1, a2 * na2 + b2));
                    for x in 0..nl {
                        for y in 0..nl {
                            let lhs = c.seq(&[
                                m.act_r(shuffle, l.t(x, y)),
                                mm.chi(a.t(a1, b1), a.t(a2, b2), x, y),
                                l.tm(m.assoc_at(a1, b1, x), m.assoc_at(a2, b2, y)),
                            ]);
                            let rhs = c.seq(&[
                                m.assoc_at(a.t(a1, a2), a.t(b1, b2), l.t(x, y)),
                                m.act_l(a.t(a1, a2), mm.chi(b1, b2, x, y)),
                                mm.chi(a1, a2, m.act(b1, x), m.act(b2, y)),
                            ]);
                            r.expect_eq("monoidal_module.associator", lhs, rhs, || {
                                format!("({a1},{a2},{b1},{b2};{x},{y})")
                            });
                        }
                    }
                }
            }
        }
    }
    for x in 0..nl {
        for y in 0..nl {
            let lhs = c.seq(&[
                m.act_r(a.cat.inv(a.lambda(ua)), l.t(x, y)),
                mm.chi(ua, ua, x, y),
                l.tm(m.u(x), m.u(y)),
            ]);
            r.expect_eq("monoidal_module.unitor", lhs, Some(m.u(l.t(x, y))), || {
                format!("({x},{y})")
            });
        }
    }
    let lhs = c.seq(&[
        m.assoc_at(ua, ua, ul),
        m.act_l(ua, mm.unit_cell),
        mm.unit_cell,
    ]);
    let rhs = c.seq(&[m.act_r(a.lambda(ua), ul), mm.unit_cell]);
    r.expect_eq("monoidal_module.unit_associator", lhs, rhs, || {
        "unit".into()
    });
    r.expect_eq(
        "monoidal_module.unit_unitor",
        Some(m.u(ul)),
        Some(mm.unit_cell),
        || "unit".into(),
    );
    r
}

/// An R-lax structure between monoidal modules whose functor is strong monoidal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalRLax {
    pub rlax: RLaxStructure,
    pub source: Arc<MonoidalModule>,
    pub target: Arc<MonoidalModule>,
    /// The functor between carriers with its strong monoidal cells.
    pub monoidal: LaxMonoidalFunctor,
}

/// Checks a monoidal R-lax structure: the R-lax diagrams, braidedness and strength of
/// `R`, strength of `F`, and the two oplax-monoidality diagrams of `β`.
pub fn check_monoidal_rlax(s: &MonoidalRLax) -> ValidationReport {
    let mut r = ValidationReport::new();
    let (sm, tm) = (&*s.source, &*s.target);
    if s.rlax.source != sm.module
        || s.rlax.target != tm.module
        || s.monoidal.functor != s.rlax.functor
        || *s.monoidal.source != *sm.carrier
        || *s.monoidal.target != *tm.carrier
    {
        r.push(
            "monoidal_rlax.typing",
            "structure does not match its modules",
        );
        return r;
    }
    r.absorb("monoidal_rlax", check_rlax(&s.rlax));
    r.absorb(
        "monoidal_rlax.functor",
        check_lax_monoidal_functor(&s.monoidal),
    );
    if s.monoidal.kind != LaxKind::Strong || s.rlax.r.kind != LaxKind::Strong {
        r.push(
            "monoidal_rlax.strong",
            "functor and background must be strong",
        );
    }
    r.absorb(
        "monoidal_rlax",
        crate::monoidal_cat::check_braided_functor(&s.rlax.r, &sm.base, &tm.base),
    );
    if !r.is_valid() {
        return r;
    }
    let (a, l, m) = (&*sm.base.host, &*sm.carrier, &*tm.carrier);
    let c = &*m.cat;
    let (rf, f) = (&s.rlax.r, &s.monoidal);
    let (na, nl) = (a.n_obj(), l.n_obj());
    let b = &*tm.base.host;
    let finv = |g: Mor| c.inv(g);
    for p in 0..na {
        for q in 0..na {
            for x in 0..nl {
                for y in 0..nl {
                    let lhs = c.seq(&[
                        s.rlax.beta_at(a.t(p, q), l.t(x, y)),
                        f.mor(sm.chi(p, q, x, y)),
                        finv(f.mu(sm.module.act(p, x), sm.module.act(q, y))),
                    ]);
                    let rhs = c.seq(&[
                        tm.module.actm(b.cat.inv(rf.mu(p, q)), finv(f.mu(x, y))),
                        tm.chi(rf.obj(p), rf.obj(q), f.obj(x), f.obj(y)),
                        m.tm(s.rlax.beta_at(p, x), s.rlax.beta_at(q, y)),
                    ]);
                    r.expect_eq("monoidal_rlax.interchange", lhs, rhs, || {
                        format!("({p},{q},{x},{y})")
                    });
                }
            }
        }
    }
    let lhs = c.seq(&[
        s.rlax.beta_at(a.unit, l.unit),
        f.mor(sm.unit_cell),
        finv(f.unit_cell),
    ]);
    let rhs = c.seq(&[
        tm.module.actm(b.cat.inv(rf.unit_cell), finv(f.unit_cell)),
        tm.unit_cell,
    ]);
    r.expect_eq("monoidal_rlax.unit", lhs, rhs, || "unit".into());
    r
}

/// `θ_a = F(ρ) ∘ β_{a,𝟙} ∘ (1 ⊗ F⁰) ∘ ρ⁻¹` for modules acting by `a ⊙ x = p(a) ⊗ x`,
/// where `p_source(a)` and `p_target(b)` name the acting objects in the carriers.
pub fn extract_theta(s: &MonoidalRLax, p_source: &[Obj], p_target: &[Obj]) -> Vec<Option<Mor>> {
    let (l, m) = (&*s.source.carrier, &*s.target.carrier);
    let c = &*m.cat;
    let f = &s.monoidal;
    (0..s.source.base.host.n_obj())
        .map(|a| {
            let pt = p_target[s.rlax.r.obj(a)];
            c.seq(&[
                c.inv(m.rho(pt)),
                m.tl(pt, f.unit_cell),
                s.rlax.beta_at(a, l.unit),
                f.mor(l.rho(p_source[a])),
            ])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoidal_cat::drinfeld_center_z1;

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

    // Boolean lattice {0, a, b, 1} as bitmasks 0b00, 0b01, 0b10, 0b11.
    fn lattice4() -> Arc<MonoidalCategory> {
        lattice(4, |x, y| x & y == x, |a, b| a & b, 3)
    }

    #[test]
    fn regular_modules_are_valid() {
        for m in [lattice2(), lattice4()] {
            let md = ModuleAction::regular(&m);
            assert!(check_module(&md).is_valid());
            assert!(md.is_strongly_unital() && md.is_strongly_associative());
        }
    }

    #[test]
    fn lattice2_internal_homs() {
        let md = ModuleAction::regular(&lattice2());
        let t = internal_homs(&md, Budget::DEFAULT).unwrap();
        assert_eq!(
            (t.hom(1, 0), t.hom(0, 0), t.hom(0, 1), t.hom(1, 1)),
            (0, 1, 1, 1)
        );
    }

    #[test]
    fn lattice4_internal_hom_is_implication() {
        let md = ModuleAction::regular(&lattice4());
        let t = internal_homs(&md, Budget::DEFAULT).unwrap();
        assert_eq!(t.hom(0b01, 0b10), 0b10);
    }

    #[test]
    fn missing_internal_hom_is_reported() {
        let z2 = Arc::new(MonoidalCategory::discrete_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap());
        let t = Arc::new(MonoidalCategory::terminal());
        // The terminal category acting on discrete Z/2 has no [0, 1].
        let md = ModuleAction {
            base: t,
            carrier: z2.cat.clone(),
            act_obj: vec![0, 1],
            act_mor: vec![0, 1],
            assoc: vec![0, 1],
            unitor: vec![0, 1],
        };
        assert!(check_module(&md).is_valid());
        assert!(matches!(
            internal_hom(&md, 0, 1, Budget::DEFAULT).unwrap(),
            HomSearch::Absent(_)
        ));
    }

    #[test]
    fn identity_structures_validate() {
        let md = Arc::new(ModuleAction::regular(&lattice4()));
        let id = RLaxStructure::identity(&md);
        assert!(check_rlax(&id).is_valid());
        assert!(check_module_functor(&id).is_valid());
        assert!(check_module_nat(&XiLaxNat::identity(&id)).is_valid());
    }

    #[test]
    fn meet_implication_transport_round_trip() {
        let l4 = lattice4();
        let cat = l4.cat.clone();
        let c = 0b01;
        let arrow = |x: usize, y: usize| cat.hom(x, y)[0];
        let imp = |x: usize| {
            (0..4)
                .filter(|&z| z & c & !x == 0)
                .fold(0, |acc, z| acc | z)
        };
        let mor_of = |f: &dyn Fn(usize) -> usize| {
            (0..cat.n_mor())
                .map(|g| arrow(f(cat.dom(g)), f(cat.cod(g))))
                .collect::<Vec<_>>()
        };
        let right_f = Functor {
            source: cat.clone(),
            target: cat.clone(),
            obj_map: (0..4).map(imp).collect(),
            mor_map: mor_of(&imp),
        };
        let meet = |x: usize| x & c;
        let left_f = Functor {
            source: cat.clone(),
            target: cat.clone(),
            obj_map: (0..4).map(meet).collect(),
            mor_map: mor_of(&meet),
        };
        let right = LaxMonoidalFunctor {
            source: l4.clone(),
            target: l4.clone(),
            functor: right_f,
            unit_cell: arrow(3, imp(3)),
            mult: (0..16)
                .map(|p| arrow(imp(p / 4) & imp(p % 4), imp((p / 4) & (p % 4))))
                .collect(),
            kind: LaxKind::Lax,
        };
        let unit = (0..4).map(|y| arrow(y, imp(meet(y)))).collect();
        let counit = (0..4).map(|x| arrow(meet(imp(x)), x)).collect();
        let adj = Adjunction::from_right(right.clone(), left_f.clone(), unit, counit).unwrap();
        let md = Arc::new(ModuleAction::regular(&l4));
        let beta = (0..16)
            .map(|p| arrow(imp(p / 4) & meet(p % 4), meet((p / 4) & (p % 4))))
            .collect();
        let s = RLaxStructure {
            r: right,
            source: md.clone(),
            target: md.clone(),
            functor: left_f,
            beta,
        }
        .validated()
        .unwrap();
        let alpha = adj.rlax_to_loplax(&s).unwrap();
        assert!(check_module_functor(&alpha).is_valid());
        assert_eq!(adj.loplax_to_rlax(&alpha, &md).unwrap(), s);
    }

    #[test]
    fn central_module_on_discrete_z2() {
        let z2 = Arc::new(MonoidalCategory::discrete_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap());
        let b = BraidedStructure::identity(z2.clone(), true);
        let center = drinfeld_center_z1(&z2, Budget::DEFAULT).unwrap();
        let zm = center.monoidal().clone();
        let phi = LaxMonoidalFunctor {
            source: z2.clone(),
            target: zm.clone(),
            functor: Functor {
                source: z2.cat.clone(),
                target: zm.cat.clone(),
                obj_map: vec![0, 1],
                mor_map: vec![0, 1],
            },
            unit_cell: zm.id(zm.unit),
            mult: (0..4).map(|p| zm.id(zm.t(p / 2, p % 2))).collect(),
            kind: LaxKind::Strong,
        };
        assert!(check_lax_monoidal_functor(&phi).is_valid());
        let mm = MonoidalModule::from_central(&b.reversed(), &z2, &center, &phi).unwrap();
        assert!(check_monoidal_module(&mm).is_valid());
    }
}
