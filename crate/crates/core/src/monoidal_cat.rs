//! Monoidal, braided and symmetric structures on finite categories, lax monoidal
//! functors and transformations, algebras, duals, and the ordinary centers
//! Z1 (Drinfeld), Z2 (Müger) and Müger centralizers.
//!
//! Coherence cells are stored explicitly and checked, even when they are identities.

use std::collections::HashMap;
use std::sync::Arc;

use crate::core_cat::{
    check_category, check_functor, check_nat, product_category, Budget, BudgetExceeded,
    BudgetMeter, CategoryError, FinCategory, Functor, Mor, NatTransf, Obj, ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonoidalError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("invalid input:\n{0}")]
    InvalidInput(ValidationReport),
    #[error("thin builder: no morphism {0} -> {1} for a forced cell")]
    NotThin(Obj, Obj),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A monoidal structure on a finite category.
///
/// `tensor_obj[a * n + b] = a ⊗ b`, `tensor_mor[f * m + g] = f ⊗ g`,
/// `assoc[(a * n + b) * n + c] : (a⊗b)⊗c → a⊗(b⊗c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidalCategory {
    pub cat: Arc<FinCategory>,
    pub tensor_obj: Vec<Obj>,
    pub tensor_mor: Vec<Mor>,
    pub unit: Obj,
    pub assoc: Vec<Mor>,
    pub lunitor: Vec<Mor>,
    pub runitor: Vec<Mor>,
}

impl MonoidalCategory {
    pub fn n_obj(&self) -> usize {
        self.cat.n_obj()
    }

    pub fn t(&self, a: Obj, b: Obj) -> Obj {
        self.tensor_obj[a * self.n_obj() + b]
    }

    pub fn tm(&self, f: Mor, g: Mor) -> Mor {
        self.tensor_mor[f * self.cat.n_mor() + g]
    }

    pub fn alpha(&self, a: Obj, b: Obj, c: Obj) -> Mor {
        let n = self.n_obj();
        self.assoc[(a * n + b) * n + c]
    }

    pub fn alpha_inv(&self, a: Obj, b: Obj, c: Obj) -> Mor {
        self.cat.inv(self.alpha(a, b, c))
    }

    pub fn lambda(&self, a: Obj) -> Mor {
        self.lunitor[a]
    }

    pub fn rho(&self, a: Obj) -> Mor {
        self.runitor[a]
    }

    pub fn id(&self, a: Obj) -> Mor {
        self.cat.id(a)
    }

    /// `f ⊗ 1_b`.
    pub fn tr(&self, f: Mor, b: Obj) -> Mor {
        self.tm(f, self.id(b))
    }

    /// `1_a ⊗ f`.
    pub fn tl(&self, a: Obj, f: Mor) -> Mor {
        self.tm(self.id(a), f)
    }

    /// Composite in diagrammatic order, panicking on a typing error.
    pub fn seq(&self, path: &[Mor]) -> Mor {
        self.cat
            .seq(path)
            .unwrap_or_else(|| panic!("ill-typed composite {path:?}"))
    }

    /// The tensor as a functor `C × C → C`.
    pub fn tensor_functor(&self) -> Functor {
        let src = Arc::new(product_category(&self.cat, &self.cat));
        Functor {
            source: src,
            target: self.cat.clone(),
            obj_map: self.tensor_obj.clone(),
            mor_map: self.tensor_mor.clone(),
        }
    }

    /// Validates and returns `self`, or the report as an error.
    pub fn validated(self) -> Result<Self, MonoidalError> {
        let r = check_monoidal(&self);
        if r.is_valid() {
            Ok(self)
        } else {
            Err(MonoidalError::InvalidInput(r))
        }
    }

    /// Monoidal structure on a thin category; every morphism and cell is forced.
    pub fn from_thin(
        cat: Arc<FinCategory>,
        tensor: impl Fn(Obj, Obj) -> Obj,
        unit: Obj,
    ) -> Result<Self, MonoidalError> {
        let n = cat.n_obj();
        let m = cat.n_mor();
        let arrow = |x: Obj, y: Obj| {
            cat.hom(x, y)
                .first()
                .copied()
                .ok_or(MonoidalError::NotThin(x, y))
        };
        let tensor_obj: Vec<Obj> = (0..n * n).map(|p| tensor(p / n, p % n)).collect();
        let t = |a: Obj, b: Obj| tensor_obj[a * n + b];
        let mut tensor_mor = Vec::with_capacity(m * m);
        for f in 0..m {
            for g in 0..m {
                tensor_mor.push(arrow(t(cat.dom(f), cat.dom(g)), t(cat.cod(f), cat.cod(g)))?);
            }
        }
        let mut assoc = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assoc.push(arrow(t(t(a, b), c), t(a, t(b, c)))?);
                }
            }
        }
        let lunitor = (0..n)
            .map(|a| arrow(t(unit, a), a))
            .collect::<Result<_, _>>()?;
        let runitor = (0..n)
            .map(|a| arrow(t(a, unit), a))
            .collect::<Result<_, _>>()?;
        MonoidalCategory {
            cat: cat.clone(),
            tensor_obj,
            tensor_mor,
            unit,
            assoc,
            lunitor,
            runitor,
        }
        .validated()
    }

    /// Strict monoidal structure on the discrete category of a monoid.
    pub fn discrete_monoid(mul: &[Vec<usize>], e: usize) -> Result<Self, MonoidalError> {
        let n = mul.len();
        let cat = Arc::new(FinCategory::discrete(n));
        let tensor_obj: Vec<Obj> = (0..n * n).map(|p| mul[p / n][p % n]).collect();
        MonoidalCategory {
            tensor_mor: tensor_obj.clone(),
            assoc: (0..n * n * n)
                .map(|p| mul[mul[p / (n * n)][(p / n) % n]][p % n])
                .collect(),
            lunitor: (0..n).collect(),
            runitor: (0..n).collect(),
            cat,
            tensor_obj,
            unit: e,
        }
        .validated()
    }

    /// The terminal monoidal category `*`.
    pub fn terminal() -> Self {
        Self::discrete_monoid(&[vec![0]], 0).expect("terminal monoidal category is valid")
    }

    /// Reversed tensor `a ⊗' b = b ⊗ a`, with `α'_{a,b,c} = α⁻¹_{c,b,a}`, `λ' = ρ`, `ρ' = λ`.
    pub fn reversed_tensor(&self) -> Self {
        let n = self.n_obj();
        let m = self.cat.n_mor();
        MonoidalCategory {
            cat: self.cat.clone(),
            tensor_obj: (0..n * n).map(|p| self.t(p % n, p / n)).collect(),
            tensor_mor: (0..m * m).map(|p| self.tm(p % m, p / m)).collect(),
            unit: self.unit,
            assoc: (0..n * n * n)
                .map(|p| self.alpha_inv(p % n, (p / n) % n, p / (n * n)))
                .collect(),
            lunitor: self.runitor.clone(),
            runitor: self.lunitor.clone(),
        }
    }

    /// Restriction to a full subcategory closed under the tensor and containing the unit.
    pub fn restrict(
        &self,
        objs: &[Obj],
    ) -> Result<(MonoidalCategory, crate::core_cat::Subcategory), MonoidalError> {
        let sub = self.cat.full_subcategory(objs);
        let opos: HashMap<Obj, Obj> = objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mpos: HashMap<Mor, Mor> = sub
            .mor_incl
            .iter()
            .enumerate()
            .map(|(i, &f)| (f, i))
            .collect();
        let k = objs.len();
        let closed = |x: Obj| {
            opos.get(&x).copied().ok_or_else(|| {
                MonoidalError::Precondition(format!("object {x} is not in the subcategory"))
            })
        };
        let mut tensor_obj = Vec::with_capacity(k * k);
        for &a in objs {
            for &b in objs {
                tensor_obj.push(closed(self.t(a, b))?);
            }
        }
        let unit = closed(self.unit)?;
        let sm = sub.mor_incl.len();
        let tensor_mor = (0..sm * sm)
            .map(|p| mpos[&self.tm(sub.mor_incl[p / sm], sub.mor_incl[p % sm])])
            .collect();
        let mut assoc = Vec::with_capacity(k * k * k);
        for &a in objs {
            for &b in objs {
                for &c in objs {
                    assoc.push(mpos[&self.alpha(a, b, c)]);
                }
            }
        }
        let m = MonoidalCategory {
            cat: Arc::new(sub.cat.clone()),
            tensor_obj,
            tensor_mor,
            unit,
            assoc,
            lunitor: objs.iter().map(|&a| mpos[&self.lambda(a)]).collect(),
            runitor: objs.iter().map(|&a| mpos[&self.rho(a)]).collect(),
        };
        Ok((m, sub))
    }
}

/// Product of monoidal categories; object `(a, b)` is `a * |B| + b`.
pub fn product_monoidal(a: &MonoidalCategory, b: &MonoidalCategory) -> MonoidalCategory {
    let cat = Arc::new(product_category(&a.cat, &b.cat));
    let (n1, n2) = (a.n_obj(), b.n_obj());
    let m2 = b.cat.n_mor();
    let n = n1 * n2;
    let m = cat.n_mor();
    let pm = |f: Mor, g: Mor| f * m2 + g;
    let mut assoc = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                assoc.push(pm(
                    a.alpha(x / n2, y / n2, z / n2),
                    b.alpha(x % n2, y % n2, z % n2),
                ));
            }
        }
    }
    MonoidalCategory {
        tensor_obj: (0..n * n)
            .map(|p| {
                let (x, y) = (p / n, p % n);
                a.t(x / n2, y / n2) * n2 + b.t(x % n2, y % n2)
            })
            .collect(),
        tensor_mor: (0..m * m)
            .map(|p| {
                let (f, g) = (p / m, p % m);
                pm(a.tm(f / m2, g / m2), b.tm(f % m2, g % m2))
            })
            .collect(),
        unit: a.unit * n2 + b.unit,
        assoc,
        lunitor: (0..n)
            .map(|x| pm(a.lambda(x / n2), b.lambda(x % n2)))
            .collect(),
        runitor: (0..n).map(|x| pm(a.rho(x / n2), b.rho(x % n2))).collect(),
        cat,
    }
}

fn typed(c: &FinCategory, f: Mor, x: Obj, y: Obj) -> bool {
    f < c.n_mor() && c.dom(f) == x && c.cod(f) == y
}

/// Checks typing, functoriality of the tensor, invertibility and naturality of the
/// coherence cells, the pentagon and the triangle.
pub fn check_monoidal(m: &MonoidalCategory) -> ValidationReport {
    let c = &*m.cat;
    let (n, nm) = (c.n_obj(), c.n_mor());
    let mut r = ValidationReport::new();
    if m.tensor_obj.len() != n * n
        || m.tensor_mor.len() != nm * nm
        || m.assoc.len() != n * n * n
        || m.lunitor.len() != n
        || m.runitor.len() != n
        || m.unit >= n
    {
        r.push("monoidal.typing", "table sizes do not match the category");
        return r;
    }
    let cat_r = check_category(c);
    if !cat_r.is_valid() {
        r.absorb("monoidal", cat_r);
        return r;
    }
    if m.tensor_obj.iter().any(|&x| x >= n) {
        r.push("monoidal.tensor.typing", "tensor object out of range");
        return r;
    }
    let tf = m.tensor_functor();
    let fr = check_functor(&tf);
    for v in fr.violations {
        let axiom = v.axiom.replacen("functor", "monoidal.tensor", 1);
        r.push(&axiom, v.detail);
    }
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let f = m.alpha(a, b, cc);
                if !typed(c, f, m.t(m.t(a, b), cc), m.t(a, m.t(b, cc))) {
                    r.push(
                        "monoidal.associator.typing",
                        format!("α({a},{b},{cc}) = {f}"),
                    );
                } else if !c.is_iso(f) {
                    r.push(
                        "monoidal.associator.invertible",
                        format!("α({a},{b},{cc}) = {f}"),
                    );
                }
            }
        }
        if !typed(c, m.lambda(a), m.t(m.unit, a), a) {
            r.push(
                "monoidal.lunitor.typing",
                format!("λ({a}) = {}", m.lambda(a)),
            );
        } else if !c.is_iso(m.lambda(a)) {
            r.push("monoidal.lunitor.invertible", format!("λ({a})"));
        }
        if !typed(c, m.rho(a), m.t(a, m.unit), a) {
            r.push("monoidal.runitor.typing", format!("ρ({a}) = {}", m.rho(a)));
        } else if !c.is_iso(m.rho(a)) {
            r.push("monoidal.runitor.invertible", format!("ρ({a})"));
        }
    }
    if !r.is_valid() {
        return r;
    }
    for f in 0..nm {
        let (x, x2) = (c.dom(f), c.cod(f));
        let lhs = c.compose(m.lambda(x2), m.tl(m.unit, f));
        r.expect_eq(
            "monoidal.lunitor.naturality",
            lhs,
            c.compose(f, m.lambda(x)),
            || format!("morphism {f}"),
        );
        let lhs = c.compose(m.rho(x2), m.tr(f, m.unit));
        r.expect_eq(
            "monoidal.runitor.naturality",
            lhs,
            c.compose(f, m.rho(x)),
            || format!("morphism {f}"),
        );
        for g in 0..nm {
            for h in 0..nm {
                let (a, b, cc) = (c.dom(f), c.dom(g), c.dom(h));
                let (a2, b2, c2) = (c.cod(f), c.cod(g), c.cod(h));
                let lhs = c.compose(m.alpha(a2, b2, c2), m.tm(m.tm(f, g), h));
                let rhs = c.compose(m.tm(f, m.tm(g, h)), m.alpha(a, b, cc));
                r.expect_eq("monoidal.associator.naturality", lhs, rhs, || {
                    format!("({f},{g},{h})")
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for d in 0..n {
                    let lhs = c.seq(&[m.alpha(m.t(a, b), cc, d), m.alpha(a, b, m.t(cc, d))]);
                    let rhs = c.seq(&[
                        m.tr(m.alpha(a, b, cc), d),
                        m.alpha(a, m.t(b, cc), d),
                        m.tl(a, m.alpha(b, cc, d)),
                    ]);
                    r.expect_eq("monoidal.pentagon", lhs, rhs, || {
                        format!("({a},{b},{cc},{d})")
                    });
                }
            }
            let lhs = c.seq(&[m.alpha(a, m.unit, b), m.tl(a, m.lambda(b))]);
            r.expect_eq("monoidal.triangle", lhs, Some(m.tr(m.rho(a), b)), || {
                format!("({a},{b})")
            });
        }
    }
    r
}

/// A braiding `c_{a,b} : a⊗b → b⊗a` on a monoidal category.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidedStructure {
    pub host: Arc<MonoidalCategory>,
    pub braiding: Vec<Mor>,
    pub symmetric: bool,
}

impl BraidedStructure {
    pub fn c(&self, a: Obj, b: Obj) -> Mor {
        self.braiding[a * self.host.n_obj() + b]
    }

    pub fn c_inv(&self, a: Obj, b: Obj) -> Mor {
        self.host.cat.inv(self.c(a, b))
    }

    /// Braiding made of identity morphisms, for hosts where `a⊗b = b⊗a` on the nose.
    pub fn identity(host: Arc<MonoidalCategory>, symmetric: bool) -> Self {
        let n = host.n_obj();
        let braiding = (0..n * n).map(|p| host.id(host.t(p / n, p % n))).collect();
        BraidedStructure {
            host,
            braiding,
            symmetric,
        }
    }

    /// Braiding on a thin host; each component is the unique arrow.
    pub fn thin(host: Arc<MonoidalCategory>) -> Result<Self, MonoidalError> {
        let n = host.n_obj();
        let braiding = (0..n * n)
            .map(|p| {
                let (a, b) = (p / n, p % n);
                let (x, y) = (host.t(a, b), host.t(b, a));
                host.cat
                    .hom(x, y)
                    .first()
                    .copied()
                    .ok_or(MonoidalError::NotThin(x, y))
            })
            .collect::<Result<_, _>>()?;
        BraidedStructure {
            host,
            braiding,
            symmetric: true,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self, MonoidalError> {
        let r = check_braided(&self);
        if r.is_valid() {
            Ok(self)
        } else {
            Err(MonoidalError::InvalidInput(r))
        }
    }

    /// Anti-braiding `c̄_{a,b} = c_{b,a}⁻¹` on the same monoidal category.
    pub fn reversed(&self) -> Self {
        let n = self.host.n_obj();
        BraidedStructure {
            host: self.host.clone(),
            braiding: (0..n * n).map(|p| self.c_inv(p % n, p / n)).collect(),
            symmetric: self.symmetric,
        }
    }

    /// Braiding `c'_{a,b} = c_{b,a}` on the reversed-tensor category.
    pub fn on_reversed_tensor(&self) -> Self {
        let n = self.host.n_obj();
        BraidedStructure {
            host: Arc::new(self.host.reversed_tensor()),
            braiding: (0..n * n).map(|p| self.c(p % n, p / n)).collect(),
            symmetric: self.symmetric,
        }
    }

    pub fn double_braiding_trivial(&self, x: Obj, y: Obj) -> bool {
        let m = &self.host;
        m.cat.compose(self.c(y, x), self.c(x, y)) == Some(m.id(m.t(x, y)))
    }

    pub fn is_transparent(&self, x: Obj) -> bool {
        (0..self.host.n_obj()).all(|y| self.double_braiding_trivial(x, y))
    }
}

/// Product of braided structures.
pub fn product_braided(a: &BraidedStructure, b: &BraidedStructure) -> BraidedStructure {
    let host = Arc::new(product_monoidal(&a.host, &b.host));
    let n2 = b.host.n_obj();
    let m2 = b.host.cat.n_mor();
    let n = host.n_obj();
    BraidedStructure {
        braiding: (0..n * n)
            .map(|p| {
                let (x, y) = (p / n, p % n);
                a.c(x / n2, y / n2) * m2 + b.c(x % n2, y % n2)
            })
            .collect(),
        host,
        symmetric: a.symmetric && b.symmetric,
    }
}

/// Checks typing, invertibility, naturality, both hexagons, and symmetry when flagged.
pub fn check_braided(b: &BraidedStructure) -> ValidationReport {
    let m = &*b.host;
    let c = &*m.cat;
    let n = m.n_obj();
    let mut r = ValidationReport::new();
    if b.braiding.len() != n * n {
        r.push("braided.typing", "braiding table has the wrong size");
        return r;
    }
    for x in 0..n {
        for y in 0..n {
            let f = b.c(x, y);
            if !typed(c, f, m.t(x, y), m.t(y, x)) {
                r.push(
                    "braided.typing",
                    format!(
                        "c({x},{y}) = {f} is not a morphism {} -> {}",
                        m.t(x, y),
                        m.t(y, x)
                    ),
                );
            } else if !c.is_iso(f) {
                r.push("braided.invertible", format!("c({x},{y})"));
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    for f in 0..c.n_mor() {
        for g in 0..c.n_mor() {
            let lhs = c.compose(b.c(c.cod(f), c.cod(g)), m.tm(f, g));
            let rhs = c.compose(m.tm(g, f), b.c(c.dom(f), c.dom(g)));
            r.expect_eq("braided.naturality", lhs, rhs, || format!("({f},{g})"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = c.seq(&[m.alpha(x, y, z), b.c(x, m.t(y, z)), m.alpha(y, z, x)]);
                let rhs = c.seq(&[m.tr(b.c(x, y), z), m.alpha(y, x, z), m.tl(y, b.c(x, z))]);
                r.expect_eq("braided.hexagon", lhs, rhs, || {
                    format!("first ({x},{y},{z})")
                });
                let lhs = c.seq(&[
                    m.alpha_inv(x, y, z),
                    b.c(m.t(x, y), z),
                    m.alpha_inv(z, x, y),
                ]);
                let rhs = c.seq(&[m.tl(x, b.c(y, z)), m.alpha_inv(x, z, y), m.tr(b.c(x, z), y)]);
                r.expect_eq("braided.hexagon", lhs, rhs, || {
                    format!("second ({x},{y},{z})")
                });
            }
            if b.symmetric && !b.double_braiding_trivial(x, y) {
                r.push("braided.symmetry", format!("c({y},{x})∘c({x},{y}) != id"));
            }
        }
    }
    r
}

/// Direction in which the comparison cells of a monoidal functor point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LaxKind {
    /// `𝟙 → F𝟙`, `Fx⊗Fy → F(x⊗y)`.
    Lax,
    /// `F𝟙 → 𝟙`, `F(x⊗y) → Fx⊗Fy`.
    Oplax,
    /// Lax direction, all cells invertible.
    Strong,
}

/// A functor between monoidal categories with comparison cells; `mult[x * n + y]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaxMonoidalFunctor {
    pub source: Arc<MonoidalCategory>,
    pub target: Arc<MonoidalCategory>,
    pub functor: Functor,
    pub unit_cell: Mor,
    pub mult: Vec<Mor>,
    pub kind: LaxKind,
}

impl LaxMonoidalFunctor {
    pub fn obj(&self, x: Obj) -> Obj {
        self.functor.obj(x)
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.functor.mor(f)
    }

    pub fn mu(&self, x: Obj, y: Obj) -> Mor {
        self.mult[x * self.source.n_obj() + y]
    }

    pub fn identity(m: &Arc<MonoidalCategory>) -> Self {
        let n = m.n_obj();
        LaxMonoidalFunctor {
            source: m.clone(),
            target: m.clone(),
            functor: Functor::identity(&m.cat),
            unit_cell: m.id(m.unit),
            mult: (0..n * n).map(|p| m.id(m.t(p / n, p % n))).collect(),
            kind: LaxKind::Strong,
        }
    }

    pub fn validated(self) -> Result<Self, MonoidalError> {
        let r = check_lax_monoidal_functor(&self);
        if r.is_valid() {
            Ok(self)
        } else {
            Err(MonoidalError::InvalidInput(r))
        }
    }

    /// `* → A` picking the unit, strong with cell `λ_𝟙`.
    pub fn unit_pick(a: &Arc<MonoidalCategory>) -> Self {
        let t = Arc::new(MonoidalCategory::terminal());
        LaxMonoidalFunctor {
            functor: Functor::constant(&t.cat, &a.cat, a.unit),
            source: t,
            target: a.clone(),
            unit_cell: a.id(a.unit),
            mult: vec![a.lambda(a.unit)],
            kind: LaxKind::Strong,
        }
    }

    /// `A → *`, strong with identity cells.
    pub fn to_terminal(a: &Arc<MonoidalCategory>) -> Self {
        let t = Arc::new(MonoidalCategory::terminal());
        let n = a.n_obj();
        LaxMonoidalFunctor {
            functor: Functor::constant(&a.cat, &t.cat, 0),
            source: a.clone(),
            target: t,
            unit_cell: 0,
            mult: vec![0; n * n],
            kind: LaxKind::Strong,
        }
    }

    /// Monotone map into a thin category; the functor and all cells are forced.
    /// `kind` selects the cell direction (`Strong` reads as lax).
    pub fn thin(
        source: &Arc<MonoidalCategory>,
        target: &Arc<MonoidalCategory>,
        obj_map: Vec<Obj>,
        kind: LaxKind,
    ) -> Result<Self, MonoidalError> {
        let (s, t) = (&*source.cat, &*target.cat);
        let arrow = |x: Obj, y: Obj| {
            t.hom(x, y)
                .first()
                .copied()
                .ok_or(MonoidalError::NotThin(x, y))
        };
        let mor_map = (0..s.n_mor())
            .map(|f| arrow(obj_map[s.dom(f)], obj_map[s.cod(f)]))
            .collect::<Result<_, _>>()?;
        let functor = Functor::new(source.cat.clone(), target.cat.clone(), obj_map, mor_map)?;
        let n = source.n_obj();
        let oplax = kind == LaxKind::Oplax;
        let cell = |x: Obj, y: Obj| if oplax { arrow(y, x) } else { arrow(x, y) };
        let unit_cell = cell(target.unit, functor.obj(source.unit))?;
        let mult = (0..n * n)
            .map(|p| {
                let (x, y) = (p / n, p % n);
                cell(
                    target.t(functor.obj(x), functor.obj(y)),
                    functor.obj(source.t(x, y)),
                )
            })
            .collect::<Result<_, _>>()?;
        LaxMonoidalFunctor {
            source: source.clone(),
            target: target.clone(),
            functor,
            unit_cell,
            mult,
            kind,
        }
        .validated()
    }

    /// Same functor with inverted cells, read in the opposite direction.
    pub fn inverted(&self, kind: LaxKind) -> Option<Self> {
        let c = &self.target.cat;
        Some(LaxMonoidalFunctor {
            unit_cell: c.inverse(self.unit_cell)?,
            mult: self
                .mult
                .iter()
                .map(|&f| c.inverse(f))
                .collect::<Option<_>>()?,
            kind,
            ..self.clone()
        })
    }

    /// `outer ∘ self`. Both must be lax/strong, or both oplax/strong.
    pub fn then(&self, outer: &LaxMonoidalFunctor) -> Result<LaxMonoidalFunctor, MonoidalError> {
        if *self.target != *outer.source {
            return Err(MonoidalError::Precondition(
                "composite of monoidal functors: endpoints differ".into(),
            ));
        }
        let functor = outer.functor.after(&self.functor)?;
        let tc = &outer.target.cat;
        let n = self.source.n_obj();
        let oplax = matches!(
            (self.kind, outer.kind),
            (LaxKind::Oplax, _) | (_, LaxKind::Oplax)
        );
        let (inner, out) = if oplax {
            let to_oplax = |f: &LaxMonoidalFunctor| match f.kind {
                LaxKind::Oplax => Some(f.clone()),
                _ => f.inverted(LaxKind::Oplax),
            };
            (to_oplax(self), to_oplax(outer))
        } else {
            (Some(self.clone()), Some(outer.clone()))
        };
        let (inner, out) = match (inner, out) {
            (Some(i), Some(o)) => (i, o),
            _ => {
                return Err(MonoidalError::Precondition(
                    "mixed lax and oplax composite".into(),
                ))
            }
        };
        let (unit_cell, mult) = if oplax {
            (
                tc.comp(out.unit_cell, out.mor(inner.unit_cell)),
                (0..n * n)
                    .map(|p| {
                        tc.comp(
                            out.mu(inner.obj(p / n), inner.obj(p % n)),
                            out.mor(inner.mult[p]),
                        )
                    })
                    .collect(),
            )
        } else {
            (
                tc.comp(out.mor(inner.unit_cell), out.unit_cell),
                (0..n * n)
                    .map(|p| {
                        tc.comp(
                            out.mor(inner.mult[p]),
                            out.mu(inner.obj(p / n), inner.obj(p % n)),
                        )
                    })
                    .collect(),
            )
        };
        let kind = match (self.kind, outer.kind) {
            (LaxKind::Strong, LaxKind::Strong) => LaxKind::Strong,
            _ if oplax => LaxKind::Oplax,
            _ => LaxKind::Lax,
        };
        Ok(LaxMonoidalFunctor {
            source: self.source.clone(),
            target: outer.target.clone(),
            functor,
            unit_cell,
            mult,
            kind,
        })
    }

    /// Product `F × G : A × A' → B × B'`.
    pub fn product(&self, other: &LaxMonoidalFunctor) -> LaxMonoidalFunctor {
        let source = Arc::new(product_monoidal(&self.source, &other.source));
        let target = Arc::new(product_monoidal(&self.target, &other.target));
        let n2 = other.source.n_obj();
        let tm2 = other.target.cat.n_mor();
        let n = source.n_obj();
        let mut functor = self.functor.product(&other.functor);
        functor.source = source.cat.clone();
        functor.target = target.cat.clone();
        let kind = if self.kind == other.kind {
            self.kind
        } else {
            LaxKind::Lax
        };
        LaxMonoidalFunctor {
            unit_cell: self.unit_cell * tm2 + other.unit_cell,
            mult: (0..n * n)
                .map(|p| {
                    let (x, y) = (p / n, p % n);
                    self.mu(x / n2, y / n2) * tm2 + other.mu(x % n2, y % n2)
                })
                .collect(),
            functor,
            source,
            target,
            kind,
        }
    }
}

/// Checks naturality of the cells and the associativity and unit diagrams of a
/// lax (or, dually, oplax) monoidal functor.
pub fn check_lax_monoidal_functor(f: &LaxMonoidalFunctor) -> ValidationReport {
    let (a, b) = (&*f.source, &*f.target);
    let c = &*b.cat;
    let n = a.n_obj();
    let mut r = ValidationReport::new();
    let fr = check_functor(&f.functor);
    if f.functor.source != a.cat || f.functor.target != b.cat {
        r.push(
            "lax_functor.typing",
            "underlying functor endpoints differ from the monoidal hosts",
        );
        return r;
    }
    r.absorb("lax_functor", fr);
    if f.mult.len() != n * n {
        r.push(
            "lax_functor.typing",
            "multiplication table has the wrong size",
        );
    }
    if !r.is_valid() {
        return r;
    }
    let oplax = f.kind == LaxKind::Oplax;
    let cell_ok = |g: Mor, x: Obj, y: Obj| {
        if oplax {
            typed(c, g, y, x)
        } else {
            typed(c, g, x, y)
        }
    };
    if !cell_ok(f.unit_cell, b.unit, f.obj(a.unit)) {
        r.push(
            "lax_functor.unit.typing",
            format!("unit cell {}", f.unit_cell),
        );
    }
    for x in 0..n {
        for y in 0..n {
            if !cell_ok(f.mu(x, y), b.t(f.obj(x), f.obj(y)), f.obj(a.t(x, y))) {
                r.push(
                    "lax_functor.mult.typing",
                    format!("cell ({x},{y}) = {}", f.mu(x, y)),
                );
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    if f.kind == LaxKind::Strong {
        if !c.is_iso(f.unit_cell) {
            r.push("lax_functor.strong", "unit cell not invertible");
        }
        for (p, &g) in f.mult.iter().enumerate() {
            if !c.is_iso(g) {
                r.push(
                    "lax_functor.strong",
                    format!("cell ({},{}) not invertible", p / n, p % n),
                );
            }
        }
    }
    let ac = &*a.cat;
    for g in 0..ac.n_mor() {
        for h in 0..ac.n_mor() {
            let (x, y, x2, y2) = (ac.dom(g), ac.dom(h), ac.cod(g), ac.cod(h));
            let (lhs, rhs) = if oplax {
                (
                    c.compose(b.tm(f.mor(g), f.mor(h)), f.mu(x, y)),
                    c.compose(f.mu(x2, y2), f.mor(a.tm(g, h))),
                )
            } else {
                (
                    c.compose(f.mor(a.tm(g, h)), f.mu(x, y)),
                    c.compose(f.mu(x2, y2), b.tm(f.mor(g), f.mor(h))),
                )
            };
            r.expect_eq("lax_functor.naturality", lhs, rhs, || format!("({g},{h})"));
        }
    }
    for x in 0..n {
        let (fx, u) = (f.obj(x), a.unit);
        for y in 0..n {
            let fy = f.obj(y);
            for z in 0..n {
                let fz = f.obj(z);
                let (lhs, rhs) = if oplax {
                    (
                        c.seq(&[
                            f.mor(a.alpha(x, y, z)),
                            f.mu(x, a.t(y, z)),
                            b.tl(fx, f.mu(y, z)),
                        ]),
                        c.seq(&[
                            f.mu(a.t(x, y), z),
                            b.tr(f.mu(x, y), fz),
                            b.alpha(fx, fy, fz),
                        ]),
                    )
                } else {
                    (
                        c.seq(&[
                            b.tr(f.mu(x, y), fz),
                            f.mu(a.t(x, y), z),
                            f.mor(a.alpha(x, y, z)),
                        ]),
                        c.seq(&[
                            b.alpha(fx, fy, fz),
                            b.tl(fx, f.mu(y, z)),
                            f.mu(x, a.t(y, z)),
                        ]),
                    )
                };
                r.expect_eq("lax_functor.associativity", lhs, rhs, || {
                    format!("({x},{y},{z})")
                });
            }
        }
        let (lhs, rhs) = if oplax {
            (
                c.seq(&[f.mu(u, x), b.tr(f.unit_cell, fx), b.lambda(fx)]),
                Some(f.mor(a.lambda(x))),
            )
        } else {
            (
                c.seq(&[b.tr(f.unit_cell, fx), f.mu(u, x), f.mor(a.lambda(x))]),
                Some(b.lambda(fx)),
            )
        };
        r.expect_eq("lax_functor.left_unit", lhs, rhs, || format!("object {x}"));
        let (lhs, rhs) = if oplax {
            (
                c.seq(&[f.mu(x, u), b.tl(fx, f.unit_cell), b.rho(fx)]),
                Some(f.mor(a.rho(x))),
            )
        } else {
            (
                c.seq(&[b.tl(fx, f.unit_cell), f.mu(x, u), f.mor(a.rho(x))]),
                Some(b.rho(fx)),
            )
        };
        r.expect_eq("lax_functor.right_unit", lhs, rhs, || format!("object {x}"));
    }
    r
}

/// Checks `F(c_{x,y}) ∘ μ_{x,y} = μ_{y,x} ∘ c_{Fx,Fy}` for a lax or strong functor.
pub fn check_braided_functor(
    f: &LaxMonoidalFunctor,
    src: &BraidedStructure,
    tgt: &BraidedStructure,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    if *src.host != *f.source || *tgt.host != *f.target {
        r.push(
            "lax_functor.braided.typing",
            "braidings live on other categories",
        );
        return r;
    }
    let c = &*f.target.cat;
    let n = f.source.n_obj();
    for x in 0..n {
        for y in 0..n {
            let lhs = c.compose(f.mor(src.c(x, y)), f.mu(x, y));
            let rhs = c.compose(f.mu(y, x), tgt.c(f.obj(x), f.obj(y)));
            r.expect_eq("lax_functor.braided", lhs, rhs, || format!("({x},{y})"));
        }
    }
    r
}

/// The tensor `A × A → A` with comparison cells built from the braiding:
/// `(a1⊗b1)⊗(a2⊗b2) → (a1⊗a2)⊗(b1⊗b2)` is `α⁻¹ ∘ (1⊗α) ∘ (1⊗(c⊗1)) ∘ (1⊗α⁻¹) ∘ α`.
pub fn braided_tensor_lax_structure(b: &BraidedStructure) -> LaxMonoidalFunctor {
    let a = &b.host;
    let n = a.n_obj();
    let source = Arc::new(product_monoidal(a, a));
    let nn = n * n;
    let mult = (0..nn * nn)
        .map(|p| {
            let (x, y) = (p / nn, p % nn);
            let (a1, b1, a2, b2) = (x / n, x % n, y / n, y % n);
            a.seq(&[
                a.alpha(a1, b1, a.t(a2, b2)),
                a.tl(a1, a.alpha_inv(b1, a2, b2)),
                a.tl(a1, a.tr(b.c(b1, a2), b2)),
                a.tl(a1, a.alpha(a2, b1, b2)),
                a.alpha_inv(a1, a2, a.t(b1, b2)),
            ])
        })
        .collect();
    let mut functor = a.tensor_functor();
    functor.source = source.cat.clone();
    LaxMonoidalFunctor {
        source,
        target: a.clone(),
        functor,
        unit_cell: a.cat.inv(a.lambda(a.unit)),
        mult,
        kind: LaxKind::Strong,
    }
}

/// Oplax-direction structure on the tensor: the inverse cells, which route through `c⁻¹`.
pub fn braided_tensor_oplax_structure(b: &BraidedStructure) -> LaxMonoidalFunctor {
    braided_tensor_lax_structure(b)
        .inverted(LaxKind::Oplax)
        .expect("braided tensor cells are invertible")
}

/// A natural transformation between monoidal functors of the same kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaxMonoidalNat {
    pub source: LaxMonoidalFunctor,
    pub target: LaxMonoidalFunctor,
    pub nat: NatTransf,
}

impl LaxMonoidalNat {
    pub fn component(&self, x: Obj) -> Mor {
        self.nat.component(x)
    }

    pub fn identity(f: &LaxMonoidalFunctor) -> Self {
        LaxMonoidalNat {
            source: f.clone(),
            target: f.clone(),
            nat: NatTransf::identity(&f.functor),
        }
    }

    pub fn validated(self) -> Result<Self, MonoidalError> {
        let r = check_lax_monoidal_nat(&self);
        if r.is_valid() {
            Ok(self)
        } else {
            Err(MonoidalError::InvalidInput(r))
        }
    }

    /// Vertical composite `self · first`.
    pub fn after(&self, first: &LaxMonoidalNat) -> Result<LaxMonoidalNat, MonoidalError> {
        Ok(LaxMonoidalNat {
            source: first.source.clone(),
            target: self.target.clone(),
            nat: self.nat.after(&first.nat)?,
        })
    }

    /// Horizontal composite of `self : F ⇒ G` with `outer : F' ⇒ G'`, a transformation `F'F ⇒ G'G`.
    pub fn hcomp(&self, outer: &LaxMonoidalNat) -> Result<LaxMonoidalNat, MonoidalError> {
        let c = &outer.target.target.cat;
        let components = (0..self.source.source.n_obj())
            .map(|x| {
                c.comp(
                    outer.component(self.target.obj(x)),
                    outer.source.mor(self.component(x)),
                )
            })
            .collect();
        let source = self.source.then(&outer.source)?;
        let target = self.target.then(&outer.target)?;
        let nat = NatTransf {
            source: source.functor.clone(),
            target: target.functor.clone(),
            components,
        };
        Ok(LaxMonoidalNat {
            source,
            target,
            nat,
        })
    }

    pub fn product(&self, other: &LaxMonoidalNat) -> LaxMonoidalNat {
        let source = self.source.product(&other.source);
        let target = self.target.product(&other.target);
        let n2 = other.source.source.n_obj();
        let tm2 = other.source.target.cat.n_mor();
        let components = (0..source.source.n_obj())
            .map(|x| self.component(x / n2) * tm2 + other.component(x % n2))
            .collect();
        let nat = NatTransf {
            source: source.functor.clone(),
            target: target.functor.clone(),
            components,
        };
        LaxMonoidalNat {
            source,
            target,
            nat,
        }
    }
}

/// Checks naturality and the unit and multiplication squares.
pub fn check_lax_monoidal_nat(t: &LaxMonoidalNat) -> ValidationReport {
    let mut r = ValidationReport::new();
    let (f, g) = (&t.source, &t.target);
    if f.source != g.source
        || f.target != g.target
        || t.nat.source != f.functor
        || t.nat.target != g.functor
    {
        r.push(
            "lax_nat.typing",
            "source and target are not parallel monoidal functors",
        );
        return r;
    }
    r.absorb("lax_nat", check_nat(&t.nat));
    if !r.is_valid() {
        return r;
    }
    let (a, b) = (&*f.source, &*f.target);
    let c = &*b.cat;
    let oplax = f.kind == LaxKind::Oplax;
    if oplax != (g.kind == LaxKind::Oplax) {
        r.push(
            "lax_nat.typing",
            "source and target have different cell directions",
        );
        return r;
    }
    let eta = |x: Obj| t.component(x);
    let (lhs, rhs) = if oplax {
        (c.compose(g.unit_cell, eta(a.unit)), Some(f.unit_cell))
    } else {
        (c.compose(eta(a.unit), f.unit_cell), Some(g.unit_cell))
    };
    r.expect_eq("lax_nat.unit", lhs, rhs, || "unit square".into());
    for x in 0..a.n_obj() {
        for y in 0..a.n_obj() {
            let (lhs, rhs) = if oplax {
                (
                    c.compose(g.mu(x, y), eta(a.t(x, y))),
                    c.compose(b.tm(eta(x), eta(y)), f.mu(x, y)),
                )
            } else {
                (
                    c.compose(eta(a.t(x, y)), f.mu(x, y)),
                    c.compose(g.mu(x, y), b.tm(eta(x), eta(y))),
                )
            };
            r.expect_eq("lax_nat.mult", lhs, rhs, || format!("({x},{y})"));
        }
    }
    r
}

/// An algebra (monoid object) in a monoidal category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraObject {
    pub host: Arc<MonoidalCategory>,
    pub carrier: Obj,
    pub mult: Mor,
    pub unit: Mor,
    pub commutative: bool,
}

/// Checks the associativity and unit squares, and commutativity against `braiding` when flagged.
pub fn check_algebra(alg: &AlgebraObject, braiding: Option<&BraidedStructure>) -> ValidationReport {
    let m = &*alg.host;
    let c = &*m.cat;
    let x = alg.carrier;
    let mut r = ValidationReport::new();
    if !typed(c, alg.mult, m.t(x, x), x) || !typed(c, alg.unit, m.unit, x) {
        r.push(
            "algebra.typing",
            "multiplication or unit has the wrong endpoints",
        );
        return r;
    }
    let lhs = c.seq(&[m.tr(alg.mult, x), alg.mult]);
    let rhs = c.seq(&[m.alpha(x, x, x), m.tl(x, alg.mult), alg.mult]);
    r.expect_eq("algebra.associativity", lhs, rhs, || {
        "associativity square".into()
    });
    r.expect_eq(
        "algebra.unit",
        c.seq(&[m.tr(alg.unit, x), alg.mult]),
        Some(m.lambda(x)),
        || "left unit".into(),
    );
    r.expect_eq(
        "algebra.unit",
        c.seq(&[m.tl(x, alg.unit), alg.mult]),
        Some(m.rho(x)),
        || "right unit".into(),
    );
    if alg.commutative {
        match braiding {
            Some(b) if *b.host == *m => r.expect_eq(
                "algebra.commutative",
                c.compose(alg.mult, b.c(x, x)),
                Some(alg.mult),
                || "m∘c".into(),
            ),
            _ => r.push(
                "algebra.commutative.typing",
                "commutative flag needs a braiding on the host",
            ),
        }
    }
    r
}

/// Evaluation/coevaluation pair exhibiting `dual` as a left dual of `object`:
/// `ev : dual⊗x → 𝟙`, `coev : 𝟙 → x⊗dual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualWitness {
    pub dual: Obj,
    pub ev: Mor,
    pub coev: Mor,
}

/// Per-object left and right duals found by witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub left: Vec<Option<DualWitness>>,
    pub right: Vec<Option<DualWitness>>,
}

impl RigidityReport {
    pub fn is_rigid(&self) -> bool {
        self.left
            .iter()
            .chain(self.right.iter())
            .all(Option::is_some)
    }
}

/// Searches for duals satisfying the zig-zag identities, first witness in index order.
pub fn check_rigid(m: &MonoidalCategory) -> RigidityReport {
    let c = &*m.cat;
    let u = m.unit;
    let n = m.n_obj();
    // Left dual d of x: ev: d⊗x → 𝟙, coev: 𝟙 → x⊗d.
    let left_zigzag = |x: Obj, d: Obj, ev: Mor, coev: Mor| {
        let z1 = c.seq(&[
            c.inv(m.lambda(x)),
            m.tr(coev, x),
            m.alpha(x, d, x),
            m.tl(x, ev),
            m.rho(x),
        ]);
        let z2 = c.seq(&[
            c.inv(m.rho(d)),
            m.tl(d, coev),
            m.alpha_inv(d, x, d),
            m.tr(ev, d),
            m.lambda(d),
        ]);
        z1 == Some(m.id(x)) && z2 == Some(m.id(d))
    };
    let search = |x: Obj, left: bool| -> Option<DualWitness> {
        for d in 0..n {
            let (ev_src, coev_tgt) = if left {
                (m.t(d, x), m.t(x, d))
            } else {
                (m.t(x, d), m.t(d, x))
            };
            for &ev in c.hom(ev_src, u) {
                for &coev in c.hom(u, coev_tgt) {
                    let ok = if left {
                        left_zigzag(x, d, ev, coev)
                    } else {
                        left_zigzag(d, x, ev, coev)
                    };
                    if ok {
                        return Some(DualWitness { dual: d, ev, coev });
                    }
                }
            }
        }
        None
    };
    RigidityReport {
        left: (0..n).map(|x| search(x, true)).collect(),
        right: (0..n).map(|x| search(x, false)).collect(),
    }
}

/// A half-braiding on `carrier`: `components[z] : z⊗x → x⊗z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfBraidingOrd {
    pub carrier: Obj,
    pub components: Vec<Mor>,
}

/// Checks invertibility, naturality in `z`, the tensor condition and the unit condition.
pub fn check_half_braiding(m: &MonoidalCategory, hb: &HalfBraidingOrd) -> ValidationReport {
    let c = &*m.cat;
    let x = hb.carrier;
    let n = m.n_obj();
    let mut r = ValidationReport::new();
    if hb.components.len() != n {
        r.push("half_braiding_ord.typing", "wrong number of components");
        return r;
    }
    for z in 0..n {
        let g = hb.components[z];
        if !typed(c, g, m.t(z, x), m.t(x, z)) {
            r.push("half_braiding_ord.typing", format!("component at {z}"));
        } else if !c.is_iso(g) {
            r.push("half_braiding_ord.invertible", format!("component at {z}"));
        }
    }
    if !r.is_valid() {
        return r;
    }
    for f in 0..c.n_mor() {
        let lhs = c.compose(hb.components[c.cod(f)], m.tr(f, x));
        let rhs = c.compose(m.tl(x, f), hb.components[c.dom(f)]);
        r.expect_eq("half_braiding_ord.naturality", lhs, rhs, || {
            format!("morphism {f}")
        });
    }
    for z in 0..n {
        for w in 0..n {
            r.expect_eq(
                "half_braiding_ord.tensor",
                Some(hb.components[m.t(z, w)]),
                half_braiding_tensor_rhs(m, x, &hb.components, z, w),
                || format!("({z},{w})"),
            );
        }
    }
    let unit_rhs = c.compose(c.inv(m.rho(x)), m.lambda(x));
    r.expect_eq(
        "half_braiding_ord.unit",
        Some(hb.components[m.unit]),
        unit_rhs,
        || "unit".into(),
    );
    r
}

/// `α ∘ (γ_z⊗1) ∘ α⁻¹ ∘ (1⊗γ_w) ∘ α`, the required value of `γ_{z⊗w}`.
fn half_braiding_tensor_rhs(
    m: &MonoidalCategory,
    x: Obj,
    g: &[Mor],
    z: Obj,
    w: Obj,
) -> Option<Mor> {
    m.cat.seq(&[
        m.alpha(z, w, x),
        m.tl(z, g[w]),
        m.alpha_inv(z, x, w),
        m.tr(g[z], w),
        m.alpha(x, z, w),
    ])
}

/// All half-braidings on `x`, lexicographic in the component list.
pub fn enumerate_half_braidings(
    m: &MonoidalCategory,
    x: Obj,
    meter: &mut BudgetMeter,
) -> Result<Vec<HalfBraidingOrd>, BudgetExceeded> {
    let c = &*m.cat;
    let n = m.n_obj();
    let choices: Vec<Vec<Mor>> = (0..n)
        .map(|z| {
            c.hom(m.t(z, x), m.t(x, z))
                .iter()
                .copied()
                .filter(|&f| c.is_iso(f))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut partial: Vec<Option<Mor>> = vec![None; n];
    hb_dfs(m, x, &choices, 0, &mut partial, meter, &mut out)?;
    Ok(out)
}

fn hb_consistent(m: &MonoidalCategory, x: Obj, p: &[Option<Mor>], z: Obj) -> bool {
    let c = &*m.cat;
    let n = m.n_obj();
    for f in 0..c.n_mor() {
        let (a, b) = (c.dom(f), c.cod(f));
        if a != z && b != z {
            continue;
        }
        if let (Some(ga), Some(gb)) = (p[a], p[b]) {
            if c.compose(gb, m.tr(f, x)) != c.compose(m.tl(x, f), ga) {
                return false;
            }
        }
    }
    if z == m.unit {
        if let Some(g) = p[z] {
            if c.compose(c.inv(m.rho(x)), m.lambda(x)) != Some(g) {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = m.t(a, b);
            if a != z && b != z && ab != z {
                continue;
            }
            if let (Some(ga), Some(gb), Some(gab)) = (p[a], p[b], p[ab]) {
                let mut g = vec![0; n];
                g[a] = ga;
                g[b] = gb;
                if half_braiding_tensor_rhs(m, x, &g, a, b) != Some(gab) {
                    return false;
                }
            }
        }
    }
    true
}

fn hb_dfs(
    m: &MonoidalCategory,
    x: Obj,
    choices: &[Vec<Mor>],
    z: usize,
    partial: &mut Vec<Option<Mor>>,
    meter: &mut BudgetMeter,
    out: &mut Vec<HalfBraidingOrd>,
) -> Result<(), BudgetExceeded> {
    if z == choices.len() {
        let hb = HalfBraidingOrd {
            carrier: x,
            components: partial.iter().map(|g| g.expect("assigned")).collect(),
        };
        if check_half_braiding(m, &hb).is_valid() {
            out.push(hb);
        }
        return Ok(());
    }
    for &g in &choices[z] {
        meter.tick()?;
        partial[z] = Some(g);
        if hb_consistent(m, x, partial, z) {
            hb_dfs(m, x, choices, z + 1, partial, meter, out)?;
        }
    }
    partial[z] = None;
    Ok(())
}

/// The Drinfeld center of a monoidal category, with its forgetful functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrinfeldCenter {
    /// Objects in enumeration order: carriers ascending, then components lexicographically.
    pub objects: Vec<HalfBraidingOrd>,
    /// Morphism `i` is `(source object, target object, underlying morphism)`.
    pub morphisms: Vec<(usize, usize, Mor)>,
    pub braided: BraidedStructure,
    pub forgetful: LaxMonoidalFunctor,
}

impl DrinfeldCenter {
    pub fn monoidal(&self) -> &Arc<MonoidalCategory> {
        &self.braided.host
    }

    /// Index of the center object with the given half-braiding table, if present.
    pub fn find(&self, hb: &HalfBraidingOrd) -> Option<usize> {
        self.objects.iter().position(|o| o == hb)
    }

    /// Half-braiding component `γ_{z, X}` for center object `X`.
    pub fn gamma(&self, obj: usize, z: Obj) -> Mor {
        self.objects[obj].components[z]
    }
}

/// Tensor of half-braidings: `(γ⊗δ)_z = α⁻¹ ∘ (1⊗δ_z) ∘ α ∘ (γ_z⊗1) ∘ α⁻¹`.
pub fn tensor_half_braidings(
    m: &MonoidalCategory,
    g: &HalfBraidingOrd,
    d: &HalfBraidingOrd,
) -> HalfBraidingOrd {
    let (x, y) = (g.carrier, d.carrier);
    HalfBraidingOrd {
        carrier: m.t(x, y),
        components: (0..m.n_obj())
            .map(|z| {
                m.seq(&[
                    m.alpha_inv(z, x, y),
                    m.tr(g.components[z], y),
                    m.alpha(x, z, y),
                    m.tl(x, d.components[z]),
                    m.alpha_inv(x, y, z),
                ])
            })
            .collect(),
    }
}

/// Exhaustive Drinfeld center `Z1(M)`.
pub fn drinfeld_center_z1(
    m: &Arc<MonoidalCategory>,
    budget: Budget,
) -> Result<DrinfeldCenter, MonoidalError> {
    let mr = check_monoidal(m);
    if !mr.is_valid() {
        return Err(MonoidalError::InvalidInput(mr));
    }
    let c = &*m.cat;
    let mut meter = budget.meter();
    let mut objects = Vec::new();
    for x in 0..m.n_obj() {
        objects.extend(enumerate_half_braidings(m, x, &mut meter)?);
    }
    let k = objects.len();
    let compatible = |a: &HalfBraidingOrd, b: &HalfBraidingOrd, f: Mor| {
        (0..m.n_obj()).all(|z| {
            c.compose(m.tr(f, z), a.components[z]) == c.compose(b.components[z], m.tl(z, f))
        })
    };
    let mut morphisms = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for &f in c.hom(objects[i].carrier, objects[j].carrier) {
                meter.tick()?;
                if compatible(&objects[i], &objects[j], f) {
                    morphisms.push((i, j, f));
                }
            }
        }
    }
    let index: HashMap<(usize, usize, Mor), usize> =
        morphisms.iter().enumerate().map(|(p, &t)| (t, p)).collect();
    let dom = morphisms.iter().map(|t| t.0).collect();
    let cod = morphisms.iter().map(|t| t.1).collect();
    let identity = (0..k)
        .map(|i| index[&(i, i, c.id(objects[i].carrier))])
        .collect();
    let zc = Arc::new(
        FinCategory::from_fn(k, dom, cod, identity, |g, f| {
            let (i, _, fu) = morphisms[f];
            let (_, l, gu) = morphisms[g];
            index[&(i, l, c.comp(gu, fu))]
        })
        .map_err(MonoidalError::Category)?,
    );
    let find = |hb: &HalfBraidingOrd| {
        objects
            .iter()
            .position(|o| o == hb)
            .expect("center closed under tensor")
    };
    let tensor_obj: Vec<Obj> = (0..k * k)
        .map(|p| find(&tensor_half_braidings(m, &objects[p / k], &objects[p % k])))
        .collect();
    let zm = morphisms.len();
    let lift = |i: usize, j: usize, f: Mor| index[&(i, j, f)];
    let tensor_mor = (0..zm * zm)
        .map(|p| {
            let (f, g) = (morphisms[p / zm], morphisms[p % zm]);
            lift(
                tensor_obj[f.0 * k + g.0],
                tensor_obj[f.1 * k + g.1],
                m.tm(f.2, g.2),
            )
        })
        .collect();
    let unit_hb = HalfBraidingOrd {
        carrier: m.unit,
        components: (0..m.n_obj())
            .map(|z| c.comp(c.inv(m.lambda(z)), m.rho(z)))
            .collect(),
    };
    let unit = find(&unit_hb);
    let t = |i: usize, j: usize| tensor_obj[i * k + j];
    let mut assoc = Vec::with_capacity(k * k * k);
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let (x, y, z) = (objects[i].carrier, objects[j].carrier, objects[l].carrier);
                assoc.push(lift(t(t(i, j), l), t(i, t(j, l)), m.alpha(x, y, z)));
            }
        }
    }
    let lunitor = (0..k)
        .map(|i| lift(t(unit, i), i, m.lambda(objects[i].carrier)))
        .collect();
    let runitor = (0..k)
        .map(|i| lift(t(i, unit), i, m.rho(objects[i].carrier)))
        .collect();
    let zmon = Arc::new(MonoidalCategory {
        cat: zc.clone(),
        tensor_obj: tensor_obj.clone(),
        tensor_mor,
        unit,
        assoc,
        lunitor,
        runitor,
    });
    let braiding = (0..k * k)
        .map(|p| {
            let (i, j) = (p / k, p % k);
            lift(t(i, j), t(j, i), objects[j].components[objects[i].carrier])
        })
        .collect();
    let braided = BraidedStructure {
        host: zmon.clone(),
        braiding,
        symmetric: false,
    };
    let symmetric = (0..k).all(|i| braided.is_transparent(i));
    let braided = BraidedStructure {
        symmetric,
        ..braided
    };
    let forgetful = LaxMonoidalFunctor {
        source: zmon.clone(),
        target: m.clone(),
        functor: Functor {
            source: zc.clone(),
            target: m.cat.clone(),
            obj_map: objects.iter().map(|o| o.carrier).collect(),
            mor_map: morphisms.iter().map(|t| t.2).collect(),
        },
        unit_cell: m.id(m.unit),
        mult: (0..k * k)
            .map(|p| m.id(m.t(objects[p / k].carrier, objects[p % k].carrier)))
            .collect(),
        kind: LaxKind::Strong,
    };
    Ok(DrinfeldCenter {
        objects,
        morphisms,
        braided,
        forgetful,
    })
}

/// A full braided subcategory (Müger center or centralizer) with its inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidedSubcategory {
    pub objects: Vec<Obj>,
    pub braided: BraidedStructure,
    pub inclusion: LaxMonoidalFunctor,
}

fn braided_full_subcategory(
    b: &BraidedStructure,
    objs: Vec<Obj>,
    symmetric: bool,
) -> Result<BraidedSubcategory, MonoidalError> {
    let (sub_m, sub) = b.host.restrict(&objs)?;
    let sub_m = Arc::new(sub_m);
    let k = objs.len();
    let mpos: HashMap<Mor, Mor> = sub
        .mor_incl
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, i))
        .collect();
    let braiding = (0..k * k)
        .map(|p| mpos[&b.c(objs[p / k], objs[p % k])])
        .collect();
    let braided = BraidedStructure {
        host: sub_m.clone(),
        braiding,
        symmetric,
    };
    let h = &b.host;
    let inclusion = LaxMonoidalFunctor {
        source: sub_m,
        target: h.clone(),
        functor: Functor {
            source: Arc::new(sub.cat),
            target: h.cat.clone(),
            obj_map: sub.obj_incl,
            mor_map: sub.mor_incl,
        },
        unit_cell: h.id(h.unit),
        mult: (0..k * k)
            .map(|p| h.id(h.t(objs[p / k], objs[p % k])))
            .collect(),
        kind: LaxKind::Strong,
    };
    Ok(BraidedSubcategory {
        objects: objs,
        braided,
        inclusion,
    })
}

/// The Müger center: transparent objects, with the inherited symmetric braiding.
pub fn muger_center_z2(b: &BraidedStructure) -> Result<BraidedSubcategory, MonoidalError> {
    let objs = (0..b.host.n_obj())
        .filter(|&x| b.is_transparent(x))
        .collect();
    braided_full_subcategory(b, objs, true)
}

/// Objects of the target center double-braiding trivially with the image of `phi`.
/// `phi` must be strong and braided from `source` to `target`.
pub fn muger_centralizer(
    phi: &LaxMonoidalFunctor,
    source: &BraidedStructure,
    target: &BraidedStructure,
) -> Result<BraidedSubcategory, MonoidalError> {
    let mut r = check_lax_monoidal_functor(phi);
    if phi.kind != LaxKind::Strong {
        r.push("lax_functor.strong", "functor is not marked strong");
    }
    r.extend(check_braided_functor(phi, source, target));
    if !r.is_valid() {
        return Err(MonoidalError::InvalidInput(r));
    }
    let objs: Vec<Obj> = (0..target.host.n_obj())
        .filter(|&x| {
            (0..source.host.n_obj()).all(|a| target.double_braiding_trivial(x, phi.obj(a)))
        })
        .collect();
    let symmetric = objs
        .iter()
        .all(|&x| objs.iter().all(|&y| target.double_braiding_trivial(x, y)));
    braided_full_subcategory(target, objs, symmetric)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice2() -> Arc<MonoidalCategory> {
        let c = Arc::new(FinCategory::from_preorder(2, |x, y| x <= y));
        Arc::new(MonoidalCategory::from_thin(c, |a, b| a.min(b), 1).unwrap())
    }

    fn z2() -> Arc<MonoidalCategory> {
        Arc::new(MonoidalCategory::discrete_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap())
    }

    #[test]
    fn basic_fixtures_are_monoidal() {
        assert!(check_monoidal(&lattice2()).is_valid());
        assert!(check_monoidal(&z2()).is_valid());
        assert!(check_monoidal(&MonoidalCategory::terminal()).is_valid());
        assert!(check_monoidal(&lattice2().reversed_tensor()).is_valid());
        assert!(check_monoidal(&product_monoidal(&lattice2(), &z2())).is_valid());
    }

    #[test]
    fn s3_identity_braiding_is_a_typing_violation() {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mul: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        perms
                            .iter()
                            .position(|s| *s == [p[q[0]], p[q[1]], p[q[2]]])
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        let s3 = Arc::new(MonoidalCategory::discrete_monoid(&mul, 0).unwrap());
        let b = BraidedStructure {
            braiding: (0..36).map(|p| s3.t(p / 6, p % 6)).collect(),
            host: s3,
            symmetric: false,
        };
        let r = check_braided(&b);
        assert!(r.violations.iter().any(|v| v.axiom == "braided.typing"));
    }

    #[test]
    fn braided_tensor_structure_is_strong_monoidal() {
        for m in [lattice2(), z2()] {
            let b = BraidedStructure::thin(m.clone())
                .or_else(|_| Ok::<_, MonoidalError>(BraidedStructure::identity(m, true)))
                .unwrap();
            assert!(check_braided(&b).is_valid());
            assert!(check_lax_monoidal_functor(&braided_tensor_lax_structure(&b)).is_valid());
            assert!(check_lax_monoidal_functor(&braided_tensor_oplax_structure(&b)).is_valid());
        }
    }

    #[test]
    fn drinfeld_centers_of_small_fixtures() {
        for m in [lattice2(), z2(), Arc::new(MonoidalCategory::terminal())] {
            let z = drinfeld_center_z1(&m, Budget::DEFAULT).unwrap();
            assert_eq!(z.objects.len(), m.n_obj());
            assert!(check_monoidal(z.monoidal()).is_valid());
            assert!(check_braided(&z.braided).is_valid());
            assert!(check_lax_monoidal_functor(&z.forgetful).is_valid());
            let z2c = muger_center_z2(&z.braided).unwrap();
            assert_eq!(z2c.objects.len(), m.n_obj());
        }
    }

    #[test]
    fn rigidity() {
        assert!(check_rigid(&z2()).is_rigid());
        let r = check_rigid(&lattice2());
        assert!(r.left[0].is_none());
        assert!(r.left[1].is_some());
    }

    #[test]
    fn algebras() {
        let m = lattice2();
        let top = AlgebraObject {
            host: m.clone(),
            carrier: 1,
            mult: m.lambda(1),
            unit: m.id(1),
            commutative: false,
        };
        assert!(check_algebra(&top, None).is_valid());
        let z = z2();
        let bad = AlgebraObject {
            host: z.clone(),
            carrier: 1,
            mult: 1,
            unit: 0,
            commutative: false,
        };
        assert!(!check_algebra(&bad, None).is_valid());
    }
}
