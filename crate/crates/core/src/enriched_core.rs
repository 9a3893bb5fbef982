//! Categories enriched in a finite monoidal category, enriched functors and
//! transformations that may change the background, underlying and opposite
//! categories, Cartesian products, and pushforward along lax monoidal functors.
//!
//! Hom-objects, identities and compositions are indices into the background's
//! tables. Elements of a hom-object `h` are the background morphisms `𝟙 → h`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::core_cat::{
    check_functor, check_nat, product_category, BudgetExceeded, CategoryError, FinCategory,
    Functor, Mor, NatTransf, Obj, ValidationReport,
};
use crate::monoidal_cat::{
    check_lax_monoidal_functor, check_lax_monoidal_nat, product_monoidal, AlgebraObject, LaxKind,
    LaxMonoidalFunctor, LaxMonoidalNat, MonoidalCategory, MonoidalError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnrichedError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Monoidal(#[from] MonoidalError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("invalid input:\n{0}")]
    InvalidInput(ValidationReport),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub(crate) fn ensure(r: ValidationReport) -> Result<(), EnrichedError> {
    if r.is_valid() {
        Ok(())
    } else {
        Err(EnrichedError::InvalidInput(r))
    }
}

fn typed(c: &FinCategory, f: Mor, x: Obj, y: Obj) -> bool {
    f < c.n_mor() && c.dom(f) == x && c.cod(f) == y
}

/// A category enriched in `base`.
///
/// `hom[x * n + y]`, `ident[x] : 𝟙 → hom(x,x)`,
/// `comp[(x * n + y) * n + z] : hom(y,z) ⊗ hom(x,y) → hom(x,z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnrichedCategory {
    pub base: Arc<MonoidalCategory>,
    pub n_obj: usize,
    pub hom: Vec<Obj>,
    pub ident: Vec<Mor>,
    pub comp: Vec<Mor>,
}

impl EnrichedCategory {
    pub fn hom(&self, x: Obj, y: Obj) -> Obj {
        self.hom[x * self.n_obj + y]
    }

    pub fn ident(&self, x: Obj) -> Mor {
        self.ident[x]
    }

    pub fn comp(&self, x: Obj, y: Obj, z: Obj) -> Mor {
        let n = self.n_obj;
        self.comp[(x * n + y) * n + z]
    }

    pub fn validated(self) -> Result<Self, EnrichedError> {
        ensure(check_enriched_category(&self))?;
        Ok(self)
    }

    /// The one-object category `*` over the terminal monoidal category.
    pub fn terminal() -> Self {
        EnrichedCategory {
            base: Arc::new(MonoidalCategory::terminal()),
            n_obj: 1,
            hom: vec![0],
            ident: vec![0],
            comp: vec![0],
        }
    }

    /// One-object category `*^A` of an algebra.
    pub fn from_algebra(alg: &AlgebraObject) -> Self {
        EnrichedCategory {
            base: alg.host.clone(),
            n_obj: 1,
            hom: vec![alg.carrier],
            ident: vec![alg.unit],
            comp: vec![alg.mult],
        }
    }

    /// Category over a thin base with prescribed hom-objects; identities and
    /// compositions are the unique arrows.
    pub fn thin(
        base: &Arc<MonoidalCategory>,
        n: usize,
        hom: impl Fn(Obj, Obj) -> Obj,
    ) -> Result<Self, EnrichedError> {
        let c = &base.cat;
        let arrow = |x: Obj, y: Obj| {
            c.hom(x, y)
                .first()
                .copied()
                .ok_or(MonoidalError::NotThin(x, y))
        };
        let hom: Vec<Obj> = (0..n * n).map(|p| hom(p / n, p % n)).collect();
        let h = |x: Obj, y: Obj| hom[x * n + y];
        let ident = (0..n)
            .map(|x| arrow(base.unit, h(x, x)))
            .collect::<Result<_, _>>()?;
        let comp = (0..n * n * n)
            .map(|p| {
                let (x, y, z) = (p / (n * n), (p / n) % n, p % n);
                arrow(base.t(h(y, z), h(x, y)), h(x, z))
            })
            .collect::<Result<_, _>>()?;
        EnrichedCategory {
            base: base.clone(),
            n_obj: n,
            hom,
            ident,
            comp,
        }
        .validated()
    }

    /// Composite of elements `g ∘ f = ∘ ∘ (g ⊗ f) ∘ λ_𝟙⁻¹`.
    pub fn compose_elements(&self, x: Obj, y: Obj, z: Obj, g: Mor, f: Mor) -> Option<Mor> {
        let a = &*self.base;
        a.cat.seq(&[
            a.cat.inverse(a.lambda(a.unit))?,
            a.tm(g, f),
            self.comp(x, y, z),
        ])
    }

    /// `E(w, f) : hom(w,x) → hom(w,y)` for an element `f` of `hom(x,y)`.
    pub fn post(&self, w: Obj, x: Obj, y: Obj, f: Mor) -> Option<Mor> {
        let a = &*self.base;
        let h = self.hom(w, x);
        a.cat
            .seq(&[a.cat.inverse(a.lambda(h))?, a.tr(f, h), self.comp(w, x, y)])
    }

    /// `E(f, w) : hom(y,w) → hom(x,w)` for an element `f` of `hom(x,y)`.
    pub fn pre(&self, x: Obj, y: Obj, w: Obj, f: Mor) -> Option<Mor> {
        let a = &*self.base;
        let h = self.hom(y, w);
        a.cat
            .seq(&[a.cat.inverse(a.rho(h))?, a.tl(h, f), self.comp(x, y, w)])
    }
}

/// Checks typing, the associativity square and both unit triangles.
pub fn check_enriched_category(e: &EnrichedCategory) -> ValidationReport {
    let mut r = ValidationReport::new();
    let n = e.n_obj;
    let a = &*e.base;
    let c = &*a.cat;
    if e.hom.len() != n * n || e.ident.len() != n || e.comp.len() != n * n * n {
        r.push(
            "enriched_category.typing",
            "table lengths do not match the object count",
        );
        return r;
    }
    if let Some(p) = e.hom.iter().position(|&h| h >= a.n_obj()) {
        r.push(
            "enriched_category.typing",
            format!("hom{:?} is not a base object", (p / n, p % n)),
        );
        return r;
    }
    for x in 0..n {
        if !typed(c, e.ident(x), a.unit, e.hom(x, x)) {
            r.push(
                "enriched_category.typing",
                format!("identity of {x} is not 𝟙 → hom({x},{x})"),
            );
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !typed(
                    c,
                    e.comp(x, y, z),
                    a.t(e.hom(y, z), e.hom(x, y)),
                    e.hom(x, z),
                ) {
                    r.push(
                        "enriched_category.typing",
                        format!("composition ({x},{y},{z}) has the wrong endpoints"),
                    );
                }
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    for w in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hyz, hxy, hwx) = (e.hom(y, z), e.hom(x, y), e.hom(w, x));
                    let lhs = c.seq(&[a.tr(e.comp(x, y, z), hwx), e.comp(w, x, z)]);
                    let rhs = c.seq(&[
                        a.alpha(hyz, hxy, hwx),
                        a.tl(hyz, e.comp(w, x, y)),
                        e.comp(w, y, z),
                    ]);
                    r.expect_eq("enriched_category.associativity", lhs, rhs, || {
                        format!("({w},{x},{y},{z})")
                    });
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let h = e.hom(x, y);
            let lhs = c.seq(&[a.tr(e.ident(y), h), e.comp(x, y, y)]);
            r.expect_eq(
                "enriched_category.left_unit",
                lhs,
                Some(a.lambda(h)),
                || format!("({x},{y})"),
            );
            let rhs = c.seq(&[a.tl(h, e.ident(x)), e.comp(x, x, y)]);
            r.expect_eq("enriched_category.right_unit", rhs, Some(a.rho(h)), || {
                format!("({x},{y})")
            });
        }
    }
    r
}

/// The underlying category with its element bookkeeping: morphism `i` of `cat`
/// is the element `elements[i] = (x, y, f)` with `f : 𝟙 → hom(x,y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Underlying {
    pub cat: Arc<FinCategory>,
    pub elements: Vec<(Obj, Obj, Mor)>,
    index: HashMap<(Obj, Obj, Mor), Mor>,
}

impl Underlying {
    pub fn index(&self, x: Obj, y: Obj, f: Mor) -> Option<Mor> {
        self.index.get(&(x, y, f)).copied()
    }

    /// The base morphism `𝟙 → hom(x,y)` of an underlying morphism.
    pub fn element(&self, m: Mor) -> Mor {
        self.elements[m].2
    }
}

/// Underlying category: `Hom(x,y) = A(𝟙, hom(x,y))`, composition `∘ ∘ (g⊗f) ∘ λ_𝟙⁻¹`.
pub fn underlying_category(e: &EnrichedCategory) -> Result<Underlying, EnrichedError> {
    ensure(check_enriched_category(e))?;
    let n = e.n_obj;
    let a = &*e.base;
    let mut elements = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for &f in a.cat.hom(a.unit, e.hom(x, y)) {
                elements.push((x, y, f));
            }
        }
    }
    let index: HashMap<(Obj, Obj, Mor), Mor> =
        elements.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut entries = Vec::new();
    for (fi, &(x, y, f)) in elements.iter().enumerate() {
        for (gi, &(y2, z, g)) in elements.iter().enumerate() {
            if y2 != y {
                continue;
            }
            let h = e
                .compose_elements(x, y, z, g, f)
                .expect("valid enriched category composes");
            entries.push((gi, fi, index[&(x, z, h)]));
        }
    }
    let dom = elements.iter().map(|k| k.0).collect();
    let cod = elements.iter().map(|k| k.1).collect();
    let identity = (0..n).map(|x| index[&(x, x, e.ident(x))]).collect();
    let cat = FinCategory::new(n, dom, cod, identity, entries)?;
    Ok(Underlying {
        cat: Arc::new(cat),
        elements,
        index,
    })
}

/// Opposite category over the reversed-tensor base: `hom'(x,y) = hom(y,x)`,
/// `comp'(x,y,z) = comp(z,y,x)`.
pub fn opposite(e: &EnrichedCategory) -> EnrichedCategory {
    let n = e.n_obj;
    EnrichedCategory {
        base: Arc::new(e.base.reversed_tensor()),
        n_obj: n,
        hom: (0..n * n).map(|p| e.hom(p % n, p / n)).collect(),
        ident: e.ident.clone(),
        comp: (0..n * n * n)
            .map(|p| e.comp(p % n, (p / n) % n, p / (n * n)))
            .collect(),
    }
}

/// The hom bifunctor `L^op × L → A`, `(f, g) ↦ E(x', g) ∘ E(f, y)`.
pub fn hom_functor(e: &EnrichedCategory, u: &Underlying) -> Result<Functor, EnrichedError> {
    let l = &*u.cat;
    let op = l.opposite();
    let source = Arc::new(product_category(&op, l));
    let (n, m) = (e.n_obj, l.n_mor());
    let a = &*e.base;
    let obj_map = (0..n * n).map(|p| e.hom(p / n, p % n)).collect();
    let mut mor_map = Vec::with_capacity(m * m);
    for p in 0..m * m {
        // (f : x' → x in L, g : y → y')
        let ((x1, x, f), (y, y1, g)) = (u.elements[p / m], u.elements[p % m]);
        let before = e.pre(x1, x, y, f);
        let after = e.post(x1, y, y1, g);
        let h = a
            .cat
            .seq_opt(&[before, after])
            .ok_or(EnrichedError::Precondition(
                "hom functor composite undefined".into(),
            ))?;
        mor_map.push(h);
    }
    let f = Functor::new(source, a.cat.clone(), obj_map, mor_map)?;
    ensure(check_functor(&f))?;
    Ok(f)
}

/// Cartesian product over the product base; object `(m, n)` is `m * |N| + n`.
pub fn cartesian_product(e1: &EnrichedCategory, e2: &EnrichedCategory) -> EnrichedCategory {
    let base = Arc::new(product_monoidal(&e1.base, &e2.base));
    let (n1, n2) = (e1.n_obj, e2.n_obj);
    let (b2, m2) = (e2.base.n_obj(), e2.base.cat.n_mor());
    let n = n1 * n2;
    let mut comp = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                comp.push(e1.comp(x / n2, y / n2, z / n2) * m2 + e2.comp(x % n2, y % n2, z % n2));
            }
        }
    }
    EnrichedCategory {
        base,
        n_obj: n,
        hom: (0..n * n)
            .map(|p| {
                let (x, y) = (p / n, p % n);
                e1.hom(x / n2, y / n2) * b2 + e2.hom(x % n2, y % n2)
            })
            .collect(),
        ident: (0..n)
            .map(|x| e1.ident(x / n2) * m2 + e2.ident(x % n2))
            .collect(),
        comp,
    }
}

/// An enriched functor with background `background : A → B` (lax or strong).
/// `components[x * n + y] : F̂(hom(x,y)) → hom(Fx, Fy)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnrichedFunctor {
    pub background: LaxMonoidalFunctor,
    pub source: Arc<EnrichedCategory>,
    pub target: Arc<EnrichedCategory>,
    pub obj_map: Vec<Obj>,
    pub components: Vec<Mor>,
}

impl EnrichedFunctor {
    pub fn obj(&self, x: Obj) -> Obj {
        self.obj_map[x]
    }

    pub fn component(&self, x: Obj, y: Obj) -> Mor {
        self.components[x * self.source.n_obj + y]
    }

    pub fn validated(self) -> Result<Self, EnrichedError> {
        ensure(check_enriched_functor(&self))?;
        Ok(self)
    }

    pub fn identity(e: &Arc<EnrichedCategory>) -> Self {
        let n = e.n_obj;
        EnrichedFunctor {
            background: LaxMonoidalFunctor::identity(&e.base),
            source: e.clone(),
            target: e.clone(),
            obj_map: (0..n).collect(),
            components: (0..n * n).map(|p| e.base.id(e.hom(p / n, p % n))).collect(),
        }
    }

    /// The object pick `x̲ : * → E` with background `* → A` at the unit.
    pub fn point(e: &Arc<EnrichedCategory>, x: Obj) -> Self {
        EnrichedFunctor {
            background: LaxMonoidalFunctor::unit_pick(&e.base),
            source: Arc::new(EnrichedCategory::terminal()),
            target: e.clone(),
            obj_map: vec![x],
            components: vec![e.ident(x)],
        }
    }

    /// True when the background is the identity of the common base.
    pub fn has_identity_background(&self) -> bool {
        self.background == LaxMonoidalFunctor::identity(&self.source.base)
    }

    /// `outer ∘ self`, components `G_{Fx,Fy} ∘ Ĝ(F_{x,y})`.
    pub fn then(&self, outer: &EnrichedFunctor) -> Result<EnrichedFunctor, EnrichedError> {
        if *self.target != *outer.source {
            return Err(EnrichedError::Precondition(
                "composite of enriched functors: endpoints differ".into(),
            ));
        }
        let background = self.background.then(&outer.background)?;
        let c = &*outer.target.base.cat;
        let n = self.source.n_obj;
        let components = (0..n * n)
            .map(|p| {
                let (x, y) = (p / n, p % n);
                c.comp(
                    outer.component(self.obj(x), self.obj(y)),
                    outer.background.mor(self.component(x, y)),
                )
            })
            .collect();
        Ok(EnrichedFunctor {
            background,
            source: self.source.clone(),
            target: outer.target.clone(),
            obj_map: self.obj_map.iter().map(|&x| outer.obj(x)).collect(),
            components,
        })
    }

    /// `F × G` between Cartesian products.
    pub fn product(&self, other: &EnrichedFunctor) -> EnrichedFunctor {
        let source = Arc::new(cartesian_product(&self.source, &other.source));
        let target = Arc::new(cartesian_product(&self.target, &other.target));
        let mut background = self.background.product(&other.background);
        background.source = source.base.clone();
        background.target = target.base.clone();
        let (n2, tn2) = (other.source.n_obj, other.target.n_obj);
        let tm2 = other.target.base.cat.n_mor();
        let n = source.n_obj;
        EnrichedFunctor {
            obj_map: (0..n)
                .map(|x| self.obj(x / n2) * tn2 + other.obj(x % n2))
                .collect(),
            components: (0..n * n)
                .map(|p| {
                    let (x, y) = (p / n, p % n);
                    self.component(x / n2, y / n2) * tm2 + other.component(x % n2, y % n2)
                })
                .collect(),
            background,
            source,
            target,
        }
    }
}

/// Checks the background, typing, the identity axiom and the composition square.
pub fn check_enriched_functor(f: &EnrichedFunctor) -> ValidationReport {
    let mut r = ValidationReport::new();
    let (l, m) = (&*f.source, &*f.target);
    let bg = &f.background;
    if *bg.source != *l.base || *bg.target != *m.base {
        r.push(
            "enriched_functor.typing",
            "background endpoints differ from the bases",
        );
        return r;
    }
    if bg.kind == LaxKind::Oplax {
        r.push("enriched_functor.typing", "background must be lax");
        return r;
    }
    r.absorb(
        "enriched_functor.background",
        check_lax_monoidal_functor(bg),
    );
    let b = &*m.base;
    let c = &*b.cat;
    let n = l.n_obj;
    if f.obj_map.len() != n
        || f.components.len() != n * n
        || f.obj_map.iter().any(|&x| x >= m.n_obj)
    {
        r.push(
            "enriched_functor.typing",
            "table lengths or object indices out of range",
        );
        return r;
    }
    for x in 0..n {
        for y in 0..n {
            if !typed(
                c,
                f.component(x, y),
                bg.obj(l.hom(x, y)),
                m.hom(f.obj(x), f.obj(y)),
            ) {
                r.push(
                    "enriched_functor.typing",
                    format!("component ({x},{y}) has the wrong endpoints"),
                );
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    for x in 0..n {
        let lhs = c.seq(&[bg.unit_cell, bg.mor(l.ident(x)), f.component(x, x)]);
        r.expect_eq(
            "enriched_functor.identity",
            lhs,
            Some(m.ident(f.obj(x))),
            || format!("{x}"),
        );
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hyz, hxy) = (l.hom(y, z), l.hom(x, y));
                let lhs = c.seq(&[bg.mu(hyz, hxy), bg.mor(l.comp(x, y, z)), f.component(x, z)]);
                let rhs = c.seq(&[
                    b.tm(f.component(y, z), f.component(x, y)),
                    m.comp(f.obj(x), f.obj(y), f.obj(z)),
                ]);
                r.expect_eq("enriched_functor.composition", lhs, rhs, || {
                    format!("({x},{y},{z})")
                });
            }
        }
    }
    r
}

/// The underlying functor, `f ↦ F_{x,y} ∘ F̂(f) ∘ F⁰`.
pub fn underlying_functor(
    f: &EnrichedFunctor,
    us: &Underlying,
    ut: &Underlying,
) -> Result<Functor, EnrichedError> {
    let c = &*f.target.base.cat;
    let bg = &f.background;
    let mor_map = us
        .elements
        .iter()
        .map(|&(x, y, e)| {
            let (fx, fy) = (f.obj(x), f.obj(y));
            c.seq(&[bg.unit_cell, bg.mor(e), f.component(x, y)])
                .and_then(|g| ut.index(fx, fy, g))
                .ok_or_else(|| {
                    EnrichedError::Precondition(format!(
                        "image of element ({x},{y},{e}) is not an element"
                    ))
                })
        })
        .collect::<Result<_, _>>()?;
    let fun = Functor::new(us.cat.clone(), ut.cat.clone(), f.obj_map.clone(), mor_map)?;
    ensure(check_functor(&fun))?;
    Ok(fun)
}

/// An enriched transformation `F ⇒ G` with background `ξ̂ : F̂ ⇒ Ĝ`;
/// `components[x] : 𝟙_B → hom(Fx, Gx)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnrichedNat {
    pub background: LaxMonoidalNat,
    pub source: EnrichedFunctor,
    pub target: EnrichedFunctor,
    pub components: Vec<Mor>,
}

impl EnrichedNat {
    pub fn component(&self, x: Obj) -> Mor {
        self.components[x]
    }

    pub fn validated(self) -> Result<Self, EnrichedError> {
        ensure(check_enriched_nat(&self))?;
        Ok(self)
    }

    pub fn identity(f: &EnrichedFunctor) -> Self {
        EnrichedNat {
            background: LaxMonoidalNat::identity(&f.background),
            source: f.clone(),
            target: f.clone(),
            components: f.obj_map.iter().map(|&y| f.target.ident(y)).collect(),
        }
    }

    /// Vertical composite `self · first`, components `self_x ∘ first_x` in the underlying category.
    pub fn after(&self, first: &EnrichedNat) -> Result<EnrichedNat, EnrichedError> {
        if first.target != self.source {
            return Err(EnrichedError::Precondition(
                "vertical composite: endpoints differ".into(),
            ));
        }
        let m = &*self.source.target;
        let components = (0..self.source.source.n_obj)
            .map(|x| {
                let (fx, gx, kx) = (first.source.obj(x), self.source.obj(x), self.target.obj(x));
                m.compose_elements(fx, gx, kx, self.component(x), first.component(x))
                    .ok_or_else(|| {
                        EnrichedError::Precondition("vertical composite undefined".into())
                    })
            })
            .collect::<Result<_, _>>()?;
        Ok(EnrichedNat {
            background: self.background.after(&first.background)?,
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    /// Horizontal composite of `self : F ⇒ G` with `outer : H ⇒ K`, a transformation `HF ⇒ KG`
    /// with components `outer_{Gx} ∘ H(self_x)`.
    pub fn hcomp(&self, outer: &EnrichedNat) -> Result<EnrichedNat, EnrichedError> {
        let source = self.source.then(&outer.source)?;
        let target = self.target.then(&outer.target)?;
        let h = &outer.source;
        let n = &*outer.source.target;
        let c = &*n.base.cat;
        let components = (0..self.source.source.n_obj)
            .map(|x| {
                let (fx, gx) = (self.source.obj(x), self.target.obj(x));
                let hxi = c.seq(&[
                    h.background.unit_cell,
                    h.background.mor(self.component(x)),
                    h.component(fx, gx),
                ]);
                hxi.and_then(|hxi| {
                    n.compose_elements(
                        h.obj(fx),
                        h.obj(gx),
                        outer.target.obj(gx),
                        outer.component(gx),
                        hxi,
                    )
                })
                .ok_or_else(|| EnrichedError::Precondition("horizontal composite undefined".into()))
            })
            .collect::<Result<_, _>>()?;
        Ok(EnrichedNat {
            background: self.background.hcomp(&outer.background)?,
            source,
            target,
            components,
        })
    }
}

fn check_nat_typing(t: &EnrichedNat, r: &mut ValidationReport) {
    let (f, g) = (&t.source, &t.target);
    if f.source != g.source || f.target != g.target {
        r.push("enriched_nat.typing", "functors are not parallel");
        return;
    }
    if t.background.source != f.background || t.background.target != g.background {
        r.push(
            "enriched_nat.typing",
            "background transformation endpoints differ",
        );
        return;
    }
    let m = &*f.target;
    let b = &*m.base;
    if t.components.len() != f.source.n_obj {
        r.push(
            "enriched_nat.typing",
            "component count differs from the object count",
        );
        return;
    }
    for x in 0..f.source.n_obj {
        if !typed(&b.cat, t.component(x), b.unit, m.hom(f.obj(x), g.obj(x))) {
            r.push(
                "enriched_nat.typing",
                format!("component {x} is not an element of hom(F{x}, G{x})"),
            );
        }
    }
}

/// Checks the naturality hexagon: `∘ ∘ (ξ_y ⊗ F_{x,y}) ∘ λ⁻¹ = ∘ ∘ (G_{x,y} ⊗ ξ_x) ∘ ρ⁻¹ ∘ ξ̂`.
pub fn check_enriched_nat(t: &EnrichedNat) -> ValidationReport {
    let mut r = ValidationReport::new();
    check_nat_typing(t, &mut r);
    if !r.is_valid() {
        return r;
    }
    r.absorb(
        "enriched_nat.background",
        check_lax_monoidal_nat(&t.background),
    );
    let (f, g) = (&t.source, &t.target);
    let (l, m) = (&*f.source, &*f.target);
    let b = &*m.base;
    let c = &*b.cat;
    for x in 0..l.n_obj {
        for y in 0..l.n_obj {
            let fh = f.background.obj(l.hom(x, y));
            let gh = g.background.obj(l.hom(x, y));
            let lhs = c.seq_opt(&[
                c.inverse(b.lambda(fh)),
                Some(b.tm(t.component(y), f.component(x, y))),
                Some(m.comp(f.obj(x), f.obj(y), g.obj(y))),
            ]);
            let rhs = c.seq_opt(&[
                Some(t.background.component(l.hom(x, y))),
                c.inverse(b.rho(gh)),
                Some(b.tm(g.component(x, y), t.component(x))),
                Some(m.comp(f.obj(x), g.obj(x), g.obj(y))),
            ]);
            r.expect_eq("enriched_nat.naturality", lhs, rhs, || format!("({x},{y})"));
        }
    }
    r
}

/// The rewritten square `M(Fx, ξ_y) ∘ F_{x,y} = M(ξ_x, Gy) ∘ G_{x,y} ∘ ξ̂`, checked
/// independently of [`check_enriched_nat`].
pub fn check_enriched_nat_rewritten(t: &EnrichedNat) -> ValidationReport {
    let mut r = ValidationReport::new();
    check_nat_typing(t, &mut r);
    if !r.is_valid() {
        return r;
    }
    let (f, g) = (&t.source, &t.target);
    let (l, m) = (&*f.source, &*f.target);
    let c = &*m.base.cat;
    for x in 0..l.n_obj {
        for y in 0..l.n_obj {
            let (fx, fy, gx, gy) = (f.obj(x), f.obj(y), g.obj(x), g.obj(y));
            let lhs = c.seq_opt(&[Some(f.component(x, y)), m.post(fx, fy, gy, t.component(y))]);
            let rhs = c.seq_opt(&[
                Some(t.background.component(l.hom(x, y))),
                Some(g.component(x, y)),
                m.pre(fx, gx, gy, t.component(x)),
            ]);
            r.expect_eq("enriched_nat.rewritten", lhs, rhs, || format!("({x},{y})"));
        }
    }
    r
}

/// The underlying transformation, with components read in the target's underlying category.
pub fn underlying_nat(
    t: &EnrichedNat,
    us: &Underlying,
    ut: &Underlying,
) -> Result<NatTransf, EnrichedError> {
    let source = underlying_functor(&t.source, us, ut)?;
    let target = underlying_functor(&t.target, us, ut)?;
    let components = (0..t.source.source.n_obj)
        .map(|x| {
            ut.index(t.source.obj(x), t.target.obj(x), t.component(x))
                .ok_or_else(|| {
                    EnrichedError::Precondition(format!("component {x} is not an element"))
                })
        })
        .collect::<Result<_, _>>()?;
    let nt = NatTransf {
        source,
        target,
        components,
    };
    ensure(check_nat(&nt))?;
    Ok(nt)
}

fn require_lax(r: &LaxMonoidalFunctor) -> Result<(), EnrichedError> {
    if r.kind == LaxKind::Oplax {
        return Err(EnrichedError::Precondition(
            "pushforward needs a lax monoidal functor".into(),
        ));
    }
    Ok(())
}

/// `R_*(E)`: hom-objects `R(hom(x,y))`, identity `R(1_x) ∘ R⁰`, composition `R(∘) ∘ R²`.
pub fn pushforward(
    r: &LaxMonoidalFunctor,
    e: &EnrichedCategory,
) -> Result<EnrichedCategory, EnrichedError> {
    require_lax(r)?;
    if *r.source != *e.base {
        return Err(EnrichedError::Precondition(
            "pushforward: functor source is not the base".into(),
        ));
    }
    let n = e.n_obj;
    let c = &*r.target.cat;
    let comp = (0..n * n * n)
        .map(|p| {
            let (x, y, z) = (p / (n * n), (p / n) % n, p % n);
            c.comp(r.mor(e.comp(x, y, z)), r.mu(e.hom(y, z), e.hom(x, y)))
        })
        .collect();
    Ok(EnrichedCategory {
        base: r.target.clone(),
        n_obj: n,
        hom: e.hom.iter().map(|&h| r.obj(h)).collect(),
        ident: e
            .ident
            .iter()
            .map(|&i| c.comp(r.mor(i), r.unit_cell))
            .collect(),
        comp,
    })
}

/// `R_*(F)` for a functor with identity background: components `R(F_{x,y})`.
pub fn pushforward_functor(
    r: &LaxMonoidalFunctor,
    f: &EnrichedFunctor,
) -> Result<EnrichedFunctor, EnrichedError> {
    if !f.has_identity_background() {
        return Err(EnrichedError::Precondition(
            "pushforward of a functor needs an identity background".into(),
        ));
    }
    Ok(EnrichedFunctor {
        background: LaxMonoidalFunctor::identity(&r.target),
        source: Arc::new(pushforward(r, &f.source)?),
        target: Arc::new(pushforward(r, &f.target)?),
        obj_map: f.obj_map.clone(),
        components: f.components.iter().map(|&g| r.mor(g)).collect(),
    })
}

/// `R_*(ξ)` for a transformation with identity background: components `R(ξ_x) ∘ R⁰`.
pub fn pushforward_transformation(
    r: &LaxMonoidalFunctor,
    t: &EnrichedNat,
) -> Result<EnrichedNat, EnrichedError> {
    if t.background
        != LaxMonoidalNat::identity(&LaxMonoidalFunctor::identity(&t.source.source.base))
    {
        return Err(EnrichedError::Precondition(
            "pushforward of a transformation needs an identity background".into(),
        ));
    }
    let source = pushforward_functor(r, &t.source)?;
    let target = pushforward_functor(r, &t.target)?;
    let c = &*r.target.cat;
    Ok(EnrichedNat {
        background: LaxMonoidalNat::identity(&source.background),
        components: t
            .components
            .iter()
            .map(|&g| c.comp(r.mor(g), r.unit_cell))
            .collect(),
        source,
        target,
    })
}

/// `φ_* : R_*(E) → R'_*(E)` for a monoidal transformation `φ : R ⇒ R'`.
pub fn pushforward_along_nat(
    phi: &LaxMonoidalNat,
    e: &Arc<EnrichedCategory>,
) -> Result<EnrichedFunctor, EnrichedError> {
    let source = Arc::new(pushforward(&phi.source, e)?);
    let target = Arc::new(pushforward(&phi.target, e)?);
    let n = e.n_obj;
    Ok(EnrichedFunctor {
        background: LaxMonoidalFunctor::identity(&phi.source.target),
        obj_map: (0..n).collect(),
        components: e.hom.iter().map(|&h| phi.component(h)).collect(),
        source,
        target,
    })
}

/// Splits `F` into its background and the functor `F̌ : F̂_*(L) → M` with identity background.
pub fn split_functor(
    f: &EnrichedFunctor,
) -> Result<(LaxMonoidalFunctor, EnrichedFunctor), EnrichedError> {
    let pushed = Arc::new(pushforward(&f.background, &f.source)?);
    let check = EnrichedFunctor {
        background: LaxMonoidalFunctor::identity(&f.target.base),
        source: pushed,
        target: f.target.clone(),
        obj_map: f.obj_map.clone(),
        components: f.components.clone(),
    };
    Ok((f.background.clone(), check))
}

/// Inverse of [`split_functor`]; `check.source` must be `background_*(source)`.
pub fn merge_functor(
    background: &LaxMonoidalFunctor,
    source: &Arc<EnrichedCategory>,
    check: &EnrichedFunctor,
) -> Result<EnrichedFunctor, EnrichedError> {
    if *check.source != pushforward(background, source)? || !check.has_identity_background() {
        return Err(EnrichedError::Precondition(
            "merge: second component is not a functor out of the pushforward".into(),
        ));
    }
    Ok(EnrichedFunctor {
        background: background.clone(),
        source: source.clone(),
        target: check.target.clone(),
        obj_map: check.obj_map.clone(),
        components: check.components.clone(),
    })
}

/// Splits `ξ : F ⇒ G` into `ξ̂` and `ξ̌ : F̌ ⇒ Ǧ ∘ ξ̂_*`.
pub fn split_nat(t: &EnrichedNat) -> Result<(LaxMonoidalNat, EnrichedNat), EnrichedError> {
    let (_, fc) = split_functor(&t.source)?;
    let (_, gc) = split_functor(&t.target)?;
    let xi_star = pushforward_along_nat(&t.background, &t.source.source)?;
    let target = xi_star.then(&gc)?;
    let check = EnrichedNat {
        background: LaxMonoidalNat::identity(&fc.background),
        source: fc,
        target,
        components: t.components.clone(),
    };
    Ok((t.background.clone(), check))
}

/// Inverse of [`split_nat`].
pub fn merge_nat(
    background: &LaxMonoidalNat,
    check: &EnrichedNat,
    source: &EnrichedFunctor,
    target: &EnrichedFunctor,
) -> Result<EnrichedNat, EnrichedError> {
    let (_, fc) = split_functor(source)?;
    if check.source != fc
        || background.source != source.background
        || background.target != target.background
    {
        return Err(EnrichedError::Precondition(
            "merge: components do not fit the given functors".into(),
        ));
    }
    Ok(EnrichedNat {
        background: background.clone(),
        source: source.clone(),
        target: target.clone(),
        components: check.components.clone(),
    })
}

/// A category enriched in finite sets: `hom_sizes[x * n + y]`, `ident[x]` an element
/// of `hom(x,x)`, and `comp[(x,y,z)][g * |hom(x,y)| + f]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetEnrichedCategory {
    pub n_obj: usize,
    pub hom_sizes: Vec<usize>,
    pub ident: Vec<usize>,
    pub comp: Vec<Vec<usize>>,
}

impl SetEnrichedCategory {
    /// The ordinary category with morphisms enumerated by `(x, y, element)`.
    pub fn to_category(&self) -> Result<FinCategory, EnrichedError> {
        let n = self.n_obj;
        let mut offset = vec![0; n * n + 1];
        for p in 0..n * n {
            offset[p + 1] = offset[p] + self.hom_sizes[p];
        }
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        for p in 0..n * n {
            for _ in 0..self.hom_sizes[p] {
                dom.push(p / n);
                cod.push(p % n);
            }
        }
        let mut entries = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (sxy, syz) = (self.hom_sizes[x * n + y], self.hom_sizes[y * n + z]);
                    let table = &self.comp[(x * n + y) * n + z];
                    for g in 0..syz {
                        for f in 0..sxy {
                            entries.push((
                                offset[y * n + z] + g,
                                offset[x * n + y] + f,
                                offset[x * n + z] + table[g * sxy + f],
                            ));
                        }
                    }
                }
            }
        }
        let identity = (0..n).map(|x| offset[x * n + x] + self.ident[x]).collect();
        Ok(FinCategory::new(n, dom, cod, identity, entries)?)
    }
}

/// The lax functor `A(𝟙, −) : A → Set` as explicit element tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalSections {
    pub base: Arc<MonoidalCategory>,
    /// `elements[a]` lists the morphisms `𝟙 → a`.
    pub elements: Vec<Vec<Mor>>,
}

impl GlobalSections {
    pub fn new(base: &Arc<MonoidalCategory>) -> Self {
        let elements = (0..base.n_obj())
            .map(|a| base.cat.hom(base.unit, a).to_vec())
            .collect();
        GlobalSections {
            base: base.clone(),
            elements,
        }
    }

    fn position(&self, a: Obj, f: Mor) -> usize {
        self.elements[a]
            .iter()
            .position(|&g| g == f)
            .expect("element of the right hom-set")
    }

    /// `R(h) : A(𝟙, a) → A(𝟙, b)`, post-composition.
    pub fn map(&self, h: Mor, i: usize) -> usize {
        let c = &*self.base.cat;
        self.position(c.cod(h), c.comp(h, self.elements[c.dom(h)][i]))
    }

    /// `R²(g, f) = (g ⊗ f) ∘ λ_𝟙⁻¹`.
    pub fn mult(&self, a: Obj, b: Obj, i: usize, j: usize) -> usize {
        let m = &*self.base;
        let f = m.seq(&[
            m.cat.inv(m.lambda(m.unit)),
            m.tm(self.elements[a][i], self.elements[b][j]),
        ]);
        self.position(m.t(a, b), f)
    }

    /// `R⁰` picks the identity of `𝟙`.
    pub fn unit(&self) -> usize {
        self.position(self.base.unit, self.base.id(self.base.unit))
    }

    /// Pushforward of an enriched category along `A(𝟙, −)`.
    pub fn pushforward(&self, e: &EnrichedCategory) -> Result<SetEnrichedCategory, EnrichedError> {
        if *e.base != *self.base {
            return Err(EnrichedError::Precondition(
                "global sections of a different base".into(),
            ));
        }
        let n = e.n_obj;
        let size = |x: Obj, y: Obj| self.elements[e.hom(x, y)].len();
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut table = Vec::with_capacity(size(y, z) * size(x, y));
                    for g in 0..size(y, z) {
                        for f in 0..size(x, y) {
                            table.push(
                                self.map(
                                    e.comp(x, y, z),
                                    self.mult(e.hom(y, z), e.hom(x, y), g, f),
                                ),
                            );
                        }
                    }
                    comp.push(table);
                }
            }
        }
        Ok(SetEnrichedCategory {
            n_obj: n,
            hom_sizes: e.hom.iter().map(|&h| self.elements[h].len()).collect(),
            ident: (0..n).map(|x| self.map(e.ident(x), self.unit())).collect(),
            comp,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_cat::{check_category, iso_search, Budget};
    use crate::monoidal_cat::check_algebra;

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

    fn chain2() -> Arc<EnrichedCategory> {
        Arc::new(EnrichedCategory::thin(&lattice2(), 2, |x, y| usize::from(x <= y)).unwrap())
    }

    fn heyting4() -> Arc<EnrichedCategory> {
        Arc::new(EnrichedCategory::thin(&lattice4(), 4, |x, y| (!x | y) & 3).unwrap())
    }

    #[test]
    fn preorder_over_lattice2_is_valid_and_thin() {
        let e = chain2();
        let u = underlying_category(&e).unwrap();
        assert!(check_category(&u.cat).is_valid());
        assert_eq!(u.cat.n_mor(), 3);
        assert_eq!(u.cat.hom(1, 0).len(), 0);
    }

    #[test]
    fn non_transitive_composition_is_rejected() {
        let mut e = (*chain2()).clone();
        e.hom[1] = 0;
        assert!(!check_enriched_category(&e).is_valid());
    }

    #[test]
    fn opposite_is_an_involution_and_commutes_with_underlying() {
        for e in [chain2(), heyting4()] {
            assert_eq!(opposite(&opposite(&e)), *e);
            let op = opposite(&e);
            assert!(check_enriched_category(&op).is_valid());
            let u = underlying_category(&e).unwrap();
            let uo = underlying_category(&op).unwrap();
            let expected = Arc::new(u.cat.opposite());
            assert!(iso_search(&uo.cat, &expected, Budget::DEFAULT)
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn algebra_category_and_points() {
        let z2 = Arc::new(MonoidalCategory::discrete_monoid(&[vec![0, 1], vec![1, 0]], 0).unwrap());
        let alg = AlgebraObject {
            host: z2.clone(),
            carrier: 0,
            mult: 0,
            unit: 0,
            commutative: false,
        };
        assert!(check_algebra(&alg, None).is_valid());
        let e = Arc::new(EnrichedCategory::from_algebra(&alg).validated().unwrap());
        let u = underlying_category(&e).unwrap();
        assert_eq!((u.cat.n_obj(), u.cat.n_mor()), (1, 1));
        assert!(check_enriched_functor(&EnrichedFunctor::point(&e, 0)).is_valid());
        for x in 0..2 {
            let p = EnrichedFunctor::point(&chain2(), x);
            assert!(check_enriched_functor(&p).is_valid());
        }
    }

    #[test]
    fn functor_composition_and_underlying() {
        let e = heyting4();
        let id = EnrichedFunctor::identity(&e);
        assert!(check_enriched_functor(&id).is_valid());
        assert_eq!(id.then(&id).unwrap(), id);
        let p = EnrichedFunctor::point(&e, 2);
        let comp = p.then(&id).unwrap();
        assert_eq!(comp, p);
        let ue = underlying_category(&e).unwrap();
        let ut = underlying_category(&EnrichedCategory::terminal()).unwrap();
        let up = underlying_functor(&p, &ut, &ue).unwrap();
        assert_eq!(up.obj_map, vec![2]);
        let idn = EnrichedNat::identity(&id);
        assert!(check_enriched_nat(&idn).is_valid());
        assert!(check_enriched_nat_rewritten(&idn).is_valid());
        assert_eq!(idn.after(&idn).unwrap(), idn);
        assert!(check_enriched_nat(&idn.hcomp(&idn).unwrap()).is_valid());
    }

    #[test]
    fn hom_functor_is_a_functor() {
        let e = heyting4();
        let u = underlying_category(&e).unwrap();
        assert!(hom_functor(&e, &u).is_ok());
    }

    #[test]
    fn pushforwards() {
        let e = heyting4();
        assert_eq!(
            pushforward(&LaxMonoidalFunctor::identity(&e.base), &e).unwrap(),
            *e
        );
        let bit0 =
            LaxMonoidalFunctor::thin(&lattice4(), &lattice2(), vec![0, 1, 0, 1], LaxKind::Strong)
                .unwrap();
        let pushed = pushforward(&bit0, &e).unwrap();
        assert!(check_enriched_category(&pushed).is_valid());
        let gs = GlobalSections::new(&e.base);
        let sets = gs.pushforward(&e).unwrap().to_category().unwrap();
        assert!(check_category(&sets).is_valid());
        let u = underlying_category(&e).unwrap();
        assert!(iso_search(&Arc::new(sets), &u.cat, Budget::DEFAULT)
            .unwrap()
            .is_some());
    }

    #[test]
    fn split_and_merge_round_trip() {
        let e = heyting4();
        for f in [EnrichedFunctor::identity(&e), EnrichedFunctor::point(&e, 1)] {
            let (bg, check) = split_functor(&f).unwrap();
            assert!(check_enriched_functor(&check).is_valid());
            assert_eq!(merge_functor(&bg, &f.source, &check).unwrap(), f);
            let t = EnrichedNat::identity(&f);
            let (xb, xc) = split_nat(&t).unwrap();
            assert!(check_enriched_nat(&xc).is_valid());
            assert_eq!(merge_nat(&xb, &xc, &f, &f).unwrap(), t);
        }
    }

    #[test]
    fn cartesian_product_is_valid() {
        let p = cartesian_product(&chain2(), &heyting4());
        assert!(check_enriched_category(&p).is_valid());
        let f =
            EnrichedFunctor::identity(&chain2()).product(&EnrichedFunctor::identity(&heyting4()));
        assert!(check_enriched_functor(&f).is_valid());
    }
}
