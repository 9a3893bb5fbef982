//! Enriched monoidal, braided and symmetric categories, the reversed category,
//! enriched monoidal functors and transformations, and enriched half-braidings.
//!
//! The tensor of an enriched monoidal category is an enriched functor
//! `E × E → E` whose background is the tensor of a braided base with the
//! braided comparison cells. Coherence components are stored as elements
//! (background morphisms out of `𝟙`) and assembled into enriched
//! transformations on demand.

use std::sync::Arc;

use crate::core_cat::{Budget, Functor, Mor, NatTransf, Obj, ValidationReport};
use crate::enriched_core::{
    cartesian_product, check_enriched_category, check_enriched_functor, check_enriched_nat, ensure,
    underlying_category, underlying_functor, underlying_nat, EnrichedCategory, EnrichedError,
    EnrichedFunctor, EnrichedNat, Underlying,
};
use crate::monoidal_cat::{
    braided_tensor_lax_structure, check_braided, check_braided_functor, check_half_braiding,
    check_lax_monoidal_functor, check_lax_monoidal_nat, check_monoidal, enumerate_half_braidings,
    product_monoidal, AlgebraObject, BraidedStructure, HalfBraidingOrd, LaxKind,
    LaxMonoidalFunctor, LaxMonoidalNat, MonoidalCategory, MonoidalError,
};

fn typed(e: &EnrichedCategory, f: Mor, x: Obj, y: Obj) -> bool {
    let c = &*e.base.cat;
    f < c.n_mor() && c.dom(f) == e.base.unit && c.cod(f) == e.hom(x, y)
}

/// Moves a functor onto a source whose tables coincide index-for-index.
pub(crate) fn rebase(mut f: EnrichedFunctor, source: &Arc<EnrichedCategory>) -> EnrichedFunctor {
    f.background.source = source.base.clone();
    f.background.functor.source = source.base.cat.clone();
    f.source = source.clone();
    f
}

/// An enriched monoidal category.
///
/// `tensor.components[X * n² + Y]` with `X = x1 * n + y1`, `Y = x2 * n + y2` is
/// `hom(x1,x2) ⊗ hom(y1,y2) → hom(x1⊗y1, x2⊗y2)`. `assoc[(x * n + y) * n + z]`,
/// `lunitor[x]` and `runitor[x]` are elements of the relevant hom-objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedMonoidalCategory {
    pub host: Arc<EnrichedCategory>,
    pub braiding: BraidedStructure,
    pub tensor: EnrichedFunctor,
    pub unit: Obj,
    pub assoc: Vec<Mor>,
    pub lunitor: Vec<Mor>,
    pub runitor: Vec<Mor>,
}

impl EnrichedMonoidalCategory {
    /// Assembles the tensor functor from its object map and components.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        host: Arc<EnrichedCategory>,
        braiding: BraidedStructure,
        tensor_obj: Vec<Obj>,
        tensor_components: Vec<Mor>,
        unit: Obj,
        assoc: Vec<Mor>,
        lunitor: Vec<Mor>,
        runitor: Vec<Mor>,
    ) -> Self {
        let tensor = EnrichedFunctor {
            background: braided_tensor_lax_structure(&braiding),
            source: Arc::new(cartesian_product(&host, &host)),
            target: host.clone(),
            obj_map: tensor_obj,
            components: tensor_components,
        };
        EnrichedMonoidalCategory {
            host,
            braiding,
            tensor,
            unit,
            assoc,
            lunitor,
            runitor,
        }
    }

    pub fn n_obj(&self) -> usize {
        self.host.n_obj
    }

    pub fn base(&self) -> &Arc<MonoidalCategory> {
        &self.host.base
    }

    pub fn t(&self, x: Obj, y: Obj) -> Obj {
        self.tensor.obj(x * self.n_obj() + y)
    }

    /// `⊗_{(x1,y1),(x2,y2)} : hom(x1,x2) ⊗ hom(y1,y2) → hom(x1⊗y1, x2⊗y2)`.
    pub fn tensor_component(&self, x1: Obj, y1: Obj, x2: Obj, y2: Obj) -> Mor {
        let n = self.n_obj();
        self.tensor.component(x1 * n + y1, x2 * n + y2)
    }

    pub fn alpha(&self, x: Obj, y: Obj, z: Obj) -> Mor {
        let n = self.n_obj();
        self.assoc[(x * n + y) * n + z]
    }

    pub fn validated(self) -> Result<Self, EnrichedError> {
        ensure(check_enriched_monoidal(&self))?;
        Ok(self)
    }

    /// The associator as an enriched transformation `⊗(⊗ × 1) ⇒ ⊗(1 × ⊗)` over `α_A`.
    pub fn associator_nat(&self) -> Result<EnrichedNat, EnrichedError> {
        let e = &self.host;
        let id = EnrichedFunctor::identity(e);
        let left = self.tensor.product(&id).then(&self.tensor)?;
        let right = rebase(id.product(&self.tensor).then(&self.tensor)?, &left.source);
        let a = &e.base;
        let n = a.n_obj();
        let components = (0..n * n * n)
            .map(|p| a.alpha(p / (n * n), (p / n) % n, p % n))
            .collect();
        let background = LaxMonoidalNat {
            nat: NatTransf {
                source: left.background.functor.clone(),
                target: right.background.functor.clone(),
                components,
            },
            source: left.background.clone(),
            target: right.background.clone(),
        };
        Ok(EnrichedNat {
            background,
            source: left,
            target: right,
            components: self.assoc.clone(),
        })
    }

    /// The left unitor as an enriched transformation `⊗(𝟙̲ × 1) ⇒ 1` over `λ_A`.
    pub fn lunitor_nat(&self) -> Result<EnrichedNat, EnrichedError> {
        let e = &self.host;
        let id = EnrichedFunctor::identity(e);
        let left = rebase(
            EnrichedFunctor::point(e, self.unit)
                .product(&id)
                .then(&self.tensor)?,
            e,
        );
        self.unitor_nat(left, id, &e.base.lunitor, &self.lunitor)
    }

    /// The right unitor as an enriched transformation `⊗(1 × 𝟙̲) ⇒ 1` over `ρ_A`.
    pub fn runitor_nat(&self) -> Result<EnrichedNat, EnrichedError> {
        let e = &self.host;
        let id = EnrichedFunctor::identity(e);
        let left = rebase(
            id.product(&EnrichedFunctor::point(e, self.unit))
                .then(&self.tensor)?,
            e,
        );
        self.unitor_nat(left, id, &e.base.runitor, &self.runitor)
    }

    fn unitor_nat(
        &self,
        left: EnrichedFunctor,
        id: EnrichedFunctor,
        cells: &[Mor],
        comps: &[Mor],
    ) -> Result<EnrichedNat, EnrichedError> {
        let background = LaxMonoidalNat {
            nat: NatTransf {
                source: left.background.functor.clone(),
                target: id.background.functor.clone(),
                components: cells.to_vec(),
            },
            source: left.background.clone(),
            target: id.background.clone(),
        };
        Ok(EnrichedNat {
            background,
            source: left,
            target: id,
            components: comps.to_vec(),
        })
    }

    /// The one-object category `*^A` of a commutative algebra, with tensor the multiplication.
    pub fn from_commutative_algebra(
        braiding: &BraidedStructure,
        alg: &AlgebraObject,
    ) -> Result<Self, EnrichedError> {
        if *braiding.host != *alg.host {
            return Err(EnrichedError::Precondition(
                "algebra and braiding live on different categories".into(),
            ));
        }
        let host = Arc::new(EnrichedCategory::from_algebra(alg));
        let u = alg.unit;
        Self::new(
            host,
            braiding.clone(),
            vec![0],
            vec![alg.mult],
            0,
            vec![u],
            vec![u],
            vec![u],
        )
        .validated()
    }

    /// Enriched monoidal structure over a thin base; every component is the unique arrow.
    pub fn thin(
        braiding: &BraidedStructure,
        n: usize,
        hom: impl Fn(Obj, Obj) -> Obj,
        tensor: impl Fn(Obj, Obj) -> Obj,
        unit: Obj,
    ) -> Result<Self, EnrichedError> {
        let host = Arc::new(EnrichedCategory::thin(&braiding.host, n, hom)?);
        let a = &*host.base;
        let arrow = |x: Obj, y: Obj| {
            a.cat
                .hom(x, y)
                .first()
                .copied()
                .ok_or(MonoidalError::NotThin(x, y))
        };
        let h = |x: Obj, y: Obj| host.hom(x, y);
        let tensor_obj: Vec<Obj> = (0..n * n).map(|p| tensor(p / n, p % n)).collect();
        let t = |x: Obj, y: Obj| tensor_obj[x * n + y];
        let nn = n * n;
        let tensor_components = (0..nn * nn)
            .map(|p| {
                let ((x1, y1), (x2, y2)) =
                    (((p / nn) / n, (p / nn) % n), ((p % nn) / n, (p % nn) % n));
                arrow(a.t(h(x1, x2), h(y1, y2)), h(t(x1, y1), t(x2, y2)))
            })
            .collect::<Result<_, _>>()?;
        let assoc = (0..nn * n)
            .map(|p| {
                let (x, y, z) = (p / nn, (p / n) % n, p % n);
                arrow(a.unit, h(t(t(x, y), z), t(x, t(y, z))))
            })
            .collect::<Result<_, _>>()?;
        let lunitor = (0..n)
            .map(|x| arrow(a.unit, h(t(unit, x), x)))
            .collect::<Result<_, _>>()?;
        let runitor = (0..n)
            .map(|x| arrow(a.unit, h(t(x, unit), x)))
            .collect::<Result<_, _>>()?;
        Self::new(
            host,
            braiding.clone(),
            tensor_obj,
            tensor_components,
            unit,
            assoc,
            lunitor,
            runitor,
        )
        .validated()
    }
}

/// Checks typing, the tensor background, functoriality of the tensor, the three
/// coherence transformations and the monoidal axioms of the underlying data.
pub fn check_enriched_monoidal(em: &EnrichedMonoidalCategory) -> ValidationReport {
    let mut r = ValidationReport::new();
    let e = &*em.host;
    let n = e.n_obj;
    if *em.braiding.host != *e.base {
        r.push("enriched_monoidal.typing", "braiding is not on the base");
    }
    if *em.tensor.source != cartesian_product(e, e) || *em.tensor.target != *e {
        r.push(
            "enriched_monoidal.typing",
            "tensor is not a functor E × E → E",
        );
    }
    if em.unit >= n || em.assoc.len() != n * n * n || em.lunitor.len() != n || em.runitor.len() != n
    {
        r.push(
            "enriched_monoidal.typing",
            "unit or coherence tables out of range",
        );
    }
    if !r.is_valid() {
        return r;
    }
    r.absorb("enriched_monoidal.host", check_enriched_category(e));
    if em.tensor.background != braided_tensor_lax_structure(&em.braiding) {
        r.push(
            "enriched_monoidal.background",
            "tensor background differs from the braided tensor of the base",
        );
    }
    r.absorb(
        "enriched_monoidal.tensor",
        check_enriched_functor(&em.tensor),
    );
    if !r.is_valid() {
        return r;
    }
    for (name, nat) in [
        ("associator", em.associator_nat()),
        ("lunitor", em.lunitor_nat()),
        ("runitor", em.runitor_nat()),
    ] {
        match nat {
            Ok(t) => r.absorb(&format!("enriched_monoidal.{name}"), check_enriched_nat(&t)),
            Err(err) => r.push("enriched_monoidal.typing", format!("{name}: {err}")),
        }
    }
    if !r.is_valid() {
        return r;
    }
    match underlying_monoidal(em) {
        Ok((m, _)) => r.absorb("enriched_monoidal.underlying", check_monoidal(&m)),
        Err(err) => r.push("enriched_monoidal.underlying", err.to_string()),
    }
    r
}

/// The underlying monoidal category, with the element bookkeeping of its morphisms.
/// Unvalidated; see [`check_enriched_monoidal`].
pub fn underlying_monoidal(
    em: &EnrichedMonoidalCategory,
) -> Result<(MonoidalCategory, Underlying), EnrichedError> {
    let u = underlying_category(&em.host)?;
    let a = &*em.host.base;
    let bg = &em.tensor.background;
    let n = em.n_obj();
    let m = u.cat.n_mor();
    let lookup = |x: Obj, y: Obj, f: Option<Mor>| {
        f.and_then(|f| u.index(x, y, f)).ok_or_else(|| {
            EnrichedError::Precondition(format!(
                "no underlying morphism {x} → {y} for this element"
            ))
        })
    };
    let mut tensor_mor = Vec::with_capacity(m * m);
    for p in 0..m * m {
        let ((x1, x2, f), (y1, y2, g)) = (u.elements[p / m], u.elements[p % m]);
        let el = a.cat.seq(&[
            bg.unit_cell,
            a.tm(f, g),
            em.tensor_component(x1, y1, x2, y2),
        ]);
        tensor_mor.push(lookup(em.t(x1, y1), em.t(x2, y2), el)?);
    }
    let mut assoc = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                assoc.push(lookup(
                    em.t(em.t(x, y), z),
                    em.t(x, em.t(y, z)),
                    Some(em.alpha(x, y, z)),
                )?);
            }
        }
    }
    let lunitor = (0..n)
        .map(|x| lookup(em.t(em.unit, x), x, Some(em.lunitor[x])))
        .collect::<Result<_, _>>()?;
    let runitor = (0..n)
        .map(|x| lookup(em.t(x, em.unit), x, Some(em.runitor[x])))
        .collect::<Result<_, _>>()?;
    let mc = MonoidalCategory {
        cat: u.cat.clone(),
        tensor_obj: em.tensor.obj_map.clone(),
        tensor_mor,
        unit: em.unit,
        assoc,
        lunitor,
        runitor,
    };
    Ok((mc, u))
}

/// The reversed category over the anti-braided base: `x ⊗' y = y ⊗ x`, tensor components
/// `⊗_{(y1,x1),(y2,x2)} ∘ c_{hom(x1,x2), hom(y1,y2)}`, associator `α⁻¹_{z,y,x}`, `λ' = ρ`, `ρ' = λ`.
pub fn reversed(em: &EnrichedMonoidalCategory) -> Result<EnrichedMonoidalCategory, EnrichedError> {
    reversed_with(em, &em.braiding)
}

/// The reversed construction with the swap in the tensor components taken from `swap`.
/// Only `swap = em.braiding` is correct in general.
pub fn reversed_with(
    em: &EnrichedMonoidalCategory,
    swap: &BraidedStructure,
) -> Result<EnrichedMonoidalCategory, EnrichedError> {
    let (_, u) = underlying_monoidal(em)?;
    let e = &em.host;
    let a = &*e.base;
    let n = em.n_obj();
    let nn = n * n;
    let tensor_obj = (0..nn).map(|p| em.t(p % n, p / n)).collect();
    let tensor_components = (0..nn * nn)
        .map(|p| {
            let ((x1, y1), (x2, y2)) = (((p / nn) / n, (p / nn) % n), ((p % nn) / n, (p % nn) % n));
            a.cat.comp(
                em.tensor_component(y1, x1, y2, x2),
                swap.c(e.hom(x1, x2), e.hom(y1, y2)),
            )
        })
        .collect();
    let mut assoc = Vec::with_capacity(nn * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let f = u
                    .index(em.t(em.t(z, y), x), em.t(z, em.t(y, x)), em.alpha(z, y, x))
                    .and_then(|f| u.cat.inverse(f))
                    .ok_or_else(|| {
                        EnrichedError::Precondition(format!(
                            "associator at ({z},{y},{x}) is not invertible"
                        ))
                    })?;
                assoc.push(u.element(f));
            }
        }
    }
    Ok(EnrichedMonoidalCategory::new(
        e.clone(),
        em.braiding.reversed(),
        tensor_obj,
        tensor_components,
        em.unit,
        assoc,
        em.runitor.clone(),
        em.lunitor.clone(),
    ))
}

/// The symmetry `A × A → A × A`, strong with identity cells.
fn swap_background(a: &Arc<MonoidalCategory>) -> LaxMonoidalFunctor {
    let p = Arc::new(product_monoidal(a, a));
    let (n, m) = (a.n_obj(), a.cat.n_mor());
    let functor = Functor {
        source: p.cat.clone(),
        target: p.cat.clone(),
        obj_map: (0..n * n).map(|q| (q % n) * n + q / n).collect(),
        mor_map: (0..m * m).map(|q| (q % m) * m + q / m).collect(),
    };
    let nn = n * n;
    let mult = (0..nn * nn)
        .map(|q| p.id(functor.obj(p.t(q / nn, q % nn))))
        .collect();
    LaxMonoidalFunctor {
        unit_cell: p.id(p.unit),
        mult,
        functor,
        source: p.clone(),
        target: p,
        kind: LaxKind::Strong,
    }
}

/// The swap `Σ : E × E → E × E`.
pub fn swap_functor(e: &Arc<EnrichedCategory>) -> EnrichedFunctor {
    let background = swap_background(&e.base);
    let ee = Arc::new(cartesian_product(e, e));
    let n = e.n_obj;
    let nn = n * n;
    let swap = |q: Obj| (q % n) * n + q / n;
    EnrichedFunctor {
        components: (0..nn * nn)
            .map(|q| ee.base.id(ee.hom(swap(q / nn), swap(q % nn))))
            .collect(),
        obj_map: (0..nn).map(swap).collect(),
        background,
        source: ee.clone(),
        target: ee,
    }
}

/// An enriched braiding `c_{x,y} ∈ hom(x⊗y, y⊗x)`, `braiding[x * n + y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedBraidedCategory {
    pub host: EnrichedMonoidalCategory,
    pub braiding: Vec<Mor>,
    pub symmetric: bool,
}

impl EnrichedBraidedCategory {
    pub fn c(&self, x: Obj, y: Obj) -> Mor {
        self.braiding[x * self.host.n_obj() + y]
    }

    pub fn validated(self) -> Result<Self, EnrichedError> {
        ensure(check_enriched_braided(&self))?;
        Ok(self)
    }

    /// The braiding as an enriched transformation `⊗ ⇒ ⊗ ∘ Σ` over the base braiding.
    pub fn braiding_nat(&self) -> Result<EnrichedNat, EnrichedError> {
        let em = &self.host;
        let target = swap_functor(&em.host).then(&em.tensor)?;
        let b = &em.braiding;
        let n = b.host.n_obj();
        let components = (0..n * n).map(|p| b.c(p / n, p % n)).collect();
        let background = LaxMonoidalNat {
            nat: NatTransf {
                source: em.tensor.background.functor.clone(),
                target: target.background.functor.clone(),
                components,
            },
            source: em.tensor.background.clone(),
            target: target.background.clone(),
        };
        Ok(EnrichedNat {
            background,
            source: em.tensor.clone(),
            target,
            components: self.braiding.clone(),
        })
    }

    /// Symmetric braiding on a thin enriched monoidal category.
    pub fn thin(host: EnrichedMonoidalCategory) -> Result<Self, EnrichedError> {
        let a = host.base().clone();
        let n = host.n_obj();
        let braiding = (0..n * n)
            .map(|p| {
                let (x, y) = (p / n, p % n);
                let h = host.host.hom(host.t(x, y), host.t(y, x));
                a.cat
                    .hom(a.unit, h)
                    .first()
                    .copied()
                    .ok_or(MonoidalError::NotThin(a.unit, h))
            })
            .collect::<Result<_, _>>()?;
        EnrichedBraidedCategory {
            host,
            braiding,
            symmetric: true,
        }
        .validated()
    }
}

/// The underlying braided category.
pub fn underlying_braided(
    eb: &EnrichedBraidedCategory,
) -> Result<(BraidedStructure, Underlying), EnrichedError> {
    let (m, u) = underlying_monoidal(&eb.host)?;
    let n = eb.host.n_obj();
    let braiding = (0..n * n)
        .map(|p| {
            let (x, y) = (p / n, p % n);
            u.index(eb.host.t(x, y), eb.host.t(y, x), eb.c(x, y))
                .ok_or_else(|| {
                    EnrichedError::Precondition(format!("braiding ({x},{y}) is not an element"))
                })
        })
        .collect::<Result<_, _>>()?;
    Ok((
        BraidedStructure {
            host: Arc::new(m),
            braiding,
            symmetric: eb.symmetric,
        },
        u,
    ))
}

/// Checks a symmetric base, the host, the braiding transformation and the
/// underlying braided (and, when flagged, symmetric) axioms.
pub fn check_enriched_braided(eb: &EnrichedBraidedCategory) -> ValidationReport {
    let mut r = ValidationReport::new();
    let em = &eb.host;
    let b = &em.braiding;
    let nb = b.host.n_obj();
    let base_symmetric =
        b.symmetric && (0..nb).all(|x| (0..nb).all(|y| b.double_braiding_trivial(x, y)));
    if !base_symmetric {
        r.push(
            "enriched_braided.base",
            "background braiding is not symmetric",
        );
        return r;
    }
    r.absorb("enriched_braided.host", check_enriched_monoidal(em));
    let n = em.n_obj();
    if eb.braiding.len() != n * n {
        r.push(
            "enriched_braided.typing",
            "braiding table has the wrong size",
        );
    }
    if !r.is_valid() {
        return r;
    }
    for x in 0..n {
        for y in 0..n {
            if !typed(&em.host, eb.c(x, y), em.t(x, y), em.t(y, x)) {
                r.push(
                    "enriched_braided.typing",
                    format!("component ({x},{y}) is not an element of hom(x⊗y, y⊗x)"),
                );
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    match eb.braiding_nat() {
        Ok(t) => r.absorb("enriched_braided.braiding", check_enriched_nat(&t)),
        Err(err) => r.push("enriched_braided.typing", err.to_string()),
    }
    if !r.is_valid() {
        return r;
    }
    match underlying_braided(eb) {
        Ok((ub, _)) => {
            r.absorb("enriched_braided.underlying", check_braided(&ub));
            if eb.symmetric {
                for x in 0..n {
                    for y in 0..n {
                        if !ub.double_braiding_trivial(x, y) {
                            r.push(
                                "enriched_braided.symmetry",
                                format!("c_{{{y},{x}}} ∘ c_{{{x},{y}}} is not the identity"),
                            );
                        }
                    }
                }
            }
        }
        Err(err) => r.push("enriched_braided.underlying", err.to_string()),
    }
    r
}

/// [`check_enriched_braided`] plus the requirement that the structure is flagged symmetric.
pub fn check_enriched_symmetric(eb: &EnrichedBraidedCategory) -> ValidationReport {
    let mut r = check_enriched_braided(eb);
    if !eb.symmetric {
        r.push(
            "enriched_braided.symmetry",
            "structure is not flagged symmetric",
        );
    }
    r
}

/// Enriched monoidal functor: an enriched functor with `F²_{x,y} ∈ hom(Fx⊗Fy, F(x⊗y))`
/// (`mult[x * n + y]`) and `F⁰ ∈ hom(𝟙, F𝟙)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedMonoidalFunctor {
    pub functor: EnrichedFunctor,
    pub source: Arc<EnrichedMonoidalCategory>,
    pub target: Arc<EnrichedMonoidalCategory>,
    pub mult: Vec<Mor>,
    pub unit_cell: Mor,
}

impl EnrichedMonoidalFunctor {
    pub fn identity(em: &Arc<EnrichedMonoidalCategory>) -> Self {
        let n = em.n_obj();
        EnrichedMonoidalFunctor {
            functor: EnrichedFunctor::identity(&em.host),
            source: em.clone(),
            target: em.clone(),
            mult: (0..n * n)
                .map(|p| em.host.ident(em.t(p / n, p % n)))
                .collect(),
            unit_cell: em.host.ident(em.unit),
        }
    }

    pub fn mu(&self, x: Obj, y: Obj) -> Mor {
        self.mult[x * self.source.n_obj() + y]
    }

    /// `F² : ⊗ ∘ (F × F) ⇒ F ∘ ⊗` over `F̂²`.
    pub fn mult_nat(&self) -> Result<EnrichedNat, EnrichedError> {
        let (l, m) = (&self.source, &self.target);
        let f = &self.functor;
        let source = f.product(f).then(&m.tensor)?;
        let target = l.tensor.then(f)?;
        let fb = &f.background;
        let background = LaxMonoidalNat {
            nat: NatTransf {
                source: source.background.functor.clone(),
                target: target.background.functor.clone(),
                components: fb.mult.clone(),
            },
            source: source.background.clone(),
            target: target.background.clone(),
        };
        Ok(EnrichedNat {
            background,
            source,
            target,
            components: self.mult.clone(),
        })
    }

    /// `F⁰ : 𝟙̲_M ⇒ F ∘ 𝟙̲_L` over `F̂⁰`.
    pub fn unit_nat(&self) -> Result<EnrichedNat, EnrichedError> {
        let (l, m) = (&self.source, &self.target);
        let source = EnrichedFunctor::point(&m.host, m.unit);
        let target = EnrichedFunctor::point(&l.host, l.unit).then(&self.functor)?;
        let background = LaxMonoidalNat {
            nat: NatTransf {
                source: source.background.functor.clone(),
                target: target.background.functor.clone(),
                components: vec![self.functor.background.unit_cell],
            },
            source: source.background.clone(),
            target: target.background.clone(),
        };
        Ok(EnrichedNat {
            background,
            source,
            target,
            components: vec![self.unit_cell],
        })
    }

    /// The underlying strong monoidal functor, unvalidated.
    pub fn underlying(&self) -> Result<LaxMonoidalFunctor, EnrichedError> {
        let (ml, ul) = underlying_monoidal(&self.source)?;
        let (mm, um) = underlying_monoidal(&self.target)?;
        let f = &self.functor;
        let functor = underlying_functor(f, &ul, &um)?;
        let n = self.source.n_obj();
        let missing = || EnrichedError::Precondition("monoidal cell is not an element".into());
        let mult = (0..n * n)
            .map(|p| {
                let (x, y) = (p / n, p % n);
                let (fx, fy) = (f.obj(x), f.obj(y));
                um.index(
                    self.target.t(fx, fy),
                    f.obj(self.source.t(x, y)),
                    self.mu(x, y),
                )
                .ok_or_else(missing)
            })
            .collect::<Result<_, _>>()?;
        let unit_cell = um
            .index(self.target.unit, f.obj(self.source.unit), self.unit_cell)
            .ok_or_else(missing)?;
        Ok(LaxMonoidalFunctor {
            source: Arc::new(ml),
            target: Arc::new(mm),
            functor,
            unit_cell,
            mult,
            kind: LaxKind::Strong,
        })
    }
}

/// Checks the enriched functor, a strong braided background, the transformations
/// `F²` and `F⁰`, and that the underlying functor is strong monoidal.
pub fn check_enriched_monoidal_functor(f: &EnrichedMonoidalFunctor) -> ValidationReport {
    let mut r = ValidationReport::new();
    let (l, m) = (&*f.source, &*f.target);
    let fun = &f.functor;
    if *fun.source != *l.host || *fun.target != *m.host {
        r.push(
            "enriched_monoidal_functor.typing",
            "functor endpoints differ from the hosts",
        );
        return r;
    }
    if f.mult.len() != l.n_obj() * l.n_obj() {
        r.push(
            "enriched_monoidal_functor.typing",
            "multiplication table has the wrong size",
        );
        return r;
    }
    r.absorb(
        "enriched_monoidal_functor.functor",
        check_enriched_functor(fun),
    );
    let bg = &fun.background;
    if bg.kind != LaxKind::Strong {
        r.push(
            "enriched_monoidal_functor.background",
            "background is not strong monoidal",
        );
    }
    r.absorb(
        "enriched_monoidal_functor.background",
        check_braided_functor(bg, &l.braiding, &m.braiding),
    );
    if !r.is_valid() {
        return r;
    }
    for (name, nat) in [("mult", f.mult_nat()), ("unit", f.unit_nat())] {
        match nat {
            Ok(t) => r.absorb(
                &format!("enriched_monoidal_functor.{name}"),
                check_enriched_nat(&t),
            ),
            Err(err) => r.push("enriched_monoidal_functor.typing", format!("{name}: {err}")),
        }
    }
    if !r.is_valid() {
        return r;
    }
    match f.underlying() {
        Ok(u) => r.absorb(
            "enriched_monoidal_functor.underlying",
            check_lax_monoidal_functor(&u),
        ),
        Err(err) => r.push("enriched_monoidal_functor.underlying", err.to_string()),
    }
    r
}

/// An enriched transformation between enriched monoidal functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedMonoidalNat {
    pub nat: EnrichedNat,
    pub source: EnrichedMonoidalFunctor,
    pub target: EnrichedMonoidalFunctor,
}

impl EnrichedMonoidalNat {
    pub fn identity(f: &EnrichedMonoidalFunctor) -> Self {
        EnrichedMonoidalNat {
            nat: EnrichedNat::identity(&f.functor),
            source: f.clone(),
            target: f.clone(),
        }
    }
}

/// Checks enriched naturality and that the underlying transformation is monoidal.
pub fn check_enriched_monoidal_nat(t: &EnrichedMonoidalNat) -> ValidationReport {
    let mut r = ValidationReport::new();
    if t.nat.source != t.source.functor
        || t.nat.target != t.target.functor
        || t.source.source != t.target.source
        || t.source.target != t.target.target
    {
        r.push(
            "enriched_monoidal_nat.typing",
            "transformation endpoints differ from the monoidal functors",
        );
        return r;
    }
    r.absorb("enriched_monoidal_nat.nat", check_enriched_nat(&t.nat));
    if !r.is_valid() {
        return r;
    }
    let underlying = || -> Result<LaxMonoidalNat, EnrichedError> {
        let (_, ul) = underlying_monoidal(&t.source.source)?;
        let (_, um) = underlying_monoidal(&t.source.target)?;
        let nat = underlying_nat(&t.nat, &ul, &um)?;
        Ok(LaxMonoidalNat {
            source: t.source.underlying()?,
            target: t.target.underlying()?,
            nat,
        })
    };
    match underlying() {
        Ok(u) => r.absorb(
            "enriched_monoidal_nat.underlying",
            check_lax_monoidal_nat(&u),
        ),
        Err(err) => r.push("enriched_monoidal_nat.underlying", err.to_string()),
    }
    r
}

/// An enriched half-braiding on `carrier`: `components[z] ∈ hom(z⊗x, x⊗z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnrichedHalfBraiding {
    pub carrier: Obj,
    pub components: Vec<Mor>,
}

impl EnrichedHalfBraiding {
    /// The same half-braiding read in the underlying category.
    pub fn underlying(
        &self,
        em: &EnrichedMonoidalCategory,
        u: &Underlying,
    ) -> Option<HalfBraidingOrd> {
        let x = self.carrier;
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(z, &g)| u.index(em.t(z, x), em.t(x, z), g))
            .collect::<Option<_>>()?;
        Some(HalfBraidingOrd {
            carrier: x,
            components,
        })
    }

    pub fn from_underlying(hb: &HalfBraidingOrd, u: &Underlying) -> Self {
        EnrichedHalfBraiding {
            carrier: hb.carrier,
            components: hb.components.iter().map(|&g| u.element(g)).collect(),
        }
    }
}

/// The enriched naturality square of a half-braiding at `(y, z)`, both sides as maps
/// `hom(y,z) → hom(y⊗x, x⊗z)`.
fn half_braiding_square(
    em: &EnrichedMonoidalCategory,
    hb: &EnrichedHalfBraiding,
    y: Obj,
    z: Obj,
) -> (Option<Mor>, Option<Mor>) {
    let e = &*em.host;
    let a = &*e.base;
    let c = &*a.cat;
    let x = hb.carrier;
    let h = e.hom(y, z);
    let lhs = c.seq_opt(&[
        c.inverse(a.rho(h)),
        Some(a.tl(h, e.ident(x))),
        Some(em.tensor_component(y, x, z, x)),
        e.post(em.t(y, x), em.t(z, x), em.t(x, z), hb.components[z]),
    ]);
    let rhs = c.seq_opt(&[
        c.inverse(a.lambda(h)),
        Some(a.tr(e.ident(x), h)),
        Some(em.tensor_component(x, y, x, z)),
        e.pre(em.t(y, x), em.t(x, y), em.t(x, z), hb.components[y]),
    ]);
    (lhs, rhs)
}

/// Checks typing, the underlying half-braiding axioms and enriched naturality.
pub fn check_enriched_half_braiding(
    em: &EnrichedMonoidalCategory,
    hb: &EnrichedHalfBraiding,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    let n = em.n_obj();
    let x = hb.carrier;
    if x >= n || hb.components.len() != n {
        r.push(
            "enriched_half_braiding.typing",
            "carrier or component count out of range",
        );
        return r;
    }
    for z in 0..n {
        if !typed(&em.host, hb.components[z], em.t(z, x), em.t(x, z)) {
            r.push(
                "enriched_half_braiding.typing",
                format!("component {z} is not an element of hom(z⊗x, x⊗z)"),
            );
        }
    }
    if !r.is_valid() {
        return r;
    }
    match underlying_monoidal(em) {
        Ok((m, u)) => match hb.underlying(em, &u) {
            Some(ord) => r.absorb(
                "enriched_half_braiding.underlying",
                check_half_braiding(&m, &ord),
            ),
            None => r.push(
                "enriched_half_braiding.typing",
                "components are not underlying morphisms",
            ),
        },
        Err(err) => r.push("enriched_half_braiding.underlying", err.to_string()),
    }
    for y in 0..n {
        for z in 0..n {
            let (lhs, rhs) = half_braiding_square(em, hb, y, z);
            r.expect_eq("enriched_half_braiding.naturality", lhs, rhs, || {
                format!("({y},{z})")
            });
        }
    }
    r
}

/// All enriched half-braidings on `x`, in the order of the underlying enumeration.
pub fn enumerate_enriched_half_braidings(
    em: &EnrichedMonoidalCategory,
    x: Obj,
    budget: Budget,
) -> Result<Vec<EnrichedHalfBraiding>, EnrichedError> {
    ensure(check_enriched_monoidal(em))?;
    let (m, u) = underlying_monoidal(em)?;
    let mut meter = budget.meter();
    let candidates = enumerate_half_braidings(&m, x, &mut meter)?;
    let n = em.n_obj();
    let mut out = Vec::new();
    for ord in &candidates {
        let hb = EnrichedHalfBraiding::from_underlying(ord, &u);
        let mut natural = true;
        for y in 0..n {
            for z in 0..n {
                meter.tick()?;
                let (lhs, rhs) = half_braiding_square(em, &hb, y, z);
                natural &= lhs.is_some() && lhs == rhs;
            }
        }
        if natural {
            out.push(hb);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_cat::FinCategory;

    fn lattice2_braided() -> BraidedStructure {
        let c = Arc::new(FinCategory::from_preorder(2, |x, y| x <= y));
        let m = Arc::new(MonoidalCategory::from_thin(c, |a, b| a.min(b), 1).unwrap());
        BraidedStructure::thin(m).unwrap()
    }

    /// One object, automorphisms `{1, t}`, `λ = ρ = t`.
    fn bz2_braided() -> BraidedStructure {
        let cat = Arc::new(FinCategory::monoid(&[vec![0, 1], vec![1, 0]], 0));
        let m = MonoidalCategory {
            cat,
            tensor_obj: vec![0],
            tensor_mor: vec![0, 1, 1, 0],
            unit: 0,
            assoc: vec![0],
            lunitor: vec![1],
            runitor: vec![1],
        }
        .validated()
        .unwrap();
        BraidedStructure::identity(Arc::new(m), true)
            .validated()
            .unwrap()
    }

    fn monoid_preorder() -> EnrichedMonoidalCategory {
        EnrichedMonoidalCategory::thin(
            &lattice2_braided(),
            2,
            |x, y| (x <= y) as usize,
            |x, y| x.max(y),
            0,
        )
        .unwrap()
    }

    #[test]
    fn commutative_algebra_gives_one_object_enriched_monoidal() {
        let b = bz2_braided();
        let alg = AlgebraObject {
            host: b.host.clone(),
            carrier: 0,
            mult: 1,
            unit: 0,
            commutative: true,
        };
        let em = EnrichedMonoidalCategory::from_commutative_algebra(&b, &alg).unwrap();
        assert!(check_enriched_monoidal(&em).is_valid());
        let (m, _) = underlying_monoidal(&em).unwrap();
        assert!(check_monoidal(&m).is_valid());
        let eb = EnrichedBraidedCategory {
            braiding: vec![alg.unit],
            host: em.clone(),
            symmetric: true,
        };
        assert!(check_enriched_symmetric(&eb).is_valid());
        let hbs = enumerate_enriched_half_braidings(&em, 0, Budget::DEFAULT).unwrap();
        assert!(hbs.contains(&EnrichedHalfBraiding {
            carrier: 0,
            components: vec![alg.unit]
        }));
    }

    #[test]
    fn monoid_preorder_is_enriched_symmetric() {
        let em = monoid_preorder();
        assert!(check_enriched_monoidal(&em).is_valid());
        let eb = EnrichedBraidedCategory::thin(em.clone()).unwrap();
        assert!(check_enriched_symmetric(&eb).is_valid());
        for x in 0..2 {
            let hbs = enumerate_enriched_half_braidings(&em, x, Budget::DEFAULT).unwrap();
            assert_eq!(hbs.len(), 1);
        }
    }

    #[test]
    fn wrong_background_is_reported() {
        let mut em = monoid_preorder();
        em.tensor.background.kind = LaxKind::Lax;
        assert!(check_enriched_monoidal(&em).mentions("enriched_monoidal.background"));
    }

    #[test]
    fn reversed_is_an_involution() {
        let em = monoid_preorder();
        let rev = reversed(&em).unwrap();
        assert!(check_enriched_monoidal(&rev).is_valid());
        assert_eq!(reversed(&rev).unwrap(), em);
        let (m, _) = underlying_monoidal(&em).unwrap();
        let (mr, _) = underlying_monoidal(&rev).unwrap();
        assert_eq!(mr, m.reversed_tensor());
    }

    #[test]
    fn identity_monoidal_functor_and_nat() {
        let em = Arc::new(monoid_preorder());
        let f = EnrichedMonoidalFunctor::identity(&em);
        assert!(check_enriched_monoidal_functor(&f).is_valid());
        assert!(check_enriched_monoidal_nat(&EnrichedMonoidalNat::identity(&f)).is_valid());
    }

    #[test]
    fn nonsymmetric_base_is_rejected() {
        let mut eb = EnrichedBraidedCategory::thin(monoid_preorder()).unwrap();
        eb.host.braiding.symmetric = false;
        assert!(check_enriched_braided(&eb).mentions("enriched_braided.base"));
    }
}
