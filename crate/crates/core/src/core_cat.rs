//! Finite categories, functors and natural transformations stored as index tables.
//!
//! Objects and morphisms are plain indices. Composition is a partial table defined
//! exactly on composable pairs. Every search in this module is exhaustive and runs
//! under an explicit [`Budget`]; exceeding it is an error, never a silent truncation.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Object index.
pub type Obj = usize;
/// Morphism index.
pub type Mor = usize;

/// Upper bound on the number of candidates an exhaustive search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1_000_000);

    pub fn meter(self) -> BudgetMeter {
        BudgetMeter {
            cap: self.0,
            spent: 0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("search budget of {cap} candidates exceeded")]
pub struct BudgetExceeded {
    pub cap: u64,
}

/// Running candidate counter for one search.
#[derive(Debug, Clone)]
pub struct BudgetMeter {
    cap: u64,
    spent: u64,
}

impl BudgetMeter {
    pub fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.spent += 1;
        if self.spent > self.cap {
            Err(BudgetExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Charges `units` at once, for work whose size is known before it starts.
    pub fn charge(&mut self, units: u64) -> Result<(), BudgetExceeded> {
        self.spent = self.spent.saturating_add(units);
        if self.spent > self.cap {
            Err(BudgetExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }
}

/// One violated axiom instance. `axiom` is a dotted family name such as
/// `monoidal.pentagon`; typing failures use the suffix `.typing`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

/// List of violations found by a validator; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            detail: detail.into(),
        });
    }

    /// Appends `other`, prefixing each axiom name with `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for v in other.violations {
            self.violations.push(Violation {
                axiom: format!("{prefix}.{}", v.axiom),
                detail: v.detail,
            });
        }
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// True if some violation belongs to `family` (prefix match on dotted names).
    pub fn mentions(&self, family: &str) -> bool {
        self.violations.iter().any(|v| {
            v.axiom == family
                || v.axiom.starts_with(&format!("{family}."))
                || v.axiom.contains(&format!(".{family}"))
        })
    }

    /// Records `lhs == rhs`, or a typing violation when either side failed to compose.
    pub fn expect_eq(
        &mut self,
        axiom: &str,
        lhs: Option<Mor>,
        rhs: Option<Mor>,
        ctx: impl FnOnce() -> String,
    ) {
        match (lhs, rhs) {
            (Some(l), Some(r)) if l == r => {}
            (Some(l), Some(r)) => self.push(axiom, format!("{}: {l} != {r}", ctx())),
            _ => self.push(
                &format!("{axiom}.typing"),
                format!("{}: composite undefined", ctx()),
            ),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.axiom, v.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("{table}: index {index} out of range (bound {bound})")]
    OutOfRange {
        table: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("{table}: expected {expected} entries, found {found}")]
    WrongLength {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("composition entry ({g}, {f}) is given twice")]
    DuplicateEntry { g: Mor, f: Mor },
    #[error("composition entry ({g}, {f}) is given but cod({f}) != dom({g})")]
    NotComposable { g: Mor, f: Mor },
    #[error("functor source {0} does not match the expected category")]
    Mismatch(&'static str),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

fn check_range(table: &'static str, index: usize, bound: usize) -> Result<(), CategoryError> {
    if index < bound {
        Ok(())
    } else {
        Err(CategoryError::OutOfRange {
            table,
            index,
            bound,
        })
    }
}

/// A finite category. The composition table is indexed by the position of `g`
/// among the morphisms leaving `cod(f)`, so lookups are constant time.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinCategory {
    n_obj: usize,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    identity: Vec<Mor>,
    out: Vec<Vec<Mor>>,
    slot: Vec<usize>,
    post: Vec<Vec<Option<Mor>>>,
    homs: Vec<Vec<Mor>>,
    inverse: Vec<Option<Mor>>,
}

impl FinCategory {
    /// Builds a category from raw tables. Entries are `(g, f, g∘f)`.
    /// Missing composable entries are allowed here and reported by [`check_category`].
    pub fn new(
        n_obj: usize,
        dom: Vec<Obj>,
        cod: Vec<Obj>,
        identity: Vec<Mor>,
        entries: impl IntoIterator<Item = (Mor, Mor, Mor)>,
    ) -> Result<Self, CategoryError> {
        let m = dom.len();
        if cod.len() != m {
            return Err(CategoryError::WrongLength {
                table: "cod",
                expected: m,
                found: cod.len(),
            });
        }
        if identity.len() != n_obj {
            return Err(CategoryError::WrongLength {
                table: "identity",
                expected: n_obj,
                found: identity.len(),
            });
        }
        for &x in dom.iter().chain(cod.iter()) {
            check_range("dom/cod", x, n_obj)?;
        }
        for &i in &identity {
            check_range("identity", i, m)?;
        }
        let mut out = vec![Vec::new(); n_obj];
        let mut slot = vec![0; m];
        for f in 0..m {
            slot[f] = out[dom[f]].len();
            out[dom[f]].push(f);
        }
        let mut post: Vec<Vec<Option<Mor>>> =
            (0..m).map(|f| vec![None; out[cod[f]].len()]).collect();
        for (g, f, h) in entries {
            check_range("compose", g, m)?;
            check_range("compose", f, m)?;
            check_range("compose", h, m)?;
            if cod[f] != dom[g] {
                return Err(CategoryError::NotComposable { g, f });
            }
            let cell = &mut post[f][slot[g]];
            if cell.is_some() {
                return Err(CategoryError::DuplicateEntry { g, f });
            }
            *cell = Some(h);
        }
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for f in 0..m {
            homs[dom[f] * n_obj + cod[f]].push(f);
        }
        let mut cat = FinCategory {
            n_obj,
            dom,
            cod,
            identity,
            out,
            slot,
            post,
            homs,
            inverse: vec![None; m],
        };
        cat.inverse = (0..m).map(|f| cat.find_inverse(f)).collect();
        Ok(cat)
    }

    /// Builds a category from a total composition function on composable pairs.
    pub fn from_fn(
        n_obj: usize,
        dom: Vec<Obj>,
        cod: Vec<Obj>,
        identity: Vec<Mor>,
        compose: impl Fn(Mor, Mor) -> Mor,
    ) -> Result<Self, CategoryError> {
        let m = dom.len();
        let mut entries = Vec::new();
        for f in 0..m {
            for g in 0..m {
                if cod.get(f) == dom.get(g) {
                    entries.push((g, f, compose(g, f)));
                }
            }
        }
        Self::new(n_obj, dom, cod, identity, entries)
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    /// Discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        Self::new(
            n,
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            (0..n).map(|i| (i, i, i)),
        )
        .expect("discrete tables are well formed")
    }

    /// Thin category of a preorder given by `leq`. Morphisms are enumerated in
    /// lexicographic order of `(dom, cod)`; the identity of `x` is the pair `(x, x)`.
    pub fn from_preorder(n: usize, leq: impl Fn(Obj, Obj) -> bool) -> Self {
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    pairs.push((x, y));
                }
            }
        }
        let index: HashMap<(Obj, Obj), Mor> =
            pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let identity = (0..n).map(|x| index[&(x, x)]).collect();
        let dom = pairs.iter().map(|p| p.0).collect();
        let cod = pairs.iter().map(|p| p.1).collect();
        Self::from_fn(n, dom, cod, identity, |g, f| {
            index[&(pairs[f].0, pairs[g].1)]
        })
        .expect("preorder must be transitive")
    }

    /// One-object category of a monoid with multiplication table `mul[g][f] = g·f`
    /// and unit `e`.
    pub fn monoid(mul: &[Vec<usize>], e: usize) -> Self {
        let m = mul.len();
        Self::from_fn(1, vec![0; m], vec![0; m], vec![e], |g, f| mul[g][f])
            .expect("monoid table is well formed")
    }

    pub fn n_obj(&self) -> usize {
        self.n_obj
    }

    pub fn n_mor(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, f: Mor) -> Obj {
        self.dom[f]
    }

    pub fn cod(&self, f: Mor) -> Obj {
        self.cod[f]
    }

    pub fn id(&self, x: Obj) -> Mor {
        self.identity[x]
    }

    pub fn identities(&self) -> &[Mor] {
        &self.identity
    }

    /// `g ∘ f`, or `None` when not composable or the entry is missing.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if g >= self.n_mor() || f >= self.n_mor() || self.cod[f] != self.dom[g] {
            return None;
        }
        self.post[f][self.slot[g]]
    }

    /// `g ∘ f` on a category already known to be valid.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        self.compose(g, f)
            .unwrap_or_else(|| panic!("morphisms {g} and {f} are not composable"))
    }

    /// Composes a path given in diagrammatic order: `seq(&[f, g, h]) = h∘g∘f`.
    pub fn seq(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        if first >= self.n_mor() {
            return None;
        }
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    /// Like [`seq`](Self::seq) but accepts intermediate failures as `None` inputs.
    pub fn seq_opt(&self, path: &[Option<Mor>]) -> Option<Mor> {
        let path: Option<Vec<Mor>> = path.iter().copied().collect();
        self.seq(&path?)
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.homs[x * self.n_obj + y]
    }

    pub fn morphisms_from(&self, x: Obj) -> &[Mor] {
        &self.out[x]
    }

    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        self.inverse.get(f).copied().flatten()
    }

    pub fn inv(&self, f: Mor) -> Mor {
        self.inverse(f)
            .unwrap_or_else(|| panic!("morphism {f} is not invertible"))
    }

    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    fn find_inverse(&self, f: Mor) -> Option<Mor> {
        let (x, y) = (self.dom[f], self.cod[f]);
        self.hom(y, x).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity[x])
                && self.compose(f, g) == Some(self.identity[y])
        })
    }

    /// All entries `(g, f, g∘f)` present in the table, ordered by `f` then `g`.
    pub fn entries(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut out = Vec::new();
        for f in 0..self.n_mor() {
            for (k, &g) in self.out[self.cod[f]].iter().enumerate() {
                if let Some(h) = self.post[f][k] {
                    out.push((g, f, h));
                }
            }
        }
        out
    }

    /// Copy with one composition entry replaced. Used to build mutants in tests.
    pub fn with_entry(&self, g: Mor, f: Mor, h: Option<Mor>) -> Self {
        let mut c = self.clone();
        if c.compose(g, f).is_some() || (g < c.n_mor() && f < c.n_mor() && c.cod[f] == c.dom[g]) {
            let s = c.slot[g];
            c.post[f][s] = h;
        }
        c.inverse = (0..c.n_mor()).map(|f| c.find_inverse(f)).collect();
        c
    }

    /// Opposite category on the same indices.
    pub fn opposite(&self) -> Self {
        let entries = self.entries().into_iter().map(|(g, f, h)| (f, g, h));
        Self::new(
            self.n_obj,
            self.cod.clone(),
            self.dom.clone(),
            self.identity.clone(),
            entries,
        )
        .expect("opposite of a well-formed table is well formed")
    }

    /// Full subcategory on `objs` (in the given order), with its inclusion tables.
    pub fn full_subcategory(&self, objs: &[Obj]) -> Subcategory {
        let pos: HashMap<Obj, Obj> = objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut mor_incl = Vec::new();
        for &x in objs {
            for &y in objs {
                mor_incl.extend_from_slice(self.hom(x, y));
            }
        }
        let mpos: HashMap<Mor, Mor> = mor_incl.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let dom = mor_incl.iter().map(|&f| pos[&self.dom[f]]).collect();
        let cod = mor_incl.iter().map(|&f| pos[&self.cod[f]]).collect();
        let identity = objs.iter().map(|&x| mpos[&self.identity[x]]).collect();
        let cat = Self::from_fn(objs.len(), dom, cod, identity, |g, f| {
            mpos[&self.comp(mor_incl[g], mor_incl[f])]
        })
        .expect("full subcategory of a valid category is well formed");
        Subcategory {
            cat,
            obj_incl: objs.to_vec(),
            mor_incl,
        }
    }
}

/// A full subcategory together with the index maps of its inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcategory {
    pub cat: FinCategory,
    pub obj_incl: Vec<Obj>,
    pub mor_incl: Vec<Mor>,
}

/// Checks identity laws, associativity, totality and typing of the composition table.
pub fn check_category(c: &FinCategory) -> ValidationReport {
    let mut r = ValidationReport::new();
    for x in 0..c.n_obj() {
        let i = c.id(x);
        if c.dom(i) != x || c.cod(i) != x {
            r.push(
                "category.identity.typing",
                format!(
                    "identity of object {x} is morphism {i}: {} -> {}",
                    c.dom(i),
                    c.cod(i)
                ),
            );
        }
    }
    for f in 0..c.n_mor() {
        for &g in c.morphisms_from(c.cod(f)) {
            match c.compose(g, f) {
                None => r.push(
                    "category.totality",
                    format!("({g}, {f}) is composable but has no entry"),
                ),
                Some(h) if c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) => r.push(
                    "category.compose.typing",
                    format!("{g}∘{f} = {h} has type {} -> {}", c.dom(h), c.cod(h)),
                ),
                _ => {}
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    for f in 0..c.n_mor() {
        r.expect_eq(
            "category.identity",
            c.compose(c.id(c.cod(f)), f),
            Some(f),
            || format!("id∘{f}"),
        );
        r.expect_eq(
            "category.identity",
            c.compose(f, c.id(c.dom(f))),
            Some(f),
            || format!("{f}∘id"),
        );
    }
    for f in 0..c.n_mor() {
        for &g in c.morphisms_from(c.cod(f)) {
            for &h in c.morphisms_from(c.cod(g)) {
                let lhs = c.compose(g, f).and_then(|gf| c.compose(h, gf));
                let rhs = c.compose(h, g).and_then(|hg| c.compose(hg, f));
                r.expect_eq("category.associativity", lhs, rhs, || {
                    format!("({h}, {g}, {f})")
                });
            }
        }
    }
    r
}

/// Cartesian product; object `(a, b)` is `a * |D| + b`, morphism `(f, g)` is `f * |Mor D| + g`.
pub fn product_category(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let (n2, m2) = (d.n_obj(), d.n_mor());
    let m = c.n_mor() * m2;
    let dom = (0..m).map(|p| c.dom(p / m2) * n2 + d.dom(p % m2)).collect();
    let cod = (0..m).map(|p| c.cod(p / m2) * n2 + d.cod(p % m2)).collect();
    let identity = (0..c.n_obj() * n2)
        .map(|o| c.id(o / n2) * m2 + d.id(o % n2))
        .collect();
    FinCategory::from_fn(c.n_obj() * n2, dom, cod, identity, |g, f| {
        c.comp(g / m2, f / m2) * m2 + d.comp(g % m2, f % m2)
    })
    .expect("product of valid categories is well formed")
}

/// A functor between finite categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Functor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub obj_map: Vec<Obj>,
    pub mor_map: Vec<Mor>,
}

impl Functor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self, CategoryError> {
        if obj_map.len() != source.n_obj() {
            return Err(CategoryError::WrongLength {
                table: "obj_map",
                expected: source.n_obj(),
                found: obj_map.len(),
            });
        }
        if mor_map.len() != source.n_mor() {
            return Err(CategoryError::WrongLength {
                table: "mor_map",
                expected: source.n_mor(),
                found: mor_map.len(),
            });
        }
        for &x in &obj_map {
            check_range("obj_map", x, target.n_obj())?;
        }
        for &f in &mor_map {
            check_range("mor_map", f, target.n_mor())?;
        }
        Ok(Functor {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    pub fn identity(c: &Arc<FinCategory>) -> Self {
        Functor {
            source: c.clone(),
            target: c.clone(),
            obj_map: (0..c.n_obj()).collect(),
            mor_map: (0..c.n_mor()).collect(),
        }
    }

    /// Constant functor at object `x`.
    pub fn constant(source: &Arc<FinCategory>, target: &Arc<FinCategory>, x: Obj) -> Self {
        Functor {
            source: source.clone(),
            target: target.clone(),
            obj_map: vec![x; source.n_obj()],
            mor_map: vec![target.id(x); source.n_mor()],
        }
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.obj_map[x]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Functor) -> Result<Functor, CategoryError> {
        if inner.target != self.source {
            return Err(CategoryError::Mismatch("composite"));
        }
        Ok(Functor {
            source: inner.source.clone(),
            target: self.target.clone(),
            obj_map: inner.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            mor_map: inner.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        })
    }

    /// Product functor between product categories.
    pub fn product(&self, other: &Functor) -> Functor {
        let src = Arc::new(product_category(&self.source, &other.source));
        let tgt = Arc::new(product_category(&self.target, &other.target));
        let (n2, m2) = (other.source.n_obj(), other.source.n_mor());
        let (tn2, tm2) = (other.target.n_obj(), other.target.n_mor());
        Functor {
            obj_map: (0..src.n_obj())
                .map(|o| self.obj(o / n2) * tn2 + other.obj(o % n2))
                .collect(),
            mor_map: (0..src.n_mor())
                .map(|p| self.mor(p / m2) * tm2 + other.mor(p % m2))
                .collect(),
            source: src,
            target: tgt,
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen_o = vec![false; self.target.n_obj()];
        let mut seen_m = vec![false; self.target.n_mor()];
        self.obj_map.len() == self.target.n_obj()
            && self.mor_map.len() == self.target.n_mor()
            && self
                .obj_map
                .iter()
                .all(|&x| !std::mem::replace(&mut seen_o[x], true))
            && self
                .mor_map
                .iter()
                .all(|&f| !std::mem::replace(&mut seen_m[f], true))
    }
}

/// Checks preservation of domains, codomains, identities and composition.
pub fn check_functor(fun: &Functor) -> ValidationReport {
    let (s, t) = (&*fun.source, &*fun.target);
    let mut r = ValidationReport::new();
    if fun.obj_map.len() != s.n_obj() || fun.mor_map.len() != s.n_mor() {
        r.push("functor.typing", "table lengths do not match the source");
        return r;
    }
    for f in 0..s.n_mor() {
        let g = fun.mor(f);
        if g >= t.n_mor() || t.dom(g) != fun.obj(s.dom(f)) || t.cod(g) != fun.obj(s.cod(f)) {
            r.push(
                "functor.typing",
                format!("morphism {f} maps to {g} with the wrong endpoints"),
            );
        }
    }
    if !r.is_valid() {
        return r;
    }
    for x in 0..s.n_obj() {
        r.expect_eq(
            "functor.identity",
            Some(fun.mor(s.id(x))),
            Some(t.id(fun.obj(x))),
            || format!("object {x}"),
        );
    }
    for f in 0..s.n_mor() {
        for &g in s.morphisms_from(s.cod(f)) {
            let lhs = s.compose(g, f).map(|h| fun.mor(h));
            let rhs = t.compose(fun.mor(g), fun.mor(f));
            r.expect_eq("functor.composition", lhs, rhs, || format!("({g}, {f})"));
        }
    }
    r
}

/// A natural transformation `source ⇒ target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NatTransf {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<Mor>,
}

impl NatTransf {
    pub fn identity(f: &Functor) -> Self {
        NatTransf {
            source: f.clone(),
            target: f.clone(),
            components: (0..f.source.n_obj())
                .map(|x| f.target.id(f.obj(x)))
                .collect(),
        }
    }

    pub fn component(&self, x: Obj) -> Mor {
        self.components[x]
    }

    /// Vertical composite `self · first`.
    pub fn after(&self, first: &NatTransf) -> Result<NatTransf, CategoryError> {
        if first.target != self.source {
            return Err(CategoryError::Mismatch("vertical composite"));
        }
        let t = &self.source.target;
        Ok(NatTransf {
            source: first.source.clone(),
            target: self.target.clone(),
            components: (0..first.components.len())
                .map(|x| t.comp(self.components[x], first.components[x]))
                .collect(),
        })
    }

    /// Whiskering `self ∘ inner` for a functor `inner` into the common source.
    pub fn whisker_right(&self, inner: &Functor) -> Result<NatTransf, CategoryError> {
        Ok(NatTransf {
            source: self.source.after(inner)?,
            target: self.target.after(inner)?,
            components: inner.obj_map.iter().map(|&x| self.components[x]).collect(),
        })
    }

    /// Whiskering `outer ∘ self`.
    pub fn whisker_left(&self, outer: &Functor) -> Result<NatTransf, CategoryError> {
        Ok(NatTransf {
            source: outer.after(&self.source)?,
            target: outer.after(&self.target)?,
            components: self.components.iter().map(|&c| outer.mor(c)).collect(),
        })
    }
}

/// Checks component typing and every naturality square.
pub fn check_nat(n: &NatTransf) -> ValidationReport {
    let mut r = ValidationReport::new();
    let (f, g) = (&n.source, &n.target);
    if f.source != g.source || f.target != g.target {
        r.push("nat.typing", "source and target functors are not parallel");
        return r;
    }
    let (s, t) = (&*f.source, &*f.target);
    if n.components.len() != s.n_obj() {
        r.push("nat.typing", "wrong number of components");
        return r;
    }
    for x in 0..s.n_obj() {
        let c = n.components[x];
        if c >= t.n_mor() || t.dom(c) != f.obj(x) || t.cod(c) != g.obj(x) {
            r.push(
                "nat.typing",
                format!("component at {x} has the wrong endpoints"),
            );
        }
    }
    if !r.is_valid() {
        return r;
    }
    for h in 0..s.n_mor() {
        let (x, y) = (s.dom(h), s.cod(h));
        let lhs = t.compose(n.components[y], f.mor(h));
        let rhs = t.compose(g.mor(h), n.components[x]);
        r.expect_eq("nat.naturality", lhs, rhs, || format!("morphism {h}"));
    }
    r
}

/// All functors `c → d` in lexicographic order of `obj_map`, then `mor_map`.
pub fn enumerate_functors(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    budget: Budget,
) -> Result<Vec<Functor>, BudgetExceeded> {
    let mut meter = budget.meter();
    let mut out = Vec::new();
    let mut obj_map = vec![0; c.n_obj()];
    enum_obj(c, d, 0, &mut obj_map, &mut meter, &mut out)?;
    Ok(out)
}

fn enum_obj(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    i: usize,
    obj_map: &mut Vec<Obj>,
    meter: &mut BudgetMeter,
    out: &mut Vec<Functor>,
) -> Result<(), BudgetExceeded> {
    if i == c.n_obj() {
        let mut mor_map = vec![usize::MAX; c.n_mor()];
        for x in 0..c.n_obj() {
            mor_map[c.id(x)] = d.id(obj_map[x]);
        }
        return enum_mor(c, d, 0, obj_map, &mut mor_map, meter, out);
    }
    for y in 0..d.n_obj() {
        meter.tick()?;
        obj_map[i] = y;
        enum_obj(c, d, i + 1, obj_map, meter, out)?;
    }
    Ok(())
}

fn compose_consistent(c: &FinCategory, d: &FinCategory, mor_map: &[Mor], f: Mor) -> bool {
    let assigned = |h: Mor| mor_map[h] != usize::MAX;
    let check = |g: Mor, h: Mor| -> bool {
        match c.compose(g, h) {
            Some(k) if assigned(g) && assigned(h) && assigned(k) => {
                d.compose(mor_map[g], mor_map[h]) == Some(mor_map[k])
            }
            _ => true,
        }
    };
    c.morphisms_from(c.cod(f)).iter().all(|&g| check(g, f))
        && (0..c.n_mor())
            .filter(|&h| c.cod(h) == c.dom(f))
            .all(|h| check(f, h))
}

fn enum_mor(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    f: usize,
    obj_map: &[Obj],
    mor_map: &mut Vec<Mor>,
    meter: &mut BudgetMeter,
    out: &mut Vec<Functor>,
) -> Result<(), BudgetExceeded> {
    if f == c.n_mor() {
        let fun = Functor {
            source: c.clone(),
            target: d.clone(),
            obj_map: obj_map.to_vec(),
            mor_map: mor_map.clone(),
        };
        if check_functor(&fun).is_valid() {
            out.push(fun);
        }
        return Ok(());
    }
    if c.identities().contains(&f) {
        return enum_mor(c, d, f + 1, obj_map, mor_map, meter, out);
    }
    let candidates = d.hom(obj_map[c.dom(f)], obj_map[c.cod(f)]).to_vec();
    for g in candidates {
        meter.tick()?;
        mor_map[f] = g;
        if compose_consistent(c, d, mor_map, f) {
            enum_mor(c, d, f + 1, obj_map, mor_map, meter, out)?;
        }
    }
    mor_map[f] = usize::MAX;
    Ok(())
}

/// All natural transformations `f ⇒ g`, lexicographic in the component list.
pub fn enumerate_nat_transfs(
    f: &Functor,
    g: &Functor,
    budget: Budget,
) -> Result<Vec<NatTransf>, BudgetExceeded> {
    let mut meter = budget.meter();
    let t = &*f.target;
    let n = f.source.n_obj();
    let choices: Vec<Vec<Mor>> = (0..n).map(|x| t.hom(f.obj(x), g.obj(x)).to_vec()).collect();
    let mut out = Vec::new();
    let mut comps = Vec::with_capacity(n);
    enum_components(&choices, &mut comps, &mut meter, &mut |comps| {
        let nt = NatTransf {
            source: f.clone(),
            target: g.clone(),
            components: comps.to_vec(),
        };
        if check_nat(&nt).is_valid() {
            out.push(nt);
        }
    })?;
    Ok(out)
}

/// Walks every choice vector in lexicographic order, invoking `visit` on complete ones.
pub fn enum_components(
    choices: &[Vec<Mor>],
    prefix: &mut Vec<Mor>,
    meter: &mut BudgetMeter,
    visit: &mut dyn FnMut(&[Mor]),
) -> Result<(), BudgetExceeded> {
    let i = prefix.len();
    if i == choices.len() {
        visit(prefix);
        return Ok(());
    }
    for &c in &choices[i] {
        meter.tick()?;
        prefix.push(c);
        enum_components(choices, prefix, meter, visit)?;
        prefix.pop();
    }
    Ok(())
}

/// Objects `t` with exactly one morphism from every object, in index order.
pub fn find_terminal_objects(c: &FinCategory) -> Vec<Obj> {
    (0..c.n_obj())
        .filter(|&t| (0..c.n_obj()).all(|x| c.hom(x, t).len() == 1))
        .collect()
}

/// First invertible functor `c → d` found in lexicographic search order.
pub fn iso_search(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    budget: Budget,
) -> Result<Option<Functor>, BudgetExceeded> {
    if c.n_obj() != d.n_obj() || c.n_mor() != d.n_mor() {
        return Ok(None);
    }
    let mut meter = budget.meter();
    let mut obj_map = Vec::with_capacity(c.n_obj());
    let mut used = vec![false; d.n_obj()];
    iso_obj(c, d, &mut obj_map, &mut used, &mut meter)
}

fn iso_obj(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    obj_map: &mut Vec<Obj>,
    used: &mut Vec<bool>,
    meter: &mut BudgetMeter,
) -> Result<Option<Functor>, BudgetExceeded> {
    let i = obj_map.len();
    if i == c.n_obj() {
        let mut mor_map = vec![usize::MAX; c.n_mor()];
        let mut mused = vec![false; d.n_mor()];
        for x in 0..c.n_obj() {
            mor_map[c.id(x)] = d.id(obj_map[x]);
            mused[d.id(obj_map[x])] = true;
        }
        return iso_mor(c, d, 0, obj_map, &mut mor_map, &mut mused, meter);
    }
    for y in 0..d.n_obj() {
        if used[y] {
            continue;
        }
        meter.tick()?;
        let ok = (0..i).all(|j| {
            c.hom(j, i).len() == d.hom(obj_map[j], y).len()
                && c.hom(i, j).len() == d.hom(y, obj_map[j]).len()
        }) && c.hom(i, i).len() == d.hom(y, y).len();
        if !ok {
            continue;
        }
        used[y] = true;
        obj_map.push(y);
        if let Some(f) = iso_obj(c, d, obj_map, used, meter)? {
            return Ok(Some(f));
        }
        obj_map.pop();
        used[y] = false;
    }
    Ok(None)
}

fn iso_mor(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    f: usize,
    obj_map: &[Obj],
    mor_map: &mut Vec<Mor>,
    mused: &mut Vec<bool>,
    meter: &mut BudgetMeter,
) -> Result<Option<Functor>, BudgetExceeded> {
    if f == c.n_mor() {
        let fun = Functor {
            source: c.clone(),
            target: d.clone(),
            obj_map: obj_map.to_vec(),
            mor_map: mor_map.clone(),
        };
        return Ok(if check_functor(&fun).is_valid() && fun.is_bijective() {
            Some(fun)
        } else {
            None
        });
    }
    if c.identities().contains(&f) {
        return iso_mor(c, d, f + 1, obj_map, mor_map, mused, meter);
    }
    let candidates = d.hom(obj_map[c.dom(f)], obj_map[c.cod(f)]).to_vec();
    for g in candidates {
        if mused[g] {
            continue;
        }
        meter.tick()?;
        mor_map[f] = g;
        mused[g] = true;
        if compose_consistent(c, d, mor_map, f) {
            if let Some(fun) = iso_mor(c, d, f + 1, obj_map, mor_map, mused, meter)? {
                return Ok(Some(fun));
            }
        }
        mused[g] = false;
    }
    mor_map[f] = usize::MAX;
    Ok(None)
}

/// Outcome of one named check inside a theorem verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Ordered list of named checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Appends `other`, prefixing each check name with `prefix/`.
    pub fn absorb(&mut self, prefix: &str, other: Verification) {
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{prefix}/{}", c.name),
                ..c
            });
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> Arc<FinCategory> {
        Arc::new(FinCategory::from_preorder(2, |x, y| x <= y))
    }

    #[test]
    fn terminal_and_chain_are_valid() {
        assert!(check_category(&FinCategory::terminal()).is_valid());
        let c = chain2();
        assert_eq!(c.n_mor(), 3);
        assert!(check_category(&c).is_valid());
    }

    #[test]
    fn broken_identity_is_reported() {
        let m = FinCategory::monoid(&[vec![0, 1], vec![1, 0]], 0);
        let bad = m.with_entry(0, 0, Some(1));
        let r = check_category(&bad);
        assert!(r.violations.iter().any(|v| v.axiom == "category.identity"));
    }

    #[test]
    fn product_counts() {
        let c = chain2();
        let p = product_category(&c, &c);
        assert_eq!((p.n_obj(), p.n_mor()), (4, 9));
        assert!(check_category(&p).is_valid());
        let t = product_category(&c, &FinCategory::terminal());
        assert_eq!(t, *c);
    }

    #[test]
    fn functor_counts() {
        let c = chain2();
        let t = Arc::new(FinCategory::terminal());
        assert_eq!(
            enumerate_functors(&c, &c, Budget::DEFAULT).unwrap().len(),
            3
        );
        assert_eq!(
            enumerate_functors(&c, &t, Budget::DEFAULT).unwrap().len(),
            1
        );
        let d3 = Arc::new(FinCategory::discrete(3));
        assert_eq!(
            enumerate_functors(&t, &d3, Budget::DEFAULT).unwrap().len(),
            3
        );
        assert!(matches!(
            enumerate_functors(&c, &c, Budget(2)),
            Err(BudgetExceeded { cap: 2 })
        ));
    }

    #[test]
    fn nat_counts() {
        let c = chain2();
        let id = Functor::identity(&c);
        let k0 = Functor::constant(&c, &c, 0);
        assert_eq!(
            enumerate_nat_transfs(&k0, &id, Budget::DEFAULT)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            enumerate_nat_transfs(&id, &k0, Budget::DEFAULT)
                .unwrap()
                .len(),
            0
        );
        let t = Arc::new(FinCategory::terminal());
        let idt = Functor::identity(&t);
        assert_eq!(
            enumerate_nat_transfs(&idt, &idt, Budget::DEFAULT)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn terminal_objects() {
        assert_eq!(find_terminal_objects(&chain2()), vec![1]);
        assert!(find_terminal_objects(&FinCategory::discrete(2)).is_empty());
        assert_eq!(find_terminal_objects(&FinCategory::terminal()), vec![0]);
    }

    #[test]
    fn iso_search_cases() {
        let c = chain2();
        assert_eq!(
            iso_search(&c, &c, Budget::DEFAULT).unwrap(),
            Some(Functor::identity(&c))
        );
        let d2 = Arc::new(FinCategory::discrete(2));
        assert!(iso_search(&c, &d2, Budget::DEFAULT).unwrap().is_none());
        let rev = Arc::new(FinCategory::from_preorder(2, |x, y| x >= y));
        let f = iso_search(&c, &rev, Budget::DEFAULT).unwrap().unwrap();
        assert_eq!(f.obj_map, vec![1, 0]);
    }
}
