use std::sync::Arc;

use proptest::prelude::*;

use ecat::actions::{check_module, ModuleAction};
use ecat::canonical::canonical_construction;
use ecat::core_cat::{check_category, check_functor, iso_search, Budget, FinCategory};
use ecat::enriched_core::{check_enriched_category, underlying_category};
use ecat::monoidal_cat::{check_monoidal, MonoidalCategory};
use ecat::workbench::{load_str, save_str, Document, Names};

const B: Budget = Budget::DEFAULT;

/// The product order on an `a × b` grid, encoded as `i = r * b + c`.
fn grid(a: usize, b: usize) -> (usize, impl Fn(usize, usize) -> bool + Clone) {
    (a * b, move |x: usize, y: usize| {
        x / b <= y / b && x % b <= y % b
    })
}

fn grid_monoidal(a: usize, b: usize) -> Arc<MonoidalCategory> {
    let (n, leq) = grid(a, b);
    let cat = Arc::new(FinCategory::from_preorder(n, leq));
    let meet = move |x: usize, y: usize| (x / b).min(y / b) * b + (x % b).min(y % b);
    Arc::new(MonoidalCategory::from_thin(cat, meet, n - 1).unwrap())
}

/// Heyting implication on a chain, applied coordinatewise.
fn grid_heyting(b: usize, top: usize, x: usize, y: usize) -> usize {
    let chain = |p: usize, q: usize, t: usize| if p <= q { t } else { q };
    chain(x / b, y / b, top / b) * b + chain(x % b, y % b, top % b)
}

fn cyclic(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn grids_are_valid_monoidal_categories(a in 1usize..4, b in 1usize..4) {
        let m = grid_monoidal(a, b);
        prop_assert!(check_category(&m.cat).is_valid());
        prop_assert!(check_monoidal(&m).is_valid());
        prop_assert!(check_module(&ModuleAction::regular(&m)).is_valid());
    }

    #[test]
    fn canonical_homs_of_grids_are_heyting_implications(a in 1usize..4, b in 1usize..3) {
        let m = grid_monoidal(a, b);
        let canon = canonical_construction(&Arc::new(ModuleAction::regular(&m)), B).unwrap();
        let e = &canon.category;
        prop_assert!(check_enriched_category(e).is_valid());
        let top = m.n_obj() - 1;
        for x in 0..m.n_obj() {
            for y in 0..m.n_obj() {
                prop_assert_eq!(e.hom(x, y), grid_heyting(b, top, x, y), "hom({}, {})", x, y);
            }
        }
    }

    #[test]
    fn underlying_of_canonical_grid_is_the_grid(a in 1usize..4, b in 1usize..3) {
        let m = grid_monoidal(a, b);
        let canon = canonical_construction(&Arc::new(ModuleAction::regular(&m)), B).unwrap();
        let u = underlying_category(&canon.category).unwrap();
        let iso = iso_search(&u.cat, &m.cat, B).unwrap();
        prop_assert!(iso.is_some_and(|f| check_functor(&f).is_valid() && f.is_bijective()));
    }

    #[test]
    fn cyclic_groups_compose_associatively(n in 1usize..7) {
        let c = FinCategory::monoid(&cyclic(n), 0);
        prop_assert!(check_category(&c).is_valid());
        for f in 0..n {
            for g in 0..n {
                prop_assert_eq!(c.compose(g, f), Some((f + g) % n));
            }
        }
        let m = MonoidalCategory::discrete_monoid(&cyclic(n), 0).unwrap();
        prop_assert!(check_monoidal(&m).is_valid());
    }

    #[test]
    fn a_wrong_composition_entry_is_rejected(n in 3usize..7, f in 0usize..7, g in 0usize..7, shift in 1usize..6) {
        let c = FinCategory::monoid(&cyclic(n), 0);
        let (f, g) = (f % n, g % n);
        let wrong = ((f + g) % n + 1 + shift % (n - 1)) % n;
        prop_assume!(wrong != (f + g) % n);
        prop_assert!(!check_category(&c.with_entry(g, f, Some(wrong))).is_valid());
    }

    #[test]
    fn relabelled_preorders_are_isomorphic(a in 1usize..4, b in 1usize..3, seed in any::<u64>()) {
        let (n, leq) = grid(a, b);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let inv = {
            let mut inv = vec![0; n];
            for (i, &p) in perm.iter().enumerate() {
                inv[p] = i;
            }
            inv
        };
        let original = Arc::new(FinCategory::from_preorder(n, leq.clone()));
        let relabelled = Arc::new(FinCategory::from_preorder(n, move |x, y| leq(inv[x], inv[y])));
        prop_assert!(iso_search(&original, &relabelled, B).unwrap().is_some());
    }

    #[test]
    fn documents_survive_save_and_load(a in 1usize..4, b in 1usize..3) {
        let m = grid_monoidal(a, b);
        let doc = Document::from_monoidal(&m, Names::generated(&m.cat));
        let text = save_str(&doc).unwrap();
        let back = load_str(&text).unwrap();
        prop_assert_eq!(back.monoidal.as_deref(), Some(&*m));
        prop_assert_eq!(save_str(&back).unwrap(), text);
    }
}
