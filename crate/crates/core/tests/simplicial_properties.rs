use std::sync::Arc;

use proptest::prelude::*;

use segalkit::bridge::{is_conservative, j_core, tau1};
use segalkit::category::examples;
use segalkit::category::{functors_to, DEFAULT_REALIZE_CAP};
use segalkit::colimit::quotient;
use segalkit::exponential::exponential_level;
use segalkit::iso::{find_iso, is_isomorphic};
use segalkit::json::{sset_from_value, sset_to_value, validate};
use segalkit::lifting::{cert_replay, cert_search, classify_map, CertOutcome, FibrationKind, HornFamily};
use segalkit::product::product;
use segalkit::search::HomSearch;
use segalkit::shapes::{inclusion, point, simplex};
use segalkit::{Map, SimplicialSet};

/// The subcomplex of `Δ[3]` generated by the chosen cells.
fn subcomplex(roots: &[usize]) -> Arc<SimplicialSet> {
    let d = simplex(3);
    let keep = d.closure(roots.iter().map(|r| r % d.len()));
    Arc::new(d.sub("K", |c| keep[c]).0)
}

/// Subcomplexes of `Δ[3]` and their quotients of `Δ[3]`.
fn complexes() -> impl Strategy<Value = Arc<SimplicialSet>> {
    (prop::collection::vec(0usize..15, 1..4), any::<bool>()).prop_map(|(roots, collapse)| {
        let k = subcomplex(&roots);
        if collapse {
            let q = quotient(&inclusion(&k, &simplex(3))).expect("quotients of monomorphisms exist");
            Arc::new(q.set.renamed("Δ[3]/K"))
        } else {
            k
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complexes_validate_and_round_trip(x in complexes()) {
        prop_assert!(validate(&x).is_yes());
        let y = Arc::new(sset_from_value(&sset_to_value(&x)).unwrap());
        prop_assert!(find_iso(&x, &y).is_some());
    }

    #[test]
    fn yoneda_counts(x in complexes()) {
        for n in 0..=x.dim() + 2 {
            let maps = HomSearch::new(&simplex(n), &x).count(None).unwrap();
            prop_assert_eq!(maps, x.count([n]), "level {}", n);
        }
    }

    #[test]
    fn product_is_unital_and_associative(x in complexes()) {
        prop_assert!(is_isomorphic(&product(&x, &point()).set, &x));
        let i = simplex(1);
        let left = product(&product(&x, &i).set, &i).set;
        let right = product(&x, &product(&i, &i).set).set;
        prop_assert!(is_isomorphic(&left, &right));
    }

    #[test]
    fn projections_are_valid_maps(x in complexes()) {
        let p = product(&x, &simplex(1));
        prop_assert!(p.proj_left().violation().is_none());
        prop_assert!(p.proj_right().violation().is_none());
    }

    #[test]
    fn exponential_levels_are_hom_sets(x in complexes(), n in 0usize..3) {
        let a = simplex(1);
        let level = exponential_level(&x, &a, n).unwrap();
        let direct = HomSearch::new(&product(&simplex(n), &a).set, &x).count(None).unwrap();
        prop_assert_eq!(level.len(), direct);
    }

    #[test]
    fn trivial_fibrations_are_kan_and_mid_fibrations(roots in prop::collection::vec(0usize..15, 1..4)) {
        let f = inclusion(&subcomplex(&roots), &simplex(3));
        let t = classify_map(&f, FibrationKind::TrivialFibration, 3);
        if t.is_yes() {
            prop_assert!(classify_map(&f, FibrationKind::KanFibration, 3).is_yes());
            prop_assert!(classify_map(&f, FibrationKind::MidFibration, 3).is_yes());
        }
    }

    #[test]
    fn inner_certificates_need_all_vertices(roots in prop::collection::vec(0usize..15, 1..4)) {
        let k = subcomplex(&roots);
        let u = inclusion(&k, &simplex(3));
        let outcome = cert_search(&u, HornFamily::Inner, 200).unwrap();
        if k.vertices().len() < 4 {
            prop_assert!(matches!(outcome, CertOutcome::Refuted(ref v) if v.is_no()));
        }
        if let CertOutcome::Found(c) = outcome {
            prop_assert!(c.steps.iter().all(|s| 0 < s.k && s.k < s.n));
            let (a, b) = (cert_replay(&c), cert_replay(&c));
            prop_assert!(a.is_yes());
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn j_core_has_every_vertex_and_is_closed(x in complexes()) {
        let j = j_core(&x);
        prop_assert_eq!(j.set.vertices().len(), x.vertices().len());
        prop_assert!(validate(&j.set).is_yes());
        prop_assert!(j.inclusion.violation().is_none() && j.inclusion.is_mono());
    }

    #[test]
    fn identities_are_conservative(x in complexes()) {
        prop_assert!(is_conservative(&Map::identity(&x)).is_yes());
    }
}

/// Two-out-of-three on the 2-simplices of `X`: if two edges of a triangle
/// lie in `J(X)`, so does the third.
#[test]
fn j_core_two_out_of_three() {
    for (_, x) in segalkit::corpus::simplicial() {
        let j = j_core(&x);
        let hit = j.inclusion.hit_cells();
        for t in x.cells_of_dim(2) {
            let s = x.identity_simplex(t);
            let edges = [x.edge_of(&s, 0, 1), x.edge_of(&s, 1, 2), x.edge_of(&s, 0, 2)];
            let inside = edges.iter().filter(|e| !e.is_nondegenerate() || hit[e.cell]).count();
            assert_ne!(inside, 2, "{}: triangle {}", x.name(), x.cell(t).name);
        }
    }
}

/// `τ₁` preserves finite products, seen through functor counts into probes.
#[test]
fn tau1_preserves_products_on_probes() {
    let probes = examples::probes();
    let factors = [simplex(1), simplex(2), segalkit::shapes::boundary(2), segalkit::shapes::horn(2, 1)];
    for a in &factors {
        for b in &factors {
            let lhs = tau1(&product(a, b).set).cat;
            let real = |x: &Arc<SimplicialSet>| tau1(x).cat.realize(DEFAULT_REALIZE_CAP).expect("finite fundamental category").category;
            let rhs = real(a).product(&real(b)).presentation();
            for d in &probes {
                assert_eq!(functors_to(&lhs, d).len(), functors_to(&rhs, d).len(), "{} × {} into {}", a.name(), b.name(), d.name);
            }
        }
    }
}
