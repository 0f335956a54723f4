use std::sync::Arc;

use segalkit::bisset::{box_product, column, diagonal, diagonal_of_box, lift_div_left, lift_div_right, to_bi_point};
use segalkit::corpus;
use segalkit::iso::is_isomorphic;
use segalkit::lifting::{classify_map, generating_family, FibrationKind};
use segalkit::precat::{d_star, fibers, is_precategory, j_star, q_star, spine_decomposition};
use segalkit::product::product;
use segalkit::segal::{categorically_constant, is_v_fibration, segal_agreement, segal_condition, SegalMode};
use segalkit::shapes::{boundary, horn, inclusion, point, simplex, vertex_inclusion};
use segalkit::verdict::Verdict;
use segalkit::{BisimplicialMap, BisimplicialSet, SimplicialMap};

const B: usize = 2;

fn precategories() -> Vec<(&'static str, Arc<BisimplicialSet>)> {
    corpus::bisimplicial().unwrap().into_iter().filter(|(_, x)| is_precategory(x).is_yes()).collect()
}

#[test]
fn diagonal_of_box_is_product() {
    let shapes = [point(), simplex(1), simplex(2), boundary(2), horn(2, 1), corpus::circle()];
    for a in &shapes {
        for b in &shapes {
            let bx = box_product(a, b);
            let diag = diagonal(&bx.set);
            let f = diagonal_of_box(&bx, &diag).unwrap();
            assert!(f.violation().is_none() && f.is_iso(), "{} □ {}", a.name(), b.name());
            assert!(is_isomorphic(diag.set(), &product(a, b).set));
        }
    }
}

#[test]
fn iso_mode_segal_implies_trivfib_mode() {
    for (name, x) in corpus::bisimplicial().unwrap() {
        let iso = segal_condition(&x, 3, SegalMode::Iso).overall;
        if iso.is_yes() {
            assert!(segal_condition(&x, 3, SegalMode::TrivFib).overall.is_yes(), "{name}");
        }
    }
}

#[test]
fn fibers_partition_columns() {
    for (name, x) in precategories() {
        for n in 0..=4 {
            let t = fibers(&x, n).unwrap();
            let col = column(&x, n);
            for k in 0..=2 {
                let total: usize = t.fibers.values().map(|f| f.set.count([k])).sum();
                assert_eq!(total, col.set().count([k]), "{name}: column {n}, level {k}");
            }
        }
    }
}

#[test]
fn spine_division_decomposes_into_fiber_products() {
    for (name, x) in precategories() {
        for n in 1..=4 {
            let s = spine_decomposition(&x, n).unwrap();
            assert!(s.map.violation().is_none() && s.map.is_iso(), "{name}: n = {n}");
        }
    }
}

#[test]
fn comparison_functors_split_q_star() {
    for (name, a) in corpus::simplicial() {
        let q = q_star(&a);
        assert!(is_isomorphic(&j_star(&q).unwrap(), &a), "j*q* {name}");
        assert!(is_isomorphic(d_star(&q).unwrap().set(), &a), "d*q* {name}");
    }
}

/// The four bounded v-fibration conditions, in order.
fn v_fibration_conditions(f: &BisimplicialMap) -> Vec<Verdict> {
    let deltas: Vec<SimplicialMap> =
        generating_family(FibrationKind::TrivialFibration, B).into_iter().map(|(_, d)| d).collect();
    let horns: Vec<SimplicialMap> = generating_family(FibrationKind::KanFibration, B).into_iter().map(|(_, h)| h).collect();
    let extra_monos = [vertex_inclusion(&simplex(1), 0), inclusion(&horn(2, 1), &simplex(2)), inclusion(&boundary(1), &simplex(2).skeleton([1]).into())];
    let extra_anodyne = [vertex_inclusion(&simplex(2), 0), inclusion(&horn(2, 0), &simplex(2))];
    let left = |us: &mut dyn Iterator<Item = &SimplicialMap>| {
        Verdict::all(us.map(|u| (String::new(), classify_map(&lift_div_left(u, f).unwrap().map, FibrationKind::KanFibration, B))).collect::<Vec<_>>())
    };
    let right = |vs: &mut dyn Iterator<Item = &SimplicialMap>| {
        Verdict::all(vs.map(|v| (String::new(), classify_map(&lift_div_right(f, v).unwrap().map, FibrationKind::TrivialFibration, B))).collect::<Vec<_>>())
    };
    vec![
        left(&mut deltas.iter()),
        left(&mut deltas.iter().chain(&extra_monos)),
        right(&mut horns.iter()),
        right(&mut horns.iter().chain(&extra_anodyne)),
    ]
}

#[test]
fn v_fibration_characterizations_agree() {
    let mut decisive = 0;
    for (name, f) in corpus::bisimplicial_maps() {
        let vs = v_fibration_conditions(&f);
        if vs.iter().all(Verdict::is_decisive) {
            decisive += 1;
            let s: Vec<_> = vs.iter().map(|v| v.status).collect();
            assert!(s.iter().all(|x| *x == s[0]), "{name}: {s:?}");
            assert_eq!(is_v_fibration(&f, B).status, s[0], "{name}");
        }
    }
    assert!(decisive >= 10, "{decisive}");
}

#[test]
fn v_fibrant_objects_are_not_refuted_as_categorically_constant() {
    for (name, x) in corpus::bisimplicial().unwrap() {
        if is_v_fibration(&to_bi_point(&x), B).is_yes() {
            assert!(!categorically_constant(&x, B).is_no(), "{name}");
        }
    }
}

#[test]
fn segal_space_tests_agree() {
    for (name, x) in corpus::bisimplicial().unwrap() {
        let (a, b, agree) = segal_agreement(&x, B);
        assert!(agree, "{name}: {:?} vs {:?}", a.status, b.status);
    }
}
