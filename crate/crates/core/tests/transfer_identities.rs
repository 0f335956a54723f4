use std::sync::Arc;

use segalkit::bisset::{box_product, left_divide};
use segalkit::bridge::j_core;
use segalkit::category::{examples, nerve};
use segalkit::corpus;
use segalkit::exponential::exponential;
use segalkit::iso::{find_iso, is_isomorphic};
use segalkit::precat::is_precategory;
use segalkit::product::product;
use segalkit::shapes::{boundary, point, simplex};
use segalkit::transfer::{gamma, k_bang, k_shriek_nerve, t_bang};
use segalkit::SimplicialSet;

/// `A\Γ(X) = J(X^A)`, compared through the level up to which both sides
/// are computed exactly.
#[test]
fn division_of_gamma_is_j_core_of_exponential() {
    let cap = 2;
    let xs = [nerve(&examples::poset(1), 3), nerve(&examples::poset(2), 3), nerve(&examples::iso_groupoid(), 3)];
    let shapes = [point(), simplex(1), boundary(1)];
    for x in &xs {
        let g = gamma(x, cap).unwrap();
        for a in &shapes {
            let lhs = Arc::new(left_divide(a, g.set()).unwrap().set().skeleton([cap]));
            let ex = exponential(x, a, cap).unwrap();
            let rhs = Arc::new(j_core(ex.set()).set.skeleton([cap]));
            for k in 0..=cap {
                assert_eq!(lhs.count([k]), rhs.count([k]), "{}\\Γ({}) level {k}", a.name(), x.name());
            }
            assert!(is_isomorphic(&lhs, &rhs), "{}\\Γ({})", a.name(), x.name());
        }
    }
}

#[test]
fn gamma_is_a_precategory_when_the_j_core_is_discrete() {
    for (name, x) in corpus::simplicial() {
        if j_core(&x).set.dim() == 0 {
            let g = gamma(&x, 2).unwrap();
            assert!(is_precategory(g.set()).is_yes(), "{name}");
        }
    }
}

#[test]
fn t_bang_of_box_is_product_with_k_bang() {
    let cap = 3;
    let shapes: [Arc<SimplicialSet>; 4] = [point(), simplex(1), boundary(1), corpus::two_points()];
    for a in &shapes {
        for b in &shapes {
            let lhs = t_bang(&box_product(a, b).set, cap).set;
            let kb = k_bang(b, cap).set;
            let rhs = Arc::new(product(a, &kb).set.skeleton([cap]));
            assert!(find_iso(&lhs, &rhs).is_some(), "{} □ {}", a.name(), b.name());
        }
    }
}

#[test]
fn k_shriek_of_groupoid_nerves_is_the_j_core() {
    for c in [examples::iso_groupoid(), examples::cyclic(3), examples::indiscrete(2), examples::discrete(2)] {
        let k = k_shriek_nerve(&c, 3);
        assert!(k.is_exact());
        assert!(is_isomorphic(&k.set, &j_core(&nerve(&c, 3)).set), "{}", c.name);
    }
}
