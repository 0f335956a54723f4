//! Named, deterministically constructed instances shared by the acceptance
//! suite, the tests and the command line. Every entry can be written to and
//! checked against a JSON file.

use std::sync::Arc;

use serde_json::Value;

use crate::bisset::{box_map, box_product, cosk_vertex, p1_star, p2_star, to_bi_point};
use crate::category::{examples, nerve, FiniteCategory};
use crate::colimit::{pushout, quotient};
use crate::error::{Error, Result};
use crate::iso::is_isomorphic;
use crate::json::{bisset_from_value, bisset_to_value, map_from_value, map_to_value, sset_from_value, sset_to_value};
use crate::map::{BisimplicialMap, Map, SimplicialMap};
use crate::presheaf::{BisimplicialSet, SimplicialSet};
use crate::precat::two_object;
use crate::shapes::{boundary, chain, horn, inclusion, point, simplex, to_point, vertex_inclusion};
use crate::transfer::gamma;

pub fn circle() -> Arc<SimplicialSet> {
    let p = quotient(&inclusion(&boundary(1), &simplex(1))).expect("quotients of monomorphisms exist");
    Arc::new(p.set.renamed("S¹"))
}

/// Two triangles glued along their common boundary.
pub fn doubled_triangle() -> Arc<SimplicialSet> {
    let i = inclusion(&boundary(2), &simplex(2));
    Arc::new(pushout(&i, &i).expect("pushouts of monomorphisms exist").set.renamed("Δ[2]⊔∂Δ[2]"))
}

pub fn two_points() -> Arc<SimplicialSet> {
    Arc::new(simplex(1).skeleton([0]).renamed("2"))
}

pub fn square_poset() -> FiniteCategory {
    examples::poset(1).product(&examples::poset(1))
}

/// Posets whose nerves are checked for unique inner horn fillers.
pub fn posets() -> Vec<FiniteCategory> {
    vec![examples::poset(1), examples::poset(2), examples::poset(3), square_poset()]
}

/// Finite categories with a groupoid and non-thin members.
pub fn categories() -> Vec<FiniteCategory> {
    named_categories().into_iter().map(|(_, c)| c).collect()
}

pub fn named_categories() -> Vec<(&'static str, FiniteCategory)> {
    vec![
        ("cat_terminal", examples::terminal()),
        ("cat_poset2", examples::poset(2)),
        ("cat_square", square_poset()),
        ("cat_iso", examples::iso_groupoid()),
        ("cat_cyclic3", examples::cyclic(3)),
        ("cat_parallel", examples::parallel_pair()),
        ("cat_idempotent", examples::idempotent()),
        ("cat_discrete2", examples::discrete(2)),
        ("cat_indiscrete2", examples::indiscrete(2)),
    ]
}

pub fn simplicial() -> Vec<(&'static str, Arc<SimplicialSet>)> {
    vec![
        ("point", point()),
        ("simplex1", simplex(1)),
        ("simplex2", simplex(2)),
        ("boundary2", boundary(2)),
        ("horn21", horn(2, 1)),
        ("chain3", chain(3)),
        ("circle", circle()),
        ("doubled_triangle", doubled_triangle()),
        ("nerve_poset1", nerve(&examples::poset(1), 3)),
        ("nerve_poset2", nerve(&examples::poset(2), 3)),
        ("nerve_iso", nerve(&examples::iso_groupoid(), 3)),
    ]
}

pub fn simplicial_maps() -> Vec<(&'static str, SimplicialMap)> {
    vec![
        ("chain2_incl", inclusion(&chain(2), &simplex(2))),
        ("chain3_incl", inclusion(&chain(3), &simplex(3))),
        ("chain4_incl", inclusion(&chain(4), &simplex(4))),
        ("horn21_incl", inclusion(&horn(2, 1), &simplex(2))),
        ("horn20_incl", inclusion(&horn(2, 0), &simplex(2))),
        ("simplex1_to_point", to_point(&simplex(1))),
    ]
}

pub fn bisimplicial() -> Result<Vec<(&'static str, Arc<BisimplicialSet>)>> {
    Ok(vec![
        ("bi_point", p1_star(&point())),
        ("p1_nerve_poset2", p1_star(&nerve(&examples::poset(2), 3))),
        ("box_simplex2_point", box_product(&simplex(2), &point()).set),
        ("box_simplex1_simplex1", box_product(&simplex(1), &simplex(1)).set),
        ("box_horn21_point", box_product(&horn(2, 1), &point()).set),
        ("p2_simplex1", p2_star(&simplex(1))),
        ("p1_doubled_triangle", p1_star(&doubled_triangle())),
        ("two_object_boundary1", two_object(&boundary(1))?),
        ("two_object_simplex1", two_object(&simplex(1))?),
        ("cosk_simplex1", cosk_vertex(&simplex(1), [2, 1])),
        ("gamma_n1", gamma(&nerve(&examples::poset(1), 3), 3)?.set().clone()),
    ])
}

/// Small bisimplicial maps for fibration and adjunction checks.
pub fn bisimplicial_maps() -> Vec<(&'static str, BisimplicialMap)> {
    let id0 = Map::identity(&point());
    let id1 = Map::identity(&simplex(1));
    let d1 = inclusion(&boundary(1), &simplex(1));
    let j = nerve(&examples::iso_groupoid(), 2);
    let two = two_points();
    vec![
        ("id_point", Map::identity(&p1_star(&point()))),
        ("id_box10", Map::identity(&box_product(&simplex(1), &point()).set)),
        ("box10_to_point", to_bi_point(&box_product(&simplex(1), &point()).set)),
        ("box01_to_point", to_bi_point(&box_product(&point(), &simplex(1)).set)),
        ("box11_to_point", to_bi_point(&box_product(&simplex(1), &simplex(1)).set)),
        ("p1_iso_to_point", to_bi_point(&p1_star(&j))),
        ("p2_iso_to_point", to_bi_point(&p2_star(&j))),
        ("two_to_point_h", to_bi_point(&p1_star(&two))),
        ("two_to_point_v", to_bi_point(&p2_star(&two))),
        ("horn_box", box_map(&inclusion(&horn(2, 1), &simplex(2)), &id0)),
        ("boundary_box_v", box_map(&id1, &d1)),
        ("boundary_box_h", box_map(&d1, &id0)),
        ("boundary_box_hv", box_map(&d1, &d1)),
        ("vertex_box_h", box_map(&vertex_inclusion(&simplex(1), 0), &id0)),
        ("vertex_box_v", box_map(&id0, &vertex_inclusion(&simplex(1), 1))),
        ("collapse_h", box_map(&to_point(&simplex(1)), &id0)),
        ("collapse_v", box_map(&id0, &to_point(&simplex(1)))),
        ("collapse_iso_h", box_map(&to_point(&j), &id0)),
        ("collapse_iso_v", box_map(&id0, &to_point(&j))),
        ("circle_to_point", to_bi_point(&p1_star(&circle()))),
        ("empty_to_point", Map::from_empty(&p1_star(&point())).with_dom(Arc::new(BisimplicialSet::empty("∅")))),
        ("iso_vertex_h", box_map(&vertex_inclusion(&j, j.vertices()[0]), &id0)),
    ]
}

/// Pairs `(Z, X)` with `Z` a precategory, for the coreflection property.
pub fn coreflection_pairs() -> Result<Vec<(Arc<BisimplicialSet>, Arc<BisimplicialSet>)>> {
    let precats = [p1_star(&point()), p1_star(&simplex(1)), two_object(&point())?, p1_star(&two_points())];
    let targets = [
        cosk_vertex(&simplex(1), [2, 1]),
        box_product(&simplex(1), &simplex(1)).set,
        p2_star(&simplex(1)),
    ];
    Ok(precats.iter().flat_map(|z| targets.iter().map(move |x| (z.clone(), x.clone()))).collect())
}

/// Triples `(A, B, X)` for the box and division bijections.
pub fn division_triples() -> Vec<(Arc<SimplicialSet>, Arc<SimplicialSet>, Arc<BisimplicialSet>)> {
    let factors = [point(), simplex(1), boundary(1), two_points()];
    let targets = [
        box_product(&simplex(1), &point()).set,
        box_product(&simplex(1), &simplex(1)).set,
        p2_star(&simplex(1)),
        p1_star(&simplex(2)),
        p1_star(&nerve(&examples::iso_groupoid(), 2)),
    ];
    let mut out = Vec::new();
    for x in &targets {
        for (i, a) in factors.iter().enumerate() {
            let b = &factors[(i + 1) % factors.len()];
            out.push((a.clone(), b.clone(), x.clone()));
        }
    }
    out
}

/// The kind of a corpus file, fixed by the entry it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Simplicial,
    SimplicialMap,
    Bisimplicial,
    BisimplicialMap,
    Category,
}

/// Every corpus entry as `(file stem, kind, document)`.
pub fn documents() -> Result<Vec<(String, Kind, Value)>> {
    let mut out = Vec::new();
    for (k, x) in simplicial() {
        out.push((k.to_string(), Kind::Simplicial, sset_to_value(&x)));
    }
    for (k, f) in simplicial_maps() {
        out.push((k.to_string(), Kind::SimplicialMap, map_to_value(&f)));
    }
    for (k, x) in bisimplicial()? {
        out.push((k.to_string(), Kind::Bisimplicial, bisset_to_value(&x)));
    }
    for (k, f) in bisimplicial_maps() {
        out.push((k.to_string(), Kind::BisimplicialMap, map_to_value(&f)));
    }
    for (k, c) in named_categories() {
        out.push((k.to_string(), Kind::Category, c.to_value()));
    }
    Ok(out)
}

/// Whether a document describes the same object as the built-in entry,
/// up to isomorphism for complexes and exactly for maps.
pub fn matches(kind: Kind, expected: &Value, found: &Value) -> Result<bool> {
    let named = Default::default();
    Ok(match kind {
        Kind::Simplicial => {
            is_isomorphic(&Arc::new(sset_from_value(expected)?), &Arc::new(sset_from_value(found)?))
        }
        Kind::Bisimplicial => {
            is_isomorphic(&Arc::new(bisset_from_value(expected)?), &Arc::new(bisset_from_value(found)?))
        }
        Kind::SimplicialMap => {
            let (a, b) = (map_from_value::<1>(expected, &named)?, map_from_value::<1>(found, &named)?);
            is_isomorphic(a.dom(), b.dom()) && is_isomorphic(a.cod(), b.cod()) && map_to_value(&a) == map_to_value(&b)
        }
        Kind::BisimplicialMap => {
            let named2 = Default::default();
            let (a, b) = (map_from_value::<2>(expected, &named2)?, map_from_value::<2>(found, &named2)?);
            is_isomorphic(a.dom(), b.dom()) && is_isomorphic(a.cod(), b.cod()) && map_to_value(&a) == map_to_value(&b)
        }
        Kind::Category => FiniteCategory::from_value(expected)?.to_value() == FiniteCategory::from_value(found)?.to_value(),
    })
}

/// Looks up an entry by file stem.
pub fn document(stem: &str) -> Result<(Kind, Value)> {
    documents()?
        .into_iter()
        .find(|(k, _, _)| k == stem)
        .map(|(_, kind, v)| (kind, v))
        .ok_or_else(|| Error::Invalid(format!("no corpus entry named {stem}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_valid_and_round_trip() {
        let docs = documents().unwrap();
        assert!(docs.len() >= 50);
        for (stem, kind, v) in &docs {
            assert!(matches(*kind, v, v).unwrap(), "{stem}");
        }
        for (_, f) in bisimplicial_maps() {
            assert!(f.violation().is_none());
        }
        assert!(bisimplicial_maps().len() >= 20);
        assert!(division_triples().len() >= 20);
        assert!(coreflection_pairs().unwrap().len() >= 10);
    }

    #[test]
    fn mutation_is_detected() {
        let (kind, v) = document("simplex2").unwrap();
        let other = sset_to_value(&boundary(2));
        assert!(!matches(kind, &v, &other).unwrap());
    }
}
