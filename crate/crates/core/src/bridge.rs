//! Fundamental categories of simplicial sets, nerves, invertible cores, and
//! category-level fibration and equivalence predicates.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::category::{functors_to, nerve, FiniteCategory, FpCategory, Functor, Path};
use crate::category::Arrow;
use crate::exponential::mapping_space;
use crate::lifting::{classify_map, FibrationKind};
use crate::map::{Map, SimplicialMap};
use crate::presheaf::{Simplex, SimplicialSet};
use crate::verdict::Verdict;

/// `τ₁X` together with the cells it was built from.
#[derive(Clone, Debug)]
pub struct Tau1 {
    pub cat: FpCategory,
    pub object_of: HashMap<usize, usize>,
    pub generator_of: HashMap<usize, usize>,
}

impl Tau1 {
    /// The arrow represented by a 1-simplex.
    pub fn path_of(&self, x: &SimplicialSet, s: &Simplex<1>) -> Path {
        let src = self.object_of[&x.vertex_of(s, 0)];
        if s.is_nondegenerate() {
            Path::new(src, vec![self.generator_of[&s.cell]])
        } else {
            Path::identity(src)
        }
    }
}

/// Objects are vertices, generators nondegenerate edges, and each 2-cell `σ`
/// relates `d₂σ` then `d₀σ` to `d₁σ`.
pub fn tau1(x: &SimplicialSet) -> Tau1 {
    let vertices = x.vertices();
    let object_of: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = x.cells_of_dim(1);
    let generator_of: HashMap<usize, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let objects = vertices.iter().map(|&v| x.cell(v).name.clone()).collect();
    let generators = edges
        .iter()
        .map(|&e| {
            let s = x.identity_simplex(e);
            Arrow { name: x.cell(e).name.clone(), src: object_of[&x.vertex_of(&s, 0)], tgt: object_of[&x.vertex_of(&s, 1)] }
        })
        .collect();
    let partial = Tau1 {
        cat: FpCategory::new("", Vec::new(), Vec::new(), Vec::new()).unwrap(),
        object_of,
        generator_of,
    };
    let relations = x
        .cells_of_dim(2)
        .into_iter()
        .map(|t| {
            let f = &x.cell(t).faces[0];
            let first = partial.path_of(x, &f[2]);
            let mut lhs = first.gens.clone();
            lhs.extend(partial.path_of(x, &f[0]).gens);
            (Path::new(first.src, lhs), partial.path_of(x, &f[1]))
        })
        .collect();
    let cat = FpCategory::new(format!("τ₁{}", x.name()), objects, generators, relations)
        .expect("faces of 2-cells give well-typed relations");
    Tau1 { cat, ..partial }
}

/// `τ₁X` with a formal inverse for each generator.
pub fn pi1(x: &SimplicialSet) -> FpCategory {
    tau1(x).cat.with_formal_inverses()
}

/// Isomorphism classes of objects of `τ₁X`.
#[derive(Clone, Debug)]
pub struct Tau0 {
    pub classes: Vec<Vec<String>>,
    /// The partition is exact rather than a refinement of the true one.
    pub exact: bool,
}

pub fn tau0(x: &SimplicialSet) -> Tau0 {
    tau0_of(&tau1(x).cat)
}

/// Isomorphism classes of objects of a presented category.
pub fn tau0_of(c: &FpCategory) -> Tau0 {
    let name = |o: usize| c.objects[o].clone();
    if let Some(r) = c.realization() {
        let classes = r.category.iso_classes().into_iter().map(|cl| cl.into_iter().map(name).collect()).collect();
        return Tau0 { classes, exact: true };
    }
    let rw = c.rewriting();
    if rw.complete && !rw.collapses_to_identity() {
        return Tau0 { classes: (0..c.objects.len()).map(|o| vec![name(o)]).collect(), exact: true };
    }
    // Join objects along generators found invertible.
    let mut parent: Vec<usize> = (0..c.objects.len()).collect();
    let mut all_invertible = true;
    for g in 0..c.generators.len() {
        if c.is_invertible(&c.generator_path(g)) == Some(true) {
            let (a, b) = (find(&mut parent, c.generators[g].src), find(&mut parent, c.generators[g].tgt));
            parent[a.max(b)] = a.min(b);
        } else {
            all_invertible = false;
        }
    }
    let mut classes: Vec<Vec<String>> = Vec::new();
    let mut index = HashMap::new();
    for o in 0..c.objects.len() {
        let r = find(&mut parent, o);
        let i = *index.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[i].push(name(o));
    }
    Tau0 { classes, exact: all_invertible }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

pub fn tau0_verdict(x: &SimplicialSet) -> Verdict {
    let t = tau0(x);
    if t.exact {
        Verdict::yes(json!({ "classes": t.classes }))
    } else {
        Verdict::unknown(json!({ "partial_classes": t.classes }), "invertibility of some arrows is undecided")
    }
}

/// Compare `τ₁(N D)` (truncated at 2) with `D` through the canonical functor.
pub fn nerve_tau1_roundtrip(d: &FiniteCategory) -> Verdict {
    let x = nerve(d, 2);
    let t = tau1(&x);
    let Some(r) = t.cat.realization() else {
        return Verdict::unknown(json!({ "realize_cap": crate::category::DEFAULT_REALIZE_CAP }), "τ₁ could not be realized");
    };
    let objects: Option<Vec<usize>> = t.cat.objects.iter().map(|o| d.object_id(o)).collect();
    let gen_image: Option<Vec<usize>> = t.cat.generators.iter().map(|g| d.arrow_id(&g.name)).collect();
    let (Some(objects), Some(gen_image)) = (objects, gen_image) else {
        return Verdict::no(json!({ "violation": "nerve cells do not name objects and arrows" }));
    };
    let arrows: Vec<usize> = r
        .paths
        .iter()
        .map(|p| p.gens.iter().fold(d.identities[objects[p.src]], |acc, &g| d.then(acc, gen_image[g]).unwrap()))
        .collect();
    let comparison = match Functor::new(&Arc::new(r.category.clone()), &Arc::new(d.clone()), objects.clone(), arrows.clone()) {
        Ok(f) => f,
        Err(e) => return Verdict::no(json!({ "violation": e.to_string() })),
    };
    let bijective = |v: &[usize], n: usize| {
        let mut s = v.to_vec();
        s.sort();
        s.dedup();
        s.len() == v.len() && v.len() == n
    };
    let iso = bijective(&comparison.objects, d.objects.len()) && bijective(&comparison.arrows, d.len());
    Verdict::from_bool(
        iso,
        json!({ "category": d.name, "objects": d.objects.len(), "arrows": d.len(), "realized_arrows": r.category.len() }),
    )
}

/// Counts of functors into each probe agree.
pub fn probe_equivalent(a: &FpCategory, b: &FpCategory, probes: &[FiniteCategory]) -> Verdict {
    let mut counts = Vec::new();
    for p in probes {
        let (x, y) = (functors_to(a, p).len(), functors_to(b, p).len());
        if x != y {
            return Verdict::no(json!({ "probe": p.name, "left": x, "right": y }));
        }
        counts.push(json!({ "probe": p.name, "functors": x }));
    }
    Verdict::yes(json!({ "probes": counts }))
}

/// The subcomplex of simplices all of whose edges are invertible in `τ₁X`.
pub struct JCore {
    pub set: Arc<SimplicialSet>,
    pub inclusion: SimplicialMap,
    /// Edges excluded because their invertibility is undecided.
    pub undecided: Vec<String>,
}

pub fn j_core(x: &Arc<SimplicialSet>) -> JCore {
    let t = tau1(x);
    let mut invertible: HashMap<usize, bool> = HashMap::new();
    let mut undecided = Vec::new();
    for e in x.cells_of_dim(1) {
        let v = t.cat.is_invertible(&t.path_of(x, &x.identity_simplex(e)));
        if v.is_none() {
            undecided.push(x.cell(e).name.clone());
        }
        invertible.insert(e, v == Some(true));
    }
    let keep: Vec<bool> = (0..x.len())
        .map(|c| {
            let s = x.identity_simplex(c);
            let n = x.dims(c)[0];
            (0..=n).all(|i| {
                (i + 1..=n).all(|j| {
                    let e = x.edge_of(&s, i, j);
                    !e.is_nondegenerate() || invertible[&e.cell]
                })
            })
        })
        .collect();
    let (sub, remap) = x.sub(format!("J{}", x.name()), |c| keep[c]);
    let sub = Arc::new(sub);
    let inclusion = Map::from_remap(sub.clone(), x.clone(), &remap);
    JCore { set: sub, inclusion, undecided }
}

/// For each generator of `τ₁` of the domain whose image is invertible, the
/// generator itself must be invertible.
pub fn is_conservative(f: &SimplicialMap) -> Verdict {
    if f.is_iso() {
        return Verdict::yes(json!({ "isomorphism": true }));
    }
    let (a, b) = (f.dom(), f.cod());
    let (ta, tb) = (tau1(a), tau1(b));
    let mut undecided = Vec::new();
    for e in a.cells_of_dim(1) {
        let img = f.apply(&a.identity_simplex(e));
        let img_inv = tb.cat.is_invertible(&tb.path_of(b, &img));
        if img_inv == Some(false) {
            continue;
        }
        let src_inv = ta.cat.is_invertible(&ta.path_of(a, &a.identity_simplex(e)));
        match (img_inv, src_inv) {
            (Some(true), Some(false)) => {
                return Verdict::no(json!({ "arrow": a.cell(e).name, "image": b.cell(img.cell).name }));
            }
            (_, Some(true)) => {}
            _ => undecided.push(a.cell(e).name.clone()),
        }
    }
    if undecided.is_empty() {
        Verdict::yes(json!({ "generators": a.cells_of_dim(1).len() }))
    } else {
        Verdict::unknown(json!({ "undecided": undecided }), "invertibility undecided within the inverse search bound")
    }
}

/// `τ₁f` between finite realizations.
pub fn tau1_functor(f: &SimplicialMap) -> Option<Functor> {
    let (a, b) = (f.dom(), f.cod());
    let (ta, tb) = (tau1(a), tau1(b));
    let (ra, rb) = (ta.cat.realization()?, tb.cat.realization()?);
    let vertices = a.vertices();
    let objects = vertices.iter().map(|&v| tb.object_of[&f.apply(&a.identity_simplex(v)).cell]).collect();
    let gen_paths: Vec<Path> = a.cells_of_dim(1).iter().map(|&e| tb.path_of(b, &f.apply(&a.identity_simplex(e)))).collect();
    let index: HashMap<&Path, usize> = rb.paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let arrows = ra
        .paths
        .iter()
        .map(|p| {
            let start = tb.object_of[&f.apply(&a.identity_simplex(vertices[p.src])).cell];
            let path = p.gens.iter().fold(Path::identity(start), |acc, &g| tb.cat.compose(&acc, &gen_paths[g]));
            index.get(&tb.cat.normal_form(&path)).copied()
        })
        .collect::<Option<Vec<usize>>>()?;
    Functor::new(&Arc::new(ra.category.clone()), &Arc::new(rb.category.clone()), objects, arrows).ok()
}

pub fn quasi_fibration_between_qcats(f: &SimplicialMap, max_dim: usize) -> Verdict {
    let mid = classify_map(f, FibrationKind::MidFibration, max_dim);
    let iso_lifting = match tau1_functor(f) {
        Some(func) => Verdict::from_bool(func.is_quasi_fibration(), json!({ "tau1_objects": func.dom.objects.len() })),
        None => Verdict::unknown(json!({ "realize_cap": crate::category::DEFAULT_REALIZE_CAP }), "τ₁ could not be realized"),
    };
    Verdict::all([("mid_fibration".to_string(), mid), ("iso_lifting".to_string(), iso_lifting)])
}

/// Component index of each vertex, joined along edges.
pub fn components(x: &SimplicialSet) -> HashMap<usize, usize> {
    let vs = x.vertices();
    let pos: HashMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vs.len()).collect();
    for e in x.cells_of_dim(1) {
        let s = x.identity_simplex(e);
        let (a, b) = (find(&mut parent, pos[&x.vertex_of(&s, 0)]), find(&mut parent, pos[&x.vertex_of(&s, 1)]));
        parent[a.max(b)] = a.min(b);
    }
    vs.iter().enumerate().map(|(i, &v)| (v, find(&mut parent, i))).collect()
}

/// Whether `f` induces a bijection on connected components.
pub fn pi0_bijection(f: &SimplicialMap) -> Verdict {
    let (ca, cb) = (components(f.dom()), components(f.cod()));
    let mut image: HashMap<usize, usize> = HashMap::new();
    for (&v, &c) in &ca {
        image.insert(c, cb[&f.apply(&f.dom().identity_simplex(v)).cell]);
    }
    let hit: std::collections::HashSet<usize> = image.values().copied().collect();
    let targets: std::collections::HashSet<usize> = cb.values().copied().collect();
    let (n_dom, n_cod) = (image.len(), targets.len());
    Verdict::from_bool(hit.len() == n_dom && hit.len() == n_cod, json!({ "pi0_dom": n_dom, "pi0_cod": n_cod, "pi0_hit": hit.len() }))
}

/// Whether `f` induces a bijection on isomorphism classes of objects of `τ₁`.
pub fn tau0_bijection(f: &SimplicialMap) -> Verdict {
    let (a, b) = (f.dom(), f.cod());
    let (ta, tb) = (tau0(a), tau0(b));
    if !(ta.exact && tb.exact) {
        return Verdict::unknown(json!({ "inverse_length": crate::category::DEFAULT_INVERSE_LENGTH }), "isomorphism classes undecided");
    }
    let class_of: HashMap<&str, usize> =
        tb.classes.iter().enumerate().flat_map(|(i, cl)| cl.iter().map(move |n| (n.as_str(), i))).collect();
    let mut hit = std::collections::HashSet::new();
    for cl in &ta.classes {
        let v = a.cell_id(&cl[0]).expect("τ₀ classes name vertices");
        hit.insert(class_of[b.cell(f.apply(&a.identity_simplex(v)).cell).name.as_str()]);
    }
    let (n_dom, n_cod) = (ta.classes.len(), tb.classes.len());
    Verdict::from_bool(hit.len() == n_dom && hit.len() == n_cod, json!({ "tau0_dom": n_dom, "tau0_cod": n_cod, "tau0_hit": hit.len() }))
}

/// Fully faithful via mapping spaces and essentially surjective via `τ₀`.
pub fn qcat_equivalence(f: &SimplicialMap, max_dim: usize) -> Verdict {
    let (a, b) = (f.dom(), f.cod());
    let n = max_dim.saturating_sub(1).clamp(1, 2);
    let mut parts: Vec<(String, Verdict)> = Vec::new();
    for &x in &a.vertices() {
        for &y in &a.vertices() {
            let (fx, fy) = (f.apply(&a.identity_simplex(x)).cell, f.apply(&a.identity_simplex(y)).cell);
            let label = format!("map({},{})", a.cell(x).name, a.cell(y).name);
            parts.push((label, mapping_comparison(f, (x, y), (fx, fy), n)));
        }
    }
    let classes = tau0(b);
    let hit: Vec<usize> = a.vertices().iter().map(|&v| f.apply(&a.identity_simplex(v)).cell).collect();
    let missed: Vec<&Vec<String>> = classes
        .classes
        .iter()
        .filter(|cl| !cl.iter().any(|o| hit.iter().any(|&h| b.cell(h).name == *o)))
        .collect();
    let ess = if missed.is_empty() {
        Verdict::yes(json!({ "classes": classes.classes.len() }))
    } else if classes.exact {
        Verdict::no(json!({ "missed_classes": missed }))
    } else {
        Verdict::unknown(json!({ "partial_classes": classes.classes }), "isomorphism classes undecided")
    };
    parts.push(("essentially_surjective".into(), ess));
    Verdict::all(parts).with_bound(json!({ "max_dim": max_dim, "mapping_space_dim": n }))
}

fn mapping_comparison(f: &SimplicialMap, (x, y): (usize, usize), (fx, fy): (usize, usize), n: usize) -> Verdict {
    let (a, b) = (f.dom(), f.cod());
    let (ma, mb) = match (mapping_space(a, x, y, n), mapping_space(b, fx, fy, n)) {
        (Ok(ma), Ok(mb)) => (ma, mb),
        (Err(e), _) | (_, Err(e)) => return e.into(),
    };
    let induced = match ma.postcompose(&mb, f) {
        Ok(m) => m,
        Err(e) => return e.into(),
    };
    if induced.is_iso() {
        return Verdict::yes(json!({ "cells": ma.set().len(), "iso": true }));
    }
    // Mapping spaces of quasi-categories are Kan, so edges decide π₀.
    let (ca, cb) = (components(ma.set()), components(mb.set()));
    let mut image: HashMap<usize, usize> = HashMap::new();
    for (&v, &c) in &ca {
        let w = induced.apply(&ma.set().identity_simplex(v)).cell;
        if let Some(&old) = image.get(&c) {
            if old != cb[&w] {
                return Verdict::no(json!({ "reason": "π₀ map is not well defined" }));
            }
        }
        image.insert(c, cb[&w]);
    }
    let mut comps_b: Vec<usize> = cb.values().copied().collect();
    comps_b.sort();
    comps_b.dedup();
    let mut hit: Vec<usize> = image.values().copied().collect();
    hit.sort();
    hit.dedup();
    let mut comps_a: Vec<usize> = ca.values().copied().collect();
    comps_a.sort();
    comps_a.dedup();
    if hit.len() != comps_a.len() || hit.len() != comps_b.len() {
        return Verdict::no(json!({ "components": [comps_a.len(), comps_b.len()], "hit": hit.len() }));
    }
    Verdict::unknown(json!({ "mapping_space_dim": n }), "π₀ agrees but the mapping spaces are not isomorphic")
}

pub fn tau1_value(x: &SimplicialSet) -> Value {
    tau1(x).cat.to_value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::examples::*;
    use crate::colimit::quotient;
    use crate::iso::is_isomorphic;
    use crate::product::product;
    use crate::shapes::{boundary, inclusion, simplex, vertex_inclusion};

    fn circle() -> Arc<SimplicialSet> {
        quotient(&inclusion(&boundary(1), &simplex(1))).unwrap().set
    }

    #[test]
    fn presentations_of_small_complexes() {
        let t = tau1(&circle());
        assert_eq!((t.cat.objects.len(), t.cat.generators.len(), t.cat.relations.len()), (1, 1, 0));
        let t = tau1(&boundary(2));
        assert_eq!((t.cat.objects.len(), t.cat.generators.len(), t.cat.relations.len()), (3, 3, 0));
        let r = tau1(&simplex(2)).cat.realization().unwrap().category.len();
        assert_eq!(r, 6);
    }

    #[test]
    fn roundtrips() {
        for c in [poset(3), cyclic(2), terminal(), iso_groupoid(), parallel_pair(), idempotent()] {
            assert!(nerve_tau1_roundtrip(&c).is_yes(), "{}", c.name);
        }
    }

    #[test]
    fn product_preservation_on_probes() {
        let sq = product(&simplex(1), &simplex(1));
        let lhs = tau1(&sq.set).cat;
        let rhs = poset(1).product(&poset(1)).presentation();
        assert!(probe_equivalent(&lhs, &rhs, &probes()).is_yes());
    }

    #[test]
    fn iso_classes() {
        assert_eq!(tau0(&simplex(2)).classes.len(), 3);
        assert_eq!(tau0(&nerve(&iso_groupoid(), 2)).classes.len(), 1);
        let g = pi1(&circle());
        assert_eq!(g.is_invertible(&g.generator_path(0)), Some(true));
    }

    #[test]
    fn cores() {
        let j = j_core(&simplex(1));
        assert_eq!(j.set.len(), 2);
        let nj = nerve(&iso_groupoid(), 3);
        assert_eq!(j_core(&nj).set.len(), nj.len());
        assert!(is_isomorphic(&j_core(&simplex(0)).set, &simplex(0)));
    }

    #[test]
    fn conservativity() {
        assert!(is_conservative(&Map::identity(&simplex(2))).is_yes());
        let z2 = nerve(&cyclic(2), 2);
        let g = z2.cells_of_dim(1)[0];
        let d1 = simplex(1);
        let images = (0..d1.len())
            .map(|c| if d1.dims(c)[0] == 0 { z2.identity_simplex(0) } else { z2.identity_simplex(g) })
            .collect();
        let f = SimplicialMap::new(d1, z2.clone(), images).unwrap();
        assert!(is_conservative(&f).is_no());
    }

    #[test]
    fn qcat_predicates() {
        let nj = nerve(&iso_groupoid(), 3);
        let pt_in = vertex_inclusion(&nj, 0);
        assert!(quasi_fibration_between_qcats(&pt_in, 3).is_no());
        assert!(qcat_equivalence(&pt_in, 3).is_yes());
        assert!(qcat_equivalence(&Map::identity(&nj), 3).is_yes());
        let two = Arc::new(simplex(0).coproduct(&simplex(0), "pt⊔pt"));
        let d1 = simplex(1);
        let images = vec![d1.identity_simplex(d1.cell_id("0").unwrap()), d1.identity_simplex(d1.cell_id("1").unwrap())];
        let v = SimplicialMap::new(two, d1, images).unwrap();
        assert!(qcat_equivalence(&v, 3).is_no());
    }
}
