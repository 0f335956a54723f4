//! Lifting problems, fibration classes, and cellular certificates.
//!
//! A square is a pair `(top, bottom)` with `f ∘ top = bottom ∘ u`. Squares
//! are enumerated bottom first, then top, in the deterministic order of
//! [`HomSearch`]; the first square without a diagonal filler is reported.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::colimit::pushout;
use crate::error::{Error, Result};
use crate::iso::find_iso_under;
use crate::json::{assignment_from_value, assignment_value, sset_from_value, sset_to_value};
use crate::map::{Map, SimplicialMap};
use crate::presheaf::{Simplex, SimplicialSet};
use crate::product::Product;
use crate::search::{HomSearch, DEFAULT_BUDGET};
use crate::shapes::{boundary, horn, inclusion, simplex, to_point};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug)]
pub struct RlpOptions {
    pub budget: u64,
    /// Also count fillers (up to two) per square.
    pub count_fillers: bool,
}

impl Default for RlpOptions {
    fn default() -> Self {
        RlpOptions { budget: DEFAULT_BUDGET, count_fillers: false }
    }
}

/// Does `u` have the left lifting property against `f`?
pub fn has_rlp<const D: usize>(u: &Map<D>, f: &Map<D>) -> Verdict
where
    crate::json::Json: crate::json::Codec<D>,
{
    has_rlp_with(u, f, RlpOptions::default())
}

pub fn has_rlp_with<const D: usize>(u: &Map<D>, f: &Map<D>, opts: RlpOptions) -> Verdict
where
    crate::json::Json: crate::json::Codec<D>,
{
    match rlp_search(u, f, opts) {
        Ok(Ok((squares, max_fillers))) => {
            let mut w = json!({ "squares": squares });
            if opts.count_fillers {
                w["unique_fillers"] = json!(max_fillers <= 1);
            }
            Verdict::yes(w)
        }
        Ok(Err((top, bottom))) => Verdict::no(json!({
            "unfillable_square": { "top": assignment_value(&top), "bottom": assignment_value(&bottom) }
        })),
        Err(e) => e.into(),
    }
}

type SquareResult<const D: usize> = std::result::Result<(usize, usize), (Map<D>, Map<D>)>;

fn rlp_search<const D: usize>(u: &Map<D>, f: &Map<D>, opts: RlpOptions) -> Result<SquareResult<D>> {
    let (a, b) = (u.dom(), u.cod());
    let (x, y) = (f.dom(), f.cod());
    let bottoms = HomSearch::new(b, y).budget(opts.budget).all()?;
    let mut squares = 0usize;
    let mut max_fillers = 0usize;
    for bottom in &bottoms {
        let target = u.then(bottom);
        let tops = HomSearch::new(a, x).budget(opts.budget).over(f, &target).all()?;
        for top in tops {
            squares += 1;
            let lift = HomSearch::new(b, x).budget(opts.budget).extending(u, &top).over(f, bottom);
            let n = if opts.count_fillers { lift.count(Some(2))? } else { usize::from(lift.first()?.is_some()) };
            if n == 0 {
                return Ok(Err((top, bottom.clone())));
            }
            max_fillers = max_fillers.max(n);
        }
    }
    Ok(Ok((squares, max_fillers)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FibrationKind {
    TrivialFibration,
    KanFibration,
    MidFibration,
}

/// The generating monomorphisms of a class, up to dimension `max_dim`.
pub fn generating_family(kind: FibrationKind, max_dim: usize) -> Vec<(String, SimplicialMap)> {
    let mut out = Vec::new();
    match kind {
        FibrationKind::TrivialFibration => {
            for n in 0..=max_dim {
                out.push((format!("δ{n}"), inclusion_into_simplex(&boundary(n), n)));
            }
        }
        FibrationKind::KanFibration => {
            for n in 1..=max_dim {
                for k in 0..=n {
                    out.push((format!("Λ^{k}[{n}]"), inclusion(&horn(n, k), &simplex(n))));
                }
            }
        }
        FibrationKind::MidFibration => {
            for n in 2..=max_dim {
                for k in 1..n {
                    out.push((format!("Λ^{k}[{n}]"), inclusion(&horn(n, k), &simplex(n))));
                }
            }
        }
    }
    out
}

fn inclusion_into_simplex(sub: &Arc<SimplicialSet>, n: usize) -> SimplicialMap {
    if sub.is_empty() {
        return Map::from_empty(&simplex(n)).with_dom(sub.clone());
    }
    inclusion(sub, &simplex(n))
}

pub fn default_max_dim(f: &SimplicialMap) -> usize {
    f.dom().dim().max(f.cod().dim()) + 2
}

/// RLP against the generating family through `max_dim`. `Yes` records the bound.
pub fn classify_map(f: &SimplicialMap, kind: FibrationKind, max_dim: usize) -> Verdict {
    classify_map_with(f, kind, max_dim, RlpOptions::default())
}

pub fn classify_map_with(f: &SimplicialMap, kind: FibrationKind, max_dim: usize, opts: RlpOptions) -> Verdict {
    let mut unique = true;
    let mut checked = Vec::new();
    for (label, u) in generating_family(kind, max_dim) {
        let v = has_rlp_with(&u, f, opts);
        if v.is_no() {
            return Verdict::no(json!({ "generator": label, "detail": v.witness }));
        }
        if v.is_unknown() {
            return Verdict::unknown(json!({ "generator": label, "max_dim": max_dim }), v.reason.unwrap_or_default());
        }
        if v.witness.get("unique_fillers") == Some(&json!(false)) {
            unique = false;
        }
        checked.push(label);
    }
    let mut w = json!({ "kind": kind, "generators": checked.len() });
    if opts.count_fillers {
        w["unique_fillers"] = json!(unique);
    }
    Verdict::yes_upto(w, json!({ "max_dim": max_dim }))
}

pub fn is_quasi_category(x: &Arc<SimplicialSet>, max_dim: usize) -> Verdict {
    classify_map(&to_point(x), FibrationKind::MidFibration, max_dim)
}

/// Quasi-category check that also reports whether every inner horn has a unique filler.
pub fn is_quasi_category_unique(x: &Arc<SimplicialSet>, max_dim: usize) -> Verdict {
    classify_map_with(&to_point(x), FibrationKind::MidFibration, max_dim, RlpOptions { count_fillers: true, ..Default::default() })
}

pub fn is_kan_complex(x: &Arc<SimplicialSet>, max_dim: usize) -> Verdict {
    classify_map(&to_point(x), FibrationKind::KanFibration, max_dim)
}

/// The pushout-corner map of a cartesian product.
pub struct Corner {
    pub map: SimplicialMap,
    pub pieces: crate::colimit::Pushout<1>,
}

/// `u ×' v : (A × T) ∪_{A × S} (B × S) -> B × T` for `u : A -> B`, `v : S -> T`.
pub fn corner_product(u: &SimplicialMap, v: &SimplicialMap) -> Result<Corner> {
    let (a, b, s, t) = (u.dom(), u.cod(), v.dom(), v.cod());
    let as_ = Product::new(a, s);
    let bs = Product::new(b, s);
    let at = Product::new(a, t);
    let bt = Product::new(b, t);
    let u_s = as_.map_to(&bs, u, &Map::identity(s));
    let a_v = as_.map_to(&at, &Map::identity(a), v);
    let pieces = pushout(&u_s, &a_v)?;
    let h = bs.map_to(&bt, &Map::identity(b), v);
    let k = at.map_to(&bt, u, &Map::identity(t));
    let map = pieces.induced(&h, &k);
    Ok(Corner { map, pieces })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HornFamily {
    Inner,
    All,
}

#[derive(Clone, Debug)]
pub struct Step {
    pub n: usize,
    pub k: usize,
    /// `Λ^k[n] -> current complex`.
    pub attach: SimplicialMap,
    /// Names given to the new `n`-cell and its `k`-th face.
    pub top: String,
    pub face: String,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub start: Arc<SimplicialSet>,
    pub end: Arc<SimplicialSet>,
    pub family: HornFamily,
    pub steps: Vec<Step>,
    pub inclusion: Option<SimplicialMap>,
}

#[derive(Debug)]
pub enum CertOutcome {
    Found(Certificate),
    Refuted(Verdict),
    Exhausted(Verdict),
}

/// Search for a cellular decomposition of a monomorphism `u` into horn
/// attachments of the given family. Depth-first over subcomplexes of the
/// codomain, smallest dimension first; visited subcomplexes are pruned.
pub fn cert_search(u: &SimplicialMap, family: HornFamily, budget: u64) -> Result<CertOutcome> {
    if !u.is_mono() {
        return Err(Error::Precondition("certificate search needs a monomorphism".into()));
    }
    let b = u.cod();
    let hit = u.hit_cells();
    let missing = hit.iter().filter(|h| !**h).count();
    if family == HornFamily::Inner {
        let stray: Vec<&str> = b.vertices().into_iter().filter(|&v| !hit[v]).map(|v| b.cell(v).name.as_str()).collect();
        if !stray.is_empty() {
            return Ok(CertOutcome::Refuted(Verdict::no(json!({
                "obstruction": "not bijective on vertices",
                "vertices": stray,
            }))));
        }
    }
    if missing % 2 == 1 {
        return Ok(CertOutcome::Refuted(Verdict::no(json!({
            "obstruction": "each attachment adds two cells",
            "missing_cells": missing,
        }))));
    }
    // Candidate moves: (σ, k, τ) with τ = d_k σ a nondegenerate cell.
    let mut moves = Vec::new();
    for sigma in 0..b.len() {
        let n = b.dims(sigma)[0];
        if n == 0 {
            continue;
        }
        let ks: Vec<usize> = match family {
            HornFamily::Inner => (1..n).collect(),
            HornFamily::All => (0..=n).collect(),
        };
        for k in ks {
            let tau = &b.cell(sigma).faces[0][k];
            if tau.is_nondegenerate() {
                moves.push((n, sigma, k, tau.cell));
            }
        }
    }
    moves.sort();
    let mut visited: HashSet<Vec<bool>> = HashSet::new();
    let mut path: Vec<(usize, usize, usize)> = Vec::new();
    let mut state = hit.clone();
    let mut expanded = 0u64;
    let found = dfs(b, &moves, &mut state, missing, &mut visited, &mut path, &mut expanded, budget);
    match found {
        Some(true) => Ok(CertOutcome::Found(certificate_from_path(u, family, &path))),
        Some(false) => Ok(CertOutcome::Exhausted(Verdict::unknown(
            json!({ "states": visited.len() }),
            "no cellular decomposition by elementary horn attachments; the saturated class may still contain the map",
        ))),
        None => Ok(CertOutcome::Exhausted(Verdict::unknown(json!({ "budget": budget }), "certificate search budget exhausted"))),
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    b: &SimplicialSet,
    moves: &[(usize, usize, usize, usize)],
    state: &mut Vec<bool>,
    missing: usize,
    visited: &mut HashSet<Vec<bool>>,
    path: &mut Vec<(usize, usize, usize)>,
    expanded: &mut u64,
    budget: u64,
) -> Option<bool> {
    if missing == 0 {
        return Some(true);
    }
    if !visited.insert(state.clone()) {
        return Some(false);
    }
    *expanded += 1;
    if *expanded > budget {
        return None;
    }
    for &(_, sigma, k, tau) in moves {
        if state[sigma] || state[tau] {
            continue;
        }
        let faces = &b.cell(sigma).faces[0];
        if faces.iter().enumerate().any(|(i, f)| i != k && !state[f.cell]) {
            continue;
        }
        state[sigma] = true;
        state[tau] = true;
        path.push((sigma, k, tau));
        match dfs(b, moves, state, missing - 2, visited, path, expanded, budget) {
            Some(true) => return Some(true),
            None => return None,
            Some(false) => {}
        }
        path.pop();
        state[sigma] = false;
        state[tau] = false;
    }
    Some(false)
}

fn certificate_from_path(u: &SimplicialMap, family: HornFamily, path: &[(usize, usize, usize)]) -> Certificate {
    let (a, b) = (u.dom(), u.cod());
    // Names of codomain cells in the complex being built: start names for
    // the image of `u`, codomain names (disambiguated) for added cells.
    let start_names: HashSet<&str> = a.cells().iter().map(|c| c.name.as_str()).collect();
    let mut names: Vec<Option<String>> = vec![None; b.len()];
    for (c, s) in u.images().iter().enumerate() {
        names[s.cell] = Some(a.cell(c).name.clone());
    }
    let fresh = |c: usize| {
        let mut name = b.cell(c).name.clone();
        while start_names.contains(name.as_str()) {
            name.push('+');
        }
        name
    };
    let mut steps = Vec::new();
    let mut cur_cells: Vec<usize> = (0..b.len()).filter(|&c| names[c].is_some()).collect();
    for &(sigma, k, tau) in path {
        let n = b.dims(sigma)[0];
        let keep: Vec<bool> = (0..b.len()).map(|c| cur_cells.contains(&c)).collect();
        let (sub, remap) = b.sub("current", |c| keep[c]);
        let sub_names: Vec<String> =
            (0..b.len()).filter(|&c| keep[c]).map(|c| names[c].clone().unwrap()).collect();
        let sub = Arc::new(sub.with_cell_names(sub_names));
        let h = horn(n, k);
        let yon = crate::shapes::yoneda(b, &b.identity_simplex(sigma));
        let restricted = inclusion(&h, &simplex(n)).then(&yon);
        let images = restricted
            .images()
            .iter()
            .map(|s| Simplex { cell: remap[s.cell].unwrap(), degen: s.degen.clone() })
            .collect();
        let attach = Map::new_unchecked(h.clone(), sub, images);
        names[sigma] = Some(fresh(sigma));
        names[tau] = Some(fresh(tau));
        steps.push(Step { n, k, attach, top: names[sigma].clone().unwrap(), face: names[tau].clone().unwrap() });
        cur_cells.push(sigma);
        cur_cells.push(tau);
        cur_cells.sort();
    }
    let end_names: Vec<String> = names.into_iter().map(Option::unwrap).collect();
    let end = Arc::new(b.with_cell_names(end_names));
    let inclusion = u.with_cod(end.clone());
    Certificate { start: a.clone(), end, family, steps, inclusion: Some(inclusion) }
}

/// Replay a certificate by literal pushouts and compare with its end.
pub fn cert_replay(c: &Certificate) -> Verdict {
    let mut cur: Arc<SimplicialSet> = c.start.clone();
    let mut from_start = Map::identity(&c.start);
    for (i, step) in c.steps.iter().enumerate() {
        if step.n == 0 || step.k > step.n || (c.family == HornFamily::Inner && !(0 < step.k && step.k < step.n)) {
            return Verdict::no(json!({ "step": i, "violation": "horn outside the family" }));
        }
        let named = step.attach.cod();
        let images: Option<Vec<_>> = step
            .attach
            .images()
            .iter()
            .map(|s| cur.cell_id(&named.cell(s.cell).name).map(|cell| Simplex { cell, degen: s.degen.clone() }))
            .collect();
        let Some(images) = images else {
            return Verdict::no(json!({ "step": i, "violation": "attaching map names a missing cell" }));
        };
        let attach = match Map::new(horn(step.n, step.k), cur.clone(), images) {
            Ok(m) if m.dom().len() == step.attach.dom().len() => m,
            Ok(_) | Err(_) => return Verdict::no(json!({ "step": i, "violation": "attaching map does not validate" })),
        };
        let po = match pushout(&attach, &inclusion(&horn(step.n, step.k), &simplex(step.n))) {
            Ok(p) => p,
            Err(e) => return Verdict::no(json!({ "step": i, "violation": e.to_string() })),
        };
        let hit = po.inl.hit_cells();
        let mut new_names = Vec::with_capacity(po.set.len());
        for (cell, h) in po.set.cells().iter().zip(&hit) {
            new_names.push(if *h {
                cell.name.clone()
            } else if cell.dims[0] == step.n {
                step.top.clone()
            } else {
                step.face.clone()
            });
        }
        let next = Arc::new(po.set.with_cell_names(new_names).renamed("replay"));
        from_start = from_start.then(&po.inl).with_cod(next.clone());
        cur = next;
    }
    let inc = c.inclusion.clone().unwrap_or_else(|| by_name(&c.start, &c.end));
    match find_iso_under(&from_start, &inc) {
        Some(iso) => Verdict::yes(json!({ "steps": c.steps.len(), "iso": assignment_value(&iso) })),
        None => Verdict::no(json!({ "violation": "replayed complex does not match the end", "steps": c.steps.len() })),
    }
}

fn by_name(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> SimplicialMap {
    let images = (0..a.len())
        .map(|c| match b.cell_id(&a.cell(c).name) {
            Some(id) => b.identity_simplex(id),
            None => b.identity_simplex(0),
        })
        .collect();
    Map::new_unchecked(a.clone(), b.clone(), images)
}

impl Certificate {
    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "start": sset_to_value(&self.start),
            "end": sset_to_value(&self.end),
            "family": self.family,
            "steps": self.steps.iter().map(|s| json!({
                "n": s.n, "k": s.k, "attach": assignment_value(&s.attach), "top": s.top, "face": s.face,
            })).collect::<Vec<_>>(),
        });
        if let Some(inc) = &self.inclusion {
            v["inclusion"] = assignment_value(inc);
        }
        v
    }

    /// Parse a certificate. Attaching maps are resolved during replay, so
    /// they are stored against a placeholder and rechecked there.
    pub fn from_value(v: &Value) -> Result<Certificate> {
        let start = Arc::new(sset_from_value(&v["start"])?);
        let end = Arc::new(sset_from_value(&v["end"])?);
        let family: HornFamily = serde_json::from_value(v["family"].clone())?;
        let inc = match v.get("inclusion") {
            Some(a) => Some(assignment_from_value(&start, &end, a)?),
            None => None,
        };
        // Rebuild intermediate complexes by name to resolve attaching maps.
        let mut cur = start.clone();
        let mut steps = Vec::new();
        let raw = v["steps"].as_array().ok_or_else(|| Error::Format("certificate without steps".into()))?;
        for (i, s) in raw.iter().enumerate() {
            let n = s["n"].as_u64().ok_or_else(|| Error::Format(format!("step {i}: missing n")))? as usize;
            let k = s["k"].as_u64().ok_or_else(|| Error::Format(format!("step {i}: missing k")))? as usize;
            let top = s["top"].as_str().unwrap_or("top").to_string();
            let face = s["face"].as_str().unwrap_or("face").to_string();
            if n == 0 || k > n {
                return Err(Error::Format(format!("step {i}: no horn Λ^{k}[{n}]")));
            }
            let attach = assignment_from_value(&horn(n, k), &cur, &s["attach"])
                .map_err(|e| Error::Format(format!("step {i}: {e}")))?;
            let po = pushout(&attach, &inclusion(&horn(n, k), &simplex(n)))?;
            let hit = po.inl.hit_cells();
            let names = po
                .set
                .cells()
                .iter()
                .zip(&hit)
                .map(|(c, h)| if *h { c.name.clone() } else if c.dims[0] == n { top.clone() } else { face.clone() })
                .collect();
            steps.push(Step { n, k, attach, top, face });
            cur = Arc::new(po.set.with_cell_names(names));
        }
        Ok(Certificate { start, end, family, steps, inclusion: inc })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{chain, point, vertex_inclusion};

    #[test]
    fn degenerate_edge_fills_vertex_squares() {
        let u = vertex_inclusion(&simplex(1), 0);
        assert!(has_rlp(&u, &to_point(&simplex(1))).is_yes());
    }

    #[test]
    fn horn_is_not_a_quasi_category() {
        let h = horn(2, 1);
        let u = inclusion(&h, &simplex(2));
        assert!(has_rlp(&u, &to_point(&h)).is_no());
        assert!(is_quasi_category(&h, 2).is_no());
    }

    #[test]
    fn identity_lifts_against_anything() {
        let x = simplex(2);
        assert!(has_rlp(&Map::identity(&x), &to_point(&boundary(2))).is_yes());
    }

    #[test]
    fn trivial_fibrations() {
        assert!(classify_map(&Map::identity(&simplex(1)), FibrationKind::TrivialFibration, 3).is_yes());
        // No edge from the last vertex back to the first.
        assert!(classify_map(&to_point(&simplex(1)), FibrationKind::TrivialFibration, 2).is_no());
        assert!(classify_map(&to_point(&boundary(1)), FibrationKind::TrivialFibration, 1).is_no());
    }

    #[test]
    fn spine_certificates_replay() {
        for n in 2..=3 {
            let u = inclusion(&chain(n), &simplex(n));
            let CertOutcome::Found(c) = cert_search(&u, HornFamily::Inner, 500).unwrap() else { panic!("no certificate") };
            assert!(c.steps.iter().all(|s| 0 < s.k && s.k < s.n));
            assert!(cert_replay(&c).is_yes());
            let back = Certificate::from_value(&c.to_value()).unwrap();
            assert!(cert_replay(&back).is_yes());
        }
    }

    #[test]
    fn vertex_obstruction() {
        let u = vertex_inclusion(&simplex(1), 0);
        assert!(matches!(cert_search(&u, HornFamily::Inner, 100).unwrap(), CertOutcome::Refuted(_)));
        assert!(matches!(cert_search(&u, HornFamily::All, 100).unwrap(), CertOutcome::Found(_)));
        let _ = point();
    }
}
