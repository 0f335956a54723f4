//! Segal spaces: the Segal condition, vertical and horizontal fibrations,
//! categorical constancy and completeness.
//!
//! Weak homotopy and weak categorical equivalences are not decidable from
//! finite data, so each comparison runs a ladder of sufficient conditions
//! (isomorphism, bounded trivial fibration, ...) and a necessary one
//! (bijection on components or isomorphism classes). Everything in between
//! is `Unknown`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bisset::{column, left_divide, lift_div_left, lift_div_right, row, to_bi_point, Slice};
use crate::bridge::{pi0_bijection, qcat_equivalence, quasi_fibration_between_qcats, tau0_bijection};
use crate::category::{examples, nerve};
use crate::error::{Error, Result};
use crate::lifting::{
    cert_search, classify_map, default_max_dim, generating_family, is_kan_complex, is_quasi_category, CertOutcome,
    FibrationKind, HornFamily,
};
use crate::map::{BisimplicialMap, Map, SimplicialMap};
use crate::ops::Monotone;
use crate::presheaf::BisimplicialSet;
use crate::shapes::{chain, inclusion, simplex, vertex_inclusion};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegalMode {
    /// The Segal map must be an isomorphism.
    Iso,
    /// The Segal map must be an isomorphism or a bounded trivial fibration.
    TrivFib,
}

#[derive(Clone, Debug, Serialize)]
pub struct SegalEntry {
    pub n: usize,
    pub mode: SegalMode,
    pub verdict: Verdict,
    pub bound: Value,
}

/// Per-`n` verdicts for the Segal maps `Δ[n]\X -> Iₙ\X`, `2 ≤ n ≤ n_max`.
#[derive(Clone, Debug, Serialize)]
pub struct SegalReport {
    pub mode: SegalMode,
    pub n_max: usize,
    pub entries: Vec<SegalEntry>,
    /// `Yes` only if every entry is `Yes`.
    pub overall: Verdict,
}

impl SegalReport {
    pub fn from_entries(mode: SegalMode, n_max: usize, entries: Vec<SegalEntry>) -> Self {
        let overall = Verdict::all(entries.iter().map(|e| (format!("n={}", e.n), e.verdict.clone())));
        SegalReport { mode, n_max, entries, overall }
    }

    pub fn to_value(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| json!({ "n": e.n, "mode": e.mode, "status": e.verdict.status, "bound": e.bound, "verdict": e.verdict }))
            .collect();
        json!({ "mode": self.mode, "n_max": self.n_max, "entries": entries, "overall": self.overall })
    }
}

/// Ladder for a comparison that should be a weak homotopy equivalence:
/// isomorphism, then (in trivfib mode) bounded trivial fibration; a
/// failure to biject on components refutes.
pub fn weak_homotopy_ladder(f: &SimplicialMap, mode: SegalMode, max_dim: usize) -> Verdict {
    if f.is_iso() {
        return Verdict::yes(json!({ "by": "isomorphism" }));
    }
    if mode == SegalMode::TrivFib {
        let v = classify_map(f, FibrationKind::TrivialFibration, max_dim);
        if v.is_yes() {
            return Verdict::yes_upto(json!({ "by": "trivial fibration" }), json!({ "max_dim": max_dim }));
        }
    }
    let pi0 = pi0_bijection(f);
    if pi0.is_no() {
        return Verdict::no(json!({ "by": "components", "detail": pi0.witness }));
    }
    Verdict::unknown(json!({ "max_dim": max_dim, "mode": mode }), "neither an isomorphism nor a bounded trivial fibration, and π₀ agrees")
}

/// The Segal map `Δ[n]\X -> Iₙ\X`, restriction along the spine.
pub fn segal_map(x: &Arc<BisimplicialSet>, n: usize) -> Result<SimplicialMap> {
    let full = left_divide(&simplex(n), x)?;
    let spine = left_divide(&chain(n), x)?;
    full.restrict(&spine, &inclusion(&chain(n), &simplex(n)))
}

pub fn segal_condition(x: &Arc<BisimplicialSet>, n_max: usize, mode: SegalMode) -> SegalReport {
    let entries = (2..=n_max)
        .map(|n| match segal_map(x, n) {
            Ok(f) => {
                let max_dim = default_max_dim(&f);
                SegalEntry { n, mode, verdict: weak_homotopy_ladder(&f, mode, max_dim), bound: json!({ "max_dim": max_dim }) }
            }
            Err(e) => SegalEntry { n, mode, verdict: e.into(), bound: Value::Null },
        })
        .collect();
    SegalReport::from_entries(mode, n_max, entries)
}

fn corner_verdict(corner: Result<crate::bisset::DivisionCorner>, check: impl FnOnce(&SimplicialMap) -> Verdict) -> Verdict {
    match corner {
        Ok(c) => check(&c.map),
        Err(e) => e.into(),
    }
}

/// `⟨δ_m\f⟩` is a Kan fibration for `m ≤ max`, checked against horns of
/// dimension `≤ max`.
pub fn is_v_fibration(f: &BisimplicialMap, max: usize) -> Verdict {
    let parts = generating_family(FibrationKind::TrivialFibration, max).into_iter().map(|(label, d)| {
        let v = corner_verdict(lift_div_left(&d, f), |c| classify_map(c, FibrationKind::KanFibration, max));
        (label, v)
    });
    Verdict::all(parts.collect::<Vec<_>>()).with_bound(json!({ "m_max": max, "horn_dim": max }))
}

/// `⟨f/δ_n⟩` is a quasi-fibration for `n ≤ max`.
pub fn is_h_fibration(f: &BisimplicialMap, max: usize) -> Verdict {
    let parts = generating_family(FibrationKind::TrivialFibration, max).into_iter().map(|(label, d)| {
        let v = corner_verdict(lift_div_right(f, &d), |c| quasi_fibration_between_qcats(c, max));
        (label, v)
    });
    Verdict::all(parts.collect::<Vec<_>>()).with_bound(json!({ "n_max": max, "horn_dim": max }))
}

/// Vertically fibrant and satisfying the Segal condition (trivfib ladder).
pub fn is_segal_space(x: &Arc<BisimplicialSet>, max: usize) -> Verdict {
    let v = is_v_fibration(&to_bi_point(x), max);
    let s = segal_condition(x, max.max(2), SegalMode::TrivFib).overall;
    Verdict::all([("v_fibrant".to_string(), v), ("segal".to_string(), s)])
}

/// Rows are mid fibrant over their matching objects, the first column is a
/// Kan complex, and `X` is categorically constant.
pub fn segal_space_characterization(x: &Arc<BisimplicialSet>, max: usize) -> Verdict {
    let t = to_bi_point(x);
    let rows = generating_family(FibrationKind::TrivialFibration, max).into_iter().map(|(label, d)| {
        let v = corner_verdict(lift_div_right(&t, &d), |c| classify_map(c, FibrationKind::MidFibration, max));
        (format!("row_mid_fibration {label}"), v)
    });
    let mut parts: Vec<(String, Verdict)> = rows.collect();
    parts.push(("column0_kan".into(), is_kan_complex(column(x, 0).set(), max)));
    parts.push(("categorically_constant".into(), categorically_constant(x, max)));
    Verdict::all(parts)
}

/// Both Segal-space tests, and whether they agree where both are decisive.
pub fn segal_agreement(x: &Arc<BisimplicialSet>, max: usize) -> (Verdict, Verdict, bool) {
    let a = is_segal_space(x, max);
    let b = segal_space_characterization(x, max);
    let agree = !(a.is_decisive() && b.is_decisive()) || a.status == b.status;
    (a, b, agree)
}

pub fn rows_are_quasicats(x: &Arc<BisimplicialSet>, max: usize) -> Verdict {
    let parts = (0..=max).map(|n| (format!("row {n}"), is_quasi_category(row(x, n).set(), max)));
    Verdict::all(parts.collect::<Vec<_>>())
}

/// The canonical map of rows `X_{*0} -> X_{*n}`, induced by `[n] -> [0]`.
pub fn row_degeneracy(x: &Arc<BisimplicialSet>, r0: &Slice, rn: &Slice) -> Result<SimplicialMap> {
    let n = rn.index;
    let images = (0..r0.set().len())
        .map(|c| {
            let b = &r0.built.cell_elems[c];
            let lifted = x.act(b, &[Monotone::identity(b.level()[0]), Monotone::constant(n, 0, 0)]);
            rn.simplex_for(&lifted).ok_or_else(|| Error::Invalid(format!("row {n} is truncated below {:?}", lifted.level())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Map::new_unchecked(r0.set().clone(), rn.set().clone(), images))
}

/// Ladder for a comparison that should be a weak categorical equivalence.
pub fn weak_categorical_ladder(f: &SimplicialMap, max: usize) -> Verdict {
    if f.is_iso() {
        return Verdict::yes(json!({ "by": "isomorphism" }));
    }
    if classify_map(f, FibrationKind::TrivialFibration, max).is_yes() {
        return Verdict::yes_upto(json!({ "by": "trivial fibration" }), json!({ "max_dim": max }));
    }
    if f.is_mono() {
        if let Ok(CertOutcome::Found(c)) = cert_search(f, HornFamily::Inner, CERT_BUDGET) {
            return Verdict::yes(json!({ "by": "mid anodyne certificate", "steps": c.steps.len() }));
        }
    }
    let t0 = tau0_bijection(f);
    if t0.is_no() {
        return Verdict::no(json!({ "by": "isomorphism classes", "detail": t0.witness }));
    }
    let qcats = is_quasi_category(f.dom(), max).is_yes() && is_quasi_category(f.cod(), max).is_yes();
    if qcats {
        let q = qcat_equivalence(f, max);
        if q.is_decisive() {
            return q.with_bound(json!({ "max_dim": max }));
        }
    }
    Verdict::unknown(json!({ "max_dim": max, "cert_budget": CERT_BUDGET }), "no rung of the equivalence ladder decided")
}

const CERT_BUDGET: u64 = 500;

/// Each map `X_{*0} -> X_{*n}`, `n ≤ max`, is a weak categorical equivalence.
pub fn categorically_constant(x: &Arc<BisimplicialSet>, max: usize) -> Verdict {
    let r0 = row(x, 0);
    let parts = (1..=max).map(|n| {
        let rn = row(x, n);
        let v = match row_degeneracy(x, &r0, &rn) {
            Ok(f) => weak_categorical_ladder(&f, max),
            Err(e) => e.into(),
        };
        (format!("row 0 -> row {n}"), v)
    });
    Verdict::all(parts.collect::<Vec<_>>())
}

/// `J\X -> 1\X` is a trivial fibration, with `J` the free-standing
/// isomorphism truncated at `j_level`; the verdict is tagged with it.
pub fn complete_check(x: &Arc<BisimplicialSet>, j_level: usize, max: usize) -> Verdict {
    let run = || -> Result<Verdict> {
        let j = nerve(&examples::iso_groupoid(), j_level);
        let jx = left_divide(&j, x)?;
        let pt = left_divide(&simplex(0), x)?;
        let u0 = vertex_inclusion(&j, j.vertices()[0]);
        let f = jx.restrict(&pt, &u0)?;
        Ok(classify_map(&f, FibrationKind::TrivialFibration, max))
    };
    let v = run().unwrap_or_else(Verdict::from);
    let tag = json!({ "j_level": j_level, "max_dim": max });
    match v.status {
        crate::verdict::Status::Yes => Verdict::yes_upto(v.witness, tag),
        _ => v.with_bound(tag),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::{box_product, cosk_vertex, p1_star, p2_star};
    use crate::colimit::pushout;
    use crate::map::Map;
    use crate::shapes::{boundary, horn, point};

    fn poset_nerve(n: usize) -> Arc<crate::presheaf::SimplicialSet> {
        nerve(&examples::poset(n), 3)
    }

    /// Two triangles glued along their boundary.
    pub(crate) fn doubled_triangle() -> Arc<crate::presheaf::SimplicialSet> {
        let i = inclusion(&boundary(2), &simplex(2));
        pushout(&i, &i).unwrap().set
    }

    #[test]
    fn segal_maps_of_nerves_are_bijections() {
        let x = p1_star(&poset_nerve(2));
        let r = segal_condition(&x, 3, SegalMode::Iso);
        assert!(r.overall.is_yes(), "{:?}", r.to_value());
        assert_eq!(r.entries.len(), 2);
        let b = box_product(&simplex(2), &point()).set;
        assert!(segal_condition(&b, 2, SegalMode::Iso).overall.is_yes());
    }

    #[test]
    fn segal_condition_refuted_by_cardinality() {
        let x = p1_star(&doubled_triangle());
        let r = segal_condition(&x, 2, SegalMode::TrivFib);
        assert!(r.entries[0].verdict.is_no());
        let h = p1_star(&horn(2, 1));
        assert!(segal_condition(&h, 2, SegalMode::Iso).overall.is_no());
        assert!(is_segal_space(&h, 2).is_no());
    }

    #[test]
    fn v_fibrations() {
        let x = p1_star(&poset_nerve(2));
        assert!(is_v_fibration(&Map::identity(&x), 2).is_yes());
        let j = nerve(&examples::iso_groupoid(), 3);
        let c = cosk_vertex(&j, [2, 2]);
        assert!(is_v_fibration(&to_bi_point(&c), 2).is_yes());
        let (h, d) = (p1_star(&horn(2, 1)), p1_star(&simplex(2)));
        let f = box_product(&horn(2, 1), &point()).map_to(&box_product(&simplex(2), &point()), &inclusion(&horn(2, 1), &simplex(2)), &Map::identity(&point()));
        assert_eq!((f.dom().len(), f.cod().len()), (h.len(), d.len()));
        // Every map between vertically discrete bisimplicial sets is a
        // v-fibration: its division corners are maps of discrete sets.
        assert!(is_v_fibration(&f, 2).is_yes());
    }

    #[test]
    fn segal_spaces() {
        let pt = crate::bisset::bi_point();
        assert!(is_segal_space(&pt, 2).is_yes());
        let x = p1_star(&poset_nerve(2));
        assert!(is_segal_space(&x, 3).is_yes());
        let (a, b, agree) = segal_agreement(&x, 2);
        assert!(a.is_yes() && b.is_yes() && agree);
    }

    #[test]
    fn rows_and_constancy() {
        let x = p1_star(&poset_nerve(2));
        assert!(rows_are_quasicats(&x, 3).is_yes());
        assert!(categorically_constant(&x, 3).is_yes());
        let y = p1_star(&doubled_triangle());
        assert!(rows_are_quasicats(&y, 3).is_no());
        let z = p2_star(&simplex(1));
        assert!(categorically_constant(&z, 2).is_no());
    }

    #[test]
    fn completeness() {
        assert!(complete_check(&crate::bisset::bi_point(), 2, 3).is_yes());
        let x = p1_star(&nerve(&examples::iso_groupoid(), 2));
        let v = complete_check(&x, 2, 3);
        assert!(v.is_no());
        assert_eq!(v.bound.unwrap()["j_level"], 2);
        assert!(complete_check(&p1_star(&poset_nerve(1)), 2, 3).is_yes());
    }
}
