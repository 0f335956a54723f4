//! JSON documents for simplicial and bisimplicial sets and maps.
//!
//! Face references name a base cell and a degeneracy word in
//! Eilenberg–Zilber normal form (strictly decreasing indices).

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::map::Map;
use crate::ops::Monotone;
use crate::presheaf::{Cell, Presheaf, Simplex};
use crate::verdict::Verdict;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceRef {
    pub base: String,
    #[serde(default)]
    pub deg: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellDoc {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub faces: Vec<FaceRef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SSetDoc {
    pub name: String,
    pub cells: Vec<CellDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BiFaceRef {
    pub base: String,
    #[serde(default)]
    pub hdeg: Vec<usize>,
    #[serde(default)]
    pub vdeg: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BiCellDoc {
    pub id: String,
    pub hdim: usize,
    pub vdim: usize,
    #[serde(default)]
    pub hfaces: Vec<BiFaceRef>,
    #[serde(default)]
    pub vfaces: Vec<BiFaceRef>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BiSetDoc {
    pub name: String,
    pub cells: Vec<BiCellDoc>,
}

/// Direction-generic view of a document.
struct Raw<const D: usize> {
    name: String,
    cells: Vec<(String, [usize; D], [Vec<(String, [Vec<usize>; D])>; D])>,
}

/// Encoding of presheaves of a fixed number of directions.
pub trait Codec<const D: usize> {
    fn to_value(x: &Presheaf<D>) -> Value;
    fn from_value(v: &Value) -> Result<Presheaf<D>>;
    fn face_value(x: &Presheaf<D>, s: &Simplex<D>) -> Value;
    fn face_from_value(x: &Presheaf<D>, v: &Value, level: [usize; D]) -> Result<Simplex<D>>;
}

pub struct Json;

fn words<const D: usize>(s: &Simplex<D>) -> [Vec<usize>; D] {
    std::array::from_fn(|d| s.degen[d].degeneracy_word())
}

fn resolve<const D: usize>(raw: Raw<D>) -> Result<Presheaf<D>> {
    let index: HashMap<&str, usize> = raw.cells.iter().enumerate().map(|(i, c)| (c.0.as_str(), i)).collect();
    if index.len() != raw.cells.len() {
        return Err(Error::Format("duplicate cell ids".into()));
    }
    let mut cells = Vec::with_capacity(raw.cells.len());
    for (id, dims, faces) in &raw.cells {
        let mut out: [Vec<Simplex<D>>; D] = std::array::from_fn(|_| Vec::new());
        for d in 0..D {
            for (i, (base, ws)) in faces[d].iter().enumerate() {
                let &b = index
                    .get(base.as_str())
                    .ok_or_else(|| Error::Format(format!("face {i} of cell {id} references unknown cell {base}")))?;
                let mut level = *dims;
                if level[d] == 0 {
                    return Err(Error::Format(format!("cell {id} has faces in a direction of dimension 0")));
                }
                level[d] -= 1;
                let mut degen = Vec::with_capacity(D);
                for e in 0..D {
                    degen.push(Monotone::from_degeneracy_word(level[e], &ws[e])?);
                }
                out[d].push(Simplex { cell: b, degen: degen.try_into().unwrap() });
            }
        }
        cells.push(Cell { name: id.clone(), dims: *dims, faces: out });
    }
    Ok(Presheaf::from_cells_unchecked(raw.name, cells))
}

impl Codec<1> for Json {
    fn to_value(x: &Presheaf<1>) -> Value {
        let doc = SSetDoc {
            name: x.name().to_string(),
            cells: x
                .cells()
                .iter()
                .map(|c| CellDoc {
                    id: c.name.clone(),
                    dim: c.dims[0],
                    faces: c.faces[0]
                        .iter()
                        .map(|f| FaceRef { base: x.cell(f.cell).name.clone(), deg: f.degen[0].degeneracy_word() })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).unwrap()
    }

    fn from_value(v: &Value) -> Result<Presheaf<1>> {
        let doc: SSetDoc = serde_json::from_value(v.clone())?;
        let raw = Raw {
            name: doc.name,
            cells: doc
                .cells
                .into_iter()
                .map(|c| (c.id, [c.dim], [c.faces.into_iter().map(|f| (f.base, [f.deg])).collect()]))
                .collect(),
        };
        resolve(raw)
    }

    fn face_value(x: &Presheaf<1>, s: &Simplex<1>) -> Value {
        json!({ "base": x.cell(s.cell).name, "deg": s.degen[0].degeneracy_word() })
    }

    fn face_from_value(x: &Presheaf<1>, v: &Value, level: [usize; 1]) -> Result<Simplex<1>> {
        let f: FaceRef = serde_json::from_value(v.clone())?;
        let cell = x.cell_id(&f.base).ok_or_else(|| Error::Format(format!("unknown cell {}", f.base)))?;
        let degen = Monotone::from_degeneracy_word(level[0], &f.deg)?;
        if degen.target_dim() != x.dims(cell)[0] {
            return Err(Error::Format(format!("degeneracy of {} has the wrong dimension", f.base)));
        }
        Ok(Simplex { cell, degen: [degen] })
    }
}

impl Codec<2> for Json {
    fn to_value(x: &Presheaf<2>) -> Value {
        let face = |f: &Simplex<2>| {
            let [h, v] = words(f);
            BiFaceRef { base: x.cell(f.cell).name.clone(), hdeg: h, vdeg: v }
        };
        let doc = BiSetDoc {
            name: x.name().to_string(),
            cells: x
                .cells()
                .iter()
                .map(|c| BiCellDoc {
                    id: c.name.clone(),
                    hdim: c.dims[0],
                    vdim: c.dims[1],
                    hfaces: c.faces[0].iter().map(face).collect(),
                    vfaces: c.faces[1].iter().map(face).collect(),
                })
                .collect(),
        };
        serde_json::to_value(doc).unwrap()
    }

    fn from_value(v: &Value) -> Result<Presheaf<2>> {
        let doc: BiSetDoc = serde_json::from_value(v.clone())?;
        let conv = |fs: Vec<BiFaceRef>| fs.into_iter().map(|f| (f.base, [f.hdeg, f.vdeg])).collect();
        let raw = Raw {
            name: doc.name,
            cells: doc.cells.into_iter().map(|c| (c.id, [c.hdim, c.vdim], [conv(c.hfaces), conv(c.vfaces)])).collect(),
        };
        resolve(raw)
    }

    fn face_value(x: &Presheaf<2>, s: &Simplex<2>) -> Value {
        let [h, v] = words(s);
        json!({ "base": x.cell(s.cell).name, "hdeg": h, "vdeg": v })
    }

    fn face_from_value(x: &Presheaf<2>, v: &Value, level: [usize; 2]) -> Result<Simplex<2>> {
        let f: BiFaceRef = serde_json::from_value(v.clone())?;
        let cell = x.cell_id(&f.base).ok_or_else(|| Error::Format(format!("unknown cell {}", f.base)))?;
        let h = Monotone::from_degeneracy_word(level[0], &f.hdeg)?;
        let w = Monotone::from_degeneracy_word(level[1], &f.vdeg)?;
        if [h.target_dim(), w.target_dim()] != x.dims(cell) {
            return Err(Error::Format(format!("degeneracy of {} has the wrong dimension", f.base)));
        }
        Ok(Simplex { cell, degen: [h, w] })
    }
}

pub fn sset_to_value(x: &Presheaf<1>) -> Value {
    <Json as Codec<1>>::to_value(x)
}

pub fn sset_from_value(v: &Value) -> Result<Presheaf<1>> {
    let x = <Json as Codec<1>>::from_value(v)?;
    if let Some(msg) = x.structure_violation() {
        return Err(Error::Invalid(msg));
    }
    Ok(x)
}

pub fn bisset_to_value(x: &Presheaf<2>) -> Value {
    <Json as Codec<2>>::to_value(x)
}

pub fn bisset_from_value(v: &Value) -> Result<Presheaf<2>> {
    let x = <Json as Codec<2>>::from_value(v)?;
    if let Some(msg) = x.structure_violation() {
        return Err(Error::Invalid(msg));
    }
    Ok(x)
}

/// Validate a presheaf: structure first, then the simplicial identities.
pub fn validate<const D: usize>(x: &Presheaf<D>) -> Verdict {
    if let Some(msg) = x.structure_violation() {
        return Verdict::no(json!({ "violation": msg }));
    }
    if let Some(msg) = x.identity_violation() {
        return Verdict::no(json!({ "violation": msg }));
    }
    Verdict::yes(json!({ "cells": x.len() }))
}

/// Validate a raw document; malformed input yields `No`, never an error.
pub fn validate_document<const D: usize>(v: &Value) -> Verdict
where
    Json: Codec<D>,
{
    match <Json as Codec<D>>::from_value(v) {
        Ok(x) => validate(&x),
        Err(e) => Verdict::no(json!({ "violation": e.to_string() })),
    }
}

/// Map document; `domain`/`codomain` may be inline documents or names
/// looked up in `named`.
pub fn map_to_value<const D: usize>(f: &Map<D>) -> Value
where
    Json: Codec<D>,
{
    let assignment: serde_json::Map<String, Value> = f
        .images()
        .iter()
        .enumerate()
        .map(|(c, s)| (f.dom().cell(c).name.clone(), <Json as Codec<D>>::face_value(f.cod(), s)))
        .collect();
    json!({
        "domain": <Json as Codec<D>>::to_value(f.dom()),
        "codomain": <Json as Codec<D>>::to_value(f.cod()),
        "assignment": assignment,
    })
}

pub fn assignment_value<const D: usize>(f: &Map<D>) -> Value
where
    Json: Codec<D>,
{
    let assignment: serde_json::Map<String, Value> = f
        .images()
        .iter()
        .enumerate()
        .map(|(c, s)| (f.dom().cell(c).name.clone(), <Json as Codec<D>>::face_value(f.cod(), s)))
        .collect();
    Value::Object(assignment)
}

pub fn resolve_complex<const D: usize>(v: &Value, named: &HashMap<String, Arc<Presheaf<D>>>) -> Result<Arc<Presheaf<D>>>
where
    Json: Codec<D>,
{
    match v {
        Value::String(name) => named.get(name).cloned().ok_or_else(|| Error::Format(format!("unknown complex {name}"))),
        other => {
            let x = <Json as Codec<D>>::from_value(other)?;
            if let Some(msg) = x.structure_violation() {
                return Err(Error::Invalid(msg));
            }
            Ok(Arc::new(x))
        }
    }
}

/// Read an assignment between known complexes; the result is checked.
pub fn assignment_from_value<const D: usize>(dom: &Arc<Presheaf<D>>, cod: &Arc<Presheaf<D>>, v: &Value) -> Result<Map<D>>
where
    Json: Codec<D>,
{
    let obj = v.as_object().ok_or_else(|| Error::Format("assignment must be an object".into()))?;
    let mut images = Vec::with_capacity(dom.len());
    for c in 0..dom.len() {
        let name = &dom.cell(c).name;
        let entry = obj.get(name).ok_or_else(|| Error::Format(format!("assignment misses cell {name}")))?;
        images.push(<Json as Codec<D>>::face_from_value(cod, entry, dom.dims(c))?);
    }
    Map::new(dom.clone(), cod.clone(), images)
}

pub fn map_from_value<const D: usize>(v: &Value, named: &HashMap<String, Arc<Presheaf<D>>>) -> Result<Map<D>>
where
    Json: Codec<D>,
{
    let dom = resolve_complex(v.get("domain").ok_or_else(|| Error::Format("map without domain".into()))?, named)?;
    let cod = resolve_complex(v.get("codomain").ok_or_else(|| Error::Format("map without codomain".into()))?, named)?;
    assignment_from_value(&dom, &cod, v.get("assignment").unwrap_or(&Value::Null))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{horn, inclusion, simplex};

    #[test]
    fn round_trip_simplex() {
        let x = simplex(3);
        let v = sset_to_value(&x);
        let y = sset_from_value(&v).unwrap();
        assert_eq!(y.len(), x.len());
        assert!(validate(&y).is_yes());
    }

    #[test]
    fn dangling_and_swapped_faces_fail() {
        let mut v = sset_to_value(&simplex(2));
        v["cells"][6]["faces"][0]["base"] = json!("nope");
        assert!(validate_document::<1>(&v).is_no());

        let mut w = sset_to_value(&simplex(2));
        let faces = w["cells"][6]["faces"].as_array_mut().unwrap();
        faces.swap(0, 1);
        assert!(validate_document::<1>(&w).is_no());
    }

    #[test]
    fn map_round_trip() {
        let f = inclusion(&horn(2, 1), &simplex(2));
        let v = map_to_value(&f);
        let g = map_from_value::<1>(&v, &HashMap::new()).unwrap();
        assert!(g.same_assignment(&f));
    }
}
