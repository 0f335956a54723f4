//! Maps between finite presheaves, given by the images of nondegenerate cells.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presheaf::{Presheaf, Simplex};

#[derive(Clone, Debug)]
pub struct Map<const D: usize> {
    dom: Arc<Presheaf<D>>,
    cod: Arc<Presheaf<D>>,
    images: Vec<Simplex<D>>,
}

pub type SimplicialMap = Map<1>;
pub type BisimplicialMap = Map<2>;

impl<const D: usize> Map<D> {
    /// Checked constructor: levels match and faces commute.
    pub fn new(dom: Arc<Presheaf<D>>, cod: Arc<Presheaf<D>>, images: Vec<Simplex<D>>) -> Result<Self> {
        let m = Map { dom, cod, images };
        if let Some(msg) = m.violation() {
            return Err(Error::Invalid(msg));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(dom: Arc<Presheaf<D>>, cod: Arc<Presheaf<D>>, images: Vec<Simplex<D>>) -> Self {
        debug_assert_eq!(images.len(), dom.len());
        Map { dom, cod, images }
    }

    pub fn identity(x: &Arc<Presheaf<D>>) -> Self {
        let images = (0..x.len()).map(|c| x.identity_simplex(c)).collect();
        Map { dom: x.clone(), cod: x.clone(), images }
    }

    /// The unique map out of the empty presheaf.
    pub fn from_empty(cod: &Arc<Presheaf<D>>) -> Self {
        Map { dom: Arc::new(Presheaf::empty("empty")), cod: cod.clone(), images: Vec::new() }
    }

    pub fn dom(&self) -> &Arc<Presheaf<D>> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Presheaf<D>> {
        &self.cod
    }

    pub fn images(&self) -> &[Simplex<D>] {
        &self.images
    }

    pub fn image_of_cell(&self, c: usize) -> &Simplex<D> {
        &self.images[c]
    }

    /// First problem with the assignment, if any.
    pub fn violation(&self) -> Option<String> {
        if self.images.len() != self.dom.len() {
            return Some(format!("assignment covers {} of {} cells", self.images.len(), self.dom.len()));
        }
        for (c, img) in self.images.iter().enumerate() {
            let cell = self.dom.cell(c);
            if img.cell >= self.cod.len() {
                return Some(format!("cell {} maps to a missing cell", cell.name));
            }
            let base = self.cod.dims(img.cell);
            for d in 0..D {
                if !img.degen[d].is_surjective() || img.degen[d].target_dim() != base[d] {
                    return Some(format!("image of cell {} is not in normal form", cell.name));
                }
            }
            if img.level() != cell.dims {
                return Some(format!("cell {} maps to a simplex of the wrong dimension", cell.name));
            }
        }
        for (c, img) in self.images.iter().enumerate() {
            let cell = self.dom.cell(c);
            for d in 0..D {
                for (i, f) in cell.faces[d].iter().enumerate() {
                    if self.cod.face(img, d, i) != self.apply(f) {
                        return Some(format!("face {i} (direction {d}) of cell {} does not commute", cell.name));
                    }
                }
            }
        }
        None
    }

    pub fn apply(&self, s: &Simplex<D>) -> Simplex<D> {
        self.images[s.cell].degenerate(&s.degen)
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &Map<D>) -> Map<D> {
        debug_assert!(Arc::ptr_eq(&self.cod, &after.dom) || self.cod.len() == after.dom.len());
        let images = self.images.iter().map(|s| after.apply(s)).collect();
        Map { dom: self.dom.clone(), cod: after.cod.clone(), images }
    }

    pub fn with_cod(&self, cod: Arc<Presheaf<D>>) -> Map<D> {
        Map { dom: self.dom.clone(), cod, images: self.images.clone() }
    }

    pub fn with_dom(&self, dom: Arc<Presheaf<D>>) -> Map<D> {
        Map { dom, cod: self.cod.clone(), images: self.images.clone() }
    }

    pub fn same_assignment(&self, other: &Map<D>) -> bool {
        self.images == other.images
    }

    /// Injective on nondegenerate cells and sends them to nondegenerate cells.
    pub fn is_mono(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for s in &self.images {
            if !s.is_nondegenerate() || seen[s.cell] {
                return false;
            }
            seen[s.cell] = true;
        }
        true
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.dom.len() == self.cod.len()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<Map<D>> {
        if !self.is_iso() {
            return None;
        }
        let mut images = vec![None; self.cod.len()];
        for (c, s) in self.images.iter().enumerate() {
            images[s.cell] = Some(self.dom.identity_simplex(c));
        }
        Some(Map { dom: self.cod.clone(), cod: self.dom.clone(), images: images.into_iter().map(Option::unwrap).collect() })
    }

    /// Image subobject of a mono: which codomain cells are hit.
    pub fn hit_cells(&self) -> Vec<bool> {
        let mut hit = vec![false; self.cod.len()];
        for s in &self.images {
            hit[s.cell] = true;
        }
        hit
    }

    /// Inclusion of the sub-presheaf produced by [`Presheaf::sub`].
    pub fn from_remap(sub: Arc<Presheaf<D>>, ambient: Arc<Presheaf<D>>, remap: &[Option<usize>]) -> Map<D> {
        let mut images = vec![None; sub.len()];
        for (old, new) in remap.iter().enumerate() {
            if let Some(n) = new {
                images[*n] = Some(ambient.identity_simplex(old));
            }
        }
        Map { dom: sub, cod: ambient, images: images.into_iter().map(Option::unwrap).collect() }
    }
}

impl Map<1> {
    /// Cell ids of codomain vertices hit by domain vertices, in domain order.
    pub fn vertex_images(&self) -> Vec<usize> {
        self.dom.vertices().into_iter().map(|v| self.images[v].cell).collect()
    }
}
