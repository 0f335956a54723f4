//! Backtracking enumeration of presheaf maps.
//!
//! Domain cells are assigned faces first. Once the faces of a cell are
//! assigned, its image must be a simplex of the codomain with exactly that
//! boundary, which the codomain's level index answers directly; the order
//! places such constrained cells as early as possible so that inconsistent
//! partial maps are pruned before the next free choice.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::Map;
use crate::ops::Monotone;
use crate::presheaf::{LevelIndex, Presheaf, Simplex};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

pub struct HomSearch<'a, const D: usize> {
    dom: Arc<Presheaf<D>>,
    cod: Arc<Presheaf<D>>,
    fixed: Vec<Option<Simplex<D>>>,
    over: Option<(&'a Map<D>, Vec<Simplex<D>>)>,
    injective: bool,
    filter: Option<&'a dyn Fn(usize, &Simplex<D>) -> bool>,
    budget: u64,
    infeasible: bool,
}

/// Result of a bounded enumeration.
#[derive(Debug)]
pub struct Enumeration<const D: usize> {
    pub maps: Vec<Map<D>>,
    pub complete: bool,
    pub budget: u64,
}

/// A section of a surjection: the first preimage of each value.
pub fn section(s: &Monotone) -> Monotone {
    let mut out = Vec::with_capacity(s.target_dim() + 1);
    for (i, &v) in s.values().iter().enumerate() {
        if out.len() == v as usize {
            out.push(i);
        }
    }
    Monotone::new(out, s.source_dim())
}

impl<'a, const D: usize> HomSearch<'a, D> {
    pub fn new(dom: &Arc<Presheaf<D>>, cod: &Arc<Presheaf<D>>) -> Self {
        HomSearch {
            dom: dom.clone(),
            cod: cod.clone(),
            fixed: vec![None; dom.len()],
            over: None,
            injective: false,
            filter: None,
            budget: DEFAULT_BUDGET,
            infeasible: false,
        }
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Only maps sending nondegenerate cells injectively to nondegenerate cells.
    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    pub fn filter(mut self, f: &'a dyn Fn(usize, &Simplex<D>) -> bool) -> Self {
        self.filter = Some(f);
        self
    }

    /// Require `g(c) = s` for the given cells.
    pub fn fix(mut self, cell: usize, s: Simplex<D>) -> Self {
        match &self.fixed[cell] {
            Some(old) if *old != s => self.infeasible = true,
            _ => self.fixed[cell] = Some(s),
        }
        self
    }

    /// Require `g ∘ u = top`.
    pub fn extending(mut self, u: &Map<D>, top: &Map<D>) -> Self {
        for (a, img) in u.images().iter().enumerate() {
            let want = top.image_of_cell(a);
            let sections: [Monotone; D] = std::array::from_fn(|d| section(&img.degen[d]));
            let value = self.cod.act(want, &sections);
            if value.degenerate(&img.degen) != *want {
                self.infeasible = true;
                return self;
            }
            self = self.fix(img.cell, value);
        }
        self
    }

    /// Require `f ∘ g = bottom`.
    pub fn over(mut self, f: &'a Map<D>, bottom: &Map<D>) -> Self {
        let targets = (0..self.dom.len()).map(|c| bottom.image_of_cell(c).clone()).collect();
        self.over = Some((f, targets));
        self
    }

    /// Visit every map; stops early when `visit` breaks. Returns whether it
    /// stopped early.
    pub fn run(&self, mut visit: impl FnMut(&[Simplex<D>]) -> ControlFlow<()>) -> Result<bool> {
        if self.infeasible {
            return Ok(false);
        }
        let order = assignment_order(&self.dom);
        let levels: Vec<Arc<LevelIndex<D>>> = order.iter().map(|&c| self.cod.indexed_level(self.dom.dims(c))).collect();
        let mut state = State {
            images: vec![None; self.dom.len()],
            used: vec![false; self.cod.len()],
            nodes: 0,
        };
        match self.extend(0, &order, &levels, &mut state, &mut visit) {
            Ok(ControlFlow::Break(())) => Ok(true),
            Ok(ControlFlow::Continue(())) => Ok(false),
            Err(e) => Err(e),
        }
    }

    fn extend(
        &self,
        pos: usize,
        order: &[usize],
        levels: &[Arc<LevelIndex<D>>],
        st: &mut State<D>,
        visit: &mut impl FnMut(&[Simplex<D>]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if pos == order.len() {
            let images: Vec<Simplex<D>> = st.images.iter().map(|s| s.clone().unwrap()).collect();
            return Ok(visit(&images));
        }
        let c = order[pos];
        let cell = self.dom.cell(c);
        let key: Vec<Simplex<D>> = cell
            .faces
            .iter()
            .flatten()
            .map(|f| st.images[f.cell].as_ref().unwrap().degenerate(&f.degen))
            .collect();
        let level = &levels[pos];
        let single;
        let candidates: &[usize] = match &self.fixed[c] {
            Some(s) => match level.position.get(s) {
                Some(&i) if level.matching(&key).contains(&i) => {
                    single = [i];
                    &single
                }
                _ => &[],
            },
            None => level.matching(&key),
        };
        for &i in candidates {
            st.nodes += 1;
            if st.nodes > self.budget {
                return Err(Error::Budget(self.budget));
            }
            let s = &level.simplices[i];
            if self.injective && (!s.is_nondegenerate() || st.used[s.cell]) {
                continue;
            }
            if let Some((f, targets)) = &self.over {
                if f.apply(s) != targets[c] {
                    continue;
                }
            }
            if let Some(filter) = self.filter {
                if !filter(c, s) {
                    continue;
                }
            }
            if self.injective {
                st.used[s.cell] = true;
            }
            st.images[c] = Some(s.clone());
            let flow = self.extend(pos + 1, order, levels, st, visit)?;
            st.images[c] = None;
            if self.injective {
                st.used[s.cell] = false;
            }
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn to_map(&self, images: &[Simplex<D>]) -> Map<D> {
        Map::new_unchecked(self.dom.clone(), self.cod.clone(), images.to_vec())
    }

    pub fn first(&self) -> Result<Option<Map<D>>> {
        let mut found = None;
        self.run(|imgs| {
            found = Some(self.to_map(imgs));
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    pub fn all(&self) -> Result<Vec<Map<D>>> {
        let mut out = Vec::new();
        self.run(|imgs| {
            out.push(self.to_map(imgs));
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Count maps, stopping once `limit` is reached.
    pub fn count(&self, limit: Option<usize>) -> Result<usize> {
        let mut n = 0;
        self.run(|_| {
            n += 1;
            if limit.is_some_and(|l| n >= l) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(n)
    }

    /// Enumerate, keeping whatever was found if the budget runs out.
    pub fn enumerate(&self) -> Enumeration<D> {
        let mut maps = Vec::new();
        let res = self.run(|imgs| {
            maps.push(self.to_map(imgs));
            ControlFlow::Continue(())
        });
        Enumeration { maps, complete: res.is_ok(), budget: self.budget }
    }
}

/// Faces before cofaces. Among the cells whose faces are all placed, cells
/// of positive dimension come before vertices, then cells completing the
/// most cofaces, then higher dimension, then lower id.
fn assignment_order<const D: usize>(dom: &Presheaf<D>) -> Vec<usize> {
    let n = dom.len();
    let mut faces: Vec<Vec<usize>> = dom.cells().iter().map(|c| c.faces.iter().flatten().map(|f| f.cell).collect()).collect();
    let mut cofaces = vec![Vec::new(); n];
    for (c, fs) in faces.iter_mut().enumerate() {
        fs.sort_unstable();
        fs.dedup();
        for &f in fs.iter() {
            cofaces[f].push(c);
        }
    }
    let mut missing: Vec<usize> = faces.iter().map(Vec::len).collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let key = |c: usize| {
            let dim: usize = dom.dims(c).iter().sum();
            let completes = cofaces[c].iter().filter(|&&d| missing[d] == 1).count();
            (dim > 0, completes, dim, std::cmp::Reverse(c))
        };
        let next = (0..n).filter(|&c| !placed[c] && missing[c] == 0).max_by_key(|&c| key(c)).expect("faces are cells of lower dimension");
        placed[next] = true;
        order.push(next);
        for &d in &cofaces[next] {
            missing[d] -= 1;
        }
    }
    order
}

struct State<const D: usize> {
    images: Vec<Option<Simplex<D>>>,
    used: Vec<bool>,
    nodes: u64,
}

/// All maps `a -> x` in deterministic order.
pub fn hom_enumerate<const D: usize>(a: &Arc<Presheaf<D>>, x: &Arc<Presheaf<D>>) -> Enumeration<D> {
    HomSearch::new(a, x).enumerate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_is_right_inverse() {
        let s = Monotone::new([0, 0, 1, 2, 2], 2);
        assert_eq!(s.compose(&section(&s)), Monotone::identity(2));
    }
}
