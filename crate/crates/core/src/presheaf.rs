//! Finite presheaves on `Δ^D`, stored by nondegenerate cells.
//!
//! `D = 1` gives simplicial sets and `D = 2` bisimplicial sets. Every
//! simplex is a pair of a nondegenerate cell and one surjection per
//! direction (Eilenberg–Zilber normal form); two simplices are equal iff
//! their normal forms are equal.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::ops::Monotone;

pub type Level<const D: usize> = [usize; D];

/// A simplex in normal form: `cell` degenerated by `degen[d]` in direction `d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex<const D: usize> {
    pub cell: usize,
    pub degen: [Monotone; D],
}

impl<const D: usize> Simplex<D> {
    pub fn level(&self) -> Level<D> {
        std::array::from_fn(|d| self.degen[d].source_dim())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degen.iter().all(Monotone::is_identity)
    }

    /// Further degenerate by surjections `ops` (one per direction).
    pub fn degenerate(&self, ops: &[Monotone; D]) -> Simplex<D> {
        Simplex { cell: self.cell, degen: std::array::from_fn(|d| self.degen[d].compose(&ops[d])) }
    }
}

#[derive(Clone, Debug)]
pub struct Cell<const D: usize> {
    pub name: String,
    pub dims: Level<D>,
    /// `faces[d][i]` is the `i`-th face in direction `d`; empty when `dims[d] == 0`.
    pub faces: [Vec<Simplex<D>>; D],
}

pub struct LevelIndex<const D: usize> {
    pub simplices: Vec<Simplex<D>>,
    pub position: HashMap<Simplex<D>, usize>,
    by_boundary: OnceLock<HashMap<Vec<Simplex<D>>, Vec<usize>>>,
}

impl<const D: usize> LevelIndex<D> {
    /// Simplices with the given boundary; requires [`Presheaf::indexed_level`].
    pub fn matching(&self, boundary: &[Simplex<D>]) -> &[usize] {
        let table = self.by_boundary.get().expect("level index built without boundary table");
        table.get(boundary).map(Vec::as_slice).unwrap_or(&[])
    }
}

pub struct Presheaf<const D: usize> {
    name: String,
    cells: Vec<Cell<D>>,
    by_name: HashMap<String, usize>,
    levels: Mutex<HashMap<Level<D>, Arc<LevelIndex<D>>>>,
}

pub type SimplicialSet = Presheaf<1>;
pub type BisimplicialSet = Presheaf<2>;

impl<const D: usize> Clone for Presheaf<D> {
    fn clone(&self) -> Self {
        Presheaf {
            name: self.name.clone(),
            cells: self.cells.clone(),
            by_name: self.by_name.clone(),
            levels: Mutex::new(HashMap::new()),
        }
    }
}

impl<const D: usize> fmt::Debug for Presheaf<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presheaf").field("name", &self.name).field("cells", &self.cells.len()).finish()
    }
}

pub fn unit_level<const D: usize>(d: usize) -> Level<D> {
    std::array::from_fn(|e| usize::from(e == d))
}

pub fn sub_level<const D: usize>(level: Level<D>, d: usize) -> Level<D> {
    let mut out = level;
    out[d] -= 1;
    out
}

pub fn identity_ops<const D: usize>(level: Level<D>) -> [Monotone; D] {
    std::array::from_fn(|d| Monotone::identity(level[d]))
}

/// Operator acting in one direction only.
pub fn ops_in<const D: usize>(level: Level<D>, dir: usize, op: Monotone) -> [Monotone; D] {
    let mut ops = identity_ops(level);
    ops[dir] = op;
    ops
}

/// All levels `≤ caps` componentwise, in order of increasing total degree.
pub fn levels_upto<const D: usize>(caps: Level<D>) -> Vec<Level<D>> {
    let mut out = vec![[0; D]];
    for d in 0..D {
        let mut next = Vec::new();
        for l in &out {
            for v in 0..=caps[d] {
                let mut l2 = *l;
                l2[d] = v;
                next.push(l2);
            }
        }
        out = next;
    }
    out.sort_by_key(|l| (l.iter().sum::<usize>(), *l));
    out
}

fn leq<const D: usize>(a: Level<D>, b: Level<D>) -> bool {
    (0..D).all(|d| a[d] <= b[d])
}

impl<const D: usize> Presheaf<D> {
    /// Build from cells, checking references and face shapes. Simplicial
    /// identities are not checked here (see [`Presheaf::identity_violation`]).
    pub fn from_cells(name: impl Into<String>, cells: Vec<Cell<D>>) -> Result<Self> {
        let out = Self::from_cells_unchecked(name, cells);
        if out.by_name.len() != out.cells.len() {
            return Err(Error::Invalid("duplicate cell ids".into()));
        }
        if let Some(msg) = out.structure_violation() {
            return Err(Error::Invalid(msg));
        }
        Ok(out)
    }

    pub(crate) fn from_cells_unchecked(name: impl Into<String>, cells: Vec<Cell<D>>) -> Self {
        let by_name = cells.iter().enumerate().map(|(i, c)| (c.name.clone(), i)).collect();
        Presheaf { name: name.into(), cells, by_name, levels: Mutex::new(HashMap::new()) }
    }

    pub fn empty(name: impl Into<String>) -> Self {
        Self::from_cells_unchecked(name, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let mut out = self.clone();
        out.name = name.into();
        out
    }

    /// The same presheaf with cells renamed.
    pub fn with_cell_names(&self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.cells.len());
        let cells = self.cells.iter().zip(names).map(|(c, name)| Cell { name, ..c.clone() }).collect();
        Self::from_cells_unchecked(self.name.clone(), cells)
    }

    pub fn cells(&self) -> &[Cell<D>] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell<D> {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_id(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn dims(&self, id: usize) -> Level<D> {
        self.cells[id].dims
    }

    /// Componentwise maximum of cell dimensions.
    pub fn max_dims(&self) -> Level<D> {
        let mut out = [0; D];
        for c in &self.cells {
            for d in 0..D {
                out[d] = out[d].max(c.dims[d]);
            }
        }
        out
    }

    /// Number of nondegenerate cells per level.
    pub fn cell_counts(&self) -> std::collections::BTreeMap<Level<D>, usize> {
        let mut out = std::collections::BTreeMap::new();
        for c in &self.cells {
            *out.entry(c.dims).or_insert(0) += 1;
        }
        out
    }

    pub fn identity_simplex(&self, id: usize) -> Simplex<D> {
        Simplex { cell: id, degen: identity_ops(self.cells[id].dims) }
    }

    /// First structural problem found, if any: face counts, levels of face
    /// references and normal-form validity.
    pub fn structure_violation(&self) -> Option<String> {
        for (id, c) in self.cells.iter().enumerate() {
            for d in 0..D {
                let want = if c.dims[d] == 0 { 0 } else { c.dims[d] + 1 };
                if c.faces[d].len() != want {
                    return Some(format!(
                        "cell {} has {} faces in direction {d}, expected {want}",
                        c.name,
                        c.faces[d].len()
                    ));
                }
                for (i, f) in c.faces[d].iter().enumerate() {
                    let Some(base) = self.cells.get(f.cell) else {
                        return Some(format!("face {i} of cell {} references a missing cell", c.name));
                    };
                    if f.cell == id {
                        return Some(format!("face {i} of cell {} references itself", c.name));
                    }
                    let want_level = sub_level(c.dims, d);
                    if f.level() != want_level {
                        return Some(format!("face {i} of cell {} has the wrong dimension", c.name));
                    }
                    for e in 0..D {
                        if !f.degen[e].is_surjective() || f.degen[e].target_dim() != base.dims[e] {
                            return Some(format!(
                                "face {i} of cell {} does not reduce to cell {} of dimension {:?}",
                                c.name, base.name, base.dims
                            ));
                        }
                    }
                    if !leq(base.dims, want_level) {
                        return Some(format!("face {i} of cell {} is too large", c.name));
                    }
                }
            }
        }
        None
    }

    /// First violated simplicial identity, if any. Assumes the structure is valid.
    pub fn identity_violation(&self) -> Option<String> {
        for c in &self.cells {
            for d in 0..D {
                let n = c.dims[d];
                for j in 0..if n >= 2 { n + 1 } else { 0 } {
                    for i in 0..j {
                        let lhs = self.face(&c.faces[d][j], d, i);
                        let rhs = self.face(&c.faces[d][i], d, j - 1);
                        if lhs != rhs {
                            return Some(format!(
                                "d{i} d{j} != d{} d{i} on cell {} (direction {d}, dimension {n})",
                                j - 1,
                                c.name
                            ));
                        }
                    }
                }
                for e in (d + 1)..D {
                    for i in 0..c.faces[d].len() {
                        for j in 0..c.faces[e].len() {
                            if self.face(&c.faces[d][i], e, j) != self.face(&c.faces[e][j], d, i) {
                                return Some(format!(
                                    "faces in directions {d} and {e} do not commute on cell {}",
                                    c.name
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Apply monotone maps `ops[d] : [k_d] -> [level_d]` to `s`.
    pub fn act(&self, s: &Simplex<D>, ops: &[Monotone; D]) -> Simplex<D> {
        let mut epis: [Option<Monotone>; D] = std::array::from_fn(|_| None);
        let monos: [Monotone; D] = std::array::from_fn(|d| {
            let (e, m) = s.degen[d].compose(&ops[d]).epi_mono();
            epis[d] = Some(e);
            m
        });
        let base = self.face_inj(s.cell, monos);
        Simplex { cell: base.cell, degen: std::array::from_fn(|d| base.degen[d].compose(epis[d].as_ref().unwrap())) }
    }

    /// Restrict the cell `id` along injections `monos`.
    fn face_inj(&self, id: usize, monos: [Monotone; D]) -> Simplex<D> {
        for d in 0..D {
            if let Some(j) = monos[d].first_missing() {
                let face = &self.cells[id].faces[d][j];
                let mut rest = monos;
                rest[d] = rest[d].drop_value(j);
                return self.act(face, &rest);
            }
        }
        Simplex { cell: id, degen: monos }
    }

    pub fn face(&self, s: &Simplex<D>, dir: usize, i: usize) -> Simplex<D> {
        let level = s.level();
        self.act(s, &ops_in(level, dir, Monotone::coface(level[dir], i)))
    }

    pub fn degeneracy(&self, s: &Simplex<D>, dir: usize, j: usize) -> Simplex<D> {
        let level = s.level();
        s.degenerate(&ops_in(level, dir, Monotone::codegeneracy(level[dir], j)))
    }

    /// All faces of `s` in all directions, direction-major.
    pub fn boundary(&self, s: &Simplex<D>) -> Vec<Simplex<D>> {
        let level = s.level();
        let mut out = Vec::new();
        for d in 0..D {
            if level[d] > 0 {
                for i in 0..=level[d] {
                    out.push(self.face(s, d, i));
                }
            }
        }
        out
    }

    /// Boundary of a nondegenerate cell, read off the stored faces.
    pub fn cell_boundary(&self, id: usize) -> Vec<Simplex<D>> {
        self.cells[id].faces.iter().flatten().cloned().collect()
    }

    /// All simplices (degenerate or not) at `level`, ordered by cell then
    /// by degeneracy operators.
    pub fn level(&self, level: Level<D>) -> Arc<LevelIndex<D>> {
        if let Some(l) = self.levels.lock().unwrap().get(&level) {
            return l.clone();
        }
        let mut simplices = Vec::new();
        for (id, c) in self.cells.iter().enumerate() {
            if !leq(c.dims, level) {
                continue;
            }
            let per_dir: Vec<Vec<Monotone>> = (0..D).map(|d| Monotone::surjections(level[d], c.dims[d])).collect();
            let mut idx = [0usize; D];
            'outer: loop {
                simplices.push(Simplex { cell: id, degen: std::array::from_fn(|d| per_dir[d][idx[d]].clone()) });
                for d in (0..D).rev() {
                    idx[d] += 1;
                    if idx[d] < per_dir[d].len() {
                        continue 'outer;
                    }
                    idx[d] = 0;
                }
                break;
            }
        }
        let position = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let built = Arc::new(LevelIndex { simplices, position, by_boundary: OnceLock::new() });
        self.levels.lock().unwrap().entry(level).or_insert(built).clone()
    }

    pub fn count(&self, level: Level<D>) -> usize {
        self.level(level).simplices.len()
    }

    /// The level index with its boundary table initialised.
    pub fn indexed_level(&self, level: Level<D>) -> Arc<LevelIndex<D>> {
        let idx = self.level(level);
        idx.by_boundary.get_or_init(|| {
            let mut table: HashMap<Vec<Simplex<D>>, Vec<usize>> = HashMap::new();
            for (i, s) in idx.simplices.iter().enumerate() {
                table.entry(self.boundary(s)).or_default().push(i);
            }
            table
        });
        idx
    }

    /// Sub-presheaf on the cells satisfying `keep`; `keep` must be closed
    /// under faces. Returns the new set and, for each old cell, its new id.
    pub fn sub(&self, name: impl Into<String>, keep: impl Fn(usize) -> bool) -> (Self, Vec<Option<usize>>) {
        let mut remap = vec![None; self.cells.len()];
        let mut cells = Vec::new();
        for (id, c) in self.cells.iter().enumerate() {
            if keep(id) {
                remap[id] = Some(cells.len());
                let faces = std::array::from_fn(|d| {
                    c.faces[d]
                        .iter()
                        .map(|f| Simplex { cell: remap[f.cell].expect("sub: keep is not closed under faces"), degen: f.degen.clone() })
                        .collect()
                });
                cells.push(Cell { name: c.name.clone(), dims: c.dims, faces });
            }
        }
        (Self::from_cells_unchecked(name, cells), remap)
    }

    /// Cells reachable from `roots` by taking faces (the generated subcomplex).
    pub fn closure(&self, roots: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut keep = vec![false; self.cells.len()];
        let mut stack: Vec<usize> = roots.into_iter().collect();
        while let Some(c) = stack.pop() {
            if keep[c] {
                continue;
            }
            keep[c] = true;
            stack.extend(self.cells[c].faces.iter().flatten().map(|f| f.cell));
        }
        keep
    }

    /// The skeleton: cells with `dims ≤ caps`.
    pub fn skeleton(&self, caps: Level<D>) -> Self {
        self.sub(format!("sk{caps:?}({})", self.name), |c| leq(self.cells[c].dims, caps)).0
    }

    /// Append cells of `other` after those of `self`.
    pub fn coproduct(&self, other: &Self, name: impl Into<String>) -> Self {
        let offset = self.cells.len();
        let mut cells: Vec<Cell<D>> = self.cells.iter().map(|c| Cell { name: format!("l.{}", c.name), ..c.clone() }).collect();
        for c in &other.cells {
            let faces = std::array::from_fn(|d| {
                c.faces[d].iter().map(|f| Simplex { cell: f.cell + offset, degen: f.degen.clone() }).collect()
            });
            cells.push(Cell { name: format!("r.{}", c.name), dims: c.dims, faces });
        }
        Self::from_cells_unchecked(name, cells)
    }
}

impl Presheaf<1> {
    /// Largest dimension of a nondegenerate cell (0 for the empty set).
    pub fn dim(&self) -> usize {
        self.max_dims()[0]
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.cells.len()).filter(|&c| self.cells[c].dims[0] == 0).collect()
    }

    pub fn cells_of_dim(&self, n: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&c| self.cells[c].dims[0] == n).collect()
    }

    /// Vertex `i` of a simplex, as a cell id.
    pub fn vertex_of(&self, s: &Simplex<1>, i: usize) -> usize {
        self.act(s, &[Monotone::vertex(s.level()[0], i)]).cell
    }

    pub fn simplices(&self, n: usize) -> Arc<LevelIndex<1>> {
        self.level([n])
    }

    /// The edge of `s` between its vertices `i ≤ j`.
    pub fn edge_of(&self, s: &Simplex<1>, i: usize, j: usize) -> Simplex<1> {
        self.act(s, &[Monotone::inclusion(&[i, j], s.level()[0])])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s1(cell: usize, m: Monotone) -> Simplex<1> {
        Simplex { cell, degen: [m] }
    }

    /// Δ[1] by hand: vertices 0, 1 and the edge.
    fn interval() -> SimplicialSet {
        let v = |n: &str| Cell { name: n.into(), dims: [0], faces: [vec![]] };
        let e = Cell {
            name: "01".into(),
            dims: [1],
            faces: [vec![s1(1, Monotone::identity(0)), s1(0, Monotone::identity(0))]],
        };
        Presheaf::from_cells("I", vec![v("0"), v("1"), e]).unwrap()
    }

    #[test]
    fn levels_count_degenerates() {
        let i = interval();
        assert_eq!(i.count([0]), 2);
        assert_eq!(i.count([1]), 3);
        assert_eq!(i.count([2]), 4);
        assert_eq!(i.count([5]), 7);
    }

    #[test]
    fn faces_of_degenerate_edge() {
        let i = interval();
        let e = i.identity_simplex(2);
        let t = i.degeneracy(&e, 0, 0);
        assert_eq!(i.face(&t, 0, 0), e);
        assert_eq!(i.face(&t, 0, 1), e);
        assert_eq!(i.face(&t, 0, 2), i.degeneracy(&i.identity_simplex(0), 0, 0));
        assert_eq!(i.vertex_of(&t, 2), 1);
        assert!(i.identity_violation().is_none());
    }

    #[test]
    fn structure_rejects_missing_faces() {
        let v = Cell { name: "0".into(), dims: [0], faces: [vec![]] };
        let e = Cell { name: "e".into(), dims: [1], faces: [vec![s1(0, Monotone::identity(0))]] };
        assert!(Presheaf::from_cells("bad", vec![v, e]).is_err());
    }

    #[test]
    fn level_enumeration_order() {
        assert_eq!(levels_upto([1, 1]), vec![[0, 0], [0, 1], [1, 0], [1, 1]]);
    }
}
