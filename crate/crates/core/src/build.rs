//! Assemble a presheaf from levelwise data.
//!
//! A [`LevelSource`] lists the elements of each level and the action of
//! simplicial operators; [`build`] recognises degenerate elements (those of
//! the form `s_j x`) and stores the rest as cells, up to the given caps.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::sync::Arc;

use crate::error::Result;
use crate::ops::Monotone;
use crate::search::section;
use crate::presheaf::{levels_upto, ops_in, sub_level, Cell, Level, Presheaf, Simplex};

pub trait LevelSource<const D: usize> {
    type Elem: Clone + Eq + Hash;

    fn elements(&self, level: Level<D>) -> Result<Vec<Self::Elem>>;

    /// Apply `op : [k] -> [level[dir]]` in direction `dir`.
    fn act(&self, e: &Self::Elem, level: Level<D>, dir: usize, op: &Monotone) -> Self::Elem;

    fn label(&self, e: &Self::Elem, level: Level<D>) -> String;
}

pub struct Built<const D: usize, E> {
    pub set: Arc<Presheaf<D>>,
    pub caps: Level<D>,
    pub tables: HashMap<Level<D>, HashMap<E, Simplex<D>>>,
    /// Element of each cell, with its level.
    pub cell_elems: Vec<E>,
    /// Elements per level, in source order.
    pub elements: HashMap<Level<D>, Vec<E>>,
}

impl<const D: usize, E: Clone + Eq + Hash> Built<D, E> {
    pub fn simplex_of(&self, e: &E, level: Level<D>) -> Option<&Simplex<D>> {
        self.tables.get(&level)?.get(e)
    }

    /// Like [`Built::simplex_of`], but also finds elements above the caps,
    /// which are degenerate when the build is exact.
    pub fn locate<S: LevelSource<D, Elem = E>>(&self, source: &S, e: &E, level: Level<D>) -> Option<Simplex<D>> {
        if let Some(s) = self.simplex_of(e, level) {
            return Some(s.clone());
        }
        for d in 0..D {
            let k = level[d];
            if k <= self.caps[d] {
                continue;
            }
            for j in 0..k {
                let sigma = Monotone::codegeneracy(k - 1, j);
                let face = source.act(e, level, d, &section(&sigma));
                let mut lower = level;
                lower[d] = k - 1;
                if source.act(&face, lower, d, &sigma) == *e {
                    let s = self.locate(source, &face, lower)?;
                    let ops = std::array::from_fn(|i| if i == d { sigma.clone() } else { Monotone::identity(level[i]) });
                    return Some(s.degenerate(&ops));
                }
            }
        }
        None
    }

    /// The element represented by a simplex.
    pub fn element_of<S: LevelSource<D, Elem = E>>(&self, source: &S, s: &Simplex<D>) -> E {
        let mut e = self.cell_elems[s.cell].clone();
        let mut level = self.set.dims(s.cell);
        for d in 0..D {
            e = source.act(&e, level, d, &s.degen[d]);
            level[d] = s.degen[d].source_dim();
        }
        e
    }
}

pub fn build<const D: usize, S: LevelSource<D>>(
    source: &S,
    name: impl Into<String>,
    caps: Level<D>,
) -> Result<Built<D, S::Elem>> {
    let mut tables: HashMap<Level<D>, HashMap<S::Elem, Simplex<D>>> = HashMap::new();
    let mut elements = HashMap::new();
    let mut cells: Vec<Cell<D>> = Vec::new();
    let mut cell_elems = Vec::new();
    let mut names: HashSet<String> = HashSet::new();
    for level in levels_upto(caps) {
        let elems = source.elements(level)?;
        let mut table = HashMap::with_capacity(elems.len());
        'elems: for e in &elems {
            if table.contains_key(e) {
                continue;
            }
            for d in 0..D {
                let n = level[d];
                for j in 0..n {
                    let x = source.act(e, level, d, &Monotone::coface(n, j));
                    let y = source.act(&x, sub_level(level, d), d, &Monotone::codegeneracy(n - 1, j));
                    if y == *e {
                        let base = &tables[&sub_level(level, d)][&x];
                        let s = base.degenerate(&ops_in(level, d, Monotone::codegeneracy(n - 1, j)));
                        table.insert(e.clone(), s);
                        continue 'elems;
                    }
                }
            }
            let faces = std::array::from_fn(|d| {
                let n = level[d];
                if n == 0 {
                    return Vec::new();
                }
                let lower = &tables[&sub_level(level, d)];
                (0..=n)
                    .map(|i| {
                        let f = source.act(e, level, d, &Monotone::coface(n, i));
                        lower.get(&f).cloned().expect("level source is not closed under faces")
                    })
                    .collect()
            });
            let id = cells.len();
            let base_label = source.label(e, level);
            let mut label = base_label.clone();
            let mut k = 1;
            while names.contains(&label) {
                label = format!("{base_label}#{k}");
                k += 1;
            }
            names.insert(label.clone());
            cells.push(Cell { name: label, dims: level, faces });
            cell_elems.push(e.clone());
            table.insert(e.clone(), Simplex { cell: id, degen: std::array::from_fn(|d| Monotone::identity(level[d])) });
        }
        tables.insert(level, table);
        elements.insert(level, elems);
    }
    let set = Arc::new(Presheaf::from_cells_unchecked(name, cells));
    Ok(Built { set, caps, tables, cell_elems, elements })
}
