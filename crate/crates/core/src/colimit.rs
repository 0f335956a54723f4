//! Pushouts and quotients, computed levelwise by union–find.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::build::{build, Built, LevelSource};
use crate::error::{Error, Result};
use crate::map::Map;
use crate::ops::Monotone;
use crate::presheaf::{ops_in, Level, Presheaf, Simplex};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

type Elem<const D: usize> = (Side, Simplex<D>);

struct Classes<const D: usize> {
    rep: HashMap<Elem<D>, Elem<D>>,
    reps: Vec<Elem<D>>,
}

struct PushoutSource<'a, const D: usize> {
    f: &'a Map<D>,
    g: &'a Map<D>,
    classes: Mutex<HashMap<Level<D>, Arc<Classes<D>>>>,
}

fn find<K: Clone + Eq + std::hash::Hash>(parent: &mut HashMap<K, K>, k: &K) -> K {
    let mut root = k.clone();
    while let Some(p) = parent.get(&root) {
        if *p == root {
            break;
        }
        root = p.clone();
    }
    let mut cur = k.clone();
    while cur != root {
        let next = parent[&cur].clone();
        parent.insert(cur, root.clone());
        cur = next;
    }
    root
}

impl<const D: usize> PushoutSource<'_, D> {
    fn classes(&self, level: Level<D>) -> Arc<Classes<D>> {
        if let Some(c) = self.classes.lock().unwrap().get(&level) {
            return c.clone();
        }
        let b = self.f.cod().level(level);
        let c = self.g.cod().level(level);
        let mut all: Vec<Elem<D>> = b.simplices.iter().map(|s| (Side::Left, s.clone())).collect();
        all.extend(c.simplices.iter().map(|s| (Side::Right, s.clone())));
        let order: HashMap<Elem<D>, usize> = all.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut parent: HashMap<Elem<D>, Elem<D>> = all.iter().map(|e| (e.clone(), e.clone())).collect();
        for a in &self.f.dom().level(level).simplices {
            let x = find(&mut parent, &(Side::Left, self.f.apply(a)));
            let y = find(&mut parent, &(Side::Right, self.g.apply(a)));
            if x != y {
                let (lo, hi) = if order[&x] < order[&y] { (x, y) } else { (y, x) };
                parent.insert(hi, lo);
            }
        }
        let mut rep = HashMap::with_capacity(all.len());
        let mut reps = Vec::new();
        for e in &all {
            let r = find(&mut parent, e);
            if r == *e {
                reps.push(e.clone());
            }
            rep.insert(e.clone(), r);
        }
        let out = Arc::new(Classes { rep, reps });
        self.classes.lock().unwrap().insert(level, out.clone());
        out
    }
}

impl<const D: usize> LevelSource<D> for PushoutSource<'_, D> {
    type Elem = Elem<D>;

    fn elements(&self, level: Level<D>) -> Result<Vec<Elem<D>>> {
        Ok(self.classes(level).reps.clone())
    }

    fn act(&self, e: &Elem<D>, level: Level<D>, dir: usize, op: &Monotone) -> Elem<D> {
        let ops = ops_in(level, dir, op.clone());
        let s = match e.0 {
            Side::Left => self.f.cod().act(&e.1, &ops),
            Side::Right => self.g.cod().act(&e.1, &ops),
        };
        let mut out_level = level;
        out_level[dir] = op.source_dim();
        self.classes(out_level).rep[&(e.0, s)].clone()
    }

    fn label(&self, e: &Elem<D>, _: Level<D>) -> String {
        match e.0 {
            Side::Left => self.f.cod().cell(e.1.cell).name.clone(),
            Side::Right => format!("{}'", self.g.cod().cell(e.1.cell).name),
        }
    }
}

pub struct Pushout<const D: usize> {
    pub set: Arc<Presheaf<D>>,
    pub inl: Map<D>,
    pub inr: Map<D>,
    /// Representative element of each cell.
    pub cell_elems: Vec<(Side, Simplex<D>)>,
}

impl<const D: usize> Pushout<D> {
    /// The map out of the pushout induced by a cocone `(h, k)`; the caller
    /// is responsible for `h ∘ f = k ∘ g`.
    pub fn induced(&self, h: &Map<D>, k: &Map<D>) -> Map<D> {
        let images = self
            .cell_elems
            .iter()
            .map(|(side, s)| match side {
                Side::Left => h.apply(s),
                Side::Right => k.apply(s),
            })
            .collect();
        Map::new_unchecked(self.set.clone(), h.cod().clone(), images)
    }
}

pub fn pushout<const D: usize>(f: &Map<D>, g: &Map<D>) -> Result<Pushout<D>> {
    if f.dom().len() != g.dom().len() || !Arc::ptr_eq(f.dom(), g.dom()) && !same_cells(f.dom(), g.dom()) {
        return Err(Error::Precondition("pushout legs have different domains".into()));
    }
    let b = f.cod().max_dims();
    let c = g.cod().max_dims();
    let caps = std::array::from_fn(|d| b[d].max(c[d]));
    let src = PushoutSource { f, g, classes: Mutex::new(HashMap::new()) };
    let built: Built<D, Elem<D>> = build(&src, format!("{}⊔{}", f.cod().name(), g.cod().name()), caps)?;
    let set = built.set.clone();
    let leg = |side: Side, x: &Arc<Presheaf<D>>| {
        let images = (0..x.len())
            .map(|c| {
                let s = x.identity_simplex(c);
                let rep = src.classes(s.level()).rep[&(side, s.clone())].clone();
                built.simplex_of(&rep, s.level()).unwrap().clone()
            })
            .collect();
        Map::new_unchecked(x.clone(), set.clone(), images)
    };
    let inl = leg(Side::Left, f.cod());
    let inr = leg(Side::Right, g.cod());
    Ok(Pushout { set: set.clone(), inl, inr, cell_elems: built.cell_elems })
}

fn same_cells<const D: usize>(a: &Presheaf<D>, b: &Presheaf<D>) -> bool {
    a.len() == b.len() && (0..a.len()).all(|c| a.cell(c).dims == b.cell(c).dims && a.cell(c).faces == b.cell(c).faces)
}

/// `X / S`: the pushout of `S ⊂ X` against `S -> point`.
pub fn quotient<const D: usize>(inc: &Map<D>) -> Result<Pushout<D>> {
    if !inc.is_mono() {
        return Err(Error::Precondition("quotient needs a subobject inclusion".into()));
    }
    let pt = Arc::new(point::<D>());
    let images = (0..inc.dom().len())
        .map(|c| {
            let dims = inc.dom().dims(c);
            Simplex { cell: 0, degen: std::array::from_fn(|d| Monotone::constant(dims[d], 0, 0)) }
        })
        .collect();
    let collapse = Map::new_unchecked(inc.dom().clone(), pt, images);
    pushout(inc, &collapse)
}

pub fn point<const D: usize>() -> Presheaf<D> {
    use crate::presheaf::Cell;
    Presheaf::from_cells_unchecked("pt", vec![Cell { name: "*".into(), dims: [0; D], faces: std::array::from_fn(|_| Vec::new()) }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{boundary, horn, inclusion, simplex};

    #[test]
    fn circle_from_interval() {
        let q = quotient(&inclusion(&boundary(1), &simplex(1))).unwrap();
        assert_eq!(q.set.cell_counts().values().copied().collect::<Vec<_>>(), vec![1, 1]);
        assert!(q.set.identity_violation().is_none());
        assert!(q.inl.violation().is_none());
    }

    #[test]
    fn pushout_along_identity() {
        let h = horn(2, 1);
        let inc = inclusion(&h, &simplex(2));
        let p = pushout(&inc, &Map::identity(&h)).unwrap();
        assert_eq!(p.set.len(), simplex(2).len());
        assert!(p.inl.is_iso());
    }

    #[test]
    fn empty_quotient_adds_a_point() {
        let e = Arc::new(Presheaf::<1>::empty("e"));
        let x = simplex(1);
        let q = quotient(&Map::from_empty(&x).with_dom(e)).unwrap();
        assert_eq!(q.set.len(), x.len() + 1);
    }
}
