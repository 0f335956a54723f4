//! Cartesian products and pullbacks.
//!
//! For simplicial sets the nondegenerate simplices of `A × B` are triples
//! `(a, b, path)` with `a`, `b` nondegenerate and `path` a strictly
//! increasing lattice path in `[dim a] × [dim b]`; they are generated
//! directly. Bisimplicial products go through the levelwise builder.

use std::collections::HashMap;
use std::sync::Arc;

use crate::build::{build, LevelSource};
use crate::error::Result;
use crate::map::{Map, SimplicialMap};
use crate::ops::Monotone;
use crate::presheaf::{ops_in, Cell, Level, Presheaf, Simplex, SimplicialSet};

pub struct Product {
    pub set: Arc<SimplicialSet>,
    pub left: Arc<SimplicialSet>,
    pub right: Arc<SimplicialSet>,
    /// Components of each cell.
    pub pairs: Vec<(Simplex<1>, Simplex<1>)>,
    lookup: HashMap<(Simplex<1>, Simplex<1>), usize>,
}

/// All strictly increasing lattice paths from `(0,0)` to `(p,q)`.
fn lattice_paths(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn rec(p: usize, q: usize, xs: &mut Vec<usize>, ys: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        let (x, y) = (*xs.last().unwrap(), *ys.last().unwrap());
        if x == p && y == q {
            out.push((xs.clone(), ys.clone()));
            return;
        }
        for (dx, dy) in [(1, 0), (0, 1), (1, 1)] {
            if x + dx <= p && y + dy <= q {
                xs.push(x + dx);
                ys.push(y + dy);
                rec(p, q, xs, ys, out);
                xs.pop();
                ys.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(p, q, &mut vec![0], &mut vec![0], &mut out);
    out
}

/// Collapse consecutive repeats of the point sequence `(α(i), β(i))`.
fn collapse(alpha: &Monotone, beta: &Monotone) -> (Monotone, Monotone, Monotone) {
    let n = alpha.source_dim();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut eps = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let pt = (alpha.at(i), beta.at(i));
        if xs.last().copied() != Some(pt.0) || ys.last().copied() != Some(pt.1) {
            xs.push(pt.0);
            ys.push(pt.1);
        }
        eps.push(xs.len() - 1);
    }
    let k = xs.len() - 1;
    (Monotone::new(xs, alpha.target_dim()), Monotone::new(ys, beta.target_dim()), Monotone::new(eps, k))
}

impl Product {
    pub fn new(left: &Arc<SimplicialSet>, right: &Arc<SimplicialSet>) -> Product {
        let mut raw = Vec::new();
        for a in 0..left.len() {
            for b in 0..right.len() {
                let (p, q) = (left.dims(a)[0], right.dims(b)[0]);
                for (xs, ys) in lattice_paths(p, q) {
                    let n = xs.len() - 1;
                    raw.push((n, a, b, Monotone::new(xs, p), Monotone::new(ys, q)));
                }
            }
        }
        raw.sort_by_key(|r| r.0);
        let mut out = Product {
            set: Arc::new(SimplicialSet::empty("")),
            left: left.clone(),
            right: right.clone(),
            pairs: Vec::with_capacity(raw.len()),
            lookup: HashMap::with_capacity(raw.len()),
        };
        let mut cells = Vec::with_capacity(raw.len());
        for (n, a, b, alpha, beta) in raw {
            let x = Simplex { cell: a, degen: [alpha] };
            let y = Simplex { cell: b, degen: [beta] };
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let d = [Monotone::coface(n, i)];
                        out.pair(&left.act(&x, &d), &right.act(&y, &d))
                    })
                    .collect()
            };
            let name = format!(
                "({},{})[{}|{}]",
                left.cell(a).name,
                right.cell(b).name,
                x.degen[0].values().iter().map(|v| v.to_string()).collect::<String>(),
                y.degen[0].values().iter().map(|v| v.to_string()).collect::<String>()
            );
            out.lookup.insert((x.clone(), y.clone()), cells.len());
            out.pairs.push((x, y));
            cells.push(Cell { name, dims: [n], faces: [faces] });
        }
        out.set = Arc::new(SimplicialSet::from_cells_unchecked(format!("{}×{}", left.name(), right.name()), cells));
        out
    }

    /// The simplex with components `x` and `y` (same dimension).
    pub fn pair(&self, x: &Simplex<1>, y: &Simplex<1>) -> Simplex<1> {
        let (alpha, beta, eps) = collapse(&x.degen[0], &y.degen[0]);
        let key = (Simplex { cell: x.cell, degen: [alpha] }, Simplex { cell: y.cell, degen: [beta] });
        Simplex { cell: self.lookup[&key], degen: [eps] }
    }

    pub fn components(&self, s: &Simplex<1>) -> (Simplex<1>, Simplex<1>) {
        let (x, y) = &self.pairs[s.cell];
        (x.degenerate(&s.degen), y.degenerate(&s.degen))
    }

    pub fn proj_left(&self) -> SimplicialMap {
        Map::new_unchecked(self.set.clone(), self.left.clone(), self.pairs.iter().map(|p| p.0.clone()).collect())
    }

    pub fn proj_right(&self) -> SimplicialMap {
        Map::new_unchecked(self.set.clone(), self.right.clone(), self.pairs.iter().map(|p| p.1.clone()).collect())
    }

    /// `(f, g) : Z -> A × B`.
    pub fn pairing(&self, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        let images = f.images().iter().zip(g.images()).map(|(x, y)| self.pair(x, y)).collect();
        Map::new_unchecked(f.dom().clone(), self.set.clone(), images)
    }

    /// `f × g : self -> other`.
    pub fn map_to(&self, other: &Product, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        let images = self.pairs.iter().map(|(x, y)| other.pair(&f.apply(x), &g.apply(y))).collect();
        Map::new_unchecked(self.set.clone(), other.set.clone(), images)
    }
}

pub fn product(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> Product {
    Product::new(a, b)
}

/// Pullback of `f : A -> C` and `g : B -> C`, as a sub-object of `A × B`.
pub struct Pullback {
    pub set: Arc<SimplicialSet>,
    pub product: Product,
    pub into_product: SimplicialMap,
}

impl Pullback {
    pub fn p1(&self) -> SimplicialMap {
        self.into_product.then(&self.product.proj_left())
    }

    pub fn p2(&self) -> SimplicialMap {
        self.into_product.then(&self.product.proj_right())
    }

    /// The map into the pullback induced by a commuting pair `(f, g)`.
    pub fn factor(&self, f: &SimplicialMap, g: &SimplicialMap) -> SimplicialMap {
        let cell_of: HashMap<usize, usize> =
            self.into_product.images().iter().enumerate().map(|(i, s)| (s.cell, i)).collect();
        let images = self
            .product
            .pairing(f, g)
            .images()
            .iter()
            .map(|s| Simplex { cell: cell_of[&s.cell], degen: s.degen.clone() })
            .collect();
        Map::new_unchecked(f.dom().clone(), self.set.clone(), images)
    }
}

pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Pullback {
    let product = Product::new(f.dom(), g.dom());
    let keep: Vec<bool> = product.pairs.iter().map(|(x, y)| f.apply(x) == g.apply(y)).collect();
    let (sub, remap) = product.set.sub(format!("{}×_{}", f.dom().name(), g.dom().name()), |c| keep[c]);
    let set = Arc::new(sub);
    let into_product = Map::from_remap(set.clone(), product.set.clone(), &remap);
    Pullback { set, product, into_product }
}

/// Levelwise product of presheaves in any number of directions.
pub struct LevelProduct<'a, const D: usize> {
    pub left: &'a Presheaf<D>,
    pub right: &'a Presheaf<D>,
}

impl<const D: usize> LevelSource<D> for LevelProduct<'_, D> {
    type Elem = (Simplex<D>, Simplex<D>);

    fn elements(&self, level: Level<D>) -> Result<Vec<Self::Elem>> {
        let l = self.left.level(level);
        let r = self.right.level(level);
        Ok(l.simplices.iter().flat_map(|x| r.simplices.iter().map(move |y| (x.clone(), y.clone()))).collect())
    }

    fn act(&self, e: &Self::Elem, level: Level<D>, dir: usize, op: &Monotone) -> Self::Elem {
        let ops = ops_in(level, dir, op.clone());
        (self.left.act(&e.0, &ops), self.right.act(&e.1, &ops))
    }

    fn label(&self, e: &Self::Elem, _: Level<D>) -> String {
        format!("({},{}){:?}", self.left.cell(e.0.cell).name, self.right.cell(e.1.cell).name, (&e.0.degen, &e.1.degen))
    }
}

/// Product of presheaves with projections, built levelwise.
pub struct GenericProduct<const D: usize> {
    pub set: Arc<Presheaf<D>>,
    pub pairs: Vec<(Simplex<D>, Simplex<D>)>,
    pub left: Arc<Presheaf<D>>,
    pub right: Arc<Presheaf<D>>,
    tables: HashMap<Level<D>, HashMap<(Simplex<D>, Simplex<D>), Simplex<D>>>,
}

impl<const D: usize> GenericProduct<D> {
    pub fn new(left: &Arc<Presheaf<D>>, right: &Arc<Presheaf<D>>) -> Self {
        let l = left.max_dims();
        let r = right.max_dims();
        let caps = std::array::from_fn(|d| l[d] + r[d]);
        let src = LevelProduct { left, right };
        let built = build(&src, format!("{}×{}", left.name(), right.name()), caps).expect("levelwise product cannot fail");
        GenericProduct {
            set: built.set,
            pairs: built.cell_elems,
            left: left.clone(),
            right: right.clone(),
            tables: built.tables,
        }
    }

    pub fn pair(&self, x: &Simplex<D>, y: &Simplex<D>) -> Simplex<D> {
        if let Some(s) = self.tables.get(&x.level()).and_then(|t| t.get(&(x.clone(), y.clone()))) {
            return s.clone();
        }
        // Above the caps every pair is degenerate: split off the common
        // degeneracy in each direction and look up the rest.
        let mut joint: [Monotone; D] = std::array::from_fn(|d| Monotone::identity(x.level()[d]));
        let mut x0 = x.clone();
        let mut y0 = y.clone();
        for d in 0..D {
            let (a, b) = (&x.degen[d], &y.degen[d]);
            let n = a.source_dim();
            let keep: Vec<usize> = (0..=n).filter(|&i| i == 0 || (a.at(i), b.at(i)) != (a.at(i - 1), b.at(i - 1))).collect();
            let k = keep.len() - 1;
            let eps = Monotone::new((0..=n).map(|i| keep.iter().rposition(|&j| j <= i).unwrap()), k);
            x0.degen[d] = Monotone::new(keep.iter().map(|&i| a.at(i)), a.target_dim());
            y0.degen[d] = Monotone::new(keep.iter().map(|&i| b.at(i)), b.target_dim());
            joint[d] = eps;
        }
        self.tables[&x0.level()][&(x0, y0)].degenerate(&joint)
    }

    pub fn components(&self, s: &Simplex<D>) -> (Simplex<D>, Simplex<D>) {
        let (x, y) = &self.pairs[s.cell];
        (x.degenerate(&s.degen), y.degenerate(&s.degen))
    }

    pub fn proj_left(&self) -> Map<D> {
        Map::new_unchecked(self.set.clone(), self.left.clone(), self.pairs.iter().map(|p| p.0.clone()).collect())
    }

    pub fn proj_right(&self) -> Map<D> {
        Map::new_unchecked(self.set.clone(), self.right.clone(), self.pairs.iter().map(|p| p.1.clone()).collect())
    }

    pub fn pairing(&self, f: &Map<D>, g: &Map<D>) -> Map<D> {
        let images = f.images().iter().zip(g.images()).map(|(x, y)| self.pair(x, y)).collect();
        Map::new_unchecked(f.dom().clone(), self.set.clone(), images)
    }

    pub fn map_to(&self, other: &GenericProduct<D>, f: &Map<D>, g: &Map<D>) -> Map<D> {
        let images = self.pairs.iter().map(|(x, y)| other.pair(&f.apply(x), &g.apply(y))).collect();
        Map::new_unchecked(self.set.clone(), other.set.clone(), images)
    }
}

/// Pullback of presheaf maps, as a sub-object of the levelwise product.
pub fn generic_pullback<const D: usize>(f: &Map<D>, g: &Map<D>) -> (Arc<Presheaf<D>>, Map<D>, Map<D>) {
    let prod = GenericProduct::new(f.dom(), g.dom());
    let keep: Vec<bool> = prod.pairs.iter().map(|(x, y)| f.apply(x) == g.apply(y)).collect();
    let (sub, remap) = prod.set.sub(format!("{}×_{}", f.dom().name(), g.dom().name()), |c| keep[c]);
    let set = Arc::new(sub);
    let inc = Map::from_remap(set.clone(), prod.set.clone(), &remap);
    let p1 = inc.then(&prod.proj_left());
    let p2 = inc.then(&prod.proj_right());
    (set, p1, p2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::{boundary, point, simplex};

    fn counts(x: &SimplicialSet) -> Vec<usize> {
        (0..=x.dim()).map(|n| x.cells_of_dim(n).len()).collect()
    }

    #[test]
    fn square_has_two_triangles() {
        let p = product(&simplex(1), &simplex(1));
        assert_eq!(counts(&p.set), vec![4, 5, 2]);
        assert!(p.set.identity_violation().is_none());
        assert!(p.proj_left().violation().is_none());
        assert!(p.proj_right().violation().is_none());
    }

    #[test]
    fn discrete_and_unit_products() {
        assert_eq!(counts(&product(&boundary(1), &boundary(1)).set), vec![4]);
        assert_eq!(counts(&product(&point(), &simplex(2)).set), vec![3, 3, 1]);
        assert_eq!(counts(&product(&simplex(1), &simplex(2)).set), vec![6, 12, 10, 3]);
    }

    #[test]
    fn levelwise_product_agrees_with_shuffles() {
        let a = simplex(2);
        let b = simplex(1);
        let shuffle = product(&a, &b);
        let generic = GenericProduct::new(&a, &b);
        for n in 0..5 {
            assert_eq!(shuffle.set.count([n]), generic.set.count([n]));
            assert_eq!(shuffle.set.count([n]), a.count([n]) * b.count([n]));
        }
        assert_eq!(shuffle.set.len(), generic.set.len());
    }
}
