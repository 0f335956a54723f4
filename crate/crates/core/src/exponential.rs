//! Presheaves of maps out of a cosimplicial family of shapes.
//!
//! Level `k` of [`MapsOut`] is `Hom(P_k, T)` for shapes `P_k`; operators act
//! by precomposition with the structure maps of the family. Exponentials,
//! mapping spaces, divisions and `Hom_2` are all instances.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::build::{build, Built, LevelSource};
use crate::error::{Error, Result};
use crate::map::{Map, SimplicialMap};
use crate::ops::Monotone;
use crate::presheaf::{Level, Presheaf, Simplex, SimplicialSet};
use crate::product::Product;
use crate::search::{HomSearch, DEFAULT_BUDGET};
use crate::shapes::{simplex, simplex_map};

pub trait ShapeFamily<const DO: usize, const DT: usize> {
    fn shape(&self, level: Level<DO>) -> Arc<Presheaf<DT>>;

    /// Structure map `P_{level'} -> P_level` for `op : [k] -> [level[dir]]`,
    /// where `level'` is `level` with `k` in direction `dir`.
    fn along(&self, level: Level<DO>, dir: usize, op: &Monotone) -> Arc<Map<DT>>;

    /// All maps `shape(level) -> target` as cell images, when the family has
    /// a cheaper route than a direct search.
    fn maps_into(&self, _level: Level<DO>, _target: &Arc<Presheaf<DT>>, _budget: u64) -> Option<Result<Vec<Vec<Simplex<DT>>>>> {
        None
    }
}

pub type Filter<'a, const DO: usize, const DT: usize> = &'a (dyn Fn(Level<DO>, &[Simplex<DT>]) -> bool + Sync);

pub struct MapsOut<'a, F, const DO: usize, const DT: usize> {
    pub family: &'a F,
    pub target: Arc<Presheaf<DT>>,
    pub keep: Option<Filter<'a, DO, DT>>,
    pub budget: u64,
}

impl<'a, F: ShapeFamily<DO, DT>, const DO: usize, const DT: usize> MapsOut<'a, F, DO, DT> {
    pub fn new(family: &'a F, target: &Arc<Presheaf<DT>>) -> Self {
        MapsOut { family, target: target.clone(), keep: None, budget: DEFAULT_BUDGET }
    }

    pub fn with_filter(mut self, keep: Filter<'a, DO, DT>) -> Self {
        self.keep = Some(keep);
        self
    }

    pub fn as_map(&self, level: Level<DO>, e: &[Simplex<DT>]) -> Map<DT> {
        Map::new_unchecked(self.family.shape(level), self.target.clone(), e.to_vec())
    }
}

impl<F: ShapeFamily<DO, DT>, const DO: usize, const DT: usize> LevelSource<DO> for MapsOut<'_, F, DO, DT> {
    type Elem = Vec<Simplex<DT>>;

    fn elements(&self, level: Level<DO>) -> Result<Vec<Self::Elem>> {
        let maps = match self.family.maps_into(level, &self.target, self.budget) {
            Some(maps) => maps?,
            None => {
                let shape = self.family.shape(level);
                HomSearch::new(&shape, &self.target).budget(self.budget).all()?.into_iter().map(|m| m.images().to_vec()).collect()
            }
        };
        Ok(maps
            .into_iter()
            .filter(|e| self.keep.map_or(true, |k| k(level, e)))
            .collect())
    }

    fn act(&self, e: &Self::Elem, level: Level<DO>, dir: usize, op: &Monotone) -> Self::Elem {
        let along = self.family.along(level, dir, op);
        along.images().iter().map(|s| e[s.cell].degenerate(&s.degen)).collect()
    }

    fn label(&self, e: &Self::Elem, _: Level<DO>) -> String {
        let names: Vec<&str> = e.iter().map(|s| self.target.cell(s.cell).name.as_str()).collect();
        format!("<{}>", names.join(","))
    }
}

/// The family `Δ[k] × A`.
pub struct SimplexTimes {
    pub a: Arc<SimplicialSet>,
    products: Mutex<HashMap<usize, Arc<Product>>>,
    maps: Mutex<HashMap<(usize, Monotone), Arc<SimplicialMap>>>,
}

impl SimplexTimes {
    pub fn new(a: &Arc<SimplicialSet>) -> Self {
        SimplexTimes { a: a.clone(), products: Mutex::new(HashMap::new()), maps: Mutex::new(HashMap::new()) }
    }

    pub fn product(&self, k: usize) -> Arc<Product> {
        if let Some(p) = self.products.lock().unwrap().get(&k) {
            return p.clone();
        }
        let p = Arc::new(Product::new(&simplex(k), &self.a));
        self.products.lock().unwrap().entry(k).or_insert(p).clone()
    }
}

impl ShapeFamily<1, 1> for SimplexTimes {
    fn shape(&self, level: Level<1>) -> Arc<SimplicialSet> {
        self.product(level[0]).set.clone()
    }

    fn along(&self, level: Level<1>, _: usize, op: &Monotone) -> Arc<SimplicialMap> {
        let key = (level[0], op.clone());
        if let Some(m) = self.maps.lock().unwrap().get(&key) {
            return m.clone();
        }
        let src = self.product(op.source_dim());
        let dst = self.product(level[0]);
        let m = Arc::new(src.map_to(&dst, &simplex_map(op), &Map::identity(&self.a)));
        self.maps.lock().unwrap().entry(key).or_insert(m).clone()
    }
}

/// Level `n` of `X^A`: all maps `Δ[n] × A -> X`.
pub fn exponential_level(x: &Arc<SimplicialSet>, a: &Arc<SimplicialSet>, n: usize) -> Result<Vec<SimplicialMap>> {
    let p = Product::new(&simplex(n), a);
    HomSearch::new(&p.set, x).all()
}

/// A presheaf of maps out of a shape family, with each cell's defining map.
pub struct Mapped<F, const DO: usize, const DT: usize> {
    pub family: F,
    pub target: Arc<Presheaf<DT>>,
    pub built: Built<DO, Vec<Simplex<DT>>>,
}

/// `X^A` built through dimension `cap`.
pub type Exponential = Mapped<SimplexTimes, 1, 1>;

impl<F: ShapeFamily<DO, DT>, const DO: usize, const DT: usize> Mapped<F, DO, DT> {
    pub fn build(
        family: F,
        target: &Arc<Presheaf<DT>>,
        name: impl Into<String>,
        caps: Level<DO>,
        keep: Option<Filter<'_, DO, DT>>,
    ) -> Result<Self> {
        let built = {
            let mut src = MapsOut::new(&family, target);
            src.keep = keep;
            build(&src, name, caps)?
        };
        Ok(Mapped { family, target: target.clone(), built })
    }

    pub fn set(&self) -> &Arc<Presheaf<DO>> {
        &self.built.set
    }

    /// The map `P_level -> T` represented by a simplex.
    pub fn map_of(&self, s: &Simplex<DO>) -> Map<DT> {
        let src = MapsOut::new(&self.family, &self.target);
        let e = self.built.element_of(&src, s);
        src.as_map(s.level(), &e)
    }

    /// The simplex representing a map out of `P_level`, if it is in range.
    pub fn simplex_for(&self, level: Level<DO>, m: &Map<DT>) -> Option<Simplex<DO>> {
        let src = MapsOut::new(&self.family, &self.target);
        self.built.locate(&src, &m.images().to_vec(), level)
    }

    /// The map into `to` sending each represented map `m` to `g(level, m)`;
    /// `g` must land in maps out of the shapes of `to.family`.
    pub fn induced<G: ShapeFamily<DO, DT>>(
        &self,
        to: &Mapped<G, DO, DT>,
        g: impl Fn(Level<DO>, &Map<DT>) -> Map<DT>,
    ) -> Result<Map<DO>> {
        let images = (0..self.set().len())
            .map(|c| {
                let s = self.set().identity_simplex(c);
                let level = s.level();
                to.simplex_for(level, &g(level, &self.map_of(&s)))
                    .ok_or_else(|| Error::Invalid(format!("induced map leaves {}", to.set().name())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Map::new_unchecked(self.set().clone(), to.set().clone(), images))
    }

    /// Postcomposition with `f : T -> T'`.
    pub fn postcompose<G: ShapeFamily<DO, DT>>(&self, to: &Mapped<G, DO, DT>, f: &Map<DT>) -> Result<Map<DO>> {
        self.induced(to, |_, m| m.then(f))
    }
}

impl Exponential {
    /// `X^T -> X^S` by restriction along `v : S -> T`.
    pub fn restrict(&self, to: &Exponential, v: &SimplicialMap) -> Result<SimplicialMap> {
        self.induced(to, |level, m| {
            let (small, big) = (to.family.product(level[0]), self.family.product(level[0]));
            small.map_to(&big, &Map::identity(&small.left), v).then(m)
        })
    }
}

pub fn exponential(x: &Arc<SimplicialSet>, a: &Arc<SimplicialSet>, cap: usize) -> Result<Exponential> {
    exponential_filtered(x, a, cap, None)
}

pub fn exponential_filtered(
    x: &Arc<SimplicialSet>,
    a: &Arc<SimplicialSet>,
    cap: usize,
    keep: Option<Filter<'_, 1, 1>>,
) -> Result<Exponential> {
    Mapped::build(SimplexTimes::new(a), x, format!("{}^{}", x.name(), a.name()), [cap], keep)
}

/// Cells of `Δ[n] × Δ[1]` lying over the vertex `e` of `Δ[1]`.
fn on_slice(p: &Product, e: usize) -> Vec<usize> {
    let v = p.right.cell_id(&e.to_string()).unwrap();
    (0..p.set.len()).filter(|&c| p.pairs[c].1.cell == v).collect()
}

/// The mapping space `X(a, b)` through dimension `n_max`.
pub fn mapping_space(x: &Arc<SimplicialSet>, a: usize, b: usize, n_max: usize) -> Result<Exponential> {
    if a >= x.len() || b >= x.len() || x.dims(a)[0] != 0 || x.dims(b)[0] != 0 {
        return Err(Error::Precondition(format!("mapping space endpoints ({a}, {b}) are not vertices")));
    }
    let family = SimplexTimes::new(&simplex(1));
    let slices: Vec<(Vec<usize>, Vec<usize>)> =
        (0..=n_max).map(|k| (on_slice(&family.product(k), 0), on_slice(&family.product(k), 1))).collect();
    let keep = |level: Level<1>, e: &[Simplex<1>]| {
        let (zero, one) = &slices[level[0]];
        zero.iter().all(|&c| e[c].cell == a) && one.iter().all(|&c| e[c].cell == b)
    };
    let name = format!("{}({},{})", x.name(), x.cell(a).name, x.cell(b).name);
    Mapped::build(family, x, name, [n_max], Some(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::point;

    #[test]
    fn interval_exponent_levels() {
        for n in 0..4 {
            assert_eq!(exponential_level(&simplex(1), &point(), n).unwrap().len(), n + 2);
        }
        assert_eq!(exponential_level(&simplex(1), &simplex(1), 0).unwrap().len(), 3);
    }

    #[test]
    fn mapping_spaces_of_interval() {
        let x = simplex(1);
        let fwd = mapping_space(&x, 0, 1, 2).unwrap();
        assert_eq!(fwd.set().len(), 1);
        let back = mapping_space(&x, 1, 0, 2).unwrap();
        assert_eq!(back.set().len(), 0);
    }

    #[test]
    fn exponential_of_point_is_target() {
        let e = exponential(&simplex(2), &point(), 3).unwrap();
        assert_eq!(e.set().len(), simplex(2).len());
    }
}
