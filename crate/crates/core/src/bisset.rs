//! Bisimplicial sets: box products, rows and columns, divisions, corner
//! maps, the diagonal, and the comparison functors with simplicial sets.
//!
//! Direction 0 is horizontal (the first index `m`), direction 1 vertical.
//! `A\X` is simplicial in the vertical direction and `X/B` in the
//! horizontal one.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::build::{build, Built, LevelSource};
use crate::colimit::{pushout, Pushout};
use crate::error::{Error, Result};
use crate::exponential::{Mapped, ShapeFamily};
use crate::map::{BisimplicialMap, Map, SimplicialMap};
use crate::ops::Monotone;
use crate::presheaf::{identity_ops, BisimplicialSet, Cell, Level, Presheaf, Simplex, SimplicialSet};
use crate::search::HomSearch;
use crate::product::{pullback, GenericProduct};
use crate::shapes::{cell_vertices, point, simplex, simplex_map, yoneda};

/// `A □ B` with `(A □ B)_{mn} = A_m × B_n`.
pub struct BoxProduct {
    pub set: Arc<BisimplicialSet>,
    pub left: Arc<SimplicialSet>,
    pub right: Arc<SimplicialSet>,
    pub pairs: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl BoxProduct {
    pub fn new(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> BoxProduct {
        let mut pairs: Vec<(usize, usize)> = (0..a.len()).flat_map(|x| (0..b.len()).map(move |y| (x, y))).collect();
        pairs.sort_by_key(|&(x, y)| (a.dims(x)[0] + b.dims(y)[0], x, y));
        let lookup: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let cells = pairs
            .iter()
            .map(|&(x, y)| {
                let (p, q) = (a.dims(x)[0], b.dims(y)[0]);
                let h = a.cell(x).faces[0]
                    .iter()
                    .map(|f| Simplex { cell: lookup[&(f.cell, y)], degen: [f.degen[0].clone(), Monotone::identity(q)] })
                    .collect();
                let v = b.cell(y).faces[0]
                    .iter()
                    .map(|f| Simplex { cell: lookup[&(x, f.cell)], degen: [Monotone::identity(p), f.degen[0].clone()] })
                    .collect();
                Cell { name: format!("{}□{}", a.cell(x).name, b.cell(y).name), dims: [p, q], faces: [h, v] }
            })
            .collect();
        let set = Arc::new(Presheaf::from_cells_unchecked(format!("{}□{}", a.name(), b.name()), cells));
        BoxProduct { set, left: a.clone(), right: b.clone(), pairs, lookup }
    }

    pub fn pair(&self, x: &Simplex<1>, y: &Simplex<1>) -> Simplex<2> {
        Simplex { cell: self.lookup[&(x.cell, y.cell)], degen: [x.degen[0].clone(), y.degen[0].clone()] }
    }

    pub fn components(&self, s: &Simplex<2>) -> (Simplex<1>, Simplex<1>) {
        let (x, y) = self.pairs[s.cell];
        (Simplex { cell: x, degen: [s.degen[0].clone()] }, Simplex { cell: y, degen: [s.degen[1].clone()] })
    }

    /// The cell `(a, b)` as a bisimplex.
    pub fn cell_of(&self, a: usize, b: usize) -> usize {
        self.lookup[&(a, b)]
    }

    /// `u □ v : self -> other`.
    pub fn map_to(&self, other: &BoxProduct, u: &SimplicialMap, v: &SimplicialMap) -> BisimplicialMap {
        let images = self
            .pairs
            .iter()
            .map(|&(x, y)| other.pair(&u.apply(&self.left.identity_simplex(x)), &v.apply(&self.right.identity_simplex(y))))
            .collect();
        Map::new_unchecked(self.set.clone(), other.set.clone(), images)
    }
}

pub fn box_product(a: &Arc<SimplicialSet>, b: &Arc<SimplicialSet>) -> BoxProduct {
    BoxProduct::new(a, b)
}

/// `u □ v` between freshly built box products.
pub fn box_map(u: &SimplicialMap, v: &SimplicialMap) -> BisimplicialMap {
    BoxProduct::new(u.dom(), v.dom()).map_to(&BoxProduct::new(u.cod(), v.cod()), u, v)
}

/// One row or column of a bisimplicial set.
struct SliceSource<'a> {
    x: &'a BisimplicialSet,
    /// The direction held fixed and its index.
    fixed: usize,
    index: usize,
}

impl SliceSource<'_> {
    fn level2(&self, n: usize) -> Level<2> {
        let mut l = [n, n];
        l[self.fixed] = self.index;
        l
    }
}

impl LevelSource<1> for SliceSource<'_> {
    type Elem = Simplex<2>;

    fn elements(&self, level: Level<1>) -> Result<Vec<Simplex<2>>> {
        Ok(self.x.level(self.level2(level[0])).simplices.clone())
    }

    fn act(&self, e: &Simplex<2>, level: Level<1>, _: usize, op: &Monotone) -> Simplex<2> {
        let l = self.level2(level[0]);
        let mut ops = [Monotone::identity(l[0]), Monotone::identity(l[1])];
        ops[1 - self.fixed] = op.clone();
        self.x.act(e, &ops)
    }

    fn label(&self, e: &Simplex<2>, _: Level<1>) -> String {
        let d = &e.degen[self.fixed];
        if d.is_identity() {
            self.x.cell(e.cell).name.clone()
        } else {
            format!("{}·{:?}", self.x.cell(e.cell).name, d.values())
        }
    }
}

/// A row or column with the bisimplex behind each simplex.
pub struct Slice {
    pub source: Arc<BisimplicialSet>,
    pub built: Built<1, Simplex<2>>,
    pub fixed: usize,
    pub index: usize,
}

impl Slice {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.built.set
    }

    pub fn simplex_for(&self, s: &Simplex<2>) -> Option<Simplex<1>> {
        let n = s.level()[1 - self.fixed];
        self.built.locate(&SliceSource { x: &self.source, fixed: self.fixed, index: self.index }, s, [n])
    }

    pub fn bisimplex_of(&self, s: &Simplex<1>) -> Simplex<2> {
        let src = SliceSource { x: &self.source, fixed: self.fixed, index: self.index };
        self.built.element_of(&src, s)
    }

    /// The map of slices induced by `f`.
    pub fn map(&self, f: &BisimplicialMap, to: &Slice) -> Result<SimplicialMap> {
        let images = (0..self.set().len())
            .map(|c| {
                let s = f.apply(&self.built.cell_elems[c]);
                to.simplex_for(&s).ok_or_else(|| Error::Invalid("slice map leaves its target".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Map::new_unchecked(self.set().clone(), to.set().clone(), images))
    }
}

fn slice(x: &Arc<BisimplicialSet>, fixed: usize, index: usize) -> Slice {
    let cap = x.max_dims()[1 - fixed];
    let src = SliceSource { x, fixed, index };
    let name = if fixed == 0 { format!("{}[{index},*]", x.name()) } else { format!("{}[*,{index}]", x.name()) };
    let built = build(&src, name, [cap]).expect("slices of finite presheaves are finite");
    Slice { source: x.clone(), built, fixed, index }
}

/// The column `X_{m*}`, simplicial in the vertical direction.
pub fn column(x: &Arc<BisimplicialSet>, m: usize) -> Slice {
    slice(x, 0, m)
}

/// The row `X_{*n}`, simplicial in the horizontal direction.
pub fn row(x: &Arc<BisimplicialSet>, n: usize) -> Slice {
    slice(x, 1, n)
}

/// Box products with a fixed factor, cached by level.
pub struct BoxFamily {
    /// The fixed factor and whether it sits on the left.
    pub fixed: Arc<SimplicialSet>,
    pub fixed_left: bool,
    boxes: Mutex<HashMap<usize, Arc<BoxProduct>>>,
    maps: Mutex<HashMap<(usize, Monotone), Arc<BisimplicialMap>>>,
}

impl BoxFamily {
    /// `A □ Δ[n]`.
    pub fn left(a: &Arc<SimplicialSet>) -> Self {
        BoxFamily { fixed: a.clone(), fixed_left: true, boxes: Mutex::default(), maps: Mutex::default() }
    }

    /// `Δ[m] □ B`.
    pub fn right(b: &Arc<SimplicialSet>) -> Self {
        BoxFamily { fixed: b.clone(), fixed_left: false, boxes: Mutex::default(), maps: Mutex::default() }
    }

    pub fn boxed(&self, k: usize) -> Arc<BoxProduct> {
        if let Some(b) = self.boxes.lock().unwrap().get(&k) {
            return b.clone();
        }
        let b = Arc::new(if self.fixed_left { BoxProduct::new(&self.fixed, &simplex(k)) } else { BoxProduct::new(&simplex(k), &self.fixed) });
        self.boxes.lock().unwrap().entry(k).or_insert(b).clone()
    }
}

impl ShapeFamily<1, 2> for BoxFamily {
    fn shape(&self, level: Level<1>) -> Arc<BisimplicialSet> {
        self.boxed(level[0]).set.clone()
    }

    fn along(&self, level: Level<1>, _: usize, op: &Monotone) -> Arc<BisimplicialMap> {
        let key = (level[0], op.clone());
        if let Some(m) = self.maps.lock().unwrap().get(&key) {
            return m.clone();
        }
        let (src, dst) = (self.boxed(op.source_dim()), self.boxed(level[0]));
        let id = Map::identity(&self.fixed);
        let m = Arc::new(if self.fixed_left { src.map_to(&dst, &id, &simplex_map(op)) } else { src.map_to(&dst, &simplex_map(op), &id) });
        self.maps.lock().unwrap().entry(key).or_insert(m).clone()
    }

    /// `Hom(A □ Δ[k], X) = Hom(A, X_{*k})` and `Hom(Δ[k] □ B, X) = Hom(B, X_{k*})`.
    fn maps_into(&self, level: Level<1>, target: &Arc<BisimplicialSet>, budget: u64) -> Option<Result<Vec<Vec<Simplex<2>>>>> {
        let k = level[0];
        let bx = self.boxed(k);
        let (slice, free_dir) = if self.fixed_left { (row(target, k), 1) } else { (column(target, k), 0) };
        let maps = match HomSearch::new(&self.fixed, slice.set()).budget(budget).all() {
            Ok(m) => m,
            Err(e) => return Some(Err(e)),
        };
        let delta = simplex(k);
        let faces: Vec<Monotone> = (0..delta.len()).map(|y| Monotone::inclusion(&cell_vertices(&delta, y), k)).collect();
        let elems = maps
            .iter()
            .map(|g| {
                bx.pairs
                    .iter()
                    .map(|&(p, q)| {
                        let (fixed_cell, y) = if self.fixed_left { (p, q) } else { (q, p) };
                        let b = slice.bisimplex_of(&g.apply(&self.fixed.identity_simplex(fixed_cell)));
                        let mut ops = identity_ops(b.level());
                        ops[free_dir] = faces[y].clone();
                        target.act(&b, &ops)
                    })
                    .collect()
            })
            .collect();
        Some(Ok(elems))
    }
}

/// A division `A\X` or `X/B`. It is exact: no nondegenerate simplices
/// exist above the dimension bound it was built to.
pub type Division = Mapped<BoxFamily, 1, 2>;

/// `A\X` embeds in the product of the columns `Δ[dim a]\X` over the
/// maximal cells `a` of `A`, and each column has dimension at most
/// `vdim X`, so `dim(A\X) ≤ #maximal(A) · vdim X`. Dually for `X/B`.
pub fn left_divide_bound(a: &SimplicialSet, x: &BisimplicialSet) -> usize {
    maximal_cells(a) * x.max_dims()[1]
}

pub fn right_divide_bound(x: &BisimplicialSet, b: &SimplicialSet) -> usize {
    maximal_cells(b) * x.max_dims()[0]
}

/// Cells that are not faces of any other cell.
pub fn maximal_cells(a: &SimplicialSet) -> usize {
    let mut is_face = vec![false; a.len()];
    for c in a.cells() {
        for f in &c.faces[0] {
            is_face[f.cell] = true;
        }
    }
    is_face.iter().filter(|&&f| !f).count()
}

/// `A\X`, level `n` being `Hom(A □ Δ[n], X)`.
pub fn left_divide(a: &Arc<SimplicialSet>, x: &Arc<BisimplicialSet>) -> Result<Division> {
    let cap = left_divide_bound(a, x);
    Mapped::build(BoxFamily::left(a), x, format!("{}\\{}", a.name(), x.name()), [cap], None)
}

/// `X/B`, level `m` being `Hom(Δ[m] □ B, X)`.
pub fn right_divide(x: &Arc<BisimplicialSet>, b: &Arc<SimplicialSet>) -> Result<Division> {
    let cap = right_divide_bound(x, b);
    Mapped::build(BoxFamily::right(b), x, format!("{}/{}", x.name(), b.name()), [cap], None)
}

fn top_cell(x: &SimplicialSet) -> usize {
    let n = x.dim();
    x.cells_of_dim(n)[0]
}

impl Division {
    /// Precompose with `u □ id` (left division) or `id □ u` (right
    /// division), giving the map of divisions contravariant in `u`.
    pub fn restrict(&self, to: &Division, u: &SimplicialMap) -> Result<SimplicialMap> {
        self.induced(to, |level, m| {
            let (small, big) = (to.family.boxed(level[0]), self.family.boxed(level[0]));
            let id = Map::identity(&simplex(level[0]));
            let w = if self.family.fixed_left { small.map_to(&big, u, &id) } else { small.map_to(&big, &id, u) };
            w.then(m)
        })
    }

    /// `g : A □ B -> X` to its transpose `B -> A\X` (left division) or
    /// `A -> X/B` (right division).
    pub fn transpose(&self, g: &BisimplicialMap, bx: &BoxProduct) -> Result<SimplicialMap> {
        let left = self.family.fixed_left;
        let free = if left { &bx.right } else { &bx.left };
        let images = (0..free.len())
            .map(|c| {
                let k = free.dims(c)[0];
                let y = yoneda(free, &free.identity_simplex(c));
                let fam = self.family.boxed(k);
                let id = Map::identity(&self.family.fixed);
                let into = if left { fam.map_to(bx, &id, &y) } else { fam.map_to(bx, &y, &id) };
                self.simplex_for([k], &into.then(g)).ok_or_else(|| Error::Invalid("transpose leaves the division".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Map::new_unchecked(free.clone(), self.set().clone(), images))
    }

    /// Inverse of [`Division::transpose`].
    pub fn untranspose(&self, h: &SimplicialMap, bx: &BoxProduct) -> BisimplicialMap {
        let left = self.family.fixed_left;
        let images = bx
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (fixed_cell, free_cell) = if left { (a, b) } else { (b, a) };
                let s = h.apply(&h.dom().identity_simplex(free_cell));
                let m = self.map_of(&s);
                let k = s.level()[0];
                let fam = self.family.boxed(k);
                let top = top_cell(&simplex(k));
                let cell = if left { fam.cell_of(fixed_cell, top) } else { fam.cell_of(top, fixed_cell) };
                m.image_of_cell(cell).clone()
            })
            .collect();
        Map::new_unchecked(bx.set.clone(), self.target.clone(), images)
    }
}

/// Pushout-corner map `u □' v : (A □ T) ∪_{A □ S} (B □ S) -> B □ T`.
pub struct Corner2 {
    pub map: BisimplicialMap,
    pub pieces: Pushout<2>,
}

pub fn corner_box(u: &SimplicialMap, v: &SimplicialMap) -> Result<Corner2> {
    let (a, b, s, t) = (u.dom(), u.cod(), v.dom(), v.cod());
    let a_s = BoxProduct::new(a, s);
    let b_s = BoxProduct::new(b, s);
    let a_t = BoxProduct::new(a, t);
    let b_t = BoxProduct::new(b, t);
    let pieces = pushout(&a_s.map_to(&b_s, u, &Map::identity(s)), &a_s.map_to(&a_t, &Map::identity(a), v))?;
    let map = pieces.induced(&b_s.map_to(&b_t, &Map::identity(b), v), &a_t.map_to(&b_t, u, &Map::identity(t)));
    Ok(Corner2 { map, pieces })
}

/// A division-corner map into a fiber product of divisions.
pub struct DivisionCorner {
    pub map: SimplicialMap,
    /// Dimension bound to which all four divisions were computed exactly.
    pub bound: usize,
}

/// `⟨u\f⟩ : B\X -> B\Y ×_{A\Y} A\X` for `u : A -> B`, `f : X -> Y`.
pub fn lift_div_left(u: &SimplicialMap, f: &BisimplicialMap) -> Result<DivisionCorner> {
    let (a, b, x, y) = (u.dom(), u.cod(), f.dom(), f.cod());
    let (bx, by, ax, ay) = (left_divide(b, x)?, left_divide(b, y)?, left_divide(a, x)?, left_divide(a, y)?);
    corner_of_square(&bx, &by, &ax, &ay, u, f)
}

/// `⟨f/v⟩ : X/T -> Y/T ×_{Y/S} X/S` for `f : X -> Y`, `v : S -> T`.
pub fn lift_div_right(f: &BisimplicialMap, v: &SimplicialMap) -> Result<DivisionCorner> {
    let (s, t, x, y) = (v.dom(), v.cod(), f.dom(), f.cod());
    let (xt, yt, xs, ys) = (right_divide(x, t)?, right_divide(y, t)?, right_divide(x, s)?, right_divide(y, s)?);
    corner_of_square(&xt, &yt, &xs, &ys, v, f)
}

fn corner_of_square(
    big_x: &Division,
    big_y: &Division,
    small_x: &Division,
    small_y: &Division,
    u: &SimplicialMap,
    f: &BisimplicialMap,
) -> Result<DivisionCorner> {
    let top = big_x.postcompose(big_y, f)?;
    let left = big_x.restrict(small_x, u)?;
    let right = big_y.restrict(small_y, u)?;
    let bottom = small_x.postcompose(small_y, f)?;
    let pb = pullback(&right, &bottom);
    let map = pb.factor(&top, &left);
    let bound = [big_x, big_y, small_x, small_y].iter().map(|d| d.built.caps[0]).max().unwrap_or(0);
    Ok(DivisionCorner { map, bound })
}

/// The diagonal `δ*X`, with `(δ*X)_n = X_{nn}`.
pub struct Diagonal {
    pub source: Arc<BisimplicialSet>,
    pub built: Built<1, Simplex<2>>,
}

struct DiagonalSource<'a> {
    x: &'a BisimplicialSet,
}

impl LevelSource<1> for DiagonalSource<'_> {
    type Elem = Simplex<2>;

    fn elements(&self, level: Level<1>) -> Result<Vec<Simplex<2>>> {
        Ok(self.x.level([level[0], level[0]]).simplices.clone())
    }

    fn act(&self, e: &Simplex<2>, _: Level<1>, _: usize, op: &Monotone) -> Simplex<2> {
        self.x.act(e, &[op.clone(), op.clone()])
    }

    fn label(&self, e: &Simplex<2>, _: Level<1>) -> String {
        let name = &self.x.cell(e.cell).name;
        if e.is_nondegenerate() {
            name.clone()
        } else {
            format!("{name}·{:?}·{:?}", e.degen[0].values(), e.degen[1].values())
        }
    }
}

impl Diagonal {
    pub fn set(&self) -> &Arc<SimplicialSet> {
        &self.built.set
    }

    pub fn simplex_for(&self, s: &Simplex<2>) -> Option<Simplex<1>> {
        self.built.locate(&DiagonalSource { x: &self.source }, s, [s.level()[0]])
    }
}

/// A bisimplex of bidegree `(n, n)` degenerates diagonally unless its two
/// degeneracies collapse disjoint positions, so `n ≤ p + q` for its cell.
pub fn diagonal(x: &Arc<BisimplicialSet>) -> Diagonal {
    let cap = x.cells().iter().map(|c| c.dims[0] + c.dims[1]).max().unwrap_or(0);
    let built = build(&DiagonalSource { x }, format!("δ*{}", x.name()), [cap]).expect("diagonal levels are finite");
    Diagonal { source: x.clone(), built }
}

/// The comparison `A × B -> δ*(A □ B)` sending `(x, y)` to the diagonal bisimplex.
pub fn diagonal_of_box(bx: &BoxProduct, diag: &Diagonal) -> Result<SimplicialMap> {
    let prod = crate::product::Product::new(&bx.left, &bx.right);
    let images = prod
        .pairs
        .iter()
        .map(|(x, y)| diag.simplex_for(&bx.pair(x, y)).ok_or_else(|| Error::Invalid("pair outside the diagonal".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Map::new_unchecked(prod.set.clone(), diag.set().clone(), images))
}

/// `p₁*A = A □ Δ[0]`.
pub fn p1_star(a: &Arc<SimplicialSet>) -> Arc<BisimplicialSet> {
    BoxProduct::new(a, &point()).set
}

/// `p₂*B = Δ[0] □ B`.
pub fn p2_star(b: &Arc<SimplicialSet>) -> Arc<BisimplicialSet> {
    BoxProduct::new(&point(), b).set
}

/// The terminal bisimplicial set.
pub fn bi_point() -> Arc<BisimplicialSet> {
    p1_star(&point())
}

/// The unique map to the terminal bisimplicial set.
pub fn to_bi_point(x: &Arc<BisimplicialSet>) -> BisimplicialMap {
    let images = (0..x.len())
        .map(|c| {
            let [p, q] = x.dims(c);
            Simplex { cell: 0, degen: [Monotone::constant(p, 0, 0), Monotone::constant(q, 0, 0)] }
        })
        .collect();
    Map::new_unchecked(x.clone(), bi_point(), images)
}

/// `i₁*X`, the first row.
pub fn i1_star(x: &Arc<BisimplicialSet>) -> Arc<SimplicialSet> {
    row(x, 0).set().clone()
}

/// `i₂*X`, the first column.
pub fn i2_star(x: &Arc<BisimplicialSet>) -> Arc<SimplicialSet> {
    column(x, 0).set().clone()
}

/// Levels of `Cosk(A)`: `Cosk(A)_{mk} = (A_k)^{[m]₀}`.
struct CoskSource<'a> {
    a: &'a SimplicialSet,
}

impl LevelSource<2> for CoskSource<'_> {
    type Elem = Vec<Simplex<1>>;

    fn elements(&self, level: Level<2>) -> Result<Vec<Self::Elem>> {
        let simplices = &self.a.level([level[1]]).simplices;
        let mut out: Vec<Vec<Simplex<1>>> = vec![Vec::new()];
        for _ in 0..=level[0] {
            out = out
                .into_iter()
                .flat_map(|v| {
                    simplices.iter().map(move |s| {
                        let mut w = v.clone();
                        w.push(s.clone());
                        w
                    })
                })
                .collect();
        }
        Ok(out)
    }

    fn act(&self, e: &Self::Elem, _: Level<2>, dir: usize, op: &Monotone) -> Self::Elem {
        if dir == 0 {
            op.values().iter().map(|&i| e[i as usize].clone()).collect()
        } else {
            e.iter().map(|s| self.a.act(s, &[op.clone()])).collect()
        }
    }

    fn label(&self, e: &Self::Elem, _: Level<2>) -> String {
        let parts: Vec<String> = e
            .iter()
            .map(|s| {
                let name = &self.a.cell(s.cell).name;
                if s.is_nondegenerate() {
                    name.clone()
                } else {
                    format!("{name}·{:?}", s.degen[0].values())
                }
            })
            .collect();
        format!("<{}>", parts.join(","))
    }
}

/// `Cosk(A)` with the tuple of simplices behind each bisimplex.
pub struct Cosk {
    pub a: Arc<SimplicialSet>,
    pub built: Built<2, Vec<Simplex<1>>>,
}

impl Cosk {
    pub fn set(&self) -> &Arc<BisimplicialSet> {
        &self.built.set
    }

    /// The bisimplex of bidegree `(e.len() - 1, k)` given by a tuple of
    /// `k`-simplices of `A`.
    pub fn simplex_for(&self, e: &[Simplex<1>], k: usize) -> Option<Simplex<2>> {
        self.built.locate(&CoskSource { a: &self.a }, &e.to_vec(), [e.len() - 1, k])
    }

    pub fn tuple_of(&self, s: &Simplex<2>) -> Vec<Simplex<1>> {
        self.built.element_of(&CoskSource { a: &self.a }, s)
    }
}

/// `Cosk(A)` truncated at `caps`; the horizontal direction is unbounded in
/// general.
pub fn cosk(a: &Arc<SimplicialSet>, caps: Level<2>) -> Cosk {
    let built = build(&CoskSource { a }, format!("Cosk({})", a.name()), caps).expect("coskeleton levels are finite");
    Cosk { a: a.clone(), built }
}

/// `Cosk(A)` with columns `A^{[n]₀}`, truncated at `caps`.
pub fn cosk_vertex(a: &Arc<SimplicialSet>, caps: Level<2>) -> Arc<BisimplicialSet> {
    cosk(a, caps).built.set
}

/// `X × p₂*(Δ[n])`.
pub struct Hom2Family {
    pub x: Arc<BisimplicialSet>,
    products: Mutex<HashMap<usize, Arc<GenericProduct<2>>>>,
    maps: Mutex<HashMap<(usize, Monotone), Arc<BisimplicialMap>>>,
}

impl Hom2Family {
    pub fn new(x: &Arc<BisimplicialSet>) -> Self {
        Hom2Family { x: x.clone(), products: Mutex::default(), maps: Mutex::default() }
    }

    pub fn product(&self, n: usize) -> Arc<GenericProduct<2>> {
        if let Some(p) = self.products.lock().unwrap().get(&n) {
            return p.clone();
        }
        let p = Arc::new(GenericProduct::new(&self.x, &p2_star(&simplex(n))));
        self.products.lock().unwrap().entry(n).or_insert(p).clone()
    }
}

impl ShapeFamily<1, 2> for Hom2Family {
    fn shape(&self, level: Level<1>) -> Arc<BisimplicialSet> {
        self.product(level[0]).set.clone()
    }

    fn along(&self, level: Level<1>, _: usize, op: &Monotone) -> Arc<BisimplicialMap> {
        let key = (level[0], op.clone());
        if let Some(m) = self.maps.lock().unwrap().get(&key) {
            return m.clone();
        }
        let (src, dst) = (self.product(op.source_dim()), self.product(level[0]));
        let theta = BoxProduct::new(&point(), &simplex(op.source_dim()))
            .map_to(&BoxProduct::new(&point(), &simplex(level[0])), &Map::identity(&point()), &simplex_map(op))
            .with_dom(src.right.clone())
            .with_cod(dst.right.clone());
        let m = Arc::new(src.map_to(&dst, &Map::identity(&self.x), &theta));
        self.maps.lock().unwrap().entry(key).or_insert(m).clone()
    }
}

/// `Hom₂(X, Y)` through dimension `n_max`.
pub fn hom2(x: &Arc<BisimplicialSet>, y: &Arc<BisimplicialSet>, n_max: usize) -> Result<Mapped<Hom2Family, 1, 2>> {
    Mapped::build(Hom2Family::new(x), y, format!("Hom₂({},{})", x.name(), y.name()), [n_max], None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{find_iso, is_isomorphic};
    use crate::product::product;
    use crate::shapes::{boundary, chain, inclusion};

    fn counts(x: &BisimplicialSet) -> Vec<([usize; 2], usize)> {
        x.cell_counts().into_iter().collect()
    }

    #[test]
    fn box_counts() {
        let b = box_product(&simplex(1), &point());
        assert_eq!(counts(&b.set), vec![([0, 0], 2), ([1, 0], 1)]);
        let b = box_product(&boundary(1), &simplex(1));
        assert_eq!(counts(&b.set), vec![([0, 0], 4), ([0, 1], 2)]);
        assert!(b.set.identity_violation().is_none());
        assert!(b.set.structure_violation().is_none());
        assert!(is_isomorphic(&box_product(&point(), &simplex(2)).set, &p2_star(&simplex(2))));
    }

    #[test]
    fn rows_and_columns() {
        let a = simplex(2);
        assert!(is_isomorphic(&row(&p1_star(&a), 0).set().clone(), &a));
        assert!(is_isomorphic(&column(&p2_star(&a), 0).set().clone(), &a));
        let bx = box_product(&simplex(1), &simplex(1)).set;
        // Row 1 has A_m × B_1 elements at level m: three edges' worth of copies of Δ[1].
        let r = row(&bx, 1);
        assert_eq!(r.set().count([0]), 2 * 3);
        assert_eq!(r.set().count([1]), 3 * 3);
    }

    #[test]
    fn divisions_by_representables_are_slices() {
        let x = box_product(&simplex(1), &chain(2)).set;
        for m in 0..2 {
            assert!(is_isomorphic(left_divide(&simplex(m), &x).unwrap().set(), column(&x, m).set()));
        }
        for n in 0..2 {
            assert!(is_isomorphic(right_divide(&x, &simplex(n)).unwrap().set(), row(&x, n).set()));
        }
    }

    #[test]
    fn division_level_zero_by_enumeration() {
        let x = p2_star(&simplex(1));
        let d = left_divide(&boundary(1), &x).unwrap();
        let direct = HomSearch::new(&box_product(&boundary(1), &point()).set, &x).count(None).unwrap();
        assert_eq!(d.set().count([0]), direct);
        assert_eq!(direct, 4);
    }

    #[test]
    fn transposes_are_inverse() {
        let (a, b) = (simplex(1), boundary(1));
        let x = box_product(&simplex(1), &simplex(1)).set;
        let bx = box_product(&a, &b);
        let div = left_divide(&a, &x).unwrap();
        for g in HomSearch::new(&bx.set, &x).all().unwrap() {
            let h = div.transpose(&g, &bx).unwrap();
            assert!(h.violation().is_none());
            assert!(div.untranspose(&h, &bx).same_assignment(&g));
        }
    }

    #[test]
    fn corner_with_identity_is_iso() {
        let v = inclusion(&boundary(1), &simplex(1));
        let c = corner_box(&Map::identity(&simplex(1)), &v).unwrap();
        assert!(c.map.is_iso());
        let e = Map::from_empty(&point());
        let c = corner_box(&e, &e).unwrap();
        assert!(c.map.dom().is_empty());
    }

    #[test]
    fn diagonal_of_box_is_product() {
        for (a, b) in [(simplex(1), simplex(1)), (boundary(2), simplex(1)), (chain(2), point())] {
            let bx = box_product(&a, &b);
            let diag = diagonal(&bx.set);
            let cmp = diagonal_of_box(&bx, &diag).unwrap();
            assert!(cmp.violation().is_none());
            assert!(cmp.is_iso());
            assert!(find_iso(&product(&a, &b).set, diag.set()).is_some());
        }
    }

    #[test]
    fn comparison_functors() {
        let a = chain(2);
        assert!(is_isomorphic(&i1_star(&p1_star(&a)), &a));
        assert!(is_isomorphic(&i2_star(&p2_star(&a)), &a));
        let two = Arc::new(point().coproduct(&point(), "2"));
        let c = cosk_vertex(&two, [2, 0]);
        assert_eq!(c.count([1, 0]), 4);
    }

    #[test]
    fn hom2_counts() {
        let y = box_product(&simplex(1), &simplex(1)).set;
        let h = hom2(&p2_star(&point()), &y, 1).unwrap();
        assert_eq!(h.set().count([0]), HomSearch::new(&p2_star(&point()), &y).count(None).unwrap());
        let h = hom2(&y, &y, 0).unwrap();
        assert!(h.set().count([0]) >= 1);
    }
}
