//! Transfer functors: the free groupoid simplices `Δ'[n]`, the left Kan
//! extensions `k_!` and `t_!`, the right adjoint `k^!`, `Γ` and `X^{(A)}`.
//!
//! `Δ'[n]` has nondegenerate simplices in every dimension, so left Kan
//! extensions are built through a dimension cap carried in the result.
//! Below the cap they are exact: an `m`-simplex of `k_!X` is a pair of a
//! nondegenerate cell `σ` of `X` and a sequence `[m] -> [dim σ]` hitting
//! every vertex, and `t_!` is the same with a surjection on the first factor.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::bridge::{j_core, pi1, probe_equivalent, tau1, JCore};
use crate::build::{build, Built, LevelSource};
use crate::category::{examples, nerve, FiniteCategory, FpCategory, Path};
use crate::error::{Error, Result};
use crate::exponential::{exponential_filtered, Exponential, Mapped, ShapeFamily, SimplexTimes};
use crate::json::{Codec, Json};
use crate::map::{Map, SimplicialMap};
use crate::ops::Monotone;
use crate::presheaf::{BisimplicialSet, Level, Presheaf, Simplex, SimplicialSet};
use crate::product::Product;
use crate::shapes::{simplex, simplex_map};
use crate::verdict::Verdict;

pub const DEFAULT_CAP: usize = 4;

/// A presheaf computed exactly through dimension `cap` in every direction.
#[derive(Clone, Debug)]
pub struct TruncatedValue<const D: usize> {
    pub set: Arc<Presheaf<D>>,
    pub cap: usize,
    /// For each dimension `0..=cap`, whether that level is exact.
    pub exact: Vec<bool>,
}

impl<const D: usize> TruncatedValue<D> {
    pub fn exact(set: Arc<Presheaf<D>>, cap: usize) -> Self {
        TruncatedValue { set, cap, exact: vec![true; cap + 1] }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|&e| e)
    }

    pub fn to_value(&self) -> Value
    where
        Json: Codec<D>,
    {
        json!({ "payload": <Json as Codec<D>>::to_value(&self.set), "cap": self.cap, "exact": self.exact })
    }
}

fn sequences(len: usize, base: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|s| (0..=base as u8).map(move |v| [s.clone(), vec![v]].concat())).collect();
    }
    out
}

fn is_onto(seq: &[u8], p: usize) -> bool {
    let mut hit = vec![false; p + 1];
    for &v in seq {
        hit[v as usize] = true;
    }
    hit.iter().all(|&h| h)
}

fn compose_seq(seq: &[u8], op: &Monotone) -> Vec<u8> {
    op.values().iter().map(|&i| seq[i as usize]).collect()
}

fn seq_label(seq: &[u8]) -> String {
    let sep = if seq.iter().any(|&v| v > 9) { "." } else { "" };
    seq.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

/// Split `seq` through its image: the inclusion of the image and the
/// sequence of positions within it.
fn through_image(seq: &[u8], p: usize) -> (Monotone, Vec<u8>) {
    let mut image: Vec<u8> = seq.to_vec();
    image.sort_unstable();
    image.dedup();
    let pos: Vec<u8> = seq.iter().map(|v| image.binary_search(v).unwrap() as u8).collect();
    (Monotone::inclusion(&image.iter().map(|&v| v as usize).collect::<Vec<_>>(), p), pos)
}

/// Vertex sequences in `[n]`: the nerve of the free groupoid on `[n]`.
struct CodiscreteSource {
    n: usize,
}

impl LevelSource<1> for CodiscreteSource {
    type Elem = Vec<u8>;

    fn elements(&self, level: Level<1>) -> Result<Vec<Vec<u8>>> {
        Ok(sequences(level[0] + 1, self.n))
    }

    fn act(&self, e: &Vec<u8>, _: Level<1>, _: usize, op: &Monotone) -> Vec<u8> {
        compose_seq(e, op)
    }

    fn label(&self, e: &Vec<u8>, _: Level<1>) -> String {
        seq_label(e)
    }
}

fn groupoid_simplex_built(n: usize, cap: usize) -> Built<1, Vec<u8>> {
    build(&CodiscreteSource { n }, format!("Δ'[{n}]"), [cap]).expect("sequence levels are finite")
}

/// `Δ'[n]` through dimension `cap`.
pub fn groupoid_simplex(n: usize, cap: usize) -> TruncatedValue<1> {
    TruncatedValue::exact(groupoid_simplex_built(n, cap).set, cap)
}

struct KBangSource<'a> {
    x: &'a SimplicialSet,
}

impl KBangSource<'_> {
    fn normalize(&self, cell: usize, seq: Vec<u8>) -> (usize, Vec<u8>) {
        let p = self.x.dims(cell)[0];
        if is_onto(&seq, p) {
            return (cell, seq);
        }
        let (theta, pos) = through_image(&seq, p);
        let r = self.x.act(&self.x.identity_simplex(cell), &[theta]);
        (r.cell, pos.iter().map(|&i| r.degen[0].at(i as usize) as u8).collect())
    }
}

impl LevelSource<1> for KBangSource<'_> {
    /// A nondegenerate cell and a sequence onto its vertices.
    type Elem = (usize, Vec<u8>);

    fn elements(&self, level: Level<1>) -> Result<Vec<Self::Elem>> {
        let m = level[0];
        Ok((0..self.x.len())
            .filter(|&c| self.x.dims(c)[0] <= m)
            .flat_map(|c| {
                let p = self.x.dims(c)[0];
                sequences(m + 1, p).into_iter().filter(move |s| is_onto(s, p)).map(move |s| (c, s))
            })
            .collect())
    }

    fn act(&self, e: &Self::Elem, _: Level<1>, _: usize, op: &Monotone) -> Self::Elem {
        self.normalize(e.0, compose_seq(&e.1, op))
    }

    fn label(&self, e: &Self::Elem, _: Level<1>) -> String {
        let name = &self.x.cell(e.0).name;
        let p = self.x.dims(e.0)[0];
        if e.1.iter().enumerate().all(|(i, &v)| i == v as usize) && e.1.len() == p + 1 {
            name.clone()
        } else {
            format!("{name}·{}", seq_label(&e.1))
        }
    }
}

fn k_bang_built(x: &SimplicialSet, cap: usize) -> Built<1, (usize, Vec<u8>)> {
    build(&KBangSource { x }, format!("k!{}", x.name()), [cap]).expect("k! levels are finite")
}

/// `k_!X` through dimension `cap`.
pub fn k_bang(x: &SimplicialSet, cap: usize) -> TruncatedValue<1> {
    TruncatedValue::exact(k_bang_built(x, cap).set, cap)
}

struct TBangSource<'a> {
    x: &'a BisimplicialSet,
}

impl TBangSource<'_> {
    fn normalize(&self, cell: usize, alpha: Vec<u8>, tau: Vec<u8>) -> (usize, Vec<u8>, Vec<u8>) {
        let [p, q] = self.x.dims(cell);
        if is_onto(&alpha, p) && is_onto(&tau, q) {
            return (cell, alpha, tau);
        }
        let (mono, apos) = through_image(&alpha, p);
        let (theta, tpos) = through_image(&tau, q);
        let r = self.x.act(&self.x.identity_simplex(cell), &[mono, theta]);
        let alpha = apos.iter().map(|&i| r.degen[0].at(i as usize) as u8).collect();
        let tau = tpos.iter().map(|&i| r.degen[1].at(i as usize) as u8).collect();
        (r.cell, alpha, tau)
    }
}

impl LevelSource<1> for TBangSource<'_> {
    /// A nondegenerate bicell, a surjection onto its horizontal dimension
    /// and a sequence onto its vertical vertices.
    type Elem = (usize, Vec<u8>, Vec<u8>);

    fn elements(&self, level: Level<1>) -> Result<Vec<Self::Elem>> {
        let k = level[0];
        let mut out = Vec::new();
        for c in 0..self.x.len() {
            let [p, q] = self.x.dims(c);
            if p > k || q > k {
                continue;
            }
            for alpha in Monotone::surjections(k, p) {
                let a: Vec<u8> = alpha.values().to_vec();
                for tau in sequences(k + 1, q).into_iter().filter(|s| is_onto(s, q)) {
                    out.push((c, a.clone(), tau));
                }
            }
        }
        Ok(out)
    }

    fn act(&self, e: &Self::Elem, _: Level<1>, _: usize, op: &Monotone) -> Self::Elem {
        self.normalize(e.0, compose_seq(&e.1, op), compose_seq(&e.2, op))
    }

    fn label(&self, e: &Self::Elem, _: Level<1>) -> String {
        format!("{}·{}|{}", self.x.cell(e.0).name, seq_label(&e.1), seq_label(&e.2))
    }
}

/// `t_!X` through dimension `cap`, with `t_!(Δ[m] □ Δ[n]) = Δ[m] × Δ'[n]`.
pub fn t_bang(x: &BisimplicialSet, cap: usize) -> TruncatedValue<1> {
    let built = build(&TBangSource { x }, format!("t!{}", x.name()), [cap]).expect("t! levels are finite");
    TruncatedValue::exact(built.set, cap)
}

/// `k^!(N C)`: level `n` is the set of functors from the free groupoid on
/// `[n]`, that is strings of `n` composable isomorphisms.
pub fn k_shriek_nerve(c: &FiniteCategory, cap: usize) -> TruncatedValue<1> {
    TruncatedValue::exact(nerve(&c.core(), cap), cap)
}

/// `Δ'[k]` truncated at a fixed dimension `t`, as a cosimplicial family.
pub struct GroupoidFamily {
    pub t: usize,
    shapes: Mutex<HashMap<usize, Arc<Built<1, Vec<u8>>>>>,
}

impl GroupoidFamily {
    pub fn new(t: usize) -> Self {
        GroupoidFamily { t, shapes: Mutex::default() }
    }

    fn built(&self, k: usize) -> Arc<Built<1, Vec<u8>>> {
        if let Some(b) = self.shapes.lock().unwrap().get(&k) {
            return b.clone();
        }
        let b = Arc::new(groupoid_simplex_built(k, self.t));
        self.shapes.lock().unwrap().entry(k).or_insert(b).clone()
    }
}

impl ShapeFamily<1, 1> for GroupoidFamily {
    fn shape(&self, level: Level<1>) -> Arc<SimplicialSet> {
        self.built(level[0]).set.clone()
    }

    fn along(&self, level: Level<1>, _: usize, op: &Monotone) -> Arc<SimplicialMap> {
        let (src, dst) = (self.built(op.source_dim()), self.built(level[0]));
        let images = src
            .cell_elems
            .iter()
            .map(|s| {
                let img: Vec<u8> = s.iter().map(|&v| op.at(v as usize) as u8).collect();
                dst.simplex_of(&img, [img.len() - 1]).expect("truncations share their cap").clone()
            })
            .collect();
        Arc::new(Map::new_unchecked(src.set.clone(), dst.set.clone(), images))
    }
}

/// `k^!X` approximated by maps out of truncations `sk_t Δ'[n]`.
pub struct KShriekApprox {
    pub value: TruncatedValue<1>,
    /// Truncation used for the reported value.
    pub t: usize,
    /// Level counts agreed for truncations `t - 1` and `t`.
    pub stabilized: bool,
}

/// Raises the truncation from 1 until two consecutive truncations give the
/// same level counts through `cap`, or `t_max` is reached. Never exact.
pub fn k_shriek_approx(x: &Arc<SimplicialSet>, cap: usize, t_max: usize) -> Result<KShriekApprox> {
    let mut prev: Option<Vec<usize>> = None;
    let mut last = None;
    for t in 1..=t_max.max(1) {
        let m = Mapped::build(GroupoidFamily::new(t), x, format!("k^!{}", x.name()), [cap], None)?;
        let counts: Vec<usize> = (0..=cap).map(|k| m.set().count([k])).collect();
        let stabilized = prev.as_ref() == Some(&counts);
        let value = TruncatedValue { set: m.set().clone(), cap, exact: vec![false; cap + 1] };
        if stabilized {
            return Ok(KShriekApprox { value, t, stabilized });
        }
        prev = Some(counts);
        last = Some(KShriekApprox { value, t, stabilized });
    }
    Ok(last.expect("at least one truncation is tried"))
}

/// The family `Δ[m] × Δ[n]` over two directions.
#[derive(Default)]
pub struct SimplexProducts {
    products: Mutex<HashMap<(usize, usize), Arc<Product>>>,
    maps: Mutex<HashMap<(Level<2>, usize, Monotone), Arc<SimplicialMap>>>,
}

impl SimplexProducts {
    pub fn product(&self, m: usize, n: usize) -> Arc<Product> {
        if let Some(p) = self.products.lock().unwrap().get(&(m, n)) {
            return p.clone();
        }
        let p = Arc::new(Product::new(&simplex(m), &simplex(n)));
        self.products.lock().unwrap().entry((m, n)).or_insert(p).clone()
    }
}

impl ShapeFamily<2, 1> for SimplexProducts {
    fn shape(&self, level: Level<2>) -> Arc<SimplicialSet> {
        self.product(level[0], level[1]).set.clone()
    }

    fn along(&self, level: Level<2>, dir: usize, op: &Monotone) -> Arc<SimplicialMap> {
        let key = (level, dir, op.clone());
        if let Some(m) = self.maps.lock().unwrap().get(&key) {
            return m.clone();
        }
        let mut from = level;
        from[dir] = op.source_dim();
        let (src, dst) = (self.product(from[0], from[1]), self.product(level[0], level[1]));
        let m = Arc::new(if dir == 0 {
            src.map_to(&dst, &simplex_map(op), &Map::identity(&src.right))
        } else {
            src.map_to(&dst, &Map::identity(&src.left), &simplex_map(op))
        });
        self.maps.lock().unwrap().entry(key).or_insert(m).clone()
    }
}

/// Cells of `X` in its J-core.
fn j_cells(j: &JCore) -> Vec<bool> {
    j.inclusion.hit_cells()
}

/// Whether a map `Δ[k] × A -> X` (or `Δ[m] × Δ[n] -> X`) sends every
/// `{i} × A` into the cells marked `ok`.
fn vertices_land_in(p: &Product, e: &[Simplex<1>], ok: &[bool]) -> bool {
    (0..p.set.len()).all(|c| p.left.dims(p.pairs[c].0.cell)[0] != 0 || ok[e[c].cell])
}

/// `Γ(X)` with column `m` equal to `J(X^{Δ[m]})`.
pub struct Gamma {
    pub mapped: Mapped<SimplexProducts, 2, 1>,
    pub caps: Level<2>,
    /// Edges of `X` whose invertibility was undecided; they were excluded.
    pub undecided: Vec<String>,
}

impl Gamma {
    pub fn set(&self) -> &Arc<BisimplicialSet> {
        self.mapped.set()
    }

    pub fn is_exact(&self) -> bool {
        self.undecided.is_empty()
    }
}

/// `Γ(X)` through bidegree `(m_max, m_max)`. An `(m, n)`-bisimplex is a map
/// `Δ[m] × Δ[n] -> X` sending each `{i} × Δ[n]` into `J(X)`: a simplex of
/// `X^{Δ[m]}` is in its J-core exactly when its components are invertible.
pub fn gamma(x: &Arc<SimplicialSet>, m_max: usize) -> Result<Gamma> {
    let j = j_core(x);
    let ok = j_cells(&j);
    let aux = SimplexProducts::default();
    let keep = |level: Level<2>, e: &[Simplex<1>]| vertices_land_in(&aux.product(level[0], level[1]), e, &ok);
    let caps = [m_max, m_max];
    let mapped = Mapped::build(SimplexProducts::default(), x, format!("Γ({})", x.name()), caps, Some(&keep))?;
    Ok(Gamma { mapped, caps, undecided: j.undecided })
}

/// `X^{(A)}`: the full subcomplex of `X^A` on maps landing in `J(X)`.
pub fn x_paren(x: &Arc<SimplicialSet>, a: &Arc<SimplicialSet>, n_max: usize) -> Result<Exponential> {
    let ok = j_cells(&j_core(x));
    let aux = SimplexTimes::new(a);
    let keep = |level: Level<1>, e: &[Simplex<1>]| vertices_land_in(&aux.product(level[0]), e, &ok);
    let e = exponential_filtered(x, a, n_max, Some(&keep))?;
    Ok(e)
}

/// Translate a path of one presentation into another along generator images.
fn map_path(target: &FpCategory, start: usize, p: &Path, gens: &[Path]) -> Path {
    p.gens.iter().fold(Path::identity(start), |acc, &g| target.compose(&acc, &gens[g]))
}

/// Every relation of `from` holds in `to` under the given object and
/// generator images.
fn respects_relations(from: &FpCategory, to: &FpCategory, objects: &[usize], gens: &[Path]) -> Verdict {
    for (l, r) in &from.relations {
        let (a, b) = (map_path(to, objects[l.src], l, gens), map_path(to, objects[r.src], r, gens));
        match to.equal(&a, &b) {
            Some(true) => {}
            Some(false) => {
                return Verdict::no(json!({ "relation": [from.path_name(l), from.path_name(r)], "in": to.name }));
            }
            None => return Verdict::unknown(json!({ "in": to.name }), "word problem undecided"),
        }
    }
    Verdict::yes(json!({ "relations": from.relations.len() }))
}

/// `τ₁k_!X = π₁X`: mutually inverse comparison functors on generators,
/// both shown to respect relations, plus functor counts into probes.
pub fn kandpi_check(x: &Arc<SimplicialSet>) -> Verdict {
    let kb = k_bang_built(x, 2);
    let k = &kb.set;
    let (tk, tx) = (tau1(k), tau1(x));
    let p = pi1(x);
    let edges = x.cells_of_dim(1);
    let n = edges.len();
    let locate = |e: (usize, Vec<u8>)| {
        let level = [e.1.len() - 1];
        kb.simplex_of(&e, level).cloned().ok_or_else(|| Error::Invalid("k_! is missing a low-dimensional cell".into()))
    };
    let run = || -> Result<Verdict> {
        // π₁X -> τ₁k_!X: g ↦ (g, 01), g⁻ ↦ (g, 10).
        let objects_pk: Vec<usize> = x
            .vertices()
            .iter()
            .map(|&v| Ok(tk.object_of[&locate((v, vec![0]))?.cell]))
            .collect::<Result<_>>()?;
        let mut gens_pk = Vec::with_capacity(2 * n);
        for seq in [vec![0, 1], vec![1, 0]] {
            for &e in &edges {
                gens_pk.push(tk.path_of(k, &locate((e, seq.clone()))?));
            }
        }
        let forward = respects_relations(&p, &tk.cat, &objects_pk, &gens_pk);
        // τ₁k_!X -> π₁X on the edges of k_!X, which all have this form.
        let objects_kp: Vec<usize> = k.vertices().iter().map(|&v| tx.object_of[&kb.cell_elems[v].0]).collect();
        let gens_kp: Vec<Path> = k
            .cells_of_dim(1)
            .iter()
            .map(|&c| {
                let (e, seq) = &kb.cell_elems[c];
                let g = tx.generator_of[e];
                let src = tx.cat.generators[g].src;
                if seq[0] < seq[1] {
                    Path::new(src, vec![g])
                } else {
                    Path::new(tx.cat.generators[g].tgt, vec![g + n])
                }
            })
            .collect();
        let backward = respects_relations(&tk.cat, &p, &objects_kp, &gens_kp);
        let probes = probe_equivalent(&tk.cat, &p, &examples::probes());
        Ok(Verdict::all([
            ("pi1_to_tau1k".to_string(), forward),
            ("tau1k_to_pi1".to_string(), backward),
            ("probes".to_string(), probes),
        ]))
    };
    run().unwrap_or_else(Verdict::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisset::{box_product, column, i1_star, row};
    use crate::iso::{find_iso, is_isomorphic};
    use crate::product::product;
    use crate::shapes::{boundary, point};

    fn circle() -> Arc<SimplicialSet> {
        let i = crate::shapes::inclusion(&boundary(1), &simplex(1));
        crate::colimit::quotient(&i).unwrap().set
    }

    /// Nondegenerate `k`-simplices of the free groupoid on `[n]`: words
    /// `a_0 -> ... -> a_k` with consecutive objects distinct.
    fn free_groupoid_count(n: usize, k: usize) -> usize {
        (n + 1) * n.pow(k as u32)
    }

    #[test]
    fn groupoid_simplices() {
        assert!(is_isomorphic(&groupoid_simplex(0, 3).set, &point()));
        let g = groupoid_simplex(1, 1).set;
        assert_eq!((g.cells_of_dim(0).len(), g.cells_of_dim(1).len()), (2, 2));
        for n in 1..4 {
            let g = groupoid_simplex(n, 3).set;
            for k in 0..=3 {
                assert_eq!(g.cells_of_dim(k).len(), free_groupoid_count(n, k));
            }
        }
        let j = nerve(&examples::iso_groupoid(), 3);
        assert!(is_isomorphic(&groupoid_simplex(1, 3).set, &j));
        assert!(is_isomorphic(&groupoid_simplex(2, 2).set, &nerve(&examples::indiscrete(2), 2)));
    }

    #[test]
    fn k_bang_of_simplices_and_discrete_sets() {
        for n in 0..3 {
            let k = k_bang(&simplex(n), 3);
            assert!(k.set.structure_violation().is_none());
            assert!(is_isomorphic(&k.set, &groupoid_simplex(n, 3).set), "n = {n}");
        }
        let two = Arc::new(point().coproduct(&point(), "2"));
        assert!(is_isomorphic(&k_bang(&two, 3).set, &two));
        let s = k_bang(&circle(), 2).set;
        assert_eq!(s.cells_of_dim(0).len(), 1);
        assert_eq!(s.cells_of_dim(1).len(), 2);
    }

    #[test]
    fn t_bang_of_boxes_is_product() {
        let cap = 3;
        let t = t_bang(&box_product(&simplex(1), &point()).set, cap);
        assert!(is_isomorphic(&t.set, &simplex(1)));
        for (a, b) in [(simplex(1), simplex(1)), (boundary(2), simplex(1)), (simplex(2), boundary(1))] {
            let lhs = t_bang(&box_product(&a, &b).set, cap).set;
            let kb = Arc::new(k_bang(&b, cap).set.as_ref().clone());
            let rhs = Arc::new(product(&a, &kb).set.skeleton([cap]));
            assert!(find_iso(&lhs, &rhs).is_some(), "{} {}", a.name(), b.name());
        }
        assert!(is_isomorphic(&t_bang(&crate::bisset::bi_point(), cap).set, &point()));
    }

    #[test]
    fn k_shriek_of_nerves() {
        let n1 = k_shriek_nerve(&examples::poset(1), 3).set;
        assert_eq!((n1.len(), n1.vertices().len()), (2, 2));
        let j = examples::iso_groupoid();
        assert!(is_isomorphic(&k_shriek_nerve(&j, 3).set, &nerve(&j, 3)));
        assert!(is_isomorphic(&k_shriek_nerve(&examples::terminal(), 3).set, &point()));
        for c in examples::probes() {
            let core = j_core(&nerve(&c, 3));
            assert!(is_isomorphic(&k_shriek_nerve(&c, 3).set, &core.set), "{}", c.name);
        }
    }

    #[test]
    fn k_shriek_approximation_stabilizes_on_nerves() {
        let j = examples::iso_groupoid();
        let a = k_shriek_approx(&nerve(&j, 3), 2, 3).unwrap();
        assert!(a.stabilized && !a.value.is_exact());
        assert!(is_isomorphic(&a.value.set, &nerve(&j, 2)));
        let b = k_shriek_approx(&nerve(&examples::poset(1), 3), 2, 3).unwrap();
        assert_eq!(b.value.set.len(), 2);
    }

    #[test]
    fn gamma_of_interval() {
        let x = nerve(&examples::poset(1), 3);
        let g = gamma(&x, 3).unwrap();
        assert!(g.is_exact());
        for m in 0..=3 {
            let c = column(g.set(), m);
            assert_eq!(c.set().len(), m + 2, "column {m}");
            assert_eq!(c.set().dim(), 0);
        }
        assert!(is_isomorphic(&i1_star(g.set()), &x));
        assert!(is_isomorphic(&gamma(&point(), 3).unwrap().set().clone(), &crate::bisset::bi_point()));
    }

    #[test]
    fn rows_of_gamma_are_x_paren() {
        let x = nerve(&examples::iso_groupoid(), 3);
        let g = gamma(&x, 2).unwrap();
        for n in 0..=1 {
            let xp = x_paren(&x, &simplex(n), 2).unwrap();
            let r = row(g.set(), n);
            assert!(is_isomorphic(&Arc::new(r.set().skeleton([2])), &Arc::new(xp.set().skeleton([2]))), "row {n}");
        }
        let n1 = nerve(&examples::poset(1), 3);
        assert_eq!(x_paren(&n1, &simplex(1), 1).unwrap().set().vertices().len(), 2);
        assert!(is_isomorphic(&x_paren(&n1, &point(), 3).unwrap().set().clone(), &n1));
    }

    #[test]
    fn kandpi() {
        for x in [simplex(2), circle(), boundary(2), point()] {
            let v = kandpi_check(&x);
            assert!(v.is_yes(), "{}: {:?}", x.name(), v);
        }
    }
}
