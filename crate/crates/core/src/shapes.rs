//! Standard simplicial sets: simplices, boundaries, horns, chains, and the
//! maps between them induced by monotone maps.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::ops::Monotone;
use crate::presheaf::{Cell, Simplex, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Simplex(usize),
    Boundary(usize),
    Horn(usize, usize),
    Chain(usize),
    Point,
    Empty,
}

pub fn subset_name(vs: &[usize]) -> String {
    if vs.iter().all(|&v| v < 10) {
        vs.iter().map(|v| v.to_string()).collect()
    } else {
        vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// The subcomplex of `Δ[n]` spanned by the given faces (each a sorted
/// vertex list); all their faces are included.
pub fn ordered_complex(name: &str, n: usize, generators: &[Vec<usize>]) -> SimplicialSet {
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for g in generators {
        debug_assert!(g.windows(2).all(|w| w[0] < w[1]) && g.iter().all(|&v| v <= n));
        let k = g.len();
        for mask in 1u32..(1 << k) {
            let s: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| g[i]).collect();
            subsets.push(s);
        }
    }
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets.dedup();
    let index: std::collections::HashMap<Vec<usize>, usize> =
        subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let cells = subsets
        .iter()
        .map(|s| {
            let k = s.len() - 1;
            let faces = if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        Simplex { cell: index[&f], degen: [Monotone::identity(k - 1)] }
                    })
                    .collect()
            };
            Cell { name: subset_name(s), dims: [k], faces: [faces] }
        })
        .collect();
    SimplicialSet::from_cells_unchecked(name, cells)
}

fn all_but(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&v| v != i).collect()
}

pub fn build_standard(shape: Shape) -> Result<SimplicialSet> {
    Ok(match shape {
        Shape::Simplex(n) => ordered_complex(&format!("Δ[{n}]"), n, &[(0..=n).collect()]),
        Shape::Boundary(n) => {
            if n == 0 {
                SimplicialSet::empty("∂Δ[0]")
            } else {
                let gens: Vec<Vec<usize>> = (0..=n).map(|i| all_but(n, i)).collect();
                ordered_complex(&format!("∂Δ[{n}]"), n, &gens)
            }
        }
        Shape::Horn(n, k) => {
            if n == 0 || k > n {
                return Err(Error::Precondition(format!("horn Λ^{k}[{n}] needs 0 ≤ k ≤ n and n ≥ 1")));
            }
            let gens: Vec<Vec<usize>> = (0..=n).filter(|&i| i != k).map(|i| all_but(n, i)).collect();
            ordered_complex(&format!("Λ^{k}[{n}]"), n, &gens)
        }
        Shape::Chain(n) => {
            let gens: Vec<Vec<usize>> = if n == 0 { vec![vec![0]] } else { (0..n).map(|i| vec![i, i + 1]).collect() };
            ordered_complex(&format!("I[{n}]"), n, &gens)
        }
        Shape::Point => ordered_complex("Δ[0]", 0, &[vec![0]]),
        Shape::Empty => SimplicialSet::empty("∅"),
    })
}

pub fn simplex(n: usize) -> Arc<SimplicialSet> {
    Arc::new(build_standard(Shape::Simplex(n)).unwrap())
}

pub fn boundary(n: usize) -> Arc<SimplicialSet> {
    Arc::new(build_standard(Shape::Boundary(n)).unwrap())
}

pub fn horn(n: usize, k: usize) -> Arc<SimplicialSet> {
    Arc::new(build_standard(Shape::Horn(n, k)).unwrap())
}

pub fn chain(n: usize) -> Arc<SimplicialSet> {
    Arc::new(build_standard(Shape::Chain(n)).unwrap())
}

pub fn point() -> Arc<SimplicialSet> {
    simplex(0)
}

pub fn empty() -> Arc<SimplicialSet> {
    Arc::new(SimplicialSet::empty("∅"))
}

/// The simplex of an ordered complex with the given (weakly increasing)
/// vertex sequence. Panics if the support is not a cell.
pub fn simplex_on(x: &SimplicialSet, verts: &[usize]) -> Simplex<1> {
    let top = *verts.iter().max().unwrap();
    let (epi, mono) = Monotone::new(verts.iter().copied(), top).epi_mono();
    let support: Vec<usize> = mono.values().iter().map(|&v| v as usize).collect();
    let cell = x.cell_id(&subset_name(&support)).unwrap_or_else(|| panic!("{support:?} is not a cell of {}", x.name()));
    Simplex { cell, degen: [epi] }
}

/// Vertex labels of a cell of an ordered complex, read from its name.
pub fn cell_vertices(x: &SimplicialSet, c: usize) -> Vec<usize> {
    let name = &x.cell(c).name;
    if name.contains(',') {
        name.split(',').map(|v| v.parse().unwrap()).collect()
    } else {
        name.chars().map(|ch| ch.to_digit(10).unwrap() as usize).collect()
    }
}

/// Map between ordered complexes induced by a vertex map, which must be
/// monotone on every cell and land in cells.
pub fn vertex_map(dom: &Arc<SimplicialSet>, cod: &Arc<SimplicialSet>, f: impl Fn(usize) -> usize) -> SimplicialMap {
    let images = (0..dom.len())
        .map(|c| {
            let vs: Vec<usize> = cell_vertices(dom, c).into_iter().map(&f).collect();
            simplex_on(cod, &vs)
        })
        .collect();
    SimplicialMap::new_unchecked(dom.clone(), cod.clone(), images)
}

/// Inclusion of one ordered complex into another on the same vertex names.
pub fn inclusion(sub: &Arc<SimplicialSet>, ambient: &Arc<SimplicialSet>) -> SimplicialMap {
    vertex_map(sub, ambient, |v| v)
}

/// `Δ[θ] : Δ[m] -> Δ[n]`.
pub fn simplex_map(theta: &Monotone) -> SimplicialMap {
    let dom = simplex(theta.source_dim());
    let cod = simplex(theta.target_dim());
    vertex_map(&dom, &cod, |v| theta.at(v))
}

/// The unique map to the point.
pub fn to_point(x: &Arc<SimplicialSet>) -> SimplicialMap {
    let pt = point();
    let images = (0..x.len()).map(|c| Simplex { cell: 0, degen: [Monotone::constant(x.dims(c)[0], 0, 0)] }).collect();
    SimplicialMap::new_unchecked(x.clone(), pt, images)
}

/// The map `Δ[n] -> X` classifying a simplex.
pub fn yoneda(x: &Arc<SimplicialSet>, s: &Simplex<1>) -> SimplicialMap {
    let n = s.level()[0];
    let dom = simplex(n);
    let images = (0..dom.len())
        .map(|c| {
            let vs = cell_vertices(&dom, c);
            x.act(s, &[Monotone::inclusion(&vs, n)])
        })
        .collect();
    SimplicialMap::new_unchecked(dom, x.clone(), images)
}

/// The inclusion `{v} ⊂ X` of a vertex.
pub fn vertex_inclusion(x: &Arc<SimplicialSet>, v: usize) -> SimplicialMap {
    yoneda(x, &x.identity_simplex(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(x: &SimplicialSet) -> Vec<usize> {
        (0..=x.dim()).map(|n| x.cells_of_dim(n).len()).collect()
    }

    #[test]
    fn cell_counts() {
        assert_eq!(counts(&simplex(3)), vec![4, 6, 4, 1]);
        assert_eq!(counts(&boundary(2)), vec![3, 3]);
        assert_eq!(counts(&horn(3, 1)), vec![4, 6, 3]);
        assert_eq!(counts(&chain(3)), vec![4, 3]);
        assert_eq!(chain(0).len(), 1);
        assert!(build_standard(Shape::Horn(2, 3)).is_err());
    }

    #[test]
    fn standard_shapes_are_valid() {
        for x in [simplex(4), boundary(3), horn(4, 2), chain(4)] {
            assert!(x.structure_violation().is_none());
            assert!(x.identity_violation().is_none());
        }
    }

    #[test]
    fn induced_maps_commute() {
        let th = Monotone::new([0, 0, 2], 2);
        assert!(simplex_map(&th).violation().is_none());
        assert!(inclusion(&horn(3, 2), &simplex(3)).violation().is_none());
        assert!(to_point(&boundary(2)).violation().is_none());
    }
}
