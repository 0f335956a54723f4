//! Isomorphism search between finite presheaves.
//!
//! Cells are first coloured by iterated refinement over ordered faces and
//! cofaces; an isomorphism is then searched among colour-preserving,
//! injective assignments.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::map::Map;
use crate::ops::Monotone;
use crate::presheaf::Presheaf;
use crate::search::HomSearch;

type Signature<const D: usize> = (usize, Vec<(usize, Vec<Monotone>)>, Vec<(usize, usize, usize)>);

/// Stable colouring of the cells of `a` and `b` on a shared palette.
fn refine<const D: usize>(a: &Presheaf<D>, b: &Presheaf<D>) -> (Vec<usize>, Vec<usize>) {
    let sets = [a, b];
    let mut palette: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut colours: Vec<Vec<usize>> = sets
        .iter()
        .map(|x| {
            x.cells()
                .iter()
                .map(|c| {
                    let n = palette.len();
                    *palette.entry(c.dims.to_vec()).or_insert(n)
                })
                .collect()
        })
        .collect();
    let mut classes = palette.len();
    loop {
        let mut sigs: BTreeMap<Signature<D>, usize> = BTreeMap::new();
        let mut next: Vec<Vec<usize>> = Vec::new();
        let raw: Vec<Vec<Signature<D>>> = sets
            .iter()
            .zip(&colours)
            .map(|(x, col)| {
                let mut cofaces: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); x.len()];
                for (id, c) in x.cells().iter().enumerate() {
                    for d in 0..D {
                        for (i, f) in c.faces[d].iter().enumerate() {
                            cofaces[f.cell].push((col[id], d, i));
                        }
                    }
                }
                x.cells()
                    .iter()
                    .enumerate()
                    .map(|(id, c)| {
                        let faces = c.faces.iter().flatten().map(|f| (col[f.cell], f.degen.to_vec())).collect();
                        let mut co = std::mem::take(&mut cofaces[id]);
                        co.sort();
                        (col[id], faces, co)
                    })
                    .collect()
            })
            .collect();
        for side in &raw {
            for s in side {
                let n = sigs.len();
                sigs.entry(s.clone()).or_insert(n);
            }
        }
        for side in &raw {
            next.push(side.iter().map(|s| sigs[s]).collect());
        }
        let stable = sigs.len() == classes;
        classes = sigs.len();
        colours = next;
        if stable {
            break;
        }
    }
    let b_col = colours.pop().unwrap();
    let a_col = colours.pop().unwrap();
    (a_col, b_col)
}

/// An isomorphism `a -> b`, if one exists.
pub fn find_iso<const D: usize>(a: &Arc<Presheaf<D>>, b: &Arc<Presheaf<D>>) -> Option<Map<D>> {
    if a.len() != b.len() || a.cell_counts() != b.cell_counts() {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let mut hist: HashMap<usize, isize> = HashMap::new();
    for &c in &ca {
        *hist.entry(c).or_insert(0) += 1;
    }
    for &c in &cb {
        *hist.entry(c).or_insert(0) -= 1;
    }
    if hist.values().any(|&v| v != 0) {
        return None;
    }
    let filter = |c: usize, s: &crate::presheaf::Simplex<D>| ca[c] == cb[s.cell];
    HomSearch::new(a, b).injective().filter(&filter).first().ok().flatten()
}

/// Search for an isomorphism `b -> c` with `iso ∘ f = g` for given `f : a -> b`, `g : a -> c`.
pub fn find_iso_under<const D: usize>(f: &Map<D>, g: &Map<D>) -> Option<Map<D>> {
    let (b, c) = (f.cod(), g.cod());
    if b.len() != c.len() || b.cell_counts() != c.cell_counts() {
        return None;
    }
    let (cb, cc) = refine(b, c);
    let filter = |x: usize, s: &crate::presheaf::Simplex<D>| cb[x] == cc[s.cell];
    HomSearch::new(b, c).injective().filter(&filter).extending(f, g).first().ok().flatten()
}

pub fn is_isomorphic<const D: usize>(a: &Arc<Presheaf<D>>, b: &Arc<Presheaf<D>>) -> bool {
    find_iso(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::product;
    use crate::shapes::{boundary, chain, horn, point, simplex};

    #[test]
    fn chain_two_is_inner_horn() {
        assert!(is_isomorphic(&chain(2), &horn(2, 1)));
        assert!(!is_isomorphic(&horn(2, 0), &horn(2, 1)));
        assert!(!is_isomorphic(&boundary(2), &horn(2, 1)));
    }

    #[test]
    fn unit_law_is_iso() {
        let p = product(&point(), &simplex(2));
        let iso = find_iso(&p.set, &simplex(2)).unwrap();
        assert!(iso.violation().is_none());
        assert!(iso.is_iso());
    }
}
