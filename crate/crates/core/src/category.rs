//! Finite categories, finitely presented categories, and functors between them.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::build::{build, LevelSource};
use crate::error::{Error, Result};
use crate::ops::Monotone;
use crate::presheaf::{Level, SimplicialSet};
use crate::rewrite::{Rewriting, Word, DEFAULT_COMPLETION_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A category with finitely many arrows, given by its full composition table.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: Vec<usize>,
    /// `table[f * n + g] = Some(g ∘ f)` when `tgt f = src g`.
    table: Vec<Option<usize>>,
}

#[derive(Serialize, Deserialize)]
struct FiniteCategoryDoc {
    name: String,
    objects: Vec<String>,
    arrows: Vec<ArrowDoc>,
    identities: Vec<String>,
    /// `[f, g, h]` with `h = g ∘ f`.
    composition: Vec<[String; 3]>,
}

#[derive(Serialize, Deserialize)]
struct ArrowDoc {
    name: String,
    src: String,
    tgt: String,
}

impl FiniteCategory {
    /// Build from explicit composites `(f, g, g ∘ f)`; composites with an
    /// identity may be omitted. The laws are checked.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<FiniteCategory> {
        let n = arrows.len();
        if identities.len() != objects.len() {
            return Err(Error::Invalid("one identity per object is required".into()));
        }
        for (o, &i) in identities.iter().enumerate() {
            if i >= n || arrows[i].src != o || arrows[i].tgt != o {
                return Err(Error::Invalid(format!("identity of {} is not an endomorphism of it", objects[o])));
            }
        }
        if arrows.iter().any(|a| a.src >= objects.len() || a.tgt >= objects.len()) {
            return Err(Error::Invalid("arrow endpoint out of range".into()));
        }
        let mut table = vec![None; n * n];
        for f in 0..n {
            table[f * n + identities[arrows[f].tgt]] = Some(f);
            table[identities[arrows[f].src] * n + f] = Some(f);
        }
        for &(f, g, h) in composites {
            if f >= n || g >= n || h >= n {
                return Err(Error::Invalid("composite out of range".into()));
            }
            match table[f * n + g] {
                Some(old) if old != h => {
                    return Err(Error::Invalid(format!(
                        "composite of {} then {} given twice",
                        arrows[f].name, arrows[g].name
                    )))
                }
                _ => table[f * n + g] = Some(h),
            }
        }
        let c = FiniteCategory { name: name.into(), objects, arrows, identities, table };
        match c.law_violation() {
            Some(msg) => Err(Error::Invalid(msg)),
            None => Ok(c),
        }
    }

    /// The maximal subgroupoid.
    pub fn core(&self) -> FiniteCategory {
        let keep: Vec<usize> = (0..self.len()).filter(|&f| self.is_iso(f)).collect();
        let index: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let arrows = keep.iter().map(|&f| self.arrows[f].clone()).collect();
        let identities = self.identities.iter().map(|i| index[i]).collect();
        let composites: Vec<_> = keep
            .iter()
            .flat_map(|&f| keep.iter().map(move |&g| (f, g)))
            .filter_map(|(f, g)| self.then(f, g).map(|h| (index[&f], index[&g], index[&h])))
            .collect();
        FiniteCategory::new(format!("core {}", self.name), self.objects.clone(), arrows, identities, &composites)
            .expect("isomorphisms form a subcategory")
    }

    /// First failure of typing, totality, unit or associativity laws.
    pub fn law_violation(&self) -> Option<String> {
        let n = self.arrows.len();
        for f in 0..n {
            for g in 0..n {
                let composable = self.arrows[f].tgt == self.arrows[g].src;
                match (composable, self.table[f * n + g]) {
                    (true, None) => return Some(format!("missing composite {} then {}", self.arrows[f].name, self.arrows[g].name)),
                    (false, Some(_)) => return Some(format!("composite of non-composable {} and {}", self.arrows[f].name, self.arrows[g].name)),
                    (true, Some(h)) if self.arrows[h].src != self.arrows[f].src || self.arrows[h].tgt != self.arrows[g].tgt => {
                        return Some(format!("composite of {} then {} has wrong endpoints", self.arrows[f].name, self.arrows[g].name))
                    }
                    _ => {}
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(fg) = self.then(f, g) else { continue };
                for h in 0..n {
                    if let Some(gh) = self.then(g, h) {
                        if self.then(fg, h) != self.then(f, gh) {
                            return Some(format!(
                                "associativity fails on {}, {}, {}",
                                self.arrows[f].name, self.arrows[g].name, self.arrows[h].name
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `g ∘ f`, if composable.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.table[f * self.arrows.len() + g]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].src] == f
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f].src == a && self.arrows[f].tgt == b).collect()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let Arrow { src, tgt, .. } = self.arrows[f];
        self.hom(tgt, src)
            .into_iter()
            .find(|&g| self.then(f, g) == Some(self.identities[src]) && self.then(g, f) == Some(self.identities[tgt]))
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_thin(&self) -> bool {
        let mut seen = HashSet::new();
        self.arrows.iter().all(|a| seen.insert((a.src, a.tgt)))
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_id(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Partition of objects into isomorphism classes.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let mut class: Vec<Option<usize>> = vec![None; self.objects.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for a in 0..self.objects.len() {
            if class[a].is_some() {
                continue;
            }
            let members: Vec<usize> = (a..self.objects.len())
                .filter(|&b| class[b].is_none() && self.hom(a, b).into_iter().any(|f| self.is_iso(f)))
                .collect();
            for &b in &members {
                class[b] = Some(out.len());
            }
            out.push(members);
        }
        out
    }

    /// The presentation by all non-identity arrows and all their composites.
    pub fn presentation(&self) -> FpCategory {
        let gens: Vec<usize> = (0..self.arrows.len()).filter(|&f| !self.is_identity(f)).collect();
        let index: HashMap<usize, usize> = gens.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let generators = gens.iter().map(|&f| self.arrows[f].clone()).collect();
        let mut relations = Vec::new();
        for &f in &gens {
            for &g in &gens {
                if let Some(h) = self.then(f, g) {
                    let rhs = if self.is_identity(h) { vec![] } else { vec![index[&h]] };
                    relations.push((Path::new(self.arrows[f].src, vec![index[&f], index[&g]]), Path::new(self.arrows[f].src, rhs)));
                }
            }
        }
        FpCategory::new(format!("⟨{}⟩", self.name), self.objects.clone(), generators, relations)
            .expect("composition table gives well-typed relations")
    }

    pub fn product(&self, other: &FiniteCategory) -> FiniteCategory {
        let no = other.objects.len();
        let na = other.arrows.len();
        let objects = self
            .objects
            .iter()
            .flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})")))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .flat_map(|f| {
                other.arrows.iter().map(move |g| Arrow {
                    name: format!("({},{})", f.name, g.name),
                    src: f.src * no + g.src,
                    tgt: f.tgt * no + g.tgt,
                })
            })
            .collect();
        let identities = (0..self.objects.len())
            .flat_map(|a| (0..no).map(move |b| (a, b)))
            .map(|(a, b)| self.identities[a] * na + other.identities[b])
            .collect();
        let mut composites = Vec::new();
        for f1 in 0..self.arrows.len() {
            for f2 in 0..self.arrows.len() {
                let Some(f) = self.then(f1, f2) else { continue };
                for g1 in 0..na {
                    for g2 in 0..na {
                        if let Some(g) = other.then(g1, g2) {
                            composites.push((f1 * na + g1, f2 * na + g2, f * na + g));
                        }
                    }
                }
            }
        }
        FiniteCategory::new(format!("{}×{}", self.name, other.name), objects, arrows, identities, &composites)
            .expect("product of categories satisfies the laws")
    }

    pub fn to_value(&self) -> Value {
        let doc = FiniteCategoryDoc {
            name: self.name.clone(),
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDoc { name: a.name.clone(), src: self.objects[a.src].clone(), tgt: self.objects[a.tgt].clone() })
                .collect(),
            identities: self.identities.iter().map(|&i| self.arrows[i].name.clone()).collect(),
            composition: (0..self.arrows.len())
                .flat_map(|f| (0..self.arrows.len()).map(move |g| (f, g)))
                .filter(|&(f, g)| !self.is_identity(f) && !self.is_identity(g))
                .filter_map(|(f, g)| self.then(f, g).map(|h| (f, g, h)))
                .map(|(f, g, h)| [self.arrows[f].name.clone(), self.arrows[g].name.clone(), self.arrows[h].name.clone()])
                .collect(),
        };
        serde_json::to_value(doc).expect("category documents serialize")
    }

    pub fn from_value(v: &Value) -> Result<FiniteCategory> {
        let doc: FiniteCategoryDoc = serde_json::from_value(v.clone())?;
        let obj = |n: &str| {
            doc.objects.iter().position(|o| o == n).ok_or_else(|| Error::Format(format!("unknown object {n}")))
        };
        let arrows = doc
            .arrows
            .iter()
            .map(|a| Ok(Arrow { name: a.name.clone(), src: obj(&a.src)?, tgt: obj(&a.tgt)? }))
            .collect::<Result<Vec<_>>>()?;
        let arr = |n: &str| arrows.iter().position(|a| a.name == n).ok_or_else(|| Error::Format(format!("unknown arrow {n}")));
        let identities = doc.identities.iter().map(|n| arr(n)).collect::<Result<Vec<_>>>()?;
        let composites =
            doc.composition.iter().map(|[f, g, h]| Ok((arr(f)?, arr(g)?, arr(h)?))).collect::<Result<Vec<_>>>()?;
        FiniteCategory::new(doc.name, doc.objects, arrows.clone(), identities, &composites)
    }
}

/// Standard small categories.
pub mod examples {
    use super::*;

    fn named(names: impl IntoIterator<Item = String>) -> Vec<String> {
        names.into_iter().collect()
    }

    /// The poset `[n]`; the arrow `i≤j` is named `ij`.
    pub fn poset(n: usize) -> FiniteCategory {
        let objects = named((0..=n).map(|i| i.to_string()));
        let mut arrows = Vec::new();
        let mut id = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                id.insert((i, j), arrows.len());
                arrows.push(Arrow { name: format!("{i}{j}"), src: i, tgt: j });
            }
        }
        let identities = (0..=n).map(|i| id[&(i, i)]).collect();
        let mut composites = Vec::new();
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    composites.push((id[&(i, j)], id[&(j, k)], id[&(i, k)]));
                }
            }
        }
        FiniteCategory::new(format!("[{n}]"), objects, arrows, identities, &composites).unwrap()
    }

    pub fn terminal() -> FiniteCategory {
        let mut c = poset(0);
        c.name = "1".into();
        c
    }

    /// `k` objects and only identities.
    pub fn discrete(k: usize) -> FiniteCategory {
        let objects = named((0..k).map(|i| i.to_string()));
        let arrows = (0..k).map(|i| Arrow { name: format!("1_{i}"), src: i, tgt: i }).collect();
        FiniteCategory::new(format!("disc{k}"), objects, arrows, (0..k).collect(), &[]).unwrap()
    }

    /// The cyclic group of order `k` as a one-object category; `g^i` is named `g{i}`.
    pub fn cyclic(k: usize) -> FiniteCategory {
        let arrows = (0..k).map(|i| Arrow { name: if i == 0 { "e".into() } else { format!("g{i}") }, src: 0, tgt: 0 }).collect();
        let composites: Vec<_> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j, (i + j) % k))).collect();
        FiniteCategory::new(format!("Z/{k}"), vec!["*".into()], arrows, vec![0], &composites).unwrap()
    }

    /// The groupoid with two objects and a unique arrow between any two.
    pub fn iso_groupoid() -> FiniteCategory {
        let objects = named(["0".to_string(), "1".to_string()]);
        let arrows: Vec<Arrow> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(s, t)| Arrow { name: format!("{s}{t}"), src: s, tgt: t })
            .collect();
        let composites: Vec<_> = (0..4)
            .flat_map(|f| (0..4).map(move |g| (f, g)))
            .filter(|&(f, g)| arrows[f].tgt == arrows[g].src)
            .map(|(f, g)| (f, g, arrows[f].src * 2 + arrows[g].tgt))
            .collect();
        FiniteCategory::new("J", objects, arrows, vec![0, 3], &composites).unwrap()
    }

    /// Two parallel arrows `a, b : 0 -> 1`.
    pub fn parallel_pair() -> FiniteCategory {
        let arrows = vec![
            Arrow { name: "1_0".into(), src: 0, tgt: 0 },
            Arrow { name: "1_1".into(), src: 1, tgt: 1 },
            Arrow { name: "a".into(), src: 0, tgt: 1 },
            Arrow { name: "b".into(), src: 0, tgt: 1 },
        ];
        FiniteCategory::new("⇉", named(["0".into(), "1".into()]), arrows, vec![0, 1], &[]).unwrap()
    }

    /// The monoid `{1, e}` with `e e = e`.
    pub fn idempotent() -> FiniteCategory {
        let arrows = vec![Arrow { name: "1".into(), src: 0, tgt: 0 }, Arrow { name: "e".into(), src: 0, tgt: 0 }];
        FiniteCategory::new("Idem", vec!["*".into()], arrows, vec![0], &[(1, 1, 1)]).unwrap()
    }

    /// The groupoid on `0..=n` with exactly one arrow between any two
    /// objects; the arrow `i -> j` is named `i>j`.
    pub fn indiscrete(n: usize) -> FiniteCategory {
        let k = n + 1;
        let objects = named((0..k).map(|i| i.to_string()));
        let arrows: Vec<Arrow> =
            (0..k).flat_map(|s| (0..k).map(move |t| Arrow { name: format!("{s}>{t}"), src: s, tgt: t })).collect();
        let composites: Vec<_> = (0..k * k)
            .flat_map(|f| (0..k).map(move |t| (f, (f % k) * k + t, (f / k) * k + t)))
            .collect();
        let identities = (0..k).map(|i| i * k + i).collect();
        FiniteCategory::new(format!("I{k}"), objects, arrows, identities, &composites).unwrap()
    }

    /// Probe categories used to compare presentations.
    pub fn probes() -> Vec<FiniteCategory> {
        vec![terminal(), poset(1), poset(2), cyclic(2), cyclic(3), iso_groupoid(), parallel_pair(), idempotent(), discrete(2)]
    }
}

/// A path in a presented category: a source object and generators in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub src: usize,
    pub gens: Word,
}

impl Path {
    pub fn new(src: usize, gens: Word) -> Path {
        Path { src, gens }
    }

    pub fn identity(obj: usize) -> Path {
        Path { src: obj, gens: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub struct FpCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub generators: Vec<Arrow>,
    pub relations: Vec<(Path, Path)>,
    rewriting: OnceLock<Rewriting>,
    realized: OnceLock<Option<Realized>>,
}

/// A presented category realized as a finite category; `paths[f]` is the
/// normal form representing arrow `f`.
#[derive(Clone, Debug)]
pub struct Realized {
    pub category: FiniteCategory,
    pub paths: Vec<Path>,
}

pub const DEFAULT_REALIZE_CAP: usize = 5_000;
pub const DEFAULT_INVERSE_LENGTH: usize = 8;

#[derive(Serialize, Deserialize)]
struct FpDoc {
    name: String,
    objects: Vec<String>,
    generators: Vec<ArrowDoc>,
    /// Each side: `{ "src": object, "word": [generator names] }`.
    relations: Vec<[PathDoc; 2]>,
}

#[derive(Serialize, Deserialize)]
struct PathDoc {
    src: String,
    word: Vec<String>,
}

impl FpCategory {
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        generators: Vec<Arrow>,
        relations: Vec<(Path, Path)>,
    ) -> Result<FpCategory> {
        let c = FpCategory { name: name.into(), objects, generators, relations, rewriting: OnceLock::new(), realized: OnceLock::new() };
        for g in &c.generators {
            if g.src >= c.objects.len() || g.tgt >= c.objects.len() {
                return Err(Error::Invalid(format!("generator {} has an endpoint out of range", g.name)));
            }
        }
        for (p, q) in &c.relations {
            let (tp, tq) = (c.target(p)?, c.target(q)?);
            if p.src != q.src || tp != tq {
                return Err(Error::Invalid("relation between paths with different endpoints".into()));
            }
        }
        Ok(c)
    }

    /// Endpoint of a path; errors if the generators are not composable.
    pub fn target(&self, p: &Path) -> Result<usize> {
        let mut at = p.src;
        for &g in &p.gens {
            let gen = self.generators.get(g).ok_or_else(|| Error::Invalid(format!("no generator {g}")))?;
            if gen.src != at {
                return Err(Error::Invalid(format!("generator {} does not start at {}", gen.name, self.objects[at])));
            }
            at = gen.tgt;
        }
        Ok(at)
    }

    pub fn generator_path(&self, g: usize) -> Path {
        Path::new(self.generators[g].src, vec![g])
    }

    pub fn compose(&self, p: &Path, q: &Path) -> Path {
        let mut gens = p.gens.clone();
        gens.extend_from_slice(&q.gens);
        Path::new(p.src, gens)
    }

    pub fn rewriting(&self) -> &Rewriting {
        self.rewriting.get_or_init(|| {
            let rels: Vec<(Word, Word)> = self.relations.iter().map(|(p, q)| (p.gens.clone(), q.gens.clone())).collect();
            Rewriting::complete(&rels, DEFAULT_COMPLETION_BUDGET)
        })
    }

    pub fn normal_form(&self, p: &Path) -> Path {
        Path::new(p.src, self.rewriting().normalize(&p.gens))
    }

    /// Equality of arrows: exact when completion succeeded, otherwise only
    /// positive answers are trusted.
    pub fn equal(&self, p: &Path, q: &Path) -> Option<bool> {
        if p.src != q.src || self.target(p).ok() != self.target(q).ok() {
            return Some(false);
        }
        if self.normal_form(p) == self.normal_form(q) {
            Some(true)
        } else if self.rewriting().complete {
            Some(false)
        } else {
            None
        }
    }

    /// Irreducible paths out of `a` of length at most `max_len`, shortest first.
    fn irreducible_from(&self, a: usize, max_len: usize, cap: usize) -> (Vec<Path>, bool) {
        let rw = self.rewriting();
        let mut out = vec![Path::identity(a)];
        let mut frontier = VecDeque::from([Path::identity(a)]);
        let mut exhausted = true;
        while let Some(p) = frontier.pop_front() {
            if p.gens.len() == max_len {
                exhausted = false;
                continue;
            }
            let end = self.target(&p).unwrap();
            for g in 0..self.generators.len() {
                if self.generators[g].src != end {
                    continue;
                }
                let mut gens = p.gens.clone();
                gens.push(g);
                if rw.is_reducible(&gens) {
                    continue;
                }
                let q = Path::new(a, gens);
                out.push(q.clone());
                if out.len() > cap {
                    return (out, false);
                }
                frontier.push_back(q);
            }
        }
        (out, exhausted)
    }

    /// The finite category presented, if completion succeeded and there are
    /// at most `cap` arrows.
    pub fn realize(&self, cap: usize) -> Option<Realized> {
        if !self.rewriting().complete {
            return None;
        }
        let mut paths = Vec::new();
        for a in 0..self.objects.len() {
            let (ps, exhausted) = self.irreducible_from(a, cap, cap);
            if !exhausted || paths.len() + ps.len() > cap {
                return None;
            }
            paths.extend(ps);
        }
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let arrows: Vec<Arrow> = paths
            .iter()
            .map(|p| Arrow { name: self.path_name(p), src: p.src, tgt: self.target(p).unwrap() })
            .collect();
        let identities = (0..self.objects.len()).map(|a| index[&Path::identity(a)]).collect();
        let mut composites = Vec::new();
        for (f, p) in paths.iter().enumerate() {
            for (g, q) in paths.iter().enumerate() {
                if arrows[f].tgt == arrows[g].src {
                    composites.push((f, g, index[&self.normal_form(&self.compose(p, q))]));
                }
            }
        }
        let category = FiniteCategory::new(format!("real {}", self.name), self.objects.clone(), arrows, identities, &composites).ok()?;
        Some(Realized { category, paths })
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.gens.is_empty() {
            format!("1_{}", self.objects[p.src])
        } else {
            p.gens.iter().map(|&g| self.generators[g].name.as_str()).collect::<Vec<_>>().join(";")
        }
    }

    /// Whether a path is invertible: exact on finite realizations and when
    /// no word collapses to an identity; otherwise a bounded inverse search.
    pub fn is_invertible(&self, p: &Path) -> Option<bool> {
        if p.gens.is_empty() {
            return Some(true);
        }
        let rw = self.rewriting();
        if rw.complete && !rw.collapses_to_identity() {
            // Nonempty words never normalize to the empty word.
            return Some(false);
        }
        if let Some(r) = self.realization() {
            let nf = self.normal_form(p);
            let f = r.paths.iter().position(|q| *q == nf)?;
            return Some(r.category.is_iso(f));
        }
        let tgt = self.target(p).ok()?;
        let (candidates, _) = self.irreducible_from(tgt, DEFAULT_INVERSE_LENGTH, DEFAULT_REALIZE_CAP);
        for q in candidates.iter().filter(|q| self.target(q).ok() == Some(p.src)) {
            if self.equal(&self.compose(p, q), &Path::identity(p.src)) == Some(true)
                && self.equal(&self.compose(q, p), &Path::identity(tgt)) == Some(true)
            {
                return Some(true);
            }
        }
        None
    }

    /// The presentation with a formal inverse `g⁻` for each generator.
    pub fn with_formal_inverses(&self) -> FpCategory {
        let n = self.generators.len();
        let mut generators = self.generators.clone();
        generators.extend(self.generators.iter().map(|g| Arrow { name: format!("{}⁻", g.name), src: g.tgt, tgt: g.src }));
        let mut relations = self.relations.clone();
        for (i, g) in self.generators.iter().enumerate() {
            relations.push((Path::new(g.src, vec![i, i + n]), Path::identity(g.src)));
            relations.push((Path::new(g.tgt, vec![i + n, i]), Path::identity(g.tgt)));
        }
        FpCategory::new(format!("{}[inv]", self.name), self.objects.clone(), generators, relations)
            .expect("inverse relations are well typed")
    }

    pub fn to_value(&self) -> Value {
        let side = |p: &Path| PathDoc {
            src: self.objects[p.src].clone(),
            word: p.gens.iter().map(|&g| self.generators[g].name.clone()).collect(),
        };
        let doc = FpDoc {
            name: self.name.clone(),
            objects: self.objects.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| ArrowDoc { name: g.name.clone(), src: self.objects[g.src].clone(), tgt: self.objects[g.tgt].clone() })
                .collect(),
            relations: self.relations.iter().map(|(p, q)| [side(p), side(q)]).collect(),
        };
        serde_json::to_value(doc).expect("presentation documents serialize")
    }

    pub fn from_value(v: &Value) -> Result<FpCategory> {
        let doc: FpDoc = serde_json::from_value(v.clone())?;
        let obj = |n: &str| doc.objects.iter().position(|o| o == n).ok_or_else(|| Error::Format(format!("unknown object {n}")));
        let generators = doc
            .generators
            .iter()
            .map(|g| Ok(Arrow { name: g.name.clone(), src: obj(&g.src)?, tgt: obj(&g.tgt)? }))
            .collect::<Result<Vec<_>>>()?;
        let gen = |n: &str| generators.iter().position(|g| g.name == n).ok_or_else(|| Error::Format(format!("unknown generator {n}")));
        let path = |p: &PathDoc| -> Result<Path> { Ok(Path::new(obj(&p.src)?, p.word.iter().map(|w| gen(w)).collect::<Result<_>>()?)) };
        let relations = doc.relations.iter().map(|[p, q]| Ok((path(p)?, path(q)?))).collect::<Result<Vec<_>>>()?;
        FpCategory::new(doc.name, doc.objects, generators.clone(), relations)
    }
}

impl FpCategory {
    /// The realization at the default cap, computed once.
    pub fn realization(&self) -> Option<&Realized> {
        self.realized.get_or_init(|| self.realize(DEFAULT_REALIZE_CAP)).as_ref()
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug)]
pub struct Functor {
    pub dom: Arc<FiniteCategory>,
    pub cod: Arc<FiniteCategory>,
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Functor {
    pub fn new(dom: &Arc<FiniteCategory>, cod: &Arc<FiniteCategory>, objects: Vec<usize>, arrows: Vec<usize>) -> Result<Functor> {
        let f = Functor { dom: dom.clone(), cod: cod.clone(), objects, arrows };
        match f.violation() {
            Some(msg) => Err(Error::Invalid(msg)),
            None => Ok(f),
        }
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> Functor {
        Functor { dom: c.clone(), cod: c.clone(), objects: (0..c.objects.len()).collect(), arrows: (0..c.len()).collect() }
    }

    pub fn violation(&self) -> Option<String> {
        let (c, d) = (&*self.dom, &*self.cod);
        if self.objects.len() != c.objects.len() || self.arrows.len() != c.len() {
            return Some("functor tables have the wrong size".into());
        }
        for (f, a) in c.arrows.iter().enumerate() {
            let img = &d.arrows[self.arrows[f]];
            if img.src != self.objects[a.src] || img.tgt != self.objects[a.tgt] {
                return Some(format!("image of {} has the wrong endpoints", a.name));
            }
        }
        for (o, &i) in c.identities.iter().enumerate() {
            if self.arrows[i] != d.identities[self.objects[o]] {
                return Some(format!("identity of {} is not preserved", c.objects[o]));
            }
        }
        for f in 0..c.len() {
            for g in 0..c.len() {
                if let Some(h) = c.then(f, g) {
                    if d.then(self.arrows[f], self.arrows[g]) != Some(self.arrows[h]) {
                        return Some(format!("composite of {} then {} is not preserved", c.arrows[f].name, c.arrows[g].name));
                    }
                }
            }
        }
        None
    }

    /// Isofibration: every iso out of an image object lifts to an iso with that source.
    pub fn is_quasi_fibration(&self) -> bool {
        let (c, d) = (&*self.dom, &*self.cod);
        (0..c.objects.len()).all(|a| {
            (0..d.len())
                .filter(|&g| d.arrows[g].src == self.objects[a] && d.is_iso(g))
                .all(|g| (0..c.len()).any(|f| c.arrows[f].src == a && self.arrows[f] == g && c.is_iso(f)))
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        let (c, d) = (&*self.dom, &*self.cod);
        (0..c.objects.len()).all(|a| {
            (0..c.objects.len()).all(|b| {
                let mut imgs: Vec<usize> = c.hom(a, b).into_iter().map(|f| self.arrows[f]).collect();
                imgs.sort();
                imgs.dedup();
                imgs.len() == c.hom(a, b).len() && imgs == d.hom(self.objects[a], self.objects[b])
            })
        })
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let d = &*self.cod;
        (0..d.objects.len()).all(|y| {
            self.objects.iter().any(|&x| d.hom(x, y).into_iter().any(|g| d.is_iso(g)))
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }

    pub fn to_value(&self) -> Value {
        let objects: BTreeMap<&str, &str> = self
            .dom
            .objects
            .iter()
            .zip(&self.objects)
            .map(|(a, &b)| (a.as_str(), self.cod.objects[b].as_str()))
            .collect();
        let arrows: BTreeMap<&str, &str> = self
            .dom
            .arrows
            .iter()
            .zip(&self.arrows)
            .map(|(a, &b)| (a.name.as_str(), self.cod.arrows[b].name.as_str()))
            .collect();
        json!({ "domain": self.dom.to_value(), "codomain": self.cod.to_value(), "objects": objects, "arrows": arrows })
    }

    pub fn from_value(v: &Value) -> Result<Functor> {
        let dom = Arc::new(FiniteCategory::from_value(&v["domain"])?);
        let cod = Arc::new(FiniteCategory::from_value(&v["codomain"])?);
        let objects = dom
            .objects
            .iter()
            .map(|o| {
                v["objects"][o].as_str().and_then(|t| cod.object_id(t)).ok_or_else(|| Error::Format(format!("object {o} unmapped")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arrows = dom
            .arrows
            .iter()
            .map(|a| {
                v["arrows"][&a.name]
                    .as_str()
                    .and_then(|t| cod.arrow_id(t))
                    .ok_or_else(|| Error::Format(format!("arrow {} unmapped", a.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        Functor::new(&dom, &cod, objects, arrows)
    }
}

pub fn cat_quasi_fibration(f: &Functor) -> bool {
    f.is_quasi_fibration()
}

pub fn cat_equivalence(f: &Functor) -> bool {
    f.is_equivalence()
}

/// An assignment of a presentation into a finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub objects: Vec<usize>,
    pub generators: Vec<usize>,
}

/// Evaluate a path under an assignment.
pub fn evaluate(c: &FpCategory, d: &FiniteCategory, a: &Assignment, p: &Path) -> Option<usize> {
    let mut acc = d.identities[a.objects[p.src]];
    for &g in &p.gens {
        acc = d.then(acc, a.generators[g])?;
    }
    let _ = c;
    Some(acc)
}

/// All functors from a presented category to a finite one, objects first
/// then generators, each in index order.
pub fn functors_to(c: &FpCategory, d: &FiniteCategory) -> Vec<Assignment> {
    // Relations are checked as soon as their last generator is assigned.
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); c.generators.len() + 1];
    for (i, (p, q)) in c.relations.iter().enumerate() {
        let last = p.gens.iter().chain(&q.gens).map(|&g| g + 1).max().unwrap_or(0);
        ready[last].push(i);
    }
    let mut out = Vec::new();
    let mut objects = vec![0; c.objects.len()];
    assign_objects(c, d, &ready, 0, &mut objects, &mut out);
    out
}

fn assign_objects(c: &FpCategory, d: &FiniteCategory, ready: &[Vec<usize>], i: usize, objects: &mut Vec<usize>, out: &mut Vec<Assignment>) {
    if i == objects.len() {
        let mut a = Assignment { objects: objects.clone(), generators: vec![0; c.generators.len()] };
        if relations_hold(c, d, &a, &ready[0]) {
            assign_generators(c, d, ready, 0, &mut a, out);
        }
        return;
    }
    for o in 0..d.objects.len() {
        objects[i] = o;
        assign_objects(c, d, ready, i + 1, objects, out);
    }
}

fn assign_generators(c: &FpCategory, d: &FiniteCategory, ready: &[Vec<usize>], i: usize, a: &mut Assignment, out: &mut Vec<Assignment>) {
    if i == c.generators.len() {
        out.push(a.clone());
        return;
    }
    let g = &c.generators[i];
    for f in d.hom(a.objects[g.src], a.objects[g.tgt]) {
        a.generators[i] = f;
        if relations_hold(c, d, a, &ready[i + 1]) {
            assign_generators(c, d, ready, i + 1, a, out);
        }
    }
}

fn relations_hold(c: &FpCategory, d: &FiniteCategory, a: &Assignment, rels: &[usize]) -> bool {
    rels.iter().all(|&r| {
        let (p, q) = &c.relations[r];
        evaluate(c, d, a, p) == evaluate(c, d, a, q)
    })
}

/// Strings of `n` composable arrows, acted on by composing blocks.
struct NerveSource<'a> {
    d: &'a FiniteCategory,
}

impl LevelSource<1> for NerveSource<'_> {
    /// Objects `x_0..x_n` and arrows `x_{i-1} -> x_i`.
    type Elem = (Vec<usize>, Vec<usize>);

    fn elements(&self, level: Level<1>) -> Result<Vec<Self::Elem>> {
        let n = level[0];
        let mut out: Vec<Self::Elem> = (0..self.d.objects.len()).map(|o| (vec![o], vec![])).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for (objs, arrs) in &out {
                let end = *objs.last().unwrap();
                for f in 0..self.d.len() {
                    if self.d.arrows[f].src == end {
                        let mut o2 = objs.clone();
                        o2.push(self.d.arrows[f].tgt);
                        let mut a2 = arrs.clone();
                        a2.push(f);
                        next.push((o2, a2));
                    }
                }
            }
            out = next;
        }
        Ok(out)
    }

    fn act(&self, e: &Self::Elem, _: Level<1>, _: usize, op: &Monotone) -> Self::Elem {
        let (objs, arrs) = e;
        let vals = op.values();
        let new_objs: Vec<usize> = vals.iter().map(|&v| objs[v as usize]).collect();
        let new_arrs = vals
            .windows(2)
            .map(|w| {
                let (from, to) = (w[0] as usize, w[1] as usize);
                arrs[from..to].iter().fold(self.d.identities[objs[from]], |acc, &f| self.d.then(acc, f).unwrap())
            })
            .collect();
        (new_objs, new_arrs)
    }

    fn label(&self, e: &Self::Elem, _: Level<1>) -> String {
        if e.1.is_empty() {
            self.d.objects[e.0[0]].clone()
        } else {
            e.1.iter().map(|&f| self.d.arrows[f].name.as_str()).collect::<Vec<_>>().join(",")
        }
    }
}

/// The nerve of a finite category, truncated at `max_dim`.
pub fn nerve(d: &FiniteCategory, max_dim: usize) -> Arc<SimplicialSet> {
    let src = NerveSource { d };
    let built = build(&src, format!("N{}", d.name), [max_dim]).expect("nerve levels are finite");
    built.set
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::shapes::simplex;

    #[test]
    fn example_categories_satisfy_laws() {
        for c in probes() {
            assert!(c.law_violation().is_none(), "{}", c.name);
        }
        assert_eq!(poset(1).product(&poset(1)).len(), 9);
        assert!(!parallel_pair().is_thin());
    }

    #[test]
    fn nerve_of_poset_is_simplex() {
        for n in 0..4 {
            assert!(is_isomorphic(&nerve(&poset(n), n + 1), &simplex(n)));
        }
        assert_eq!(nerve(&discrete(2), 5).len(), 2);
    }

    #[test]
    fn groupoid_nerve_counts() {
        // Non-identity strings: 2 vertices, then 2 * 1^(n-1) strings of length n.
        let x = nerve(&iso_groupoid(), 3);
        assert_eq!(x.cell_counts().values().copied().collect::<Vec<_>>(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn functor_counts() {
        let c = poset(1).presentation();
        assert_eq!(functors_to(&c, &poset(1)).len(), 3);
        let free = FpCategory::new("N", vec!["*".into()], vec![Arrow { name: "t".into(), src: 0, tgt: 0 }], vec![]).unwrap();
        assert_eq!(functors_to(&free, &cyclic(2)).len(), 2);
        assert_eq!(functors_to(&free, &terminal()).len(), 1);
    }

    #[test]
    fn presentation_realizes_back() {
        for c in probes() {
            let r = c.presentation().realize(1000).unwrap();
            assert_eq!(r.category.len(), c.len(), "{}", c.name);
        }
    }

    #[test]
    fn invertibility() {
        let z2 = cyclic(2).presentation();
        assert_eq!(z2.is_invertible(&z2.generator_path(0)), Some(true));
        let p = poset(2).presentation();
        assert_eq!(p.is_invertible(&p.generator_path(0)), Some(false));
        let free = FpCategory::new("N", vec!["*".into()], vec![Arrow { name: "t".into(), src: 0, tgt: 0 }], vec![]).unwrap();
        assert_eq!(free.is_invertible(&free.generator_path(0)), Some(false));
        let grp = free.with_formal_inverses();
        assert_eq!(grp.is_invertible(&grp.generator_path(0)), Some(true));
    }

    #[test]
    fn functor_predicates() {
        let j = Arc::new(iso_groupoid());
        let one = Arc::new(terminal());
        let pt_in = Functor::new(&one, &j, vec![0], vec![0]).unwrap();
        assert!(pt_in.is_equivalence());
        assert!(!pt_in.is_quasi_fibration());
        let id = Functor::identity(&j);
        assert!(id.is_equivalence() && id.is_quasi_fibration());
        let to_one = Functor::new(&j, &one, vec![0, 0], vec![0; 4]).unwrap();
        assert!(to_one.is_quasi_fibration());
    }

    #[test]
    fn json_round_trip() {
        let c = parallel_pair();
        let back = FiniteCategory::from_value(&c.to_value()).unwrap();
        assert_eq!(back.len(), c.len());
        let p = cyclic(3).presentation();
        let q = FpCategory::from_value(&p.to_value()).unwrap();
        assert_eq!(q.relations, p.relations);
    }
}
