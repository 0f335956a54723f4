//! Knuth–Bendix completion for path rewriting in finitely presented categories.
//!
//! Words are sequences of generator indices in diagrammatic order. Rules are
//! oriented by shortlex, so every rule strictly decreases a word and
//! normalization terminates. Completion is budgeted; an incomplete system
//! still rewrites soundly, it just may fail to identify equal words.

use std::collections::VecDeque;

pub type Word = Vec<usize>;

#[derive(Clone, Debug)]
pub struct Rewriting {
    pub rules: Vec<(Word, Word)>,
    /// All critical pairs resolved: normal forms decide equality.
    pub complete: bool,
}

pub const DEFAULT_COMPLETION_BUDGET: usize = 10_000;

fn shortlex_greater(a: &Word, b: &Word) -> bool {
    (a.len(), a) > (b.len(), b)
}

fn find(hay: &[usize], needle: &[usize]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

impl Rewriting {
    pub fn normalize(&self, w: &[usize]) -> Word {
        let mut w = w.to_vec();
        'outer: loop {
            for (l, r) in &self.rules {
                if let Some(i) = find(&w, l) {
                    w.splice(i..i + l.len(), r.iter().copied());
                    continue 'outer;
                }
            }
            return w;
        }
    }

    pub fn is_reducible(&self, w: &[usize]) -> bool {
        self.rules.iter().any(|(l, _)| find(w, l).is_some())
    }

    /// Whether some nonempty word rewrites to the empty word.
    pub fn collapses_to_identity(&self) -> bool {
        self.rules.iter().any(|(_, r)| r.is_empty())
    }

    pub fn complete(relations: &[(Word, Word)], budget: usize) -> Rewriting {
        let mut rw = Rewriting { rules: Vec::new(), complete: false };
        let mut pending: VecDeque<(Word, Word)> = relations.iter().cloned().collect();
        let mut work = 0usize;
        while let Some((a, b)) = pending.pop_front() {
            work += 1;
            if work > budget {
                return rw;
            }
            let (a, b) = (rw.normalize(&a), rw.normalize(&b));
            if a == b {
                continue;
            }
            let (l, r) = if shortlex_greater(&a, &b) { (a, b) } else { (b, a) };
            // Interreduce: rules whose left side the new rule reduces go back
            // to the queue; right sides are renormalized below.
            let mut kept = Vec::with_capacity(rw.rules.len());
            for (l2, r2) in rw.rules.drain(..) {
                if find(&l2, &l).is_some() {
                    pending.push_back((l2, r2));
                } else {
                    kept.push((l2, r2));
                }
            }
            rw.rules = kept;
            rw.rules.push((l.clone(), r));
            let snapshot = rw.clone();
            for rule in &mut rw.rules {
                rule.1 = snapshot.normalize(&rule.1);
            }
            for (l2, r2) in rw.rules.clone() {
                for (x, y) in critical_pairs(&l, &rw.normalize(&l), &l2, &r2) {
                    pending.push_back((x, y));
                }
                for (x, y) in critical_pairs(&l2, &r2, &l, &rw.normalize(&l)) {
                    pending.push_back((x, y));
                }
            }
            // The rule for `l` may itself have been renormalized; its own
            // critical pairs use the current right side.
            let r_now = rw.rules.iter().find(|(x, _)| *x == l).map(|(_, y)| y.clone());
            if let Some(r_now) = r_now {
                for (x, y) in critical_pairs(&l, &r_now, &l, &r_now) {
                    pending.push_back((x, y));
                }
            }
        }
        rw.complete = true;
        rw
    }
}

/// Overlaps of `l1 = xy`, `l2 = yz` (y nonempty) and inclusions of `l2` in `l1`.
fn critical_pairs(l1: &Word, r1: &Word, l2: &Word, r2: &Word) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let mut via1 = r1.clone();
            via1.extend_from_slice(&l2[k..]);
            let mut via2 = l1[..l1.len() - k].to_vec();
            via2.extend_from_slice(r2);
            out.push((via1, via2));
        }
    }
    if l2.len() <= l1.len() && l1 != l2 {
        let mut start = 0;
        while start + l2.len() <= l1.len() {
            if l1[start..start + l2.len()] == l2[..] {
                let mut via2 = l1[..start].to_vec();
                via2.extend_from_slice(r2);
                via2.extend_from_slice(&l1[start + l2.len()..]);
                out.push((r1.clone(), via2));
            }
            start += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclic_group() {
        // g^3 = 1
        let rw = Rewriting::complete(&[(vec![0, 0, 0], vec![])], 100);
        assert!(rw.complete);
        assert_eq!(rw.normalize(&[0; 7]), vec![0]);
        assert!(rw.collapses_to_identity());
    }

    #[test]
    fn formal_inverses_cancel() {
        // generators a = 0, a⁻¹ = 1
        let rw = Rewriting::complete(&[(vec![0, 1], vec![]), (vec![1, 0], vec![])], 100);
        assert!(rw.complete);
        assert_eq!(rw.normalize(&[0, 0, 1, 0, 1, 1, 1]), vec![1]);
    }

    #[test]
    fn symmetric_group_has_six_elements() {
        // a² = b² = 1, aba = bab
        let rw = Rewriting::complete(&[(vec![0, 0], vec![]), (vec![1, 1], vec![]), (vec![0, 1, 0], vec![1, 0, 1])], 1000);
        assert!(rw.complete);
        let mut forms = std::collections::HashSet::new();
        for len in 0..6 {
            for code in 0..(1usize << len) {
                let w: Word = (0..len).map(|i| (code >> i) & 1).collect();
                forms.insert(rw.normalize(&w));
            }
        }
        assert_eq!(forms.len(), 6);
    }

    proptest! {
        #[test]
        fn normal_forms_are_irreducible(w in proptest::collection::vec(0usize..2, 0..12)) {
            let rw = Rewriting::complete(&[(vec![0, 0], vec![]), (vec![1, 1, 1], vec![]), (vec![0, 1, 0], vec![1, 1])], 1000);
            let n = rw.normalize(&w);
            prop_assert!(!rw.is_reducible(&n));
            prop_assert_eq!(rw.normalize(&n), n);
        }
    }
}
