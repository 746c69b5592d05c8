//! Presentation-only ball oracle.
//!
//! Computes the ball of radius r directly from the presentation by
//! breadth-first closure of relator rewritings over raw (unreduced) words:
//! moves are deletion/insertion of adjacent cancelling pairs and relator
//! replacements in both directions (including the inverted relator pair).
//! Two seed words of length <= r land in the same class iff they are
//! connected within the length and node budgets. Used only in tests to
//! cross-check the backends; budgets are generous but explicit.

use crate::presentation::{FreeWord, GroupPresentation};
use crate::word::WordError;
use std::collections::{HashMap, VecDeque};

#[derive(Debug, Clone)]
pub struct OracleBall {
    /// One entry per group element: lex-least shortest seed word and the
    /// word length (minimum seed length in the class).
    pub elements: Vec<(FreeWord, usize)>,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    /// Words longer than this are not explored.
    pub max_len_extra: usize,
    pub max_nodes: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_len_extra: 5, max_nodes: 4_000_000 }
    }
}

type Letters = Vec<(u16, i8)>;

pub fn bfs_oracle(
    p: &GroupPresentation,
    r: usize,
    budget: OracleBudget,
) -> Result<OracleBall, WordError> {
    let sym = p.symmetric_index();
    let alphabet = &sym.letters;
    let involutive = |g: u16| p.generators[g as usize].involutive;

    // Relator pairs closed under inversion and cyclic rotation: for the
    // combined relator word R = w1 w2^-1, every split of every rotation of
    // R and R^-1 yields a balanced replacement pair.
    let mut pairs: Vec<(Letters, Letters)> = Vec::new();
    for (a, b) in &p.relators {
        let combined = crate::presentation::free_reduce(
            &a.concat(&b.inverse(&p.generators)),
            &p.generators,
        );
        let r: Letters = combined.letters().to_vec();
        if r.is_empty() {
            continue;
        }
        let invert = |w: &[(u16, i8)]| -> Letters {
            w.iter()
                .rev()
                .map(|&(g, e)| if involutive(g) { (g, 1) } else { (g, -e) })
                .collect()
        };
        for word in [r.clone(), invert(&r)] {
            for rot in 0..word.len() {
                let mut rotated = word[rot..].to_vec();
                rotated.extend_from_slice(&word[..rot]);
                for k in 0..=rotated.len() {
                    let lhs = rotated[..k].to_vec();
                    let rhs = invert(&rotated[k..]);
                    if lhs != rhs {
                        pairs.push((lhs, rhs));
                    }
                }
            }
        }
    }
    pairs.sort();
    pairs.dedup();

    let max_len = r + budget.max_len_extra;

    // Enumerate seed words (all raw words of length <= r).
    let mut seeds: Vec<Letters> = vec![Vec::new()];
    let mut layer: Vec<Letters> = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &layer {
            for &(g, e) in alphabet {
                let mut v = w.clone();
                v.push((g, e));
                next.push(v);
            }
        }
        seeds.extend(next.iter().cloned());
        layer = next;
    }

    // class id per visited word
    let mut class_of: HashMap<Letters, usize> = HashMap::new();
    let mut class_best: Vec<(usize, Letters)> = Vec::new();
    let mut nodes = 0usize;

    for seed in &seeds {
        if class_of.contains_key(seed) {
            let id = class_of[seed];
            note_seed(&mut class_best, id, seed);
            continue;
        }
        let id = class_best.len();
        class_best.push((usize::MAX, Vec::new()));
        let mut queue = VecDeque::new();
        class_of.insert(seed.clone(), id);
        queue.push_back(seed.clone());
        note_seed_if_short(&mut class_best, id, seed, r);
        while let Some(w) = queue.pop_front() {
            nodes += 1;
            if nodes > budget.max_nodes {
                return Err(WordError::BudgetExceeded(format!(
                    "oracle node budget {} exceeded",
                    budget.max_nodes
                )));
            }
            let push = |v: Letters,
                            class_of: &mut HashMap<Letters, usize>,
                            queue: &mut VecDeque<Letters>,
                            class_best: &mut Vec<(usize, Letters)>| {
                if v.len() <= max_len && !class_of.contains_key(&v) {
                    note_seed_if_short(class_best, id, &v, r);
                    class_of.insert(v.clone(), id);
                    queue.push_back(v);
                }
            };
            // deletions of adjacent cancelling pairs
            for i in 0..w.len().saturating_sub(1) {
                let ((g, e), (h, f)) = (w[i], w[i + 1]);
                let cancels = g == h
                    && if involutive(g) { true } else { e == -f };
                if cancels {
                    let mut v = w.clone();
                    v.drain(i..i + 2);
                    push(v, &mut class_of, &mut queue, &mut class_best);
                }
            }
            // insertions of cancelling pairs
            if w.len() + 2 <= max_len {
                for i in 0..=w.len() {
                    for &(g, e) in alphabet {
                        let partner = if involutive(g) { (g, 1) } else { (g, -e) };
                        let mut v = w.clone();
                        v.insert(i, partner);
                        v.insert(i, (g, e));
                        push(v, &mut class_of, &mut queue, &mut class_best);
                    }
                }
            }
            // relator replacements, both directions
            for (l, rr) in &pairs {
                for (from, to) in [(l, rr), (rr, l)] {
                    if from.len() > w.len() {
                        continue;
                    }
                    if w.len() - from.len() + to.len() > max_len {
                        continue;
                    }
                    for s in 0..=w.len() - from.len() {
                        if &w[s..s + from.len()] == from.as_slice() {
                            let mut v = w[..s].to_vec();
                            v.extend_from_slice(to);
                            v.extend_from_slice(&w[s + from.len()..]);
                            push(v, &mut class_of, &mut queue, &mut class_best);
                        }
                    }
                }
            }
        }
    }

    let mut elements: Vec<(FreeWord, usize)> = class_best
        .into_iter()
        .filter(|(len, _)| *len != usize::MAX)
        .map(|(len, w)| (FreeWord::from_letters(w), len))
        .collect();
    elements.sort();
    elements.dedup();
    Ok(OracleBall { elements })
}

fn note_seed(best: &mut [(usize, Letters)], id: usize, w: &Letters) {
    let entry = &mut best[id];
    if w.len() < entry.0 || (w.len() == entry.0 && *w < entry.1) {
        *entry = (w.len(), w.clone());
    }
}

fn note_seed_if_short(best: &mut [(usize, Letters)], id: usize, w: &Letters, r: usize) {
    if w.len() <= r {
        note_seed(best, id, w);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::word::Backend;
    use std::collections::BTreeMap;

    fn check_against_backend(src: &str, r: usize) {
        let p = parse_presentation(src).unwrap();
        let b = Backend::new(&p).unwrap();
        let oracle = bfs_oracle(&p, r, OracleBudget::default()).unwrap();
        let ball = b.ball(r, 6).unwrap();
        // map oracle classes through the backend; sets and lengths must agree
        let mut from_oracle = BTreeMap::new();
        for (w, len) in &oracle.elements {
            let nf = b.normal_form(w);
            assert!(
                from_oracle.insert(nf, *len).is_none(),
                "oracle produced duplicate element for {src}"
            );
        }
        let from_backend: BTreeMap<_, _> = ball.into_iter().collect();
        assert_eq!(from_oracle, from_backend, "ball mismatch for {src} at r={r}");
    }

    #[test]
    fn oracle_matches_braid_ball() {
        check_against_backend(
            "group b4\ngenerators a b c\nrelations a c = c a, a b a = b a b, c b c = b c b\nbackend braid(4)\n",
            2,
        );
    }

    #[test]
    fn oracle_matches_z9z3_ball() {
        check_against_backend(
            "group z9z3\ngenerators g h\nrelations g^9 = 1, h^3 = 1, h^-1 g h = g^4\nbackend semidirect(9,3,4)\n",
            3,
        );
    }

    #[test]
    fn oracle_finds_all_27_elements_of_z9z3() {
        let p = parse_presentation(
            "group z9z3\ngenerators g h\nrelations g^9 = 1, h^3 = 1, h^-1 g h = g^4\nbackend semidirect(9,3,4)\n",
        )
        .unwrap();
        // the group has diameter 4, so the radius-4 ball is everything
        let oracle = bfs_oracle(&p, 4, OracleBudget { max_len_extra: 5, max_nodes: 6_000_000 })
            .unwrap();
        let b = Backend::new(&p).unwrap();
        let mut set = std::collections::BTreeSet::new();
        for (w, _) in &oracle.elements {
            set.insert(b.normal_form(w));
        }
        assert_eq!(set.len(), 27);
        assert_eq!(oracle.elements.len(), 27);
    }

    #[test]
    fn free_group_ball_has_no_collapse() {
        let p = parse_presentation("group f2\ngenerators a b\nbackend rewriting{}\n").unwrap();
        let oracle = bfs_oracle(&p, 2, OracleBudget::default()).unwrap();
        assert_eq!(oracle.elements.len(), 17);
    }
}
