//! Bounded exhaustive and pseudo-random enumeration of 2-paths. These back
//! the brute-force oracles in the test suite, the bounded triviality search
//! in cover verification, and the benchmark suite. The exhaustive walks are
//! data-parallel over the first step when the `parallel` feature is on.

use crate::complex::{CellRef, DirectedComplex, EdgeWord};
use crate::diagram::{self, AtomicStep, Diagram};

/// All atomic steps (both signs) applicable to a word, in deterministic
/// order: offset, then cell id, positive before negative.
pub fn applicable_steps(k: &DirectedComplex, w: &EdgeWord) -> Vec<AtomicStep> {
    let mut out = Vec::new();
    for offset in 0..w.len() {
        for c in k.cell_ids() {
            for cref in [CellRef::positive(c), CellRef::negative(c)] {
                if k.word_matches_at(w, offset, k.top(cref)) {
                    out.push(AtomicStep { offset, cell: cref });
                }
            }
        }
    }
    out
}

fn extend(k: &DirectedComplex, w: &EdgeWord, step: AtomicStep) -> EdgeWord {
    k.splice(w, step.offset, k.top(step.cell).len(), k.bottom(step.cell))
}

/// Every 2-path with the given top, at most `max_steps` steps, and all
/// intermediate words within `max_word_len`. Includes the trivial path.
pub fn two_paths(
    k: &DirectedComplex,
    top: &EdgeWord,
    max_steps: usize,
    max_word_len: usize,
) -> Vec<Diagram> {
    fn rec(
        k: &DirectedComplex,
        top: &EdgeWord,
        word: &EdgeWord,
        steps: &mut Vec<AtomicStep>,
        max_steps: usize,
        max_word_len: usize,
        out: &mut Vec<Diagram>,
    ) {
        out.push(
            Diagram::from_steps(k, top.clone(), steps.clone()).expect("steps apply by construction"),
        );
        if steps.len() == max_steps {
            return;
        }
        for step in applicable_steps(k, word) {
            let next = extend(k, word, step);
            if next.len() > max_word_len {
                continue;
            }
            steps.push(step);
            rec(k, top, &next, steps, max_steps, max_word_len, out);
            steps.pop();
        }
    }

    if max_steps == 0 {
        return vec![Diagram::trivial(top.clone())];
    }
    let first: Vec<AtomicStep> = applicable_steps(k, top)
        .into_iter()
        .filter(|s| extend(k, top, *s).len() <= max_word_len)
        .collect();

    let walk_branch = |step: &AtomicStep| -> Vec<Diagram> {
        let mut out = Vec::new();
        let mut steps = vec![*step];
        let next = extend(k, top, *step);
        rec(k, top, &next, &mut steps, max_steps, max_word_len, &mut out);
        out
    };

    #[cfg(feature = "parallel")]
    let branches: Vec<Vec<Diagram>> = {
        use rayon::prelude::*;
        first.par_iter().map(walk_branch).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let branches: Vec<Vec<Diagram>> = first.iter().map(walk_branch).collect();

    let mut out = vec![Diagram::trivial(top.clone())];
    for b in branches {
        out.extend(b);
    }
    out
}

/// All nontrivial reduced spherical diagrams at `w` with at most `max_cells`
/// cells, deduplicated by canonical form. Every reduced diagram with that
/// many cells is itself a 2-path of that many steps, so the walk is
/// exhaustive.
pub fn reduced_spherical(
    k: &DirectedComplex,
    w: &EdgeWord,
    max_cells: usize,
    max_word_len: usize,
) -> Vec<Diagram> {
    let mut out: Vec<Diagram> = Vec::new();
    for d in two_paths(k, w, max_cells, max_word_len) {
        if d.is_trivial() || d.bottom(k) != *w {
            continue;
        }
        let r = diagram::reduce(k, &d);
        if !r.is_trivial() && r.cell_count() <= max_cells && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Small deterministic xorshift generator for reproducible random walks.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// A random 2-path from `top` with up to `n_steps` steps.
pub fn random_two_path(
    k: &DirectedComplex,
    top: &EdgeWord,
    n_steps: usize,
    max_word_len: usize,
    rng: &mut Rng,
) -> Diagram {
    let mut steps = Vec::new();
    let mut word = top.clone();
    for _ in 0..n_steps {
        let candidates: Vec<AtomicStep> = applicable_steps(k, &word)
            .into_iter()
            .filter(|s| extend(k, &word, *s).len() <= max_word_len)
            .collect();
        if candidates.is_empty() {
            break;
        }
        let step = candidates[rng.below(candidates.len())];
        word = extend(k, &word, step);
        steps.push(step);
    }
    Diagram::from_steps(k, top.clone(), steps).expect("steps apply by construction")
}

/// A random spherical diagram at `w` over a complete complex: a random walk
/// closed up through the irreducible form on both ends, then reduced.
pub fn random_spherical(
    k: &DirectedComplex,
    w: &EdgeWord,
    n_steps: usize,
    max_word_len: usize,
    rng: &mut Rng,
) -> Diagram {
    let view = crate::rewriting::ReductionView::new(k);
    let walk = random_two_path(k, w, n_steps, max_word_len, rng);
    let (_, down_from_end) = view
        .irr_with_witness(&walk.bottom(k), crate::rewriting::DEFAULT_BUDGET)
        .expect("complete complex");
    let (_, down_from_w) = view
        .irr_with_witness(w, crate::rewriting::DEFAULT_BUDGET)
        .expect("complete complex");
    let closed = diagram::concat(
        k,
        &diagram::concat(k, &walk, &down_from_end).expect("witness starts at walk bottom"),
        &diagram::inverse(k, &down_from_w),
    )
    .expect("irreducible forms agree on a complete complex");
    diagram::reduce(k, &closed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dunce() -> DirectedComplex {
        DirectedComplex::from_presentation(&["x"], &[("f0", &["x", "x"], &["x"])]).unwrap()
    }

    #[test]
    fn counts_small_walks() {
        let k = dunce();
        let x = k.word_from_names(&["x"]).unwrap();
        // From x with one step only the expansion applies.
        let one = two_paths(&k, &x, 1, 9);
        assert_eq!(one.len(), 2); // trivial + one expansion
        let two = two_paths(&k, &x, 2, 9);
        // trivial, g0; then from x^2: f0@0, g0@0, g0@1.
        assert_eq!(two.len(), 5);
    }

    #[test]
    fn smallest_nontrivial_spherical_at_x_has_four_cells() {
        let k = dunce();
        let x = k.word_from_names(&["x"]).unwrap();
        assert!(reduced_spherical(&k, &x, 3, 8).is_empty());
        let four = reduced_spherical(&k, &x, 4, 8);
        assert!(!four.is_empty());
        assert!(four.iter().all(|d| d.cell_count() == 4));
    }

    #[test]
    fn random_spherical_is_spherical() {
        let k = dunce();
        let x = k.word_from_names(&["x"]).unwrap();
        let mut rng = Rng::new(7);
        for _ in 0..20 {
            let d = random_spherical(&k, &x, 5, 9, &mut rng);
            assert!(d.is_spherical(&k));
            assert_eq!(diagram::reduce(&k, &d), d);
        }
    }
}
