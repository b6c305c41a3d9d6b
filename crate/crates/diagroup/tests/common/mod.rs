#![allow(dead_code)]

//! Brute-force oracles, independent of the library's canonicalization and
//! dipole-search strategies: isotopy closures by exhaustive adjacent swaps,
//! reduction residues over all cancellation orders, and small fixtures.

use std::collections::BTreeSet;

use diagroup::complex::{CellRef, DirectedComplex, EdgeWord};
use diagroup::diagram::{AtomicStep, Diagram};

pub fn dunce() -> DirectedComplex {
    DirectedComplex::from_presentation(&["x"], &[("f0", &["x", "x"], &["x"])]).unwrap()
}

pub fn h_n(n: usize) -> DirectedComplex {
    let mut rules: Vec<(String, Vec<&str>, Vec<&str>)> =
        vec![("f0".to_string(), vec!["x", "x"], vec!["x"])];
    for i in 1..=n {
        rules.push((format!("f{i}"), vec!["x"], vec!["x"]));
    }
    let rule_refs: Vec<(&str, &[&str], &[&str])> = rules
        .iter()
        .map(|(name, l, r)| (name.as_str(), l.as_slice(), r.as_slice()))
        .collect();
    DirectedComplex::from_presentation(&["x"], &rule_refs).unwrap()
}

pub fn v_complex() -> DirectedComplex {
    DirectedComplex::from_presentation(&["y"], &[("g", &["y", "y", "y"], &["y", "y"])]).unwrap()
}

pub fn ay_complex() -> DirectedComplex {
    DirectedComplex::from_presentation(
        &["a", "y"],
        &[("f", &["a", "y"], &["a"]), ("g", &["y", "y", "y"], &["y", "y"])],
    )
    .unwrap()
}

/// The sphere chain: a simple path x1 ... xn with one sphere per edge.
pub fn sphere_chain(n: usize) -> DirectedComplex {
    let mut text = String::new();
    for i in 0..=n {
        text.push_str(&format!("vertex v{i}\n"));
    }
    for i in 1..=n {
        text.push_str(&format!("edge x{i}: v{} -> v{i}\n", i - 1));
    }
    for i in 1..=n {
        text.push_str(&format!("cell s{i}: x{i} => x{i}\n"));
    }
    DirectedComplex::parse(&text).unwrap()
}

pub fn xw(k: &DirectedComplex, n: usize) -> EdgeWord {
    let x = k.edge("x").unwrap();
    if n == 0 {
        EdgeWord::empty(k.vertex("*").unwrap())
    } else {
        k.word(vec![x; n]).unwrap()
    }
}

fn top_len(k: &DirectedComplex, c: CellRef) -> usize {
    k.top(c).len()
}

fn bottom_len(k: &DirectedComplex, c: CellRef) -> usize {
    k.bottom(c).len()
}

/// Swaps adjacent independent steps, mirroring the commutation bookkeeping;
/// returns `None` when the steps interact.
pub fn oracle_swap(
    k: &DirectedComplex,
    steps: &[AtomicStep],
    i: usize,
) -> Option<Vec<AtomicStep>> {
    let a = steps[i];
    let b = steps[i + 1];
    let mut out = steps.to_vec();
    if b.offset + top_len(k, b.cell) <= a.offset {
        out[i] = b;
        out[i + 1] = AtomicStep {
            offset: (a.offset as isize + bottom_len(k, b.cell) as isize
                - top_len(k, b.cell) as isize) as usize,
            cell: a.cell,
        };
    } else if b.offset >= a.offset + bottom_len(k, a.cell) {
        out[i] = AtomicStep {
            offset: (b.offset as isize - bottom_len(k, a.cell) as isize
                + top_len(k, a.cell) as isize) as usize,
            cell: b.cell,
        };
        out[i + 1] = a;
    } else {
        return None;
    }
    Some(out)
}

/// The full isotopy class of a step list under adjacent swaps.
pub fn swap_closure(k: &DirectedComplex, d: &Diagram) -> BTreeSet<Vec<AtomicStep>> {
    let mut seen: BTreeSet<Vec<AtomicStep>> = BTreeSet::new();
    let mut queue = vec![d.steps().to_vec()];
    seen.insert(d.steps().to_vec());
    while let Some(cur) = queue.pop() {
        for i in 0..cur.len().saturating_sub(1) {
            if let Some(next) = oracle_swap(k, &cur, i) {
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
    }
    seen
}

/// The lexicographically least representative of the isotopy class, by
/// exhaustive closure.
pub fn closure_min(k: &DirectedComplex, d: &Diagram) -> Vec<AtomicStep> {
    swap_closure(k, d).into_iter().next().expect("closure contains the input")
}

/// All residues of maximal dipole cancellation: for every representative in
/// the closure and every adjacent mutually-inverse equal-offset pair, cancel
/// and recurse. Results are collected as canonical step lists.
pub fn cancellation_residues(k: &DirectedComplex, d: &Diagram) -> BTreeSet<Vec<AtomicStep>> {
    let mut out = BTreeSet::new();
    let mut stack = vec![d.steps().to_vec()];
    let mut visited: BTreeSet<Vec<AtomicStep>> = BTreeSet::new();
    while let Some(steps) = stack.pop() {
        if !visited.insert(steps.clone()) {
            continue;
        }
        let diagram = Diagram::from_steps(k, d.top().clone(), steps.clone()).unwrap();
        let mut cancelled_any = false;
        for rep in swap_closure(k, &diagram) {
            for i in 0..rep.len().saturating_sub(1) {
                if rep[i + 1].cell == rep[i].cell.inverse() && rep[i + 1].offset == rep[i].offset
                {
                    let mut next = rep.clone();
                    next.remove(i + 1);
                    next.remove(i);
                    stack.push(next);
                    cancelled_any = true;
                }
            }
        }
        if !cancelled_any {
            out.insert(closure_min(k, &diagram));
        }
    }
    out
}

/// Every diagram over `k` with the given top, up to the cell and word bounds.
pub fn all_diagrams(
    k: &DirectedComplex,
    top: &EdgeWord,
    max_cells: usize,
    max_word_len: usize,
) -> Vec<Diagram> {
    diagroup::enumerate::two_paths(k, top, max_cells, max_word_len)
}
