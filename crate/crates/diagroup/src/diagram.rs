//! Diagrams over a directed 2-complex, stored as 2-paths in trace normal
//! form: a top word plus an ordered list of atomic steps. Isotopy is the
//! congruence generated by swapping independent adjacent steps, so equality
//! of diagrams is equality of canonical step lists.

use thiserror::Error;

use crate::complex::{CellRef, ComplexError, DirectedComplex, EdgeWord, Morphism};

/// One replacement of `top(cell)` by `bottom(cell)` at `offset` edges from
/// the left of the current word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomicStep {
    pub offset: usize,
    pub cell: CellRef,
}

#[derive(Debug, Clone, Eq)]
pub struct Diagram {
    top: EdgeWord,
    steps: Vec<AtomicStep>,
    canonical: bool,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top && self.steps == other.steps
    }
}

impl std::hash::Hash for Diagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.top.hash(state);
        self.steps.hash(state);
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("step {index}: cell does not apply at offset {offset}")]
    NotApplicable { index: usize, offset: usize },
    #[error("endpoint mismatch when forming the diagram")]
    EndpointMismatch,
    #[error("bottom of the first diagram differs from the top of the second")]
    WordMismatch,
    #[error("diagram is not spherical")]
    NotSpherical,
    #[error("diagrams have different base words")]
    BaseMismatch,
    #[error("diagram groups at empty base words are not supported")]
    EmptyBase,
    #[error("diagram shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0}")]
    Complex(#[from] ComplexError),
    #[error("line {line}: diagram file syntax error: {msg}")]
    Syntax { line: usize, msg: String },
}

impl Diagram {
    /// The trivial diagram ε(p).
    pub fn trivial(top: EdgeWord) -> Diagram {
        Diagram { top, steps: Vec::new(), canonical: true }
    }

    /// Single-step diagram without applicability checks; internal use where
    /// validity is known by construction.
    pub fn atomic_unchecked(top: EdgeWord, offset: usize, cell: CellRef) -> Diagram {
        Diagram { top, steps: vec![AtomicStep { offset, cell }], canonical: true }
    }

    pub fn from_steps(
        k: &DirectedComplex,
        top: EdgeWord,
        steps: Vec<AtomicStep>,
    ) -> Result<Diagram, DiagramError> {
        let d = Diagram { top, steps, canonical: false };
        d.validate(k)?;
        Ok(d)
    }

    pub fn top(&self) -> &EdgeWord {
        &self.top
    }

    pub fn steps(&self) -> &[AtomicStep] {
        &self.steps
    }

    pub fn cell_count(&self) -> usize {
        self.steps.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// All intermediate words, from the top to the bottom (`cell_count + 1`
    /// entries).
    pub fn words(&self, k: &DirectedComplex) -> Vec<EdgeWord> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut w = self.top.clone();
        out.push(w.clone());
        for step in &self.steps {
            let pat = k.top(step.cell);
            w = k.splice(&w, step.offset, pat.len(), k.bottom(step.cell));
            out.push(w.clone());
        }
        out
    }

    pub fn bottom(&self, k: &DirectedComplex) -> EdgeWord {
        self.words(k).pop().expect("words is non-empty")
    }

    pub fn is_spherical(&self, k: &DirectedComplex) -> bool {
        self.top == self.bottom(k)
    }

    pub fn validate(&self, k: &DirectedComplex) -> Result<(), DiagramError> {
        let mut w = self.top.clone();
        for (index, step) in self.steps.iter().enumerate() {
            let pat = k.top(step.cell);
            if !k.word_matches_at(&w, step.offset, pat) {
                return Err(DiagramError::NotApplicable { index, offset: step.offset });
            }
            w = k.splice(&w, step.offset, pat.len(), k.bottom(step.cell));
        }
        Ok(())
    }
}

/// The atomic 2-path (p, f, q): top `p·top(f)·q`, one step at offset `|p|`.
pub fn atomic(
    k: &DirectedComplex,
    p: &EdgeWord,
    f: CellRef,
    q: &EdgeWord,
) -> Result<Diagram, DiagramError> {
    if k.word_target(p) != k.word_source(k.top(f)) || k.word_target(k.top(f)) != k.word_source(q) {
        return Err(DiagramError::EndpointMismatch);
    }
    let top = k.concat_words(&k.concat_words(p, k.top(f)), q);
    Ok(Diagram { top, steps: vec![AtomicStep { offset: p.len(), cell: f }], canonical: true })
}

fn top_len(k: &DirectedComplex, c: CellRef) -> usize {
    k.top(c).len()
}

fn bottom_len(k: &DirectedComplex, c: CellRef) -> usize {
    k.bottom(c).len()
}

/// Whether adjacent steps `a` then `b` act on disjoint segments, i.e. are
/// independent and may be swapped.
fn independent(k: &DirectedComplex, a: &AtomicStep, b: &AtomicStep) -> bool {
    let bl_a = bottom_len(k, a.cell);
    let tl_b = top_len(k, b.cell);
    b.offset + tl_b <= a.offset || b.offset >= a.offset + bl_a
}

/// Swaps adjacent independent steps `steps[i]` (first) and `steps[i+1]`,
/// recomputing offsets. Caller guarantees independence.
fn swap_adjacent(k: &DirectedComplex, steps: &mut [AtomicStep], i: usize) {
    let a = steps[i];
    let b = steps[i + 1];
    let tl_a = top_len(k, a.cell) as isize;
    let bl_a = bottom_len(k, a.cell) as isize;
    let tl_b = top_len(k, b.cell) as isize;
    let bl_b = bottom_len(k, b.cell) as isize;
    if b.offset + tl_b as usize <= a.offset {
        // b acts strictly left of a: b keeps its offset, a shifts.
        steps[i] = b;
        steps[i + 1] =
            AtomicStep { offset: (a.offset as isize + (bl_b - tl_b)) as usize, cell: a.cell };
    } else {
        // b acts strictly right of a's bottom segment.
        steps[i] =
            AtomicStep { offset: (b.offset as isize - (bl_a - tl_a)) as usize, cell: b.cell };
        steps[i + 1] = a;
    }
}

/// Offset the step at index `j` would have if dragged to the front of the
/// pending list; `None` when some intermediate step blocks it.
fn offset_at_front(k: &DirectedComplex, steps: &[AtomicStep], j: usize) -> Option<usize> {
    let mut off = steps[j].offset as isize;
    let tl_b = top_len(k, steps[j].cell) as isize;
    for i in (0..j).rev() {
        let a = &steps[i];
        let tl_a = top_len(k, a.cell) as isize;
        let bl_a = bottom_len(k, a.cell) as isize;
        if off + tl_b <= a.offset as isize {
            // stays put
        } else if off >= a.offset as isize + bl_a {
            off -= bl_a - tl_a;
        } else {
            return None;
        }
    }
    Some(off as usize)
}

fn drag_to_front(k: &DirectedComplex, steps: &mut [AtomicStep], j: usize) {
    for i in (0..j).rev() {
        swap_adjacent(k, steps, i);
    }
}

/// Trace normal form: repeatedly commit, among the steps commutable to the
/// front, the one with the least `(offset-at-front, cell id, sign)` key.
/// Two diagrams are isotopic iff their canonical forms are identical.
pub fn canonical(k: &DirectedComplex, d: &Diagram) -> Diagram {
    if d.canonical {
        return d.clone();
    }
    let mut pending = d.steps.clone();
    let mut out = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let mut best: Option<(AtomicStep, usize)> = None;
        for j in 0..pending.len() {
            if let Some(off) = offset_at_front(k, &pending, j) {
                let candidate = AtomicStep { offset: off, cell: pending[j].cell };
                match &best {
                    Some((b, _)) if *b <= candidate => {}
                    _ => best = Some((candidate, j)),
                }
            }
        }
        let (_, j) = best.expect("the first pending step is always committable");
        drag_to_front(k, &mut pending, j);
        out.push(pending.remove(0));
    }
    Diagram { top: d.top.clone(), steps: out, canonical: true }
}

/// Concatenation `d1 ∘ d2`: requires `bottom(d1) = top(d2)`.
pub fn concat(k: &DirectedComplex, d1: &Diagram, d2: &Diagram) -> Result<Diagram, DiagramError> {
    if d1.bottom(k) != *d2.top() {
        return Err(DiagramError::WordMismatch);
    }
    let mut steps = d1.steps.clone();
    steps.extend_from_slice(&d2.steps);
    Ok(canonical(k, &Diagram { top: d1.top.clone(), steps, canonical: false }))
}

/// Sum `d1 + d2`: places the diagrams side by side.
pub fn sum(k: &DirectedComplex, d1: &Diagram, d2: &Diagram) -> Result<Diagram, DiagramError> {
    if k.word_target(d1.top()) != k.word_source(d2.top()) {
        return Err(DiagramError::EndpointMismatch);
    }
    let top = k.concat_words(d1.top(), d2.top());
    let shift = d1.bottom(k).len();
    let mut steps = d1.steps.clone();
    steps.extend(
        d2.steps.iter().map(|s| AtomicStep { offset: s.offset + shift, cell: s.cell }),
    );
    Ok(canonical(k, &Diagram { top, steps, canonical: false }))
}

/// Mirror image: steps reversed with signs negated; offsets carry over.
pub fn inverse(k: &DirectedComplex, d: &Diagram) -> Diagram {
    let top = d.bottom(k);
    let steps: Vec<AtomicStep> = d
        .steps
        .iter()
        .rev()
        .map(|s| AtomicStep { offset: s.offset, cell: s.cell.inverse() })
        .collect();
    canonical(k, &Diagram { top, steps, canonical: false })
}

/// Removes dipoles until none remain, yielding the unique reduced diagram of
/// the equivalence class. A dipole is a pair of mutually inverse steps where
/// the later one commutes leftward until adjacent to the former at equal
/// offset.
pub fn reduce(k: &DirectedComplex, d: &Diagram) -> Diagram {
    let mut steps = d.steps.clone();
    'search: loop {
        for i in 0..steps.len() {
            for j in (i + 1)..steps.len() {
                if steps[j].cell != steps[i].cell.inverse() {
                    continue;
                }
                let mut work = steps.clone();
                let mut pos = j;
                let mut blocked = false;
                while pos > i + 1 {
                    if independent(k, &work[pos - 1], &work[pos]) {
                        swap_adjacent(k, &mut work, pos - 1);
                        pos -= 1;
                    } else {
                        blocked = true;
                        break;
                    }
                }
                if !blocked && work[i].offset == work[i + 1].offset {
                    work.remove(i + 1);
                    work.remove(i);
                    steps = work;
                    continue 'search;
                }
            }
        }
        break;
    }
    canonical(k, &Diagram { top: d.top.clone(), steps, canonical: false })
}

/// Group operation of D(K, w): concatenation followed by reduction.
pub fn mult(k: &DirectedComplex, d1: &Diagram, d2: &Diagram) -> Result<Diagram, DiagramError> {
    if d1.top().is_empty() {
        return Err(DiagramError::EmptyBase);
    }
    if !d1.is_spherical(k) || !d2.is_spherical(k) {
        return Err(DiagramError::NotSpherical);
    }
    if d1.top() != d2.top() {
        return Err(DiagramError::BaseMismatch);
    }
    Ok(reduce(k, &concat(k, d1, d2)?))
}

/// Conjugation by a (w, v)-diagram `g`: the isomorphism D(K, w) → D(K, v).
pub fn transport(k: &DirectedComplex, d: &Diagram, g: &Diagram) -> Result<Diagram, DiagramError> {
    if d.top().is_empty() {
        return Err(DiagramError::EmptyBase);
    }
    if !d.is_spherical(k) {
        return Err(DiagramError::NotSpherical);
    }
    if d.top() != g.top() {
        return Err(DiagramError::ShapeMismatch(
            "transport needs a (w, v)-diagram with w = base of d".into(),
        ));
    }
    let g_inv = inverse(k, g);
    let t = concat(k, &concat(k, &g_inv, d)?, g)?;
    Ok(reduce(k, &t))
}

/// Applies a morphism to a diagram: edges of every word are replaced by
/// their image words and every step's cell by the image diagram (or its
/// inverse), spliced at the translated offset. Canonicalized, not reduced.
pub fn substitute(
    src: &DirectedComplex,
    dst: &DirectedComplex,
    d: &Diagram,
    m: &Morphism,
) -> Result<Diagram, DiagramError> {
    let words = d.words(src);
    let top = m.map_word(dst, &words[0]);
    let mut steps: Vec<AtomicStep> = Vec::new();
    for (i, step) in d.steps.iter().enumerate() {
        let w = &words[i];
        let translated: usize =
            w.edges()[..step.offset].iter().map(|&e| m.edge_map[e.0 as usize].len()).sum();
        let image = &m.cell_map[step.cell.cell.0 as usize];
        let image = if step.cell.negative { inverse(dst, image) } else { image.clone() };
        steps.extend(
            image
                .steps
                .iter()
                .map(|s| AtomicStep { offset: s.offset + translated, cell: s.cell }),
        );
    }
    let out = Diagram { top, steps, canonical: false };
    out.validate(dst)?;
    Ok(canonical(dst, &out))
}

/// Serializes a diagram in the line-based file format.
pub fn serialize(k: &DirectedComplex, d: &Diagram) -> String {
    let mut out = String::new();
    out.push_str("top:");
    for &e in d.top().edges() {
        out.push(' ');
        out.push_str(k.edge_name(e));
    }
    out.push('\n');
    out.push_str("steps:");
    for s in &d.steps {
        out.push_str(&format!(" ({}, {})", s.offset, k.display_cell_ref(s.cell)));
    }
    out.push('\n');
    out
}

/// Parses the diagram file format; canonical status is recomputed, never
/// trusted.
pub fn parse(k: &DirectedComplex, text: &str) -> Result<Diagram, DiagramError> {
    let mut top: Option<EdgeWord> = None;
    let mut steps: Vec<AtomicStep> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => raw[..i].trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("top:") {
            let names: Vec<&str> = rest.split_whitespace().collect();
            if names.is_empty() {
                return Err(DiagramError::Syntax {
                    line: lineno + 1,
                    msg: "empty top word".into(),
                });
            }
            top = Some(k.word_from_names(&names)?);
        } else if let Some(rest) = line.strip_prefix("steps:") {
            for part in rest.split(')').map(str::trim).filter(|p| !p.is_empty()) {
                let part = part.trim_start_matches(',').trim().trim_start_matches('(');
                let mut fields = part.split(',').map(str::trim);
                let offset: usize = fields
                    .next()
                    .and_then(|f| f.parse().ok())
                    .ok_or(DiagramError::Syntax {
                        line: lineno + 1,
                        msg: "expected `(offset, cell)`".into(),
                    })?;
                let cell_tok = fields.next().ok_or(DiagramError::Syntax {
                    line: lineno + 1,
                    msg: "expected `(offset, cell)`".into(),
                })?;
                let cell = parse_cell_ref(k, cell_tok).ok_or(DiagramError::Syntax {
                    line: lineno + 1,
                    msg: format!("unknown cell `{cell_tok}`"),
                })?;
                steps.push(AtomicStep { offset, cell });
            }
        } else {
            return Err(DiagramError::Syntax {
                line: lineno + 1,
                msg: "expected `top:` or `steps:`".into(),
            });
        }
    }
    let top = top.ok_or(DiagramError::Syntax { line: 0, msg: "missing `top:` line".into() })?;
    Diagram::from_steps(k, top, steps)
}

pub fn parse_cell_ref(k: &DirectedComplex, token: &str) -> Option<CellRef> {
    if let Some(name) = token.strip_suffix("^-1") {
        Some(CellRef::negative(k.cell(name.trim())?))
    } else {
        Some(CellRef::positive(k.cell(token.trim())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CellId;

    fn dunce() -> DirectedComplex {
        DirectedComplex::from_presentation(&["x"], &[("f0", &["x", "x"], &["x"])]).unwrap()
    }

    fn xw(k: &DirectedComplex, n: usize) -> EdgeWord {
        let x = k.edge("x").unwrap();
        k.word(vec![x; n]).unwrap()
    }

    fn ew(k: &DirectedComplex) -> EdgeWord {
        EdgeWord::empty(k.vertex("*").unwrap())
    }

    #[test]
    fn atomic_over_dunce() {
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let d = atomic(&k, &ew(&k), f0, &xw(&k, 1)).unwrap();
        assert_eq!(d.top(), &xw(&k, 3));
        assert_eq!(d.bottom(&k), xw(&k, 2));
        assert_eq!(d.cell_count(), 1);
    }

    #[test]
    fn atomic_inverse_swaps_words() {
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let d = atomic(&k, &xw(&k, 1), f0, &xw(&k, 1)).unwrap();
        let inv = inverse(&k, &d);
        assert_eq!(inv.top(), &d.bottom(&k));
        assert_eq!(inv.bottom(&k), *d.top());
        assert_eq!(inv, atomic(&k, &xw(&k, 1), f0.inverse(), &xw(&k, 1)).unwrap());
        assert_eq!(inverse(&k, &inv), d);
    }

    #[test]
    fn applicability_is_checked() {
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        // f0 wants x^2 at offset 1 of the word x^2: out of range.
        let err =
            Diagram::from_steps(&k, xw(&k, 2), vec![AtomicStep { offset: 1, cell: f0 }]);
        assert_eq!(err.unwrap_err(), DiagramError::NotApplicable { index: 0, offset: 1 });
    }

    #[test]
    fn concat_requires_matching_words() {
        let k = dunce();
        let e = Diagram::trivial(xw(&k, 2));
        let e3 = Diagram::trivial(xw(&k, 3));
        assert_eq!(concat(&k, &e, &e3).unwrap_err(), DiagramError::WordMismatch);
        let d = atomic(&k, &ew(&k), CellRef::positive(CellId(0)), &ew(&k)).unwrap();
        assert_eq!(concat(&k, &Diagram::trivial(xw(&k, 2)), &d).unwrap(), d);
    }

    #[test]
    fn figure_three_square_is_commutation_invariant() {
        // Two independent steps over x^4, applied in both orders.
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let order1 = Diagram::from_steps(
            &k,
            xw(&k, 4),
            vec![AtomicStep { offset: 0, cell: f0 }, AtomicStep { offset: 1, cell: f0 }],
        )
        .unwrap();
        let order2 = Diagram::from_steps(
            &k,
            xw(&k, 4),
            vec![AtomicStep { offset: 2, cell: f0 }, AtomicStep { offset: 0, cell: f0 }],
        )
        .unwrap();
        assert_eq!(canonical(&k, &order1), canonical(&k, &order2));
    }

    #[test]
    fn canonical_is_idempotent() {
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let d = Diagram::from_steps(
            &k,
            xw(&k, 4),
            vec![AtomicStep { offset: 2, cell: f0 }, AtomicStep { offset: 0, cell: f0 }],
        )
        .unwrap();
        let c1 = canonical(&k, &d);
        assert_eq!(canonical(&k, &c1), c1);
    }

    #[test]
    fn immediate_dipole_cancels() {
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let pi = atomic(&k, &ew(&k), f0, &ew(&k)).unwrap();
        let pi_inv = inverse(&k, &pi);
        let d = concat(&k, &pi, &pi_inv).unwrap();
        assert_eq!(reduce(&k, &d), Diagram::trivial(xw(&k, 2)));
    }

    #[test]
    fn separated_dipole_cancels() {
        // Dipole pair separated by an independent step still reduces.
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let neg = f0.inverse();
        // x^2 --(0,f0^-1)--> x^3 --(2,f0^-1)--> x^4 --(0,f0)--> x^3
        let d = Diagram::from_steps(
            &k,
            xw(&k, 2),
            vec![
                AtomicStep { offset: 0, cell: neg },
                AtomicStep { offset: 2, cell: neg },
                AtomicStep { offset: 0, cell: f0 },
            ],
        )
        .unwrap();
        let r = reduce(&k, &d);
        assert_eq!(r.cell_count(), 1);
        assert_eq!(r.bottom(&k), xw(&k, 3));
        assert_eq!(reduce(&k, &r), r);
    }

    #[test]
    fn sum_of_trivials() {
        let k = dunce();
        let s = sum(&k, &Diagram::trivial(xw(&k, 1)), &Diagram::trivial(xw(&k, 2))).unwrap();
        assert_eq!(s, Diagram::trivial(xw(&k, 3)));
    }

    #[test]
    fn psi_fixture_is_reduced_and_nontrivial() {
        // ε(x) + Π + Π^{-1} + ε(x) has 2 cells over disjoint segments: no dipole.
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let pi = atomic(&k, &ew(&k), f0, &ew(&k)).unwrap();
        let pi_inv = inverse(&k, &pi);
        let psi = sum(
            &k,
            &sum(&k, &sum(&k, &Diagram::trivial(xw(&k, 1)), &pi).unwrap(), &pi_inv).unwrap(),
            &Diagram::trivial(xw(&k, 1)),
        )
        .unwrap();
        assert_eq!(psi.top(), &xw(&k, 5));
        assert_eq!(psi.cell_count(), 2);
        assert_eq!(reduce(&k, &psi), psi);
        assert!(psi.is_spherical(&k));
    }

    #[test]
    fn mult_with_inverse_is_identity() {
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let neg = f0.inverse();
        let d = Diagram::from_steps(
            &k,
            xw(&k, 1),
            vec![
                AtomicStep { offset: 0, cell: neg },
                AtomicStep { offset: 1, cell: neg },
                AtomicStep { offset: 0, cell: f0 },
                AtomicStep { offset: 0, cell: f0 },
            ],
        )
        .unwrap();
        assert!(d.is_spherical(&k));
        let d_inv = inverse(&k, &d);
        assert_eq!(mult(&k, &d, &d_inv).unwrap(), Diagram::trivial(xw(&k, 1)));
        assert_eq!(mult(&k, &Diagram::trivial(xw(&k, 1)), &d).unwrap(), reduce(&k, &d));
    }

    #[test]
    fn mult_rejects_base_mismatch() {
        let k = dunce();
        let a = Diagram::trivial(xw(&k, 1));
        let b = Diagram::trivial(xw(&k, 2));
        assert_eq!(mult(&k, &a, &b).unwrap_err(), DiagramError::BaseMismatch);
    }

    #[test]
    fn transport_by_trivial_reduces() {
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let d = concat(
            &k,
            &atomic(&k, &ew(&k), f0.inverse(), &ew(&k)).unwrap(),
            &atomic(&k, &ew(&k), f0, &ew(&k)).unwrap(),
        )
        .unwrap();
        let t = transport(&k, &d, &Diagram::trivial(xw(&k, 1))).unwrap();
        assert_eq!(t, reduce(&k, &d));
    }

    #[test]
    fn diagram_file_roundtrip() {
        let k = dunce();
        let f0 = CellRef::positive(k.cell("f0").unwrap());
        let d = Diagram::from_steps(
            &k,
            xw(&k, 2),
            vec![
                AtomicStep { offset: 0, cell: f0.inverse() },
                AtomicStep { offset: 0, cell: f0 },
            ],
        )
        .unwrap();
        let text = serialize(&k, &d);
        let d2 = parse(&k, &text).unwrap();
        assert_eq!(d, d2);
    }
}
