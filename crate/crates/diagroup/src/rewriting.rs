//! The positive rewriting relation of a directed 2-complex: irreducible
//! forms, termination certificates, critical pairs, confluence, and the
//! bounded retract completion.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::complex::{CellId, CellRef, ComplexError, DirectedComplex, EdgeWord};
use crate::diagram::{AtomicStep, Diagram};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewritingError {
    #[error("reduction budget exhausted on `{0}` (possible non-termination)")]
    BudgetExhausted(String),
    #[error("operation requires a Noetherian certificate (got {0})")]
    NotCertified(&'static str),
    #[error("class enumeration exceeded the bound: found {found} classes, max {max}")]
    ClassBoundExceeded { found: usize, max: usize },
    #[error("incomplete enumeration: {0}; output withheld")]
    IncompleteEnumeration(String),
    #[error("{0}")]
    Complex(#[from] ComplexError),
}

/// The reducing alphabet: positive cells whose two sides differ. Cells with
/// equal sides cannot witness a positive rewriting step.
#[derive(Debug, Clone)]
pub struct ReductionView<'a> {
    k: &'a DirectedComplex,
    reducing: Vec<CellId>,
}

impl<'a> ReductionView<'a> {
    pub fn new(k: &'a DirectedComplex) -> Self {
        let reducing = k.cell_ids().filter(|&c| k.is_reducing(c)).collect();
        ReductionView { k, reducing }
    }

    pub fn complex(&self) -> &'a DirectedComplex {
        self.k
    }

    pub fn reducing_cells(&self) -> &[CellId] {
        &self.reducing
    }

    /// Leftmost-innermost redex: least offset, ties by cell id.
    pub fn leftmost_redex(&self, w: &EdgeWord) -> Option<(usize, CellId)> {
        for offset in 0..w.len() {
            for &c in &self.reducing {
                if self.k.word_matches_at(w, offset, self.k.top(CellRef::positive(c))) {
                    return Some((offset, c));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &EdgeWord) -> bool {
        self.leftmost_redex(w).is_none()
    }

    /// Irreducible form by leftmost-innermost reduction, without a witness.
    pub fn irr(&self, w: &EdgeWord, budget: usize) -> Result<EdgeWord, RewritingError> {
        let mut w = w.clone();
        for _ in 0..budget {
            match self.leftmost_redex(&w) {
                None => return Ok(w),
                Some((offset, c)) => {
                    let cref = CellRef::positive(c);
                    w = self.k.splice(&w, offset, self.k.top(cref).len(), self.k.bottom(cref));
                }
            }
        }
        if self.is_irreducible(&w) {
            Ok(w)
        } else {
            Err(RewritingError::BudgetExhausted(self.k.display_word(&w)))
        }
    }

    /// Irreducible form together with the positive-step witness diagram.
    pub fn irr_with_witness(
        &self,
        w: &EdgeWord,
        budget: usize,
    ) -> Result<(EdgeWord, Diagram), RewritingError> {
        let top = w.clone();
        let mut w = w.clone();
        let mut steps = Vec::new();
        loop {
            match self.leftmost_redex(&w) {
                None => break,
                Some((offset, c)) => {
                    let cref = CellRef::positive(c);
                    steps.push(AtomicStep { offset, cell: cref });
                    w = self.k.splice(&w, offset, self.k.top(cref).len(), self.k.bottom(cref));
                }
            }
            if steps.len() > budget {
                return Err(RewritingError::BudgetExhausted(self.k.display_word(&w)));
            }
        }
        let witness = Diagram::from_steps(self.k, top, steps).expect("witness steps apply");
        Ok((w, witness))
    }

    /// All single positive steps from `w` (leftmost first).
    pub fn forward_steps(&self, w: &EdgeWord) -> Vec<EdgeWord> {
        let mut out = Vec::new();
        for offset in 0..w.len() {
            for &c in &self.reducing {
                let cref = CellRef::positive(c);
                if self.k.word_matches_at(w, offset, self.k.top(cref)) {
                    out.push(self.k.splice(w, offset, self.k.top(cref).len(), self.k.bottom(cref)));
                }
            }
        }
        out
    }
}

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Every reducing cell strictly decreases a weighted ShortLex measure;
    /// sufficient for termination.
    Certified { weights: Vec<u64> },
    /// The bounded reduction graph contains a cycle.
    CertifiedNonNoetherian { cycle: Vec<EdgeWord> },
    Unknown,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Certificate::Certified { .. } => "Certified",
            Certificate::CertifiedNonNoetherian { .. } => "CertifiedNonNoetherian",
            Certificate::Unknown => "Unknown",
        }
    }
}

fn word_weight(weights: &[u64], w: &EdgeWord) -> u64 {
    w.edges().iter().map(|&e| weights[e.0 as usize]).sum()
}

fn lex_decreasing(k: &DirectedComplex, top: &EdgeWord, bottom: &EdgeWord) -> bool {
    // Fixed edge order: lexicographic on original edge id strings.
    let kt: Vec<&str> = top.edges().iter().map(|&e| k.edge_name(e)).collect();
    let kb: Vec<&str> = bottom.edges().iter().map(|&e| k.edge_name(e)).collect();
    kt > kb
}

fn weights_certify(k: &DirectedComplex, view: &ReductionView, weights: &[u64]) -> bool {
    view.reducing_cells().iter().all(|&c| {
        let top = k.top(CellRef::positive(c));
        let bottom = k.bottom(CellRef::positive(c));
        let wt = word_weight(weights, top);
        let wb = word_weight(weights, bottom);
        wt > wb || (wt == wb && top.len() == bottom.len() && lex_decreasing(k, top, bottom))
    })
}

const WEIGHT_SEARCH_MAX_EDGES: usize = 6;
const WEIGHT_SEARCH_MAX: u64 = 5;

fn find_weights(k: &DirectedComplex, view: &ReductionView) -> Option<Vec<u64>> {
    let ones = vec![1u64; k.edge_count()];
    if weights_certify(k, view, &ones) {
        return Some(ones);
    }
    let n = k.edge_count();
    if n == 0 || n > WEIGHT_SEARCH_MAX_EDGES {
        return None;
    }
    let mut w = vec![1u64; n];
    loop {
        if weights_certify(k, view, &w) {
            return Some(w);
        }
        // next assignment in lexicographic order
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if w[i] < WEIGHT_SEARCH_MAX {
                w[i] += 1;
                for x in &mut w[..i] {
                    *x = 1;
                }
                break;
            }
            i += 1;
        }
    }
}

/// Termination certificate for the positive rewriting relation, evaluated on
/// the input orientation.
///
/// `Certified` comes from a weighted ShortLex argument. Failing that, a
/// bounded search explores the reduction graph on short words; cells the
/// weight search could not orient (the length-preserving ones) are explored
/// in both directions there, and any cycle yields `CertifiedNonNoetherian`.
pub fn noetherian_certificate(k: &DirectedComplex) -> Certificate {
    let view = ReductionView::new(k);
    noetherian_certificate_with(k, &view, default_cycle_bound(k, &view))
}

fn default_cycle_bound(k: &DirectedComplex, view: &ReductionView) -> usize {
    let longest = view
        .reducing_cells()
        .iter()
        .map(|&c| {
            k.top(CellRef::positive(c)).len().max(k.bottom(CellRef::positive(c)).len())
        })
        .max()
        .unwrap_or(1);
    longest + 2
}

pub fn noetherian_certificate_with(
    k: &DirectedComplex,
    view: &ReductionView,
    max_len: usize,
) -> Certificate {
    if view.reducing_cells().is_empty() {
        return Certificate::Certified { weights: vec![1; k.edge_count()] };
    }
    if let Some(weights) = find_weights(k, view) {
        return Certificate::Certified { weights };
    }
    if let Some(cycle) = find_cycle(k, view, max_len) {
        return Certificate::CertifiedNonNoetherian { cycle };
    }
    Certificate::Unknown
}

/// Successors in the bounded reduction graph: forward for every reducing
/// cell, backward as well for length-preserving ones.
fn cycle_successors(
    k: &DirectedComplex,
    view: &ReductionView,
    w: &EdgeWord,
    max_len: usize,
) -> Vec<EdgeWord> {
    let mut out = Vec::new();
    for &c in view.reducing_cells() {
        let pos = CellRef::positive(c);
        let symmetric = k.top(pos).len() == k.bottom(pos).len();
        let refs: &[CellRef] =
            if symmetric { &[pos, CellRef::negative(c)] } else { &[pos] };
        for &cref in refs {
            let pat = k.top(cref);
            for offset in 0..w.len() {
                if k.word_matches_at(w, offset, pat) {
                    let next = k.splice(w, offset, pat.len(), k.bottom(cref));
                    if next.len() <= max_len && next != *w {
                        out.push(next);
                    }
                }
            }
        }
    }
    out
}

fn find_cycle(
    k: &DirectedComplex,
    view: &ReductionView,
    max_len: usize,
) -> Option<Vec<EdgeWord>> {
    let starts: Vec<EdgeWord> = view
        .reducing_cells()
        .iter()
        .flat_map(|&c| {
            [k.top(CellRef::positive(c)).clone(), k.bottom(CellRef::positive(c)).clone()]
        })
        .filter(|w| w.len() <= max_len)
        .collect();
    let mut visited: HashSet<EdgeWord> = HashSet::new();
    for start in starts {
        if visited.contains(&start) {
            continue;
        }
        // DFS with an explicit stack, tracking the current path.
        let mut path: Vec<EdgeWord> = Vec::new();
        let mut on_path: HashSet<EdgeWord> = HashSet::new();
        let mut stack: Vec<(EdgeWord, usize)> = vec![(start, 0)];
        while let Some((w, child)) = stack.pop() {
            if child == 0 {
                if on_path.contains(&w) {
                    let from = path.iter().position(|p| *p == w).unwrap();
                    let mut cycle = path[from..].to_vec();
                    cycle.push(w);
                    return Some(cycle);
                }
                if visited.contains(&w) {
                    continue;
                }
                visited.insert(w.clone());
                path.push(w.clone());
                on_path.insert(w.clone());
            }
            let succs = cycle_successors(k, view, &w, max_len);
            if child < succs.len() {
                stack.push((w.clone(), child + 1));
                let next = succs[child].clone();
                if on_path.contains(&next) {
                    let from = path.iter().position(|p| *p == next).unwrap();
                    let mut cycle = path[from..].to_vec();
                    cycle.push(next);
                    return Some(cycle);
                }
                if !visited.contains(&next) {
                    stack.push((next, 0));
                }
            } else {
                path.pop();
                on_path.remove(&w);
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PairKind {
    Overlap,
    Containment,
}

/// Two positive atomic steps on a shared top word whose redexes overlap or
/// nest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub kind: PairKind,
    pub word: EdgeWord,
    pub left: AtomicStep,
    pub right: AtomicStep,
    pub results: (EdgeWord, EdgeWord),
}

/// Enumerates all critical pairs over the reducing cells, in a fixed order:
/// outer cell id, inner cell id, then position.
pub fn critical_pairs(k: &DirectedComplex) -> Vec<CriticalPair> {
    let view = ReductionView::new(k);
    let mut out = Vec::new();
    let apply = |w: &EdgeWord, s: &AtomicStep| {
        k.splice(w, s.offset, k.top(s.cell).len(), k.bottom(s.cell))
    };
    for &f1 in view.reducing_cells() {
        let top1 = k.top(CellRef::positive(f1)).clone();
        for &f2 in view.reducing_cells() {
            let top2 = k.top(CellRef::positive(f2)).clone();
            // Overlaps: top1 = p s, top2 = s q with p, q, s all non-empty.
            for pos in 1..top1.len() {
                let s_len = top1.len() - pos;
                if s_len >= top2.len() {
                    continue;
                }
                let suffix = k.subword(&top1, pos, top1.len());
                let prefix = k.subword(&top2, 0, s_len);
                if suffix == prefix {
                    let q = k.subword(&top2, s_len, top2.len());
                    let word = k.concat_words(&k.subword(&top1, 0, pos), &top2);
                    debug_assert_eq!(word, k.concat_words(&top1, &q));
                    let left = AtomicStep { offset: 0, cell: CellRef::positive(f1) };
                    let right = AtomicStep { offset: pos, cell: CellRef::positive(f2) };
                    let results = (apply(&word, &left), apply(&word, &right));
                    out.push(CriticalPair { kind: PairKind::Overlap, word, left, right, results });
                }
            }
            // Containments: top2 a subword of top1, f1 != f2.
            if f1 != f2 && top2.len() <= top1.len() {
                for pos in 0..=(top1.len() - top2.len()) {
                    if k.word_matches_at(&top1, pos, &top2) {
                        let word = top1.clone();
                        let left = AtomicStep { offset: 0, cell: CellRef::positive(f1) };
                        let right = AtomicStep { offset: pos, cell: CellRef::positive(f2) };
                        let results = (apply(&word, &left), apply(&word, &right));
                        out.push(CriticalPair {
                            kind: PairKind::Containment,
                            word,
                            left,
                            right,
                            results,
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Confluence {
    Confluent,
    NotConfluent { pair: CriticalPair, normal_forms: (EdgeWord, EdgeWord) },
}

/// Newman's lemma over the critical pairs: requires a termination
/// certificate, then compares irreducible forms of each pair's results.
pub fn confluence_check(k: &DirectedComplex) -> Result<Confluence, RewritingError> {
    let cert = noetherian_certificate(k);
    if !cert.is_certified() {
        return Err(RewritingError::NotCertified(cert.label()));
    }
    let view = ReductionView::new(k);
    for pair in critical_pairs(k) {
        let nf1 = view.irr(&pair.results.0, DEFAULT_BUDGET)?;
        let nf2 = view.irr(&pair.results.1, DEFAULT_BUDGET)?;
        if nf1 != nf2 {
            return Ok(Confluence::NotConfluent { pair, normal_forms: (nf1, nf2) });
        }
    }
    Ok(Confluence::Confluent)
}

pub fn is_complete(k: &DirectedComplex) -> bool {
    matches!(confluence_check(k), Ok(Confluence::Confluent))
}

/// Irreducible form of `p` together with a positive witness diagram.
/// Requires a certificate or an explicit budget.
pub fn irreducible_form(
    k: &DirectedComplex,
    p: &EdgeWord,
    budget: Option<usize>,
) -> Result<(EdgeWord, Diagram), RewritingError> {
    let view = ReductionView::new(k);
    let budget = match budget {
        Some(b) => b,
        None => {
            if !noetherian_certificate(k).is_certified() {
                return Err(RewritingError::NotCertified("no budget supplied"));
            }
            DEFAULT_BUDGET
        }
    };
    view.irr_with_witness(p, budget)
}

/// All 1-paths of length at most `max_len`, including one empty path per
/// vertex; deterministic order.
pub fn enumerate_words(k: &DirectedComplex, max_len: usize, cap: usize) -> Option<Vec<EdgeWord>> {
    let mut out: Vec<EdgeWord> = Vec::new();
    let mut frontier: Vec<EdgeWord> = Vec::new();
    for v in k.vertex_ids() {
        frontier.push(EdgeWord::empty(v));
    }
    out.extend(frontier.iter().cloned());
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let end = k.word_target(w);
            for e in k.edge_ids() {
                if k.edge_source(e) == end {
                    let mut edges = w.edges().to_vec();
                    edges.push(e);
                    next.push(k.word(edges).expect("extension is composable"));
                }
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > cap {
            return None;
        }
        frontier = next;
    }
    Some(out)
}

/// Bounded retract completion: reorients per ShortLex,
/// then adds one cell per edge and one per composable pair of homotopy
/// classes, each with the ShortLex-least class representative as bottom.
/// The output contains the input (up to orientation) as a subcomplex and is
/// validated to be complete before it is returned.
pub fn complete_by_retract(
    k: &DirectedComplex,
    max_word_len: usize,
    max_classes: usize,
) -> Result<DirectedComplex, RewritingError> {
    // Identifications may route through words slightly longer than the bound
    // (one expansion before a contraction), so the union phase runs on a
    // padded universe while classes are read off the bounded one. The output
    // is re-checked for completeness below, which keeps truncation honest.
    let slack = k
        .cell_ids()
        .map(|c| {
            let pos = CellRef::positive(c);
            k.top(pos).len().max(k.bottom(pos).len())
        })
        .max()
        .unwrap_or(0);
    let words = enumerate_words(k, max_word_len + slack, max_classes.saturating_mul(4000))
        .ok_or(RewritingError::IncompleteEnumeration("word universe too large".into()))?;
    let index: HashMap<EdgeWord, usize> =
        words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

    // Union-find over the bounded word universe.
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, w) in words.iter().enumerate() {
        for cref in k.cell_ids().flat_map(|c| [CellRef::positive(c), CellRef::negative(c)]) {
            let pat = k.top(cref);
            for offset in 0..=w.len().saturating_sub(pat.len()) {
                if k.word_matches_at(w, offset, pat) {
                    let next = k.splice(w, offset, pat.len(), k.bottom(cref));
                    if let Some(&j) = index.get(&next) {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        if a != b {
                            parent[a] = b;
                        }
                    }
                }
            }
        }
    }

    // ShortLex-least representative per class, in deterministic order.
    // Classes are counted over the bounded universe only; the padded words
    // exist purely to witness identifications.
    let mut rep_of_root: HashMap<usize, EdgeWord> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        if w.len() > max_word_len {
            continue;
        }
        let root = find(&mut parent, i);
        match rep_of_root.get(&root) {
            Some(r) if k.shortlex_cmp(r, w) != std::cmp::Ordering::Greater => {}
            _ => {
                rep_of_root.insert(root, w.clone());
            }
        }
    }
    let mut reps: Vec<EdgeWord> = rep_of_root.values().cloned().collect();
    reps.sort_by(|a, b| k.shortlex_cmp(a, b));
    if reps.len() > max_classes {
        return Err(RewritingError::ClassBoundExceeded { found: reps.len(), max: max_classes });
    }
    let class_of = |parent: &mut Vec<usize>, w: &EdgeWord| -> Option<EdgeWord> {
        let i = *index.get(w)?;
        let root = find(parent, i);
        rep_of_root.get(&root).cloned()
    };

    // Reorient original cells: flip when the top is ShortLex-smaller.
    let flips: Vec<CellId> = k
        .cell_ids()
        .filter(|&c| {
            let pos = CellRef::positive(c);
            k.shortlex_cmp(k.top(pos), k.bottom(pos)) == std::cmp::Ordering::Less
        })
        .collect();
    let mut out = k.reorient(&flips);

    // One cell per edge.
    for e in k.edge_ids() {
        let w = k.word(vec![e]).expect("single edge word");
        let rep = class_of(&mut parent, &w)
            .ok_or(RewritingError::IncompleteEnumeration("edge class missing".into()))?;
        let name = out.fresh_cell_name(&format!("~e.{}", k.edge_name(e)));
        out.add_cell(&name, w, rep)?;
    }
    // One cell per composable pair of classes with a non-empty product.
    for (i, u) in reps.iter().enumerate() {
        for (j, v) in reps.iter().enumerate() {
            if k.word_target(u) != k.word_source(v) {
                continue;
            }
            let product = k.concat_words(u, v);
            if product.is_empty() {
                // An empty top would not be a legal 2-cell.
                continue;
            }
            let rep = class_of(&mut parent, &product).ok_or_else(|| {
                RewritingError::IncompleteEnumeration(format!(
                    "class of `{}` not within the word bound",
                    k.display_word(&product)
                ))
            })?;
            let name = out.fresh_cell_name(&format!("~m.{i}.{j}"));
            out.add_cell(&name, product, rep)?;
        }
    }

    if !noetherian_certificate(&out).is_certified() {
        return Err(RewritingError::IncompleteEnumeration(
            "completion output failed the termination certificate".into(),
        ));
    }
    match confluence_check(&out)? {
        Confluence::Confluent => Ok(out),
        Confluence::NotConfluent { pair, .. } => Err(RewritingError::IncompleteEnumeration(
            format!("completion output not confluent at `{}`", out.display_word(&pair.word)),
        )),
    }
}

/// Searches the per-cell orientations of the reducing cells for one that is
/// certified complete. Diagram groups are orientation-independent, so the
/// result presents the same groups as the input. Mask order makes the input
/// orientation the first candidate.
pub fn orient_for_completion(k: &DirectedComplex) -> Option<DirectedComplex> {
    let view = ReductionView::new(k);
    let cells: Vec<CellId> = view.reducing_cells().to_vec();
    if cells.len() > 12 {
        return None;
    }
    for mask in 0u32..(1u32 << cells.len()) {
        let flips: Vec<CellId> = cells
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &c)| c)
            .collect();
        let candidate = k.reorient(&flips);
        if noetherian_certificate(&candidate).is_certified()
            && matches!(confluence_check(&candidate), Ok(Confluence::Confluent))
        {
            return Some(candidate);
        }
    }
    None
}

/// BFS over the reduction graph restricted to `max_len`, used by tests as an
/// oracle for irreducible forms.
pub fn reduction_reachable(
    k: &DirectedComplex,
    w: &EdgeWord,
    max_len: usize,
) -> Vec<EdgeWord> {
    let view = ReductionView::new(k);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.clone());
    queue.push_back(w.clone());
    let mut out = vec![w.clone()];
    while let Some(cur) = queue.pop_front() {
        for next in view.forward_steps(&cur) {
            if next.len() <= max_len && seen.insert(next.clone()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    out
}
