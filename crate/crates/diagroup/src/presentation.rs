//! Presentations of diagram groups of complete complexes: the Wirtinger-style
//! presentation on all non-forest negative edges, the minimal presentation on
//! edges with irreducible contexts, bracket words, and the loop diagrams
//! realizing generators as group elements.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complex::{CellId, CellRef, DirectedComplex, EdgeWord};
use crate::diagram::{self, AtomicStep, Diagram};
use crate::rewriting::{self, ReductionView, RewritingError};
use crate::squier::{self, Forest, ForestKind, Limits, SquierError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("{0}")]
    Squier(#[from] SquierError),
    #[error("{0}")]
    Rewriting(#[from] RewritingError),
    #[error("bracket recursion budget exceeded (completeness certificate wrong?)")]
    BracketBudget,
    #[error("`{0}` is a forest edge, not a generator")]
    ForestEdge(String),
    #[error("diagram construction failed: {0}")]
    Diagram(String),
}

/// A negative edge `(u, f, v)` named as a generator; `cell` is the positive
/// id of the negative cell involved.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub u: EdgeWord,
    pub cell: CellId,
    pub v: EdgeWord,
}

impl Triple {
    pub fn display(&self, k: &DirectedComplex) -> String {
        format!(
            "({}, {}^-1, {})",
            k.display_word(&self.u),
            k.cell_name(self.cell),
            k.display_word(&self.v)
        )
    }

    /// The top word of the edge: u · top(f⁻¹) · v.
    pub fn top_word(&self, k: &DirectedComplex) -> EdgeWord {
        let mid = k.top(CellRef::negative(self.cell));
        k.concat_words(&k.concat_words(&self.u, mid), &self.v)
    }

    fn sort_key(&self, k: &DirectedComplex) -> (usize, Vec<String>, u32, usize, Vec<String>) {
        let names = |w: &EdgeWord| -> Vec<String> {
            w.edges().iter().map(|&e| k.edge_name(e).to_string()).collect()
        };
        (self.u.len(), names(&self.u), self.cell.0, self.v.len(), names(&self.v))
    }
}

/// A word over generators; `true` marks an inverted letter.
pub type GroupWord = Vec<(usize, bool)>;

pub fn invert_word(w: &GroupWord) -> GroupWord {
    w.iter().rev().map(|&(g, inv)| (g, !inv)).collect()
}

/// Conjugation x^y = y⁻¹ x y.
pub fn conjugate(x: &GroupWord, y: &GroupWord) -> GroupWord {
    let mut out = invert_word(y);
    out.extend_from_slice(x);
    out.extend_from_slice(y);
    out
}

pub fn free_reduce(w: &GroupWord) -> GroupWord {
    let mut out: GroupWord = Vec::with_capacity(w.len());
    for &(g, inv) in w {
        if out.last() == Some(&(g, !inv)) {
            out.pop();
        } else {
            out.push((g, inv));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: GroupWord,
    pub rhs: GroupWord,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: Vec<Triple>,
    pub names: Vec<String>,
    pub relations: Vec<Relation>,
    /// False when exploration limits may have cut generators or relations.
    pub exhaustive: bool,
}

impl Presentation {
    fn generator_index(&mut self, t: &Triple) -> usize {
        match self.generators.iter().position(|g| g == t) {
            Some(i) => i,
            None => {
                // A bracket letter outside the enumerated family; appended so
                // the output stays well formed under truncation.
                self.generators.push(t.clone());
                self.names.push(format!("x{}", self.names.len()));
                self.exhaustive = false;
                self.generators.len() - 1
            }
        }
    }

    pub fn display_group_word(&self, w: &GroupWord) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        // Recognize conjugate shape y^-1 x y for readable output.
        let n = w.len();
        let mut k = 0;
        while 2 * k < n && w[k] == { let (g, inv) = w[n - 1 - k]; (g, !inv) } {
            k += 1;
        }
        if k > 0 && 2 * k < n {
            let inner: GroupWord = w[k..n - k].to_vec();
            let conj: GroupWord = w[n - k..].to_vec();
            return format!(
                "{}^({})",
                self.display_group_word(&inner),
                self.display_group_word(&conj)
            );
        }
        w.iter()
            .map(|&(g, inv)| {
                if inv {
                    format!("{}^-1", self.names[g])
                } else {
                    self.names[g].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn display(&self, k: &DirectedComplex) -> String {
        let mut out = String::new();
        if !self.exhaustive {
            out.push_str("# truncated: exploration limits reached; the family continues\n");
        }
        for (i, g) in self.generators.iter().enumerate() {
            out.push_str(&format!("gen {} = {}\n", self.names[i], g.display(k)));
        }
        for r in &self.relations {
            out.push_str(&format!(
                "rel {} = {}\n",
                self.display_group_word(&r.lhs),
                self.display_group_word(&r.rhs)
            ));
        }
        out
    }

    pub fn to_json(&self, k: &DirectedComplex) -> serde_json::Value {
        use serde_json::json;
        let gens: Vec<_> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                json!({
                    "name": self.names[i],
                    "u": k.display_word(&g.u),
                    "cell": format!("{}^-1", k.cell_name(g.cell)),
                    "v": k.display_word(&g.v),
                })
            })
            .collect();
        let word = |w: &GroupWord| -> Vec<serde_json::Value> {
            w.iter()
                .map(|&(g, inv)| {
                    serde_json::json!({"gen": self.names[g], "inverse": inv})
                })
                .collect()
        };
        let rels: Vec<_> = self
            .relations
            .iter()
            .map(|r| json!({"lhs": word(&r.lhs), "rhs": word(&r.rhs)}))
            .collect();
        json!({
            "exhaustive": self.exhaustive,
            "generators": gens,
            "relations": rels,
        })
    }
}

/// The bracket word [u, f, v]: the value of a negative edge in the minimal
/// generating set, by Noetherian induction on the rewriting order and the
/// proper-suffix order of v.
#[allow(clippy::too_many_arguments)]
pub fn bracket_word(
    k: &DirectedComplex,
    view: &ReductionView,
    tl: &Forest,
    tr: &Forest,
    u: &EdgeWord,
    cell: CellId,
    v: &EdgeWord,
    budget: usize,
) -> Result<Vec<(Triple, bool)>, PresentationError> {
    if budget == 0 {
        return Err(PresentationError::BracketBudget);
    }
    let u_bar = view.irr(u, rewriting::DEFAULT_BUDGET)?;
    if u_bar != *u {
        return bracket_word(k, view, tl, tr, &u_bar, cell, v, budget - 1);
    }
    if tl.contains(k, view, u, cell) {
        return Ok(Vec::new());
    }
    let v_bar = view.irr(v, rewriting::DEFAULT_BUDGET)?;
    if v_bar == *v {
        return Ok(vec![(Triple { u: u.clone(), cell, v: v.clone() }, false)]);
    }
    // v reducible: rewrite through the right-forest edge assigned to v.
    let (p, g, q) = tr
        .assigned(k, view, v)
        .ok_or_else(|| PresentationError::ForestEdge(k.display_word(v)))?;
    // v = p · redex(g) · q with q irreducible.
    let inner_v = k.concat_words(&k.concat_words(&p, k.bottom(CellRef::positive(g))), &q);
    let inner = bracket_word(k, view, tl, tr, u, cell, &inner_v, budget - 1)?;
    let conj_u = {
        let mid = k.top(CellRef::negative(cell));
        let w = k.concat_words(&k.concat_words(u, mid), &p);
        view.irr(&w, rewriting::DEFAULT_BUDGET)?
    };
    let conj = bracket_word(k, view, tl, tr, &conj_u, g, &q, budget - 1)?;
    // inner ^ conj
    let mut out: Vec<(Triple, bool)> =
        conj.iter().rev().map(|(t, i)| (t.clone(), !i)).collect();
    out.extend(inner);
    out.extend(conj);
    Ok(out)
}

const BRACKET_BUDGET: usize = 10_000;

fn completeness_forests(
    k: &DirectedComplex,
) -> Result<(Forest, Forest), PresentationError> {
    Ok((Forest::derive(k, ForestKind::Left)?, Forest::derive(k, ForestKind::Right)?))
}

/// All decompositions `w = prefix · top(f⁻¹) · suffix` over negative cells.
fn edge_decompositions(k: &DirectedComplex, w: &EdgeWord) -> Vec<(EdgeWord, CellId, EdgeWord)> {
    let mut out = Vec::new();
    for start in 0..=w.len() {
        for c in k.cell_ids() {
            let pat = k.top(CellRef::negative(c));
            if start + pat.len() <= w.len() && k.word_matches_at(w, start, pat) {
                out.push((
                    k.subword(w, 0, start),
                    c,
                    k.subword(w, start + pat.len(), w.len()),
                ));
            }
        }
    }
    out
}

/// The Wirtinger-style presentation: generators are all negative edges of
/// the explored component outside the left forest; relations relate, for
/// every square of independent steps, the two parallel edges via the
/// tree-conjugator.
pub fn wirtinger_presentation(
    k: &DirectedComplex,
    w: &EdgeWord,
    limits: Limits,
) -> Result<Presentation, PresentationError> {
    let (tl, _) = completeness_forests(k)?;
    let view = ReductionView::new(k);
    let comp = squier::component(k, w, limits)?;
    let mut exhaustive = comp.exhaustive;

    // Generators: negative edges (u, f, v) with both endpoints explored.
    let mut triples: Vec<Triple> = Vec::new();
    for v_word in &comp.vertices {
        for (u, cell, rest) in edge_decompositions(k, v_word) {
            let bottom = k.splice(
                v_word,
                u.len(),
                k.top(CellRef::negative(cell)).len(),
                k.bottom(CellRef::negative(cell)),
            );
            if !comp.contains(&bottom) {
                exhaustive = false;
                continue;
            }
            if tl.contains(k, &view, &u, cell) {
                continue;
            }
            triples.push(Triple { u, cell, v: rest });
        }
    }
    triples.sort_by_cached_key(|t| t.sort_key(k));
    triples.dedup();
    let names = (0..triples.len()).map(|i| format!("x{i}")).collect();
    let mut pres =
        Presentation { generators: triples, names, relations: Vec::new(), exhaustive };

    // Relations from squares ε(p)+f1+ε(q)+f2+ε(r); the shared top word of the
    // two (p, f1, ·) edges ranges over explored vertices.
    let mut seen: Vec<(EdgeWord, CellId, EdgeWord, CellId, EdgeWord)> = Vec::new();
    for x in &comp.vertices {
        for (p, f1, rest) in edge_decompositions(k, x) {
            if tl.contains(k, &view, &p, f1) {
                continue;
            }
            for (q, f2, r) in edge_decompositions(k, &rest) {
                // Edge B = (p, f1, q top(f2⁻¹) r) with top word x; edge A has
                // bottom(f2⁻¹) instead. All four corners must be explored.
                let f2neg = CellRef::negative(f2);
                let a_v = k.concat_words(&k.concat_words(&q, k.bottom(f2neg)), &r);
                let b_v = rest.clone();
                let a = Triple { u: p.clone(), cell: f1, v: a_v };
                let b = Triple { u: p.clone(), cell: f1, v: b_v };
                let corners = [
                    a.top_word(k),
                    b.top_word(k),
                    k.splice(
                        &a.top_word(k),
                        p.len(),
                        k.top(CellRef::negative(f1)).len(),
                        k.bottom(CellRef::negative(f1)),
                    ),
                ];
                if corners.iter().any(|c| !comp.contains(c)) {
                    exhaustive = false;
                    continue;
                }
                let key = (p.clone(), f1, q.clone(), f2, r.clone());
                if seen.contains(&key) {
                    continue;
                }
                seen.push(key);
                let lhs_idx = pres.generator_index(&a);
                let rhs_idx = pres.generator_index(&b);
                let conj_u = {
                    let t = k.concat_words(&k.concat_words(&p, k.top(CellRef::negative(f1))), &q);
                    view.irr(&t, rewriting::DEFAULT_BUDGET)?
                };
                let rhs = if tl.contains(k, &view, &conj_u, f2) {
                    vec![(rhs_idx, false)]
                } else {
                    let e = Triple { u: conj_u, cell: f2, v: r.clone() };
                    if !comp.contains(&e.top_word(k)) {
                        exhaustive = false;
                        continue;
                    }
                    let e_idx = pres.generator_index(&e);
                    conjugate(&vec![(rhs_idx, false)], &vec![(e_idx, false)])
                };
                pres.relations.push(Relation { lhs: vec![(lhs_idx, false)], rhs });
            }
        }
    }
    pres.exhaustive = exhaustive && pres.exhaustive;
    Ok(pres)
}

/// The minimal presentation: generators are the essential 1-cubes (both
/// contexts irreducible, edge outside the left forest); one relation per
/// square with irreducible contexts, with both sides expanded to bracket
/// words.
pub fn minimal_presentation(
    k: &DirectedComplex,
    w: &EdgeWord,
    limits: Limits,
) -> Result<Presentation, PresentationError> {
    let (tl, tr) = completeness_forests(k)?;
    let view = ReductionView::new(k);
    let comp = squier::component(k, w, limits)?;
    let exhaustive = !comp.capped && minimal_enumeration_stabilizes(k, limits.max_word_len);

    let mut triples: Vec<Triple> = Vec::new();
    for v_word in &comp.vertices {
        for (u, cell, rest) in edge_decompositions(k, v_word) {
            if view.is_irreducible(&u)
                && view.is_irreducible(&rest)
                && !tl.contains(k, &view, &u, cell)
            {
                triples.push(Triple { u, cell, v: rest });
            }
        }
    }
    triples.sort_by_cached_key(|t| t.sort_key(k));
    triples.dedup();
    let names = (0..triples.len()).map(|i| format!("x{i}")).collect();
    let mut pres =
        Presentation { generators: triples, names, relations: Vec::new(), exhaustive };

    let resolve = |pres: &mut Presentation,
                       word: Vec<(Triple, bool)>|
     -> GroupWord {
        word.into_iter().map(|(t, inv)| (pres.generator_index(&t), inv)).collect()
    };
    let mut seen: Vec<(EdgeWord, CellId, EdgeWord, CellId, EdgeWord)> = Vec::new();
    for x in &comp.vertices {
        for (p, f1, rest) in edge_decompositions(k, x) {
            if !view.is_irreducible(&p) || tl.contains(k, &view, &p, f1) {
                continue;
            }
            for (q, f2, r) in edge_decompositions(k, &rest) {
                if !view.is_irreducible(&q) || !view.is_irreducible(&r) {
                    continue;
                }
                if tr.contains(k, &view, &r, f2) {
                    continue;
                }
                let key = (p.clone(), f1, q.clone(), f2, r.clone());
                if seen.contains(&key) {
                    continue;
                }
                seen.push(key);
                let f2neg = CellRef::negative(f2);
                let lhs_v = k.concat_words(&k.concat_words(&q, k.bottom(f2neg)), &r);
                let rhs_v = k.concat_words(&k.concat_words(&q, k.top(f2neg)), &r);
                let lhs =
                    bracket_word(k, &view, &tl, &tr, &p, f1, &lhs_v, BRACKET_BUDGET)?;
                let mid = bracket_word(k, &view, &tl, &tr, &p, f1, &rhs_v, BRACKET_BUDGET)?;
                let conj_u = {
                    let t = k.concat_words(&k.concat_words(&p, k.top(CellRef::negative(f1))), &q);
                    view.irr(&t, rewriting::DEFAULT_BUDGET)?
                };
                let conj = bracket_word(k, &view, &tl, &tr, &conj_u, f2, &r, BRACKET_BUDGET)?;
                let lhs = resolve(&mut pres, lhs);
                let mid = resolve(&mut pres, mid);
                let conj = resolve(&mut pres, conj);
                pres.relations.push(Relation { lhs, rhs: conjugate(&mid, &conj) });
            }
        }
    }
    Ok(pres)
}

/// Whether the length bound provably covers every generator and relation
/// pattern: no reducing cell may grow words (so homotopic words of bounded
/// length stay connected within that bound), the class semigroup must be
/// finite, and the largest square over irreducible representatives must fit.
fn minimal_enumeration_stabilizes(k: &DirectedComplex, max_word_len: usize) -> bool {
    let grows = k.cell_ids().any(|c| {
        let pos = CellRef::positive(c);
        k.bottom(pos).len() > k.top(pos).len()
    });
    if grows {
        return false;
    }
    let bounds = crate::homology::ClassBounds { max_elements: 512 };
    let semigroup = match crate::homology::ClassSemigroup::build(k, bounds) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let rep_max = semigroup.reps.iter().map(EdgeWord::len).max().unwrap_or(0);
    let side_max = k
        .cell_ids()
        .map(|c| k.top(CellRef::negative(c)).len())
        .max()
        .unwrap_or(0);
    3 * rep_max + 2 * side_max <= max_word_len
}

/// The reduced spherical diagram at the component's irreducible base that
/// realizes a generator: tree path down to the base inverted, the generator
/// step, tree path back.
pub fn generator_diagram(
    k: &DirectedComplex,
    tl: &Forest,
    gen: &Triple,
) -> Result<Diagram, PresentationError> {
    let view = ReductionView::new(k);
    if tl.contains(k, &view, &gen.u, gen.cell) {
        return Err(PresentationError::ForestEdge(gen.display(k)));
    }
    // Descent along assigned forest edges: word -> irreducible root.
    let descend = |from: &EdgeWord| -> Result<Diagram, PresentationError> {
        let mut word = from.clone();
        let mut steps = Vec::new();
        while !view.is_irreducible(&word) {
            let (a, c, _) = tl
                .assigned(k, &view, &word)
                .ok_or_else(|| PresentationError::ForestEdge(k.display_word(&word)))?;
            let offset = a.len();
            let pos = CellRef::positive(c);
            steps.push(AtomicStep { offset, cell: pos });
            word = k.splice(&word, offset, k.top(pos).len(), k.bottom(pos));
            if steps.len() > BRACKET_BUDGET {
                return Err(PresentationError::BracketBudget);
            }
        }
        Diagram::from_steps(k, from.clone(), steps)
            .map_err(|e| PresentationError::Diagram(e.to_string()))
    };
    let x = gen.top_word(k);
    let down_from_x = descend(&x)?;
    let up_to_x = diagram::inverse(k, &down_from_x);
    let gen_step = Diagram::from_steps(
        k,
        x.clone(),
        vec![AtomicStep { offset: gen.u.len(), cell: CellRef::negative(gen.cell) }],
    )
    .map_err(|e| PresentationError::Diagram(e.to_string()))?;
    let y = gen_step.bottom(k);
    let down_from_y = descend(&y)?;
    let loop_diagram = diagram::concat(k, &diagram::concat(k, &up_to_x, &gen_step).unwrap(), &down_from_y)
        .map_err(|e| PresentationError::Diagram(e.to_string()))?;
    Ok(diagram::reduce(k, &loop_diagram))
}

/// Evaluates a group word as a reduced spherical diagram at the base of the
/// generator diagrams.
pub fn evaluate_word(
    k: &DirectedComplex,
    diagrams: &BTreeMap<usize, Diagram>,
    base: &EdgeWord,
    word: &GroupWord,
) -> Result<Diagram, PresentationError> {
    let mut acc = Diagram::trivial(base.clone());
    for &(g, inv) in word {
        let d = diagrams.get(&g).expect("generator diagram present");
        let d = if inv { diagram::inverse(k, d) } else { d.clone() };
        acc = diagram::mult(k, &acc, &d).map_err(|e| PresentationError::Diagram(e.to_string()))?;
    }
    Ok(acc)
}

/// Checks every relation as an equality of reduced diagrams.
pub fn verify_relations(
    k: &DirectedComplex,
    tl: &Forest,
    pres: &Presentation,
) -> Result<(), String> {
    let mut diagrams: BTreeMap<usize, Diagram> = BTreeMap::new();
    let mut base: Option<EdgeWord> = None;
    for (i, g) in pres.generators.iter().enumerate() {
        let d = generator_diagram(k, tl, g).map_err(|e| e.to_string())?;
        if let Some(b) = &base {
            if d.top() != b {
                return Err("generator diagrams live at different bases".into());
            }
        } else {
            base = Some(d.top().clone());
        }
        diagrams.insert(i, d);
    }
    let base = match base {
        Some(b) => b,
        None => return Ok(()),
    };
    for (i, rel) in pres.relations.iter().enumerate() {
        let lhs = evaluate_word(k, &diagrams, &base, &rel.lhs).map_err(|e| e.to_string())?;
        let rhs = evaluate_word(k, &diagrams, &base, &rel.rhs).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!(
                "relation {} fails: {} = {}",
                i,
                pres.display_group_word(&rel.lhs),
                pres.display_group_word(&rel.rhs)
            ));
        }
    }
    Ok(())
}
