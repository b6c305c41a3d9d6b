//! Level-truncated universal 2-covers: the natural filtration built level by
//! level, unique lifting of diagrams, and bounded verification of the
//! rooted-2-tree and local-bijectivity conditions on the truncation.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{CellRef, ComplexError, DirectedComplex, EdgeId, EdgeWord, VertexId};
use crate::diagram::{self, AtomicStep, Diagram};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("base path must be non-empty")]
    EmptyBase,
    #[error("diagram top does not equal the cover's base path")]
    BaseMismatch,
    #[error("cover level insufficient; level {0} suffices for this diagram")]
    InsufficientLevel(usize),
    #[error("{0}")]
    Complex(#[from] ComplexError),
}

/// A truncation of the universal 2-cover with base path `base_path`.
#[derive(Debug, Clone)]
pub struct CoverComplex {
    pub complex: DirectedComplex,
    pub base: DirectedComplex,
    pub base_path: EdgeWord,
    pub root: EdgeWord,
    pub vertex_labels: Vec<VertexId>,
    pub edge_labels: Vec<EdgeId>,
    pub cell_labels: Vec<CellRef>,
    pub edge_levels: Vec<u32>,
    pub cell_levels: Vec<u32>,
    pub level: u32,
}

impl CoverComplex {
    pub fn label_word(&self, w: &EdgeWord) -> EdgeWord {
        let anchor = self.vertex_labels[self.complex.word_source(w).0 as usize];
        let edges: Vec<EdgeId> =
            w.edges().iter().map(|&e| self.edge_labels[e.0 as usize]).collect();
        if edges.is_empty() {
            EdgeWord::empty(anchor)
        } else {
            self.base.word(edges).expect("labelling is a morphism")
        }
    }

    pub fn label_cell(&self, c: CellRef) -> CellRef {
        let l = self.cell_labels[c.cell.0 as usize];
        if c.negative {
            l.inverse()
        } else {
            l
        }
    }

    /// Cumulative (vertices, edges, positive cells) of the subcomplex up to
    /// each level.
    pub fn level_counts(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for lvl in 0..=self.level {
            let edges = self.edge_levels.iter().filter(|&&l| l <= lvl).count();
            let cells = self.cell_levels.iter().filter(|&&l| l <= lvl).count();
            // Vertices: endpoints of edges up to this level (plus the root
            // arc's vertices which carry level 0 edges already).
            let mut seen = vec![false; self.complex.vertex_count()];
            for e in self.complex.edge_ids() {
                if self.edge_levels[e.0 as usize] <= lvl {
                    seen[self.complex.edge_source(e).0 as usize] = true;
                    seen[self.complex.edge_target(e).0 as usize] = true;
                }
            }
            out.push((seen.iter().filter(|&&b| b).count(), edges, cells));
        }
        out
    }

    /// All 1-paths whose edges have level at most `max_level`, in
    /// deterministic order. Rooted 2-trees have simple 1-paths, so paths
    /// never revisit a vertex.
    pub fn paths_up_to_level(&self, max_level: u32) -> Vec<EdgeWord> {
        let mut out: Vec<EdgeWord> = Vec::new();
        for v in self.complex.vertex_ids() {
            out.push(EdgeWord::empty(v));
        }
        let mut frontier: Vec<EdgeWord> = out.clone();
        let max_steps = self.complex.edge_count();
        for _ in 0..max_steps {
            let mut next = Vec::new();
            for w in &frontier {
                let end = self.complex.word_target(w);
                for e in self.complex.edge_ids() {
                    if self.edge_levels[e.0 as usize] > max_level
                        || self.complex.edge_source(e) != end
                    {
                        continue;
                    }
                    let mut edges = w.edges().to_vec();
                    edges.push(e);
                    next.push(self.complex.word(edges).expect("composable extension"));
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Index of cover cells by (label, top edge sequence), covering both
    /// orientations: the inverse of a stored cell satisfies the demand for
    /// the inverse label over its bottom arc.
    pub fn cell_index(&self) -> HashMap<(CellRef, Vec<EdgeId>), Vec<CellRef>> {
        let mut index: HashMap<(CellRef, Vec<EdgeId>), Vec<CellRef>> = HashMap::new();
        for c in self.complex.cell_ids() {
            let label = self.cell_labels[c.0 as usize];
            let top = self.complex.top(CellRef::positive(c)).edges().to_vec();
            let bottom = self.complex.bottom(CellRef::positive(c)).edges().to_vec();
            index.entry((label, top)).or_default().push(CellRef::positive(c));
            index.entry((label.inverse(), bottom)).or_default().push(CellRef::negative(c));
        }
        index
    }

    /// Serializes the cover: complex lines followed by label and level
    /// annotations.
    pub fn serialize(&self) -> String {
        let mut out = self.complex.serialize();
        for v in self.complex.vertex_ids() {
            out.push_str(&format!(
                "label vertex {} -> {}\n",
                self.complex.vertex_name(v),
                self.base.vertex_name(self.vertex_labels[v.0 as usize])
            ));
        }
        for e in self.complex.edge_ids() {
            out.push_str(&format!(
                "label edge {} -> {}\n",
                self.complex.edge_name(e),
                self.base.edge_name(self.edge_labels[e.0 as usize])
            ));
        }
        for c in self.complex.cell_ids() {
            out.push_str(&format!(
                "label cell {} -> {}\n",
                self.complex.cell_name(c),
                self.base.display_cell_ref(self.cell_labels[c.0 as usize])
            ));
            out.push_str(&format!(
                "level {} {}\n",
                self.complex.cell_name(c),
                self.cell_levels[c.0 as usize]
            ));
        }
        out.push_str(&format!("root {}\n", self.complex.display_word(&self.root)));
        out.push_str(&format!("base {}\n", self.base.display_word(&self.base_path)));
        out
    }

    /// A name-independent signature: cells and arcs renumbered by a
    /// deterministic traversal. Two covers of the same base are label
    /// isomorphic iff their signatures agree.
    pub fn canonical_signature(&self) -> String {
        // Canonical edge numbers, seeded by the root arc, extended as cells
        // are visited in (level, label, canonical top) order.
        let mut edge_no: HashMap<EdgeId, usize> = HashMap::new();
        for &e in self.root.edges() {
            let n = edge_no.len();
            edge_no.insert(e, n);
        }
        let mut remaining: Vec<u32> = (0..self.complex.cell_count() as u32).collect();
        let mut lines: Vec<String> = Vec::new();
        while !remaining.is_empty() {
            // Pick the assigned cell whose top is fully numbered, minimal by
            // (level, label, numbered top).
            let mut best: Option<(u32, String, Vec<usize>, usize)> = None;
            for (pos, &ci) in remaining.iter().enumerate() {
                let c = crate::complex::CellId(ci);
                let top = self.complex.top(CellRef::positive(c));
                let nums: Option<Vec<usize>> =
                    top.edges().iter().map(|e| edge_no.get(e).copied()).collect();
                if let Some(nums) = nums {
                    let key = (
                        self.cell_levels[ci as usize],
                        self.base.display_cell_ref(self.cell_labels[ci as usize]),
                        nums,
                        pos,
                    );
                    match &best {
                        Some(b) if (b.0, &b.1, &b.2) <= (key.0, &key.1, &key.2) => {}
                        _ => best = Some(key),
                    }
                }
            }
            let (lvl, label, tops, pos) = best.expect("rooted construction numbers all tops");
            let ci = remaining.remove(pos);
            let c = crate::complex::CellId(ci);
            let bottom = self.complex.bottom(CellRef::positive(c));
            let mut bottom_nums = Vec::new();
            for &e in bottom.edges() {
                let fresh = edge_no.len();
                let n = *edge_no.entry(e).or_insert(fresh);
                bottom_nums.push(n);
            }
            lines.push(format!("{lvl} {label} {tops:?} {bottom_nums:?}"));
        }
        lines.join("\n")
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Builds the level-`level` truncation of the universal 2-cover with base
/// path `p`. Level 0 is the bare root arc; each next level adds, for every
/// 1-path of the previous subcomplex and every 2-cell of the base (both
/// signs) matching its label, a fresh bottom arc and cell — unless a cell
/// with that label and top already exists (inverses of existing cells
/// count).
pub fn build_cover(
    base: &DirectedComplex,
    p: &EdgeWord,
    level: u32,
    seed: u64,
) -> Result<CoverComplex, CoverError> {
    if p.is_empty() {
        return Err(CoverError::EmptyBase);
    }
    let mut complex = DirectedComplex::new();
    let mut vertex_labels = Vec::new();
    let mut edge_labels = Vec::new();
    let mut edge_levels = Vec::new();

    // Root arc.
    let mut arc_vertices = Vec::new();
    for i in 0..=p.len() {
        let name = format!("r{seed:x}.v{i}");
        arc_vertices.push(complex.add_vertex(&name)?);
        let lbl = if i == 0 {
            base.word_source(p)
        } else {
            base.edge_target(p.edges()[i - 1])
        };
        vertex_labels.push(lbl);
    }
    let mut root_edges = Vec::new();
    for (i, &e) in p.edges().iter().enumerate() {
        let name = format!("r{seed:x}.e{i}");
        let id = complex.add_edge(&name, arc_vertices[i], arc_vertices[i + 1])?;
        root_edges.push(id);
        edge_labels.push(e);
        edge_levels.push(0);
    }
    let root = complex.word(root_edges).expect("root arc is composable");

    let mut cover = CoverComplex {
        complex,
        base: base.clone(),
        base_path: p.clone(),
        root,
        vertex_labels,
        edge_labels,
        cell_labels: Vec::new(),
        edge_levels,
        cell_levels: Vec::new(),
        level: 0,
    };

    let mut satisfied: std::collections::HashSet<(CellRef, Vec<EdgeId>)> =
        std::collections::HashSet::new();
    for lvl in 1..=level {
        // Demands are collected against the previous level only, then all
        // additions happen together.
        let paths = cover.paths_up_to_level(lvl - 1);
        let mut pending: Vec<(EdgeWord, CellRef)> = Vec::new();
        for path in &paths {
            if path.is_empty() {
                continue;
            }
            let label = cover.label_word(path);
            for c in base.cell_ids() {
                for cref in [CellRef::positive(c), CellRef::negative(c)] {
                    if base.top(cref) == &label
                        && !satisfied.contains(&(cref, path.edges().to_vec()))
                    {
                        pending.push((path.clone(), cref));
                    }
                }
            }
        }
        for (idx, (top_path, label)) in pending.into_iter().enumerate() {
            let path_names: Vec<&str> = top_path
                .edges()
                .iter()
                .map(|&e| cover.complex.edge_name(e))
                .collect();
            let hash = fnv1a(&format!("{seed}/{}/{idx}", path_names.join(" ")));
            let cell_name = cover.complex.fresh_cell_name(&format!(
                "{hash:08x}.{}{}",
                base.cell_name(label.cell),
                if label.negative { "-" } else { "+" }
            ));
            // Fresh bottom arc labelled by bottom(label).
            let bottom_label = base.bottom(label).clone();
            let mut arc_vertices = vec![cover.complex.word_source(&top_path)];
            for i in 1..bottom_label.len() {
                let vname = cover.complex.fresh_vertex_name(&format!("{cell_name}.v{i}"));
                let v = cover.complex.add_vertex(&vname)?;
                cover
                    .vertex_labels
                    .push(base.edge_target(bottom_label.edges()[i - 1]));
                arc_vertices.push(v);
            }
            arc_vertices.push(cover.complex.word_target(&top_path));
            let mut arc_edges = Vec::new();
            for (i, &e) in bottom_label.edges().iter().enumerate() {
                let ename = cover.complex.fresh_edge_name(&format!("{cell_name}.e{i}"));
                let id = cover.complex.add_edge(&ename, arc_vertices[i], arc_vertices[i + 1])?;
                cover.edge_labels.push(e);
                cover.edge_levels.push(lvl);
                arc_edges.push(id);
            }
            let bottom = cover.complex.word(arc_edges).expect("fresh arc is composable");
            satisfied.insert((label, top_path.edges().to_vec()));
            satisfied.insert((label.inverse(), bottom.edges().to_vec()));
            cover.complex.add_cell(&cell_name, top_path, bottom)?;
            cover.cell_labels.push(label);
            cover.cell_levels.push(lvl);
        }
        cover.level = lvl;
    }
    Ok(cover)
}

/// The unique lift of a diagram with top equal to the base path. Returns the
/// lifted diagram (over the cover complex) and the terminal lifted path.
pub fn lift_diagram(
    cover: &CoverComplex,
    d: &Diagram,
) -> Result<(Diagram, EdgeWord), CoverError> {
    if d.top() != &cover.base_path {
        return Err(CoverError::BaseMismatch);
    }
    lift_from(cover, &cover.root, d)
}

/// Lift starting at an arbitrary cover path whose label is the diagram's
/// top; uniqueness of lifts makes this compose with concatenation.
pub fn lift_from(
    cover: &CoverComplex,
    start: &EdgeWord,
    d: &Diagram,
) -> Result<(Diagram, EdgeWord), CoverError> {
    if cover.label_word(start) != *d.top() {
        return Err(CoverError::BaseMismatch);
    }
    let k = &cover.base;
    let d = diagram::canonical(k, d);
    let index = cover.cell_index();
    let mut path = start.clone();
    let mut steps: Vec<AtomicStep> = Vec::new();
    for step in d.steps() {
        let seg_len = k.top(step.cell).len();
        let segment = cover.complex.subword(&path, step.offset, step.offset + seg_len);
        // The unique cover cell labelled by the step's cell with this top.
        let cref = index
            .get(&(step.cell, segment.edges().to_vec()))
            .and_then(|v| v.first().copied())
            .ok_or(CoverError::InsufficientLevel(d.cell_count()))?;
        steps.push(AtomicStep { offset: step.offset, cell: cref });
        path = cover.complex.splice(
            &path,
            step.offset,
            seg_len,
            cover.complex.bottom(cref),
        );
    }
    let lifted = Diagram::from_steps(&cover.complex, start.clone(), steps)
        .expect("lifted steps apply");
    Ok((lifted, path))
}

/// Projects a diagram over the cover back to the base along the labelling.
pub fn project_diagram(cover: &CoverComplex, d: &Diagram) -> Diagram {
    let top = cover.label_word(d.top());
    let steps: Vec<AtomicStep> = d
        .steps()
        .iter()
        .map(|s| AtomicStep { offset: s.offset, cell: cover.label_cell(s.cell) })
        .collect();
    Diagram::from_steps(&cover.base, top, steps).expect("projection of a valid lift applies")
}

#[derive(Debug, Clone, Default)]
pub struct CoverReport {
    pub t1_violations: Vec<String>,
    pub t2_violations: Vec<String>,
    pub u2_violations: Vec<String>,
    pub t3_witness: Option<Diagram>,
}

impl CoverReport {
    pub fn all_pass(&self) -> bool {
        self.t1_violations.is_empty()
            && self.t2_violations.is_empty()
            && self.u2_violations.is_empty()
            && self.t3_witness.is_none()
    }
}

/// Bounded verification of the truncation: T1 on the whole truncation, T2
/// and the unique-cell condition on the interior (levels up to `level - 1`),
/// and a bounded search for a nontrivial reduced spherical diagram at the
/// root (T3).
pub fn verify_rooted_tree(cover: &CoverComplex, max_cells: usize) -> CoverReport {
    let k = &cover.complex;
    let mut report = CoverReport::default();

    // T1: every vertex lies on a path from the root's source to its target.
    let src = k.word_source(&cover.root);
    let dst = k.word_target(&cover.root);
    let forward = reachable(k, src, false);
    let backward = reachable(k, dst, true);
    for v in k.vertex_ids() {
        if !(forward[v.0 as usize] && backward[v.0 as usize]) {
            report.t1_violations.push(k.vertex_name(v).to_string());
        }
    }

    // The interior stops one level short of the truncation; a level-0 arc
    // has no interior and the path checks hold vacuously.
    let paths = if cover.level == 0 {
        Vec::new()
    } else {
        cover.paths_up_to_level(cover.level - 1)
    };

    // T2 interior: same-endpoint paths are homotopic in the full truncation.
    let limits = crate::squier::Limits {
        max_word_len: k.edge_count().max(4),
        max_vertices: 100_000,
    };
    let mut groups: HashMap<(VertexId, VertexId), Vec<&EdgeWord>> = HashMap::new();
    for p in &paths {
        groups.entry((k.word_source(p), k.word_target(p))).or_default().push(p);
    }
    let mut keys: Vec<_> = groups.keys().copied().collect();
    keys.sort();
    for key in keys {
        let group = &groups[&key];
        let first = group[0];
        if first.is_empty() {
            // Empty paths are homotopic only to themselves.
            for other in &group[1..] {
                if !other.is_empty() {
                    report.t2_violations.push(format!(
                        "`{}` vs `{}`",
                        k.display_word(first),
                        k.display_word(other)
                    ));
                }
            }
            continue;
        }
        if let Ok(comp) = crate::squier::component(k, first, limits) {
            for other in &group[1..] {
                if !comp.contains(other) {
                    report.t2_violations.push(format!(
                        "`{}` vs `{}`",
                        k.display_word(first),
                        k.display_word(other)
                    ));
                }
            }
        }
    }

    // Interior unique-cell condition: exactly one cover cell per (label, top).
    let index = cover.cell_index();
    for path in &paths {
        if path.is_empty() {
            continue;
        }
        let label = cover.label_word(path);
        for c in cover.base.cell_ids() {
            for cref in [CellRef::positive(c), CellRef::negative(c)] {
                if cover.base.top(cref) != &label {
                    continue;
                }
                let count = index
                    .get(&(cref, path.edges().to_vec()))
                    .map_or(0, Vec::len);
                if count != 1 {
                    report.u2_violations.push(format!(
                        "{} cells labelled {} over `{}`",
                        count,
                        cover.base.display_cell_ref(cref),
                        k.display_word(path)
                    ));
                }
            }
        }
    }

    // Bounded T3: no nontrivial reduced spherical diagram at the root.
    let max_word = k.edge_count().max(cover.root.len() + max_cells);
    let found = crate::enumerate::reduced_spherical(k, &cover.root, max_cells, max_word);
    report.t3_witness = found.into_iter().next();

    report
}

fn reachable(k: &DirectedComplex, from: VertexId, reverse: bool) -> Vec<bool> {
    let mut seen = vec![false; k.vertex_count()];
    seen[from.0 as usize] = true;
    let mut queue = vec![from];
    while let Some(v) = queue.pop() {
        for e in k.edge_ids() {
            let (s, t) = if reverse {
                (k.edge_target(e), k.edge_source(e))
            } else {
                (k.edge_source(e), k.edge_target(e))
            };
            if s == v && !seen[t.0 as usize] {
                seen[t.0 as usize] = true;
                queue.push(t);
            }
        }
    }
    seen
}
