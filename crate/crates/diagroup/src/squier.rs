//! Bounded Squier-complex machinery: connected components, thin cubes and
//! their face maps, left/right forests, and the collapsing-scheme
//! classification of cubes into essential, redundant and collapsible.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::complex::{CellId, CellRef, DirectedComplex, EdgeId, EdgeWord};
use crate::rewriting::{self, Confluence, ReductionView};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SquierError {
    #[error("base word must be non-empty")]
    EmptyBase,
    #[error("face index {0} out of range for a {1}-cube")]
    FaceIndex(usize, usize),
    #[error("operation requires a complete complex: {0}")]
    NotComplete(String),
    #[error("thin cube is not composable")]
    BadCube,
    #[error("thin cube cells must be negative")]
    PositiveCubeCell,
    #[error("forest assigns no edge to `{0}`; cannot pair the redundant cube")]
    NoAssignedEdge(String),
    #[error("forest pair violates F1: context `{0}` is reducible")]
    F1Violation(String),
    #[error("{0}")]
    Rewriting(#[from] rewriting::RewritingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_word_len: usize,
    pub max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_word_len: 12, max_vertices: 4096 }
    }
}

/// A negative atomic step `(u, f^-1, v)`, stored by its top vertex, the
/// offset `|u|` and the positive cell id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentEdge {
    pub top: usize,
    pub bottom: usize,
    pub offset: usize,
    pub cell: CellId,
}

/// The connected component of a word in the Squier complex, explored
/// breadth-first within limits.
#[derive(Debug, Clone)]
pub struct SquierComponent {
    pub base: EdgeWord,
    pub vertices: Vec<EdgeWord>,
    index: HashMap<EdgeWord, usize>,
    pub edges: Vec<ComponentEdge>,
    pub exhaustive: bool,
    /// True when the vertex cap (rather than the word-length bound) cut the
    /// exploration, i.e. even short words may be missing.
    pub capped: bool,
    pub limits: Limits,
}

impl SquierComponent {
    pub fn contains(&self, w: &EdgeWord) -> bool {
        self.index.contains_key(w)
    }

    pub fn vertex_index(&self, w: &EdgeWord) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// BFS closure of `w` under atomic steps of both signs, subject to limits.
pub fn component(
    k: &DirectedComplex,
    w: &EdgeWord,
    limits: Limits,
) -> Result<SquierComponent, SquierError> {
    if w.is_empty() {
        return Err(SquierError::EmptyBase);
    }
    let mut vertices: Vec<EdgeWord> = vec![w.clone()];
    let mut index: HashMap<EdgeWord, usize> = HashMap::new();
    index.insert(w.clone(), 0);
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    let mut exhaustive = true;
    let mut capped = false;
    while let Some(i) = queue.pop_front() {
        let cur = vertices[i].clone();
        for cref in k.cell_ids().flat_map(|c| [CellRef::positive(c), CellRef::negative(c)]) {
            let pat = k.top(cref);
            if pat.len() > cur.len() {
                continue;
            }
            for offset in 0..=(cur.len() - pat.len()) {
                if !k.word_matches_at(&cur, offset, pat) {
                    continue;
                }
                let next = k.splice(&cur, offset, pat.len(), k.bottom(cref));
                if next == cur {
                    continue;
                }
                if next.len() > limits.max_word_len {
                    exhaustive = false;
                    continue;
                }
                if !index.contains_key(&next) {
                    if vertices.len() >= limits.max_vertices {
                        exhaustive = false;
                        capped = true;
                        continue;
                    }
                    index.insert(next.clone(), vertices.len());
                    vertices.push(next.clone());
                    queue.push_back(vertices.len() - 1);
                }
            }
        }
    }
    // Edges: every negative step with both endpoints among the vertices.
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for c in k.cell_ids() {
            let neg = CellRef::negative(c);
            let pat = k.top(neg);
            if pat.len() > v.len() {
                continue;
            }
            for offset in 0..=(v.len() - pat.len()) {
                if !k.word_matches_at(v, offset, pat) {
                    continue;
                }
                let bottom_word = k.splice(v, offset, pat.len(), k.bottom(neg));
                if let Some(&j) = index.get(&bottom_word) {
                    edges.push(ComponentEdge { top: i, bottom: j, offset, cell: c });
                }
            }
        }
    }
    Ok(SquierComponent { base: w.clone(), vertices, index, edges, exhaustive, capped, limits })
}

/// All essential n-cubes whose top word is homotopic to `w`, enumerated over
/// the class-semigroup letters in deterministic order. Requires a complete
/// complex with finitely many homotopy classes.
pub fn essential_cubes(
    k: &DirectedComplex,
    w: &EdgeWord,
    n: usize,
) -> Result<Vec<ThinCube>, crate::homology::HomologyError> {
    let tl = Forest::derive(k, ForestKind::Left)?;
    let auto = crate::homology::CountAutomaton::build(
        k,
        w,
        &tl,
        crate::homology::ClassBounds::default(),
    )?;
    Ok(auto.essential_cubes(k, n))
}

/// An n-cube of the Squier complex: ε(u₀) + f₁ + ε(u₁) + ⋯ + fₙ + ε(uₙ)
/// with every fᵢ a negative cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThinCube {
    pub segments: Vec<EdgeWord>,
    pub cells: Vec<CellRef>,
}

impl ThinCube {
    pub fn vertex(w: EdgeWord) -> ThinCube {
        ThinCube { segments: vec![w], cells: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    pub fn validate(&self, k: &DirectedComplex) -> Result<(), SquierError> {
        if self.segments.len() != self.cells.len() + 1 {
            return Err(SquierError::BadCube);
        }
        if self.cells.iter().any(|c| !c.negative) {
            return Err(SquierError::PositiveCubeCell);
        }
        for i in 0..self.cells.len() {
            if k.word_target(&self.segments[i]) != k.word_source(k.top(self.cells[i]))
                || k.word_target(k.top(self.cells[i])) != k.word_source(&self.segments[i + 1])
            {
                return Err(SquierError::BadCube);
            }
        }
        Ok(())
    }

    pub fn top_word(&self, k: &DirectedComplex) -> EdgeWord {
        self.boundary_word(k, |c| k.top(c))
    }

    pub fn bottom_word(&self, k: &DirectedComplex) -> EdgeWord {
        self.boundary_word(k, |c| k.bottom(c))
    }

    fn boundary_word<'a>(
        &self,
        k: &'a DirectedComplex,
        side: impl Fn(CellRef) -> &'a EdgeWord,
    ) -> EdgeWord {
        let mut w = self.segments[0].clone();
        for i in 0..self.cells.len() {
            w = k.concat_words(&w, side(self.cells[i]));
            w = k.concat_words(&w, &self.segments[i + 1]);
        }
        w
    }

    pub fn display(&self, k: &DirectedComplex) -> String {
        let mut parts = vec![format!("e({})", k.display_word(&self.segments[0]))];
        for i in 0..self.cells.len() {
            parts.push(k.display_cell_ref(self.cells[i]));
            parts.push(format!("e({})", k.display_word(&self.segments[i + 1])));
        }
        parts.join(" + ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceSide {
    Top,
    Bottom,
}

/// Face map λᵢᵏ: replaces fᵢ by its top (k = 0) or bottom (k = 1) word,
/// merging the adjacent ε terms. `i` is 1-based.
pub fn cube_face(
    k: &DirectedComplex,
    c: &ThinCube,
    i: usize,
    side: FaceSide,
) -> Result<ThinCube, SquierError> {
    if i == 0 || i > c.dim() {
        return Err(SquierError::FaceIndex(i, c.dim()));
    }
    let cell = c.cells[i - 1];
    let word = match side {
        FaceSide::Top => k.top(cell),
        FaceSide::Bottom => k.bottom(cell),
    };
    let merged = k.concat_words(&k.concat_words(&c.segments[i - 1], word), &c.segments[i]);
    let mut segments = Vec::with_capacity(c.segments.len() - 1);
    segments.extend_from_slice(&c.segments[..i - 1]);
    segments.push(merged);
    segments.extend_from_slice(&c.segments[i + 1..]);
    let mut cells = c.cells.clone();
    cells.remove(i - 1);
    Ok(ThinCube { segments, cells })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForestKind {
    Left,
    Right,
}

/// A left (or right) forest, stored as wildcard pairs. For a left forest the
/// pair `(u, f)` stands for all edges `(u, f, *)`; for a right forest the
/// mirrored `(f, v)` stands for `(*, f, v)`. Derived forests answer
/// membership on demand from the completeness structure; user-supplied ones
/// are closed sets validated for F1 only.
#[derive(Debug, Clone)]
pub struct Forest {
    pub kind: ForestKind,
    pub derived: bool,
    pairs: BTreeSet<(Vec<EdgeId>, CellId)>,
}

impl Forest {
    /// Stored pairs, for display and serialization.
    pub fn pairs(&self) -> impl Iterator<Item = (&[EdgeId], CellId)> {
        self.pairs.iter().map(|(w, c)| (w.as_slice(), *c))
    }
}

fn prefix_irreducible_chain(view: &ReductionView, k: &DirectedComplex, w: &EdgeWord) -> bool {
    // Every proper prefix of `w` is irreducible.
    (0..w.len()).all(|i| view.is_irreducible(&k.subword(w, 0, i)))
}

fn suffix_irreducible_chain(view: &ReductionView, k: &DirectedComplex, w: &EdgeWord) -> bool {
    (1..=w.len()).all(|i| view.is_irreducible(&k.subword(w, i, w.len())))
}

/// Candidate cell for a minimal-reducible prefix string: reducing cells
/// whose redex is a suffix, lowest cell id first.
fn chosen_left_cell(
    view: &ReductionView,
    k: &DirectedComplex,
    p_prime: &EdgeWord,
) -> Option<CellId> {
    view.reducing_cells()
        .iter()
        .copied()
        .find(|&c| {
            let redex = k.top(CellRef::positive(c));
            redex.len() <= p_prime.len()
                && k.word_matches_at(p_prime, p_prime.len() - redex.len(), redex)
        })
}

fn chosen_right_cell(
    view: &ReductionView,
    k: &DirectedComplex,
    p_prime: &EdgeWord,
) -> Option<CellId> {
    view.reducing_cells()
        .iter()
        .copied()
        .find(|&c| {
            let redex = k.top(CellRef::positive(c));
            redex.len() <= p_prime.len() && k.word_matches_at(p_prime, 0, redex)
        })
}

impl Forest {
    /// The forest derived from completeness: for every reducible vertex the
    /// shortest reducible prefix (suffix, for the right forest) determines the
    /// assigned edge; ties between cells go to the lowest cell id. Membership
    /// is answered on demand, so the forest covers the whole Squier complex,
    /// not just an explored part.
    pub fn derive(
        k: &DirectedComplex,
        kind: ForestKind,
    ) -> Result<Forest, SquierError> {
        match rewriting::confluence_check(k) {
            Ok(Confluence::Confluent) => {}
            Ok(Confluence::NotConfluent { pair, .. }) => {
                return Err(SquierError::NotComplete(format!(
                    "not confluent at `{}`",
                    k.display_word(&pair.word)
                )))
            }
            Err(e) => return Err(SquierError::NotComplete(e.to_string())),
        }
        Ok(Forest { kind, derived: true, pairs: BTreeSet::new() })
    }

    /// An expert-supplied left forest (wildcard pairs), validated for F1;
    /// F2 holds by construction of the storage.
    pub fn from_pairs(
        k: &DirectedComplex,
        kind: ForestKind,
        pairs: Vec<(EdgeWord, CellId)>,
    ) -> Result<Forest, SquierError> {
        let view = ReductionView::new(k);
        let mut set = BTreeSet::new();
        for (u, c) in pairs {
            if !view.is_irreducible(&u) {
                return Err(SquierError::F1Violation(k.display_word(&u)));
            }
            set.insert((u.edges().to_vec(), c));
        }
        Ok(Forest { kind, derived: false, pairs: set })
    }

    /// Whether the negative edge with context `u` (left) or `v` (right) and
    /// positive cell `cell` belongs to the forest.
    pub fn contains(
        &self,
        k: &DirectedComplex,
        view: &ReductionView,
        context: &EdgeWord,
        cell: CellId,
    ) -> bool {
        if !self.derived {
            return self.pairs.contains(&(context.edges().to_vec(), cell));
        }
        if !k.is_reducing(cell) || !view.is_irreducible(context) {
            return false;
        }
        let redex = k.top(CellRef::positive(cell));
        match self.kind {
            ForestKind::Left => {
                let p_prime = k.concat_words(context, redex);
                prefix_irreducible_chain(view, k, &p_prime)
                    && chosen_left_cell(view, k, &p_prime) == Some(cell)
            }
            ForestKind::Right => {
                let p_prime = k.concat_words(redex, context);
                suffix_irreducible_chain(view, k, &p_prime)
                    && chosen_right_cell(view, k, &p_prime) == Some(cell)
            }
        }
    }

    /// The forest edge assigned to a reducible word: the unique forest edge
    /// whose bottom is that word. Returns `(context, cell, rest)` such that
    /// for a left forest `word = context · redex(cell) · rest`.
    pub fn assigned(
        &self,
        k: &DirectedComplex,
        view: &ReductionView,
        word: &EdgeWord,
    ) -> Option<(EdgeWord, CellId, EdgeWord)> {
        if self.derived {
            match self.kind {
                ForestKind::Left => {
                    let mut plen = 0;
                    loop {
                        if plen > word.len() {
                            return None;
                        }
                        let prefix = k.subword(word, 0, plen);
                        if !view.is_irreducible(&prefix) {
                            let cell = chosen_left_cell(view, k, &prefix)?;
                            let redex_len = k.top(CellRef::positive(cell)).len();
                            let u = k.subword(word, 0, plen - redex_len);
                            let rest = k.subword(word, plen, word.len());
                            return Some((u, cell, rest));
                        }
                        plen += 1;
                    }
                }
                ForestKind::Right => {
                    let mut slen = 0;
                    loop {
                        if slen > word.len() {
                            return None;
                        }
                        let suffix = k.subword(word, word.len() - slen, word.len());
                        if !view.is_irreducible(&suffix) {
                            let cell = chosen_right_cell(view, k, &suffix)?;
                            let redex_len = k.top(CellRef::positive(cell)).len();
                            let v = k.subword(
                                word,
                                word.len() - slen + redex_len,
                                word.len(),
                            );
                            let rest = k.subword(word, 0, word.len() - slen);
                            return Some((rest, cell, v));
                        }
                        slen += 1;
                    }
                }
            }
        } else {
            // User forests: scan stored pairs for a matching decomposition.
            for (ctx, cell) in &self.pairs {
                let redex = k.top(CellRef::positive(*cell));
                match self.kind {
                    ForestKind::Left => {
                        let plen = ctx.len() + redex.len();
                        if plen <= word.len()
                            && word.edges()[..ctx.len()] == ctx[..]
                            && k.word_matches_at(word, ctx.len(), redex)
                        {
                            return Some((
                                k.subword(word, 0, ctx.len()),
                                *cell,
                                k.subword(word, plen, word.len()),
                            ));
                        }
                    }
                    ForestKind::Right => {
                        let plen = ctx.len() + redex.len();
                        if plen <= word.len()
                            && word.edges()[word.len() - ctx.len()..] == ctx[..]
                            && k.word_matches_at(word, word.len() - plen, redex)
                        {
                            return Some((
                                k.subword(word, 0, word.len() - plen),
                                *cell,
                                k.subword(word, word.len() - ctx.len(), word.len()),
                            ));
                        }
                    }
                }
            }
            None
        }
    }
}

/// Collapsing-scheme classification of a cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubeClass {
    Essential,
    Redundant { paired: ThinCube },
    Collapsible { free_face: ThinCube },
}

/// The class alone, without the paired cube. Unlike [`classify_cube`] this
/// never needs an assigned forest edge, so it also works with partial
/// user-supplied forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeKind {
    Essential,
    Redundant,
    Collapsible,
}

pub fn classify_kind(
    k: &DirectedComplex,
    view: &ReductionView,
    tl: &Forest,
    c: &ThinCube,
) -> Result<CubeKind, SquierError> {
    c.validate(k)?;
    for i in 0..c.segments.len() {
        if !view.is_irreducible(&c.segments[i]) {
            return Ok(CubeKind::Redundant);
        }
        if i < c.cells.len() && tl.contains(k, view, &c.segments[i], c.cells[i].cell) {
            return Ok(CubeKind::Collapsible);
        }
    }
    Ok(CubeKind::Essential)
}

/// Finds the leftmost special term: a reducible segment uᵢ makes the cube
/// redundant (paired with the cube that inserts the forest-assigned cell),
/// a forest cell fᵢ makes it collapsible (free face: replace fᵢ by its
/// bottom).
pub fn classify_cube(
    k: &DirectedComplex,
    view: &ReductionView,
    tl: &Forest,
    c: &ThinCube,
) -> Result<CubeClass, SquierError> {
    c.validate(k)?;
    for i in 0..c.segments.len() {
        // Segment u_i, then (when present) cell f_{i+1}.
        if !view.is_irreducible(&c.segments[i]) {
            let (p, cell, q) = tl.assigned(k, view, &c.segments[i]).ok_or_else(|| {
                SquierError::NoAssignedEdge(k.display_word(&c.segments[i]))
            })?;
            let mut segments = Vec::with_capacity(c.segments.len() + 1);
            segments.extend_from_slice(&c.segments[..i]);
            segments.push(p);
            segments.push(q);
            segments.extend_from_slice(&c.segments[i + 1..]);
            let mut cells = c.cells.clone();
            cells.insert(i, CellRef::negative(cell));
            let paired = ThinCube { segments, cells };
            debug_assert!(paired.validate(k).is_ok());
            return Ok(CubeClass::Redundant { paired });
        }
        if i < c.cells.len() && tl.contains(k, view, &c.segments[i], c.cells[i].cell) {
            let free_face = cube_face(k, c, i + 1, FaceSide::Bottom)?;
            return Ok(CubeClass::Collapsible { free_face });
        }
    }
    Ok(CubeClass::Essential)
}

/// All thin cubes of the given dimension with the given top word, in
/// deterministic order.
pub fn thin_cubes_with_top(k: &DirectedComplex, w: &EdgeWord, dim: usize) -> Vec<ThinCube> {
    let mut out = Vec::new();
    let mut segments: Vec<EdgeWord> = Vec::new();
    let mut cells: Vec<CellRef> = Vec::new();
    fn rec(
        k: &DirectedComplex,
        w: &EdgeWord,
        from: usize,
        remaining: usize,
        segments: &mut Vec<EdgeWord>,
        cells: &mut Vec<CellRef>,
        out: &mut Vec<ThinCube>,
    ) {
        if remaining == 0 {
            let mut segs = segments.clone();
            segs.push(k.subword(w, from, w.len()));
            out.push(ThinCube { segments: segs, cells: cells.clone() });
            return;
        }
        for start in from..=w.len() {
            for c in k.cell_ids() {
                let neg = CellRef::negative(c);
                let pat = k.top(neg);
                if start + pat.len() <= w.len() && k.word_matches_at(w, start, pat) {
                    segments.push(k.subword(w, from, start));
                    cells.push(neg);
                    rec(k, w, start + pat.len(), remaining - 1, segments, cells, out);
                    segments.pop();
                    cells.pop();
                }
            }
        }
    }
    rec(k, w, 0, dim, &mut segments, &mut cells, &mut out);
    out
}

/// Census of a bounded component: for each dimension up to `max_dim`, counts
/// of essential, redundant and collapsible cubes whose top is a component
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeCensus {
    pub per_dim: Vec<(usize, usize, usize)>,
    pub exhaustive: bool,
}

pub fn cube_census(
    k: &DirectedComplex,
    comp: &SquierComponent,
    tl: &Forest,
    max_dim: usize,
) -> Result<CubeCensus, SquierError> {
    let view = ReductionView::new(k);
    let mut per_dim = Vec::new();
    for dim in 0..=max_dim {
        let counts = map_reduce_vertices(&comp.vertices, |v| {
            let mut c = (0usize, 0usize, 0usize);
            for cube in thin_cubes_with_top(k, v, dim) {
                match classify_kind(k, &view, tl, &cube)? {
                    CubeKind::Essential => c.0 += 1,
                    CubeKind::Redundant => c.1 += 1,
                    CubeKind::Collapsible => c.2 += 1,
                }
            }
            Ok(c)
        })?;
        per_dim.push(counts);
    }
    Ok(CubeCensus { per_dim, exhaustive: comp.exhaustive })
}

#[cfg(feature = "parallel")]
fn map_reduce_vertices(
    vertices: &[EdgeWord],
    f: impl Fn(&EdgeWord) -> Result<(usize, usize, usize), SquierError> + Sync + Send,
) -> Result<(usize, usize, usize), SquierError> {
    use rayon::prelude::*;
    let parts: Result<Vec<_>, SquierError> = vertices.par_iter().map(f).collect();
    Ok(parts?.into_iter().fold((0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2)))
}

#[cfg(not(feature = "parallel"))]
fn map_reduce_vertices(
    vertices: &[EdgeWord],
    f: impl Fn(&EdgeWord) -> Result<(usize, usize, usize), SquierError>,
) -> Result<(usize, usize, usize), SquierError> {
    let mut acc = (0, 0, 0);
    for v in vertices {
        let b = f(v)?;
        acc = (acc.0 + b.0, acc.1 + b.1, acc.2 + b.2);
    }
    Ok(acc)
}

pub fn census_csv(census: &CubeCensus) -> String {
    let mut out = String::from("dimension,class,count\n");
    for (dim, (e, r, c)) in census.per_dim.iter().enumerate() {
        out.push_str(&format!("{dim},essential,{e}\n"));
        out.push_str(&format!("{dim},redundant,{r}\n"));
        out.push_str(&format!("{dim},collapsible,{c}\n"));
    }
    out
}

/// Deterministic DOT export of a component: vertices labelled by words,
/// negative edges solid, positive edges dashed.
pub fn export_dot(k: &DirectedComplex, comp: &SquierComponent) -> String {
    let mut out = String::from("digraph squier {\n");
    for (i, v) in comp.vertices.iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, k.display_word(v)));
    }
    for e in &comp.edges {
        let style = "solid"; // stored edges are the negative steps
        out.push_str(&format!(
            "  n{} -> n{} [style={}, label=\"({}, {}^-1, {})\"];\n",
            e.top,
            e.bottom,
            style,
            k.display_word(&k.subword(&comp.vertices[e.top], 0, e.offset)),
            k.cell_name(e.cell),
            k.display_word(&k.subword(
                &comp.vertices[e.top],
                e.offset + k.top(CellRef::negative(e.cell)).len(),
                comp.vertices[e.top].len()
            )),
        ));
    }
    out.push_str("}\n");
    out
}

/// Acyclicity plus spanning check of the forest's edges over an exhaustively
/// explored component.
pub fn verify_forest_on_component(
    k: &DirectedComplex,
    comp: &SquierComponent,
    forest: &Forest,
) -> Result<(), String> {
    let view = ReductionView::new(k);
    // Union-find over component vertices by forest edges.
    let mut parent: Vec<usize> = (0..comp.vertices.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut edge_count = 0usize;
    for e in &comp.edges {
        let top_word = &comp.vertices[e.top];
        let context = match forest.kind {
            ForestKind::Left => k.subword(top_word, 0, e.offset),
            ForestKind::Right => k.subword(
                top_word,
                e.offset + k.top(CellRef::negative(e.cell)).len(),
                top_word.len(),
            ),
        };
        if forest.contains(k, &view, &context, e.cell) {
            edge_count += 1;
            let (a, b) = (find(&mut parent, e.top), find(&mut parent, e.bottom));
            if a == b {
                return Err(format!(
                    "forest has a cycle through `{}`",
                    k.display_word(&comp.vertices[e.top])
                ));
            }
            parent[a] = b;
        }
    }
    let roots: BTreeSet<usize> = (0..comp.vertices.len()).map(|i| find(&mut parent, i)).collect();
    if roots.len() != 1 {
        return Err(format!("forest does not span: {} components", roots.len()));
    }
    let _ = edge_count;
    Ok(())
}
