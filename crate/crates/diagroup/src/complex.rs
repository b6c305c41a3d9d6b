//! Directed 2-complexes: a directed graph together with 2-cells, each bounded
//! by a top and a bottom directed path with common endpoints. Negative cells
//! are never stored; [`CellRef`] carries a sign bit, which makes inversion an
//! involution by construction.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId(pub u32);

/// A 2-cell with a sign. The negative cell is the formal inverse of the
/// stored positive one, with top and bottom swapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub cell: CellId,
    pub negative: bool,
}

impl CellRef {
    pub fn positive(cell: CellId) -> Self {
        CellRef { cell, negative: false }
    }

    pub fn negative(cell: CellId) -> Self {
        CellRef { cell, negative: true }
    }

    pub fn inverse(self) -> Self {
        CellRef { cell: self.cell, negative: !self.negative }
    }
}

/// A composable sequence of edges. Empty words carry an explicit anchor
/// vertex so that `source` and `target` are total.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeWord {
    anchor: VertexId,
    edges: Vec<EdgeId>,
}

impl EdgeWord {
    pub fn empty(anchor: VertexId) -> Self {
        EdgeWord { anchor, edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn anchor(&self) -> VertexId {
        self.anchor
    }
}

#[derive(Debug, Clone)]
struct Edge {
    name: String,
    source: VertexId,
    target: VertexId,
}

#[derive(Debug, Clone)]
struct Cell {
    name: String,
    top: EdgeWord,
    bottom: EdgeWord,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("word is not composable at position {0}")]
    NotComposable(usize),
    #[error("cell `{0}`: top and bottom must be non-empty")]
    EmptyCellSide(String),
    #[error("cell `{cell}`: endpoint mismatch between top and bottom")]
    EndpointMismatch { cell: String },
    #[error("empty word where a non-empty 1-path is required")]
    EmptyWord,
    #[error("morphism: missing assignment for {0}")]
    MissingAssignment(String),
    #[error("morphism violates M1 on edge `{0}`")]
    M1Violation(String),
    #[error("morphism violates M2 on cell `{cell}`: {side} word mismatch")]
    M2Violation { cell: String, side: &'static str },
}

/// A directed 2-complex. Values are immutable once built; all operations
/// return fresh complexes.
#[derive(Debug, Clone)]
pub struct DirectedComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    cells: Vec<Cell>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    cell_index: HashMap<String, CellId>,
    /// Whether the complex was declared through the one-vertex shorthand.
    presentation_form: bool,
}

impl DirectedComplex {
    pub fn new() -> Self {
        DirectedComplex {
            vertices: Vec::new(),
            edges: Vec::new(),
            cells: Vec::new(),
            vertex_index: HashMap::new(),
            edge_index: HashMap::new(),
            cell_index: HashMap::new(),
            presentation_form: false,
        }
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, ComplexError> {
        if self.vertex_index.contains_key(name) {
            return Err(ComplexError::DuplicateId(name.to_string()));
        }
        let id = VertexId(self.vertices.len() as u32);
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_edge(
        &mut self,
        name: &str,
        source: VertexId,
        target: VertexId,
    ) -> Result<EdgeId, ComplexError> {
        if self.edge_index.contains_key(name) {
            return Err(ComplexError::DuplicateId(name.to_string()));
        }
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Edge { name: name.to_string(), source, target });
        self.edge_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_cell(
        &mut self,
        name: &str,
        top: EdgeWord,
        bottom: EdgeWord,
    ) -> Result<CellId, ComplexError> {
        if self.cell_index.contains_key(name) {
            return Err(ComplexError::DuplicateId(name.to_string()));
        }
        if top.is_empty() || bottom.is_empty() {
            return Err(ComplexError::EmptyCellSide(name.to_string()));
        }
        self.check_word(&top)?;
        self.check_word(&bottom)?;
        if self.word_source(&top) != self.word_source(&bottom)
            || self.word_target(&top) != self.word_target(&bottom)
        {
            return Err(ComplexError::EndpointMismatch { cell: name.to_string() });
        }
        let id = CellId(self.cells.len() as u32);
        self.cells.push(Cell { name: name.to_string(), top, bottom });
        self.cell_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of positive 2-cells. Negative cells exist only as signed refs.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> {
        (0..self.cells.len() as u32).map(CellId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0 as usize]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0 as usize].name
    }

    pub fn cell_name(&self, c: CellId) -> &str {
        &self.cells[c.0 as usize].name
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn cell(&self, name: &str) -> Option<CellId> {
        self.cell_index.get(name).copied()
    }

    pub fn edge_source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0 as usize].source
    }

    pub fn edge_target(&self, e: EdgeId) -> VertexId {
        self.edges[e.0 as usize].target
    }

    /// Top path of a signed cell; for a negative cell this is the stored bottom.
    pub fn top(&self, c: CellRef) -> &EdgeWord {
        let cell = &self.cells[c.cell.0 as usize];
        if c.negative {
            &cell.bottom
        } else {
            &cell.top
        }
    }

    /// Bottom path of a signed cell.
    pub fn bottom(&self, c: CellRef) -> &EdgeWord {
        let cell = &self.cells[c.cell.0 as usize];
        if c.negative {
            &cell.top
        } else {
            &cell.bottom
        }
    }

    pub fn cell_source(&self, c: CellId) -> VertexId {
        self.word_source(&self.cells[c.0 as usize].top)
    }

    pub fn cell_target(&self, c: CellId) -> VertexId {
        self.word_target(&self.cells[c.0 as usize].top)
    }

    /// A cell is reducing when its two sides differ as words; only such cells
    /// witness positive rewriting steps.
    pub fn is_reducing(&self, c: CellId) -> bool {
        let cell = &self.cells[c.0 as usize];
        cell.top != cell.bottom
    }

    pub fn word_source(&self, w: &EdgeWord) -> VertexId {
        match w.edges.first() {
            Some(&e) => self.edge_source(e),
            None => w.anchor,
        }
    }

    pub fn word_target(&self, w: &EdgeWord) -> VertexId {
        match w.edges.last() {
            Some(&e) => self.edge_target(e),
            None => w.anchor,
        }
    }

    pub fn word(&self, edges: Vec<EdgeId>) -> Result<EdgeWord, ComplexError> {
        let anchor = match edges.first() {
            Some(&e) => self.edge_source(e),
            None => return Err(ComplexError::EmptyWord),
        };
        let w = EdgeWord { anchor, edges };
        self.check_word(&w)?;
        Ok(w)
    }

    pub fn word_from_names(&self, names: &[&str]) -> Result<EdgeWord, ComplexError> {
        let edges = names
            .iter()
            .map(|n| self.edge(n).ok_or_else(|| ComplexError::UnknownId(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        self.word(edges)
    }

    fn check_word(&self, w: &EdgeWord) -> Result<(), ComplexError> {
        for i in 1..w.edges.len() {
            if self.edge_target(w.edges[i - 1]) != self.edge_source(w.edges[i]) {
                return Err(ComplexError::NotComposable(i));
            }
        }
        if let Some(&e) = w.edges.first() {
            if self.edge_source(e) != w.anchor {
                return Err(ComplexError::NotComposable(0));
            }
        }
        Ok(())
    }

    /// Concatenation `a · b`; the caller is responsible for composability,
    /// which is re-checked in debug builds.
    pub fn concat_words(&self, a: &EdgeWord, b: &EdgeWord) -> EdgeWord {
        debug_assert_eq!(self.word_target(a), self.word_source(b));
        let mut edges = a.edges.clone();
        edges.extend_from_slice(&b.edges);
        EdgeWord { anchor: if a.is_empty() { b.anchor } else { a.anchor }, edges }
    }

    pub fn subword(&self, w: &EdgeWord, start: usize, end: usize) -> EdgeWord {
        if start == end {
            let anchor = if start < w.edges.len() {
                self.edge_source(w.edges[start])
            } else if start == 0 {
                w.anchor
            } else {
                self.edge_target(w.edges[start - 1])
            };
            return EdgeWord::empty(anchor);
        }
        let edges: Vec<EdgeId> = w.edges[start..end].to_vec();
        EdgeWord { anchor: self.edge_source(edges[0]), edges }
    }

    /// Replaces `w[start..start+old_len]` by `repl`.
    pub fn splice(&self, w: &EdgeWord, start: usize, old_len: usize, repl: &EdgeWord) -> EdgeWord {
        let mut edges: Vec<EdgeId> = Vec::with_capacity(w.edges.len() - old_len + repl.len());
        edges.extend_from_slice(&w.edges[..start]);
        edges.extend_from_slice(&repl.edges);
        edges.extend_from_slice(&w.edges[start + old_len..]);
        let anchor = if edges.is_empty() { self.word_source(w) } else { self.edge_source(edges[0]) };
        EdgeWord { anchor, edges }
    }

    pub fn word_matches_at(&self, w: &EdgeWord, offset: usize, pattern: &EdgeWord) -> bool {
        offset + pattern.len() <= w.len()
            && w.edges[offset..offset + pattern.len()] == pattern.edges[..]
    }

    pub fn display_word(&self, w: &EdgeWord) -> String {
        if w.is_empty() {
            format!("(empty@{})", self.vertex_name(w.anchor))
        } else {
            w.edges.iter().map(|&e| self.edge_name(e)).collect::<Vec<_>>().join(" ")
        }
    }

    pub fn display_cell_ref(&self, c: CellRef) -> String {
        if c.negative {
            format!("{}^-1", self.cell_name(c.cell))
        } else {
            self.cell_name(c.cell).to_string()
        }
    }

    /// Internal validator for the Def 2.1-style invariants; tests call this on
    /// every constructed complex.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for cell in &self.cells {
            if cell.top.is_empty() || cell.bottom.is_empty() {
                return Err(ComplexError::EmptyCellSide(cell.name.clone()));
            }
            self.check_word(&cell.top)?;
            self.check_word(&cell.bottom)?;
            if self.word_source(&cell.top) != self.word_source(&cell.bottom)
                || self.word_target(&cell.top) != self.word_target(&cell.bottom)
            {
                return Err(ComplexError::EndpointMismatch { cell: cell.name.clone() });
            }
        }
        Ok(())
    }

    /// The complex of a semigroup presentation: one vertex, one edge per
    /// letter, one positive cell per rule.
    pub fn from_presentation(
        letters: &[&str],
        rules: &[(&str, &[&str], &[&str])],
    ) -> Result<Self, ComplexError> {
        let mut k = DirectedComplex::new();
        k.presentation_form = true;
        let v = k.add_vertex("*")?;
        for letter in letters {
            k.add_edge(letter, v, v)?;
        }
        for (name, lhs, rhs) in rules {
            if lhs.is_empty() || rhs.is_empty() {
                return Err(ComplexError::EmptyWord);
            }
            let top = k.word_from_names(lhs)?;
            let bottom = k.word_from_names(rhs)?;
            k.add_cell(name, top, bottom)?;
        }
        Ok(k)
    }

    /// Parses the line-based complex file format.
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let lines = text.lines().enumerate();
        let mut first_meaningful = None;
        for (i, raw) in text.lines().enumerate() {
            let t = strip_comment(raw).trim().to_string();
            if !t.is_empty() {
                first_meaningful = Some((i, t));
                break;
            }
        }
        if let Some((_, first)) = &first_meaningful {
            if first == "presentation" {
                return Self::parse_presentation_form(text);
            }
        }
        let mut k = DirectedComplex::new();
        let mut deferred_cells: Vec<(usize, String, Vec<String>, Vec<String>)> = Vec::new();
        let mut deferred_edges: Vec<(usize, String, String, String)> = Vec::new();
        for (lineno, raw) in lines {
            let line = strip_comment(raw).trim().to_string();
            if line.is_empty() {
                continue;
            }
            let (keyword, rest) = split_keyword(&line);
            match keyword {
                "vertex" => {
                    k.add_vertex(rest.trim())?;
                }
                "edge" => {
                    let (name, decl) = split_decl(rest, lineno + 1)?;
                    let parts: Vec<&str> = decl.split("->").map(str::trim).collect();
                    if parts.len() != 2 || parts[0].is_empty() || parts[1].is_empty() {
                        return Err(ComplexError::Syntax {
                            line: lineno + 1,
                            msg: "expected `edge <id>: <src> -> <dst>`".into(),
                        });
                    }
                    deferred_edges.push((
                        lineno + 1,
                        name.to_string(),
                        parts[0].to_string(),
                        parts[1].to_string(),
                    ));
                }
                "cell" => {
                    let (name, decl) = split_decl(rest, lineno + 1)?;
                    let sides: Vec<&str> = decl.split("=>").collect();
                    if sides.len() != 2 {
                        return Err(ComplexError::Syntax {
                            line: lineno + 1,
                            msg: "expected `cell <id>: <top...> => <bottom...>`".into(),
                        });
                    }
                    let top: Vec<String> =
                        sides[0].split_whitespace().map(str::to_string).collect();
                    let bottom: Vec<String> =
                        sides[1].split_whitespace().map(str::to_string).collect();
                    deferred_cells.push((lineno + 1, name.to_string(), top, bottom));
                }
                _ => {
                    return Err(ComplexError::Syntax {
                        line: lineno + 1,
                        msg: format!("unknown keyword `{keyword}`"),
                    });
                }
            }
        }
        // Vertices may be implicit in a one-vertex complex: if none were
        // declared, synthesize the single vertex.
        if k.vertices.is_empty() && !deferred_edges.is_empty() {
            let names: Vec<String> = deferred_edges
                .iter()
                .flat_map(|(_, _, s, t)| [s.clone(), t.clone()])
                .collect();
            let mut seen = Vec::new();
            for n in names {
                if !seen.contains(&n) {
                    seen.push(n);
                }
            }
            for n in seen {
                k.add_vertex(&n)?;
            }
        }
        for (line, name, s, t) in deferred_edges {
            let src = k
                .vertex(&s)
                .ok_or(ComplexError::Syntax { line, msg: format!("unknown vertex `{s}`") })?;
            let dst = k
                .vertex(&t)
                .ok_or(ComplexError::Syntax { line, msg: format!("unknown vertex `{t}`") })?;
            k.add_edge(&name, src, dst)?;
        }
        for (line, name, top, bottom) in deferred_cells {
            let resolve = |names: &[String]| -> Result<EdgeWord, ComplexError> {
                let edges = names
                    .iter()
                    .map(|n| {
                        k.edge(n).ok_or(ComplexError::Syntax {
                            line,
                            msg: format!("unknown edge `{n}`"),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                k.word(edges)
            };
            let top = resolve(&top)?;
            let bottom = resolve(&bottom)?;
            k.add_cell(&name, top, bottom)?;
        }
        k.validate()?;
        Ok(k)
    }

    fn parse_presentation_form(text: &str) -> Result<Self, ComplexError> {
        let mut letters: Vec<String> = Vec::new();
        let mut rules: Vec<(String, Vec<String>, Vec<String>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw).trim().to_string();
            if line.is_empty() || line == "presentation" {
                continue;
            }
            let (keyword, rest) = split_keyword(&line);
            match keyword {
                "letters:" | "letters" => {
                    let rest = rest.trim_start_matches(':').trim();
                    letters.extend(rest.split_whitespace().map(str::to_string));
                }
                "rule" => {
                    let (name, decl) = split_decl(rest, lineno + 1)?;
                    let sides: Vec<&str> = decl.split("=>").collect();
                    if sides.len() != 2 {
                        return Err(ComplexError::Syntax {
                            line: lineno + 1,
                            msg: "expected `rule <id>: <lhs...> => <rhs...>`".into(),
                        });
                    }
                    rules.push((
                        name.to_string(),
                        sides[0].split_whitespace().map(str::to_string).collect(),
                        sides[1].split_whitespace().map(str::to_string).collect(),
                    ));
                }
                _ => {
                    return Err(ComplexError::Syntax {
                        line: lineno + 1,
                        msg: format!("unknown keyword `{keyword}` in presentation form"),
                    });
                }
            }
        }
        let letter_refs: Vec<&str> = letters.iter().map(String::as_str).collect();
        let rule_refs: Vec<(&str, Vec<&str>, Vec<&str>)> = rules
            .iter()
            .map(|(n, l, r)| {
                (
                    n.as_str(),
                    l.iter().map(String::as_str).collect::<Vec<_>>(),
                    r.iter().map(String::as_str).collect::<Vec<_>>(),
                )
            })
            .collect();
        let rule_slices: Vec<(&str, &[&str], &[&str])> = rule_refs
            .iter()
            .map(|(n, l, r)| (*n, l.as_slice(), r.as_slice()))
            .collect();
        Self::from_presentation(&letter_refs, &rule_slices)
    }

    /// Deterministic serialization; parse-serialize round-trips byte-identically.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if self.presentation_form {
            out.push_str("presentation\n");
            out.push_str("letters:");
            for e in &self.edges {
                out.push(' ');
                out.push_str(&e.name);
            }
            out.push('\n');
            for c in &self.cells {
                out.push_str(&format!(
                    "rule {}: {} => {}\n",
                    c.name,
                    self.display_word(&c.top),
                    self.display_word(&c.bottom)
                ));
            }
            return out;
        }
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {}: {} -> {}\n",
                e.name,
                self.vertex_name(e.source),
                self.vertex_name(e.target)
            ));
        }
        for c in &self.cells {
            out.push_str(&format!(
                "cell {}: {} => {}\n",
                c.name,
                self.display_word(&c.top),
                self.display_word(&c.bottom)
            ));
        }
        out
    }

    /// Structural equality on normalized ids.
    pub fn structurally_equal(&self, other: &DirectedComplex) -> bool {
        self.serialize_core() == other.serialize_core()
    }

    fn serialize_core(&self) -> String {
        let mut k = self.clone();
        k.presentation_form = false;
        k.serialize()
    }

    /// Adds edge `e` with the endpoints of `u` and a positive cell `u = e`
    /// (Tietze move). Fresh ids start with `~` so they sort after user ids.
    pub fn tietze_add_edge(&self, u: &EdgeWord) -> Result<DirectedComplex, ComplexError> {
        if u.is_empty() {
            return Err(ComplexError::EmptyWord);
        }
        self.check_word(u)?;
        let mut k = self.clone();
        let edge_name = k.fresh_edge_name("~t");
        let e = k.add_edge(&edge_name, self.word_source(u), self.word_target(u))?;
        let cell_name = k.fresh_cell_name("~t");
        let e_word = EdgeWord { anchor: self.word_source(u), edges: vec![e] };
        k.add_cell(&cell_name, u.clone(), e_word)?;
        Ok(k)
    }

    /// Cuts the cell in two: removes `f`, adds a fresh edge `e` and cells
    /// `top(f) = e`, `e = bottom(f)`.
    pub fn subdivide(&self, cell: CellId) -> Result<DirectedComplex, ComplexError> {
        if cell.0 as usize >= self.cells.len() {
            return Err(ComplexError::UnknownId(format!("cell #{}", cell.0)));
        }
        let mut k = DirectedComplex::new();
        for v in &self.vertices {
            k.add_vertex(v)?;
        }
        for e in &self.edges {
            k.add_edge(&e.name, e.source, e.target)?;
        }
        let old = &self.cells[cell.0 as usize];
        let edge_name = k.fresh_edge_name(&format!("~{}", old.name));
        let e = k.add_edge(
            &edge_name,
            self.word_source(&old.top),
            self.word_target(&old.top),
        )?;
        let e_word = EdgeWord { anchor: self.word_source(&old.top), edges: vec![e] };
        for (i, c) in self.cells.iter().enumerate() {
            if i == cell.0 as usize {
                k.add_cell(&format!("{}a", old.name), c.top.clone(), e_word.clone())?;
                k.add_cell(&format!("{}b", old.name), e_word.clone(), c.bottom.clone())?;
            } else {
                k.add_cell(&c.name, c.top.clone(), c.bottom.clone())?;
            }
        }
        Ok(k)
    }

    /// Flips the orientation of the listed positive cells. Diagram groups do
    /// not depend on the orientation, so this is a free move.
    pub fn reorient(&self, flip: &[CellId]) -> DirectedComplex {
        let mut k = self.clone();
        for &c in flip {
            let cell = &mut k.cells[c.0 as usize];
            std::mem::swap(&mut cell.top, &mut cell.bottom);
        }
        k
    }

    pub fn fresh_edge_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.edge_index.contains_key(n))
    }

    pub fn fresh_cell_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.cell_index.contains_key(n))
    }

    pub fn fresh_vertex_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.vertex_index.contains_key(n))
    }

    /// ShortLex comparison of words under the fixed edge order (lexicographic
    /// on original edge id strings).
    pub fn shortlex_cmp(&self, a: &EdgeWord, b: &EdgeWord) -> std::cmp::Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            let ka: Vec<&str> = a.edges.iter().map(|&e| self.edge_name(e)).collect();
            let kb: Vec<&str> = b.edges.iter().map(|&e| self.edge_name(e)).collect();
            ka.cmp(&kb)
        })
    }
}

impl Default for DirectedComplex {
    fn default() -> Self {
        Self::new()
    }
}

fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    let mut i = 1usize;
    loop {
        let candidate = format!("{base}{i}");
        if !taken(&candidate) {
            return candidate;
        }
        i += 1;
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.find(char::is_whitespace) {
        Some(i) => (&line[..i], &line[i + 1..]),
        None => (line, ""),
    }
}

fn split_decl(rest: &str, line: usize) -> Result<(&str, &str), ComplexError> {
    match rest.find(':') {
        Some(i) => Ok((rest[..i].trim(), &rest[i + 1..])),
        None => Err(ComplexError::Syntax { line, msg: "expected `<id>: ...`".into() }),
    }
}

/// A morphism of directed 2-complexes: vertices to vertices, edges to
/// non-empty 1-paths, positive cells to diagrams over the target.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeWord>,
    pub cell_map: Vec<crate::diagram::Diagram>,
}

impl Morphism {
    pub fn identity(k: &DirectedComplex) -> Morphism {
        let vertex_map = k.vertex_ids().collect();
        let edge_map = k
            .edge_ids()
            .map(|e| EdgeWord { anchor: k.edge_source(e), edges: vec![e] })
            .collect();
        let cell_map = k
            .cell_ids()
            .map(|c| {
                let top = k.top(CellRef::positive(c)).clone();
                crate::diagram::Diagram::atomic_unchecked(top, 0, CellRef::positive(c))
            })
            .collect();
        Morphism { vertex_map, edge_map, cell_map }
    }

    pub fn map_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.0 as usize]
    }

    pub fn map_word(&self, dst: &DirectedComplex, w: &EdgeWord) -> EdgeWord {
        let mut out = EdgeWord::empty(self.map_vertex(w.anchor));
        for &e in w.edges() {
            out = dst.concat_words(&out, &self.edge_map[e.0 as usize]);
        }
        out
    }
}

/// Checks M1 (edge endpoints) and M2 (cell top/bottom compatibility); M3 is
/// automatic from sign handling.
pub fn validate_morphism(
    src: &DirectedComplex,
    dst: &DirectedComplex,
    vertex_map: Vec<VertexId>,
    edge_map: Vec<EdgeWord>,
    cell_map: Vec<crate::diagram::Diagram>,
) -> Result<Morphism, ComplexError> {
    if vertex_map.len() != src.vertex_count() {
        return Err(ComplexError::MissingAssignment("vertices".into()));
    }
    if edge_map.len() != src.edge_count() {
        return Err(ComplexError::MissingAssignment("edges".into()));
    }
    if cell_map.len() != src.cell_count() {
        return Err(ComplexError::MissingAssignment("cells".into()));
    }
    let m = Morphism { vertex_map, edge_map, cell_map };
    for e in src.edge_ids() {
        let image = &m.edge_map[e.0 as usize];
        if image.is_empty() {
            return Err(ComplexError::M1Violation(src.edge_name(e).to_string()));
        }
        dst.check_word(image)
            .map_err(|_| ComplexError::M1Violation(src.edge_name(e).to_string()))?;
        if dst.word_source(image) != m.map_vertex(src.edge_source(e))
            || dst.word_target(image) != m.map_vertex(src.edge_target(e))
        {
            return Err(ComplexError::M1Violation(src.edge_name(e).to_string()));
        }
    }
    for c in src.cell_ids() {
        let image = &m.cell_map[c.0 as usize];
        let top = m.map_word(dst, src.top(CellRef::positive(c)));
        let bottom = m.map_word(dst, src.bottom(CellRef::positive(c)));
        if image.top() != &top {
            return Err(ComplexError::M2Violation {
                cell: src.cell_name(c).to_string(),
                side: "top",
            });
        }
        if image.bottom(dst) != bottom {
            return Err(ComplexError::M2Violation {
                cell: src.cell_name(c).to_string(),
                side: "bottom",
            });
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn dunce_hat() -> DirectedComplex {
        DirectedComplex::from_presentation(&["x"], &[("f0", &["x", "x"], &["x"])]).unwrap()
    }

    #[test]
    fn dunce_hat_counts() {
        let k = dunce_hat();
        assert_eq!(k.vertex_count(), 1);
        assert_eq!(k.edge_count(), 1);
        assert_eq!(k.cell_count(), 1);
    }

    #[test]
    fn from_presentation_universal_fixture() {
        let k = DirectedComplex::from_presentation(
            &["a", "y"],
            &[("f", &["a", "y"], &["a"]), ("g", &["y", "y", "y"], &["y", "y"])],
        )
        .unwrap();
        assert_eq!(k.vertex_count(), 1);
        assert_eq!(k.edge_count(), 2);
        assert_eq!(k.cell_count(), 2);
    }

    #[test]
    fn from_presentation_no_rules() {
        let k = DirectedComplex::from_presentation(&["x"], &[]).unwrap();
        assert_eq!((k.vertex_count(), k.edge_count(), k.cell_count()), (1, 1, 0));
    }

    #[test]
    fn from_presentation_rejects_empty_side() {
        let err = DirectedComplex::from_presentation(&["x"], &[("f", &["x"], &[])]);
        assert_eq!(err.unwrap_err(), ComplexError::EmptyWord);
    }

    #[test]
    fn parse_dunce_file() {
        let text = "# the dunce hat\npresentation\nletters: x\nrule f0: x x => x\n";
        let k = DirectedComplex::parse(text).unwrap();
        assert_eq!((k.vertex_count(), k.edge_count(), k.cell_count()), (1, 1, 1));
    }

    #[test]
    fn parse_serialize_roundtrip() {
        let text = "vertex p\nvertex q\nedge x: p -> q\nedge y: p -> q\n\
                    cell f: x => y\n";
        let k = DirectedComplex::parse(text).unwrap();
        let s1 = k.serialize();
        let k2 = DirectedComplex::parse(&s1).unwrap();
        assert_eq!(s1, k2.serialize());
    }

    #[test]
    fn parse_endpoint_mismatch() {
        let text = "vertex p\nvertex q\nedge x: p -> q\nedge y: q -> p\n\
                    cell g: x => y\n";
        let err = DirectedComplex::parse(text).unwrap_err();
        assert_eq!(err, ComplexError::EndpointMismatch { cell: "g".into() });
    }

    #[test]
    fn parse_duplicate_id() {
        let text = "presentation\nletters: x x\n";
        assert_eq!(DirectedComplex::parse(text).unwrap_err(), ComplexError::DuplicateId("x".into()));
    }

    #[test]
    fn parse_syntax_error_carries_line() {
        let text = "presentation\nletters: x\nrule f0 x x => x\n";
        match DirectedComplex::parse(text).unwrap_err() {
            ComplexError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn subdivide_dunce_counts() {
        let k = dunce_hat();
        let k2 = k.subdivide(k.cell("f0").unwrap()).unwrap();
        assert_eq!((k2.vertex_count(), k2.edge_count(), k2.cell_count()), (1, 2, 2));
        k2.validate().unwrap();
    }

    #[test]
    fn tietze_add_edge_counts() {
        let k = dunce_hat();
        let x = k.edge("x").unwrap();
        let u = k.word(vec![x, x]).unwrap();
        let k2 = k.tietze_add_edge(&u).unwrap();
        assert_eq!((k2.vertex_count(), k2.edge_count(), k2.cell_count()), (1, 2, 2));
        k2.validate().unwrap();
    }

    #[test]
    fn tietze_rejects_empty() {
        let k = dunce_hat();
        let empty = EdgeWord::empty(VertexId(0));
        assert_eq!(k.tietze_add_edge(&empty).unwrap_err(), ComplexError::EmptyWord);
    }

    #[test]
    fn shortlex_on_id_strings() {
        let k = DirectedComplex::from_presentation(&["a", "b"], &[]).unwrap();
        let a = k.word_from_names(&["a"]).unwrap();
        let b = k.word_from_names(&["b"]).unwrap();
        let ab = k.word_from_names(&["a", "b"]).unwrap();
        assert_eq!(k.shortlex_cmp(&a, &b), std::cmp::Ordering::Less);
        assert_eq!(k.shortlex_cmp(&ab, &b), std::cmp::Ordering::Greater);
    }
}
