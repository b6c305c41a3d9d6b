//! Integer homology of diagram groups of complete complexes: Betti numbers
//! by essential-cube counting over the class-semigroup automaton, exact
//! rational Poincaré series by state elimination, the cubical boundary map,
//! the chain retraction onto essential cubes, and geometric dimension.
//!
//! All arithmetic is exact (big integers and integer-coefficient rational
//! functions); series equality is literal.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{CellId, CellRef, DirectedComplex, EdgeWord};
use crate::rewriting::{self, ReductionView, RewritingError};
use crate::squier::{classify_cube, CubeClass, Forest, SquierError, ThinCube};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("not almost 2-path connected within bounds (more than {0} classes)")]
    NotAlmostConnected(usize),
    #[error("boundary of a 0-cube is not defined")]
    DimensionZero,
    #[error("{0}")]
    Squier(#[from] SquierError),
    #[error("{0}")]
    Rewriting(#[from] RewritingError),
}

// ---------------------------------------------------------------------------
// Exact polynomials and rational functions
// ---------------------------------------------------------------------------

/// Integer polynomial, coefficients in ascending degree order, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(coeffs: Vec<BigInt>) -> Poly {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Poly {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = num_integer::gcd(g, c.clone());
        }
        g
    }

    fn primitive(&self) -> Poly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Poly::new(self.0.iter().map(|a| a / &c).collect())
    }

    /// Exact division; panics if not divisible (internal use after gcd).
    fn div_exact(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut rem = self.0.clone();
        let lc = other.0.last().expect("division by zero polynomial");
        let dlen = other.0.len();
        let mut quot = vec![BigInt::zero(); rem.len() + 1 - dlen];
        for i in (0..quot.len()).rev() {
            let top = rem[i + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = &top / lc;
            debug_assert_eq!(&q * lc, top);
            quot[i] = q.clone();
            for (j, b) in other.0.iter().enumerate() {
                rem[i + j] -= &q * b;
            }
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()));
        Poly::new(quot)
    }

    /// Pseudo-remainder of `self` by `other`.
    fn prem(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        let lc = other.0.last().expect("division by zero polynomial").clone();
        let d = other.0.len();
        while !r.is_zero() && r.0.len() >= d {
            let shift = r.0.len() - d;
            let top = r.0.last().unwrap().clone();
            // lc * r - top * t^shift * other
            let mut scaled = r.scale(&lc);
            for (j, b) in other.0.iter().enumerate() {
                scaled.0[shift + j] -= &top * b;
            }
            scaled.trim();
            r = scaled;
        }
        r
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return normalize_sign(other.primitive());
        }
        if other.is_zero() {
            return normalize_sign(self.primitive());
        }
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.0.len() < b.0.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        normalize_sign(a.primitive())
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = match i {
                0 => format!("{mag}"),
                1 if mag.is_one() => var.to_string(),
                1 => format!("{mag}{var}"),
                _ if mag.is_one() => format!("{var}^{i}"),
                _ => format!("{mag}{var}^{i}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{term}") } else { term });
            } else if c.is_negative() {
                parts.push(format!("-{term}"));
            } else {
                parts.push(format!("+{term}"));
            }
        }
        parts.concat()
    }
}

fn normalize_sign(p: Poly) -> Poly {
    match p.0.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// A quotient of integer polynomials, normalized: common polynomial factor
/// removed, joint integer content 1, denominator constant term positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> RationalFunction {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RationalFunction { num, den };
        r.normalize();
        r
    }

    pub fn zero() -> RationalFunction {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RationalFunction {
        RationalFunction { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_zero() && g != Poly::one() {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        let c = num_integer::gcd(self.num.content(), self.den.content());
        if !c.is_zero() && !c.is_one() {
            self.num = Poly::new(self.num.0.iter().map(|a| a / &c).collect());
            self.den = Poly::new(self.den.0.iter().map(|a| a / &c).collect());
        }
        let lead = self.den.0.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigInt::one);
        if lead.is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RationalFunction) -> RationalFunction {
        assert!(!other.is_zero(), "division by zero rational function");
        RationalFunction::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Taylor coefficients at 0; requires an invertible constant term.
    pub fn taylor(&self, n: usize) -> Vec<BigInt> {
        let d0 = self.den.coeff(0);
        assert!(!d0.is_zero(), "denominator vanishes at 0");
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.num.coeff(i);
            for j in 1..=i {
                acc -= self.den.coeff(j) * &out[i - j];
            }
            let (q, r) = num_integer::div_rem(acc, d0.clone());
            assert!(r.is_zero(), "series has non-integer coefficients");
            out.push(q);
        }
        out
    }

    pub fn display(&self, var: &str) -> String {
        format!("({})/({})", self.num.display(var), self.den.display(var))
    }
}

// ---------------------------------------------------------------------------
// Class semigroup and counting automaton
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct ClassBounds {
    pub max_elements: usize,
}

impl Default for ClassBounds {
    fn default() -> Self {
        ClassBounds { max_elements: 4096 }
    }
}

/// Irreducible 1-paths (one empty word per vertex) with product
/// `p · q = irr(pq)` when composable; incomposable products are the
/// absorbing zero, represented as `None`.
#[derive(Debug, Clone)]
pub struct ClassSemigroup {
    pub reps: Vec<EdgeWord>,
    index: HashMap<EdgeWord, usize>,
    table: Vec<Vec<Option<usize>>>,
}

impl ClassSemigroup {
    pub fn build(k: &DirectedComplex, bounds: ClassBounds) -> Result<ClassSemigroup, HomologyError> {
        let view = ReductionView::new(k);
        let mut reps: Vec<EdgeWord> = Vec::new();
        for v in k.vertex_ids() {
            reps.push(EdgeWord::empty(v));
        }
        for e in k.edge_ids() {
            let w = k.word(vec![e]).expect("single edge word");
            let r = view.irr(&w, rewriting::DEFAULT_BUDGET)?;
            if !reps.contains(&r) {
                reps.push(r);
            }
        }
        // Closure under the product.
        let mut i = 0;
        while i < reps.len() {
            let mut j = 0;
            while j < reps.len() {
                let (a, b) = (reps[i].clone(), reps[j].clone());
                if k.word_target(&a) == k.word_source(&b) {
                    let prod = view.irr(&k.concat_words(&a, &b), rewriting::DEFAULT_BUDGET)?;
                    if !reps.contains(&prod) {
                        if reps.len() >= bounds.max_elements {
                            return Err(HomologyError::NotAlmostConnected(bounds.max_elements));
                        }
                        reps.push(prod);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        reps.sort_by(|a, b| k.shortlex_cmp(a, b));
        let index: HashMap<EdgeWord, usize> =
            reps.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut table = vec![vec![None; reps.len()]; reps.len()];
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                if k.word_target(a) == k.word_source(b) {
                    let prod = view.irr(&k.concat_words(a, b), rewriting::DEFAULT_BUDGET)?;
                    table[i][j] = Some(index[&prod]);
                }
            }
        }
        Ok(ClassSemigroup { reps, index, table })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }

    pub fn class_of(
        &self,
        view: &ReductionView,
        w: &EdgeWord,
    ) -> Result<usize, HomologyError> {
        let r = view.irr(w, rewriting::DEFAULT_BUDGET)?;
        Ok(*self.index.get(&r).expect("class semigroup is closed under products"))
    }

    /// Exhaustive associativity check, used by tests.
    pub fn check_associative(&self) -> bool {
        let n = self.reps.len();
        let get = |x: Option<usize>, y: usize| x.and_then(|x| self.table[x][y]);
        let get2 = |x: usize, y: Option<usize>| y.and_then(|y| self.table[x][y]);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if get(self.table[a][b], c) != get2(a, self.table[b][c]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A pair letter `(u, f)` of the counting language: `u` irreducible, `f` a
/// negative cell, the edge `(u, f, *)` outside the left forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub context: usize,
    pub cell: CellId,
    pub image: usize,
}

/// The deterministic automaton whose accepted words of length n+1 are the
/// essential n-cubes of the component of the target class.
#[derive(Debug, Clone)]
pub struct CountAutomaton {
    pub semigroup: ClassSemigroup,
    pub letters: Vec<Letter>,
    pub target: usize,
}

impl CountAutomaton {
    pub fn build(
        k: &DirectedComplex,
        w: &EdgeWord,
        tl: &Forest,
        bounds: ClassBounds,
    ) -> Result<CountAutomaton, HomologyError> {
        let view = ReductionView::new(k);
        let semigroup = ClassSemigroup::build(k, bounds)?;
        let target = semigroup.class_of(&view, w)?;
        let mut letters = Vec::new();
        for (u_idx, u) in semigroup.reps.iter().enumerate() {
            for c in k.cell_ids() {
                let neg = CellRef::negative(c);
                if k.word_target(u) != k.word_source(k.top(neg)) {
                    continue;
                }
                if tl.contains(k, &view, u, c) {
                    continue;
                }
                let image_word = k.concat_words(u, k.top(neg));
                let image = semigroup.class_of(&view, &image_word)?;
                letters.push(Letter { context: u_idx, cell: c, image });
            }
        }
        Ok(CountAutomaton { semigroup, letters, target })
    }

    /// Number of final letters accepted from a state.
    fn final_count(&self, s: usize) -> usize {
        (0..self.semigroup.len())
            .filter(|&p| self.semigroup.product(s, p) == Some(self.target))
            .count()
    }

    /// Rank of the n-th homology: accepted words with n pair letters.
    pub fn count(&self, n: usize) -> BigInt {
        if n == 0 {
            return BigInt::one();
        }
        let m = self.semigroup.len();
        let mut reach = vec![BigInt::zero(); m];
        for l in &self.letters {
            reach[l.image] += 1;
        }
        for _ in 1..n {
            let mut next = vec![BigInt::zero(); m];
            for (s, c) in reach.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for l in &self.letters {
                    if let Some(t) = self.semigroup.product(s, l.image) {
                        next[t] += c;
                    }
                }
            }
            reach = next;
        }
        let mut out = BigInt::zero();
        for (s, c) in reach.iter().enumerate() {
            if !c.is_zero() {
                out += c * BigInt::from(self.final_count(s));
            }
        }
        out
    }

    /// Exact Poincaré series by solving `(I - tM) x = finals` over the
    /// rational-function field; the start row yields the series. This is an
    /// independent route from [`CountAutomaton::count`].
    pub fn poincare_series(&self) -> RationalFunction {
        let m = self.semigroup.len();
        let n = m + 1; // extra start state, index m
        let t = Poly::from_i64(&[0, 1]);
        // Transition counts.
        let mut trans = vec![vec![0i64; n]; n];
        for l in &self.letters {
            trans[m][l.image] += 1;
            for (s, row) in trans.iter_mut().enumerate().take(m) {
                if let Some(tgt) = self.semigroup.product(s, l.image) {
                    row[tgt] += 1;
                }
            }
        }
        // A = I - t M, b = finals (with 1 for the start: the single-letter word).
        let mut a: Vec<Vec<RationalFunction>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut p = Poly::constant(BigInt::from(-trans[i][j])).mul(&t);
                        if i == j {
                            p = p.add(&Poly::one());
                        }
                        RationalFunction::from_poly(p)
                    })
                    .collect()
            })
            .collect();
        let mut b: Vec<RationalFunction> = (0..n)
            .map(|i| {
                let f = if i == m { 1 } else { self.final_count(i) as i64 };
                RationalFunction::from_poly(Poly::from_i64(&[f]))
            })
            .collect();
        // Gaussian elimination.
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("I - tM is invertible");
            a.swap(col, pivot);
            b.swap(col, pivot);
            let inv = a[col][col].clone();
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].div(&inv);
                #[allow(clippy::needless_range_loop)]
                for c in col..n {
                    let delta = factor.mul(&a[col][c]);
                    a[r][c] = a[r][c].sub(&delta);
                }
                let delta = factor.mul(&b[col]);
                b[r] = b[r].sub(&delta);
            }
        }
        b[m].div(&a[m][m])
    }

    /// Essential n-cubes themselves, in deterministic order.
    pub fn essential_cubes(&self, _k: &DirectedComplex, n: usize) -> Vec<ThinCube> {
        let mut out = Vec::new();
        let mut stack: Vec<(Option<usize>, Vec<Letter>)> = vec![(None, Vec::new())];
        // Depth-first over letter sequences of length n.
        while let Some((state, prefix)) = stack.pop() {
            if prefix.len() == n {
                for (p, rep) in self.semigroup.reps.iter().enumerate() {
                    let accept = match state {
                        None => p == self.target,
                        Some(s) => self.semigroup.product(s, p) == Some(self.target),
                    };
                    if accept {
                        let mut segments: Vec<EdgeWord> = prefix
                            .iter()
                            .map(|l| self.semigroup.reps[l.context].clone())
                            .collect();
                        segments.push(rep.clone());
                        let cells =
                            prefix.iter().map(|l| CellRef::negative(l.cell)).collect();
                        out.push(ThinCube { segments, cells });
                    }
                }
                continue;
            }
            for l in self.letters.iter().rev() {
                let next = match state {
                    None => Some(l.image),
                    Some(s) => self.semigroup.product(s, l.image),
                };
                if let Some(next) = next {
                    let mut p = prefix.clone();
                    p.push(*l);
                    stack.push((Some(next), p));
                }
            }
        }
        out
    }

    /// Geometric dimension: the largest n with a nonzero essential-cube
    /// count. Infinite exactly when the reachable, co-reachable part of the
    /// letter graph has a cycle.
    pub fn geometric_dimension(&self, n_max: usize) -> (Dimension, bool) {
        let m = self.semigroup.len();
        let accepting: Vec<bool> = (0..m).map(|s| self.final_count(s) > 0).collect();
        // Reachability from the (virtual) start.
        let mut reach = vec![false; m];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for l in &self.letters {
            if !reach[l.image] {
                reach[l.image] = true;
                queue.push_back(l.image);
            }
        }
        while let Some(s) = queue.pop_front() {
            for l in &self.letters {
                if let Some(t) = self.semigroup.product(s, l.image) {
                    if !reach[t] {
                        reach[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        // Co-reachability towards acceptance (zero or more further letters).
        let mut co = accepting.clone();
        loop {
            let mut changed = false;
            #[allow(clippy::needless_range_loop)]
            for s in 0..m {
                if co[s] {
                    continue;
                }
                for l in &self.letters {
                    if self.semigroup.product(s, l.image).map(|t| co[t]) == Some(true) {
                        co[s] = true;
                        changed = true;
                        break;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let live: Vec<bool> = (0..m).map(|s| reach[s] && co[s]).collect();
        // Cycle detection and longest path on the live subgraph.
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        let succ = |s: usize| -> Vec<usize> {
            let mut v: Vec<usize> = self
                .letters
                .iter()
                .filter_map(|l| self.semigroup.product(s, l.image))
                .filter(|&t| live[t])
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut marks = vec![Mark::White; m];
        let mut longest: Vec<Option<usize>> = vec![None; m];
        // Longest path (in letters) from s to an accepting state; None while
        // unvisited. Recursive DFS with cycle detection.
        fn dfs(
            s: usize,
            marks: &mut Vec<Mark>,
            longest: &mut Vec<Option<usize>>,
            succ: &dyn Fn(usize) -> Vec<usize>,
            accepting: &[bool],
        ) -> Result<usize, ()> {
            match marks[s] {
                Mark::Grey => return Err(()), // cycle
                Mark::Black => return Ok(longest[s].unwrap()),
                Mark::White => {}
            }
            marks[s] = Mark::Grey;
            let mut best = 0usize;
            debug_assert!(accepting[s] || !succ(s).is_empty());
            for t in succ(s) {
                let sub = dfs(t, marks, longest, succ, accepting)?;
                best = best.max(1 + sub);
            }
            marks[s] = Mark::Black;
            longest[s] = Some(best);
            Ok(best)
        }
        let mut best = 0usize;
        for l in &self.letters {
            if !live[l.image] {
                continue;
            }
            match dfs(l.image, &mut marks, &mut longest, &succ, &accepting) {
                Err(()) => return (Dimension::Infinite, true),
                Ok(depth) => best = best.max(1 + depth),
            }
        }
        if best > n_max {
            (Dimension::Finite(n_max), false)
        } else {
            (Dimension::Finite(best), true)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "infinite"),
        }
    }
}

// ---------------------------------------------------------------------------
// Top-level homology operations
// ---------------------------------------------------------------------------

pub fn class_semigroup(
    k: &DirectedComplex,
    bounds: ClassBounds,
) -> Result<ClassSemigroup, HomologyError> {
    ClassSemigroup::build(k, bounds)
}

/// Rank of H_n(D(K, w); Z) for a complete complex with finite class
/// semigroup; r_0 = 1 for every non-empty base.
pub fn betti(k: &DirectedComplex, w: &EdgeWord, n: usize) -> Result<BigInt, HomologyError> {
    let tl = Forest::derive(k, crate::squier::ForestKind::Left)?;
    let automaton = CountAutomaton::build(k, w, &tl, ClassBounds::default())?;
    Ok(automaton.count(n))
}

pub fn poincare_series(
    k: &DirectedComplex,
    w: &EdgeWord,
) -> Result<RationalFunction, HomologyError> {
    let tl = Forest::derive(k, crate::squier::ForestKind::Left)?;
    let automaton = CountAutomaton::build(k, w, &tl, ClassBounds::default())?;
    Ok(automaton.poincare_series())
}

pub fn geometric_dimension(
    k: &DirectedComplex,
    w: &EdgeWord,
    n_max: usize,
) -> Result<(Dimension, bool), HomologyError> {
    let tl = Forest::derive(k, crate::squier::ForestKind::Left)?;
    let automaton = CountAutomaton::build(k, w, &tl, ClassBounds::default())?;
    Ok(automaton.geometric_dimension(n_max))
}

/// A formal integer combination of cubes, sorted and combined.
pub type Chain = Vec<(ThinCube, BigInt)>;

fn chain_add(chain: &mut Chain, cube: ThinCube, coeff: BigInt) {
    match chain.binary_search_by(|(c, _)| c.cmp(&cube)) {
        Ok(i) => {
            chain[i].1 += coeff;
            if chain[i].1.is_zero() {
                chain.remove(i);
            }
        }
        Err(i) => {
            if !coeff.is_zero() {
                chain.insert(i, (cube, coeff));
            }
        }
    }
}

/// The cubical boundary: ∂(c) = Σᵢ (−1)ⁱ (topᵢ(c) − botᵢ(c)).
pub fn boundary(k: &DirectedComplex, c: &ThinCube) -> Result<Chain, HomologyError> {
    if c.dim() == 0 {
        return Err(HomologyError::DimensionZero);
    }
    let mut chain: Chain = Vec::new();
    for i in 1..=c.dim() {
        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let top = crate::squier::cube_face(k, c, i, crate::squier::FaceSide::Top)?;
        let bot = crate::squier::cube_face(k, c, i, crate::squier::FaceSide::Bottom)?;
        chain_add(&mut chain, top, sign.clone());
        chain_add(&mut chain, bot, -sign);
    }
    Ok(chain)
}

/// The chain retraction onto essential cubes: φ(c) = c̄ when c̄ (all
/// segments made irreducible) is essential, 0 when it is collapsible.
pub fn phi(
    k: &DirectedComplex,
    view: &ReductionView,
    tl: &Forest,
    c: &ThinCube,
) -> Result<Option<ThinCube>, HomologyError> {
    let mut segments = Vec::with_capacity(c.segments.len());
    for s in &c.segments {
        segments.push(view.irr(s, rewriting::DEFAULT_BUDGET)?);
    }
    let bar = ThinCube { segments, cells: c.cells.clone() };
    match classify_cube(k, view, tl, &bar)? {
        CubeClass::Essential => Ok(Some(bar)),
        CubeClass::Collapsible { .. } => Ok(None),
        CubeClass::Redundant { .. } => {
            unreachable!("a cube with irreducible segments cannot be redundant")
        }
    }
}

/// φ applied to a chain.
pub fn phi_chain(
    k: &DirectedComplex,
    view: &ReductionView,
    tl: &Forest,
    chain: &Chain,
) -> Result<Chain, HomologyError> {
    let mut out: Chain = Vec::new();
    for (cube, coeff) in chain {
        if let Some(bar) = phi(k, view, tl, cube)? {
            chain_add(&mut out, bar, coeff.clone());
        }
    }
    Ok(out)
}
