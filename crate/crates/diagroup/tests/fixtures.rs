//! Fixture tests drawn from the worked examples: explicit morphisms between
//! the universal complexes, transport of generators, rewriting invariants,
//! and the expert forest override.

mod common;

use common::*;
use diagroup::complex::{validate_morphism, CellRef, ComplexError, DirectedComplex, EdgeWord, Morphism};
use diagroup::diagram::{self, AtomicStep, Diagram};
use diagroup::enumerate::{self, Rng};
use diagroup::presentation::{self, Triple};
use diagroup::rewriting::{self, Confluence, ReductionView};
use diagroup::squier::{self, Forest, ForestKind, Limits};

fn atomic_image(k: &DirectedComplex, cell: &str) -> Diagram {
    let c = CellRef::positive(k.cell(cell).unwrap());
    Diagram::atomic_unchecked(k.top(c).clone(), 0, c)
}

#[test]
fn identity_morphism_validates_on_fixtures() {
    for k in [dunce(), v_complex(), ay_complex(), sphere_chain(3)] {
        let id = Morphism::identity(&k);
        validate_morphism(&k, &k, id.vertex_map, id.edge_map, id.cell_map).unwrap();
    }
}

#[test]
fn loop_to_open_path_violates_m1() {
    let k = dunce();
    let dst = DirectedComplex::parse("vertex p\nvertex q\nedge z: p -> q\n").unwrap();
    let z = dst.word_from_names(&["z"]).unwrap();
    let err = validate_morphism(
        &k,
        &dst,
        vec![dst.vertex("p").unwrap()],
        vec![z.clone()],
        vec![Diagram::trivial(z)],
    )
    .unwrap_err();
    assert_eq!(err, ComplexError::M1Violation("x".into()));
}

#[test]
fn wrong_cell_image_violates_m2() {
    let k = dunce();
    // Map the cell to the trivial diagram on x^2: bottom is x^2, not x.
    let x2 = k.word_from_names(&["x", "x"]).unwrap();
    let err = validate_morphism(
        &k,
        &k,
        vec![k.vertex("*").unwrap()],
        vec![k.word_from_names(&["x"]).unwrap()],
        vec![Diagram::trivial(x2)],
    )
    .unwrap_err();
    assert!(matches!(err, ComplexError::M2Violation { .. }));
}

#[test]
fn nested_sphere_image_gives_three_cells() {
    // A morphism sending the last sphere to f1 f2 f1 (the nesting pattern
    // that embeds infinitely many spheres into two).
    let k = h_n(2);
    let x = k.word_from_names(&["x"]).unwrap();
    let f1 = CellRef::positive(k.cell("f1").unwrap());
    let f2 = CellRef::positive(k.cell("f2").unwrap());
    let nested = Diagram::from_steps(
        &k,
        x.clone(),
        vec![
            AtomicStep { offset: 0, cell: f1 },
            AtomicStep { offset: 0, cell: f2 },
            AtomicStep { offset: 0, cell: f1 },
        ],
    )
    .unwrap();
    let m = validate_morphism(
        &k,
        &k,
        vec![k.vertex("*").unwrap()],
        vec![x.clone()],
        vec![atomic_image(&k, "f0"), atomic_image(&k, "f1"), nested],
    )
    .unwrap();
    let d = diagram::atomic(&k, &EdgeWord::empty(k.vertex("*").unwrap()), f2, &EdgeWord::empty(k.vertex("*").unwrap()))
        .unwrap();
    let image = diagram::substitute(&k, &k, &d, &m).unwrap();
    assert_eq!(image.cell_count(), 3);
    let labels: Vec<CellRef> = image.steps().iter().map(|s| s.cell).collect();
    assert_eq!(labels, vec![f1, f2, f1]);
}

#[test]
fn substitute_by_identity_is_canonical() {
    let k = dunce();
    let id = Morphism::identity(&k);
    let mut rng = Rng::new(23);
    for _ in 0..20 {
        let d = enumerate::random_two_path(&k, &xw(&k, 2), 5, 9, &mut rng);
        assert_eq!(diagram::substitute(&k, &k, &d, &id).unwrap(), diagram::canonical(&k, &d));
    }
}

#[test]
fn substitution_is_functorial_for_concat() {
    let k = dunce();
    let id = Morphism::identity(&k);
    let mut rng = Rng::new(29);
    for _ in 0..20 {
        let d1 = enumerate::random_two_path(&k, &xw(&k, 2), 3, 8, &mut rng);
        let d2 = enumerate::random_two_path(&k, &d1.bottom(&k), 3, 8, &mut rng);
        let cat = diagram::concat(&k, &d1, &d2).unwrap();
        let lhs = diagram::substitute(&k, &k, &cat, &id).unwrap();
        let rhs = diagram::concat(
            &k,
            &diagram::substitute(&k, &k, &d1, &id).unwrap(),
            &diagram::substitute(&k, &k, &d2, &id).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }
}

/// The explicit embedding of the two-cell universal complex into the
/// one-sphere one: x -> x, f1 -> f1 a f1, f2 -> f1 f1 a f1 f1 with `a` a
/// nontrivial reduced (x, x)-diagram over the Dunce-hat part.
#[test]
fn sphere_squaring_morphism_preserves_nontriviality() {
    let src = h_n(2);
    let dst = h_n(1);
    let x_src = src.word_from_names(&["x"]).unwrap();
    let x = dst.word_from_names(&["x"]).unwrap();
    let tl = Forest::derive(&dst, ForestKind::Left).unwrap();
    let f0 = dst.cell("f0").unwrap();
    let a = presentation::generator_diagram(
        &dst,
        &tl,
        &Triple { u: x.clone(), cell: f0, v: EdgeWord::empty(dst.vertex("*").unwrap()) },
    )
    .unwrap();
    let f1d = atomic_image(&dst, "f1");
    let word = |parts: &[&Diagram]| -> Diagram {
        let mut acc = Diagram::trivial(x.clone());
        for p in parts {
            acc = diagram::concat(&dst, &acc, p).unwrap();
        }
        acc
    };
    let f1_image = word(&[&f1d, &a, &f1d]);
    let f2_image = word(&[&f1d, &f1d, &a, &f1d, &f1d]);
    let m = validate_morphism(
        &src,
        &dst,
        vec![dst.vertex("*").unwrap()],
        vec![x.clone()],
        vec![atomic_image(&dst, "f0"), f1_image, f2_image],
    )
    .unwrap();
    let mut rng = Rng::new(99);
    let mut checked = 0;
    while checked < 20 {
        let d = enumerate::random_spherical(&src, &x_src, 4, 8, &mut rng);
        if d.is_trivial() || d.cell_count() > 4 {
            continue;
        }
        checked += 1;
        let image = diagram::substitute(&src, &dst, &d, &m).unwrap();
        let reduced = diagram::reduce(&dst, &image);
        assert!(!reduced.is_trivial(), "image collapsed for {:?}", d.steps());
    }
}

/// The explicit morphism from the two-cell universal complex onto the
/// y^3 = y^2 complex: x -> y^4, the Dunce cell to a six-cell
/// (y^8, y^4)-diagram, the sphere to a two-cell (y^4, y^4)-diagram.
#[test]
fn morphism_onto_v_validates_and_spot_checks_nonsingular() {
    let src = h_n(1);
    let dst = v_complex();
    let g = CellRef::positive(dst.cell("g").unwrap());
    let gneg = g.inverse();
    let y = dst.edge("y").unwrap();
    let yw = |n: usize| dst.word(vec![y; n]).unwrap();
    let alpha = Diagram::from_steps(
        &dst,
        yw(8),
        vec![
            AtomicStep { offset: 3, cell: gneg },
            AtomicStep { offset: 1, cell: g },
            AtomicStep { offset: 4, cell: g },
            AtomicStep { offset: 0, cell: g },
            AtomicStep { offset: 3, cell: g },
            AtomicStep { offset: 1, cell: g },
        ],
    )
    .unwrap();
    assert_eq!(alpha.bottom(&dst), yw(4));
    let beta = Diagram::from_steps(
        &dst,
        yw(4),
        vec![AtomicStep { offset: 0, cell: g }, AtomicStep { offset: 1, cell: gneg }],
    )
    .unwrap();
    assert_eq!(beta.bottom(&dst), yw(4));
    let m = validate_morphism(
        &src,
        &dst,
        vec![dst.vertex("*").unwrap()],
        vec![yw(4)],
        vec![alpha, beta],
    )
    .unwrap();
    let x = src.word_from_names(&["x"]).unwrap();
    let mut rng = Rng::new(3);
    let mut checked = 0;
    while checked < 10 {
        let d = enumerate::random_spherical(&src, &x, 4, 8, &mut rng);
        if d.is_trivial() {
            continue;
        }
        checked += 1;
        let image = diagram::substitute(&src, &dst, &d, &m).unwrap();
        assert!(!diagram::reduce(&dst, &image).is_trivial());
    }
}

#[test]
fn f_relations_transport_to_base_x_squared() {
    // Conjugating the generators to base x^2 preserves the defining
    // relations as diagram equalities.
    let k = dunce();
    let x = k.word_from_names(&["x"]).unwrap();
    let tl = Forest::derive(&k, ForestKind::Left).unwrap();
    let pres = presentation::minimal_presentation(
        &k,
        &x,
        Limits { max_word_len: 6, max_vertices: 256 },
    )
    .unwrap();
    // g: an (x, x^2)-diagram.
    let g = Diagram::from_steps(
        &k,
        x,
        vec![AtomicStep { offset: 0, cell: CellRef::negative(k.cell("f0").unwrap()) }],
    )
    .unwrap();
    let transported: Vec<Diagram> = pres
        .generators
        .iter()
        .map(|t| {
            let d = presentation::generator_diagram(&k, &tl, t).unwrap();
            diagram::transport(&k, &d, &g).unwrap()
        })
        .collect();
    let x2 = k.word_from_names(&["x", "x"]).unwrap();
    let eval = |word: &presentation::GroupWord| -> Diagram {
        let mut acc = Diagram::trivial(x2.clone());
        for &(gi, inv) in word {
            let d = if inv {
                diagram::inverse(&k, &transported[gi])
            } else {
                transported[gi].clone()
            };
            acc = diagram::mult(&k, &acc, &d).unwrap();
        }
        acc
    };
    for rel in &pres.relations {
        assert_eq!(eval(&rel.lhs), eval(&rel.rhs));
    }
}

#[test]
fn irreducible_forms_are_strategy_independent_on_complete_fixtures() {
    for (k, max_len) in [(dunce(), 6usize), (v_complex(), 6), (ay_complex(), 6)] {
        assert!(matches!(rewriting::confluence_check(&k), Ok(Confluence::Confluent)));
        let view = ReductionView::new(&k);
        let words = rewriting::enumerate_words(&k, max_len, 100_000).unwrap();
        for w in words {
            let irreducibles: Vec<EdgeWord> = rewriting::reduction_reachable(&k, &w, max_len)
                .into_iter()
                .filter(|u| view.is_irreducible(u))
                .collect();
            assert!(irreducibles.len() <= 1, "two normal forms for {}", k.display_word(&w));
            if let Some(first) = irreducibles.first() {
                assert_eq!(*first, view.irr(&w, 10_000).unwrap());
            }
        }
    }
}

#[test]
fn homotopic_words_share_irreducible_forms() {
    // 100 random homotopic pairs, generated by random diagrams.
    let k = v_complex();
    let view = ReductionView::new(&k);
    let y = k.edge("y").unwrap();
    let mut rng = Rng::new(11);
    for i in 0..100 {
        let top = k.word(vec![y; 2 + (i % 3)]).unwrap();
        let d = enumerate::random_two_path(&k, &top, 5, 9, &mut rng);
        let bottom = d.bottom(&k);
        assert_eq!(view.irr(&top, 10_000).unwrap(), view.irr(&bottom, 10_000).unwrap());
    }
}

#[test]
fn derived_forests_span_fixture_components() {
    for (k, base, len) in [
        (v_complex(), vec!["y", "y"], 7usize),
        (ay_complex(), vec!["a"], 7),
        (h_n(1), vec!["x"], 6),
    ] {
        let w = k.word_from_names(&base).unwrap();
        let comp = squier::component(
            &k,
            &w,
            Limits { max_word_len: len, max_vertices: 4096 },
        )
        .unwrap();
        for kind in [ForestKind::Left, ForestKind::Right] {
            let forest = Forest::derive(&k, kind).unwrap();
            squier::verify_forest_on_component(&k, &comp, &forest).unwrap();
        }
    }
}

#[test]
fn user_forest_is_validated_and_classification_reports_gaps() {
    // The hand forest for the non-confluent ab=a, ba=b complex: pairs
    // (e, f^-1), (a, g^-1), (e, g^-1), (b, f^-1).
    let k = DirectedComplex::from_presentation(
        &["a", "b"],
        &[("f", &["a", "b"], &["a"]), ("g", &["b", "a"], &["b"])],
    )
    .unwrap();
    let f = k.cell("f").unwrap();
    let g = k.cell("g").unwrap();
    let e = EdgeWord::empty(k.vertex("*").unwrap());
    let a = k.word_from_names(&["a"]).unwrap();
    let b = k.word_from_names(&["b"]).unwrap();
    let tl = Forest::from_pairs(
        &k,
        ForestKind::Left,
        vec![(e.clone(), f), (a.clone(), g), (e.clone(), g), (b.clone(), f)],
    )
    .unwrap();
    // F1 rejects reducible contexts.
    let ab = k.word_from_names(&["a", "b"]).unwrap();
    assert!(matches!(
        Forest::from_pairs(&k, ForestKind::Left, vec![(ab, f)]),
        Err(squier::SquierError::F1Violation(_))
    ));
    // Classification works where the forest assigns an edge...
    let view = ReductionView::new(&k);
    let cube = squier::ThinCube {
        segments: vec![k.word_from_names(&["a", "b"]).unwrap(), e.clone()],
        cells: vec![CellRef::negative(f)],
    };
    assert!(matches!(
        squier::classify_cube(&k, &view, &tl, &cube),
        Ok(squier::CubeClass::Redundant { .. })
    ));
    // ... and reports the gap where it does not ("aab" has no assigned edge).
    let aab = k.word_from_names(&["a", "a", "b"]).unwrap();
    let cube = squier::ThinCube { segments: vec![aab, e], cells: vec![CellRef::negative(f)] };
    assert!(matches!(
        squier::classify_cube(&k, &view, &tl, &cube),
        Err(squier::SquierError::NoAssignedEdge(_))
    ));
}

#[test]
fn census_with_user_forest_runs_on_the_completed_complex() {
    // Completing the ab/ba complex and comparing essential 1-counts against
    // the minimal-presentation generators of the completion.
    let k = DirectedComplex::from_presentation(
        &["a", "b"],
        &[("f", &["a", "b"], &["a"]), ("g", &["b", "a"], &["b"])],
    )
    .unwrap();
    let done = rewriting::complete_by_retract(&k, 6, 64).unwrap();
    let a = done.word_from_names(&["a"]).unwrap();
    let pres = presentation::minimal_presentation(
        &done,
        &a,
        Limits { max_word_len: 6, max_vertices: 4096 },
    )
    .unwrap();
    let rank1 = diagroup::homology::betti(&done, &a, 1).unwrap();
    assert_eq!(rank1, num_bigint::BigInt::from(pres.generators.len()));
}

#[test]
fn sphere_chain_component_and_cubes() {
    let k = sphere_chain(2);
    let w = k.word_from_names(&["x1", "x2"]).unwrap();
    let comp = squier::component(&k, &w, Limits::default()).unwrap();
    assert_eq!(comp.vertices.len(), 1);
    assert_eq!(comp.edges.len(), 2);
    assert!(comp.exhaustive);
    // Thin cubes with top w: C(2, k) for k = 0, 1, 2.
    for (dim, expected) in [(0usize, 1usize), (1, 2), (2, 1)] {
        assert_eq!(squier::thin_cubes_with_top(&k, &w, dim).len(), expected);
    }
}

#[test]
fn betti_ranks_survive_subdivision_and_edge_addition() {
    let k = dunce();
    let x = k.word_from_names(&["x"]).unwrap();
    let before: Vec<_> = (0..=3).map(|n| diagroup::homology::betti(&k, &x, n).unwrap()).collect();

    let subdivided = k.subdivide(k.cell("f0").unwrap()).unwrap();
    let xs = subdivided.word_from_names(&["x"]).unwrap();
    let after: Vec<_> =
        (0..=3).map(|n| diagroup::homology::betti(&subdivided, &xs, n).unwrap()).collect();
    assert_eq!(before, after);

    let x2 = k.word_from_names(&["x", "x"]).unwrap();
    let extended = k.tietze_add_edge(&x2).unwrap();
    // The raw orientation is not confluent; flipping the new cell is (the
    // diagram groups do not depend on the orientation).
    let oriented = rewriting::orient_for_completion(&extended).unwrap();
    let xe = oriented.word_from_names(&["x"]).unwrap();
    let after: Vec<_> =
        (0..=3).map(|n| diagroup::homology::betti(&oriented, &xe, n).unwrap()).collect();
    assert_eq!(before, after);
}

#[test]
fn cover_squier_ball_matches_reduced_diagram_counts() {
    // Numeric consistency with the pair description of the universal cover
    // of the Squier complex: words reachable from the root in <= j steps
    // correspond to distinct reduced diagrams of <= j-step 2-paths at the
    // base, and negative edges in the ball to pairs (reduced diagram, one-
    // cell thin diagram) whose concatenation is dipole-free.
    let k = dunce();
    let x = k.word_from_names(&["x"]).unwrap();
    let cov = diagroup::cover::build_cover(&k, &x, 4, 1).unwrap();
    let ck = &cov.complex;
    for j in 0..=3usize {
        // Cover side: breadth-first ball of j steps around the root.
        let mut ball = std::collections::BTreeSet::new();
        ball.insert(cov.root.clone());
        let mut frontier = vec![cov.root.clone()];
        for _ in 0..j {
            let mut next = Vec::new();
            for w in &frontier {
                for s in enumerate::applicable_steps(ck, w) {
                    let u = ck.splice(w, s.offset, ck.top(s.cell).len(), ck.bottom(s.cell));
                    if ball.insert(u.clone()) {
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        // Base side: distinct reduced diagrams from <= j-step 2-paths.
        let mut reduced = std::collections::BTreeSet::new();
        for d in enumerate::two_paths(&k, &x, j, 1 + j) {
            let r = diagram::reduce(&k, &d);
            reduced.insert((r.top().clone(), r.steps().to_vec()));
        }
        assert_eq!(ball.len(), reduced.len(), "vertex counts at radius {j}");

        // Edge comparison: negative cover edges inside the ball against
        // dipole-free one-cell extensions of the reduced diagrams.
        let mut cover_edges = 0usize;
        for w in &ball {
            for c in ck.cell_ids() {
                let neg = CellRef::negative(c);
                let pat = ck.top(neg);
                for offset in 0..=w.len().saturating_sub(pat.len()) {
                    if ck.word_matches_at(w, offset, pat)
                        && ball.contains(&ck.splice(w, offset, pat.len(), ck.bottom(neg)))
                    {
                        cover_edges += 1;
                    }
                }
            }
        }
        // Each 1-cube has two reference orientations; the dipole-free
        // condition accepts exactly one, so enumerating both signs counts
        // every cube once.
        let mut pair_count = 0usize;
        for (top, steps) in &reduced {
            let d = Diagram::from_steps(&k, top.clone(), steps.clone()).unwrap();
            let bottom = d.bottom(&k);
            for c in k.cell_ids() {
                for cref in [CellRef::positive(c), CellRef::negative(c)] {
                    let pat = k.top(cref);
                    for offset in 0..=bottom.len().saturating_sub(pat.len()) {
                        if !k.word_matches_at(&bottom, offset, pat) {
                            continue;
                        }
                        let step = Diagram::from_steps(
                            &k,
                            bottom.clone(),
                            vec![AtomicStep { offset, cell: cref }],
                        )
                        .unwrap();
                        let glued = diagram::concat(&k, &d, &step).unwrap();
                        let r = diagram::reduce(&k, &glued);
                        let extended_in_ball =
                            reduced.contains(&(glued.top().clone(), r.steps().to_vec()));
                        if extended_in_ball && r.cell_count() == glued.cell_count() {
                            pair_count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(cover_edges, pair_count, "edge counts at radius {j}");
    }
}

#[test]
fn generator_count_agrees_three_ways() {
    // Minimal-presentation generators, essential 1-cubes, and rank H_1 all
    // coincide on the finite-class fixtures.
    use diagroup::homology::{ClassBounds, CountAutomaton};
    for (k, base, len) in [
        (dunce(), vec!["x"], 6usize),
        (v_complex(), vec!["y", "y"], 7),
        (h_n(1), vec!["x"], 6),
    ] {
        let w = k.word_from_names(&base).unwrap();
        let pres = presentation::minimal_presentation(
            &k,
            &w,
            Limits { max_word_len: len, max_vertices: 4096 },
        )
        .unwrap();
        let tl = Forest::derive(&k, ForestKind::Left).unwrap();
        let auto = CountAutomaton::build(&k, &w, &tl, ClassBounds::default()).unwrap();
        let cubes = auto.essential_cubes(&k, 1);
        let rank = diagroup::homology::betti(&k, &w, 1).unwrap();
        assert_eq!(pres.generators.len(), cubes.len());
        assert_eq!(num_bigint::BigInt::from(cubes.len()), rank);
        // The enumerated cubes are exactly the generator edges.
        for g in &pres.generators {
            let cube = squier::ThinCube {
                segments: vec![g.u.clone(), g.v.clone()],
                cells: vec![CellRef::negative(g.cell)],
            };
            assert!(cubes.contains(&cube), "missing cube for {}", g.display(&k));
        }
    }
    // The universal a/y fixture is not almost 2-path connected, so the
    // census over the bounded component stands in for the automaton.
    let k = ay_complex();
    let a = k.word_from_names(&["a"]).unwrap();
    let pres = presentation::minimal_presentation(
        &k,
        &a,
        Limits { max_word_len: 10, max_vertices: 4096 },
    )
    .unwrap();
    let comp =
        squier::component(&k, &a, Limits { max_word_len: 10, max_vertices: 4096 }).unwrap();
    let tl = Forest::derive(&k, ForestKind::Left).unwrap();
    let census = squier::cube_census(&k, &comp, &tl, 1).unwrap();
    assert_eq!(census.per_dim[1].0, pres.generators.len());
}

#[test]
fn relation_count_is_the_sum_of_generator_counts_at_third_components() {
    // #relations = sum over essential 1-cubes (u, f, v) of the generator
    // count at the base v, computed independently through the automaton.
    use diagroup::homology::{ClassBounds, CountAutomaton};
    for (k, base, len) in [
        (dunce(), vec!["x"], 6usize),
        // Relation squares over V reach p y^2 q y^2 r with |q| up to 2.
        (v_complex(), vec!["y", "y"], 10),
        (h_n(1), vec!["x"], 6),
    ] {
        let w = k.word_from_names(&base).unwrap();
        let pres = presentation::minimal_presentation(
            &k,
            &w,
            Limits { max_word_len: len, max_vertices: 4096 },
        )
        .unwrap();
        let tl = Forest::derive(&k, ForestKind::Left).unwrap();
        let mu = |s: &EdgeWord| -> usize {
            if s.is_empty() {
                return 0; // the diagram group at an empty base is trivial
            }
            let auto = CountAutomaton::build(&k, s, &tl, ClassBounds::default()).unwrap();
            auto.essential_cubes(&k, 1).len()
        };
        let total: usize = pres.generators.iter().map(|g| mu(&g.v)).sum();
        assert_eq!(pres.relations.len(), total);
    }
}

#[test]
fn essential_cube_enumeration_via_the_squier_surface() {
    // The squier-level operation agrees with the closed-form counts.
    let k = dunce();
    let x = k.word_from_names(&["x"]).unwrap();
    assert_eq!(squier::essential_cubes(&k, &x, 0).unwrap().len(), 1);
    for n in 1..=4usize {
        assert_eq!(squier::essential_cubes(&k, &x, n).unwrap().len(), 2);
    }
    let k = h_n(1);
    let x = k.word_from_names(&["x"]).unwrap();
    for n in 1..=4usize {
        assert_eq!(squier::essential_cubes(&k, &x, n).unwrap().len(), 2 * 3usize.pow(n as u32));
        // Every enumerated cube really is essential and in the component.
        let view = ReductionView::new(&k);
        let tl = Forest::derive(&k, ForestKind::Left).unwrap();
        for cube in squier::essential_cubes(&k, &x, n).unwrap() {
            assert!(matches!(
                squier::classify_kind(&k, &view, &tl, &cube).unwrap(),
                squier::CubeKind::Essential
            ));
        }
    }
}

#[test]
fn iterated_faces_stay_in_the_homotopy_class() {
    // Every face chain of an essential cube keeps the vertex words inside
    // the component's class.
    let k = h_n(1);
    let x = k.word_from_names(&["x"]).unwrap();
    let view = ReductionView::new(&k);
    let target = view.irr(&x, 10_000).unwrap();
    fn walk(
        k: &DirectedComplex,
        view: &ReductionView,
        target: &EdgeWord,
        c: &squier::ThinCube,
    ) {
        if c.dim() == 0 {
            assert_eq!(&view.irr(&c.segments[0], 10_000).unwrap(), target);
            return;
        }
        for i in 1..=c.dim() {
            for side in [squier::FaceSide::Top, squier::FaceSide::Bottom] {
                walk(k, view, target, &squier::cube_face(k, c, i, side).unwrap());
            }
        }
    }
    for n in 1..=3usize {
        for cube in squier::essential_cubes(&k, &x, n).unwrap() {
            walk(&k, &view, &target, &cube);
        }
    }
}

#[test]
fn minimal_presentations_report_provable_completeness() {
    // Dunce and H1 stabilize within the bound; the a/y fixture cannot be
    // certified (its class semigroup is infinite) and stays flagged.
    let k = dunce();
    let x = k.word_from_names(&["x"]).unwrap();
    let pres =
        presentation::minimal_presentation(&k, &x, Limits { max_word_len: 6, max_vertices: 4096 })
            .unwrap();
    assert!(pres.exhaustive);
    let k = ay_complex();
    let a = k.word_from_names(&["a"]).unwrap();
    let pres = presentation::minimal_presentation(
        &k,
        &a,
        Limits { max_word_len: 10, max_vertices: 4096 },
    )
    .unwrap();
    assert!(!pres.exhaustive);
}

#[test]
fn values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<DirectedComplex>();
    assert_send_sync::<Diagram>();
    assert_send_sync::<EdgeWord>();
    assert_send_sync::<Morphism>();
    assert_send_sync::<Forest>();
    assert_send_sync::<squier::SquierComponent>();
    assert_send_sync::<squier::ThinCube>();
    assert_send_sync::<diagroup::homology::ClassSemigroup>();
    assert_send_sync::<diagroup::cover::CoverComplex>();
    assert_send_sync::<presentation::Presentation>();
}

#[test]
fn lifts_are_functorial_for_concatenation() {
    // lift(d1 ∘ d2) equals lift(d1) followed by the lift of d2 started at
    // the intermediate lifted path; forced by uniqueness of lifts.
    let k = dunce();
    let x = k.word_from_names(&["x"]).unwrap();
    let cov = diagroup::cover::build_cover(&k, &x, 4, 1).unwrap();
    let ck = &cov.complex;
    let mut rng = Rng::new(404);
    for _ in 0..25 {
        let d1 = enumerate::random_two_path(&k, &x, 2, 5, &mut rng);
        let d2 = enumerate::random_two_path(&k, &d1.bottom(&k), 2, 7, &mut rng);
        let full = diagram::concat(&k, &d1, &d2).unwrap();
        let (lift_full, q_full) = diagroup::cover::lift_diagram(&cov, &full).unwrap();
        let (l1, q1) = diagroup::cover::lift_diagram(&cov, &d1).unwrap();
        let (l2, q2) = diagroup::cover::lift_from(&cov, &q1, &d2).unwrap();
        let glued = diagram::concat(ck, &l1, &l2).unwrap();
        assert_eq!(diagram::canonical(ck, &lift_full), glued);
        assert_eq!(q_full, q2);
    }
}

#[test]
fn example_counts_for_larger_sphere_families() {
    // H_n at x: 4n+2 generators, 2(2n+1)^2 relations, and homology ranks
    // (2n+1)^k doubled.
    for n in 2..=3usize {
        let k = h_n(n);
        let x = k.word_from_names(&["x"]).unwrap();
        let pres = presentation::minimal_presentation(
            &k,
            &x,
            Limits { max_word_len: 6, max_vertices: 4096 },
        )
        .unwrap();
        assert_eq!(pres.generators.len(), 4 * n + 2);
        assert_eq!(pres.relations.len(), 2 * (2 * n + 1) * (2 * n + 1));
        let tl = Forest::derive(&k, ForestKind::Left).unwrap();
        presentation::verify_relations(&k, &tl, &pres).unwrap();
        for dim in 1..=4usize {
            let rank = diagroup::homology::betti(&k, &x, dim).unwrap();
            let expected = num_bigint::BigInt::from(2)
                * num_bigint::BigInt::from(2 * n as i64 + 1).pow(dim as u32);
            assert_eq!(rank, expected, "n = {n}, dim = {dim}");
        }
    }
}

#[test]
fn atomic_rejects_endpoint_mismatch() {
    let k = sphere_chain(2);
    let x1 = k.word_from_names(&["x1"]).unwrap();
    let s2 = CellRef::positive(k.cell("s2").unwrap());
    // x1 ends at v1 = the source of s2's top, so (x1, s2, empty@v2) works,
    // but (empty@v0, s2, ...) does not.
    let e0 = EdgeWord::empty(k.vertex("v0").unwrap());
    let e2 = EdgeWord::empty(k.vertex("v2").unwrap());
    assert!(diagram::atomic(&k, &x1, s2, &e2).is_ok());
    assert_eq!(
        diagram::atomic(&k, &e0, s2, &e2).unwrap_err(),
        diagroup::diagram::DiagramError::EndpointMismatch
    );
}

#[test]
fn geometric_dimension_clamps_to_n_max() {
    let k = sphere_chain(5);
    let w = k.word_from_names(&["x1", "x2", "x3", "x4", "x5"]).unwrap();
    assert_eq!(
        diagroup::homology::geometric_dimension(&k, &w, 3).unwrap(),
        (diagroup::homology::Dimension::Finite(3), false)
    );
}

#[test]
fn subdividing_every_cell_twice_gives_presentation_shape() {
    // After two subdivisions of each cell, distinct cells never share both
    // top and bottom.
    let mut k = v_complex();
    for _ in 0..2 {
        let cells: Vec<_> = k.cell_ids().collect();
        let target = cells[0];
        k = k.subdivide(target).unwrap();
    }
    let mut sides = std::collections::BTreeSet::new();
    for c in k.cell_ids() {
        let top = k.display_word(k.top(CellRef::positive(c)));
        let bottom = k.display_word(k.bottom(CellRef::positive(c)));
        assert!(sides.insert((top, bottom)), "duplicate cell shape after subdivision");
    }
}
