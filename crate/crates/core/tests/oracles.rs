//! Exhaustive checks of the classifier and the graph machinery against independent oracles.

use std::collections::HashMap;

use qbn_core::canon::{canonical_certificate, is_vertex_transitive, rooted_certificate, CanonicalCertificate};
use qbn_core::classify::classify;
use qbn_core::cyclo::{nut_via_divisors, nut_via_finite_sets, zero_multiplicity, FiniteSetVerdict};
use qbn_core::enumerate::{all_specs, is_circulant};
use qbn_core::graph::{build_graph, is_bipartite, is_connected, QuartGraph};
use qbn_core::kernel::nut_oracle;
use qbn_core::spec::{is_connected_params, make_spec, parse_spec, BicirculantSpec, ClassTag};

const MAX_ORDER: i64 = 40;

/// Every canonical-range spec up to `max_order`, connected or not.
fn canonical_specs(max_order: i64) -> Vec<BicirculantSpec> {
    let mut out = Vec::new();
    for m in 3..=max_order / 2 {
        for class in ClassTag::ALL {
            for a in 1..m {
                for b in 1..m {
                    let cs: Vec<Option<i64>> = if class.has_c() {
                        (1..m).map(Some).collect()
                    } else {
                        vec![None]
                    };
                    out.extend(cs.into_iter().filter_map(|c| make_spec(class, m, a, b, c).ok()));
                }
            }
        }
    }
    out
}

fn b1_to_b3(specs: &[BicirculantSpec]) -> impl Iterator<Item = &BicirculantSpec> {
    specs.iter().filter(|s| s.class() != ClassTag::B4)
}

fn spec(text: &str) -> BicirculantSpec {
    parse_spec(text).unwrap()
}

fn cert(g: &QuartGraph) -> CanonicalCertificate {
    canonical_certificate(g).unwrap()
}

#[test]
fn every_spec_builds_a_simple_quartic_graph_with_predicted_connectivity() {
    let specs = canonical_specs(MAX_ORDER);
    assert!(
        specs.iter().any(|s| !is_connected_params(s)),
        "the sweep includes disconnected specs"
    );
    for s in &specs {
        let g = build_graph(s);
        assert_eq!(g.order(), s.order());
        for v in 0..g.order() {
            let nbrs = g.neighbors(v);
            assert!(nbrs.iter().all(|&w| w != v && g.has_edge(w, v)), "{s}");
            let mut sorted = *nbrs;
            sorted.sort_unstable();
            assert!(sorted.windows(2).all(|w| w[0] != w[1]), "{s}: repeated neighbor");
        }
        assert_eq!(is_connected(&g), is_connected_params(s), "{s}");
    }
}

#[test]
fn divisor_routes_match_the_kernel_oracle_on_every_spec() {
    let specs = canonical_specs(MAX_ORDER);
    let mut finite_checked = 0;
    for s in b1_to_b3(&specs) {
        let oracle = nut_oracle(&build_graph(s));
        assert_eq!(nut_via_divisors(s).unwrap(), oracle, "{s}");
        if s.class() == ClassTag::B3 {
            continue;
        }
        match nut_via_finite_sets(s).unwrap() {
            FiniteSetVerdict::Nut => assert!(oracle, "{s}"),
            FiniteSetVerdict::NotNut(_) => assert!(!oracle, "{s}"),
            FiniteSetVerdict::NotApplicable => continue,
        }
        finite_checked += 1;
    }
    assert!(finite_checked > 0);
}

#[test]
fn classify_matches_the_kernel_oracle_on_every_spec() {
    for s in canonical_specs(MAX_ORDER) {
        let g = build_graph(&s);
        if is_connected(&g) {
            assert_eq!(classify(&s).is_nut, nut_oracle(&g), "{s}");
        } else {
            assert!(!nut_oracle(&g), "{s}: disconnected graphs are never nut");
        }
    }
}

#[test]
fn witnesses_name_divisors_with_zero_eigenvalues() {
    let mut witnessed = 0;
    for s in b1_to_b3(&canonical_specs(MAX_ORDER)) {
        let Some(f) = classify(s).witness_f else { continue };
        assert_eq!(s.m() % f, 0, "{s}: witness {f} does not divide m");
        let report = zero_multiplicity(s).unwrap();
        assert!(
            report.satisfied_divisors.contains(&f),
            "{s}: witness {f} not in {:?}",
            report.satisfied_divisors
        );
        witnessed += 1;
    }
    assert!(witnessed > 500, "only {witnessed} witnesses");
}

/// The I-graph I(n; j, k) with a second copy joined by a perfect matching.
fn i_graph_prism(n: usize, j: usize, k: usize) -> QuartGraph {
    let mut edges = Vec::new();
    for layer in [0, 2 * n] {
        for i in 0..n {
            edges.push((layer + i, layer + (i + j) % n));
            edges.push((layer + n + i, layer + n + (i + k) % n));
            edges.push((layer + i, layer + n + i));
        }
    }
    edges.extend((0..2 * n).map(|v| (v, v + 2 * n)));
    QuartGraph::from_edges(4 * n, &edges).unwrap()
}

#[test]
fn b1_with_even_parameters_is_an_i_graph_prism() {
    let mut checked = 0;
    for m in (6..=30i64).step_by(4) {
        for a in (2..m / 2).step_by(2) {
            for b in (a..m / 2).step_by(2) {
                let s = make_spec(ClassTag::B1, m, a, b, None).unwrap();
                let h = i_graph_prism((m / 2) as usize, (a / 2) as usize, (b / 2) as usize);
                assert_eq!(cert(&build_graph(&s)), cert(&h), "{s}");
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

#[test]
fn small_non_vertex_transitive_nut_graphs() {
    let small = build_graph(&spec("B2(5;1,2,1)"));
    assert!(nut_oracle(&small));
    assert!(!is_vertex_transitive(&small).unwrap());
    for other in ["B2(5;1,1,1)", "B2(5;1,1,2)"] {
        assert_ne!(cert(&small), cert(&build_graph(&spec(other))), "{other}");
    }
    let g = build_graph(&spec("B2(6;1,2,3)"));
    assert!(nut_oracle(&g));
    assert!(!is_vertex_transitive(&g).unwrap());
}

#[test]
fn vertex_transitivity_matches_rooted_certificates() {
    for n in (6..=30).step_by(2) {
        for s in all_specs(n) {
            let g = build_graph(&s);
            if !nut_oracle(&g) {
                continue;
            }
            let root = rooted_certificate(&g, 0).unwrap();
            let all_equal = (1..g.order()).all(|v| rooted_certificate(&g, v).unwrap() == root);
            assert_eq!(is_vertex_transitive(&g).unwrap(), all_equal, "{s}");
        }
    }
}

#[test]
fn vertex_transitive_nut_graphs_that_are_not_circulant() {
    for text in ["B2(15;3,6,5)", "B2(10;1,3,5)", "B2(10;2,4,5)", "B3(10;1,3)"] {
        let g = build_graph(&spec(text));
        assert!(classify(&spec(text)).is_nut, "{text}");
        assert!(nut_oracle(&g), "{text}");
        assert!(is_vertex_transitive(&g).unwrap(), "{text}");
        assert!(!is_circulant(&g).unwrap(), "{text}");
    }
}

#[test]
fn certificates_separate_graphs_with_different_invariants() {
    let mut seen: HashMap<CanonicalCertificate, (bool, bool, bool, String)> = HashMap::new();
    for n in (6..=30).step_by(2) {
        for s in all_specs(n) {
            let g = build_graph(&s);
            let invariants = (is_bipartite(&g), nut_oracle(&g), is_vertex_transitive(&g).unwrap());
            let entry = seen
                .entry(cert(&g))
                .or_insert((invariants.0, invariants.1, invariants.2, s.to_string()));
            assert_eq!(
                (entry.0, entry.1, entry.2),
                invariants,
                "{s} and {} share a certificate",
                entry.3
            );
        }
    }
}
