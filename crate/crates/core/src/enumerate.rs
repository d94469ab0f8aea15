//! Enumeration of connected quartic bicirculants up to isomorphism, and the
//! three-way cross-check of the nut tests.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::gcd_all;
use crate::canon::{canonical_certificate, canonical_form, orbits, CanonicalCertificate};
use crate::classify::classify;
use crate::cyclo::{nut_via_divisors, nut_via_finite_sets, zero_multiplicity, FiniteSetVerdict};
use crate::error::{Error, Result};
use crate::graph::{build_graph, is_bipartite, QuartGraph};
use crate::kernel::{adjacency_matrix, kernel_basis, nut_oracle};
use crate::spec::{is_connected_params, make_spec, BicirculantSpec, ClassTag};

pub const MIN_TABLE_ORDER: u64 = 8;
pub const MAX_TABLE_ORDER: u64 = 50;
pub const MIN_CROSSCHECK_ORDER: u64 = 6;

/// Smallest `m` for which the class has any spec.
fn min_m(class: ClassTag) -> u64 {
    if class == ClassTag::B2 {
        3
    } else {
        4
    }
}

/// True if the class has specs of order `n`.
pub fn class_fits_order(class: ClassTag, n: u64) -> bool {
    let m = n / 2;
    n.is_multiple_of(2) && m >= min_m(class) && (!class.needs_even_m() || m.is_multiple_of(2))
}

/// All connected canonical-range specs of the class with `2m = n`, ordered by `(a, b, c)`.
pub fn gen_specs(class: ClassTag, n: u64) -> Result<Vec<BicirculantSpec>> {
    if !n.is_multiple_of(2) {
        return Err(Error::Parity {
            class,
            constraint: "order n = 2m even",
            got: format!("n = {n}"),
        });
    }
    let m = (n / 2) as i64;
    if class.needs_even_m() && m % 2 != 0 {
        return Err(Error::Parity {
            class,
            constraint: "m even",
            got: format!("m = {m}"),
        });
    }
    if (m as u64) < min_m(class) {
        return Err(Error::Range {
            class,
            constraint: if class == ClassTag::B2 { "m >= 3" } else { "m >= 4" },
            got: format!("m = {m}"),
        });
    }
    let mut out = Vec::new();
    let mut push = |a, b, c| {
        let spec = make_spec(class, m, a, b, c).expect("enumerated inside the canonical range");
        if is_connected_params(&spec) {
            out.push(spec);
        }
    };
    match class {
        ClassTag::B1 => {
            for a in 1..=m {
                for b in (a..).take_while(|b| 2 * b < m) {
                    push(a, b, None);
                }
            }
        }
        ClassTag::B2 => {
            for a in 1..=m {
                for b in (a..).take_while(|b| 2 * b < m) {
                    for c in 1..=m / 2 {
                        push(a, b, Some(c));
                    }
                }
            }
        }
        ClassTag::B3 => {
            for a in 1..m {
                for b in (a + 2..m).step_by(2) {
                    push(a, b, None);
                }
            }
        }
        ClassTag::B4 => {
            for a in 1..m {
                for b in a + 1..m {
                    for c in b + 1..m {
                        push(a, b, Some(c));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Connected specs of every class of order `n`.
pub fn all_specs(n: u64) -> Vec<BicirculantSpec> {
    ClassTag::ALL
        .into_iter()
        .filter(|&class| class_fits_order(class, n))
        .flat_map(|class| gen_specs(class, n).expect("order fits class"))
        .collect()
}

type CirculantCache = RwLock<HashMap<usize, Arc<HashSet<CanonicalCertificate>>>>;

fn circulant_certificates(n: usize) -> Result<Arc<HashSet<CanonicalCertificate>>> {
    static CACHE: OnceLock<CirculantCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(set) = cache.read().unwrap().get(&n) {
        return Ok(Arc::clone(set));
    }
    let mut set = HashSet::new();
    for s in 1..n {
        for t in (s + 1..).take_while(|&t| 2 * t < n) {
            if gcd_all(&[n as i64, s as i64, t as i64]) == 1 {
                set.insert(canonical_certificate(&QuartGraph::circulant(n, s, t)?)?);
            }
        }
    }
    let set = Arc::new(set);
    Ok(Arc::clone(cache.write().unwrap().entry(n).or_insert(set)))
}

/// True if the graph is isomorphic to a connected quartic circulant of the same order.
pub fn is_circulant(g: &QuartGraph) -> Result<bool> {
    let cert = canonical_certificate(g)?;
    Ok(circulant_certificates(g.order())?.contains(&cert))
}

/// Isomorphism-class counters: connected, nonbipartite, nut, vertex-transitive nut,
/// circulant nut.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    #[serde(rename = "C")]
    pub connected: u32,
    #[serde(rename = "B")]
    pub nonbipartite: u32,
    #[serde(rename = "N")]
    pub nut: u32,
    #[serde(rename = "V")]
    pub vertex_transitive: u32,
    #[serde(rename = "Z")]
    pub circulant: u32,
}

impl Counts {
    pub fn as_array(&self) -> [u32; 5] {
        [
            self.connected,
            self.nonbipartite,
            self.nut,
            self.vertex_transitive,
            self.circulant,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub class: ClassTag,
    #[serde(flatten)]
    pub counts: Counts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: u64,
    #[serde(flatten)]
    pub counts: Counts,
    /// Counters for B1, B2, B3 separately, for the classes that have specs of order `n`.
    pub per_class: Vec<ClassCounts>,
}

#[derive(Debug, Clone, Copy)]
struct GraphFacts {
    nonbipartite: bool,
    nut: bool,
    vertex_transitive: bool,
    circulant: bool,
}

fn count(facts: &BTreeMap<CanonicalCertificate, GraphFacts>) -> Counts {
    let mut c = Counts::default();
    for f in facts.values() {
        c.connected += 1;
        c.nonbipartite += u32::from(f.nonbipartite);
        c.nut += u32::from(f.nut);
        c.vertex_transitive += u32::from(f.nut && f.vertex_transitive);
        c.circulant += u32::from(f.nut && f.circulant);
    }
    c
}

/// Per-spec facts. Vertex-transitivity and circulance are only computed for nut graphs.
fn spec_facts(spec: &BicirculantSpec) -> Result<(CanonicalCertificate, GraphFacts)> {
    let g = build_graph(spec);
    let labeling = canonical_form(&g)?;
    let nut = nut_oracle(&g);
    let verdict = classify(spec);
    if verdict.is_nut != nut {
        return Err(Error::OracleDisagreement {
            spec: spec.to_string(),
            classify: verdict.is_nut,
            oracle: nut,
        });
    }
    let (vertex_transitive, circulant) = if nut {
        let orbit = orbits(g.order(), &labeling.generators);
        let vt = orbit.iter().all(|&o| o == 0);
        let circ = circulant_certificates(g.order())?.contains(&labeling.certificate);
        (vt, circ)
    } else {
        (false, false)
    };
    let facts = GraphFacts {
        nonbipartite: !is_bipartite(&g),
        nut,
        vertex_transitive,
        circulant,
    };
    Ok((labeling.certificate, facts))
}

/// Isomorphism-class counts for order `n`, over all four classes together and per class.
pub fn table_row(n: u64) -> Result<TableRow> {
    if !(MIN_TABLE_ORDER..=MAX_TABLE_ORDER).contains(&n) || !n.is_multiple_of(2) {
        return Err(Error::OrderOutOfRange {
            n,
            min: MIN_TABLE_ORDER,
            max: MAX_TABLE_ORDER,
        });
    }
    let specs = all_specs(n);
    let facts: Vec<(CanonicalCertificate, GraphFacts)> = specs.par_iter().map(spec_facts).collect::<Result<_>>()?;
    let mut all = BTreeMap::new();
    let mut by_class: BTreeMap<ClassTag, BTreeMap<CanonicalCertificate, GraphFacts>> = BTreeMap::new();
    for (spec, (cert, f)) in specs.iter().zip(facts) {
        all.insert(cert.clone(), f);
        by_class.entry(spec.class()).or_default().insert(cert, f);
    }
    let per_class = by_class
        .iter()
        .filter(|(&class, _)| class != ClassTag::B4)
        .map(|(&class, facts)| ClassCounts {
            class,
            counts: count(facts),
        })
        .collect();
    Ok(TableRow {
        n,
        counts: count(&all),
        per_class,
    })
}

/// Rows for every even order from 8 to `max_order`.
pub fn table(max_order: u64) -> Result<Vec<TableRow>> {
    if !(MIN_TABLE_ORDER..=MAX_TABLE_ORDER).contains(&max_order) {
        return Err(Error::OrderOutOfRange {
            n: max_order,
            min: MIN_TABLE_ORDER,
            max: MAX_TABLE_ORDER,
        });
    }
    (MIN_TABLE_ORDER..=max_order).step_by(2).map(table_row).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub spec: String,
    pub check: &'static str,
    pub detail: String,
}

/// Number of specs on which each pair of methods was compared.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    pub classify_vs_oracle: u32,
    pub classify_vs_divisors: u32,
    pub divisors_vs_oracle: u32,
    pub finite_sets_vs_divisors: u32,
    pub multiplicity_vs_kernel: u32,
}

impl PairCounts {
    fn add(&mut self, o: &PairCounts) {
        self.classify_vs_oracle += o.classify_vs_oracle;
        self.classify_vs_divisors += o.classify_vs_divisors;
        self.divisors_vs_oracle += o.divisors_vs_oracle;
        self.finite_sets_vs_divisors += o.finite_sets_vs_divisors;
        self.multiplicity_vs_kernel += o.multiplicity_vs_kernel;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderSummary {
    pub n: u64,
    pub specs: u32,
    pub nut_specs: u32,
    pub comparisons: PairCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub max_order: u64,
    pub orders: Vec<OrderSummary>,
    pub totals: PairCounts,
    pub disagreements: Vec<Disagreement>,
}

impl CrosscheckReport {
    pub fn total_specs(&self) -> u32 {
        self.orders.iter().map(|o| o.specs).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

struct SpecCheck {
    nut: bool,
    comparisons: PairCounts,
    disagreements: Vec<Disagreement>,
}

fn check_spec(spec: &BicirculantSpec) -> SpecCheck {
    let mut pc = PairCounts::default();
    let mut bad = Vec::new();
    let mut note = |check: &'static str, detail: String| {
        bad.push(Disagreement {
            spec: spec.to_string(),
            check,
            detail,
        })
    };
    let kernel = kernel_basis(&adjacency_matrix(&build_graph(spec)));
    let oracle = kernel.dim() == 1 && kernel.vectors[0].iter().all(|x| !num_traits::Zero::is_zero(x));
    let classified = classify(spec).is_nut;
    pc.classify_vs_oracle += 1;
    if classified != oracle {
        note("classify-vs-oracle", format!("classify={classified} oracle={oracle}"));
    }
    if spec.class() != ClassTag::B4 {
        let divisors = nut_via_divisors(spec).expect("B1-B3");
        pc.classify_vs_divisors += 1;
        pc.divisors_vs_oracle += 1;
        if classified != divisors {
            note(
                "classify-vs-divisors",
                format!("classify={classified} divisors={divisors}"),
            );
        }
        if divisors != oracle {
            note("divisors-vs-oracle", format!("divisors={divisors} oracle={oracle}"));
        }
        if spec.class() != ClassTag::B3 {
            let finite = nut_via_finite_sets(spec).expect("B1 or B2");
            if finite != FiniteSetVerdict::NotApplicable {
                pc.finite_sets_vs_divisors += 1;
                let nut = finite == FiniteSetVerdict::Nut;
                if nut != divisors {
                    note(
                        "finite-sets-vs-divisors",
                        format!("finite={finite:?} divisors={divisors}"),
                    );
                }
            }
        }
        let multiplicity = zero_multiplicity(spec).expect("B1-B3").multiplicity;
        pc.multiplicity_vs_kernel += 1;
        if multiplicity != kernel.dim() as u64 {
            note(
                "multiplicity-vs-kernel",
                format!("multiplicity={multiplicity} kernel_dim={}", kernel.dim()),
            );
        }
    }
    SpecCheck {
        nut: oracle,
        comparisons: pc,
        disagreements: bad,
    }
}

/// Compares every method on every connected spec of order `6..=max_order`.
pub fn crosscheck(max_order: u64) -> Result<CrosscheckReport> {
    if !(MIN_CROSSCHECK_ORDER..=MAX_TABLE_ORDER).contains(&max_order) {
        return Err(Error::OrderOutOfRange {
            n: max_order,
            min: MIN_CROSSCHECK_ORDER,
            max: MAX_TABLE_ORDER,
        });
    }
    let mut orders = Vec::new();
    let mut totals = PairCounts::default();
    let mut disagreements = Vec::new();
    for n in (MIN_CROSSCHECK_ORDER..=max_order).step_by(2) {
        let specs = all_specs(n);
        let checks: Vec<SpecCheck> = specs.par_iter().map(check_spec).collect();
        let mut comparisons = PairCounts::default();
        let mut nut_specs = 0;
        for c in checks {
            comparisons.add(&c.comparisons);
            nut_specs += u32::from(c.nut);
            disagreements.extend(c.disagreements);
        }
        totals.add(&comparisons);
        orders.push(OrderSummary {
            n,
            specs: specs.len() as u32,
            nut_specs,
            comparisons,
        });
    }
    Ok(CrosscheckReport {
        max_order,
        orders,
        totals,
        disagreements,
    })
}
