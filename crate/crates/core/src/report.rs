//! Text, CSV and JSON renderings shared by the command-line tool and the bindings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{Reason, Verdict};
use crate::cyclo::divides_cyclotomic;
use crate::enumerate::{Counts, CrosscheckReport, TableRow};
use crate::kernel::KernelBasis;
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Aggregate,
    PerClass,
    Both,
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

fn count_fields(c: &Counts) -> impl Iterator<Item = String> {
    c.as_array().into_iter().map(|x| x.to_string())
}

pub fn table_aggregate_csv(rows: &[TableRow]) -> String {
    csv_string(
        &["n", "C", "B", "N", "V", "Z"],
        rows.iter().map(|r| {
            std::iter::once(r.n.to_string())
                .chain(count_fields(&r.counts))
                .collect()
        }),
    )
}

pub fn table_per_class_csv(rows: &[TableRow]) -> String {
    csv_string(
        &["n", "class", "C", "B", "N", "V", "Z"],
        rows.iter().flat_map(|r| {
            r.per_class.iter().map(|pc| {
                [r.n.to_string(), pc.class.to_string()]
                    .into_iter()
                    .chain(count_fields(&pc.counts))
                    .collect()
            })
        }),
    )
}

/// CSV blocks separated by a blank line when both are requested.
pub fn table_csv(rows: &[TableRow], kind: TableKind) -> String {
    match kind {
        TableKind::Aggregate => table_aggregate_csv(rows),
        TableKind::PerClass => table_per_class_csv(rows),
        TableKind::Both => format!("{}\n{}", table_aggregate_csv(rows), table_per_class_csv(rows)),
    }
}

pub fn table_json(rows: &[TableRow]) -> String {
    to_json(&rows)
}

pub fn table_text(rows: &[TableRow], kind: TableKind) -> String {
    let mut out = String::new();
    let line = |out: &mut String, n: &str, class: &str, c: &Counts| {
        let [cc, b, nn, v, z] = c.as_array();
        writeln!(out, "{n:>4} {class:>5} {cc:>5} {b:>5} {nn:>5} {v:>5} {z:>5}").unwrap();
    };
    let header = |out: &mut String| {
        writeln!(
            out,
            "{:>4} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5}",
            "n", "class", "C", "B", "N", "V", "Z"
        )
        .unwrap();
    };
    if kind != TableKind::PerClass {
        header(&mut out);
        for r in rows {
            line(&mut out, &r.n.to_string(), "all", &r.counts);
        }
    }
    if kind == TableKind::Both {
        out.push('\n');
    }
    if kind != TableKind::Aggregate {
        header(&mut out);
        for r in rows {
            for pc in &r.per_class {
                line(&mut out, &r.n.to_string(), pc.class.as_str(), &pc.counts);
            }
        }
    }
    out
}

pub fn verdict_text(v: &Verdict) -> String {
    let status = if v.is_nut { "nut" } else { "not nut" };
    let why = match v.reason {
        Reason::ConditionsSatisfied => "all conditions hold".to_string(),
        Reason::ViolatedCondition { class, id } => format!("{class} condition {id} fails"),
        Reason::BipartiteClass => "bipartite class".to_string(),
        Reason::WitnessDivisor { f } => format!("Phi_{f} divides the class polynomial"),
    };
    let mut s = format!("{}: {status} ({why}", v.spec);
    if let Some(f) = v.witness_f {
        write!(s, "; zero eigenvalue at primitive {f}-th roots of unity").unwrap();
    }
    s.push_str(")\n");
    s
}

pub fn verdict_json(v: &Verdict) -> String {
    format!("{}\n", v.to_json())
}

pub fn crosscheck_text(r: &CrosscheckReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:>4} {:>6} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "n", "specs", "nut", "cls~orc", "cls~div", "div~orc", "fin~div", "mult~ker"
    )
    .unwrap();
    for o in &r.orders {
        let c = &o.comparisons;
        writeln!(
            s,
            "{:>4} {:>6} {:>6} {:>10} {:>10} {:>10} {:>10} {:>10}",
            o.n,
            o.specs,
            o.nut_specs,
            c.classify_vs_oracle,
            c.classify_vs_divisors,
            c.divisors_vs_oracle,
            c.finite_sets_vs_divisors,
            c.multiplicity_vs_kernel
        )
        .unwrap();
    }
    writeln!(s, "total specs: {}", r.total_specs()).unwrap();
    writeln!(s, "disagreements: {}", r.disagreements.len()).unwrap();
    for d in &r.disagreements {
        writeln!(s, "  {} [{}] {}", d.spec, d.check, d.detail).unwrap();
    }
    s
}

pub fn crosscheck_json(r: &CrosscheckReport) -> String {
    to_json(r)
}

pub fn residues_csv(triples: &[(u64, u64, u64)]) -> String {
    csv_string(
        &["a_plus_b", "a_minus_b", "c"],
        triples
            .iter()
            .map(|&(s, d, c)| vec![s.to_string(), d.to_string(), c.to_string()]),
    )
}

pub fn raw_residues_csv(f: u64, triples: &[(u64, u64, u64)]) -> String {
    csv_string(
        &["f", "a", "b", "c"],
        triples
            .iter()
            .map(|&(a, b, c)| vec![f.to_string(), a.to_string(), b.to_string(), c.to_string()]),
    )
}

pub fn kernel_text(spec: &impl std::fmt::Display, basis: &KernelBasis, nut: bool) -> String {
    let mut s = format!("{spec}\nkernel dimension: {}\nnut: {nut}\n", basis.dim());
    if basis.dim() > 0 {
        writeln!(s, "{basis}").unwrap();
    }
    s
}

/// The polynomial followed by one divisibility line per requested `f`.
pub fn poly_text(name: &str, p: &IntPolynomial, fs: &[u64]) -> String {
    let mut s = format!("{name} = {p}\n");
    for &f in fs {
        writeln!(s, "Phi_{f} divides {name}: {}", divides_cyclotomic(f, p)).unwrap();
    }
    s
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::enumerate::ClassCounts;
    use crate::spec::ClassTag;

    fn rows() -> Vec<TableRow> {
        let counts = |c, b, n, v, z| Counts {
            connected: c,
            nonbipartite: b,
            nut: n,
            vertex_transitive: v,
            circulant: z,
        };
        vec![TableRow {
            n: 12,
            counts: counts(12, 9, 3, 2, 2),
            per_class: vec![ClassCounts {
                class: ClassTag::B2,
                counts: counts(8, 7, 3, 2, 2),
            }],
        }]
    }

    #[test]
    fn csv_layouts() {
        assert_eq!(table_aggregate_csv(&rows()), "n,C,B,N,V,Z\n12,12,9,3,2,2\n");
        assert_eq!(table_per_class_csv(&rows()), "n,class,C,B,N,V,Z\n12,B2,8,7,3,2,2\n");
        assert_eq!(
            table_csv(&rows(), TableKind::Both),
            "n,C,B,N,V,Z\n12,12,9,3,2,2\n\nn,class,C,B,N,V,Z\n12,B2,8,7,3,2,2\n"
        );
    }

    #[test]
    fn json_layout() {
        let v: serde_json::Value = serde_json::from_str(&table_json(&rows())).unwrap();
        assert_eq!(v[0]["n"], 12);
        assert_eq!(v[0]["C"], 12);
        assert_eq!(v[0]["per_class"][0]["class"], "B2");
        assert_eq!(v[0]["per_class"][0]["Z"], 2);
    }

    #[test]
    fn verdict_lines() {
        let v = classify(&"B2(24;4,6,3)".parse().unwrap());
        assert_eq!(
            verdict_text(&v),
            "B2(24;4,6,3): not nut (B2 condition (iii) fails; zero eigenvalue at primitive 12-th roots of unity)\n"
        );
        assert!(verdict_json(&v).ends_with("}\n"));
    }

    #[test]
    fn residue_layouts() {
        assert_eq!(residues_csv(&[(2, 2, 3)]), "a_plus_b,a_minus_b,c\n2,2,3\n");
        assert_eq!(raw_residues_csv(12, &[(1, 11, 3)]), "f,a,b,c\n12,1,11,3\n");
    }

    #[test]
    fn poly_lines() {
        let p = crate::cyclo::cyclotomic(12);
        assert_eq!(
            poly_text("P", &p, &[12, 6]),
            "P = x^4 - x^2 + 1\nPhi_12 divides P: true\nPhi_6 divides P: false\n"
        );
    }
}
