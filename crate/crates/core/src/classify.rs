//! Closed-form nut classification from the parameters alone.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::{gcd, gcd_all, prime_factors, v2};
use crate::cyclo::{divisor_scan, DivisorOutcome};
use crate::error::Result;
use crate::spec::{make_spec, normalize_spec, BicirculantSpec, ClassTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConditionId {
    I,
    Ii,
    Iii,
    Iv,
}

impl ConditionId {
    pub const ALL: [ConditionId; 4] = [ConditionId::I, ConditionId::Ii, ConditionId::Iii, ConditionId::Iv];

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionId::I => "(i)",
            ConditionId::Ii => "(ii)",
            ConditionId::Iii => "(iii)",
            ConditionId::Iv => "(iv)",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    ConditionsSatisfied,
    ViolatedCondition { class: ClassTag, id: ConditionId },
    BipartiteClass,
    WitnessDivisor { f: u64 },
}

impl Reason {
    /// Stable reason code used in serialized output.
    pub fn code(&self) -> String {
        match self {
            Reason::ConditionsSatisfied => "conditions-satisfied".into(),
            Reason::ViolatedCondition { id, .. } => format!("violated-{id}"),
            Reason::BipartiteClass => "bipartite-class".into(),
            Reason::WitnessDivisor { .. } => "witness-divisor".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub spec: BicirculantSpec,
    pub is_nut: bool,
    pub reason: Reason,
    /// A divisor `f` of `m` whose primitive f-th roots give a zero eigenvalue,
    /// when the failed condition points at one.
    pub witness_f: Option<u64>,
}

/// Flat serialized form of a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub class: ClassTag,
    pub m: u64,
    pub a: i64,
    pub b: i64,
    pub c: Option<i64>,
    pub is_nut: bool,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_f: Option<u64>,
}

impl Verdict {
    fn nut(spec: &BicirculantSpec) -> Self {
        Verdict {
            spec: *spec,
            is_nut: true,
            reason: Reason::ConditionsSatisfied,
            witness_f: None,
        }
    }

    fn violated(spec: &BicirculantSpec, id: ConditionId, witness_f: Option<u64>) -> Self {
        Verdict {
            spec: *spec,
            is_nut: false,
            reason: Reason::ViolatedCondition {
                class: spec.class(),
                id,
            },
            witness_f,
        }
    }

    pub fn record(&self) -> VerdictRecord {
        VerdictRecord {
            class: self.spec.class(),
            m: self.spec.m(),
            a: self.spec.a(),
            b: self.spec.b(),
            c: self.spec.c(),
            is_nut: self.is_nut,
            reason: self.reason.code(),
            witness_f: self.witness_f,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.record()).expect("verdict serializes")
    }
}

/// `Ok(())` if the condition holds, otherwise `Err(witness)`.
type Check = std::result::Result<(), Option<u64>>;

fn smallest_prime(n: i64) -> u64 {
    prime_factors(n.unsigned_abs())[0]
}

fn b1_check(id: ConditionId, m: i64, a: i64, b: i64) -> Check {
    let ok = match id {
        ConditionId::I => m % 4 == 2,
        ConditionId::Ii => a % 2 == 0 && b % 2 == 0,
        ConditionId::Iii => {
            let g = gcd_all(&[m / 2, a, b]);
            return if g == 1 {
                Ok(())
            } else {
                Err(Some(2 * smallest_prime(g)))
            };
        }
        ConditionId::Iv => m % 5 != 0 || [a, b, a - b, a + b].iter().any(|x| x % 5 == 0),
    };
    let witness = (id == ConditionId::Iv).then_some(10);
    if ok {
        Ok(())
    } else {
        Err(witness)
    }
}

fn b2_check(id: ConditionId, m: i64, a: i64, b: i64, c: i64) -> Check {
    match id {
        ConditionId::I => {
            let pairs = [
                (a - b, a + b + c),
                (a - b, a + b - c),
                (a + b, a - b + c),
                (a + b, a - b - c),
            ];
            for (x, y) in pairs {
                let g = gcd(m, gcd(x, y));
                if g != 1 {
                    return Err(Some(smallest_prime(g)));
                }
            }
            Ok(())
        }
        ConditionId::Ii => {
            let vc = v2(c);
            if v2(m) > vc && (v2(a) + 1 == vc || v2(b) + 1 == vc) {
                Err(Some(1 << (vc + 1)))
            } else {
                Ok(())
            }
        }
        ConditionId::Iii => {
            let key = |x: i64| x.rem_euclid(12) as u64;
            if m % 12 == 0 && forbidden_triples_12().contains(&(key(a + b), key(a - b), key(c))) {
                Err(Some(12))
            } else {
                Ok(())
            }
        }
        ConditionId::Iv => {
            let key = |x: i64| x.rem_euclid(30) as u64;
            if m % 30 == 0 && forbidden_triples_30().contains(&(key(a + b), key(a - b), key(c))) {
                Err(Some(30))
            } else {
                Ok(())
            }
        }
    }
}

fn b3_check(id: ConditionId, m: i64, a: i64, b: i64) -> Check {
    match id {
        ConditionId::I if a % 2 == 0 || b % 2 == 0 => Err(None),
        ConditionId::Ii => {
            let g = gcd(m, a) * gcd(m, b);
            if g == 1 {
                Ok(())
            } else {
                Err(Some(2 * smallest_prime(g)))
            }
        }
        ConditionId::Iii => {
            let d = v2(b - a);
            if d >= v2(m) {
                Ok(())
            } else {
                Err(Some(1 << (d + 1)))
            }
        }
        _ => Ok(()),
    }
}

/// Forbidden `(a+b, a-b, c)` residues mod 12: `(+-2, +-2, +-3)`.
pub fn forbidden_triples_12() -> &'static BTreeSet<(u64, u64, u64)> {
    static TABLE: OnceLock<BTreeSet<(u64, u64, u64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let r = |x: i64| x.rem_euclid(12) as u64;
        let mut set = BTreeSet::new();
        for s in [2, -2] {
            for d in [2, -2] {
                for c in [3, -3] {
                    set.insert((r(s), r(d), r(c)));
                }
            }
        }
        set
    })
}

/// Forbidden `(a+b, a-b, c)` residues mod 30: `{a+b, a-b}` is `{+-x, +-y}` in either
/// order and `c` is `+-z` for `(x, y, z)` in `(3, 5, 6)`, `(3, 9, 10)`, `(5, 9, 12)`.
pub fn forbidden_triples_30() -> &'static BTreeSet<(u64, u64, u64)> {
    static TABLE: OnceLock<BTreeSet<(u64, u64, u64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let r = |x: i64| x.rem_euclid(30) as u64;
        let mut set = BTreeSet::new();
        for (x, y, z) in [(3, 5, 6), (3, 9, 10), (5, 9, 12)] {
            for sx in [1, -1] {
                for sy in [1, -1] {
                    for sz in [1, -1] {
                        set.insert((r(sx * x), r(sy * y), r(sz * z)));
                        set.insert((r(sy * y), r(sx * x), r(sz * z)));
                    }
                }
            }
        }
        set
    })
}

fn first_violation(check: impl Fn(ConditionId) -> Check) -> Option<(ConditionId, Option<u64>)> {
    ConditionId::ALL
        .into_iter()
        .find_map(|id| check(id).err().map(|w| (id, w)))
}

/// The spec itself if it is in the canonical range, else its normalization.
fn canonical_params(spec: &BicirculantSpec) -> BicirculantSpec {
    if make_spec(spec.class(), spec.m() as i64, spec.a(), spec.b(), spec.c()).is_ok() {
        *spec
    } else {
        normalize_spec(spec).expect("structurally valid specs normalize")
    }
}

/// Classifies a spec, reporting the first violated condition.
///
/// The conditions are stated for canonical parameters; specs outside the canonical
/// range are evaluated through their normalization but reported as given.
pub fn classify(spec: &BicirculantSpec) -> Verdict {
    let params = canonical_params(spec);
    let (m, a, b) = (params.m() as i64, params.a(), params.b());
    let violation = match spec.class() {
        ClassTag::B1 => first_violation(|id| b1_check(id, m, a, b)),
        ClassTag::B2 => {
            let c = params.c().expect("B2 has c");
            first_violation(|id| b2_check(id, m, a, b, c))
        }
        ClassTag::B3 => first_violation(|id| b3_check(id, m, a, b)),
        ClassTag::B4 => {
            return Verdict {
                spec: *spec,
                is_nut: false,
                reason: Reason::BipartiteClass,
                witness_f: None,
            }
        }
    };
    match violation {
        None => Verdict::nut(spec),
        Some((id, witness)) => Verdict::violated(spec, id, witness),
    }
}

pub fn classify_b1(m: i64, a: i64, b: i64) -> Result<Verdict> {
    make_spec(ClassTag::B1, m, a, b, None).map(|s| classify(&s))
}

pub fn classify_b2(m: i64, a: i64, b: i64, c: i64) -> Result<Verdict> {
    make_spec(ClassTag::B2, m, a, b, Some(c)).map(|s| classify(&s))
}

pub fn classify_b3(m: i64, a: i64, b: i64) -> Result<Verdict> {
    make_spec(ClassTag::B3, m, a, b, None).map(|s| classify(&s))
}

/// True if all four B1 conditions hold.
pub fn b1_conditions_hold(spec: &BicirculantSpec) -> bool {
    let spec = canonical_params(spec);
    let (m, a, b) = (spec.m() as i64, spec.a(), spec.b());
    ConditionId::ALL.iter().all(|&id| b1_check(id, m, a, b).is_ok())
}

/// True if the first `count` B2 conditions hold.
pub fn b2_conditions_hold(spec: &BicirculantSpec, count: usize) -> bool {
    let spec = canonical_params(spec);
    let (m, a, b) = (spec.m() as i64, spec.a(), spec.b());
    let c = spec.c().expect("B2 has c");
    ConditionId::ALL[..count]
        .iter()
        .all(|&id| b2_check(id, m, a, b, c).is_ok())
}

/// Verdict from the divisor scan: a not-nut answer names the dividing `f`.
pub fn divisor_verdict(spec: &BicirculantSpec) -> Result<Verdict> {
    Ok(match divisor_scan(spec)? {
        DivisorOutcome::Nut => Verdict::nut(spec),
        DivisorOutcome::Divides(f) => Verdict {
            spec: *spec,
            is_nut: false,
            reason: Reason::WitnessDivisor { f },
            witness_f: Some(f),
        },
        DivisorOutcome::Precondition => classify(spec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(text: &str) -> Verdict {
        classify(&text.parse().unwrap())
    }

    fn violated(v: &Verdict) -> Option<ConditionId> {
        match v.reason {
            Reason::ViolatedCondition { id, .. } => Some(id),
            _ => None,
        }
    }

    #[test]
    fn b1_examples() {
        assert!(classify_b1(6, 2, 2).unwrap().is_nut);
        let v = classify_b1(8, 2, 2).unwrap();
        assert_eq!(violated(&v), Some(ConditionId::I));
        let v = classify_b1(10, 2, 4).unwrap();
        assert_eq!((violated(&v), v.witness_f), (Some(ConditionId::Iv), Some(10)));
        assert!(classify_b1(8, 2, 5).is_err());
    }

    #[test]
    fn b2_examples() {
        let v = classify_b2(24, 4, 6, 3).unwrap();
        assert_eq!((violated(&v), v.witness_f), (Some(ConditionId::Iii), Some(12)));
        let v = classify_b2(30, 1, 4, 6).unwrap();
        assert_eq!((violated(&v), v.witness_f), (Some(ConditionId::Iv), Some(30)));
        assert!(classify_b2(4, 1, 1, 1).unwrap().is_nut);
        for p in [5, 7, 11, 13] {
            let v = classify_b2(p, 1, 1, 2).unwrap();
            assert_eq!(violated(&v), Some(ConditionId::I), "m = {p}");
        }
    }

    #[test]
    fn b3_examples() {
        assert!(classify_b3(10, 1, 3).unwrap().is_nut);
        assert!(classify_b3(6, 1, 5).unwrap().is_nut);
        let v = classify_b3(8, 1, 3).unwrap();
        assert_eq!((violated(&v), v.witness_f), (Some(ConditionId::Iii), Some(4)));
        assert_eq!(violated(&classify_b3(8, 2, 4).unwrap()), Some(ConditionId::I));
    }

    #[test]
    fn dispatch_examples() {
        let v = verdict("B4(4;1,2,3)");
        assert_eq!((v.is_nut, v.reason), (false, Reason::BipartiteClass));
        assert!(verdict("B2(6;1,2,3)").is_nut);
        assert!(!verdict("B1(8;2,2)").is_nut);
    }

    #[test]
    fn forbidden_table_sizes() {
        assert_eq!(forbidden_triples_12().len(), 8);
        assert_eq!(forbidden_triples_30().len(), 48);
    }

    #[test]
    fn raw_specs_use_canonical_parameters() {
        let raw = BicirculantSpec::raw(ClassTag::B3, 30, -89, -76, None).unwrap();
        let v = classify(&raw);
        assert_eq!(v.spec, raw);
        assert_eq!(v.is_nut, classify(&normalize_spec(&raw).unwrap()).is_nut);
    }

    #[test]
    fn json_record() {
        assert_eq!(
            verdict("B2(24;4,6,3)").to_json(),
            r#"{"class":"B2","m":24,"a":4,"b":6,"c":3,"is_nut":false,"reason":"violated-(iii)","witness_f":12}"#
        );
        assert_eq!(
            verdict("B3(10;1,3)").to_json(),
            r#"{"class":"B3","m":10,"a":1,"b":3,"c":null,"is_nut":true,"reason":"conditions-satisfied"}"#
        );
    }

    #[test]
    fn divisor_verdict_names_witness() {
        let v = divisor_verdict(&"B2(24;4,6,3)".parse().unwrap()).unwrap();
        assert_eq!((v.reason, v.witness_f), (Reason::WitnessDivisor { f: 12 }, Some(12)));
        let v = divisor_verdict(&"B1(8;2,2)".parse().unwrap()).unwrap();
        assert_eq!(violated(&v), Some(ConditionId::I));
    }
}
