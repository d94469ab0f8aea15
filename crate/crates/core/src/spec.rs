//! Parameter specifications for the four classes of connected quartic bicirculants.
//!
//! A spec names one graph `Bicirc(m; S, T, R)`:
//!
//! | class | S              | T              | R              |
//! |-------|----------------|----------------|----------------|
//! | B1    | {a, -a, m/2}   | {b, -b, m/2}   | {0}            |
//! | B2    | {a, -a}        | {b, -b}        | {0, c}         |
//! | B3    | {m/2}          | {m/2}          | {0, a, b}      |
//! | B4    | {}             | {}             | {0, a, b, c}   |
//!
//! [`make_spec`] accepts only the canonical parameter ranges. [`BicirculantSpec::raw`]
//! accepts any parameters that still describe a simple quartic graph of the class;
//! [`normalize_spec`] maps those into the canonical range.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::gcd_all;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    B1,
    B2,
    B3,
    B4,
}

impl ClassTag {
    pub const ALL: [ClassTag; 4] = [ClassTag::B1, ClassTag::B2, ClassTag::B3, ClassTag::B4];

    pub fn has_c(self) -> bool {
        matches!(self, ClassTag::B2 | ClassTag::B4)
    }

    /// B1 and B3 carry a semi-edge of voltage m/2 and need even m.
    pub fn needs_even_m(self) -> bool {
        matches!(self, ClassTag::B1 | ClassTag::B3)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::B1 => "B1",
            ClassTag::B2 => "B2",
            ClassTag::B3 => "B3",
            ClassTag::B4 => "B4",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B1" | "b1" => Ok(ClassTag::B1),
            "B2" | "b2" => Ok(ClassTag::B2),
            "B3" | "b3" => Ok(ClassTag::B3),
            "B4" | "b4" => Ok(ClassTag::B4),
            other => Err(Error::Parse {
                input: other.to_string(),
                detail: "class tag must be one of B1, B2, B3, B4".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BicirculantSpec {
    class: ClassTag,
    m: u64,
    a: i64,
    b: i64,
    c: Option<i64>,
}

/// Connection sets as residues in `0..m`, each without repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSets {
    pub s: Vec<u64>,
    pub t: Vec<u64>,
    pub r: Vec<u64>,
}

fn residue(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

fn dedup(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

impl BicirculantSpec {
    /// Builds a spec from arbitrary integer parameters, checking only that the
    /// resulting bicirculant is simple and quartic. Parameters are kept as given.
    pub fn raw(class: ClassTag, m: u64, a: i64, b: i64, c: Option<i64>) -> Result<Self> {
        check_c_presence(class, c)?;
        let min_m = if class == ClassTag::B2 { 3 } else { 4 };
        if m < min_m {
            return Err(Error::Range {
                class,
                constraint: if min_m == 3 { "m >= 3" } else { "m >= 4" },
                got: format!("m = {m}"),
            });
        }
        if class.needs_even_m() && !m.is_multiple_of(2) {
            return Err(Error::Parity {
                class,
                constraint: "m even",
                got: format!("m = {m}"),
            });
        }
        let spec = BicirculantSpec { class, m, a, b, c };
        let sets = spec.connection_sets();
        let (ns, nt, nr) = match class {
            ClassTag::B1 => (3, 3, 1),
            ClassTag::B2 => (2, 2, 2),
            ClassTag::B3 => (1, 1, 3),
            ClassTag::B4 => (0, 0, 4),
        };
        let s_ok = sets.s.len() == ns && !sets.s.contains(&0);
        let t_ok = sets.t.len() == nt && !sets.t.contains(&0);
        if !(s_ok && t_ok && sets.r.len() == nr) {
            return Err(Error::Degenerate {
                class,
                detail: format!(
                    "connection sets S={:?} T={:?} R={:?} do not give a simple quartic graph",
                    sets.s, sets.t, sets.r
                ),
            });
        }
        Ok(spec)
    }

    pub fn class(&self) -> ClassTag {
        self.class
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> Option<i64> {
        self.c
    }

    /// Number of vertices, `2m`.
    pub fn order(&self) -> usize {
        2 * self.m as usize
    }

    pub fn connection_sets(&self) -> ConnectionSets {
        let m = self.m;
        let half = m / 2;
        let (a, b) = (self.a, self.b);
        match self.class {
            ClassTag::B1 => ConnectionSets {
                s: dedup(vec![residue(a, m), residue(-a, m), half]),
                t: dedup(vec![residue(b, m), residue(-b, m), half]),
                r: vec![0],
            },
            ClassTag::B2 => ConnectionSets {
                s: dedup(vec![residue(a, m), residue(-a, m)]),
                t: dedup(vec![residue(b, m), residue(-b, m)]),
                r: dedup(vec![0, residue(self.c.unwrap_or(0), m)]),
            },
            ClassTag::B3 => ConnectionSets {
                s: vec![half],
                t: vec![half],
                r: dedup(vec![0, residue(a, m), residue(b, m)]),
            },
            ClassTag::B4 => ConnectionSets {
                s: vec![],
                t: vec![],
                r: dedup(vec![0, residue(a, m), residue(b, m), residue(self.c.unwrap_or(0), m)]),
            },
        }
    }
}

impl fmt::Display for BicirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({};{},{}", self.class, self.m, self.a, self.b)?;
        if let Some(c) = self.c {
            write!(f, ",{c}")?;
        }
        f.write_str(")")
    }
}

fn check_c_presence(class: ClassTag, c: Option<i64>) -> Result<()> {
    match (class.has_c(), c) {
        (true, None) => Err(Error::MissingC { class }),
        (false, Some(_)) => Err(Error::ExtraneousC { class }),
        _ => Ok(()),
    }
}

/// Validates parameters against the canonical range of their class. Does not normalize.
pub fn make_spec(class: ClassTag, m: i64, a: i64, b: i64, c: Option<i64>) -> Result<BicirculantSpec> {
    check_c_presence(class, c)?;
    let range = |constraint: &'static str, got: String| Error::Range { class, constraint, got };
    let parity = |constraint: &'static str, got: String| Error::Parity { class, constraint, got };
    match class {
        ClassTag::B2 if m < 3 => return Err(range("m >= 3", format!("m = {m}"))),
        ClassTag::B1 | ClassTag::B3 | ClassTag::B4 if m < 4 => return Err(range("m >= 4", format!("m = {m}"))),
        _ => {}
    }
    if class.needs_even_m() && m % 2 != 0 {
        return Err(parity("m even", format!("m = {m}")));
    }
    // 2a < m encodes a < m/2 for odd m as well.
    match class {
        ClassTag::B1 => {
            if !(1 <= a && a <= b && 2 * b < m) {
                return Err(range("1 <= a <= b < m/2", format!("a = {a}, b = {b}, m = {m}")));
            }
        }
        ClassTag::B2 => {
            if !(1 <= a && a <= b && 2 * b < m) {
                return Err(range("1 <= a <= b < m/2", format!("a = {a}, b = {b}, m = {m}")));
            }
            let c = c.unwrap_or_default();
            if !(1 <= c && 2 * c <= m) {
                return Err(range("1 <= c <= m/2", format!("c = {c}, m = {m}")));
            }
        }
        ClassTag::B3 => {
            if !(1 <= a && a < b && b < m) {
                return Err(range("1 <= a < b < m", format!("a = {a}, b = {b}, m = {m}")));
            }
            if (a - b) % 2 != 0 {
                return Err(parity("a = b (mod 2)", format!("a = {a}, b = {b}")));
            }
        }
        ClassTag::B4 => {
            let c = c.unwrap_or_default();
            if !(1 <= a && a < b && b < c && c < m) {
                return Err(range(
                    "1 <= a < b < c < m",
                    format!("a = {a}, b = {b}, c = {c}, m = {m}"),
                ));
            }
        }
    }
    // Canonical ranges always give simple quartic graphs; `raw` re-checks that.
    BicirculantSpec::raw(class, m as u64, a, b, c)
}

fn fold(x: i64, m: u64) -> i64 {
    let r = residue(x, m);
    r.min(m - r) as i64
}

/// Maps a (structurally valid) spec to the canonical parameter range of its class,
/// preserving the isomorphism type of the graph.
pub fn normalize_spec(spec: &BicirculantSpec) -> Result<BicirculantSpec> {
    let spec = BicirculantSpec::raw(spec.class, spec.m, spec.a, spec.b, spec.c)?;
    let m = spec.m;
    let mi = m as i64;
    let normalized = match spec.class {
        ClassTag::B1 => {
            let (a, b) = (fold(spec.a, m), fold(spec.b, m));
            (a.min(b), a.max(b), None)
        }
        ClassTag::B2 => {
            let (a, b) = (fold(spec.a, m), fold(spec.b, m));
            (a.min(b), a.max(b), spec.c.map(|c| fold(c, m)))
        }
        ClassTag::B3 => {
            let (a, b) = b3_canonical_pair(m, residue(spec.a, m), residue(spec.b, m));
            (a as i64, b as i64, None)
        }
        ClassTag::B4 => {
            let r = spec.connection_sets().r;
            let mut best: Option<[u64; 3]> = None;
            for sign in [1i64, -1] {
                for &shift in &r {
                    let mut t: Vec<u64> = r
                        .iter()
                        .map(|&x| residue(sign * (x as i64 - shift as i64), m))
                        .filter(|&x| x != 0)
                        .collect();
                    t.sort_unstable();
                    let t = [t[0], t[1], t[2]];
                    if best.is_none_or(|b| t < b) {
                        best = Some(t);
                    }
                }
            }
            let [a, b, c] = best.expect("R is nonempty");
            (a as i64, b as i64, Some(c as i64))
        }
    };
    let (a, b, c) = normalized;
    make_spec(spec.class, mi, a, b, c)
}

/// Least `(a, b)` with `a < b`, `a = b (mod 2)` in the orbit of `{a, b}` under
/// `(a, b) -> (-a, b - a)`, `(a, b) -> (-b, a - b)` and `(a, b) -> (-a, -b)`.
fn b3_canonical_pair(m: u64, a: u64, b: u64) -> (u64, u64) {
    let pair = |x: i64, y: i64| {
        let (x, y) = (residue(x, m), residue(y, m));
        (x.min(y), x.max(y))
    };
    let start = pair(a as i64, b as i64);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((x, y)) = queue.pop_front() {
        let (x, y) = (x as i64, y as i64);
        for next in [pair(-x, y - x), pair(-y, x - y), pair(-x, -y)] {
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter()
        .find(|&(x, y)| x >= 1 && x < y && (y - x) % 2 == 0)
        .expect("every B3 orbit contains a same-parity pair when m is even")
}

/// Connectivity from parameters: the connection sets must generate `Z_m`.
pub fn is_connected_params(spec: &BicirculantSpec) -> bool {
    let sets = spec.connection_sets();
    let mut values: Vec<i64> = vec![spec.m as i64];
    values.extend(sets.s.iter().chain(&sets.t).chain(&sets.r).map(|&x| x as i64));
    gcd_all(&values) == 1
}

/// Parses `B2(24;4,6,3)`; whitespace anywhere is ignored. Only canonical-range
/// specs are accepted.
pub fn parse_spec(text: &str) -> Result<BicirculantSpec> {
    let (class, m, a, b, c) = parse_parts(text)?;
    make_spec(class, m, a, b, c)
}

/// Like [`parse_spec`] but accepts any structurally valid parameters.
pub fn parse_raw_spec(text: &str) -> Result<BicirculantSpec> {
    let (class, m, a, b, c) = parse_parts(text)?;
    if m < 0 {
        return Err(parse_error(text, "m must be nonnegative"));
    }
    BicirculantSpec::raw(class, m as u64, a, b, c)
}

fn parse_error(text: &str, detail: &str) -> Error {
    Error::Parse {
        input: text.to_string(),
        detail: detail.to_string(),
    }
}

type Parts = (ClassTag, i64, i64, i64, Option<i64>);

fn parse_parts(text: &str) -> Result<Parts> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let open = compact.find('(').ok_or_else(|| parse_error(text, "expected '('"))?;
    let body = compact[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| parse_error(text, "expected closing ')'"))?;
    let class: ClassTag = compact[..open]
        .parse()
        .map_err(|_| parse_error(text, "class tag must be one of B1, B2, B3, B4"))?;
    let (m, rest) = body
        .split_once(';')
        .ok_or_else(|| parse_error(text, "expected ';' after m"))?;
    let int = |s: &str| {
        s.parse::<i64>()
            .map_err(|_| parse_error(text, &format!("{s:?} is not an integer")))
    };
    let m = int(m)?;
    let params = rest.split(',').map(int).collect::<Result<Vec<_>>>()?;
    match (class.has_c(), params.as_slice()) {
        (false, &[a, b]) => Ok((class, m, a, b, None)),
        (true, &[a, b, c]) => Ok((class, m, a, b, Some(c))),
        (false, &[_, _, _]) => Err(Error::ExtraneousC { class }),
        (true, &[_, _]) => Err(Error::MissingC { class }),
        _ => Err(parse_error(text, "wrong number of parameters")),
    }
}

impl FromStr for BicirculantSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(class: ClassTag, m: i64, a: i64, b: i64, c: Option<i64>) -> BicirculantSpec {
        make_spec(class, m, a, b, c).unwrap()
    }

    #[test]
    fn make_spec_examples() {
        assert!(make_spec(ClassTag::B2, 4, 1, 1, Some(1)).is_ok());
        assert!(matches!(
            make_spec(ClassTag::B1, 5, 1, 1, None),
            Err(Error::Parity { .. })
        ));
        assert!(matches!(
            make_spec(ClassTag::B3, 6, 2, 3, None),
            Err(Error::Parity { .. })
        ));
    }

    #[test]
    fn make_spec_errors() {
        assert!(matches!(
            make_spec(ClassTag::B2, 0, 1, 1, Some(1)),
            Err(Error::Range { .. })
        ));
        assert_eq!(
            make_spec(ClassTag::B2, 6, 1, 1, None),
            Err(Error::MissingC { class: ClassTag::B2 })
        );
        assert_eq!(
            make_spec(ClassTag::B3, 6, 1, 3, Some(2)),
            Err(Error::ExtraneousC { class: ClassTag::B3 })
        );
        // b must stay below m/2 for B1/B2, also for odd m
        assert!(make_spec(ClassTag::B2, 5, 1, 2, Some(2)).is_ok());
        assert!(make_spec(ClassTag::B2, 5, 1, 3, Some(2)).is_err());
        assert!(make_spec(ClassTag::B2, 5, 1, 2, Some(3)).is_err());
        assert!(make_spec(ClassTag::B4, 4, 1, 3, Some(2)).is_err());
        assert!(make_spec(ClassTag::B3, 6, 3, 3, None).is_err());
    }

    #[test]
    fn raw_specs_reject_degenerate_sets() {
        assert!(BicirculantSpec::raw(ClassTag::B2, 6, 3, 1, Some(1)).is_err());
        assert!(BicirculantSpec::raw(ClassTag::B3, 6, 4, 10, None).is_err());
        assert!(BicirculantSpec::raw(ClassTag::B3, 6, 5, 2, None).is_ok());
    }

    #[test]
    fn normalize_examples() {
        let raw = BicirculantSpec::raw(ClassTag::B3, 6, 5, 2, None).unwrap();
        assert_eq!(normalize_spec(&raw).unwrap(), spec(ClassTag::B3, 6, 1, 3, None));
        let s = spec(ClassTag::B2, 4, 1, 1, Some(1));
        assert_eq!(normalize_spec(&s).unwrap(), s);
        let s = spec(ClassTag::B3, 6, 1, 3, None);
        assert_eq!(normalize_spec(&s).unwrap(), s);
        let raw = BicirculantSpec::raw(ClassTag::B2, 10, 7, -1, Some(9)).unwrap();
        assert_eq!(normalize_spec(&raw).unwrap(), spec(ClassTag::B2, 10, 1, 3, Some(1)));
    }

    #[test]
    fn connectivity_from_params() {
        assert!(!is_connected_params(&spec(ClassTag::B2, 6, 2, 2, Some(2))));
        assert!(is_connected_params(&spec(ClassTag::B2, 6, 1, 2, Some(3))));
        assert!(!is_connected_params(&spec(ClassTag::B1, 8, 2, 2, None)));
    }

    #[test]
    fn parse_and_display() {
        let s = parse_spec(" B2( 24 ; 4, 6 ,3 ) ").unwrap();
        assert_eq!(s, spec(ClassTag::B2, 24, 4, 6, Some(3)));
        assert_eq!(s.to_string(), "B2(24;4,6,3)");
        assert_eq!(parse_spec("B3(10;1,3)").unwrap().to_string(), "B3(10;1,3)");
        assert!(matches!(parse_spec("B2(24;4,6)"), Err(Error::MissingC { .. })));
        assert!(matches!(parse_spec("B5(24;4,6,3)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("B2 24;4,6,3"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("B2(24;4,x,3)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("B2(0;1,1,1)"), Err(Error::Range { .. })));
    }
}
