//! Cyclotomic polynomials and divisor-level zero-eigenvalue tests.
//!
//! The eigenvalues of `Bicirc(m; S, T, R)` at `zeta = w^k` (`w` a primitive m-th root
//! of unity) are the eigenvalues of `[[L_S, L_R], [conj(L_R), L_T]]`, where
//! `L_X = sum_{x in X} zeta^x`. Zero occurs iff `L_S L_T = |L_R|^2`, twice iff the
//! whole matrix vanishes. Each condition is a polynomial identity in `zeta`, so it
//! holds for all primitive f-th roots at once iff `Phi_f` divides the polynomial.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{divisors, euler_phi, gcd, v2};
use crate::classify::{b1_conditions_hold, b2_conditions_hold};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::spec::{BicirculantSpec, ClassTag};

/// Moduli scanned for class B2 once the gcd and 2-adic conditions hold.
pub const DIVISOR_SET: [u64; 19] = [2, 3, 4, 5, 6, 7, 8, 10, 12, 14, 15, 20, 24, 28, 30, 40, 56, 60, 120];

/// Odd moduli scanned against `R_{a,b}` for class B1.
pub const B1_ODD_SET: [u64; 5] = [3, 5, 7, 15, 21];

/// Even moduli scanned against `Q_{a,b}` for class B1.
pub const B1_EVEN_SET: [u64; 5] = [6, 10, 14, 30, 42];

type Cache = RwLock<HashMap<u64, Arc<IntPolynomial>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cyclotomic_arc(f: u64) -> Arc<IntPolynomial> {
    assert!(f >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().read().unwrap().get(&f) {
        return Arc::clone(p);
    }
    let mut p = IntPolynomial::x_pow_minus_one(f);
    for d in divisors(f).into_iter().filter(|&d| d < f) {
        p = p
            .exact_div_monic(&cyclotomic_arc(d))
            .expect("x^f - 1 is divisible by every Phi_d with d | f");
    }
    let p = Arc::new(p);
    Arc::clone(cache().write().unwrap().entry(f).or_insert(p))
}

/// The f-th cyclotomic polynomial.
pub fn cyclotomic(f: u64) -> IntPolynomial {
    (*cyclotomic_arc(f)).clone()
}

pub fn divides_cyclotomic(f: u64, p: &IntPolynomial) -> bool {
    p.div_rem_monic(&cyclotomic_arc(f)).1.is_zero()
}

fn exp(e: i64) -> u64 {
    u64::try_from(e).expect("class polynomial exponents are nonnegative")
}

/// `x^{2a+2b} + x^{2a} + x^{2b} + 1 + x^{2a+b} + x^{a+2b} + x^a + x^b`.
///
/// Panics if an exponent is negative.
pub fn poly_r(a: i64, b: i64) -> IntPolynomial {
    IntPolynomial::from_terms(&[
        (1, exp(2 * a + 2 * b)),
        (1, exp(2 * a)),
        (1, exp(2 * b)),
        (1, 0),
        (1, exp(2 * a + b)),
        (1, exp(a + 2 * b)),
        (1, exp(a)),
        (1, exp(b)),
    ])
}

/// `x^{2a+2b} + x^{2a} + x^{2b} + 1 - x^{2a+b} - x^{a+2b} - x^a - x^b`.
///
/// Panics if an exponent is negative.
pub fn poly_q(a: i64, b: i64) -> IntPolynomial {
    IntPolynomial::from_terms(&[
        (1, exp(2 * a + 2 * b)),
        (1, exp(2 * a)),
        (1, exp(2 * b)),
        (1, 0),
        (-1, exp(2 * a + b)),
        (-1, exp(a + 2 * b)),
        (-1, exp(a)),
        (-1, exp(b)),
    ])
}

/// `x^{2a+2b+c} + x^{2a+c} + x^{2b+c} + x^c - x^{a+b+2c} - x^{a+b} - 2x^{a+b+c}`.
///
/// Panics if an exponent is negative.
pub fn poly_p(a: i64, b: i64, c: i64) -> IntPolynomial {
    IntPolynomial::from_terms(&[
        (1, exp(2 * a + 2 * b + c)),
        (1, exp(2 * a + c)),
        (1, exp(2 * b + c)),
        (1, exp(c)),
        (-1, exp(a + b + 2 * c)),
        (-1, exp(a + b)),
        (-2, exp(a + b + c)),
    ])
}

/// `(x^{b-a} + 1)(x^a + 1)(x^b + 1)`.
///
/// Panics unless `0 <= a <= b`.
pub fn poly_b3(a: i64, b: i64) -> IntPolynomial {
    let binomial = |e: i64| IntPolynomial::from_terms(&[(1, exp(e)), (1, 0)]);
    &(&binomial(b - a) * &binomial(a)) * &binomial(b)
}

/// Outcome of the per-class divisor scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorOutcome {
    Nut,
    /// A parity or congruence precondition on the parameters fails.
    Precondition,
    /// `Phi_f` divides the class polynomial for this divisor `f` of `m`.
    Divides(u64),
}

impl DivisorOutcome {
    pub fn is_nut(self) -> bool {
        self == DivisorOutcome::Nut
    }
}

fn first_dividing(m: u64, keep: impl Fn(u64) -> bool, poly: impl Fn(u64) -> IntPolynomial) -> DivisorOutcome {
    divisors(m)
        .into_iter()
        .filter(|&f| keep(f))
        .find(|&f| divides_cyclotomic(f, &poly(f)))
        .map_or(DivisorOutcome::Nut, DivisorOutcome::Divides)
}

/// Nut test by scanning divisors of `m` against the class polynomial.
pub fn divisor_scan(spec: &BicirculantSpec) -> Result<DivisorOutcome> {
    let (m, a, b) = (spec.m(), spec.a(), spec.b());
    match spec.class() {
        ClassTag::B1 => {
            if m % 4 != 2 || a % 2 != 0 || b % 2 != 0 {
                return Ok(DivisorOutcome::Precondition);
            }
            let (r, q) = (poly_r(a, b), poly_q(a, b));
            Ok(first_dividing(
                m,
                |f| f >= 3,
                |f| if f % 2 == 1 { r.clone() } else { q.clone() },
            ))
        }
        ClassTag::B2 => {
            let p = poly_p(a, b, spec.c().expect("B2 has c"));
            Ok(first_dividing(m, |f| f >= 2, |_| p.clone()))
        }
        ClassTag::B3 => {
            if a % 2 == 0 || b % 2 == 0 {
                return Ok(DivisorOutcome::Precondition);
            }
            let p = poly_b3(a, b);
            Ok(first_dividing(m, |f| f >= 3, |_| p.clone()))
        }
        ClassTag::B4 => Err(Error::UnsupportedClass {
            op: "nut_via_divisors",
            class: ClassTag::B4,
        }),
    }
}

pub fn nut_via_divisors(spec: &BicirculantSpec) -> Result<bool> {
    divisor_scan(spec).map(DivisorOutcome::is_nut)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "result", content = "f")]
pub enum FiniteSetVerdict {
    Nut,
    NotNut(u64),
    NotApplicable,
}

/// Nut test that scans only the finite moduli sets, valid once the arithmetic
/// preconditions of the class hold.
pub fn nut_via_finite_sets(spec: &BicirculantSpec) -> Result<FiniteSetVerdict> {
    let (m, a, b) = (spec.m(), spec.a(), spec.b());
    let scan =
        |set: &[u64], poly: &IntPolynomial| set.iter().copied().find(|&f| m % f == 0 && divides_cyclotomic(f, poly));
    match spec.class() {
        ClassTag::B1 => {
            if !b1_conditions_hold(spec) {
                return Ok(FiniteSetVerdict::NotApplicable);
            }
            let hit = scan(&B1_ODD_SET, &poly_r(a, b)).or_else(|| scan(&B1_EVEN_SET, &poly_q(a, b)));
            Ok(hit.map_or(FiniteSetVerdict::Nut, FiniteSetVerdict::NotNut))
        }
        ClassTag::B2 => {
            if !b2_conditions_hold(spec, 2) {
                return Ok(FiniteSetVerdict::NotApplicable);
            }
            let hit = scan(&DIVISOR_SET, &poly_p(a, b, spec.c().expect("B2 has c")));
            Ok(hit.map_or(FiniteSetVerdict::Nut, FiniteSetVerdict::NotNut))
        }
        class => Err(Error::UnsupportedClass {
            op: "nut_via_finite_sets",
            class,
        }),
    }
}

/// Zero eigenvalues of the adjacency matrix, grouped by the order of `zeta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSpectrumReport {
    pub spec: String,
    /// Divisors `f` of `m` whose primitive f-th roots give a zero eigenvalue.
    pub satisfied_divisors: Vec<u64>,
    /// The subset of `satisfied_divisors` where the 2x2 block vanishes entirely.
    pub double_divisors: Vec<u64>,
    pub multiplicity: u64,
}

/// Generating polynomial of a residue set, exponents folded mod `f`.
fn folded(set: &[u64], f: u64, negate: bool) -> Vec<i64> {
    let mut v = vec![0i64; f as usize];
    for &x in set {
        let e = if negate { (f - x % f) % f } else { x % f };
        v[e as usize] += 1;
    }
    v
}

fn cyclic_product(p: &[i64], q: &[i64]) -> Vec<i64> {
    let f = p.len();
    let mut out = vec![0i64; f];
    for (i, &x) in p.iter().enumerate().filter(|(_, &x)| x != 0) {
        for (j, &y) in q.iter().enumerate() {
            out[(i + j) % f] += x * y;
        }
    }
    out
}

fn vanishes_at(f: u64, coeffs: &[i64]) -> bool {
    divides_cyclotomic(f, &IntPolynomial::from_i64(coeffs))
}

/// Counts zero eigenvalues with multiplicity from the connection sets alone.
///
/// A vanishing 2x2 block contributes two zeros per root; this only happens in
/// class B2, where `L_S`, `L_T` and `L_R` can vanish simultaneously.
pub fn zero_multiplicity(spec: &BicirculantSpec) -> Result<ZeroSpectrumReport> {
    if spec.class() == ClassTag::B4 {
        return Err(Error::UnsupportedClass {
            op: "zero_multiplicity",
            class: ClassTag::B4,
        });
    }
    let sets = spec.connection_sets();
    let mut satisfied = Vec::new();
    let mut double = Vec::new();
    let mut multiplicity = 0;
    for f in divisors(spec.m()) {
        let (ls, lt) = (folded(&sets.s, f, false), folded(&sets.t, f, false));
        let (lr, lr_conj) = (folded(&sets.r, f, false), folded(&sets.r, f, true));
        let st = cyclic_product(&ls, &lt);
        let rr = cyclic_product(&lr, &lr_conj);
        let det: Vec<i64> = st.iter().zip(&rr).map(|(x, y)| x - y).collect();
        if !vanishes_at(f, &det) {
            continue;
        }
        satisfied.push(f);
        multiplicity += euler_phi(f);
        if vanishes_at(f, &ls) && vanishes_at(f, &lt) && vanishes_at(f, &lr) {
            double.push(f);
            multiplicity += euler_phi(f);
        }
    }
    Ok(ZeroSpectrumReport {
        spec: spec.to_string(),
        satisfied_divisors: satisfied,
        double_divisors: double,
        multiplicity,
    })
}

/// Residues of `x^k` modulo `Phi_f` for `k` in `0..f`, as coefficient rows of
/// length `deg Phi_f`.
fn power_residues(f: u64) -> Vec<Vec<i64>> {
    let phi = cyclotomic_arc(f);
    let deg = phi.degree().expect("nonzero");
    (0..f)
        .map(|k| {
            let (_, r) = IntPolynomial::monomial(1, k).div_rem_monic(&phi);
            (0..deg)
                .map(|i| r.coeff(i).to_i64().expect("small remainder coefficient"))
                .collect()
        })
        .collect()
}

fn passes_script_filters(f: i64, a: i64, b: i64, c: i64) -> bool {
    let gcd_ok = [
        (a - b, c + a + b),
        (a - b, c - a - b),
        (a + b, c + a - b),
        (a + b, c - a + b),
    ]
    .iter()
    .all(|&(x, y)| gcd(gcd(f, x), y) == 1);
    let vf = v2(f);
    let vc = v2(c);
    gcd_ok && !(vc == v2(a) + 1 && vf > vc) && !(vc == v2(b) + 1 && vf > vc)
}

/// Raw `(a, b, c)` hits, each in `1..=f`, in lexicographic order.
///
/// For every triple passing the gcd and 2-adic filters, tests whether `Phi_f` divides
/// `x^{a+b} + x^{a-b} + x^{b-a} + x^{-a-b} - 2 - x^c - x^{-c}` with exponents mod `f`,
/// which is `x^{-(a+b+c)} P_{a,b,c}` and so has the same cyclotomic divisors.
pub fn residue_search_raw(f: u64) -> Result<Vec<(u64, u64, u64)>> {
    if !DIVISOR_SET.contains(&f) {
        return Err(Error::NotInDivisorSet { f });
    }
    let rows = power_residues(f);
    let deg = rows[0].len();
    let fi = f as i64;
    let idx = |e: i64| e.rem_euclid(fi) as usize;
    let mut hits = Vec::new();
    let mut acc = vec![0i64; deg];
    for a in 1..=fi {
        for b in 1..=fi {
            for c in 1..=fi {
                if !passes_script_filters(fi, a, b, c) {
                    continue;
                }
                acc.iter_mut().for_each(|x| *x = 0);
                acc[0] -= 2;
                for (sign, e) in [(1, a + b), (1, a - b), (1, b - a), (1, -a - b), (-1, c), (-1, -c)] {
                    for (x, y) in acc.iter_mut().zip(&rows[idx(e)]) {
                        *x += sign * y;
                    }
                }
                if acc.iter().all(|&x| x == 0) {
                    hits.push((a as u64, b as u64, c as u64));
                }
            }
        }
    }
    Ok(hits)
}

/// Distinct `((a+b) mod f, (a-b) mod f, c mod f)` over the raw hits, sorted.
pub fn residue_search(f: u64) -> Result<Vec<(u64, u64, u64)>> {
    let fi = f as i64;
    let set: BTreeSet<_> = residue_search_raw(f)?
        .into_iter()
        .map(|(a, b, c)| {
            let (a, b, c) = (a as i64, b as i64, c as i64);
            (
                (a + b).rem_euclid(fi) as u64,
                (a - b).rem_euclid(fi) as u64,
                c.rem_euclid(fi) as u64,
            )
        })
        .collect();
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::kernel::{adjacency_matrix, kernel_basis};

    fn spec(text: &str) -> BicirculantSpec {
        text.parse().unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(30), IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, 0, 1, 1]));
        // Phi_105 is the smallest with a coefficient outside {-1, 0, 1}
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == (-2).into()));
    }

    #[test]
    fn class_polynomials() {
        assert_eq!(poly_r(1, 1), IntPolynomial::from_i64(&[1, 2, 2, 2, 1]));
        assert_eq!(poly_q(1, 1), IntPolynomial::from_i64(&[1, -2, 2, -2, 1]));
        assert_eq!(poly_q(2, 2), IntPolynomial::from_i64(&[1, 0, -2, 0, 2, 0, -2, 0, 1]));
        assert_eq!(poly_p(1, 1, 1), IntPolynomial::from_i64(&[0, 1, -1, 0, -1, 1]));
        assert_eq!(
            poly_p(4, 6, 3),
            IntPolynomial::from_terms(&[(1, 23), (1, 11), (1, 15), (1, 3), (-1, 16), (-1, 10), (-2, 13)])
        );
        assert_eq!(
            poly_b3(1, 3),
            &(&IntPolynomial::from_i64(&[1, 0, 1]) * &IntPolynomial::from_i64(&[1, 1]))
                * &IntPolynomial::from_i64(&[1, 0, 0, 1])
        );
        assert_eq!(poly_b3(2, 7).eval(&1.into()), 8.into());
    }

    #[test]
    fn worked_factorizations() {
        let cofactor =
            IntPolynomial::from_terms(&[(1, 19), (1, 17), (-1, 13), (-1, 12), (-1, 10), (-1, 9), (1, 5), (1, 3)]);
        assert_eq!(poly_p(4, 6, 3).exact_div_monic(&cyclotomic(12)), Some(cofactor));
        let cofactor = IntPolynomial::from_terms(&[(-1, 9), (2, 8), (-2, 7), (2, 6), (-1, 5)]);
        assert_eq!(poly_p(1, 4, 6).exact_div_monic(&cyclotomic(30)), Some(cofactor));
        assert!(divides_cyclotomic(1, &poly_p(3, 5, 7)));
    }

    #[test]
    fn divisor_scan_examples() {
        assert_eq!(
            divisor_scan(&spec("B2(24;4,6,3)")).unwrap(),
            DivisorOutcome::Divides(12)
        );
        assert!(nut_via_divisors(&spec("B2(4;1,1,1)")).unwrap());
        assert!(!nut_via_divisors(&spec("B3(8;1,3)")).unwrap());
        assert!(nut_via_divisors(&spec("B4(4;1,2,3)")).is_err());
    }

    #[test]
    fn finite_set_examples() {
        assert_eq!(nut_via_finite_sets(&spec("B1(6;2,2)")).unwrap(), FiniteSetVerdict::Nut);
        assert_eq!(
            nut_via_finite_sets(&spec("B2(24;4,6,3)")).unwrap(),
            FiniteSetVerdict::NotNut(12)
        );
        assert_eq!(
            nut_via_finite_sets(&spec("B1(8;2,2)")).unwrap(),
            FiniteSetVerdict::NotApplicable
        );
        assert!(nut_via_finite_sets(&spec("B3(10;1,3)")).is_err());
    }

    #[test]
    fn zero_multiplicity_examples() {
        let report = zero_multiplicity(&spec("B2(4;1,1,1)")).unwrap();
        assert_eq!((report.satisfied_divisors.clone(), report.multiplicity), (vec![1], 1));
        for text in ["B2(6;2,2,2)", "B2(24;4,6,3)", "B2(4;1,1,2)", "B1(8;2,2)", "B3(8;1,3)"] {
            let s = spec(text);
            let report = zero_multiplicity(&s).unwrap();
            let dim = kernel_basis(&adjacency_matrix(&build_graph(&s))).dim() as u64;
            assert_eq!(report.multiplicity, dim, "{text}");
        }
        let report = zero_multiplicity(&spec("B2(24;4,6,3)")).unwrap();
        assert!(report.satisfied_divisors.starts_with(&[1]));
        assert!(report.satisfied_divisors.contains(&12));
        // K_{4,4}: kernel of dimension 6 comes from two vanishing blocks at f = 4
        let report = zero_multiplicity(&spec("B2(4;1,1,2)")).unwrap();
        assert_eq!(report.double_divisors, vec![4]);
        assert_eq!(report.multiplicity, 6);
        assert!(zero_multiplicity(&spec("B4(4;1,2,3)")).is_err());
    }

    #[test]
    fn residue_search_small_moduli() {
        assert!(residue_search(7).unwrap().is_empty());
        assert!(residue_search(8).unwrap().is_empty());
        let twelve = residue_search(12).unwrap();
        let expected: Vec<_> = [2, 10]
            .iter()
            .flat_map(|&s| [2, 10].iter().flat_map(move |&d| [3, 9].map(|c| (s, d, c))))
            .collect();
        assert_eq!(twelve, expected);
        assert!(matches!(residue_search(11), Err(Error::NotInDivisorSet { f: 11 })));
    }

    #[test]
    fn raw_hits_satisfy_exact_division() {
        for (a, b, c) in residue_search_raw(12).unwrap() {
            assert!(divides_cyclotomic(12, &poly_p(a as i64, b as i64, c as i64)));
        }
    }
}
