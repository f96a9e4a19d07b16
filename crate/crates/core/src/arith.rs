//! Excluded-class notation `p^d u_k`, shift covering, criterion sets and the
//! subtrahend table for the exceptional lattice over `Q(sqrt(-39))`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hlattice::HermitianLattice;
use crate::quadring::QuadIntField;
use crate::zform::ZQuadForm;

/// Parity constraint on the exponent `v` of `p` in `n = p^v u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExponentParity {
    /// `p^d`: odd exponent.
    Odd,
    /// `p^e`: even exponent (including zero).
    Even,
    /// Bare `u_k`: exponent zero.
    Zero,
    Any,
}

/// Condition on the unit part `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitSpec {
    /// `u_k` for `p = 2`: `u = k (mod 8)`.
    Mod8(u8),
    /// `u_+`: quadratic residue modulo odd `p`.
    Residue,
    /// `u_-`: non-residue modulo odd `p`.
    NonResidue,
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExcludedClass {
    pub p: u64,
    pub parity: ExponentParity,
    pub unit: UnitSpec,
}

impl ExcludedClass {
    pub fn new(p: u64, parity: ExponentParity, unit: UnitSpec) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{} is not prime", p)));
        }
        match unit {
            UnitSpec::Mod8(k) if p != 2 || k % 2 == 0 || k >= 8 => {
                return Err(Error::InvalidArgument(format!("u{} needs p = 2 and an odd residue mod 8", k)))
            }
            UnitSpec::Residue | UnitSpec::NonResidue if p == 2 => {
                return Err(Error::InvalidArgument("u+ / u- need an odd prime".into()))
            }
            _ => {}
        }
        Ok(ExcludedClass { p, parity, unit })
    }

    /// Splits `n = p^v u` with `p` not dividing `u`.
    pub fn split(&self, n: u64) -> (u32, u64) {
        let mut v = 0;
        let mut u = n;
        while u % self.p == 0 {
            u /= self.p;
            v += 1;
        }
        (v, u)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Legendre-symbol style residue test for odd prime `p` and `u` coprime to `p`.
pub fn is_quadratic_residue(u: u64, p: u64) -> bool {
    let r = u % p;
    (1..p).any(|x| x * x % p == r)
}

/// True iff `n` has the shape described by `c`.
pub fn match_class(n: u64, c: &ExcludedClass) -> bool {
    if n == 0 {
        return false;
    }
    let (v, u) = c.split(n);
    let parity_ok = match c.parity {
        ExponentParity::Odd => v % 2 == 1,
        ExponentParity::Even => v % 2 == 0,
        ExponentParity::Zero => v == 0,
        ExponentParity::Any => true,
    };
    parity_ok
        && match c.unit {
            UnitSpec::Mod8(k) => u % 8 == k as u64,
            UnitSpec::Residue => is_quadratic_residue(u, c.p),
            UnitSpec::NonResidue => !is_quadratic_residue(u, c.p),
            UnitSpec::Any => true,
        }
}

impl fmt::Display for ExcludedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parity {
            ExponentParity::Odd => write!(f, "{}^d ", self.p)?,
            ExponentParity::Even => write!(f, "{}^e ", self.p)?,
            ExponentParity::Any => write!(f, "{}^* ", self.p)?,
            ExponentParity::Zero => {}
        }
        match self.unit {
            UnitSpec::Mod8(k) => write!(f, "u{}", k),
            UnitSpec::Residue => write!(f, "u+"),
            UnitSpec::NonResidue => write!(f, "u-"),
            UnitSpec::Any => write!(f, "u"),
        }
    }
}

impl FromStr for ExcludedClass {
    type Err = Error;

    /// Accepts `2^e u7`, `2^d u5`, `3^d u-`, `13^d u+`, `2^* u7` and bare `u5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad excluded class '{}'", s));
        let s = s.trim();
        let (prefix, unit) = match s.rfind(char::is_whitespace) {
            Some(i) => (Some(s[..i].trim()), s[i..].trim()),
            None => (None, s),
        };
        let unit_body = unit.strip_prefix('u').ok_or_else(bad)?;
        let (p, parity) = match prefix {
            None => (None, ExponentParity::Zero),
            Some(pre) => {
                let (p, e) = pre.split_once('^').ok_or_else(bad)?;
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let parity = match e.trim() {
                    "d" => ExponentParity::Odd,
                    "e" => ExponentParity::Even,
                    "*" => ExponentParity::Any,
                    _ => return Err(bad()),
                };
                (Some(p), parity)
            }
        };
        let unit = match unit_body {
            "+" => UnitSpec::Residue,
            "-" => UnitSpec::NonResidue,
            "" => UnitSpec::Any,
            k => UnitSpec::Mod8(k.parse().map_err(|_| bad())?),
        };
        let p = match (p, unit) {
            (Some(p), _) => p,
            (None, UnitSpec::Mod8(_)) => 2,
            _ => return Err(bad()),
        };
        ExcludedClass::new(p, parity, unit)
    }
}

/// `{k <= bound : f does not represent k}`.
pub fn excluded_set(f: &ZQuadForm, bound: u64) -> Vec<u64> {
    f.prepare().excluded(bound)
}

/// Members of `c` in `1..=bound`.
pub fn class_members(c: &ExcludedClass, bound: u64) -> Vec<u64> {
    (1..=bound).filter(|&n| match_class(n, c)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftCoveringReport {
    pub holds: bool,
    pub checked: u64,
    /// Members `n` for which every `n - s` is again in the class (first few).
    pub counterexamples: Vec<u64>,
}

/// Checks that every member `n` of `c` in `[start, bound]` has some shift
/// `s` with `n - s` outside the class.
pub fn verify_shift_covering(c: &ExcludedClass, shifts: &[u64], start: u64, bound: u64) -> ShiftCoveringReport {
    let mut counterexamples = Vec::new();
    let mut checked = 0;
    let mut holds = true;
    for n in start..=bound {
        if !match_class(n, c) {
            continue;
        }
        checked += 1;
        let covered = shifts.iter().any(|&s| s <= n && !match_class(n - s, c));
        if !covered {
            holds = false;
            if counterexamples.len() < 10 {
                counterexamples.push(n);
            }
        }
    }
    ShiftCoveringReport { holds, checked, counterexamples }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionSet {
    pub name: String,
    pub numbers: BTreeSet<u64>,
}

impl CriterionSet {
    fn of(name: &str, numbers: &[u64]) -> Self {
        CriterionSet { name: name.to_string(), numbers: numbers.iter().copied().collect() }
    }

    /// Truants for classical integral forms.
    pub fn classical15() -> Self {
        Self::of("classical15", &[1, 2, 3, 5, 6, 7, 10, 14, 15])
    }

    pub fn bhargava290() -> Self {
        Self::of(
            "bhargava290",
            &[
                1, 2, 3, 5, 6, 7, 10, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30, 31, 34, 35, 37, 42, 58, 93, 110, 145,
                203, 290,
            ],
        )
    }

    pub fn hermitian15() -> Self {
        Self::of("hermitian15", &[1, 2, 3, 5, 6, 7, 10, 13, 14, 15])
    }

    /// Looks up `classical15`, `bhargava290`, `hermitian15` or `critical(m)`.
    pub fn by_name(name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "classical15" => Ok(Self::classical15()),
            "bhargava290" => Ok(Self::bhargava290()),
            "hermitian15" => Ok(Self::hermitian15()),
            _ => {
                let m = name
                    .strip_prefix("critical(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|v| v.trim().parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown criterion set '{}'", name)))?;
                critical_set(m)
            }
        }
    }

    pub fn max(&self) -> u64 {
        *self.numbers.iter().next_back().expect("criterion sets are nonempty")
    }
}

/// Critical numbers for Hermitian lattices over `Q(sqrt(-m))`.
pub fn critical_set(m: i64) -> Result<CriterionSet> {
    QuadIntField::new(m)?;
    let numbers: &[u64] = match m {
        3 | 11 => &[1, 2],
        1 | 7 => &[1, 3],
        2 => &[1, 5],
        5 | 19 => &[1, 2, 3],
        6 => &[1, 2, 3, 5],
        15 | 23 => &[1, 2, 3, 5, 7],
        10 | 31 => &[1, 2, 3, 5, 6, 7],
        13 | 14 => &[1, 2, 3, 5, 6, 7, 10],
        39 => &[1, 2, 3, 5, 6, 7, 13],
        35 | 43 | 51 | 59 => &[1, 2, 3, 5, 6, 7, 10, 14],
        55 => &[1, 2, 3, 5, 6, 7, 10, 15],
        _ => &[1, 2, 3, 5, 6, 7, 10, 14, 15],
    };
    Ok(CriterionSet::of(&format!("critical({})", m), numbers))
}

fn represents_all(f: &ZQuadForm, set: &CriterionSet) -> bool {
    let p = f.prepare();
    set.numbers.iter().all(|&k| p.represents_u64(k))
}

/// Classical forms only: represents every number in `classical15`.
pub fn classical_15_check(f: &ZQuadForm) -> Result<bool> {
    if !f.is_classical() {
        return Err(Error::NotClassical);
    }
    Ok(represents_all(f, &CriterionSet::classical15()))
}

pub fn nonclassical_290_check(f: &ZQuadForm) -> bool {
    represents_all(f, &CriterionSet::bhargava290())
}

pub fn hermitian_15_check(l: &HermitianLattice) -> bool {
    represents_all(&l.associated_zform(), &CriterionSet::hermitian15())
}

/// `true` iff `n` is represented by at least one of the two forms.
pub fn genus_pair_check(fa: &ZQuadForm, fb: &ZQuadForm, n: u64) -> bool {
    let k = BigInt::from(n);
    fa.represents(&k).is_some() || fb.represents(&k).is_some()
}

/// The pair of ternary forms used for the exceptional lattice over `Q(sqrt(-39))`.
pub fn genus_pair() -> (ZQuadForm, ZQuadForm) {
    let a = ZQuadForm::from_gram_i64(&[vec![1, 0, 0], vec![0, 8, 2], vec![0, 2, 20]]).expect("definite");
    let b = ZQuadForm::from_gram_i64(&[vec![4, 0, 2], vec![0, 5, 1], vec![2, 1, 9]]).expect("definite");
    (a, b)
}

/// One row of the subtrahend table: for odd `n` with `n = mod4 (mod 4)`,
/// `13`-adic exponent parity `parity`, unit part residue flag and `u mod 13`
/// in `residues`, subtract `39 s^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubtrahendRow {
    pub n_mod4: u64,
    pub parity: ExponentParity,
    pub residue: bool,
    pub residues: &'static [u64],
    pub s: u64,
}

pub const SUBTRAHEND_TABLE: &[SubtrahendRow] = &[
    SubtrahendRow { n_mod4: 1, parity: ExponentParity::Odd, residue: true, residues: &[1, 4, 10], s: 2 },
    SubtrahendRow { n_mod4: 1, parity: ExponentParity::Odd, residue: true, residues: &[3], s: 4 },
    SubtrahendRow { n_mod4: 1, parity: ExponentParity::Odd, residue: true, residues: &[9, 12], s: 6 },
    SubtrahendRow { n_mod4: 3, parity: ExponentParity::Even, residue: true, residues: &[1, 4, 9, 10, 12], s: 1 },
    SubtrahendRow { n_mod4: 3, parity: ExponentParity::Even, residue: true, residues: &[3], s: 3 },
    SubtrahendRow { n_mod4: 3, parity: ExponentParity::Even, residue: false, residues: &[2, 5, 6, 7, 8, 11], s: 1 },
    SubtrahendRow { n_mod4: 3, parity: ExponentParity::Odd, residue: true, residues: &[1, 9, 10], s: 1 },
    SubtrahendRow { n_mod4: 3, parity: ExponentParity::Odd, residue: true, residues: &[3, 12], s: 3 },
    SubtrahendRow { n_mod4: 3, parity: ExponentParity::Odd, residue: true, residues: &[4], s: 5 },
    SubtrahendRow { n_mod4: 3, parity: ExponentParity::Odd, residue: false, residues: &[2], s: 5 },
    SubtrahendRow { n_mod4: 3, parity: ExponentParity::Odd, residue: false, residues: &[5, 8, 11], s: 1 },
    SubtrahendRow { n_mod4: 3, parity: ExponentParity::Odd, residue: false, residues: &[6, 7], s: 3 },
];

/// Row of [`SUBTRAHEND_TABLE`] covering odd `n`, if any. `n = 1 (mod 4)`
/// outside `13^d u_+` needs no subtrahend.
pub fn subtrahend_row(n: u64) -> Option<&'static SubtrahendRow> {
    if n % 2 == 0 {
        return None;
    }
    let c = ExcludedClass { p: 13, parity: ExponentParity::Any, unit: UnitSpec::Any };
    let (v, u) = c.split(n);
    let parity = if v % 2 == 1 { ExponentParity::Odd } else { ExponentParity::Even };
    let residue = is_quadratic_residue(u, 13);
    SUBTRAHEND_TABLE.iter().find(|r| {
        r.n_mod4 == n % 4 && r.parity == parity && r.residue == residue && r.residues.contains(&(u % 13))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtrahendReport {
    pub lo: u64,
    pub hi: u64,
    /// Odd `n` in range handled by a table row.
    pub rows_checked: u64,
    /// Odd `n` in range with no applicable row (must be `1 mod 4`, not `13^d u_+`).
    pub direct_checked: u64,
    /// `n` whose row subtrahend leaves a value missed by both forms.
    pub row_failures: Vec<u64>,
    /// Row failures that the full senary form still represents directly.
    pub rescued_directly: Vec<u64>,
    /// Odd `n = 3 (mod 4)` with no row at all.
    pub uncovered: Vec<u64>,
    /// `n = 1 (mod 4)` outside `13^d u_+` missed by both forms.
    pub direct_failures: Vec<u64>,
}

/// Scans odd `n` in `[lo, hi]`: table rows must leave `n - 39 s^2`
/// represented by one of the genus-pair forms.
pub fn verify_subtrahend_table(lo: u64, hi: u64) -> SubtrahendReport {
    let (a, b) = genus_pair();
    let ta = a.theta_prefix(hi);
    let tb = b.theta_prefix(hi);
    let hit = |k: u64| ta.counts[k as usize] > 0 || tb.counts[k as usize] > 0;
    let mut rep = SubtrahendReport {
        lo,
        hi,
        rows_checked: 0,
        direct_checked: 0,
        row_failures: Vec::new(),
        rescued_directly: Vec::new(),
        uncovered: Vec::new(),
        direct_failures: Vec::new(),
    };
    for n in (lo..=hi).filter(|n| n % 2 == 1) {
        match subtrahend_row(n) {
            Some(row) => {
                rep.rows_checked += 1;
                let sub = 39 * row.s * row.s;
                if sub > n || !hit(n - sub) {
                    rep.row_failures.push(n);
                }
            }
            None if n % 4 == 3 => rep.uncovered.push(n),
            None => {
                rep.direct_checked += 1;
                if !hit(n) {
                    rep.direct_failures.push(n);
                }
            }
        }
    }
    if !rep.row_failures.is_empty() {
        let full = exceptional_39_form().prepare();
        rep.rescued_directly = rep.row_failures.iter().copied().filter(|&n| full.represents_u64(n)).collect();
    }
    rep
}

/// Associated form of `<1> ⊥ [2, w; conj(w), 5]` over `Q(sqrt(-39))`.
pub fn exceptional_39_form() -> ZQuadForm {
    let l: HermitianLattice = "m=39; 1,0,0; 0,2,w; 0,cw,5".parse().expect("valid lattice");
    l.associated_zform()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    pub bound: u64,
    /// Every integer outside the predicted set is represented.
    pub sufficient: bool,
    /// The predicted set is exactly the set of missed integers.
    pub matches: bool,
    /// Excluded by the form but not predicted.
    pub unpredicted: Vec<u64>,
    /// Predicted as excluded but represented.
    pub wrongly_predicted: Vec<u64>,
}

/// Compares the integers missed by `<1> ⊥ [2,1;1,4]` (classical Gram) with
/// the prediction "missed iff `n = 7^d u_-` or `n = 7, 10 (mod 12)`".
pub fn characterize_one_two_one_four(bound: u64) -> CharacterizationReport {
    let f = ZQuadForm::from_gram_i64(&[vec![1, 0, 0], vec![0, 2, 1], vec![0, 1, 4]]).expect("definite");
    let missed: BTreeSet<u64> = excluded_set(&f, bound).into_iter().collect();
    let c = ExcludedClass { p: 7, parity: ExponentParity::Odd, unit: UnitSpec::NonResidue };
    let predicted: BTreeSet<u64> =
        (1..=bound).filter(|&n| match_class(n, &c) || n % 12 == 7 || n % 12 == 10).collect();
    let unpredicted: Vec<u64> = missed.difference(&predicted).copied().collect();
    let wrongly_predicted: Vec<u64> = predicted.difference(&missed).copied().collect();
    CharacterizationReport {
        bound,
        sufficient: unpredicted.is_empty(),
        matches: unpredicted.is_empty() && wrongly_predicted.is_empty(),
        unpredicted,
        wrongly_predicted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(s: &str) -> ExcludedClass {
        s.parse().unwrap()
    }

    fn naive_match(n: u64, p: u64, parity: ExponentParity, unit: UnitSpec) -> bool {
        let mut v = 0;
        let mut u = n;
        while u % p == 0 {
            u /= p;
            v += 1;
        }
        let par = match parity {
            ExponentParity::Odd => v % 2 == 1,
            ExponentParity::Even => v % 2 == 0,
            ExponentParity::Zero => v == 0,
            ExponentParity::Any => true,
        };
        // Euler's criterion as an independent residue test
        let euler = |u: u64| {
            let mut r = 1u64;
            for _ in 0..(p - 1) / 2 {
                r = r * (u % p) % p;
            }
            r == 1
        };
        par && match unit {
            UnitSpec::Mod8(k) => u % 8 == k as u64,
            UnitSpec::Residue => euler(u),
            UnitSpec::NonResidue => !euler(u),
            UnitSpec::Any => true,
        }
    }

    #[test]
    fn match_examples() {
        assert!(match_class(23, &cls("2^e u7")));
        assert!(match_class(14, &cls("2^d u7")));
        assert!(match_class(6, &cls("3^d u-")));
        assert!(!match_class(7, &cls("2^d u7")));
        assert!(match_class(5, &cls("u5")));
        assert!(!match_class(10, &cls("u5")));
    }

    #[test]
    fn match_agrees_with_naive() {
        for s in ["2^e u7", "2^d u5", "2^d u7", "3^d u-", "5^d u-", "7^d u-", "13^d u+", "13^e u-", "u5"] {
            let c = cls(s);
            for n in 1..=10_000 {
                assert_eq!(match_class(n, &c), naive_match(n, c.p, c.parity, c.unit), "{} {}", s, n);
            }
        }
    }

    #[test]
    fn class_text_round_trip() {
        for s in ["2^e u7", "2^d u5", "3^d u-", "13^d u+", "u5"] {
            assert_eq!(cls(s).to_string(), s);
        }
        assert!("4^d u+".parse::<ExcludedClass>().is_err());
        assert!("3^d u5".parse::<ExcludedClass>().is_err());
        assert!("2^x u7".parse::<ExcludedClass>().is_err());
    }

    #[test]
    fn excluded_sets_match_classes() {
        let f = ZQuadForm::diagonal(&[1, 1, 1]).unwrap();
        assert_eq!(excluded_set(&f, 50), vec![7, 15, 23, 28, 31, 39, 47]);
        assert_eq!(excluded_set(&f, 500), class_members(&cls("2^e u7"), 500));
        let f = ZQuadForm::diagonal(&[1, 2, 3]).unwrap();
        assert_eq!(excluded_set(&f, 50), class_members(&cls("2^d u5"), 50));
        let f = ZQuadForm::diagonal(&[1, 2, 5]).unwrap();
        assert_eq!(excluded_set(&f, 50), class_members(&cls("5^d u-"), 50));
    }

    #[test]
    fn shift_covering_examples() {
        assert!(verify_shift_covering(&cls("2^e u7"), &[15, 30], 30, 100_000).holds);
        assert!(verify_shift_covering(&cls("2^d u7"), &[15], 15, 100_000).holds);
        // 119 - 7 = 16 * 7 stays in the class; nothing below 119 fails
        assert!(verify_shift_covering(&cls("2^e u7"), &[7], 7, 118).holds);
        let r = verify_shift_covering(&cls("2^e u7"), &[7], 7, 200);
        assert!(!r.holds);
        assert_eq!(r.counterexamples[0], 119);
        assert!(!r.counterexamples.is_empty());
        for n in &r.counterexamples {
            assert!(match_class(n - 7, &cls("2^e u7")));
        }
    }

    #[test]
    fn criterion_sets() {
        assert_eq!(CriterionSet::classical15().numbers.len(), 9);
        assert_eq!(CriterionSet::bhargava290().numbers.len(), 29);
        assert_eq!(CriterionSet::hermitian15().numbers.len(), 10);
        assert_eq!(CriterionSet::by_name("critical(39)").unwrap().numbers, [1, 2, 3, 5, 6, 7, 13].into());
        assert_eq!(critical_set(55).unwrap().numbers, [1, 2, 3, 5, 6, 7, 10, 15].into());
        assert_eq!(critical_set(101).unwrap().numbers, CriterionSet::classical15().numbers);
        assert!(critical_set(12).is_err());
        assert!(CriterionSet::by_name("nope").is_err());
    }

    #[test]
    fn criterion_checks() {
        assert!(classical_15_check(&ZQuadForm::diagonal(&[1, 1, 1, 6]).unwrap()).unwrap());
        let l = ZQuadForm::from_gram_i64(&[vec![1, 0, 0, 0], vec![0, 2, 1, 0], vec![0, 1, 4, 1], vec![0, 0, 1, 5]]).unwrap();
        assert!(!classical_15_check(&l).unwrap());
        let nc = ZQuadForm::from_doubled_i64(&[vec![2, 1], vec![1, 4]]).unwrap();
        assert_eq!(classical_15_check(&nc), Err(Error::NotClassical));
        let k = crate::quadring::QuadIntField::new(11).unwrap();
        assert!(hermitian_15_check(&HermitianLattice::diagonal(k, &[1, 1]).unwrap()));
        let z = ZQuadForm::diagonal(&[1, 2, 5, 5]).unwrap();
        assert!(!nonclassical_290_check(&z));
    }

    #[test]
    fn genus_pair_examples() {
        let (a, b) = genus_pair();
        assert!(genus_pair_check(&a, &b, 4));
        assert!(genus_pair_check(&a, &b, 0));
        // 13 = 13^1 * 1 with 1 a residue: missed by both forms
        assert!(!genus_pair_check(&a, &b, 13));
    }

    #[test]
    fn subtrahend_rows() {
        // 1443 = 13 * 111 with 111 = 7 (mod 13) a non-residue
        assert_eq!(subtrahend_row(1443).map(|r| r.s), Some(3));
        // 1407 = 3 (mod 4), 1407 = 3 (mod 13)
        assert_eq!(subtrahend_row(1407).map(|r| r.s), Some(3));
        assert!(subtrahend_row(1405).is_none());
    }
}
