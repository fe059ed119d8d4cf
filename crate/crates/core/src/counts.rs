//! Exact move counts.
//!
//! Totals `S(N)` and per-disk counts `P(k)` (disk 1 largest) for the five
//! optimal families come from their coupled recurrences, evaluated bottom-up
//! in big integers. Closed forms combine an exact `3^N` term with three
//! geometric terms in the roots of `x^3 - x - 2`, evaluated in double precision
//! and rounded under a per-call certificate. The non-optimal families only
//! have their published closed formulas, evaluated in exact rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::model::{PostColor, PreColoring};

pub type BigCount = BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CountFamily {
    F1000,
    F909,
    F727,
    F636,
    F606,
    F75,
    F67,
    F64,
    F62,
    F61,
    Toh,
}

impl CountFamily {
    pub const OPTIMAL: [CountFamily; 5] = [
        CountFamily::F1000,
        CountFamily::F909,
        CountFamily::F727,
        CountFamily::F636,
        CountFamily::F606,
    ];

    pub const NON_OPTIMAL: [CountFamily; 5] = [
        CountFamily::F75,
        CountFamily::F67,
        CountFamily::F64,
        CountFamily::F62,
        CountFamily::F61,
    ];

    pub const ALL: [CountFamily; 11] = [
        CountFamily::F1000,
        CountFamily::F909,
        CountFamily::F727,
        CountFamily::F636,
        CountFamily::F606,
        CountFamily::F75,
        CountFamily::F67,
        CountFamily::F64,
        CountFamily::F62,
        CountFamily::F61,
        CountFamily::Toh,
    ];

    pub fn is_optimal(self) -> bool {
        Self::OPTIMAL.contains(&self)
    }

    /// Short numeric code, e.g. `"606"`; `"toh"` for the classical puzzle.
    pub fn code(self) -> &'static str {
        match self {
            CountFamily::F1000 => "1000",
            CountFamily::F909 => "909",
            CountFamily::F727 => "727",
            CountFamily::F636 => "636",
            CountFamily::F606 => "606",
            CountFamily::F75 => "75",
            CountFamily::F67 => "67",
            CountFamily::F64 => "64",
            CountFamily::F62 => "62",
            CountFamily::F61 => "61",
            CountFamily::Toh => "toh",
        }
    }

    /// Column designation used in the published tables.
    pub fn designation(self) -> &'static str {
        match self {
            CountFamily::F1000 => "RRB1000",
            CountFamily::F909 => "RBN909",
            CountFamily::F727 => "RNB727",
            CountFamily::F636 => "RNN636",
            CountFamily::F606 => "NNN606",
            CountFamily::F75 => "RNB75",
            CountFamily::F67 => "RNN67",
            CountFamily::F64 => "RNN64",
            CountFamily::F62 => "NNN62",
            CountFamily::F61 => "NNN61",
            CountFamily::Toh => "ToH",
        }
    }

    /// Large-N limit of `S_f(N) / S_1000(N)`.
    pub fn duration_limit(self) -> BigRational {
        let (n, d) = match self {
            CountFamily::F1000 => (1, 1),
            CountFamily::F909 => (10, 11),
            CountFamily::F727 => (8, 11),
            CountFamily::F636 => (7, 11),
            CountFamily::F606 => (20, 33),
            CountFamily::F75 => (3, 4),
            CountFamily::F67 => (2, 3),
            CountFamily::F64 => (23, 36),
            CountFamily::F62 => (67, 108),
            CountFamily::F61 => (197, 324),
            CountFamily::Toh => (0, 1),
        };
        ratio(n, d)
    }

    /// Representative start configuration of the family's puzzle.
    pub fn pre_coloring(self) -> Option<PreColoring> {
        use PostColor::*;
        Some(match self {
            CountFamily::F1000 => PreColoring::new(Red, Blue, Blue),
            CountFamily::F909 => PreColoring::new(Red, Blue, Neutral),
            CountFamily::F727 | CountFamily::F75 => PreColoring::new(Red, Neutral, Blue),
            CountFamily::F636 | CountFamily::F67 | CountFamily::F64 => {
                PreColoring::new(Red, Neutral, Neutral)
            }
            CountFamily::F606 | CountFamily::F62 | CountFamily::F61 => {
                PreColoring::new(Neutral, Neutral, Neutral)
            }
            CountFamily::Toh => return None,
        })
    }

    fn slot(self) -> usize {
        match self {
            CountFamily::F1000 => 0,
            CountFamily::F909 => 1,
            CountFamily::F727 => 2,
            CountFamily::F636 => 3,
            CountFamily::F606 => 4,
            _ => usize::MAX,
        }
    }
}

impl fmt::Display for CountFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for CountFamily {
    type Err = CountsError;

    /// Accepts `606`, `f606`, `NNN606`, `toh` and similar spellings.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "toh" {
            return Ok(CountFamily::Toh);
        }
        let digits = lower.trim_start_matches(|c: char| c.is_ascii_alphabetic());
        CountFamily::ALL
            .into_iter()
            .find(|f| f.code() == digits && !digits.is_empty())
            .ok_or_else(|| CountsError::UnknownFamily(s.to_string()))
    }
}

/// Total moves (`S`) or moves of one disk (`P`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SeqKind {
    Total,
    PerDisk,
}

impl FromStr for SeqKind {
    type Err = CountsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s" | "total" => Ok(SeqKind::Total),
            "p" | "disk" | "per-disk" => Ok(SeqKind::PerDisk),
            _ => Err(CountsError::UnknownKind(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CountsError {
    #[error("index must be at least 1, got {0}")]
    IndexOutOfRange(u32),
    #[error("operation {op} is not defined for family {family}")]
    WrongFamily {
        family: CountFamily,
        op: &'static str,
    },
    #[error("closed form for {family} at index {index} cannot be certified (error bound {error_bound:.3e}, rounding margin {margin:.3})")]
    PrecisionExceeded {
        family: CountFamily,
        index: u32,
        error_bound: f64,
        margin: f64,
    },
    #[error("formula for {family} at index {index} is not integral: {value}")]
    NonIntegral {
        family: CountFamily,
        index: u32,
        value: String,
    },
    #[error("unknown count family {0:?}")]
    UnknownFamily(String),
    #[error("unknown sequence kind {0:?}; expected s or p")]
    UnknownKind(String),
    #[error("pre-coloring {0} has no solution")]
    UnsolvableConfig(PreColoring),
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow3(e: u32) -> BigUint {
    BigUint::from(3u32).pow(e)
}

/// Bottom-up evaluation of the coupled recurrences for all five optimal
/// families. Index 0 is unused.
struct OptimalSeries {
    columns: [Vec<BigUint>; 5],
}

impl OptimalSeries {
    /// `with_singles` adds the per-step constants of the total-move
    /// recurrences; without them the same relations give per-disk counts.
    fn compute(len: u32, with_singles: bool) -> Self {
        let len = len as usize;
        let mut c: [Vec<BigUint>; 5] = Default::default();
        for col in c.iter_mut() {
            col.reserve(len + 1);
            col.push(BigUint::zero());
        }
        let one = |x: u32| {
            if with_singles {
                BigUint::from(x)
            } else {
                BigUint::zero()
            }
        };
        for m in 1..=len {
            if m == 1 {
                for col in c.iter_mut() {
                    col.push(BigUint::one());
                }
                continue;
            }
            let n = m - 1;
            let s1000 = &c[0][n] * 3u32 + one(1);
            let s909 = &c[2][n] + &c[0][n] * 2u32 + one(1);
            let (s727, s636, s606) = if m == 2 {
                let base = if with_singles { 4u32 } else { 3u32 };
                (base.into(), base.into(), base.into())
            } else {
                let s727 = &c[1][n] + &c[1][n - 1] * 2u32 + &c[0][n - 1] * 2u32 + one(3);
                let s636 = &c[3][n] + &c[1][n - 1] * 2u32 + &c[0][n - 1] * 2u32 + one(3);
                let s606 = &c[3][n] + &c[3][n - 1] + &c[1][n - 1] + &c[0][n - 1] * 2u32 + one(3);
                (s727, s636, s606)
            };
            c[0].push(s1000);
            c[1].push(s909);
            c[2].push(s727);
            c[3].push(s636);
            c[4].push(s606);
        }
        OptimalSeries { columns: c }
    }

    fn get(&self, family: CountFamily, index: u32) -> &BigUint {
        &self.columns[family.slot()][index as usize]
    }
}

fn check_optimal(family: CountFamily, op: &'static str) -> Result<(), CountsError> {
    if family.is_optimal() {
        Ok(())
    } else {
        Err(CountsError::WrongFamily { family, op })
    }
}

fn check_index(index: u32) -> Result<(), CountsError> {
    if index == 0 {
        Err(CountsError::IndexOutOfRange(index))
    } else {
        Ok(())
    }
}

/// Total moves of an optimal family from its recurrence.
pub fn s_recurrence(family: CountFamily, n: u32) -> Result<BigCount, CountsError> {
    check_optimal(family, "s_recurrence")?;
    check_index(n)?;
    Ok(OptimalSeries::compute(n, true).get(family, n).clone())
}

/// Moves of disk `k` under an optimal family, from its recurrence.
pub fn p_recurrence(family: CountFamily, k: u32) -> Result<BigCount, CountsError> {
    check_optimal(family, "p_recurrence")?;
    check_index(k)?;
    Ok(OptimalSeries::compute(k, false).get(family, k).clone())
}

/// `S(1..=n)` in one pass.
pub fn s_recurrence_series(family: CountFamily, n: u32) -> Result<Vec<BigCount>, CountsError> {
    check_optimal(family, "s_recurrence")?;
    check_index(n)?;
    let mut col = OptimalSeries::compute(n, true).columns[family.slot()].split_off(1);
    col.truncate(n as usize);
    Ok(col)
}

/// `P(1..=k)` in one pass.
pub fn p_recurrence_series(family: CountFamily, k: u32) -> Result<Vec<BigCount>, CountsError> {
    check_optimal(family, "p_recurrence")?;
    check_index(k)?;
    let mut col = OptimalSeries::compute(k, false).columns[family.slot()].split_off(1);
    col.truncate(k as usize);
    Ok(col)
}

/// The three roots of `x^3 - x - 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub lambda1: f64,
    pub lambda2: Complex64,
    pub lambda3: Complex64,
}

impl CubicRoots {
    pub fn all(&self) -> [Complex64; 3] {
        [
            Complex64::new(self.lambda1, 0.0),
            self.lambda2,
            self.lambda3,
        ]
    }

    /// Largest `|x^3 - x - 2|` over the three roots.
    pub fn max_residual(&self) -> f64 {
        self.all()
            .iter()
            .map(|&x| (x * x * x - x - 2.0).norm())
            .fold(0.0, f64::max)
    }
}

/// Evaluates the roots from their radical expressions.
pub fn cubic_roots() -> CubicRoots {
    let r = (26.0f64 / 27.0).sqrt();
    let lambda1 = (1.0 + r).cbrt() + (1.0 - r).cbrt();
    let (s27, s26) = (27.0f64.sqrt(), 26.0f64.sqrt());
    let im = ((s27 + s26).cbrt() - (s27 - s26).cbrt()) / 2.0;
    CubicRoots {
        lambda1,
        lambda2: Complex64::new(-lambda1 / 2.0, im),
        lambda3: Complex64::new(-lambda1 / 2.0, -im),
    }
}

/// Weights of the three geometric terms in the closed forms. The `S`
/// triple is used for totals and the `P` triple for per-disk counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormCoefficients {
    pub a_s: Complex64,
    pub b_s: Complex64,
    pub c_s: Complex64,
    pub a_p: Complex64,
    pub b_p: Complex64,
    pub c_p: Complex64,
}

impl ClosedFormCoefficients {
    pub fn s(&self) -> [Complex64; 3] {
        [self.a_s, self.b_s, self.c_s]
    }

    pub fn p(&self) -> [Complex64; 3] {
        [self.a_p, self.b_p, self.c_p]
    }
}

/// `(w1·a·b − w2·(a+b) + w3) / ((a − own)(b − own))`
fn partial_fraction(w: [f64; 3], own: Complex64, a: Complex64, b: Complex64) -> Complex64 {
    (a * b * w[0] - (a + b) * w[1] + w[2]) / ((a - own) * (b - own))
}

pub fn closed_form_coefficients(roots: &CubicRoots) -> ClosedFormCoefficients {
    let [l1, l2, l3] = roots.all();
    let ws = [7.0 / 11.0, 10.0 / 11.0, 19.0 / 11.0];
    let wp = [1.0 / 11.0, 3.0 / 11.0, 9.0 / 11.0];
    ClosedFormCoefficients {
        a_s: partial_fraction(ws, l1, l2, l3),
        b_s: partial_fraction(ws, l2, l1, l3),
        c_s: partial_fraction(ws, l3, l1, l2),
        a_p: partial_fraction(wp, l1, l2, l3),
        b_p: partial_fraction(wp, l2, l1, l3),
        c_p: partial_fraction(wp, l3, l1, l2),
    }
}

/// A certified closed-form evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormEval {
    pub value: BigCount,
    /// Distance of the floating part from the integer it rounded to.
    pub margin: f64,
    /// Conservative bound on floating error in the geometric terms.
    pub error_bound: f64,
}

/// Rounding is accepted only when both the margin and the error bound stay
/// below this.
pub const ROUNDING_LIMIT: f64 = 0.25;

struct ClosedFormShape {
    /// Multiplier of `3^m`.
    lead: BigRational,
    constant: BigRational,
    /// Per-root factor applied on top of `coefficient · λ^(m')`.
    weight: fn(Complex64) -> Complex64,
}

fn closed_form_shape(family: CountFamily, kind: SeqKind) -> ClosedFormShape {
    fn unit(_: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn same(x: Complex64) -> Complex64 {
        x
    }
    fn plus_one(x: Complex64) -> Complex64 {
        x + 1.0
    }
    fn half_square(x: Complex64) -> Complex64 {
        (x + 1.0) * (x + 1.0) * 0.5
    }
    let (lead, constant, weight): (BigRational, BigRational, fn(Complex64) -> Complex64) =
        match (family, kind) {
            (CountFamily::F909, SeqKind::Total) => (ratio(5, 11), ratio(-1, 1), unit),
            (CountFamily::F909, SeqKind::PerDisk) => (ratio(10, 11), ratio(0, 1), unit),
            (CountFamily::F727, SeqKind::Total) => (ratio(4, 11), ratio(-1, 1), same),
            (CountFamily::F727, SeqKind::PerDisk) => (ratio(8, 11), ratio(0, 1), same),
            (CountFamily::F636, SeqKind::Total) => (ratio(7, 22), ratio(-3, 2), plus_one),
            (CountFamily::F636, SeqKind::PerDisk) => (ratio(7, 11), ratio(0, 1), plus_one),
            (CountFamily::F606, SeqKind::Total) => (ratio(10, 33), ratio(-2, 1), half_square),
            (CountFamily::F606, SeqKind::PerDisk) => (ratio(20, 33), ratio(0, 1), half_square),
            _ => unreachable!("no cubic closed form for {family}"),
        };
    ClosedFormShape {
        lead,
        constant,
        weight,
    }
}

fn eval_cubic_closed_form(
    family: CountFamily,
    kind: SeqKind,
    index: u32,
) -> Result<ClosedFormEval, CountsError> {
    let roots = cubic_roots();
    let coeffs = closed_form_coefficients(&roots);
    let shape = closed_form_shape(family, kind);
    let (three_exp, coeff) = match kind {
        SeqKind::Total => (index, coeffs.s()),
        SeqKind::PerDisk => (index - 1, coeffs.p()),
    };
    let geo_exp = (index - 1) as i32;

    let exact = &shape.lead * BigRational::from_integer(pow3(three_exp).into()) + &shape.constant;
    let whole = exact.floor();
    let frac = (&exact - &whole).to_f64().unwrap_or(0.0);

    let mut sum = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for (c, l) in coeff.iter().zip(roots.all()) {
        let term = c * (shape.weight)(l) * l.powi(geo_exp);
        magnitude += term.norm();
        sum += term;
    }
    let error_bound = magnitude * f64::EPSILON * (4.0 * geo_exp as f64 + 64.0) + sum.im.abs();
    let x = frac + sum.re;
    let rounded = x.round();
    let margin = (x - rounded).abs();
    let fail = || CountsError::PrecisionExceeded {
        family,
        index,
        error_bound,
        margin,
    };
    if !(margin < ROUNDING_LIMIT && error_bound < ROUNDING_LIMIT) {
        return Err(fail());
    }
    let total = whole.to_integer() + BigInt::from(rounded as i64);
    let value = total.to_biguint().ok_or_else(fail)?;
    Ok(ClosedFormEval {
        value,
        margin,
        error_bound,
    })
}

/// Certified closed-form total for an optimal family.
pub fn s_closed_eval(family: CountFamily, n: u32) -> Result<ClosedFormEval, CountsError> {
    check_optimal(family, "s_closed")?;
    check_index(n)?;
    if family == CountFamily::F1000 {
        return Ok(ClosedFormEval {
            value: (pow3(n) - 1u32) / 2u32,
            margin: 0.0,
            error_bound: 0.0,
        });
    }
    eval_cubic_closed_form(family, SeqKind::Total, n)
}

/// Certified closed-form per-disk count for an optimal family.
pub fn p_closed_eval(family: CountFamily, k: u32) -> Result<ClosedFormEval, CountsError> {
    check_optimal(family, "p_closed")?;
    check_index(k)?;
    let exact = |v: BigUint| ClosedFormEval {
        value: v,
        margin: 0.0,
        error_bound: 0.0,
    };
    match family {
        CountFamily::F1000 => Ok(exact(pow3(k - 1))),
        CountFamily::F606 if k == 1 => Ok(exact(BigUint::one())),
        _ => eval_cubic_closed_form(family, SeqKind::PerDisk, k),
    }
}

pub fn s_closed(family: CountFamily, n: u32) -> Result<BigCount, CountsError> {
    s_closed_eval(family, n).map(|e| e.value)
}

pub fn p_closed(family: CountFamily, k: u32) -> Result<BigCount, CountsError> {
    p_closed_eval(family, k).map(|e| e.value)
}

/// Small values below each non-optimal formula's validity threshold.
const SMALL_TOTALS: [u32; 3] = [1, 4, 11];
const SMALL_DISK_MOVES: [u32; 4] = [1, 3, 7, 19];

fn rational_to_count(
    family: CountFamily,
    index: u32,
    value: BigRational,
) -> Result<BigCount, CountsError> {
    if !value.is_integer() || value.is_negative() {
        return Err(CountsError::NonIntegral {
            family,
            index,
            value: value.to_string(),
        });
    }
    Ok(value
        .to_integer()
        .to_biguint()
        .expect("checked non-negative"))
}

fn check_non_optimal(family: CountFamily, op: &'static str) -> Result<(), CountsError> {
    if CountFamily::NON_OPTIMAL.contains(&family) {
        Ok(())
    } else {
        Err(CountsError::WrongFamily { family, op })
    }
}

/// Total moves of a non-optimal family from its closed formula.
pub fn nonoptimal_s(family: CountFamily, n: u32) -> Result<BigCount, CountsError> {
    check_non_optimal(family, "nonoptimal_s")?;
    check_index(n)?;
    // formulas hold for n strictly above this
    let threshold = match family {
        CountFamily::F75 | CountFamily::F67 => 0,
        CountFamily::F64 => 1,
        CountFamily::F62 => 2,
        _ => 3,
    };
    if n <= threshold {
        return Ok(SMALL_TOTALS[n as usize - 1].into());
    }
    let z = BigRational::new(pow3(n).into(), BigInt::from(2));
    let yz = family.duration_limit() * z;
    let nn = BigRational::from_integer(BigInt::from(n));
    let odd = n.is_odd();
    let tail = match family {
        CountFamily::F75 => &nn * ratio(1, 2) + if odd { ratio(-5, 8) } else { ratio(-3, 8) },
        CountFamily::F67 => &nn - ratio(1, 1),
        CountFamily::F64 => {
            &nn * &nn * ratio(1, 2) - &nn * ratio(3, 2)
                + if odd { ratio(19, 8) } else { ratio(17, 8) }
        }
        CountFamily::F62 => &nn * ratio(5, 2) - if odd { ratio(39, 8) } else { ratio(41, 8) },
        CountFamily::F61 => {
            &nn * &nn - &nn * ratio(11, 2) + if odd { ratio(93, 8) } else { ratio(91, 8) }
        }
        _ => unreachable!(),
    };
    rational_to_count(family, n, yz + tail)
}

/// Moves of disk `k` under a non-optimal family, from its closed formula.
pub fn nonoptimal_p(family: CountFamily, k: u32) -> Result<BigCount, CountsError> {
    check_non_optimal(family, "nonoptimal_p")?;
    check_index(k)?;
    let threshold = match family {
        CountFamily::F75 => 0,
        CountFamily::F67 => 1,
        CountFamily::F64 => 2,
        CountFamily::F62 => 3,
        _ => 4,
    };
    if k <= threshold {
        return Ok(SMALL_DISK_MOVES[k as usize - 1].into());
    }
    let z = BigRational::from_integer(pow3(k - 1).into());
    let yz = family.duration_limit() * z;
    let kk = BigRational::from_integer(BigInt::from(k));
    let odd = k.is_odd();
    let tail = match family {
        CountFamily::F75 => {
            if odd {
                ratio(1, 4)
            } else {
                ratio(3, 4)
            }
        }
        CountFamily::F67 => ratio(1, 1),
        CountFamily::F64 => &kk - if odd { ratio(7, 4) } else { ratio(9, 4) },
        CountFamily::F62 => {
            if odd {
                ratio(11, 4)
            } else {
                ratio(9, 4)
            }
        }
        CountFamily::F61 => &kk * ratio(2, 1) - if odd { ratio(25, 4) } else { ratio(27, 4) },
        _ => unreachable!(),
    };
    rational_to_count(family, k, yz + tail)
}

/// Classical Tower of Hanoi: `(2^n − 1, 2^(n−1))`, i.e. the total and the
/// moves of disk `n`.
pub fn toh_counts(n: u32) -> Result<(BigCount, BigCount), CountsError> {
    check_index(n)?;
    let two = BigUint::from(2u32);
    Ok((two.pow(n) - 1u32, two.pow(n - 1)))
}

/// The same pair from the doubling recurrences.
pub fn toh_recurrence(n: u32) -> Result<(BigCount, BigCount), CountsError> {
    check_index(n)?;
    let (mut s, mut p) = (BigUint::one(), BigUint::one());
    for _ in 1..n {
        s = &s * 2u32 + 1u32;
        p *= 2u32;
    }
    Ok((s, p))
}

/// `S_f(n)` for any family, using recurrences for the optimal ones.
pub fn total_moves(family: CountFamily, n: u32) -> Result<BigCount, CountsError> {
    match family {
        CountFamily::Toh => toh_counts(n).map(|(s, _)| s),
        f if f.is_optimal() => s_recurrence(f, n),
        f => nonoptimal_s(f, n),
    }
}

/// `P_f(k)` for any family.
pub fn disk_moves(family: CountFamily, k: u32) -> Result<BigCount, CountsError> {
    match family {
        CountFamily::Toh => toh_counts(k).map(|(_, p)| p),
        f if f.is_optimal() => p_recurrence(f, k),
        f => nonoptimal_p(f, k),
    }
}

fn to_ratio(num: BigCount, den: BigCount) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// `S_f(n) / S_1000(n)` exactly.
pub fn duration_exact(family: CountFamily, n: u32) -> Result<BigRational, CountsError> {
    Ok(to_ratio(
        total_moves(family, n)?,
        total_moves(CountFamily::F1000, n)?,
    ))
}

pub fn duration(family: CountFamily, n: u32) -> Result<f64, CountsError> {
    duration_exact(family, n).map(|r| ratio_to_f64(&r))
}

/// `P_f(k) / P_1000(k)`, the per-disk analogue used by the disk-move tables.
pub fn disk_duration(family: CountFamily, k: u32) -> Result<f64, CountsError> {
    let r = to_ratio(disk_moves(family, k)?, disk_moves(CountFamily::F1000, k)?);
    Ok(ratio_to_f64(&r))
}

/// How a pre-coloring relates to its family's representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Equivalence {
    /// The representative itself or its mirror.
    Identical,
    /// A neutral post whose colour is forced by its neighbours (RRN, NBB).
    ImpliedColor,
    /// A neutral source solved like the representative (NBN, NRN).
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfigTransform {
    /// Representative pre-coloring of the family.
    pub canonical: PreColoring,
    /// Colours swapped and source/destination exchanged relative to the
    /// representative.
    pub mirrored: bool,
    pub equivalence: Equivalence,
}

/// Maps any solvable pre-coloring to its count family.
pub fn normalize_config(pc: PreColoring) -> Result<(CountFamily, ConfigTransform), CountsError> {
    if !pc.is_solvable() {
        return Err(CountsError::UnsolvableConfig(pc));
    }
    let (family, canonical_str, mirrored, equivalence) = match pc.to_string().as_str() {
        "RBB" => (CountFamily::F1000, "RBB", false, Equivalence::Identical),
        "RRB" => (CountFamily::F1000, "RBB", true, Equivalence::Identical),
        "NBB" => (CountFamily::F1000, "RBB", false, Equivalence::ImpliedColor),
        "RRN" => (CountFamily::F1000, "RBB", true, Equivalence::ImpliedColor),
        "RBN" => (CountFamily::F909, "RBN", false, Equivalence::Identical),
        "NRB" => (CountFamily::F909, "RBN", true, Equivalence::Identical),
        "NBN" => (CountFamily::F909, "RBN", false, Equivalence::Relaxed),
        "NRN" => (CountFamily::F909, "RBN", true, Equivalence::Relaxed),
        "RNB" => (CountFamily::F727, "RNB", false, Equivalence::Identical),
        "RNN" => (CountFamily::F636, "RNN", false, Equivalence::Identical),
        "NNB" => (CountFamily::F636, "RNN", true, Equivalence::Identical),
        "NNN" => (CountFamily::F606, "NNN", false, Equivalence::Identical),
        _ => unreachable!("all solvable pre-colorings are listed"),
    };
    let canonical = canonical_str.parse().expect("literal pre-coloring");
    Ok((
        family,
        ConfigTransform {
            canonical,
            mirrored,
            equivalence,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigCount {
        BigUint::from(x)
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(s_recurrence(CountFamily::F1000, 4).unwrap(), big(40));
        assert_eq!(
            s_recurrence(CountFamily::F606, 20).unwrap(),
            big(1056607454)
        );
        assert_eq!(s_recurrence(CountFamily::F727, 2).unwrap(), big(4));
        assert_eq!(s_recurrence(CountFamily::F909, 1).unwrap(), big(1));
        assert_eq!(p_recurrence(CountFamily::F1000, 5).unwrap(), big(81));
        assert_eq!(p_recurrence(CountFamily::F636, 10).unwrap(), big(12551));
        assert_eq!(p_recurrence(CountFamily::F606, 2).unwrap(), big(3));
    }

    #[test]
    fn recurrence_errors() {
        assert_eq!(
            s_recurrence(CountFamily::F909, 0),
            Err(CountsError::IndexOutOfRange(0))
        );
        assert!(matches!(
            p_recurrence(CountFamily::F61, 3),
            Err(CountsError::WrongFamily { .. })
        ));
        assert!(matches!(
            nonoptimal_s(CountFamily::F606, 3),
            Err(CountsError::WrongFamily { .. })
        ));
    }

    #[test]
    fn series_matches_pointwise() {
        for f in CountFamily::OPTIMAL {
            let s = s_recurrence_series(f, 12).unwrap();
            let p = p_recurrence_series(f, 12).unwrap();
            assert_eq!(s.len(), 12);
            for n in 1..=12u32 {
                assert_eq!(s[n as usize - 1], s_recurrence(f, n).unwrap());
                assert_eq!(p[n as usize - 1], p_recurrence(f, n).unwrap());
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(s_closed(CountFamily::F1000, 10).unwrap(), big(29524));
        assert_eq!(s_closed(CountFamily::F727, 20).unwrap(), big(1267924528));
        assert_eq!(s_closed(CountFamily::F606, 1).unwrap(), big(1));
        assert_eq!(p_closed(CountFamily::F1000, 7).unwrap(), big(729));
        assert_eq!(p_closed(CountFamily::F909, 20).unwrap(), big(1056601993));
        assert_eq!(p_closed(CountFamily::F606, 1).unwrap(), big(1));
    }

    #[test]
    fn closed_form_refuses_beyond_precision() {
        let err = s_closed(CountFamily::F909, 400).unwrap_err();
        assert!(
            matches!(err, CountsError::PrecisionExceeded { .. }),
            "{err}"
        );
    }

    #[test]
    fn nonoptimal_examples() {
        assert_eq!(nonoptimal_s(CountFamily::F64, 20).unwrap(), big(1113834078));
        assert_eq!(nonoptimal_s(CountFamily::F62, 5).unwrap(), big(83));
        assert_eq!(nonoptimal_s(CountFamily::F75, 1).unwrap(), big(1));
        assert_eq!(nonoptimal_p(CountFamily::F61, 7).unwrap(), big(451));
        assert_eq!(nonoptimal_p(CountFamily::F67, 4).unwrap(), big(19));
        assert_eq!(nonoptimal_p(CountFamily::F67, 1).unwrap(), big(1));
    }

    #[test]
    fn toh_examples() {
        assert_eq!(toh_counts(1).unwrap(), (big(1), big(1)));
        assert_eq!(toh_counts(3).unwrap(), (big(7), big(4)));
        assert_eq!(toh_counts(10).unwrap(), (big(1023), big(512)));
        for n in 1..=40 {
            assert_eq!(toh_counts(n).unwrap(), toh_recurrence(n).unwrap());
        }
        assert!(toh_counts(0).is_err());
    }

    #[test]
    fn duration_examples() {
        assert!((duration(CountFamily::F606, 20).unwrap() - 0.606064117).abs() < 1e-9);
        assert!((duration(CountFamily::F64, 20).unwrap() - 0.638888988).abs() < 1e-9);
        for n in 1..=25 {
            assert_eq!(duration(CountFamily::F1000, n).unwrap(), 1.0);
        }
    }

    #[test]
    fn family_parsing() {
        assert_eq!("606".parse::<CountFamily>().unwrap(), CountFamily::F606);
        assert_eq!("NNN606".parse::<CountFamily>().unwrap(), CountFamily::F606);
        assert_eq!("f75".parse::<CountFamily>().unwrap(), CountFamily::F75);
        assert_eq!("ToH".parse::<CountFamily>().unwrap(), CountFamily::Toh);
        assert!("600".parse::<CountFamily>().is_err());
        assert!("rnb".parse::<CountFamily>().is_err());
        assert_eq!("p".parse::<SeqKind>().unwrap(), SeqKind::PerDisk);
    }

    #[test]
    fn normalization_examples() {
        let pc = |s: &str| s.parse::<PreColoring>().unwrap();
        let (f, t) = normalize_config(pc("RRN")).unwrap();
        assert_eq!(f, CountFamily::F1000);
        assert_eq!(t.equivalence, Equivalence::ImpliedColor);
        assert_eq!(t.canonical.mirrored(), pc("RRB"));
        let (f, t) = normalize_config(pc("NRB")).unwrap();
        assert_eq!(
            (f, t.canonical, t.mirrored),
            (CountFamily::F909, pc("RBN"), true)
        );
        let (f, t) = normalize_config(pc("NNN")).unwrap();
        assert_eq!(f, CountFamily::F606);
        assert!(!t.mirrored && t.equivalence == Equivalence::Identical);
        assert!(normalize_config(pc("BNN")).is_err());
        assert!(normalize_config(pc("RNR")).is_err());
        // mirrored inputs are exactly the mirrors of their representative
        for p in PreColoring::all().filter(PreColoring::is_solvable) {
            let (_, t) = normalize_config(p).unwrap();
            if t.equivalence == Equivalence::Identical {
                let expect = if t.mirrored {
                    t.canonical.mirrored()
                } else {
                    t.canonical
                };
                assert_eq!(expect, p);
            }
        }
    }
}
