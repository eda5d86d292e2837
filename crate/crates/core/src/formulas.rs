//! Closed-form subpath numbers for trees, cycles, unicyclic graphs, complete
//! graphs and the extremal cacti, plus the PTC reconciliation table.

use std::io::Write;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::count::ExactCount;
use crate::error::{Error, Result};
use crate::families::{make_ptc, ptc_end_lengths};
use crate::paths::{pn_bruteforce, WorkBudget};

fn param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

fn to_count(v: BigInt) -> ExactCount {
    ExactCount::from(v.to_biguint().expect("closed form produced a negative count"))
}

/// `C(n+1, 2)`: one path per unordered pair plus the trivial ones.
pub fn pn_tree(n: usize) -> Result<ExactCount> {
    if n < 1 {
        return Err(param("tree needs n >= 1"));
    }
    Ok(ExactCount::choose2(n as u64 + 1))
}

pub fn pn_cycle(n: usize) -> Result<ExactCount> {
    if n < 3 {
        return Err(param("cycle needs n >= 3"));
    }
    Ok(ExactCount::from(n as u64 * n as u64))
}

/// Unicyclic graph whose cycle edges, once removed, leave components of the
/// given sizes: `n + 2 C(n,2) - Σ C(n_i, 2)`.
pub fn pn_unicyclic(n: usize, parts: &[usize]) -> Result<ExactCount> {
    if parts.len() < 3 {
        return Err(param("the cycle must have at least 3 vertices"));
    }
    if parts.iter().any(|&p| p == 0) {
        return Err(param("every component has at least one vertex"));
    }
    if parts.iter().sum::<usize>() != n {
        return Err(param("component sizes must sum to n"));
    }
    let choose2 = |x: usize| big(x) * big(x.saturating_sub(1)) / 2;
    let total = big(n) + 2 * choose2(n) - parts.iter().map(|&p| choose2(p)).sum::<BigInt>();
    Ok(to_count(total))
}

/// Bounds on `pn` over connected graphs on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectedBounds {
    /// Attained by every tree: `C(n+1, 2)`.
    pub lower: ExactCount,
    /// Attained by `K_n`: `n!/2 Σ_{i<n} 1/i! + n/2`.
    pub upper: ExactCount,
}

pub fn pn_bounds_connected(n: usize) -> Result<ConnectedBounds> {
    if n < 1 {
        return Err(param("n >= 1"));
    }
    Ok(ConnectedBounds { lower: pn_tree(n)?, upper: pn_complete(n) })
}

/// The lower bound in its published form `C(n,2)`, which leaves out the `n`
/// length-0 paths. Kept for reporting; nothing asserts it.
pub fn lower_bound_as_printed(n: usize) -> ExactCount {
    ExactCount::choose2(n as u64)
}

/// `pn(K_n)` evaluated as `(Σ_{i<n} n!/i! + n) / 2` in integers.
pub fn pn_complete(n: usize) -> ExactCount {
    // n!/i! for i = n-1 down to 0 is n, n(n-1), ..., n!
    let mut falling = BigUint::one();
    let mut sum = BigUint::zero();
    for j in 0..n {
        falling *= BigUint::from(n - j);
        sum += &falling;
    }
    ExactCount::from((sum + BigUint::from(n)) / 2u8)
}

/// End-cycle sizes of `PTC(n,k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PtcShape {
    pub n: usize,
    pub k: usize,
    pub n1: usize,
    pub n2: usize,
}

impl PtcShape {
    pub fn new(n: usize, k: usize) -> Result<PtcShape> {
        let (n1, n2) = ptc_end_lengths(n, k)?;
        Ok(PtcShape { n, k, n1, n2 })
    }
}

/// Parity correction of the published PTC formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityDelta {
    pub delta: BigInt,
}

impl ParityDelta {
    pub fn new(n: usize, k: usize) -> Result<ParityDelta> {
        if k < 2 {
            return Err(param("k >= 2"));
        }
        let delta = if n % 2 == 1 { BigInt::zero() } else { BigInt::one() - pow2(k - 2) };
        Ok(ParityDelta { delta })
    }
}

/// Subpath number of `PTC(n,k)` summed class by class: pairs split by how
/// many cycles separate them, then the within-cycle pairs, minus the cut
/// vertices counted twice as trivial paths.
pub fn pn_ptc_summation(n: usize, k: usize) -> Result<ExactCount> {
    let PtcShape { n1, n2, .. } = PtcShape::new(n, k)?;
    let (a, b) = (big(n1 - 1), big(n2 - 1));
    let mut total = &a * &b * pow2(k);
    for i in 1..k.saturating_sub(1) {
        total += 2 * &a * pow2(i + 1);
        total += 2 * &b * pow2(i + 1);
    }
    for i in 1..k.saturating_sub(2) {
        total += 4 * pow2(i + 1) * big(k - 2 - i);
    }
    total += big(n1 * n1) + big(n2 * n2) + big(9 * (k - 2));
    total -= big(k - 1);
    Ok(to_count(total))
}

/// The published closed form for `pn(PTC(n,k))`, evaluated exactly. It is
/// not always an integer, hence the rational.
pub fn pn_ptc_printed(n: usize, k: usize) -> Result<BigRational> {
    PtcShape::new(n, k)?;
    let (n_, k_) = (big(n), big(k));
    let first = (&n_ * &n_ - 4 * &k_ * &n_ + 14 * &n_ + 4 * &k_ * &k_ - 28 * &k_ + 49) * pow2(k - 2);
    let second = &n_ * &n_ - 4 * &k_ * &n_ - 6 * &n_ + 4 * &k_ * &k_ - 4 * &k_ + 7;
    let delta = ParityDelta::new(n, k)?.delta;
    Ok(BigRational::from_integer(first + delta) + BigRational::new(second, big(2)))
}

/// Minimum subpath number over `C_{n,k}`:
/// `2k^2 + 2kn - 5k + (n^2 + n)/2`.
pub fn pn_min_cactus(n: usize, k: usize) -> Result<ExactCount> {
    if n < 2 * k + 1 {
        return Err(param(format!("C_{{{n},{k}}} is empty: need n >= 2k+1")));
    }
    let (n_, k_) = (big(n), big(k));
    let v = 2 * &k_ * &k_ + 2 * &k_ * &n_ - 5 * &k_ + (&n_ * &n_ + &n_) / 2;
    Ok(to_count(v))
}

/// The same minimum written as `(n^2 + 4kn + n + 4k^2 - 10k) / 2`.
pub fn pn_min_cactus_halved_form(n: usize, k: usize) -> Result<ExactCount> {
    if n < 2 * k + 1 {
        return Err(param(format!("C_{{{n},{k}}} is empty: need n >= 2k+1")));
    }
    let (n_, k_) = (big(n), big(k));
    let twice = &n_ * &n_ + 4 * &k_ * &n_ + &n_ + 4 * &k_ * &k_ - 10 * &k_;
    Ok(to_count(twice / 2))
}

/// `(min, max)` of `pn` over `C_{n,k}` for `k >= 2`.
pub fn cactus_bounds(n: usize, k: usize) -> Result<(ExactCount, ExactCount)> {
    if k < 2 {
        return Err(param("k >= 2"));
    }
    Ok((pn_min_cactus(n, k)?, pn_ptc_summation(n, k)?))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconciliationRow {
    pub n: usize,
    pub k: usize,
    pub oracle: ExactCount,
    pub summation: ExactCount,
    pub printed: BigRational,
}

impl ReconciliationRow {
    pub fn printed_minus_summation(&self) -> BigRational {
        &self.printed - BigRational::from_integer(BigInt::from(self.summation.as_biguint().clone()))
    }
}

/// Every valid `(n, k)` in the ranges, with the oracle value of the built
/// graph next to both closed forms.
pub fn reconcile(
    ns: RangeInclusive<usize>,
    ks: RangeInclusive<usize>,
    budget: WorkBudget,
) -> Result<Vec<ReconciliationRow>> {
    let mut rows = Vec::new();
    for n in ns {
        for k in ks.clone() {
            if k < 2 || n < 2 * k + 1 {
                continue;
            }
            rows.push(ReconciliationRow {
                n,
                k,
                oracle: pn_bruteforce(&make_ptc(n, k)?, budget)?,
                summation: pn_ptc_summation(n, k)?,
                printed: pn_ptc_printed(n, k)?,
            });
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct CsvRow {
    n: usize,
    k: usize,
    oracle: String,
    summation: String,
    printed: String,
    printed_minus_summation: String,
}

/// Writes the reconciliation CSV; the header is always present.
pub fn write_reconciliation_csv<W: Write>(rows: &[ReconciliationRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| Error::InvalidParameter(format!("csv output failed: {e}"));
    w.write_record(["n", "k", "oracle", "summation", "printed", "printed_minus_summation"])
        .map_err(io)?;
    for r in rows {
        w.serialize(CsvRow {
            n: r.n,
            k: r.k,
            oracle: r.oracle.to_string(),
            summation: r.summation.to_string(),
            printed: format_rational(&r.printed),
            printed_minus_summation: format_rational(&r.printed_minus_summation()),
        })
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::InvalidParameter(format!("csv output failed: {e}")))?;
    Ok(())
}

/// Integer offset of the printed form, when it is an integer.
pub fn printed_offset(row: &ReconciliationRow) -> Option<i64> {
    let d = row.printed_minus_summation();
    if d.is_integer() {
        d.to_integer().to_i64()
    } else {
        None
    }
}

/// True when the printed value is not an integer.
pub fn printed_is_fractional(row: &ReconciliationRow) -> bool {
    !row.printed.is_integer() && !row.printed.is_negative()
}
