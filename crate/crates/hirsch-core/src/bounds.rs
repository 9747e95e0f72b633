//! Closed-form and recursion-based diameter bounds, all evaluated in exact
//! integer or rational arithmetic, plus a combined report.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("arguments out of range: {0}")]
    BadInput(String),
}

/// Exact maximum diameter of 3-polytopes with n facets: `floor(2n/3) - 1`.
pub fn klee_formula(n: usize) -> Result<usize, BoundsError> {
    if n < 4 {
        return Err(BoundsError::BadInput(format!("n = {n} < 4")));
    }
    Ok(2 * n / 3 - 1)
}

/// Lower bound `floor((d-1) n / d) - (d - 2)`; exact for d = 2.
pub fn lower_bound_formula(n: usize, d: usize) -> Result<i64, BoundsError> {
    if d < 2 || n < d {
        return Err(BoundsError::BadInput(format!("need n >= d >= 2, got ({n}, {d})")));
    }
    Ok(((d as i64 - 1) * n as i64).div_euclid(d as i64) - (d as i64 - 2))
}

/// Upper bound `n * 2^(d-3)` for n > d >= 3.
pub fn larman_bound(n: usize, d: usize) -> Result<BigInt, BoundsError> {
    if d < 3 || n <= d {
        return Err(BoundsError::BadInput(format!("need n > d >= 3, got ({n}, {d})")));
    }
    Ok(BigInt::from(n) * (BigInt::one() << (d - 3)))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k.min(n - k) {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

fn ceil_log2(n: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

/// Upper bound `2^k * C(k+d, d)` with `k = ceil(log2 n)`.
pub fn kalai_kleitman_binomial(n: usize, d: usize) -> Result<BigInt, BoundsError> {
    if n < 2 || d < 2 {
        return Err(BoundsError::BadInput(format!("need n, d >= 2, got ({n}, {d})")));
    }
    let k = ceil_log2(n);
    Ok((BigInt::one() << k) * binomial(k + d, d))
}

/// Table of the Pascal-style recursion `h(k,d) = h(k-1,d) + h(k,d-1)`.
///
/// Base choices (artifact convention): `h(0,d) = 0` for every d, and for
/// k >= 1 the d = 2 row comes from the exact polygon diameters,
/// `h(k,2) = (floor(2^k / 2) + 1) / 2^k`. Every entry is verified against
/// the binomial envelope `C(k+d, d)` on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KkTable {
    pub max_k: usize,
    pub max_d: usize,
    /// `entries[k][d - 2]` = h(k, d)
    pub entries: Vec<Vec<Rational>>,
}

pub fn kk_recursion_table(max_k: usize, max_d: usize) -> Result<KkTable, BoundsError> {
    if max_k < 1 || max_d < 2 {
        return Err(BoundsError::BadInput(format!(
            "need max_k >= 1 and max_d >= 2, got ({max_k}, {max_d})"
        )));
    }
    let mut entries = vec![vec![Rational::zero(); max_d - 1]; max_k + 1];
    for k in 1..=max_k {
        // h(k, 2) from the exact polygon diameter floor(n/2) at n = 2^k
        let n = BigInt::one() << k;
        let diam = &n / BigInt::from(2);
        entries[k][0] = Rational::from_bigints(diam + BigInt::one(), n);
    }
    for d in 3..=max_d {
        for k in 1..=max_k {
            entries[k][d - 2] = &entries[k - 1][d - 2] + &entries[k][d - 3];
        }
    }
    for k in 0..=max_k {
        for d in 2..=max_d {
            let envelope = Rational::from_bigint(binomial(k + d, d));
            assert!(
                entries[k][d - 2] <= envelope,
                "h({k},{d}) exceeds C(k+d,d)"
            );
        }
    }
    Ok(KkTable {
        max_k,
        max_d,
        entries,
    })
}

impl KkTable {
    pub fn h(&self, k: usize, d: usize) -> &Rational {
        &self.entries[k][d - 2]
    }
}

/// Certificate data for the exact comparison against `n^(log2(d) + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KkPowerWitness {
    pub holds: bool,
    /// Rational bracket `p/q <= log2(d) < (p+1)/q` that settled the comparison.
    pub exponent_denominator: u32,
    pub exponent_numerator: u64,
}

/// Exact check of `diameter <= n^(log2(d) + 1)` without floating point.
///
/// For d a power of two the exponent is an integer and the comparison is a
/// plain integer power. Otherwise log2(d) is irrational, so equality is
/// impossible and a fine enough rational bracket `p/q <= log2 d < (p+1)/q`
/// settles the inequality: `diameter^q <= n^(q+p)` certifies true,
/// `diameter^q > n^(q+p+1)` certifies false, and `q` doubles until one side
/// fires.
pub fn kk_power_check(diameter: usize, n: usize, d: usize) -> Result<KkPowerWitness, BoundsError> {
    if n < 1 || d < 1 {
        return Err(BoundsError::BadInput(format!("need n, d >= 1, got ({n}, {d})")));
    }
    let diam = BigInt::from(diameter);
    let nn = BigInt::from(n);
    if d.is_power_of_two() {
        let t = d.trailing_zeros();
        let bound = nn.pow(t + 1);
        return Ok(KkPowerWitness {
            holds: diam <= bound,
            exponent_denominator: 1,
            exponent_numerator: u64::from(t),
        });
    }
    let dd = BigInt::from(d);
    let mut q: u32 = 1;
    loop {
        // p = floor(q * log2 d): largest p with 2^p <= d^q
        let dq = dd.pow(q);
        let p = (dq.bits() - 1) as u32; // 2^(bits-1) <= dq < 2^bits, dq not a power of 2
        debug_assert!((BigInt::one() << p) <= dq && dq < (BigInt::one() << (p + 1)));
        let diam_q = diam.pow(q);
        if diam_q <= nn.pow(q + p) {
            return Ok(KkPowerWitness {
                holds: true,
                exponent_denominator: q,
                exponent_numerator: u64::from(p),
            });
        }
        if diam_q > nn.pow(q + p + 1) {
            return Ok(KkPowerWitness {
                holds: false,
                exponent_denominator: q,
                exponent_numerator: u64::from(p),
            });
        }
        q = q
            .checked_mul(2)
            .expect("adaptive precision exhausted; comparison must be conclusive");
        assert!(q <= 1 << 20, "adaptive precision failed to settle the comparison");
    }
}

/// Which regime of the quasi-polynomial bound applies: the binomial form is
/// the proof's route for n <= 2^d, larger n goes through the linear bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KkRegime {
    Binomial,
    Larman,
}

/// All applicable bounds for a given (n, d), recomputed on every call.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    pub hirsch: i64,
    pub klee_d3: Option<usize>,
    pub lower_bound: i64,
    pub larman: Option<BigInt>,
    pub kk_binomial: BigInt,
    pub kk_power_exponent: (u64, u32),
    /// Integer bracket around the real number `n^(log2 d + 1)`.
    pub kk_power_bracket: (BigInt, BigInt),
    pub kk_regime: KkRegime,
}

pub fn bound_report(n: usize, d: usize) -> Result<BoundReport, BoundsError> {
    if d < 2 || n < d {
        return Err(BoundsError::BadInput(format!("need n >= d >= 2, got ({n}, {d})")));
    }
    let klee_d3 = if d == 3 { Some(klee_formula(n)?) } else { None };
    let larman = if d >= 3 && n > d {
        Some(larman_bound(n, d)?)
    } else {
        None
    };
    let kk_binomial = if n >= 2 {
        kalai_kleitman_binomial(n, d)?
    } else {
        BigInt::zero()
    };
    let (exp, bracket) = kk_power_bracket(n, d);
    let regime = if BigInt::from(n) <= (BigInt::one() << d) {
        KkRegime::Binomial
    } else {
        KkRegime::Larman
    };
    Ok(BoundReport {
        n,
        d,
        hirsch: n as i64 - d as i64,
        klee_d3,
        lower_bound: lower_bound_formula(n, d)?,
        larman,
        kk_binomial,
        kk_power_exponent: exp,
        kk_power_bracket: bracket,
        kk_regime: regime,
    })
}

/// Integer bracket `[lo, hi]` with `lo <= n^(log2 d + 1) <= hi`, via the
/// rational exponent bracket `p/q <= log2 d <= (p+1)/q` at q = 16.
fn kk_power_bracket(n: usize, d: usize) -> ((u64, u32), (BigInt, BigInt)) {
    let nn = BigInt::from(n);
    if d.is_power_of_two() {
        let t = d.trailing_zeros();
        let exact = nn.pow(t + 1);
        return ((u64::from(t), 1), (exact.clone(), exact));
    }
    let q: u32 = 16;
    let dq = BigInt::from(d).pow(q);
    let p = (dq.bits() - 1) as u32;
    let lo = nn.pow(q + p).nth_root(q);
    let hi = nn.pow(q + p + 1).nth_root(q) + BigInt::one();
    ((u64::from(p), q), (lo, hi))
}

/// Render the report as an aligned two-column table.
impl std::fmt::Display for BoundReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut rows: Vec<(String, String)> = vec![
            ("n".into(), self.n.to_string()),
            ("d".into(), self.d.to_string()),
            ("hirsch (n-d)".into(), self.hirsch.to_string()),
            ("lower bound".into(), self.lower_bound.to_string()),
        ];
        if let Some(k) = self.klee_d3 {
            rows.push(("klee d=3".into(), k.to_string()));
        }
        if let Some(l) = &self.larman {
            rows.push(("larman".into(), l.to_string()));
        }
        rows.push(("kk binomial".into(), self.kk_binomial.to_string()));
        rows.push((
            "kk power n^(log2 d + 1)".into(),
            format!(
                "in [{}, {}]",
                self.kk_power_bracket.0, self.kk_power_bracket.1
            ),
        ));
        rows.push((
            "kk regime".into(),
            match self.kk_regime {
                KkRegime::Binomial => "binomial (n <= 2^d)".into(),
                KkRegime::Larman => "larman (n > 2^d)".into(),
            },
        ));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "{k:<width$}  {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klee_values() {
        assert_eq!(klee_formula(9).unwrap(), 5);
        assert_eq!(klee_formula(12).unwrap(), 7);
        assert_eq!(klee_formula(4).unwrap(), 1);
        assert!(klee_formula(3).is_err());
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bound_formula(8, 2).unwrap(), 4);
        assert_eq!(lower_bound_formula(9, 3).unwrap(), 5);
        assert_eq!(lower_bound_formula(8, 4).unwrap(), 4);
        assert!(lower_bound_formula(1, 2).is_err());
    }

    #[test]
    fn lower_bound_below_hirsch() {
        // n = d is excluded: no d-polytope has only d facets, and there the
        // formula value 1 sits above the vacuous bound 0.
        for d in 2..=8 {
            for n in (d + 1)..=30 {
                assert!(
                    lower_bound_formula(n, d).unwrap() <= n as i64 - d as i64,
                    "violated at ({n},{d})"
                );
            }
        }
    }

    #[test]
    fn larman_values() {
        assert_eq!(larman_bound(9, 4).unwrap(), BigInt::from(18));
        assert_eq!(larman_bound(10, 3).unwrap(), BigInt::from(10));
        assert!(larman_bound(4, 4).is_err());
        // at d = 3 the exact formula is below the linear bound
        for n in 4..=30 {
            assert!(BigInt::from(klee_formula(n).unwrap()) <= larman_bound(n, 3).unwrap());
        }
    }

    #[test]
    fn kalai_kleitman_values() {
        assert_eq!(kalai_kleitman_binomial(8, 3).unwrap(), BigInt::from(160));
        assert_eq!(kalai_kleitman_binomial(2, 2).unwrap(), BigInt::from(6));
        // monotone in n and d
        let mut prev = BigInt::zero();
        for n in 2..=40 {
            let v = kalai_kleitman_binomial(n, 3).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        for d in 2..=10 {
            assert!(
                kalai_kleitman_binomial(9, d).unwrap()
                    <= kalai_kleitman_binomial(9, d + 1).unwrap()
            );
        }
    }

    #[test]
    fn recursion_table_satisfies_pascal_and_envelope() {
        let t = kk_recursion_table(6, 6).unwrap();
        for k in 1..=6 {
            for d in 3..=6 {
                assert_eq!(t.h(k, d), &(t.h(k - 1, d) + t.h(k, d - 1)));
            }
        }
        // base row d = 2 from polygon diameters
        assert_eq!(t.h(1, 2), &Rational::new(2, 2));
        assert_eq!(t.h(3, 2), &Rational::new(5, 8));
        assert_eq!(t.h(0, 4), &Rational::zero());
    }

    #[test]
    fn power_check_examples() {
        // 5 <= 9^3 = 729
        assert!(kk_power_check(5, 9, 4).unwrap().holds);
        // exact power boundary: n = 4, d = 4 gives bound 4^3 = 64
        assert!(kk_power_check(64, 4, 4).unwrap().holds);
        assert!(!kk_power_check(65, 4, 4).unwrap().holds);
        // a non-power-of-two dimension forcing the adaptive bracket:
        // 5^(log2 3 + 1) = 64.09..., so 64 passes and 65 does not
        assert!(kk_power_check(64, 5, 3).unwrap().holds);
        assert!(!kk_power_check(65, 5, 3).unwrap().holds);
        assert!(!kk_power_check(1_000_000, 5, 3).unwrap().holds);
        // d = 1: bound is n itself
        assert!(kk_power_check(7, 7, 1).unwrap().holds);
        assert!(!kk_power_check(8, 7, 1).unwrap().holds);
    }

    #[test]
    fn report_collects_applicable_bounds() {
        let r = bound_report(9, 4).unwrap();
        assert_eq!(r.hirsch, 5);
        assert_eq!(r.larman, Some(BigInt::from(18)));
        assert_eq!(r.klee_d3, None);
        assert_eq!(r.kk_regime, KkRegime::Binomial);

        let r3 = bound_report(9, 3).unwrap();
        assert_eq!(r3.hirsch, 6);
        assert_eq!(r3.klee_d3, Some(5));
        assert!(r3.klee_d3.unwrap() < r3.hirsch as usize);

        let trivial = bound_report(5, 5).unwrap();
        assert_eq!(trivial.hirsch, 0);
        assert_eq!(trivial.larman, None);

        let big = bound_report(100, 3).unwrap();
        assert_eq!(big.kk_regime, KkRegime::Larman);
    }

    #[test]
    fn bracket_contains_the_power() {
        // d power of two: bracket collapses to the exact value
        let r = bound_report(9, 4).unwrap();
        assert_eq!(r.kk_power_bracket.0, BigInt::from(729));
        assert_eq!(r.kk_power_bracket.1, BigInt::from(729));
        // otherwise lo <= hi and the check agrees with the bracket ends
        let r = bound_report(9, 5).unwrap();
        let (lo, hi) = r.kk_power_bracket.clone();
        assert!(lo <= hi);
        let lo_usize: usize = lo.to_string().parse().unwrap();
        assert!(kk_power_check(lo_usize, 9, 5).unwrap().holds);
    }
}
