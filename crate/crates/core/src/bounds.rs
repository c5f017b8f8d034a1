//! Bounds on the minimal base genus of surface bundles.
//!
//! `b_f(m)` is the least base genus of a genus-`f` bundle with signature
//! `4m`, and `G_f = lim b_f(m)/m`. Upper bounds here come from the
//! `X_{g,n}` family (fiber genus `gn` over the second base) and its
//! pullbacks along unramified covers. Two bounds from the literature are
//! reproduced exactly as quoted for comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::construction::closed_form;
use crate::serial::format_rational;
use crate::signature::signature_quantum;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    GfUpper,
    GfLower,
    BfmUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    ThisPaper,
    EkkosQuoted,
    KotschickQuoted,
}

/// The construction realizing a bound: `X_{g,n}` with `f = n·g`, pulled
/// back by a degree-`pullback_degree` cover when bounding `b_f(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: u64,
    pub g: u64,
    #[serde(
        serialize_with = "crate::serial::opt_bigint",
        skip_serializing_if = "Option::is_none"
    )]
    pub pullback_degree: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub f: u64,
    pub kind: BoundKind,
    #[serde(serialize_with = "crate::serial::rational")]
    pub value: BigRational,
    pub witness: Option<Witness>,
    pub source: BoundSource,
}

/// Pairs `(n, g)` with `n·g = f` and `n, g ≥ 2`, by increasing `n`.
fn factorizations(f: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=f / 2)
        .filter(move |n| f.is_multiple_of(*n) && f / n >= 2)
        .map(move |n| (n, f / n))
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `3n/(n² − 1)`, the slope of the `X_{g,n}` pullback sequence.
fn gf_slope(n: u64) -> BigRational {
    let n = BigInt::from(n);
    BigRational::new(BigInt::from(3) * &n, &n * &n - 1)
}

/// Best upper bound on `G_f` from the `X_{g,n}` family, or `None` when `f`
/// has no factorization `n·g` with `n, g ≥ 2`. Ties go to the smallest `n`.
pub fn gf_upper(f: u64) -> Option<BoundReport> {
    let mut best: Option<(BigRational, u64, u64)> = None;
    for (n, g) in factorizations(f) {
        let value = gf_slope(n);
        if best.as_ref().is_none_or(|(b, _, _)| value < *b) {
            best = Some((value, n, g));
        }
    }
    best.map(|(value, n, g)| BoundReport {
        f,
        kind: BoundKind::GfUpper,
        value,
        witness: Some(Witness {
            n,
            g,
            pullback_degree: None,
        }),
        source: BoundSource::ThisPaper,
    })
}

/// `16/(f − 2)`, quoted only for even `f`.
pub fn ekkos_upper(f: u64) -> Result<BoundReport> {
    if f < 4 || !f.is_multiple_of(2) {
        return Err(Error::OutOfRange(format!(
            "quoted 16/(f-2) bound applies to even f >= 4, got {f}"
        )));
    }
    Ok(BoundReport {
        f,
        kind: BoundKind::GfUpper,
        value: ratio(16, f - 2),
        witness: None,
        source: BoundSource::EkkosQuoted,
    })
}

/// `2/(f − 1)`.
pub fn kotschick_lower(f: u64) -> Result<BoundReport> {
    if f < 2 {
        return Err(Error::OutOfRange(format!(
            "quoted 2/(f-1) bound needs f >= 2, got {f}"
        )));
    }
    Ok(BoundReport {
        f,
        kind: BoundKind::GfLower,
        value: ratio(2, f - 1),
        witness: None,
        source: BoundSource::KotschickQuoted,
    })
}

/// Smallest base genus among `X_{g,n}` (over its second base, fiber genus
/// `gn = f`) pulled back to signature exactly `4m`. `None` when no
/// construction's signature quantum divides `m`.
pub fn bfm_upper(f: u64, m: &BigInt) -> Result<Option<BoundReport>> {
    if f < 4 {
        return Err(Error::OutOfRange(format!(
            "b_f(m) bound needs f >= 4, got {f}"
        )));
    }
    if *m < BigInt::one() {
        return Err(Error::OutOfRange(format!(
            "b_f(m) bound needs m >= 1, got {m}"
        )));
    }
    let mut best: Option<(BigInt, Witness)> = None;
    for (n, g) in factorizations(f) {
        let (Ok(gu), Ok(nu)) = (u32::try_from(g), u32::try_from(n)) else {
            continue;
        };
        let quantum = signature_quantum(&closed_form::signature(gu, nu))?;
        let (k, r) = m.div_rem(&quantum);
        if !r.is_zero() {
            continue;
        }
        let base = &k * (closed_form::second_base_genus(gu, nu) - 1) + 1;
        if best.as_ref().is_none_or(|(b, _)| base < *b) {
            best = Some((
                base,
                Witness {
                    n,
                    g,
                    pullback_degree: Some(k),
                },
            ));
        }
    }
    Ok(best.map(|(base, witness)| BoundReport {
        f,
        kind: BoundKind::BfmUpper,
        value: BigRational::from_integer(base),
        witness: Some(witness),
        source: BoundSource::ThisPaper,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub f: u64,
    #[serde(serialize_with = "crate::serial::opt_rational")]
    pub gf_upper: Option<BigRational>,
    pub gf_witness: Option<Witness>,
    #[serde(serialize_with = "crate::serial::opt_rational")]
    pub ekkos_upper: Option<BigRational>,
    #[serde(serialize_with = "crate::serial::opt_rational")]
    pub kotschick_lower: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableMetadata {
    pub f_min: u64,
    pub f_max: u64,
    pub ekkos_upper: &'static str,
    pub values: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsTable {
    pub metadata: TableMetadata,
    pub rows: Vec<BoundsRow>,
}

pub const CSV_COLUMNS: [&str; 5] = [
    "f",
    "gf_upper",
    "gf_witness",
    "ekkos_upper",
    "kotschick_lower",
];

impl BoundsTable {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).expect("in-memory write");
        let cell = |v: &Option<BigRational>| v.as_ref().map(format_rational).unwrap_or_default();
        for row in &self.rows {
            w.write_record([
                row.f.to_string(),
                cell(&row.gf_upper),
                row.gf_witness
                    .as_ref()
                    .map(|w| format!("({},{})", w.n, w.g))
                    .unwrap_or_default(),
                cell(&row.ekkos_upper),
                cell(&row.kotschick_lower),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

/// One row per `f` in `4..=f_max`.
pub fn bounds_table(f_max: u64) -> Result<BoundsTable> {
    if f_max < 4 {
        return Err(Error::OutOfRange(format!(
            "table needs f_max >= 4, got {f_max}"
        )));
    }
    let rows = (4..=f_max)
        .map(|f| {
            let upper = gf_upper(f);
            BoundsRow {
                f,
                gf_upper: upper.as_ref().map(|b| b.value.clone()),
                gf_witness: upper.and_then(|b| b.witness),
                ekkos_upper: ekkos_upper(f).ok().map(|b| b.value),
                kotschick_lower: kotschick_lower(f).ok().map(|b| b.value),
            }
        })
        .collect();
    Ok(BoundsTable {
        metadata: TableMetadata {
            f_min: 4,
            f_max,
            ekkos_upper: "quoted 16/(f-2) comparison bound, given for even f only",
            values: "exact rationals as \"p/q\" strings",
        },
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    /// Every `(n, g)` with `n·g = f`, found by brute force over all pairs.
    fn all_pairs(f: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for n in 2..=f {
            for g in 2..=f {
                if n * g == f {
                    out.push((n, g));
                }
            }
        }
        out
    }

    #[test]
    fn gf_upper_examples() {
        let b = gf_upper(4).unwrap();
        assert_eq!(b.value, q(2, 1));
        assert_eq!(b.witness.as_ref().map(|w| (w.n, w.g)), Some((2, 2)));
        assert_eq!(b.source, BoundSource::ThisPaper);

        let b = gf_upper(6).unwrap();
        assert_eq!(b.value, q(9, 8));
        assert_eq!(b.witness.as_ref().map(|w| (w.n, w.g)), Some((3, 2)));

        for f in [2, 3, 5, 7, 11, 97] {
            assert!(gf_upper(f).is_none(), "f={f}");
        }
    }

    #[test]
    fn gf_upper_even_closed_form() {
        for f in (4..=100u64).step_by(2) {
            let fi = f as i64;
            let closed = q(6 * fi, fi * fi - 4);
            assert_eq!(gf_upper(f).unwrap().value, closed);
            assert!(closed < ekkos_upper(f).unwrap().value);
        }
    }

    #[test]
    fn gf_upper_is_enumeration_minimum() {
        for f in 4..=200u64 {
            let oracle = all_pairs(f)
                .into_iter()
                .map(|(n, g)| {
                    (
                        BigRational::new(BigInt::from(3 * n), BigInt::from(n * n - 1)),
                        n,
                        g,
                    )
                })
                .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
            match (gf_upper(f), oracle) {
                (None, None) => {}
                (Some(b), Some((v, n, g))) => {
                    assert_eq!(b.value, v);
                    let w = b.witness.unwrap();
                    assert_eq!((w.n, w.g), (n, g));
                }
                (got, want) => panic!("f={f}: {got:?} vs {want:?}"),
            }
        }
    }

    #[test]
    fn quoted_bounds() {
        assert_eq!(ekkos_upper(4).unwrap().value, q(8, 1));
        assert_eq!(ekkos_upper(18).unwrap().value, q(1, 1));
        assert_eq!(ekkos_upper(10).unwrap().value, q(2, 1));
        assert!(ekkos_upper(5).is_err());
        assert!(ekkos_upper(2).is_err());
        assert_eq!(kotschick_lower(3).unwrap().value, q(1, 1));
        assert_eq!(kotschick_lower(5).unwrap().value, q(1, 2));
        assert_eq!(kotschick_lower(25).unwrap().value, q(1, 12));
        assert_eq!(kotschick_lower(25).unwrap().kind, BoundKind::GfLower);
        assert!(kotschick_lower(1).is_err());
        assert!(ekkos_upper(4).unwrap().witness.is_none());
    }

    #[test]
    fn lower_never_exceeds_upper() {
        for f in 4..=100 {
            if let Some(upper) = gf_upper(f) {
                assert!(kotschick_lower(f).unwrap().value <= upper.value, "f={f}");
            }
        }
    }

    #[test]
    fn bfm_examples() {
        let witness = |b: &BoundReport| {
            let w = b.witness.as_ref().unwrap();
            (w.n, w.g, w.pullback_degree.clone().unwrap())
        };
        let b = bfm_upper(4, &BigInt::from(4)).unwrap().unwrap();
        assert_eq!(b.value, q(9, 1));
        assert_eq!(witness(&b), (2, 2, BigInt::from(1)));

        let b = bfm_upper(4, &BigInt::from(8)).unwrap().unwrap();
        assert_eq!(b.value, q(17, 1));
        assert_eq!(witness(&b), (2, 2, BigInt::from(2)));

        assert!(bfm_upper(4, &BigInt::from(3)).unwrap().is_none());

        // (3,2): m₀ = 16, b₀ = 19 → 55; (2,3): m₀ = 48, b₀ = 97 → 97
        let b = bfm_upper(6, &BigInt::from(48)).unwrap().unwrap();
        assert_eq!(b.value, q(55, 1));
        assert_eq!(witness(&b), (3, 2, BigInt::from(3)));

        assert!(bfm_upper(5, &BigInt::from(100)).unwrap().is_none());
        assert!(bfm_upper(3, &BigInt::from(4)).is_err());
        assert!(bfm_upper(4, &BigInt::from(0)).is_err());
    }

    #[test]
    fn bfm_linear_in_pullback_degree() {
        for m in 1..=20i64 {
            let m = BigInt::from(4 * m);
            let base = bfm_upper(4, &m).unwrap().unwrap().value;
            for k in 1..=5 {
                let scaled = bfm_upper(4, &(&m * k)).unwrap().unwrap().value;
                assert_eq!(
                    scaled - BigRational::one(),
                    (base.clone() - BigRational::one()) * BigInt::from(k)
                );
            }
        }
    }

    #[test]
    fn table_examples() {
        let t = bounds_table(4).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(
            t.to_csv(),
            "f,gf_upper,gf_witness,ekkos_upper,kotschick_lower\n4,2,\"(2,2)\",8,2/3\n"
        );

        let t = bounds_table(6).unwrap();
        assert_eq!(t.rows[2].gf_upper, Some(q(9, 8)));

        let t = bounds_table(5).unwrap();
        assert_eq!(t.rows[1].f, 5);
        assert!(t.rows[1].gf_upper.is_none());
        assert!(t.rows[1].ekkos_upper.is_none());
        assert!(t.to_csv().ends_with("\n5,,,,1/2\n"));

        assert!(bounds_table(3).is_err());
    }

    #[test]
    fn table_json_uses_rational_strings() {
        let t = bounds_table(6).unwrap();
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["rows"][0]["kotschick_lower"], "2/3");
        assert_eq!(json["rows"][2]["gf_upper"], "9/8");
        assert!(json["rows"][1]["gf_upper"].is_null());
    }
}
