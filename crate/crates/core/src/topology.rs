//! Euler characteristic and genus bookkeeping for closed oriented surfaces,
//! and the Riemann–Hurwitz count for branched covers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Genus of a closed oriented surface. Always non-negative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Genus(BigInt);

impl Genus {
    pub fn new(value: impl Into<BigInt>) -> Result<Self> {
        let value = value.into();
        if value.is_negative() {
            return Err(Error::NegativeGenus(value));
        }
        Ok(Genus(value))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }

    pub fn euler_char(&self) -> EulerChar {
        euler_from_genus(self)
    }
}

macro_rules! genus_from_unsigned {
    ($($t:ty),*) => {$(
        impl From<$t> for Genus {
            fn from(value: $t) -> Self {
                Genus(BigInt::from(value))
            }
        }
    )*};
}
genus_from_unsigned!(u8, u16, u32, u64, usize);

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Genus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serial::bigint(&self.0, s)
    }
}

/// Euler characteristic of a space. Arbitrary sign; only closed oriented
/// surfaces (even, at most 2) convert back to a [`Genus`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EulerChar(BigInt);

impl EulerChar {
    pub fn new(value: impl Into<BigInt>) -> Self {
        EulerChar(value.into())
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }

    pub fn genus(&self) -> Result<Genus> {
        genus_from_euler(self)
    }

    /// Euler characteristic of a product space.
    pub fn product(&self, other: &EulerChar) -> EulerChar {
        EulerChar(&self.0 * &other.0)
    }
}

impl From<i64> for EulerChar {
    fn from(value: i64) -> Self {
        EulerChar(BigInt::from(value))
    }
}

impl fmt::Display for EulerChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for EulerChar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serial::bigint(&self.0, s)
    }
}

/// Ramification data of a branched cover as a multiset of
/// `(ramification index, number of points with that index)`.
///
/// Point identities are never needed, only the total defect
/// `Σ count·(index − 1)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RamificationProfile {
    entries: BTreeMap<BigInt, BigInt>,
}

impl RamificationProfile {
    pub fn unramified() -> Self {
        Self::default()
    }

    /// Adds `count` points of ramification index `index`. Entries with the
    /// same index merge.
    pub fn with(mut self, index: impl Into<BigInt>, count: impl Into<BigInt>) -> Result<Self> {
        let (index, count) = (index.into(), count.into());
        if index < BigInt::from(2) {
            return Err(Error::InvalidRamification(format!(
                "ramification index must be at least 2, got {index}"
            )));
        }
        if count.is_negative() {
            return Err(Error::InvalidRamification(format!(
                "point count must be non-negative, got {count}"
            )));
        }
        if !count.is_zero() {
            *self.entries.entry(index).or_insert_with(BigInt::zero) += count;
        }
        Ok(self)
    }

    /// Shorthand for a single entry.
    pub fn single(index: impl Into<BigInt>, count: impl Into<BigInt>) -> Result<Self> {
        Self::unramified().with(index, count)
    }

    pub fn is_unramified(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.entries.iter()
    }

    /// `Σ count·(index − 1)`.
    pub fn contribution(&self) -> BigInt {
        self.entries
            .iter()
            .map(|(index, count)| count * (index - BigInt::one()))
            .sum()
    }

    pub fn max_index(&self) -> Option<&BigInt> {
        self.entries.keys().next_back()
    }
}

impl Serialize for RamificationProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;

        #[derive(Serialize)]
        struct Entry<'a> {
            #[serde(serialize_with = "crate::serial::bigint")]
            index: &'a BigInt,
            #[serde(serialize_with = "crate::serial::bigint")]
            count: &'a BigInt,
        }

        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (index, count) in &self.entries {
            seq.serialize_element(&Entry { index, count })?;
        }
        seq.end()
    }
}

/// `χ = 2 − 2g`.
pub fn euler_from_genus(g: &Genus) -> EulerChar {
    EulerChar(BigInt::from(2) - BigInt::from(2) * &g.0)
}

/// Inverse of [`euler_from_genus`]. Odd values and values above 2 are
/// rejected, never rounded.
pub fn genus_from_euler(x: &EulerChar) -> Result<Genus> {
    let two = BigInt::from(2);
    if x.0 > two || x.0.is_odd() {
        return Err(Error::NotClosedSurface(x.0.clone()));
    }
    Ok(Genus((two - &x.0) / 2))
}

/// Genus of a connected degree-`degree` branched cover of a genus-`base`
/// surface with the given ramification, by Riemann–Hurwitz:
/// `χ̃ = degree·χ(base) − Σ count·(index − 1)`.
///
/// A total χ̃ above 2 can only come from a disconnected cover and is an
/// error here; per-component genera are computed by [`crate::monodromy`].
pub fn rh_cover_genus(
    base: &Genus,
    degree: impl Into<BigInt>,
    ram: &RamificationProfile,
) -> Result<Genus> {
    let degree = degree.into();
    if degree < BigInt::one() {
        return Err(Error::InvalidCoverData(format!(
            "cover degree must be at least 1, got {degree}"
        )));
    }
    if let Some(index) = ram.max_index() {
        if *index > degree {
            return Err(Error::InvalidCoverData(format!(
                "ramification index {index} exceeds cover degree {degree}"
            )));
        }
    }
    let chi = EulerChar(&degree * euler_from_genus(base).0 - ram.contribution());
    genus_from_euler(&chi).map_err(|_| {
        Error::InvalidCoverData(format!(
            "degree {degree} cover of genus {base} with defect {} has Euler characteristic {chi}",
            ram.contribution()
        ))
    })
}

/// Euler characteristic of a `sheets`-fold cover branched along a locus of
/// Euler characteristic `branch_chi`: `sheets·χ(ambient) − (sheets − 1)·χ(branch)`.
pub fn branched_cover_euler(
    sheets: impl Into<BigInt>,
    ambient_chi: &EulerChar,
    branch_chi: &EulerChar,
) -> Result<EulerChar> {
    let sheets = sheets.into();
    if sheets < BigInt::one() {
        return Err(Error::OutOfRange(format!(
            "sheet count must be at least 1, got {sheets}"
        )));
    }
    Ok(EulerChar(
        &sheets * &ambient_chi.0 - (&sheets - BigInt::one()) * &branch_chi.0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(v: u64) -> Genus {
        Genus::from(v)
    }

    fn chi(v: i64) -> EulerChar {
        EulerChar::from(v)
    }

    #[test]
    fn euler_from_genus_examples() {
        assert_eq!(euler_from_genus(&g(0)), chi(2));
        assert_eq!(euler_from_genus(&g(1)), chi(0));
        assert_eq!(euler_from_genus(&g(2)), chi(-2));
    }

    #[test]
    fn genus_from_euler_examples() {
        assert_eq!(genus_from_euler(&chi(-2)).unwrap(), g(2));
        assert_eq!(genus_from_euler(&chi(2)).unwrap(), g(0));
        // fiber of X_{2,2} over C: double cover of genus 9 branched at 16 points
        let oracle = 2 * (2 - 2 * 9) - 16;
        assert_eq!(oracle, -48);
        assert_eq!(genus_from_euler(&chi(oracle)).unwrap(), g(25));
    }

    #[test]
    fn genus_from_euler_rejects_non_surfaces() {
        assert!(matches!(
            genus_from_euler(&chi(-3)),
            Err(Error::NotClosedSurface(_))
        ));
        assert!(matches!(
            genus_from_euler(&chi(4)),
            Err(Error::NotClosedSurface(_))
        ));
        assert!(matches!(
            genus_from_euler(&chi(3)),
            Err(Error::NotClosedSurface(_))
        ));
    }

    #[test]
    fn negative_genus_rejected() {
        assert!(matches!(Genus::new(-1), Err(Error::NegativeGenus(_))));
    }

    #[test]
    fn cyclic_cover_of_elliptic_curve_has_genus_g() {
        for degree in 2u64..=6 {
            let ram = RamificationProfile::single(degree, 2).unwrap();
            assert_eq!(rh_cover_genus(&g(1), degree, &ram).unwrap(), g(degree));
        }
    }

    #[test]
    fn fiber_over_d_tilde_has_genus_gn() {
        let ram = RamificationProfile::single(2, 2).unwrap();
        assert_eq!(rh_cover_genus(&g(2), 2, &ram).unwrap(), g(4));
    }

    #[test]
    fn two_step_unramified_tower() {
        let none = RamificationProfile::unramified();
        let d = rh_cover_genus(&g(2), 2, &none).unwrap();
        assert_eq!(d, g(3));
        assert_eq!(rh_cover_genus(&d, 4, &none).unwrap(), g(9));
        // χ(D) = 2·(−2), χ(D̃) = 4·χ(D)
        assert_eq!(euler_from_genus(&g(9)), chi(4 * (2 * -2)));
    }

    #[test]
    fn rh_rejects_bad_data() {
        let none = RamificationProfile::unramified();
        // index larger than degree
        let ram = RamificationProfile::single(3, 2).unwrap();
        assert!(matches!(
            rh_cover_genus(&g(1), 2, &ram),
            Err(Error::InvalidCoverData(_))
        ));
        // odd χ̃
        let ram = RamificationProfile::single(2, 1).unwrap();
        assert!(matches!(
            rh_cover_genus(&g(1), 2, &ram),
            Err(Error::InvalidCoverData(_))
        ));
        // disconnected: two copies of a sphere
        assert!(matches!(
            rh_cover_genus(&g(0), 2, &none),
            Err(Error::InvalidCoverData(_))
        ));
        assert!(matches!(
            rh_cover_genus(&g(3), 0, &none),
            Err(Error::InvalidCoverData(_))
        ));
    }

    #[test]
    fn ramification_entries_validated_and_merged() {
        assert!(RamificationProfile::single(1, 3).is_err());
        assert!(RamificationProfile::single(2, -1).is_err());
        let ram = RamificationProfile::single(3, 2)
            .unwrap()
            .with(3, 4)
            .unwrap();
        assert_eq!(ram.entries().count(), 1);
        assert_eq!(ram.contribution(), BigInt::from(12));
        assert!(RamificationProfile::single(5, 0).unwrap().is_unramified());
    }

    #[test]
    fn branched_cover_euler_examples() {
        assert_eq!(
            branched_cover_euler(1, &chi(17), &chi(-40)).unwrap(),
            chi(17)
        );
        // X_{2,2}: χ(base)·χ(fiber) = (−2)·(−48)
        assert_eq!(
            branched_cover_euler(2, &chi(32), &chi(-32)).unwrap(),
            chi(-2 * -48)
        );
        // simple genus-2 construction: (−2)·(2 − 2·49)
        assert_eq!(
            branched_cover_euler(2, &chi(64), &chi(-64)).unwrap(),
            chi(-2 * (2 - 98))
        );
        assert!(branched_cover_euler(0, &chi(2), &chi(0)).is_err());
    }

    #[test]
    fn large_values_stay_exact() {
        // degree 7^40 unramified cover of genus 2
        let degree = BigInt::from(7).pow(40);
        let genus =
            rh_cover_genus(&g(2), degree.clone(), &RamificationProfile::unramified()).unwrap();
        assert_eq!(genus.value(), &(degree + 1));
    }

    #[test]
    fn rh_identity_cover() {
        for h in 0u64..=50 {
            assert_eq!(
                rh_cover_genus(&g(h), 1, &RamificationProfile::unramified()).unwrap(),
                g(h)
            );
        }
    }

    #[test]
    fn rh_unramified_towers_compose() {
        let none = RamificationProfile::unramified();
        for base in 2u64..=5 {
            for d1 in 2u64..=5 {
                for d2 in 2u64..=5 {
                    let mid = rh_cover_genus(&g(base), d1, &none).unwrap();
                    let two_step = rh_cover_genus(&mid, d2, &none).unwrap();
                    let one_step = rh_cover_genus(&g(base), d1 * d2, &none).unwrap();
                    assert_eq!(two_step, one_step);
                }
            }
        }
    }

    #[test]
    fn full_two_point_ramification_gives_gn() {
        for genus in 2u64..=6 {
            for n in 2u64..=6 {
                let ram = RamificationProfile::single(n, 2).unwrap();
                assert_eq!(rh_cover_genus(&g(genus), n, &ram).unwrap(), g(genus * n));
            }
        }
    }

    proptest! {
        #[test]
        fn euler_genus_round_trip(v in 0u64..1_000_000) {
            prop_assert_eq!(genus_from_euler(&euler_from_genus(&g(v))).unwrap(), g(v));
        }

        #[test]
        fn branched_cover_euler_is_linear(
            n in 1i64..50,
            a1 in -1000i64..1000, a2 in -1000i64..1000,
            b1 in -1000i64..1000, b2 in -1000i64..1000,
        ) {
            let f = |a: i64, b: i64| branched_cover_euler(n, &chi(a), &chi(b)).unwrap().value().clone();
            prop_assert_eq!(f(a1 + a2, b1 + b2), f(a1, b1) + f(a2, b2));
            prop_assert_eq!(f(a1, 0), BigInt::from(n * a1));
        }
    }
}
