//! Signature of an n-fold cyclic branched cover of a surface.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// Data for Hirzebruch's formula
/// `σ(X) = σ(Y) − ((n² − 1)/(3n))·B²`
/// where `Y` is the ambient surface and `B` the branch class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicCoverSpec {
    #[serde(serialize_with = "crate::serial::bigint")]
    pub sheets: BigInt,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub ambient_signature: BigInt,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub branch_square: BigInt,
}

impl CyclicCoverSpec {
    pub fn new(
        sheets: impl Into<BigInt>,
        ambient_signature: impl Into<BigInt>,
        branch_square: impl Into<BigInt>,
    ) -> Self {
        CyclicCoverSpec {
            sheets: sheets.into(),
            ambient_signature: ambient_signature.into(),
            branch_square: branch_square.into(),
        }
    }
}

/// Evaluates the formula as an exact rational and insists on an integer.
pub fn hirzebruch_signature(spec: &CyclicCoverSpec) -> Result<BigInt> {
    let n = &spec.sheets;
    if *n < BigInt::one() {
        return Err(Error::OutOfRange(format!(
            "sheet count must be at least 1, got {n}"
        )));
    }
    let coefficient = BigRational::new(n * n - 1, BigInt::from(3) * n);
    let sigma = BigRational::from_integer(spec.ambient_signature.clone())
        - coefficient * BigRational::from_integer(spec.branch_square.clone());
    if !sigma.is_integer() {
        return Err(Error::NonIntegralSignature(sigma));
    }
    Ok(sigma.to_integer())
}

/// `m` with `σ = 4m`. A surface bundle's signature is always a multiple
/// of 4.
pub fn signature_quantum(sigma: &BigInt) -> Result<BigInt> {
    let (m, r) = sigma.div_rem(&BigInt::from(4));
    if !r.is_zero() {
        return Err(Error::SignatureNotQuantized(sigma.clone()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(n: i64, ambient: i64, square: i64) -> Result<BigInt> {
        hirzebruch_signature(&CyclicCoverSpec::new(n, ambient, square))
    }

    #[test]
    fn examples() {
        assert_eq!(sig(2, 0, -32).unwrap(), BigInt::from(16));
        assert_eq!(sig(2, 0, -64).unwrap(), BigInt::from(32));
        for square in [-100, -7, 0, 3, 99] {
            assert_eq!(sig(1, 11, square).unwrap(), BigInt::from(11));
        }
    }

    #[test]
    fn x23_signature() {
        // closed form (4/3)g(g−1)(n²−1)n^{2g−3} at (2,3): 4·2·1·8·3/3
        let closed = 4 * 2 * 8 * 3 / 3;
        assert_eq!(closed, 64);
        // Γ_i² = −2g(g−1)n^{2g−2} = −36, two disjoint components
        assert_eq!(sig(3, 0, 2 * -36).unwrap(), BigInt::from(closed));
    }

    #[test]
    fn non_integral_rejected() {
        // 8/9 · 24 is not an integer
        assert!(matches!(
            sig(3, 0, -24),
            Err(Error::NonIntegralSignature(_))
        ));
        assert!(matches!(sig(2, 0, -1), Err(Error::NonIntegralSignature(_))));
        assert!(sig(0, 0, 0).is_err());
    }

    #[test]
    fn quantum_examples() {
        assert_eq!(
            signature_quantum(&BigInt::from(16)).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            signature_quantum(&BigInt::from(0)).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            signature_quantum(&BigInt::from(192)).unwrap(),
            BigInt::from(48)
        );
        assert_eq!(
            signature_quantum(&BigInt::from(-8)).unwrap(),
            BigInt::from(-2)
        );
        assert!(matches!(
            signature_quantum(&BigInt::from(15)),
            Err(Error::SignatureNotQuantized(_))
        ));
        assert!(signature_quantum(&BigInt::from(-6)).is_err());
    }

    proptest! {
        #[test]
        fn linear_in_branch_square(n in 1i64..20, a in -500i64..500, b in -500i64..500) {
            // multiples of 3n make every value integral
            let (a, b) = (a * 3 * n, b * 3 * n);
            let s = |sq| sig(n, 0, sq).unwrap();
            prop_assert_eq!(s(a + b), s(a) + s(b));
        }
    }
}
