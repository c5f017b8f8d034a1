//! Numerical intersection theory of graphs of maps inside a product of two
//! curves.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::topology::{EulerChar, Genus};
use crate::{Error, Result};

/// Graph of a degree-`degree` map from a genus-`domain_genus` curve to a
/// genus-`target_genus` curve, as a curve in the product `domain × target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphDivisor {
    pub domain_genus: Genus,
    pub target_genus: Genus,
    #[serde(serialize_with = "crate::serial::bigint")]
    degree: BigInt,
}

impl GraphDivisor {
    pub fn new(
        domain_genus: Genus,
        target_genus: Genus,
        degree: impl Into<BigInt>,
    ) -> Result<Self> {
        let degree = degree.into();
        if degree < BigInt::one() {
            return Err(Error::OutOfRange(format!(
                "map degree must be at least 1, got {degree}"
            )));
        }
        Ok(GraphDivisor {
            domain_genus,
            target_genus,
            degree,
        })
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    /// The graph is isomorphic to the domain curve.
    pub fn euler_char(&self) -> EulerChar {
        self.domain_genus.euler_char()
    }

    /// `K · Γ` for the canonical class of the product. `K` is the sum of
    /// the pulled-back canonical classes of the factors; the graph meets a
    /// fiber `{a} × target` once and a fiber `domain × {b}` `degree` times.
    fn canonical_degree(&self) -> BigInt {
        two_g_minus_two(&self.domain_genus) + &self.degree * two_g_minus_two(&self.target_genus)
    }

    /// `Γ²` by adjunction: `Γ² = 2g(Γ) − 2 − K·Γ`, with `g(Γ)` the domain
    /// genus. Reduces to `−degree·(2·target_genus − 2)`.
    pub fn self_intersection(&self) -> BigInt {
        two_g_minus_two(&self.domain_genus) - self.canonical_degree()
    }
}

fn two_g_minus_two(g: &Genus) -> BigInt {
    BigInt::from(2) * g.value() - 2
}

/// A union of graph curves used as a branch locus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchClass {
    pub components: Vec<GraphDivisor>,
    pub pairwise_disjoint: bool,
}

impl BranchClass {
    pub fn disjoint(components: Vec<GraphDivisor>) -> Self {
        BranchClass {
            components,
            pairwise_disjoint: true,
        }
    }

    /// Square of `Σ ±Γ_i`. With disjoint components the cross terms vanish,
    /// so the signs do not matter.
    pub fn square(&self) -> Result<BigInt> {
        if !self.pairwise_disjoint {
            return Err(Error::NonDisjointBranchClass);
        }
        Ok(self
            .components
            .iter()
            .map(GraphDivisor::self_intersection)
            .sum())
    }

    /// Euler characteristic of the (disjoint) branch locus.
    pub fn euler_char(&self) -> Result<EulerChar> {
        if !self.pairwise_disjoint {
            return Err(Error::NonDisjointBranchClass);
        }
        Ok(EulerChar::new(
            self.components
                .iter()
                .map(|c| c.euler_char().value().clone())
                .fold(BigInt::zero(), |acc, v| acc + v),
        ))
    }
}

pub fn graph_self_intersection(gd: &GraphDivisor) -> BigInt {
    gd.self_intersection()
}

pub fn branch_class_square(bc: &BranchClass) -> Result<BigInt> {
    bc.square()
}
