//! Surface bundles built as cyclic branched covers of a product of curves.
//!
//! [`build_xgn`] assembles the two-parameter family `X_{g,n}`: an `n`-fold
//! cyclic cover of `D̃ × C` branched along the disjoint graphs of two
//! unramified maps `D̃ → C` of degree `g·n^{2g−2}`. The cover tower behind
//! it is `D̃ → D → C → E`, with `C → E` a `g`-fold cyclic cover of an
//! elliptic curve branched at two points. Every report can be re-checked by
//! [`cross_validate`], which recomputes each number along a second route.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::signature::{hirzebruch_signature, signature_quantum, CyclicCoverSpec};
use crate::surface::{BranchClass, GraphDivisor};
use crate::topology::{
    branched_cover_euler, euler_from_genus, rh_cover_genus, EulerChar, Genus, RamificationProfile,
};
use crate::{Error, Result};

/// Connectedness of `D̃` is not decided here. A disconnected `D̃` can be
/// traded for a connected cover with the same map degrees, which leaves
/// every number in a report unchanged.
pub const CONNECTIVITY_NOTE: &str =
    "connectivity assumed: replacing a disconnected base curve by a connected cover of the same degree leaves degrees, genera and signature unchanged";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConstructionParams {
    pub g: u32,
    pub n: u32,
}

impl ConstructionParams {
    pub fn new(g: u32, n: u32) -> Result<Self> {
        if g < 2 || n < 2 {
            return Err(Error::OutOfRange(format!(
                "construction needs g, n >= 2, got g={g}, n={n}"
            )));
        }
        Ok(ConstructionParams { g, n })
    }
}

/// Which construction a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionKind {
    Xgn { g: u32, n: u32 },
    SimpleGenus2,
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionKind::Xgn { g, n } => write!(f, "X_{{{g},{n}}}"),
            ConstructionKind::SimpleGenus2 => f.write_str("simple_genus2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverStep {
    pub name: String,
    pub base_genus: Genus,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub degree: BigInt,
    pub ram: RamificationProfile,
    pub total_genus: Genus,
}

/// A chain of covers, each step's base being the previous step's total
/// space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverTower {
    pub steps: Vec<CoverStep>,
}

impl CoverTower {
    pub fn starting_at(name: impl Into<String>, base: Genus) -> TowerBuilder {
        TowerBuilder {
            steps: Vec::new(),
            top_name: name.into(),
            top: base,
        }
    }

    pub fn top(&self) -> Option<&Genus> {
        self.steps.last().map(|s| &s.total_genus)
    }

    /// Genus of the named step's total space.
    pub fn genus_of(&self, name: &str) -> Option<&Genus> {
        self.steps
            .iter()
            .find(|s| s.name == name)
            .map(|s| &s.total_genus)
    }

    /// Every step recomputes by Riemann–Hurwitz and consecutive steps chain.
    pub fn is_consistent(&self) -> bool {
        let recomputed = self.steps.iter().all(|s| {
            rh_cover_genus(&s.base_genus, s.degree.clone(), &s.ram)
                .is_ok_and(|g| g == s.total_genus)
        });
        let chained = self
            .steps
            .windows(2)
            .all(|w| w[1].base_genus == w[0].total_genus);
        recomputed && chained
    }
}

pub struct TowerBuilder {
    steps: Vec<CoverStep>,
    top_name: String,
    top: Genus,
}

impl TowerBuilder {
    /// Adds a cover of the current top curve.
    pub fn cover(
        mut self,
        name: impl Into<String>,
        degree: impl Into<BigInt>,
        ram: RamificationProfile,
    ) -> Result<Self> {
        let degree = degree.into();
        let total = rh_cover_genus(&self.top, degree.clone(), &ram)?;
        let name = name.into();
        self.steps.push(CoverStep {
            name: format!("{name} -> {}", self.top_name),
            base_genus: self.top.clone(),
            degree,
            ram,
            total_genus: total.clone(),
        });
        self.top = total;
        self.top_name = name;
        Ok(self)
    }

    pub fn build(self) -> CoverTower {
        CoverTower { steps: self.steps }
    }
}

/// One fibration of a 4-manifold over a surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleRecord {
    pub base_genus: Genus,
    pub fiber_genus: Genus,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub signature: BigInt,
    pub provenance: String,
}

impl BundleRecord {
    /// `χ(total) = χ(base)·χ(fiber)`.
    pub fn total_euler_char(&self) -> EulerChar {
        self.base_genus
            .euler_char()
            .product(&self.fiber_genus.euler_char())
    }
}

/// Outcome of one consistency check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Check {
            name: name.to_owned(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub params: ConstructionKind,
    pub tower: CoverTower,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub sheets: BigInt,
    pub graphs: BranchClass,
    pub total_chi: EulerChar,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub signature: BigInt,
    pub fibration1: BundleRecord,
    pub fibration2: BundleRecord,
    pub note: String,
}

impl ConstructionReport {
    /// The report together with its cross-validation results.
    pub fn to_document(&self) -> ReportDocument<'_> {
        ReportDocument {
            report: self,
            checks: cross_validate(self),
        }
    }
}

#[derive(Serialize)]
pub struct ReportDocument<'a> {
    #[serde(flatten)]
    pub report: &'a ConstructionReport,
    pub checks: Vec<Check>,
}

/// Closed-form invariants of `X_{g,n}`, written directly from the stated
/// formulas. They share no code with the assembly in [`build_xgn`].
pub mod closed_form {
    use num_bigint::BigInt;

    fn n_pow(n: u32, e: u32) -> BigInt {
        BigInt::from(n).pow(e)
    }

    /// `(4/3)·g(g−1)(n²−1)·n^{2g−3}`.
    pub fn signature(g: u32, n: u32) -> BigInt {
        let (gb, nb) = (BigInt::from(g), BigInt::from(n));
        BigInt::from(4) * &gb * (&gb - 1) * (&nb * &nb - 1) * n_pow(n, 2 * g - 3) / 3
    }

    /// `g(D̃) = g(g−1)·n^{2g−2} + 1`, also the genus of the second base.
    pub fn second_base_genus(g: u32, n: u32) -> BigInt {
        let gb = BigInt::from(g);
        &gb * (&gb - 1) * n_pow(n, 2 * g - 2) + 1
    }

    /// `g(gn−1)·n^{2g−2} + 1`.
    pub fn first_fiber_genus(g: u32, n: u32) -> BigInt {
        let gb = BigInt::from(g);
        &gb * (&gb * n - 1) * n_pow(n, 2 * g - 2) + 1
    }

    pub fn second_fiber_genus(g: u32, n: u32) -> BigInt {
        BigInt::from(g) * n
    }

    /// Degree of each of the two maps `D̃ → C`.
    pub fn graph_degree(g: u32, n: u32) -> BigInt {
        BigInt::from(g) * n_pow(n, 2 * g - 2)
    }
}

/// Signature of the simple genus-2 construction as stated for it.
const SIMPLE_SIGNATURE: i64 = 32;

/// Builds `X_{g,n}` for `g, n ≥ 2`.
pub fn build_xgn(p: ConstructionParams) -> Result<ConstructionReport> {
    let ConstructionParams { g, n } = ConstructionParams::new(p.g, p.n)?;
    let lift_degree = BigInt::from(n).pow(2 * g - 2);

    let tower = CoverTower::starting_at("E", Genus::from(1u32))
        .cover("C", g, RamificationProfile::single(g, 2)?)?
        .cover("D", g, RamificationProfile::unramified())?
        .cover("D~", lift_degree.clone(), RamificationProfile::unramified())?
        .build();
    let c = tower.genus_of("C -> E").cloned().expect("tower step");
    let d_tilde = tower.top().cloned().expect("tower step");

    // f̃_i: D̃ → D → C, both unramified of degree g·n^{2g−2}
    let map_degree = BigInt::from(g) * &lift_degree;
    let graphs = BranchClass::disjoint(vec![
        GraphDivisor::new(d_tilde.clone(), c.clone(), map_degree.clone())?,
        GraphDivisor::new(d_tilde.clone(), c.clone(), map_degree)?,
    ]);

    let (sheets, total_chi, signature) = cover_invariants(n, &d_tilde, &c, &graphs)?;

    let f1 = Genus::new(closed_form::first_fiber_genus(g, n))?;
    let f2 = Genus::new(closed_form::second_fiber_genus(g, n))?;
    let b2 = Genus::new(closed_form::second_base_genus(g, n))?;
    let kind = ConstructionKind::Xgn { g, n };

    Ok(ConstructionReport {
        params: kind,
        tower,
        sheets,
        graphs,
        total_chi,
        signature: signature.clone(),
        fibration1: BundleRecord {
            base_genus: c,
            fiber_genus: f1,
            signature: signature.clone(),
            provenance: format!("{kind} over C"),
        },
        fibration2: BundleRecord {
            base_genus: b2,
            fiber_genus: f2,
            signature,
            provenance: format!("{kind} over D~"),
        },
        note: CONNECTIVITY_NOTE.to_owned(),
    })
}

/// A double cover of `C̃ × C`, `C` of genus 2 with a fixed-point-free
/// automorphism `s` and `C̃ → C` the unramified cover for
/// `π₁(C) → H₁(C, Z/2)`, branched along the graphs of `ρ` and `s∘ρ`.
pub fn build_simple_genus2() -> Result<ConstructionReport> {
    // |H₁(C, Z/2)| = 2⁴
    let rho_degree = BigInt::from(16);
    let c = Genus::from(2u32);
    let tower = CoverTower::starting_at("C", c.clone())
        .cover("C~", rho_degree.clone(), RamificationProfile::unramified())?
        .build();
    let c_tilde = tower.top().cloned().expect("tower step");

    let graphs = BranchClass::disjoint(vec![
        GraphDivisor::new(c_tilde.clone(), c.clone(), rho_degree.clone())?,
        GraphDivisor::new(c_tilde.clone(), c.clone(), rho_degree)?,
    ]);
    let (sheets, total_chi, signature) = cover_invariants(2, &c_tilde, &c, &graphs)?;
    let kind = ConstructionKind::SimpleGenus2;

    Ok(ConstructionReport {
        params: kind,
        tower,
        sheets,
        graphs,
        total_chi,
        signature: signature.clone(),
        fibration1: BundleRecord {
            base_genus: c,
            fiber_genus: Genus::from(49u32),
            signature: signature.clone(),
            provenance: format!("{kind} over C"),
        },
        fibration2: BundleRecord {
            base_genus: c_tilde,
            // double cover of C branched at one point of each graph
            fiber_genus: Genus::from(4u32),
            signature,
            provenance: format!("{kind} over C~"),
        },
        note: CONNECTIVITY_NOTE.to_owned(),
    })
}

/// Sheets, total Euler characteristic and signature of the cyclic cover of
/// `domain × target` branched along `graphs`.
fn cover_invariants(
    sheets: u32,
    domain: &Genus,
    target: &Genus,
    graphs: &BranchClass,
) -> Result<(BigInt, EulerChar, BigInt)> {
    let sheets = BigInt::from(sheets);
    let ambient = euler_from_genus(domain).product(&euler_from_genus(target));
    let total_chi = branched_cover_euler(sheets.clone(), &ambient, &graphs.euler_char()?)?;
    // a product of curves has signature zero
    let spec = CyclicCoverSpec::new(sheets.clone(), 0, graphs.square()?);
    let signature = hirzebruch_signature(&spec)?;
    Ok((sheets, total_chi, signature))
}

/// Pulls a bundle back along an unramified degree-`m` cover of its base.
pub fn pullback(rec: &BundleRecord, m: impl Into<BigInt>) -> Result<BundleRecord> {
    let m = m.into();
    if m < BigInt::one() {
        return Err(Error::OutOfRange(format!(
            "pullback degree must be at least 1, got {m}"
        )));
    }
    Ok(BundleRecord {
        base_genus: Genus::new(&m * (rec.base_genus.value() - 1) + 1)?,
        fiber_genus: rec.fiber_genus.clone(),
        signature: &m * &rec.signature,
        provenance: if m.is_one() {
            rec.provenance.clone()
        } else {
            format!("{} pulled back by degree {m}", rec.provenance)
        },
    })
}

/// Recomputes the report's numbers along independent routes. Failures are
/// reported, never raised.
pub fn cross_validate(rep: &ConstructionReport) -> Vec<Check> {
    let mut checks = Vec::new();

    checks.push(Check::new(
        "tower_consistent",
        rep.tower.is_consistent(),
        format!("{} steps", rep.tower.steps.len()),
    ));

    for (label, fib) in [
        ("fibration1", &rep.fibration1),
        ("fibration2", &rep.fibration2),
    ] {
        let product = fib.total_euler_char();
        checks.push(Check::new(
            &format!("chi_multiplicativity_{label}"),
            product == rep.total_chi,
            format!(
                "(2-2*{})*(2-2*{}) = {product}, total chi {}",
                fib.base_genus, fib.fiber_genus, rep.total_chi
            ),
        ));
    }

    let spec = rep
        .graphs
        .square()
        .map(|sq| CyclicCoverSpec::new(rep.sheets.clone(), 0, sq));
    let formula = spec.and_then(|s| hirzebruch_signature(&s));
    let closed = match rep.params {
        ConstructionKind::Xgn { g, n } => closed_form::signature(g, n),
        ConstructionKind::SimpleGenus2 => BigInt::from(SIMPLE_SIGNATURE),
    };
    checks.push(Check::new(
        "signature_two_routes",
        formula
            .as_ref()
            .is_ok_and(|s| *s == closed && *s == rep.signature),
        match &formula {
            Ok(s) => format!(
                "branch formula {s}, closed form {closed}, report {}",
                rep.signature
            ),
            Err(e) => format!("branch formula failed: {e}"),
        },
    ));

    checks.push(Check::new(
        "fibration_signatures_agree",
        rep.fibration1.signature == rep.signature && rep.fibration2.signature == rep.signature,
        format!(
            "{}, {}, {}",
            rep.signature, rep.fibration1.signature, rep.fibration2.signature
        ),
    ));

    let sigs = [
        &rep.signature,
        &rep.fibration1.signature,
        &rep.fibration2.signature,
    ];
    let bad: Vec<String> = sigs
        .iter()
        .filter(|s| signature_quantum(s).is_err())
        .map(|s| s.to_string())
        .collect();
    checks.push(Check::new(
        "signature_divisible_by_4",
        bad.is_empty(),
        if bad.is_empty() {
            format!("sigma = 4*{}", &rep.signature / 4)
        } else {
            format!("not divisible by 4: {}", bad.join(", "))
        },
    ));

    checks.push(fiber_check_over_target(rep));
    checks.push(fiber_check_over_domain(rep));
    checks
}

/// Fibers over a point of the target `C` are `n`-fold covers of the domain
/// branched at the preimages of that point under every graph map.
fn fiber_check_over_target(rep: &ConstructionReport) -> Check {
    const NAME: &str = "fibration1_fiber_genus_rh";
    let Some(first) = rep.graphs.components.first() else {
        return Check::new(NAME, false, "no branch components".into());
    };
    let points: BigInt = rep
        .graphs
        .components
        .iter()
        .map(|c| c.degree().clone())
        .sum();
    let computed = RamificationProfile::single(rep.sheets.clone(), points.clone())
        .and_then(|ram| rh_cover_genus(&first.domain_genus, rep.sheets.clone(), &ram));
    let base_ok = rep.fibration1.base_genus == first.target_genus;
    match computed {
        Ok(genus) => Check::new(
            NAME,
            base_ok && genus == rep.fibration1.fiber_genus,
            format!(
                "{}-fold cover of genus {} branched at {points} points: genus {genus}",
                rep.sheets, first.domain_genus
            ),
        ),
        Err(e) => Check::new(NAME, false, e.to_string()),
    }
}

/// Fibers over a point of the domain are `n`-fold covers of the target
/// branched at one point per graph.
fn fiber_check_over_domain(rep: &ConstructionReport) -> Check {
    const NAME: &str = "fibration2_fiber_genus_rh";
    let Some(first) = rep.graphs.components.first() else {
        return Check::new(NAME, false, "no branch components".into());
    };
    let points = rep.graphs.components.len();
    let computed = RamificationProfile::single(rep.sheets.clone(), points)
        .and_then(|ram| rh_cover_genus(&first.target_genus, rep.sheets.clone(), &ram));
    let base_ok = rep.fibration2.base_genus == first.domain_genus;
    match computed {
        Ok(genus) => Check::new(
            NAME,
            base_ok && genus == rep.fibration2.fiber_genus,
            format!(
                "{}-fold cover of genus {} branched at {points} points: genus {genus}",
                rep.sheets, first.target_genus
            ),
        ),
        Err(e) => Check::new(NAME, false, e.to_string()),
    }
}
