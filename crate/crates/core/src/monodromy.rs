//! Covers of closed surfaces described by permutation monodromy.
//!
//! A degree-`d` cover of a genus-`h` surface branched over `k` points is
//! given by permutations `a_1, b_1, …, a_h, b_h, z_1, …, z_k` of the sheets
//! `0..d` satisfying
//!
//! ```text
//! a_1 b_1 a_1⁻¹ b_1⁻¹ ⋯ a_h b_h a_h⁻¹ b_h⁻¹ · z_1 ⋯ z_k = 1
//! ```
//!
//! Products are read left to right: `p·q` applies `p` first, then `q`.
//! The cover is connected iff the generated group is transitive.
//!
//! # Cover-spec files
//!
//! JSON with fields `base_genus`, `degree`, `handles` (list of `[a, b]`
//! pairs) and `branches` (list). Each permutation is either an image array
//! (`[1, 2, 0]` sends 0→1, 1→2, 2→0) or a cycle string (`"(0 1 2)"`,
//! identity `"()"`). Cycle strings are normalized on read, so a file
//! written by [`CoverFile::to_json`] reads back to the identical bytes.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::topology::{genus_from_euler, EulerChar, Genus};
use crate::{Error, Result};

/// A permutation of `0..len`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(len: usize) -> Self {
        Perm {
            images: (0..len).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a permutation of 0..{}",
                    images.len()
                )));
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `"(0 1 2)(3 4)"` on `len` symbols.
    /// Commas may separate entries. `"()"` and `""` are the identity.
    pub fn from_cycles(text: &str, len: usize) -> Result<Self> {
        let err = |msg: String| Error::InvalidPermutation(format!("{text:?}: {msg}"));
        let mut images: Vec<usize> = (0..len).collect();
        let mut used = vec![false; len];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| err("expected '('".into()))?;
            let close = body.find(')').ok_or_else(|| err("unclosed cycle".into()))?;
            let cycle = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| err(format!("bad symbol {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for &s in &cycle {
                if s >= len {
                    return Err(err(format!("symbol {s} out of range for degree {len}")));
                }
                if std::mem::replace(&mut used[s], true) {
                    return Err(err(format!("symbol {s} repeated")));
                }
            }
            for (i, &s) in cycle.iter().enumerate() {
                images[s] = cycle[(i + 1) % cycle.len()];
            }
            rest = body[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        }
        Ok(Perm { images })
    }

    /// `i ↦ i + shift (mod len)`.
    pub fn rotation(len: usize, shift: i64) -> Self {
        let s = shift.rem_euclid(len as i64) as usize;
        Perm {
            images: (0..len).map(|i| (i + s) % len).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other`. Both must have the same length.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    /// The permutation seen after renaming every sheet `i` to `by(i)`.
    pub fn relabel(&self, by: &Perm) -> Perm {
        by.inverse().then(self).then(by)
    }

    /// Cycles as lists, each starting at its least element, ordered by
    /// that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Canonical cycle notation, fixed points omitted.
    pub fn to_cycle_string(&self) -> String {
        let s: String = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let items: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("({})", items.join(" "))
            })
            .collect();
        if s.is_empty() {
            "()".to_owned()
        } else {
            s
        }
    }

    fn restrict(&self, symbols: &[usize], index_of: &[usize]) -> Perm {
        Perm {
            images: symbols.iter().map(|&s| index_of[self.images[s]]).collect(),
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationCover {
    pub base_genus: Genus,
    pub degree: usize,
    pub handles: Vec<(Perm, Perm)>,
    pub branches: Vec<Perm>,
}

impl PermutationCover {
    pub fn new(
        base_genus: Genus,
        degree: usize,
        handles: Vec<(Perm, Perm)>,
        branches: Vec<Perm>,
    ) -> Self {
        PermutationCover {
            base_genus,
            degree,
            handles,
            branches,
        }
    }

    fn generators(&self) -> impl Iterator<Item = &Perm> {
        self.handles
            .iter()
            .flat_map(|(a, b)| [a, b])
            .chain(self.branches.iter())
    }

    /// The left-to-right product of all commutators and branch
    /// permutations.
    pub fn relation_product(&self) -> Perm {
        let mut acc = Perm::identity(self.degree);
        for (a, b) in &self.handles {
            acc = acc.then(a).then(b).then(&a.inverse()).then(&b.inverse());
        }
        for z in &self.branches {
            acc = acc.then(z);
        }
        acc
    }

    /// True iff every permutation acts on `degree` symbols, there are
    /// exactly `base_genus` handle pairs, and the surface-group relation
    /// holds.
    pub fn validate(&self) -> bool {
        self.degree >= 1
            && BigInt::from(self.handles.len()) == *self.base_genus.value()
            && self.generators().all(|p| p.len() == self.degree)
            && self.relation_product().is_identity()
    }

    fn ensure_valid(&self) -> Result<()> {
        if self.validate() {
            return Ok(());
        }
        let reason = if self.degree == 0 {
            "degree must be at least 1".to_owned()
        } else if BigInt::from(self.handles.len()) != *self.base_genus.value() {
            format!(
                "{} handle pairs for base genus {}",
                self.handles.len(),
                self.base_genus
            )
        } else if let Some(p) = self.generators().find(|p| p.len() != self.degree) {
            format!(
                "permutation on {} symbols in a degree {} cover",
                p.len(),
                self.degree
            )
        } else {
            format!(
                "relation product is {}, not the identity",
                self.relation_product()
            )
        };
        Err(Error::InvalidCover(reason))
    }

    /// Orbits of the monodromy group, each sorted, ordered by least
    /// element.
    pub fn orbits(&self) -> Result<Vec<Vec<usize>>> {
        self.ensure_valid()?;
        let gens: Vec<&Perm> = self.generators().collect();
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut next = 0;
            while next < orbit.len() {
                let s = orbit[next];
                next += 1;
                for p in &gens {
                    let t = p.apply(s);
                    if !seen[t] {
                        seen[t] = true;
                        orbit.push(t);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    pub fn component_count(&self) -> Result<usize> {
        Ok(self.orbits()?.len())
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.component_count()? == 1)
    }

    /// Riemann–Hurwitz in cycle form:
    /// `χ = d·(2 − 2h) − Σ_j (d − cycles(z_j))`.
    pub fn euler_char(&self) -> Result<EulerChar> {
        self.ensure_valid()?;
        Ok(cycle_count_euler(
            self.degree,
            &self.base_genus,
            &self.branches,
        ))
    }

    /// Genus of each connected component, in orbit order.
    pub fn component_genera(&self) -> Result<Vec<Genus>> {
        let orbits = self.orbits()?;
        let mut index_of = vec![0; self.degree];
        orbits
            .iter()
            .map(|orbit| {
                for (k, &s) in orbit.iter().enumerate() {
                    index_of[s] = k;
                }
                let branches: Vec<Perm> = self
                    .branches
                    .iter()
                    .map(|z| z.restrict(orbit, &index_of))
                    .collect();
                genus_from_euler(&cycle_count_euler(orbit.len(), &self.base_genus, &branches))
            })
            .collect()
    }

    /// Renames every sheet `i` to `by(i)` in all permutations.
    pub fn relabel(&self, by: &Perm) -> PermutationCover {
        PermutationCover {
            base_genus: self.base_genus.clone(),
            degree: self.degree,
            handles: self
                .handles
                .iter()
                .map(|(a, b)| (a.relabel(by), b.relabel(by)))
                .collect(),
            branches: self.branches.iter().map(|z| z.relabel(by)).collect(),
        }
    }
}

fn cycle_count_euler(degree: usize, base: &Genus, branches: &[Perm]) -> EulerChar {
    let d = BigInt::from(degree);
    let defect: BigInt = branches
        .iter()
        .map(|z| BigInt::from(degree - z.cycle_count()))
        .sum();
    EulerChar::new(&d * base.euler_char().value() - defect)
}

pub fn validate(pc: &PermutationCover) -> bool {
    pc.validate()
}

pub fn component_count(pc: &PermutationCover) -> Result<usize> {
    pc.component_count()
}

pub fn perm_cover_euler(pc: &PermutationCover) -> Result<EulerChar> {
    pc.euler_char()
}

/// The `n`-fold cyclic cover of a genus-`g` surface branched at two points
/// with monodromy a full `n`-cycle and its inverse. `handle_values` holds
/// the rotation amounts `a_1, b_1, …, a_g, b_g` (mod `n`).
pub fn cyclic_cover_spec(g: usize, n: usize, handle_values: &[i64]) -> Result<PermutationCover> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "cyclic cover needs n >= 2, got {n}"
        )));
    }
    if handle_values.len() != 2 * g {
        return Err(Error::OutOfRange(format!(
            "expected {} handle values for genus {g}, got {}",
            2 * g,
            handle_values.len()
        )));
    }
    let handles = handle_values
        .chunks_exact(2)
        .map(|ab| (Perm::rotation(n, ab[0]), Perm::rotation(n, ab[1])))
        .collect();
    Ok(PermutationCover::new(
        Genus::from(g),
        n,
        handles,
        vec![Perm::rotation(n, 1), Perm::rotation(n, -1)],
    ))
}

/// One permutation as written in a cover-spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermNotation {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermNotation {
    fn to_perm(&self, degree: usize) -> Result<Perm> {
        match self {
            PermNotation::Images(images) => Perm::from_images(images.clone()),
            PermNotation::Cycles(text) => Perm::from_cycles(text, degree),
        }
    }
}

/// Which notation [`CoverFile::from_cover`] writes permutations in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Notation {
    Images,
    Cycles,
}

/// On-disk form of a [`PermutationCover`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub base_genus: u64,
    pub degree: usize,
    pub handles: Vec<[PermNotation; 2]>,
    pub branches: Vec<PermNotation>,
}

impl CoverFile {
    /// Parses a cover-spec document and normalizes its cycle strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut file: CoverFile = serde_json::from_str(text)?;
        let degree = file.degree;
        let normalize = |p: &mut PermNotation| -> Result<()> {
            if let PermNotation::Cycles(text) = p {
                *text = Perm::from_cycles(text, degree)?.to_cycle_string();
            }
            Ok(())
        };
        for pair in &mut file.handles {
            pair.iter_mut().try_for_each(normalize)?;
        }
        file.branches.iter_mut().try_for_each(normalize)?;
        Ok(file)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("cover file serializes");
        s.push('\n');
        s
    }

    pub fn to_cover(&self) -> Result<PermutationCover> {
        let handles = self
            .handles
            .iter()
            .map(|[a, b]| Ok((a.to_perm(self.degree)?, b.to_perm(self.degree)?)))
            .collect::<Result<Vec<_>>>()?;
        let branches = self
            .branches
            .iter()
            .map(|z| z.to_perm(self.degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermutationCover::new(
            Genus::from(self.base_genus),
            self.degree,
            handles,
            branches,
        ))
    }

    pub fn from_cover(pc: &PermutationCover, notation: Notation) -> Result<Self> {
        let write = |p: &Perm| match notation {
            Notation::Images => PermNotation::Images(p.images().to_vec()),
            Notation::Cycles => PermNotation::Cycles(p.to_cycle_string()),
        };
        let base_genus = u64::try_from(pc.base_genus.value())
            .map_err(|_| Error::OutOfRange(format!("base genus {} too large", pc.base_genus)))?;
        Ok(CoverFile {
            base_genus,
            degree: pc.degree,
            handles: pc
                .handles
                .iter()
                .map(|(a, b)| [write(a), write(b)])
                .collect(),
            branches: pc.branches.iter().map(write).collect(),
        })
    }
}

/// Summary of a cover, as printed by the `monodromy` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSummary {
    pub valid: bool,
    pub base_genus: Genus,
    pub degree: usize,
    pub components: Option<usize>,
    pub euler_char: Option<EulerChar>,
    pub genus: Option<Genus>,
    pub component_genera: Option<Vec<Genus>>,
    pub problem: Option<String>,
}

impl CoverSummary {
    pub fn of(pc: &PermutationCover) -> Self {
        match pc.ensure_valid() {
            Ok(()) => {
                let genera = pc.component_genera().ok();
                let components = genera.as_ref().map(Vec::len);
                CoverSummary {
                    valid: true,
                    base_genus: pc.base_genus.clone(),
                    degree: pc.degree,
                    components,
                    euler_char: pc.euler_char().ok(),
                    genus: match (&genera, components) {
                        (Some(g), Some(1)) => Some(g[0].clone()),
                        _ => None,
                    },
                    component_genera: genera,
                    problem: None,
                }
            }
            Err(e) => CoverSummary {
                valid: false,
                base_genus: pc.base_genus.clone(),
                degree: pc.degree,
                components: None,
                euler_char: None,
                genus: None,
                component_genera: None,
                problem: Some(e.to_string()),
            },
        }
    }
}
