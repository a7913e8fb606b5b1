//! Cardinalities of `Δ̄`- and `Δ`-sections of costandard flags and their
//! transforms under translation onto and off a wall.
//!
//! A section is recorded by the sizes of its fibres `|e⁻¹(ξ)|`. The
//! transforms build the index sets `Π′` element by element and then count.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alcoves::d_value;
use crate::error::{Error, Result};
use crate::groth::{convert_basis, Basis, GVector};
use crate::levi::{LeviDatum, OrbitLabel, WallSetup};
use crate::rootdata::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionKind {
    Deltabar,
    Delta,
}

impl SectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SectionKind::Deltabar => "DELTABAR",
            SectionKind::Delta => "DELTA",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "DELTABAR" => Ok(SectionKind::Deltabar),
            "DELTA" => Ok(SectionKind::Delta),
            other => Err(Error::Parse(format!("unknown section kind {other:?}"))),
        }
    }

    fn basis(self) -> Basis {
        match self {
            SectionKind::Deltabar => Basis::Nabla,
            SectionKind::Delta => Basis::Zbar,
        }
    }
}

impl fmt::Display for SectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSkeleton {
    pub kind: SectionKind,
    pub sizes: BTreeMap<OrbitLabel, u64>,
}

/// One element of a transformed index set `Π′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionElement {
    /// `e(π)` for the underlying element of `Π`.
    pub source: OrbitLabel,
    /// Position of `π` inside its fibre.
    pub index: u64,
    /// `Some(1)` or `Some(2)` for elements of `Π_j × {1,2}`.
    pub copy: Option<u8>,
    /// `e′` of this element.
    pub target: OrbitLabel,
}

#[derive(Serialize, Deserialize)]
struct SizeJson {
    label: Vec<i64>,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct SkeletonJson {
    kind: String,
    sizes: Vec<SizeJson>,
}

impl SectionSkeleton {
    pub fn empty(kind: SectionKind) -> Self {
        SectionSkeleton {
            kind,
            sizes: BTreeMap::new(),
        }
    }

    pub fn from_sizes<I>(kind: SectionKind, sizes: I) -> Self
    where
        I: IntoIterator<Item = (OrbitLabel, u64)>,
    {
        let mut sk = SectionSkeleton::empty(kind);
        for (l, n) in sizes {
            sk.add(l, n);
        }
        sk
    }

    fn add(&mut self, label: OrbitLabel, n: u64) {
        if n > 0 {
            *self.sizes.entry(label).or_insert(0) += n;
        }
    }

    pub fn total(&self) -> u64 {
        self.sizes.values().sum()
    }

    pub fn to_json(&self) -> String {
        let raw = SkeletonJson {
            kind: self.kind.as_str().to_string(),
            sizes: self
                .sizes
                .iter()
                .map(|(l, &count)| SizeJson {
                    label: l.0.clone(),
                    count,
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("plain data serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SkeletonJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("skeleton JSON: {e}")))?;
        Ok(SectionSkeleton::from_sizes(
            SectionKind::parse(&raw.kind)?,
            raw.sizes.into_iter().map(|s| (Weight(s.label), s.count)),
        ))
    }
}

impl fmt::Display for SectionSkeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.kind)?;
        for (i, (l, n)) in self.sizes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}: {n}")?;
        }
        write!(f, "}}")
    }
}

/// Fibre sizes of a section of `M`: `(M : ∇(ξ))` for `Δ̄`-sections and
/// `(M : ∇̄(ξ))` for `Δ`-sections.
pub fn skeleton_from_char(
    m: &GVector,
    kind: SectionKind,
    levi: &LeviDatum,
) -> Result<SectionSkeleton> {
    let v = convert_basis(m, kind.basis(), levi)?;
    v.check_nonnegative_integral()?;
    let mut sk = SectionSkeleton::empty(kind);
    for (l, c) in &v.terms {
        let n: u64 = c
            .to_integer()
            .try_into()
            .map_err(|_| Error::BoundExceeded(format!("size at {l} exceeds u64")))?;
        sk.add(l.clone(), n);
    }
    Ok(sk)
}

fn require_deltabar(sk: &SectionSkeleton) -> Result<()> {
    if sk.kind != SectionKind::Deltabar {
        return Err(Error::WrongKind {
            expected: SectionKind::Deltabar.to_string(),
            got: sk.kind.to_string(),
        });
    }
    Ok(())
}

/// The index set `Π′ = Π₁ ∪ (Π₂ × {1,2})` of the section after translation
/// onto the wall, where `Π₂` collects the `π` with `e(π) = w·λ` and
/// `wsw⁻¹ ∈ W_{I,p}`.
pub fn onto_wall_elements(
    sk: &SectionSkeleton,
    setup: &WallSetup,
    levi: &LeviDatum,
) -> Result<Vec<SectionElement>> {
    require_deltabar(sk)?;
    let rs = levi.root_system();
    let s = setup.s.to_elt(rs, levi.p());
    let mut out = Vec::new();
    for (label, &n) in &sk.sizes {
        let w = levi.element_for(label, &setup.lambda_star)?;
        let target = levi.orbit_rep(&w.dot(&setup.mu));
        let in_pi2 = levi.in_wip(&w.conjugate(&s));
        for index in 0..n {
            if in_pi2 {
                for copy in [1, 2] {
                    out.push(SectionElement {
                        source: label.clone(),
                        index,
                        copy: Some(copy),
                        target: target.clone(),
                    });
                }
            } else {
                out.push(SectionElement {
                    source: label.clone(),
                    index,
                    copy: None,
                    target: target.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// The index set `Π′ = (Π₁ × {1,2}) ∪ Π₂` after translation off the wall,
/// with `e′(π,1) = ws·λ` and `e′(π,2) = w·λ` under `ws·λ < w·λ`.
pub fn off_wall_elements(
    sk: &SectionSkeleton,
    setup: &WallSetup,
    levi: &LeviDatum,
) -> Result<Vec<SectionElement>> {
    require_deltabar(sk)?;
    let rs = levi.root_system();
    let p = levi.p();
    let s = setup.s.to_elt(rs, p);
    let mut out = Vec::new();
    for (label, &n) in &sk.sizes {
        let mut w = levi.element_for(label, &setup.mu)?;
        let ws = w.compose(&s);
        if d_value(rs, &w.dot(&setup.lambda_star), p)?
            < d_value(rs, &ws.dot(&setup.lambda_star), p)?
        {
            w = ws;
        }
        let upper = levi.orbit_rep(&w.dot(&setup.lambda_star));
        let lower = levi.orbit_rep(&w.compose(&s).dot(&setup.lambda_star));
        let in_pi2 = levi.in_wip(&w.conjugate(&s));
        for index in 0..n {
            if in_pi2 {
                out.push(SectionElement {
                    source: label.clone(),
                    index,
                    copy: None,
                    target: upper.clone(),
                });
            } else {
                for (copy, target) in [(1, &lower), (2, &upper)] {
                    out.push(SectionElement {
                        source: label.clone(),
                        index,
                        copy: Some(copy),
                        target: target.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn count(elements: &[SectionElement]) -> SectionSkeleton {
    SectionSkeleton::from_sizes(
        SectionKind::Deltabar,
        elements.iter().map(|e| (e.target.clone(), 1)),
    )
}

pub fn onto_wall_transform(
    sk: &SectionSkeleton,
    setup: &WallSetup,
    levi: &LeviDatum,
) -> Result<SectionSkeleton> {
    Ok(count(&onto_wall_elements(sk, setup, levi)?))
}

pub fn off_wall_transform(
    sk: &SectionSkeleton,
    setup: &WallSetup,
    levi: &LeviDatum,
) -> Result<SectionSkeleton> {
    Ok(count(&off_wall_elements(sk, setup, levi)?))
}

/// Wall-crossing: translation onto the wall followed by translation off it.
pub fn theta_transform(
    sk: &SectionSkeleton,
    setup: &WallSetup,
    levi: &LeviDatum,
) -> Result<SectionSkeleton> {
    off_wall_transform(&onto_wall_transform(sk, setup, levi)?, setup, levi)
}

/// Each `π` becomes `N_I(ξ)` elements `(π, 1), …, (π, N_I(ξ))`.
pub fn deltabar_to_delta(sk: &SectionSkeleton, levi: &LeviDatum) -> Result<SectionSkeleton> {
    require_deltabar(sk)?;
    let mut out = SectionSkeleton::empty(SectionKind::Delta);
    for (l, &n) in &sk.sizes {
        out.add(l.clone(), n * levi.n_i(l)?);
    }
    Ok(out)
}

pub fn delta_to_deltabar(sk: &SectionSkeleton, levi: &LeviDatum) -> Result<SectionSkeleton> {
    if sk.kind != SectionKind::Delta {
        return Err(Error::WrongKind {
            expected: SectionKind::Delta.to_string(),
            got: sk.kind.to_string(),
        });
    }
    let mut out = SectionSkeleton::empty(SectionKind::Deltabar);
    for (l, &n) in &sk.sizes {
        let k = levi.n_i(l)?;
        if n % k != 0 {
            return Err(Error::NotDivisible {
                label: l.clone(),
                n: k,
            });
        }
        out.add(l.clone(), n / k);
    }
    Ok(out)
}
