//! Sparse exact vectors in the Grothendieck group of a block, translation
//! onto and off a wall, wall-crossing, and Hom-dimension bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levi::{LeviDatum, OrbitLabel, WallSetup};
use crate::rootdata::Weight;

/// Which family of classes a [`GVector`] is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Classes of baby Verma modules `[Z̄(ν)]`.
    Zbar,
    /// Classes of costandard objects `[∇(ν)]`.
    Nabla,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::Zbar => "ZBAR",
            Basis::Nabla => "NABLA",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ZBAR" => Ok(Basis::Zbar),
            "NABLA" => Ok(Basis::Nabla),
            other => Err(Error::Parse(format!("unknown basis {other:?}"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An exact rational combination of orbit labels in one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVector {
    pub basis: Basis,
    /// The anchor of the linkage class: `λ★` or a wall weight `μ`.
    pub block: Weight,
    pub terms: BTreeMap<OrbitLabel, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GVector {
    pub fn zero(basis: Basis, block: Weight) -> Self {
        GVector {
            basis,
            block,
            terms: BTreeMap::new(),
        }
    }

    /// A single class with coefficient one.
    pub fn basis_class(basis: Basis, block: Weight, label: OrbitLabel) -> Self {
        let mut v = GVector::zero(basis, block);
        v.add_term(label, rat(1));
        v
    }

    pub fn from_terms<I>(basis: Basis, block: Weight, terms: I) -> Self
    where
        I: IntoIterator<Item = (OrbitLabel, i64)>,
    {
        let mut v = GVector::zero(basis, block);
        for (label, c) in terms {
            v.add_term(label, rat(c));
        }
        v
    }

    pub fn add_term(&mut self, label: OrbitLabel, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(label).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn coeff(&self, label: &Weight) -> BigRational {
        self.terms
            .get(label)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &OrbitLabel> {
        self.terms.keys()
    }

    pub fn scaled(&self, k: &BigRational) -> GVector {
        let mut out = GVector::zero(self.basis, self.block.clone());
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c * k);
        }
        out
    }

    fn check_compatible(&self, other: &GVector) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::WrongBasis {
                expected: self.basis.to_string(),
                got: other.basis.to_string(),
            });
        }
        if self.block != other.block {
            let label = other
                .terms
                .keys()
                .next()
                .cloned()
                .unwrap_or_else(|| other.block.clone());
            return Err(Error::WrongBlock {
                label,
                anchor: self.block.clone(),
            });
        }
        Ok(())
    }

    pub fn plus(&self, other: &GVector) -> Result<GVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &GVector) -> Result<GVector> {
        self.plus(&other.scaled(&rat(-1)))
    }

    /// Nonnegative integer coefficients, in this vector's own basis.
    pub fn check_nonnegative_integral(&self) -> Result<()> {
        for (l, c) in &self.terms {
            if c.is_negative() {
                return Err(Error::NegativeCoefficient(l.clone()));
            }
            if !c.is_integer() {
                return Err(Error::NonIntegral(l.clone()));
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GVectorJson::from(self)).expect("plain data serialises")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GVectorJson::from(self)).expect("plain data serialises")
    }

    pub fn from_json(text: &str) -> Result<GVector> {
        let raw: GVectorJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("GVector JSON: {e}")))?;
        raw.try_into()
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<GVector> {
        let raw: GVectorJson = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("GVector JSON: {e}")))?;
        raw.try_into()
    }
}

impl fmt::Display for GVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.basis {
            Basis::Zbar => "Z",
            Basis::Nabla => "N",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{sym}{l}")?;
            } else {
                write!(f, "{c}*{sym}{l}")?;
            }
        }
        Ok(())
    }
}

/// Formats a rational as `"p/q"`, always with an explicit denominator.
pub fn format_coeff(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `"p/q"` or a bare integer.
pub fn parse_coeff(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = |e: String| Error::Parse(format!("coefficient {s:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|e| bad(format!("{e}")))?;
            let d: BigInt = d.trim().parse().map_err(|e| bad(format!("{e}")))?;
            if d.is_zero() {
                return Err(bad("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|e| bad(format!("{e}")))?;
            Ok(BigRational::from_integer(n))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    label: Vec<i64>,
    coeff: CoeffJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Text(String),
    Int(i64),
}

#[derive(Serialize, Deserialize)]
struct GVectorJson {
    basis: String,
    block: Vec<i64>,
    terms: Vec<TermJson>,
}

impl From<&GVector> for GVectorJson {
    fn from(v: &GVector) -> Self {
        GVectorJson {
            basis: v.basis.as_str().to_string(),
            block: v.block.0.clone(),
            terms: v
                .terms
                .iter()
                .map(|(l, c)| TermJson {
                    label: l.0.clone(),
                    coeff: CoeffJson::Text(format_coeff(c)),
                })
                .collect(),
        }
    }
}

impl TryFrom<GVectorJson> for GVector {
    type Error = Error;
    fn try_from(raw: GVectorJson) -> Result<GVector> {
        let mut v = GVector::zero(Basis::parse(&raw.basis)?, Weight(raw.block));
        for t in raw.terms {
            if t.label.len() != v.block.rank() {
                return Err(Error::DimensionMismatch {
                    expected: v.block.rank(),
                    got: t.label.len(),
                });
            }
            let c = match t.coeff {
                CoeffJson::Text(text) => parse_coeff(&text)?,
                CoeffJson::Int(n) => rat(n),
            };
            v.add_term(Weight(t.label), c);
        }
        Ok(v)
    }
}

/// Rewrites `v` in the `target` basis using `[∇(ν)] = N_I(ν)·[Z̄(ν)]`.
pub fn convert_basis(v: &GVector, target: Basis, levi: &LeviDatum) -> Result<GVector> {
    if v.basis == target {
        return Ok(v.clone());
    }
    let mut out = GVector::zero(target, v.block.clone());
    for (l, c) in &v.terms {
        let n = rat(levi.n_i(l)? as i64);
        let coeff = match target {
            Basis::Zbar => c * n,
            Basis::Nabla => c / n,
        };
        out.add_term(l.clone(), coeff);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `T_λ^μ`, from the regular block onto the wall.
    OntoWall,
    /// `T_μ^λ`, from the wall block off the wall.
    OffWall,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransSpec {
    pub direction: Direction,
    pub setup: WallSetup,
}

impl TransSpec {
    pub fn onto(setup: &WallSetup) -> Self {
        TransSpec {
            direction: Direction::OntoWall,
            setup: setup.clone(),
        }
    }

    pub fn off(setup: &WallSetup) -> Self {
        TransSpec {
            direction: Direction::OffWall,
            setup: setup.clone(),
        }
    }

    pub fn source_block(&self) -> &Weight {
        match self.direction {
            Direction::OntoWall => &self.setup.lambda_star,
            Direction::OffWall => &self.setup.mu,
        }
    }

    pub fn target_block(&self) -> &Weight {
        match self.direction {
            Direction::OntoWall => &self.setup.mu,
            Direction::OffWall => &self.setup.lambda_star,
        }
    }
}

fn check_input(v: &GVector, basis: Basis, spec: &TransSpec) -> Result<()> {
    if v.basis != basis {
        return Err(Error::WrongBasis {
            expected: basis.to_string(),
            got: v.basis.to_string(),
        });
    }
    if &v.block != spec.source_block() {
        let label = v
            .terms
            .keys()
            .next()
            .cloned()
            .unwrap_or_else(|| v.block.clone());
        return Err(Error::WrongBlock {
            label,
            anchor: spec.source_block().clone(),
        });
    }
    Ok(())
}

/// Images of a single class under the translation, as `(label, multiplier)`
/// before merging. Also reports whether `wsw⁻¹ ∈ W_{I,p}`.
struct ClassImage {
    w_lambda: OrbitLabel,
    ws_lambda: OrbitLabel,
    w_mu: OrbitLabel,
    conj_in_wip: bool,
}

fn class_image(label: &Weight, spec: &TransSpec, levi: &LeviDatum) -> Result<ClassImage> {
    let rs = levi.root_system();
    let w = levi.element_for(label, spec.source_block())?;
    let s = spec.setup.s.to_elt(rs, levi.p());
    let ws = w.compose(&s);
    Ok(ClassImage {
        w_lambda: levi.orbit_rep(&w.dot(&spec.setup.lambda_star)),
        ws_lambda: levi.orbit_rep(&ws.dot(&spec.setup.lambda_star)),
        w_mu: levi.orbit_rep(&w.dot(&spec.setup.mu)),
        conj_in_wip: levi.in_wip(&w.conjugate(&s)),
    })
}

/// Translation on the `Z̄` basis:
/// `T_λ^μ [Z̄(w·λ)] = [Z̄(w·μ)]` and `T_μ^λ [Z̄(w·μ)] = [Z̄(w·λ)] + [Z̄(ws·λ)]`.
pub fn translate(v: &GVector, spec: &TransSpec, levi: &LeviDatum) -> Result<GVector> {
    check_input(v, Basis::Zbar, spec)?;
    let mut out = GVector::zero(Basis::Zbar, spec.target_block().clone());
    for (label, c) in &v.terms {
        let img = class_image(label, spec, levi)?;
        match spec.direction {
            Direction::OntoWall => out.add_term(img.w_mu, c.clone()),
            Direction::OffWall => {
                out.add_term(img.w_lambda, c.clone());
                out.add_term(img.ws_lambda, c.clone());
            }
        }
    }
    Ok(out)
}

/// Translation on the `∇` basis by the closed multiplicity rules: onto the
/// wall `[∇(w·λ)] ↦ 2[∇(w·μ)]` when `wsw⁻¹ ∈ W_{I,p}` and `[∇(w·μ)]`
/// otherwise; off the wall `[∇(w·μ)] ↦ [∇(w·λ)]` when `wsw⁻¹ ∈ W_{I,p}` and
/// `[∇(w·λ)] + [∇(ws·λ)]` otherwise.
pub fn translate_standard(v: &GVector, spec: &TransSpec, levi: &LeviDatum) -> Result<GVector> {
    check_input(v, Basis::Nabla, spec)?;
    let mut out = GVector::zero(Basis::Nabla, spec.target_block().clone());
    for (label, c) in &v.terms {
        let img = class_image(label, spec, levi)?;
        match (spec.direction, img.conj_in_wip) {
            (Direction::OntoWall, true) => out.add_term(img.w_mu, c * rat(2)),
            (Direction::OntoWall, false) => out.add_term(img.w_mu, c.clone()),
            (Direction::OffWall, true) => out.add_term(img.w_lambda, c.clone()),
            (Direction::OffWall, false) => {
                out.add_term(img.w_lambda, c.clone());
                out.add_term(img.ws_lambda, c.clone());
            }
        }
    }
    Ok(out)
}

/// Wall-crossing `Θ_s = T_μ^λ T_λ^μ` on the `Z̄` basis.
pub fn theta_s(v: &GVector, setup: &WallSetup, levi: &LeviDatum) -> Result<GVector> {
    let onto = translate(v, &TransSpec::onto(setup), levi)?;
    translate(&onto, &TransSpec::off(setup), levi)
}

/// Wall-crossing on the `∇` basis through the closed rules.
pub fn theta_s_standard(v: &GVector, setup: &WallSetup, levi: &LeviDatum) -> Result<GVector> {
    let onto = translate_standard(v, &TransSpec::onto(setup), levi)?;
    translate_standard(&onto, &TransSpec::off(setup), levi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomKind {
    /// `dim Hom(Δ(ξ), M) = (M : ∇̄(ξ))`.
    Delta,
    /// `dim Hom(Δ̄(ξ), M) = (M : ∇(ξ))`.
    Deltabar,
}

impl HomKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "delta" => Ok(HomKind::Delta),
            "deltabar" => Ok(HomKind::Deltabar),
            other => Err(Error::Parse(format!("unknown Hom kind {other:?}"))),
        }
    }
}

/// Hom-dimension from a standard-type object into `M`, read off as a
/// filtration multiplicity of `M`.
pub fn hom_dim(kind: HomKind, xi: &Weight, m: &GVector, levi: &LeviDatum) -> Result<u64> {
    m.check_nonnegative_integral()?;
    let basis = match kind {
        HomKind::Delta => Basis::Zbar,
        HomKind::Deltabar => Basis::Nabla,
    };
    let c = convert_basis(m, basis, levi)?.coeff(xi);
    if c.is_negative() {
        return Err(Error::NegativeCoefficient(xi.clone()));
    }
    if !c.is_integer() {
        return Err(Error::NonIntegral(xi.clone()));
    }
    c.to_integer()
        .try_into()
        .map_err(|_| Error::BoundExceeded(format!("multiplicity at {xi} exceeds u64")))
}
