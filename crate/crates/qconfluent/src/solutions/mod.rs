//! The catalog of explicit formal solutions: each entry produces a prefactor
//! scale P = q^μ, a basis descriptor and exact coefficients c₀..c_N.

mod confluence;
pub mod formulas;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use confluence::{check_confluence, confluence_pairs, ConfluenceOutcome, ConfluencePair};
pub use formulas::{closed_form, gauge_product_series, hyper_terms, ClosedForm, GaugeProductSeries};

use crate::equations::{validate, Family, ParamSet, Prefactor};
use crate::error::{Error, Result};
use crate::qalg::{BasisDescriptor, BasisKind, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    P21i,
    P21ii,
    P21iii,
    T22i,
    T22ii,
    T31i,
    T31ii,
    T31iii,
    T31iv,
    T32i,
    T32ii,
    T41i,
    T41ii,
    T41iii,
    T51i,
    T51ii,
    T51iii,
    T52i,
    T52ii,
    T52iii,
    T53i,
    T53ii,
    T53iii,
    /// Gauge products between the (1,2) and (2,1) families.
    P63g2,
    P63g3,
    /// Gauge products between the (0,2) and (2,0) families.
    P65g2,
    P65g3,
}

impl Label {
    pub const ALL: [Label; 27] = [
        Label::P21i,
        Label::P21ii,
        Label::P21iii,
        Label::T22i,
        Label::T22ii,
        Label::T31i,
        Label::T31ii,
        Label::T31iii,
        Label::T31iv,
        Label::T32i,
        Label::T32ii,
        Label::T41i,
        Label::T41ii,
        Label::T41iii,
        Label::T51i,
        Label::T51ii,
        Label::T51iii,
        Label::T52i,
        Label::T52ii,
        Label::T52iii,
        Label::T53i,
        Label::T53ii,
        Label::T53iii,
        Label::P63g2,
        Label::P63g3,
        Label::P65g2,
        Label::P65g3,
    ];

    pub fn as_str(self) -> &'static str {
        use Label::*;
        match self {
            P21i => "P21-i",
            P21ii => "P21-ii",
            P21iii => "P21-iii",
            T22i => "T22-i",
            T22ii => "T22-ii",
            T31i => "T31-i",
            T31ii => "T31-ii",
            T31iii => "T31-iii",
            T31iv => "T31-iv",
            T32i => "T32-i",
            T32ii => "T32-ii",
            T41i => "T41-i",
            T41ii => "T41-ii",
            T41iii => "T41-iii",
            T51i => "T51-i",
            T51ii => "T51-ii",
            T51iii => "T51-iii",
            T52i => "T52-i",
            T52ii => "T52-ii",
            T52iii => "T52-iii",
            T53i => "T53-i",
            T53ii => "T53-ii",
            T53iii => "T53-iii",
            P63g2 => "P63-g2",
            P63g3 => "P63-g3",
            P65g2 => "P65-g2",
            P65g3 => "P65-g3",
        }
    }

    pub fn family(self) -> Family {
        use Label::*;
        match self {
            P21i | P21ii | P21iii | T22i | T22ii => Family::D2,
            T31i | T31ii | T31iii | T31iv | T32i | T32ii | P63g2 => Family::C12,
            T41i | T41ii | T41iii | P65g2 => Family::B02,
            T51i | T51ii | T51iii | T52i | T52ii | T52iii | P63g3 => Family::C21,
            T53i | T53ii | T53iii | P65g3 => Family::B20,
        }
    }

    pub fn has_branch(self) -> bool {
        use Label::*;
        matches!(
            self,
            P21ii | P21iii | T22i | T22ii | T32i | T41ii | T41iii | T51i | T53i | T53iii
        )
    }

    /// Gauge products carry an infinite product against a descending
    /// series, so their Laurent coefficients are infinite sums.
    pub fn is_gauge_product(self) -> bool {
        matches!(self, Label::P63g2 | Label::P63g3 | Label::P65g2 | Label::P65g3)
    }

    pub fn prefactor(self) -> Prefactor {
        use Label::*;
        match self {
            P21ii | T22i | T31ii | T32i | T41iii | T51i | T52i | T53i => Prefactor::Lambda,
            P63g2 | P63g3 => Prefactor::GaugeC,
            P65g2 | P65g3 => Prefactor::GaugeB,
            _ => Prefactor::NegAlpha1,
        }
    }

    pub fn basis_kind(self) -> BasisKind {
        use Label::*;
        match self {
            P21i | T31i | T41i | T51ii | T53ii | P63g2 | P63g3 | P65g2 | P65g3 => BasisKind::MonomialDesc,
            P21ii | T31ii | T51i | T53i => BasisKind::PochAsc,
            P21iii | T31iii | T31iv | T41ii | T51iii => BasisKind::PochDesc,
            T22i | T32i | T41iii | T52i => BasisKind::MixedAsc,
            T22ii | T32ii | T52ii | T52iii | T53iii => BasisKind::MixedDesc,
        }
    }

    /// Whether cₙ carries the factor (q^{λ+α₁};q)ₙ (true for all
    /// non-gauge entries; gauge products carry a different one).
    pub fn has_lam_al1_factor(self) -> bool {
        !self.is_gauge_product()
    }

    fn description(self) -> &'static str {
        use Label::*;
        match self {
            P21i => "x^{-α1} double-sum series at infinity",
            P21ii => "x^λ 3φ2-type series in (x/c;q)_n around a finite singularity",
            P21iii => "x^{-α1} series in (c/x;q)_n with an inner finite sum",
            T22i => "x^λ series in (c/x;q)_n (x/d)^n",
            T22ii => "x^{-α1} series in (x/c;q)_n (d/x)^n with an inner finite sum",
            T31i => "x^{-α1} series at infinity with an inner finite sum",
            T31ii => "x^λ 3φ2 with a zero numerator around x = q^{l1-1/2} t1",
            T31iii => "x^{-α1} series in (q^{h1+1/2}t1/x;q)_n",
            T31iv => "x^{-α1} series in (q^{h2+1/2}t2/x;q)_n",
            T32i => "x^λ series in (c/x;q)_n (x/d)^n",
            T32ii => "x^{-α1} series in (x/c;q)_n (d/x)^n",
            T41i => "x^{-α1} series at infinity",
            T41ii => "x^{-α1} series in (c/x;q)_n",
            T41iii => "x^λ series in (c/x;q)_n (x/d)^n",
            T51i => "x^λ series in (x/c;q)_n",
            T51ii => "x^{-α1} series at infinity",
            T51iii => "x^{-α1} series in (q^{h1+1/2}t1/x;q)_n",
            T52i => "x^λ series in (c/x;q)_n (x/d)^n",
            T52ii => "x^{-α1} series in (x/c;q)_n (d/x)^n around x = q^{l1-1/2}t1",
            T52iii => "x^{-α1} series in (x/c;q)_n (d/x)^n around x = q^{l2-1/2}t2",
            T53i => "x^λ series in (x/c;q)_n",
            T53ii => "x^{-α1} series at infinity",
            T53iii => "x^{-α1} series in (x/c;q)_n (d/x)^n",
            P63g2 => "inverse Euler product times a descending partner series of type (2,1)",
            P63g3 => "Euler product times a descending partner series of type (1,2)",
            P65g2 => "two inverse Euler products times a descending partner series of type (2,0)",
            P65g3 => "two Euler products times a descending partner series of type (0,2)",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Index pair (i, i') ∈ {(1,2), (2,1)} selecting which finite singularity a
/// branch-dependent series is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    B12,
    B21,
}

impl Branch {
    pub fn i(self) -> u8 {
        match self {
            Branch::B12 => 1,
            Branch::B21 => 2,
        }
    }

    pub fn ip(self) -> u8 {
        3 - self.i()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::B12 => "12",
            Branch::B21 => "21",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionId {
    pub label: Label,
    pub branch: Option<Branch>,
}

impl SolutionId {
    pub fn new(label: Label, branch: Option<Branch>) -> Result<Self> {
        if label.has_branch() != branch.is_some() {
            return Err(Error::unknown(
                "solution id",
                format!("{}:{}", label.family(), label.as_str()),
            ));
        }
        Ok(Self { label, branch })
    }

    pub fn plain(label: Label) -> Self {
        Self::new(label, None).expect("label without branch")
    }

    pub fn branched(label: Label, branch: Branch) -> Self {
        Self::new(label, Some(branch)).expect("label with branch")
    }

    pub fn family(&self) -> Family {
        self.label.family()
    }

    /// (i, i'), defaulting to (1, 2) for branch-free entries.
    pub fn indices(&self) -> (u8, u8) {
        let b = self.branch.unwrap_or(Branch::B12);
        (b.i(), b.ip())
    }
}

impl fmt::Display for SolutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family(), self.label)?;
        if let Some(b) = self.branch {
            write!(f, ":{}", b.as_str())?;
        }
        Ok(())
    }
}

impl FromStr for SolutionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::unknown("solution id", s);
        let mut parts = s.split(':');
        let fam: Family = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let label_text = parts.next().ok_or_else(bad)?;
        let label = Label::ALL
            .into_iter()
            .find(|l| l.as_str() == label_text && l.family() == fam)
            .ok_or_else(bad)?;
        let branch = match parts.next() {
            None => None,
            Some("12") => Some(Branch::B12),
            Some("21") => Some(Branch::B21),
            Some(_) => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Self::new(label, branch).map_err(|_| bad())
    }
}

/// Which reading of an entry to build where the printed formula fails its
/// own residual check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Transcription {
    #[default]
    Corrected,
    AsPrinted,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub description: &'static str,
    pub prefactor: &'static str,
    pub basis: &'static str,
    pub residual_verifiable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alias_of: Option<String>,
}

/// Every catalog id, branches expanded, in a fixed order.
pub fn catalog_ids() -> Vec<SolutionId> {
    let mut out = Vec::new();
    for label in Label::ALL {
        if label.has_branch() {
            out.push(SolutionId::branched(label, Branch::B12));
            out.push(SolutionId::branched(label, Branch::B21));
        } else {
            out.push(SolutionId::plain(label));
        }
    }
    out
}

/// Ids with a finite residual check.
pub fn verifiable_ids() -> Vec<SolutionId> {
    catalog_ids()
        .into_iter()
        .filter(|id| !id.label.is_gauge_product())
        .collect()
}

fn alias_of(id: &SolutionId) -> Option<&'static str> {
    match id.label {
        Label::T31i => Some("g1 of the (1,2)/(2,1) gauge pair"),
        Label::T51ii => Some("g4 of the (1,2)/(2,1) gauge pair"),
        Label::T41i => Some("g1 of the (0,2)/(2,0) gauge pair"),
        Label::T53ii => Some("g4 of the (0,2)/(2,0) gauge pair"),
        _ => None,
    }
}

pub fn list_catalog() -> Vec<CatalogEntry> {
    catalog_ids()
        .into_iter()
        .map(|id| CatalogEntry {
            id: id.to_string(),
            description: id.label.description(),
            prefactor: id.label.prefactor().id(),
            basis: id.label.basis_kind().code(),
            residual_verifiable: !id.label.is_gauge_product(),
            alias_of: alias_of(&id).map(str::to_string),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSolution {
    pub id: SolutionId,
    /// P = q^μ for the prefactor x^μ.
    pub prefactor: Rational,
    pub basis: BasisDescriptor,
    pub coeffs: Vec<Rational>,
    pub terminated_at: Option<usize>,
}

impl SeriesSolution {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn from_closed_form(id: SolutionId, p: &ParamSet, cf: ClosedForm<Rational>) -> Self {
        let terminated_at = structural_termination(p, &cf.coeffs);
        Self {
            id,
            prefactor: cf.prefactor,
            basis: cf.basis,
            coeffs: cf.coeffs,
            terminated_at,
        }
    }
}

/// If q^{λ+α₁} = q^{-m} with m ≤ N, every cₙ with n > m vanishes; returns
/// the last nonzero index.
fn structural_termination(p: &ParamSet, coeffs: &[Rational]) -> Option<usize> {
    let big_q = p.lam_al1();
    let mut qm = crate::qalg::int(1);
    for m in 0..coeffs.len() {
        if &big_q * &qm == crate::qalg::int(1) {
            return coeffs[..=m].iter().rposition(|c| *c != crate::qalg::int(0));
        }
        qm *= &p.q;
    }
    None
}

pub fn construct(id: &SolutionId, p: &ParamSet, n: usize) -> Result<SeriesSolution> {
    construct_as(id, p, n, Transcription::Corrected)
}

pub fn construct_as(id: &SolutionId, p: &ParamSet, n: usize, tr: Transcription) -> Result<SeriesSolution> {
    if p.family != id.family() {
        return Err(Error::Constraint(vec![format!(
            "parameter set is for {} but {} needs {}",
            p.family,
            id,
            id.family()
        )]));
    }
    if id.label.is_gauge_product() {
        return Err(Error::NotResidualVerifiable(id.to_string()));
    }
    validate(p)?;
    let cf = closed_form(id, p, n, tr)?;
    Ok(SeriesSolution::from_closed_form(*id, p, cf))
}

/// Smallest n₀ < N with cₙ = 0 for all n₀ < n ≤ N.
pub fn terminating_degree(id: &SolutionId, p: &ParamSet, n: usize) -> Result<Option<usize>> {
    let sol = construct(id, p, n)?;
    let zero = crate::qalg::int(0);
    Ok(match sol.coeffs.iter().rposition(|c| *c != zero) {
        Some(last) if last < n => Some(last),
        Some(_) => None,
        None => Some(0),
    })
}
