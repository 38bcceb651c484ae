//! Structured abelian groups
//! `Z^a (+) Z/d1 (+) ... (+) (k*)^b (+) (k+)^c (+) W^w (+) A^g`
//! over an algebraically closed field `k` of characteristic zero.
//!
//! `W` is the infinite dimensional `k`-vector space `y^-1 k[y^-1]` and `A^g`
//! stands for an abelian variety of dimension `g`, which is only ever carried
//! as a dimension.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{cokernel_invariants, rational_rank, IntMatrix, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{sector} matrix is {found_rows}x{found_cols}, expected {rows}x{cols}")]
    DimensionMismatch {
        sector: &'static str,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("W image rank {image} exceeds source rank {source_rank} or target rank {target}")]
    WImageRank {
        image: usize,
        source_rank: usize,
        target: usize,
    },
    #[error("maps out of an abelian-variety sector are not supported")]
    AbelianSource,
    #[error("torsion factor {0} is not >= 2")]
    BadTorsionFactor(BigInt),
    #[error("torsion column {column} is not killed by its order {order}")]
    IllDefinedTorsionImage { column: usize, order: BigInt },
    #[error("element has {found} {sector} coordinates, group has {expected}")]
    ElementShape {
        sector: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("unit value must be nonzero")]
    ZeroUnit,
    #[error("root of unity order must be >= 1")]
    ZeroOrder,
}

/// Finitely presented abelian group extended with `k*`, `k+`, `W` and
/// abelian-variety sectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuredGroup {
    #[serde(rename = "free", default)]
    pub free_rank: usize,
    #[serde(rename = "torsion", default, with = "bigint_list")]
    pub torsion_factors: Vec<BigInt>,
    #[serde(rename = "units", default)]
    pub unit_rank: usize,
    #[serde(rename = "additive", default)]
    pub additive_rank: usize,
    #[serde(rename = "w", default)]
    pub w_rank: usize,
    #[serde(rename = "abelian", default)]
    pub abelian_dim: usize,
}

impl StructuredGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        StructuredGroup {
            free_rank: rank,
            ..Self::default()
        }
    }

    pub fn cyclic(order: u64) -> Self {
        StructuredGroup {
            torsion_factors: vec![BigInt::from(order)],
            ..Self::default()
        }
        .canonical_form()
    }

    pub fn with_units(mut self, rank: usize) -> Self {
        self.unit_rank = rank;
        self
    }

    pub fn with_additive(mut self, rank: usize) -> Self {
        self.additive_rank = rank;
        self
    }

    pub fn with_w(mut self, rank: usize) -> Self {
        self.w_rank = rank;
        self
    }

    pub fn with_abelian(mut self, dim: usize) -> Self {
        self.abelian_dim = dim;
        self
    }

    pub fn with_torsion<I: IntoIterator<Item = u64>>(mut self, factors: I) -> Self {
        self.torsion_factors.extend(factors.into_iter().map(BigInt::from));
        self.canonical_form()
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical_form() == Self::trivial()
    }

    /// Number of generators in the free-plus-torsion presentation.
    pub fn discrete_generators(&self) -> usize {
        self.free_rank + self.torsion_factors.len()
    }

    /// Renormalizes the torsion part to a divisibility chain of factors `>= 2`.
    pub fn canonical_form(&self) -> Self {
        let mut out = self.clone();
        out.torsion_factors = normalize_torsion(&self.torsion_factors);
        out
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion_factors.clone();
        torsion.extend(other.torsion_factors.iter().cloned());
        StructuredGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion_factors: normalize_torsion(&torsion),
            unit_rank: self.unit_rank + other.unit_rank,
            additive_rank: self.additive_rank + other.additive_rank,
            w_rank: self.w_rank + other.w_rank,
            abelian_dim: self.abelian_dim + other.abelian_dim,
        }
    }

    /// Product of the torsion factors (1 for a torsion-free discrete part).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_factors.iter().product()
    }

    /// Text notation, e.g. `Z^3 (+) Z/2 (+) (k*)^2 (+) k+ (+) W^2 (+) A^1`.
    pub fn render(&self) -> String {
        let g = self.canonical_form();
        let mut parts = Vec::new();
        match g.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for d in &g.torsion_factors {
            parts.push(format!("Z/{d}"));
        }
        match g.unit_rank {
            0 => {}
            1 => parts.push("k*".to_string()),
            n => parts.push(format!("(k*)^{n}")),
        }
        match g.additive_rank {
            0 => {}
            1 => parts.push("k+".to_string()),
            n => parts.push(format!("(k+)^{n}")),
        }
        match g.w_rank {
            0 => {}
            1 => parts.push("W".to_string()),
            n => parts.push(format!("W^{n}")),
        }
        if g.abelian_dim > 0 {
            parts.push(format!("A^{}", g.abelian_dim));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" (+) ")
        }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        for d in &self.torsion_factors {
            if d < &BigInt::from(2) {
                return Err(GroupError::BadTorsionFactor(d.clone()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for StructuredGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Drops trivial factors and rewrites `Z/a (+) Z/b (+) ...` as a divisibility
/// chain. Works prime by prime on the factorization-free gcd/lcm recurrence.
fn normalize_torsion(factors: &[BigInt]) -> Vec<BigInt> {
    let nonzero: Vec<BigInt> = factors
        .iter()
        .map(|d| d.abs())
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let diag = IntMatrix::diagonal(&nonzero);
    cokernel_invariants(&diag).invariant_factors
}

/// Value in one `k*` coordinate: an exact nonzero rational or the root of unity
/// `exp(2 pi i * numerator / order)` with `gcd(numerator, order) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UnitValue {
    Rational(Rational),
    RootOfUnity { numerator: u64, order: u64 },
}

impl UnitValue {
    pub fn rational(value: Rational) -> Result<Self, GroupError> {
        if value.is_zero() {
            return Err(GroupError::ZeroUnit);
        }
        Ok(UnitValue::Rational(value))
    }

    pub fn integer(value: i64) -> Result<Self, GroupError> {
        Self::rational(Rational::from_integer(value.into()))
    }

    /// The primitive root `exp(2 pi i / order)`.
    pub fn primitive_root(order: u64) -> Result<Self, GroupError> {
        Self::root_of_unity(1, order)
    }

    /// `exp(2 pi i * numerator / order)`, reduced.
    pub fn root_of_unity(numerator: u64, order: u64) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let num = numerator % order;
        let g = num.gcd(&order);
        Ok(UnitValue::RootOfUnity {
            numerator: num / g,
            order: order / g,
        })
    }

    pub fn one() -> Self {
        UnitValue::Rational(Rational::one())
    }

    /// Multiplicative order; `None` when the value is not a root of unity.
    pub fn order(&self) -> Option<u64> {
        match self {
            UnitValue::Rational(q) => {
                if q.is_one() {
                    Some(1)
                } else if (-q).is_one() {
                    Some(2)
                } else {
                    None
                }
            }
            UnitValue::RootOfUnity { order, .. } => Some(*order),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.order() == Some(1)
    }

    /// Roots of unity lying in `Q` are folded back to `+-1` so that equal
    /// values compare equal.
    fn normalized(self) -> Self {
        match self {
            UnitValue::RootOfUnity { order: 1, .. } => UnitValue::one(),
            UnitValue::RootOfUnity { order: 2, .. } => UnitValue::Rational(-Rational::one()),
            other => other,
        }
    }

    fn as_root(&self) -> Option<(u64, u64)> {
        match self {
            UnitValue::RootOfUnity { numerator, order } => Some((*numerator, *order)),
            UnitValue::Rational(q) if q.is_one() => Some((0, 1)),
            UnitValue::Rational(q) if (-q).is_one() => Some((1, 2)),
            UnitValue::Rational(_) => None,
        }
    }

    /// Product of two unit values. `None` when the product would be a rational
    /// times a non-real root of unity, which this representation cannot hold.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        match (self, other) {
            (UnitValue::Rational(a), UnitValue::Rational(b)) => Some(UnitValue::Rational(a * b)),
            _ => {
                if let (Some((a, m)), Some((b, n))) = (self.as_root(), other.as_root()) {
                    let l = m.lcm(&n);
                    let num = (a * (l / m) + b * (l / n)) % l;
                    return Some(Self::root_of_unity(num, l).ok()?.normalized());
                }
                // rational times +-1
                let (q, root) = match (self, other) {
                    (UnitValue::Rational(q), r) | (r, UnitValue::Rational(q)) => (q, r),
                    _ => unreachable!(),
                };
                match root.as_root() {
                    Some((0, 1)) => Some(UnitValue::Rational(q.clone())),
                    Some((1, 2)) => Some(UnitValue::Rational(-q.clone())),
                    _ => None,
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        self.mul(&UnitValue::Rational(-Rational::one()))
            .expect("-1 is rational and real")
    }

    pub fn pow(&self, exp: &BigInt) -> Self {
        match self {
            UnitValue::Rational(q) => {
                let e: i32 = exp.try_into().expect("unit exponent fits in i32 for rational values");
                UnitValue::Rational(num_traits::Pow::pow(q, e))
            }
            UnitValue::RootOfUnity { numerator, order } => {
                let n = BigInt::from(*numerator) * exp;
                let r = n.mod_floor(&BigInt::from(*order));
                let r: u64 = r.try_into().expect("reduced below order");
                Self::root_of_unity(r, *order).expect("order >= 1").normalized()
            }
        }
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitValue::Rational(q) => write!(f, "{q}"),
            UnitValue::RootOfUnity { numerator, order } => {
                write!(f, "exp(2pi i*{numerator}/{order})")
            }
        }
    }
}

impl Serialize for UnitValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for ElementOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ElementOrder::Finite(n) => crate::numjson::big(n, s),
            ElementOrder::Infinite => s.serialize_str("infinite"),
            ElementOrder::Unknown => s.serialize_str("unknown"),
        }
    }
}

/// A `W` coordinate is tracked only as zero or nonzero, optionally with a
/// leading rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WValue {
    Zero,
    NonZero { leading: Option<Rational> },
}

/// Three-valued answer for torsion questions; the abelian-variety sector is
/// opaque so elements with coordinates there cannot be decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Torsion {
    Torsion,
    NotTorsion,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(BigInt),
    Infinite,
    Unknown,
}

impl ElementOrder {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            ElementOrder::Finite(n) => Some(n),
            _ => None,
        }
    }
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => f.write_str("infinite"),
            ElementOrder::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    group: StructuredGroup,
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
    pub units: Vec<UnitValue>,
    pub additive: Vec<Rational>,
    pub w: Vec<WValue>,
    /// Opaque symbols naming points of the abelian variety; empty string or
    /// `"0"` means the identity.
    pub abelian: Vec<String>,
}

impl GroupElement {
    pub fn identity(group: &StructuredGroup) -> Self {
        let group = group.canonical_form();
        GroupElement {
            free: vec![BigInt::zero(); group.free_rank],
            torsion: vec![BigInt::zero(); group.torsion_factors.len()],
            units: vec![UnitValue::one(); group.unit_rank],
            additive: vec![Rational::zero(); group.additive_rank],
            w: vec![WValue::Zero; group.w_rank],
            abelian: vec![String::new(); group.abelian_dim.min(1)],
            group,
        }
    }

    /// Checks coordinate counts and reduces torsion coordinates.
    pub fn new(
        group: &StructuredGroup,
        free: Vec<BigInt>,
        torsion: Vec<BigInt>,
        units: Vec<UnitValue>,
        additive: Vec<Rational>,
        w: Vec<WValue>,
        abelian: Vec<String>,
    ) -> Result<Self, GroupError> {
        let group = group.canonical_form();
        let check = |sector: &'static str, expected: usize, found: usize| {
            if expected == found {
                Ok(())
            } else {
                Err(GroupError::ElementShape {
                    sector,
                    expected,
                    found,
                })
            }
        };
        check("free", group.free_rank, free.len())?;
        check("torsion", group.torsion_factors.len(), torsion.len())?;
        check("unit", group.unit_rank, units.len())?;
        check("additive", group.additive_rank, additive.len())?;
        check("W", group.w_rank, w.len())?;
        check("abelian", group.abelian_dim.min(1), abelian.len())?;
        let torsion = torsion
            .iter()
            .zip(&group.torsion_factors)
            .map(|(x, d)| x.mod_floor(d))
            .collect();
        Ok(GroupElement {
            group,
            free,
            torsion,
            units,
            additive,
            w,
            abelian,
        })
    }

    pub fn group(&self) -> &StructuredGroup {
        &self.group
    }

    fn has_abelian_part(&self) -> bool {
        self.abelian.iter().any(|s| !s.is_empty() && s != "0")
    }

    pub fn is_identity(&self) -> bool {
        self.free.iter().all(Zero::is_zero)
            && self.torsion.iter().all(Zero::is_zero)
            && self.units.iter().all(UnitValue::is_identity)
            && self.additive.iter().all(Zero::is_zero)
            && self.w.iter().all(|w| *w == WValue::Zero)
            && !self.has_abelian_part()
    }

    /// `k+` and `W` are torsion free in characteristic zero, and the torsion of
    /// `k*` is exactly the roots of unity.
    pub fn is_torsion(&self) -> Torsion {
        let discrete_free = self.free.iter().all(Zero::is_zero)
            && self.additive.iter().all(Zero::is_zero)
            && self.w.iter().all(|w| *w == WValue::Zero)
            && self.units.iter().all(|u| u.order().is_some());
        if !discrete_free {
            Torsion::NotTorsion
        } else if self.has_abelian_part() {
            Torsion::Unknown
        } else {
            Torsion::Torsion
        }
    }

    pub fn order(&self) -> ElementOrder {
        match self.is_torsion() {
            Torsion::NotTorsion => ElementOrder::Infinite,
            Torsion::Unknown => ElementOrder::Unknown,
            Torsion::Torsion => {
                let mut order = BigInt::one();
                for (x, d) in self.torsion.iter().zip(&self.group.torsion_factors) {
                    let o = d / x.gcd(d);
                    order = order.lcm(&o);
                }
                for u in &self.units {
                    let o = BigInt::from(u.order().expect("checked torsion"));
                    order = order.lcm(&o);
                }
                ElementOrder::Finite(order)
            }
        }
    }

    /// `n * self` in additive notation (`n`-th power in the unit sector).
    pub fn scale(&self, n: &BigInt) -> Self {
        let w = self
            .w
            .iter()
            .map(|w| match w {
                WValue::Zero => WValue::Zero,
                _ if n.is_zero() => WValue::Zero,
                WValue::NonZero { leading } => WValue::NonZero {
                    leading: leading.as_ref().map(|c| c * Rational::from_integer(n.clone())),
                },
            })
            .collect();
        GroupElement {
            group: self.group.clone(),
            free: self.free.iter().map(|x| x * n).collect(),
            torsion: self
                .torsion
                .iter()
                .zip(&self.group.torsion_factors)
                .map(|(x, d)| (x * n).mod_floor(d))
                .collect(),
            units: self.units.iter().map(|u| u.pow(n)).collect(),
            additive: self
                .additive
                .iter()
                .map(|a| a * Rational::from_integer(n.clone()))
                .collect(),
            w,
            abelian: if n.is_zero() {
                vec![String::new(); self.abelian.len()]
            } else {
                self.abelian.clone()
            },
        }
    }
}

/// Block-diagonal homomorphism between structured groups.
///
/// `free_matrix` maps the free-plus-torsion generators of the source into the
/// free-plus-torsion presentation of the target (rows: target generators,
/// columns: source generators). `unit_exponent_matrix` is the monomial map on
/// `k*` coordinates, `additive_matrix` the linear map on `k+` coordinates and
/// `w_image_rank` the rank of the image in the `W` sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorHom {
    pub source: StructuredGroup,
    pub target: StructuredGroup,
    pub free_matrix: IntMatrix,
    pub unit_exponent_matrix: IntMatrix,
    pub additive_matrix: RatMatrix,
    pub w_image_rank: usize,
}

impl SectorHom {
    pub fn new(
        source: StructuredGroup,
        target: StructuredGroup,
        free_matrix: IntMatrix,
        unit_exponent_matrix: IntMatrix,
        additive_matrix: RatMatrix,
        w_image_rank: usize,
    ) -> Result<Self, GroupError> {
        let hom = SectorHom {
            source: source.canonical_form(),
            target: target.canonical_form(),
            free_matrix,
            unit_exponent_matrix,
            additive_matrix,
            w_image_rank,
        };
        hom.validate()?;
        Ok(hom)
    }

    /// The zero map.
    pub fn zero(source: &StructuredGroup, target: &StructuredGroup) -> Self {
        let (s, t) = (source.canonical_form(), target.canonical_form());
        SectorHom {
            free_matrix: IntMatrix::zeros(t.discrete_generators(), s.discrete_generators()),
            unit_exponent_matrix: IntMatrix::zeros(t.unit_rank, s.unit_rank),
            additive_matrix: RatMatrix::zeros(t.additive_rank, s.additive_rank),
            w_image_rank: 0,
            source: s,
            target: t,
        }
    }

    /// The identity map of a group without abelian-variety part.
    pub fn identity(group: &StructuredGroup) -> Self {
        let g = group.canonical_form();
        SectorHom {
            free_matrix: IntMatrix::identity(g.discrete_generators()),
            unit_exponent_matrix: IntMatrix::identity(g.unit_rank),
            additive_matrix: RatMatrix::identity(g.additive_rank),
            w_image_rank: g.w_rank,
            source: g.clone(),
            target: g,
        }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        self.source.validate()?;
        self.target.validate()?;
        let shape = |sector, rows, cols, found_rows, found_cols| {
            if rows == found_rows && cols == found_cols {
                Ok(())
            } else {
                Err(GroupError::DimensionMismatch {
                    sector,
                    rows,
                    cols,
                    found_rows,
                    found_cols,
                })
            }
        };
        shape(
            "free",
            self.target.discrete_generators(),
            self.source.discrete_generators(),
            self.free_matrix.rows(),
            self.free_matrix.cols(),
        )?;
        shape(
            "unit",
            self.target.unit_rank,
            self.source.unit_rank,
            self.unit_exponent_matrix.rows(),
            self.unit_exponent_matrix.cols(),
        )?;
        shape(
            "additive",
            self.target.additive_rank,
            self.source.additive_rank,
            self.additive_matrix.rows(),
            self.additive_matrix.cols(),
        )?;
        if self.w_image_rank > self.source.w_rank.min(self.target.w_rank) {
            return Err(GroupError::WImageRank {
                image: self.w_image_rank,
                source_rank: self.source.w_rank,
                target: self.target.w_rank,
            });
        }
        if self.source.abelian_dim > 0 {
            return Err(GroupError::AbelianSource);
        }
        // A torsion generator of order d must land in d-torsion of the target.
        let tf = self.target.free_rank;
        for (k, d) in self.source.torsion_factors.iter().enumerate() {
            let col = self.source.free_rank + k;
            let ok = (0..self.target.discrete_generators()).all(|r| {
                let image = self.free_matrix.get(r, col) * d;
                if r < tf {
                    image.is_zero()
                } else {
                    image.is_multiple_of(&self.target.torsion_factors[r - tf])
                }
            });
            if !ok {
                return Err(GroupError::IllDefinedTorsionImage {
                    column: col,
                    order: d.clone(),
                });
            }
        }
        Ok(())
    }

    /// Presentation matrix of the discrete cokernel: the target's own torsion
    /// relations stacked next to the image columns.
    fn discrete_presentation(&self) -> IntMatrix {
        let t = &self.target;
        let mut relations = IntMatrix::zeros(t.discrete_generators(), t.torsion_factors.len());
        for (k, d) in t.torsion_factors.iter().enumerate() {
            relations.set(t.free_rank + k, k, d.clone());
        }
        relations.hstack(&self.free_matrix).expect("validated row count")
    }

    pub fn cokernel(&self) -> Result<StructuredGroup, GroupError> {
        self.validate()?;
        let discrete = cokernel_invariants(&self.discrete_presentation());
        // k* is divisible: the quotient of a torus by the image of a monomial
        // map is again a torus, of dimension q - rank.
        let unit_rank = self.target.unit_rank - self.unit_exponent_matrix.rank();
        let additive_rank = self.target.additive_rank - rational_rank(&self.additive_matrix);
        Ok(StructuredGroup {
            free_rank: discrete.free_rank,
            torsion_factors: discrete.invariant_factors,
            unit_rank,
            additive_rank,
            w_rank: self.target.w_rank - self.w_image_rank,
            abelian_dim: self.target.abelian_dim,
        })
    }
}

pub fn cokernel(f: &SectorHom) -> Result<StructuredGroup, GroupError> {
    f.cokernel()
}

pub fn direct_sum(g: &StructuredGroup, h: &StructuredGroup) -> StructuredGroup {
    g.direct_sum(h)
}

pub fn is_isomorphic(g: &StructuredGroup, h: &StructuredGroup) -> bool {
    g.is_isomorphic(h)
}

/// Serializes torsion factors as JSON numbers when they fit in `u64`, and as
/// decimal strings otherwise.
pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Small(u64),
        Negative(i64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<Repr> = values
            .iter()
            .map(|v| match u64::try_from(v) {
                Ok(x) => Repr::Small(x),
                Err(_) => Repr::Big(v.to_string()),
            })
            .collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let reprs = Vec::<Repr>::deserialize(d)?;
        reprs
            .into_iter()
            .map(|r| match r {
                Repr::Small(x) => Ok(BigInt::from(x)),
                Repr::Negative(x) => Ok(BigInt::from(x)),
                Repr::Big(s) => s.parse().map_err(D::Error::custom),
            })
            .collect()
    }
}
