//! Local and global divisor class groups for the bundled surface catalog.
//!
//! Local groups at a singular point are cokernels of the pullback of Cartier
//! groups from the singular curve `L` to its preimage `Gamma` in the
//! normalization. `Pic X` is the kernel of the restriction from `Pic S` to
//! `Pic Gamma / Pic L` once that restriction is known to be injective on
//! `Pic X`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{GroupError, SectorHom, StructuredGroup};
use crate::linalg::{hermite_basis, integer_kernel_basis, solve_integer, IntMatrix, RatMatrix, Rational};
use crate::numjson;

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("unknown germ preset '{name}'; valid presets: {}", valid.join(", "))]
    UnknownPreset { name: String, valid: Vec<String> },
    #[error("unknown catalog entry '{name}'; valid entries: {}", valid.join(", "))]
    UnknownEntry { name: String, valid: Vec<String> },
    #[error("injectivity of Pic X -> Pic S is not established for '{0}'; the restriction kernel only describes the subgroup G of the non-smooth case")]
    InjectivityUnknown(String),
    #[error("'{0}' is not flagged as a surface with ordinary singularities")]
    NotOrdinary(String),
    #[error("hyperplane class of '{0}' is not in the restriction kernel")]
    HyperplaneNotInKernel(String),
    #[error("malformed catalog data for '{name}': {message}")]
    Malformed { name: String, message: String },
    #[error("invalid germ JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPullback {
    #[serde(default)]
    free: Vec<Vec<i64>>,
    #[serde(default)]
    units: Vec<Vec<i64>>,
    /// Entries of the `k+` map; integers only in the data format.
    #[serde(default)]
    additive: Vec<Vec<i64>>,
    #[serde(default)]
    w_image_rank: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPreset {
    name: String,
    #[serde(default)]
    description: String,
    #[serde(rename = "cart_L")]
    cart_l: StructuredGroup,
    #[serde(rename = "cart_Gamma")]
    cart_gamma: StructuredGroup,
    #[serde(default)]
    pullback: RawPullback,
    points_upstairs: usize,
    #[serde(default)]
    gamma_branches: Option<usize>,
    #[serde(default)]
    expected_apic: Option<StructuredGroup>,
    #[serde(default)]
    citation: Option<String>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAssignment {
    point: String,
    preset: String,
    #[serde(default = "one")]
    count: usize,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    #[serde(default)]
    description: String,
    #[serde(rename = "pic_S_free_rank")]
    pic_s_free_rank: usize,
    #[serde(default)]
    #[serde(rename = "pic_S_basis")]
    pic_s_basis: Vec<String>,
    restriction_matrix: Vec<Vec<i64>>,
    quotient_torsion: Vec<i64>,
    injectivity_holds: bool,
    #[serde(default)]
    injectivity_justification: String,
    hyperplane_class: Vec<i64>,
    #[serde(rename = "expected_pic_X")]
    expected_pic_x: StructuredGroup,
    #[serde(default)]
    expected_hyperplane_index: Option<u64>,
    #[serde(default)]
    ordinary: bool,
    #[serde(default)]
    germ_assignments: Vec<RawAssignment>,
    #[serde(default)]
    citation: Option<String>,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    #[allow(dead_code)]
    schema: u32,
    presets: Vec<RawPreset>,
    entries: Vec<RawEntry>,
    citations: BTreeMap<String, String>,
}

/// Local pullback data `Cart L -> Cart Gamma` at one point of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceGermPreset {
    pub name: String,
    pub description: String,
    pub cart_l: StructuredGroup,
    pub cart_gamma: StructuredGroup,
    pub pullback: SectorHom,
    pub points_upstairs: usize,
    /// Total number of branches of `Gamma` at the points over the point.
    pub gamma_branches: usize,
    pub expected_apic: Option<StructuredGroup>,
    pub citation: Option<String>,
    pub notes: Vec<String>,
}

fn matrix_or_zeros(
    rows: usize,
    cols: usize,
    data: &[Vec<i64>],
    name: &str,
    sector: &str,
) -> Result<IntMatrix, SurfaceError> {
    if data.is_empty() {
        return Ok(IntMatrix::zeros(rows, cols));
    }
    let m = IntMatrix::from_row_vecs(
        cols,
        data.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
    .map_err(|e| SurfaceError::Malformed {
        name: name.to_string(),
        message: format!("{sector} matrix: {e}"),
    })?;
    if m.rows() != rows {
        return Err(SurfaceError::Malformed {
            name: name.to_string(),
            message: format!("{sector} matrix has {} rows, expected {rows}", m.rows()),
        });
    }
    Ok(m)
}

impl SurfaceGermPreset {
    fn from_raw(raw: RawPreset) -> Result<Self, SurfaceError> {
        let source = raw.cart_l.canonical_form();
        let target = raw.cart_gamma.canonical_form();
        let free = matrix_or_zeros(
            target.discrete_generators(),
            source.discrete_generators(),
            &raw.pullback.free,
            &raw.name,
            "free",
        )?;
        let units = matrix_or_zeros(
            target.unit_rank,
            source.unit_rank,
            &raw.pullback.units,
            &raw.name,
            "unit",
        )?;
        let additive_int = matrix_or_zeros(
            target.additive_rank,
            source.additive_rank,
            &raw.pullback.additive,
            &raw.name,
            "additive",
        )?;
        let additive = RatMatrix::from_row_vecs(
            additive_int.cols(),
            additive_int
                .to_row_vecs()
                .into_iter()
                .map(|r| r.into_iter().map(Rational::from_integer).collect())
                .collect(),
        )
        .expect("shape preserved");
        let pullback = SectorHom::new(
            source.clone(),
            target.clone(),
            free,
            units,
            additive,
            raw.pullback.w_image_rank,
        )?;
        let gamma_branches = raw.gamma_branches.unwrap_or(target.free_rank);
        if gamma_branches != target.free_rank {
            return Err(SurfaceError::Malformed {
                name: raw.name,
                message: format!(
                    "Cart Gamma has free rank {} but {gamma_branches} branches lie over the point",
                    target.free_rank
                ),
            });
        }
        Ok(SurfaceGermPreset {
            name: raw.name,
            description: raw.description,
            cart_l: source,
            cart_gamma: target,
            pullback,
            points_upstairs: raw.points_upstairs,
            gamma_branches,
            expected_apic: raw.expected_apic.map(|g| g.canonical_form()),
            citation: raw.citation,
            notes: raw.notes,
        })
    }

    /// Reads a germ in the catalog preset format.
    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        let raw: RawPreset = serde_json::from_str(text).map_err(|e| SurfaceError::Json(e.to_string()))?;
        Self::from_raw(raw)
    }
}

pub fn local_apic(germ: &SurfaceGermPreset) -> Result<StructuredGroup, SurfaceError> {
    Ok(germ.pullback.cokernel()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GermAssignment {
    pub point: String,
    pub preset: String,
    pub count: usize,
}

/// Global restriction data for one surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCatalogEntry {
    pub name: String,
    pub description: String,
    pub pic_s_free_rank: usize,
    pub pic_s_basis: Vec<String>,
    /// Rows present `Pic Gamma / Pic L` restricted to the part seen by the
    /// kernel; columns are the `Pic S` basis.
    pub restriction_matrix: IntMatrix,
    /// Per-row modulus, `0` for a torsion-free row.
    pub quotient_torsion: Vec<BigInt>,
    pub injectivity_holds: bool,
    pub injectivity_justification: String,
    pub hyperplane_class: Vec<BigInt>,
    pub expected_pic_x: StructuredGroup,
    pub expected_hyperplane_index: Option<u64>,
    pub ordinary: bool,
    pub germ_assignments: Vec<GermAssignment>,
    pub citation: Option<String>,
    pub notes: Vec<String>,
}

impl SurfaceCatalogEntry {
    fn from_raw(raw: RawEntry) -> Result<Self, SurfaceError> {
        let bad = |message: String| SurfaceError::Malformed {
            name: raw.name.clone(),
            message,
        };
        let n = raw.pic_s_free_rank;
        let restriction = matrix_or_zeros(
            raw.restriction_matrix.len(),
            n,
            &raw.restriction_matrix,
            &raw.name,
            "restriction",
        )?;
        if raw.quotient_torsion.len() != restriction.rows() {
            return Err(bad(format!(
                "{} moduli for {} restriction rows",
                raw.quotient_torsion.len(),
                restriction.rows()
            )));
        }
        if raw.quotient_torsion.iter().any(|&m| m < 0 || m == 1) {
            return Err(bad("moduli must be 0 or at least 2".into()));
        }
        if raw.hyperplane_class.len() != n {
            return Err(bad(format!(
                "hyperplane class has {} coordinates, expected {n}",
                raw.hyperplane_class.len()
            )));
        }
        Ok(SurfaceCatalogEntry {
            description: raw.description,
            pic_s_free_rank: n,
            pic_s_basis: raw.pic_s_basis,
            restriction_matrix: restriction,
            quotient_torsion: raw.quotient_torsion.iter().map(|&m| BigInt::from(m)).collect(),
            injectivity_holds: raw.injectivity_holds,
            injectivity_justification: raw.injectivity_justification,
            hyperplane_class: raw.hyperplane_class.iter().map(|&h| BigInt::from(h)).collect(),
            expected_pic_x: raw.expected_pic_x.canonical_form(),
            expected_hyperplane_index: raw.expected_hyperplane_index,
            ordinary: raw.ordinary,
            germ_assignments: raw
                .germ_assignments
                .into_iter()
                .map(|a| GermAssignment {
                    point: a.point,
                    preset: a.preset,
                    count: a.count,
                })
                .collect(),
            citation: raw.citation,
            notes: raw.notes,
            name: raw.name,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalApicRow {
    pub point: String,
    pub preset: String,
    pub count: usize,
    pub apic: StructuredGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalPicReport {
    pub surface: String,
    pub pic_x: StructuredGroup,
    /// Basis vectors of the kernel, in `Pic S` coordinates.
    #[serde(serialize_with = "numjson::big_matrix")]
    pub kernel_basis: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "numjson::big_vec")]
    pub hyperplane_class: Vec<BigInt>,
    /// Coordinates of the hyperplane class in the kernel basis.
    #[serde(serialize_with = "numjson::big_vec")]
    pub hyperplane_coordinates: Vec<BigInt>,
    /// Largest `n` with `H = n * v` for a kernel vector `v`; for a rank-one
    /// kernel this is the index of `Z.H`.
    #[serde(serialize_with = "numjson::big")]
    pub hyperplane_index: BigInt,
    pub ordinary: bool,
    pub local_apic_table: Vec<LocalApicRow>,
    pub injectivity_justification: String,
    pub notes: Vec<String>,
}

pub struct Catalog {
    presets: Vec<SurfaceGermPreset>,
    entries: Vec<SurfaceCatalogEntry>,
    citations: BTreeMap<String, String>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        let raw: RawCatalog = serde_json::from_str(text).map_err(|e| SurfaceError::Json(e.to_string()))?;
        let presets = raw
            .presets
            .into_iter()
            .map(SurfaceGermPreset::from_raw)
            .collect::<Result<Vec<_>, _>>()?;
        let entries = raw
            .entries
            .into_iter()
            .map(SurfaceCatalogEntry::from_raw)
            .collect::<Result<Vec<_>, _>>()?;
        let catalog = Catalog {
            presets,
            entries,
            citations: raw.citations,
        };
        for e in &catalog.entries {
            for a in &e.germ_assignments {
                catalog.preset(&a.preset)?;
            }
        }
        Ok(catalog)
    }

    /// The bundled catalog.
    pub fn bundled() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_json(CATALOG_JSON).expect("bundled catalog is valid"))
    }

    pub fn presets(&self) -> &[SurfaceGermPreset] {
        &self.presets
    }

    pub fn entries(&self) -> &[SurfaceCatalogEntry] {
        &self.entries
    }

    pub fn citations(&self) -> &BTreeMap<String, String> {
        &self.citations
    }

    pub fn citation(&self, rule: &str) -> Option<&str> {
        self.citations.get(rule).map(String::as_str)
    }

    pub fn preset_names(&self) -> Vec<String> {
        self.presets.iter().map(|p| p.name.clone()).collect()
    }

    pub fn entry_names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn preset(&self, name: &str) -> Result<&SurfaceGermPreset, SurfaceError> {
        self.presets
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| SurfaceError::UnknownPreset {
                name: name.to_string(),
                valid: self.preset_names(),
            })
    }

    pub fn entry(&self, name: &str) -> Result<&SurfaceCatalogEntry, SurfaceError> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| SurfaceError::UnknownEntry {
                name: name.to_string(),
                valid: self.entry_names(),
            })
    }

    pub fn local_table(&self, entry: &SurfaceCatalogEntry) -> Result<Vec<LocalApicRow>, SurfaceError> {
        entry
            .germ_assignments
            .iter()
            .map(|a| {
                Ok(LocalApicRow {
                    point: a.point.clone(),
                    preset: a.preset.clone(),
                    count: a.count,
                    apic: local_apic(self.preset(&a.preset)?)?,
                })
            })
            .collect()
    }

    pub fn pic_of_surface(&self, entry: &SurfaceCatalogEntry) -> Result<GlobalPicReport, SurfaceError> {
        pic_of_surface_with_table(entry, self.local_table(entry)?)
    }

    pub fn ordinary_singularity_report(&self, entry: &SurfaceCatalogEntry) -> Result<GlobalPicReport, SurfaceError> {
        if !entry.ordinary {
            return Err(SurfaceError::NotOrdinary(entry.name.clone()));
        }
        self.pic_of_surface(entry)
    }
}

/// Kernel of `v -> R v` where row `i` is read modulo `quotient_torsion[i]`
/// (exactly when the modulus is 0). Columns of the result are a Hermite basis.
pub fn restriction_kernel(restriction: &IntMatrix, moduli: &[BigInt]) -> IntMatrix {
    let n = restriction.cols();
    let torsion_rows: Vec<usize> = (0..moduli.len()).filter(|&i| !moduli[i].is_zero()).collect();
    let mut slack = IntMatrix::zeros(restriction.rows(), torsion_rows.len());
    for (k, &i) in torsion_rows.iter().enumerate() {
        slack.set(i, k, moduli[i].abs());
    }
    let lifted = restriction.hstack(&slack).expect("same row count");
    let kernel = integer_kernel_basis(&lifted);
    // The slack columns are independent, so projecting away their coordinates
    // is injective on the kernel.
    let mut projected = IntMatrix::zeros(n, kernel.cols());
    for c in 0..kernel.cols() {
        for r in 0..n {
            projected.set(r, c, kernel.get(r, c).clone());
        }
    }
    hermite_basis(&projected)
}

pub fn pic_of_surface(entry: &SurfaceCatalogEntry) -> Result<GlobalPicReport, SurfaceError> {
    let catalog = Catalog::bundled();
    let table = if entry.germ_assignments.iter().all(|a| catalog.preset(&a.preset).is_ok()) {
        catalog.local_table(entry)?
    } else {
        Vec::new()
    };
    pic_of_surface_with_table(entry, table)
}

fn pic_of_surface_with_table(
    entry: &SurfaceCatalogEntry,
    table: Vec<LocalApicRow>,
) -> Result<GlobalPicReport, SurfaceError> {
    if !entry.injectivity_holds {
        return Err(SurfaceError::InjectivityUnknown(entry.name.clone()));
    }
    let kernel = restriction_kernel(&entry.restriction_matrix, &entry.quotient_torsion);
    let coords = solve_integer(&kernel, &entry.hyperplane_class)
        .ok_or_else(|| SurfaceError::HyperplaneNotInKernel(entry.name.clone()))?;
    let index = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let kernel_basis = (0..kernel.cols()).map(|c| kernel.column(c)).collect();
    Ok(GlobalPicReport {
        surface: entry.name.clone(),
        pic_x: StructuredGroup::free(kernel.cols()),
        kernel_basis,
        hyperplane_class: entry.hyperplane_class.clone(),
        hyperplane_coordinates: coords,
        hyperplane_index: index,
        ordinary: entry.ordinary,
        local_apic_table: table,
        injectivity_justification: entry.injectivity_justification.clone(),
        notes: entry.notes.clone(),
    })
}
