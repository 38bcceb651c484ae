//! Picard groups of singular projective curves given by a dual-graph
//! configuration: components with their geometric genus, and singular points
//! with the components of their branches and local invariants.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{GroupError, SectorHom, StructuredGroup};
use crate::linalg::{IntMatrix, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("configuration has no components")]
    NoComponents,
    #[error("point {point} references component {component}, but there are only {count}")]
    UnknownComponent {
        point: usize,
        component: usize,
        count: usize,
    },
    #[error("point {point} has no branches")]
    NoBranches { point: usize },
    #[error("point {point} declares rho = {declared} but lists {listed} branches")]
    RhoMismatch {
        point: usize,
        declared: usize,
        listed: usize,
    },
    #[error("point {point}: delta {delta} < rho {rho} - 1")]
    DeltaTooSmall { point: usize, rho: usize, delta: u64 },
    #[error("the curve is not connected")]
    Disconnected,
    #[error("declared connected = {declared} but the incidence graph says {actual}")]
    ConnectedFlagMismatch { declared: bool, actual: bool },
    #[error("configuration is non-reduced; use the non-reduced computation")]
    NonReduced,
    #[error("configuration carries no non-reduced data")]
    MissingNonReducedData,
    #[error("invalid configuration JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub name: String,
    #[serde(default)]
    pub genus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularPointRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Component index of each local branch; repeats mark self-crossings.
    pub branches: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<usize>,
    pub delta: u64,
}

impl SingularPointRecord {
    pub fn rho(&self) -> usize {
        self.branches.len()
    }

    pub fn unit_contribution(&self) -> usize {
        self.rho() - 1
    }

    pub fn additive_contribution(&self) -> u64 {
        self.delta + 1 - self.rho() as u64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonReducedData {
    pub h1: u64,
    #[serde(default)]
    pub h0: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfiguration {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub components: Vec<Component>,
    #[serde(default)]
    pub points: Vec<SingularPointRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonreduced: Option<NonReducedData>,
}

impl CurveConfiguration {
    pub fn from_json(text: &str) -> Result<Self, CurveError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CurveError::Json(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// The reduced curve underlying a non-reduced configuration.
    pub fn reduction(&self) -> Self {
        CurveConfiguration {
            nonreduced: None,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), CurveError> {
        let count = self.components.len();
        if count == 0 {
            return Err(CurveError::NoComponents);
        }
        for (point, p) in self.points.iter().enumerate() {
            if p.branches.is_empty() {
                return Err(CurveError::NoBranches { point });
            }
            if let Some(&component) = p.branches.iter().find(|&&c| c >= count) {
                return Err(CurveError::UnknownComponent {
                    point,
                    component,
                    count,
                });
            }
            if let Some(declared) = p.rho {
                if declared != p.branches.len() {
                    return Err(CurveError::RhoMismatch {
                        point,
                        declared,
                        listed: p.branches.len(),
                    });
                }
            }
            if p.delta + 1 < p.rho() as u64 {
                return Err(CurveError::DeltaTooSmall {
                    point,
                    rho: p.rho(),
                    delta: p.delta,
                });
            }
        }
        let actual = self.is_connected();
        if let Some(declared) = self.connected {
            if declared != actual {
                return Err(CurveError::ConnectedFlagMismatch { declared, actual });
            }
        }
        Ok(())
    }

    /// Connectivity of the graph on components joined through shared points.
    pub fn is_connected(&self) -> bool {
        let n = self.components.len();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for p in &self.points {
            let first = p.branches[0];
            for &b in &p.branches[1..] {
                let (a, c) = (find(&mut parent, first), find(&mut parent, b));
                parent[a] = c;
            }
        }
        let roots: BTreeSet<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        roots.len() == 1
    }

    pub fn geometric_genus_total(&self) -> u64 {
        self.components.iter().map(|c| c.genus).sum()
    }

    pub fn delta_total(&self) -> u64 {
        self.points.iter().map(|p| p.delta).sum()
    }

    /// Rows: one per point per non-base branch; columns: components.
    pub fn connecting_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .points
            .iter()
            .flat_map(|p| {
                let base = p.branches[0];
                p.branches[1..].iter().map(move |&b| {
                    let mut row = vec![0i64; self.components.len()];
                    row[b] += 1;
                    row[base] -= 1;
                    row
                })
            })
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        IntMatrix::from_rows(self.components.len(), &refs)
    }
}

fn require_reduced_connected(cfg: &CurveConfiguration) -> Result<(), CurveError> {
    cfg.validate()?;
    if cfg.nonreduced.is_some() {
        return Err(CurveError::NonReduced);
    }
    if !cfg.is_connected() {
        return Err(CurveError::Disconnected);
    }
    Ok(())
}

/// `Pic C` as an extension of `Pic` of the normalization by the cokernel of
/// the global units of the normalization in the local unit quotients.
pub fn pic_of_reduced_curve(cfg: &CurveConfiguration) -> Result<StructuredGroup, CurveError> {
    require_reduced_connected(cfg)?;
    let n = cfg.components.len();
    let unit_target: usize = cfg.points.iter().map(|p| p.unit_contribution()).sum();
    let additive_target: u64 = cfg.points.iter().map(|p| p.additive_contribution()).sum();
    let source = StructuredGroup::trivial().with_units(n);
    let target = StructuredGroup::trivial()
        .with_units(unit_target)
        .with_additive(additive_target as usize);
    let hom = SectorHom::new(
        source,
        target,
        IntMatrix::zeros(0, 0),
        cfg.connecting_matrix(),
        RatMatrix::zeros(additive_target as usize, 0),
        0,
    )?;
    let local = hom.cokernel()?;
    let normalization = StructuredGroup::free(n).with_abelian(cfg.geometric_genus_total() as usize);
    Ok(normalization.direct_sum(&local))
}

pub fn arithmetic_genus(cfg: &CurveConfiguration) -> Result<u64, CurveError> {
    require_reduced_connected(cfg)?;
    Ok(cfg.geometric_genus_total() + cfg.delta_total() + 1 - cfg.components.len() as u64)
}

/// Adds the `k`-vector space `H^1` of the nilpotent ideal to the Picard group
/// of the reduction.
pub fn pic_of_nonreduced_curve(cfg: &CurveConfiguration) -> Result<StructuredGroup, CurveError> {
    cfg.validate()?;
    let data = cfg.nonreduced.ok_or(CurveError::MissingNonReducedData)?;
    let reduced = pic_of_reduced_curve(&cfg.reduction())?;
    Ok(reduced.direct_sum(&StructuredGroup::trivial().with_additive(data.h1 as usize)))
}

/// Dispatches on the presence of non-reduced data.
pub fn pic_of_curve(cfg: &CurveConfiguration) -> Result<StructuredGroup, CurveError> {
    if cfg.nonreduced.is_some() {
        pic_of_nonreduced_curve(cfg)
    } else {
        pic_of_reduced_curve(cfg)
    }
}

pub struct BundledCurve {
    pub name: &'static str,
    pub json: &'static str,
}

pub const BUNDLED_CURVES: &[BundledCurve] = &[
    BundledCurve {
        name: "two-lines",
        json: include_str!("../data/curves/two-lines.json"),
    },
    BundledCurve {
        name: "nodal-cubic",
        json: include_str!("../data/curves/nodal-cubic.json"),
    },
    BundledCurve {
        name: "cuspidal-cubic",
        json: include_str!("../data/curves/cuspidal-cubic.json"),
    },
    BundledCurve {
        name: "coplanar-concurrent-lines",
        json: include_str!("../data/curves/coplanar-concurrent-lines.json"),
    },
    BundledCurve {
        name: "triangle",
        json: include_str!("../data/curves/triangle.json"),
    },
    BundledCurve {
        name: "noncoplanar-concurrent-lines",
        json: include_str!("../data/curves/noncoplanar-concurrent-lines.json"),
    },
    BundledCurve {
        name: "smooth-plane-cubic",
        json: include_str!("../data/curves/smooth-plane-cubic.json"),
    },
    BundledCurve {
        name: "thick-line",
        json: include_str!("../data/curves/thick-line.json"),
    },
    BundledCurve {
        name: "triple-line-conductor",
        json: include_str!("../data/curves/triple-line-conductor.json"),
    },
];

pub fn bundled_curve(name: &str) -> Option<CurveConfiguration> {
    BUNDLED_CURVES
        .iter()
        .find(|c| c.name == name)
        .map(|c| CurveConfiguration::from_json(c.json).expect("bundled configuration is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(components: &[u64], points: &[(&[usize], u64)]) -> CurveConfiguration {
        CurveConfiguration {
            name: None,
            components: components
                .iter()
                .enumerate()
                .map(|(i, &g)| Component {
                    name: format!("C{i}"),
                    genus: g,
                })
                .collect(),
            points: points
                .iter()
                .map(|(b, d)| SingularPointRecord {
                    name: None,
                    branches: b.to_vec(),
                    rho: None,
                    delta: *d,
                })
                .collect(),
            connected: None,
            nonreduced: None,
        }
    }

    #[test]
    fn basic_configurations() {
        let z = StructuredGroup::free;
        assert_eq!(pic_of_reduced_curve(&cfg(&[0, 0], &[(&[0, 1], 1)])).unwrap(), z(2));
        assert_eq!(
            pic_of_reduced_curve(&cfg(&[0], &[(&[0, 0], 1)])).unwrap(),
            z(1).with_units(1)
        );
        assert_eq!(
            pic_of_reduced_curve(&cfg(&[0], &[(&[0], 1)])).unwrap(),
            z(1).with_additive(1)
        );
        let tri = cfg(&[0, 0, 0], &[(&[0, 1], 1), (&[1, 2], 1), (&[2, 0], 1)]);
        assert_eq!(pic_of_reduced_curve(&tri).unwrap(), z(3).with_units(1));
        assert_eq!(arithmetic_genus(&tri).unwrap(), 1);
    }

    #[test]
    fn elliptic_component() {
        let e = cfg(&[1], &[]);
        assert_eq!(
            pic_of_reduced_curve(&e).unwrap(),
            StructuredGroup::free(1).with_abelian(1)
        );
        assert_eq!(arithmetic_genus(&e).unwrap(), 1);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(cfg(&[], &[]).validate().unwrap_err(), CurveError::NoComponents);
        assert!(matches!(
            cfg(&[0], &[(&[0, 3], 1)]).validate(),
            Err(CurveError::UnknownComponent { component: 3, .. })
        ));
        assert!(matches!(
            cfg(&[0, 0, 0], &[(&[0, 1, 2], 1)]).validate(),
            Err(CurveError::DeltaTooSmall { .. })
        ));
        let two = cfg(&[0, 0], &[]);
        assert_eq!(pic_of_reduced_curve(&two).unwrap_err(), CurveError::Disconnected);
        let mut flagged = cfg(&[0, 0], &[(&[0, 1], 1)]);
        flagged.connected = Some(false);
        assert!(matches!(
            flagged.validate(),
            Err(CurveError::ConnectedFlagMismatch { .. })
        ));
    }

    #[test]
    fn bundled_files_load() {
        for c in BUNDLED_CURVES {
            let cfg = bundled_curve(c.name).unwrap();
            assert!(pic_of_curve(&cfg).is_ok(), "{}", c.name);
        }
    }
}
