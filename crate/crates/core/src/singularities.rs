//! Branch count, delta invariant and local Cartier groups of curve
//! singularities.
//!
//! Plane germs are resolved by repeated point blow-ups; the Newton polygon
//! oracle gives an independent cross-check on convenient, nondegenerate germs.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::groups::StructuredGroup;
use crate::linalg::Rational;
use crate::poly::{parse_poly_with_cap, Poly2, PolyError, UPoly, DEFAULT_DEGREE_CAP};

/// Blow-up depth at which resolution gives up.
pub const MAX_BLOWUP_DEPTH: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the polynomial is identically zero")]
    ZeroPolynomial,
    #[error("the curve does not pass through the origin")]
    NotAtOrigin,
    #[error("the polynomial has a repeated factor, so the germ is not reduced")]
    NotReduced,
    #[error("an infinitely near point at depth {depth} lies over an irrational root of multiplicity {multiplicity}")]
    IrrationalInfinitelyNearPoint { depth: usize, multiplicity: usize },
    #[error("blow-up depth exceeded {0}")]
    DepthExceeded(usize),
    #[error("edge from {from:?} to {to:?} of the Newton polygon has a non-squarefree edge polynomial")]
    DegenerateNewtonBoundary { from: (u32, u32), to: (u32, u32) },
    #[error("the Newton polygon does not meet both axes")]
    NotConvenient,
    #[error("invalid invariants: delta {delta} < rho {rho} - 1")]
    InvalidInvariants { rho: u64, delta: u64 },
    #[error("rho must be at least 1")]
    ZeroBranches,
}

/// A reduced plane curve germ at the origin, given by a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPlaneCurve {
    poly: Poly2,
}

impl LocalPlaneCurve {
    pub fn new(poly: Poly2) -> Result<Self, SingularityError> {
        if poly.is_zero() {
            return Err(SingularityError::ZeroPolynomial);
        }
        if !poly.constant_term().is_zero() {
            return Err(SingularityError::NotAtOrigin);
        }
        if !poly.is_squarefree() {
            return Err(SingularityError::NotReduced);
        }
        Ok(LocalPlaneCurve { poly })
    }

    pub fn parse(input: &str) -> Result<Self, SingularityError> {
        Self::parse_with_cap(input, DEFAULT_DEGREE_CAP)
    }

    pub fn parse_with_cap(input: &str, cap: u32) -> Result<Self, SingularityError> {
        Self::new(parse_poly_with_cap(input, cap)?)
    }

    pub fn poly(&self) -> &Poly2 {
        &self.poly
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub multiplicity: u32,
    /// Number of conjugate points this node stands for.
    pub cluster_degree: u32,
    pub is_smooth_leaf: bool,
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    fn leaf(cluster_degree: u32) -> Self {
        TreeNode {
            multiplicity: 1,
            cluster_degree,
            is_smooth_leaf: true,
            children: Vec::new(),
        }
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a TreeNode>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }
}

/// Infinitely near points of a plane germ, root first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinitelyNearTree {
    pub root: TreeNode,
}

impl InfinitelyNearTree {
    pub fn nodes(&self) -> Vec<&TreeNode> {
        let mut out = Vec::new();
        self.root.walk(&mut out);
        out
    }

    pub fn delta(&self) -> u64 {
        self.nodes()
            .iter()
            .map(|n| {
                let r = n.multiplicity as u64;
                n.cluster_degree as u64 * r * (r.saturating_sub(1)) / 2
            })
            .sum()
    }

    pub fn rho(&self) -> u64 {
        self.nodes()
            .iter()
            .filter(|n| n.is_smooth_leaf)
            .map(|n| n.cluster_degree as u64)
            .sum()
    }

    /// `(r, e)` pairs in preorder.
    pub fn multiplicity_sequence(&self) -> Vec<(u32, u32)> {
        self.nodes()
            .iter()
            .map(|n| (n.multiplicity, n.cluster_degree))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityInvariants {
    pub rho: u64,
    pub delta: u64,
    pub multiplicity_sequence: Vec<(u32, u32)>,
}

impl SingularityInvariants {
    /// Invariants known without a resolution tree.
    pub fn from_counts(rho: u64, delta: u64) -> Self {
        SingularityInvariants {
            rho,
            delta,
            multiplicity_sequence: Vec::new(),
        }
    }
}

pub fn multiplicity(f: &LocalPlaneCurve) -> u32 {
    f.poly.order().expect("nonzero polynomial")
}

/// `f_r(1, t)` for the lowest form `f_r` of degree `r`.
fn tangent_polynomial(f: &Poly2, r: u32) -> UPoly {
    let mut coeffs = vec![Rational::zero(); r as usize + 1];
    for j in 0..=r {
        coeffs[j as usize] = f.coeff(r - j, j);
    }
    UPoly::new(coeffs)
}

pub fn blowup_resolve(f: &LocalPlaneCurve) -> Result<InfinitelyNearTree, SingularityError> {
    let root = resolve_point(&f.poly, 0, 0)?;
    Ok(InfinitelyNearTree { root })
}

/// Resolves the germ of `f` at the origin. `contact` is the intersection
/// multiplicity with the most recent exceptional line (0 at the start).
fn resolve_point(f: &Poly2, contact: usize, depth: usize) -> Result<TreeNode, SingularityError> {
    if depth > MAX_BLOWUP_DEPTH {
        return Err(SingularityError::DepthExceeded(MAX_BLOWUP_DEPTH));
    }
    let r = f.order().expect("strict transform is nonzero");
    if r == 1 && contact <= 1 {
        return Ok(TreeNode::leaf(1));
    }
    let g = tangent_polynomial(f, r);
    let mut children = Vec::new();

    // Chart y = x*y1: points (0, c) for rational roots c of f_r(1, t).
    let mut rest = g.clone();
    let lifted = f.map_exponents(|i, j| (i + j - r, j));
    for (c, m) in g.rational_roots() {
        let lin = UPoly::linear_root(&c);
        for _ in 0..m {
            rest = rest.exact_div(&lin);
        }
        children.push(resolve_point(&lifted.shift_y(&c), m, depth + 1)?);
    }

    // Irrational roots: simple ones are transverse smooth points, counted as a
    // cluster; repeated ones would need arithmetic in an extension field.
    for (k, part) in rest.squarefree_decomposition().iter().enumerate() {
        let deg = part.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        if k > 0 {
            return Err(SingularityError::IrrationalInfinitelyNearPoint {
                depth: depth + 1,
                multiplicity: k + 1,
            });
        }
        children.push(TreeNode::leaf(deg as u32));
    }

    // Chart x = x1*y: the direction x = 0.
    let at_infinity = r as usize - g.degree().unwrap_or(0);
    if at_infinity > 0 {
        let lifted = f.map_exponents(|i, j| (i, i + j - r));
        children.push(resolve_point(&lifted, at_infinity, depth + 1)?);
    }

    Ok(TreeNode {
        multiplicity: r,
        cluster_degree: 1,
        is_smooth_leaf: false,
        children,
    })
}

pub fn invariants_by_blowup(f: &LocalPlaneCurve) -> Result<SingularityInvariants, SingularityError> {
    let tree = blowup_resolve(f)?;
    Ok(SingularityInvariants {
        rho: tree.rho(),
        delta: tree.delta(),
        multiplicity_sequence: tree.multiplicity_sequence(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonInvariants {
    pub mu: u64,
    pub rho: u64,
    pub delta: u64,
}

/// Kouchnirenko's Milnor number and the edge-length branch count of a
/// convenient Newton-nondegenerate germ.
pub fn newton_invariants_oracle(f: &LocalPlaneCurve) -> Result<NewtonInvariants, SingularityError> {
    let p = &f.poly;
    let a = p
        .terms()
        .filter(|((_, j), _)| *j == 0)
        .map(|((i, _), _)| *i)
        .min()
        .ok_or(SingularityError::NotConvenient)?;
    let b = p
        .terms()
        .filter(|((i, _), _)| *i == 0)
        .map(|((_, j), _)| *j)
        .min()
        .ok_or(SingularityError::NotConvenient)?;

    // Points outside the box [0,a]x[0,b] are dominated by an axis vertex.
    let mut pts: Vec<(i64, i64)> = p
        .terms()
        .map(|((i, j), _)| (*i as i64, *j as i64))
        .filter(|&(i, j)| i <= a as i64 && j <= b as i64)
        .collect();
    pts.sort();
    pts.dedup_by_key(|p| p.0);

    // Lower convex hull, left to right.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (o, m) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (m.0 - o.0) * (pt.1 - o.1) - (m.1 - o.1) * (pt.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let mut twice_area: i64 = 0;
    let mut rho: u64 = 0;
    for w in hull.windows(2) {
        let ((i1, j1), (i2, j2)) = (w[0], w[1]);
        twice_area += (i2 - i1) * (j1 + j2);
        let (di, dj) = (i2 - i1, j1 - j2);
        let len = num_integer::gcd(di, dj);
        let (si, sj) = (di / len, dj / len);
        let edge = UPoly::new(
            (0..=len)
                .map(|k| p.coeff((i1 + k * si) as u32, (j1 - k * sj) as u32))
                .collect(),
        );
        if !edge.is_squarefree() {
            return Err(SingularityError::DegenerateNewtonBoundary {
                from: (i1 as u32, j1 as u32),
                to: (i2 as u32, j2 as u32),
            });
        }
        rho += len as u64;
    }
    let mu = twice_area - a as i64 - b as i64 + 1;
    debug_assert!(mu >= 0);
    let mu = mu as u64;
    Ok(NewtonInvariants {
        mu,
        rho,
        delta: (mu + rho - 1) / 2,
    })
}

/// `Z^rho (+) (k*)^(rho-1) (+) (k+)^(delta-rho+1)`.
pub fn cart_group(inv: &SingularityInvariants) -> Result<StructuredGroup, SingularityError> {
    cart_group_from_counts(inv.rho, inv.delta)
}

pub fn cart_group_from_counts(rho: u64, delta: u64) -> Result<StructuredGroup, SingularityError> {
    if rho == 0 {
        return Err(SingularityError::ZeroBranches);
    }
    if delta + 1 < rho {
        return Err(SingularityError::InvalidInvariants { rho, delta });
    }
    Ok(StructuredGroup::free(rho as usize)
        .with_units(rho as usize - 1)
        .with_additive((delta + 1 - rho) as usize))
}

/// Adds the nilpotent contribution, a direct sum of copies of `W`.
pub fn cart_group_nonreduced(reduced: &StructuredGroup, nilpotent_w_rank: usize) -> StructuredGroup {
    let mut g = reduced.canonical_form();
    g.w_rank += nilpotent_w_rank;
    g
}

/// Germs whose invariants are not computed from a plane equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityPreset {
    pub name: &'static str,
    pub description: &'static str,
    pub rho: u64,
    pub delta: u64,
    pub nilpotent_w_rank: usize,
}

impl SingularityPreset {
    pub fn invariants(&self) -> SingularityInvariants {
        SingularityInvariants::from_counts(self.rho, self.delta)
    }

    pub fn cart_group(&self) -> StructuredGroup {
        let reduced = cart_group_from_counts(self.rho, self.delta).expect("preset data is valid");
        cart_group_nonreduced(&reduced, self.nilpotent_w_rank)
    }
}

pub const SINGULARITY_PRESETS: &[SingularityPreset] = &[
    SingularityPreset {
        name: "nonplanar-triple-point",
        description: "three coordinate axes in 3-space",
        rho: 3,
        delta: 2,
        nilpotent_w_rank: 0,
    },
    SingularityPreset {
        name: "planar-double-line",
        description: "point of the double line y^2 = 0 in the plane",
        rho: 1,
        delta: 0,
        nilpotent_w_rank: 1,
    },
];

pub fn singularity_preset(name: &str) -> Option<&'static SingularityPreset> {
    SINGULARITY_PRESETS.iter().find(|p| p.name == name)
}

/// Result of analyzing a plane germ given as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub polynomial: String,
    pub multiplicity: u32,
    pub rho: u64,
    pub delta: u64,
    pub multiplicity_sequence: Vec<(u32, u32)>,
    pub cart: StructuredGroup,
    pub newton: Option<NewtonInvariants>,
}

pub fn analyze(f: &LocalPlaneCurve) -> Result<SingularityReport, SingularityError> {
    let inv = invariants_by_blowup(f)?;
    let cart = cart_group(&inv)?;
    Ok(SingularityReport {
        polynomial: f.poly.to_string(),
        multiplicity: multiplicity(f),
        rho: inv.rho,
        delta: inv.delta,
        multiplicity_sequence: inv.multiplicity_sequence,
        cart,
        newton: newton_invariants_oracle(f).ok(),
    })
}

/// `x^a - c y^b` style helper used by tests and the oracle suite.
pub fn binomial(a: u32, c: Rational, b: u32) -> Poly2 {
    Poly2::monomial(Rational::one(), a, 0).sub(&Poly2::monomial(c, 0, b))
}
