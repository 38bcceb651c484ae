//! Tests for smooth space curves that are set-theoretic complete
//! intersections: local torsion tests, the degree/genus bounds for self-linked
//! curves, the `(d, g)` screen, and three exact searches on particular
//! surfaces.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::groups::{ElementOrder, GroupElement, StructuredGroup, Torsion, UnitValue};
use crate::linalg::{integer_kernel_basis, IntMatrix};

pub const FIRST_BOUND: &str = "thm7.8-first-bound";
pub const SECOND_BOUND: &str = "thm7.8-second-bound";
pub const CONE_GENUS: &str = "cone-genus";
pub const JAFFE_CUBIC: &str = "jaffe-cubic";
pub const PARITY_8_4_4: &str = "parity-8-4-4";
pub const PLANE_GENUS: &str = "plane-genus";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StciError {
    #[error("m*n = {m}*{n} is not 2d = {}", 2 * d)]
    BezoutMismatch { d: u64, m: u64, n: u64 },
    #[error("degree must be at least {min}, got {d}")]
    DegreeTooSmall { d: u64, min: u64 },
    #[error("invalid lambda {0}: must be nonzero and different from +-i")]
    InvalidLambda(String),
    #[error("root of unity order must be at least 2 (order 1 forces lambda = +-i)")]
    InvalidRootOrder,
    #[error("torsion of a class with abelian-variety coordinates cannot be decided")]
    UnknownTorsion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCandidate {
    pub d: u64,
    pub g: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SurfacePair {
    pub m: u64,
    pub n: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Feasible,
    Excluded,
    Unresolved,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Feasible => "feasible",
            Status::Excluded => "excluded",
            Status::Unresolved => "unresolved",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub code: &'static str,
    pub m: u64,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub reasons: Vec<Reason>,
    pub surviving_pairs: Vec<SurfacePair>,
}

impl Verdict {
    pub fn has_reason(&self, code: &str) -> bool {
        self.reasons.iter().any(|r| r.code == code)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalTest {
    pub admissible: bool,
    pub required_order: ElementOrder,
}

/// A smooth curve through a singular point can be a set-theoretic complete
/// intersection only if its local class is a nonzero torsion element.
pub fn local_stci_test(e: &GroupElement) -> Result<LocalTest, StciError> {
    match e.is_torsion() {
        Torsion::Unknown => Err(StciError::UnknownTorsion),
        Torsion::NotTorsion => Ok(LocalTest {
            admissible: false,
            required_order: ElementOrder::Infinite,
        }),
        Torsion::Torsion => Ok(LocalTest {
            admissible: !e.is_identity(),
            required_order: e.order(),
        }),
    }
}

/// Such a curve can only pass through points with a single point of the
/// normalization above them.
pub fn unibranch_filter(points_upstairs: usize) -> bool {
    points_upstairs == 1
}

/// `d(m + n - 7) <= 4g - 4`.
pub fn first_bound_holds(c: CurveCandidate, p: SurfacePair) -> bool {
    let lhs = c.d as i128 * (p.m as i128 + p.n as i128 - 7);
    lhs <= 4 * c.g as i128 - 4
}

/// `g >= (sqrt 2 / 2) d^(3/2) - (7/4) d + 1`, squared out:
/// `4g - 4 + 7d >= 0` and `(4g - 4 + 7d)^2 >= 8 d^3`.
pub fn second_bound_holds(c: CurveCandidate) -> bool {
    let lhs = BigInt::from(4 * c.g as i128 - 4 + 7 * c.d as i128);
    if lhs.is_negative() {
        return false;
    }
    let d = BigInt::from(c.d);
    &lhs * &lhs >= BigInt::from(8) * &d * &d * &d
}

pub fn self_linked_bound_check(c: CurveCandidate, p: SurfacePair) -> Result<Verdict, StciError> {
    if p.m * p.n != 2 * c.d {
        return Err(StciError::BezoutMismatch { d: c.d, m: p.m, n: p.n });
    }
    let mut reasons = Vec::new();
    if !first_bound_holds(c, p) {
        reasons.push(Reason {
            code: FIRST_BOUND,
            m: p.m,
            n: p.n,
        });
    }
    if !second_bound_holds(c) {
        reasons.push(Reason {
            code: SECOND_BOUND,
            m: p.m,
            n: p.n,
        });
    }
    Ok(if reasons.is_empty() {
        Verdict {
            status: Status::Feasible,
            reasons,
            surviving_pairs: vec![p],
        }
    } else {
        Verdict {
            status: Status::Excluded,
            reasons,
            surviving_pairs: Vec::new(),
        }
    })
}

/// Genus of a smooth curve of degree `d` on a quadric cone.
pub fn quadric_cone_genus(d: u64) -> u64 {
    let a = d / 2;
    if d.is_multiple_of(2) {
        (a - 1) * (a - 1)
    } else {
        a * (a - 1)
    }
}

pub fn plane_curve_genus(d: u64) -> u64 {
    (d - 1) * (d - 2) / 2
}

/// Factor pairs `m <= n` with `m n = 2d`.
pub fn surface_pairs(d: u64) -> Vec<SurfacePair> {
    let two_d = 2 * d;
    (1..)
        .take_while(|m| m * m <= two_d)
        .filter(|m| two_d.is_multiple_of(*m))
        .map(|m| SurfacePair { m, n: two_d / m })
        .collect()
}

/// Reasons the pair `p` rules out `c`; empty when `c` survives.
fn pair_reasons(c: CurveCandidate, p: SurfacePair) -> Vec<Reason> {
    let (m, n) = (p.m, p.n);
    let reason = |code| vec![Reason { code, m, n }];
    if m == 1 {
        return if c.g == plane_curve_genus(c.d) {
            Vec::new()
        } else {
            reason(PLANE_GENUS)
        };
    }
    if m == 2 {
        return if c.g == quadric_cone_genus(c.d) {
            Vec::new()
        } else {
            reason(CONE_GENUS)
        };
    }
    if m == 3 {
        return if c.g + 3 >= c.d {
            Vec::new()
        } else {
            reason(JAFFE_CUBIC)
        };
    }
    let mut out = Vec::new();
    if !first_bound_holds(c, p) {
        out.push(Reason {
            code: FIRST_BOUND,
            m,
            n,
        });
    }
    if !second_bound_holds(c) {
        out.push(Reason {
            code: SECOND_BOUND,
            m,
            n,
        });
    }
    if c.d == 8 && m == 4 && n == 4 && c.g.is_multiple_of(2) {
        out.push(Reason {
            code: PARITY_8_4_4,
            m,
            n,
        });
    }
    out
}

/// Verdict for one candidate, aggregated over all factor pairs of `2d`.
pub fn classify(c: CurveCandidate) -> Verdict {
    let mut reasons = Vec::new();
    let mut surviving = Vec::new();
    for p in surface_pairs(c.d) {
        let r = pair_reasons(c, p);
        if r.is_empty() {
            surviving.push(p);
        } else {
            reasons.extend(r);
        }
    }
    let status = if surviving.is_empty() {
        Status::Excluded
    } else if c.g + 3 < c.d {
        Status::Unresolved
    } else {
        Status::Feasible
    };
    Verdict {
        status,
        reasons,
        surviving_pairs: surviving,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenRow {
    pub d: u64,
    pub g: u64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// All `(d, g)` with `3 <= d <= d_max` and `0 <= g <= (d-1)(d-2)/2`, ordered
/// by `(d, g)`.
pub fn screen(d_max: u64) -> Result<Vec<ScreenRow>, StciError> {
    if d_max < 3 {
        return Err(StciError::DegreeTooSmall { d: d_max, min: 3 });
    }
    Ok((3..=d_max)
        .flat_map(|d| {
            (0..=plane_curve_genus(d)).map(move |g| ScreenRow {
                d,
                g,
                verdict: classify(CurveCandidate { d, g }),
            })
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionProbe {
    pub lambda: UnitValue,
    pub mu: UnitValue,
    pub order: ElementOrder,
    pub admissible: bool,
}

fn is_plus_minus_i(u: &UnitValue) -> bool {
    matches!(u, UnitValue::RootOfUnity { order: 4, .. })
}

/// The local class of the twisted cubic `C_lambda` at the special point has
/// zero `Z` part and `k*` part `mu = -lambda^2`.
pub fn ruled_cubic_mu(lambda: &UnitValue) -> Result<TorsionProbe, StciError> {
    if is_plus_minus_i(lambda) {
        return Err(StciError::InvalidLambda(lambda.to_string()));
    }
    if let UnitValue::Rational(q) = lambda {
        if q.is_zero() {
            return Err(StciError::InvalidLambda(lambda.to_string()));
        }
    }
    let mu = lambda.pow(&BigInt::from(2)).neg();
    let group = StructuredGroup::free(1).with_units(1);
    let class = GroupElement::new(&group, vec![BigInt::zero()], vec![], vec![mu], vec![], vec![], vec![])
        .expect("shape matches");
    let test = local_stci_test(&class)?;
    let mu = class.units[0].clone();
    Ok(TorsionProbe {
        lambda: lambda.clone(),
        mu,
        order: test.required_order,
        admissible: test.admissible,
    })
}

/// A `lambda` with `-lambda^2` a primitive `n`-th root of unity, namely
/// `exp(2 pi i (n + 2) / (4 n))`.
pub fn lambda_for_mu_order(n: u64) -> Result<UnitValue, StciError> {
    if n < 2 {
        return Err(StciError::InvalidRootOrder);
    }
    Ok(UnitValue::root_of_unity(n + 2, 4 * n).expect("order >= 1"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConicSearch {
    /// Lines as `(a, b, c)` with `a t + b u + c v = 0`.
    pub lines: Vec<[i64; 3]>,
    pub points_per_line: Vec<usize>,
    pub conic_space_dimension: usize,
    pub smooth_conic_exists: bool,
}

pub const STEINER_RAMIFICATION_POINTS: [[i64; 3]; 6] =
    [[0, 1, 1], [0, 1, -1], [1, 0, 1], [1, 0, -1], [1, 1, 0], [1, -1, 0]];

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Primitive representative with first nonzero coordinate positive.
fn normalize(v: [i64; 3]) -> [i64; 3] {
    let g = v.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        return v;
    }
    let mut w = v.map(|x| x / g);
    if w.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        w = w.map(|x| -x);
    }
    w
}

/// Lines through two of the six ramification points, other than the sides
/// of the triangle `t u v = 0`, that meet each side only at ramification
/// points; and whether a smooth conic passes through all six points.
pub fn steiner_conic_search() -> ConicSearch {
    let pts = STEINER_RAMIFICATION_POINTS;
    let ramification: BTreeSet<[i64; 3]> = pts.iter().map(|p| normalize(*p)).collect();
    let sides = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut lines = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let line = normalize(cross(pts[i], pts[j]));
            if sides.contains(&line) {
                continue;
            }
            let clean = sides.iter().all(|s| ramification.contains(&normalize(cross(line, *s))));
            if clean {
                lines.insert(line);
            }
        }
    }
    let lines: Vec<[i64; 3]> = lines.into_iter().collect();
    let points_per_line = lines
        .iter()
        .map(|l| pts.iter().filter(|p| dot(*l, **p) == 0).count())
        .collect();

    // Conics a t^2 + b u^2 + c v^2 + d tu + e tv + f uv through the points.
    let rows: Vec<Vec<i64>> = pts
        .iter()
        .map(|&[t, u, v]| vec![t * t, u * u, v * v, t * u, t * v, u * v])
        .collect();
    let system = IntMatrix::from_rows(6, &rows);
    let kernel = integer_kernel_basis(&system);
    let dim = kernel.cols();
    let smooth = dim > 0 && some_member_is_smooth(&kernel);
    ConicSearch {
        lines,
        points_per_line,
        conic_space_dimension: dim,
        smooth_conic_exists: smooth,
    }
}

/// The discriminant is a cubic form on the kernel; a nonzero cubic cannot
/// vanish on the whole grid `{0,1,2,3}^k`.
fn some_member_is_smooth(kernel: &IntMatrix) -> bool {
    let k = kernel.cols();
    let total = 4usize.pow(k as u32);
    (0..total).any(|mut code| {
        let mut coeffs = vec![BigInt::zero(); 6];
        for c in 0..k {
            let w = BigInt::from(code % 4);
            code /= 4;
            for (r, slot) in coeffs.iter_mut().enumerate() {
                *slot += &w * kernel.get(r, c);
            }
        }
        let two = BigInt::from(2);
        let [a, b, c, d, e, f] = [0, 1, 2, 3, 4, 5].map(|i| coeffs[i].clone());
        let m = IntMatrix::from_row_vecs(
            3,
            vec![
                vec![&two * &a, d.clone(), e.clone()],
                vec![d, &two * &b, f.clone()],
                vec![e, f, &two * &c],
            ],
        )
        .expect("3x3");
        !m.determinant().expect("square").is_zero()
    })
}

pub const RULED_CUBIC_TRANSVERSAL_BOUND: i64 = 2;

/// Classes `(a, b)` on the cubic scroll with `a = 2b` (a multiple of
/// `H = (2, 1)` up to torsion) and `0 < a = C'.Gamma <= bound`.
pub fn ruled_cubic_class_search() -> Vec<(i64, i64)> {
    ruled_cubic_class_search_with_bound(RULED_CUBIC_TRANSVERSAL_BOUND)
}

pub fn ruled_cubic_class_search_with_bound(bound: i64) -> Vec<(i64, i64)> {
    (1..).map(|b| (2 * b, b)).take_while(|&(a, _)| a <= bound).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    fn c(d: u64, g: u64) -> CurveCandidate {
        CurveCandidate { d, g }
    }

    fn p(m: u64, n: u64) -> SurfacePair {
        SurfacePair { m, n }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(
            self_linked_bound_check(c(8, 5), p(4, 4)).unwrap().status,
            Status::Feasible
        );
        assert_eq!(
            self_linked_bound_check(c(7, 6), p(2, 7)).unwrap().status,
            Status::Feasible
        );
        let v = self_linked_bound_check(c(8, 2), p(4, 4)).unwrap();
        assert_eq!(v.status, Status::Excluded);
        assert!(v.has_reason(FIRST_BOUND));
        assert!(matches!(
            self_linked_bound_check(c(8, 5), p(3, 4)),
            Err(StciError::BezoutMismatch { .. })
        ));
    }

    #[test]
    fn boundary_is_exact() {
        // d = 10, g = 6, m = 4, n = 5: 20 <= 20 and 90^2 = 8100 >= 8000.
        assert!(first_bound_holds(c(10, 6), p(4, 5)));
        assert!(second_bound_holds(c(10, 6)));
        assert!(!first_bound_holds(c(10, 5), p(4, 5)));
        // d = 8: (4g + 52)^2 >= 4096 iff g >= 3.
        assert!(second_bound_holds(c(8, 3)));
        assert!(!second_bound_holds(c(8, 2)));
    }

    #[test]
    fn cone_genus() {
        assert_eq!(quadric_cone_genus(6), 4);
        assert_eq!(quadric_cone_genus(3), 0);
        assert_eq!(quadric_cone_genus(5), 2);
        assert_eq!(quadric_cone_genus(4), 1);
        assert_eq!(quadric_cone_genus(7), 6);
        assert_eq!(quadric_cone_genus(8), 9);
    }

    #[test]
    fn pairs() {
        assert_eq!(surface_pairs(8), vec![p(1, 16), p(2, 8), p(4, 4)]);
        assert_eq!(surface_pairs(9), vec![p(1, 18), p(2, 9), p(3, 6)]);
    }

    #[test]
    fn screen_to_ten() {
        let rows = screen(10).unwrap();
        let low: Vec<(u64, u64, Status)> = rows
            .iter()
            .filter(|r| r.g + 3 < r.d && r.verdict.status != Status::Excluded)
            .map(|r| (r.d, r.g, r.verdict.status))
            .collect();
        assert_eq!(low, vec![(8, 3, Status::Unresolved), (10, 6, Status::Unresolved)]);
        let v84 = classify(c(8, 4));
        assert_eq!(v84.status, Status::Excluded);
        assert!(v84.has_reason(PARITY_8_4_4));
    }

    #[test]
    fn known_list_survives() {
        for (d, g) in [(3, 0), (4, 1), (5, 2), (6, 3), (6, 4), (7, 6), (8, 5), (8, 7), (8, 9)] {
            assert_eq!(classify(c(d, g)).status, Status::Feasible, "({d}, {g})");
        }
    }

    #[test]
    fn mu_probe() {
        let one = UnitValue::integer(1).unwrap();
        let probe = ruled_cubic_mu(&one).unwrap();
        assert_eq!(probe.mu.to_string(), "-1");
        assert_eq!(probe.order, ElementOrder::Finite(2.into()));
        assert!(probe.admissible);
        let two = ruled_cubic_mu(&UnitValue::integer(2).unwrap()).unwrap();
        assert_eq!(two.mu.to_string(), "-4");
        assert_eq!(two.order, ElementOrder::Infinite);
        assert!(!two.admissible);
        for n in 2..12 {
            let lambda = lambda_for_mu_order(n).unwrap();
            let probe = ruled_cubic_mu(&lambda).unwrap();
            assert_eq!(probe.order, ElementOrder::Finite(n.into()), "n = {n}");
        }
        assert!(matches!(
            ruled_cubic_mu(&UnitValue::root_of_unity(1, 4).unwrap()),
            Err(StciError::InvalidLambda(_))
        ));
        assert_eq!(lambda_for_mu_order(1), Err(StciError::InvalidRootOrder));
        let half = UnitValue::rational(Rational::new(1.into(), 2.into())).unwrap();
        assert!(!ruled_cubic_mu(&half).unwrap().admissible);
    }

    #[test]
    fn steiner_search() {
        let s = steiner_conic_search();
        assert_eq!(s.lines.len(), 4);
        assert!(s.points_per_line.iter().all(|&k| k == 3));
        assert!(s.lines.contains(&[1, 1, 1]));
        assert!(!s.smooth_conic_exists);
    }

    #[test]
    fn class_search() {
        assert_eq!(ruled_cubic_class_search(), vec![(2, 1)]);
        assert_eq!(ruled_cubic_class_search_with_bound(4), vec![(2, 1), (4, 2)]);
        assert!(ruled_cubic_class_search_with_bound(0).is_empty());
    }

    #[test]
    fn local_tests() {
        let z2 = StructuredGroup::cyclic(2);
        let e = GroupElement::new(&z2, vec![], vec![1.into()], vec![], vec![], vec![], vec![]).unwrap();
        let t = local_stci_test(&e).unwrap();
        assert!(t.admissible);
        assert_eq!(t.required_order, ElementOrder::Finite(2.into()));
        let z = StructuredGroup::free(1);
        let e = GroupElement::new(&z, vec![1.into()], vec![], vec![], vec![], vec![], vec![]).unwrap();
        assert!(!local_stci_test(&e).unwrap().admissible);
        assert!(!local_stci_test(&GroupElement::identity(&z2)).unwrap().admissible);
        assert!(unibranch_filter(1));
        assert!(!unibranch_filter(2));
        assert!(!unibranch_filter(3));
    }
}
