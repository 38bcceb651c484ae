//! Exact computations of divisor class groups of singular curves and
//! surfaces: local Cartier groups of plane curve germs, Picard groups of
//! reducible and nonreduced curves, almost-Picard groups of surfaces with
//! ordinary singularities, and feasibility tests for set-theoretic complete
//! intersection curves in `P^3`.

pub mod curve;
pub mod groups;
pub mod linalg;
pub mod numjson;
pub mod poly;
pub mod singularities;
pub mod stci;
pub mod surface;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Group(#[from] groups::GroupError),
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
    #[error(transparent)]
    Singularity(#[from] singularities::SingularityError),
    #[error(transparent)]
    Curve(#[from] curve::CurveError),
    #[error(transparent)]
    Surface(#[from] surface::SurfaceError),
    #[error(transparent)]
    Stci(#[from] stci::StciError),
}

impl Error {
    /// Stable identifier for machine-readable error reports.
    pub fn kind(&self) -> String {
        let debug = match self {
            Error::Linalg(e) => format!("{e:?}"),
            Error::Group(e) => format!("{e:?}"),
            Error::Poly(e) => format!("{e:?}"),
            Error::Singularity(e) => format!("{e:?}"),
            Error::Curve(e) => format!("{e:?}"),
            Error::Surface(e) => format!("{e:?}"),
            Error::Stci(e) => format!("{e:?}"),
        };
        variant_name(&debug)
    }
}

/// Leading variant of a `Debug` rendering, looking through the `Poly(..)` and
/// `Group(..)` wrappers so the innermost cause is named.
fn variant_name(debug: &str) -> String {
    let mut tokens = debug
        .split(|c: char| !c.is_alphanumeric() && c != '_')
        .filter(|t| !t.is_empty())
        .peekable();
    while let Some(t) = tokens.next() {
        if (t == "Poly" || t == "Group") && tokens.peek().is_some() {
            continue;
        }
        return t.to_string();
    }
    String::new()
}
