//! Finite crossed double categories and their codescent objects.
//!
//! A [`CrossedDoubleCategory`] carries a vertical and a horizontal
//! [`FiniteCategory`] on one object set, squares with four boundary
//! projections, and a chosen opcartesian square `κ_{f,g}` for every
//! horizontal `f` and vertical `g` out of its target. From it we build the
//! 2-category of corners, its hom-wise connected components, and the
//! distributive law between the vertical and horizontal arrows. The bar
//! construction of an operad morphism produces such double categories.

mod bar;
mod category;
mod corners;
mod delta;
mod double;
mod quotient;

use thiserror::Error;

use crate::classifier::ClassifierError;

pub use bar::{bar_build, BarConstruction};
pub use category::{check_isomorphism, Arrow, ArrowJson, CategoryJson, Composer, FiniteCategory};
pub use corners::{corners_build, pi0_codescent, two_category_pi0, Codescent, Corner, Corner2Cell, Corners};
pub use delta::{check_delta_law, delta_morphism, delta_object, DeltaMorphism, DeltaReport};
pub use double::{
    check_crossed_axioms, CrossedDoubleCategory, CrossedReport, DoubleJson, Square, SquareComposition, Violation,
};
pub use quotient::{quotient_identify_isos, Congruence, IsoQuotient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodescentError {
    #[error("invalid category: {0}")]
    Category(String),
    #[error("invalid double category: {0}")]
    Double(String),
    #[error("crossed axioms fail: {0}")]
    Axioms(String),
    #[error("composition of components is not well defined: {0}")]
    IllDefined(String),
    #[error("congruence saturation exceeded {0} passes")]
    Budget(usize),
    #[error("the braided bar construction is not supported")]
    Braided,
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
}

pub type Result<T> = std::result::Result<T, CodescentError>;
