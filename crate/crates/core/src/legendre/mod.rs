//! The ring of Legendrian characteristic classes.

pub mod bounds;
pub mod class;
pub mod family;
pub mod presentation;
pub mod ring;

pub use bounds::{bounds_interval, classical_bounds, format_k_poly, BoundConstraint, BoundResult, KClass};
pub use class::{format_key, FamilySpec, LegClass, LegKey, Params};
pub use family::{
    expand_family, family_element, one_row_family, positivity_check, Construction, FamilyBasis, FamilyExpansion,
    Positivity,
};
pub use presentation::{evaluate_presentation, from_presentation, presentation_table};
pub use ring::{half_dual_xi, line_param, qtilde_row, s_class, v1, v2, LegRing, LegRingAt};
