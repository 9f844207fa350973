//! Varieties of minimal degree, projections from points and containing scrolls.

mod pencil;
mod projection;
mod scroll;

pub use pencil::{one_generic_test, scroll_normal_form, GenericityResult, ScrollNormalForm};
pub use projection::{
    containing_scroll, containing_scroll_for, project_from_point, project_from_point_with_center,
    random_point, ContainingScroll, Projection, ProjectionPoint,
};
pub use scroll::{
    pfaffian_fixture, scroll_ideal, veronese_ideal, veronese_matrix, ScrollMatrix, ScrollSpec,
};
