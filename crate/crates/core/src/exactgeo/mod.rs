//! Multiquadratic fields and the explicit degree-4 surfaces, lines, maps and fixed points.

mod field;
mod labeling;
mod surface;

pub use field::{parse_element, FieldElement, MultiQuadraticField};
pub use labeling::{
    all_labelings, circulant_control, label_lines, lattice_element, standard_incidence,
    standard_names, Labeling,
};
pub use surface::{
    describe_points, find_point, fixed_points, line_permutation, rank, sign_pattern_lines,
    verify_lines, LineOnSurface, PointMap, ProjPoint, QuarticSurface, SignedPermutation,
};
mod fixtures;
pub use fixtures::*;
mod examples;
pub use examples::{
    calibrated_labeling, example_fixtures, example_ids, verify_example, ExampleCheck, ExampleReport,
};
mod cremona;
pub use cremona::{compose, cremona_map, verify_cremona_order5, CremonaReport, Poly};
