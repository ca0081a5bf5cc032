//! Convex bodies, half-plane clipping, caps and the chord function.

pub mod affine;
pub mod body;
pub mod cap;
pub mod hull;
pub mod point;
pub mod slice;
pub mod spec;

pub use affine::{apply_affine, AffineMap};
pub use body::ConvexBody;
pub use cap::{
    cap_area_at_point, cap_by_area, cap_by_point, cap_intersection_area, chord_length_f, clip, clip_area,
    clip_polygon, support_vertex, Cap, HalfPlane,
};
pub use point::{direction, left_normal, normalize_angle, Point};
pub use slice::{Level, Slicer};
pub use spec::{make_body, BodyKind, BodyRegistry, BodySpec};
