pub mod ball;
pub mod clip;
pub mod partition;
pub mod point;
pub mod polygon;
pub mod region;

pub use ball::{intersect_polygon_ball, BallChain, BoundaryPiece, PieceKind};
pub use clip::{bisector_halfplanes, clip_polygon_halfplane, EdgeLabel, HalfPlane, LabeledPolygon};
pub use partition::{
    build_partition, screen_nondegenerate, Arc, ArcBook, ArcEndpoint, CellPiece,
    DiagnosticsReport, Partition,
};
pub use point::{unit_normal, unit_tangent, wrap_angle, Point2};
pub use polygon::ConvexPolygon;
pub use region::{region_volume, Configuration, Region, RegionJson};
