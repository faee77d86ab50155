//! Finite skeletons of the spectrum: named points of the elementary
//! abelian pieces, their specialization order, and the gluing along
//! maximal relations.

mod export;
mod glue;
mod model;
mod skeleton;

pub use export::{parse_json, ComponentJson, PointJson, ProvenanceJson, SectionJson, SkeletonJson};
pub use glue::{
    avoids_a, avoids_b, components, dimension, fold, frattini_cover_check, glue, glue_category, induced_map,
    same_induced_map, Color, Component, GlueProfile, DimensionReport, GluedPoint, GluedSkeleton,
};
pub use model::SectionModel;
pub use skeleton::{linear_point, map_point, subspace_label, Level, Point, PointKind, Skeleton, DEFAULT_RANK_CAP};
