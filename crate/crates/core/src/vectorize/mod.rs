//! The thirteen barcode vectorizations, grouped by family.

pub mod algebraic;
pub mod curve;
pub mod ensemble;
pub mod functional;
pub mod statistical;

pub use algebraic::{
    algebraic_functions, complex_polynomial, expand_roots, ordered_bars, polynomial_roots,
    tropical_coordinates, ComplexCoefficients, PolyTransform,
};
pub use curve::{betti_curve, landscapes, lifespan_curve, silhouette, tent, LandscapeStack};
pub use ensemble::{
    adaptive_template_features, atol_features, fit_adaptive_templates, fit_atol, fit_atol_points,
    AtolModel, AtolScale, EllipseTemplate,
};
pub use functional::{
    fit_tent_grid, image_rows_top_down, persistence_image, ramp_weight, tent_template, tent_template_features,
    ImageGrid, TentGrid,
};
pub use statistical::{
    entropy_summary, persistence_statistics, persistent_entropy, QuantityStats, StatsVector,
};
