//! Free equivariant chain complexes over integral group rings.

pub mod complex;

pub use complex::{
    circle_product, cover_complex, point_complex, presentation_complex, EquivariantComplex,
};
pub mod catalog;

pub use catalog::{
    catalog_complex, catalog_free_product, lens_complex, parse_catalog_spec, quaternion_complex,
    sphere2_complex, CatalogEntry, CATALOG_NAMES,
};
