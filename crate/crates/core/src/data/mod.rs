//! Datasets: the in-memory matrix type, synthetic generators, component-wise
//! scaling, and delimited-text ingestion.

mod dataset;
mod generate;
mod io;
mod scale;

pub use dataset::Dataset;
pub use generate::{
    gen_blobs, gen_circles, gen_moons, gen_single_gaussian, pad_dimensions, BlobSet,
    BLOB_CENTER_SPACING,
};
pub use io::{
    format_dataset, load_delimited, load_labels, save_dataset, save_labels, ColumnRef, HeaderMode, LoadOptions,
};
pub use scale::scale_minmax;
