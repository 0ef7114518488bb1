//! Dataset loading, parsing into subgraphs, splitting and format conversion.

mod convert;
mod dataset;
pub mod io;
mod split;

pub use convert::{convert, ConversionReport};
pub use dataset::{parse, Dataset, Format};
pub use io::{load, load_with, save, LoadOptions};
pub use split::{first_side_size, kfold_indices, rng, split, split_indices, SplitSpec};
