use std::path::Path;

use super::{io, Format, LoadOptions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionReport {
    pub from: Format,
    pub to: Format,
    pub samples: usize,
    pub features: usize,
    pub classes: u32,
}

/// Re-encodes a dataset file. Formats come from the extensions unless
/// `target` is given.
pub fn convert(
    input: impl AsRef<Path>,
    output: impl AsRef<Path>,
    target: Option<Format>,
    options: LoadOptions,
) -> Result<ConversionReport> {
    let (input, output) = (input.as_ref(), output.as_ref());
    let to = target
        .or_else(|| Format::from_path(output))
        .ok_or_else(|| Error::Conversion(format!("cannot infer the target format of {}", output.display())))?;
    let dataset = io::load_with(input, None, options)?;
    let bytes = io::to_bytes(&dataset, to)?;
    std::fs::write(output, bytes)?;
    Ok(ConversionReport {
        from: dataset.source_format.expect("set by the loader"),
        to,
        samples: dataset.len(),
        features: dataset.n_features(),
        classes: dataset.n_classes(),
    })
}
